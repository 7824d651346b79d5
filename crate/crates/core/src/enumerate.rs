//! Exhaustive enumeration of small ground terms, used by the validation
//! harness.

use crate::error::{Error, Result};
use crate::term::{Signature, Sort, Term};

/// Enumerates ground terms of the data sort by exact size, caching each layer.
pub struct Enumerator<'a> {
    sig: &'a Signature,
    layers: Vec<Vec<Term>>,
}

impl<'a> Enumerator<'a> {
    pub fn new(sig: &'a Signature) -> Self {
        // layers[0] is the (empty) set of size-0 terms
        Enumerator {
            sig,
            layers: vec![Vec::new()],
        }
    }

    /// All ground terms of `sort` with exactly `size` nodes.
    pub fn of_size(&mut self, sort: Sort, size: usize) -> Vec<Term> {
        match sort {
            Sort::Prim(ty) if size == 1 => self
                .sig
                .samples(ty)
                .iter()
                .cloned()
                .map(Term::Prim)
                .collect(),
            Sort::Prim(_) => Vec::new(),
            Sort::Data => {
                self.fill(size);
                self.layers[size].clone()
            }
        }
    }

    fn fill(&mut self, size: usize) {
        while self.layers.len() <= size {
            let n = self.layers.len();
            let layer = self.build_layer(n);
            self.layers.push(layer);
        }
    }

    fn build_layer(&mut self, n: usize) -> Vec<Term> {
        let mut out = Vec::new();
        for c in self.sig.ctor_ids() {
            let arg_sorts = self.sig.ctor(c).args.clone();
            if arg_sorts.is_empty() {
                if n == 1 {
                    out.push(Term::constant(c));
                }
                continue;
            }
            if n < 1 + arg_sorts.len() {
                continue;
            }
            for split in compositions(n - 1, arg_sorts.len()) {
                let pools: Vec<Vec<Term>> = arg_sorts
                    .iter()
                    .zip(&split)
                    .map(|(s, &k)| self.of_size(*s, k))
                    .collect();
                if pools.iter().any(Vec::is_empty) {
                    continue;
                }
                for args in product(&pools) {
                    out.push(Term::app(c, args));
                }
            }
        }
        out
    }
}

/// Ordered ways to write `total` as `parts` positive summands, lexicographically.
fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    fn go(total: usize, parts: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 1 {
            prefix.push(total);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in 1..=total.saturating_sub(parts - 1) {
            prefix.push(first);
            go(total - first, parts - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if parts > 0 && total >= parts {
        go(total, parts, &mut Vec::new(), &mut out);
    }
    out
}

/// Cartesian product with the first pool varying slowest.
fn product(pools: &[Vec<Term>]) -> Vec<Vec<Term>> {
    let mut acc: Vec<Vec<Term>> = vec![Vec::new()];
    for pool in pools {
        let mut next = Vec::with_capacity(acc.len() * pool.len());
        for prefix in &acc {
            for t in pool {
                let mut v = prefix.clone();
                v.push(t.clone());
                next.push(v);
            }
        }
        acc = next;
    }
    acc
}

/// Every ground term of the named sort with at most `max_size` nodes, each
/// exactly once, ordered by size and then by declaration order.
pub fn enumerate_ground(sig: &Signature, sort: &str, max_size: usize) -> Result<Vec<Term>> {
    let sort = sig
        .sort_by_name(sort)
        .ok_or_else(|| Error::UnknownSort(sort.to_string()))?;
    if max_size == 0 {
        return Err(Error::ZeroSize);
    }
    let mut en = Enumerator::new(sig);
    Ok((1..=max_size).flat_map(|n| en.of_size(sort, n)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::tests::exp;

    #[test]
    fn smallest_layers() {
        let sig = exp();
        let show = |ts: Vec<Term>| ts.iter().map(|t| sig.show(t).to_string()).collect::<Vec<_>>();
        assert_eq!(show(enumerate_ground(&sig, "exp", 1).unwrap()), ["Zero", "One"]);
        assert_eq!(
            show(enumerate_ground(&sig, "exp", 2).unwrap()),
            ["Zero", "One", "Opp(Zero)", "Opp(One)"]
        );
        assert_eq!(
            enumerate_ground(&sig, "foo", 3),
            Err(Error::UnknownSort("foo".into()))
        );
        assert_eq!(enumerate_ground(&sig, "exp", 0), Err(Error::ZeroSize));
    }

    #[test]
    fn primitive_arguments_use_samples() {
        let sig = Signature::build(
            "t",
            [("Leaf", vec![Sort::Prim(crate::term::PrimType::Int)]), ("Node", vec![Sort::Data, Sort::Data])],
        )
        .unwrap();
        let ts = enumerate_ground(&sig, "t", 3).unwrap();
        // Leaf(0), Leaf(1) at size 2; nothing at size 3
        assert_eq!(ts.len(), 2);
        assert_eq!(enumerate_ground(&sig, "int", 4).unwrap().len(), 2);
    }

    #[test]
    fn compositions_are_lexicographic() {
        assert_eq!(compositions(3, 2), vec![vec![1, 2], vec![2, 1]]);
        assert_eq!(compositions(1, 2), Vec::<Vec<usize>>::new());
    }
}
