//! AC-normal forms: every spine of an associative-commutative constructor is
//! rebuilt as a comb of the configured orientation, and each comb's leaves
//! are sorted in increasing term order.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::term::{CtorId, Term};
use crate::theory::{Classification, Comb};

/// Comb orientation for every associative-commutative constructor.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Orientation {
    combs: BTreeMap<CtorId, Comb>,
}

impl Orientation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, ctor: CtorId, comb: Comb) -> Self {
        self.combs.insert(ctor, comb);
        self
    }

    pub fn get(&self, ctor: CtorId) -> Option<Comb> {
        self.combs.get(&ctor).copied()
    }

    pub fn from_classification(cl: &Classification) -> Self {
        Orientation {
            combs: cl.theories().iter().map(|th| (th.ctor, th.orient)).collect(),
        }
    }
}

fn comb_name(comb: Comb) -> &'static str {
    match comb {
        Comb::Left => "left",
        Comb::Right => "right",
    }
}

/// Applies the oriented associativity rule bottom-up until no redex remains.
pub fn comb(t: &Term, orient: &Orientation) -> Term {
    match t {
        Term::App(c, args) => {
            let args: Vec<Term> = args.iter().map(|a| comb(a, orient)).collect();
            match orient.get(*c) {
                Some(kind) if args.len() == 2 => {
                    let [a, b]: [Term; 2] = args.try_into().expect("binary");
                    rotate(*c, kind, a, b)
                }
                _ => Term::app(*c, args),
            }
        }
        _ => t.clone(),
    }
}

/// Normal form of `C(a, b)` for combs `a` and `b` under the orientation rule.
fn rotate(c: CtorId, kind: Comb, a: Term, b: Term) -> Term {
    match kind {
        // C(C(x,y),z) -> C(x,C(y,z))
        Comb::Right => match a {
            Term::App(h, ref xy) if h == c => {
                let (x, y) = (xy[0].clone(), xy[1].clone());
                let inner = rotate(c, kind, y, b);
                rotate(c, kind, x, inner)
            }
            _ => Term::app(c, vec![a, b]),
        },
        // C(x,C(y,z)) -> C(C(x,y),z)
        Comb::Left => match b {
            Term::App(h, ref yz) if h == c => {
                let (y, z) = (yz[0].clone(), yz[1].clone());
                let inner = rotate(c, kind, a, y);
                rotate(c, kind, inner, z)
            }
            _ => Term::app(c, vec![a, b]),
        },
    }
}

/// Leaves of a `ctor`-comb, left to right.
pub fn leaves(ctor: CtorId, t: &Term, kind: Comb) -> Result<Vec<Term>> {
    let mut out = Vec::new();
    let mut cur = t;
    while cur.is_headed_by(ctor) {
        let args = cur.args();
        let (leaf, rest) = match kind {
            Comb::Right => (&args[0], &args[1]),
            Comb::Left => (&args[1], &args[0]),
        };
        if leaf.is_headed_by(ctor) {
            return Err(Error::NotAComb(comb_name(kind)));
        }
        out.push(leaf.clone());
        cur = rest;
    }
    out.push(cur.clone());
    if kind == Comb::Left {
        out.reverse();
    }
    Ok(out)
}

/// Builds the comb with the given leaves, left to right. `leaves` is non-empty.
pub fn rebuild(ctor: CtorId, kind: Comb, leaves: Vec<Term>) -> Term {
    match kind {
        Comb::Right => {
            let mut it = leaves.into_iter().rev();
            let last = it.next().expect("at least one leaf");
            it.fold(last, |acc, l| Term::app(ctor, vec![l, acc]))
        }
        Comb::Left => {
            let mut it = leaves.into_iter();
            let first = it.next().expect("at least one leaf");
            it.fold(first, |acc, l| Term::app(ctor, vec![acc, l]))
        }
    }
}

/// Sorts the leaves of every comb, innermost first. Ties keep their order.
pub fn sort_combs(t: &Term, orient: &Orientation) -> Term {
    match t {
        Term::App(c, args) => match orient.get(*c) {
            Some(kind) => {
                let mut ls: Vec<Term> = spine(*c, t, kind)
                    .into_iter()
                    .map(|l| sort_combs(&l, orient))
                    .collect();
                ls.sort();
                rebuild(*c, kind, ls)
            }
            None => Term::app(*c, args.iter().map(|a| sort_combs(a, orient)).collect()),
        },
        _ => t.clone(),
    }
}

// Leaves along the oriented spine, without checking the off-spine side.
fn spine(ctor: CtorId, t: &Term, kind: Comb) -> Vec<Term> {
    let mut out = Vec::new();
    let mut cur = t;
    while cur.is_headed_by(ctor) {
        let args = cur.args();
        let (leaf, rest) = match kind {
            Comb::Right => (&args[0], &args[1]),
            Comb::Left => (&args[1], &args[0]),
        };
        out.push(leaf.clone());
        cur = rest;
    }
    out.push(cur.clone());
    if kind == Comb::Left {
        out.reverse();
    }
    out
}

/// `sort_combs(comb(t))`.
pub fn ac_normalize(t: &Term, orient: &Orientation) -> Term {
    sort_combs(&comb(t, orient), orient)
}

/// Every subterm headed by an AC constructor is a comb of its orientation
/// whose leaves are in non-decreasing order.
pub fn is_ac_normal(t: &Term, orient: &Orientation) -> bool {
    t.subterms().into_iter().all(|s| match s.head().and_then(|c| orient.get(c).map(|k| (c, k))) {
        Some((c, kind)) => match leaves(c, s, kind) {
            Ok(ls) => ls.windows(2).all(|w| w[0] <= w[1]),
            Err(_) => false,
        },
        None => true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::{Signature, Sort};

    struct Fx {
        plus: CtorId,
        a: Term,
        b: Term,
        c: Term,
        d: Term,
    }

    fn fx() -> Fx {
        let sig = Signature::build(
            "t",
            [
                ("A", vec![]),
                ("B", vec![]),
                ("C", vec![]),
                ("D", vec![]),
                ("Plus", vec![Sort::Data, Sort::Data]),
            ],
        )
        .unwrap();
        let k = |n: &str| Term::constant(sig.lookup(n).unwrap());
        Fx { plus: sig.lookup("Plus").unwrap(), a: k("A"), b: k("B"), c: k("C"), d: k("D") }
    }

    #[test]
    fn right_combs() {
        let f = fx();
        let p = |x: &Term, y: &Term| Term::app(f.plus, vec![x.clone(), y.clone()]);
        let o = Orientation::new().with(f.plus, Comb::Right);
        assert_eq!(comb(&p(&p(&f.a, &f.b), &f.c), &o), p(&f.a, &p(&f.b, &f.c)));
        assert_eq!(comb(&p(&f.a, &f.b), &o), p(&f.a, &f.b));
        assert_eq!(
            comb(&p(&p(&f.a, &f.b), &p(&f.c, &f.d)), &o),
            p(&f.a, &p(&f.b, &p(&f.c, &f.d)))
        );
    }

    #[test]
    fn left_combs() {
        let f = fx();
        let p = |x: &Term, y: &Term| Term::app(f.plus, vec![x.clone(), y.clone()]);
        let o = Orientation::new().with(f.plus, Comb::Left);
        let t = p(&f.a, &p(&f.b, &f.c));
        let c = comb(&t, &o);
        assert_eq!(c, p(&p(&f.a, &f.b), &f.c));
        assert_eq!(leaves(f.plus, &c, Comb::Left).unwrap(), vec![f.a.clone(), f.b.clone(), f.c.clone()]);
        let unsorted = p(&p(&f.c, &f.a), &f.b);
        assert_eq!(sort_combs(&unsorted, &o), p(&p(&f.a, &f.b), &f.c));
        assert!(is_ac_normal(&p(&p(&f.a, &f.b), &f.c), &o));
        assert!(!is_ac_normal(&p(&f.a, &p(&f.b, &f.c)), &o));
    }

    #[test]
    fn leaves_and_sorting() {
        let f = fx();
        let p = |x: &Term, y: &Term| Term::app(f.plus, vec![x.clone(), y.clone()]);
        let o = Orientation::new().with(f.plus, Comb::Right);
        assert_eq!(
            leaves(f.plus, &p(&f.a, &p(&f.b, &f.c)), Comb::Right).unwrap(),
            vec![f.a.clone(), f.b.clone(), f.c.clone()]
        );
        assert_eq!(leaves(f.plus, &f.a, Comb::Right).unwrap(), vec![f.a.clone()]);
        assert_eq!(
            leaves(f.plus, &p(&p(&f.a, &f.b), &f.c), Comb::Right),
            Err(Error::NotAComb("right"))
        );
        assert_eq!(sort_combs(&p(&f.b, &p(&f.a, &f.c)), &o), p(&f.a, &p(&f.b, &f.c)));
        assert_eq!(sort_combs(&p(&f.a, &p(&f.b, &f.c)), &o), p(&f.a, &p(&f.b, &f.c)));
        assert_eq!(sort_combs(&f.a, &o), f.a);
        assert!(is_ac_normal(&p(&f.a, &p(&f.b, &f.c)), &o));
        assert!(!is_ac_normal(&p(&p(&f.a, &f.b), &f.c), &o));
        assert!(!is_ac_normal(&p(&f.b, &p(&f.a, &f.c)), &o));
        assert!(is_ac_normal(&p(&f.a, &f.a), &o));
    }
}
