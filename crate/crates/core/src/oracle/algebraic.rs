//! Exact decision of `=_E` for catalog theories by interpretation.
//!
//! A ground term is mapped to a [`Key`]: free structure stays as is, and a
//! maximal block of one associative-commutative constructor becomes a
//! carrier over its leaves (multiset, set, parity set, or signed counts for
//! abelian groups). Two terms are equal modulo the theory exactly when their
//! keys are equal.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::term::{CtorId, Prim, Signature, Term};
use crate::theory::{Classification, CtorClass, Type2Theory, Type2Variant};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Key {
    Prim(Prim),
    App(CtorId, Vec<Key>),
    Theory(CtorId, Carrier),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Carrier {
    /// Leaf multiplicities.
    Multiset(BTreeMap<Key, u64>),
    /// Leaves up to repetition.
    Set(BTreeSet<Key>),
    /// Leaves of odd multiplicity, and whether the nil element is present.
    Parity { odd: BTreeSet<Key>, nil: bool },
    /// Nonzero signed multiplicities.
    Group(BTreeMap<Key, i64>),
}

/// Interpretation of ground terms for a family without rule-defined constructors.
pub struct AlgebraicOracle {
    classification: Classification,
}

impl AlgebraicOracle {
    /// Fails with [`Error::NoOracle`] when a constructor is defined by rules.
    pub fn new(sig: &Signature, classification: &Classification) -> Result<Self> {
        for c in sig.ctor_ids() {
            if classification.class(c) == CtorClass::Type1 {
                return Err(Error::NoOracle(sig.ctor_name(c).to_string()));
            }
        }
        Ok(AlgebraicOracle {
            classification: classification.clone(),
        })
    }

    pub fn equal(&self, t: &Term, u: &Term) -> bool {
        self.key(t) == self.key(u)
    }

    pub fn key(&self, t: &Term) -> Key {
        match t {
            Term::Var(v) => panic!("variable `{}` in a ground term", v.name),
            Term::Prim(p) => Key::Prim(p.clone()),
            Term::App(c, args) => match self.classification.class(*c) {
                CtorClass::Free | CtorClass::Type1 => {
                    Key::App(*c, args.iter().map(|a| self.key(a)).collect())
                }
                CtorClass::Type2(i) => {
                    let th = &self.classification.theories()[i];
                    let mut counts = BTreeMap::new();
                    for a in args.iter() {
                        self.contribute(th, self.key(a), 1, &mut counts);
                    }
                    finish(th, counts)
                }
                CtorClass::InverseOf(i) => {
                    let th = &self.classification.theories()[i];
                    let mut counts = BTreeMap::new();
                    self.contribute(th, self.key(&args[0]), -1, &mut counts);
                    finish(th, counts)
                }
            },
        }
    }

    /// Adds `sign` times the leaves denoted by `k` to `counts`.
    fn contribute(&self, th: &Type2Theory, k: Key, sign: i64, counts: &mut BTreeMap<Key, i64>) {
        let mut add = |k: Key, n: i64| {
            if th.neutral.is_some_and(|e| k == Key::App(e, Vec::new())) {
                return;
            }
            *counts.entry(k).or_insert(0) += n;
        };
        match k {
            Key::Theory(c, carrier) if c == th.ctor => match carrier {
                Carrier::Multiset(m) => m.into_iter().for_each(|(k, n)| add(k, sign * n as i64)),
                Carrier::Set(s) => s.into_iter().for_each(|k| add(k, sign)),
                Carrier::Parity { odd, nil } => {
                    odd.into_iter().for_each(|k| add(k, sign));
                    if nil {
                        add(Key::App(th.nil.expect("nil element"), Vec::new()), sign);
                    }
                }
                Carrier::Group(m) => m.into_iter().for_each(|(k, n)| add(k, sign * n)),
            },
            other => add(other, sign),
        }
    }
}

/// Canonical key of a block with the given leaf counts.
fn finish(th: &Type2Theory, counts: BTreeMap<Key, i64>) -> Key {
    let neutral = || Key::App(th.neutral.expect("neutral element"), Vec::new());
    let single = |mut it: std::collections::btree_map::IntoIter<Key, i64>| it.next().map(|(k, _)| k);
    let carrier = match th.variant {
        Type2Variant::AbelianGroup => {
            let m: BTreeMap<Key, i64> = counts.into_iter().filter(|(_, n)| *n != 0).collect();
            if m.is_empty() {
                return neutral();
            }
            if m.len() == 1 && *m.values().next().unwrap() == 1 {
                return single(m.into_iter()).unwrap();
            }
            Carrier::Group(m)
        }
        Type2Variant::AC | Type2Variant::ACNeu => {
            let total: i64 = counts.values().sum();
            if total == 0 {
                return neutral();
            }
            if total == 1 {
                return single(counts.into_iter()).unwrap();
            }
            Carrier::Multiset(counts.into_iter().map(|(k, n)| (k, n as u64)).collect())
        }
        Type2Variant::ACI | Type2Variant::ACNeuIdem => {
            let s: BTreeSet<Key> = counts.into_keys().collect();
            match s.len() {
                0 => return neutral(),
                1 => return s.into_iter().next().unwrap(),
                _ => Carrier::Set(s),
            }
        }
        Type2Variant::ACNil | Type2Variant::ACNeuNil => {
            let a = Key::App(th.nil.expect("nil element"), Vec::new());
            let mut nil = false;
            let mut odd = BTreeSet::new();
            for (k, n) in counts {
                if k == a {
                    nil |= n > 0;
                    continue;
                }
                if n % 2 == 1 {
                    odd.insert(k);
                }
                nil |= n >= 2;
            }
            // with a neutral nil element the nil flag carries no information
            if th.neutral.is_some() {
                nil = false;
            }
            match (odd.len(), nil) {
                (0, false) => return neutral(),
                (0, true) => return a,
                (1, false) => return odd.into_iter().next().unwrap(),
                _ => Carrier::Parity { odd, nil },
            }
        }
    };
    Key::Theory(th.ctor, carrier)
}
