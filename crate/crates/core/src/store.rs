//! Value representations the construction functions operate on.
//!
//! The builder is written once against [`Store`]: plain trees
//! ([`TermStore`]) or a maximally shared table
//! ([`HashConsTable`](crate::hashcons::HashConsTable)).

use std::cmp::Ordering;
use std::fmt::Debug;

use crate::term::{CtorId, Prim, Term};

pub trait Store {
    type Value: Clone + Debug;

    fn prim(&mut self, p: Prim) -> Self::Value;

    /// Application node. Callers guarantee the arity.
    fn app(&mut self, ctor: CtorId, args: Vec<Self::Value>) -> Self::Value;

    fn head(&self, v: &Self::Value) -> Option<CtorId>;

    fn args(&self, v: &Self::Value) -> Vec<Self::Value>;

    fn as_prim(&self, v: &Self::Value) -> Option<Prim>;

    /// Structural equality.
    fn same(&self, a: &Self::Value, b: &Self::Value) -> bool;

    /// The canonical term order.
    fn compare(&self, a: &Self::Value, b: &Self::Value) -> Ordering;

    fn to_term(&self, v: &Self::Value) -> Term;

    /// Imports a ground term.
    fn import(&mut self, t: &Term) -> Self::Value;

    fn arg(&self, v: &Self::Value, i: usize) -> Self::Value {
        self.args(v).swap_remove(i)
    }

    fn is_headed_by(&self, v: &Self::Value, ctor: CtorId) -> bool {
        self.head(v) == Some(ctor)
    }
}

/// Values are plain terms.
#[derive(Clone, Copy, Debug, Default)]
pub struct TermStore;

impl Store for TermStore {
    type Value = Term;

    fn prim(&mut self, p: Prim) -> Term {
        Term::Prim(p)
    }

    fn app(&mut self, ctor: CtorId, args: Vec<Term>) -> Term {
        Term::app(ctor, args)
    }

    fn head(&self, v: &Term) -> Option<CtorId> {
        v.head()
    }

    fn args(&self, v: &Term) -> Vec<Term> {
        v.args().to_vec()
    }

    fn arg(&self, v: &Term, i: usize) -> Term {
        v.args()[i].clone()
    }

    fn as_prim(&self, v: &Term) -> Option<Prim> {
        match v {
            Term::Prim(p) => Some(p.clone()),
            _ => None,
        }
    }

    fn same(&self, a: &Term, b: &Term) -> bool {
        a == b
    }

    fn compare(&self, a: &Term, b: &Term) -> Ordering {
        a.cmp(b)
    }

    fn to_term(&self, v: &Term) -> Term {
        v.clone()
    }

    fn import(&mut self, t: &Term) -> Term {
        t.clone()
    }
}
