//! Construction scheme for the associative-commutative catalog.
//!
//! The scheme is written for combs in terms of their *outer* leaf: the first
//! leaf of a right comb, the last leaf of a left comb. Comparisons use the
//! matching "outer order" (term order for right combs, its reverse for left
//! combs), so one body of code serves both orientations.
//!
//! Two places differ from the textbook clauses. When a recursive insertion
//! or deletion under a leaf `y` returns the neutral element, or a comb whose
//! outer leaf no longer comes after `y` (a nilpotent collapse produced the
//! nil element), the leaf is put back with [`Builder::rejoin`] instead of
//! rebuilding `C(y, r)` directly.

use std::cmp::Ordering;

use super::{Builder, Mutation};
use crate::store::Store;
use crate::theory::{Comb, Type2Theory};

impl<S: Store> Builder<'_, S> {
    /// Splits a comb into its outer leaf and the remaining comb.
    fn split(&self, th: &Type2Theory, u: &S::Value) -> Option<(S::Value, S::Value)> {
        if !self.store.is_headed_by(u, th.ctor) {
            return None;
        }
        let a = self.store.arg(u, 0);
        let b = self.store.arg(u, 1);
        Some(match th.orient {
            Comb::Right => (a, b),
            Comb::Left => (b, a),
        })
    }

    fn join(&mut self, th: &Type2Theory, leaf: S::Value, rest: S::Value) -> S::Value {
        let args = match th.orient {
            Comb::Right => vec![leaf, rest],
            Comb::Left => vec![rest, leaf],
        };
        self.store.app(th.ctor, args)
    }

    fn outer_cmp(&self, th: &Type2Theory, a: &S::Value, b: &S::Value) -> Ordering {
        match th.orient {
            Comb::Right => self.order(a, b),
            Comb::Left => self.order(b, a),
        }
    }

    fn is_neutral(&self, th: &Type2Theory, v: &S::Value) -> bool {
        th.neutral.is_some() && self.store.head(v) == th.neutral
    }

    fn constant(&mut self, c: crate::term::CtorId) -> S::Value {
        self.store.app(c, Vec::new())
    }

    /// `f_C(a, b)` in argument order.
    pub(crate) fn f_c(&mut self, th: &Type2Theory, a: S::Value, b: S::Value) -> S::Value {
        if self.is_neutral(th, &a) {
            return b;
        }
        if self.is_neutral(th, &b) {
            return a;
        }
        let (outer, rest) = match th.orient {
            Comb::Right => (a, b),
            Comb::Left => (b, a),
        };
        if let Some((oo, or)) = self.split(th, &outer) {
            let inner = self.f_oriented(th, or, rest);
            return self.f_oriented(th, oo, inner);
        }
        if th.inverse.is_some() {
            let inv = self.f_i(th, outer);
            return self.ins_inv(th, inv, rest);
        }
        self.ins(th, outer, rest)
    }

    /// `f_C` with the arguments given as (outer side, comb side).
    fn f_oriented(&mut self, th: &Type2Theory, outer: S::Value, rest: S::Value) -> S::Value {
        match th.orient {
            Comb::Right => self.f_c(th, outer, rest),
            Comb::Left => self.f_c(th, rest, outer),
        }
    }

    /// `f_I(v)`.
    pub(crate) fn f_i(&mut self, th: &Type2Theory, v: S::Value) -> S::Value {
        let inv = th.inverse.expect("inverse symbol");
        if self.is_neutral(th, &v) {
            return v;
        }
        match self.store.head(&v) {
            Some(h) if h == inv => self.store.arg(&v, 0),
            Some(h) if h == th.ctor => {
                let x = self.store.arg(&v, 0);
                let y = self.store.arg(&v, 1);
                let iy = self.f_i(th, y);
                let ix = self.f_i(th, x);
                self.f_c(th, iy, ix)
            }
            _ => self.store.app(inv, vec![v]),
        }
    }

    /// `insert_inv_C x y`: cancel `x` in `y` if present, else insert `f_I x`.
    pub(crate) fn ins_inv(&mut self, th: &Type2Theory, x: S::Value, y: S::Value) -> S::Value {
        if self.fam.mutation != Mutation::NoInverseDelete {
            if let Some(r) = self.del(th, &x, y.clone()) {
                return r;
            }
        }
        let orig = self.f_i(th, x);
        self.ins(th, orig, y)
    }

    /// `delete_C x u`; relies on `u` being sorted to stop early.
    pub(crate) fn del(&mut self, th: &Type2Theory, x: &S::Value, u: S::Value) -> Option<S::Value> {
        match self.split(th, &u) {
            Some((y, t)) => match self.outer_cmp(th, x, &y) {
                Ordering::Less => None,
                Ordering::Equal => Some(t),
                Ordering::Greater => {
                    let r = self.del(th, x, t)?;
                    Some(self.rejoin(th, y, r))
                }
            },
            None if self.store.same(&u, x) => {
                let e = th.neutral.expect("inverse theories have a neutral element");
                Some(self.constant(e))
            }
            None => None,
        }
    }

    /// `insert_C x u` for a leaf `x` not headed by `C`.
    pub(crate) fn ins(&mut self, th: &Type2Theory, x: S::Value, u: S::Value) -> S::Value {
        if self.fam.mutation == Mutation::UnsortedInsert {
            return self.join(th, x, u);
        }
        match self.split(th, &u) {
            Some((y, t)) => match self.outer_cmp(th, &x, &y) {
                Ordering::Equal if th.idem() => u,
                Ordering::Equal if th.nil.is_some() => {
                    let a = self.constant(th.nil.expect("nil element"));
                    self.f_oriented(th, a, t)
                }
                Ordering::Less | Ordering::Equal => self.join(th, x, u),
                Ordering::Greater => {
                    let r = self.ins(th, x, t);
                    self.rejoin(th, y, r)
                }
            },
            None => match self.outer_cmp(th, &x, &u) {
                Ordering::Greater => self.join(th, u, x),
                Ordering::Equal if th.idem() => u,
                Ordering::Equal if th.nil.is_some() => self.constant(th.nil.expect("nil element")),
                _ => self.join(th, x, u),
            },
        }
    }

    /// Puts leaf `y` back in front of the normalized comb `r`, where `y`
    /// was the outer leaf before `r` was rebuilt.
    fn rejoin(&mut self, th: &Type2Theory, y: S::Value, r: S::Value) -> S::Value {
        if self.is_neutral(th, &r) {
            return y;
        }
        let first = match self.split(th, &r) {
            Some((h, _)) => h,
            None => r.clone(),
        };
        if self.outer_cmp(th, &y, &first) == Ordering::Less {
            self.join(th, y, r)
        } else {
            self.ins(th, y, r)
        }
    }
}
