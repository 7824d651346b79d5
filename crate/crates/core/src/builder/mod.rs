//! Construction functions and the normalization function they induce.
//!
//! Every constructor `C` gets a construction function `f_C` that maps values
//! (terms already in normal form) to the normal form of `C(args)`:
//!
//! * free constructors rebuild the node;
//! * rule-defined constructors try their compiled clauses in order, then the
//!   default clause;
//! * associative-commutative constructors run the catalog scheme (neutral
//!   absorption, re-association, cancellation against the inverse, sorted
//!   insertion), and their inverse symbol gets its own function.
//!
//! The engine is generic over [`Store`], so the same code produces plain
//! terms or hash-consed nodes. Recursion depth grows with term depth and comb
//! length; inputs up to a few thousand nodes are fine on a default stack.

mod rules;
mod scheme;

use std::cmp::Ordering;
use std::sync::Arc;

pub use rules::{compile_rule, compile_rules, linearize, CompiledClause, Guard};

use crate::acnf::Orientation;
use crate::error::{Error, Result};
use crate::store::{Store, TermStore};
use crate::term::{well_sorted_ground, CtorId, Signature, Sort, Term};
use crate::theory::{classify, Classification, CtorClass, TheorySpec, Type2Theory};

/// The program behind one construction function.
#[derive(Clone, Debug)]
pub enum FamilyEntry {
    /// Default clause only.
    Free,
    /// Ordered clauses, then the default clause.
    Type1(Vec<CompiledClause>),
    /// Catalog scheme for an associative-commutative constructor.
    Type2(Type2Theory),
    /// Inverse function of an abelian-group theory.
    Inverse(Type2Theory),
}

/// Deliberate defects for checking that validation catches broken families.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Mutation {
    #[default]
    None,
    /// Insertion prepends instead of placing the leaf in order.
    UnsortedInsert,
    /// Adding an element never cancels it against its inverse.
    NoInverseDelete,
}

/// Evaluation order of arguments in [`normalize_with`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ArgOrder {
    #[default]
    LeftToRight,
    RightToLeft,
}

/// One construction function per constructor of the signature.
#[derive(Clone, Debug)]
pub struct CompiledFamily {
    sig: Arc<Signature>,
    classification: Classification,
    entries: Vec<FamilyEntry>,
    mutation: Mutation,
}

impl CompiledFamily {
    pub fn compile(sig: &Signature, classification: &Classification) -> Result<Self> {
        let mut clauses = compile_rules(classification.type1_rules())?;
        let entries = sig
            .ctor_ids()
            .map(|c| match classification.class(c) {
                CtorClass::Free => FamilyEntry::Free,
                CtorClass::Type1 => FamilyEntry::Type1(clauses.remove(&c).unwrap_or_default()),
                CtorClass::Type2(i) => FamilyEntry::Type2(classification.theories()[i].clone()),
                CtorClass::InverseOf(i) => {
                    FamilyEntry::Inverse(classification.theories()[i].clone())
                }
            })
            .collect();
        Ok(CompiledFamily {
            sig: Arc::new(sig.clone()),
            classification: classification.clone(),
            entries,
            mutation: Mutation::None,
        })
    }

    /// Classifies `spec` and compiles the resulting family.
    pub fn from_spec(sig: &Signature, spec: &TheorySpec) -> Result<Self> {
        let cl = classify(spec, sig)?;
        Self::compile(sig, &cl)
    }

    pub fn with_mutation(mut self, mutation: Mutation) -> Self {
        self.mutation = mutation;
        self
    }

    pub fn mutation(&self) -> Mutation {
        self.mutation
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn classification(&self) -> &Classification {
        &self.classification
    }

    pub fn orientation(&self) -> Orientation {
        Orientation::from_classification(&self.classification)
    }

    pub fn entry(&self, ctor: CtorId) -> &FamilyEntry {
        &self.entries[ctor.index()]
    }

    /// Mutable access to the non-default clauses of a rule-defined constructor.
    pub fn clauses_mut(&mut self, ctor: CtorId) -> Option<&mut Vec<CompiledClause>> {
        match &mut self.entries[ctor.index()] {
            FamilyEntry::Type1(cls) => Some(cls),
            _ => None,
        }
    }

    fn theory(&self, ctor: CtorId) -> Option<&Type2Theory> {
        match self.entry(ctor) {
            FamilyEntry::Type2(th) | FamilyEntry::Inverse(th) => Some(th),
            _ => None,
        }
    }
}

/// Runs construction functions against a value store.
pub struct Builder<'a, S: Store> {
    fam: &'a CompiledFamily,
    store: &'a mut S,
}

impl<'a, S: Store> Builder<'a, S> {
    pub fn new(fam: &'a CompiledFamily, store: &'a mut S) -> Self {
        Builder { fam, store }
    }

    pub fn store(&mut self) -> &mut S {
        self.store
    }

    /// `f_C(args)`, after checking arity and argument sorts.
    pub fn construct(&mut self, ctor: CtorId, args: Vec<S::Value>) -> Result<S::Value> {
        let sig = self.fam.signature();
        if ctor.index() >= sig.len() {
            return Err(Error::UnknownConstructor(format!("#{}", ctor.0)));
        }
        let decl = sig.ctor(ctor);
        if decl.args.len() != args.len() {
            return Err(Error::Arity {
                ctor: decl.name.clone(),
                expected: decl.args.len(),
                got: args.len(),
            });
        }
        for (i, (sort, v)) in decl.args.iter().zip(&args).enumerate() {
            let actual = match self.store.as_prim(v) {
                Some(p) => Sort::Prim(p.ty()),
                None => Sort::Data,
            };
            if actual != *sort {
                return Err(Error::IllSorted(format!(
                    "argument {} of `{}` must have sort `{}`",
                    i + 1,
                    decl.name,
                    sig.sort_display(*sort)
                )));
            }
        }
        Ok(self.cons(ctor, args))
    }

    /// Construction without checks; arguments are values of the right sorts.
    pub(crate) fn cons(&mut self, ctor: CtorId, args: Vec<S::Value>) -> S::Value {
        let fam = self.fam;
        match fam.entry(ctor) {
            FamilyEntry::Free => self.store.app(ctor, args),
            FamilyEntry::Type1(clauses) => {
                for clause in clauses {
                    if let Some(env) = self.match_clause(clause, &args) {
                        return self.instantiate(&clause.rhs, &env);
                    }
                }
                self.store.app(ctor, args)
            }
            FamilyEntry::Type2(th) => {
                let [a, b]: [S::Value; 2] = args.try_into().expect("binary constructor");
                self.f_c(th, a, b)
            }
            FamilyEntry::Inverse(th) => {
                let [v]: [S::Value; 1] = args.try_into().expect("unary constructor");
                self.f_i(th, v)
            }
        }
    }

    fn match_clause(
        &self,
        clause: &CompiledClause,
        args: &[S::Value],
    ) -> Option<Vec<(Arc<str>, S::Value)>> {
        let mut env = Vec::new();
        for (p, v) in clause.patterns.iter().zip(args) {
            if !self.match_pattern(p, v, &mut env) {
                return None;
            }
        }
        let lookup = |name: &Arc<str>, env: &[(Arc<str>, S::Value)]| {
            env.iter().find(|(n, _)| n == name).map(|(_, v)| v.clone())
        };
        for (a, b) in &clause.guard {
            match (lookup(a, &env), lookup(b, &env)) {
                (Some(x), Some(y)) if self.store.same(&x, &y) => {}
                _ => return None,
            }
        }
        Some(env)
    }

    fn match_pattern(&self, p: &Term, v: &S::Value, env: &mut Vec<(Arc<str>, S::Value)>) -> bool {
        match p {
            Term::Var(var) => {
                env.push((var.name.clone(), v.clone()));
                true
            }
            Term::Prim(q) => self.store.as_prim(v).as_ref() == Some(q),
            Term::App(c, pargs) => {
                if self.store.head(v) != Some(*c) {
                    return false;
                }
                let vargs = self.store.args(v);
                pargs
                    .iter()
                    .zip(&vargs)
                    .all(|(pa, va)| self.match_pattern(pa, va, env))
            }
        }
    }

    fn instantiate(&mut self, t: &Term, env: &[(Arc<str>, S::Value)]) -> S::Value {
        match t {
            Term::Var(v) => env
                .iter()
                .find(|(n, _)| *n == v.name)
                .map(|(_, val)| val.clone())
                .expect("rhs variables are bound by the lhs"),
            Term::Prim(p) => self.store.prim(p.clone()),
            Term::App(c, args) => {
                let vals = args.iter().map(|a| self.instantiate(a, env)).collect();
                self.cons(*c, vals)
            }
        }
    }

    /// Bottom-up application of the construction functions.
    pub fn normalize(&mut self, t: &Term, order: ArgOrder) -> Result<S::Value> {
        if !well_sorted_ground(self.fam.signature(), t) {
            return Err(Error::IllSorted(format!(
                "`{}` is not a well-sorted ground term",
                self.fam.signature().show(t)
            )));
        }
        Ok(self.norm(t, order))
    }

    fn norm(&mut self, t: &Term, order: ArgOrder) -> S::Value {
        match t {
            Term::Var(_) => unreachable!("checked ground"),
            Term::Prim(p) => self.store.prim(p.clone()),
            Term::App(c, args) => {
                let vals = match order {
                    ArgOrder::LeftToRight => args.iter().map(|a| self.norm(a, order)).collect(),
                    ArgOrder::RightToLeft => {
                        let mut v: Vec<S::Value> =
                            args.iter().rev().map(|a| self.norm(a, order)).collect();
                        v.reverse();
                        v
                    }
                };
                self.cons(*c, vals)
            }
        }
    }

    fn theory_for(&self, ctor: CtorId) -> Result<&'a Type2Theory> {
        self.fam.theory(ctor).ok_or_else(|| {
            Error::NoOracle(self.fam.signature().ctor_name(ctor).to_string())
        })
    }

    /// `f_I(v)` for the inverse symbol of the theory of `ctor`.
    pub fn inverse(&mut self, ctor: CtorId, v: S::Value) -> Result<S::Value> {
        let th = self.theory_for(ctor)?;
        if th.inverse.is_none() {
            return Err(Error::NoOracle(self.fam.signature().ctor_name(ctor).to_string()));
        }
        Ok(self.f_i(th, v))
    }

    /// Sorted insertion of leaf `x` into the comb `u` of `ctor`.
    pub fn insert(&mut self, ctor: CtorId, x: S::Value, u: S::Value) -> Result<S::Value> {
        let th = self.theory_for(ctor)?;
        Ok(self.ins(th, x, u))
    }

    /// Removes one occurrence of leaf `x` from the comb `u` of `ctor`;
    /// `None` when `x` does not occur.
    pub fn delete(&mut self, ctor: CtorId, x: S::Value, u: S::Value) -> Result<Option<S::Value>> {
        let th = self.theory_for(ctor)?;
        Ok(self.del(th, &x, u))
    }

    /// Adds the inverse of `x_inv` to `y`, cancelling against `x_inv` when it occurs.
    pub fn insert_inv(&mut self, ctor: CtorId, x_inv: S::Value, y: S::Value) -> Result<S::Value> {
        let th = self.theory_for(ctor)?;
        Ok(self.ins_inv(th, x_inv, y))
    }

    pub(crate) fn order(&self, a: &S::Value, b: &S::Value) -> Ordering {
        self.store.compare(a, b)
    }
}

/// Normal form of a ground term as a plain term.
pub fn normalize(t: &Term, fam: &CompiledFamily) -> Result<Term> {
    normalize_with(&mut TermStore, t, fam, ArgOrder::LeftToRight)
}

/// Normal form of a ground term in the given store and argument order.
pub fn normalize_with<S: Store>(
    store: &mut S,
    t: &Term,
    fam: &CompiledFamily,
    order: ArgOrder,
) -> Result<S::Value> {
    Builder::new(fam, store).normalize(t, order)
}

/// `f_C(args)` on plain-term values.
pub fn construct(ctor: CtorId, args: Vec<Term>, fam: &CompiledFamily) -> Result<Term> {
    Builder::new(fam, &mut TermStore).construct(ctor, args)
}
