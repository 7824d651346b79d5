//! Sorted first-order terms.
//!
//! A [`Signature`] declares one data sort and its constructors. Arguments are
//! either the data sort itself or one of the primitive types (`int`,
//! `string`). Terms refer to constructors by declaration index, so the derived
//! ordering on [`Term`] is the canonical total order used for sorting leaves:
//! primitives before applications, primitives by type then value,
//! applications by declaration index then arguments lexicographically.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Declaration index of a constructor within its signature.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CtorId(pub u32);

impl CtorId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Primitive types, ordered by type name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PrimType {
    Int,
    Str,
}

impl PrimType {
    pub fn name(self) -> &'static str {
        match self {
            PrimType::Int => "int",
            PrimType::Str => "string",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "int" => Some(PrimType::Int),
            "string" => Some(PrimType::Str),
            _ => None,
        }
    }
}

/// A primitive constant.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Prim {
    Int(i64),
    Str(String),
}

impl Prim {
    pub fn ty(&self) -> PrimType {
        match self {
            Prim::Int(_) => PrimType::Int,
            Prim::Str(_) => PrimType::Str,
        }
    }
}

impl fmt::Display for Prim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Prim::Int(n) => write!(f, "{n}"),
            Prim::Str(s) => {
                f.write_str("\"")?;
                for c in s.chars() {
                    match c {
                        '"' => f.write_str("\\\"")?,
                        '\\' => f.write_str("\\\\")?,
                        '\n' => f.write_str("\\n")?,
                        c => write!(f, "{c}")?,
                    }
                }
                f.write_str("\"")
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sort {
    /// The data sort declared by the signature.
    Data,
    Prim(PrimType),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CtorDecl {
    pub name: String,
    pub args: Vec<Sort>,
}

impl CtorDecl {
    pub fn arity(&self) -> usize {
        self.args.len()
    }
}

/// One data sort, its constructors in declaration order, and the sample
/// values used when enumerating primitive arguments.
#[derive(Clone, Debug)]
pub struct Signature {
    name: String,
    ctors: Vec<CtorDecl>,
    by_name: HashMap<String, CtorId>,
    int_samples: Vec<Prim>,
    str_samples: Vec<Prim>,
}

impl Signature {
    pub fn new(name: impl Into<String>) -> Self {
        Signature {
            name: name.into(),
            ctors: Vec::new(),
            by_name: HashMap::new(),
            int_samples: vec![Prim::Int(0), Prim::Int(1)],
            str_samples: vec![Prim::Str("a".into()), Prim::Str("b".into())],
        }
    }

    /// Builds a signature from `(name, argument sorts)` pairs.
    pub fn build<'a, I>(name: &str, decls: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a str, Vec<Sort>)>,
    {
        let mut sig = Signature::new(name);
        for (ctor, args) in decls {
            sig.add_ctor(ctor, args)?;
        }
        Ok(sig)
    }

    pub fn add_ctor(&mut self, name: impl Into<String>, args: Vec<Sort>) -> Result<CtorId> {
        let name = name.into();
        if self.by_name.contains_key(&name) {
            return Err(Error::DuplicateConstructor(name));
        }
        let id = CtorId(self.ctors.len() as u32);
        self.by_name.insert(name.clone(), id);
        self.ctors.push(CtorDecl { name, args });
        Ok(id)
    }

    pub fn sort_name(&self) -> &str {
        &self.name
    }

    pub fn ctor(&self, id: CtorId) -> &CtorDecl {
        &self.ctors[id.index()]
    }

    pub fn ctor_name(&self, id: CtorId) -> &str {
        &self.ctors[id.index()].name
    }

    pub fn arity(&self, id: CtorId) -> usize {
        self.ctors[id.index()].args.len()
    }

    pub fn lookup(&self, name: &str) -> Option<CtorId> {
        self.by_name.get(name).copied()
    }

    pub fn len(&self) -> usize {
        self.ctors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ctors.is_empty()
    }

    pub fn ctor_ids(&self) -> impl Iterator<Item = CtorId> + '_ {
        (0..self.ctors.len() as u32).map(CtorId)
    }

    /// Resolves a sort name: the data sort or a primitive type.
    pub fn sort_by_name(&self, name: &str) -> Option<Sort> {
        if name == self.name {
            Some(Sort::Data)
        } else {
            PrimType::from_name(name).map(Sort::Prim)
        }
    }

    pub fn sort_display(&self, sort: Sort) -> &str {
        match sort {
            Sort::Data => &self.name,
            Sort::Prim(p) => p.name(),
        }
    }

    pub fn samples(&self, ty: PrimType) -> &[Prim] {
        match ty {
            PrimType::Int => &self.int_samples,
            PrimType::Str => &self.str_samples,
        }
    }

    /// Replaces the enumeration domain of a primitive type.
    pub fn set_samples(&mut self, ty: PrimType, samples: Vec<Prim>) {
        debug_assert!(samples.iter().all(|p| p.ty() == ty));
        match ty {
            PrimType::Int => self.int_samples = samples,
            PrimType::Str => self.str_samples = samples,
        }
    }

    /// Renders a term in the concrete syntax.
    pub fn show<'a>(&'a self, term: &'a Term) -> Shown<'a> {
        Shown { sig: self, term }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var {
    pub name: Arc<str>,
    pub sort: Sort,
}

/// A first-order term. Ground terms contain no [`Term::Var`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Var(Var),
    Prim(Prim),
    App(CtorId, Arc<[Term]>),
}

impl Term {
    pub fn app(ctor: CtorId, args: Vec<Term>) -> Term {
        Term::App(ctor, args.into())
    }

    pub fn constant(ctor: CtorId) -> Term {
        Term::App(ctor, Arc::from(Vec::new()))
    }

    pub fn var(name: &str, sort: Sort) -> Term {
        Term::Var(Var {
            name: name.into(),
            sort,
        })
    }

    pub fn int(n: i64) -> Term {
        Term::Prim(Prim::Int(n))
    }

    pub fn string(s: impl Into<String>) -> Term {
        Term::Prim(Prim::Str(s.into()))
    }

    pub fn head(&self) -> Option<CtorId> {
        match self {
            Term::App(c, _) => Some(*c),
            _ => None,
        }
    }

    pub fn is_headed_by(&self, ctor: CtorId) -> bool {
        self.head() == Some(ctor)
    }

    pub fn args(&self) -> &[Term] {
        match self {
            Term::App(_, args) => args,
            _ => &[],
        }
    }

    /// Node count; every variable, primitive and constructor counts once.
    pub fn size(&self) -> usize {
        1 + self.args().iter().map(Term::size).sum::<usize>()
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::Prim(_) => true,
            Term::App(_, args) => args.iter().all(Term::is_ground),
        }
    }

    /// Pre-order traversal of all subterms, including `self`.
    pub fn subterms(&self) -> Vec<&Term> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(t) = stack.pop() {
            out.push(t);
            stack.extend(t.args().iter().rev());
        }
        out
    }

    /// Every position of the term in pre-order. The root is the empty position.
    pub fn positions(&self) -> Vec<Position> {
        fn go(t: &Term, prefix: &mut Vec<usize>, out: &mut Vec<Position>) {
            out.push(Position(prefix.clone()));
            for (i, a) in t.args().iter().enumerate() {
                prefix.push(i + 1);
                go(a, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }

    pub fn subterm_at(&self, pos: &Position) -> Result<&Term> {
        let mut t = self;
        for &i in &pos.0 {
            t = i
                .checked_sub(1)
                .and_then(|i| t.args().get(i))
                .ok_or(Error::PositionOutOfRange)?;
        }
        Ok(t)
    }

    /// Replaces the subterm at `pos` without any sort check.
    pub fn replace_at_unchecked(&self, pos: &[usize], with: Term) -> Result<Term> {
        match pos.split_first() {
            None => Ok(with),
            Some((&i, rest)) => match self {
                Term::App(c, args) if i >= 1 && i <= args.len() => {
                    let mut new_args = args.to_vec();
                    new_args[i - 1] = args[i - 1].replace_at_unchecked(rest, with)?;
                    Ok(Term::App(*c, new_args.into()))
                }
                _ => Err(Error::PositionOutOfRange),
            },
        }
    }

    /// Variables in order of first occurrence.
    pub fn vars(&self) -> Vec<&Var> {
        let mut out: Vec<&Var> = Vec::new();
        for t in self.subterms() {
            if let Term::Var(v) = t {
                if !out.iter().any(|w| w.name == v.name) {
                    out.push(v);
                }
            }
        }
        out
    }
}

/// A path of 1-based argument indices from the root.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Position(pub Vec<usize>);

impl Position {
    pub fn root() -> Self {
        Position(Vec::new())
    }
}

impl From<Vec<usize>> for Position {
    fn from(v: Vec<usize>) -> Self {
        Position(v)
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        let parts: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        f.write_str(&parts.join("."))
    }
}

/// The canonical total order on ground terms.
pub fn compare(t: &Term, u: &Term) -> Ordering {
    t.cmp(u)
}

/// Sort of a term, or `None` if the head constructor is not declared.
pub fn sort_of(sig: &Signature, t: &Term) -> Option<Sort> {
    match t {
        Term::Var(v) => Some(v.sort),
        Term::Prim(p) => Some(Sort::Prim(p.ty())),
        Term::App(c, _) => (c.index() < sig.len()).then_some(Sort::Data),
    }
}

/// True iff `t` is derivable by the sorting rules of `sig`, variables allowed.
pub fn well_sorted(sig: &Signature, t: &Term) -> bool {
    match t {
        Term::Var(_) | Term::Prim(_) => true,
        Term::App(c, args) => {
            if c.index() >= sig.len() {
                return false;
            }
            let decl = sig.ctor(*c);
            decl.args.len() == args.len()
                && decl
                    .args
                    .iter()
                    .zip(args.iter())
                    .all(|(s, a)| sort_of(sig, a) == Some(*s) && well_sorted(sig, a))
        }
    }
}

/// Well-sorted and free of variables.
pub fn well_sorted_ground(sig: &Signature, t: &Term) -> bool {
    t.is_ground() && well_sorted(sig, t)
}

/// `t` with the subterm at `pos` replaced by `with`, which must have the same sort.
pub fn replace_at(sig: &Signature, t: &Term, pos: &Position, with: Term) -> Result<Term> {
    let old = t.subterm_at(pos)?;
    if sort_of(sig, old) != sort_of(sig, &with) || !well_sorted(sig, &with) {
        return Err(Error::IllSortedReplacement);
    }
    t.replace_at_unchecked(&pos.0, with)
}

/// Display adaptor returned by [`Signature::show`].
pub struct Shown<'a> {
    sig: &'a Signature,
    term: &'a Term,
}

impl fmt::Display for Shown<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.term {
            Term::Var(v) => f.write_str(&v.name),
            Term::Prim(p) => write!(f, "{p}"),
            Term::App(c, args) => {
                match self.sig.ctors.get(c.index()) {
                    Some(decl) => f.write_str(&decl.name)?,
                    None => write!(f, "#{}", c.0)?,
                }
                if !args.is_empty() {
                    f.write_str("(")?;
                    for (i, a) in args.iter().enumerate() {
                        if i > 0 {
                            f.write_str(", ")?;
                        }
                        write!(f, "{}", self.sig.show(a))?;
                    }
                    f.write_str(")")?;
                }
                Ok(())
            }
        }
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn exp() -> Signature {
        Signature::build(
            "exp",
            [
                ("Zero", vec![]),
                ("One", vec![]),
                ("Opp", vec![Sort::Data]),
                ("Plus", vec![Sort::Data, Sort::Data]),
            ],
        )
        .unwrap()
    }

    fn c(sig: &Signature, name: &str, args: Vec<Term>) -> Term {
        Term::app(sig.lookup(name).unwrap(), args)
    }

    #[test]
    fn well_sortedness() {
        let sig = exp();
        let zero = c(&sig, "Zero", vec![]);
        let one = c(&sig, "One", vec![]);
        assert!(well_sorted(&sig, &c(&sig, "Plus", vec![zero.clone(), one.clone()])));
        assert!(!well_sorted(&sig, &c(&sig, "Opp", vec![zero.clone(), one])));
        let pat = c(&sig, "Plus", vec![Term::var("x", Sort::Data), zero]);
        assert!(well_sorted(&sig, &pat));
        assert!(!well_sorted_ground(&sig, &pat));
        let bad = c(&sig, "Opp", vec![Term::int(3)]);
        assert!(!well_sorted(&sig, &bad));
    }

    #[test]
    fn order_follows_declarations() {
        let sig = exp();
        let zero = c(&sig, "Zero", vec![]);
        let one = c(&sig, "One", vec![]);
        assert_eq!(compare(&zero, &zero), Ordering::Equal);
        assert_eq!(compare(&zero, &one), Ordering::Less);
        assert_eq!(compare(&one, &c(&sig, "Opp", vec![one.clone()])), Ordering::Less);
        assert_eq!(compare(&Term::int(5), &zero), Ordering::Less);
        assert_eq!(compare(&Term::int(5), &Term::string("a")), Ordering::Less);
        assert_eq!(compare(&Term::int(-1), &Term::int(2)), Ordering::Less);
    }

    #[test]
    fn subterm_and_replace() {
        let sig = exp();
        let zero = c(&sig, "Zero", vec![]);
        let one = c(&sig, "One", vec![]);
        let t = c(&sig, "Plus", vec![zero.clone(), one.clone()]);
        assert_eq!(t.subterm_at(&vec![1].into()).unwrap(), &zero);
        assert_eq!(
            replace_at(&sig, &t, &vec![2].into(), zero.clone()).unwrap(),
            c(&sig, "Plus", vec![zero.clone(), zero.clone()])
        );
        assert_eq!(
            replace_at(&sig, &zero, &vec![1].into(), one.clone()),
            Err(Error::PositionOutOfRange)
        );
        assert_eq!(
            replace_at(&sig, &t, &vec![1].into(), Term::int(1)),
            Err(Error::IllSortedReplacement)
        );
        assert_eq!(t.subterm_at(&vec![0].into()), Err(Error::PositionOutOfRange));
    }

    #[test]
    fn printing() {
        let sig = exp();
        let t = c(
            &sig,
            "Plus",
            vec![c(&sig, "One", vec![]), c(&sig, "Opp", vec![c(&sig, "Zero", vec![])])],
        );
        assert_eq!(sig.show(&t).to_string(), "Plus(One, Opp(Zero))");
        assert_eq!(Prim::Str("a\"b".into()).to_string(), "\"a\\\"b\"");
    }
}
