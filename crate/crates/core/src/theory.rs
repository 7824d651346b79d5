//! Equational attributes on binary constructors, user rewrite rules, and the
//! classification of each constructor's theory.
//!
//! Attribute sets containing commutativity must come from the closed
//! associative-commutative catalog (see [`Type2Variant`]); those are served by
//! dedicated construction schemes. Everything else is a rule system compiled
//! clause by clause.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::term::{well_sorted, CtorId, Signature, Sort, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TheoryError {
    #[error("commutativity requires associativity in type-2 catalog (constructor `{0}`)")]
    ComWithoutAssoc(String),
    #[error("inverse requires a neutral element on `{0}`")]
    InvWithoutNeu(String),
    #[error("inverse of `{ctor}` refers to neutral `{inv_neutral}`, but the declared neutral is `{neutral}`")]
    InvNeutralMismatch {
        ctor: String,
        inv_neutral: String,
        neutral: String,
    },
    #[error("nilpotent element `{nil}` of `{ctor}` must be its neutral element `{neutral}`")]
    NilNeutralMismatch {
        ctor: String,
        nil: String,
        neutral: String,
    },
    #[error("unsupported attribute combination {{{combo}}} on `{ctor}`")]
    Unsupported { ctor: String, combo: String },
    #[error("conflicting `{attr}` attributes on `{ctor}`")]
    Conflicting { ctor: String, attr: &'static str },
    #[error("attributes on `{0}` require a binary constructor over the data sort")]
    NotBinary(String),
    #[error("`{attr}` on `{ctor}` expects {expected}, got `{arg}`")]
    BadParameter {
        ctor: String,
        attr: &'static str,
        expected: &'static str,
        arg: String,
    },
    #[error("symbol `{symbol}` is shared between the theories of `{first}` and `{second}`")]
    SharedSymbol {
        symbol: String,
        first: String,
        second: String,
    },
    #[error("rule left-hand side must be headed by a constructor")]
    RuleLhsNotConstructor,
    #[error("rule right-hand side uses variable `{0}` not bound by its left-hand side")]
    UnboundRhsVar(String),
    #[error("rule sides have different sorts")]
    RuleSortMismatch,
    #[error("ill-sorted rule")]
    IllSortedRule,
    #[error("rule left-hand side mentions `{0}`, which belongs to an associative-commutative theory")]
    RuleOnType2Symbol(String),
}

/// Which way the spine of an associative constructor leans.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Comb {
    Left,
    #[default]
    Right,
}

/// Equations on a binary constructor `C`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EquationAttr {
    /// `C(C(x,y),z) = C(x,C(y,z))`
    Assoc,
    /// `C(x,y) = C(y,x)`
    Com,
    /// `C(x,E) = x`
    Neu(CtorId),
    /// `C(x,I(x)) = E`
    Inv { inverse: CtorId, neutral: CtorId },
    /// `C(x,x) = x`
    Idem,
    /// `C(x,x) = A`
    Nil(CtorId),
}

impl EquationAttr {
    fn keyword(&self) -> &'static str {
        match self {
            EquationAttr::Assoc => "associative",
            EquationAttr::Com => "commutative",
            EquationAttr::Neu(_) => "neutral",
            EquationAttr::Inv { .. } => "inverse",
            EquationAttr::Idem => "idempotent",
            EquationAttr::Nil(_) => "nilpotent",
        }
    }
}

/// A user rule `lhs -> rhs`; both sides are patterns over one signature.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RewriteRule {
    pub lhs: Term,
    pub rhs: Term,
}

impl RewriteRule {
    pub fn new(sig: &Signature, lhs: Term, rhs: Term) -> Result<Self, TheoryError> {
        if lhs.head().is_none() {
            return Err(TheoryError::RuleLhsNotConstructor);
        }
        if !well_sorted(sig, &lhs) || !well_sorted(sig, &rhs) {
            return Err(TheoryError::IllSortedRule);
        }
        if crate::term::sort_of(sig, &lhs) != crate::term::sort_of(sig, &rhs) {
            return Err(TheoryError::RuleSortMismatch);
        }
        let bound = lhs.vars();
        for v in rhs.vars() {
            if !bound.iter().any(|b| b.name == v.name) {
                return Err(TheoryError::UnboundRhsVar(v.name.to_string()));
            }
        }
        Ok(RewriteRule { lhs, rhs })
    }

    /// Builds a rule without validation; for internally generated presentations.
    pub(crate) fn raw(lhs: Term, rhs: Term) -> Self {
        RewriteRule { lhs, rhs }
    }

    pub fn head(&self) -> CtorId {
        self.lhs.head().expect("rule lhs is headed by a constructor")
    }
}

/// An unoriented equation between patterns.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Equation {
    pub lhs: Term,
    pub rhs: Term,
}

/// Per-constructor attributes, comb orientation overrides, and user rules.
#[derive(Clone, Debug, Default)]
pub struct TheorySpec {
    attrs: BTreeMap<CtorId, Vec<EquationAttr>>,
    orient: BTreeMap<CtorId, Comb>,
    rules: Vec<RewriteRule>,
}

impl TheorySpec {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_attr(&mut self, ctor: CtorId, attr: EquationAttr) -> &mut Self {
        self.attrs.entry(ctor).or_default().push(attr);
        self
    }

    pub fn with_attrs(mut self, ctor: CtorId, attrs: &[EquationAttr]) -> Self {
        for a in attrs {
            self.add_attr(ctor, *a);
        }
        self
    }

    pub fn set_orientation(&mut self, ctor: CtorId, comb: Comb) -> &mut Self {
        self.orient.insert(ctor, comb);
        self
    }

    pub fn add_rule(&mut self, rule: RewriteRule) -> &mut Self {
        self.rules.push(rule);
        self
    }

    pub fn attrs(&self, ctor: CtorId) -> &[EquationAttr] {
        self.attrs.get(&ctor).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn attributed(&self) -> impl Iterator<Item = (CtorId, &[EquationAttr])> {
        self.attrs.iter().map(|(c, a)| (*c, a.as_slice()))
    }

    pub fn orientation(&self, ctor: CtorId) -> Comb {
        self.orient.get(&ctor).copied().unwrap_or_default()
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }
}

/// The closed catalog of associative-commutative theories with dedicated
/// construction schemes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Type2Variant {
    /// `{Assoc, Com}`
    AC,
    /// `{Assoc, Com, Neu}`
    ACNeu,
    /// `{Assoc, Com, Idem}`
    ACI,
    /// `{Assoc, Com, Neu, Idem}`
    ACNeuIdem,
    /// `{Assoc, Com, Nil}`
    ACNil,
    /// `{Assoc, Com, Neu, Nil}` with the nilpotent element equal to the neutral one.
    ACNeuNil,
    /// `{Assoc, Com, Neu, Inv}`
    AbelianGroup,
}

impl Type2Variant {
    pub fn name(self) -> &'static str {
        match self {
            Type2Variant::AC => "AC",
            Type2Variant::ACNeu => "AC+neutral",
            Type2Variant::ACI => "ACI",
            Type2Variant::ACNeuIdem => "ACI+neutral",
            Type2Variant::ACNil => "AC+nilpotent",
            Type2Variant::ACNeuNil => "AC+neutral+nilpotent",
            Type2Variant::AbelianGroup => "abelian-group",
        }
    }
}

/// One associative-commutative theory instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Type2Theory {
    pub ctor: CtorId,
    pub variant: Type2Variant,
    pub neutral: Option<CtorId>,
    pub inverse: Option<CtorId>,
    pub nil: Option<CtorId>,
    pub orient: Comb,
}

impl Type2Theory {
    pub fn idem(&self) -> bool {
        matches!(self.variant, Type2Variant::ACI | Type2Variant::ACNeuIdem)
    }

    /// Every constructor symbol of the theory.
    pub fn symbols(&self) -> Vec<CtorId> {
        let mut s = vec![self.ctor];
        s.extend(self.neutral);
        s.extend(self.inverse);
        if self.nil != self.neutral {
            s.extend(self.nil);
        }
        s
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CtorClass {
    /// No equations: the default clause only.
    Free,
    /// Compiled from rewrite rules.
    Type1,
    /// Binary constructor of the indexed associative-commutative theory.
    Type2(usize),
    /// Inverse symbol of the indexed abelian-group theory.
    InverseOf(usize),
}

/// Result of [`classify`].
#[derive(Clone, Debug)]
pub struct Classification {
    classes: Vec<CtorClass>,
    theories: Vec<Type2Theory>,
    rules: Vec<RewriteRule>,
}

impl Classification {
    pub fn class(&self, ctor: CtorId) -> CtorClass {
        self.classes[ctor.index()]
    }

    pub fn theories(&self) -> &[Type2Theory] {
        &self.theories
    }

    /// The theory owning `ctor` as its binary constructor or its inverse.
    pub fn theory_of(&self, ctor: CtorId) -> Option<&Type2Theory> {
        match self.class(ctor) {
            CtorClass::Type2(i) | CtorClass::InverseOf(i) => Some(&self.theories[i]),
            _ => None,
        }
    }

    /// The full rule system compiled clause by clause: rules derived from
    /// single non-commutative attributes, then user rules in source order.
    pub fn type1_rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    pub fn has_type1(&self) -> bool {
        !self.rules.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.theories.is_empty() && self.rules.is_empty()
    }
}

#[derive(Default)]
struct Flags {
    assoc: bool,
    com: bool,
    neu: Option<CtorId>,
    inv: Option<(CtorId, CtorId)>,
    idem: bool,
    nil: Option<CtorId>,
}

impl Flags {
    fn combo(&self, sig: &Signature) -> String {
        let mut parts = Vec::new();
        if self.assoc {
            parts.push("associative".to_string());
        }
        if self.com {
            parts.push("commutative".to_string());
        }
        if let Some(e) = self.neu {
            parts.push(format!("neutral({})", sig.ctor_name(e)));
        }
        if let Some((i, _)) = self.inv {
            parts.push(format!("inverse({})", sig.ctor_name(i)));
        }
        if self.idem {
            parts.push("idempotent".to_string());
        }
        if let Some(a) = self.nil {
            parts.push(format!("nilpotent({})", sig.ctor_name(a)));
        }
        parts.join(", ")
    }

    fn count(&self) -> usize {
        [
            self.assoc,
            self.com,
            self.neu.is_some(),
            self.inv.is_some(),
            self.idem,
            self.nil.is_some(),
        ]
        .iter()
        .filter(|b| **b)
        .count()
    }
}

fn collect_flags(
    sig: &Signature,
    ctor: CtorId,
    attrs: &[EquationAttr],
) -> Result<Flags, TheoryError> {
    let name = || sig.ctor_name(ctor).to_string();
    let decl = sig.ctor(ctor);
    if decl.args != [Sort::Data, Sort::Data] {
        return Err(TheoryError::NotBinary(name()));
    }
    let nullary = |attr: &'static str, c: CtorId| -> Result<(), TheoryError> {
        if c.index() >= sig.len() || sig.arity(c) != 0 {
            return Err(TheoryError::BadParameter {
                ctor: name(),
                attr,
                expected: "a nullary constructor",
                arg: if c.index() < sig.len() { sig.ctor_name(c).to_string() } else { format!("#{}", c.0) },
            });
        }
        Ok(())
    };
    let mut f = Flags::default();
    // sorted so the outcome does not depend on listing order
    let mut sorted = attrs.to_vec();
    sorted.sort();
    sorted.dedup();
    for attr in &sorted {
        let conflict = || TheoryError::Conflicting {
            ctor: name(),
            attr: attr.keyword(),
        };
        match *attr {
            EquationAttr::Assoc => f.assoc = true,
            EquationAttr::Com => f.com = true,
            EquationAttr::Idem => f.idem = true,
            EquationAttr::Neu(e) => {
                nullary("neutral", e)?;
                if f.neu.replace(e).is_some() {
                    return Err(conflict());
                }
            }
            EquationAttr::Nil(a) => {
                nullary("nilpotent", a)?;
                if f.nil.replace(a).is_some() {
                    return Err(conflict());
                }
            }
            EquationAttr::Inv { inverse, neutral } => {
                nullary("inverse", neutral)?;
                if inverse.index() >= sig.len() || sig.ctor(inverse).args != [Sort::Data] {
                    return Err(TheoryError::BadParameter {
                        ctor: name(),
                        attr: "inverse",
                        expected: "a unary constructor over the data sort",
                        arg: if inverse.index() < sig.len() {
                            sig.ctor_name(inverse).to_string()
                        } else {
                            format!("#{}", inverse.0)
                        },
                    });
                }
                if f.inv.replace((inverse, neutral)).is_some() {
                    return Err(conflict());
                }
            }
        }
    }
    Ok(f)
}

enum Classified {
    Type2(Type2Theory),
    Type1(Vec<RewriteRule>, Vec<CtorId>),
}

fn classify_one(
    sig: &Signature,
    ctor: CtorId,
    f: &Flags,
    orient: Comb,
) -> Result<Classified, TheoryError> {
    let name = || sig.ctor_name(ctor).to_string();
    let unsupported = || TheoryError::Unsupported {
        ctor: name(),
        combo: f.combo(sig),
    };
    if let Some((_, inv_neutral)) = f.inv {
        match f.neu {
            None => return Err(TheoryError::InvWithoutNeu(name())),
            Some(e) if e != inv_neutral => {
                return Err(TheoryError::InvNeutralMismatch {
                    ctor: name(),
                    inv_neutral: sig.ctor_name(inv_neutral).to_string(),
                    neutral: sig.ctor_name(e).to_string(),
                })
            }
            _ => {}
        }
    }
    if f.com {
        if !f.assoc {
            return Err(TheoryError::ComWithoutAssoc(name()));
        }
        let variant = match (f.neu, f.inv, f.idem, f.nil) {
            (None, None, false, None) => Type2Variant::AC,
            (Some(_), None, false, None) => Type2Variant::ACNeu,
            (None, None, true, None) => Type2Variant::ACI,
            (Some(_), None, true, None) => Type2Variant::ACNeuIdem,
            (None, None, false, Some(_)) => Type2Variant::ACNil,
            (Some(e), None, false, Some(a)) => {
                if e != a {
                    return Err(TheoryError::NilNeutralMismatch {
                        ctor: name(),
                        nil: sig.ctor_name(a).to_string(),
                        neutral: sig.ctor_name(e).to_string(),
                    });
                }
                Type2Variant::ACNeuNil
            }
            (Some(_), Some(_), false, None) => Type2Variant::AbelianGroup,
            _ => return Err(unsupported()),
        };
        return Ok(Classified::Type2(Type2Theory {
            ctor,
            variant,
            neutral: f.neu,
            inverse: f.inv.map(|(i, _)| i),
            nil: f.nil,
            orient,
        }));
    }
    // Without commutativity only single equations whose orientation is
    // already a complete system are accepted.
    if f.count() != 1 || f.inv.is_some() {
        return Err(unsupported());
    }
    let x = Term::var("x", Sort::Data);
    let y = Term::var("y", Sort::Data);
    let z = Term::var("z", Sort::Data);
    let c = |a: Term, b: Term| Term::app(ctor, vec![a, b]);
    let (rule, syms) = if f.assoc {
        let r = match orient {
            Comb::Right => RewriteRule::raw(c(c(x.clone(), y.clone()), z.clone()), c(x, c(y, z))),
            Comb::Left => RewriteRule::raw(c(x.clone(), c(y.clone(), z.clone())), c(c(x, y), z)),
        };
        (r, vec![ctor])
    } else if let Some(e) = f.neu {
        (RewriteRule::raw(c(x.clone(), Term::constant(e)), x), vec![ctor, e])
    } else if f.idem {
        (RewriteRule::raw(c(x.clone(), x.clone()), x), vec![ctor])
    } else if let Some(a) = f.nil {
        (RewriteRule::raw(c(x.clone(), x), Term::constant(a)), vec![ctor, a])
    } else {
        return Err(unsupported());
    };
    Ok(Classified::Type1(vec![rule], syms))
}

/// Assigns every constructor its class and checks that the type-2 theories
/// are pairwise disjoint and untouched by rule left-hand sides.
pub fn classify(spec: &TheorySpec, sig: &Signature) -> Result<Classification, TheoryError> {
    let mut classes = vec![CtorClass::Free; sig.len()];
    let mut theories = Vec::new();
    let mut rules = Vec::new();
    // symbol -> owning constructor, for type-2 theories
    let mut owner: BTreeMap<CtorId, CtorId> = BTreeMap::new();
    let mut type1_syms: BTreeMap<CtorId, CtorId> = BTreeMap::new();

    for (ctor, attrs) in spec.attributed() {
        if attrs.is_empty() {
            continue;
        }
        let flags = collect_flags(sig, ctor, attrs)?;
        match classify_one(sig, ctor, &flags, spec.orientation(ctor))? {
            Classified::Type2(th) => {
                for s in th.symbols() {
                    if let Some(prev) = owner.insert(s, ctor) {
                        return Err(shared(sig, s, prev, ctor));
                    }
                }
                theories.push(th);
            }
            Classified::Type1(mut rs, syms) => {
                type1_syms.extend(syms.into_iter().map(|s| (s, ctor)));
                classes[ctor.index()] = CtorClass::Type1;
                rules.append(&mut rs);
            }
        }
    }
    for (s, t1) in &type1_syms {
        if let Some(prev) = owner.get(s) {
            return Err(shared(sig, *s, *prev, *t1));
        }
    }
    for (i, th) in theories.iter().enumerate() {
        classes[th.ctor.index()] = CtorClass::Type2(i);
        if let Some(inv) = th.inverse {
            classes[inv.index()] = CtorClass::InverseOf(i);
        }
    }
    for rule in spec.rules() {
        let head = rule.head();
        if owner.contains_key(&head) {
            return Err(TheoryError::RuleOnType2Symbol(sig.ctor_name(head).to_string()));
        }
        for t in rule.lhs.subterms() {
            if let Some(c) = t.head() {
                if theories.iter().any(|th| th.ctor == c) {
                    return Err(TheoryError::RuleOnType2Symbol(sig.ctor_name(c).to_string()));
                }
            }
        }
        classes[head.index()] = CtorClass::Type1;
        rules.push(rule.clone());
    }
    Ok(Classification {
        classes,
        theories,
        rules,
    })
}

fn shared(sig: &Signature, symbol: CtorId, a: CtorId, b: CtorId) -> TheoryError {
    let (first, second) = if a <= b { (a, b) } else { (b, a) };
    TheoryError::SharedSymbol {
        symbol: sig.ctor_name(symbol).to_string(),
        first: sig.ctor_name(first).to_string(),
        second: sig.ctor_name(second).to_string(),
    }
}

fn xyz() -> (Term, Term, Term) {
    (
        Term::var("x", Sort::Data),
        Term::var("y", Sort::Data),
        Term::var("z", Sort::Data),
    )
}

/// The equation set: one equation per attribute, then every user rule read
/// as an equation.
pub fn equations_of(spec: &TheorySpec) -> Vec<Equation> {
    let mut out = Vec::new();
    let (x, y, z) = xyz();
    for (ctor, attrs) in spec.attributed() {
        let c = |a: Term, b: Term| Term::app(ctor, vec![a, b]);
        let mut sorted = attrs.to_vec();
        sorted.sort();
        sorted.dedup();
        for attr in sorted {
            let (lhs, rhs) = match attr {
                EquationAttr::Assoc => (c(c(x.clone(), y.clone()), z.clone()), c(x.clone(), c(y.clone(), z.clone()))),
                EquationAttr::Com => (c(x.clone(), y.clone()), c(y.clone(), x.clone())),
                EquationAttr::Neu(e) => (c(x.clone(), Term::constant(e)), x.clone()),
                EquationAttr::Inv { inverse, neutral } => (
                    c(x.clone(), Term::app(inverse, vec![x.clone()])),
                    Term::constant(neutral),
                ),
                EquationAttr::Idem => (c(x.clone(), x.clone()), x.clone()),
                EquationAttr::Nil(a) => (c(x.clone(), x.clone()), Term::constant(a)),
            };
            out.push(Equation { lhs, rhs });
        }
    }
    out.extend(spec.rules().iter().map(|r| Equation {
        lhs: r.lhs.clone(),
        rhs: r.rhs.clone(),
    }));
    out
}

/// The complete presentation modulo AC of a catalog theory, used to check
/// that normal forms are irreducible.
pub fn builtin_presentation(th: &Type2Theory) -> Vec<RewriteRule> {
    let (x, y, _) = xyz();
    let c = |a: Term, b: Term| Term::app(th.ctor, vec![a, b]);
    let neu_rule = |e: CtorId| RewriteRule::raw(c(x.clone(), Term::constant(e)), x.clone());
    let idem_rules = || {
        vec![
            RewriteRule::raw(c(x.clone(), x.clone()), x.clone()),
            RewriteRule::raw(c(x.clone(), c(x.clone(), y.clone())), c(x.clone(), y.clone())),
        ]
    };
    let nil_rules = |a: CtorId| {
        vec![
            RewriteRule::raw(c(x.clone(), x.clone()), Term::constant(a)),
            RewriteRule::raw(c(x.clone(), c(x.clone(), y.clone())), c(Term::constant(a), y.clone())),
        ]
    };
    match (th.variant, th.neutral, th.inverse, th.nil) {
        (Type2Variant::AC, ..) => vec![],
        (Type2Variant::ACNeu, Some(e), ..) => vec![neu_rule(e)],
        (Type2Variant::ACI, ..) => idem_rules(),
        (Type2Variant::ACNeuIdem, Some(e), ..) => {
            let mut r = vec![neu_rule(e)];
            r.extend(idem_rules());
            r
        }
        (Type2Variant::ACNil, _, _, Some(a)) => nil_rules(a),
        (Type2Variant::ACNeuNil, Some(e), _, Some(a)) => {
            let mut r = vec![neu_rule(e)];
            r.extend(nil_rules(a));
            r
        }
        (Type2Variant::AbelianGroup, Some(e), Some(i), _) => {
            let zero = Term::constant(e);
            let opp = |t: Term| Term::app(i, vec![t]);
            vec![
                RewriteRule::raw(c(zero.clone(), x.clone()), x.clone()),
                RewriteRule::raw(c(opp(x.clone()), x.clone()), zero.clone()),
                RewriteRule::raw(c(c(opp(x.clone()), x.clone()), y.clone()), y.clone()),
                RewriteRule::raw(opp(zero.clone()), zero),
                RewriteRule::raw(opp(opp(x.clone())), x.clone()),
                RewriteRule::raw(opp(c(x.clone(), y.clone())), c(opp(y), opp(x))),
            ]
        }
        _ => unreachable!("classified theories carry their parameters"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::tests::exp;

    fn ids(sig: &Signature) -> (CtorId, CtorId, CtorId, CtorId) {
        (
            sig.lookup("Zero").unwrap(),
            sig.lookup("One").unwrap(),
            sig.lookup("Opp").unwrap(),
            sig.lookup("Plus").unwrap(),
        )
    }

    fn group(sig: &Signature) -> TheorySpec {
        let (zero, _, opp, plus) = ids(sig);
        TheorySpec::new().with_attrs(
            plus,
            &[
                EquationAttr::Assoc,
                EquationAttr::Com,
                EquationAttr::Neu(zero),
                EquationAttr::Inv { inverse: opp, neutral: zero },
            ],
        )
    }

    #[test]
    fn abelian_group_is_type2() {
        let sig = exp();
        let (zero, one, opp, plus) = ids(&sig);
        let cl = classify(&group(&sig), &sig).unwrap();
        assert_eq!(cl.class(plus), CtorClass::Type2(0));
        assert_eq!(cl.class(opp), CtorClass::InverseOf(0));
        assert_eq!(cl.class(zero), CtorClass::Free);
        assert_eq!(cl.class(one), CtorClass::Free);
        assert_eq!(cl.theories()[0].variant, Type2Variant::AbelianGroup);
        assert_eq!(builtin_presentation(&cl.theories()[0]).len(), 6);
    }

    #[test]
    fn aci_and_rejections() {
        let sig = exp();
        let (zero, one, opp, plus) = ids(&sig);
        let aci = TheorySpec::new().with_attrs(plus, &[EquationAttr::Assoc, EquationAttr::Com, EquationAttr::Idem]);
        let cl = classify(&aci, &sig).unwrap();
        assert_eq!(cl.theories()[0].variant, Type2Variant::ACI);
        assert_eq!(builtin_presentation(&cl.theories()[0]).len(), 2);

        let com = TheorySpec::new().with_attrs(plus, &[EquationAttr::Com]);
        let err = classify(&com, &sig).unwrap_err();
        assert!(err.to_string().contains("commutativity requires associativity in type-2 catalog"));

        let inv = TheorySpec::new().with_attrs(
            plus,
            &[EquationAttr::Assoc, EquationAttr::Com, EquationAttr::Inv { inverse: opp, neutral: zero }],
        );
        assert_eq!(classify(&inv, &sig).unwrap_err(), TheoryError::InvWithoutNeu("Plus".into()));

        let idem_nil = TheorySpec::new().with_attrs(
            plus,
            &[EquationAttr::Assoc, EquationAttr::Com, EquationAttr::Idem, EquationAttr::Nil(zero)],
        );
        assert!(matches!(classify(&idem_nil, &sig), Err(TheoryError::Unsupported { .. })));

        let mismatch = TheorySpec::new().with_attrs(
            plus,
            &[EquationAttr::Assoc, EquationAttr::Com, EquationAttr::Neu(zero), EquationAttr::Nil(one)],
        );
        assert!(matches!(classify(&mismatch, &sig), Err(TheoryError::NilNeutralMismatch { .. })));

        let on_unary = TheorySpec::new().with_attrs(opp, &[EquationAttr::Idem]);
        assert_eq!(classify(&on_unary, &sig).unwrap_err(), TheoryError::NotBinary("Opp".into()));
    }

    #[test]
    fn shared_symbols_are_rejected() {
        let sig = Signature::build(
            "t",
            [
                ("E", vec![]),
                ("Or", vec![Sort::Data, Sort::Data]),
                ("And", vec![Sort::Data, Sort::Data]),
            ],
        )
        .unwrap();
        let e = sig.lookup("E").unwrap();
        let or = sig.lookup("Or").unwrap();
        let and = sig.lookup("And").unwrap();
        let spec = TheorySpec::new()
            .with_attrs(or, &[EquationAttr::Assoc, EquationAttr::Com, EquationAttr::Neu(e)])
            .with_attrs(and, &[EquationAttr::Assoc, EquationAttr::Com, EquationAttr::Neu(e)]);
        let err = classify(&spec, &sig).unwrap_err();
        assert_eq!(
            err,
            TheoryError::SharedSymbol { symbol: "E".into(), first: "Or".into(), second: "And".into() }
        );
    }

    #[test]
    fn single_attributes_without_commutativity_become_rules() {
        let sig = exp();
        let (zero, _, _, plus) = ids(&sig);
        let spec = TheorySpec::new().with_attrs(plus, &[EquationAttr::Neu(zero)]);
        let cl = classify(&spec, &sig).unwrap();
        assert_eq!(cl.class(plus), CtorClass::Type1);
        assert_eq!(cl.type1_rules().len(), 1);
        assert_eq!(
            sig.show(&cl.type1_rules()[0].lhs).to_string(),
            "Plus(x, Zero)"
        );
    }

    #[test]
    fn rules_on_type2_symbols_are_rejected() {
        let sig = exp();
        let (zero, one, opp, _) = ids(&sig);
        let mut spec = group(&sig);
        let x = Term::var("x", Sort::Data);
        spec.add_rule(RewriteRule::new(&sig, Term::app(opp, vec![x.clone()]), x).unwrap());
        assert_eq!(classify(&spec, &sig).unwrap_err(), TheoryError::RuleOnType2Symbol("Opp".into()));

        let mut spec = group(&sig);
        spec.add_rule(RewriteRule::new(&sig, Term::constant(one), Term::constant(zero)).unwrap());
        assert!(classify(&spec, &sig).is_ok());
    }

    #[test]
    fn rule_validation() {
        let sig = exp();
        let (zero, _, opp, _) = ids(&sig);
        let x = Term::var("x", Sort::Data);
        let y = Term::var("y", Sort::Data);
        assert_eq!(
            RewriteRule::new(&sig, x.clone(), Term::constant(zero)),
            Err(TheoryError::RuleLhsNotConstructor)
        );
        assert_eq!(
            RewriteRule::new(&sig, Term::app(opp, vec![x]), y),
            Err(TheoryError::UnboundRhsVar("y".into()))
        );
    }

    #[test]
    fn equations_follow_the_attribute_table() {
        let sig = exp();
        let (zero, _, _, plus) = ids(&sig);
        let show = |eqs: Vec<Equation>| {
            eqs.iter()
                .map(|e| format!("{}={}", sig.show(&e.lhs), sig.show(&e.rhs)))
                .collect::<Vec<_>>()
        };
        let neu = TheorySpec::new().with_attrs(plus, &[EquationAttr::Neu(zero)]);
        assert_eq!(show(equations_of(&neu)), ["Plus(x, Zero)=x"]);
        let acn = TheorySpec::new().with_attrs(plus, &[EquationAttr::Neu(zero), EquationAttr::Com, EquationAttr::Assoc]);
        assert_eq!(
            show(equations_of(&acn)),
            [
                "Plus(Plus(x, y), z)=Plus(x, Plus(y, z))",
                "Plus(x, y)=Plus(y, x)",
                "Plus(x, Zero)=x"
            ]
        );
        assert!(equations_of(&TheorySpec::new()).is_empty());
    }
}
