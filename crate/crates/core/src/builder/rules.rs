//! Compilation of rewrite rules into guarded clauses.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::term::{CtorId, Term, Var};
use crate::theory::{RewriteRule, TheoryError};

/// Conjunction of variable equalities; empty means `true`.
pub type Guard = Vec<(Arc<str>, Arc<str>)>;

/// `f_C` clause: one linear pattern per argument, an equality guard, and a
/// right-hand side whose constructors are calls to construction functions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompiledClause {
    pub patterns: Vec<Term>,
    pub guard: Guard,
    pub rhs: Term,
}

/// Replaces every variable occurrence by a fresh variable `v1, v2, ...` in
/// pre-order and returns the equalities between occurrences of the same
/// original variable, each related to its first occurrence.
pub fn linearize(pattern: &Term) -> (Term, Guard) {
    let mut state = Linearizer::default();
    let lin = state.walk(pattern);
    (lin, state.guard)
}

#[derive(Default)]
struct Linearizer {
    counter: usize,
    first: Vec<(Arc<str>, Arc<str>)>,
    guard: Guard,
}

impl Linearizer {
    fn walk(&mut self, t: &Term) -> Term {
        match t {
            Term::Var(v) => {
                self.counter += 1;
                let fresh: Arc<str> = format!("v{}", self.counter).into();
                match self.first.iter().find(|(orig, _)| *orig == v.name) {
                    Some((_, f)) => self.guard.push((f.clone(), fresh.clone())),
                    None => self.first.push((v.name.clone(), fresh.clone())),
                }
                Term::Var(Var {
                    name: fresh,
                    sort: v.sort,
                })
            }
            Term::Prim(_) => t.clone(),
            Term::App(c, args) => Term::app(*c, args.iter().map(|a| self.walk(a)).collect()),
        }
    }

    fn rename(&self, t: &Term) -> Term {
        match t {
            Term::Var(v) => {
                let fresh = self
                    .first
                    .iter()
                    .find(|(orig, _)| *orig == v.name)
                    .map(|(_, f)| f.clone())
                    .unwrap_or_else(|| v.name.clone());
                Term::Var(Var {
                    name: fresh,
                    sort: v.sort,
                })
            }
            Term::Prim(_) => t.clone(),
            Term::App(c, args) => Term::app(*c, args.iter().map(|a| self.rename(a)).collect()),
        }
    }
}

/// Compiles one rule `C(l1..ln) -> r` into a clause of `f_C`.
pub fn compile_rule(rule: &RewriteRule) -> Result<(CtorId, CompiledClause), TheoryError> {
    let head = rule.lhs.head().ok_or(TheoryError::RuleLhsNotConstructor)?;
    let mut state = Linearizer::default();
    let lin = state.walk(&rule.lhs);
    let rhs = state.rename(&rule.rhs);
    Ok((
        head,
        CompiledClause {
            patterns: lin.args().to_vec(),
            guard: state.guard,
            rhs,
        },
    ))
}

/// Groups compiled clauses by head constructor, preserving source order.
/// The default clause is implicit and always tried last.
pub fn compile_rules(
    rules: &[RewriteRule],
) -> Result<BTreeMap<CtorId, Vec<CompiledClause>>, TheoryError> {
    let mut out: BTreeMap<CtorId, Vec<CompiledClause>> = BTreeMap::new();
    for r in rules {
        let (head, clause) = compile_rule(r)?;
        out.entry(head).or_default().push(clause);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::{Signature, Sort};

    fn sig() -> Signature {
        Signature::build("t", [("E", vec![]), ("C", vec![Sort::Data, Sort::Data])]).unwrap()
    }

    fn guard_str(g: &Guard) -> Vec<String> {
        g.iter().map(|(a, b)| format!("{a}={b}")).collect()
    }

    #[test]
    fn linearization() {
        let sig = sig();
        let c = sig.lookup("C").unwrap();
        let x = Term::var("x", Sort::Data);
        let y = Term::var("y", Sort::Data);
        let (lin, g) = linearize(&Term::app(c, vec![x.clone(), x.clone()]));
        assert_eq!(sig.show(&lin).to_string(), "C(v1, v2)");
        assert_eq!(guard_str(&g), ["v1=v2"]);
        let (lin, g) = linearize(&Term::app(c, vec![x.clone(), y.clone()]));
        assert_eq!(sig.show(&lin).to_string(), "C(v1, v2)");
        assert!(g.is_empty());
        let (lin, g) = linearize(&Term::app(c, vec![x.clone(), Term::app(c, vec![x, y])]));
        assert_eq!(sig.show(&lin).to_string(), "C(v1, C(v2, v3))");
        assert_eq!(guard_str(&g), ["v1=v2"]);
    }

    #[test]
    fn rules_become_clauses() {
        let sig = sig();
        let c = sig.lookup("C").unwrap();
        let e = Term::constant(sig.lookup("E").unwrap());
        let x = Term::var("x", Sort::Data);
        let neu = RewriteRule::new(&sig, Term::app(c, vec![x.clone(), e.clone()]), x.clone()).unwrap();
        let idem = RewriteRule::new(&sig, Term::app(c, vec![x.clone(), x.clone()]), x.clone()).unwrap();
        let compiled = compile_rules(&[neu]).unwrap();
        let cl = &compiled[&c][0];
        assert_eq!(
            cl.patterns.iter().map(|p| sig.show(p).to_string()).collect::<Vec<_>>(),
            ["v1", "E"]
        );
        assert_eq!(sig.show(&cl.rhs).to_string(), "v1");
        assert!(compile_rules(&[]).unwrap().is_empty());
        let compiled = compile_rules(&[idem]).unwrap();
        let cl = &compiled[&c][0];
        assert_eq!(guard_str(&cl.guard), ["v1=v2"]);
        assert_eq!(sig.show(&cl.rhs).to_string(), "v1");
        let bad = RewriteRule { lhs: x.clone(), rhs: x };
        assert_eq!(compile_rules(&[bad]), Err(TheoryError::RuleLhsNotConstructor));
    }
}
