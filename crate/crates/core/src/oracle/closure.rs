//! Bounded equational closure: breadth-first search over `=_E` steps.
//!
//! Only a positive answer is definitive. Search from both ends stops when
//! the step budget runs out; terms larger than the size cap are dropped.
//! A step whose result has variables not fixed by the match (such as
//! `E -> C(x, I(x))`) instantiates them with subterms of the input terms
//! only, so some equalities need a larger search than their proof length.

use std::collections::{HashSet, VecDeque};

use super::matching::{match_syntactic, substitute, Subst};
use crate::term::{Position, Sort, Term, Var};
use crate::theory::Equation;

/// Search limits. A step expands one term.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClosureBudget {
    pub max_steps: usize,
    /// Largest term kept; `None` means the larger input size plus 4.
    pub max_size: Option<usize>,
}

impl Default for ClosureBudget {
    fn default() -> Self {
        ClosureBudget {
            max_steps: 10_000,
            max_size: None,
        }
    }
}

impl ClosureBudget {
    pub fn steps(max_steps: usize) -> Self {
        ClosureBudget {
            max_steps,
            max_size: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosureResult {
    Yes { steps: usize },
    Unknown { steps: usize },
}

impl ClosureResult {
    pub fn is_yes(self) -> bool {
        matches!(self, ClosureResult::Yes { .. })
    }
}

/// The oriented steps usable in both search directions: every equation read
/// left to right and right to left. Variables that occur only on the
/// produced side are instantiated with subterms of the seed terms.
#[derive(Clone, Debug)]
pub struct StepRules {
    rules: Vec<(Term, Term, Vec<Var>)>,
}

impl StepRules {
    pub fn new(eqs: &[Equation]) -> Self {
        let mut rules = Vec::new();
        for eq in eqs {
            for (l, r) in [(&eq.lhs, &eq.rhs), (&eq.rhs, &eq.lhs)] {
                let lv: HashSet<_> = l.vars().into_iter().map(|v| v.name.clone()).collect();
                let mut extra: Vec<Var> = Vec::new();
                for v in r.vars() {
                    if !lv.contains(&v.name) && !extra.iter().any(|e| e.name == v.name) {
                        extra.push(v.clone());
                    }
                }
                rules.push((l.clone(), r.clone(), extra));
            }
        }
        StepRules { rules }
    }

    /// All terms one step away from `t`, up to `max_size`; variables bound
    /// only by the produced side range over the subterms of `seeds`.
    pub fn neighbours(&self, t: &Term, max_size: usize, seeds: &[Term]) -> Vec<Term> {
        let mut out = Vec::new();
        for pos in t.positions() {
            let sub = t.subterm_at(&pos).expect("own position");
            for (l, r, extra) in &self.rules {
                let mut s = Subst::new();
                if !match_syntactic(l, sub, &mut s) {
                    continue;
                }
                for s in instantiations(s, extra, seeds) {
                    let new_sub = substitute(r, &s);
                    if t.size() - sub.size() + new_sub.size() > max_size {
                        continue;
                    }
                    out.push(replace(t, &pos, new_sub));
                }
            }
        }
        out
    }
}

fn instantiations(s: Subst, extra: &[Var], seeds: &[Term]) -> Vec<Subst> {
    let mut out = vec![s];
    for v in extra {
        let mut next = Vec::new();
        for s in &out {
            for seed in seeds {
                if sort_matches(seed, v.sort) {
                    let mut s2 = s.clone();
                    s2.insert(v.name.clone(), seed.clone());
                    next.push(s2);
                }
            }
        }
        out = next;
    }
    out
}

fn sort_matches(t: &Term, sort: Sort) -> bool {
    match t {
        Term::Prim(p) => sort == Sort::Prim(p.ty()),
        Term::App(..) => sort == Sort::Data,
        Term::Var(v) => v.sort == sort,
    }
}

/// Distinct subterms of the given terms, smallest first.
fn seeds_of(terms: &[&Term]) -> Vec<Term> {
    let mut set: Vec<Term> = terms
        .iter()
        .flat_map(|t| t.subterms())
        .cloned()
        .collect::<HashSet<_>>()
        .into_iter()
        .collect();
    set.sort_by(|a, b| a.size().cmp(&b.size()).then_with(|| a.cmp(b)));
    set
}

fn replace(t: &Term, pos: &Position, with: Term) -> Term {
    t.replace_at_unchecked(&pos.0, with).expect("own position")
}

/// Tries to prove `t =_E u` within the budget.
pub fn closure_equal(eqs: &[Equation], t: &Term, u: &Term, budget: ClosureBudget) -> ClosureResult {
    let rules = StepRules::new(eqs);
    closure_equal_with(&rules, t, u, budget)
}

pub fn closure_equal_with(rules: &StepRules, t: &Term, u: &Term, budget: ClosureBudget) -> ClosureResult {
    if t == u {
        return ClosureResult::Yes { steps: 0 };
    }
    let cap = budget.max_size.unwrap_or(t.size().max(u.size()) + 4);
    let seeds = seeds_of(&[t, u]);
    // side 0 searches from t, side 1 from u
    let mut seen: [HashSet<Term>; 2] = [HashSet::new(), HashSet::new()];
    let mut queue: [VecDeque<Term>; 2] = [VecDeque::new(), VecDeque::new()];
    seen[0].insert(t.clone());
    seen[1].insert(u.clone());
    queue[0].push_back(t.clone());
    queue[1].push_back(u.clone());
    let mut steps = 0;
    while steps < budget.max_steps {
        let side = match (queue[0].is_empty(), queue[1].is_empty()) {
            (true, true) => break,
            (false, true) => 0,
            (true, false) => 1,
            (false, false) => usize::from(queue[1].len() < queue[0].len()),
        };
        let cur = queue[side].pop_front().expect("non-empty");
        steps += 1;
        for v in rules.neighbours(&cur, cap, &seeds) {
            if seen[1 - side].contains(&v) {
                return ClosureResult::Yes { steps };
            }
            if seen[side].insert(v.clone()) {
                queue[side].push_back(v);
            }
        }
    }
    ClosureResult::Unknown { steps }
}

/// Terms reachable from `t` within the size cap, in discovery order, and
/// whether the search finished before the step budget ran out.
pub fn orbit(rules: &StepRules, t: &Term, max_size: usize, max_steps: usize) -> (Vec<Term>, bool) {
    let seeds = seeds_of(&[t]);
    let mut seen = HashSet::new();
    let mut order = vec![t.clone()];
    let mut queue = VecDeque::from([t.clone()]);
    seen.insert(t.clone());
    let mut steps = 0;
    while let Some(cur) = queue.pop_front() {
        if steps == max_steps {
            return (order, false);
        }
        steps += 1;
        for v in rules.neighbours(&cur, max_size, &seeds) {
            if seen.insert(v.clone()) {
                order.push(v.clone());
                queue.push_back(v);
            }
        }
    }
    (order, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_definition;
    use crate::theory::equations_of;

    #[test]
    fn closure_examples() {
        let def = parse_definition(
            "type exp = Zero | One | Opp(exp) | Plus(exp, exp)
with Plus: associative, commutative, neutral(Zero)",
        )
        .unwrap();
        let eqs = equations_of(&def.spec);
        let t = |s: &str| def.parse_term(s).unwrap();
        assert_eq!(
            closure_equal(&eqs, &t("One"), &t("One"), ClosureBudget::default()),
            ClosureResult::Yes { steps: 0 }
        );
        assert!(closure_equal(&eqs, &t("Plus(Zero, One)"), &t("One"), ClosureBudget::default()).is_yes());
        assert!(closure_equal(
            &eqs,
            &t("Plus(Plus(One, Opp(Zero)), Zero)"),
            &t("Plus(Opp(Zero), One)"),
            ClosureBudget::default()
        )
        .is_yes());
        let r = closure_equal(&eqs, &t("Plus(One, Opp(One))"), &t("Plus(Opp(One), Opp(One))"), ClosureBudget::steps(500));
        assert!(!r.is_yes());
    }

    #[test]
    fn orbit_is_closed_under_steps() {
        let def = parse_definition("type t = A | B | C(t, t)\nwith C: associative, commutative").unwrap();
        let rules = StepRules::new(&equations_of(&def.spec));
        let t = def.parse_term("C(A, C(B, A))").unwrap();
        let (terms, done) = orbit(&rules, &t, 5, 1000);
        assert!(done);
        // 3 leaves: 3 distinct orderings times 2 bracketings
        assert_eq!(terms.len(), 6);
    }
}
