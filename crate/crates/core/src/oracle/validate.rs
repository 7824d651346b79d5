//! Exhaustive validation of a compiled family up to a term size.
//!
//! For every ground term `t` up to the size bound, with `n = normalize(t)`:
//!
//! * correctness: `n =_E t`;
//! * completeness: `E`-equal terms get the same normal form;
//! * normality: `n` is in AC-normal form and contains no redex of the
//!   complete presentation (catalog rules modulo AC and compiled rules).
//!
//! Families without rule-defined constructors are checked against the
//! algebraic oracle. Otherwise bounded closure is used: a correctness pair it
//! cannot connect is reported as unknown, and completeness is refuted by
//! exploring the equational neighbourhood of each term.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use super::algebraic::{AlgebraicOracle, Key};
use super::closure::{closure_equal_with, orbit, ClosureBudget, StepRules};
use super::matching::AcMatcher;
use crate::acnf::{is_ac_normal, Orientation};
use crate::builder::{normalize, CompiledFamily};
use crate::enumerate::enumerate_ground;
use crate::error::Result;
use crate::term::{Signature, Term};
use crate::theory::{builtin_presentation, equations_of, RewriteRule, TheorySpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleMode {
    Algebraic,
    Closure,
}

impl OracleMode {
    pub fn name(self) -> &'static str {
        match self {
            OracleMode::Algebraic => "algebraic",
            OracleMode::Closure => "closure",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FindingKind {
    Correctness,
    Completeness,
    Normality,
    Unknown,
}

impl FindingKind {
    pub fn name(self) -> &'static str {
        match self {
            FindingKind::Correctness => "correctness",
            FindingKind::Completeness => "completeness",
            FindingKind::Normality => "normality",
            FindingKind::Unknown => "unknown",
        }
    }
}

/// A failing pair: for correctness, normality and unknown the input term and
/// its normal form; for completeness two equal inputs with distinct normal forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub kind: FindingKind,
    pub lhs: Term,
    pub rhs: Term,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ValidateOptions {
    pub max_size: usize,
    pub budget: ClosureBudget,
}

impl Default for ValidateOptions {
    fn default() -> Self {
        ValidateOptions {
            max_size: 6,
            budget: ClosureBudget::default(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ValidationReport {
    pub max_size: usize,
    pub mode: OracleMode,
    pub terms_checked: usize,
    pub correctness: Vec<Counterexample>,
    pub completeness: Vec<Counterexample>,
    pub normality: Vec<Counterexample>,
    pub unknown: Vec<Counterexample>,
}

impl ValidationReport {
    fn new(max_size: usize, mode: OracleMode) -> Self {
        ValidationReport {
            max_size,
            mode,
            terms_checked: 0,
            correctness: Vec::new(),
            completeness: Vec::new(),
            normality: Vec::new(),
            unknown: Vec::new(),
        }
    }

    fn push(&mut self, kind: FindingKind, lhs: Term, rhs: Term) {
        let list = match kind {
            FindingKind::Correctness => &mut self.correctness,
            FindingKind::Completeness => &mut self.completeness,
            FindingKind::Normality => &mut self.normality,
            FindingKind::Unknown => &mut self.unknown,
        };
        list.push(Counterexample { kind, lhs, rhs });
    }

    pub fn has_counterexamples(&self) -> bool {
        !(self.correctness.is_empty() && self.completeness.is_empty() && self.normality.is_empty())
    }

    /// No counterexample and nothing left undecided.
    pub fn is_valid(&self) -> bool {
        !self.has_counterexamples() && self.unknown.is_empty()
    }

    pub fn findings(&self) -> impl Iterator<Item = &Counterexample> {
        self.correctness
            .iter()
            .chain(&self.completeness)
            .chain(&self.normality)
            .chain(&self.unknown)
    }

    pub fn summary(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "checked {} terms up to size {} ({} oracle)",
            self.terms_checked,
            self.max_size,
            self.mode.name()
        );
        for (name, n) in [
            ("correctness", self.correctness.len()),
            ("completeness", self.completeness.len()),
            ("normality", self.normality.len()),
            ("unknown", self.unknown.len()),
        ] {
            let _ = writeln!(s, "{name}: {n}");
        }
        let verdict = if self.has_counterexamples() {
            "invalid".to_string()
        } else if !self.unknown.is_empty() {
            "inconclusive".to_string()
        } else {
            format!("valid at scale {}", self.max_size)
        };
        let _ = writeln!(s, "{verdict}");
        s
    }

    /// One line per finding: kind, left term and right term separated by tabs.
    pub fn machine_lines(&self, sig: &Signature) -> Vec<String> {
        self.findings()
            .map(|c| format!("{}\t{}\t{}", c.kind.name(), sig.show(&c.lhs), sig.show(&c.rhs)))
            .collect()
    }
}

/// Reason why `nf` is not an irreducible AC-normal form, if it is not.
pub fn normality_violation(
    sig: &Signature,
    orient: &Orientation,
    rules: &[RewriteRule],
    nf: &Term,
) -> Option<String> {
    if !is_ac_normal(nf, orient) {
        return Some("not in AC-normal form".to_string());
    }
    let matcher = AcMatcher::new(orient);
    for sub in nf.subterms() {
        for r in rules {
            if matcher.matches(&r.lhs, sub, true) {
                return Some(format!(
                    "`{}` is reducible by {} -> {}",
                    sig.show(sub),
                    sig.show(&r.lhs),
                    sig.show(&r.rhs)
                ));
            }
        }
    }
    None
}

fn presentation(fam: &CompiledFamily) -> Vec<RewriteRule> {
    let cl = fam.classification();
    let mut rules: Vec<RewriteRule> = cl.theories().iter().flat_map(builtin_presentation).collect();
    rules.extend(cl.type1_rules().iter().cloned());
    rules
}

/// Checks `fam` on every ground term up to `opts.max_size`.
pub fn validate_family(fam: &CompiledFamily, spec: &TheorySpec, opts: ValidateOptions) -> Result<ValidationReport> {
    let sig = fam.signature();
    let terms = enumerate_ground(sig, sig.sort_name(), opts.max_size)?;
    let orient = fam.orientation();
    let rules = presentation(fam);
    let oracle = if fam.classification().has_type1() {
        None
    } else {
        Some(AlgebraicOracle::new(sig, fam.classification())?)
    };
    let mode = if oracle.is_some() {
        OracleMode::Algebraic
    } else {
        OracleMode::Closure
    };
    let mut report = ValidationReport::new(opts.max_size, mode);
    report.terms_checked = terms.len();

    let mut nfs: HashMap<Term, Term> = HashMap::with_capacity(terms.len());
    for t in &terms {
        let nf = normalize(t, fam)?;
        if normality_violation(sig, &orient, &rules, &nf).is_some() {
            report.push(FindingKind::Normality, t.clone(), nf.clone());
        }
        nfs.insert(t.clone(), nf);
    }

    // distinct normal-form pairs already reported as incomplete
    let mut reported: HashSet<(Term, Term)> = HashSet::new();
    let mut incomplete = |report: &mut ValidationReport, a: &Term, b: &Term| {
        let (na, nb) = (&nfs[a], &nfs[b]);
        let pair = if na <= nb { (na.clone(), nb.clone()) } else { (nb.clone(), na.clone()) };
        if reported.insert(pair) {
            report.push(FindingKind::Completeness, a.clone(), b.clone());
        }
    };

    match &oracle {
        Some(oracle) => {
            let mut classes: HashMap<Key, &Term> = HashMap::new();
            for t in &terms {
                let nf = &nfs[t];
                let k = oracle.key(t);
                if oracle.key(nf) != k {
                    report.push(FindingKind::Correctness, t.clone(), nf.clone());
                }
                match classes.get(&k) {
                    Some(first) if nfs[*first] != *nf => incomplete(&mut report, first, t),
                    Some(_) => {}
                    None => {
                        classes.insert(k, t);
                    }
                }
            }
        }
        None => {
            let steps = StepRules::new(&equations_of(spec));
            let mut explored: HashSet<Term> = HashSet::new();
            for t in &terms {
                let nf = &nfs[t];
                if !closure_equal_with(&steps, t, nf, opts.budget).is_yes() {
                    report.push(FindingKind::Unknown, t.clone(), nf.clone());
                }
                if explored.contains(t) {
                    continue;
                }
                let (reached, complete) = orbit(&steps, t, opts.max_size, opts.budget.max_steps);
                for u in &reached {
                    if nfs[u] != *nf {
                        incomplete(&mut report, t, u);
                    }
                }
                if complete {
                    explored.extend(reached);
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builder::Mutation;
    use crate::syntax::parse_definition;

    fn run(src: &str, size: usize, mutation: Mutation) -> ValidationReport {
        let def = parse_definition(src).unwrap();
        let fam = def.family().unwrap().with_mutation(mutation);
        let opts = ValidateOptions {
            max_size: size,
            ..Default::default()
        };
        validate_family(&fam, &def.spec, opts).unwrap()
    }

    const TWO: &str = "type g = Zero | A | B | Opp(g) | Plus(g, g)
with Plus: associative, commutative, neutral(Zero), inverse(Opp)";

    #[test]
    fn abelian_family_is_valid() {
        let r = run(TWO, 5, Mutation::None);
        assert_eq!(r.mode, OracleMode::Algebraic);
        assert!(r.is_valid(), "{}", r.summary());
    }

    #[test]
    fn unsorted_insert_is_incomplete() {
        let r = run(TWO, 3, Mutation::UnsortedInsert);
        assert!(r.correctness.is_empty());
        assert!(!r.completeness.is_empty());
        assert!(!r.normality.is_empty());
    }

    #[test]
    fn missing_cancellation_is_caught() {
        let r = run(TWO, 4, Mutation::NoInverseDelete);
        assert!(!r.completeness.is_empty() || !r.normality.is_empty());
    }

    #[test]
    fn free_constructors_are_trivially_valid() {
        let r = run("type l = Nil | Cons(int, l)", 5, Mutation::None);
        assert!(r.is_valid());
        assert!(r.terms_checked > 0);
    }

    #[test]
    fn rule_defined_family_uses_closure() {
        let src = "type t = E | A | C(t, t)\nrule C(x, E) -> x\nrule C(E, x) -> x";
        let r = run(src, 5, Mutation::None);
        assert_eq!(r.mode, OracleMode::Closure);
        assert!(r.is_valid(), "{}", r.summary());
    }

    #[test]
    fn incomplete_rules_are_refuted() {
        // read as equations, the rules make E and A equal
        let src = "type t = E | A | B | C(t, t)\nrule C(x, E) -> x\nrule C(E, x) -> A";
        let r = run(src, 3, Mutation::None);
        assert!(!r.completeness.is_empty());
    }

    #[test]
    fn tiny_budget_leaves_pairs_unknown() {
        let src = "type t = E | A | C(t, t)\nrule C(x, E) -> x\nrule C(E, x) -> x";
        let def = parse_definition(src).unwrap();
        let fam = def.family().unwrap();
        let opts = ValidateOptions {
            max_size: 5,
            budget: ClosureBudget::steps(1),
        };
        let r = validate_family(&fam, &def.spec, opts).unwrap();
        assert!(!r.has_counterexamples());
        assert!(!r.unknown.is_empty());
    }
}
