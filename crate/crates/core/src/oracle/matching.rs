//! Syntactic and AC matching of patterns against ground terms.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::acnf::{ac_normalize, rebuild, Orientation};
use crate::term::{CtorId, Term};
use crate::theory::Comb;

pub type Subst = BTreeMap<Arc<str>, Term>;

/// Syntactic matching; repeated variables must bind equal subterms.
pub fn match_syntactic(pattern: &Term, t: &Term, s: &mut Subst) -> bool {
    match (pattern, t) {
        (Term::Var(v), _) => match s.get(&v.name) {
            Some(bound) => bound == t,
            None => {
                s.insert(v.name.clone(), t.clone());
                true
            }
        },
        (Term::Prim(p), Term::Prim(q)) => p == q,
        (Term::App(c, ps), Term::App(d, ts)) => {
            c == d && ps.iter().zip(ts.iter()).all(|(p, a)| match_syntactic(p, a, s))
        }
        _ => false,
    }
}

/// Replaces variables by their bindings; unbound variables stay.
pub fn substitute(t: &Term, s: &Subst) -> Term {
    match t {
        Term::Var(v) => s.get(&v.name).cloned().unwrap_or_else(|| t.clone()),
        Term::Prim(_) => t.clone(),
        Term::App(c, args) => Term::app(*c, args.iter().map(|a| substitute(a, s)).collect()),
    }
}

fn flatten(c: CtorId, t: &Term, out: &mut Vec<Term>) {
    if t.is_headed_by(c) {
        for a in t.args() {
            flatten(c, a, out);
        }
    } else {
        out.push(t.clone());
    }
}

/// Matching modulo associativity and commutativity of the constructors in
/// `orient`, for ground subjects in AC-normal form.
pub struct AcMatcher<'a> {
    orient: &'a Orientation,
}

impl<'a> AcMatcher<'a> {
    pub fn new(orient: &'a Orientation) -> Self {
        AcMatcher { orient }
    }

    /// True when `pattern` matches `t`; with `extension`, an AC-headed
    /// pattern may also match a part of the leaves of `t`.
    pub fn matches(&self, pattern: &Term, t: &Term, extension: bool) -> bool {
        self.m(pattern, t, extension, &Subst::new(), &mut |_| true)
    }

    fn bind(&self, s: &Subst, name: &Arc<str>, value: Term) -> Option<Subst> {
        match s.get(name) {
            Some(b) if *b != value => None,
            Some(_) => Some(s.clone()),
            None => {
                let mut s = s.clone();
                s.insert(name.clone(), value);
                Some(s)
            }
        }
    }

    fn m(&self, p: &Term, t: &Term, ext: bool, s: &Subst, k: &mut dyn FnMut(&Subst) -> bool) -> bool {
        match p {
            Term::Var(v) => match self.bind(s, &v.name, t.clone()) {
                Some(s) => k(&s),
                None => false,
            },
            Term::Prim(q) => matches!(t, Term::Prim(r) if r == q) && k(s),
            Term::App(c, pargs) => {
                if let Some(kind) = self.orient.get(*c) {
                    if t.is_headed_by(*c) {
                        return self.m_ac(*c, kind, p, t, ext, s, k);
                    }
                    return false;
                }
                if !t.is_headed_by(*c) {
                    return false;
                }
                self.m_args(pargs, t.args(), s, k)
            }
        }
    }

    fn m_args(&self, ps: &[Term], ts: &[Term], s: &Subst, k: &mut dyn FnMut(&Subst) -> bool) -> bool {
        match ps.split_first() {
            None => k(s),
            Some((p, rest)) => self.m(p, &ts[0], false, s, &mut |s2| self.m_args(rest, &ts[1..], s2, k)),
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn m_ac(
        &self,
        c: CtorId,
        kind: Comb,
        p: &Term,
        t: &Term,
        ext: bool,
        s: &Subst,
        k: &mut dyn FnMut(&Subst) -> bool,
    ) -> bool {
        let mut pl = Vec::new();
        flatten(c, p, &mut pl);
        let mut tl = Vec::new();
        flatten(c, t, &mut tl);
        if tl.len() < pl.len() {
            return false;
        }
        // assign every subject leaf to a pattern leaf (or to nothing under
        // extension); non-variable pattern leaves take exactly one leaf
        let mut groups: Vec<Vec<Term>> = vec![Vec::new(); pl.len()];
        self.assign(c, kind, &pl, &tl, 0, ext, &mut groups, s, k)
    }

    #[allow(clippy::too_many_arguments)]
    fn assign(
        &self,
        c: CtorId,
        kind: Comb,
        pl: &[Term],
        tl: &[Term],
        i: usize,
        ext: bool,
        groups: &mut Vec<Vec<Term>>,
        s: &Subst,
        k: &mut dyn FnMut(&Subst) -> bool,
    ) -> bool {
        if i == tl.len() {
            if groups.iter().any(|g| g.is_empty()) {
                return false;
            }
            return self.m_groups(c, kind, pl, groups, 0, s, k);
        }
        for j in 0..pl.len() {
            if !matches!(pl[j], Term::Var(_)) && !groups[j].is_empty() {
                continue;
            }
            groups[j].push(tl[i].clone());
            let found = self.assign(c, kind, pl, tl, i + 1, ext, groups, s, k);
            groups[j].pop();
            if found {
                return true;
            }
        }
        ext && self.assign(c, kind, pl, tl, i + 1, ext, groups, s, k)
    }

    #[allow(clippy::too_many_arguments)]
    fn m_groups(
        &self,
        c: CtorId,
        kind: Comb,
        pl: &[Term],
        groups: &[Vec<Term>],
        j: usize,
        s: &Subst,
        k: &mut dyn FnMut(&Subst) -> bool,
    ) -> bool {
        if j == pl.len() {
            return k(s);
        }
        let value = if groups[j].len() == 1 {
            groups[j][0].clone()
        } else {
            ac_normalize(&rebuild(c, kind, groups[j].clone()), self.orient)
        };
        self.m(&pl[j], &value, false, s, &mut |s2| self.m_groups(c, kind, pl, groups, j + 1, s2, k))
    }
}
