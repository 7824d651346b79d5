//! Listings of compiled families.
//!
//! [`report`] prints one line per clause, `f_C: (patterns) [when guard] -> rhs`,
//! in the order the clauses are tried. Catalog constructors also list their
//! auxiliary functions (`insert_C`, `delete_C`, `insert_inv_C`, `rejoin_C`).
//! [`rust_code`] prints a standalone Rust module with the same functions over
//! a generated enum.

use std::fmt::Write as _;

use crate::builder::{CompiledClause, CompiledFamily, FamilyEntry};
use crate::term::{CtorId, Prim, PrimType, Signature, Sort, Term};
use crate::theory::{Comb, Type2Theory};

fn show_rhs(sig: &Signature, t: &Term) -> String {
    match t {
        Term::Var(v) => v.name.to_string(),
        Term::Prim(p) => p.to_string(),
        Term::App(c, args) if args.is_empty() => sig.ctor_name(*c).to_string(),
        Term::App(c, args) => {
            let inner: Vec<String> = args.iter().map(|a| show_rhs(sig, a)).collect();
            format!("f_{}({})", sig.ctor_name(*c), inner.join(", "))
        }
    }
}

fn clause_line(sig: &Signature, c: CtorId, cl: &CompiledClause) -> String {
    let pats: Vec<String> = cl.patterns.iter().map(|p| sig.show(p).to_string()).collect();
    let guard = if cl.guard.is_empty() {
        String::new()
    } else {
        let eqs: Vec<String> = cl.guard.iter().map(|(a, b)| format!("{a} = {b}")).collect();
        format!(" when {}", eqs.join(" & "))
    };
    format!(
        "f_{}: ({}){} -> {}",
        sig.ctor_name(c),
        pats.join(", "),
        guard,
        show_rhs(sig, &cl.rhs)
    )
}

fn default_line(sig: &Signature, c: CtorId) -> String {
    let n = sig.arity(c);
    let name = sig.ctor_name(c);
    if n == 0 {
        return format!("f_{name}: () -> {name}");
    }
    let xs: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    format!("f_{name}: ({}) -> {name}({})", xs.join(", "), xs.join(", "))
}

/// Names and comb shapes used when printing one catalog theory.
struct Shape<'a> {
    sig: &'a Signature,
    th: &'a Type2Theory,
}

impl Shape<'_> {
    fn c(&self) -> &str {
        self.sig.ctor_name(self.th.ctor)
    }

    fn name(&self, c: Option<CtorId>) -> &str {
        self.sig.ctor_name(c.expect("theory parameter"))
    }

    /// A comb with outer leaf `leaf` and remainder `rest`.
    fn comb(&self, leaf: &str, rest: &str) -> String {
        match self.th.orient {
            Comb::Right => format!("{}({leaf}, {rest})", self.c()),
            Comb::Left => format!("{}({rest}, {leaf})", self.c()),
        }
    }

    /// Argument pair with `outer` on the outer side.
    fn pair(&self, outer: &str, rest: &str) -> String {
        match self.th.orient {
            Comb::Right => format!("({outer}, {rest})"),
            Comb::Left => format!("({rest}, {outer})"),
        }
    }

    /// Comparison `a < b` in the outer-leaf order.
    fn less(&self, a: &str, b: &str) -> String {
        match self.th.orient {
            Comb::Right => format!("{a} < {b}"),
            Comb::Left => format!("{a} > {b}"),
        }
    }

    fn less_eq(&self, a: &str, b: &str) -> String {
        match self.th.orient {
            Comb::Right => format!("{a} <= {b}"),
            Comb::Left => format!("{a} >= {b}"),
        }
    }

    fn lines(&self) -> Vec<String> {
        let c = self.c().to_string();
        let th = self.th;
        let mut out = Vec::new();
        let mut f = |name: &str, s: String| out.push(format!("{name}_{c}: {s}"));

        if let Some(e) = th.neutral {
            let e = self.sig.ctor_name(e);
            f("f", format!("({e}, y) -> y"));
            f("f", format!("(x, {e}) -> x"));
        }
        let fo = |a: &str, b: &str| match th.orient {
            Comb::Right => format!("f_{c}({a}, {b})"),
            Comb::Left => format!("f_{c}({b}, {a})"),
        };
        f(
            "f",
            format!(
                "{} -> {}",
                self.pair(&self.comb("x", "y"), "z"),
                fo("x", &fo("y", "z"))
            ),
        );
        let ins_args = self.pair("x", "y");
        if let Some(i) = th.inverse {
            let i = self.sig.ctor_name(i);
            f("f", format!("{ins_args} -> insert_inv_{c}(f_{i}(x), y)"));
        } else {
            f("f", format!("{ins_args} -> insert_{c}(x, y)"));
        }

        if let Some(i) = th.inverse {
            let iname = self.sig.ctor_name(i).to_string();
            let e = self.name(th.neutral);
            let mut g = |s: String| out.push(format!("f_{iname}: {s}"));
            g(format!("({e}) -> {e}"));
            g(format!("({iname}(x)) -> x"));
            g(format!("({c}(x, y)) -> f_{c}(f_{iname}(y), f_{iname}(x))"));
            g(format!("(x) -> {iname}(x)"));

            let mut f = |name: &str, s: String| out.push(format!("{name}_{c}: {s}"));
            f(
                "insert_inv",
                format!("(x, y) -> delete_{c}(x, y) else insert_{c}(f_{iname}(x), y)"),
            );
            let u = self.comb("y", "t");
            f("delete", format!("(x, {u}) when {} -> not_found", self.less("x", "y")));
            f("delete", format!("(x, {u}) when x = y -> t"));
            f("delete", format!("(x, {u}) -> rejoin_{c}(y, delete_{c}(x, t))"));
            f("delete", format!("(x, y) when x = y -> {e}"));
            f("delete", "(x, y) -> not_found".to_string());
        }

        let mut f = |name: &str, s: String| out.push(format!("{name}_{c}: {s}"));
        let u = self.comb("y", "t");
        if th.idem() {
            f("insert", format!("(x, {u}) when x = y -> {u}"));
        }
        if let Some(a) = th.nil {
            let a = self.sig.ctor_name(a);
            f("insert", format!("(x, {u}) when x = y -> {}", fo(a, "t")));
        }
        f(
            "insert",
            format!("(x, {u}) when {} -> {}", self.less_eq("x", "y"), self.comb("x", &u)),
        );
        f("insert", format!("(x, {u}) -> rejoin_{c}(y, insert_{c}(x, t))"));
        f(
            "insert",
            format!("(x, u) when {} -> {}", self.less("u", "x"), self.comb("u", "x")),
        );
        if th.idem() {
            f("insert", "(x, u) when x = u -> u".to_string());
        }
        if let Some(a) = th.nil {
            f("insert", format!("(x, u) when x = u -> {}", self.sig.ctor_name(a)));
        }
        f("insert", format!("(x, u) -> {}", self.comb("x", "u")));

        if let Some(e) = th.neutral {
            f("rejoin", format!("(y, {}) -> y", self.sig.ctor_name(e)));
        }
        let r = self.comb("z", "t");
        f("rejoin", format!("(y, {r}) when {} -> {}", self.less("y", "z"), self.comb("y", &r)));
        f("rejoin", format!("(y, z) when {} -> {}", self.less("y", "z"), self.comb("y", "z")));
        f("rejoin", format!("(y, r) -> insert_{c}(y, r)"));
        out
    }
}

/// One line per clause of every construction function, in trial order.
pub fn report(fam: &CompiledFamily) -> String {
    let sig = fam.signature();
    let mut out = String::new();
    for c in sig.ctor_ids() {
        match fam.entry(c) {
            FamilyEntry::Free => {
                let _ = writeln!(out, "{}", default_line(sig, c));
            }
            FamilyEntry::Type1(clauses) => {
                for cl in clauses {
                    let _ = writeln!(out, "{}", clause_line(sig, c, cl));
                }
                let _ = writeln!(out, "{}", default_line(sig, c));
            }
            FamilyEntry::Type2(th) => {
                for line in (Shape { sig, th }).lines() {
                    let _ = writeln!(out, "{line}");
                }
            }
            // listed together with its theory
            FamilyEntry::Inverse(_) => {}
        }
    }
    out
}

const RESERVED_TYPES: &[&str] = &["Box", "Option", "Some", "None", "String", "Ordering", "Self", "Vec", "Ok", "Err", "Result"];

fn type_name(sig: &Signature) -> String {
    let mut chars = sig.sort_name().chars();
    let mut name: String = match chars.next() {
        Some(first) => first.to_uppercase().chain(chars).collect(),
        None => "Term".to_string(),
    };
    if RESERVED_TYPES.contains(&name.as_str()) {
        name.push_str("Term");
    }
    name
}

fn rust_sort(sort: Sort, ty: &str) -> String {
    match sort {
        Sort::Data => ty.to_string(),
        Sort::Prim(PrimType::Int) => "i64".to_string(),
        Sort::Prim(PrimType::Str) => "String".to_string(),
    }
}

struct CodeGen<'a> {
    sig: &'a Signature,
    ty: String,
    out: String,
    fresh: usize,
}

impl CodeGen<'_> {
    fn line(&mut self, indent: usize, s: &str) {
        let _ = writeln!(self.out, "{}{}", "    ".repeat(indent), s);
    }

    fn variant(&self, c: CtorId) -> String {
        format!("{}::{}", self.ty, self.sig.ctor_name(c))
    }

    fn value(&self, c: CtorId, args: &[String]) -> String {
        if args.is_empty() {
            return self.variant(c);
        }
        let decl = self.sig.ctor(c);
        let wrapped: Vec<String> = decl
            .args
            .iter()
            .zip(args)
            .map(|(s, a)| match s {
                Sort::Data => format!("Box::new({a})"),
                Sort::Prim(_) => a.clone(),
            })
            .collect();
        format!("{}({})", self.variant(c), wrapped.join(", "))
    }

    fn prim_literal(p: &Prim) -> String {
        match p {
            Prim::Int(n) => format!("{n}i64"),
            Prim::Str(s) => format!("{s:?}.to_string()"),
        }
    }

    /// Emits `let`-else checks binding the pattern against the reference `e`.
    fn pattern(&mut self, indent: usize, p: &Term, e: &str, sort: Sort) {
        match p {
            Term::Var(v) => {
                let s = format!("let {} = {e};", v.name);
                self.line(indent, &s);
            }
            Term::Prim(q) => {
                let lit = match q {
                    Prim::Int(n) => format!("{n}i64"),
                    Prim::Str(s) => format!("{s:?}"),
                };
                let s = if sort == Sort::Prim(PrimType::Str) {
                    format!("if {e}.as_str() != {lit} {{ return None; }}")
                } else {
                    format!("if *{e} != {lit} {{ return None; }}")
                };
                self.line(indent, &s);
            }
            Term::App(c, args) => {
                let names: Vec<String> = args
                    .iter()
                    .map(|_| {
                        self.fresh += 1;
                        format!("a{}", self.fresh)
                    })
                    .collect();
                let pat = if args.is_empty() {
                    self.variant(*c)
                } else {
                    format!("{}({})", self.variant(*c), names.join(", "))
                };
                let s = format!("let {pat} = {e} else {{ return None; }};");
                self.line(indent, &s);
                let sorts = self.sig.ctor(*c).args.clone();
                for ((a, n), s) in args.iter().zip(&names).zip(sorts) {
                    let sub = match s {
                        Sort::Data => format!("&**{n}"),
                        Sort::Prim(_) => n.clone(),
                    };
                    self.pattern(indent, a, &sub, s);
                }
            }
        }
    }

    fn rhs(&self, t: &Term) -> String {
        match t {
            Term::Var(v) => format!("{}.clone()", v.name),
            Term::Prim(p) => Self::prim_literal(p),
            Term::App(c, args) if args.is_empty() => self.variant(*c),
            Term::App(c, args) => {
                let inner: Vec<String> = args.iter().map(|a| self.rhs(a)).collect();
                format!("f_{}({})", self.sig.ctor_name(*c), inner.join(", "))
            }
        }
    }

    fn params(&self, c: CtorId) -> (Vec<String>, String) {
        let decl = self.sig.ctor(c);
        let names: Vec<String> = (1..=decl.args.len()).map(|i| format!("x{i}")).collect();
        let params: Vec<String> = names
            .iter()
            .zip(&decl.args)
            .map(|(n, s)| format!("{n}: {}", rust_sort(*s, &self.ty)))
            .collect();
        (names, params.join(", "))
    }

    fn free(&mut self, c: CtorId) {
        let (names, params) = self.params(c);
        let ty = self.ty.clone();
        let name = self.sig.ctor_name(c).to_string();
        self.line(0, &format!("pub fn f_{name}({params}) -> {ty} {{"));
        let v = self.value(c, &names);
        self.line(1, &v);
        self.line(0, "}");
    }

    fn type1(&mut self, c: CtorId, clauses: &[CompiledClause]) {
        let (names, params) = self.params(c);
        let ty = self.ty.clone();
        let name = self.sig.ctor_name(c).to_string();
        let sorts = self.sig.ctor(c).args.clone();
        self.line(0, &format!("pub fn f_{name}({params}) -> {ty} {{"));
        for cl in clauses {
            self.line(1, &format!("let clause = || -> Option<{ty}> {{"));
            for ((p, n), s) in cl.patterns.iter().zip(&names).zip(&sorts) {
                self.pattern(2, p, &format!("&{n}"), *s);
            }
            for (a, b) in &cl.guard {
                self.line(2, &format!("if {a} != {b} {{ return None; }}"));
            }
            let r = self.rhs(&cl.rhs);
            self.line(2, &format!("Some({r})"));
            self.line(1, "};");
            self.line(1, "if let Some(r) = clause() {");
            self.line(2, "return r;");
            self.line(1, "}");
        }
        let v = self.value(c, &names);
        self.line(1, &v);
        self.line(0, "}");
    }

    fn type2(&mut self, th: &Type2Theory) {
        let ty = self.ty.clone();
        let c = self.sig.ctor_name(th.ctor).to_string();
        let var = self.variant(th.ctor);
        let (outer_first, cmp) = match th.orient {
            Comb::Right => (true, "a.cmp(b)"),
            Comb::Left => (false, "b.cmp(a)"),
        };
        let is_neutral = |v: &str| match th.neutral {
            Some(e) => format!("*{v} == {}", self.variant(e)),
            None => "false".to_string(),
        };
        let neutral_a = is_neutral("&a");
        let neutral_b = is_neutral("&b");
        let neutral_r = is_neutral("&r");
        let mut src = String::new();
        let w = &mut src;
        let _ = writeln!(w, "fn split_{c}(u: &{ty}) -> Option<({ty}, {ty})> {{");
        let _ = writeln!(w, "    match u {{");
        if outer_first {
            let _ = writeln!(w, "        {var}(a, b) => Some(((**a).clone(), (**b).clone())),");
        } else {
            let _ = writeln!(w, "        {var}(a, b) => Some(((**b).clone(), (**a).clone())),");
        }
        let _ = writeln!(w, "        _ => None,\n    }}\n}}\n");
        let join = if outer_first {
            format!("{var}(Box::new(leaf), Box::new(rest))")
        } else {
            format!("{var}(Box::new(rest), Box::new(leaf))")
        };
        let _ = writeln!(w, "fn join_{c}(leaf: {ty}, rest: {ty}) -> {ty} {{\n    {join}\n}}\n");
        let _ = writeln!(w, "fn cmp_{c}(a: &{ty}, b: &{ty}) -> Ordering {{\n    {cmp}\n}}\n");
        let fo = if outer_first { format!("f_{c}(outer, rest)") } else { format!("f_{c}(rest, outer)") };
        let _ = writeln!(w, "fn fo_{c}(outer: {ty}, rest: {ty}) -> {ty} {{\n    {fo}\n}}\n");

        let _ = writeln!(w, "pub fn f_{c}(a: {ty}, b: {ty}) -> {ty} {{");
        let _ = writeln!(w, "    if {neutral_a} {{\n        return b;\n    }}");
        let _ = writeln!(w, "    if {neutral_b} {{\n        return a;\n    }}");
        let _ = writeln!(
            w,
            "    let (outer, rest) = {};",
            if outer_first { "(a, b)" } else { "(b, a)" }
        );
        let _ = writeln!(w, "    if let Some((oo, or)) = split_{c}(&outer) {{");
        let _ = writeln!(w, "        let inner = fo_{c}(or, rest);\n        return fo_{c}(oo, inner);\n    }}");
        if let Some(i) = th.inverse {
            let i = self.sig.ctor_name(i);
            let _ = writeln!(w, "    insert_inv_{c}(f_{i}(outer), rest)\n}}\n");
        } else {
            let _ = writeln!(w, "    insert_{c}(outer, rest)\n}}\n");
        }

        if let (Some(i), Some(e)) = (th.inverse, th.neutral) {
            let i = self.sig.ctor_name(i).to_string();
            let ivar = format!("{ty}::{i}");
            let evar = self.variant(e);
            let _ = writeln!(w, "pub fn f_{i}(v: {ty}) -> {ty} {{");
            let _ = writeln!(w, "    match v {{");
            let _ = writeln!(w, "        {evar} => v,");
            let _ = writeln!(w, "        {ivar}(x) => *x,");
            let _ = writeln!(w, "        {var}(x, y) => f_{c}(f_{i}(*y), f_{i}(*x)),");
            let _ = writeln!(w, "        v => {ivar}(Box::new(v)),");
            let _ = writeln!(w, "    }}\n}}\n");

            let _ = writeln!(w, "fn insert_inv_{c}(x: {ty}, y: {ty}) -> {ty} {{");
            let _ = writeln!(w, "    if let Some(r) = delete_{c}(&x, y.clone()) {{\n        return r;\n    }}");
            let _ = writeln!(w, "    insert_{c}(f_{i}(x), y)\n}}\n");

            let _ = writeln!(w, "fn delete_{c}(x: &{ty}, u: {ty}) -> Option<{ty}> {{");
            let _ = writeln!(w, "    match split_{c}(&u) {{");
            let _ = writeln!(w, "        Some((y, t)) => match cmp_{c}(x, &y) {{");
            let _ = writeln!(w, "            Ordering::Less => None,");
            let _ = writeln!(w, "            Ordering::Equal => Some(t),");
            let _ = writeln!(w, "            Ordering::Greater => {{");
            let _ = writeln!(w, "                let r = delete_{c}(x, t)?;\n                Some(rejoin_{c}(y, r))");
            let _ = writeln!(w, "            }}\n        }},");
            let _ = writeln!(w, "        None if u == *x => Some({evar}),");
            let _ = writeln!(w, "        None => None,\n    }}\n}}\n");
        }

        let _ = writeln!(w, "fn insert_{c}(x: {ty}, u: {ty}) -> {ty} {{");
        let _ = writeln!(w, "    match split_{c}(&u) {{");
        let _ = writeln!(w, "        Some((y, t)) => match cmp_{c}(&x, &y) {{");
        if th.idem() {
            let _ = writeln!(w, "            Ordering::Equal => u,");
        } else if let Some(a) = th.nil {
            let _ = writeln!(w, "            Ordering::Equal => fo_{c}({}, t),", self.variant(a));
        }
        let _ = writeln!(w, "            Ordering::Less | Ordering::Equal => join_{c}(x, u),");
        let _ = writeln!(w, "            Ordering::Greater => {{");
        let _ = writeln!(w, "                let r = insert_{c}(x, t);\n                rejoin_{c}(y, r)");
        let _ = writeln!(w, "            }}\n        }},");
        let _ = writeln!(w, "        None => match cmp_{c}(&x, &u) {{");
        let _ = writeln!(w, "            Ordering::Greater => join_{c}(u, x),");
        if th.idem() {
            let _ = writeln!(w, "            Ordering::Equal => u,");
        } else if let Some(a) = th.nil {
            let _ = writeln!(w, "            Ordering::Equal => {},", self.variant(a));
        }
        let _ = writeln!(w, "            _ => join_{c}(x, u),");
        let _ = writeln!(w, "        }},\n    }}\n}}\n");

        let _ = writeln!(w, "fn rejoin_{c}(y: {ty}, r: {ty}) -> {ty} {{");
        let _ = writeln!(w, "    if {neutral_r} {{\n        return y;\n    }}");
        let _ = writeln!(w, "    let first = split_{c}(&r).map(|(h, _)| h).unwrap_or_else(|| r.clone());");
        let _ = writeln!(w, "    if cmp_{c}(&y, &first) == Ordering::Less {{");
        let _ = writeln!(w, "        join_{c}(y, r)\n    }} else {{\n        insert_{c}(y, r)\n    }}\n}}");
        self.out.push_str(&src);
    }
}

/// Standalone Rust source for the construction functions of `fam`.
pub fn rust_code(fam: &CompiledFamily) -> String {
    let sig = fam.signature();
    let mut g = CodeGen {
        sig,
        ty: type_name(sig),
        out: String::new(),
        fresh: 0,
    };
    let ty = g.ty.clone();
    g.line(0, &format!("// Construction functions for the `{}` type.", sig.sort_name()));
    g.line(0, "#![allow(non_snake_case, dead_code, unused_variables, clippy::all)]");
    g.line(0, "");
    g.line(0, "use std::cmp::Ordering;");
    g.line(0, "");
    g.line(0, "#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]");
    g.line(0, &format!("pub enum {ty} {{"));
    for c in sig.ctor_ids() {
        let decl = sig.ctor(c);
        if decl.args.is_empty() {
            g.line(1, &format!("{},", decl.name));
        } else {
            let fields: Vec<String> = decl
                .args
                .iter()
                .map(|s| match s {
                    Sort::Data => format!("Box<{ty}>"),
                    p => rust_sort(*p, &ty),
                })
                .collect();
            g.line(1, &format!("{}({}),", decl.name, fields.join(", ")));
        }
    }
    g.line(0, "}");
    for c in sig.ctor_ids() {
        match fam.entry(c) {
            FamilyEntry::Free => {
                g.line(0, "");
                g.free(c);
            }
            FamilyEntry::Type1(clauses) => {
                g.line(0, "");
                g.type1(c, clauses);
            }
            FamilyEntry::Type2(th) => {
                g.line(0, "");
                g.type2(th);
            }
            FamilyEntry::Inverse(_) => {}
        }
    }
    g.line(0, "");
    g.line(0, "/// Bottom-up application of the construction functions.");
    g.line(0, &format!("pub fn normalize(t: {ty}) -> {ty} {{"));
    g.line(1, "match t {");
    for c in sig.ctor_ids() {
        let decl = sig.ctor(c);
        let name = &decl.name;
        if decl.args.is_empty() {
            g.line(2, &format!("{ty}::{name} => f_{name}(),"));
            continue;
        }
        let xs: Vec<String> = (1..=decl.args.len()).map(|i| format!("x{i}")).collect();
        let calls: Vec<String> = xs
            .iter()
            .zip(&decl.args)
            .map(|(x, s)| match s {
                Sort::Data => format!("normalize(*{x})"),
                Sort::Prim(_) => x.clone(),
            })
            .collect();
        g.line(
            2,
            &format!("{ty}::{name}({}) => f_{name}({}),", xs.join(", "), calls.join(", ")),
        );
    }
    g.line(1, "}");
    g.line(0, "}");
    g.out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_definition;

    fn family(src: &str) -> CompiledFamily {
        parse_definition(src).unwrap().family().unwrap()
    }

    const EXP: &str = "type exp = Zero | One | Opp(exp) | Plus(exp, exp)
with Plus: associative, commutative, neutral(Zero), inverse(Opp)";

    #[test]
    fn exp_report() {
        let r = report(&family(EXP));
        let lines: Vec<&str> = r.lines().collect();
        assert_eq!(lines[0], "f_Zero: () -> Zero");
        assert_eq!(lines[1], "f_One: () -> One");
        for expected in [
            "f_Plus: (Zero, y) -> y",
            "f_Plus: (x, Zero) -> x",
            "f_Plus: (Plus(x, y), z) -> f_Plus(x, f_Plus(y, z))",
            "f_Plus: (x, y) -> insert_inv_Plus(f_Opp(x), y)",
            "f_Opp: (Zero) -> Zero",
            "f_Opp: (Opp(x)) -> x",
            "f_Opp: (Plus(x, y)) -> f_Plus(f_Opp(y), f_Opp(x))",
            "delete_Plus: (x, Plus(y, t)) when x = y -> t",
            "insert_Plus: (x, Plus(y, t)) when x <= y -> Plus(x, Plus(y, t))",
            "insert_Plus: (x, u) when u < x -> Plus(u, x)",
        ] {
            assert!(lines.contains(&expected), "missing `{expected}` in\n{r}");
        }
    }

    #[test]
    fn free_report_has_default_clauses_only() {
        let r = report(&family("type l = Nil | Cons(int, l)"));
        assert_eq!(r, "f_Nil: () -> Nil\nf_Cons: (x1, x2) -> Cons(x1, x2)\n");
    }

    #[test]
    fn type1_report() {
        let r = report(&family("type t = E | A | C(t, t)\nrule C(x, E) -> x\nrule C(E, x) -> x\nrule C(x, x) -> C(x, E)"));
        let c_lines: Vec<&str> = r.lines().filter(|l| l.starts_with("f_C:")).collect();
        assert_eq!(
            c_lines,
            [
                "f_C: (v1, E) -> v1",
                "f_C: (E, v1) -> v1",
                "f_C: (v1, v2) when v1 = v2 -> f_C(v1, E)",
                "f_C: (x1, x2) -> C(x1, x2)",
            ]
        );
    }

    #[test]
    fn left_combs_mirror_the_listing() {
        let src = "type exp = Zero | One | Opp(exp) | Plus(exp, exp)
with Plus: associative left, commutative, neutral(Zero), inverse(Opp)";
        let r = report(&family(src));
        assert!(r.contains("f_Plus: (z, Plus(y, x)) -> f_Plus(f_Plus(z, y), x)"), "{r}");
        assert!(r.contains("insert_Plus: (x, Plus(t, y)) when x >= y -> Plus(Plus(t, y), x)"), "{r}");
    }

    fn rust_term(sig: &Signature, ty: &str, t: &Term) -> String {
        match t {
            Term::Prim(p) => CodeGen::prim_literal(p),
            Term::App(c, args) if args.is_empty() => format!("{ty}::{}", sig.ctor_name(*c)),
            Term::App(c, args) => {
                let inner: Vec<String> = args
                    .iter()
                    .map(|a| match a {
                        Term::Prim(_) => rust_term(sig, ty, a),
                        _ => format!("Box::new({})", rust_term(sig, ty, a)),
                    })
                    .collect();
                format!("{ty}::{}({})", sig.ctor_name(*c), inner.join(", "))
            }
            Term::Var(_) => unreachable!("ground terms only"),
        }
    }

    /// Compiles the generated module with a driver that prints the normal
    /// form of every term up to `size`, and compares with the library.
    fn generated_code_agrees(src: &str, size: usize) {
        let rustc = std::env::var("RUSTC").unwrap_or_else(|_| "rustc".to_string());
        if std::process::Command::new(&rustc).arg("--version").output().is_err() {
            eprintln!("rustc not available; skipping");
            return;
        }
        let fam = family(src);
        let sig = fam.signature();
        let ty = type_name(sig);
        let terms = crate::enumerate::enumerate_ground(sig, sig.sort_name(), size).unwrap();
        let mut code = rust_code(&fam);
        code.push_str("\nfn main() {\n");
        for t in &terms {
            let _ = writeln!(code, "    println!(\"{{:?}}\", normalize({}));", rust_term(sig, &ty, t));
        }
        code.push_str("}\n");

        let dir = tempfile::tempdir().unwrap();
        let file = dir.path().join("gen.rs");
        let exe = dir.path().join("gen");
        std::fs::write(&file, &code).unwrap();
        let out = std::process::Command::new(&rustc)
            .args(["--edition", "2021", "-O", "-o"])
            .arg(&exe)
            .arg(&file)
            .output()
            .unwrap();
        assert!(out.status.success(), "{}\n{code}", String::from_utf8_lossy(&out.stderr));
        let run = std::process::Command::new(&exe).output().unwrap();
        let printed = String::from_utf8(run.stdout).unwrap();
        let got: Vec<&str> = printed.lines().collect();
        assert_eq!(got.len(), terms.len());
        for (t, line) in terms.iter().zip(got) {
            let nf = crate::builder::normalize(t, &fam).unwrap();
            assert_eq!(line, sig.show(&nf).to_string(), "input {}", sig.show(t));
        }
    }

    #[test]
    fn generated_code_matches_library() {
        generated_code_agrees(EXP, 6);
        generated_code_agrees(
            "type exp = Zero | A | B | Opp(exp) | Plus(exp, exp)
with Plus: associative left, commutative, neutral(Zero), inverse(Opp)",
            5,
        );
        generated_code_agrees(
            "type b = T | A | B | And(b, b) | Xor(b, b)
with And: associative, commutative, idempotent
with Xor: associative, commutative, nilpotent(B)",
            5,
        );
        generated_code_agrees(
            "type t = E | A | V(int) | C(t, t)\nrule C(x, E) -> x\nrule C(E, x) -> x\nrule C(x, x) -> x\nrule C(V(0), x) -> V(1)",
            5,
        );
    }
}
