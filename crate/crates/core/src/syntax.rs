//! Concrete syntax for terms and definition files.
//!
//! ```text
//! file      := typedecl attrblock* rule*
//! typedecl  := "type" IDENT "=" ctor ("|" ctor)*
//! ctor      := IDENT [ "(" IDENT ("," IDENT)* ")" ]
//! attrblock := "with" IDENT ":" attr ("," attr)*
//! attr      := "associative" ["left"|"right"] | "commutative"
//!            | "neutral" "(" IDENT ")" | "inverse" "(" IDENT ")"
//!            | "idempotent" | "nilpotent" "(" IDENT ")"
//! rule      := "rule" term "->" term
//! term      := IDENT | IDENT "(" term ("," term)* ")" | INT | STRING
//! ```
//!
//! `#` starts a comment that runs to the end of the line. In rules, an
//! identifier that is not a constructor is a variable.

use std::collections::BTreeMap;
use std::fmt;

use crate::builder::CompiledFamily;
use crate::error::Error;
use crate::term::{PrimType, Signature, Sort, Term};
use crate::theory::{classify, Classification, Comb, EquationAttr, RewriteRule, TheorySpec};

/// Stable diagnostic codes.
pub mod codes {
    pub const SYNTAX: &str = "E001";
    pub const UNKNOWN_CONSTRUCTOR: &str = "E002";
    pub const UNKNOWN_SORT: &str = "E003";
    pub const DUPLICATE_CONSTRUCTOR: &str = "E004";
    pub const THEORY: &str = "E005";
    pub const ILL_SORTED: &str = "E006";
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct Loc {
    pub line: usize,
    pub col: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub code: &'static str,
    pub loc: Loc,
    pub message: String,
}

impl Diagnostic {
    fn new(code: &'static str, loc: Loc, message: impl Into<String>) -> Self {
        Diagnostic {
            code,
            loc,
            message: message.into(),
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}: error[{}]: {}",
            self.loc.line, self.loc.col, self.code, self.message
        )
    }
}

impl std::error::Error for Diagnostic {}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(i64),
    Str(String),
    LParen,
    RParen,
    Comma,
    Pipe,
    Eq,
    Colon,
    Arrow,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::Str(_) => f.write_str("string literal"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Pipe => f.write_str("`|`"),
            Tok::Eq => f.write_str("`=`"),
            Tok::Colon => f.write_str("`:`"),
            Tok::Arrow => f.write_str("`->`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, Loc)>, Diagnostic> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    macro_rules! bump {
        () => {{
            if chars[i] == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            i += 1;
        }};
    }
    while i < chars.len() {
        let c = chars[i];
        let loc = Loc { line, col };
        if c.is_whitespace() {
            bump!();
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                bump!();
            }
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                bump!();
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), loc));
            continue;
        }
        let negative = c == '-' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit());
        if c.is_ascii_digit() || negative {
            let start = i;
            bump!();
            while i < chars.len() && chars[i].is_ascii_digit() {
                bump!();
            }
            let s: String = chars[start..i].iter().collect();
            let n = s
                .parse::<i64>()
                .map_err(|_| Diagnostic::new(codes::SYNTAX, loc, format!("integer literal `{s}` out of range")))?;
            out.push((Tok::Int(n), loc));
            continue;
        }
        if c == '"' {
            bump!();
            let mut s = String::new();
            loop {
                match chars.get(i) {
                    None => return Err(Diagnostic::new(codes::SYNTAX, loc, "unterminated string literal")),
                    Some('"') => {
                        bump!();
                        break;
                    }
                    Some('\\') => {
                        bump!();
                        let esc = match chars.get(i) {
                            Some('n') => '\n',
                            Some('"') => '"',
                            Some('\\') => '\\',
                            _ => {
                                return Err(Diagnostic::new(
                                    codes::SYNTAX,
                                    Loc { line, col },
                                    "invalid escape in string literal",
                                ))
                            }
                        };
                        s.push(esc);
                        bump!();
                    }
                    Some(&ch) => {
                        s.push(ch);
                        bump!();
                    }
                }
            }
            out.push((Tok::Str(s), loc));
            continue;
        }
        let tok = match c {
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            '|' => Tok::Pipe,
            '=' => Tok::Eq,
            ':' => Tok::Colon,
            '-' if chars.get(i + 1) == Some(&'>') => {
                bump!();
                Tok::Arrow
            }
            other => {
                return Err(Diagnostic::new(
                    codes::SYNTAX,
                    loc,
                    format!("unexpected character `{other}`"),
                ))
            }
        };
        bump!();
        out.push((tok, loc));
    }
    out.push((Tok::Eof, Loc { line, col }));
    Ok(out)
}

/// Untyped term as written.
#[derive(Clone, Debug)]
enum RawTerm {
    Ident(String, Loc),
    App(String, Vec<RawTerm>, Loc),
    Int(i64),
    Str(String),
}

struct Parser {
    toks: Vec<(Tok, Loc)>,
    pos: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Self, Diagnostic> {
        Ok(Parser {
            toks: lex(text)?,
            pos: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn loc(&self) -> Loc {
        self.toks[self.pos].1
    }

    fn next(&mut self) -> (Tok, Loc) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, what: &str) -> Diagnostic {
        Diagnostic::new(
            codes::SYNTAX,
            self.loc(),
            format!("expected {what}, found {}", self.peek()),
        )
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<Loc, Diagnostic> {
        if *self.peek() == tok {
            Ok(self.next().1)
        } else {
            Err(self.unexpected(what))
        }
    }

    fn ident(&mut self, what: &str) -> Result<(String, Loc), Diagnostic> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                let loc = self.next().1;
                Ok((s, loc))
            }
            _ => Err(self.unexpected(what)),
        }
    }

    fn is_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn term(&mut self) -> Result<RawTerm, Diagnostic> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.next();
                Ok(RawTerm::Int(n))
            }
            Tok::Str(s) => {
                self.next();
                Ok(RawTerm::Str(s))
            }
            Tok::Ident(name) => {
                let loc = self.next().1;
                if *self.peek() != Tok::LParen {
                    return Ok(RawTerm::Ident(name, loc));
                }
                self.next();
                let mut args = vec![self.term()?];
                while *self.peek() == Tok::Comma {
                    self.next();
                    args.push(self.term()?);
                }
                self.expect(Tok::RParen, "`,` or `)`")?;
                Ok(RawTerm::App(name, args, loc))
            }
            _ => Err(self.unexpected("a term")),
        }
    }
}

enum Mode<'a> {
    Ground,
    Pattern(&'a mut BTreeMap<String, Sort>),
}

fn elaborate(sig: &Signature, raw: &RawTerm, expected: Sort, mode: &mut Mode<'_>, at: Loc) -> Result<Term, Diagnostic> {
    let mismatch = |loc: Loc, found: Sort| {
        Diagnostic::new(
            codes::ILL_SORTED,
            loc,
            format!(
                "expected a term of sort `{}`, found sort `{}`",
                sig.sort_display(expected),
                sig.sort_display(found)
            ),
        )
    };
    match raw {
        RawTerm::Int(n) => {
            if expected != Sort::Prim(PrimType::Int) {
                return Err(mismatch(at, Sort::Prim(PrimType::Int)));
            }
            Ok(Term::int(*n))
        }
        RawTerm::Str(s) => {
            if expected != Sort::Prim(PrimType::Str) {
                return Err(mismatch(at, Sort::Prim(PrimType::Str)));
            }
            Ok(Term::string(s.clone()))
        }
        RawTerm::Ident(name, loc) => match sig.lookup(name) {
            Some(c) => {
                if sig.arity(c) != 0 {
                    return Err(Diagnostic::new(
                        codes::ILL_SORTED,
                        *loc,
                        format!("constructor `{name}` expects {} argument(s)", sig.arity(c)),
                    ));
                }
                if expected != Sort::Data {
                    return Err(mismatch(*loc, Sort::Data));
                }
                Ok(Term::constant(c))
            }
            None => match mode {
                Mode::Ground => Err(Diagnostic::new(
                    codes::UNKNOWN_CONSTRUCTOR,
                    *loc,
                    format!("unknown constructor `{name}`"),
                )),
                Mode::Pattern(env) => {
                    if let Some(prev) = env.get(name) {
                        if *prev != expected {
                            return Err(Diagnostic::new(
                                codes::ILL_SORTED,
                                *loc,
                                format!("variable `{name}` used at two different sorts"),
                            ));
                        }
                    }
                    env.insert(name.clone(), expected);
                    Ok(Term::var(name, expected))
                }
            },
        },
        RawTerm::App(name, args, loc) => {
            let c = sig.lookup(name).ok_or_else(|| {
                Diagnostic::new(codes::UNKNOWN_CONSTRUCTOR, *loc, format!("unknown constructor `{name}`"))
            })?;
            let decl = sig.ctor(c);
            if decl.args.len() != args.len() {
                return Err(Diagnostic::new(
                    codes::ILL_SORTED,
                    *loc,
                    format!(
                        "constructor `{name}` expects {} argument(s), got {}",
                        decl.args.len(),
                        args.len()
                    ),
                ));
            }
            if expected != Sort::Data {
                return Err(mismatch(*loc, Sort::Data));
            }
            let sorts = decl.args.clone();
            let args = args
                .iter()
                .zip(sorts)
                .map(|(a, s)| elaborate(sig, a, s, mode, *loc))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Term::app(c, args))
        }
    }
}

fn parse_whole_term(sig: &Signature, text: &str, mode: &mut Mode<'_>) -> Result<Term, Diagnostic> {
    let mut p = Parser::new(text)?;
    let start = p.loc();
    let raw = p.term()?;
    if *p.peek() != Tok::Eof {
        return Err(p.unexpected("end of input"));
    }
    elaborate(sig, &raw, Sort::Data, mode, start)
}

/// Parses a ground term of the data sort.
pub fn parse_term(sig: &Signature, text: &str) -> Result<Term, Diagnostic> {
    parse_whole_term(sig, text, &mut Mode::Ground)
}

/// Parses a pattern of the data sort; non-constructor identifiers are variables.
pub fn parse_pattern(sig: &Signature, text: &str) -> Result<Term, Diagnostic> {
    let mut env = BTreeMap::new();
    parse_whole_term(sig, text, &mut Mode::Pattern(&mut env))
}

/// A parsed and classified definition file.
#[derive(Clone, Debug)]
pub struct Definition {
    pub sig: Signature,
    pub spec: TheorySpec,
    pub classification: Classification,
}

impl Definition {
    pub fn family(&self) -> Result<CompiledFamily, Error> {
        CompiledFamily::compile(&self.sig, &self.classification)
    }

    pub fn parse_term(&self, text: &str) -> Result<Term, Diagnostic> {
        parse_term(&self.sig, text)
    }
}

enum RawAttr {
    Assoc(Option<Comb>),
    Com,
    Neu(String, Loc),
    Inv(String, Loc),
    Idem,
    Nil(String, Loc),
}

/// Parses a definition file into its signature and theory and classifies it.
pub fn parse_definition(text: &str) -> Result<Definition, Diagnostic> {
    let mut p = Parser::new(text)?;
    if !p.is_keyword("type") {
        return Err(p.unexpected("`type`"));
    }
    p.next();
    let (sort_name, _) = p.ident("a type name")?;
    p.expect(Tok::Eq, "`=`")?;

    let mut sig = Signature::new(sort_name.clone());
    loop {
        let (name, loc) = p.ident("a constructor name")?;
        if ["type", "with", "rule"].contains(&name.as_str()) {
            return Err(Diagnostic::new(codes::SYNTAX, loc, format!("`{name}` is a keyword")));
        }
        let mut args = Vec::new();
        if *p.peek() == Tok::LParen {
            p.next();
            loop {
                let (s, sloc) = p.ident("a sort name")?;
                let sort = sig.sort_by_name(&s).ok_or_else(|| {
                    Diagnostic::new(codes::UNKNOWN_SORT, sloc, format!("unknown sort `{s}`"))
                })?;
                args.push(sort);
                if *p.peek() == Tok::Comma {
                    p.next();
                } else {
                    break;
                }
            }
            p.expect(Tok::RParen, "`,` or `)`")?;
        }
        sig.add_ctor(name.clone(), args).map_err(|_| {
            Diagnostic::new(
                codes::DUPLICATE_CONSTRUCTOR,
                loc,
                format!("duplicate constructor `{name}`"),
            )
        })?;
        if *p.peek() == Tok::Pipe {
            p.next();
        } else {
            break;
        }
    }

    let mut spec = TheorySpec::new();
    let mut first_loc: BTreeMap<String, Loc> = BTreeMap::new();
    let mut raw_attrs: Vec<(String, Loc, RawAttr)> = Vec::new();
    while p.is_keyword("with") {
        p.next();
        let (ctor, loc) = p.ident("a constructor name")?;
        if sig.lookup(&ctor).is_none() {
            return Err(Diagnostic::new(
                codes::UNKNOWN_CONSTRUCTOR,
                loc,
                format!("unknown constructor `{ctor}`"),
            ));
        }
        first_loc.entry(ctor.clone()).or_insert(loc);
        p.expect(Tok::Colon, "`:`")?;
        loop {
            let (kw, kloc) = p.ident("an attribute")?;
            let arg = |p: &mut Parser| -> Result<(String, Loc), Diagnostic> {
                p.expect(Tok::LParen, "`(`")?;
                let r = p.ident("a constructor name")?;
                p.expect(Tok::RParen, "`)`")?;
                Ok(r)
            };
            let attr = match kw.as_str() {
                "associative" => {
                    let dir = if p.is_keyword("left") {
                        p.next();
                        Some(Comb::Left)
                    } else if p.is_keyword("right") {
                        p.next();
                        Some(Comb::Right)
                    } else {
                        None
                    };
                    RawAttr::Assoc(dir)
                }
                "commutative" => RawAttr::Com,
                "idempotent" => RawAttr::Idem,
                "neutral" => {
                    let (n, l) = arg(&mut p)?;
                    RawAttr::Neu(n, l)
                }
                "inverse" => {
                    let (n, l) = arg(&mut p)?;
                    RawAttr::Inv(n, l)
                }
                "nilpotent" => {
                    let (n, l) = arg(&mut p)?;
                    RawAttr::Nil(n, l)
                }
                other => {
                    return Err(Diagnostic::new(
                        codes::SYNTAX,
                        kloc,
                        format!("unknown attribute `{other}`"),
                    ))
                }
            };
            raw_attrs.push((ctor.clone(), kloc, attr));
            if *p.peek() == Tok::Comma {
                p.next();
            } else {
                break;
            }
        }
    }

    let resolve = |name: &str, loc: Loc| {
        sig.lookup(name).ok_or_else(|| {
            Diagnostic::new(codes::UNKNOWN_CONSTRUCTOR, loc, format!("unknown constructor `{name}`"))
        })
    };
    // neutral elements first, so `inverse` can pick up its neutral
    let mut neutrals: BTreeMap<String, crate::term::CtorId> = BTreeMap::new();
    for (ctor, _, attr) in &raw_attrs {
        if let RawAttr::Neu(n, l) = attr {
            neutrals.entry(ctor.clone()).or_insert(resolve(n, *l)?);
        }
    }
    for (ctor, kloc, attr) in &raw_attrs {
        let c = sig.lookup(ctor).expect("checked above");
        let a = match attr {
            RawAttr::Assoc(dir) => {
                if let Some(d) = dir {
                    spec.set_orientation(c, *d);
                }
                EquationAttr::Assoc
            }
            RawAttr::Com => EquationAttr::Com,
            RawAttr::Idem => EquationAttr::Idem,
            RawAttr::Neu(n, l) => EquationAttr::Neu(resolve(n, *l)?),
            RawAttr::Nil(n, l) => EquationAttr::Nil(resolve(n, *l)?),
            RawAttr::Inv(n, l) => {
                let inverse = resolve(n, *l)?;
                let neutral = *neutrals.get(ctor).ok_or_else(|| {
                    Diagnostic::new(
                        codes::THEORY,
                        *kloc,
                        crate::theory::TheoryError::InvWithoutNeu(ctor.clone()).to_string(),
                    )
                })?;
                EquationAttr::Inv { inverse, neutral }
            }
        };
        spec.add_attr(c, a);
    }

    let mut rule_locs = Vec::new();
    while p.is_keyword("rule") {
        let rloc = p.next().1;
        let lhs_raw = p.term()?;
        p.expect(Tok::Arrow, "`->`")?;
        let rhs_raw = p.term()?;
        let mut env = BTreeMap::new();
        let lhs = elaborate(&sig, &lhs_raw, Sort::Data, &mut Mode::Pattern(&mut env), rloc)?;
        let rhs = elaborate(&sig, &rhs_raw, Sort::Data, &mut Mode::Pattern(&mut env), rloc)?;
        let rule = RewriteRule::new(&sig, lhs, rhs)
            .map_err(|e| Diagnostic::new(codes::ILL_SORTED, rloc, e.to_string()))?;
        spec.add_rule(rule);
        rule_locs.push(rloc);
    }
    if *p.peek() != Tok::Eof {
        return Err(p.unexpected("`with`, `rule` or end of input"));
    }

    let classification = classify(&spec, &sig).map_err(|e| {
        let loc = theory_error_loc(&e, &first_loc, &rule_locs);
        Diagnostic::new(codes::THEORY, loc, e.to_string())
    })?;
    Ok(Definition {
        sig,
        spec,
        classification,
    })
}

fn theory_error_loc(
    e: &crate::theory::TheoryError,
    attr_locs: &BTreeMap<String, Loc>,
    rule_locs: &[Loc],
) -> Loc {
    use crate::theory::TheoryError as T;
    let ctor = match e {
        T::ComWithoutAssoc(c) | T::InvWithoutNeu(c) | T::NotBinary(c) => Some(c),
        T::InvNeutralMismatch { ctor, .. }
        | T::NilNeutralMismatch { ctor, .. }
        | T::Unsupported { ctor, .. }
        | T::Conflicting { ctor, .. }
        | T::BadParameter { ctor, .. } => Some(ctor),
        T::SharedSymbol { second, .. } => Some(second),
        _ => None,
    };
    ctor.and_then(|c| attr_locs.get(c).copied())
        .or_else(|| rule_locs.first().copied())
        .unwrap_or(Loc { line: 1, col: 1 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theory::{CtorClass, Type2Variant};

    pub(crate) const EXP: &str = "\
type exp = Zero | One | Opp(exp) | Plus(exp, exp)
with Plus: associative, commutative, neutral(Zero), inverse(Opp)
";

    #[test]
    fn exp_definition() {
        let def = parse_definition(EXP).unwrap();
        let plus = def.sig.lookup("Plus").unwrap();
        assert_eq!(def.classification.class(plus), CtorClass::Type2(0));
        assert_eq!(def.classification.theories()[0].variant, Type2Variant::AbelianGroup);
    }

    #[test]
    fn rejections_carry_codes_and_locations() {
        let err = parse_definition("type exp = Zero | Plus(exp, exp)\nwith Plus: commutative\n").unwrap_err();
        assert_eq!(err.code, codes::THEORY);
        assert_eq!(err.loc, Loc { line: 2, col: 6 });
        assert!(err.message.contains("commutativity requires associativity"));

        let err = parse_definition("").unwrap_err();
        assert_eq!((err.code, err.loc.line), (codes::SYNTAX, 1));

        let err = parse_definition("type t = A | B(u)").unwrap_err();
        assert_eq!(err.code, codes::UNKNOWN_SORT);

        let err = parse_definition("type t = A | A").unwrap_err();
        assert_eq!(err.code, codes::DUPLICATE_CONSTRUCTOR);

        let err = parse_definition("type t = A | C(t, t)\nwith D: idempotent").unwrap_err();
        assert_eq!(err.code, codes::UNKNOWN_CONSTRUCTOR);

        let err = parse_definition("type t = A | C(t, t)\nwith C: associative, commutative, inverse(A)").unwrap_err();
        assert_eq!(err.code, codes::THEORY);
        assert!(err.message.contains("inverse requires a neutral"));
    }

    #[test]
    fn rules_and_patterns() {
        let def = parse_definition(
            "type t = E | A | C(t, t)  # comment\nrule C(x, E) -> x\nrule C(E, x) -> x\n",
        )
        .unwrap();
        assert_eq!(def.spec.rules().len(), 2);
        let err = parse_definition("type t = E | C(t, t)\nrule C(x, E) -> y").unwrap_err();
        assert_eq!(err.code, codes::ILL_SORTED);
        assert!(err.message.contains("`y`"));
    }

    #[test]
    fn terms() {
        let def = parse_definition(EXP).unwrap();
        let t = def.parse_term("Plus( One ,Opp(Zero) )").unwrap();
        assert_eq!(def.sig.show(&t).to_string(), "Plus(One, Opp(Zero))");
        assert_eq!(def.parse_term("x").unwrap_err().code, codes::UNKNOWN_CONSTRUCTOR);
        assert_eq!(def.parse_term("Opp(One, One)").unwrap_err().code, codes::ILL_SORTED);
        assert_eq!(def.parse_term("Plus(One)").unwrap_err().code, codes::ILL_SORTED);
        assert_eq!(def.parse_term("Opp(3)").unwrap_err().code, codes::ILL_SORTED);
        assert_eq!(def.parse_term("One One").unwrap_err().code, codes::SYNTAX);
        let pat = parse_pattern(&def.sig, "Plus(x, Zero)").unwrap();
        assert!(!pat.is_ground());
    }

    #[test]
    fn primitive_literals() {
        let def = parse_definition("type t = V(int) | S(string) | P(t, t)").unwrap();
        let t = def.parse_term("P(V(-3), S(\"a\\\"b\"))").unwrap();
        assert_eq!(def.sig.show(&t).to_string(), "P(V(-3), S(\"a\\\"b\"))");
        assert_eq!(def.parse_term("V(\"x\")").unwrap_err().code, codes::ILL_SORTED);
    }
}
