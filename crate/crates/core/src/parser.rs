//! Concrete syntax for terms, relations and proof scripts.
//!
//! Precedence, tightest first: postfix `'`, `*`, `-`, `+`. All binary
//! operators are left-associative. `|t1 - t2|` is the modular difference;
//! two bars must be separated by whitespace when they are adjacent.

use std::fmt;

use thiserror::Error;

use crate::kernel::{Direction, ProofScript, ProofStep};
use crate::term::{desugar, Path, Substitution, SurfaceTerm, VarName};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

/// A relation between terms: atoms `=` and `<=` joined by `/\` and `\/`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Relation {
    Eq(SurfaceTerm, SurfaceTerm),
    Leq(SurfaceTerm, SurfaceTerm),
    And(Box<Relation>, Box<Relation>),
    Or(Box<Relation>, Box<Relation>),
}

impl Relation {
    pub fn and(l: Relation, r: Relation) -> Self {
        Relation::And(Box::new(l), Box::new(r))
    }
    pub fn or(l: Relation, r: Relation) -> Self {
        Relation::Or(Box::new(l), Box::new(r))
    }

    pub fn free_vars(&self) -> Vec<VarName> {
        let mut out = std::collections::BTreeSet::new();
        self.walk_terms(&mut |t| out.extend(crate::term::free_vars(t)));
        out.into_iter().collect()
    }

    fn walk_terms(&self, f: &mut impl FnMut(&SurfaceTerm)) {
        match self {
            Relation::Eq(l, r) | Relation::Leq(l, r) => {
                f(l);
                f(r);
            }
            Relation::And(l, r) | Relation::Or(l, r) => {
                l.walk_terms(f);
                r.walk_terms(f);
            }
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_relation(self))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Zero,
    One,
    Ident(String),
    Quote,
    Star,
    Minus,
    Plus,
    Bar,
    LParen,
    RParen,
    Eq,
    Leq,
    And,
    Or,
    Colon,
    Assign,
    Tilde,
    Comma,
    Path(String),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::Zero => "0",
            Tok::One => "1",
            Tok::Ident(s) => return write!(f, "`{s}`"),
            Tok::Quote => "'",
            Tok::Star => "*",
            Tok::Minus => "-",
            Tok::Plus => "+",
            Tok::Bar => "|",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::Eq => "=",
            Tok::Leq => "<=",
            Tok::And => "/\\",
            Tok::Or => "\\/",
            Tok::Colon => ":",
            Tok::Assign => ":=",
            Tok::Tilde => "~",
            Tok::Comma => ",",
            Tok::Path(p) => return write!(f, "path `{p}`"),
            Tok::Eof => return f.write_str("end of input"),
        };
        write!(f, "`{s}`")
    }
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(src: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    let err = |line, col, message: String| ParseError { line, col, message };

    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, col);
        let mut push = |tok: Tok, width: usize, i: &mut usize, col: &mut usize| {
            out.push(Token { tok, line: tl, col: tc });
            *i += width;
            *col += width;
        };
        match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => {
                i += 1;
                col += 1;
            }
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            '\'' => push(Tok::Quote, 1, &mut i, &mut col),
            '*' => push(Tok::Star, 1, &mut i, &mut col),
            '-' => push(Tok::Minus, 1, &mut i, &mut col),
            '+' => push(Tok::Plus, 1, &mut i, &mut col),
            '(' => push(Tok::LParen, 1, &mut i, &mut col),
            ')' => push(Tok::RParen, 1, &mut i, &mut col),
            '=' => push(Tok::Eq, 1, &mut i, &mut col),
            '~' => push(Tok::Tilde, 1, &mut i, &mut col),
            ',' => push(Tok::Comma, 1, &mut i, &mut col),
            '|' => {
                if chars.get(i + 1) == Some(&'|') {
                    return Err(err(tl, tc, "adjacent bars `||` must be separated by whitespace".into()));
                }
                push(Tok::Bar, 1, &mut i, &mut col)
            }
            '<' if chars.get(i + 1) == Some(&'=') => push(Tok::Leq, 2, &mut i, &mut col),
            '/' if chars.get(i + 1) == Some(&'\\') => push(Tok::And, 2, &mut i, &mut col),
            '\\' if chars.get(i + 1) == Some(&'/') => push(Tok::Or, 2, &mut i, &mut col),
            ':' if chars.get(i + 1) == Some(&'=') => push(Tok::Assign, 2, &mut i, &mut col),
            ':' => push(Tok::Colon, 1, &mut i, &mut col),
            '.' => {
                let start = i;
                while i < chars.len() && (chars[i] == '.' || chars[i].is_ascii_alphanumeric()) {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                col += i - start;
                out.push(Token { tok: Tok::Path(text), line: tl, col: tc });
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                col += i - start;
                let tok = match text.as_str() {
                    "0" => Tok::Zero,
                    "1" => Tok::One,
                    _ => return Err(err(tl, tc, format!("invalid constant `{text}`; only 0 and 1 exist"))),
                };
                out.push(Token { tok, line: tl, col: tc });
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                col += i - start;
                out.push(Token { tok: Tok::Ident(text), line: tl, col: tc });
            }
            other => return Err(err(tl, tc, format!("unexpected character `{other}`"))),
        }
    }
    out.push(Token { tok: Tok::Eof, line, col });
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn new(src: &str) -> Result<Self, ParseError> {
        Ok(Parser { toks: lex(src)?, pos: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error_here(&self, message: impl Into<String>) -> ParseError {
        let t = &self.toks[self.pos];
        ParseError { line: t.line, col: t.col, message: message.into() }
    }

    fn unexpected(&self, expected: &str) -> ParseError {
        self.error_here(format!("expected {expected}, found {}", self.peek()))
    }

    fn expect(&mut self, tok: Tok) -> Result<Token, ParseError> {
        if *self.peek() == tok {
            Ok(self.bump())
        } else {
            Err(self.unexpected(&tok.to_string()))
        }
    }

    fn expect_keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        match self.peek() {
            Tok::Ident(s) if s == kw => {
                self.bump();
                Ok(())
            }
            _ => Err(self.unexpected(&format!("`{kw}`"))),
        }
    }

    fn expect_eof(&mut self) -> Result<(), ParseError> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            Err(self.unexpected("end of input"))
        }
    }

    fn term(&mut self) -> Result<SurfaceTerm, ParseError> {
        let mut t = self.diff_level()?;
        while *self.peek() == Tok::Plus {
            self.bump();
            t = SurfaceTerm::sum(t, self.diff_level()?);
        }
        Ok(t)
    }

    fn diff_level(&mut self) -> Result<SurfaceTerm, ParseError> {
        let mut t = self.prod_level()?;
        while *self.peek() == Tok::Minus {
            self.bump();
            t = SurfaceTerm::diff(t, self.prod_level()?);
        }
        Ok(t)
    }

    fn prod_level(&mut self) -> Result<SurfaceTerm, ParseError> {
        let mut t = self.postfix()?;
        while *self.peek() == Tok::Star {
            self.bump();
            t = SurfaceTerm::prod(t, self.postfix()?);
        }
        Ok(t)
    }

    fn postfix(&mut self) -> Result<SurfaceTerm, ParseError> {
        let mut t = self.primary()?;
        while *self.peek() == Tok::Quote {
            self.bump();
            t = SurfaceTerm::compl(t);
        }
        Ok(t)
    }

    fn primary(&mut self) -> Result<SurfaceTerm, ParseError> {
        match self.peek().clone() {
            Tok::Zero => {
                self.bump();
                Ok(SurfaceTerm::Zero)
            }
            Tok::One => {
                self.bump();
                Ok(SurfaceTerm::One)
            }
            Tok::Ident(name) => {
                let name = VarName::new(&name).map_err(|e| self.error_here(e.to_string()))?;
                self.bump();
                Ok(SurfaceTerm::Var(name))
            }
            Tok::LParen => {
                self.bump();
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            Tok::Bar => {
                self.bump();
                let left = self.prod_level()?;
                if *self.peek() != Tok::Minus {
                    return Err(self.unexpected("`-` inside `|...|`"));
                }
                let mut operands = vec![left];
                while *self.peek() == Tok::Minus {
                    self.bump();
                    operands.push(self.prod_level()?);
                }
                self.expect(Tok::Bar)?;
                let right = operands.pop().expect("two operands");
                let left = operands
                    .into_iter()
                    .reduce(SurfaceTerm::diff)
                    .expect("one operand");
                Ok(SurfaceTerm::mod_diff(left, right))
            }
            _ => Err(self.unexpected("a term")),
        }
    }

    fn relation(&mut self) -> Result<Relation, ParseError> {
        let mut r = self.relation_and()?;
        while *self.peek() == Tok::Or {
            self.bump();
            r = Relation::or(r, self.relation_and()?);
        }
        Ok(r)
    }

    fn relation_and(&mut self) -> Result<Relation, ParseError> {
        let mut r = self.relation_atom()?;
        while *self.peek() == Tok::And {
            self.bump();
            r = Relation::and(r, self.relation_atom()?);
        }
        Ok(r)
    }

    fn relation_atom(&mut self) -> Result<Relation, ParseError> {
        let start = self.pos;
        let atom_err = match self.atom() {
            Ok(r) => return Ok(r),
            Err(e) => e,
        };
        if self.toks[start].tok != Tok::LParen {
            return Err(atom_err);
        }
        // `(` may open a term or a nested relation; retry as the latter.
        let atom_end = self.pos;
        self.pos = start + 1;
        let nested = self.relation().and_then(|r| {
            self.expect(Tok::RParen)?;
            Ok(r)
        });
        match nested {
            Ok(r) => Ok(r),
            Err(e) if self.pos >= atom_end => Err(e),
            Err(_) => Err(atom_err),
        }
    }

    fn atom(&mut self) -> Result<Relation, ParseError> {
        let l = self.term()?;
        match self.peek() {
            Tok::Eq => {
                self.bump();
                Ok(Relation::Eq(l, self.term()?))
            }
            Tok::Leq => {
                self.bump();
                Ok(Relation::Leq(l, self.term()?))
            }
            _ => Err(self.unexpected("`=` or `<=`")),
        }
    }

    fn ident(&mut self, what: &str) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            _ => Err(self.unexpected(what)),
        }
    }

    fn lemma(&mut self) -> Result<ProofScript, ParseError> {
        self.expect_keyword("lemma")?;
        let name = self.ident("a lemma name")?;
        self.expect(Tok::Colon)?;
        let lhs = self.term()?;
        self.expect(Tok::Eq)?;
        let rhs = self.term()?;
        let mut steps = Vec::new();
        while *self.peek() == Tok::Eq {
            steps.push(self.step()?);
        }
        self.expect_keyword("qed")?;
        Ok(ProofScript::new(name, lhs, rhs, steps))
    }

    fn step(&mut self) -> Result<ProofStep, ParseError> {
        let line = self.expect(Tok::Eq)?.line;
        let result = self.term()?;
        self.expect_keyword("by")?;
        let rule = self.ident("a rule name")?;
        let direction = if *self.peek() == Tok::Tilde {
            self.bump();
            Direction::RightToLeft
        } else {
            Direction::LeftToRight
        };
        self.expect_keyword("at")?;
        let at = self.path()?;
        let mut bindings = Substitution::new();
        if matches!(self.peek(), Tok::Ident(s) if s == "with") {
            self.bump();
            loop {
                let meta = self.ident("a metavariable")?;
                let meta = VarName::new(&meta)
                    .ok()
                    .filter(VarName::is_metavariable)
                    .ok_or_else(|| self.error_here(format!("`{meta}` is not a metavariable (single uppercase letter)")))?;
                self.expect(Tok::Assign)?;
                let value = desugar(&self.term()?);
                if bindings.insert(meta.clone(), value).is_some() {
                    return Err(self.error_here(format!("metavariable {meta} bound twice")));
                }
                if *self.peek() != Tok::Comma {
                    break;
                }
                self.bump();
            }
        }
        Ok(ProofStep {
            result: desugar(&result),
            rule,
            direction,
            at,
            bindings,
            line,
        })
    }

    fn path(&mut self) -> Result<Path, ParseError> {
        let Tok::Path(text) = self.peek().clone() else {
            return Err(self.unexpected("a path such as `.` or `.0.1`"));
        };
        let bad = || self.error_here(format!("malformed path `{text}`; child indices must be 0 or 1"));
        let indices = if text == "." {
            Vec::new()
        } else {
            let mut v = Vec::new();
            let mut parts = text.split('.');
            if parts.next() != Some("") {
                return Err(bad());
            }
            for part in parts {
                match part {
                    "0" => v.push(0),
                    "1" => v.push(1),
                    _ => return Err(bad()),
                }
            }
            v
        };
        self.bump();
        Ok(Path::new(indices).expect("indices checked"))
    }
}

pub fn parse_term(src: &str) -> Result<SurfaceTerm, ParseError> {
    let mut p = Parser::new(src)?;
    let t = p.term()?;
    p.expect_eof()?;
    Ok(t)
}

pub fn parse_relation(src: &str) -> Result<Relation, ParseError> {
    let mut p = Parser::new(src)?;
    let r = p.relation()?;
    p.expect_eof()?;
    Ok(r)
}

/// Parses exactly one `lemma ... qed` block.
pub fn parse_proof_script(src: &str) -> Result<ProofScript, ParseError> {
    let mut p = Parser::new(src)?;
    let s = p.lemma()?;
    p.expect_eof()?;
    Ok(s)
}

/// Parses a file of consecutive `lemma ... qed` blocks (possibly none).
pub fn parse_corpus(src: &str) -> Result<Vec<ProofScript>, ParseError> {
    let mut p = Parser::new(src)?;
    let mut out = Vec::new();
    while *p.peek() != Tok::Eof {
        out.push(p.lemma()?);
    }
    Ok(out)
}

// Binding strength of each surface constructor when printed.
const SUM: u8 = 1;
const DIFF: u8 = 2;
const PROD: u8 = 3;
const POSTFIX: u8 = 4;
const ATOM: u8 = 5;

fn level(t: &SurfaceTerm) -> u8 {
    match t {
        SurfaceTerm::Sum(..) => SUM,
        SurfaceTerm::Diff(..) => DIFF,
        SurfaceTerm::Prod(..) => PROD,
        SurfaceTerm::Compl(_) => POSTFIX,
        _ => ATOM,
    }
}

/// Prints `t` with the fewest parentheses that parse back to the same tree.
pub fn render_term(t: &SurfaceTerm) -> String {
    let mut out = String::new();
    render_into(t, &mut out);
    out
}

fn render_child(t: &SurfaceTerm, min: u8, out: &mut String) {
    if level(t) < min {
        out.push('(');
        render_into(t, out);
        out.push(')');
    } else {
        render_into(t, out);
    }
}

fn render_into(t: &SurfaceTerm, out: &mut String) {
    use SurfaceTerm::*;
    match t {
        Zero => out.push('0'),
        One => out.push('1'),
        Var(v) => out.push_str(v.as_str()),
        Sum(l, r) => {
            render_child(l, SUM, out);
            out.push('+');
            render_child(r, DIFF, out);
        }
        Diff(l, r) => {
            render_child(l, DIFF, out);
            out.push('-');
            render_child(r, PROD, out);
        }
        Prod(l, r) => {
            render_child(l, PROD, out);
            out.push('*');
            render_child(r, POSTFIX, out);
        }
        Compl(a) => {
            render_child(a, POSTFIX, out);
            out.push('\'');
        }
        ModDiff(l, r) => {
            let mut inner = String::new();
            render_child(l, DIFF, &mut inner);
            inner.push('-');
            render_child(r, PROD, &mut inner);
            out.push('|');
            if inner.starts_with('|') {
                out.push(' ');
            }
            out.push_str(&inner);
            if inner.ends_with('|') {
                out.push(' ');
            }
            out.push('|');
        }
    }
}

pub fn render_relation(r: &Relation) -> String {
    fn go(r: &Relation, out: &mut String) {
        match r {
            Relation::Eq(l, rt) => {
                out.push_str(&render_term(l));
                out.push_str(" = ");
                out.push_str(&render_term(rt));
            }
            Relation::Leq(l, rt) => {
                out.push_str(&render_term(l));
                out.push_str(" <= ");
                out.push_str(&render_term(rt));
            }
            Relation::And(l, rt) => {
                child(l, matches!(**l, Relation::Or(..)), out);
                out.push_str(" /\\ ");
                child(rt, matches!(**rt, Relation::Or(..) | Relation::And(..)), out);
            }
            Relation::Or(l, rt) => {
                go(l, out);
                out.push_str(" \\/ ");
                child(rt, matches!(**rt, Relation::Or(..)), out);
            }
        }
    }
    fn child(r: &Relation, paren: bool, out: &mut String) {
        if paren {
            out.push('(');
            go(r, out);
            out.push(')');
        } else {
            go(r, out);
        }
    }
    let mut out = String::new();
    go(r, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use SurfaceTerm as S;

    fn v(n: &str) -> S {
        S::var(n)
    }

    #[test]
    fn term_examples() {
        assert_eq!(parse_term("1-(1-a)").unwrap(), S::diff(S::One, S::diff(S::One, v("a"))));
        assert_eq!(parse_term("a-b-c").unwrap(), S::diff(S::diff(v("a"), v("b")), v("c")));
        assert_eq!(parse_term("|a-b|").unwrap(), S::mod_diff(v("a"), v("b")));
        assert_eq!(parse_term("a-b'").unwrap(), S::diff(v("a"), S::compl(v("b"))));
        assert_eq!(
            parse_term("a+b-c*d").unwrap(),
            S::sum(v("a"), S::diff(v("b"), S::prod(v("c"), v("d"))))
        );
        assert_eq!(parse_term("a''").unwrap(), S::compl(S::compl(v("a"))));
        assert_eq!(
            parse_term("| |a-b| - c |").unwrap(),
            S::mod_diff(S::mod_diff(v("a"), v("b")), v("c"))
        );
        assert_eq!(parse_term("|a-b-c|").unwrap(), S::mod_diff(S::diff(v("a"), v("b")), v("c")));
        assert_eq!(parse_term("  x1 -\n y ").unwrap(), S::diff(v("x1"), v("y")));
    }

    #[test]
    fn term_errors() {
        let e = parse_term("a - * b").unwrap_err();
        assert_eq!((e.line, e.col), (1, 5));
        assert!(parse_term("||a-b|-c|").is_err());
        assert!(parse_term("|a|").is_err());
        assert!(parse_term("a b").is_err());
        assert!(parse_term("2").is_err());
        assert!(parse_term("(a-b").is_err());
        assert!(parse_term("").is_err());
        assert!(parse_term("a − b").is_err());
        let e = parse_term("a\n  - ?").unwrap_err();
        assert_eq!((e.line, e.col), (2, 5));
    }

    #[test]
    fn render_examples() {
        let abc = S::diff(S::diff(v("a"), v("b")), v("c"));
        assert_eq!(render_term(&abc), "a-b-c");
        assert_eq!(render_term(&S::diff(v("a"), S::diff(v("b"), v("c")))), "a-(b-c)");
        assert_eq!(render_term(&S::compl(S::sum(v("a"), v("b")))), "(a+b)'");
        assert_eq!(
            render_term(&S::mod_diff(S::mod_diff(v("a"), v("b")), v("c"))),
            "| |a-b|-c|"
        );
        assert_eq!(
            render_term(&S::mod_diff(v("a"), S::mod_diff(v("b"), v("c")))),
            "|a-|b-c| |"
        );
        assert_eq!(render_term(&S::mod_diff(S::sum(v("a"), v("b")), v("c"))), "|(a+b)-c|");
    }

    #[test]
    fn relation_examples() {
        let r = parse_relation("a*c <= b*d /\\ a <= b+c /\\ c <= a+d").unwrap();
        let t = |s: &str| parse_term(s).unwrap();
        assert_eq!(
            r,
            Relation::and(
                Relation::and(Relation::Leq(t("a*c"), t("b*d")), Relation::Leq(t("a"), t("b+c"))),
                Relation::Leq(t("c"), t("a+d"))
            )
        );
        assert_eq!(
            parse_relation("(a+b)*c = c - a*b").unwrap(),
            Relation::Eq(
                S::prod(S::sum(v("a"), v("b")), v("c")),
                S::diff(v("c"), S::prod(v("a"), v("b")))
            )
        );
        assert_eq!(parse_relation("a = a").unwrap(), Relation::Eq(v("a"), v("a")));
        let r = parse_relation("a = b \\/ b <= c /\\ c = a").unwrap();
        assert!(matches!(r, Relation::Or(_, ref rhs) if matches!(**rhs, Relation::And(..))));
        let r = parse_relation("(a = b \\/ b <= c) /\\ (a-b) <= c").unwrap();
        assert!(matches!(r, Relation::And(ref l, _) if matches!(**l, Relation::Or(..))));
        assert_eq!(parse_relation(&render_relation(&r)).unwrap(), r);
        assert!(parse_relation("a").is_err());
        assert!(parse_relation("a = b /\\").is_err());
    }

    #[test]
    fn script_examples() {
        let src = "lemma exchange : (a-b)-d = (a-d)-b
  = (1-(1-(a-b)))-d                by II~ at .0
  = ((1-(1-a))-d)-(1-(1-b))        by III at .
  = (a-d)-(1-(1-b))                by II at .0.0
qed";
        let s = parse_proof_script(src).unwrap();
        assert_eq!(s.name, "exchange");
        assert_eq!(s.steps.len(), 3);
        assert_eq!(s.steps[0].direction, Direction::RightToLeft);
        assert_eq!(s.steps[2].at, Path::new(vec![0, 0]).unwrap());
        assert_eq!(s.steps[1].line, 3);

        let s = parse_proof_script("lemma refl : t = t qed").unwrap();
        assert!(s.steps.is_empty());

        let e = parse_proof_script("lemma x : a = a\n = a by I at 0.2\nqed").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(parse_proof_script("lemma x : a = a\n = a by I at .0.2\nqed").is_err());
    }

    #[test]
    fn script_bindings() {
        let s = parse_proof_script("lemma z : a-0 = a\n = a-(b-b) by I~ at .1 with X := b, Y := 1-c\nqed")
            .unwrap();
        let b = &s.steps[0].bindings;
        assert_eq!(b.len(), 2);
        assert!(parse_proof_script("lemma z : a = a\n = a by I at . with x := b\nqed").is_err());
        assert!(parse_proof_script("lemma z : a = a\n = a by I at . with X := b, X := c\nqed").is_err());
    }

    #[test]
    fn corpus_with_comments() {
        let src = "# header\nlemma a1 : a = a qed\n\n# next\nlemma a2 : b = b qed\n";
        let c = parse_corpus(src).unwrap();
        assert_eq!(c.len(), 2);
        assert!(parse_corpus("").unwrap().is_empty());
    }
}
