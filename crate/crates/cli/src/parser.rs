// SPDX-License-Identifier: Apache-2.0

//! Recursive-descent parser for the expression language.
//!
//! ```text
//! expr    := meet (('+' | '|') meet)*
//! meet    := unary (('*' | '&') unary)*
//! unary   := '~' unary | primary
//! primary := '0' | '1' | name | '@' name | '(' expr ')'
//!          | 'a(' q ')' | 'd(' n ',' n ')'
//!          | 'H(' q ';' (n ':' q)* '|' q ')' | '[' q ';' (n ':' q)* '|' q ']'
//!          | 'c{' ns '}(' expr ')' | 'C{' ns '}(' expr ')'
//!          | 's[' n ',' n '](' expr ')' | 's{' (n '->' n),* '}(' expr ')'
//!          | 'fuse(' expr ',' expr ',' n ',' n ')'
//!          | 'recover(' expr ',' n ',' n ',' ('first' | 'second') ')'
//! ```
//!
//! Keywords only take effect when followed by their opening bracket, so `a`,
//! `d` or `s` alone are ordinary names.

use std::collections::BTreeSet;
use std::fmt;

use polyadic_core::{Atom, Branch, CoeffSeq, GammaSpec, Point, Rational, Term, Transformation};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    /// Byte offset into the input.
    pub offset: usize,
    pub expected: BTreeSet<String>,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let expected: Vec<&str> = self.expected.iter().map(String::as_str).collect();
        write!(
            f,
            "parse error at byte {}: expected {}, found {}",
            self.offset,
            expected.join(" or "),
            self.found
        )
    }
}

pub type Result<T> = std::result::Result<T, ParseError>;

pub struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    pub fn new(src: &'a str) -> Self {
        Parser { src, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    pub fn error(&mut self, expected: &[&str]) -> ParseError {
        self.skip_ws();
        let found = match self.rest().chars().next() {
            None => "end of input".to_string(),
            Some(c) => format!("`{c}`"),
        };
        ParseError {
            offset: self.pos,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found,
        }
    }

    pub fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.error(&[&format!("`{token}`")]))
        }
    }

    /// Fails unless only whitespace is left.
    pub fn finish(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(_) => Err(self.error(&["end of input"])),
        }
    }

    fn word(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let rest = self.rest();
        let len = rest
            .char_indices()
            .find(|&(i, c)| {
                !(c.is_ascii_alphanumeric() || c == '_') || (i == 0 && c.is_ascii_digit())
            })
            .map_or(rest.len(), |(i, _)| i);
        (len > 0).then(|| &rest[..len])
    }

    pub fn nat(&mut self) -> Result<usize> {
        self.skip_ws();
        let digits = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        match self.rest()[..digits].parse() {
            Ok(n) => {
                self.pos += digits;
                Ok(n)
            }
            Err(_) => Err(self.error(&["coordinate"])),
        }
    }

    pub fn rational(&mut self) -> Result<Rational> {
        self.skip_ws();
        let bytes = self.rest().as_bytes();
        let sign = usize::from(bytes.first() == Some(&b'-'));
        let numer = bytes[sign..]
            .iter()
            .take_while(|b| b.is_ascii_digit())
            .count();
        if numer == 0 {
            return Err(self.error(&["rational"]));
        }
        let mut len = sign + numer;
        if bytes.get(len) == Some(&b'/') {
            let denom = bytes[len + 1..]
                .iter()
                .take_while(|b| b.is_ascii_digit())
                .count();
            if denom == 0 {
                self.pos += len + 1;
                return Err(self.error(&["denominator"]));
            }
            len += 1 + denom;
        }
        match self.rest()[..len].parse::<Rational>() {
            Ok(q) => {
                self.pos += len;
                Ok(q)
            }
            Err(_) => Err(self.error(&["nonzero denominator"])),
        }
    }

    fn coord_set(&mut self) -> Result<BTreeSet<usize>> {
        self.expect("{")?;
        let mut set = BTreeSet::new();
        if self.eat("}") {
            return Ok(set);
        }
        loop {
            set.insert(self.nat()?);
            if self.eat("}") {
                return Ok(set);
            }
            if !self.eat(",") {
                return Err(self.error(&["`,`", "`}`"]));
            }
        }
    }

    /// `rhs ; i:c ... | tail` followed by `close`.
    fn atom_body(&mut self, close: &str) -> Result<Atom> {
        let rhs = self.rational()?;
        self.expect(";")?;
        let mut explicit = Vec::new();
        while !self.eat("|") {
            let i = self.nat().map_err(|_| self.error(&["coordinate", "`|`"]))?;
            self.expect(":")?;
            explicit.push((i, self.rational()?));
        }
        let tail = self.rational()?;
        self.expect(close)?;
        Ok(Atom::hyperplane(rhs, CoeffSeq::new(explicit, tail)))
    }

    pub fn atom(&mut self) -> Result<Atom> {
        self.expect("[")?;
        self.atom_body("]")
    }

    pub fn expr(&mut self) -> Result<Term> {
        let mut t = self.meet()?;
        while self.eat("+") || self.eat("|") {
            t = t.join(self.meet()?);
        }
        Ok(t)
    }

    fn meet(&mut self) -> Result<Term> {
        let mut t = self.unary()?;
        while self.eat("*") || self.eat("&") {
            t = t.meet(self.unary()?);
        }
        Ok(t)
    }

    fn unary(&mut self) -> Result<Term> {
        if self.eat("~") {
            return Ok(self.unary()?.not());
        }
        self.primary()
    }

    fn paren_expr(&mut self) -> Result<Term> {
        self.expect("(")?;
        let t = self.expr()?;
        self.expect(")")?;
        Ok(t)
    }

    fn primary(&mut self) -> Result<Term> {
        const STARTS: &[&str] = &["`0`", "`1`", "name", "`(`", "`[`", "`~`", "`@`"];
        match self.peek() {
            Some('(') => return self.paren_expr(),
            Some('[') => return Ok(Term::Atom(self.atom()?)),
            Some('@') => {
                self.pos += 1;
                return match self.word() {
                    Some(w) if !w.starts_with(|c: char| c.is_ascii_digit()) => {
                        self.pos += w.len();
                        Ok(Term::var(w))
                    }
                    _ => Err(self.error(&["name"])),
                };
            }
            Some('0') | Some('1') => {
                let digits = self.rest().bytes().take_while(u8::is_ascii_digit).count();
                if digits == 1 {
                    let one = self.rest().starts_with('1');
                    self.pos += 1;
                    return Ok(if one { Term::One } else { Term::Zero });
                }
                return Err(self.error(STARTS));
            }
            _ => {}
        }
        let Some(word) = self.word() else {
            return Err(self.error(STARTS));
        };
        let after = self.src[self.pos + word.len()..].chars().next();
        let keyword = matches!(
            (word, after),
            ("a" | "d" | "H" | "fuse" | "recover", Some('('))
                | ("c" | "C", Some('{'))
                | ("s", Some('[' | '{'))
        );
        self.pos += word.len();
        if !keyword {
            return Ok(Term::var(word));
        }
        match word {
            "a" => {
                self.expect("(")?;
                let q = self.rational()?;
                self.expect(")")?;
                Ok(Term::Sum(q))
            }
            "d" => {
                self.expect("(")?;
                let i = self.nat()?;
                self.expect(",")?;
                let j = self.nat()?;
                self.expect(")")?;
                Ok(Term::Diagonal(i, j))
            }
            "H" => {
                self.expect("(")?;
                Ok(Term::Atom(self.atom_body(")")?))
            }
            "c" | "C" => {
                let set = self.coord_set()?;
                let gamma = if word == "c" {
                    GammaSpec::Finite(set)
                } else {
                    GammaSpec::Cofinite(set)
                };
                Ok(self.paren_expr()?.cylindrify(gamma))
            }
            "s" => {
                let t = if self.eat("[") {
                    let i = self.nat()?;
                    self.expect(",")?;
                    let j = self.nat()?;
                    self.expect("]")?;
                    Transformation::transposition(i, j)
                } else {
                    self.transformation()?
                };
                Ok(self.paren_expr()?.substitute(t))
            }
            "fuse" => {
                self.expect("(")?;
                let x = self.expr()?;
                self.expect(",")?;
                let y = self.expr()?;
                self.expect(",")?;
                let k = self.nat()?;
                self.expect(",")?;
                let l = self.nat()?;
                self.expect(")")?;
                Ok(Term::Fuse(Box::new(x), Box::new(y), k, l))
            }
            "recover" => {
                self.expect("(")?;
                let b = self.expr()?;
                self.expect(",")?;
                let k = self.nat()?;
                self.expect(",")?;
                let l = self.nat()?;
                self.expect(",")?;
                let branch = if self.eat("first") {
                    Branch::First
                } else if self.eat("second") {
                    Branch::Second
                } else {
                    return Err(self.error(&["`first`", "`second`"]));
                };
                self.expect(")")?;
                Ok(b.recover(k, l, branch))
            }
            _ => unreachable!("keyword table"),
        }
    }

    fn transformation(&mut self) -> Result<Transformation> {
        self.expect("{")?;
        let mut pairs = Vec::new();
        if !self.eat("}") {
            loop {
                let i = self.nat()?;
                self.expect("->")?;
                pairs.push((i, self.nat()?));
                if self.eat("}") {
                    break;
                }
                if !self.eat(",") {
                    return Err(self.error(&["`,`", "`}`"]));
                }
            }
        }
        Ok(Transformation::new(pairs))
    }

    /// `{i:v, ...}`.
    pub fn point(&mut self) -> Result<Point> {
        self.expect("{")?;
        let mut point = Point::zero();
        if self.eat("}") {
            return Ok(point);
        }
        loop {
            let i = self.nat()?;
            self.expect(":")?;
            point.set(i, self.rational()?);
            if self.eat("}") {
                return Ok(point);
            }
            if !self.eat(",") {
                return Err(self.error(&["`,`", "`}`"]));
            }
        }
    }
}

pub fn parse_expr(src: &str) -> Result<Term> {
    let mut p = Parser::new(src);
    let t = p.expr()?;
    p.finish()?;
    Ok(t)
}

pub fn parse_point(src: &str) -> Result<Point> {
    let mut p = Parser::new(src);
    let point = p.point()?;
    p.finish()?;
    Ok(point)
}

/// Splits on commas outside brackets.
pub fn split_top_level(src: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in src.char_indices() {
        match c {
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(src[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(src[start..].trim());
    parts.retain(|p| !p.is_empty());
    parts
}

#[cfg(test)]
mod tests {
    use super::*;
    use polyadic_core::constraint::{frac, int};

    #[test]
    fn grammar_shapes() {
        assert_eq!(parse_expr("~1").unwrap(), Term::One.not());
        let t = parse_expr("s[0,1](H(3; 0:1 1:2 | 0))").unwrap();
        assert_eq!(t.to_string(), "s[0,1](H(3; 0:1 1:2 | 0))");
        assert_eq!(parse_expr("a(-1/2)").unwrap(), Term::Sum(frac(-1, 2)));
        assert_eq!(
            parse_expr("[0 ; | 1]").unwrap(),
            Term::Atom(Atom::sum_equals(int(0)))
        );
    }

    #[test]
    fn precedence() {
        let t = parse_expr("x + y * ~z").unwrap();
        let expected = Term::var("x").join(Term::var("y").meet(Term::var("z").not()));
        assert_eq!(t, expected);
        assert_eq!(parse_expr("a & b | c").unwrap().to_string(), "a * b + c");
    }

    #[test]
    fn keywords_need_brackets() {
        assert_eq!(parse_expr("a").unwrap(), Term::var("a"));
        assert_eq!(parse_expr("@b").unwrap(), Term::var("b"));
        assert_eq!(parse_expr("s").unwrap(), Term::var("s"));
    }

    #[test]
    fn errors_carry_offsets() {
        let e = parse_expr("a(0) * ").unwrap_err();
        assert_eq!(e.offset, 7);
        assert_eq!(e.found, "end of input");
        let e = parse_expr("d(0 1)").unwrap_err();
        assert_eq!(e.offset, 4);
        assert!(e.expected.contains("`,`"));
        assert!(parse_expr("a(1/0)").is_err());
        assert!(parse_expr("x y").is_err());
    }

    #[test]
    fn points() {
        let p = parse_point("{0:2, 7:-3/4}").unwrap();
        assert_eq!(p.get(7), frac(-3, 4));
        assert_eq!(p.to_string(), "{0:2, 7:-3/4}");
        assert_eq!(parse_point("{}").unwrap(), Point::zero());
    }

    #[test]
    fn top_level_split() {
        assert_eq!(split_top_level("a(0), d(0,1) ,x"), ["a(0)", "d(0,1)", "x"]);
    }
}
