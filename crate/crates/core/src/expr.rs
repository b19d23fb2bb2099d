//! A small language for block tables.
//!
//! ```text
//! @ section-name
//! {(0,0),(1,i),(2,2i)}            i in [1,t-1] \ {t/2-1,t/2}
//! {(0,0),(2,5+2i),(inf,(3m+5)/2+i)} i in [0,(3m-23)/4] ~ 2 mod 3
//! {i,i+s}                         i in [1,s/2-1]
//! ```
//!
//! Expressions are linear in the parameters and the index `i`; juxtaposition means
//! multiplication (`3t/2` is `(3·t)/2`) and every division must be exact. A range may drop
//! listed indices (`\ {..}`) or a residue class (`~ r mod q`). `#` starts a comment.

use std::collections::HashMap;

use crate::error::{ForgeError, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(i64),
    Ident(String),
    Sym(char),
}

fn lex(src: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let cs: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let mut v: i64 = 0;
            while i < cs.len() && cs[i].is_ascii_digit() {
                v = v * 10 + cs[i].to_digit(10).unwrap() as i64;
                i += 1;
            }
            out.push(Tok::Num(v));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < cs.len() && cs[i].is_ascii_alphabetic() {
                i += 1;
            }
            let word: String = cs[start..i].iter().collect();
            // `2mi` never occurs, but `mod`, `in` and `inf` are words of their own.
            if matches!(word.as_str(), "in" | "inf" | "mod") || word.len() == 1 {
                out.push(Tok::Ident(word));
            } else {
                for ch in word.chars() {
                    out.push(Tok::Ident(ch.to_string()));
                }
            }
        } else if "+-*/(),{}[]\\~".contains(c) {
            out.push(Tok::Sym(c));
            i += 1;
        } else {
            return Err(ForgeError::Parse(format!("unexpected character {c:?} in {src:?}")));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(i64),
    Var(char),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
}

pub type Env = HashMap<char, i64>;

impl Expr {
    pub fn eval(&self, env: &Env) -> Result<i64> {
        Ok(match self {
            Expr::Num(v) => *v,
            Expr::Var(c) => *env.get(c).ok_or_else(|| ForgeError::Parse(format!("unbound variable {c}")))?,
            Expr::Add(a, b) => a.eval(env)? + b.eval(env)?,
            Expr::Sub(a, b) => a.eval(env)? - b.eval(env)?,
            Expr::Mul(a, b) => a.eval(env)? * b.eval(env)?,
            Expr::Neg(a) => -a.eval(env)?,
            Expr::Div(a, b) => {
                let (x, y) = (a.eval(env)?, b.eval(env)?);
                if y == 0 || x % y != 0 {
                    return Err(ForgeError::Parse(format!("inexact division {x}/{y} in {self:?}")));
                }
                x / y
            }
        })
    }
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, c: char) -> Result<()> {
        match self.next() {
            Some(Tok::Sym(s)) if s == c => Ok(()),
            other => Err(ForgeError::Parse(format!("expected {c:?}, found {other:?}"))),
        }
    }

    fn at_sym(&self, c: char) -> bool {
        matches!(self.peek(), Some(Tok::Sym(s)) if *s == c)
    }

    fn at_word(&self, w: &str) -> bool {
        matches!(self.peek(), Some(Tok::Ident(s)) if s == w)
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.at_sym('+') {
                self.pos += 1;
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.at_sym('-') {
                self.pos += 1;
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        loop {
            if self.at_sym('*') {
                self.pos += 1;
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
            } else if self.at_sym('/') {
                self.pos += 1;
                lhs = Expr::Div(Box::new(lhs), Box::new(self.factor()?));
            } else if self.at_sym('(') || matches!(self.peek(), Some(Tok::Ident(w)) if w.len() == 1) {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        match self.next() {
            Some(Tok::Num(v)) => Ok(Expr::Num(v)),
            Some(Tok::Ident(w)) if w.len() == 1 => Ok(Expr::Var(w.chars().next().unwrap())),
            Some(Tok::Sym('-')) => Ok(Expr::Neg(Box::new(self.factor()?))),
            Some(Tok::Sym('(')) => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            other => Err(ForgeError::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Row {
    Expr(Expr),
    Infinity,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Element {
    Point(Row, Expr),
    Scalar(Expr),
}

#[derive(Clone, Debug, PartialEq)]
pub struct IndexRange {
    pub lo: Expr,
    pub hi: Expr,
    pub except: Vec<Expr>,
    /// Drop indices with `i ≡ r (mod q)`.
    pub skip_class: Option<(Expr, Expr)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TableRow {
    pub elements: Vec<Element>,
    pub range: Option<IndexRange>,
}

/// A block after evaluation: points `(row, coord)` with `None` for `∞`, or scalars.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Evaluated {
    Points(Vec<(Option<i64>, i64)>),
    Scalars(Vec<i64>),
}

impl TableRow {
    pub fn parse(line: &str) -> Result<TableRow> {
        let mut p = Parser { toks: lex(line)?, pos: 0 };
        p.expect('{')?;
        let mut elements = Vec::new();
        loop {
            if p.at_sym('(') {
                // A point `(row, coord)` or a parenthesised scalar; decide on the comma.
                let save = p.pos;
                p.pos += 1;
                let row = if p.at_word("inf") {
                    p.pos += 1;
                    Some(Row::Infinity)
                } else {
                    Some(Row::Expr(p.expr()?))
                };
                if p.at_sym(',') {
                    p.pos += 1;
                    let coord = p.expr()?;
                    p.expect(')')?;
                    elements.push(Element::Point(row.unwrap(), coord));
                } else {
                    p.pos = save;
                    elements.push(Element::Scalar(p.expr()?));
                }
            } else {
                elements.push(Element::Scalar(p.expr()?));
            }
            if p.at_sym(',') {
                p.pos += 1;
            } else {
                break;
            }
        }
        p.expect('}')?;
        let range = if p.at_word("i") {
            p.pos += 1;
            if !p.at_word("in") {
                return Err(ForgeError::Parse(format!("expected `in` in {line:?}")));
            }
            p.pos += 1;
            p.expect('[')?;
            let lo = p.expr()?;
            p.expect(',')?;
            let hi = p.expr()?;
            p.expect(']')?;
            let mut except = Vec::new();
            let mut skip_class = None;
            if p.at_sym('\\') {
                p.pos += 1;
                p.expect('{')?;
                loop {
                    except.push(p.expr()?);
                    if p.at_sym(',') {
                        p.pos += 1;
                    } else {
                        break;
                    }
                }
                p.expect('}')?;
            }
            if p.at_sym('~') {
                p.pos += 1;
                let r = p.expr()?;
                if !p.at_word("mod") {
                    return Err(ForgeError::Parse(format!("expected `mod` in {line:?}")));
                }
                p.pos += 1;
                skip_class = Some((r, p.expr()?));
            }
            Some(IndexRange { lo, hi, except, skip_class })
        } else {
            None
        };
        if p.pos != p.toks.len() {
            return Err(ForgeError::Parse(format!("trailing input in {line:?}")));
        }
        let points = elements.iter().filter(|e| matches!(e, Element::Point(..))).count();
        if points != 0 && points != elements.len() {
            return Err(ForgeError::Parse(format!("mixed points and scalars in {line:?}")));
        }
        Ok(TableRow { elements, range })
    }

    fn indices(&self, env: &Env) -> Result<Vec<Option<i64>>> {
        let Some(r) = &self.range else { return Ok(vec![None]) };
        let (lo, hi) = (r.lo.eval(env)?, r.hi.eval(env)?);
        let except = r.except.iter().map(|e| e.eval(env)).collect::<Result<Vec<_>>>()?;
        let class = match &r.skip_class {
            Some((a, q)) => Some((a.eval(env)?, q.eval(env)?)),
            None => None,
        };
        Ok((lo..=hi)
            .filter(|i| !except.contains(i))
            .filter(|i| class.is_none_or(|(a, q)| i.rem_euclid(q) != a.rem_euclid(q)))
            .map(Some)
            .collect())
    }

    pub fn expand(&self, env: &Env) -> Result<Vec<Evaluated>> {
        let mut out = Vec::new();
        for idx in self.indices(env)? {
            let mut local = env.clone();
            if let Some(i) = idx {
                local.insert('i', i);
            }
            let mut pts = Vec::new();
            let mut scalars = Vec::new();
            for e in &self.elements {
                match e {
                    Element::Point(Row::Infinity, c) => pts.push((None, c.eval(&local)?)),
                    Element::Point(Row::Expr(r), c) => pts.push((Some(r.eval(&local)?), c.eval(&local)?)),
                    Element::Scalar(s) => scalars.push(s.eval(&local)?),
                }
            }
            out.push(if pts.is_empty() { Evaluated::Scalars(scalars) } else { Evaluated::Points(pts) });
        }
        Ok(out)
    }
}

/// Sections of a table file, in file order.
#[derive(Clone, Debug)]
pub struct Table {
    sections: Vec<(String, Vec<TableRow>)>,
}

impl Table {
    pub fn parse(src: &str) -> Result<Table> {
        let mut sections: Vec<(String, Vec<TableRow>)> = Vec::new();
        for (no, raw) in src.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            if let Some(name) = line.strip_prefix('@') {
                sections.push((name.trim().to_string(), Vec::new()));
                continue;
            }
            let row = TableRow::parse(line).map_err(|e| ForgeError::Parse(format!("line {}: {e}", no + 1)))?;
            match sections.last_mut() {
                Some((_, rows)) => rows.push(row),
                None => return Err(ForgeError::Parse(format!("line {}: row before any section", no + 1))),
            }
        }
        Ok(Table { sections })
    }

    pub fn section(&self, name: &str) -> Result<&[TableRow]> {
        self.sections
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, r)| r.as_slice())
            .ok_or_else(|| ForgeError::Parse(format!("missing table section {name}")))
    }

    pub fn expand(&self, names: &[&str], env: &Env) -> Result<Vec<Evaluated>> {
        let mut out = Vec::new();
        for name in names {
            for row in self.section(name)? {
                out.extend(row.expand(env)?);
            }
        }
        Ok(out)
    }
}

pub fn env(pairs: &[(char, i64)]) -> Env {
    pairs.iter().copied().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eval(s: &str, e: &Env) -> Result<i64> {
        let mut p = Parser { toks: lex(s)?, pos: 0 };
        let x = p.expr()?;
        assert_eq!(p.pos, p.toks.len(), "{s}");
        x.eval(e)
    }

    #[test]
    fn implicit_multiplication_and_division() {
        let e = env(&[('t', 10), ('m', 5), ('s', 4), ('i', 2)]);
        assert_eq!(eval("3t/2", &e).unwrap(), 15);
        assert_eq!(eval("2(t-1)/3+2i", &e).unwrap(), 10);
        assert_eq!(eval("(3m+7)/2+2i", &e).unwrap(), 15);
        assert_eq!(eval("9s/2+5+3i", &e).unwrap(), 29);
        assert_eq!(eval("i-s/2-1", &e).unwrap(), -1);
        assert!(eval("t/3", &e).is_err());
    }

    #[test]
    fn range_with_exclusions_and_class() {
        let e = env(&[('t', 8)]);
        let row = TableRow::parse("{(0,0),(1,i),(2,2i)} i in [1,t-1] \\ {t/2-1,t/2}").unwrap();
        let got = row.expand(&e).unwrap();
        assert_eq!(got.len(), 5);
        assert_eq!(got[0], Evaluated::Points(vec![(Some(0), 0), (Some(1), 1), (Some(2), 2)]));
        let row = TableRow::parse("{(0,0),(inf,i)} i in [0,7] ~ 2 mod 3").unwrap();
        assert_eq!(row.expand(&e).unwrap().len(), 6);
        let row = TableRow::parse("{i,i+s} i in [1,3]").unwrap();
        let got = row.expand(&env(&[('s', 5)])).unwrap();
        assert_eq!(got[2], Evaluated::Scalars(vec![3, 8]));
    }

    #[test]
    fn empty_range() {
        let row = TableRow::parse("{(0,0),(1,i)} i in [0,(m-13)/6]").unwrap();
        assert!(row.expand(&env(&[('m', 8)])).is_err());
        assert!(row.expand(&env(&[('m', 7)])).unwrap().is_empty());
        assert!(row.expand(&env(&[('m', 1)])).unwrap().is_empty());
    }

    #[test]
    fn parenthesised_scalar() {
        let row = TableRow::parse("{(s-1)/8,(15s-7)/8}").unwrap();
        assert_eq!(row.expand(&env(&[('s', 9)])).unwrap()[0], Evaluated::Scalars(vec![1, 16]));
    }

    #[test]
    fn sections() {
        let t = Table::parse("@ a\n{(0,0),(1,1)} # x\n@ b\n{(0,0),(2,t)}\n").unwrap();
        assert_eq!(t.expand(&["a", "b"], &env(&[('t', 3)])).unwrap().len(), 2);
        assert!(t.section("c").is_err());
    }
}
