//! Edge expressions: a small recursive-descent parser for
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := RATIONAL | EDGE | 'e(' VERTEX ',' INT ')'
//!         | 'E(' VERTEX ',' VERTEX ',' INT ',' INT ')' | '(' expr ')'
//! ```
//!
//! Identifiers may be double-quoted; vertex arguments may also be written
//! bare when they contain no whitespace, commas, parentheses or quotes.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::LayeredGraph;
use crate::ncpoly::{e_of_vertex, NcPoly, Scalar};
use crate::relations::e_sum;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Rational(Scalar),
    Edge(String),
    /// `e(v, k)`
    Coeff { vertex: String, k: u32 },
    /// `E(v, u, k, l)`
    ESum { v: String, u: String, k: u32, l: u32 },
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
}

impl Expr {
    /// Evaluates in `T(E)`.
    pub fn to_poly(&self, g: &LayeredGraph) -> Result<NcPoly> {
        Ok(match self {
            Expr::Rational(c) => NcPoly::constant(g, c.clone()),
            Expr::Edge(id) => NcPoly::edge(g, g.edge(id)?),
            Expr::Coeff { vertex, k } => e_of_vertex(g, g.vertex(vertex)?, *k),
            Expr::ESum { v, u, k, l } => e_sum(g, g.vertex(v)?, g.vertex(u)?, *k, *l)?,
            Expr::Neg(a) => a.to_poly(g)?.neg(),
            Expr::Add(a, b) => a.to_poly(g)?.try_add(&b.to_poly(g)?)?,
            Expr::Sub(a, b) => a.to_poly(g)?.try_sub(&b.to_poly(g)?)?,
            Expr::Mul(a, b) => a.to_poly(g)?.try_mul(&b.to_poly(g)?)?,
        })
    }

    fn is_additive(&self) -> bool {
        matches!(self, Expr::Add(..) | Expr::Sub(..) | Expr::Neg(..))
    }

    fn fmt_factor(&self, f: &mut fmt::Formatter<'_>, parens: bool) -> fmt::Result {
        if parens {
            write!(f, "({self})")
        } else {
            write!(f, "{self}")
        }
    }
}

fn is_bare_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn is_bare_vertex(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| !c.is_whitespace() && !matches!(c, ',' | '(' | ')' | '"'))
}

fn quoted(s: &str) -> String {
    let mut out = String::from('"');
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

fn edge_token(id: &str) -> String {
    if is_bare_ident(id) {
        id.to_string()
    } else {
        quoted(id)
    }
}

fn vertex_token(id: &str) -> String {
    if is_bare_vertex(id) {
        id.to_string()
    } else {
        quoted(id)
    }
}

/// Renders with the parentheses needed to parse back to the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Rational(c) => {
                if c.is_negative() {
                    write!(f, "(-{})", c.abs())
                } else {
                    write!(f, "{c}")
                }
            }
            Expr::Edge(id) => f.write_str(&edge_token(id)),
            Expr::Coeff { vertex, k } => write!(f, "e({},{k})", vertex_token(vertex)),
            Expr::ESum { v, u, k, l } => {
                write!(f, "E({},{},{k},{l})", vertex_token(v), vertex_token(u))
            }
            Expr::Neg(a) => {
                f.write_str("-")?;
                a.fmt_factor(f, a.is_additive())
            }
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                write!(f, "{a}")?;
                f.write_str(if matches!(self, Expr::Add(..)) { " + " } else { " - " })?;
                b.fmt_factor(f, b.is_additive())
            }
            Expr::Mul(a, b) => {
                a.fmt_factor(f, a.is_additive())?;
                f.write_str("*")?;
                b.fmt_factor(f, b.is_additive() || matches!(**b, Expr::Mul(..)))
            }
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    graph: &'a LayeredGraph,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected {c:?}"))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut acc = if self.eat('-') {
            Expr::Neg(Box::new(self.term()?))
        } else {
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
            } else if self.eat('-') {
                acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            acc = Expr::Mul(Box::new(acc), Box::new(self.factor()?));
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Expr> {
        match self.peek() {
            None => self.err("unexpected end of input"),
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(')')?;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => self.rational(),
            Some('"') => {
                let start = self.pos;
                let id = self.quoted()?;
                self.edge(id, start)
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let start = self.pos;
                let id = self.ident();
                match id.as_str() {
                    "e" if self.peek() == Some('(') => self.coeff(),
                    "E" if self.peek() == Some('(') => self.esum(),
                    _ => self.edge(id, start),
                }
            }
            Some(c) => self.err(format!("unexpected {c:?}")),
        }
    }

    fn edge(&mut self, id: String, start: usize) -> Result<Expr> {
        if self.graph.edge(&id).is_err() {
            return Err(Error::UnknownSymbol { pos: start, name: id });
        }
        Ok(Expr::Edge(id))
    }

    fn ident(&mut self) -> String {
        let rest = &self.src[self.pos..];
        let len = rest
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(rest.len());
        self.pos += len;
        rest[..len].to_string()
    }

    fn quoted(&mut self) -> Result<String> {
        self.expect('"')?;
        let mut out = String::new();
        let mut chars = self.src[self.pos..].char_indices();
        while let Some((i, c)) = chars.next() {
            match c {
                '"' => {
                    self.pos += i + 1;
                    return Ok(out);
                }
                '\\' => match chars.next() {
                    Some((_, esc)) => out.push(esc),
                    None => break,
                },
                _ => out.push(c),
            }
        }
        self.pos = self.src.len();
        self.err("unterminated string")
    }

    fn digits(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let len = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
        if len == 0 {
            return self.err("expected a number");
        }
        self.pos += len;
        Ok(&rest[..len])
    }

    fn rational(&mut self) -> Result<Expr> {
        let num: BigInt = self.digits()?.parse().expect("digits");
        let den: BigInt = if self.eat('/') {
            self.digits()?.parse().expect("digits")
        } else {
            BigInt::from(1)
        };
        if den.is_zero() {
            return self.err("zero denominator");
        }
        Ok(Expr::Rational(Scalar::new(num, den)))
    }

    fn small_int(&mut self) -> Result<u32> {
        let start = self.pos;
        let text = self.digits()?;
        text.parse::<u32>().map_err(|_| Error::BadMultiplicity {
            vertex: format!("<offset {start}>"),
            mult: u32::MAX,
            level: 0,
        })
    }

    fn vertex(&mut self) -> Result<String> {
        let start = {
            self.skip_ws();
            self.pos
        };
        let id = if self.peek() == Some('"') {
            self.quoted()?
        } else {
            let rest = &self.src[self.pos..];
            let len = rest
                .find(|c: char| c.is_whitespace() || matches!(c, ',' | '(' | ')' | '"'))
                .unwrap_or(rest.len());
            if len == 0 {
                return self.err("expected a vertex");
            }
            self.pos += len;
            rest[..len].to_string()
        };
        if self.graph.vertex(&id).is_err() {
            return Err(Error::UnknownSymbol { pos: start, name: id });
        }
        Ok(id)
    }

    fn coeff(&mut self) -> Result<Expr> {
        self.expect('(')?;
        let vertex = self.vertex()?;
        self.expect(',')?;
        let k = self.small_int()?;
        self.expect(')')?;
        Ok(Expr::Coeff { vertex, k })
    }

    fn esum(&mut self) -> Result<Expr> {
        self.expect('(')?;
        let v = self.vertex()?;
        self.expect(',')?;
        let u = self.vertex()?;
        self.expect(',')?;
        let k = self.small_int()?;
        self.expect(',')?;
        let l = self.small_int()?;
        self.expect(')')?;
        let g = self.graph;
        let (vv, uu) = (g.vertex(&v)?, g.vertex(&u)?);
        if !g.reachable(vv, uu) || g.level(vv) != g.level(uu) + k {
            return Err(Error::NotComposable { v, u, k });
        }
        Ok(Expr::ESum { v, u, k, l })
    }
}

/// Parses `text` against the symbols of `g`.
pub fn parse_expr(text: &str, g: &LayeredGraph) -> Result<Expr> {
    let mut p = Parser {
        src: text,
        pos: 0,
        graph: g,
    };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(e)
}

/// Parses and evaluates in one step.
pub fn parse_poly(text: &str, g: &LayeredGraph) -> Result<NcPoly> {
    parse_expr(text, g)?.to_poly(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::GAMMA2;
    use crate::library::boolean_lattice;
    use crate::ncpoly::{scalar, Word};

    fn gamma2() -> LayeredGraph {
        LayeredGraph::parse(GAMMA2).unwrap()
    }

    #[test]
    fn evaluates_examples() {
        let g = gamma2();
        let p = parse_poly("e({12},1)*a1 - e({12},2)", &g).unwrap();
        assert_eq!(p, NcPoly::word(&g, Word::from_ids(&g, &["a1", "a1"]).unwrap()));
        let rel = parse_poly("b1 + a1 - b2 - a2", &g).unwrap();
        assert_eq!(rel.render(&g), "a1 - a2 + b1 - b2");
        assert!(parse_poly("e({12},3)", &g).unwrap().is_zero());
        let p = parse_poly(" 3/6 * ( a1 + 1 ) ", &g).unwrap();
        assert_eq!(p.render(&g), "1/2 + 1/2·a1");
        assert_eq!(parse_poly("-a1", &g).unwrap(), NcPoly::edge(&g, g.edge("a1").unwrap()).neg());
        assert_eq!(
            parse_poly("E({12},{1},1,1)", &g).unwrap(),
            NcPoly::monomial(&g, scalar(-1), Word::from_ids(&g, &["a1", "a1"]).unwrap())
        );
    }

    #[test]
    fn quoted_identifiers() {
        let g = boolean_lattice(2).unwrap();
        let p = parse_poly("e(\"{1,2}\", 2) - x_1 * \"x1_2\"", &g).unwrap();
        assert!(!p.is_zero());
        assert!(parse_poly("e({}, 0)", &g).unwrap() == NcPoly::one(&g));
    }

    #[test]
    fn errors() {
        let g = gamma2();
        assert!(matches!(parse_expr("a1 +", &g), Err(Error::Syntax { .. })));
        assert!(matches!(parse_expr("(a1", &g), Err(Error::Syntax { .. })));
        assert!(matches!(parse_expr("a1 a2", &g), Err(Error::Syntax { pos: 3, .. })));
        assert!(matches!(parse_expr("1/0", &g), Err(Error::Syntax { .. })));
        assert!(matches!(
            parse_expr("zz + a1", &g),
            Err(Error::UnknownSymbol { pos: 0, .. })
        ));
        assert!(matches!(parse_expr("e(nope,1)", &g), Err(Error::UnknownSymbol { .. })));
        assert!(matches!(
            parse_expr("E({12},{1},2,0)", &g),
            Err(Error::NotComposable { .. })
        ));
        assert!(matches!(
            parse_expr("e({12},99999999999)", &g),
            Err(Error::BadMultiplicity { .. })
        ));
    }

    #[test]
    fn render_round_trip() {
        let g = boolean_lattice(2).unwrap();
        let golden = [
            "x_1",
            "1/2*x_1 - (x_2 - x1_2)",
            "-(x_1 + x_2)*e(\"{1,2}\",2)",
            "x_1*(x_2*x_1)",
            "E(\"{1,2}\",{1},1,3) + e({},0)",
            "(x_1 - 3)*(x_2 + 1) - -x_1",
        ];
        for text in golden.iter().filter(|t| !t.contains("- -")) {
            let e = parse_expr(text, &g).unwrap();
            let again = parse_expr(&e.to_string(), &g).unwrap();
            assert_eq!(again, e, "{text} -> {e}");
        }
        let neg = Expr::Mul(
            Box::new(Expr::Rational(scalar(-2))),
            Box::new(Expr::Edge("x_1".into())),
        );
        let again = parse_expr(&neg.to_string(), &g).unwrap();
        assert_eq!(again.to_poly(&g).unwrap(), neg.to_poly(&g).unwrap());
    }
}
