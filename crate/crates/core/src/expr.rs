//! Surface syntax for tensor expressions.
//!
//! ```text
//! sum     := term (('+' | '-') term)*
//! term    := '-' term | product
//! product := wedge (('*' | '.') wedge)*
//! wedge   := atom ('^' atom)*
//! atom    := rational | e1..e9 | J1..J3 | C | '(' sum ')'
//! ```
//!
//! `^` binds tighter than `*`, so `e1^e2*e3` is `(e1∧e2)⊗e3`. A chain
//! `a^b^c` is the single blade `a∧b∧c`. `.` is an alias for `*`, which makes
//! printed elements such as `1/2*e1.e2 - 1/2*e2.e1` parse back unchanged.

use std::fmt;

use crate::freealg::{wedge, Element, Word};
use crate::geometry::BivectorTransform;
use crate::scalar::Rational;
use crate::Error;

/// Parsed expression tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Number(Rational),
    Vector(u8),
    Generator(u8),
    Casimir,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Wedge(Vec<Expr>),
}

/// How generator letters are interpreted.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Letters {
    /// `e_i` are basis vectors; `J_p` and `C` expand through `J_p = ½ Σ ε_abp e_a ∧ e_b`.
    Vectors,
    /// `J_p` are the letters of `T(so(3))`; `C = Σ J_p J_p`; `e_i` is rejected.
    Generators,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Number(Rational),
    Vector(u8),
    Generator(u8),
    Casimir,
    Plus,
    Minus,
    Star,
    Caret,
    Open,
    Close,
}

fn parse_error(position: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        position,
        message: message.into(),
    }
}

fn tokenize(src: &str) -> Result<Vec<(usize, Token)>, Error> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
                continue;
            }
            '+' => out.push((start, Token::Plus)),
            '-' => out.push((start, Token::Minus)),
            '*' | '.' => out.push((start, Token::Star)),
            '^' => out.push((start, Token::Caret)),
            '(' => out.push((start, Token::Open)),
            ')' => out.push((start, Token::Close)),
            'C' => out.push((start, Token::Casimir)),
            'e' | 'J' => {
                let Some(d) = bytes.get(i + 1).filter(|b| b.is_ascii_digit()) else {
                    return Err(parse_error(start, format!("expected an index after `{c}`")));
                };
                if bytes.get(i + 2).is_some_and(u8::is_ascii_digit) {
                    return Err(parse_error(start, "indices are single digits 1..9"));
                }
                let idx = d - b'0';
                if idx == 0 {
                    return Err(parse_error(start + 1, "indices start at 1"));
                }
                if c == 'J' {
                    if idx > 3 {
                        return Err(parse_error(start + 1, "generators are J1, J2, J3"));
                    }
                    out.push((start, Token::Generator(idx)));
                } else {
                    out.push((start, Token::Vector(idx)));
                }
                i += 2;
                continue;
            }
            d if d.is_ascii_digit() => {
                let mut j = i;
                while j < bytes.len() && bytes[j].is_ascii_digit() {
                    j += 1;
                }
                if j < bytes.len() && bytes[j] == b'/' {
                    j += 1;
                    let den = j;
                    while j < bytes.len() && bytes[j].is_ascii_digit() {
                        j += 1;
                    }
                    if den == j {
                        return Err(parse_error(den, "expected a denominator"));
                    }
                }
                let text = &src[i..j];
                let value: Rational = text
                    .parse()
                    .map_err(|_| parse_error(start, format!("bad number `{text}`")))?;
                out.push((start, Token::Number(value)));
                i = j;
                continue;
            }
            other => return Err(parse_error(start, format!("unexpected character `{other}`"))),
        }
        i += 1;
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn sum(&mut self) -> Result<Expr, Error> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, Error> {
        if self.peek() == Some(&Token::Minus) {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.term()?)));
        }
        self.product()
    }

    fn product(&mut self) -> Result<Expr, Error> {
        let mut lhs = self.wedge()?;
        while self.peek() == Some(&Token::Star) {
            self.pos += 1;
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.wedge()?));
        }
        Ok(lhs)
    }

    fn wedge(&mut self) -> Result<Expr, Error> {
        let first = self.atom()?;
        if self.peek() != Some(&Token::Caret) {
            return Ok(first);
        }
        let mut factors = vec![first];
        while self.peek() == Some(&Token::Caret) {
            self.pos += 1;
            factors.push(self.atom()?);
        }
        Ok(Expr::Wedge(factors))
    }

    fn atom(&mut self) -> Result<Expr, Error> {
        let offset = self.offset();
        let Some(tok) = self.peek().cloned() else {
            return Err(parse_error(offset, "unexpected end of input"));
        };
        self.pos += 1;
        match tok {
            Token::Number(r) => Ok(Expr::Number(r)),
            Token::Vector(i) => Ok(Expr::Vector(i)),
            Token::Generator(p) => Ok(Expr::Generator(p)),
            Token::Casimir => Ok(Expr::Casimir),
            Token::Open => {
                let inner = self.sum()?;
                if self.peek() != Some(&Token::Close) {
                    return Err(parse_error(self.offset(), "expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            other => Err(parse_error(offset, format!("unexpected {}", describe(&other)))),
        }
    }
}

fn describe(t: &Token) -> &'static str {
    match t {
        Token::Plus => "`+`",
        Token::Minus => "`-`",
        Token::Star => "product operator",
        Token::Caret => "`^`",
        Token::Close => "`)`",
        _ => "token",
    }
}

/// Parses an expression tree.
pub fn parse(src: &str) -> Result<Expr, Error> {
    let tokens = tokenize(src)?;
    if tokens.is_empty() {
        return Err(parse_error(0, "empty expression"));
    }
    let mut p = Parser {
        tokens,
        pos: 0,
        end: src.len(),
    };
    let e = p.sum()?;
    if p.pos < p.tokens.len() {
        return Err(parse_error(p.offset(), "trailing input"));
    }
    Ok(e)
}

impl Expr {
    /// Interprets the tree in `T(V)`, `dim V = dim`.
    pub fn to_element(&self, dim: usize, letters: Letters) -> Result<Element, Error> {
        let rec = |e: &Expr| e.to_element(dim, letters);
        Ok(match self {
            Expr::Number(r) => Element::scalar(dim, r.clone()),
            Expr::Vector(i) => {
                if letters == Letters::Generators {
                    return Err(Error::Unsupported(format!(
                        "e{i} is not available in generator expressions"
                    )));
                }
                if *i as usize > dim {
                    return Err(Error::DimensionMismatch {
                        left: *i as usize,
                        right: dim,
                    });
                }
                Element::basis(dim, *i)
            }
            Expr::Generator(p) => match letters {
                Letters::Generators => Element::word(3, &[*p]),
                Letters::Vectors => {
                    require_three(dim)?;
                    BivectorTransform::weak().generator(*p)
                }
            },
            Expr::Casimir => match letters {
                Letters::Generators => Element::from_terms(
                    3,
                    (1..=3u8).map(|p| (Word::new(&[p, p]), Rational::one())),
                ),
                Letters::Vectors => {
                    require_three(dim)?;
                    BivectorTransform::weak().casimir()
                }
            },
            Expr::Neg(a) => -&rec(a)?,
            Expr::Add(a, b) => rec(a)?.try_add(&rec(b)?)?,
            Expr::Sub(a, b) => rec(a)?.try_add(&-&rec(b)?)?,
            Expr::Mul(a, b) => rec(a)?.concat(&rec(b)?)?,
            Expr::Wedge(fs) => {
                let args = fs.iter().map(rec).collect::<Result<Vec<_>, _>>()?;
                wedge(&args)?
            }
        })
    }
}

fn require_three(dim: usize) -> Result<(), Error> {
    if dim != 3 {
        return Err(Error::Unsupported(
            "J and C are defined over three-dimensional Euclidean space".into(),
        ));
    }
    Ok(())
}

/// Parses into `T(V)` with `e_i` basis vectors.
pub fn parse_element(src: &str, dim: usize) -> Result<Element, Error> {
    parse(src)?.to_element(dim, Letters::Vectors)
}

/// Parses a `J`-word expression into `T(so(3))`.
pub fn parse_generators(src: &str) -> Result<Element, Error> {
    parse(src)?.to_element(3, Letters::Generators)
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Number(r) => write!(f, "{r}"),
            Expr::Vector(i) => write!(f, "e{i}"),
            Expr::Generator(p) => write!(f, "J{p}"),
            Expr::Casimir => write!(f, "C"),
            Expr::Neg(a) => write!(f, "-({a})"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "({a} * {b})"),
            Expr::Wedge(fs) => {
                let parts: Vec<String> = fs.iter().map(|x| format!("({x})")).collect();
                write!(f, "{}", parts.join("^"))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quotient::basis_wedge;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn precedence() {
        let a = parse_element("e1^e2*e3", 3).unwrap();
        assert_eq!(a, &basis_wedge(3, &[1, 2]) * &Element::basis(3, 3));
        let b = parse_element("-e1*e2 + e3", 3).unwrap();
        assert_eq!(b, &(-&Element::word(3, &[1, 2])) + &Element::basis(3, 3));
        let c = parse_element("e1^e2^e3", 3).unwrap();
        assert_eq!(c, basis_wedge(3, &[1, 2, 3]));
        let d = parse_element("e1*e2*e3", 3).unwrap();
        assert_eq!(d, Element::word(3, &[1, 2, 3]));
        let e = parse_element("1/2*(e1 - e2)", 3).unwrap();
        assert_eq!(e, (&Element::basis(3, 1) - &Element::basis(3, 2)).scale(&q(1, 2)));
    }

    #[test]
    fn generators_and_casimir() {
        let j3 = parse_element("J3", 3).unwrap();
        assert_eq!(j3, basis_wedge(3, &[1, 2]));
        assert_eq!(
            parse_element("C", 3).unwrap(),
            BivectorTransform::weak().casimir()
        );
        assert_eq!(parse_generators("J2*J1").unwrap(), Element::word(3, &[2, 1]));
        assert!(parse_generators("e1").is_err());
        assert!(parse_element("J1", 4).is_err());
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(
            parse("e1 + * e2").unwrap_err(),
            Error::Parse {
                position: 5,
                message: "unexpected product operator".into()
            }
        );
        assert!(matches!(parse("(e1"), Err(Error::Parse { position: 3, .. })));
        assert!(matches!(parse("e0"), Err(Error::Parse { position: 1, .. })));
        assert!(matches!(parse("e1 $"), Err(Error::Parse { position: 3, .. })));
        assert!(matches!(parse(""), Err(Error::Parse { position: 0, .. })));
        assert!(matches!(parse("1/"), Err(Error::Parse { position: 2, .. })));
        assert!(matches!(parse_element("e4", 3), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(parse_element("e1^(e1*e2)", 3), Err(Error::Degree(_))));
    }

    #[test]
    fn printed_examples_parse_back() {
        for s in ["0", "1", "-3/4", "e2", "1/2*e1.e2 - 1/2*e2.e1", "-e1 + 2*e3.e3.e1"] {
            let x = parse_element(s, 3).unwrap();
            assert_eq!(x.to_string(), s);
        }
    }

    fn arb_element() -> impl Strategy<Value = Element> {
        proptest::collection::vec(
            (
                proptest::collection::vec(1u8..=3, 0..=4),
                -9i64..=9,
                1i64..=6,
            ),
            0..6,
        )
        .prop_map(|terms| {
            Element::from_terms(
                3,
                terms
                    .into_iter()
                    .map(|(w, n, d)| (Word::new(&w), Rational::new(n, d))),
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn parse_print_round_trip(x in arb_element()) {
            prop_assert_eq!(parse_element(&x.to_string(), 3).unwrap(), x.clone());
            prop_assert_eq!(parse_generators(&x.display_with("J").to_string()).unwrap(), x);
        }
    }
}
