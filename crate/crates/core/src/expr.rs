//! Text syntax for Laurent polynomials and noncommutative polynomials.
//!
//! ```text
//! expr   := ('+'|'-')? term (('+'|'-') term)*
//! term   := factor (('*')? factor)*
//! factor := int ('/' int)? | 'q' ('^' '-'? int)? | '(' expr ')' ('^' int)? | gen ('^' int)?
//! gen    := x | y | z | nx | ny | nz | x2 | y2 | z2
//! ```
//!
//! Scalars commute with everything, so they may appear anywhere in a term.
//! A parenthesised group must be a scalar (a Laurent expression in `q`).

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::coeff::LaurentPoly;
use crate::error::{Error, Result};
use crate::ncpoly::{Alphabet, Gen, NCPoly, Word};
use crate::oracle::expand;

/// One term: a scalar coefficient times a sequence of powered generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermAst {
    pub coeff: LaurentPoly,
    pub factors: Vec<(Gen, u32)>,
}

/// A parsed expression, kept as written (no merging of terms or letters).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExprAst {
    pub terms: Vec<TermAst>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParseMode {
    /// Only letters of the given alphabet are accepted.
    Only(Alphabet),
    /// Letters of both alphabets; `nx, .., z2` are translated into `U` words.
    Translated,
    /// No generators at all.
    Scalar,
}

impl ExprAst {
    pub fn parse(src: &str, mode: ParseMode) -> Result<Self> {
        let tokens = tokenize(src)?;
        let mut p = Parser { tokens, pos: 0, mode };
        let ast = p.expr()?;
        match p.peek() {
            Tok::End => Ok(ast),
            t => Err(p.error(format!("unexpected {t}"))),
        }
    }

    pub fn to_ncpoly(&self, alphabet: Alphabet) -> Result<NCPoly> {
        let mut out = NCPoly::zero(alphabet);
        for t in &self.terms {
            let mut letters = Vec::new();
            for &(g, n) in &t.factors {
                if g.alphabet() != alphabet {
                    return Err(Error::AlphabetMismatch { expected: alphabet, found: g.alphabet() });
                }
                letters.extend(std::iter::repeat_n(g, n as usize));
            }
            out.add_term(Word::from_letters_unchecked(alphabet, letters), t.coeff.clone());
        }
        Ok(out)
    }

    /// Maps every term into `U`, substituting `nx = q(1 - yz)` and so on.
    pub fn to_translated(&self) -> NCPoly {
        let mut out = NCPoly::zero(Alphabet::U);
        for t in &self.terms {
            let mut prod = NCPoly::scalar(Alphabet::U, t.coeff.clone());
            for &(g, n) in &t.factors {
                let image = match g.alphabet() {
                    Alphabet::U => NCPoly::gen(g),
                    Alphabet::A => expand(g),
                };
                prod = prod * image.pow(n);
            }
            out = out + prod;
        }
        out
    }
}

impl fmt::Display for ExprAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "(0)");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({})", t.coeff)?;
            for (g, n) in &t.factors {
                if *n == 1 {
                    write!(f, "*{g}")?;
                } else {
                    write!(f, "*{g}^{n}")?;
                }
            }
        }
        Ok(())
    }
}

/// Parses an expression over one alphabet.
pub fn parse_expr(src: &str, alphabet: Alphabet) -> Result<NCPoly> {
    ExprAst::parse(src, ParseMode::Only(alphabet))?.to_ncpoly(alphabet)
}

/// Parses an expression that may mix both alphabets and returns its image
/// in `U`.
pub fn parse_translated(src: &str) -> Result<NCPoly> {
    Ok(ExprAst::parse(src, ParseMode::Translated)?.to_translated())
}

/// Parses a Laurent polynomial such as `q^2 - 1 + 1/2*q^-3`.
pub fn parse_laurent(src: &str) -> Result<LaurentPoly> {
    let ast = ExprAst::parse(src, ParseMode::Scalar)?;
    Ok(ast.terms.into_iter().map(|t| t.coeff).sum())
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "number `{n}`"),
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Plus => write!(f, "`+`"),
            Tok::Minus => write!(f, "`-`"),
            Tok::Star => write!(f, "`*`"),
            Tok::Slash => write!(f, "`/`"),
            Tok::Caret => write!(f, "`^`"),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
            Tok::End => write!(f, "end of input"),
        }
    }
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Int(src[start..i].parse().expect("digits"))));
                continue;
            }
            b'a'..=b'z' | b'A'..=b'Z' => {
                while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                out.push((start, Tok::Ident(src[start..i].to_ascii_lowercase())));
                continue;
            }
            _ => {
                return Err(Error::Syntax {
                    pos: start,
                    msg: format!("unexpected character `{}`", src[start..].chars().next().unwrap()),
                })
            }
        };
        out.push((start, tok));
        i += 1;
    }
    out.push((src.len(), Tok::End));
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Tok)>,
    pos: usize,
    mode: ParseMode,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].1
    }

    fn offset(&self) -> usize {
        self.tokens[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.tokens[self.pos].1.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error(&self, msg: String) -> Error {
        Error::Syntax { pos: self.offset(), msg }
    }

    fn expr(&mut self) -> Result<ExprAst> {
        let mut terms = Vec::new();
        let mut negative = match self.peek() {
            Tok::Minus => {
                self.bump();
                true
            }
            Tok::Plus => {
                self.bump();
                false
            }
            _ => false,
        };
        loop {
            let mut t = self.term()?;
            if negative {
                t.coeff = -t.coeff;
            }
            terms.push(t);
            negative = match self.peek() {
                Tok::Plus => false,
                Tok::Minus => true,
                _ => break,
            };
            self.bump();
        }
        Ok(ExprAst { terms })
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Tok::Int(_) | Tok::Ident(_) | Tok::LParen)
    }

    fn term(&mut self) -> Result<TermAst> {
        if !self.starts_factor() {
            let t = self.peek().clone();
            return Err(self.error(format!("expected a term, found {t}")));
        }
        let mut coeff = LaurentPoly::one();
        let mut factors = Vec::new();
        loop {
            self.factor(&mut coeff, &mut factors)?;
            if *self.peek() == Tok::Star {
                self.bump();
                if !self.starts_factor() {
                    let t = self.peek().clone();
                    return Err(self.error(format!("expected a factor after `*`, found {t}")));
                }
            } else if !self.starts_factor() {
                break;
            }
        }
        Ok(TermAst { coeff, factors })
    }

    fn int(&mut self) -> Result<BigInt> {
        match self.bump() {
            Tok::Int(n) => Ok(n),
            t => {
                self.pos -= usize::from(t != Tok::End);
                Err(self.error(format!("expected an integer, found {t}")))
            }
        }
    }

    fn small_int(&mut self, what: &str) -> Result<u32> {
        let at = self.offset();
        let n = self.int()?;
        n.to_u32().ok_or(Error::Syntax { pos: at, msg: format!("{what} {n} is too large") })
    }

    fn exponent(&mut self) -> Result<u32> {
        if *self.peek() != Tok::Caret {
            return Ok(1);
        }
        self.bump();
        self.small_int("exponent")
    }

    fn factor(&mut self, coeff: &mut LaurentPoly, factors: &mut Vec<(Gen, u32)>) -> Result<()> {
        let at = self.offset();
        match self.bump() {
            Tok::Int(n) => {
                let value = if *self.peek() == Tok::Slash {
                    self.bump();
                    let d = self.int()?;
                    if d.is_zero() {
                        return Err(Error::Syntax { pos: at, msg: "zero denominator".into() });
                    }
                    BigRational::new(n, d)
                } else {
                    BigRational::from_integer(n)
                };
                *coeff = coeff.scale(&value);
            }
            Tok::LParen => {
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    let t = self.peek().clone();
                    return Err(self.error(format!("expected `)`, found {t}")));
                }
                self.bump();
                if inner.terms.iter().any(|t| !t.factors.is_empty()) {
                    return Err(Error::Syntax { pos: at, msg: "a parenthesised group must be a scalar in q".into() });
                }
                let value: LaurentPoly = inner.terms.into_iter().map(|t| t.coeff).sum();
                let n = self.exponent()?;
                *coeff = &*coeff * &value.pow(n);
            }
            Tok::Ident(name) if name == "q" => {
                let k: i32 = if *self.peek() == Tok::Caret {
                    self.bump();
                    let negative = *self.peek() == Tok::Minus;
                    if negative {
                        self.bump();
                    }
                    let k = self.small_int("exponent")? as i32;
                    if negative {
                        -k
                    } else {
                        k
                    }
                } else {
                    1
                };
                *coeff = coeff.scale_monomial(&num_traits::One::one(), k);
            }
            Tok::Ident(name) => {
                let g = Gen::from_symbol(&name)
                    .ok_or(Error::Syntax { pos: at, msg: format!("unknown symbol `{name}`") })?;
                match self.mode {
                    ParseMode::Scalar => {
                        return Err(Error::Syntax {
                            pos: at,
                            msg: format!("generator `{name}` in a scalar expression"),
                        })
                    }
                    ParseMode::Only(al) if g.alphabet() != al => {
                        return Err(Error::AlphabetMismatch { expected: al, found: g.alphabet() })
                    }
                    _ => {}
                }
                let n = self.exponent()?;
                if n == 0 {
                    return Err(Error::Syntax { pos: at, msg: "generator powers must be positive".into() });
                }
                factors.push((g, n));
            }
            t => {
                self.pos -= usize::from(t != Tok::End);
                return Err(self.error(format!("unexpected {t}")));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::rat;
    use proptest::prelude::*;

    #[test]
    fn simple_words() {
        let p = parse_expr("y*x", Alphabet::U).unwrap();
        assert_eq!(p, NCPoly::word(Word::new(Alphabet::U, vec![Gen::Y, Gen::X]).unwrap()));
        let p = parse_expr("nx^2", Alphabet::A).unwrap();
        assert_eq!(p, NCPoly::word(Word::new(Alphabet::A, vec![Gen::NX, Gen::NX]).unwrap()));
    }

    #[test]
    fn nu_z_from_text() {
        let p = parse_expr("(q)*1 - (q)*x*y", Alphabet::U).unwrap();
        let mut expected = NCPoly::scalar(Alphabet::U, LaurentPoly::q());
        expected.add_term(Word::new(Alphabet::U, vec![Gen::X, Gen::Y]).unwrap(), -LaurentPoly::q());
        assert_eq!(p, expected);
    }

    #[test]
    fn whitespace_and_star_are_interchangeable() {
        assert_eq!(parse_expr("nx^2 * z2", Alphabet::A).unwrap(), parse_expr("nx nx z2", Alphabet::A).unwrap());
    }

    #[test]
    fn laurent_text() {
        let p = parse_laurent("q^2 - 1 + 1/2*q^-3").unwrap();
        assert_eq!(p, LaurentPoly::from_terms([(2, rat(1, 1)), (0, rat(-1, 1)), (-3, rat(1, 2))]));
        assert_eq!(parse_laurent("(q + q^-1)^2").unwrap(), parse_laurent("q^2 + 2 + q^-2").unwrap());
        assert_eq!(parse_laurent("-(q - 1)").unwrap(), parse_laurent("1 - q").unwrap());
    }

    #[test]
    fn errors_carry_positions() {
        assert!(matches!(parse_expr("x + ", Alphabet::U), Err(Error::Syntax { pos: 4, .. })));
        assert!(matches!(parse_expr("x $ y", Alphabet::U), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse_expr("x*(y)", Alphabet::U), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse_expr("w", Alphabet::U), Err(Error::Syntax { pos: 0, .. })));
        assert!(matches!(parse_expr("(q", Alphabet::U), Err(Error::Syntax { .. })));
        assert!(matches!(parse_laurent("x"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn wrong_alphabet() {
        assert_eq!(
            parse_expr("x*nx", Alphabet::U),
            Err(Error::AlphabetMismatch { expected: Alphabet::U, found: Alphabet::A })
        );
        assert!(matches!(parse_expr("x2", Alphabet::U), Err(Error::AlphabetMismatch { .. })));
        assert!(matches!(parse_expr("y", Alphabet::A), Err(Error::AlphabetMismatch { .. })));
    }

    #[test]
    fn translation_substitutes_nus() {
        let lhs = parse_translated("nz").unwrap();
        assert_eq!(lhs, parse_expr("q - q*x*y", Alphabet::U).unwrap());
        assert_eq!(parse_translated("x2 y").unwrap(), parse_expr("x^2*y", Alphabet::U).unwrap());
    }

    fn arb_ast(alphabet: Alphabet) -> impl Strategy<Value = ExprAst> {
        let letters = alphabet.letters().to_vec();
        let coeff = prop::collection::vec((-4i32..5, -6i64..7, 1i64..4), 0..4)
            .prop_map(|ts| LaurentPoly::from_terms(ts.into_iter().map(|(k, n, d)| (k, rat(n, d)))));
        let factor = (prop::sample::select(letters), 1u32..4);
        let term = (coeff, prop::collection::vec(factor, 0..4)).prop_map(|(coeff, factors)| TermAst { coeff, factors });
        prop::collection::vec(term, 1..5).prop_map(|terms| ExprAst { terms })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn ast_round_trip_u(ast in arb_ast(Alphabet::U)) {
            let printed = ast.to_string();
            prop_assert_eq!(ExprAst::parse(&printed, ParseMode::Only(Alphabet::U)).unwrap(), ast);
        }

        #[test]
        fn ast_round_trip_a(ast in arb_ast(Alphabet::A)) {
            let printed = ast.to_string();
            prop_assert_eq!(ExprAst::parse(&printed, ParseMode::Only(Alphabet::A)).unwrap(), ast);
        }
    }
}
