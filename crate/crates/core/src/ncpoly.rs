//! Words over a generator alphabet and noncommutative polynomials with
//! [`LaurentPoly`] coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::coeff::{fmt_unsigned_monomial, LaurentPoly};
use crate::error::{Error, Result};

/// Generator symbols. `X, Y, Z` are the equitable generators of `U_q(sl2)`;
/// the remaining six letters spell words of the presented algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Gen {
    X,
    Y,
    Z,
    NX,
    NY,
    NZ,
    X2,
    Y2,
    Z2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Alphabet {
    /// `{x, y, z}`
    U,
    /// `{nx, ny, nz, x2, y2, z2}`
    A,
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Alphabet::U => write!(f, "U{{x,y,z}}"),
            Alphabet::A => write!(f, "A{{nx,ny,nz,x2,y2,z2}}"),
        }
    }
}

impl Alphabet {
    pub fn letters(self) -> &'static [Gen] {
        match self {
            Alphabet::U => &Gen::U_LETTERS,
            Alphabet::A => &Gen::A_LETTERS,
        }
    }
}

impl Gen {
    pub const U_LETTERS: [Gen; 3] = [Gen::X, Gen::Y, Gen::Z];
    pub const A_LETTERS: [Gen; 6] = [Gen::NX, Gen::NY, Gen::NZ, Gen::X2, Gen::Y2, Gen::Z2];

    pub fn alphabet(self) -> Alphabet {
        match self {
            Gen::X | Gen::Y | Gen::Z => Alphabet::U,
            _ => Alphabet::A,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Gen::X => "x",
            Gen::Y => "y",
            Gen::Z => "z",
            Gen::NX => "nx",
            Gen::NY => "ny",
            Gen::NZ => "nz",
            Gen::X2 => "x2",
            Gen::Y2 => "y2",
            Gen::Z2 => "z2",
        }
    }

    pub fn from_symbol(s: &str) -> Option<Gen> {
        Some(match s {
            "x" => Gen::X,
            "y" => Gen::Y,
            "z" => Gen::Z,
            "nx" => Gen::NX,
            "ny" => Gen::NY,
            "nz" => Gen::NZ,
            "x2" => Gen::X2,
            "y2" => Gen::Y2,
            "z2" => Gen::Z2,
            _ => return None,
        })
    }

    /// Position inside its own alphabet.
    pub fn index(self) -> usize {
        match self {
            Gen::X | Gen::NX => 0,
            Gen::Y | Gen::NY => 1,
            Gen::Z | Gen::NZ => 2,
            Gen::X2 => 3,
            Gen::Y2 => 4,
            Gen::Z2 => 5,
        }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// A finite word tagged with its alphabet. The empty word is the identity.
///
/// Words order by length first, then lexicographically by letter.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    alphabet: Alphabet,
    letters: Vec<Gen>,
}

impl Word {
    pub fn new(alphabet: Alphabet, letters: Vec<Gen>) -> Result<Self> {
        if let Some(g) = letters.iter().find(|g| g.alphabet() != alphabet) {
            return Err(Error::LetterNotInAlphabet(*g, alphabet));
        }
        Ok(Self { alphabet, letters })
    }

    /// Builds a word from letters that are known to share one alphabet.
    pub(crate) fn from_letters_unchecked(alphabet: Alphabet, letters: Vec<Gen>) -> Self {
        debug_assert!(letters.iter().all(|g| g.alphabet() == alphabet));
        Self { alphabet, letters }
    }

    pub fn empty(alphabet: Alphabet) -> Self {
        Self { alphabet, letters: Vec::new() }
    }

    pub fn letter(g: Gen) -> Self {
        Self { alphabet: g.alphabet(), letters: vec![g] }
    }

    /// Parses whitespace- or `*`-separated letters with optional powers,
    /// e.g. `nx^2 * z2`.
    pub fn parse(alphabet: Alphabet, src: &str) -> Result<Self> {
        let poly = crate::expr::parse_expr(src, alphabet)?;
        match poly.terms.iter().next() {
            Some((w, c)) if poly.terms.len() == 1 && c.is_one() => Ok(w.clone()),
            None if src.trim().is_empty() => Ok(Self::empty(alphabet)),
            _ => Err(Error::Invalid(format!("`{src}` is not a single word"))),
        }
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn letters(&self) -> &[Gen] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Result<Word> {
        check_alphabets(self.alphabet, other.alphabet)?;
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Ok(Word { alphabet: self.alphabet, letters })
    }

    /// Letters with runs collapsed to powers.
    pub fn runs(&self) -> Vec<(Gen, u32)> {
        let mut out: Vec<(Gen, u32)> = Vec::new();
        for &g in &self.letters {
            match out.last_mut() {
                Some((h, n)) if *h == g => *n += 1,
                _ => out.push((g, 1)),
            }
        }
        out
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.letters
            .len()
            .cmp(&other.letters.len())
            .then_with(|| self.letters.cmp(&other.letters))
            .then_with(|| self.alphabet.cmp(&other.alphabet))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (i, (g, n)) in self.runs().into_iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if n == 1 {
                write!(f, "{g}")?;
            } else {
                write!(f, "{g}^{n}")?;
            }
        }
        Ok(())
    }
}

fn check_alphabets(expected: Alphabet, found: Alphabet) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::AlphabetMismatch { expected, found })
    }
}

/// A finite linear combination of words over one alphabet.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NCPoly {
    pub(crate) alphabet: Alphabet,
    pub(crate) terms: BTreeMap<Word, LaurentPoly>,
}

impl NCPoly {
    pub fn zero(alphabet: Alphabet) -> Self {
        Self { alphabet, terms: BTreeMap::new() }
    }

    pub fn one(alphabet: Alphabet) -> Self {
        Self::scalar(alphabet, LaurentPoly::one())
    }

    pub fn scalar(alphabet: Alphabet, c: LaurentPoly) -> Self {
        Self::term(c, Word::empty(alphabet))
    }

    pub fn term(c: LaurentPoly, w: Word) -> Self {
        let mut p = Self::zero(w.alphabet());
        p.add_term(w, c);
        p
    }

    pub fn word(w: Word) -> Self {
        Self::term(LaurentPoly::one(), w)
    }

    pub fn gen(g: Gen) -> Self {
        Self::word(Word::letter(g))
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, LaurentPoly)>>(alphabet: Alphabet, terms: I) -> Result<Self> {
        let mut p = Self::zero(alphabet);
        for (w, c) in terms {
            check_alphabets(alphabet, w.alphabet())?;
            p.add_term(w, c);
        }
        Ok(p)
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending word order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &LaurentPoly)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> LaurentPoly {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn max_word_len(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }

    /// Adds `c * w`, dropping the term if it cancels.
    ///
    /// # Panics
    /// If `w` belongs to another alphabet.
    pub fn add_term(&mut self, w: Word, c: LaurentPoly) {
        assert_eq!(w.alphabet(), self.alphabet, "word {w} added to a polynomial over {}", self.alphabet);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn checked_add(&self, other: &NCPoly) -> Result<NCPoly> {
        check_alphabets(self.alphabet, other.alphabet)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &NCPoly) -> Result<NCPoly> {
        check_alphabets(self.alphabet, other.alphabet)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), -c);
        }
        Ok(out)
    }

    /// Bilinear extension of word concatenation.
    pub fn checked_mul(&self, other: &NCPoly) -> Result<NCPoly> {
        check_alphabets(self.alphabet, other.alphabet)?;
        let mut out = NCPoly::zero(self.alphabet);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                let mut letters = Vec::with_capacity(u.len() + v.len());
                letters.extend_from_slice(u.letters());
                letters.extend_from_slice(v.letters());
                out.add_term(Word::from_letters_unchecked(self.alphabet, letters), a * b);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &LaurentPoly) -> NCPoly {
        let mut out = NCPoly::zero(self.alphabet);
        if c.is_zero() {
            return out;
        }
        for (w, a) in &self.terms {
            out.add_term(w.clone(), a * c);
        }
        out
    }

    pub fn pow(&self, n: u32) -> NCPoly {
        let mut acc = NCPoly::one(self.alphabet);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Equality of canonical forms.
    pub fn checked_eq(&self, other: &NCPoly) -> Result<bool> {
        check_alphabets(self.alphabet, other.alphabet)?;
        Ok(self == other)
    }
}

impl Add<&NCPoly> for &NCPoly {
    type Output = NCPoly;
    /// # Panics
    /// On alphabet mismatch; use [`NCPoly::checked_add`] for a fallible version.
    fn add(self, rhs: &NCPoly) -> NCPoly {
        self.checked_add(rhs).expect("alphabet mismatch in NCPoly addition")
    }
}

impl Sub<&NCPoly> for &NCPoly {
    type Output = NCPoly;
    fn sub(self, rhs: &NCPoly) -> NCPoly {
        self.checked_sub(rhs).expect("alphabet mismatch in NCPoly subtraction")
    }
}

impl Mul<&NCPoly> for &NCPoly {
    type Output = NCPoly;
    fn mul(self, rhs: &NCPoly) -> NCPoly {
        self.checked_mul(rhs).expect("alphabet mismatch in NCPoly multiplication")
    }
}

forward_binop!(NCPoly, Add, add);
forward_binop!(NCPoly, Sub, sub);
forward_binop!(NCPoly, Mul, mul);

impl Neg for &NCPoly {
    type Output = NCPoly;
    fn neg(self) -> NCPoly {
        self.scale(&LaurentPoly::from_int(-1))
    }
}

impl Neg for NCPoly {
    type Output = NCPoly;
    fn neg(self) -> NCPoly {
        -&self
    }
}

/// Printing order for terms: longer words first, then ascending letters.
fn print_order(p: &NCPoly) -> Vec<(&Word, &LaurentPoly)> {
    let mut ts: Vec<_> = p.terms.iter().collect();
    ts.sort_by(|(a, _), (b, _)| b.len().cmp(&a.len()).then_with(|| a.letters().cmp(b.letters())));
    ts
}

impl fmt::Display for NCPoly {
    /// Terms print as `c*word`; non-monomial coefficients are parenthesised,
    /// except on the empty word where they are written out inline.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        let mut sign = |f: &mut fmt::Formatter<'_>, negative: bool| -> fmt::Result {
            let r = match (first, negative) {
                (true, true) => write!(f, "-"),
                (true, false) => Ok(()),
                (false, true) => write!(f, " - "),
                (false, false) => write!(f, " + "),
            };
            first = false;
            r
        };
        for (w, c) in print_order(self) {
            if w.is_empty() {
                for (k, a) in c.terms() {
                    sign(f, a.is_negative())?;
                    fmt_unsigned_monomial(f, a, k)?;
                }
            } else if let Some((a, k)) = c.as_monomial() {
                sign(f, a.is_negative())?;
                if !(k == 0 && a.abs() == num_traits::One::one()) {
                    fmt_unsigned_monomial(f, a, k)?;
                    write!(f, "*")?;
                }
                write!(f, "{w}")?;
            } else {
                sign(f, false)?;
                write!(f, "({c})*{w}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_expr;
    use proptest::prelude::*;

    fn u(s: &str) -> NCPoly {
        parse_expr(s, Alphabet::U).unwrap()
    }

    fn a(s: &str) -> NCPoly {
        parse_expr(s, Alphabet::A).unwrap()
    }

    #[test]
    fn product_of_letters() {
        let p = NCPoly::gen(Gen::X) * NCPoly::gen(Gen::Y);
        assert_eq!(p.len(), 1);
        let w = Word::new(Alphabet::U, vec![Gen::X, Gen::Y]).unwrap();
        assert!(p.coeff(&w).is_one());
    }

    #[test]
    fn identity_word_is_neutral() {
        let p = u("(q)*1 - (q)*y*z");
        assert_eq!(&p * &NCPoly::one(Alphabet::U), p);
        assert_eq!(&NCPoly::one(Alphabet::U) * &p, p);
    }

    #[test]
    fn square_of_nu_z_before_normalisation() {
        // (q - q xy)^2 expanded bilinearly by hand.
        let nz = u("q - q*x*y");
        assert_eq!(nz.pow(2), u("(q^2) - (2*q^2)*x*y + (q^2)*x*y*x*y"));
    }

    #[test]
    fn equality_is_structural() {
        let p = u("x*y");
        assert!(p.checked_eq(&p).unwrap());
        assert!(!u("x*y").checked_eq(&u("y*x")).unwrap());
        // Equal in U_q(sl2), but not as raw polynomials.
        assert!(!u("(q)*1 - (q)*y*z").checked_eq(&u("(q^-1)*1 - (q^-1)*z*y")).unwrap());
    }

    #[test]
    fn alphabets_do_not_mix() {
        let err = u("x").checked_mul(&a("nx")).unwrap_err();
        assert_eq!(err, Error::AlphabetMismatch { expected: Alphabet::U, found: Alphabet::A });
        assert!(u("x").checked_add(&a("nx")).is_err());
        assert!(u("x").checked_eq(&a("nx")).is_err());
        assert!(Word::new(Alphabet::U, vec![Gen::X, Gen::NX]).is_err());
    }

    #[test]
    fn word_ordering() {
        let w = |s: &str| Word::parse(Alphabet::U, s).unwrap();
        assert!(w("z") < w("x x"));
        assert!(w("x y") < w("x z"));
        assert!(w("x z") < w("y x"));
        let a = |s: &str| Word::parse(Alphabet::A, s).unwrap();
        assert!(a("nz") < a("x2"));
        assert_eq!(a("nx^2 * z2").letters(), &[Gen::NX, Gen::NX, Gen::Z2]);
    }

    #[test]
    fn printing() {
        assert_eq!(u("y*x").to_string(), "y*x");
        assert_eq!(u("q^2*x*y - q^2 + 1").to_string(), "q^2*x*y + 1 - q^2");
        assert_eq!(a("q^4*y2*z2 + (q^3+q)*nx - q^4").to_string(), "q^4*y2*z2 + (q + q^3)*nx - q^4");
        assert_eq!(a("-nx*nx*z2").to_string(), "-nx^2*z2");
        assert_eq!(NCPoly::zero(Alphabet::A).to_string(), "0");
    }

    fn arb_u_poly() -> impl Strategy<Value = NCPoly> {
        let word = prop::collection::vec(0usize..3, 0..4);
        prop::collection::vec((word, -3i64..4, -2i32..3), 0..4).prop_map(|ts| {
            let mut p = NCPoly::zero(Alphabet::U);
            for (letters, c, k) in ts {
                let w = Word::new(Alphabet::U, letters.into_iter().map(|i| Gen::U_LETTERS[i]).collect()).unwrap();
                p.add_term(w, LaurentPoly::monomial(crate::coeff::rat_int(c), k));
            }
            p
        })
    }

    proptest! {
        #[test]
        fn multiplication_is_associative(a in arb_u_poly(), b in arb_u_poly(), c in arb_u_poly()) {
            prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
        }

        #[test]
        fn canonicalisation_is_idempotent(a in arb_u_poly()) {
            let again = NCPoly::from_terms(Alphabet::U, a.terms().map(|(w, c)| (w.clone(), c.clone()))).unwrap();
            prop_assert!(a.terms().all(|(_, c)| !c.is_zero()));
            prop_assert_eq!(again, a);
        }

        #[test]
        fn display_reparses(a in arb_u_poly()) {
            prop_assert_eq!(parse_expr(&a.to_string(), Alphabet::U).unwrap(), a);
        }
    }
}
