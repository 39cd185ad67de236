//! Normal forms in `U_q(sl2)` with respect to the PBW basis `x^r y^s z^t`.
//!
//! The flip relations used left to right are
//!
//! ```text
//! y x -> q^2  x y - q^2  + 1
//! z y -> q^2  y z - q^2  + 1
//! z x -> q^-2 x z - q^-2 + 1
//! ```
//!
//! [`normalize`] multiplies a normal form on the right by one letter at a
//! time, using closed forms for moving a letter past a power. The
//! [`Rewriter`] applies the three rules literally, one inversion at a time,
//! and serves as an independent route to the same answer.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::coeff::LaurentPoly;
use crate::ncpoly::{Alphabet, Gen, NCPoly, Word};
use crate::present::Strategy;

/// Exponents of the ordered monomial `x^r y^s z^t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Monomial {
    pub r: u32,
    pub s: u32,
    pub t: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { r: 0, s: 0, t: 0 };

    pub fn new(r: u32, s: u32, t: u32) -> Self {
        Self { r, s, t }
    }

    pub fn degree(&self) -> u32 {
        self.r + self.s + self.t
    }

    pub fn to_word(&self) -> Word {
        let mut letters = Vec::with_capacity(self.degree() as usize);
        letters.extend(std::iter::repeat_n(Gen::X, self.r as usize));
        letters.extend(std::iter::repeat_n(Gen::Y, self.s as usize));
        letters.extend(std::iter::repeat_n(Gen::Z, self.t as usize));
        Word::from_letters_unchecked(Alphabet::U, letters)
    }

    /// Reads an ordered word; `None` if the word is not of the form `x^r y^s z^t`
    /// or not over `U`.
    pub fn from_word(w: &Word) -> Option<Self> {
        if w.alphabet() != Alphabet::U || !w.letters().windows(2).all(|p| p[0] <= p[1]) {
            return None;
        }
        let count = |g| w.letters().iter().filter(|&&h| h == g).count() as u32;
        Some(Self::new(count(Gen::X), count(Gen::Y), count(Gen::Z)))
    }
}

/// An element of `U_q(sl2)` written in the PBW basis.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PbwForm {
    terms: BTreeMap<Monomial, LaurentPoly>,
}

impl PbwForm {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::term(Monomial::ONE, LaurentPoly::one())
    }

    pub fn scalar(c: LaurentPoly) -> Self {
        Self::term(Monomial::ONE, c)
    }

    pub fn term(m: Monomial, c: LaurentPoly) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
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

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &LaurentPoly)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> LaurentPoly {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: Monomial, c: LaurentPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
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

    pub fn add_scaled(&mut self, other: &PbwForm, c: &LaurentPoly) {
        if c.is_zero() {
            return;
        }
        for (m, a) in &other.terms {
            self.add_term(*m, a * c);
        }
    }

    pub fn scale(&self, c: &LaurentPoly) -> PbwForm {
        let mut out = PbwForm::zero();
        out.add_scaled(self, c);
        out
    }

    /// True when every supported monomial has even total degree.
    pub fn is_even(&self) -> bool {
        self.terms.keys().all(|m| m.degree() % 2 == 0)
    }

    pub fn to_ncpoly(&self) -> NCPoly {
        let mut out = NCPoly::zero(Alphabet::U);
        for (m, c) in &self.terms {
            out.add_term(m.to_word(), c.clone());
        }
        out
    }

    /// Right multiplication by one letter. Letters of the `A` alphabet are
    /// read through [`expand`].
    pub fn mul_gen(&self, g: Gen) -> PbwForm {
        let mut out = PbwForm::zero();
        match g {
            Gen::X | Gen::Y | Gen::Z => {
                for (m, c) in &self.terms {
                    push_mul_letter(&mut out, *m, c, g);
                }
            }
            _ => {
                out = self.mul(translated_letter(g));
            }
        }
        out
    }

    pub fn mul(&self, other: &PbwForm) -> PbwForm {
        let mut out = PbwForm::zero();
        for (m, c) in &other.terms {
            let mut part = self.scale(c);
            for (g, n) in [(Gen::X, m.r), (Gen::Y, m.s), (Gen::Z, m.t)] {
                for _ in 0..n {
                    part = part.mul_gen(g);
                }
            }
            out.add_scaled(&part, &LaurentPoly::one());
        }
        out
    }

    pub fn mul_word(&self, w: &Word) -> PbwForm {
        w.letters().iter().fold(self.clone(), |acc, &g| acc.mul_gen(g))
    }
}

/// Appends `c * m * g` for a `U` letter `g`.
fn push_mul_letter(out: &mut PbwForm, m: Monomial, c: &LaurentPoly, g: Gen) {
    let Monomial { r, s, t } = m;
    let one = LaurentPoly::one();
    match g {
        Gen::Z => out.add_term(Monomial::new(r, s, t + 1), c.clone()),
        Gen::Y => {
            // z^t y = q^{2t} y z^t + (1 - q^{2t}) z^{t-1}
            let k = 2 * t as i32;
            out.add_term(Monomial::new(r, s + 1, t), c * &LaurentPoly::q_pow(k));
            if t > 0 {
                out.add_term(Monomial::new(r, s, t - 1), c * &(&one - &LaurentPoly::q_pow(k)));
            }
        }
        Gen::X => {
            // z^t x = q^{-2t} x z^t + (1 - q^{-2t}) z^{t-1}
            // y^s x = q^{2s} x y^s + (1 - q^{2s}) y^{s-1}
            let (ks, kt) = (2 * s as i32, 2 * t as i32);
            out.add_term(Monomial::new(r + 1, s, t), c * &LaurentPoly::q_pow(ks - kt));
            if s > 0 {
                let a = &LaurentPoly::q_pow(-kt) - &LaurentPoly::q_pow(ks - kt);
                out.add_term(Monomial::new(r, s - 1, t), c * &a);
            }
            if t > 0 {
                out.add_term(Monomial::new(r, s, t - 1), c * &(&one - &LaurentPoly::q_pow(-kt)));
            }
        }
        _ => unreachable!("push_mul_letter called with {g}"),
    }
}

fn translated_letter(g: Gen) -> &'static PbwForm {
    static TABLE: OnceLock<[PbwForm; 6]> = OnceLock::new();
    let table = TABLE.get_or_init(|| {
        Gen::A_LETTERS.map(|h| {
            let p = expand(h);
            let mut out = PbwForm::zero();
            for (w, c) in p.terms() {
                out.add_scaled(&PbwForm::one().mul_word(w), c);
            }
            out
        })
    });
    &table[g.index()]
}

impl fmt::Display for PbwForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_ncpoly().fmt(f)
    }
}

/// The image of an `A` letter in `U`:
/// `nx -> q - q y z`, `ny -> q - q z x`, `nz -> q - q x y`, `x2 -> x x`, and so on.
/// `U` letters map to themselves.
pub fn expand(g: Gen) -> NCPoly {
    let word = |a: Gen, b: Gen| Word::from_letters_unchecked(Alphabet::U, vec![a, b]);
    let nu = |a: Gen, b: Gen| {
        let mut p = NCPoly::scalar(Alphabet::U, LaurentPoly::q());
        p.add_term(word(a, b), -LaurentPoly::q());
        p
    };
    match g {
        Gen::X | Gen::Y | Gen::Z => NCPoly::gen(g),
        Gen::NX => nu(Gen::Y, Gen::Z),
        Gen::NY => nu(Gen::Z, Gen::X),
        Gen::NZ => nu(Gen::X, Gen::Y),
        Gen::X2 => NCPoly::word(word(Gen::X, Gen::X)),
        Gen::Y2 => NCPoly::word(word(Gen::Y, Gen::Y)),
        Gen::Z2 => NCPoly::word(word(Gen::Z, Gen::Z)),
    }
}

/// Substitutes [`expand`] into every letter, without normalising.
pub fn expand_all(p: &NCPoly) -> NCPoly {
    let mut out = NCPoly::zero(Alphabet::U);
    for (w, c) in p.terms() {
        let mut prod = NCPoly::scalar(Alphabet::U, c.clone());
        for &g in w.letters() {
            prod = &prod * &expand(g);
        }
        out = out + prod;
    }
    out
}

/// PBW normal form of `p`. Polynomials over `A` are translated first, so
/// this also computes the image of an `A` expression in `U_q(sl2)`.
pub fn normalize(p: &NCPoly) -> PbwForm {
    let mut out = PbwForm::zero();
    for (w, c) in p.terms() {
        out.add_scaled(&PbwForm::one().mul_word(w), c);
    }
    out
}

/// Decides `lhs = rhs` in `U_q(sl2)`.
pub fn check_identity(lhs: &NCPoly, rhs: &NCPoly) -> bool {
    let mut diff = normalize(lhs);
    diff.add_scaled(&normalize(rhs), &LaurentPoly::from_int(-1));
    diff.is_zero()
}

/// Literal application of the flip rules, one adjacent inversion at a time.
#[derive(Clone, Copy, Debug)]
pub struct Rewriter {
    pub strategy: Strategy,
}

impl Rewriter {
    pub fn new(strategy: Strategy) -> Self {
        Self { strategy }
    }

    /// Rewrites `p` (over `U`) until every word is ordered.
    pub fn normalize(&self, p: &NCPoly) -> PbwForm {
        assert_eq!(p.alphabet(), Alphabet::U, "the rewriter works over U");
        let mut pending: BTreeMap<Word, LaurentPoly> = BTreeMap::new();
        let mut out = PbwForm::zero();
        let push = |pending: &mut BTreeMap<Word, LaurentPoly>, w: Word, c: LaurentPoly| {
            let e = pending.entry(w).or_default();
            *e = &*e + &c;
        };
        for (w, c) in p.terms() {
            push(&mut pending, w.clone(), c.clone());
        }
        while let Some((w, c)) = pending.pop_last() {
            if c.is_zero() {
                continue;
            }
            let letters = w.letters();
            let mut positions = (0..letters.len().saturating_sub(1)).filter(|&i| letters[i] > letters[i + 1]);
            let hit = match self.strategy {
                Strategy::Leftmost => positions.next(),
                Strategy::Rightmost => positions.next_back(),
            };
            let Some(i) = hit else {
                out.add_term(Monomial::from_word(&w).expect("ordered word"), c);
                continue;
            };
            let (a, b) = (letters[i], letters[i + 1]);
            let (k, ba) = match (a, b) {
                (Gen::Y, Gen::X) | (Gen::Z, Gen::Y) => (2, [b, a]),
                (Gen::Z, Gen::X) => (-2, [b, a]),
                _ => unreachable!(),
            };
            let splice = |mid: &[Gen]| {
                let mut v = Vec::with_capacity(letters.len());
                v.extend_from_slice(&letters[..i]);
                v.extend_from_slice(mid);
                v.extend_from_slice(&letters[i + 2..]);
                Word::from_letters_unchecked(Alphabet::U, v)
            };
            let swapped = splice(&ba);
            let shorter = splice(&[]);
            debug_assert!(measure(&swapped) < measure(&w) && measure(&shorter) < measure(&w));
            let qk = LaurentPoly::q_pow(k);
            push(&mut pending, swapped, &c * &qk);
            push(&mut pending, shorter, &c * &(&LaurentPoly::one() - &qk));
        }
        out
    }
}

/// Termination measure of a word: (length, number of inversions).
pub fn measure(w: &Word) -> (usize, usize) {
    let l = w.letters();
    let inv = (0..l.len()).map(|i| l[i + 1..].iter().filter(|&&b| b < l[i]).count()).sum();
    (l.len(), inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{parse_expr, parse_translated};
    use crate::present::Strategy as Order;
    use proptest::prelude::*;
    use proptest::strategy::Strategy;

    fn u(s: &str) -> NCPoly {
        parse_expr(s, Alphabet::U).unwrap()
    }

    #[test]
    fn flip_yx() {
        assert_eq!(normalize(&u("y*x")).to_ncpoly(), u("q^2*x*y - q^2 + 1"));
        assert_eq!(normalize(&u("y x")).to_string(), "q^2*x*y + 1 - q^2");
    }

    #[test]
    fn trivial_inputs() {
        assert_eq!(normalize(&NCPoly::one(Alphabet::U)), PbwForm::one());
        assert_eq!(normalize(&u("x*y")).to_ncpoly(), u("x*y"));
        assert!(normalize(&NCPoly::zero(Alphabet::U)).is_zero());
    }

    #[test]
    fn zyx_both_routes() {
        let p = u("z*y*x");
        let n = normalize(&p);
        assert_eq!(Rewriter::new(Order::Leftmost).normalize(&p), n);
        assert_eq!(Rewriter::new(Order::Rightmost).normalize(&p), n);
        // Worked by hand: zyx = q^2 xyz + (1 - q^2)(x - y + z).
        assert_eq!(n.to_ncpoly(), u("q^2*x*y*z + (1 - q^2)*x - (1 - q^2)*y + (1 - q^2)*z"));
    }

    #[test]
    fn expansions() {
        assert_eq!(expand(Gen::NZ), u("q - q*x*y"));
        assert_eq!(expand(Gen::X2), u("x*x"));
        let w = NCPoly::word(Word::parse(Alphabet::A, "nx z2").unwrap());
        assert_eq!(expand_all(&w), u("q*z*z - q*y*z*z*z"));
    }

    #[test]
    fn identities() {
        let lhs = parse_translated("x2 y2").unwrap();
        let rhs = parse_translated("1 - q^-2*(q + q^-1)*nz + q^-4*nz^2").unwrap();
        assert!(check_identity(&lhs, &rhs));
        let lhs = parse_translated("x2 nx").unwrap();
        let rhs = parse_translated("q^-1*x2 - q^-1 + q^2*ny + q^-2*nz - q*ny*nz").unwrap();
        assert!(check_identity(&lhs, &rhs));
        assert!(!check_identity(&parse_translated("nx ny").unwrap(), &parse_translated("ny nx").unwrap()));
        assert!(check_identity(&u("q - q*y*z"), &u("q^-1 - q^-1*z*y")));
    }

    #[test]
    fn translated_letters_agree_with_expansion() {
        for g in Gen::A_LETTERS {
            assert_eq!(normalize(&NCPoly::gen(g)), normalize(&expand(g)));
        }
    }

    fn arb_word(max: usize) -> impl Strategy<Value = Word> {
        prop::collection::vec(prop::sample::select(Gen::U_LETTERS.to_vec()), 0..=max)
            .prop_map(|l| Word::new(Alphabet::U, l).unwrap())
    }

    fn arb_poly() -> impl Strategy<Value = NCPoly> {
        prop::collection::vec((arb_word(4), -3i64..4, -2i32..3), 0..4).prop_map(|ts| {
            let mut p = NCPoly::zero(Alphabet::U);
            for (w, c, k) in ts {
                p.add_term(w, LaurentPoly::monomial(crate::coeff::rat_int(c), k));
            }
            p
        })
    }

    proptest! {
        #[test]
        fn homomorphism(a in arb_poly(), b in arb_poly()) {
            let lhs = normalize(&(&a * &b));
            prop_assert_eq!(lhs, normalize(&a).mul(&normalize(&b)));
        }

        #[test]
        fn rewriter_matches_closed_forms(w in arb_word(6)) {
            let p = NCPoly::word(w);
            prop_assert_eq!(Rewriter::new(Order::Leftmost).normalize(&p), normalize(&p));
        }
    }
}
