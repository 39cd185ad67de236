//! The algebra presented on the letters `nx, ny, nz, x2, y2, z2`.
//!
//! A length-2 word is either allowed or forbidden according to a fixed
//! 6x6 table; a word is allowed when none of its adjacent pairs is
//! forbidden. Each of the 21 forbidden pairs has a reduction rule rewriting
//! it as a combination of allowed words, and [`reduce`] applies these rules
//! until only allowed words remain.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::coeff::LaurentPoly;
use crate::error::{Error, Result};
use crate::expr::parse_expr;
use crate::ncpoly::{Alphabet, Gen, NCPoly, Word};
use crate::oracle::{normalize, PbwForm};

/// Which redex to rewrite first.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    #[default]
    Leftmost,
    Rightmost,
}

impl FromStr for Strategy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "leftmost" => Ok(Strategy::Leftmost),
            "rightmost" => Ok(Strategy::Rightmost),
            _ => Err(Error::Invalid(format!("unknown strategy `{s}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PairClass {
    Allowed,
    Forbidden,
}

impl fmt::Display for PairClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PairClass::Allowed => "allowed",
            PairClass::Forbidden => "forbidden",
        })
    }
}

// Rows and columns in the order nx, ny, nz, x2, y2, z2.
const ALLOWED: [[bool; 6]; 6] = [
    [false, false, false, false, false, true],
    [false, false, false, false, false, true],
    [true, false, false, false, true, true],
    [true, true, true, true, true, true],
    [true, false, false, false, true, true],
    [false, false, false, false, false, true],
];

fn pair_allowed(a: Gen, b: Gen) -> bool {
    ALLOWED[a.index()][b.index()]
}

/// Table lookup for the pair `g1 g2`.
pub fn classify_pair(g1: Gen, g2: Gen) -> Result<PairClass> {
    for g in [g1, g2] {
        if g.alphabet() != Alphabet::A {
            return Err(Error::LetterNotInAlphabet(g, Alphabet::A));
        }
    }
    Ok(if pair_allowed(g1, g2) { PairClass::Allowed } else { PairClass::Forbidden })
}

/// True when `w` is over `A` and no adjacent pair of `w` is forbidden.
pub fn is_allowed(w: &Word) -> bool {
    w.alphabet() == Alphabet::A && w.letters().windows(2).all(|p| pair_allowed(p[0], p[1]))
}

/// Number of pairs `i < j` (not necessarily adjacent) with `w_i w_j` forbidden.
pub fn forbidden_pair_count(w: &Word) -> usize {
    let l = w.letters();
    (0..l.len()).map(|i| l[i + 1..].iter().filter(|&&b| !pair_allowed(l[i], b)).count()).sum()
}

/// Termination measure for reduction: (length, forbidden pair count),
/// compared lexicographically.
pub fn reduction_measure(w: &Word) -> (usize, usize) {
    (w.len(), forbidden_pair_count(w))
}

/// All allowed words of length at most `max_len`, ordered by length and
/// then lexicographically.
pub fn enumerate_allowed(max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty(Alphabet::A)];
    let mut layer: Vec<Vec<Gen>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for prefix in &layer {
            for &g in &Gen::A_LETTERS {
                if prefix.last().is_none_or(|&h| pair_allowed(h, g)) {
                    let mut w = prefix.clone();
                    w.push(g);
                    next.push(w);
                }
            }
        }
        out.extend(next.iter().map(|l| Word::from_letters_unchecked(Alphabet::A, l.clone())));
        layer = next;
    }
    out
}

/// One row of the rule table: `lhs -> rhs`, where `rhs` contains exactly one
/// length-2 word (`pivot`), which is allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionRule {
    pub lhs: Word,
    pub rhs: NCPoly,
    pub pivot: Word,
    /// Whether `pivot` is `lhs` with its letters exchanged.
    pub swap: bool,
}

impl fmt::Display for ReductionRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.lhs, self.rhs)
    }
}

const RULE_DATA: [(&str, &str); 21] = [
    ("nx nx", "q^4*y2*z2 + (q^3 + q)*nx - q^4"),
    ("nx ny", "-q^-1*nz*z2 + q^-2*z2 + q^-3*nx + q*ny - q^-2"),
    ("nx nz", "q^2*nz*nx + (q^2 - 1)*y2 - (q^2 - 1)"),
    ("nx x2", "x2*nx - (q^2 - q^-2)*ny + (q^2 - q^-2)*nz"),
    ("nx y2", "q^4*y2*nx"),
    ("ny nx", "-q*nz*z2 + q^2*z2 + q^-1*nx + q^3*ny - q^2"),
    ("ny ny", "q^-4*x2*z2 + (q^-1 + q^-3)*ny - q^-4"),
    ("ny nz", "-q^-1*x2*nx + q^-2*x2 + q*ny + q^-3*nz - q^-2"),
    ("ny x2", "q^-4*x2*ny"),
    ("ny y2", "-q*nz*nx + q^-1*y2 + q^-2*nz + q^2*nx - q^-1"),
    ("nz ny", "-q*x2*nx + q^2*x2 + q^3*ny + q^-1*nz - q^2"),
    ("nz nz", "q^4*x2*y2 + (q^3 + q)*nz - q^4"),
    ("nz x2", "q^4*x2*nz"),
    ("y2 ny", "-q*nz*nx + q^-1*y2 + q^2*nz + q^-2*nx - q^-1"),
    ("y2 nz", "q^4*nz*y2"),
    ("y2 x2", "q^8*x2*y2 + (q^6 - q^2)*(q + q^-1)*nz + (1 - q^8)"),
    ("z2 nx", "q^4*nx*z2"),
    ("z2 ny", "q^-4*ny*z2"),
    ("z2 nz", "nz*z2 + (q^2 - q^-2)*nx - (q^2 - q^-2)*ny"),
    ("z2 x2", "q^-8*x2*z2 + (q^-6 - q^-2)*(q + q^-1)*ny + (1 - q^-8)"),
    ("z2 y2", "q^8*y2*z2 + (q^6 - q^2)*(q + q^-1)*nx + (1 - q^8)"),
];

struct RuleTable {
    rules: Vec<ReductionRule>,
    by_pair: [[Option<usize>; 6]; 6],
}

fn table() -> &'static RuleTable {
    static TABLE: OnceLock<RuleTable> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut by_pair = [[None; 6]; 6];
        let rules = RULE_DATA
            .iter()
            .enumerate()
            .map(|(i, (lhs, rhs))| {
                let lhs = Word::parse(Alphabet::A, lhs).expect("rule lhs");
                let rhs = parse_expr(rhs, Alphabet::A).expect("rule rhs");
                let pivot =
                    rhs.terms().map(|(w, _)| w).find(|w| w.len() == 2).expect("rule has a length-2 word").clone();
                let l = lhs.letters();
                by_pair[l[0].index()][l[1].index()] = Some(i);
                let swap = pivot.letters() == [l[1], l[0]];
                ReductionRule { lhs, rhs, pivot, swap }
            })
            .collect();
        RuleTable { rules, by_pair }
    })
}

/// The 21 reduction rules, in row-major order of their left sides.
pub fn rules() -> &'static [ReductionRule] {
    &table().rules
}

/// The rule whose left side is `a b`, if the pair is forbidden.
pub fn rule_for(a: Gen, b: Gen) -> Option<&'static ReductionRule> {
    if a.alphabet() != Alphabet::A || b.alphabet() != Alphabet::A {
        return None;
    }
    table().by_pair[a.index()][b.index()].map(|i| &table().rules[i])
}

/// A polynomial over `A` supported on allowed words.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NormalForm(NCPoly);

impl NormalForm {
    pub fn poly(&self) -> &NCPoly {
        &self.0
    }

    pub fn into_poly(self) -> NCPoly {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Reduction step budget used by [`reduce`].
pub const DEFAULT_STEP_CAP: usize = 10_000_000;

/// Reduces `p` to a combination of allowed words, rewriting the leftmost
/// forbidden pair first.
pub fn reduce(p: &NCPoly) -> Result<NormalForm> {
    reduce_with(p, Strategy::Leftmost, DEFAULT_STEP_CAP)
}

/// [`reduce`] with an explicit strategy and step budget.
pub fn reduce_with(p: &NCPoly, strategy: Strategy, step_cap: usize) -> Result<NormalForm> {
    if p.alphabet() != Alphabet::A {
        return Err(Error::AlphabetMismatch { expected: Alphabet::A, found: p.alphabet() });
    }
    let mut pending: BTreeMap<Word, LaurentPoly> = BTreeMap::new();
    for (w, c) in p.terms() {
        pending.insert(w.clone(), c.clone());
    }
    let mut out = NCPoly::zero(Alphabet::A);
    let mut steps = 0;
    while let Some((w, c)) = pending.pop_last() {
        if c.is_zero() {
            continue;
        }
        let l = w.letters();
        let mut redexes = (0..l.len().saturating_sub(1)).filter(|&i| !pair_allowed(l[i], l[i + 1]));
        let hit = match strategy {
            Strategy::Leftmost => redexes.next(),
            Strategy::Rightmost => redexes.next_back(),
        };
        let Some(i) = hit else {
            out.add_term(w, c);
            continue;
        };
        steps += 1;
        if steps > step_cap {
            return Err(Error::NonTermination(step_cap));
        }
        let rule = rule_for(l[i], l[i + 1]).expect("every forbidden pair has a rule");
        for (mid, a) in rule.rhs.terms() {
            let mut v = Vec::with_capacity(l.len());
            v.extend_from_slice(&l[..i]);
            v.extend_from_slice(mid.letters());
            v.extend_from_slice(&l[i + 2..]);
            let next = Word::from_letters_unchecked(Alphabet::A, v);
            debug_assert!(reduction_measure(&next) < reduction_measure(&w));
            let e = pending.entry(next).or_default();
            *e = &*e + &(&c * a);
        }
    }
    Ok(NormalForm(out))
}

/// The image of `p` in `U_q(sl2)` under `nx -> q(1 - yz)`, ..., `x2 -> x^2`, ...,
/// in PBW normal form.
pub fn phi_image(p: &NCPoly) -> PbwForm {
    normalize(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::expand_all;
    use regex::Regex;

    fn a(s: &str) -> NCPoly {
        parse_expr(s, Alphabet::A).unwrap()
    }

    #[test]
    fn table_lookups() {
        assert_eq!(classify_pair(Gen::NZ, Gen::NX).unwrap(), PairClass::Allowed);
        assert_eq!(classify_pair(Gen::NX, Gen::NX).unwrap(), PairClass::Forbidden);
        assert_eq!(classify_pair(Gen::X2, Gen::Y2).unwrap(), PairClass::Allowed);
        assert!(classify_pair(Gen::X, Gen::NX).is_err());
        let allowed = Gen::A_LETTERS
            .iter()
            .flat_map(|&g| Gen::A_LETTERS.iter().map(move |&h| (g, h)))
            .filter(|&(g, h)| classify_pair(g, h).unwrap() == PairClass::Allowed)
            .count();
        assert_eq!(allowed, 15);
    }

    #[test]
    fn word_checks() {
        assert!(is_allowed(&Word::parse(Alphabet::A, "x2 ny z2").unwrap()));
        assert!(!is_allowed(&Word::parse(Alphabet::A, "nx ny").unwrap()));
        assert!(is_allowed(&Word::empty(Alphabet::A)));
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_allowed(0).len(), 1);
        assert_eq!(enumerate_allowed(1).len(), 7);
        assert_eq!(enumerate_allowed(2).len(), 22);
        // Allowed words of length n number (2n+2 choose 2).
        for n in 0..=6usize {
            let count = enumerate_allowed(n).iter().filter(|w| w.len() == n).count();
            assert_eq!(count, (2 * n + 2) * (2 * n + 1) / 2);
        }
        let words = enumerate_allowed(4);
        assert!(words.windows(2).all(|p| p[0] < p[1]));
    }

    #[test]
    fn enumeration_matches_shape_grammar() {
        let shapes = Regex::new(r"^(x2 )*(nz )?(y2 )*(nx )?(z2 )*$|^(x2 )*ny (z2 )*$").unwrap();
        let spell = |w: &Word| w.letters().iter().map(|g| format!("{g} ")).collect::<String>();
        let allowed = enumerate_allowed(5);
        for w in &allowed {
            assert!(shapes.is_match(&spell(w)), "{w}");
        }
        let mut every = vec![Vec::new()];
        for _ in 0..5 {
            every = every
                .iter()
                .flat_map(|p: &Vec<Gen>| {
                    Gen::A_LETTERS.iter().map(move |&g| {
                        let mut v = p.clone();
                        v.push(g);
                        v
                    })
                })
                .collect();
            for l in &every {
                let w = Word::new(Alphabet::A, l.clone()).unwrap();
                assert_eq!(shapes.is_match(&spell(&w)), is_allowed(&w), "{w}");
            }
        }
    }

    #[test]
    fn rule_table_shape() {
        assert_eq!(rules().len(), 21);
        assert_eq!(rules().iter().filter(|r| r.swap).count(), 12);
        for r in rules() {
            let l = r.lhs.letters();
            assert_eq!(classify_pair(l[0], l[1]).unwrap(), PairClass::Forbidden);
            assert_eq!(r.rhs.terms().filter(|(w, _)| w.len() == 2).count(), 1);
            assert!(r.rhs.max_word_len() == 2 && is_allowed(&r.pivot));
        }
    }

    #[test]
    fn rules_are_sound() {
        for r in rules() {
            let lhs = normalize(&expand_all(&NCPoly::word(r.lhs.clone())));
            assert_eq!(lhs, normalize(&expand_all(&r.rhs)), "{r}");
        }
    }

    #[test]
    fn reduce_examples() {
        let nf = reduce(&a("nx*nx")).unwrap();
        assert_eq!(nf.poly(), &a("q^4*y2*z2 + q^2*(q + q^-1)*nx - q^4"));
        assert_eq!(reduce(&a("x2*nx")).unwrap().poly(), &a("x2*nx"));
        assert!(reduce(&NCPoly::zero(Alphabet::A)).unwrap().is_zero());
        let p = a("ny*nx*ny");
        let nf = reduce(&p).unwrap();
        assert!(nf.poly().terms().all(|(w, _)| is_allowed(w)));
        assert_eq!(phi_image(&p), phi_image(nf.poly()));
        assert!(reduce(&parse_expr("x", Alphabet::U).unwrap()).is_err());
    }

    #[test]
    fn step_cap_is_reported() {
        let p = a("ny nx ny nx ny");
        assert_eq!(reduce_with(&p, Strategy::Leftmost, 2), Err(Error::NonTermination(2)));
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi_image(&a("nz")).to_ncpoly(), parse_expr("q - q*x*y", Alphabet::U).unwrap());
        assert_eq!(phi_image(&NCPoly::one(Alphabet::A)), PbwForm::one());
        let image = phi_image(&a("x2 ny z2"));
        let top = image.terms().map(|(m, _)| m.degree()).max().unwrap();
        let tops: Vec<_> = image.terms().filter(|(m, _)| m.degree() == top).collect();
        assert_eq!(tops.len(), 1);
        assert_eq!(*tops[0].0, crate::oracle::Monomial::new(3, 0, 3));
        assert_eq!(tops[0].1, &-LaurentPoly::q_pow(-1));
    }
}
