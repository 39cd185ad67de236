//! Finite-dimensional representations given by generator matrices.
//!
//! Matrices act on coordinate columns from the left; a word `g1 g2 .. gn`
//! acts by `M(g1) M(g2) .. M(gn)`. Basis vectors are `u_0 .. u_d`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::catalog::{Identity, DEFINING, EQUITABLE, SQUARE_DEFINITIONS};
use crate::coeff::{LaurentPoly, QValue, Rational};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::ncpoly::{Alphabet, Gen, NCPoly};
use crate::oracle::expand;

/// The type `eps` of `L(d, eps)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Eps {
    Plus,
    Minus,
}

impl Eps {
    pub fn sign(self) -> i64 {
        match self {
            Eps::Plus => 1,
            Eps::Minus => -1,
        }
    }
}

impl FromStr for Eps {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "1" | "+1" | "+" => Ok(Eps::Plus),
            "-1" | "-" => Ok(Eps::Minus),
            _ => Err(Error::Invalid(format!("eps must be 1 or -1, got `{s}`"))),
        }
    }
}

impl fmt::Display for Eps {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.sign())
    }
}

/// Whether matrix entries are Laurent polynomials in `q` or numbers at a
/// fixed value of `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mode {
    Symbolic,
    Numeric(QValue),
}

/// A representation: one square matrix per letter of the alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleRep {
    alphabet: Alphabet,
    dim: usize,
    actions: BTreeMap<Gen, Matrix<LaurentPoly>>,
    mode: Mode,
}

impl ModuleRep {
    /// Checks that every letter of `alphabet` has a `dim x dim` matrix, and
    /// that numeric modules have constant entries.
    pub fn new(
        alphabet: Alphabet,
        dim: usize,
        actions: BTreeMap<Gen, Matrix<LaurentPoly>>,
        mode: Mode,
    ) -> Result<Self> {
        for (&g, m) in &actions {
            if g.alphabet() != alphabet {
                return Err(Error::LetterNotInAlphabet(g, alphabet));
            }
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::Dimension(format!(
                    "matrix for {g} is {}x{}, expected {dim}x{dim}",
                    m.rows(),
                    m.cols()
                )));
            }
            if matches!(mode, Mode::Numeric(_)) && m.to_rows().iter().flatten().any(|e| e.as_constant().is_none()) {
                return Err(Error::Invalid(format!("numeric module has a non-constant entry in {g}")));
            }
        }
        if let Some(&g) = alphabet.letters().iter().find(|g| !actions.contains_key(g)) {
            return Err(Error::MissingGenerator(g));
        }
        Ok(Self { alphabet, dim, actions, mode })
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mode(&self) -> &Mode {
        &self.mode
    }

    pub fn actions(&self) -> &BTreeMap<Gen, Matrix<LaurentPoly>> {
        &self.actions
    }

    pub fn action(&self, g: Gen) -> Result<&Matrix<LaurentPoly>> {
        self.actions.get(&g).ok_or(Error::MissingGenerator(g))
    }

    /// The same module with `q` replaced by a number.
    pub fn specialize(&self, q: &QValue) -> Result<ModuleRep> {
        match &self.mode {
            Mode::Numeric(p) if p == q => Ok(self.clone()),
            Mode::Numeric(p) => Err(Error::Invalid(format!("module is already specialised at q = {p}"))),
            Mode::Symbolic => Ok(Self {
                alphabet: self.alphabet,
                dim: self.dim,
                actions: self.actions.iter().map(|(&g, m)| (g, m.map(|e| e.specialize(q)))).collect(),
                mode: Mode::Numeric(q.clone()),
            }),
        }
    }

    /// Replaces one generator matrix without re-validating relations.
    pub fn with_action(&self, g: Gen, m: Matrix<LaurentPoly>) -> Result<ModuleRep> {
        let mut actions = self.actions.clone();
        actions.insert(g, m);
        Self::new(self.alphabet, self.dim, actions, self.mode.clone())
    }

    /// The module in the basis given by the columns of `p`: every action
    /// becomes `p^-1 M p`.
    pub fn change_basis(&self, p: &Matrix<Rational>) -> Result<ModuleRep> {
        let inv = p.inverse().ok_or_else(|| Error::Invalid("change of basis matrix is singular".into()))?;
        let lift = |m: &Matrix<Rational>| m.map(|e| LaurentPoly::constant(e.clone()));
        let (p, inv) = (lift(p), lift(&inv));
        let mut actions = BTreeMap::new();
        for (&g, m) in &self.actions {
            actions.insert(g, inv.mul(m)?.mul(&p)?);
        }
        Self::new(self.alphabet, self.dim, actions, self.mode.clone())
    }

    /// Block-diagonal direct sum.
    pub fn direct_sum(&self, other: &ModuleRep) -> Result<ModuleRep> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch { expected: self.alphabet, found: other.alphabet });
        }
        if self.mode != other.mode {
            return Err(Error::Invalid("direct sum of modules in different modes".into()));
        }
        let n = self.dim + other.dim;
        let mut actions = BTreeMap::new();
        for &g in self.alphabet.letters() {
            let (a, b) = (self.action(g)?, other.action(g)?);
            let mut m = Matrix::zeros(n, n);
            for i in 0..self.dim {
                for j in 0..self.dim {
                    m.set(i, j, a.get(i, j).clone());
                }
            }
            for i in 0..other.dim {
                for j in 0..other.dim {
                    m.set(self.dim + i, self.dim + j, b.get(i, j).clone());
                }
            }
            actions.insert(g, m);
        }
        Self::new(self.alphabet, n, actions, self.mode.clone())
    }

    /// Restriction of a `U` module to the even subalgebra: each `A` letter
    /// acts through its expansion in `x, y, z`.
    pub fn restrict(&self) -> Result<ModuleRep> {
        if self.alphabet != Alphabet::U {
            return Err(Error::AlphabetMismatch { expected: Alphabet::U, found: self.alphabet });
        }
        let mut actions = BTreeMap::new();
        for &g in Alphabet::A.letters() {
            actions.insert(g, act(&expand(g), self)?);
        }
        Self::new(Alphabet::A, self.dim, actions, self.mode.clone())
    }
}

fn qp(k: i32) -> LaurentPoly {
    LaurentPoly::q_pow(k)
}

fn one() -> LaurentPoly {
    LaurentPoly::one()
}

/// `L(d, eps)` as a module over `U`: matrices of `x, y, z`.
pub fn build_l_eps(d: usize, eps: Eps) -> ModuleRep {
    let n = d + 1;
    let di = d as i32;
    let e = LaurentPoly::from_int(eps.sign());
    let (mut x, mut y, mut z) = (Matrix::zeros(n, n), Matrix::zeros(n, n), Matrix::zeros(n, n));
    for i in 0..n {
        let ii = i as i32;
        x.set(i, i, &e * &qp(di - 2 * ii));
        y.set(i, i, &e * &qp(di - 2 * ii));
        z.set(i, i, &e * &qp(2 * ii - di));
        if i >= 1 {
            x.set(i - 1, i, &e * &(qp(-di) - qp(di - 2 * ii + 2)));
        }
        if i < d {
            y.set(i + 1, i, &e * &(qp(di) - qp(di - 2 * ii - 2)));
        }
    }
    let actions = BTreeMap::from([(Gen::X, x), (Gen::Y, y), (Gen::Z, z)]);
    ModuleRep::new(Alphabet::U, n, actions, Mode::Symbolic).expect("well-formed")
}

/// `L(d)` as a module over the even subalgebra: matrices of all six letters.
///
/// `x2` is computed as the square of the `x` matrix of `L(d, 1)`.
pub fn build_l(d: usize) -> ModuleRep {
    let n = d + 1;
    let di = d as i32;
    let (mut nx, mut ny, mut nz) = (Matrix::zeros(n, n), Matrix::zeros(n, n), Matrix::zeros(n, n));
    let (mut y2, mut z2) = (Matrix::zeros(n, n), Matrix::zeros(n, n));
    for i in 0..n {
        let ii = i as i32;
        if i < d {
            nx.set(i + 1, i, qp(-1) * (one() - qp(2 * (ii + 1))));
            nz.set(i + 1, i, qp(2 * di - 4 * ii - 3) * (one() - qp(2 * (ii + 1))));
            y2.set(i + 1, i, qp(di - 2 * ii - 1) * (qp(1) + qp(-1)) * (qp(di) - qp(di - 2 * ii - 2)));
        }
        if i >= 1 {
            ny.set(i - 1, i, qp(1) * (one() - qp(2 * (ii - di - 1))));
            nz.set(i - 1, i, qp(2 * di - 4 * ii + 3) * (one() - qp(2 * (ii - di - 1))));
        }
        if i + 2 <= d {
            y2.set(i + 2, i, (qp(di) - qp(di - 2 * ii - 2)) * (qp(di) - qp(di - 2 * ii - 4)));
        }
        nz.set(i, i, qp(2 * di - 2 * ii + 1) + qp(-2 * ii - 1) - qp(2 * di - 4 * ii + 1) - qp(2 * di - 4 * ii - 1));
        y2.set(i, i, qp(2 * di - 4 * ii));
        z2.set(i, i, qp(4 * ii - 2 * di));
    }
    let x = build_l_eps(d, Eps::Plus).action(Gen::X).expect("x").clone();
    let x2 = x.mul(&x).expect("square");
    let actions =
        BTreeMap::from([(Gen::NX, nx), (Gen::NY, ny), (Gen::NZ, nz), (Gen::X2, x2), (Gen::Y2, y2), (Gen::Z2, z2)]);
    ModuleRep::new(Alphabet::A, n, actions, Mode::Symbolic).expect("well-formed")
}

/// The matrix by which `p` acts on `m`.
pub fn act(p: &NCPoly, m: &ModuleRep) -> Result<Matrix<LaurentPoly>> {
    if p.alphabet() != m.alphabet {
        return Err(Error::AlphabetMismatch { expected: m.alphabet, found: p.alphabet() });
    }
    let mut out = Matrix::zeros(m.dim, m.dim);
    for (w, c) in p.terms() {
        let mut prod = Matrix::identity(m.dim);
        for &g in w.letters() {
            prod = prod.mul(m.action(g)?)?;
        }
        let c = match &m.mode {
            Mode::Symbolic => c.clone(),
            Mode::Numeric(q) => c.specialize(q),
        };
        out = out.add(&prod.scale(&c))?;
    }
    Ok(out)
}

/// Outcome of one relation check on a module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationCheck {
    pub id: &'static str,
    pub statement: String,
    pub holds: bool,
}

/// Relations a module must satisfy: over `A`, the twelve defining relations
/// and the expressions of the squares; over `U`, the equitable relations.
pub fn module_relations(alphabet: Alphabet) -> Vec<Identity> {
    match alphabet {
        Alphabet::A => DEFINING.iter().chain(&SQUARE_DEFINITIONS).copied().collect(),
        Alphabet::U => EQUITABLE.to_vec(),
    }
}

pub fn check_module_relations(m: &ModuleRep) -> Result<Vec<RelationCheck>> {
    module_relations(m.alphabet)
        .into_iter()
        .map(|id| {
            let diff = match m.alphabet {
                Alphabet::A => id.difference_in_a()?,
                Alphabet::U => id.difference_in_u()?,
            };
            Ok(RelationCheck { id: id.id, statement: id.statement(), holds: act(&diff, m)?.is_zero() })
        })
        .collect()
}

/// Smallest `k <= dim` with `m^k = 0`, if any.
pub fn nilpotency_index<T: crate::linalg::Scalar>(m: &Matrix<T>) -> Option<u32> {
    let mut p = Matrix::identity(m.rows());
    for k in 0..=m.rows() as u32 {
        if p.is_zero() {
            return Some(k);
        }
        p = p.mul(m).ok()?;
    }
    None
}

/// Smallest subspace containing `start` and stable under `ops`; returns its dimension.
fn closure_dim<T: crate::linalg::Scalar>(
    start: Vec<T>,
    ops: &[&Matrix<T>],
    rank: impl Fn(&Matrix<T>) -> usize,
) -> usize {
    let mut basis = vec![start];
    let mut frontier = basis.clone();
    while let Some(v) = frontier.pop() {
        for op in ops {
            let w = op.mul_vec(&v).expect("square");
            let mut trial = basis.clone();
            trial.push(w.clone());
            if rank(&Matrix::from_rows(trial.clone()).expect("rows")) == trial.len() {
                basis = trial;
                frontier.push(w);
            }
        }
    }
    basis.len()
}

/// Irreducibility test for modules over the even subalgebra: `z2` must have
/// one-dimensional eigenspaces for `dim` distinct eigenvalues, and each
/// eigenvector must generate the whole space under `nx` and `ny`.
///
/// In symbolic mode `z2` must already be diagonal. In numeric mode the
/// eigenvalues are searched among `q^(4i - 2d)`, `d = dim - 1`.
pub fn check_irreducible(m: &ModuleRep) -> Result<bool> {
    if m.alphabet != Alphabet::A {
        return Err(Error::AlphabetMismatch { expected: Alphabet::A, found: m.alphabet });
    }
    let n = m.dim;
    let (nx, ny, z2) = (m.action(Gen::NX)?, m.action(Gen::NY)?, m.action(Gen::Z2)?);
    match &m.mode {
        Mode::Symbolic => {
            let diagonal = (0..n).all(|i| (0..n).all(|j| i == j || z2.get(i, j).is_zero()));
            if !diagonal {
                return Err(Error::NotApplicable("z2 is not diagonal; use numeric mode for a general basis".into()));
            }
            let eig: Vec<_> = (0..n).map(|i| z2.get(i, i)).collect();
            if (0..n).any(|i| (i + 1..n).any(|j| eig[i] == eig[j])) {
                return Ok(false);
            }
            Ok((0..n).all(|k| {
                let mut e = vec![LaurentPoly::zero(); n];
                e[k] = LaurentPoly::one();
                closure_dim(e, &[nx, ny], Matrix::rank) == n
            }))
        }
        Mode::Numeric(q) => {
            let to_q = |a: &Matrix<LaurentPoly>| a.eval(q);
            let (nx, ny, z2) = (to_q(nx), to_q(ny), to_q(z2));
            let d = n as i32 - 1;
            let mut vectors = Vec::new();
            for i in 0..n as i32 {
                let c = LaurentPoly::q_pow(4 * i - 2 * d).eval(q);
                let shifted = z2.sub(&Matrix::identity(n).scale(&c))?;
                let ker = shifted.kernel();
                match ker.len() {
                    0 => {}
                    1 => vectors.push(ker.into_iter().next().expect("one vector")),
                    _ => return Ok(false),
                }
            }
            if vectors.len() != n {
                return Ok(false);
            }
            Ok(vectors.into_iter().all(|v| closure_dim(v, &[&nx, &ny], Matrix::field_rank) == n))
        }
    }
}

/// Dimension of the space of linear maps `T: a -> b` with
/// `T a(g) = b(g) T` for every generator `g`.
///
/// With `q` given, the system is solved at that value of `q`; otherwise the
/// rank is taken over Laurent polynomials.
pub fn hom_space_dim(a: &ModuleRep, b: &ModuleRep, q: Option<&QValue>) -> Result<usize> {
    if a.alphabet != b.alphabet {
        return Err(Error::AlphabetMismatch { expected: a.alphabet, found: b.alphabet });
    }
    let q = q.cloned().or_else(|| match (&a.mode, &b.mode) {
        (Mode::Numeric(p), _) | (_, Mode::Numeric(p)) => Some(p.clone()),
        _ => None,
    });
    let (na, nb) = (a.dim, b.dim);
    let unknowns = na * nb;
    let var = |i: usize, j: usize| i * na + j;
    let letters = a.alphabet.letters();
    let mut sys = Matrix::zeros(letters.len() * unknowns, unknowns);
    for (gi, &g) in letters.iter().enumerate() {
        let (ma, mb) = (a.action(g)?, b.action(g)?);
        for i in 0..nb {
            for j in 0..na {
                let row = gi * unknowns + var(i, j);
                for k in 0..na {
                    let v = sys.get(row, var(i, k)) + ma.get(k, j);
                    sys.set(row, var(i, k), v);
                }
                for k in 0..nb {
                    let v = sys.get(row, var(k, j)) - mb.get(i, k);
                    sys.set(row, var(k, j), v);
                }
            }
        }
    }
    let rank = match q {
        Some(q) => sys.eval(&q).field_rank(),
        None => sys.rank(),
    };
    Ok(unknowns - rank)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_expr;

    fn lp(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn small_u_modules() {
        let m = build_l_eps(0, Eps::Plus);
        for g in Gen::U_LETTERS {
            assert_eq!(m.action(g).unwrap(), &Matrix::identity(1));
        }
        let z = build_l_eps(1, Eps::Plus).action(Gen::Z).unwrap().clone();
        assert_eq!(z, Matrix::diagonal(vec![lp("q^-1"), lp("q")]));
        let z = build_l_eps(1, Eps::Minus).action(Gen::Z).unwrap().clone();
        assert_eq!(z, Matrix::diagonal(vec![lp("-q^-1"), lp("-q")]));
    }

    #[test]
    fn small_a_modules() {
        let m = build_l(1);
        let nx = m.action(Gen::NX).unwrap();
        assert_eq!(nx.get(1, 0), &lp("q^-1 - q"));
        assert_eq!(nx.get(0, 1), &LaurentPoly::zero());
        let ny = m.action(Gen::NY).unwrap();
        assert_eq!(ny.get(0, 1), &lp("q - q^-1"));
        let m = build_l(0);
        for g in [Gen::NX, Gen::NY, Gen::NZ] {
            assert!(m.action(g).unwrap().is_zero());
        }
        for g in [Gen::X2, Gen::Y2, Gen::Z2] {
            assert_eq!(m.action(g).unwrap(), &Matrix::identity(1));
        }
        for d in 0..5 {
            let z2 = build_l(d).action(Gen::Z2).unwrap().clone();
            let expected: Vec<_> = (0..=d as i32).map(|i| LaurentPoly::q_pow(4 * i - 2 * d as i32)).collect();
            assert_eq!(z2, Matrix::diagonal(expected));
        }
    }

    #[test]
    fn act_examples() {
        let m = build_l(2);
        assert_eq!(act(&NCPoly::one(Alphabet::A), &m).unwrap(), Matrix::identity(3));
        let p = parse_expr("nx^3", Alphabet::A).unwrap();
        assert!(act(&p, &m).unwrap().is_zero());
        assert!(act(&parse_expr("x", Alphabet::U).unwrap(), &m).is_err());
    }

    #[test]
    fn relations_hold_on_built_modules() {
        for d in [0, 1, 4] {
            assert!(check_module_relations(&build_l(d)).unwrap().iter().all(|c| c.holds));
            for eps in [Eps::Plus, Eps::Minus] {
                assert!(check_module_relations(&build_l_eps(d, eps)).unwrap().iter().all(|c| c.holds));
            }
        }
    }

    #[test]
    fn perturbed_module_fails_a_relation() {
        let m = build_l(2);
        let mut nz = m.action(Gen::NZ).unwrap().clone();
        nz.set(1, 1, nz.get(1, 1) + &LaurentPoly::one());
        let bad = m.with_action(Gen::NZ, nz).unwrap();
        assert!(check_module_relations(&bad).unwrap().iter().any(|c| !c.holds));
    }

    #[test]
    fn restriction_is_eps_independent() {
        for d in 0..4 {
            assert_eq!(build_l_eps(d, Eps::Plus).restrict().unwrap(), build_l(d));
            assert_eq!(build_l_eps(d, Eps::Minus).restrict().unwrap(), build_l(d));
        }
    }

    #[test]
    fn irreducibility() {
        for d in 0..5 {
            assert!(check_irreducible(&build_l(d)).unwrap());
        }
        let sum = build_l(0).direct_sum(&build_l(1)).unwrap();
        assert!(!check_irreducible(&sum).unwrap());
        let q = QValue::from_ratio(2, 1).unwrap();
        let p = Matrix::from_rows(vec![
            vec![crate::coeff::rat(1, 1), crate::coeff::rat(2, 1), crate::coeff::rat(0, 1)],
            vec![crate::coeff::rat(0, 1), crate::coeff::rat(1, 1), crate::coeff::rat(-3, 2)],
            vec![crate::coeff::rat(1, 1), crate::coeff::rat(0, 1), crate::coeff::rat(1, 1)],
        ])
        .unwrap();
        let conj = build_l(2).specialize(&q).unwrap().change_basis(&p).unwrap();
        assert!(check_irreducible(&conj).unwrap());
        let symbolic_conj = build_l(2).change_basis(&p).unwrap();
        assert!(matches!(check_irreducible(&symbolic_conj), Err(Error::NotApplicable(_))));
        let sum = sum.specialize(&q).unwrap();
        assert!(!check_irreducible(&sum).unwrap());
    }

    #[test]
    fn hom_dimensions() {
        let q = QValue::from_ratio(2, 1).unwrap();
        let (p, m) = (build_l_eps(1, Eps::Plus), build_l_eps(1, Eps::Minus));
        assert_eq!(hom_space_dim(&p, &m, Some(&q)).unwrap(), 0);
        assert_eq!(hom_space_dim(&p.restrict().unwrap(), &m.restrict().unwrap(), Some(&q)).unwrap(), 1);
        let two = build_l_eps(2, Eps::Plus);
        assert_eq!(hom_space_dim(&two, &two, Some(&q)).unwrap(), 1);
        assert_eq!(hom_space_dim(&two, &two, None).unwrap(), 1);
        assert_eq!(hom_space_dim(&build_l(1), &build_l(2), Some(&q)).unwrap(), 0);
    }

    #[test]
    fn nilpotency() {
        for d in 0..5u32 {
            let m = build_l(d as usize);
            assert_eq!(nilpotency_index(m.action(Gen::NX).unwrap()), Some(d + 1));
            assert_eq!(nilpotency_index(m.action(Gen::NY).unwrap()), Some(d + 1));
        }
        assert_eq!(nilpotency_index(&Matrix::<LaurentPoly>::identity(2)), None);
    }
}
