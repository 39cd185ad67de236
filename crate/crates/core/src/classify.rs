//! Highest-weight data of irreducible modules over the even subalgebra.
//!
//! For an irreducible module, `ny` has a one-dimensional kernel spanned by
//! `v_0`. Setting `v_i = nx^i v_0` gives a basis on which
//!
//! ```text
//! nx v_i = v_{i+1},   ny v_i = alpha_i v_{i-1},   z2 v_i = q^(4i) lambda v_i
//! ```
//!
//! with `lambda = q^(-2d)` and `alpha_i = (q^(2i) - 1)(q^(2(i-d-1)) - 1)`.
//! The diagonal map `v_i -> gamma_i u_i` identifies the module with `L(d)`.

use std::collections::BTreeMap;

use crate::coeff::{LaurentPoly, QValue, Rational};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar};
use crate::module::{build_l, Mode, ModuleRep};
use crate::ncpoly::{Alphabet, Gen};

/// Output of [`extract_highest_weight`] and [`solve_alpha`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HwData {
    pub d: usize,
    /// Eigenvalue of `z2` on `v_0`.
    pub lambda: LaurentPoly,
    /// `alpha_0 .. alpha_{d+1}`.
    pub alpha: Vec<LaurentPoly>,
    /// Columns `v_0 .. v_d` in the coordinates of the input module.
    pub basis: Option<Matrix<LaurentPoly>>,
    /// The value of `q` when the data was computed numerically.
    pub q: Option<QValue>,
}

fn qp(k: i32) -> LaurentPoly {
    LaurentPoly::q_pow(k)
}

fn one() -> LaurentPoly {
    LaurentPoly::one()
}

/// `(q^(2i) - 1)(q^(2(i-d-1)) - 1)`.
pub fn alpha_closed_form(d: usize, i: usize) -> LaurentPoly {
    let (d, i) = (d as i32, i as i32);
    (qp(2 * i) - one()) * (qp(2 * (i - d - 1)) - one())
}

/// `lambda = q^(-2d)` and the `alpha_i` from the solution of
/// `alpha_{i+1} = q^2 alpha_i + (q^2 - 1)(q^(4i) lambda - 1)`, `alpha_0 = 0`.
/// The recurrence, the boundary value `alpha_{d+1} = 0` and the factored
/// form are checked.
pub fn solve_alpha(d: usize) -> Result<HwData> {
    let lambda = qp(-2 * d as i32);
    let alpha: Vec<LaurentPoly> =
        (0..=d as i32 + 1).map(|i| one() - qp(2 * i) + &lambda * &(qp(4 * i - 2) - qp(2 * i - 2))).collect();
    if !alpha[0].is_zero() || !alpha[d + 1].is_zero() {
        return Err(Error::Postcondition("boundary values of alpha are not zero".into()));
    }
    for i in 0..=d {
        let step = &qp(2) * &alpha[i] + (qp(2) - one()) * (qp(4 * i as i32) * &lambda - one());
        if alpha[i + 1] != step {
            return Err(Error::Postcondition(format!("recurrence fails at i = {i}")));
        }
        if alpha[i] != alpha_closed_form(d, i) {
            return Err(Error::Postcondition(format!("alpha_{i} differs from its factored form")));
        }
    }
    Ok(HwData { d, lambda, alpha, basis: None, q: None })
}

/// `c` with `num = c * den`, if such a scalar exists and `den != 0`.
fn ratio<T: Scalar>(num: &[T], den: &[T]) -> Option<T> {
    let k = den.iter().position(|e| !e.is_zero())?;
    let c = num[k].div_exact(&den[k]).ok()?;
    num.iter().zip(den).all(|(a, b)| *a == c.times(b)).then_some(c)
}

struct Ladder<T> {
    vectors: Vec<Vec<T>>,
    lambda: T,
    alpha: Vec<T>,
}

fn climb<T: Scalar>(nx: &Matrix<T>, ny: &Matrix<T>, z2: &Matrix<T>, v0: Vec<T>) -> Result<Ladder<T>> {
    let n = nx.rows();
    let lambda = ratio(&z2.mul_vec(&v0)?, &v0).ok_or(Error::NotEigen)?;
    let mut vectors = vec![v0];
    loop {
        let next = nx.mul_vec(vectors.last().expect("nonempty"))?;
        if next.iter().all(Scalar::is_zero) {
            break;
        }
        if vectors.len() == n {
            return Err(Error::Postcondition("nx is not nilpotent".into()));
        }
        vectors.push(next);
    }
    if vectors.len() != n {
        return Err(Error::LadderTooShort { found: vectors.len(), dim: n });
    }
    let mut alpha = vec![T::zero()];
    for i in 1..n {
        let image = ny.mul_vec(&vectors[i])?;
        alpha.push(ratio(&image, &vectors[i - 1]).ok_or(Error::NotInvariant(i))?);
    }
    alpha.push(T::zero());
    Ok(Ladder { vectors, lambda, alpha })
}

/// Recovers `d`, `lambda`, the `alpha_i` and the basis `v_i` from an
/// irreducible module, and checks them against the closed forms.
///
/// Requires `ker ny` to be one-dimensional.
pub fn extract_highest_weight(m: &ModuleRep) -> Result<HwData> {
    if m.alphabet() != Alphabet::A {
        return Err(Error::AlphabetMismatch { expected: Alphabet::A, found: m.alphabet() });
    }
    let n = m.dim();
    if n == 0 {
        return Err(Error::Dimension("module of dimension 0".into()));
    }
    let (nx, ny, z2) = (m.action(Gen::NX)?, m.action(Gen::NY)?, m.action(Gen::Z2)?);
    let d = n - 1;
    let (data, q) = match m.mode() {
        Mode::Symbolic => {
            let rank = ny.rank();
            if rank == n {
                return Err(Error::KernelEmpty);
            }
            if rank + 1 < n {
                return Err(Error::KernelTooLarge(n - rank));
            }
            let v0 =
                if n == 1 { vec![one()] } else { ny.corank_one_kernel().ok_or(Error::KernelTooLarge(n - rank))? };
            (climb(nx, ny, z2, v0)?, None)
        }
        Mode::Numeric(q) => {
            let (nx, ny, z2) = (nx.eval(q), ny.eval(q), z2.eval(q));
            let mut ker = ny.kernel();
            match ker.len() {
                0 => return Err(Error::KernelEmpty),
                1 => {}
                k => return Err(Error::KernelTooLarge(k)),
            }
            let l = climb(&nx, &ny, &z2, ker.remove(0))?;
            let lift = |v: &Rational| LaurentPoly::constant(v.clone());
            let lifted = Ladder {
                vectors: l.vectors.iter().map(|v| v.iter().map(lift).collect()).collect(),
                lambda: lift(&l.lambda),
                alpha: l.alpha.iter().map(lift).collect(),
            };
            (lifted, Some(q.clone()))
        }
    };
    let expect = |p: LaurentPoly| match &q {
        Some(q) => p.specialize(q),
        None => p,
    };
    if data.lambda != expect(qp(-2 * d as i32)) {
        return Err(Error::Postcondition(format!("lambda = {} is not q^{}", data.lambda, -2 * d as i32)));
    }
    for (i, a) in data.alpha.iter().enumerate().take(d + 1) {
        if *a != expect(alpha_closed_form(d, i)) {
            return Err(Error::Postcondition(format!("alpha_{i} = {a} does not match the closed form")));
        }
    }
    Ok(HwData { d, lambda: data.lambda, alpha: data.alpha, basis: Some(Matrix::from_columns(&data.vectors)?), q })
}

/// Which reading of the `x2` table on the `v` basis to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum X2Table {
    /// Entries carrying the factor `q^(2d-4i)` from `z2^-1`.
    Corrected,
    /// Entries `-q^2 (q + q^-1) alpha_i` and `q^4 alpha_i alpha_{i-1}`
    /// without that factor.
    Literal,
}

/// The action on `v_0 .. v_d` written out entry by entry.
pub fn v_module_from_tables(d: usize, x2: X2Table) -> ModuleRep {
    let n = d + 1;
    let di = d as i32;
    let alpha: Vec<LaurentPoly> = (0..=n).map(|i| alpha_closed_form(d, i)).collect();
    let qq = qp(1) + qp(-1);
    let mut m: BTreeMap<Gen, Matrix<LaurentPoly>> = Gen::A_LETTERS.iter().map(|&g| (g, Matrix::zeros(n, n))).collect();
    let mut put = |g: Gen, r: usize, c: usize, v: LaurentPoly| m.get_mut(&g).expect("letter").set(r, c, v);
    for i in 0..n {
        let ii = i as i32;
        let w = match x2 {
            X2Table::Corrected => qp(2 * di - 4 * ii),
            X2Table::Literal => one(),
        };
        put(Gen::Z2, i, i, qp(4 * ii - 2 * di));
        put(Gen::X2, i, i, qp(2 * di - 4 * ii));
        put(Gen::Y2, i, i, qp(2 * di - 4 * ii));
        put(
            Gen::NZ,
            i,
            i,
            qp(2 * di - 2 * ii + 1) + qp(-2 * ii - 1) - qp(2 * di - 4 * ii + 1) - qp(2 * di - 4 * ii - 1),
        );
        if i >= 1 {
            put(Gen::NY, i - 1, i, alpha[i].clone());
            put(Gen::X2, i - 1, i, -(&w * &qp(2) * &qq * &alpha[i]));
            put(Gen::NZ, i - 1, i, (qp(-2 * ii) - one()) * (qp(-2 * (ii - di - 1)) - one()));
        }
        if i >= 2 {
            put(Gen::X2, i - 2, i, &w * &qp(4) * &alpha[i] * &alpha[i - 1]);
        }
        if i < d {
            put(Gen::NX, i + 1, i, one());
            put(Gen::Y2, i + 1, i, -(qp(2 * di - 4 * ii - 2) * &qq));
            put(Gen::NZ, i + 1, i, qp(2 * di - 4 * ii - 2));
        }
        if i + 2 <= d {
            put(Gen::Y2, i + 2, i, qp(2 * di - 4 * ii - 4));
        }
    }
    ModuleRep::new(Alphabet::A, n, m, Mode::Symbolic).expect("well-formed")
}

/// The action on `v_0 .. v_d` computed from `nx`, `ny` and `z2` alone:
///
/// ```text
/// x2 = (1 - q^2 (q + q^-1) ny + q^4 ny^2) z2^-1
/// y2 = (1 - q^-2 (q + q^-1) nx + q^-4 nx^2) z2^-1
/// nz = (q^-1 z2 - q^-1 + q^-2 nx + q^2 ny - q nx ny) z2^-1
/// ```
pub fn v_module_derived(d: usize) -> Result<ModuleRep> {
    let n = d + 1;
    let di = d as i32;
    let mut nx = Matrix::zeros(n, n);
    let mut ny = Matrix::zeros(n, n);
    for i in 0..n {
        if i < d {
            nx.set(i + 1, i, one());
        }
        if i >= 1 {
            ny.set(i - 1, i, alpha_closed_form(d, i));
        }
    }
    let z2 = Matrix::diagonal((0..n as i32).map(|i| qp(4 * i - 2 * di)).collect());
    let z2_inv = Matrix::diagonal((0..n as i32).map(|i| qp(2 * di - 4 * i)).collect());
    let id = Matrix::<LaurentPoly>::identity(n);
    let qq = qp(1) + qp(-1);
    let x2 = id.sub(&ny.scale(&(qp(2) * &qq)))?.add(&ny.mul(&ny)?.scale(&qp(4)))?.mul(&z2_inv)?;
    let y2 = id.sub(&nx.scale(&(qp(-2) * &qq)))?.add(&nx.mul(&nx)?.scale(&qp(-4)))?.mul(&z2_inv)?;
    let nz = z2
        .scale(&qp(-1))
        .sub(&id.scale(&qp(-1)))?
        .add(&nx.scale(&qp(-2)))?
        .add(&ny.scale(&qp(2)))?
        .sub(&nx.mul(&ny)?.scale(&qp(1)))?
        .mul(&z2_inv)?;
    let actions =
        BTreeMap::from([(Gen::NX, nx), (Gen::NY, ny), (Gen::NZ, nz), (Gen::X2, x2), (Gen::Y2, y2), (Gen::Z2, z2)]);
    ModuleRep::new(Alphabet::A, n, actions, Mode::Symbolic)
}

/// The scalars `gamma_i` of the isomorphism `v_i -> gamma_i u_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaIso {
    pub gamma: Vec<LaurentPoly>,
}

impl GammaIso {
    pub fn matrix(&self) -> Matrix<LaurentPoly> {
        Matrix::diagonal(self.gamma.clone())
    }
}

/// `gamma_0 = 1`, `gamma_{i+1} = gamma_i q^-1 (1 - q^(2(i+1)))`; checks that
/// `diag(gamma)` intertwines the `v`-basis module with [`build_l`] for
/// every letter.
pub fn gamma_iso(d: usize) -> Result<GammaIso> {
    let mut gamma = vec![one()];
    for i in 0..d as i32 {
        let next = gamma.last().expect("nonempty") * &(qp(-1) * (one() - qp(2 * (i + 1))));
        gamma.push(next);
    }
    if gamma.iter().any(LaurentPoly::is_zero) {
        return Err(Error::Postcondition("some gamma_i vanishes".into()));
    }
    let iso = GammaIso { gamma };
    let g = iso.matrix();
    let (v, u) = (v_module_from_tables(d, X2Table::Corrected), build_l(d));
    for &letter in Alphabet::A.letters() {
        let left = g.mul(v.action(letter)?)?;
        let right = u.action(letter)?.mul(&g)?;
        if left != right {
            return Err(Error::Postcondition(format!("diag(gamma) does not intertwine {letter}")));
        }
    }
    Ok(iso)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::rat;
    use crate::module::check_module_relations;

    fn lp(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn alpha_examples() {
        let h = solve_alpha(3).unwrap();
        assert!(h.alpha[0].is_zero());
        assert_eq!(h.alpha[1], (lp("q^2") - one()) * (lp("q^-6") - one()));
        assert_eq!(h.lambda, lp("q^-6"));
        assert_eq!(h.alpha.len(), 5);
    }

    #[test]
    fn extraction_on_built_modules() {
        let h = extract_highest_weight(&build_l(3)).unwrap();
        assert_eq!(h.d, 3);
        assert_eq!(h.lambda, lp("q^-6"));
        for i in 0..=3 {
            assert_eq!(h.alpha[i], alpha_closed_form(3, i));
        }
        let h = extract_highest_weight(&build_l(0)).unwrap();
        assert_eq!((h.d, h.lambda.clone()), (0, one()));
        assert_eq!(h.alpha, vec![LaurentPoly::zero(), LaurentPoly::zero()]);
    }

    #[test]
    fn extraction_after_change_of_basis() {
        let q = QValue::from_ratio(3, 2).unwrap();
        let p = Matrix::from_rows(vec![
            vec![rat(2, 1), rat(1, 3), rat(0, 1)],
            vec![rat(-1, 1), rat(1, 1), rat(5, 7)],
            vec![rat(0, 1), rat(4, 1), rat(1, 1)],
        ])
        .unwrap();
        let m = build_l(2).specialize(&q).unwrap().change_basis(&p).unwrap();
        let h = extract_highest_weight(&m).unwrap();
        assert_eq!(h.d, 2);
        assert_eq!(h.lambda, LaurentPoly::constant(lp("q^-4").eval(&q)));
        assert_eq!(h.alpha[1], alpha_closed_form(2, 1).specialize(&q));
    }

    #[test]
    fn extraction_rejects_reducible_input() {
        let sum = build_l(1).direct_sum(&build_l(1)).unwrap();
        assert_eq!(extract_highest_weight(&sum), Err(Error::KernelTooLarge(2)));
    }

    #[test]
    fn gamma_values() {
        let g = gamma_iso(3).unwrap();
        assert_eq!(g.gamma[0], one());
        assert_eq!(g.gamma[1], lp("q^-1 - q"));
        assert_eq!(g.gamma[2], lp("q^-2") * (one() - lp("q^2")) * (one() - lp("q^4")));
    }

    #[test]
    fn v_modules_agree() {
        for d in 0..6 {
            let tables = v_module_from_tables(d, X2Table::Corrected);
            assert_eq!(tables, v_module_derived(d).unwrap());
            assert!(check_module_relations(&tables).unwrap().iter().all(|c| c.holds));
        }
        assert_ne!(v_module_from_tables(2, X2Table::Literal), v_module_derived(2).unwrap());
    }
}
