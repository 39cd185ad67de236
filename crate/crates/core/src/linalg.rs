//! Dense matrices over exact scalar rings.
//!
//! Rank and determinant over the Laurent ring use fraction-free (Bareiss)
//! elimination; row reduction, kernels and inverses are available over the
//! rationals.

use std::fmt;

use num_traits::{One, Zero};

use crate::coeff::{LaurentPoly, QValue, Rational};
use crate::error::{Error, Result};

/// The operations the matrix code needs from its entries.
pub trait Scalar: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negate(&self) -> Self;
    /// Quotient when `o` divides `self` exactly.
    fn div_exact(&self, o: &Self) -> Result<Self>;
}

/// Scalars in which every nonzero element is invertible.
pub trait Field: Scalar {
    fn inv(&self) -> Self;
}

impl Scalar for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn one() -> Self {
        LaurentPoly::one()
    }
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negate(&self) -> Self {
        -self
    }
    fn div_exact(&self, o: &Self) -> Result<Self> {
        LaurentPoly::div_exact(self, o)
    }
}

impl Scalar for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negate(&self) -> Self {
        -self
    }
    fn div_exact(&self, o: &Self) -> Result<Self> {
        if Zero::is_zero(o) {
            return Err(Error::DivisionByZero);
        }
        Ok(self / o)
    }
}

impl Field for Rational {
    fn inv(&self) -> Self {
        self.recip()
    }
}

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    pub fn diagonal(entries: Vec<T>) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, e) in entries.into_iter().enumerate() {
            m.set(i, i, e);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("rows of unequal length".into()));
        }
        Ok(Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<T>]) -> Result<Self> {
        let n = cols.first().map_or(0, Vec::len);
        let mut m = Self::zeros(n, cols.len());
        for (j, c) in cols.iter().enumerate() {
            if c.len() != n {
                return Err(Error::Dimension("columns of unequal length".into()));
            }
            for (i, e) in c.iter().enumerate() {
                m.set(i, j, e.clone());
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(j, i, self.get(i, j).clone());
            }
        }
        m
    }

    fn check_same_shape(&self, o: &Self) -> Result<()> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(Error::Dimension(format!("{}x{} and {}x{} matrices", self.rows, self.cols, o.rows, o.cols)));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check_same_shape(o)?;
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.plus(b)).collect(),
        })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.check_same_shape(o)?;
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.minus(b)).collect(),
        })
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|a| a.times(c))
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        if self.cols != o.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let mut m = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let v = m.get(i, j).plus(&a.times(b));
                        m.set(i, j, v);
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn mul_vec(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!("vector of length {} for {} columns", v.len(), self.cols)));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(T::zero(), |acc, (a, b)| acc.plus(&a.times(b)))
            })
            .collect())
    }

    pub fn pow(&self, n: u32) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Dimension("power of a non-square matrix".into()));
        }
        let mut acc = Self::identity(self.rows);
        for _ in 0..n {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Fraction-free row echelon form; returns the pivot columns and the
    /// sign-adjusted last pivot (the determinant for a full-rank square matrix).
    fn bareiss(&self) -> (Vec<usize>, T) {
        let mut a = self.clone();
        let mut prev = T::one();
        let mut sign = false;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(p) = (r..a.rows).find(|&i| !a.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..a.cols {
                    a.data.swap(p * a.cols + j, r * a.cols + j);
                }
                sign = !sign;
            }
            let piv = a.get(r, c).clone();
            for i in r + 1..a.rows {
                let lead = a.get(i, c).clone();
                for j in c + 1..a.cols {
                    let num = piv.times(a.get(i, j)).minus(&lead.times(a.get(r, j)));
                    let v = num.div_exact(&prev).expect("Bareiss division is exact");
                    a.set(i, j, v);
                }
                a.set(i, c, T::zero());
            }
            prev = piv;
            pivots.push(c);
            r += 1;
        }
        let last = if sign { prev.negate() } else { prev };
        (pivots, last)
    }

    /// Rank over the fraction field of the entries.
    pub fn rank(&self) -> usize {
        self.bareiss().0.len()
    }

    pub fn det(&self) -> Result<T> {
        if !self.is_square() {
            return Err(Error::Dimension("determinant of a non-square matrix".into()));
        }
        if self.rows == 0 {
            return Ok(T::one());
        }
        let (pivots, last) = self.bareiss();
        Ok(if pivots.len() == self.rows { last } else { T::zero() })
    }

    /// A nonzero kernel vector of a matrix with nullity exactly 1, with
    /// entries in the entry ring (generalised cross product of a maximal
    /// set of independent rows). `None` if the nullity is not 1.
    pub fn corank_one_kernel(&self) -> Option<Vec<T>> {
        let n = self.cols;
        let mut chosen: Vec<Vec<T>> = Vec::new();
        for i in 0..self.rows {
            let mut trial = chosen.clone();
            trial.push(self.row(i).to_vec());
            if Matrix::from_rows(trial.clone()).ok()?.rank() == trial.len() {
                chosen = trial;
            }
        }
        if chosen.len() + 1 != n {
            return None;
        }
        let v: Vec<T> = (0..n)
            .map(|j| {
                let minor: Vec<Vec<T>> = chosen
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, e)| e.clone()).collect())
                    .collect();
                let d = if minor.is_empty() {
                    T::one()
                } else {
                    Matrix::from_rows(minor).expect("square minor").det().expect("square minor")
                };
                if j % 2 == 1 {
                    d.negate()
                } else {
                    d
                }
            })
            .collect();
        Some(v)
    }
}

impl Matrix<LaurentPoly> {
    /// Substitutes a value for `q` in every entry.
    pub fn eval(&self, at: &QValue) -> Matrix<Rational> {
        self.map(|e| e.eval(at))
    }
}

impl<T: Field> Matrix<T> {
    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(p) = (r..a.rows).find(|&i| !a.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..a.cols {
                    a.data.swap(p * a.cols + j, r * a.cols + j);
                }
            }
            let inv = a.get(r, c).inv();
            for j in c..a.cols {
                let v = a.get(r, j).times(&inv);
                a.set(r, j, v);
            }
            for i in 0..a.rows {
                if i == r || a.get(i, c).is_zero() {
                    continue;
                }
                let f = a.get(i, c).clone();
                for j in c..a.cols {
                    let v = a.get(i, j).minus(&f.times(a.get(r, j)));
                    a.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (a, pivots)
    }

    /// A basis of the right kernel.
    pub fn kernel(&self) -> Vec<Vec<T>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![T::zero(); self.cols];
                v[f] = T::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = r.get(i, f).negate();
                }
                v
            })
            .collect()
    }

    pub fn field_rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, T::one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Some(inv)
    }
}

impl<T: Scalar> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{rat, rat_int};
    use proptest::prelude::*;

    fn lp(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    fn rm(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat_int(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn products_and_powers() {
        let a = rm(&[&[0, 1], &[0, 0]]);
        assert!(a.pow(2).unwrap().is_zero());
        assert_eq!(a.pow(0).unwrap(), Matrix::identity(2));
        assert!(a.mul(&rm(&[&[1, 2, 3]])).is_err());
    }

    #[test]
    fn symbolic_rank_and_det() {
        let m = Matrix::from_rows(vec![vec![lp("q"), lp("1")], vec![lp("1"), lp("q^-1")]]).unwrap();
        assert_eq!(m.rank(), 1);
        assert!(m.det().unwrap().is_zero());
        let m = Matrix::from_rows(vec![vec![lp("q"), lp("1")], vec![lp("1"), lp("q")]]).unwrap();
        assert_eq!(m.det().unwrap(), lp("q^2 - 1"));
        let k = Matrix::from_rows(vec![vec![lp("q"), lp("1")]]).unwrap().corank_one_kernel().unwrap();
        assert_eq!(k, vec![lp("1"), lp("-q")]);
    }

    #[test]
    fn rational_kernel_and_inverse() {
        let m = rm(&[&[1, 2, 3], &[2, 4, 6]]);
        assert_eq!(m.field_rank(), 1);
        let k = m.kernel();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.mul_vec(v).unwrap().iter().all(Zero::is_zero));
        }
        let a = rm(&[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), Matrix::identity(2));
        assert!(rm(&[&[1, 1], &[1, 1]]).inverse().is_none());
        assert_eq!(inv.get(0, 0), &rat(1, 1));
    }

    proptest! {
        #[test]
        fn bareiss_rank_matches_rref(rows in prop::collection::vec(prop::collection::vec(-3i64..4, 4), 1..5)) {
            let m = Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat_int(x)).collect()).collect()).unwrap();
            prop_assert_eq!(m.rank(), m.field_rank());
            let sym = m.map(|x| LaurentPoly::constant(x.clone()));
            prop_assert_eq!(sym.rank(), m.field_rank());
        }
    }
}
