//! Small dense linear algebra: 2×2 complex matrices, LU with partial
//! pivoting and one-sided Jacobi singular values.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;

use crate::scalar::Real;

/// Dense 2×2 complex matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2<T> {
    pub e: [[Complex<T>; 2]; 2],
}

impl<T: Real> Mat2<T> {
    pub fn new(e: [[Complex<T>; 2]; 2]) -> Self {
        Self { e }
    }

    pub fn zero() -> Self {
        let z = Complex::new(T::zero(), T::zero());
        Self { e: [[z, z], [z, z]] }
    }

    pub fn identity() -> Self {
        Self::diag(T::one(), T::one())
    }

    pub fn diag(a: T, d: T) -> Self {
        let z = Complex::new(T::zero(), T::zero());
        Self {
            e: [[Complex::new(a, T::zero()), z], [z, Complex::new(d, T::zero())]],
        }
    }

    /// Hermitian matrix with real diagonal `a`, `d` and upper entry `b`.
    pub fn hermitian(a: T, b: Complex<T>, d: T) -> Self {
        Self {
            e: [
                [Complex::new(a, T::zero()), b],
                [b.conj(), Complex::new(d, T::zero())],
            ],
        }
    }

    /// `|v⟩⟨v|`.
    pub fn outer(v: [Complex<T>; 2]) -> Self {
        let mut e = Self::zero().e;
        for (i, row) in e.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = v[i] * v[j].conj();
            }
        }
        Self { e }
    }

    /// `(r0·I + rx·X + ry·Y + rz·Z) / 2`.
    pub fn from_pauli(r0: T, rx: T, ry: T, rz: T) -> Self {
        let half = T::lit(0.5);
        Self::hermitian(
            half * (r0 + rz),
            Complex::new(half * rx, -half * ry),
            half * (r0 - rz),
        )
    }

    /// Pauli coordinates `(Tr M, Tr MX, Tr MY, Tr MZ)` of the Hermitian part.
    pub fn pauli(&self) -> [T; 4] {
        let off = (self.e[0][1] + self.e[1][0].conj()) * T::lit(0.5);
        [
            self.e[0][0].re + self.e[1][1].re,
            off.re + off.re,
            -(off.im + off.im),
            self.e[0][0].re - self.e[1][1].re,
        ]
    }

    pub fn trace(&self) -> Complex<T> {
        self.e[0][0] + self.e[1][1]
    }

    pub fn dagger(&self) -> Self {
        let e = &self.e;
        Self {
            e: [
                [e[0][0].conj(), e[1][0].conj()],
                [e[0][1].conj(), e[1][1].conj()],
            ],
        }
    }

    pub fn scale(&self, s: T) -> Self {
        let mut out = *self;
        for row in out.e.iter_mut() {
            for x in row.iter_mut() {
                *x = *x * s;
            }
        }
        out
    }

    pub fn apply(&self, v: [Complex<T>; 2]) -> [Complex<T>; 2] {
        [
            self.e[0][0] * v[0] + self.e[0][1] * v[1],
            self.e[1][0] * v[0] + self.e[1][1] * v[1],
        ]
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        let mut m = T::zero();
        for i in 0..2 {
            for j in 0..2 {
                m = m.max((self.e[i][j] - other.e[i][j]).norm());
            }
        }
        m
    }

    /// Largest entrywise deviation from Hermiticity.
    pub fn hermiticity_error(&self) -> T {
        self.max_abs_diff(&self.dagger())
    }

    /// Eigenvalues of the Hermitian part, ascending.
    pub fn eigvalsh(&self) -> [T; 2] {
        let [r0, rx, ry, rz] = self.pauli();
        let half = T::lit(0.5);
        let radius = half * (rx * rx + ry * ry + rz * rz).sqrt();
        [half * r0 - radius, half * r0 + radius]
    }

    /// `Tr(A B)`.
    pub fn trace_product(&self, other: &Self) -> Complex<T> {
        let a = &self.e;
        let b = &other.e;
        a[0][0] * b[0][0] + a[0][1] * b[1][0] + a[1][0] * b[0][1] + a[1][1] * b[1][1]
    }
}

impl<T: Real> Add for Mat2<T> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for i in 0..2 {
            for j in 0..2 {
                self.e[i][j] = self.e[i][j] + rhs.e[i][j];
            }
        }
        self
    }
}

impl<T: Real> Sub for Mat2<T> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        for i in 0..2 {
            for j in 0..2 {
                self.e[i][j] = self.e[i][j] - rhs.e[i][j];
            }
        }
        self
    }
}

impl<T: Real> Neg for Mat2<T> {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-T::one())
    }
}

impl<T: Real> Mul for Mat2<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let a = &self.e;
        let b = &rhs.e;
        let mut e = Self::zero().e;
        for (i, row) in e.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Self { e }
    }
}

/// Solves `A x = b` by Gaussian elimination with partial pivoting.
///
/// Returns `None` when a pivot is exactly zero or not finite.
pub fn lu_solve<T: Real>(a: &[Vec<T>], b: &[T]) -> Option<Vec<T>> {
    let n = b.len();
    debug_assert!(a.len() == n && a.iter().all(|r| r.len() == n));
    let mut m: Vec<Vec<T>> = a.to_vec();
    let mut rhs = b.to_vec();
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| {
            m[i][col]
                .abs()
                .partial_cmp(&m[j][col].abs())
                .unwrap_or(std::cmp::Ordering::Equal)
        })?;
        let pv = m[pivot][col];
        if pv == T::zero() || !pv.is_finite() {
            return None;
        }
        m.swap(col, pivot);
        rhs.swap(col, pivot);
        for row in col + 1..n {
            let factor = m[row][col] / m[col][col];
            if factor == T::zero() {
                continue;
            }
            for k in col..n {
                let v = m[col][k];
                m[row][k] = m[row][k] - factor * v;
            }
            rhs[row] = rhs[row] - factor * rhs[col];
        }
    }
    let mut x = vec![T::zero(); n];
    for row in (0..n).rev() {
        let mut acc = rhs[row];
        for k in row + 1..n {
            acc = acc - m[row][k] * x[k];
        }
        x[row] = acc / m[row][row];
    }
    Some(x)
}

pub fn mat_vec<T: Real>(a: &[Vec<T>], x: &[T]) -> Vec<T> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(x)
                .fold(T::zero(), |acc, (&r, &v)| acc + r * v)
        })
        .collect()
}

/// Singular values of a dense `rows × cols` matrix, descending, truncated to
/// `min(rows, cols)` entries.
///
/// One-sided Jacobi on the columns; small singular values come out with
/// high relative accuracy, which is what rank decisions need.
pub fn singular_values<T: Real>(a: &[Vec<T>]) -> Vec<T> {
    let rows = a.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = a[0].len();
    let mut cs: Vec<Vec<T>> = (0..cols)
        .map(|j| a.iter().map(|r| r[j]).collect())
        .collect();
    let eps = T::epsilon();
    for _sweep in 0..60 {
        let mut rotated = false;
        for p in 0..cols {
            for q in p + 1..cols {
                let (mut alpha, mut beta, mut gamma) = (T::zero(), T::zero(), T::zero());
                for k in 0..rows {
                    alpha = alpha + cs[p][k] * cs[p][k];
                    beta = beta + cs[q][k] * cs[q][k];
                    gamma = gamma + cs[p][k] * cs[q][k];
                }
                if gamma == T::zero() || gamma.abs() <= eps * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (T::lit(2.0) * gamma);
                let t = zeta.signum() / (zeta.abs() + (T::one() + zeta * zeta).sqrt());
                let c = T::one() / (T::one() + t * t).sqrt();
                let s = c * t;
                for k in 0..rows {
                    let x = cs[p][k];
                    let y = cs[q][k];
                    cs[p][k] = c * x - s * y;
                    cs[q][k] = s * x + c * y;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sv: Vec<T> = cs
        .iter()
        .map(|c| c.iter().fold(T::zero(), |acc, &x| acc + x * x).sqrt())
        .collect();
    sv.sort_by(|x, y| y.partial_cmp(x).unwrap_or(std::cmp::Ordering::Equal));
    sv.truncate(rows.min(cols));
    sv
}

/// 2-norm condition number; infinite when the smallest singular value is 0.
pub fn condition_number<T: Real>(a: &[Vec<T>]) -> T {
    let sv = singular_values(a);
    match (sv.first(), sv.last()) {
        (Some(&hi), Some(&lo)) if lo > T::zero() => hi / lo,
        _ => T::infinity(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn pauli_roundtrip() {
        let m = Mat2::hermitian(0.7, c(0.1, -0.25), 0.3);
        let [r0, rx, ry, rz] = m.pauli();
        let back = Mat2::from_pauli(r0, rx, ry, rz);
        assert!(m.max_abs_diff(&back) < 1e-15);
        assert!((ry - 0.5).abs() < 1e-15);
    }

    #[test]
    fn eigenvalues_of_hermitian() {
        let m = Mat2::hermitian(1.0, c(0.0, 0.0), -1.0);
        assert_eq!(m.eigvalsh(), [-1.0, 1.0]);
        let p = Mat2::outer([c(1.0, 0.0), c(0.0, 1.0)]).scale(0.5);
        let ev = p.eigvalsh();
        assert!(ev[0].abs() < 1e-15 && (ev[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn lu_matches_known_solution() {
        let a = vec![
            vec![0.0, 2.0, 1.0],
            vec![1.0, -1.0, 0.0],
            vec![3.0, 0.0, 4.0],
        ];
        let x_true = [1.0f64, -2.0, 0.5];
        let b = mat_vec(&a, &x_true);
        let x = lu_solve(&a, &b).unwrap();
        for (u, v) in x.iter().zip(x_true) {
            assert!((u - v).abs() < 1e-14);
        }
        let singular = vec![vec![1.0, 2.0], vec![2.0, 4.0]];
        assert!(lu_solve(&singular, &[1.0, 1.0]).is_none());
    }

    #[test]
    fn singular_values_of_diagonal_and_rank_deficient() {
        let a = vec![vec![3.0f64, 0.0], vec![0.0, -4.0], vec![0.0, 0.0]];
        let sv = singular_values(&a);
        assert!((sv[0] - 4.0).abs() < 1e-14 && (sv[1] - 3.0).abs() < 1e-14);
        let b = vec![vec![1.0, 2.0], vec![2.0, 4.0]];
        let sv = singular_values(&b);
        assert!(sv[1] < 1e-15);
        assert!(condition_number(&b) > 1e15);
    }
}
