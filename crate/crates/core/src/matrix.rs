//! Dense complex Hermitian matrices.

use num_complex::Complex64;

use crate::error::{GainError, Result};

/// Elementwise tolerance for the conjugate-symmetry check.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Dense `n x n` complex matrix with `h[i][j] == conj(h[j][i])`.
///
/// Storage is row-major. Gain adjacency matrices, gain Laplacians and the
/// diagonal degree matrix all live here.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl HermitianMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Builds a matrix from row-major entries, rejecting anything that is not
    /// Hermitian within [`HERMITIAN_TOL`] elementwise.
    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(GainError::DimensionMismatch {
                    expected: n,
                    got: row.len(),
                });
            }
            data.extend(row);
        }
        let m = Self { n, data };
        let dev = m.hermitian_deviation();
        if dev > HERMITIAN_TOL {
            return Err(GainError::NotHermitian(dev));
        }
        Ok(m)
    }

    /// Wraps raw storage without checking. Callers guarantee the invariant.
    pub(crate) fn from_raw(n: usize, data: Vec<Complex64>) -> Self {
        debug_assert_eq!(data.len(), n * n);
        Self { n, data }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub(crate) fn set(&mut self, i: usize, j: usize, z: Complex64) {
        self.data[i * self.n + j] = z;
    }

    pub(crate) fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn rows(&self) -> Vec<Vec<Complex64>> {
        self.data
            .chunks(self.n.max(1))
            .take(self.n)
            .map(|r| r.to_vec())
            .collect()
    }

    /// Largest `|h[i][j] - conj(h[j][i])|`.
    pub fn hermitian_deviation(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.n {
            for j in i..self.n {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Real part of the trace (the imaginary part vanishes for Hermitian input).
    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i).re).sum()
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.get(i, i).re).collect()
    }

    pub fn mul_vec(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        if x.len() != self.n {
            return Err(GainError::DimensionMismatch {
                expected: self.n,
                got: x.len(),
            });
        }
        Ok((0..self.n)
            .map(|i| {
                self.data[i * self.n..(i + 1) * self.n]
                    .iter()
                    .zip(x)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect())
    }

    /// `x* H x`, real for Hermitian `H`.
    pub fn quadratic_form(&self, x: &[Complex64]) -> Result<f64> {
        let hx = self.mul_vec(x)?;
        Ok(x.iter().zip(&hx).map(|(a, b)| (a.conj() * b).re).sum())
    }

    /// Product of two matrices that commute (powers and inverses of one
    /// matrix). The result is re-symmetrized to absorb rounding.
    pub(crate) fn mul_commuting(&self, other: &Self) -> Self {
        let n = self.n;
        let mut out = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            let row = &self.data[i * n..(i + 1) * n];
            let out_row = &mut out[i * n..(i + 1) * n];
            for (k, a) in row.iter().enumerate() {
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                let other_row = &other.data[k * n..(k + 1) * n];
                for (o, b) in out_row.iter_mut().zip(other_row) {
                    *o += a * b;
                }
            }
        }
        let mut m = Self { n, data: out };
        m.symmetrize();
        m
    }

    pub(crate) fn scale(&mut self, factor: f64) {
        for z in &mut self.data {
            *z *= factor;
        }
    }

    pub(crate) fn symmetrize(&mut self) {
        let n = self.n;
        for i in 0..n {
            let d = self.data[i * n + i];
            self.data[i * n + i] = Complex64::new(d.re, 0.0);
            for j in i + 1..n {
                let avg = (self.data[i * n + j] + self.data[j * n + i].conj()) * 0.5;
                self.data[i * n + j] = avg;
                self.data[j * n + i] = avg.conj();
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn rejects_non_hermitian() {
        let rows = vec![vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(2.0, 0.0), c(0.0, 0.0)]];
        assert!(matches!(
            HermitianMatrix::from_rows(rows),
            Err(GainError::NotHermitian(_))
        ));
    }

    #[test]
    fn rejects_ragged() {
        let rows = vec![vec![c(0.0, 0.0)], vec![c(2.0, 0.0), c(0.0, 0.0)]];
        assert!(HermitianMatrix::from_rows(rows).is_err());
    }

    #[test]
    fn quadratic_form_of_identity_is_norm() {
        let id = HermitianMatrix::identity(3);
        let x = [c(1.0, 2.0), c(0.0, -1.0), c(3.0, 0.0)];
        assert!((id.quadratic_form(&x).unwrap() - 15.0).abs() < 1e-12);
        assert!(id.quadratic_form(&x[..2]).is_err());
    }

    #[test]
    fn commuting_product_squares() {
        let m =
            HermitianMatrix::from_rows(vec![vec![c(1.0, 0.0), c(0.0, 1.0)], vec![c(0.0, -1.0), c(1.0, 0.0)]]).unwrap();
        let sq = m.mul_commuting(&m);
        // [[1, i], [-i, 1]]^2 = [[2, 2i], [-2i, 2]]
        assert_eq!(sq.get(0, 0), c(2.0, 0.0));
        assert_eq!(sq.get(0, 1), c(0.0, 2.0));
        assert_eq!(sq.get(1, 0), c(0.0, -2.0));
        assert_eq!(sq.trace(), 4.0);
    }
}
