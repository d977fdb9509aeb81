//! Hermitian eigensolver and power-based estimates of the extremal Laplacian
//! eigenvalues.
//!
//! Eigenvalues come from cyclic complex Jacobi: every off-diagonal pair is
//! annihilated by a 2x2 unitary (a phase that makes the pivot real followed by
//! a real plane rotation). Powers `L^k` are formed by repeated squaring on a
//! [`ScaledPower`], which keeps the entries near unit size and carries the
//! magnitude in a separate logarithm so `k` in the hundreds cannot overflow.

use num_complex::Complex64;

use crate::error::{GainError, Result};
use crate::matrix::{HermitianMatrix, HERMITIAN_TOL};

/// Sweeps stop once the off-diagonal Frobenius norm drops below this fraction
/// of the full Frobenius norm.
pub const JACOBI_TOL: f64 = 1e-12;
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Ascending eigenvalues of a Hermitian matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    values: Vec<f64>,
}

impl Spectrum {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    /// Smallest eigenvalue (`λ₁`). `NaN` for the empty spectrum.
    pub fn lambda_min(&self) -> f64 {
        self.values.first().copied().unwrap_or(f64::NAN)
    }

    /// Largest eigenvalue (`λₙ`). `NaN` for the empty spectrum.
    pub fn lambda_max(&self) -> f64 {
        self.values.last().copied().unwrap_or(f64::NAN)
    }
}

pub fn eigenvalues(h: &HermitianMatrix) -> Result<Spectrum> {
    Ok(jacobi(h, false)?.0)
}

/// Eigenvalues plus unitary eigenvector matrix (column `j` belongs to
/// `values[j]`), row-major.
pub fn eigen_decomposition(h: &HermitianMatrix) -> Result<(Spectrum, Vec<Complex64>)> {
    let (spectrum, v) = jacobi(h, true)?;
    Ok((spectrum, v.expect("vectors requested")))
}

fn jacobi(h: &HermitianMatrix, want_vectors: bool) -> Result<(Spectrum, Option<Vec<Complex64>>)> {
    let dev = h.hermitian_deviation();
    if dev > HERMITIAN_TOL * h.max_abs().max(1.0) {
        return Err(GainError::NotHermitian(dev));
    }
    let n = h.n();
    let mut a = h.data().to_vec();
    let zero = Complex64::new(0.0, 0.0);
    let mut v = want_vectors.then(|| HermitianMatrix::identity(n).data().to_vec());
    let norm = h.frobenius_norm();

    let off_norm = |a: &[Complex64]| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a[i * n + j].norm_sqr();
                }
            }
        }
        s.sqrt()
    };

    let mut sweep = 0;
    loop {
        if norm == 0.0 || off_norm(&a) <= JACOBI_TOL * norm {
            break;
        }
        if sweep == JACOBI_MAX_SWEEPS {
            return Err(GainError::NoConvergence(JACOBI_MAX_SWEEPS));
        }
        sweep += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                let r = apq.norm();
                if r == 0.0 {
                    continue;
                }
                let phase = apq / r;
                let app = a[p * n + p].re;
                let aqq = a[q * n + q].re;
                let theta = (aqq - app) / (2.0 * r);
                let t = if theta == 0.0 {
                    1.0
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                // U = diag(1, conj(phase)) * [[c, s], [-s, c]]
                let u_pp = Complex64::new(c, 0.0);
                let u_pq = Complex64::new(s, 0.0);
                let u_qp = -phase.conj() * s;
                let u_qq = phase.conj() * c;

                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = akp * u_pp + akq * u_qp;
                    a[k * n + q] = akp * u_pq + akq * u_qq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = u_pp.conj() * apk + u_qp.conj() * aqk;
                    a[q * n + k] = u_pq.conj() * apk + u_qq.conj() * aqk;
                }
                a[p * n + q] = zero;
                a[q * n + p] = zero;
                a[p * n + p].im = 0.0;
                a[q * n + q].im = 0.0;

                if let Some(v) = v.as_mut() {
                    for k in 0..n {
                        let vkp = v[k * n + p];
                        let vkq = v[k * n + q];
                        v[k * n + p] = vkp * u_pp + vkq * u_qp;
                        v[k * n + q] = vkp * u_pq + vkq * u_qq;
                    }
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].re.total_cmp(&a[j * n + j].re));
    let values = order.iter().map(|&i| a[i * n + i].re).collect();
    let vectors = v.map(|v| {
        let mut sorted = vec![zero; n * n];
        for (new_col, &old_col) in order.iter().enumerate() {
            for row in 0..n {
                sorted[row * n + new_col] = v[row * n + old_col];
            }
        }
        sorted
    });
    Ok((Spectrum { values }, vectors))
}

/// A matrix power stored as `matrix * e^{log_scale}` with the largest entry of
/// `matrix` kept in `[1, 2)` (or `matrix` identically zero).
#[derive(Debug, Clone)]
pub struct ScaledPower {
    matrix: HermitianMatrix,
    log_scale: f64,
}

impl ScaledPower {
    pub fn new(m: &HermitianMatrix) -> Self {
        let mut p = Self {
            matrix: m.clone(),
            log_scale: 0.0,
        };
        p.renormalize();
        p
    }

    fn renormalize(&mut self) {
        let mx = self.matrix.max_abs();
        if mx == 0.0 || !mx.is_finite() {
            return;
        }
        // power-of-two factors keep the rescaling exact
        let e = mx.log2().floor() as i32;
        if e != 0 {
            self.matrix.scale(2f64.powi(-e));
            self.log_scale += e as f64 * std::f64::consts::LN_2;
        }
    }

    /// `base^k` by binary repeated squaring.
    pub fn pow(base: &HermitianMatrix, k: u32) -> Result<Self> {
        if k == 0 {
            return Err(GainError::InvalidParameter("power k must be at least 1".into()));
        }
        let mut sq = Self::new(base);
        let mut acc: Option<Self> = None;
        let mut e = k;
        loop {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => sq.clone(),
                    Some(a) => a.mul(&sq),
                });
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            sq = sq.mul(&sq);
        }
        Ok(acc.expect("k >= 1"))
    }

    /// Product of two powers of the same matrix.
    pub fn mul(&self, other: &Self) -> Self {
        let mut p = Self {
            matrix: self.matrix.mul_commuting(&other.matrix),
            log_scale: self.log_scale + other.log_scale,
        };
        p.renormalize();
        p
    }

    pub fn matrix(&self) -> &HermitianMatrix {
        &self.matrix
    }

    pub fn log_scale(&self) -> f64 {
        self.log_scale
    }

    /// `ln` of the largest diagonal entry of the true power (`-inf` if no
    /// diagonal entry is positive).
    pub fn log_max_diagonal(&self) -> f64 {
        let d = self.matrix.diagonal().into_iter().fold(f64::NEG_INFINITY, f64::max);
        if d > 0.0 {
            d.ln() + self.log_scale
        } else {
            f64::NEG_INFINITY
        }
    }
}

/// `(max_i (L^k)_ii)^{1/k}`, a lower bound on `λₙ` that tends to `λₙ`.
pub fn diag_power_bound(l: &HermitianMatrix, k: u32) -> Result<f64> {
    let p = ScaledPower::pow(l, k)?;
    Ok(root_from_log(p.log_max_diagonal(), k))
}

fn root_from_log(log_value: f64, k: u32) -> f64 {
    if log_value == f64::NEG_INFINITY {
        0.0
    } else {
        (log_value / k as f64).exp()
    }
}

/// Trace-moment lower bound on `λₙ`:
/// `(Tr(L^k)/n + sqrt((n Tr(L^{2k}) - Tr(L^k)²) / (n²(n-1))))^{1/k}`.
pub fn trace_power_bound(l: &HermitianMatrix, k: u32) -> Result<f64> {
    let n = l.n();
    if n < 2 {
        return Err(GainError::InvalidParameter(format!(
            "trace bound needs n >= 2, got {n}"
        )));
    }
    let pk = ScaledPower::pow(l, k)?;
    let p2k = pk.mul(&pk);
    let s = pk.log_scale();
    // both traces expressed relative to e^s (resp. e^{2s})
    let t1 = pk.matrix().trace();
    let t2 = p2k.matrix().trace() * (p2k.log_scale() - 2.0 * s).exp();
    let nf = n as f64;
    let spread = ((nf * t2 - t1 * t1) / (nf * nf * (nf - 1.0))).max(0.0);
    let inner = t1 / nf + spread.sqrt();
    if inner <= 0.0 {
        return Ok(0.0);
    }
    Ok(((inner.ln() + s) / k as f64).exp())
}

/// `(max_i (L^{-k})_ii)^{-1/k}`, an upper estimate of `λ₁` for unbalanced
/// graphs that tends to `λ₁`.
pub fn inverse_diag_power_bound(l: &HermitianMatrix, k: u32) -> Result<f64> {
    if k == 0 {
        return Err(GainError::InvalidParameter("power k must be at least 1".into()));
    }
    let inv = invert(l)?;
    let p = ScaledPower::pow(&inv, k)?;
    let log_d = p.log_max_diagonal();
    if log_d == f64::NEG_INFINITY {
        return Err(GainError::Singular);
    }
    Ok((-log_d / k as f64).exp())
}

/// Relative pivot threshold below which `L` is treated as singular.
const SINGULAR_TOL: f64 = 1e-10;

/// Inverse by Gaussian elimination with partial pivoting on `[L | I]`.
pub(crate) fn invert(l: &HermitianMatrix) -> Result<HermitianMatrix> {
    let n = l.n();
    let scale = l.max_abs();
    if n == 0 || scale == 0.0 {
        return Err(GainError::Singular);
    }
    let w = 2 * n;
    let mut aug = vec![Complex64::new(0.0, 0.0); n * w];
    for i in 0..n {
        for j in 0..n {
            aug[i * w + j] = l.get(i, j);
        }
        aug[i * w + n + i] = Complex64::new(1.0, 0.0);
    }
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&a, &b| aug[a * w + col].norm().total_cmp(&aug[b * w + col].norm()))
            .unwrap();
        if aug[piv * w + col].norm() <= SINGULAR_TOL * scale {
            return Err(GainError::Singular);
        }
        if piv != col {
            for j in 0..w {
                aug.swap(col * w + j, piv * w + j);
            }
        }
        let d = aug[col * w + col];
        for j in 0..w {
            aug[col * w + j] /= d;
        }
        for i in 0..n {
            if i == col {
                continue;
            }
            let f = aug[i * w + col];
            if f.norm() == 0.0 {
                continue;
            }
            for j in 0..w {
                let x = aug[col * w + j];
                aug[i * w + j] -= f * x;
            }
        }
    }
    let mut data = Vec::with_capacity(n * n);
    for i in 0..n {
        data.extend_from_slice(&aug[i * w + n..i * w + w]);
    }
    let mut inv = HermitianMatrix::from_raw(n, data);
    inv.symmetrize();
    Ok(inv)
}

/// Both power lower bounds on `λₙ` at one depth `k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerBounds {
    pub k: u32,
    pub diag: f64,
    /// `None` when `n < 2`.
    pub trace: Option<f64>,
}

/// [`diag_power_bound`] and [`trace_power_bound`] for `k = 1..=kmax`, with one
/// matrix product per step. `Tr(L^{2k})` is read off as `‖L^k‖_F²`.
pub fn power_bound_sequence(l: &HermitianMatrix, kmax: u32) -> Result<Vec<PowerBounds>> {
    let n = l.n();
    let nf = n as f64;
    let step = ScaledPower::new(l);
    let mut p = step.clone();
    let mut out = Vec::with_capacity(kmax as usize);
    for k in 1..=kmax {
        if k > 1 {
            p = p.mul(&step);
        }
        let diag = root_from_log(p.log_max_diagonal(), k);
        let trace = (n >= 2).then(|| {
            let t1 = p.matrix().trace();
            let t2 = p.matrix().frobenius_norm().powi(2);
            let spread = ((nf * t2 - t1 * t1) / (nf * nf * (nf - 1.0))).max(0.0);
            let inner = t1 / nf + spread.sqrt();
            if inner <= 0.0 {
                0.0
            } else {
                ((inner.ln() + p.log_scale()) / k as f64).exp()
            }
        });
        out.push(PowerBounds { k, diag, trace });
    }
    Ok(out)
}
