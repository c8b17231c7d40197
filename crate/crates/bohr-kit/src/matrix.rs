//! Dense complex matrices with certified spectral norms.
//!
//! Every operator coefficient in this crate is a finite `d x d` complex
//! matrix. The spectral norm (largest singular value) is the only norm the
//! Bohr-type functionals consume, and it is computed with a two-sided
//! certificate: a Rayleigh-quotient lower bound from power iteration on the
//! Gram matrix, and an upper bound proved by a Cholesky positivity test of
//! `mu*I - M*M`. The midpoint is reported as the norm; the enclosure is
//! available to callers that need rigorous sup bounds.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors from matrix construction and inversion.
#[derive(Debug, Error)]
pub enum MatrixError {
    #[error("matrix dimension must be at least 1")]
    ZeroDim,
    #[error("expected {expected} entries for a {dim}x{dim} matrix, got {got}")]
    BadShape {
        dim: usize,
        expected: usize,
        got: usize,
    },
    #[error("matrix entries must be finite")]
    NonFinite,
    #[error("dimension mismatch: {0} vs {1}")]
    DimMismatch(usize, usize),
    #[error("matrix is singular")]
    Singular,
    #[error("matrix too ill-conditioned to invert reliably (cond ~ {cond:.3e})")]
    IllConditioned { cond: f64 },
}

/// A dense `d x d` complex matrix, row-major, immutable after construction.
///
/// Construction rejects non-finite entries, so every held matrix is finite.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MatrixRepr", into = "MatrixRepr")]
pub struct ComplexMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

/// JSON shape: `{"dim": d, "entries": [[[re,im], ...], ...]}`, row-major.
#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    dim: usize,
    entries: Vec<Vec<[f64; 2]>>,
}

impl From<ComplexMatrix> for MatrixRepr {
    fn from(m: ComplexMatrix) -> Self {
        let entries = (0..m.dim)
            .map(|i| {
                (0..m.dim)
                    .map(|j| [m.get(i, j).re, m.get(i, j).im])
                    .collect()
            })
            .collect();
        MatrixRepr {
            dim: m.dim,
            entries,
        }
    }
}

impl TryFrom<MatrixRepr> for ComplexMatrix {
    type Error = MatrixError;

    fn try_from(repr: MatrixRepr) -> Result<Self, MatrixError> {
        let mut entries = Vec::with_capacity(repr.dim * repr.dim);
        if repr.entries.len() != repr.dim {
            return Err(MatrixError::BadShape {
                dim: repr.dim,
                expected: repr.dim * repr.dim,
                got: repr.entries.iter().map(Vec::len).sum(),
            });
        }
        for row in &repr.entries {
            if row.len() != repr.dim {
                return Err(MatrixError::BadShape {
                    dim: repr.dim,
                    expected: repr.dim * repr.dim,
                    got: repr.entries.iter().map(Vec::len).sum(),
                });
            }
            entries.extend(row.iter().map(|&[re, im]| Complex64::new(re, im)));
        }
        ComplexMatrix::new(repr.dim, entries)
    }
}

impl std::fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "ComplexMatrix({})", self.dim)?;
        for i in 0..self.dim {
            write!(f, "  [")?;
            for j in 0..self.dim {
                let z = self.get(i, j);
                write!(f, " {:.4}{:+.4}i", z.re, z.im)?;
            }
            writeln!(f, " ]")?;
        }
        Ok(())
    }
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries.
    pub fn new(dim: usize, entries: Vec<Complex64>) -> Result<Self, MatrixError> {
        if dim == 0 {
            return Err(MatrixError::ZeroDim);
        }
        if entries.len() != dim * dim {
            return Err(MatrixError::BadShape {
                dim,
                expected: dim * dim,
                got: entries.len(),
            });
        }
        if entries
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(MatrixError::NonFinite);
        }
        Ok(ComplexMatrix { dim, entries })
    }

    /// Builds a matrix entry by entry; `f(i, j)` gives the `(row, col)` entry.
    pub fn from_fn(
        dim: usize,
        mut f: impl FnMut(usize, usize) -> Complex64,
    ) -> Result<Self, MatrixError> {
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                entries.push(f(i, j));
            }
        }
        Self::new(dim, entries)
    }

    pub fn zeros(dim: usize) -> Self {
        ComplexMatrix {
            dim,
            entries: vec![Complex64::ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::scalar(dim, Complex64::ONE)
    }

    /// `c * I`.
    pub fn scalar(dim: usize, c: Complex64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = c;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.dim + j]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|z| z.re == 0.0 && z.im == 0.0)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        ComplexMatrix {
            dim: self.dim,
            entries,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        ComplexMatrix {
            dim: self.dim,
            entries,
        }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let entries = self.entries.iter().map(|a| a * c).collect();
        ComplexMatrix {
            dim: self.dim,
            entries,
        }
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let d = self.dim;
        let mut entries = vec![Complex64::ZERO; d * d];
        for i in 0..d {
            for k in 0..d {
                let a = self.entries[i * d + k];
                if a == Complex64::ZERO {
                    continue;
                }
                for j in 0..d {
                    entries[i * d + j] += a * other.entries[k * d + j];
                }
            }
        }
        ComplexMatrix { dim: d, entries }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let d = self.dim;
        let mut entries = vec![Complex64::ZERO; d * d];
        for i in 0..d {
            for j in 0..d {
                entries[j * d + i] = self.entries[i * d + j].conj();
            }
        }
        ComplexMatrix { dim: d, entries }
    }

    /// Assembles the `2d x 2d` block matrix `[[a, b], [c, d]]`.
    pub fn block2(a: &Self, b: &Self, c: &Self, d: &Self) -> Result<Self, MatrixError> {
        let n = a.dim;
        if b.dim != n || c.dim != n || d.dim != n {
            return Err(MatrixError::DimMismatch(n, b.dim.max(c.dim).max(d.dim)));
        }
        Self::from_fn(2 * n, |i, j| match (i < n, j < n) {
            (true, true) => a.get(i, j),
            (true, false) => b.get(i, j - n),
            (false, true) => c.get(i - n, j),
            (false, false) => d.get(i - n, j - n),
        })
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest singular value, accurate to roughly `1e-12` at unit scale.
    pub fn spectral_norm(&self) -> f64 {
        let (lo, hi) = self.spectral_norm_bounds();
        0.5 * (lo + hi)
    }

    /// Certified enclosure `lo <= sigma_max(self) <= hi`.
    pub fn spectral_norm_bounds(&self) -> (f64, f64) {
        self.sigma_bounds_with(48, 64)
    }

    /// Cheaper enclosure for inner loops; wider when the top two singular
    /// values nearly coincide, but always valid.
    pub fn spectral_norm_bounds_quick(&self) -> (f64, f64) {
        self.sigma_bounds_with(10, 12)
    }

    fn sigma_bounds_with(&self, squarings: u32, refine_iters: u32) -> (f64, f64) {
        let alpha = self.max_abs();
        if alpha == 0.0 {
            return (0.0, 0.0);
        }
        let d = self.dim;
        let inv_alpha = 1.0 / alpha;

        // Gram matrix of the rescaled input: g[i][j] = sum_k conj(m[k][i]) m[k][j].
        let mut gram = vec![Complex64::ZERO; d * d];
        for k in 0..d {
            for i in 0..d {
                let a = (self.entries[k * d + i] * inv_alpha).conj();
                if a == Complex64::ZERO {
                    continue;
                }
                for j in 0..d {
                    gram[i * d + j] += a * self.entries[k * d + j] * inv_alpha;
                }
            }
        }

        let frob = |m: &[Complex64]| m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();

        // Repeated squaring drives the Gram matrix toward a projector onto
        // the dominant eigenspace, so power iteration starts essentially
        // converged even for tight eigenvalue gaps.
        let mut h = gram.clone();
        let f0 = frob(&h);
        h.iter_mut().for_each(|z| *z /= f0);
        let mut tmp = vec![Complex64::ZERO; d * d];
        for _ in 0..squarings {
            matmul_into(d, &h, &h, &mut tmp);
            let f = frob(&tmp);
            if f == 0.0 || !f.is_finite() {
                break;
            }
            for (hz, tz) in h.iter_mut().zip(&tmp) {
                *hz = tz / f;
            }
        }

        // Start vector: the column of H with the largest 2-norm.
        let mut v: Vec<Complex64> = {
            let mut best = 0;
            let mut best_norm = -1.0;
            for j in 0..d {
                let n: f64 = (0..d).map(|i| h[i * d + j].norm_sqr()).sum();
                if n > best_norm {
                    best_norm = n;
                    best = j;
                }
            }
            (0..d).map(|i| h[i * d + best]).collect()
        };
        if v.iter().all(|z| z.norm_sqr() == 0.0) {
            v = vec![Complex64::ONE; d];
        }

        // Rayleigh-quotient power iteration on the Gram matrix; the quotient
        // is a lower bound for the top eigenvalue at every step.
        let mut w = vec![Complex64::ZERO; d];
        let mut rho = 0.0f64;
        for _ in 0..refine_iters {
            for (i, wi) in w.iter_mut().enumerate() {
                let mut acc = Complex64::ZERO;
                for j in 0..d {
                    acc += gram[i * d + j] * v[j];
                }
                *wi = acc;
            }
            let vv: f64 = v.iter().map(|z| z.norm_sqr()).sum();
            if vv == 0.0 {
                break;
            }
            let vw: f64 = v.iter().zip(&w).map(|(a, b)| (a.conj() * b).re).sum();
            let next = vw / vv;
            let wn: f64 = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if wn == 0.0 {
                rho = next.max(rho);
                break;
            }
            for (vi, wi) in v.iter_mut().zip(&w) {
                *vi = wi / wn;
            }
            if (next - rho).abs() <= 1e-15 * next.max(1.0) {
                rho = next.max(rho);
                break;
            }
            rho = next.max(rho);
        }
        rho = rho.max(0.0);

        // Upper bound: smallest tested mu with mu*I - G positive definite.
        let trace: f64 = (0..d).map(|i| gram[i * d + i].re).sum();
        let safety = 64.0 * f64::EPSILON * trace.max(1.0);
        let mut offset = (1e-14 * rho).max(f64::MIN_POSITIVE);
        let mut mu = rho + offset;
        while !cholesky_positive(d, &gram, mu, &mut tmp) {
            offset *= 2.0;
            mu = rho + offset;
            if mu >= trace {
                mu = trace + safety;
                break;
            }
        }
        mu += safety;

        (alpha * rho.sqrt(), alpha * mu.max(0.0).sqrt())
    }

    /// Inverse with residual control: the result `N` satisfies
    /// `||M N - I|| <= 1e-10 * d`, or an error is returned.
    pub fn invert(&self) -> Result<Self, MatrixError> {
        let d = self.dim;
        let mut n = self.gauss_jordan_inverse()?;

        // Newton refinement squares the inversion residual; two steps take a
        // Gauss-Jordan result well below the contract for moderately
        // conditioned inputs.
        let id = Self::identity(d);
        let mut residual = self.mul(&n).sub(&id).spectral_norm();
        for _ in 0..3 {
            if residual <= 1e-12 * d as f64 {
                break;
            }
            let two_i_minus_mn = id.scale(Complex64::new(2.0, 0.0)).sub(&self.mul(&n));
            let refined = n.mul(&two_i_minus_mn);
            let new_residual = self.mul(&refined).sub(&id).spectral_norm();
            if new_residual >= residual {
                break;
            }
            n = refined;
            residual = new_residual;
        }

        let cond = self.spectral_norm() * n.spectral_norm();
        if cond > 1e12 {
            return Err(MatrixError::IllConditioned { cond });
        }
        if residual > 1e-10 * d as f64 {
            return Err(MatrixError::IllConditioned { cond });
        }
        Ok(n)
    }

    fn gauss_jordan_inverse(&self) -> Result<Self, MatrixError> {
        let d = self.dim;
        let mut a = self.entries.clone();
        let mut inv = Self::identity(d).entries;

        for col in 0..d {
            let mut pivot_row = col;
            let mut pivot_mag = a[col * d + col].norm();
            for row in col + 1..d {
                let mag = a[row * d + col].norm();
                if mag > pivot_mag {
                    pivot_mag = mag;
                    pivot_row = row;
                }
            }
            if pivot_mag == 0.0 {
                return Err(MatrixError::Singular);
            }
            if pivot_row != col {
                for j in 0..d {
                    a.swap(col * d + j, pivot_row * d + j);
                    inv.swap(col * d + j, pivot_row * d + j);
                }
            }
            let pivot = a[col * d + col];
            for j in 0..d {
                a[col * d + j] /= pivot;
                inv[col * d + j] /= pivot;
            }
            for row in 0..d {
                if row == col {
                    continue;
                }
                let factor = a[row * d + col];
                if factor == Complex64::ZERO {
                    continue;
                }
                for j in 0..d {
                    let t = a[col * d + j] * factor;
                    a[row * d + j] -= t;
                    let t = inv[col * d + j] * factor;
                    inv[row * d + j] -= t;
                }
            }
        }
        ComplexMatrix::new(d, inv)
    }
}

fn matmul_into(d: usize, a: &[Complex64], b: &[Complex64], out: &mut [Complex64]) {
    out.fill(Complex64::ZERO);
    for i in 0..d {
        for k in 0..d {
            let aik = a[i * d + k];
            if aik == Complex64::ZERO {
                continue;
            }
            for j in 0..d {
                out[i * d + j] += aik * b[k * d + j];
            }
        }
    }
}

/// Cholesky positivity test for `mu*I - g`, `g` Hermitian (flat row-major).
/// Success proves `lambda_max(g) <= mu` up to a few ulps. `scratch` holds
/// the factor and must have length `d * d`.
fn cholesky_positive(d: usize, g: &[Complex64], mu: f64, scratch: &mut [Complex64]) -> bool {
    let l = scratch;
    l.fill(Complex64::ZERO);
    for j in 0..d {
        let mut diag = mu - g[j * d + j].re;
        for k in 0..j {
            diag -= l[j * d + k].norm_sqr();
        }
        if diag <= 0.0 || !diag.is_finite() {
            return false;
        }
        let root = diag.sqrt();
        l[j * d + j] = Complex64::new(root, 0.0);
        for i in j + 1..d {
            let mut acc = -g[i * d + j];
            for k in 0..j {
                acc -= l[i * d + k] * l[j * d + k].conj();
            }
            l[i * d + j] = acc / root;
        }
    }
    true
}
