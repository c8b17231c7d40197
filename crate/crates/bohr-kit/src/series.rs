//! Truncated operator-valued power series and Schur-class generators.
//!
//! A series holds coefficients `A_0..A_M` (all `d x d`) plus a class tag.
//! The `ScalarHead` class asserts `A_0 = a0*I` with `a0 in [0,1)` and the
//! Schwarz-Pick coefficient bound `||A_n|| <= 1 - a0^2` for `n >= 1`; that
//! bound is what certifies geometric truncation tails, so it is validated at
//! construction rather than assumed.
//!
//! Three generators produce Schur-class test functions:
//! * `blaschke`: the extremal family `((b - z)/(1 - b z)) * I`,
//! * `colligation`: transfer functions `A + z B (I - z D)^{-1} C` of a
//!   contractive block matrix,
//! * `mobius_schur`: the operator Mobius transform pinning `f(0) = a0*I`
//!   onto an arbitrary Schur-class sample.

use std::sync::OnceLock;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matrix::{ComplexMatrix, MatrixError};

/// Slop allowed on the Schwarz-Pick coefficient bound, absorbing rounding in
/// the generators and in the norm computation.
pub const COEFF_BOUND_TOL: f64 = 1e-9;

/// Slop allowed on the contraction test for colligation blocks.
pub const CONTRACTION_TOL: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum SeriesError {
    #[error("a series needs at least one coefficient")]
    Empty,
    #[error("coefficient {index} has dimension {got}, expected {expected}")]
    MixedDims {
        index: usize,
        expected: usize,
        got: usize,
    },
    #[error("scalar head a0 = {0} outside [0, 1)")]
    HeadOutOfRange(f64),
    #[error("A_0 is not exactly a0 * I")]
    HeadMismatch,
    #[error("||A_{index}|| = {norm} violates the Schwarz-Pick bound {bound}")]
    CoefficientBound { index: usize, norm: f64, bound: f64 },
    #[error("parameter b = {0} outside [0, 1)")]
    ParamOutOfRange(f64),
    #[error("truncation order must be at least 1")]
    OrderTooSmall,
    #[error("evaluation point |z| = {0} is not inside the unit disk")]
    OutsideDisk(f64),
    #[error("radius r = {0} outside [0, 1)")]
    RadiusOutOfRange(f64),
    #[error("no certified tail bound for a general-class series")]
    TailUnavailable,
    #[error("colligation block is not a contraction: ||block|| = {0}")]
    NotAContraction(f64),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// Hypothesis class of a series.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum SeriesClass {
    /// `A_0 = a0 * I`, `a0 in [0,1)`, coefficients obeying the
    /// Schwarz-Pick bound. Geometric tail certificates are available.
    ScalarHead { a0: f64 },
    /// No structural assumption; the series is treated as an exact finite
    /// object (no tail certificate).
    General,
}

/// A truncated power series `sum_{n=0}^{M} A_n z^n`.
#[derive(Debug, Serialize, Deserialize)]
#[serde(try_from = "SeriesRepr", into = "SeriesRepr")]
pub struct OperatorSeries {
    dim: usize,
    coeffs: Vec<ComplexMatrix>,
    class: SeriesClass,
    #[serde(skip)]
    norms: OnceLock<Vec<f64>>,
}

impl Clone for OperatorSeries {
    fn clone(&self) -> Self {
        OperatorSeries {
            dim: self.dim,
            coeffs: self.coeffs.clone(),
            class: self.class,
            norms: self.norms.clone(),
        }
    }
}

/// JSON shape: `{"dim": d, "class": ..., "a0": x|null, "coeffs": [...]}`.
#[derive(Serialize, Deserialize)]
struct SeriesRepr {
    dim: usize,
    class: String,
    a0: Option<f64>,
    coeffs: Vec<ComplexMatrix>,
}

impl From<OperatorSeries> for SeriesRepr {
    fn from(s: OperatorSeries) -> Self {
        let (class, a0) = match s.class {
            SeriesClass::ScalarHead { a0 } => ("schur_scalar_head".to_string(), Some(a0)),
            SeriesClass::General => ("general".to_string(), None),
        };
        SeriesRepr {
            dim: s.dim,
            class,
            a0,
            coeffs: s.coeffs,
        }
    }
}

impl TryFrom<SeriesRepr> for OperatorSeries {
    type Error = SeriesError;

    fn try_from(repr: SeriesRepr) -> Result<Self, SeriesError> {
        let class = match repr.class.as_str() {
            "schur_scalar_head" => SeriesClass::ScalarHead {
                a0: repr.a0.unwrap_or(f64::NAN),
            },
            _ => SeriesClass::General,
        };
        OperatorSeries::new(repr.coeffs, class)
    }
}

impl OperatorSeries {
    /// Validates and wraps a coefficient list. For the `ScalarHead` class
    /// this checks `A_0 = a0*I` exactly and the coefficient bound
    /// `||A_n|| <= 1 - a0^2 + tol` for every `n >= 1`.
    pub fn new(coeffs: Vec<ComplexMatrix>, class: SeriesClass) -> Result<Self, SeriesError> {
        let first = coeffs.first().ok_or(SeriesError::Empty)?;
        let dim = first.dim();
        for (index, c) in coeffs.iter().enumerate() {
            if c.dim() != dim {
                return Err(SeriesError::MixedDims {
                    index,
                    expected: dim,
                    got: c.dim(),
                });
            }
        }

        let norms = OnceLock::new();
        if let SeriesClass::ScalarHead { a0 } = class {
            if !(0.0..1.0).contains(&a0) {
                return Err(SeriesError::HeadOutOfRange(a0));
            }
            let head = ComplexMatrix::scalar(dim, Complex64::new(a0, 0.0));
            if coeffs[0] != head {
                return Err(SeriesError::HeadMismatch);
            }
            let computed: Vec<f64> = coeffs.iter().map(ComplexMatrix::spectral_norm).collect();
            let bound = 1.0 - a0 * a0 + COEFF_BOUND_TOL;
            for (index, &norm) in computed.iter().enumerate().skip(1) {
                if norm > bound {
                    return Err(SeriesError::CoefficientBound { index, norm, bound });
                }
            }
            let _ = norms.set(computed);
        }

        Ok(OperatorSeries {
            dim,
            coeffs,
            class,
            norms,
        })
    }

    /// Wraps a coefficient list without validating class invariants.
    ///
    /// Only for diagnostics (e.g. feeding an engineered Schwarz-Pick
    /// violation to the checker); everything that certifies tails assumes
    /// a validated series.
    pub fn from_parts_unchecked(coeffs: Vec<ComplexMatrix>, class: SeriesClass) -> Self {
        let dim = coeffs.first().map_or(1, ComplexMatrix::dim);
        OperatorSeries {
            dim,
            coeffs,
            class,
            norms: OnceLock::new(),
        }
    }

    /// Wraps a coefficient list whose norms are already known exactly
    /// (used by slicing, where every coefficient is a known scalar multiple
    /// of an already-measured matrix).
    pub(crate) fn with_known_norms(
        coeffs: Vec<ComplexMatrix>,
        class: SeriesClass,
        norms: Vec<f64>,
    ) -> Self {
        let dim = coeffs[0].dim();
        debug_assert_eq!(norms.len(), coeffs.len());
        let cell = OnceLock::new();
        let _ = cell.set(norms);
        OperatorSeries {
            dim,
            coeffs,
            class,
            norms: cell,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn class(&self) -> SeriesClass {
        self.class
    }

    /// `a0` when the series has a scalar head.
    pub fn scalar_head(&self) -> Option<f64> {
        match self.class {
            SeriesClass::ScalarHead { a0 } => Some(a0),
            SeriesClass::General => None,
        }
    }

    /// Truncation order `M` (index of the last stored coefficient).
    pub fn truncation_order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[ComplexMatrix] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &ComplexMatrix {
        &self.coeffs[n]
    }

    /// Spectral norms `[||A_0||, ..., ||A_M||]`, computed once and cached.
    pub fn coeff_norms(&self) -> &[f64] {
        self.norms.get_or_init(|| {
            self.coeffs
                .iter()
                .map(ComplexMatrix::spectral_norm)
                .collect()
        })
    }

    /// The extremal family `Phi_b(z) = ((b - z)/(1 - b z)) * I`, truncated
    /// at `order`: `A_0 = b*I`, `A_n = -(1 - b^2) b^{n-1} * I`.
    pub fn blaschke(b: f64, dim: usize, order: usize) -> Result<Self, SeriesError> {
        if !(0.0..1.0).contains(&b) {
            return Err(SeriesError::ParamOutOfRange(b));
        }
        if order < 1 {
            return Err(SeriesError::OrderTooSmall);
        }
        let mut coeffs = Vec::with_capacity(order + 1);
        coeffs.push(ComplexMatrix::scalar(dim, Complex64::new(b, 0.0)));
        let mut factor = -(1.0 - b * b);
        for _ in 1..=order {
            coeffs.push(ComplexMatrix::scalar(dim, Complex64::new(factor, 0.0)));
            factor *= b;
        }
        Self::new(coeffs, SeriesClass::ScalarHead { a0: b })
    }

    /// Transfer function `f(z) = A + z B (I - z D)^{-1} C` of the block
    /// matrix `[[A, B], [C, D]]`, which must be a contraction. Coefficients:
    /// `A_0 = A`, `A_n = B D^{n-1} C`.
    pub fn colligation(
        a: &ComplexMatrix,
        b: &ComplexMatrix,
        c: &ComplexMatrix,
        d: &ComplexMatrix,
        order: usize,
    ) -> Result<Self, SeriesError> {
        if order < 1 {
            return Err(SeriesError::OrderTooSmall);
        }
        let block = ComplexMatrix::block2(a, b, c, d)?;
        let (_, norm_hi) = block.spectral_norm_bounds();
        if norm_hi > 1.0 + CONTRACTION_TOL {
            return Err(SeriesError::NotAContraction(norm_hi));
        }
        let mut coeffs = Vec::with_capacity(order + 1);
        coeffs.push(a.clone());
        let mut d_power = ComplexMatrix::identity(a.dim());
        for n in 1..=order {
            coeffs.push(b.mul(&d_power).mul(c));
            if n < order {
                d_power = d_power.mul(d);
            }
        }
        Self::new(coeffs, SeriesClass::General)
    }

    /// Operator Mobius transform
    /// `f(z) = (a0*I - z g(z)) (I - a0 z g(z))^{-1}`
    /// of a Schur-class `g`, expanded to `order`. The result has
    /// `f(0) = a0*I` and inherits the Schur class, so the scalar-head
    /// coefficient bound is enforced on the output (a violation means `g`
    /// was not Schur-class).
    ///
    /// The coefficient `A_n` depends only on `g_0..g_{n-1}`, so the output
    /// is exact through `n <= g.truncation_order() + 1`; past that, missing
    /// coefficients of `g` are treated as zero.
    pub fn mobius_schur(a0: f64, g: &OperatorSeries, order: usize) -> Result<Self, SeriesError> {
        if !(0.0..1.0).contains(&a0) {
            return Err(SeriesError::ParamOutOfRange(a0));
        }
        if order < 1 {
            return Err(SeriesError::OrderTooSmall);
        }
        let dim = g.dim();
        let id = ComplexMatrix::identity(dim);

        // With h(z) = a0 z g(z) the resolvent R = (I - h)^{-1} = sum C_n z^n
        // obeys C_0 = I, C_n = a0 * S_n, where S_n = sum_{k=1..n} T_k C_{n-k}
        // and T_k = g_{k-1}. Then A_n = a0 C_n - S_n = -(1 - a0^2) S_n.
        let t = |k: usize| -> &ComplexMatrix { g.coeff(k - 1) };
        let mut resolvent: Vec<ComplexMatrix> = vec![id.clone()];
        let mut coeffs = Vec::with_capacity(order + 1);
        coeffs.push(ComplexMatrix::scalar(dim, Complex64::new(a0, 0.0)));
        let head_factor = Complex64::new(-(1.0 - a0 * a0), 0.0);
        for n in 1..=order {
            let mut s = ComplexMatrix::zeros(dim);
            for k in 1..=n.min(g.truncation_order() + 1) {
                s = s.add(&t(k).mul(&resolvent[n - k]));
            }
            resolvent.push(s.scale(Complex64::new(a0, 0.0)));
            coeffs.push(s.scale(head_factor));
        }
        Self::new(coeffs, SeriesClass::ScalarHead { a0 })
    }

    /// Horner evaluation of the truncated series at `|z| < 1`.
    pub fn evaluate(&self, z: Complex64) -> Result<ComplexMatrix, SeriesError> {
        let r = z.norm();
        if r >= 1.0 {
            return Err(SeriesError::OutsideDisk(r));
        }
        let mut acc = self.coeffs.last().expect("nonempty").clone();
        for coeff in self.coeffs.iter().rev().skip(1) {
            acc = acc.scale(z).add(coeff);
        }
        Ok(acc)
    }

    /// Upper bound on the discarded tail `sum_{n > M} ||A_n|| r^n`:
    /// `(1 - a0^2) r^{M+1} / (1 - r)`. Only the scalar-head class carries
    /// the coefficient bound that makes this certificate valid.
    pub fn tail_majorant_bound(&self, r: f64) -> Result<f64, SeriesError> {
        if !(0.0..1.0).contains(&r) {
            return Err(SeriesError::RadiusOutOfRange(r));
        }
        match self.class {
            SeriesClass::ScalarHead { a0 } => {
                let m = self.truncation_order();
                Ok((1.0 - a0 * a0) * r.powi(m as i32 + 1) / (1.0 - r))
            }
            SeriesClass::General => Err(SeriesError::TailUnavailable),
        }
    }
}

/// Draws a matrix with iid complex Gaussian entries, rescaled so that its
/// spectral norm is certainly at most 1.
pub fn random_contraction<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexMatrix {
    let m = ComplexMatrix::from_fn(dim, |_, _| Complex64::new(gaussian(rng), gaussian(rng)))
        .expect("gaussian entries are finite");
    let (_, hi) = m.spectral_norm_bounds();
    if hi == 0.0 {
        return m;
    }
    m.scale(Complex64::new(1.0 / (hi * (1.0 + 1e-12)), 0.0))
}

/// Random Schur-class sample from a colligation with a random contractive
/// block; the head `A_0` is a general matrix.
pub fn random_schur_general<R: Rng + ?Sized>(
    dim: usize,
    order: usize,
    rng: &mut R,
) -> Result<OperatorSeries, SeriesError> {
    let block = random_contraction(2 * dim, rng);
    let sub = |ri: usize, ci: usize| {
        ComplexMatrix::from_fn(dim, |i, j| block.get(ri * dim + i, ci * dim + j)).expect("finite")
    };
    OperatorSeries::colligation(&sub(0, 0), &sub(0, 1), &sub(1, 0), &sub(1, 1), order)
}

/// Random Schur-class sample with scalar head exactly `a0*I`: the operator
/// Mobius transform of a random colligation sample. Independent of the plain
/// colligation route, which keeps generator bugs from biasing verification.
pub fn random_schur_head<R: Rng + ?Sized>(
    a0: f64,
    dim: usize,
    order: usize,
    rng: &mut R,
) -> Result<OperatorSeries, SeriesError> {
    let inner = random_schur_general(dim, order, rng)?;
    OperatorSeries::mobius_schur(a0, &inner, order)
}

/// Marsaglia polar method; deterministic for a fixed RNG stream.
fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    loop {
        let u: f64 = 2.0 * rng.random::<f64>() - 1.0;
        let v: f64 = 2.0 * rng.random::<f64>() - 1.0;
        let s = u * u + v * v;
        if s > 0.0 && s < 1.0 {
            return u * (-2.0 * s.ln() / s).sqrt();
        }
    }
}
