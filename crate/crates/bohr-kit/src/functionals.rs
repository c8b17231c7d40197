//! Bohr-Rogosinski functionals with certified enclosures.
//!
//! Every quantity is assembled from four primitives evaluated on a series
//! at radius `r`:
//!
//! * `circle_sup_norm`: `sup_{|z|=r} ||f(z)||`, certified by adaptive
//!   subdivision of the circle with second-order interval bounds;
//! * `majorant_sum`: `sum_{n>=N} ||A_n|| r^n` plus a geometric tail bound;
//! * `weighted_square_sum`: `sum_{n>=1} ||A_n||^2 r^{2n}` plus tail;
//! * `sr_over_pi`: `sum_{n>=1} n ||A_n||^2 r^{2n}` (the planar-area
//!   quantity) plus tail.
//!
//! All grid and truncation slacks are folded into one `Certified` interval,
//! so "<= 1" judgements are three-valued and never silently rounded.

use std::cell::OnceCell;
use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cert::Certified;
use crate::matrix::ComplexMatrix;
use crate::series::{OperatorSeries, SeriesClass, SeriesError, COEFF_BOUND_TOL};

#[derive(Debug, Error)]
pub enum FunctionalError {
    #[error("radius r = {0} outside [0, 1)")]
    RadiusOutOfRange(f64),
    #[error("{kind} requires a scalar-head series for its tail certificate")]
    NeedsScalarHead { kind: String },
    #[error("power j = {0} must be 1 or 2")]
    BadPower(u8),
    #[error("exponent p = {0} outside (0, 1]")]
    BadExponent(f64),
    #[error("lambda = {0} must be nonnegative and finite")]
    BadLambda(f64),
    #[error("Rogosinski cutoff N must be at least 1")]
    BadCutoff,
    #[error("no envelope bound for kind {0}")]
    NoEnvelope(String),
    #[error("head a = {0} outside [0, 1]")]
    HeadOutOfRange(f64),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// Polynomial `G(t) = c_1 t + c_2 t^2 + ... + c_l t^l` with nonnegative
/// coefficients (no constant term).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct GPoly {
    coeffs: Vec<f64>,
}

#[derive(Debug, Error)]
#[error("G-polynomial coefficients must be nonnegative, finite, and nonempty")]
pub struct GPolyError;

impl GPoly {
    pub fn new(coeffs: Vec<f64>) -> Result<Self, GPolyError> {
        if coeffs.is_empty() || coeffs.iter().any(|c| !c.is_finite() || *c < 0.0) {
            return Err(GPolyError);
        }
        Ok(GPoly { coeffs })
    }

    /// Coefficients `c_1..c_l`.
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    /// `G(t)` for `t >= 0`; nonnegative coefficients make the polynomial
    /// nondecreasing on `[0, inf)`.
    pub fn eval(&self, t: f64) -> f64 {
        debug_assert!(t >= 0.0);
        let mut acc = 0.0;
        for &c in self.coeffs.iter().rev() {
            acc = (acc + c) * t;
        }
        acc
    }

    pub fn eval_certified(&self, t: Certified) -> Certified {
        let t = t.clamp_nonneg();
        Certified::interval(self.eval(t.lo()), self.eval(t.hi()))
    }
}

impl TryFrom<Vec<f64>> for GPoly {
    type Error = GPolyError;
    fn try_from(v: Vec<f64>) -> Result<Self, GPolyError> {
        GPoly::new(v)
    }
}

impl From<GPoly> for Vec<f64> {
    fn from(g: GPoly) -> Vec<f64> {
        g.coeffs
    }
}

/// Admissibility conditions the sharp-radius statements impose on `G`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AdmissibilityVariant {
    /// `sum c_m 2^{1-4m} <= (13 - 5 sqrt5)/4`, the condition attached to
    /// the radius `sqrt5 - 2`.
    Sqrt5Minus2,
    /// `sum 8 (2m-1) c_m (3/8)^{2m} <= 1`, the condition attached to the
    /// radius `1/3`.
    OneThird,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct Admissibility {
    pub admissible: bool,
    pub lhs: f64,
    pub bound: f64,
    /// `bound - lhs`; nonnegative iff admissible.
    pub margin: f64,
}

/// Checks a `G`-polynomial against one of the admissibility conditions.
pub fn gpoly_admissible(g: &GPoly, variant: AdmissibilityVariant) -> Admissibility {
    let (lhs, bound) = match variant {
        AdmissibilityVariant::Sqrt5Minus2 => {
            let lhs: f64 = g
                .coeffs()
                .iter()
                .enumerate()
                .map(|(i, &c)| {
                    let m = (i + 1) as i32;
                    c * 2f64.powi(1 - 4 * m)
                })
                .sum();
            (lhs, crate::consts::g_admissibility_bound())
        }
        AdmissibilityVariant::OneThird => {
            let lhs: f64 = g
                .coeffs()
                .iter()
                .enumerate()
                .map(|(i, &c)| {
                    let m = (i + 1) as i32;
                    8.0 * (2.0 * m as f64 - 1.0) * c * (3.0f64 / 8.0).powi(2 * m)
                })
                .sum();
            (lhs, 1.0)
        }
    };
    let margin = bound - lhs;
    Admissibility {
        admissible: margin >= 0.0,
        lhs,
        bound,
        margin,
    }
}

/// Every Bohr-type quantity the toolkit evaluates. Names describe the head
/// term; the classical short labels are noted alongside.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum FunctionalKind {
    /// Plain majorant sum `sum_{n>=0} ||A_n|| r^n`.
    Bohr,
    /// `||f(z)||^j + sum_{n>=N} ||A_n|| r^n`  (T^N_j).
    Rogosinski { cutoff: usize, power: u8 },
    /// `||f(z)||^j + sum_{n>=1} ||A_n|| r^n + W * sum ||A_n||^2 r^{2n}`  (M_j).
    ValueRefined { power: u8 },
    /// `sum_{n>=0} ||A_n|| r^n + W * squares + (sum_{n>=1} ||A_n|| r^n)^j`  (C_j).
    ///
    /// The `||f(z) - A_0||^j` remainder is replaced by its coefficient
    /// majorant, the same step the proofs take.
    RemainderRefined { power: u8 },
    /// `||A_0||^p + sum_{n>=1} ||A_n|| r^n + W * squares`  (B_p).
    HeadPower { p: f64 },
    /// `||f(z)|| + sum_{n>=1} ||A_n|| r^n + G(S_r/pi)`  (D_G).
    AreaValue { g: GPoly },
    /// `||A_0|| + sum_{n>=1} ||A_n|| r^n + G(S_r/pi)`  (E_G).
    AreaHead { g: GPoly },
    /// `||A_0||^j + sum_{n>=1} ||A_n|| r^n + W * squares + lambda * S_r/pi`  (N^j).
    HeadAreaRefined { power: u8, lambda: f64 },
}

impl FunctionalKind {
    pub fn validate(&self) -> Result<(), FunctionalError> {
        match self {
            FunctionalKind::Bohr => Ok(()),
            FunctionalKind::Rogosinski { cutoff, power } => {
                if *cutoff < 1 {
                    return Err(FunctionalError::BadCutoff);
                }
                check_power(*power)
            }
            FunctionalKind::ValueRefined { power } | FunctionalKind::RemainderRefined { power } => {
                check_power(*power)
            }
            FunctionalKind::HeadPower { p } => {
                if !(p.is_finite() && *p > 0.0 && *p <= 1.0) {
                    return Err(FunctionalError::BadExponent(*p));
                }
                Ok(())
            }
            FunctionalKind::AreaValue { .. } | FunctionalKind::AreaHead { .. } => Ok(()),
            FunctionalKind::HeadAreaRefined { power, lambda } => {
                if !(lambda.is_finite() && *lambda >= 0.0) {
                    return Err(FunctionalError::BadLambda(*lambda));
                }
                check_power(*power)
            }
        }
    }

    /// True when evaluating the kind needs the circle supremum of `||f||`.
    pub fn uses_circle_sup(&self) -> bool {
        matches!(
            self,
            FunctionalKind::Rogosinski { .. }
                | FunctionalKind::ValueRefined { .. }
                | FunctionalKind::AreaValue { .. }
        )
    }

    /// True when the kind's tail certificates require a scalar head.
    pub fn needs_scalar_head(&self) -> bool {
        matches!(
            self,
            FunctionalKind::HeadPower { .. } | FunctionalKind::HeadAreaRefined { .. }
        )
    }
}

fn check_power(j: u8) -> Result<(), FunctionalError> {
    if j == 1 || j == 2 {
        Ok(())
    } else {
        Err(FunctionalError::BadPower(j))
    }
}

impl std::fmt::Display for FunctionalKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FunctionalKind::Bohr => write!(f, "bohr"),
            FunctionalKind::Rogosinski { cutoff, power } => write!(f, "t{cutoff}j{power}"),
            FunctionalKind::ValueRefined { power } => write!(f, "m{power}"),
            FunctionalKind::RemainderRefined { power } => write!(f, "c{power}"),
            FunctionalKind::HeadPower { p } => write!(f, "bp({p})"),
            FunctionalKind::AreaValue { g } => write!(f, "d{:?}", g.coeffs()),
            FunctionalKind::AreaHead { g } => write!(f, "e{:?}", g.coeffs()),
            FunctionalKind::HeadAreaRefined { power, lambda } => write!(f, "n{power}({lambda})"),
        }
    }
}

fn require_radius(r: f64) -> Result<(), FunctionalError> {
    if (0.0..1.0).contains(&r) {
        Ok(())
    } else {
        Err(FunctionalError::RadiusOutOfRange(r))
    }
}

/// `sum_{n=from}^{M} ||A_n|| r^n`, with the geometric tail of the
/// Schwarz-Pick bound as upper slack when the class certifies one.
pub fn majorant_sum(s: &OperatorSeries, r: f64, from: usize) -> Result<Certified, FunctionalError> {
    require_radius(r)?;
    let norms = s.coeff_norms();
    let mut sum = 0.0;
    let mut rn = r.powi(from as i32);
    for &norm in norms.iter().skip(from) {
        sum += norm * rn;
        rn *= r;
    }
    let tail = match s.class() {
        SeriesClass::ScalarHead { a0 } => {
            let start = from.max(s.truncation_order() + 1) as i32;
            (1.0 - a0 * a0 + COEFF_BOUND_TOL) * r.powi(start) / (1.0 - r)
        }
        SeriesClass::General => 0.0,
    };
    Ok(Certified::with_upper_slack(sum, tail))
}

/// `sum_{n=1}^{M} ||A_n||^2 r^{2n}` plus tail.
pub fn weighted_square_sum(s: &OperatorSeries, r: f64) -> Result<Certified, FunctionalError> {
    require_radius(r)?;
    let x = r * r;
    let norms = s.coeff_norms();
    let mut sum = 0.0;
    let mut xn = x;
    for &norm in norms.iter().skip(1) {
        sum += norm * norm * xn;
        xn *= x;
    }
    let tail = match s.class() {
        SeriesClass::ScalarHead { a0 } => {
            let b2 = (1.0 - a0 * a0 + COEFF_BOUND_TOL).powi(2);
            b2 * x.powi(s.truncation_order() as i32 + 1) / (1.0 - x)
        }
        SeriesClass::General => 0.0,
    };
    Ok(Certified::with_upper_slack(sum, tail))
}

/// `S_r/pi = sum_{n=1}^{M} n ||A_n||^2 r^{2n}` plus tail.
pub fn sr_over_pi(s: &OperatorSeries, r: f64) -> Result<Certified, FunctionalError> {
    require_radius(r)?;
    let x = r * r;
    let norms = s.coeff_norms();
    let mut sum = 0.0;
    let mut xn = x;
    for (n, &norm) in norms.iter().enumerate().skip(1) {
        sum += n as f64 * norm * norm * xn;
        xn *= x;
    }
    let tail = match s.class() {
        SeriesClass::ScalarHead { a0 } => {
            let b2 = (1.0 - a0 * a0 + COEFF_BOUND_TOL).powi(2);
            let k = s.truncation_order() as f64 + 1.0;
            // sum_{n>M} n x^n = x^{M+1} (K - (K-1) x) / (1-x)^2, K = M+1.
            b2 * x.powf(k) * (k - (k - 1.0) * x) / ((1.0 - x) * (1.0 - x))
        }
        SeriesClass::General => 0.0,
    };
    Ok(Certified::with_upper_slack(sum, tail))
}

/// Tuning for the certified circle supremum.
#[derive(Clone, Copy, Debug)]
pub struct SupOptions {
    /// Requested certificate width (grid part of the slack).
    pub target: f64,
    /// Evaluation budget; on exhaustion the achieved width is reported.
    pub max_evals: usize,
}

impl Default for SupOptions {
    fn default() -> Self {
        SupOptions {
            target: 1e-8,
            max_evals: 30_000,
        }
    }
}

/// `sup_{|z|=r} ||f(z)||` with a certified enclosure.
///
/// The circle is covered by arcs carrying the rigorous bound
/// `||f|| <= max(||F +- hw*F_theta||) + hw^2/2 * sum n^2 ||A_n|| r^n`
/// (the affine part is convex in the angle, so its max sits at an arc
/// endpoint). Arcs are split best-first until the certified gap falls below
/// `target`. Truncation tails widen the enclosure on both sides for
/// scalar-head series.
pub fn circle_sup_norm(s: &OperatorSeries, r: f64) -> Result<Certified, FunctionalError> {
    circle_sup_norm_with(s, r, SupOptions::default())
}

pub fn circle_sup_norm_with(
    s: &OperatorSeries,
    r: f64,
    opts: SupOptions,
) -> Result<Certified, FunctionalError> {
    require_radius(r)?;
    let tail = match s.class() {
        SeriesClass::ScalarHead { .. } => s.tail_majorant_bound(r).expect("radius checked"),
        SeriesClass::General => 0.0,
    };
    if r == 0.0 {
        let (lo, hi) = s.coeff(0).spectral_norm_bounds();
        return Ok(Certified::interval(lo, hi));
    }

    let norms = s.coeff_norms();
    // Prescale: B_n = A_n r^n, so that f(r e^{i theta}) = sum B_n u^n with
    // u on the unit circle. Trailing terms below 1e-17 are dropped and
    // their exact contribution folded into the certificate.
    let mut scaled_norms: Vec<f64> = Vec::with_capacity(norms.len());
    let mut rn = 1.0;
    for &n in norms {
        scaled_norms.push(n * rn);
        rn *= r;
    }
    let mut keep = scaled_norms.len();
    let mut trimmed = 0.0;
    while keep > 1 && trimmed + scaled_norms[keep - 1] < 1e-16 {
        trimmed += scaled_norms[keep - 1];
        keep -= 1;
    }
    let coeffs: Vec<ComplexMatrix> = {
        let mut rn = 1.0;
        s.coeffs()
            .iter()
            .take(keep)
            .map(|c| {
                let m = c.scale(Complex64::new(rn, 0.0));
                rn *= r;
                m
            })
            .collect()
    };
    let curvature: f64 = scaled_norms
        .iter()
        .enumerate()
        .map(|(n, &x)| (n * n) as f64 * x)
        .sum::<f64>()
        * (1.0 + 1e-12);

    let (value, gap) = branch_and_bound(&coeffs, curvature, trimmed, opts);
    Ok(Certified::interval(
        (value - tail).max(0.0),
        value + gap + tail,
    ))
}

struct Arc {
    ub: f64,
    center: f64,
    halfwidth: f64,
    tight: bool,
}

impl PartialEq for Arc {
    fn eq(&self, other: &Self) -> bool {
        self.ub == other.ub
    }
}
impl Eq for Arc {}
impl PartialOrd for Arc {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Arc {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ub.total_cmp(&other.ub)
    }
}

/// Flattened series data plus scratch buffers for the subdivision loop.
struct SupSolver<'a> {
    dim: usize,
    coeffs: &'a [ComplexMatrix],
    curvature: f64,
    trimmed: f64,
    p: Vec<Complex64>,
    dp: Vec<Complex64>,
    end: Vec<Complex64>,
}

impl<'a> SupSolver<'a> {
    fn new(coeffs: &'a [ComplexMatrix], curvature: f64, trimmed: f64) -> Self {
        let dim = coeffs[0].dim();
        SupSolver {
            dim,
            coeffs,
            curvature,
            trimmed,
            p: vec![Complex64::ZERO; dim * dim],
            dp: vec![Complex64::ZERO; dim * dim],
            end: vec![Complex64::ZERO; dim * dim],
        }
    }

    /// In-place dual Horner at `u = e^{i theta}`: leaves `F(u)` in `p` and
    /// the angular derivative `i u F'(u)` in `dp`.
    fn horner(&mut self, theta: f64) {
        let u = Complex64::new(theta.cos(), theta.sin());
        self.p
            .copy_from_slice(self.coeffs.last().expect("nonempty").entries());
        self.dp.fill(Complex64::ZERO);
        for c in self.coeffs.iter().rev().skip(1) {
            let ce = c.entries();
            for (idx, &cv) in ce.iter().enumerate() {
                self.dp[idx] = self.dp[idx] * u + self.p[idx];
                self.p[idx] = self.p[idx] * u + cv;
            }
        }
        let iu = Complex64::new(0.0, 1.0) * u;
        for z in self.dp.iter_mut() {
            *z *= iu;
        }
    }

    /// Lower bound `||F(u)||` at the arc center.
    fn center_lower(&mut self, theta: f64, tight: bool) -> f64 {
        self.horner(theta);
        let f = ComplexMatrix::new(self.dim, self.p.clone()).expect("finite");
        if tight {
            f.spectral_norm_bounds().0
        } else {
            f.spectral_norm_bounds_quick().0
        }
    }

    /// Upper bound for `||f||` over `center +- halfwidth`: the affine part
    /// `F + phi * F_theta` is convex in `phi`, so its max over the arc sits
    /// at an endpoint; the curvature term covers the Taylor remainder.
    /// Assumes `horner(center)` has just run.
    fn arc_upper(&mut self, halfwidth: f64, tight: bool) -> f64 {
        let mut worst = 0.0f64;
        for sign in [-1.0, 1.0] {
            let step = sign * halfwidth;
            for (idx, e) in self.end.iter_mut().enumerate() {
                *e = self.p[idx] + self.dp[idx] * step;
            }
            let m = ComplexMatrix::new(self.dim, self.end.clone()).expect("finite");
            let hi = if tight {
                m.spectral_norm_bounds().1
            } else {
                m.spectral_norm_bounds_quick().1
            };
            worst = worst.max(hi);
        }
        worst + 0.5 * halfwidth * halfwidth * self.curvature + self.trimmed
    }
}

fn branch_and_bound(
    coeffs: &[ComplexMatrix],
    curvature: f64,
    trimmed: f64,
    opts: SupOptions,
) -> (f64, f64) {
    const INIT_ARCS: usize = 32;
    let mut solver = SupSolver::new(coeffs, curvature, trimmed);

    let mut best_lo = 0.0f64;
    let mut heap: BinaryHeap<Arc> = BinaryHeap::new();
    let mut stuck_ub = 0.0f64;
    let mut evals = 0usize;

    let hw0 = std::f64::consts::PI / INIT_ARCS as f64;
    for k in 0..INIT_ARCS {
        let center = (2 * k + 1) as f64 * hw0;
        best_lo = best_lo.max(solver.center_lower(center, false));
        let ub = solver.arc_upper(hw0, false);
        evals += 1;
        heap.push(Arc {
            ub,
            center,
            halfwidth: hw0,
            tight: false,
        });
    }

    while let Some(arc) = heap.pop() {
        let gap = arc.ub.max(stuck_ub) - best_lo;
        if gap <= opts.target || evals >= opts.max_evals {
            heap.push(arc);
            break;
        }
        if stuck_ub >= arc.ub {
            // The blocking arc is un-splittable; nothing more to gain.
            heap.push(arc);
            break;
        }
        if !arc.tight {
            // Re-certify the leader with full-quality norm bounds before
            // spending splits on it.
            best_lo = best_lo.max(solver.center_lower(arc.center, true));
            let ub = solver.arc_upper(arc.halfwidth, true);
            evals += 1;
            heap.push(Arc {
                ub,
                tight: true,
                ..arc
            });
            continue;
        }
        if arc.halfwidth < 1e-12 {
            stuck_ub = stuck_ub.max(arc.ub);
            continue;
        }
        let hw = 0.5 * arc.halfwidth;
        for sign in [-1.0, 1.0] {
            let center = arc.center + sign * hw;
            best_lo = best_lo.max(solver.center_lower(center, false));
            let ub = solver.arc_upper(hw, false);
            evals += 1;
            heap.push(Arc {
                ub,
                center,
                halfwidth: hw,
                tight: false,
            });
        }
    }

    let global_ub = heap
        .peek()
        .map_or(best_lo, |a| a.ub)
        .max(stuck_ub)
        .max(best_lo);
    (best_lo, global_ub - best_lo)
}

/// Evaluation context caching the expensive primitives for one `(series, r)`
/// pair, so sweeps over many kinds share the circle supremum.
pub struct FunctionalContext<'a> {
    series: &'a OperatorSeries,
    r: f64,
    sup_opts: SupOptions,
    sup: OnceCell<Certified>,
}

impl<'a> FunctionalContext<'a> {
    pub fn new(series: &'a OperatorSeries, r: f64) -> Result<Self, FunctionalError> {
        Self::with_options(series, r, SupOptions::default())
    }

    pub fn with_options(
        series: &'a OperatorSeries,
        r: f64,
        sup_opts: SupOptions,
    ) -> Result<Self, FunctionalError> {
        require_radius(r)?;
        Ok(FunctionalContext {
            series,
            r,
            sup_opts,
            sup: OnceCell::new(),
        })
    }

    pub fn radius(&self) -> f64 {
        self.r
    }

    /// Certified `sup_{|z|=r} ||f(z)||`, computed once.
    pub fn sup_norm(&self) -> Certified {
        *self.sup.get_or_init(|| {
            circle_sup_norm_with(self.series, self.r, self.sup_opts).expect("radius validated")
        })
    }

    fn head(&self) -> Certified {
        match self.series.class() {
            SeriesClass::ScalarHead { a0 } => Certified::exact(a0),
            SeriesClass::General => {
                let (lo, hi) = self.series.coeff(0).spectral_norm_bounds();
                Certified::interval(lo, hi)
            }
        }
    }

    /// Weight `1/(1 + ||A_0||) + r/(1 - r)`.
    fn weight(&self) -> Certified {
        let head = self.head();
        let shift = self.r / (1.0 - self.r);
        Certified::interval(1.0 / (1.0 + head.hi()), 1.0 / (1.0 + head.lo())).add_exact(shift)
    }

    fn weighted_squares(&self) -> Result<Certified, FunctionalError> {
        let sq = weighted_square_sum(self.series, self.r)?;
        let w = self.weight();
        Ok(Certified::interval(w.lo() * sq.lo(), w.hi() * sq.hi()))
    }

    /// Evaluates one functional kind, all slacks folded in.
    pub fn value(&self, kind: &FunctionalKind) -> Result<Certified, FunctionalError> {
        kind.validate()?;
        if kind.needs_scalar_head() && self.series.scalar_head().is_none() {
            return Err(FunctionalError::NeedsScalarHead {
                kind: kind.to_string(),
            });
        }
        let r = self.r;
        let s = self.series;
        Ok(match kind {
            FunctionalKind::Bohr => majorant_sum(s, r, 0)?,
            FunctionalKind::Rogosinski { cutoff, power } => {
                self.sup_norm().powi_nonneg(*power) + majorant_sum(s, r, *cutoff)?
            }
            FunctionalKind::ValueRefined { power } => {
                self.sup_norm().powi_nonneg(*power)
                    + majorant_sum(s, r, 1)?
                    + self.weighted_squares()?
            }
            FunctionalKind::RemainderRefined { power } => {
                let remainder = majorant_sum(s, r, 1)?;
                majorant_sum(s, r, 0)? + self.weighted_squares()? + remainder.powi_nonneg(*power)
            }
            FunctionalKind::HeadPower { p } => {
                self.head().powf_nonneg(*p) + majorant_sum(s, r, 1)? + self.weighted_squares()?
            }
            FunctionalKind::AreaValue { g } => {
                self.sup_norm() + majorant_sum(s, r, 1)? + g.eval_certified(sr_over_pi(s, r)?)
            }
            FunctionalKind::AreaHead { g } => {
                self.head() + majorant_sum(s, r, 1)? + g.eval_certified(sr_over_pi(s, r)?)
            }
            FunctionalKind::HeadAreaRefined { power, lambda } => {
                self.head().powi_nonneg(*power)
                    + majorant_sum(s, r, 1)?
                    + self.weighted_squares()?
                    + sr_over_pi(s, r)?.scale(*lambda)
            }
        })
    }
}

/// One-shot evaluation; prefer [`FunctionalContext`] for sweeps.
pub fn functional_value(
    kind: &FunctionalKind,
    s: &OperatorSeries,
    r: f64,
) -> Result<Certified, FunctionalError> {
    FunctionalContext::new(s, r)?.value(kind)
}

/// Worst-case upper bound for a functional over all Schur-class series with
/// `||A_0|| = a`, assembled from the Schwarz-Pick coefficient bound, the
/// growth bound `||f(z)|| <= (a + r)/(1 + a r)`, and the geometric sums they
/// imply. These are the closed forms the proofs maximize.
pub fn envelope_bound(kind: &FunctionalKind, a: f64, r: f64) -> Result<f64, FunctionalError> {
    kind.validate()?;
    require_radius(r)?;
    if !(0.0..=1.0).contains(&a) {
        return Err(FunctionalError::HeadOutOfRange(a));
    }
    let one_minus_a2 = 1.0 - a * a;
    let growth = (a + r) / (1.0 + a * r);
    let majorant = one_minus_a2 * r / (1.0 - r);
    let weight = 1.0 / (1.0 + a) + r / (1.0 - r);
    let squares = one_minus_a2 * one_minus_a2 * r * r / (1.0 - r * r);
    // Loose area bound (all r): sum n r^{2n} = r^2/(1-r^2)^2.
    let area_loose = (one_minus_a2 * r / (1.0 - r * r)).powi(2);
    // Subordination area bound (valid for r <= 1/sqrt2).
    let area_sharp = (one_minus_a2 * r / (1.0 - a * a * r * r)).powi(2);

    Ok(match kind {
        FunctionalKind::ValueRefined { power } => {
            growth.powi(*power as i32) + majorant + weight * squares
        }
        FunctionalKind::RemainderRefined { power } => {
            a + majorant + weight * squares + majorant.powi(*power as i32)
        }
        FunctionalKind::HeadPower { p } => a.powf(*p) + majorant + weight * squares,
        FunctionalKind::AreaValue { g } => growth + majorant + g.eval(area_loose),
        FunctionalKind::HeadAreaRefined { power, lambda } => {
            a.powi(*power as i32) + majorant + weight * squares + lambda * area_sharp
        }
        other => return Err(FunctionalError::NoEnvelope(other.to_string())),
    })
}

/// Outcome of the coefficient-bound check `||A_n|| <= 1 - a0^2`.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct SchwarzPickReport {
    pub ok: bool,
    /// Index of the largest violation when not ok, else the index of the
    /// tightest coefficient.
    pub worst_index: usize,
    /// `||A_n|| - (1 - a0^2)` at that index (positive = violation).
    pub worst_excess: f64,
}

/// Checks the Schwarz-Pick coefficient bound on a scalar-head series.
pub fn schwarz_pick_check(s: &OperatorSeries) -> Result<SchwarzPickReport, FunctionalError> {
    let a0 = s
        .scalar_head()
        .ok_or_else(|| FunctionalError::NeedsScalarHead {
            kind: "schwarz_pick_check".to_string(),
        })?;
    let bound = 1.0 - a0 * a0;
    let mut worst_index = 1;
    let mut worst_excess = f64::NEG_INFINITY;
    for (n, &norm) in s.coeff_norms().iter().enumerate().skip(1) {
        let excess = norm - bound;
        if excess > worst_excess {
            worst_excess = excess;
            worst_index = n;
        }
    }
    if worst_excess == f64::NEG_INFINITY {
        // Order-zero series: nothing to check.
        return Ok(SchwarzPickReport {
            ok: true,
            worst_index: 0,
            worst_excess: -bound,
        });
    }
    Ok(SchwarzPickReport {
        ok: worst_excess <= COEFF_BOUND_TOL,
        worst_index,
        worst_excess,
    })
}
