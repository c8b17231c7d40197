//! Radius-defining equations, closed-form radii, and threshold constants.
//!
//! Every polynomial root is found by bracketed bisection after a sign-change
//! scan over (0, 1); the scan makes "the unique positive root" a checked
//! statement instead of an assumption, and the residual at the returned
//! root is reported alongside it.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::consts;

#[derive(Debug, Error)]
pub enum RadiusError {
    #[error("parameter out of range: {0}")]
    BadParam(String),
    #[error("no sign change in (0, 1) for {spec}")]
    NoRoot { spec: String },
    #[error("multiple sign changes in (0, 1) for {spec}: brackets {brackets:?}")]
    Ambiguous {
        spec: String,
        brackets: Vec<(f64, f64)>,
    },
    #[error("solved root violates the stated bounds: {0}")]
    BoundsViolated(String),
}

/// Radius-defining equations and closed forms.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "spec", rename_all = "snake_case")]
pub enum RadiusSpec {
    /// `2 (1 + r) r^N - (1 - r)^2 = 0` (value-headed Rogosinski radius R_N).
    RogosinskiValue { n: u32 },
    /// `(1 + r) r^N - (1 - r)^2 = 0` (square-headed radius R'_N).
    RogosinskiSquare { n: u32 },
    /// `2 (1 + r) r^N - p (1 - r)^2 = 0` (power-headed radius R_{N,p}).
    RogosinskiPower { n: u32, p: f64 },
    /// Closed form `r_0 = 2 / (3 + a0 + sqrt5 (1 + a0))`.
    ScalarRefined { a0: f64 },
    /// Unique root in (0, 1/2] of
    /// `(1 - a0^3) r^3 - (1 + 2 a0) r^2 - 2 r + 1 = 0`.
    ScalarRefinedCubic { a0: f64 },
    /// A fixed constant (residual 0 by definition).
    Const { value: f64 },
    /// Smallest root in (0,1) of the head-threshold polynomial for the
    /// area-refined functional with head power 1 or 2.
    ThresholdHeadArea { power: u8 },
    /// Closed form `1 / (3 - a0)`, the homothety factor for the
    /// square-headed area-refined verification.
    HeadAreaDomain { a0: f64 },
}

impl RadiusSpec {
    /// Table tag used in CSV output.
    pub fn tag(&self) -> &'static str {
        match self {
            RadiusSpec::RogosinskiValue { .. } => "RN",
            RadiusSpec::RogosinskiSquare { .. } => "RNprime",
            RadiusSpec::RogosinskiPower { .. } => "RNp",
            RadiusSpec::ScalarRefined { .. } => "ScalarRefined1",
            RadiusSpec::ScalarRefinedCubic { .. } => "ScalarRefinedCubic",
            RadiusSpec::Const { .. } => "Const",
            RadiusSpec::ThresholdHeadArea { power } => {
                if *power == 1 {
                    "ThresholdN1"
                } else {
                    "ThresholdN2"
                }
            }
            RadiusSpec::HeadAreaDomain { .. } => "RadiusOfNkind",
        }
    }

    /// Human-readable parameter list for the table's second column.
    pub fn params(&self) -> String {
        match self {
            RadiusSpec::RogosinskiValue { n } | RadiusSpec::RogosinskiSquare { n } => n.to_string(),
            RadiusSpec::RogosinskiPower { n, p } => format!("{n};{p}"),
            RadiusSpec::ScalarRefined { a0 }
            | RadiusSpec::ScalarRefinedCubic { a0 }
            | RadiusSpec::HeadAreaDomain { a0 } => format!("{a0}"),
            RadiusSpec::Const { value } => format!("{value}"),
            RadiusSpec::ThresholdHeadArea { .. } => String::new(),
        }
    }

    fn validate(&self) -> Result<(), RadiusError> {
        let bad = |msg: String| Err(RadiusError::BadParam(msg));
        match self {
            RadiusSpec::RogosinskiValue { n } | RadiusSpec::RogosinskiSquare { n } => {
                if *n < 1 {
                    return bad(format!("N = {n} must be >= 1"));
                }
            }
            RadiusSpec::RogosinskiPower { n, p } => {
                if *n < 1 {
                    return bad(format!("N = {n} must be >= 1"));
                }
                if !(p.is_finite() && *p > 0.0 && *p <= 1.0) {
                    return bad(format!("p = {p} outside (0, 1]"));
                }
            }
            RadiusSpec::ScalarRefined { a0 } => {
                if !(0.0..=1.0).contains(a0) {
                    return bad(format!("a0 = {a0} outside [0, 1]"));
                }
            }
            RadiusSpec::ScalarRefinedCubic { a0 } | RadiusSpec::HeadAreaDomain { a0 } => {
                if !(0.0..1.0).contains(a0) {
                    return bad(format!("a0 = {a0} outside [0, 1)"));
                }
            }
            RadiusSpec::Const { value } => {
                if !(value.is_finite() && *value > 0.0 && *value < 1.0) {
                    return bad(format!("const value {value} outside (0, 1)"));
                }
            }
            RadiusSpec::ThresholdHeadArea { power } => {
                if *power != 1 && *power != 2 {
                    return bad(format!("head power {power} must be 1 or 2"));
                }
            }
        }
        Ok(())
    }
}

/// A solved radius with the residual of its defining equation.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct RadiusSolution {
    pub value: f64,
    pub residual: f64,
}

/// Solves a radius spec: closed forms directly, polynomial specs by
/// scan-verified bisection to interval width `1e-13`.
pub fn solve_radius(spec: &RadiusSpec) -> Result<RadiusSolution, RadiusError> {
    spec.validate()?;
    match spec {
        RadiusSpec::RogosinskiValue { n } => {
            let n = *n as i32;
            bisect_unique(spec.tag(), move |r| {
                2.0 * (1.0 + r) * r.powi(n) - (1.0 - r).powi(2)
            })
        }
        RadiusSpec::RogosinskiSquare { n } => {
            let n = *n as i32;
            bisect_unique(spec.tag(), move |r| {
                (1.0 + r) * r.powi(n) - (1.0 - r).powi(2)
            })
        }
        RadiusSpec::RogosinskiPower { n, p } => {
            let (n, p) = (*n as i32, *p);
            bisect_unique(spec.tag(), move |r| {
                2.0 * (1.0 + r) * r.powi(n) - p * (1.0 - r).powi(2)
            })
        }
        RadiusSpec::ScalarRefined { a0 } => {
            let value = scalar_refined_radius(*a0);
            // r0 solves (2 - (3 + a0) r)^2 = 5 (1 + a0)^2 r^2.
            let lhs = (2.0 - (3.0 + a0) * value).powi(2);
            let rhs = 5.0 * (1.0 + a0) * (1.0 + a0) * value * value;
            Ok(RadiusSolution {
                value,
                residual: (lhs - rhs).abs(),
            })
        }
        RadiusSpec::ScalarRefinedCubic { a0 } => cubic_radius(*a0),
        RadiusSpec::Const { value } => Ok(RadiusSolution {
            value: *value,
            residual: 0.0,
        }),
        RadiusSpec::ThresholdHeadArea { power } => threshold_a(*power),
        RadiusSpec::HeadAreaDomain { a0 } => {
            let value = 1.0 / (3.0 - a0);
            Ok(RadiusSolution {
                value,
                residual: ((3.0 - a0) * value - 1.0).abs(),
            })
        }
    }
}

/// `r_0(a0) = 2 / (3 + a0 + sqrt5 (1 + a0))`, strictly decreasing in `a0`.
pub fn scalar_refined_radius(a0: f64) -> f64 {
    2.0 / (3.0 + a0 + 5f64.sqrt() * (1.0 + a0))
}

/// Unique root in (0, 1/2] of `(1 - a0^3) r^3 - (1 + 2 a0) r^2 - 2 r + 1`,
/// with the stated bounds `1/3 < root < 1/(2 + a0)` asserted.
pub fn cubic_radius(a0: f64) -> Result<RadiusSolution, RadiusError> {
    if !(0.0..1.0).contains(&a0) {
        return Err(RadiusError::BadParam(format!("a0 = {a0} outside [0, 1)")));
    }
    let f = move |r: f64| (1.0 - a0.powi(3)) * r.powi(3) - (1.0 + 2.0 * a0) * r * r - 2.0 * r + 1.0;
    let sol = bisect_on("ScalarRefinedCubic", f, 1e-9, 0.5)?;
    if sol.value <= consts::one_third() || sol.value >= 1.0 / (2.0 + a0) {
        return Err(RadiusError::BoundsViolated(format!(
            "root {} outside (1/3, 1/(2 + {a0}))",
            sol.value
        )));
    }
    Ok(sol)
}

/// Smallest root in (0, 1) of the head-threshold polynomial for the
/// area-refined functional: heads up to this value make the worst-case
/// envelope stay at or below 1 at the functional's radius.
pub fn threshold_a(power: u8) -> Result<RadiusSolution, RadiusError> {
    let poly: fn(f64) -> f64 = match power {
        1 => |a| {
            277.0 - 857.0 * a + 281.0 * a.powi(2) + 371.0 * a.powi(3)
                - 49.0 * a.powi(4)
                - 27.0 * a.powi(5)
                + 3.0 * a.powi(6)
                + a.powi(7)
        },
        2 => |a| {
            216.0 - 780.0 * a + 876.0 * a.powi(2) - 419.0 * a.powi(3) + 95.0 * a.powi(4)
                - 13.0 * a.powi(5)
                + a.powi(6)
        },
        other => {
            return Err(RadiusError::BadParam(format!(
                "head power {other} must be 1 or 2"
            )))
        }
    };
    // First bracket from the left gives the smallest root.
    let scan = 1000;
    let (lo, hi) = (1e-9, 1.0 - 1e-9);
    let mut prev_x = lo;
    let mut prev_f = poly(lo);
    for i in 1..=scan {
        let x = lo + (hi - lo) * i as f64 / scan as f64;
        let fx = poly(x);
        if prev_f == 0.0 {
            return Ok(RadiusSolution {
                value: prev_x,
                residual: 0.0,
            });
        }
        if prev_f * fx < 0.0 {
            return Ok(bisect_bracket(poly, prev_x, x, 1e-13));
        }
        prev_x = x;
        prev_f = fx;
    }
    Err(RadiusError::NoRoot {
        spec: format!("ThresholdN{power}"),
    })
}

/// Scan (0,1) for sign changes; demand exactly one, then bisect it.
fn bisect_unique(spec: &str, f: impl Fn(f64) -> f64 + Copy) -> Result<RadiusSolution, RadiusError> {
    bisect_on(spec, f, 1e-9, 1.0 - 1e-9)
}

fn bisect_on(
    spec: &str,
    f: impl Fn(f64) -> f64 + Copy,
    lo: f64,
    hi: f64,
) -> Result<RadiusSolution, RadiusError> {
    let scan = 1000;
    let mut brackets = Vec::new();
    let mut prev_x = lo;
    let mut prev_f = f(lo);
    for i in 1..=scan {
        let x = lo + (hi - lo) * i as f64 / scan as f64;
        let fx = f(x);
        if prev_f * fx < 0.0 || fx == 0.0 {
            brackets.push((prev_x, x));
        }
        prev_x = x;
        prev_f = fx;
    }
    match brackets.len() {
        0 => Err(RadiusError::NoRoot {
            spec: spec.to_string(),
        }),
        1 => Ok(bisect_bracket(f, brackets[0].0, brackets[0].1, 1e-13)),
        _ => Err(RadiusError::Ambiguous {
            spec: spec.to_string(),
            brackets,
        }),
    }
}

fn bisect_bracket(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> RadiusSolution {
    let mut flo = f(lo);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        let fmid = f(mid);
        if fmid == 0.0 {
            lo = mid;
            hi = mid;
            break;
        }
        if flo * fmid < 0.0 {
            hi = mid;
        } else {
            lo = mid;
            flo = fmid;
        }
    }
    let value = 0.5 * (lo + hi);
    RadiusSolution {
        value,
        residual: f(value).abs(),
    }
}

/// The rows of the full radius table: Rogosinski radii for N = 1..=10,
/// scalar closed forms on an a0 grid, thresholds, and the named constants.
pub fn standard_table() -> Vec<RadiusSpec> {
    let mut specs = Vec::new();
    for n in 1..=10 {
        specs.push(RadiusSpec::RogosinskiValue { n });
    }
    for n in 1..=10 {
        specs.push(RadiusSpec::RogosinskiSquare { n });
    }
    for n in 1..=10 {
        specs.push(RadiusSpec::RogosinskiPower { n, p: 0.5 });
    }
    for i in 0..=10 {
        let a0 = i as f64 / 10.0;
        specs.push(RadiusSpec::ScalarRefined { a0 });
        if a0 < 1.0 {
            specs.push(RadiusSpec::ScalarRefinedCubic { a0 });
            specs.push(RadiusSpec::HeadAreaDomain { a0 });
        }
    }
    specs.push(RadiusSpec::ThresholdHeadArea { power: 1 });
    specs.push(RadiusSpec::ThresholdHeadArea { power: 2 });
    specs.push(RadiusSpec::Const {
        value: consts::one_third(),
    });
    specs.push(RadiusSpec::Const {
        value: consts::one_fifth(),
    });
    specs.push(RadiusSpec::Const {
        value: consts::sqrt5_minus_2(),
    });
    specs
}
