//! Certified values and three-valued verdicts.
//!
//! Every functional in this crate is evaluated with an explicit enclosure:
//! the true (untruncated, un-gridded) quantity lies in `[lo, hi]`. Reports
//! expose the midpoint as `value` and the half-width as `slack`, and an
//! inequality "<= 1" gets a verdict only when the enclosure decides it.

use std::ops::Add;

use serde::{Deserialize, Serialize};

/// An interval `[lo, hi]` guaranteed to contain the true value.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Certified {
    lo: f64,
    hi: f64,
}

impl Certified {
    pub fn exact(x: f64) -> Self {
        Certified { lo: x, hi: x }
    }

    pub fn interval(lo: f64, hi: f64) -> Self {
        debug_assert!(lo <= hi, "inverted interval [{lo}, {hi}]");
        Certified { lo, hi }
    }

    /// A finite computed value plus a one-sided tail bound above it.
    pub fn with_upper_slack(x: f64, slack: f64) -> Self {
        Certified {
            lo: x,
            hi: x + slack,
        }
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    /// Midpoint, the reported value.
    pub fn value(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    /// Half-width; `value - slack <= truth <= value + slack`.
    pub fn slack(&self) -> f64 {
        0.5 * (self.hi - self.lo)
    }

    pub fn add_exact(self, x: f64) -> Certified {
        Certified {
            lo: self.lo + x,
            hi: self.hi + x,
        }
    }

    /// Scale by a nonnegative constant.
    pub fn scale(self, c: f64) -> Certified {
        debug_assert!(c >= 0.0);
        Certified {
            lo: self.lo * c,
            hi: self.hi * c,
        }
    }

    /// Clamp the lower end at zero (for quantities known nonnegative).
    pub fn clamp_nonneg(self) -> Certified {
        Certified {
            lo: self.lo.max(0.0),
            hi: self.hi.max(0.0),
        }
    }

    /// Integer power of a nonnegative quantity.
    pub fn powi_nonneg(self, k: u8) -> Certified {
        let s = self.clamp_nonneg();
        Certified {
            lo: s.lo.powi(k as i32),
            hi: s.hi.powi(k as i32),
        }
    }

    /// Real power of a nonnegative quantity (monotone for p > 0).
    pub fn powf_nonneg(self, p: f64) -> Certified {
        let s = self.clamp_nonneg();
        Certified {
            lo: s.lo.powf(p),
            hi: s.hi.powf(p),
        }
    }

    /// Apply a nondecreasing function to the enclosure.
    pub fn map_monotone(self, f: impl Fn(f64) -> f64) -> Certified {
        Certified {
            lo: f(self.lo),
            hi: f(self.hi),
        }
    }
}

impl Add for Certified {
    type Output = Certified;

    fn add(self, other: Certified) -> Certified {
        Certified {
            lo: self.lo + other.lo,
            hi: self.hi + other.hi,
        }
    }
}

/// Outcome of comparing a certified value against the bound 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    /// `value + slack <= 1`: the inequality certainly holds.
    #[serde(rename = "PASS")]
    Pass,
    /// `value - slack > 1`: the inequality certainly fails.
    #[serde(rename = "FAIL")]
    Fail,
    /// The enclosure straddles 1.
    #[serde(rename = "INCONCLUSIVE")]
    Inconclusive,
}

impl Verdict {
    /// Judge `c <= 1`.
    pub fn le_one(c: Certified) -> Verdict {
        if c.hi() <= 1.0 {
            Verdict::Pass
        } else if c.lo() > 1.0 {
            Verdict::Fail
        } else {
            Verdict::Inconclusive
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Pass => write!(f, "PASS"),
            Verdict::Fail => write!(f, "FAIL"),
            Verdict::Inconclusive => write!(f, "INCONCLUSIVE"),
        }
    }
}
