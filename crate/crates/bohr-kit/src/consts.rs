//! The closed-form constants of the theory, computed from their defining
//! expressions rather than typed as decimal literals, so no transcription
//! drift can creep into logic paths.

/// `sqrt(5) - 2`: positive root of `r^2 + 4r - 1` and the radius attached
/// to the value-headed area functional (also the limit radius of the
/// extremal family for the value-refined functional).
pub fn sqrt5_minus_2() -> f64 {
    5f64.sqrt() - 2.0
}

/// `1/sqrt(5)`: the radius the one-variable value-refined statement claims
/// (kept exposed for adjudication against the extremal-family limit).
pub fn inv_sqrt5() -> f64 {
    1.0 / 5f64.sqrt()
}

/// `(13 - 5 sqrt5)/4`: admissibility bound for `G` at radius `sqrt5 - 2`.
pub fn g_admissibility_bound() -> f64 {
    (13.0 - 5.0 * 5f64.sqrt()) / 4.0
}

/// `4 sqrt2 - 5`: scalar threshold on `|a_0|` for the square-remainder
/// functional at radius 1/3.
pub fn scalar_remainder_sq_threshold() -> f64 {
    4.0 * 2f64.sqrt() - 5.0
}

pub fn one_third() -> f64 {
    1.0 / 3.0
}

pub fn one_fifth() -> f64 {
    1.0 / 5.0
}
