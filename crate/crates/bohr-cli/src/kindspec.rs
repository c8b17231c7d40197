//! Parsing of functional-kind strings on the command line.
//!
//! Grammar (case-insensitive):
//!   bohr | m1 | m2 | c1 | c2 | bp:<p> | d:<c1,c2,..> | e:<c1,c2,..>
//!   | n1[:<lambda>] | n2[:<lambda>] | t<N>j<1|2>
//!
//! `n1`/`n2` default to the sharp weights 8/9 and 9/8.

use bohr_kit::functionals::{FunctionalKind, GPoly};

pub fn parse_kind(text: &str) -> Result<FunctionalKind, String> {
    let text = text.trim().to_ascii_lowercase();
    let (name, arg) = match text.split_once(':') {
        Some((n, a)) => (n, Some(a)),
        None => (text.as_str(), None),
    };

    let parse_g = |arg: Option<&str>| -> Result<GPoly, String> {
        let arg = arg.ok_or("G-polynomial kinds need coefficients, e.g. d:2.472")?;
        let coeffs: Result<Vec<f64>, _> = arg.split(',').map(|c| c.trim().parse::<f64>()).collect();
        GPoly::new(coeffs.map_err(|e| format!("bad G coefficient: {e}"))?)
            .map_err(|e| e.to_string())
    };

    match name {
        "bohr" => Ok(FunctionalKind::Bohr),
        "m1" => Ok(FunctionalKind::ValueRefined { power: 1 }),
        "m2" => Ok(FunctionalKind::ValueRefined { power: 2 }),
        "c1" => Ok(FunctionalKind::RemainderRefined { power: 1 }),
        "c2" => Ok(FunctionalKind::RemainderRefined { power: 2 }),
        "bp" => {
            let p = arg.ok_or("bp needs an exponent, e.g. bp:0.5")?;
            Ok(FunctionalKind::HeadPower {
                p: p.parse().map_err(|e| format!("bad p: {e}"))?,
            })
        }
        "d" => Ok(FunctionalKind::AreaValue { g: parse_g(arg)? }),
        "e" => Ok(FunctionalKind::AreaHead { g: parse_g(arg)? }),
        "n1" | "n2" => {
            let power = if name == "n1" { 1 } else { 2 };
            let default = if power == 1 { 8.0 / 9.0 } else { 9.0 / 8.0 };
            let lambda = match arg {
                Some(a) => a.parse().map_err(|e| format!("bad lambda: {e}"))?,
                None => default,
            };
            Ok(FunctionalKind::HeadAreaRefined { power, lambda })
        }
        _ => {
            if let Some(rest) = name.strip_prefix('t') {
                if let Some((n, j)) = rest.split_once('j') {
                    let cutoff: usize = n.parse().map_err(|e| format!("bad N: {e}"))?;
                    let power: u8 = j.parse().map_err(|e| format!("bad j: {e}"))?;
                    return Ok(FunctionalKind::Rogosinski { cutoff, power });
                }
            }
            Err(format!("unknown kind {text:?}"))
        }
    }
}
