//! `bohr`: command-line front end for the certified Bohr-Rogosinski toolkit.
//!
//! Subcommands: `radii`, `verify`, `adjudicate`, `sharpness`, `multidim`,
//! `gpoly`. All output is deterministic for a fixed configuration; files are
//! written byte-identically across runs.
//!
//! Exit codes: 0 ok/CONFIRMS/PASS, 2 usage error, 3 CONTRADICTS/FAIL/not
//! admissible, 4 INCONCLUSIVE, 5 I/O failure.

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use bohr_kit::cert::Verdict;
use bohr_kit::functionals::{gpoly_admissible, AdmissibilityVariant, GPoly};
use bohr_kit::multidim::{compose_linear, homothety_verify, CircularDomain};
use bohr_kit::radii::{solve_radius, standard_table};
use bohr_kit::series::OperatorSeries;
use bohr_kit::sharpness::{
    adjudicate_radius, default_b_grid, extremal_margin, AdjudicateOptions, SharpnessVerdict,
};
use bohr_kit::verify::{run_verify, VerifyConfig, VerifyRadius};

mod kindspec;
use kindspec::parse_kind;

const EXIT_NEGATIVE: u8 = 3;
const EXIT_INCONCLUSIVE: u8 = 4;
const EXIT_IO: u8 = 5;

#[derive(Parser)]
#[command(
    name = "bohr",
    version,
    about = "Certified Bohr-Rogosinski verification toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct OutputArgs {
    /// Output format.
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Write to a file instead of stdout.
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Print the full radius table (Rogosinski radii, scalar closed forms,
    /// thresholds, named constants) with residuals.
    Radii {
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Evaluate one functional kind on seeded Schur-class samples and tally
    /// PASS/FAIL/INCONCLUSIVE verdicts. Exits 0 iff no FAIL.
    Verify {
        /// Functional kind: bohr, m1, m2, c1, c2, bp:<p>, d:<c1,..>,
        /// e:<c1,..>, n1[:<lambda>], n2[:<lambda>], t<N>j<1|2>.
        #[arg(long)]
        kind: String,
        /// Evaluation radius in (0,1), or "nkind" for 1/(3 - a0).
        #[arg(long)]
        r: String,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0x0b0e)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        dim: usize,
        #[arg(long, default_value_t = 128)]
        order: usize,
        /// Sampled heads are uniform in [a0-min, a0-max].
        #[arg(long = "a0-min", default_value_t = 0.0)]
        a0_min: f64,
        #[arg(long = "a0-max", default_value_t = 0.999)]
        a0_max: f64,
        /// Also evaluate the near-1 extremal family members.
        #[arg(long, default_value_t = false)]
        include_extremal: bool,
        /// Emit every sample record, not just the summary.
        #[arg(long, default_value_t = false)]
        records: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Adjudicate the empirical radius of a functional against its claimed
    /// constant. Exits 0 on CONFIRMS, 3 on CONTRADICTS, 4 on INCONCLUSIVE.
    Adjudicate {
        #[arg(long)]
        kind: String,
        #[arg(long, default_value_t = 1e-5)]
        r_tol: f64,
        #[arg(long, default_value_t = 0x0b0e)]
        seed: u64,
        #[arg(long, default_value_t = 24)]
        samples: usize,
        #[arg(long, default_value_t = 4)]
        dim: usize,
        #[arg(long, default_value_t = 128)]
        order: usize,
        /// Restrict candidate heads to [0, cap].
        #[arg(long = "a0-max")]
        a0_max: Option<f64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Emit margin curves (b, r, margin) for the extremal family.
    Sharpness {
        #[arg(long)]
        kind: String,
        /// Comma-separated family parameters; defaults to the near-1 ladder.
        #[arg(long)]
        b_grid: Option<String>,
        #[arg(long, default_value_t = 0.05)]
        r_min: f64,
        #[arg(long, default_value_t = 0.6)]
        r_max: f64,
        #[arg(long, default_value_t = 45)]
        r_steps: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Verify a functional on slices of a linear-composite map over a
    /// circular domain. Exits 0 on PASS, 3 on FAIL.
    Multidim {
        #[arg(long, value_enum)]
        domain: DomainArg,
        /// Number of complex variables.
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long)]
        kind: String,
        /// Homothety factor in (0,1).
        #[arg(long)]
        rho: f64,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0x0b0e)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        dim: usize,
        #[arg(long, default_value_t = 128)]
        order: usize,
        /// Inner map: extremal family member with this parameter.
        #[arg(long = "inner-b")]
        inner_b: Option<f64>,
        /// Inner map: seeded random Schur sample with this head norm
        /// (ignored when --inner-b is given).
        #[arg(long, default_value_t = 0.5)]
        a0: f64,
        /// Real weights of omega(z) = w.z, comma-separated; defaults to the
        /// first coordinate axis.
        #[arg(long)]
        weights: Option<String>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Check a G-polynomial against an admissibility condition.
    /// Exits 0 when admissible, 3 otherwise.
    Gpoly {
        /// Coefficients c_1,..,c_l (nonnegative).
        #[arg(long)]
        coeffs: String,
        #[arg(long, value_enum)]
        variant: VariantArg,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum DomainArg {
    Polydisc,
    Ball,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    /// sum c_m 2^(1-4m) <= (13 - 5 sqrt5)/4 (radius sqrt5 - 2).
    Sqrt5Minus2,
    /// sum 8(2m-1) c_m (3/8)^(2m) <= 1 (radius 1/3).
    OneThird,
}

enum CliError {
    /// Bad parameters or inconsistent configuration.
    Usage(String),
    Io(std::io::Error),
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

/// Wraps parameter-validation failures from the library as usage errors.
fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Io(err)) => {
            eprintln!("i/o error: {err}");
            ExitCode::from(EXIT_IO)
        }
    }
}

fn emit(output: &OutputArgs, text: &str) -> std::io::Result<()> {
    match &output.out {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().write_all(text.as_bytes()),
    }
}

fn parse_f64_list(text: &str) -> Result<Vec<f64>, String> {
    text.split(',')
        .map(|part| {
            part.trim()
                .parse::<f64>()
                .map_err(|e| format!("bad number {part:?}: {e}"))
        })
        .collect()
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Radii { output } => {
            let mut rows = Vec::new();
            for spec in standard_table() {
                let sol = solve_radius(&spec).map_err(usage)?;
                rows.push((spec, sol));
            }
            let text = match output.format {
                Format::Csv => {
                    let mut s = String::from("spec,params,radius,residual\n");
                    for (spec, sol) in &rows {
                        s.push_str(&format!(
                            "{},{},{:.10},{:.3e}\n",
                            spec.tag(),
                            spec.params(),
                            sol.value,
                            sol.residual
                        ));
                    }
                    s
                }
                Format::Json => {
                    let items: Vec<serde_json::Value> = rows
                        .iter()
                        .map(|(spec, sol)| {
                            serde_json::json!({
                                "spec": spec,
                                "radius": sol.value,
                                "residual": sol.residual,
                            })
                        })
                        .collect();
                    format!("{}\n", serde_json::to_string_pretty(&items).map_err(usage)?)
                }
            };
            emit(&output, &text)?;
            Ok(ExitCode::SUCCESS)
        }

        Command::Verify {
            kind,
            r,
            samples,
            seed,
            dim,
            order,
            a0_min,
            a0_max,
            include_extremal,
            records,
            output,
        } => {
            let kind = parse_kind(&kind).map_err(usage)?;
            let radius = if r == "nkind" {
                VerifyRadius::HeadDependent
            } else {
                VerifyRadius::Fixed {
                    r: r.parse().map_err(usage)?,
                }
            };
            let config = VerifyConfig {
                kind,
                radius,
                samples,
                dim,
                order,
                seed,
                a0_range: (a0_min, a0_max),
                include_extremal,
            };
            let report = run_verify(&config).map_err(usage)?;
            let text = match output.format {
                Format::Csv => {
                    let mut s = String::from("kind,a0,r,value,slack,verdict\n");
                    if records {
                        for rec in &report.records {
                            s.push_str(&format!(
                                "{},{:.6},{:.6},{:.12},{:.3e},{}\n",
                                rec.kind, rec.a0, rec.r, rec.value, rec.slack, rec.verdict
                            ));
                        }
                    }
                    s.push_str(&format!(
                        "# pass={} fail={} inconclusive={}\n",
                        report.pass, report.fail, report.inconclusive
                    ));
                    s
                }
                Format::Json => {
                    let body = if records {
                        serde_json::to_value(&report).map_err(usage)?
                    } else {
                        serde_json::json!({
                            "pass": report.pass,
                            "fail": report.fail,
                            "inconclusive": report.inconclusive,
                            "worst": report.worst(),
                        })
                    };
                    format!("{}\n", serde_json::to_string_pretty(&body).map_err(usage)?)
                }
            };
            emit(&output, &text)?;
            Ok(if report.fail > 0 {
                ExitCode::from(EXIT_NEGATIVE)
            } else {
                ExitCode::SUCCESS
            })
        }

        Command::Adjudicate {
            kind,
            r_tol,
            seed,
            samples,
            dim,
            order,
            a0_max,
            output,
        } => {
            let kind = parse_kind(&kind).map_err(usage)?;
            let opts = AdjudicateOptions {
                r_tol,
                seed,
                samples,
                dim,
                order,
                head_cap: a0_max,
            };
            let report = adjudicate_radius(&kind, &default_b_grid(), opts).map_err(usage)?;
            let text = format!(
                "{}\n",
                serde_json::to_string_pretty(&report).map_err(usage)?
            );
            emit(&output, &text)?;
            Ok(match report.verdict {
                SharpnessVerdict::Confirms => ExitCode::SUCCESS,
                SharpnessVerdict::Contradicts => ExitCode::from(EXIT_NEGATIVE),
                SharpnessVerdict::Inconclusive => ExitCode::from(EXIT_INCONCLUSIVE),
            })
        }

        Command::Sharpness {
            kind,
            b_grid,
            r_min,
            r_max,
            r_steps,
            output,
        } => {
            let kind = parse_kind(&kind).map_err(usage)?;
            if output.format == Format::Json {
                return Err(CliError::Usage("sharpness curves are CSV-only".into()));
            }
            let grid = match b_grid {
                Some(text) => parse_f64_list(&text).map_err(usage)?,
                None => default_b_grid(),
            };
            let mut s = String::from("b,r,margin\n");
            for &b in &grid {
                for step in 0..=r_steps {
                    let r = r_min + (r_max - r_min) * step as f64 / r_steps.max(1) as f64;
                    let margin = extremal_margin(&kind, b, r).map_err(usage)?;
                    s.push_str(&format!("{b},{r:.6},{margin:.12e}\n"));
                }
            }
            emit(&output, &s)?;
            Ok(ExitCode::SUCCESS)
        }

        Command::Multidim {
            domain,
            n,
            kind,
            rho,
            samples,
            seed,
            dim,
            order,
            inner_b,
            a0,
            weights,
            output,
        } => {
            let kind = parse_kind(&kind).map_err(usage)?;
            let domain = match domain {
                DomainArg::Polydisc => CircularDomain::Polydisc { n },
                DomainArg::Ball => CircularDomain::EuclideanBall { n },
            };
            let inner = match inner_b {
                Some(b) => OperatorSeries::blaschke(b, dim, order).map_err(usage)?,
                None => {
                    use rand::SeedableRng;
                    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ 0x1d);
                    bohr_kit::series::random_schur_head(a0, dim, order, &mut rng).map_err(usage)?
                }
            };
            let w: Vec<Complex64> = match weights {
                Some(text) => parse_f64_list(&text)
                    .map_err(usage)?
                    .into_iter()
                    .map(|x| Complex64::new(x, 0.0))
                    .collect(),
                None => {
                    let mut w = vec![Complex64::ZERO; n];
                    w[0] = Complex64::ONE;
                    w
                }
            };
            let map = compose_linear(inner, w, domain).map_err(usage)?;
            let report = homothety_verify(&map, &kind, rho, seed, samples).map_err(usage)?;
            let text = format!(
                "{}\n",
                serde_json::to_string_pretty(&report).map_err(usage)?
            );
            emit(&output, &text)?;
            Ok(match report.verdict {
                Verdict::Pass => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_NEGATIVE),
            })
        }

        Command::Gpoly {
            coeffs,
            variant,
            output,
        } => {
            let coeffs = parse_f64_list(&coeffs).map_err(usage)?;
            let g = GPoly::new(coeffs).map_err(usage)?;
            let variant = match variant {
                VariantArg::Sqrt5Minus2 => AdmissibilityVariant::Sqrt5Minus2,
                VariantArg::OneThird => AdmissibilityVariant::OneThird,
            };
            let adm = gpoly_admissible(&g, variant);
            let text = match output.format {
                Format::Csv => format!(
                    "admissible,lhs,bound,margin\n{},{:.12},{:.12},{:.12}\n",
                    adm.admissible, adm.lhs, adm.bound, adm.margin
                ),
                Format::Json => format!("{}\n", serde_json::to_string_pretty(&adm).map_err(usage)?),
            };
            emit(&output, &text)?;
            Ok(if adm.admissible {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_NEGATIVE)
            })
        }
    }
}
