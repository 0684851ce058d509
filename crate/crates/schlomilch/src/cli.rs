//! Command-line front door: verify catalog entries, run user-supplied
//! transforms, exercise the exact identities and the distributions, and emit
//! JSON reports.
//!
//! Exit codes: 0 when every requested check passes, 1 when a check fails
//! (including quadrature non-convergence), 2 for usage or parse errors. All
//! diagnostics go to stderr; with `--json` the stdout payload for the
//! verification commands is the same report-array schema the catalog
//! exports.

use std::collections::BTreeMap;

use clap::{Args, Parser, Subcommand};

use crate::distributions::{
    asymmetry, moment_checks, rrig_asymmetry, symmetry_checks, ParentDensity,
    ScaleTransformDistribution,
};
use crate::report::{param_map, VerificationReport};
use crate::transform::{extended_check, verify_cs, SelfInverseFn, TransformSpec};
use crate::{catalog, expr, identities};

#[derive(Parser)]
#[command(
    name = "schlomilch",
    about = "Numerical verification toolkit for the Cauchy-Schlomilch transformation",
    version
)]
struct Cli {
    /// Verification tolerance (pass iff |lhs-rhs| <= tol*max(1,|rhs|)).
    #[arg(long, global = true, default_value_t = 1e-8)]
    tol: f64,
    /// Emit JSON on stdout instead of human-readable text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for anything random (samplers, Monte Carlo corroboration).
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify one catalog entry against its closed form.
    Verify {
        /// Entry id (see `list`).
        #[arg(long)]
        entry: String,
        /// Parameter overrides as name=value, repeatable.
        #[arg(long = "set", value_parser = parse_key_value)]
        set: Vec<(String, f64)>,
    },
    /// Verify every catalog entry at its default parameters.
    VerifyAll,
    /// Check the classic transformation for a user-supplied f.
    ///
    /// Write f in the variable `u`, which stands for the squared argument:
    /// the tool itself forms f((a·x - b/x)^2) on the left and f(y^2) on the
    /// right.
    Transform(TransformArgs),
    /// Check the extended (self-inverse) transformation for a user f.
    Extended(ExtendedArgs),
    /// Run one of the exact/series identity suites.
    Identity {
        /// One of: wz1, sevalues, lemma62, hseries, trigbessel, derivs.
        #[arg(long)]
        name: String,
        /// Upper sweep bound for the exact suites.
        #[arg(long, default_value_t = 200)]
        max_k: u64,
    },
    /// Check a transformation-of-scale distribution.
    Dist(DistArgs),
    /// Draw samples from a classic-mode distribution.
    Sample(SampleArgs),
    /// List the catalog entries.
    List,
}

#[derive(Args)]
struct TransformArgs {
    /// Expression for f in the variable `u`.
    #[arg(long)]
    f: String,
    #[arg(long)]
    a: f64,
    #[arg(long)]
    b: f64,
}

#[derive(Args)]
struct ExtendedArgs {
    /// One of: reciprocal, log-expm1, exp-log, log-sinh-ratio, sinh-asinh.
    #[arg(long)]
    kind: String,
    /// The kind's parameter (b for reciprocal, alpha otherwise).
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
    /// Expression for f in the variable `u` (the squared argument).
    #[arg(long)]
    f: String,
    /// Scale parameter of the extended identity.
    #[arg(long, default_value_t = 1.0)]
    a: f64,
}

#[derive(Args)]
struct DistArgs {
    /// One of: rrig, halft, subbotin.
    #[arg(long)]
    family: String,
    /// Scale parameter of the transformation.
    #[arg(long, default_value_t = 1.0)]
    b: f64,
    /// One of: norm, symmetry, moments, asymmetry.
    #[arg(long)]
    check: String,
    /// Degrees of freedom for halft.
    #[arg(long, default_value_t = 2.0)]
    nu: f64,
    /// Exponent for subbotin.
    #[arg(long, default_value_t = 2)]
    n: u32,
}

#[derive(Args)]
struct SampleArgs {
    /// One of: rrig, halft, subbotin.
    #[arg(long)]
    family: String,
    #[arg(long, default_value_t = 1.0)]
    b: f64,
    /// Number of samples.
    #[arg(short = 'n', default_value_t = 10)]
    count: usize,
    /// Degrees of freedom for halft.
    #[arg(long, default_value_t = 2.0)]
    nu: f64,
    /// Exponent for subbotin.
    #[arg(long, default_value_t = 2)]
    n: u32,
}

fn parse_key_value(text: &str) -> Result<(String, f64), String> {
    let (key, value) = text
        .split_once('=')
        .ok_or_else(|| format!("expected name=value, got `{text}`"))?;
    let value: f64 = value
        .parse()
        .map_err(|_| format!("`{value}` is not a number"))?;
    Ok((key.to_string(), value))
}

/// Run the CLI on the given argument vector and return the process exit
/// code (0 = all checks passed, 1 = a check failed, 2 = usage error).
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders help/version on stdout itself; everything else
            // is a usage error on stderr with exit code 2.
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    if !(1e-12..=1e-3).contains(&cli.tol) {
        eprintln!("error: --tol must lie in [1e-12, 1e-3], got {}", cli.tol);
        return 2;
    }
    match dispatch(&cli) {
        Ok(reports) => {
            let all_passed = reports.iter().all(|r| r.pass);
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&reports).unwrap());
            } else {
                for report in &reports {
                    print_human(report);
                }
                let passed = reports.iter().filter(|r| r.pass).count();
                println!("{passed}/{} checks passed", reports.len());
            }
            if all_passed {
                0
            } else {
                1
            }
        }
        Err(Outcome::Text(text)) => {
            print!("{text}");
            0
        }
        Err(Outcome::Usage(message)) => {
            eprintln!("error: {message}");
            2
        }
    }
}

/// Non-report outcomes: raw text payloads (list, sample) or usage errors.
enum Outcome {
    Text(String),
    Usage(String),
}

fn print_human(report: &VerificationReport) {
    let params: Vec<String> = report
        .params
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect();
    let status = if report.pass { "PASS" } else { "FAIL" };
    println!(
        "{:24} {:28} lhs={:+.12e} rhs={:+.12e} |diff|={:.2e} tol={:.1e} {status}",
        report.id,
        params.join(" "),
        report.lhs,
        report.rhs,
        report.abs_err,
        report.tol
    );
    if let Ok(entry) = catalog::find_entry(&report.id) {
        println!("    ref: {}", entry.citation);
    }
    for flag in &report.flags {
        println!("    flag: {flag}");
    }
}

fn dispatch(cli: &Cli) -> Result<Vec<VerificationReport>, Outcome> {
    match &cli.command {
        Command::Verify { entry, set } => {
            let overrides: BTreeMap<String, f64> = set.iter().cloned().collect();
            catalog::verify_entry(entry, &overrides, cli.tol)
                .map(|r| vec![r])
                .map_err(|e| Outcome::Usage(e.to_string()))
        }
        Command::VerifyAll => Ok(catalog::verify_all(cli.tol)),
        Command::Transform(args) => {
            let f = expr::compile_str(&args.f, "u", &Default::default())
                .map_err(|e| Outcome::Usage(e.to_string()))?;
            let spec = TransformSpec::new(args.a, args.b)
                .map_err(|e| Outcome::Usage(e.to_string()))?;
            Ok(vec![verify_cs(&f, spec, cli.tol)])
        }
        Command::Extended(args) => {
            let f = expr::compile_str(&args.f, "u", &Default::default())
                .map_err(|e| Outcome::Usage(e.to_string()))?;
            let kind = match args.kind.as_str() {
                "reciprocal" => SelfInverseFn::Reciprocal { b: args.alpha },
                "log-expm1" => SelfInverseFn::LogExpm1 { alpha: args.alpha },
                "exp-log" => SelfInverseFn::ExpLog { alpha: args.alpha },
                "log-sinh-ratio" => SelfInverseFn::LogSinhRatio { alpha: args.alpha },
                "sinh-asinh" => SelfInverseFn::SinhAsinh { alpha: args.alpha },
                other => {
                    return Err(Outcome::Usage(format!(
                        "unknown self-inverse kind `{other}`"
                    )))
                }
            };
            extended_check(kind, &f, args.a, cli.tol)
                .map(|r| vec![r])
                .map_err(|e| Outcome::Usage(e.to_string()))
        }
        Command::Identity { name, max_k } => identity_reports(name, *max_k),
        Command::Dist(args) => dist_reports(args, cli.tol, cli.seed),
        Command::Sample(args) => {
            let d = build_distribution(&args.family, args.b, args.nu, args.n)?;
            let samples = d
                .sample(args.count, cli.seed)
                .map_err(|e| Outcome::Usage(e.to_string()))?;
            let text = if cli.json {
                format!("{}\n", serde_json::to_string(&samples).unwrap())
            } else {
                let mut text = String::new();
                for s in &samples {
                    text.push_str(&format!("{s}\n"));
                }
                text
            };
            Err(Outcome::Text(text))
        }
        Command::List => {
            let entries = catalog::list_entries();
            let text = if cli.json {
                let listing: Vec<serde_json::Value> = entries
                    .iter()
                    .map(|e| {
                        serde_json::json!({
                            "id": e.id,
                            "citation": e.citation,
                            "params": e.params.iter()
                                .map(|p| (p.name.to_string(), p.default))
                                .collect::<BTreeMap<_, _>>(),
                            "flags": e.flags,
                        })
                    })
                    .collect();
                format!("{}\n", serde_json::to_string_pretty(&listing).unwrap())
            } else {
                let mut text = String::new();
                for entry in entries {
                    text.push_str(&format!("{:22} {}\n", entry.id, entry.citation));
                }
                text
            };
            Err(Outcome::Text(text))
        }
    }
}

fn exact_sweep_report(
    id: &str,
    max_k: u64,
    check: impl Fn(u64) -> bool,
) -> VerificationReport {
    let failures = (0..=max_k).filter(|&k| !check(k)).count();
    VerificationReport::compare(
        id,
        param_map(&[("max_k", max_k as f64)]),
        failures as f64,
        0.0,
        1e-12,
        (max_k + 1) as usize,
        true,
    )
}

fn residual_report(id: &str, max_residual: f64, tol: f64, samples: usize) -> VerificationReport {
    VerificationReport::compare(
        id,
        param_map(&[("samples", samples as f64)]),
        max_residual,
        0.0,
        tol,
        samples,
        true,
    )
}

fn identity_reports(name: &str, max_k: u64) -> Result<Vec<VerificationReport>, Outcome> {
    match name {
        "wz1" => Ok(vec![exact_sweep_report("wz1", max_k, identities::wz1_check)]),
        "sevalues" => Ok(vec![exact_sweep_report(
            "sevalues",
            max_k.min(150),
            identities::se_so_check,
        )]),
        "lemma62" => Ok(vec![exact_sweep_report(
            "lemma62",
            max_k.min(100),
            identities::lemma62_sums_check,
        )]),
        "hseries" => {
            let max = (0..20)
                .map(|i| identities::h_series_identity_check(-2.0 + 4.0 * i as f64 / 19.0, 60))
                .fold(0.0f64, f64::max);
            Ok(vec![residual_report("hseries", max, 1e-11, 20)])
        }
        "trigbessel" => {
            let max = (0..20)
                .map(|i| identities::trig_bessel_identity_check(-2.0 + 4.0 * i as f64 / 19.0, 60))
                .fold(0.0f64, f64::max);
            Ok(vec![residual_report("trigbessel", max, 1e-11, 20)])
        }
        "derivs" => {
            let checks = identities::derivative_identity_checks();
            Ok(vec![
                residual_report("derivs-exp-bessel-i", checks.exp_bessel_i, 1e-8, 50),
                residual_report("derivs-cos-bessel-j", checks.cos_bessel_j, 1e-8, 50),
                residual_report("derivs-si-bessel-j", checks.si_bessel_j, 1e-8, 50),
            ])
        }
        other => Err(Outcome::Usage(format!("unknown identity suite `{other}`"))),
    }
}

fn build_distribution(
    family: &str,
    b: f64,
    nu: f64,
    n: u32,
) -> Result<ScaleTransformDistribution, Outcome> {
    let parent = match family {
        "rrig" => ParentDensity::half_gaussian(),
        "halft" => ParentDensity::half_t(nu).map_err(|e| Outcome::Usage(e.to_string()))?,
        "subbotin" => {
            ParentDensity::half_subbotin(n).map_err(|e| Outcome::Usage(e.to_string()))?
        }
        other => return Err(Outcome::Usage(format!("unknown family `{other}`"))),
    };
    ScaleTransformDistribution::classic(parent, b).map_err(|e| Outcome::Usage(e.to_string()))
}

fn dist_reports(args: &DistArgs, tol: f64, seed: u64) -> Result<Vec<VerificationReport>, Outcome> {
    let d = build_distribution(&args.family, args.b, args.nu, args.n)?;
    let id_prefix = format!("dist-{}", args.family);
    match args.check.as_str() {
        "norm" => {
            let mut report = d.normalization_check(tol.max(1e-10));
            report.id = format!("{id_prefix}-norm");
            report.params.insert("b".to_string(), args.b);
            Ok(vec![report])
        }
        "symmetry" => {
            let symmetry = symmetry_checks(&d);
            Ok(vec![VerificationReport::compare(
                format!("{id_prefix}-symmetry"),
                param_map(&[
                    ("b", args.b),
                    ("expected_mode", symmetry.expected_mode),
                    ("located_mode", symmetry.located_mode),
                ]),
                symmetry.max_symmetry_residual,
                0.0,
                1e-12,
                100,
                symmetry.pass,
            )])
        }
        "moments" => {
            let mut reports = Vec::new();
            for r in [1, 2] {
                let checks = moment_checks(&d, r, 20_000, seed)
                    .map_err(|e| Outcome::Usage(e.to_string()))?;
                for check in checks {
                    let mut report = VerificationReport::compare(
                        format!("{id_prefix}-moment[{}]", check.name),
                        param_map(&[("b", args.b), ("r", r as f64)]),
                        check.lhs,
                        check.rhs,
                        1e-6,
                        20_000,
                        true,
                    );
                    report.pass = check.pass && check.mc_pass.unwrap_or(true);
                    if let (Some(mc), Some(stderr)) = (check.mc_value, check.mc_stderr) {
                        report = report
                            .with_flag(format!("monte-carlo: {mc} (stderr {stderr:.2e})"));
                    }
                    reports.push(report);
                }
            }
            Ok(reports)
        }
        "asymmetry" => {
            let mut reports = Vec::new();
            let mut previous = f64::INFINITY;
            let mut monotone = true;
            for i in 1..10 {
                let p = i as f64 / 10.0;
                let gamma = asymmetry(&d, p).map_err(|e| Outcome::Usage(e.to_string()))?;
                monotone &= gamma < previous;
                previous = gamma;
                // The half-Gaussian parent has the closed form to compare
                // against; other parents check range and monotonicity.
                let (rhs, tol_here) = if args.family == "rrig" {
                    (rrig_asymmetry(args.b, p), 1e-9)
                } else {
                    (gamma, 1.0)
                };
                let mut report = VerificationReport::compare(
                    format!("{id_prefix}-asymmetry"),
                    param_map(&[("b", args.b), ("p", p)]),
                    gamma,
                    rhs,
                    tol_here,
                    200,
                    true,
                );
                report.pass &= gamma > 0.0 && gamma < 1.0;
                reports.push(report);
            }
            if !monotone {
                for report in &mut reports {
                    report.pass = false;
                    report.flags.push("asymmetry not decreasing in p".into());
                }
            }
            Ok(reports)
        }
        other => Err(Outcome::Usage(format!("unknown dist check `{other}`"))),
    }
}
