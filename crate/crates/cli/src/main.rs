//! Scenario-driven front end. Every command reads one optional TOML
//! scenario, computes through the library, and emits a table, CSV or JSON
//! report; `repro` additionally writes repro.csv and repro.json next to
//! each other so the machine artifacts always exist in both formats.
//!
//! Exit codes: 0 success, 1 invalid input or scenario parse failure,
//! 2 quadrature non-convergence, 3 violated internal identity.

mod output;
mod scenario;

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use ncphase_core::bounds::{bound_comparison_table, theta_limit, BoundResult, BoundRow};
use ncphase_core::constants::HBAR;
use ncphase_core::dipole::{
    canonical_suite, non_null_control, nullity_report, NullityReport, Verdict, NULLITY_TOLERANCE,
};
use ncphase_core::nc::{bopp_shift, star_commutator, star_product_first_order, ThetaMatrix};
use ncphase_core::phase::{
    closed_vs_quadrature, phase_breakdown, ComparisonReport, PhaseBreakdown,
};
use ncphase_core::quadrature::QuadOptions;
use ncphase_core::{Error as CoreError, Vec3};
use serde::Serialize;

use crate::output::{fmt_ratio, render_csv, render_table, scenario_rows, to_json, Row};
use crate::scenario::Scenario;

#[derive(Parser)]
#[command(
    name = "ncphase",
    version,
    about = "Interferometric phases on noncommutative space: benchmark \
             reproduction, experimental bounds, and dipole nullity checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Scenario file (TOML); omitted means the benchmark configuration.
    #[arg(long, global = true, value_name = "FILE")]
    scenario: Option<PathBuf>,

    /// Stdout format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    /// Suppress the generated-at line in every stream and file.
    #[arg(long, global = true)]
    no_timestamp: bool,

    /// Relative tolerance for the adaptive quadratures.
    #[arg(long, global = true, value_name = "REL_TOL")]
    tol: Option<f64>,

    /// Directory receiving the files written by repro.
    #[arg(long, global = true, value_name = "DIR", default_value = ".")]
    out: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Full benchmark reproduction; also writes repro.csv and repro.json.
    Repro,
    /// Phase breakdown for the scenario.
    Phase,
    /// Noncommutativity bound implied by the scenario.
    Bound,
    /// Nullity reports for the dipole configurations plus a non-null
    /// control.
    Nullity,
    /// Star-product and Bopp-shift identity checks; exits 3 on violation.
    StarCheck,
    /// Closed form against direct quadrature, term by term.
    Verify,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Csv,
    Json,
}

struct Failure {
    code: i32,
    message: String,
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        let code = match e {
            CoreError::Convergence { .. } => 2,
            CoreError::Domain { .. } | CoreError::Invalid { .. } => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version print to stdout and exit 0; real argument
            // errors belong to the validation exit code.
            let code = i32::from(e.use_stderr());
            let _ = e.print();
            std::process::exit(code);
        }
    };
    if let Err(failure) = run(cli) {
        eprintln!("error: {}", failure.message);
        std::process::exit(failure.code);
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let scenario = scenario::load(cli.scenario.as_deref())?;
    let opts = match cli.tol {
        Some(tol) => QuadOptions::with_rel_tol(tol),
        None => QuadOptions::default(),
    };
    opts.validate()?;
    let stamp = (!cli.no_timestamp && scenario.timestamp)
        .then(|| chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true));
    let stamp = stamp.as_deref();

    match cli.command {
        Command::Repro => repro(&scenario, &opts, stamp, cli.format, &cli.out),
        Command::Phase => phase(&scenario, &opts, stamp, cli.format),
        Command::Bound => bound(&scenario, stamp, cli.format),
        Command::Nullity => nullity(&scenario, &opts, stamp, cli.format),
        Command::StarCheck => star_check(&scenario, stamp, cli.format),
        Command::Verify => verify(&scenario, &opts, stamp, cli.format),
    }
}

fn emit(rows: &[Row], json: &str, format: Format, stamp: Option<&str>) {
    match format {
        Format::Table => print!("{}", render_table(rows, stamp)),
        Format::Csv => print!("{}", render_csv(rows, stamp)),
        Format::Json => println!("{json}"),
    }
}

#[derive(Serialize)]
struct ReproResult {
    breakdown: PhaseBreakdown<f64>,
    bound: BoundResult<f64>,
    comparison: ComparisonReport<f64>,
    published_limits: Vec<BoundRow<f64>>,
}

fn repro(
    scenario: &Scenario,
    opts: &QuadOptions<f64>,
    stamp: Option<&str>,
    format: Format,
    out_dir: &Path,
) -> Result<(), Failure> {
    let breakdown = phase_breakdown(&scenario.params, opts)?;
    let bound = theta_limit(&scenario.params)?;
    let comparison = closed_vs_quadrature(&scenario.params, opts)?;
    let published = bound_comparison_table::<f64>()?;

    let mut rows = scenario_rows(&scenario.params, scenario.theta_source.tag());
    rows.extend(breakdown_rows(&breakdown));
    rows.extend(bound_rows(&bound));
    rows.extend(comparison_rows(&comparison));
    rows.extend(published_rows(&published));

    let json = to_json(
        "repro",
        stamp,
        &scenario.params,
        scenario.theta_source.tag(),
        ReproResult {
            breakdown,
            bound,
            comparison: comparison.clone(),
            published_limits: published,
        },
    );

    fs::create_dir_all(out_dir).map_err(|e| Failure {
        code: 1,
        message: format!("cannot create {}: {e}", out_dir.display()),
    })?;
    let write = |name: &str, bytes: &str| -> Result<(), Failure> {
        let path = out_dir.join(name);
        fs::write(&path, bytes).map_err(|e| Failure {
            code: 1,
            message: format!("cannot write {}: {e}", path.display()),
        })
    };
    write("repro.csv", &render_csv(&rows, stamp))?;
    write("repro.json", &format!("{json}\n"))?;

    emit(&rows, &json, format, stamp);
    Ok(())
}

fn phase(
    scenario: &Scenario,
    opts: &QuadOptions<f64>,
    stamp: Option<&str>,
    format: Format,
) -> Result<(), Failure> {
    let breakdown = phase_breakdown(&scenario.params, opts)?;
    let mut rows = scenario_rows(&scenario.params, scenario.theta_source.tag());
    rows.extend(breakdown_rows(&breakdown));
    let json = to_json(
        "phase",
        stamp,
        &scenario.params,
        scenario.theta_source.tag(),
        breakdown,
    );
    emit(&rows, &json, format, stamp);
    Ok(())
}

fn bound(scenario: &Scenario, stamp: Option<&str>, format: Format) -> Result<(), Failure> {
    let result = theta_limit(&scenario.params)?;
    let mut rows = scenario_rows(&scenario.params, scenario.theta_source.tag());
    rows.extend(bound_rows(&result));
    let json = to_json(
        "bound",
        stamp,
        &scenario.params,
        scenario.theta_source.tag(),
        result,
    );
    emit(&rows, &json, format, stamp);
    Ok(())
}

#[derive(Serialize)]
struct NullityResult {
    tolerance: f64,
    reports: Vec<NullityReport<f64>>,
}

fn nullity(
    scenario: &Scenario,
    opts: &QuadOptions<f64>,
    stamp: Option<&str>,
    format: Format,
) -> Result<(), Failure> {
    let theta = scenario.params.theta_matrix();
    let mut reports = Vec::new();
    for entry in canonical_suite::<f64>() {
        reports.push(nullity_report(
            entry.name,
            &entry.config,
            &theta,
            NULLITY_TOLERANCE,
            opts,
        )?);
    }
    let control = non_null_control::<f64>();
    reports.push(nullity_report(
        control.name,
        &control.config,
        &theta,
        NULLITY_TOLERANCE,
        opts,
    )?);

    let mut rows = scenario_rows(&scenario.params, scenario.theta_source.tag());
    for report in &reports {
        rows.extend(nullity_rows(report));
    }
    let json = to_json(
        "nullity",
        stamp,
        &scenario.params,
        scenario.theta_source.tag(),
        NullityResult {
            tolerance: NULLITY_TOLERANCE,
            reports,
        },
    );
    emit(&rows, &json, format, stamp);
    Ok(())
}

#[derive(Serialize)]
struct IdentityCheck {
    name: &'static str,
    residual: f64,
    threshold: f64,
    pass: bool,
}

#[derive(Serialize)]
struct StarCheckResult {
    checks: Vec<IdentityCheck>,
}

fn star_check(scenario: &Scenario, stamp: Option<&str>, format: Format) -> Result<(), Failure> {
    let checks = star_checks(scenario.params.theta())?;

    let mut rows = scenario_rows(&scenario.params, scenario.theta_source.tag());
    for check in &checks {
        rows.push(Row::number(check.name, "residual", check.residual, ""));
        rows.push(Row::number(check.name, "threshold", check.threshold, ""));
        rows.push(Row::text(
            check.name,
            "status",
            if check.pass { "pass" } else { "fail" },
        ));
    }
    let failed: Vec<&str> = checks
        .iter()
        .filter(|c| !c.pass)
        .map(|c| c.name)
        .collect();

    let json = to_json(
        "star-check",
        stamp,
        &scenario.params,
        scenario.theta_source.tag(),
        StarCheckResult { checks },
    );
    emit(&rows, &json, format, stamp);

    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure {
            code: 3,
            message: format!("star identities violated: {}", failed.join(", ")),
        })
    }
}

/// The identity suite at one representative point. Thresholds of zero mark
/// identities the construction makes exact in floating point; the rest
/// tolerate finite-difference roundoff.
fn star_checks(theta_value: f64) -> Result<Vec<IdentityCheck>, CoreError> {
    let theta = ThetaMatrix::xy(theta_value)?;
    let p = Vec3::new(0.7, -1.3, 2.1);
    let check = |name: &'static str, residual: f64, threshold: f64| IdentityCheck {
        name,
        residual,
        threshold,
        pass: residual <= threshold,
    };
    let mut checks = Vec::new();

    let c = star_commutator(&|q: Vec3<f64>| q.x, &|q: Vec3<f64>| q.y, p, &theta)?;
    checks.push(check(
        "coordinate-commutator",
        (c.im - theta_value).abs() + c.re.abs(),
        0.0,
    ));

    let f = |q: Vec3<f64>| q.x * q.y - q.z;
    let g = |q: Vec3<f64>| q.x + 2.0 * q.z * q.y;
    let ab = star_commutator(&f, &g, p, &theta)?;
    let ba = star_commutator(&g, &f, p, &theta)?;
    checks.push(check(
        "commutator-antisymmetry",
        (ab.im + ba.im).abs() + (ab.re + ba.re).abs(),
        0.0,
    ));

    let position = Vec3::new(0.3, -1.2, 2.0);
    let momentum = Vec3::new(5.0e-25, -3.0e-25, 1.0e-25);
    checks.push(check(
        "bopp-zero-theta",
        (bopp_shift(position, momentum, &ThetaMatrix::zero(), HBAR)? - position).norm(),
        0.0,
    ));
    checks.push(check(
        "bopp-zero-momentum",
        (bopp_shift(position, Vec3::zero(), &theta, HBAR)? - position).norm(),
        0.0,
    ));

    let square = star_product_first_order(&f, &f, p, &theta)?;
    checks.push(check(
        "real-star-square",
        square.im.abs() + (square.re - f(p) * f(p)).abs(),
        0.0,
    ));

    let quadratic = star_commutator(&|q: Vec3<f64>| q.x * q.x, &|q: Vec3<f64>| q.y, p, &theta)?;
    let expected = 2.0 * p.x * theta_value;
    checks.push(check(
        "quadratic-commutator",
        (quadratic.im - expected).abs(),
        expected.abs() * 1e-8,
    ));

    Ok(checks)
}

fn verify(
    scenario: &Scenario,
    opts: &QuadOptions<f64>,
    stamp: Option<&str>,
    format: Format,
) -> Result<(), Failure> {
    let comparison = closed_vs_quadrature(&scenario.params, opts)?;
    let mut rows = scenario_rows(&scenario.params, scenario.theta_source.tag());
    rows.extend(comparison_rows(&comparison));
    let json = to_json(
        "verify",
        stamp,
        &scenario.params,
        scenario.theta_source.tag(),
        comparison,
    );
    emit(&rows, &json, format, stamp);
    Ok(())
}

fn breakdown_rows(b: &PhaseBreakdown<f64>) -> Vec<Row> {
    vec![
        Row::number("phase", "flux", b.flux, "T m^2"),
        Row::number("phase", "flux-ratio", b.flux_ratio, ""),
        Row::number("phase", "commutative", b.commutative, "rad"),
        Row::number("phase", "nc-closed", b.nc_closed, "rad"),
        Row::number("phase", "nc-quadrature", b.nc_quadrature, "rad"),
        Row::number("phase", "closed-prefactor", b.prefactor, "m^2"),
        Row::number("bracket", "geometric-arctan", b.bracket.geometric_arctan, "m^-2"),
        Row::number(
            "bracket",
            "geometric-rational",
            b.bracket.geometric_rational,
            "m^-2",
        ),
        Row::number("bracket", "kinetic", b.bracket.kinetic, "m^-2"),
        Row::number("bracket", "sum", b.bracket.sum(), "m^-2"),
    ]
}

fn bound_rows(b: &BoundResult<f64>) -> Vec<Row> {
    vec![
        Row::text("bound", "mode", format!("{:?}", b.mode)),
        Row::number("bound", "theta", b.theta_m2, "m^2"),
        Row::number("bound", "sqrt-theta", b.sqrt_theta_m, "m"),
        Row::number("bound", "sqrt-theta-inverse", b.sqrt_theta_inv_gev, "GeV^-1"),
        Row::number("bound", "energy-scale", b.energy_scale_tev, "TeV"),
        Row::number("bound", "phase-at-bound", b.phase_at_bound, "rad"),
        Row::number(
            "bound",
            "first-term-phase-at-bound",
            b.first_term_phase_at_bound,
            "rad",
        ),
    ]
}

fn comparison_unit(name: &str) -> &'static str {
    match name {
        "geometric-bracket" => "m^-2",
        "kinetic-geometry" => "m^-1",
        _ => "rad",
    }
}

fn comparison_rows(c: &ComparisonReport<f64>) -> Vec<Row> {
    let mut rows = Vec::new();
    for row in &c.rows {
        let unit = comparison_unit(row.name);
        rows.push(Row::number(row.name, "closed", row.closed, unit));
        rows.push(Row::number(row.name, "quadrature", row.quadrature, unit));
        rows.push(Row::new(row.name, "ratio", fmt_ratio(row.ratio), ""));
        rows.push(Row::text(row.name, "note", row.note));
    }
    rows.push(Row::text("verify", "evaluations", c.evaluations.to_string()));
    rows
}

fn nullity_rows(report: &NullityReport<f64>) -> Vec<Row> {
    let name = report.name.as_str();
    let verdict = match report.verdict {
        Verdict::Null => "null",
        Verdict::NotNull => "not-null",
    };
    vec![
        Row::text(name, "kind", format!("{:?}", report.kind)),
        Row::text(name, "verdict", verdict),
        Row::number(name, "interaction-scale", report.interaction_scale, ""),
        Row::number(
            name,
            "max-scaled-divergence",
            report.max_scaled_divergence,
            "",
        ),
        Row::number(
            name,
            "scaled-velocity-integral",
            report.scaled_velocity_integral,
            "",
        ),
        Row::number(
            name,
            "scaled-quadratic-integral",
            report.scaled_quadratic_integral,
            "",
        ),
        Row::number(
            name,
            "velocity-term",
            report.terms.divergence_reading.velocity_term,
            "rad",
        ),
        Row::number(
            name,
            "quadratic-term",
            report.terms.divergence_reading.quadratic_term,
            "rad",
        ),
        Row::number(
            name,
            "gradient-velocity-term",
            report.terms.gradient_reading.velocity_term,
            "rad",
        ),
        Row::number(
            name,
            "gradient-quadratic-term",
            report.terms.gradient_reading.quadratic_term,
            "rad",
        ),
    ]
}

fn published_rows(rows: &[BoundRow<f64>]) -> Vec<Row> {
    let mut out = Vec::new();
    for row in rows {
        let section = format!("limit-{}", row.scenario);
        out.push(Row::number(
            section.clone(),
            "sqrt-theta-inverse",
            row.sqrt_theta_inv_gev,
            "GeV^-1",
        ));
        out.push(Row::number(
            section.clone(),
            "sqrt-theta",
            row.sqrt_theta_m,
            "m",
        ));
        out.push(Row::number(
            section,
            "ratio-to-open-path",
            row.ratio_to_open_path,
            "",
        ));
    }
    out
}
