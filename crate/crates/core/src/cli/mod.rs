//! Command-line front end: operator files in, CSV or JSON reports out.

mod opfile;
mod output;
mod plot;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num::BigRational;
use serde_json::json;

use crate::algebra::{
    adjoint_with, d_regularity, fredholm_index, is_formally_symmetric, r_symmetry_analysis,
    symmetric_decomposition, AdjointOptions, DiffExpr,
};
use crate::error::{Error, Result};
use crate::hardy::WeightSequence;
use crate::oracles::{
    adjoint_matrix_oracle, first_order_eigenfunction, periodic_embedding_check, FirstOrderSpec,
};
use crate::scalar::{Real, C64, CQ};
use crate::spectral::{
    asymptotic_fit, converged_spectrum_with, homotopy_track, tau_and_c1, SpectrumOptions,
};

pub use opfile::OperatorFile;
pub use output::{Cell, Meta, Report};
pub use plot::{Plot, Style};

#[derive(Parser, Debug)]
#[command(
    name = "hardy",
    version,
    about = "Differential operators on weighted Hardy spaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Formal adjoint of the operator.
    Adjoint(Common),
    /// Formal symmetry, D-regularity and R-symmetry of the leading coefficient.
    Symmetry(Common),
    /// Coefficients c_{n,r} of a formally symmetric operator.
    Decompose(Common),
    /// Fredholm index of a D-regular operator.
    Index(Common),
    /// Converged eigenvalues of the truncated matrices.
    Spectrum(Common),
    /// tau, C1, C2 and the remainder bound of the eigenvalue asymptotics.
    Asymptotics(Common),
    /// Eigenvalue paths from ±(zD)^N to the operator.
    Homotopy(Common),
    /// Hardy eigenvalues against the Fourier truncation.
    Periodic(Common),
    /// Matrix adjoint check and closed-form first-order eigenpairs.
    Oracle(Common),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug)]
struct Common {
    /// Operator file (JSON).
    file: PathBuf,
    /// Weight parameter; overrides the file. Integers, decimals or p/q.
    #[arg(long)]
    sigma: Option<String>,
    /// Number of eigenvalues.
    #[arg(long)]
    nmax: Option<usize>,
    /// Relative tolerance for converged eigenvalues.
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    /// First truncation of the spectral solver, or the matrix size for `oracle`.
    #[arg(long)]
    truncation: Option<usize>,
    /// Homotopy steps.
    #[arg(long, default_value_t = 32)]
    steps: usize,
    /// Output file (standard output by default).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Seed for randomized consistency checks.
    #[arg(long, default_value_t = 0x5eed_ad10)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Also write an SVG plot (spectrum, asymptotics, homotopy).
    #[arg(long)]
    plot: Option<PathBuf>,
}

/// Exit status for an error: 2 for input problems, 3 for operators outside
/// the supported class, 4 for numerical failures.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::Invalid(_) | Error::Io(_) | Error::DegenerateInput(_) => 2,
        Error::NotInAlgebra(_)
        | Error::NotRegular { .. }
        | Error::NotRSymmetric(_)
        | Error::SymmetryViolation { .. }
        | Error::SignChange { .. } => 3,
        Error::ConvergenceFailure { .. }
        | Error::PathAmbiguity { .. }
        | Error::InsufficientData { .. }
        | Error::Quadrature(_)
        | Error::RecurrenceBreakdown(_) => 4,
    }
}

/// Runs the tool on `argv` (including the program name) and returns the exit status.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

struct Input {
    expr: DiffExpr<CQ>,
    weights: WeightSequence<BigRational>,
    sigma_text: String,
}

fn read_expr(c: &Common) -> Result<(DiffExpr<CQ>, Option<BigRational>)> {
    let file = OperatorFile::read(&c.file)?;
    let sigma = match &c.sigma {
        Some(text) => Some(crate::scalar::parse_rational(text)?),
        None => file.sigma,
    };
    Ok((file.expr, sigma))
}

fn load(c: &Common) -> Result<Input> {
    let (expr, sigma) = read_expr(c)?;
    let sigma = sigma.ok_or_else(|| {
        Error::Invalid("no sigma given: set it in the file or pass --sigma".into())
    })?;
    let weights = WeightSequence::new(sigma.clone())?;
    Ok(Input {
        expr,
        weights,
        sigma_text: sigma.to_text(),
    })
}

fn meta(command: &str, input: &Input) -> Meta {
    Meta {
        command: command.into(),
        sigma: input.sigma_text.clone(),
        ..Meta::default()
    }
}

fn emit(c: &Common, report: &Report) -> Result<()> {
    let text = match c.format {
        Format::Csv => report.to_csv(),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report.to_json())
                .map_err(|e| Error::Invalid(format!("json output: {e}")))?;
            s.push('\n');
            s
        }
    };
    match &c.out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn write_plot(path: Option<&Path>, plot: impl FnOnce() -> Plot) -> Result<()> {
    if let Some(p) = path {
        std::fs::write(p, plot().to_svg())?;
    }
    Ok(())
}

fn complex_cells(z: C64) -> [Cell; 2] {
    [Cell::Float(z.re), Cell::Float(z.im)]
}

fn execute(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Adjoint(c) => adjoint_cmd(&c),
        Command::Symmetry(c) => symmetry_cmd(&c),
        Command::Decompose(c) => decompose_cmd(&c),
        Command::Index(c) => index_cmd(&c),
        Command::Spectrum(c) => spectrum_cmd(&c),
        Command::Asymptotics(c) => asymptotics_cmd(&c),
        Command::Homotopy(c) => homotopy_cmd(&c),
        Command::Periodic(c) => periodic_cmd(&c),
        Command::Oracle(c) => oracle_cmd(&c),
    }
}

fn adjoint_cmd(c: &Common) -> Result<()> {
    let input = load(c)?;
    let opts = AdjointOptions {
        seed: c.seed,
        ..AdjointOptions::default()
    };
    let star = adjoint_with(&input.expr, &input.weights, &opts)?;
    let mut report = Report::new(meta("adjoint", &input), vec!["k", "power", "re", "im"]);
    for (k, p) in star.coeffs().iter().enumerate() {
        for (j, z) in p.coeffs().iter().enumerate() {
            if z.re != BigRational::from_int(0) || z.im != BigRational::from_int(0) {
                report.push(vec![
                    k.into(),
                    j.into(),
                    z.re.to_text().into(),
                    z.im.to_text().into(),
                ]);
            }
        }
    }
    let file = OperatorFile {
        sigma: Some(input.weights.sigma().clone()),
        expr: star,
        labels: Some(json!({ "adjoint_of": c.file.display().to_string() })),
    };
    report.json_override = Some(file.to_json());
    emit(c, &report)
}

fn symmetry_cmd(c: &Common) -> Result<()> {
    let input = load(c)?;
    let l = &input.expr;
    let mut report = Report::new(meta("symmetry", &input), vec!["property", "value"]);
    report.push(vec![
        "formally_symmetric".into(),
        is_formally_symmetric(l, &input.weights).into(),
    ]);
    let reg = d_regularity(l)?;
    report.push(vec!["order".into(), reg.order.into()]);
    report.push(vec!["d_regular".into(), reg.is_regular.into()]);
    report.push(vec!["circle_distance".into(), reg.circle_distance.into()]);
    report.push(vec!["inner_roots".into(), reg.inner_roots.into()]);
    let lead = l
        .leading()
        .expect("nonzero expressions have a leading coefficient");
    match r_symmetry_analysis(lead, reg.order) {
        Ok(r) => {
            report.push(vec!["r_symmetric".into(), true.into()]);
            report.push(vec!["c1_re".into(), r.c1.re.into()]);
            report.push(vec!["c1_im".into(), r.c1.im.into()]);
            report.push(vec![
                "zero_root_multiplicity".into(),
                r.zero_root_multiplicity.into(),
            ]);
        }
        Err(Error::NotRSymmetric(why)) => {
            report.push(vec!["r_symmetric".into(), false.into()]);
            report.meta.extra.push(("reason".into(), why.into()));
        }
        Err(e) => return Err(e),
    }
    emit(c, &report)
}

fn decompose_cmd(c: &Common) -> Result<()> {
    let input = load(c)?;
    let dec = symmetric_decomposition(&input.expr, &input.weights)?;
    let mut report = Report::new(meta("decompose", &input), vec!["n", "r", "re", "im"]);
    for (n, r, z) in dec.terms() {
        report.push(vec![
            n.into(),
            r.into(),
            z.re.to_text().into(),
            z.im.to_text().into(),
        ]);
    }
    emit(c, &report)
}

fn index_cmd(c: &Common) -> Result<()> {
    let (expr, sigma) = read_expr(c)?;
    let index = fredholm_index(&expr)?;
    let reg = d_regularity(&expr)?;
    let m = Meta {
        command: "index".into(),
        sigma: sigma.map_or("none".into(), |s| s.to_text()),
        ..Meta::default()
    };
    let mut report = Report::new(m, vec!["index", "order", "inner_roots", "circle_distance"]);
    report.push(vec![
        index.into(),
        reg.order.into(),
        reg.inner_roots.into(),
        reg.circle_distance.into(),
    ]);
    emit(c, &report)
}

fn spectrum_options(c: &Common) -> SpectrumOptions {
    SpectrumOptions {
        initial_truncation: c.truncation,
        ..SpectrumOptions::with_tol(c.tol)
    }
}

fn spectrum_cmd(c: &Common) -> Result<()> {
    let input = load(c)?;
    let n_max = c.nmax.unwrap_or(20);
    let spec = converged_spectrum_with(&input.expr, &input.weights, n_max, &spectrum_options(c))?;
    let mut m = meta("spectrum", &input);
    m.truncations = spec.truncations_used.clone();
    m.tol = Some(c.tol);
    m.extra.push(("hermitian".into(), spec.hermitian.into()));
    let mut report = Report::new(m, vec!["n", "re", "im", "error"]);
    for (n, (z, e)) in spec.eigenvalues.iter().zip(&spec.errors).enumerate() {
        let [re, im] = complex_cells(*z);
        report.push(vec![n.into(), re, im, (*e).into()]);
    }
    write_plot(c.plot.as_deref(), || {
        let mut p = Plot::new("Eigenvalues", "n", "Re λ_n");
        let pts = spec
            .eigenvalues
            .iter()
            .enumerate()
            .map(|(n, z)| (n as f64, z.re))
            .collect();
        p.add("λ_n", pts, Style::Points);
        p
    })?;
    emit(c, &report)
}

fn asymptotics_cmd(c: &Common) -> Result<()> {
    let input = load(c)?;
    let l = &input.expr;
    let order = l.order().unwrap_or(0);
    let lead = l
        .leading()
        .ok_or_else(|| Error::DegenerateInput("the zero expression".into()))?;
    let tc = tau_and_c1(lead, order)?;
    let mut m = meta("asymptotics", &input);
    m.tol = Some(c.tol);
    let mut report = Report::new(m, vec!["quantity", "value"]);
    report.push(vec!["order".into(), order.into()]);
    report.push(vec!["tau".into(), tc.tau.into()]);
    report.push(vec!["c1".into(), tc.c1.into()]);
    report.push(vec!["c1_over_tau".into(), (tc.c1 / tc.tau).into()]);
    report.push(vec!["quadrature_error".into(), tc.quadrature_error.into()]);
    if order >= 2 {
        let n_max = c.nmax.unwrap_or(121);
        let spec = converged_spectrum_with(l, &input.weights, n_max, &spectrum_options(c))?;
        let fit = asymptotic_fit(&spec.eigenvalues, order, tc.tau, tc.c1)?;
        report.meta.truncations = spec.truncations_used.clone();
        report.push(vec!["c2_re".into(), fit.c2.re.into()]);
        report.push(vec!["c2_im".into(), fit.c2.im.into()]);
        report.push(vec!["fitted_tau".into(), fit.fitted_tau.into()]);
        report.push(vec!["remainder_bound".into(), fit.remainder_bound.into()]);
        report.push(vec![
            "remainder_exponent".into(),
            (order as f64 - 2.0 + fit.epsilon).into(),
        ]);
        report.push(vec!["fit_range_start".into(), fit.range.0.into()]);
        report.push(vec!["fit_range_end".into(), fit.range.1.into()]);
        report.push(vec!["growth_slope".into(), fit.growth_slope.into()]);
        write_plot(c.plot.as_deref(), || {
            let p_exp = order as f64 - 2.0 + fit.epsilon;
            let mut p = Plot::new("Remainder", "n", "|r_n|");
            let (a, b) = fit.range;
            p.add(
                "|r_n|",
                (a..=b)
                    .map(|n| (n as f64, fit.residuals[n].norm()))
                    .collect(),
                Style::Points,
            );
            p.add(
                "R n^(N-2+ε)",
                (a..=b)
                    .map(|n| (n as f64, fit.remainder_bound * (n as f64).powf(p_exp)))
                    .collect(),
                Style::Lines,
            );
            p
        })?;
    }
    emit(c, &report)
}

fn homotopy_cmd(c: &Common) -> Result<()> {
    let input = load(c)?;
    let n_max = c.nmax.unwrap_or(20);
    let h = homotopy_track(&input.expr, &input.weights, n_max, c.steps, c.tol)?;
    let mut m = meta("homotopy", &input);
    m.tol = Some(c.tol);
    m.extra.push(("steps".into(), c.steps.into()));
    m.extra.push(("start_error".into(), h.start_error.into()));
    m.extra.push(("end_error".into(), h.end_error.into()));
    m.extra.push(("max_imag".into(), h.max_imag.into()));
    let mut report = Report::new(m, vec!["n", "t", "re", "im"]);
    for (n, path) in h.paths.iter().enumerate() {
        for (t, z) in h.ts.iter().zip(path) {
            let [re, im] = complex_cells(*z);
            report.push(vec![n.into(), (*t).into(), re, im]);
        }
    }
    write_plot(c.plot.as_deref(), || {
        let mut p = Plot::new("Eigenvalue paths", "t", "Re λ_n(t)");
        for (n, path) in h.paths.iter().enumerate() {
            let pts = h.ts.iter().zip(path).map(|(t, z)| (*t, z.re)).collect();
            p.add(&format!("n={n}"), pts, Style::Lines);
        }
        p
    })?;
    emit(c, &report)
}

fn periodic_cmd(c: &Common) -> Result<()> {
    let input = load(c)?;
    let n_max = c.nmax.unwrap_or(16);
    let tol = c.tol.max(1e-6);
    let r = periodic_embedding_check(&input.expr, &input.weights, n_max, tol)?;
    let mut m = meta("periodic", &input);
    m.truncations = r.hardy.truncations_used.clone();
    m.tol = Some(tol);
    m.extra.push(("max_mode".into(), r.max_mode.into()));
    m.extra.push(("contained".into(), r.contained().into()));
    let mut report = Report::new(
        m,
        vec![
            "n",
            "hardy_re",
            "hardy_im",
            "fourier_re",
            "fourier_im",
            "distance",
        ],
    );
    for (n, ((z, mu), d)) in r
        .hardy
        .eigenvalues
        .iter()
        .zip(&r.nearest)
        .zip(&r.distances)
        .enumerate()
    {
        let [a, b] = complex_cells(*z);
        let [x, y] = complex_cells(*mu);
        report.push(vec![n.into(), a, b, x, y, (*d).into()]);
    }
    emit(c, &report)
}

fn oracle_cmd(c: &Common) -> Result<()> {
    let input = load(c)?;
    let size = c.truncation.unwrap_or(32);
    let adj = adjoint_matrix_oracle(&input.expr, &input.weights, size)?;
    let mut m = meta("oracle", &input);
    m.truncations = vec![size];
    m.tol = Some(c.tol);
    m.extra
        .push(("adjoint_matrix_defect".into(), adj.max_defect.into()));
    m.extra
        .push(("adjoint_matrix_exact".into(), adj.exact.into()));
    let sigma = input.weights.sigma().to_f64();
    let mut report = Report::new(
        m,
        vec![
            "n",
            "closed_re",
            "closed_im",
            "computed_re",
            "computed_im",
            "eigenfunction_residual",
        ],
    );
    match FirstOrderSpec::from_expression(&input.expr, sigma) {
        Some(spec) => {
            let n_max = c.nmax.unwrap_or(10);
            let wf = input.weights.to_floating();
            let computed =
                converged_spectrum_with(&input.expr, &input.weights, n_max, &spectrum_options(c))?;
            report.meta.truncations = computed.truncations_used.clone();
            for (n, z) in computed.eigenvalues.iter().enumerate() {
                let ef = first_order_eigenfunction(&spec, n, 200, &wf)?;
                let [a, b] = complex_cells(spec.eigenvalue(n));
                let [x, y] = complex_cells(*z);
                report.push(vec![
                    n.into(),
                    a,
                    b,
                    x,
                    y,
                    ef.residual.unwrap_or(0.0).into(),
                ]);
            }
        }
        None => report
            .meta
            .extra
            .push(("closed_form".into(), "unavailable".into())),
    }
    emit(c, &report)
}
