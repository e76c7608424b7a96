use num_complex::Complex64;
use quasifourier::cutproject::{enumerate_model_set, frequency_representatives, FrequencySet, Window};
use quasifourier::discretize::{
    cell_sample_average, data_points, error_estimate, path_decomposition, DataPointSet,
    PathDecomposition, PathMode,
};
use quasifourier::fibonacci::{
    half_shift, torus_lift_for, FibonacciFunction, FunctionKind, LocalFunction, Sampler,
    TorusFunction,
};
use quasifourier::fourier::{
    coeff_exact, coeff_integral_pieces, coeff_sum_values, cos_baseline, sample_data, sup_error,
    Approximant, ApproximantKind, Coefficient, CosineApproximant, RealFunction,
};
use quasifourier::ztau::TAU;
use quasifourier::Frequency;
use rayon::prelude::*;
use serde::Serialize;

use crate::args::{Command, Common, Estimator, FunctionArg, Grid};
use crate::output::{num, Table};
use crate::CliError;

/// Everything that determines an output file, echoed in its header.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub n: u32,
    pub path: String,
    pub effective_r: f64,
    pub segments: usize,
    pub int_range: f64,
    pub function: FunctionArg,
    pub window: String,
    pub cosine_n: usize,
    pub cosine_dc_halved: bool,
    pub grid: Grid,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lo: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hi: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub estimator: Option<Estimator>,
}

/// The x values of the reference value tables, with their labels.
pub const TABLE_POINTS: [(&str, f64); 15] = [
    ("-100", -100.0),
    ("-50", -50.0),
    ("-15", -15.0),
    ("-3-5τ", -3.0 - 5.0 * TAU),
    ("0", 0.0),
    ("τ", TAU),
    ("0.25+τ", 0.25 + TAU),
    ("0.5+τ", 0.5 + TAU),
    ("1+τ", 1.0 + TAU),
    ("1+1.25τ", 1.0 + 1.25 * TAU),
    ("1+2.5τ", 1.0 + 2.5 * TAU),
    ("1+2.75τ", 1.0 + 2.75 * TAU),
    ("50", 50.0),
    ("100", 100.0),
    ("500", 500.0),
];

/// Sup-error windows reported by `compare`.
pub const SUMMARY_WINDOWS: [(f64, f64); 3] = [(0.0, 15.0), (200.0, 215.0), (-115.0, -100.0)];

fn describe(mode: PathMode) -> String {
    match mode {
        PathMode::Passes(m) => format!("passes {m}"),
        PathMode::Range(r) => format!("range {r}"),
        PathMode::Wraps(m) => format!("wraps {m}"),
    }
}

fn command_name(command: &Command) -> &'static str {
    match command {
        Command::Points { .. } => "points",
        Command::DataPoints => "data-points",
        Command::Frequencies => "frequencies",
        Command::Coeffs { .. } => "coeffs",
        Command::Table1 => "table1",
        Command::Table2 => "table2",
        Command::Table3 => "table3",
        Command::Table4 => "table4",
        Command::Compare { .. } => "compare",
        Command::Singularity => "singularity",
        Command::ErrorBound => "error-bound",
    }
}

/// Shared inputs of the analysis commands.
pub struct Context {
    pub config: RunConfig,
    pub window: Window,
    pub kind: FunctionKind,
    pub freqs: FrequencySet,
    pub path: PathDecomposition,
    pub data: DataPointSet,
}

impl Context {
    pub fn new(command: &Command, common: &Common) -> Result<Self, CliError> {
        if let Some(r) = common.int_range {
            if !(r > 0.0 && r.is_finite()) {
                return Err(CliError::Usage("--int-range must be positive".into()));
            }
        }
        let mode = common.path_mode();
        let path = path_decomposition(mode)?;
        let freqs = frequency_representatives(common.n)?;
        let data = data_points(common.n, &path)?;
        let function = match command {
            Command::Table1 | Command::Table2 => FunctionArg::Nearest,
            Command::Table3 | Command::Table4 => FunctionArg::Interval,
            _ => common.function,
        };
        let (lo, hi) = match command {
            Command::Points { lo, hi } => (Some(*lo), Some(*hi)),
            _ => (None, None),
        };
        let estimator = match command {
            Command::Coeffs { estimator } => Some(*estimator),
            _ => None,
        };
        Ok(Context {
            config: RunConfig {
                command: command_name(command).into(),
                n: common.n,
                path: describe(mode),
                effective_r: path.r,
                segments: path.m(),
                int_range: common.int_range.unwrap_or(path.r),
                function,
                window: common.window.text.clone(),
                cosine_n: common.cosine_n,
                cosine_dc_halved: common.cosine_dc_halved,
                grid: common.grid,
                lo,
                hi,
                estimator,
            },
            window: common.window.window,
            kind: function.kind(),
            freqs,
            path,
            data,
        })
    }

    fn function(&self) -> FibonacciFunction {
        FibonacciFunction::new(self.kind, self.window)
    }

    fn lift(&self) -> Result<TorusFunction, CliError> {
        Ok(torus_lift_for(self.kind, &self.window)?)
    }

    fn coefficients(&self, estimator: ApproximantKind) -> Result<Approximant, CliError> {
        let f = self.function();
        let values: Vec<Complex64> = match estimator {
            ApproximantKind::Exact => {
                let lift = self.lift()?;
                self.freqs.reps.par_iter().map(|&k| coeff_exact(k, &lift)).collect()
            }
            ApproximantKind::Integral => {
                let r = self.config.int_range;
                let pieces = f.pieces(0.0, r)?;
                self.freqs
                    .reps
                    .par_iter()
                    .map(|&k| coeff_integral_pieces(k, &pieces, r))
                    .collect()
            }
            ApproximantKind::Sum => {
                let samples = sample_data(&f, &self.data)?;
                self.freqs
                    .reps
                    .par_iter()
                    .map(|&k| coeff_sum_values(k, &self.data, &samples))
                    .collect::<Result<_, _>>()?
            }
        };
        Ok(Approximant::new(
            estimator,
            self.freqs
                .reps
                .iter()
                .zip(values)
                .map(|(&k, value)| Coefficient { k, value })
                .collect(),
        ))
    }

    fn cosine(&self) -> Result<CosineApproximant, CliError> {
        Ok(cos_baseline(&self.function(), self.config.cosine_n, self.config.cosine_dc_halved)?)
    }

    fn sampler(&self, lo: f64, hi: f64) -> Result<Sampler, CliError> {
        Ok(self.function().sampler(lo - 1.0, hi + 1.0)?)
    }
}

const ESTIMATORS: [ApproximantKind; 3] = [
    ApproximantKind::Exact,
    ApproximantKind::Integral,
    ApproximantKind::Sum,
];

pub fn points(ctx: &Context, lo: f64, hi: f64) -> Result<Table, CliError> {
    let slice = enumerate_model_set(&ctx.window, lo, hi)?;
    let mut table = Table::new(&["a", "b", "x", "x_star", "tile"]);
    for p in &slice.points {
        table.push(vec![
            p.algebraic.a.to_string(),
            p.algebraic.b.to_string(),
            num(p.value),
            num(p.algebraic.conj_value()),
            p.tile.to_string(),
        ]);
    }
    Ok(table)
}

pub fn data_points_table(ctx: &Context) -> Table {
    let n = ctx.config.n as f64;
    let mut table = Table::new(&["j", "u", "s_a", "s_b", "t_a", "t_b", "internal_residual"]);
    for (j, p) in ctx.data.points.iter().enumerate() {
        table.push(vec![
            j.to_string(),
            num(p.value),
            num(p.i as f64 / n),
            num(p.j as f64 / n),
            p.translate.a.to_string(),
            p.translate.b.to_string(),
            num(p.residual),
        ]);
    }
    table
}

pub fn frequencies(ctx: &Context) -> Table {
    let mut table = Table::new(&["half_a", "half_b", "k", "k_value", "k_conj"]);
    for k in &ctx.freqs.reps {
        table.push(vec![
            k.half_a.to_string(),
            k.half_b.to_string(),
            k.to_string(),
            num(k.value()),
            num(k.conj_value()),
        ]);
    }
    table
}

pub fn coeffs(ctx: &Context, estimator: Estimator) -> Result<Table, CliError> {
    let kinds: Vec<ApproximantKind> = match estimator {
        Estimator::Exact => vec![ApproximantKind::Exact],
        Estimator::Integral => vec![ApproximantKind::Integral],
        Estimator::Sum => vec![ApproximantKind::Sum],
        Estimator::All => ESTIMATORS.to_vec(),
    };
    let mut table = Table::new(&["half_a", "half_b", "k_value", "re", "im", "estimator"]);
    for kind in kinds {
        for c in ctx.coefficients(kind)?.coeffs {
            table.push(vec![
                c.k.half_a.to_string(),
                c.k.half_b.to_string(),
                num(c.k.value()),
                num(c.value.re),
                num(c.value.im),
                kind.name().into(),
            ]);
        }
    }
    Ok(table)
}

/// Exact, integral and sum coefficients side by side.
pub fn coefficient_table(ctx: &Context) -> Result<Table, CliError> {
    let columns: Vec<Approximant> = ESTIMATORS
        .iter()
        .map(|&kind| ctx.coefficients(kind))
        .collect::<Result<_, _>>()?;
    let mut table = Table::new(&[
        "k", "half_a", "half_b", "exact_re", "exact_im", "int_re", "int_im", "sum_re", "sum_im",
    ]);
    for (i, k) in ctx.freqs.reps.iter().enumerate() {
        let mut row = vec![k.to_string(), k.half_a.to_string(), k.half_b.to_string()];
        for ap in &columns {
            row.push(num(ap.coeffs[i].value.re));
            row.push(num(ap.coeffs[i].value.im));
        }
        table.push(row);
    }
    Ok(table)
}

struct Approximants {
    exact: Approximant,
    integral: Approximant,
    sum: Approximant,
    cosine: CosineApproximant,
}

impl Approximants {
    fn build(ctx: &Context) -> Result<Self, CliError> {
        Ok(Approximants {
            exact: ctx.coefficients(ApproximantKind::Exact)?,
            integral: ctx.coefficients(ApproximantKind::Integral)?,
            sum: ctx.coefficients(ApproximantKind::Sum)?,
            cosine: ctx.cosine()?,
        })
    }

    fn named(&self) -> [(&'static str, &(dyn RealFunction + Sync)); 4] {
        [
            ("f_exact", &self.exact),
            ("f_int", &self.integral),
            ("f_sum", &self.sum),
            ("f_cos", &self.cosine),
        ]
    }

    fn row(&self, f: &Sampler, x: f64) -> Result<Vec<String>, CliError> {
        let mut row = vec![num(f.value(x)?)];
        for (_, ap) in self.named() {
            row.push(num(ap.eval(x)?));
        }
        Ok(row)
    }
}

/// Function and approximant values at the tabulated points.
pub fn value_table(ctx: &Context) -> Result<Table, CliError> {
    let aps = Approximants::build(ctx)?;
    let f = ctx.sampler(-110.0, 510.0)?;
    let mut table = Table::new(&["x_label", "x", "f", "f_exact", "f_int", "f_sum", "f_cos"]);
    for (label, x) in TABLE_POINTS {
        let mut row = vec![label.to_string(), num(x)];
        row.extend(aps.row(&f, x)?);
        table.push(row);
    }
    Ok(table)
}

/// Grid values and the sup-error summary.
pub fn compare(ctx: &Context) -> Result<(Table, Table), CliError> {
    let aps = Approximants::build(ctx)?;
    let grid = ctx.config.grid;
    let f = ctx.sampler(grid.lo, grid.hi)?;
    let rows: Vec<Vec<String>> = grid
        .points()
        .par_iter()
        .map(|&x| {
            let mut row = vec![num(x)];
            row.extend(aps.row(&f, x)?);
            Ok(row)
        })
        .collect::<Result<_, CliError>>()?;
    let mut table = Table::new(&["x", "f", "f_exact", "f_int", "f_sum", "f_cos"]);
    for row in rows {
        table.push(row);
    }
    let mut summary = Table::new(&["approximant", "lo", "hi", "sup_error"]);
    for (lo, hi) in SUMMARY_WINDOWS {
        let f = ctx.sampler(lo, hi)?;
        for (name, ap) in aps.named() {
            let err = sup_error(ap, &f, lo, hi, 3001)?;
            summary.push(vec![name.into(), num(lo), num(hi), num(err)]);
        }
    }
    Ok((table, summary))
}

/// Sum and exact approximant errors on `[-τ², 0]` for the default and shifted windows.
pub fn singularity(ctx: &Context) -> Result<(Table, Vec<String>), CliError> {
    let shifted = Window::fibonacci().shifted(&half_shift())?;
    let mut table = Table::new(&["window", "data_points", "sup_error_sum", "sup_error_exact"]);
    for (name, window) in [("default", Window::fibonacci()), ("shifted", shifted)] {
        let f = FibonacciFunction::new(ctx.kind, window);
        let samples = sample_data(&f, &ctx.data)?;
        let sum = Approximant::new(
            ApproximantKind::Sum,
            ctx.freqs
                .reps
                .iter()
                .map(|&k| {
                    Ok(Coefficient {
                        k,
                        value: coeff_sum_values(k, &ctx.data, &samples)?,
                    })
                })
                .collect::<Result<_, quasifourier::Error>>()?,
        );
        let lift = torus_lift_for(ctx.kind, &window)?;
        let exact = Approximant::new(
            ApproximantKind::Exact,
            ctx.freqs
                .reps
                .iter()
                .map(|&k| Coefficient {
                    k,
                    value: coeff_exact(k, &lift),
                })
                .collect(),
        );
        let (lo, hi) = (-TAU * TAU, 0.0);
        table.push(vec![
            name.into(),
            ctx.data.len().to_string(),
            num(sup_error(&sum, &f, lo, hi, 2001)?),
            num(sup_error(&exact, &f, lo, hi, 2001)?),
        ]);
    }
    let closed = Window::fibonacci().with_inclusions(false, true);
    let a = enumerate_model_set(&Window::fibonacci(), -10.0, 10.0)?.algebraic();
    let b = enumerate_model_set(&closed, -10.0, 10.0)?.algebraic();
    let mut notes = Vec::new();
    for p in a.iter().filter(|p| !b.contains(p)) {
        notes.push(format!("only in Λ([-1, 1/τ)): {p}"));
    }
    for p in b.iter().filter(|p| !a.contains(p)) {
        notes.push(format!("only in Λ((-1, 1/τ]): {p}"));
    }
    Ok((table, notes))
}

pub fn error_bound(ctx: &Context) -> Result<Table, CliError> {
    let lift = ctx.lift()?;
    let est = error_estimate(&lift, ctx.config.n, &ctx.path)?;
    let f = ctx.function();
    let values = sample_data(&f, &ctx.data)?;
    let data_average = values.iter().sum::<f64>() / values.len() as f64;
    let mut table = Table::new(&[
        "n",
        "segments",
        "eps_n",
        "cell_oscillation",
        "eps_n_prime",
        "bound",
        "torus_mean",
        "cell_average",
        "data_average",
    ]);
    table.push(vec![
        ctx.config.n.to_string(),
        ctx.path.m().to_string(),
        num(est.eps_n),
        num(est.cell_oscillation),
        num(est.eps_n_prime),
        num(est.bound),
        num(coeff_exact(Frequency::ZERO, &lift).re),
        num(cell_sample_average(&lift, ctx.config.n)?),
        num(data_average),
    ]);
    Ok(table)
}
