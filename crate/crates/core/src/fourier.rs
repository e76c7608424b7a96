//! Fourier-Bohr coefficients and the approximants built from them.
//!
//! For a frequency `k ∈ ½Z[τ]` the character is `x ↦ exp(2πi·2δkx)`. Three
//! estimators are provided: the exact torus integral of a lift, the mean of
//! `f·conj(character)` over `[0, R]`, and the discrete sum over data points.

use alloc::vec::Vec;
#[cfg(not(feature = "std"))]
use num_traits::Float;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::cutproject::{Frequency, FrequencySet};
use crate::discretize::DataPointSet;
use crate::error::{Error, Result};
use crate::fibonacci::{LinearPiece, LocalFunction, TorusFunction};
use crate::ztau::{FIBONACCI, SQRT5};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Coefficient {
    pub k: Frequency,
    pub value: Complex64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ApproximantKind {
    Exact,
    Integral,
    Sum,
}

impl ApproximantKind {
    pub fn name(self) -> &'static str {
        match self {
            ApproximantKind::Exact => "exact",
            ApproximantKind::Integral => "integral",
            ApproximantKind::Sum => "sum",
        }
    }
}

/// A real function of one variable; implemented by approximants and test functions.
pub trait RealFunction {
    fn eval(&self, x: f64) -> Result<f64>;
}

impl<T: LocalFunction + ?Sized> RealFunction for T {
    fn eval(&self, x: f64) -> Result<f64> {
        self.value(x)
    }
}

/// A trigonometric polynomial `Σ a_k exp(2πi·2δkx)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Approximant {
    pub kind: ApproximantKind,
    pub coeffs: Vec<Coefficient>,
}

impl Approximant {
    pub fn new(kind: ApproximantKind, coeffs: Vec<Coefficient>) -> Self {
        Approximant { kind, coeffs }
    }

    pub fn evaluate_complex(&self, x: f64) -> Complex64 {
        self.coeffs
            .iter()
            .map(|c| c.value * character(c.k, x))
            .sum()
    }

    /// Real part of the trigonometric sum.
    pub fn evaluate(&self, x: f64) -> f64 {
        self.evaluate_complex(x).re
    }

    pub fn coefficient(&self, k: Frequency) -> Option<Complex64> {
        self.coeffs.iter().find(|c| c.k == k).map(|c| c.value)
    }
}

impl RealFunction for Approximant {
    fn eval(&self, x: f64) -> Result<f64> {
        Ok(self.evaluate(x))
    }
}

/// `exp(2πi·phase(k, x))`.
pub fn character(k: Frequency, x: f64) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * fractional(k.phase(x)))
}

// Reducing the phase mod 1 first keeps the argument of sin/cos small.
fn fractional(p: f64) -> f64 {
    p - p.round()
}

/// `∫_0^1 e^{izr} dr`.
fn e0(z: f64) -> Complex64 {
    if z.abs() < 1e-2 {
        // Σ (iz)^n / (n+1)!
        let iz = Complex64::new(0.0, z);
        let (mut term, mut sum) = (Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0));
        for n in 1..10 {
            term = term * iz / (n as f64 + 1.0);
            sum += term;
        }
        sum
    } else {
        let iz = Complex64::new(0.0, z);
        (iz.exp() - 1.0) / iz
    }
}

/// `∫_0^1 r e^{izr} dr`.
fn e1(z: f64) -> Complex64 {
    if z.abs() < 1e-2 {
        // Σ (iz)^n / (n! (n+2))
        let iz = Complex64::new(0.0, z);
        let mut power = Complex64::new(1.0, 0.0);
        let mut sum = Complex64::new(0.5, 0.0);
        for n in 1..10 {
            power = power * iz / n as f64;
            sum += power / (n as f64 + 2.0);
        }
        sum
    } else {
        let iz = Complex64::new(0.0, z);
        let e = iz.exp();
        e / iz + (e - 1.0) / (z * z)
    }
}

/// `∫ piece(x) e^{iωx} dx` over the piece.
pub fn piece_integral(piece: &LinearPiece, omega: f64) -> Complex64 {
    let h = piece.width();
    let z = omega * h;
    let lead = Complex64::from_polar(1.0, omega * piece.x0);
    lead * (e0(z) * (piece.v0 * h) + e1(z) * (piece.slope * h * h))
}

/// Exact coefficient of a lifted test function, as a sum over its rectangles of
/// separable physical and internal integrals.
pub fn coeff_exact(k: Frequency, lift: &TorusFunction) -> Complex64 {
    let omega = -4.0 * PI * FIBONACCI.delta * k.value();
    let nu = -4.0 * PI * FIBONACCI.delta_star * k.conj_value();
    let mut total = Complex64::new(0.0, 0.0);
    for rect in &lift.rects {
        let x_part: Complex64 = rect
            .x_pieces()
            .iter()
            .map(|p| piece_integral(p, omega))
            .sum();
        let y_piece = LinearPiece {
            x0: rect.y0,
            x1: rect.y1,
            v0: 1.0,
            slope: 0.0,
        };
        total += x_part * piece_integral(&y_piece, nu);
    }
    total / SQRT5
}

/// `(1/R) ∫_0^R f(x) conj(χ_k(x)) dx`, integrated exactly on linear pieces.
pub fn coeff_integral(k: Frequency, f: &dyn LocalFunction, r: f64) -> Result<Complex64> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::InvalidArgument("integration range must be positive"));
    }
    Ok(coeff_integral_pieces(k, &f.pieces(0.0, r)?, r))
}

/// `coeff_integral` on pieces already covering `[0, R]`.
pub fn coeff_integral_pieces(k: Frequency, pieces: &[LinearPiece], r: f64) -> Complex64 {
    let omega = -4.0 * PI * FIBONACCI.delta * k.value();
    let total: Complex64 = pieces.iter().map(|p| piece_integral(p, omega)).sum();
    total / r
}

/// `(1/|D|) Σ f(u) conj(χ_k(u))` over the data points.
pub fn coeff_sum(k: Frequency, f: &dyn LocalFunction, data: &DataPointSet) -> Result<Complex64> {
    let values = sample_data(f, data)?;
    coeff_sum_values(k, data, &values)
}

/// `coeff_sum` with `f` already evaluated at the data points.
pub fn coeff_sum_values(k: Frequency, data: &DataPointSet, values: &[f64]) -> Result<Complex64> {
    if data.is_empty() {
        return Err(Error::InvalidArgument("data point set is empty"));
    }
    let total: Complex64 = data
        .points
        .iter()
        .zip(values)
        .map(|(p, &v)| character(k, p.value).conj() * v)
        .sum();
    Ok(total / data.len() as f64)
}

pub fn sample_data(f: &dyn LocalFunction, data: &DataPointSet) -> Result<Vec<f64>> {
    data.points.iter().map(|p| f.value(p.value)).collect()
}

/// Input of an estimator.
#[derive(Clone, Copy)]
pub enum Source<'a> {
    Lift(&'a TorusFunction),
    Integral { f: &'a dyn LocalFunction, r: f64 },
    Sum { f: &'a dyn LocalFunction, data: &'a DataPointSet },
}

/// One coefficient per representative of `K`, from the estimator matching `source`.
pub fn build_approximant(freqs: &FrequencySet, source: Source<'_>) -> Result<Approximant> {
    let (kind, values): (ApproximantKind, Vec<Complex64>) = match source {
        Source::Lift(lift) => (
            ApproximantKind::Exact,
            freqs.reps.iter().map(|&k| coeff_exact(k, lift)).collect(),
        ),
        Source::Integral { f, r } => {
            if !(r > 0.0 && r.is_finite()) {
                return Err(Error::InvalidArgument("integration range must be positive"));
            }
            let pieces = f.pieces(0.0, r)?;
            (
                ApproximantKind::Integral,
                freqs
                    .reps
                    .iter()
                    .map(|&k| coeff_integral_pieces(k, &pieces, r))
                    .collect(),
            )
        }
        Source::Sum { f, data } => {
            let samples = sample_data(f, data)?;
            (
                ApproximantKind::Sum,
                freqs
                    .reps
                    .iter()
                    .map(|&k| coeff_sum_values(k, data, &samples))
                    .collect::<Result<_>>()?,
            )
        }
    };
    Ok(Approximant::new(
        kind,
        freqs
            .reps
            .iter()
            .zip(values)
            .map(|(&k, value)| Coefficient { k, value })
            .collect(),
    ))
}

/// `Σ_{k=0}^{n} a_k cos(kπx/2)`, a period-4 fit of `f` on `[0, 2]`.
#[derive(Clone, Debug, PartialEq)]
pub struct CosineApproximant {
    pub coeffs: Vec<f64>,
    pub dc_halved: bool,
}

impl CosineApproximant {
    pub fn evaluate(&self, x: f64) -> f64 {
        // cos(kπx/2) has period 4 for every k.
        let x = x - 4.0 * (x / 4.0).floor();
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, a)| a * (0.5 * k as f64 * PI * x).cos())
            .sum()
    }
}

impl RealFunction for CosineApproximant {
    fn eval(&self, x: f64) -> Result<f64> {
        Ok(self.evaluate(x))
    }
}

/// Cosine coefficients `a_k = ½∫_0^2 f(x) cos(kπx/2) dx` for `k = 0..=n`.
///
/// With `dc_halved` the constant term is halved as well.
pub fn cos_baseline(f: &dyn LocalFunction, n: usize, dc_halved: bool) -> Result<CosineApproximant> {
    let pieces = f.pieces(0.0, 2.0)?;
    let mut coeffs = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let omega = 0.5 * k as f64 * PI;
        let integral: f64 = pieces.iter().map(|p| piece_integral(p, omega).re).sum();
        coeffs.push(0.5 * integral);
    }
    if dc_halved {
        coeffs[0] *= 0.5;
    }
    Ok(CosineApproximant { coeffs, dc_halved })
}

/// Largest `|g(x) - f(x)|` over `samples` equispaced points of `[lo, hi]`.
pub fn sup_error(
    g: &dyn RealFunction,
    f: &dyn RealFunction,
    lo: f64,
    hi: f64,
    samples: usize,
) -> Result<f64> {
    if samples < 2 {
        return Err(Error::InvalidArgument("need at least two samples"));
    }
    if !(hi > lo) {
        return Err(Error::InvalidArgument("range upper end must exceed lower end"));
    }
    let mut worst = 0.0f64;
    for i in 0..samples {
        let x = lo + (hi - lo) * i as f64 / (samples - 1) as f64;
        worst = worst.max((g.eval(x)? - f.eval(x)?).abs());
    }
    Ok(worst)
}
