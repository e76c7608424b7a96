//! Data points for the discrete transform.
//!
//! The fundamental cell `C` of the lattice is refined into `N²` sub-cells with
//! corners `s̃ = (i/N)·1̃ + (j/N)·τ̃`. The line `t ↦ (t, 0)` is followed from
//! `t = 0`; each time it leaves `C` it is pulled back by a lattice vector, so
//! the path consists of segments crossing `C`, each with its own translate
//! `t̃`. Every representative is paired with the translate whose segment
//! passes closest to it in internal space, and `s + t` becomes a data point.

use alloc::vec::Vec;
#[cfg(not(feature = "std"))]
use num_traits::Float;
use core::cmp::Ordering;


use crate::cutproject::torus_coords;
use crate::error::{Error, Result};
use crate::fibonacci::TorusFunction;
use crate::ztau::{QTau, Rational, ZTau, SQRT5, TAU, TAU_CONJ};

/// A corner of a sub-cell of the refined fundamental cell.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Representative {
    pub i: u32,
    pub j: u32,
    /// `i/N + (j/N)τ`.
    pub s: QTau,
    /// Lattice coordinates `(i/N, j/N)`.
    pub lattice: (f64, f64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct RefinementReps {
    pub n: u32,
    pub reps: Vec<Representative>,
}

/// The `N²` points of `(1/N)L̃` in the fundamental cell, ordered by `(i, j)`.
pub fn refinement_reps(n: u32) -> Result<RefinementReps> {
    if n == 0 {
        return Err(Error::InvalidArgument("refinement N must be at least 1"));
    }
    let mut reps = Vec::with_capacity((n as usize) * (n as usize));
    for i in 0..n {
        for j in 0..n {
            reps.push(Representative {
                i,
                j,
                s: QTau::from_parts(i as i128, j as i128, n as i128)?,
                lattice: (i as f64 / n as f64, j as f64 / n as f64),
            });
        }
    }
    Ok(RefinementReps { n, reps })
}

/// How far the path runs.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PathMode {
    /// Exactly `M` segments, i.e. up to the `M`-th boundary crossing.
    Passes(u32),
    /// Up to the last crossing at or below `R`.
    Range(f64),
    /// Up to `t = M√5`, where the path has wrapped `M` times in the `τ̃` direction.
    Wraps(u32),
}

/// One crossing of the fundamental cell; `(t, 0) - translate ∈ C` inside it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PathSegment {
    pub t_enter: f64,
    pub t_exit: f64,
    pub translate: ZTau,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PathDecomposition {
    pub segments: Vec<PathSegment>,
    pub r: f64,
}

impl PathDecomposition {
    pub fn m(&self) -> usize {
        self.segments.len()
    }
}

/// Splits `[0, R]` at the boundary crossings `n√5` and `nτ√5`.
pub fn path_decomposition(mode: PathMode) -> Result<PathDecomposition> {
    let (limit, max_segments) = match mode {
        PathMode::Passes(0) | PathMode::Wraps(0) => {
            return Err(Error::InvalidArgument("path needs at least one pass"))
        }
        PathMode::Passes(m) => (f64::INFINITY, m as usize),
        PathMode::Range(r) if r.is_finite() && r >= SQRT5 => (r, usize::MAX),
        PathMode::Range(_) => {
            return Err(Error::InvalidArgument("range must reach the first crossing at √5"))
        }
        PathMode::Wraps(m) => (m as f64 * SQRT5, usize::MAX),
    };
    let v_period = SQRT5;
    let u_period = TAU * SQRT5;
    let (mut nu, mut nv) = (0i128, 0i128);
    let mut t = 0.0;
    let mut segments = Vec::new();
    while segments.len() < max_segments {
        let next_u = (nu + 1) as f64 * u_period;
        let next_v = (nv + 1) as f64 * v_period;
        let next = next_u.min(next_v);
        if next > limit {
            break;
        }
        segments.push(PathSegment {
            t_enter: t,
            t_exit: next,
            translate: ZTau::new(nu, nv),
        });
        // The two progressions never meet: τ is irrational.
        if next_u < next_v {
            nu += 1;
        } else {
            nv += 1;
        }
        t = next;
    }
    Ok(PathDecomposition { segments, r: t })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DataPoint {
    /// `s + t` as an element of `Q[τ]`.
    pub u: QTau,
    pub value: f64,
    /// `|s' + t'|`.
    pub residual: f64,
    pub i: u32,
    pub j: u32,
    pub translate: ZTau,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DataPointSet {
    pub n: u32,
    pub m: usize,
    pub r: f64,
    /// Sorted by `value`.
    pub points: Vec<DataPoint>,
}

impl DataPointSet {
    pub fn values(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.value).collect()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn max_residual(&self) -> f64 {
        self.points.iter().map(|p| p.residual).fold(0.0, f64::max)
    }
}

/// Pairs each representative with the translate minimizing `|s' + t'|`.
///
/// Residuals are compared exactly; ties go to the earliest segment.
pub fn data_points(n: u32, path: &PathDecomposition) -> Result<DataPointSet> {
    let reps = refinement_reps(n)?;
    if path.segments.is_empty() {
        return Err(Error::InvalidArgument("path has no segments"));
    }
    let translates: Vec<(ZTau, QTau)> = path
        .segments
        .iter()
        .map(|seg| Ok((seg.translate, seg.translate.checked_conj()?.to_qtau())))
        .collect::<Result<_>>()?;
    let mut points = Vec::with_capacity(reps.reps.len());
    for rep in &reps.reps {
        let s_conj = rep.s.checked_conj()?;
        let mut best: Option<(QTau, ZTau)> = None;
        for (t, t_conj) in &translates {
            let residual = s_conj.checked_add(t_conj)?;
            let better = match &best {
                None => true,
                Some((r, _)) => residual.cmp_abs(r)? == Ordering::Less,
            };
            if better {
                best = Some((residual, *t));
            }
        }
        let (residual, translate) = best.expect("path is nonempty");
        let u = rep.s.checked_add(&translate.to_qtau())?;
        points.push(DataPoint {
            u,
            value: u.value(),
            residual: residual.value().abs(),
            i: rep.i,
            j: rep.j,
            translate,
        });
    }
    points.sort_by(|a, b| a.value.total_cmp(&b.value).then((a.i, a.j).cmp(&(b.i, b.j))));
    Ok(DataPointSet {
        n,
        m: path.m(),
        r: path.r,
        points,
    })
}

/// A horizontal strip of the cell served by one path segment.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Strip {
    pub segment: usize,
    /// Internal coordinate of the segment inside the cell.
    pub height: f64,
    pub lo: f64,
    pub hi: f64,
}

/// Strips between midpoints of consecutive segment heights, from `τ'` up to `1`.
fn strips_from_heights(mut heights: Vec<(f64, usize)>) -> Vec<Strip> {
    heights.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut strips = Vec::with_capacity(heights.len());
    for (idx, &(height, segment)) in heights.iter().enumerate() {
        let lo = if idx == 0 {
            TAU_CONJ
        } else {
            0.5 * (heights[idx - 1].0 + height)
        };
        let hi = heights
            .get(idx + 1)
            .map_or(1.0, |&(next, _)| 0.5 * (height + next));
        strips.push(Strip {
            segment,
            height,
            lo,
            hi,
        });
    }
    strips
}

/// Strips of the cell, using the exact internal coordinate `-t'` of each translate.
pub fn strips(path: &PathDecomposition) -> Vec<Strip> {
    strips_from_heights(
        path.segments
            .iter()
            .enumerate()
            .map(|(idx, seg)| (-seg.translate.conj_value(), idx))
            .collect(),
    )
}

/// The strip construction, computed in floating point from the wrapped path.
///
/// Segment heights come from the cell coordinates of each segment midpoint
/// rather than from the translate bookkeeping. A representative on a strip
/// boundary goes to the lower strip.
pub fn strip_projection_oracle(n: u32, path: &PathDecomposition) -> Result<DataPointSet> {
    let reps = refinement_reps(n)?;
    if path.segments.is_empty() {
        return Err(Error::InvalidArgument("path has no segments"));
    }
    let mut heights = Vec::with_capacity(path.m());
    let mut shifts = Vec::with_capacity(path.m());
    for (idx, seg) in path.segments.iter().enumerate() {
        let mid = 0.5 * (seg.t_enter + seg.t_exit);
        let (u, v) = torus_coords(mid);
        heights.push((u + v * TAU_CONJ, idx));
        shifts.push(mid - (u + v * TAU));
    }
    let strips = strips_from_heights(heights);
    let mut points = Vec::with_capacity(reps.reps.len());
    for rep in &reps.reps {
        let s_conj = rep.s.conj_value();
        // Strips are [lo, hi); a representative at a boundary lies in the lower one.
        let idx = strips
            .partition_point(|strip| strip.hi < s_conj)
            .min(strips.len() - 1);
        let strip = &strips[idx];
        let shift = shifts[strip.segment];
        let translate = translate_from_shift(shift, -strip.height)
            .ok_or(Error::InvalidArgument("strip height is not a lattice translate"))?;
        points.push(DataPoint {
            u: rep.s.checked_add(&translate.to_qtau())?,
            value: rep.s.value() + shift,
            residual: (s_conj - strip.height).abs(),
            i: rep.i,
            j: rep.j,
            translate,
        });
    }
    points.sort_by(|a, b| a.value.total_cmp(&b.value).then((a.i, a.j).cmp(&(b.i, b.j))));
    Ok(DataPointSet {
        n,
        m: path.m(),
        r: path.r,
        points,
    })
}

// Recovers a + bτ from its two real embeddings, if they are close to integral.
fn translate_from_shift(x: f64, x_conj: f64) -> Option<ZTau> {
    let b = ((x - x_conj) / SQRT5).round();
    let a = (x - b * TAU).round();
    let z = ZTau::new(a as i128, b as i128);
    ((z.value() - x).abs() < 1e-6 && (z.conj_value() - x_conj).abs() < 1e-6).then_some(z)
}

/// Sampled oscillation estimates for a torus function at refinement `N`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ErrorEstimate {
    /// Largest `|G(x) - G(s̃)|` for `x` in a sub-cell with corner `s̃`.
    pub eps_n: f64,
    /// Largest `max - min` of `G` on a sub-cell.
    pub cell_oscillation: f64,
    /// Largest `|G(x) - G(x on the strip's segment)|` over the strips.
    pub eps_n_prime: f64,
    /// `√5(ε_N + ε'_N)`.
    pub bound: f64,
}

const CELL_SAMPLES: usize = 12;
const STRIP_SAMPLES: usize = 120;
const STRIP_HEIGHTS: usize = 11;

/// Sampled estimates of `ε_N` and `ε'_N`; these are lower bounds of the true suprema.
pub fn error_estimate(g: &TorusFunction, n: u32, path: &PathDecomposition) -> Result<ErrorEstimate> {
    let reps = refinement_reps(n)?;
    let cell = 1.0 / n as f64;
    let mut eps_n = 0.0f64;
    let mut cell_oscillation = 0.0f64;
    for rep in &reps.reps {
        let (u0, v0) = rep.lattice;
        let base = eval_lattice(g, u0, v0)?;
        let (mut lo, mut hi) = (base, base);
        for a in 0..CELL_SAMPLES {
            for b in 0..CELL_SAMPLES {
                let u = u0 + cell * a as f64 / (CELL_SAMPLES - 1) as f64;
                let v = v0 + cell * b as f64 / (CELL_SAMPLES - 1) as f64;
                let value = eval_lattice(g, u, v)?;
                eps_n = eps_n.max((value - base).abs());
                lo = lo.min(value);
                hi = hi.max(value);
            }
        }
        cell_oscillation = cell_oscillation.max(hi - lo);
    }
    let mut eps_n_prime = 0.0f64;
    for strip in strips(path) {
        let seg = &path.segments[strip.segment];
        for a in 0..STRIP_SAMPLES {
            let frac = (a as f64 + 0.5) / STRIP_SAMPLES as f64;
            let t = seg.t_enter + frac * (seg.t_exit - seg.t_enter);
            let on_segment = g.evaluate(t, 0.0)?;
            for b in 0..STRIP_HEIGHTS {
                let y = strip.lo + (strip.hi - strip.lo) * b as f64 / (STRIP_HEIGHTS - 1) as f64;
                let value = g.evaluate(t, y - strip.height)?;
                eps_n_prime = eps_n_prime.max((value - on_segment).abs());
            }
        }
    }
    Ok(ErrorEstimate {
        eps_n,
        cell_oscillation,
        eps_n_prime,
        bound: SQRT5 * (eps_n + eps_n_prime),
    })
}

fn eval_lattice(g: &TorusFunction, u: f64, v: f64) -> Result<f64> {
    g.evaluate(u + v * TAU, u + v * TAU_CONJ)
}

/// Average of `G` over the representatives of refinement `N`.
pub fn cell_sample_average(g: &TorusFunction, n: u32) -> Result<f64> {
    let reps = refinement_reps(n)?;
    let mut total = 0.0;
    for rep in &reps.reps {
        total += g.evaluate(rep.s.value(), rep.s.conj_value())?;
    }
    Ok(total / reps.reps.len() as f64)
}

/// Lattice coordinates of each data point reduced into the unit square.
///
/// `u = a + bτ` lifts to `a·1̃ + b·τ̃`, so `(a, b) mod 1` locates it in the cell.
pub fn reduced_lattice_coords(points: &DataPointSet) -> Vec<(Rational, Rational)> {
    let frac = |r: &Rational| r - r.floor();
    points
        .points
        .iter()
        .map(|p| (frac(&p.u.a), frac(&p.u.b)))
        .collect()
}
