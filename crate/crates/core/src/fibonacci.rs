//! The Fibonacci tiling, the two test functions on it and their torus lifts.
//!
//! Both test functions are local: their value at `t` depends only on the two
//! model set points bracketing `t`. The lift to the torus is described on a
//! fundamental domain made of two rectangles, one per tile type. A point of a
//! tile `[p, p + τ)` sits at `(t - p, -p')` in the a-rectangle, and a point of
//! a tile `[p, q)` with `q = p + 1` sits at `(t - q, -q')` in the b-rectangle.

use alloc::vec::Vec;
#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::cutproject::{accepted_points, enumerate_model_set, ModelSetSlice, Tile, Window};
use crate::error::{Error, Result};
use crate::ztau::{QTau, ZTau, SQRT5, TAU, TAU_CONJ};

/// `f(x) = v0 + slope·(x - x0)` on `[x0, x1]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LinearPiece {
    pub x0: f64,
    pub x1: f64,
    pub v0: f64,
    pub slope: f64,
}

impl LinearPiece {
    pub fn value_at(&self, x: f64) -> f64 {
        self.v0 + self.slope * (x - self.x0)
    }

    pub fn width(&self) -> f64 {
        self.x1 - self.x0
    }

    fn clipped(&self, lo: f64, hi: f64) -> Option<LinearPiece> {
        let x0 = self.x0.max(lo);
        let x1 = self.x1.min(hi);
        (x1 > x0).then(|| LinearPiece {
            x0,
            x1,
            v0: self.value_at(x0),
            slope: self.slope,
        })
    }
}

/// A real function on the line that can be split into linear pieces.
pub trait LocalFunction {
    fn value(&self, t: f64) -> Result<f64>;

    /// Linear pieces covering `[lo, hi]` in order.
    fn pieces(&self, lo: f64, hi: f64) -> Result<Vec<LinearPiece>>;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FunctionKind {
    /// Distance to the nearest model set point.
    NearestDistance,
    /// `+1` on long tiles and `-1` on short tiles.
    IntervalSign,
}

impl FunctionKind {
    fn on_tile(self, tile_start: f64, tile: Tile, t: f64) -> f64 {
        match self {
            FunctionKind::NearestDistance => {
                let len = tile_length(tile);
                let s = t - tile_start;
                s.min(len - s).max(0.0)
            }
            FunctionKind::IntervalSign => match tile {
                Tile::Long => 1.0,
                Tile::Short => -1.0,
            },
        }
    }

    fn tile_pieces(self, start: f64, tile: Tile, out: &mut Vec<LinearPiece>) {
        let len = tile_length(tile);
        match self {
            FunctionKind::NearestDistance => {
                let mid = start + 0.5 * len;
                out.push(LinearPiece {
                    x0: start,
                    x1: mid,
                    v0: 0.0,
                    slope: 1.0,
                });
                out.push(LinearPiece {
                    x0: mid,
                    x1: start + len,
                    v0: 0.5 * len,
                    slope: -1.0,
                });
            }
            FunctionKind::IntervalSign => out.push(LinearPiece {
                x0: start,
                x1: start + len,
                v0: self.on_tile(start, tile, start),
                slope: 0.0,
            }),
        }
    }
}

fn tile_length(tile: Tile) -> f64 {
    match tile {
        Tile::Long => TAU,
        Tile::Short => 1.0,
    }
}

/// One of the two test functions, relative to the model set of a window.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FibonacciFunction {
    pub kind: FunctionKind,
    pub window: Window,
}

impl FibonacciFunction {
    pub fn new(kind: FunctionKind, window: Window) -> Self {
        FibonacciFunction { kind, window }
    }

    pub fn nearest() -> Self {
        Self::new(FunctionKind::NearestDistance, Window::fibonacci())
    }

    pub fn interval() -> Self {
        Self::new(FunctionKind::IntervalSign, Window::fibonacci())
    }

    /// The tile containing `t`: its start point and type.
    pub fn tile_at(&self, t: f64) -> Result<(ZTau, Tile)> {
        let near = accepted_points(&self.window, t - 2.0 * TAU, t + 2.0 * TAU)?;
        let idx = near.partition_point(|p| p.value() <= t);
        if idx == 0 || idx == near.len() {
            return Err(Error::UnsupportedGap { at: t });
        }
        let (p, q) = (near[idx - 1], near[idx]);
        let gap = q.checked_sub(p)?;
        let tile = if gap == ZTau::TAU {
            Tile::Long
        } else if gap == ZTau::ONE {
            Tile::Short
        } else {
            return Err(Error::UnsupportedGap { at: p.value() });
        };
        Ok((p, tile))
    }

    /// Pre-materializes the model set over `[lo, hi]` for fast repeated evaluation.
    pub fn sampler(&self, lo: f64, hi: f64) -> Result<Sampler> {
        let slice = enumerate_model_set(&self.window, lo - 2.0 * TAU, hi + 2.0 * TAU)?;
        Ok(Sampler {
            function: *self,
            slice,
        })
    }
}

impl LocalFunction for FibonacciFunction {
    fn value(&self, t: f64) -> Result<f64> {
        let (p, tile) = self.tile_at(t)?;
        Ok(self.kind.on_tile(p.value(), tile, t))
    }

    fn pieces(&self, lo: f64, hi: f64) -> Result<Vec<LinearPiece>> {
        pieces_from_slice(self.kind, &enumerate_model_set(&self.window, lo - 2.0 * TAU, hi)?, lo, hi)
    }
}

fn pieces_from_slice(
    kind: FunctionKind,
    slice: &ModelSetSlice,
    lo: f64,
    hi: f64,
) -> Result<Vec<LinearPiece>> {
    if !(hi >= lo) {
        return Err(Error::InvalidArgument("range upper end below lower end"));
    }
    let first = slice.predecessor_index(lo).ok_or(Error::InsufficientCoverage { needed: lo })?;
    let mut raw = Vec::new();
    for point in &slice.points[first..] {
        if point.value >= hi && !raw.is_empty() {
            break;
        }
        kind.tile_pieces(point.value, point.tile, &mut raw);
    }
    let end = raw.last().map_or(lo, |p| p.x1);
    if end < hi {
        return Err(Error::InsufficientCoverage { needed: hi });
    }
    Ok(raw.iter().filter_map(|p| p.clipped(lo, hi)).collect())
}

/// A test function backed by a materialized model set slice.
#[derive(Clone, Debug, PartialEq)]
pub struct Sampler {
    function: FibonacciFunction,
    slice: ModelSetSlice,
}

impl Sampler {
    pub fn slice(&self) -> &ModelSetSlice {
        &self.slice
    }

    fn covers(&self, t: f64) -> bool {
        t >= self.slice.range_lo + TAU && t <= self.slice.range_hi - TAU
    }
}

impl LocalFunction for Sampler {
    fn value(&self, t: f64) -> Result<f64> {
        if !self.covers(t) {
            return self.function.value(t);
        }
        let idx = self
            .slice
            .predecessor_index(t)
            .ok_or(Error::InsufficientCoverage { needed: t })?;
        let p = &self.slice.points[idx];
        Ok(self.function.kind.on_tile(p.value, p.tile, t))
    }

    fn pieces(&self, lo: f64, hi: f64) -> Result<Vec<LinearPiece>> {
        if self.covers(lo) && self.covers(hi) {
            pieces_from_slice(self.function.kind, &self.slice, lo, hi)
        } else {
            self.function.pieces(lo, hi)
        }
    }
}

/// A constant function, mostly useful as a calibration input.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Constant(pub f64);

impl LocalFunction for Constant {
    fn value(&self, _t: f64) -> Result<f64> {
        Ok(self.0)
    }

    fn pieces(&self, lo: f64, hi: f64) -> Result<Vec<LinearPiece>> {
        if !(hi >= lo) {
            return Err(Error::InvalidArgument("range upper end below lower end"));
        }
        Ok(alloc::vec![LinearPiece {
            x0: lo,
            x1: hi,
            v0: self.0,
            slope: 0.0
        }])
    }
}

/// The first `count` left endpoints of the tiling generated by `a → ab, b → a`.
pub fn substitution_points(count: usize) -> Result<Vec<ZTau>> {
    if count == 0 {
        return Err(Error::InvalidArgument("count must be at least 1"));
    }
    let mut word = alloc::vec![Tile::Long];
    while word.len() < count {
        let mut next = Vec::with_capacity(word.len() * 2);
        for &letter in &word {
            next.push(Tile::Long);
            if letter == Tile::Long {
                next.push(Tile::Short);
            }
        }
        word = next;
    }
    let mut points = Vec::with_capacity(count);
    let mut x = ZTau::ZERO;
    for &letter in &word[..count] {
        points.push(x);
        x = x.checked_add(letter.length())?;
    }
    Ok(points)
}

/// Profile of a lift along the physical direction of a rectangle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Profile {
    /// Rises with slope 1 from 0 at both ends to half the width at the middle.
    Triangle,
    Constant(f64),
}

/// A rectangle `[x0, x1) × (y0, y1]` of the fundamental domain.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LiftRect {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
    pub profile: Profile,
}

impl LiftRect {
    pub fn value_at(&self, x: f64) -> f64 {
        match self.profile {
            Profile::Triangle => {
                let half = 0.5 * (self.x1 - self.x0);
                (half - (x - self.x0 - half).abs()).max(0.0)
            }
            Profile::Constant(c) => c,
        }
    }

    /// The physical profile as linear pieces on `[x0, x1]`.
    pub fn x_pieces(&self) -> Vec<LinearPiece> {
        match self.profile {
            Profile::Triangle => {
                let mid = 0.5 * (self.x0 + self.x1);
                alloc::vec![
                    LinearPiece {
                        x0: self.x0,
                        x1: mid,
                        v0: 0.0,
                        slope: 1.0
                    },
                    LinearPiece {
                        x0: mid,
                        x1: self.x1,
                        v0: mid - self.x0,
                        slope: -1.0
                    },
                ]
            }
            Profile::Constant(c) => alloc::vec![LinearPiece {
                x0: self.x0,
                x1: self.x1,
                v0: c,
                slope: 0.0
            }],
        }
    }

    fn contains_half_open(&self, x: f64, y: f64) -> bool {
        x >= self.x0 && x < self.x1 && y > self.y0 && y <= self.y1
    }

    fn contains_closed(&self, x: f64, y: f64, tol: f64) -> bool {
        x >= self.x0 - tol && x <= self.x1 + tol && y >= self.y0 - tol && y <= self.y1 + tol
    }
}

/// A lifted test function on the torus, given on a two-rectangle fundamental domain.
#[derive(Clone, Debug, PartialEq)]
pub struct TorusFunction {
    /// The a-rectangle first, then the b-rectangle.
    pub rects: Vec<LiftRect>,
}

impl TorusFunction {
    /// Value at a point of the (closed) rectangles.
    pub fn evaluate_cell(&self, x: f64, y: f64) -> Result<f64> {
        if let Some(r) = self.rects.iter().find(|r| r.contains_half_open(x, y)) {
            return Ok(r.value_at(x));
        }
        self.rects
            .iter()
            .find(|r| r.contains_closed(x, y, 1e-12))
            .map(|r| r.value_at(x))
            .ok_or(Error::OutsideLift { x, y })
    }

    /// Reduces a point of physical × internal space into the fundamental domain.
    pub fn reduce(&self, x: f64, y: f64) -> Result<(f64, f64)> {
        if !(x.is_finite() && y.is_finite()) {
            return Err(Error::OutsideLift { x, y });
        }
        let x_lo = self.rects.iter().map(|r| r.x0).fold(f64::INFINITY, f64::min);
        let x_hi = self.rects.iter().map(|r| r.x1).fold(f64::NEG_INFINITY, f64::max);
        let y_lo = self.rects.iter().map(|r| r.y0).fold(f64::INFINITY, f64::min);
        let y_hi = self.rects.iter().map(|r| r.y1).fold(f64::NEG_INFINITY, f64::max);
        // m ∈ (x - x_hi, x - x_lo] and m' ∈ [y - y_hi, y - y_lo), with m - m' = b√5.
        let b_lo = ((x - x_hi - y + y_lo) / SQRT5).floor() as i128 - 1;
        let b_hi = ((x - x_lo - y + y_hi) / SQRT5).ceil() as i128 + 1;
        let mut fallback = None;
        for b in b_lo..=b_hi {
            let a_lo = (x - x_hi - b as f64 * TAU).floor() as i128 - 1;
            let a_hi = (x - x_lo - b as f64 * TAU).ceil() as i128 + 1;
            for a in a_lo..=a_hi {
                let m = ZTau::new(a, b);
                let (cx, cy) = (x - m.value(), y - m.conj_value());
                if self.rects.iter().any(|r| r.contains_half_open(cx, cy)) {
                    return Ok((cx, cy));
                }
                if fallback.is_none() && self.rects.iter().any(|r| r.contains_closed(cx, cy, 1e-9)) {
                    fallback = Some((cx, cy));
                }
            }
        }
        fallback.ok_or(Error::OutsideLift { x, y })
    }

    /// Value at an arbitrary point of physical × internal space, periodic under the lattice.
    pub fn evaluate(&self, x: f64, y: f64) -> Result<f64> {
        let (cx, cy) = self.reduce(x, y)?;
        self.evaluate_cell(cx, cy)
    }
}

/// The lift of a test function for the default window `[-1, 1/τ)`.
pub fn torus_lift(kind: FunctionKind) -> TorusFunction {
    torus_lift_for(kind, &Window::fibonacci()).expect("default window has length τ")
}

/// The lift for a translate `s + [-1, 1/τ)` of the default window.
pub fn torus_lift_for(kind: FunctionKind, window: &Window) -> Result<TorusFunction> {
    if (window.hi() - window.lo() - TAU).abs() > 1e-9 {
        return Err(Error::NonSeparableLift);
    }
    let s = window.lo() + 1.0;
    let inv_tau = -TAU_CONJ;
    let (a_profile, b_profile) = match kind {
        FunctionKind::NearestDistance => (Profile::Triangle, Profile::Triangle),
        FunctionKind::IntervalSign => (Profile::Constant(1.0), Profile::Constant(-1.0)),
    };
    Ok(TorusFunction {
        rects: alloc::vec![
            LiftRect {
                x0: 0.0,
                x1: TAU,
                y0: -inv_tau - s,
                y1: inv_tau * inv_tau - s,
                profile: a_profile,
            },
            LiftRect {
                x0: -1.0,
                x1: 0.0,
                y0: -inv_tau - s,
                y1: -s,
                profile: b_profile,
            },
        ],
    })
}

/// Fundamental-domain position of `(t, 0)` read off the tile containing `t`.
pub fn cell_position(function: &FibonacciFunction, t: f64) -> Result<(f64, f64)> {
    let (p, tile) = function.tile_at(t)?;
    let anchor = match tile {
        Tile::Long => p,
        Tile::Short => p.checked_add(ZTau::ONE)?,
    };
    Ok((t - anchor.value(), -anchor.conj_value()))
}

/// Whether `P ∩ [-R, R]` lies within `eps` of `Q` and vice versa.
pub fn point_sets_close(p: &[f64], q: &[f64], r: f64, eps: f64) -> Result<bool> {
    if !(r >= 0.0 && eps >= 0.0) {
        return Err(Error::InvalidArgument("radius and tolerance must be non-negative"));
    }
    let mut p = p.to_vec();
    let mut q = q.to_vec();
    p.sort_by(f64::total_cmp);
    q.sort_by(f64::total_cmp);
    for set in [&p, &q] {
        let (lo, hi) = (set.first(), set.last());
        match (lo, hi) {
            (Some(&lo), Some(&hi)) if lo <= -r - eps && hi >= r + eps => {}
            _ => return Err(Error::InsufficientCoverage { needed: r + eps }),
        }
    }
    Ok(one_sided_close(&p, &q, r, eps) && one_sided_close(&q, &p, r, eps))
}

fn one_sided_close(p: &[f64], q: &[f64], r: f64, eps: f64) -> bool {
    p.iter().filter(|x| x.abs() <= r).all(|&x| {
        let idx = q.partition_point(|&y| y < x);
        let after = q.get(idx).map_or(f64::INFINITY, |&y| y - x);
        let before = idx.checked_sub(1).map_or(f64::INFINITY, |i| x - q[i]);
        after.min(before) <= eps
    })
}

/// Shift of the default window used by the singularity comparison.
pub fn half_shift() -> QTau {
    QTau::from_parts(1, 0, 2).expect("denominator is 2")
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn z(a: i128, b: i128) -> ZTau {
        ZTau::new(a, b)
    }

    #[test]
    fn substitution_prefix() {
        assert_eq!(substitution_points(1).unwrap(), vec![z(0, 0)]);
        assert_eq!(
            substitution_points(9).unwrap(),
            vec![
                z(0, 0),
                z(0, 1),
                z(1, 1),
                z(1, 2),
                z(1, 3),
                z(2, 3),
                z(2, 4),
                z(3, 4),
                z(3, 5)
            ]
        );
        assert!(substitution_points(0).is_err());
    }

    #[test]
    fn table_values_of_the_test_functions() {
        let near = FibonacciFunction::nearest();
        let sign = FibonacciFunction::interval();
        assert_eq!(near.value(0.0).unwrap(), 0.0);
        assert!((near.value(0.5 + TAU).unwrap() - 0.5).abs() < 1e-12);
        assert!((near.value(-100.0).unwrap() - 0.8065).abs() < 5e-5);
        assert_eq!(sign.value(0.0).unwrap(), 1.0);
        assert_eq!(sign.value(TAU).unwrap(), -1.0);
        assert_eq!(sign.value(0.25 + TAU).unwrap(), -1.0);
    }

    #[test]
    fn sampler_matches_direct_evaluation() {
        let f = FibonacciFunction::nearest();
        let s = f.sampler(-50.0, 50.0).unwrap();
        for i in 0..400 {
            let t = -60.0 + 0.3 * i as f64;
            assert_eq!(s.value(t).unwrap(), f.value(t).unwrap());
        }
    }

    #[test]
    fn pieces_reproduce_values() {
        for f in [FibonacciFunction::nearest(), FibonacciFunction::interval()] {
            let pieces = f.pieces(-7.3, 11.1).unwrap();
            assert_eq!(pieces.first().unwrap().x0, -7.3);
            assert_eq!(pieces.last().unwrap().x1, 11.1);
            for w in pieces.windows(2) {
                assert_eq!(w[0].x1, w[1].x0);
            }
            for piece in &pieces {
                let x = 0.5 * (piece.x0 + piece.x1);
                assert!((piece.value_at(x) - f.value(x).unwrap()).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn lift_examples() {
        let near = torus_lift(FunctionKind::NearestDistance);
        let sign = torus_lift(FunctionKind::IntervalSign);
        assert!((near.evaluate_cell(-0.5, TAU_CONJ * 0.5).unwrap() - 0.5).abs() < 1e-15);
        assert_eq!(near.evaluate_cell(0.0, -0.3).unwrap(), 0.0);
        assert_eq!(sign.evaluate_cell(TAU / 2.0, 0.0).unwrap(), 1.0);
        assert!(matches!(
            near.evaluate_cell(-0.5, 0.3),
            Err(Error::OutsideLift { .. })
        ));
    }

    #[test]
    fn lift_restricts_to_the_line() {
        for kind in [FunctionKind::NearestDistance, FunctionKind::IntervalSign] {
            let f = FibonacciFunction::new(kind, Window::fibonacci());
            let lift = torus_lift(kind);
            for i in 0..300 {
                let t = -150.0 + 1.0137 * i as f64;
                let (x, y) = cell_position(&f, t).unwrap();
                let expected = f.value(t).unwrap();
                assert!((lift.evaluate_cell(x, y).unwrap() - expected).abs() < 1e-9);
                assert!((lift.evaluate(t, 0.0).unwrap() - expected).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn shifted_lift_restricts_to_the_shifted_function() {
        let window = Window::fibonacci().shifted(&half_shift()).unwrap();
        let f = FibonacciFunction::new(FunctionKind::NearestDistance, window);
        let lift = torus_lift_for(FunctionKind::NearestDistance, &window).unwrap();
        for i in 0..200 {
            let t = -40.0 + 0.4321 * i as f64;
            assert!((lift.evaluate(t, 0.0).unwrap() - f.value(t).unwrap()).abs() < 1e-9);
        }
    }

    #[test]
    fn closeness() {
        let w = Window::fibonacci();
        let lam = enumerate_model_set(&w, -30.0, 30.0).unwrap().values();
        assert!(point_sets_close(&lam, &lam, 20.0, 0.01).unwrap());
        let shift = 0.5 * TAU_CONJ.abs().powi(3);
        let moved: Vec<f64> = lam.iter().map(|x| x + shift).collect();
        assert!(point_sets_close(&lam, &moved, 5.0, shift + 1e-12).unwrap());
        assert!(!point_sets_close(&lam, &moved, 5.0, shift / 2.0).unwrap());
        let other = w.with_inclusions(false, true);
        let lam2 = enumerate_model_set(&other, -30.0, 30.0).unwrap().values();
        assert!(!point_sets_close(&lam, &lam2, 10.0, 1e-6).unwrap());
        let short = enumerate_model_set(&w, -5.0, 5.0).unwrap().values();
        assert!(point_sets_close(&short, &lam, 20.0, 0.01).is_err());
    }
}
