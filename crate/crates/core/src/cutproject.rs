//! The Fibonacci cut-and-project scheme.
//!
//! The lattice is `{(x, x') : x ∈ Z[τ]}` in physical × internal space, with
//! basis `1̃ = (1, 1)` and `τ̃ = (τ, τ')`. A model set is the set of `x` whose
//! conjugate `x'` lies in a window. Its dual module is `½Z[τ]`, whose elements
//! index the characters `t ↦ exp(2πi·2δkt)` of the Fourier-Bohr expansion.

use alloc::vec::Vec;
#[cfg(not(feature = "std"))]
use num_traits::Float;
use core::cmp::Ordering;
use core::fmt;


use crate::error::{Error, Result};
use crate::ztau::{QTau, ZTau, FIBONACCI, SQRT5, TAU, TAU_CONJ};

const APPROX_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Bounds {
    /// Endpoints in `Q[τ]`; membership is decided exactly.
    Exact { lo: QTau, hi: QTau },
    /// Real endpoints; membership uses a `1e-12` tolerance at the boundary.
    Approximate { lo: u64, hi: u64 },
}

/// An interval of internal space controlling acceptance into a model set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Window {
    bounds: Bounds,
    pub includes_lo: bool,
    pub includes_hi: bool,
}

impl Window {
    /// `[-1, 1/τ)`, whose model set has the Fibonacci word as its non-negative part.
    pub fn fibonacci() -> Self {
        Window {
            bounds: Bounds::Exact {
                lo: QTau::from_integers(-1, 0),
                hi: QTau::from_integers(-1, 1),
            },
            includes_lo: true,
            includes_hi: false,
        }
    }

    pub fn new(lo: QTau, hi: QTau, includes_lo: bool, includes_hi: bool) -> Result<Self> {
        if lo.cmp_value(&hi)? != Ordering::Less {
            return Err(Error::EmptyWindow);
        }
        Ok(Window {
            bounds: Bounds::Exact { lo, hi },
            includes_lo,
            includes_hi,
        })
    }

    pub fn approximate(lo: f64, hi: f64, includes_lo: bool, includes_hi: bool) -> Result<Self> {
        if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
            return Err(Error::EmptyWindow);
        }
        Ok(Window {
            bounds: Bounds::Approximate {
                lo: lo.to_bits(),
                hi: hi.to_bits(),
            },
            includes_lo,
            includes_hi,
        })
    }

    /// Same window with different endpoint inclusions.
    pub fn with_inclusions(mut self, includes_lo: bool, includes_hi: bool) -> Self {
        self.includes_lo = includes_lo;
        self.includes_hi = includes_hi;
        self
    }

    /// Translate of the window by `shift` in internal space.
    pub fn shifted(&self, shift: &QTau) -> Result<Self> {
        let bounds = match &self.bounds {
            Bounds::Exact { lo, hi } => Bounds::Exact {
                lo: lo.checked_add(shift)?,
                hi: hi.checked_add(shift)?,
            },
            Bounds::Approximate { lo, hi } => {
                let s = shift.value();
                Bounds::Approximate {
                    lo: (f64::from_bits(*lo) + s).to_bits(),
                    hi: (f64::from_bits(*hi) + s).to_bits(),
                }
            }
        };
        Ok(Window { bounds, ..*self })
    }

    pub fn bounds(&self) -> &Bounds {
        &self.bounds
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.bounds, Bounds::Exact { .. })
    }

    pub fn lo(&self) -> f64 {
        match &self.bounds {
            Bounds::Exact { lo, .. } => lo.value(),
            Bounds::Approximate { lo, .. } => f64::from_bits(*lo),
        }
    }

    pub fn hi(&self) -> f64 {
        match &self.bounds {
            Bounds::Exact { hi, .. } => hi.value(),
            Bounds::Approximate { hi, .. } => f64::from_bits(*hi),
        }
    }

    /// Whether the internal coordinate `y` lies in the window.
    pub fn contains(&self, y: &QTau) -> Result<bool> {
        match &self.bounds {
            Bounds::Exact { lo, hi } => {
                let above = match y.cmp_value(lo)? {
                    Ordering::Greater => true,
                    Ordering::Equal => self.includes_lo,
                    Ordering::Less => false,
                };
                if !above {
                    return Ok(false);
                }
                Ok(match y.cmp_value(hi)? {
                    Ordering::Less => true,
                    Ordering::Equal => self.includes_hi,
                    Ordering::Greater => false,
                })
            }
            Bounds::Approximate { .. } => Ok(self.contains_value(y.value())),
        }
    }

    /// Floating-point membership test, used for approximate windows.
    pub fn contains_value(&self, y: f64) -> bool {
        let (lo, hi) = (self.lo(), self.hi());
        let above = if (y - lo).abs() <= APPROX_TOLERANCE {
            self.includes_lo
        } else {
            y > lo
        };
        let below = if (y - hi).abs() <= APPROX_TOLERANCE {
            self.includes_hi
        } else {
            y < hi
        };
        above && below
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let open = if self.includes_lo { '[' } else { '(' };
        let close = if self.includes_hi { ']' } else { ')' };
        match &self.bounds {
            Bounds::Exact { lo, hi } => write!(f, "{open}{lo}, {hi}{close}"),
            Bounds::Approximate { lo, hi } => write!(
                f,
                "{open}{}, {}{close}~",
                f64::from_bits(*lo),
                f64::from_bits(*hi)
            ),
        }
    }
}

/// Tile starting at a model set point: `Long` has length `τ`, `Short` length `1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Tile {
    Long,
    Short,
}

impl Tile {
    pub fn length(self) -> ZTau {
        match self {
            Tile::Long => ZTau::TAU,
            Tile::Short => ZTau::ONE,
        }
    }
}

impl fmt::Display for Tile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tile::Long => "long",
            Tile::Short => "short",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModelPoint {
    pub value: f64,
    pub algebraic: ZTau,
    pub tile: Tile,
}

/// The model set points inside `[range_lo, range_hi]`, sorted ascending.
#[derive(Clone, Debug, PartialEq)]
pub struct ModelSetSlice {
    pub window: Window,
    pub range_lo: f64,
    pub range_hi: f64,
    pub points: Vec<ModelPoint>,
}

impl ModelSetSlice {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn values(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.value).collect()
    }

    pub fn algebraic(&self) -> Vec<ZTau> {
        self.points.iter().map(|p| p.algebraic).collect()
    }

    /// Index of the last point `<= t`, if any.
    pub fn predecessor_index(&self, t: f64) -> Option<usize> {
        let idx = self.points.partition_point(|p| p.value <= t);
        idx.checked_sub(1)
    }
}

/// All `x = a + bτ` with `lo <= x <= hi` and `x'` in the window, sorted.
pub fn accepted_points(window: &Window, lo: f64, hi: f64) -> Result<Vec<ZTau>> {
    if !(hi >= lo) {
        return Err(Error::InvalidArgument("range upper end below lower end"));
    }
    let (wlo, whi) = (window.lo(), window.hi());
    // x - x' = b√5 bounds the τ-coefficient.
    let b_min = ((lo - whi) / SQRT5).floor() as i128 - 1;
    let b_max = ((hi - wlo) / SQRT5).ceil() as i128 + 1;
    let mut out = Vec::new();
    for b in b_min..=b_max {
        let shift = b as f64 * TAU_CONJ;
        let a_min = (wlo - shift).floor() as i128 - 1;
        let a_max = (whi - shift).ceil() as i128 + 1;
        for a in a_min..=a_max {
            let x = ZTau::new(a, b);
            let value = x.value();
            if value < lo || value > hi {
                continue;
            }
            if window.contains(&x.checked_conj()?.to_qtau())? {
                out.push(x);
            }
        }
    }
    out.sort_by(|p, q| p.value().total_cmp(&q.value()));
    Ok(out)
}

/// The model set `Λ(window)` restricted to `[lo, hi]`, with tile tags.
///
/// Tiles are read from the gap to the successor point, which may lie past `hi`.
pub fn enumerate_model_set(window: &Window, lo: f64, hi: f64) -> Result<ModelSetSlice> {
    if !(hi >= lo) {
        return Err(Error::InvalidArgument("range upper end below lower end"));
    }
    // Gaps are at most τ for windows of length τ; look a little further.
    let extended = accepted_points(window, lo, hi + 2.0 * TAU)?;
    let fib = Window::fibonacci();
    let mut points = Vec::with_capacity(extended.len());
    for pair in extended.windows(2) {
        let (p, q) = (pair[0], pair[1]);
        if p.value() > hi {
            break;
        }
        let gap = q.checked_sub(p)?;
        let tile = if gap == ZTau::TAU {
            Tile::Long
        } else if gap == ZTau::ONE {
            Tile::Short
        } else {
            return Err(Error::UnsupportedGap { at: p.value() });
        };
        if *window == fib {
            debug_assert_eq!(tile, tile_by_internal(p)?);
        }
        points.push(ModelPoint {
            value: p.value(),
            algebraic: p,
            tile,
        });
    }
    if points.len() < extended.iter().filter(|p| p.value() <= hi).count() {
        return Err(Error::UnsupportedGap { at: hi });
    }
    Ok(ModelSetSlice {
        window: *window,
        range_lo: lo,
        range_hi: hi,
        points,
    })
}

/// Tile of a point of `Λ([-1, 1/τ))` from its internal coordinate:
/// long iff `p' ∈ [-1/τ², 1/τ)`.
pub fn tile_by_internal(p: ZTau) -> Result<Tile> {
    let long = Window::new(
        QTau::from_integers(2, -1).checked_neg()?,
        QTau::from_integers(-1, 1),
        true,
        false,
    )?;
    Ok(if long.contains(&p.checked_conj()?.to_qtau())? {
        Tile::Long
    } else {
        Tile::Short
    })
}

/// Lattice coordinates `(u, v)` of `(t, 0) = u·1̃ + v·τ̃`, reduced into `[0, 1)²`.
pub fn torus_coords(t: f64) -> (f64, f64) {
    (unit_frac(FIBONACCI.delta * t), unit_frac(t / SQRT5))
}

// `rem_euclid` can round up to exactly 1 for tiny negative inputs.
pub(crate) fn unit_frac(x: f64) -> f64 {
    let r = x - x.floor();
    if r >= 1.0 {
        0.0
    } else {
        r
    }
}

/// An element `k = (half_a + half_b·τ)/2` of the dual module `½Z[τ]`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Frequency {
    pub half_a: i64,
    pub half_b: i64,
}

impl Frequency {
    pub const ZERO: Frequency = Frequency {
        half_a: 0,
        half_b: 0,
    };

    pub const fn new(half_a: i64, half_b: i64) -> Self {
        Frequency { half_a, half_b }
    }

    /// Numerical value of `k`.
    pub fn value(&self) -> f64 {
        0.5 * (self.half_a as f64 + self.half_b as f64 * TAU)
    }

    /// Numerical value of the conjugate `k'`.
    pub fn conj_value(&self) -> f64 {
        0.5 * (self.half_a as f64 + self.half_b as f64 * TAU_CONJ)
    }

    pub fn to_qtau(&self) -> QTau {
        QTau::from_parts(self.half_a as i128, self.half_b as i128, 2)
            .expect("denominator is 2")
    }

    pub fn is_zero(&self) -> bool {
        self.half_a == 0 && self.half_b == 0
    }

    /// `(k̃ | (t, 0)) = 2δkt`; the character is `exp(2πi·phase)`.
    pub fn phase(&self, t: f64) -> f64 {
        2.0 * FIBONACCI.delta * self.value() * t
    }

    /// `(k̃ | (0, u)) = 2δ'k'u`.
    pub fn internal_phase(&self, u: f64) -> f64 {
        2.0 * FIBONACCI.delta_star * self.conj_value() * u
    }
}

impl core::ops::Neg for Frequency {
    type Output = Frequency;
    fn neg(self) -> Frequency {
        Frequency::new(-self.half_a, -self.half_b)
    }
}

impl fmt::Display for Frequency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let half = |n: i64| -> alloc::string::String {
            match n {
                1 => "1/2".into(),
                -1 => "-1/2".into(),
                n if n % 2 == 0 => alloc::format!("{}", n / 2),
                n => alloc::format!("{n}/2"),
            }
        };
        match (self.half_a, self.half_b) {
            (0, 0) => f.write_str("0"),
            (a, 0) => f.write_str(&half(a)),
            (0, b) => write!(f, "{}τ", half(b)),
            (a, b) if b < 0 => write!(f, "{}-{}τ", half(a), half(-b)),
            (a, b) => write!(f, "{}+{}τ", half(a), half(b)),
        }
    }
}

/// One representative frequency for each class of `½Z[τ] / (N/2)Z[τ]`.
#[derive(Clone, Debug, PartialEq)]
pub struct FrequencySet {
    pub n: u32,
    pub reps: Vec<Frequency>,
}

impl FrequencySet {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn single(k: Frequency) -> Self {
        FrequencySet {
            n: 1,
            reps: alloc::vec![k],
        }
    }
}

/// The `N²` low frequencies used by every approximant of refinement `N`.
///
/// Within a class, the representative has the smallest coefficient
/// magnitude `max(|half_a|, |half_b|)`; remaining ties go to the smaller
/// `|k|` and then to the lexicographically smaller pair. For odd `N` this is
/// the centred residue pair, e.g. the nine values `{0, ±½, ±½τ, ±½±½τ}` for
/// `N = 3`. Reps are sorted by `(half_b, half_a)`-independent order of `k`.
pub fn frequency_representatives(n: u32) -> Result<FrequencySet> {
    if n == 0 {
        return Err(Error::InvalidArgument("refinement N must be at least 1"));
    }
    let n = n as i64;
    let mut reps = Vec::with_capacity((n * n) as usize);
    for p in 0..n {
        for q in 0..n {
            let mut best: Option<(i64, f64, Frequency)> = None;
            for i in -1..=1 {
                for j in -1..=1 {
                    let k = Frequency::new(p + i * n, q + j * n);
                    let norm = k.half_a.abs().max(k.half_b.abs());
                    let size = k.value().abs();
                    let better = match &best {
                        None => true,
                        Some((bn, bs, bk)) => {
                            (norm, size_key(size), (k.half_a, k.half_b))
                                < (*bn, size_key(*bs), (bk.half_a, bk.half_b))
                        }
                    };
                    if better {
                        best = Some((norm, size, k));
                    }
                }
            }
            reps.push(best.expect("nine candidates").2);
        }
    }
    reps.sort_by(|x, y| {
        x.value()
            .total_cmp(&y.value())
            .then((x.half_a, x.half_b).cmp(&(y.half_a, y.half_b)))
    });
    Ok(FrequencySet { n: n as u32, reps })
}

// |k| values that agree to rounding are ties.
fn size_key(size: f64) -> i64 {
    (size * 1e9).round() as i64
}
