//! Exact arithmetic in the ring `Z[τ]` and its rational span `Q[τ]`.
//!
//! Every element is stored as `a + bτ` and all products are reduced with
//! `τ² = τ + 1`. The Galois conjugation `x ↦ x'` sends `τ` to `τ' = 1 - τ`,
//! and the two real embeddings give the physical and internal coordinates of
//! a lattice point of the Fibonacci scheme.

use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, Zero};

use crate::error::{Error, Result};

/// Rationals with 128-bit numerator and denominator, always in lowest terms.
pub type Rational = Ratio<i128>;

/// The golden ratio `(1 + √5) / 2`.
pub const TAU: f64 = 1.618_033_988_749_895;
/// The conjugate `(1 - √5) / 2 = 1 - τ`.
pub const TAU_CONJ: f64 = -0.618_033_988_749_894_9;
pub const SQRT5: f64 = 2.236_067_977_499_79;

/// Numerical constants of the Fibonacci cut-and-project scheme.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SchemeConstants {
    /// `δ = 1/(τ√5) = (5 - √5)/10`; the pairing of `k` with `(t, 0)` is `2δkt`.
    pub delta: f64,
    /// `δ' = 1/(-τ'√5) = (5 + √5)/10`; the pairing of `k` with `(0, u)` is `2δ'k'u`.
    pub delta_star: f64,
    pub tau: f64,
    pub sqrt5: f64,
}

pub const FIBONACCI: SchemeConstants = SchemeConstants {
    delta: 0.276_393_202_250_021,
    delta_star: 0.723_606_797_749_978_9,
    tau: TAU,
    sqrt5: SQRT5,
};

/// A pair of real embeddings `(x, x')` of an element of `Q[τ]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EmbeddedPair {
    pub x: f64,
    pub x_star: f64,
}

/// An element `a + bτ` of `Z[τ]`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZTau {
    pub a: i128,
    pub b: i128,
}

impl ZTau {
    pub const ZERO: ZTau = ZTau { a: 0, b: 0 };
    pub const ONE: ZTau = ZTau { a: 1, b: 0 };
    pub const TAU: ZTau = ZTau { a: 0, b: 1 };

    pub const fn new(a: i128, b: i128) -> Self {
        ZTau { a, b }
    }

    pub fn checked_add(self, rhs: Self) -> Result<Self> {
        Ok(ZTau {
            a: self.a.checked_add(rhs.a).ok_or(Error::Overflow)?,
            b: self.b.checked_add(rhs.b).ok_or(Error::Overflow)?,
        })
    }

    pub fn checked_sub(self, rhs: Self) -> Result<Self> {
        Ok(ZTau {
            a: self.a.checked_sub(rhs.a).ok_or(Error::Overflow)?,
            b: self.b.checked_sub(rhs.b).ok_or(Error::Overflow)?,
        })
    }

    /// `(a + bτ)(c + dτ) = (ac + bd) + (ad + bc + bd)τ`.
    pub fn checked_mul(self, rhs: Self) -> Result<Self> {
        let m = |x: i128, y: i128| x.checked_mul(y).ok_or(Error::Overflow);
        let ac = m(self.a, rhs.a)?;
        let bd = m(self.b, rhs.b)?;
        let ad = m(self.a, rhs.b)?;
        let bc = m(self.b, rhs.a)?;
        let a = ac.checked_add(bd).ok_or(Error::Overflow)?;
        let b = ad
            .checked_add(bc)
            .and_then(|s| s.checked_add(bd))
            .ok_or(Error::Overflow)?;
        Ok(ZTau { a, b })
    }

    pub fn checked_neg(self) -> Result<Self> {
        Ok(ZTau {
            a: self.a.checked_neg().ok_or(Error::Overflow)?,
            b: self.b.checked_neg().ok_or(Error::Overflow)?,
        })
    }

    /// Galois conjugate: `conj(a + bτ) = (a + b) - bτ`.
    pub fn checked_conj(self) -> Result<Self> {
        Ok(ZTau {
            a: self.a.checked_add(self.b).ok_or(Error::Overflow)?,
            b: self.b.checked_neg().ok_or(Error::Overflow)?,
        })
    }

    pub fn conj(self) -> Self {
        self.checked_conj().expect("Z[τ] arithmetic overflow")
    }

    pub fn value(self) -> f64 {
        self.a as f64 + self.b as f64 * TAU
    }

    pub fn conj_value(self) -> f64 {
        self.a as f64 + self.b as f64 * TAU_CONJ
    }

    pub fn embed(self) -> EmbeddedPair {
        EmbeddedPair {
            x: self.value(),
            x_star: self.conj_value(),
        }
    }

    /// Exact sign of the real number `a + bτ`.
    pub fn signum(self) -> Result<Ordering> {
        sign_of(self.a, self.b)
    }

    pub fn to_qtau(self) -> QTau {
        QTau::from(self)
    }
}

impl From<i128> for ZTau {
    fn from(a: i128) -> Self {
        ZTau { a, b: 0 }
    }
}

impl Add for ZTau {
    type Output = ZTau;
    fn add(self, rhs: ZTau) -> ZTau {
        self.checked_add(rhs).expect("Z[τ] arithmetic overflow")
    }
}

impl Sub for ZTau {
    type Output = ZTau;
    fn sub(self, rhs: ZTau) -> ZTau {
        self.checked_sub(rhs).expect("Z[τ] arithmetic overflow")
    }
}

impl Mul for ZTau {
    type Output = ZTau;
    fn mul(self, rhs: ZTau) -> ZTau {
        self.checked_mul(rhs).expect("Z[τ] arithmetic overflow")
    }
}

impl Neg for ZTau {
    type Output = ZTau;
    fn neg(self) -> ZTau {
        self.checked_neg().expect("Z[τ] arithmetic overflow")
    }
}

impl fmt::Display for ZTau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a, self.b) {
            (a, 0) => write!(f, "{a}"),
            (0, b) => write!(f, "{b}τ"),
            (a, b) if b < 0 => write!(f, "{a}-{}τ", -b),
            (a, b) => write!(f, "{a}+{b}τ"),
        }
    }
}

/// An element `a + bτ` of `Q[τ]` with rational coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QTau {
    pub a: Rational,
    pub b: Rational,
}

impl Default for QTau {
    fn default() -> Self {
        QTau::ZERO
    }
}

fn ratio(n: i128, d: i128) -> Result<Rational> {
    if d == 0 {
        return Err(Error::ZeroDenominator);
    }
    // Ratio::new reduces; guard the one negation that can overflow.
    if d == i128::MIN || (d < 0 && n == i128::MIN) {
        return Err(Error::Overflow);
    }
    Ok(Rational::new(n, d))
}

impl QTau {
    pub const ZERO: QTau = QTau {
        a: Ratio::new_raw(0, 1),
        b: Ratio::new_raw(0, 1),
    };

    pub fn new(a: Rational, b: Rational) -> Self {
        QTau { a, b }
    }

    /// `(a_num + b_num τ) / den`.
    pub fn from_parts(a_num: i128, b_num: i128, den: i128) -> Result<Self> {
        Ok(QTau {
            a: ratio(a_num, den)?,
            b: ratio(b_num, den)?,
        })
    }

    pub fn from_integers(a: i128, b: i128) -> Self {
        QTau::from(ZTau::new(a, b))
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        Ok(QTau {
            a: self.a.checked_add(&rhs.a).ok_or(Error::Overflow)?,
            b: self.b.checked_add(&rhs.b).ok_or(Error::Overflow)?,
        })
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        Ok(QTau {
            a: self.a.checked_sub(&rhs.a).ok_or(Error::Overflow)?,
            b: self.b.checked_sub(&rhs.b).ok_or(Error::Overflow)?,
        })
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        let m = |x: &Rational, y: &Rational| x.checked_mul(y).ok_or(Error::Overflow);
        let ac = m(&self.a, &rhs.a)?;
        let bd = m(&self.b, &rhs.b)?;
        let ad = m(&self.a, &rhs.b)?;
        let bc = m(&self.b, &rhs.a)?;
        let a = ac.checked_add(&bd).ok_or(Error::Overflow)?;
        let b = ad
            .checked_add(&bc)
            .and_then(|s| s.checked_add(&bd))
            .ok_or(Error::Overflow)?;
        Ok(QTau { a, b })
    }

    pub fn checked_neg(&self) -> Result<Self> {
        let n = |r: &Rational| {
            r.numer()
                .checked_neg()
                .map(|num| Ratio::new_raw(num, *r.denom()))
                .ok_or(Error::Overflow)
        };
        Ok(QTau {
            a: n(&self.a)?,
            b: n(&self.b)?,
        })
    }

    pub fn checked_conj(&self) -> Result<Self> {
        Ok(QTau {
            a: self.a.checked_add(&self.b).ok_or(Error::Overflow)?,
            b: QTau::ZERO.b.checked_sub(&self.b).ok_or(Error::Overflow)?,
        })
    }

    pub fn conj(&self) -> Self {
        self.checked_conj().expect("Q[τ] arithmetic overflow")
    }

    pub fn value(&self) -> f64 {
        rational_to_f64(&self.a) + rational_to_f64(&self.b) * TAU
    }

    pub fn conj_value(&self) -> f64 {
        rational_to_f64(&self.a) + rational_to_f64(&self.b) * TAU_CONJ
    }

    pub fn embed(&self) -> EmbeddedPair {
        EmbeddedPair {
            x: self.value(),
            x_star: self.conj_value(),
        }
    }

    /// Exact sign of the real number `a + bτ`, by clearing denominators and
    /// comparing `(2A + B)²` with `5B²` when the two terms disagree in sign.
    pub fn signum(&self) -> Result<Ordering> {
        let den = self.a.denom().lcm(self.b.denom());
        let scale = |r: &Rational| {
            (den / r.denom())
                .checked_mul(*r.numer())
                .ok_or(Error::Overflow)
        };
        sign_of(scale(&self.a)?, scale(&self.b)?)
    }

    /// Exact comparison of the real values of `self` and `other`.
    pub fn cmp_value(&self, other: &QTau) -> Result<Ordering> {
        self.checked_sub(other)?.signum()
    }

    /// Exact comparison of `|self|` and `|other|`.
    pub fn cmp_abs(&self, other: &QTau) -> Result<Ordering> {
        let abs = |q: &QTau| -> Result<QTau> {
            match q.signum()? {
                Ordering::Less => q.checked_neg(),
                _ => Ok(*q),
            }
        };
        abs(self)?.cmp_value(&abs(other)?)
    }

    /// Returns the element as a `ZTau` when both coordinates are integers.
    pub fn to_ztau(&self) -> Option<ZTau> {
        if self.a.is_integer() && self.b.is_integer() {
            Some(ZTau::new(self.a.to_integer(), self.b.to_integer()))
        } else {
            None
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl From<ZTau> for QTau {
    fn from(z: ZTau) -> Self {
        QTau {
            a: Rational::from_integer(z.a),
            b: Rational::from_integer(z.b),
        }
    }
}

impl Add for QTau {
    type Output = QTau;
    fn add(self, rhs: QTau) -> QTau {
        self.checked_add(&rhs).expect("Q[τ] arithmetic overflow")
    }
}

impl Sub for QTau {
    type Output = QTau;
    fn sub(self, rhs: QTau) -> QTau {
        self.checked_sub(&rhs).expect("Q[τ] arithmetic overflow")
    }
}

impl Mul for QTau {
    type Output = QTau;
    fn mul(self, rhs: QTau) -> QTau {
        self.checked_mul(&rhs).expect("Q[τ] arithmetic overflow")
    }
}

impl Neg for QTau {
    type Output = QTau;
    fn neg(self) -> QTau {
        self.checked_neg().expect("Q[τ] arithmetic overflow")
    }
}

impl fmt::Display for QTau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "({})τ", self.b)
        } else {
            write!(f, "{}+({})τ", self.a, self.b)
        }
    }
}

fn rational_to_f64(r: &Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Sign of `a + bτ` for integers, using `2(a + bτ) = (2a + b) + b√5`.
fn sign_of(a: i128, b: i128) -> Result<Ordering> {
    let p = a
        .checked_mul(2)
        .and_then(|x| x.checked_add(b))
        .ok_or(Error::Overflow)?;
    let q = b;
    let sp = p.cmp(&0);
    let sq = q.cmp(&0);
    if sp == sq || sq == Ordering::Equal {
        return Ok(sp);
    }
    if sp == Ordering::Equal {
        return Ok(sq);
    }
    // Opposite signs: the larger magnitude wins.
    let p2 = p.checked_mul(p).ok_or(Error::Overflow)?;
    let q2 = q
        .checked_mul(q)
        .and_then(|x| x.checked_mul(5))
        .ok_or(Error::Overflow)?;
    Ok(match p2.cmp(&q2) {
        Ordering::Greater => sp,
        Ordering::Less => sq,
        Ordering::Equal => unreachable!("√5 is irrational"),
    })
}

/// Rational part of `2·k·x`; the Euclidean pairing `(k̃ | x̃)` of the lifts.
///
/// For `k ∈ ½Z[τ]` and `x ∈ Z[τ]` the result is an integer.
pub fn trace_pairing(k: &QTau, x: &QTau) -> Result<Rational> {
    let prod = k.checked_mul(x)?;
    prod.a.checked_add(&prod.a).ok_or(Error::Overflow)
}
