use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

/// Arbitrary-precision syllable exponent.
///
/// Values that fit in an `i64` are stored inline; anything larger spills to a
/// [`BigInt`]. The representation is canonical (`Big` never holds a value that
/// fits in `i64`), so derived equality and hashing are value-based.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Exponent {
    Small(i64),
    Big(Box<BigInt>),
}

impl Exponent {
    pub const ZERO: Exponent = Exponent::Small(0);
    pub const ONE: Exponent = Exponent::Small(1);

    pub fn from_big(value: BigInt) -> Self {
        match value.to_i64() {
            Some(v) => Exponent::Small(v),
            None => Exponent::Big(Box::new(value)),
        }
    }

    pub fn to_big(&self) -> BigInt {
        match self {
            Exponent::Small(v) => BigInt::from(*v),
            Exponent::Big(b) => (**b).clone(),
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Exponent::Small(v) => Some(*v),
            Exponent::Big(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Exponent::Small(0))
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Exponent::Small(v) => *v < 0,
            Exponent::Big(b) => b.is_negative(),
        }
    }

    pub fn signum(&self) -> i64 {
        match self {
            Exponent::Small(v) => v.signum(),
            Exponent::Big(b) => {
                if b.is_negative() {
                    -1
                } else {
                    1
                }
            }
        }
    }

    pub fn add(&self, other: &Exponent) -> Exponent {
        if let (Exponent::Small(a), Exponent::Small(b)) = (self, other) {
            if let Some(s) = a.checked_add(*b) {
                return Exponent::Small(s);
            }
        }
        Exponent::from_big(self.to_big() + other.to_big())
    }

    pub fn neg(&self) -> Exponent {
        match self {
            Exponent::Small(v) => match v.checked_neg() {
                Some(n) => Exponent::Small(n),
                None => Exponent::from_big(-BigInt::from(*v)),
            },
            Exponent::Big(b) => Exponent::from_big(-(**b).clone()),
        }
    }

    /// `|self|` as a `u64` if it fits.
    pub fn abs_u64(&self) -> Option<u64> {
        match self {
            Exponent::Small(v) => Some(v.unsigned_abs()),
            Exponent::Big(b) => b.abs().to_u64(),
        }
    }

    /// Magnitude as a float (saturating to infinity for huge values).
    pub fn abs_f64(&self) -> f64 {
        match self {
            Exponent::Small(v) => (*v as f64).abs(),
            Exponent::Big(b) => b.abs().to_f64().unwrap_or(f64::INFINITY),
        }
    }

    pub fn cmp_abs(&self, other: &Exponent) -> Ordering {
        match (self, other) {
            (Exponent::Small(a), Exponent::Small(b)) => a.unsigned_abs().cmp(&b.unsigned_abs()),
            _ => self.to_big().abs().cmp(&other.to_big().abs()),
        }
    }

    /// Reduces modulo `order` into the symmetric residue range
    /// `(-order/2, order/2]`. Returns zero for multiples of `order`.
    pub fn reduce_mod(&self, order: u64) -> Exponent {
        debug_assert!(order >= 2);
        let m = order as i128;
        let r = match self {
            Exponent::Small(v) => (*v as i128).rem_euclid(m),
            Exponent::Big(b) => {
                let r = ((&**b % BigInt::from(order)) + BigInt::from(order)) % BigInt::from(order);
                r.to_i128().expect("residue below modulus")
            }
        };
        let r = if 2 * r > m { r - m } else { r };
        Exponent::Small(r as i64)
    }

    /// Multiplies by a small integer (used for powers of single syllables).
    pub fn scale(&self, k: i64) -> Exponent {
        if let Exponent::Small(v) = self {
            if let Some(p) = v.checked_mul(k) {
                return Exponent::Small(p);
            }
        }
        Exponent::from_big(self.to_big() * BigInt::from(k))
    }
}

/// Shortlex order on integers: `1 < -1 < 2 < -2 < ...`, with `0` first.
impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_abs(other)
            .then_with(|| self.is_negative().cmp(&other.is_negative()))
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<i64> for Exponent {
    fn from(v: i64) -> Self {
        Exponent::Small(v)
    }
}

impl From<BigInt> for Exponent {
    fn from(v: BigInt) -> Self {
        Exponent::from_big(v)
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Small(v) => write!(f, "{v}"),
            Exponent::Big(b) => write!(f, "{b}"),
        }
    }
}

impl fmt::Debug for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Zero for Exponent {
    fn zero() -> Self {
        Exponent::ZERO
    }

    fn is_zero(&self) -> bool {
        Exponent::is_zero(self)
    }
}

impl std::ops::Add for Exponent {
    type Output = Exponent;

    fn add(self, rhs: Self) -> Self::Output {
        Exponent::add(&self, &rhs)
    }
}
