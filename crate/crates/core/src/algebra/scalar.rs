use std::cmp::Ordering;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScalarMode {
    Integer,
    Rational,
    Complex,
}

impl ScalarMode {
    pub fn parse(s: &str) -> Option<ScalarMode> {
        match s {
            "integer" | "int" => Some(ScalarMode::Integer),
            "rational" => Some(ScalarMode::Rational),
            "complex" | "float" => Some(ScalarMode::Complex),
            _ => None,
        }
    }
}

/// Coefficient ring of a group-algebra element.
pub trait Scalar: Clone + Debug + PartialEq + Send + Sync + 'static {
    const MODE: ScalarMode;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn conj(&self) -> Self;
    /// `|x|^2`, in the same ring.
    fn abs_sq(&self) -> Self;
    /// `|x|`. Exact for the real modes.
    fn modulus(&self) -> Self;
    fn is_nonneg_real(&self) -> bool;
    fn to_complex(&self) -> Complex64;
    fn render(&self) -> String;
    fn parse(s: &str) -> Option<Self>;
    /// `p / q`, when representable.
    fn from_ratio(p: i64, q: i64) -> Option<Self>;
    /// Order of the real parts (exact in the real modes).
    fn cmp_real(&self, other: &Self) -> Option<Ordering>;

    fn to_f64(&self) -> f64 {
        self.to_complex().re
    }
}

impl Scalar for BigInt {
    const MODE: ScalarMode = ScalarMode::Integer;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn abs_sq(&self) -> Self {
        self * self
    }
    fn modulus(&self) -> Self {
        self.abs()
    }
    fn is_nonneg_real(&self) -> bool {
        !self.is_negative()
    }
    fn to_complex(&self) -> Complex64 {
        Complex64::new(ToPrimitive::to_f64(self).unwrap_or(f64::NAN), 0.0)
    }
    fn render(&self) -> String {
        self.to_string()
    }
    fn from_ratio(p: i64, q: i64) -> Option<Self> {
        (q != 0 && p % q == 0).then(|| BigInt::from(p / q))
    }
    fn cmp_real(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
    fn parse(s: &str) -> Option<Self> {
        s.trim().parse().ok()
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

impl Scalar for BigRational {
    const MODE: ScalarMode = ScalarMode::Rational;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn abs_sq(&self) -> Self {
        self * self
    }
    fn modulus(&self) -> Self {
        self.abs()
    }
    fn is_nonneg_real(&self) -> bool {
        !self.is_negative()
    }
    fn to_complex(&self) -> Complex64 {
        Complex64::new(Scalar::to_f64(self), 0.0)
    }
    fn render(&self) -> String {
        self.to_string()
    }
    fn from_ratio(p: i64, q: i64) -> Option<Self> {
        (q != 0).then(|| BigRational::new(BigInt::from(p), BigInt::from(q)))
    }
    fn cmp_real(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
    fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        if let Ok(r) = s.parse::<BigRational>() {
            return Some(r);
        }
        // Finite decimals are exact rationals too.
        let (int, frac) = s.split_once('.')?;
        let neg = int.starts_with('-');
        let digits = format!("{}{}", int.trim_start_matches(['-', '+']), frac);
        let num: BigInt = digits.parse().ok()?;
        let den = num_traits::pow(BigInt::from(10), frac.len());
        let r = BigRational::new(num, den);
        Some(if neg { -r } else { r })
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

impl Scalar for Complex64 {
    const MODE: ScalarMode = ScalarMode::Complex;

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_i64(v: i64) -> Self {
        Complex64::new(v as f64, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn abs_sq(&self) -> Self {
        Complex64::new(self.norm_sqr(), 0.0)
    }
    fn modulus(&self) -> Self {
        Complex64::new(self.norm(), 0.0)
    }
    fn is_nonneg_real(&self) -> bool {
        self.im == 0.0 && self.re >= 0.0
    }
    fn to_complex(&self) -> Complex64 {
        *self
    }
    fn render(&self) -> String {
        if self.im == 0.0 {
            format!("{}", self.re)
        } else if self.im < 0.0 {
            format!("{}-{}i", self.re, -self.im)
        } else {
            format!("{}+{}i", self.re, self.im)
        }
    }
    fn from_ratio(p: i64, q: i64) -> Option<Self> {
        (q != 0).then(|| Complex64::new(p as f64 / q as f64, 0.0))
    }
    fn cmp_real(&self, other: &Self) -> Option<Ordering> {
        self.re.partial_cmp(&other.re)
    }
    fn parse(s: &str) -> Option<Self> {
        parse_complex(s)
    }
}

/// Accepts `a`, `bi`, `a+bi`, `a-bi` (with `i` alone meaning `1i`).
fn parse_complex(s: &str) -> Option<Complex64> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return None;
    }
    let Some(body) = s.strip_suffix('i') else {
        return s.parse::<f64>().ok().map(|re| Complex64::new(re, 0.0));
    };
    // Split at the last sign that is not the leading one or an exponent sign.
    let bytes = body.as_bytes();
    let mut split = None;
    for i in (1..bytes.len()).rev() {
        if (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E') {
            split = Some(i);
            break;
        }
    }
    let imag = |t: &str| -> Option<f64> {
        match t {
            "" | "+" => Some(1.0),
            "-" => Some(-1.0),
            _ => t.parse().ok(),
        }
    };
    match split {
        Some(i) => Some(Complex64::new(body[..i].parse().ok()?, imag(&body[i..])?)),
        None => Some(Complex64::new(0.0, imag(body)?)),
    }
}
