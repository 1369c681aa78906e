//! Exact Gaussian rationals `a + b·i` with `a, b ∈ ℚ`.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Arbitrary-precision rationals, the real and imaginary parts of every scalar.
pub type Rational = BigRational;

/// Exact element of ℚ(i). Both parts are kept reduced by `BigRational`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_int(re: i64, im: i64) -> Self {
        GaussianRational::new(BigRational::from_integer(re.into()), BigRational::from_integer(im.into()))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        GaussianRational::real(BigRational::new(num.into(), den.into()))
    }

    pub fn real(re: BigRational) -> Self {
        GaussianRational { re, im: BigRational::zero() }
    }

    pub fn i() -> Self {
        GaussianRational::from_int(0, 1)
    }

    pub fn conj(&self) -> Self {
        GaussianRational { re: self.re.clone(), im: -&self.im }
    }

    /// `|z|² = re² + im²`.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn inv(&self) -> Option<Self> {
        let n = self.norm_sqr();
        if n.is_zero() {
            return None;
        }
        Some(GaussianRational { re: &self.re / &n, im: -&self.im / &n })
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = GaussianRational::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    /// Least common multiple of the two denominators.
    pub fn denom_lcm(&self) -> BigInt {
        num_integer::Integer::lcm(self.re.denom(), self.im.denom())
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        GaussianRational { re: BigRational::zero(), im: BigRational::zero() }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        GaussianRational { re: BigRational::one(), im: BigRational::zero() }
    }
}

impl From<i64> for GaussianRational {
    fn from(v: i64) -> Self {
        GaussianRational::from_int(v, 0)
    }
}

impl From<BigRational> for GaussianRational {
    fn from(v: BigRational) -> Self {
        GaussianRational::real(v)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, rhs: GaussianRational) -> GaussianRational {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, rhs: &'a GaussianRational) -> GaussianRational {
                (&self).$m(rhs)
            }
        }
    };
}

impl<'b> Add<&'b GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &'b GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl<'b> Sub<&'b GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &'b GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl<'b> Mul<&'b GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &'b GaussianRational) -> GaussianRational {
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussianRational::real(&self.re * &rhs.re);
        }
        GaussianRational { re: &self.re * &rhs.re - &self.im * &rhs.im, im: &self.re * &rhs.im + &self.im * &rhs.re }
    }
}

impl<'b> Div<&'b GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    /// Panics on division by zero, like the rational division it wraps.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &'b GaussianRational) -> GaussianRational {
        let inv = rhs.inv().expect("division by zero Gaussian rational");
        self * &inv
    }
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -self.re, im: -self.im }
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -&self.re, im: -&self.im }
    }
}

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, rhs: &GaussianRational) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&GaussianRational> for GaussianRational {
    fn mul_assign(&mut self, rhs: &GaussianRational) {
        *self = &*self * rhs;
    }
}

/// Renders a rational as `p` or `p/q`.
pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p` or `p/q` with an optional sign. Whitespace is not allowed inside.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let valid = |t: &str, signed: bool| {
        let t = if signed { t.strip_prefix(['+', '-']).unwrap_or(t) } else { t };
        !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit())
    };
    if !valid(num, true) || !valid(den, false) {
        return None;
    }
    let num = BigInt::from_str(num.strip_prefix('+').unwrap_or(num)).ok()?;
    let den = BigInt::from_str(den).ok()?;
    if den.is_zero() {
        return None;
    }
    Some(BigRational::new(num, den))
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", format_rational(&self.re)),
            (true, false) => write!(f, "{} i", format_rational(&self.im)),
            (false, false) => {
                let sign = if self.im.is_negative() { '-' } else { '+' };
                write!(f, "{} {} {} i", format_rational(&self.re), sign, format_rational(&self.im.abs()))
            }
        }
    }
}

/// Accepts the scalar syntax of structure files: `r`, `r i`, `i`, `-i`, `r + s i`, `r - s i`.
impl FromStr for GaussianRational {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let glued = s.chars().collect::<Vec<_>>();
        for w in glued.windows(3) {
            if w[0].is_ascii_digit() && w[1].is_whitespace() && w[2].is_ascii_digit() {
                return Err(format!("malformed scalar `{}`", s.trim()));
            }
        }
        let compact: String =
            s.chars().filter(|c| !c.is_whitespace()).map(|c| if c == '−' { '-' } else { c }).collect();
        if compact.is_empty() {
            return Err("empty scalar".into());
        }
        let bad = || format!("malformed scalar `{}`", s.trim());
        let Some(body) = compact.strip_suffix('i') else {
            return parse_rational(&compact).map(GaussianRational::real).ok_or_else(bad);
        };
        // split `re±im` at the last sign that is not the leading one
        let split = body.char_indices().skip(1).filter(|(_, c)| *c == '+' || *c == '-').map(|(k, _)| k).last();
        let (re, im) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("0", body),
        };
        let im = match im {
            "" | "+" => BigRational::one(),
            "-" => -BigRational::one(),
            other => parse_rational(other).ok_or_else(bad)?,
        };
        let re = parse_rational(re).ok_or_else(bad)?;
        Ok(GaussianRational { re, im })
    }
}

impl Serialize for GaussianRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("GaussianRational", 2)?;
        st.serialize_field("re", &format_rational(&self.re))?;
        st.serialize_field("im", &format_rational(&self.im))?;
        st.end()
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RationalRepr {
    Int(i64),
    Text(String),
}

impl RationalRepr {
    fn into_rational<E: serde::de::Error>(self) -> Result<BigRational, E> {
        match self {
            RationalRepr::Int(v) => Ok(BigRational::from_integer(v.into())),
            RationalRepr::Text(t) => parse_rational(&t).ok_or_else(|| E::custom(format!("bad rational `{t}`"))),
        }
    }
}

impl<'de> Deserialize<'de> for GaussianRational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            re: RationalRepr,
            #[serde(default)]
            im: Option<RationalRepr>,
        }
        let r = Repr::deserialize(deserializer)?;
        let re = r.re.into_rational()?;
        let im = match r.im {
            Some(v) => v.into_rational()?,
            None => BigRational::zero(),
        };
        Ok(GaussianRational { re, im })
    }
}
