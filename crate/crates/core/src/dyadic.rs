//! Exact dyadic rationals, the ring `Z[1/2]`.
//!
//! A [`Dyadic`] is stored as `mantissa * 2^exponent` with an odd mantissa, so
//! structural equality coincides with numeric equality. Zero is `0 * 2^0`.
//!
//! The text form is `INT` or `INT/2^K` with `K >= 0`. Values with a
//! nonnegative exponent always print as plain integers.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::DyadicParseError;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mantissa: BigInt,
    exponent: i64,
}

impl Dyadic {
    /// Builds the canonical dyadic with value `mantissa * 2^exponent`.
    pub fn new(mantissa: impl Into<BigInt>, exponent: i64) -> Self {
        let mut mantissa = mantissa.into();
        if mantissa.is_zero() {
            return Self::zero();
        }
        let tz = mantissa.trailing_zeros().unwrap_or(0);
        let mut exponent = exponent;
        if tz > 0 {
            mantissa >>= tz;
            exponent = exponent
                .checked_add(tz as i64)
                .expect("dyadic exponent overflow");
        }
        Self { mantissa, exponent }
    }

    pub fn zero() -> Self {
        Self {
            mantissa: BigInt::zero(),
            exponent: 0,
        }
    }

    pub fn one() -> Self {
        Self::from(1)
    }

    pub fn from_int(value: impl Into<BigInt>) -> Self {
        Self::new(value, 0)
    }

    /// `2^k`.
    pub fn pow2(k: i64) -> Self {
        Self {
            mantissa: BigInt::one(),
            exponent: k,
        }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.exponent >= 0
    }

    pub fn signum(&self) -> i32 {
        match self.mantissa.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Self {
        Self {
            mantissa: self.mantissa.abs(),
            exponent: self.exponent,
        }
    }

    /// Multiplies by `2^k`.
    pub fn shl(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self {
            mantissa: self.mantissa.clone(),
            exponent: self
                .exponent
                .checked_add(k)
                .expect("dyadic exponent overflow"),
        }
    }

    /// The exact integer value, if there is one.
    pub fn to_integer(&self) -> Option<BigInt> {
        if self.exponent < 0 {
            None
        } else {
            Some(&self.mantissa << (self.exponent as u64))
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        self.to_integer().and_then(|n| n.to_i64())
    }

    pub fn floor(&self) -> BigInt {
        if self.exponent >= 0 {
            &self.mantissa << (self.exponent as u64)
        } else {
            let denom = BigInt::one() << ((-self.exponent) as u64);
            self.mantissa.div_floor(&denom)
        }
    }

    /// `floor(self / divisor)` for a positive integer divisor.
    pub fn div_floor_int(&self, divisor: u64) -> BigInt {
        assert!(divisor > 0, "divisor must be positive");
        let divisor = BigInt::from(divisor);
        if self.exponent >= 0 {
            (&self.mantissa << (self.exponent as u64)).div_floor(&divisor)
        } else {
            let denom = divisor << ((-self.exponent) as u64);
            self.mantissa.div_floor(&denom)
        }
    }

    /// Smallest `j >= 0` with `self * 2^j` an integer.
    pub fn denominator_log2(&self) -> u64 {
        if self.exponent >= 0 {
            0
        } else {
            (-self.exponent) as u64
        }
    }

    pub fn to_rational(&self) -> BigRational {
        if self.exponent >= 0 {
            BigRational::from_integer(&self.mantissa << (self.exponent as u64))
        } else {
            BigRational::new(
                self.mantissa.clone(),
                BigInt::one() << ((-self.exponent) as u64),
            )
        }
    }

    /// Exact quotient when it is `±2^k`; `None` for any other ratio.
    pub fn power_of_two_ratio(num: &Dyadic, den: &Dyadic) -> Option<(i32, i64)> {
        if num.is_zero() || den.is_zero() {
            return None;
        }
        if num.mantissa.abs() != den.mantissa.abs() {
            return None;
        }
        let sign = num.signum() * den.signum();
        Some((sign, num.exponent - den.exponent))
    }

    fn aligned(a: &Dyadic, b: &Dyadic) -> (BigInt, BigInt, i64) {
        let e = a.exponent.min(b.exponent);
        let ma = &a.mantissa << ((a.exponent - e) as u64);
        let mb = &b.mantissa << ((b.exponent - e) as u64);
        (ma, mb, e)
    }
}

impl Default for Dyadic {
    fn default() -> Self {
        Self::zero()
    }
}

macro_rules! from_int {
    ($($t:ty),*) => {$(
        impl From<$t> for Dyadic {
            fn from(v: $t) -> Self {
                Dyadic::new(BigInt::from(v), 0)
            }
        }
    )*};
}
from_int!(i32, i64, u32, u64, i128);

impl From<BigInt> for Dyadic {
    fn from(v: BigInt) -> Self {
        Dyadic::new(v, 0)
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.signum().cmp(&other.signum()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        if self.exponent == other.exponent {
            return self.mantissa.cmp(&other.mantissa);
        }
        let (a, b, _) = Dyadic::aligned(self, other);
        a.cmp(&b)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add<&Dyadic> for &Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let (a, b, e) = Dyadic::aligned(self, rhs);
        Dyadic::new(a + b, e)
    }
}

impl Sub<&Dyadic> for &Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: &Dyadic) -> Dyadic {
        if rhs.is_zero() {
            return self.clone();
        }
        let (a, b, e) = Dyadic::aligned(self, rhs);
        Dyadic::new(a - b, e)
    }
}

impl Mul<&Dyadic> for &Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: &Dyadic) -> Dyadic {
        if self.is_zero() || rhs.is_zero() {
            return Dyadic::zero();
        }
        // Product of odd mantissas is odd: already canonical.
        Dyadic {
            mantissa: &self.mantissa * &rhs.mantissa,
            exponent: self
                .exponent
                .checked_add(rhs.exponent)
                .expect("dyadic exponent overflow"),
        }
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic {
            mantissa: -&self.mantissa,
            exponent: self.exponent,
        }
    }
}

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic {
            mantissa: -self.mantissa,
            exponent: self.exponent,
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<Dyadic> for Dyadic {
            type Output = Dyadic;
            fn $m(self, rhs: Dyadic) -> Dyadic {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Dyadic> for Dyadic {
            type Output = Dyadic;
            fn $m(self, rhs: &Dyadic) -> Dyadic {
                (&self).$m(rhs)
            }
        }
        impl $tr<Dyadic> for &Dyadic {
            type Output = Dyadic;
            fn $m(self, rhs: Dyadic) -> Dyadic {
                self.$m(&rhs)
            }
        }
    };
}
forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent >= 0 {
            write!(f, "{}", &self.mantissa << (self.exponent as u64))
        } else {
            write!(f, "{}/2^{}", self.mantissa, -self.exponent)
        }
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl FromStr for Dyadic {
    type Err = DyadicParseError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let err = || DyadicParseError(text.to_string());
        // Accept the typographic minus sign as well as '-'.
        let normalized;
        let s = if let Some(rest) = text.strip_prefix('\u{2212}') {
            normalized = format!("-{rest}");
            normalized.as_str()
        } else {
            text
        };
        let (int_part, shift) = match s.split_once('/') {
            None => (s, 0u64),
            Some((num, den)) => {
                let k = den.strip_prefix("2^").ok_or_else(err)?;
                if k.is_empty() || !k.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(err());
                }
                (num, k.parse::<u64>().map_err(|_| err())?)
            }
        };
        let digits = int_part
            .strip_prefix('-')
            .or_else(|| int_part.strip_prefix('+'))
            .unwrap_or(int_part);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let mantissa: BigInt = int_part.parse().map_err(|_| err())?;
        let shift = i64::try_from(shift).map_err(|_| err())?;
        Ok(Dyadic::new(mantissa, -shift))
    }
}

/// A reduced positive rational, the value group of the growth-rate invariant.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct PosRational {
    numerator: u64,
    denominator: u64,
}

impl PosRational {
    /// Reduces `numerator / denominator`. Both must be positive.
    pub fn new(numerator: u64, denominator: u64) -> Option<Self> {
        if numerator == 0 || denominator == 0 {
            return None;
        }
        let g = numerator.gcd(&denominator);
        Some(Self {
            numerator: numerator / g,
            denominator: denominator / g,
        })
    }

    pub fn one() -> Self {
        Self {
            numerator: 1,
            denominator: 1,
        }
    }

    pub fn numerator(&self) -> u64 {
        self.numerator
    }

    pub fn denominator(&self) -> u64 {
        self.denominator
    }

    pub fn recip(&self) -> Self {
        Self {
            numerator: self.denominator,
            denominator: self.numerator,
        }
    }
}

impl Mul for PosRational {
    type Output = PosRational;
    fn mul(self, rhs: PosRational) -> PosRational {
        let g1 = self.numerator.gcd(&rhs.denominator);
        let g2 = rhs.numerator.gcd(&self.denominator);
        let num = (self.numerator / g1)
            .checked_mul(rhs.numerator / g2)
            .expect("rational overflow");
        let den = (self.denominator / g2)
            .checked_mul(rhs.denominator / g1)
            .expect("rational overflow");
        PosRational {
            numerator: num,
            denominator: den,
        }
    }
}

impl fmt::Display for PosRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator, self.denominator)
    }
}

impl FromStr for PosRational {
    type Err = DyadicParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || DyadicParseError(s.to_string());
        let (n, d) = s.split_once('/').unwrap_or((s, "1"));
        let n: u64 = n.parse().map_err(|_| err())?;
        let d: u64 = d.parse().map_err(|_| err())?;
        PosRational::new(n, d).ok_or_else(err)
    }
}
