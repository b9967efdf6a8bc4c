//! Exact rational scalars.
//!
//! [`Rational`] is the only scalar type in this crate. Values are always
//! stored reduced (gcd of numerator and denominator is 1) with a positive
//! denominator, so equality is structural.
//!
//! Internally a value lives in one of two representations:
//!
//! - `Small`: numerator and denominator fit in `i64`. All arithmetic runs
//!   in `i128` intermediates, which cannot overflow for reduced `i64`
//!   operands.
//! - `Big`: arbitrary precision via [`num_rational::BigRational`], used
//!   only when a value does not fit the small form.
//!
//! Every operation renormalizes to the small form when possible, so the
//! representation is canonical and derived equality on the small fields is
//! sound.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Debug)]
enum Repr {
    Small { num: i64, den: i64 },
    Big(Box<BigRational>),
}

/// An arbitrary-precision rational number, always reduced, denominator > 0.
#[derive(Clone, Debug)]
pub struct Rational {
    repr: Repr,
}

fn gcd_i128(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Rational {
    /// Builds `num/den`, reducing and normalizing signs. Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "rational with zero denominator");
        Self::from_i128(num as i128, den as i128)
    }

    pub fn from_int(n: i64) -> Self {
        Rational {
            repr: Repr::Small { num: n, den: 1 },
        }
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    fn from_i128(num: i128, den: i128) -> Self {
        assert!(den != 0, "rational with zero denominator");
        let sign = if den < 0 { -1 } else { 1 };
        let g = gcd_i128(num, den);
        let (n, d) = if g == 0 {
            (0, 1)
        } else {
            (sign * num / g, sign * den / g)
        };
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(num), Ok(den)) => Rational {
                repr: Repr::Small { num, den },
            },
            _ => Rational {
                repr: Repr::Big(Box::new(BigRational::new(BigInt::from(n), BigInt::from(d)))),
            },
        }
    }

    /// Builds a value from big integers; reduces and demotes when it fits.
    pub fn from_bigints(num: BigInt, den: BigInt) -> Self {
        assert!(!den.is_zero(), "rational with zero denominator");
        Self::from_big(BigRational::new(num, den))
    }

    fn from_big(r: BigRational) -> Self {
        // BigRational::new already reduced and fixed the sign.
        if let (Some(n), Some(d)) = (r.numer().to_i64(), r.denom().to_i64()) {
            Rational {
                repr: Repr::Small { num: n, den: d },
            }
        } else {
            Rational {
                repr: Repr::Big(Box::new(r)),
            }
        }
    }

    fn to_big(&self) -> BigRational {
        match &self.repr {
            Repr::Small { num, den } => {
                BigRational::new_raw(BigInt::from(*num), BigInt::from(*den))
            }
            Repr::Big(b) => (**b).clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.repr, Repr::Small { num: 0, .. })
    }

    pub fn is_one(&self) -> bool {
        matches!(self.repr, Repr::Small { num: 1, den: 1 })
    }

    pub fn is_negative(&self) -> bool {
        match &self.repr {
            Repr::Small { num, .. } => *num < 0,
            Repr::Big(b) => b.is_negative(),
        }
    }

    pub fn is_integer(&self) -> bool {
        match &self.repr {
            Repr::Small { den, .. } => *den == 1,
            Repr::Big(b) => b.is_integer(),
        }
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        match &self.repr {
            Repr::Small { num, den } => Self::from_i128(*den as i128, *num as i128),
            Repr::Big(b) => Self::from_big(b.recip()),
        }
    }

    /// Integer power; negative exponents invert (panics on zero base).
    pub fn pow(&self, exp: i64) -> Self {
        if exp == 0 {
            return Self::one();
        }
        let base = if exp < 0 { self.recip() } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..exp.unsigned_abs() {
            acc = &acc * &base;
        }
        acc
    }

    pub fn numerator(&self) -> BigInt {
        match &self.repr {
            Repr::Small { num, .. } => BigInt::from(*num),
            Repr::Big(b) => b.numer().clone(),
        }
    }

    pub fn denominator(&self) -> BigInt {
        match &self.repr {
            Repr::Small { den, .. } => BigInt::from(*den),
            Repr::Big(b) => b.denom().clone(),
        }
    }
}

impl PartialEq for Rational {
    fn eq(&self, other: &Self) -> bool {
        // Canonical representation: equal values share a representation.
        match (&self.repr, &other.repr) {
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => a == c && b == d,
            (Repr::Big(a), Repr::Big(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Rational {}

impl Hash for Rational {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.numerator().hash(state);
        self.denominator().hash(state);
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.repr, &other.repr) {
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => {
                (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

macro_rules! small_or_big {
    ($lhs:expr, $rhs:expr, $small:expr, $big:expr) => {
        match (&$lhs.repr, &$rhs.repr) {
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) =>
            {
                #[allow(clippy::redundant_closure_call)]
                $small(*a as i128, *b as i128, *c as i128, *d as i128)
            }
            _ =>
            {
                #[allow(clippy::redundant_closure_call)]
                $big($lhs.to_big(), $rhs.to_big())
            }
        }
    };
}

impl Add for &Rational {
    type Output = Rational;
    fn add(self, rhs: &Rational) -> Rational {
        small_or_big!(
            self,
            rhs,
            |a: i128, b: i128, c: i128, d: i128| {
                match (a * d).checked_add(c * b) {
                    Some(num) => Rational::from_i128(num, b * d),
                    None => Rational::from_big(self.to_big() + rhs.to_big()),
                }
            },
            |x: BigRational, y: BigRational| Rational::from_big(x + y)
        )
    }
}

impl Sub for &Rational {
    type Output = Rational;
    fn sub(self, rhs: &Rational) -> Rational {
        small_or_big!(
            self,
            rhs,
            |a: i128, b: i128, c: i128, d: i128| {
                match (a * d).checked_sub(c * b) {
                    Some(num) => Rational::from_i128(num, b * d),
                    None => Rational::from_big(self.to_big() - rhs.to_big()),
                }
            },
            |x: BigRational, y: BigRational| Rational::from_big(x - y)
        )
    }
}

impl Mul for &Rational {
    type Output = Rational;
    fn mul(self, rhs: &Rational) -> Rational {
        small_or_big!(
            self,
            rhs,
            |a: i128, b: i128, c: i128, d: i128| Rational::from_i128(a * c, b * d),
            |x: BigRational, y: BigRational| Rational::from_big(x * y)
        )
    }
}

impl Div for &Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        small_or_big!(
            self,
            rhs,
            |a: i128, b: i128, c: i128, d: i128| Rational::from_i128(a * d, b * c),
            |x: BigRational, y: BigRational| Rational::from_big(x / y)
        )
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        match &self.repr {
            Repr::Small { num, den } => Rational::from_i128(-(*num as i128), *den as i128),
            Repr::Big(b) => Rational::from_big(-(**b).clone()),
        }
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                (&self).$method(rhs)
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        -&self
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        *self = &*self - rhs;
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<i32> for Rational {
    fn from(n: i32) -> Self {
        Self::from_int(n as i64)
    }
}

impl From<u32> for Rational {
    fn from(n: u32) -> Self {
        Self::from_int(n as i64)
    }
}

impl fmt::Display for Rational {
    /// Always prints `num/den`, e.g. `-1/1`, `3/2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Small { num, den } => write!(f, "{}/{}", num, den),
            Repr::Big(b) => write!(f, "{}/{}", b.numer(), b.denom()),
        }
    }
}

/// Error produced when parsing a rational literal fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseRationalError {
    pub message: String,
}

impl fmt::Display for ParseRationalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.message)
    }
}

impl std::error::Error for ParseRationalError {}

impl FromStr for Rational {
    type Err = ParseRationalError;

    /// Accepts `num/den` or a bare integer. No floats, no whitespace.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |m: &str| ParseRationalError {
            message: format!("{m}: {s:?}"),
        };
        let (num_str, den_str) = match s.split_once('/') {
            Some((n, d)) => (n, d),
            None => (s, "1"),
        };
        let num = BigInt::from_str(num_str).map_err(|_| err("invalid numerator"))?;
        let den = BigInt::from_str(den_str).map_err(|_| err("invalid denominator"))?;
        if den.is_zero() {
            return Err(err("zero denominator"));
        }
        Ok(Rational::from_bigints(num, den))
    }
}

impl serde::Serialize for Rational {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for Rational {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `n!` as a rational.
pub fn factorial(n: u64) -> Rational {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    Rational::from_bigints(acc, BigInt::one())
}

/// Generalized binomial coefficient `C(x, k)` for integer `x` (possibly
/// negative): `x (x-1) ... (x-k+1) / k!`.
pub fn binomial(x: i64, k: u64) -> Rational {
    let mut num = BigInt::one();
    for j in 0..k {
        num *= BigInt::from(x - j as i64);
    }
    let mut den = BigInt::one();
    for j in 2..=k {
        den *= BigInt::from(j);
    }
    Rational::from_bigints(num, den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn reduces_and_normalizes_sign() {
        assert_eq!(Rational::new(2, 4), Rational::new(1, 2));
        assert_eq!(Rational::new(3, -6), Rational::new(-1, 2));
        assert_eq!(Rational::new(-3, -6), Rational::new(1, 2));
        assert_eq!(Rational::new(0, -7), Rational::zero());
        assert_eq!(Rational::new(0, 5).to_string(), "0/1");
    }

    #[test]
    fn arithmetic_basics() {
        let a = Rational::new(2, 3);
        let b = Rational::new(1, 3);
        assert_eq!(&a + &b, Rational::one());
        assert_eq!(&a - &b, Rational::new(1, 3));
        assert_eq!(&a * &b, Rational::new(2, 9));
        assert_eq!(&a / &b, Rational::from_int(2));
        assert_eq!(-&a, Rational::new(-2, 3));
        assert_eq!(a.recip(), Rational::new(3, 2));
        assert_eq!(Rational::new(-2, 3).pow(3), Rational::new(-8, 27));
        assert_eq!(Rational::new(2, 1).pow(-2), Rational::new(1, 4));
    }

    #[test]
    fn promotes_to_big_and_demotes_back() {
        let big = factorial(40); // far beyond i64
        assert!(big > Rational::from_int(i64::MAX));
        let ratio = &big / &factorial(39);
        assert_eq!(ratio, Rational::from_int(40));
        let back = &big - &big;
        assert_eq!(back, Rational::zero());
        // overflow in the small addition path promotes correctly
        let huge = Rational::new(i64::MAX, 1);
        let sum = &huge + &huge;
        assert_eq!(
            sum,
            Rational::from_bigints(BigInt::from(i64::MAX) * 2, BigInt::one())
        );
    }

    #[test]
    fn display_and_parse_round_trip() {
        for s in ["0/1", "-1/1", "3/2", "-128/9"] {
            let r: Rational = s.parse().unwrap();
            assert_eq!(r.to_string(), s);
        }
        assert_eq!("7".parse::<Rational>().unwrap(), Rational::from_int(7));
        assert_eq!("-4/6".parse::<Rational>().unwrap(), Rational::new(-2, 3));
        assert!("1/0".parse::<Rational>().is_err());
        assert!("a/2".parse::<Rational>().is_err());
        assert!("1.5".parse::<Rational>().is_err());
        assert!("".parse::<Rational>().is_err());
    }

    #[test]
    fn ordering_is_numeric() {
        let mut v = vec![
            Rational::new(1, 2),
            Rational::new(-3, 2),
            Rational::zero(),
            Rational::new(2, 3),
        ];
        v.sort();
        assert_eq!(
            v,
            vec![
                Rational::new(-3, 2),
                Rational::zero(),
                Rational::new(1, 2),
                Rational::new(2, 3),
            ]
        );
    }

    #[test]
    fn factorial_and_binomial() {
        assert_eq!(factorial(0), Rational::one());
        assert_eq!(factorial(3), Rational::from_int(6));
        assert_eq!(factorial(5), Rational::from_int(120));
        assert_eq!(binomial(5, 2), Rational::from_int(10));
        assert_eq!(binomial(-1, 3), Rational::from_int(-1));
        assert_eq!(binomial(-2, 3), Rational::from_int(-4));
        assert_eq!(binomial(3, 0), Rational::one());
        assert_eq!(binomial(2, 5), Rational::zero());
        // C(-n, k) = (-1)^k C(n+k-1, k)
        assert_eq!(binomial(-3, 4), binomial(6, 4));
    }

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (any::<i32>(), 1..10_000i32).prop_map(|(n, d)| Rational::new(n as i64, d as i64))
    }

    proptest! {
        #[test]
        fn field_axioms_on_samples(a in arb_rational(), b in arb_rational(), c in arb_rational()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&(&a - &b) + &b, a.clone());
        }

        #[test]
        fn matches_bigrational_reference(a in arb_rational(), b in arb_rational()) {
            let big = BigRational::new(a.numerator(), a.denominator())
                * BigRational::new(b.numerator(), b.denominator());
            let ours = &a * &b;
            prop_assert_eq!(ours.numerator(), big.numer().clone());
            prop_assert_eq!(ours.denominator(), big.denom().clone());
        }

        #[test]
        fn parse_display_identity(a in arb_rational()) {
            let s = a.to_string();
            prop_assert_eq!(s.parse::<Rational>().unwrap(), a);
        }
    }
}
