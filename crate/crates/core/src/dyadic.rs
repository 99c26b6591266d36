//! Exact dyadic rationals `num · 2^(-k)`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

/// `num / 2^k` in lowest terms: `k = 0` or `num` is odd; zero is `0 / 2^0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DyadicRational {
    num: BigInt,
    k: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse `{0}` as a dyadic rational (expected `num/2^k`, `num/den` with den a power of two, or an integer)")]
pub struct ParseDyadicError(String);

impl DyadicRational {
    /// `num / 2^k`, reduced.
    pub fn new(num: impl Into<BigInt>, k: u64) -> Self {
        let mut num = num.into();
        if num.is_zero() {
            return DyadicRational { num, k: 0 };
        }
        let shift = num.trailing_zeros().unwrap_or(0).min(k);
        num >>= shift;
        DyadicRational { num, k: k - shift }
    }

    pub fn zero() -> Self {
        DyadicRational {
            num: BigInt::zero(),
            k: 0,
        }
    }

    pub fn one() -> Self {
        DyadicRational {
            num: BigInt::one(),
            k: 0,
        }
    }

    pub fn numerator(&self) -> &BigInt {
        &self.num
    }

    /// The `k` in `num / 2^k`.
    pub fn exponent(&self) -> u64 {
        self.k
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn denominator(&self) -> BigInt {
        BigInt::one() << self.k
    }

    /// Exact `num/den` form with the denominator written out, e.g. `15/512`.
    pub fn to_fraction_string(&self) -> String {
        if self.k == 0 {
            self.num.to_string()
        } else {
            format!("{}/{}", self.num, self.denominator())
        }
    }

    pub fn to_ratio(&self) -> BigRational {
        BigRational::new(self.num.clone(), self.denominator())
    }

    /// Nearest `f64`, exact whenever the value is representable.
    pub fn to_f64(&self) -> f64 {
        // Shift the numerator down to 64 significant bits first so huge values
        // do not saturate before scaling.
        let bits = self.num.bits();
        let drop = bits.saturating_sub(64);
        let head = (&self.num >> drop).to_f64().unwrap_or(f64::NAN);
        let exp = drop as i64 - self.k as i64;
        head * 2f64.powi(exp.clamp(i32::MIN as i64, i32::MAX as i64) as i32)
    }

    fn aligned(&self, other: &Self) -> (BigInt, BigInt, u64) {
        let k = self.k.max(other.k);
        (&self.num << (k - self.k), &other.num << (k - other.k), k)
    }
}

impl Default for DyadicRational {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for DyadicRational {
    fn from(v: i64) -> Self {
        Self::new(v, 0)
    }
}

impl From<BigInt> for DyadicRational {
    fn from(v: BigInt) -> Self {
        Self::new(v, 0)
    }
}

impl Add for &DyadicRational {
    type Output = DyadicRational;
    fn add(self, rhs: &DyadicRational) -> DyadicRational {
        let (a, b, k) = self.aligned(rhs);
        DyadicRational::new(a + b, k)
    }
}

impl Sub for &DyadicRational {
    type Output = DyadicRational;
    fn sub(self, rhs: &DyadicRational) -> DyadicRational {
        let (a, b, k) = self.aligned(rhs);
        DyadicRational::new(a - b, k)
    }
}

impl Mul for &DyadicRational {
    type Output = DyadicRational;
    fn mul(self, rhs: &DyadicRational) -> DyadicRational {
        // product of odd numerators stays odd, so no reduction is needed
        DyadicRational::new(&self.num * &rhs.num, self.k + rhs.k)
    }
}

impl Neg for &DyadicRational {
    type Output = DyadicRational;
    fn neg(self) -> DyadicRational {
        DyadicRational {
            num: -&self.num,
            k: self.k,
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for DyadicRational {
            type Output = DyadicRational;
            fn $method(self, rhs: DyadicRational) -> DyadicRational {
                (&self).$method(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for DyadicRational {
    type Output = DyadicRational;
    fn neg(self) -> DyadicRational {
        -&self
    }
}

impl Ord for DyadicRational {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = self.aligned(other);
        a.cmp(&b)
    }
}

impl PartialOrd for DyadicRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Formats as `num/2^k`, e.g. `-3/2^6`; integers print as `num/2^0`.
impl fmt::Display for DyadicRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2^{}", self.num, self.k)
    }
}

impl FromStr for DyadicRational {
    type Err = ParseDyadicError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseDyadicError(s.to_string());
        let s = s.trim();
        let Some((num, den)) = s.split_once('/') else {
            return s.parse::<BigInt>().map(Self::from).map_err(|_| err());
        };
        let num: BigInt = num.trim().parse().map_err(|_| err())?;
        let den = den.trim();
        if let Some(exp) = den.strip_prefix("2^") {
            let k: u64 = exp.parse().map_err(|_| err())?;
            return Ok(Self::new(num, k));
        }
        let den: BigInt = den.parse().map_err(|_| err())?;
        if den.sign() != Sign::Plus || (&den & (&den - 1u32)) != BigInt::zero() {
            return Err(err());
        }
        Ok(Self::new(num, den.bits() - 1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn d(num: i64, k: u64) -> DyadicRational {
        DyadicRational::new(num, k)
    }

    #[test]
    fn normalization() {
        assert_eq!(d(30, 10), d(15, 9));
        assert_eq!(d(0, 7).exponent(), 0);
        assert_eq!(d(4, 0), DyadicRational::from(4));
        assert_eq!(d(8, 2), d(2, 0));
        assert_eq!(d(-6, 7).numerator(), &BigInt::from(-3));
    }

    #[test]
    fn formatting() {
        assert_eq!(d(15, 9).to_string(), "15/2^9");
        assert_eq!(d(-3, 6).to_string(), "-3/2^6");
        assert_eq!(d(1, 0).to_string(), "1/2^0");
        assert_eq!(d(15, 9).to_fraction_string(), "15/512");
        assert_eq!(d(-3, 6).to_fraction_string(), "-3/64");
        assert_eq!(d(0, 0).to_fraction_string(), "0");
        assert_eq!(d(15, 9).to_f64(), 15.0 / 512.0);
    }

    #[test]
    fn parsing() {
        assert_eq!("15/2^9".parse::<DyadicRational>().unwrap(), d(15, 9));
        assert_eq!("-3/64".parse::<DyadicRational>().unwrap(), d(-3, 6));
        assert_eq!("12".parse::<DyadicRational>().unwrap(), d(12, 0));
        assert!("1/3".parse::<DyadicRational>().is_err());
        assert!("1/0".parse::<DyadicRational>().is_err());
        assert!("x/2^3".parse::<DyadicRational>().is_err());
    }

    #[test]
    fn huge_values_convert_to_f64() {
        let v = DyadicRational::new(BigInt::from(3u32).pow(200), 300);
        let expected = 3f64.powi(200) / 2f64.powi(300);
        assert!((v.to_f64() / expected - 1.0).abs() < 1e-12);
    }

    fn arb() -> impl Strategy<Value = DyadicRational> {
        (any::<i64>(), 0u64..80).prop_map(|(n, k)| d(n, k))
    }

    proptest! {
        #[test]
        fn agrees_with_rationals(a in arb(), b in arb()) {
            prop_assert_eq!((&a + &b).to_ratio(), a.to_ratio() + b.to_ratio());
            prop_assert_eq!((&a - &b).to_ratio(), a.to_ratio() - b.to_ratio());
            prop_assert_eq!((&a * &b).to_ratio(), a.to_ratio() * b.to_ratio());
            prop_assert_eq!(a.cmp(&b), a.to_ratio().cmp(&b.to_ratio()));
            prop_assert_eq!(a.to_string().parse::<DyadicRational>().unwrap(), a.clone());
        }

        #[test]
        fn stays_normalized(a in arb(), b in arb()) {
            for v in [&a + &b, &a * &b, -&a] {
                let odd = v.numerator().trailing_zeros() == Some(0);
                prop_assert!(v.exponent() == 0 || odd);
            }
        }
    }
}
