//! Exact coefficient fields.
//!
//! Two families implement [`Scalar`]: arbitrary-precision rationals
//! ([`Rational`], always in lowest terms with a positive denominator) and
//! prime fields [`Fp<P>`] with residues stored in `[0, P)`.

use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

/// Big rational numbers.
pub type Rational = BigRational;

/// An exact field usable as a coefficient domain.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + Eq
    + Hash
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Div<Output = Self>
{
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;

    fn from_i64(n: i64) -> Self;

    fn from_bigint(n: &BigInt) -> Self;

    /// `num / den`, or `None` when `den` vanishes in the field.
    fn from_ratio(num: &BigInt, den: &BigInt) -> Option<Self> {
        let d = Self::from_bigint(den);
        d.inv().map(|di| Self::from_bigint(num) * di)
    }

    /// 0 for the rationals.
    fn characteristic() -> u64;

    /// Short human-readable name, e.g. `Q` or `Fp(32003)`.
    fn field_name() -> String;

    /// A random element. Prime fields draw uniformly from the whole field;
    /// the rationals draw small integers.
    fn random<R: Rng + ?Sized>(rng: &mut R) -> Self;

    /// Whether the element is a nonzero integer-valued constant; used by the
    /// printer to decide on parentheses.
    fn is_negative_literal(&self) -> bool {
        false
    }

    /// Convert an element known to be an integer of small size.
    fn to_i64(&self) -> Option<i64>;
}

/// Residues modulo a prime `P < 2^31`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    pub const MODULUS: u64 = P;

    pub fn new(v: i64) -> Self {
        Fp(v.rem_euclid(P as i64) as u64)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self.0;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % P;
            }
            base = base * base % P;
            e >>= 1;
        }
        Fp(acc)
    }
}

impl<const P: u64> Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Symmetric representative in `(-P/2, P/2]`.
impl<const P: u64> Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 > P / 2 {
            write!(f, "-{}", P - self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let s = self.0 + rhs.0;
        Fp(if s >= P { s - P } else { s })
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Fp(if self.0 >= rhs.0 { self.0 - rhs.0 } else { self.0 + P - rhs.0 })
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Fp(self.0 * rhs.0 % P)
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp(if self.0 == 0 { 0 } else { P - self.0 })
    }
}

impl<const P: u64> Div for Fp<P> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        self * rhs.inv().expect("division by zero in prime field")
    }
}

impl<const P: u64> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Fp<P> {
    fn one() -> Self {
        Fp(1)
    }
}

impl<const P: u64> Scalar for Fp<P> {
    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow(P - 2))
        }
    }

    fn from_i64(n: i64) -> Self {
        Fp::new(n)
    }

    fn from_bigint(n: &BigInt) -> Self {
        let r = n.mod_floor(&BigInt::from(P));
        Fp(r.to_u64().expect("residue fits"))
    }

    fn characteristic() -> u64 {
        P
    }

    fn field_name() -> String {
        format!("Fp({})", P)
    }

    fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Fp(rng.gen_range(0..P))
    }

    fn is_negative_literal(&self) -> bool {
        self.0 > P / 2
    }

    fn to_i64(&self) -> Option<i64> {
        if self.0 > P / 2 {
            Some(-((P - self.0) as i64))
        } else {
            Some(self.0 as i64)
        }
    }
}

/// Magnitude bound for random rational draws.
const RATIONAL_DRAW_BOUND: i64 = 9;

impl Scalar for BigRational {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn from_bigint(n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }

    fn from_ratio(num: &BigInt, den: &BigInt) -> Option<Self> {
        if den.sign() == Sign::NoSign {
            None
        } else {
            Some(BigRational::new(num.clone(), den.clone()))
        }
    }

    fn characteristic() -> u64 {
        0
    }

    fn field_name() -> String {
        "Q".to_string()
    }

    fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Self::from_i64(rng.gen_range(-RATIONAL_DRAW_BOUND..=RATIONAL_DRAW_BOUND))
    }

    fn is_negative_literal(&self) -> bool {
        self.is_negative()
    }

    fn to_i64(&self) -> Option<i64> {
        if self.is_integer() {
            self.numer().to_i64()
        } else {
            None
        }
    }
}

/// A nonzero random scalar.
pub fn random_nonzero<S: Scalar, R: Rng + ?Sized>(rng: &mut R) -> S {
    loop {
        let s = S::random(rng);
        if !s.is_zero() {
            return s;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    type F = Fp<32003>;

    #[test]
    fn prime_field_inverses() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let a: F = random_nonzero(&mut rng);
            assert_eq!(a * a.inv().unwrap(), F::one());
        }
        assert!(F::zero().inv().is_none());
    }

    #[test]
    fn residues_are_canonical() {
        assert_eq!(F::from_i64(-1).value(), 32002);
        assert_eq!(F::from_i64(32003).value(), 0);
        assert_eq!(F::from_bigint(&BigInt::from(-32004)).value(), 32002);
        assert_eq!(format!("{}", F::from_i64(-5)), "-5");
    }

    #[test]
    fn rationals_in_lowest_terms() {
        let q = Rational::from_ratio(&BigInt::from(6), &BigInt::from(-4)).unwrap();
        assert_eq!(q.numer(), &BigInt::from(-3));
        assert_eq!(q.denom(), &BigInt::from(2));
        assert!(Rational::from_ratio(&BigInt::from(1), &BigInt::from(0)).is_none());
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let a: Rational = random_nonzero(&mut rng);
            assert_eq!(a.clone() * a.inv().unwrap(), Rational::one());
        }
    }

    #[test]
    fn ratio_in_prime_field() {
        let third = F::from_ratio(&BigInt::from(1), &BigInt::from(3)).unwrap();
        assert_eq!(third * F::from_i64(3), F::one());
        assert!(F::from_ratio(&BigInt::from(1), &BigInt::from(32003)).is_none());
    }
}
