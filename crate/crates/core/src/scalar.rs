//! Exact scalars: arbitrary-precision rationals and elements of prime fields.
//!
//! Rationals are kept fully reduced with a positive denominator, so two equal
//! values always compare equal field by field. Prime fields are restricted to
//! moduli below 2^32, which keeps every product inside a `u64`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// An exact rational number in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(BigRational);

impl Rational {
    /// Builds `num/den`, moving the sign onto the numerator and dividing out
    /// the gcd.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let (num, den) = (num.into(), den.into());
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rational(BigRational::new(num, den)))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(self.0.recip()))
    }
}

impl Add for &Rational {
    type Output = Rational;
    fn add(self, rhs: &Rational) -> Rational {
        Rational(&self.0 + &rhs.0)
    }
}

impl Sub for &Rational {
    type Output = Rational;
    fn sub(self, rhs: &Rational) -> Rational {
        Rational(&self.0 - &rhs.0)
    }
}

impl Mul for &Rational {
    type Output = Rational;
    fn mul(self, rhs: &Rational) -> Rational {
        Rational(&self.0 * &rhs.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `"n"` or `"n/d"` with optional leading minus signs and no
    /// whitespace.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::schema("scalar", format!("not a rational: {s:?}"));
        let parse_int = |t: &str| -> Result<BigInt> {
            if t.is_empty() || t.starts_with('+') || t.chars().any(char::is_whitespace) {
                return Err(bad());
            }
            t.parse::<BigInt>().map_err(|_| bad())
        };
        match s.split_once('/') {
            None => Ok(Rational::from_integer(parse_int(s)?)),
            Some((n, d)) => Rational::new(parse_int(n)?, parse_int(d)?),
        }
    }
}

/// The prime field F_p for a prime p < 2^32.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 32 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn element(&self, value: u64) -> PrimeFieldElement {
        PrimeFieldElement {
            value: value % self.p,
            p: self.p,
        }
    }

    /// Reduces an arbitrary integer into `[0, p)`.
    pub fn reduce(&self, n: &BigInt) -> u64 {
        let r = n.mod_floor(&BigInt::from(self.p));
        r.try_into().expect("residue below p fits in u64")
    }

    pub(crate) fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    pub(crate) fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    pub(crate) fn neg(&self, a: u64) -> u64 {
        (self.p - a) % self.p
    }

    pub(crate) fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub(crate) fn pow(&self, a: u64, mut e: u64) -> u64 {
        let mut base = a % self.p;
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub(crate) fn inv(&self, a: u64) -> Result<u64> {
        if a.is_multiple_of(self.p) {
            return Err(Error::DivisionByZero);
        }
        // Extended Euclid on (a, p).
        let (mut r0, mut r1) = (self.p as i64, (a % self.p) as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        Ok(t0.rem_euclid(self.p as i64) as u64)
    }
}

/// An element of F_p, carrying its modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeFieldElement {
    value: u64,
    p: u64,
}

impl PrimeFieldElement {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn field(&self) -> PrimeField {
        PrimeField { p: self.p }
    }

    pub fn pow(&self, e: u64) -> Self {
        PrimeFieldElement {
            value: self.field().pow(self.value, e),
            p: self.p,
        }
    }
}

impl fmt::Display for PrimeFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Deterministic trial division; inputs are below 2^32.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime factors in ascending order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// All positive divisors in ascending order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn invert_mod_p(a: PrimeFieldElement) -> Result<PrimeFieldElement> {
    let value = a.field().inv(a.value)?;
    Ok(PrimeFieldElement { value, p: a.p })
}

pub fn multiplicative_order(a: PrimeFieldElement) -> Result<u64> {
    if a.value == 0 {
        return Err(Error::DivisionByZero);
    }
    let order = divisors(a.p - 1)
        .into_iter()
        .find(|&d| a.pow(d).value == 1)
        .expect("a^(p-1) = 1");
    Ok(order)
}

/// Smallest representative in `[1, p)` of exact multiplicative order `n`.
pub fn find_nth_root_of_unity(p: u64, n: u64) -> Result<PrimeFieldElement> {
    let field = PrimeField::new(p)?;
    let missing = || Error::NoPrimitiveRoot {
        n: n as usize,
        field: format!("F_{p}"),
    };
    if n == 0 || !(p - 1).is_multiple_of(n) {
        return Err(missing());
    }
    (1..p)
        .map(|v| field.element(v))
        .find(|a| multiplicative_order(*a).ok() == Some(n))
        .ok_or_else(missing)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(v: u64, p: u64) -> PrimeFieldElement {
        PrimeField::new(p).unwrap().element(v)
    }

    #[test]
    fn normalize_rational_examples() {
        assert_eq!(Rational::new(-6, -8).unwrap().to_string(), "3/4");
        let zero = Rational::new(0, 5).unwrap();
        assert_eq!(
            (zero.numer().clone(), zero.denom().clone()),
            (0.into(), 1.into())
        );
        assert_eq!(Rational::new(2, 4).unwrap().to_string(), "1/2");
        assert_eq!(Rational::new(3, -9).unwrap().to_string(), "-1/3");
        assert_eq!(Rational::new(1, 0), Err(Error::ZeroDenominator));
    }

    #[test]
    fn rational_string_round_trip() {
        for s in ["0", "-7", "22/7", "-1/3"] {
            assert_eq!(s.parse::<Rational>().unwrap().to_string(), s);
        }
        assert_eq!("4/6".parse::<Rational>().unwrap().to_string(), "2/3");
        assert!("1/0".parse::<Rational>().is_err());
        assert!(" 1".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
    }

    #[test]
    fn invert_mod_p_examples() {
        assert_eq!(invert_mod_p(fp(3, 7)).unwrap().value(), 5);
        assert_eq!(invert_mod_p(fp(1, 13)).unwrap().value(), 1);
        assert_eq!(invert_mod_p(fp(0, 7)), Err(Error::DivisionByZero));
    }

    #[test]
    fn multiplicative_order_examples() {
        // Brute force: 2, 4, 1 mod 7 and 4, 3, 12, 9, 10, 1 mod 13.
        assert_eq!(multiplicative_order(fp(2, 7)).unwrap(), 3);
        assert_eq!(multiplicative_order(fp(1, 13)).unwrap(), 1);
        assert_eq!(multiplicative_order(fp(4, 13)).unwrap(), 6);
        assert_eq!(multiplicative_order(fp(0, 13)), Err(Error::DivisionByZero));
    }

    #[test]
    fn nth_root_examples() {
        assert_eq!(find_nth_root_of_unity(13, 4).unwrap().value(), 5);
        assert_eq!(find_nth_root_of_unity(5, 2).unwrap().value(), 4);
        assert_eq!(find_nth_root_of_unity(7, 1).unwrap().value(), 1);
        assert!(matches!(
            find_nth_root_of_unity(5, 3),
            Err(Error::NoPrimitiveRoot { .. })
        ));
        assert_eq!(find_nth_root_of_unity(4, 1), Err(Error::NotPrime(4)));
    }

    #[test]
    fn primality() {
        let small: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(is_prime(4_294_967_291));
        assert_eq!(PrimeField::new(1 << 32), Err(Error::NotPrime(1 << 32)));
        assert_eq!(prime_factors(360), [2, 3, 5]);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        const PRIMES: [u64; 8] = [2, 3, 5, 7, 13, 31, 101, 65_537];

        fn brute_order(a: u64, p: u64) -> u64 {
            let mut k = 1;
            let mut x = a % p;
            while x != 1 {
                x = x * a % p;
                k += 1;
            }
            k
        }

        proptest! {
            #[test]
            fn inverse_is_two_sided(pi in 0..PRIMES.len(), v in 1u64..1_000_000) {
                let p = PRIMES[pi];
                prop_assume!(v % p != 0);
                let a = fp(v, p);
                let b = invert_mod_p(a).unwrap();
                prop_assert_eq!(a.value() * b.value() % p, 1);
            }

            #[test]
            fn order_divides_group_order(pi in 0..PRIMES.len(), v in 1u64..1_000_000) {
                let p = PRIMES[pi];
                prop_assume!(v % p != 0 && p < 1000);
                let k = multiplicative_order(fp(v, p)).unwrap();
                prop_assert_eq!((p - 1) % k, 0);
                prop_assert_eq!(k, brute_order(v % p, p));
            }

            #[test]
            fn root_of_unity_is_primitive(pi in 0..6usize, pick in any::<prop::sample::Index>()) {
                let p = PRIMES[pi];
                let ds = divisors(p - 1);
                let n = ds[pick.index(ds.len())];
                let z = find_nth_root_of_unity(p, n).unwrap();
                prop_assert_eq!(z.pow(n).value(), 1);
                for q in prime_factors(n) {
                    prop_assert_ne!(z.pow(n / q).value(), 1);
                }
            }

            #[test]
            fn rational_sum_matches_normalized_cross_product(
                a in -50i64..50, b in 1i64..50, c in -50i64..50, d in 1i64..50,
            ) {
                let lhs = &Rational::new(a, b).unwrap() + &Rational::new(c, d).unwrap();
                let rhs = Rational::new(a * d + c * b, b * d).unwrap();
                prop_assert_eq!(lhs, rhs);
            }
        }
    }
}
