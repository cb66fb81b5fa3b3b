//! Dense univariate polynomials over a tower field, degree-ascending.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{divisors, prime_factors};
use crate::tower::{Elem, Field};

/// A polynomial together with the field its coefficients live in. The
/// coefficient list never ends in zero; the zero polynomial is empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    field: Field,
    coeffs: Vec<Elem>,
}

impl Polynomial {
    pub fn new(field: Field, mut coeffs: Vec<Elem>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        Polynomial { field, coeffs }
    }

    pub fn zero(field: &Field) -> Self {
        Polynomial::new(field.clone(), Vec::new())
    }

    pub fn one(field: &Field) -> Self {
        Polynomial::constant(field, field.one())
    }

    pub fn constant(field: &Field, c: Elem) -> Self {
        Polynomial::new(field.clone(), vec![c])
    }

    /// The indeterminate `X`.
    pub fn x(field: &Field) -> Self {
        Polynomial::monomial(field, field.one(), 1)
    }

    pub fn monomial(field: &Field, c: Elem, degree: usize) -> Self {
        let mut coeffs = vec![field.zero(); degree + 1];
        coeffs[degree] = c;
        Polynomial::new(field.clone(), coeffs)
    }

    /// Integer coefficients mapped into `field`.
    pub fn from_ints(field: &Field, coeffs: &[i64]) -> Self {
        Polynomial::new(
            field.clone(),
            coeffs.iter().map(|&c| field.from_int(c)).collect(),
        )
    }

    /// `X^n - c`.
    pub fn binomial(field: &Field, n: usize, c: &Elem) -> Self {
        let mut coeffs = vec![field.zero(); n + 1];
        coeffs[0] = field.neg(c);
        coeffs[n] = field.add(&coeffs[n], &field.one());
        Polynomial::new(field.clone(), coeffs)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&Elem> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| *c == self.field.one())
    }

    /// Coefficients zero-padded (or truncated) to exactly `len` entries.
    pub fn padded(&self, len: usize) -> Vec<Elem> {
        let mut v = self.coeffs.clone();
        v.resize(len, self.field.zero());
        v
    }

    fn check_field(&self, other: &Polynomial) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = f.zero();
        let coeffs = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).unwrap_or(&zero);
                let b = other.coeffs.get(i).unwrap_or(&zero);
                f.add(a, b)
            })
            .collect();
        Polynomial::new(f.clone(), coeffs)
    }

    pub fn neg(&self) -> Polynomial {
        let coeffs = self.coeffs.iter().map(|c| self.field.neg(c)).collect();
        Polynomial::new(self.field.clone(), coeffs)
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(f);
        }
        let mut coeffs = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = f.add(&coeffs[i + j], &f.mul(a, b));
            }
        }
        Polynomial::new(f.clone(), coeffs)
    }

    pub fn scale(&self, c: &Elem) -> Polynomial {
        let coeffs = self.coeffs.iter().map(|a| self.field.mul(c, a)).collect();
        Polynomial::new(self.field.clone(), coeffs)
    }

    /// Divides by the leading coefficient. The zero polynomial is returned as is.
    pub fn monic(&self) -> Polynomial {
        match self.leading() {
            None => self.clone(),
            Some(lc) => self.scale(&self.field.inv(lc).expect("leading coefficient is nonzero")),
        }
    }

    pub fn eval(&self, at: &Elem) -> Elem {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, at), c))
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn divmod(&self, divisor: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        self.check_field(divisor)?;
        let f = &self.field;
        let db = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lc_inv = f.inv(divisor.leading().expect("nonzero divisor"))?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= db {
            return Ok((Polynomial::zero(f), self.clone()));
        }
        let mut quot = vec![f.zero(); rem.len() - db];
        for k in (db..rem.len()).rev() {
            let c = f.mul(&rem[k], &lc_inv);
            if f.is_zero(&c) {
                continue;
            }
            for (t, b) in divisor.coeffs.iter().enumerate() {
                rem[k - db + t] = f.sub(&rem[k - db + t], &f.mul(&c, b));
            }
            quot[k - db] = c;
        }
        rem.truncate(db);
        Ok((
            Polynomial::new(f.clone(), quot),
            Polynomial::new(f.clone(), rem),
        ))
    }

    pub fn rem(&self, divisor: &Polynomial) -> Result<Polynomial> {
        Ok(self.divmod(divisor)?.1)
    }

    /// Returns `(g, u, v)` with `g` monic, `g = gcd(self, other) = u*self + v*other`.
    pub fn gcd_extended(&self, other: &Polynomial) -> Result<(Polynomial, Polynomial, Polynomial)> {
        self.check_field(other)?;
        let f = &self.field;
        if self.is_zero() && other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut u0, mut u1) = (Polynomial::one(f), Polynomial::zero(f));
        let (mut v0, mut v1) = (Polynomial::zero(f), Polynomial::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1)?;
            let u = u0.sub(&q.mul(&u1));
            let v = v0.sub(&q.mul(&v1));
            (r0, r1) = (r1, r);
            (u0, u1) = (u1, u);
            (v0, v1) = (v1, v);
        }
        let lc_inv = f.inv(r0.leading().expect("gcd is nonzero"))?;
        Ok((r0.scale(&lc_inv), u0.scale(&lc_inv), v0.scale(&lc_inv)))
    }

    pub fn gcd(&self, other: &Polynomial) -> Result<Polynomial> {
        Ok(self.gcd_extended(other)?.0)
    }

    /// Monic least common multiple of two nonzero polynomials.
    pub fn lcm(&self, other: &Polynomial) -> Result<Polynomial> {
        let g = self.gcd(other)?;
        let (q, _) = self.divmod(&g)?;
        Ok(q.mul(other).monic())
    }

    /// `self^e mod modulus` by square-and-multiply.
    pub fn pow_mod(&self, mut e: u64, modulus: &Polynomial) -> Result<Polynomial> {
        self.check_field(modulus)?;
        if !modulus.is_monic() {
            return Err(Error::NotMonic);
        }
        let mut acc = Polynomial::one(&self.field).rem(modulus)?;
        let mut base = self.rem(modulus)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(modulus)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).rem(modulus)?;
            }
        }
        Ok(acc)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if self.field.is_zero(c) {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let is_one = *c == self.field.one();
            match (i, is_one) {
                (0, _) => write!(f, "{c}")?,
                (_, true) => {}
                (_, false) => write!(f, "{c}*")?,
            }
            match i {
                0 => {}
                1 => write!(f, "X")?,
                _ => write!(f, "X^{i}")?,
            }
        }
        Ok(())
    }
}

type IntPoly = Arc<Vec<BigInt>>;

fn cyclotomic_cache() -> &'static RwLock<HashMap<usize, IntPoly>> {
    static CACHE: OnceLock<RwLock<HashMap<usize, IntPoly>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Exact division of integer polynomials by a monic divisor.
fn int_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let db = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); num.len() - db];
    for k in (db..num.len()).rev() {
        let c = rem[k].clone();
        for (t, b) in den.iter().enumerate() {
            rem[k - db + t] -= &c * b;
        }
        quot[k - db] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

fn cyclotomic_integer(n: usize) -> IntPoly {
    if let Some(p) = cyclotomic_cache().read().expect("cache lock").get(&n) {
        return p.clone();
    }
    // X^n - 1 divided by every Phi_d with d | n, d < n.
    let mut acc = vec![BigInt::zero(); n + 1];
    acc[0] = -BigInt::one();
    acc[n] = BigInt::one();
    for d in divisors(n as u64).into_iter().filter(|&d| d < n as u64) {
        acc = int_div_exact(&acc, &cyclotomic_integer(d as usize));
    }
    let result = Arc::new(acc);
    cyclotomic_cache()
        .write()
        .expect("cache lock")
        .insert(n, result.clone());
    result
}

/// The n-th cyclotomic polynomial with coefficients mapped into `field`.
pub fn cyclotomic_polynomial(n: usize, field: &Field) -> Result<Polynomial> {
    if n == 0 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            found: 0,
        });
    }
    let ch = field.characteristic();
    if ch != 0 && (n as u64).is_multiple_of(ch) {
        return Err(Error::CharacteristicDividesN {
            characteristic: ch,
            n,
        });
    }
    let coeffs = cyclotomic_integer(n)
        .iter()
        .map(|c| {
            let c: i64 = c
                .try_into()
                .expect("cyclotomic coefficients are small for n <= 24");
            field.from_int(c)
        })
        .collect();
    Ok(Polynomial::new(field.clone(), coeffs))
}

/// Rabin's test: a monic `f` of degree `d` over F_p is irreducible iff
/// `X^(p^d) = X mod f` and `gcd(X^(p^(d/q)) - X, f) = 1` for every prime `q | d`.
pub fn is_irreducible_mod_p(f: &Polynomial) -> Result<bool> {
    let field = f.field();
    let Field::Prime(prime) = field else {
        return Err(Error::FieldMismatch);
    };
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    let d = f.degree().expect("monic polynomial is nonzero");
    if d == 0 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            found: 0,
        });
    }
    if d == 1 {
        return Ok(true);
    }
    let x = Polynomial::x(field);
    // frob[k] = X^(p^k) mod f
    let mut frob = vec![x.clone()];
    for k in 0..d {
        frob.push(frob[k].pow_mod(prime.modulus(), f)?);
    }
    if frob[d] != x {
        return Ok(false);
    }
    for q in prime_factors(d as u64) {
        let h = frob[d / q as usize].sub(&x);
        if h.is_zero() || h.gcd(f)?.degree() != Some(0) {
            return Ok(false);
        }
    }
    Ok(true)
}
