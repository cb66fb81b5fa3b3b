//! Field towers: F_p or Q at the bottom, with at most two quotient-ring levels
//! above. An element of an extension is its zero-padded coordinate vector in
//! the power basis `1, a, ..., a^(d-1)` over the level directly below, so an
//! element of `E` over `K` over `Q` is a vector of vectors of rationals.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::{is_irreducible_mod_p, Polynomial};
use crate::scalar::{PrimeField, Rational};

pub const MAX_TOWER_HEIGHT: usize = 3;

/// A field element. Which variant is meaningful is decided by the [`Field`]
/// the value is used with; the value itself carries no field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Elem {
    Rational(Rational),
    Residue(u64),
    Vector(Vec<Elem>),
}

impl Elem {
    /// Coordinates of an extension element.
    ///
    /// Panics on ground-field values.
    pub fn coords(&self) -> &[Elem] {
        match self {
            Elem::Vector(v) => v,
            _ => panic!("ground-field value has no coordinates"),
        }
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elem::Rational(r) => write!(f, "{r}"),
            Elem::Residue(v) => write!(f, "{v}"),
            Elem::Vector(v) => {
                write!(f, "[")?;
                for (i, c) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, "]")
            }
        }
    }
}

#[derive(Debug)]
pub struct ExtensionField {
    base: Field,
    modulus: Polynomial,
}

/// Field descriptor. Cheap to clone; extension levels are shared.
#[derive(Clone, Debug)]
pub enum Field {
    Prime(PrimeField),
    Rationals,
    Extension(Arc<ExtensionField>),
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Field::Prime(a), Field::Prime(b)) => a == b,
            (Field::Rationals, Field::Rationals) => true,
            (Field::Extension(a), Field::Extension(b)) => {
                Arc::ptr_eq(a, b) || (a.base == b.base && a.modulus.coeffs() == b.modulus.coeffs())
            }
            _ => false,
        }
    }
}

impl Eq for Field {}

impl Field {
    pub fn prime(p: u64) -> Result<Self> {
        Ok(Field::Prime(PrimeField::new(p)?))
    }

    /// `base[a]/(modulus)`. The modulus must be monic of degree at least one;
    /// directly over a prime field it must also pass the irreducibility test.
    /// Over Q and above, irreducibility is taken on trust and surfaces later
    /// as [`Error::NotInvertible`] or failed certificate checks.
    pub fn extension(base: &Field, modulus: Polynomial) -> Result<Self> {
        if modulus.field() != base {
            return Err(Error::FieldMismatch);
        }
        if base.height() >= MAX_TOWER_HEIGHT {
            return Err(Error::TowerTooTall);
        }
        match modulus.degree() {
            None | Some(0) => {
                return Err(Error::DimensionMismatch {
                    expected: 1,
                    found: 0,
                })
            }
            Some(_) => {}
        }
        if !modulus.is_monic() {
            return Err(Error::NotMonic);
        }
        if let Field::Prime(_) = base {
            if !is_irreducible_mod_p(&modulus)? {
                return Err(Error::ReducibleModulus(base.to_string()));
            }
        }
        Ok(Field::Extension(Arc::new(ExtensionField {
            base: base.clone(),
            modulus,
        })))
    }

    /// Number of levels including the ground field.
    pub fn height(&self) -> usize {
        match self {
            Field::Extension(ext) => ext.base.height() + 1,
            _ => 1,
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Prime(f) => f.modulus(),
            Field::Rationals => 0,
            Field::Extension(ext) => ext.base.characteristic(),
        }
    }

    /// Degree over the level directly below; 1 for ground fields.
    pub fn degree(&self) -> usize {
        match self {
            Field::Extension(ext) => ext.modulus.coeffs().len() - 1,
            _ => 1,
        }
    }

    pub fn base(&self) -> Option<&Field> {
        match self {
            Field::Extension(ext) => Some(&ext.base),
            _ => None,
        }
    }

    pub fn modulus(&self) -> Option<&Polynomial> {
        match self {
            Field::Extension(ext) => Some(&ext.modulus),
            _ => None,
        }
    }

    pub fn zero(&self) -> Elem {
        match self {
            Field::Prime(_) => Elem::Residue(0),
            Field::Rationals => Elem::Rational(Rational::zero()),
            Field::Extension(ext) => Elem::Vector(vec![ext.base.zero(); self.degree()]),
        }
    }

    pub fn one(&self) -> Elem {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> Elem {
        match self {
            Field::Prime(f) => Elem::Residue(f.reduce(&n.into())),
            Field::Rationals => Elem::Rational(Rational::from_integer(n)),
            Field::Extension(ext) => {
                let mut v = vec![ext.base.zero(); self.degree()];
                v[0] = ext.base.from_int(n);
                Elem::Vector(v)
            }
        }
    }

    /// The class of X in `base[X]/(modulus)`.
    pub fn generator(&self) -> Option<Elem> {
        let Field::Extension(ext) = self else {
            return None;
        };
        let d = self.degree();
        let mut v = vec![ext.base.zero(); d];
        if d == 1 {
            // X is congruent to -m_0 modulo a linear modulus.
            v[0] = ext.base.neg(&ext.modulus.coeffs()[0]);
        } else {
            v[1] = ext.base.one();
        }
        Some(Elem::Vector(v))
    }

    /// Structural membership: correct variant, range and coordinate length at
    /// every level.
    pub fn contains(&self, a: &Elem) -> bool {
        match (self, a) {
            (Field::Prime(f), Elem::Residue(v)) => *v < f.modulus(),
            (Field::Rationals, Elem::Rational(_)) => true,
            (Field::Extension(ext), Elem::Vector(v)) => {
                v.len() == self.degree() && v.iter().all(|c| ext.base.contains(c))
            }
            _ => false,
        }
    }

    pub fn is_zero(&self, a: &Elem) -> bool {
        match a {
            Elem::Rational(r) => r.is_zero(),
            Elem::Residue(v) => *v == 0,
            Elem::Vector(v) => {
                let base = self.base().expect("vector value in a ground field");
                v.iter().all(|c| base.is_zero(c))
            }
        }
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        match (self, a, b) {
            (Field::Prime(f), Elem::Residue(x), Elem::Residue(y)) => Elem::Residue(f.add(*x, *y)),
            (Field::Rationals, Elem::Rational(x), Elem::Rational(y)) => Elem::Rational(x + y),
            (Field::Extension(ext), Elem::Vector(x), Elem::Vector(y)) => {
                Elem::Vector(x.iter().zip(y).map(|(s, t)| ext.base.add(s, t)).collect())
            }
            _ => panic!("element does not belong to {self}"),
        }
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        match (self, a) {
            (Field::Prime(f), Elem::Residue(x)) => Elem::Residue(f.neg(*x)),
            (Field::Rationals, Elem::Rational(x)) => Elem::Rational(-x),
            (Field::Extension(ext), Elem::Vector(x)) => {
                Elem::Vector(x.iter().map(|s| ext.base.neg(s)).collect())
            }
            _ => panic!("element does not belong to {self}"),
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        match (self, a, b) {
            (Field::Prime(f), Elem::Residue(x), Elem::Residue(y)) => Elem::Residue(f.sub(*x, *y)),
            (Field::Rationals, Elem::Rational(x), Elem::Rational(y)) => Elem::Rational(x - y),
            (Field::Extension(ext), Elem::Vector(x), Elem::Vector(y)) => {
                Elem::Vector(x.iter().zip(y).map(|(s, t)| ext.base.sub(s, t)).collect())
            }
            _ => panic!("element does not belong to {self}"),
        }
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match (self, a, b) {
            (Field::Prime(f), Elem::Residue(x), Elem::Residue(y)) => Elem::Residue(f.mul(*x, *y)),
            (Field::Rationals, Elem::Rational(x), Elem::Rational(y)) => Elem::Rational(x * y),
            (Field::Extension(ext), Elem::Vector(x), Elem::Vector(y)) => {
                Elem::Vector(ext.mul_coords(x, y))
            }
            _ => panic!("element does not belong to {self}"),
        }
    }

    /// Multiplies an element by a scalar from the level directly below.
    pub fn scale(&self, c: &Elem, a: &Elem) -> Elem {
        match self {
            Field::Extension(ext) => {
                Elem::Vector(a.coords().iter().map(|t| ext.base.mul(c, t)).collect())
            }
            _ => self.mul(c, a),
        }
    }

    pub fn inv(&self, a: &Elem) -> Result<Elem> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        match (self, a) {
            (Field::Prime(f), Elem::Residue(x)) => Ok(Elem::Residue(f.inv(*x)?)),
            (Field::Rationals, Elem::Rational(x)) => Ok(Elem::Rational(x.inverse()?)),
            (Field::Extension(ext), Elem::Vector(x)) => {
                let rep = Polynomial::new(ext.base.clone(), x.clone());
                let (g, u, _) = rep.gcd_extended(&ext.modulus)?;
                if g.degree() != Some(0) {
                    return Err(Error::NotInvertible);
                }
                let (_, u) = u.divmod(&ext.modulus)?;
                Ok(Elem::Vector(u.padded(self.degree())))
            }
            _ => panic!("element does not belong to {self}"),
        }
    }

    pub fn div(&self, a: &Elem, b: &Elem) -> Result<Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Square-and-multiply; `0^0 = 1`.
    pub fn pow(&self, a: &Elem, mut e: u64) -> Elem {
        let mut acc = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// The constant `c` of the level below, as an element of this field.
    pub fn embed_base(&self, c: &Elem) -> Result<Elem> {
        let base = self.base().ok_or(Error::FieldMismatch)?;
        if !base.contains(c) {
            return Err(Error::FieldMismatch);
        }
        let mut v = vec![base.zero(); self.degree()];
        v[0] = c.clone();
        Ok(Elem::Vector(v))
    }

    /// Returns the constant coordinate when every other coordinate is zero.
    pub fn base_part(&self, a: &Elem) -> Option<Elem> {
        let base = self.base()?;
        let coords = a.coords();
        coords[1..]
            .iter()
            .all(|c| base.is_zero(c))
            .then(|| coords[0].clone())
    }

    /// Builds an extension element from its coordinates over the base.
    pub fn from_coords(&self, coords: Vec<Elem>) -> Result<Elem> {
        let base = self.base().ok_or(Error::FieldMismatch)?;
        if coords.len() != self.degree() {
            return Err(Error::DimensionMismatch {
                expected: self.degree(),
                found: coords.len(),
            });
        }
        if !coords.iter().all(|c| base.contains(c)) {
            return Err(Error::FieldMismatch);
        }
        Ok(Elem::Vector(coords))
    }

    /// Evaluates a polynomial over the base field at an element of this field.
    pub fn eval_base_poly(&self, poly: &Polynomial, at: &Elem) -> Elem {
        let mut acc = self.zero();
        for c in poly.coeffs().iter().rev() {
            acc = self.mul(&acc, at);
            acc = self.add(
                &acc,
                &self.embed_base(c).expect("coefficient in base field"),
            );
        }
        acc
    }
}

impl ExtensionField {
    fn mul_coords(&self, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
        let base = &self.base;
        let m = self.modulus.coeffs();
        let d = m.len() - 1;
        let mut prod = vec![base.zero(); 2 * d - 1];
        for (i, x) in a.iter().enumerate() {
            if base.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                prod[i + j] = base.add(&prod[i + j], &base.mul(x, y));
            }
        }
        // X^d = -(m_0 + ... + m_{d-1} X^{d-1}) since m is monic.
        for k in (d..prod.len()).rev() {
            let c = prod[k].clone();
            if base.is_zero(&c) {
                continue;
            }
            for (t, mt) in m[..d].iter().enumerate() {
                prod[k - d + t] = base.sub(&prod[k - d + t], &base.mul(&c, mt));
            }
        }
        prod.truncate(d);
        prod
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Prime(p) => write!(f, "F_{}", p.modulus()),
            Field::Rationals => write!(f, "Q"),
            Field::Extension(ext) => write!(f, "{}[X]/({})", ext.base, ext.modulus),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp_poly(p: u64, coeffs: &[i64]) -> Polynomial {
        let f = Field::prime(p).unwrap();
        Polynomial::from_ints(&f, coeffs)
    }

    fn f25() -> Field {
        Field::extension(&Field::prime(5).unwrap(), fp_poly(5, &[-2, 0, 1])).unwrap()
    }

    fn f13_4() -> Field {
        Field::extension(&Field::prime(13).unwrap(), fp_poly(13, &[-2, 0, 0, 0, 1])).unwrap()
    }

    fn res(v: &[u64]) -> Elem {
        Elem::Vector(v.iter().map(|&x| Elem::Residue(x)).collect())
    }

    #[test]
    fn ext_mul_examples() {
        let e = f25();
        let a = e.generator().unwrap();
        assert_eq!(e.mul(&a, &a), res(&[2, 0]));
        let b = res(&[3, 4]);
        assert_eq!(e.mul(&e.one(), &b), b);

        let e = f13_4();
        let a = e.generator().unwrap();
        assert_eq!(e.mul(&e.pow(&a, 3), &a), res(&[2, 0, 0, 0]));
    }

    #[test]
    fn ext_inverse_examples() {
        let e = f25();
        assert_eq!(e.inv(&e.one()).unwrap(), e.one());
        assert_eq!(e.inv(&e.generator().unwrap()).unwrap(), res(&[0, 3]));
        assert_eq!(e.inv(&e.zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn reducible_modulus_over_q_is_reported_on_inversion() {
        let q = Field::Rationals;
        // X^2 - 1 is reducible; X - 1 has no inverse modulo it.
        let e = Field::extension(&q, Polynomial::from_ints(&q, &[-1, 0, 1])).unwrap();
        let a = e.from_coords(vec![q.from_int(-1), q.from_int(1)]).unwrap();
        assert_eq!(e.inv(&a), Err(Error::NotInvertible));
    }

    #[test]
    fn embed_and_base_part() {
        let e = f25();
        assert_eq!(e.embed_base(&Elem::Residue(2)).unwrap(), res(&[2, 0]));
        assert_eq!(e.embed_base(&Elem::Residue(0)).unwrap(), e.zero());
        assert_eq!(e.embed_base(&Elem::Residue(7)), Err(Error::FieldMismatch));
        assert_eq!(e.base_part(&res(&[2, 0])), Some(Elem::Residue(2)));
        let a = e.generator().unwrap();
        assert_eq!(e.base_part(&a), None);
        assert_eq!(e.base_part(&e.mul(&a, &a)), Some(Elem::Residue(2)));

        let e = f13_4();
        assert_eq!(e.embed_base(&Elem::Residue(5)).unwrap(), res(&[5, 0, 0, 0]));
        assert_eq!(
            Field::Rationals.embed_base(&Field::Rationals.one()),
            Err(Error::FieldMismatch)
        );
    }

    #[test]
    fn element_pow_examples() {
        let e = f13_4();
        let a = e.generator().unwrap();
        assert_eq!(e.pow(&a, 4), e.embed_base(&Elem::Residue(2)).unwrap());
        assert_eq!(e.pow(&a, 0), e.one());
        assert_eq!(e.pow(&a, 1), a);
        assert_eq!(e.pow(&e.zero(), 0), e.one());
    }

    #[test]
    fn construction_errors() {
        let f5 = Field::prime(5).unwrap();
        assert_eq!(
            Field::extension(&f5, fp_poly(5, &[-1, 0, 1])).unwrap_err(),
            Error::ReducibleModulus("F_5".into())
        );
        assert_eq!(
            Field::extension(&f5, fp_poly(5, &[2, 0, 2])).unwrap_err(),
            Error::NotMonic
        );
        assert_eq!(
            Field::extension(&f5, fp_poly(7, &[3, 0, 1])).unwrap_err(),
            Error::FieldMismatch
        );
        let q = Field::Rationals;
        let k = Field::extension(&q, Polynomial::from_ints(&q, &[1, 1, 1])).unwrap();
        let e = Field::extension(&k, Polynomial::from_ints(&k, &[1, -3, 0, 1])).unwrap();
        assert_eq!(e.height(), 3);
        assert_eq!(
            Field::extension(&e, Polynomial::from_ints(&e, &[1, 0, 1])).unwrap_err(),
            Error::TowerTooTall
        );
    }

    #[test]
    fn linear_modulus_generator_is_its_root() {
        let f7 = Field::prime(7).unwrap();
        let e = Field::extension(&f7, fp_poly(7, &[4, 1])).unwrap();
        let a = e.generator().unwrap();
        assert_eq!(a, res(&[3]));
        assert!(e.is_zero(&e.eval_base_poly(e.modulus().unwrap(), &a)));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn towers() -> Vec<Field> {
            let q = Field::Rationals;
            let k = Field::extension(&q, Polynomial::from_ints(&q, &[1, 1, 1])).unwrap();
            let e = Field::extension(&k, Polynomial::from_ints(&k, &[1, -3, 0, 1])).unwrap();
            let f9 = Field::extension(&Field::prime(3).unwrap(), fp_poly(3, &[1, 0, 1])).unwrap();
            let f81 = Field::extension(
                &f9,
                Polynomial::from_ints(&f9, &[0, 0, 1]).add(&Polynomial::constant(
                    &f9,
                    Elem::Vector(vec![Elem::Residue(1), Elem::Residue(1)]),
                )),
            )
            .unwrap();
            vec![f25(), f13_4(), k, e, f9, f81]
        }

        fn sample(field: &Field, seed: &mut impl Iterator<Item = i64>) -> Elem {
            match field {
                Field::Prime(_) | Field::Rationals => field.from_int(seed.next().unwrap()),
                Field::Extension(_) => {
                    let base = field.base().unwrap();
                    let coords = (0..field.degree()).map(|_| sample(base, seed)).collect();
                    field.from_coords(coords).unwrap()
                }
            }
        }

        proptest! {
            #[test]
            fn field_axioms(which in 0..6usize, raw in prop::collection::vec(-9i64..9, 36)) {
                let field = &towers()[which];
                let mut it = raw.into_iter().cycle();
                let a = sample(field, &mut it);
                let b = sample(field, &mut it);
                let c = sample(field, &mut it);
                prop_assert_eq!(field.mul(&a, &b), field.mul(&b, &a));
                prop_assert_eq!(field.mul(&field.mul(&a, &b), &c), field.mul(&a, &field.mul(&b, &c)));
                prop_assert_eq!(
                    field.mul(&a, &field.add(&b, &c)),
                    field.add(&field.mul(&a, &b), &field.mul(&a, &c))
                );
                prop_assert_eq!(field.sub(&field.add(&a, &b), &b), a.clone());
                if !field.is_zero(&a) {
                    let inv = field.inv(&a).unwrap();
                    prop_assert_eq!(field.mul(&a, &inv), field.one());
                }
                if let Some(base) = field.base() {
                    let c = sample(base, &mut it);
                    prop_assert_eq!(field.base_part(&field.embed_base(&c).unwrap()), Some(c));
                }
            }

            #[test]
            fn finite_field_orders_divide_group_order(which in 0..2usize, raw in prop::collection::vec(0i64..13, 4)) {
                let field = &towers()[which];
                let mut it = raw.into_iter().cycle();
                let a = sample(field, &mut it);
                prop_assume!(!field.is_zero(&a));
                let q = field.characteristic().pow(field.degree() as u32);
                let order = (1..q).find(|&k| field.pow(&a, k) == field.one()).unwrap();
                prop_assert_eq!((q - 1) % order, 0);
            }
        }
    }
}
