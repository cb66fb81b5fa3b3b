//! Concrete cyclic extensions to feed the pipeline.

use std::path::PathBuf;

use crate::error::{Error, Result};
use crate::kummer::CyclicExtensionInput;
use crate::poly::{is_irreducible_mod_p, Polynomial};
use crate::scalar::find_nth_root_of_unity;
use crate::schema::{decode_input, encode_input, json_error, to_canonical_json, TowerSpecDoc};
use crate::tower::{Elem, Field};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyDescriptor {
    Frobenius {
        p: u64,
        n: usize,
        modulus: Option<Vec<i64>>,
    },
    BuiltinCubic,
    Custom {
        path: PathBuf,
    },
}

impl FamilyDescriptor {
    pub fn build(&self) -> Result<CyclicExtensionInput> {
        match self {
            FamilyDescriptor::Frobenius { p, n, modulus } => {
                let modulus = match modulus {
                    None => None,
                    Some(coeffs) => Some(Polynomial::from_ints(&Field::prime(*p)?, coeffs)),
                };
                frobenius_family(*p, *n, modulus)
            }
            FamilyDescriptor::BuiltinCubic => Ok(builtin_cubic_over_eisenstein()),
            FamilyDescriptor::Custom { path } => {
                let text = std::fs::read_to_string(path).map_err(|e| Error::Parse {
                    line: 0,
                    column: 0,
                    message: format!("{}: {e}", path.display()),
                })?;
                parse_tower_spec(&text)
            }
        }
    }
}

/// First monic irreducible polynomial of degree `n` over F_p, scanning
/// coefficient tuples `(c_0, ..., c_{n-1})` lexicographically.
pub fn default_modulus(field: &Field, n: usize) -> Result<Polynomial> {
    let Field::Prime(fp) = field else {
        return Err(Error::FieldMismatch);
    };
    let p = fp.modulus();
    let mut digits = vec![0u64; n];
    // Every tuple with c_0 = 0 is divisible by X once n >= 2.
    if n >= 2 {
        digits[0] = 1;
    }
    loop {
        let mut coeffs: Vec<Elem> = digits.iter().map(|&d| Elem::Residue(d)).collect();
        coeffs.push(field.one());
        let candidate = Polynomial::new(field.clone(), coeffs);
        if is_irreducible_mod_p(&candidate)? {
            return Ok(candidate);
        }
        // Increment with c_{n-1} as the least significant digit.
        let mut pos = n;
        loop {
            if pos == 0 {
                unreachable!("irreducible polynomials of every degree exist over F_p");
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < p {
                break;
            }
            digits[pos] = 0;
        }
    }
}

/// `F_p^n / F_p` with the Frobenius `a -> a^p` as generator.
pub fn frobenius_family(
    p: u64,
    n: usize,
    modulus: Option<Polynomial>,
) -> Result<CyclicExtensionInput> {
    let k = Field::prime(p)?;
    if n == 0 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            found: 0,
        });
    }
    let zeta = find_nth_root_of_unity(p, n as u64)?;
    let modulus = match modulus {
        Some(f) => {
            if f.field() != &k {
                return Err(Error::FieldMismatch);
            }
            if !f.is_monic() {
                return Err(Error::NotMonic);
            }
            if f.degree() != Some(n) {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: f.degree().unwrap_or(0),
                });
            }
            if !is_irreducible_mod_p(&f)? {
                return Err(Error::ReducibleModulus(k.to_string()));
            }
            f
        }
        None => default_modulus(&k, n)?,
    };
    let frob = Polynomial::x(&k).pow_mod(p, &modulus)?;
    let sigma_image = Elem::Vector(frob.padded(n));
    CyclicExtensionInput::new(k, modulus, n, Elem::Residue(zeta.value()), sigma_image)
}

/// The cyclic cubic `X^3 - 3X + 1` with `a -> a^2 - 2`, over `K = Q(zeta_3)`.
///
/// Panics if the hard-coded data fails its own consistency checks.
pub fn builtin_cubic_over_eisenstein() -> CyclicExtensionInput {
    let q = Field::Rationals;
    let k = Field::extension(&q, Polynomial::from_ints(&q, &[1, 1, 1])).expect("t^2 + t + 1");
    let zeta = k.generator().expect("K is an extension");
    let f = Polynomial::from_ints(&k, &[1, -3, 0, 1]);
    let e = Field::extension(&k, f.clone()).expect("X^3 - 3X + 1");
    let alpha = e.generator().expect("E is an extension");
    let s = e.sub(&e.mul(&alpha, &alpha), &e.from_int(2));
    assert!(
        e.is_zero(&e.eval_base_poly(&f, &s)),
        "a^2 - 2 must be a root of X^3 - 3X + 1"
    );
    CyclicExtensionInput::new(k, f, 3, zeta, s).expect("builtin cubic is well-formed")
}

pub fn parse_tower_spec(document: &str) -> Result<CyclicExtensionInput> {
    let doc: TowerSpecDoc = serde_json::from_str(document).map_err(json_error)?;
    decode_input(&doc)
}

pub fn tower_spec_to_json(input: &CyclicExtensionInput) -> String {
    to_canonical_json(&encode_input(input))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kummer::validate_setup;

    fn res(v: &[u64]) -> Elem {
        Elem::Vector(v.iter().map(|&x| Elem::Residue(x)).collect())
    }

    #[test]
    fn frobenius_examples() {
        let f5 = Field::prime(5).unwrap();
        let input = frobenius_family(5, 2, Some(Polynomial::from_ints(&f5, &[-2, 0, 1]))).unwrap();
        assert_eq!(input.base(), &f5);
        assert_eq!(input.zeta(), &Elem::Residue(4));
        assert_eq!(input.sigma_image(), &res(&[0, 4]));

        let f13 = Field::prime(13).unwrap();
        let input =
            frobenius_family(13, 4, Some(Polynomial::from_ints(&f13, &[-2, 0, 0, 0, 1]))).unwrap();
        assert_eq!(input.zeta(), &Elem::Residue(5));
        assert_eq!(input.sigma_image(), &res(&[0, 8, 0, 0]));

        assert!(matches!(
            frobenius_family(5, 3, None),
            Err(Error::NoPrimitiveRoot { .. })
        ));
        assert_eq!(
            frobenius_family(4, 1, None).unwrap_err(),
            Error::NotPrime(4)
        );
        assert_eq!(
            frobenius_family(5, 2, Some(Polynomial::from_ints(&f5, &[-1, 0, 1]))).unwrap_err(),
            Error::ReducibleModulus("F_5".into())
        );
        assert_eq!(
            frobenius_family(5, 2, Some(Polynomial::from_ints(&f5, &[2, 0, 2]))).unwrap_err(),
            Error::NotMonic
        );
    }

    #[test]
    fn default_modulus_is_lexicographically_first() {
        // Over F_5 in degree 2, (c0, c1) = (1, 0): X^2 + 1 has roots 2, 3;
        // (1, 1): X^2 + X + 1 has discriminant -3 = 2, a non-residue.
        let f5 = Field::prime(5).unwrap();
        assert_eq!(
            default_modulus(&f5, 2).unwrap(),
            Polynomial::from_ints(&f5, &[1, 1, 1])
        );
        let f7 = Field::prime(7).unwrap();
        assert_eq!(default_modulus(&f7, 1).unwrap(), Polynomial::x(&f7));
        // Brute-force oracle: the first tuple with no root and no quadratic factor.
        let f3 = Field::prime(3).unwrap();
        let first = default_modulus(&f3, 2).unwrap();
        assert_eq!(first, Polynomial::from_ints(&f3, &[1, 0, 1]));
        assert_eq!(default_modulus(&f3, 2).unwrap(), first);
    }

    #[test]
    fn builtin_cubic_identities() {
        let input = builtin_cubic_over_eisenstein();
        let e = input.extension();
        let s = input.sigma_image();
        let sigma = |y: &Elem| {
            let rep = Polynomial::new(input.base().clone(), y.coords().to_vec());
            e.eval_base_poly(&rep, s)
        };
        let alpha = e.generator().unwrap();
        // sigma^2(a) = -a^2 - a + 2 from composing a^2 - 2 with itself mod f.
        let s2 = sigma(s);
        let a2 = e.mul(&alpha, &alpha);
        let expected = e.add(&e.neg(&e.add(&a2, &alpha)), &e.from_int(2));
        assert_eq!(s2, expected);
        assert_eq!(sigma(&s2), alpha);
        assert!(validate_setup(input).is_ok());
    }

    #[test]
    fn every_family_passes_validation() {
        for (p, n) in [(3, 2), (7, 3), (7, 6), (11, 5), (13, 4), (2, 1), (41, 8)] {
            let input = frobenius_family(p, n, None).unwrap();
            assert!(validate_setup(input).is_ok(), "p = {p}, n = {n}");
        }
        assert!(validate_setup(builtin_cubic_over_eisenstein()).is_ok());
    }

    #[test]
    fn tower_spec_round_trip() {
        for input in [
            frobenius_family(13, 4, None).unwrap(),
            builtin_cubic_over_eisenstein(),
        ] {
            let text = tower_spec_to_json(&input);
            let parsed = parse_tower_spec(&text).unwrap();
            assert_eq!(parsed, input);
            assert_eq!(tower_spec_to_json(&parsed), text);
        }
    }

    #[test]
    fn parse_errors() {
        let text = tower_spec_to_json(&frobenius_family(5, 2, None).unwrap());
        match parse_tower_spec(&text[..text.len() / 2]) {
            Err(Error::Parse { line, .. }) => assert!(line > 0),
            other => panic!("expected a parse error, got {other:?}"),
        }
        let non_monic = r#"{"base":{"kind":"prime","p":"5"},"n":"2","zeta":"4",
            "modulus":["3","0","2"],"sigma_image":["0","4"]}"#;
        assert!(matches!(
            parse_tower_spec(non_monic),
            Err(Error::SchemaViolation { .. })
        ));
        let missing = r#"{"base":{"kind":"prime","p":"5"},"n":"2"}"#;
        assert!(matches!(
            parse_tower_spec(missing),
            Err(Error::SchemaViolation { .. })
        ));
        let not_prime = r#"{"base":{"kind":"prime","p":"6"},"n":"1","zeta":"1",
            "modulus":["0","1"],"sigma_image":["0"]}"#;
        assert!(matches!(
            parse_tower_spec(not_prime),
            Err(Error::SchemaViolation { .. })
        ));
    }

    #[test]
    fn frobenius_document_matches_constructor() {
        let doc = r#"{
            "base": {"kind": "prime", "p": "13"},
            "n": "4",
            "zeta": "5",
            "modulus": ["-2", "0", "0", "0", "1"],
            "sigma_image": ["0", "8", "0", "0"]
        }"#;
        let f13 = Field::prime(13).unwrap();
        let programmatic =
            frobenius_family(13, 4, Some(Polynomial::from_ints(&f13, &[-2, 0, 0, 0, 1]))).unwrap();
        assert_eq!(parse_tower_spec(doc).unwrap(), programmatic);
    }
}
