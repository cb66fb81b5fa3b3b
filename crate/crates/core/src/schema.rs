//! JSON documents: tower specs, certificates and run reports.
//!
//! Scalars are always strings (`"3"`, `"-1/2"`); an element of an extension
//! is an array of elements of its base, degree-ascending, so nesting depth
//! follows the tower. Keys appear in struct declaration order.

use num_traits::One;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::kummer::{Checks, CyclicExtensionInput, EigenReport, Eigenvalue, KummerCertificate};
use crate::poly::Polynomial;
use crate::scalar::Rational;
use crate::tower::{Elem, Field};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum FieldDoc {
    Prime {
        p: String,
    },
    Rationals,
    Extension {
        base: Box<FieldDoc>,
        modulus: Vec<Value>,
    },
}

/// The tower-spec document: `K` is `base`, `E = K[X]/(modulus)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TowerSpecDoc {
    pub base: FieldDoc,
    pub n: String,
    pub zeta: Value,
    pub modulus: Vec<Value>,
    pub sigma_image: Vec<Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EigenDoc {
    pub i: String,
    pub eigenvalue: Value,
    pub dimension: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateDoc {
    pub input: TowerSpecDoc,
    pub eigen: Vec<EigenDoc>,
    pub sigma_min_poly: Vec<Value>,
    pub x: Vec<Value>,
    pub c: Value,
    pub x_min_poly: Vec<Value>,
    pub checks: Checks,
    pub version: String,
}

pub fn encode_elem(field: &Field, a: &Elem) -> Value {
    match (field, a) {
        (Field::Extension(_), Elem::Vector(v)) => {
            let base = field.base().expect("extension has a base");
            Value::Array(v.iter().map(|c| encode_elem(base, c)).collect())
        }
        _ => Value::String(a.to_string()),
    }
}

pub fn encode_poly(p: &Polynomial) -> Vec<Value> {
    p.coeffs()
        .iter()
        .map(|c| encode_elem(p.field(), c))
        .collect()
}

pub fn decode_elem(field: &Field, v: &Value, path: &str) -> Result<Elem> {
    match (field, v) {
        (Field::Prime(f), Value::String(s)) => {
            let r: Rational = s
                .parse()
                .map_err(|_| Error::schema(path, format!("bad integer {s:?}")))?;
            if !r.denom().is_one() {
                return Err(Error::schema(path, format!("{s:?} is not an integer")));
            }
            Ok(Elem::Residue(f.reduce(r.numer())))
        }
        (Field::Rationals, Value::String(s)) => s
            .parse()
            .map(Elem::Rational)
            .map_err(|_| Error::schema(path, format!("bad rational {s:?}"))),
        (Field::Extension(_), Value::Array(items)) => {
            let base = field.base().expect("extension has a base");
            if items.len() != field.degree() {
                return Err(Error::schema(
                    path,
                    format!(
                        "expected {} coordinates, found {}",
                        field.degree(),
                        items.len()
                    ),
                ));
            }
            let coords = items
                .iter()
                .enumerate()
                .map(|(i, c)| decode_elem(base, c, &format!("{path}[{i}]")))
                .collect::<Result<Vec<_>>>()?;
            Ok(Elem::Vector(coords))
        }
        (Field::Extension(_), _) => Err(Error::schema(path, "expected an array of coordinates")),
        _ => Err(Error::schema(path, "expected a scalar string")),
    }
}

pub fn decode_poly(field: &Field, items: &[Value], path: &str) -> Result<Polynomial> {
    let coeffs = items
        .iter()
        .enumerate()
        .map(|(i, c)| decode_elem(field, c, &format!("{path}[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    Ok(Polynomial::new(field.clone(), coeffs))
}

pub fn encode_field(field: &Field) -> FieldDoc {
    match field {
        Field::Prime(p) => FieldDoc::Prime {
            p: p.modulus().to_string(),
        },
        Field::Rationals => FieldDoc::Rationals,
        Field::Extension(_) => FieldDoc::Extension {
            base: Box::new(encode_field(field.base().expect("extension has a base"))),
            modulus: encode_poly(field.modulus().expect("extension has a modulus")),
        },
    }
}

fn parse_count(s: &str, path: &str) -> Result<u64> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::schema(
            path,
            format!("expected a decimal integer, found {s:?}"),
        ));
    }
    s.parse()
        .map_err(|_| Error::schema(path, format!("integer {s:?} out of range")))
}

/// Field construction failures inside a document are schema violations.
fn at(path: &str) -> impl Fn(Error) -> Error + '_ {
    move |e| match e {
        e @ Error::SchemaViolation { .. } => e,
        e => Error::schema(path, e.to_string()),
    }
}

pub fn decode_field(doc: &FieldDoc, path: &str) -> Result<Field> {
    match doc {
        FieldDoc::Prime { p } => {
            Field::prime(parse_count(p, &format!("{path}.p"))?).map_err(at(path))
        }
        FieldDoc::Rationals => Ok(Field::Rationals),
        FieldDoc::Extension { base, modulus } => {
            let base = decode_field(base, &format!("{path}.base"))?;
            let mpath = format!("{path}.modulus");
            let modulus = decode_poly(&base, modulus, &mpath)?;
            if !modulus.is_monic() {
                return Err(Error::schema(mpath, "modulus must be monic"));
            }
            Field::extension(&base, modulus).map_err(at(&mpath))
        }
    }
}

pub fn encode_input(input: &CyclicExtensionInput) -> TowerSpecDoc {
    TowerSpecDoc {
        base: encode_field(input.base()),
        n: input.n().to_string(),
        zeta: encode_elem(input.base(), input.zeta()),
        modulus: encode_poly(input.modulus()),
        sigma_image: input
            .sigma_image()
            .coords()
            .iter()
            .map(|c| encode_elem(input.base(), c))
            .collect(),
    }
}

pub fn decode_input(doc: &TowerSpecDoc) -> Result<CyclicExtensionInput> {
    let k = decode_field(&doc.base, "base")?;
    let n = parse_count(&doc.n, "n")? as usize;
    let zeta = decode_elem(&k, &doc.zeta, "zeta")?;
    let modulus = decode_poly(&k, &doc.modulus, "modulus")?;
    if !modulus.is_monic() {
        return Err(Error::schema("modulus", "modulus must be monic"));
    }
    let e = Field::extension(&k, modulus.clone()).map_err(at("modulus"))?;
    let sigma_image = decode_elem(&e, &Value::Array(doc.sigma_image.clone()), "sigma_image")?;
    CyclicExtensionInput::new(k, modulus, n, zeta, sigma_image).map_err(at("document"))
}

pub fn encode_certificate(cert: &KummerCertificate) -> CertificateDoc {
    let k = cert.input.base();
    CertificateDoc {
        input: encode_input(&cert.input),
        eigen: cert
            .eigen
            .gamma
            .iter()
            .map(|g| EigenDoc {
                i: g.exponent.to_string(),
                eigenvalue: encode_elem(k, &g.value),
                dimension: g.dimension.to_string(),
            })
            .collect(),
        sigma_min_poly: encode_poly(&cert.eigen.sigma_min_poly),
        x: cert.x.coords().iter().map(|c| encode_elem(k, c)).collect(),
        c: encode_elem(k, &cert.c),
        x_min_poly: encode_poly(&cert.x_min_poly),
        checks: cert.checks,
        version: cert.version.clone(),
    }
}

pub fn decode_certificate(doc: &CertificateDoc) -> Result<KummerCertificate> {
    let input = decode_input(&doc.input)?;
    let (k, e) = (input.base(), input.extension());
    let gamma = doc
        .eigen
        .iter()
        .enumerate()
        .map(|(idx, g)| {
            let path = format!("eigen[{idx}]");
            Ok(Eigenvalue {
                exponent: parse_count(&g.i, &format!("{path}.i"))? as usize,
                value: decode_elem(k, &g.eigenvalue, &format!("{path}.eigenvalue"))?,
                dimension: parse_count(&g.dimension, &format!("{path}.dimension"))? as usize,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(KummerCertificate {
        eigen: EigenReport {
            m: gamma.len(),
            gamma,
            sigma_min_poly: decode_poly(k, &doc.sigma_min_poly, "sigma_min_poly")?,
        },
        x: decode_elem(e, &Value::Array(doc.x.clone()), "x")?,
        c: decode_elem(k, &doc.c, "c")?,
        x_min_poly: decode_poly(k, &doc.x_min_poly, "x_min_poly")?,
        checks: doc.checks,
        version: doc.version.clone(),
        input,
    })
}

/// Maps a serde_json failure to a positioned parse error or a schema violation.
pub fn json_error(err: serde_json::Error) -> Error {
    use serde_json::error::Category;
    match err.classify() {
        Category::Syntax | Category::Eof | Category::Io => Error::Parse {
            line: err.line(),
            column: err.column(),
            message: err.to_string(),
        },
        Category::Data => Error::schema("document", err.to_string()),
    }
}

pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents always serialize");
    s.push('\n');
    s
}

pub fn certificate_to_json(cert: &KummerCertificate) -> String {
    to_canonical_json(&encode_certificate(cert))
}

/// Accepts a bare certificate or a run report that embeds one.
pub fn certificate_from_json(text: &str) -> Result<KummerCertificate> {
    let value: Value = serde_json::from_str(text).map_err(json_error)?;
    let cert_value = match value.get("certificate") {
        Some(inner) if value.get("outcome").is_some() => inner.clone(),
        _ => value,
    };
    let doc: CertificateDoc = serde_json::from_value(cert_value).map_err(json_error)?;
    decode_certificate(&doc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_wire_format() {
        let q = Field::Rationals;
        let p = Polynomial::from_ints(&q, &[-2, 0, 1]);
        assert_eq!(
            serde_json::to_string(&encode_poly(&p)).unwrap(),
            r#"["-2","0","1"]"#
        );
        let f5 = Field::prime(5).unwrap();
        let p = Polynomial::from_ints(&f5, &[-2, 0, 1]);
        assert_eq!(
            serde_json::to_string(&encode_poly(&p)).unwrap(),
            r#"["3","0","1"]"#
        );
    }

    #[test]
    fn field_doc_shape() {
        let doc = encode_field(&Field::prime(13).unwrap());
        assert_eq!(
            serde_json::to_string(&doc).unwrap(),
            r#"{"kind":"prime","p":"13"}"#
        );
        assert_eq!(
            serde_json::to_string(&FieldDoc::Rationals).unwrap(),
            r#"{"kind":"rationals"}"#
        );
    }

    #[test]
    fn nested_elements_round_trip() {
        let q = Field::Rationals;
        let k = Field::extension(&q, Polynomial::from_ints(&q, &[1, 1, 1])).unwrap();
        let a = k
            .from_coords(vec![
                Elem::Rational(Rational::new(-1, 2).unwrap()),
                q.from_int(3),
            ])
            .unwrap();
        let v = encode_elem(&k, &a);
        assert_eq!(v.to_string(), r#"["-1/2","3"]"#);
        assert_eq!(decode_elem(&k, &v, "a").unwrap(), a);
        assert!(decode_elem(&k, &serde_json::json!(["1"]), "a").is_err());
        assert!(decode_elem(&k, &serde_json::json!("1"), "a").is_err());
    }

    #[test]
    fn prime_scalars_reduce() {
        let f5 = Field::prime(5).unwrap();
        assert_eq!(
            decode_elem(&f5, &Value::String("-2".into()), "s").unwrap(),
            Elem::Residue(3)
        );
        assert!(decode_elem(&f5, &Value::String("1/2".into()), "s").is_err());
        assert!(decode_elem(&f5, &serde_json::json!(3), "s").is_err());
    }
}
