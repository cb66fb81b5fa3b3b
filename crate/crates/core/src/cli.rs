//! Command handlers behind the `kummer` binary.
//!
//! Each handler returns the text it would print and the process exit code:
//! 0 valid, 1 rejected input, 2 property failure, 3 parse or I/O error.

use std::fmt::Write as _;
use std::panic::{self, AssertUnwindSafe};
use std::path::Path;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Error;
use crate::families::{frobenius_family, parse_tower_spec};
use crate::kummer::{
    compute_certificate_timed, validate_setup, verify_certificate, CyclicExtensionInput,
    KummerCertificate, Verification,
};
use crate::poly::Polynomial;
use crate::scalar::{divisors, is_prime};
use crate::schema::{certificate_from_json, encode_certificate, to_canonical_json, CertificateDoc};
use crate::tower::{Elem, Field};

pub const EXIT_VALID: i32 = 0;
pub const EXIT_REJECTED: i32 = 1;
pub const EXIT_PROPERTY: i32 = 2;
pub const EXIT_PARSE: i32 = 3;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    fn new(code: i32, stdout: String) -> Self {
        Output {
            code,
            stdout,
            stderr: String::new(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Valid,
    Invalid,
    Error,
}

#[derive(Clone, Debug)]
pub struct RunReport {
    pub certificate: Option<KummerCertificate>,
    pub timing: Vec<(&'static str, Duration)>,
    pub outcome: Outcome,
    pub error: Option<(String, String)>,
}

impl RunReport {
    fn failed(err: &Error) -> Self {
        RunReport {
            certificate: None,
            timing: Vec::new(),
            outcome: Outcome::Error,
            error: Some((err.code().to_string(), err.to_string())),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match (&self.outcome, &self.error) {
            (Outcome::Valid, _) => EXIT_VALID,
            (Outcome::Invalid, _) => EXIT_PROPERTY,
            (Outcome::Error, Some((code, _))) => exit_code_for(code),
            (Outcome::Error, None) => EXIT_PROPERTY,
        }
    }
}

fn exit_code_for(code: &str) -> i32 {
    match code {
        "ParseError" | "SchemaViolation" => EXIT_PARSE,
        "EmptyEigenspace" | "NotInvertible" | "MalformedCertificate" | "InternalError" => {
            EXIT_PROPERTY
        }
        _ => EXIT_REJECTED,
    }
}

#[derive(Serialize)]
struct ErrorDoc<'a> {
    code: &'a str,
    message: &'a str,
}

#[derive(Serialize)]
struct StageDoc {
    stage: &'static str,
    ms: String,
}

#[derive(Serialize)]
struct RunReportDoc<'a> {
    outcome: Outcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<ErrorDoc<'a>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<CertificateDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    timing: Option<Vec<StageDoc>>,
}

fn millis(d: Duration) -> String {
    let micros = d.as_micros();
    format!("{}.{:03}", micros / 1000, micros % 1000)
}

/// Validates and certifies, converting panics from a non-field quotient ring
/// (a reducible modulus over Q) into an internal error.
pub fn run_pipeline(input: CyclicExtensionInput) -> RunReport {
    let start = Instant::now();
    let ctx = match validate_setup(input) {
        Ok(ctx) => ctx,
        Err(err) => return RunReport::failed(&err),
    };
    let validated = start.elapsed();
    let result = panic::catch_unwind(AssertUnwindSafe(|| compute_certificate_timed(&ctx)));
    match result {
        Ok(Ok((cert, mut timing))) => {
            timing.insert(0, ("validate_setup", validated));
            let outcome = if cert.is_valid() {
                Outcome::Valid
            } else {
                Outcome::Invalid
            };
            RunReport {
                certificate: Some(cert),
                timing,
                outcome,
                error: None,
            }
        }
        Ok(Err(err)) => RunReport::failed(&err),
        Err(_) => RunReport {
            certificate: None,
            timing: Vec::new(),
            outcome: Outcome::Error,
            error: Some((
                "InternalError".into(),
                "arithmetic failed inside the pipeline; a modulus is probably reducible".into(),
            )),
        },
    }
}

pub fn render_report(report: &RunReport, format: Format, timing: bool) -> String {
    match format {
        Format::Json => {
            let doc = RunReportDoc {
                outcome: report.outcome,
                error: report
                    .error
                    .as_ref()
                    .map(|(code, message)| ErrorDoc { code, message }),
                certificate: report.certificate.as_ref().map(encode_certificate),
                timing: timing.then(|| {
                    report
                        .timing
                        .iter()
                        .map(|(stage, d)| StageDoc {
                            stage,
                            ms: millis(*d),
                        })
                        .collect()
                }),
            };
            to_canonical_json(&doc)
        }
        Format::Text => render_text(report, timing),
    }
}

fn render_text(report: &RunReport, timing: bool) -> String {
    let mut s = String::new();
    let outcome = match report.outcome {
        Outcome::Valid => "valid",
        Outcome::Invalid => "invalid",
        Outcome::Error => "error",
    };
    writeln!(s, "outcome: {outcome}").unwrap();
    if let Some((code, message)) = &report.error {
        writeln!(s, "error: {code}: {message}").unwrap();
    }
    if let Some(cert) = &report.certificate {
        let input = &cert.input;
        writeln!(s, "K: {}", input.base()).unwrap();
        writeln!(s, "E: K[X]/({})", input.modulus()).unwrap();
        writeln!(s, "n: {}", input.n()).unwrap();
        writeln!(s, "zeta: {}", input.zeta()).unwrap();
        writeln!(s, "sigma(a): {}", input.sigma_image()).unwrap();
        writeln!(s, "eigenvalues:").unwrap();
        for g in &cert.eigen.gamma {
            writeln!(
                s,
                "  zeta^{} = {} (dim {})",
                g.exponent, g.value, g.dimension
            )
            .unwrap();
        }
        writeln!(s, "sigma min poly: {}", cert.eigen.sigma_min_poly).unwrap();
        writeln!(s, "x: {}", cert.x).unwrap();
        writeln!(s, "c = x^n: {}", cert.c).unwrap();
        writeln!(s, "x min poly: {}", cert.x_min_poly).unwrap();
        writeln!(s, "checks:").unwrap();
        for (name, value) in cert.checks.named() {
            writeln!(s, "  {name}: {value}").unwrap();
        }
    }
    if timing {
        writeln!(s, "timing (ms):").unwrap();
        for (stage, d) in &report.timing {
            writeln!(s, "  {stage}: {}", millis(*d)).unwrap();
        }
    }
    s
}

/// Parses a comma-separated, degree-ascending coefficient list over F_p.
pub fn parse_modulus(field: &Field, text: &str) -> Result<Polynomial, String> {
    let Field::Prime(fp) = field else {
        return Err("moduli on the command line are over F_p".into());
    };
    let coeffs = text
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<BigInt>()
                .map(|v| Elem::Residue(fp.reduce(&v)))
                .map_err(|_| format!("bad coefficient {t:?} in --modulus"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Polynomial::new(field.clone(), coeffs))
}

pub fn cmd_finite(p: u64, n: usize, modulus: Option<&str>, format: Format, timing: bool) -> Output {
    let report = match Field::prime(p) {
        Err(err) => RunReport::failed(&err),
        Ok(field) => {
            let modulus = match modulus.map(|m| parse_modulus(&field, m)).transpose() {
                Ok(m) => m,
                Err(message) => {
                    return Output {
                        code: EXIT_PARSE,
                        stdout: String::new(),
                        stderr: format!("error: {message}\n"),
                    }
                }
            };
            match frobenius_family(p, n, modulus) {
                Ok(input) => run_pipeline(input),
                Err(err) => RunReport::failed(&err),
            }
        }
    };
    Output::new(report.exit_code(), render_report(&report, format, timing))
}

pub fn cmd_tower(path: &Path, format: Format, timing: bool) -> Output {
    let report = match std::fs::read_to_string(path) {
        Err(err) => RunReport::failed(&Error::Parse {
            line: 0,
            column: 0,
            message: format!("{}: {err}", path.display()),
        }),
        Ok(text) => match parse_tower_spec(&text) {
            Ok(input) => run_pipeline(input),
            Err(err) => RunReport::failed(&err),
        },
    };
    Output::new(report.exit_code(), render_report(&report, format, timing))
}

#[derive(Serialize)]
struct FailureDoc<'a> {
    property: &'a str,
    detail: &'a str,
}

#[derive(Serialize)]
struct VerifyDoc<'a> {
    holds: bool,
    failures: Vec<FailureDoc<'a>>,
}

fn render_verification(v: &Verification, format: Format) -> String {
    match format {
        Format::Json => to_canonical_json(&VerifyDoc {
            holds: v.holds(),
            failures: v
                .failures
                .iter()
                .map(|f| FailureDoc {
                    property: f.property,
                    detail: &f.detail,
                })
                .collect(),
        }),
        Format::Text => match v.first_failure() {
            None => "certificate holds\n".to_string(),
            Some(f) => format!("certificate fails: {} ({})\n", f.property, f.detail),
        },
    }
}

pub fn cmd_verify(path: &Path, format: Format) -> Output {
    let fail = |code: i32, message: String| Output {
        code,
        stdout: String::new(),
        stderr: format!("error: {message}\n"),
    };
    let text = match std::fs::read_to_string(path) {
        Ok(text) => text,
        Err(err) => return fail(EXIT_PARSE, format!("{}: {err}", path.display())),
    };
    let cert = match certificate_from_json(&text) {
        Ok(cert) => cert,
        Err(err) => return fail(EXIT_PARSE, err.to_string()),
    };
    match verify_certificate(&cert) {
        Ok(v) => {
            let code = if v.holds() { EXIT_VALID } else { EXIT_PROPERTY };
            Output::new(code, render_verification(&v, format))
        }
        Err(err) => fail(EXIT_PARSE, err.to_string()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseResult {
    pub p: String,
    pub n: String,
    pub result: &'static str,
}

/// All `(p, n)` with `p <= max_p` prime and `n | p - 1`, `n <= max_n`, sorted.
pub fn selftest_cases(max_p: u64, max_n: usize) -> Vec<(u64, usize)> {
    (2..=max_p)
        .filter(|&p| is_prime(p))
        .flat_map(|p| {
            divisors(p - 1)
                .into_iter()
                .filter(move |&n| n as usize <= max_n)
                .map(move |n| (p, n as usize))
        })
        .collect()
}

/// Runs the pipeline and the independent verifier on one Frobenius case.
pub fn run_case(p: u64, n: usize) -> bool {
    let Ok(input) = frobenius_family(p, n, None) else {
        return false;
    };
    let report = run_pipeline(input);
    match (&report.outcome, &report.certificate) {
        (Outcome::Valid, Some(cert)) => verify_certificate(cert).is_ok_and(|v| v.holds()),
        _ => false,
    }
}

#[derive(Serialize)]
struct SelftestDoc {
    cases: Vec<CaseResult>,
    passed: String,
    failed: String,
    total: String,
}

/// `jobs = 0` lets the thread pool pick its size.
pub fn cmd_selftest(max_p: u64, max_n: usize, jobs: usize, format: Format) -> Output {
    if max_p < 3 {
        return Output {
            code: EXIT_REJECTED,
            stdout: String::new(),
            stderr: "error: --max-p must be at least 3\n".into(),
        };
    }
    let cases = selftest_cases(max_p, max_n);
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool,
        Err(err) => {
            return Output {
                code: EXIT_REJECTED,
                stdout: String::new(),
                stderr: format!("error: {err}\n"),
            }
        }
    };
    let results: Vec<CaseResult> = pool.install(|| {
        cases
            .par_iter()
            .map(|&(p, n)| CaseResult {
                p: p.to_string(),
                n: n.to_string(),
                result: if run_case(p, n) { "pass" } else { "fail" },
            })
            .collect()
    });
    let passed = results.iter().filter(|r| r.result == "pass").count();
    let failed = results.len() - passed;
    let stdout = match format {
        Format::Json => to_canonical_json(&SelftestDoc {
            passed: passed.to_string(),
            failed: failed.to_string(),
            total: results.len().to_string(),
            cases: results,
        }),
        Format::Text => {
            let mut s = String::from("p\tn\tresult\n");
            for r in &results {
                writeln!(s, "{}\t{}\t{}", r.p, r.n, r.result).unwrap();
            }
            writeln!(
                s,
                "passed {passed}, failed {failed}, total {}",
                results.len()
            )
            .unwrap();
            s
        }
    };
    let code = if failed == 0 {
        EXIT_VALID
    } else {
        EXIT_PROPERTY
    };
    Output::new(code, stdout)
}
