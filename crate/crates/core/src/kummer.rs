//! Radical generators of cyclic extensions.
//!
//! Given `E = K[X]/(f)` of degree `n`, a primitive `n`-th root of unity
//! `zeta` in `K`, and a generator `sigma` of `Gal(E/K)` presented by the image
//! `s = sigma(a)` of the class `a` of `X`, the pipeline treats `sigma` as a
//! `K`-linear operator on `E`, decomposes it into eigenspaces, picks the
//! canonical `zeta`-eigenvector `x`, and records every property that makes
//! `x` a radical generator: `x^n = c` lies in `K` and `X^n - c` is the
//! minimal polynomial of `x`, so `E = K(x)`.
//!
//! Each step is checked rather than assumed. A false flag on an input that
//! passed [`validate_setup`] means some unchecked hypothesis failed, typically
//! a reducible modulus over `Q`.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{first_dependency, nullspace, operator_matrix, operator_min_poly, Matrix};
use crate::poly::Polynomial;
use crate::scalar::prime_factors;
use crate::tower::{Elem, Field};

pub const CERTIFICATE_VERSION: &str = "1";

/// A cyclic extension presented as a quotient ring, with `zeta` and the
/// generator `sigma` of its Galois group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicExtensionInput {
    base: Field,
    extension: Field,
    n: usize,
    zeta: Elem,
    sigma_image: Elem,
}

impl CyclicExtensionInput {
    /// Builds `E = base[X]/(modulus)` and checks that `zeta` and
    /// `sigma_image` are well-formed elements of `K` and `E`. The theorem's
    /// hypotheses are left to [`validate_setup`].
    pub fn new(
        base: Field,
        modulus: Polynomial,
        n: usize,
        zeta: Elem,
        sigma_image: Elem,
    ) -> Result<Self> {
        let extension = Field::extension(&base, modulus)?;
        if !base.contains(&zeta) || !extension.contains(&sigma_image) {
            return Err(Error::FieldMismatch);
        }
        Ok(CyclicExtensionInput {
            base,
            extension,
            n,
            zeta,
            sigma_image,
        })
    }

    /// The field `K`.
    pub fn base(&self) -> &Field {
        &self.base
    }

    /// The field `E`.
    pub fn extension(&self) -> &Field {
        &self.extension
    }

    pub fn modulus(&self) -> &Polynomial {
        self.extension.modulus().expect("E is an extension")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn zeta(&self) -> &Elem {
        &self.zeta
    }

    pub fn sigma_image(&self) -> &Elem {
        &self.sigma_image
    }
}

/// An input whose hypotheses have been checked, with cached powers of zeta.
#[derive(Clone, Debug)]
pub struct Context {
    input: CyclicExtensionInput,
    zeta_powers: Vec<Elem>,
}

impl Context {
    pub fn input(&self) -> &CyclicExtensionInput {
        &self.input
    }

    pub fn n(&self) -> usize {
        self.input.n
    }

    pub fn base(&self) -> &Field {
        &self.input.base
    }

    pub fn extension(&self) -> &Field {
        &self.input.extension
    }

    /// `zeta^i` for any integer `i`.
    pub fn zeta_pow(&self, i: i64) -> &Elem {
        &self.zeta_powers[i.rem_euclid(self.n() as i64) as usize]
    }

    /// `sigma(y)`: substitutes `sigma(a)` for `a` in the coordinate expansion of `y`.
    pub fn apply_sigma(&self, y: &Elem) -> Elem {
        apply_sigma(&self.input, y)
    }
}

fn apply_sigma(input: &CyclicExtensionInput, y: &Elem) -> Elem {
    let rep = Polynomial::new(input.base.clone(), y.coords().to_vec());
    input.extension.eval_base_poly(&rep, &input.sigma_image)
}

/// Checks the hypotheses: `deg f = n`, the characteristic does not divide
/// `n`, `zeta` is a primitive `n`-th root of unity, `f(sigma(a)) = 0`, and
/// `sigma` has order exactly `n`.
pub fn validate_setup(input: CyclicExtensionInput) -> Result<Context> {
    let n = input.n;
    let (k, e) = (&input.base, &input.extension);
    if n == 0 || e.degree() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: e.degree(),
        });
    }
    let ch = k.characteristic();
    if ch != 0 && (n as u64).is_multiple_of(ch) {
        return Err(Error::CharacteristicDividesN {
            characteristic: ch,
            n,
        });
    }
    let primitive = k.pow(&input.zeta, n as u64) == k.one()
        && prime_factors(n as u64)
            .into_iter()
            .all(|q| k.pow(&input.zeta, n as u64 / q) != k.one());
    if !primitive {
        return Err(Error::NoPrimitiveRoot {
            n,
            field: k.to_string(),
        });
    }
    if !e.is_zero(&e.eval_base_poly(input.modulus(), &input.sigma_image)) {
        return Err(Error::NotAnAutomorphism);
    }
    let alpha = e.generator().expect("E is an extension");
    let mut iterate = input.sigma_image.clone();
    let mut order = None;
    for k in 1..=n {
        if iterate == alpha {
            order = Some(k);
            break;
        }
        iterate = apply_sigma(&input, &iterate);
    }
    if order != Some(n) {
        return Err(Error::AutomorphismOrderMismatch {
            order: order.map_or_else(|| format!("> {n}"), |k| k.to_string()),
            n,
        });
    }
    let zeta_powers = (0..n as u64).map(|i| k.pow(&input.zeta, i)).collect();
    Ok(Context { input, zeta_powers })
}

/// Matrix of `sigma` over `K` in the power basis; column `j` holds `sigma(a)^j`.
pub fn sigma_matrix(ctx: &Context) -> Matrix {
    let e = ctx.extension();
    let s = &ctx.input.sigma_image;
    let mut images = Vec::with_capacity(ctx.n());
    let mut power = e.one();
    for _ in 0..ctx.n() {
        images.push(power.clone());
        power = e.mul(&power, s);
    }
    operator_matrix(e, &images).expect("images are elements of E")
}

/// Whether the minimal polynomial of `sigma` divides `X^n - 1` and
/// `sigma^n = id`; also returns that minimal polynomial.
pub fn check_diagonalizability(ctx: &Context, m: &Matrix) -> (bool, Polynomial) {
    let k = ctx.base();
    let min_poly = operator_min_poly(m).expect("sigma matrix is square");
    let x_n_minus_1 = Polynomial::binomial(k, ctx.n(), &k.one());
    let divides = x_n_minus_1.rem(&min_poly).is_ok_and(|r| r.is_zero());
    let periodic = m
        .pow(ctx.n() as u64)
        .is_ok_and(|p| p == Matrix::identity(k, ctx.n()));
    (divides && periodic, min_poly)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Eigenvalue {
    /// `i` such that the eigenvalue is `zeta^i`.
    pub exponent: usize,
    pub value: Elem,
    pub dimension: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenReport {
    /// Eigenvalues `zeta^i` with a nonzero eigenspace, by increasing `i`.
    pub gamma: Vec<Eigenvalue>,
    pub m: usize,
    pub sigma_min_poly: Polynomial,
}

/// An eigen report together with one canonical eigenvector per eigenvalue.
#[derive(Clone, Debug)]
pub struct Spectrum {
    pub report: EigenReport,
    pub eigenvectors: Vec<Elem>,
}

/// Rescales so the lowest-index nonzero entry is 1.
pub fn canonical_scale(field: &Field, v: &[Elem]) -> Vec<Elem> {
    match v.iter().find(|c| !field.is_zero(c)) {
        None => v.to_vec(),
        Some(lead) => {
            let inv = field.inv(lead).expect("nonzero");
            v.iter().map(|c| field.mul(&inv, c)).collect()
        }
    }
}

/// Eigenspace dimension of `zeta^i` for each `i = 0, ..., n-1`.
pub fn eigen_spectrum(ctx: &Context, m: &Matrix, sigma_min_poly: Polynomial) -> Spectrum {
    let k = ctx.base();
    let mut gamma = Vec::new();
    let mut eigenvectors = Vec::new();
    for i in 0..ctx.n() {
        let value = ctx.zeta_pow(i as i64).clone();
        let kernel = nullspace(&m.shift(&value));
        if let Some(v) = kernel.first() {
            gamma.push(Eigenvalue {
                exponent: i,
                value,
                dimension: kernel.len(),
            });
            eigenvectors.push(Elem::Vector(canonical_scale(k, v)));
        }
    }
    Spectrum {
        report: EigenReport {
            m: gamma.len(),
            gamma,
            sigma_min_poly,
        },
        eigenvectors,
    }
}

/// For every pair of stored eigenvectors `a`, `b` with eigenvalues `l`, `u`:
/// `sigma(ab) = l*u*ab` and `l*u` is again in the spectrum.
pub fn check_gamma_closure(ctx: &Context, spectrum: &Spectrum) -> bool {
    let (k, e) = (ctx.base(), ctx.extension());
    let gamma = &spectrum.report.gamma;
    let values: Vec<&Elem> = gamma.iter().map(|g| &g.value).collect();
    for (ga, a) in gamma.iter().zip(&spectrum.eigenvectors) {
        for (gb, b) in gamma.iter().zip(&spectrum.eigenvectors) {
            let ab = e.mul(a, b);
            let lm = k.mul(&ga.value, &gb.value);
            if ctx.apply_sigma(&ab) != e.scale(&lm, &ab) || !values.contains(&&lm) {
                return false;
            }
        }
    }
    true
}

/// Every `n`-th root of unity is an eigenvalue, each with a line as eigenspace.
pub fn check_spectrum_complete(ctx: &Context, report: &EigenReport) -> bool {
    let total: usize = report.gamma.iter().map(|g| g.dimension).sum();
    report.m == ctx.n() && report.gamma.iter().all(|g| g.dimension == 1) && total == ctx.n()
}

/// The fixed space of `sigma` is exactly the constants `K`.
pub fn check_fixed_field(ctx: &Context, m: &Matrix) -> bool {
    let k = ctx.base();
    let kernel = nullspace(&m.shift(&k.one()));
    match kernel.as_slice() {
        [v] => canonical_scale(k, v) == ctx.extension().one().coords(),
        _ => false,
    }
}

/// The canonical `zeta`-eigenvector: first kernel basis vector of
/// `M - zeta*I`, scaled so its lowest nonzero coordinate is 1.
pub fn extract_radical_generator(ctx: &Context, m: &Matrix) -> Result<Elem> {
    let k = ctx.base();
    let kernel = nullspace(&m.shift(ctx.zeta_pow(1)));
    let v = kernel.first().ok_or(Error::EmptyEigenspace)?;
    Ok(Elem::Vector(canonical_scale(k, v)))
}

/// `sum_i zeta^(-i) sigma^i(a)`, always in the `zeta`-eigenspace.
pub fn lagrange_resolvent(ctx: &Context, a: &Elem) -> Elem {
    let e = ctx.extension();
    let mut acc = e.zero();
    let mut term = a.clone();
    for i in 0..ctx.n() as i64 {
        acc = e.add(&acc, &e.scale(ctx.zeta_pow(-i), &term));
        term = ctx.apply_sigma(&term);
    }
    acc
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
#[allow(non_snake_case)]
pub struct Checks {
    pub hypotheses_ok: bool,
    pub sigma_is_automorphism: bool,
    pub sigma_order_n: bool,
    pub fixed_field_is_K: bool,
    pub min_poly_divides_Xn_minus_1: bool,
    pub spectrum_complete: bool,
    pub c_in_base: bool,
    pub x_min_poly_degree_n: bool,
    pub root_orbit_transitive: bool,
    pub binomial_factorization: bool,
}

impl Checks {
    pub fn all(&self) -> bool {
        self.named().iter().all(|(_, v)| *v)
    }

    pub fn named(&self) -> [(&'static str, bool); 10] {
        [
            ("hypotheses_ok", self.hypotheses_ok),
            ("sigma_is_automorphism", self.sigma_is_automorphism),
            ("sigma_order_n", self.sigma_order_n),
            ("fixed_field_is_K", self.fixed_field_is_K),
            (
                "min_poly_divides_Xn_minus_1",
                self.min_poly_divides_Xn_minus_1,
            ),
            ("spectrum_complete", self.spectrum_complete),
            ("c_in_base", self.c_in_base),
            ("x_min_poly_degree_n", self.x_min_poly_degree_n),
            ("root_orbit_transitive", self.root_orbit_transitive),
            ("binomial_factorization", self.binomial_factorization),
        ]
    }
}

/// Properties of a candidate radical generator `x`.
#[derive(Clone, Debug)]
pub struct GeneratorChecks {
    /// The constant coordinate of `x^n`; equals `x^n` when `c_in_base` holds.
    pub c: Elem,
    pub x_min_poly: Polynomial,
    pub c_in_base: bool,
    pub x_min_poly_degree_n: bool,
    pub root_orbit_transitive: bool,
    pub binomial_factorization: bool,
}

impl GeneratorChecks {
    pub fn all(&self) -> bool {
        self.c_in_base
            && self.x_min_poly_degree_n
            && self.root_orbit_transitive
            && self.binomial_factorization
    }
}

/// Minimal polynomial over `K` of an element of `E`, from the first linear
/// relation among `1, y, y^2, ...`.
pub fn element_min_poly(ctx: &Context, y: &Elem) -> Polynomial {
    let e = ctx.extension();
    let mut power = e.one();
    let seq = std::iter::from_fn(|| {
        let out = power.coords().to_vec();
        power = e.mul(&power, y);
        Some(out)
    });
    first_dependency(ctx.base(), seq, ctx.n()).expect("n+1 powers are dependent")
}

/// `prod_i (X - zeta^i x)` in `E[X]`.
pub fn root_product(ctx: &Context, x: &Elem) -> Polynomial {
    let e = ctx.extension();
    (0..ctx.n() as i64).fold(Polynomial::one(e), |acc, i| {
        let root = e.scale(ctx.zeta_pow(i), x);
        acc.mul(&Polynomial::new(e.clone(), vec![e.neg(&root), e.one()]))
    })
}

pub fn generator_checks(ctx: &Context, x: &Elem) -> GeneratorChecks {
    let e = ctx.extension();
    let n = ctx.n();
    let x_n = e.pow(x, n as u64);
    let base_part = e.base_part(&x_n);
    let c_in_base = base_part.is_some() && ctx.apply_sigma(&x_n) == x_n;
    let c = base_part.unwrap_or_else(|| x_n.coords()[0].clone());

    let x_min_poly = element_min_poly(ctx, x);
    let x_min_poly_degree_n = x_min_poly.degree() == Some(n);

    let root_orbit_transitive = !e.is_zero(x)
        && (0..n as i64).all(|i| {
            let root = e.scale(ctx.zeta_pow(i), x);
            ctx.apply_sigma(&root) == e.scale(ctx.zeta_pow(i + 1), x)
        });

    let binomial_factorization = c_in_base
        && root_product(ctx, x) == Polynomial::binomial(e, n, &e.embed_base(&c).expect("c in K"));

    GeneratorChecks {
        c,
        x_min_poly,
        c_in_base,
        x_min_poly_degree_n,
        root_orbit_transitive,
        binomial_factorization,
    }
}

/// The witness that `E = K(x)` with `x^n = c` in `K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KummerCertificate {
    pub input: CyclicExtensionInput,
    pub eigen: EigenReport,
    pub x: Elem,
    pub c: Elem,
    pub x_min_poly: Polynomial,
    pub checks: Checks,
    pub version: String,
}

impl KummerCertificate {
    pub fn is_valid(&self) -> bool {
        self.checks.all()
    }
}

pub type StageTimings = Vec<(&'static str, Duration)>;

pub fn compute_certificate(ctx: &Context) -> Result<KummerCertificate> {
    Ok(compute_certificate_timed(ctx)?.0)
}

/// Runs the pipeline and reports how long each stage took.
pub fn compute_certificate_timed(ctx: &Context) -> Result<(KummerCertificate, StageTimings)> {
    let mut timings = Vec::new();
    let mut clock = Instant::now();
    let mut lap = |name: &'static str, timings: &mut StageTimings| {
        let now = Instant::now();
        timings.push((name, now - clock));
        clock = now;
    };

    let m = sigma_matrix(ctx);
    lap("sigma_matrix", &mut timings);
    let (diagonalizable, sigma_min_poly) = check_diagonalizability(ctx, &m);
    lap("diagonalizability", &mut timings);
    let spectrum = eigen_spectrum(ctx, &m, sigma_min_poly);
    lap("eigen_spectrum", &mut timings);
    let closed = check_gamma_closure(ctx, &spectrum);
    lap("gamma_closure", &mut timings);
    let complete = check_spectrum_complete(ctx, &spectrum.report);
    let fixed = check_fixed_field(ctx, &m);
    lap("fixed_field", &mut timings);
    let x = extract_radical_generator(ctx, &m)?;
    lap("radical_generator", &mut timings);
    let gen = generator_checks(ctx, &x);
    lap("generator_checks", &mut timings);

    let checks = Checks {
        // A context only exists for inputs that passed validate_setup.
        hypotheses_ok: true,
        sigma_is_automorphism: true,
        sigma_order_n: true,
        fixed_field_is_K: fixed,
        min_poly_divides_Xn_minus_1: diagonalizable,
        spectrum_complete: closed && complete,
        c_in_base: gen.c_in_base,
        x_min_poly_degree_n: gen.x_min_poly_degree_n,
        root_orbit_transitive: gen.root_orbit_transitive,
        binomial_factorization: gen.binomial_factorization,
    };
    let cert = KummerCertificate {
        input: ctx.input.clone(),
        eigen: spectrum.report,
        x,
        c: gen.c,
        x_min_poly: gen.x_min_poly,
        checks,
        version: CERTIFICATE_VERSION.to_string(),
    };
    Ok((cert, timings))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub property: &'static str,
    pub detail: String,
}

/// Outcome of re-checking a certificate; empty `failures` means it holds.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Verification {
    pub failures: Vec<Failure>,
}

impl Verification {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn first_failure(&self) -> Option<&Failure> {
        self.failures.first()
    }

    fn require(&mut self, ok: bool, property: &'static str, detail: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(Failure {
                property,
                detail: detail(),
            });
        }
    }
}

/// Re-derives every property from the echoed input and the recorded `x`.
/// Recorded intermediates (`c`, minimal polynomials, eigen report, flags) are
/// compared against fresh values, never used as premises.
pub fn verify_certificate(cert: &KummerCertificate) -> Result<Verification> {
    let mut out = Verification::default();
    let ctx = match validate_setup(cert.input.clone()) {
        Ok(ctx) => ctx,
        Err(err) => {
            out.require(false, "hypotheses", || err.to_string());
            return Ok(out);
        }
    };
    let (k, e) = (ctx.base(), ctx.extension());
    if !e.contains(&cert.x) {
        return Err(Error::MalformedCertificate(
            "x is not an element of E".into(),
        ));
    }
    if !k.contains(&cert.c) {
        return Err(Error::MalformedCertificate(
            "c is not an element of K".into(),
        ));
    }
    if cert.x_min_poly.field() != k || cert.eigen.sigma_min_poly.field() != k {
        return Err(Error::MalformedCertificate(
            "polynomials must be over K".into(),
        ));
    }
    let x = &cert.x;
    let n = ctx.n();

    out.require(!e.is_zero(x), "x is nonzero", || "x = 0".into());
    out.require(
        ctx.apply_sigma(x) == e.scale(ctx.zeta_pow(1), x),
        "sigma(x) = zeta*x",
        || "x is not a zeta-eigenvector of sigma".into(),
    );
    let x_n = e.pow(x, n as u64);
    out.require(
        x_n == e.embed_base(&cert.c).expect("c in K"),
        "x^n = c",
        || format!("x^n = {x_n}, recorded c = {}", cert.c),
    );
    out.require(
        e.base_part(&x_n).is_some() && ctx.apply_sigma(&x_n) == x_n,
        "x^n in K",
        || format!("x^n = {x_n} is not fixed by sigma"),
    );

    let gen = generator_checks(&ctx, x);
    out.require(gen.x_min_poly_degree_n, "x min poly degree n", || {
        format!("minimal polynomial {} has degree != {n}", gen.x_min_poly)
    });
    out.require(
        gen.x_min_poly == cert.x_min_poly,
        "x_min_poly matches",
        || {
            format!(
                "recorded {}, recomputed {}",
                cert.x_min_poly, gen.x_min_poly
            )
        },
    );
    out.require(gen.root_orbit_transitive, "root orbit transitive", || {
        "sigma does not cycle the roots zeta^i x".into()
    });
    let binomial = Polynomial::binomial(e, n, &e.embed_base(&cert.c).expect("c in K"));
    out.require(
        root_product(&ctx, x) == binomial,
        "binomial factorization",
        || "prod (X - zeta^i x) != X^n - c".into(),
    );

    let m = sigma_matrix(&ctx);
    let (_, sigma_min_poly) = check_diagonalizability(&ctx, &m);
    let report = eigen_spectrum(&ctx, &m, sigma_min_poly).report;
    out.require(
        report.gamma == cert.eigen.gamma && report.m == cert.eigen.m,
        "eigen report matches",
        || "recorded eigenvalues or dimensions differ from recomputed ones".into(),
    );
    out.require(
        report.sigma_min_poly == cert.eigen.sigma_min_poly,
        "sigma min poly matches",
        || {
            format!(
                "recorded {}, recomputed {}",
                cert.eigen.sigma_min_poly, report.sigma_min_poly
            )
        },
    );

    let false_flags: Vec<&str> = cert
        .checks
        .named()
        .iter()
        .filter(|(_, v)| !v)
        .map(|(name, _)| *name)
        .collect();
    out.require(false_flags.is_empty(), "stored flags", || {
        format!("false flags: {}", false_flags.join(", "))
    });
    out.require(cert.version == CERTIFICATE_VERSION, "version", || {
        format!("unsupported certificate version {:?}", cert.version)
    });
    Ok(out)
}
