use std::collections::BTreeMap;

use bsat_arr::algebra::{binomial, format_rational, Monomial, Polynomial, Rational};
use bsat_arr::arrangement::{generic_arrangement, subsets, Arrangement};
use bsat_arr::bfunction::{
    chain_check, generic_bsat, isolated_homog_bsat, u_q_bound, upper_bound_generic, verify_inplane, BFunction,
};
use bsat_arr::length::{h_top_nonvanishing, holonomic_length, inclusion_exclusion_terms};
use bsat_arr::milnor::{conjectured_u, default_r_max, experiments, or_dimension, rewrite_to_basis, u_profile};
use bsat_arr::weyl::{
    conjugated_pij, delta_production_check, euler_identity_check, pij_operator, TwistedElement, WeylOperator,
};
use bsat_arr::Error;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::report::{Check, RunReport};

/// Failure of a subcommand, mapped to an exit code by `main`.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(Error::Parse(_) | Error::Dimension(_) | Error::IndexOutOfRange { .. }) => 2,
            CliError::Core(Error::Falsified(_)) => 1,
            CliError::Core(_) => 3,
        }
    }

    pub fn message(&self) -> String {
        match self {
            CliError::Usage(m) => m.clone(),
            CliError::Core(e) => e.to_string(),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

const UPPER_BOUND: &str = "b_Q divides (s+1)^(n-1) prod_{i=0}^{2k-n-2} (s+(i+n)/k) for generic Q";
const COR_EXPONENT: &str = "b_Q is the bound with (s+1)^r, r in {n-1, n-2}; r = n-1 expected";
const ISOLATED: &str =
    "isolated homogeneous singularity: b = (s+1) prod over Jacobian quotient degrees d of (s+(d+n)/k)";
const OR_TOTAL: &str = "dim U = C(k-2,n-2) + k C(k-2,n-1)";
const WINDOW: &str = "u_r != 0 exactly for 0 <= r <= 2k-n-2";
const DEGREE_BOUND: &str = "u_r <= C(k-2,n-1) when k does not divide r-k+n, strictly for r >= k";
const CONJ_U: &str = "conjectured graded dimensions u_r of U";
const SIGMA_M: &str = "Sigma_r = m^r for r <= k-n+1";
const DELTA_M: &str = "Delta_{k-n+1} = m^{k-n}";
const DELTA_SIGMA: &str = "Delta_r is contained in Sigma_{r-1}";
const ANNIHILATOR: &str = "m^{k-n} annihilates Sigma_{r-1}/Delta_r for k >= r >= k-n+1";
const PLANE: &str = "m^{2k+1} is contained in <Q_x, Q_y> for generic lines";
const EULER: &str = "sum_i d_i x_i m g Q^s = m g (ks+n+deg(mg)) Q^s";
const EULER_ANN: &str = "(E - ks) kills Q^s";
const DELTA_PROD: &str = "a combination of v_j (m H_I Q^s) gives (s+1) m Delta_{J,I,N} + V(m) H_I";
const PIJ: &str = "P_{i,j}(Q) kills Q^s";
const PIJ_CONJ: &str = "Q''^{s+1} P_{i,j}(Q') Q''^{-s} kills Q^s";
const ANN_COMPLETE: &str = "ann(Q^s) = I_s(Q) + <E - ks>";
const LENGTH: &str = "l = sum_{i>=1} (-1)^{i+1} sum_{|I|=i} l(M_I) + [H^k != 0]";
const REWRITE: &str = "a standard product of degree r is a combination of C(k-2,n-1) basis monomials modulo E";

fn shifts_json(b: &BFunction) -> Value {
    let map: BTreeMap<String, u32> = b.factors().iter().map(|(r, &m)| (format_rational(r), m)).collect();
    json!(map)
}

fn bfunction_json(b: &BFunction) -> Value {
    let roots: BTreeMap<String, u32> = b.factors().iter().map(|(r, &m)| (format_rational(&-r.clone()), m)).collect();
    json!({ "display": b.to_string(), "shifts": shifts_json(b), "roots": roots, "degree": b.degree() })
}

/// `(s+1)^r·(s+n/k)(s+(n+1)/k)…`, before merging equal factors.
fn factored_shape(n: usize, k: usize, r: usize) -> String {
    let mut out = format!("(s+1)^{r}*");
    for i in 0..=(2 * k - n - 2) {
        out.push_str(&format!("(s+{}/{k})", i + n));
    }
    out
}

pub fn bfunction_generic(report: &mut RunReport, n: usize, k: usize) -> CliResult<()> {
    let bound = upper_bound_generic(n, k)?;
    let upper = generic_bsat(n, k, n - 1)?;
    let lower = generic_bsat(n, k, n - 2)?;
    report.result("n", json!(n));
    report.result("k", json!(k));
    report.result("upper_bound", bfunction_json(&bound));
    report.result(
        "candidates",
        json!([
            { "r": n - 1, "label": "conjectured exact", "factored": factored_shape(n, k, n - 1), "b": bfunction_json(&upper) },
            { "r": n - 2, "label": "alternative", "factored": factored_shape(n, k, n - 2), "b": bfunction_json(&lower) },
        ]),
    );
    let u = u_q_bound(&upper, n, k)?;
    report.result("u_q_bound", json!(u));
    let in_range =
        bound.factors().keys().all(|r| r > &Rational::from_integer(0.into()) && r < &Rational::from_integer(2.into()));
    report.checks.push(Check::theorem("roots-in-range", "all roots lie in (-2, 0)", in_range));
    report.checks.push(Check::theorem("u-q-bound", "u_Q = 2k-n-2", u as usize == 2 * k - n - 2));
    let exponent = if n == 2 {
        let q = generic_arrangement(n, k)?.defining_poly();
        isolated_homog_bsat(&q)? == upper
    } else {
        false
    };
    report.checks.push(Check::conjecture("exponent-r", COR_EXPONENT, exponent).with_detail(if n == 2 {
        "n = 2: compared with the isolated-singularity formula"
    } else {
        "not decided"
    }));
    Ok(())
}

pub fn bfunction_isolated(report: &mut RunReport, a: &Arrangement) -> CliResult<()> {
    let q = a.defining_poly();
    let b = isolated_homog_bsat(&q)?;
    report.result("n", json!(a.n()));
    report.result("k", json!(a.k()));
    report.result("b", bfunction_json(&b));
    if let Ok(u) = u_q_bound(&b, a.n(), a.k()) {
        report.result("u_q_bound", json!(u));
    }
    if a.n() == 2 && a.is_generic() && a.k() >= 2 {
        let expected = generic_bsat(2, a.k(), 1)?;
        report.checks.push(Check::theorem("isolated-matches-generic", ISOLATED, b == expected));
    }
    Ok(())
}

pub fn milnor(report: &mut RunReport, a: &Arrangement, max_degree: Option<u32>) -> CliResult<()> {
    a.require_generic()?;
    let (n, k) = (a.n(), a.k());
    let r_max = max_degree.unwrap_or_else(|| default_r_max(n, k));
    let profile = u_profile(a, r_max)?;
    let top = 2 * k as i64 - n as i64 - 2;
    report.result("n", json!(n));
    report.result("k", json!(k));
    report.result("u", json!(profile.u));
    report.result("total", json!(profile.total));
    report.result("or_dimension", json!(or_dimension(n as u32, k as u32)));
    let complete = r_max as i64 > top;
    let comparison: Vec<Value> = profile
        .u
        .iter()
        .enumerate()
        .map(|(r, &u)| {
            let c = conjectured_u(n as u32, k as u32, r as i64);
            json!({ "r": r, "computed": u, "conjectured": c, "status": if u as i64 == c { "match" } else { "differs" } })
        })
        .collect();
    let all_match = comparison.iter().all(|v| v["status"] == "match");
    report.result("comparison", Value::Array(comparison));
    if complete {
        let total_ok = profile.total as i64 == or_dimension(n as u32, k as u32);
        report.checks.push(Check::theorem("or-total", OR_TOTAL, total_ok));
        let window_ok = profile.u.iter().enumerate().all(|(r, &u)| (u != 0) == (r as i64 <= top));
        report.checks.push(Check::theorem("nonvanishing-window", WINDOW, window_ok));
    } else {
        report.checks.push(
            Check::conjecture("or-total", OR_TOTAL, false).with_detail(format!("profile truncated at degree {r_max}")),
        );
    }
    let bound = binomial(k as i64 - 2, n as i64 - 1);
    let degree_ok = profile.u.iter().enumerate().all(|(r, &u)| {
        let shift = r as i64 - k as i64 + n as i64;
        shift % k as i64 == 0 || if r >= k { (u as i64) < bound } else { u as i64 <= bound }
    });
    report.checks.push(Check::theorem("degree-bound", DEGREE_BOUND, degree_ok));
    report.checks.push(Check::conjecture("conjectured-u", CONJ_U, all_match));
    let exps = experiments(a)?;
    let mut by_name: BTreeMap<&str, Vec<u32>> = BTreeMap::new();
    for e in &exps {
        if !e.holds {
            by_name.entry(e.name).or_default().push(e.degree);
        }
    }
    let listed: Vec<Value> =
        exps.iter().map(|e| json!({ "name": e.name, "degree": e.degree, "holds": e.holds })).collect();
    report.result("experiments", Value::Array(listed));
    for name in ["small-degrees-full", "restricted-spanning"] {
        if !exps.iter().any(|e| e.name == name) {
            continue;
        }
        let check = match by_name.get(name) {
            None => Check::conjecture(name, "experiment on an open claim", true),
            Some(ds) => Check::conjecture(name, "experiment on an open claim", false)
                .with_detail(format!("fails in degrees {ds:?}")),
        };
        report.checks.push(check);
    }
    Ok(())
}

pub fn length(report: &mut RunReport, a: &Arrangement) -> CliResult<()> {
    let l = holonomic_length(a);
    report.result("n", json!(a.n()));
    report.result("k", json!(a.k()));
    report.result("length", json!(l));
    let table: Vec<Value> = inclusion_exclusion_terms(a)
        .into_iter()
        .map(|(i, sum)| json!({ "size": i, "sign": if i % 2 == 1 { "+" } else { "-" }, "subtotal": sum }))
        .collect();
    report.result("inclusion_exclusion", Value::Array(table));
    report.result("top_correction", json!(u8::from(h_top_nonvanishing(a))));
    report.checks.push(Check::theorem("length-at-least-k-plus-1", LENGTH, l > a.k() as u64));
    Ok(())
}

fn multiplicity_name(alpha: &[u32]) -> String {
    let parts: Vec<String> = alpha
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| if e == 1 { format!("H{}", i + 1) } else { format!("H{}^{e}", i + 1) })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

pub fn rewrite(report: &mut RunReport, a: &Arrangement, product: &[usize], degree: u32) -> CliResult<()> {
    if product.len() != degree as usize {
        return Err(CliError::Usage(format!(
            "--degree {degree} does not match a product of {} factors",
            product.len()
        )));
    }
    let mut alpha = vec![0u32; a.k()];
    for &i in product {
        if i == 0 || i > a.k() {
            return Err(CliError::Usage(format!("hyperplane index {i} outside 1..={}", a.k())));
        }
        alpha[i - 1] += 1;
    }
    let rw = rewrite_to_basis(a, &alpha)?;
    report.result("input", json!(multiplicity_name(&alpha)));
    report.result("degree", json!(degree));
    let coeffs: Vec<Value> = rw
        .coefficients
        .iter()
        .map(|(b, c)| json!({ "monomial": multiplicity_name(b), "multiplicities": b, "coefficient": format_rational(c) }))
        .collect();
    report.result("coefficients", Value::Array(coeffs));
    report.result("certificate_terms", json!(rw.certificate.len()));
    let bound = binomial(a.k() as i64 - 2, a.n() as i64 - 1) as usize;
    report.checks.push(Check::theorem("certificate-identity", REWRITE, rw.verify_identity(a)?));
    report.checks.push(Check::theorem("certificate-rank", REWRITE, rw.verify_rank(a)?));
    report.checks.push(Check::theorem("basis-size", REWRITE, rw.coefficients.len() <= bound));
    Ok(())
}

/// Parse `"n=2..3,k=n..6"`; the `k` range may refer to `n`.
pub fn parse_grid(spec: &str) -> CliResult<Vec<(usize, usize)>> {
    let bad = || CliError::Usage(format!("grid must look like \"n=2..3,k=n..6\", got {spec:?}"));
    let mut n_range = None;
    let mut k_range = None;
    for part in spec.split(',') {
        let (key, range) = part.trim().split_once('=').ok_or_else(bad)?;
        let (lo, hi) = range.split_once("..").ok_or_else(bad)?;
        match key.trim() {
            "n" => n_range = Some((lo.trim().to_string(), hi.trim().to_string())),
            "k" => k_range = Some((lo.trim().to_string(), hi.trim().to_string())),
            _ => return Err(bad()),
        }
    }
    let (nl, nh) = n_range.ok_or_else(bad)?;
    let (kl, kh) = k_range.ok_or_else(bad)?;
    let int = |s: &str, n: usize| -> CliResult<usize> {
        if s == "n" {
            Ok(n)
        } else {
            s.parse().map_err(|_| bad())
        }
    };
    let mut out = Vec::new();
    for n in int(&nl, 0)?..=int(&nh, 0)? {
        if n < 2 {
            return Err(CliError::Usage("grid needs n >= 2".into()));
        }
        for k in int(&kl, n)?.max(n)..=int(&kh, n)? {
            out.push((n, k));
        }
    }
    if out.is_empty() {
        return Err(bad());
    }
    Ok(out)
}

fn instance_checks(a: &Arrangement) -> CliResult<Vec<Check>> {
    let (n, k) = (a.n(), a.k());
    let tag = |name: &str| format!("{name}[n={n},k={k}]");
    let mut out = Vec::new();
    let q = a.defining_poly();
    let qs = TwistedElement::q_power_s(q.clone());

    let euler =
        WeylOperator::euler(n).try_sub(&WeylOperator::s(n).scale(&Rational::from_integer((k as i64).into())))?;
    out.push(Check::theorem(tag("euler-annihilates"), EULER_ANN, euler.apply(&qs)?.is_zero()));
    let x0 = Polynomial::var(n, 0);
    let euler_ok = euler_identity_check(&q, &Polynomial::one(n), &Monomial::one(n))?
        && euler_identity_check(&q, &x0, &Monomial::var(n, n - 1))?;
    out.push(Check::theorem(tag("euler-identity"), EULER, euler_ok));

    let frame_ok = a.rank_of(&(0..n).collect::<Vec<_>>()) == n;
    if frame_ok && n >= 2 {
        let all: Vec<usize> = (0..k).collect();
        let first: Vec<usize> = (0..n).collect();
        let mut kills = true;
        let mut conj = true;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    kills &= pij_operator(a, i, j, &all)?.apply(&qs)?.is_zero();
                    conj &= conjugated_pij(a, i, j, &first)?.apply(&qs)?.is_zero();
                }
            }
        }
        out.push(Check::theorem(tag("pij-annihilation"), PIJ, kills));
        out.push(Check::theorem(tag("pij-conjugated"), PIJ_CONJ, conj));
    }
    out.push(
        Check::conjecture(tag("annihilator-completeness"), ANN_COMPLETE, false)
            .with_detail("needs Groebner bases over the Weyl algebra"),
    );

    if !a.is_generic() {
        out.push(
            Check::conjecture(tag("generic-checks"), "chain, plane and delta checks", false)
                .with_detail("arrangement is not generic"),
        );
        return Ok(out);
    }
    for c in chain_check(a)?.checks {
        let statement = match c.name {
            "sigma-is-m-power" => SIGMA_M,
            "delta-is-m-power" => DELTA_M,
            "delta-in-sigma" => DELTA_SIGMA,
            _ => ANNIHILATOR,
        };
        out.push(Check::theorem(format!("{}[n={n},k={k},r={}]", c.name, c.r), statement, c.passed));
    }
    let mut exponent_decided = false;
    if n == 2 {
        out.push(Check::theorem(tag("plane-bound"), PLANE, verify_inplane(a)?));
        exponent_decided = isolated_homog_bsat(&q)? == generic_bsat(2, k, 1)?;
        out.push(Check::theorem(tag("isolated-matches-generic"), ISOLATED, exponent_decided));
    }
    let bound = upper_bound_generic(n, k)?;
    out.push(Check::theorem(tag("u-q-bound"), UPPER_BOUND, u_q_bound(&bound, n, k)? as usize == 2 * k - n - 2));

    let mut delta_ok = true;
    let mut count = 0;
    for size in (k + 1 - n)..=k {
        for i in subsets(k, size) {
            for frame in subsets(k, n) {
                let check = (0..k).filter(|x| !i.contains(x) && !frame.contains(x)).count();
                let hat: Vec<usize> = i.iter().copied().filter(|x| frame.contains(x)).collect();
                if hat.len() < check + 1 {
                    continue;
                }
                let j: Vec<usize> = hat[..check + 1].to_vec();
                for m in [Monomial::one(n), Monomial::var(n, 0)] {
                    delta_ok &= delta_production_check(a, &m, &i, &j, &frame)?;
                    count += 1;
                }
            }
        }
    }
    out.push(Check::theorem(tag("delta-production"), DELTA_PROD, delta_ok).with_detail(format!("{count} instances")));
    out.push(Check::conjecture(tag("exponent-r"), COR_EXPONENT, exponent_decided).with_detail(if n == 2 {
        "n = 2: matches the isolated-singularity formula"
    } else {
        "not decided"
    }));
    Ok(out)
}

pub fn verify(report: &mut RunReport, instances: Vec<Arrangement>) -> CliResult<()> {
    let results: Vec<CliResult<Vec<Check>>> = instances.par_iter().map(instance_checks).collect();
    let mut names = Vec::new();
    for (a, r) in instances.iter().zip(results) {
        names.push(json!({ "n": a.n(), "k": a.k(), "arrangement": a.to_string() }));
        report.checks.extend(r?);
    }
    let passed = report.checks.iter().filter(|c| c.status == crate::report::Status::Pass).count();
    report.result("instances", Value::Array(names));
    report.result("theorem_checks_passed", json!(passed));
    Ok(())
}

pub fn grid_instances(grid: &[(usize, usize)]) -> CliResult<Vec<Arrangement>> {
    Ok(grid.iter().map(|&(n, k)| generic_arrangement(n, k)).collect::<Result<_, _>>()?)
}
