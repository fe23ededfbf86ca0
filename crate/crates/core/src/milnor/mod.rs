//! Top cohomology of the Milnor fiber `Q = 1` of a generic arrangement,
//! through the relation space `E` of Orlik and Randell.

mod rewrite;

pub use rewrite::{basis_monomials, rewrite_to_basis, standard_products, CertificateEntry, ERelation, Rewrite};

use num_traits::Zero;

use crate::algebra::linalg::{rank, SparseEchelon};
use crate::algebra::monomial::monomials_of_degree;
use crate::algebra::rational::binomial;
use crate::algebra::slice::{basis_index, to_sparse};
use crate::algebra::{rat, DegreeSlice, Monomial, Polynomial, Rational};
use crate::arrangement::{subsets, Arrangement};
use crate::error::{Error, Result};

/// `deg(a)·a·J_μ(Q_μ) − k·Q_μ·J_μ(a)` for homogeneous `a`.
pub fn e_generator(a_arr: &Arrangement, a: &Polynomial, mu: &[usize]) -> Result<Polynomial> {
    let Some(deg) = a.total_degree() else {
        return Ok(Polynomial::zero(a_arr.n()));
    };
    let q_mu = a_arr.q_mu(mu)?.value;
    let jq = a_arr.jacobian_det(mu, &q_mu)?;
    let ja = a_arr.jacobian_det(mu, a)?;
    let k = rat(a_arr.k() as i64);
    Ok(&(a * &jq).scale(&rat(deg as i64)) - &(&q_mu * &ja).scale(&k))
}

struct MuData {
    q_mu: Polynomial,
    field: Vec<Rational>,
    jq: Polynomial,
}

fn mu_data(a: &Arrangement) -> Result<Vec<MuData>> {
    subsets(a.k(), a.n() - 1)
        .map(|mu| {
            let q_mu = a.q_mu(&mu)?.value;
            let field = a.jacobian_field(&mu)?;
            let jq = q_mu.directional_derivative(&field);
            Ok(MuData { q_mu, field, jq })
        })
        .collect()
}

fn e_from_data(d: &MuData, a: &Polynomial, deg: u32, k: usize) -> Polynomial {
    let ja = a.directional_derivative(&d.field);
    &(a * &d.jq).scale(&rat(deg as i64)) - &(&d.q_mu * &ja).scale(&rat(k as i64))
}

/// The generators of `E_r`, one for every monomial `a` of degree `r−k+n` and
/// every `(n−1)`-subset `μ` (zeros included), ordered by `a` then `μ`.
pub fn e_generators(a: &Arrangement, r: u32) -> Result<Vec<Polynomial>> {
    a.require_generic()?;
    let (n, k) = (a.n(), a.k());
    let da = r as i64 - k as i64 + n as i64;
    if da < 0 {
        return Ok(Vec::new());
    }
    let data = mu_data(a)?;
    let mut out = Vec::new();
    for m in monomials_of_degree(n, da as u32) {
        let mono = Polynomial::term(m, Rational::from_integer(1.into()));
        for d in &data {
            out.push(e_from_data(d, &mono, da as u32, k));
        }
    }
    Ok(out)
}

/// `dim (R_n/E)_r`.
pub fn graded_dim_mod_e(a: &Arrangement, r: u32) -> Result<usize> {
    let gens = e_generators(a, r)?;
    let slice = DegreeSlice::new(a.n(), r, &gens);
    Ok(slice.dim() - slice.rank())
}

/// `C(k−2, n−2) + k·C(k−2, n−1)`.
pub fn or_dimension(n: u32, k: u32) -> i64 {
    let (n, k) = (n as i64, k as i64);
    binomial(k - 2, n - 2) + k * binomial(k - 2, n - 1)
}

/// The conjectured graded dimensions `u_r` of `U`.
pub fn conjectured_u(n: u32, k: u32, r: i64) -> i64 {
    let (n, k) = (n as i64, k as i64);
    if r < 0 || r > 2 * k - n - 2 {
        0
    } else if r <= k - n {
        binomial(r + n - 1, n - 1)
    } else if r < k {
        binomial(k - 2, n - 1)
    } else {
        binomial(k - 2, n - 1) - binomial(r - k + n - 1, n - 1)
    }
}

/// Coefficients of `g·ω/k` on `dx̂_1, …, dx̂_n`: component `i` is `(−1)^{i−1} x_i g / k`.
pub fn milnor_form(g: &Polynomial, k: u32) -> Result<Vec<Polynomial>> {
    if !g.is_homogeneous() {
        return Err(Error::Precondition("milnor_form needs a homogeneous polynomial".into()));
    }
    let n = g.nvars();
    let inv_k = Rational::new(1.into(), (k as i64).into());
    Ok((0..n)
        .map(|i| {
            let sign = if i % 2 == 0 { inv_k.clone() } else { -inv_k.clone() };
            (&Polynomial::var(n, i) * g).scale(&sign)
        })
        .collect())
}

/// Graded dimensions of `U = R_n/(E + ⟨Q−1⟩)` under the degree filtration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyProfile {
    pub n: usize,
    pub k: usize,
    /// `u_r` for `r = 0 ..= r_max`.
    pub u: Vec<usize>,
    pub total: usize,
}

impl CohomologyProfile {
    /// The degrees with `u_r ≠ 0`.
    pub fn support(&self) -> Vec<usize> {
        self.u.iter().enumerate().filter(|(_, &x)| x > 0).map(|(r, _)| r).collect()
    }
}

/// Filtered linear algebra on `⊕_{j≤W} (R_n)_j`.
///
/// Columns are ordered by descending degree, so an echelon row lies in
/// `⊕_{j≤r}` exactly when its pivot does; that gives `dim(Rel ∩ ⊕_{j≤r})`
/// for every `r` from one elimination.
pub struct FilteredQuotient {
    n: usize,
    window: u32,
    columns: Vec<Monomial>,
    echelon: SparseEchelon,
}

impl FilteredQuotient {
    /// Relations: every `E`-generator of degree `≤ window` and `(Q−1)·x^β` with `|β| ≤ window−k`.
    pub fn new(a: &Arrangement, window: u32) -> Result<Self> {
        a.require_generic()?;
        let (n, k) = (a.n(), a.k());
        let columns: Vec<Monomial> = (0..=window).rev().flat_map(|d| monomials_of_degree(n, d)).collect();
        let index = basis_index(&columns);
        let row_of = |p: &Polynomial| {
            let mut row = vec![Rational::zero(); columns.len()];
            for (m, c) in p.terms() {
                row[index[m]] = c.clone();
            }
            to_sparse(&row)
        };
        let mut echelon = SparseEchelon::new();
        let data = mu_data(a)?;
        for r in 0..=window {
            let da = r as i64 - k as i64 + n as i64;
            if da <= 0 {
                continue;
            }
            for m in monomials_of_degree(n, da as u32) {
                let mono = Polynomial::term(m, Rational::from_integer(1.into()));
                for d in &data {
                    let g = e_from_data(d, &mono, da as u32, k);
                    if !g.is_zero() {
                        echelon.insert(&row_of(&g));
                    }
                }
            }
        }
        let q_minus_1 = &a.defining_poly() - &Polynomial::one(n);
        if window as usize >= k {
            for d in 0..=(window - k as u32) {
                for m in monomials_of_degree(n, d) {
                    echelon.insert(&row_of(&q_minus_1.mul_monomial(&m)));
                }
            }
        }
        Ok(FilteredQuotient { n, window, columns, echelon })
    }

    fn first_column_of_degree_at_most(&self, r: u32) -> usize {
        self.columns.iter().position(|m| m.degree() <= r).unwrap_or(self.columns.len())
    }

    /// `dim F_r`, the image of `⊕_{j≤r}(R_n)_j` in the quotient.
    pub fn filtered_dim(&self, r: u32) -> usize {
        let r = r.min(self.window);
        let start = self.first_column_of_degree_at_most(r);
        let ambient = self.columns.len() - start;
        let inside = self.echelon.pivots().filter(|&p| p >= start).count();
        ambient - inside
    }

    pub fn graded_dim(&self, r: u32) -> usize {
        let hi = self.filtered_dim(r);
        if r == 0 {
            hi
        } else {
            hi - self.filtered_dim(r - 1)
        }
    }

    /// Degree-`r` leading parts of the relations of degree `≤ r`, in the
    /// basis `monomials_of_degree(n, r)`.
    pub fn top_relations(&self, r: u32) -> Vec<Vec<Rational>> {
        let start = self.first_column_of_degree_at_most(r);
        let end = self.first_column_of_degree_at_most(r.saturating_sub(1));
        let end = if r == 0 { self.columns.len() } else { end };
        self.echelon
            .rows_with_pivot_in(start, end)
            .map(|row| (start..end).map(|c| row.get(&c).cloned().unwrap_or_else(Rational::zero)).collect())
            .collect()
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn window(&self) -> u32 {
        self.window
    }
}

/// `u_r` for `r = 0..=r_max`, using relations up to degree `r_max + slack`.
pub fn u_profile_with_slack(a: &Arrangement, r_max: u32, slack: u32) -> Result<CohomologyProfile> {
    let fq = FilteredQuotient::new(a, r_max + slack)?;
    let u: Vec<usize> = (0..=r_max).map(|r| fq.graded_dim(r)).collect();
    let total = u.iter().sum();
    Ok(CohomologyProfile { n: a.n(), k: a.k(), u, total })
}

/// `u_r` for `r = 0..=r_max`.
pub fn u_profile(a: &Arrangement, r_max: u32) -> Result<CohomologyProfile> {
    u_profile_with_slack(a, r_max, 0)
}

/// The default window `0..=2k−n`, two past the last nonvanishing degree.
pub fn default_r_max(n: usize, k: usize) -> u32 {
    (2 * k).saturating_sub(n) as u32
}

/// Expansion of one `E`-generator with A-monomial `a` on the A-monomials
/// `a·Q_μ/H_i` (`i ∉ μ`), checked against the direct polynomial value.
///
/// Returns the coefficients, in increasing `i`. When `k ∤ deg a` they are all nonzero.
pub fn relation_structure(a_arr: &Arrangement, a: &[u32], mu: &[usize]) -> Result<Vec<(Vec<u32>, Rational)>> {
    let rel = ERelation { a: a.to_vec(), mu: mu.to_vec() };
    let terms = rel.expand(a_arr)?;
    let mut sum = Polynomial::zero(a_arr.n());
    for (alpha, c) in &terms {
        sum = &sum + &a_arr.a_monomial(alpha.clone())?.value.scale(c);
    }
    let direct = rel.value(a_arr)?;
    if sum != direct {
        return Err(Error::Falsified(format!("E-generator expansion mismatch for a={a:?}, mu={mu:?}")));
    }
    Ok(terms)
}

/// Whether every `E`-generator with A-monomial `a` of degree `d` (k ∤ d)
/// involves exactly `k−n+1` A-monomials, all with nonzero coefficient.
pub fn relation_structure_check(a_arr: &Arrangement, d: u32) -> Result<bool> {
    a_arr.require_generic()?;
    let k = a_arr.k();
    if d == 0 || (d as usize).is_multiple_of(k) {
        return Err(Error::UnsupportedDegree { degree: d, k: k as u32, shift: d as i64 });
    }
    for alpha in multiplicity_vectors(k, d) {
        for mu in subsets(k, a_arr.n() - 1) {
            let terms = relation_structure(a_arr, &alpha, &mu)?;
            if terms.len() != k - a_arr.n() + 1 || terms.iter().any(|(_, c)| c.is_zero()) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// All multiplicity vectors of length `k` with entry sum `d`.
pub fn multiplicity_vectors(k: usize, d: u32) -> Vec<Vec<u32>> {
    let mut v: Vec<Vec<u32>> = monomials_of_degree(k, d).into_iter().map(|m| m.exponents().to_vec()).collect();
    v.sort();
    v
}

/// The spanning claim for the degrees `k−n+1 ≤ r` with `k ∤ (r−k+n)`:
/// the basis monomials span `(R_n/E)_r`.
pub fn basis_spans_mod_e(a: &Arrangement, r: u32) -> Result<bool> {
    let gens = e_generators(a, r)?;
    let mut rows = DegreeSlice::new(a.n(), r, &gens).matrix;
    for b in basis_monomials(a, r)? {
        rows.extend(DegreeSlice::new(a.n(), r, &[a.a_monomial(b)?.value]).matrix);
    }
    let dim = monomials_of_degree(a.n(), r).len();
    Ok(rows.is_empty() && dim == 0 || rank(&rows)? == dim)
}

/// Outcome of a report-only experiment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Experiment {
    pub name: &'static str,
    pub degree: u32,
    pub holds: bool,
}

/// Experiments on open claims; never asserted, only reported.
///
/// * `small-degrees-full`: `U_r = (R_n)_r` for `r ≤ k−n`.
/// * `restricted-spanning`: the basis monomials with `i_1 < (n−1)+(r−k)`
///   (1-based) already span `gr_r U`, for `k ≤ r ≤ 2k−n−2`.
pub fn experiments(a: &Arrangement) -> Result<Vec<Experiment>> {
    let (n, k) = (a.n(), a.k());
    let fq = FilteredQuotient::new(a, default_r_max(n, k))?;
    let mut out = Vec::new();
    for r in 0..=(k.saturating_sub(n)) as u32 {
        let full = monomials_of_degree(n, r).len();
        out.push(Experiment { name: "small-degrees-full", degree: r, holds: fq.graded_dim(r) == full });
    }
    let top = 2 * k as i64 - n as i64 - 2;
    for r in k as i64..=top {
        let r = r as u32;
        if (r as i64 - k as i64 + n as i64) % k as i64 == 0 {
            continue;
        }
        let bound = (n as i64 - 1) + (r as i64 - k as i64);
        let chosen: Vec<Vec<u32>> = basis_monomials(a, r)?
            .into_iter()
            .filter(|b| match b.iter().position(|&e| e > 0) {
                Some(i1) if k - n >= 2 => (i1 as i64 + 1) < bound,
                _ => true,
            })
            .collect();
        let mut rows = fq.top_relations(r);
        for b in chosen {
            rows.extend(DegreeSlice::new(n, r, &[a.a_monomial(b)?.value]).matrix);
        }
        let dim = monomials_of_degree(n, r).len();
        let holds = !rows.is_empty() && rank(&rows)? == dim;
        out.push(Experiment { name: "restricted-spanning", degree: r, holds });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_polynomial;
    use crate::arrangement::generic_arrangement;

    #[test]
    fn e_generators_three_lines() {
        let a = generic_arrangement(2, 3).unwrap();
        assert!(e_generators(&a, 1).unwrap().iter().all(Polynomial::is_zero));
        let e2 = e_generators(&a, 2).unwrap();
        assert_eq!(e2.len(), 6);
        assert!(e2.iter().all(|g| g.is_zero() || g.is_homogeneous() && g.total_degree() == Some(2)));
        assert_eq!(DegreeSlice::new(2, 2, &e2).rank(), 2);
        assert_eq!(graded_dim_mod_e(&a, 0).unwrap(), 1);
        assert_eq!(graded_dim_mod_e(&a, 2).unwrap(), 1);
        assert!(graded_dim_mod_e(&a, 3).unwrap() <= 1);
    }

    #[test]
    fn reference_formulas() {
        assert_eq!(or_dimension(2, 3), 4);
        assert_eq!(or_dimension(3, 4), 6);
        assert_eq!(or_dimension(3, 5), 18);
        let got: Vec<i64> = (0..5).map(|r| conjectured_u(3, 4, r)).collect();
        assert_eq!(got, [1, 3, 1, 1, 0]);
    }

    #[test]
    fn forms() {
        let f = milnor_form(&Polynomial::one(2), 3).unwrap();
        assert_eq!(f, vec![parse_polynomial(2, "1/3*x").unwrap(), parse_polynomial(2, "-1/3*y").unwrap()]);
        let g = milnor_form(&parse_polynomial(3, "x").unwrap(), 4).unwrap();
        assert_eq!(g[2], parse_polynomial(3, "1/4*x*z").unwrap());
        assert!(milnor_form(&parse_polynomial(2, "x + 1").unwrap(), 2).is_err());
    }

    #[test]
    fn profiles() {
        let cases: [(usize, usize, &[usize]); 3] =
            [(2, 3, &[1, 2, 1]), (3, 4, &[1, 3, 1, 1]), (2, 4, &[1, 2, 3, 2, 1])];
        for (n, k, expect) in cases {
            let a = generic_arrangement(n, k).unwrap();
            let p = u_profile(&a, default_r_max(n, k)).unwrap();
            assert_eq!(&p.u[..expect.len()], expect, "(n,k)=({n},{k})");
            assert!(p.u[expect.len()..].iter().all(|&x| x == 0));
            assert_eq!(p.total as i64, or_dimension(n as u32, k as u32));
        }
    }

    #[test]
    fn structure_of_relations() {
        let a = generic_arrangement(3, 5).unwrap();
        assert!(relation_structure_check(&a, 2).unwrap());
        assert!(relation_structure_check(&generic_arrangement(2, 4).unwrap(), 3).unwrap());
    }
}
