//! Central hyperplane arrangements and the squarefree-product ideals built
//! from them.
//!
//! Indices are 0-based throughout the Rust API. The JSON format and all
//! user-facing messages use 1-based hyperplane numbers.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::linalg::{determinant, inverse, rank};
use crate::algebra::{format_rational, parse_rational, rat, Polynomial, Rational};
use crate::error::{Error, Result};

/// A linear form `Σ c_i x_i`, scaled so its first nonzero coefficient is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hyperplane {
    coeffs: Vec<Rational>,
}

impl Hyperplane {
    pub fn new(coeffs: Vec<Rational>) -> Result<Self> {
        let Some(lead) = coeffs.iter().find(|c| !c.is_zero()).cloned() else {
            return Err(Error::Precondition("zero linear form".into()));
        };
        let inv = lead.recip();
        Ok(Hyperplane { coeffs: coeffs.into_iter().map(|c| c * &inv).collect() })
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn nvars(&self) -> usize {
        self.coeffs.len()
    }

    pub fn form(&self) -> Polynomial {
        Polynomial::linear(&self.coeffs)
    }
}

impl fmt::Display for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.form())
    }
}

/// A product `∏ H_i^{α_i}` of hyperplanes of a fixed arrangement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AMonomial {
    pub multiplicities: Vec<u32>,
    pub value: Polynomial,
}

impl AMonomial {
    pub fn degree(&self) -> u32 {
        self.multiplicities.iter().sum()
    }

    pub fn is_squarefree(&self) -> bool {
        self.multiplicities.iter().all(|&a| a <= 1)
    }
}

/// A flat of the intersection lattice: a closed set of hyperplane indices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Flat {
    pub rank: usize,
    pub closure: BTreeSet<usize>,
}

/// An ordered list of pairwise non-proportional hyperplanes through the origin.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrangement {
    n: usize,
    hyperplanes: Vec<Hyperplane>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawCoeff {
    Int(i64),
    Text(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawArrangement {
    n: usize,
    hyperplanes: Vec<Vec<RawCoeff>>,
}

#[derive(Serialize)]
struct WireArrangement {
    n: usize,
    hyperplanes: Vec<Vec<String>>,
}

impl Arrangement {
    pub fn new(n: usize, forms: Vec<Vec<Rational>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Precondition("ambient dimension must be at least 1".into()));
        }
        if forms.is_empty() {
            return Err(Error::Precondition("an arrangement needs at least one hyperplane".into()));
        }
        let mut hyperplanes = Vec::with_capacity(forms.len());
        for (i, c) in forms.into_iter().enumerate() {
            if c.len() != n {
                return Err(Error::Dimension(format!(
                    "hyperplane {} has {} coefficients, expected {n}",
                    i + 1,
                    c.len()
                )));
            }
            let h = Hyperplane::new(c).map_err(|_| Error::Precondition(format!("hyperplane {} is zero", i + 1)))?;
            if let Some(j) = hyperplanes.iter().position(|g| g == &h) {
                return Err(Error::Precondition(format!("hyperplanes {} and {} are proportional", j + 1, i + 1)));
            }
            hyperplanes.push(h);
        }
        Ok(Arrangement { n, hyperplanes })
    }

    /// Convenience constructor from integer coefficient rows.
    pub fn from_integers(n: usize, forms: &[&[i64]]) -> Result<Self> {
        Self::new(n, forms.iter().map(|r| r.iter().map(|&c| rat(c)).collect()).collect())
    }

    pub fn from_json(src: &str) -> Result<Self> {
        let raw: RawArrangement = serde_json::from_str(src).map_err(|e| Error::Parse(e.to_string()))?;
        let forms = raw
            .hyperplanes
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|c| match c {
                        RawCoeff::Int(i) => Ok(rat(i)),
                        RawCoeff::Text(s) => parse_rational(&s),
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(raw.n, forms)
    }

    pub fn to_json(&self) -> String {
        let wire = WireArrangement {
            n: self.n,
            hyperplanes: self.hyperplanes.iter().map(|h| h.coeffs.iter().map(format_rational).collect()).collect(),
        };
        serde_json::to_string(&wire).expect("plain data serializes")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    /// The linear form `H_i` as a polynomial.
    pub fn form(&self, i: usize) -> Polynomial {
        self.hyperplanes[i].form()
    }

    fn check_indices(&self, idx: &[usize]) -> Result<()> {
        match idx.iter().find(|&&i| i >= self.k()) {
            Some(&i) => Err(Error::IndexOutOfRange { index: i, bound: self.k() }),
            None => Ok(()),
        }
    }

    /// Rank of the coefficient matrix of the chosen hyperplanes.
    pub fn rank_of(&self, idx: &[usize]) -> usize {
        if idx.is_empty() {
            return 0;
        }
        let rows: Vec<Vec<Rational>> = idx.iter().map(|&i| self.hyperplanes[i].coeffs.clone()).collect();
        rank(&rows).expect("rows share the ambient dimension")
    }

    pub fn rank(&self) -> usize {
        self.rank_of(&(0..self.k()).collect::<Vec<_>>())
    }

    /// The first `min(k, n)`-subset (0-based) that fails to have full rank.
    pub fn dependent_subset(&self) -> Option<Vec<usize>> {
        let m = self.k().min(self.n);
        subsets(self.k(), m).find(|s| self.rank_of(s) < m)
    }

    pub fn is_generic(&self) -> bool {
        self.dependent_subset().is_none()
    }

    pub fn require_generic(&self) -> Result<()> {
        match self.dependent_subset() {
            Some(s) => Err(Error::NotGeneric { subset: s.iter().map(|i| i + 1).collect() }),
            None => Ok(()),
        }
    }

    /// `H_I = ∏_{i∈I} H_i`.
    pub fn product(&self, idx: &[usize]) -> Polynomial {
        idx.iter().fold(Polynomial::one(self.n), |acc, &i| &acc * &self.form(i))
    }

    /// `Q = H_1 ⋯ H_k`.
    pub fn defining_poly(&self) -> Polynomial {
        self.product(&(0..self.k()).collect::<Vec<_>>())
    }

    pub fn a_monomial(&self, multiplicities: Vec<u32>) -> Result<AMonomial> {
        if multiplicities.len() != self.k() {
            return Err(Error::Dimension(format!(
                "{} multiplicities for {} hyperplanes",
                multiplicities.len(),
                self.k()
            )));
        }
        let mut value = Polynomial::one(self.n);
        for (i, &a) in multiplicities.iter().enumerate() {
            if a > 0 {
                value = &value * &self.form(i).pow(a);
            }
        }
        Ok(AMonomial { multiplicities, value })
    }

    /// Constant vector fields `v_{λ_1}, …, v_{λ_n}` dual to the hyperplanes in `frame`.
    ///
    /// Entry `[i][l]` is the coefficient of `∂_l` in `v_{λ_i}`.
    pub fn dual_frame(&self, frame: &[usize]) -> Result<Vec<Vec<Rational>>> {
        self.check_indices(frame)?;
        if frame.len() != self.n {
            return Err(Error::Precondition(format!(
                "a coordinate frame needs {} hyperplanes, got {}",
                self.n,
                frame.len()
            )));
        }
        let m: Vec<Vec<Rational>> = frame.iter().map(|&i| self.hyperplanes[i].coeffs.clone()).collect();
        let inv = inverse(&m)?.ok_or_else(|| {
            Error::Precondition(format!(
                "hyperplanes {:?} are linearly dependent",
                frame.iter().map(|i| i + 1).collect::<Vec<_>>()
            ))
        })?;
        Ok((0..self.n).map(|i| (0..self.n).map(|l| inv[l][i].clone()).collect()).collect())
    }

    /// Cofactor vector `c` with `J_μ(a) = Σ_l c_l ∂_l a`.
    fn jacobian_cofactors(&self, mu: &[usize]) -> Result<Vec<Rational>> {
        self.check_indices(mu)?;
        if mu.len() + 1 != self.n {
            return Err(Error::Precondition(format!("|μ| must be n-1 = {}, got {}", self.n - 1, mu.len())));
        }
        let mut mu = mu.to_vec();
        mu.sort_unstable();
        let n = self.n;
        (0..n)
            .map(|l| {
                let minor: Vec<Vec<Rational>> = mu
                    .iter()
                    .map(|&i| {
                        self.hyperplanes[i]
                            .coeffs
                            .iter()
                            .enumerate()
                            .filter(|(c, _)| *c != l)
                            .map(|(_, v)| v.clone())
                            .collect()
                    })
                    .collect();
                let d = if minor.is_empty() { Rational::one() } else { determinant(&minor)? };
                Ok(if (n - 1 + l).is_multiple_of(2) { d } else { -d })
            })
            .collect()
    }

    /// `J_μ(a)`: the Jacobian determinant of `H_{μ_1}, …, H_{μ_{n-1}}, a`.
    pub fn jacobian_det(&self, mu: &[usize], a: &Polynomial) -> Result<Polynomial> {
        let c = self.jacobian_cofactors(mu)?;
        if a.nvars() != self.n {
            return Err(Error::Dimension("polynomial in the wrong number of variables".into()));
        }
        Ok(a.directional_derivative(&c))
    }

    /// `J_μ` as the constant vector field `Σ c_l ∂_l`.
    pub fn jacobian_field(&self, mu: &[usize]) -> Result<Vec<Rational>> {
        self.jacobian_cofactors(mu)
    }

    /// `Q_μ`: the product of all hyperplanes outside `μ`.
    pub fn q_mu(&self, mu: &[usize]) -> Result<AMonomial> {
        self.check_indices(mu)?;
        if mu.len() + 1 != self.n {
            return Err(Error::Precondition(format!("|μ| must be n-1 = {}, got {}", self.n - 1, mu.len())));
        }
        let mult = (0..self.k()).map(|i| u32::from(!mu.contains(&i))).collect();
        self.a_monomial(mult)
    }

    /// The `C(k, r)` squarefree products `H_I` with `|I| = r`.
    pub fn sigma_r(&self, r: usize) -> Vec<Polynomial> {
        subsets(self.k(), r).map(|s| self.product(&s)).collect()
    }

    /// The determinant `Δ_{J,I,N}(Q)`.
    pub fn delta_jin(&self, j: &[usize], i: &[usize], frame: &[usize]) -> Result<Polynomial> {
        let (k, n) = (self.k(), self.n);
        self.check_indices(j)?;
        self.check_indices(i)?;
        let i_set: BTreeSet<usize> = i.iter().copied().collect();
        let n_set: BTreeSet<usize> = frame.iter().copied().collect();
        let j_set: BTreeSet<usize> = j.iter().copied().collect();
        if n_set.len() != n {
            return Err(Error::Precondition(format!("|N| must equal n = {n}")));
        }
        if i_set.len() + n < k + 1 {
            return Err(Error::Precondition(format!("|I| must be at least k-n+1 = {}", k + 1 - n)));
        }
        let check: Vec<usize> = (0..k).filter(|x| !i_set.contains(x) && !n_set.contains(x)).collect();
        let hat: BTreeSet<usize> = i_set.intersection(&n_set).copied().collect();
        if !j_set.is_subset(&hat) {
            return Err(Error::Precondition("J must be a subset of I ∩ N".into()));
        }
        if j_set.len() != check.len() + 1 {
            return Err(Error::Precondition(format!("|J| must equal |{{1..k}} \\ (I ∪ N)| + 1 = {}", check.len() + 1)));
        }
        let frame_sorted: Vec<usize> = n_set.iter().copied().collect();
        let v = self.dual_frame(&frame_sorted)?;
        let field = |idx: usize| &v[frame_sorted.iter().position(|&x| x == idx).expect("J ⊆ N")];
        let i_sorted: Vec<usize> = i_set.iter().copied().collect();
        let h_i = self.product(&i_sorted);
        let rho = j_set.len();
        let rows: Vec<usize> = j_set.into_iter().collect();
        let consts: Vec<Vec<Rational>> = rows
            .iter()
            .map(|&jj| check.iter().map(|&c| dot(field(jj), &self.hyperplanes[c].coeffs)).collect())
            .collect();
        // Laplace expansion along the last (polynomial) column.
        let mut out = Polynomial::zero(n);
        for (r, &jj) in rows.iter().enumerate() {
            let minor: Vec<Vec<Rational>> =
                consts.iter().enumerate().filter(|(x, _)| *x != r).map(|(_, row)| row.clone()).collect();
            let m = if minor.is_empty() { Rational::one() } else { determinant(&minor)? };
            if m.is_zero() {
                continue;
            }
            let sign = if (r + rho - 1).is_multiple_of(2) { m } else { -m };
            out = &out + &h_i.directional_derivative(field(jj)).scale(&sign);
        }
        Ok(out)
    }

    /// Generators of `Δ_r(Q)`: all `Δ_{J,I,N}` with `|I| = r` followed by all `H_I`.
    pub fn delta_r(&self, r: usize) -> Result<Vec<Polynomial>> {
        let (k, n) = (self.k(), self.n);
        if r + n <= k {
            return Err(Error::Precondition(format!("Δ_r is defined only for r > k-n = {}", k as i64 - n as i64)));
        }
        let mut out: Vec<Polynomial> = Vec::new();
        let frames: Vec<Vec<usize>> = subsets(k, n).filter(|s| self.rank_of(s) == n).collect();
        for i in subsets(k, r) {
            for frame in &frames {
                let check = (0..k).filter(|x| !i.contains(x) && !frame.contains(x)).count();
                let hat: Vec<usize> = i.iter().copied().filter(|x| frame.contains(x)).collect();
                if check + 1 > hat.len() {
                    continue;
                }
                for jsub in subsets(hat.len(), check + 1) {
                    let j: Vec<usize> = jsub.iter().map(|&x| hat[x]).collect();
                    let d = self.delta_jin(&j, &i, frame)?;
                    if !d.is_zero() && !out.contains(&d) {
                        out.push(d);
                    }
                }
            }
        }
        for h in self.sigma_r(r) {
            if !out.contains(&h) {
                out.push(h);
            }
        }
        Ok(out)
    }

    /// All flats, sorted by rank and then by index set.
    pub fn flats(&self) -> Vec<Flat> {
        let k = self.k();
        let mut seen: BTreeSet<Flat> = BTreeSet::new();
        for mask in 0u64..(1u64 << k) {
            let s: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).collect();
            let r = self.rank_of(&s);
            let closure: BTreeSet<usize> = (0..k)
                .filter(|&i| {
                    let mut t = s.clone();
                    t.push(i);
                    self.rank_of(&t) == r
                })
                .collect();
            seen.insert(Flat { rank: r, closure });
        }
        seen.into_iter().collect()
    }

    /// The sub-arrangement on the given indices, in the given order.
    pub fn restrict_to(&self, idx: &[usize]) -> Result<Arrangement> {
        self.check_indices(idx)?;
        Ok(Arrangement { n: self.n, hyperplanes: idx.iter().map(|&i| self.hyperplanes[i].clone()).collect() })
    }

    /// Pull back along the coordinate change `x ↦ M x`; each form `c·x` becomes `(c M)·x`.
    pub fn linear_change(&self, m: &[Vec<Rational>]) -> Result<Arrangement> {
        if m.len() != self.n || m.iter().any(|r| r.len() != self.n) {
            return Err(Error::Dimension("coordinate change must be n×n".into()));
        }
        if determinant(m)?.is_zero() {
            return Err(Error::Precondition("coordinate change is singular".into()));
        }
        let forms = self
            .hyperplanes
            .iter()
            .map(|h| (0..self.n).map(|col| (0..self.n).map(|row| &h.coeffs[row] * &m[row][col]).sum()).collect())
            .collect();
        Arrangement::new(self.n, forms)
    }

    /// Canonical key independent of hyperplane order.
    pub fn sorted_key(&self) -> Vec<Hyperplane> {
        let mut v = self.hyperplanes.clone();
        v.sort();
        v
    }
}

impl fmt::Display for Arrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, h) in self.hyperplanes.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{h}")?;
        }
        write!(f, "}}")
    }
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `r`-subsets of `0..k` in lexicographic order.
pub fn subsets(k: usize, r: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut cur: Option<Vec<usize>> = if r <= k { Some((0..r).collect()) } else { None };
    std::iter::from_fn(move || {
        let out = cur.clone()?;
        let next = {
            let mut c = out.clone();
            let mut i = r;
            loop {
                if i == 0 {
                    break None;
                }
                i -= 1;
                if c[i] < k - r + i {
                    c[i] += 1;
                    for j in i + 1..r {
                        c[j] = c[j - 1] + 1;
                    }
                    break Some(c);
                }
            }
        };
        cur = next;
        Some(out)
    })
}

/// A generic arrangement of `k` hyperplanes in `n` variables.
///
/// The coordinate hyperplanes come first; further forms are taken from the
/// moment curve `(1, t, t², …)` for `t = 1, 2, …`, skipping any that would
/// break genericity. For `n = 2` this gives `x, y, x+y, x+2y, …`.
pub fn generic_arrangement(n: usize, k: usize) -> Result<Arrangement> {
    if n == 0 || k == 0 {
        return Err(Error::Precondition("generic arrangements need n ≥ 1 and k ≥ 1".into()));
    }
    let mut forms: Vec<Vec<Rational>> = (0..n.min(k))
        .map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
        .collect();
    let mut t = 1i64;
    while forms.len() < k {
        let cand: Vec<Rational> = (0..n as u32).map(|e| rat(t.pow(e))).collect();
        t += 1;
        let m = (forms.len() + 1).min(n);
        let fresh = forms.len();
        let mut all = forms.clone();
        all.push(cand.clone());
        let ok = subsets(all.len(), m)
            .filter(|s| s.contains(&fresh))
            .all(|s| rank(&s.iter().map(|&i| all[i].clone()).collect::<Vec<_>>()).expect("square rows") == m);
        if ok {
            forms.push(cand);
        }
    }
    Arrangement::new(n, forms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_polynomial, ratio};

    fn three_lines() -> Arrangement {
        Arrangement::from_integers(2, &[&[1, 0], &[0, 1], &[1, 1]]).unwrap()
    }

    fn p(n: usize, s: &str) -> Polynomial {
        parse_polynomial(n, s).unwrap()
    }

    #[test]
    fn genericity() {
        assert!(three_lines().is_generic());
        let bad = Arrangement::from_integers(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 0]]).unwrap();
        assert_eq!(bad.dependent_subset(), Some(vec![0, 1, 3]));
        assert!(matches!(bad.require_generic(), Err(Error::NotGeneric { subset }) if subset == vec![1, 2, 4]));
        assert!(generic_arrangement(3, 4).unwrap().is_generic());
    }

    #[test]
    fn generic_constructor_shapes() {
        assert_eq!(generic_arrangement(2, 3).unwrap(), three_lines());
        let four = generic_arrangement(2, 4).unwrap();
        assert_eq!(four.form(3), p(2, "x + 2*y"));
        assert_eq!(generic_arrangement(3, 4).unwrap().form(3), p(3, "x + y + z"));
        for (n, k) in [(2, 6), (3, 6), (4, 6)] {
            let a = generic_arrangement(n, k).unwrap();
            assert_eq!(a.k(), k);
            assert!(a.is_generic());
        }
    }

    #[test]
    fn normalization_and_json() {
        let a = Arrangement::new(2, vec![vec![rat(2), rat(4)], vec![rat(0), rat(-3)]]).unwrap();
        assert_eq!(a.hyperplanes()[0].coefficients(), &[rat(1), rat(2)]);
        assert_eq!(a.hyperplanes()[1].coefficients(), &[rat(0), rat(1)]);
        let b = Arrangement::from_json(r#"{"n": 2, "hyperplanes": [["1", "0"], [0, 1], ["1/2", "1/2"]]}"#).unwrap();
        assert_eq!(b, three_lines());
        assert_eq!(Arrangement::from_json(&b.to_json()).unwrap(), b);
        assert!(Arrangement::from_json(r#"{"n": 2, "hyperplanes": [[1.5, 0]]}"#).is_err());
        assert!(Arrangement::from_json(r#"{"n": 2, "hyperplanes": [[1, 0], [2, 0]]}"#).is_err());
    }

    #[test]
    fn defining_polynomials() {
        let x = Arrangement::from_integers(1, &[&[1]]).unwrap();
        assert_eq!(x.defining_poly(), p(1, "x"));
        assert_eq!(three_lines().defining_poly(), p(2, "x^2*y + x*y^2"));
    }

    #[test]
    fn dual_frames() {
        let a = Arrangement::from_integers(2, &[&[1, 0], &[1, 1], &[1, -1], &[0, 1]]).unwrap();
        assert_eq!(a.dual_frame(&[0, 3]).unwrap(), vec![vec![rat(1), rat(0)], vec![rat(0), rat(1)]]);
        assert_eq!(a.dual_frame(&[0, 1]).unwrap(), vec![vec![rat(1), rat(-1)], vec![rat(0), rat(1)]]);
        assert_eq!(
            a.dual_frame(&[1, 2]).unwrap(),
            vec![vec![ratio(1, 2), ratio(1, 2)], vec![ratio(1, 2), ratio(-1, 2)]]
        );
    }

    #[test]
    fn jacobians() {
        let a = three_lines();
        assert_eq!(a.jacobian_det(&[0], &p(2, "y")).unwrap(), p(2, "1"));
        let g = p(2, "x*y + y^2");
        let xg = &p(2, "x") * &g;
        assert_eq!(a.jacobian_det(&[0], &xg).unwrap(), &p(2, "x") * &g.partial(1).unwrap());
        let b = generic_arrangement(3, 4).unwrap();
        assert_eq!(b.jacobian_det(&[0, 1], &p(3, "z^2")).unwrap(), p(3, "2*z"));
    }

    #[test]
    fn q_mu_products() {
        let a = three_lines();
        assert_eq!(a.q_mu(&[0]).unwrap().value, p(2, "x*y + y^2"));
        assert_eq!(a.q_mu(&[2]).unwrap().value, p(2, "x*y"));
        let b = generic_arrangement(3, 4).unwrap();
        assert_eq!(b.q_mu(&[0, 1]).unwrap().value, p(3, "x*z + y*z + z^2"));
        assert_eq!(b.q_mu(&[0, 1]).unwrap().degree(), 2);
    }

    #[test]
    fn sigma_products() {
        let a = three_lines();
        assert_eq!(a.sigma_r(2), vec![p(2, "x*y"), p(2, "x^2 + x*y"), p(2, "x*y + y^2")]);
        assert_eq!(a.sigma_r(0), vec![Polynomial::one(2)]);
        assert_eq!(a.sigma_r(3), vec![a.defining_poly()]);
    }

    #[test]
    fn delta_examples() {
        let a = three_lines();
        assert_eq!(a.delta_jin(&[0, 1], &[0, 1], &[0, 1]).unwrap(), p(2, "x - y"));
        assert_eq!(a.delta_jin(&[0], &[0, 1, 2], &[0, 1]).unwrap(), p(2, "2*x*y + y^2"));
        assert!(a.delta_jin(&[0], &[0, 1], &[0, 1]).is_err());
        assert!(a.delta_r(1).is_err());
        for d in a.delta_r(3).unwrap() {
            assert!(d.is_homogeneous());
        }
    }

    #[test]
    fn flat_lattice() {
        let xy = Arrangement::from_integers(2, &[&[1, 0], &[0, 1]]).unwrap();
        assert_eq!(xy.flats().len(), 4);
        let three = three_lines().flats();
        assert_eq!(three.iter().filter(|f| f.rank == 2).count(), 1);
        let a = Arrangement::from_integers(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 0]]).unwrap();
        let target: BTreeSet<usize> = [0, 1, 3].into_iter().collect();
        assert!(a.flats().iter().any(|f| f.rank == 2 && f.closure == target));
    }

    #[test]
    fn subset_enumeration() {
        let all: Vec<Vec<usize>> = subsets(4, 2).collect();
        assert_eq!(all.len(), 6);
        assert_eq!(all[0], vec![0, 1]);
        assert_eq!(all[5], vec![2, 3]);
        assert_eq!(subsets(3, 0).count(), 1);
        assert_eq!(subsets(2, 3).count(), 0);
    }

    #[test]
    fn coordinate_change_keeps_genericity() {
        let a = three_lines();
        let m = vec![vec![rat(1), rat(2)], vec![rat(0), rat(1)]];
        let b = a.linear_change(&m).unwrap();
        assert!(b.is_generic());
        assert_eq!(b.form(2), p(2, "x + 3*y"));
    }
}
