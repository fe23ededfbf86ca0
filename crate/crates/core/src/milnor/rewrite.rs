//! Rewriting standard products onto the basis
//! `H_{i_1}⋯H_{i_{k−n−1}} H_{k−1} H_k^{r−k+n}` modulo `E`.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::algebra::{rat, DegreeSlice, Polynomial, Rational};
use crate::arrangement::{subsets, Arrangement};
use crate::error::{Error, Result};

/// One generator of `E`, `deg(a)·a·J_μ(Q_μ) − k·Q_μ·J_μ(a)`, with `a` an
/// A-monomial given by its multiplicity vector.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ERelation {
    pub a: Vec<u32>,
    pub mu: Vec<usize>,
}

impl ERelation {
    /// Expansion on A-monomials: `Σ_{i∉μ} (deg a − k·a_i)·J_μ(H_i)·[a·Q_μ/H_i]`.
    pub fn expand(&self, arr: &Arrangement) -> Result<Vec<(Vec<u32>, Rational)>> {
        let k = arr.k();
        let deg: u32 = self.a.iter().sum();
        let field = arr.jacobian_field(&self.mu)?;
        let mut out = Vec::new();
        for i in (0..k).filter(|i| !self.mu.contains(i)) {
            let c_i: Rational = field.iter().zip(arr.hyperplanes()[i].coefficients()).map(|(a, b)| a * b).sum();
            let coeff = c_i * rat(deg as i64 - k as i64 * self.a[i] as i64);
            let mut alpha = self.a.clone();
            for (j, e) in alpha.iter_mut().enumerate() {
                if !self.mu.contains(&j) && j != i {
                    *e += 1;
                }
            }
            if !coeff.is_zero() {
                out.push((alpha, coeff));
            }
        }
        Ok(out)
    }

    /// The generator as a polynomial, computed directly from its definition.
    pub fn value(&self, arr: &Arrangement) -> Result<Polynomial> {
        super::e_generator(arr, &arr.a_monomial(self.a.clone())?.value, &self.mu)
    }
}

/// One step of the certificate: `coefficient · relation` was subtracted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateEntry {
    pub coefficient: Rational,
    pub relation: ERelation,
}

/// Result of [`rewrite_to_basis`]: `P = Σ c_b·b + Σ λ·e` exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rewrite {
    pub input: Vec<u32>,
    pub degree: u32,
    /// Basis monomials (as multiplicity vectors) with nonzero coefficient.
    pub coefficients: Vec<(Vec<u32>, Rational)>,
    pub certificate: Vec<CertificateEntry>,
}

impl Rewrite {
    fn residual(&self, arr: &Arrangement) -> Result<Polynomial> {
        let mut diff = arr.a_monomial(self.input.clone())?.value;
        for (b, c) in &self.coefficients {
            diff = &diff - &arr.a_monomial(b.clone())?.value.scale(c);
        }
        Ok(diff)
    }

    /// Exact check that `P − Σ c_b·b` equals the certificate's combination of generators.
    pub fn verify_identity(&self, arr: &Arrangement) -> Result<bool> {
        let mut diff = self.residual(arr)?;
        for e in &self.certificate {
            diff = &diff - &e.relation.value(arr)?.scale(&e.coefficient);
        }
        Ok(diff.is_zero())
    }

    /// Independent check, ignoring the certificate: `P − Σ c_b·b` lies in the
    /// span of the degree-`r` generators of `E`.
    pub fn verify_rank(&self, arr: &Arrangement) -> Result<bool> {
        let diff = self.residual(arr)?;
        let gens = super::e_generators(arr, self.degree)?;
        Ok(DegreeSlice::new(arr.n(), self.degree, &gens).contains(&diff))
    }

    pub fn coefficient_of(&self, b: &[u32]) -> Rational {
        self.coefficients.iter().find(|(m, _)| m == b).map(|(_, c)| c.clone()).unwrap_or_else(Rational::zero)
    }
}

/// Multiplicity vectors of the `C(k−2, n−1)` basis monomials of degree `r`.
pub fn basis_monomials(arr: &Arrangement, r: u32) -> Result<Vec<Vec<u32>>> {
    let (n, k) = (arr.n(), arr.k());
    if k < n + 1 || (r as i64) < (k as i64 - n as i64 + 1) {
        return Ok(Vec::new());
    }
    let top = r - (k - n) as u32;
    Ok(subsets(k - 2, k - n - 1)
        .map(|s| {
            let mut alpha = vec![0u32; k];
            for i in s {
                alpha[i] = 1;
            }
            alpha[k - 2] = 1;
            alpha[k - 1] = top;
            alpha
        })
        .collect())
}

/// All standard products of degree `r`: A-monomials with at least `k−n+1` distinct factors.
pub fn standard_products(arr: &Arrangement, r: u32) -> Vec<Vec<u32>> {
    let need = arr.k() + 1 - arr.n();
    super::multiplicity_vectors(arr.k(), r)
        .into_iter()
        .filter(|a| a.iter().filter(|&&e| e > 0).count() >= need)
        .collect()
}

fn is_basis(alpha: &[u32], n: usize, k: usize, r: u32) -> bool {
    let distinct = alpha.iter().filter(|&&e| e > 0).count();
    distinct == k - n + 1 && alpha[k - 2] > 0 && alpha[k - 1] as i64 == r as i64 - k as i64 + n as i64
}

/// Rewrite the standard product `P = ∏ H_i^{α_i}` of degree `r` as a
/// combination of basis monomials modulo `E`.
///
/// `H_{k−1}` and `H_k` are the last two hyperplanes of the arrangement.
pub fn rewrite_to_basis(arr: &Arrangement, alpha: &[u32]) -> Result<Rewrite> {
    arr.require_generic()?;
    let (n, k) = (arr.n(), arr.k());
    if alpha.len() != k {
        return Err(Error::Dimension(format!("{} multiplicities for {k} hyperplanes", alpha.len())));
    }
    if k < 2 {
        return Err(Error::Precondition("rewriting needs at least two hyperplanes".into()));
    }
    let r: u32 = alpha.iter().sum();
    let distinct = alpha.iter().filter(|&&e| e > 0).count();
    if distinct < k - n + 1 {
        return Err(Error::Precondition(format!(
            "not a standard product: {distinct} distinct factors, need at least k-n+1 = {}",
            k - n + 1
        )));
    }
    let shift = r as i64 - k as i64 + n as i64;
    if shift % k as i64 == 0 {
        return Err(Error::UnsupportedDegree { degree: r, k: k as u32, shift });
    }
    let last = k - 1;
    let top = shift as u32;

    let mut pending: BTreeMap<Vec<u32>, Rational> = BTreeMap::new();
    pending.insert(alpha.to_vec(), Rational::from_integer(1.into()));
    let mut basis: BTreeMap<Vec<u32>, Rational> = BTreeMap::new();
    let mut certificate: Vec<CertificateEntry> = Vec::new();

    let add = |map: &mut BTreeMap<Vec<u32>, Rational>, key: Vec<u32>, c: Rational| {
        let e = map.entry(key.clone()).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            map.remove(&key);
        }
    };

    // Each step strictly raises the H_k multiplicity or prepares a term for a
    // step that does, so processing the lowest multiplicity first terminates.
    while let Some(p) = pending.keys().min_by_key(|a| (a[last], (*a).clone())).cloned() {
        let c = pending.remove(&p).expect("key just found");
        if is_basis(&p, n, k, r) {
            add(&mut basis, p, c);
            continue;
        }
        let supp: Vec<usize> = (0..k).filter(|&i| p[i] > 0).collect();
        let non_last: Vec<usize> = supp.iter().copied().filter(|&i| i != last).collect();

        // (relation to subtract, the A-monomial P inside it)
        let relation: Option<ERelation> = if non_last.len() > k - n {
            // Q_μ is the product of the first k−n+1 factors other than H_k;
            // trade H_{i0} for H_k through μ' = μ ∪ {i0} \ {k}.
            let s = &non_last[..k - n + 1];
            let i0 = s[0];
            let mut a = p.clone();
            for &i in &s[1..] {
                a[i] -= 1;
            }
            let mu_new: Vec<usize> = (0..k).filter(|i| *i != last && !s[1..].contains(i)).collect();
            debug_assert_ne!(i0, last);
            Some(ERelation { a, mu: mu_new })
        } else if p[last] < top {
            None
        } else {
            // exactly k−n+1 factors, H_k^{r−k+n}, no H_{k−1}: use a = H_k^{r−k+n}
            // and Q_μ = (P / H_k^{r−k+n})·H_{k−1}
            let mut a = vec![0u32; k];
            a[last] = top;
            let mu: Vec<usize> = (0..k).filter(|&i| i != k - 2 && (p[i] == 0 || i == last)).collect();
            Some(ERelation { a, mu })
        };

        match relation {
            Some(rel) => {
                let terms = rel.expand(arr)?;
                let own = terms
                    .iter()
                    .find(|(m, _)| *m == p)
                    .map(|(_, v)| v.clone())
                    .ok_or_else(|| Error::Falsified(format!("relation {rel:?} does not involve {p:?}")))?;
                let lambda = &c / &own;
                for (m, v) in terms {
                    if m != p {
                        add(&mut pending, m, -(&lambda * &v));
                    }
                }
                certificate.push(CertificateEntry { coefficient: lambda, relation: rel });
            }
            None => {
                // Exact substitution H_{i0} = Σ λ_j H_j over μ ∪ {k}, where
                // μ is the complement of the support of P.
                let i0 = (0..k)
                    .find(|&i| p[i] >= 2 && i != last)
                    .ok_or_else(|| Error::Falsified(format!("no repeated factor to substitute in {p:?}")))?;
                let frame: Vec<usize> = (0..k).filter(|&i| p[i] == 0 || i == last).collect();
                let lambdas = express_in_frame(arr, i0, &frame)?;
                for (j, l) in frame.iter().zip(lambdas) {
                    if l.is_zero() {
                        continue;
                    }
                    let mut m = p.clone();
                    m[i0] -= 1;
                    m[*j] += 1;
                    add(&mut pending, m, &c * &l);
                }
            }
        }
    }

    Ok(Rewrite { input: alpha.to_vec(), degree: r, coefficients: basis.into_iter().collect(), certificate })
}

/// Coefficients `λ_j` with `H_i = Σ_j λ_j H_j` over the hyperplanes in `frame`.
fn express_in_frame(arr: &Arrangement, i: usize, frame: &[usize]) -> Result<Vec<Rational>> {
    let v = arr.dual_frame(frame)?;
    let h = arr.hyperplanes()[i].coefficients();
    Ok(v.iter().map(|field| field.iter().zip(h).map(|(a, b)| a * b).sum()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::generic_arrangement;

    #[test]
    fn three_lines_degree_two() {
        let a = generic_arrangement(2, 3).unwrap();
        assert_eq!(basis_monomials(&a, 2).unwrap(), vec![vec![0, 1, 1]]);
        let rw = rewrite_to_basis(&a, &[1, 1, 0]).unwrap();
        assert!(rw.verify_identity(&a).unwrap());
        assert!(rw.verify_rank(&a).unwrap());
        assert!(rw.coefficients.len() <= 1);
    }

    #[test]
    fn basis_monomial_is_fixed() {
        let a = generic_arrangement(3, 5).unwrap();
        for b in basis_monomials(&a, 4).unwrap() {
            let rw = rewrite_to_basis(&a, &b).unwrap();
            assert_eq!(rw.coefficients, vec![(b.clone(), rat(1))]);
            assert!(rw.certificate.is_empty());
        }
    }

    #[test]
    fn unsupported_degree() {
        let a = generic_arrangement(2, 3).unwrap();
        // r = 4: r - k + n = 3
        assert!(matches!(rewrite_to_basis(&a, &[2, 1, 1]), Err(Error::UnsupportedDegree { .. })));
        assert!(matches!(rewrite_to_basis(&a, &[2, 0, 0]), Err(Error::Precondition(_))));
    }

    #[test]
    fn expansion_matches_value() {
        let a = generic_arrangement(3, 4).unwrap();
        for mu in subsets(4, 2) {
            let rel = ERelation { a: vec![2, 0, 1, 0], mu };
            let mut sum = Polynomial::zero(3);
            for (m, c) in rel.expand(&a).unwrap() {
                sum = &sum + &a.a_monomial(m).unwrap().value.scale(&c);
            }
            assert_eq!(sum, rel.value(&a).unwrap());
        }
    }

    #[test]
    fn every_standard_product_on_small_grid() {
        for (n, k) in [(2, 3), (2, 4), (3, 4)] {
            let a = generic_arrangement(n, k).unwrap();
            for r in (k - n + 1) as u32..=(2 * k - n - 2) as u32 {
                if (r as i64 - k as i64 + n as i64) % k as i64 == 0 {
                    continue;
                }
                for p in standard_products(&a, r) {
                    let rw = rewrite_to_basis(&a, &p).unwrap();
                    assert!(rw.verify_identity(&a).unwrap(), "{p:?}");
                    assert!(rw.verify_rank(&a).unwrap(), "{p:?}");
                }
            }
        }
    }
}
