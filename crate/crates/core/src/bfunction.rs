//! Bernstein–Sato polynomials as exact root multisets.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::{format_rational, rat, ratio, Monomial, Polynomial, Rational};
use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::groebner::{buchberger, contains_m_power, hilbert_dim, ideal_quotient, m_power, min_m_power, GroebnerBasis};

/// The monic polynomial `∏_ρ (s + ρ)^{m_ρ}`, stored as `ρ ↦ m_ρ` with every `ρ > 0`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BFunction {
    factors: BTreeMap<Rational, u32>,
}

impl BFunction {
    pub fn one() -> Self {
        Self::default()
    }

    /// Multiply by `(s + ρ)^m`.
    pub fn with_factor(mut self, rho: Rational, m: u32) -> Result<Self> {
        if rho <= Rational::zero() {
            return Err(Error::Precondition(format!("shift {} is not positive", format_rational(&rho))));
        }
        if m > 0 {
            *self.factors.entry(rho).or_insert(0) += m;
        }
        Ok(self)
    }

    pub fn from_shifts(shifts: impl IntoIterator<Item = Rational>) -> Result<Self> {
        shifts.into_iter().try_fold(Self::one(), |b, r| b.with_factor(r, 1))
    }

    pub fn factors(&self) -> &BTreeMap<Rational, u32> {
        &self.factors
    }

    pub fn multiplicity(&self, rho: &Rational) -> u32 {
        self.factors.get(rho).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.factors.values().sum()
    }

    /// The roots `−ρ`, each listed once.
    pub fn roots(&self) -> Vec<Rational> {
        self.factors.keys().map(|r| -r.clone()).collect()
    }

    /// `b(s)/(s+1)`, the reduced polynomial.
    pub fn reduced(&self) -> Result<Self> {
        let one = Rational::one();
        let mut out = self.clone();
        match out.factors.get_mut(&one) {
            Some(m) if *m > 1 => *m -= 1,
            Some(_) => {
                out.factors.remove(&one);
            }
            None => return Err(Error::Precondition("s + 1 does not divide b(s)".into())),
        }
        Ok(out)
    }

    /// Coefficients in `s`, lowest degree first.
    pub fn coefficients(&self) -> Vec<Rational> {
        let mut c = vec![Rational::one()];
        for (rho, &m) in &self.factors {
            for _ in 0..m {
                let mut next = vec![Rational::zero(); c.len() + 1];
                for (i, a) in c.iter().enumerate() {
                    next[i] += a * rho;
                    next[i + 1] += a;
                }
                c = next;
            }
        }
        c
    }

    pub fn evaluate(&self, s: &Rational) -> Rational {
        self.factors.iter().fold(Rational::one(), |acc, (rho, &m)| (0..m).fold(acc, |a, _| a * (s + rho)))
    }

    /// `b` as a polynomial in variable `s_index` of an `nvars`-variable ring.
    pub fn as_polynomial(&self, nvars: usize, s_index: usize) -> Polynomial {
        let mut p = Polynomial::zero(nvars);
        for (e, c) in self.coefficients().into_iter().enumerate() {
            let mut m = vec![0u32; nvars];
            m[s_index] = e as u32;
            p.add_term(Monomial::new(m), c);
        }
        p
    }
}

impl fmt::Display for BFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (rho, &m) in self.factors.iter().rev() {
            write!(f, "(s+{})", format_rational(rho))?;
            if m > 1 {
                write!(f, "^{m}")?;
            }
        }
        Ok(())
    }
}

fn check_nk(n: usize, k: usize) -> Result<()> {
    if n < 2 || k < n {
        return Err(Error::Precondition(format!("need k ≥ n ≥ 2, got n = {n}, k = {k}")));
    }
    Ok(())
}

/// The shifts `(i+n)/k` for `i = 0..=2k−n−2`, in product order.
pub fn generic_shifts(n: usize, k: usize) -> Vec<Rational> {
    (0..=(2 * k - n - 2) as i64).map(|i| ratio(i + n as i64, k as i64)).collect()
}

/// `(s+1)^{n−1} ∏_{i=0}^{2k−n−2} (s + (i+n)/k)`.
pub fn upper_bound_generic(n: usize, k: usize) -> Result<BFunction> {
    check_nk(n, k)?;
    BFunction::from_shifts(generic_shifts(n, k))?.with_factor(Rational::one(), n as u32 - 1)
}

/// `(s+1)^r ∏_{i=0}^{2k−n−2} (s + (i+n)/k)` for `r ∈ {n−1, n−2}`.
pub fn generic_bsat(n: usize, k: usize, r: usize) -> Result<BFunction> {
    check_nk(n, k)?;
    if r + 1 != n && r + 2 != n {
        return Err(Error::Precondition(format!("the exponent must be n-1 or n-2, got {r}")));
    }
    BFunction::from_shifts(generic_shifts(n, k))?.with_factor(Rational::one(), r as u32)
}

/// Jacobian ideal `⟨∂_1 Q, …, ∂_n Q⟩`.
pub fn jacobian_ideal(q: &Polynomial) -> Result<GroebnerBasis> {
    let partials: Vec<Polynomial> = (0..q.nvars()).map(|i| q.partial(i)).collect::<Result<_>>()?;
    buchberger(&partials)
}

/// b-function of a homogeneous polynomial with an isolated singularity:
/// `(s+1) ∏_{d : (R_n/𝔄)_d ≠ 0} (s + (d+n)/k)`.
pub fn isolated_homog_bsat(q: &Polynomial) -> Result<BFunction> {
    if !q.is_homogeneous() || q.is_constant() {
        return Err(Error::Precondition("need a nonconstant homogeneous polynomial".into()));
    }
    let n = q.nvars();
    let k = q.total_degree().expect("nonzero") as usize;
    let jac = jacobian_ideal(q)?;
    let cap = (n * (k - 1) + 1) as u32;
    let top = min_m_power(&jac, cap).ok_or(Error::NonIsolated { cap })?;
    let mut b = BFunction::one().with_factor(Rational::one(), 1)?;
    for d in 0..top {
        if hilbert_dim(&jac, d) > 0 {
            b = b.with_factor(ratio(d as i64 + n as i64, k as i64), 1)?;
        }
    }
    Ok(b)
}

/// `max { i ≥ 0 : b(−(i+n)/k) = 0 }`.
pub fn u_q_bound(b: &BFunction, n: usize, k: usize) -> Result<u32> {
    b.factors
        .keys()
        .filter_map(|rho| {
            let v = rho * rat(k as i64) - rat(n as i64);
            (v.is_integer() && v >= Rational::zero()).then(|| v.to_integer())
        })
        .max()
        .map(|i| u32::try_from(i).expect("small"))
        .ok_or(Error::NoMatchingRoot)
}

/// `𝔪^{2k+1} ⊆ ⟨Q_x, Q_y⟩` for a generic line arrangement.
pub fn verify_inplane(a: &Arrangement) -> Result<bool> {
    if a.n() != 2 {
        return Err(Error::Precondition(format!("plane check needs n = 2, got {}", a.n())));
    }
    a.require_generic()?;
    let jac = jacobian_ideal(&a.defining_poly())?;
    Ok(contains_m_power(&jac, 2 * a.k() as u32 + 1))
}

/// One line of a [`ChainReport`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainCheck {
    pub name: &'static str,
    pub r: usize,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainReport {
    pub checks: Vec<ChainCheck>,
}

impl ChainReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// The `Σ/Δ` chain for a generic arrangement:
///
/// * `sigma-is-m-power`: `Σ_r = 𝔪^r` for `r ≤ k−n+1`;
/// * `delta-is-m-power`: `Δ_{k−n+1} = 𝔪^{k−n}`, the only degree where `Δ` is defined
///   in that range (its generators `Δ_{J,I,N}` have degree `|I|−1`);
/// * `delta-in-sigma`: `Δ_r ⊆ Σ_{r−1}` and `annihilator`: `𝔪^{k−n} ⊆ (Δ_r : Σ_{r−1})`
///   for `k−n+1 ≤ r ≤ k`.
pub fn chain_check(a: &Arrangement) -> Result<ChainReport> {
    a.require_generic()?;
    let (n, k) = (a.n(), a.k());
    let mut checks = Vec::new();
    for r in 0..=(k + 1 - n) {
        let m_r = buchberger(&m_power(n, r as u32))?;
        let sigma = buchberger(&a.sigma_r(r))?;
        checks.push(ChainCheck { name: "sigma-is-m-power", r, passed: sigma == m_r });
        if r + n > k {
            let delta = buchberger(&a.delta_r(r)?)?;
            let m_prev = buchberger(&m_power(n, r as u32 - 1))?;
            checks.push(ChainCheck { name: "delta-is-m-power", r, passed: delta == m_prev });
        }
    }
    for r in (k + 1 - n).max(1)..=k {
        let delta = buchberger(&a.delta_r(r)?)?;
        let sigma_prev_gens = a.sigma_r(r - 1);
        let sigma_prev = buchberger(&sigma_prev_gens)?;
        checks.push(ChainCheck { name: "delta-in-sigma", r, passed: sigma_prev.contains_all(delta.generators()) });
        let quot = ideal_quotient(&delta, &sigma_prev_gens)?;
        checks.push(ChainCheck { name: "annihilator", r, passed: contains_m_power(&quot, (k - n) as u32) });
    }
    Ok(ChainReport { checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_polynomial;
    use crate::arrangement::generic_arrangement;

    fn shifts(v: &[(i64, i64, u32)]) -> BFunction {
        v.iter().fold(BFunction::one(), |b, &(p, q, m)| b.with_factor(ratio(p, q), m).unwrap())
    }

    #[test]
    fn upper_bounds() {
        assert_eq!(upper_bound_generic(2, 3).unwrap(), shifts(&[(1, 1, 2), (2, 3, 1), (4, 3, 1)]));
        assert_eq!(upper_bound_generic(3, 4).unwrap(), shifts(&[(1, 1, 3), (3, 4, 1), (5, 4, 1), (3, 2, 1)]));
        let b = upper_bound_generic(2, 4).unwrap();
        assert_eq!(b, shifts(&[(1, 1, 2), (1, 2, 1), (3, 4, 1), (5, 4, 1), (3, 2, 1)]));
        assert_eq!(b.to_string(), "(s+3/2)(s+5/4)(s+1)^2(s+3/4)(s+1/2)");
    }

    #[test]
    fn generic_candidates() {
        assert_eq!(generic_bsat(2, 3, 1).unwrap(), upper_bound_generic(2, 3).unwrap());
        assert_eq!(generic_bsat(3, 4, 2).unwrap(), upper_bound_generic(3, 4).unwrap());
        assert_eq!(generic_bsat(3, 4, 1).unwrap().multiplicity(&rat(1)), 2);
        assert!(generic_bsat(3, 4, 0).is_err());
        assert!(generic_bsat(1, 2, 0).is_err());
    }

    #[test]
    fn isolated_examples() {
        let two = shifts(&[(1, 1, 2)]);
        assert_eq!(isolated_homog_bsat(&parse_polynomial(2, "x^2 + y^2").unwrap()).unwrap(), two);
        assert_eq!(isolated_homog_bsat(&parse_polynomial(2, "x*y").unwrap()).unwrap(), two);
        let q = generic_arrangement(2, 3).unwrap().defining_poly();
        assert_eq!(isolated_homog_bsat(&q).unwrap(), generic_bsat(2, 3, 1).unwrap());
        let cone = generic_arrangement(3, 4).unwrap().defining_poly();
        assert!(matches!(isolated_homog_bsat(&cone), Err(Error::NonIsolated { .. })));
    }

    #[test]
    fn bounds_on_u() {
        assert_eq!(u_q_bound(&generic_bsat(2, 3, 1).unwrap(), 2, 3).unwrap(), 2);
        assert_eq!(u_q_bound(&generic_bsat(3, 4, 2).unwrap(), 3, 4).unwrap(), 3);
        assert_eq!(u_q_bound(&shifts(&[(1, 1, 1)]), 1, 1).unwrap(), 0);
        assert!(u_q_bound(&shifts(&[(1, 3, 1)]), 2, 3).is_err());
    }

    #[test]
    fn polynomial_form() {
        let b = shifts(&[(1, 1, 1), (1, 2, 1)]);
        assert_eq!(b.coefficients(), vec![ratio(1, 2), ratio(3, 2), rat(1)]);
        assert_eq!(b.evaluate(&rat(-1)), rat(0));
        assert_eq!(b.reduced().unwrap(), shifts(&[(1, 2, 1)]));
    }

    #[test]
    fn plane_and_chain() {
        assert!(verify_inplane(&generic_arrangement(2, 3).unwrap()).unwrap());
        assert!(verify_inplane(&generic_arrangement(2, 4).unwrap()).unwrap());
        for (n, k) in [(2, 3), (2, 4), (3, 4)] {
            let report = chain_check(&generic_arrangement(n, k).unwrap()).unwrap();
            assert!(report.all_passed(), "{report:?}");
        }
        let flat = Arrangement::from_integers(3, &[&[1, 0, 0], &[0, 1, 0], &[1, 1, 0]]).unwrap();
        assert!(matches!(chain_check(&flat), Err(Error::NotGeneric { .. })));
    }
}
