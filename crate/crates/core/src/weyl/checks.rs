use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::algebra::{kernel, monomials_of_degree, rat, solve, Monomial, Polynomial, Rational};
use crate::arrangement::Arrangement;
use crate::bfunction::BFunction;
use crate::error::{Error, Result};
use crate::groebner::{buchberger, normal_form};

use super::operator::WeylOperator;
use super::twisted::TwistedElement;

/// Operators `x^α s^e ∂^β` with `|α| = |β| − k`, `k ≤ |β| ≤ order`, `e ≤ s_degree`.
fn ansatz_terms(n: usize, k: u32, order: u32, s_degree: u32) -> Vec<WeylOperator> {
    let mut out = Vec::new();
    for b in k..=order {
        for beta in monomials_of_degree(n, b) {
            for alpha in monomials_of_degree(n, b - k) {
                for e in 0..=s_degree {
                    let mut exps = alpha.exponents().to_vec();
                    exps.push(e);
                    let c = Polynomial::term(Monomial::new(exps), Rational::one());
                    out.push(WeylOperator::zero(n).with_term(beta.clone(), c));
                }
            }
        }
    }
    out
}

/// Find `Σ c_t P_t` with `Σ c_t P_t • source = target`, after substituting `s`
/// if `specialize` is given. The returned operator has been re-applied and checked.
fn solve_ansatz(
    source: &TwistedElement,
    target: &TwistedElement,
    candidates: &[WeylOperator],
    specialize: Option<&Rational>,
) -> Result<Option<WeylOperator>> {
    let act = |p: &WeylOperator| -> Result<TwistedElement> {
        let e = p.apply(source)?;
        Ok(match specialize {
            Some(v) => e.substitute_s(v),
            None => e,
        })
    };
    let images: Vec<TwistedElement> = candidates.iter().map(act).collect::<Result<_>>()?;
    let order = images.iter().chain([target]).map(TwistedElement::pole_order).max().unwrap_or(0);
    let nums: Vec<Polynomial> = images.iter().map(|e| e.numerator_at(order)).collect();
    let rhs = target.numerator_at(order);
    let mut index: BTreeMap<Monomial, usize> = BTreeMap::new();
    for p in nums.iter().chain([&rhs]) {
        for (m, _) in p.terms() {
            let next = index.len();
            index.entry(m.clone()).or_insert(next);
        }
    }
    let mut rows = vec![vec![Rational::zero(); nums.len()]; index.len()];
    for (col, p) in nums.iter().enumerate() {
        for (m, c) in p.terms() {
            rows[index[m]][col] = c.clone();
        }
    }
    let mut b = vec![Rational::zero(); index.len()];
    for (m, c) in rhs.terms() {
        b[index[m]] = c.clone();
    }
    let Some(x) = solve(&rows, &b)? else {
        return Ok(None);
    };
    let mut p = WeylOperator::zero(source.nvars());
    for (c, t) in x.iter().zip(candidates) {
        if !c.is_zero() {
            p = p.try_add(&t.scale(c))?;
        }
    }
    if &act(&p)? != target {
        return Err(Error::Falsified("ansatz solution failed re-verification".into()));
    }
    Ok(Some(p))
}

fn homogeneous_degree(q: &Polynomial) -> Result<u32> {
    if !q.is_homogeneous() || q.is_constant() {
        return Err(Error::Precondition("need a nonconstant homogeneous polynomial".into()));
    }
    Ok(q.total_degree().expect("nonzero"))
}

/// Search for `P(s)` with `P(s) • Q^{s+1} = b(s) Q^s` among operators of
/// `(1,k)`-degree `−k`, raising the `∂`-order up to `order_cap`.
///
/// `Some(P)` certifies that `b_Q` divides `b`; `None` certifies nothing.
pub fn certify_functional_equation(
    q: &Polynomial,
    b: &BFunction,
    order_cap: u32,
    s_degree_cap: u32,
) -> Result<Option<WeylOperator>> {
    let k = homogeneous_degree(q)?;
    let n = q.nvars();
    let source = TwistedElement::monomial_part(q.clone(), 0, q);
    let target = TwistedElement::zero(q.clone()).with_part(0, b.as_polynomial(n + 1, n));
    for order in k..=order_cap {
        let terms = ansatz_terms(n, k, order, s_degree_cap);
        if let Some(p) = solve_ansatz(&source, &target, &terms, None)? {
            return Ok(Some(p));
        }
    }
    Ok(None)
}

/// Default caps: `∂`-order `k + n`, `s`-degree `deg b`.
pub fn default_caps(q: &Polynomial, b: &BFunction) -> (u32, u32) {
    (q.total_degree().unwrap_or(0) + q.nvars() as u32, b.degree())
}

/// Search for `P ∈ D_n` with `P • Q^{−1} = Q^{−2}`.
pub fn leykin_spot_check(q: &Polynomial, order_cap: u32) -> Result<Option<WeylOperator>> {
    let k = homogeneous_degree(q)?;
    let n = q.nvars();
    let source = TwistedElement::q_power_s(q.clone());
    let target = TwistedElement::zero(q.clone()).with_part(1, Polynomial::one(n + 1));
    let minus_one = -Rational::one();
    for order in k..=order_cap {
        let terms = ansatz_terms(n, k, order, 0);
        if let Some(p) = solve_ansatz(&source, &target, &terms, Some(&minus_one))? {
            return Ok(Some(p));
        }
    }
    Ok(None)
}

/// `Σ_i ∂_i • (x_i m g Q^s) = m g (ks + n + deg(mg)) Q^s`.
pub fn euler_identity_check(q: &Polynomial, g: &Polynomial, m: &Monomial) -> Result<bool> {
    let k = homogeneous_degree(q)?;
    if !g.is_homogeneous() || g.is_zero() {
        return Err(Error::Precondition("g must be a nonzero homogeneous polynomial".into()));
    }
    let n = q.nvars();
    let mg = g.mul_monomial(m);
    let e = TwistedElement::monomial_part(q.clone(), 0, &mg);
    let mut lhs = TwistedElement::zero(q.clone());
    for i in 0..n {
        let op = WeylOperator::partial(n, i).try_mul(&WeylOperator::x(n, i))?;
        lhs = lhs.try_add(&op.apply(&e)?)?;
    }
    let deg = mg.total_degree().expect("nonzero") as i64;
    let mut factor = Polynomial::var(n + 1, n).scale(&rat(k as i64));
    factor.add_term(Monomial::one(n + 1), rat(n as i64 + deg));
    let rhs = TwistedElement::zero(q.clone()).with_part(0, &mg.extend(1) * &factor);
    Ok(lhs == rhs)
}

/// Cancel the poles of `Σ_{j∈J} c_j v_j • (m H_I Q^s)` and compare the result with
/// `(s+1) m Δ_{J,I,N}(Q) Q^s + (Σ_j c_j v_j•(m)) H_I Q^s`.
///
/// Returns `false` when no pole-free combination exists or the comparison fails.
pub fn delta_production_check(
    a: &Arrangement,
    m: &Monomial,
    i: &[usize],
    j: &[usize],
    frame: &[usize],
) -> Result<bool> {
    let n = a.n();
    let delta = a.delta_jin(j, i, frame)?;
    let q = a.defining_poly();
    let h_i = a.product(i);
    let mut frame_sorted = frame.to_vec();
    frame_sorted.sort_unstable();
    let v = a.dual_frame(&frame_sorted)?;
    let fields: Vec<&Vec<Rational>> = j
        .iter()
        .map(|jj| frame_sorted.iter().position(|x| x == jj).map(|p| &v[p]))
        .collect::<Option<_>>()
        .ok_or_else(|| Error::Precondition("J must lie in N".into()))?;
    let m_poly = Polynomial::term(m.clone(), Rational::one());
    let base = TwistedElement::monomial_part(q.clone(), 0, &(&m_poly * &h_i));
    let images: Vec<TwistedElement> =
        fields.iter().map(|f| WeylOperator::vector_field(f).apply(&base)).collect::<Result<_>>()?;

    // Linear conditions: the order-one numerators of v_j • (H_I Q^s) must combine into a
    // multiple of Q. They are taken with m = 1 so that factors of m cannot relax them.
    let q_basis = buchberger(&[q.extend(1)])?;
    let plain = TwistedElement::monomial_part(q.clone(), 0, &h_i);
    let plain_images: Vec<TwistedElement> =
        fields.iter().map(|f| WeylOperator::vector_field(f).apply(&plain)).collect::<Result<_>>()?;
    let residues: Vec<Polynomial> = plain_images
        .iter()
        .map(|e| e.parts().get(&1).map_or_else(|| Polynomial::zero(n + 1), |p| normal_form(p, &q_basis)))
        .collect();
    let mut index: BTreeMap<Monomial, usize> = BTreeMap::new();
    for p in &residues {
        for (mono, _) in p.terms() {
            let next = index.len();
            index.entry(mono.clone()).or_insert(next);
        }
    }
    let mut rows = vec![vec![Rational::zero(); j.len()]; index.len()];
    for (col, p) in residues.iter().enumerate() {
        for (mono, c) in p.terms() {
            rows[index[mono]][col] = c.clone();
        }
    }
    let combos = if rows.is_empty() {
        (0..j.len())
            .map(|t| (0..j.len()).map(|u| if t == u { Rational::one() } else { Rational::zero() }).collect())
            .collect()
    } else {
        kernel(&rows, j.len())?
    };
    if combos.is_empty() {
        return Ok(false);
    }
    let mut target = delta.mul_monomial(m).extend(1);
    target = &target * &(&Polynomial::var(n + 1, n) + &Polynomial::one(n + 1));
    for c in &combos {
        let mut sum = TwistedElement::zero(q.clone());
        let mut v_m = Polynomial::zero(n);
        for ((e, f), cj) in images.iter().zip(&fields).zip(c) {
            sum = sum.try_add(&e.scale(cj))?;
            v_m = &v_m + &m_poly.directional_derivative(f).scale(cj);
        }
        let sum = sum.reduced();
        if sum.pole_order() > 0 {
            return Ok(false);
        }
        let rest = &sum.numerator_at(0) - &(&v_m * &h_i).extend(1);
        if !proportional(&rest, &target) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `a = λ b` for some `λ`, nonzero unless both vanish.
fn proportional(a: &Polynomial, b: &Polynomial) -> bool {
    match b.leading_term() {
        None => a.is_zero(),
        Some((mono, c)) => {
            let lambda = a.coeff(mono) / c;
            !lambda.is_zero() && a == &b.scale(&lambda)
        }
    }
}

fn pij_base(a: &Arrangement, i: usize, j: usize, q_prime: &[usize]) -> Result<WeylOperator> {
    let n = a.n();
    if i == j || i >= n || j >= n {
        return Err(Error::Precondition(format!("need distinct i, j < n = {n}, got ({i}, {j})")));
    }
    let frame: Vec<usize> = (0..n).collect();
    let v = a.dual_frame(&frame)?;
    let qp = a.product(q_prime);
    let (ci, cj) = (qp.directional_derivative(&v[i]), qp.directional_derivative(&v[j]));
    let num = &a.form(i) * &a.form(j);
    let den = a.product(&frame);
    let mut op = WeylOperator::zero(n);
    for (l, (vjl, vil)) in v[j].iter().zip(&v[i]).enumerate() {
        let c = &ci.scale(vjl) - &cj.scale(vil);
        let coeff = (&num * &c).div_exact(&den).ok_or_else(|| {
            Error::Precondition(format!("P_{{{},{}}} has a non-polynomial coefficient for this divisor", i + 1, j + 1))
        })?;
        op.add_term(Monomial::var(n, l), coeff.extend(1));
    }
    Ok(op)
}

fn complement(a: &Arrangement, q_prime: &[usize]) -> Result<Vec<usize>> {
    let mut seen = vec![false; a.k()];
    for &x in q_prime {
        if x >= a.k() || seen[x] {
            return Err(Error::Precondition("the divisor must be a set of distinct hyperplane indices".into()));
        }
        seen[x] = true;
    }
    Ok((0..a.k()).filter(|&x| !seen[x]).collect())
}

/// `P_{i,j}(Q') · (Q/Q')`, with the frame `H_1, …, H_n` and `Q'` given by hyperplane indices.
///
/// Kills `1/Q`. Fails when a coefficient of `P_{i,j}(Q')` is not a polynomial,
/// which happens when `Q'` misses a frame hyperplane other than `H_i, H_j`.
pub fn pij_operator(a: &Arrangement, i: usize, j: usize, q_prime: &[usize]) -> Result<WeylOperator> {
    let rest = complement(a, q_prime)?;
    let p = pij_base(a, i, j, q_prime)?;
    p.try_mul(&WeylOperator::x_function(&a.product(&rest)))
}

/// `Q''^{s+1} P_{i,j}(Q') Q''^{−s} = a Q'' v − s a v•(Q'')` for `Q = Q' Q''`. Kills `Q^s`.
pub fn conjugated_pij(a: &Arrangement, i: usize, j: usize, q_prime: &[usize]) -> Result<WeylOperator> {
    let n = a.n();
    let rest = complement(a, q_prime)?;
    let p = pij_base(a, i, j, q_prime)?;
    let q2 = a.product(&rest);
    let left = WeylOperator::x_function(&q2).try_mul(&p)?;
    let correction = &p.apply_to_polynomial(&q2)? * &Polynomial::var(n + 1, n);
    left.try_sub(&WeylOperator::function(correction))
}

/// `ξ • f = f` for `ξ = Σ w_i x_i ∂_i`, so that `ξ − s` annihilates `f^s`.
pub fn weighted_euler_check(f: &Polynomial, w: &[Rational]) -> Result<bool> {
    if w.len() != f.nvars() {
        return Err(Error::Dimension(format!("{} weights for {} variables", w.len(), f.nvars())));
    }
    let mut xi = Polynomial::zero(f.nvars());
    for (i, wi) in w.iter().enumerate() {
        xi = &xi + &(&Polynomial::var(f.nvars(), i) * &f.partial(i)?).scale(wi);
    }
    Ok(&xi == f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_polynomial, ratio};
    use crate::arrangement::generic_arrangement;

    fn p(n: usize, s: &str) -> Polynomial {
        parse_polynomial(n, s).unwrap()
    }

    fn b(shifts: &[(i64, i64)]) -> BFunction {
        BFunction::from_shifts(shifts.iter().map(|&(a, c)| ratio(a, c))).unwrap()
    }

    #[test]
    fn functional_equations() {
        let d = |n, i| WeylOperator::partial(n, i);
        let found = certify_functional_equation(&p(1, "x"), &b(&[(1, 1)]), 3, 1).unwrap().unwrap();
        assert_eq!(found, d(1, 0));
        let q = p(2, "x^2 + y^2");
        let found = certify_functional_equation(&q, &b(&[(1, 1), (1, 1)]), 4, 2).unwrap().unwrap();
        let lap = d(2, 0).try_mul(&d(2, 0)).unwrap().try_add(&d(2, 1).try_mul(&d(2, 1)).unwrap()).unwrap();
        assert_eq!(found, lap.scale(&ratio(1, 4)));
        let found = certify_functional_equation(&p(2, "x*y"), &b(&[(1, 1), (1, 1)]), 4, 2).unwrap().unwrap();
        assert_eq!(found, d(2, 0).try_mul(&d(2, 1)).unwrap());
        assert!(certify_functional_equation(&p(2, "x*y"), &b(&[(1, 1)]), 4, 1).unwrap().is_none());
    }

    #[test]
    fn euler_annihilates() {
        let q = generic_arrangement(2, 3).unwrap().defining_poly();
        let op = WeylOperator::euler(2).try_sub(&WeylOperator::s(2).scale(&rat(3))).unwrap();
        assert!(op.apply(&TwistedElement::q_power_s(q.clone())).unwrap().is_zero());
        assert!(euler_identity_check(&q, &Polynomial::one(2), &Monomial::one(2)).unwrap());
        assert!(euler_identity_check(&q, &p(2, "x"), &Monomial::new(vec![0, 1])).unwrap());
        assert!(euler_identity_check(&q, &p(2, "x^2 - 3*x*y"), &Monomial::new(vec![2, 1])).unwrap());
    }

    #[test]
    fn delta_production() {
        let a = generic_arrangement(2, 3).unwrap();
        assert_eq!(a.delta_jin(&[0, 1], &[0, 1], &[0, 1]).unwrap(), p(2, "x - y"));
        assert!(delta_production_check(&a, &Monomial::one(2), &[0, 1], &[0, 1], &[0, 1]).unwrap());
        assert!(delta_production_check(&a, &Monomial::new(vec![1, 0]), &[0, 1], &[0, 1], &[0, 1]).unwrap());
        assert!(delta_production_check(&a, &Monomial::new(vec![1, 1]), &[0, 2], &[0, 2], &[0, 2]).unwrap());
        let a = generic_arrangement(3, 4).unwrap();
        assert!(delta_production_check(&a, &Monomial::new(vec![0, 1, 1]), &[0, 1], &[0, 1], &[0, 1, 2]).unwrap());
    }

    #[test]
    fn pij_kills() {
        let xy = Arrangement::from_integers(2, &[&[1, 0], &[0, 1]]).unwrap();
        let op = pij_operator(&xy, 0, 1, &[0, 1]).unwrap();
        assert!(op.apply(&TwistedElement::q_power_s(xy.defining_poly())).unwrap().is_zero());
        for (n, k) in [(2, 3), (3, 4)] {
            let a = generic_arrangement(n, k).unwrap();
            let q = a.defining_poly();
            let all: Vec<usize> = (0..k).collect();
            let qs = TwistedElement::q_power_s(q.clone());
            let op = pij_operator(&a, 0, 1, &all).unwrap();
            assert!(op.apply(&qs).unwrap().substitute_s(&-Rational::one()).is_zero());
            let sub: Vec<usize> = (0..n).collect();
            let op = conjugated_pij(&a, 0, 1, &sub).unwrap();
            assert!(op.apply(&qs).unwrap().is_zero());
            let op = pij_operator(&a, 0, 1, &sub).unwrap();
            assert!(op.apply(&qs).unwrap().substitute_s(&-Rational::one()).is_zero());
        }
    }

    #[test]
    fn weighted_euler() {
        let f = p(4, "x^3 + y^3 + z^2*w");
        let third = ratio(1, 3);
        assert!(weighted_euler_check(&f, &[third.clone(), third.clone(), third.clone(), third.clone()]).unwrap());
        assert!(weighted_euler_check(&f, &[third.clone(), third, ratio(1, 2), rat(0)]).unwrap());
        assert!(!weighted_euler_check(&p(2, "x^2 + y^3"), &[ratio(1, 2), ratio(1, 2)]).unwrap());
    }

    #[test]
    fn leykin() {
        let found = leykin_spot_check(&p(2, "x*y"), 3).unwrap().unwrap();
        assert_eq!(found, WeylOperator::partial(2, 0).try_mul(&WeylOperator::partial(2, 1)).unwrap());
    }
}
