use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::monomial::var_name;
use crate::algebra::rational::fmt_coeff_prefix;
use crate::algebra::{Monomial, Polynomial, Rational};
use crate::error::{Error, Result};

use super::twisted::TwistedElement;

/// An element of `D_n[s]` in normal order `Σ c_β(x, s) ∂^β`.
///
/// Coefficients are polynomials in `n + 1` variables, the last one being `s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylOperator {
    n: usize,
    terms: BTreeMap<Monomial, Polynomial>,
}

fn binom(n: u32, k: u32) -> Rational {
    (0..k).fold(Rational::one(), |acc, i| {
        acc * Rational::from_integer((n - i).into()) / Rational::from_integer((i + 1).into())
    })
}

impl WeylOperator {
    pub fn zero(n: usize) -> Self {
        Self { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::function(Polynomial::one(n + 1))
    }

    /// Multiplication by `c(x, s)`, given in `n + 1` variables.
    pub fn function(c: Polynomial) -> Self {
        let n = c.nvars() - 1;
        Self::zero(n).with_term(Monomial::one(n), c)
    }

    /// Multiplication by a polynomial in `x` alone.
    pub fn x_function(c: &Polynomial) -> Self {
        Self::function(c.extend(1))
    }

    pub fn x(n: usize, i: usize) -> Self {
        Self::function(Polynomial::var(n + 1, i))
    }

    pub fn s(n: usize) -> Self {
        Self::function(Polynomial::var(n + 1, n))
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        Self::function(Polynomial::constant(n + 1, c))
    }

    pub fn partial(n: usize, i: usize) -> Self {
        Self::zero(n).with_term(Monomial::var(n, i), Polynomial::one(n + 1))
    }

    /// The constant vector field `Σ v_l ∂_l`.
    pub fn vector_field(v: &[Rational]) -> Self {
        let n = v.len();
        let mut op = Self::zero(n);
        for (l, c) in v.iter().enumerate() {
            op = op.with_term(Monomial::var(n, l), Polynomial::constant(n + 1, c.clone()));
        }
        op
    }

    /// `x_1 ∂_1 + … + x_n ∂_n`.
    pub fn euler(n: usize) -> Self {
        let mut op = Self::zero(n);
        for i in 0..n {
            op = op.with_term(Monomial::var(n, i), Polynomial::var(n + 1, i));
        }
        op
    }

    /// Add `c · ∂^beta`.
    pub fn with_term(mut self, beta: Monomial, c: Polynomial) -> Self {
        self.add_term(beta, c);
        self
    }

    pub fn add_term(&mut self, beta: Monomial, c: Polynomial) {
        assert_eq!(beta.nvars(), self.n, "operator arity mismatch");
        assert_eq!(c.nvars(), self.n + 1, "coefficient arity mismatch");
        let sum = match self.terms.remove(&beta) {
            Some(old) => &old + &c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(beta, sum);
        }
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(β, c_β(x, s))` pairs.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Polynomial)> + '_ {
        self.terms.iter()
    }

    /// The coefficient of `x^α ∂^β`, as a polynomial in `s` alone.
    pub fn coefficient(&self, alpha: &Monomial, beta: &Monomial) -> Polynomial {
        let mut out = Polynomial::zero(1);
        if let Some(c) = self.terms.get(beta) {
            for (m, v) in c.terms() {
                if &m.exponents()[..self.n] == alpha.exponents() {
                    out.add_term(Monomial::new(vec![m.exponents()[self.n]]), v.clone());
                }
            }
        }
        out
    }

    /// Highest `|β|`, or `None` for the zero operator.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.n);
        if !c.is_zero() {
            for (b, p) in &self.terms {
                out.terms.insert(b.clone(), p.scale(c));
            }
        }
        out
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::Dimension(format!("operators on {} and {} variables", self.n, other.n)));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (b, c) in &other.terms {
            out.add_term(b.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.scale(&-Rational::one()))
    }

    /// Composition, re-normal-ordered with `∂^β c = Σ_δ C(β, δ) ∂^δ(c) ∂^{β−δ}`.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(self.n);
        for (beta, a) in &self.terms {
            for (gamma, b) in &other.terms {
                for delta in sub_multi_indices(beta.exponents()) {
                    let mut db = b.clone();
                    let mut weight = Rational::one();
                    for (i, &d) in delta.iter().enumerate() {
                        weight *= binom(beta.exponents()[i], d);
                        for _ in 0..d {
                            db = db.partial(i)?;
                        }
                    }
                    if db.is_zero() {
                        continue;
                    }
                    let rest: Vec<u32> =
                        (0..self.n).map(|i| beta.exponents()[i] - delta[i] + gamma.exponents()[i]).collect();
                    out.add_term(Monomial::new(rest), (a * &db).scale(&weight));
                }
            }
        }
        Ok(out)
    }

    /// The action on `Σ_j g_j Q^{−j} Q^s`.
    pub fn apply(&self, e: &TwistedElement) -> Result<TwistedElement> {
        if e.nvars() != self.n {
            return Err(Error::Dimension(format!("operator on {} variables applied in {}", self.n, e.nvars())));
        }
        let mut out = TwistedElement::zero(e.q().clone());
        for (beta, c) in &self.terms {
            let mut t = e.clone();
            for (i, &b) in beta.exponents().iter().enumerate() {
                for _ in 0..b {
                    t = t.differentiate(i);
                }
            }
            out = out.try_add(&t.mul_poly(c)?)?;
        }
        Ok(out)
    }

    /// The action on a polynomial in `x` (no twist).
    pub fn apply_to_polynomial(&self, f: &Polynomial) -> Result<Polynomial> {
        let mut out = Polynomial::zero(self.n + 1);
        for (beta, c) in &self.terms {
            let mut g = f.clone();
            for (i, &b) in beta.exponents().iter().enumerate() {
                for _ in 0..b {
                    g = g.partial(i)?;
                }
            }
            out = &out + &(c * &g.extend(1));
        }
        Ok(out)
    }

    /// Substitute `s = value` in every coefficient.
    pub fn substitute_s(&self, value: &Rational) -> Self {
        let mut out = Self::zero(self.n);
        for (b, c) in &self.terms {
            out.add_term(b.clone(), c.substitute(self.n, value));
        }
        out
    }
}

fn sub_multi_indices(beta: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for &b in beta {
        out = out.into_iter().flat_map(|v| (0..=b).map(move |d| [v.clone(), vec![d]].concat())).collect();
    }
    out
}

fn write_power(out: &mut String, name: &str, e: u32) {
    if e == 0 {
        return;
    }
    if !out.is_empty() {
        out.push('*');
    }
    out.push_str(name);
    if e > 1 {
        out.push_str(&format!("^{e}"));
    }
}

impl fmt::Display for WeylOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (beta, c) in self.terms.iter().rev() {
            for (m, v) in c.terms().rev() {
                let mut word = String::new();
                for i in 0..self.n {
                    write_power(&mut word, &var_name(self.n, i), m.exponents()[i]);
                }
                write_power(&mut word, "s", m.exponents()[self.n]);
                for i in 0..self.n {
                    write_power(&mut word, &format!("d{}", var_name(self.n, i)), beta.exponents()[i]);
                }
                write!(f, "{}{word}", fmt_coeff_prefix(v, first, word.is_empty()))?;
                first = false;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_polynomial, rat};

    #[test]
    fn commutator_is_one() {
        let (x, d) = (WeylOperator::x(2, 0), WeylOperator::partial(2, 0));
        let c = d.try_mul(&x).unwrap().try_sub(&x.try_mul(&d).unwrap()).unwrap();
        assert_eq!(c, WeylOperator::one(2));
        let y = WeylOperator::x(2, 1);
        assert!(d.try_mul(&y).unwrap().try_sub(&y.try_mul(&d).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn second_order_reordering() {
        // ∂² x² = x²∂² + 4x∂ + 2
        let x2 = WeylOperator::x_function(&parse_polynomial(1, "x^2").unwrap());
        let d2 = WeylOperator::partial(1, 0).try_mul(&WeylOperator::partial(1, 0)).unwrap();
        let p = d2.try_mul(&x2).unwrap();
        let x = Monomial::new(vec![1]);
        assert_eq!(p.coefficient(&Monomial::new(vec![2]), &Monomial::new(vec![2])), Polynomial::one(1));
        assert_eq!(p.coefficient(&x, &x), Polynomial::constant(1, rat(4)));
        assert_eq!(p.coefficient(&Monomial::one(1), &Monomial::one(1)), Polynomial::constant(1, rat(2)));
        assert_eq!(p.order(), Some(2));
    }

    #[test]
    fn display() {
        let e = WeylOperator::euler(2).try_sub(&WeylOperator::s(2).scale(&rat(3))).unwrap();
        assert_eq!(e.to_string(), "x*dx + y*dy - 3*s");
    }
}
