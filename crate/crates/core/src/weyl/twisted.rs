use std::collections::BTreeMap;

use crate::algebra::{Polynomial, Rational};
use crate::error::{Error, Result};

/// `Σ_j g_j(x, s) Q^{−j} Q^s`, an element of `R_n[Q^{−1}, s] Q^s`.
///
/// Numerators live in `n + 1` variables (the last is `s`) and are not
/// reduced against `Q`; equality compares at a common pole order.
#[derive(Clone, Debug)]
pub struct TwistedElement {
    q: Polynomial,
    q_ext: Polynomial,
    parts: BTreeMap<u32, Polynomial>,
}

impl TwistedElement {
    pub fn zero(q: Polynomial) -> Self {
        assert!(!q.is_zero(), "the twisting polynomial must be nonzero");
        let q_ext = q.extend(1);
        Self { q, q_ext, parts: BTreeMap::new() }
    }

    /// `Q^s` itself.
    pub fn q_power_s(q: Polynomial) -> Self {
        let n = q.nvars();
        Self::zero(q).with_part(0, Polynomial::one(n + 1))
    }

    /// `g · Q^{−j} Q^s` with `g` in `x` alone.
    pub fn monomial_part(q: Polynomial, j: u32, g: &Polynomial) -> Self {
        Self::zero(q).with_part(j, g.extend(1))
    }

    pub fn with_part(mut self, j: u32, g: Polynomial) -> Self {
        self.add_part(j, g);
        self
    }

    fn add_part(&mut self, j: u32, g: Polynomial) {
        assert_eq!(g.nvars(), self.q.nvars() + 1, "numerator arity mismatch");
        let sum = match self.parts.remove(&j) {
            Some(old) => &old + &g,
            None => g,
        };
        if !sum.is_zero() {
            self.parts.insert(j, sum);
        }
    }

    pub fn q(&self) -> &Polynomial {
        &self.q
    }

    pub fn nvars(&self) -> usize {
        self.q.nvars()
    }

    pub fn parts(&self) -> &BTreeMap<u32, Polynomial> {
        &self.parts
    }

    pub fn pole_order(&self) -> u32 {
        self.parts.keys().next_back().copied().unwrap_or(0)
    }

    /// `Σ_j g_j Q^{order − j}`; `order` must be at least the pole order.
    pub fn numerator_at(&self, order: u32) -> Polynomial {
        let mut out = Polynomial::zero(self.q.nvars() + 1);
        for (&j, g) in &self.parts {
            assert!(j <= order, "pole order exceeds the common denominator");
            out = &out + &(g * &self.q_ext.pow(order - j));
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.numerator_at(self.pole_order()).is_zero()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.q != other.q {
            return Err(Error::Precondition("twisted elements over different Q".into()));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (&j, g) in &other.parts {
            out.add_part(j, g.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.scale(&-Rational::from_integer(1.into())))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.q.clone());
        for (&j, g) in &self.parts {
            out.add_part(j, g.scale(c));
        }
        out
    }

    /// Multiply every numerator by `c(x, s)`.
    pub fn mul_poly(&self, c: &Polynomial) -> Result<Self> {
        if c.nvars() != self.q.nvars() + 1 {
            return Err(Error::Dimension("multiplier must be a polynomial in (x, s)".into()));
        }
        let mut out = Self::zero(self.q.clone());
        for (&j, g) in &self.parts {
            out.add_part(j, g * c);
        }
        Ok(out)
    }

    /// `∂_i • (g Q^{−j} Q^s) = (∂_i g) Q^{−j} Q^s + (s − j) g (∂_i Q) Q^{−j−1} Q^s`.
    pub fn differentiate(&self, i: usize) -> Self {
        let n = self.q.nvars();
        let dq = self.q_ext.partial(i).expect("index in range");
        let s = Polynomial::var(n + 1, n);
        let mut out = Self::zero(self.q.clone());
        for (&j, g) in &self.parts {
            out.add_part(j, g.partial(i).expect("index in range"));
            let factor = &s - &Polynomial::constant(n + 1, Rational::from_integer(j.into()));
            out.add_part(j + 1, &(g * &dq) * &factor);
        }
        out
    }

    /// Substitute `s = value` in every numerator (the twist stays symbolic).
    pub fn substitute_s(&self, value: &Rational) -> Self {
        let n = self.q.nvars();
        let mut out = Self::zero(self.q.clone());
        for (&j, g) in &self.parts {
            out.add_part(j, g.substitute(n, value));
        }
        out
    }

    /// Cancel factors of `Q` so that the pole order is as small as possible.
    pub fn reduced(&self) -> Self {
        let mut order = self.pole_order();
        let mut num = self.numerator_at(order);
        while order > 0 {
            match num.div_exact(&self.q_ext) {
                Some(next) => {
                    num = next;
                    order -= 1;
                }
                None => break,
            }
        }
        Self::zero(self.q.clone()).with_part(order, num)
    }
}

impl PartialEq for TwistedElement {
    fn eq(&self, other: &Self) -> bool {
        if self.q != other.q {
            return false;
        }
        let order = self.pole_order().max(other.pole_order());
        self.numerator_at(order) == other.numerator_at(order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_polynomial, rat};

    fn p(n: usize, s: &str) -> Polynomial {
        parse_polynomial(n, s).unwrap()
    }

    #[test]
    fn chain_rule() {
        let q = p(2, "x*y");
        let e = TwistedElement::q_power_s(q.clone()).differentiate(0);
        let expected = TwistedElement::zero(q).with_part(1, p(3, "y*z"));
        assert_eq!(e, expected);
    }

    #[test]
    fn equality_across_pole_orders() {
        let q = p(2, "x*y");
        let a = TwistedElement::monomial_part(q.clone(), 0, &p(2, "x"));
        let b = TwistedElement::monomial_part(q.clone(), 1, &p(2, "x^2*y"));
        assert_eq!(a, b);
        assert_eq!(b.reduced().pole_order(), 0);
        assert_ne!(a, TwistedElement::monomial_part(q, 1, &p(2, "x")));
    }

    #[test]
    fn specialization() {
        let q = p(1, "x");
        let e = TwistedElement::q_power_s(q.clone()).differentiate(0).substitute_s(&rat(-1));
        assert_eq!(e, TwistedElement::monomial_part(q, 1, &p(1, "-1")));
    }
}
