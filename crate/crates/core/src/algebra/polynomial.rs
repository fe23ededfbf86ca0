use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::monomial::{var_name, Monomial};
use super::rational::{fmt_coeff_prefix, rat, Rational};
use crate::error::{Error, Result};

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Terms are kept in a `BTreeMap` keyed by [`Monomial`], so iteration is in
/// ascending grevlex order and the leading term is the last entry. No stored
/// coefficient is ever zero.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Polynomial {
    n: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(n: usize) -> Self {
        Polynomial { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, Rational::one())
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        Self::term(Monomial::one(n), c)
    }

    /// The variable `x_i`, 0-based.
    pub fn var(n: usize, i: usize) -> Self {
        Self::term(Monomial::var(n, i), Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let n = m.nvars();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { n, terms }
    }

    /// The linear form `Σ c_i x_i`.
    pub fn linear(coeffs: &[Rational]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(Monomial::var(n, i), c.clone());
        }
        p
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Self::zero(n);
        for (m, c) in terms {
            assert_eq!(m.nvars(), n, "monomial arity");
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending grevlex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(Monomial::degree);
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    /// Sum of the degree-`d` terms.
    pub fn homogeneous_component(&self, d: u32) -> Polynomial {
        Polynomial {
            n: self.n,
            terms: self.terms.iter().filter(|(m, _)| m.degree() == d).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    fn check_same(&self, other: &Polynomial) -> Result<()> {
        if self.n != other.n {
            return Err(Error::Dimension(format!("polynomials in {} and {} variables", self.n, other.n)));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same(other)?;
        let mut out = Polynomial::zero(self.n);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.n);
        }
        Polynomial { n: self.n, terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial { n: self.n, terms: self.terms.iter().map(|(t, a)| (t.mul(m), a.clone())).collect() }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut out = Polynomial::one(self.n);
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Formal partial derivative with respect to `x_i` (0-based).
    pub fn partial(&self, i: usize) -> Result<Polynomial> {
        if i >= self.n {
            return Err(Error::IndexOutOfRange { index: i, bound: self.n });
        }
        let mut out = Polynomial::zero(self.n);
        for (m, c) in &self.terms {
            let e = m.exponents()[i];
            if e == 0 {
                continue;
            }
            let mut d = m.clone();
            d.exponents_mut()[i] -= 1;
            out.add_term(d, c * rat(e as i64));
        }
        Ok(out)
    }

    /// Apply the constant-coefficient derivation `Σ v_i ∂_i`.
    pub fn directional_derivative(&self, v: &[Rational]) -> Polynomial {
        let mut out = Polynomial::zero(self.n);
        for (i, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let d = self.partial(i).expect("index within arity");
            out = &out + &d.scale(c);
        }
        out
    }

    /// Divide every coefficient by the leading coefficient.
    pub fn monic(&self) -> Polynomial {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
        }
    }

    /// Adjoin `extra` new variables after the existing ones.
    pub fn extend(&self, extra: usize) -> Polynomial {
        Polynomial { n: self.n + extra, terms: self.terms.iter().map(|(m, c)| (m.extend(extra), c.clone())).collect() }
    }

    /// Drop the trailing variables beyond `n`; fails if any of them occurs.
    pub fn restrict(&self, n: usize) -> Option<Polynomial> {
        let mut out = Polynomial::zero(n);
        for (m, c) in &self.terms {
            if m.exponents()[n..].iter().any(|&e| e != 0) {
                return None;
            }
            out.add_term(Monomial::new(m.exponents()[..n].to_vec()), c.clone());
        }
        Some(out)
    }

    /// Replace `x_i` by the constant `value`.
    pub fn substitute(&self, i: usize, value: &Rational) -> Polynomial {
        let mut out = Polynomial::zero(self.n);
        for (m, c) in &self.terms {
            let e = m.exponents()[i];
            let mut mm = m.clone();
            mm.exponents_mut()[i] = 0;
            let mut v = Rational::one();
            for _ in 0..e {
                v *= value;
            }
            out.add_term(mm, c * v);
        }
        out
    }

    /// Substitute `x_i -> images[i]` for every variable.
    pub fn compose(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.n {
            return Err(Error::Dimension(format!("{} images for {} variables", images.len(), self.n)));
        }
        let target = images.first().map(Polynomial::nvars).unwrap_or(0);
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for (img, &e) in images.iter().zip(m.exponents()) {
                if e > 0 {
                    t = t.try_mul(&img.pow(e))?;
                }
            }
            out = out.try_add(&t)?;
        }
        Ok(out)
    }

    /// Linear change of coordinates `x_i -> Σ_j rows[i][j] x_j`.
    pub fn linear_substitution(&self, rows: &[Vec<Rational>]) -> Result<Polynomial> {
        let images: Vec<Polynomial> = rows.iter().map(|r| Polynomial::linear(r)).collect();
        self.compose(&images)
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        let (lm, lc) = divisor.leading_term()?;
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut rem = self.clone();
        let mut quot = Polynomial::zero(self.n);
        while let Some((m, c)) = rem.leading_term() {
            let q = lm.quotient_of(m)?;
            let coef = c / &lc;
            rem = &rem - &divisor.mul_monomial(&q).scale(&coef);
            quot.add_term(q, coef);
        }
        Some(quot)
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, Rational> {
        self.terms
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("polynomial arity mismatch")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("polynomial arity mismatch")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("polynomial arity mismatch")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let is_const = m.degree() == 0;
            write!(f, "{}", fmt_coeff_prefix(c, i == 0, is_const))?;
            if !is_const {
                write!(f, "{m}")?;
            }
        }
        Ok(())
    }
}

/// Parse a polynomial written with `x, y, z, w` (or `x1, x2, …`), `+ - *`,
/// `^` and rational coefficients, e.g. `"x^2*y + 1/2*x*y^2 - 3"`.
///
/// Only sums of products are accepted; no parentheses.
pub fn parse_polynomial(n: usize, src: &str) -> Result<Polynomial> {
    let names: Vec<String> = (0..n).map(|i| var_name(n, i)).collect();
    let cleaned: String = src.chars().filter(|c| !c.is_whitespace()).collect();
    if cleaned.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut out = Polynomial::zero(n);
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut neg = false;
    for (i, ch) in cleaned.chars().enumerate() {
        if (ch == '+' || ch == '-') && i > 0 && !cur.ends_with('^') {
            terms.push((neg, std::mem::take(&mut cur)));
            neg = ch == '-';
        } else if (ch == '+' || ch == '-') && i == 0 {
            neg = ch == '-';
        } else {
            cur.push(ch);
        }
    }
    terms.push((neg, cur));
    for (neg, t) in terms {
        if t.is_empty() {
            return Err(Error::Parse(format!("dangling sign in {src:?}")));
        }
        let mut coeff = Rational::one();
        let mut exps = vec![0u32; n];
        for factor in t.split('*') {
            let (base, exp) = match factor.split_once('^') {
                Some((b, e)) => (b, e.parse::<u32>().map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?),
                None => (factor, 1),
            };
            if let Some(i) = names.iter().position(|v| v == base) {
                exps[i] += exp;
            } else {
                let c = super::rational::parse_rational(base)?;
                for _ in 0..exp {
                    coeff *= &c;
                }
            }
        }
        if neg {
            coeff = -coeff;
        }
        out.add_term(Monomial::new(exps), coeff);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::ratio;

    fn p(n: usize, s: &str) -> Polynomial {
        parse_polynomial(n, s).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&p(2, "x+y") * &p(2, "x-y"), p(2, "x^2-y^2"));
        assert!((&p(2, "x") * &Polynomial::zero(2)).is_zero());
        assert_eq!(&p(2, "x+2*y") * &p(2, "x+3*y"), p(2, "x^2+5*x*y+6*y^2"));
        assert!(p(2, "x").try_add(&p(3, "x")).is_err());
    }

    #[test]
    fn partial_examples() {
        assert_eq!(p(2, "x^2*y").partial(0).unwrap(), p(2, "2*x*y"));
        assert!(p(2, "x^2").partial(1).unwrap().is_zero());
        let q = &(&p(2, "x") * &p(2, "y")) * &p(2, "x+y");
        assert_eq!(q.partial(0).unwrap(), p(2, "2*x*y+y^2"));
        assert!(q.partial(2).is_err());
    }

    #[test]
    fn components() {
        let f = p(1, "x^2+x");
        assert_eq!(f.homogeneous_component(1), p(1, "x"));
        assert!(f.homogeneous_component(3).is_zero());
        assert_eq!(p(1, "x+1").pow(2).homogeneous_component(2), p(1, "x^2"));
    }

    #[test]
    fn division() {
        let f = p(2, "x^3 - x*y^2");
        assert_eq!(f.div_exact(&p(2, "x+y")).unwrap(), p(2, "x^2 - x*y"));
        assert!(f.div_exact(&p(2, "x+2*y")).is_none());
    }

    #[test]
    fn display_and_parse() {
        let f = p(2, "1/2*x^2 - y + 3");
        assert_eq!(f.to_string(), "1/2*x^2 - y + 3");
        assert_eq!(f.coeff(&Monomial::new(vec![2, 0])), ratio(1, 2));
        assert_eq!(p(2, "-x").to_string(), "-x");
    }
}
