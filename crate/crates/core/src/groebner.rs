//! Buchberger's algorithm for commutative ideals, with membership, ideal
//! quotients and Hilbert-function queries built on it.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use crate::algebra::monomial::{grevlex, monomials_of_degree, Monomial};
use crate::algebra::{DegreeSlice, Polynomial, Rational};
use crate::error::{Error, Result};

/// Monomial orders used internally.
///
/// `Elimination { block }` compares the first `block` variables first (by
/// grevlex on that block) and breaks ties by grevlex on the rest; any
/// polynomial whose leading term is free of the block is free of it entirely.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TermOrder {
    Grevlex,
    Elimination { block: usize },
}

impl TermOrder {
    pub fn compare(self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            TermOrder::Grevlex => grevlex(a, b),
            TermOrder::Elimination { block } => {
                grevlex(&a[..block], &b[..block]).then_with(|| grevlex(&a[block..], &b[block..]))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Key {
    e: Vec<u32>,
    order: TermOrder,
}

impl Ord for Key {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order.compare(&self.e, &other.e)
    }
}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial whose term map is sorted by an arbitrary [`TermOrder`].
#[derive(Clone, Debug, PartialEq, Eq)]
struct OPoly {
    terms: BTreeMap<Key, Rational>,
}

impl OPoly {
    fn from_poly(p: &Polynomial, order: TermOrder) -> Self {
        OPoly { terms: p.terms().map(|(m, c)| (Key { e: m.exponents().to_vec(), order }, c.clone())).collect() }
    }

    fn to_poly(&self, n: usize) -> Polynomial {
        Polynomial::from_terms(n, self.terms.iter().map(|(k, c)| (Monomial::new(k.e.clone()), c.clone())))
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lead(&self) -> Option<(&Key, &Rational)> {
        self.terms.iter().next_back()
    }

    fn lm(&self) -> &[u32] {
        &self.terms.keys().next_back().expect("nonzero polynomial").e
    }

    fn monic(mut self) -> Self {
        if let Some((_, c)) = self.lead() {
            let inv = c.recip();
            for v in self.terms.values_mut() {
                *v *= &inv;
            }
        }
        self
    }

    /// `self -= c · x^shift · g`
    fn sub_scaled(&mut self, c: &Rational, shift: &[u32], g: &OPoly) {
        for (k, v) in &g.terms {
            let e: Vec<u32> = k.e.iter().zip(shift).map(|(a, b)| a + b).collect();
            let key = Key { e, order: k.order };
            let delta = c * v;
            match self.terms.get_mut(&key) {
                Some(x) => {
                    *x -= delta;
                    if x.is_zero() {
                        self.terms.remove(&key);
                    }
                }
                None => {
                    self.terms.insert(key, -delta);
                }
            }
        }
    }
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

/// Fully reduce `f` modulo the monic polynomials `basis`.
fn reduce(f: &OPoly, basis: &[OPoly]) -> OPoly {
    let mut p = f.clone();
    let mut rem = OPoly { terms: BTreeMap::new() };
    while let Some((k, c)) = p.lead() {
        let (k, c) = (k.clone(), c.clone());
        match basis.iter().find(|g| divides(g.lm(), &k.e)) {
            Some(g) => {
                let shift: Vec<u32> = k.e.iter().zip(g.lm()).map(|(a, b)| a - b).collect();
                p.sub_scaled(&c, &shift, g);
            }
            None => {
                p.terms.remove(&k);
                rem.terms.insert(k, c);
            }
        }
    }
    rem
}

fn s_poly(f: &OPoly, g: &OPoly) -> OPoly {
    let l = lcm(f.lm(), g.lm());
    let sf: Vec<u32> = l.iter().zip(f.lm()).map(|(a, b)| a - b).collect();
    let sg: Vec<u32> = l.iter().zip(g.lm()).map(|(a, b)| a - b).collect();
    let mut out = OPoly { terms: BTreeMap::new() };
    out.sub_scaled(&-Rational::one(), &sf, f);
    out.sub_scaled(&Rational::one(), &sg, g);
    out
}

/// Reduced Gröbner basis with respect to `order`, sorted by ascending leading monomial.
fn reduced_basis(gens: &[Polynomial], order: TermOrder) -> Result<Vec<OPoly>> {
    let input: Vec<OPoly> = gens.iter().filter(|g| !g.is_zero()).map(|g| OPoly::from_poly(g, order)).collect();
    if input.is_empty() {
        return Err(Error::ZeroIdeal);
    }

    let mut g: Vec<OPoly> = Vec::new();
    let mut pending: BTreeSet<(usize, usize)> = BTreeSet::new();
    let push = |g: &mut Vec<OPoly>, pending: &mut BTreeSet<(usize, usize)>, h: OPoly| {
        let idx = g.len();
        g.push(h.monic());
        for i in 0..idx {
            pending.insert((i, idx));
        }
    };
    let mut input = input;
    input.sort_by(|a, b| {
        let (ka, kb) = (a.lead().unwrap().0, b.lead().unwrap().0);
        ka.e.iter().sum::<u32>().cmp(&kb.e.iter().sum::<u32>()).then_with(|| ka.cmp(kb))
    });
    for f in input {
        let h = reduce(&f, &g);
        if !h.is_zero() {
            push(&mut g, &mut pending, h);
        }
    }

    // normal selection strategy: smallest lcm first, degree before order
    let pick = |g: &[OPoly], pending: &BTreeSet<(usize, usize)>| -> (usize, usize) {
        *pending
            .iter()
            .min_by(|&&(a, b), &&(c, d)| {
                let l1 = lcm(g[a].lm(), g[b].lm());
                let l2 = lcm(g[c].lm(), g[d].lm());
                let d1: u32 = l1.iter().sum();
                let d2: u32 = l2.iter().sum();
                d1.cmp(&d2).then_with(|| order.compare(&l1, &l2))
            })
            .expect("nonempty pair set")
    };

    while !pending.is_empty() {
        let (i, j) = pick(&g, &pending);
        pending.remove(&(i, j));
        let (li, lj) = (g[i].lm().to_vec(), g[j].lm().to_vec());
        // product criterion
        if li.iter().zip(&lj).all(|(a, b)| *a == 0 || *b == 0) {
            continue;
        }
        // chain criterion
        let l = lcm(&li, &lj);
        let key = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
        let chained = (0..g.len()).any(|k| {
            k != i && k != j && divides(g[k].lm(), &l) && !pending.contains(&key(i, k)) && !pending.contains(&key(j, k))
        });
        if chained {
            continue;
        }
        let h = reduce(&s_poly(&g[i], &g[j]), &g);
        if !h.is_zero() {
            push(&mut g, &mut pending, h);
        }
    }

    // minimalize then inter-reduce
    let mut keep: Vec<OPoly> = Vec::new();
    for (idx, p) in g.iter().enumerate() {
        let redundant =
            g.iter().enumerate().any(|(o, q)| o != idx && divides(q.lm(), p.lm()) && (q.lm() != p.lm() || o < idx));
        if !redundant {
            keep.push(p.clone());
        }
    }
    let mut out: Vec<OPoly> = Vec::with_capacity(keep.len());
    for i in 0..keep.len() {
        let others: Vec<OPoly> = keep.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, p)| p.clone()).collect();
        let (lk, lc) = keep[i].lead().map(|(k, c)| (k.clone(), c.clone())).unwrap();
        let mut tail = keep[i].clone();
        tail.terms.remove(&lk);
        let mut r = reduce(&tail, &others);
        r.terms.insert(lk, lc);
        out.push(r.monic());
    }
    out.sort_by(|a, b| a.lead().unwrap().0.cmp(b.lead().unwrap().0));
    Ok(out)
}

/// A reduced Gröbner basis in the global grevlex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    n: usize,
    generators: Vec<Polynomial>,
}

impl GroebnerBasis {
    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn is_unit(&self) -> bool {
        self.generators.len() == 1 && self.generators[0].is_constant()
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        normal_form(f, self).is_zero()
    }

    pub fn contains_all(&self, fs: &[Polynomial]) -> bool {
        fs.iter().all(|f| self.contains(f))
    }

    pub fn is_homogeneous(&self) -> bool {
        self.generators.iter().all(Polynomial::is_homogeneous)
    }

    fn oriented(&self) -> Vec<OPoly> {
        self.generators.iter().map(|g| OPoly::from_poly(g, TermOrder::Grevlex)).collect()
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens` (grevlex).
pub fn buchberger(gens: &[Polynomial]) -> Result<GroebnerBasis> {
    let n = common_arity(gens)?;
    let basis = reduced_basis(gens, TermOrder::Grevlex)?;
    Ok(GroebnerBasis { n, generators: basis.iter().map(|p| p.to_poly(n)).collect() })
}

fn common_arity(gens: &[Polynomial]) -> Result<usize> {
    let n = gens.first().ok_or(Error::ZeroIdeal)?.nvars();
    if gens.iter().any(|g| g.nvars() != n) {
        return Err(Error::Dimension("generators in different numbers of variables".into()));
    }
    Ok(n)
}

pub fn normal_form(f: &Polynomial, g: &GroebnerBasis) -> Polynomial {
    reduce(&OPoly::from_poly(f, TermOrder::Grevlex), &g.oriented()).to_poly(f.nvars())
}

/// Whether every monomial of degree `degree` lies in the ideal.
pub fn contains_m_power(g: &GroebnerBasis, degree: u32) -> bool {
    let basis = g.oriented();
    monomials_of_degree(g.n, degree).into_iter().all(|m| {
        let p = Polynomial::term(m, Rational::one());
        reduce(&OPoly::from_poly(&p, TermOrder::Grevlex), &basis).is_zero()
    })
}

/// Smallest `N ≤ cap` with `𝔪^N ⊆ I`, or `None` when no such `N` exists up to `cap`.
pub fn min_m_power(g: &GroebnerBasis, cap: u32) -> Option<u32> {
    (0..=cap).find(|&d| contains_m_power(g, d))
}

/// The ideal `𝔪^d`.
pub fn m_power(n: usize, d: u32) -> Vec<Polynomial> {
    monomials_of_degree(n, d).into_iter().map(|m| Polynomial::term(m, Rational::one())).collect()
}

/// Generators of `I ∩ J`, by eliminating `t` from `t·I + (1-t)·J`.
fn intersect_gens(i: &[Polynomial], j: &[Polynomial], n: usize) -> Result<Vec<Polynomial>> {
    let t = Polynomial::var(n + 1, 0);
    let one_minus_t = &Polynomial::one(n + 1) - &t;
    let lift = |p: &Polynomial| prepend_var(p);
    let mut gens: Vec<Polynomial> = i.iter().map(|p| &t * &lift(p)).collect();
    gens.extend(j.iter().map(|p| &one_minus_t * &lift(p)));
    let basis = reduced_basis(&gens, TermOrder::Elimination { block: 1 })?;
    Ok(basis
        .iter()
        .filter(|p| p.terms.keys().all(|k| k.e[0] == 0))
        .map(|p| drop_first_var(&p.to_poly(n + 1)))
        .collect())
}

fn prepend_var(p: &Polynomial) -> Polynomial {
    Polynomial::from_terms(
        p.nvars() + 1,
        p.terms().map(|(m, c)| {
            let mut e = vec![0];
            e.extend_from_slice(m.exponents());
            (Monomial::new(e), c.clone())
        }),
    )
}

fn drop_first_var(p: &Polynomial) -> Polynomial {
    Polynomial::from_terms(
        p.nvars() - 1,
        p.terms().map(|(m, c)| (Monomial::new(m.exponents()[1..].to_vec()), c.clone())),
    )
}

pub fn intersection(a: &GroebnerBasis, b: &GroebnerBasis) -> Result<GroebnerBasis> {
    if a.n != b.n {
        return Err(Error::Dimension("ideals in different rings".into()));
    }
    buchberger(&intersect_gens(&a.generators, &b.generators, a.n)?)
}

/// `(I : ⟨J⟩) = { g : g·J ⊆ I }`.
pub fn ideal_quotient(i: &GroebnerBasis, j: &[Polynomial]) -> Result<GroebnerBasis> {
    let j: Vec<&Polynomial> = j.iter().filter(|f| !f.is_zero()).collect();
    if j.is_empty() {
        return Err(Error::Precondition("ideal quotient by the zero ideal".into()));
    }
    if j.iter().any(|f| f.nvars() != i.n) {
        return Err(Error::Dimension("quotient ideal in a different ring".into()));
    }
    let mut acc: Option<GroebnerBasis> = None;
    for f in j {
        let q = if f.is_constant() {
            i.clone()
        } else {
            let meet = intersect_gens(&i.generators, std::slice::from_ref(f), i.n)?;
            let quot: Vec<Polynomial> = meet
                .iter()
                .map(|h| h.div_exact(f).ok_or_else(|| Error::Falsified("I ∩ ⟨f⟩ not divisible by f".into())))
                .collect::<Result<_>>()?;
            buchberger(&quot)?
        };
        acc = Some(match acc {
            None => q,
            Some(prev) => intersection(&prev, &q)?,
        });
    }
    Ok(acc.expect("at least one nonzero generator"))
}

/// `dim (R_n / I)_d` from the rank of the degree-`d` slice of `I`.
pub fn hilbert_dim(g: &GroebnerBasis, d: u32) -> usize {
    let slice = DegreeSlice::of_ideal(g.n, d, &g.generators);
    slice.dim() - slice.rank()
}

/// `dim (R_n / I)_d` as the number of degree-`d` monomials outside the
/// leading-term ideal. Agrees with [`hilbert_dim`] for homogeneous ideals.
pub fn standard_monomial_count(g: &GroebnerBasis, d: u32) -> usize {
    let leads: Vec<Monomial> = g.generators.iter().filter_map(|p| p.leading_term().map(|(m, _)| m.clone())).collect();
    monomials_of_degree(g.n, d).into_iter().filter(|m| !leads.iter().any(|l| l.divides(m))).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_polynomial;

    fn p(n: usize, s: &str) -> Polynomial {
        parse_polynomial(n, s).unwrap()
    }

    fn ideal(n: usize, gens: &[&str]) -> GroebnerBasis {
        buchberger(&gens.iter().map(|s| p(n, s)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn basics() {
        let g = ideal(2, &["x", "y"]);
        assert_eq!(g.generators(), &[p(2, "y"), p(2, "x")]);
        assert_eq!(normal_form(&p(2, "1"), &g), p(2, "1"));
        assert!(matches!(buchberger(&[Polynomial::zero(2)]), Err(Error::ZeroIdeal)));
    }

    #[test]
    fn non_homogeneous_example() {
        let g = ideal(2, &["x^2 - y", "x^3"]);
        for f in ["x^3", "x^2 - y", "x*y^2", "y^3", "x*y", "y^2"] {
            assert!(g.contains(&p(2, f)), "{f}");
        }
        assert!(!g.contains(&p(2, "y")));
        assert_eq!(normal_form(&p(2, "x^3"), &ideal(2, &["x^2 - y"])), p(2, "x*y"));
    }

    #[test]
    fn m_powers() {
        let g = ideal(2, &["x^2", "y^2"]);
        assert!(!contains_m_power(&g, 2));
        assert!(contains_m_power(&g, 3));
        let jac = ideal(2, &["2*x*y + y^2", "x^2 + 2*x*y"]);
        assert!(contains_m_power(&jac, 3));
        assert_eq!(min_m_power(&jac, 10), Some(3));
        assert_eq!(min_m_power(&ideal(2, &["x", "y"]), 5), Some(1));
        assert_eq!(min_m_power(&ideal(2, &["x^2*y + x*y^2"]), 4), None);
    }

    #[test]
    fn quotients() {
        let q = ideal_quotient(&ideal(2, &["x^2", "x*y"]), &[p(2, "x")]).unwrap();
        assert_eq!(q, ideal(2, &["x", "y"]));
        let i = ideal(2, &["x^3", "y^2 + x*y"]);
        assert_eq!(ideal_quotient(&i, &[p(2, "1")]).unwrap(), i);
        assert_eq!(ideal_quotient(&ideal(2, &["x*y"]), &[p(2, "x")]).unwrap(), ideal(2, &["y"]));
    }

    #[test]
    fn hilbert_functions() {
        let jac3 = ideal(2, &["2*x*y + y^2", "x^2 + 2*x*y"]);
        let dims: Vec<usize> = (0..4).map(|d| hilbert_dim(&jac3, d)).collect();
        assert_eq!(dims, [1, 2, 1, 0]);
        let q4 = &(&(&p(2, "x") * &p(2, "y")) * &p(2, "x+y")) * &p(2, "x+2*y");
        let jac4 = buchberger(&[q4.partial(0).unwrap(), q4.partial(1).unwrap()]).unwrap();
        let dims: Vec<usize> = (0..6).map(|d| hilbert_dim(&jac4, d)).collect();
        assert_eq!(dims, [1, 2, 3, 2, 1, 0]);
        for d in 0..6 {
            assert_eq!(standard_monomial_count(&jac4, d), hilbert_dim(&jac4, d));
        }
    }
}
