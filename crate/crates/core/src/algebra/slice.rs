use std::collections::HashMap;

use num_traits::Zero;

use super::linalg::{rank, SparseEchelon, SparseRow};
use super::monomial::{monomials_of_degree, Monomial};
use super::polynomial::Polynomial;
use super::rational::Rational;

/// The degree-`d` piece of a family of polynomials, written in the monomial
/// basis of `(R_n)_d`.
#[derive(Clone, Debug)]
pub struct DegreeSlice {
    pub degree: u32,
    pub basis: Vec<Monomial>,
    pub matrix: Vec<Vec<Rational>>,
}

impl DegreeSlice {
    /// Coordinates of the degree-`d` components of `polys`.
    pub fn new(n: usize, d: u32, polys: &[Polynomial]) -> Self {
        let basis = monomials_of_degree(n, d);
        let index = basis_index(&basis);
        let matrix = polys
            .iter()
            .map(|p| {
                let mut row = vec![Rational::zero(); basis.len()];
                for (m, c) in p.terms().filter(|(m, _)| m.degree() == d) {
                    row[index[m]] = c.clone();
                }
                row
            })
            .collect();
        DegreeSlice { degree: d, basis, matrix }
    }

    /// Degree-`d` slice of the ideal generated by homogeneous `gens`:
    /// every `m·g` with `deg m + deg g = d`.
    pub fn of_ideal(n: usize, d: u32, gens: &[Polynomial]) -> Self {
        let mut products = Vec::new();
        for g in gens.iter().filter(|g| !g.is_zero()) {
            let Some(dg) = g.total_degree() else { continue };
            if dg > d {
                continue;
            }
            for m in monomials_of_degree(n, d - dg) {
                products.push(g.mul_monomial(&m));
            }
        }
        Self::new(n, d, &products)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn rank(&self) -> usize {
        if self.matrix.is_empty() {
            return 0;
        }
        rank(&self.matrix).expect("slice rows share the basis length")
    }

    pub fn echelon(&self) -> SparseEchelon {
        let mut e = SparseEchelon::new();
        for row in &self.matrix {
            e.insert(&to_sparse(row));
        }
        e
    }

    /// Whether the degree-`d` part of `f` lies in the row span.
    pub fn contains(&self, f: &Polynomial) -> bool {
        let probe = DegreeSlice::new(
            self.basis.first().map(Monomial::nvars).unwrap_or(0),
            self.degree,
            std::slice::from_ref(f),
        );
        self.echelon().contains(&to_sparse(&probe.matrix[0]))
    }
}

pub(crate) fn basis_index(basis: &[Monomial]) -> HashMap<Monomial, usize> {
    basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect()
}

pub(crate) fn to_sparse(row: &[Rational]) -> SparseRow {
    row.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::polynomial::parse_polynomial;

    #[test]
    fn jacobian_of_three_lines() {
        let q = parse_polynomial(2, "x^2*y + x*y^2").unwrap();
        let gens = [q.partial(0).unwrap(), q.partial(1).unwrap()];
        let dims: Vec<usize> = (0..4)
            .map(|d| {
                let s = DegreeSlice::of_ideal(2, d, &gens);
                s.dim() - s.rank()
            })
            .collect();
        assert_eq!(dims, [1, 2, 1, 0]);
    }

    #[test]
    fn membership() {
        let gens = [parse_polynomial(2, "x^2").unwrap(), parse_polynomial(2, "y^2").unwrap()];
        let s = DegreeSlice::of_ideal(2, 3, &gens);
        assert!(s.contains(&parse_polynomial(2, "x^2*y + y^3").unwrap()));
        let s2 = DegreeSlice::of_ideal(2, 2, &gens);
        assert!(!s2.contains(&parse_polynomial(2, "x*y").unwrap()));
    }
}
