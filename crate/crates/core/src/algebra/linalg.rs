//! Exact linear algebra over the rationals.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::rational::Rational;
use crate::error::{Error, Result};

/// Output of [`rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    /// The nonzero rows of the reduced echelon form, top to bottom.
    pub rows: Vec<Vec<Rational>>,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

fn check_rect(rows: &[Vec<Rational>]) -> Result<usize> {
    let width = rows.first().map(Vec::len).unwrap_or(0);
    if let Some(bad) = rows.iter().position(|r| r.len() != width) {
        return Err(Error::Dimension(format!("row {bad} has length {} but row 0 has {width}", rows[bad].len())));
    }
    Ok(width)
}

/// Reduced row echelon form.
pub fn rref(rows: &[Vec<Rational>]) -> Result<Rref> {
    let width = check_rect(rows)?;
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..width {
        let Some(p) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][col].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    Ok(Rref { rows: m, rank: r, pivots })
}

pub fn rank(rows: &[Vec<Rational>]) -> Result<usize> {
    Ok(rref(rows)?.rank)
}

/// Basis of `{x : A x = 0}` for the matrix given by `rows` with `width` columns.
pub fn kernel(rows: &[Vec<Rational>], width: usize) -> Result<Vec<Vec<Rational>>> {
    if let Some(r) = rows.first() {
        if r.len() != width {
            return Err(Error::Dimension(format!("rows of length {} but width {width}", r.len())));
        }
    }
    let red = rref(rows)?;
    let mut basis = Vec::new();
    for free in (0..width).filter(|c| !red.pivots.contains(c)) {
        let mut v = vec![Rational::zero(); width];
        v[free] = Rational::one();
        for (row, &p) in red.rows.iter().zip(&red.pivots) {
            v[p] = -row[free].clone();
        }
        basis.push(v);
    }
    Ok(basis)
}

/// A particular solution of `A x = b`, if one exists.
pub fn solve(rows: &[Vec<Rational>], b: &[Rational]) -> Result<Option<Vec<Rational>>> {
    if rows.len() != b.len() {
        return Err(Error::Dimension(format!("{} rows but rhs of length {}", rows.len(), b.len())));
    }
    let width = check_rect(rows)?;
    let aug: Vec<Vec<Rational>> = rows
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut r = r.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let red = rref(&aug)?;
    if red.pivots.last() == Some(&width) {
        return Ok(None);
    }
    let mut x = vec![Rational::zero(); width];
    for (row, &p) in red.rows.iter().zip(&red.pivots) {
        x[p] = row[width].clone();
    }
    Ok(Some(x))
}

pub fn determinant(m: &[Vec<Rational>]) -> Result<Rational> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::Dimension("determinant of a non-square matrix".into()));
    }
    let mut a = m.to_vec();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&i| !a[i][col].is_zero()) else {
            return Ok(Rational::zero());
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        det *= &a[col][col];
        let inv = a[col][col].recip();
        for i in col + 1..n {
            if a[i][col].is_zero() {
                continue;
            }
            let f = &a[i][col] * &inv;
            let (top, bottom) = a.split_at_mut(i);
            for (x, p) in bottom[0][col..].iter_mut().zip(&top[col][col..]) {
                *x -= &f * p;
            }
        }
    }
    Ok(det)
}

pub fn inverse(m: &[Vec<Rational>]) -> Result<Option<Vec<Vec<Rational>>>> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::Dimension("inverse of a non-square matrix".into()));
    }
    let aug: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut r = r.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    let red = rref(&aug)?;
    if red.rank < n || red.pivots[n - 1] != n - 1 {
        return Ok(None);
    }
    Ok(Some(red.rows.iter().map(|r| r[n..].to_vec()).collect()))
}

pub type SparseRow = BTreeMap<usize, Rational>;

/// Incrementally grown echelon basis of sparse rows.
///
/// Each stored row is normalized so its pivot (smallest column index) has
/// coefficient one and no other stored row has a nonzero entry in that column.
#[derive(Clone, Debug, Default)]
pub struct SparseEchelon {
    rows: BTreeMap<usize, SparseRow>,
}

impl SparseEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `row` against the basis; the result is zero iff `row` is in the span.
    pub fn reduce(&self, row: &SparseRow) -> SparseRow {
        let mut row: SparseRow = row.iter().filter(|(_, c)| !c.is_zero()).map(|(k, v)| (*k, v.clone())).collect();
        let cols: Vec<usize> = row.keys().copied().collect();
        // pivots only ever appear once: reducing by a pivot row never
        // reintroduces another pivot column (rows are fully reduced)
        for col in cols {
            let Some(c) = row.get(&col).cloned() else { continue };
            if let Some(b) = self.rows.get(&col) {
                for (k, v) in b {
                    let e = row.entry(*k).or_insert_with(Rational::zero);
                    *e -= &c * v;
                    if e.is_zero() {
                        row.remove(k);
                    }
                }
            }
        }
        row
    }

    pub fn contains(&self, row: &SparseRow) -> bool {
        self.reduce(row).is_empty()
    }

    /// Insert a row; returns `true` if it increased the rank.
    pub fn insert(&mut self, row: &SparseRow) -> bool {
        let r = self.reduce(row);
        let Some((&piv, c)) = r.iter().next() else {
            return false;
        };
        let inv = c.recip();
        let r: SparseRow = r.into_iter().map(|(k, v)| (k, v * &inv)).collect();
        for other in self.rows.values_mut() {
            if let Some(f) = other.get(&piv).cloned() {
                for (k, v) in &r {
                    let e = other.entry(*k).or_insert_with(Rational::zero);
                    *e -= &f * v;
                    if e.is_zero() {
                        other.remove(k);
                    }
                }
            }
        }
        self.rows.insert(piv, r);
        true
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Stored rows whose pivot column lies in `start..end`.
    pub fn rows_with_pivot_in(&self, start: usize, end: usize) -> impl Iterator<Item = &SparseRow> + '_ {
        self.rows.range(start..end).map(|(_, r)| r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&m(&[&[1, 2], &[2, 4]])).unwrap(), 1);
        assert_eq!(rank(&m(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])).unwrap(), 3);
        assert_eq!(rank(&m(&[&[1, 1, 0], &[0, 1, 1], &[1, 0, -1]])).unwrap(), 2);
        assert!(rref(&m(&[&[1, 2], &[1]])).is_err());
    }

    #[test]
    fn kernel_and_solve() {
        let a = m(&[&[1, 1, 0], &[0, 1, 1]]);
        let k = kernel(&a, 3).unwrap();
        assert_eq!(k.len(), 1);
        for row in &a {
            let dot: Rational = row.iter().zip(&k[0]).map(|(x, y)| x * y).sum();
            assert!(dot.is_zero());
        }
        let x = solve(&a, &[rat(2), rat(3)]).unwrap().unwrap();
        assert_eq!(&x[0] + &x[1], rat(2));
        assert!(solve(&m(&[&[1, 1], &[1, 1]]), &[rat(1), rat(2)]).unwrap().is_none());
    }

    #[test]
    fn det_and_inverse() {
        let a = m(&[&[1, 0], &[1, 1]]);
        assert_eq!(determinant(&a).unwrap(), rat(1));
        assert_eq!(inverse(&a).unwrap().unwrap(), m(&[&[1, 0], &[-1, 1]]));
        assert!(inverse(&m(&[&[1, 2], &[2, 4]])).unwrap().is_none());
        assert_eq!(determinant(&m(&[&[0, 1], &[1, 0]])).unwrap(), rat(-1));
    }

    #[test]
    fn sparse_echelon_matches_dense_rank() {
        let a = m(&[&[1, 1, 0, 2], &[0, 1, 1, 0], &[1, 0, -1, 2], &[3, 1, 0, 0]]);
        let mut e = SparseEchelon::new();
        for r in &a {
            let s: SparseRow =
                r.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(i, v)| (i, v.clone())).collect();
            e.insert(&s);
        }
        assert_eq!(e.rank(), rank(&a).unwrap());
    }
}
