use std::cmp::Ordering;
use std::fmt;

/// Exponent vector `x^α` of a monomial in a fixed number of variables.
///
/// `Ord` is graded reverse lexicographic with `x_1 > x_2 > … > x_n`; it is
/// the single global order used for every polynomial in the crate.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    /// The variable `x_i` (0-based).
    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.0.len(), other.0.len());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect()))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Append `extra` zero exponents (used to adjoin new variables such as `s`).
    pub fn extend(&self, extra: usize) -> Monomial {
        let mut e = self.0.clone();
        e.extend(std::iter::repeat_n(0, extra));
        Monomial(e)
    }

    pub(crate) fn exponents_mut(&mut self) -> &mut Vec<u32> {
        &mut self.0
    }
}

/// Graded reverse lexicographic comparison.
pub fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    for (x, y) in a.iter().zip(b).rev() {
        if x != y {
            // smaller exponent in the last differing variable wins
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        grevlex(&self.0, &other.0)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{}", var_name(self.0.len(), i))?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// Conventional variable names: `x, y, z, w` for up to four variables,
/// `x1, x2, …` beyond that.
pub fn var_name(n: usize, i: usize) -> String {
    const SHORT: [&str; 4] = ["x", "y", "z", "w"];
    if n <= 4 {
        SHORT[i].to_string()
    } else {
        format!("x{}", i + 1)
    }
}

/// All monomials of degree `d` in `n` variables, in descending grevlex order.
///
/// There are `C(d+n-1, n-1)` of them.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Monomial(Vec::new()));
        }
        return out;
    }
    let mut cur = vec![0u32; n];
    fill(&mut cur, 0, d, &mut out);
    out.sort_by(|a, b| b.cmp(a));
    out
}

fn fill(cur: &mut Vec<u32>, i: usize, rem: u32, out: &mut Vec<Monomial>) {
    if i + 1 == cur.len() {
        cur[i] = rem;
        out.push(Monomial(cur.clone()));
        return;
    }
    for e in (0..=rem).rev() {
        cur[i] = e;
        fill(cur, i + 1, rem - e, out);
    }
    cur[i] = 0;
}

/// All monomials of degree at most `d`, grouped by ascending degree.
pub fn monomials_up_to_degree(n: usize, d: u32) -> Vec<Monomial> {
    (0..=d).flat_map(|e| monomials_of_degree(n, e)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grevlex_basics() {
        // x^2 > xy > y^2 > x > y > 1 in two variables
        let ms: Vec<Monomial> =
            [[2, 0], [1, 1], [0, 2], [1, 0], [0, 1], [0, 0]].iter().map(|e| Monomial::new(e.to_vec())).collect();
        for w in ms.windows(2) {
            assert!(w[0] > w[1], "{} > {}", w[0], w[1]);
        }
        // grevlex, not lex: x*z^... compare x y^2 ... classic example x^2 z vs x y^2
        let a = Monomial::new(vec![1, 2, 0]);
        let b = Monomial::new(vec![2, 0, 1]);
        assert!(a > b);
    }

    #[test]
    fn counts() {
        assert_eq!(monomials_of_degree(2, 2).len(), 3);
        assert_eq!(monomials_of_degree(3, 0), vec![Monomial::one(3)]);
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
        let names: Vec<String> = monomials_of_degree(2, 2).iter().map(|m| m.to_string()).collect();
        assert_eq!(names, ["x^2", "x*y", "y^2"]);
    }

    #[test]
    fn count_matches_binomial() {
        fn binom(n: u64, k: u64) -> u64 {
            (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
        }
        for n in 1..5usize {
            for d in 0..7u32 {
                let expect = binom(d as u64 + n as u64 - 1, n as u64 - 1);
                assert_eq!(monomials_of_degree(n, d).len() as u64, expect);
            }
        }
    }
}
