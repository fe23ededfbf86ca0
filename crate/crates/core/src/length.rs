//! Holonomic length of `R_n[Q^{-1}]` by inclusion–exclusion over sub-arrangements.

use std::collections::HashMap;
use std::sync::Mutex;

use crate::arrangement::{generic_arrangement, subsets, Arrangement, Hyperplane};
use crate::error::Result;

/// `ℓ(R_n[∏_{H∈B} H^{-1}])` keyed by the sorted hyperplanes of `B`.
///
/// Safe to share between threads; concurrent inserts of a key store the same value.
#[derive(Debug, Default)]
pub struct LengthMemo {
    map: Mutex<HashMap<(usize, Vec<Hyperplane>), u64>>,
}

impl LengthMemo {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.map.lock().expect("memo lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn get(&self, key: &(usize, Vec<Hyperplane>)) -> Option<u64> {
        self.map.lock().expect("memo lock").get(key).copied()
    }

    fn insert(&self, key: (usize, Vec<Hyperplane>), value: u64) {
        self.map.lock().expect("memo lock").insert(key, value);
    }
}

/// `H^k_A(R_n) ≠ 0`, i.e. the `k` forms are linearly independent.
pub fn h_top_nonvanishing(a: &Arrangement) -> bool {
    a.rank() == a.k()
}

fn key(a: &Arrangement, idx: &[usize]) -> (usize, Vec<Hyperplane>) {
    let mut hs: Vec<Hyperplane> = idx.iter().map(|&i| a.hyperplanes()[i].clone()).collect();
    hs.sort();
    (a.n(), hs)
}

/// `ℓ(B) = Σ_{∅≠I⊆B} (−1)^{|I|+1} ℓ(B∖I) + [rank B = |B|]`, with `ℓ(∅) = 1`.
fn length_of(a: &Arrangement, idx: &[usize], memo: &LengthMemo) -> u64 {
    if idx.is_empty() {
        return 1;
    }
    let key = key(a, idx);
    if let Some(v) = memo.get(&key) {
        return v;
    }
    let m = idx.len();
    let mut total: i64 = 0;
    for i in 1..=m {
        let sign = if i % 2 == 1 { 1 } else { -1 };
        for removed in subsets(m, i) {
            let rest: Vec<usize> = (0..m).filter(|p| !removed.contains(p)).map(|p| idx[p]).collect();
            total += sign * length_of(a, &rest, memo) as i64;
        }
    }
    if a.rank_of(idx) == m {
        total += 1;
    }
    let value = u64::try_from(total).expect("lengths are positive");
    memo.insert(key, value);
    value
}

pub fn holonomic_length(a: &Arrangement) -> u64 {
    holonomic_length_with(a, &LengthMemo::new())
}

pub fn holonomic_length_with(a: &Arrangement, memo: &LengthMemo) -> u64 {
    let idx: Vec<usize> = (0..a.k()).collect();
    length_of(a, &idx, memo)
}

/// `(i, Σ_{|I|=i} ℓ(A∖I))` for `i = 1..=k`, the terms of the top-level sum.
pub fn inclusion_exclusion_terms(a: &Arrangement) -> Vec<(usize, u64)> {
    let memo = LengthMemo::new();
    let k = a.k();
    (1..=k)
        .map(|i| {
            let sum = subsets(k, i)
                .map(|removed| {
                    let rest: Vec<usize> = (0..k).filter(|p| !removed.contains(p)).collect();
                    length_of(a, &rest, &memo)
                })
                .sum();
            (i, sum)
        })
        .collect()
}

/// Length for the generic arrangement with parameters `(n, k)`.
pub fn length_profile(n: usize, k: usize) -> Result<u64> {
    Ok(holonomic_length(&generic_arrangement(n, k)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Rational;

    #[test]
    fn hand_values() {
        assert_eq!(length_profile(1, 1).unwrap(), 2);
        assert_eq!(length_profile(2, 2).unwrap(), 4);
        assert_eq!(length_profile(2, 3).unwrap(), 7);
        let a = generic_arrangement(2, 3).unwrap();
        assert_eq!(inclusion_exclusion_terms(&a), vec![(1, 12), (2, 6), (3, 1)]);
    }

    #[test]
    fn top_cohomology() {
        let xy = Arrangement::from_integers(2, &[&[1, 0], &[0, 1]]).unwrap();
        assert!(h_top_nonvanishing(&xy));
        assert!(!h_top_nonvanishing(&generic_arrangement(2, 3).unwrap()));
        assert!(h_top_nonvanishing(&Arrangement::from_integers(3, &[&[1, 0, 0], &[0, 1, 0]]).unwrap()));
    }

    #[test]
    fn invariance_and_growth() {
        let a = generic_arrangement(3, 5).unwrap();
        let rev: Vec<Vec<Rational>> = a.hyperplanes().iter().rev().map(|h| h.coefficients().to_vec()).collect();
        assert_eq!(holonomic_length(&Arrangement::new(3, rev).unwrap()), holonomic_length(&a));
        let mut prev = 1;
        for k in 1..=5 {
            let l = length_profile(3, k).unwrap();
            assert!(l > prev && l > k as u64);
            prev = l;
        }
    }

    #[test]
    fn shared_memo() {
        let memo = LengthMemo::new();
        let a = generic_arrangement(2, 4).unwrap();
        let first = holonomic_length_with(&a, &memo);
        assert!(!memo.is_empty());
        assert_eq!(holonomic_length_with(&a, &memo), first);
    }
}
