//! Highest weights of U(N): dimensions, Casimir numbers, single-box
//! extensions and their contents.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A non-increasing N-tuple of integers.
///
/// When every component is non-negative the same value doubles as a
/// partition with `size()` boxes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct HighestWeight {
    components: Vec<i64>,
}

impl HighestWeight {
    pub fn new(components: Vec<i64>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidWeight("rank must be positive".into()));
        }
        if components.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidWeight(format!("{components:?} is not non-increasing")));
        }
        Ok(Self { components })
    }

    pub fn zero(rank: usize) -> Self {
        assert!(rank > 0, "rank must be positive");
        Self { components: vec![0; rank] }
    }

    pub fn components(&self) -> &[i64] {
        &self.components
    }

    pub fn rank(&self) -> usize {
        self.components.len()
    }

    /// Sum of the components (the box count n when non-negative).
    pub fn size(&self) -> i64 {
        self.components.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|&c| c == 0)
    }

    pub fn is_partition(&self) -> bool {
        self.components.iter().all(|&c| c >= 0)
    }

    /// The non-zero parts, for use as a Young diagram.
    pub fn partition(&self) -> Result<Vec<usize>> {
        if !self.is_partition() {
            return Err(Error::InvalidWeight(format!("{self} has a negative component")));
        }
        Ok(self.components.iter().filter(|&&c| c > 0).map(|&c| c as usize).collect())
    }

    /// Pads a partition with zeros up to `rank`.
    pub fn from_partition(parts: &[usize], rank: usize) -> Result<Self> {
        if parts.len() > rank {
            return Err(Error::InvalidWeight(format!(
                "partition {parts:?} has more than {rank} rows"
            )));
        }
        let mut c: Vec<i64> = parts.iter().map(|&p| p as i64).collect();
        c.resize(rank, 0);
        Self::new(c)
    }

    pub fn min_component(&self) -> i64 {
        *self.components.last().expect("rank is positive")
    }

    pub fn max_abs(&self) -> i64 {
        self.components.iter().map(|c| c.abs()).max().unwrap_or(0)
    }
}

impl TryFrom<Vec<i64>> for HighestWeight {
    type Error = Error;
    fn try_from(v: Vec<i64>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<HighestWeight> for Vec<i64> {
    fn from(w: HighestWeight) -> Self {
        w.components
    }
}

impl fmt::Display for HighestWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.components.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

fn same_rank(a: &HighestWeight, b: &HighestWeight) -> Result<()> {
    if a.rank() != b.rank() {
        return Err(Error::RankMismatch { expected: a.rank(), found: b.rank() });
    }
    Ok(())
}

/// Weyl dimension `d_λ`, exact.
pub fn dim_unitary(lambda: &HighestWeight) -> BigInt {
    let c = lambda.components();
    let n = c.len();
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..n {
        for j in (i + 1)..n {
            num *= BigInt::from(c[i] - c[j] + (j - i) as i64);
            den *= BigInt::from((j - i) as i64);
        }
    }
    let (q, r) = num.div_rem(&den);
    assert!(r.is_zero(), "Weyl dimension of {lambda} is not an integer");
    q
}

/// Quadratic Casimir number `c_λ = Σ λ_i² + (N − 2i + 1) λ_i`.
pub fn casimir(lambda: &HighestWeight) -> i64 {
    let n = lambda.rank() as i64;
    lambda
        .components()
        .iter()
        .enumerate()
        .map(|(k, &l)| l * l + (n - 2 * (k as i64 + 1) + 1) * l)
        .sum()
}

/// Returns the 1-based row `i` with `µ = λ + e_i`, or `None`.
pub fn extends(lambda: &HighestWeight, mu: &HighestWeight) -> Result<Option<usize>> {
    same_rank(lambda, mu)?;
    let mut row = None;
    for (k, (a, b)) in lambda.components().iter().zip(mu.components()).enumerate() {
        match b - a {
            0 => {}
            1 if row.is_none() => row = Some(k + 1),
            _ => return Ok(None),
        }
    }
    Ok(row)
}

/// Content `µ_i − i` of the box `µ/λ`.
pub fn content(lambda: &HighestWeight, mu: &HighestWeight) -> Result<i64> {
    match extends(lambda, mu)? {
        Some(i) => Ok(mu.components()[i - 1] - i as i64),
        None => Err(Error::NotExtension(mu.to_string(), lambda.to_string())),
    }
}

/// All `µ` with `λ ↑ µ`, by increasing row.
pub fn list_extensions(lambda: &HighestWeight) -> Vec<(HighestWeight, usize)> {
    let c = lambda.components();
    (0..c.len())
        .filter(|&k| k == 0 || c[k - 1] > c[k])
        .map(|k| {
            let mut m = c.to_vec();
            m[k] += 1;
            (HighestWeight { components: m }, k + 1)
        })
        .collect()
}

/// All `κ` with `κ ↑ λ`, by increasing row of the removed box.
pub fn list_reductions(lambda: &HighestWeight) -> Vec<(HighestWeight, usize)> {
    let c = lambda.components();
    let n = c.len();
    (0..n)
        .filter(|&k| k == n - 1 || c[k] > c[k + 1])
        .map(|k| {
            let mut m = c.to_vec();
            m[k] -= 1;
            (HighestWeight { components: m }, k + 1)
        })
        .collect()
}

/// Componentwise addition of `q`.
pub fn shift(lambda: &HighestWeight, q: i64) -> HighestWeight {
    HighestWeight { components: lambda.components().iter().map(|c| c + q).collect() }
}

/// Every weight of rank `n` whose components lie in `[-m, m]`, in
/// lexicographically increasing order.
pub fn weights_in_window(rank: usize, m: i64) -> Vec<HighestWeight> {
    fn rec(rank: usize, lo: i64, hi: i64, prefix: &mut Vec<i64>, out: &mut Vec<HighestWeight>) {
        if prefix.len() == rank {
            out.push(HighestWeight { components: prefix.clone() });
            return;
        }
        let top = prefix.last().copied().unwrap_or(hi);
        for v in lo..=top {
            prefix.push(v);
            rec(rank, lo, hi, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(rank, -m, m, &mut Vec::with_capacity(rank), &mut out);
    out
}

/// Weights with `max |λ_i| = m` exactly.
pub fn weights_in_shell(rank: usize, m: i64) -> Vec<HighestWeight> {
    weights_in_window(rank, m).into_iter().filter(|w| w.max_abs() == m).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn hw(c: &[i64]) -> HighestWeight {
        HighestWeight::new(c.to_vec()).unwrap()
    }

    // Counts semistandard fillings of `shape` with entries in 1..=n by brute force.
    fn count_ssyt(shape: &[usize], n: i64) -> u64 {
        let cells: Vec<(usize, usize)> = shape
            .iter()
            .enumerate()
            .flat_map(|(r, &len)| (0..len).map(move |c| (r, c)))
            .collect();
        let mut fill = vec![vec![0i64; shape.first().copied().unwrap_or(0)]; shape.len()];
        fn go(k: usize, cells: &[(usize, usize)], fill: &mut Vec<Vec<i64>>, n: i64) -> u64 {
            if k == cells.len() {
                return 1;
            }
            let (r, c) = cells[k];
            let mut total = 0;
            for v in 1..=n {
                if c > 0 && fill[r][c - 1] > v {
                    continue;
                }
                if r > 0 && fill[r - 1][c] >= v {
                    continue;
                }
                fill[r][c] = v;
                total += go(k + 1, cells, fill, n);
            }
            total
        }
        go(0, &cells, &mut fill, n)
    }

    fn partitions_upto(max_boxes: usize) -> Vec<Vec<usize>> {
        fn rec(rem: usize, cap: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            out.push(p.clone());
            for k in 1..=rem.min(cap) {
                p.push(k);
                rec(rem - k, k, p, out);
                p.pop();
            }
        }
        let mut out = Vec::new();
        rec(max_boxes, max_boxes, &mut Vec::new(), &mut out);
        out
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(dim_unitary(&hw(&[0, 0])), BigInt::from(1));
        assert_eq!(dim_unitary(&hw(&[1, 0, 0])), BigInt::from(3));
        assert_eq!(dim_unitary(&hw(&[2, 1, 1, 0])), BigInt::from(15));
    }

    #[test]
    fn dimension_counts_semistandard_tableaux() {
        for n in 1..=4usize {
            for p in partitions_upto(6) {
                if p.len() > n {
                    continue;
                }
                let w = HighestWeight::from_partition(&p, n).unwrap();
                let expected = count_ssyt(&p, n as i64);
                assert_eq!(dim_unitary(&w), BigInt::from(expected), "{p:?} N={n}");
            }
        }
    }

    #[test]
    fn large_components_do_not_overflow() {
        let w = hw(&[4_000_000_000, 0, -4_000_000_000]);
        let d = dim_unitary(&w);
        // (a+1)(2a+2)(a+1)/2 with a = 4e9
        let a = BigInt::from(4_000_000_000i64);
        let expected = (&a + 1u32) * (&a * 2u32 + 2u32) * (&a + 1u32) / 2u32;
        assert_eq!(d, expected);
    }

    #[test]
    fn casimir_examples() {
        assert_eq!(casimir(&HighestWeight::zero(3)), 0);
        assert_eq!(casimir(&hw(&[1, 0])), 2);
        assert_eq!(casimir(&hw(&[2, 1, 1, 0])), 12);
        assert_eq!(casimir(&hw(&[3])), 9);
    }

    #[test]
    fn extension_examples() {
        assert_eq!(extends(&hw(&[0, 0]), &hw(&[1, 0])).unwrap(), Some(1));
        assert_eq!(extends(&hw(&[1, 0]), &hw(&[1, 1])).unwrap(), Some(2));
        assert_eq!(extends(&hw(&[1, 0]), &hw(&[3, 0])).unwrap(), None);
        assert_eq!(extends(&hw(&[1, 0]), &hw(&[1, 0])).unwrap(), None);
        assert!(matches!(
            extends(&hw(&[1, 0]), &hw(&[1, 0, 0])),
            Err(Error::RankMismatch { .. })
        ));
    }

    #[test]
    fn content_examples() {
        assert_eq!(content(&HighestWeight::zero(3), &hw(&[1, 0, 0])).unwrap(), 0);
        assert_eq!(content(&hw(&[1, 0]), &hw(&[1, 1])).unwrap(), -1);
        assert_eq!(content(&hw(&[1, 1, 1]), &hw(&[2, 1, 1])).unwrap(), 1);
        assert!(content(&hw(&[1, 0]), &hw(&[3, 0])).is_err());
    }

    #[test]
    fn extension_lists() {
        assert_eq!(list_extensions(&hw(&[0, 0])), vec![(hw(&[1, 0]), 1)]);
        assert_eq!(list_extensions(&hw(&[1, 0])), vec![(hw(&[2, 0]), 1), (hw(&[1, 1]), 2)]);
        assert_eq!(
            list_extensions(&hw(&[2, 2, 0])),
            vec![(hw(&[3, 2, 0]), 1), (hw(&[2, 2, 1]), 3)]
        );
        assert_eq!(list_reductions(&hw(&[0, 0])), vec![(hw(&[0, -1]), 2)]);
        assert_eq!(list_reductions(&hw(&[2, 1])), vec![(hw(&[1, 1]), 1), (hw(&[2, 0]), 2)]);
    }

    #[test]
    fn shift_examples() {
        assert_eq!(shift(&hw(&[1, 0]), -1), hw(&[0, -1]));
        assert_eq!(shift(&hw(&[0, 0]), 3), hw(&[3, 3]));
    }

    #[test]
    fn windows_and_shells() {
        // non-increasing pairs in [-1,1]^2
        assert_eq!(weights_in_window(2, 1).len(), 6);
        assert_eq!(weights_in_shell(1, 3), vec![hw(&[-3]), hw(&[3])]);
        let total: usize = (0..=3).map(|m| weights_in_shell(3, m).len()).sum();
        assert_eq!(total, weights_in_window(3, 3).len());
    }

    #[test]
    fn rejects_increasing_vectors() {
        assert!(HighestWeight::new(vec![0, 1]).is_err());
        assert!(HighestWeight::new(vec![]).is_err());
        assert!(hw(&[1, -1]).partition().is_err());
    }

    fn weight_strategy() -> impl Strategy<Value = HighestWeight> {
        (1usize..=5).prop_flat_map(|n| {
            proptest::collection::vec(-6i64..=6, n).prop_map(|mut v| {
                v.sort_unstable_by(|a, b| b.cmp(a));
                HighestWeight::new(v).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn dimension_is_shift_invariant(w in weight_strategy(), q in -9i64..=9) {
            prop_assert_eq!(dim_unitary(&shift(&w, q)), dim_unitary(&w));
        }

        #[test]
        fn casimir_shift_formula(w in weight_strategy(), q in -9i64..=9) {
            let n = w.rank() as i64;
            prop_assert_eq!(casimir(&shift(&w, q)), casimir(&w) + 2 * q * w.size() + n * q * q);
        }

        #[test]
        fn shift_round_trips(w in weight_strategy(), q in -9i64..=9) {
            prop_assert_eq!(shift(&shift(&w, q), -q), w);
        }

        #[test]
        fn consecutive_contents_differ(w in weight_strategy()) {
            for (mu, _) in list_extensions(&w) {
                for (xi, _) in list_extensions(&mu) {
                    prop_assert_ne!(content(&mu, &xi).unwrap(), content(&w, &mu).unwrap());
                }
            }
        }

        #[test]
        fn extensions_are_exactly_single_boxes(w in weight_strategy()) {
            let ext = list_extensions(&w);
            prop_assert!(ext.len() <= w.rank());
            for (mu, i) in &ext {
                prop_assert_eq!(extends(&w, mu).unwrap(), Some(*i));
                let red = list_reductions(mu);
                prop_assert!(red.iter().any(|(k, j)| k == &w && j == i));
            }
        }

        #[test]
        fn casimir_difference_is_twice_content_plus_rank(w in weight_strategy()) {
            let n = w.rank() as i64;
            for (mu, _) in list_extensions(&w) {
                prop_assert_eq!(casimir(&mu) - casimir(&w), 2 * content(&w, &mu).unwrap() + n);
            }
        }
    }
}
