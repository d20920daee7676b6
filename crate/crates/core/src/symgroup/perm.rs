use std::fmt;

/// A permutation of `{0, …, n−1}` stored as its image list.
///
/// Composition is right to left: `(σ·τ)(i) = σ(τ(i))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    /// Returns `None` unless `images` is a permutation.
    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || std::mem::replace(&mut seen[i], true) {
                return None;
            }
        }
        Some(Perm(images))
    }

    /// The transposition of `a` and `b` (0-based) in `S_n`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut p = Self::identity(n);
        p.0.swap(a, b);
        p
    }

    /// `(k−1 k)` in 1-based notation, `2 ≤ k ≤ n`.
    pub fn adjacent(n: usize, k: usize) -> Self {
        Self::transposition(n, k - 2, k - 1)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.degree(), other.degree(), "degrees differ");
        Perm(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.degree()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Perm(inv)
    }

    /// Extends to `S_m`, `m ≥ n`, fixing the new points.
    pub fn embed(&self, m: usize) -> Perm {
        assert!(m >= self.degree());
        Perm(self.0.iter().copied().chain(self.degree()..m).collect())
    }

    /// Cycle lengths in non-increasing order.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for s in 0..self.degree() {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut i = s;
            while !seen[i] {
                seen[i] = true;
                i = self.0[i];
                len += 1;
            }
            out.push(len);
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    pub fn sign(&self) -> i64 {
        let even = self.cycle_type().iter().filter(|&&l| l % 2 == 0).count();
        if even % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Writes `self = s_{i_1} ⋯ s_{i_k}` with `s_i` swapping `i, i+1`
    /// (0-based), a reduced word.
    pub fn adjacent_word(&self) -> Vec<usize> {
        let mut p = self.clone();
        let mut rev = Vec::new();
        'outer: loop {
            for i in 0..p.degree().saturating_sub(1) {
                if p.0[i] > p.0[i + 1] {
                    p.0.swap(i, i + 1);
                    rev.push(i);
                    continue 'outer;
                }
            }
            break;
        }
        rev.reverse();
        rev
    }
}

impl fmt::Display for Perm {
    /// Cycle notation with 1-based points, `e` for the identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "e");
        }
        let mut seen = vec![false; self.degree()];
        for s in 0..self.degree() {
            if seen[s] || self.0[s] == s {
                continue;
            }
            write!(f, "(")?;
            let mut i = s;
            let mut first = true;
            while !seen[i] {
                seen[i] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{}", i + 1)?;
                first = false;
                i = self.0[i];
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// All of `S_n` in lexicographic order of image lists.
pub fn all_perms(n: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(Perm(cur.clone()));
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).expect("successor exists");
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_perm(n: usize) -> impl Strategy<Value = Perm> {
        Just((0..n).collect::<Vec<_>>()).prop_shuffle().prop_map(Perm)
    }

    #[test]
    fn counts_and_order() {
        assert_eq!(all_perms(0).len(), 1);
        assert_eq!(all_perms(4).len(), 24);
        let p = all_perms(5);
        assert!(p.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn composition_convention() {
        let a = Perm::transposition(3, 0, 1);
        let b = Perm::transposition(3, 1, 2);
        // (1 2)(2 3) sends 3 -> 2 -> 1.
        assert_eq!(a.compose(&b).apply(2), 0);
        assert_eq!(a.compose(&b).to_string(), "(1 2 3)");
        assert_eq!(a.compose(&b).cycle_type(), vec![3]);
    }

    proptest! {
        #[test]
        fn word_reconstructs(p in (1usize..7).prop_flat_map(arb_perm)) {
            let n = p.degree();
            let mut q = Perm::identity(n);
            for i in p.adjacent_word() {
                q = q.compose(&Perm::transposition(n, i, i + 1));
            }
            prop_assert_eq!(&q, &p);
            let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| p.apply(i) > p.apply(j)).count();
            prop_assert_eq!(p.adjacent_word().len(), inversions);
            prop_assert!(p.compose(&p.inverse()).is_identity());
            prop_assert_eq!(p.sign(), if inversions % 2 == 0 { 1 } else { -1 });
        }
    }
}
