use crate::error::{Error, Result};
use crate::weights::HighestWeight;

/// A partition as a list of positive parts in non-increasing order.
pub type Partition = Vec<usize>;

pub fn partition_size(p: &[usize]) -> usize {
    p.iter().sum()
}

/// Drops trailing zeros and checks the parts are non-increasing.
pub fn normalize(p: &[usize]) -> Result<Partition> {
    if p.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::InvalidWeight(format!("{p:?} is not non-increasing")));
    }
    Ok(p.iter().copied().filter(|&x| x > 0).collect())
}

/// The partition of a non-negative highest weight.
pub fn from_weight(w: &HighestWeight) -> Result<Partition> {
    w.partition()
}

/// All partitions of `n`, in reverse lexicographic order.
pub fn partitions(n: usize) -> Vec<Partition> {
    fn go(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=max.min(n)).rev() {
            cur.push(k);
            go(n - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Row (0-based) at which `mu` adds one box to `lambda`, if it does.
pub fn added_row(lambda: &[usize], mu: &[usize]) -> Option<usize> {
    if partition_size(mu) != partition_size(lambda) + 1 || mu.len() > lambda.len() + 1 {
        return None;
    }
    let part = |p: &[usize], i: usize| p.get(i).copied().unwrap_or(0);
    let mut row = None;
    for i in 0..mu.len().max(lambda.len()) {
        let (a, b) = (part(lambda, i), part(mu, i));
        if b == a + 1 && row.is_none() {
            row = Some(i);
        } else if a != b {
            return None;
        }
    }
    row
}

/// Content `column − row` of the box `mu / lambda`.
pub fn box_content(lambda: &[usize], mu: &[usize]) -> Result<i64> {
    let r = added_row(lambda, mu).ok_or_else(|| Error::NotExtension(format!("{mu:?}"), format!("{lambda:?}")))?;
    Ok(mu[r] as i64 - 1 - r as i64)
}

/// Partitions obtained by adding one box, with the row used.
pub fn add_box(p: &[usize]) -> Vec<(Partition, usize)> {
    let mut out = Vec::new();
    for r in 0..=p.len() {
        let cur = p.get(r).copied().unwrap_or(0);
        if r == 0 || p[r - 1] > cur {
            let mut q = p.to_vec();
            if r == p.len() {
                q.push(1);
            } else {
                q[r] += 1;
            }
            out.push((q, r));
        }
    }
    out
}

/// Partitions obtained by removing one box, with the row used.
pub fn remove_box(p: &[usize]) -> Vec<(Partition, usize)> {
    let mut out = Vec::new();
    for r in 0..p.len() {
        let next = p.get(r + 1).copied().unwrap_or(0);
        if p[r] > next {
            let mut q = p.to_vec();
            q[r] -= 1;
            if q[r] == 0 {
                q.pop();
            }
            out.push((q, r));
        }
    }
    out
}

/// A standard filling, recorded as the row (0-based) holding each entry.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StandardTableau {
    rows: Vec<usize>,
    shape: Partition,
}

impl StandardTableau {
    /// Builds from the row of each entry `1..=n`; `None` if not standard.
    pub fn from_rows(rows: Vec<usize>) -> Option<Self> {
        let mut shape: Vec<usize> = Vec::new();
        for &r in &rows {
            if r > shape.len() || (r > 0 && shape[r - 1] <= shape.get(r).copied().unwrap_or(0)) {
                return None;
            }
            if r == shape.len() {
                shape.push(1);
            } else {
                shape[r] += 1;
            }
        }
        Some(Self { rows, shape })
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    /// `c_T(k)` for 1-based `k`.
    pub fn content(&self, k: usize) -> i64 {
        let r = self.rows[k - 1];
        let col = self.rows[..k - 1].iter().filter(|&&x| x == r).count();
        col as i64 - r as i64
    }

    pub fn contents(&self) -> Vec<i64> {
        (1..=self.size()).map(|k| self.content(k)).collect()
    }

    /// The filling with `k−1` and `k` exchanged, if still standard.
    pub fn swapped(&self, k: usize) -> Option<Self> {
        if self.rows[k - 2] == self.rows[k - 1] {
            return None;
        }
        let mut rows = self.rows.clone();
        rows.swap(k - 2, k - 1);
        Self::from_rows(rows)
    }

    /// Appends `n+1` in the given row.
    pub fn appended(&self, row: usize) -> Option<Self> {
        let mut rows = self.rows.clone();
        rows.push(row);
        Self::from_rows(rows)
    }

    /// Entries of each row, 1-based.
    pub fn filling(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.shape.len()];
        for (k, &r) in self.rows.iter().enumerate() {
            out[r].push(k + 1);
        }
        out
    }
}

/// All standard tableaux of shape `p`, ordered by the row sequence of
/// `1, 2, …, n` (equivalently, content sequences in decreasing
/// lexicographic order).
pub fn standard_tableaux(p: &[usize]) -> Result<Vec<StandardTableau>> {
    let p = normalize(p)?;
    fn go(target: &[usize], cur: &mut Vec<usize>, rows: &mut Vec<usize>, out: &mut Vec<StandardTableau>) {
        if rows.len() == partition_size(target) {
            out.push(StandardTableau { rows: rows.clone(), shape: target.to_vec() });
            return;
        }
        for r in 0..target.len().min(cur.len() + 1) {
            let have = cur.get(r).copied().unwrap_or(0);
            let above = if r == 0 { usize::MAX } else { cur[r - 1] };
            if have < target[r] && have < above {
                if r == cur.len() {
                    cur.push(1);
                } else {
                    cur[r] += 1;
                }
                rows.push(r);
                go(target, cur, rows, out);
                rows.pop();
                if cur[r] == 1 && r == cur.len() - 1 {
                    cur.pop();
                } else {
                    cur[r] -= 1;
                }
            }
        }
    }
    let mut out = Vec::new();
    go(&p, &mut Vec::new(), &mut Vec::new(), &mut out);
    Ok(out)
}

/// Tableaux of a non-negative highest weight.
pub fn standard_tableaux_of(w: &HighestWeight) -> Result<Vec<StandardTableau>> {
    standard_tableaux(&from_weight(w)?)
}

/// Hook-length count of standard tableaux.
pub fn count_standard(p: &[usize]) -> u128 {
    let n = partition_size(p);
    let mut num: u128 = (1..=n as u128).product();
    let mut hooks: u128 = 1;
    for (r, &len) in p.iter().enumerate() {
        for c in 0..len {
            let below = p[r + 1..].iter().filter(|&&l| l > c).count();
            hooks *= (len - c + below) as u128;
        }
    }
    num /= hooks;
    num
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_shapes() {
        assert_eq!(standard_tableaux(&[1]).unwrap().len(), 1);
        assert_eq!(standard_tableaux(&[2, 1]).unwrap().len(), 2);
        assert_eq!(standard_tableaux(&[2, 2]).unwrap().len(), 2);
        assert_eq!(standard_tableaux(&[]).unwrap().len(), 1);
        let t = standard_tableaux(&[2, 1]).unwrap();
        assert_eq!(t[0].filling(), vec![vec![1, 2], vec![3]]);
        assert_eq!(t[0].contents(), vec![0, 1, -1]);
        assert_eq!(t[1].contents(), vec![0, -1, 1]);
    }

    #[test]
    fn counts_match_hook_formula() {
        for n in 0..=8 {
            for p in partitions(n) {
                let t = standard_tableaux(&p).unwrap();
                assert_eq!(t.len() as u128, count_standard(&p), "{p:?}");
                assert!(t.windows(2).all(|w| w[0] < w[1]));
                assert!(t.iter().all(|x| x.shape() == p.as_slice()));
            }
        }
        assert_eq!(partitions(6).len(), 11);
        assert_eq!(partitions(8).len(), 22);
    }

    #[test]
    fn rejects_non_partitions() {
        assert!(standard_tableaux(&[1, 2]).is_err());
        assert!(StandardTableau::from_rows(vec![1]).is_none());
        assert!(StandardTableau::from_rows(vec![0, 1, 1]).is_none());
    }

    #[test]
    fn box_helpers() {
        assert_eq!(added_row(&[2], &[2, 1]), Some(1));
        assert_eq!(added_row(&[2], &[3, 1]), None);
        assert_eq!(box_content(&[1], &[1, 1]).unwrap(), -1);
        assert_eq!(box_content(&[], &[1]).unwrap(), 0);
        assert_eq!(add_box(&[2, 1]).len(), 3);
        assert_eq!(remove_box(&[2, 1]), vec![(vec![1, 1], 0), (vec![2], 1)]);
    }
}
