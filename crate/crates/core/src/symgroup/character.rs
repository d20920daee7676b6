use std::collections::{BTreeMap, HashMap};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::perm::{all_perms, Perm};
use super::rep::OrthogonalRep;
use super::tableau::{normalize, partition_size, Partition};
use crate::error::{Error, Result};

const ROUND_TOL: f64 = 1e-9;

/// `χ^λ(σ)` as the rounded trace of Young's orthogonal form.
pub fn character(shape: &[usize], sigma: &Perm) -> Result<i64> {
    let rep = OrthogonalRep::new(shape)?;
    character_in(&rep, sigma)
}

pub fn character_in(rep: &OrthogonalRep, sigma: &Perm) -> Result<i64> {
    if sigma.degree() != rep.degree() {
        return Err(Error::Precondition(format!(
            "permutation of degree {} for a shape of size {}",
            sigma.degree(),
            rep.degree()
        )));
    }
    let tr = rep.matrix(sigma).trace();
    let r = tr.round();
    if (tr - r).abs() > ROUND_TOL {
        return Err(Error::Internal(format!("character trace {tr} is not an integer")));
    }
    Ok(r as i64)
}

type MnKey = (Partition, Vec<usize>);

fn mn_cache() -> &'static Mutex<HashMap<MnKey, i64>> {
    static CACHE: OnceLock<Mutex<HashMap<MnKey, i64>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `χ^λ` on the class of cycle type `mu`, by the Murnaghan–Nakayama rule on
/// beta-numbers.
pub fn mn_character(shape: &[usize], cycle_type: &[usize]) -> Result<i64> {
    let shape = normalize(shape)?;
    let mut mu: Vec<usize> = cycle_type.iter().copied().filter(|&c| c > 0).collect();
    mu.sort_unstable_by(|a, b| b.cmp(a));
    if partition_size(&shape) != mu.iter().sum::<usize>() {
        return Err(Error::Precondition(format!("shape {shape:?} and cycle type {mu:?} have different sizes")));
    }
    Ok(mn(&shape, &mu))
}

fn mn(shape: &[usize], mu: &[usize]) -> i64 {
    if mu.is_empty() {
        return 1;
    }
    let key = (shape.to_vec(), mu.to_vec());
    if let Some(&v) = mn_cache().lock().expect("cache lock").get(&key) {
        return v;
    }
    let r = mu[0];
    let l = shape.len();
    let beta: Vec<usize> = shape.iter().enumerate().map(|(i, &p)| p + (l - 1 - i)).collect();
    let mut total = 0;
    for (i, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let nb = b - r;
        let between = beta.iter().filter(|&&x| x > nb && x < b).count();
        let sign = if between % 2 == 0 { 1 } else { -1 };
        let mut next = beta.clone();
        next[i] = nb;
        next.sort_unstable_by(|a, b| b.cmp(a));
        let m = next.len();
        let smaller: Partition =
            next.iter().enumerate().map(|(j, &x)| x - (m - 1 - j)).filter(|&p| p > 0).collect();
        total += sign * mn(&smaller, &mu[1..]);
    }
    mn_cache().lock().expect("cache lock").insert(key, total);
    total
}

/// Finite formal sums `Σ a_σ σ` with exact coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GroupAlgebraElement {
    pub degree: usize,
    pub coeffs: BTreeMap<Perm, BigRational>,
}

impl GroupAlgebraElement {
    pub fn zero(degree: usize) -> Self {
        Self { degree, coeffs: BTreeMap::new() }
    }

    pub fn identity(degree: usize) -> Self {
        let mut e = Self::zero(degree);
        e.coeffs.insert(Perm::identity(degree), BigRational::one());
        e
    }

    /// Pushes forward along `S_n ⊂ S_m`.
    pub fn embed(&self, m: usize) -> Self {
        Self { degree: m, coeffs: self.coeffs.iter().map(|(p, c)| (p.embed(m), c.clone())).collect() }
    }

    pub fn from_perm(p: Perm) -> Self {
        let mut e = Self::zero(p.degree());
        e.coeffs.insert(p, BigRational::one());
        e
    }

    pub fn coefficient(&self, p: &Perm) -> BigRational {
        self.coeffs.get(p).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree);
        let mut out: BTreeMap<Perm, BigRational> = BTreeMap::new();
        for (a, x) in &self.coeffs {
            for (b, y) in &other.coeffs {
                *out.entry(a.compose(b)).or_insert_with(BigRational::zero) += x * y;
            }
        }
        out.retain(|_, v| !v.is_zero());
        Self { degree: self.degree, coeffs: out }
    }
}

pub const PROJECTOR_MAX_N: usize = 6;

/// `π^λ = (d^λ/n!) Σ_σ χ^λ(σ) σ`, for `n` up to `max_n`.
pub fn projector(shape: &[usize], max_n: usize) -> Result<GroupAlgebraElement> {
    let shape = normalize(shape)?;
    let n = partition_size(&shape);
    if n > max_n {
        return Err(Error::BoundExceeded(format!("projector for n = {n} exceeds the bound {max_n}")));
    }
    let d = mn(&shape, &vec![1; n]);
    let fact: BigInt = (1..=n as u64).product::<u64>().into();
    let mut e = GroupAlgebraElement::zero(n);
    for p in all_perms(n) {
        let chi = mn(&shape, &p.cycle_type());
        if chi != 0 {
            e.coeffs.insert(p, BigRational::new(BigInt::from(d * chi), fact.clone()));
        }
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symgroup::tableau::partitions;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn examples() {
        for n in 1..=5 {
            for p in all_perms(n).iter().step_by(5) {
                assert_eq!(character(&[n], p).unwrap(), 1);
            }
        }
        assert_eq!(character(&[1, 1, 1], &Perm::transposition(3, 0, 1)).unwrap(), -1);
        assert_eq!(character(&[2, 1], &Perm::identity(3)).unwrap(), 2);
        assert_eq!(mn_character(&[2, 1], &[3]).unwrap(), -1);
        assert_eq!(mn_character(&[3, 1], &[2, 2]).unwrap(), -1);
    }

    #[test]
    fn traces_match_murnaghan_nakayama() {
        for n in 1..=6 {
            for shape in partitions(n) {
                let rep = OrthogonalRep::new(&shape).unwrap();
                for p in all_perms(n) {
                    assert_eq!(character_in(&rep, &p).unwrap(), mn_character(&shape, &p.cycle_type()).unwrap());
                }
            }
        }
    }

    #[test]
    fn column_orthogonality() {
        let n = 5;
        let shapes = partitions(n);
        let classes = partitions(n);
        for a in &classes {
            for b in &classes {
                let s: i64 = shapes.iter().map(|l| mn(l, a) * mn(l, b)).sum();
                if a == b {
                    assert!(s > 0);
                } else {
                    assert_eq!(s, 0);
                }
            }
        }
    }

    #[test]
    fn projector_examples() {
        assert_eq!(projector(&[1], 6).unwrap(), GroupAlgebraElement::identity(1));
        let s = projector(&[2], 6).unwrap();
        assert_eq!(s.coefficient(&Perm::identity(2)), q(1, 2));
        assert_eq!(s.coefficient(&Perm::transposition(2, 0, 1)), q(1, 2));
        let a = projector(&[1, 1], 6).unwrap();
        assert_eq!(a.coefficient(&Perm::transposition(2, 0, 1)), q(-1, 2));
        assert!(matches!(projector(&[7], 6), Err(Error::BoundExceeded(_))));
    }

    #[test]
    fn projectors_are_orthogonal_idempotents() {
        for n in 1..=4 {
            let shapes = partitions(n);
            let mut sum = GroupAlgebraElement::zero(n);
            for a in &shapes {
                let pa = projector(a, 6).unwrap();
                for (p, c) in &pa.coeffs {
                    assert_eq!(c, &pa.coefficient(&p.inverse()));
                    *sum.coeffs.entry(p.clone()).or_insert_with(BigRational::zero) += c;
                }
                for b in &shapes {
                    let prod = pa.mul(&projector(b, 6).unwrap());
                    if a == b {
                        assert_eq!(prod, pa);
                    } else {
                        assert!(prod.coeffs.is_empty());
                    }
                }
            }
            sum.coeffs.retain(|_, v| !v.is_zero());
            assert_eq!(sum, GroupAlgebraElement::identity(n));
        }
    }
}
