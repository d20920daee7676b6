use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use super::rep::{intertwiner, OrthogonalRep};
use super::tableau::{added_row, box_content, normalize, partition_size, remove_box, Partition};
use crate::error::{Error, Result};

const SCALAR_TOL: f64 = 1e-10;

/// A diamond `λ ↑ µ ↑ ξ`, `λ ↑ ν ↑ ξ` with `|ξ| = n ≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diamond {
    pub lambda: Partition,
    pub mu: Partition,
    pub nu: Partition,
    pub xi: Partition,
}

impl Diamond {
    pub fn new(lambda: &[usize], mu: &[usize], nu: &[usize], xi: &[usize]) -> Result<Self> {
        let d = Self { lambda: normalize(lambda)?, mu: normalize(mu)?, nu: normalize(nu)?, xi: normalize(xi)? };
        for (a, b) in [(&d.lambda, &d.mu), (&d.mu, &d.xi), (&d.lambda, &d.nu), (&d.nu, &d.xi)] {
            if added_row(a, b).is_none() {
                return Err(Error::NotExtension(format!("{b:?}"), format!("{a:?}")));
            }
        }
        Ok(d)
    }

    pub fn n(&self) -> usize {
        partition_size(&self.xi)
    }
}

/// Every diamond with `2 ≤ |ξ| ≤ max_n`.
pub fn all_diamonds(max_n: usize) -> Vec<Diamond> {
    let mut out = Vec::new();
    for n in 2..=max_n {
        for xi in super::tableau::partitions(n) {
            let below = remove_box(&xi);
            for (mu, _) in &below {
                for (nu, _) in &below {
                    for (lambda, _) in remove_box(mu) {
                        if added_row(&lambda, nu).is_some() {
                            out.push(Diamond { lambda, mu: mu.clone(), nu: nu.clone(), xi: xi.clone() });
                        }
                    }
                }
            }
        }
    }
    out
}

/// `i_{λν}ᵀ i_{νξ}ᵀ ρ_ξ((n−1 n)) i_{ξµ} i_{µλ}`, checked to be a scalar matrix.
pub fn scalar_a_matrix(d: &Diamond) -> Result<f64> {
    let xi_rep = OrthogonalRep::new(&d.xi)?;
    let m: DMatrix<f64> = intertwiner(&d.nu, &d.lambda)?.transpose()
        * intertwiner(&d.xi, &d.nu)?.transpose()
        * xi_rep.generator(d.n())
        * intertwiner(&d.xi, &d.mu)?
        * intertwiner(&d.mu, &d.lambda)?;
    let a = m[(0, 0)];
    let dev = (&m - DMatrix::identity(m.nrows(), m.ncols()) * a).abs().max();
    if dev > SCALAR_TOL {
        return Err(Error::Internal(format!("crossing map for {d:?} is not scalar (deviation {dev})")));
    }
    Ok(a)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarA {
    pub cos: BigRational,
    pub sin_squared: BigRational,
    /// `µ ≠ ν`: the value is the sine.
    pub crossing: bool,
}

impl ScalarA {
    pub fn value(&self) -> f64 {
        if self.crossing {
            self.sin_squared.to_f64().unwrap_or(f64::NAN).sqrt()
        } else {
            self.cos.to_f64().unwrap_or(f64::NAN)
        }
    }
}

/// `cos θ = 1/(c1 − c2)` with `c1 = ᴄ(ξ/µ)`, `c2 = ᴄ(µ/λ)`; the scalar is
/// `cos θ` when `µ = ν` and `sin θ` otherwise.
pub fn scalar_a_closed(d: &Diamond) -> Result<ScalarA> {
    let c1 = box_content(&d.mu, &d.xi)?;
    let c2 = box_content(&d.lambda, &d.mu)?;
    if c1 == c2 {
        return Err(Error::Internal(format!("equal contents in {d:?}")));
    }
    let cos = BigRational::new(BigInt::one(), BigInt::from(c1 - c2));
    let sin_squared = BigRational::one() - &cos * &cos;
    Ok(ScalarA { cos, sin_squared, crossing: d.mu != d.nu })
}
