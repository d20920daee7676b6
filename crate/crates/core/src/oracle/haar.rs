use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

/// Haar-distributed `U(N)` element: QR of a complex Ginibre matrix with the
/// phases of `R`'s diagonal moved onto `Q`.
pub fn haar_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DMatrix<Complex64> {
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    let z = DMatrix::from_fn(n, n, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re * scale, im * scale)
    });
    let qr = z.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { Complex64::new(1.0, 0.0) };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// Eigenvalues of a unitary matrix, projected onto the unit circle.
pub fn unitary_eigenvalues(x: &DMatrix<Complex64>) -> Result<Vec<Complex64>> {
    let n = x.nrows();
    if n == 0 || x.ncols() != n {
        return Err(Error::Precondition(format!("expected a square matrix, got {}×{}", x.nrows(), x.ncols())));
    }
    let raw = match n {
        1 => vec![x[(0, 0)]],
        2 => {
            let tr = x[(0, 0)] + x[(1, 1)];
            let det = x[(0, 0)] * x[(1, 1)] - x[(0, 1)] * x[(1, 0)];
            let disc = (tr * tr - 4.0 * det).sqrt();
            vec![(tr + disc) / 2.0, (tr - disc) / 2.0]
        }
        _ => {
            let t = x.clone().schur().unpack().1;
            (0..n).map(|i| t[(i, i)]).collect()
        }
    };
    raw.into_iter()
        .map(|z| {
            if !(z.norm() > 0.5 && z.norm() < 1.5) {
                return Err(Error::NonUnimodular(format!("eigenvalue {z} is far from the unit circle")));
            }
            Ok(z / z.norm())
        })
        .collect()
}
