use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::weights::HighestWeight;

const UNIT_TOL: f64 = 1e-9;
const SEPARATION: f64 = 1e-6;

/// Schur functions at a fixed unitary spectrum.
///
/// Well-separated spectra use the bialternant ratio; near-coincident ones use
/// Jacobi–Trudi in complete homogeneous polynomials after pulling out
/// `det^{λ_N}`.
#[derive(Clone, Debug)]
pub struct SchurEvaluator {
    eigenvalues: Vec<Complex64>,
    polar: Vec<(f64, f64)>,
    det: Complex64,
    vandermonde: Option<Complex64>,
    powers: Option<(i64, Vec<Vec<Complex64>>)>,
}

impl SchurEvaluator {
    pub fn new(eigenvalues: &[Complex64]) -> Result<Self> {
        for z in eigenvalues {
            if !z.re.is_finite() || !z.im.is_finite() || (z.norm() - 1.0).abs() > UNIT_TOL {
                return Err(Error::NonUnimodular(format!("{z}")));
            }
        }
        if eigenvalues.is_empty() {
            return Err(Error::Precondition("no eigenvalues".into()));
        }
        let n = eigenvalues.len();
        let mut min_gap = f64::INFINITY;
        let mut vdm = Complex64::new(1.0, 0.0);
        for i in 0..n {
            for j in i + 1..n {
                let d = eigenvalues[i] - eigenvalues[j];
                min_gap = min_gap.min(d.norm());
                vdm *= d;
            }
        }
        Ok(Self {
            eigenvalues: eigenvalues.to_vec(),
            polar: eigenvalues.iter().map(|z| z.to_polar()).collect(),
            det: eigenvalues.iter().product(),
            vandermonde: (min_gap > SEPARATION).then_some(vdm),
            powers: None,
        })
    }

    /// Like [`SchurEvaluator::new`], with `ξ_i^k` tabulated for `|k| ≤ max_exp`.
    /// Worth it when many weights are evaluated at one spectrum.
    pub fn with_power_table(eigenvalues: &[Complex64], max_exp: i64) -> Result<Self> {
        let mut ev = Self::new(eigenvalues)?;
        let table = (0..ev.rank())
            .map(|i| (-max_exp..=max_exp).map(|k| ev.power(i, k)).collect())
            .collect();
        ev.powers = Some((max_exp, table));
        Ok(ev)
    }

    pub fn rank(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn uses_bialternant(&self) -> bool {
        self.vandermonde.is_some()
    }

    fn power(&self, i: usize, k: i64) -> Complex64 {
        if let Some((m, table)) = &self.powers {
            if k.abs() <= *m {
                return table[i][(k + m) as usize];
            }
        }
        let (r, phi) = self.polar[i];
        Complex64::from_polar(r.powi(k as i32), phi * k as f64)
    }

    pub fn eval(&self, lambda: &HighestWeight) -> Result<Complex64> {
        if lambda.rank() != self.rank() {
            return Err(Error::RankMismatch { expected: self.rank(), found: lambda.rank() });
        }
        match self.vandermonde {
            Some(v) => Ok(self.bialternant(lambda) / v),
            None => Ok(self.jacobi_trudi(lambda)),
        }
    }

    fn bialternant(&self, lambda: &HighestWeight) -> Complex64 {
        let n = self.rank();
        let exps: Vec<i64> = (0..n).map(|j| lambda.components()[j] + (n - 1 - j) as i64).collect();
        let m = |i: usize, j: usize| self.power(i, exps[j]);
        match n {
            1 => m(0, 0),
            2 => m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0),
            3 => {
                m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
                    + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0))
            }
            _ => DMatrix::from_fn(n, n, m).determinant(),
        }
    }

    /// Complete homogeneous polynomials `h_0..=h_kmax`.
    pub fn complete_homogeneous(&self, kmax: usize) -> Vec<Complex64> {
        let mut h = vec![Complex64::new(0.0, 0.0); kmax + 1];
        h[0] = Complex64::new(1.0, 0.0);
        for x in &self.eigenvalues {
            for k in 1..=kmax {
                let prev = h[k - 1];
                h[k] += x * prev;
            }
        }
        h
    }

    fn jacobi_trudi(&self, lambda: &HighestWeight) -> Complex64 {
        let n = self.rank();
        let low = lambda.components()[n - 1];
        let mu: Vec<i64> = lambda.components().iter().map(|&c| c - low).collect();
        let kmax = (mu[0] as usize) + n;
        let h = self.complete_homogeneous(kmax);
        let entry = |i: usize, j: usize| {
            let k = mu[i] - i as i64 + j as i64;
            if k < 0 {
                Complex64::new(0.0, 0.0)
            } else {
                h[k as usize]
            }
        };
        let det = DMatrix::from_fn(n, n, entry).determinant();
        det * self.det.powi(low as i32)
    }
}

/// `s_λ` at a unitary spectrum.
pub fn schur_eval(lambda: &HighestWeight, eigenvalues: &[Complex64]) -> Result<Complex64> {
    SchurEvaluator::new(eigenvalues)?.eval(lambda)
}
