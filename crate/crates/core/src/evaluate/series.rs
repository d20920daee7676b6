use num_complex::Complex64;
use num_traits::ToPrimitive;

use super::schur::SchurEvaluator;
use super::sum::NeumaierSum;
use super::SymbolicExpectation;
use crate::error::{Error, Result};
use crate::surface::{BoundaryKind, SurfaceGraph};
use crate::weights::{casimir, dim_unitary, weights_in_shell, HighestWeight};

const IMAG_TOL: f64 = 1e-10;

/// How far to sum a character series over highest weights.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SeriesTruncation {
    /// All weights with `max |λ_i| ≤ M`.
    Window(u32),
    /// Shells `max |λ_i| = M` for `M = 0, 1, …` until the summed modulus of
    /// the newest shell drops below `rel_tol` times the running total.
    Shells { rel_tol: f64, max_shell: u32 },
}

impl Default for SeriesTruncation {
    fn default() -> Self {
        SeriesTruncation::Shells { rel_tol: 1e-12, max_shell: 60 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesValue {
    pub value: f64,
    /// Last shell included in the sum.
    pub final_shell: u32,
}

fn sum_shells<F>(rank: usize, trunc: SeriesTruncation, term: F) -> Result<(Complex64, u32)>
where
    F: Fn(&HighestWeight) -> Result<Complex64>,
{
    let mut re = NeumaierSum::default();
    let mut im = NeumaierSum::default();
    let (last, rel_tol) = match trunc {
        SeriesTruncation::Window(m) => (m, None),
        SeriesTruncation::Shells { rel_tol, max_shell } => (max_shell, Some(rel_tol)),
    };
    for m in 0..=last {
        let mut shell_abs = 0.0;
        for w in weights_in_shell(rank, m as i64) {
            let z = term(&w)?;
            shell_abs += z.norm();
            re.add(z.re);
            im.add(z.im);
        }
        if let Some(tol) = rel_tol {
            let acc = Complex64::new(re.total(), im.total()).norm();
            if m >= 2 && shell_abs < tol * acc {
                return Ok((Complex64::new(re.total(), im.total()), m));
            }
        }
    }
    match trunc {
        SeriesTruncation::Window(m) => Ok((Complex64::new(re.total(), im.total()), m)),
        SeriesTruncation::Shells { max_shell, .. } => Err(Error::TruncationExhausted(max_shell)),
    }
}

fn real_part(z: Complex64, what: &str) -> Result<f64> {
    if z.im.abs() > IMAG_TOL * z.re.abs().max(1.0) {
        return Err(Error::Internal(format!("{what} has imaginary residue {}", z.im)));
    }
    Ok(z.re)
}

/// `p_t(x) = Σ_λ e^{−t c_λ/2N} d_λ s_λ(x)`.
pub fn heat_kernel(t: f64, eigenvalues: &[Complex64], trunc: SeriesTruncation) -> Result<SeriesValue> {
    if !(t > 0.0) {
        return Err(Error::Precondition(format!("heat kernel needs t > 0, got {t}")));
    }
    let ev = SchurEvaluator::new(eigenvalues)?;
    let n = ev.rank() as f64;
    let (z, final_shell) = sum_shells(ev.rank(), trunc, |w| {
        let d = dim_unitary(w).to_f64().unwrap_or(f64::INFINITY);
        Ok(ev.eval(w)? * d * (-t * casimir(w) as f64 / (2.0 * n)).exp())
    })?;
    Ok(SeriesValue { value: real_part(z, "heat kernel")?, final_shell })
}

/// `Z = Σ_λ e^{−t c_λ/2N} d_λ^{e} ∏_i s_λ(w_i)`; exactly 1 with a free boundary.
pub fn partition_function(
    euler_char: i64,
    boundaries: &[BoundaryKind],
    rank: usize,
    t: f64,
    trunc: SeriesTruncation,
) -> Result<SeriesValue> {
    let s = euler_char + boundaries.len() as i64;
    if s > 2 || s.rem_euclid(2) != 0 {
        return Err(Error::Precondition(format!(
            "euler_char {euler_char} with {} boundary components is not an orientable surface",
            boundaries.len()
        )));
    }
    if boundaries.iter().any(|b| matches!(b, BoundaryKind::Free)) {
        return Ok(SeriesValue { value: 1.0, final_shell: 0 });
    }
    if !(t > 0.0) {
        return Err(Error::Divergent(format!("partition function at total area {t} without a free boundary")));
    }
    let evaluators = boundaries
        .iter()
        .map(|b| match b {
            BoundaryKind::Constrained(ev) => {
                if ev.len() != rank {
                    return Err(Error::RankMismatch { expected: rank, found: ev.len() });
                }
                SchurEvaluator::new(ev)
            }
            BoundaryKind::Free => unreachable!("free boundaries return early"),
        })
        .collect::<Result<Vec<_>>>()?;
    let n = rank as f64;
    let (z, final_shell) = sum_shells(rank, trunc, |w| {
        let d = dim_unitary(w).to_f64().unwrap_or(f64::INFINITY);
        let mut z = Complex64::new(d.powi(euler_char as i32) * (-t * casimir(w) as f64 / (2.0 * n)).exp(), 0.0);
        for e in &evaluators {
            z *= e.eval(w)?;
        }
        Ok(z)
    })?;
    Ok(SeriesValue { value: real_part(z, "partition function")?, final_shell })
}

/// `E[∏ Tr H_ℓ] = non-normalised value / Z(Σ)` at the stored areas.
pub fn normalized_expectation(g: &SurfaceGraph, e: &SymbolicExpectation, trunc: SeriesTruncation) -> Result<Complex64> {
    let boundaries: Vec<BoundaryKind> =
        g.faces().iter().flat_map(|f| f.internal_boundaries.iter().map(|b| b.kind.clone())).collect();
    let total: f64 = e.areas.iter().sum();
    let z = partition_function(g.surface_euler_char(), &boundaries, g.rank(), total, trunc)?;
    Ok(e.value() / z.value)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn disk_partition_function_is_one() {
        let z = partition_function(1, &[BoundaryKind::Free], 3, 1.0, SeriesTruncation::default()).unwrap();
        assert_eq!(z.value, 1.0);
    }

    #[test]
    fn rank_one_sphere_is_a_theta_sum() {
        for t in [0.5, 1.0, 2.0] {
            let z = partition_function(2, &[], 1, t, SeriesTruncation::Window(20)).unwrap();
            let direct: f64 = (-20i64..=20).map(|k| (-t * (k * k) as f64 / 2.0).exp()).sum();
            assert!((z.value - direct).abs() < 1e-12 * direct);
        }
    }

    #[test]
    fn torus_sums_exponentials_only() {
        let t = 1.5;
        let z = partition_function(0, &[], 2, t, SeriesTruncation::Window(6)).unwrap();
        let direct: f64 = crate::weights::weights_in_window(2, 6)
            .iter()
            .map(|w| (-t * casimir(w) as f64 / 4.0).exp())
            .sum();
        assert!((z.value - direct).abs() < 1e-12 * direct);
    }

    #[test]
    fn divergent_and_invalid_requests() {
        assert!(matches!(partition_function(2, &[], 2, 0.0, SeriesTruncation::Window(3)), Err(Error::Divergent(_))));
        assert!(matches!(partition_function(1, &[], 2, 1.0, SeriesTruncation::Window(3)), Err(Error::Precondition(_))));
        assert!(heat_kernel(0.0, &[Complex64::new(1.0, 0.0)], SeriesTruncation::default()).is_err());
    }

    #[test]
    fn heat_kernel_at_identity_and_large_time() {
        let one = [Complex64::new(1.0, 0.0); 2];
        let t = 1.0;
        let p = heat_kernel(t, &one, SeriesTruncation::Window(15)).unwrap();
        let direct: f64 = crate::weights::weights_in_window(2, 15)
            .iter()
            .map(|w| dim_unitary(w).to_f64().unwrap().powi(2) * (-t * casimir(w) as f64 / 4.0).exp())
            .sum();
        assert!((p.value - direct).abs() < 1e-10 * direct);

        let x = [Complex64::from_polar(1.0, 0.7), Complex64::from_polar(1.0, -2.0)];
        let p = heat_kernel(60.0, &x, SeriesTruncation::default()).unwrap();
        assert!((p.value - 1.0).abs() < 1e-6, "{}", p.value);
    }

    #[test]
    fn shells_stop_and_report() {
        let x = [Complex64::from_polar(1.0, 0.7), Complex64::from_polar(1.0, -2.0)];
        let p = heat_kernel(1.0, &x, SeriesTruncation::default()).unwrap();
        let w = heat_kernel(1.0, &x, SeriesTruncation::Window(p.final_shell + 10)).unwrap();
        assert!(p.final_shell >= 2);
        assert!((p.value - w.value).abs() < 1e-10 * w.value.abs().max(1.0));
        let tight = SeriesTruncation::Shells { rel_tol: 1e-300, max_shell: 3 };
        assert!(matches!(heat_kernel(0.01, &x, tight), Err(Error::TruncationExhausted(3))));
    }

    #[test]
    fn rank_one_heat_kernel_matches_theta_series() {
        let theta: f64 = 1.3;
        let t = 0.8;
        let x = [Complex64::from_polar(1.0, theta)];
        let p = heat_kernel(t, &x, SeriesTruncation::default()).unwrap();
        let direct: f64 = (-40i64..=40).map(|k| (-t * (k * k) as f64 / 2.0).exp() * (k as f64 * theta).cos()).sum();
        assert!((p.value - direct).abs() < 1e-12);
    }
}
