use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::haar::{haar_unitary, unitary_eigenvalues};
use super::tensor::tensor_power;
use crate::error::{Error, Result};
use crate::evaluate::{heat_kernel, SchurEvaluator, SeriesTruncation};
use crate::surface::{Dart, SurfaceGraph};
use crate::weights::{casimir, dim_unitary, weights_in_shell, HighestWeight};

/// Samples drawn from one random substream. Substream `k` covers samples
/// `k·CHUNK .. (k+1)·CHUNK`, so the result does not depend on the thread count.
pub const CHUNK: u64 = 4096;

/// Streaming mean and variance.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Welford {
    pub count: u64,
    pub mean: f64,
    m2: f64,
}

impl Welford {
    pub fn add(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    pub fn merge(&self, other: &Welford) -> Welford {
        if self.count == 0 {
            return *other;
        }
        if other.count == 0 {
            return *self;
        }
        let count = self.count + other.count;
        let delta = other.mean - self.mean;
        let mean = self.mean + delta * other.count as f64 / count as f64;
        let m2 = self.m2 + other.m2 + delta * delta * (self.count as f64 * other.count as f64) / count as f64;
        Welford { count, mean, m2 }
    }

    pub fn variance(&self) -> f64 {
        if self.count < 2 {
            0.0
        } else {
            self.m2 / (self.count - 1) as f64
        }
    }

    /// Standard error of the mean.
    pub fn stderr(&self) -> f64 {
        if self.count == 0 {
            0.0
        } else {
            (self.variance() / self.count as f64).sqrt()
        }
    }
}

/// Complex Monte Carlo estimate with separate errors on each part.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct McEstimate {
    pub mean: Complex64,
    pub stderr_re: f64,
    pub stderr_im: f64,
    pub samples: u64,
}

impl McEstimate {
    fn from_parts(re: &Welford, im: &Welford) -> Self {
        McEstimate {
            mean: Complex64::new(re.mean, im.mean),
            stderr_re: re.stderr(),
            stderr_im: im.stderr(),
            samples: re.count,
        }
    }

    /// Largest deviation from `target` in units of the standard error, per part.
    /// Deviations within 1e-12 of the target's scale count as zero, which
    /// covers constant integrands whose error is pure roundoff.
    pub fn sigmas_from(&self, target: Complex64) -> f64 {
        let floor = 1e-12 * target.norm().max(1.0);
        let part = |d: f64, s: f64| {
            if d.abs() <= floor {
                0.0
            } else if s > 0.0 {
                d.abs() / s
            } else {
                f64::INFINITY
            }
        };
        part(self.mean.re - target.re, self.stderr_re).max(part(self.mean.im - target.im, self.stderr_im))
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::json!({
            "mean": [self.mean.re, self.mean.im],
            "stderr": [self.stderr_re, self.stderr_im],
            "samples": self.samples,
        })
    }
}

/// Averages a vector-valued integrand over `samples` draws on per-chunk substreams.
pub fn run_chunks<F>(samples: u64, seed: u64, width: usize, f: F) -> Result<Vec<McEstimate>>
where
    F: Fn(&mut ChaCha8Rng, &mut [Complex64]) -> Result<()> + Sync,
{
    let chunks = samples.div_ceil(CHUNK);
    let partial: Vec<Vec<(Welford, Welford)>> = (0..chunks)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k);
            let mut acc = vec![(Welford::default(), Welford::default()); width];
            let mut buf = vec![Complex64::new(0.0, 0.0); width];
            let len = CHUNK.min(samples - k * CHUNK);
            for _ in 0..len {
                f(&mut rng, &mut buf)?;
                for (a, z) in acc.iter_mut().zip(&buf) {
                    a.0.add(z.re);
                    a.1.add(z.im);
                }
            }
            Ok(acc)
        })
        .collect::<Result<_>>()?;
    let mut total = vec![(Welford::default(), Welford::default()); width];
    for chunk in &partial {
        for (t, c) in total.iter_mut().zip(chunk) {
            *t = (t.0.merge(&c.0), t.1.merge(&c.1));
        }
    }
    Ok(total.iter().map(|(re, im)| McEstimate::from_parts(re, im)).collect())
}

/// Controls for [`mc_driver_sengupta`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct McConfig {
    pub samples: u64,
    pub seed: u64,
    /// Relative size of the last heat-kernel shell kept, measured by `|s_λ| ≤ d_λ`.
    pub hk_tol: f64,
    pub max_shell: u32,
}

impl Default for McConfig {
    fn default() -> Self {
        McConfig { samples: 100_000, seed: 0, hk_tol: 1e-10, max_shell: 40 }
    }
}

/// Character expansion of one face kernel: `(λ, e^{−t c_λ/2N} d_λ^{e_F} ∏ s_λ(w_i))`.
struct FaceKernel {
    orbits: Vec<Vec<Dart>>,
    terms: Vec<(HighestWeight, Complex64)>,
    max_exp: i64,
}

fn face_kernel(g: &SurfaceGraph, f: usize, orbits: Vec<Vec<Dart>>, cfg: &McConfig) -> Result<FaceKernel> {
    let face = &g.faces()[f];
    let rank = g.rank();
    if !(face.area > 0.0) {
        return Err(Error::Precondition(format!("face {} needs a positive area", face.id)));
    }
    let constrained = face
        .constrained_spectra()
        .map(|w| {
            if w.len() != rank {
                return Err(Error::RankMismatch { expected: rank, found: w.len() });
            }
            SchurEvaluator::new(w)
        })
        .collect::<Result<Vec<_>>>()?;
    let arity = (orbits.len() + constrained.len()) as i32;
    let n = rank as f64;
    let mut terms = Vec::new();
    let mut bound_total = 0.0;
    let mut done = false;
    for m in 0..=cfg.max_shell as i64 {
        let mut shell_bound = 0.0;
        for w in weights_in_shell(rank, m) {
            let d = dim_unitary(&w).to_f64().unwrap_or(f64::INFINITY);
            let decay = (-face.area * casimir(&w) as f64 / (2.0 * n)).exp();
            shell_bound += decay * d.powi(face.euler_char as i32 + arity);
            let mut coef = Complex64::new(decay * d.powi(face.euler_char as i32), 0.0);
            for ev in &constrained {
                coef *= ev.eval(&w)?;
            }
            terms.push((w, coef));
        }
        bound_total += shell_bound;
        if m >= 2 && shell_bound < cfg.hk_tol * bound_total {
            done = true;
            break;
        }
    }
    if !done {
        return Err(Error::TruncationExhausted(cfg.max_shell));
    }
    let max_exp = terms.iter().map(|(w, _)| w.max_abs()).max().unwrap_or(0) + rank as i64;
    Ok(FaceKernel { orbits, terms, max_exp })
}

fn holonomy(word: &[Dart], u: &[DMatrix<Complex64>], rank: usize) -> DMatrix<Complex64> {
    let mut h = DMatrix::identity(rank, rank);
    for d in word {
        let g = if d.forward { u[d.edge].clone() } else { u[d.edge].adjoint() };
        h = g * h;
    }
    h
}

/// Monte Carlo estimate of `∫ ∏_ℓ Tr h_ℓ ∏_F p_F dg` with one Haar variable per
/// edge. Faces touching a free boundary carry the constant kernel 1.
pub fn mc_driver_sengupta(g: &SurfaceGraph, cfg: &McConfig) -> Result<McEstimate> {
    let rank = g.rank();
    let loops = if g.edges().is_empty() { Vec::new() } else { g.loops_or_strands()? };
    let mut orbits: Vec<Vec<Vec<Dart>>> = vec![Vec::new(); g.faces().len()];
    for (f, cycle) in g.boundary_cycles()? {
        orbits[f].push(cycle);
    }
    let kernels = g
        .faces()
        .iter()
        .enumerate()
        .filter(|(_, face)| !face.has_free_boundary())
        .map(|(f, _)| face_kernel(g, f, orbits[f].clone(), cfg))
        .collect::<Result<Vec<_>>>()?;
    let edges = g.edges().len();
    let est = run_chunks(cfg.samples, cfg.seed, 1, |rng, out| {
        let u: Vec<DMatrix<Complex64>> = (0..edges).map(|_| haar_unitary(rank, rng)).collect();
        let mut value = Complex64::new(1.0, 0.0);
        for word in &loops {
            value *= holonomy(word, &u, rank).trace();
        }
        for k in &kernels {
            let evs = k
                .orbits
                .iter()
                .map(|o| SchurEvaluator::with_power_table(&unitary_eigenvalues(&holonomy(o, &u, rank))?, k.max_exp))
                .collect::<Result<Vec<_>>>()?;
            let mut p = Complex64::new(0.0, 0.0);
            for (w, coef) in &k.terms {
                let mut t = *coef;
                for ev in &evs {
                    t *= ev.eval(w)?;
                }
                p += t;
            }
            value *= p;
        }
        out[0] = value;
        Ok(())
    })?;
    Ok(est[0])
}

/// `∫ p_t(x) dx` over Haar samples; the exact value is 1.
pub fn mc_heat_kernel_normalization(rank: usize, t: f64, samples: u64, seed: u64) -> Result<McEstimate> {
    let trunc = SeriesTruncation::Shells { rel_tol: 1e-12, max_shell: 60 };
    let est = run_chunks(samples, seed, 1, |rng, out| {
        let x = haar_unitary(rank, rng);
        out[0] = Complex64::new(heat_kernel(t, &unitary_eigenvalues(&x)?, trunc)?.value, 0.0);
        Ok(())
    })?;
    Ok(est[0])
}

/// Entrywise estimate of `∫ x^⊗n (w ψ^T) (x^⊗m)† dx` as an `N^n × N^m` matrix,
/// row-major. With `n = m` this is the Haar average computed by
/// [`super::cs_integral_apply`]; with `n ≠ m` it vanishes.
pub fn mc_tensor_moment(
    n: usize,
    m: usize,
    rank: usize,
    w: &[Complex64],
    psi: &[Complex64],
    samples: u64,
    seed: u64,
) -> Result<Vec<McEstimate>> {
    let (rows, cols) = (rank.pow(n as u32), rank.pow(m as u32));
    if w.len() != rows || psi.len() != cols {
        return Err(Error::Precondition(format!("expected {rows} tensor and {cols} cotensor coefficients")));
    }
    if rows * cols > 6561 {
        return Err(Error::BoundExceeded(format!("{rows}×{cols} moment matrix is too large")));
    }
    let k = DMatrix::from_column_slice(rows, 1, w) * DMatrix::from_row_slice(1, cols, psi);
    run_chunks(samples, seed, rows * cols, |rng, out| {
        let x = haar_unitary(rank, rng);
        let v = tensor_power(&x, n) * &k * tensor_power(&x, m).adjoint();
        for i in 0..rows {
            for j in 0..cols {
                out[i * cols + j] = v[(i, j)];
            }
        }
        Ok(())
    })
}
