use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use super::haar::unitary_eigenvalues;
use crate::error::{Error, Result};
use crate::evaluate::schur_eval;
use crate::symgroup::{all_perms, mn_character, normalize, partitions, projector, GroupAlgebraElement, Perm};
use crate::weights::{dim_unitary, HighestWeight};

/// Largest tensor power accepted by the trace checks.
pub const TRACE_MAX_N: usize = 4;
/// Largest rank accepted by the trace checks and the integral formula.
pub const TENSOR_MAX_RANK: usize = 3;
/// Largest rank accepted by [`char_trace_check`], which needs `N ≥ n`.
pub const CHAR_MAX_RANK: usize = 4;
/// Largest tensor power accepted by [`cs_integral_apply`].
pub const CS_MAX_N: usize = 3;

fn guard(n: usize, rank: usize, max_n: usize) -> Result<usize> {
    guard_with(n, rank, max_n, TENSOR_MAX_RANK)
}

fn guard_with(n: usize, rank: usize, max_n: usize, max_rank: usize) -> Result<usize> {
    if n > max_n || rank > max_rank || rank == 0 {
        return Err(Error::BoundExceeded(format!(
            "tensor space (C^{rank})^⊗{n} outside n ≤ {max_n}, 1 ≤ N ≤ {max_rank}"
        )));
    }
    Ok(rank.pow(n as u32))
}

fn digits(mut index: usize, n: usize, rank: usize) -> Vec<usize> {
    let mut out = vec![0; n];
    for k in (0..n).rev() {
        out[k] = index % rank;
        index /= rank;
    }
    out
}

fn undigits(d: &[usize], rank: usize) -> usize {
    d.iter().fold(0, |acc, &i| acc * rank + i)
}

/// `σ(v_1 ⊗ … ⊗ v_n) = v_{σ⁻¹(1)} ⊗ … ⊗ v_{σ⁻¹(n)}` on `(C^N)^⊗n`.
/// The first tensor factor is the most significant digit, as in a Kronecker product.
pub fn permutation_action(sigma: &Perm, rank: usize) -> DMatrix<Complex64> {
    let n = sigma.degree();
    let dim = rank.pow(n as u32);
    let inv = sigma.inverse();
    let mut m = DMatrix::zeros(dim, dim);
    for col in 0..dim {
        let i = digits(col, n, rank);
        let j: Vec<usize> = (0..n).map(|k| i[inv.apply(k)]).collect();
        m[(undigits(&j, rank), col)] = Complex64::new(1.0, 0.0);
    }
    m
}

pub fn group_algebra_action(xi: &GroupAlgebraElement, rank: usize) -> DMatrix<Complex64> {
    let dim = rank.pow(xi.degree as u32);
    let mut m = DMatrix::zeros(dim, dim);
    for (p, c) in &xi.coeffs {
        m += permutation_action(p, rank) * Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0);
    }
    m
}

/// `x^⊗n`.
pub fn tensor_power(x: &DMatrix<Complex64>, n: usize) -> DMatrix<Complex64> {
    let mut out = DMatrix::from_element(1, 1, Complex64::new(1.0, 0.0));
    for _ in 0..n {
        out = out.kronecker(x);
    }
    out
}

/// `(s_λ(x), Tr(x^⊗n π^λ) / d^λ)`.
pub fn schur_trace_check(lambda: &[usize], x: &DMatrix<Complex64>) -> Result<(Complex64, Complex64)> {
    let shape = normalize(lambda)?;
    let n: usize = shape.iter().sum();
    let rank = x.nrows();
    guard(n, rank, TRACE_MAX_N)?;
    let lhs = if shape.len() > rank {
        Complex64::zero()
    } else {
        schur_eval(&HighestWeight::from_partition(&shape, rank)?, &unitary_eigenvalues(x)?)?
    };
    let pi = group_algebra_action(&projector(&shape, n)?, rank);
    let sym_dim = mn_character(&shape, &vec![1; n])? as f64;
    let rhs = (tensor_power(x, n) * pi).trace() / sym_dim;
    Ok((lhs, rhs))
}

/// `(χ^λ(ξ), Tr(π^λ ξ) / d_λ)` on `(C^N)^⊗n`; needs `N ≥ n`.
pub fn char_trace_check(lambda: &[usize], xi: &GroupAlgebraElement, rank: usize) -> Result<(f64, f64)> {
    let shape = normalize(lambda)?;
    let n: usize = shape.iter().sum();
    if xi.degree != n {
        return Err(Error::Precondition(format!("element of S_{} against a shape of size {n}", xi.degree)));
    }
    if rank < n {
        return Err(Error::Precondition(format!("char_trace_check needs N ≥ n, got N = {rank}, n = {n}")));
    }
    guard_with(n, rank, TRACE_MAX_N, CHAR_MAX_RANK)?;
    let mut lhs = 0.0;
    for (p, c) in &xi.coeffs {
        lhs += c.to_f64().unwrap_or(f64::NAN) * mn_character(&shape, &p.cycle_type())? as f64;
    }
    let m = group_algebra_action(&projector(&shape, n)?, rank) * group_algebra_action(xi, rank);
    let d = dim_unitary(&HighestWeight::from_partition(&shape, rank)?).to_f64().unwrap_or(f64::NAN);
    Ok((lhs, m.trace().re / d))
}

/// `∫ x^⊗n (w ⊗ ψ) (x^⊗n)† dx = Σ_λ (d^λ/d_λ)(1/n!) Σ_σ ⟨ψ, σ⁻¹w⟩ π^λ σ`
/// as an `N^n × N^n` matrix, with `λ` over partitions of `n` with at most `N` rows.
pub fn cs_integral_apply(n: usize, rank: usize, w: &[Complex64], psi: &[Complex64]) -> Result<DMatrix<Complex64>> {
    let dim = guard(n, rank, CS_MAX_N)?;
    if w.len() != dim || psi.len() != dim {
        return Err(Error::Precondition(format!("tensors must have {dim} coefficients")));
    }
    let psi_row = DMatrix::from_row_slice(1, dim, psi);
    let w_col = DMatrix::from_column_slice(dim, 1, w);
    let fact: f64 = (1..=n).map(|k| k as f64).product();
    let perms = all_perms(n);
    let actions: Vec<DMatrix<Complex64>> = perms.iter().map(|p| permutation_action(p, rank)).collect();
    let mut out = DMatrix::zeros(dim, dim);
    for shape in partitions(n).into_iter().filter(|p| p.len() <= rank) {
        let d_sym = mn_character(&shape, &vec![1; n])? as f64;
        let d_uni = dim_unitary(&HighestWeight::from_partition(&shape, rank)?).to_f64().unwrap_or(f64::NAN);
        let pi = group_algebra_action(&projector(&shape, n)?, rank);
        let mut inner = DMatrix::zeros(dim, dim);
        for (p, a) in perms.iter().zip(&actions) {
            let a_inv = permutation_action(&p.inverse(), rank);
            let pairing = (&psi_row * a_inv * &w_col)[(0, 0)];
            inner += a * pairing;
        }
        out += pi * inner * Complex64::new(d_sym / (d_uni * fact), 0.0);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::haar::haar_unitary;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn action_is_a_homomorphism() {
        let perms = all_perms(3);
        for a in &perms {
            for b in &perms {
                let lhs = permutation_action(&a.compose(b), 2);
                let rhs = permutation_action(a, 2) * permutation_action(b, 2);
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn action_moves_factors() {
        // (1 2) on e_0 ⊗ e_1 gives e_1 ⊗ e_0.
        let s = Perm::transposition(2, 0, 1);
        let m = permutation_action(&s, 2);
        assert_eq!(m[(undigits(&[1, 0], 2), undigits(&[0, 1], 2))], c(1.0));
    }

    #[test]
    fn schur_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let x = haar_unitary(3, &mut rng);
        let (l, r) = schur_trace_check(&[1], &x).unwrap();
        assert!((l - x.trace()).norm() < 1e-10 && (r - x.trace()).norm() < 1e-10);

        let (a, b) = (Complex64::from_polar(1.0, 0.4), Complex64::from_polar(1.0, -1.1));
        let d = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![a, b]));
        let want = a * a + a * b + b * b;
        let (l, r) = schur_trace_check(&[2], &d).unwrap();
        assert!((l - want).norm() < 1e-12 && (r - want).norm() < 1e-12);

        let (l, r) = schur_trace_check(&[1, 1], &DMatrix::identity(3, 3)).unwrap();
        assert!((l - 3.0).norm() < 1e-12 && (r - 3.0).norm() < 1e-12);
    }

    #[test]
    fn too_many_rows_give_zero_on_both_sides() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let x = haar_unitary(2, &mut rng);
        let (l, r) = schur_trace_check(&[1, 1, 1], &x).unwrap();
        assert!(l.norm() < 1e-12 && r.norm() < 1e-10);
    }

    #[test]
    fn char_examples() {
        let (l, r) = char_trace_check(&[2, 1], &GroupAlgebraElement::identity(3), 3).unwrap();
        assert!((l - 2.0).abs() < 1e-12 && (r - 2.0).abs() < 1e-10);
        let s = GroupAlgebraElement::from_perm(Perm::transposition(2, 0, 1));
        let (l, r) = char_trace_check(&[2], &s, 2).unwrap();
        assert!((l - 1.0).abs() < 1e-12 && (r - 1.0).abs() < 1e-10);
        let p = projector(&[1, 1], 2).unwrap();
        let (l, r) = char_trace_check(&[2], &p, 2).unwrap();
        assert!(l.abs() < 1e-12 && r.abs() < 1e-10);
        assert!(char_trace_check(&[1, 1, 1], &GroupAlgebraElement::identity(3), 2).is_err());
    }

    #[test]
    fn char_check_on_random_elements() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        use rand::Rng;
        for n in 1..=4 {
            for shape in partitions(n) {
                let mut xi = GroupAlgebraElement::zero(n);
                for p in all_perms(n) {
                    xi.coeffs.insert(p, BigRational::new(BigInt::from(rng.gen_range(-5..=5)), BigInt::from(7)));
                }
                let (l, r) = char_trace_check(&shape, &xi, n.max(1)).unwrap();
                assert!((l - r).abs() < 1e-10, "{shape:?}: {l} vs {r}");
            }
        }
    }

    #[test]
    fn size_guards() {
        let x = DMatrix::<Complex64>::identity(4, 4);
        assert!(matches!(schur_trace_check(&[1], &x), Err(Error::BoundExceeded(_))));
        assert!(matches!(cs_integral_apply(4, 2, &[c(0.0); 16], &[c(0.0); 16]), Err(Error::BoundExceeded(_))));
    }

    #[test]
    fn cs_degree_one_is_trace_over_rank() {
        let w = [c(1.0), c(2.0), Complex64::new(0.0, 1.0)];
        let psi = [c(0.5), c(-1.0), c(3.0)];
        let m = cs_integral_apply(1, 3, &w, &psi).unwrap();
        let pairing: Complex64 = w.iter().zip(&psi).map(|(a, b)| a * b).sum();
        assert!((m - DMatrix::identity(3, 3) * (pairing / 3.0)).norm() < 1e-12);
    }

    #[test]
    fn cs_fourth_moment_of_an_entry() {
        // ∫ |x_11|^4 = <e_1⊗e_1, X (e_1⊗e_1)(e_1⊗e_1)^T X† e_1⊗e_1> = 2/(N(N+1)).
        for rank in 1..=3usize {
            let dim = rank * rank;
            let mut e = vec![c(0.0); dim];
            e[0] = c(1.0);
            let m = cs_integral_apply(2, rank, &e, &e).unwrap();
            let want = 2.0 / (rank * (rank + 1)) as f64;
            assert!((m[(0, 0)].re - want).abs() < 1e-12, "N={rank}");
        }
    }
}
