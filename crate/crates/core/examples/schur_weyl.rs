//! Schur functions and characters as traces on tensor powers, and the Haar
//! integral of `x^⊗n` against its closed formula.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use ym2d::oracle::{char_trace_check, cs_integral_apply, haar_unitary, mc_tensor_moment, schur_trace_check};
use ym2d::symgroup::{partitions, projector};

fn main() -> ym2d::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let x = haar_unitary(3, &mut rng);
    for n in 1..=4 {
        for shape in partitions(n) {
            let (lhs, rhs) = schur_trace_check(&shape, &x)?;
            println!("s_{shape:?}: {lhs:.6} vs trace {rhs:.6}");
        }
    }
    for shape in partitions(3) {
        let (lhs, rhs) = char_trace_check(&[2, 1], &projector(&shape, 3)?, 3)?;
        println!("χ^(2,1)(π^{shape:?}) = {lhs:.6}, trace form {rhs:.6}");
    }

    let mut e = vec![Complex64::new(0.0, 0.0); 4];
    e[0] = Complex64::new(1.0, 0.0);
    let exact = cs_integral_apply(2, 2, &e, &e)?;
    let mc = mc_tensor_moment(2, 2, 2, &e, &e, 50_000, 3)?;
    println!("∫|x_11|^4 over U(2): formula {:.6}, MC {:.6} ± {:.6}", exact[(0, 0)].re, mc[0].mean.re, mc[0].stderr_re);
    Ok(())
}
