//! Orthogonal representations of symmetric groups and the invariant suite.

use ym2d::symgroup::{character, mn_character, run_symcheck, scalar_a_closed, scalar_a_matrix, Diamond, OrthogonalRep, Perm};

fn main() -> ym2d::Result<()> {
    let rep = OrthogonalRep::new(&[2, 1])?;
    println!("(2,1): dimension {}, tableaux {:?}", rep.dim(), rep.tableaux().iter().map(|t| t.filling()).collect::<Vec<_>>());
    println!("generator (2 3):\n{}", rep.generator(3));
    let c = Perm::from_images(vec![1, 2, 0, 4, 3]).expect("valid images");
    println!("χ^(3,2)({c}) = {} = {}", character(&[3, 2], &c)?, mn_character(&[3, 2], &c.cycle_type())?);

    let d = Diamond::new(&[1], &[2], &[1, 1], &[2, 1])?;
    let closed = scalar_a_closed(&d)?;
    println!("scalar a: matrix {:.12}, closed form {:.12} (cos {})", scalar_a_matrix(&d)?, closed.value(), closed.cos);

    for r in run_symcheck(6) {
        println!("{:<14} {:>6} cases  {}", r.name, r.cases, if r.passed() { "pass" } else { "FAIL" });
    }
    Ok(())
}
