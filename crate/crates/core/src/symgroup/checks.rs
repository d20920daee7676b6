use nalgebra::DMatrix;

use super::character::{character_in, mn_character};
use super::perm::all_perms;
use super::rep::{intertwiner, OrthogonalRep};
use super::scalar::{all_diamonds, scalar_a_closed, scalar_a_matrix};
use super::tableau::{add_box, partitions, remove_box, standard_tableaux};

/// Outcome of one invariant family over all shapes up to `max_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub name: &'static str,
    pub max_n: usize,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn dev(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    (a - b).abs().max()
}

pub fn check_coxeter(max_n: usize) -> CheckReport {
    let mut r = CheckReport { name: "coxeter_relations", max_n, cases: 0, failures: Vec::new() };
    for n in 1..=max_n {
        for p in partitions(n) {
            let rep = OrthogonalRep::new(&p).expect("partition");
            let id = DMatrix::identity(rep.dim(), rep.dim());
            for k in 2..=n {
                let s = rep.generator(k);
                r.cases += 1;
                if dev(&(s * s), &id) > 1e-12 {
                    r.failures.push(format!("{p:?}: s_{k}^2 != 1"));
                }
                for j in k + 1..=n {
                    let t = rep.generator(j);
                    r.cases += 1;
                    let bad = if j == k + 1 { dev(&(s * t * s), &(t * s * t)) } else { dev(&(s * t), &(t * s)) };
                    if bad > 1e-12 {
                        r.failures.push(format!("{p:?}: braid relation for s_{k}, s_{j}"));
                    }
                }
            }
        }
    }
    r
}

pub fn check_jucys_murphy(max_n: usize) -> CheckReport {
    let mut r = CheckReport { name: "jucys_murphy_diagonal", max_n, cases: 0, failures: Vec::new() };
    for n in 1..=max_n {
        for p in partitions(n) {
            let rep = OrthogonalRep::new(&p).expect("partition");
            for k in 1..=n {
                r.cases += 1;
                let x = rep.jm_matrix(k);
                let want = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
                    rep.dim(),
                    rep.tableaux().iter().map(|t| t.content(k) as f64),
                ));
                if dev(&x, &want) > 1e-10 {
                    r.failures.push(format!("{p:?}: X_{k}"));
                }
            }
        }
    }
    r
}

pub fn check_branching(max_n: usize) -> CheckReport {
    let mut r = CheckReport { name: "branching_dimensions", max_n, cases: 0, failures: Vec::new() };
    for n in 1..=max_n {
        for mu in partitions(n) {
            r.cases += 1;
            let lhs = standard_tableaux(&mu).expect("partition").len();
            let rhs: usize = remove_box(&mu).iter().map(|(l, _)| standard_tableaux(l).expect("partition").len()).sum();
            if lhs != rhs {
                r.failures.push(format!("{mu:?}: {lhs} != {rhs}"));
            }
        }
    }
    r
}

pub fn check_characters(max_n: usize) -> CheckReport {
    let mut r = CheckReport { name: "character_integrality", max_n, cases: 0, failures: Vec::new() };
    for n in 1..=max_n {
        let perms = all_perms(n);
        for p in partitions(n) {
            let rep = OrthogonalRep::new(&p).expect("partition");
            for s in &perms {
                r.cases += 1;
                let want = mn_character(&p, &s.cycle_type()).expect("sizes agree");
                match character_in(&rep, s) {
                    Ok(c) if c == want => {}
                    Ok(c) => r.failures.push(format!("{p:?} at {s}: trace {c}, rule {want}")),
                    Err(e) => r.failures.push(format!("{p:?} at {s}: {e}")),
                }
            }
        }
    }
    r
}

pub fn check_intertwiners(max_n: usize) -> CheckReport {
    let mut r = CheckReport { name: "intertwiner_restriction", max_n, cases: 0, failures: Vec::new() };
    for n in 2..=max_n {
        for lambda in partitions(n - 1) {
            let small = OrthogonalRep::new(&lambda).expect("partition");
            for (mu, _) in add_box(&lambda) {
                let big = OrthogonalRep::new(&mu).expect("partition");
                let i = intertwiner(&mu, &lambda).expect("extension");
                for k in 2..n {
                    r.cases += 1;
                    if dev(&(i.transpose() * big.generator(k) * &i), small.generator(k)) > 1e-10 {
                        r.failures.push(format!("{mu:?} over {lambda:?}: generator {k}"));
                    }
                }
            }
        }
    }
    r
}

pub fn check_scalar_a(max_n: usize) -> CheckReport {
    let mut r = CheckReport { name: "crossing_scalar", max_n, cases: 0, failures: Vec::new() };
    for d in all_diamonds(max_n) {
        r.cases += 1;
        match (scalar_a_matrix(&d), scalar_a_closed(&d)) {
            (Ok(m), Ok(c)) if (m - c.value()).abs() <= 1e-10 => {}
            (Ok(m), Ok(c)) => r.failures.push(format!("{d:?}: matrix {m}, closed {}", c.value())),
            (Err(e), _) | (_, Err(e)) => r.failures.push(format!("{d:?}: {e}")),
        }
    }
    r
}

/// The whole invariant suite with a common size bound.
pub fn run_symcheck(max_n: usize) -> Vec<CheckReport> {
    vec![
        check_coxeter(max_n),
        check_jucys_murphy(max_n),
        check_branching(max_n),
        check_characters(max_n),
        check_intertwiners(max_n),
        check_scalar_a(max_n),
    ]
}
