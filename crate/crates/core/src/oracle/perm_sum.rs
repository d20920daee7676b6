use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use crate::enumerate::WeightConfiguration;
use crate::error::{Error, Result};
use crate::surface::SurfaceGraph;
use crate::symgroup::{all_perms, count_standard, mn_character, projector, GroupAlgebraElement, Partition, Perm};
use crate::weights::dim_unitary;

/// Default largest face size `n_F` accepted by the permutation sum.
pub const DEFAULT_BOUND: usize = 4;
/// Largest number of edge-permutation tuples visited.
pub const MAX_TUPLES: u128 = 20_000_000;

fn factorial(n: usize) -> BigInt {
    (1..=n as u64).map(BigInt::from).product()
}

fn character_table(shape: &[usize], n: usize) -> HashMap<Perm, i64> {
    all_perms(n).into_iter().map(|p| {
        let c = mn_character(shape, &p.cycle_type()).expect("sizes agree");
        (p, c)
    }).collect()
}

/// `χ^λ(ξ)` for a group-algebra element of the same degree.
fn character_of_element(table: &HashMap<Perm, i64>, xi: &GroupAlgebraElement) -> BigRational {
    xi.coeffs.iter().map(|(p, c)| c * BigRational::from(BigInt::from(table[p]))).sum()
}

/// `F_v(g) = χ^{λ_E}(g · π^{λ_N} π^{λ_W} (n−1 n) π^{λ_S} π^{λ_W})` for every `g ∈ S_n`.
fn vertex_table(p: &[Partition], v: &crate::surface::Vertex, n: usize) -> Result<HashMap<Perm, BigRational>> {
    let proj = |shape: &Partition| -> Result<GroupAlgebraElement> { Ok(projector(shape, n)?.embed(n)) };
    let a = proj(&p[v.north])?
        .mul(&proj(&p[v.west])?)
        .mul(&GroupAlgebraElement::from_perm(Perm::adjacent(n, n)))
        .mul(&proj(&p[v.south])?)
        .mul(&proj(&p[v.west])?);
    let chi = character_table(&p[v.east], n);
    let mut out = HashMap::new();
    for g in all_perms(n) {
        let mut total = BigRational::zero();
        for (tau, coeff) in &a.coeffs {
            total += coeff * BigRational::from(BigInt::from(chi[&g.compose(tau)]));
        }
        out.insert(g, total);
    }
    Ok(out)
}

/// Flat contribution of a non-negative configuration as an explicit sum over
/// one permutation per linear edge, with exact characters and projectors.
///
/// Configurations failing `r_e = l_e + 1` on some edge, or carrying a
/// non-zero weight on a free-boundary face, give 0.
pub fn flat_contribution_perm_sum(g: &SurfaceGraph, c: &WeightConfiguration, bound: usize) -> Result<BigRational> {
    if c.weights().iter().any(|w| w.min_component() < 0) {
        return Err(Error::Precondition("permutation sum needs a non-negative configuration".into()));
    }
    let sizes: Vec<usize> = c.weights().iter().map(|w| w.size() as usize).collect();
    if let Some(&m) = sizes.iter().max() {
        if m > bound {
            return Err(Error::BoundExceeded(format!("face size {m} exceeds the permutation-sum bound {bound}")));
        }
    }
    if g.faces().iter().zip(c.weights()).any(|(f, w)| f.has_free_boundary() && !w.is_zero()) {
        return Ok(BigRational::zero());
    }
    if g.edges().iter().any(|e| sizes[e.right] != sizes[e.left] + 1) {
        return Ok(BigRational::zero());
    }
    let parts: Vec<Partition> = c.weights().iter().map(|w| w.partition()).collect::<Result<_>>()?;
    let sym: Vec<BigInt> = parts.iter().map(|p| BigInt::from(count_standard(p))).collect();
    let uni: Vec<BigInt> = c.weights().iter().map(dim_unitary).collect();

    let mut pre = BigRational::one();
    for (f, face) in g.faces().iter().enumerate() {
        pre *= Pow::pow(BigRational::from(uni[f].clone()), face.euler_char as i32);
        pre /= BigRational::from(Pow::pow(&sym[f], face.external_boundaries as u32));
    }
    for v in g.vertices() {
        pre *= BigRational::from(uni[v.east].clone());
    }
    for e in g.edges() {
        let r = sizes[e.right];
        pre *= BigRational::new(sym[e.right].clone(), &uni[e.right] * factorial(r));
        if !e.is_linear() {
            let pl = projector(&parts[e.left], r)?.embed(r);
            let chi = character_of_element(&character_table(&parts[e.right], r), &pl);
            pre *= BigRational::from(factorial(r) * &uni[e.right]) * chi;
        }
    }
    if pre.is_zero() {
        return Ok(pre);
    }

    let tables: Vec<HashMap<Perm, BigRational>> = g
        .vertices()
        .iter()
        .map(|v| vertex_table(&parts, v, sizes[v.east]))
        .collect::<Result<_>>()?;

    let linear: Vec<usize> = (0..g.edges().len()).filter(|&e| g.edges()[e].is_linear()).collect();
    let slot: HashMap<usize, usize> = linear.iter().enumerate().map(|(k, &e)| (e, k)).collect();
    let tuples: u128 = linear.iter().map(|&e| (1..=sizes[g.edges()[e].right] as u128).product::<u128>()).product();
    if tuples > MAX_TUPLES {
        return Err(Error::BoundExceeded(format!("{tuples} permutation tuples exceed the limit {MAX_TUPLES}")));
    }
    // Per edge: its permutations, embedded into the sizes of both endpoints.
    let choices: Vec<Vec<Perm>> = linear.iter().map(|&e| all_perms(sizes[g.edges()[e].right])).collect();

    let mut total = BigRational::zero();
    let mut idx = vec![0usize; linear.len()];
    loop {
        let mut term = BigRational::one();
        for (k, v) in g.vertices().iter().enumerate() {
            let n = sizes[v.east];
            let pick = |e: usize| choices[slot[&e]][idx[slot[&e]]].embed(n);
            let word = pick(v.sw).compose(&pick(v.se)).compose(&pick(v.ne).inverse()).compose(&pick(v.nw).inverse());
            let f = &tables[k][&word];
            if f.is_zero() {
                term = BigRational::zero();
                break;
            }
            term *= f;
        }
        total += term;
        // Advance the mixed-radix counter.
        let mut k = 0;
        loop {
            if k == idx.len() {
                return Ok(pre * total);
            }
            idx[k] += 1;
            if idx[k] < choices[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}
