use std::collections::HashMap;

use nalgebra::DMatrix;

use super::perm::Perm;
use super::tableau::{added_row, normalize, partition_size, standard_tableaux, Partition, StandardTableau};
use crate::error::{Error, Result};

/// Young's orthogonal form of the irreducible `S_n`-module of a shape.
///
/// `(k−1 k) v_T = r⁻¹ v_T + √(1 − r⁻²) v_{(k−1 k)T}` with
/// `r = c_T(k) − c_T(k−1)`, the second term dropped when the swapped
/// filling is not standard.
#[derive(Clone, Debug)]
pub struct OrthogonalRep {
    shape: Partition,
    tableaux: Vec<StandardTableau>,
    index: HashMap<StandardTableau, usize>,
    generators: Vec<DMatrix<f64>>,
}

impl OrthogonalRep {
    pub fn new(shape: &[usize]) -> Result<Self> {
        let shape = normalize(shape)?;
        let tableaux = standard_tableaux(&shape)?;
        let index: HashMap<_, _> = tableaux.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
        let n = partition_size(&shape);
        let d = tableaux.len();
        let mut generators = Vec::with_capacity(n.saturating_sub(1));
        for k in 2..=n {
            let mut m = DMatrix::zeros(d, d);
            for (i, t) in tableaux.iter().enumerate() {
                let r = (t.content(k) - t.content(k - 1)) as f64;
                m[(i, i)] = 1.0 / r;
                if let Some(s) = t.swapped(k) {
                    m[(index[&s], i)] = (1.0 - 1.0 / (r * r)).sqrt();
                }
            }
            generators.push(m);
        }
        Ok(Self { shape, tableaux, index, generators })
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn degree(&self) -> usize {
        partition_size(&self.shape)
    }

    pub fn dim(&self) -> usize {
        self.tableaux.len()
    }

    pub fn tableaux(&self) -> &[StandardTableau] {
        &self.tableaux
    }

    pub fn index_of(&self, t: &StandardTableau) -> Option<usize> {
        self.index.get(t).copied()
    }

    /// Matrix of `(k−1 k)`, `2 ≤ k ≤ n`.
    pub fn generator(&self, k: usize) -> &DMatrix<f64> {
        &self.generators[k - 2]
    }

    /// `ρ(σ)` for `σ ∈ S_m`, `m ≤ n`, acting through `S_m ⊂ S_n`.
    pub fn matrix(&self, sigma: &Perm) -> DMatrix<f64> {
        assert!(sigma.degree() <= self.degree().max(1), "permutation degree exceeds shape size");
        let mut m = DMatrix::identity(self.dim(), self.dim());
        for i in sigma.adjacent_word() {
            m *= &self.generators[i];
        }
        m
    }

    /// `ρ(σ)` for every `σ ∈ S_n`, grown breadth-first along generators.
    pub fn all_matrices(&self) -> HashMap<Perm, DMatrix<f64>> {
        let n = self.degree();
        let id = Perm::identity(n);
        let mut out = HashMap::new();
        out.insert(id.clone(), DMatrix::identity(self.dim(), self.dim()));
        let mut frontier = vec![id];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for p in frontier {
                for k in 2..=n {
                    let q = p.compose(&Perm::adjacent(n, k));
                    if !out.contains_key(&q) {
                        let m = &out[&p] * self.generator(k);
                        out.insert(q.clone(), m);
                        next.push(q);
                    }
                }
            }
            frontier = next;
        }
        out
    }

    /// `X_k = (1 k) + ⋯ + (k−1 k)`.
    pub fn jm_matrix(&self, k: usize) -> DMatrix<f64> {
        let n = self.degree();
        let mut m = DMatrix::zeros(self.dim(), self.dim());
        for j in 1..k {
            m += self.matrix(&Perm::transposition(n, j - 1, k - 1));
        }
        m
    }
}

/// The 0/1 isometry `V^λ → V^µ` sending `v_T` to `v_{S(T,µ)}`, where
/// `S(T,µ)` appends `n` in the box `µ/λ`.
pub fn intertwiner(mu: &[usize], lambda: &[usize]) -> Result<DMatrix<f64>> {
    let mu = normalize(mu)?;
    let lambda = normalize(lambda)?;
    let row = added_row(&lambda, &mu)
        .ok_or_else(|| Error::NotExtension(format!("{mu:?}"), format!("{lambda:?}")))?;
    let big = OrthogonalRep::new(&mu)?;
    let small = standard_tableaux(&lambda)?;
    let mut m = DMatrix::zeros(big.dim(), small.len());
    for (j, t) in small.iter().enumerate() {
        let s = t.appended(row).expect("appending the added box stays standard");
        m[(big.index_of(&s).expect("tableau of shape mu"), j)] = 1.0;
    }
    Ok(m)
}
