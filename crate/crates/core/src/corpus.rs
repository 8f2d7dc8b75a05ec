//! Seeded random defining-set corpus for cross-validating the checkers.
//!
//! Columns are drawn uniformly from the nonzero vectors (so the counting
//! identity applies to every sample) and a sample is redrawn until it has
//! full rank. The generator is `ChaCha8` behind a fixed seed, so a corpus
//! is reproducible across platforms and `selftest` runs.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::codes::DefiningSet;
use crate::gf::{make_field_from_order, FieldSpec};
use crate::linalg::Vector;

#[derive(Debug, Clone)]
pub struct CorpusParams {
    pub seed: u64,
    /// Minimum total number of samples; rounded up to a multiple of the
    /// `(q, k)` grid size.
    pub samples: usize,
    pub qs: Vec<u64>,
    pub ks: Vec<usize>,
    /// Lengths are drawn uniformly from `[k, n_max]`.
    pub n_max: usize,
}

impl Default for CorpusParams {
    fn default() -> Self {
        CorpusParams {
            seed: 0xC0DE5,
            samples: 200,
            qs: vec![2, 3, 4],
            ks: vec![2, 3, 4],
            n_max: 10,
        }
    }
}

/// One random full-rank defining set with nonzero columns.
pub fn random_defining_set<R: Rng>(
    rng: &mut R,
    field: &Arc<FieldSpec>,
    k: usize,
    n: usize,
) -> DefiningSet {
    let q = field.q();
    loop {
        let columns: Vec<Vector> = (0..n)
            .map(|_| {
                let coords: Vec<u64> = loop {
                    let cand: Vec<u64> = (0..k).map(|_| rng.random_range(0..q)).collect();
                    if cand.iter().any(|&c| c != 0) {
                        break cand;
                    }
                };
                Vector::from_ints(&coords, field).expect("coordinates in range")
            })
            .collect();
        let d = DefiningSet::new(columns).expect("n >= k by construction");
        if d.validate_code().is_ok() {
            return d;
        }
    }
}

/// The deterministic corpus: at least `params.samples` sets, cycling
/// evenly through the `(q, k)` grid.
pub fn generate(params: &CorpusParams) -> Vec<DefiningSet> {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let grid: Vec<(u64, usize)> = params
        .qs
        .iter()
        .flat_map(|&q| params.ks.iter().map(move |&k| (q, k)))
        .collect();
    let per_cell = params.samples.div_ceil(grid.len());
    let mut out = Vec::with_capacity(per_cell * grid.len());
    for &(q, k) in &grid {
        let field = make_field_from_order(q).expect("corpus orders are prime powers");
        for _ in 0..per_cell {
            let n = rng.random_range(k..=params.n_max.max(k));
            out.push(random_defining_set(&mut rng, &field, k, n));
        }
    }
    out
}
