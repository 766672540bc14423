//! Batch evaluation over grids of weights and lists of modules.

use crate::error::Result;
use crate::exec::Strategy;
use crate::repthy::{adjoint_multiplicity_by_decomposition, prv_adjoint_multiplicity};
use crate::rootsys::{RootSystem, Weight};
use crate::twistblocks::{ext_dim, spectral_character, EvalModuleDescriptor, OrbitSpace, SpectralCharacter};

/// All dominant weights with every coordinate in `0..=max`, in
/// lexicographic order.
pub fn dominant_box(rank: usize, max: i64) -> Vec<Weight> {
    let mut out: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..rank {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..=max).map(move |c| {
                    let mut v = w.clone();
                    v.push(c);
                    v
                })
            })
            .collect();
    }
    out.into_iter().map(Weight::new).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjointComparison {
    pub lam: Weight,
    pub mu: Weight,
    pub prv: u64,
    pub decomposition: u64,
}

impl AdjointComparison {
    pub fn agrees(&self) -> bool {
        self.prv == self.decomposition
    }
}

/// Adjoint multiplicity by the PRV reduction and by Klimyk decomposition
/// for every pair of dominant weights in the box `0..=max`.
pub fn adjoint_multiplicity_grid(
    rs: &RootSystem,
    max: i64,
    strategy: Strategy,
) -> Result<Vec<AdjointComparison>> {
    let grid = dominant_box(rs.rank(), max);
    let pairs: Vec<(Weight, Weight)> = grid
        .iter()
        .flat_map(|l| grid.iter().map(move |m| (l.clone(), m.clone())))
        .collect();
    strategy
        .map(&pairs, |(lam, mu)| {
            Ok(AdjointComparison {
                lam: lam.clone(),
                mu: mu.clone(),
                prv: prv_adjoint_multiplicity(rs, lam, mu)?,
                decomposition: adjoint_multiplicity_by_decomposition(rs, lam, mu)?,
            })
        })
        .into_iter()
        .collect()
}

/// `ext_dim(modules[i], modules[j])` for all `i, j`.
pub fn ext_matrix(
    rs: &RootSystem,
    ospace: &OrbitSpace,
    modules: &[EvalModuleDescriptor],
    strategy: Strategy,
) -> Result<Vec<Vec<u64>>> {
    let rows = strategy.map(modules, |e| {
        modules
            .iter()
            .map(|f| ext_dim(rs, ospace, e, f))
            .collect::<Result<Vec<u64>>>()
    });
    rows.into_iter().collect()
}

pub fn spectral_characters(
    rs: &RootSystem,
    ospace: &OrbitSpace,
    modules: &[EvalModuleDescriptor],
    strategy: Strategy,
) -> Result<Vec<SpectralCharacter>> {
    strategy
        .map(modules, |m| spectral_character(rs, ospace, m))
        .into_iter()
        .collect()
}
