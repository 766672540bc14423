use std::collections::{BTreeSet, HashMap, VecDeque};
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::repthy::prv_unchecked;
use crate::rootsys::{RootSystem, TypeLetter, Weight};
use crate::sweep::dominant_box;

use super::module::{spectral_character, CanonicalSection, EvalModuleDescriptor};
use super::orbit::OrbitSpace;

/// `dim Ext¹(E, F)` between simple evaluation modules of a twisted form.
///
/// Sections that differ on two or more orbits have no extensions. If they
/// differ on exactly one orbit `M`, the dimension is `c(λ_M, μ_M) · d_M`
/// with a missing weight read as zero. Equal sections contribute
/// `Σ_M c(λ_M, λ_M) · d_M` over the support; twisted forms are perfect, so
/// no correction from the abelianization appears.
pub fn ext_dim(
    rs: &RootSystem,
    ospace: &OrbitSpace,
    e: &EvalModuleDescriptor,
    f: &EvalModuleDescriptor,
) -> Result<u64> {
    let e = e.canonical(rs, ospace)?;
    let f = f.canonical(rs, ospace)?;
    Ok(ext_dim_canonical(rs, ospace, &e, &f))
}

pub(crate) fn ext_dim_canonical(
    rs: &RootSystem,
    ospace: &OrbitSpace,
    e: &CanonicalSection,
    f: &CanonicalSection,
) -> u64 {
    let zero = Weight::zero(rs.rank());
    let orbits: BTreeSet<usize> = e.support().chain(f.support()).collect();
    let differing: Vec<usize> = orbits
        .iter()
        .copied()
        .filter(|&o| e.get(o) != f.get(o))
        .collect();
    match differing.as_slice() {
        [] => orbits
            .iter()
            .map(|&o| {
                let lam = e.get(o).unwrap_or(&zero);
                prv_unchecked(rs, lam, lam) * ospace.cotangent_dim(o) as u64
            })
            .sum(),
        [o] => {
            let lam = e.get(*o).unwrap_or(&zero);
            let mu = f.get(*o).unwrap_or(&zero);
            prv_unchecked(rs, lam, mu) * ospace.cotangent_dim(*o) as u64
        }
        _ => 0,
    }
}

/// Whether `E` and `F` have the same spectral character.
pub fn same_block(
    rs: &RootSystem,
    ospace: &OrbitSpace,
    e: &EvalModuleDescriptor,
    f: &EvalModuleDescriptor,
) -> Result<bool> {
    Ok(spectral_character(rs, ospace, e)? == spectral_character(rs, ospace, f)?)
}

/// Breadth-first search for a chain `E = T⁰, …, Tᴺ = F` of simple modules
/// with a nonzero Ext¹ (in either direction) between consecutive terms,
/// over modules supported on `supp E ∪ supp F` with coordinates at most
/// `weight_bound`.
///
/// Every Ext-adjacent pair differs on at most one orbit, so a chain merging
/// two characters never needs to pass through a new orbit.
pub fn linkage_chain(
    rs: &RootSystem,
    ospace: &OrbitSpace,
    e: &EvalModuleDescriptor,
    f: &EvalModuleDescriptor,
    weight_bound: i64,
) -> Result<Option<Vec<EvalModuleDescriptor>>> {
    linkage_chain_in_window(rs, ospace, e, f, weight_bound, &[])
}

/// [`linkage_chain`] with extra orbits (given by any of their points) added
/// to the search window.
pub fn linkage_chain_in_window(
    rs: &RootSystem,
    ospace: &OrbitSpace,
    e: &EvalModuleDescriptor,
    f: &EvalModuleDescriptor,
    weight_bound: i64,
    extra_points: &[&str],
) -> Result<Option<Vec<EvalModuleDescriptor>>> {
    let ec = e.canonical(rs, ospace)?;
    let fc = f.canonical(rs, ospace)?;
    let max = e.max_coordinate().max(f.max_coordinate());
    if weight_bound < max || weight_bound < 0 {
        return Err(Error::BoundTooSmall {
            bound: weight_bound,
            max,
        });
    }
    if ec == fc {
        return Ok(Some(vec![ec.to_descriptor(ospace)]));
    }

    let mut window: BTreeSet<usize> = ec.support().chain(fc.support()).collect();
    for p in extra_points {
        window.insert(ospace.orbit_id(p)?);
    }
    let window: Vec<usize> = window.into_iter().collect();

    let graph = WeightGraph::cached(rs, weight_bound);
    let radix = graph.weights.len() as u64;
    let too_large = || Error::Inconsistent(format!("linkage window of {} orbits is too large", window.len()));
    radix
        .checked_pow(window.len() as u32)
        .ok_or_else(too_large)?;
    // a state is the window's weights as mixed-radix digits
    let encode = |s: &CanonicalSection| -> u64 {
        window.iter().rev().fold(0, |acc, &o| {
            let w = s.get(o).map(|w| w.coords()).unwrap_or(&graph.zero);
            acc * radix + graph.index_of(w) as u64
        })
    };
    let digit = |state: u64, pos: usize| (state / radix.pow(pos as u32) % radix) as usize;
    let start = encode(&ec);
    let goal = encode(&fc);

    let mut parent: HashMap<u64, u64> = HashMap::new();
    parent.insert(start, start);
    let mut queue = VecDeque::from([start]);
    while let Some(state) = queue.pop_front() {
        if state == goal {
            let mut path = vec![state];
            let mut cur = state;
            while cur != start {
                cur = parent[&cur];
                path.push(cur);
            }
            path.reverse();
            let chain = path
                .iter()
                .map(|&s| {
                    EvalModuleDescriptor::new(window.iter().enumerate().map(|(pos, &o)| {
                        (
                            ospace.representative_of_orbit(o).to_string(),
                            Weight::new(graph.weights[digit(s, pos)].clone()),
                        )
                    }))
                })
                .collect();
            return Ok(Some(chain));
        }
        for pos in 0..window.len() {
            let place = radix.pow(pos as u32);
            let here = digit(state, pos);
            let base = state - here as u64 * place;
            for &nb in &graph.adjacent[here] {
                let next = base + nb as u64 * place;
                parent.entry(next).or_insert_with(|| {
                    queue.push_back(next);
                    state
                });
            }
        }
    }
    Ok(None)
}

/// Dominant weights in a box, with an edge whenever the adjoint
/// multiplicity is nonzero in either order. Cotangent dimensions are
/// positive, so this is exactly Ext-adjacency at a single orbit.
struct WeightGraph {
    weights: Vec<Vec<i64>>,
    lookup: HashMap<Vec<i64>, u32>,
    adjacent: Vec<Vec<u32>>,
    zero: Vec<i64>,
}

type GraphKey = (TypeLetter, usize, i64);

impl WeightGraph {
    /// Graphs are small and reused across many searches, so they are kept
    /// for the life of the process.
    fn cached(rs: &RootSystem, bound: i64) -> Arc<WeightGraph> {
        static GRAPHS: OnceLock<Mutex<HashMap<GraphKey, Arc<WeightGraph>>>> = OnceLock::new();
        let graphs = GRAPHS.get_or_init(Default::default);
        let key = (rs.type_letter(), rs.rank(), bound);
        if let Some(g) = graphs.lock().unwrap().get(&key) {
            return Arc::clone(g);
        }
        let g = Arc::new(WeightGraph::new(rs, bound));
        Arc::clone(graphs.lock().unwrap().entry(key).or_insert(g))
    }

    fn new(rs: &RootSystem, bound: i64) -> Self {
        let n = rs.rank();
        let weights: Vec<Vec<i64>> = dominant_box(n, bound).into_iter().map(Weight::into_coords).collect();
        let lookup = weights
            .iter()
            .enumerate()
            .map(|(i, w)| (w.clone(), i as u32))
            .collect();
        let adjacent = weights
            .iter()
            .enumerate()
            .map(|(i, u)| {
                weights
                    .iter()
                    .enumerate()
                    .filter(|&(j, v)| {
                        j != i && (prv_unchecked(rs, u, v) > 0 || prv_unchecked(rs, v, u) > 0)
                    })
                    .map(|(j, _)| j as u32)
                    .collect()
            })
            .collect();
        WeightGraph {
            weights,
            lookup,
            adjacent,
            zero: vec![0; n],
        }
    }

    fn index_of(&self, w: &[i64]) -> u32 {
        self.lookup[w]
    }
}
