//! Finite-dimensional representations of a simple Lie algebra: Weyl
//! dimensions, Freudenthal weight diagrams, Klimyk tensor decompositions and
//! the adjoint multiplicity `c(L(λ), L(μ))` via the PRV reduction.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::exec::Strategy;
use crate::rootsys::{RootSystem, ShiftedConjugate, TypeLetter, Weight};

/// Weights with strictly positive multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightMultiset {
    entries: BTreeMap<Weight, u64>,
}

impl WeightMultiset {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `m` copies of `w`; zero multiplicities are ignored.
    pub fn insert(&mut self, w: Weight, m: u64) {
        if m > 0 {
            *self.entries.entry(w).or_insert(0) += m;
        }
    }

    pub fn multiplicity(&self, w: &Weight) -> u64 {
        self.entries.get(w).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, &u64)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }
}

impl FromIterator<(Weight, u64)> for WeightMultiset {
    fn from_iter<I: IntoIterator<Item = (Weight, u64)>>(iter: I) -> Self {
        let mut m = WeightMultiset::new();
        for (w, k) in iter {
            m.insert(w, k);
        }
        m
    }
}

/// `Π_{β>0} ⟨λ+ρ, β^∨⟩ / ⟨ρ, β^∨⟩`.
pub fn weyl_dimension(rs: &RootSystem, lam: &Weight) -> Result<BigUint> {
    rs.check_dominant(lam)?;
    Ok(weyl_dimension_unchecked(rs, lam))
}

fn weyl_dimension_unchecked(rs: &RootSystem, lam: &Weight) -> BigUint {
    // Both pairings share the denominator |β|², so only numerators matter.
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for (coeffs, _) in rs.coroot_functionals() {
        let shifted: i64 = coeffs.iter().zip(lam.iter()).map(|(a, x)| a * (x + 1)).sum();
        let base: i64 = coeffs.iter().sum();
        num *= BigUint::from(shifted as u64);
        den *= BigUint::from(base as u64);
    }
    let (q, r) = (&num / &den, &num % &den);
    debug_assert!(r.is_zero());
    q
}

/// Sorted weight diagram of `L(λ)`.
#[derive(Debug)]
struct Diagram {
    entries: Vec<(Weight, u64)>,
}

/// Bounded memo of weight diagrams keyed by `(type, rank, λ)`, evicting in
/// insertion order.
pub struct DiagramCache {
    limit: usize,
    map: HashMap<(TypeLetter, usize, Weight), Arc<Diagram>>,
    order: VecDeque<(TypeLetter, usize, Weight)>,
}

pub const DEFAULT_CACHE_LIMIT: usize = 512;

fn cache() -> &'static Mutex<DiagramCache> {
    static CACHE: OnceLock<Mutex<DiagramCache>> = OnceLock::new();
    CACHE.get_or_init(|| {
        Mutex::new(DiagramCache {
            limit: DEFAULT_CACHE_LIMIT,
            map: HashMap::new(),
            order: VecDeque::new(),
        })
    })
}

/// Set the number of weight diagrams kept in memory; 0 disables caching.
pub fn set_cache_limit(limit: usize) {
    let mut c = cache().lock().unwrap();
    c.limit = limit;
    while c.order.len() > limit {
        if let Some(k) = c.order.pop_front() {
            c.map.remove(&k);
        }
    }
}

pub fn cache_limit() -> usize {
    cache().lock().unwrap().limit
}

fn cached_diagram(rs: &RootSystem, lam: &Weight) -> Arc<Diagram> {
    let key = (rs.type_letter(), rs.rank(), lam.clone());
    if let Some(d) = cache().lock().unwrap().map.get(&key) {
        return Arc::clone(d);
    }
    let d = Arc::new(compute_diagram(rs, lam));
    let mut c = cache().lock().unwrap();
    if c.limit > 0 && !c.map.contains_key(&key) {
        while c.order.len() >= c.limit {
            if let Some(k) = c.order.pop_front() {
                c.map.remove(&k);
            }
        }
        c.map.insert(key.clone(), Arc::clone(&d));
        c.order.push_back(key);
    }
    d
}

/// Dominant weights `μ ≤ λ`, found by subtracting positive roots from `λ`
/// while staying dominant (the dominant part of `Π(λ)` is connected under
/// such moves), sorted by depth `ht(λ − μ)`.
fn dominant_weights_below(rs: &RootSystem, lam: &Weight) -> Vec<(Weight, i64)> {
    let mut seen: HashSet<Weight> = HashSet::new();
    let mut out = vec![(lam.clone(), 0i64)];
    seen.insert(lam.clone());
    let mut i = 0;
    while i < out.len() {
        let (mu, depth) = out[i].clone();
        for (beta, bw) in rs.positive_roots().iter().zip(rs.positive_root_weights()) {
            let nu = &mu - bw;
            if nu.is_dominant() && seen.insert(nu.clone()) {
                out.push((nu, depth + beta.height()));
            }
        }
        i += 1;
    }
    out.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| b.0.cmp(&a.0)));
    out
}

fn compute_diagram(rs: &RootSystem, lam: &Weight) -> Diagram {
    let dominant = dominant_weights_below(rs, lam);
    let rho = rs.rho();
    let lam_rho = lam + &rho;
    let top = rs.scaled_form(&lam_rho, &lam_rho);

    let mut mult: HashMap<Weight, u64> = HashMap::with_capacity(dominant.len());
    for (mu, depth) in &dominant {
        if *depth == 0 {
            mult.insert(mu.clone(), 1);
            continue;
        }
        let mut num: i64 = 0;
        for bw in rs.positive_root_weights() {
            let mut nu = mu.clone().into_coords();
            loop {
                for (x, b) in nu.iter_mut().zip(bw.iter()) {
                    *x += b;
                }
                let rep = rs.dominant_representative(&nu);
                match mult.get(&rep) {
                    Some(&m) => num += m as i64 * rs.scaled_form(&nu, bw),
                    None => break,
                }
            }
        }
        let mu_rho = mu + &rho;
        let den = top - rs.scaled_form(&mu_rho, &mu_rho);
        assert!(den > 0, "Freudenthal denominator must be positive");
        let num = 2 * num;
        assert!(num % den == 0, "Freudenthal recursion must divide exactly");
        mult.insert(mu.clone(), (num / den) as u64);
    }

    let mut entries: Vec<(Weight, u64)> = Vec::new();
    for (mu, _) in &dominant {
        let m = mult[mu];
        if m == 0 {
            continue;
        }
        let mut orbit: HashSet<Weight> = HashSet::new();
        let mut queue = vec![mu.clone()];
        orbit.insert(mu.clone());
        while let Some(w) = queue.pop() {
            for i in 0..rs.rank() {
                if w[i] != 0 {
                    let r = rs.simple_reflection(&w, i);
                    if orbit.insert(r.clone()) {
                        queue.push(r);
                    }
                }
            }
        }
        entries.extend(orbit.into_iter().map(|w| (w, m)));
    }
    entries.sort();

    let total: u64 = entries.iter().map(|(_, m)| m).sum();
    assert_eq!(
        BigUint::from(total),
        weyl_dimension_unchecked(rs, lam),
        "Freudenthal total multiplicity must equal the Weyl dimension of {lam}"
    );
    Diagram { entries }
}

/// Full weight diagram of `L(λ)` with multiplicities.
pub fn freudenthal_multiplicities(rs: &RootSystem, lam: &Weight) -> Result<WeightMultiset> {
    rs.check_dominant(lam)?;
    let d = cached_diagram(rs, lam);
    Ok(d.entries.iter().cloned().collect())
}

/// Same as [`freudenthal_multiplicities`] but bypassing the memo.
pub fn freudenthal_uncached(rs: &RootSystem, lam: &Weight) -> Result<WeightMultiset> {
    rs.check_dominant(lam)?;
    Ok(compute_diagram(rs, lam).entries.into_iter().collect())
}

/// `−w₀(λ)`, the highest weight of `L(λ)*`.
pub fn dual_weight(rs: &RootSystem, lam: &Weight) -> Result<Weight> {
    rs.check_dominant(lam)?;
    Ok(rs.dominant_representative(&-lam))
}

fn klimyk_fold(
    rs: &RootSystem,
    diagram: &[(Weight, u64)],
    mu: &Weight,
    strategy: Strategy,
) -> HashMap<Weight, i64> {
    let fold_one = |mut acc: HashMap<Weight, i64>, (w, m): &(Weight, u64)| {
        if let ShiftedConjugate::Regular { weight, sign } = rs.dominant_conjugate(&(mu + w)) {
            *acc.entry(weight).or_insert(0) += sign as i64 * *m as i64;
        }
        acc
    };
    let merge = |mut a: HashMap<Weight, i64>, b: HashMap<Weight, i64>| {
        for (k, v) in b {
            *a.entry(k).or_insert(0) += v;
        }
        a
    };
    strategy.fold_reduce(diagram, HashMap::new, fold_one, merge)
}

/// Klimyk decomposition of `L(λ) ⊗ L(μ)` into simple constituents.
pub fn tensor_decompose(rs: &RootSystem, lam: &Weight, mu: &Weight) -> Result<WeightMultiset> {
    tensor_decompose_with(rs, lam, mu, Strategy::default())
}

pub fn tensor_decompose_with(
    rs: &RootSystem,
    lam: &Weight,
    mu: &Weight,
    strategy: Strategy,
) -> Result<WeightMultiset> {
    rs.check_dominant(lam)?;
    rs.check_dominant(mu)?;
    let dim_l = weyl_dimension_unchecked(rs, lam);
    let dim_m = weyl_dimension_unchecked(rs, mu);
    // The product is symmetric; expand the smaller factor's diagram.
    let (expanded, shifted) = if dim_l <= dim_m { (lam, mu) } else { (mu, lam) };
    let diagram = cached_diagram(rs, expanded);
    let acc = klimyk_fold(rs, &diagram.entries, shifted, strategy);

    let mut out = WeightMultiset::new();
    for (w, m) in acc {
        assert!(m >= 0, "Klimyk accumulation produced a negative multiplicity at {w}");
        out.insert(w, m as u64);
    }
    let total: BigUint = out
        .iter()
        .map(|(w, &m)| weyl_dimension_unchecked(rs, w) * BigUint::from(m))
        .sum();
    assert_eq!(
        total,
        &dim_l * &dim_m,
        "tensor product dimension check failed for {lam} ⊗ {mu}"
    );
    Ok(out)
}

/// Multiplicity of the adjoint module in `L(λ)* ⊗ L(μ)`:
/// `dim { v ∈ 𝔤_{μ−λ} : e_i^{λ_i+1}·v = 0 for all i }`.
///
/// The weight space is zero unless `μ − λ` is zero or a root. On a root
/// space `𝔤_β = k·e_β`, `ad(e_i)^k e_β ≠ 0` exactly for `k` up to the upper
/// end of the `α_i`-string through `β`. On the Cartan subalgebra,
/// `ad(e_i) h = −α_i(h) e_i` and `ad(e_i)² h = 0`, so only the `i` with
/// `λ_i = 0` impose a condition.
pub fn prv_adjoint_multiplicity(rs: &RootSystem, lam: &Weight, mu: &Weight) -> Result<u64> {
    rs.check_dominant(lam)?;
    rs.check_dominant(mu)?;
    Ok(prv_unchecked(rs, lam, mu))
}

pub(crate) fn prv_unchecked(rs: &RootSystem, lam: &[i64], mu: &[i64]) -> u64 {
    let delta: Vec<i64> = mu.iter().zip(lam).map(|(a, b)| a - b).collect();
    let Some(beta) = rs.root_coords_if_integral(&delta) else {
        return 0;
    };
    if beta.iter().all(|&c| c == 0) {
        return lam.iter().filter(|&&l| l > 0).count() as u64;
    }
    if !rs.is_root(&beta) {
        return 0;
    }
    for (i, &l) in lam.iter().enumerate() {
        let is_neg_simple = beta
            .iter()
            .enumerate()
            .all(|(j, &c)| c == if j == i { -1 } else { 0 });
        let q = if is_neg_simple { 2 } else { rs.string_above(&beta, i) };
        if l < q as i64 {
            return 0;
        }
    }
    1
}

/// Oracle value of `c(L(λ), L(μ))`: the multiplicity of `L(θ)` in the
/// Klimyk decomposition of `L(λ)* ⊗ L(μ)`.
pub fn adjoint_multiplicity_by_decomposition(
    rs: &RootSystem,
    lam: &Weight,
    mu: &Weight,
) -> Result<u64> {
    let dual = dual_weight(rs, lam)?;
    let decomposition = tensor_decompose(rs, &dual, mu)?;
    let theta = rs.root_to_weight(rs.highest_root());
    Ok(decomposition.multiplicity(&theta))
}
