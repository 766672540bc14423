//! Finite-type root systems: Cartan data, positive roots, root strings,
//! ρ-shifted Weyl conjugation and the fundamental group `P/Q`.
//!
//! Conventions used everywhere in the crate:
//!
//! * Cartan entries are `a_ij = ⟨α_j, α_i^∨⟩`, so row `i` pairs with the
//!   coroot `α_i^∨` and column `j` holds the fundamental-weight coordinates
//!   of `α_j`. Nodes follow Bourbaki numbering.
//! * A [`Weight`] is stored in fundamental-weight coordinates
//!   (`coords[i] = ⟨λ, α_i^∨⟩`); a [`Root`] in simple-root coordinates.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::ops::{Add, Deref, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{rational_inverse, smith_normal_form};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TypeLetter {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl TypeLetter {
    pub const ALL: [TypeLetter; 7] = [
        TypeLetter::A,
        TypeLetter::B,
        TypeLetter::C,
        TypeLetter::D,
        TypeLetter::E,
        TypeLetter::F,
        TypeLetter::G,
    ];
}

impl fmt::Display for TypeLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TypeLetter::A => "A",
            TypeLetter::B => "B",
            TypeLetter::C => "C",
            TypeLetter::D => "D",
            TypeLetter::E => "E",
            TypeLetter::F => "F",
            TypeLetter::G => "G",
        };
        f.write_str(s)
    }
}

impl FromStr for TypeLetter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(TypeLetter::A),
            "B" => Ok(TypeLetter::B),
            "C" => Ok(TypeLetter::C),
            "D" => Ok(TypeLetter::D),
            "E" => Ok(TypeLetter::E),
            "F" => Ok(TypeLetter::F),
            "G" => Ok(TypeLetter::G),
            _ => Err(Error::InvalidType {
                letter: s.to_string(),
                rank: 0,
                reason: "type letter must be one of A-G",
            }),
        }
    }
}

/// An integral weight in fundamental-weight coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(Vec<i64>);

impl Weight {
    pub fn new(coords: Vec<i64>) -> Self {
        Weight(coords)
    }

    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<i64> {
        self.0
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

impl Deref for Weight {
    type Target = [i64];

    fn deref(&self) -> &[i64] {
        &self.0
    }
}

impl From<Vec<i64>> for Weight {
    fn from(v: Vec<i64>) -> Self {
        Weight(v)
    }
}

impl<'a> Add<&'a Weight> for &'a Weight {
    type Output = Weight;

    fn add(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl<'a> Sub<&'a Weight> for &'a Weight {
    type Output = Weight;

    fn sub(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;

    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// A root (or any element of `Q`) in simple-root coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Root(Vec<i64>);

impl Root {
    pub fn new(coords: Vec<i64>) -> Self {
        Root(coords)
    }

    pub fn simple(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        Root(v)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }
}

impl Deref for Root {
    type Target = [i64];

    fn deref(&self) -> &[i64] {
        &self.0
    }
}

impl Neg for &Root {
    type Output = Root;

    fn neg(self) -> Root {
        Root(self.0.iter().map(|a| -a).collect())
    }
}

/// Element of the fundamental group `P/Q ≅ ⊕ ℤ/d_k` (nontrivial factors only).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FundamentalGroupElement {
    pub residues: Vec<u64>,
    pub shape: Vec<u64>,
}

impl FundamentalGroupElement {
    pub fn is_identity(&self) -> bool {
        self.residues.iter().all(|&r| r == 0)
    }
}

impl fmt::Display for FundamentalGroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.shape.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .residues
            .iter()
            .zip(&self.shape)
            .map(|(r, d)| format!("{r} mod {d}"))
            .collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Result of conjugating `w + ρ` into the dominant chamber.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ShiftedConjugate {
    /// `x − ρ` with `x` the dominant conjugate of `w + ρ`, and `(−1)^ℓ(σ)`.
    Regular { weight: Weight, sign: i8 },
    /// `w + ρ` lies on a reflecting hyperplane.
    Singular,
}

#[derive(Clone, Debug)]
struct LatticeQuotient {
    /// Rows of the left Smith transform belonging to nontrivial factors.
    rows: Vec<Vec<BigInt>>,
    orders: Vec<u64>,
}

/// Immutable root datum of a finite-type simple Lie algebra.
#[derive(Clone, Debug)]
pub struct RootSystem {
    type_letter: TypeLetter,
    rank: usize,
    cartan: Vec<Vec<i64>>,
    /// Gram matrix of the simple roots, scaled to integers.
    gram: Vec<Vec<i64>>,
    positive_roots: Vec<Root>,
    positive_index: HashMap<Vec<i64>, usize>,
    highest_root: Root,
    positive_root_weights: Vec<Weight>,
    coroot_functionals: Vec<(Vec<i64>, i64)>,
    inverse_cartan: Vec<Vec<BigRational>>,
    det: i64,
    /// `det · cartan⁻¹`, exact integers.
    adjugate: Vec<Vec<i64>>,
    quotient: LatticeQuotient,
}

fn validate_type(letter: TypeLetter, rank: usize) -> Result<()> {
    let reason = match letter {
        TypeLetter::A if rank >= 1 => return Ok(()),
        TypeLetter::B | TypeLetter::C if rank >= 2 => return Ok(()),
        TypeLetter::D if rank >= 3 => return Ok(()),
        TypeLetter::E if (6..=8).contains(&rank) => return Ok(()),
        TypeLetter::F if rank == 4 => return Ok(()),
        TypeLetter::G if rank == 2 => return Ok(()),
        TypeLetter::A => "type A needs rank >= 1",
        TypeLetter::B | TypeLetter::C => "types B and C need rank >= 2",
        TypeLetter::D => "type D needs rank >= 3",
        TypeLetter::E => "type E exists only in ranks 6, 7, 8",
        TypeLetter::F => "type F exists only in rank 4",
        TypeLetter::G => "type G exists only in rank 2",
    };
    Err(Error::InvalidType {
        letter: letter.to_string(),
        rank,
        reason,
    })
}

/// Integer Gram matrix `(α_i, α_j)` in Bourbaki numbering, scaled so every
/// entry is integral (short roots have squared length 2).
#[allow(clippy::needless_range_loop)]
fn gram_matrix(letter: TypeLetter, n: usize) -> Vec<Vec<i64>> {
    let mut g = vec![vec![0i64; n]; n];
    let link = |g: &mut Vec<Vec<i64>>, i: usize, j: usize, v: i64| {
        g[i][j] = v;
        g[j][i] = v;
    };
    match letter {
        TypeLetter::A => {
            for i in 0..n {
                g[i][i] = 2;
            }
            for i in 0..n.saturating_sub(1) {
                link(&mut g, i, i + 1, -1);
            }
        }
        TypeLetter::B => {
            for i in 0..n {
                g[i][i] = if i + 1 < n { 4 } else { 2 };
            }
            for i in 0..n - 1 {
                link(&mut g, i, i + 1, -2);
            }
        }
        TypeLetter::C => {
            for i in 0..n {
                g[i][i] = if i + 1 < n { 2 } else { 4 };
            }
            for i in 0..n - 1 {
                link(&mut g, i, i + 1, if i + 2 == n { -2 } else { -1 });
            }
        }
        TypeLetter::D => {
            for i in 0..n {
                g[i][i] = 2;
            }
            for i in 0..n - 2 {
                link(&mut g, i, i + 1, -1);
            }
            link(&mut g, n - 3, n - 1, -1);
        }
        TypeLetter::E => {
            for i in 0..n {
                g[i][i] = 2;
            }
            link(&mut g, 0, 2, -1);
            link(&mut g, 1, 3, -1);
            for i in 2..n - 1 {
                link(&mut g, i, i + 1, -1);
            }
        }
        TypeLetter::F => {
            g[0][0] = 4;
            g[1][1] = 4;
            g[2][2] = 2;
            g[3][3] = 2;
            link(&mut g, 0, 1, -2);
            link(&mut g, 1, 2, -2);
            link(&mut g, 2, 3, -1);
        }
        TypeLetter::G => {
            g[0][0] = 2;
            g[1][1] = 6;
            link(&mut g, 0, 1, -3);
        }
    }
    g
}

impl RootSystem {
    pub fn new(type_letter: TypeLetter, rank: usize) -> Result<Self> {
        validate_type(type_letter, rank)?;
        let gram = gram_matrix(type_letter, rank);
        let cartan: Vec<Vec<i64>> = (0..rank)
            .map(|i| (0..rank).map(|j| 2 * gram[i][j] / gram[i][i]).collect())
            .collect();

        let (inverse_cartan, det_q) =
            rational_inverse(&cartan).expect("Cartan matrices of finite type are invertible");
        let det = det_q
            .to_integer()
            .to_i64()
            .expect("Cartan determinant fits in i64");
        let adjugate = inverse_cartan
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| {
                        let y = x * BigRational::from_integer(det.into());
                        debug_assert!(y.is_integer());
                        y.to_integer().to_i64().expect("adjugate entry fits in i64")
                    })
                    .collect()
            })
            .collect();

        let smith = smith_normal_form(&cartan);
        let mut rows = Vec::new();
        let mut orders = Vec::new();
        for (k, d) in smith.diagonal.iter().enumerate() {
            let d = d.to_u64().expect("Smith invariant of a Cartan matrix is positive");
            if d > 1 {
                rows.push(smith.left[k].clone());
                orders.push(d);
            }
        }

        let positive_roots = positive_root_closure(&cartan);
        let positive_index = positive_roots
            .iter()
            .enumerate()
            .map(|(i, r)| (r.0.clone(), i))
            .collect();
        let highest_root = positive_roots
            .iter()
            .max_by_key(|r| r.height())
            .cloned()
            .expect("at least one positive root");

        let positive_root_weights = positive_roots
            .iter()
            .map(|b| {
                Weight(
                    (0..rank)
                        .map(|i| (0..rank).map(|j| cartan[i][j] * b[j]).sum())
                        .collect(),
                )
            })
            .collect();
        let coroot_functionals = positive_roots
            .iter()
            .map(|b| {
                let len: i64 = (0..rank)
                    .flat_map(|i| (0..rank).map(move |j| (i, j)))
                    .map(|(i, j)| b[i] * b[j] * gram[i][j])
                    .sum();
                let coeffs = (0..rank).map(|j| b[j] * gram[j][j]).collect();
                (coeffs, len)
            })
            .collect();

        Ok(RootSystem {
            type_letter,
            rank,
            cartan,
            gram,
            positive_roots,
            positive_index,
            highest_root,
            positive_root_weights,
            coroot_functionals,
            inverse_cartan,
            det,
            adjugate,
            quotient: LatticeQuotient { rows, orders },
        })
    }

    pub fn from_name(letter: &str, rank: usize) -> Result<Self> {
        let letter = letter.parse::<TypeLetter>().map_err(|_| Error::InvalidType {
            letter: letter.to_string(),
            rank,
            reason: "type letter must be one of A-G",
        })?;
        Self::new(letter, rank)
    }

    pub fn type_letter(&self) -> TypeLetter {
        self.type_letter
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.type_letter, self.rank)
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// Scaled integer Gram matrix of the simple roots.
    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    pub fn highest_root(&self) -> &Root {
        &self.highest_root
    }

    /// Columns of `cartan⁻¹`: the fundamental weights in root coordinates.
    pub fn fundamental_weights_in_root_coords(&self) -> Vec<Vec<BigRational>> {
        (0..self.rank)
            .map(|j| (0..self.rank).map(|i| self.inverse_cartan[i][j].clone()).collect())
            .collect()
    }

    pub fn cartan_determinant(&self) -> i64 {
        self.det
    }

    /// Orders of the nontrivial cyclic factors of `P/Q`.
    pub fn fundamental_group_shape(&self) -> &[u64] {
        &self.quotient.orders
    }

    pub fn fundamental_group_order(&self) -> u64 {
        self.quotient.orders.iter().product()
    }

    pub fn rho(&self) -> Weight {
        Weight(vec![1; self.rank])
    }

    pub fn check_rank(&self, w: &[i64]) -> Result<()> {
        if w.len() != self.rank {
            return Err(Error::RankMismatch {
                weight: w.to_vec(),
                got: w.len(),
                expected: self.rank,
            });
        }
        Ok(())
    }

    pub fn check_dominant(&self, w: &Weight) -> Result<()> {
        self.check_rank(w)?;
        if !w.is_dominant() {
            return Err(Error::NotDominant(w.0.clone()));
        }
        Ok(())
    }

    /// Fundamental-weight coordinates of an element of `Q`.
    pub fn root_to_weight(&self, beta: &[i64]) -> Weight {
        Weight(
            (0..self.rank)
                .map(|i| (0..self.rank).map(|j| self.cartan[i][j] * beta[j]).sum())
                .collect(),
        )
    }

    /// `⟨β, α_i^∨⟩` for `β` in root coordinates.
    pub fn coroot_pairing(&self, beta: &[i64], i: usize) -> i64 {
        (0..self.rank).map(|j| self.cartan[i][j] * beta[j]).sum()
    }

    /// The unique rational `c` with `w = Σ c_i α_i`.
    pub fn weight_in_root_coords(&self, w: &Weight) -> Vec<BigRational> {
        (0..self.rank)
            .map(|i| {
                (0..self.rank)
                    .map(|j| &self.inverse_cartan[i][j] * BigRational::from_integer(w[j].into()))
                    .fold(BigRational::zero(), |acc, x| acc + x)
            })
            .collect()
    }

    /// Root coordinates of `w` when `w ∈ Q`, computed through the integer
    /// adjugate; `None` when some coordinate is fractional.
    pub fn root_coords_if_integral(&self, w: &[i64]) -> Option<Vec<i64>> {
        let mut out = Vec::with_capacity(self.rank);
        for row in &self.adjugate {
            let num: i64 = row.iter().zip(w).map(|(a, b)| a * b).sum();
            if num % self.det != 0 {
                return None;
            }
            out.push(num / self.det);
        }
        Some(out)
    }

    /// Whether `beta` (root coordinates) is a root, positive or negative.
    pub fn is_root(&self, beta: &[i64]) -> bool {
        if self.positive_index.contains_key(beta) {
            return true;
        }
        let neg: Vec<i64> = beta.iter().map(|x| -x).collect();
        self.positive_index.contains_key(&neg)
    }

    pub fn fundamental_group_coset(&self, w: &Weight) -> FundamentalGroupElement {
        let residues = self
            .quotient
            .rows
            .iter()
            .zip(&self.quotient.orders)
            .map(|(row, &d)| {
                let v: BigInt = row.iter().zip(w.iter()).map(|(u, &x)| u * BigInt::from(x)).sum();
                v.mod_floor(&BigInt::from(d)).to_u64().unwrap()
            })
            .collect();
        FundamentalGroupElement {
            residues,
            shape: self.quotient.orders.clone(),
        }
    }

    /// Largest `k ≥ 0` with `β + kα_i` a root (or zero, on the `±α_i` string).
    pub fn root_string_upper_bound(&self, beta: &Root, i: usize) -> Result<u32> {
        self.check_rank(beta)?;
        if i >= self.rank {
            return Err(Error::IndexOutOfRange {
                index: i,
                rank: self.rank,
            });
        }
        let mut neg_simple = vec![0; self.rank];
        neg_simple[i] = -1;
        if beta.0 == neg_simple {
            return Ok(2);
        }
        if !self.is_root(beta) {
            return Err(Error::NotARoot {
                beta: beta.0.clone(),
                index: i,
            });
        }
        Ok(self.string_above(beta, i))
    }

    /// Upper string bound for a root known to lie in `Φ`, excluding the
    /// `−α_i` case.
    pub(crate) fn string_above(&self, beta: &[i64], i: usize) -> u32 {
        let mut v = beta.to_vec();
        let mut q = 0;
        loop {
            v[i] += 1;
            if self.is_root(&v) {
                q += 1;
            } else {
                return q;
            }
        }
    }

    fn reflect(&self, x: &mut [i64], i: usize) {
        let c = x[i];
        for (k, xk) in x.iter_mut().enumerate() {
            *xk -= c * self.cartan[k][i];
        }
    }

    /// Conjugate `w + ρ` to the dominant chamber and subtract `ρ`.
    pub fn dominant_conjugate(&self, w: &Weight) -> ShiftedConjugate {
        let mut x: Vec<i64> = w.iter().map(|c| c + 1).collect();
        let mut sign = 1i8;
        loop {
            if x.contains(&0) {
                return ShiftedConjugate::Singular;
            }
            match x.iter().position(|&c| c < 0) {
                Some(i) => {
                    self.reflect(&mut x, i);
                    sign = -sign;
                }
                None => break,
            }
        }
        ShiftedConjugate::Regular {
            weight: Weight(x.into_iter().map(|c| c - 1).collect()),
            sign,
        }
    }

    /// The dominant weight in the (unshifted) Weyl orbit of `w`.
    pub fn dominant_representative(&self, w: &[i64]) -> Weight {
        let mut x = w.to_vec();
        while let Some(i) = x.iter().position(|&c| c < 0) {
            self.reflect(&mut x, i);
        }
        Weight(x)
    }

    /// Apply the simple reflection `s_i` (unshifted).
    pub fn simple_reflection(&self, w: &Weight, i: usize) -> Weight {
        let mut x = w.0.clone();
        self.reflect(&mut x, i);
        Weight(x)
    }

    /// `2 · det · (x, y)` for weights in fundamental coordinates: a positive
    /// integer multiple of the invariant form (long roots of length² 2).
    pub fn scaled_form(&self, x: &[i64], y: &[i64]) -> i64 {
        (0..self.rank)
            .map(|j| {
                let adj_y: i64 = self.adjugate[j].iter().zip(y).map(|(a, b)| a * b).sum();
                x[j] * self.gram[j][j] * adj_y
            })
            .sum()
    }

    /// `⟨x, β^∨⟩` for a weight `x` and the positive root with index `k`.
    pub fn coroot_pairing_of_weight(&self, x: &[i64], k: usize) -> BigRational {
        // β^∨ = Σ_j c_j (|α_j|²/|β|²) α_j^∨
        let (coeffs, len) = &self.coroot_functionals[k];
        let num: i64 = coeffs.iter().zip(x).map(|(a, b)| a * b).sum();
        BigRational::new(num.into(), (*len).into())
    }

    /// Fundamental-weight coordinates of every positive root, in the order
    /// of [`RootSystem::positive_roots`].
    pub fn positive_root_weights(&self) -> &[Weight] {
        &self.positive_root_weights
    }

    /// For each positive root `β`, integers `(n, d)` with
    /// `⟨x, β^∨⟩ = (Σ_j n_j x_j) / d`.
    pub(crate) fn coroot_functionals(&self) -> &[(Vec<i64>, i64)] {
        &self.coroot_functionals
    }
}

/// Breadth-first closure by height: `β + α_i` is a root iff `q > 0` where
/// `q = p − ⟨β, α_i^∨⟩` and `p` is the depth of the `α_i`-string below `β`.
fn positive_root_closure(cartan: &[Vec<i64>]) -> Vec<Root> {
    let n = cartan.len();
    let mut all: Vec<Root> = (0..n).map(|i| Root::simple(n, i)).collect();
    let mut known: HashSet<Vec<i64>> = all.iter().map(|r| r.0.clone()).collect();
    let mut layer: Vec<Root> = all.clone();

    while !layer.is_empty() {
        let mut next: Vec<Root> = Vec::new();
        for beta in &layer {
            for i in 0..n {
                if beta.0 == Root::simple(n, i).0 {
                    continue;
                }
                let mut p = 0i64;
                let mut down = beta.0.clone();
                loop {
                    down[i] -= 1;
                    if known.contains(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let pairing: i64 = (0..n).map(|j| cartan[i][j] * beta[j]).sum();
                if p - pairing > 0 {
                    let mut up = beta.0.clone();
                    up[i] += 1;
                    if known.insert(up.clone()) {
                        next.push(Root(up));
                    }
                }
            }
        }
        next.sort();
        all.extend(next.iter().cloned());
        layer = next;
    }
    all
}
