//! Blocks of the Margaux algebra, a twisted form of the double-loop
//! `sl₂` current algebra. Its simple modules sit at points `(a, b)` of
//! `ℂ^× × ℂ^×`, with `Γ = ℤ/2 × ℤ/2` acting by independent sign changes;
//! blocks are finite sets of canonical points tagged by `P/Q = ℤ/2`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rootsys::{RootSystem, TypeLetter, Weight};

use super::module::EvalModuleDescriptor;
use super::orbit::OrbitSpace;

/// Exact complex number `re + im·i` with rational parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        GaussianRational {
            re: BigRational::from_integer(re.into()),
            im: BigRational::from_integer(im.into()),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// `im z > 0`, or `z` a positive real.
    pub fn in_upper_half(&self) -> bool {
        self.im.is_positive() || (self.im.is_zero() && self.re.is_positive())
    }

    pub fn negated(&self) -> Self {
        GaussianRational {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.im.is_negative() { "-" } else { "+" };
        write!(f, "{}{}{}i", fmt_rational(&self.re), sign, fmt_rational(&self.im.abs()))
    }
}

#[derive(Serialize, Deserialize)]
struct GaussianRepr {
    re: [i64; 2],
    im: [i64; 2],
}

fn to_pair(q: &BigRational) -> std::result::Result<[i64; 2], String> {
    match (q.numer().to_i64(), q.denom().to_i64()) {
        (Some(n), Some(d)) => Ok([n, d]),
        _ => Err(format!("{q} does not fit in 64-bit numerator/denominator")),
    }
}

impl Serialize for GaussianRational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::Error as _;
        let repr = GaussianRepr {
            re: to_pair(&self.re).map_err(S::Error::custom)?,
            im: to_pair(&self.im).map_err(S::Error::custom)?,
        };
        repr.serialize(s)
    }
}

impl<'de> Deserialize<'de> for GaussianRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = GaussianRepr::deserialize(d)?;
        let part = |[n, den]: [i64; 2]| {
            if den == 0 {
                Err(D::Error::custom("zero denominator"))
            } else {
                Ok(BigRational::new(BigInt::from(n), BigInt::from(den)))
            }
        };
        Ok(GaussianRational {
            re: part(repr.re)?,
            im: part(repr.im)?,
        })
    }
}

/// A point `(a, b)` of the two-dimensional torus.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MargauxPoint {
    pub a: GaussianRational,
    pub b: GaussianRational,
}

impl MargauxPoint {
    pub fn new(a: GaussianRational, b: GaussianRational) -> Self {
        MargauxPoint { a, b }
    }

    /// The four points `(±a, ±b)` of the sign-change orbit, in the order
    /// `(a,b), (−a,b), (a,−b), (−a,−b)`.
    pub fn sign_orbit(&self) -> [MargauxPoint; 4] {
        let (na, nb) = (self.a.negated(), self.b.negated());
        [
            MargauxPoint::new(self.a.clone(), self.b.clone()),
            MargauxPoint::new(na.clone(), self.b.clone()),
            MargauxPoint::new(self.a.clone(), nb.clone()),
            MargauxPoint::new(na, nb),
        ]
    }

    /// Identifier used when the point is placed in an [`OrbitSpace`].
    pub fn point_id(&self) -> String {
        format!("({}, {})", self.a, self.b)
    }
}

impl fmt::Display for MargauxPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.point_id())
    }
}

/// Move each coordinate into `ℂ₊` by an independent sign change.
pub fn margaux_canonical_point(p: &MargauxPoint) -> Result<MargauxPoint> {
    let canon = |z: &GaussianRational| -> Result<GaussianRational> {
        if z.is_zero() {
            Err(Error::ZeroCoordinate)
        } else if z.in_upper_half() {
            Ok(z.clone())
        } else {
            Ok(z.negated())
        }
    };
    Ok(MargauxPoint::new(canon(&p.a)?, canon(&p.b)?))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MargauxBlockEntry {
    pub a: GaussianRational,
    pub b: GaussianRational,
    pub m: u8,
}

/// Finite subset of `ℂ₊ × ℂ₊ × {0, 1}` labelling a block.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MargauxBlockDescriptor {
    entries: BTreeSet<MargauxBlockEntry>,
}

impl MargauxBlockDescriptor {
    pub fn entries(&self) -> &BTreeSet<MargauxBlockEntry> {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

fn sl2() -> &'static RootSystem {
    static A1: OnceLock<RootSystem> = OnceLock::new();
    A1.get_or_init(|| RootSystem::new(TypeLetter::A, 1).expect("A1 is valid"))
}

/// Block of `L(m_1, M_1) ⊗ … ⊗ L(m_r, M_r)`. Points must lie in distinct
/// orbits; entries whose weight is in the root lattice are dropped.
pub fn margaux_block(modules: &[(MargauxPoint, u64)]) -> Result<MargauxBlockDescriptor> {
    let a1 = sl2();
    let mut seen: BTreeMap<MargauxPoint, usize> = BTreeMap::new();
    let mut entries = BTreeSet::new();
    for (idx, (p, m)) in modules.iter().enumerate() {
        let c = margaux_canonical_point(p)?;
        if let Some(&first) = seen.get(&c) {
            return Err(Error::SameMargauxOrbit(first, idx));
        }
        seen.insert(c.clone(), idx);
        let weight = i64::try_from(*m)
            .map_err(|_| Error::Inconsistent(format!("weight {m} out of range")))?;
        let coset = a1.fundamental_group_coset(&Weight::new(vec![weight]));
        if !coset.is_identity() {
            entries.insert(MargauxBlockEntry {
                a: c.a,
                b: c.b,
                m: coset.residues[0] as u8,
            });
        }
    }
    Ok(MargauxBlockDescriptor { entries })
}

/// The orbit space spanned by the given points: four points per orbit,
/// two sign-change generators, cotangent dimension 2.
pub fn margaux_orbit_space(points: &[MargauxPoint]) -> Result<OrbitSpace> {
    let mut ids = BTreeSet::new();
    let mut flip_a = BTreeMap::new();
    let mut flip_b = BTreeMap::new();
    let mut cot = BTreeMap::new();
    for p in points {
        let orbit = margaux_canonical_point(p)?.sign_orbit();
        let names: Vec<String> = orbit.iter().map(MargauxPoint::point_id).collect();
        if !ids.insert(names[0].clone()) {
            continue;
        }
        ids.extend(names[1..].iter().cloned());
        for (x, y) in [(0, 1), (1, 0), (2, 3), (3, 2)] {
            flip_a.insert(names[x].clone(), names[y].clone());
        }
        for (x, y) in [(0, 2), (2, 0), (1, 3), (3, 1)] {
            flip_b.insert(names[x].clone(), names[y].clone());
        }
        cot.insert(names[0].clone(), 2);
    }
    OrbitSpace::new(ids.into_iter().collect(), vec![flip_a, flip_b], cot)
}

/// The evaluation-module descriptor of `⊗ L(m_i, M_i)` over
/// [`margaux_orbit_space`].
pub fn margaux_descriptor(modules: &[(MargauxPoint, u64)]) -> EvalModuleDescriptor {
    EvalModuleDescriptor::new(
        modules
            .iter()
            .map(|(p, m)| (p.point_id(), Weight::new(vec![*m as i64]))),
    )
}
