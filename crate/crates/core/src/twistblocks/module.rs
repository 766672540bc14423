use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rootsys::{FundamentalGroupElement, RootSystem, Weight};

use super::orbit::OrbitSpace;

/// A simple evaluation module: a finitely supported assignment of dominant
/// weights to points, one point per orbit. Zero weights are never stored.
///
/// Serialized as `{ "point": [λ_1, …, λ_ℓ], … }`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EvalModuleDescriptor {
    assignments: BTreeMap<String, Weight>,
}

impl EvalModuleDescriptor {
    pub fn new<I, S>(assignments: I) -> Self
    where
        I: IntoIterator<Item = (S, Weight)>,
        S: Into<String>,
    {
        EvalModuleDescriptor {
            assignments: assignments
                .into_iter()
                .filter(|(_, w)| !w.is_zero())
                .map(|(p, w)| (p.into(), w))
                .collect(),
        }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn assignments(&self) -> &BTreeMap<String, Weight> {
        &self.assignments
    }

    pub fn is_empty(&self) -> bool {
        self.assignments.is_empty()
    }

    pub fn max_coordinate(&self) -> i64 {
        self.assignments
            .values()
            .flat_map(|w| w.iter().copied())
            .max()
            .unwrap_or(0)
    }

    /// Drop zero weights that may have been introduced by deserialization.
    pub fn normalized(self) -> Self {
        Self::new(self.assignments)
    }

    /// Validate against `ospace` and key by orbit id.
    pub fn canonical(&self, rs: &RootSystem, ospace: &OrbitSpace) -> Result<CanonicalSection> {
        let mut by_orbit: BTreeMap<usize, (Weight, &str)> = BTreeMap::new();
        for (point, w) in &self.assignments {
            let o = ospace.orbit_id(point)?;
            rs.check_dominant(w)?;
            if w.is_zero() {
                continue;
            }
            if let Some((_, other)) = by_orbit.insert(o, (w.clone(), point)) {
                return Err(Error::DuplicateOrbit(other.to_string(), point.clone()));
            }
        }
        Ok(CanonicalSection(
            by_orbit.into_iter().map(|(o, (w, _))| (o, w)).collect(),
        ))
    }

    /// Same module with every point replaced by its orbit representative.
    pub fn canonicalized(&self, rs: &RootSystem, ospace: &OrbitSpace) -> Result<Self> {
        Ok(self.canonical(rs, ospace)?.to_descriptor(ospace))
    }
}

/// A validated section keyed by orbit id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalSection(pub(crate) BTreeMap<usize, Weight>);

impl CanonicalSection {
    pub fn get(&self, orbit: usize) -> Option<&Weight> {
        self.0.get(&orbit)
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.keys().copied()
    }

    pub fn to_descriptor(&self, ospace: &OrbitSpace) -> EvalModuleDescriptor {
        EvalModuleDescriptor::new(
            self.0
                .iter()
                .map(|(&o, w)| (ospace.representative_of_orbit(o).to_string(), w.clone())),
        )
    }
}

/// Map from orbit representatives to nontrivial classes in `P/Q`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SpectralCharacter {
    assignments: BTreeMap<String, FundamentalGroupElement>,
}

impl SpectralCharacter {
    pub fn assignments(&self) -> &BTreeMap<String, FundamentalGroupElement> {
        &self.assignments
    }

    pub fn is_trivial(&self) -> bool {
        self.assignments.is_empty()
    }
}

pub fn spectral_character(
    rs: &RootSystem,
    ospace: &OrbitSpace,
    desc: &EvalModuleDescriptor,
) -> Result<SpectralCharacter> {
    let section = desc.canonical(rs, ospace)?;
    Ok(SpectralCharacter {
        assignments: section
            .0
            .iter()
            .map(|(&o, w)| {
                (
                    ospace.representative_of_orbit(o).to_string(),
                    rs.fundamental_group_coset(w),
                )
            })
            .filter(|(_, g)| !g.is_identity())
            .collect(),
    })
}
