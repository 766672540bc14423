use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// On-disk form of an orbit space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitSpaceSpec {
    pub points: Vec<String>,
    #[serde(default)]
    pub generators: Vec<BTreeMap<String, String>>,
    pub cotangent: BTreeMap<String, u32>,
}

/// A finite window of maximal ideals with a group action given by
/// generating permutations, and a cotangent dimension per orbit.
///
/// Orbits are represented by their least point identifier.
#[derive(Clone, Debug)]
pub struct OrbitSpace {
    points: Vec<String>,
    index: HashMap<String, usize>,
    generators: Vec<Vec<usize>>,
    orbit_of: Vec<usize>,
    orbits: Vec<Vec<usize>>,
    cotangent: Vec<u32>,
}

impl OrbitSpace {
    /// Points not mentioned in a generator are fixed by it. Cotangent
    /// dimensions may be keyed by any point of an orbit, one entry per orbit.
    pub fn new(
        points: Vec<String>,
        generators: Vec<BTreeMap<String, String>>,
        cotangent: BTreeMap<String, u32>,
    ) -> Result<Self> {
        let mut points = points;
        points.sort();
        if points.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidOrbitSpace("duplicate point identifier".into()));
        }
        let index: HashMap<String, usize> =
            points.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        let lookup = |p: &String| index.get(p).copied().ok_or_else(|| Error::UnknownPoint(p.clone()));

        let n = points.len();
        let mut perms = Vec::with_capacity(generators.len());
        for (g, map) in generators.iter().enumerate() {
            let mut perm: Vec<usize> = (0..n).collect();
            for (src, dst) in map {
                perm[lookup(src)?] = lookup(dst)?;
            }
            let mut hit = vec![false; n];
            for &t in &perm {
                if std::mem::replace(&mut hit[t], true) {
                    return Err(Error::InvalidOrbitSpace(format!(
                        "generator {g} is not a bijection of the point set"
                    )));
                }
            }
            perms.push(perm);
        }

        // Orbit partition via union-find over generator edges.
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for perm in &perms {
            for (i, &j) in perm.iter().enumerate() {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    // points are sorted, so the smaller index is the least id
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut orbit_of = vec![0; n];
        let mut orbits: Vec<Vec<usize>> = Vec::new();
        let mut root_to_orbit: HashMap<usize, usize> = HashMap::new();
        for (i, slot) in orbit_of.iter_mut().enumerate() {
            let r = find(&mut parent, i);
            let id = *root_to_orbit.entry(r).or_insert_with(|| {
                orbits.push(Vec::new());
                orbits.len() - 1
            });
            orbits[id].push(i);
            *slot = id;
        }

        let mut dims: Vec<Option<u32>> = vec![None; orbits.len()];
        for (p, &d) in &cotangent {
            let o = orbit_of[lookup(p)?];
            if d == 0 {
                return Err(Error::InvalidOrbitSpace(format!(
                    "cotangent dimension at `{p}` must be positive"
                )));
            }
            if dims[o].replace(d).is_some() {
                return Err(Error::InvalidOrbitSpace(format!(
                    "orbit of `{}` has more than one cotangent entry",
                    points[orbits[o][0]]
                )));
            }
        }
        let cotangent = dims
            .into_iter()
            .enumerate()
            .map(|(o, d)| {
                d.ok_or_else(|| {
                    Error::InvalidOrbitSpace(format!(
                        "orbit of `{}` has no cotangent dimension",
                        points[orbits[o][0]]
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;

        Ok(OrbitSpace {
            points,
            index,
            generators: perms,
            orbit_of,
            orbits,
            cotangent,
        })
    }

    pub fn from_spec(spec: &OrbitSpaceSpec) -> Result<Self> {
        Self::new(spec.points.clone(), spec.generators.clone(), spec.cotangent.clone())
    }

    pub fn to_spec(&self) -> OrbitSpaceSpec {
        OrbitSpaceSpec {
            points: self.points.clone(),
            generators: self
                .generators
                .iter()
                .map(|perm| {
                    perm.iter()
                        .enumerate()
                        .filter(|(i, j)| i != *j)
                        .map(|(i, &j)| (self.points[i].clone(), self.points[j].clone()))
                        .collect()
                })
                .collect(),
            cotangent: (0..self.orbits.len())
                .map(|o| (self.representative_of_orbit(o).to_string(), self.cotangent[o]))
                .collect(),
        }
    }

    /// Singleton orbits with the given cotangent dimension each, e.g. `1`
    /// for (twisted) loop algebras or `n` for smooth points of an n-torus.
    pub fn trivial_action(points: &[&str], cotangent_dim: u32) -> Result<Self> {
        let pts: Vec<String> = points.iter().map(|p| p.to_string()).collect();
        let cot = pts.iter().map(|p| (p.clone(), cotangent_dim)).collect();
        Self::new(pts, Vec::new(), cot)
    }

    /// Loop-algebra points: trivial action, `d = 1`.
    pub fn loop_points(points: &[&str]) -> Result<Self> {
        Self::trivial_action(points, 1)
    }

    /// Smooth points of an n-torus: trivial action, `d = n`.
    pub fn torus_points(points: &[&str], n: u32) -> Result<Self> {
        Self::trivial_action(points, n)
    }

    /// One free orbit of a cyclic group of order `order`, points
    /// `name#0 … name#(order-1)`.
    pub fn free_cyclic_orbit(name: &str, order: usize, cotangent_dim: u32) -> Result<Self> {
        let pts: Vec<String> = (0..order).map(|k| format!("{name}#{k}")).collect();
        let gen = (0..order)
            .map(|k| (pts[k].clone(), pts[(k + 1) % order].clone()))
            .collect();
        let cot = [(pts[0].clone(), cotangent_dim)].into_iter().collect();
        Self::new(pts, vec![gen], cot)
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn contains(&self, point: &str) -> bool {
        self.index.contains_key(point)
    }

    pub fn num_orbits(&self) -> usize {
        self.orbits.len()
    }

    /// Orbit id of a point.
    pub fn orbit_id(&self, point: &str) -> Result<usize> {
        self.index
            .get(point)
            .map(|&i| self.orbit_of[i])
            .ok_or_else(|| Error::UnknownPoint(point.to_string()))
    }

    pub fn representative(&self, point: &str) -> Result<&str> {
        Ok(self.representative_of_orbit(self.orbit_id(point)?))
    }

    pub fn representative_of_orbit(&self, orbit: usize) -> &str {
        &self.points[self.orbits[orbit][0]]
    }

    pub fn orbit_points(&self, orbit: usize) -> impl Iterator<Item = &str> {
        self.orbits[orbit].iter().map(|&i| self.points[i].as_str())
    }

    pub fn cotangent_dim(&self, orbit: usize) -> u32 {
        self.cotangent[orbit]
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    /// Image of `point` under generator `g`.
    pub fn apply_generator(&self, g: usize, point: &str) -> Result<&str> {
        let i = *self
            .index
            .get(point)
            .ok_or_else(|| Error::UnknownPoint(point.to_string()))?;
        Ok(&self.points[self.generators[g][i]])
    }
}
