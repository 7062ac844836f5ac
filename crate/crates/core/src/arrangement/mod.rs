//! Chambers of the restricted cone arrangement.
//!
//! Functionals θ on the restricted lattice 𝔥(Δ̄\𝔍) are stored by their values
//! θ(α_k) on the surviving simple roots. A chamber is `w·C_J` in one of three
//! sectors; its walls are the restricted roots `res(w α_i)` (negated in the
//! minus sector) and its rays are the images of the dual basis.

mod enumerate;
mod fan;
mod order;

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, RwLock};

use num_rational::BigRational;
use serde::Serialize;

use crate::dynkin::DynkinData;
use crate::error::{Error, Result};
use crate::linalg::{self, IntMatrix};
use crate::mutation::{self, ExchangeQuiver};
use crate::rootlat::{self, RootVector};
use crate::vset::VertexSet;

pub use enumerate::HasseEdge;
pub use fan::{Cone, FanReport, FanViolation};
pub use order::{AtomicityReport, Comparison, LowerPolytope};

pub const DEFAULT_MAX_CHAMBERS: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Sector {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "-")]
    Minus,
}

impl Sector {
    pub fn sign(self) -> i64 {
        match self {
            Sector::Plus => 1,
            Sector::Zero => 0,
            Sector::Minus => -1,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Sector::Plus => "+",
            Sector::Zero => "0",
            Sector::Minus => "-",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "+" | "plus" | "p" => Ok(Sector::Plus),
            "0" | "zero" => Ok(Sector::Zero),
            "-" | "minus" | "m" => Ok(Sector::Minus),
            other => Err(Error::Config(format!("unknown sector `{other}`"))),
        }
    }
}

impl fmt::Display for Sector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// One wall of a chamber: `root ≥ 0` on the chamber, and `ray` is the
/// generator on which every other wall vanishes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wall {
    pub label: usize,
    pub root: Vec<i64>,
    pub ray: Vec<i64>,
}

#[derive(Clone)]
pub struct Chamber {
    sector: Sector,
    face_set: VertexSet,
    weyl: IntMatrix,
    weyl_inv: IntMatrix,
    path: Vec<usize>,
    walls: Vec<Wall>,
    key: Vec<Vec<i64>>,
}

impl PartialEq for Chamber {
    fn eq(&self, other: &Self) -> bool {
        self.sector == other.sector && self.key == other.key
    }
}

impl Eq for Chamber {}

impl Hash for Chamber {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.sector.hash(state);
        self.key.hash(state);
    }
}

impl fmt::Debug for Chamber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Chamber({}, J={}, path={:?}, roots={:?})", self.sector, self.face_set, self.path, self.key)
    }
}

impl Chamber {
    pub fn sector(&self) -> Sector {
        self.sector
    }

    /// The subset J with σ = w·C_J.
    pub fn face_set(&self) -> VertexSet {
        self.face_set
    }

    /// Matrix of w on the full lattice.
    pub fn weyl(&self) -> &IntMatrix {
        &self.weyl
    }

    /// Wall-crossing labels used to reach this chamber from the principal one.
    pub fn path(&self) -> &[usize] {
        &self.path
    }

    pub fn walls(&self) -> &[Wall] {
        &self.walls
    }

    pub fn wall(&self, label: usize) -> Option<&Wall> {
        self.walls.iter().find(|w| w.label == label)
    }

    pub fn labels(&self) -> VertexSet {
        self.walls.iter().map(|w| w.label).collect()
    }

    /// Sorted wall roots, the canonical key.
    pub fn key(&self) -> &[Vec<i64>] {
        &self.key
    }

    pub fn rays(&self) -> Vec<Vec<i64>> {
        self.walls.iter().map(|w| w.ray.clone()).collect()
    }

    /// Sum of the rays, a point of the interior.
    pub fn interior_point(&self) -> Vec<i64> {
        let n = self.walls.first().map_or(0, |w| w.ray.len());
        let mut p = vec![0; n];
        for w in &self.walls {
            for (x, r) in p.iter_mut().zip(&w.ray) {
                *x += r;
            }
        }
        p
    }

    pub fn contains(&self, theta: &[i64]) -> Result<bool> {
        for w in &self.walls {
            if linalg::dot(&w.root, theta)? < 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn defining_roots(&self, lattice: VertexSet) -> Vec<RootVector> {
        self.walls.iter().map(|w| RootVector::new(lattice, w.root.clone())).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "sector": self.sector.symbol(),
            "faceSet": self.face_set.to_vec(),
            "path": self.path,
            "definingRoots": self.walls.iter().map(|w| w.root.clone()).collect::<Vec<_>>(),
            "labels": self.walls.iter().map(|w| w.label).collect::<Vec<_>>(),
        })
    }
}

/// A face of a chamber, cut out by setting the walls in `extra_zeros` to zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConeRef {
    pub chamber: Chamber,
    pub extra_zeros: VertexSet,
}

impl ConeRef {
    pub fn new(chamber: Chamber, extra_zeros: VertexSet) -> Result<Self> {
        if !extra_zeros.is_subset(chamber.labels()) {
            return Err(Error::NotMutable(extra_zeros.difference(chamber.labels()).iter().next().unwrap_or(0)));
        }
        Ok(ConeRef { chamber, extra_zeros })
    }

    pub fn full(chamber: Chamber) -> Self {
        ConeRef { chamber, extra_zeros: VertexSet::EMPTY }
    }

    pub fn rays(&self) -> Vec<Vec<i64>> {
        self.chamber.walls.iter().filter(|w| !self.extra_zeros.contains(w.label)).map(|w| w.ray.clone()).collect()
    }

    pub fn dimension(&self) -> usize {
        self.chamber.walls.len() - self.extra_zeros.len()
    }

    pub fn is_zero(&self) -> bool {
        self.dimension() == 0
    }

    pub fn is_chamber(&self) -> bool {
        self.extra_zeros.is_empty()
    }

    /// Sorted rays; equal keys mean equal cones.
    pub fn ray_key(&self) -> Vec<Vec<i64>> {
        let mut r = self.rays();
        r.sort();
        r
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut v = self.chamber.to_json();
        v["extraZeros"] = serde_json::json!(self.extra_zeros.to_vec());
        v["rays"] = serde_json::json!(self.ray_key());
        v
    }
}

#[derive(Clone, Debug)]
struct Crossing {
    forward: IntMatrix,
    backward: IntMatrix,
}

#[derive(Default)]
struct RootCache {
    /// Positive restricted real roots from affine roots of level ≤ key, exact vectors.
    exact: HashMap<u32, Arc<Vec<Vec<i64>>>>,
    /// Primitive representatives of the same, one per hyperplane.
    primitive: HashMap<u32, Arc<Vec<Vec<i64>>>>,
}

/// The restricted arrangement of a Dynkin datum, with wall-crossing data for
/// every subset in the mutation class of 𝔍 precomputed.
pub struct Arrangement {
    data: DynkinData,
    lattice: VertexSet,
    rows: Vec<usize>,
    delta: Vec<i64>,
    delta_res: Vec<i64>,
    class: ExchangeQuiver,
    table: HashMap<(VertexSet, usize), Crossing>,
    finite_hyperplanes: Vec<Vec<i64>>,
    cache: RwLock<RootCache>,
    max_chambers: usize,
}

impl fmt::Debug for Arrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Arrangement({})", self.data)
    }
}

impl Arrangement {
    pub fn new(data: DynkinData) -> Result<Self> {
        let d = data.ambient();
        let lattice = data.restricted_vertices();
        let rows: Vec<usize> = lattice.iter().map(|v| d.index(v)).collect::<Result<_>>()?;
        let delta = rootlat::delta(d)?.coords;
        let delta_res = rows.iter().map(|&r| delta[r]).collect();
        let class = mutation::mutation_class(d, data.marked())?;
        let mut table = HashMap::new();
        for &(s, i, _) in &class.arrows {
            let j = class.vertices[s];
            let wj = rootlat::longest_element(d, j)?.matrix;
            let wji = rootlat::longest_element(d, j.with(i))?.matrix;
            table.insert((j, i), Crossing { forward: wj.mul(&wji)?, backward: wji.mul(&wj)? });
        }
        let fin = d.vertex_set().without(0);
        let mut seen = BTreeSet::new();
        for r in rootlat::finite_positive_roots(d, fin)? {
            let res: Vec<i64> = rows.iter().map(|&k| r[k]).collect();
            if !linalg::is_zero(&res) {
                seen.insert(linalg::primitive(&res));
            }
        }
        Ok(Arrangement {
            data,
            lattice,
            rows,
            delta,
            delta_res,
            class,
            table,
            finite_hyperplanes: seen.into_iter().collect(),
            cache: RwLock::new(RootCache::default()),
            max_chambers: DEFAULT_MAX_CHAMBERS,
        })
    }

    pub fn with_max_chambers(mut self, cap: usize) -> Self {
        self.max_chambers = cap.max(1);
        self
    }

    pub fn max_chambers(&self) -> usize {
        self.max_chambers
    }

    pub fn data(&self) -> &DynkinData {
        &self.data
    }

    /// Index set Δ̄\𝔍 of the restricted lattice.
    pub fn lattice(&self) -> VertexSet {
        self.lattice
    }

    pub fn dim(&self) -> usize {
        self.lattice.len()
    }

    pub fn delta_restricted(&self) -> RootVector {
        RootVector::new(self.lattice, self.delta_res.clone())
    }

    pub fn delta_coords(&self) -> &[i64] {
        &self.delta_res
    }

    pub fn mutation_class(&self) -> &ExchangeQuiver {
        &self.class
    }

    /// Restriction of a full-lattice vector to 𝔥(Δ̄\𝔍).
    pub fn restrict_coords(&self, v: &[i64]) -> Vec<i64> {
        self.rows.iter().map(|&r| v[r]).collect()
    }

    /// Positions (in restricted coordinates) of the vertices of Δ\𝔍.
    pub fn finite_positions(&self) -> Vec<usize> {
        self.lattice.iter().enumerate().filter(|&(_, v)| v != 0).map(|(k, _)| k).collect()
    }

    pub fn mutable_labels(&self, sector: Sector, j: VertexSet) -> VertexSet {
        let all = self.data.all_vertices().difference(j);
        if sector == Sector::Zero {
            all.without(0)
        } else {
            all
        }
    }

    fn build(&self, sector: Sector, j: VertexSet, weyl: IntMatrix, weyl_inv: IntMatrix, path: Vec<usize>) -> Result<Chamber> {
        let d = self.data.ambient();
        let labels = self.mutable_labels(sector, j);
        let sign = if sector == Sector::Minus { -1 } else { 1 };
        let mut walls = Vec::with_capacity(labels.len());
        for i in labels.iter() {
            let col = weyl.column(d.index(i)?);
            let root: Vec<i64> = self.rows.iter().map(|&r| sign * col[r]).collect();
            let k = d.index(i)?;
            let full_ray: Vec<i64> = match sector {
                Sector::Zero => {
                    let di = self.delta[k];
                    let r0 = weyl_inv.row(0);
                    weyl_inv.row(k).iter().zip(r0).map(|(&a, &b)| a - di * b).collect()
                }
                _ => weyl_inv.row(k).to_vec(),
            };
            if self.data.marked().iter().any(|m| full_ray[m] != 0) {
                return Err(Error::Internal("chamber ray leaves the restricted subspace".into()));
            }
            let ray: Vec<i64> = self.rows.iter().map(|&r| sign * full_ray[r]).collect();
            walls.push(Wall { label: i, root, ray });
        }
        let mut key: Vec<Vec<i64>> = walls.iter().map(|w| w.root.clone()).collect();
        key.sort();
        Ok(Chamber { sector, face_set: j, weyl, weyl_inv, path, walls, key })
    }

    pub fn principal_chamber(&self, sector: Sector) -> Chamber {
        let n = self.data.ambient().len();
        self.build(sector, self.data.marked(), IntMatrix::identity(n), IntMatrix::identity(n), Vec::new())
            .expect("principal chamber is always well formed")
    }

    /// ν_i σ: the chamber across the wall labelled `i`.
    pub fn wall_cross(&self, sigma: &Chamber, i: usize) -> Result<Chamber> {
        if !self.mutable_labels(sigma.sector, sigma.face_set).contains(i) {
            return Err(Error::NotMutable(i));
        }
        let c = self
            .table
            .get(&(sigma.face_set, i))
            .ok_or_else(|| Error::Internal(format!("no crossing data for J={} at {i}", sigma.face_set)))?;
        let j2 = mutation::mutate(self.data.ambient(), sigma.face_set, i)?;
        let mut path = sigma.path.clone();
        path.push(i);
        self.build(sigma.sector, j2, sigma.weyl.mul(&c.forward)?, c.backward.mul(&sigma.weyl_inv)?, path)
    }

    /// Follows a sequence of wall labels from `start`.
    pub fn walk(&self, start: &Chamber, steps: &[usize]) -> Result<Chamber> {
        let mut cur = start.clone();
        for (position, &i) in steps.iter().enumerate() {
            cur = self.wall_cross(&cur, i).map_err(|e| match e {
                Error::NotMutable(v) => Error::InvalidStep { position, vertex: v },
                e => e,
            })?;
        }
        Ok(cur)
    }

    /// The same chamber with its provenance path replaced.
    pub fn with_path(&self, sigma: &Chamber, path: Vec<usize>) -> Chamber {
        Chamber { path, ..sigma.clone() }
    }

    /// −σ for a chamber in sector ±.
    pub fn negate(&self, sigma: &Chamber) -> Result<Chamber> {
        let sector = match sigma.sector {
            Sector::Plus => Sector::Minus,
            Sector::Minus => Sector::Plus,
            Sector::Zero => return Err(Error::SectorMismatch("sector 0 is not negated".into())),
        };
        self.build(sector, sigma.face_set, sigma.weyl.clone(), sigma.weyl_inv.clone(), sigma.path.clone())
    }

    pub fn delta_of(&self, theta: &[i64]) -> Result<i64> {
        linalg::dot(&self.delta_res, theta)
    }

    /// The cone of the arrangement containing θ in its relative interior.
    pub fn locate(&self, theta: &[BigRational]) -> Result<ConeRef> {
        if theta.len() != self.dim() {
            return Err(Error::LatticeMismatch);
        }
        let t = linalg::rational_to_primitive(theta)?;
        self.locate_int(&t)
    }

    pub fn locate_int(&self, theta: &[i64]) -> Result<ConeRef> {
        if theta.len() != self.dim() {
            return Err(Error::LatticeMismatch);
        }
        if linalg::is_zero(theta) {
            let c = self.principal_chamber(Sector::Plus);
            let all = c.labels();
            return Ok(ConeRef { chamber: c, extra_zeros: all });
        }
        let d = self.delta_of(theta)?;
        let sector = match d.signum() {
            1 => Sector::Plus,
            0 => Sector::Zero,
            _ => Sector::Minus,
        };
        let mut cur = self.principal_chamber(sector);
        for _ in 0..=self.max_chambers {
            let mut next = None;
            let mut zeros = VertexSet::EMPTY;
            for w in &cur.walls {
                let v = linalg::dot(&w.root, theta)?;
                if v < 0 {
                    next = Some(w.label);
                    break;
                }
                if v == 0 {
                    zeros = zeros.with(w.label);
                }
            }
            match next {
                Some(i) => cur = self.wall_cross(&cur, i)?,
                None => return Ok(ConeRef { chamber: cur, extra_zeros: zeros }),
            }
        }
        Err(Error::ResourceCap(self.max_chambers))
    }

    /// Every face of a chamber, the chamber itself first and the zero cone last.
    pub fn faces(&self, sigma: &Chamber) -> Vec<ConeRef> {
        let labels: Vec<usize> = sigma.labels().to_vec();
        let n = labels.len();
        let mut out = Vec::with_capacity(1 << n);
        for mask in 0u32..(1 << n) {
            let z: VertexSet = (0..n).filter(|b| mask & (1 << b) != 0).map(|b| labels[b]).collect();
            out.push(ConeRef { chamber: sigma.clone(), extra_zeros: z });
        }
        out
    }

    /// Positive restricted real roots coming from affine roots of level ≤ `level`.
    /// Zero restrictions and multiples of δ_𝔍 are dropped.
    pub fn restricted_positive_roots(&self, level: u32) -> Result<Arc<Vec<Vec<i64>>>> {
        if let Some(r) = self.cache.read().expect("cache lock").exact.get(&level) {
            return Ok(r.clone());
        }
        let d = self.data.ambient();
        let mut seen = BTreeSet::new();
        for r in rootlat::positive_real_roots(d, level)? {
            let res = self.restrict_coords(&r);
            if linalg::is_zero(&res) || self.is_delta_multiple(&res) {
                continue;
            }
            seen.insert(res);
        }
        let exact: Arc<Vec<Vec<i64>>> = Arc::new(seen.into_iter().collect());
        let prim: BTreeSet<Vec<i64>> = exact.iter().map(|r| linalg::primitive(r)).collect();
        let mut cache = self.cache.write().expect("cache lock");
        cache.primitive.insert(level, Arc::new(prim.into_iter().collect()));
        cache.exact.insert(level, exact.clone());
        Ok(exact)
    }

    /// One primitive positive representative per real hyperplane, up to `level`.
    pub fn hyperplanes(&self, level: u32) -> Result<Arc<Vec<Vec<i64>>>> {
        if let Some(r) = self.cache.read().expect("cache lock").primitive.get(&level) {
            return Ok(r.clone());
        }
        self.restricted_positive_roots(level)?;
        Ok(self.cache.read().expect("cache lock").primitive[&level].clone())
    }

    /// Primitive positive hyperplane normals of the sector-0 arrangement.
    pub fn finite_hyperplanes(&self) -> &[Vec<i64>] {
        &self.finite_hyperplanes
    }

    pub fn is_delta_multiple(&self, v: &[i64]) -> bool {
        let p = linalg::primitive(v);
        p == self.delta_res || linalg::neg(&p) == self.delta_res
    }

    /// Largest k with v − kδ_𝔍 ≥ 0 (v non-negative).
    pub fn restricted_level(&self, v: &[i64]) -> i64 {
        rootlat::level(v, &self.delta_res)
    }

    /// Whether `v` is a real restricted root (either sign).
    pub fn is_restricted_root(&self, v: &[i64]) -> Result<bool> {
        if linalg::is_zero(v) {
            return Ok(false);
        }
        let pos = if rootlat::is_positive(v) {
            v.to_vec()
        } else if rootlat::is_positive(&linalg::neg(v)) {
            linalg::neg(v)
        } else {
            return Ok(false);
        };
        let lv = u32::try_from(self.restricted_level(&pos)).map_err(|_| Error::Overflow)?;
        Ok(self.restricted_positive_roots(lv)?.binary_search(&pos).is_ok())
    }

    /// φ_i from 𝔥(Δ̄\ν_iJ) to 𝔥(Δ̄\J) for J in the mutation class.
    pub fn phi(&self, j: VertexSet, i: usize) -> Result<rootlat::LinearMap> {
        rootlat::phi_map_for(self.data.ambient(), j, i)
    }
}
