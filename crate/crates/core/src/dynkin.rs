//! Simply-laced Dynkin diagrams and their affine extensions.
//!
//! Vertex ids (the extended vertex is always 0):
//!
//! ```text
//! A_n   1 - 2 - ... - n            affine: 0 joined to 1 and n (A1~: 0 = 1)
//!
//! D_n   1 - 2 - ... - (n-2) - (n-1)
//!                       |
//!                       n          affine: 0 joined to 2
//!
//! E_6   1 - 2 - 3 - 4 - 5
//!               |
//!               6 - 0              (0 only in E6~)
//!
//! E_7   0 - 1 - 2 - 3 - 4 - 5 - 6  (0 only in E7~)
//!               |
//!               7
//!
//! E_8   0 - 1 - 2 - 3 - 4 - 5 - 6 - 7
//!                           |
//!                           8
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, IntMatrix};
use crate::rootlat;
use crate::vset::{VertexSet, MAX_VERTEX};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    A,
    D,
    E,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::D => 'D',
            Family::E => 'E',
        }
    }
}

#[derive(Clone)]
pub struct DynkinDiagram {
    family: Family,
    rank: usize,
    affine: bool,
    vertices: Vec<usize>,
    edges: Vec<(usize, usize)>,
    cartan: IntMatrix,
    involution: OnceLock<Vec<usize>>,
}

impl PartialEq for DynkinDiagram {
    fn eq(&self, other: &Self) -> bool {
        self.family == other.family
            && self.rank == other.rank
            && self.affine == other.affine
            && self.cartan == other.cartan
    }
}

impl Eq for DynkinDiagram {}

impl fmt::Debug for DynkinDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for DynkinDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}", self.family.letter(), self.rank, if self.affine { "~" } else { "" })
    }
}

fn chain(a: usize, b: usize) -> Vec<(usize, usize)> {
    (a..b).map(|i| (i, i + 1)).collect()
}

/// Builds the diagram of the given family and rank.
pub fn build_diagram(family: Family, rank: usize, affine: bool) -> Result<DynkinDiagram> {
    let bad = || Error::RankOutOfRange { family: family.letter(), rank };
    let mut edges = match family {
        Family::A => {
            if !(1..=MAX_VERTEX).contains(&rank) {
                return Err(bad());
            }
            chain(1, rank)
        }
        Family::D => {
            if !(4..=MAX_VERTEX).contains(&rank) {
                return Err(bad());
            }
            let mut e = chain(1, rank - 1);
            e.push((rank - 2, rank));
            e
        }
        Family::E => match rank {
            6 => vec![(1, 2), (2, 3), (3, 4), (4, 5), (3, 6)],
            7 => vec![(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (3, 7)],
            8 => vec![(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (5, 8)],
            _ => return Err(bad()),
        },
    };
    if affine {
        match (family, rank) {
            (Family::A, 1) => edges.push((0, 1)),
            (Family::A, n) => {
                edges.push((0, 1));
                edges.push((0, n));
            }
            (Family::D, _) => edges.push((0, 2)),
            (Family::E, 6) => edges.push((0, 6)),
            (Family::E, _) => edges.push((0, 1)),
        }
    }
    let vertices: Vec<usize> = if affine { (0..=rank).collect() } else { (1..=rank).collect() };
    let n = vertices.len();
    let pos = |v: usize| if affine { v } else { v - 1 };
    let mut cartan = IntMatrix::identity(n);
    for i in 0..n {
        cartan.set(i, i, 2);
    }
    let bond = if affine && family == Family::A && rank == 1 { -2 } else { -1 };
    for e in edges.iter_mut() {
        if e.0 > e.1 {
            *e = (e.1, e.0);
        }
        cartan.set(pos(e.0), pos(e.1), bond);
        cartan.set(pos(e.1), pos(e.0), bond);
    }
    edges.sort();
    Ok(DynkinDiagram { family, rank, affine, vertices, edges, cartan, involution: OnceLock::new() })
}

/// Parses `A1~`, `E7~`, `D4` (tilde marks the affine extension).
pub fn parse_diagram(s: &str) -> Result<DynkinDiagram> {
    let s = s.trim();
    let (body, affine) = match s.strip_suffix('~') {
        Some(b) => (b, true),
        None => (s, false),
    };
    let mut chars = body.chars();
    let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
        Some('A') => Family::A,
        Some('D') => Family::D,
        Some('E') => Family::E,
        _ => return Err(Error::UnknownFamily(s.to_string())),
    };
    let rank: usize = chars.as_str().parse().map_err(|_| Error::UnknownFamily(s.to_string()))?;
    build_diagram(family, rank, affine)
}

impl DynkinDiagram {
    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_affine(&self) -> bool {
        self.affine
    }

    pub fn extended_vertex(&self) -> Option<usize> {
        self.affine.then_some(0)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.vertices.iter().copied().collect()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Position of a vertex id in coordinate vectors over the whole diagram.
    pub fn index(&self, v: usize) -> Result<usize> {
        self.vertices.binary_search(&v).map_err(|_| Error::UnknownVertex(v))
    }

    pub fn cartan_matrix(&self) -> &IntMatrix {
        &self.cartan
    }

    pub fn cartan_pairing(&self, i: usize, j: usize) -> Result<i64> {
        Ok(self.cartan.get(self.index(i)?, self.index(j)?))
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        self.edges.binary_search(&(a, b)).is_ok()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.vertices.iter().copied().filter(move |&u| u != v && self.adjacent(u, v))
    }

    /// Coxeter exponent m_ij, `None` for the infinite bond of A1~.
    pub fn coxeter_exponent(&self, i: usize, j: usize) -> Result<Option<u32>> {
        let c = self.cartan_pairing(i, j)?;
        Ok(match (i == j, c) {
            (true, _) => Some(1),
            (false, 0) => Some(2),
            (false, -1) => Some(3),
            _ => None,
        })
    }

    /// Connected components of the full subgraph on `s`, in ascending order of least vertex.
    pub fn components(&self, s: VertexSet) -> Vec<VertexSet> {
        let mut seen = VertexSet::EMPTY;
        let mut out = Vec::new();
        for v in s.iter() {
            if seen.contains(v) {
                continue;
            }
            let mut comp = VertexSet::singleton(v);
            let mut stack = vec![v];
            while let Some(u) = stack.pop() {
                for w in self.neighbors(u) {
                    if s.contains(w) && !comp.contains(w) {
                        comp = comp.with(w);
                        stack.push(w);
                    }
                }
            }
            seen = seen.union(comp);
            out.push(comp);
        }
        out
    }

    /// The underlying finite diagram of an affine one (same vertex ids).
    pub fn finite_part(&self) -> Result<DynkinDiagram> {
        if !self.affine {
            return Err(Error::NotAffine);
        }
        build_diagram(self.family, self.rank, false)
    }

    /// Primitive positive generator of the Cartan kernel, normalized so the
    /// extended vertex has label 1.
    pub fn kac_labels(&self) -> Result<BTreeMap<usize, i64>> {
        if !self.affine {
            return Err(Error::NotAffine);
        }
        let n = self.len();
        let a: Vec<Vec<i64>> = (1..n).map(|i| (1..n).map(|j| self.cartan.get(i, j)).collect()).collect();
        let b: Vec<i64> = (1..n).map(|i| -self.cartan.get(i, 0)).collect();
        let x = linalg::solve(&a, &b).ok_or_else(|| Error::Internal("singular finite Cartan matrix".into()))?;
        let mut labels = BTreeMap::from([(0, 1)]);
        for (k, q) in x.iter().enumerate() {
            let v = linalg::rational_to_i64(q)
                .filter(|&v| v > 0)
                .ok_or_else(|| Error::Internal("Cartan kernel is not a positive integer vector".into()))?;
            labels.insert(self.vertices[k + 1], v);
        }
        let delta: Vec<i64> = labels.values().copied().collect();
        if !linalg::is_zero(&self.cartan.mul_vec(&delta)?) {
            return Err(Error::Internal("labels are not in the Cartan kernel".into()));
        }
        Ok(labels)
    }

    /// Diagram involution induced by the longest element; the identity for affine diagrams.
    pub fn longest_involution(&self) -> Result<BTreeMap<usize, usize>> {
        if self.affine {
            return Ok(self.vertices.iter().map(|&v| (v, v)).collect());
        }
        if self.involution.get().is_none() {
            let w = rootlat::longest_element(self, self.vertex_set())?;
            let inv = rootlat::involution_of(self, &w, self.vertex_set())?;
            let _ = self.involution.set(self.vertices.iter().map(|v| inv[v]).collect());
        }
        let inv = self.involution.get().expect("set above");
        Ok(self.vertices.iter().copied().zip(inv.iter().copied()).collect())
    }

    /// Flips the sign of one off-diagonal Cartan entry, breaking symmetry.
    /// Only meant for exercising the invariant checker.
    #[doc(hidden)]
    pub fn with_cartan_fault(mut self) -> Self {
        let v = self.cartan.get(0, 1);
        self.cartan.set(0, 1, if v == 0 { 1 } else { -v });
        self.involution = OnceLock::new();
        self
    }

    pub fn to_json(&self) -> serde_json::Value {
        let labels: BTreeMap<String, i64> = self
            .kac_labels()
            .map(|m| m.into_iter().map(|(k, v)| (k.to_string(), v)).collect())
            .unwrap_or_default();
        serde_json::json!({
            "family": self.family.letter().to_string(),
            "rank": self.rank,
            "affine": self.affine,
            "vertices": self.vertices,
            "edges": self.edges.iter().map(|&(a, b)| [a, b]).collect::<Vec<_>>(),
            "labels": labels,
        })
    }
}

/// The datum 𝔍 ⊆ Δ ⊂ Δ̄: an affine diagram with a marked proper subset of its finite part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DynkinData {
    ambient: DynkinDiagram,
    marked: VertexSet,
}

impl DynkinData {
    pub fn new(ambient: DynkinDiagram, marked: VertexSet) -> Result<Self> {
        if !ambient.is_affine() {
            return Err(Error::NotAffine);
        }
        let delta = ambient.vertex_set().without(0);
        if !marked.is_subset(delta) || marked == delta {
            return Err(Error::MarkedNotProper(marked.to_string()));
        }
        Ok(DynkinData { ambient, marked })
    }

    pub fn parse(diagram: &str, marked: &[usize]) -> Result<Self> {
        let d = parse_diagram(diagram)?;
        if let Some(&v) = marked.iter().find(|&&v| d.index(v).is_err()) {
            return Err(Error::UnknownVertex(v));
        }
        DynkinData::new(d, marked.iter().copied().collect())
    }

    pub fn ambient(&self) -> &DynkinDiagram {
        &self.ambient
    }

    pub fn marked(&self) -> VertexSet {
        self.marked
    }

    pub fn all_vertices(&self) -> VertexSet {
        self.ambient.vertex_set()
    }

    /// Δ = Δ̄ \ {0}.
    pub fn delta_part(&self) -> VertexSet {
        self.all_vertices().without(0)
    }

    /// Δ̄ \ 𝔍, the index set of the restricted lattice.
    pub fn restricted_vertices(&self) -> VertexSet {
        self.all_vertices().difference(self.marked)
    }

    pub fn with_marked(&self, marked: VertexSet) -> Result<Self> {
        DynkinData::new(self.ambient.clone(), marked)
    }
}

impl fmt::Display for DynkinData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} marked {}", self.ambient, self.marked)
    }
}
