//! Mutation of marked subsets, paths and exchange quivers.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::dynkin::DynkinDiagram;
use crate::error::{Error, Result};
use crate::rootlat;
use crate::vset::VertexSet;

/// ι_J(i) = inv_{J+i}(i), the identity when J+i is the whole affine diagram.
pub fn iota(d: &DynkinDiagram, j: VertexSet, i: usize) -> Result<usize> {
    d.index(i)?;
    if j.contains(i) {
        return Err(Error::NotMutable(i));
    }
    let ji = j.with(i);
    if d.is_affine() && ji == d.vertex_set() {
        return Ok(i);
    }
    // Only the component of i matters; restricting keeps the ascent short.
    let comp = d.components(ji).into_iter().find(|c| c.contains(i)).expect("i lies in J+i");
    let w = rootlat::longest_element(d, comp)?;
    Ok(rootlat::involution_of(d, &w, comp)?[&i])
}

/// ν_i J = J ∪ {i} \ {ι_J(i)}.
pub fn mutate(d: &DynkinDiagram, j: VertexSet, i: usize) -> Result<VertexSet> {
    let k = iota(d, j, i)?;
    Ok(j.with(i).without(k))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct MutationPath {
    pub base: VertexSet,
    pub steps: Vec<usize>,
}

impl MutationPath {
    pub fn new(base: VertexSet, steps: Vec<usize>) -> Self {
        MutationPath { base, steps }
    }

    pub fn empty(base: VertexSet) -> Self {
        MutationPath { base, steps: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

/// The sequence of subsets visited, starting with the base.
pub fn path_trace(d: &DynkinDiagram, path: &MutationPath) -> Result<Vec<VertexSet>> {
    let mut cur = path.base;
    let mut out = vec![cur];
    for (position, &i) in path.steps.iter().enumerate() {
        if cur.contains(i) || d.index(i).is_err() {
            return Err(Error::InvalidStep { position, vertex: i });
        }
        cur = mutate(d, cur, i)?;
        out.push(cur);
    }
    Ok(out)
}

pub fn apply_path(d: &DynkinDiagram, path: &MutationPath) -> Result<VertexSet> {
    Ok(*path_trace(d, path)?.last().expect("trace is never empty"))
}

/// The path ν_{ι(i₁)} … ν_{ι(iₙ)} from the end of `path` back to its base.
pub fn reverse_path(d: &DynkinDiagram, path: &MutationPath) -> Result<MutationPath> {
    let trace = path_trace(d, path)?;
    let mut steps = Vec::with_capacity(path.len());
    for (k, &i) in path.steps.iter().enumerate().rev() {
        steps.push(iota(d, trace[k], i)?);
    }
    Ok(MutationPath { base: *trace.last().unwrap(), steps })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExchangeQuiver {
    /// Subsets in discovery order; the seed is first.
    pub vertices: Vec<VertexSet>,
    /// (source index, label, target index), grouped by source then label.
    pub arrows: Vec<(usize, usize, usize)>,
    /// The ambient vertex set, used for complement naming.
    pub universe: VertexSet,
}

impl ExchangeQuiver {
    pub fn index_of(&self, j: VertexSet) -> Option<usize> {
        self.vertices.iter().position(|&v| v == j)
    }

    pub fn has_arrow(&self, src: VertexSet, label: usize, dst: VertexSet) -> bool {
        match (self.index_of(src), self.index_of(dst)) {
            (Some(s), Some(t)) => self.arrows.contains(&(s, label, t)),
            _ => false,
        }
    }

    /// Name of a node: the vertices not in J, e.g. "014".
    pub fn node_name(&self, j: VertexSet) -> String {
        self.universe.difference(j).compact()
    }

    /// Arrows as `(source name, label, target name)`, sorted.
    pub fn named_arrows(&self) -> Vec<(String, usize, String)> {
        let mut out: Vec<_> = self
            .arrows
            .iter()
            .map(|&(s, l, t)| (self.node_name(self.vertices[s]), l, self.node_name(self.vertices[t])))
            .collect();
        out.sort();
        out
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph mutation_class {\n");
        for &v in &self.vertices {
            let _ = writeln!(s, "  \"{}\" [tooltip=\"J={}\"];", self.node_name(v), v);
        }
        for &(a, l, b) in &self.arrows {
            let _ = writeln!(
                s,
                "  \"{}\" -> \"{}\" [label=\"{}\"];",
                self.node_name(self.vertices[a]),
                self.node_name(self.vertices[b]),
                l
            );
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "vertices": self.vertices.iter().map(|v| v.to_vec()).collect::<Vec<_>>(),
            "names": self.vertices.iter().map(|&v| self.node_name(v)).collect::<Vec<_>>(),
            "arrows": self.arrows.iter().map(|&(a, l, b)| [a, l, b]).collect::<Vec<_>>(),
        })
    }
}

/// BFS closure of `seed` under mutation at every label of `labels` outside the current subset.
pub fn mutation_class_with_labels(d: &DynkinDiagram, seed: VertexSet, labels: VertexSet) -> Result<ExchangeQuiver> {
    let universe = d.vertex_set();
    if !seed.is_subset(universe) || seed == universe {
        return Err(Error::MarkedNotProper(seed.to_string()));
    }
    let mut vertices = vec![seed];
    let mut index: HashMap<VertexSet, usize> = HashMap::from([(seed, 0)]);
    let mut arrows = Vec::new();
    let mut head = 0;
    while head < vertices.len() {
        let j = vertices[head];
        for i in labels.difference(j).iter() {
            let nu = mutate(d, j, i)?;
            let t = *index.entry(nu).or_insert_with(|| {
                vertices.push(nu);
                vertices.len() - 1
            });
            arrows.push((head, i, t));
        }
        head += 1;
    }
    Ok(ExchangeQuiver { vertices, arrows, universe })
}

pub fn mutation_class(d: &DynkinDiagram, seed: VertexSet) -> Result<ExchangeQuiver> {
    mutation_class_with_labels(d, seed, d.vertex_set())
}

/// Mutation class using only the labels of the finite part (paths avoiding ν₀).
pub fn spherical_mutation_class(d: &DynkinDiagram, seed: VertexSet) -> Result<ExchangeQuiver> {
    mutation_class_with_labels(d, seed, d.vertex_set().without(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynkin::parse_diagram;

    fn set(v: &[usize]) -> VertexSet {
        v.iter().copied().collect()
    }

    #[test]
    fn iota_examples() {
        let a1 = parse_diagram("A1~").unwrap();
        assert_eq!(iota(&a1, VertexSet::EMPTY, 0).unwrap(), 0);
        let a2 = parse_diagram("A2~").unwrap();
        assert_eq!(iota(&a2, set(&[2]), 1).unwrap(), 2);
        assert_eq!(iota(&a2, set(&[1, 2]), 0).unwrap(), 0);
        let e7 = parse_diagram("E7~").unwrap();
        let j = set(&[2, 3, 5, 6, 7]);
        assert_eq!(iota(&e7, j, 1).unwrap(), 7);
        assert_eq!(iota(&e7, j, 2), Err(Error::NotMutable(2)));
    }

    #[test]
    fn mutate_examples() {
        let a1 = parse_diagram("A1~").unwrap();
        assert_eq!(mutate(&a1, VertexSet::EMPTY, 0).unwrap(), VertexSet::EMPTY);
        let e7 = parse_diagram("E7~").unwrap();
        let j = set(&[2, 3, 5, 6, 7]);
        assert_eq!(mutate(&e7, j, 1).unwrap(), set(&[1, 2, 3, 5, 6]));
        assert_eq!(mutate(&e7, j, 0).unwrap(), j);
        assert_eq!(mutate(&e7, j, 4).unwrap(), j);
    }

    #[test]
    fn paths() {
        let a2 = parse_diagram("A2~").unwrap();
        let p = MutationPath::new(VertexSet::EMPTY, vec![1, 2]);
        assert_eq!(apply_path(&a2, &p).unwrap(), VertexSet::EMPTY);
        let e7 = parse_diagram("E7~").unwrap();
        let j = set(&[2, 3, 5, 6, 7]);
        assert_eq!(apply_path(&e7, &MutationPath::empty(j)).unwrap(), j);
        assert_eq!(apply_path(&e7, &MutationPath::new(j, vec![1, 7])).unwrap(), j);
        assert_eq!(reverse_path(&e7, &MutationPath::new(j, vec![1])).unwrap().steps, vec![7]);
        let a1 = parse_diagram("A1~").unwrap();
        assert_eq!(reverse_path(&a1, &MutationPath::new(VertexSet::EMPTY, vec![0])).unwrap().steps, vec![0]);
        assert!(reverse_path(&a1, &MutationPath::empty(VertexSet::EMPTY)).unwrap().is_empty());
        assert_eq!(
            apply_path(&e7, &MutationPath::new(j, vec![2])),
            Err(Error::InvalidStep { position: 0, vertex: 2 })
        );
    }

    #[test]
    fn e7_class() {
        let e7 = parse_diagram("E7~").unwrap();
        let q = mutation_class(&e7, set(&[2, 3, 5, 6, 7])).unwrap();
        assert_eq!(q.vertices.len(), 8);
        assert_eq!(q.arrows.len(), 24);
        assert!(q.has_arrow(set(&[1, 2, 3, 5, 6]), 4, set(&[1, 2, 4, 5, 6])));
        let names: Vec<String> = q.vertices.iter().map(|&v| q.node_name(v)).collect();
        assert!(names.contains(&"047".to_string()) && names.contains(&"037".to_string()));
        assert!(q.to_dot().contains("\"014\" -> \"047\" [label=\"1\"]"));
    }

    #[test]
    fn a1_class() {
        let a1 = parse_diagram("A1~").unwrap();
        let q = mutation_class(&a1, VertexSet::EMPTY).unwrap();
        assert_eq!(q.vertices, vec![VertexSet::EMPTY]);
        assert_eq!(q.arrows, vec![(0, 0, 0), (0, 1, 0)]);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        const NAMES: &[&str] = &["A2~", "A3~", "A5~", "D4~", "D5~", "E6~", "E7~", "E8~"];

        proptest! {
            #[test]
            fn class_invariants(k in 0..NAMES.len(), mask in 0u16..512) {
                let d = parse_diagram(NAMES[k]).unwrap();
                let seed = VertexSet::from_iter(d.vertices().iter().copied().filter(|&v| v != 0 && mask & (1 << v) != 0));
                prop_assume!(seed != d.vertex_set().without(0));
                let q = mutation_class(&d, seed).unwrap();
                for &(s, i, t) in &q.arrows {
                    let j = q.vertices[s];
                    let k = iota(&d, j, i).unwrap();
                    prop_assert_eq!(q.vertices[t].len(), j.len());
                    prop_assert_eq!(mutate(&d, q.vertices[t], k).unwrap(), j);
                    prop_assert!(q.arrows.contains(&(t, k, s)));
                }
                for (s, &j) in q.vertices.iter().enumerate() {
                    let outs = q.arrows.iter().filter(|a| a.0 == s).count();
                    prop_assert_eq!(outs, d.len() - j.len());
                }
                let sph = spherical_mutation_class(&d, seed).unwrap();
                for &j in &sph.vertices {
                    prop_assert!(!j.contains(0));
                    prop_assert!(q.index_of(j).is_some());
                }
            }

            #[test]
            fn reverse_is_inverse(k in 0..NAMES.len(), steps in proptest::collection::vec(0usize..9, 0..8)) {
                let d = parse_diagram(NAMES[k]).unwrap();
                let mut cur = VertexSet::EMPTY.with(1);
                let mut valid = Vec::new();
                for s in steps {
                    let s = s % d.len();
                    if cur.contains(s) { continue; }
                    cur = mutate(&d, cur, s).unwrap();
                    valid.push(s);
                }
                let p = MutationPath::new(VertexSet::singleton(1), valid.clone());
                let r = reverse_path(&d, &p).unwrap();
                prop_assert_eq!(apply_path(&d, &r).unwrap(), p.base);
                prop_assert_eq!(reverse_path(&d, &r).unwrap().steps, valid);
            }
        }
    }
}
