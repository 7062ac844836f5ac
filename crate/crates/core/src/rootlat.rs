//! Root lattice arithmetic: reflections, Weyl elements, real roots, restriction
//! to sublattices and the wall-crossing maps between restricted lattices.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;

use num_rational::BigRational;
use serde::Serialize;

use crate::dynkin::{DynkinData, DynkinDiagram};
use crate::error::{Error, Result};
use crate::linalg::{self, IntMatrix};
use crate::mutation;
use crate::vset::VertexSet;

/// Integer vector over the simple roots indexed by `lattice` (ascending ids).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct RootVector {
    pub lattice: VertexSet,
    pub coords: Vec<i64>,
}

impl RootVector {
    pub fn new(lattice: VertexSet, coords: Vec<i64>) -> Self {
        assert_eq!(lattice.len(), coords.len(), "coordinate count must match the lattice");
        RootVector { lattice, coords }
    }

    pub fn zero(lattice: VertexSet) -> Self {
        RootVector { lattice, coords: vec![0; lattice.len()] }
    }

    pub fn simple(lattice: VertexSet, i: usize) -> Result<Self> {
        let k = position(lattice, i)?;
        let mut v = Self::zero(lattice);
        v.coords[k] = 1;
        Ok(v)
    }

    pub fn coord(&self, i: usize) -> Result<i64> {
        Ok(self.coords[position(self.lattice, i)?])
    }

    pub fn is_zero(&self) -> bool {
        linalg::is_zero(&self.coords)
    }

    pub fn is_positive(&self) -> bool {
        is_positive(&self.coords)
    }

    pub fn is_negative(&self) -> bool {
        is_positive(&linalg::neg(&self.coords))
    }

    pub fn add(&self, other: &RootVector) -> Result<RootVector> {
        if self.lattice != other.lattice {
            return Err(Error::LatticeMismatch);
        }
        Ok(RootVector::new(self.lattice, linalg::add(&self.coords, &other.coords)?))
    }

    pub fn scaled(&self, k: i64) -> Result<RootVector> {
        Ok(RootVector::new(self.lattice, linalg::scale(&self.coords, k)?))
    }

    pub fn neg(&self) -> RootVector {
        RootVector::new(self.lattice, linalg::neg(&self.coords))
    }

    pub fn primitive(&self) -> RootVector {
        RootVector::new(self.lattice, linalg::primitive(&self.coords))
    }

    pub fn height(&self) -> i64 {
        self.coords.iter().sum()
    }
}

impl fmt::Debug for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (v, &c) in self.lattice.iter().zip(&self.coords) {
            match c {
                0 => {}
                1 => terms.push(format!("a{v}")),
                -1 => terms.push(format!("-a{v}")),
                c => terms.push(format!("{c}a{v}")),
            }
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", terms.join("+").replace("+-", "-"))
    }
}

pub fn position(lattice: VertexSet, i: usize) -> Result<usize> {
    if !lattice.contains(i) {
        return Err(Error::UnknownVertex(i));
    }
    Ok(lattice.iter().take_while(|&v| v < i).count())
}

pub fn is_positive(v: &[i64]) -> bool {
    v.iter().all(|&x| x >= 0) && v.iter().any(|&x| x > 0)
}

/// δ over the full affine lattice.
pub fn delta(d: &DynkinDiagram) -> Result<RootVector> {
    Ok(RootVector::new(d.vertex_set(), d.kac_labels()?.into_values().collect()))
}

/// Matrix of s_i on the full lattice of `d`, acting on column vectors.
pub fn reflection_matrix(d: &DynkinDiagram, i: usize) -> Result<IntMatrix> {
    let p = d.index(i)?;
    let c = d.cartan_matrix();
    let mut m = IntMatrix::identity(d.len());
    for j in 0..d.len() {
        m.set(p, j, i64::from(p == j) - c.get(p, j));
    }
    Ok(m)
}

pub fn simple_reflection(ctx: &DynkinData, i: usize, v: &RootVector) -> Result<RootVector> {
    let d = ctx.ambient();
    if v.lattice != d.vertex_set() {
        return Err(Error::LatticeMismatch);
    }
    Ok(RootVector::new(v.lattice, reflection_matrix(d, i)?.mul_vec(&v.coords)?))
}

/// Exact matrix on the full lattice; `word` is provenance only.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    pub matrix: IntMatrix,
    pub word: Option<Vec<usize>>,
}

impl WeylElement {
    pub fn identity(n: usize) -> Self {
        WeylElement { matrix: IntMatrix::identity(n), word: Some(Vec::new()) }
    }

    pub fn from_word(d: &DynkinDiagram, word: &[usize]) -> Result<Self> {
        let mut m = IntMatrix::identity(d.len());
        for &i in word {
            m = m.mul(&reflection_matrix(d, i)?)?;
        }
        Ok(WeylElement { matrix: m, word: Some(word.to_vec()) })
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &WeylElement) -> Result<Self> {
        let word = match (&self.word, &other.word) {
            (Some(a), Some(b)) => Some(a.iter().chain(b).copied().collect()),
            _ => None,
        };
        Ok(WeylElement { matrix: self.matrix.mul(&other.matrix)?, word })
    }

    pub fn inverse(&self) -> Result<Self> {
        let matrix = linalg::unimodular_inverse(&self.matrix)?;
        let word = self.word.as_ref().map(|w| w.iter().rev().copied().collect());
        Ok(WeylElement { matrix, word })
    }

    pub fn apply(&self, v: &[i64]) -> Result<Vec<i64>> {
        self.matrix.mul_vec(v)
    }

    pub fn length(&self) -> Option<usize> {
        self.word.as_ref().map(Vec::len)
    }
}

/// Upper bound on greedy ascent steps; E8 has 120 positive roots.
const MAX_LONGEST_LENGTH: usize = 256;

/// Longest element of the parabolic subgroup W(J), by greedy ascent with the
/// smallest admissible index first.
pub fn longest_element(d: &DynkinDiagram, j: VertexSet) -> Result<WeylElement> {
    if !j.is_subset(d.vertex_set()) {
        return Err(Error::UnknownVertex(j.difference(d.vertex_set()).iter().next().unwrap_or(0)));
    }
    if d.is_affine() && j == d.vertex_set() {
        return Err(Error::InfiniteParabolic);
    }
    let mut m = IntMatrix::identity(d.len());
    let mut word = Vec::new();
    let refl: BTreeMap<usize, IntMatrix> =
        j.iter().map(|i| Ok((i, reflection_matrix(d, i)?))).collect::<Result<_>>()?;
    'ascent: loop {
        for i in j.iter() {
            let col = m.column(d.index(i)?);
            if is_positive(&col) {
                m = m.mul(&refl[&i])?;
                word.push(i);
                if word.len() > MAX_LONGEST_LENGTH {
                    return Err(Error::Internal("longest element search did not terminate".into()));
                }
                continue 'ascent;
            }
        }
        break;
    }
    Ok(WeylElement { matrix: m, word: Some(word) })
}

pub fn longest_element_word(ctx: &DynkinData, j: VertexSet) -> Result<WeylElement> {
    longest_element(ctx.ambient(), j)
}

/// Reads off inv_J from w_J: w_J(α_i) = -α_{inv(i)}.
pub fn involution_of(d: &DynkinDiagram, w: &WeylElement, j: VertexSet) -> Result<BTreeMap<usize, usize>> {
    let mut out = BTreeMap::new();
    for i in j.iter() {
        let col = w.matrix.column(d.index(i)?);
        let hits: Vec<usize> = col.iter().enumerate().filter(|(_, &x)| x != 0).map(|(k, _)| k).collect();
        match hits.as_slice() {
            [k] if col[*k] == -1 && j.contains(d.vertices()[*k]) => {
                out.insert(i, d.vertices()[*k]);
            }
            _ => return Err(Error::Internal(format!("w_J does not send α_{i} to a negative simple root"))),
        }
    }
    Ok(out)
}

/// Positive roots of the finite subgraph on `j`, as vectors over the full lattice of `d`.
pub fn finite_positive_roots(d: &DynkinDiagram, j: VertexSet) -> Result<Vec<Vec<i64>>> {
    if d.is_affine() && j == d.vertex_set() {
        return Err(Error::InfiniteParabolic);
    }
    let refl: Vec<IntMatrix> = j.iter().map(|i| reflection_matrix(d, i)).collect::<Result<_>>()?;
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    for i in j.iter() {
        let mut e = vec![0; d.len()];
        e[d.index(i)?] = 1;
        seen.insert(e.clone());
        queue.push_back(e);
    }
    while let Some(r) = queue.pop_front() {
        for s in &refl {
            let img = s.mul_vec(&r)?;
            if is_positive(&img) && seen.insert(img.clone()) {
                if seen.len() > 4 * MAX_LONGEST_LENGTH {
                    return Err(Error::Internal("finite root system is too large".into()));
                }
                queue.push_back(img);
            }
        }
    }
    let mut out: Vec<Vec<i64>> = seen.into_iter().collect();
    out.sort_by(|a, b| (a.iter().sum::<i64>(), a).cmp(&(b.iter().sum::<i64>(), b)));
    Ok(out)
}

/// Largest k with v - kδ ≥ 0, for a non-negative vector.
pub fn level(v: &[i64], delta: &[i64]) -> i64 {
    v.iter().zip(delta).map(|(&c, &d)| c.div_euclid(d)).min().unwrap_or(0)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RealRoot {
    pub root: RootVector,
    pub positive: bool,
    pub level: u32,
}

/// Positive real roots of the affine diagram of level at most `level_bound`,
/// as raw vectors, sorted by (height, coords).
pub fn positive_real_roots(d: &DynkinDiagram, level_bound: u32) -> Result<Vec<Vec<i64>>> {
    let delta = delta(d)?.coords;
    let ht_delta: i64 = delta.iter().sum();
    let max_height = (i64::from(level_bound) + 1).checked_mul(ht_delta).ok_or(Error::Overflow)? - 1;
    let refl: Vec<IntMatrix> = d.vertices().iter().map(|&i| reflection_matrix(d, i)).collect::<Result<_>>()?;
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    for k in 0..d.len() {
        let mut e = vec![0; d.len()];
        e[k] = 1;
        seen.insert(e.clone());
        queue.push_back(e);
    }
    while let Some(r) = queue.pop_front() {
        for s in &refl {
            let img = s.mul_vec(&r)?;
            if is_positive(&img) && img.iter().sum::<i64>() <= max_height && seen.insert(img.clone()) {
                queue.push_back(img);
            }
        }
    }
    let mut out: Vec<Vec<i64>> = seen.into_iter().filter(|r| level(r, &delta) <= i64::from(level_bound)).collect();
    out.sort_by(|a, b| (a.iter().sum::<i64>(), a).cmp(&(b.iter().sum::<i64>(), b)));
    Ok(out)
}

/// All real roots ±α with level(α) ≤ `level_bound`, positives first.
pub fn enumerate_real_roots(ctx: &DynkinData, level_bound: u32) -> Result<Vec<RealRoot>> {
    let d = ctx.ambient();
    let delta = delta(d)?.coords;
    let lattice = d.vertex_set();
    let pos = positive_real_roots(d, level_bound)?;
    let mut out = Vec::with_capacity(2 * pos.len());
    for r in &pos {
        let lv = level(r, &delta) as u32;
        out.push(RealRoot { root: RootVector::new(lattice, r.clone()), positive: true, level: lv });
    }
    for r in &pos {
        let lv = level(r, &delta) as u32;
        out.push(RealRoot { root: RootVector::new(lattice, linalg::neg(r)), positive: false, level: lv });
    }
    Ok(out)
}

/// Cartan pairing (u, v) on the full lattice.
pub fn pairing(d: &DynkinDiagram, u: &[i64], v: &[i64]) -> Result<i64> {
    linalg::dot(u, &d.cartan_matrix().mul_vec(v)?)
}

/// Drops the coordinates indexed by `drop`.
pub fn restrict(v: &RootVector, drop: VertexSet) -> Result<RootVector> {
    let target = v.lattice.difference(drop);
    if target.len() < 2 {
        return Err(Error::LatticeTooSmall);
    }
    let coords = v.lattice.iter().zip(&v.coords).filter(|(i, _)| !drop.contains(*i)).map(|(_, &c)| c).collect();
    Ok(RootVector::new(target, coords))
}

/// Membership test for real restricted roots of 𝔥(Δ̄ \ drop), for any proper
/// subset `drop` of the affine diagram. Roots are enumerated lazily by level.
#[derive(Clone, Debug)]
pub struct RestrictedRoots {
    diagram: DynkinDiagram,
    drop: VertexSet,
    keep: Vec<usize>,
    delta: Vec<i64>,
    level: Option<u32>,
    roots: HashSet<Vec<i64>>,
}

impl RestrictedRoots {
    pub fn new(d: &DynkinDiagram, drop: VertexSet) -> Result<Self> {
        let lattice = d.vertex_set().difference(drop);
        if lattice.len() < 2 {
            return Err(Error::LatticeTooSmall);
        }
        let keep: Vec<usize> = lattice.iter().map(|v| d.index(v)).collect::<Result<_>>()?;
        let full = delta(d)?.coords;
        let delta = keep.iter().map(|&k| full[k]).collect();
        Ok(RestrictedRoots { diagram: d.clone(), drop, keep, delta, level: None, roots: HashSet::new() })
    }

    pub fn lattice(&self) -> VertexSet {
        self.diagram.vertex_set().difference(self.drop)
    }

    fn extend(&mut self, level: u32) -> Result<()> {
        if self.level.is_some_and(|l| l >= level) {
            return Ok(());
        }
        for r in positive_real_roots(&self.diagram, level)? {
            let res: Vec<i64> = self.keep.iter().map(|&k| r[k]).collect();
            if !linalg::is_zero(&res) {
                self.roots.insert(res);
            }
        }
        self.level = Some(level);
        Ok(())
    }

    /// Positive restricted roots coming from affine roots of level ≤ `level`.
    pub fn positives(&mut self, level: u32) -> Result<Vec<Vec<i64>>> {
        self.extend(level)?;
        let mut out: Vec<Vec<i64>> = self.roots.iter().filter(|r| self::level(r, &self.delta) <= i64::from(level)).cloned().collect();
        out.sort();
        Ok(out)
    }

    /// Whether ±v is a restricted real root.
    pub fn contains(&mut self, v: &[i64]) -> Result<bool> {
        let p = if is_positive(v) {
            v.to_vec()
        } else if is_positive(&linalg::neg(v)) {
            linalg::neg(v)
        } else {
            return Ok(false);
        };
        // a preimage root never has higher level than its restriction
        let lv = u32::try_from(level(&p, &self.delta)).map_err(|_| Error::Overflow)?;
        self.extend(lv)?;
        Ok(self.roots.contains(&p))
    }
}

/// Integer matrix from the lattice `source` to the lattice `target`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinearMap {
    pub source: VertexSet,
    pub target: VertexSet,
    pub matrix: IntMatrix,
}

impl LinearMap {
    pub fn apply(&self, v: &RootVector) -> Result<RootVector> {
        if v.lattice != self.source {
            return Err(Error::LatticeMismatch);
        }
        Ok(RootVector::new(self.target, self.matrix.mul_vec(&v.coords)?))
    }

    pub fn compose(&self, inner: &LinearMap) -> Result<LinearMap> {
        if inner.target != self.source {
            return Err(Error::LatticeMismatch);
        }
        Ok(LinearMap { source: inner.source, target: self.target, matrix: self.matrix.mul(&inner.matrix)? })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "rows": self.matrix.rows,
            "cols": self.matrix.cols,
            "entries": self.matrix.to_rows(),
        })
    }
}

/// The matrix w_J w_{J+i} on the full lattice.
pub fn crossing_matrix(d: &DynkinDiagram, j: VertexSet, i: usize) -> Result<IntMatrix> {
    if j.contains(i) {
        return Err(Error::NotMutable(i));
    }
    let wj = longest_element(d, j)?;
    let wji = longest_element(d, j.with(i))?;
    wj.matrix.mul(&wji.matrix)
}

/// φ_i : 𝔥(Δ̄ \ ν_iJ) → 𝔥(Δ̄ \ J) for an arbitrary proper subset J of the affine diagram.
pub fn phi_map_for(d: &DynkinDiagram, j: VertexSet, i: usize) -> Result<LinearMap> {
    let t = crossing_matrix(d, j, i)?;
    let nu = mutation::mutate(d, j, i)?;
    let all = d.vertex_set();
    let source = all.difference(nu);
    let target = all.difference(j);
    let mut m = IntMatrix::zeros(target.len(), source.len());
    for (c, k) in source.iter().enumerate() {
        let col = t.column(d.index(k)?);
        for (r, t_idx) in target.iter().enumerate() {
            m.set(r, c, col[d.index(t_idx)?]);
        }
    }
    Ok(LinearMap { source, target, matrix: m })
}

pub fn phi_map(ctx: &DynkinData, i: usize) -> Result<LinearMap> {
    phi_map_for(ctx.ambient(), ctx.marked(), i)
}

/// A rational functional on a lattice, given by its values on the simple roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Functional {
    pub lattice: VertexSet,
    pub values: Vec<BigRational>,
}

impl Functional {
    pub fn eval(&self, v: &RootVector) -> Result<BigRational> {
        if v.lattice != self.lattice {
            return Err(Error::LatticeMismatch);
        }
        Ok(self.values.iter().zip(&v.coords).map(|(a, &c)| a * linalg::rat(c)).sum())
    }
}

/// The functional with δ*(δ_𝔍) = 1 and δ*(β) = 0 on every β of `basis`.
pub fn delta_star(ctx: &DynkinData, basis: &[RootVector]) -> Result<Functional> {
    let lattice = ctx.restricted_vertices();
    let dj = restrict(&delta(ctx.ambient())?, ctx.marked())?;
    if basis.len() + 1 != lattice.len() || basis.iter().any(|b| b.lattice != lattice) {
        return Err(Error::DegenerateBasis);
    }
    let mut rows = vec![dj.coords.clone()];
    rows.extend(basis.iter().map(|b| b.coords.clone()));
    let mut rhs = vec![0; lattice.len()];
    rhs[0] = 1;
    let values = linalg::solve(&rows, &rhs).ok_or(Error::DegenerateBasis)?;
    Ok(Functional { lattice, values })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynkin::parse_diagram;

    fn ctx(d: &str, marked: &[usize]) -> DynkinData {
        DynkinData::parse(d, marked).unwrap()
    }

    /// Closure of the simple reflections as a set of matrices.
    fn brute_force_group(d: &DynkinDiagram) -> Vec<IntMatrix> {
        let gens: Vec<IntMatrix> = d.vertices().iter().map(|&i| reflection_matrix(d, i).unwrap()).collect();
        let mut seen = HashSet::from([IntMatrix::identity(d.len())]);
        let mut queue = VecDeque::from([IntMatrix::identity(d.len())]);
        while let Some(g) = queue.pop_front() {
            for s in &gens {
                let h = g.mul(s).unwrap();
                if seen.insert(h.clone()) {
                    queue.push_back(h);
                }
            }
        }
        seen.into_iter().collect()
    }

    fn brute_force_longest(d: &DynkinDiagram) -> IntMatrix {
        let group = brute_force_group(d);
        let all_neg = |g: &IntMatrix| (0..d.len()).all(|k| is_positive(&linalg::neg(&g.column(k))));
        let found: Vec<_> = group.into_iter().filter(all_neg).collect();
        assert_eq!(found.len(), 1);
        found.into_iter().next().unwrap()
    }

    #[test]
    fn reflections_on_a1_affine() {
        let c = ctx("A1~", &[]);
        let a1 = RootVector::simple(c.all_vertices(), 1).unwrap();
        assert_eq!(simple_reflection(&c, 0, &a1).unwrap().coords, vec![2, 1]);
        let a0 = RootVector::simple(c.all_vertices(), 0).unwrap();
        assert_eq!(simple_reflection(&c, 0, &a0).unwrap(), a0.neg());
        let d = delta(c.ambient()).unwrap();
        assert_eq!(simple_reflection(&c, 1, &d).unwrap(), d);
        let bad = RootVector::new(VertexSet::singleton(1), vec![1]);
        assert_eq!(simple_reflection(&c, 0, &bad), Err(Error::LatticeMismatch));
    }

    #[test]
    fn longest_elements_match_brute_force() {
        for name in ["A2", "A3"] {
            let d = parse_diagram(name).unwrap();
            let w = longest_element(&d, d.vertex_set()).unwrap();
            assert_eq!(w.matrix, brute_force_longest(&d));
            assert_eq!(w.length().unwrap(), finite_positive_roots(&d, d.vertex_set()).unwrap().len());
            assert_eq!(WeylElement::from_word(&d, w.word.as_ref().unwrap()).unwrap().matrix, w.matrix);
        }
        let a2 = parse_diagram("A2").unwrap();
        assert_eq!(brute_force_group(&a2).len(), 6);
        let w = longest_element(&a2, a2.vertex_set()).unwrap();
        assert_eq!(w.length(), Some(3));
        assert_eq!(w.matrix.column(0), vec![0, -1]);
        let a3 = parse_diagram("A3").unwrap();
        assert_eq!(brute_force_group(&a3).len(), 24);
        assert_eq!(longest_element(&a3, a3.vertex_set()).unwrap().length(), Some(6));
        let c = ctx("E7~", &[]);
        let single = longest_element_word(&c, VertexSet::singleton(4)).unwrap();
        assert_eq!(single.word, Some(vec![4]));
        assert_eq!(longest_element_word(&c, c.all_vertices()), Err(Error::InfiniteParabolic));
    }

    #[test]
    fn longest_element_conjugates_reflections() {
        for name in ["A2", "A3", "A4", "D4", "D5", "E6", "E7", "E8"] {
            let d = parse_diagram(name).unwrap();
            let w = longest_element(&d, d.vertex_set()).unwrap();
            assert_eq!(w.length().unwrap(), finite_positive_roots(&d, d.vertex_set()).unwrap().len(), "{name}");
            let inv = d.longest_involution().unwrap();
            for &i in d.vertices() {
                let lhs = w.matrix.mul(&reflection_matrix(&d, i).unwrap()).unwrap().mul(&w.matrix).unwrap();
                assert_eq!(lhs, reflection_matrix(&d, inv[&i]).unwrap());
            }
        }
    }

    #[test]
    fn finite_root_counts() {
        for (name, n) in [("A2", 3), ("A3", 6), ("D4", 12), ("E6", 36), ("E7", 63), ("E8", 120)] {
            let d = parse_diagram(name).unwrap();
            assert_eq!(finite_positive_roots(&d, d.vertex_set()).unwrap().len(), n);
        }
    }

    /// Positive real roots β + kδ (k ≥ 0) and -β + kδ (k ≥ 1) from the finite system.
    fn formula_positive_roots(d: &DynkinDiagram, bound: i64) -> HashSet<Vec<i64>> {
        let fin = d.finite_part().unwrap();
        let delta = delta(d).unwrap().coords;
        let mut out = HashSet::new();
        for b in finite_positive_roots(&fin, fin.vertex_set()).unwrap() {
            let mut full = vec![0];
            full.extend(b);
            for k in 0..=bound + 1 {
                let plus: Vec<i64> = full.iter().zip(&delta).map(|(x, d)| x + k * d).collect();
                let minus: Vec<i64> = full.iter().zip(&delta).map(|(x, d)| k * d - x).collect();
                if k <= bound {
                    out.insert(plus);
                }
                if k >= 1 {
                    out.insert(minus);
                }
            }
        }
        out
    }

    #[test]
    fn real_roots_match_formula() {
        for name in ["A1~", "A2~", "A3~", "D4~", "D5~", "E6~", "E7~"] {
            let d = parse_diagram(name).unwrap();
            for bound in 0..=3 {
                let got: HashSet<Vec<i64>> = positive_real_roots(&d, bound).unwrap().into_iter().collect();
                assert_eq!(got, formula_positive_roots(&d, i64::from(bound)), "{name} level {bound}");
            }
        }
    }

    #[test]
    fn a1_affine_root_counts() {
        let c = ctx("A1~", &[]);
        let r0 = enumerate_real_roots(&c, 0).unwrap();
        let coords: HashSet<Vec<i64>> = r0.iter().map(|r| r.root.coords.clone()).collect();
        assert_eq!(coords, HashSet::from([vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]]));
        let r1 = enumerate_real_roots(&c, 1).unwrap();
        assert_eq!(r1.len(), 8);
        let coords: HashSet<Vec<i64>> = r1.iter().map(|r| r.root.coords.clone()).collect();
        assert!(coords.contains(&vec![1, 2]) && coords.contains(&vec![2, 1]));
        for r in &r1 {
            assert_eq!(pairing(c.ambient(), &r.root.coords, &r.root.coords).unwrap(), 2);
            assert!(r.root.is_positive() != r.root.is_negative());
            assert_eq!(r.positive, r.root.is_positive());
        }
    }

    #[test]
    fn restriction() {
        let c = ctx("E7~", &[2, 3, 5, 6, 7]);
        let d = delta(c.ambient()).unwrap();
        let dj = restrict(&d, c.marked()).unwrap();
        assert_eq!(dj.lattice.to_vec(), vec![0, 1, 4]);
        assert_eq!(dj.coords, vec![1, 2, 3]);
        let a2 = RootVector::simple(c.all_vertices(), 2).unwrap();
        assert!(restrict(&a2, c.marked()).unwrap().is_zero());
        let a4 = RootVector::simple(c.all_vertices(), 4).unwrap();
        assert_eq!(restrict(&a4, c.marked()).unwrap(), RootVector::simple(dj.lattice, 4).unwrap());
        let almost: VertexSet = (1..=7).collect();
        assert_eq!(restrict(&d, almost), Err(Error::LatticeTooSmall));
    }

    #[test]
    fn phi_examples() {
        let c = ctx("A2~", &[]);
        let phi = phi_map(&c, 1).unwrap();
        let a2 = RootVector::simple(phi.source, 2).unwrap();
        assert_eq!(phi.apply(&a2).unwrap().coords, vec![0, 1, 1]);
        let a1 = RootVector::simple(phi.source, 1).unwrap();
        assert_eq!(phi.apply(&a1).unwrap(), a1.neg());

        let c = ctx("E7~", &[2, 3, 5, 6, 7]);
        let phi = phi_map(&c, 1).unwrap();
        assert_eq!(phi.source.to_vec(), vec![0, 4, 7]);
        assert_eq!(phi.target.to_vec(), vec![0, 1, 4]);
        let d = delta(c.ambient()).unwrap();
        let src = restrict(&d, c.all_vertices().difference(phi.source)).unwrap();
        assert_eq!(phi.apply(&src).unwrap(), restrict(&d, c.marked()).unwrap());
        let a7 = RootVector::simple(phi.source, 7).unwrap();
        assert_eq!(phi.apply(&a7).unwrap(), RootVector::simple(phi.target, 1).unwrap().neg());
        assert_eq!(phi_map(&c, 2), Err(Error::NotMutable(2)));
    }

    #[test]
    fn delta_star_examples() {
        let c = ctx("A1~", &[]);
        let b = RootVector::simple(c.restricted_vertices(), 1).unwrap();
        let ds = delta_star(&c, std::slice::from_ref(&b)).unwrap();
        assert_eq!(ds.values, vec![linalg::rat(1), linalg::rat(0)]);
        assert_eq!(ds.eval(&b).unwrap(), linalg::rat(0));
        assert_eq!(delta_star(&c, &[]), Err(Error::DegenerateBasis));
        let dj = restrict(&delta(c.ambient()).unwrap(), c.marked()).unwrap();
        assert_eq!(delta_star(&c, &[dj]), Err(Error::DegenerateBasis));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        const NAMES: &[&str] = &["A1~", "A2~", "A4~", "D4~", "D5~", "E6~", "E7~", "E8~", "A3", "D4", "E6"];

        proptest! {
            #[test]
            fn reflections_are_involutions_and_satisfy_braid(k in 0..NAMES.len()) {
                let d = parse_diagram(NAMES[k]).unwrap();
                for &i in d.vertices() {
                    let s = reflection_matrix(&d, i).unwrap();
                    prop_assert!(s.mul(&s).unwrap().is_identity());
                    for &j in d.vertices() {
                        if let Some(m) = d.coxeter_exponent(i, j).unwrap() {
                            let sj = reflection_matrix(&d, j).unwrap();
                            let st = s.mul(&sj).unwrap();
                            let mut p = IntMatrix::identity(d.len());
                            for _ in 0..m {
                                p = p.mul(&st).unwrap();
                            }
                            prop_assert!(p.is_identity());
                        }
                    }
                }
            }

            #[test]
            fn real_roots_have_norm_two(k in 0..8usize, bound in 0u32..3) {
                let d = parse_diagram(NAMES[k]).unwrap();
                let c = DynkinData::new(d.clone(), VertexSet::EMPTY).unwrap();
                for r in enumerate_real_roots(&c, bound).unwrap() {
                    prop_assert_eq!(pairing(&d, &r.root.coords, &r.root.coords).unwrap(), 2);
                    prop_assert!(r.root.is_positive() ^ r.root.is_negative());
                    prop_assert!(r.level <= bound);
                }
            }

            #[test]
            fn parabolic_longest_negates_its_roots(k in 0..8usize, mask in 0u16..512) {
                let d = parse_diagram(NAMES[k]).unwrap();
                let j = VertexSet::from_iter(d.vertices().iter().copied().filter(|&v| mask & (1 << v) != 0));
                prop_assume!(j != d.vertex_set());
                let w = longest_element(&d, j).unwrap();
                prop_assert_eq!(w.length().unwrap(), finite_positive_roots(&d, j).unwrap().len());
                let inv = involution_of(&d, &w, j).unwrap();
                for (&a, &b) in &inv {
                    prop_assert_eq!(inv[&b], a);
                }
            }
        }
    }

    #[test]
    fn restricted_roots_with_extended_vertex_dropped() {
        let d = parse_diagram("A1~").unwrap();
        let mut r = RestrictedRoots::new(&parse_diagram("A2~").unwrap(), VertexSet::singleton(0)).unwrap();
        // killing α₀ in A2~ leaves the finite A2 roots and their δ-shifts
        assert!(r.contains(&[1, 0]).unwrap());
        assert!(r.contains(&[1, 1]).unwrap());
        assert!(r.contains(&[-1, -1]).unwrap());
        assert!(r.contains(&[2, 1]).unwrap());
        assert!(!r.contains(&[1, -1]).unwrap());
        assert!(!r.contains(&[0, 0]).unwrap());
        // α₁ + α₂ restricts to δ_𝔍 here, so it sits at level 1
        assert_eq!(r.positives(0).unwrap(), vec![vec![0, 1], vec![1, 0]]);
        assert!(r.positives(1).unwrap().contains(&vec![1, 1]));
        assert!(RestrictedRoots::new(&d, VertexSet::singleton(1)).is_err());
    }
}
