use std::collections::{BTreeSet, HashSet, VecDeque};

use serde::Serialize;

use super::{Arrangement, Chamber, Sector};
use crate::error::{Error, Result};
use crate::linalg;
use crate::rootlat::{self, RootVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Comparison {
    Less,
    Equal,
    Greater,
    Incomparable,
}

/// The four readings of "atomic" for a wall-crossing path.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AtomicityReport {
    /// No hyperplane is crossed twice.
    pub reduced: bool,
    /// No shorter path joins the endpoints.
    pub minimal: bool,
    /// The number of separating hyperplanes equals the path length.
    pub length_matches: bool,
    /// Separating sets grow strictly at each step.
    pub monotone: bool,
    pub hyperplanes_crossed: usize,
    pub distance: usize,
}

impl AtomicityReport {
    pub fn is_atomic(&self) -> bool {
        self.reduced
    }

    pub fn agree(&self) -> bool {
        self.reduced == self.minimal && self.minimal == self.length_matches && self.length_matches == self.monotone
    }
}

/// Half-spaces cutting out the union of the chambers below σ.
#[derive(Clone, Debug)]
pub struct LowerPolytope {
    pub halfspaces: Vec<RootVector>,
    pub chambers: Vec<Chamber>,
}

impl LowerPolytope {
    pub fn contains(&self, theta: &[i64]) -> Result<bool> {
        for h in &self.halfspaces {
            if linalg::dot(&h.coords, theta)? < 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl Arrangement {
    /// Level bound for roots that can be negative somewhere on a sector-+ chamber.
    fn level_bound(&self, p: &[i64]) -> Result<u32> {
        let d = self.delta_of(p)?;
        if d <= 0 {
            return Err(Error::SectorMismatch("expected a point with δ_𝔍 > 0".into()));
        }
        let mut m: i64 = 0;
        for (&x, &dk) in p.iter().zip(&self.delta_res) {
            if x < 0 {
                m = m.checked_add(dk.checked_mul(-x).ok_or(Error::Overflow)?).ok_or(Error::Overflow)?;
            }
        }
        u32::try_from(m / d).map_err(|_| Error::Overflow)
    }

    /// Primitive positive roots α with σ ⊆ {α ≤ 0}. The minus sector is ordered
    /// through −σ, so that C⁻ is its minimum.
    pub fn separating_set(&self, sigma: &Chamber) -> Result<BTreeSet<Vec<i64>>> {
        let mut p = sigma.interior_point();
        if sigma.sector() == Sector::Minus {
            p = linalg::neg(&p);
        }
        let mut out = BTreeSet::new();
        match sigma.sector() {
            Sector::Zero => {
                for h in self.finite_hyperplanes() {
                    if linalg::dot(h, &p)? < 0 {
                        out.insert(h.clone());
                    }
                }
            }
            _ => {
                let level = self.level_bound(&p)?;
                for h in self.hyperplanes(level)?.iter() {
                    if linalg::dot(h, &p)? < 0 {
                        out.insert(h.clone());
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn separating_roots(&self, sigma: &Chamber) -> Result<Vec<RootVector>> {
        Ok(self.separating_set(sigma)?.into_iter().map(|r| RootVector::new(self.lattice(), r)).collect())
    }

    /// Hyperplanes separating two chambers of the same sector.
    pub fn hyperplanes_between(&self, a: &Chamber, b: &Chamber) -> Result<BTreeSet<Vec<i64>>> {
        if a.sector() != b.sector() {
            return Err(Error::SectorMismatch(format!("{} vs {}", a.sector(), b.sector())));
        }
        let sa = self.separating_set(a)?;
        let sb = self.separating_set(b)?;
        Ok(sa.symmetric_difference(&sb).cloned().collect())
    }

    pub fn compare(&self, a: &Chamber, b: &Chamber) -> Result<Comparison> {
        if a.sector() != b.sector() {
            return Err(Error::SectorMismatch(format!("{} vs {}", a.sector(), b.sector())));
        }
        let sa = self.separating_set(a)?;
        let sb = self.separating_set(b)?;
        Ok(compare_sets(&sa, &sb))
    }

    /// The wall root of `sigma` at `label` points upward in the chamber order.
    pub fn is_upward(&self, sigma: &Chamber, label: usize) -> bool {
        let Some(w) = sigma.wall(label) else { return false };
        match sigma.sector() {
            Sector::Minus => rootlat::is_positive(&linalg::neg(&w.root)),
            _ => rootlat::is_positive(&w.root),
        }
    }

    /// Shortest wall-crossing distance, searched up to `limit` steps.
    pub fn distance(&self, a: &Chamber, b: &Chamber, limit: usize) -> Result<Option<usize>> {
        if a == b {
            return Ok(Some(0));
        }
        let mut seen: HashSet<Chamber> = HashSet::from([a.clone()]);
        let mut frontier = vec![a.clone()];
        for depth in 1..=limit {
            let mut next = Vec::new();
            for c in &frontier {
                for w in c.walls() {
                    let n = self.wall_cross(c, w.label)?;
                    if n == *b {
                        return Ok(Some(depth));
                    }
                    if seen.insert(n.clone()) {
                        if seen.len() > self.max_chambers {
                            return Err(Error::ResourceCap(self.max_chambers));
                        }
                        next.push(n);
                    }
                }
            }
            frontier = next;
        }
        Ok(None)
    }

    pub fn is_atomic(&self, start: &Chamber, steps: &[usize]) -> Result<AtomicityReport> {
        let mut chambers = vec![start.clone()];
        let mut crossed = Vec::with_capacity(steps.len());
        for (position, &i) in steps.iter().enumerate() {
            let cur = chambers.last().expect("non-empty");
            let w = cur.wall(i).ok_or(Error::InvalidStep { position, vertex: i })?;
            let h = linalg::primitive(&w.root);
            crossed.push(if rootlat::is_positive(&h) { h } else { linalg::neg(&h) });
            chambers.push(self.wall_cross(cur, i)?);
        }
        let distinct: HashSet<&Vec<i64>> = crossed.iter().collect();
        let reduced = distinct.len() == crossed.len();
        let n = steps.len();
        let end = chambers.last().expect("non-empty");
        let distance = self.distance(start, end, n)?.unwrap_or(n + 1);
        let between = self.hyperplanes_between(start, end)?;
        let mut monotone = true;
        let mut prev: BTreeSet<Vec<i64>> = BTreeSet::new();
        for c in &chambers[1..] {
            let cur = self.hyperplanes_between(start, c)?;
            if !(prev.is_subset(&cur) && prev.len() < cur.len()) {
                monotone = false;
            }
            prev = cur;
        }
        Ok(AtomicityReport {
            reduced,
            minimal: distance == n,
            length_matches: between.len() == n,
            monotone,
            hyperplanes_crossed: distinct.len(),
            distance,
        })
    }

    /// The chambers in the interval [C⁺, σ] and the binding half-spaces of their union.
    pub fn lower_polytope(&self, sigma: &Chamber) -> Result<LowerPolytope> {
        if sigma.sector() != Sector::Plus {
            return Err(Error::SectorMismatch("lower polytopes live in sector +".into()));
        }
        let below = self.separating_set(sigma)?;
        let start = self.principal_chamber(Sector::Plus);
        let mut seen: HashSet<Chamber> = HashSet::from([start.clone()]);
        let mut order = vec![start.clone()];
        let mut queue = VecDeque::from([start]);
        let mut binding = BTreeSet::new();
        while let Some(c) = queue.pop_front() {
            for w in c.walls() {
                if !rootlat::is_positive(&w.root) {
                    continue;
                }
                let h = linalg::primitive(&w.root);
                if !below.contains(&h) {
                    binding.insert(h);
                    continue;
                }
                let n = self.wall_cross(&c, w.label)?;
                if seen.insert(n.clone()) {
                    if seen.len() > self.max_chambers {
                        return Err(Error::ResourceCap(self.max_chambers));
                    }
                    order.push(n.clone());
                    queue.push_back(n);
                }
            }
        }
        Ok(LowerPolytope {
            halfspaces: binding.into_iter().map(|h| RootVector::new(self.lattice(), h)).collect(),
            chambers: order,
        })
    }
}

pub(crate) fn compare_sets(a: &BTreeSet<Vec<i64>>, b: &BTreeSet<Vec<i64>>) -> Comparison {
    match (a.is_subset(b), b.is_subset(a)) {
        (true, true) => Comparison::Equal,
        (true, false) => Comparison::Less,
        (false, true) => Comparison::Greater,
        (false, false) => Comparison::Incomparable,
    }
}
