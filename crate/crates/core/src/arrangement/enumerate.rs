use std::collections::{HashMap, HashSet, VecDeque};

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::{Arrangement, Chamber, Sector};
use crate::error::{Error, Result};
use crate::linalg::rat;
use crate::lp::{self, Constraint, LpOutcome, Relation};

/// A covering relation `from ⋖ to` obtained by crossing wall `label` of `from`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct HasseEdge {
    pub from: usize,
    pub label: usize,
    pub to: usize,
}

impl Arrangement {
    /// Whether the interior of a sector-± chamber meets the open box
    /// `|θ(α_i)| < N·δ_𝔍(θ)` for i ∈ Δ\𝔍.
    pub fn meets_box(&self, sigma: &Chamber, n: i64) -> Result<bool> {
        let sign = match sigma.sector() {
            Sector::Plus => 1,
            Sector::Minus => -1,
            Sector::Zero => return Ok(true),
        };
        let coords = self.finite_positions();
        let rays: Vec<Vec<i64>> = sigma.walls().iter().map(|w| w.ray.iter().map(|x| sign * x).collect()).collect();
        let ds: Vec<i64> = rays.iter().map(|r| self.delta_of(r)).collect::<Result<_>>()?;
        if ds.iter().any(|&d| d <= 0) {
            return Err(Error::Internal("ray of a ± chamber off its half-space".into()));
        }
        let inside = |r: &Vec<i64>, d: i64| coords.iter().all(|&k| (r[k] as i128).abs() < (n as i128) * (d as i128));
        if rays.iter().zip(&ds).any(|(r, &d)| inside(r, d)) {
            return Ok(true);
        }
        for &k in &coords {
            let nd = |d: i64| (n as i128) * (d as i128);
            if rays.iter().zip(&ds).all(|(r, &d)| r[k] as i128 >= nd(d)) {
                return Ok(false);
            }
            if rays.iter().zip(&ds).all(|(r, &d)| r[k] as i128 <= -nd(d)) {
                return Ok(false);
            }
        }
        // λ ≥ 0 over the rays, t ≥ 0 the slack to the box boundary.
        let m = rays.len();
        let mut cs = Vec::new();
        let mut norm = vec![rat(0); m + 1];
        for (k, &d) in ds.iter().enumerate() {
            norm[k] = rat(d);
        }
        cs.push(Constraint::new(norm, Relation::Eq, rat(1)));
        for &k in &coords {
            for s in [1, -1] {
                let mut row: Vec<_> = rays.iter().map(|r| rat(s * r[k])).collect();
                row.push(rat(1));
                cs.push(Constraint::new(row, Relation::Le, rat(n)));
            }
        }
        let mut obj = vec![rat(0); m + 1];
        obj[m] = rat(1);
        match lp::maximize(&obj, &cs) {
            LpOutcome::Optimal { value, .. } => Ok(value.is_positive() && !value.is_zero()),
            LpOutcome::Infeasible => Ok(false),
            LpOutcome::Unbounded => Err(Error::Internal("box LP unbounded".into())),
        }
    }

    /// Chambers of a sector whose interior meets box N (sector 0: all chambers),
    /// in order of (path length, path).
    pub fn enumerate_box(&self, sector: Sector, n: i64) -> Result<Vec<Chamber>> {
        if sector != Sector::Zero && n < 1 {
            return Err(Error::Config(format!("box level must be at least 1, got {n}")));
        }
        let start = self.principal_chamber(sector);
        let mut seen: HashSet<Chamber> = HashSet::from([start.clone()]);
        let mut out = vec![start.clone()];
        let mut queue = VecDeque::from([start]);
        while let Some(c) = queue.pop_front() {
            for w in c.walls() {
                let nb = self.wall_cross(&c, w.label)?;
                if seen.contains(&nb) {
                    continue;
                }
                if !self.meets_box(&nb, n)? {
                    continue;
                }
                seen.insert(nb.clone());
                if seen.len() > self.max_chambers {
                    return Err(Error::ResourceCap(self.max_chambers));
                }
                out.push(nb.clone());
                queue.push_back(nb);
            }
        }
        out.sort_by(|a, b| (a.path().len(), a.path()).cmp(&(b.path().len(), b.path())));
        Ok(out)
    }

    /// Covering relations among `chambers` given by single upward wall crossings.
    pub fn hasse_edges(&self, chambers: &[Chamber]) -> Result<Vec<HasseEdge>> {
        let index: HashMap<&Chamber, usize> = chambers.iter().enumerate().map(|(k, c)| (c, k)).collect();
        let mut out = Vec::new();
        for (k, c) in chambers.iter().enumerate() {
            for w in c.walls() {
                if !self.is_upward(c, w.label) {
                    continue;
                }
                let nb = self.wall_cross(c, w.label)?;
                if let Some(&t) = index.get(&nb) {
                    out.push(HasseEdge { from: k, label: w.label, to: t });
                }
            }
        }
        Ok(out)
    }
}
