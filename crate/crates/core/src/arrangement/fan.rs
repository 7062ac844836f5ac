//! Fan axioms for collections of simplicial cones, checked exactly.

use std::collections::{BTreeSet, HashMap, HashSet};

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::{Arrangement, ConeRef, Sector};
use crate::error::{Error, Result};
use crate::linalg::{self, rat};
use crate::lp::{self, Constraint, LpOutcome, Relation};

/// A simplicial cone given both by generators and by an H-description
/// (`inequalities · θ ≥ 0`, `equalities · θ = 0`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Cone {
    pub rays: Vec<Vec<i64>>,
    pub inequalities: Vec<Vec<i64>>,
    pub equalities: Vec<Vec<i64>>,
}

impl Cone {
    /// Full-dimensional simplicial cone `{θ : a_k·θ ≥ 0}` for linearly independent rows.
    pub fn from_inequalities(rows: Vec<Vec<i64>>) -> Result<Cone> {
        let n = rows.len();
        let mut rays = Vec::with_capacity(n);
        for k in 0..n {
            let mut e = vec![0; n];
            e[k] = 1;
            let x = linalg::solve(&rows, &e).ok_or(Error::DegenerateBasis)?;
            rays.push(linalg::rational_to_primitive(&x)?);
        }
        rays.sort();
        Ok(Cone { rays, inequalities: rows, equalities: Vec::new() })
    }

    pub fn dimension(&self) -> usize {
        self.rays.len()
    }

    pub fn contains(&self, theta: &[i64]) -> Result<bool> {
        for g in &self.inequalities {
            if linalg::dot(g, theta)? < 0 {
                return Ok(false);
            }
        }
        for e in &self.equalities {
            if linalg::dot(e, theta)? != 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn ray_set(&self) -> BTreeSet<Vec<i64>> {
        self.rays.iter().cloned().collect()
    }

    /// The face spanned by a subset of rays, with the H-description tightened.
    pub fn face(&self, keep: &[Vec<i64>]) -> Result<Cone> {
        let mut equalities = self.equalities.clone();
        for g in &self.inequalities {
            let all_zero = keep.iter().map(|r| linalg::dot(g, r)).collect::<Result<Vec<_>>>()?.iter().all(|&v| v == 0);
            if all_zero {
                equalities.push(g.clone());
            }
        }
        let mut rays = keep.to_vec();
        rays.sort();
        Ok(Cone { rays, inequalities: self.inequalities.clone(), equalities })
    }

    /// All faces, including the cone itself and the zero cone.
    pub fn faces(&self) -> Result<Vec<Cone>> {
        let n = self.rays.len();
        let mut out = Vec::with_capacity(1 << n);
        for mask in 0u32..(1 << n) {
            let keep: Vec<Vec<i64>> = (0..n).filter(|b| mask & (1 << b) != 0).map(|b| self.rays[b].clone()).collect();
            out.push(self.face(&keep)?);
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum FanViolation {
    /// A face of cone `cone` (given by its rays) is not in the collection.
    MissingFace { cone: usize, face: Vec<Vec<i64>> },
    /// Cones `a` and `b` meet in something that is not a common face.
    BadIntersection { a: usize, b: usize },
    /// Cone `cone` is not simplicial (its rays are dependent).
    NotSimplicial { cone: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FanReport {
    pub ok: bool,
    pub cones: usize,
    pub maximal: usize,
    pub pairs_checked: usize,
    pub lp_fallbacks: usize,
    pub counterexample: Option<FanViolation>,
}

/// Bounding box of a cone on the slice `h = ±1`.
struct Slice {
    lo: Vec<(i64, i64)>,
    hi: Vec<(i64, i64)>,
    sign: i64,
}

fn slice_of(cone: &Cone, h: &[i64]) -> Option<Slice> {
    let mut sign = 0;
    let mut pts = Vec::new();
    for r in &cone.rays {
        let d = linalg::dot(h, r).ok()?;
        if d == 0 {
            return None;
        }
        if sign == 0 {
            sign = d.signum();
        } else if sign != d.signum() {
            return None;
        }
        pts.push((r, d.abs()));
    }
    if pts.is_empty() {
        return None;
    }
    let n = cone.rays[0].len();
    let less = |a: (i64, i64), b: (i64, i64)| (a.0 as i128) * (b.1 as i128) < (b.0 as i128) * (a.1 as i128);
    let mut lo = vec![(0, 1); n];
    let mut hi = vec![(0, 1); n];
    for k in 0..n {
        let vals: Vec<(i64, i64)> = pts.iter().map(|(r, d)| (r[k], *d)).collect();
        lo[k] = *vals.iter().reduce(|a, b| if less(*b, *a) { b } else { a }).unwrap();
        hi[k] = *vals.iter().reduce(|a, b| if less(*a, *b) { b } else { a }).unwrap();
    }
    Some(Slice { lo, hi, sign })
}

fn slices_disjoint(a: &Slice, b: &Slice) -> bool {
    if a.sign != b.sign {
        return true;
    }
    let less = |x: (i64, i64), y: (i64, i64)| (x.0 as i128) * (y.1 as i128) < (y.0 as i128) * (x.1 as i128);
    (0..a.lo.len()).any(|k| less(a.hi[k], b.lo[k]) || less(b.hi[k], a.lo[k]))
}

/// Certificate that `cone(a) ∩ cone(b)` is a common face, for ray subsets of
/// two simplicial cones: a form h ≥ 0 on a and ≤ 0 on b confines the
/// intersection to {h = 0}, so it suffices to certify the zero-rays, until one
/// side's rays are contained in the other's.
fn separated(a: &[&Vec<i64>], b: &[&Vec<i64>], forms: &[&Vec<i64>], depth: usize) -> Result<bool> {
    let sa: BTreeSet<&Vec<i64>> = a.iter().copied().collect();
    let sb: BTreeSet<&Vec<i64>> = b.iter().copied().collect();
    if sa.is_subset(&sb) || sb.is_subset(&sa) {
        return Ok(true);
    }
    if depth == 0 {
        return Ok(false);
    }
    for h in forms {
        let va: Vec<i64> = a.iter().map(|r| linalg::dot(h, r)).collect::<Result<_>>()?;
        let vb: Vec<i64> = b.iter().map(|r| linalg::dot(h, r)).collect::<Result<_>>()?;
        let ge = |v: &[i64]| v.iter().all(|&x| x >= 0);
        let le = |v: &[i64]| v.iter().all(|&x| x <= 0);
        if !((ge(&va) && le(&vb)) || (le(&va) && ge(&vb))) {
            continue;
        }
        if va.iter().chain(&vb).all(|&x| x == 0) {
            continue;
        }
        let za: Vec<&Vec<i64>> = a.iter().zip(&va).filter(|(_, &x)| x == 0).map(|(r, _)| *r).collect();
        let zb: Vec<&Vec<i64>> = b.iter().zip(&vb).filter(|(_, &x)| x == 0).map(|(r, _)| *r).collect();
        if separated(&za, &zb, forms, depth - 1)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Rays of the smallest face of `a` containing `a ∩ b`, by one LP per ray.
fn minimal_face(a: &Cone, b: &Cone) -> Result<Vec<Vec<i64>>> {
    let m = a.rays.len();
    let mut cs = Vec::new();
    for g in &b.inequalities {
        let row: Vec<BigRational> = a.rays.iter().map(|r| linalg::dot(g, r).map(rat)).collect::<Result<_>>()?;
        cs.push(Constraint::new(row, Relation::Ge, rat(0)));
    }
    for e in &b.equalities {
        let row: Vec<BigRational> = a.rays.iter().map(|r| linalg::dot(e, r).map(rat)).collect::<Result<_>>()?;
        cs.push(Constraint::new(row, Relation::Eq, rat(0)));
    }
    let mut keep = Vec::new();
    for k in 0..m {
        let mut bound = vec![rat(0); m];
        bound[k] = rat(1);
        let mut all = cs.clone();
        all.push(Constraint::new(bound.clone(), Relation::Le, rat(1)));
        match lp::maximize(&bound, &all) {
            LpOutcome::Optimal { value, .. } if value.is_positive() => keep.push(a.rays[k].clone()),
            LpOutcome::Optimal { value, .. } if value.is_zero() => {}
            other => return Err(Error::Internal(format!("face LP returned {other:?}"))),
        }
    }
    Ok(keep)
}

fn intersection_is_face(a: &Cone, b: &Cone) -> Result<bool> {
    let fa = minimal_face(a, b)?;
    let fb = minimal_face(b, a)?;
    let sa: BTreeSet<_> = fa.iter().cloned().collect();
    let sb: BTreeSet<_> = fb.iter().cloned().collect();
    if sa != sb {
        return Ok(false);
    }
    for r in &fa {
        if !b.contains(r)? || !a.contains(r)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn is_simplicial(c: &Cone) -> bool {
    if c.rays.is_empty() {
        return true;
    }
    let n = c.rays[0].len();
    if c.rays.len() > n {
        return false;
    }
    // rank via Gram determinant
    let gram: Vec<Vec<i64>> =
        c.rays.iter().map(|a| c.rays.iter().map(|b| linalg::dot(a, b).unwrap_or(i64::MAX)).collect()).collect();
    !linalg::IntMatrix::from_rows(&gram).determinant().is_zero()
}

/// Checks closure under faces and that maximal cones meet in common faces.
/// `hints` are extra linear forms tried as separation certificates before
/// falling back to exact linear programming.
pub fn verify_fan(cones: &[Cone], hints: &[Vec<i64>]) -> Result<FanReport> {
    let mut report = FanReport { ok: true, cones: cones.len(), maximal: 0, pairs_checked: 0, lp_fallbacks: 0, counterexample: None };
    for (k, c) in cones.iter().enumerate() {
        if !is_simplicial(c) {
            report.ok = false;
            report.counterexample = Some(FanViolation::NotSimplicial { cone: k });
            return Ok(report);
        }
    }
    let keys: HashSet<BTreeSet<Vec<i64>>> = cones.iter().map(Cone::ray_set).collect();
    let mut proper_faces: HashSet<BTreeSet<Vec<i64>>> = HashSet::new();
    for (k, c) in cones.iter().enumerate() {
        let n = c.rays.len();
        for mask in 0u32..(1 << n) {
            let face: BTreeSet<Vec<i64>> =
                (0..n).filter(|b| mask & (1 << b) != 0).map(|b| c.rays[b].clone()).collect();
            if !keys.contains(&face) {
                report.ok = false;
                report.counterexample = Some(FanViolation::MissingFace { cone: k, face: face.into_iter().collect() });
                return Ok(report);
            }
            if face.len() < n {
                proper_faces.insert(face);
            }
        }
    }
    let mut seen = HashSet::new();
    let maximal: Vec<usize> = (0..cones.len())
        .filter(|&k| {
            let key = cones[k].ray_set();
            !proper_faces.contains(&key) && seen.insert(key)
        })
        .collect();
    report.maximal = maximal.len();
    let slices: HashMap<usize, Slice> =
        maximal.iter().filter_map(|&k| hints.first().and_then(|h| slice_of(&cones[k], h)).map(|s| (k, s))).collect();
    for (x, &a) in maximal.iter().enumerate() {
        for &b in &maximal[x + 1..] {
            report.pairs_checked += 1;
            let (ca, cb) = (&cones[a], &cones[b]);
            if let (Some(sa), Some(sb)) = (slices.get(&a), slices.get(&b)) {
                if slices_disjoint(sa, sb) {
                    continue;
                }
            }
            let forms: Vec<&Vec<i64>> = ca.inequalities.iter().chain(&cb.inequalities).chain(hints).collect();
            let ra: Vec<&Vec<i64>> = ca.rays.iter().collect();
            let rb: Vec<&Vec<i64>> = cb.rays.iter().collect();
            if separated(&ra, &rb, &forms, ra.len().max(rb.len()))? {
                continue;
            }
            report.lp_fallbacks += 1;
            if !intersection_is_face(ca, cb)? {
                report.ok = false;
                report.counterexample = Some(FanViolation::BadIntersection { a, b });
                return Ok(report);
            }
        }
    }
    Ok(report)
}

impl Arrangement {
    pub fn cone_of(&self, c: &ConeRef) -> Cone {
        let mut rays = c.rays();
        rays.sort();
        let mut inequalities = Vec::new();
        let mut equalities = Vec::new();
        for w in c.chamber.walls() {
            if c.extra_zeros.contains(w.label) {
                equalities.push(w.root.clone());
            } else {
                inequalities.push(w.root.clone());
            }
        }
        if c.chamber.sector() == Sector::Zero {
            equalities.push(self.delta_coords().to_vec());
        }
        Cone { rays, inequalities, equalities }
    }

    pub fn verify_fan(&self, cones: &[ConeRef]) -> Result<FanReport> {
        let cs: Vec<Cone> = cones.iter().map(|c| self.cone_of(c)).collect();
        verify_fan(&cs, &[self.delta_coords().to_vec()])
    }

    /// The given chambers together with all their faces, deduplicated.
    pub fn with_all_faces(&self, chambers: &[super::Chamber]) -> Vec<ConeRef> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for c in chambers {
            for f in self.faces(c) {
                if seen.insert(f.ray_key()) {
                    out.push(f);
                }
            }
        }
        out
    }
}
