//! Heart descriptors attached to the cones of an arrangement.
//!
//! Full-dimensional cones off {δ_𝔍 = 0} carry algebraic hearts, written as
//! words in the mutation functors. Cones on {δ_𝔍 = 0} carry geometric hearts
//! of a birational model `νX` (maximal cones) or perverse hearts of a partial
//! contraction of such a model (smaller cones).

mod pic;

use std::collections::HashSet;
use std::fmt;

use num_rational::BigRational;
use serde::Serialize;

use crate::arrangement::{Arrangement, Chamber, ConeRef, FanReport, Sector};
use crate::error::{Error, Result};
use crate::linalg;
use crate::mutation;
use crate::rootlat::RootVector;
use crate::vset::VertexSet;

pub use pic::{DegreeTuple, PicAction};

const SUBSCRIPTS: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];

fn subscript(i: usize) -> String {
    i.to_string().chars().map(|c| SUBSCRIPTS[c.to_digit(10).unwrap_or(0) as usize]).collect()
}

/// `Ψ₀Ψ₁H` for the path [0, 1] with shift 0, `Φ₁Φ₀H[-1]` for [1, 0] with shift −1.
pub fn algebraic_label(path: &[usize], shift: i8) -> String {
    let f = if shift == 0 { 'Ψ' } else { 'Φ' };
    let mut s: String = path.iter().map(|&i| format!("{f}{}", subscript(i))).collect();
    s.push('H');
    if shift != 0 {
        s.push_str(&format!("[{shift}]"));
    }
    s
}

/// `X` for the empty path; the flop of curve `i` in `νX` is `ν_{iν}X`, so [2, 1] is `ν₁₂X`.
pub fn model_label(path: &[usize]) -> String {
    if path.is_empty() {
        return "X".into();
    }
    let sub: String = path.iter().rev().map(|&i| subscript(i)).collect();
    format!("ν{sub}X")
}

/// A connected piece of a partial contraction: contracted curves and the marked
/// vertices they are glued to.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Component {
    pub curves: VertexSet,
    pub marked: VertexSet,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum HeartKind {
    Algebraic { path: Vec<usize>, shift: i8 },
    /// The interval [anticoh νX, coh νX]; its interior is a boolean lattice on
    /// closed points and is kept symbolic.
    GeometricInterval { model: Vec<usize> },
    SemiGeometric { model: Vec<usize>, contracted: VertexSet, components: Vec<Component> },
}

impl HeartKind {
    pub fn name(&self) -> &'static str {
        match self {
            HeartKind::Algebraic { .. } => "algebraic",
            HeartKind::GeometricInterval { .. } => "geometric",
            HeartKind::SemiGeometric { .. } => "semigeometric",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HeartDescriptor {
    pub kind: HeartKind,
    pub cone: ConeRef,
}

impl HeartDescriptor {
    pub fn label(&self) -> String {
        match &self.kind {
            HeartKind::Algebraic { path, shift } => algebraic_label(path, *shift),
            HeartKind::GeometricInterval { model } => {
                let m = model_label(model);
                format!("[anticoh {m}, coh {m}]")
            }
            HeartKind::SemiGeometric { model, contracted, .. } => {
                let m = model_label(model);
                format!("[antizeroper({m},{}), zeroper({m},{})]", contracted, contracted)
            }
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut v = match &self.kind {
            HeartKind::Algebraic { path, shift } => serde_json::json!({
                "variant": "Algebraic", "path": path, "shift": shift,
            }),
            HeartKind::GeometricInterval { model } => serde_json::json!({
                "variant": "GeometricInterval", "path": model, "points": "Bool(closed points)",
            }),
            HeartKind::SemiGeometric { model, contracted, components } => serde_json::json!({
                "variant": "SemiGeometric", "path": model, "contracted": contracted,
                "components": components,
            }),
        };
        v["label"] = serde_json::json!(self.label());
        v["cone"] = self.cone.to_json();
        v
    }
}

impl fmt::Display for HeartDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// An endpoint of a numerical interval [H_tt(θ), H^tt(θ)].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum HeartBound {
    Algebraic { path: Vec<usize>, shift: i8 },
    Coh { model: Vec<usize> },
    Anticoh { model: Vec<usize> },
    Zeroper { model: Vec<usize>, contracted: VertexSet },
    Antizeroper { model: Vec<usize>, contracted: VertexSet },
}

impl HeartBound {
    pub fn label(&self) -> String {
        match self {
            HeartBound::Algebraic { path, shift } => algebraic_label(path, *shift),
            HeartBound::Coh { model } => format!("coh {}", model_label(model)),
            HeartBound::Anticoh { model } => format!("anticoh {}", model_label(model)),
            HeartBound::Zeroper { model, contracted } => format!("zeroper({},{contracted})", model_label(model)),
            HeartBound::Antizeroper { model, contracted } => format!("antizeroper({},{contracted})", model_label(model)),
        }
    }
}

impl fmt::Display for HeartBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumericalInterval {
    pub cone: ConeRef,
    pub lower: HeartBound,
    pub upper: HeartBound,
}

impl NumericalInterval {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "lower": self.lower.label(),
            "upper": self.upper.label(),
            "cone": self.cone.to_json(),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BrickKind {
    Real,
    Imaginary,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BrickClass {
    pub class: RootVector,
    pub kind: BrickKind,
}

/// Maximal sector-0 cones paired with their models.
#[derive(Clone, Debug)]
pub struct MovableFan {
    pub models: Vec<(Chamber, Vec<usize>)>,
    pub fan: FanReport,
    pub interiors_disjoint: bool,
    pub matches_spherical_class: bool,
}

impl MovableFan {
    pub fn ok(&self) -> bool {
        self.fan.ok && self.interiors_disjoint && self.matches_spherical_class
    }
}

/// Sum of the rays of a cone, a point of its relative interior.
fn cone_point(c: &ConeRef) -> Vec<i64> {
    let rays = c.rays();
    let n = c.chamber.walls().first().map_or(0, |w| w.ray.len());
    rays.iter().fold(vec![0; n], |acc, r| acc.iter().zip(r).map(|(a, b)| a + b).collect())
}

impl Arrangement {
    /// Lexicographically smallest reduced wall-crossing path from the principal
    /// chamber of σ's sector to σ.
    pub fn reduced_path(&self, sigma: &Chamber) -> Result<Vec<usize>> {
        let target = sigma.interior_point();
        let mut cur = self.principal_chamber(sigma.sector());
        let mut path = Vec::new();
        while cur != *sigma {
            let mut step = None;
            for w in cur.walls() {
                if linalg::dot(&w.root, &target)? < 0 {
                    step = Some(w.label);
                    break;
                }
            }
            let i = step.ok_or_else(|| Error::Internal("no separating wall toward target".into()))?;
            cur = self.wall_cross(&cur, i)?;
            path.push(i);
            if path.len() > self.max_chambers() {
                return Err(Error::ResourceCap(self.max_chambers()));
            }
        }
        Ok(path)
    }

    /// All chambers containing θ, by crossing walls on which θ vanishes.
    pub fn chambers_around(&self, start: &Chamber, theta: &[i64]) -> Result<Vec<Chamber>> {
        if !start.contains(theta)? {
            return Err(Error::Internal("point outside the starting chamber".into()));
        }
        let mut seen: HashSet<Chamber> = HashSet::from([start.clone()]);
        let mut out = vec![start.clone()];
        let mut head = 0;
        while head < out.len() {
            let c = out[head].clone();
            head += 1;
            for w in c.walls() {
                if linalg::dot(&w.root, theta)? != 0 {
                    continue;
                }
                let n = self.wall_cross(&c, w.label)?;
                if seen.insert(n.clone()) {
                    if seen.len() > self.max_chambers() {
                        return Err(Error::ResourceCap(self.max_chambers()));
                    }
                    out.push(n);
                }
            }
        }
        Ok(out)
    }

    /// Algebraic descriptor of a maximal chamber in sector ±.
    pub fn heart_of_chamber(&self, sigma: &Chamber) -> Result<HeartDescriptor> {
        let shift = match sigma.sector() {
            Sector::Plus => 0,
            Sector::Minus => -1,
            Sector::Zero => return Err(Error::SectorMismatch("algebraic hearts live off δ_𝔍 = 0".into())),
        };
        let path = self.reduced_path(sigma)?;
        let chamber = self.with_path(sigma, path.clone());
        Ok(HeartDescriptor { kind: HeartKind::Algebraic { path, shift }, cone: ConeRef::full(chamber) })
    }

    pub fn geometric_interval(&self, sigma: &Chamber) -> Result<HeartDescriptor> {
        if sigma.sector() != Sector::Zero {
            return Err(Error::SectorMismatch("geometric hearts live on δ_𝔍 = 0".into()));
        }
        let model = self.reduced_path(sigma)?;
        let chamber = self.with_path(sigma, model.clone());
        Ok(HeartDescriptor { kind: HeartKind::GeometricInterval { model }, cone: ConeRef::full(chamber) })
    }

    /// The maximal sector-0 chamber containing σ on the positive side of every
    /// finite hyperplane through σ, and the labels of its walls through σ.
    pub fn semigeometric_chamber(&self, sigma: &ConeRef) -> Result<(Chamber, VertexSet)> {
        let p = cone_point(sigma);
        let through: Vec<&Vec<i64>> = self
            .finite_hyperplanes()
            .iter()
            .filter(|h| linalg::dot(h, &p).map(|v| v == 0).unwrap_or(false))
            .collect();
        let mut found = Vec::new();
        for t in self.chambers_around(&sigma.chamber, &p)? {
            let q = t.interior_point();
            let mut ok = true;
            for h in &through {
                if linalg::dot(h, &q)? <= 0 {
                    ok = false;
                    break;
                }
            }
            if ok {
                found.push(t);
            }
        }
        if found.len() != 1 {
            return Err(Error::Internal(format!("{} candidate chambers for a semi-geometric cone", found.len())));
        }
        let tau = found.pop().expect("one candidate");
        let mut i = VertexSet::EMPTY;
        for w in tau.walls() {
            if linalg::dot(&w.root, &p)? == 0 {
                i = i.with(w.label);
            }
        }
        Ok((tau, i))
    }

    pub fn semigeometric_of_cone(&self, sigma: &ConeRef) -> Result<HeartDescriptor> {
        if sigma.is_zero() {
            return Err(Error::ZeroCone);
        }
        if sigma.chamber.sector() != Sector::Zero {
            return Err(Error::SectorMismatch("semi-geometric hearts live on δ_𝔍 = 0".into()));
        }
        if sigma.is_chamber() {
            return Err(Error::Config("cone is maximal; use the geometric interval".into()));
        }
        let (tau, contracted) = self.semigeometric_chamber(sigma)?;
        let model = self.reduced_path(&tau)?;
        let d = self.data().ambient();
        let marked = tau.face_set();
        let components = d
            .components(contracted.union(marked))
            .into_iter()
            .filter(|c| !c.intersection(contracted).is_empty())
            .map(|c| Component { curves: c.intersection(contracted), marked: c.intersection(marked) })
            .collect();
        let chamber = self.with_path(&tau, model.clone());
        let cone = ConeRef::new(chamber, contracted)?;
        Ok(HeartDescriptor { kind: HeartKind::SemiGeometric { model, contracted, components }, cone })
    }

    pub fn classify_cone(&self, sigma: &ConeRef) -> Result<HeartDescriptor> {
        if sigma.is_zero() {
            return Err(Error::ZeroCone);
        }
        match (sigma.chamber.sector(), sigma.is_chamber()) {
            (Sector::Zero, true) => self.geometric_interval(&sigma.chamber),
            (Sector::Zero, false) => self.semigeometric_of_cone(sigma),
            (_, true) => self.heart_of_chamber(&sigma.chamber),
            (s, false) => Err(Error::NotAHeartCone(format!(
                "a {}-dimensional face in sector {s} is not full-dimensional",
                sigma.dimension()
            ))),
        }
    }

    pub fn classify_point(&self, theta: &[BigRational]) -> Result<HeartDescriptor> {
        if theta.iter().all(|q| *q == linalg::rat(0)) {
            return Err(Error::ZeroCone);
        }
        self.classify_cone(&self.locate(theta)?)
    }

    /// The bounds H_tt(θ) ≤ H^tt(θ) of the hearts whose cone contains θ.
    pub fn numerical_interval(&self, theta: &[BigRational]) -> Result<NumericalInterval> {
        if theta.len() != self.dim() {
            return Err(Error::LatticeMismatch);
        }
        let t = linalg::rational_to_primitive(theta)?;
        if linalg::is_zero(&t) {
            return Err(Error::ZeroFunctional);
        }
        let cone = self.locate_int(&t)?;
        let sector = cone.chamber.sector();
        if sector == Sector::Zero {
            let desc = self.classify_cone(&cone)?;
            let (lower, upper) = match desc.kind {
                HeartKind::GeometricInterval { model } => {
                    (HeartBound::Anticoh { model: model.clone() }, HeartBound::Coh { model })
                }
                HeartKind::SemiGeometric { model, contracted, .. } => (
                    HeartBound::Antizeroper { model: model.clone(), contracted },
                    HeartBound::Zeroper { model, contracted },
                ),
                HeartKind::Algebraic { .. } => return Err(Error::Internal("algebraic heart on δ_𝔍 = 0".into())),
            };
            return Ok(NumericalInterval { cone: desc.cone, lower, upper });
        }
        let around = self.chambers_around(&cone.chamber, &t)?;
        let seps: Vec<_> = around.iter().map(|c| self.separating_set(c)).collect::<Result<_>>()?;
        let pick = |want_min: bool| -> Result<&Chamber> {
            let k = (0..around.len())
                .find(|&k| {
                    (0..around.len()).all(|m| {
                        if want_min {
                            seps[k].is_subset(&seps[m])
                        } else {
                            seps[m].is_subset(&seps[k])
                        }
                    })
                })
                .ok_or_else(|| Error::Internal("chambers around a face have no extremum".into()))?;
            Ok(&around[k])
        };
        let (lo, hi) = match sector {
            Sector::Plus => (pick(false)?, pick(true)?),
            _ => (pick(true)?, pick(false)?),
        };
        let bound = |c: &Chamber| -> Result<HeartBound> {
            match self.heart_of_chamber(c)?.kind {
                HeartKind::Algebraic { path, shift } => Ok(HeartBound::Algebraic { path, shift }),
                _ => Err(Error::Internal("non-algebraic chamber off δ_𝔍 = 0".into())),
            }
        };
        Ok(NumericalInterval { lower: bound(lo)?, upper: bound(hi)?, cone })
    }

    /// The class of the brick labelling the cover σ ⋖ σ′ of adjacent chambers.
    pub fn brick_label(&self, sigma: &Chamber, tau: &Chamber) -> Result<BrickClass> {
        if sigma.sector() != tau.sector() {
            return Err(Error::SectorMismatch(format!("{} vs {}", sigma.sector(), tau.sector())));
        }
        if sigma.sector() == Sector::Zero {
            return Err(Error::NotCovering);
        }
        for w in sigma.walls() {
            if !self.is_upward(sigma, w.label) || self.wall_cross(sigma, w.label)? != *tau {
                continue;
            }
            let mut b = linalg::primitive(&w.root);
            if !crate::rootlat::is_positive(&b) {
                b = linalg::neg(&b);
            }
            return Ok(BrickClass { class: RootVector::new(self.lattice(), b), kind: BrickKind::Real });
        }
        Err(Error::NotCovering)
    }

    /// Brick label of a cover inside the geometric interval of a maximal sector-0 chamber.
    pub fn geometric_brick_label(&self, sigma: &Chamber) -> Result<BrickClass> {
        if sigma.sector() != Sector::Zero {
            return Err(Error::SectorMismatch("geometric covers live on δ_𝔍 = 0".into()));
        }
        Ok(BrickClass { class: self.delta_restricted(), kind: BrickKind::Imaginary })
    }

    /// Sector-0 chambers with their model paths, checked as a complete fan.
    pub fn movable_fan(&self) -> Result<MovableFan> {
        let chambers = self.enumerate_box(Sector::Zero, 1)?;
        let mut models = Vec::with_capacity(chambers.len());
        for c in &chambers {
            let path = self.reduced_path(c)?;
            models.push((self.with_path(c, path.clone()), path));
        }
        let fan = self.verify_fan(&self.with_all_faces(&chambers))?;
        let mut interiors_disjoint = true;
        for (a, s) in chambers.iter().enumerate() {
            let p = s.interior_point();
            for (b, t) in chambers.iter().enumerate() {
                if a != b && t.contains(&p)? {
                    interiors_disjoint = false;
                }
            }
        }
        let d = self.data().ambient();
        let class = mutation::spherical_mutation_class(d, self.data().marked())?;
        let faces: HashSet<VertexSet> = chambers.iter().map(|c| c.face_set()).collect();
        let matches_spherical_class = faces.iter().all(|j| class.index_of(*j).is_some())
            && class.vertices.iter().all(|j| faces.contains(j));
        Ok(MovableFan { models, fan, interiors_disjoint, matches_spherical_class })
    }
}
