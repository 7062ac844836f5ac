//! Named invariant suites, run against one Dynkin datum at one box level.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::arrangement::{Arrangement, Sector};
use crate::dynkin::{DynkinData, DynkinDiagram};
use crate::error::{Error, Result};
use crate::hearts::{DegreeTuple, HeartKind};
use crate::linalg::{self, IntMatrix};
use crate::mutation;
use crate::rootlat::{self, RootVector};

#[derive(Clone, Debug, Serialize)]
pub struct SuiteResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub diagram: String,
    pub marked: Vec<usize>,
    #[serde(rename = "box")]
    pub box_level: i64,
    pub passed: bool,
    pub suites: Vec<SuiteResult>,
    pub counts: BTreeMap<String, usize>,
}

impl CheckReport {
    pub fn failed(&self) -> Vec<&'static str> {
        self.suites.iter().filter(|s| !s.passed).map(|s| s.name).collect()
    }
}

type Outcome = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lib<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn cartan_symmetric(d: &DynkinDiagram) -> Outcome {
    let c = d.cartan_matrix();
    for i in 0..c.rows {
        ensure(c.get(i, i) == 2, || format!("diagonal entry {i} is {}", c.get(i, i)))?;
        for j in 0..c.cols {
            ensure(c.get(i, j) == c.get(j, i), || {
                format!("C[{},{}] = {} but C[{},{}] = {}", d.vertices()[i], d.vertices()[j], c.get(i, j), d.vertices()[j], d.vertices()[i], c.get(j, i))
            })?;
        }
    }
    Ok(format!("{}x{}", c.rows, c.cols))
}

fn kac_kernel(d: &DynkinDiagram) -> Outcome {
    let delta = lib(rootlat::delta(d))?;
    let v = lib(d.cartan_matrix().mul_vec(&delta.coords))?;
    ensure(linalg::is_zero(&v), || format!("C·δ = {v:?}"))?;
    ensure(delta.coords[0] == 1, || "δ_0 ≠ 1".into())?;
    Ok(format!("δ = {:?}", delta.coords))
}

fn reflections(d: &DynkinDiagram) -> Outcome {
    let n = d.len();
    let s: Vec<IntMatrix> = d.vertices().iter().map(|&i| rootlat::reflection_matrix(d, i)).collect::<Result<_>>().map_err(|e| e.to_string())?;
    let mut checked = 0;
    for (a, sa) in s.iter().enumerate() {
        ensure(lib(sa.mul(sa))?.is_identity(), || format!("s_{}² ≠ 1", d.vertices()[a]))?;
        for (b, sb) in s.iter().enumerate().skip(a + 1) {
            let (i, j) = (d.vertices()[a], d.vertices()[b]);
            let Some(m) = lib(d.coxeter_exponent(i, j))? else { continue };
            let p = lib(sa.mul(sb))?;
            let mut acc = IntMatrix::identity(n);
            for _ in 0..m {
                acc = lib(acc.mul(&p))?;
            }
            ensure(acc.is_identity(), || format!("(s_{i} s_{j})^{m} ≠ 1"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} braid relations"))
}

fn real_roots(data: &DynkinData) -> Outcome {
    let roots = lib(rootlat::enumerate_real_roots(data, 2))?;
    let d = data.ambient();
    for r in &roots {
        ensure(lib(rootlat::pairing(d, &r.root.coords, &r.root.coords))? == 2, || format!("(α,α) ≠ 2 for {}", r.root))?;
        ensure(r.root.is_positive() != r.root.is_negative(), || format!("{} has mixed signs", r.root))?;
    }
    Ok(format!("{} roots up to level 2", roots.len()))
}

fn longest_involution(d: &DynkinDiagram) -> Outcome {
    let fin = lib(d.finite_part())?;
    let inv = lib(fin.longest_involution())?;
    let w = lib(rootlat::longest_element(&fin, fin.vertex_set()))?;
    for (&i, &j) in &inv {
        ensure(inv[&j] == i, || format!("inv is not an involution at {i}"))?;
        let si = lib(rootlat::reflection_matrix(&fin, i))?;
        let sj = lib(rootlat::reflection_matrix(&fin, j))?;
        let lhs = lib(lib(w.matrix.mul(&si))?.mul(&w.matrix))?;
        ensure(lhs == sj, || format!("w s_{i} w ≠ s_{j}"))?;
        for (&k, &l) in &inv {
            ensure(fin.adjacent(i, k) == fin.adjacent(j, l), || format!("inv does not preserve the edge {i}-{k}"))?;
        }
    }
    Ok(format!("{} vertices", inv.len()))
}

fn mutation_involutive(data: &DynkinData) -> Outcome {
    let d = data.ambient();
    let class = lib(mutation::mutation_class(d, data.marked()))?;
    for &(s, i, t) in &class.arrows {
        let j = class.vertices[s];
        let back = lib(mutation::iota(d, j, i))?;
        ensure(lib(mutation::mutate(d, class.vertices[t], back))? == j, || format!("ν_ι(i) ν_{i} {j} ≠ {j}"))?;
    }
    Ok(format!("{} subsets, {} arrows", class.vertices.len(), class.arrows.len()))
}

fn phi_maps(arr: &Arrangement) -> Outcome {
    let d = arr.data().ambient();
    let class = arr.mutation_class();
    let mut roots = 0;
    for &(s, i, t) in &class.arrows {
        let j = class.vertices[s];
        let nu = class.vertices[t];
        let phi = lib(rootlat::phi_map_for(d, j, i))?;
        let back_label = lib(mutation::iota(d, j, i))?;
        let back = lib(rootlat::phi_map_for(d, nu, back_label))?;
        ensure(lib(phi.compose(&back))?.matrix.is_identity(), || format!("φ_{i} φ_ι(i) ≠ 1 at J={j}"))?;
        let all = d.vertex_set();
        let dsrc = lib(rootlat::restrict(&lib(rootlat::delta(d))?, nu))?;
        let dtgt = lib(rootlat::restrict(&lib(rootlat::delta(d))?, j))?;
        ensure(lib(phi.apply(&dsrc))? == dtgt, || format!("φ_{i} does not fix δ at J={j}"))?;
        let a = lib(RootVector::simple(all.difference(nu), back_label))?;
        let b = lib(RootVector::simple(all.difference(j), i))?;
        ensure(lib(phi.apply(&a))? == b.neg(), || format!("φ_{i}(α_ι(i)) ≠ -α_{i} at J={j}"))?;
        if j == arr.data().marked() {
            let mut src = lib(rootlat::RestrictedRoots::new(d, nu))?;
            let mut tgt = lib(rootlat::RestrictedRoots::new(d, j))?;
            for r in lib(src.positives(2))? {
                let img = lib(phi.matrix.mul_vec(&r))?;
                ensure(lib(tgt.contains(&img))?, || format!("φ_{i}({r:?}) = {img:?} is not a restricted root"))?;
                roots += 1;
            }
        }
    }
    Ok(format!("{} maps, {roots} root images", class.arrows.len()))
}

fn wall_crossing(arr: &Arrangement, n: i64) -> Outcome {
    let d = arr.data().ambient();
    let mut checked = 0;
    for s in [Sector::Plus, Sector::Minus, Sector::Zero] {
        for c in lib(arr.enumerate_box(s, n))? {
            for w in c.walls() {
                let nb = lib(arr.wall_cross(&c, w.label))?;
                let back = lib(mutation::iota(d, c.face_set(), w.label))?;
                ensure(lib(arr.wall_cross(&nb, back))? == c, || format!("crossing {} is not reversible", w.label))?;
                ensure(nb.wall(back).map(|v| v.root == linalg::neg(&w.root)).unwrap_or(false), || "crossed wall does not flip".into())?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} crossings"))
}

fn fan_axioms(arr: &Arrangement, n: i64, counts: &mut BTreeMap<String, usize>) -> Outcome {
    let mut out = Vec::new();
    for s in [Sector::Plus, Sector::Zero] {
        let cs = lib(arr.enumerate_box(s, n))?;
        counts.insert(format!("chambers{}", s.symbol()), cs.len());
        let r = lib(arr.verify_fan(&arr.with_all_faces(&cs)))?;
        ensure(r.ok, || format!("sector {s}: {:?}", r.counterexample))?;
        out.push(format!("{s}: {} cones", r.cones));
    }
    Ok(out.join(", "))
}

fn hasse_covering(arr: &Arrangement, n: i64) -> Outcome {
    let mut edges = 0;
    for s in [Sector::Plus, Sector::Minus, Sector::Zero] {
        let cs = lib(arr.enumerate_box(s, n))?;
        for e in lib(arr.hasse_edges(&cs))? {
            let a = lib(arr.separating_set(&cs[e.from]))?;
            let b = lib(arr.separating_set(&cs[e.to]))?;
            ensure(a.is_subset(&b) && b.len() == a.len() + 1, || format!("edge {}→{} is not a cover", e.from, e.to))?;
            edges += 1;
        }
    }
    Ok(format!("{edges} edges"))
}

fn brick_labels(arr: &Arrangement, n: i64) -> Outcome {
    let mut k = 0;
    for s in [Sector::Plus, Sector::Minus] {
        let cs = lib(arr.enumerate_box(s, n))?;
        for e in lib(arr.hasse_edges(&cs))? {
            let b = lib(arr.brick_label(&cs[e.from], &cs[e.to]))?;
            ensure(b.class.is_positive() && linalg::gcd_all(&b.class.coords) == 1, || format!("{} is not primitive positive", b.class))?;
            ensure(lib(arr.is_restricted_root(&b.class.coords))?, || format!("{} is not a restricted root", b.class))?;
            k += 1;
        }
    }
    Ok(format!("{k} labels"))
}

fn classification(arr: &Arrangement, n: i64) -> Outcome {
    let mut k = 0;
    for s in [Sector::Plus, Sector::Minus, Sector::Zero] {
        for c in lib(arr.enumerate_box(s, n))? {
            for f in arr.faces(&c) {
                let r = arr.classify_cone(&f);
                let ok = match (&r, s, f.dimension(), f.is_chamber()) {
                    (Err(Error::ZeroCone), _, 0, _) => true,
                    (Ok(h), Sector::Zero, _, true) => matches!(h.kind, HeartKind::GeometricInterval { .. }),
                    (Ok(h), Sector::Zero, _, false) => matches!(h.kind, HeartKind::SemiGeometric { .. }),
                    (Ok(h), _, _, true) => matches!(h.kind, HeartKind::Algebraic { .. }),
                    (Err(Error::NotAHeartCone(_)), _, _, false) => true,
                    _ => false,
                };
                ensure(ok, || format!("sector {s} face {}: {r:?}", f.extra_zeros))?;
                k += 1;
            }
        }
    }
    Ok(format!("{k} cones"))
}

fn pic_action(arr: &Arrangement, n: i64) -> Outcome {
    let p = arr.principal_chamber(Sector::Plus);
    let fan = lib(arr.movable_fan())?;
    ensure(fan.ok(), || "movable fan check failed".into())?;
    let mut k = 0;
    for (_, model) in &fan.models {
        let act = lib(arr.pic_action(model))?;
        let m = act.curves.len();
        let delta = arr.delta_restricted();
        for c in 0..m {
            let mut deg = vec![0; m];
            deg[c] = 1;
            let d = DegreeTuple::new(model.clone(), deg);
            ensure(lib(act.act(arr, &d, &delta))? == delta, || "δ_𝔍 is moved".into())?;
            let t = lib(act.translate(arr, &lib(d.scaled(n))?, &p))?;
            let back = lib(act.translate(arr, &lib(d.scaled(-n))?, &t))?;
            ensure(back == p, || format!("translation by ±{n}e_{c} on model {model:?} does not cancel"))?;
            k += 1;
        }
    }
    Ok(format!("{k} translations over {} models", fan.models.len()))
}

/// Runs every suite. Library errors inside a suite count as that suite failing.
pub fn run_checks(data: &DynkinData, box_level: i64, max_chambers: usize) -> Result<CheckReport> {
    if box_level < 1 {
        return Err(Error::Config(format!("box level must be at least 1, got {box_level}")));
    }
    let d = data.ambient();
    let mut suites = Vec::new();
    let mut counts = BTreeMap::new();
    let mut push = |name: &'static str, r: Outcome| {
        let (passed, detail) = match r {
            Ok(s) => (true, s),
            Err(s) => (false, s),
        };
        suites.push(SuiteResult { name, passed, detail });
    };
    push("cartan-symmetric", cartan_symmetric(d));
    push("kac-labels-in-kernel", kac_kernel(d));
    push("reflections-and-braids", reflections(d));
    push("real-roots-have-norm-two", real_roots(data));
    push("longest-involution", longest_involution(d));
    push("mutation-involutive", mutation_involutive(data));
    match Arrangement::new(data.clone()) {
        Ok(arr) => {
            let arr = arr.with_max_chambers(max_chambers);
            push("phi-maps", phi_maps(&arr));
            push("wall-crossing-reversible", wall_crossing(&arr, box_level));
            push("fan-axioms", fan_axioms(&arr, box_level, &mut counts));
            push("hasse-edges-are-covers", hasse_covering(&arr, box_level));
            push("brick-labels-primitive", brick_labels(&arr, box_level));
            push("classification-total", classification(&arr, box_level));
            push("pic-action", pic_action(&arr, box_level));
        }
        Err(Error::ResourceCap(c)) => return Err(Error::ResourceCap(c)),
        Err(e) => push("arrangement", Err(e.to_string())),
    }
    if suites.iter().any(|s| !s.passed && s.detail.starts_with("resource cap exceeded")) {
        return Err(Error::ResourceCap(max_chambers));
    }
    let passed = suites.iter().all(|s| s.passed);
    Ok(CheckReport {
        diagram: d.to_string(),
        marked: data.marked().to_vec(),
        box_level,
        passed,
        suites,
        counts,
    })
}
