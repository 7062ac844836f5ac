//! Acceptance criteria, one line per criterion.
//!
//! Runs as a plain binary so each criterion reports PASS/FAIL on its own line
//! even when an earlier one fails.

use std::collections::{BTreeSet, HashSet};
use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use heartfan::arrangement::{Arrangement, Comparison, ConeRef, Sector};
use heartfan::dynkin::DynkinData;
use heartfan::error::Error;
use heartfan::hearts::{BrickKind, Component, DegreeTuple, HeartDescriptor, HeartKind};
use heartfan::rootlat::{self, RestrictedRoots, RootVector};
use heartfan::vset::VertexSet;
use heartfan::{cli, linalg, mutation};

fn arr(d: &str, marked: &[usize]) -> Arrangement {
    Arrangement::new(DynkinData::parse(d, marked).unwrap()).unwrap()
}

fn set(v: &[usize]) -> VertexSet {
    v.iter().copied().collect()
}

const FAN_CONTEXTS: [(&str, &[usize], i64); 5] = [
    ("A1~", &[], 3),
    ("A2~", &[], 3),
    ("D4~", &[], 1),
    ("D4~", &[2], 3),
    ("E7~", &[2, 3, 5, 6, 7], 2),
];

fn e7_mutation_class() -> String {
    let t = Instant::now();
    let golden: BTreeSet<String> = include_str!("golden/e7_4_mutation.txt")
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(str::to_string)
        .collect();
    let a = DynkinData::parse("E7~", &[2, 3, 5, 6, 7]).unwrap();
    let q = mutation::mutation_class(a.ambient(), a.marked()).unwrap();
    assert_eq!(q.vertices.len(), 8);
    let ours: BTreeSet<String> = q.named_arrows().into_iter().map(|(s, i, t)| format!("{s} -{i}-> {t}")).collect();
    assert_eq!(ours, golden);
    // the same through the command line
    let mut out = Vec::new();
    let mut err = Vec::new();
    let args = ["heartfan", "mutclass", "--diagram", "E7~", "--marked", "2,3,5,6,7", "--format", "json"];
    assert_eq!(cli::run(args, &mut out, &mut err), 0);
    let v: serde_json::Value = serde_json::from_slice(&out).unwrap();
    assert_eq!(v["vertices"].as_array().unwrap().len(), 8);
    let el = t.elapsed();
    assert!(el < Duration::from_secs(1), "took {el:?}");
    format!("8 vertices, {} arrows, {el:.2?}", golden.len())
}

/// Real roots of the affine A₁ diagram are the (a, b) with |a - b| = 1; on the
/// slice θ₀ + θ₁ = 1, with x = θ₁, the hyperplane of (a, b) sits at x = a/(a-b).
fn a1_wall_positions(range: i64) -> BTreeSet<i64> {
    let mut xs = BTreeSet::new();
    for a in -range..=range {
        for b in [a - 1, a + 1] {
            xs.insert(a / (a - b));
        }
    }
    xs
}

fn a1_arrangement() -> String {
    let a = arr("A1~", &[]);
    for n in 1..=6i64 {
        let walls = a1_wall_positions(n + 2);
        // chambers of the slice meeting the open box |x| < n
        let expected: Vec<(i64, i64)> = walls
            .iter()
            .zip(walls.iter().skip(1))
            .map(|(&l, &r)| (l, r))
            .filter(|&(l, r)| r > -n && l < n)
            .collect();
        let cs = a.enumerate_box(Sector::Plus, n).unwrap();
        assert_eq!(cs.len() as i64, 2 * n);
        assert_eq!(expected.len() as i64, 2 * n);
        let mut got: Vec<(i64, i64)> = cs
            .iter()
            .map(|c| {
                let xs: Vec<i64> = c
                    .rays()
                    .iter()
                    .map(|r| {
                        let d = a.delta_of(r).unwrap();
                        assert_eq!(r[1] % d, 0, "wall off the integers");
                        r[1] / d
                    })
                    .collect();
                (*xs.iter().min().unwrap(), *xs.iter().max().unwrap())
            })
            .collect();
        got.sort();
        assert_eq!(got, expected);
    }
    let ladder = |first: usize| {
        let mut c = a.principal_chamber(Sector::Plus);
        let mut labels = vec![a.heart_of_chamber(&c).unwrap().label()];
        for k in 0..4 {
            c = a.wall_cross(&c, (first + k) % 2).unwrap();
            labels.push(a.heart_of_chamber(&c).unwrap().label());
        }
        labels
    };
    assert_eq!(ladder(0), ["H", "Ψ₀H", "Ψ₀Ψ₁H", "Ψ₀Ψ₁Ψ₀H", "Ψ₀Ψ₁Ψ₀Ψ₁H"]);
    assert_eq!(ladder(1), ["H", "Ψ₁H", "Ψ₁Ψ₀H", "Ψ₁Ψ₀Ψ₁H", "Ψ₁Ψ₀Ψ₁Ψ₀H"]);
    "box 1..6 gives 2N chambers, walls on the integers, ladder matches".into()
}

fn fan_axioms() -> String {
    let t = Instant::now();
    let mut cones = 0;
    for (d, m, n) in FAN_CONTEXTS {
        let a = arr(d, m);
        for s in [Sector::Plus, Sector::Minus] {
            let cs = a.enumerate_box(s, n).unwrap();
            let r = a.verify_fan(&a.with_all_faces(&cs)).unwrap();
            assert!(r.ok, "{d} {m:?} box {n} sector {s}: {:?}", r.counterexample);
            cones += r.cones;
        }
        let zero = a.enumerate_box(Sector::Zero, n).unwrap();
        let r = a.verify_fan(&a.with_all_faces(&zero)).unwrap();
        assert!(r.ok, "{d} {m:?} sector 0: {:?}", r.counterexample);
        cones += r.cones;
    }
    let el = t.elapsed();
    assert!(el < Duration::from_secs(60), "took {el:?}");
    format!("{cones} cones checked, {el:.2?}")
}

fn atomicity() -> String {
    let mut checked = 0;
    for d in ["A1~", "A2~"] {
        let a = arr(d, &[]);
        let labels: Vec<usize> = a.data().ambient().vertices().to_vec();
        let start = a.principal_chamber(Sector::Plus);
        let mut words: Vec<Vec<usize>> = vec![vec![]];
        for _ in 0..=6 {
            let mut next = Vec::new();
            for w in &words {
                let r = a.is_atomic(&start, w).unwrap();
                assert!(r.agree(), "{d} {w:?}: {r:?}");
                checked += 1;
                if w.len() < 6 {
                    next.extend(labels.iter().map(|&i| [w.as_slice(), &[i]].concat()));
                }
            }
            words = next;
        }
    }
    format!("{checked} paths")
}

/// |W| of a finite type A_n diagram, by closing the simple reflections.
fn weyl_order_a(n: usize) -> usize {
    let cartan = |i: usize, j: usize| -> i64 {
        match i.abs_diff(j) {
            0 => 2,
            1 => -1,
            _ => 0,
        }
    };
    // s_i(α_k) = α_k - a_ik α_i, so column k of M s_i is M[:, k] - a_ik M[:, i]
    let refl = |i: usize, m: &Vec<i64>| -> Vec<i64> {
        let mut out = m.clone();
        for r in 0..n {
            for k in 0..n {
                out[r * n + k] = m[r * n + k] - cartan(i, k) * m[r * n + i];
            }
        }
        out
    };
    let id: Vec<i64> = (0..n * n).map(|x| i64::from(x % (n + 1) == 0)).collect();
    let mut seen: HashSet<Vec<i64>> = HashSet::from([id.clone()]);
    let mut stack = vec![id];
    while let Some(m) = stack.pop() {
        for i in 0..n {
            let g = refl(i, &m);
            if seen.insert(g.clone()) {
                stack.push(g);
            }
        }
    }
    seen.len()
}

fn rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| i128::from(x)).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&k| m[k][c] != 0) else { continue };
        m.swap(r, p);
        for k in 0..m.len() {
            if k != r && m[k][c] != 0 {
                let (a, b) = (m[r][c], m[k][c]);
                for j in 0..cols {
                    m[k][j] = m[k][j] * a - m[r][j] * b;
                }
            }
        }
        r += 1;
    }
    r
}

fn sector_zero() -> String {
    let mut out = Vec::new();
    for (d, n) in [("A2~", 2), ("A3~", 3)] {
        let a = arr(d, &[]);
        let cs = a.enumerate_box(Sector::Zero, 1).unwrap();
        let order = weyl_order_a(n);
        assert_eq!(cs.len(), order);
        for c in &cs {
            assert_eq!(rank(&c.rays()), a.dim() - 1, "{d}: cone not full in δ = 0");
        }
        for (x, c) in cs.iter().enumerate() {
            let p = c.interior_point();
            for (y, o) in cs.iter().enumerate() {
                if x != y {
                    assert!(!o.contains(&p).unwrap(), "{d}: chambers {x} and {y} overlap");
                }
            }
        }
        let m = a.movable_fan().unwrap();
        assert!(m.ok() && m.interiors_disjoint);
        assert_eq!(m.models.len(), order);
        out.push(format!("{d}: {order}"));
    }
    out.join(", ")
}

fn phi_maps() -> String {
    let mut images = 0;
    let mut maps = 0;
    for (d, m, _) in FAN_CONTEXTS {
        let data = DynkinData::parse(d, m).unwrap();
        let dg = data.ambient();
        let q = mutation::mutation_class(dg, data.marked()).unwrap();
        let delta = rootlat::delta(dg).unwrap();
        for &(s, i, t) in &q.arrows {
            let (j, nu) = (q.vertices[s], q.vertices[t]);
            let back = mutation::iota(dg, j, i).unwrap();
            let phi = rootlat::phi_map_for(dg, j, i).unwrap();
            let inv = rootlat::phi_map_for(dg, nu, back).unwrap();
            assert!(phi.compose(&inv).unwrap().matrix.is_identity());
            assert!(inv.compose(&phi).unwrap().matrix.is_identity());
            let dsrc = rootlat::restrict(&delta, nu).unwrap();
            let dtgt = rootlat::restrict(&delta, j).unwrap();
            assert_eq!(phi.apply(&dsrc).unwrap(), dtgt);
            let all = dg.vertex_set();
            let a = RootVector::simple(all.difference(nu), back).unwrap();
            assert_eq!(phi.apply(&a).unwrap(), RootVector::simple(all.difference(j), i).unwrap().neg());
            let mut src = RestrictedRoots::new(dg, nu).unwrap();
            let mut tgt = RestrictedRoots::new(dg, j).unwrap();
            for r in src.positives(3).unwrap() {
                let img = phi.matrix.mul_vec(&r).unwrap();
                assert!(tgt.contains(&img).unwrap(), "{d}: φ_{i}({r:?}) = {img:?}");
                images += 1;
            }
            // onto: every target root has a root preimage
            for r in tgt.positives(3).unwrap() {
                let pre = inv.matrix.mul_vec(&r).unwrap();
                assert!(src.contains(&pre).unwrap(), "{d}: φ_{i}⁻¹({r:?}) = {pre:?}");
                images += 1;
            }
            maps += 1;
        }
    }
    format!("{maps} maps, {images} root images")
}

fn brick_classes() -> String {
    let a = arr("A1~", &[]);
    let p = a.principal_chamber(Sector::Plus);
    let covers: BTreeSet<Vec<i64>> =
        [0, 1].iter().map(|&i| a.brick_label(&p, &a.wall_cross(&p, i).unwrap()).unwrap().class.coords).collect();
    assert_eq!(covers, BTreeSet::from([vec![1, 0], vec![0, 1]]));
    let mut labels = 0;
    for (d, m) in [("A1~", &[][..]), ("A2~", &[]), ("D4~", &[2])] {
        let a = arr(d, m);
        let mut roots = RestrictedRoots::new(a.data().ambient(), a.data().marked()).unwrap();
        for s in [Sector::Plus, Sector::Minus] {
            let cs = a.enumerate_box(s, 3).unwrap();
            for e in a.hasse_edges(&cs).unwrap() {
                let b = a.brick_label(&cs[e.from], &cs[e.to]).unwrap();
                assert_eq!(b.kind, BrickKind::Real);
                assert!(b.class.is_positive());
                assert_eq!(linalg::gcd_all(&b.class.coords), 1);
                assert!(roots.contains(&b.class.coords).unwrap(), "{d}: {}", b.class);
                labels += 1;
            }
        }
        for c in a.enumerate_box(Sector::Zero, 3).unwrap() {
            let b = a.geometric_brick_label(&c).unwrap();
            assert_eq!(b.kind, BrickKind::Imaginary);
            assert_eq!(b.class, a.delta_restricted());
            labels += 1;
        }
    }
    format!("{labels} labels")
}

fn nef_tuples(k: usize) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..k {
        out = out.into_iter().flat_map(|v: Vec<i64>| (0..=3).map(move |x| [v.clone(), vec![x]].concat())).collect();
    }
    out
}

fn picard() -> String {
    let mut pairs = 0;
    let mut failures = Vec::new();
    for d in ["A1~", "A2~"] {
        let a = arr(d, &[]);
        let cp = a.principal_chamber(Sector::Plus);
        let delta = a.delta_restricted();
        let chambers: Vec<_> = [Sector::Plus, Sector::Minus, Sector::Zero]
            .iter()
            .flat_map(|&s| a.enumerate_box(s, 2).unwrap())
            .collect();
        for (_, model) in a.movable_fan().unwrap().models {
            let act = a.pic_action(&model).unwrap();
            let tuples = nef_tuples(act.curves.len());
            let translates: Vec<_> =
                tuples.iter().map(|t| act.translate(&a, &DegreeTuple::new(model.clone(), t.clone()), &cp).unwrap()).collect();
            for (x, dx) in tuples.iter().enumerate() {
                let tx = DegreeTuple::new(model.clone(), dx.clone());
                assert_eq!(act.act(&a, &tx, &delta).unwrap(), delta);
                for c in &chambers {
                    let img = act.translate(&a, &tx, c).unwrap();
                    assert_eq!(img.sector(), c.sector());
                }
                for (y, dy) in tuples.iter().enumerate() {
                    let ty = DegreeTuple::new(model.clone(), dy.clone());
                    let sum = tx.add(&ty).unwrap();
                    for v in a.restricted_positive_roots(1).unwrap().iter() {
                        let v = RootVector::new(a.lattice(), v.clone());
                        let two = act.act(&a, &ty, &act.act(&a, &tx, &v).unwrap()).unwrap();
                        assert_eq!(two, act.act(&a, &sum, &v).unwrap());
                    }
                    let le_deg = dx.iter().zip(dy).all(|(p, q)| p <= q);
                    let le_ch = matches!(a.compare(&translates[x], &translates[y]).unwrap(), Comparison::Less | Comparison::Equal);
                    if le_deg != le_ch {
                        failures.push(format!("{d} model {model:?}: {dx:?} vs {dy:?}"));
                    }
                    pairs += 1;
                }
            }
        }
    }
    assert!(failures.is_empty(), "{} of {pairs} pairs disagree, e.g. {}", failures.len(), failures[0]);
    format!("{pairs} nef pairs")
}

fn totality() -> String {
    let a = arr("A2~", &[]);
    let mut seen = 0;
    for s in [Sector::Plus, Sector::Minus, Sector::Zero] {
        for c in a.enumerate_box(s, 2).unwrap() {
            for f in a.faces(&c) {
                let r = a.classify_cone(&f);
                let variant = match (&r, f.dimension()) {
                    (Err(Error::ZeroCone), 0) => continue,
                    (Ok(HeartDescriptor { kind, .. }), _) => kind.name(),
                    (Err(Error::NotAHeartCone(_)), _) if s != Sector::Zero && !f.is_chamber() => "rejected",
                    (r, dim) => panic!("sector {s}, dim {dim}: {r:?}"),
                };
                let expect = match (s, f.is_chamber()) {
                    (Sector::Zero, true) => "geometric",
                    (Sector::Zero, false) => "semigeometric",
                    (_, true) => "algebraic",
                    (_, false) => "rejected",
                };
                assert_eq!(variant, expect);
                seen += 1;
            }
        }
    }
    let zero = ConeRef::new(a.principal_chamber(Sector::Plus), set(&[0, 1, 2])).unwrap();
    assert_eq!(a.classify_cone(&zero), Err(Error::ZeroCone));
    let ray = ConeRef::new(a.principal_chamber(Sector::Zero), set(&[1])).unwrap();
    match a.classify_cone(&ray).unwrap().kind {
        HeartKind::SemiGeometric { model, contracted, components } => {
            assert!(model.is_empty());
            assert_eq!(contracted, set(&[1]));
            assert_eq!(components, vec![Component { curves: set(&[1]), marked: VertexSet::EMPTY }]);
        }
        k => panic!("ray classified as {k:?}"),
    }
    format!("{seen} non-zero cones")
}

type Criterion = (&'static str, fn() -> String);

fn main() {
    let criteria: [Criterion; 9] = [
        ("E7,4 mutation class", e7_mutation_class),
        ("A1~ arrangement", a1_arrangement),
        ("fan axioms", fan_axioms),
        ("atomicity equivalences", atomicity),
        ("sector-0 counts", sector_zero),
        ("phi-map properties", phi_maps),
        ("brick classes", brick_classes),
        ("Picard dynamics", picard),
        ("classification totality", totality),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        match panic::catch_unwind(AssertUnwindSafe(f)) {
            Ok(detail) => println!("criterion {}: PASS  {name} ({detail}; {:.2?})", k + 1, t.elapsed()),
            Err(e) => {
                failed += 1;
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                println!("criterion {}: FAIL  {name}: {msg}", k + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
