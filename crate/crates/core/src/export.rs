//! Chamber listings as JSON, DOT, CSV and SVG slices.

use std::fmt::Write as _;

use serde_json::json;

use crate::arrangement::{Arrangement, Chamber, FanReport, HasseEdge, Sector};
use crate::error::{Error, Result};
use crate::rootlat::RootVector;

/// Everything `chambers` reports about one sector of one box.
#[derive(Clone, Debug)]
pub struct ChamberListing {
    pub sector: Sector,
    pub box_level: i64,
    pub chambers: Vec<Chamber>,
    pub separating: Vec<Vec<RootVector>>,
    pub hearts: Vec<String>,
    pub edges: Vec<HasseEdge>,
    pub fan: Option<FanReport>,
}

impl ChamberListing {
    pub fn build(arr: &Arrangement, sector: Sector, box_level: i64, verify: bool) -> Result<Self> {
        let chambers = arr.enumerate_box(sector, box_level)?;
        let mut separating = Vec::with_capacity(chambers.len());
        let mut hearts = Vec::with_capacity(chambers.len());
        for c in &chambers {
            separating.push(arr.separating_roots(c)?);
            hearts.push(arr.classify_cone(&crate::arrangement::ConeRef::full(c.clone()))?.label());
        }
        let edges = arr.hasse_edges(&chambers)?;
        let fan = if verify { Some(arr.verify_fan(&arr.with_all_faces(&chambers))?) } else { None };
        Ok(ChamberListing { sector, box_level, chambers, separating, hearts, edges, fan })
    }

    pub fn to_json(&self, arr: &Arrangement) -> serde_json::Value {
        let chambers: Vec<_> = self
            .chambers
            .iter()
            .enumerate()
            .map(|(k, c)| {
                let mut v = c.to_json();
                v["index"] = json!(k);
                v["rays"] = json!(c.rays());
                v["separating"] = json!(self.separating[k].iter().map(|r| r.coords.clone()).collect::<Vec<_>>());
                v["heart"] = json!(self.hearts[k]);
                v
            })
            .collect();
        let mut out = json!({
            "diagram": arr.data().ambient().to_string(),
            "marked": arr.data().marked().to_vec(),
            "lattice": arr.lattice().to_vec(),
            "sector": self.sector.symbol(),
            "box": self.box_level,
            "chambers": chambers,
            "hasse": self.edges.iter().map(|e| json!({"from": e.from, "label": e.label, "to": e.to})).collect::<Vec<_>>(),
        });
        if let Some(f) = &self.fan {
            out["fan"] = json!({
                "ok": f.ok,
                "cones": f.cones,
                "maximal": f.maximal,
                "pairsChecked": f.pairs_checked,
                "lpFallbacks": f.lp_fallbacks,
                "counterexample": f.counterexample.as_ref().map(|c| format!("{c:?}")),
            });
        }
        out
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph chambers {\n");
        for (k, h) in self.hearts.iter().enumerate() {
            let _ = writeln!(s, "  c{k} [label=\"{h}\"];");
        }
        for e in &self.edges {
            let _ = writeln!(s, "  c{} -> c{} [label=\"{}\"];", e.from, e.to, e.label);
        }
        s.push_str("}\n");
        s
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("index,sector,path,face_set,defining_roots,separating,heart\n");
        let vecs = |v: &[Vec<i64>]| {
            v.iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")).collect::<Vec<_>>().join(";")
        };
        for (k, c) in self.chambers.iter().enumerate() {
            let path: Vec<String> = c.path().iter().map(|i| i.to_string()).collect();
            let sep: Vec<Vec<i64>> = self.separating[k].iter().map(|r| r.coords.clone()).collect();
            let roots: Vec<Vec<i64>> = c.walls().iter().map(|w| w.root.clone()).collect();
            let _ = writeln!(
                s,
                "{k},{},{},{},\"{}\",\"{}\",\"{}\"",
                c.sector().symbol(),
                path.join(" "),
                c.face_set().compact(),
                vecs(&roots),
                vecs(&sep),
                self.hearts[k]
            );
        }
        s
    }

    pub fn to_svg(&self, arr: &Arrangement) -> Result<String> {
        svg_slice(arr, &self.chambers)
    }
}

const SIZE: f64 = 480.0;

/// Projection of θ onto the plane spanned by the values on Δ\𝔍, scaled to the
/// slice δ_𝔍 = ±1 in sectors ±.
fn project(arr: &Arrangement, ray: &[i64], sector: Sector) -> Result<Vec<f64>> {
    let fin = arr.finite_positions();
    let scale = match sector {
        Sector::Zero => {
            let n = fin.iter().map(|&k| (ray[k] as f64).powi(2)).sum::<f64>().sqrt();
            if n == 0.0 {
                1.0
            } else {
                n
            }
        }
        _ => arr.delta_of(ray)?.abs() as f64,
    };
    Ok(fin.iter().map(|&k| ray[k] as f64 / scale).collect())
}

fn polygon(pts: &[Vec<f64>]) -> Vec<(f64, f64)> {
    let n = pts.len() as f64;
    let cx = pts.iter().map(|p| p[0]).sum::<f64>() / n;
    let cy = pts.iter().map(|p| p[1]).sum::<f64>() / n;
    let mut v: Vec<(f64, f64)> = pts.iter().map(|p| (p[0], p[1])).collect();
    v.sort_by(|a, b| (a.1 - cy).atan2(a.0 - cx).total_cmp(&(b.1 - cy).atan2(b.0 - cx)));
    v
}

/// Chambers of one sector drawn on the slice δ_𝔍 = 1 (sectors ±, as intervals
/// or polygons) or as cones in {δ_𝔍 = 0}; the principal chamber is shaded.
pub fn svg_slice(arr: &Arrangement, chambers: &[Chamber]) -> Result<String> {
    let k = arr.finite_positions().len();
    let sector = chambers.first().map(|c| c.sector()).ok_or_else(|| Error::Config("nothing to draw".into()))?;
    if k > 2 {
        return Err(Error::Config(format!("svg slices need 1 or 2 free coordinates on the slice, found {k}")));
    }
    let mut shapes: Vec<(bool, Vec<(f64, f64)>)> = Vec::new();
    for (idx, c) in chambers.iter().enumerate() {
        let mut pts: Vec<Vec<f64>> = c.rays().iter().map(|r| project(arr, r, sector)).collect::<Result<_>>()?;
        if sector == Sector::Zero {
            pts.push(vec![0.0, 0.0]);
        }
        let shape = if k == 1 { pts.iter().map(|p| (p[0], 0.0)).collect() } else { polygon(&pts) };
        shapes.push((idx == 0, shape));
    }
    let extent = shapes
        .iter()
        .flat_map(|(_, s)| s.iter().map(|p| p.0.abs().max(p.1.abs())))
        .fold(1.0f64, f64::max);
    let f = (SIZE / 2.0 - 20.0) / extent;
    let tx = |p: &(f64, f64)| (SIZE / 2.0 + p.0 * f, SIZE / 2.0 - p.1 * f);
    let mut s = String::new();
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">"
    );
    let _ = writeln!(s, "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>");
    for (principal, shape) in &shapes {
        let fill = if *principal { "#c8d8f0" } else { "none" };
        if k == 1 {
            let (a, b) = (tx(&shape[0]), tx(&shape[shape.len() - 1]));
            let _ = writeln!(
                s,
                "<line x1=\"{:.3}\" y1=\"{:.3}\" x2=\"{:.3}\" y2=\"{:.3}\" stroke=\"{}\" stroke-width=\"6\"/>",
                a.0,
                a.1,
                b.0,
                b.1,
                if *principal { "#6080c0" } else { "#999999" }
            );
            for p in [a, b] {
                let _ = writeln!(s, "<line x1=\"{:.3}\" y1=\"{:.3}\" x2=\"{:.3}\" y2=\"{:.3}\" stroke=\"black\"/>", p.0, p.1 - 10.0, p.0, p.1 + 10.0);
            }
        } else {
            let pts: Vec<String> = shape.iter().map(|p| {
                let q = tx(p);
                format!("{:.3},{:.3}", q.0, q.1)
            }).collect();
            let _ = writeln!(s, "<polygon points=\"{}\" fill=\"{fill}\" stroke=\"black\" stroke-width=\"1\"/>", pts.join(" "));
        }
    }
    s.push_str("</svg>\n");
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynkin::DynkinData;

    fn arr(d: &str, marked: &[usize]) -> Arrangement {
        Arrangement::new(DynkinData::parse(d, marked).unwrap()).unwrap()
    }

    #[test]
    fn listing_formats() {
        let a = arr("A1~", &[]);
        let l = ChamberListing::build(&a, Sector::Plus, 2, true).unwrap();
        assert_eq!(l.chambers.len(), 4);
        assert!(l.fan.as_ref().unwrap().ok);
        let csv = l.to_csv();
        assert_eq!(csv.lines().count(), 5);
        assert!(csv.lines().nth(1).unwrap().ends_with(",\"H\""));
        let dot = l.to_dot();
        assert_eq!(dot.matches("->").count(), l.edges.len());
        let v = l.to_json(&a);
        assert_eq!(v["chambers"].as_array().unwrap().len(), 4);
        assert_eq!(v["chambers"][1]["heart"], "Ψ₀H");
        let svg = l.to_svg(&a).unwrap();
        assert_eq!(svg.matches("<line").count(), 4 * 3);
    }

    #[test]
    fn svg_needs_a_plane() {
        let a = arr("A3~", &[]);
        let cs = a.enumerate_box(Sector::Plus, 1).unwrap();
        assert!(matches!(svg_slice(&a, &cs), Err(Error::Config(_))));
        let a2 = arr("A2~", &[]);
        let zero = a2.enumerate_box(Sector::Zero, 1).unwrap();
        assert_eq!(svg_slice(&a2, &zero).unwrap().matches("<polygon").count(), 6);
        assert!(svg_slice(&a2, &[]).is_err());
    }
}
