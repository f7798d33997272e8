//! Deterministic SVG 1.1 rendering of planar configurations, fans and
//! polytopes: rays as arrows from the origin, cone wedges shaded, ghost
//! vectors dashed, polytope edges with inward normals. Fixed 800x800
//! canvas and palette; coordinates are scaled to fit.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::config::VectorConfiguration;
use crate::error::Error;
use crate::fan::Triangulation;
use crate::polytope::{vertices, PolytopePresentation};
use crate::scalar::Scalar;

const CENTER: f64 = 400.0;
const RADIUS: f64 = 330.0;
const PALETTE: [&str; 6] = [
    "#c6dbef", "#fdd0a2", "#c7e9c0", "#fcbba1", "#dadaeb", "#fff7bc",
];

fn fmt(x: f64) -> String {
    // Three decimals keep the output byte-stable across runs.
    format!("{:.3}", x)
}

fn header(out: &mut String) {
    out.push_str(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" \
         width=\"800\" height=\"800\" viewBox=\"0 0 800 800\">\n",
    );
    out.push_str("<rect width=\"800\" height=\"800\" fill=\"white\"/>\n");
}

fn to_canvas(p: [f64; 2], scale: f64) -> [f64; 2] {
    // y grows upward mathematically, downward in SVG.
    [CENTER + p[0] * scale, CENTER - p[1] * scale]
}

fn approx2(v: &[Scalar]) -> [f64; 2] {
    [v[0].approx_f64(), v[1].approx_f64()]
}

fn arrow(out: &mut String, from: [f64; 2], to: [f64; 2], dashed: bool, label: Option<usize>) {
    let dash = if dashed {
        " stroke-dasharray=\"8,6\""
    } else {
        ""
    };
    let _ = writeln!(
        out,
        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\" stroke-width=\"2\"{}/>",
        fmt(from[0]),
        fmt(from[1]),
        fmt(to[0]),
        fmt(to[1]),
        dash
    );
    // Arrowhead: two short strokes back from the tip.
    let dx = to[0] - from[0];
    let dy = to[1] - from[1];
    let len = (dx * dx + dy * dy).sqrt();
    if len > 1e-9 {
        let (ux, uy) = (dx / len, dy / len);
        for s in [1.0, -1.0] {
            // Unit vector rotated ~150 degrees off the shaft.
            let (wx, wy) = (
                -0.866 * ux + s * 0.5 * uy,
                -s * 0.5 * ux - 0.866 * uy,
            );
            let _ = writeln!(
                out,
                "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\" stroke-width=\"2\"/>",
                fmt(to[0]),
                fmt(to[1]),
                fmt(to[0] + 14.0 * wx),
                fmt(to[1] + 14.0 * wy)
            );
        }
    }
    if let Some(i) = label {
        let _ = writeln!(
            out,
            "<text x=\"{}\" y=\"{}\" font-size=\"18\" font-family=\"monospace\">v{}</text>",
            fmt(to[0] + 8.0 * (to[0] - from[0]).signum()),
            fmt(to[1] + 8.0 * (to[1] - from[1]).signum()),
            i
        );
    }
}

/// Fan (or bare configuration when `t` is None) in the plane. Zero
/// vectors are drawn as a small dashed circle at the origin.
pub fn render_fan(v: &VectorConfiguration, t: Option<&Triangulation>) -> Result<String, Error> {
    if v.dim() != 2 {
        return Err(Error::Dimension("render requires d = 2".into()));
    }
    let dirs: Vec<[f64; 2]> = v.vectors().iter().map(|w| approx2(w)).collect();
    let mut out = String::new();
    header(&mut out);

    // Shaded wedges first so rays draw on top. Each wedge extends both
    // rays of a 2-simplex out to the fixed radius.
    if let Some(t) = t {
        for (k, s) in t.simplices().iter().enumerate() {
            let idx: Vec<usize> = s.iter().copied().collect();
            let mut pts = vec![[CENTER, CENTER]];
            for &i in &idx {
                let d = dirs[i - 1];
                let len = (d[0] * d[0] + d[1] * d[1]).sqrt();
                if len < 1e-9 {
                    continue;
                }
                pts.push([
                    CENTER + d[0] / len * RADIUS,
                    CENTER - d[1] / len * RADIUS,
                ]);
            }
            let path: Vec<String> = pts
                .iter()
                .map(|p| format!("{},{}", fmt(p[0]), fmt(p[1])))
                .collect();
            let _ = writeln!(
                out,
                "<polygon points=\"{}\" fill=\"{}\" fill-opacity=\"0.7\" stroke=\"none\"/>",
                path.join(" "),
                PALETTE[k % PALETTE.len()]
            );
        }
    }

    let used: BTreeSet<usize> = match t {
        Some(t) => t.simplices().iter().flatten().copied().collect(),
        None => (1..=v.len()).collect(),
    };
    let max_len = dirs
        .iter()
        .map(|d| (d[0] * d[0] + d[1] * d[1]).sqrt())
        .fold(0.0f64, f64::max);
    let scale = if max_len > 1e-9 { RADIUS / max_len } else { 1.0 };
    for (i, d) in dirs.iter().enumerate() {
        let ghost = !used.contains(&(i + 1));
        if (d[0] * d[0] + d[1] * d[1]).sqrt() < 1e-9 {
            let _ = writeln!(
                out,
                "<circle cx=\"400\" cy=\"400\" r=\"10\" fill=\"none\" stroke=\"black\" \
                 stroke-width=\"2\" stroke-dasharray=\"4,4\"/>"
            );
            continue;
        }
        arrow(
            &mut out,
            [CENTER, CENTER],
            to_canvas(*d, scale),
            ghost,
            Some(i + 1),
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// Planar polytope: boundary polygon plus inward normal arrows at the
/// edge midpoints; redundant half-space normals drawn dashed from the
/// centroid.
pub fn render_polytope(p: &PolytopePresentation) -> Result<String, Error> {
    if p.dim() != 2 {
        return Err(Error::Dimension("render requires d = 2".into()));
    }
    let verts = vertices(p);
    if verts.is_empty() {
        return Err(Error::NotFullDimensional);
    }
    let mut pts: Vec<([f64; 2], Vec<usize>)> = verts
        .iter()
        .map(|v| (approx2(&v.point), v.active.clone()))
        .collect();
    let cx = pts.iter().map(|p| p.0[0]).sum::<f64>() / pts.len() as f64;
    let cy = pts.iter().map(|p| p.0[1]).sum::<f64>() / pts.len() as f64;
    pts.sort_by(|a, b| {
        let ta = (a.0[1] - cy).atan2(a.0[0] - cx);
        let tb = (b.0[1] - cy).atan2(b.0[0] - cx);
        ta.partial_cmp(&tb).unwrap()
    });
    let spread = pts
        .iter()
        .map(|p| ((p.0[0] - cx).abs()).max((p.0[1] - cy).abs()))
        .fold(0.0f64, f64::max)
        .max(1e-9);
    let scale = RADIUS / spread;
    let place = |q: [f64; 2]| -> [f64; 2] {
        [CENTER + (q[0] - cx) * scale, CENTER - (q[1] - cy) * scale]
    };

    let mut out = String::new();
    header(&mut out);
    let poly: Vec<String> = pts
        .iter()
        .map(|p| {
            let q = place(p.0);
            format!("{},{}", fmt(q[0]), fmt(q[1]))
        })
        .collect();
    let _ = writeln!(
        out,
        "<polygon points=\"{}\" fill=\"{}\" fill-opacity=\"0.6\" stroke=\"black\" stroke-width=\"2\"/>",
        poly.join(" "),
        PALETTE[0]
    );

    // Inward normal at each edge: the half-space active on both ends.
    let n = pts.len();
    for k in 0..n {
        let a = &pts[k];
        let b = &pts[(k + 1) % n];
        let shared: Vec<usize> = a
            .1
            .iter()
            .filter(|i| b.1.contains(i))
            .copied()
            .collect();
        let mid = [(a.0[0] + b.0[0]) / 2.0, (a.0[1] + b.0[1]) / 2.0];
        for &j in &shared {
            let nv = approx2(p.normal(j - 1));
            let len = (nv[0] * nv[0] + nv[1] * nv[1]).sqrt();
            if len < 1e-9 {
                continue;
            }
            let from = place(mid);
            let to = [
                from[0] + nv[0] / len * 60.0,
                from[1] - nv[1] / len * 60.0,
            ];
            arrow(&mut out, from, to, false, Some(j));
        }
    }
    // Non-facet half-spaces: dashed normals from the centroid.
    let facet: BTreeSet<usize> = pts.iter().flat_map(|p| p.1.iter().copied()).collect();
    for j in 1..=p.len() {
        if facet.contains(&j) {
            continue;
        }
        let nv = approx2(p.normal(j - 1));
        let len = (nv[0] * nv[0] + nv[1] * nv[1]).sqrt();
        if len < 1e-9 {
            continue;
        }
        let to = [
            CENTER + nv[0] / len * 80.0,
            CENTER - nv[1] / len * 80.0,
        ];
        arrow(&mut out, [CENTER, CENTER], to, true, Some(j));
    }
    out.push_str("</svg>\n");
    Ok(out)
}
