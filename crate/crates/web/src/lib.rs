//! Browser bindings: polytope analysis, planar Voronoi tilings as SVG, and
//! direct products. Each exported function has a plain-Rust twin returning
//! `Result<String, String>` so it can be tested natively.

use std::fmt::Write as _;

use num_traits::ToPrimitive;
use wasm_bindgen::prelude::*;

use parallelohedra::factorize::factor;
use parallelohedra::format::{read_lattice, read_polytope, write_polytope};
use parallelohedra::paratile::{check_parallelohedron, facet_vectors, tiling_lattice};
use parallelohedra::polytope::{direct_product, volume, Polytope};
use parallelohedra::venkov::venkov_graph;
use parallelohedra::voronoi::voronoi_cell;
use parallelohedra::{Lattice, QVec, Rat};

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// Minkowski–Venkov report, Venkov graph summary and factorization.
pub fn analyze_text(polytope: &str) -> Result<String, String> {
    let p = read_polytope(polytope).map_err(err)?;
    let report = check_parallelohedron(&p);
    let mut out = format!("{report}\n");
    if !report.verdict {
        return Ok(out);
    }
    let g = venkov_graph(&p).map_err(err)?;
    let _ = writeln!(out, "\n{}", g.summary());
    for (v, label) in g.labels.iter().enumerate() {
        let _ = writeln!(out, "  pair {v}: normal {label}");
    }
    let l = tiling_lattice(&p).map_err(err)?;
    let _ = writeln!(out, "volume = |det Λ| = {}", volume(&p));
    let rows: Vec<String> = l.basis().rows().iter().map(|r| r.to_string()).collect();
    let _ = writeln!(out, "tiling lattice basis: {}", rows.join(" "));
    let d = factor(&p).map_err(err)?;
    let _ = writeln!(
        out,
        "\n{}",
        if d.is_reducible() { "reducible" } else { "irreducible" }
    );
    let _ = writeln!(out, "{d}");
    Ok(out)
}

/// Polytope file of the direct product.
pub fn product_text(a: &str, b: &str) -> Result<String, String> {
    let p = read_polytope(a).map_err(err)?;
    let q = read_polytope(b).map_err(err)?;
    Ok(write_polytope(&direct_product(&p, &q)))
}

fn f64_of(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Vertices of a polygon in cyclic order (exact angular sort about the
/// centroid, by half-plane then cross product).
fn polygon(p: &Polytope) -> Vec<QVec> {
    let c = p.vertex_centroid();
    let mut v: Vec<QVec> = p.vertices().to_vec();
    let half = |u: &QVec| {
        let zero = Rat::from_integer(0.into());
        if u[1] > zero || (u[1] == zero && u[0] > zero) {
            0
        } else {
            1
        }
    };
    v.sort_by(|a, b| {
        let (a, b) = (a - &c, b - &c);
        half(&a).cmp(&half(&b)).then_with(|| {
            let cross = &a[0] * &b[1] - &a[1] * &b[0];
            Rat::from_integer(0.into()).cmp(&cross)
        })
    });
    v
}

const PALETTE: [&str; 4] = ["#f4d58d", "#bfd7ea", "#d5e8c1", "#f2b8a2"];

fn svg_for(l: &Lattice, cell: &Polytope, radius: i64) -> String {
    let poly = polygon(cell);
    let basis = l.basis().rows();
    let mut cells = Vec::new();
    for i in -radius..=radius {
        for j in -radius..=radius {
            let t = &basis[0].scale(&Rat::from_integer(i.into())) + &basis[1].scale(&Rat::from_integer(j.into()));
            let color = PALETTE[((i.rem_euclid(2)) * 2 + j.rem_euclid(2)) as usize];
            let pts: Vec<(f64, f64)> = poly.iter().map(|v| (f64_of(&(v + &t)[0]), f64_of(&(v + &t)[1]))).collect();
            cells.push((pts, color, i == 0 && j == 0));
        }
    }
    let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for (pts, _, _) in &cells {
        for &(x, y) in pts {
            x0 = x0.min(x);
            y0 = y0.min(y);
            x1 = x1.max(x);
            y1 = y1.max(y);
        }
    }
    let (w, h) = (x1 - x0, y1 - y0);
    let scale = 480.0 / w.max(h);
    let tx = |x: f64| (x - x0) * scale + 10.0;
    let ty = |y: f64| (y1 - y) * scale + 10.0;
    let mut s = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0}\" height=\"{:.0}\">\n",
        w * scale + 20.0,
        h * scale + 20.0
    );
    for (pts, color, central) in &cells {
        let path: Vec<String> = pts.iter().map(|&(x, y)| format!("{:.2},{:.2}", tx(x), ty(y))).collect();
        let stroke = if *central { "stroke=\"#b00\" stroke-width=\"2.5\"" } else { "stroke=\"#444\" stroke-width=\"1\"" };
        let _ = writeln!(s, "  <polygon points=\"{}\" fill=\"{color}\" {stroke}/>", path.join(" "));
    }
    if let Ok(table) = facet_vectors(cell) {
        for t in &table.vectors {
            let _ = writeln!(
                s,
                "  <line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"#b00\" stroke-dasharray=\"4 3\"/>",
                tx(0.0),
                ty(0.0),
                tx(f64_of(&t[0])),
                ty(f64_of(&t[1]))
            );
        }
    }
    s.push_str("</svg>\n");
    s
}

/// Planar lattice: SVG of a tiling patch by its Voronoi cell.
pub fn voronoi_svg_text(lattice: &str) -> Result<String, String> {
    let l = read_lattice(lattice).map_err(err)?;
    if l.ambient_dim() != 2 {
        return Err("the drawing needs a lattice in the plane".into());
    }
    let cell = voronoi_cell(&l).map_err(err)?;
    Ok(svg_for(&l, &cell, 2))
}

/// Planar or spatial lattice: Voronoi cell file plus analysis.
pub fn voronoi_report_text(lattice: &str) -> Result<String, String> {
    let l = read_lattice(lattice).map_err(err)?;
    let cell = voronoi_cell(&l).map_err(err)?;
    let text = write_polytope(&cell);
    let mut out = format!(
        "{} facets, {} vertices, volume {}\n",
        cell.facets().len(),
        cell.vertices().len(),
        volume(&cell)
    );
    out.push_str(&analyze_text(&text)?);
    out.push('\n');
    out.push_str(&text);
    Ok(out)
}

#[wasm_bindgen]
pub fn analyze(polytope: &str) -> Result<String, JsError> {
    analyze_text(polytope).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn product(a: &str, b: &str) -> Result<String, JsError> {
    product_text(a, b).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn voronoi_svg(lattice: &str) -> Result<String, JsError> {
    voronoi_svg_text(lattice).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn voronoi_report(lattice: &str) -> Result<String, JsError> {
    voronoi_report_text(lattice).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    const HEXAGON: &str = "polytope d=2\n1 0\n1/2 1\n-1/2 1\n-1 0\n-1/2 -1\n1/2 -1\n";
    const SEGMENT: &str = "polytope d=1\n-1/2\n1/2\n";

    #[test]
    fn analyze_reports_reducibility() {
        let hex = analyze_text(HEXAGON).unwrap();
        assert!(hex.contains("verdict: parallelohedron"));
        assert!(hex.contains("vertices=3 red=3 blue=0 red_components=1"));
        assert!(hex.contains("\nirreducible\n"));
        let prism = analyze_text(&product_text(HEXAGON, SEGMENT).unwrap()).unwrap();
        assert!(prism.contains("\nreducible\n") && prism.contains("components=2"));
        let oct = "polytope d=2\n2 1\n1 2\n-1 2\n-2 1\n-2 -1\n-1 -2\n1 -2\n2 -1\n";
        assert!(analyze_text(oct).unwrap().ends_with("verdict: not a parallelohedron\n"));
        assert!(analyze_text("polytope d=2\n0 0\n1 x\n").unwrap_err().contains("line 3"));
    }

    #[test]
    fn svg_of_hexagonal_tiling() {
        let svg = voronoi_svg_text("lattice d=2\n1 0\n1/2 1\n").unwrap();
        assert!(svg.starts_with("<svg"));
        assert_eq!(svg.matches("<polygon").count(), 25);
        assert_eq!(svg.matches("<line").count(), 6);
        assert!(voronoi_svg_text("lattice d=3\n1 0 0\n0 1 0\n0 0 1\n").is_err());
    }

    #[test]
    fn voronoi_report_of_square_lattice() {
        let r = voronoi_report_text("lattice d=2\n1 0\n0 1\n").unwrap();
        assert!(r.starts_with("4 facets, 4 vertices, volume 1\n"));
        assert!(r.contains("components=2"));
    }

    #[test]
    fn polygon_order_is_cyclic() {
        let p = read_polytope(HEXAGON).unwrap();
        let v = polygon(&p);
        for i in 0..v.len() {
            let (a, b) = (&v[i], &v[(i + 1) % v.len()]);
            // Consecutive vertices share an edge.
            assert!(p.facets().iter().any(|f| f.slack(a) == Rat::from_integer(0.into()) && f.slack(b) == Rat::from_integer(0.into())));
        }
    }
}
