use parallelohedra_web::{analyze_text, product_text, voronoi_report_text, voronoi_svg_text};

const SQUARE: &str = "polytope d=2\nname=square\n-1/2 -1/2\n-1/2 1/2\n1/2 -1/2\n1/2 1/2\n";
const HEXAGON: &str = "polytope d=2\nname=hexagon\n-1 0\n-1/2 -1\n-1/2 1\n1/2 -1\n1/2 1\n1 0\n";

#[test]
fn product_of_presets_is_reducible() {
    let p = product_text(SQUARE, HEXAGON).unwrap();
    assert!(p.starts_with("polytope d=4\nname=square_x_hexagon\n"));
    let a = analyze_text(&p).unwrap();
    assert!(a.contains("\nreducible\n"));
    assert!(a.contains("components=3"));
}

#[test]
fn every_planar_preset_draws() {
    for l in ["1 0\n1/2 1\n", "1 0\n0 1\n", "2 1\n0 3\n", "3 0\n0 1\n"] {
        let text = format!("lattice d=2\n{l}");
        let svg = voronoi_svg_text(&text).unwrap();
        assert!(svg.trim_end().ends_with("</svg>"));
        assert!(voronoi_report_text(&text).unwrap().contains("verdict: parallelohedron"));
    }
}

#[test]
fn spatial_report() {
    let r = voronoi_report_text("lattice d=3\n1 1 0\n1 0 1\n0 1 1\n").unwrap();
    assert!(r.starts_with("12 facets, 14 vertices, volume 2\n"));
    assert!(r.contains("vertices=6 red=12 blue=0 red_components=1"));
}

#[test]
fn errors_are_messages() {
    assert!(analyze_text("nonsense").unwrap_err().contains("line 1"));
    assert!(voronoi_svg_text("lattice d=2\n1 1\n").unwrap_err().contains("rank"));
}
