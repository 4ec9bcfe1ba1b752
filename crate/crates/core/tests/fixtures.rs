//! The files under `fixtures/` are the text form of the catalog.
//! Run with `REGENERATE_FIXTURES=1` to rewrite them.

use std::fs;
use std::path::PathBuf;

use parallelohedra::catalog;
use parallelohedra::format::{read_gain, read_lattice, read_polytope, write_gain, write_lattice, write_polytope};
use parallelohedra::gain::{gain_of, linear_cell_function};
use parallelohedra::paratile::build_patch;
use parallelohedra::polytope::canonical_form;
use parallelohedra::QVec;

fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn expected() -> Vec<(String, String)> {
    let mut files = Vec::new();
    for p in catalog::parallelohedra().into_iter().chain(catalog::non_parallelohedra()) {
        let name = p.name.clone().expect("catalog entries are named");
        files.push((format!("{name}.poly"), write_polytope(&p)));
    }
    for (name, l) in catalog::lattices() {
        files.push((format!("{name}.lat"), write_lattice(&l)));
    }
    let hex = catalog::hexagon();
    let patch = build_patch(&hex, 1).unwrap();
    let g = gain_of(&linear_cell_function(&patch, &QVec::from_ints(&[0, 1])), &patch).unwrap();
    files.push((
        "hexagon_height.gain".into(),
        format!("# increments of f(λ) = λ·(0,1) on the radius-1 hexagon patch\n{}", write_gain(&g)),
    ));
    files
}

#[test]
fn fixtures_match_catalog() {
    let dir = fixtures_dir();
    let regenerate = std::env::var_os("REGENERATE_FIXTURES").is_some();
    if regenerate {
        fs::create_dir_all(&dir).unwrap();
    }
    for (name, text) in expected() {
        let path = dir.join(&name);
        if regenerate {
            fs::write(&path, &text).unwrap();
        }
        let on_disk = fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(on_disk, text, "{name} is stale; rerun with REGENERATE_FIXTURES=1");
    }
}

#[test]
fn fixtures_parse_back_to_catalog() {
    let dir = fixtures_dir();
    for p in catalog::parallelohedra().into_iter().chain(catalog::non_parallelohedra()) {
        let name = p.name.clone().unwrap();
        let q = read_polytope(&fs::read_to_string(dir.join(format!("{name}.poly"))).unwrap()).unwrap();
        assert_eq!(q, canonical_form(&p), "{name}");
    }
    for (name, l) in catalog::lattices() {
        let m = read_lattice(&fs::read_to_string(dir.join(format!("{name}.lat"))).unwrap()).unwrap();
        assert_eq!(m, l, "{name}");
    }
    let g = read_gain(&fs::read_to_string(dir.join("hexagon_height.gain")).unwrap(), 2).unwrap();
    assert!(!g.is_empty());
}
