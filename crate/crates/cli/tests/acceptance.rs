//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Run with `cargo test --test acceptance`.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use parallelohedra::catalog;
use parallelohedra::error::Error;
use parallelohedra::factorize::{factor, split, sublattice_of_component, verify_product_graph};
use parallelohedra::format::read_polytope;
use parallelohedra::gain::{check_gain, gain_of, integrate_gain, linear_cell_function, scaled_gain};
use parallelohedra::paratile::{
    build_patch, check_parallelohedron, facet_vectors, tiling_lattice, Patch,
};
use parallelohedra::polytope::{canonical_form, direct_product, dual_description, volume, Polytope};
use parallelohedra::ratlin::{direct_sum_check, int, rat};
use parallelohedra::venkov::{is_reducible, venkov_graph};
use parallelohedra::voronoi::voronoi_cell;
use parallelohedra::{QVec, Rat};

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn name(p: &Polytope) -> String {
    p.name.clone().unwrap_or_else(|| "?".into())
}

fn repo_root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn criterion_1() -> Check {
    for p in catalog::parallelohedra() {
        let r = check_parallelohedron(&p);
        ensure(r.verdict, || format!("{} rejected:\n{r}", name(&p)))?;
    }
    let oct = check_parallelohedron(&catalog::octagon());
    ensure(
        !oct.verdict
            && oct.centrally_symmetric
            && oct.belt_length_violations.iter().any(|&(_, len)| len == 8),
        || format!("octagon should fail on a belt of length 8:\n{oct}"),
    )?;
    let tp = check_parallelohedron(&catalog::triangular_prism());
    ensure(!tp.verdict && !tp.facet_symmetry_failures.is_empty(), || {
        format!("triangular prism should fail on facet symmetry:\n{tp}")
    })
}

fn minkowski_reconstruction(p: &Polytope, factors: &[Vec<QVec>]) -> Result<bool, Error> {
    let mut acc = vec![QVec::zeros(p.dim())];
    for f in factors {
        acc = acc.iter().flat_map(|a| f.iter().map(move |b| a + b)).collect();
    }
    let sum = dual_description(&acc)?;
    Ok(canonical_form(&sum).vertices() == canonical_form(p).vertices())
}

fn criterion_2() -> Check {
    for (p, want) in [
        (catalog::square(), 2),
        (catalog::cube(), 3),
        (catalog::hexagonal_prism(), 2),
        (catalog::hexagon_x_hexagon(), 2),
    ] {
        let n = name(&p);
        ensure(is_reducible(&p).map_err(|e| e.to_string())?, || format!("{n} not reducible"))?;
        let d = factor(&p).map_err(|e| format!("{n}: {e}"))?;
        ensure(d.factors.len() == want, || format!("{n}: {} factors, expected {want}", d.factors.len()))?;
        ensure(d.reconstruction_ok, || format!("{n}: reconstruction flag false"))?;
        for f in &d.factors {
            let g = venkov_graph(&f.polytope.local).map_err(|e| e.to_string())?;
            ensure(g.red_components().len() == 1, || format!("{n}: a factor is reducible"))?;
        }
        let pts: Vec<Vec<QVec>> = d.factors.iter().map(|f| f.polytope.ambient_vertices()).collect();
        ensure(minkowski_reconstruction(&p, &pts).map_err(|e| e.to_string())?, || {
            format!("{n}: P differs from the Minkowski sum of its factors")
        })?;
    }
    Ok(())
}

fn criterion_3() -> Check {
    for p in [
        catalog::hexagon(),
        catalog::rhombic_dodecahedron(),
        catalog::truncated_octahedron(),
    ] {
        let g = venkov_graph(&p).map_err(|e| e.to_string())?;
        ensure(g.red_components().len() == 1, || format!("{}: red graph disconnected", name(&p)))?;
        ensure(!is_reducible(&p).map_err(|e| e.to_string())?, || format!("{} reported reducible", name(&p)))?;
        let d = factor(&p).map_err(|e| e.to_string())?;
        ensure(d.factors.len() == 1, || format!("{}: factor() split it", name(&p)))?;
    }
    Ok(())
}

fn criterion_4() -> Check {
    let set = [
        catalog::segment(),
        catalog::square(),
        catalog::hexagon(),
        catalog::cube(),
        catalog::hexagonal_prism(),
    ];
    for a in &set {
        for b in &set {
            let r = verify_product_graph(a, b).map_err(|e| e.to_string())?;
            let (na, nb) = (
                facet_vectors(a).map_err(|e| e.to_string())?.pair_count(),
                facet_vectors(b).map_err(|e| e.to_string())?.pair_count(),
            );
            ensure(r.ok && r.cross_blue_edges == na * nb, || {
                format!("{} x {}: {:?}, cross edges {}", name(a), name(b), r.diff, r.cross_blue_edges)
            })?;
            let g = venkov_graph(&direct_product(a, b)).map_err(|e| e.to_string())?;
            ensure(g.vertex_count() == na + nb, || format!("{} x {}: vertex count", name(a), name(b)))?;
        }
    }
    Ok(())
}

fn criterion_5() -> Check {
    let mut reducible_seen = 0;
    for p in catalog::parallelohedra() {
        let n = name(&p);
        let p = canonical_form(&p);
        let g = venkov_graph(&p).map_err(|e| e.to_string())?;
        let comps = g.red_components();
        if comps.len() < 2 {
            continue;
        }
        reducible_seen += 1;
        let a1 = comps[0].clone();
        let mut a2: Vec<usize> = comps[1..].concat();
        a2.sort();
        let table = facet_vectors(&p).map_err(|e| e.to_string())?;
        let whole = tiling_lattice(&p).map_err(|e| e.to_string())?;
        let l1 = sublattice_of_component(&table, &a1).map_err(|e| e.to_string())?;
        let l2 = sublattice_of_component(&table, &a2).map_err(|e| e.to_string())?;
        ensure(l1.rank() + l2.rank() == p.dim(), || format!("{n}: ranks do not add up"))?;
        ensure(direct_sum_check(&whole, &l1, &l2).map_err(|e| e.to_string())?, || {
            format!("{n}: direct sum check failed")
        })?;
        split(&p, &a1, &a2).map_err(|e| format!("{n}: valid split rejected: {e}"))?;

        // Move one endpoint of a red edge into the other block.
        for &(u, v) in &g.red_edges {
            let (mut b1, mut b2) = (a1.clone(), a2.clone());
            let (from, to) = if b1.contains(&u) { (&mut b1, &mut b2) } else { (&mut b2, &mut b1) };
            if from.len() < 2 {
                continue;
            }
            from.retain(|&x| x != u);
            to.push(u);
            to.sort();
            let r = split(&p, &b1, &b2);
            ensure(matches!(r, Err(Error::RedEdgeCrossing(_, _))), || {
                format!("{n}: moving {u} across red edge {u}--{v} gave {r:?}")
            })?;
        }
    }
    ensure(reducible_seen >= 4, || format!("only {reducible_seen} reducible catalog entries"))
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rat {
    rat(rng.gen_range(-20..=20), rng.gen_range(1..=9))
}

fn nonzero_rational(rng: &mut ChaCha8Rng) -> Rat {
    loop {
        let r = random_rational(rng);
        if r != int(0) {
            return r;
        }
    }
}

/// All ordered splits of `0..n` into two nonempty blocks with 0 in the first.
fn bipartitions(n: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    (1..(1u32 << n) - 1)
        .filter(|m| m & 1 == 1)
        .map(|m| (0..n).partition(|&i| m >> i & 1 == 1))
        .collect()
}

fn gain_suite(p: &Polytope, rng: &mut ChaCha8Rng) -> Check {
    let n = name(p);
    let patch: Patch = build_patch(p, 1).map_err(|e| e.to_string())?;
    let g_graph = venkov_graph(p).map_err(|e| e.to_string())?;
    let origin = QVec::zeros(p.dim());
    for trial in 0..20 {
        let w = QVec::new((0..p.dim()).map(|_| random_rational(rng)).collect());
        let f = linear_cell_function(&patch, &w);
        let g = gain_of(&f, &patch).map_err(|e| e.to_string())?;
        let (ok, report) = check_gain(&patch, &g);
        ensure(ok, || format!("{n} trial {trial}: gain of a cell function rejected:\n{report}"))?;
        let back = integrate_gain(&patch, &g, &origin, f[&origin].clone()).map_err(|e| e.to_string())?;
        ensure(back == f, || format!("{n} trial {trial}: integrate_gain does not invert gain_of"))?;

        for key in g.keys() {
            let mut h = g.clone();
            *h.get_mut(key).unwrap() += nonzero_rational(rng);
            ensure(!check_gain(&patch, &h).0, || {
                format!("{n} trial {trial}: perturbation at {} -> {} accepted", key.0, key.1)
            })?;
        }

        if trial < 3 {
            for (a1, a2) in bipartitions(g_graph.vertex_count()) {
                let crossing = g_graph
                    .red_edges
                    .iter()
                    .any(|(u, v)| a1.contains(u) != a1.contains(v));
                for alpha in [int(2), int(-1), rat(1, 3), int(0), rat(7, 5)] {
                    let h = scaled_gain(&patch, &f, &a1, &a2, &alpha).map_err(|e| e.to_string())?;
                    let (ok, _) = check_gain(&patch, &h);
                    ensure(ok == !crossing, || {
                        format!("{n}: partition {a1:?}|{a2:?} alpha {alpha}: valid={ok}, red crossing={crossing}")
                    })?;
                }
            }
        }
    }
    Ok(())
}

fn criterion_6() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for p in [catalog::square(), catalog::hexagon(), catalog::cube()] {
        gain_suite(&p, &mut rng)?;
    }
    Ok(())
}

fn criterion_7() -> Check {
    let sq = voronoi_cell(&catalog::integer_lattice(2)).map_err(|e| e.to_string())?;
    ensure(sq.vertices() == canonical_form(&catalog::square()).vertices(), || "Z^2 cell is not the unit square".into())?;
    let cube = voronoi_cell(&catalog::integer_lattice(3)).map_err(|e| e.to_string())?;
    ensure(cube.vertices() == canonical_form(&catalog::cube()).vertices(), || "Z^3 cell is not the unit cube".into())?;

    let fixture = std::fs::read_to_string(repo_root().join("fixtures/rhombic_dodecahedron.poly")).map_err(|e| e.to_string())?;
    let rd = read_polytope(&fixture).map_err(|e| e.to_string())?;
    let fcc = voronoi_cell(&catalog::fcc()).map_err(|e| e.to_string())?.with_name("rhombic_dodecahedron");
    ensure(canonical_form(&fcc) == canonical_form(&rd), || "FCC cell differs from the fixture".into())?;

    let bcc = voronoi_cell(&catalog::bcc()).map_err(|e| e.to_string())?;
    ensure(bcc.facets().len() == 14 && volume(&bcc) == rat(1, 2), || {
        format!("BCC cell: {} facets, volume {}", bcc.facets().len(), volume(&bcc))
    })?;

    for (lname, l) in catalog::lattices() {
        let cell = voronoi_cell(&l).map_err(|e| format!("{lname}: {e}"))?;
        let tl = tiling_lattice(&cell).map_err(|e| e.to_string())?;
        ensure(tl == l, || format!("{lname}: tiling lattice differs from input"))?;
        ensure(Some(volume(&cell)) == l.abs_det(), || format!("{lname}: volume != |det|"))?;
    }
    Ok(())
}

fn criterion_8() -> Check {
    for p in catalog::parallelohedra() {
        let l = tiling_lattice(&p).map_err(|e| format!("{}: {e}", name(&p)))?;
        ensure(l.abs_det() == Some(volume(&p)), || {
            format!("{}: |det| {:?} != volume {}", name(&p), l.abs_det(), volume(&p))
        })?;
    }
    Ok(())
}

fn run_cli(args: &[&str]) -> (Vec<u8>, Vec<u8>, Option<i32>) {
    let out = Command::new(env!("CARGO_BIN_EXE_parallelohedra"))
        .args(args)
        .current_dir(repo_root())
        .output()
        .expect("run CLI");
    (out.stdout, out.stderr, out.status.code())
}

fn criterion_9() -> Check {
    let fixtures = repo_root().join("fixtures");
    let mut files: Vec<PathBuf> = std::fs::read_dir(&fixtures)
        .map_err(|e| e.to_string())?
        .map(|e| e.unwrap().path())
        .collect();
    files.sort();
    let rel = |p: &Path| format!("fixtures/{}", p.file_name().unwrap().to_string_lossy());
    let mut invocations: Vec<Vec<String>> = Vec::new();
    for f in &files {
        let f = rel(f);
        let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        if f.ends_with(".poly") {
            for cmd in ["check", "venkov", "factor", "patch"] {
                invocations.push(s(&[cmd, &f]));
                invocations.push(s(&["--summary", "kv", cmd, &f]));
            }
            invocations.push(s(&["product", &f, "fixtures/segment.poly"]));
            let header = std::fs::read_to_string(repo_root().join(&f)).map_err(|e| e.to_string())?;
            let d: usize = header
                .lines()
                .find_map(|l| l.strip_prefix("polytope d="))
                .and_then(|d| d.trim().parse().ok())
                .ok_or_else(|| format!("{f}: no header"))?;
            let w: Vec<String> = (0..d).map(|i| format!("{}/3", i + 1)).collect();
            invocations.push(s(&["gain-check", &f, "--linear", &w.join(","), "--summary", "kv"]));
        } else if f.ends_with(".lat") {
            invocations.push(s(&["voronoi-cell", &f]));
            invocations.push(s(&["--summary", "kv", "voronoi-cell", &f]));
        } else if f.ends_with(".gain") {
            invocations.push(s(&["gain-check", "fixtures/hexagon.poly", &f]));
        }
    }
    invocations.push(vec!["gain-check".into(), "fixtures/hexagon".into(), "--linear".into(), "1,3".into(), "--partition".into(), "0|1,2".into(), "--alpha".into(), "2".into()]);
    invocations.push(vec!["factor".into(), "fixtures/hexagonal_prism".into(), "--partition".into(), "0|1,2,3".into()]);
    for args in &invocations {
        let a: Vec<&str> = args.iter().map(String::as_str).collect();
        let first = run_cli(&a);
        let second = run_cli(&a);
        ensure(first == second, || format!("output differs between runs of {}", args.join(" ")))?;
        ensure(first.2.is_some(), || format!("{} was killed by a signal", args.join(" ")))?;
    }
    // Spot-check the documented outputs.
    let (out, _, code) = run_cli(&["check", "fixtures/cube"]);
    ensure(code == Some(0) && String::from_utf8_lossy(&out).contains("verdict: parallelohedron"), || "check cube".into())?;
    let (_, err, code) = run_cli(&["venkov", "fixtures/rhombic_dodecahedron"]);
    ensure(
        code == Some(0) && String::from_utf8_lossy(&err).trim() == "vertices=6 red=12 blue=0 red_components=1",
        || "venkov rhombic dodecahedron summary".into(),
    )?;
    let (out, _, code) = run_cli(&["factor", "fixtures/hexagonal_prism"]);
    ensure(
        code == Some(0) && String::from_utf8_lossy(&out).lines().any(|l| l == "components=2"),
        || "factor hexagonal prism".into(),
    )?;
    ensure(invocations.len() > 50, || "too few invocations".into())
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("Minkowski-Venkov conditions on the catalog", criterion_1),
        ("reducible entries factor with exact reconstruction", criterion_2),
        ("red-connected entries are irreducible", criterion_3),
        ("Venkov graph of products", criterion_4),
        ("direct sums of red-partition sublattices", criterion_5),
        ("gain functions on patches", criterion_6),
        ("Voronoi cells", criterion_7),
        ("|det| equals volume", criterion_8),
        ("CLI determinism", criterion_9),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (title, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let r = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        match r {
            Ok(()) => println!("criterion {}: PASS  {title} ({:.1?})", i + 1, t.elapsed()),
            Err(msg) => {
                failed += 1;
                println!("criterion {}: FAIL  {title}: {msg}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed in {:.1?}", 9 - failed, start.elapsed());
    if failed > 0 {
        std::process::exit(1);
    }
}
