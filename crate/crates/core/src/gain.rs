//! Gain functions on the facet-adjacency graph of a tiling patch.
//!
//! A gain assigns a rational to every oriented pair of facet-adjacent
//! cells. It is the increment of a cell function `f` (`g(a, b) = f(b) -
//! f(a)`) exactly when it is antisymmetric and sums to zero around every
//! ridge cycle of the patch.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::paratile::Patch;
use crate::ratlin::{QVec, Rat};

/// Values on oriented adjacent cell pairs, keyed by lattice vectors.
pub type GainAssignment = BTreeMap<(QVec, QVec), Rat>;

/// Values on cells, keyed by lattice vectors.
pub type CellFunction = BTreeMap<QVec, Rat>;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GainReport {
    /// Adjacent oriented pairs with no value.
    pub missing: Vec<(QVec, QVec)>,
    /// Entries on pairs that are not adjacent cells of the patch.
    pub extraneous: Vec<(QVec, QVec)>,
    /// Pairs with `g(a, b) + g(b, a) != 0`, listed once with `a < b`.
    pub antisymmetry_violations: Vec<(QVec, QVec, Rat)>,
    /// Ridge cycles whose gains do not sum to zero.
    pub cycle_violations: Vec<(Vec<QVec>, Rat)>,
    pub cycles_checked: usize,
}

impl GainReport {
    pub fn is_valid(&self) -> bool {
        self.missing.is_empty()
            && self.extraneous.is_empty()
            && self.antisymmetry_violations.is_empty()
            && self.cycle_violations.is_empty()
    }
}

impl fmt::Display for GainReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (a, b) in &self.missing {
            writeln!(f, "missing: {a} -> {b}")?;
        }
        for (a, b) in &self.extraneous {
            writeln!(f, "not adjacent: {a} -> {b}")?;
        }
        for (a, b, s) in &self.antisymmetry_violations {
            writeln!(f, "antisymmetry: g({a},{b}) + g({b},{a}) = {s}")?;
        }
        for (cells, s) in &self.cycle_violations {
            let names: Vec<String> = cells.iter().map(|c| c.to_string()).collect();
            writeln!(f, "cycle [{}] sums to {s}", names.join(" "))?;
        }
        write!(
            f,
            "cycles_checked={} valid={}",
            self.cycles_checked,
            self.is_valid()
        )
    }
}

fn oriented_pairs(patch: &Patch) -> Vec<(QVec, QVec)> {
    patch
        .oriented_facets()
        .into_iter()
        .map(|(a, b)| (patch.cells[a].clone(), patch.cells[b].clone()))
        .collect()
}

/// `λ ↦ λ · w` on every cell of the patch.
pub fn linear_cell_function(patch: &Patch, w: &QVec) -> CellFunction {
    patch.cells.iter().map(|c| (c.clone(), c.dot(w))).collect()
}

/// Increments `g(a, b) = f(b) - f(a)` over every adjacent pair.
pub fn gain_of(f: &CellFunction, patch: &Patch) -> Result<GainAssignment> {
    let value = |c: &QVec| f.get(c).ok_or_else(|| Error::MissingCell(c.to_string()));
    let mut g = GainAssignment::new();
    for (a, b) in oriented_pairs(patch) {
        let v = value(&b)? - value(&a)?;
        g.insert((a, b), v);
    }
    Ok(g)
}

/// Checks antisymmetry and the zero-sum condition on every ridge cycle.
pub fn check_gain(patch: &Patch, g: &GainAssignment) -> (bool, GainReport) {
    let mut report = GainReport::default();
    let pairs = oriented_pairs(patch);
    let adjacent: BTreeSet<&(QVec, QVec)> = pairs.iter().collect();
    for k in &pairs {
        if !g.contains_key(k) {
            report.missing.push(k.clone());
        }
    }
    for k in g.keys() {
        if !adjacent.contains(k) {
            report.extraneous.push(k.clone());
        }
    }
    for (a, b) in &pairs {
        if a < b {
            if let (Some(x), Some(y)) = (g.get(&(a.clone(), b.clone())), g.get(&(b.clone(), a.clone()))) {
                let s = x + y;
                if !s.is_zero() {
                    report.antisymmetry_violations.push((a.clone(), b.clone(), s));
                }
            }
        }
    }
    for cycle in &patch.ridge_cycles {
        let cells: Vec<&QVec> = cycle.cells.iter().map(|&i| &patch.cells[i]).collect();
        let mut sum = Rat::zero();
        let mut complete = true;
        for i in 0..cells.len() {
            let key = (cells[i].clone(), cells[(i + 1) % cells.len()].clone());
            match g.get(&key) {
                Some(v) => sum += v,
                None => complete = false,
            }
        }
        if !complete {
            continue;
        }
        report.cycles_checked += 1;
        if !sum.is_zero() {
            report
                .cycle_violations
                .push((cells.into_iter().cloned().collect(), sum));
        }
    }
    (report.is_valid(), report)
}

/// Recovers the cell function with `f(base) = base_value` whose increments
/// are `g`.
///
/// Values are propagated along a breadth-first spanning tree and then
/// checked against every entry of `g`.
pub fn integrate_gain(
    patch: &Patch,
    g: &GainAssignment,
    base: &QVec,
    base_value: Rat,
) -> Result<CellFunction> {
    let (ok, report) = check_gain(patch, g);
    if !ok {
        return Err(Error::InvalidGain(Box::new(report)));
    }
    let start = patch
        .cell_index(base)
        .ok_or_else(|| Error::MissingCell(base.to_string()))?;
    let mut values: Vec<Option<Rat>> = vec![None; patch.cells.len()];
    values[start] = Some(base_value);
    let mut queue = VecDeque::from([start]);
    while let Some(a) = queue.pop_front() {
        let fa = values[a].clone().expect("visited");
        for (b, _) in patch.neighbors(a) {
            if values[b].is_none() {
                let step = &g[&(patch.cells[a].clone(), patch.cells[b].clone())];
                values[b] = Some(&fa + step);
                queue.push_back(b);
            }
        }
    }
    let mut f = CellFunction::new();
    for (c, v) in patch.cells.iter().zip(values) {
        f.insert(c.clone(), v.ok_or(Error::DisconnectedPatch)?);
    }
    if &gain_of(&f, patch)? != g {
        return Err(Error::Inconsistency(
            "gain passes every ridge cycle but is not path independent on the patch".into(),
        ));
    }
    Ok(f)
}

/// The gain of `f` with the increments across facets of Venkov vertices in
/// `a2` multiplied by `alpha`. Every Venkov vertex must lie in `a1` or `a2`.
pub fn scaled_gain(
    patch: &Patch,
    f: &CellFunction,
    a1: &[usize],
    a2: &[usize],
    alpha: &Rat,
) -> Result<GainAssignment> {
    let (s1, s2): (BTreeSet<usize>, BTreeSet<usize>) =
        (a1.iter().copied().collect(), a2.iter().copied().collect());
    let mut g = gain_of(f, patch)?;
    for ((a, b), v) in g.iter_mut() {
        let ia = patch.cell_index(a).expect("patch cell");
        let ib = patch.cell_index(b).expect("patch cell");
        let facet = patch.crossing(ia, ib).expect("adjacent cells");
        let pair = patch.table.pair_of[facet];
        if s2.contains(&pair) {
            *v *= alpha;
        } else if !s1.contains(&pair) {
            return Err(Error::InvalidPartition(format!(
                "Venkov vertex {pair} is in neither block"
            )));
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::paratile::build_patch;
    use crate::ratlin::{int, rat};

    #[test]
    fn hexagon_increments_of_height() {
        let patch = build_patch(&catalog::hexagon(), 1).unwrap();
        let f = linear_cell_function(&patch, &QVec::from_ints(&[0, 1]));
        let g = gain_of(&f, &patch).unwrap();
        let o = QVec::zeros(2);
        for (t, want) in [
            (QVec::from_fracs(&[(3, 2), (1, 1)]), int(1)),
            (QVec::from_fracs(&[(-3, 2), (1, 1)]), int(1)),
            (QVec::from_ints(&[0, 2]), int(2)),
        ] {
            assert_eq!(g[&(o.clone(), t.clone())], want);
            assert_eq!(g[&(t, o.clone())], -want);
        }
        let (ok, report) = check_gain(&patch, &g);
        assert!(ok, "{report}");
        assert!(report.cycles_checked > 0);
    }

    #[test]
    fn round_trip() {
        for p in [catalog::square(), catalog::hexagon(), catalog::cube()] {
            let patch = build_patch(&p, 1).unwrap();
            let w = QVec::new((0..p.dim()).map(|i| rat(2 * i as i64 + 1, 3)).collect());
            let f = linear_cell_function(&patch, &w);
            let g = gain_of(&f, &patch).unwrap();
            let back = integrate_gain(&patch, &g, &QVec::zeros(p.dim()), int(0)).unwrap();
            assert_eq!(back, f);
        }
    }

    #[test]
    fn one_sided_perturbation_breaks_antisymmetry() {
        let patch = build_patch(&catalog::hexagon(), 1).unwrap();
        let mut g = gain_of(&linear_cell_function(&patch, &QVec::from_ints(&[1, 3])), &patch).unwrap();
        let key = g.keys().next().unwrap().clone();
        *g.get_mut(&key).unwrap() += int(1);
        let (ok, report) = check_gain(&patch, &g);
        assert!(!ok);
        assert_eq!(report.antisymmetry_violations.len(), 1);
        assert!(matches!(
            integrate_gain(&patch, &g, &QVec::zeros(2), int(0)),
            Err(Error::InvalidGain(_))
        ));
    }

    #[test]
    fn antisymmetric_perturbation_breaks_a_cycle() {
        let patch = build_patch(&catalog::square(), 1).unwrap();
        let mut g = gain_of(&linear_cell_function(&patch, &QVec::from_ints(&[1, 0])), &patch).unwrap();
        let cyc = &patch.ridge_cycles[0].cells;
        let (a, b) = (patch.cells[cyc[0]].clone(), patch.cells[cyc[1]].clone());
        *g.get_mut(&(a.clone(), b.clone())).unwrap() += rat(1, 2);
        *g.get_mut(&(b, a)).unwrap() -= rat(1, 2);
        let (ok, report) = check_gain(&patch, &g);
        assert!(!ok);
        assert!(report.antisymmetry_violations.is_empty());
        assert!(!report.cycle_violations.is_empty());
        assert!(report.cycle_violations.iter().all(|(_, s)| s.clone() == rat(1, 2) || s.clone() == rat(-1, 2)));
    }

    #[test]
    fn square_scaling_integrates() {
        let patch = build_patch(&catalog::square(), 2).unwrap();
        let f = linear_cell_function(&patch, &QVec::from_ints(&[1, 1]));
        let x = patch.table.pair_of[patch.table.facet_with_vector(&QVec::from_ints(&[1, 0])).unwrap()];
        let y = 1 - x;
        let g = scaled_gain(&patch, &f, &[x], &[y], &int(2)).unwrap();
        let h = integrate_gain(&patch, &g, &QVec::zeros(2), int(0)).unwrap();
        assert_eq!(h, linear_cell_function(&patch, &QVec::from_ints(&[1, 2])));
    }

    #[test]
    fn hexagon_cut_fails() {
        let patch = build_patch(&catalog::hexagon(), 1).unwrap();
        let f = linear_cell_function(&patch, &QVec::from_ints(&[1, 3]));
        let g = scaled_gain(&patch, &f, &[0], &[1, 2], &int(2)).unwrap();
        let (ok, report) = check_gain(&patch, &g);
        assert!(!ok);
        assert!(report.antisymmetry_violations.is_empty());
        assert!(!report.cycle_violations.is_empty());
        assert!(scaled_gain(&patch, &f, &[0], &[1], &int(2)).is_err());
    }

    #[test]
    fn missing_cell_value() {
        let patch = build_patch(&catalog::square(), 1).unwrap();
        let mut f = linear_cell_function(&patch, &QVec::from_ints(&[1, 0]));
        f.remove(&QVec::from_ints(&[1, 1]));
        assert!(matches!(gain_of(&f, &patch), Err(Error::MissingCell(_))));
    }
}
