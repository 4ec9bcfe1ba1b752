//! The Venkov graph of a parallelohedron and the red-connectivity test for
//! reducibility.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::error::Result;
use crate::paratile::{antipodal_pairs, require_parallelohedron, Belt};
use crate::polytope::Polytope;
use crate::ratlin::QVec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Color {
    Red,
    Blue,
}

/// Vertices are antipodal facet pairs. A red edge joins two pairs lying in
/// a common 6-belt; a blue edge joins the two pairs forming a 4-belt.
/// Edges are sets, so several belts inducing the same edge collapse to one
/// edge with several entries in `provenance`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VenkovGraph {
    /// Facet pair of each vertex, sorted by smaller facet id.
    pub pairs: Vec<(usize, usize)>,
    /// Canonical normal shared by the two facets of each pair.
    pub labels: Vec<QVec>,
    pub red_edges: BTreeSet<(usize, usize)>,
    pub blue_edges: BTreeSet<(usize, usize)>,
    /// Belt indices responsible for each edge.
    pub provenance: BTreeMap<(Color, usize, usize), Vec<usize>>,
}

fn ordered(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Union-find over `0..n` with union by size and path halving.
struct Dsu {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
    }
}

impl VenkovGraph {
    /// Assembles the graph from facet pairs and belts (belt facet ids refer
    /// to the same facet numbering as `pairs`).
    pub fn from_belts(pairs: Vec<(usize, usize)>, labels: Vec<QVec>, belts: &[Belt]) -> Self {
        let mut pair_of = BTreeMap::new();
        for (k, &(a, b)) in pairs.iter().enumerate() {
            pair_of.insert(a, k);
            pair_of.insert(b, k);
        }
        let mut g = VenkovGraph {
            pairs,
            labels,
            red_edges: BTreeSet::new(),
            blue_edges: BTreeSet::new(),
            provenance: BTreeMap::new(),
        };
        for (bi, belt) in belts.iter().enumerate() {
            let vs: Vec<usize> = belt
                .facet_ids
                .iter()
                .map(|f| pair_of[f])
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect();
            let color = match vs.len() {
                3 => Color::Red,
                2 => Color::Blue,
                _ => continue,
            };
            for i in 0..vs.len() {
                for j in i + 1..vs.len() {
                    let e = ordered(vs[i], vs[j]);
                    match color {
                        Color::Red => g.red_edges.insert(e),
                        Color::Blue => g.blue_edges.insert(e),
                    };
                    g.provenance.entry((color, e.0, e.1)).or_default().push(bi);
                }
            }
        }
        g
    }

    pub fn vertex_count(&self) -> usize {
        self.pairs.len()
    }

    pub fn edges(&self, color: Color) -> &BTreeSet<(usize, usize)> {
        match color {
            Color::Red => &self.red_edges,
            Color::Blue => &self.blue_edges,
        }
    }

    fn components_of(&self, edges: impl Iterator<Item = (usize, usize)>) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut dsu = Dsu::new(n);
        for (a, b) in edges {
            dsu.union(a, b);
        }
        let mut by_root: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for v in 0..n {
            let r = dsu.find(v);
            by_root.entry(r).or_default().push(v);
        }
        let mut comps: Vec<Vec<usize>> = by_root.into_values().collect();
        comps.sort_by_key(|c| c[0]);
        comps
    }

    /// Connected components of the red subgraph, each sorted, ordered by
    /// smallest vertex.
    pub fn red_components(&self) -> Vec<Vec<usize>> {
        self.components_of(self.red_edges.iter().copied())
    }

    /// Components of the whole graph (red and blue edges).
    pub fn components(&self) -> Vec<Vec<usize>> {
        self.components_of(self.red_edges.iter().chain(&self.blue_edges).copied())
    }

    /// `vertices=<n> red=<r> blue=<b> red_components=<k>`
    pub fn summary(&self) -> String {
        format!(
            "vertices={} red={} blue={} red_components={}",
            self.vertex_count(),
            self.red_edges.len(),
            self.blue_edges.len(),
            self.red_components().len()
        )
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph venkov {\n");
        for (v, label) in self.labels.iter().enumerate() {
            let _ = writeln!(s, "  {v} [label=\"{label}\"];");
        }
        for (color, name) in [(Color::Red, "red"), (Color::Blue, "blue")] {
            for (a, b) in self.edges(color) {
                let _ = writeln!(s, "  {a} -- {b} [color={name}];");
            }
        }
        s.push_str("}\n");
        s
    }
}

/// Venkov graph of a verified parallelohedron; other inputs are rejected
/// with their Minkowski–Venkov report.
pub fn venkov_graph(p: &Polytope) -> Result<VenkovGraph> {
    let report = require_parallelohedron(p)?;
    let pairs = antipodal_pairs(p)?;
    let labels = pairs.iter().map(|&(a, _)| p.facet(a).normal.clone()).collect();
    Ok(VenkovGraph::from_belts(pairs, labels, &report.belts))
}

pub fn red_components(g: &VenkovGraph) -> Vec<Vec<usize>> {
    g.red_components()
}

/// A parallelohedron is a direct product of lower-dimensional ones exactly
/// when its red graph is disconnected.
pub fn is_reducible(p: &Polytope) -> Result<bool> {
    Ok(venkov_graph(p)?.red_components().len() >= 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::error::Error;

    fn set(edges: &[(usize, usize)]) -> BTreeSet<(usize, usize)> {
        edges.iter().copied().collect()
    }

    #[test]
    fn cube_graph_is_a_blue_triangle() {
        let g = venkov_graph(&catalog::cube()).unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert!(g.red_edges.is_empty());
        assert_eq!(g.blue_edges, set(&[(0, 1), (0, 2), (1, 2)]));
        assert_eq!(g.red_components(), vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn hexagon_graph_is_a_red_triangle() {
        let g = venkov_graph(&catalog::hexagon()).unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.red_edges, set(&[(0, 1), (0, 2), (1, 2)]));
        assert!(g.blue_edges.is_empty());
        assert!(!is_reducible(&catalog::hexagon()).unwrap());
    }

    #[test]
    fn hexagonal_prism_graph() {
        let p = catalog::hexagonal_prism();
        let g = venkov_graph(&p).unwrap();
        assert_eq!(g.vertex_count(), 4);
        let cap = g
            .labels
            .iter()
            .position(|l| *l == QVec::from_ints(&[0, 0, 1]))
            .unwrap();
        let sides: Vec<usize> = (0..4).filter(|&v| v != cap).collect();
        assert_eq!(g.red_edges, set(&[(sides[0], sides[1]), (sides[0], sides[2]), (sides[1], sides[2])]));
        let blue: BTreeSet<_> = sides.iter().map(|&s| ordered(s, cap)).collect();
        assert_eq!(g.blue_edges, blue);
        let comps = g.red_components();
        assert_eq!(comps.len(), 2);
        assert!(comps.contains(&sides) && comps.contains(&vec![cap]));
    }

    #[test]
    fn rhombic_dodecahedron_is_red_connected() {
        let g = venkov_graph(&catalog::rhombic_dodecahedron()).unwrap();
        assert_eq!(g.summary(), "vertices=6 red=12 blue=0 red_components=1");
        // four red triangles, each its own belt
        assert_eq!(g.provenance.len(), 12);
    }

    #[test]
    fn reducibility_examples() {
        assert!(is_reducible(&catalog::square()).unwrap());
        assert!(!is_reducible(&catalog::truncated_octahedron()).unwrap());
        assert!(!is_reducible(&catalog::segment()).unwrap());
    }

    #[test]
    fn non_parallelohedron_is_rejected_with_report() {
        match venkov_graph(&catalog::octagon()) {
            Err(Error::NotParallelohedron(r)) => assert_eq!(r.belt_length_violations, vec![(0, 8)]),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn whole_graph_connected_on_catalog() {
        for p in catalog::parallelohedra() {
            let g = venkov_graph(&p).unwrap();
            assert_eq!(g.components().len(), 1, "{:?}", p.name);
        }
    }

    #[test]
    fn dot_export() {
        let dot = venkov_graph(&catalog::square()).unwrap().to_dot();
        assert_eq!(
            dot,
            "graph venkov {\n  0 [label=\"(0,1)\"];\n  1 [label=\"(1,0)\"];\n  0 -- 1 [color=blue];\n}\n"
        );
    }
}
