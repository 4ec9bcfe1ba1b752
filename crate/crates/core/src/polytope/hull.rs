//! Incremental convex hull (beneath–beyond / double description) over the
//! integers, and vertex enumeration for bounded halfspace systems.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ratlin::{QMat, QVec, Rat};

/// `a · x <= b` with `a` primitive.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Halfspace {
    a: Vec<BigInt>,
    b: BigInt,
}

impl Halfspace {
    fn eval(&self, x: &[BigInt]) -> BigInt {
        let mut s = -self.b.clone();
        for (a, x) in self.a.iter().zip(x) {
            if !a.is_zero() {
                s += a * x;
            }
        }
        s
    }
}

fn int_dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn int_to_qvec(v: &[BigInt]) -> QVec {
    QVec::new(v.iter().cloned().map(Rat::from_integer).collect())
}

fn int_rank(points: &[&Vec<BigInt>]) -> isize {
    let refs: Vec<QVec> = points.iter().map(|p| int_to_qvec(p)).collect();
    let r: Vec<&QVec> = refs.iter().collect();
    crate::ratlin::affine_rank(&r)
}

/// Hyperplane through `points` (affine rank `d - 1`), oriented so that
/// `interior / weight` lies strictly on the negative side.
fn hyperplane_through(points: &[&Vec<BigInt>], interior: &[BigInt], weight: &BigInt) -> Halfspace {
    let d = interior.len();
    let p0 = points[0];
    let diffs: Vec<QVec> = points[1..]
        .iter()
        .map(|p| int_to_qvec(&p.iter().zip(p0).map(|(a, b)| a - b).collect::<Vec<_>>()))
        .collect();
    let ns = QMat::new(d, diffs).expect("uniform dimension").nullspace();
    debug_assert_eq!(ns.len(), 1, "points do not span a hyperplane");
    let n = ns[0].primitive().expect("nonzero normal");
    let mut a: Vec<BigInt> = n.iter().map(|x| x.to_integer()).collect();
    let mut b = int_dot(&a, p0);
    if int_dot(&a, interior) > &b * weight {
        a.iter_mut().for_each(|x| *x = -x.clone());
        b = -b;
    }
    Halfspace { a, b }
}

/// Output of [`convex_hull`]: indices of the extreme input points and the
/// facet inequalities `outward · x <= offset`.
pub(crate) struct Hull {
    pub vertices: Vec<usize>,
    pub facets: Vec<(QVec, Rat)>,
}

/// Exact convex hull of a full-dimensional point set.
pub(crate) fn convex_hull(points: &[QVec]) -> Result<Hull> {
    let Some(first) = points.first() else {
        return Err(Error::NotFullDimensional {
            affine_dim: -1,
            ambient_dim: 0,
        });
    };
    let d = first.dim();
    if let Some(bad) = points.iter().find(|p| p.dim() != d) {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: bad.dim(),
        });
    }
    let scale = points
        .iter()
        .fold(BigInt::one(), |acc, p| acc.lcm(&p.denominator_lcm()));
    let ints: Vec<Vec<BigInt>> = points.iter().map(|p| p.to_integers(&scale)).collect();
    let scale_r = Rat::from_integer(scale);

    let not_full = |affine_dim| Error::NotFullDimensional {
        affine_dim,
        ambient_dim: d,
    };
    if d == 0 {
        return Err(not_full(0));
    }

    // Greedy initial simplex.
    let mut simplex: Vec<usize> = vec![0];
    for (i, _) in ints.iter().enumerate().skip(1) {
        if simplex.len() == d + 1 {
            break;
        }
        let mut cand: Vec<&Vec<BigInt>> = simplex.iter().map(|&j| &ints[j]).collect();
        cand.push(&ints[i]);
        if int_rank(&cand) as usize == simplex.len() {
            simplex.push(i);
        }
    }
    if simplex.len() < d + 1 {
        return Err(not_full(simplex.len() as isize - 1));
    }

    let weight = BigInt::from(d + 1);
    let interior: Vec<BigInt> = (0..d)
        .map(|k| simplex.iter().map(|&j| &ints[j][k]).sum())
        .collect();

    let mut facets: Vec<Halfspace> = (0..=d)
        .map(|skip| {
            let pts: Vec<&Vec<BigInt>> = simplex
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != skip)
                .map(|(_, &j)| &ints[j])
                .collect();
            if d == 1 {
                // The facet is a single point; orient by the interior.
                let a = vec![if &pts[0][0] * &weight > interior[0] {
                    BigInt::one()
                } else {
                    -BigInt::one()
                }];
                let b = &a[0] * &pts[0][0];
                Halfspace { a, b }
            } else {
                hyperplane_through(&pts, &interior, &weight)
            }
        })
        .collect();

    let mut inserted: Vec<usize> = simplex.clone();
    let in_simplex: BTreeSet<usize> = simplex.iter().copied().collect();
    for (i, p) in ints.iter().enumerate() {
        if in_simplex.contains(&i) {
            continue;
        }
        let visible: Vec<bool> = facets.iter().map(|f| f.eval(p).is_positive()).collect();
        if !visible.iter().any(|&v| v) {
            inserted.push(i);
            continue;
        }
        let mut new_facets: BTreeSet<Halfspace> = BTreeSet::new();
        let kept: BTreeSet<Halfspace> = facets
            .iter()
            .zip(&visible)
            .filter(|(_, &v)| !v)
            .map(|(f, _)| f.clone())
            .collect();
        if d == 1 {
            let a = vec![if &p[0] * &weight > interior[0] {
                BigInt::one()
            } else {
                -BigInt::one()
            }];
            let b = &a[0] * &p[0];
            new_facets.insert(Halfspace { a, b });
        } else {
            let on: Vec<Vec<usize>> = facets
                .iter()
                .map(|f| {
                    inserted
                        .iter()
                        .copied()
                        .filter(|&j| f.eval(&ints[j]).is_zero())
                        .collect()
                })
                .collect();
            for (fi, f_on) in on.iter().enumerate() {
                if !visible[fi] {
                    continue;
                }
                for (gi, g_on) in on.iter().enumerate() {
                    if visible[gi] {
                        continue;
                    }
                    let shared: Vec<&Vec<BigInt>> = f_on
                        .iter()
                        .filter(|j| g_on.contains(j))
                        .map(|&j| &ints[j])
                        .collect();
                    if shared.len() < d - 1 || int_rank(&shared) != d as isize - 2 {
                        continue;
                    }
                    let mut pts = shared;
                    pts.push(p);
                    let h = hyperplane_through(&pts, &interior, &weight);
                    if !kept.contains(&h) {
                        new_facets.insert(h);
                    }
                }
            }
        }
        facets = kept.into_iter().chain(new_facets).collect();
        inserted.push(i);
    }

    // A point is a vertex iff the normals of the facets through it span R^d.
    let mut vertices = Vec::new();
    let mut seen: BTreeMap<&Vec<BigInt>, ()> = BTreeMap::new();
    for (i, p) in ints.iter().enumerate() {
        if seen.insert(p, ()).is_some() {
            continue;
        }
        let normals: Vec<QVec> = facets
            .iter()
            .filter(|f| f.eval(p).is_zero())
            .map(|f| int_to_qvec(&f.a))
            .collect();
        if normals.len() >= d && QMat::new(d, normals).unwrap().rank() == d {
            vertices.push(i);
        }
    }
    let facets = facets
        .into_iter()
        .map(|f| (int_to_qvec(&f.a), Rat::from_integer(f.b) / &scale_r))
        .collect();
    Ok(Hull { vertices, facets })
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Vertices of the bounded polyhedron `{x : a_i · x <= b_i}` by brute-force
/// enumeration of `d`-subsets of tight constraints.
pub(crate) fn enumerate_vertices(halfspaces: &[(QVec, Rat)], d: usize) -> Vec<QVec> {
    let mut found: BTreeSet<QVec> = BTreeSet::new();
    for subset in combinations(halfspaces.len(), d) {
        let a = QMat::new(d, subset.iter().map(|&i| halfspaces[i].0.clone()).collect())
            .expect("uniform dimension");
        let Some(inv) = a.inverse() else { continue };
        let b = QVec::new(subset.iter().map(|&i| halfspaces[i].1.clone()).collect());
        let x = inv.apply(&b);
        if halfspaces.iter().all(|(n, o)| n.dot(&x) <= *o) {
            found.insert(x);
        }
    }
    found.into_iter().collect()
}
