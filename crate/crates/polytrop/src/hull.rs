//! Exact convex hulls in ambient dimension at most 6, with full face
//! lattices.
//!
//! The hull is computed by incremental insertion with exact orientation
//! predicates over a triangulated boundary; coplanar boundary simplices are
//! merged into true facets afterwards, and extreme points are recognized by
//! the rank of their tight facet normals. Lower-dimensional input is first
//! mapped to intrinsic coordinates with respect to the saturated lattice of
//! its affine hull, so normalized volumes downstream are unaffected.

use crate::error::Error;
use crate::lattice::LatticeVector;
use crate::linalg;
use crate::polytope::LatticePolytope;
use crate::Int;
use num::{Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};

pub const MAX_DIM: usize = 6;

/// A simplicial piece of the triangulated boundary.
#[derive(Clone, Debug)]
struct BoundarySimplex {
    verts: Vec<usize>,          // d vertex indices, sorted
    normal: LatticeVector,      // primitive inward normal
    offset: Int,                // normal . x >= offset on the hull
}

/// Inward-primitive hyperplane through the given affinely independent points,
/// oriented so that `inside` is on the strictly positive side.
fn oriented_hyperplane(
    points: &[LatticeVector],
    inside: &LatticeVector,
) -> Option<(LatticeVector, Int)> {
    let d = points[0].dim();
    let normal = if points.len() == 1 {
        debug_assert_eq!(d, 1);
        LatticeVector::unit(1, 0)
    } else {
        let edges: Vec<LatticeVector> = points[1..].iter().map(|p| p.sub(&points[0])).collect();
        let kernel = linalg::integer_kernel(&edges);
        if kernel.len() != 1 {
            return None; // affinely dependent
        }
        kernel.into_iter().next().unwrap()
    };
    let offset = normal.dot(&points[0]);
    let side = normal.dot(inside) - &offset;
    if side.is_zero() {
        return None;
    }
    if side.is_negative() {
        Some((normal.neg(), -offset))
    } else {
        Some((normal, offset))
    }
}

/// Incremental hull of a full-dimensional point set in `Z^d`. Returns the
/// boundary facets merged by hyperplane and the extreme point indices.
fn full_dim_hull(points: &[LatticeVector]) -> (Vec<(LatticeVector, Int, Vec<usize>)>, Vec<usize>) {
    let d = points[0].dim();

    // initial affinely independent d+1 points, scanning in lex order
    let mut simplex: Vec<usize> = vec![0];
    for (i, _) in points.iter().enumerate().skip(1) {
        let chosen: Vec<LatticeVector> = simplex
            .iter()
            .chain(std::iter::once(&i))
            .map(|&k| points[k].clone())
            .collect();
        let edges: Vec<LatticeVector> =
            chosen[1..].iter().map(|p| p.sub(&chosen[0])).collect();
        if linalg::lattice_rank(&edges) == simplex.len() {
            simplex.push(i);
        }
        if simplex.len() == d + 1 {
            break;
        }
    }
    assert_eq!(simplex.len(), d + 1, "input is full dimensional");

    // interior reference: the (rational) centroid scaled to integers
    let interior_ref = {
        let mut sum = LatticeVector::zero(d);
        for &i in &simplex {
            sum = sum.add(&points[i]);
        }
        sum // centroid * (d+1); compare with scaled offsets below
    };
    let scale = Int::from(d as i64 + 1);
    // orientation against the scaled centroid: n . c/(d+1) > o  <=>  n . c > (d+1) o
    let orient = |normal: &LatticeVector, offset: &Int| -> Int {
        normal.dot(&interior_ref) - offset * &scale
    };

    let mut boundary: Vec<BoundarySimplex> = Vec::new();
    for drop in 0..=d {
        let verts: Vec<usize> = simplex
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != drop)
            .map(|(_, &v)| v)
            .collect();
        let pts: Vec<LatticeVector> = verts.iter().map(|&v| points[v].clone()).collect();
        let apex = &points[simplex[drop]];
        let (normal, offset) =
            oriented_hyperplane(&pts, apex).expect("initial simplex facets are non-degenerate");
        debug_assert!(orient(&normal, &offset).is_positive());
        let mut verts = verts;
        verts.sort_unstable();
        boundary.push(BoundarySimplex { verts, normal, offset });
    }

    // insert the remaining points in lex order (the input is sorted)
    let in_simplex: BTreeSet<usize> = simplex.iter().cloned().collect();
    for (i, p) in points.iter().enumerate() {
        if in_simplex.contains(&i) {
            continue;
        }
        let mut visible = Vec::new();
        let mut invisible = Vec::new();
        for (k, f) in boundary.iter().enumerate() {
            let eval = f.normal.dot(p) - &f.offset;
            if eval.is_negative() {
                visible.push(k);
            } else {
                invisible.push(k);
            }
        }
        if visible.is_empty() {
            continue; // inside or on the boundary
        }
        // horizon ridges: ridges of visible simplices not shared with
        // another visible simplex
        let mut ridge_count: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        for &k in &visible {
            let f = &boundary[k];
            for drop in 0..f.verts.len() {
                let mut ridge = f.verts.clone();
                ridge.remove(drop);
                *ridge_count.entry(ridge).or_insert(0) += 1;
            }
        }
        let mut new_facets = Vec::new();
        for (ridge, count) in ridge_count {
            if count != 1 {
                continue;
            }
            let mut verts = ridge.clone();
            verts.push(i);
            verts.sort_unstable();
            let pts: Vec<LatticeVector> = verts.iter().map(|&v| points[v].clone()).collect();
            let Some((mut normal, mut offset)) = hyperplane_through(&pts) else {
                unreachable!("horizon ridge with the new apex is non-degenerate");
            };
            // orient against the centroid reference, which stays strictly
            // interior to the growing hull
            let o = orient(&normal, &offset);
            debug_assert!(!o.is_zero(), "interior reference on a facet");
            if o.is_negative() {
                normal = normal.neg();
                offset = -offset;
            }
            new_facets.push(BoundarySimplex { verts, normal, offset });
        }
        let mut next: Vec<BoundarySimplex> = invisible
            .into_iter()
            .map(|k| boundary[k].clone())
            .collect();
        next.extend(new_facets);
        boundary = next;
    }

    // merge coplanar boundary simplices into facets
    let mut merged: BTreeMap<(LatticeVector, Int), BTreeSet<usize>> = BTreeMap::new();
    for f in &boundary {
        merged
            .entry((f.normal.clone(), f.offset.clone()))
            .or_default()
            .extend(f.verts.iter().cloned());
    }

    // facet supports: every input point on the hyperplane belongs to the facet
    let mut facets: Vec<(LatticeVector, Int, Vec<usize>)> = Vec::new();
    for ((normal, offset), _) in merged {
        let mut on: Vec<usize> = Vec::new();
        for (i, p) in points.iter().enumerate() {
            if normal.dot(p) == offset {
                on.push(i);
            }
        }
        facets.push((normal, offset, on));
    }
    facets.sort_by(|a, b| (&a.0, &a.1).cmp(&(&b.0, &b.1)));

    // extreme points: tight facet normals of full rank
    let mut extreme = Vec::new();
    for (i, _) in points.iter().enumerate() {
        let tight: Vec<LatticeVector> = facets
            .iter()
            .filter(|(_, _, on)| on.binary_search(&i).is_ok())
            .map(|(n, _, _)| n.clone())
            .collect();
        if linalg::lattice_rank(&tight) == d {
            extreme.push(i);
        }
    }
    (facets, extreme)
}

/// Hyperplane through `d` affinely independent points of `Z^d`
/// (unoriented).
fn hyperplane_through(points: &[LatticeVector]) -> Option<(LatticeVector, Int)> {
    let d = points[0].dim();
    if points.len() < d {
        return None;
    }
    let base = &points[0];
    let edges: Vec<LatticeVector> = points[1..].iter().map(|p| p.sub(base)).collect();
    let kernel = linalg::integer_kernel(&edges);
    if d == 1 {
        return Some((LatticeVector::unit(1, 0), base.coord(0).clone()));
    }
    if kernel.len() != 1 {
        return None;
    }
    let normal = kernel.into_iter().next().unwrap();
    let offset = normal.dot(base);
    Some((normal, offset))
}

/// Convex hull of a nonempty set of lattice points, with vertex set, facet
/// inequalities, affine-hull equations and the full face lattice.
pub fn convex_hull(input: &[LatticeVector]) -> Result<LatticePolytope, Error> {
    let ambient = input.first().map_or(0, |p| p.dim());
    if ambient > MAX_DIM {
        return Err(Error::UnsupportedDimension(ambient));
    }
    convex_hull_unrestricted(input)
}

/// Hull without the ambient dimension cap; used internally for lifted point
/// sets one dimension up.
pub(crate) fn convex_hull_unrestricted(input: &[LatticeVector]) -> Result<LatticePolytope, Error> {
    if input.is_empty() {
        return Err(Error::invalid("convex hull of an empty set"));
    }
    let ambient = input[0].dim();
    for p in input {
        if p.dim() != ambient {
            return Err(Error::DimensionMismatch {
                expected: ambient,
                got: p.dim(),
            });
        }
    }
    let mut points: Vec<LatticeVector> = input.to_vec();
    points.sort_unstable();
    points.dedup();

    let p0 = points[0].clone();
    let edges: Vec<LatticeVector> = points[1..].iter().map(|p| p.sub(&p0)).collect();
    let basis = linalg::saturation_basis(&edges);
    let d = basis.len();

    if d == 0 {
        // a single point
        let equations = affine_equations(&p0, &[]);
        return Ok(LatticePolytope::from_parts(
            ambient,
            0,
            vec![p0],
            Vec::new(),
            equations,
        ));
    }

    // intrinsic integer coordinates of each point
    let mut intrinsic = Vec::with_capacity(points.len());
    for p in &points {
        let c = linalg::coordinates_in_basis(&basis, &p.sub(&p0).to_rat())
            .expect("points lie in their own affine hull");
        let v = c
            .to_lattice()
            .expect("saturated basis gives integral coordinates");
        intrinsic.push(v);
    }

    let (facets_int, extreme) = full_dim_hull(&intrinsic);

    // map back to ambient coordinates
    let vertices: Vec<LatticeVector> = extreme.iter().map(|&i| points[i].clone()).collect();
    let vertex_index: BTreeMap<LatticeVector, usize> = vertices
        .iter()
        .enumerate()
        .map(|(i, v)| (v.clone(), i))
        .collect();

    let mut facets = Vec::new();
    for (normal_int, offset_int, on) in &facets_int {
        let (normal, offset) = ambient_inequality(&basis, &p0, normal_int, offset_int, ambient);
        let mut verts: Vec<usize> = on
            .iter()
            .filter_map(|&i| vertex_index.get(&points[i]).cloned())
            .collect();
        verts.sort_unstable();
        facets.push((normal, offset, verts));
    }
    facets.sort_by(|a, b| (&a.0, &a.1).cmp(&(&b.0, &b.1)));

    let equations = affine_equations(&p0, &edges);

    Ok(LatticePolytope::from_parts(
        ambient, d, vertices, facets, equations,
    ))
}

/// Lifts an intrinsic facet inequality `n . y >= o` back to ambient
/// coordinates: find an integer `N` with `N . (p0 + B y) = n . y + N . p0`.
fn ambient_inequality(
    basis: &[LatticeVector],
    p0: &LatticeVector,
    normal_int: &LatticeVector,
    offset_int: &Int,
    ambient: usize,
) -> (LatticeVector, Int) {
    use crate::lattice::RatVector;
    use crate::Rat;
    // solve B^T N = n over Q, then clear denominators
    let rows: Vec<RatVector> = basis.iter().map(|b| b.to_rat()).collect();
    let a = linalg::RatMatrix::from_rows(&rows); // rows are basis vectors; (A N)_i = b_i . N
    let b = RatVector::new(
        normal_int
            .coords()
            .iter()
            .map(|c| Rat::from_integer(c.clone()))
            .collect(),
    );
    let n = linalg::solve(&a, &b).expect("basis pairing is solvable");
    let (mut nv, m) = n.clear_denominators();
    let mut off = offset_int * &m + nv.dot(p0);
    // canonical sign/scale: divide by the gcd of all entries
    let mut all = nv.coords().to_vec();
    all.push(off.clone());
    let g = crate::lattice::gcd_all(&all);
    if g > Int::from(1) {
        nv = LatticeVector::new(nv.coords().iter().map(|c| c / &g).collect());
        off = off / &g;
    }
    debug_assert_eq!(nv.dim(), ambient);
    (nv, off)
}

/// Integer equations of the affine hull of `p0 + span(edges)`.
fn affine_equations(
    p0: &LatticeVector,
    edges: &[LatticeVector],
) -> Vec<(LatticeVector, Int)> {
    let n = p0.dim();
    let normals = if edges.is_empty() {
        (0..n).map(|i| LatticeVector::unit(n, i)).collect()
    } else {
        linalg::integer_kernel(edges)
    };
    let mut out: Vec<(LatticeVector, Int)> = normals
        .into_iter()
        .map(|w| {
            let off = w.dot(p0);
            (w, off)
        })
        .collect();
    out.sort();
    out
}
