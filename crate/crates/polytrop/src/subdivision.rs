//! Lattice subdivisions of polytopes: unimodularity and regularity checkers,
//! constructive unimodular triangulations (staircase and alcove),
//! breakability search, and exhaustive enumeration in dimension two.
//!
//! A subdivision is stored as a list of allowed lattice points of the
//! ambient polytope together with maximal cells given as point-index sets.
//! Cells need not list every lattice point of their convex hull, so the
//! one-cell "vertex simplex" of a dilated simplex and the trivial
//! subdivision using all points are different values. A lifting, when
//! present, is checked to induce the subdivision as the lower faces of the
//! lifted point set; this is never assumed.

use crate::dualcomplex::HRep;
use crate::error::Error;
use crate::hull::{convex_hull, convex_hull_unrestricted};
use crate::lattice::{normalized_volume, LatticeVector, RatVector};
use crate::linalg;
use crate::lp::{lp_strict_feasible, Constraint};
use crate::polytope::{dilated_simplex, LatticePolytope};
use crate::{Int, Rat};
use num::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rayon::prelude::*;
use std::collections::{BTreeMap, BTreeSet};

/// A polyhedral lattice subdivision of a polytope, optionally with a height
/// function certifying regularity.
#[derive(Clone, Debug)]
pub struct Subdivision {
    ambient: LatticePolytope,
    points: Vec<LatticeVector>,
    cells: Vec<Vec<usize>>,
    lifting: Option<Vec<Rat>>,
    cell_hulls: Vec<LatticePolytope>,
}

/// Verdict of the unimodularity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UnimodularVerdict {
    Unimodular,
    Offending { cell: usize, volume: Int },
}

impl UnimodularVerdict {
    pub fn is_unimodular(&self) -> bool {
        matches!(self, UnimodularVerdict::Unimodular)
    }
}

impl Subdivision {
    /// Builds and fully validates a subdivision: cells are full-dimensional,
    /// their volumes sum to the ambient volume (so they tile), every pair
    /// meets face-to-face, and a supplied lifting induces the subdivision.
    pub fn new(
        ambient: LatticePolytope,
        points: Vec<LatticeVector>,
        cells: Vec<Vec<usize>>,
        lifting: Option<Vec<Rat>>,
    ) -> Result<Self, Error> {
        let s = Self::assemble(ambient, points, cells, lifting)?;
        s.validate()?;
        Ok(s)
    }

    /// Assembles without the expensive geometric validation; used by
    /// constructions that guarantee validity. Canonicalizes point and cell
    /// order.
    pub(crate) fn assemble(
        ambient: LatticePolytope,
        mut points: Vec<LatticeVector>,
        cells: Vec<Vec<usize>>,
        lifting: Option<Vec<Rat>>,
    ) -> Result<Self, Error> {
        let perm: Vec<usize> = {
            let mut idx: Vec<usize> = (0..points.len()).collect();
            idx.sort_by(|&a, &b| points[a].cmp(&points[b]));
            idx
        };
        let sorted: Vec<LatticeVector> = perm.iter().map(|&i| points[i].clone()).collect();
        let mut inv = vec![0usize; points.len()];
        for (new, &old) in perm.iter().enumerate() {
            inv[old] = new;
        }
        let lifting = lifting.map(|h| {
            let mut out = vec![Rat::zero(); h.len()];
            for (old, v) in h.into_iter().enumerate() {
                out[inv[old]] = v;
            }
            out
        });
        let mut new_cells: Vec<Vec<usize>> = cells
            .into_iter()
            .map(|c| {
                let mut c: Vec<usize> = c.into_iter().map(|i| inv[i]).collect();
                c.sort_unstable();
                c.dedup();
                c
            })
            .collect();
        new_cells.sort();
        new_cells.dedup();
        points = sorted;

        for p in &points {
            if p.dim() != ambient.ambient_dim() {
                return Err(Error::DimensionMismatch {
                    expected: ambient.ambient_dim(),
                    got: p.dim(),
                });
            }
            if !ambient.contains_lattice(p) {
                return Err(Error::invalid("subdivision point outside the ambient polytope"));
            }
        }
        if let Some(h) = &lifting {
            if h.len() != points.len() {
                return Err(Error::invalid("lifting length does not match point count"));
            }
        }
        for c in &new_cells {
            if c.iter().any(|&i| i >= points.len()) {
                return Err(Error::invalid("cell references a missing point"));
            }
        }

        let cell_hulls: Vec<LatticePolytope> = new_cells
            .iter()
            .map(|c| {
                let pts: Vec<LatticeVector> = c.iter().map(|&i| points[i].clone()).collect();
                convex_hull(&pts)
            })
            .collect::<Result<_, _>>()?;

        Ok(Subdivision {
            ambient,
            points,
            cells: new_cells,
            lifting,
            cell_hulls,
        })
    }

    pub fn ambient(&self) -> &LatticePolytope {
        &self.ambient
    }

    pub fn points(&self) -> &[LatticeVector] {
        &self.points
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub fn lifting(&self) -> Option<&[Rat]> {
        self.lifting.as_deref()
    }

    pub fn with_lifting(mut self, lifting: Option<Vec<Rat>>) -> Self {
        self.lifting = lifting;
        self
    }

    pub(crate) fn cell_hull(&self, i: usize) -> &LatticePolytope {
        &self.cell_hulls[i]
    }

    /// Points used by at least one cell, in canonical order.
    pub fn used_points(&self) -> Vec<LatticeVector> {
        let mut used: BTreeSet<usize> = BTreeSet::new();
        for c in &self.cells {
            used.extend(c.iter().cloned());
        }
        used.into_iter().map(|i| self.points[i].clone()).collect()
    }

    /// Indices of points not used by any cell.
    pub fn unused_point_indices(&self) -> Vec<usize> {
        let mut used = vec![false; self.points.len()];
        for c in &self.cells {
            for &i in c {
                used[i] = true;
            }
        }
        (0..self.points.len()).filter(|&i| !used[i]).collect()
    }

    /// All point indices lying in the convex hull of the given set.
    pub(crate) fn close_point_set(&self, set: &[usize]) -> Vec<usize> {
        let pts: Vec<LatticeVector> = set.iter().map(|&i| self.points[i].clone()).collect();
        let hull = convex_hull(&pts).expect("closure hull");
        let mut out: Vec<usize> = (0..self.points.len())
            .filter(|&i| hull.contains_lattice(&self.points[i]))
            .collect();
        out.sort_unstable();
        out
    }

    /// The geometric cells as sorted hull-vertex sets; two subdivisions with
    /// equal keys are the same geometric subdivision.
    pub fn canonical_key(&self) -> Vec<Vec<LatticeVector>> {
        let mut key: Vec<Vec<LatticeVector>> = self
            .cell_hulls
            .iter()
            .map(|h| h.vertices().to_vec())
            .collect();
        key.sort();
        key
    }

    pub fn normalized_cell_volume(&self, i: usize) -> Int {
        let cell = &self.cells[i];
        let d = self.ambient.dim();
        if cell.len() == d + 1 {
            let pts: Vec<LatticeVector> = cell.iter().map(|&i| self.points[i].clone()).collect();
            return normalized_volume(&pts);
        }
        self.cell_hulls[i].total_normalized_volume()
    }

    /// Full structural validation: full-dimensional cells, exact tiling by
    /// the volume argument, pairwise face-to-face intersections, and the
    /// lifting (if any) inducing the subdivision.
    pub fn validate(&self) -> Result<(), Error> {
        if self.cells.is_empty() {
            return Err(Error::invalid("subdivision has no cells"));
        }
        let d = self.ambient.dim();
        let mut vol = Int::zero();
        for (i, hull) in self.cell_hulls.iter().enumerate() {
            if hull.dim() != d {
                return Err(Error::invalid(format!(
                    "cell {i} is not full-dimensional in the ambient polytope"
                )));
            }
            vol += self.normalized_cell_volume(i);
        }
        if vol != self.ambient.total_normalized_volume() {
            return Err(Error::invalid(format!(
                "cell volumes sum to {vol}, expected {}",
                self.ambient.total_normalized_volume()
            )));
        }
        for i in 0..self.cells.len() {
            for j in (i + 1)..self.cells.len() {
                if !hulls_meet_face_to_face(&self.cell_hulls[i], &self.cell_hulls[j]) {
                    return Err(Error::invalid(format!(
                        "cells {i} and {j} do not meet in a common face"
                    )));
                }
            }
        }
        if self.lifting.is_some() {
            self.check_lifting_induces()?;
        }
        Ok(())
    }

    /// Checks that the stored lifting induces exactly this subdivision as
    /// the lower faces of the lifted point set.
    pub fn check_lifting_induces(&self) -> Result<(), Error> {
        let h = self.lifting.as_ref().ok_or(Error::MissingLifting)?;
        let induced = induced_subdivision(&self.ambient, &self.points, h)?;
        if induced.canonical_key() == self.canonical_key() {
            Ok(())
        } else {
            Err(Error::InvalidLifting)
        }
    }

    /// Unimodularity: every maximal cell is a lattice simplex of normalized
    /// volume one. Non-simplicial input is an error, not a negative verdict.
    pub fn is_unimodular(&self) -> Result<UnimodularVerdict, Error> {
        let d = self.ambient.dim();
        for (i, c) in self.cells.iter().enumerate() {
            let pts: Vec<LatticeVector> = c.iter().map(|&k| self.points[k].clone()).collect();
            if c.len() != d + 1 || normalized_volume(&pts).is_zero() {
                return Err(Error::NotATriangulation(i));
            }
        }
        for (i, c) in self.cells.iter().enumerate() {
            let pts: Vec<LatticeVector> = c.iter().map(|&k| self.points[k].clone()).collect();
            let v = normalized_volume(&pts);
            if !v.is_one() {
                return Ok(UnimodularVerdict::Offending { cell: i, volume: v });
            }
        }
        Ok(UnimodularVerdict::Unimodular)
    }

    /// Regularity: searches for a height function whose lower faces induce
    /// exactly this subdivision. Strict convexity is required across every
    /// interior wall, and points used by no cell must lift strictly above
    /// the lower hull. The witness is verified by recomputing the induced
    /// subdivision before it is returned.
    pub fn is_regular(&self) -> Option<Vec<Rat>> {
        let nv = self.points.len();
        let d = self.ambient.dim();

        // affine basis (d+1 affinely independent points) per cell
        let mut bases: Vec<Vec<usize>> = Vec::with_capacity(self.cells.len());
        for c in &self.cells {
            let mut basis: Vec<usize> = Vec::new();
            for &i in c {
                let mut pts: Vec<RatVector> =
                    basis.iter().map(|&k| self.points[k].to_rat()).collect();
                pts.push(self.points[i].to_rat());
                if linalg::affine_rank(&pts) == pts.len() - 1 {
                    basis.push(i);
                }
                if basis.len() == d + 1 {
                    break;
                }
            }
            debug_assert_eq!(basis.len(), d + 1, "cells are full-dimensional");
            bases.push(basis);
        }

        let mut weak: Vec<Constraint> = Vec::new();
        let mut strict: Vec<Constraint> = Vec::new();

        // the affine function of cell `ci` evaluated at point `q`, as a row
        // over the height variables
        let eval_row = |ci: usize, q: usize| -> Option<Vec<Rat>> {
            let basis = &bases[ci];
            let pts: Vec<RatVector> = basis.iter().map(|&k| self.points[k].to_rat()).collect();
            let coeffs = linalg::affine_coordinates(&pts, &self.points[q].to_rat())?;
            let mut row = vec![Rat::zero(); nv];
            for (j, &b) in basis.iter().enumerate() {
                row[b] = coeffs.coord(j).clone();
            }
            Some(row)
        };

        // cell planarity: every non-basis point of a cell lies on the
        // cell's affine function
        for (ci, c) in self.cells.iter().enumerate() {
            for &q in c {
                if bases[ci].contains(&q) {
                    continue;
                }
                let row = eval_row(ci, q).expect("cell point is in the cell's affine hull");
                let mut diff = row;
                diff[q] -= Rat::one();
                // sum(diff . h) = g_ci(q) - h_q = 0, as two weak constraints
                let v = RatVector::new(diff);
                weak.push(Constraint::new(v.clone(), Rat::zero()));
                weak.push(Constraint::new(v.scale(&-Rat::one()), Rat::zero()));
            }
        }

        // wall strictness between adjacent cells: h_q > g_A(q) for one
        // point q of B off the wall
        for i in 0..self.cells.len() {
            for j in (i + 1)..self.cells.len() {
                let shared: Vec<usize> = self.cells[i]
                    .iter()
                    .filter(|x| self.cells[j].binary_search(x).is_ok())
                    .cloned()
                    .collect();
                let shared_pts: Vec<RatVector> =
                    shared.iter().map(|&k| self.points[k].to_rat()).collect();
                if shared.is_empty() || linalg::affine_rank(&shared_pts) != d - 1 {
                    continue;
                }
                // a point of cell j off the wall
                let q = *self.cells[j]
                    .iter()
                    .find(|&&q| {
                        let mut pts = shared_pts.clone();
                        pts.push(self.points[q].to_rat());
                        linalg::affine_rank(&pts) == d
                    })
                    .expect("full-dimensional cell has a point off the wall");
                let row = match eval_row(i, q) {
                    Some(r) => r,
                    None => continue,
                };
                // h_q - g_i(q) > 0
                let mut diff = vec![Rat::zero(); nv];
                diff[q] = Rat::one();
                for (k, v) in row.into_iter().enumerate() {
                    diff[k] -= v;
                }
                strict.push(Constraint::new(RatVector::new(diff), Rat::zero()));
            }
        }

        // unused points lift strictly above the cell containing them
        for u in self.unused_point_indices() {
            let ci = (0..self.cells.len())
                .find(|&ci| self.cell_hulls[ci].contains_lattice(&self.points[u]))?;
            let row = eval_row(ci, u)?;
            let mut diff = vec![Rat::zero(); nv];
            diff[u] = Rat::one();
            for (k, v) in row.into_iter().enumerate() {
                diff[k] -= v;
            }
            strict.push(Constraint::new(RatVector::new(diff), Rat::zero()));
        }

        let heights = if weak.is_empty() && strict.is_empty() {
            vec![Rat::zero(); nv]
        } else {
            lp_strict_feasible(&weak, &strict)?.coords().to_vec()
        };
        let induced = induced_subdivision(&self.ambient, &self.points, &heights)
            .expect("induced subdivision of a witness");
        if induced.canonical_key() != self.canonical_key() {
            // the LP encoding is only sound together with this check
            return None;
        }
        Some(heights)
    }
}

/// Exact face-to-face test for two full-dimensional lattice polytopes: their
/// intersection must be empty or a common face of both.
pub(crate) fn hulls_meet_face_to_face(a: &LatticePolytope, b: &LatticePolytope) -> bool {
    let n = a.ambient_dim();
    let to_rat = |v: &LatticeVector| v.to_rat();
    let mut h = HRep::default();
    for (normal, off, _) in a.facets().iter().chain(b.facets()) {
        h.ineqs
            .push((to_rat(normal), Rat::from_integer(off.clone())));
    }
    for (normal, off) in a.equations().iter().chain(b.equations()) {
        h.eqs.push((to_rat(normal), Rat::from_integer(off.clone())));
    }
    let inter_vertices = h.vertices(n);
    if inter_vertices.is_empty() {
        return true;
    }
    // the face of `a` tight on all of the intersection
    let is_face_of = |p: &LatticePolytope| -> bool {
        let tight: Vec<usize> = (0..p.facets().len())
            .filter(|&fi| {
                let (normal, off, _) = &p.facets()[fi];
                inter_vertices
                    .iter()
                    .all(|v| normal.dot_rat(v) == Rat::from_integer(off.clone()))
            })
            .collect();
        // vertices of p on all those hyperplanes
        let face_verts: Vec<&LatticeVector> = p
            .vertices()
            .iter()
            .filter(|v| {
                tight.iter().all(|&fi| {
                    let (normal, off, _) = &p.facets()[fi];
                    &normal.dot(v) == off
                })
            })
            .collect();
        if tight.is_empty() && p.facets().is_empty() {
            return true;
        }
        if tight.is_empty() {
            // intersection meets the interior; only acceptable if it is all
            // of p and p == intersection, which cannot happen for distinct
            // interior-disjoint cells
            return false;
        }
        // face of p equals the intersection iff every vertex of the face is
        // a vertex of the intersection
        face_verts
            .iter()
            .all(|v| inter_vertices.binary_search(&v.to_rat()).is_ok())
    };
    is_face_of(a) && is_face_of(b)
}

/// The subdivision induced by heights: lower faces of the lifted point set.
pub fn induced_subdivision(
    ambient: &LatticePolytope,
    points: &[LatticeVector],
    heights: &[Rat],
) -> Result<Subdivision, Error> {
    if heights.len() != points.len() {
        return Err(Error::invalid("heights length mismatch"));
    }
    // clear denominators so the lifted hull is a lattice hull
    let mut m = Int::one();
    for h in heights {
        m = num::integer::lcm(m, h.denom().clone());
    }
    let lifted: Vec<LatticeVector> = points
        .iter()
        .zip(heights)
        .map(|(p, h)| {
            let mut c = p.coords().to_vec();
            c.push((h * Rat::from_integer(m.clone())).to_integer());
            LatticeVector::new(c)
        })
        .collect();

    let base_rank = {
        let pts: Vec<RatVector> = points.iter().map(|p| p.to_rat()).collect();
        linalg::affine_rank(&pts)
    };
    let lifted_rank = {
        let pts: Vec<RatVector> = lifted.iter().map(|p| p.to_rat()).collect();
        linalg::affine_rank(&pts)
    };
    if lifted_rank == base_rank {
        // all heights affine over the points: trivial subdivision with all
        // points in one cell
        let cell: Vec<usize> = (0..points.len()).collect();
        return Subdivision::assemble(
            ambient.clone(),
            points.to_vec(),
            vec![cell],
            Some(heights.to_vec()),
        );
    }

    let hull = convex_hull_unrestricted(&lifted)?;
    let last = points[0].dim();
    let mut cells: Vec<Vec<usize>> = Vec::new();
    for (normal, offset, _) in hull.facets() {
        // lower facet: inward normal has positive last coordinate
        if !normal.coord(last).is_positive() {
            continue;
        }
        let mut cell: Vec<usize> = lifted
            .iter()
            .enumerate()
            .filter(|(_, q)| &normal.dot(q) == offset)
            .map(|(i, _)| i)
            .collect();
        cell.sort_unstable();
        cells.push(cell);
    }
    Subdivision::assemble(
        ambient.clone(),
        points.to_vec(),
        cells,
        Some(heights.to_vec()),
    )
}

/// The staircase refinement of the product of two triangulations: each pair
/// of cells is triangulated by the monotone lattice paths through the grid
/// of their vertex orders. No new vertices are introduced, and products of
/// unimodular cells yield unimodular cells.
pub fn staircase_triangulation(tp: &Subdivision, tq: &Subdivision) -> Result<Subdivision, Error> {
    let left_unimodular = tp.is_unimodular()?.is_unimodular();
    let right_unimodular = tq.is_unimodular()?.is_unimodular();

    let ambient = crate::polytope::product(tp.ambient(), tq.ambient());
    let points = ambient.lattice_points();
    let index_of = |v: &LatticeVector| -> usize {
        points.binary_search(v).expect("product lattice point")
    };

    let mut cells: Vec<Vec<usize>> = Vec::new();
    for ca in tp.cells() {
        for cb in tq.cells() {
            let a: Vec<&LatticeVector> = ca.iter().map(|&i| &tp.points()[i]).collect();
            let b: Vec<&LatticeVector> = cb.iter().map(|&i| &tq.points()[i]).collect();
            let p = a.len() - 1;
            let q = b.len() - 1;
            for path in monotone_paths(p, q) {
                let cell: Vec<usize> = path
                    .iter()
                    .map(|&(i, j)| index_of(&a[i].concat(b[j])))
                    .collect();
                cells.push(cell);
            }
        }
    }

    let s = Subdivision::assemble(ambient, points, cells, None)?;
    // self-validation is part of the contract, not just a test
    s.validate()?;
    match s.is_unimodular()? {
        UnimodularVerdict::Unimodular => {}
        UnimodularVerdict::Offending { cell, volume } => {
            if left_unimodular && right_unimodular {
                return Err(Error::invalid(format!(
                    "staircase of unimodular inputs produced cell {cell} of volume {volume}"
                )));
            }
        }
    }
    let lifting = s
        .is_regular()
        .ok_or_else(|| Error::invalid("staircase triangulation failed regularity validation"))?;
    Ok(s.with_lifting(Some(lifting)))
}

/// All monotone lattice paths from (0,0) to (p,q).
fn monotone_paths(p: usize, q: usize) -> Vec<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    let mut path = vec![(0usize, 0usize)];
    fn rec(
        p: usize,
        q: usize,
        path: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        let &(i, j) = path.last().unwrap();
        if i == p && j == q {
            out.push(path.clone());
            return;
        }
        if i < p {
            path.push((i + 1, j));
            rec(p, q, path, out);
            path.pop();
        }
        if j < q {
            path.push((i, j + 1));
            rec(p, q, path, out);
            path.pop();
        }
    }
    rec(p, q, &mut path, &mut out);
    out
}

/// A regular unimodular triangulation of the dilated simplex `d Δ_r` on
/// exactly its lattice points, via the alcove decomposition in staircase
/// coordinates: the map `y_i = x_i + ... + x_r` sends `d Δ_r` to the region
/// `d >= y_1 >= ... >= y_r >= 0`, which is tiled by the unit alcoves of the
/// arrangements `y_i = k` and `y_i - y_j = k`. Each alcove is the unimodular
/// image of a staircase simplex of a unit cube. The output is validated by
/// the unimodularity and regularity checkers before being returned.
pub fn alcove_triangulation_dilated_simplex(d: u32, r: usize) -> Result<Subdivision, Error> {
    assert!(d >= 1 && r >= 1);
    let ambient = dilated_simplex(d, r);
    let points = ambient.lattice_points();

    // inverse of the staircase change of coordinates
    let y_to_x = |y: &[i64]| -> LatticeVector {
        let mut c = Vec::with_capacity(r);
        for i in 0..r {
            let next = if i + 1 < r { y[i + 1] } else { 0 };
            c.push(Int::from(y[i] - next));
        }
        LatticeVector::new(c)
    };
    let in_region = |y: &[i64]| -> bool {
        if y[0] > d as i64 || y[r - 1] < 0 {
            return false;
        }
        y.windows(2).all(|w| w[0] >= w[1])
    };

    let mut cells: Vec<Vec<usize>> = Vec::new();
    let mut floors = vec![0i64; r];
    let perms = permutations(r);
    loop {
        for perm in &perms {
            // staircase simplex of the unit cube at `floors` along `perm`
            let mut verts_y: Vec<Vec<i64>> = Vec::with_capacity(r + 1);
            let mut cur = floors.clone();
            verts_y.push(cur.clone());
            for &step in perm {
                cur[step] += 1;
                verts_y.push(cur.clone());
            }
            if !verts_y.iter().all(|y| in_region(y)) {
                continue;
            }
            let cell: Vec<usize> = verts_y
                .iter()
                .map(|y| {
                    let x = y_to_x(y);
                    points.binary_search(&x).expect("alcove vertex is a lattice point")
                })
                .collect();
            cells.push(cell);
        }
        // odometer over floor vectors in [0, d-1]^r
        let mut i = r;
        loop {
            if i == 0 {
                let s = Subdivision::assemble(ambient, points, cells, None)?;
                match s.is_unimodular()? {
                    UnimodularVerdict::Unimodular => {}
                    UnimodularVerdict::Offending { cell, volume } => {
                        return Err(Error::invalid(format!(
                            "alcove construction produced cell {cell} of volume {volume}"
                        )))
                    }
                }
                let lifting = s.is_regular().ok_or_else(|| {
                    Error::invalid("alcove triangulation failed regularity validation")
                })?;
                return Ok(s.with_lifting(Some(lifting)));
            }
            i -= 1;
            floors[i] += 1;
            if floors[i] <= d as i64 - 1 {
                break;
            }
            floors[i] = 0;
        }
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..n).collect();
    fn rec(k: usize, items: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == items.len() {
            out.push(items.clone());
            return;
        }
        for i in k..items.len() {
            items.swap(k, i);
            rec(k + 1, items, out);
            items.swap(k, i);
        }
    }
    rec(0, &mut items, &mut out);
    out.sort();
    out
}

/// Options for the breakability search.
#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// Maximum number of point orderings to try in the generic search.
    pub budget: usize,
    pub threads: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: 100_000,
            threads: 1,
        }
    }
}

/// Searches for a regular unimodular triangulation of `p`.
///
/// Products of dilated simplices in standard position are recognized
/// structurally and triangulated by composing alcove triangulations with
/// staircase refinements. Everything else goes through a search over
/// placing triangulations driven by lattice-point orderings, each candidate
/// validated by the checkers. Exhausting the budget returns `None`; that is
/// never a claim of non-breakability.
pub fn breakable_witness(p: &LatticePolytope, opts: &SearchOptions) -> Option<Subdivision> {
    if let Some(s) = try_product_of_dilated_simplices(p) {
        return Some(s);
    }
    let points = p.lattice_points();
    let expected_cells = big_to_usize(&p.total_normalized_volume())?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0);
    let base: Vec<usize> = (0..points.len()).collect();

    let try_order = |order: &[usize]| -> Option<Subdivision> {
        let cells = incremental_triangulation(&points, order)?;
        // a unimodular triangulation has exactly vol(P) cells
        if cells.len() != expected_cells {
            return None;
        }
        let s = Subdivision::assemble(p.clone(), points.clone(), cells, None).ok()?;
        if !s.is_unimodular().ok()?.is_unimodular() {
            return None;
        }
        let lifting = s.is_regular()?;
        let s = s.with_lifting(Some(lifting));
        s.validate().ok()?;
        Some(s)
    };

    // deterministic ordering sequence: identity, reverse, seeded shuffles
    let mut produced = 0usize;
    let next_order = |rng: &mut rand_chacha::ChaCha8Rng, produced: usize| -> Vec<usize> {
        match produced {
            0 => base.clone(),
            1 => base.iter().rev().cloned().collect(),
            _ => {
                let mut v = base.clone();
                v.shuffle(rng);
                v
            }
        }
    };

    let pool = (opts.threads > 1)
        .then(|| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(opts.threads)
                .build()
                .ok()
        })
        .flatten();

    while produced < opts.budget {
        let batch_size = 64.min(opts.budget - produced);
        let mut batch: Vec<Vec<usize>> = Vec::with_capacity(batch_size);
        for _ in 0..batch_size {
            let o = next_order(&mut rng, produced);
            produced += 1;
            batch.push(o);
        }
        // results are collected in batch order, so the first hit is the
        // same regardless of thread count
        let found: Option<Subdivision> = match &pool {
            Some(pool) => pool.install(|| {
                let results: Vec<Option<Subdivision>> =
                    batch.par_iter().map(|o| try_order(o)).collect();
                results.into_iter().flatten().next()
            }),
            None => batch.iter().filter_map(|o| try_order(o)).next(),
        };
        if found.is_some() {
            return found;
        }
    }
    None
}

fn big_to_usize(v: &Int) -> Option<usize> {
    use num::ToPrimitive;
    v.to_usize()
}

/// Recognizes an anchored product of dilated simplices with contiguous
/// coordinate blocks and triangulates it by alcove + staircase composition.
fn try_product_of_dilated_simplices(p: &LatticePolytope) -> Option<Subdivision> {
    let factors = split_into_dilated_simplices(p)?;
    let mut acc: Option<Subdivision> = None;
    for (d, r) in factors {
        let t = alcove_triangulation_dilated_simplex(d, r).ok()?;
        acc = Some(match acc {
            None => t,
            Some(prev) => staircase_triangulation(&prev, &t).ok()?,
        });
    }
    let s = acc?;
    // the recognized product must be p itself
    if s.ambient().vertices() == p.vertices() {
        Some(s)
    } else {
        None
    }
}

/// Greedy left-to-right factorization of the vertex set into standard
/// dilated simplex blocks.
fn split_into_dilated_simplices(p: &LatticePolytope) -> Option<Vec<(u32, usize)>> {
    use num::ToPrimitive;
    let n = p.ambient_dim();
    let mut factors = Vec::new();
    let mut start = 0;
    while start < n {
        let mut found = None;
        'width: for width in 1..=(n - start) {
            // projected vertex set onto coordinates [start, start+width)
            let mut proj: BTreeSet<Vec<Int>> = BTreeSet::new();
            for v in p.vertices() {
                proj.insert(v.coords()[start..start + width].to_vec());
            }
            // must be {0, d e_1, ..., d e_width} for some d
            if proj.len() != width + 1 {
                continue;
            }
            let mut d: Option<Int> = None;
            for q in &proj {
                let nz: Vec<usize> = (0..width).filter(|&i| !q[i].is_zero()).collect();
                match nz.len() {
                    0 => {}
                    1 => {
                        let val = q[nz[0]].clone();
                        if val.is_negative() {
                            continue 'width;
                        }
                        match &d {
                            None => d = Some(val),
                            Some(prev) if *prev == val => {}
                            _ => continue 'width,
                        }
                    }
                    _ => continue 'width,
                }
            }
            let d = d?;
            // the block must split off as a product factor
            let mut rest: BTreeSet<Vec<Int>> = BTreeSet::new();
            for v in p.vertices() {
                rest.insert(v.coords()[start + width..].to_vec());
            }
            if proj.len() * rest.len() == p.vertices().len() {
                found = Some((d.to_u32()?, width));
                break;
            }
        }
        let (d, width) = found?;
        factors.push((d, width));
        start += width;
    }
    Some(factors)
}

/// Incremental (placing + stellar) triangulation of a point set in the
/// prescribed insertion order. Points outside the current hull cone over the
/// visible boundary; points inside or on the boundary stellarly subdivide
/// the cells containing them, so every point becomes a vertex.
fn incremental_triangulation(points: &[LatticeVector], order: &[usize]) -> Option<Vec<Vec<usize>>> {
    // intrinsic coordinates
    let p0 = &points[order[0]];
    let edges: Vec<LatticeVector> = points
        .iter()
        .map(|p| p.sub(p0))
        .collect();
    let basis = linalg::saturation_basis(&edges);
    let d = basis.len();
    if d == 0 {
        return None;
    }
    let intrinsic: Vec<LatticeVector> = points
        .iter()
        .map(|p| {
            linalg::coordinates_in_basis(&basis, &p.sub(p0).to_rat())
                .and_then(|c| c.to_lattice())
                .expect("lattice point in saturated basis")
        })
        .collect();

    // seed simplex: first points in `order` that increase affine rank
    let mut seed: Vec<usize> = Vec::new();
    let mut rest: Vec<usize> = Vec::new();
    for &i in order {
        if seed.len() <= d {
            let mut pts: Vec<RatVector> = seed.iter().map(|&k| intrinsic[k].to_rat()).collect();
            pts.push(intrinsic[i].to_rat());
            if linalg::affine_rank(&pts) == pts.len() - 1 {
                seed.push(i);
                continue;
            }
        }
        rest.push(i);
    }
    if seed.len() != d + 1 {
        return None;
    }

    let mut cells: Vec<Vec<usize>> = vec![{
        let mut c = seed.clone();
        c.sort_unstable();
        c
    }];

    for &i in &rest {
        let p = &intrinsic[i];
        // boundary facets: (cell, dropped vertex) pairs appearing once
        let mut facet_count: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for (ci, c) in cells.iter().enumerate() {
            for drop in 0..c.len() {
                let mut f = c.clone();
                f.remove(drop);
                facet_count.entry(f).or_default().push(ci);
            }
        }
        let mut visible_boundary: Vec<Vec<usize>> = Vec::new();
        let mut strictly_outside = false;
        for (f, owners) in &facet_count {
            if owners.len() != 1 {
                continue;
            }
            let owner = &cells[owners[0]];
            let apex = owner.iter().find(|v| !f.contains(v)).unwrap();
            let fpts: Vec<LatticeVector> = f.iter().map(|&k| intrinsic[k].clone()).collect();
            let (normal, offset) = hyperplane_with_inside(&fpts, &intrinsic[*apex])?;
            let eval = normal.dot(p) - &offset;
            if eval.is_negative() {
                strictly_outside = true;
                visible_boundary.push(f.clone());
            }
        }
        if strictly_outside {
            for f in visible_boundary {
                let mut c = f;
                c.push(i);
                c.sort_unstable();
                cells.push(c);
            }
            continue;
        }
        // inside or on the boundary: stellar subdivision of containing cells
        let mut new_cells: Vec<Vec<usize>> = Vec::new();
        let mut changed = false;
        for c in &cells {
            let cpts: Vec<RatVector> = c.iter().map(|&k| intrinsic[k].to_rat()).collect();
            let coords = linalg::affine_coordinates(&cpts, &intrinsic[i].to_rat());
            let inside = coords
                .as_ref()
                .map(|l| l.coords().iter().all(|x| !x.is_negative()))
                .unwrap_or(false);
            if !inside {
                new_cells.push(c.clone());
                continue;
            }
            changed = true;
            let lambda = coords.unwrap();
            // replace by cones from p over the facets not containing p's
            // barycentric support
            for drop in 0..c.len() {
                if lambda.coord(drop).is_zero() {
                    continue; // p lies on this facet's span; handled by neighbors
                }
                let mut f = c.clone();
                f.remove(drop);
                f.push(i);
                f.sort_unstable();
                new_cells.push(f);
            }
        }
        if !changed {
            return None; // numerical impossibility: point neither in nor out
        }
        cells = new_cells;
    }
    cells.sort();
    cells.dedup();
    Some(cells)
}

/// Hyperplane through `pts` oriented so `inside` is strictly positive.
fn hyperplane_with_inside(
    pts: &[LatticeVector],
    inside: &LatticeVector,
) -> Option<(LatticeVector, Int)> {
    let d = pts[0].dim();
    let normal = if pts.len() == 1 && d == 1 {
        LatticeVector::unit(1, 0)
    } else {
        let edges: Vec<LatticeVector> = pts[1..].iter().map(|p| p.sub(&pts[0])).collect();
        let kernel = linalg::integer_kernel(&edges);
        if kernel.len() != 1 {
            return None;
        }
        kernel.into_iter().next().unwrap()
    };
    let offset = normal.dot(&pts[0]);
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

/// Options for exhaustive 2D subdivision enumeration.
#[derive(Clone, Debug)]
pub struct EnumOptions {
    pub regular_only: bool,
    pub max_cells: Option<usize>,
    /// Hard cap on the lattice point count of the polygon.
    pub point_cap: usize,
    pub threads: usize,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions {
            regular_only: false,
            max_cells: None,
            point_cap: 12,
            threads: 1,
        }
    }
}

/// Every lattice subdivision of a polygon (ambient dimension at most 2)
/// whose cells are closed convex cells on the polygon's lattice points,
/// optionally filtered by regularity and cell count. Deterministic canonical
/// order.
pub fn enumerate_subdivisions_2d(
    polygon: &LatticePolytope,
    opts: &EnumOptions,
) -> Result<Vec<Subdivision>, Error> {
    if polygon.dim() > 2 {
        return Err(Error::invalid("enumeration requires ambient dimension <= 2"));
    }
    let points = polygon.lattice_points();
    if points.len() > opts.point_cap || points.len() > 20 {
        return Err(Error::CapExceeded(format!(
            "{} lattice points exceed the cap of {}",
            points.len(),
            opts.point_cap.min(20)
        )));
    }

    let raw = if polygon.dim() <= 1 {
        enumerate_interval_subdivisions(polygon, &points)
    } else {
        enumerate_polygon_subdivisions(polygon, &points, opts.max_cells)
    };

    let mut out: Vec<Subdivision> = Vec::new();
    let check = |s: Subdivision| -> Option<Subdivision> {
        if let Some(mc) = opts.max_cells {
            if s.cells().len() > mc {
                return None;
            }
        }
        if opts.regular_only {
            let h = s.is_regular()?;
            Some(s.with_lifting(Some(h)))
        } else {
            Some(s)
        }
    };
    if opts.threads > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.threads)
            .build()
            .map_err(|e| Error::invalid(e.to_string()))?;
        let results: Vec<Option<Subdivision>> =
            pool.install(|| raw.into_par_iter().map(check).collect());
        out.extend(results.into_iter().flatten());
    } else {
        out.extend(raw.into_iter().filter_map(check));
    }
    out.sort_by(|a, b| (a.cells().len(), a.cells()).cmp(&(b.cells().len(), b.cells())));
    out.dedup_by(|a, b| a.cells() == b.cells());
    Ok(out)
}

fn enumerate_interval_subdivisions(
    polygon: &LatticePolytope,
    points: &[LatticeVector],
) -> Vec<Subdivision> {
    // points are collinear and lex sorted; interior points may or may not be
    // cut points
    let n = points.len();
    if n < 2 {
        return Vec::new();
    }
    let interior: Vec<usize> = (1..n - 1).collect();
    let mut out = Vec::new();
    for mask in 0u32..(1 << interior.len()) {
        let mut cuts: Vec<usize> = vec![0];
        for (k, &i) in interior.iter().enumerate() {
            if mask & (1 << k) != 0 {
                cuts.push(i);
            }
        }
        cuts.push(n - 1);
        let cells: Vec<Vec<usize>> = cuts
            .windows(2)
            .map(|w| (w[0]..=w[1]).collect())
            .collect();
        if let Ok(s) = Subdivision::assemble(polygon.clone(), points.to_vec(), cells, None) {
            out.push(s);
        }
    }
    out
}

/// A candidate closed convex cell for polygon enumeration.
struct CellCandidate {
    set: Vec<usize>,
    hull: LatticePolytope,
    volume: Int,
}

fn enumerate_polygon_subdivisions(
    polygon: &LatticePolytope,
    points: &[LatticeVector],
    max_cells: Option<usize>,
) -> Vec<Subdivision> {
    let n = points.len();
    assert!(n <= 20, "point cap guards the subset masks");
    // closed convex candidate cells: closures of hulls of point subsets
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut candidates: Vec<CellCandidate> = Vec::new();
    for mask in 1u64..(1u64 << n) {
        if (mask.count_ones() as usize) < 3 {
            continue;
        }
        let subset: Vec<LatticeVector> = (0..n)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| points[i].clone())
            .collect();
        let hull = match convex_hull(&subset) {
            Ok(h) => h,
            Err(_) => continue,
        };
        if hull.dim() != 2 {
            continue;
        }
        let closed: Vec<usize> = (0..n)
            .filter(|&i| hull.contains_lattice(&points[i]))
            .collect();
        if seen.insert(closed.clone()) {
            let volume = hull.total_normalized_volume();
            candidates.push(CellCandidate {
                set: closed,
                hull,
                volume,
            });
        }
    }
    candidates.sort_by(|a, b| a.set.cmp(&b.set));
    let m = candidates.len();

    // One probe per candidate: its barycenter, an interior point of the
    // candidate. If the uncovered region is nonempty, it contains a cell of
    // any completing subdivision, so some probe is uncovered; driving the
    // search by the least uncovered probe cannot prune a valid completion.
    let probes: Vec<RatVector> = candidates
        .iter()
        .map(|c| {
            let k = Rat::from_integer(Int::from(c.set.len() as i64));
            let mut sum = RatVector::zero(points[0].dim());
            for &i in &c.set {
                sum = sum.add(&points[i].to_rat());
            }
            sum.scale(&(Rat::one() / k))
        })
        .collect();
    // probe_in_cell[p][c]: probe p lies in the closed candidate cell c
    let probe_in_cell: Vec<Vec<bool>> = probes
        .iter()
        .map(|probe| {
            candidates
                .iter()
                .map(|c| c.hull.contains(probe))
                .collect()
        })
        .collect();

    struct Ctx<'a> {
        candidates: &'a [CellCandidate],
        compat: Vec<Vec<Option<bool>>>,
        probe_in_cell: &'a [Vec<bool>],
        total: Int,
        max_cells: Option<usize>,
        polygon: &'a LatticePolytope,
        points: &'a [LatticeVector],
    }

    fn compatible(ctx: &mut Ctx, a: usize, b: usize) -> bool {
        if let Some(v) = ctx.compat[a][b] {
            return v;
        }
        let v = disjoint_interiors_2d(&ctx.candidates[a].hull, &ctx.candidates[b].hull)
            && hulls_meet_face_to_face(&ctx.candidates[a].hull, &ctx.candidates[b].hull);
        ctx.compat[a][b] = Some(v);
        ctx.compat[b][a] = Some(v);
        v
    }

    // Backtracking over candidate cells. At each step the least uncovered
    // probe must be covered next, and the cell chosen for it bans
    // smaller-indexed cells containing that probe from the rest of the
    // branch: each subdivision then arises from exactly one choice sequence.
    fn rec(
        ctx: &mut Ctx,
        chosen: &mut Vec<usize>,
        cover_count: &mut Vec<usize>,
        ban: &mut BTreeMap<usize, usize>,
        vol: Int,
        out: &mut Vec<Subdivision>,
    ) {
        if let Some(mc) = ctx.max_cells {
            if chosen.len() > mc {
                return;
            }
        }
        if vol == ctx.total {
            let cells: Vec<Vec<usize>> = chosen
                .iter()
                .map(|&c| ctx.candidates[c].set.clone())
                .collect();
            if let Ok(s) =
                Subdivision::assemble(ctx.polygon.clone(), ctx.points.to_vec(), cells, None)
            {
                out.push(s);
            }
            return;
        }
        let Some(target) = (0..cover_count.len()).find(|&p| cover_count[p] == 0) else {
            return; // nothing tileable remains
        };
        for c in 0..ctx.candidates.len() {
            if !ctx.probe_in_cell[target][c] {
                continue;
            }
            if &vol + &ctx.candidates[c].volume > ctx.total {
                continue;
            }
            // first-cover canonical rule
            if ban
                .iter()
                .any(|(&p, &b)| c <= b && ctx.probe_in_cell[p][c])
            {
                continue;
            }
            let mut ok = true;
            for k in 0..chosen.len() {
                let x = chosen[k];
                if !compatible(ctx, x, c) {
                    ok = false;
                    break;
                }
            }
            if !ok {
                continue;
            }
            for p in 0..cover_count.len() {
                if ctx.probe_in_cell[p][c] {
                    cover_count[p] += 1;
                }
            }
            let prev_ban = ban.insert(target, c);
            debug_assert!(prev_ban.is_none(), "target probe was uncovered");
            chosen.push(c);
            let nv = &vol + &ctx.candidates[c].volume;
            rec(ctx, chosen, cover_count, ban, nv, out);
            chosen.pop();
            ban.remove(&target);
            for p in 0..cover_count.len() {
                if ctx.probe_in_cell[p][c] {
                    cover_count[p] -= 1;
                }
            }
        }
    }

    let mut ctx = Ctx {
        candidates: &candidates,
        compat: vec![vec![None; m]; m],
        probe_in_cell: &probe_in_cell,
        total: polygon.total_normalized_volume(),
        max_cells,
        polygon,
        points,
    };
    let mut out: Vec<Subdivision> = Vec::new();
    rec(
        &mut ctx,
        &mut Vec::new(),
        &mut vec![0usize; m],
        &mut BTreeMap::new(),
        Int::zero(),
        &mut out,
    );
    out.sort_by(|a, b| a.cells().cmp(b.cells()));
    out.dedup_by(|a, b| a.cells() == b.cells());
    out
}

/// Exact interior-disjointness for two full-dimensional polygons: some edge
/// line of one has the other on the outside.
fn disjoint_interiors_2d(a: &LatticePolytope, b: &LatticePolytope) -> bool {
    let separated_by = |p: &LatticePolytope, q: &LatticePolytope| -> bool {
        p.facets().iter().any(|(normal, off, _)| {
            // q entirely on the non-interior side: normal . x <= off
            q.vertices().iter().all(|v| &normal.dot(v) <= off)
        })
    };
    separated_by(a, b) || separated_by(b, a)
}

/// Exhaustive search for decompositions into at most two full-dimensional
/// closed cells; an oracle for "cannot be cut into just two pieces" style
/// questions in ambient dimension at most 3. Point count capped at 10.
pub fn two_piece_subdivisions(p: &LatticePolytope) -> Result<Vec<Subdivision>, Error> {
    let points = p.lattice_points();
    if points.len() > 10 {
        return Err(Error::CapExceeded(format!(
            "{} lattice points exceed the two-piece search cap of 10",
            points.len()
        )));
    }
    let n = points.len();
    let d = p.dim();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut candidates: Vec<(Vec<usize>, LatticePolytope, Int)> = Vec::new();
    for mask in 1u64..(1u64 << n) {
        if (mask.count_ones() as usize) < d + 1 {
            continue;
        }
        let subset: Vec<LatticeVector> = (0..n)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| points[i].clone())
            .collect();
        let Ok(hull) = convex_hull(&subset) else { continue };
        if hull.dim() != d {
            continue;
        }
        let closed: Vec<usize> = (0..n)
            .filter(|&i| hull.contains_lattice(&points[i]))
            .collect();
        if seen.insert(closed.clone()) {
            let vol = hull.total_normalized_volume();
            candidates.push((closed, hull, vol));
        }
    }
    candidates.sort_by(|a, b| a.0.cmp(&b.0));
    let total = p.total_normalized_volume();
    let mut out = Vec::new();
    for i in 0..candidates.len() {
        if candidates[i].2 == total {
            if let Ok(s) = Subdivision::new(
                p.clone(),
                points.clone(),
                vec![candidates[i].0.clone()],
                None,
            ) {
                out.push(s);
            }
            continue;
        }
        for j in (i + 1)..candidates.len() {
            if &candidates[i].2 + &candidates[j].2 != total {
                continue;
            }
            if !hulls_meet_face_to_face(&candidates[i].1, &candidates[j].1) {
                continue;
            }
            if let Ok(s) = Subdivision::new(
                p.clone(),
                points.clone(),
                vec![candidates[i].0.clone(), candidates[j].0.clone()],
                None,
            ) {
                out.push(s);
            }
        }
    }
    out.sort_by(|a, b| (a.cells().len(), a.cells()).cmp(&(b.cells().len(), b.cells())));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::int;

    fn lv(c: &[i64]) -> LatticeVector {
        LatticeVector::from_ints(c)
    }

    fn two_delta_two() -> (LatticePolytope, Vec<LatticeVector>) {
        let p = dilated_simplex(2, 2);
        let pts = p.lattice_points();
        (p, pts)
    }

    fn index_of(points: &[LatticeVector], c: &[i64]) -> usize {
        let v = lv(c);
        points.binary_search(&v).expect("point present")
    }

    /// The four-triangle corner subdivision of 2Δ₂.
    fn corner_triangulation() -> Subdivision {
        let (p, pts) = two_delta_two();
        let cell = |a: &[i64], b: &[i64], c: &[i64]| {
            vec![
                index_of(&pts, a),
                index_of(&pts, b),
                index_of(&pts, c),
            ]
        };
        Subdivision::new(
            p,
            pts.clone(),
            vec![
                cell(&[0, 0], &[1, 0], &[0, 1]),
                cell(&[1, 0], &[0, 1], &[1, 1]),
                cell(&[1, 0], &[2, 0], &[1, 1]),
                cell(&[0, 1], &[1, 1], &[0, 2]),
            ],
            None,
        )
        .unwrap()
    }

    #[test]
    fn unimodularity_examples() {
        // trivial triangulation of the unit triangle
        let t = dilated_simplex(1, 2);
        let pts = t.lattice_points();
        let s = Subdivision::new(t, pts, vec![vec![0, 1, 2]], None).unwrap();
        assert!(s.is_unimodular().unwrap().is_unimodular());

        // one-cell triangulation of 2Δ₂ by its vertex simplex: volume 4
        let (p, pts) = two_delta_two();
        let cell = vec![
            index_of(&pts, &[0, 0]),
            index_of(&pts, &[2, 0]),
            index_of(&pts, &[0, 2]),
        ];
        let s = Subdivision::new(p, pts, vec![cell], None).unwrap();
        match s.is_unimodular().unwrap() {
            UnimodularVerdict::Offending { volume, .. } => assert_eq!(volume, int(4)),
            v => panic!("expected offending cell, got {v:?}"),
        }

        // the corner triangulation is unimodular
        assert!(corner_triangulation().is_unimodular().unwrap().is_unimodular());
    }

    #[test]
    fn non_simplicial_input_is_an_error() {
        let (p, pts) = two_delta_two();
        let all: Vec<usize> = (0..pts.len()).collect();
        let s = Subdivision::new(p, pts, vec![all], None).unwrap();
        assert!(matches!(s.is_unimodular(), Err(Error::NotATriangulation(0))));
    }

    #[test]
    fn regularity_of_trivial_and_corner() {
        // any one-cell subdivision is regular (zero heights work)
        let t = dilated_simplex(1, 2);
        let pts = t.lattice_points();
        let s = Subdivision::new(t, pts, vec![vec![0, 1, 2]], None).unwrap();
        let h = s.is_regular().expect("trivial subdivision is regular");
        assert_eq!(h.len(), 3);

        let s = corner_triangulation();
        let h = s.is_regular().expect("corner triangulation is regular");
        // verify the witness by inducing
        let induced = induced_subdivision(s.ambient(), s.points(), &h).unwrap();
        assert_eq!(induced.canonical_key(), s.canonical_key());
    }

    #[test]
    fn quadratic_heights_induce_corner_triangulation() {
        // x^2 + xy + y^2: positive definite, and unlike the round paraboloid
        // it breaks the tie of the four points of the central unit square
        let s = corner_triangulation();
        let heights: Vec<Rat> = s
            .points()
            .iter()
            .map(|p| {
                let x = p.coord(0);
                let y = p.coord(1);
                Rat::from_integer(x * x + x * y + y * y)
            })
            .collect();
        let induced = induced_subdivision(s.ambient(), s.points(), &heights).unwrap();
        assert_eq!(induced.canonical_key(), s.canonical_key());
        // and the explicit lifting validates
        let lifted = s.clone().with_lifting(Some(heights));
        lifted.check_lifting_induces().unwrap();
    }

    #[test]
    fn mother_of_all_examples_is_irregular() {
        // two nested triangles, pinwheel triangulation
        let outer = [lv(&[0, 0]), lv(&[4, 0]), lv(&[0, 4])];
        let inner = [lv(&[1, 1]), lv(&[2, 1]), lv(&[1, 2])];
        let mut config: Vec<LatticeVector> = outer.iter().chain(inner.iter()).cloned().collect();
        config.sort_unstable();
        let ambient = convex_hull(&config).unwrap();
        let find = |c: &[i64]| config.binary_search(&lv(c)).unwrap();
        let o1 = find(&[0, 0]);
        let o2 = find(&[4, 0]);
        let o3 = find(&[0, 4]);
        let i1 = find(&[1, 1]);
        let i2 = find(&[2, 1]);
        let i3 = find(&[1, 2]);
        let cells = vec![
            vec![o1, o2, i1],
            vec![o2, i1, i2],
            vec![o2, o3, i2],
            vec![o3, i2, i3],
            vec![o3, o1, i3],
            vec![o1, i3, i1],
            vec![i1, i2, i3],
        ];
        let s = Subdivision::new(ambient, config.clone(), cells, None).unwrap();
        assert!(s.is_unimodular().is_ok());
        assert!(s.is_regular().is_none(), "pinwheel triangulation is not regular");

        // control: the mirrored pinwheel is also irregular
        let cells2 = vec![
            vec![o1, o2, i2],
            vec![o1, i1, i2],
            vec![o2, o3, i3],
            vec![o2, i2, i3],
            vec![o3, o1, i1],
            vec![o3, i3, i1],
            vec![i1, i2, i3],
        ];
        let s2 = Subdivision::new(s.ambient().clone(), config, cells2, None).unwrap();
        assert!(s2.is_regular().is_none());
    }

    #[test]
    fn staircase_of_unit_segments() {
        let seg = dilated_simplex(1, 1);
        let pts = seg.lattice_points();
        let t = Subdivision::new(seg, pts, vec![vec![0, 1]], None).unwrap();
        let sq = staircase_triangulation(&t, &t).unwrap();
        assert_eq!(sq.cells().len(), 2, "unit square splits into two triangles");
        assert!(sq.is_unimodular().unwrap().is_unimodular());
    }

    #[test]
    fn staircase_triangle_times_segment() {
        let tri = dilated_simplex(1, 2);
        let tri_pts = tri.lattice_points();
        let t2 = Subdivision::new(tri, tri_pts, vec![vec![0, 1, 2]], None).unwrap();
        let seg = dilated_simplex(1, 1);
        let seg_pts = seg.lattice_points();
        let t1 = Subdivision::new(seg, seg_pts, vec![vec![0, 1]], None).unwrap();
        let prism = staircase_triangulation(&t2, &t1).unwrap();
        assert_eq!(prism.cells().len(), 3, "prism splits into binom(3,1) tetrahedra");
        assert!(prism.is_unimodular().unwrap().is_unimodular());
    }

    #[test]
    fn alcove_triangulations() {
        let t = alcove_triangulation_dilated_simplex(1, 3).unwrap();
        assert_eq!(t.cells().len(), 1);

        let t = alcove_triangulation_dilated_simplex(2, 2).unwrap();
        assert_eq!(t.cells().len(), 4);
        assert!(t.is_unimodular().unwrap().is_unimodular());
        assert!(t.lifting().is_some());

        let t = alcove_triangulation_dilated_simplex(3, 3).unwrap();
        assert_eq!(t.cells().len(), 27);
        assert!(t.is_unimodular().unwrap().is_unimodular());
        assert_eq!(t.used_points().len(), 20);
    }

    #[test]
    fn staircase_of_alcoves_matches_volume() {
        let a = alcove_triangulation_dilated_simplex(2, 2).unwrap();
        let b = alcove_triangulation_dilated_simplex(2, 1).unwrap();
        let s = staircase_triangulation(&a, &b).unwrap();
        assert_eq!(s.cells().len(), 24);
        assert!(s.is_unimodular().unwrap().is_unimodular());
        // no new vertices: the used points are exactly the product points
        assert_eq!(s.used_points().len(), s.points().len());
        assert_eq!(s.points().len(), 18);
        // volume conservation
        let mut vol = Int::zero();
        for i in 0..s.cells().len() {
            vol += s.normalized_cell_volume(i);
        }
        assert_eq!(vol, s.ambient().total_normalized_volume());
    }

    #[test]
    fn breakable_witness_products() {
        let p = dilated_simplex(3, 3);
        let w = breakable_witness(&p, &SearchOptions::default()).unwrap();
        assert_eq!(w.cells().len(), 27);

        let p = crate::polytope::newton_polytope(&[2, 1], &[2, 2]).unwrap();
        let w = breakable_witness(&p, &SearchOptions::default()).unwrap();
        assert_eq!(w.cells().len(), 24);
    }

    #[test]
    fn breakable_witness_figure_two() {
        let p = crate::polytope::figure_two_polytope();
        let w = breakable_witness(&p, &SearchOptions::default()).expect("figure polytope breaks");
        assert!(w.is_unimodular().unwrap().is_unimodular());
        assert!(w.lifting().is_some());
        w.validate().unwrap();
        // three pieces: the polytope has normalized volume 3
        assert_eq!(p.total_normalized_volume(), int(3));
        assert_eq!(w.cells().len(), 3);
    }

    #[test]
    fn enumerate_trivial_polygon() {
        let t = dilated_simplex(1, 2);
        let subs = enumerate_subdivisions_2d(&t, &EnumOptions::default()).unwrap();
        assert_eq!(subs.len(), 1);
        assert_eq!(subs[0].cells().len(), 1);
    }

    #[test]
    fn enumerate_segment() {
        let seg = dilated_simplex(2, 1);
        let subs = enumerate_subdivisions_2d(&seg, &EnumOptions::default()).unwrap();
        assert_eq!(subs.len(), 2, "whole segment or split at the midpoint");
    }

    #[test]
    fn enumerate_two_delta_two_contains_corner_triangulation() {
        let (p, _) = two_delta_two();
        let opts = EnumOptions {
            regular_only: true,
            ..Default::default()
        };
        let subs = enumerate_subdivisions_2d(&p, &opts).unwrap();
        let corner = corner_triangulation();
        assert!(
            subs.iter().any(|s| s.canonical_key() == corner.canonical_key()),
            "regular enumeration contains the corner triangulation"
        );
        // every returned subdivision carries a verified lifting
        for s in &subs {
            s.check_lifting_induces().unwrap();
        }
        // all six-point triangulations in the output are regular; the
        // enumeration is also strictly larger than the triangulation count
        assert!(subs.len() > 4);
    }

    #[test]
    fn enumeration_matches_bruteforce_oracle_on_small_polygons() {
        // oracle: plain backtracking over candidate cells in increasing
        // index order, no target guidance
        fn oracle(polygon: &LatticePolytope) -> Vec<Vec<Vec<usize>>> {
            let points = polygon.lattice_points();
            let n = points.len();
            let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
            let mut cands: Vec<(Vec<usize>, LatticePolytope, Int)> = Vec::new();
            for mask in 1u64..(1u64 << n) {
                if (mask.count_ones() as usize) < 3 {
                    continue;
                }
                let subset: Vec<LatticeVector> = (0..n)
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| points[i].clone())
                    .collect();
                let Ok(hull) = convex_hull(&subset) else { continue };
                if hull.dim() != 2 {
                    continue;
                }
                let closed: Vec<usize> = (0..n)
                    .filter(|&i| hull.contains_lattice(&points[i]))
                    .collect();
                if seen.insert(closed.clone()) {
                    let v = hull.total_normalized_volume();
                    cands.push((closed, hull, v));
                }
            }
            cands.sort_by(|a, b| a.0.cmp(&b.0));
            let total = polygon.total_normalized_volume();
            let mut out = Vec::new();
            fn rec(
                cands: &[(Vec<usize>, LatticePolytope, Int)],
                start: usize,
                chosen: &mut Vec<usize>,
                vol: Int,
                total: &Int,
                out: &mut Vec<Vec<Vec<usize>>>,
            ) {
                if &vol == total {
                    let mut cells: Vec<Vec<usize>> =
                        chosen.iter().map(|&c| cands[c].0.clone()).collect();
                    cells.sort();
                    out.push(cells);
                    return;
                }
                for c in start..cands.len() {
                    if &(&vol + &cands[c].2) > total {
                        continue;
                    }
                    if !chosen.iter().all(|&x| {
                        disjoint_interiors_2d(&cands[x].1, &cands[c].1)
                            && hulls_meet_face_to_face(&cands[x].1, &cands[c].1)
                    }) {
                        continue;
                    }
                    chosen.push(c);
                    let nv = &vol + &cands[c].2;
                    rec(cands, c + 1, chosen, nv, total, out);
                    chosen.pop();
                }
            }
            rec(&cands, 0, &mut Vec::new(), Int::zero(), &total, &mut out);
            out.sort();
            out.dedup();
            out
        }

        // unit square (4 points) and 2Δ₂ (6 points)
        let square = crate::polytope::product(&dilated_simplex(1, 1), &dilated_simplex(1, 1));
        let expected = oracle(&square);
        let got = enumerate_subdivisions_2d(&square, &EnumOptions::default()).unwrap();
        let mut got_cells: Vec<Vec<Vec<usize>>> = got.iter().map(|s| s.cells().to_vec()).collect();
        got_cells.sort();
        assert_eq!(got_cells, expected);
        assert_eq!(expected.len(), 3, "square: trivial plus two diagonals");

        let (p, _) = two_delta_two();
        let expected = oracle(&p);
        let got = enumerate_subdivisions_2d(&p, &EnumOptions::default()).unwrap();
        let mut got_cells: Vec<Vec<Vec<usize>>> = got.iter().map(|s| s.cells().to_vec()).collect();
        got_cells.sort();
        assert_eq!(got_cells, expected);
    }

    #[test]
    fn two_piece_search_on_figure_two() {
        let p = crate::polytope::figure_two_polytope();
        let subs = two_piece_subdivisions(&p).unwrap();
        // report only: every result is a valid decomposition into at most
        // two closed lattice cells
        for s in &subs {
            assert!(s.cells().len() <= 2);
            s.validate().unwrap();
        }
    }

    #[test]
    fn volume_conservation_under_enumeration() {
        let (p, _) = two_delta_two();
        let subs = enumerate_subdivisions_2d(&p, &EnumOptions::default()).unwrap();
        let total = p.total_normalized_volume();
        for s in subs {
            let mut vol = Int::zero();
            for i in 0..s.cells().len() {
                vol += s.normalized_cell_volume(i);
            }
            assert_eq!(vol, total);
        }
    }
}
