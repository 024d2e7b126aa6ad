//! Rational polyhedral cone complexes with simplicial cones on distinct
//! rays, their canonical ray-coordinate embeddings, maps between them,
//! combinatorial flatness, fibers over the base ray, stars of points, and
//! canonical lifts of contact-order data under subdivision.
//!
//! The canonical embedding sends the i-th ray to the positive i-th axis of
//! `R^r`, so a complex is just a downward-closed family of subsets of its
//! ray set, and its support is the corresponding union of coordinate orthant
//! faces. A point of the support is represented by its coordinate vector;
//! the minimal cone containing it is its support set.

use crate::dualcomplex::{PolyCell, PolyComplex};
use crate::error::Error;
use crate::lattice::{primitive_decompose, LatticeVector, RatVector};
use crate::linalg::{self, RatMatrix};
use crate::{Int, Rat};
use num::{One, Signed, Zero};
use std::collections::BTreeSet;

/// An abstract simplicial cone complex in its canonical ray-coordinate
/// embedding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeComplex {
    ray_count: usize,
    /// All nonempty cones as sorted ray index sets, closed under taking
    /// faces. The zero cone is implicit.
    cones: BTreeSet<Vec<usize>>,
}

impl ConeComplex {
    pub fn new(ray_count: usize, maximal: &[Vec<usize>]) -> Result<Self, Error> {
        let mut cones: BTreeSet<Vec<usize>> = BTreeSet::new();
        for c in maximal {
            let mut c: Vec<usize> = c.clone();
            c.sort_unstable();
            c.dedup();
            if c.iter().any(|&i| i >= ray_count) {
                return Err(Error::invalid("cone references a missing ray"));
            }
            // all nonempty faces
            let k = c.len();
            for mask in 1u64..(1u64 << k) {
                let face: Vec<usize> =
                    (0..k).filter(|i| mask & (1 << i) != 0).map(|i| c[i]).collect();
                cones.insert(face);
            }
        }
        let complex = ConeComplex { ray_count, cones };
        for i in 0..ray_count {
            if !complex.cones.contains(&vec![i]) {
                return Err(Error::invalid(format!("ray {i} belongs to no cone")));
            }
        }
        Ok(complex)
    }

    /// The full positive orthant on `r` rays.
    pub fn orthant(r: usize) -> Self {
        ConeComplex::new(r, &[(0..r).collect()]).expect("orthant")
    }

    /// The base complex: a single ray.
    pub fn one_ray() -> Self {
        ConeComplex::orthant(1)
    }

    pub fn ray_count(&self) -> usize {
        self.ray_count
    }

    pub fn cones(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.cones.iter()
    }

    pub fn cone_count(&self) -> usize {
        self.cones.len()
    }

    pub fn contains_cone(&self, c: &[usize]) -> bool {
        c.is_empty() || self.cones.contains(&c.to_vec())
    }

    pub fn maximal_cones(&self) -> Vec<Vec<usize>> {
        self.cones
            .iter()
            .filter(|c| {
                !self
                    .cones
                    .iter()
                    .any(|d| d.len() > c.len() && c.iter().all(|i| d.contains(i)))
            })
            .cloned()
            .collect()
    }

    fn support_of_rat(x: &RatVector) -> Vec<usize> {
        (0..x.dim()).filter(|&i| !x.coord(i).is_zero()).collect()
    }

    /// Membership in the support: non-negative coordinates whose support set
    /// is a cone.
    pub fn contains_point(&self, x: &RatVector) -> bool {
        if x.dim() != self.ray_count {
            return false;
        }
        if x.coords().iter().any(|c| c.is_negative()) {
            return false;
        }
        self.contains_cone(&Self::support_of_rat(x))
    }

    /// The minimal cone whose relative interior contains `x`.
    pub fn minimal_cone(&self, x: &RatVector) -> Result<Vec<usize>, Error> {
        if self.contains_point(x) {
            Ok(Self::support_of_rat(x))
        } else {
            Err(Error::OutsideSupport)
        }
    }

    /// Integral tangency at a point: `v` points from `p` into some cone
    /// containing the minimal cone of `p`.
    pub fn is_tangent_at(&self, p: &RatVector, v: &LatticeVector) -> Result<bool, Error> {
        let sigma = self.minimal_cone(p)?;
        if v.dim() != self.ray_count {
            return Ok(false);
        }
        let mut needed: Vec<usize> = sigma.clone();
        for i in 0..self.ray_count {
            if sigma.contains(&i) {
                continue;
            }
            let c = v.coord(i);
            if c.is_negative() {
                return Ok(false);
            }
            if c.is_positive() {
                needed.push(i);
            }
        }
        needed.sort_unstable();
        Ok(self.contains_cone(&needed))
    }

    /// The star of a point: its minimal cone, and the link complex obtained
    /// by projecting the cones containing it modulo its span. Returns the
    /// link together with the original ray indices of the link's rays.
    pub fn star_at(&self, p: &RatVector) -> Result<StarData, Error> {
        let sigma = self.minimal_cone(p)?;
        let mut link_rays: Vec<usize> = Vec::new();
        let mut link_cones: Vec<Vec<usize>> = Vec::new();
        for c in &self.cones {
            if sigma.iter().all(|i| c.contains(i)) {
                let rest: Vec<usize> = c.iter().filter(|i| !sigma.contains(i)).cloned().collect();
                if !rest.is_empty() {
                    for &r in &rest {
                        if !link_rays.contains(&r) {
                            link_rays.push(r);
                        }
                    }
                    link_cones.push(rest);
                }
            }
        }
        link_rays.sort_unstable();
        let relabeled: Vec<Vec<usize>> = link_cones
            .iter()
            .map(|c| {
                c.iter()
                    .map(|r| link_rays.binary_search(r).unwrap())
                    .collect()
            })
            .collect();
        let link = if link_rays.is_empty() {
            ConeComplex {
                ray_count: 0,
                cones: BTreeSet::new(),
            }
        } else {
            ConeComplex::new(link_rays.len(), &relabeled)?
        };
        Ok(StarData {
            minimal_cone: sigma,
            link,
            link_ray_ids: link_rays,
        })
    }
}

/// The tangent data of a point in a cone complex.
#[derive(Clone, Debug)]
pub struct StarData {
    /// Minimal cone containing the point.
    pub minimal_cone: Vec<usize>,
    /// The link: projections of the cones containing the minimal cone,
    /// modulo its span.
    pub link: ConeComplex,
    /// Original ray indices of the link rays.
    pub link_ray_ids: Vec<usize>,
}

impl StarData {
    /// Rank of the lattice of integral tangent directions: directions along
    /// the minimal cone are two-sided, link directions one-sided.
    pub fn tangent_rank(&self) -> usize {
        self.minimal_cone.len() + self.link_ray_ids.len()
    }
}

/// A map of cone complexes, linear on each cone and integral on lattices,
/// recorded by the images of the source rays in target coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexMap {
    pub source: ConeComplex,
    pub target: ConeComplex,
    pub ray_images: Vec<LatticeVector>,
}

impl ComplexMap {
    pub fn new(
        source: ConeComplex,
        target: ConeComplex,
        ray_images: Vec<LatticeVector>,
    ) -> Result<Self, Error> {
        if ray_images.len() != source.ray_count() {
            return Err(Error::invalid("one image per source ray required"));
        }
        for v in &ray_images {
            if v.dim() != target.ray_count() {
                return Err(Error::DimensionMismatch {
                    expected: target.ray_count(),
                    got: v.dim(),
                });
            }
            if v.coords().iter().any(|c| c.is_negative()) {
                return Err(Error::invalid("ray image outside the target support"));
            }
        }
        let map = ComplexMap {
            source,
            target,
            ray_images,
        };
        // each source cone must land in the support: a convex cone inside a
        // union of orthant faces lies in a single coordinate face
        for c in map.source.cones.iter() {
            if !map.target.contains_cone(&map.image_support(c)) {
                return Err(Error::invalid(format!(
                    "cone {c:?} does not map into the target support"
                )));
            }
        }
        Ok(map)
    }

    /// Identity on the canonical embedding.
    pub fn identity(c: &ConeComplex) -> Self {
        let images = (0..c.ray_count())
            .map(|i| LatticeVector::unit(c.ray_count(), i))
            .collect();
        ComplexMap {
            source: c.clone(),
            target: c.clone(),
            ray_images: images,
        }
    }

    fn image_support(&self, cone: &[usize]) -> Vec<usize> {
        let mut u: BTreeSet<usize> = BTreeSet::new();
        for &i in cone {
            u.extend(self.ray_images[i].support());
        }
        u.into_iter().collect()
    }

    /// Linear image of a point of the source support.
    pub fn map_point(&self, x: &RatVector) -> Result<RatVector, Error> {
        if !self.source.contains_point(x) {
            return Err(Error::OutsideSupport);
        }
        let mut out = RatVector::zero(self.target.ray_count());
        for i in 0..self.source.ray_count() {
            if !x.coord(i).is_zero() {
                out = out.add(&self.ray_images[i].to_rat().scale(x.coord(i)));
            }
        }
        Ok(out)
    }

    /// The unique source lattice point mapping to `x`, for maps that are
    /// subdivisions (bijective on supports). Solved cone by cone; a missing
    /// preimage is a contact-support error, an ambiguous one means the map
    /// is not a subdivision.
    pub fn lift_point(&self, x: &LatticeVector) -> Result<LatticeVector, Error> {
        let mut found: BTreeSet<LatticeVector> = BTreeSet::new();
        for cone in self.source.cones.iter() {
            let cols: Vec<&LatticeVector> = cone.iter().map(|&i| &self.ray_images[i]).collect();
            let rows = self.target.ray_count();
            let mut a = RatMatrix::zero(rows, cols.len());
            for (j, col) in cols.iter().enumerate() {
                for r in 0..rows {
                    a.set(r, j, Rat::from_integer(col.coord(r).clone()));
                }
            }
            let b = RatVector::new(
                x.coords()
                    .iter()
                    .map(|c| Rat::from_integer(c.clone()))
                    .collect(),
            );
            let Some(y) = linalg::solve(&a, &b) else { continue };
            // the system may be underdetermined for collapsing cones; verify
            let mut image = RatVector::zero(rows);
            for (j, col) in cols.iter().enumerate() {
                image = image.add(&col.to_rat().scale(y.coord(j)));
            }
            if image != b {
                continue;
            }
            if y.coords().iter().any(|c| c.is_negative()) {
                continue;
            }
            let Some(y_int) = y.to_lattice() else { continue };
            let mut full = vec![Int::zero(); self.source.ray_count()];
            for (j, &i) in cone.iter().enumerate() {
                full[i] = y_int.coord(j).clone();
            }
            found.insert(LatticeVector::new(full));
        }
        match found.len() {
            0 => Err(Error::UnsupportedContact),
            1 => Ok(found.into_iter().next().unwrap()),
            _ => Err(Error::invalid(
                "point has several preimages; map is not a subdivision",
            )),
        }
    }
}

/// Verdict of the combinatorial flatness check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FlatVerdict {
    Flat,
    Offending { cone: Vec<usize> },
}

impl FlatVerdict {
    pub fn is_flat(&self) -> bool {
        matches!(self, FlatVerdict::Flat)
    }
}

/// Combinatorial flatness: the image of every source cone is exactly a cone
/// of the target. The image lies in the coordinate face spanned by the union
/// of image supports, so equality holds iff every unit direction of that
/// face lies in the cone generated by the images.
pub fn is_combinatorially_flat(f: &ComplexMap) -> FlatVerdict {
    let rt = f.target.ray_count();
    for cone in f.source.cones.iter() {
        let u = f.image_support(cone);
        let generators: Vec<RatVector> =
            cone.iter().map(|&i| f.ray_images[i].to_rat()).collect();
        for &j in &u {
            let ej = RatVector::new(
                (0..rt)
                    .map(|k| if k == j { Rat::one() } else { Rat::zero() })
                    .collect(),
            );
            if crate::lp::in_cone(&generators, &ej).is_none() {
                return FlatVerdict::Offending { cone: cone.clone() };
            }
        }
    }
    FlatVerdict::Flat
}

/// The fiber over 1 of a map to the one-ray complex: the polyhedral complex
/// `{ x : f(x) = 1 }` with one cell per cone meeting the fiber. Bounded
/// cells are dual to compact strata; a ray mapped to 0 contributes an
/// unbounded direction recording a horizontal divisor.
pub fn fiber_at_one(f: &ComplexMap) -> Result<PolyComplex, Error> {
    if f.target.ray_count() != 1 {
        return Err(Error::invalid("fiber requires the one-ray target"));
    }
    let weights: Vec<Int> = f.ray_images.iter().map(|v| v.coord(0).clone()).collect();
    let n = f.source.ray_count();
    let mut cells: Vec<PolyCell> = Vec::new();
    for cone in f.source.cones.iter() {
        let pos: Vec<usize> = cone
            .iter()
            .cloned()
            .filter(|&i| weights[i].is_positive())
            .collect();
        if pos.is_empty() {
            continue; // fiber misses this cone
        }
        let vertices: Vec<RatVector> = pos
            .iter()
            .map(|&i| {
                let mut c = vec![Rat::zero(); n];
                c[i] = Rat::one() / Rat::from_integer(weights[i].clone());
                RatVector::new(c)
            })
            .collect();
        let rays: Vec<LatticeVector> = cone
            .iter()
            .cloned()
            .filter(|&i| weights[i].is_zero())
            .map(|i| LatticeVector::unit(n, i))
            .collect();
        cells.push(PolyCell {
            vertices,
            rays,
            dim: cone.len() - 1,
            tag: cone.clone(),
        });
    }
    if cells.is_empty() {
        return Err(Error::invalid(
            "fiber is empty; map is not surjective onto the ray",
        ));
    }
    let mut faces = vec![Vec::new(); cells.len()];
    for i in 0..cells.len() {
        for j in 0..cells.len() {
            if i != j
                && cells[j].tag.len() < cells[i].tag.len()
                && cells[j].tag.iter().all(|r| cells[i].tag.contains(r))
            {
                faces[i].push(j);
            }
        }
    }
    Ok(PolyComplex {
        ambient_dim: n,
        cells,
        faces,
    })
}

/// The cone over a simplicial complex: one ray per vertex, each mapped to 1
/// on the base ray. `fiber_at_one` of the result recovers the complex with
/// its vertices at the unit points.
pub fn cone_over_simplicial(
    num_vertices: usize,
    maximal_cells: &[Vec<usize>],
) -> Result<ComplexMap, Error> {
    let source = ConeComplex::new(num_vertices, maximal_cells)?;
    let target = ConeComplex::one_ray();
    let images = vec![LatticeVector::from_ints(&[1]); num_vertices];
    ComplexMap::new(source, target, images)
}

/// A matrix of contact orders: rows are marked points, columns are divisor
/// components (rays), entries non-negative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContactMatrix {
    pub rows: Vec<Vec<Int>>,
}

impl ContactMatrix {
    pub fn from_ints(rows: &[Vec<i64>]) -> Self {
        ContactMatrix {
            rows: rows
                .iter()
                .map(|r| r.iter().map(|&c| Int::from(c)).collect())
                .collect(),
        }
    }

    /// Disjointness: each row has at most one nonzero entry.
    pub fn is_disjoint(&self) -> bool {
        self.rows
            .iter()
            .all(|r| r.iter().filter(|c| !c.is_zero()).count() <= 1)
    }
}

/// The lattice point of a contact row: the ray generators weighted by the
/// contact orders, together with its minimal cone. The point must lie in the
/// support of the complex.
pub fn contact_lattice_point(
    row: &[Int],
    complex: &ConeComplex,
) -> Result<(LatticeVector, Vec<usize>), Error> {
    if row.len() != complex.ray_count() {
        return Err(Error::DimensionMismatch {
            expected: complex.ray_count(),
            got: row.len(),
        });
    }
    if row.iter().any(|c| c.is_negative()) {
        return Err(Error::invalid("contact orders are non-negative"));
    }
    let x = LatticeVector::new(row.to_vec());
    let support = x.support();
    if !complex.contains_cone(&support) {
        return Err(Error::UnsupportedContact);
    }
    Ok((x, support))
}

/// Canonical lift of contact data along a subdivision `f : Σ' → Σ`: each
/// row's lattice point is located in `Σ'` and re-expressed in the ray
/// coordinates of its minimal cone there. Total tangency with every total
/// transform is preserved because the lift is the same point of the support.
pub fn canonical_lift(m: &ContactMatrix, f: &ComplexMap) -> Result<ContactMatrix, Error> {
    let mut rows = Vec::with_capacity(m.rows.len());
    for row in &m.rows {
        let (x, _) = contact_lattice_point(row, &f.target)?;
        let y = f.lift_point(&x)?;
        rows.push(y.coords().to_vec());
    }
    Ok(ContactMatrix { rows })
}

/// Result of the flattening routine: a combinatorially flat map together
/// with the refinements of source and target that produced it.
#[derive(Clone, Debug)]
pub struct Flattening {
    pub map: ComplexMap,
    pub source_refinement: ComplexMap,
    pub target_refinement: ComplexMap,
    pub rounds: usize,
}

const FLATTEN_MAX_ROUNDS: usize = 10;

/// Makes a map combinatorially flat by subdividing: the coordinate plane
/// carrying an offending image gains every diagonal image direction as a
/// ray, and source cones whose images then straddle new walls are stellarly
/// split along the preimages. Images are tracked in the coordinates of the
/// original target, which stay meaningful across refinements. Supported for
/// offending data of rank at most 2; gives up after a bounded number of
/// rounds.
pub fn flatten(f: &ComplexMap) -> Result<Flattening, Error> {
    let mut src = f.source.clone();
    let mut src_ref = ComplexMap::identity(&f.source);
    let mut tgt = f.target.clone();
    let mut tgt_ref = ComplexMap::identity(&f.target);
    // geometric images in original target coordinates
    let mut geo: Vec<LatticeVector> = f.ray_images.clone();

    let abstract_images = |geo: &[LatticeVector],
                           tgt: &ConeComplex,
                           tgt_ref: &ComplexMap|
     -> Result<Vec<LatticeVector>, Error> {
        geo.iter()
            .map(|v| {
                if v.is_zero() {
                    Ok(LatticeVector::zero(tgt.ray_count()))
                } else {
                    tgt_ref.lift_point(v)
                }
            })
            .collect()
    };

    for round in 0..=FLATTEN_MAX_ROUNDS {
        // repair source cones whose images straddle several target cones
        let mut current = loop {
            let abs = abstract_images(&geo, &tgt, &tgt_ref)?;
            let candidate = assemble_map_allowing_straddle(src.clone(), tgt.clone(), abs)?;
            let Some(cone) = find_straddling_cone(&candidate) else {
                break candidate;
            };
            if cone.len() != 2 {
                return Err(Error::invalid(
                    "straddling source cone of dimension != 2; flattening unsupported",
                ));
            }
            // a separating target ray, geometrically strictly inside the
            // image wedge
            let ga = &geo[cone[0]];
            let gb = &geo[cone[1]];
            let mut split_ray: Option<(Rat, Rat)> = None;
            for j in 0..tgt.ray_count() {
                let g_j = &tgt_ref.ray_images[j];
                if let Some((alpha, beta)) = solve_two_column(ga, gb, g_j) {
                    if alpha.is_positive() && beta.is_positive() {
                        split_ray = Some((alpha, beta));
                        break;
                    }
                }
            }
            let Some((alpha, beta)) = split_ray else {
                return Err(Error::invalid(
                    "straddling image with no separating target ray; flattening unsupported",
                ));
            };
            let dir = RatVector::new(
                (0..src.ray_count())
                    .map(|i| {
                        if i == cone[0] {
                            alpha.clone()
                        } else if i == cone[1] {
                            beta.clone()
                        } else {
                            Rat::zero()
                        }
                    })
                    .collect(),
            );
            let (w, _) = dir.clear_denominators();
            let (w, _) = primitive_decompose(&w)?;
            let mut new_geo = LatticeVector::zero(tgt_ref.target.ray_count());
            for i in 0..src.ray_count() {
                if !w.coord(i).is_zero() {
                    new_geo = new_geo.add(&geo[i].scale(w.coord(i)));
                }
            }
            let (new_src, step) = stellar_subdivide(&src, &w)?;
            src_ref = compose_refinement(&step, &src_ref)?;
            src = new_src;
            geo.push(new_geo);
        };
        if is_combinatorially_flat(&current).is_flat() {
            current = ComplexMap::new(current.source, current.target, current.ray_images)?;
            return Ok(Flattening {
                map: current,
                source_refinement: src_ref,
                target_refinement: tgt_ref,
                rounds: round,
            });
        }
        if round == FLATTEN_MAX_ROUNDS {
            break;
        }
        // refine the plane carrying the first offending image
        let FlatVerdict::Offending { cone } = is_combinatorially_flat(&current) else {
            unreachable!()
        };
        let u = current.image_support(&cone);
        if u.len() != 2 {
            return Err(Error::invalid(format!(
                "offending image spans a face of dimension {}; flattening supports rank 2 only",
                u.len()
            )));
        }
        let (a, b) = (u[0], u[1]);
        let mut diagonals: BTreeSet<LatticeVector> = BTreeSet::new();
        for v in &current.ray_images {
            let s = v.support();
            if s.len() == 2 && s[0] == a && s[1] == b {
                diagonals.insert(primitive_decompose(v)?.0);
            }
        }
        if diagonals.is_empty() {
            return Err(Error::invalid(
                "offending plane has no diagonal image; flattening unsupported",
            ));
        }
        let (new_target, tgt_step) = refine_plane(&tgt, a, b, diagonals.into_iter().collect())?;
        tgt_ref = compose_refinement(&tgt_step, &tgt_ref)?;
        tgt = new_target;
    }
    Err(Error::FlatteningBudget(FLATTEN_MAX_ROUNDS))
}

/// First source cone whose image support is not a single target cone.
fn find_straddling_cone(f: &ComplexMap) -> Option<Vec<usize>> {
    f.source
        .cones
        .iter()
        .find(|c| !f.target.contains_cone(&f.image_support(c)))
        .cloned()
}

/// Refines the coordinate plane `O_{a,b}` of a complex by inserting the
/// given primitive diagonal rays, fanning every cone containing `{a, b}`
/// along the angularly sorted chain. Returns the refined complex and the
/// refinement map.
fn refine_plane(
    complex: &ConeComplex,
    a: usize,
    b: usize,
    diagonals: Vec<LatticeVector>,
) -> Result<(ConeComplex, ComplexMap), Error> {
    if !complex.contains_cone(&[a, b]) {
        return Err(Error::OutsideSupport);
    }
    let r = complex.ray_count();
    // sort diagonals by angle from the a-axis: x before y iff det(x, y) > 0
    let mut diags = diagonals;
    diags.sort_by(|x, y| {
        // x before y iff det(x, y) > 0 (x angularly closer to the a-axis)
        let det = x.coord(a) * y.coord(b) - x.coord(b) * y.coord(a);
        Int::zero().cmp(&det)
    });
    // chain of ray ids along the plane: a, diagonals, b
    let mut chain: Vec<usize> = vec![a];
    chain.extend(r..r + diags.len());
    chain.push(b);
    let mut maximal: Vec<Vec<usize>> = Vec::new();
    for c in complex.maximal_cones() {
        if !(c.contains(&a) && c.contains(&b)) {
            maximal.push(c);
            continue;
        }
        let rest: Vec<usize> = c.iter().cloned().filter(|&i| i != a && i != b).collect();
        for w in chain.windows(2) {
            let mut sub = rest.clone();
            sub.push(w[0]);
            sub.push(w[1]);
            sub.sort_unstable();
            maximal.push(sub);
        }
    }
    let refined = ConeComplex::new(r + diags.len(), &maximal)?;
    let mut images: Vec<LatticeVector> = (0..r).map(|i| LatticeVector::unit(r, i)).collect();
    images.extend(diags);
    let map = ComplexMap::new(refined.clone(), complex.clone(), images)?;
    Ok((refined, map))
}

/// Builds a map without the single-cone-image validity requirement, so that
/// straddling cones can be repaired afterwards.
fn assemble_map_allowing_straddle(
    source: ConeComplex,
    target: ConeComplex,
    ray_images: Vec<LatticeVector>,
) -> Result<ComplexMap, Error> {
    if ray_images.len() != source.ray_count() {
        return Err(Error::invalid("one image per source ray required"));
    }
    Ok(ComplexMap {
        source,
        target,
        ray_images,
    })
}

fn solve_two_column(
    a: &LatticeVector,
    b: &LatticeVector,
    target: &LatticeVector,
) -> Option<(Rat, Rat)> {
    let n = a.dim();
    let mut m = RatMatrix::zero(n, 2);
    for i in 0..n {
        m.set(i, 0, Rat::from_integer(a.coord(i).clone()));
        m.set(i, 1, Rat::from_integer(b.coord(i).clone()));
    }
    let x = linalg::solve(&m, &target.to_rat())?;
    let combo = a
        .to_rat()
        .scale(x.coord(0))
        .add(&b.to_rat().scale(x.coord(1)));
    if combo == target.to_rat() {
        Some((x.coord(0).clone(), x.coord(1).clone()))
    } else {
        None
    }
}

/// Stellar subdivision of a complex at a primitive lattice point of its
/// support with minimal cone of dimension at least 2. Returns the refined
/// complex and the refinement map onto the original.
pub fn stellar_subdivide(
    complex: &ConeComplex,
    rho: &LatticeVector,
) -> Result<(ConeComplex, ComplexMap), Error> {
    let u = rho.support();
    if u.len() < 2 {
        return Err(Error::invalid("stellar ray already lies on a ray"));
    }
    if !complex.contains_cone(&u) {
        return Err(Error::OutsideSupport);
    }
    let r = complex.ray_count();
    let new_ray = r;
    let mut maximal: Vec<Vec<usize>> = Vec::new();
    for c in complex.maximal_cones() {
        if !u.iter().all(|i| c.contains(i)) {
            maximal.push(c);
            continue;
        }
        for &drop in &u {
            let mut sub: Vec<usize> = c.iter().cloned().filter(|&i| i != drop).collect();
            sub.push(new_ray);
            sub.sort_unstable();
            maximal.push(sub);
        }
    }
    let refined = ConeComplex::new(r + 1, &maximal)?;
    let mut images: Vec<LatticeVector> = (0..r).map(|i| LatticeVector::unit(r, i)).collect();
    images.push(rho.clone());
    let map = ComplexMap::new(refined.clone(), complex.clone(), images)?;
    Ok((refined, map))
}

/// Composes two refinements `g : C'' → C'` and `h : C' → C` into `h ∘ g`.
fn compose_refinement(g: &ComplexMap, h: &ComplexMap) -> Result<ComplexMap, Error> {
    if g.target != h.source {
        return Err(Error::invalid("refinements do not compose"));
    }
    let mut images = Vec::with_capacity(g.source.ray_count());
    for v in &g.ray_images {
        let mut out = LatticeVector::zero(h.target.ray_count());
        for i in 0..h.source.ray_count() {
            if !v.coord(i).is_zero() {
                out = out.add(&h.ray_images[i].scale(v.coord(i)));
            }
        }
        images.push(out);
    }
    ComplexMap::new(g.source.clone(), h.target.clone(), images)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lv(c: &[i64]) -> LatticeVector {
        LatticeVector::from_ints(c)
    }

    fn rv(c: &[i64]) -> RatVector {
        LatticeVector::from_ints(c).to_rat()
    }

    #[test]
    fn disjointness_examples() {
        assert!(ContactMatrix::from_ints(&[vec![2, 0], vec![0, 3]]).is_disjoint());
        assert!(!ContactMatrix::from_ints(&[vec![1, 1]]).is_disjoint());
        assert!(ContactMatrix::from_ints(&[]).is_disjoint());
    }

    #[test]
    fn contact_points() {
        let one = ConeComplex::one_ray();
        let (x, cone) = contact_lattice_point(&[Int::from(2)], &one).unwrap();
        assert_eq!(x, lv(&[2]));
        assert_eq!(cone, vec![0]);

        let orthant = ConeComplex::orthant(2);
        let (x, cone) = contact_lattice_point(&[Int::from(1), Int::from(1)], &orthant).unwrap();
        assert_eq!(x, lv(&[1, 1]));
        assert_eq!(cone, vec![0, 1]);

        // two rays with no 2-cone
        let broken = ConeComplex::new(2, &[vec![0], vec![1]]).unwrap();
        assert!(matches!(
            contact_lattice_point(&[Int::from(1), Int::from(1)], &broken),
            Err(Error::UnsupportedContact)
        ));
    }

    /// The orthant subdivided by the diagonal ray (1,1): three rays, two
    /// 2-cones, mapping onto the plain orthant.
    fn subdivided_orthant() -> ComplexMap {
        let source = ConeComplex::new(3, &[vec![0, 2], vec![1, 2]]).unwrap();
        let target = ConeComplex::orthant(2);
        ComplexMap::new(source, target, vec![lv(&[1, 0]), lv(&[0, 1]), lv(&[1, 1])]).unwrap()
    }

    #[test]
    fn canonical_lift_diagonal() {
        let f = subdivided_orthant();
        let m = ContactMatrix::from_ints(&[vec![1, 1]]);
        let lifted = canonical_lift(&m, &f).unwrap();
        assert_eq!(
            lifted.rows,
            vec![vec![Int::from(0), Int::from(0), Int::from(1)]]
        );
        assert!(lifted.is_disjoint());
    }

    #[test]
    fn canonical_lift_identity() {
        let c = ConeComplex::orthant(2);
        let id = ComplexMap::identity(&c);
        let m = ContactMatrix::from_ints(&[vec![3, 0], vec![1, 2]]);
        let lifted = canonical_lift(&m, &id).unwrap();
        assert_eq!(lifted, m);
    }

    #[test]
    fn flatness_examples() {
        let c = ConeComplex::orthant(2);
        assert!(is_combinatorially_flat(&ComplexMap::identity(&c)).is_flat());

        // subdivided orthant onto the orthant: the diagonal maps onto a ray
        // that is not a cone of the target
        let f = subdivided_orthant();
        match is_combinatorially_flat(&f) {
            FlatVerdict::Offending { cone } => {
                assert!(cone == vec![0, 2] || cone == vec![2]);
            }
            v => panic!("expected an offending cone, got {v:?}"),
        }
        // the diagonal ray alone is offending too: its image is a ray of
        // the support that is not a cone of the target
        let diag_only = ComplexMap::new(
            ConeComplex::new(1, &[vec![0]]).unwrap(),
            ConeComplex::orthant(2),
            vec![lv(&[1, 1])],
        )
        .unwrap();
        assert!(!is_combinatorially_flat(&diag_only).is_flat());

        // blowup fan onto the ray by coordinate sums: flat
        let source = ConeComplex::new(3, &[vec![0, 2], vec![1, 2]]).unwrap();
        let target = ConeComplex::one_ray();
        let g = ComplexMap::new(source, target, vec![lv(&[1]), lv(&[1]), lv(&[2])]).unwrap();
        assert!(is_combinatorially_flat(&g).is_flat());
    }

    #[test]
    fn fiber_of_orthant_sum() {
        let c = ConeComplex::orthant(2);
        let f = ComplexMap::new(c, ConeComplex::one_ray(), vec![lv(&[1]), lv(&[1])]).unwrap();
        let fiber = fiber_at_one(&f).unwrap();
        // cells: the two vertices and the segment between them
        assert_eq!(fiber.cells.len(), 3);
        let maximal = fiber.maximal_cells();
        assert_eq!(maximal.len(), 1);
        let seg = &fiber.cells[maximal[0]];
        assert_eq!(seg.dim, 1);
        assert_eq!(seg.vertices.len(), 2);
        assert!(fiber.is_compact());
    }

    #[test]
    fn fiber_of_cone_over_triangle() {
        let f = cone_over_simplicial(3, &[vec![0, 1, 2]]).unwrap();
        let fiber = fiber_at_one(&f).unwrap();
        // 3 vertices + 3 edges + 1 triangle
        assert_eq!(fiber.cells.len(), 7);
        assert!(fiber.is_compact());
        let maximal = fiber.maximal_cells();
        assert_eq!(maximal.len(), 1);
        assert_eq!(fiber.cells[maximal[0]].dim, 2);
    }

    #[test]
    fn fiber_with_horizontal_ray_is_unbounded() {
        let c = ConeComplex::orthant(2);
        let f = ComplexMap::new(c, ConeComplex::one_ray(), vec![lv(&[1]), lv(&[0])]).unwrap();
        let fiber = fiber_at_one(&f).unwrap();
        assert!(!fiber.is_compact());
        assert!(fiber.cells.iter().any(|c| !c.rays.is_empty()));
    }

    #[test]
    fn star_at_points() {
        let c = ConeComplex::orthant(2);
        // origin: the star is the whole complex
        let s = c.star_at(&rv(&[0, 0])).unwrap();
        assert!(s.minimal_cone.is_empty());
        assert_eq!(s.link.ray_count(), 2);
        assert_eq!(s.tangent_rank(), 2);

        // interior of a ray: the link is the other ray; both signs along
        // the ray are tangent
        let s = c.star_at(&rv(&[1, 0])).unwrap();
        assert_eq!(s.minimal_cone, vec![0]);
        assert_eq!(s.link_ray_ids, vec![1]);
        assert!(c.is_tangent_at(&rv(&[1, 0]), &lv(&[1, 0])).unwrap());
        assert!(c.is_tangent_at(&rv(&[1, 0]), &lv(&[-1, 0])).unwrap());
        assert!(c.is_tangent_at(&rv(&[1, 0]), &lv(&[0, 1])).unwrap());
        assert!(!c.is_tangent_at(&rv(&[1, 0]), &lv(&[0, -1])).unwrap());

        // interior of the maximal cone: everything tangent
        let s = c.star_at(&rv(&[1, 1])).unwrap();
        assert_eq!(s.minimal_cone, vec![0, 1]);
        assert!(s.link_ray_ids.is_empty());
        assert!(c.is_tangent_at(&rv(&[1, 1]), &lv(&[-3, -5])).unwrap());
    }

    #[test]
    fn lift_preserves_total_tangency() {
        let f = subdivided_orthant();
        let m = ContactMatrix::from_ints(&[vec![2, 3], vec![4, 0]]);
        let lifted = canonical_lift(&m, &f).unwrap();
        // pullback multiplicity of target divisor j on source ray i is the
        // j-th coordinate of the image of ray i
        for (orig, new) in m.rows.iter().zip(&lifted.rows) {
            for j in 0..2 {
                let mut total = Int::zero();
                for (i, c) in new.iter().enumerate() {
                    total += c * f.ray_images[i].coord(j);
                }
                assert_eq!(total, orig[j]);
            }
        }
    }

    #[test]
    fn flatten_wedge_map() {
        let source = ConeComplex::orthant(2);
        let target = ConeComplex::orthant(2);
        let f = ComplexMap::new(source, target, vec![lv(&[1, 0]), lv(&[1, 2])]).unwrap();
        assert!(!is_combinatorially_flat(&f).is_flat());
        let flat = flatten(&f).unwrap();
        assert!(is_combinatorially_flat(&flat.map).is_flat());
        assert!(flat.rounds >= 1);
        // the target gained the ray (1,2)
        assert_eq!(flat.map.target.ray_count(), 3);
    }

    #[test]
    fn flatten_interior_wedge() {
        let source = ConeComplex::orthant(2);
        let target = ConeComplex::orthant(2);
        let f = ComplexMap::new(source, target, vec![lv(&[2, 1]), lv(&[1, 2])]).unwrap();
        let flat = flatten(&f).unwrap();
        assert!(is_combinatorially_flat(&flat.map).is_flat());
        assert_eq!(flat.map.target.ray_count(), 4);
    }

    #[test]
    fn flatten_with_source_splitting() {
        // source: two 2-cones; the second one's image straddles the wall
        // created for the first
        let source = ConeComplex::new(4, &[vec![0, 1], vec![2, 3]]).unwrap();
        let target = ConeComplex::orthant(2);
        let f = ComplexMap::new(
            source,
            target,
            vec![lv(&[1, 0]), lv(&[1, 2]), lv(&[2, 1]), lv(&[0, 1])],
        )
        .unwrap();
        let flat = flatten(&f).unwrap();
        assert!(is_combinatorially_flat(&flat.map).is_flat());
        // the straddling cone was split: the source gained rays
        assert!(flat.map.source.ray_count() > 4);
        // refinements compose back onto the originals
        assert_eq!(flat.source_refinement.target, f.source);
        assert_eq!(flat.target_refinement.target, f.target);
    }

    #[test]
    fn flatten_identity_is_noop() {
        let c = ConeComplex::new(3, &[vec![0, 1], vec![1, 2]]).unwrap();
        let id = ComplexMap::identity(&c);
        let flat = flatten(&id).unwrap();
        assert_eq!(flat.rounds, 0);
        assert_eq!(flat.map.source, c);
    }
}
