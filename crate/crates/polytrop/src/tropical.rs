//! Stars and Chow 1-complexes: balanced weighted 1-complexes embedded in a
//! carrier, with per-vertex curve class and marking decorations. Includes
//! the balancing checks, recession (asymptotic) stars, stability and
//! stabilization, rigidity of embedded types in a compact carrier, and the
//! rank-2 duality between plane tropical curves and lifted subdivisions of
//! their Newton polygons.

use crate::dualcomplex::{HRep, PolyComplex};
use crate::error::Error;
use crate::hull::convex_hull;
use crate::lattice::{primitive_decompose, LatticeVector, RatVector};
use crate::linalg::{self, RatMatrix};
use crate::lp::Constraint;
use crate::polytope::LatticePolytope;
use crate::subdivision::Subdivision;
use crate::{Int, Rat};
use num::{One, Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};

/// The abstract model of effective curve classes: the free commutative
/// monoid on `rank` generators, with an integer intersection pairing against
/// the divisor coordinates of the ambient space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveClassContext {
    /// Number of semigroup generators.
    pub rank: usize,
    /// Rows indexed by divisor coordinates, columns by generators.
    pub intersection: Vec<Vec<Int>>,
}

/// An element of the curve class semigroup.
pub type CurveClass = Vec<Int>;

impl CurveClassContext {
    pub fn new(rank: usize, intersection: Vec<Vec<Int>>) -> Result<Self, Error> {
        for row in &intersection {
            if row.len() != rank {
                return Err(Error::invalid("intersection row length must equal the rank"));
            }
        }
        Ok(CurveClassContext { rank, intersection })
    }

    pub fn from_ints(rank: usize, rows: &[Vec<i64>]) -> Self {
        CurveClassContext {
            rank,
            intersection: rows
                .iter()
                .map(|r| r.iter().map(|&c| Int::from(c)).collect())
                .collect(),
        }
    }

    /// The trivial context (rank 0) for traditionally balanced work in an
    /// ambient space with `divisors` coordinates.
    pub fn trivial(divisors: usize) -> Self {
        CurveClassContext {
            rank: 0,
            intersection: vec![Vec::new(); divisors],
        }
    }

    pub fn divisor_count(&self) -> usize {
        self.intersection.len()
    }

    pub fn zero_class(&self) -> CurveClass {
        vec![Int::zero(); self.rank]
    }

    /// The vector `(beta . E_1, ..., beta . E_m)`.
    pub fn pairing(&self, beta: &CurveClass) -> LatticeVector {
        assert_eq!(beta.len(), self.rank);
        LatticeVector::new(
            self.intersection
                .iter()
                .map(|row| row.iter().zip(beta).map(|(a, b)| a * b).sum())
                .collect(),
        )
    }

    /// Componentwise order on the free monoid.
    pub fn class_leq(&self, a: &CurveClass, b: &CurveClass) -> bool {
        a.iter().zip(b).all(|(x, y)| x <= y)
    }

    /// All ways to write `total` as an ordered sum of `parts` classes.
    pub fn decompositions(&self, total: &CurveClass, parts: usize) -> Vec<Vec<CurveClass>> {
        fn splits(total: &Int, parts: usize) -> Vec<Vec<Int>> {
            if parts == 1 {
                return vec![vec![total.clone()]];
            }
            let mut out = Vec::new();
            let mut k = Int::zero();
            while &k <= total {
                for mut rest in splits(&(total - &k), parts - 1) {
                    let mut v = vec![k.clone()];
                    v.append(&mut rest);
                    out.push(v);
                }
                k += 1;
            }
            out
        }
        // per-coordinate compositions, then cartesian product
        let mut acc: Vec<Vec<CurveClass>> = vec![vec![self.zero_class(); parts]];
        for (coord, t) in total.iter().enumerate() {
            let coord_splits = splits(t, parts);
            let mut next = Vec::new();
            for prefix in &acc {
                for split in &coord_splits {
                    let mut assignment = prefix.clone();
                    for (p, val) in split.iter().enumerate() {
                        assignment[p][coord] = val.clone();
                    }
                    next.push(assignment);
                }
            }
            acc = next;
        }
        acc
    }
}

/// The balancing direction `v_beta = -(beta.E_1, ..., beta.E_m)`.
pub fn balancing_direction(beta: &CurveClass, ctx: &CurveClassContext) -> LatticeVector {
    ctx.pairing(beta).neg()
}

/// A star: a base point, weighted tangent vectors, a curve class and a
/// marking set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Star {
    pub base: RatVector,
    pub vectors: Vec<LatticeVector>,
    pub beta: CurveClass,
    pub markings: BTreeSet<u32>,
}

impl Star {
    pub fn traditional(base: RatVector, vectors: Vec<LatticeVector>) -> Self {
        Star {
            base,
            vectors,
            beta: Vec::new(),
            markings: BTreeSet::new(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.base.dim()
    }

    /// Canonical form of the tangent data: parallel vectors merged (weights
    /// added per primitive direction) and sorted. Two stars with equal
    /// canonical vectors have the same Newton data.
    pub fn canonical_vectors(&self) -> Vec<LatticeVector> {
        merge_parallel(&self.vectors)
    }

    /// Equivalence up to translation: equal merged tangent data, equal
    /// class, equal marking cardinality.
    pub fn equivalent(&self, other: &Star) -> bool {
        self.canonical_vectors() == other.canonical_vectors()
            && self.beta == other.beta
            && self.markings.len() == other.markings.len()
    }

    /// Bivalent after merging: exactly two antipodal merged vectors.
    pub fn is_bivalent(&self) -> bool {
        let m = self.canonical_vectors();
        m.len() == 2 && m[0] == m[1].neg()
    }
}

/// Merges parallel vectors: weights are added along each primitive
/// direction; output sorted lexicographically.
pub fn merge_parallel(vectors: &[LatticeVector]) -> Vec<LatticeVector> {
    let mut acc: BTreeMap<LatticeVector, Int> = BTreeMap::new();
    for v in vectors {
        if v.is_zero() {
            continue;
        }
        let (p, w) = primitive_decompose(v).expect("nonzero vector");
        *acc.entry(p).or_insert_with(Int::zero) += w;
    }
    acc.into_iter().map(|(p, w)| p.scale(&w)).collect()
}

/// Balancing of a star with respect to its class: for every divisor
/// coordinate, the coordinate sum of the tangent vectors equals the
/// intersection number. Equivalently, appending the balancing direction
/// makes the vectors sum to zero.
pub fn is_balanced(star: &Star, ctx: &CurveClassContext) -> bool {
    let n = star.ambient_dim();
    if ctx.divisor_count() != n {
        return false;
    }
    let mut sum = LatticeVector::zero(n);
    for v in &star.vectors {
        sum = sum.add(v);
    }
    sum == ctx.pairing(&star.beta)
}

/// A vertex of a Chow 1-complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveVertex {
    pub position: RatVector,
    pub beta: CurveClass,
    pub markings: BTreeSet<u32>,
    pub genus: Option<u32>,
    /// Index of the carrier cell this vertex is assigned to, when embedded
    /// in a polyhedral complex.
    pub cell: Option<usize>,
}

/// A bounded edge with a positive integer weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveEdge {
    pub ends: (usize, usize),
    pub weight: u64,
    pub cell: Option<usize>,
}

/// An unbounded ray attached to a vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveLeg {
    pub vertex: usize,
    /// Primitive direction.
    pub direction: LatticeVector,
    pub weight: u64,
    pub cell: Option<usize>,
}

/// A Chow 1-complex: a weighted embedded 1-complex with per-vertex curve
/// class and marking decorations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropicalCurve {
    pub vertices: Vec<CurveVertex>,
    pub edges: Vec<CurveEdge>,
    pub legs: Vec<CurveLeg>,
}

impl TropicalCurve {
    pub fn ambient_dim(&self) -> usize {
        self.vertices.first().map_or(0, |v| v.position.dim())
    }

    /// Outgoing weighted tangent vectors at a vertex: primitive directions
    /// of incident edges and legs scaled by their weights.
    pub fn tangents_at(&self, v: usize) -> Result<Vec<LatticeVector>, Error> {
        let mut out = Vec::new();
        for e in &self.edges {
            let other = if e.ends.0 == v {
                e.ends.1
            } else if e.ends.1 == v {
                e.ends.0
            } else {
                continue;
            };
            let delta = self.vertices[other].position.sub(&self.vertices[v].position);
            if delta.is_zero() {
                return Err(Error::invalid("edge endpoints coincide"));
            }
            let prim = delta.primitive_direction()?;
            out.push(prim.scale(&Int::from(e.weight as i64)));
        }
        for l in &self.legs {
            if l.vertex == v {
                out.push(l.direction.scale(&Int::from(l.weight as i64)));
            }
        }
        Ok(out)
    }

    pub fn valence(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|e| e.ends.0 == v || e.ends.1 == v)
            .count()
            + self.legs.iter().filter(|l| l.vertex == v).count()
    }

    /// The star at a vertex.
    pub fn star_at(&self, v: usize) -> Result<Star, Error> {
        Ok(Star {
            base: self.vertices[v].position.clone(),
            vectors: self.tangents_at(v)?,
            beta: self.vertices[v].beta.clone(),
            markings: self.vertices[v].markings.clone(),
        })
    }

    /// First Betti number of the underlying graph (assumes connectivity of
    /// each component is irrelevant: E - V + #components).
    pub fn first_betti(&self) -> usize {
        let v = self.vertices.len();
        let e = self.edges.len();
        let comps = self.component_count();
        e + comps - v
    }

    pub fn component_count(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.vertices.len()).collect();
        fn find(parent: &mut Vec<usize>, x: usize) -> usize {
            if parent[x] != x {
                let r = find(parent, parent[x]);
                parent[x] = r;
            }
            parent[x]
        }
        for e in &self.edges {
            let a = find(&mut parent, e.ends.0);
            let b = find(&mut parent, e.ends.1);
            parent[a] = b;
        }
        (0..self.vertices.len())
            .filter(|&i| find(&mut parent, i) == i)
            .count()
    }
}

/// Verdict of the curve checker.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CurveVerdict {
    Valid,
    Offending { vertex: usize, reason: String },
}

impl CurveVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, CurveVerdict::Valid)
    }
}

/// Validates embedding consistency, weights, and per-vertex balancing with
/// respect to the per-vertex classes.
pub fn check_curve(curve: &TropicalCurve, ctx: &CurveClassContext) -> CurveVerdict {
    let n = curve.ambient_dim();
    for (i, v) in curve.vertices.iter().enumerate() {
        if v.position.dim() != n {
            return CurveVerdict::Offending {
                vertex: i,
                reason: "inconsistent ambient dimension".into(),
            };
        }
        if v.beta.len() != ctx.rank {
            return CurveVerdict::Offending {
                vertex: i,
                reason: "curve class has wrong rank".into(),
            };
        }
    }
    for (i, w) in curve.vertices.iter().enumerate() {
        for v in curve.vertices.iter().skip(i + 1) {
            if w.position == v.position {
                return CurveVerdict::Offending {
                    vertex: i,
                    reason: "two vertices share a position".into(),
                };
            }
        }
    }
    for e in &curve.edges {
        if e.weight == 0 {
            return CurveVerdict::Offending {
                vertex: e.ends.0,
                reason: "edge of weight zero".into(),
            };
        }
    }
    for l in &curve.legs {
        if l.weight == 0 || primitive_decompose(&l.direction).map(|(_, w)| !w.is_one()).unwrap_or(true)
        {
            return CurveVerdict::Offending {
                vertex: l.vertex,
                reason: "leg direction must be primitive with positive weight".into(),
            };
        }
    }
    // embedded: edges and legs intersect only in shared endpoints
    if let Some((i, reason)) = embedding_conflict(curve) {
        return CurveVerdict::Offending { vertex: i, reason };
    }
    // balancing at every vertex
    for i in 0..curve.vertices.len() {
        let star = match curve.star_at(i) {
            Ok(s) => s,
            Err(e) => {
                return CurveVerdict::Offending {
                    vertex: i,
                    reason: e.to_string(),
                }
            }
        };
        if !is_balanced(&star, ctx) {
            return CurveVerdict::Offending {
                vertex: i,
                reason: "balancing fails".into(),
            };
        }
    }
    CurveVerdict::Valid
}

/// A segment or ray for the embedding check.
struct Arc {
    start: RatVector,
    dir: RatVector,
    /// None for a ray.
    length: Option<Rat>,
    ends: (usize, Option<usize>),
}

fn embedding_conflict(curve: &TropicalCurve) -> Option<(usize, String)> {
    let mut arcs: Vec<Arc> = Vec::new();
    for e in &curve.edges {
        let a = &curve.vertices[e.ends.0].position;
        let b = &curve.vertices[e.ends.1].position;
        arcs.push(Arc {
            start: a.clone(),
            dir: b.sub(a),
            length: Some(Rat::one()),
            ends: (e.ends.0, Some(e.ends.1)),
        });
    }
    for l in &curve.legs {
        arcs.push(Arc {
            start: curve.vertices[l.vertex].position.clone(),
            dir: l.direction.to_rat(),
            length: None,
            ends: (l.vertex, None),
        });
    }
    for i in 0..arcs.len() {
        for j in (i + 1)..arcs.len() {
            if arcs_conflict(&arcs[i], &arcs[j]) {
                return Some((arcs[i].ends.0, format!("arcs {i} and {j} overlap or cross")));
            }
        }
        // interior of an arc may not contain a vertex position
        for (vi, v) in curve.vertices.iter().enumerate() {
            if Some(vi) == arcs[i].ends.1 || vi == arcs[i].ends.0 {
                continue;
            }
            if let Some(t) = arc_parameter(&arcs[i], &v.position) {
                let inside = t.is_positive()
                    && arcs[i].length.as_ref().map_or(true, |len| &t < len);
                if inside {
                    return Some((vi, "vertex lies in the interior of an arc".into()));
                }
            }
        }
    }
    None
}

/// Parameter of `p` on the arc's line if it lies on it.
fn arc_parameter(arc: &Arc, p: &RatVector) -> Option<Rat> {
    let delta = p.sub(&arc.start);
    // delta = t * dir
    let n = delta.dim();
    let mut t: Option<Rat> = None;
    for i in 0..n {
        let d = arc.dir.coord(i);
        if d.is_zero() {
            if !delta.coord(i).is_zero() {
                return None;
            }
        } else {
            let ti = delta.coord(i) / d;
            match &t {
                None => t = Some(ti),
                Some(prev) if *prev == ti => {}
                _ => return None,
            }
        }
    }
    t
}

/// Two arcs conflict when their intersection is larger than a shared
/// endpoint.
fn arcs_conflict(a: &Arc, b: &Arc) -> bool {
    let n = a.start.dim();
    let dirs = vec![a.dir.clone(), b.dir.clone()];
    if linalg::rank_of(&dirs) == 2 {
        // skew or crossing: solve a.start + t a.dir = b.start + u b.dir
        let mut m = RatMatrix::zero(n, 2);
        for i in 0..n {
            m.set(i, 0, a.dir.coord(i).clone());
            m.set(i, 1, -b.dir.coord(i).clone());
        }
        let rhs = b.start.sub(&a.start);
        let Some(sol) = linalg::solve(&m, &rhs) else {
            return false;
        };
        // verify (the system may be inconsistent in n > 2)
        let lhs = a.dir.scale(sol.coord(0)).sub(&b.dir.scale(sol.coord(1)));
        if lhs != rhs {
            return false;
        }
        let (t, u) = (sol.coord(0).clone(), sol.coord(1).clone());
        let in_a = !t.is_negative() && a.length.as_ref().map_or(true, |l| &t <= l);
        let in_b = !u.is_negative() && b.length.as_ref().map_or(true, |l| &u <= l);
        if !(in_a && in_b) {
            return false;
        }
        // a meeting point must be an endpoint of both arcs
        let end_a = t.is_zero() || a.length.as_ref().map_or(false, |l| &t == l);
        let end_b = u.is_zero() || b.length.as_ref().map_or(false, |l| &u == l);
        !(end_a && end_b)
    } else {
        // parallel: conflict iff collinear with an overlap of positive length
        let Some(t0) = arc_parameter(a, &b.start) else {
            return false;
        };
        // b.dir = s * a.dir
        let s = {
            let i = (0..n).find(|&i| !a.dir.coord(i).is_zero()).unwrap();
            b.dir.coord(i) / a.dir.coord(i)
        };
        let t1 = b.length.as_ref().map(|l| &t0 + &s * l);
        // b as an interval [lo, hi] (or half-line) in a-parameters
        let (lo, hi) = if s.is_positive() {
            (Some(t0), t1)
        } else if b.length.is_some() {
            (t1, Some(t0))
        } else {
            (None, Some(t0))
        };
        // a occupies [0, len_a] (or [0, inf))
        let a_hi = a.length.clone();
        // overlap of positive length?
        let start = match &lo {
            None => Rat::zero(),
            Some(l) => {
                if l.is_negative() {
                    Rat::zero()
                } else {
                    l.clone()
                }
            }
        };
        let end: Option<Rat> = match (&hi, &a_hi) {
            (None, None) => None,
            (None, Some(x)) => Some(x.clone()),
            (Some(y), None) => Some(y.clone()),
            (Some(y), Some(x)) => Some(y.min(x).clone()),
        };
        match end {
            None => true, // both unbounded in the same direction
            Some(e) => e > start,
        }
    }
}

/// The recession star of a curve: one merged ray per primitive direction at
/// infinity with accumulated weights, total class, and the union of the
/// marking sets; based at the origin.
pub fn asymptotic_star(curve: &TropicalCurve, ctx: &CurveClassContext) -> Star {
    let n = curve.ambient_dim();
    let legs: Vec<LatticeVector> = curve
        .legs
        .iter()
        .map(|l| l.direction.scale(&Int::from(l.weight as i64)))
        .collect();
    let mut beta = ctx.zero_class();
    let mut markings = BTreeSet::new();
    for v in &curve.vertices {
        for (i, c) in v.beta.iter().enumerate() {
            beta[i] += c;
        }
        markings.extend(v.markings.iter().cloned());
    }
    Star {
        base: RatVector::zero(n),
        vectors: merge_parallel(&legs),
        beta,
        markings,
    }
}

/// Stability: no free vertices (valence 0) and no linear bivalent vertices
/// with curve class zero. A bivalent vertex is linear when its two tangent
/// vectors are exactly opposite; with a carrier present, both flags must
/// also lie in the cell of the vertex.
pub fn is_stable(curve: &TropicalCurve) -> Result<bool, Error> {
    Ok(unstable_vertex(curve)?.is_none())
}

fn unstable_vertex(curve: &TropicalCurve) -> Result<Option<usize>, Error> {
    for i in 0..curve.vertices.len() {
        let beta_zero = curve.vertices[i].beta.iter().all(|c| c.is_zero());
        if !beta_zero {
            continue;
        }
        let tangents = curve.tangents_at(i)?;
        if tangents.is_empty() {
            return Ok(Some(i));
        }
        if tangents.len() == 2 && tangents[0] == tangents[1].neg() {
            // linear requires a neighborhood inside one cell: with cell
            // assignments, all three cells must agree
            let vcell = curve.vertices[i].cell;
            let mut cells = vec![vcell];
            for e in &curve.edges {
                if e.ends.0 == i || e.ends.1 == i {
                    cells.push(e.cell);
                }
            }
            for l in &curve.legs {
                if l.vertex == i {
                    cells.push(l.cell);
                }
            }
            if cells.iter().all(|c| *c == cells[0]) {
                return Ok(Some(i));
            }
        }
    }
    Ok(None)
}

/// Erases free vertices and linear bivalent vertices with zero class,
/// merging their edges; errors when such a vertex carries markings. The
/// output is stable and the operation is idempotent.
pub fn stabilize(curve: &TropicalCurve) -> Result<TropicalCurve, Error> {
    let mut cur = curve.clone();
    loop {
        let Some(v) = unstable_vertex(&cur)? else {
            return Ok(cur);
        };
        if !cur.vertices[v].markings.is_empty() {
            return Err(Error::MarkedUnstableVertex);
        }
        let incident_edges: Vec<usize> = (0..cur.edges.len())
            .filter(|&e| cur.edges[e].ends.0 == v || cur.edges[e].ends.1 == v)
            .collect();
        let incident_legs: Vec<usize> = (0..cur.legs.len())
            .filter(|&l| cur.legs[l].vertex == v)
            .collect();
        let mut next = cur.clone();
        match (incident_edges.len(), incident_legs.len()) {
            (0, 0) => {
                // free vertex: drop it
            }
            (2, 0) => {
                let (e1, e2) = (incident_edges[0], incident_edges[1]);
                let w = next.edges[e1].weight;
                let other1 = if next.edges[e1].ends.0 == v {
                    next.edges[e1].ends.1
                } else {
                    next.edges[e1].ends.0
                };
                let other2 = if next.edges[e2].ends.0 == v {
                    next.edges[e2].ends.1
                } else {
                    next.edges[e2].ends.0
                };
                let cell = next.edges[e1].cell;
                let mut drop = vec![e1, e2];
                drop.sort_unstable();
                next.edges.remove(drop[1]);
                next.edges.remove(drop[0]);
                next.edges.push(CurveEdge {
                    ends: (other1.min(other2), other1.max(other2)),
                    weight: w,
                    cell,
                });
            }
            (1, 1) => {
                let e = incident_edges[0];
                let l = incident_legs[0];
                let w = next.edges[e].weight;
                let other = if next.edges[e].ends.0 == v {
                    next.edges[e].ends.1
                } else {
                    next.edges[e].ends.0
                };
                let dir = next.legs[l].direction.clone();
                let cell = next.edges[e].cell;
                next.legs.remove(l);
                next.edges.remove(e);
                next.legs.push(CurveLeg {
                    vertex: other,
                    direction: dir,
                    weight: w,
                    cell,
                });
            }
            (0, 2) => {
                return Err(Error::invalid(
                    "stabilization would erase the last vertex of a line",
                ));
            }
            _ => unreachable!("unstable vertex has valence 0 or 2"),
        }
        // remove the vertex and reindex
        next.vertices.remove(v);
        for e in &mut next.edges {
            if e.ends.0 > v {
                e.ends.0 -= 1;
            }
            if e.ends.1 > v {
                e.ends.1 -= 1;
            }
        }
        for l in &mut next.legs {
            if l.vertex > v {
                l.vertex -= 1;
            }
        }
        cur = next;
    }
}

/// Result of the rigidity computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RigidityVerdict {
    /// Dimension of the deformation space of the combinatorial type.
    pub dimension: usize,
}

impl RigidityVerdict {
    pub fn is_rigid(&self) -> bool {
        self.dimension == 0
    }
}

/// Rigidity of an embedded curve in a compact carrier complex: the linear
/// deformation space fixes each vertex to the affine span of its assigned
/// cell and each edge direction class, constrains vertex positions to the
/// closed cells, and measures the dimension of the resulting polyhedron.
/// Rigid means dimension zero.
pub fn is_rigid(curve: &TropicalCurve, carrier: &PolyComplex) -> Result<RigidityVerdict, Error> {
    let n = carrier.ambient_dim;
    let nv = curve.vertices.len();
    let vars = n * nv;

    // resolve cell assignments (minimal containing cells when absent)
    let mut vertex_cells: Vec<usize> = Vec::with_capacity(nv);
    for v in &curve.vertices {
        let cell = match v.cell {
            Some(c) => c,
            None => carrier
                .minimal_cell_containing(&v.position)
                .ok_or(Error::OutsideSupport)?,
        };
        if !carrier.cells[cell].contains(&v.position) {
            return Err(Error::invalid("vertex not in its assigned cell"));
        }
        vertex_cells.push(cell);
    }
    let mut edge_cells: Vec<usize> = Vec::with_capacity(curve.edges.len());
    for e in &curve.edges {
        let cell = match e.cell {
            Some(c) => c,
            None => {
                // minimal cell containing both endpoints
                let a = &curve.vertices[e.ends.0].position;
                let b = &curve.vertices[e.ends.1].position;
                let mut best: Option<usize> = None;
                for (ci, c) in carrier.cells.iter().enumerate() {
                    if c.contains(a) && c.contains(b) {
                        if best.map_or(true, |x| c.dim < carrier.cells[x].dim) {
                            best = Some(ci);
                        }
                    }
                }
                best.ok_or_else(|| Error::invalid("edge spans several carrier cells"))?
            }
        };
        edge_cells.push(cell);
    }
    if !carrier.is_compact() && curve.legs.is_empty() {
        // pointed carriers are fine as long as cells used are bounded
    }
    for l in &curve.legs {
        let cell = l
            .cell
            .ok_or_else(|| Error::invalid("legs require explicit cell assignments"))?;
        let c = &carrier.cells[cell];
        if c.is_bounded() {
            return Err(Error::invalid("leg assigned to a bounded cell"));
        }
        // direction must be a recession direction of the cell; checked via
        // membership of base + direction for a far multiple is skipped in
        // favor of the H-representation recession test below
        let h = polycell_hrep(c, n)?;
        let ok = h
            .ineqs
            .iter()
            .all(|(a, _)| !a.dot(&l.direction.to_rat()).is_negative())
            && h.eqs.iter().all(|(a, _)| a.dot(&l.direction.to_rat()).is_zero());
        if !ok {
            return Err(Error::invalid("leg direction leaves its cell"));
        }
    }

    // variable layout: x_{v,i} at index v * n + i
    let mut eq_rows: Vec<RatVector> = Vec::new();
    let mut ineqs: Vec<Constraint> = Vec::new();

    let push_eq = |row: Vec<Rat>, eq_rows: &mut Vec<RatVector>| {
        eq_rows.push(RatVector::new(row));
    };

    // vertex in affine span of its cell
    for (vi, v) in curve.vertices.iter().enumerate() {
        let cell = &carrier.cells[vertex_cells[vi]];
        let (base, dirs) = cell.affine_span();
        // equations: w . x = w . base for w in the orthogonal complement
        let dir_rows: Vec<RatVector> = dirs.clone();
        let complement = if dir_rows.is_empty() {
            // point cell: x = base
            (0..n)
                .map(|i| {
                    RatVector::new(
                        (0..n)
                            .map(|j| if i == j { Rat::one() } else { Rat::zero() })
                            .collect(),
                    )
                })
                .collect()
        } else {
            linalg::kernel_basis(&RatMatrix::from_rows(&dir_rows))
        };
        for w in complement {
            let mut row = vec![Rat::zero(); vars];
            for i in 0..n {
                row[vi * n + i] = w.coord(i).clone();
            }
            push_eq(row, &mut eq_rows);
            let _ = w.dot(&base);
        }
        let _ = v;
    }

    // edge direction classes fixed
    for e in &curve.edges {
        let a = &curve.vertices[e.ends.0].position;
        let b = &curve.vertices[e.ends.1].position;
        let d = b.sub(a).primitive_direction()?;
        // (x_b - x_a) orthogonal components vanish
        let d_row = vec![d.to_rat()];
        let complement = linalg::kernel_basis(&RatMatrix::from_rows(&d_row));
        for w in complement {
            let mut row = vec![Rat::zero(); vars];
            for i in 0..n {
                row[e.ends.1 * n + i] = w.coord(i).clone();
                row[e.ends.0 * n + i] = -w.coord(i).clone();
            }
            push_eq(row, &mut eq_rows);
        }
        // orientation preserved: d . (x_b - x_a) >= 0
        let mut row = vec![Rat::zero(); vars];
        for i in 0..n {
            row[e.ends.1 * n + i] = Rat::from_integer(d.coord(i).clone());
            row[e.ends.0 * n + i] = -Rat::from_integer(d.coord(i).clone());
        }
        ineqs.push(Constraint::new(RatVector::new(row), Rat::zero()));
    }

    // vertices stay in closed cells (their own and incident edge cells)
    let add_cell_constraints = |vi: usize, cell: usize, eq_rows: &mut Vec<RatVector>, ineqs: &mut Vec<Constraint>| -> Result<(), Error> {
        let h = polycell_hrep(&carrier.cells[cell], n)?;
        for (a, _) in &h.eqs {
            let mut row = vec![Rat::zero(); vars];
            for i in 0..n {
                row[vi * n + i] = a.coord(i).clone();
            }
            eq_rows.push(RatVector::new(row));
        }
        for (a, b) in &h.ineqs {
            let mut row = vec![Rat::zero(); vars];
            for i in 0..n {
                row[vi * n + i] = a.coord(i).clone();
            }
            ineqs.push(Constraint::new(RatVector::new(row), b.clone()));
        }
        Ok(())
    };
    for (vi, _) in curve.vertices.iter().enumerate() {
        add_cell_constraints(vi, vertex_cells[vi], &mut eq_rows, &mut ineqs)?;
    }
    for (ei, e) in curve.edges.iter().enumerate() {
        add_cell_constraints(e.ends.0, edge_cells[ei], &mut eq_rows, &mut ineqs)?;
        add_cell_constraints(e.ends.1, edge_cells[ei], &mut eq_rows, &mut ineqs)?;
    }

    // The given embedding is a point of the deformation polyhedron.
    let mut z: Vec<Rat> = Vec::with_capacity(vars);
    for v in &curve.vertices {
        z.extend(v.position.coords().iter().cloned());
    }
    let z = RatVector::new(z);

    // Reduce to the kernel of the equality system: Q = { z + U t : ... }.
    let basis = if eq_rows.is_empty() {
        (0..vars)
            .map(|i| {
                RatVector::new(
                    (0..vars)
                        .map(|j| if i == j { Rat::one() } else { Rat::zero() })
                        .collect(),
                )
            })
            .collect()
    } else {
        linalg::kernel_basis(&RatMatrix::from_rows(&eq_rows))
    };
    let k = basis.len();
    if k == 0 {
        return Ok(RigidityVerdict { dimension: 0 });
    }

    // inequalities in the t coordinates: row . t >= -slack0, slack0 >= 0
    let mut reduced: Vec<(RatVector, Rat)> = Vec::new();
    for c in &ineqs {
        let row = RatVector::new(basis.iter().map(|u| c.coeffs.dot(u)).collect());
        let slack0 = c.coeffs.dot(&z) - &c.rhs;
        if slack0.is_negative() {
            return Err(Error::invalid("embedding violates its own constraints"));
        }
        if !row.is_zero() {
            reduced.push((row, slack0));
        }
    }

    // The affine hull of Q is cut out by the implicit equalities: the tight
    // constraints whose value cannot be made positive over Q.
    #[derive(Clone, Copy, PartialEq)]
    enum Status {
        Open,
        Strict,
        Forced,
    }
    let mut status: Vec<Status> = reduced
        .iter()
        .map(|(_, s)| if s.is_zero() { Status::Open } else { Status::Strict })
        .collect();
    for i in 0..reduced.len() {
        if status[i] != Status::Open {
            continue;
        }
        // maximize row_i . t over Q (capped at 1)
        let mut a_rows: Vec<RatVector> = Vec::new();
        let mut b: Vec<Rat> = Vec::new();
        for (row, slack0) in &reduced {
            // row . t >= -slack0  <=>  -row . t <= slack0, in split variables
            let mut r: Vec<Rat> = row.coords().iter().map(|x| -x.clone()).collect();
            r.extend(row.coords().iter().cloned());
            a_rows.push(RatVector::new(r));
            b.push(slack0.clone());
        }
        {
            let mut r: Vec<Rat> = reduced[i].0.coords().to_vec();
            r.extend(reduced[i].0.coords().iter().map(|x| -x.clone()));
            a_rows.push(RatVector::new(r));
            b.push(Rat::one());
        }
        let mut c_obj: Vec<Rat> = reduced[i].0.coords().to_vec();
        c_obj.extend(reduced[i].0.coords().iter().map(|x| -x.clone()));
        match crate::lp::simplex_max(&a_rows, &b, &RatVector::new(c_obj)) {
            crate::lp::SimplexResult::Optimal { x, value } => {
                if value.is_positive() {
                    let t = RatVector::new(
                        (0..k).map(|j| x.coord(j) - x.coord(k + j)).collect(),
                    );
                    for (j, (row, slack0)) in reduced.iter().enumerate() {
                        if status[j] == Status::Open && &row.dot(&t) + slack0 > Rat::zero() {
                            status[j] = Status::Strict;
                        }
                    }
                } else {
                    status[i] = Status::Forced;
                }
            }
            _ => return Err(Error::invalid("inconsistent rigidity system")),
        }
    }
    let forced_rows: Vec<RatVector> = reduced
        .iter()
        .zip(&status)
        .filter(|(_, s)| **s == Status::Forced)
        .map(|(r, _)| r.0.clone())
        .collect();
    let rank = linalg::rank_of(&forced_rows);
    Ok(RigidityVerdict { dimension: k - rank })
}

/// H-representation of a polyhedral cell (bounded: facets of the scaled
/// hull; unbounded cells get their recession rays appended as generators
/// before scaling is meaningless, so only the bounded part is supported for
/// vertices; recession handling for legs uses the same inequalities).
fn polycell_hrep(cell: &crate::dualcomplex::PolyCell, n: usize) -> Result<HRep, Error> {
    // scale vertices to integers
    let mut m = Int::one();
    for v in &cell.vertices {
        for c in v.coords() {
            m = num::integer::lcm(m, c.denom().clone());
        }
    }
    let scaled: Vec<LatticeVector> = cell
        .vertices
        .iter()
        .map(|v| {
            LatticeVector::new(
                v.coords()
                    .iter()
                    .map(|c| (c * Rat::from_integer(m.clone())).to_integer())
                    .collect(),
            )
        })
        .collect();
    if !cell.rays.is_empty() {
        // homogenize: embed at height 1 and take the hull with the rays at
        // height 0
        let mut pts: Vec<LatticeVector> = scaled
            .iter()
            .map(|v| {
                let mut c = v.coords().to_vec();
                c.push(m.clone());
                LatticeVector::new(c)
            })
            .collect();
        for r in &cell.rays {
            let mut c = r.coords().to_vec();
            c.push(Int::zero());
            pts.push(LatticeVector::new(c));
        }
        pts.push(LatticeVector::zero(n + 1));
        let hull = crate::hull::convex_hull_unrestricted(&pts)?;
        let mut h = HRep::default();
        for (normal, off, _) in hull.facets() {
            // restrict to height m: normal . (x, m) >= off
            if !off.is_zero() && normal.coords()[..n].iter().all(|c| c.is_zero()) {
                continue;
            }
            let a = RatVector::new(
                normal.coords()[..n]
                    .iter()
                    .map(|c| Rat::from_integer(c.clone()) / Rat::from_integer(m.clone()))
                    .collect(),
            );
            let b = Rat::from_integer(off.clone()) / Rat::from_integer(m.clone())
                - Rat::from_integer(normal.coord(n).clone());
            if a.is_zero() {
                continue;
            }
            h.ineqs.push((a.scale(&Rat::from_integer(m.clone())), b * Rat::from_integer(m.clone())));
        }
        for (normal, off) in hull.equations() {
            let a = RatVector::new(
                normal.coords()[..n]
                    .iter()
                    .map(|c| Rat::from_integer(c.clone()))
                    .collect(),
            );
            if a.is_zero() {
                continue;
            }
            let b = Rat::from_integer(off.clone())
                - Rat::from_integer(normal.coord(n).clone()) * Rat::from_integer(m.clone());
            h.eqs.push((a, b));
        }
        return Ok(h);
    }
    let hull = convex_hull(&scaled)?;
    let mut h = HRep::default();
    let ms = Rat::from_integer(m.clone());
    for (normal, off, _) in hull.facets() {
        h.ineqs.push((
            normal.to_rat(),
            Rat::from_integer(off.clone()) / ms.clone(),
        ));
    }
    for (normal, off) in hull.equations() {
        h.eqs.push((
            normal.to_rat(),
            Rat::from_integer(off.clone()) / ms.clone(),
        ));
    }
    Ok(h)
}

/// The Newton polygon of a rank-2 star: edge outer normals are the merged
/// primitive ray directions and edge lattice lengths are the weights;
/// anchored with its lexicographically least vertex at the origin. The star
/// must be traditionally balanced after appending its balancing direction.
pub fn newton_polygon(star: &Star, ctx: &CurveClassContext) -> Result<LatticePolytope, Error> {
    if star.ambient_dim() != 2 {
        return Err(Error::invalid("newton polygon requires ambient rank 2"));
    }
    let mut vectors = star.canonical_vectors();
    let vb = balancing_direction(&star.beta, ctx);
    if !vb.is_zero() {
        vectors.push(vb);
        vectors = merge_parallel(&vectors);
    }
    let mut sum = LatticeVector::zero(2);
    for v in &vectors {
        sum = sum.add(v);
    }
    if !sum.is_zero() {
        return Err(Error::invalid("star is not balanced"));
    }
    if vectors.len() < 3 {
        return Err(Error::invalid(
            "degenerate star: fewer than three directions",
        ));
    }
    // edge vectors: rotate each direction by 90 degrees counterclockwise,
    // walk in angular order
    let mut edges: Vec<LatticeVector> = vectors
        .iter()
        .map(|v| LatticeVector::new(vec![-v.coord(1).clone(), v.coord(0).clone()]))
        .collect();
    edges.sort_by(angle_cmp);
    let mut pos = LatticeVector::zero(2);
    let mut verts = vec![pos.clone()];
    for e in &edges {
        pos = pos.add(e);
        verts.push(pos.clone());
    }
    debug_assert!(verts.last().unwrap().is_zero(), "balanced walk closes");
    verts.pop();
    // anchor: lexicographically least vertex at the origin
    let min = verts.iter().min().unwrap().clone();
    let anchored: Vec<LatticeVector> = verts.iter().map(|v| v.sub(&min)).collect();
    convex_hull(&anchored)
}

/// Angular order on nonzero plane vectors starting from the positive x-axis.
pub(crate) fn angle_cmp(a: &LatticeVector, b: &LatticeVector) -> std::cmp::Ordering {
    fn half(v: &LatticeVector) -> u8 {
        let (x, y) = (v.coord(0), v.coord(1));
        if y.is_zero() {
            if x.is_positive() {
                0
            } else {
                2
            }
        } else if y.is_positive() {
            1
        } else {
            3
        }
    }
    let (ha, hb) = (half(a), half(b));
    if ha != hb {
        return ha.cmp(&hb);
    }
    // same half-plane: cross product decides
    let cross = a.coord(0) * b.coord(1) - a.coord(1) * b.coord(0);
    Int::zero().cmp(&cross)
}

/// The inverse of the Newton construction for one cell: the star of the
/// dual vertex of a 2-dimensional lattice polygon. Vectors are the outer
/// primitive normals scaled by the lattice lengths of the edges.
pub fn star_of_polygon(cell: &LatticePolytope) -> Result<Vec<LatticeVector>, Error> {
    if cell.dim() != 2 {
        return Err(Error::invalid("dual star requires a 2-dimensional cell"));
    }
    let mut out = Vec::new();
    for (normal, _, on) in cell.facets() {
        let a = &cell.vertices()[on[0]];
        let b = &cell.vertices()[*on.last().unwrap()];
        let (_, len) = primitive_decompose(&b.sub(a))?;
        // stored normals are inward; the star uses outer normals
        out.push(normal.neg().scale(&len));
    }
    out.sort();
    Ok(out)
}

/// The dual curve of a regular subdivision with a validated lifting: one
/// vertex per maximal cell at the Legendre position, bounded edges across
/// interior walls with weights the wall lattice lengths, and legs along the
/// outer normals of boundary edges. The result is traditionally balanced.
pub fn curve_from_subdivision(s: &Subdivision) -> Result<TropicalCurve, Error> {
    let lifting = s.lifting().ok_or(Error::MissingLifting)?.to_vec();
    s.check_lifting_induces()?;
    if s.ambient().dim() != 2 {
        return Err(Error::invalid("curve duality requires a polygon"));
    }
    let points = s.points();
    let cells = s.cells();

    // dual vertex per maximal cell
    let mut positions: Vec<RatVector> = Vec::with_capacity(cells.len());
    for cell in cells {
        // <y, p - p0> = h_p - h_p0 for p in the cell
        let p0 = cell[0];
        let rows: Vec<RatVector> = cell[1..]
            .iter()
            .map(|&p| points[p].sub(&points[p0]).to_rat())
            .collect();
        let rhs: Vec<Rat> = cell[1..]
            .iter()
            .map(|&p| &lifting[p] - &lifting[p0])
            .collect();
        let a = RatMatrix::from_rows(&rows);
        let y = linalg::solve(&a, &RatVector::new(rhs)).ok_or(Error::InvalidLifting)?;
        positions.push(y);
    }

    let ctx_rank = 0;
    let vertices: Vec<CurveVertex> = positions
        .iter()
        .map(|p| CurveVertex {
            position: p.clone(),
            beta: vec![Int::zero(); ctx_rank],
            markings: BTreeSet::new(),
            genus: None,
            cell: None,
        })
        .collect();

    // edges across interior walls
    let mut edges = Vec::new();
    for i in 0..cells.len() {
        for j in (i + 1)..cells.len() {
            let shared: Vec<usize> = cells[i]
                .iter()
                .filter(|x| cells[j].binary_search(x).is_ok())
                .cloned()
                .collect();
            if shared.len() < 2 {
                continue;
            }
            let pts: Vec<RatVector> = shared.iter().map(|&p| points[p].to_rat()).collect();
            if linalg::affine_rank(&pts) != 1 {
                continue;
            }
            let lo = shared.iter().map(|&p| &points[p]).min().unwrap();
            let hi = shared.iter().map(|&p| &points[p]).max().unwrap();
            let (_, len) = primitive_decompose(&hi.sub(lo))?;
            use num::ToPrimitive;
            edges.push(CurveEdge {
                ends: (i, j),
                weight: len.to_u64().ok_or_else(|| Error::invalid("weight overflow"))?,
                cell: None,
            });
        }
    }

    // legs along boundary edges of each cell
    let ambient = s.ambient();
    let mut legs = Vec::new();
    for (ci, _) in cells.iter().enumerate() {
        let hull = s.cell_hull(ci);
        for (normal, off, on) in hull.facets() {
            // the cell edge lies on the polygon boundary iff some ambient
            // facet is tight on it
            let verts: Vec<&LatticeVector> = on.iter().map(|&v| &hull.vertices()[v]).collect();
            let on_boundary = ambient.facets().iter().any(|(an, ao, _)| {
                verts.iter().all(|v| &an.dot(v) == ao)
            });
            if !on_boundary {
                continue;
            }
            let lo = verts.iter().min().unwrap();
            let hi = verts.iter().max().unwrap();
            let (_, len) = primitive_decompose(&hi.sub(lo))?;
            use num::ToPrimitive;
            legs.push(CurveLeg {
                vertex: ci,
                direction: normal.neg(),
                weight: len.to_u64().ok_or_else(|| Error::invalid("weight overflow"))?,
                cell: None,
            });
            let _ = off;
        }
    }

    let curve = TropicalCurve {
        vertices,
        edges,
        legs,
    };
    let ctx = CurveClassContext::trivial(2);
    match check_curve(&curve, &ctx) {
        CurveVerdict::Valid => Ok(curve),
        CurveVerdict::Offending { vertex, reason } => Err(Error::invalid(format!(
            "dual curve fails validation at vertex {vertex}: {reason}"
        ))),
    }
}

/// The dual subdivision of a traditionally balanced plane curve: cells are
/// the Newton polygons of the vertex stars, positioned inside the Newton
/// polygon of the asymptotic star, with the lifting recovered from the
/// vertex positions. Mutually inverse with `curve_from_subdivision` up to
/// translation of the curve and of the heights.
pub fn dual_subdivision(curve: &TropicalCurve) -> Result<Subdivision, Error> {
    if curve.ambient_dim() != 2 {
        return Err(Error::invalid("curve duality requires the plane"));
    }
    let ctx = CurveClassContext::trivial(2);
    match check_curve(curve, &ctx) {
        CurveVerdict::Valid => {}
        CurveVerdict::Offending { vertex, reason } => {
            return Err(Error::invalid(format!(
                "curve fails validation at vertex {vertex}: {reason}"
            )))
        }
    }
    let star = asymptotic_star(curve, &ctx);
    let ambient = newton_polygon(&star, &ctx)?;
    let points = ambient.lattice_points();

    // local cell polygon per vertex, then positions by propagation
    let mut local: Vec<LatticePolytope> = Vec::with_capacity(curve.vertices.len());
    for i in 0..curve.vertices.len() {
        let vstar = curve.star_at(i)?;
        local.push(newton_polygon(&vstar, &ctx)?);
    }

    // offsets via a spanning forest of the curve graph
    let nv = curve.vertices.len();
    let mut offset: Vec<Option<LatticeVector>> = vec![None; nv];
    let mut order: Vec<usize> = Vec::new();
    for root in 0..nv {
        if offset[root].is_some() {
            continue;
        }
        if nv > 1 && curve.component_count() > 1 {
            return Err(Error::invalid(
                "dual subdivision requires a connected curve",
            ));
        }
        offset[root] = Some(LatticeVector::zero(2));
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            order.push(v);
            for e in &curve.edges {
                let (a, b) = e.ends;
                let (from, to) = if a == v && offset[b].is_none() {
                    (a, b)
                } else if b == v && offset[a].is_none() {
                    (b, a)
                } else {
                    continue;
                };
                let off = propagate_offset(curve, &local, from, to, offset[from].as_ref().unwrap())?;
                offset[to] = Some(off);
                stack.push(to);
            }
        }
    }
    // consistency on non-tree edges
    for e in &curve.edges {
        let (a, b) = e.ends;
        let expected = propagate_offset(curve, &local, a, b, offset[a].as_ref().unwrap())?;
        if &expected != offset[b].as_ref().unwrap() {
            return Err(Error::invalid("inconsistent cycle in the dual positions"));
        }
    }

    // translate globally so the union sits on the ambient polygon
    let mut min_vertex: Option<LatticeVector> = None;
    for (i, l) in local.iter().enumerate() {
        let off = offset[i].as_ref().unwrap();
        for v in l.vertices() {
            let w = v.add(off);
            if min_vertex.as_ref().map_or(true, |m| &w < m) {
                min_vertex = Some(w);
            }
        }
    }
    let global_min = min_vertex.ok_or_else(|| Error::invalid("curve has no vertices"))?;
    let ambient_min = ambient.vertices()[0].clone();
    let shift = ambient_min.sub(&global_min);

    let mut cells: Vec<Vec<usize>> = Vec::with_capacity(nv);
    for (i, l) in local.iter().enumerate() {
        let off = offset[i].as_ref().unwrap().add(&shift);
        let translated: Vec<LatticeVector> = l.vertices().iter().map(|v| v.add(&off)).collect();
        let hull = convex_hull(&translated)?;
        let cell: Vec<usize> = (0..points.len())
            .filter(|&p| hull.contains_lattice(&points[p]))
            .collect();
        cells.push(cell);
    }

    // recover the lifting from the vertex positions: h_p - h_q = <y_V, p - q>
    // on each cell, with the gauge h = 0 on an affine basis of the first cell
    let npts = points.len();
    let mut rows: Vec<RatVector> = Vec::new();
    let mut rhs: Vec<Rat> = Vec::new();
    for (i, cell) in cells.iter().enumerate() {
        let y = &curve.vertices[i].position;
        let p0 = cell[0];
        for &p in &cell[1..] {
            let mut row = vec![Rat::zero(); npts];
            row[p] = Rat::one();
            row[p0] -= Rat::one();
            rows.push(RatVector::new(row));
            rhs.push(y.dot(&points[p].sub(&points[p0]).to_rat()));
        }
    }
    // the system determines h up to a global affine function; any solution
    // of the underdetermined system is a valid lifting
    let a = RatMatrix::from_rows(&rows);
    let h = linalg::solve(&a, &RatVector::new(rhs))
        .ok_or_else(|| Error::invalid("curve positions admit no consistent lifting"))?;
    // verify and assemble with full validation
    Subdivision::new(ambient, points, cells, Some(h.coords().to_vec()))
}

/// Offset of `to`'s local polygon relative to `from`'s along their shared
/// dual edge.
fn propagate_offset(
    curve: &TropicalCurve,
    local: &[LatticePolytope],
    from: usize,
    to: usize,
    from_offset: &LatticeVector,
) -> Result<LatticeVector, Error> {
    let delta = curve.vertices[to]
        .position
        .sub(&curve.vertices[from].position);
    let u = delta.primitive_direction()?; // direction from -> to
    // the cells share the edge with outer normal u in `from` and -u in `to`
    let edge_from = boundary_edge_with_normal(&local[from], &u)?;
    let edge_to = boundary_edge_with_normal(&local[to], &u.neg())?;
    // matching endpoints: both segments agree as geometric segments; the
    // endpoints sort the same way, so match minima
    let a = edge_from.iter().min().unwrap().add(from_offset);
    let b = edge_to.iter().min().unwrap();
    Ok(a.sub(b))
}

fn boundary_edge_with_normal(
    cell: &LatticePolytope,
    outer: &LatticeVector,
) -> Result<Vec<LatticeVector>, Error> {
    for (normal, _, on) in cell.facets() {
        if &normal.neg() == outer {
            return Ok(on.iter().map(|&v| cell.vertices()[v].clone()).collect());
        }
    }
    Err(Error::invalid(
        "cells do not share a dual edge; curve is not dual to a subdivision",
    ))
}
