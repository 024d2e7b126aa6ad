//! Exact linear algebra over the rationals and the integers: rank, solving,
//! determinants, integer kernels and saturated sublattices.

use crate::lattice::{LatticeVector, RatVector};
use crate::{Int, Rat};
use num::{One, Signed, Zero};

/// Dense rational matrix, row major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Rat>,
}

impl RatMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: &[RatVector]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |v| v.dim());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.dim(), c);
            data.extend(row.coords().iter().cloned());
        }
        RatMatrix { rows: r, cols: c, data }
    }

    pub fn from_lattice_rows(rows: &[LatticeVector]) -> Self {
        let rat_rows: Vec<RatVector> = rows.iter().map(|r| r.to_rat()).collect();
        Self::from_rows(&rat_rows)
    }

    pub fn at(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> RatVector {
        RatVector::new(self.data[i * self.cols..(i + 1) * self.cols].to_vec())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Reduces `self` in place to row echelon form; returns the pivot
    /// columns.
    pub fn row_reduce(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.at(i, c).is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self.at(r, c).clone();
            for j in c..self.cols {
                let v = self.at(r, j) / &inv;
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i != r && !self.at(i, c).is_zero() {
                    let f = self.at(i, c).clone();
                    for j in c..self.cols {
                        let v = self.at(i, j) - &f * self.at(r, j);
                        self.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.row_reduce().len()
    }
}

/// Rank of a set of rational vectors.
pub fn rank_of(vectors: &[RatVector]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    RatMatrix::from_rows(vectors).rank()
}

/// Rank of a set of lattice vectors.
pub fn lattice_rank(vectors: &[LatticeVector]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    RatMatrix::from_lattice_rows(vectors).rank()
}

/// Affine rank (dimension of the affine hull) of a point set.
pub fn affine_rank(points: &[RatVector]) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    let edges: Vec<RatVector> = points[1..].iter().map(|p| p.sub(&points[0])).collect();
    rank_of(&edges)
}

/// Determinant of a square rational matrix by fraction-free-ish Gaussian
/// elimination (exact either way over `Rat`).
pub fn determinant(m: &RatMatrix) -> Rat {
    assert_eq!(m.rows, m.cols);
    let n = m.rows;
    let mut a = m.clone();
    let mut det = Rat::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a.at(i, c).is_zero()) else {
            return Rat::zero();
        };
        if p != c {
            a.swap_rows(c, p);
            det = -det;
        }
        let pivot = a.at(c, c).clone();
        det *= &pivot;
        for i in (c + 1)..n {
            if !a.at(i, c).is_zero() {
                let f = a.at(i, c) / &pivot;
                for j in c..n {
                    let v = a.at(i, j) - &f * a.at(c, j);
                    a.set(i, j, v);
                }
            }
        }
    }
    det
}

/// Integer determinant of a square integer matrix given by rows.
pub fn int_determinant(rows: &[LatticeVector]) -> Int {
    let m = RatMatrix::from_lattice_rows(rows);
    determinant(&m).to_integer()
}

/// Gcd of all maximal (`m x m`, with `m` = number of vectors) minors of the
/// matrix whose rows are the given vectors. Zero when the rank is deficient.
pub fn gcd_of_maximal_minors(vectors: &[LatticeVector]) -> Int {
    let m = vectors.len();
    if m == 0 {
        return Int::one();
    }
    let n = vectors[0].dim();
    if m > n {
        return Int::zero();
    }
    let mut g = Int::zero();
    for cols in combinations(n, m) {
        let sub: Vec<LatticeVector> = vectors
            .iter()
            .map(|v| LatticeVector::new(cols.iter().map(|&c| v.coord(c).clone()).collect()))
            .collect();
        g = num::integer::gcd(g, int_determinant(&sub).abs());
    }
    g
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in (i + 1)..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Solves `A x = b` over the rationals. Returns one solution if consistent.
pub fn solve(a: &RatMatrix, b: &RatVector) -> Option<RatVector> {
    assert_eq!(a.rows, b.dim());
    let mut aug = RatMatrix::zero(a.rows, a.cols + 1);
    for i in 0..a.rows {
        for j in 0..a.cols {
            aug.set(i, j, a.at(i, j).clone());
        }
        aug.set(i, a.cols, b.coord(i).clone());
    }
    let pivots = aug.row_reduce();
    // inconsistent if a pivot lands in the augmented column
    if pivots.contains(&a.cols) {
        return None;
    }
    let mut x = vec![Rat::zero(); a.cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug.at(r, a.cols).clone();
    }
    Some(RatVector::new(x))
}

/// Basis of the right kernel `{x : A x = 0}` of a rational matrix.
pub fn kernel_basis(a: &RatMatrix) -> Vec<RatVector> {
    let mut m = a.clone();
    let pivots = m.row_reduce();
    let pivot_set: std::collections::HashSet<usize> = pivots.iter().cloned().collect();
    let free: Vec<usize> = (0..a.cols).filter(|c| !pivot_set.contains(c)).collect();
    let mut basis = Vec::new();
    for &f in &free {
        let mut x = vec![Rat::zero(); a.cols];
        x[f] = Rat::one();
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = -m.at(r, f).clone();
        }
        basis.push(RatVector::new(x));
    }
    basis
}

/// Basis of the integer kernel `{x in Z^n : A x = 0}` of an integer matrix
/// (rows given as lattice vectors). The kernel of an integer matrix is a
/// saturated sublattice, so clearing denominators of a rational kernel basis
/// and reducing to primitive vectors is not enough in general; we use
/// unimodular column reduction instead.
pub fn integer_kernel(rows: &[LatticeVector]) -> Vec<LatticeVector> {
    let n = if rows.is_empty() {
        return Vec::new();
    } else {
        rows[0].dim()
    };
    // Work on the transpose-free form: columns of `mat` are the unknowns.
    // We reduce columns by unimodular operations, tracking them in `u`.
    let m = rows.len();
    let mut mat: Vec<Vec<Int>> = (0..m)
        .map(|i| (0..n).map(|j| rows[i].coord(j).clone()).collect())
        .collect();
    let mut u: Vec<Vec<Int>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Int::one() } else { Int::zero() })
                .collect()
        })
        .collect();

    let col_swap = |mat: &mut Vec<Vec<Int>>, u: &mut Vec<Vec<Int>>, a: usize, b: usize| {
        for row in mat.iter_mut() {
            row.swap(a, b);
        }
        for row in u.iter_mut() {
            row.swap(a, b);
        }
    };
    // col[b] -= q * col[a]
    let col_axpy = |mat: &mut Vec<Vec<Int>>, u: &mut Vec<Vec<Int>>, q: &Int, a: usize, b: usize| {
        for row in mat.iter_mut() {
            let v = &row[b] - q * &row[a];
            row[b] = v;
        }
        for row in u.iter_mut() {
            let v = &row[b] - q * &row[a];
            row[b] = v;
        }
    };

    let mut lead_col = 0;
    for r in 0..m {
        if lead_col == n {
            break;
        }
        loop {
            // find the nonzero entry of minimal absolute value in row r at
            // columns >= lead_col
            let mut best: Option<usize> = None;
            for c in lead_col..n {
                if !mat[r][c].is_zero()
                    && best.map_or(true, |b| mat[r][c].abs() < mat[r][b].abs())
                {
                    best = Some(c);
                }
            }
            let Some(bc) = best else {
                break;
            };
            col_swap(&mut mat, &mut u, lead_col, bc);
            let mut done = true;
            for c in (lead_col + 1)..n {
                if !mat[r][c].is_zero() {
                    let q = div_round(&mat[r][c], &mat[r][lead_col]);
                    col_axpy(&mut mat, &mut u, &q, lead_col, c);
                    if !mat[r][c].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                lead_col += 1;
                break;
            }
        }
    }

    // columns of u whose mat-column is entirely zero form the kernel basis
    let mut basis = Vec::new();
    for c in 0..n {
        if (0..m).all(|r| mat[r][c].is_zero()) {
            basis.push(LatticeVector::new((0..n).map(|i| u[i][c].clone()).collect()));
        }
    }
    basis
}

// rounded division used by the column reduction
fn div_round(a: &Int, b: &Int) -> Int {
    // quotient of a/b rounded toward zero is fine for the euclidean descent
    a / b
}

/// Basis of the saturated sublattice `Z^n ∩ span_Q(vectors)`.
pub fn saturation_basis(vectors: &[LatticeVector]) -> Vec<LatticeVector> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let n = vectors[0].dim();
    // span = orthogonal complement of the kernel of the Gram pairing:
    // span_Q(v_i) = { x : w . x = 0 for all w in ker(V^T) } where V has the
    // v_i as rows. A rational kernel basis of V (right kernel of the matrix
    // with rows v_i... we need vectors w with w orthogonal to span):
    // w in ker means V w = 0, i.e. w ⊥ every row. Those w span the
    // orthogonal complement, and span = { x : w . x = 0 ∀ w }.
    let m = RatMatrix::from_lattice_rows(vectors);
    let ker = kernel_basis(&m);
    if ker.is_empty() {
        // full span
        return (0..n).map(|i| LatticeVector::unit(n, i)).collect();
    }
    let ker_int: Vec<LatticeVector> = ker.iter().map(|w| w.clear_denominators().0).collect();
    integer_kernel(&ker_int)
}

/// Expresses `target` as a rational combination of `basis` vectors, if
/// possible.
pub fn coordinates_in_basis(basis: &[LatticeVector], target: &RatVector) -> Option<RatVector> {
    if basis.is_empty() {
        return if target.is_zero() {
            Some(RatVector::new(Vec::new()))
        } else {
            None
        };
    }
    let n = basis[0].dim();
    // columns are the basis vectors
    let mut a = RatMatrix::zero(n, basis.len());
    for (j, b) in basis.iter().enumerate() {
        for i in 0..n {
            a.set(i, j, Rat::from_integer(b.coord(i).clone()));
        }
    }
    let x = solve(&a, target)?;
    // verify (solve returns a solution of the consistent system only)
    let mut check = RatVector::zero(n);
    for (j, b) in basis.iter().enumerate() {
        check = check.add(&b.to_rat().scale(x.coord(j)));
    }
    if check == *target {
        Some(x)
    } else {
        None
    }
}

/// Affine combination of `points` equal to `target`: returns barycentric
/// coefficients summing to 1, if `target` lies in the affine hull.
pub fn affine_coordinates(points: &[RatVector], target: &RatVector) -> Option<RatVector> {
    if points.is_empty() {
        return None;
    }
    let n = points[0].dim();
    // rows: n coordinate equations plus the sum-to-one equation
    let mut a = RatMatrix::zero(n + 1, points.len());
    for (j, p) in points.iter().enumerate() {
        for i in 0..n {
            a.set(i, j, p.coord(i).clone());
        }
        a.set(n, j, Rat::one());
    }
    let mut b = target.coords().to_vec();
    b.push(Rat::one());
    solve(&a, &RatVector::new(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{int, rat};

    fn lv(c: &[i64]) -> LatticeVector {
        LatticeVector::from_ints(c)
    }

    #[test]
    fn determinant_and_rank() {
        let m = RatMatrix::from_lattice_rows(&[lv(&[1, 0, 0]), lv(&[0, 1, 0]), lv(&[1, 1, 2])]);
        assert_eq!(determinant(&m), rat(2));
        assert_eq!(m.rank(), 3);
    }

    #[test]
    fn solve_simple() {
        let a = RatMatrix::from_lattice_rows(&[lv(&[2, 1]), lv(&[1, -1])]);
        let b = RatVector::new(vec![rat(3), rat(0)]);
        let x = solve(&a, &b).unwrap();
        assert_eq!(x, RatVector::new(vec![rat(1), rat(1)]));
    }

    #[test]
    fn solve_inconsistent() {
        let a = RatMatrix::from_lattice_rows(&[lv(&[1, 1]), lv(&[2, 2])]);
        let b = RatVector::new(vec![rat(1), rat(3)]);
        assert!(solve(&a, &b).is_none());
    }

    #[test]
    fn integer_kernel_is_saturated() {
        // kernel of (1, 1, 2): contains (1,-1,0) and (2,0,-1), and the
        // kernel lattice is saturated by construction
        let basis = integer_kernel(&[lv(&[1, 1, 2])]);
        assert_eq!(basis.len(), 2);
        for b in &basis {
            assert_eq!(b.dot(&lv(&[1, 1, 2])), int(0));
        }
        // (0, 2, -1) must be expressible integrally
        let target = lv(&[0, 2, -1]).to_rat();
        let c = coordinates_in_basis(&basis, &target).unwrap();
        assert!(c.coords().iter().all(|x| x.is_integer()));
    }

    #[test]
    fn saturation_of_non_primitive_span() {
        // span of (2, 2) is the diagonal line; saturation contains (1, 1)
        let basis = saturation_basis(&[lv(&[2, 2])]);
        assert_eq!(basis.len(), 1);
        let target = lv(&[1, 1]).to_rat();
        let c = coordinates_in_basis(&basis, &target).unwrap();
        assert!(c.coords().iter().all(|x| x.is_integer()));
    }

    #[test]
    fn combinations_small() {
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(combinations(3, 3), vec![vec![0, 1, 2]]);
        assert_eq!(combinations(2, 3), Vec::<Vec<usize>>::new());
    }
}
