//! Exact rational linear programming.
//!
//! A dense two-phase primal simplex over `BigRational` with Bland's rule,
//! which guarantees termination. This is the engine behind regularity
//! checking of subdivisions and every other strict-inequality decision in
//! the crate, so exactness is not optional.

use crate::lattice::RatVector;
use crate::Rat;
use num::{One, Signed, Zero};

/// A linear constraint `coeffs . x (>= | >) rhs`.
#[derive(Clone, Debug)]
pub struct Constraint {
    pub coeffs: RatVector,
    pub rhs: Rat,
}

impl Constraint {
    pub fn new(coeffs: RatVector, rhs: Rat) -> Self {
        Constraint { coeffs, rhs }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SimplexResult {
    Infeasible,
    Unbounded,
    Optimal { x: RatVector, value: Rat },
}

/// Maximizes `c . y` subject to `A y <= b`, `y >= 0`.
pub fn simplex_max(a_rows: &[RatVector], b: &[Rat], c: &RatVector) -> SimplexResult {
    let m = a_rows.len();
    let n = c.dim();
    for row in a_rows {
        assert_eq!(row.dim(), n);
    }
    assert_eq!(b.len(), m);

    // columns: n structural + m slack + (artificials appended as needed)
    let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(m);
    let mut rhs: Vec<Rat> = Vec::with_capacity(m);
    for i in 0..m {
        let mut row: Vec<Rat> = Vec::with_capacity(n + m);
        let negate = b[i].is_negative();
        for j in 0..n {
            let v = a_rows[i].coord(j).clone();
            row.push(if negate { -v } else { v });
        }
        for k in 0..m {
            let mut v = Rat::zero();
            if k == i {
                v = if negate { -Rat::one() } else { Rat::one() };
            }
            row.push(v);
        }
        rows.push(row);
        rhs.push(if negate { -b[i].clone() } else { b[i].clone() });
    }

    let mut basis: Vec<usize> = Vec::with_capacity(m);
    let mut artificial_cols: Vec<usize> = Vec::new();
    let mut ncols = n + m;
    for i in 0..m {
        if rows[i][n + i].is_one() {
            basis.push(n + i);
        } else {
            // negated row: slack has coefficient -1, add an artificial
            for r in rows.iter_mut() {
                r.push(Rat::zero());
            }
            rows[i][ncols] = Rat::one();
            basis.push(ncols);
            artificial_cols.push(ncols);
            ncols += 1;
        }
    }

    if !artificial_cols.is_empty() {
        // phase 1: maximize -sum(artificials); objective row expressed in
        // the current basis is the sum of the artificial rows
        let mut obj = vec![Rat::zero(); ncols];
        for i in 0..m {
            if artificial_cols.contains(&basis[i]) {
                for j in 0..ncols {
                    obj[j] = &obj[j] + &rows[i][j];
                }
            }
        }
        // artificial columns have reduced cost 0 in this expression
        for &c in &artificial_cols {
            obj[c] = Rat::zero();
        }
        let res = run_simplex(&mut rows, &mut rhs, &mut basis, &mut obj, ncols, Some(&artificial_cols));
        debug_assert!(res.is_none(), "phase 1 objective is bounded");
        // phase-1 value: sum of artificial basic values
        let mut infeasibility = Rat::zero();
        for i in 0..m {
            if artificial_cols.contains(&basis[i]) {
                infeasibility += &rhs[i];
            }
        }
        if !infeasibility.is_zero() {
            return SimplexResult::Infeasible;
        }
        // drive remaining artificials out of the basis
        for i in 0..m {
            if artificial_cols.contains(&basis[i]) {
                let pivot_col = (0..(n + m)).find(|&j| !rows[i][j].is_zero());
                if let Some(j) = pivot_col {
                    pivot(&mut rows, &mut rhs, &mut basis, i, j);
                }
                // an all-zero row is redundant; its artificial stays basic
                // at value zero, which is harmless for phase 2
            }
        }
    }

    // phase 2: express c in the current basis
    let mut obj = vec![Rat::zero(); ncols];
    for j in 0..n {
        obj[j] = c.coord(j).clone();
    }
    for i in 0..m {
        if !obj[basis[i]].is_zero() {
            let f = obj[basis[i]].clone();
            for j in 0..ncols {
                obj[j] = &obj[j] - &f * &rows[i][j];
            }
        }
    }
    // never re-enter artificial columns
    let banned = artificial_cols;
    if let Some(()) = run_simplex(&mut rows, &mut rhs, &mut basis, &mut obj, ncols, Some(&banned)) {
        return SimplexResult::Unbounded;
    }
    let mut x = vec![Rat::zero(); n];
    for i in 0..m {
        if basis[i] < n {
            x[basis[i]] = rhs[i].clone();
        }
    }
    let xv = RatVector::new(x);
    let value: Rat = (0..n).map(|j| c.coord(j) * xv.coord(j)).sum();
    SimplexResult::Optimal { x: xv, value }
}

/// Runs Bland-rule pivoting to optimality. Returns `Some(())` if unbounded.
/// `banned` columns are never chosen as entering columns.
fn run_simplex(
    rows: &mut Vec<Vec<Rat>>,
    rhs: &mut Vec<Rat>,
    basis: &mut Vec<usize>,
    obj: &mut Vec<Rat>,
    ncols: usize,
    banned: Option<&[usize]>,
) -> Option<()> {
    let m = rows.len();
    loop {
        // Bland: entering column = smallest index with positive reduced cost
        let entering = (0..ncols).find(|&j| {
            obj[j].is_positive() && banned.map_or(true, |b| !b.contains(&j))
        });
        let Some(e) = entering else {
            return None; // optimal
        };
        // ratio test; Bland tie-break on smallest basis variable
        let mut leave: Option<(usize, Rat)> = None;
        for i in 0..m {
            if rows[i][e].is_positive() {
                let ratio = &rhs[i] / &rows[i][e];
                match &leave {
                    None => leave = Some((i, ratio)),
                    Some((li, lr)) => {
                        if ratio < *lr || (ratio == *lr && basis[i] < basis[*li]) {
                            leave = Some((i, ratio));
                        }
                    }
                }
            }
        }
        let Some((l, _)) = leave else {
            return Some(()); // unbounded
        };
        pivot(rows, rhs, basis, l, e);
        // reduce objective row
        if !obj[e].is_zero() {
            let f = obj[e].clone();
            for j in 0..ncols {
                obj[j] = &obj[j] - &f * &rows[l][j];
            }
        }
    }
}

fn pivot(rows: &mut [Vec<Rat>], rhs: &mut [Rat], basis: &mut [usize], l: usize, e: usize) {
    let m = rows.len();
    let ncols = rows[l].len();
    let p = rows[l][e].clone();
    for j in 0..ncols {
        rows[l][j] = &rows[l][j] / &p;
    }
    rhs[l] = &rhs[l] / &p;
    for i in 0..m {
        if i != l && !rows[i][e].is_zero() {
            let f = rows[i][e].clone();
            for j in 0..ncols {
                rows[i][j] = &rows[i][j] - &f * &rows[l][j];
            }
            rhs[i] = &rhs[i] - &f * &rhs[l];
        }
    }
    basis[l] = e;
}

/// Searches for a rational point satisfying every weak constraint
/// (`a . x >= b`) and every strict constraint (`a . x > b`), in variables
/// that are free in sign.
///
/// Strictness is homogenized into an auxiliary slack `t`: we maximize `t`
/// subject to `a . x >= b + t` on strict rows and `t <= 1`; a positive
/// optimum yields an exact witness. Empty systems are feasible with the zero
/// witness.
pub fn lp_strict_feasible(weak: &[Constraint], strict: &[Constraint]) -> Option<RatVector> {
    let dim = weak
        .iter()
        .chain(strict)
        .map(|c| c.coeffs.dim())
        .next()
        .unwrap_or(0);
    if weak.is_empty() && strict.is_empty() {
        return Some(RatVector::zero(dim));
    }
    for c in weak.iter().chain(strict) {
        assert_eq!(c.coeffs.dim(), dim, "constraints share one ambient dimension");
    }
    // variables: x = u - v (u, v >= 0), t >= 0; columns (u | v | t)
    let n = 2 * dim + 1;
    let mut a_rows = Vec::new();
    let mut b = Vec::new();
    for c in weak {
        // a.x >= b  ->  -a.u + a.v <= -b
        let mut row = Vec::with_capacity(n);
        row.extend(c.coeffs.coords().iter().map(|v| -v.clone()));
        row.extend(c.coeffs.coords().iter().cloned());
        row.push(Rat::zero());
        a_rows.push(RatVector::new(row));
        b.push(-c.rhs.clone());
    }
    for c in strict {
        // a.x >= b + t  ->  -a.u + a.v + t <= -b
        let mut row = Vec::with_capacity(n);
        row.extend(c.coeffs.coords().iter().map(|v| -v.clone()));
        row.extend(c.coeffs.coords().iter().cloned());
        row.push(Rat::one());
        a_rows.push(RatVector::new(row));
        b.push(-c.rhs.clone());
    }
    // t <= 1 keeps the objective bounded
    {
        let mut row = vec![Rat::zero(); n];
        row[n - 1] = Rat::one();
        a_rows.push(RatVector::new(row));
        b.push(Rat::one());
    }
    let mut c_obj = vec![Rat::zero(); n];
    c_obj[n - 1] = Rat::one();

    match simplex_max(&a_rows, &b, &RatVector::new(c_obj)) {
        SimplexResult::Infeasible => None,
        SimplexResult::Unbounded => unreachable!("objective is bounded by construction"),
        SimplexResult::Optimal { x, value } => {
            if strict.is_empty() || value.is_positive() {
                let coords: Vec<Rat> = (0..dim)
                    .map(|i| x.coord(i) - x.coord(dim + i))
                    .collect();
                let witness = RatVector::new(coords);
                debug_assert!(check_witness(weak, strict, &witness));
                Some(witness)
            } else {
                None
            }
        }
    }
}

/// Verifies a witness against a weak/strict system.
pub fn check_witness(weak: &[Constraint], strict: &[Constraint], x: &RatVector) -> bool {
    weak.iter().all(|c| c.coeffs.dot(x) >= c.rhs)
        && strict.iter().all(|c| c.coeffs.dot(x) > c.rhs)
}

/// Tests whether `target` lies in the cone generated by `generators`
/// (non-negative combinations), returning the coefficients if so.
pub fn in_cone(generators: &[RatVector], target: &RatVector) -> Option<RatVector> {
    let dim = target.dim();
    let k = generators.len();
    if target.is_zero() {
        return Some(RatVector::zero(k));
    }
    if k == 0 {
        return None;
    }
    // feasibility of G lambda = target, lambda >= 0: maximize 0 subject to
    // both inequality directions
    let mut a_rows = Vec::new();
    let mut b = Vec::new();
    for i in 0..dim {
        let row: Vec<Rat> = generators.iter().map(|g| g.coord(i).clone()).collect();
        a_rows.push(RatVector::new(row.clone()));
        b.push(target.coord(i).clone());
        a_rows.push(RatVector::new(row.iter().map(|v| -v.clone()).collect()));
        b.push(-target.coord(i).clone());
    }
    let c = RatVector::zero(k);
    match simplex_max(&a_rows, &b, &c) {
        SimplexResult::Optimal { x, .. } => Some(x),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn cons(coeffs: &[i64], rhs: i64) -> Constraint {
        Constraint::new(
            RatVector::new(coeffs.iter().map(|&c| rat(c)).collect()),
            rat(rhs),
        )
    }

    #[test]
    fn strict_feasible_one_dim() {
        // x > 0
        let w = lp_strict_feasible(&[], &[cons(&[1], 0)]).unwrap();
        assert!(w.coord(0).is_positive());
    }

    #[test]
    fn strict_contradiction() {
        // x > 0 and -x > 0
        assert!(lp_strict_feasible(&[], &[cons(&[1], 0), cons(&[-1], 0)]).is_none());
    }

    #[test]
    fn empty_system_zero_witness() {
        let w = lp_strict_feasible(&[], &[]).unwrap();
        assert_eq!(w.dim(), 0);
    }

    #[test]
    fn weak_only_boundary_ok() {
        // x >= 3, -x >= -3 forces x = 3
        let w = lp_strict_feasible(&[cons(&[1], 3), cons(&[-1], -3)], &[]).unwrap();
        assert_eq!(w.coord(0), &rat(3));
    }

    #[test]
    fn mixed_system() {
        // x + y > 1, x >= 0, y >= 0, -x >= -2, -y >= -2
        let w = lp_strict_feasible(
            &[cons(&[1, 0], 0), cons(&[0, 1], 0), cons(&[-1, 0], -2), cons(&[0, -1], -2)],
            &[cons(&[1, 1], 1)],
        )
        .unwrap();
        assert!(w.coord(0) + w.coord(1) > rat(1));
    }

    #[test]
    fn cone_membership() {
        let g = vec![
            RatVector::new(vec![rat(1), rat(0)]),
            RatVector::new(vec![rat(1), rat(2)]),
        ];
        assert!(in_cone(&g, &RatVector::new(vec![rat(3), rat(2)])).is_some());
        assert!(in_cone(&g, &RatVector::new(vec![rat(0), rat(1)])).is_none());
        assert!(in_cone(&g, &RatVector::new(vec![rat(-1), rat(0)])).is_none());
    }

    // ---- Fourier–Motzkin oracle (test-only) -------------------------------

    /// A constraint `coeffs . x (>= | >) rhs` for the oracle.
    #[derive(Clone, Debug)]
    struct FmRow {
        coeffs: Vec<Rat>,
        rhs: Rat,
        strict: bool,
    }

    /// Brute-force Fourier–Motzkin elimination for systems in <= 4
    /// variables: eliminates variables one by one and decides feasibility
    /// from the constant constraints.
    fn fourier_motzkin_feasible(rows: &[FmRow]) -> bool {
        fn eliminate(rows: Vec<FmRow>, var: usize) -> Vec<FmRow> {
            let mut lower = Vec::new(); // coeff > 0: x >= (rhs - rest)/coeff
            let mut upper = Vec::new(); // coeff < 0
            let mut rest = Vec::new();
            for r in rows {
                if r.coeffs[var].is_zero() {
                    rest.push(r);
                } else if r.coeffs[var].is_positive() {
                    lower.push(r);
                } else {
                    upper.push(r);
                }
            }
            for lo in &lower {
                for up in &upper {
                    // lo: a x_v + L >= b  (a > 0),  up: c x_v + U >= d (c < 0)
                    // combine: eliminate x_v: (-c) * lo + a * up scaled
                    let a = lo.coeffs[var].clone();
                    let c = up.coeffs[var].clone();
                    let mut coeffs = Vec::with_capacity(lo.coeffs.len());
                    for j in 0..lo.coeffs.len() {
                        coeffs.push(&lo.coeffs[j] * (-&c) + &up.coeffs[j] * &a);
                    }
                    let rhs = &lo.rhs * (-&c) + &up.rhs * &a;
                    rest.push(FmRow {
                        coeffs,
                        rhs,
                        strict: lo.strict || up.strict,
                    });
                }
            }
            rest
        }

        let nvars = rows.first().map_or(0, |r| r.coeffs.len());
        let mut rows = rows.to_vec();
        for v in 0..nvars {
            rows = eliminate(rows, v);
        }
        rows.iter().all(|r| {
            if r.strict {
                Rat::zero() > r.rhs
            } else {
                Rat::zero() >= r.rhs
            }
        })
    }

    fn to_fm(weak: &[Constraint], strict: &[Constraint]) -> Vec<FmRow> {
        weak.iter()
            .map(|c| FmRow {
                coeffs: c.coeffs.coords().to_vec(),
                rhs: c.rhs.clone(),
                strict: false,
            })
            .chain(strict.iter().map(|c| FmRow {
                coeffs: c.coeffs.coords().to_vec(),
                rhs: c.rhs.clone(),
                strict: true,
            }))
            .collect()
    }

    #[test]
    fn simplex_matches_fourier_motzkin_on_random_systems() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut agree_feasible = 0;
        let mut agree_infeasible = 0;
        for _ in 0..300 {
            let dim = rng.gen_range(1..=3);
            let n_weak = rng.gen_range(0..=4);
            let n_strict = rng.gen_range(0..=3);
            let mut weak = Vec::new();
            let mut strict = Vec::new();
            for _ in 0..n_weak {
                let coeffs: Vec<i64> = (0..dim).map(|_| rng.gen_range(-3..=3)).collect();
                weak.push(cons(&coeffs, rng.gen_range(-3..=3)));
            }
            for _ in 0..n_strict {
                let coeffs: Vec<i64> = (0..dim).map(|_| rng.gen_range(-3..=3)).collect();
                strict.push(cons(&coeffs, rng.gen_range(-3..=3)));
            }
            let lp = lp_strict_feasible(&weak, &strict);
            let fm = fourier_motzkin_feasible(&to_fm(&weak, &strict));
            assert_eq!(lp.is_some(), fm, "weak={weak:?} strict={strict:?}");
            if let Some(w) = lp {
                assert!(check_witness(&weak, &strict, &w));
                agree_feasible += 1;
            } else {
                agree_infeasible += 1;
            }
        }
        // both outcomes must actually occur for the test to mean something
        assert!(agree_feasible > 20 && agree_infeasible > 20);
    }
}
