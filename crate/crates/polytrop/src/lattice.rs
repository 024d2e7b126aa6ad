//! Lattice vectors, rational vectors, primitive decompositions and
//! normalized volumes.

use crate::error::Error;
use crate::{Int, Rat};
use num::{One, Signed, Zero};
use std::fmt;

/// A point of `Z^n`, with arbitrary-precision coordinates.
///
/// Ordering is lexicographic on coordinates, which is the canonical order
/// used for every set-valued output in the crate.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticeVector {
    coords: Vec<Int>,
}

impl fmt::Debug for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl LatticeVector {
    pub fn new(coords: Vec<Int>) -> Self {
        LatticeVector { coords }
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        LatticeVector {
            coords: coords.iter().map(|&c| Int::from(c)).collect(),
        }
    }

    pub fn zero(dim: usize) -> Self {
        LatticeVector {
            coords: vec![Int::zero(); dim],
        }
    }

    /// The `i`-th standard basis vector in dimension `dim`.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut coords = vec![Int::zero(); dim];
        coords[i] = Int::one();
        LatticeVector { coords }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Int] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &Int {
        &self.coords[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim());
        LatticeVector {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim());
        LatticeVector {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        LatticeVector {
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, k: &Int) -> Self {
        LatticeVector {
            coords: self.coords.iter().map(|a| a * k).collect(),
        }
    }

    pub fn dot(&self, other: &Self) -> Int {
        assert_eq!(self.dim(), other.dim());
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn dot_rat(&self, other: &RatVector) -> Rat {
        assert_eq!(self.dim(), other.dim());
        self.coords
            .iter()
            .zip(other.coords())
            .map(|(a, b)| Rat::from_integer(a.clone()) * b)
            .sum()
    }

    /// Indices of the nonzero coordinates.
    pub fn support(&self) -> Vec<usize> {
        self.coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| i)
            .collect()
    }

    pub fn to_rat(&self) -> RatVector {
        RatVector::new(
            self.coords
                .iter()
                .map(|c| Rat::from_integer(c.clone()))
                .collect(),
        )
    }

    /// Append the coordinates of `other`, producing a vector in the product
    /// space.
    pub fn concat(&self, other: &Self) -> Self {
        let mut coords = self.coords.clone();
        coords.extend(other.coords.iter().cloned());
        LatticeVector { coords }
    }
}

/// A point of `Q^n`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RatVector {
    coords: Vec<Rat>,
}

impl fmt::Debug for RatVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl RatVector {
    pub fn new(coords: Vec<Rat>) -> Self {
        RatVector { coords }
    }

    pub fn zero(dim: usize) -> Self {
        RatVector {
            coords: vec![Rat::zero(); dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &Rat {
        &self.coords[i]
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim());
        RatVector {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim());
        RatVector {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, k: &Rat) -> Self {
        RatVector {
            coords: self.coords.iter().map(|a| a * k).collect(),
        }
    }

    pub fn dot(&self, other: &Self) -> Rat {
        assert_eq!(self.dim(), other.dim());
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// Exact integer part check: returns the lattice vector if every
    /// coordinate is an integer.
    pub fn to_lattice(&self) -> Option<LatticeVector> {
        let mut out = Vec::with_capacity(self.coords.len());
        for c in &self.coords {
            if c.is_integer() {
                out.push(c.to_integer());
            } else {
                return None;
            }
        }
        Some(LatticeVector::new(out))
    }

    /// Clears denominators: returns `(v, m)` with `v` integral, `m > 0` and
    /// `v = m * self`.
    pub fn clear_denominators(&self) -> (LatticeVector, Int) {
        let mut m = Int::one();
        for c in &self.coords {
            m = num::integer::lcm(m, c.denom().clone());
        }
        let v = LatticeVector::new(
            self.coords
                .iter()
                .map(|c| (c * Rat::from_integer(m.clone())).to_integer())
                .collect(),
        );
        (v, m)
    }

    /// Primitive integral direction of a nonzero rational vector.
    pub fn primitive_direction(&self) -> Result<LatticeVector, Error> {
        let (v, _) = self.clear_denominators();
        let (p, _) = primitive_decompose(&v)?;
        Ok(p)
    }
}

/// Gcd of a slice of integers (non-negative result; 0 for an empty or all-zero
/// slice).
pub fn gcd_all(values: &[Int]) -> Int {
    let mut g = Int::zero();
    for v in values {
        g = num::integer::gcd(g, v.abs());
    }
    g
}

/// Splits a nonzero lattice vector as `weight * primitive` with
/// `gcd(primitive) = 1` and `weight > 0`.
pub fn primitive_decompose(v: &LatticeVector) -> Result<(LatticeVector, Int), Error> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let g = gcd_all(v.coords());
    let p = LatticeVector::new(v.coords().iter().map(|c| c / &g).collect());
    Ok((p, g))
}

/// Lattice-normalized volume of the simplex spanned by `points`.
///
/// For `m + 1` points in dimension `n >= m`, this is the gcd of the `m x m`
/// minors of the matrix of edge vectors from the first point; when `m = n` it
/// is just the absolute determinant. A unimodular simplex has volume 1.
/// Affinely dependent input gives 0.
pub fn normalized_volume(points: &[LatticeVector]) -> Int {
    if points.len() < 2 {
        return if points.len() == 1 { Int::one() } else { Int::zero() };
    }
    let n = points[0].dim();
    let m = points.len() - 1;
    if m > n {
        return Int::zero();
    }
    let edges: Vec<LatticeVector> = points[1..].iter().map(|p| p.sub(&points[0])).collect();
    crate::linalg::gcd_of_maximal_minors(&edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::int;

    fn lv(c: &[i64]) -> LatticeVector {
        LatticeVector::from_ints(c)
    }

    #[test]
    fn primitive_decompose_basic() {
        let (p, w) = primitive_decompose(&lv(&[4, 6])).unwrap();
        assert_eq!(p, lv(&[2, 3]));
        assert_eq!(w, int(2));

        let (p, w) = primitive_decompose(&lv(&[0, 0, 5])).unwrap();
        assert_eq!(p, lv(&[0, 0, 1]));
        assert_eq!(w, int(5));

        let (p, w) = primitive_decompose(&lv(&[1, 0])).unwrap();
        assert_eq!(p, lv(&[1, 0]));
        assert_eq!(w, int(1));
    }

    #[test]
    fn primitive_decompose_zero_errors() {
        assert_eq!(primitive_decompose(&lv(&[0, 0])), Err(Error::ZeroVector));
    }

    #[test]
    fn primitive_recomposes() {
        for coords in [[6i64, -4], [-9, 3], [5, 7], [0, -8]] {
            let v = lv(&coords);
            let (p, w) = primitive_decompose(&v).unwrap();
            assert_eq!(p.scale(&w), v);
            assert_eq!(gcd_all(p.coords()), int(1));
        }
    }

    #[test]
    fn normalized_volume_examples() {
        // unit simplex conv{0, e1, e2}
        assert_eq!(
            normalized_volume(&[lv(&[0, 0]), lv(&[1, 0]), lv(&[0, 1])]),
            int(1)
        );
        // tetrahedron with last vertex (1,1,2)
        assert_eq!(
            normalized_volume(&[
                lv(&[0, 0, 0]),
                lv(&[1, 0, 0]),
                lv(&[0, 1, 0]),
                lv(&[1, 1, 2])
            ]),
            int(2)
        );
        // collinear triple
        assert_eq!(
            normalized_volume(&[lv(&[0, 0]), lv(&[1, 1]), lv(&[2, 2])]),
            int(0)
        );
    }

    #[test]
    fn normalized_volume_lower_dimensional() {
        // segment of lattice length 2 inside the plane
        assert_eq!(normalized_volume(&[lv(&[0, 0]), lv(&[2, 2])]), int(2));
    }
}
