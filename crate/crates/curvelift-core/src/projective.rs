//! Points of Pⁿ in canonical coordinates and invertible coordinate changes.
//!
//! Points are stored with their first nonzero coordinate scaled to 1, so
//! structural equality is projective equality. Coordinate changes are
//! invertible (n+1)×(n+1) matrices acting on column vectors; the library
//! never needs non-invertible maps, so invertibility is checked at
//! construction and everything downstream may rely on it.

use std::fmt;

use num::{BigInt, BigRational, Integer, One, Zero};

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};

/// A point of Pⁿ in canonical scaling (first nonzero coordinate 1).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ProjectivePoint {
    field: FieldSpec,
    coords: Vec<Scalar>,
}

impl ProjectivePoint {
    /// Canonicalizes homogeneous coordinates; all-zero input is rejected.
    pub fn new(field: FieldSpec, raw: Vec<Scalar>) -> Result<ProjectivePoint> {
        for c in &raw {
            if c.field() != field {
                return Err(Error::FieldMismatch { op: "point" });
            }
        }
        let pivot = raw
            .iter()
            .position(|c| !c.is_zero())
            .ok_or(Error::AllZero { op: "point" })?;
        let scale = raw[pivot].inv()?;
        let coords = raw
            .iter()
            .map(|c| c.mul(&scale))
            .collect::<Result<Vec<_>>>()?;
        Ok(ProjectivePoint { field, coords })
    }

    /// Convenience constructor from machine integers.
    pub fn from_ints(field: FieldSpec, raw: &[i64]) -> Result<ProjectivePoint> {
        ProjectivePoint::new(field, raw.iter().map(|&k| field.integer(k)).collect())
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// Ambient dimension n (the point has n + 1 coordinates).
    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    /// Index of the first nonzero coordinate (which equals 1).
    pub fn pivot(&self) -> usize {
        self.coords
            .iter()
            .position(|c| !c.is_zero())
            .expect("canonical points are nonzero")
    }
}

impl fmt::Display for ProjectivePoint {
    /// `(a:b:c)` with canonical scalar rendering.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ":")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// An element of PGL(n+1): an invertible matrix up to scale, stored as an
/// explicit (n+1)×(n+1) row-major matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ProjLinearMap {
    field: FieldSpec,
    matrix: Vec<Vec<Scalar>>,
}

impl ProjLinearMap {
    /// Builds a map from a square matrix, rejecting singular input.
    pub fn new(field: FieldSpec, matrix: Vec<Vec<Scalar>>) -> Result<ProjLinearMap> {
        let size = matrix.len();
        if size == 0 || matrix.iter().any(|row| row.len() != size) {
            return Err(Error::DimensionMismatch {
                op: "linear map",
                expected: size,
                found: matrix.iter().map(|r| r.len()).max().unwrap_or(0),
            });
        }
        for row in &matrix {
            for c in row {
                if c.field() != field {
                    return Err(Error::FieldMismatch { op: "linear map" });
                }
            }
        }
        let map = ProjLinearMap { field, matrix };
        if map.determinant()?.is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(map)
    }

    /// The identity on Pⁿ.
    pub fn identity(field: FieldSpec, n: usize) -> ProjLinearMap {
        let size = n + 1;
        let mut matrix = vec![vec![field.zero(); size]; size];
        for (i, row) in matrix.iter_mut().enumerate() {
            row[i] = field.one();
        }
        ProjLinearMap { field, matrix }
    }

    /// The transposition of coordinates `i` and `j` on Pⁿ.
    pub fn swap(field: FieldSpec, n: usize, i: usize, j: usize) -> ProjLinearMap {
        assert!(i <= n && j <= n, "swap indices within dimension");
        let mut map = ProjLinearMap::identity(field, n);
        map.matrix.swap(i, j);
        map
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// Ambient dimension n (the matrix is (n+1)×(n+1)).
    pub fn dim(&self) -> usize {
        self.matrix.len() - 1
    }

    pub fn matrix(&self) -> &[Vec<Scalar>] {
        &self.matrix
    }

    /// A·x in canonical form.
    pub fn apply(&self, x: &ProjectivePoint) -> Result<ProjectivePoint> {
        if x.field() != self.field {
            return Err(Error::FieldMismatch { op: "map apply" });
        }
        if x.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                op: "map apply",
                expected: self.dim(),
                found: x.dim(),
            });
        }
        let raw = self
            .matrix
            .iter()
            .map(|row| dot(row, x.coords()))
            .collect::<Result<Vec<_>>>()?;
        // A nonzero vector stays nonzero under an invertible matrix, so the
        // AllZero arm of `new` is unreachable here.
        ProjectivePoint::new(self.field, raw)
    }

    /// Matrix product self·other (so `compose` applies `other` first).
    pub fn compose(&self, other: &ProjLinearMap) -> Result<ProjLinearMap> {
        if self.field != other.field {
            return Err(Error::FieldMismatch { op: "map compose" });
        }
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                op: "map compose",
                expected: self.dim(),
                found: other.dim(),
            });
        }
        let size = self.matrix.len();
        let mut out = vec![vec![self.field.zero(); size]; size];
        for i in 0..size {
            for j in 0..size {
                let mut acc = self.field.zero();
                for k in 0..size {
                    acc = acc.add(&self.matrix[i][k].mul(&other.matrix[k][j])?)?;
                }
                out[i][j] = acc;
            }
        }
        // Products of invertible matrices are invertible; skip the det check.
        Ok(ProjLinearMap { field: self.field, matrix: out })
    }

    /// The inverse matrix, by Gauss–Jordan elimination.
    pub fn inverse(&self) -> Result<ProjLinearMap> {
        let size = self.matrix.len();
        let mut work = self.matrix.clone();
        let mut inv = ProjLinearMap::identity(self.field, size - 1).matrix;
        for col in 0..size {
            let pivot = (col..size)
                .find(|&r| !work[r][col].is_zero())
                .ok_or(Error::SingularMatrix)?;
            work.swap(col, pivot);
            inv.swap(col, pivot);
            let scale = work[col][col].inv()?;
            for j in 0..size {
                work[col][j] = work[col][j].mul(&scale)?;
                inv[col][j] = inv[col][j].mul(&scale)?;
            }
            for r in 0..size {
                if r == col || work[r][col].is_zero() {
                    continue;
                }
                let factor = work[r][col].clone();
                for j in 0..size {
                    work[r][j] = work[r][j].sub(&factor.mul(&work[col][j])?)?;
                    inv[r][j] = inv[r][j].sub(&factor.mul(&inv[col][j])?)?;
                }
            }
        }
        Ok(ProjLinearMap { field: self.field, matrix: inv })
    }

    /// Exact determinant. Over ℚ the matrix is scaled to integers row by row
    /// and eliminated fraction-free (Bareiss), which keeps intermediate
    /// entries polynomial-sized instead of compounding rational reductions;
    /// over F_p plain Gaussian elimination is already fraction-free.
    pub fn determinant(&self) -> Result<Scalar> {
        match self.field {
            FieldSpec::Rationals => self.determinant_rational(),
            FieldSpec::Prime(_) => self.determinant_prime(),
        }
    }

    fn determinant_rational(&self) -> Result<Scalar> {
        let size = self.matrix.len();
        // Clear denominators: row i times the lcm l_i of its denominators.
        let mut m: Vec<Vec<BigInt>> = Vec::with_capacity(size);
        let mut scale = BigRational::one();
        for row in &self.matrix {
            let mut lcm = BigInt::one();
            let rats: Vec<&BigRational> = row
                .iter()
                .map(|c| match c {
                    Scalar::Rational(r) => r,
                    Scalar::Residue { .. } => unreachable!("field checked at construction"),
                })
                .collect();
            for r in &rats {
                lcm = lcm.lcm(r.denom());
            }
            m.push(rats.iter().map(|r| (*r * &lcm).to_integer()).collect());
            scale *= BigRational::from_integer(lcm);
        }
        let det_int = bareiss_determinant(m);
        Ok(Scalar::Rational(BigRational::from_integer(det_int) / scale))
    }

    fn determinant_prime(&self) -> Result<Scalar> {
        let size = self.matrix.len();
        let mut m = self.matrix.clone();
        let mut det = self.field.one();
        for col in 0..size {
            let Some(pivot) = (col..size).find(|&r| !m[r][col].is_zero()) else {
                return Ok(self.field.zero());
            };
            if pivot != col {
                m.swap(col, pivot);
                det = det.neg();
            }
            det = det.mul(&m[col][col])?;
            let inv = m[col][col].inv()?;
            for r in col + 1..size {
                if m[r][col].is_zero() {
                    continue;
                }
                let factor = m[r][col].mul(&inv)?;
                for j in col..size {
                    let delta = factor.mul(&m[col][j])?;
                    m[r][j] = m[r][j].sub(&delta)?;
                }
            }
        }
        Ok(det)
    }
}

/// Deterministic coordinate change sending `p` to (1:0:…:0): permute the
/// pivot coordinate to the front, then clear the remaining entries by
/// subtracting multiples of the first coordinate. Equal inputs produce an
/// identical matrix.
pub fn move_to_e0(p: &ProjectivePoint) -> ProjLinearMap {
    let field = p.field();
    let n = p.dim();
    let perm = ProjLinearMap::swap(field, n, 0, p.pivot());
    let moved = perm.apply(p).expect("swap preserves dimension");
    // moved has coordinate 0 equal to 1; row i of the clearing matrix is
    // e_i − y_i·e_0.
    let mut clear = ProjLinearMap::identity(field, n);
    for i in 1..=n {
        clear.matrix[i][0] = moved.coords()[i].neg();
    }
    clear.compose(&perm).expect("same dimensions")
}

fn dot(row: &[Scalar], coords: &[Scalar]) -> Result<Scalar> {
    let mut acc = row[0].mul(&coords[0])?;
    for (a, b) in row.iter().zip(coords).skip(1) {
        acc = acc.add(&a.mul(b)?)?;
    }
    Ok(acc)
}

/// Fraction-free (Bareiss) determinant of an integer matrix: each interior
/// division is exact, so entries stay integers of modest size.
fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let size = m.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..size.saturating_sub(1) {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..size).find(|&r| !m[r][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = num / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    sign * m[size - 1][size - 1].clone()
}
