//! Exact integer matrices: determinants, adjugate inverses, unimodular
//! basis changes and integer kernel bases.

use std::fmt;

use num::bigint::BigInt;
use num::{Integer, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::vector::IntVector;

/// A square integer matrix, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SquareMatrix {
    n: usize,
    rows: Vec<Vec<BigInt>>,
}

impl SquareMatrix {
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let n = rows.len();
        for row in &rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
        }
        Ok(SquareMatrix { n, rows })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&c| BigInt::from(c)).collect())
                .collect(),
        )
    }

    pub fn identity(n: usize) -> Self {
        let mut rows = vec![vec![BigInt::zero(); n]; n];
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] = BigInt::one();
        }
        SquareMatrix { n, rows }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn column(&self, j: usize) -> IntVector {
        IntVector::new(self.rows.iter().map(|r| r[j].clone()).collect())
    }

    pub fn transpose(&self) -> SquareMatrix {
        let mut rows = vec![vec![BigInt::zero(); self.n]; self.n];
        for i in 0..self.n {
            for j in 0..self.n {
                rows[j][i] = self.rows[i][j].clone();
            }
        }
        SquareMatrix { n: self.n, rows }
    }

    pub fn mul(&self, other: &SquareMatrix) -> Result<SquareMatrix> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        let n = self.n;
        let mut rows = vec![vec![BigInt::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = BigInt::zero();
                for k in 0..n {
                    acc += &self.rows[i][k] * &other.rows[k][j];
                }
                rows[i][j] = acc;
            }
        }
        Ok(SquareMatrix { n, rows })
    }

    pub fn apply(&self, v: &IntVector) -> Result<IntVector> {
        if v.rank() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: v.rank(),
            });
        }
        Ok(IntVector::new(
            self.rows
                .iter()
                .map(|row| row.iter().zip(v.coords()).map(|(a, b)| a * b).sum())
                .collect(),
        ))
    }

    /// Exact determinant via fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        let n = self.n;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.rows.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = &num / &prev;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        sign * a[n - 1][n - 1].clone()
    }

    /// Adjugate matrix: `adj(M) * M = det(M) * I`.
    pub fn adjugate(&self) -> SquareMatrix {
        let n = self.n;
        if n == 0 {
            return SquareMatrix::identity(0);
        }
        if n == 1 {
            return SquareMatrix::identity(1);
        }
        let mut rows = vec![vec![BigInt::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let minor = self.minor(j, i);
                let cofactor = minor.determinant();
                rows[i][j] = if (i + j) % 2 == 0 { cofactor } else { -cofactor };
            }
        }
        SquareMatrix { n, rows }
    }

    fn minor(&self, skip_row: usize, skip_col: usize) -> SquareMatrix {
        let rows = self
            .rows
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != skip_row)
            .map(|(_, row)| {
                row.iter()
                    .enumerate()
                    .filter(|&(j, _)| j != skip_col)
                    .map(|(_, c)| c.clone())
                    .collect()
            })
            .collect();
        SquareMatrix { n: self.n - 1, rows }
    }
}

impl fmt::Display for SquareMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, c) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{c}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// An invertible change of basis of `Z^n`: an integer matrix with
/// determinant +1 or -1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnimodularMap {
    matrix: SquareMatrix,
}

impl UnimodularMap {
    pub fn new(matrix: SquareMatrix) -> Result<Self> {
        let det = matrix.determinant();
        if det.abs() != BigInt::one() {
            return Err(Error::NotUnimodular {
                det: det.to_string(),
            });
        }
        Ok(UnimodularMap { matrix })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::new(SquareMatrix::from_i64_rows(rows)?)
    }

    pub fn identity(n: usize) -> Self {
        UnimodularMap {
            matrix: SquareMatrix::identity(n),
        }
    }

    pub fn negated_identity(n: usize) -> Self {
        let mut rows = vec![vec![BigInt::zero(); n]; n];
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] = -BigInt::one();
        }
        UnimodularMap {
            matrix: SquareMatrix { n, rows },
        }
    }

    pub fn matrix(&self) -> &SquareMatrix {
        &self.matrix
    }

    pub fn size(&self) -> usize {
        self.matrix.size()
    }

    pub fn column(&self, j: usize) -> IntVector {
        self.matrix.column(j)
    }

    pub fn apply(&self, v: &IntVector) -> Result<IntVector> {
        self.matrix.apply(v)
    }

    pub fn mul(&self, other: &UnimodularMap) -> Result<UnimodularMap> {
        Ok(UnimodularMap {
            matrix: self.matrix.mul(&other.matrix)?,
        })
    }

    pub fn determinant(&self) -> BigInt {
        self.matrix.determinant()
    }

    /// Exact inverse: for `det = s` with `s = +-1`, the inverse is
    /// `s * adj(M)`.
    pub fn inverse(&self) -> UnimodularMap {
        let det = self.matrix.determinant();
        let adj = self.matrix.adjugate();
        let rows = adj
            .rows
            .iter()
            .map(|row| row.iter().map(|c| c * &det).collect())
            .collect();
        UnimodularMap {
            matrix: SquareMatrix {
                n: self.matrix.n,
                rows,
            },
        }
    }
}

impl fmt::Display for UnimodularMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.matrix.fmt(f)
    }
}

/// A basis of the integer kernel `{x in Z^n : A x = 0}` of an integer
/// matrix with `n` columns.
///
/// Unimodular column operations reduce `A` to column echelon form; the
/// operations are mirrored on an identity matrix whose non-pivot columns
/// then form a genuine `Z`-basis of the kernel (the kernel is a saturated
/// sublattice, so no saturation step is needed). Deterministic: pivots are
/// chosen left to right.
pub fn integer_kernel_basis(rows: &[Vec<BigInt>], n: usize) -> Vec<IntVector> {
    let m = rows.len();
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let mut u = SquareMatrix::identity(n);
    let mut active: Vec<usize> = (0..n).collect();

    for r in 0..m {
        let Some(pos) = active.iter().position(|&c| !a[r][c].is_zero()) else {
            continue;
        };
        let pivot = active[pos];
        // Fold every other nonzero entry of this row into the pivot column
        // with a 2x2 unimodular column operation built from an extended gcd.
        for idx in pos + 1..active.len() {
            let c = active[idx];
            if a[r][c].is_zero() {
                continue;
            }
            let p = a[r][pivot].clone();
            let q = a[r][c].clone();
            let e = p.extended_gcd(&q);
            let (g, s, t) = (e.gcd, e.x, e.y);
            let p_g = &p / &g;
            let q_g = &q / &g;
            for row_a in a.iter_mut() {
                let x = row_a[pivot].clone();
                let y = row_a[c].clone();
                row_a[pivot] = &s * &x + &t * &y;
                row_a[c] = -&q_g * &x + &p_g * &y;
            }
            for row_u in u.rows.iter_mut() {
                let x = row_u[pivot].clone();
                let y = row_u[c].clone();
                row_u[pivot] = &s * &x + &t * &y;
                row_u[c] = -&q_g * &x + &p_g * &y;
            }
        }
        active.remove(pos);
    }

    active.iter().map(|&c| u.column(c)).collect()
}

/// Integer kernel of a single covector (a rank `n-1` sublattice when the
/// covector is nonzero).
pub fn covector_kernel_basis(coeffs: &[BigInt]) -> Vec<IntVector> {
    integer_kernel_basis(&[coeffs.to_vec()], coeffs.len())
}
