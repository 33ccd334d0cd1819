//! Exact linear algebra over the integers and rationals.
//!
//! Ranks and determinants use fraction-free (Bareiss) elimination on
//! integer data; solving and kernels use Gauss-Jordan over the rationals.
//! Polyhedral feasibility lives in [`polyhedron`].

pub mod field;
pub mod polyhedron;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use field::{nullspace_over, rank_over, Field, Gf2, Ring};
pub use polyhedron::{bounded, feasible, IneqSystem, Sense};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(n: i64) -> Int {
    BigInt::from(n)
}

pub fn rat(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int_to_rat(v: &[Int]) -> Vec<Rat> {
    v.iter().map(|x| Rat::from_integer(x.clone())).collect()
}

pub fn dot_int(a: &[Int], b: &[Int]) -> Int {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_rat(a: &[Rat], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

/// Pairing of a rational point with an integer covector.
pub fn pair(point: &[Rat], normal: &[Int]) -> Rat {
    debug_assert_eq!(point.len(), normal.len());
    point
        .iter()
        .zip(normal)
        .fold(Rat::zero(), |acc, (x, a)| acc + x * a)
}

/// Dense row-major matrix of rationals. `BigRational` keeps every entry in
/// lowest terms with a positive denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    /// Builds a matrix from rows; `cols` is needed for the zero-row case.
    pub fn from_rows(rows: Vec<Vec<Rat>>, cols: usize) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let n = rows.len();
        for (i, r) in rows.into_iter().enumerate() {
            if r.len() != cols {
                return Err(Error::Dimension(format!(
                    "row {i} has {} entries, expected {cols}",
                    r.len()
                )));
            }
            data.extend(r);
        }
        Ok(Self { rows: n, cols, data })
    }

    pub fn from_int_rows(rows: &[Vec<Int>], cols: usize) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| int_to_rat(r)).collect(), cols)
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(
            rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect(),
            cols,
        )
        .expect("ragged literal matrix")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Rat>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows).map(|i| dot_rat(self.row(i), v)).collect()
    }
}

/// Scales a rational row by the lcm of its denominators.
fn integer_row(row: &[Rat]) -> Vec<Int> {
    let l = row
        .iter()
        .fold(Int::one(), |acc, x| acc.lcm(x.denom()));
    row.iter()
        .map(|x| x.numer() * (&l / x.denom()))
        .collect()
}

/// Fraction-free row echelon reduction in place; returns the rank. The
/// returned value is the last pivot (the determinant up to sign when the
/// matrix is square of full rank) together with the swap parity.
fn bareiss(a: &mut [Vec<Int>], cols: usize) -> (usize, Int, bool) {
    let nrows = a.len();
    let mut prev = Int::one();
    let mut r = 0;
    let mut odd_swaps = false;
    for c in 0..cols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            a.swap(p, r);
            odd_swaps = !odd_swaps;
        }
        for i in r + 1..nrows {
            for j in c + 1..cols {
                let num = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                debug_assert!((&num % &prev).is_zero());
                a[i][j] = num / &prev;
            }
            a[i][c] = Int::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    (r, prev, odd_swaps)
}

/// Rank over the rationals by fraction-free elimination.
pub fn rank(m: &RatMatrix) -> usize {
    let mut a: Vec<Vec<Int>> = (0..m.rows()).map(|i| integer_row(m.row(i))).collect();
    bareiss(&mut a, m.cols()).0
}

/// Rank of an integer matrix given as rows.
pub fn int_rank(rows: &[Vec<Int>], cols: usize) -> usize {
    let mut a = rows.to_vec();
    bareiss(&mut a, cols).0
}

/// Exact determinant of a square integer matrix (Bareiss).
pub fn int_determinant(rows: &[Vec<Int>]) -> Int {
    let n = rows.len();
    if n == 0 {
        return Int::one();
    }
    assert!(rows.iter().all(|r| r.len() == n), "determinant of non-square matrix");
    let mut a = rows.to_vec();
    let (r, last, odd) = bareiss(&mut a, n);
    if r < n {
        return Int::zero();
    }
    if odd {
        -last
    } else {
        last
    }
}

pub fn is_unimodular(rows: &[Vec<Int>]) -> bool {
    int_determinant(rows).abs().is_one()
}

/// Divides `v` by the positive gcd of its entries.
pub fn make_primitive(v: &[Int]) -> Result<Vec<Int>> {
    let g = content(v);
    if g.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(v.iter().map(|x| x / &g).collect())
}

/// Non-negative gcd of the entries (zero for the zero vector).
pub fn content(v: &[Int]) -> Int {
    v.iter().fold(Int::zero(), |acc, x| acc.gcd(x))
}

/// Solves `m x = b`, returning one exact solution or `None` if inconsistent.
pub fn solve(m: &RatMatrix, b: &[Rat]) -> Option<Vec<Rat>> {
    assert_eq!(m.rows(), b.len(), "solve: rhs length mismatch");
    field::solve_over(&m.to_rows(), m.cols(), b)
}

/// Basis of the right kernel of `m`; empty iff `m` is injective.
pub fn nullspace_basis(m: &RatMatrix) -> Vec<Vec<Rat>> {
    field::nullspace_over(m.to_rows(), m.cols())
}

/// Clears denominators and divides by the content, so the result is a
/// primitive integer vector on the same ray.
pub fn primitive_from_rat(v: &[Rat]) -> Result<Vec<Int>> {
    make_primitive(&integer_row(v))
}

/// Inverse of a unimodular integer matrix, exactly.
pub fn unimodular_inverse(rows: &[Vec<Int>]) -> Result<Vec<Vec<Int>>> {
    let n = rows.len();
    if !is_unimodular(rows) {
        return Err(Error::Precondition("matrix is not unimodular".into()));
    }
    let mut aug: Vec<Vec<Rat>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = int_to_rat(r);
            row.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            row
        })
        .collect();
    field::rref(&mut aug, 2 * n);
    aug.iter()
        .map(|row| {
            row[n..]
                .iter()
                .map(|x| {
                    if x.is_integer() {
                        Ok(x.to_integer())
                    } else {
                        Err(Error::Inconsistent("non-integral unimodular inverse".into()))
                    }
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&RatMatrix::identity(2)), 2);
        assert_eq!(rank(&RatMatrix::from_i64(&[&[1, 0], &[0, 1], &[0, -1]])), 2);
        assert_eq!(rank(&RatMatrix::zeros(3, 3)), 0);
        let half = RatMatrix::from_rows(
            vec![vec![ratio(1, 2), ratio(1, 3)], vec![rat(3), rat(2)]],
            2,
        )
        .unwrap();
        assert_eq!(rank(&half), 1);
    }

    #[test]
    fn solve_examples() {
        let id = RatMatrix::identity(2);
        assert_eq!(solve(&id, &[rat(3), rat(5)]), Some(vec![rat(3), rat(5)]));
        let dup = RatMatrix::from_i64(&[&[1, 0], &[1, 0]]);
        assert_eq!(solve(&dup, &[rat(0), rat(1)]), None);
        let m = RatMatrix::from_i64(&[&[1, 1], &[1, -1]]);
        assert_eq!(solve(&m, &[rat(1), rat(0)]), Some(vec![ratio(1, 2), ratio(1, 2)]));
    }

    #[test]
    fn nullspace_examples() {
        assert!(nullspace_basis(&RatMatrix::identity(3)).is_empty());
        let ns = nullspace_basis(&RatMatrix::from_i64(&[&[1, 1]]));
        assert_eq!(ns.len(), 1);
        assert_eq!(primitive_from_rat(&ns[0]).unwrap(), iv(&[-1, 1]));
        // beta for T*CP^1: columns a_1 = 1, a_2 = -1
        let ns = nullspace_basis(&RatMatrix::from_i64(&[&[1, -1]]));
        assert_eq!(ns.len(), 1);
        assert_eq!(primitive_from_rat(&ns[0]).unwrap(), iv(&[1, 1]));
    }

    #[test]
    fn unimodular_examples() {
        assert!(is_unimodular(&[iv(&[1, 0]), iv(&[0, 1])]));
        assert!(!is_unimodular(&[iv(&[2, 0]), iv(&[0, 1])]));
        assert!(is_unimodular(&[iv(&[1, 0]), iv(&[1, 1])]));
        assert_eq!(int_determinant(&[iv(&[0, 1]), iv(&[1, 0])]), int(-1));
        assert_eq!(int_determinant(&[iv(&[2, 3, 1]), iv(&[4, 1, 0]), iv(&[0, 5, 7])]), int(-50));
    }

    #[test]
    fn unimodular_inverse_rows() {
        let inv = unimodular_inverse(&[iv(&[1, 0]), iv(&[1, 1])]).unwrap();
        assert_eq!(inv, vec![iv(&[1, 0]), iv(&[-1, 1])]);
        assert!(unimodular_inverse(&[iv(&[2, 0]), iv(&[0, 1])]).is_err());
    }

    #[test]
    fn primitive_examples() {
        assert_eq!(make_primitive(&iv(&[2, 4])).unwrap(), iv(&[1, 2]));
        assert_eq!(make_primitive(&iv(&[0, -3])).unwrap(), iv(&[0, -1]));
        assert_eq!(make_primitive(&iv(&[5, 7])).unwrap(), iv(&[5, 7]));
        assert!(matches!(make_primitive(&iv(&[0, 0])), Err(Error::ZeroVector)));
    }
}
