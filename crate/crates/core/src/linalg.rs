//! Exact linear algebra over integer matrices.
//!
//! Everything here works with arbitrary-precision integers and rationals.
//! Elimination always pivots on the first nonzero entry in a column, so
//! results are deterministic for a given input.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense row-major integer matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    /// Builds a matrix from rows. Zero rows or zero columns are accepted
    /// here; operations that need a nonempty matrix reject it.
    pub fn from_rows<T>(rows: &[Vec<T>]) -> Result<Self>
    where
        T: Clone + Into<BigInt>,
    {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::RaggedRows {
                    row: i,
                    len: row.len(),
                    expected: cols,
                });
            }
            data.extend(row.iter().cloned().map(Into::into));
        }
        Ok(IntMatrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Builds an `rows × columns.len()` matrix from column vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> Result<Self> {
        let cols = columns.len();
        let mut data = vec![BigInt::zero(); rows * cols];
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::LengthMismatch {
                    got: col.len(),
                    expected: rows,
                });
            }
            for (i, x) in col.iter().enumerate() {
                data[i * cols + j] = x.clone();
            }
        }
        Ok(IntMatrix { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    /// Submatrix made of the given columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> IntMatrix {
        let mut data = Vec::with_capacity(self.rows * cols.len());
        for i in 0..self.rows {
            for &j in cols {
                data.push(self.get(i, j).clone());
            }
        }
        IntMatrix {
            rows: self.rows,
            cols: cols.len(),
            data,
        }
    }

    pub fn mul_int(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols, "vector length must equal column count");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, x)| a * x).sum())
            .collect()
    }

    pub fn mul_rational(&self, v: &RationalVector) -> Vec<BigRational> {
        assert_eq!(v.len(), self.cols, "vector length must equal column count");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v.entries())
                    .map(|(a, x)| x * BigRational::from_integer(a.clone()))
                    .sum()
            })
            .collect()
    }

    /// `true` when `D·v = 0`.
    pub fn annihilates(&self, v: &[BigInt]) -> bool {
        v.len() == self.cols && self.mul_int(v).iter().all(Zero::is_zero)
    }

    fn ensure_nonempty(&self) -> Result<()> {
        if self.rows == 0 || self.cols == 0 {
            Err(Error::EmptyMatrix {
                rows: self.rows,
                cols: self.cols,
            })
        } else {
            Ok(())
        }
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> Result<usize> {
        self.ensure_nonempty()?;
        Ok(Echelon::reduce(self).pivots.len())
    }

    /// Rank of the submatrix formed by `cols`. The empty selection has rank 0.
    pub fn column_rank(&self, cols: &[usize]) -> usize {
        if cols.is_empty() || self.rows == 0 {
            return 0;
        }
        Echelon::reduce(&self.select_columns(cols)).pivots.len()
    }

    /// Rational basis of `{c : D·c = 0}` read off the reduced row echelon form.
    pub fn kernel_basis(&self) -> Result<KernelBasis> {
        self.ensure_nonempty()?;
        Ok(Echelon::reduce(self).kernel())
    }

    /// Coefficients `x` with `Σ x_k · column(basis_cols[k]) = column(target)`.
    ///
    /// `basis_cols` must be independent and as many as the rank of the matrix.
    pub fn solve_in_basis(&self, basis_cols: &[usize], target: usize) -> Result<RationalVector> {
        self.ensure_nonempty()?;
        for &j in basis_cols.iter().chain(std::iter::once(&target)) {
            if j >= self.cols {
                return Err(Error::IndexOutOfRange {
                    index: j,
                    len: self.cols,
                });
            }
        }
        if basis_cols.contains(&target) {
            return Err(Error::TargetInBasis(target));
        }
        let rank = self.rank()?;
        if basis_cols.len() != rank || self.column_rank(basis_cols) != rank {
            return Err(Error::NotABasis {
                columns: basis_cols.to_vec(),
                rank,
            });
        }
        let mut cols = basis_cols.to_vec();
        cols.push(target);
        let ech = Echelon::reduce(&self.select_columns(&cols));
        let r = basis_cols.len();
        // Independent basis columns are exactly the pivots 0..r; the target
        // column is in their span because they span the column space.
        debug_assert_eq!(ech.pivots, (0..r).collect::<Vec<_>>());
        let x = (0..r).map(|k| ech.rows[k][r].clone()).collect();
        Ok(RationalVector(x))
    }

    /// Basis of the integer kernel lattice `{c ∈ Zⁿ : D·c = 0}`.
    ///
    /// Unimodular column operations bring `D` to column echelon form while
    /// the same operations are applied to an identity matrix; the transformed
    /// identity columns sitting over zero columns of the echelon form span the
    /// lattice over the integers (not just a finite-index sublattice).
    pub fn integer_kernel_basis(&self) -> Vec<Vec<BigInt>> {
        let n = self.cols;
        let mut work: Vec<Vec<BigInt>> = (0..n).map(|j| self.column(j)).collect();
        let mut unimod: Vec<Vec<BigInt>> = (0..n)
            .map(|j| {
                let mut e = vec![BigInt::zero(); n];
                e[j] = BigInt::one();
                e
            })
            .collect();
        let mut pivot_col = 0;
        for i in 0..self.rows {
            if pivot_col == n {
                break;
            }
            loop {
                let smallest = (pivot_col..n)
                    .filter(|&j| !work[j][i].is_zero())
                    .min_by(|&a, &b| work[a][i].abs().cmp(&work[b][i].abs()));
                let Some(p) = smallest else { break };
                work.swap(pivot_col, p);
                unimod.swap(pivot_col, p);
                let mut done = true;
                for j in pivot_col + 1..n {
                    if work[j][i].is_zero() {
                        continue;
                    }
                    let q = work[j][i].div_floor(&work[pivot_col][i]);
                    let (pw, pu) = (work[pivot_col].clone(), unimod[pivot_col].clone());
                    for (x, y) in work[j].iter_mut().zip(&pw) {
                        *x -= &q * y;
                    }
                    for (x, y) in unimod[j].iter_mut().zip(&pu) {
                        *x -= &q * y;
                    }
                    if !work[j][i].is_zero() {
                        done = false;
                    }
                }
                if done {
                    pivot_col += 1;
                    break;
                }
            }
        }
        unimod.drain(pivot_col..).collect()
    }
}

/// Rational basis of a kernel together with the column bookkeeping used to
/// produce it: each vector has a 1 in one free column and zeros in the others.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelBasis {
    pub vectors: Vec<RationalVector>,
    pub pivot_columns: Vec<usize>,
    pub free_columns: Vec<usize>,
}

/// Reduced row echelon form over the rationals.
struct Echelon {
    rows: Vec<Vec<BigRational>>,
    pivots: Vec<usize>,
    cols: usize,
}

impl Echelon {
    fn reduce(m: &IntMatrix) -> Echelon {
        let cols = m.cols();
        let mut rows: Vec<Vec<BigRational>> = (0..m.rows())
            .map(|i| {
                m.row(i)
                    .iter()
                    .map(|x| BigRational::from_integer(x.clone()))
                    .collect()
            })
            .collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows.len() {
                break;
            }
            let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
                continue;
            };
            rows.swap(r, p);
            let inv = rows[r][c].recip();
            for x in rows[r].iter_mut() {
                *x *= &inv;
            }
            let pivot_row = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i == r || row[c].is_zero() {
                    continue;
                }
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { rows, pivots, cols }
    }

    fn kernel(&self) -> KernelBasis {
        let free: Vec<usize> = (0..self.cols)
            .filter(|c| !self.pivots.contains(c))
            .collect();
        let vectors = free
            .iter()
            .map(|&f| {
                let mut v = vec![BigRational::zero(); self.cols];
                v[f] = BigRational::one();
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    v[p] = -row[f].clone();
                }
                RationalVector(v)
            })
            .collect();
        KernelBasis {
            vectors,
            pivot_columns: self.pivots.clone(),
            free_columns: free,
        }
    }
}

/// Vector of exact rationals. `BigRational` keeps every entry reduced with a
/// positive denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalVector(Vec<BigRational>);

impl RationalVector {
    pub fn new(entries: Vec<BigRational>) -> Self {
        RationalVector(entries)
    }

    pub fn from_integers<T: Clone + Into<BigInt>>(entries: &[T]) -> Self {
        RationalVector(
            entries
                .iter()
                .map(|x| BigRational::from_integer(x.clone().into()))
                .collect(),
        )
    }

    /// Convenience constructor from `(numerator, denominator)` pairs.
    pub fn from_ratios(entries: &[(i64, i64)]) -> Self {
        RationalVector(
            entries
                .iter()
                .map(|&(n, d)| BigRational::new(n.into(), d.into()))
                .collect(),
        )
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn into_inner(self) -> Vec<BigRational> {
        self.0
    }
}

/// Nonzero integer vector with relatively prime entries whose first nonzero
/// entry is positive.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrimitiveVector(Vec<BigInt>);

impl PrimitiveVector {
    /// Divides out the content and fixes the sign.
    pub fn normalize(mut entries: Vec<BigInt>) -> Result<Self> {
        let g = content(&entries);
        if g.is_zero() {
            return Err(Error::ZeroVector);
        }
        let negate = entries
            .iter()
            .find(|x| !x.is_zero())
            .is_some_and(|x| x.is_negative());
        for x in entries.iter_mut() {
            *x = &*x / &g;
            if negate {
                *x = -&*x;
            }
        }
        Ok(PrimitiveVector(entries))
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<BigInt> {
        self.0
    }
}

/// Scales a nonzero rational vector to the canonical primitive integer vector
/// on the same line.
pub fn primitive_scale(v: &RationalVector) -> Result<PrimitiveVector> {
    let denom_lcm = v
        .entries()
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints = v
        .entries()
        .iter()
        .map(|x| (x * BigRational::from_integer(denom_lcm.clone())).to_integer())
        .collect();
    PrimitiveVector::normalize(ints)
}

/// Gcd of the absolute values of the entries; zero for the zero vector.
pub fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x))
}

/// `true` when the vector is nonzero and its entries are relatively prime.
pub fn is_primitive(v: &[BigInt]) -> bool {
    content(v).is_one()
}
