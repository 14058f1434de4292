//! Quantities, dimensional matrices and invariants.
//!
//! A [`DimensionalMatrix`] has one row per base dimension and one column per
//! quantity. An [`Invariant`] is a power product of the quantities whose
//! exponent vector lies in the kernel of that matrix, so its numerical value
//! does not depend on the choice of units.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{is_primitive, IntMatrix, PrimitiveVector};

/// Ordered list of base dimension names. The order fixes the row order of
/// the dimensional matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DimensionSystem {
    names: Vec<String>,
}

impl DimensionSystem {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::NoDimensions);
        }
        let mut seen = BTreeSet::new();
        for name in &names {
            if !is_dimension_ident(name) {
                return Err(Error::InvalidName {
                    kind: "dimension",
                    name: name.clone(),
                });
            }
            if !seen.insert(name.as_str()) {
                return Err(Error::DuplicateDimension(name.clone()));
            }
        }
        Ok(DimensionSystem { names })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// Dimension identifiers: a letter or `_`, then letters, digits or `_`.
pub fn is_dimension_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_')
}

/// Quantity names may use letters, digits and `_ ( ) / . ' -` so that names
/// like `S(t)` and `dP/l` are legal. Whitespace, `,`, `*` and `^` are not.
pub fn is_quantity_name(s: &str) -> bool {
    !s.is_empty()
        && s.chars()
            .all(|c| c.is_alphanumeric() || matches!(c, '_' | '(' | ')' | '/' | '.' | '\'' | '-'))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quantity {
    pub name: String,
    /// Exponent of each base dimension, in [`DimensionSystem`] order.
    pub dims: Vec<i64>,
    /// Optional LaTeX used by the renderer instead of the plain name.
    pub display: Option<String>,
}

impl Quantity {
    pub fn new(name: impl Into<String>, dims: Vec<i64>) -> Self {
        Quantity {
            name: name.into(),
            dims,
            display: None,
        }
    }

    pub fn with_display(mut self, latex: impl Into<String>) -> Self {
        self.display = Some(latex.into());
        self
    }
}

/// Validated dimensional matrix with its rank cached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionalMatrix {
    system: DimensionSystem,
    quantities: Vec<Quantity>,
    matrix: IntMatrix,
    rank: usize,
}

impl DimensionalMatrix {
    pub fn new(system: DimensionSystem, quantities: Vec<Quantity>) -> Result<Self> {
        if quantities.is_empty() {
            return Err(Error::NoQuantities);
        }
        let mut seen = BTreeSet::new();
        for q in &quantities {
            if !is_quantity_name(&q.name) {
                return Err(Error::InvalidName {
                    kind: "quantity",
                    name: q.name.clone(),
                });
            }
            if !seen.insert(q.name.as_str()) {
                return Err(Error::DuplicateQuantity(q.name.clone()));
            }
            if q.dims.len() != system.len() {
                return Err(Error::DimsMismatch {
                    name: q.name.clone(),
                    got: q.dims.len(),
                    expected: system.len(),
                });
            }
        }
        let columns: Vec<Vec<BigInt>> = quantities
            .iter()
            .map(|q| q.dims.iter().map(|&a| BigInt::from(a)).collect())
            .collect();
        let matrix = IntMatrix::from_columns(system.len(), &columns)?;
        let rank = matrix.rank()?;
        Ok(DimensionalMatrix {
            system,
            quantities,
            matrix,
            rank,
        })
    }

    /// Shorthand that names the dimensions and quantities inline.
    ///
    /// ```
    /// use dimalg::DimensionalMatrix;
    /// let d = DimensionalMatrix::from_columns(&["X"], &[("q1", &[1]), ("q2", &[-1])]).unwrap();
    /// assert_eq!((d.n(), d.rank()), (2, 1));
    /// ```
    pub fn from_columns(dimensions: &[&str], columns: &[(&str, &[i64])]) -> Result<Self> {
        let system = DimensionSystem::new(dimensions.iter().copied())?;
        let quantities = columns
            .iter()
            .map(|(name, dims)| Quantity::new(*name, dims.to_vec()))
            .collect();
        DimensionalMatrix::new(system, quantities)
    }

    pub fn system(&self) -> &DimensionSystem {
        &self.system
    }

    pub fn quantities(&self) -> &[Quantity] {
        &self.quantities
    }

    pub fn quantity(&self, j: usize) -> &Quantity {
        &self.quantities[j]
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// Number of quantities (columns).
    pub fn n(&self) -> usize {
        self.quantities.len()
    }

    /// Number of base dimensions (rows).
    pub fn m(&self) -> usize {
        self.system.len()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `n - r`, the dimension of the kernel.
    pub fn nullity(&self) -> usize {
        self.n() - self.rank
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.quantities.iter().position(|q| q.name == name)
    }

    pub fn names(&self) -> Vec<&str> {
        self.quantities.iter().map(|q| q.name.as_str()).collect()
    }

    pub fn column_rank(&self, cols: &[usize]) -> usize {
        self.matrix.column_rank(cols)
    }

    pub fn is_kernel_vector(&self, v: &[BigInt]) -> bool {
        self.matrix.annihilates(v)
    }

    pub(crate) fn check_index(&self, j: usize) -> Result<()> {
        if j < self.n() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: j,
                len: self.n(),
            })
        }
    }
}

/// Invariant power product `∏ q_j^{c_j}`, stored as the full exponent vector
/// over the quantity order.
///
/// The exponents are relatively prime and lie in the kernel of the matrix the
/// invariant was built from. Orientation is free: [`Invariant::canonical`]
/// gives the representative whose first nonzero exponent is positive.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Invariant {
    exponents: Vec<BigInt>,
}

impl Invariant {
    pub fn new(d: &DimensionalMatrix, exponents: Vec<BigInt>) -> Result<Self> {
        if exponents.len() != d.n() {
            return Err(Error::LengthMismatch {
                got: exponents.len(),
                expected: d.n(),
            });
        }
        if exponents.iter().all(Zero::is_zero) {
            return Err(Error::ZeroVector);
        }
        if !is_primitive(&exponents) {
            return Err(Error::NotPrimitive);
        }
        if !d.is_kernel_vector(&exponents) {
            return Err(Error::NotInKernel);
        }
        Ok(Invariant { exponents })
    }

    pub fn from_i64(d: &DimensionalMatrix, exponents: &[i64]) -> Result<Self> {
        Invariant::new(d, exponents.iter().map(|&x| x.into()).collect())
    }

    /// Caller guarantees the vector is a primitive kernel vector.
    pub(crate) fn from_trusted(exponents: Vec<BigInt>) -> Self {
        Invariant { exponents }
    }

    pub fn exponents(&self) -> &[BigInt] {
        &self.exponents
    }

    pub fn exponent(&self, j: usize) -> &BigInt {
        &self.exponents[j]
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    /// Indices of the quantities with a nonzero exponent.
    pub fn support(&self) -> Vec<usize> {
        self.exponents
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, _)| j)
            .collect()
    }

    /// The sign-flipped partner.
    pub fn inverse(&self) -> Invariant {
        Invariant {
            exponents: self.exponents.iter().map(|c| -c).collect(),
        }
    }

    pub fn is_canonical(&self) -> bool {
        self.exponents
            .iter()
            .find(|c| !c.is_zero())
            .is_some_and(Signed::is_positive)
    }

    pub fn canonical(&self) -> Invariant {
        if self.is_canonical() {
            self.clone()
        } else {
            self.inverse()
        }
    }

    pub fn pair(&self) -> InvariantPair {
        InvariantPair {
            canonical: self.canonical(),
        }
    }

    /// Evaluates `∏ values[j]^{c_j}` in floating point. Only meant for
    /// numerical checks and display; all other computation is exact.
    pub fn evaluate(&self, values: &[f64]) -> Result<f64> {
        if values.len() != self.exponents.len() {
            return Err(Error::LengthMismatch {
                got: values.len(),
                expected: self.exponents.len(),
            });
        }
        let mut log = 0.0;
        for (j, (&v, c)) in values.iter().zip(&self.exponents).enumerate() {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::NonPositiveValue { index: j, value: v });
            }
            if !c.is_zero() {
                log += c.to_f64().unwrap_or(f64::NAN) * v.ln();
            }
        }
        Ok(log.exp())
    }
}

impl From<PrimitiveVector> for Invariant {
    fn from(v: PrimitiveVector) -> Self {
        Invariant::from_trusted(v.into_inner())
    }
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.exponents.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A pair of minimal invariants `{π, π⁻¹}`, identified by its canonical member.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct InvariantPair {
    canonical: Invariant,
}

impl InvariantPair {
    pub fn canonical(&self) -> &Invariant {
        &self.canonical
    }

    pub fn members(&self) -> [Invariant; 2] {
        [self.canonical.clone(), self.canonical.inverse()]
    }

    pub fn contains(&self, inv: &Invariant) -> bool {
        inv.canonical() == self.canonical
    }

    pub fn support(&self) -> Vec<usize> {
        self.canonical.support()
    }
}

impl fmt::Display for InvariantPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "±{}", self.canonical)
    }
}
