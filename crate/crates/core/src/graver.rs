//! Graver basis of the integer kernel lattice.
//!
//! `x ⊑ y` when `x` and `y` agree in sign wherever `x` is nonzero and `|x_i|
//! ≤ |y_i|` throughout. The Graver basis is the set of ⊑-minimal nonzero
//! kernel vectors. Two methods are provided: a completion procedure that is
//! exact, and a bounded box search used to cross-check it.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::enumeration::{circuit_basis, Limits};
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::model::{DimensionalMatrix, Invariant, InvariantPair};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraverMethod {
    Completion,
    /// Keeps the ⊑-minimal kernel points with every `|c_i| ≤ bound`. Exact
    /// for the Graver elements inside the box, silent about those outside.
    BruteForce {
        bound: u32,
    },
}

impl FromStr for GraverMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse {
            line: None,
            field: "graver-method".into(),
            message: format!("expected `completion` or `brute:<bound>`, got `{s}`"),
        };
        if s == "completion" {
            return Ok(GraverMethod::Completion);
        }
        let bound = s
            .strip_prefix("brute:")
            .ok_or_else(bad)?
            .parse::<u32>()
            .map_err(|_| bad())?;
        if bound == 0 {
            return Err(Error::InvalidBound);
        }
        Ok(GraverMethod::BruteForce { bound })
    }
}

impl fmt::Display for GraverMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraverMethod::Completion => write!(f, "completion"),
            GraverMethod::BruteForce { bound } => write!(f, "brute:{bound}"),
        }
    }
}

/// One `±` pair of Graver elements, stored with its first nonzero entry positive.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GraverElement(Vec<BigInt>);

impl GraverElement {
    fn canonical(mut v: Vec<BigInt>) -> Self {
        if v.iter()
            .find(|x| !x.is_zero())
            .is_some_and(Signed::is_negative)
        {
            for x in v.iter_mut() {
                *x = -&*x;
            }
        }
        GraverElement(v)
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.0
    }

    /// Graver elements are primitive, so they are invariants as well.
    pub fn to_invariant(&self) -> Invariant {
        Invariant::from_trusted(self.0.clone())
    }

    pub fn max_abs(&self) -> BigInt {
        self.0.iter().map(Signed::abs).max().unwrap_or_default()
    }
}

impl fmt::Display for GraverElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "±{}", self.to_invariant())
    }
}

/// `x ⊑ y`.
pub fn sign_le(x: &[BigInt], y: &[BigInt]) -> bool {
    x.iter().zip(y).all(|(a, b)| {
        a.is_zero() || (a.is_positive() == b.is_positive() && !b.is_zero() && a.abs() <= b.abs())
    })
}

fn l1(v: &[BigInt]) -> BigInt {
    v.iter().map(Signed::abs).sum()
}

pub fn graver_basis(
    d: &DimensionalMatrix,
    method: GraverMethod,
    limits: &Limits,
) -> Result<Vec<GraverElement>> {
    limits.check(d)?;
    graver_basis_of(d.matrix(), method)
}

/// Graver basis of an arbitrary integer matrix, sorted, one element per pair.
pub fn graver_basis_of(matrix: &IntMatrix, method: GraverMethod) -> Result<Vec<GraverElement>> {
    let full = match method {
        GraverMethod::Completion => completion(matrix),
        GraverMethod::BruteForce { bound } => {
            if bound == 0 {
                return Err(Error::InvalidBound);
            }
            box_search(matrix, bound)?
        }
    };
    let pairs: BTreeSet<GraverElement> = minimal_elements(full)
        .into_iter()
        .map(GraverElement::canonical)
        .collect();
    Ok(pairs.into_iter().collect())
}

/// ⊑-minimal members of a symmetric set of nonzero vectors.
fn minimal_elements(mut vs: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    vs.sort_by_key(|v| l1(v));
    let mut minimal: Vec<Vec<BigInt>> = Vec::new();
    for v in vs {
        // a non-minimal vector dominates some minimal one of smaller norm
        if !minimal.iter().any(|g| sign_le(g, &v)) {
            minimal.push(v);
        }
    }
    minimal
}

/// Pottier-style completion.
///
/// Starting from a lattice basis of the integer kernel and its negation,
/// every sum `f + g` of two current elements is reduced to normal form by
/// subtracting elements that are ⊑ it. Nonzero remainders join the set and
/// spawn new sums. At closure the set contains the Graver basis, which is
/// extracted as its ⊑-minimal elements.
fn completion(matrix: &IntMatrix) -> Vec<Vec<BigInt>> {
    let mut set: Vec<Vec<BigInt>> = Vec::new();
    for g in matrix.integer_kernel_basis() {
        let neg: Vec<BigInt> = g.iter().map(|x| -x).collect();
        set.push(g);
        set.push(neg);
    }
    let mut pending: VecDeque<Vec<BigInt>> = VecDeque::new();
    for i in 0..set.len() {
        for j in i + 1..set.len() {
            push_sum(&mut pending, &set[i], &set[j]);
        }
    }
    while let Some(s) = pending.pop_front() {
        let f = normal_form(s, &set);
        if f.iter().all(Zero::is_zero) {
            continue;
        }
        for g in &set {
            push_sum(&mut pending, &f, g);
        }
        set.push(f);
    }
    set
}

fn push_sum(pending: &mut VecDeque<Vec<BigInt>>, f: &[BigInt], g: &[BigInt]) {
    let s = add(f, g);
    // A conformal sum f + g reduces by g to f and then to zero.
    if sign_le(f, &s) && sign_le(g, &s) {
        return;
    }
    if s.iter().any(|x| !x.is_zero()) {
        pending.push_back(s);
    }
}

fn add(f: &[BigInt], g: &[BigInt]) -> Vec<BigInt> {
    f.iter().zip(g).map(|(a, b)| a + b).collect()
}

fn normal_form(mut s: Vec<BigInt>, set: &[Vec<BigInt>]) -> Vec<BigInt> {
    loop {
        if s.iter().all(Zero::is_zero) {
            return s;
        }
        match set.iter().find(|g| sign_le(g, &s)) {
            Some(g) => {
                for (x, y) in s.iter_mut().zip(g) {
                    *x -= y;
                }
            }
            None => return s,
        }
    }
}

/// Nonzero kernel points in the box `[-bound, bound]ⁿ`.
fn box_search(matrix: &IntMatrix, bound: u32) -> Result<Vec<Vec<BigInt>>> {
    let n = matrix.cols();
    let rows: Vec<Vec<i64>> = (0..matrix.rows())
        .map(|i| {
            matrix
                .row(i)
                .iter()
                .map(|a| a.to_i64().ok_or(Error::Overflow))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let b = i64::from(bound);
    let mut c = vec![-b; n];
    let mut out = Vec::new();
    if n == 0 {
        return Ok(out);
    }
    loop {
        if c.iter().any(|&x| x != 0)
            && rows
                .iter()
                .all(|row| row.iter().zip(&c).map(|(a, x)| a * x).sum::<i64>() == 0)
        {
            out.push(c.iter().map(|&x| BigInt::from(x)).collect());
        }
        // odometer
        let mut k = 0;
        loop {
            if k == n {
                return Ok(out);
            }
            if c[k] < b {
                c[k] += 1;
                break;
            }
            c[k] = -b;
            k += 1;
        }
    }
}

/// Result of comparing circuit tuples against a computed Graver basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircuitContainment {
    /// Every circuit tuple is a Graver element.
    pub contained: bool,
    /// Circuit pairs absent from the Graver set. Empty when `contained`.
    pub missing: Vec<InvariantPair>,
    /// Graver elements that are not circuit tuples.
    pub non_circuit: Vec<GraverElement>,
    pub graver: Vec<GraverElement>,
}

pub fn check_circuits_in_graver(
    d: &DimensionalMatrix,
    method: GraverMethod,
    limits: &Limits,
) -> Result<CircuitContainment> {
    let graver = graver_basis(d, method, limits)?;
    let graver_set: BTreeSet<&[BigInt]> = graver.iter().map(|g| g.entries()).collect();
    let circuits = circuit_basis(d);
    let circuit_set: BTreeSet<&[BigInt]> =
        circuits.iter().map(|p| p.canonical().exponents()).collect();
    let missing: Vec<InvariantPair> = circuits
        .iter()
        .filter(|p| !graver_set.contains(p.canonical().exponents()))
        .cloned()
        .collect();
    let non_circuit = graver
        .iter()
        .filter(|g| !circuit_set.contains(g.entries()))
        .cloned()
        .collect();
    Ok(CircuitContainment {
        contained: missing.is_empty(),
        missing,
        non_circuit,
        graver,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wide(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn elems(v: &[&[i64]]) -> Vec<GraverElement> {
        let mut out: Vec<GraverElement> = v
            .iter()
            .map(|e| GraverElement::canonical(e.iter().map(|&x| x.into()).collect()))
            .collect();
        out.sort();
        out
    }

    #[test]
    fn sign_order() {
        let b = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert!(sign_le(&b(&[1, 0, -1]), &b(&[2, -1, -1])));
        assert!(!sign_le(&b(&[1, 0, 1]), &b(&[2, -1, -1])));
        assert!(!sign_le(&b(&[0, 1, 0]), &b(&[2, 0, -1])));
        assert!(sign_le(&b(&[0, 0]), &b(&[3, 1])));
    }

    #[test]
    fn one_two_one() {
        let d = wide(&[&[1, 2, 1]]);
        let expected = elems(&[&[2, -1, 0], &[1, 0, -1], &[0, 1, -2], &[1, -1, 1]]);
        assert_eq!(
            graver_basis_of(&d, GraverMethod::Completion).unwrap(),
            expected
        );
        assert_eq!(
            graver_basis_of(&d, GraverMethod::BruteForce { bound: 3 }).unwrap(),
            expected
        );
    }

    #[test]
    fn one_minus_one() {
        let d = wide(&[&[1, -1]]);
        let expected = elems(&[&[1, 1]]);
        assert_eq!(
            graver_basis_of(&d, GraverMethod::Completion).unwrap(),
            expected
        );
        assert_eq!(
            graver_basis_of(&d, GraverMethod::BruteForce { bound: 1 }).unwrap(),
            expected
        );
    }

    #[test]
    fn unsaturated_denominator_clearing_would_miss_elements() {
        let d = wide(&[&[2, 1, 1]]);
        let g = graver_basis_of(&d, GraverMethod::Completion).unwrap();
        assert!(g.contains(&elems(&[&[0, 1, -1]])[0]));
        assert_eq!(
            g,
            graver_basis_of(&d, GraverMethod::BruteForce { bound: 3 }).unwrap()
        );
    }

    #[test]
    fn trivial_kernel() {
        let d = wide(&[&[1, 0], &[0, 1]]);
        assert!(graver_basis_of(&d, GraverMethod::Completion)
            .unwrap()
            .is_empty());
        assert!(graver_basis_of(&d, GraverMethod::BruteForce { bound: 2 })
            .unwrap()
            .is_empty());
    }

    #[test]
    fn method_parsing() {
        assert_eq!(
            "completion".parse::<GraverMethod>().unwrap(),
            GraverMethod::Completion
        );
        assert_eq!(
            "brute:4".parse::<GraverMethod>().unwrap(),
            GraverMethod::BruteForce { bound: 4 }
        );
        assert_eq!("brute:0".parse::<GraverMethod>(), Err(Error::InvalidBound));
        assert!("brute".parse::<GraverMethod>().is_err());
        assert!("exact".parse::<GraverMethod>().is_err());
    }

    #[test]
    fn containment_for_one_two_one() {
        let d = DimensionalMatrix::from_columns(&["X"], &[("a", &[1]), ("b", &[2]), ("c", &[1])])
            .unwrap();
        let report =
            check_circuits_in_graver(&d, GraverMethod::Completion, &Limits::default()).unwrap();
        assert!(report.contained);
        assert_eq!(report.non_circuit, elems(&[&[1, -1, 1]]));
    }

    #[test]
    fn containment_for_one_minus_one() {
        let d = DimensionalMatrix::from_columns(&["X"], &[("a", &[1]), ("b", &[-1])]).unwrap();
        let report =
            check_circuits_in_graver(&d, GraverMethod::Completion, &Limits::default()).unwrap();
        assert!(report.contained && report.non_circuit.is_empty());
    }

    #[test]
    fn size_cap_applies() {
        let d = DimensionalMatrix::from_columns(&["X"], &[("a", &[1]), ("b", &[-1])]).unwrap();
        assert!(matches!(
            graver_basis(&d, GraverMethod::Completion, &Limits { max_n: 1 }),
            Err(Error::SizeCap { .. })
        ));
    }
}
