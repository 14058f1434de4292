//! Basis sets, circuit sets and the invariant inventories built from them.
//!
//! A basis set is a maximal set of quantities with independent dimension
//! columns. A circuit set is a minimal dependent set; it carries exactly one
//! pair of primitive invariants, supported on precisely its members. The
//! circuit basis `C(D)` collects those pairs. The unified basis `U(D)` is the
//! union, over all basis sets, of the reduced invariants of each basis set.
//!
//! Enumeration is exhaustive over column subsets, which is fine for the
//! handful of quantities a dimensional analysis usually involves. [`Limits`]
//! guards the exponential blow-up.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{primitive_scale, PrimitiveVector, RationalVector};
use crate::model::{DimensionalMatrix, Invariant, InvariantPair};

/// Upper bound on the number of quantities accepted by the exhaustive
/// algorithms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_n: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_n: 20 }
    }
}

impl Limits {
    pub fn check(&self, d: &DimensionalMatrix) -> Result<()> {
        if d.n() > self.max_n {
            Err(Error::SizeCap {
                n: d.n(),
                max: self.max_n,
            })
        } else {
            Ok(())
        }
    }
}

/// Sorted column indices of `r` independent quantities, `r` the rank.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisSet(Vec<usize>);

impl BasisSet {
    pub fn new(d: &DimensionalMatrix, mut indices: Vec<usize>) -> Result<Self> {
        indices.sort_unstable();
        indices.dedup();
        for &j in &indices {
            d.check_index(j)?;
        }
        if indices.len() != d.rank() || d.column_rank(&indices) != d.rank() {
            return Err(Error::NotABasis {
                columns: indices,
                rank: d.rank(),
            });
        }
        Ok(BasisSet(indices))
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn contains(&self, j: usize) -> bool {
        self.0.binary_search(&j).is_ok()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Sorted column indices of a minimal dependent set of quantities.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CircuitSet(Vec<usize>);

impl CircuitSet {
    pub fn new(d: &DimensionalMatrix, mut indices: Vec<usize>) -> Result<Self> {
        indices.sort_unstable();
        indices.dedup();
        for &j in &indices {
            d.check_index(j)?;
        }
        if circuit_kernel(d, &indices).is_none() {
            return Err(Error::NotACircuit { columns: indices });
        }
        Ok(CircuitSet(indices))
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// The `n - r` reduced invariants attached to one basis set: one per
/// quantity outside the basis, with that quantity's exponent positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisSetSystem {
    pub basis: BasisSet,
    /// `(non-basis quantity, invariant)` in quantity order.
    pub invariants: Vec<(usize, Invariant)>,
}

impl BasisSetSystem {
    pub fn invariant_for(&self, quantity: usize) -> Option<&Invariant> {
        self.invariants
            .iter()
            .find(|(j, _)| *j == quantity)
            .map(|(_, inv)| inv)
    }
}

/// All basis sets in lexicographic order of their index tuples.
pub fn enumerate_basis_sets(d: &DimensionalMatrix) -> Vec<BasisSet> {
    let r = d.rank();
    (0..d.n())
        .combinations(r)
        .filter(|s| d.column_rank(s) == r)
        .map(BasisSet)
        .collect()
}

/// Subsets `S` with `|S| ≤ r + 1` whose columns have rank `|S| - 1` and whose
/// one-dimensional kernel has no zero entry, in lexicographic order.
pub fn enumerate_circuit_sets(d: &DimensionalMatrix) -> Vec<CircuitSet> {
    circuits_with_kernels(d)
        .into_iter()
        .map(|(cs, _)| cs)
        .collect()
}

fn circuits_with_kernels(d: &DimensionalMatrix) -> Vec<(CircuitSet, PrimitiveVector)> {
    let mut out = Vec::new();
    for size in 1..=(d.rank() + 1).min(d.n()) {
        for subset in (0..d.n()).combinations(size) {
            if let Some(k) = circuit_kernel(d, &subset) {
                out.push((CircuitSet(subset), k));
            }
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

/// Primitive kernel vector of the columns `subset`, if they form a circuit.
/// The vector is indexed by position within `subset`.
fn circuit_kernel(d: &DimensionalMatrix, subset: &[usize]) -> Option<PrimitiveVector> {
    if subset.is_empty() || d.column_rank(subset) + 1 != subset.len() {
        return None;
    }
    let sub = d.matrix().select_columns(subset);
    let kernel = sub.kernel_basis().ok()?;
    debug_assert_eq!(kernel.vectors.len(), 1);
    let v = &kernel.vectors[0];
    if v.entries().iter().any(Zero::is_zero) {
        return None;
    }
    primitive_scale(v).ok()
}

fn embed(d: &DimensionalMatrix, subset: &[usize], local: &[BigInt]) -> Vec<BigInt> {
    let mut full = vec![BigInt::zero(); d.n()];
    for (&j, c) in subset.iter().zip(local) {
        full[j] = c.clone();
    }
    full
}

/// The pair of primitive invariants supported exactly on `cs`.
pub fn circuit_invariant(d: &DimensionalMatrix, cs: &CircuitSet) -> Result<InvariantPair> {
    let k = circuit_kernel(d, cs.indices()).ok_or_else(|| Error::NotACircuit {
        columns: cs.indices().to_vec(),
    })?;
    Ok(Invariant::from_trusted(embed(d, cs.indices(), k.entries())).pair())
}

/// `C(D)`: one invariant pair per circuit set, in circuit-set order.
pub fn circuit_basis(d: &DimensionalMatrix) -> Vec<InvariantPair> {
    circuits_with_kernels(d)
        .into_iter()
        .map(|(cs, k)| Invariant::from_trusted(embed(d, cs.indices(), k.entries())).pair())
        .collect()
}

/// Reduced invariants of a basis set.
///
/// For each quantity `q_i` outside the basis, its column is solved in terms
/// of the basis columns; the resulting kernel vector is scaled to a primitive
/// integer vector and oriented so that `q_i` has a positive exponent.
pub fn basis_set_invariants(d: &DimensionalMatrix, b: &BasisSet) -> Result<BasisSetSystem> {
    let b = BasisSet::new(d, b.indices().to_vec())?;
    let mut invariants = Vec::with_capacity(d.nullity());
    for i in (0..d.n()).filter(|&i| !b.contains(i)) {
        let inv = reduced_invariant(d, &b, i)?;
        invariants.push((i, inv));
    }
    Ok(BasisSetSystem {
        basis: b,
        invariants,
    })
}

fn reduced_invariant(d: &DimensionalMatrix, b: &BasisSet, i: usize) -> Result<Invariant> {
    let x = d.matrix().solve_in_basis(b.indices(), i)?;
    let mut c = vec![num_rational::BigRational::zero(); d.n()];
    c[i] = num_rational::BigRational::from_integer(1.into());
    for (&j, xj) in b.indices().iter().zip(x.entries()) {
        c[j] = -xj.clone();
    }
    let mut v = primitive_scale(&RationalVector::new(c))?.into_inner();
    if v[i].is_negative() {
        for e in v.iter_mut() {
            *e = -&*e;
        }
    }
    Ok(Invariant::from_trusted(v))
}

/// `U(D)`: reduced invariants of every basis set, deduplicated as pairs and
/// reported in canonical orientation, in order of first appearance.
pub fn unified_basis(d: &DimensionalMatrix) -> Vec<Invariant> {
    let systems: Vec<BasisSetSystem> = enumerate_basis_sets(d)
        .iter()
        .map(|b| basis_set_invariants(d, b).expect("enumerated basis sets are valid"))
        .collect();
    unify(&systems)
}

fn unify(systems: &[BasisSetSystem]) -> Vec<Invariant> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for sys in systems {
        for (_, inv) in &sys.invariants {
            let c = inv.canonical();
            if seen.insert(c.clone()) {
                out.push(c);
            }
        }
    }
    out
}

/// Everything the enumeration produces for one matrix, computed once.
#[derive(Clone, Debug)]
pub struct Inventory {
    pub basis_sets: Vec<BasisSet>,
    pub systems: Vec<BasisSetSystem>,
    pub circuit_sets: Vec<CircuitSet>,
    /// Parallel to `circuit_sets`.
    pub circuit_basis: Vec<InvariantPair>,
    pub unified_basis: Vec<Invariant>,
}

impl Inventory {
    pub fn compute(d: &DimensionalMatrix, limits: &Limits) -> Result<Self> {
        limits.check(d)?;
        let basis_sets = enumerate_basis_sets(d);
        let systems = basis_sets
            .iter()
            .map(|b| basis_set_invariants(d, b))
            .collect::<Result<Vec<_>>>()?;
        let (circuit_sets, circuit_basis) = circuits_with_kernels(d)
            .into_iter()
            .map(|(cs, k)| {
                let pair = Invariant::from_trusted(embed(d, cs.indices(), k.entries())).pair();
                (cs, pair)
            })
            .unzip();
        let unified_basis = unify(&systems);
        Ok(Inventory {
            basis_sets,
            systems,
            circuit_sets,
            circuit_basis,
            unified_basis,
        })
    }

    /// `(n - r, C(n, r + 1))`, the bounds on `‖C(D)‖`.
    pub fn circuit_count_bounds(d: &DimensionalMatrix) -> (usize, usize) {
        let upper = if d.rank() < d.n() {
            binomial(d.n(), d.rank() + 1)
        } else {
            0
        };
        (d.nullity(), upper)
    }

    /// `true` when every unified-basis element belongs to a circuit pair.
    pub fn unified_within_circuits(&self) -> bool {
        let pairs: BTreeSet<&InvariantPair> = self.circuit_basis.iter().collect();
        self.unified_basis.iter().all(|u| pairs.contains(&u.pair()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pipe() -> DimensionalMatrix {
        DimensionalMatrix::from_columns(
            &["L", "T", "M"],
            &[
                ("dP/l", &[-2, -2, 1]),
                ("rho", &[-3, 0, 1]),
                ("mu", &[-1, -1, 1]),
                ("d", &[1, 0, 0]),
                ("u", &[1, -1, 0]),
            ],
        )
        .unwrap()
    }

    fn falling() -> DimensionalMatrix {
        DimensionalMatrix::from_columns(
            &["L", "T"],
            &[
                ("S(t)", &[1, 0]),
                ("S0", &[1, 0]),
                ("V0", &[1, -1]),
                ("g", &[1, -2]),
                ("t", &[0, 1]),
            ],
        )
        .unwrap()
    }

    fn two_body() -> DimensionalMatrix {
        DimensionalMatrix::from_columns(
            &["L", "T", "M"],
            &[
                ("t", &[0, 1, 0]),
                ("d", &[1, 0, 0]),
                ("m1", &[0, 0, 1]),
                ("m2", &[0, 0, 1]),
                ("G", &[3, -2, -1]),
            ],
        )
        .unwrap()
    }

    fn inv(d: &DimensionalMatrix, e: &[i64]) -> Invariant {
        Invariant::from_i64(d, e).unwrap()
    }

    #[test]
    fn basis_set_counts() {
        assert_eq!(enumerate_basis_sets(&pipe()).len(), 10);
        assert_eq!(enumerate_basis_sets(&falling()).len(), 9);
        let tb = enumerate_basis_sets(&two_body());
        assert_eq!(tb.len(), 7);
        assert!(tb.iter().all(|b| !(b.contains(2) && b.contains(3))));
    }

    #[test]
    fn pipe_circuit_sets() {
        let cs: Vec<Vec<usize>> = enumerate_circuit_sets(&pipe())
            .into_iter()
            .map(|c| c.indices().to_vec())
            .collect();
        assert_eq!(
            cs,
            vec![
                vec![0, 1, 2, 3],
                vec![0, 1, 2, 4],
                vec![0, 1, 3, 4],
                vec![0, 2, 3, 4],
                vec![1, 2, 3, 4]
            ]
        );
    }

    #[test]
    fn one_by_two_circuit() {
        let d = DimensionalMatrix::from_columns(&["X"], &[("q1", &[1]), ("q2", &[-1])]).unwrap();
        let cs = enumerate_circuit_sets(&d);
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].indices(), &[0, 1]);
    }

    #[test]
    fn zero_column_is_singleton_circuit() {
        let d = DimensionalMatrix::from_columns(&["L"], &[("a", &[1]), ("z", &[0]), ("b", &[2])])
            .unwrap();
        let cs = enumerate_circuit_sets(&d);
        assert!(cs.iter().any(|c| c.indices() == [1]));
        let pair = circuit_invariant(&d, &cs.iter().find(|c| c.indices() == [1]).unwrap().clone())
            .unwrap();
        assert_eq!(pair.canonical(), &inv(&d, &[0, 1, 0]));
    }

    #[test]
    fn circuit_invariant_examples() {
        let d = pipe();
        let cs = CircuitSet::new(&d, vec![1, 2, 3, 4]).unwrap();
        assert_eq!(
            circuit_invariant(&d, &cs).unwrap().canonical(),
            &inv(&d, &[0, 1, -1, 1, 1])
        );

        let d = falling();
        let cs = CircuitSet::new(&d, vec![1, 2, 3]).unwrap();
        assert_eq!(
            circuit_invariant(&d, &cs).unwrap().canonical(),
            &inv(&d, &[0, 1, -2, 1, 0])
        );

        let d = two_body();
        let cs = CircuitSet::new(&d, vec![2, 3]).unwrap();
        assert_eq!(
            circuit_invariant(&d, &cs).unwrap().canonical(),
            &inv(&d, &[0, 0, 1, -1, 0])
        );
    }

    #[test]
    fn non_circuit_rejected() {
        let d = pipe();
        assert!(matches!(
            CircuitSet::new(&d, vec![1, 2, 3]),
            Err(Error::NotACircuit { .. })
        ));
        let d = falling();
        // {S(t), S0, V0} is dependent but not minimal
        assert!(CircuitSet::new(&d, vec![0, 1, 2]).is_err());
    }

    #[test]
    fn circuit_basis_sizes() {
        assert_eq!(circuit_basis(&pipe()).len(), 5);
        assert_eq!(circuit_basis(&falling()).len(), 8);
        assert_eq!(circuit_basis(&two_body()).len(), 3);
    }

    #[test]
    fn pipe_basis_set_systems() {
        let d = pipe();
        let sys = basis_set_invariants(&d, &BasisSet::new(&d, vec![1, 2, 3]).unwrap()).unwrap();
        assert_eq!(
            sys.invariants,
            vec![
                (0, inv(&d, &[1, 1, -2, 3, 0])),
                (4, inv(&d, &[0, 1, -1, 1, 1]))
            ]
        );
        let sys = basis_set_invariants(&d, &BasisSet::new(&d, vec![2, 3, 4]).unwrap()).unwrap();
        assert_eq!(
            sys.invariants,
            vec![
                (0, inv(&d, &[1, 0, -1, 2, -1])),
                (1, inv(&d, &[0, 1, -1, 1, 1]))
            ]
        );
    }

    #[test]
    fn falling_basis_set_system() {
        let d = falling();
        let sys = basis_set_invariants(&d, &BasisSet::new(&d, vec![1, 3]).unwrap()).unwrap();
        assert_eq!(
            sys.invariants,
            vec![
                (0, inv(&d, &[1, -1, 0, 0, 0])),
                (2, inv(&d, &[0, -1, 2, -1, 0])),
                (4, inv(&d, &[0, -1, 0, 1, 2])),
            ]
        );
    }

    #[test]
    fn basis_set_invariants_rejects_non_basis() {
        let d = falling();
        let bogus = BasisSet(vec![0, 1]);
        assert!(matches!(
            basis_set_invariants(&d, &bogus),
            Err(Error::NotABasis { .. })
        ));
    }

    #[test]
    fn unified_basis_examples() {
        let d = pipe();
        let u = unified_basis(&d);
        assert_eq!(u.len(), 5);
        let upairs: BTreeSet<_> = u.iter().map(Invariant::pair).collect();
        let cpairs: BTreeSet<_> = circuit_basis(&d).into_iter().collect();
        assert_eq!(upairs, cpairs);

        let d = DimensionalMatrix::from_columns(&["X"], &[("q1", &[1]), ("q2", &[-1])]).unwrap();
        assert_eq!(unified_basis(&d), vec![inv(&d, &[1, 1])]);

        let d = DimensionalMatrix::from_columns(
            &["L", "T", "M"],
            &[
                ("dP/l", &[-2, -2, 1]),
                ("mu", &[-1, -1, 1]),
                ("d", &[1, 0, 0]),
                ("u", &[1, -1, 0]),
            ],
        )
        .unwrap();
        assert_eq!(unified_basis(&d), vec![inv(&d, &[1, -1, 2, -1])]);
    }

    #[test]
    fn rank_zero_matrix() {
        let d = DimensionalMatrix::from_columns(&["L"], &[("a", &[0]), ("b", &[0])]).unwrap();
        let inv = Inventory::compute(&d, &Limits::default()).unwrap();
        assert_eq!(inv.basis_sets, vec![BasisSet(vec![])]);
        assert_eq!(inv.circuit_sets.len(), 2);
        assert_eq!(inv.systems[0].invariants.len(), 2);
    }

    #[test]
    fn full_column_rank_has_no_circuits() {
        let d = DimensionalMatrix::from_columns(&["L", "T"], &[("a", &[1, 0]), ("b", &[0, 1])])
            .unwrap();
        let inv = Inventory::compute(&d, &Limits::default()).unwrap();
        assert!(inv.circuit_basis.is_empty() && inv.unified_basis.is_empty());
        assert_eq!(Inventory::circuit_count_bounds(&d), (0, 0));
    }

    #[test]
    fn size_cap() {
        let d = pipe();
        assert_eq!(
            Inventory::compute(&d, &Limits { max_n: 4 }).unwrap_err(),
            Error::SizeCap { n: 5, max: 4 }
        );
    }

    #[test]
    fn duplicate_columns_give_two_element_circuits() {
        let d = falling();
        assert_eq!(enumerate_circuit_sets(&d)[0].indices(), &[0, 1]);
    }
}
