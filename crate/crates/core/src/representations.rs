//! Every representation of a functional relation `q = Ψ(...)`.
//!
//! Given a dependent quantity, each basis set avoiding it (and any excluded
//! quantities) yields one representation
//!
//! ```text
//! q = ∏ q_j^{-c_j/b} · Φ(π_1, ..., π_{n-r-1})
//! ```
//!
//! where `q^b ∏ q_j^{c_j}` is the reduced invariant of `q` for that basis set
//! and the `π_k` are the reduced invariants of the other non-basis
//! quantities. The set of all of them, taken together, forms an equation
//! system. Excluded quantities stay in the matrix and may appear inside
//! invariants; they are only barred from basis sets.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::enumeration::{basis_set_invariants, enumerate_basis_sets, BasisSet};
use crate::error::{Error, Result};
use crate::model::{DimensionalMatrix, Invariant};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    pub dependent: usize,
    pub basis: BasisSet,
    /// Exponents of the explicit prefactor, over basis quantities with a
    /// nonzero exponent, in quantity order.
    pub scaling: Vec<(usize, BigRational)>,
    /// Reduced invariant of the dependent quantity, its exponent positive.
    pub dependent_invariant: Invariant,
    /// Arguments of Φ, in quantity order of their non-basis quantity.
    pub active_invariants: Vec<Invariant>,
    /// 1-based index of the unknown function Φ.
    pub function_number: usize,
}

impl Representation {
    pub fn function_name(&self) -> String {
        format!("Φ{}", self.function_number)
    }

    /// Exponent `b > 0` of the dependent quantity in its invariant.
    pub fn dependent_power(&self) -> &BigInt {
        self.dependent_invariant.exponent(self.dependent)
    }

    /// Integer-power form `q^b = ∏ q_j^{-c_j} · Φ(...)`.
    pub fn integer_power_form(&self) -> (BigInt, Vec<(usize, BigInt)>) {
        let b = self.dependent_power().clone();
        let exps = self
            .basis
            .indices()
            .iter()
            .filter(|&&j| !self.dependent_invariant.exponent(j).is_zero())
            .map(|&j| (j, -self.dependent_invariant.exponent(j)))
            .collect();
        (b, exps)
    }

    /// Rational coefficients `a` with
    /// `target = a_0 · dependent_invariant + Σ a_k · active_invariants[k-1]`
    /// (exponent vectors), or `None` when no such combination exists.
    ///
    /// Every invariant of the matrix has such a combination, because the
    /// `n - r` reduced invariants of a basis set span the kernel.
    pub fn express(&self, target: &Invariant) -> Option<Vec<BigRational>> {
        let n = target.len();
        let generators: Vec<&Invariant> = std::iter::once(&self.dependent_invariant)
            .chain(&self.active_invariants)
            .collect();
        let mut coeffs = Vec::with_capacity(generators.len());
        let mut sum = vec![BigRational::zero(); n];
        for g in &generators {
            // each generator has exactly one non-basis quantity in its support
            let pivot = g.support().into_iter().find(|&j| !self.basis.contains(j))?;
            let a = BigRational::new(target.exponent(pivot).clone(), g.exponent(pivot).clone());
            for (s, e) in sum.iter_mut().zip(g.exponents()) {
                *s += &a * BigRational::from_integer(e.clone());
            }
            coeffs.push(a);
        }
        let matches = sum
            .iter()
            .zip(target.exponents())
            .all(|(s, t)| *s == BigRational::from_integer(t.clone()));
        matches.then_some(coeffs)
    }

    /// Prefactor value `∏ values[j]^{scaling_j}` in floating point.
    pub fn prefactor_value(&self, values: &[f64]) -> f64 {
        use num_traits::ToPrimitive;
        self.scaling
            .iter()
            .map(|(j, e)| e.to_f64().unwrap_or(f64::NAN) * values[*j].ln())
            .sum::<f64>()
            .exp()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquationSystem {
    pub dependent: usize,
    pub excluded: Vec<usize>,
    pub representations: Vec<Representation>,
}

impl EquationSystem {
    /// Set when no basis set avoids the dependent and excluded quantities.
    pub fn is_empty(&self) -> bool {
        self.representations.is_empty()
    }

    pub fn warning(&self) -> Option<&'static str> {
        self.is_empty()
            .then_some("no admissible basis set: every basis set contains the dependent or an excluded quantity")
    }
}

fn check_directives(d: &DimensionalMatrix, dependent: usize, excluded: &[usize]) -> Result<()> {
    d.check_index(dependent)?;
    for &e in excluded {
        d.check_index(e)?;
    }
    if excluded.contains(&dependent) {
        return Err(Error::DependentExcluded(dependent));
    }
    Ok(())
}

/// Basis sets containing neither the dependent nor an excluded quantity.
pub fn admissible_basis_sets(
    d: &DimensionalMatrix,
    dependent: usize,
    excluded: &[usize],
) -> Result<Vec<BasisSet>> {
    check_directives(d, dependent, excluded)?;
    Ok(enumerate_basis_sets(d)
        .into_iter()
        .filter(|b| !b.contains(dependent) && !excluded.iter().any(|&e| b.contains(e)))
        .collect())
}

pub fn build_representation(
    d: &DimensionalMatrix,
    dependent: usize,
    basis: &BasisSet,
) -> Result<Representation> {
    d.check_index(dependent)?;
    if basis.contains(dependent) {
        return Err(Error::BarredFromBasis(dependent));
    }
    let system = basis_set_invariants(d, basis)?;
    let mut dependent_invariant = None;
    let mut active_invariants = Vec::new();
    for (j, inv) in system.invariants {
        if j == dependent {
            dependent_invariant = Some(inv);
        } else {
            active_invariants.push(inv);
        }
    }
    let dependent_invariant =
        dependent_invariant.expect("a non-basis quantity always has a reduced invariant");
    let b = dependent_invariant.exponent(dependent).clone();
    let scaling = system
        .basis
        .indices()
        .iter()
        .filter(|&&j| !dependent_invariant.exponent(j).is_zero())
        .map(|&j| {
            (
                j,
                BigRational::new(-dependent_invariant.exponent(j), b.clone()),
            )
        })
        .collect();
    Ok(Representation {
        dependent,
        basis: system.basis,
        scaling,
        dependent_invariant,
        active_invariants,
        function_number: 1,
    })
}

/// One representation per admissible basis set, numbered Φ1, Φ2, … in
/// basis-set order.
pub fn equation_system(
    d: &DimensionalMatrix,
    dependent: usize,
    excluded: &[usize],
) -> Result<EquationSystem> {
    let mut excluded = excluded.to_vec();
    excluded.sort_unstable();
    excluded.dedup();
    let representations = admissible_basis_sets(d, dependent, &excluded)?
        .iter()
        .enumerate()
        .map(|(k, b)| {
            build_representation(d, dependent, b).map(|mut r| {
                r.function_number = k + 1;
                r
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(EquationSystem {
        dependent,
        excluded,
        representations,
    })
}

/// `dims(dependent) = Σ scaling_j · dims(j)`, checked exactly.
pub fn prefactor_has_dependent_dims(d: &DimensionalMatrix, r: &Representation) -> bool {
    (0..d.m()).all(|i| {
        let lhs = BigRational::from_integer(d.matrix().get(i, r.dependent).clone());
        let rhs: BigRational = r
            .scaling
            .iter()
            .map(|(j, e)| e * BigRational::from_integer(d.matrix().get(i, *j).clone()))
            .sum();
        lhs == rhs
    })
}

/// `true` when `r1`'s dependent invariant is an integer-exponent product of
/// `r2`'s dependent invariant and active invariants.
pub fn integrally_related(r1: &Representation, r2: &Representation) -> bool {
    r2.express(&r1.dependent_invariant)
        .is_some_and(|c| c.iter().all(|a| a.denom().is_one()))
}
