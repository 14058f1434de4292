//! Self-check of the structural properties every result must satisfy.

use crate::enumeration::{Inventory, Limits};
use crate::error::Result;
use crate::graver::{check_circuits_in_graver, GraverMethod};
use crate::linalg::is_primitive;
use crate::model::{DimensionalMatrix, Invariant};
use crate::representations::{equation_system, prefactor_has_dependent_dims};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn new(name: &'static str, failures: Vec<String>, ok_detail: String) -> Self {
        let passed = failures.is_empty();
        CheckOutcome {
            name,
            passed,
            detail: if passed {
                ok_detail
            } else {
                failures.join("; ")
            },
        }
    }
}

/// Runs every check; `dependent` and `excluded` enable the representation
/// checks.
pub fn run_checks(
    d: &DimensionalMatrix,
    dependent: Option<usize>,
    excluded: &[usize],
    method: GraverMethod,
    limits: &Limits,
) -> Result<Vec<CheckOutcome>> {
    let inv = Inventory::compute(d, limits)?;
    let containment = check_circuits_in_graver(d, method, limits)?;

    let mut emitted: Vec<(String, Invariant)> = Vec::new();
    for sys in &inv.systems {
        for (j, i) in &sys.invariants {
            emitted.push((format!("basis {:?} / q{j}", sys.basis.indices()), i.clone()));
        }
    }
    for (cs, p) in inv.circuit_sets.iter().zip(&inv.circuit_basis) {
        emitted.push((format!("circuit {:?}", cs.indices()), p.canonical().clone()));
    }
    for u in &inv.unified_basis {
        emitted.push(("unified".into(), u.clone()));
    }
    for g in &containment.graver {
        emitted.push(("graver".into(), g.to_invariant()));
    }

    let mut out = Vec::new();
    out.push(CheckOutcome::new(
        "kernel-membership",
        emitted
            .iter()
            .filter(|(_, i)| !d.is_kernel_vector(i.exponents()))
            .map(|(w, i)| format!("{w}: {i}"))
            .collect(),
        format!("{} vectors", emitted.len()),
    ));
    out.push(CheckOutcome::new(
        "primitive",
        emitted
            .iter()
            .filter(|(_, i)| !is_primitive(i.exponents()))
            .map(|(w, i)| format!("{w}: {i}"))
            .collect(),
        format!("{} vectors", emitted.len()),
    ));

    let r = d.rank();
    out.push(CheckOutcome::new(
        "basis-sets",
        inv.basis_sets
            .iter()
            .filter(|b| b.len() != r || d.column_rank(b.indices()) != r)
            .map(|b| format!("{:?}", b.indices()))
            .collect(),
        format!("{} basis sets", inv.basis_sets.len()),
    ));

    let mut shape = Vec::new();
    for sys in &inv.systems {
        if sys.invariants.len() != d.nullity() {
            shape.push(format!(
                "{:?}: {} invariants",
                sys.basis.indices(),
                sys.invariants.len()
            ));
        }
        for (j, i) in &sys.invariants {
            let outside: Vec<usize> = i
                .support()
                .into_iter()
                .filter(|k| !sys.basis.contains(*k))
                .collect();
            if outside != [*j] || !num_traits::Signed::is_positive(i.exponent(*j)) {
                shape.push(format!("{:?} / q{j}: {i}", sys.basis.indices()));
            }
        }
    }
    out.push(CheckOutcome::new(
        "system-shape",
        shape,
        format!("{} systems", inv.systems.len()),
    ));

    out.push(CheckOutcome::new(
        "circuit-minimality",
        inv.circuit_sets
            .iter()
            .filter(|cs| {
                let s = cs.indices();
                d.column_rank(s) + 1 != s.len()
                    || (0..s.len()).any(|k| {
                        let mut sub = s.to_vec();
                        sub.remove(k);
                        d.column_rank(&sub) != sub.len()
                    })
            })
            .map(|cs| format!("{:?}", cs.indices()))
            .collect(),
        format!("{} circuit sets", inv.circuit_sets.len()),
    ));

    let (lo, hi) = Inventory::circuit_count_bounds(d);
    let count = inv.circuit_basis.len();
    out.push(CheckOutcome::new(
        "cardinality-bounds",
        if lo <= count && count <= hi || (lo == 0 && count == 0) {
            vec![]
        } else {
            vec![format!("{lo} <= {count} <= {hi} violated")]
        },
        format!("{lo} <= {count} <= {hi}"),
    ));

    out.push(CheckOutcome::new(
        "unified-in-circuit",
        if inv.unified_within_circuits() {
            vec![]
        } else {
            vec!["unified basis element outside the circuit basis".into()]
        },
        format!(
            "{} unified, {} circuit pairs",
            inv.unified_basis.len(),
            count
        ),
    ));

    out.push(CheckOutcome::new(
        "circuits-in-graver",
        containment
            .missing
            .iter()
            .map(ToString::to_string)
            .collect(),
        format!(
            "{} graver pairs via {method}, {} non-circuit",
            containment.graver.len(),
            containment.non_circuit.len()
        ),
    ));

    if let Some(dep) = dependent {
        let sys = equation_system(d, dep, excluded)?;
        out.push(CheckOutcome::new(
            "prefactor-dimensions",
            sys.representations
                .iter()
                .filter(|r| !prefactor_has_dependent_dims(d, r))
                .map(|r| r.function_name())
                .collect(),
            format!("{} representations", sys.representations.len()),
        ));
        let mut unrelated = Vec::new();
        for r1 in &sys.representations {
            for r2 in &sys.representations {
                if r2.express(&r1.dependent_invariant).is_none() {
                    unrelated.push(format!("{} via {}", r1.function_name(), r2.function_name()));
                }
            }
        }
        out.push(CheckOutcome::new(
            "representation-equivalence",
            unrelated,
            format!("{} pairs", sys.representations.len().pow(2)),
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pipe_passes() {
        let d = DimensionalMatrix::from_columns(
            &["L", "T", "M"],
            &[
                ("dP/l", &[-2, -2, 1]),
                ("rho", &[-3, 0, 1]),
                ("mu", &[-1, -1, 1]),
                ("d", &[1, 0, 0]),
                ("u", &[1, -1, 0]),
            ],
        )
        .unwrap();
        let out = run_checks(
            &d,
            Some(0),
            &[],
            GraverMethod::Completion,
            &Limits::default(),
        )
        .unwrap();
        assert_eq!(out.len(), 10);
        assert!(out.iter().all(|c| c.passed), "{out:?}");
    }

    #[test]
    fn small_brute_bound_misses_circuits() {
        // (1,1,-2,3,0) needs |c| = 3
        let d = DimensionalMatrix::from_columns(
            &["L", "T", "M"],
            &[
                ("dP/l", &[-2, -2, 1]),
                ("rho", &[-3, 0, 1]),
                ("mu", &[-1, -1, 1]),
                ("d", &[1, 0, 0]),
                ("u", &[1, -1, 0]),
            ],
        )
        .unwrap();
        let out = run_checks(
            &d,
            None,
            &[],
            GraverMethod::BruteForce { bound: 2 },
            &Limits::default(),
        )
        .unwrap();
        let g = out.iter().find(|c| c.name == "circuits-in-graver").unwrap();
        assert!(!g.passed);
    }
}
