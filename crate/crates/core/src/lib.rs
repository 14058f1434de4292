//! Generalized dimensional analysis with exact integer arithmetic.
//!
//! Classical dimensional analysis picks one set of repeating quantities and
//! derives one relation between `n - r` dimensionless groups. This crate
//! enumerates everything instead:
//!
//! * all basis sets (maximal independent sets of quantities) and, for each,
//!   its `n - r` reduced invariants,
//! * all circuit sets (minimal dependent sets) and the circuit basis `C(D)`,
//! * the unified basis `U(D)`,
//! * the Graver basis `G(D)` of the integer kernel,
//! * every representation `q = ∏ q_j^{e_j} · Φ(π…)` of a functional relation
//!   for a chosen dependent quantity, bundled as an equation system.
//!
//! ```
//! use dimalg::{circuit_basis, render_invariant, unified_basis, DimensionalMatrix, Style};
//!
//! // pressure drop per length, density, viscosity, diameter, velocity
//! let d = DimensionalMatrix::from_columns(
//!     &["L", "T", "M"],
//!     &[
//!         ("dP/l", &[-2, -2, 1]),
//!         ("rho", &[-3, 0, 1]),
//!         ("mu", &[-1, -1, 1]),
//!         ("d", &[1, 0, 0]),
//!         ("u", &[1, -1, 0]),
//!     ],
//! )?;
//! let c = circuit_basis(&d);
//! assert_eq!(c.len(), 5);
//! assert_eq!(render_invariant(c[4].canonical(), &d, Style::Text), "rho·d·u / mu");
//! assert_eq!(unified_basis(&d).len(), 5);
//! # Ok::<(), dimalg::Error>(())
//! ```
//!
//! The guide in `book/` walks through the concepts with worked examples.

pub mod check;
pub mod cli;
pub mod enumeration;
mod error;
pub mod graver;
pub mod json;
pub mod linalg;
pub mod model;
pub mod problem;
pub mod render;
pub mod representations;

pub use enumeration::{
    basis_set_invariants, circuit_basis, circuit_invariant, enumerate_basis_sets,
    enumerate_circuit_sets, unified_basis, BasisSet, BasisSetSystem, CircuitSet, Inventory, Limits,
};
pub use error::{Error, Result};
pub use graver::{
    check_circuits_in_graver, graver_basis, CircuitContainment, GraverElement, GraverMethod,
};
pub use linalg::{primitive_scale, IntMatrix, PrimitiveVector, RationalVector};
pub use model::{DimensionSystem, DimensionalMatrix, Invariant, InvariantPair, Quantity};
pub use problem::{parse_problem, Problem};
pub use render::{render_invariant, render_representation, PowerForm, Style};
pub use representations::{
    admissible_basis_sets, build_representation, equation_system, EquationSystem, Representation,
};

// The guide's code blocks run as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/dimensional-matrix.md")]
    mod dimensional_matrix {}
    #[doc = include_str!("../../../book/src/invariants.md")]
    mod invariants {}
    #[doc = include_str!("../../../book/src/basis-and-circuit-sets.md")]
    mod basis_and_circuit_sets {}
    #[doc = include_str!("../../../book/src/graver.md")]
    mod graver {}
    #[doc = include_str!("../../../book/src/representations.md")]
    mod representations {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
