//! Machine-readable output.
//!
//! Every command emits one [`Bundle`]. Fields that a command does not
//! compute are omitted; field order is fixed by the struct definitions and
//! arrays follow quantity or lexicographic order, so identical inputs give
//! byte-identical documents.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};

use crate::enumeration::{BasisSetSystem, Inventory};
use crate::graver::{CircuitContainment, GraverElement, GraverMethod};
use crate::model::{DimensionalMatrix, Invariant};
use crate::render::{render_invariant, render_representation, PowerForm, Style};
use crate::representations::{EquationSystem, Representation};

pub const SCHEMA_VERSION: u32 = 1;

/// Integer serialized as a JSON number when it fits in 64 bits, else as a
/// decimal string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JsonInt(pub BigInt);

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Bundle {
    pub schema_version: u32,
    pub command: String,
    pub dimensions: Vec<String>,
    pub quantities: Vec<String>,
    pub n: usize,
    pub rank: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basis_sets: Option<Vec<Vec<usize>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub systems: Option<Vec<JsonSystem>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub circuits: Option<Vec<Vec<usize>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub invariants: Option<Vec<JsonInvariant>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dependent: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub excluded: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub representations: Option<Vec<JsonRepresentation>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graver: Option<JsonGraver>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub check: Option<Vec<JsonCheck>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct JsonInvariant {
    pub exponents: Vec<JsonInt>,
    pub text: String,
    pub latex: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct JsonSystem {
    pub basis: Vec<usize>,
    pub invariants: Vec<JsonInvariant>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct JsonRepresentation {
    pub function: String,
    pub dependent: String,
    pub basis: Vec<usize>,
    /// `[name, numerator, denominator]`.
    pub scaling: Vec<(String, JsonInt, JsonInt)>,
    pub dependent_invariant: JsonInvariant,
    pub active_invariants: Vec<JsonInvariant>,
    pub text: String,
    pub latex: String,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct JsonGraver {
    pub method: String,
    pub elements: Vec<JsonGraverElement>,
    pub circuits_contained: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct JsonGraverElement {
    #[serde(flatten)]
    pub invariant: JsonInvariant,
    pub circuit: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct JsonCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Bundle {
    pub fn new(command: &str, d: &DimensionalMatrix) -> Self {
        Bundle {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            dimensions: d.system().names().to_vec(),
            quantities: d.names().into_iter().map(String::from).collect(),
            n: d.n(),
            rank: d.rank(),
            basis_sets: None,
            systems: None,
            circuits: None,
            invariants: None,
            dependent: None,
            excluded: None,
            warning: None,
            representations: None,
            graver: None,
            check: None,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("bundle serialization cannot fail");
        s.push('\n');
        s
    }
}

pub fn invariant(inv: &Invariant, d: &DimensionalMatrix) -> JsonInvariant {
    JsonInvariant {
        exponents: inv.exponents().iter().cloned().map(JsonInt).collect(),
        text: render_invariant(inv, d, Style::Text),
        latex: render_invariant(inv, d, Style::Latex),
    }
}

pub fn system(sys: &BasisSetSystem, d: &DimensionalMatrix) -> JsonSystem {
    JsonSystem {
        basis: sys.basis.indices().to_vec(),
        invariants: sys
            .invariants
            .iter()
            .map(|(_, inv)| invariant(inv, d))
            .collect(),
    }
}

pub fn basis_sets(inv: &Inventory) -> Vec<Vec<usize>> {
    inv.basis_sets
        .iter()
        .map(|b| b.indices().to_vec())
        .collect()
}

pub fn circuits(inv: &Inventory) -> Vec<Vec<usize>> {
    inv.circuit_sets
        .iter()
        .map(|c| c.indices().to_vec())
        .collect()
}

pub fn representation(
    r: &Representation,
    d: &DimensionalMatrix,
    form: PowerForm,
) -> JsonRepresentation {
    JsonRepresentation {
        function: r.function_name(),
        dependent: d.quantity(r.dependent).name.clone(),
        basis: r.basis.indices().to_vec(),
        scaling: r
            .scaling
            .iter()
            .map(|(j, e)| {
                (
                    d.quantity(*j).name.clone(),
                    JsonInt(e.numer().clone()),
                    JsonInt(e.denom().clone()),
                )
            })
            .collect(),
        dependent_invariant: invariant(&r.dependent_invariant, d),
        active_invariants: r
            .active_invariants
            .iter()
            .map(|i| invariant(i, d))
            .collect(),
        text: render_representation(r, d, Style::Text, form),
        latex: render_representation(r, d, Style::Latex, form),
    }
}

impl Bundle {
    pub fn set_equation_system(
        &mut self,
        sys: &EquationSystem,
        d: &DimensionalMatrix,
        form: PowerForm,
    ) {
        self.dependent = Some(d.quantity(sys.dependent).name.clone());
        self.excluded = Some(
            sys.excluded
                .iter()
                .map(|&j| d.quantity(j).name.clone())
                .collect(),
        );
        self.warning = sys.warning().map(String::from);
        self.representations = Some(
            sys.representations
                .iter()
                .map(|r| representation(r, d, form))
                .collect(),
        );
    }
}

pub fn graver(
    method: GraverMethod,
    elements: &[GraverElement],
    report: &CircuitContainment,
    d: &DimensionalMatrix,
) -> JsonGraver {
    JsonGraver {
        method: method.to_string(),
        elements: elements
            .iter()
            .map(|g| JsonGraverElement {
                invariant: invariant(&g.to_invariant(), d),
                circuit: !report.non_circuit.contains(g),
            })
            .collect(),
        circuits_contained: report.contained,
    }
}
