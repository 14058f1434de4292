//! Text and LaTeX rendering of invariants and representations.
//!
//! Factors with positive exponents go in the numerator and the rest in the
//! denominator, each side in quantity order. An exponent of 1 is not written.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::model::{DimensionalMatrix, Invariant};
use crate::representations::{EquationSystem, Representation};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Style {
    Text,
    Latex,
}

/// Whether a representation is written for `q` itself (rational prefactor
/// exponents) or for `q^b` with integer exponents.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PowerForm {
    #[default]
    Rational,
    Integer,
}

fn text_base(name: &str) -> String {
    if name.contains('/') {
        format!("({name})")
    } else {
        name.to_string()
    }
}

fn latex_name(d: &DimensionalMatrix, j: usize) -> String {
    let q = d.quantity(j);
    match &q.display {
        Some(tex) => tex.clone(),
        None => latex_escape(&q.name),
    }
}

fn latex_base(d: &DimensionalMatrix, j: usize) -> String {
    let base = latex_name(d, j);
    if base.contains('/') {
        format!("\\left({base}\\right)")
    } else {
        base
    }
}

fn latex_escape(name: &str) -> String {
    let escaped = name.replace('_', "\\_");
    if name.chars().count() == 1 {
        escaped
    } else {
        format!("\\mathrm{{{escaped}}}")
    }
}

fn is_atom(tex: &str) -> bool {
    tex.chars().count() == 1
        || (tex.starts_with('\\') && tex[1..].chars().all(|c| c.is_ascii_alphabetic()))
}

fn factor(d: &DimensionalMatrix, j: usize, e: &BigRational, style: Style) -> String {
    match style {
        Style::Text => {
            let base = text_base(&d.quantity(j).name);
            if e.is_one() {
                base
            } else if e.is_integer() {
                format!("{base}^{e}")
            } else {
                format!("{base}^({e})")
            }
        }
        Style::Latex => {
            let base = latex_base(d, j);
            if e.is_one() {
                return base;
            }
            let base = if is_atom(&base) {
                base
            } else {
                format!("{{{base}}}")
            };
            if e.is_integer() {
                format!("{base}^{{{e}}}")
            } else {
                format!("{base}^{{{}/{}}}", e.numer(), e.denom())
            }
        }
    }
}

/// Renders `∏ q_j^{e_j}` for arbitrary rational exponents.
pub fn render_monomial(
    d: &DimensionalMatrix,
    exps: &[(usize, BigRational)],
    style: Style,
) -> String {
    let mut exps: Vec<&(usize, BigRational)> = exps.iter().filter(|(_, e)| !e.is_zero()).collect();
    exps.sort_by_key(|(j, _)| *j);
    let num: Vec<String> = exps
        .iter()
        .filter(|(_, e)| e.is_positive())
        .map(|(j, e)| factor(d, *j, e, style))
        .collect();
    let den: Vec<String> = exps
        .iter()
        .filter(|(_, e)| e.is_negative())
        .map(|(j, e)| factor(d, *j, &-e, style))
        .collect();
    match style {
        Style::Text => {
            let top = if num.is_empty() {
                "1".to_string()
            } else {
                num.join("·")
            };
            match den.len() {
                0 => top,
                1 => format!("{top} / {}", den[0]),
                _ => format!("{top} / ({})", den.join("·")),
            }
        }
        Style::Latex => {
            let top = if num.is_empty() {
                "1".to_string()
            } else {
                num.join(" ")
            };
            if den.is_empty() {
                top
            } else {
                format!("\\frac{{{top}}}{{{}}}", den.join(" "))
            }
        }
    }
}

fn as_rational(exps: impl IntoIterator<Item = (usize, BigInt)>) -> Vec<(usize, BigRational)> {
    exps.into_iter()
        .map(|(j, e)| (j, BigRational::from_integer(e)))
        .collect()
}

pub fn render_invariant(inv: &Invariant, d: &DimensionalMatrix, style: Style) -> String {
    let exps = as_rational(inv.exponents().iter().cloned().enumerate());
    render_monomial(d, &exps, style)
}

/// One line such as `dP/l = rho·u^2 / d · Φ3(mu / (rho·d·u))`.
pub fn render_representation(
    r: &Representation,
    d: &DimensionalMatrix,
    style: Style,
    form: PowerForm,
) -> String {
    let (lhs, prefactor) = match form {
        PowerForm::Rational => (
            match style {
                Style::Text => d.quantity(r.dependent).name.clone(),
                Style::Latex => latex_name(d, r.dependent),
            },
            render_monomial(d, &r.scaling, style),
        ),
        PowerForm::Integer => {
            let (b, exps) = r.integer_power_form();
            (
                render_monomial(d, &[(r.dependent, BigRational::from_integer(b))], style),
                render_monomial(d, &as_rational(exps), style),
            )
        }
    };
    let args: Vec<String> = r
        .active_invariants
        .iter()
        .map(|inv| render_invariant(inv, d, style))
        .collect();
    // a representation without active invariants has a constant Φ
    match (style, args.is_empty()) {
        (Style::Text, true) => format!("{lhs} = {prefactor} · {}", r.function_name()),
        (Style::Text, false) => format!(
            "{lhs} = {prefactor} · {}({})",
            r.function_name(),
            args.join(", ")
        ),
        (Style::Latex, true) => format!("{lhs} = {prefactor} \\, \\Phi_{{{}}}", r.function_number),
        (Style::Latex, false) => format!(
            "{lhs} = {prefactor} \\, \\Phi_{{{}}}\\!\\left({}\\right)",
            r.function_number,
            args.join(", ")
        ),
    }
}

/// One line per representation for text; a `cases` block for LaTeX.
pub fn render_equation_system(
    sys: &EquationSystem,
    d: &DimensionalMatrix,
    style: Style,
    form: PowerForm,
) -> String {
    let lines: Vec<String> = sys
        .representations
        .iter()
        .map(|r| render_representation(r, d, style, form))
        .collect();
    match style {
        Style::Text => lines.iter().map(|l| format!("{l}\n")).collect(),
        Style::Latex => {
            if lines.is_empty() {
                return String::new();
            }
            let mut out = String::from("\\begin{cases}\n");
            let last = lines.len() - 1;
            for (k, l) in lines.iter().enumerate() {
                out.push_str(l);
                out.push_str(if k == last { "\n" } else { " \\\\\n" });
            }
            out.push_str("\\end{cases}\n");
            out
        }
    }
}

/// `{rho, mu, d}` or `\{\rho, \mu, d\}`.
pub fn render_index_set(d: &DimensionalMatrix, indices: &[usize], style: Style) -> String {
    match style {
        Style::Text => {
            let names: Vec<&str> = indices
                .iter()
                .map(|&j| d.quantity(j).name.as_str())
                .collect();
            format!("{{{}}}", names.join(", "))
        }
        Style::Latex => {
            let names: Vec<String> = indices.iter().map(|&j| latex_name(d, j)).collect();
            format!("\\{{{}\\}}", names.join(", "))
        }
    }
}
