//! Problem files and dimension expressions.
//!
//! A problem file is TOML:
//!
//! ```toml
//! dimensions = ["L", "T", "M"]
//! dependent = "dP/l"      # optional
//! excluded = []           # optional
//!
//! [[quantities]]
//! name = "dP/l"
//! expr = "L^-2 T^-2 M"
//! display = '\Delta P/\ell'   # optional LaTeX
//!
//! [[quantities]]
//! name = "d"
//! dims = [1, 0, 0]
//! ```
//!
//! Each quantity gives exactly one of `dims` (integer exponents in dimension
//! order) or `expr`. The expression grammar is
//!
//! ```text
//! expr := term (('*' | whitespace) term)*
//! term := IDENT ('^' SIGNED_INT)?
//! ```
//!
//! An omitted exponent means 1 and repeated dimensions add up. `1` or the
//! empty string denote a dimensionless quantity.

use std::ops::Range;

use serde::Deserialize;
use toml::Spanned;

use crate::error::{Error, Result};
use crate::model::{DimensionSystem, DimensionalMatrix, Quantity};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawProblem {
    dimensions: Spanned<Vec<String>>,
    quantities: Vec<RawQuantity>,
    dependent: Option<Spanned<String>>,
    excluded: Option<Vec<Spanned<String>>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawQuantity {
    name: Spanned<String>,
    dims: Option<Spanned<Vec<i64>>>,
    expr: Option<Spanned<String>>,
    display: Option<String>,
}

/// A parsed problem: the matrix plus optional analysis directives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Problem {
    pub matrix: DimensionalMatrix,
    pub dependent: Option<usize>,
    pub excluded: Vec<usize>,
}

struct Source<'a> {
    text: &'a str,
}

impl Source<'_> {
    fn line(&self, span: Range<usize>) -> usize {
        let end = span.start.min(self.text.len());
        self.text[..end].bytes().filter(|&b| b == b'\n').count() + 1
    }

    fn err(
        &self,
        span: Option<Range<usize>>,
        field: impl Into<String>,
        message: impl Into<String>,
    ) -> Error {
        Error::Parse {
            line: span.map(|s| self.line(s)),
            field: field.into(),
            message: message.into(),
        }
    }
}

pub fn parse_problem(text: &str) -> Result<Problem> {
    let src = Source { text };
    let raw: RawProblem = toml::from_str(text).map_err(|e| src.err(e.span(), "", e.message()))?;

    let dim_span = raw.dimensions.span();
    let system = DimensionSystem::new(raw.dimensions.into_inner())
        .map_err(|e| src.err(Some(dim_span), "dimensions", e.to_string()))?;

    let mut quantities = Vec::with_capacity(raw.quantities.len());
    for (k, q) in raw.quantities.into_iter().enumerate() {
        let name_span = q.name.span();
        let field = format!("quantities[{k}]");
        let dims = match (q.dims, q.expr) {
            (Some(d), None) => d.into_inner(),
            (None, Some(e)) => {
                let span = e.span();
                parse_dimension_expr(e.get_ref(), &system)
                    .map_err(|msg| src.err(Some(span), format!("{field}.expr"), msg.to_string()))?
            }
            _ => {
                return Err(src.err(
                    Some(name_span),
                    field,
                    "exactly one of `dims` or `expr` is required",
                ))
            }
        };
        let mut quantity = Quantity::new(q.name.into_inner(), dims);
        quantity.display = q.display;
        quantities.push((name_span, quantity));
    }
    let spans: Vec<Range<usize>> = quantities.iter().map(|(s, _)| s.clone()).collect();
    let quantities: Vec<Quantity> = quantities.into_iter().map(|(_, q)| q).collect();
    let matrix = DimensionalMatrix::new(system, quantities).map_err(|e| {
        let span = match &e {
            Error::DuplicateQuantity(n)
            | Error::InvalidName { name: n, .. }
            | Error::DimsMismatch { name: n, .. } => {
                // the second occurrence for duplicates
                let hits: Vec<_> = spans
                    .iter()
                    .filter(|s| text[s.start..s.end].trim_matches(['"', '\'']) == n)
                    .collect();
                hits.last().map(|s| (*s).clone())
            }
            _ => None,
        };
        src.err(span, "quantities", e.to_string())
    })?;

    let lookup = |s: &Spanned<String>, field: &str| {
        matrix.index_of(s.get_ref()).ok_or_else(|| {
            src.err(
                Some(s.span()),
                field,
                format!("unknown quantity `{}`", s.get_ref()),
            )
        })
    };
    let dependent = raw
        .dependent
        .as_ref()
        .map(|s| lookup(s, "dependent"))
        .transpose()?;
    let mut excluded = Vec::new();
    for s in raw.excluded.iter().flatten() {
        excluded.push(lookup(s, "excluded")?);
    }
    if let (Some(dep), Some(raw_ex)) = (dependent, &raw.excluded) {
        if let Some(s) = raw_ex
            .iter()
            .find(|s| matrix.index_of(s.get_ref()) == Some(dep))
        {
            return Err(src.err(
                Some(s.span()),
                "excluded",
                "the dependent quantity cannot be excluded",
            ));
        }
    }
    excluded.sort_unstable();
    excluded.dedup();
    Ok(Problem {
        matrix,
        dependent,
        excluded,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExprError {
    #[error("unknown dimension `{0}`")]
    UnknownDimension(String),
    #[error("non-integer exponent `{0}`")]
    NonInteger(String),
    #[error("expected an exponent after `^`")]
    MissingExponent,
    #[error("exponent `{0}` is out of range")]
    ExponentRange(String),
    #[error("unexpected `{0}`")]
    Unexpected(char),
    #[error("dangling `*`")]
    DanglingStar,
}

/// Parses a dimension expression such as `"L T^-1"` or `"M*L^-1*T^-2"` into
/// an exponent vector over `system`.
///
/// ```
/// use dimalg::{problem::parse_dimension_expr, DimensionSystem};
/// let sys = DimensionSystem::new(["L", "T", "M"]).unwrap();
/// assert_eq!(parse_dimension_expr("L T^-1", &sys).unwrap(), vec![1, -1, 0]);
/// assert!(parse_dimension_expr("L^1.5", &sys).is_err());
/// ```
pub fn parse_dimension_expr(expr: &str, system: &DimensionSystem) -> Result<Vec<i64>, ExprError> {
    let mut dims = vec![0i64; system.len()];
    let trimmed = expr.trim();
    if trimmed.is_empty() || trimmed == "1" {
        return Ok(dims);
    }
    let chars: Vec<char> = trimmed.chars().collect();
    let mut i = 0;
    let skip_ws = |i: &mut usize| {
        while *i < chars.len() && chars[*i].is_whitespace() {
            *i += 1;
        }
    };
    let mut expect_term = true;
    loop {
        skip_ws(&mut i);
        if i == chars.len() {
            if expect_term {
                return Err(ExprError::DanglingStar);
            }
            return Ok(dims);
        }
        let c = chars[i];
        if c == '*' {
            if expect_term {
                return Err(ExprError::Unexpected('*'));
            }
            expect_term = true;
            i += 1;
            continue;
        }
        if !(c.is_alphabetic() || c == '_') {
            return Err(ExprError::Unexpected(c));
        }
        let start = i;
        while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
            i += 1;
        }
        let ident: String = chars[start..i].iter().collect();
        let row = system
            .index_of(&ident)
            .ok_or_else(|| ExprError::UnknownDimension(ident.clone()))?;
        skip_ws(&mut i);
        let mut exponent = 1i64;
        if i < chars.len() && chars[i] == '^' {
            i += 1;
            skip_ws(&mut i);
            let start = i;
            if i < chars.len() && (chars[i] == '-' || chars[i] == '+') {
                i += 1;
            }
            let digits_start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            // swallow a fractional tail so the error names the whole token
            let mut frac = false;
            while i < chars.len()
                && (chars[i] == '.' || chars[i] == '/' || chars[i].is_ascii_digit())
            {
                frac = true;
                i += 1;
            }
            let token: String = chars[start..i].iter().collect();
            if frac {
                return Err(ExprError::NonInteger(token));
            }
            if digits_start == i {
                return Err(ExprError::MissingExponent);
            }
            exponent = token
                .parse()
                .map_err(|_| ExprError::ExponentRange(token.clone()))?;
        }
        dims[row] = dims[row]
            .checked_add(exponent)
            .ok_or_else(|| ExprError::ExponentRange(exponent.to_string()))?;
        expect_term = false;
    }
}
