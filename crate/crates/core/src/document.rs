//! JSON documents for algebras and functions.
//!
//! An algebra document looks like
//!
//! ```json
//! {
//!   "name": "mv:2",
//!   "size": 2,
//!   "meet": [[0, 0], [0, 1]],
//!   "join": [[0, 1], [1, 1]],
//!   "prod": [[0, 0], [0, 1]],
//!   "imp": [[1, 1], [0, 1]],
//!   "unit": 1,
//!   "bottom": 0
//! }
//! ```
//!
//! `name` and `bottom` are optional. A function document has `arity` and a
//! flat `table` in row-major argument order.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{AlgebraError, Element, FiniteAlgebra, Op, Table};
use crate::compat::{CompatError, FiniteFunction};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DocumentError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: {message}")]
    Shape { path: String, message: String },
    #[error("invalid algebra: {0}")]
    Algebra(#[from] AlgebraError),
    #[error("invalid function: {0}")]
    Function(#[from] CompatError),
}

impl From<serde_json::Error> for DocumentError {
    fn from(e: serde_json::Error) -> Self {
        // serde_json appends " at line L column C"; keep just the message
        let message = e.to_string();
        let message = match message.rfind(" at line ") {
            Some(i) => message[..i].to_string(),
            None => message,
        };
        DocumentError::Syntax {
            line: e.line(),
            column: e.column(),
            message,
        }
    }
}

fn shape(path: impl Into<String>, message: impl Into<String>) -> DocumentError {
    DocumentError::Shape {
        path: path.into(),
        message: message.into(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub size: usize,
    pub meet: Vec<Vec<Element>>,
    pub join: Vec<Vec<Element>>,
    pub prod: Vec<Vec<Element>>,
    pub imp: Vec<Vec<Element>>,
    pub unit: Element,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bottom: Option<Element>,
}

impl AlgebraDocument {
    pub fn from_algebra(alg: &FiniteAlgebra) -> Self {
        AlgebraDocument {
            name: alg.name().map(str::to_string),
            size: alg.size(),
            meet: alg.table(Op::Meet).rows(),
            join: alg.table(Op::Join).rows(),
            prod: alg.table(Op::Prod).rows(),
            imp: alg.table(Op::Imp).rows(),
            unit: alg.unit(),
            bottom: alg.bottom(),
        }
    }

    fn matrix(&self, field: &'static str, rows: &[Vec<Element>]) -> Result<Table, DocumentError> {
        let m = self.size;
        if rows.len() != m {
            return Err(shape(
                field,
                format!("expected {m} rows, found {}", rows.len()),
            ));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != m {
                return Err(shape(
                    format!("{field}[{i}]"),
                    format!("expected {m} entries, found {}", row.len()),
                ));
            }
            if let Some(j) = row.iter().position(|&v| v >= m) {
                return Err(shape(
                    format!("{field}[{i}][{j}]"),
                    format!("entry {} is outside 0..{m}", row[j]),
                ));
            }
        }
        Ok(Table::from_rows(rows))
    }

    pub fn to_algebra(&self) -> Result<FiniteAlgebra, DocumentError> {
        if self.size == 0 {
            return Err(shape("size", "must be positive"));
        }
        let meet = self.matrix("meet", &self.meet)?;
        let join = self.matrix("join", &self.join)?;
        let prod = self.matrix("prod", &self.prod)?;
        let imp = self.matrix("imp", &self.imp)?;
        if self.unit >= self.size {
            return Err(shape(
                "unit",
                format!("{} is outside 0..{}", self.unit, self.size),
            ));
        }
        if let Some(b) = self.bottom.filter(|&b| b >= self.size) {
            return Err(shape("bottom", format!("{b} is outside 0..{}", self.size)));
        }
        let alg = FiniteAlgebra::new(meet, join, prod, imp, self.unit, self.bottom)?;
        Ok(match &self.name {
            Some(n) => alg.with_name(n.clone()),
            None => alg,
        })
    }
}

pub fn parse_algebra(text: &str) -> Result<FiniteAlgebra, DocumentError> {
    let doc: AlgebraDocument = serde_json::from_str(text)?;
    doc.to_algebra()
}

fn json_string(s: &str) -> String {
    serde_json::to_string(s).expect("strings serialize")
}

fn write_row(out: &mut String, row: &[Element]) {
    out.push('[');
    for (i, v) in row.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        write!(out, "{v}").expect("writing to a String");
    }
    out.push(']');
}

/// Pretty JSON with one matrix row per line.
pub fn algebra_to_json(alg: &FiniteAlgebra) -> String {
    let doc = AlgebraDocument::from_algebra(alg);
    let mut out = String::from("{\n");
    if let Some(name) = &doc.name {
        writeln!(out, "  \"name\": {},", json_string(name)).expect("writing to a String");
    }
    writeln!(out, "  \"size\": {},", doc.size).expect("writing to a String");
    for (field, rows) in [
        ("meet", &doc.meet),
        ("join", &doc.join),
        ("prod", &doc.prod),
        ("imp", &doc.imp),
    ] {
        writeln!(out, "  \"{field}\": [").expect("writing to a String");
        for (i, row) in rows.iter().enumerate() {
            out.push_str("    ");
            write_row(&mut out, row);
            out.push_str(if i + 1 < rows.len() { ",\n" } else { "\n" });
        }
        out.push_str("  ],\n");
    }
    write!(out, "  \"unit\": {}", doc.unit).expect("writing to a String");
    if let Some(b) = doc.bottom {
        write!(out, ",\n  \"bottom\": {b}").expect("writing to a String");
    }
    out.push_str("\n}\n");
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionDocument {
    pub arity: usize,
    pub table: Vec<Element>,
}

impl FunctionDocument {
    pub fn from_function(f: &FiniteFunction) -> Self {
        FunctionDocument {
            arity: f.arity(),
            table: f.table().to_vec(),
        }
    }

    pub fn to_function(&self, size: usize) -> Result<FiniteFunction, DocumentError> {
        if self.arity == 0 {
            return Err(shape("arity", "must be at least 1"));
        }
        let expected = size.checked_pow(self.arity as u32).unwrap_or(usize::MAX);
        if self.table.len() != expected {
            return Err(shape(
                "table",
                format!(
                    "expected {expected} entries for arity {} on {size} elements, found {}",
                    self.arity,
                    self.table.len()
                ),
            ));
        }
        if let Some(i) = self.table.iter().position(|&v| v >= size) {
            return Err(shape(
                format!("table[{i}]"),
                format!("entry {} is outside 0..{size}", self.table[i]),
            ));
        }
        Ok(FiniteFunction::new(size, self.arity, self.table.clone())?)
    }
}

pub fn parse_function(text: &str, size: usize) -> Result<FiniteFunction, DocumentError> {
    let doc: FunctionDocument = serde_json::from_str(text)?;
    doc.to_function(size)
}

pub fn function_to_json(f: &FiniteFunction) -> String {
    let mut out = format!("{{\n  \"arity\": {},\n  \"table\": ", f.arity());
    write_row(&mut out, f.table());
    out.push_str("\n}\n");
    out
}
