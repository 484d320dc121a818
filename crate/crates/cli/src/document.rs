//! The JSON interchange format shared by every subcommand.
//!
//! A document is one of three kinds — `matrix`, `cauchy_data`, `pair` —
//! with the field declared once in the header and every scalar carried as
//! an exact string (`"5"`, `"-7/3"`, a GF(p) residue like `"42"`). No
//! floating point ever enters the pipeline, and a document emitted by any
//! subcommand reparses to the identical value bit for bit.

use serde::{Deserialize, Serialize};

use cauchykit::{CauchyData, CauchyPair, DenseMatrix, Field, Scalar};

/// Top-level document. `kind` selects the payload shape.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Document {
    /// A dense rectangular matrix, entries row-major.
    Matrix(MatrixDocument),
    /// Defining scalars (x, x̃) of a Cauchy matrix.
    CauchyData(CauchyDataDocument),
    /// Two equal-size square matrices forming a candidate Cauchy pair.
    Pair(PairDocument),
}

/// Payload of a `matrix` document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDocument {
    /// `"Q"` or `"GF(p)"`.
    pub field: String,
    pub n_rows: usize,
    pub n_cols: usize,
    /// Row-major scalar strings; exactly `n_rows * n_cols` of them.
    pub entries: Vec<String>,
}

/// Payload of a `cauchy_data` document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CauchyDataDocument {
    /// `"Q"` or `"GF(p)"`.
    pub field: String,
    pub x: Vec<String>,
    pub x_tilde: Vec<String>,
}

/// Payload of a `pair` document. The two matrix bodies inherit the header
/// field rather than redeclaring it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairDocument {
    /// `"Q"` or `"GF(p)"`.
    pub field: String,
    /// Optional free-text note describing the basis the entries refer to.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis_note: Option<String>,
    pub x: MatrixBody,
    pub x_tilde: MatrixBody,
}

/// A matrix payload without its own field header.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixBody {
    pub n_rows: usize,
    pub n_cols: usize,
    pub entries: Vec<String>,
}

/// Parses a document-header field label: `"Q"`, `"GF(p)"`, or the CLI-flag
/// spelling `"gf:p"`.
pub fn parse_field_label(label: &str) -> Result<Field, String> {
    let trimmed = label.trim();
    if let Some(inner) = trimmed
        .strip_prefix("GF(")
        .and_then(|rest| rest.strip_suffix(')'))
    {
        return Field::parse(&format!("gf:{inner}")).map_err(|e| e.to_string());
    }
    Field::parse(trimmed).map_err(|e| e.to_string())
}

/// Canonical document-header spelling of a field.
pub fn field_label(field: &Field) -> String {
    match field {
        Field::Rational => "Q".to_string(),
        Field::Prime(p) => format!("GF({p})"),
    }
}

fn parse_scalars(field: &Field, tokens: &[String]) -> Result<Vec<Scalar>, String> {
    tokens
        .iter()
        .map(|token| field.parse_scalar(token).map_err(|e| e.to_string()))
        .collect()
}

fn scalar_strings(scalars: &[Scalar]) -> Vec<String> {
    scalars.iter().map(|s| s.to_string()).collect()
}

fn matrix_from_parts(
    field: &Field,
    n_rows: usize,
    n_cols: usize,
    entries: &[String],
) -> Result<DenseMatrix, String> {
    if entries.len() != n_rows * n_cols {
        return Err(format!(
            "matrix declares {n_rows} x {n_cols} = {} entries but carries {}",
            n_rows * n_cols,
            entries.len()
        ));
    }
    let parsed = parse_scalars(field, entries)?;
    DenseMatrix::new(n_rows, n_cols, parsed).map_err(|e| e.to_string())
}

impl MatrixDocument {
    /// Converts to a dense matrix, parsing every entry in the declared field.
    pub fn to_matrix(&self) -> Result<(Field, DenseMatrix), String> {
        let field = parse_field_label(&self.field)?;
        let matrix = matrix_from_parts(&field, self.n_rows, self.n_cols, &self.entries)?;
        Ok((field, matrix))
    }

    /// Builds the document for a dense matrix.
    pub fn from_matrix(field: &Field, matrix: &DenseMatrix) -> MatrixDocument {
        MatrixDocument {
            field: field_label(field),
            n_rows: matrix.n_rows(),
            n_cols: matrix.n_cols(),
            entries: scalar_strings(matrix.entries()),
        }
    }
}

impl CauchyDataDocument {
    /// Converts to validated Cauchy data.
    pub fn to_data(&self) -> Result<CauchyData, String> {
        let field = parse_field_label(&self.field)?;
        let x = parse_scalars(&field, &self.x)?;
        let x_tilde = parse_scalars(&field, &self.x_tilde)?;
        CauchyData::new(x, x_tilde).map_err(|e| e.to_string())
    }

    /// Builds the document for validated data.
    pub fn from_data(data: &CauchyData) -> CauchyDataDocument {
        CauchyDataDocument {
            field: field_label(&data.field()),
            x: scalar_strings(data.x()),
            x_tilde: scalar_strings(data.x_tilde()),
        }
    }
}

impl PairDocument {
    /// Converts to a candidate pair, enforcing the equal-size-square-matrix
    /// document invariant.
    pub fn to_pair(&self) -> Result<CauchyPair, String> {
        let field = parse_field_label(&self.field)?;
        let x = matrix_from_parts(&field, self.x.n_rows, self.x.n_cols, &self.x.entries)?;
        let x_tilde = matrix_from_parts(
            &field,
            self.x_tilde.n_rows,
            self.x_tilde.n_cols,
            &self.x_tilde.entries,
        )?;
        let pair = CauchyPair::new(x, x_tilde).map_err(|e| e.to_string())?;
        Ok(match &self.basis_note {
            Some(note) => pair.with_basis_note(note.clone()),
            None => pair,
        })
    }

    /// Builds the document for a pair.
    pub fn from_pair(pair: &CauchyPair) -> PairDocument {
        let body = |m: &DenseMatrix| MatrixBody {
            n_rows: m.n_rows(),
            n_cols: m.n_cols(),
            entries: scalar_strings(m.entries()),
        };
        let note = pair.basis_note();
        PairDocument {
            field: field_label(&pair.field()),
            basis_note: if note.is_empty() {
                None
            } else {
                Some(note.to_string())
            },
            x: body(pair.x()),
            x_tilde: body(pair.x_tilde()),
        }
    }
}

impl Document {
    /// Parses a document from JSON text.
    pub fn from_json(text: &str) -> Result<Document, String> {
        serde_json::from_str(text).map_err(|e| format!("not a valid document: {e}"))
    }

    /// Pretty-printed JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut text =
            serde_json::to_string_pretty(self).expect("documents always serialize");
        text.push('\n');
        text
    }

    /// The document's kind, for error messages.
    pub fn kind_name(&self) -> &'static str {
        match self {
            Document::Matrix(_) => "matrix",
            Document::CauchyData(_) => "cauchy_data",
            Document::Pair(_) => "pair",
        }
    }
}
