//! JSON algebra files.
//!
//! ```json
//! {
//!   "dim": 2,
//!   "basis": ["a", "b"],
//!   "mu": [{"i": 0, "j": 0, "k": 0, "c": "1/1"}],
//!   "alpha": [["1/1", "0/1"], ["0/1", "1/1"]]
//! }
//! ```
//!
//! Indices are 0-based; `mu` lists nonzero structure constants only, sorted
//! by `(i, j, k)`. Row `r` of `alpha` holds the coordinates of `alpha(e_r)`.

use serde::{Deserialize, Serialize};

use crate::algebra::HomAlgebra;
use crate::error::{AlgebraError, Result};
use crate::linalg::{format_scalar, parse_scalar, Matrix, Vector};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub dim: usize,
    pub basis: Vec<String>,
    pub mu: Vec<ConstantEntry>,
    pub alpha: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstantEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub c: String,
}

impl AlgebraFile {
    pub fn from_algebra(a: &HomAlgebra) -> Self {
        let dim = a.dim();
        let mut mu = Vec::new();
        for i in 0..dim {
            for j in 0..dim {
                for (k, c) in a.basis_product(i, j).entries().iter().enumerate() {
                    if *c != num_traits::Zero::zero() {
                        mu.push(ConstantEntry {
                            i,
                            j,
                            k,
                            c: format_scalar(c),
                        });
                    }
                }
            }
        }
        let alpha = (0..dim)
            .map(|r| {
                a.alpha()
                    .row(r)
                    .entries()
                    .iter()
                    .map(format_scalar)
                    .collect()
            })
            .collect();
        AlgebraFile {
            dim,
            basis: a.basis_names().to_vec(),
            mu,
            alpha,
        }
    }

    pub fn to_algebra(&self) -> Result<HomAlgebra> {
        if self.basis.len() != self.dim {
            return Err(AlgebraError::InvalidAlgebra(format!(
                "dim is {} but {} basis names given",
                self.dim,
                self.basis.len()
            )));
        }
        if self.alpha.len() != self.dim {
            return Err(AlgebraError::InvalidAlgebra(format!(
                "alpha has {} rows, expected {}",
                self.alpha.len(),
                self.dim
            )));
        }
        let rows = self
            .alpha
            .iter()
            .map(|row| {
                row.iter()
                    .map(|s| parse_scalar(s))
                    .collect::<Result<Vec<_>>>()
                    .map(Vector::new)
            })
            .collect::<Result<Vec<_>>>()?;
        let alpha = Matrix::from_rows(rows)?;
        let constants = self
            .mu
            .iter()
            .map(|e| Ok((e.i, e.j, e.k, parse_scalar(&e.c)?)))
            .collect::<Result<Vec<_>>>()?;
        HomAlgebra::from_constants(self.basis.clone(), constants, alpha)
    }
}

/// Parses an algebra from JSON text. Syntax errors carry line and column.
pub fn load_algebra(json: &str) -> Result<HomAlgebra> {
    let file: AlgebraFile =
        serde_json::from_str(json).map_err(|e| AlgebraError::Parse(e.to_string()))?;
    file.to_algebra()
}

/// Pretty-printed JSON for an algebra.
pub fn save_algebra(a: &HomAlgebra) -> String {
    serde_json::to_string_pretty(&AlgebraFile::from_algebra(a)).expect("plain data serializes")
}

/// Parses a JSON matrix given as rows of scalar strings.
pub fn load_matrix(json: &str) -> Result<Matrix> {
    let rows: Vec<Vec<String>> =
        serde_json::from_str(json).map_err(|e| AlgebraError::Parse(e.to_string()))?;
    let rows = rows
        .iter()
        .map(|row| {
            row.iter()
                .map(|s| parse_scalar(s))
                .collect::<Result<Vec<_>>>()
                .map(Vector::new)
        })
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(rows)
}

/// Parses comma-separated scalars such as `1,0,-1/2`.
pub fn parse_coords(text: &str) -> Result<Vector> {
    text.split(',')
        .map(parse_scalar)
        .collect::<Result<Vec<_>>>()
        .map(Vector::new)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_dimensions() {
        let json = r#"{"dim": 2, "basis": ["a"], "mu": [], "alpha": [["1"]]}"#;
        assert!(matches!(
            load_algebra(json),
            Err(AlgebraError::InvalidAlgebra(_))
        ));
    }

    #[test]
    fn syntax_error_has_location() {
        let err = load_algebra("{\n  \"dim\": ,\n}").unwrap_err();
        let AlgebraError::Parse(msg) = err else {
            panic!("expected parse error")
        };
        assert!(msg.contains("line 2"), "{msg}");
    }

    #[test]
    fn out_of_range_constant() {
        let json =
            r#"{"dim": 1, "basis": ["a"], "mu": [{"i":0,"j":0,"k":3,"c":"1"}], "alpha": [["1"]]}"#;
        assert!(load_algebra(json).is_err());
    }

    #[test]
    fn coords_parse() {
        assert_eq!(parse_coords("1, 0,-1/2").unwrap().len(), 3);
        assert!(parse_coords("1,,2").is_err());
    }
}
