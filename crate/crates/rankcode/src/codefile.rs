//! JSON code files.
//!
//! Entries are integer codes of field elements: `v = sum c_i p^i` stands for
//! `sum c_i x^i` modulo the header's modulus.

use std::fs;
use std::path::Path;

use rankcode_core::gf::make_field;
use rankcode_core::{MatFq, RankCode};
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Header {
    pub p: u32,
    pub e: u32,
    /// Monic modulus, constant term first.
    pub modulus: Vec<u32>,
    pub m: usize,
    pub n: usize,
    pub linear: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CodeFile {
    pub header: Header,
    /// Row-major matrices: a basis when `linear`, every codeword otherwise.
    pub matrices: Vec<Vec<Vec<u32>>>,
    #[serde(default)]
    pub meta: Map<String, Value>,
}

impl CodeFile {
    pub fn from_code(code: &RankCode, meta: Map<String, Value>) -> Self {
        let f = code.field();
        let (m, n) = code.shape();
        let matrices = code
            .matrices()
            .iter()
            .map(|x| (0..m).map(|i| x.row(i).to_vec()).collect())
            .collect();
        CodeFile {
            header: Header { p: f.p(), e: f.degree(), modulus: f.modulus().to_vec(), m, n, linear: code.is_linear() },
            matrices,
            meta,
        }
    }

    /// Rebuilds the code, checking the field, every entry and (for linear
    /// files) that the matrices are independent.
    pub fn to_code(&self) -> Result<RankCode> {
        let h = &self.header;
        let field = make_field(h.p, h.e, Some(&h.modulus))?;
        if field.modulus() != h.modulus.as_slice() {
            return Err(CliError::format(format!("modulus for e = 1 must be {:?}", field.modulus())));
        }
        let q = field.order();
        let mut mats = Vec::with_capacity(self.matrices.len());
        for (k, rows) in self.matrices.iter().enumerate() {
            if rows.len() != h.m || rows.iter().any(|r| r.len() != h.n) {
                return Err(CliError::format(format!("matrix {k} is not {}x{}", h.m, h.n)));
            }
            if let Some(&v) = rows.iter().flatten().find(|&&v| v >= q) {
                return Err(CliError::format(format!("matrix {k} has entry {v} >= {q}")));
            }
            mats.push(MatFq::from_rows(&field, rows)?);
        }
        let code = if h.linear {
            RankCode::linear(&field, h.m, h.n, mats)?
        } else {
            RankCode::explicit(&field, h.m, h.n, mats)?
        };
        Ok(code)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("code files serialize")
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| CliError::format(e.to_string()))
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })?;
        Self::parse(&text)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let mut text = self.to_json_string();
        text.push('\n');
        fs::write(path, text).map_err(|source| CliError::Io { path: path.into(), source })
    }
}

pub fn load_code(path: &Path) -> Result<RankCode> {
    CodeFile::read(path)?.to_code()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rankcode_core::construct::{example_2x4, field_spread_set};

    #[test]
    fn round_trip() {
        let c = field_spread_set(3, 2).unwrap();
        let file = CodeFile::from_code(&c, Map::new());
        let back = CodeFile::parse(&file.to_json_string()).unwrap();
        assert_eq!(back, file);
        assert_eq!(back.to_code().unwrap().basis(), c.basis());
    }

    #[test]
    fn rejects_bad_files() {
        let mut file = CodeFile::from_code(&example_2x4(), Map::new());
        file.matrices[0][0][0] = 2;
        assert!(matches!(file.to_code(), Err(CliError::Format(_))));
        let mut dep = CodeFile::from_code(&example_2x4(), Map::new());
        dep.matrices[1] = dep.matrices[0].clone();
        assert!(dep.to_code().is_err());
        let mut shape = CodeFile::from_code(&example_2x4(), Map::new());
        shape.matrices[2].pop();
        assert!(matches!(shape.to_code(), Err(CliError::Format(_))));
        assert!(CodeFile::parse("{\"header\": 3}").is_err());
    }
}
