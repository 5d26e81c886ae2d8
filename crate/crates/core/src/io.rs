//! Module and element JSON.
//!
//! A module is `{"p": 5, "matrix": [[..], ..]}` (the action of `T`, entries
//! reduced mod p) or `{"p": 5, "invariants": [3, 2]}`. An element is an
//! integer array.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::{Fp, Matrix};
use crate::kmod::{Invariants, ModuleRep};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ModuleJson {
    Matrix { p: u64, matrix: Vec<Vec<i64>> },
    Invariants { p: u64, invariants: Vec<usize> },
}

impl ModuleJson {
    pub fn to_module(&self) -> Result<ModuleRep> {
        match self {
            ModuleJson::Matrix { p, matrix } => module_from_matrix(*p, matrix),
            ModuleJson::Invariants { p, invariants } => module_from_invariants(*p, invariants),
        }
    }

    pub fn from_module(m: &ModuleRep) -> Self {
        let matrix = m
            .action()
            .to_rows()
            .into_iter()
            .map(|r| r.into_iter().map(i64::from).collect())
            .collect();
        ModuleJson::Matrix {
            p: m.p() as u64,
            matrix,
        }
    }
}

pub fn module_from_invariants(p: u64, parts: &[usize]) -> Result<ModuleRep> {
    let field = Fp::new(p)?;
    Ok(ModuleRep::from_invariants(&Invariants::new(
        field,
        parts.to_vec(),
    )?))
}

pub fn module_from_matrix(p: u64, rows: &[Vec<i64>]) -> Result<ModuleRep> {
    let field = Fp::new(p)?;
    if rows.is_empty() {
        return Ok(ModuleRep::zero(field));
    }
    ModuleRep::new(Matrix::from_rows(field, rows)?)
}

pub fn parse_module(text: &str) -> Result<ModuleRep> {
    let json: ModuleJson = serde_json::from_str(text)
        .map_err(|e| Error::Input(format!("invalid module JSON: {e}")))?;
    json.to_module()
}

/// A bare matrix `[[..], ..]`, the action of `T` at the given prime.
pub fn parse_matrix(p: u64, text: &str) -> Result<ModuleRep> {
    let rows: Vec<Vec<i64>> = serde_json::from_str(text)
        .map_err(|e| Error::Input(format!("invalid matrix JSON: {e}")))?;
    module_from_matrix(p, &rows)
}

pub fn parse_element(m: &ModuleRep, text: &str) -> Result<Vec<u32>> {
    let raw: Vec<i64> = serde_json::from_str(text)
        .map_err(|e| Error::Input(format!("invalid element JSON: {e}")))?;
    let v: Vec<u32> = raw.into_iter().map(|c| m.field().reduce(c)).collect();
    m.check_element(&v)?;
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invariants_form() {
        let m = parse_module(r#"{"p": 5, "invariants": [3, 2]}"#).unwrap();
        assert_eq!(m.dim(), 5);
        assert_eq!(m.decompose().parts(), &[3, 2]);
    }

    #[test]
    fn matrix_form_reduces_entries() {
        let m = parse_module(r#"{"p": 3, "matrix": [[0, 0], [4, 0]]}"#).unwrap();
        assert_eq!(m.decompose().parts(), &[2]);
    }

    #[test]
    fn diagnostics_are_distinct() {
        assert_eq!(
            parse_module(r#"{"p": 4, "invariants": [2]}"#).unwrap_err(),
            Error::NotPrime(4)
        );
        assert!(matches!(
            parse_module(r#"{"p": 3, "invariants": [4]}"#),
            Err(Error::InvariantOutOfRange { .. })
        ));
        assert!(matches!(
            parse_module(r#"{"p": 2, "matrix": [[0,0,0],[1,0,0],[0,1,0]]}"#),
            Err(Error::NotNilpotent { .. })
        ));
        assert!(matches!(parse_module("{}"), Err(Error::Input(_))));
    }

    #[test]
    fn round_trip() {
        let m = module_from_invariants(3, &[3, 1]).unwrap();
        let text = serde_json::to_string(&ModuleJson::from_module(&m)).unwrap();
        assert_eq!(parse_module(&text).unwrap(), m);
    }

    #[test]
    fn elements() {
        let m = module_from_invariants(3, &[2]).unwrap();
        assert_eq!(parse_element(&m, "[4, -1]").unwrap(), vec![1, 2]);
        assert!(parse_element(&m, "[1]").is_err());
    }
}
