//! Argument decoding. JSON-valued flags take inline JSON or a path to a file.

use std::path::Path;

use nielsen_core::{FgAbelianGroup, GroupHom};
use serde::de::DeserializeOwned;

use crate::output::InputError;

/// Inline JSON when the argument starts like JSON, file contents otherwise.
pub fn text(field: &str, arg: &str) -> Result<String, InputError> {
    let t = arg.trim_start();
    if t.starts_with(['[', '{', '"']) || t.starts_with(|c: char| c == '-' || c.is_ascii_digit()) {
        return Ok(arg.to_string());
    }
    std::fs::read_to_string(Path::new(arg)).map_err(|e| InputError::new(field, format!("cannot read {arg}: {e}")))
}

pub fn json<T: DeserializeOwned>(field: &str, arg: &str) -> Result<T, InputError> {
    let body = text(field, arg)?;
    serde_json::from_str(&body).map_err(|e| InputError::new(field, format!("malformed JSON: {e}")))
}

/// Invariant factors such as `[2,0]`; `[]` is the trivial group.
pub fn group(field: &str, arg: &str) -> Result<FgAbelianGroup, InputError> {
    let factors: Vec<i64> = json(field, arg)?;
    FgAbelianGroup::new(factors).map_err(|e| InputError::new(field, e))
}

/// A matrix given as rows: row `i` lists the images of the domain generators
/// in codomain coordinate `i`.
pub fn hom(field: &str, arg: &str, domain: &FgAbelianGroup, codomain: &FgAbelianGroup) -> Result<GroupHom, InputError> {
    let rows: Vec<Vec<i64>> = json(field, arg)?;
    GroupHom::from_rows(domain.clone(), codomain.clone(), &rows).map_err(|e| InputError::new(field, e))
}

/// A row vector: a homomorphism from `domain` to the one-generator `codomain`.
pub fn row(field: &str, arg: &str, domain: &FgAbelianGroup, codomain: &FgAbelianGroup) -> Result<GroupHom, InputError> {
    let r: Vec<i64> = json(field, arg)?;
    GroupHom::from_rows(domain.clone(), codomain.clone(), &[r]).map_err(|e| InputError::new(field, e))
}

pub fn required<'a>(field: &str, arg: &'a Option<String>) -> Result<&'a str, InputError> {
    arg.as_deref().ok_or_else(|| InputError::new(field, "this flag is required here"))
}
