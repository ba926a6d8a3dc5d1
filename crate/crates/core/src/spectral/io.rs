//! JSON form of fields: a list of `{k, re, im}` records per component.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{ScalarField, VectorField};
use crate::error::{Error, Result};
use crate::wavevector::Wavevector;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModeRecord {
    pub k: [i32; 3],
    pub re: f64,
    pub im: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VectorFieldRecord {
    pub components: [Vec<ModeRecord>; 3],
}

pub fn scalar_to_records(f: &ScalarField) -> Vec<ModeRecord> {
    f.modes().iter().map(|(k, c)| ModeRecord { k: k.0, re: c.re, im: c.im }).collect()
}

/// Validating import; duplicate wavevectors are rejected.
pub fn scalar_from_records(records: &[ModeRecord]) -> Result<ScalarField> {
    let mut modes = BTreeMap::new();
    for r in records {
        let k = Wavevector(r.k);
        if !k.within_cap() {
            return Err(Error::WavenumberTooLarge(k));
        }
        if modes.insert(k, Complex64::new(r.re, r.im)).is_some() {
            return Err(Error::InvalidArgument(format!("duplicate mode {k}")));
        }
    }
    ScalarField::from_modes(modes)
}

pub fn vector_to_record(u: &VectorField) -> VectorFieldRecord {
    let [a, b, c] = u.components();
    VectorFieldRecord { components: [scalar_to_records(a), scalar_to_records(b), scalar_to_records(c)] }
}

pub fn vector_from_record(r: &VectorFieldRecord) -> Result<VectorField> {
    Ok(VectorField::new([
        scalar_from_records(&r.components[0])?,
        scalar_from_records(&r.components[1])?,
        scalar_from_records(&r.components[2])?,
    ]))
}
