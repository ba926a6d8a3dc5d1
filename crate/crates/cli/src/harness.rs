//! Entry points shared by the fuzz targets and the corpus replay test.
//!
//! Each takes raw bytes, must never panic, and asserts the round-trip
//! property of whatever it manages to parse.

use flowcert::flows::FlowSolution;
use flowcert::polyalg::{orthogonality_at, PolyVec, SymbolTerm};
use flowcert::spectral::io::{vector_from_record, vector_to_record, VectorFieldRecord};
use flowcert::Wavevector;

use crate::config::{parse_config, MAX_DEGREE};

pub fn config(data: &[u8]) {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(cfg) = parse_config(text) else { return };
    for flow in cfg.flow.iter().chain(cfg.partner.iter()) {
        if let Ok(s) = flow.build(cfg.seed.unwrap_or(0)) {
            round_trip(&s);
        }
    }
}

pub fn solution(data: &[u8]) {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(s) = crate::commands::load_solution(text) {
        round_trip(&s);
    }
}

fn round_trip(s: &FlowSolution) {
    let text = s.to_json();
    let back = FlowSolution::from_json(&text, Some(MAX_DEGREE)).expect("emitted solutions reload");
    assert_eq!(back.to_spec(), s.to_spec(), "solution changed across a save/load cycle");
}

const PROBES: [Wavevector; 4] =
    [Wavevector::new(1, 0, 0), Wavevector::new(1, 2, 3), Wavevector::new(-4, 1, 7), Wavevector::new(5, -5, 2)];

pub fn symbol(data: &[u8]) {
    let Ok(records) = serde_json::from_slice::<[Vec<SymbolTerm>; 3]>(data) else { return };
    if let Ok(p) = PolyVec::from_records(&records, Some(MAX_DEGREE)) {
        for k in PROBES {
            assert_eq!(orthogonality_at(&p, k).norm(), 0.0, "certified symbol {p} fails at {k}");
        }
    }
}

pub fn field(data: &[u8]) {
    let Ok(record) = serde_json::from_slice::<VectorFieldRecord>(data) else { return };
    if let Ok(u) = vector_from_record(&record) {
        assert!(u.is_hermitian());
        let again = vector_from_record(&vector_to_record(&u)).expect("exported fields reload");
        assert_eq!(again, u);
    }
}
