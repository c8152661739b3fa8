//! CSV and JSON-ready views of a defect catalog.

use serde::Serialize;

use super::scan::Catalog;
use crate::defect::Verdict;
use crate::logvalue::LogValueEncoding;

fn stability_label(v: &Verdict) -> String {
    match v {
        Verdict::CertifiedStable { .. } => "certified_stable".into(),
        Verdict::StableUpToHorizon => "stable_up_to_horizon".into(),
        Verdict::UnstableAt { k } => format!("unstable_at_{k}"),
    }
}

/// `value_approx,leader,length_of_leader,multiplicity,stability`, ascending.
pub fn catalog_csv(catalog: &Catalog) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer
        .write_record(["value_approx", "leader", "length_of_leader", "multiplicity", "stability"])
        .expect("writing to memory");
    for e in &catalog.entries {
        writer
            .write_record([
                e.value().to_fixed(6),
                e.leader.to_string(),
                e.defect.length().to_string(),
                e.multiplicity.to_string(),
                stability_label(&e.stability),
            ])
            .expect("writing to memory");
    }
    String::from_utf8(writer.into_inner().expect("flush to memory")).expect("csv is utf-8")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EntryRecord {
    pub value: LogValueEncoding,
    pub value_approx: String,
    pub leader: u64,
    pub length_of_leader: u32,
    pub multiplicity: u64,
    pub stability: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompletenessRecord {
    pub complete_below: Option<LogValueEncoding>,
    pub complete_below_approx: Option<String>,
    pub complete_through_r: bool,
    pub scan_complete: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CatalogRecord {
    /// The threshold as an exact fraction `p/q`.
    pub r: String,
    pub n_max: u64,
    pub class: String,
    pub entries: Vec<EntryRecord>,
    pub completeness: CompletenessRecord,
    pub unchecked: Vec<u64>,
}

/// Serializable form carrying exact `(c, m, scale)` encodings.
pub fn catalog_json(catalog: &Catalog) -> CatalogRecord {
    let c = &catalog.completeness;
    CatalogRecord {
        r: catalog.r.to_string(),
        n_max: catalog.n_max,
        class: catalog.class.clone(),
        entries: catalog
            .entries
            .iter()
            .map(|e| EntryRecord {
                value: e.value().encoding(),
                value_approx: e.value().to_fixed(6),
                leader: e.leader,
                length_of_leader: e.defect.length(),
                multiplicity: e.multiplicity,
                stability: e.stability,
            })
            .collect(),
        completeness: CompletenessRecord {
            complete_below: c.complete_below.as_ref().map(|v| v.encoding()),
            complete_below_approx: c.complete_below.as_ref().map(|v| v.to_fixed(6)),
            complete_through_r: c.complete_through_r,
            scan_complete: c.scan_complete,
        },
        unchecked: catalog.unchecked.clone(),
    }
}
