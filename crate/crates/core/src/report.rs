//! Per-ring summaries and comparison against the bundled reference tables.

use serde::Serialize;

use crate::catalogue::{self, ListedModularData, Reference};
use crate::condensation::condense;
use crate::error::Result;
use crate::etale_classifier::{classify, completely_anisotropic, Status, Verdict};
use crate::exactnum::Cyclo;
use crate::fusion_ring::{fpdim, FusionRing};
use crate::modular_data::{count_mfcs, MfcCount};

/// A connected étale algebra found for some listed modular data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EtaleEntry {
    pub algebra: String,
    /// `B` for the trivial algebra, otherwise the recognized `B_A`.
    pub category: String,
    pub rank: usize,
    pub lagrangian: bool,
}

/// Verdicts for every listed modular datum and the merged étale table.
pub struct Classification {
    pub per_md: Vec<(ListedModularData, Vec<Verdict>)>,
    pub etale: Vec<EtaleEntry>,
    pub anisotropic: Option<bool>,
}

pub fn classify_listed(key: &str) -> Result<Classification> {
    let ring = catalogue::ring(key)?;
    let mut per_md = Vec::new();
    let mut etale: Vec<EtaleEntry> = Vec::new();
    let mut anisotropic = Some(true);
    for listed in catalogue::listed_modular_data(key)? {
        let verdicts = classify(&ring, &listed.md)?;
        match (anisotropic, completely_anisotropic(&verdicts)) {
            (_, None) => anisotropic = None,
            (Some(_), Some(false)) => anisotropic = Some(false),
            _ => {}
        }
        for v in verdicts.iter().filter(|v| matches!(v.status, Status::TrivialEtale | Status::EtaleCertified)) {
            let algebra = v.candidate.display(&ring);
            if etale.iter().any(|e| e.algebra == algebra) {
                continue;
            }
            let (category, rank) = if v.candidate.is_trivial() {
                ("B".to_string(), ring.rank())
            } else {
                let res = condense(&ring, &listed.md, &v.candidate)?;
                (res.ba.clone().unwrap_or_else(|| "unrecognized".into()), res.module_rank())
            };
            etale.push(EtaleEntry { algebra, category, rank, lagrangian: v.lagrangian });
        }
        per_md.push((listed, verdicts));
    }
    Ok(Classification { per_md, etale, anisotropic })
}

/// One row of the overview table.
#[derive(Clone, Debug, Serialize)]
pub struct RingSummary {
    pub name: String,
    pub rank: usize,
    #[serde(serialize_with = "crate::report::as_string")]
    pub fpdim_total: Cyclo,
    pub characters: usize,
    pub mfcs: MfcCount,
    pub factorization: String,
    pub candidates: usize,
    pub etale: Vec<EtaleEntry>,
    pub anisotropic: Option<bool>,
}

pub(crate) fn as_string<S: serde::Serializer>(x: &Cyclo, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

/// Derives every column from scratch (the MFC count enumerates conformal vectors).
pub fn ring_summary(key: &str) -> Result<RingSummary> {
    let ring: FusionRing = catalogue::ring(key)?;
    let reference = catalogue::reference(key)?;
    let characters = catalogue::characters(&ring)?;
    let mfcs = count_mfcs(&ring, &characters, reference.denom_bound)?;
    let candidates = crate::etale_classifier::enumerate_candidates(&ring)?.len();
    let classification = classify_listed(key)?;
    Ok(RingSummary {
        name: ring.name().to_string(),
        rank: ring.rank(),
        fpdim_total: fpdim(&ring)?.total,
        characters: characters.len(),
        factorization: mfcs.factorization(),
        mfcs,
        candidates,
        etale: classification.etale,
        anisotropic: classification.anisotropic,
    })
}

/// A field that differs from the reference.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub ring: String,
    pub field: String,
    pub expected: String,
    pub actual: String,
}

pub fn compare_etale(ring: &str, etale: &[EtaleEntry], anisotropic: Option<bool>, reference: &Reference) -> Vec<Mismatch> {
    let mut out = Vec::new();
    let mut push = |field: &str, expected: String, actual: String| {
        if expected != actual {
            out.push(Mismatch { ring: ring.to_string(), field: field.to_string(), expected, actual });
        }
    };
    let fmt_rows = |rows: Vec<(String, String, usize, bool)>| {
        rows.iter().map(|(a, c, r, l)| format!("{a}:{c}:{r}:{l}")).collect::<Vec<_>>().join(", ")
    };
    push(
        "etale",
        fmt_rows(reference.etale.iter().map(|e| (e.algebra.clone(), e.category.clone(), e.rank, e.lagrangian)).collect()),
        fmt_rows(etale.iter().map(|e| (e.algebra.clone(), e.category.clone(), e.rank, e.lagrangian)).collect()),
    );
    push(
        "anisotropic",
        reference.anisotropic.to_string(),
        anisotropic.map_or_else(|| "undetermined".into(), |a| a.to_string()),
    );
    out
}

pub fn compare_summary(summary: &RingSummary, reference: &Reference) -> Result<Vec<Mismatch>> {
    let ring = summary.name.as_str();
    let mut out = Vec::new();
    let mut push = |field: &str, expected: String, actual: String| {
        if expected != actual {
            out.push(Mismatch { ring: ring.to_string(), field: field.to_string(), expected, actual });
        }
    };
    let total = reference.fpdim_total_exact()?;
    push("fpdim_total", total.to_string(), summary.fpdim_total.to_string());
    push("characters", reference.characters.len().to_string(), summary.characters.to_string());
    push("mfc_count", reference.mfc_count.to_string(), summary.mfcs.total.to_string());
    push("factorization", reference.factorization.clone(), summary.factorization.clone());
    push("candidates", reference.expected_candidate_count().to_string(), summary.candidates.to_string());
    out.extend(compare_etale(ring, &summary.etale, summary.anisotropic, reference));
    Ok(out)
}
