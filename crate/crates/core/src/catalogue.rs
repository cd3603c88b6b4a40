//! The eight rank-6 rings bundled with the crate, plus reference tables for
//! each: characters, conformal-dimension lists, counts and candidate algebras.

use num_rational::BigRational;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::exactnum::{parse_cyclo, parse_rational, Cyclo};
use crate::fusion_ring::{solve_characters, FusionRing};
use crate::modular_data::{build, ModularData};

struct Entry {
    slug: &'static str,
    ring: &'static str,
    reference: &'static str,
}

macro_rules! entry {
    ($slug:literal) => {
        Entry {
            slug: $slug,
            ring: include_str!(concat!("../data/rings/", $slug, ".json")),
            reference: include_str!(concat!("../data/reference/", $slug, ".json")),
        }
    };
}

const ENTRIES: [Entry; 8] = [
    entry!("vec_z6"),
    entry!("z2_ising"),
    entry!("su3_2"),
    entry!("tricrit_ising"),
    entry!("su2_5"),
    entry!("so5_2"),
    entry!("fib_psu2_5"),
    entry!("psu2_11"),
];

/// Slugs in catalogue order.
pub fn slugs() -> Vec<&'static str> {
    ENTRIES.iter().map(|e| e.slug).collect()
}

/// Raw JSON of a bundled ring.
pub fn ring_json(key: &str) -> Result<&'static str> {
    Ok(find(key)?.ring)
}

fn find(key: &str) -> Result<&'static Entry> {
    let folded = fold(key);
    ENTRIES
        .iter()
        .find(|e| e.slug == key || fold(&reference_raw(e).ring) == folded || fold(e.slug) == folded)
        .ok_or_else(|| Error::UnknownRing(key.to_string()))
}

fn fold(s: &str) -> String {
    s.chars().filter(|c| c.is_ascii_alphanumeric()).flat_map(|c| c.to_lowercase()).collect()
}

fn reference_raw(e: &Entry) -> Reference {
    serde_json::from_str(e.reference).expect("bundled reference parses")
}

/// Looks a ring up by display name (`su(2)_5`) or slug (`su2_5`), case-insensitively.
pub fn ring(key: &str) -> Result<FusionRing> {
    FusionRing::from_json(find(key)?.ring)
}

/// All bundled rings in catalogue order.
pub fn rings() -> Vec<FusionRing> {
    ENTRIES.iter().map(|e| FusionRing::from_json(e.ring).expect("bundled ring is valid")).collect()
}

pub fn slug_of(key: &str) -> Result<&'static str> {
    Ok(find(key)?.slug)
}

/// Reference tables for a bundled ring.
pub fn reference(key: &str) -> Result<Reference> {
    Ok(reference_raw(find(key)?))
}

/// The bundled entry with the same fusion tensor, if any.
pub fn bundled_match(ring: &FusionRing) -> Option<&'static str> {
    ENTRIES
        .iter()
        .find(|e| FusionRing::from_json(e.ring).is_ok_and(|b| b.tensor() == ring.tensor()))
        .map(|e| e.slug)
}

/// Real nonzero characters; bundled rings list them in reference order.
pub fn characters(ring: &FusionRing) -> Result<Vec<Vec<Cyclo>>> {
    let mut solved = solve_characters(ring)?;
    if let Some(slug) = bundled_match(ring) {
        let order = reference(slug)?.characters_exact()?;
        solved.sort_by_key(|c| order.iter().position(|o| o == c).unwrap_or(usize::MAX));
    }
    Ok(solved)
}

#[derive(Clone, Debug, Deserialize)]
pub struct Reference {
    pub ring: String,
    pub fpdim_total: String,
    /// Character value vectors, including the unit.
    pub characters: Vec<Vec<String>>,
    pub conformal: Vec<ConformalGroup>,
    pub denom_bound: u32,
    pub mfc_count: u64,
    pub factorization: String,
    pub candidate_count: usize,
    /// Count under exact arithmetic when it differs from the printed one.
    #[serde(default)]
    pub candidate_count_derived: Option<usize>,
    /// Multiplicities of `X..W`; absent when only the count is recorded.
    #[serde(default)]
    pub candidates: Option<Vec<Vec<u32>>>,
    pub etale: Vec<EtaleRow>,
    pub anisotropic: bool,
}

/// Conformal-dimension vectors shared by a set of characters (1-based indices).
#[derive(Clone, Debug, Deserialize)]
pub struct ConformalGroup {
    pub characters: Vec<usize>,
    pub h: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct EtaleRow {
    pub algebra: String,
    pub category: String,
    pub rank: usize,
    pub lagrangian: bool,
}

impl Reference {
    pub fn characters_exact(&self) -> Result<Vec<Vec<Cyclo>>> {
        self.characters
            .iter()
            .map(|row| row.iter().map(|s| parse_cyclo(s).map(|x| x.reduced())).collect())
            .collect()
    }

    pub fn fpdim_total_exact(&self) -> Result<Cyclo> {
        parse_cyclo(&self.fpdim_total).map(|x| x.reduced())
    }

    /// Conformal vectors listed for character `c` (0-based).
    pub fn conformal_for(&self, c: usize) -> Result<Vec<Vec<BigRational>>> {
        let group = self
            .conformal
            .iter()
            .find(|g| g.characters.contains(&(c + 1)))
            .ok_or_else(|| Error::Invalid(format!("no conformal list for character {}", c + 1)))?;
        group.h.iter().map(|row| row.iter().map(|s| parse_rational(s)).collect()).collect()
    }

    /// The candidate count expected from exact arithmetic.
    pub fn expected_candidate_count(&self) -> usize {
        self.candidate_count_derived.unwrap_or(self.candidate_count)
    }
}

/// One modular datum from the reference lists, with 1-based indices.
#[derive(Clone, Debug)]
pub struct ListedModularData {
    pub character: usize,
    pub conformal: usize,
    pub md: ModularData,
}

/// Every listed (character, conformal vector) pair of a bundled ring, built and verified.
pub fn listed_modular_data(key: &str) -> Result<Vec<ListedModularData>> {
    let ring = ring(key)?;
    let reference = reference(key)?;
    let mut out = Vec::new();
    for (c, d) in reference.characters_exact()?.iter().enumerate() {
        for (k, h) in reference.conformal_for(c)?.iter().enumerate() {
            let md = build(&ring, d, h)?;
            out.push(ListedModularData { character: c + 1, conformal: k + 1, md });
        }
    }
    Ok(out)
}
