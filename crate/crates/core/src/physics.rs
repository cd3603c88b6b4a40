//! Ground-state degeneracy, symmetry breaking and realization matching.

use num_rational::BigRational;
use serde::Serialize;

use crate::catalogue;
use crate::condensation::NimRep;
use crate::error::{Error, Result};
use crate::exactnum::{parse_cyclo, parse_rational, Cyclo};
use crate::fusion_ring::FusionRing;
use crate::modular_data::frac;

/// Gapped phase described by a module category of rank `gsd`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GappedPhaseReport {
    pub gsd: usize,
    /// Objects `c` with some module `m` such that `c ▷ m ≇ m`.
    pub broken: Vec<usize>,
    /// First witness module for each broken object.
    pub witnesses: Vec<(usize, usize)>,
    pub ssb: bool,
}

pub fn gapped_phase_report(ring: &FusionRing, rep: &NimRep) -> GappedPhaseReport {
    let m = rep.rank();
    let mut broken = Vec::new();
    let mut witnesses = Vec::new();
    for c in 0..ring.rank() {
        // Column `a` of n_c is c ▷ m_a read off the NIM-rep.
        let witness = (0..m).find(|&a| (0..m).any(|b| rep.n[c][b][a] != u32::from(a == b)));
        if let Some(a) = witness {
            broken.push(c);
            witnesses.push((c, a));
        }
    }
    let ssb = !broken.is_empty();
    GappedPhaseReport { gsd: m, broken, witnesses, ssb }
}

/// A matching category: ring, 1-based character and conformal-vector indices,
/// and `(object, input label)` pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RealizationMatch {
    pub source: String,
    pub character: usize,
    pub conformal: usize,
    pub mapping: Vec<(String, String)>,
}

/// Candidate data searched by [`match_realization`].
pub struct PoolEntry {
    pub ring: FusionRing,
    pub characters: Vec<Vec<Cyclo>>,
    /// Conformal vectors per character.
    pub conformal: Vec<Vec<Vec<BigRational>>>,
}

/// The bundled rings in catalogue order, preceded by the rank-one category.
pub fn catalogue_pool() -> Result<Vec<PoolEntry>> {
    let trivial = FusionRing::from_products("Vec", &["1"], &[])?;
    let mut pool = vec![PoolEntry {
        ring: trivial,
        characters: vec![vec![Cyclo::one()]],
        conformal: vec![vec![vec![BigRational::from_integer(0.into())]]],
    }];
    for slug in catalogue::slugs() {
        let reference = catalogue::reference(slug)?;
        let characters = reference.characters_exact()?;
        let conformal = (0..characters.len()).map(|c| reference.conformal_for(c)).collect::<Result<_>>()?;
        pool.push(PoolEntry { ring: catalogue::ring(slug)?, characters, conformal });
    }
    Ok(pool)
}

/// First exact match of `(d, h mod 1)` up to an object bijection fixing the unit.
pub fn match_realization(
    labels: &[String],
    dims: &[Cyclo],
    hs: &[BigRational],
    pool: &[PoolEntry],
) -> Result<Option<RealizationMatch>> {
    if labels.len() != dims.len() || dims.len() != hs.len() {
        return Err(Error::Invalid("dimension and conformal lists differ in length".into()));
    }
    let hs: Vec<BigRational> = hs.iter().map(frac).collect();
    for entry in pool.iter().filter(|e| e.ring.rank() == dims.len()) {
        for (c, d) in entry.characters.iter().enumerate() {
            for (k, h) in entry.conformal[c].iter().enumerate() {
                let target: Vec<BigRational> = h.iter().map(frac).collect();
                if let Some(perm) = bijection(d, &target, dims, &hs) {
                    let mapping = (0..dims.len())
                        .map(|i| (entry.ring.label(i).to_string(), labels[perm[i]].clone()))
                        .collect();
                    return Ok(Some(RealizationMatch {
                        source: entry.ring.name().to_string(),
                        character: c + 1,
                        conformal: k + 1,
                        mapping,
                    }));
                }
            }
        }
    }
    Ok(None)
}

/// `perm[i]` = input index assigned to object `i`; the unit goes to the first input.
fn bijection(d: &[Cyclo], h: &[BigRational], dims: &[Cyclo], hs: &[BigRational]) -> Option<Vec<usize>> {
    let r = d.len();
    let fits = |i: usize, p: usize| d[i] == dims[p] && h[i] == hs[p];
    if !fits(0, 0) {
        return None;
    }
    let mut perm = vec![0; r];
    let mut used = vec![false; r];
    used[0] = true;
    fn go(i: usize, perm: &mut Vec<usize>, used: &mut Vec<bool>, fits: &dyn Fn(usize, usize) -> bool) -> bool {
        if i == perm.len() {
            return true;
        }
        for p in 0..perm.len() {
            if !used[p] && fits(i, p) {
                used[p] = true;
                perm[i] = p;
                if go(i + 1, perm, used, fits) {
                    return true;
                }
                used[p] = false;
            }
        }
        false
    }
    go(1, &mut perm, &mut used, &fits).then_some(perm)
}

/// Reads `label: value` lines; blank lines and `#` comments are skipped.
pub fn parse_labelled(text: &str) -> Result<Vec<(String, String)>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            let (label, value) = l.split_once(':').ok_or_else(|| Error::Parse(format!("expected `label: value`, got `{l}`")))?;
            Ok((label.trim().to_string(), value.trim().to_string()))
        })
        .collect()
}

/// Parses a dimension file and a conformal-dimension file with the same labels.
pub fn parse_realization(dims: &str, hs: &str) -> Result<(Vec<String>, Vec<Cyclo>, Vec<BigRational>)> {
    let d = parse_labelled(dims)?;
    let h = parse_labelled(hs)?;
    let labels: Vec<String> = d.iter().map(|(l, _)| l.clone()).collect();
    if labels != h.iter().map(|(l, _)| l.clone()).collect::<Vec<_>>() {
        return Err(Error::Parse("dimension and conformal files list different labels".into()));
    }
    let dv = d.iter().map(|(_, v)| parse_cyclo(v).map(|x| x.reduced())).collect::<Result<_>>()?;
    let hv = h.iter().map(|(_, v)| parse_rational(v)).collect::<Result<_>>()?;
    Ok((labels, dv, hv))
}
