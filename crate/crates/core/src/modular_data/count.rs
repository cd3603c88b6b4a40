use rayon::prelude::*;
use serde::Serialize;

use super::{canonical_orbits, enumerate_conformal};
use crate::error::Result;
use crate::exactnum::Cyclo;
use crate::fusion_ring::FusionRing;

/// Modular data counted per character: each orbit of conformal vectors
/// contributes two categories, one for each sign of the global dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MfcCount {
    pub orbits: Vec<usize>,
    pub total: u64,
}

impl MfcCount {
    pub fn from_orbits(orbits: Vec<usize>) -> Self {
        let total = orbits.iter().map(|&k| 2 * k as u64).sum();
        MfcCount { orbits, total }
    }

    /// `n(quantum dimensions)xk(conformal dimensions)x2(categorical dimensions)=T`
    /// when every character has the same orbit count, else the sorted sum of contributions.
    pub fn factorization(&self) -> String {
        let n = self.orbits.len();
        match self.orbits.first() {
            Some(&k) if self.orbits.iter().all(|&o| o == k) => format!(
                "{n}(quantum dimensions)x{k}(conformal dimensions)x2(categorical dimensions)={}",
                self.total
            ),
            _ => {
                let mut parts: Vec<u64> = self.orbits.iter().map(|&k| 2 * k as u64).collect();
                parts.sort_unstable();
                let terms: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                format!("{}={}", terms.join("+"), self.total)
            }
        }
    }
}

/// Counts by full enumeration over the given characters.
pub fn count_mfcs(ring: &FusionRing, characters: &[Vec<Cyclo>], denom_bound: u32) -> Result<MfcCount> {
    let orbits = characters
        .par_iter()
        .map(|d| {
            let hs = enumerate_conformal(ring, d, denom_bound)?;
            Ok(canonical_orbits(ring, d, &hs)?.len())
        })
        .collect::<Result<Vec<usize>>>()?;
    Ok(MfcCount::from_orbits(orbits))
}
