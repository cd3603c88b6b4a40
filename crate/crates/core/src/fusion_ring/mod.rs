//! Multiplicity-free commutative fusion rings.

mod automorphism;
mod characters;
mod validate;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use automorphism::{automorphisms, Automorphism};
pub use characters::{all_characters, fpdim, solve_characters, FpDims};
pub use validate::{validate_ring, ValidationReport, Violation};

/// Basis labels, dual involution and structure constants `N[i][j][k] = N_{i,j}^k`.
/// Index 0 is always the unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionRing {
    name: String,
    labels: Vec<String>,
    dual: Vec<usize>,
    n: Vec<Vec<Vec<u32>>>,
}

impl FusionRing {
    /// Builds and validates a ring.
    pub fn new(name: &str, labels: Vec<String>, dual: Vec<usize>, n: Vec<Vec<Vec<u32>>>) -> Result<Self> {
        let ring = Self::new_unchecked(name, labels, dual, n);
        let report = validate_ring(&ring);
        if report.is_pass() {
            Ok(ring)
        } else {
            Err(Error::Invalid(format!("ring `{name}`: {report}")))
        }
    }

    /// Builds without validation; use [`validate_ring`] to inspect the result.
    pub fn new_unchecked(name: &str, labels: Vec<String>, dual: Vec<usize>, n: Vec<Vec<Vec<u32>>>) -> Self {
        FusionRing { name: name.to_string(), labels, dual, n }
    }

    /// Builds a ring from products such as `"X*Y = 1+Z"`; unlisted products
    /// follow from commutativity and the unit, and the dual is read off
    /// from where `1` appears.
    pub fn from_products(name: &str, labels: &[&str], products: &[&str]) -> Result<Self> {
        let r = labels.len();
        let index = |s: &str| {
            labels
                .iter()
                .position(|l| *l == s.trim())
                .ok_or_else(|| Error::Parse(format!("unknown label `{}`", s.trim())))
        };
        let mut n = vec![vec![vec![0u32; r]; r]; r];
        for j in 0..r {
            n[0][j][j] = 1;
            n[j][0][j] = 1;
        }
        for p in products {
            let (lhs, rhs) = p.split_once('=').ok_or_else(|| Error::Parse(format!("missing `=` in `{p}`")))?;
            let (a, b) = lhs.split_once('*').ok_or_else(|| Error::Parse(format!("missing `*` in `{p}`")))?;
            let (i, j) = (index(a)?, index(b)?);
            for term in rhs.split('+') {
                let k = index(term)?;
                n[i][j][k] += 1;
                if i != j {
                    n[j][i][k] += 1;
                }
            }
        }
        let dual = (0..r)
            .map(|i| {
                (0..r)
                    .find(|&j| n[i][j][0] == 1)
                    .ok_or_else(|| Error::Invalid(format!("{} has no dual", labels[i])))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(name, labels.iter().map(|s| s.to_string()).collect(), dual, n)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn dual(&self, i: usize) -> usize {
        self.dual[i]
    }

    pub fn duals(&self) -> &[usize] {
        &self.dual
    }

    pub fn is_self_dual(&self) -> bool {
        (0..self.rank()).all(|i| self.dual[i] == i)
    }

    /// `N_{i,j}^k`.
    pub fn n(&self, i: usize, j: usize, k: usize) -> u32 {
        self.n[i][j][k]
    }

    pub fn tensor(&self) -> &Vec<Vec<Vec<u32>>> {
        &self.n
    }

    /// Fusion matrix `(N_i)_{j,k} = N_{i,j}^k`.
    pub fn fusion_matrix(&self, i: usize) -> Vec<Vec<u32>> {
        self.n[i].clone()
    }

    /// Simple summands of `b_i ⊗ b_j` (with repetition for multiplicities).
    pub fn product(&self, i: usize, j: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for k in 0..self.rank() {
            for _ in 0..self.n[i][j][k] {
                out.push(k);
            }
        }
        out
    }

    /// Renders a sum of simples such as `1+Y+Z`.
    pub fn format_sum(&self, items: &[usize]) -> String {
        items.iter().map(|&k| self.labels[k].as_str()).collect::<Vec<_>>().join("+")
    }

    /// Whether `b_i` is invertible.
    pub fn is_invertible(&self, i: usize) -> bool {
        self.product(i, self.dual[i]) == vec![0]
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    /// Relabels by a permutation: object `i` becomes object `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let r = self.rank();
        let mut n = vec![vec![vec![0u32; r]; r]; r];
        let mut labels = vec![String::new(); r];
        let mut dual = vec![0; r];
        for i in 0..r {
            labels[perm[i]] = self.labels[i].clone();
            dual[perm[i]] = perm[self.dual[i]];
            for j in 0..r {
                for k in 0..r {
                    n[perm[i]][perm[j]][perm[k]] = self.n[i][j][k];
                }
            }
        }
        FusionRing { name: self.name.clone(), labels, dual, n }
    }

    pub fn to_file(&self) -> RingFile {
        RingFile {
            name: Some(self.name.clone()),
            labels: self.labels.clone(),
            dual: self.dual.clone(),
            n: self.n.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("ring serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: RingFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        file.into_ring()
    }
}

/// On-disk ring format; `dual` holds 0-based label indices.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RingFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub labels: Vec<String>,
    pub dual: Vec<usize>,
    #[serde(rename = "N")]
    pub n: Vec<Vec<Vec<u32>>>,
}

impl RingFile {
    pub fn into_ring(self) -> Result<FusionRing> {
        let name = self.name.unwrap_or_else(|| "unnamed".into());
        FusionRing::new(&name, self.labels, self.dual, self.n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2() -> FusionRing {
        FusionRing::from_products("Z2", &["1", "g"], &["g*g=1"]).unwrap()
    }

    #[test]
    fn products_and_duals() {
        let r = z2();
        assert_eq!(r.product(1, 1), vec![0]);
        assert_eq!(r.duals(), &[0, 1]);
        assert!(r.is_invertible(1));
    }

    #[test]
    fn json_round_trip() {
        let r = z2();
        assert_eq!(FusionRing::from_json(&r.to_json()).unwrap(), r);
    }

    #[test]
    fn rejects_missing_dual() {
        assert!(FusionRing::from_products("bad", &["1", "g"], &["g*g=g"]).is_err());
    }
}
