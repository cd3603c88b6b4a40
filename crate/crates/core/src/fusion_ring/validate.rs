use std::fmt;

use super::FusionRing;

/// A violated ring axiom with witnessing indices (0-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Shape(String),
    DualNotInvolution { i: usize },
    DualOfUnit,
    Unit { j: usize, k: usize },
    Multiplicity { i: usize, j: usize, k: usize, value: u32 },
    Commutativity { i: usize, j: usize, k: usize },
    Duality { i: usize, j: usize },
    Associativity { i: usize, j: usize, k: usize, l: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Shape(s) => write!(f, "shape: {s}"),
            Violation::DualNotInvolution { i } => write!(f, "dual is not an involution at {i}"),
            Violation::DualOfUnit => write!(f, "dual of the unit is not the unit"),
            Violation::Unit { j, k } => write!(f, "unit law fails at N(1,{j};{k})"),
            Violation::Multiplicity { i, j, k, value } => {
                write!(f, "N({i},{j};{k}) = {value} is not multiplicity-free")
            }
            Violation::Commutativity { i, j, k } => write!(f, "N({i},{j};{k}) != N({j},{i};{k})"),
            Violation::Duality { i, j } => write!(f, "N({i},{j};1) disagrees with the dual map"),
            Violation::Associativity { i, j, k, l } => {
                write!(f, "associativity fails for ({i}⊗{j})⊗{k} at {l}")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_pass(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_pass() {
            return write!(f, "pass");
        }
        let items: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        write!(f, "fail: {}", items.join("; "))
    }
}

pub fn validate_ring(ring: &FusionRing) -> ValidationReport {
    let mut out = Vec::new();
    let r = ring.labels.len();
    if r == 0 {
        out.push(Violation::Shape("rank is zero".into()));
        return ValidationReport { violations: out };
    }
    if ring.dual.len() != r
        || ring.n.len() != r
        || ring.n.iter().any(|a| a.len() != r || a.iter().any(|b| b.len() != r))
    {
        out.push(Violation::Shape(format!("expected {r} labels, a length-{r} dual and an {r}x{r}x{r} tensor")));
        return ValidationReport { violations: out };
    }
    let mut seen = std::collections::HashSet::new();
    for l in &ring.labels {
        if !seen.insert(l) {
            out.push(Violation::Shape(format!("duplicate label `{l}`")));
        }
    }
    let n = &ring.n;
    for i in 0..r {
        if ring.dual[i] >= r || ring.dual[ring.dual[i]] != i {
            out.push(Violation::DualNotInvolution { i });
        }
    }
    if !out.is_empty() {
        return ValidationReport { violations: out };
    }
    if ring.dual[0] != 0 {
        out.push(Violation::DualOfUnit);
    }
    for j in 0..r {
        for k in 0..r {
            let want = u32::from(j == k);
            if n[0][j][k] != want || n[j][0][k] != want {
                out.push(Violation::Unit { j, k });
            }
        }
    }
    for i in 0..r {
        for j in 0..r {
            for k in 0..r {
                if n[i][j][k] > 1 {
                    out.push(Violation::Multiplicity { i, j, k, value: n[i][j][k] });
                }
                if i < j && n[i][j][k] != n[j][i][k] {
                    out.push(Violation::Commutativity { i, j, k });
                }
            }
            if n[i][j][0] != u32::from(j == ring.dual[i]) {
                out.push(Violation::Duality { i, j });
            }
        }
    }
    for i in 0..r {
        for j in 0..r {
            for k in 0..r {
                for l in 0..r {
                    let left: u32 = (0..r).map(|m| n[i][j][m] * n[m][k][l]).sum();
                    let right: u32 = (0..r).map(|m| n[j][k][m] * n[i][m][l]).sum();
                    if left != right {
                        out.push(Violation::Associativity { i, j, k, l });
                    }
                }
            }
        }
    }
    ValidationReport { violations: out }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_one_passes() {
        let ring = FusionRing::new_unchecked("Vec", vec!["1".into()], vec![0], vec![vec![vec![1]]]);
        assert!(validate_ring(&ring).is_pass());
    }

    #[test]
    fn detects_broken_unit() {
        let ring = FusionRing::new_unchecked("bad", vec!["1".into()], vec![0], vec![vec![vec![2]]]);
        let report = validate_ring(&ring);
        assert!(report.violations.contains(&Violation::Unit { j: 0, k: 0 }));
    }
}
