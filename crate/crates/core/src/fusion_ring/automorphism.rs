use super::{fpdim, FusionRing};
use crate::error::Result;

/// A unit-fixing relabeling preserving the fusion tensor and the dual.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Automorphism {
    pub perm: Vec<usize>,
}

impl Automorphism {
    pub fn identity(rank: usize) -> Self {
        Automorphism { perm: (0..rank).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        Automorphism { perm: other.perm.iter().map(|&i| self.perm[i]).collect() }
    }

    pub fn inverse(&self) -> Automorphism {
        let mut inv = vec![0; self.perm.len()];
        for (i, &p) in self.perm.iter().enumerate() {
            inv[p] = i;
        }
        Automorphism { perm: inv }
    }

    /// Cycle notation with labels, e.g. `(Y Z)(V W)`.
    pub fn cycles(&self, ring: &FusionRing) -> String {
        let mut seen = vec![false; self.perm.len()];
        let mut out = String::new();
        for start in 0..self.perm.len() {
            if seen[start] || self.perm[start] == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(ring.label(i).to_string());
                i = self.perm[i];
            }
            out.push_str(&format!("({})", cycle.join(" ")));
        }
        if out.is_empty() {
            "()".into()
        } else {
            out
        }
    }

    pub fn is_automorphism_of(&self, ring: &FusionRing) -> bool {
        let r = ring.rank();
        let p = &self.perm;
        p[0] == 0
            && (0..r).all(|i| p[ring.dual(i)] == ring.dual(p[i]))
            && (0..r).all(|i| (0..r).all(|j| (0..r).all(|k| ring.n(p[i], p[j], p[k]) == ring.n(i, j, k))))
    }
}

/// The full automorphism group, sorted; backtracks over permutations that
/// preserve FPdim, checking the tensor on the assigned block.
pub fn automorphisms(ring: &FusionRing) -> Result<Vec<Automorphism>> {
    let r = ring.rank();
    let dims = fpdim(ring)?.per_object;
    let mut out = Vec::new();
    let mut perm = vec![usize::MAX; r];
    let mut used = vec![false; r];
    perm[0] = 0;
    used[0] = true;
    search(ring, &dims, 1, &mut perm, &mut used, &mut out);
    out.sort();
    Ok(out)
}

fn consistent(ring: &FusionRing, perm: &[usize], upto: usize) -> bool {
    for i in 0..=upto {
        for j in 0..=upto {
            for k in 0..=upto {
                if ring.n(perm[i], perm[j], perm[k]) != ring.n(i, j, k) {
                    return false;
                }
            }
        }
        let d = ring.dual(i);
        if d <= upto && perm[d] != ring.dual(perm[i]) {
            return false;
        }
    }
    true
}

fn search(
    ring: &FusionRing,
    dims: &[crate::exactnum::Cyclo],
    pos: usize,
    perm: &mut Vec<usize>,
    used: &mut Vec<bool>,
    out: &mut Vec<Automorphism>,
) {
    let r = ring.rank();
    if pos == r {
        out.push(Automorphism { perm: perm.clone() });
        return;
    }
    for target in 0..r {
        if used[target] || dims[target] != dims[pos] {
            continue;
        }
        perm[pos] = target;
        used[target] = true;
        if consistent(ring, perm, pos) {
            search(ring, dims, pos + 1, perm, used, out);
        }
        used[target] = false;
        perm[pos] = usize::MAX;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_group_has_inversion() {
        let z3 = FusionRing::from_products("Z3", &["1", "a", "b"], &["a*a=b", "a*b=1", "b*b=a"]).unwrap();
        let auts = automorphisms(&z3).unwrap();
        assert_eq!(auts.len(), 2);
        assert_eq!(auts[1].perm, vec![0, 2, 1]);
        assert_eq!(auts[1].cycles(&z3), "(a b)");
    }
}
