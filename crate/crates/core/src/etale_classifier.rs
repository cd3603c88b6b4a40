//! Connected étale algebra candidates `A = 1 ⊕ Σ n_j b_j` and the filters
//! that rule them out or certify them.

use std::cmp::Ordering;
use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{cmp_real, Cyclo};
use crate::fusion_ring::{fpdim, FusionRing};
use crate::modular_data::ModularData;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraCandidate {
    /// Multiplicities of every simple object; `n[0] = 1`.
    pub n: Vec<u32>,
    /// `FPdim(A) = Σ n_j FPdim(b_j)`.
    pub fpdim: Cyclo,
}

impl AlgebraCandidate {
    pub fn support(&self) -> Vec<usize> {
        (0..self.n.len()).filter(|&j| self.n[j] > 0).collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.n.iter().skip(1).all(|&k| k == 0)
    }

    /// Renders as `1+X`, `1+2X`, ...
    pub fn display(&self, ring: &FusionRing) -> String {
        self.n
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(j, &k)| if k == 1 { ring.label(j).to_string() } else { format!("{k}{}", ring.label(j)) })
            .collect::<Vec<_>>()
            .join("+")
    }
}

/// Builds a candidate from multiplicities of all objects.
pub fn candidate(ring: &FusionRing, n: Vec<u32>) -> Result<AlgebraCandidate> {
    if n.len() != ring.rank() || n[0] != 1 {
        return Err(Error::Invalid("an algebra needs one multiplicity per object and n_1 = 1".into()));
    }
    let dims = fpdim(ring)?.per_object;
    let fpdim = n.iter().zip(&dims).map(|(&k, d)| d.scale_int(k as i64)).sum::<Cyclo>().reduced();
    Ok(AlgebraCandidate { n, fpdim })
}

/// Parses `1+X`, `1+2X`, `1 + X + Y`; the unit must appear exactly once.
pub fn parse_algebra(ring: &FusionRing, spec: &str) -> Result<AlgebraCandidate> {
    let mut n = vec![0u32; ring.rank()];
    for term in spec.split('+') {
        let term = term.trim();
        let split = term.find(|c: char| !c.is_ascii_digit()).unwrap_or(term.len());
        let (count, label) = term.split_at(split);
        let count: u32 = if count.is_empty() {
            1
        } else {
            count.parse().map_err(|_| Error::Parse(format!("bad multiplicity in `{term}`")))?
        };
        let label = if label.is_empty() { count.to_string() } else { label.trim().to_string() };
        let count = if label == "1" && split == term.len() { 1 } else { count };
        let j = ring
            .index_of(&label)
            .ok_or_else(|| Error::Parse(format!("unknown object `{label}` in `{spec}`")))?;
        n[j] += count;
    }
    candidate(ring, n)
}

/// Every `n` with `n_1 = 1` and `FPdim(A)² ≤ FPdim(B)`, sorted lexicographically.
pub fn enumerate_candidates(ring: &FusionRing) -> Result<Vec<AlgebraCandidate>> {
    let dims = fpdim(ring)?;
    let r = ring.rank();
    let mut out = Vec::new();
    if cmp_real(&dims.total, &Cyclo::one())? == Ordering::Less {
        out.push(candidate(ring, unit_vector(r))?);
        return Ok(out);
    }
    let mut n = unit_vector(r);
    extend(1, Cyclo::one(), &dims.per_object, &dims.total, &mut n, &mut out)?;
    out.sort_by(|a, b| a.n.cmp(&b.n));
    Ok(out)
}

fn unit_vector(r: usize) -> Vec<u32> {
    let mut n = vec![0; r];
    n[0] = 1;
    n
}

fn extend(
    j: usize,
    sum: Cyclo,
    dims: &[Cyclo],
    total: &Cyclo,
    n: &mut Vec<u32>,
    out: &mut Vec<AlgebraCandidate>,
) -> Result<()> {
    if j == n.len() {
        out.push(AlgebraCandidate { n: n.clone(), fpdim: sum.reduced() });
        return Ok(());
    }
    let mut k = 0;
    let mut s = sum;
    loop {
        n[j] = k;
        extend(j + 1, s.clone(), dims, total, n, out)?;
        s = &s + &dims[j];
        if cmp_real(&(&s * &s), total)? == Ordering::Greater {
            break;
        }
        k += 1;
    }
    n[j] = 0;
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    TrivialEtale,
    EtaleCertified,
    RuledOut,
    Undetermined,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::TrivialEtale => "trivial etale",
            Status::EtaleCertified => "etale",
            Status::RuledOut => "ruled out",
            Status::Undetermined => "undetermined",
        })
    }
}

/// A failed necessary condition with its witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Failure {
    /// A summand has non-integer conformal dimension.
    NontrivialTwist { j: usize },
    /// `N_{i,j}^k > 0` inside the support with `h_k ≠ h_i + h_j (mod 1)`.
    Channel { i: usize, j: usize, k: usize },
    /// `FPdim(B)/FPdim(A)²` is not an algebraic integer.
    NotIntegral { f: Cyclo },
    /// `1 < FPdim(B)/FPdim(A)² < 2` admits no modular category.
    NoCategory { f: Cyclo },
}

impl Failure {
    pub fn describe(&self, ring: &FusionRing) -> String {
        match self {
            Failure::NontrivialTwist { j } => format!("h_{} not integral", ring.label(*j)),
            Failure::Channel { i, j, k } => {
                format!("channel {}x{}->{} breaks h additivity", ring.label(*i), ring.label(*j), ring.label(*k))
            }
            Failure::NotIntegral { f } => format!("FPdim(B0_A) = {f} not an algebraic integer"),
            Failure::NoCategory { f } => format!("FPdim(B0_A) = {f} lies strictly between 1 and 2"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Verdict {
    pub candidate: AlgebraCandidate,
    pub status: Status,
    pub failures: Vec<Failure>,
    /// `FPdim(B)/FPdim(A)²`.
    pub dyslectic_fpdim: Cyclo,
    pub lagrangian: bool,
}

/// Twist triviality on the support, then additivity of `h` along fusion channels inside it.
pub fn check_commutativity(ring: &FusionRing, md: &ModularData, a: &AlgebraCandidate) -> Vec<Failure> {
    let supp = a.support();
    let mut out: Vec<Failure> =
        supp.iter().filter(|&&j| !md.h[j].is_zero()).map(|&j| Failure::NontrivialTwist { j }).collect();
    for &i in &supp {
        for &j in &supp {
            for &k in &supp {
                if ring.n(i, j, k) > 0 && crate::modular_data::frac(&(&md.h[i] + &md.h[j] - &md.h[k])) != Zero::zero() {
                    out.push(Failure::Channel { i, j, k });
                }
            }
        }
    }
    out
}

/// Checks that `FPdim(B)/FPdim(A)²` could be the dimension of a modular category.
pub fn check_realizability(total: &Cyclo, a: &AlgebraCandidate) -> Result<(Cyclo, Option<Failure>)> {
    let f = total.div(&(&a.fpdim * &a.fpdim))?.reduced();
    if !f.is_algebraic_integer() {
        return Ok((f.clone(), Some(Failure::NotIntegral { f })));
    }
    let above_one = cmp_real(&f, &Cyclo::one())? == Ordering::Greater;
    let below_two = cmp_real(&f, &Cyclo::from_int(2))? == Ordering::Less;
    if above_one && below_two {
        return Ok((f.clone(), Some(Failure::NoCategory { f })));
    }
    Ok((f, None))
}

/// Certifies an algebra of invertible bosons with `d = 1` closed under fusion.
pub fn simple_current_certified(ring: &FusionRing, md: &ModularData, a: &AlgebraCandidate) -> bool {
    let supp = a.support();
    supp.iter().all(|&j| {
        j == 0 || (a.n[j] == 1 && ring.is_invertible(j) && md.h[j].is_zero() && md.d[j].is_one())
    }) && supp.iter().all(|&i| supp.iter().all(|&j| ring.product(i, j).iter().all(|k| supp.contains(k))))
}

/// Runs the full pipeline; one verdict per candidate, in candidate order.
pub fn classify(ring: &FusionRing, md: &ModularData) -> Result<Vec<Verdict>> {
    let total = fpdim(ring)?.total;
    enumerate_candidates(ring)?.into_iter().map(|a| verdict(ring, md, &total, a)).collect()
}

pub fn verdict(ring: &FusionRing, md: &ModularData, total: &Cyclo, a: AlgebraCandidate) -> Result<Verdict> {
    let mut failures = check_commutativity(ring, md, &a);
    let (f, realizable) = check_realizability(total, &a)?;
    failures.extend(realizable);
    let lagrangian = (&a.fpdim * &a.fpdim) == *total;
    let status = if !failures.is_empty() {
        Status::RuledOut
    } else if a.is_trivial() {
        Status::TrivialEtale
    } else if simple_current_certified(ring, md, &a) {
        Status::EtaleCertified
    } else {
        Status::Undetermined
    };
    Ok(Verdict { candidate: a, status, failures, dyslectic_fpdim: f, lagrangian })
}

/// `Some(true)` when only the trivial algebra survives, `None` if any verdict is undetermined.
pub fn completely_anisotropic(verdicts: &[Verdict]) -> Option<bool> {
    if verdicts.iter().any(|v| v.status == Status::Undetermined) {
        return None;
    }
    Some(!verdicts.iter().any(|v| v.status == Status::EtaleCertified))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalogue;
    use crate::exactnum::parse_cyclo;
    use crate::modular_data::build;

    fn so5() -> (FusionRing, ModularData) {
        let ring = catalogue::ring("so5_2").unwrap();
        let reference = catalogue::reference("so5_2").unwrap();
        let d = reference.characters_exact().unwrap().remove(1);
        let h = reference.conformal_for(1).unwrap().remove(0);
        let md = build(&ring, &d, &h).unwrap();
        (ring, md)
    }

    #[test]
    fn parses_algebra_specs() {
        let ring = catalogue::ring("so5_2").unwrap();
        assert_eq!(parse_algebra(&ring, "1+X").unwrap().n, vec![1, 1, 0, 0, 0, 0]);
        assert_eq!(parse_algebra(&ring, "1 + 2X").unwrap().n, vec![1, 2, 0, 0, 0, 0]);
        assert_eq!(parse_algebra(&ring, "1").unwrap().n, vec![1, 0, 0, 0, 0, 0]);
        assert!(parse_algebra(&ring, "X").is_err());
        assert!(parse_algebra(&ring, "1+Q").is_err());
    }

    #[test]
    fn so5_filters() {
        let (ring, md) = so5();
        let total = fpdim(&ring).unwrap().total;
        let one_x = parse_algebra(&ring, "1+X").unwrap();
        assert!(check_commutativity(&ring, &md, &one_x).is_empty());
        let (f, fail) = check_realizability(&total, &one_x).unwrap();
        assert_eq!(f, Cyclo::from_int(5));
        assert!(fail.is_none());
        assert!(simple_current_certified(&ring, &md, &one_x));

        let (f, fail) = check_realizability(&total, &parse_algebra(&ring, "1+2X").unwrap()).unwrap();
        assert_eq!(f, Cyclo::from_frac(20, 9));
        assert!(matches!(fail, Some(Failure::NotIntegral { .. })));

        let (f, fail) = check_realizability(&total, &parse_algebra(&ring, "1+V").unwrap()).unwrap();
        assert_eq!(f, parse_cyclo("(15-5*sqrt(5))/2").unwrap());
        assert!(matches!(fail, Some(Failure::NoCategory { .. })));
    }

    #[test]
    fn vec_z6_twisted_summand_fails() {
        let ring = catalogue::ring("vec_z6").unwrap();
        let reference = catalogue::reference("vec_z6").unwrap();
        let d = reference.characters_exact().unwrap().remove(0);
        let h = reference.conformal_for(0).unwrap().remove(0);
        let md = build(&ring, &d, &h).unwrap();
        let a = parse_algebra(&ring, "1+V").unwrap();
        assert_eq!(check_commutativity(&ring, &md, &a), vec![Failure::NontrivialTwist { j: 4 }]);
        let trivial = parse_algebra(&ring, "1").unwrap();
        assert!(check_commutativity(&ring, &md, &trivial).is_empty());
    }
}
