//! Anyon condensation by a connected étale algebra `A`.
//!
//! The category of `A`-modules `B_A` is described by a NIM-rep together with
//! its own fusion rules, which are recovered as integer matrices commuting
//! with the action of `B`. Sectors whose lifts share a twist survive as the
//! deconfined phase `B⁰_A`.

mod nimrep;
mod recognize;

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::catalogue;
use crate::error::{Error, Result};
use crate::etale_classifier::{verdict, AlgebraCandidate, Status};
use crate::exactnum::Cyclo;
use crate::fusion_ring::{fpdim, FusionRing};
use crate::modular_data::{format_rational, ModularData};

pub use nimrep::{find_nimreps, gram_matrix, max_module_rank, Matrix, NimRep, DEFAULT_BUDGET};
pub use recognize::{cyclic_tensor, is_quadratic, recognize_category, Tensor};

/// `FPdim(U(m_b)) / FPdim(A)` for every module, from the free images `W`.
pub fn module_dims(per_object: &[Cyclo], w: &Matrix, algebra_dim: &Cyclo) -> Result<Vec<Cyclo>> {
    let m = w[0].len();
    let mut lifted = vec![Cyclo::zero(); m];
    for (j, row) in w.iter().enumerate() {
        for b in 0..m {
            if row[b] > 0 {
                lifted[b] = &lifted[b] + &per_object[j].scale_int(row[b] as i64);
            }
        }
    }
    lifted.iter().map(|x| Ok(x.div(algebra_dim)?.reduced())).collect()
}

/// Fusion rules of `B_A` compatible with a NIM-rep, as tensors
/// `t[x][y][z]` = multiplicity of `m_z` in `m_x ⊗_A m_y`.
///
/// Writing `L_x[y][z] = t[x][y][z]`, the constraints are `L_0 = I`,
/// `L_x[0] = e_x`, `L_x n_i = n_i L_x`, `Σ_b W[i][b] L_b = n_i`, plus
/// dimension compatibility, associativity and duals.
pub fn module_fusion(ring: &FusionRing, rep: &NimRep, budget: u64) -> Result<Vec<Tensor>> {
    let m = rep.rank();
    let w = rep.free_images();
    let dims = fpdim(ring)?.per_object;
    let lifted = module_dims(&dims, &w, &Cyclo::one())?;
    let delta = module_dims(&dims, &w, &lifted[0])?;
    let unknowns = (m - 1) * m * m;
    let var = |x: usize, y: usize, z: usize| ((x - 1) * m + y) * m + z;
    let mut rows: Vec<(Vec<(usize, i64)>, i64)> = Vec::new();
    for x in 1..m {
        for z in 0..m {
            rows.push((vec![(var(x, 0, z), 1)], i64::from(z == x)));
        }
        for n in &rep.n {
            // (L_x n)[y][z] - (n L_x)[y][z] = 0
            for y in 0..m {
                for z in 0..m {
                    let mut coeffs: BTreeMap<usize, i64> = BTreeMap::new();
                    for k in 0..m {
                        *coeffs.entry(var(x, y, k)).or_default() += n[k][z] as i64;
                        *coeffs.entry(var(x, k, z)).or_default() -= n[y][k] as i64;
                    }
                    rows.push((coeffs.into_iter().filter(|&(_, c)| c != 0).collect(), 0));
                }
            }
        }
    }
    for (i, n) in rep.n.iter().enumerate() {
        for y in 0..m {
            for z in 0..m {
                let coeffs: Vec<(usize, i64)> =
                    (1..m).filter(|&b| w[i][b] > 0).map(|b| (var(b, y, z), w[i][b] as i64)).collect();
                let rhs = n[y][z] as i64 - w[i][0] as i64 * i64::from(y == z);
                rows.push((coeffs, rhs));
            }
        }
    }
    let df: Vec<f64> = delta.iter().map(|d| d.to_f64()).collect();
    let bounds: Vec<u32> = (0..unknowns)
        .map(|v| {
            let (x, y, z) = (v / (m * m) + 1, (v / m) % m, v % m);
            (df[x] * df[y] / df[z] + 1e-9).floor() as u32
        })
        .collect();
    let solutions = nonneg_solutions(&rows, unknowns, &bounds, budget)?;
    let mut out = Vec::new();
    for s in solutions {
        let mut t = vec![vec![vec![0u32; m]; m]; m];
        for y in 0..m {
            t[0][y][y] = 1;
        }
        for (v, &val) in s.iter().enumerate() {
            t[v / (m * m) + 1][(v / m) % m][v % m] = val;
        }
        if dims_compatible(&t, &delta) && associative(&t) && has_duals(&t) {
            out.push(t);
        }
    }
    Ok(out)
}

fn dims_compatible(t: &Tensor, delta: &[Cyclo]) -> bool {
    let m = t.len();
    (0..m).all(|x| {
        (0..m).all(|y| {
            let sum: Cyclo = (0..m).filter(|&z| t[x][y][z] > 0).map(|z| delta[z].scale_int(t[x][y][z] as i64)).sum();
            sum == &delta[x] * &delta[y]
        })
    })
}

fn associative(t: &Tensor) -> bool {
    let m = t.len();
    (0..m).all(|x| {
        (0..m).all(|y| {
            (0..m).all(|z| {
                (0..m).all(|u| {
                    let left: u32 = (0..m).map(|e| t[x][y][e] * t[e][z][u]).sum();
                    let right: u32 = (0..m).map(|e| t[y][z][e] * t[x][e][u]).sum();
                    left == right
                })
            })
        })
    })
}

fn has_duals(t: &Tensor) -> bool {
    let m = t.len();
    let dual: Vec<Option<usize>> = (0..m)
        .map(|x| {
            let hits: Vec<usize> = (0..m).filter(|&y| t[x][y][0] > 0).collect();
            (hits.len() == 1 && t[x][hits[0]][0] == 1).then(|| hits[0])
        })
        .collect();
    (0..m).all(|x| matches!(dual[x], Some(y) if dual[y] == Some(x) && t[y][x][0] == 1))
}

/// Nonnegative integer solutions of a sparse integer system with per-variable bounds.
fn nonneg_solutions(rows: &[(Vec<(usize, i64)>, i64)], unknowns: usize, bounds: &[u32], budget: u64) -> Result<Vec<Vec<u32>>> {
    // Reduced row echelon form over Q.
    let mut mat: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|(coeffs, rhs)| {
            let mut row = vec![BigRational::zero(); unknowns + 1];
            for &(v, c) in coeffs {
                row[v] += BigRational::from_integer(c.into());
            }
            row[unknowns] = BigRational::from_integer((*rhs).into());
            row
        })
        .collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for col in 0..unknowns {
        let Some(p) = (r..mat.len()).find(|&i| !mat[i][col].is_zero()) else { continue };
        mat.swap(r, p);
        let inv = mat[r][col].recip();
        for c in col..=unknowns {
            let v = &mat[r][c] * &inv;
            mat[r][c] = v;
        }
        for i in 0..mat.len() {
            if i != r && !mat[i][col].is_zero() {
                let f = mat[i][col].clone();
                for c in col..=unknowns {
                    let v = &mat[r][c] * &f;
                    mat[i][c] -= v;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    if mat[r..].iter().any(|row| !row[unknowns].is_zero()) {
        return Ok(Vec::new());
    }
    mat.truncate(r);
    let free: Vec<usize> = (0..unknowns).filter(|v| !pivots.contains(v)).collect();
    // Each pivot row is checked once its last free variable is set.
    let mut ready: Vec<Vec<usize>> = vec![Vec::new(); free.len() + 1];
    for (row, _) in pivots.iter().enumerate() {
        let last = free.iter().rposition(|&f| !mat[row][f].is_zero()).map_or(0, |k| k + 1);
        ready[last].push(row);
    }
    let mut values = vec![0u32; unknowns];
    let mut out = Vec::new();
    let mut nodes = 0u64;
    let pivot_value = |row: usize, values: &[u32]| -> Option<u32> {
        let mut v = mat[row][unknowns].clone();
        for &f in &free {
            if !mat[row][f].is_zero() && values[f] > 0 {
                v -= &mat[row][f] * BigRational::from_integer(values[f].into());
            }
        }
        (v.is_integer() && !v.is_negative()).then(|| v.to_integer().to_u32()).flatten()
    };
    #[allow(clippy::too_many_arguments)]
    fn go(
        k: usize,
        free: &[usize],
        ready: &[Vec<usize>],
        pivots: &[usize],
        bounds: &[u32],
        values: &mut Vec<u32>,
        nodes: &mut u64,
        budget: u64,
        pivot_value: &dyn Fn(usize, &[u32]) -> Option<u32>,
        out: &mut Vec<Vec<u32>>,
    ) -> bool {
        *nodes += 1;
        if *nodes > budget {
            return false;
        }
        for &row in &ready[k] {
            match pivot_value(row, values) {
                Some(v) if v <= bounds[pivots[row]] => values[pivots[row]] = v,
                _ => return true,
            }
        }
        if k == free.len() {
            out.push(values.clone());
            return true;
        }
        for v in 0..=bounds[free[k]] {
            values[free[k]] = v;
            if !go(k + 1, free, ready, pivots, bounds, values, nodes, budget, pivot_value, out) {
                return false;
            }
        }
        values[free[k]] = 0;
        true
    }
    if !go(0, &free, &ready, &pivots, bounds, &mut values, &mut nodes, budget, &pivot_value, &mut out) {
        return Err(Error::SearchBudgetExceeded { budget, found: out.len() });
    }
    Ok(out)
}

/// Outcome of condensing `A` in a modular category.
#[derive(Clone, Debug)]
pub struct CondensationResult {
    pub algebra: AlgebraCandidate,
    pub nimrep: NimRep,
    /// `branching[j][b]`: multiplicity of sector `b` in the image of `b_j`; sector 0 is the new vacuum.
    pub branching: Matrix,
    pub module_fusion: Tensor,
    /// Quantum dimensions of sectors in `B_A`.
    pub module_dims: Vec<Cyclo>,
    pub module_fpdims: Vec<Cyclo>,
    /// Classes of at least two objects with equal images.
    pub identified: Vec<Vec<usize>>,
    /// Objects whose image has more than one sector.
    pub split: Vec<usize>,
    pub unconfined: Vec<usize>,
    /// Common conformal dimension of the lifts, for unconfined sectors.
    pub sector_h: Vec<Option<BigRational>>,
    pub fpdim_ba: Cyclo,
    pub fpdim_ba0: Cyclo,
    pub ba: Option<String>,
    pub ba0: Option<String>,
}

impl CondensationResult {
    pub fn module_rank(&self) -> usize {
        self.branching[0].len()
    }

    /// Objects all of whose sectors are confined.
    pub fn confined_objects(&self) -> Vec<usize> {
        (0..self.branching.len())
            .filter(|&j| (0..self.module_rank()).all(|b| self.branching[j][b] == 0 || !self.unconfined.contains(&b)))
            .collect()
    }

    pub fn summary(&self, ring: &FusionRing) -> CondensationSummary {
        let sector = |b: usize| format!("m{}", b + 1);
        CondensationSummary {
            algebra: self.algebra.display(ring),
            module_rank: self.module_rank(),
            branching: (0..ring.rank())
                .map(|j| {
                    let terms: Vec<String> = (0..self.module_rank())
                        .filter(|&b| self.branching[j][b] > 0)
                        .map(|b| match self.branching[j][b] {
                            1 => sector(b),
                            k => format!("{k}{}", sector(b)),
                        })
                        .collect();
                    (ring.label(j).to_string(), terms.join("+"))
                })
                .collect(),
            nimrep: ring.labels().iter().cloned().zip(self.nimrep.n.iter().cloned()).collect(),
            module_dims: self.module_dims.iter().map(|d| d.to_string()).collect(),
            identified: self
                .identified
                .iter()
                .map(|c| c.iter().map(|&j| ring.label(j).to_string()).collect())
                .collect(),
            split: self.split.iter().map(|&j| ring.label(j).to_string()).collect(),
            unconfined: self.unconfined.iter().map(|&b| sector(b)).collect(),
            confined: (0..self.module_rank()).filter(|b| !self.unconfined.contains(b)).map(sector).collect(),
            sector_h: self.sector_h.iter().map(|h| h.as_ref().map(format_rational)).collect(),
            fpdim_ba: self.fpdim_ba.to_string(),
            fpdim_ba0: self.fpdim_ba0.to_string(),
            ba: self.ba.clone().unwrap_or_else(|| "unrecognized".into()),
            ba0: self.ba0.clone().unwrap_or_else(|| "unrecognized".into()),
        }
    }
}

/// Serializable view with labels resolved.
#[derive(Clone, Debug, Serialize)]
pub struct CondensationSummary {
    pub algebra: String,
    pub module_rank: usize,
    pub branching: Vec<(String, String)>,
    pub nimrep: Vec<(String, Matrix)>,
    pub module_dims: Vec<String>,
    pub identified: Vec<Vec<String>>,
    pub split: Vec<String>,
    pub unconfined: Vec<String>,
    pub confined: Vec<String>,
    pub sector_h: Vec<Option<String>>,
    pub fpdim_ba: String,
    pub fpdim_ba0: String,
    pub ba: String,
    pub ba0: String,
}

/// Condenses `a`, which must pass the étale checks.
pub fn condense(ring: &FusionRing, md: &ModularData, a: &AlgebraCandidate) -> Result<CondensationResult> {
    let fp = fpdim(ring)?;
    let v = verdict(ring, md, &fp.total, a.clone())?;
    if v.status == Status::RuledOut {
        return Err(Error::Invalid(format!("{} is not a connected étale algebra", a.display(ring))));
    }
    let inconsistent = |msg: &str| Error::InconsistentBranching(msg.to_string());
    let reps = find_nimreps(ring, a, None, DEFAULT_BUDGET)?;
    let (rep, t) = reps
        .iter()
        .find_map(|rep| {
            let fusions = module_fusion(ring, rep, DEFAULT_BUDGET).ok()?;
            fusions.into_iter().next().map(|t| (rep.clone(), t))
        })
        .ok_or_else(|| inconsistent("no NIM-rep admits compatible module fusion rules"))?;
    let w = rep.free_images();
    let r = ring.rank();
    let m = rep.rank();

    // Vacuum condition and multiplicativity: F(b_i) F(b_j) = Σ_k N_ij^k F(b_k).
    if (0..r).any(|j| w[j][0] != a.n[j]) {
        return Err(inconsistent("condensed objects must restrict to the vacuum with their multiplicity"));
    }
    for i in 0..r {
        for j in 0..r {
            for z in 0..m {
                let lhs: u32 = (0..m).flat_map(|x| (0..m).map(move |y| (x, y))).map(|(x, y)| w[i][x] * w[j][y] * t[x][y][z]).sum();
                let rhs: u32 = (0..r).map(|k| ring.n(i, j, k) * w[k][z]).sum();
                if lhs != rhs {
                    return Err(inconsistent("restriction does not commute with fusion"));
                }
            }
        }
    }
    let module_fpdims = module_dims(&fp.per_object, &w, &a.fpdim)?;
    let d_a: Cyclo = (0..r).map(|j| md.d[j].scale_int(a.n[j] as i64)).sum();
    let module_qdims = module_dims(&md.d, &w, &d_a)?;
    for j in 0..r {
        let sum: Cyclo = (0..m).map(|b| module_qdims[b].scale_int(w[j][b] as i64)).sum();
        if sum != md.d[j] {
            return Err(inconsistent("quantum dimension is not preserved"));
        }
    }

    let sector_h: Vec<Option<BigRational>> = (0..m)
        .map(|b| {
            let mut lifts = (0..r).filter(|&j| w[j][b] > 0).map(|j| &md.h[j]);
            let first = lifts.next()?.clone();
            lifts.all(|h| *h == first).then_some(first)
        })
        .collect();
    let unconfined: Vec<usize> = (0..m).filter(|&b| sector_h[b].is_some()).collect();
    if !unconfined.contains(&0) {
        return Err(inconsistent("the vacuum sector is confined"));
    }
    for &x in &unconfined {
        for &y in &unconfined {
            if (0..m).any(|z| t[x][y][z] > 0 && !unconfined.contains(&z)) {
                return Err(inconsistent("unconfined sectors are not closed under fusion"));
            }
        }
    }
    let fpdim_ba: Cyclo = module_fpdims.iter().map(|d| d * d).sum::<Cyclo>().reduced();
    let fpdim_ba0: Cyclo = unconfined.iter().map(|&b| &module_fpdims[b] * &module_fpdims[b]).sum::<Cyclo>().reduced();
    if fpdim_ba != fp.total.div(&a.fpdim)?.reduced() || fpdim_ba0 != fp.total.div(&(&a.fpdim * &a.fpdim))?.reduced() {
        return Err(inconsistent("FPdim identities fail"));
    }

    let mut classes: BTreeMap<Vec<u32>, Vec<usize>> = BTreeMap::new();
    for j in 0..r {
        classes.entry(w[j].clone()).or_default().push(j);
    }
    let identified: Vec<Vec<usize>> = classes.into_values().filter(|c| c.len() > 1).collect();
    let split: Vec<usize> = (0..r).filter(|&j| w[j].iter().sum::<u32>() > 1).collect();

    let t0: Tensor = unconfined
        .iter()
        .map(|&x| unconfined.iter().map(|&y| unconfined.iter().map(|&z| t[x][y][z]).collect()).collect())
        .collect();
    let h0: Vec<BigRational> = unconfined.iter().map(|&b| sector_h[b].clone().expect("unconfined")).collect();
    let ba = if a.is_trivial() {
        Some(catalogue::bundled_match(ring).map_or_else(|| ring.name().to_string(), |s| catalogue::ring(s).map(|b| b.name().to_string()).unwrap_or_default()))
    } else {
        recognize_category(&t, None)
    };
    let ba0 = if a.is_trivial() { ba.clone() } else { recognize_category(&t0, Some(&h0)) };
    Ok(CondensationResult {
        algebra: a.clone(),
        nimrep: rep,
        branching: w,
        module_fusion: t,
        module_dims: module_qdims,
        module_fpdims,
        identified,
        split,
        unconfined,
        sector_h,
        fpdim_ba,
        fpdim_ba0,
        ba,
        ba0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::etale_classifier::parse_algebra;
    use crate::modular_data::build;

    fn so5(md_index: usize) -> (FusionRing, ModularData) {
        let ring = catalogue::ring("so5_2").unwrap();
        let reference = catalogue::reference("so5_2").unwrap();
        let d = reference.characters_exact().unwrap().remove(md_index);
        let h = reference.conformal_for(md_index).unwrap().remove(0);
        let md = build(&ring, &d, &h).unwrap();
        (ring, md)
    }

    #[test]
    fn so5_condensation() {
        let (ring, md) = so5(1);
        let a = parse_algebra(&ring, "1+X").unwrap();
        let res = condense(&ring, &md, &a).unwrap();
        assert_eq!(res.module_rank(), 6);
        assert_eq!(res.unconfined.len(), 5);
        assert_eq!(res.fpdim_ba0, Cyclo::from_int(5));
        assert_eq!(res.ba.as_deref(), Some("TY(Z/5Z)"));
        assert_eq!(res.ba0.as_deref(), Some("Vec^1_{Z/5Z}"));
        let labels = |c: &[usize]| c.iter().map(|&j| ring.label(j)).collect::<Vec<_>>();
        assert!(res.identified.iter().any(|c| labels(c) == ["V", "W"]));
        assert_eq!(labels(&res.split), ["Y", "Z"]);
    }

    #[test]
    fn trivial_condensation_is_identity() {
        let (ring, md) = so5(1);
        let a = parse_algebra(&ring, "1").unwrap();
        let res = condense(&ring, &md, &a).unwrap();
        assert_eq!(res.module_rank(), 6);
        assert_eq!(res.unconfined.len(), 6);
        assert_eq!(res.ba, res.ba0);
    }

    #[test]
    fn ruled_out_algebra_is_rejected() {
        let (ring, md) = so5(1);
        let a = parse_algebra(&ring, "1+Y").unwrap();
        assert!(condense(&ring, &md, &a).is_err());
    }
}
