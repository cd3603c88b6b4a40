//! Search for conformal dimensions compatible with a fixed character.
//!
//! Every column of `S` divided by its first entry is a character, so `S`
//! is fixed by an assignment of characters to objects. For each symmetric
//! assignment the balancing relation
//! `θ_i θ_j S_ij = Σ_k N_{i*j}^k θ_k d_k` is solved for twists in `μ_L` by
//! backtracking over dual classes, checking each equation in floating point
//! as soon as its objects are assigned. Survivors are verified exactly.

use std::collections::BTreeSet;

use num_complex::Complex64;
use num_rational::BigRational;

use super::build;
use crate::error::Result;
use crate::exactnum::Cyclo;
use crate::fusion_ring::{all_characters, automorphisms, FusionRing};

const TOL: f64 = 1e-7;

/// All `h` vectors (entries in `[0,1)` with denominators dividing `denom_bound`)
/// giving modular data with quantum dimensions `d`, sorted.
pub fn enumerate_conformal(ring: &FusionRing, d: &[Cyclo], denom_bound: u32) -> Result<Vec<Vec<BigRational>>> {
    let chars = all_characters(ring)?;
    let mut found = BTreeSet::new();
    for s in s_candidates(ring, d, &chars) {
        for a in solve_twists(ring, d, &s, denom_bound) {
            let h: Vec<BigRational> = a.iter().map(|&k| BigRational::new(k.into(), denom_bound.into())).collect();
            if build(ring, d, &h).is_ok() {
                found.insert(h);
            }
        }
    }
    Ok(found.into_iter().collect())
}

/// Symmetric matrices `S_im = d_m χ_{σ(m)}(i)` over bijections `σ` with `σ(0) = d`.
fn s_candidates(ring: &FusionRing, d: &[Cyclo], chars: &[Vec<Cyclo>]) -> Vec<Vec<Vec<Complex64>>> {
    let r = ring.rank();
    let Some(first) = chars.iter().position(|c| c.as_slice() == d) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    let mut sigma = vec![usize::MAX; r];
    let mut used = vec![false; chars.len()];
    sigma[0] = first;
    used[first] = true;
    fn go(
        m: usize,
        d: &[Cyclo],
        chars: &[Vec<Cyclo>],
        sigma: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let r = d.len();
        if m == r {
            out.push(sigma.clone());
            return;
        }
        for c in 0..chars.len() {
            if used[c] {
                continue;
            }
            // S_im = S_mi for every assigned i.
            if (0..m).all(|i| &d[m] * &chars[c][i] == &d[i] * &chars[sigma[i]][m]) {
                sigma[m] = c;
                used[c] = true;
                go(m + 1, d, chars, sigma, used, out);
                used[c] = false;
            }
        }
        sigma[m] = usize::MAX;
    }
    let mut sigmas = Vec::new();
    go(1, d, chars, &mut sigma, &mut used, &mut sigmas);
    for sigma in sigmas {
        let s = (0..r)
            .map(|i| (0..r).map(|m| (&d[m] * &chars[sigma[m]][i]).to_c64()).collect())
            .collect();
        out.push(s);
    }
    out
}

struct Equation {
    i: usize,
    j: usize,
    terms: Vec<usize>,
}

/// Twist exponents `a_i` (with `θ_i = e^{2πi a_i/L}`) solving the balancing relation numerically.
fn solve_twists(ring: &FusionRing, d: &[Cyclo], s: &[Vec<Complex64>], l: u32) -> Vec<Vec<u32>> {
    let r = ring.rank();
    let dn: Vec<f64> = d.iter().map(|x| x.to_f64()).collect();
    // Dual classes share a twist.
    let class: Vec<usize> = (0..r).map(|i| i.min(ring.dual(i))).collect();
    let vars: Vec<usize> = (1..r).filter(|&i| class[i] == i).collect();
    let eqs: Vec<Equation> = (1..r)
        .flat_map(|i| (i..r).map(move |j| (i, j)))
        .map(|(i, j)| Equation { i, j, terms: ring.product(ring.dual(i), j) })
        .collect();
    let support = |e: &Equation| -> BTreeSet<usize> {
        let mut set: BTreeSet<usize> = [class[e.i], class[e.j]].into_iter().collect();
        set.extend(e.terms.iter().map(|&k| class[k]));
        set.remove(&0);
        set
    };
    // Greedy order: each step adds the variable completing the most equations.
    let mut order = Vec::new();
    let mut assigned: BTreeSet<usize> = BTreeSet::new();
    let mut checks: Vec<Vec<usize>> = Vec::new();
    let mut done = vec![false; eqs.len()];
    while order.len() < vars.len() {
        let mut best: Option<(usize, Vec<usize>)> = None;
        for &v in vars.iter().filter(|v| !assigned.contains(v)) {
            let mut trial = assigned.clone();
            trial.insert(v);
            let completed: Vec<usize> =
                (0..eqs.len()).filter(|&e| !done[e] && support(&eqs[e]).is_subset(&trial)).collect();
            if best.as_ref().is_none_or(|(_, c)| completed.len() > c.len()) {
                best = Some((v, completed));
            }
        }
        let (v, completed) = best.expect("unassigned variable exists");
        for &e in &completed {
            done[e] = true;
        }
        assigned.insert(v);
        order.push(v);
        checks.push(completed);
    }

    let roots: Vec<Complex64> =
        (0..l).map(|a| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * a as f64 / l as f64)).collect();
    let mut a = vec![0u32; r];
    let mut out = Vec::new();
    let holds = |a: &[u32], e: &Equation| -> bool {
        let th = |k: usize| roots[a[class[k]] as usize];
        let lhs = th(e.i) * th(e.j) * s[e.i][e.j];
        let rhs: Complex64 = e.terms.iter().map(|&k| th(k) * dn[k]).sum();
        (lhs - rhs).norm() < TOL * (1.0 + rhs.norm())
    };
    fn go(
        step: usize,
        order: &[usize],
        checks: &[Vec<usize>],
        eqs: &[Equation],
        l: u32,
        a: &mut Vec<u32>,
        holds: &dyn Fn(&[u32], &Equation) -> bool,
        out: &mut Vec<Vec<u32>>,
        class: &[usize],
    ) {
        if step == order.len() {
            out.push((0..a.len()).map(|i| a[class[i]]).collect());
            return;
        }
        let v = order[step];
        for val in 0..l {
            a[v] = val;
            if checks[step].iter().all(|&e| holds(a, &eqs[e])) {
                go(step + 1, order, checks, eqs, l, a, holds, out, class);
            }
        }
        a[v] = 0;
    }
    go(0, &order, &checks, &eqs, l, &mut a, &holds, &mut out, &class);
    out
}

/// Automorphisms fixing `d`.
pub fn d_stabilizer(ring: &FusionRing, d: &[Cyclo]) -> Result<Vec<Vec<usize>>> {
    Ok(automorphisms(ring)?
        .into_iter()
        .filter(|p| (0..ring.rank()).all(|i| d[p.perm[i]] == d[i]))
        .map(|p| p.perm)
        .collect())
}

/// One representative per orbit under the stabilizer of `d`: the
/// lexicographically smallest relabeling. Sorted.
pub fn canonical_orbits(
    ring: &FusionRing,
    d: &[Cyclo],
    hs: &[Vec<BigRational>],
) -> Result<Vec<Vec<BigRational>>> {
    let group = d_stabilizer(ring, d)?;
    let set: BTreeSet<Vec<BigRational>> = hs.iter().map(|h| canonical(&group, h)).collect();
    Ok(set.into_iter().collect())
}

pub(crate) fn canonical(group: &[Vec<usize>], h: &[BigRational]) -> Vec<BigRational> {
    group
        .iter()
        .map(|p| p.iter().map(|&k| h[k].clone()).collect::<Vec<_>>())
        .min()
        .unwrap_or_else(|| h.to_vec())
}

/// Reference enumeration: every twist vector in `μ_L^r` whose balanced `S`
/// is numerically unitary up to `D²`, then verified exactly.
pub fn brute_force_conformal(ring: &FusionRing, d: &[Cyclo], l: u32) -> Result<Vec<Vec<BigRational>>> {
    let r = ring.rank();
    let dn: Vec<f64> = d.iter().map(|x| x.to_f64()).collect();
    let dim_sq: f64 = dn.iter().map(|x| x * x).sum();
    let roots: Vec<Complex64> =
        (0..l).map(|a| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * a as f64 / l as f64)).collect();
    let products: Vec<Vec<Vec<usize>>> =
        (0..r).map(|i| (0..r).map(|j| ring.product(ring.dual(i), j)).collect()).collect();
    let mut out = BTreeSet::new();
    let total = (l as u64).pow(r as u32 - 1);
    let mut a = vec![0u32; r];
    let mut s = vec![vec![Complex64::new(0.0, 0.0); r]; r];
    for idx in 0..total {
        let mut x = idx;
        for slot in a.iter_mut().skip(1) {
            *slot = (x % l as u64) as u32;
            x /= l as u64;
        }
        let th = |k: usize| roots[a[k] as usize];
        for i in 0..r {
            for j in 0..r {
                let sum: Complex64 = products[i][j].iter().map(|&k| th(k) * dn[k]).sum();
                s[i][j] = sum / (th(i) * th(j));
            }
        }
        let unitary = (0..r).all(|i| {
            (0..r).all(|j| {
                let v: Complex64 = (0..r).map(|k| s[i][k] * s[j][k].conj()).sum();
                let want = if i == j { dim_sq } else { 0.0 };
                (v - want).norm() < 1e-6 * dim_sq
            })
        });
        if unitary {
            let h: Vec<BigRational> = a.iter().map(|&k| BigRational::new(k.into(), l.into())).collect();
            if build(ring, d, &h).is_ok() {
                out.insert(h);
            }
        }
    }
    Ok(out.into_iter().collect())
}
