//! Ring characters as exact cyclotomic vectors.
//!
//! A generic combination `T = Σ c_i N_i` has simple spectrum, so every fusion
//! matrix is a polynomial in `T` and each character is that polynomial
//! evaluated at one eigenvalue of `T`. The characteristic polynomial of `T`
//! is factored over `Q`, and each factor's roots are located in a cyclotomic
//! field: for a candidate conductor `M` and subgroup `H ≤ (Z/M)^*` fixing a
//! root, the Galois conjugates determine its power-basis coordinates, which
//! are recovered numerically, rounded, and then certified exactly.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex};

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use std::sync::LazyLock;

use super::FusionRing;
use crate::error::{Error, Result};
use crate::exactnum::linalg::solve_rational;
use crate::exactnum::poly::QPoly;
use crate::exactnum::{cmp_real, euler_phi, prime_factors, sqrt_int, Cyclo};

/// Largest `φ(M)` tried when locating roots.
const MAX_PHI: u32 = 96;

static CACHE: LazyLock<Mutex<HashMap<Vec<Vec<Vec<u32>>>, Arc<Vec<Vec<Cyclo>>>>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

/// Every ring homomorphism to `C`, as value vectors indexed by object.
/// Sorted by decreasing real parts, object by object.
pub fn all_characters(ring: &FusionRing) -> Result<Vec<Vec<Cyclo>>> {
    if let Some(hit) = CACHE.lock().unwrap().get(ring.tensor()) {
        return Ok(hit.as_ref().clone());
    }
    let chars = compute(ring)?;
    CACHE.lock().unwrap().insert(ring.tensor().clone(), Arc::new(chars.clone()));
    Ok(chars)
}

/// Characters with every value real and nonzero.
pub fn solve_characters(ring: &FusionRing) -> Result<Vec<Vec<Cyclo>>> {
    Ok(all_characters(ring)?
        .into_iter()
        .filter(|c| c.iter().all(|v| v.is_real() && !v.is_zero()))
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpDims {
    pub per_object: Vec<Cyclo>,
    pub total: Cyclo,
}

/// Frobenius–Perron dimensions: per object the largest real eigenvalue of `N_i`.
pub fn fpdim(ring: &FusionRing) -> Result<FpDims> {
    let chars = all_characters(ring)?;
    let mut per_object = Vec::with_capacity(ring.rank());
    for i in 0..ring.rank() {
        let mut best: Option<Cyclo> = None;
        for c in &chars {
            if !c[i].is_real() {
                continue;
            }
            best = match best {
                Some(b) if cmp_real(&c[i], &b)? != Ordering::Greater => Some(b),
                _ => Some(c[i].clone()),
            };
        }
        per_object.push(best.ok_or_else(|| Error::Representation(format!("no real eigenvalue for {}", ring.label(i))))?);
    }
    let total = per_object.iter().map(|d| d * d).sum::<Cyclo>().reduced();
    Ok(FpDims { per_object, total })
}

type IntMatrix = Vec<Vec<BigInt>>;

fn int_matrix(m: &[Vec<u32>]) -> IntMatrix {
    m.iter().map(|row| row.iter().map(|&v| BigInt::from(v)).collect()).collect()
}

fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| &a[i][k] * &b[k][j]).sum()).collect())
        .collect()
}

fn identity(n: usize) -> IntMatrix {
    (0..n).map(|i| (0..n).map(|j| BigInt::from(u8::from(i == j))).collect()).collect()
}

/// Characteristic polynomial `det(xI - A)` by Faddeev–LeVerrier.
pub(crate) fn charpoly(a: &IntMatrix) -> QPoly {
    let n = a.len();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::from(1);
    let mut m = vec![vec![BigInt::zero(); n]; n];
    for k in 1..=n {
        let mut next = mat_mul(a, &m);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &coeffs[n - k + 1];
        }
        let am = mat_mul(a, &next);
        let trace: BigInt = (0..n).map(|i| am[i][i].clone()).sum();
        coeffs[n - k] = -trace / BigInt::from(k);
        m = next;
    }
    QPoly::new(coeffs.into_iter().map(BigRational::from_integer).collect())
}

fn numeric_eigenvalues(a: &IntMatrix) -> Vec<Complex64> {
    let n = a.len();
    let m = DMatrix::from_fn(n, n, |i, j| a[i][j].to_f64().unwrap());
    m.complex_eigenvalues().iter().copied().collect()
}

fn min_gap(roots: &[Complex64]) -> f64 {
    let mut gap = f64::INFINITY;
    for i in 0..roots.len() {
        for j in (i + 1)..roots.len() {
            gap = gap.min((roots[i] - roots[j]).norm());
        }
    }
    gap
}

fn compute(ring: &FusionRing) -> Result<Vec<Vec<Cyclo>>> {
    let r = ring.rank();
    let mats: Vec<IntMatrix> = (0..r).map(|i| int_matrix(&ring.fusion_matrix(i))).collect();
    // Deterministic search for a combination with well-separated eigenvalues.
    let mut seed: u64 = 0x9e37_79b9;
    let (t, roots) = loop {
        let coeffs: Vec<i64> = (0..r)
            .map(|_| {
                seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                ((seed >> 33) % 13) as i64 + 1
            })
            .collect();
        let mut t = vec![vec![BigInt::zero(); r]; r];
        for (c, m) in coeffs.iter().zip(&mats) {
            for i in 0..r {
                for j in 0..r {
                    t[i][j] += &m[i][j] * c;
                }
            }
        }
        let roots = numeric_eigenvalues(&t);
        if min_gap(&roots) > 1e-3 {
            break (t, roots);
        }
    };
    let cp = charpoly(&t);
    let factors = factor_over_q(&cp, &roots)?;

    // N_i = P_i(T)
    let mut powers = vec![identity(r)];
    for k in 1..r {
        powers.push(mat_mul(&powers[k - 1], &t));
    }
    let polys: Vec<QPoly> = mats
        .iter()
        .map(|target| {
            let mut system: Vec<Vec<BigRational>> = Vec::with_capacity(r * r);
            for i in 0..r {
                for j in 0..r {
                    let mut row: Vec<BigRational> =
                        powers.iter().map(|p| BigRational::from_integer(p[i][j].clone())).collect();
                    row.push(BigRational::from_integer(target[i][j].clone()));
                    system.push(row);
                }
            }
            solve_rational(&mut system, r)
                .map(QPoly::new)
                .ok_or_else(|| Error::Representation("fusion matrix is not a polynomial in T".into()))
        })
        .collect::<Result<_>>()?;

    let mut chars = Vec::with_capacity(r);
    for (q, numeric) in &factors {
        for root in exact_roots(q, numeric)? {
            let values: Vec<Cyclo> = polys.iter().map(|p| eval_poly(p, &root).reduced()).collect();
            chars.push(values);
        }
    }
    for c in &chars {
        for i in 0..r {
            for j in 0..r {
                let lhs = &c[i] * &c[j];
                let rhs: Cyclo = (0..r)
                    .filter(|&k| ring.n(i, j, k) > 0)
                    .map(|k| c[k].scale_int(ring.n(i, j, k) as i64))
                    .sum();
                if lhs != rhs {
                    return Err(Error::Representation("character check failed".into()));
                }
            }
        }
    }
    chars.sort_by(|a, b| compare_numeric(a, b));
    Ok(chars)
}

fn compare_numeric(a: &[Cyclo], b: &[Cyclo]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        let (x, y) = (x.to_c64(), y.to_c64());
        for (u, v) in [(x.re, y.re), (x.im, y.im)] {
            if (u - v).abs() > 1e-9 {
                return v.partial_cmp(&u).unwrap();
            }
        }
    }
    Ordering::Equal
}

pub(crate) fn eval_poly(p: &QPoly, x: &Cyclo) -> Cyclo {
    let mut acc = Cyclo::zero();
    for c in p.coeffs().iter().rev() {
        acc = &(&acc * x) + &Cyclo::from_rational(c);
    }
    acc
}

fn numeric_product(roots: &[Complex64]) -> Vec<Complex64> {
    let mut coeffs = vec![Complex64::new(1.0, 0.0)];
    for &r in roots {
        let mut next = vec![Complex64::new(0.0, 0.0); coeffs.len() + 1];
        for (i, c) in coeffs.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= c * r;
        }
        coeffs = next;
    }
    coeffs
}

/// Splits a monic integer polynomial with simple roots into irreducible
/// factors over `Q`, each paired with its numeric roots.
pub(crate) fn factor_over_q(p: &QPoly, roots: &[Complex64]) -> Result<Vec<(QPoly, Vec<Complex64>)>> {
    let mut remaining: Vec<Complex64> = roots.to_vec();
    let mut rest = p.clone();
    let mut out = Vec::new();
    while !remaining.is_empty() {
        let first = remaining[0];
        let others: Vec<Complex64> = remaining[1..].to_vec();
        let mut found = None;
        'size: for size in 0..=others.len() {
            for subset in subsets(others.len(), size) {
                let mut chosen = vec![first];
                chosen.extend(subset.iter().map(|&i| others[i]));
                let coeffs = numeric_product(&chosen);
                let scale = coeffs.iter().map(|c| c.norm()).fold(1.0, f64::max);
                let tol = 1e-6 * scale.max(1.0);
                if coeffs.iter().any(|c| c.im.abs() > tol || (c.re - c.re.round()).abs() > tol) {
                    continue;
                }
                let q = QPoly::new(
                    coeffs
                        .iter()
                        .map(|c| BigRational::from_integer(BigInt::from(c.re.round() as i128)))
                        .collect(),
                );
                let (_, rem) = rest.div_rem(&q);
                if rem.is_zero() {
                    found = Some((q, chosen, subset));
                    break 'size;
                }
            }
        }
        let (q, chosen, subset) =
            found.ok_or_else(|| Error::Representation("could not factor characteristic polynomial".into()))?;
        rest = rest.div_rem(&q).0;
        let drop: BTreeSet<usize> = subset.iter().map(|&i| i + 1).chain([0]).collect();
        remaining = remaining
            .iter()
            .enumerate()
            .filter(|(i, _)| !drop.contains(i))
            .map(|(_, r)| *r)
            .collect();
        out.push((q, chosen));
    }
    Ok(out)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn close_enough(x: &Cyclo, z: Complex64) -> bool {
    (x.to_c64() - z).norm() < 1e-6 * z.norm().max(1.0)
}

/// Exact roots of an irreducible monic integer polynomial, in the order of `numeric`.
pub(crate) fn exact_roots(q: &QPoly, numeric: &[Complex64]) -> Result<Vec<Cyclo>> {
    let deg = q.degree().unwrap_or(0);
    let c = q.coeffs();
    if deg == 1 {
        return Ok(vec![Cyclo::from_rational(&-c[0].clone())]);
    }
    if deg == 2 {
        // x = (-b ± √(b² - 4c)) / 2
        let disc = &c[1] * &c[1] - &c[0] * BigRational::from_integer(4.into());
        let d = disc.to_integer().to_i64().ok_or_else(|| Error::Representation("discriminant too large".into()))?;
        let s = sqrt_int(d);
        let half = BigRational::new(1.into(), 2.into());
        let b = Cyclo::from_rational(&-c[1].clone());
        let plus = (&b + &s).scale(&half);
        let minus = (&b - &s).scale(&half);
        return Ok(numeric
            .iter()
            .map(|&z| if close_enough(&plus, z) { plus.clone() } else { minus.clone() })
            .collect());
    }
    let disc = q.discriminant().to_integer();
    let primes: Vec<u32> = (2..=MAX_PHI + 1)
        .filter(|&p| prime_factors(p) == vec![p] && (&disc % BigInt::from(p)).is_zero())
        .collect();
    let mut moduli: Vec<u32> = (3..=4 * MAX_PHI * MAX_PHI)
        .filter(|&m| m % 4 != 2)
        .filter(|&m| {
            let phi = euler_phi(m);
            phi <= MAX_PHI && (phi as usize).is_multiple_of(deg)
        })
        .filter(|&m| prime_factors(m).iter().all(|p| primes.contains(p)))
        .collect();
    moduli.sort_by_key(|&m| (euler_phi(m), m));
    for m in moduli {
        if let Some(roots) = roots_in_field(q, numeric, m) {
            return Ok(roots);
        }
    }
    Err(Error::Representation(format!("roots of a degree-{deg} factor are not in any small cyclotomic field")))
}

fn units(m: u32) -> Vec<u32> {
    (1..m).filter(|&a| a.gcd(&m) == 1).collect()
}

fn generated(gens: &[u32], m: u32) -> BTreeSet<u32> {
    let mut set: BTreeSet<u32> = [1].into();
    let mut frontier = vec![1u32];
    while let Some(x) = frontier.pop() {
        for &g in gens {
            let y = (x as u64 * g as u64 % m as u64) as u32;
            if set.insert(y) {
                frontier.push(y);
            }
        }
    }
    set
}

/// All subgroups of `(Z/m)^*` of the given order.
fn subgroups(m: u32, order: usize) -> Vec<BTreeSet<u32>> {
    let g = units(m);
    let mut all: BTreeSet<BTreeSet<u32>> = g.iter().map(|&x| generated(&[x], m)).collect();
    loop {
        let list: Vec<_> = all.iter().cloned().collect();
        let mut grew = false;
        for i in 0..list.len() {
            for j in (i + 1)..list.len() {
                let gens: Vec<u32> = list[i].iter().chain(list[j].iter()).copied().collect();
                let join = generated(&gens, m);
                if join.len() <= g.len() && all.insert(join) {
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    all.into_iter().filter(|h| h.len() == order).collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn roots_in_field(q: &QPoly, numeric: &[Complex64], m: u32) -> Option<Vec<Cyclo>> {
    let deg = numeric.len();
    let g = units(m);
    let phi = g.len();
    let order = phi / deg;
    let root0_real = numeric[0].im.abs() < 1e-9;
    let zeta = |e: u64| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * (e % m as u64) as f64 / m as f64);
    let v = DMatrix::from_fn(phi, phi, |row, col| zeta(g[row] as u64 * col as u64));
    let lu = v.lu();
    for h in subgroups(m, order) {
        if h.contains(&(m - 1)) != root0_real {
            continue;
        }
        let mut coset = vec![usize::MAX; phi];
        let mut reps = Vec::new();
        for (idx, &x) in g.iter().enumerate() {
            if coset[idx] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(x);
            for &y in &h {
                let z = (x as u64 * y as u64 % m as u64) as u32;
                let pos = g.binary_search(&z).unwrap();
                coset[pos] = id;
            }
        }
        for perm in permutations(deg - 1) {
            // coset 0 ↦ root 0, coset i ↦ root perm[i-1] + 1
            let assign = |c: usize| if c == 0 { 0 } else { perm[c - 1] + 1 };
            let rhs = nalgebra::DVector::from_fn(phi, |row, _| numeric[assign(coset[row])]);
            let Some(sol) = lu.solve(&rhs) else { continue };
            if sol.iter().any(|a| a.im.abs() > 1e-5 || (a.re - a.re.round()).abs() > 1e-5 || a.re.abs() > 1e12) {
                continue;
            }
            let mut lambda = Cyclo::zero();
            for (i, a) in sol.iter().enumerate() {
                let k = a.re.round() as i64;
                if k != 0 {
                    lambda = &lambda + &Cyclo::root_of_unity(i as i64, m).scale_int(k);
                }
            }
            if !eval_poly(q, &lambda).is_zero() || !close_enough(&lambda, numeric[0]) {
                continue;
            }
            let mut out = vec![Cyclo::zero(); deg];
            for (c, &rep) in reps.iter().enumerate() {
                out[assign(c)] = lambda.galois(rep as i64).reduced();
            }
            if out.iter().zip(numeric).all(|(x, &z)| close_enough(x, z)) {
                return Some(out);
            }
        }
    }
    None
}
