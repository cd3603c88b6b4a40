//! NIM-reps compatible with the free-module functor of an algebra.
//!
//! Module `m_0` is the free module `A` itself, and `W[j][b] = (n_j)_{0,b}`
//! records how `F(b_j) = b_j ⊗ A` decomposes. Adjunction fixes the Gram
//! matrix `W Wᵀ = M` with `M_{ij} = Σ_k A_k N_{jk}^i`, so `W` is enumerated
//! first. Each `n_i` must then satisfy `W n_i = N_i W`; its columns are
//! solved separately and combined under the ring relations.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::etale_classifier::AlgebraCandidate;
use crate::exactnum::{cmp_real, Cyclo};
use crate::fusion_ring::{fpdim, FusionRing};

/// Default node budget for the backtracking searches.
pub const DEFAULT_BUDGET: u64 = 5_000_000;

pub type Matrix = Vec<Vec<u32>>;

/// `n[i][a][b]`: multiplicity of `m_b` in `b_i ▷ m_a`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NimRep {
    pub n: Vec<Matrix>,
}

impl NimRep {
    /// The ring acting on itself.
    pub fn regular(ring: &FusionRing) -> Self {
        NimRep { n: (0..ring.rank()).map(|i| ring.fusion_matrix(i)).collect() }
    }

    pub fn rank(&self) -> usize {
        self.n[0].len()
    }

    /// Decomposition of `F(b_j)`: row `j` is `(n_j)_{0,·}`.
    pub fn free_images(&self) -> Matrix {
        self.n.iter().map(|m| m[0].clone()).collect()
    }

    /// Checks unit, duality, the ring relations and indecomposability.
    pub fn is_valid_for(&self, ring: &FusionRing) -> bool {
        let r = ring.rank();
        let m = self.rank();
        if self.n.len() != r || self.n.iter().any(|x| x.len() != m || x.iter().any(|row| row.len() != m)) {
            return false;
        }
        let identity = (0..m).all(|a| (0..m).all(|b| self.n[0][a][b] == u32::from(a == b)));
        let duals = (0..r).all(|i| self.n[ring.dual(i)] == transpose(&self.n[i]));
        let relations = (0..r).all(|i| (0..r).all(|j| relation_holds(ring, &self.n, i, j)));
        identity && duals && relations && self.is_indecomposable()
    }

    /// Every module is reachable from `m_0`.
    pub fn is_indecomposable(&self) -> bool {
        let m = self.rank();
        let mut seen = vec![false; m];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(a) = stack.pop() {
            for x in &self.n {
                for b in 0..m {
                    if x[a][b] > 0 && !seen[b] {
                        seen[b] = true;
                        stack.push(b);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Relabels modules: `m_a` becomes `m_{perm[a]}`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let m = self.rank();
        let n = self
            .n
            .iter()
            .map(|x| {
                let mut y = vec![vec![0; m]; m];
                for a in 0..m {
                    for b in 0..m {
                        y[perm[a]][perm[b]] = x[a][b];
                    }
                }
                y
            })
            .collect();
        NimRep { n }
    }

    /// The lexicographically least relabeling fixing the free module `m_0`.
    pub fn canonical(&self) -> Self {
        let m = self.rank();
        let mut best = self.clone();
        for tail in permutations(m - 1) {
            let perm: Vec<usize> = std::iter::once(0).chain(tail.iter().map(|&x| x + 1)).collect();
            let candidate = self.permuted(&perm);
            if candidate < best {
                best = candidate;
            }
        }
        best
    }
}

fn transpose(x: &Matrix) -> Matrix {
    let m = x.len();
    (0..m).map(|a| (0..m).map(|b| x[b][a]).collect()).collect()
}

fn mat_mul(x: &Matrix, y: &Matrix) -> Matrix {
    let m = x.len();
    let k = y[0].len();
    (0..m).map(|a| (0..k).map(|b| (0..y.len()).map(|c| x[a][c] * y[c][b]).sum()).collect()).collect()
}

fn relation_holds(ring: &FusionRing, n: &[Matrix], i: usize, j: usize) -> bool {
    let m = n[0].len();
    let lhs = mat_mul(&n[i], &n[j]);
    (0..m).all(|a| {
        (0..m).all(|b| lhs[a][b] == ring.product(i, j).iter().map(|&k| ring.n(i, j, k) * n[k][a][b]).sum::<u32>())
    })
}

pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
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

struct Budget {
    limit: u64,
    used: u64,
}

impl Budget {
    fn tick(&mut self) -> bool {
        self.used += 1;
        self.used <= self.limit
    }
}

/// `M_{ij} = Σ_k A_k N_{jk}^i = dim Hom(b_i, b_j ⊗ A)`.
pub fn gram_matrix(ring: &FusionRing, a: &AlgebraCandidate) -> Matrix {
    let r = ring.rank();
    (0..r).map(|i| (0..r).map(|j| (0..r).map(|k| a.n[k] * ring.n(j, k, i)).sum()).collect()).collect()
}

/// Module ranks worth trying: every module appears in some `F(b_j)`.
pub fn max_module_rank(ring: &FusionRing, a: &AlgebraCandidate) -> usize {
    let m = gram_matrix(ring, a);
    (0..ring.rank()).map(|j| m[j][j] as usize).sum()
}

/// All NIM-reps of the given rank (or of every feasible rank), canonicalized and sorted.
pub fn find_nimreps(
    ring: &FusionRing,
    a: &AlgebraCandidate,
    rank: Option<usize>,
    budget: u64,
) -> Result<Vec<NimRep>> {
    let ranks: Vec<usize> = match rank {
        Some(k) => vec![k],
        None => (1..=max_module_rank(ring, a)).collect(),
    };
    let bounds = entry_bounds(ring)?;
    let mut budget = Budget { limit: budget, used: 0 };
    let mut out = Vec::new();
    for m in ranks {
        if m == 0 {
            return Err(Error::Invalid("module rank must be positive".into()));
        }
        let images = free_image_matrices(ring, a, m, &mut budget);
        for w in images {
            search_actions(ring, &w, &bounds, &mut budget, &mut out);
        }
        if budget.used > budget.limit {
            out.sort();
            out.dedup();
            return Err(Error::SearchBudgetExceeded { budget: budget.limit, found: out.len() });
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// `⌊FPdim(b_i)⌋`, which bounds every entry of `n_i`.
fn entry_bounds(ring: &FusionRing) -> Result<Vec<u32>> {
    fpdim(ring)?
        .per_object
        .iter()
        .map(|d| {
            let mut k = d.to_f64().round().max(0.0) as i64;
            while cmp_real(&Cyclo::from_int(k), d)? == Ordering::Greater {
                k -= 1;
            }
            Ok(k as u32)
        })
        .collect()
}

/// Matrices `W` (r × m) with `W Wᵀ = M`, first row `e_0`, no zero column,
/// columns after the first in non-increasing lexicographic order.
fn free_image_matrices(ring: &FusionRing, a: &AlgebraCandidate, m: usize, budget: &mut Budget) -> Vec<Matrix> {
    let r = ring.rank();
    let gram = gram_matrix(ring, a);
    if gram[0][0] != 1 {
        return Vec::new();
    }
    let mut w: Matrix = vec![vec![0; m]; r];
    w[0][0] = 1;
    let mut out = Vec::new();
    fill_row(1, &gram, &mut w, budget, &mut out);
    out.retain(|w| (0..m).all(|b| w.iter().any(|row| row[b] > 0)));
    out
}

fn fill_row(j: usize, gram: &Matrix, w: &mut Matrix, budget: &mut Budget, out: &mut Vec<Matrix>) {
    if j == w.len() {
        out.push(w.clone());
        return;
    }
    let m = w[0].len();
    let mut row = vec![0u32; m];
    let mut dots = vec![0u32; j];
    fill_cell(j, 0, gram[j][j], gram, w, &mut row, &mut dots, budget, out);
}

#[allow(clippy::too_many_arguments)]
fn fill_cell(
    j: usize,
    b: usize,
    norm_left: u32,
    gram: &Matrix,
    w: &mut Matrix,
    row: &mut Vec<u32>,
    dots: &mut Vec<u32>,
    budget: &mut Budget,
    out: &mut Vec<Matrix>,
) {
    if !budget.tick() {
        return;
    }
    let m = row.len();
    if b == m {
        if norm_left == 0 && (0..j).all(|k| dots[k] == gram[j][k]) {
            w[j] = row.clone();
            fill_row(j + 1, gram, w, budget, out);
            w[j] = vec![0; m];
        }
        return;
    }
    // Columns tied on all earlier rows must stay in non-increasing order.
    let cap = if b >= 2 && (0..j).all(|k| w[k][b - 1] == w[k][b]) { row[b - 1] } else { u32::MAX };
    let mut x = 0u32;
    while x * x <= norm_left && x <= cap {
        let ok = (0..j).all(|k| dots[k] + x * w[k][b] <= gram[j][k]);
        if !ok {
            break;
        }
        row[b] = x;
        for k in 0..j {
            dots[k] += x * w[k][b];
        }
        fill_cell(j, b + 1, norm_left - x * x, gram, w, row, dots, budget, out);
        for k in 0..j {
            dots[k] -= x * w[k][b];
        }
        x += 1;
    }
    row[b] = 0;
}

/// Nonnegative integer `x` with `W x = y` and entries at most `bound`.
fn column_solutions(w: &Matrix, y: &[u32], bound: u32) -> Vec<Vec<u32>> {
    let m = w[0].len();
    let mut out = Vec::new();
    let mut x = vec![0u32; m];
    let mut acc = vec![0u32; w.len()];
    fn go(b: usize, w: &Matrix, y: &[u32], bound: u32, x: &mut Vec<u32>, acc: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if b == x.len() {
            if acc.as_slice() == y {
                out.push(x.clone());
            }
            return;
        }
        for v in 0..=bound {
            if (0..w.len()).any(|j| acc[j] + v * w[j][b] > y[j]) {
                break;
            }
            x[b] = v;
            for j in 0..w.len() {
                acc[j] += v * w[j][b];
            }
            go(b + 1, w, y, bound, x, acc, out);
            for j in 0..w.len() {
                acc[j] -= v * w[j][b];
            }
        }
        x[b] = 0;
    }
    go(0, w, y, bound, &mut x, &mut acc, &mut out);
    out
}

fn search_actions(ring: &FusionRing, w: &Matrix, bounds: &[u32], budget: &mut Budget, out: &mut Vec<NimRep>) {
    let r = ring.rank();
    let m = w[0].len();
    // Candidate columns for every object.
    let mut columns: Vec<Vec<Vec<Vec<u32>>>> = Vec::with_capacity(r);
    for i in 0..r {
        let nw = mat_mul(&ring.fusion_matrix(i), w);
        let cols: Vec<Vec<Vec<u32>>> = (0..m)
            .map(|c| {
                let y: Vec<u32> = (0..r).map(|j| nw[j][c]).collect();
                column_solutions(w, &y, bounds[i])
            })
            .collect();
        if cols.iter().any(|c| c.is_empty()) {
            return;
        }
        columns.push(cols);
    }
    // Objects in decreasing bound order, one representative per dual pair.
    let mut order: Vec<usize> = (1..r).filter(|&i| ring.dual(i) >= i).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(bounds[i]));
    let mut n: Vec<Option<Matrix>> = vec![None; r];
    n[0] = Some((0..m).map(|a| (0..m).map(|b| u32::from(a == b)).collect()).collect());
    assign(0, ring, &order, &columns, &mut n, budget, out);
}

fn assign(
    step: usize,
    ring: &FusionRing,
    order: &[usize],
    columns: &[Vec<Vec<Vec<u32>>>],
    n: &mut Vec<Option<Matrix>>,
    budget: &mut Budget,
    out: &mut Vec<NimRep>,
) {
    if step == order.len() {
        let rep = NimRep { n: n.iter().map(|x| x.clone().expect("assigned")).collect() };
        if rep.is_indecomposable() {
            let c = rep.canonical();
            if !out.contains(&c) {
                out.push(c);
            }
        }
        return;
    }
    let i = order[step];
    let d = ring.dual(i);
    let m = columns[0].len();
    let mut cols: Vec<Vec<u32>> = Vec::with_capacity(m);
    let mut candidates = Vec::new();
    build_matrix(i, d, &columns[i], &columns[d], &mut cols, budget, &mut candidates);
    for x in candidates {
        n[i] = Some(x.clone());
        n[d] = Some(transpose(&x));
        let ok = (0..ring.rank()).all(|a| {
            (0..ring.rank()).all(|b| {
                let involved = std::iter::once(a).chain(std::iter::once(b)).chain(ring.product(a, b));
                let ready = involved.clone().all(|k| n[k].is_some());
                !(ready && involved.clone().any(|k| k == i || k == d)) || {
                    let full: Vec<Matrix> = n.iter().map(|x| x.clone().unwrap_or_default()).collect();
                    relation_holds(ring, &full, a, b)
                }
            })
        });
        if ok {
            assign(step + 1, ring, order, columns, n, budget, out);
        }
        if budget.used > budget.limit {
            break;
        }
    }
    n[i] = None;
    n[d] = None;
}

/// Combines per-column solutions of `n_i`; rows must be admissible columns of `n_{i*}`.
fn build_matrix(
    i: usize,
    d: usize,
    own: &[Vec<Vec<u32>>],
    dual: &[Vec<Vec<u32>>],
    cols: &mut Vec<Vec<u32>>,
    budget: &mut Budget,
    out: &mut Vec<Matrix>,
) {
    if !budget.tick() {
        return;
    }
    let m = own.len();
    let c = cols.len();
    if c == m {
        let x: Matrix = (0..m).map(|a| (0..m).map(|b| cols[b][a]).collect()).collect();
        // Row a of n_i is column a of n_{i*}.
        if (0..m).all(|a| dual[a].contains(&x[a])) {
            out.push(x);
        }
        return;
    }
    for col in &own[c] {
        // Self-dual objects act by symmetric matrices.
        if i == d && (0..c).any(|b| cols[b][c] != col[b]) {
            continue;
        }
        cols.push(col.clone());
        build_matrix(i, d, own, dual, cols, budget, out);
        cols.pop();
    }
}
