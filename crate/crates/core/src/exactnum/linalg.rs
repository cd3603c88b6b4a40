//! Small dense exact linear algebra over `Q` and over cyclotomic fields.

use num_rational::BigRational;
use num_traits::Zero;

use super::Cyclo;

/// Solves an augmented system `[A | b]` with `unknowns` columns in `A`.
/// Returns `None` when inconsistent or underdetermined.
pub fn solve_rational(mat: &mut [Vec<BigRational>], unknowns: usize) -> Option<Vec<BigRational>> {
    let rows = mat.len();
    let mut pivot_row = 0;
    let mut pivots = Vec::with_capacity(unknowns);
    for col in 0..unknowns {
        let p = (pivot_row..rows).find(|&r| !mat[r][col].is_zero())?;
        mat.swap(pivot_row, p);
        let inv = mat[pivot_row][col].recip();
        for c in col..=unknowns {
            let v = &mat[pivot_row][c] * &inv;
            mat[pivot_row][c] = v;
        }
        for r in 0..rows {
            if r == pivot_row || mat[r][col].is_zero() {
                continue;
            }
            let factor = mat[r][col].clone();
            for c in col..=unknowns {
                let v = &mat[pivot_row][c] * &factor;
                mat[r][c] -= v;
            }
        }
        pivots.push(pivot_row);
        pivot_row += 1;
    }
    if (pivot_row..rows).any(|r| !mat[r][unknowns].is_zero()) {
        return None;
    }
    Some(pivots.iter().map(|&r| mat[r][unknowns].clone()).collect())
}

pub type CycloMatrix = Vec<Vec<Cyclo>>;

pub fn mat_mul(a: &CycloMatrix, b: &CycloMatrix) -> CycloMatrix {
    let n = a.len();
    let m = b.first().map_or(0, |r| r.len());
    let inner = b.len();
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let mut acc = Cyclo::zero();
                    for k in 0..inner {
                        if a[i][k].is_zero() || b[k][j].is_zero() {
                            continue;
                        }
                        acc = &acc + &(&a[i][k] * &b[k][j]);
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// Determinant by Gaussian elimination over the field.
pub fn determinant(m: &CycloMatrix) -> Cyclo {
    let n = m.len();
    let mut a = m.clone();
    let mut det = Cyclo::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Cyclo::zero();
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        let pivot = a[col][col].clone();
        det = &det * &pivot;
        let inv = pivot.inv().expect("nonzero pivot");
        for r in (col + 1)..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] * &inv;
            for c in col..n {
                let v = &factor * &a[col][c];
                a[r][c] = &a[r][c] - &v;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_solve() {
        let q = |p: i64| BigRational::from_integer(p.into());
        // x + y = 3, x - y = 1
        let mut m = vec![vec![q(1), q(1), q(3)], vec![q(1), q(-1), q(1)]];
        assert_eq!(solve_rational(&mut m, 2), Some(vec![q(2), q(1)]));
        let mut bad = vec![vec![q(1), q(1)], vec![q(1), q(2)]];
        assert_eq!(solve_rational(&mut bad, 1), None);
    }

    #[test]
    fn determinant_of_fourier_matrix() {
        // det [[1,1],[1,-1]] = -2
        let one = Cyclo::one();
        let m = vec![vec![one.clone(), one.clone()], vec![one.clone(), -&one]];
        assert_eq!(determinant(&m), Cyclo::from_int(-2));
        let w = Cyclo::root_of_unity(1, 3);
        let w2 = &w * &w;
        let f = vec![
            vec![one.clone(), one.clone(), one.clone()],
            vec![one.clone(), w.clone(), w2.clone()],
            vec![one.clone(), w2.clone(), w.clone()],
        ];
        let d = determinant(&f);
        // det F_3 = 3 * sqrt(-3) up to sign, so det^2 = -27
        assert_eq!(&d * &d, Cyclo::from_int(-27));
    }
}
