//! Names for small fusion categories from their fusion tensor.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

/// `t[x][y][z]`: multiplicity of `z` in `x ⊗ y`, object 0 the unit.
pub type Tensor = Vec<Vec<Vec<u32>>>;

/// Matches the tensor against pointed cyclic, Tambara–Yamagami and
/// Fibonacci templates. `twists` (conformal dimensions per object)
/// refine pointed categories to `Vec^1` or `Vec^-1`.
pub fn recognize_category(t: &Tensor, twists: Option<&[BigRational]>) -> Option<String> {
    let r = t.len();
    if r == 1 {
        return Some("Vec".into());
    }
    let invertible: Vec<usize> = (0..r).filter(|&x| is_invertible(t, x)).collect();
    if invertible.len() == r {
        let g = cyclic_generator(t, &invertible)?;
        let name = format!("Z/{r}Z");
        return Some(match twists {
            None => format!("Vec_{{{name}}}"),
            Some(h) => {
                let scaled = &h[g] * BigRational::from_integer(BigInt::from(r));
                let sign = if scaled.is_integer() { "1" } else { "-1" };
                format!("Vec^{sign}_{{{name}}}")
            }
        });
    }
    if r == 2 && t[1][1] == [1, 1] {
        return Some("Fib".into());
    }
    if invertible.len() == r - 1 {
        let m = (0..r).find(|x| !invertible.contains(x))?;
        let group_ok = cyclic_generator(t, &invertible).is_some();
        let square_ok = (0..r).all(|z| t[m][m][z] == u32::from(z != m));
        let absorb_ok = invertible.iter().all(|&g| (0..r).all(|z| t[g][m][z] == u32::from(z == m) && t[m][g][z] == u32::from(z == m)));
        if group_ok && square_ok && absorb_ok {
            let n = r - 1;
            return Some(if n == 2 { "Ising".into() } else { format!("TY(Z/{n}Z)") });
        }
    }
    None
}

fn is_invertible(t: &Tensor, x: usize) -> bool {
    (0..t.len()).any(|y| t[x][y][0] == 1 && t[x][y].iter().sum::<u32>() == 1)
}

/// The unique product of two invertibles.
fn product(t: &Tensor, x: usize, y: usize) -> Option<usize> {
    let row = &t[x][y];
    (row.iter().sum::<u32>() == 1).then(|| row.iter().position(|&v| v == 1)).flatten()
}

/// An element generating the invertibles, smallest index first.
fn cyclic_generator(t: &Tensor, group: &[usize]) -> Option<usize> {
    let n = group.len();
    group.iter().copied().filter(|&g| g != 0).find(|&g| {
        let mut x = g;
        let mut order = 1;
        while x != 0 && order <= n {
            match product(t, x, g) {
                Some(y) => x = y,
                None => return false,
            }
            order += 1;
        }
        x == 0 && order == n
    }).or_else(|| (n == 1).then_some(0))
}

/// Fusion tensor of `Z/n` on labels `0..n`.
pub fn cyclic_tensor(n: usize) -> Tensor {
    (0..n).map(|x| (0..n).map(|y| (0..n).map(|z| u32::from(z == (x + y) % n)).collect()).collect()).collect()
}

/// Quadratic-form check: `h(g^k) ≡ k² h(g)` for a generator `g`.
pub fn is_quadratic(t: &Tensor, h: &[BigRational]) -> bool {
    let group: Vec<usize> = (0..t.len()).collect();
    let Some(g) = cyclic_generator(t, &group) else { return false };
    let mut x = 0;
    for k in 0..t.len() {
        let want = &h[g] * BigRational::from_integer(BigInt::from(k * k));
        if !crate::modular_data::frac(&(&h[x] - want)).is_zero() {
            return false;
        }
        x = product(t, x, g).unwrap_or(0);
    }
    true
}
