//! Fixed-point cosines with explicit error bounds.
//!
//! A value `v` at `bits` of precision is an integer `m` with `|v - m / 2^bits| ≤ err / 2^bits`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use std::sync::LazyLock;

/// A fixed-point approximation: `mantissa / 2^bits` within `err / 2^bits`.
#[derive(Clone, Debug)]
pub struct Fixed {
    pub mantissa: BigInt,
    pub err: u64,
}

/// `atan(1/x)` at `bits` precision, with the accumulated truncation error in ulps.
fn atan_inv(x: u64, bits: u32) -> Fixed {
    let one = BigInt::from(1) << bits;
    let x2 = BigInt::from(x * x);
    let mut power = &one / BigInt::from(x); // 1/x^{2k+1}
    let mut sum = BigInt::zero();
    let mut k = 0u64;
    let mut err = 1u64;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * k + 1);
        if k.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &x2;
        k += 1;
        err += 2;
    }
    // The omitted tail is below one ulp.
    Fixed { mantissa: sum, err: err + 1 }
}

/// π via Machin's formula.
fn pi(bits: u32) -> Fixed {
    let a = atan_inv(5, bits);
    let b = atan_inv(239, bits);
    Fixed {
        mantissa: a.mantissa * 16 - b.mantissa * 4,
        err: 16 * a.err + 4 * b.err,
    }
}

/// Taylor series for `cos x` or `sin x` with `0 ≤ x ≤ 1`.
fn taylor(x: &BigInt, bits: u32, sine: bool) -> (BigInt, u64) {
    let one = BigInt::from(1) << bits;
    let x2 = (x * x) >> bits;
    let mut term = if sine { x.clone() } else { one };
    let mut sum = term.clone();
    let mut k: u64 = if sine { 1 } else { 0 };
    let mut terms = 0u64;
    loop {
        term = (&term * &x2) >> bits;
        term /= BigInt::from((k + 1) * (k + 2));
        k += 2;
        if term.is_zero() {
            break;
        }
        terms += 1;
        if terms % 2 == 1 {
            sum -= &term;
        } else {
            sum += &term;
        }
    }
    (sum, 4 * terms + 16)
}

type Key = (u32, u32, u32);
static CACHE: LazyLock<Mutex<HashMap<Key, Arc<Fixed>>>> = LazyLock::new(|| Mutex::new(HashMap::new()));

/// `cos(2πk/n)` at `bits` precision.
pub fn cos_2pi(k: u32, n: u32, bits: u32) -> Arc<Fixed> {
    let k = k % n;
    if let Some(hit) = CACHE.lock().unwrap().get(&(k, n, bits)) {
        return hit.clone();
    }
    let value = Arc::new(compute_cos(k, n, bits));
    CACHE.lock().unwrap().insert((k, n, bits), value.clone());
    value
}

fn compute_cos(k: u32, n: u32, bits: u32) -> Fixed {
    let guard = 32;
    let w = bits + guard;
    // Angle as a fraction t = num / den of a full turn, folded into [0, 1/8].
    let den = 8 * n as u64;
    let mut num = 8 * k as u64;
    if num > den / 2 {
        num = den - num;
    }
    let mut negate = false;
    if num > den / 4 {
        num = den / 2 - num;
        negate = true;
    }
    let use_sine = num > den / 8;
    if use_sine {
        num = den / 4 - num;
    }
    let p = pi(w);
    // x = 2π num / den ≤ π/4
    let x = (&p.mantissa * BigInt::from(2 * num)) / BigInt::from(den);
    let x_err = p.err + 1;
    let (mut value, taylor_err) = taylor(&x, w, use_sine);
    if negate {
        value = -value;
    }
    // |d/dx| ≤ 1 for both series; add rounding from the final shift.
    let total = x_err + taylor_err;
    let shifted_err = (total >> guard) + 2;
    let mantissa = round_shift(&value, guard);
    Fixed { mantissa, err: shifted_err }
}

fn round_shift(v: &BigInt, s: u32) -> BigInt {
    let half = BigInt::from(1) << (s - 1);
    if v.is_negative() {
        -((-v + &half) >> s)
    } else {
        (v + &half) >> s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn approx(f: &Fixed, bits: u32) -> f64 {
        f.mantissa.to_f64().unwrap() / 2f64.powi(bits as i32)
    }

    #[test]
    fn cosines_match_floating_point() {
        for n in 1..40u32 {
            for k in 0..n {
                let c = cos_2pi(k, n, 60);
                let expect = (2.0 * std::f64::consts::PI * k as f64 / n as f64).cos();
                assert!((approx(&c, 60) - expect).abs() < 1e-14, "k={k} n={n}");
                assert!(c.err < 8);
            }
        }
    }

    #[test]
    fn pi_digits() {
        let p = pi(100);
        let s = (p.mantissa >> 50u32).to_f64().unwrap() / 2f64.powi(50);
        assert!((s - std::f64::consts::PI).abs() < 1e-15);
    }
}
