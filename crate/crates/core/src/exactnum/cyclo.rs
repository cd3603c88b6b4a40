//! Elements of cyclotomic fields `Q(ζ_N)`.
//!
//! An element is stored in the power basis `1, ζ, …, ζ^{φ(N)-1}` as integer
//! numerators over one positive common denominator. For a fixed modulus the
//! representation is unique, so equality is coefficient comparison after lifting
//! both operands to the least common modulus.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::sync::LazyLock;

use super::poly::QPoly;
use crate::error::{Error, Result};

pub fn euler_phi(n: u32) -> u32 {
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

pub fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn lcm(a: u32, b: u32) -> u32 {
    a / a.gcd(&b) * b
}

struct FieldData {
    phi: usize,
    /// Monic cyclotomic polynomial, ascending coefficients, length `phi + 1`.
    cyclo_poly: Vec<i64>,
}

static FIELDS: LazyLock<Mutex<HashMap<u32, Arc<FieldData>>>> = LazyLock::new(|| Mutex::new(HashMap::new()));

fn field(n: u32) -> Arc<FieldData> {
    if let Some(f) = FIELDS.lock().unwrap().get(&n) {
        return f.clone();
    }
    let poly = cyclotomic_polynomial(n);
    let data = Arc::new(FieldData { phi: poly.len() - 1, cyclo_poly: poly });
    FIELDS.lock().unwrap().insert(n, data.clone());
    data
}

/// The `n`-th cyclotomic polynomial with integer coefficients in ascending order.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    assert!(n >= 1, "cyclotomic modulus must be positive");
    // x^n - 1
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if !n.is_multiple_of(d) {
            continue;
        }
        let div = field(d).cyclo_poly.clone();
        num = int_poly_exact_div(&num, &div);
    }
    num
}

fn int_poly_exact_div(num: &[i64], div: &[i64]) -> Vec<i64> {
    let dd = div.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dd];
    for e in (dd..num.len()).rev() {
        let c = rem[e];
        if c == 0 {
            continue;
        }
        for (t, &dc) in div.iter().enumerate() {
            rem[e - dd + t] -= c * dc;
        }
        quot[e - dd] = c;
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    quot
}

#[derive(Clone)]
pub struct Cyclo {
    modulus: u32,
    num: Vec<BigInt>,
    den: BigInt,
}

impl Cyclo {
    fn from_parts(modulus: u32, mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        if den.is_negative() {
            den = -den;
            for c in num.iter_mut() {
                *c = -&*c;
            }
        }
        let mut g = den.clone();
        for c in num.iter() {
            if g.is_one() {
                break;
            }
            if !c.is_zero() {
                g = g.gcd(c);
            }
        }
        if num.iter().all(|c| c.is_zero()) {
            den = BigInt::one();
        } else if !g.is_one() {
            den /= &g;
            for c in num.iter_mut() {
                *c /= &g;
            }
        }
        Cyclo { modulus, num, den }
    }

    /// Reduces a dense vector of length `n` (coefficients of `ζ_n^e`) into canonical form.
    fn from_dense(n: u32, mut dense: Vec<BigInt>, den: BigInt) -> Self {
        let f = field(n);
        let phi = f.phi;
        for e in (phi..dense.len()).rev() {
            if dense[e].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut dense[e]);
            for (t, &pc) in f.cyclo_poly.iter().enumerate().take(phi) {
                if pc != 0 {
                    dense[e - phi + t] -= &c * pc;
                }
            }
        }
        dense.truncate(phi);
        dense.resize(phi, BigInt::zero());
        Self::from_parts(n, dense, den)
    }

    pub fn zero() -> Self {
        Cyclo { modulus: 1, num: vec![BigInt::zero()], den: BigInt::one() }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(k: i64) -> Self {
        Cyclo { modulus: 1, num: vec![BigInt::from(k)], den: BigInt::one() }
    }

    pub fn from_rational(r: &BigRational) -> Self {
        Cyclo { modulus: 1, num: vec![r.numer().clone()], den: r.denom().clone() }
    }

    pub fn from_frac(p: i64, q: i64) -> Self {
        Self::from_rational(&BigRational::new(p.into(), q.into()))
    }

    /// `e^{2πik/n}`, stored at the smallest modulus dividing `n` that contains it.
    pub fn root_of_unity(k: i64, n: u32) -> Self {
        assert!(n >= 1, "root of unity needs a positive order");
        let k = k.rem_euclid(n as i64) as u32;
        let g = k.gcd(&n);
        let (k, n) = if k == 0 { (0, 1) } else { (k / g, n / g) };
        let mut dense = vec![BigInt::zero(); n as usize];
        dense[k as usize] = BigInt::one();
        Self::from_dense(n, dense, BigInt::one())
    }

    /// `ζ_n^k + ζ_n^{-k} = 2 cos(2πk/n)`.
    pub fn two_cos(k: i64, n: u32) -> Self {
        &Self::root_of_unity(k, n) + &Self::root_of_unity(-k, n)
    }

    /// `sin(aπ/n) / sin(bπ/n)`, exact.
    pub fn sin_ratio(a: i64, b: i64, n: u32) -> Result<Self> {
        if b.rem_euclid(n as i64) == 0 {
            return Err(Error::DivisionByZero);
        }
        let m = 2 * n;
        let sine = |k: i64| &Self::root_of_unity(k, m) - &Self::root_of_unity(-k, m);
        sine(a).div(&sine(b))
    }

    /// `sin²(aπ/n)`, exact.
    pub fn sin_squared(a: i64, n: u32) -> Self {
        // (2 - ζ^{2a} - ζ^{-2a}) / 4 with ζ = e^{iπ/n}
        let m = 2 * n;
        let s = &Self::from_int(2) - &Self::two_cos(2 * a, m);
        s.scale(&BigRational::new(1.into(), 4.into()))
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// Integer numerators in the power basis and their common denominator.
    pub(crate) fn raw(&self) -> (&[BigInt], &BigInt) {
        (&self.num, &self.den)
    }

    /// Power-basis coefficients as rationals.
    pub fn coefficients(&self) -> Vec<BigRational> {
        self.num.iter().map(|c| BigRational::new(c.clone(), self.den.clone())).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(|c| c.is_zero())
    }

    /// The rational value when this element lies in `Q`.
    pub fn to_rational(&self) -> Option<BigRational> {
        if self.num[1..].iter().all(|c| c.is_zero()) {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    pub fn is_rational(&self) -> bool {
        self.num[1..].iter().all(|c| c.is_zero())
    }

    /// Whether the element is an integer of the field (all power-basis
    /// coordinates integral, the power basis being an integral basis).
    pub fn is_algebraic_integer(&self) -> bool {
        self.den.is_one()
    }

    pub fn lift(&self, m: u32) -> Self {
        if m == self.modulus {
            return self.clone();
        }
        assert!(m.is_multiple_of(self.modulus), "cannot lift Q(ζ_{}) into Q(ζ_{})", self.modulus, m);
        let factor = (m / self.modulus) as usize;
        let mut dense = vec![BigInt::zero(); m as usize];
        for (i, c) in self.num.iter().enumerate() {
            if !c.is_zero() {
                dense[i * factor] = c.clone();
            }
        }
        Self::from_dense(m, dense, self.den.clone())
    }

    fn aligned<'a>(&'a self, other: &'a Self) -> (std::borrow::Cow<'a, Self>, std::borrow::Cow<'a, Self>) {
        use std::borrow::Cow;
        if self.modulus == other.modulus {
            return (Cow::Borrowed(self), Cow::Borrowed(other));
        }
        let m = lcm(self.modulus, other.modulus);
        let a = if m == self.modulus { Cow::Borrowed(self) } else { Cow::Owned(self.lift(m)) };
        let b = if m == other.modulus { Cow::Borrowed(other) } else { Cow::Owned(other.lift(m)) };
        (a, b)
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        let num = self.num.iter().map(|c| c * k.numer()).collect();
        Self::from_parts(self.modulus, num, &self.den * k.denom())
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.scale(&BigRational::from_integer(k.into()))
    }

    /// Applies the Galois automorphism `ζ ↦ ζ^k`; `k` must be coprime to the modulus.
    pub fn galois(&self, k: i64) -> Self {
        let n = self.modulus;
        let k = k.rem_euclid(n as i64) as u64;
        assert!(
            n == 1 || (k as u32).gcd(&n) == 1,
            "Galois exponent {k} not coprime to modulus {n}"
        );
        if n <= 2 || k == 1 {
            return self.clone();
        }
        let mut dense = vec![BigInt::zero(); n as usize];
        for (i, c) in self.num.iter().enumerate() {
            if !c.is_zero() {
                dense[((i as u64 * k) % n as u64) as usize] += c;
            }
        }
        Self::from_dense(n, dense, self.den.clone())
    }

    /// Complex conjugation.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    pub fn is_real(&self) -> bool {
        self.modulus <= 2 || self.conj() == *self
    }

    /// Real part `(x + x̄)/2`.
    pub fn re(&self) -> Self {
        (self + &self.conj()).scale(&BigRational::new(1.into(), 2.into()))
    }

    /// Imaginary part `(x - x̄)/(2i)`.
    pub fn im(&self) -> Self {
        let diff = self - &self.conj();
        // 1/(2i) = -i/2
        &diff * &Self::root_of_unity(3, 4).scale(&BigRational::new(1.into(), 2.into()))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.to_rational() {
            return Ok(Self::from_rational(&r.recip()));
        }
        let f = field(self.modulus);
        let phi_poly = QPoly::from_ints(&f.cyclo_poly);
        let (g, s) = QPoly::new(self.coefficients()).gcd_ext(&phi_poly);
        debug_assert!(g == QPoly::one());
        let coeffs = s.coeffs();
        let mut den = BigInt::one();
        for c in coeffs {
            den = den.lcm(c.denom());
        }
        let mut num: Vec<BigInt> = coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        num.resize(f.phi, BigInt::zero());
        Ok(Self::from_parts(self.modulus, num, den))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// Floating-point value under the embedding `ζ_N ↦ e^{2πi/N}`.
    pub fn to_c64(&self) -> Complex64 {
        let den = self.den.to_f64().unwrap_or(f64::INFINITY);
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let angle = 2.0 * std::f64::consts::PI * i as f64 / self.modulus as f64;
            acc += Complex64::from_polar(c.to_f64().unwrap_or(f64::NAN), angle);
        }
        acc / den
    }

    pub fn to_f64(&self) -> f64 {
        self.to_c64().re
    }

    /// Writes `e^{2πik/n}` as `(k, n)` in lowest terms if this element is a root of unity.
    pub fn as_root_of_unity(&self) -> Option<(u32, u32)> {
        let n = self.modulus;
        let m = if n % 2 == 1 { 2 * n } else { n };
        (0..m).find(|&k| *self == Self::root_of_unity(k as i64, m)).map(|k| {
            let g = k.gcd(&m);
            if k == 0 {
                (0, 1)
            } else {
                (k / g, m / g)
            }
        })
    }

    /// Same value at the smallest modulus that contains it.
    pub fn reduced(&self) -> Self {
        let mut cur = self.clone();
        'outer: loop {
            let n = cur.modulus;
            if n == 1 {
                return cur;
            }
            for p in prime_factors(n) {
                let m = n / p;
                if let Some(r) = cur.descend(m) {
                    cur = r;
                    continue 'outer;
                }
            }
            return cur;
        }
    }

    /// Representation in `Q(ζ_m)` if this element belongs to it (`m | modulus`).
    fn descend(&self, m: u32) -> Option<Self> {
        let n = self.modulus;
        // Membership: fixed by every σ_k with k ≡ 1 (mod m).
        let mut k = 1 + m;
        while k < n + 1 {
            if k.gcd(&n) == 1 && self.galois(k as i64) != *self {
                return None;
            }
            k += m;
        }
        if m == 1 {
            return self.to_rational().map(|r| Self::from_rational(&r));
        }
        // Solve Σ c_i lift(ζ_m^i) = self over the rationals.
        let phi_m = field(m).phi;
        let columns: Vec<Self> = (0..phi_m)
            .map(|i| Self::root_of_unity(i as i64, m).lift(n))
            .collect();
        let target = self.coefficients();
        let rows = target.len();
        let mut mat: Vec<Vec<BigRational>> = (0..rows)
            .map(|r| {
                let mut row: Vec<BigRational> =
                    columns.iter().map(|c| BigRational::new(c.num[r].clone(), c.den.clone())).collect();
                row.push(target[r].clone());
                row
            })
            .collect();
        let sol = super::linalg::solve_rational(&mut mat, phi_m)?;
        let mut den = BigInt::one();
        for c in &sol {
            den = den.lcm(c.denom());
        }
        let num = sol.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        Some(Self::from_parts(m, num, den))
    }
}

impl PartialEq for Cyclo {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.aligned(other);
        a.den == b.den && a.num == b.num
    }
}

impl Eq for Cyclo {}

impl fmt::Debug for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.reduced();
        if r.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in r.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let q = BigRational::new(c.clone(), r.den.clone());
            let neg = q.is_negative();
            let mag = q.abs();
            if neg {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            first = false;
            if i == 0 {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            write!(f, "E({})", r.modulus)?;
            if i > 1 {
                write!(f, "^{i}")?;
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a Cyclo> for &'a Cyclo {
    type Output = Cyclo;
    fn add(self, rhs: &'a Cyclo) -> Cyclo {
        let (a, b) = self.aligned(rhs);
        let num = a
            .num
            .iter()
            .zip(b.num.iter())
            .map(|(x, y)| x * &b.den + y * &a.den)
            .collect();
        Cyclo::from_parts(a.modulus, num, &a.den * &b.den)
    }
}

impl<'a> Sub<&'a Cyclo> for &'a Cyclo {
    type Output = Cyclo;
    fn sub(self, rhs: &'a Cyclo) -> Cyclo {
        self + &(-rhs)
    }
}

impl Neg for &Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        Cyclo { modulus: self.modulus, num: self.num.iter().map(|c| -c).collect(), den: self.den.clone() }
    }
}

impl<'a> Mul<&'a Cyclo> for &'a Cyclo {
    type Output = Cyclo;
    fn mul(self, rhs: &'a Cyclo) -> Cyclo {
        if let Some(r) = self.to_rational() {
            return rhs.scale(&r);
        }
        if let Some(r) = rhs.to_rational() {
            return self.scale(&r);
        }
        let (a, b) = self.aligned(rhs);
        let n = a.modulus as usize;
        let mut dense = vec![BigInt::zero(); n];
        for (i, x) in a.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.num.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let idx = (i + j) % n;
                dense[idx] += x * y;
            }
        }
        Cyclo::from_dense(a.modulus, dense, &a.den * &b.den)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Cyclo> for Cyclo {
            type Output = Cyclo;
            fn $m(self, rhs: Cyclo) -> Cyclo {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Cyclo> for Cyclo {
            type Output = Cyclo;
            fn $m(self, rhs: &'a Cyclo) -> Cyclo {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<Cyclo> for &'a Cyclo {
            type Output = Cyclo;
            fn $m(self, rhs: Cyclo) -> Cyclo {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        -&self
    }
}

impl From<i64> for Cyclo {
    fn from(k: i64) -> Self {
        Cyclo::from_int(k)
    }
}

impl std::iter::Sum for Cyclo {
    fn sum<I: Iterator<Item = Cyclo>>(iter: I) -> Cyclo {
        iter.fold(Cyclo::zero(), |acc, x| &acc + &x)
    }
}

impl<'a> std::iter::Sum<&'a Cyclo> for Cyclo {
    fn sum<I: Iterator<Item = &'a Cyclo>>(iter: I) -> Cyclo {
        iter.fold(Cyclo::zero(), |acc, x| &acc + x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn golden() -> Cyclo {
        &(&Cyclo::root_of_unity(1, 5) + &Cyclo::root_of_unity(4, 5)) + &Cyclo::one()
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        for n in [15u32, 40, 70, 80] {
            assert_eq!(cyclotomic_polynomial(n).len() - 1, euler_phi(n) as usize);
        }
    }

    #[test]
    fn roots_of_unity_basics() {
        assert_eq!(Cyclo::root_of_unity(1, 2), Cyclo::from_int(-1));
        assert_eq!(Cyclo::root_of_unity(0, 7), Cyclo::one());
        assert_eq!(Cyclo::root_of_unity(1, 8).conj(), Cyclo::root_of_unity(7, 8));
        assert_eq!(Cyclo::root_of_unity(3, 12).modulus(), 4);
    }

    #[test]
    fn golden_ratio_identities() {
        let z = golden();
        assert_eq!(&z * &z, &z + &Cyclo::one());
        assert!(z.is_real());
        assert!((z.to_f64() - 1.618_033_988_749_895).abs() < 1e-12);
        assert_eq!(Cyclo::sin_ratio(3, 1, 5).unwrap(), z);
    }

    #[test]
    fn sin_ratio_is_real_and_cubic() {
        let x = Cyclo::sin_ratio(2, 1, 7).unwrap();
        assert!(x.is_real());
        // x^3 - x^2 - 2x + 1 = 0
        let x2 = &x * &x;
        let x3 = &x2 * &x;
        let val = &(&(&x3 - &x2) - &x.scale_int(2)) + &Cyclo::one();
        assert!(val.is_zero());
        assert_eq!(Cyclo::sin_ratio(1, 1, 7).unwrap(), Cyclo::one());
        assert_eq!(Cyclo::sin_ratio(1, 7, 7), Err(Error::DivisionByZero));
    }

    #[test]
    fn inverse_and_division() {
        let z = golden();
        let inv = z.inv().unwrap();
        assert_eq!(&z * &inv, Cyclo::one());
        assert_eq!(inv, &z - &Cyclo::one());
        assert_eq!(Cyclo::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn reduction_finds_minimal_modulus() {
        let sqrt5 = &golden().scale_int(2) - &Cyclo::one();
        let lifted = sqrt5.lift(40);
        assert_eq!(lifted.modulus(), 40);
        assert_eq!(lifted.reduced().modulus(), 5);
        assert_eq!(lifted.reduced(), sqrt5);
        assert_eq!(Cyclo::root_of_unity(1, 4).lift(12).reduced().modulus(), 4);
    }

    #[test]
    fn display_uses_e_syntax() {
        assert_eq!(Cyclo::root_of_unity(1, 5).to_string(), "E(5)");
        assert_eq!(Cyclo::from_frac(-3, 4).to_string(), "-3/4");
        assert_eq!(Cyclo::root_of_unity(1, 4).scale_int(-2).to_string(), "-2*E(4)");
    }

    #[test]
    fn root_of_unity_recognition() {
        assert_eq!(Cyclo::root_of_unity(3, 8).as_root_of_unity(), Some((3, 8)));
        assert_eq!(Cyclo::from_int(-1).as_root_of_unity(), Some((1, 2)));
        assert_eq!(Cyclo::from_int(2).as_root_of_unity(), None);
    }
}
