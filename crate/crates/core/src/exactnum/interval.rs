//! Certified real enclosures of cyclotomic numbers.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::trig::cos_2pi;
use super::Cyclo;
use crate::error::{Error, Result};

/// Environment variable overriding the refinement cap (in bits).
pub const PRECISION_ENV: &str = "ETALE_PRECISION_CAP";
pub const DEFAULT_PRECISION_CAP: u32 = 512;

pub fn precision_cap() -> u32 {
    std::env::var(PRECISION_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<u32>().ok())
        .filter(|&v| v >= 16)
        .unwrap_or(DEFAULT_PRECISION_CAP)
}

/// A closed real interval with rational endpoints.
#[derive(Clone, PartialEq, Eq)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Interval {
    pub fn point(r: BigRational) -> Self {
        Interval { lo: r.clone(), hi: r }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, r: &BigRational) -> bool {
        &self.lo <= r && r <= &self.hi
    }

    /// Whether `other` lies inside `self`.
    pub fn encloses(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn midpoint_f64(&self) -> f64 {
        super::poly::rat_to_f64(&((&self.lo + &self.hi) / BigRational::from_integer(2.into())))
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Real and (for non-real values) imaginary enclosures.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    pub re: Interval,
    pub im: Option<Interval>,
}

/// Enclosure of `Re(x)` (or `Im(x)` when `imag`) from a `bits`-precision evaluation.
pub fn enclose(x: &Cyclo, bits: u32, imag: bool) -> Interval {
    let (num, den) = x.raw();
    let n = x.modulus();
    let mut mid = BigInt::zero();
    let mut err = BigInt::zero();
    for (i, c) in num.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let v = if imag {
            // sin(2πi/n) = cos(2π(4i - n)/(4n))
            let m = 4 * n;
            cos_2pi((4 * i as u32 + 3 * n) % m, m, bits)
        } else {
            cos_2pi(i as u32, n, bits)
        };
        mid += c * &v.mantissa;
        err += c.abs() * BigInt::from(v.err);
    }
    let scale = den * (BigInt::from(1) << bits);
    Interval {
        lo: BigRational::new(&mid - &err, scale.clone()),
        hi: BigRational::new(&mid + &err, scale),
    }
}

/// Dyadic cell of width `2^-precision` containing the irrational number
/// enclosed by successive refinements of `part`.
fn dyadic_cell(x: &Cyclo, precision: u32, imag: bool) -> Interval {
    let scale = BigInt::from(1) << precision;
    let mut bits = precision + 16;
    loop {
        let iv = enclose(x, bits, imag);
        let lo = floor(&(&iv.lo * BigRational::from_integer(scale.clone())));
        let hi = floor(&(&iv.hi * BigRational::from_integer(scale.clone())));
        if lo == hi {
            return Interval {
                lo: BigRational::new(lo.clone(), scale.clone()),
                hi: BigRational::new(lo + 1, scale),
            };
        }
        bits *= 2;
    }
}

fn floor(r: &BigRational) -> BigInt {
    r.floor().to_integer()
}

fn part(x: &Cyclo, precision: u32, imag: bool) -> Interval {
    let exact = if imag { x.im() } else { x.re() };
    match exact.to_rational() {
        Some(r) => Interval::point(r),
        None => dyadic_cell(x, precision, imag),
    }
}

/// Enclosure of width at most `2^-precision`; cells nest as `precision` grows.
pub fn embed(x: &Cyclo, precision: u32) -> Embedding {
    let re = part(x, precision, false);
    let im = if x.is_real() { None } else { Some(part(x, precision, true)) };
    Embedding { re, im }
}

/// Sign of a real cyclotomic number, refining up to the precision cap.
pub fn sign_real(x: &Cyclo) -> Result<Ordering> {
    if !x.is_real() {
        return Err(Error::NotReal);
    }
    if x.is_zero() {
        return Ok(Ordering::Equal);
    }
    if let Some(r) = x.to_rational() {
        return Ok(r.cmp(&BigRational::zero()));
    }
    let cap = precision_cap();
    let mut bits = 64;
    loop {
        let iv = enclose(x, bits, false);
        if iv.lo.is_positive() {
            return Ok(Ordering::Greater);
        }
        if iv.hi.is_negative() {
            return Ok(Ordering::Less);
        }
        if bits >= cap {
            return Err(Error::PrecisionExhausted(cap));
        }
        bits = (bits * 2).min(cap);
    }
}

/// Order of two real cyclotomic numbers.
pub fn cmp_real(a: &Cyclo, b: &Cyclo) -> Result<Ordering> {
    if !a.is_real() || !b.is_real() {
        return Err(Error::NotReal);
    }
    sign_real(&(a - b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn golden() -> Cyclo {
        &(&Cyclo::root_of_unity(1, 5) + &Cyclo::root_of_unity(4, 5)) + &Cyclo::one()
    }

    #[test]
    fn rational_embeds_as_point() {
        let e = embed(&Cyclo::one(), 30);
        assert_eq!(e.re, Interval::point(BigRational::from_integer(1.into())));
        assert!(e.im.is_none());
    }

    #[test]
    fn golden_ratio_enclosure() {
        let e = embed(&golden(), 20);
        let phi = BigRational::new(16180339887i64.into(), 10000000000i64.into());
        assert!(e.re.contains(&phi));
        assert!(e.re.width() <= BigRational::new(1.into(), (1i64 << 20).into()));
    }

    #[test]
    fn imaginary_part_of_i() {
        let e = embed(&Cyclo::root_of_unity(1, 4), 10);
        assert_eq!(e.re, Interval::point(BigRational::zero()));
        assert_eq!(e.im, Some(Interval::point(BigRational::from_integer(1.into()))));
        let w = embed(&Cyclo::root_of_unity(1, 3), 20);
        let im = w.im.unwrap();
        assert!(im.midpoint_f64() > 0.866 && im.midpoint_f64() < 0.8661);
    }

    #[test]
    fn ordering() {
        let phi = golden();
        assert_eq!(cmp_real(&phi, &Cyclo::from_frac(8, 5)).unwrap(), Ordering::Greater);
        assert_eq!(cmp_real(&phi, &Cyclo::from_frac(13, 8)).unwrap(), Ordering::Less);
        assert_eq!(cmp_real(&phi, &phi.clone()).unwrap(), Ordering::Equal);
        assert_eq!(cmp_real(&Cyclo::root_of_unity(1, 4), &phi), Err(Error::NotReal));
    }
}
