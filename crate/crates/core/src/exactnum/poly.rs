//! Dense univariate polynomials over the rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Coefficients in ascending degree; no trailing zeros (the zero polynomial is empty).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QPoly {
    coeffs: Vec<BigRational>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_ints(&[1])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![BigRational::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] += c;
        }
        QPoly::new(out)
    }

    pub fn sub(&self, other: &QPoly) -> QPoly {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, k: &BigRational) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn mul(&self, other: &QPoly) -> QPoly {
        if self.is_zero() || other.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::new(out)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &QPoly) -> (QPoly, QPoly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = divisor.lead().unwrap().recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (QPoly::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for e in (dd..rem.len()).rev() {
            if rem[e].is_zero() {
                continue;
            }
            let c = &rem[e] * &lead_inv;
            for (t, dc) in divisor.coeffs.iter().enumerate() {
                let idx = e - dd + t;
                rem[idx] -= &c * dc;
            }
            quot[e - dd] = c;
        }
        rem.truncate(dd);
        (QPoly::new(quot), QPoly::new(rem))
    }

    pub fn derivative(&self) -> QPoly {
        QPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn monic(&self) -> QPoly {
        match self.lead() {
            Some(l) => self.scale(&l.recip()),
            None => QPoly::zero(),
        }
    }

    /// Returns `(g, s)` with `g = gcd(self, m)` monic and `s * self ≡ g (mod m)`.
    pub fn gcd_ext(&self, m: &QPoly) -> (QPoly, QPoly) {
        let (mut r0, mut r1) = (m.clone(), self.clone());
        let (mut s0, mut s1) = (QPoly::zero(), QPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s2 = s0.sub(&q.mul(&s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        match r0.lead().cloned() {
            Some(l) => {
                let inv = l.recip();
                (r0.scale(&inv), s0.scale(&inv))
            }
            None => (QPoly::zero(), QPoly::zero()),
        }
    }

    pub fn eval_f64(&self, x: num_complex::Complex64) -> num_complex::Complex64 {
        let mut acc = num_complex::Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * x + num_complex::Complex64::new(rat_to_f64(c), 0.0);
        }
        acc
    }

    /// Discriminant up to sign convention: product of squared root differences,
    /// computed as `(-1)^{n(n-1)/2} Res(p, p') / lead`.
    pub fn discriminant(&self) -> BigRational {
        let n = self.degree().unwrap_or(0);
        if n < 1 {
            return BigRational::one();
        }
        let res = resultant(self, &self.derivative());
        let sign = if (n * (n - 1) / 2).is_multiple_of(2) { 1 } else { -1 };
        res * BigRational::from_integer(sign.into()) / self.lead().unwrap()
    }

    pub fn has_integer_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }
}

/// Resultant via the Euclidean algorithm over the rationals.
pub fn resultant(a: &QPoly, b: &QPoly) -> BigRational {
    let (Some(mut da), Some(mut db)) = (a.degree(), b.degree()) else {
        return BigRational::zero();
    };
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut acc = BigRational::one();
    loop {
        if db == 0 {
            let lb = b.lead().unwrap().clone();
            return acc * num_traits::pow(lb, da);
        }
        let (_, r) = a.div_rem(&b);
        let Some(dr) = r.degree() else {
            return BigRational::zero();
        };
        // res(a, b) = (-1)^{da db} lc(b)^{da - dr} res(b, r)
        if (da * db) % 2 == 1 {
            acc = -acc;
        }
        acc *= num_traits::pow(b.lead().unwrap().clone(), da - dr);
        a = b;
        b = r;
        da = db;
        db = dr;
    }
}

pub fn rat_to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() && d != 0.0 => n / d,
        _ => {
            // Scale down huge numerators/denominators before converting.
            let shift = r.numer().bits().max(r.denom().bits()).saturating_sub(900);
            let n = (r.numer() >> shift).to_f64().unwrap_or(0.0);
            let d = (r.denom() >> shift).to_f64().unwrap_or(1.0);
            n / d
        }
    }
}

pub fn abs_rat(r: &BigRational) -> BigRational {
    r.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_and_gcd() {
        // (x^2 - 1) / (x - 1) = x + 1
        let p = QPoly::from_ints(&[-1, 0, 1]);
        let d = QPoly::from_ints(&[-1, 1]);
        let (q, r) = p.div_rem(&d);
        assert_eq!(q, QPoly::from_ints(&[1, 1]));
        assert!(r.is_zero());

        // inverse of x modulo x^2 + 1 is -x
        let m = QPoly::from_ints(&[1, 0, 1]);
        let (g, s) = QPoly::from_ints(&[0, 1]).gcd_ext(&m);
        assert_eq!(g, QPoly::one());
        assert_eq!(s, QPoly::from_ints(&[0, -1]));
    }

    #[test]
    fn discriminant_of_quadratic() {
        // x^2 - x - 1 has discriminant 5
        let p = QPoly::from_ints(&[-1, -1, 1]);
        assert_eq!(p.discriminant(), BigRational::from_integer(5.into()));
        // x^3 - x^2 - 2x + 1 has discriminant 49
        let p = QPoly::from_ints(&[1, -2, -1, 1]);
        assert_eq!(p.discriminant(), BigRational::from_integer(49.into()));
    }
}
