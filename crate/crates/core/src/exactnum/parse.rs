//! Text syntax for exact scalars: integers, `p/q`, `E(n)`, `E(n)^k`, `sqrt(n)`,
//! `sinpi(p/q)` and `cospi(p/q)` (sine and cosine of `pπ/q`), combined with
//! `+ - * /`, `^` and parentheses.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::Cyclo;
use crate::error::{Error, Result};

/// Square root of an integer, as an element of a cyclotomic field.
///
/// Uses quadratic Gauss sums: `sqrt(p*) = Σ (a/p) ζ_p^a` with `p* = ±p`.
pub fn sqrt_int(n: i64) -> Cyclo {
    if n == 0 {
        return Cyclo::zero();
    }
    let i = Cyclo::root_of_unity(1, 4);
    let mut acc = if n < 0 { i.clone() } else { Cyclo::one() };
    let mut m = n.unsigned_abs();
    let mut rational = 1i64;
    let mut p = 2u64;
    while m > 1 {
        let mut e = 0;
        while m.is_multiple_of(p) {
            m /= p;
            e += 1;
        }
        rational *= (p as i64).pow(e / 2);
        if e % 2 == 1 {
            acc = &acc * &sqrt_prime(p);
        }
        p += 1;
    }
    acc.scale_int(rational)
}

fn sqrt_prime(p: u64) -> Cyclo {
    if p == 2 {
        return &Cyclo::root_of_unity(1, 8) + &Cyclo::root_of_unity(7, 8);
    }
    let p32 = p as u32;
    let mut g = Cyclo::zero();
    for a in 1..p {
        let residue = (1..p).any(|x| x * x % p == a);
        let term = Cyclo::root_of_unity(a as i64, p32);
        g = if residue { &g + &term } else { &g - &term };
    }
    // g^2 = p when p ≡ 1 mod 4, else -p.
    if p % 4 == 1 {
        g
    } else {
        // sqrt(p) = -i g
        &g * &Cyclo::root_of_unity(3, 4)
    }
}

/// `sin(aπ/n)`.
pub fn sin_pi(a: i64, n: u32) -> Cyclo {
    // (ζ^a - ζ^{-a}) / (2i) with ζ = e^{iπ/n}
    let diff = &Cyclo::root_of_unity(a, 2 * n) - &Cyclo::root_of_unity(-a, 2 * n);
    (&diff * &Cyclo::root_of_unity(3, 4)).scale(&BigRational::new(1.into(), 2.into()))
}

/// `cos(aπ/n)`.
pub fn cos_pi(a: i64, n: u32) -> Cyclo {
    Cyclo::two_cos(a, 2 * n).scale(&BigRational::new(1.into(), 2.into()))
}

pub fn parse_cyclo(s: &str) -> Result<Cyclo> {
    let mut p = Parser { src: s.as_bytes(), pos: 0 };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("trailing input"));
    }
    Ok(v)
}

/// Parses `p/q`, an integer, or anything [`parse_cyclo`] accepts that is rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    parse_cyclo(s)?
        .to_rational()
        .ok_or_else(|| Error::Parse(format!("`{s}` is not rational")))
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse(format!(
            "{msg} at offset {} in `{}`",
            self.pos,
            String::from_utf8_lossy(self.src)
        ))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{}`", c as char)))
        }
    }

    fn expr(&mut self) -> Result<Cyclo> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Cyclo> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.unary()?;
            } else if self.eat(b'/') {
                acc = acc.div(&self.unary()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Cyclo> {
        if self.eat(b'-') {
            return Ok(-self.unary()?);
        }
        if self.eat(b'+') {
            return self.unary();
        }
        let base = self.atom()?;
        if self.eat(b'^') {
            let e = if self.eat(b'(') {
                let neg = self.eat(b'-');
                let v = self.integer()?;
                self.expect(b')')?;
                if neg {
                    -v
                } else {
                    v
                }
            } else {
                let neg = self.eat(b'-');
                let v = self.integer()?;
                if neg {
                    -v
                } else {
                    v
                }
            };
            let e = i64::try_from(e).map_err(|_| self.error("exponent out of range"))?;
            return base.pow(e);
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected integer"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(text.parse().unwrap())
    }

    fn small(&mut self) -> Result<i64> {
        let neg = self.eat(b'-');
        let v = i64::try_from(self.integer()?).map_err(|_| self.error("integer out of range"))?;
        Ok(if neg { -v } else { v })
    }

    fn keyword(&mut self, word: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(word.as_bytes()) {
            self.pos += word.len();
            true
        } else {
            false
        }
    }

    fn atom(&mut self) -> Result<Cyclo> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(b')')?;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let v = self.integer()?;
                Ok(Cyclo::from_rational(&BigRational::from_integer(v)))
            }
            Some(b'E') => {
                self.pos += 1;
                self.expect(b'(')?;
                let n = self.small()?;
                self.expect(b')')?;
                if n < 1 || n > u32::MAX as i64 {
                    return Err(self.error("root-of-unity order must be positive"));
                }
                Ok(Cyclo::root_of_unity(1, n as u32))
            }
            _ if self.keyword("sinpi") => self.trig(true),
            _ if self.keyword("cospi") => self.trig(false),
            _ if self.keyword("sqrt") => {
                self.expect(b'(')?;
                let n = self.small()?;
                self.expect(b')')?;
                Ok(sqrt_int(n))
            }
            _ => Err(self.error("expected a number, `E(n)`, `sqrt(n)`, `sinpi(..)`, `cospi(..)` or `(`")),
        }
    }

    fn trig(&mut self, sine: bool) -> Result<Cyclo> {
        self.expect(b'(')?;
        let arg = self.expr()?;
        self.expect(b')')?;
        let r = arg.to_rational().ok_or_else(|| self.error("trigonometric argument must be rational"))?;
        let (a, n) = (r.numer().clone(), r.denom().clone());
        let a = i64::try_from(a).map_err(|_| self.error("argument out of range"))?;
        let n = u32::try_from(n).map_err(|_| self.error("argument out of range"))?;
        Ok(if sine { sin_pi(a, n) } else { cos_pi(a, n) })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_ratio_from_text() {
        let phi = parse_cyclo("E(5)+E(5)^4+1").unwrap();
        assert_eq!(&phi * &phi, &phi + &Cyclo::one());
        assert_eq!(parse_cyclo("(1+sqrt(5))/2").unwrap(), phi);
    }

    #[test]
    fn rationals_and_powers() {
        assert_eq!(parse_rational("-3/4").unwrap(), BigRational::new((-3).into(), 4.into()));
        assert_eq!(parse_cyclo("E(8)^8").unwrap(), Cyclo::one());
        assert_eq!(parse_cyclo("E(3)^-1").unwrap(), Cyclo::root_of_unity(2, 3));
        assert_eq!(parse_cyclo("2*E(4)*E(4)").unwrap(), Cyclo::from_int(-2));
    }

    #[test]
    fn square_roots() {
        for n in [-7i64, -4, -1, 2, 3, 5, 6, 12, 13, 20] {
            let r = sqrt_int(n);
            assert_eq!(&r * &r, Cyclo::from_int(n), "n = {n}");
            if n > 0 {
                assert!(r.to_f64() > 0.0);
            }
        }
    }

    #[test]
    fn display_round_trips() {
        for s in ["E(5)+E(5)^4+1", "-1/2*E(7)^3+2", "sqrt(5)", "E(80)^37"] {
            let x = parse_cyclo(s).unwrap();
            assert_eq!(parse_cyclo(&x.to_string()).unwrap(), x);
        }
    }

    #[test]
    fn trigonometric_atoms() {
        let r = parse_cyclo("sinpi(2/7)/sinpi(1/7)").unwrap();
        assert_eq!(r, Cyclo::sin_ratio(2, 1, 7).unwrap());
        assert_eq!(parse_cyclo("cospi(1/3)").unwrap(), Cyclo::from_frac(1, 2));
        assert_eq!(parse_cyclo("sinpi(1/2)").unwrap(), Cyclo::one());
        assert_eq!(parse_cyclo("cospi(1/14)").unwrap(), parse_cyclo("sinpi(3/7)").unwrap());
        assert!((parse_cyclo("sinpi(1/13)").unwrap().to_f64() - (std::f64::consts::PI / 13.0).sin()).abs() < 1e-12);
    }

    #[test]
    fn errors() {
        assert!(parse_cyclo("E(0)").is_err());
        assert!(parse_cyclo("1+").is_err());
        assert!(parse_cyclo("1/0").is_err());
        assert!(parse_rational("E(4)").is_err());
    }
}
