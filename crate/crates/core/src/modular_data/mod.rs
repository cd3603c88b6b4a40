//! Modular data `(S, T)` built from a ring, a real character `d` and
//! conformal dimensions `h`, with exact verification of the modular axioms.

mod count;
mod enumerate;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::linalg::{mat_mul, CycloMatrix};
use crate::exactnum::{sign_real, Cyclo};
use crate::fusion_ring::FusionRing;

pub use count::{count_mfcs, MfcCount};
pub use enumerate::{brute_force_conformal, canonical_orbits, d_stabilizer, enumerate_conformal};

/// Verified modular data. `s` is unnormalized: `s[0][j] = d_j`.
#[derive(Clone, Debug)]
pub struct ModularData {
    pub d: Vec<Cyclo>,
    pub h: Vec<BigRational>,
    pub s: CycloMatrix,
    pub t: Vec<Cyclo>,
    /// `D² = Σ d_i²`.
    pub dim_sq: Cyclo,
    /// Gauss sum `p₊ = Σ θ_i d_i²`.
    pub gauss: Cyclo,
    /// Central charge modulo 8.
    pub central_charge: BigRational,
}

/// `θ = e^{2πih}`.
pub fn twist(h: &BigRational) -> Cyclo {
    let den = h.denom().to_u32().expect("twist denominator fits in u32");
    let num = h.numer().mod_floor(h.denom()).to_i64().unwrap();
    Cyclo::root_of_unity(num, den)
}

/// Reduces `h` into `[0, 1)`.
pub fn frac(h: &BigRational) -> BigRational {
    h - BigRational::from_integer(h.floor().to_integer())
}

/// `S_{ij} = θ_i⁻¹ θ_j⁻¹ Σ_k N_{i*j}^k θ_k d_k`.
pub fn s_matrix(ring: &FusionRing, d: &[Cyclo], theta: &[Cyclo]) -> Result<CycloMatrix> {
    let r = ring.rank();
    let inv: Vec<Cyclo> = theta.iter().map(|t| t.inv()).collect::<Result<_>>()?;
    let weighted: Vec<Cyclo> = (0..r).map(|k| &theta[k] * &d[k]).collect();
    let mut s = vec![vec![Cyclo::zero(); r]; r];
    for i in 0..r {
        for j in i..r {
            let sum: Cyclo = ring.product(ring.dual(i), j).iter().map(|&k| weighted[k].clone()).sum();
            let v = (&(&inv[i] * &inv[j]) * &sum).reduced();
            s[j][i] = v.clone();
            s[i][j] = v;
        }
    }
    Ok(s)
}

/// Builds modular data and checks every axiom exactly; the error names the first failure.
pub fn build(ring: &FusionRing, d: &[Cyclo], h: &[BigRational]) -> Result<ModularData> {
    let r = ring.rank();
    let fail = |msg: String| Err(Error::Invalid(msg));
    if d.len() != r || h.len() != r {
        return fail(format!("expected {r} quantum and conformal dimensions"));
    }
    if !d[0].is_one() || !h[0].is_zero() {
        return fail("the unit must have d = 1 and h = 0".into());
    }
    for i in 0..r {
        if !d[i].is_real() || d[i].is_zero() {
            return fail(format!("d_{} must be real and nonzero", ring.label(i)));
        }
        for j in 0..r {
            let rhs: Cyclo = ring.product(i, j).iter().map(|&k| d[k].clone()).sum();
            if &d[i] * &d[j] != rhs {
                return fail("d is not a character of the ring".into());
            }
        }
    }
    let h: Vec<BigRational> = h.iter().map(frac).collect();
    for i in 0..r {
        if h[i] != h[ring.dual(i)] {
            return fail(format!("h_{} differs from the value on its dual", ring.label(i)));
        }
    }
    let t: Vec<Cyclo> = h.iter().map(twist).collect();
    let s = s_matrix(ring, d, &t)?;
    let dim_sq: Cyclo = d.iter().map(|x| x * x).sum::<Cyclo>().reduced();
    let gauss: Cyclo = (0..r).map(|i| &t[i] * &(&d[i] * &d[i])).sum::<Cyclo>().reduced();

    let s2 = mat_mul(&s, &s);
    for i in 0..r {
        for j in 0..r {
            let want = if j == ring.dual(i) { dim_sq.clone() } else { Cyclo::zero() };
            if s2[i][j] != want {
                return fail("S² is not D² times charge conjugation".into());
            }
        }
    }
    // Verlinde: every column of S divided by its first entry is a character.
    for m in 0..r {
        let col: Vec<Cyclo> = (0..r).map(|i| s[i][m].div(&s[0][m])).collect::<Result<_>>()?;
        for i in 0..r {
            for j in i..r {
                let rhs: Cyclo = ring.product(i, j).iter().map(|&k| col[k].clone()).sum();
                if &col[i] * &col[j] != rhs {
                    return fail("Verlinde formula fails".into());
                }
            }
        }
    }
    let st: CycloMatrix = s.iter().map(|row| row.iter().zip(&t).map(|(a, b)| a * b).collect()).collect();
    let st3 = mat_mul(&mat_mul(&st, &st), &st);
    for i in 0..r {
        for j in 0..r {
            if st3[i][j] != &gauss * &s2[i][j] {
                return fail("(ST)³ differs from p₊ S²".into());
            }
        }
    }
    for k in 0..r {
        let nu = indicator(ring, d, &t, &dim_sq, k, 2)?;
        let ok = if ring.dual(k) == k {
            nu.is_one() || (-&nu).is_one()
        } else {
            nu.is_zero()
        };
        if !ok {
            return fail(format!("second indicator of {} is {nu}", ring.label(k)));
        }
    }
    let central_charge = central_charge(&gauss, &dim_sq)?;
    Ok(ModularData { d: d.to_vec(), h, s, t, dim_sq, gauss, central_charge })
}

/// Frobenius–Schur indicator `ν_n(k) = D⁻² Σ_{i,j} N_{ij}^k d_i d_j (θ_i/θ_j)^n`.
pub fn indicator(ring: &FusionRing, d: &[Cyclo], t: &[Cyclo], dim_sq: &Cyclo, k: usize, n: i64) -> Result<Cyclo> {
    let r = ring.rank();
    let powers: Vec<Cyclo> = t.iter().map(|x| x.pow(n)).collect::<Result<_>>()?;
    let inv: Vec<Cyclo> = t.iter().map(|x| x.pow(-n)).collect::<Result<_>>()?;
    let mut sum = Cyclo::zero();
    for i in 0..r {
        for j in 0..r {
            if ring.n(i, j, k) > 0 {
                let term = &(&d[i] * &d[j]) * &(&powers[i] * &inv[j]);
                sum = &sum + &term.scale_int(ring.n(i, j, k) as i64);
            }
        }
    }
    Ok(sum.div(dim_sq)?.reduced())
}

/// `c mod 8` from `p₊ = D e^{2πic/8}` with `D > 0`.
pub fn central_charge(gauss: &Cyclo, dim_sq: &Cyclo) -> Result<BigRational> {
    let ratio = (gauss * gauss).div(dim_sq)?;
    let (k, n) = ratio.as_root_of_unity().ok_or(Error::NotRootOfUnity)?;
    // c/4 ≡ k/n, so c ≡ 4k/n (mod 4); the sign of p₊ e^{-2πi c₀/8} picks the lift.
    let c0 = BigRational::new(BigInt::from(4 * k), BigInt::from(n));
    let unwind = Cyclo::root_of_unity(-(k as i64), 2 * n);
    let w = (gauss * &unwind).reduced();
    let c = if sign_real(&w)?.is_gt() { c0 } else { c0 + BigRational::from_integer(4.into()) };
    let eight = BigRational::from_integer(8.into());
    Ok(c.clone() - &eight * BigRational::from_integer((c / &eight).floor().to_integer()))
}

/// Display helper: `p/q` with `0` and integers unadorned.
pub fn format_rational(x: &BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Summary shape used by structured output.
#[derive(Clone, Debug, Serialize)]
pub struct ModularSummary {
    pub d: Vec<String>,
    pub h: Vec<String>,
    pub dim_sq: String,
    pub central_charge: String,
}

impl ModularData {
    pub fn summary(&self) -> ModularSummary {
        ModularSummary {
            d: self.d.iter().map(|x| x.to_string()).collect(),
            h: self.h.iter().map(format_rational).collect(),
            dim_sq: self.dim_sq.to_string(),
            central_charge: format_rational(&self.central_charge),
        }
    }

    /// Whether `h` of an object is an integer (a boson).
    pub fn is_boson(&self, i: usize) -> bool {
        self.h[i].is_zero()
    }

    pub fn rank(&self) -> usize {
        self.d.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::parse_cyclo;

    fn q(s: &str) -> BigRational {
        crate::exactnum::parse_rational(s).unwrap()
    }

    fn ising() -> FusionRing {
        FusionRing::from_products(
            "Ising",
            &["1", "psi", "sigma"],
            &["psi*psi=1", "psi*sigma=sigma", "sigma*sigma=1+psi"],
        )
        .unwrap()
    }

    #[test]
    fn ising_has_central_charge_one_half() {
        let d = vec![Cyclo::one(), Cyclo::one(), parse_cyclo("sqrt(2)").unwrap()];
        let md = build(&ising(), &d, &[q("0"), q("1/2"), q("1/16")]).unwrap();
        assert_eq!(md.central_charge, q("1/2"));
        assert_eq!(md.dim_sq, Cyclo::from_int(4));
        let conj = build(&ising(), &d, &[q("0"), q("1/2"), q("15/16")]).unwrap();
        assert_eq!(conj.central_charge, q("15/2"));
    }

    #[test]
    fn wrong_twist_is_rejected() {
        let d = vec![Cyclo::one(), Cyclo::one(), parse_cyclo("sqrt(2)").unwrap()];
        assert!(build(&ising(), &d, &[q("0"), q("0"), q("1/16")]).is_err());
        assert!(build(&ising(), &d, &[q("0"), q("1/2"), q("1/8")]).is_err());
    }

    #[test]
    fn fibonacci_central_charge() {
        let fib = FusionRing::from_products("Fib", &["1", "t"], &["t*t=1+t"]).unwrap();
        let d = vec![Cyclo::one(), parse_cyclo("(1+sqrt(5))/2").unwrap()];
        let md = build(&fib, &d, &[q("0"), q("2/5")]).unwrap();
        assert_eq!(md.central_charge, q("14/5"));
        // Galois conjugate with negative dimension.
        let d2 = vec![Cyclo::one(), parse_cyclo("(1-sqrt(5))/2").unwrap()];
        let md2 = build(&fib, &d2, &[q("0"), q("1/5")]).unwrap();
        assert_eq!(md2.dim_sq, parse_cyclo("(5-sqrt(5))/2").unwrap());
    }

    #[test]
    fn twist_reduces_mod_one() {
        assert_eq!(twist(&q("5/4")), Cyclo::root_of_unity(1, 4));
        assert_eq!(frac(&q("-1/3")), q("2/3"));
    }
}
