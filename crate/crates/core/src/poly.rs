//! Integer polynomials, characteristic polynomials and the unit-radius
//! certificate.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::RatMatrix;

/// Coefficients lowest degree first; no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    pub fn x_minus_one() -> Self {
        Self::from_i64(&[-1, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeffs.first().cloned().unwrap_or_default()
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    pub fn pow(&self, e: usize) -> IntPoly {
        (0..e).fold(IntPoly::one(), |acc, _| acc.mul(self))
    }

    /// Division by a monic polynomial: (quotient, remainder).
    pub fn div_rem_monic(&self, d: &IntPoly) -> (IntPoly, IntPoly) {
        assert!(d.leading().is_one(), "divisor must be monic");
        let dd = d.degree();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (IntPoly::zero(), self.clone());
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].clone();
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k + j] -= &c * dc;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (IntPoly::new(quot), IntPoly::new(rem))
    }

    pub fn eval_f64(&self, x: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c * BigInt::from(k)).collect(),
        )
    }

    /// Evaluates at a square integer matrix (Horner), used for
    /// Cayley-Hamilton checks.
    pub fn eval_matrix(&self, m: &RatMatrix) -> RatMatrix {
        let n = m.rows();
        let mut acc = RatMatrix::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(m);
            for i in 0..n {
                let v = acc.get(i, i) + crate::linalg::Rational::from_integer(c.clone());
                acc.set(i, i, v);
            }
        }
        acc
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_mag = k == 0 || !mag.is_one();
            match (show_mag, k) {
                (_, 0) => write!(f, "{mag}")?,
                (true, 1) => write!(f, "{mag}x")?,
                (false, 1) => write!(f, "x")?,
                (true, _) => write!(f, "{mag}x^{k}")?,
                (false, _) => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

/// Monic characteristic polynomial det(xI - M) by Berkowitz's
/// division-free recurrence.
pub fn char_poly(m: &RatMatrix) -> Result<IntPoly> {
    if m.rows() != m.cols() {
        return Err(Error::Validation("characteristic polynomial needs a square matrix".into()));
    }
    let a = m
        .to_int_rows()
        .ok_or_else(|| Error::Validation("characteristic polynomial needs integer entries".into()))?;
    Ok(berkowitz(&a))
}

pub fn char_poly_int(a: &[Vec<BigInt>]) -> IntPoly {
    berkowitz(a)
}

fn berkowitz(a: &[Vec<BigInt>]) -> IntPoly {
    let n = a.len();
    // p holds coefficients highest degree first
    let mut p: Vec<BigInt> = vec![BigInt::one()];
    for k in 0..n {
        // leading k x k block is A, new row R = a[k][..k], column C = a[..k][k]
        let mut col: Vec<BigInt> = (0..k).map(|i| a[i][k].clone()).collect();
        let mut toeplitz = Vec::with_capacity(k + 2);
        toeplitz.push(BigInt::one());
        toeplitz.push(-a[k][k].clone());
        for _ in 0..k {
            let rc: BigInt = (0..k).map(|j| &a[k][j] * &col[j]).sum();
            toeplitz.push(-rc);
            col = (0..k).map(|i| (0..k).map(|j| &a[i][j] * &col[j]).sum()).collect();
        }
        let mut next = vec![BigInt::zero(); k + 2];
        for (i, slot) in next.iter_mut().enumerate() {
            for (j, pj) in p.iter().enumerate() {
                if i >= j && i - j < toeplitz.len() {
                    *slot += &toeplitz[i - j] * pj;
                }
            }
        }
        p = next;
    }
    p.reverse();
    IntPoly::new(p)
}

fn mobius(mut n: u64) -> i64 {
    let mut result = 1;
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            n /= d;
            if n % d == 0 {
                return 0;
            }
            result = -result;
        }
        d += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

pub fn euler_phi(n: u64) -> u64 {
    (1..=n).filter(|k| k.gcd(&n) == 1).count() as u64
}

/// The k-th cyclotomic polynomial, from prod over d | k of (x^d - 1)^mu(k/d).
pub fn cyclotomic(k: u64) -> IntPoly {
    let mut num = IntPoly::one();
    let mut den = IntPoly::one();
    for d in 1..=k {
        if k % d != 0 {
            continue;
        }
        let mut c = vec![BigInt::zero(); d as usize + 1];
        c[0] = BigInt::from(-1);
        c[d as usize] = BigInt::one();
        let factor = IntPoly::new(c);
        match mobius(k / d) {
            1 => num = num.mul(&factor),
            -1 => den = den.mul(&factor),
            _ => {}
        }
    }
    let (q, r) = num.div_rem_monic(&den);
    debug_assert!(r.is_zero());
    q
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SpectralCertificate {
    /// Every root is a root of unity. `one_multiplicity` is the
    /// multiplicity of the factor x - 1; `cyclotomic_factors` lists
    /// (k, exponent) of the full factorization.
    ExactlyOne { one_multiplicity: usize, cyclotomic_factors: Vec<(u64, usize)> },
    /// Some root lies outside the unit circle; `spectral_radius` is a
    /// floating-point witness.
    GreaterThanOne { spectral_radius: f64, residual_factor: String },
}

/// Decides whether all roots of `p` are roots of unity. With a unit constant
/// term this is equivalent to all roots lying in the closed unit disk.
pub fn spectral_radius_one_certificate(p: &IntPoly) -> Result<SpectralCertificate> {
    if !p.leading().is_one() {
        return Err(Error::Validation("polynomial must be monic".into()));
    }
    if !p.constant_term().abs().is_one() {
        return Err(Error::NonUnitConstantTerm { constant: p.constant_term().to_string() });
    }
    let mut rest = p.clone();
    let mut factors = Vec::new();
    let deg = p.degree() as u64;
    // phi(k) >= sqrt(k/2), so phi(k) <= deg forces k <= 2 deg^2
    let bound = 2 * deg * deg + 2;
    for k in 1..=bound {
        if rest.degree() == 0 {
            break;
        }
        if euler_phi(k) > rest.degree() as u64 {
            continue;
        }
        let phi = cyclotomic(k);
        let mut exp = 0;
        loop {
            let (q, r) = rest.div_rem_monic(&phi);
            if !r.is_zero() {
                break;
            }
            rest = q;
            exp += 1;
        }
        if exp > 0 {
            factors.push((k, exp));
        }
    }
    if rest.degree() == 0 {
        let one_multiplicity = factors.iter().find(|(k, _)| *k == 1).map_or(0, |(_, e)| *e);
        Ok(SpectralCertificate::ExactlyOne { one_multiplicity, cyclotomic_factors: factors })
    } else {
        let spectral_radius = max_root_modulus(&rest);
        Ok(SpectralCertificate::GreaterThanOne { spectral_radius, residual_factor: rest.to_string() })
    }
}

/// All complex roots by the Aberth-Ehrlich iteration followed by Newton
/// polishing.
pub fn roots(p: &IntPoly) -> Vec<Complex64> {
    let n = p.degree();
    if n == 0 {
        return Vec::new();
    }
    let lead = p.leading().to_f64().unwrap_or(1.0);
    let c: Vec<f64> = p.coeffs().iter().map(|x| x.to_f64().unwrap_or(f64::NAN) / lead).collect();
    // Cauchy bound for the starting circle
    let radius = 1.0 + c[..n].iter().map(|x| x.abs()).fold(0.0, f64::max);
    let eval = |z: Complex64| -> (Complex64, Complex64) {
        let mut v = Complex64::new(1.0, 0.0);
        let mut d = Complex64::new(0.0, 0.0);
        for k in (0..n).rev() {
            d = d * z + v;
            v = v * z + c[k];
        }
        (v, d)
    };
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64;
            Complex64::from_polar(radius.clamp(1.5, 4.0), theta)
        })
        .collect();
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (v, d) = eval(z[i]);
            if v.norm() == 0.0 {
                continue;
            }
            let ratio = v / d;
            let s: Complex64 = (0..n).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if step.is_finite() {
                z[i] -= step;
                moved = moved.max(step.norm() / z[i].norm().max(1.0));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    for zi in z.iter_mut() {
        for _ in 0..5 {
            let (v, d) = eval(*zi);
            let step = v / d;
            if !step.is_finite() || step.norm() < 1e-17 {
                break;
            }
            *zi -= step;
        }
    }
    z
}

pub fn max_root_modulus(p: &IntPoly) -> f64 {
    roots(p).iter().map(|z| z.norm()).fold(0.0, f64::max)
}
