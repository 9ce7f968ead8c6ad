//! Loewy matrices and the finite / tame / wild classification.
//!
//! L = [[A_1, -E, 0, ..], [A_2, 0, -E, ..], .., [A_{n+1}, 0, .., 0]] acts
//! on stacked dimension vectors (v_0; ..; v_n), where A_t[j][i] =
//! dim e_j Λ_t e_i. Applied to the level vector of a Koszul module it
//! gives the level vector of the first syzygy.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graded::GradedDims;
use crate::linalg::{rank, RatMatrix, Rational};
use crate::poly::{char_poly, spectral_radius_one_certificate, IntPoly, SpectralCertificate};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoewyMatrix {
    pub n: usize,
    pub m: usize,
    pub entries: Vec<Vec<i64>>,
}

impl LoewyMatrix {
    pub fn size(&self) -> usize {
        (self.n + 1) * self.m
    }

    /// V₀ = [E; 0; ..; 0], one column per simple.
    pub fn v0(&self) -> Vec<Vec<BigInt>> {
        (0..self.size())
            .map(|r| (0..self.m).map(|c| BigInt::from(i64::from(r == c))).collect())
            .collect()
    }

    pub fn to_rat(&self) -> RatMatrix {
        RatMatrix::from_i64(&self.entries)
    }

    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        self.entries
            .iter()
            .map(|row| {
                row.iter().zip(v).filter(|(a, _)| **a != 0).map(|(&a, x)| x * a).sum()
            })
            .collect()
    }

    /// L·W for a matrix W given by rows.
    pub fn apply_columns(&self, w: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
        let cols = w.first().map_or(0, Vec::len);
        let mut out = vec![vec![BigInt::zero(); cols]; self.size()];
        for (r, row) in self.entries.iter().enumerate() {
            for (k, &a) in row.iter().enumerate() {
                if a != 0 {
                    for c in 0..cols {
                        out[r][c] += &w[k][c] * a;
                    }
                }
            }
        }
        out
    }
}

pub fn loewy_matrix(gd: &GradedDims, n: usize) -> Result<LoewyMatrix> {
    let m = gd.vertices;
    if gd.t_max() < n + 2 {
        return Err(Error::NotLoewyBounded(format!("dimensions known to degree {}, need {}", gd.t_max(), n + 2)));
    }
    if let Some(t) = (n + 2..=gd.t_max()).find(|&t| !gd.is_zero_at(t)) {
        return Err(Error::NotLoewyBounded(format!("degree {t} component is nonzero")));
    }
    if (0..m).any(|i| (0..m).any(|j| gd.block(0)[j][i] != usize::from(i == j))) {
        return Err(Error::NotLoewyBounded("degree 0 block is not the identity".into()));
    }
    let size = (n + 1) * m;
    let mut entries = vec![vec![0i64; size]; size];
    for r in 0..=n {
        let a = gd.block(r + 1);
        for j in 0..m {
            for i in 0..m {
                entries[r * m + j][i] = a[j][i] as i64;
            }
            if r < n {
                entries[r * m + j][(r + 1) * m + j] = -1;
            }
        }
    }
    Ok(LoewyMatrix { n, m, entries })
}

/// L^s·v, exactly.
pub fn iterate_levels(l: &LoewyMatrix, v: &[BigInt], s: usize) -> Vec<BigInt> {
    (0..s).fold(v.to_vec(), |acc, _| l.apply(&acc))
}

/// All entries ≤ 0 and at least one < 0.
pub fn is_negative(w: &[Vec<BigInt>]) -> bool {
    let entries = || w.iter().flatten();
    entries().all(|x| !x.is_positive()) && entries().any(|x| x.is_negative())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Verdict {
    Finite { h: usize },
    Tame { d: usize },
    Wild { rho: f64 },
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Finite { h } => write!(f, "Finite(h={h})"),
            Verdict::Tame { d } => write!(f, "Tame(d={d})"),
            Verdict::Wild { rho } => write!(f, "Wild(rho={rho:.9})"),
        }
    }
}

fn int_rows<S: Serializer>(rows: &[Vec<BigInt>], s: S) -> std::result::Result<S::Ok, S::Error> {
    let strings: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect();
    strings.serialize(s)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NegativityWitness {
    pub h: usize,
    /// L^h V₀
    #[serde(serialize_with = "int_rows")]
    pub columns: Vec<Vec<BigInt>>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassificationReport {
    pub verdict: Verdict,
    pub n: usize,
    pub vertices: usize,
    pub h_max: usize,
    pub char_poly: String,
    pub constant_term: String,
    pub certificate: SpectralCertificate,
    /// largest Jordan block of eigenvalue 1
    pub jordan_block_one: usize,
    pub negativity: Option<NegativityWitness>,
    pub notes: Vec<String>,
}

pub fn default_h_max(l: &LoewyMatrix) -> usize {
    2 * (l.n + 1) * l.m + 16
}

/// Size of the largest Jordan block of eigenvalue 1: the first k with
/// rank (L - I)^k = rank (L - I)^{k+1}.
pub fn jordan_block_one(l: &LoewyMatrix, multiplicity: usize) -> usize {
    if multiplicity == 0 {
        return 0;
    }
    let shifted = l.to_rat().sub(&RatMatrix::identity(l.size()));
    let mut power = shifted.clone();
    let mut previous = rank(&power);
    for k in 1..=multiplicity {
        power = power.mul(&shifted);
        let r = rank(&power);
        if r == previous {
            return k;
        }
        previous = r;
    }
    multiplicity
}

pub fn classify(l: &LoewyMatrix, h_max: usize) -> Result<ClassificationReport> {
    let poly = char_poly(&l.to_rat())?;
    let constant = poly.constant_term();
    if constant.abs() != BigInt::from(1) {
        return Err(Error::NonUnitConstantTerm { constant: constant.to_string() });
    }
    let certificate = spectral_radius_one_certificate(&poly)?;
    let one_multiplicity = match &certificate {
        SpectralCertificate::ExactlyOne { one_multiplicity, .. } => *one_multiplicity,
        SpectralCertificate::GreaterThanOne { .. } => multiplicity_of_one(&poly),
    };
    let jordan = jordan_block_one(l, one_multiplicity);

    let mut negativity = None;
    let mut w = l.v0();
    for h in 1..=h_max {
        w = l.apply_columns(&w);
        if is_negative(&w) {
            negativity = Some(NegativityWitness { h, columns: w });
            break;
        }
    }

    let mut notes = Vec::new();
    let verdict = match (&negativity, &certificate) {
        (Some(witness), _) => {
            if jordan > 0 {
                notes.push(format!(
                    "inconsistent evidence: negative L^h V0 at h = {} alongside eigenvalue 1",
                    witness.h
                ));
            }
            Verdict::Finite { h: witness.h }
        }
        (None, SpectralCertificate::ExactlyOne { .. }) => {
            if jordan == 0 {
                notes.push(format!(
                    "spectral radius 1 without eigenvalue 1 and no negative L^h V0 for h <= {h_max}; \
                     a larger scan bound may find one"
                ));
            } else {
                notes.push(format!("no negative L^h V0 for h <= {h_max}"));
            }
            Verdict::Tame { d: jordan }
        }
        (None, SpectralCertificate::GreaterThanOne { spectral_radius, .. }) => {
            Verdict::Wild { rho: *spectral_radius }
        }
    };
    Ok(ClassificationReport {
        verdict,
        n: l.n,
        vertices: l.m,
        h_max,
        char_poly: poly.to_string(),
        constant_term: constant.to_string(),
        certificate,
        jordan_block_one: jordan,
        negativity,
        notes,
    })
}

fn multiplicity_of_one(p: &IntPoly) -> usize {
    let mut q = p.clone();
    let mut k = 0;
    loop {
        let (quot, rem) = q.div_rem_monic(&IntPoly::x_minus_one());
        if !rem.is_zero() || q.degree() == 0 {
            return k;
        }
        q = quot;
        k += 1;
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GkEstimate {
    Finite(usize),
    Infinite,
}

impl fmt::Display for GkEstimate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GkEstimate::Finite(d) => write!(f, "{d}"),
            GkEstimate::Infinite => f.write_str("∞"),
        }
    }
}

impl Serialize for GkEstimate {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            GkEstimate::Finite(d) => s.serialize_u64(*d as u64),
            GkEstimate::Infinite => s.serialize_str("infinite"),
        }
    }
}

pub fn gk_estimate(report: &ClassificationReport) -> GkEstimate {
    match report.verdict {
        Verdict::Finite { .. } => GkEstimate::Finite(0),
        Verdict::Tame { d } => GkEstimate::Finite(d),
        Verdict::Wild { .. } => GkEstimate::Infinite,
    }
}

/// Least-squares slope, intercept and RMS residual.
fn fit(points: &[(f64, f64)]) -> (f64, f64, f64) {
    let k = points.len() as f64;
    let (sx, sy) = points.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y));
    let (mx, my) = (sx / k, sy / k);
    let sxx: f64 = points.iter().map(|(x, _)| (x - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    let intercept = my - slope * mx;
    let rms = (points.iter().map(|(x, y)| (y - intercept - slope * x).powi(2)).sum::<f64>() / k).sqrt();
    (slope, intercept, rms)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthReport {
    /// (s, ‖L^s v‖₁)
    pub samples: Vec<(usize, f64)>,
    /// first s with a negative entry, where the probe stopped
    pub periodic_at: Option<usize>,
    /// slope of log‖L^s v‖ against log s over the tail half
    pub polynomial_degree: Option<f64>,
    pub polynomial_residual: Option<f64>,
    /// slope of log‖L^s v‖ against s over the tail half
    pub exponential_rate: Option<f64>,
    pub exponential_residual: Option<f64>,
}

/// Growth diagnostics for L^s v, s = 1..=s_max. Never a verdict.
pub fn complexity_probe(l: &LoewyMatrix, v: &[BigInt], s_max: usize) -> GrowthReport {
    let mut samples = Vec::new();
    let mut periodic_at = None;
    let mut w = v.to_vec();
    for s in 1..=s_max.max(8) {
        w = l.apply(&w);
        if w.iter().any(Signed::is_negative) {
            periodic_at = Some(s);
            break;
        }
        let norm: BigInt = w.iter().sum();
        samples.push((s, norm.to_f64().unwrap_or(f64::INFINITY)));
    }
    let tail: Vec<(usize, f64)> =
        samples[samples.len() / 2..].iter().copied().filter(|(_, x)| *x > 0.0 && x.is_finite()).collect();
    let mut report = GrowthReport {
        samples,
        periodic_at,
        polynomial_degree: None,
        polynomial_residual: None,
        exponential_rate: None,
        exponential_residual: None,
    };
    if periodic_at.is_none() && tail.len() >= 2 {
        let logs: Vec<(f64, f64)> = tail.iter().map(|&(s, x)| ((s as f64).ln(), x.ln())).collect();
        let (deg, _, res) = fit(&logs);
        report.polynomial_degree = Some(deg);
        report.polynomial_residual = Some(res);
        let lin: Vec<(f64, f64)> = tail.iter().map(|&(s, x)| (s as f64, x.ln())).collect();
        let (rate, _, res) = fit(&lin);
        report.exponential_rate = Some(rate);
        report.exponential_residual = Some(res);
    }
    report
}

/// e_i placed in the top block.
pub fn simple_level_vector(l: &LoewyMatrix, i: usize) -> Vec<BigInt> {
    (0..l.size()).map(|r| BigInt::from(i64::from(r == i))).collect()
}

pub fn to_rational_vector(v: &[BigInt]) -> Vec<Rational> {
    v.iter().map(|x| Rational::from_integer(x.clone())).collect()
}
