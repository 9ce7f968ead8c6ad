//! Results checked against independent computations: a fraction-free
//! integer rank, a modular rank of ideal components, and floating-point
//! eigenvalues from nalgebra.

mod common;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use proptest::prelude::*;
use qlab::graded::graded_dims;
use qlab::linalg::{kernel_basis, rank, rat, ratio, rref, RatMatrix, Rational};
use qlab::loewy::{classify, loewy_matrix, Verdict};
use qlab::mckay::AdeFamily;
use qlab::poly::{char_poly, max_root_modulus, roots, spectral_radius_one_certificate, IntPoly, SpectralCertificate};
use qlab::quiver::{BoundQuiver, Path};
use qlab::trivext::trivial_extension;
use rand::Rng;

use common::{a3_zero, kronecker, random_quadratic, sr, xi};

/// Bareiss elimination on the integer matrix obtained by clearing
/// denominators row by row.
fn bareiss_rank(m: &RatMatrix) -> usize {
    let mut a: Vec<Vec<BigInt>> = (0..m.rows())
        .map(|i| {
            let row = m.row(i);
            let den = row.iter().fold(BigInt::from(1), |acc, x| acc * x.denom());
            row.iter().map(|x| x.numer() * (&den / x.denom())).collect()
        })
        .collect();
    let (rows, cols) = (m.rows(), m.cols());
    let mut prev = BigInt::from(1);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        for i in r + 1..rows {
            for k in c + 1..cols {
                let v = &a[r][c] * &a[i][k] - &a[i][c] * &a[r][k];
                a[i][k] = v / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

fn rational_matrix() -> impl Strategy<Value = RatMatrix> {
    (1usize..7, 1usize..7).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec((-3i64..=3, 1i64..=3), c), r).prop_map(|rows| {
            RatMatrix::from_rows(rows.into_iter().map(|row| row.into_iter().map(|(n, d)| ratio(n, d)).collect()).collect())
        })
    })
}

proptest! {
    #[test]
    fn rank_agrees_with_bareiss(m in rational_matrix()) {
        prop_assert_eq!(rank(&m), bareiss_rank(&m));
    }

    #[test]
    fn kernel_is_annihilated_and_complementary(m in rational_matrix()) {
        let k = kernel_basis(&m);
        prop_assert_eq!(k.len() + rank(&m), m.cols());
        for v in &k {
            prop_assert!(m.mul_vec(v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn rref_is_idempotent(m in rational_matrix()) {
        let once = rref(&m);
        prop_assert_eq!(rref(&once.matrix), once);
    }
}

#[test]
fn six_by_six_rank_oracle() {
    let mut rng = common::rng(6);
    for _ in 0..50 {
        let rank_target = rng.gen_range(1..=6);
        // product of 6×k and k×6 factors has rank ≤ k
        let left: Vec<Vec<Rational>> = (0..6).map(|_| (0..rank_target).map(|_| common::small_rational(&mut rng)).collect()).collect();
        let right: Vec<Vec<Rational>> = (0..rank_target).map(|_| (0..6).map(|_| common::small_rational(&mut rng)).collect()).collect();
        let m = RatMatrix::from_rows(left).mul(&RatMatrix::from_rows(right));
        assert_eq!(rank(&m), bareiss_rank(&m));
        assert!(rank(&m) <= rank_target);
    }
}

#[test]
fn kernel_of_a_two_by_three() {
    let m = RatMatrix::from_i64(&[vec![1, 1, 0], vec![0, 1, 1]]);
    let k = kernel_basis(&m);
    assert_eq!(k.len(), 1);
    let v = &k[0];
    assert_eq!(v.iter().map(|x| x / &v[0]).collect::<Vec<_>>(), vec![rat(1), rat(-1), rat(1)]);
}

// ---- graded dimensions against a modular rank of the ideal ----

const PRIME: u64 = 2_147_483_647;

fn mod_p(x: &Rational) -> u64 {
    let p = BigInt::from(PRIME);
    let reduce = |v: &BigInt| (((v % &p) + &p) % &p).to_u64().unwrap();
    let (n, d) = (reduce(x.numer()), reduce(x.denom()));
    n * pow_mod(d, PRIME - 2) % PRIME
}

fn pow_mod(mut b: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % PRIME;
        }
        b = b * b % PRIME;
        e >>= 1;
    }
    acc
}

fn rank_mod_p(mut rows: Vec<Vec<u64>>, cols: usize) -> usize {
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(r, p);
        let inv = pow_mod(rows[r][c], PRIME - 2);
        for i in r + 1..rows.len() {
            let f = rows[i][c] * inv % PRIME;
            if f != 0 {
                for k in c..cols {
                    rows[i][k] = (rows[i][k] + PRIME - f * rows[r][k] % PRIME) % PRIME;
                }
            }
        }
        r += 1;
    }
    r
}

/// dim e_j Λ_t e_i as |paths| minus the rank of all p·ρ·q landing there.
fn oracle_dim(bq: &BoundQuiver, i: usize, j: usize, t: usize) -> usize {
    let q = bq.quiver();
    let paths = q.paths_between(i, j, t);
    if paths.is_empty() {
        return 0;
    }
    let mut rows = Vec::new();
    for rel in bq.relations().iter().filter(|r| r.length() <= t) {
        let pre = t - rel.length();
        for a in 0..=pre {
            let befores = q.paths_between(i, rel.source(), a);
            let afters = q.paths_between(rel.target(), j, pre - a);
            for before in &befores {
                for after in &afters {
                    let mut row = vec![0u64; paths.len()];
                    for (p, c) in rel.terms() {
                        let full: Path = after.after(&p.after(before).unwrap()).unwrap();
                        let k = paths.binary_search(&full).expect("path listed");
                        row[k] = (row[k] + mod_p(c)) % PRIME;
                    }
                    rows.push(row);
                }
            }
        }
    }
    paths.len() - rank_mod_p(rows, paths.len())
}

fn check_dims(bq: &BoundQuiver, t_max: usize) {
    let (gd, _) = graded_dims(bq, t_max);
    let m = bq.quiver().vertex_count();
    for t in 0..=t_max {
        for i in 0..m {
            for j in 0..m {
                assert_eq!(gd.block(t)[j][i], oracle_dim(bq, i, j, t), "t={t} i={i} j={j}");
            }
        }
    }
}

#[test]
fn graded_dims_of_mckay_algebras() {
    check_dims(&sr(4, 4), 4);
    check_dims(&xi(AdeFamily::D, 4, vec![]), 4);
    check_dims(&xi(AdeFamily::A, 4, vec![0, 2]), 4);
}

#[test]
fn graded_dims_of_trivial_extensions() {
    check_dims(&trivial_extension(&a3_zero(), None).unwrap().bound, 3);
    check_dims(&trivial_extension(&kronecker(3), None).unwrap().bound, 3);
}

#[test]
fn graded_dims_of_random_quadratic_algebras() {
    let mut rng = common::rng(42);
    for _ in 0..40 {
        check_dims(&random_quadratic(&mut rng, 4, 6), 3);
    }
}

#[test]
fn trivial_extension_doubles_the_slice_algebra() {
    let slice = qlab::mckay::slice_relations_sr(4, 4, qlab::mckay::Which::Primal).unwrap();
    let te = trivial_extension(&slice, None).unwrap();
    let (base, _) = graded_dims(&slice, 3);
    let (ext, _) = graded_dims(&te.bound, te.n + 2);
    assert_eq!(ext.total(), 2 * base.total());
}

// ---- characteristic polynomials against nalgebra eigenvalues ----

/// Product of random elementary integer matrices: determinant ±1.
fn unimodular(rng: &mut impl Rng, n: usize) -> Vec<Vec<i64>> {
    let mut m: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    for _ in 0..3 * n {
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        match rng.gen_range(0..3) {
            0 if a != b => {
                let f = rng.gen_range(-2..=2);
                for k in 0..n {
                    m[a][k] += f * m[b][k];
                }
            }
            1 => m.swap(a, b),
            _ => m[a].iter_mut().for_each(|x| *x = -*x),
        }
    }
    m
}

#[test]
fn char_poly_roots_match_nalgebra() {
    let mut rng = common::rng(100);
    for case in 0..100 {
        let n = rng.gen_range(2..=7);
        let m = unimodular(&mut rng, n);
        let p = char_poly(&RatMatrix::from_i64(&m)).unwrap();
        assert_eq!(p.degree(), n);
        assert!(p.constant_term() == BigInt::from(1) || p.constant_term() == BigInt::from(-1), "case {case}");

        let dm = DMatrix::from_fn(n, n, |i, j| m[i][j] as f64);
        let eig = dm.complex_eigenvalues();
        let scale: f64 = p.coeffs().iter().map(|c| c.to_f64().unwrap().abs()).sum::<f64>().max(1.0);
        for z in eig.iter() {
            let residual = p.eval_f64(Complex64::new(z.re, z.im)).norm();
            assert!(residual <= 1e-6 * scale * (1.0 + z.norm()).powi(n as i32), "case {case}: p({z}) = {residual}");
        }
        let radius = eig.iter().map(|z| z.norm()).fold(0.0, f64::max);
        // repeated eigenvalues cost nalgebra about a cube root of machine precision
        assert!((max_root_modulus(&p) - radius).abs() <= 1e-4 * radius.max(1.0), "case {case}: {p:?}");
        let ours: f64 = roots(&p).iter().map(|z| z.norm()).fold(0.0, f64::max);
        assert!((ours - radius).abs() <= 1e-4 * radius.max(1.0), "case {case}");

        match spectral_radius_one_certificate(&p).unwrap() {
            SpectralCertificate::ExactlyOne { .. } => assert!(radius < 1.0 + 1e-4, "case {case}"),
            SpectralCertificate::GreaterThanOne { spectral_radius, .. } => {
                assert!(radius > 1.0 + 1e-9, "case {case}");
                assert!((spectral_radius - radius).abs() <= 1e-4 * radius);
            }
        }
    }
}

#[test]
fn golden_ratio_squared_witness() {
    let p = IntPoly::from_i64(&[1, -3, 1]);
    let SpectralCertificate::GreaterThanOne { spectral_radius, .. } = spectral_radius_one_certificate(&p).unwrap() else {
        panic!("x² - 3x + 1 has a root above 1");
    };
    assert!((spectral_radius - (3.0 + 5f64.sqrt()) / 2.0).abs() < 1e-12);
    let cube = IntPoly::x_minus_one().pow(3);
    assert!(matches!(
        spectral_radius_one_certificate(&cube).unwrap(),
        SpectralCertificate::ExactlyOne { one_multiplicity: 3, .. }
    ));
}

#[test]
fn wild_witness_matches_nalgebra_spectral_radius() {
    let te = trivial_extension(&kronecker(3), None).unwrap();
    let (gd, _) = graded_dims(&te.bound, 3);
    let l = loewy_matrix(&gd, 1).unwrap();
    let Verdict::Wild { rho } = classify(&l, 64).unwrap().verdict else { panic!("K3 is wild") };
    let dm = DMatrix::from_fn(l.size(), l.size(), |i, j| l.entries[i][j] as f64);
    let radius = dm.complex_eigenvalues().iter().map(|z| z.norm()).fold(0.0, f64::max);
    assert!((rho - radius).abs() < 1e-9);
}
