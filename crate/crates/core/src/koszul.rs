//! Minimal graded projective resolutions of the simple modules.
//!
//! Left modules over a finite-dimensional graded algebra given by an
//! [`AlgebraBasis`]. A graded free module ⊕ Λe_v⟨d⟩ has coordinates
//! (generator, basis element b with s(b) = v), living in grade d + deg b at
//! vertex t(b). Submodules are stored blockwise as reduced row bases.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::graded::AlgebraBasis;
use crate::linalg::{kernel_basis, rref_rows, EchelonBasis, RatMatrix, Rational};

type Block = (usize, usize);

struct Free {
    /// (degree, vertex) per generator
    gens: Vec<(usize, usize)>,
    /// (generator, basis element) per coordinate
    coords: Vec<(usize, usize)>,
    blocks: BTreeMap<Block, Vec<usize>>,
    position: HashMap<(usize, usize), (Block, usize)>,
}

impl Free {
    fn new(alg: &AlgebraBasis, gens: Vec<(usize, usize)>) -> Self {
        let mut free = Free { gens, coords: Vec::new(), blocks: BTreeMap::new(), position: HashMap::new() };
        for (g, &(d, v)) in free.gens.iter().enumerate() {
            for (b, e) in alg.elements().iter().enumerate() {
                if e.source != v {
                    continue;
                }
                let key = (d + e.degree, e.target);
                let list = free.blocks.entry(key).or_default();
                free.position.insert((g, b), (key, list.len()));
                list.push(free.coords.len());
                free.coords.push((g, b));
            }
        }
        free
    }

    fn block_len(&self, key: Block) -> usize {
        self.blocks.get(&key).map_or(0, Vec::len)
    }

    /// Left action of basis element `x` on a vector of block `key`.
    fn act(&self, alg: &AlgebraBasis, x: usize, key: Block, v: &[Rational]) -> (Block, Vec<Rational>) {
        let e = alg.element(x);
        let out_key = (key.0 + e.degree, e.target);
        let mut out = vec![Rational::zero(); self.block_len(out_key)];
        if e.source != key.1 {
            return (out_key, out);
        }
        for (k, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (g, b) = self.coords[self.blocks[&key][k]];
            for (z, y) in alg.mul(x, b) {
                let (_, pos) = self.position[&(g, z)];
                out[pos] += c * y;
            }
        }
        (out_key, out)
    }
}

/// Graded submodule, blockwise.
type Sub = BTreeMap<Block, Vec<Vec<Rational>>>;

fn sub_dims(sub: &Sub) -> BTreeMap<Block, usize> {
    sub.iter().filter(|(_, rows)| !rows.is_empty()).map(|(&k, rows)| (k, rows.len())).collect()
}

/// Minimal generators: per block, elements of K outside the span of
/// arrows times K one grade lower.
fn minimal_generators(alg: &AlgebraBasis, free: &Free, sub: &Sub) -> Vec<(Block, Vec<Rational>)> {
    let q = alg.quiver();
    let arrow_elements: Vec<usize> = (0..q.arrow_count())
        .map(|a| {
            let arrow = q.arrow(a);
            let nf = alg.normal_form(&crate::quiver::Path::raw(vec![a], arrow.source, arrow.target));
            debug_assert_eq!(nf.len(), 1);
            *nf.keys().next().expect("arrows are basis elements")
        })
        .collect();
    let mut out = Vec::new();
    for (&key, rows) in sub {
        let (d, v) = key;
        let mut span = EchelonBasis::new(free.block_len(key));
        if d > 0 {
            for &a in q.in_arrows(v) {
                let lower = (d - 1, q.arrow(a).source);
                for row in sub.get(&lower).into_iter().flatten() {
                    let (_, image) = free.act(alg, arrow_elements[a], lower, row);
                    span.insert(&image);
                }
            }
        }
        for row in rows {
            if span.insert(row) {
                out.push((key, row.clone()));
            }
        }
    }
    out
}

/// Kernel of F' → F sending generator g' to its image x_{g'}.
fn kernel_of_cover(alg: &AlgebraBasis, target: &Free, cover: &Free, images: &[(Block, Vec<Rational>)]) -> Sub {
    let mut kernel = Sub::new();
    for (&key, coords) in &cover.blocks {
        let rows = target.block_len(key);
        let mut m = RatMatrix::zeros(rows, coords.len());
        for (col, &c) in coords.iter().enumerate() {
            let (g, b) = cover.coords[c];
            let (img_key, img) = &images[g];
            let (k, v) = target.act(alg, b, *img_key, img);
            debug_assert_eq!(k, key);
            for (r, x) in v.into_iter().enumerate() {
                if !x.is_zero() {
                    m.set(r, col, x);
                }
            }
        }
        let mut basis = kernel_basis(&m);
        if !basis.is_empty() {
            rref_rows(&mut basis, coords.len());
            kernel.insert(key, basis);
        }
    }
    kernel
}

/// Minimal resolution data of one simple module.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimpleResolution {
    pub vertex: usize,
    /// (degree, vertex) of the generators of P^s, s = 0..
    pub generators: Vec<Vec<(usize, usize)>>,
    /// dimensions of Ω^s S per (grade, vertex), s = 0..
    pub syzygy_dims: Vec<BTreeMap<(usize, usize), usize>>,
}

impl SimpleResolution {
    /// Stacked dimension vectors of Ω^s S in grades s..s+n, vertex-major
    /// within each grade.
    pub fn level_vector(&self, s: usize, n: usize, vertices: usize) -> Vec<i64> {
        let dims = &self.syzygy_dims[s];
        (0..=n)
            .flat_map(|k| (0..vertices).map(move |v| (s + k, v)))
            .map(|key| dims.get(&key).copied().unwrap_or(0) as i64)
            .collect()
    }
}

/// Resolves the simple at `vertex` through P^steps, which yields syzygies
/// Ω^0..Ω^{steps+1}. The basis must be complete.
pub fn resolve_simple(alg: &AlgebraBasis, vertex: usize, steps: usize) -> SimpleResolution {
    assert!(alg.is_complete(), "resolutions need the whole algebra");
    let mut free = Free::new(alg, vec![(0, vertex)]);
    let mut sub = Sub::new();
    for (&key, coords) in &free.blocks {
        if key.0 > 0 {
            let rows = (0..coords.len())
                .map(|k| (0..coords.len()).map(|c| if c == k { Rational::one() } else { Rational::zero() }).collect())
                .collect();
            sub.insert(key, rows);
        }
    }
    let mut res = SimpleResolution {
        vertex,
        generators: vec![vec![(0, vertex)]],
        syzygy_dims: vec![BTreeMap::from([((0, vertex), 1)]), sub_dims(&sub)],
    };
    for _ in 1..=steps {
        let gens = minimal_generators(alg, &free, &sub);
        res.generators.push(gens.iter().map(|(key, _)| *key).collect());
        let cover = Free::new(alg, gens.iter().map(|(key, _)| *key).collect());
        sub = kernel_of_cover(alg, &free, &cover, &gens);
        res.syzygy_dims.push(sub_dims(&sub));
        free = cover;
    }
    res
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum KoszulStatus {
    /// P^0..P^q linear and ker f_q = Ω^{q+1} concentrated in grade q + p
    Finite { q: usize, degree: usize },
    /// every computed step is linear
    LinearThrough { t: usize },
    /// the first step with a generator outside its own degree
    NonLinear { step: usize },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KoszulProfile {
    pub p: usize,
    pub t_max: usize,
    /// generator degrees of P^t for Λ₀ = ⊕ S_i, sorted
    pub generator_degrees: Vec<Vec<usize>>,
    pub status: KoszulStatus,
    #[serde(skip)]
    pub resolutions: Vec<SimpleResolution>,
}

/// Resolution profile of Λ₀ through P^{t_max}, with p = n + 1.
pub fn koszul_profile(alg: &AlgebraBasis, n: usize, t_max: usize) -> KoszulProfile {
    let p = n + 1;
    let m = alg.quiver().vertex_count();
    let resolutions: Vec<SimpleResolution> = (0..m).map(|i| resolve_simple(alg, i, t_max)).collect();
    let generator_degrees: Vec<Vec<usize>> = (0..=t_max)
        .map(|t| {
            let mut all: Vec<usize> = resolutions.iter().flat_map(|r| r.generators[t].iter().map(|g| g.0)).collect();
            all.sort_unstable();
            all
        })
        .collect();
    let mut status = KoszulStatus::LinearThrough { t: t_max };
    for t in 0..=t_max {
        if generator_degrees[t].iter().any(|&d| d != t) {
            status = KoszulStatus::NonLinear { step: t };
            break;
        }
        let concentrated = resolutions.iter().all(|r| {
            let dims = &r.syzygy_dims[t + 1];
            !dims.is_empty() && dims.keys().all(|&(g, _)| g == t + p)
        });
        if concentrated {
            status = KoszulStatus::Finite { q: t, degree: t + p };
            break;
        }
    }
    KoszulProfile { p, t_max, generator_degrees, status, resolutions }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::graded_dims;
    use crate::io::parse_bound_quiver;
    use crate::trivext::trivial_extension;

    #[test]
    fn dual_numbers_resolve_periodically() {
        // k[x]/(x²): Ω^s S = S⟨s⟩, linear forever
        let bq = parse_bound_quiver(
            r#"{"vertices":["x"],"arrows":[{"id":"c","from":"x","to":"x"}],
                "relations":[[{"coeff":"1","path":["c","c"]}]]}"#,
        )
        .unwrap();
        let (_, alg) = graded_dims(&bq, 3);
        let prof = koszul_profile(&alg, 0, 5);
        assert_eq!(prof.generator_degrees, (0..=5).map(|t| vec![t]).collect::<Vec<_>>());
        // p = 1: Ω^{q+1} sits in grade q + 1 already at q = 0
        assert_eq!(prof.status, KoszulStatus::Finite { q: 0, degree: 1 });
    }

    #[test]
    fn a3_trivial_extension_has_finite_q() {
        let bq = parse_bound_quiver(
            r#"{"vertices":["1","2","3"],
               "arrows":[{"id":"alpha","from":"1","to":"2"},{"id":"beta","from":"2","to":"3"}],
               "relations":[[{"coeff":"1","path":["beta","alpha"]}]]}"#,
        )
        .unwrap();
        let te = trivial_extension(&bq, None).unwrap();
        let (_, alg) = graded_dims(&te.bound, 3);
        let prof = koszul_profile(&alg, 1, 4);
        assert_eq!(prof.status, KoszulStatus::Finite { q: 2, degree: 4 });
    }

    #[test]
    fn syzygy_dimensions_are_consistent() {
        // 0 → Ω^{s+1} → P^s → Ω^s → 0 blockwise
        let bq = parse_bound_quiver(
            r#"{"vertices":["1","2"],
               "arrows":[{"id":"a","from":"1","to":"2"},{"id":"b","from":"1","to":"2"}]}"#,
        )
        .unwrap();
        let te = trivial_extension(&bq, None).unwrap();
        let (gd, alg) = graded_dims(&te.bound, 3);
        for i in 0..2 {
            let res = resolve_simple(&alg, i, 3);
            for s in 0..=3 {
                let mut p: BTreeMap<(usize, usize), usize> = BTreeMap::new();
                for &(d, v) in &res.generators[s] {
                    for (t, block) in gd.blocks.iter().enumerate() {
                        for (j, row) in block.iter().enumerate() {
                            if row[v] > 0 {
                                *p.entry((d + t, j)).or_default() += row[v];
                            }
                        }
                    }
                }
                let mut sum = res.syzygy_dims[s].clone();
                for (&k, &x) in &res.syzygy_dims[s + 1] {
                    *sum.entry(k).or_default() += x;
                }
                assert_eq!(sum, p, "vertex {i}, step {s}");
            }
        }
    }
}
