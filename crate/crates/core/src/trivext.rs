//! Trivial extensions Δ(Λ) = Λ ⊕ DΛ of n-properly-graded algebras.
//!
//! The returning-arrow quiver adds one arrow β_p: t(p) → s(p) per element
//! p of the top degree basis. Δ is materialized as a multiplication table
//! on Λ's basis and its dual basis; the degree-2 relations are read off the
//! kernel of kQ̃₂ → Δ₂ and then checked to present Δ in every degree.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graded::{default_degree_cap, is_n_properly_graded, sparse_add, AlgebraBasis, ProperGrading, Sparse};
use crate::linalg::{kernel_basis, rank_of_rows, rref_rows, RatMatrix, Rational};
use crate::quiver::{BoundQuiver, Path, Quiver, RelationElement};

#[derive(Clone, Debug, PartialEq)]
pub struct TrivialExtension {
    pub base: BoundQuiver,
    /// Q̃ with the degree-2 relations of Δ; base arrows keep their indices
    pub bound: BoundQuiver,
    pub n: usize,
    /// ν multiplies each arrow by this sign
    pub twist: i64,
    base_arrows: usize,
}

impl TrivialExtension {
    pub fn is_returning(&self, arrow: usize) -> bool {
        arrow >= self.base_arrows
    }

    pub fn returning_arrows(&self) -> std::ops::Range<usize> {
        self.base_arrows..self.bound.quiver().arrow_count()
    }
}

/// Λ ⊕ DΛ on Λ's basis: ids below `len` are basis elements of Λ, id
/// `len + k` is the dual of basis element k.
struct DeltaTable<'a> {
    alg: &'a AlgebraBasis,
    n: usize,
    twist: i64,
}

impl DeltaTable<'_> {
    fn len(&self) -> usize {
        self.alg.len()
    }

    fn dual(&self, k: usize) -> usize {
        self.len() + k
    }

    /// Product x·y ("y then x") of two basis ids of Δ.
    fn mul(&self, x: usize, y: usize) -> Sparse {
        let alg = self.alg;
        let n = self.len();
        match (x < n, y < n) {
            (true, true) => alg.mul(x, y),
            (false, false) => Sparse::new(),
            (true, false) => {
                // (a·c*)(z) = c*(z·a)
                let (a, c) = (alg.element(x), alg.element(y - n));
                if a.source != c.source || a.degree > c.degree {
                    return Sparse::new();
                }
                let mut out = Sparse::new();
                for &z in alg.basis_ids(c.degree - a.degree, a.target, c.target) {
                    if let Some(coef) = alg.mul(z, x).get(&(y - n)) {
                        sparse_add(&mut out, self.dual(z), coef);
                    }
                }
                out
            }
            (false, true) => {
                // (c*·ν(b))(z) = c*(ν(b)·z)
                let (c, b) = (alg.element(x - n), alg.element(y));
                if b.target != c.target || b.degree > c.degree {
                    return Sparse::new();
                }
                let sign = if self.twist < 0 && b.degree % 2 == 1 { -Rational::one() } else { Rational::one() };
                let mut out = Sparse::new();
                for &z in alg.basis_ids(c.degree - b.degree, c.source, b.source) {
                    if let Some(coef) = alg.mul(y, z).get(&(x - n)) {
                        sparse_add(&mut out, self.dual(z), &(coef * &sign));
                    }
                }
                out
            }
        }
    }

    fn mul_sparse(&self, u: &Sparse, v: &Sparse) -> Sparse {
        let mut out = Sparse::new();
        for (&x, c) in u {
            for (&y, d) in v {
                for (z, e) in self.mul(x, y) {
                    sparse_add(&mut out, z, &(c * d * e));
                }
            }
        }
        out
    }

    fn degree(&self, id: usize) -> usize {
        if id < self.len() {
            self.alg.element(id).degree
        } else {
            self.n + 1 - self.alg.element(id - self.len()).degree
        }
    }
}

fn returning_arrow_id(q: &Quiver, base: &Quiver, p: &Path) -> String {
    let stem = if p.is_empty() {
        base.vertex_id(p.source()).to_string()
    } else {
        p.ids(base).join(".")
    };
    let mut id = format!("r:{stem}");
    while q.arrow_by_id(&id).is_ok() {
        id.push('\'');
    }
    id
}

pub fn trivial_extension(bq: &BoundQuiver, twist: Option<i64>) -> Result<TrivialExtension> {
    trivial_extension_with_cap(bq, twist, default_degree_cap(bq))
}

/// Builds Δ with ν(α) = twist·α, the default twist being (-1)^n.
pub fn trivial_extension_with_cap(bq: &BoundQuiver, twist: Option<i64>, cap: usize) -> Result<TrivialExtension> {
    let n = match is_n_properly_graded(bq, cap)? {
        ProperGrading::Yes { n } => n,
        ProperGrading::No { shorter, longer } => {
            return Err(Error::NotProperlyGraded(format!("maximal bound paths {shorter} and {longer}")))
        }
    };
    let twist = match twist {
        None => if n % 2 == 0 { 1 } else { -1 },
        Some(s) if s == 1 || s == -1 => s,
        Some(s) => return Err(Error::Validation(format!("twist sign must be 1 or -1, got {s}"))),
    };
    let base_q = bq.quiver();
    let alg = AlgebraBasis::compute(bq, n + 1);
    let table = DeltaTable { alg: &alg, n, twist };

    let mut q = base_q.clone();
    let mut images: Vec<Sparse> = base_q
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, arrow)| alg.normal_form(&Path::raw(vec![a], arrow.source, arrow.target)))
        .collect();
    let top: Vec<usize> = (0..alg.len()).filter(|&k| alg.element(k).degree == n).collect();
    for &k in &top {
        let e = alg.element(k);
        let id = returning_arrow_id(&q, base_q, &e.path);
        q.add_arrow(id, e.target, e.source)?;
        images.push(Sparse::from([(table.dual(k), Rational::one())]));
    }

    let image_of = |p: &Path| -> Sparse {
        let mut v = Sparse::from([(alg.vertex_element(p.source()), Rational::one())]);
        for &a in p.arrows().iter().rev() {
            v = table.mul_sparse(&images[a], &v);
        }
        v
    };

    let nv = q.vertex_count();
    let mut relations = Vec::new();
    for i in 0..nv {
        for j in 0..nv {
            let paths = q.paths_between(i, j, 2);
            if paths.is_empty() {
                continue;
            }
            let cols: Vec<Sparse> = paths.iter().map(&image_of).collect();
            let targets: Vec<usize> = {
                let mut s: Vec<usize> = cols.iter().flat_map(|c| c.keys().copied()).collect();
                s.sort_unstable();
                s.dedup();
                s
            };
            let mut m = RatMatrix::zeros(targets.len(), paths.len());
            for (col, v) in cols.iter().enumerate() {
                for (id, c) in v {
                    let row = targets.binary_search(id).expect("collected");
                    m.set(row, col, c.clone());
                }
            }
            let mut kernel = kernel_basis(&m);
            rref_rows(&mut kernel, paths.len());
            relations.extend(kernel.iter().filter_map(|v| RelationElement::from_coordinates(&paths, v)));
        }
    }
    let bound = BoundQuiver::new(q, relations, Some(n))?;
    verify_presentation(&bound, &table, &image_of, n)?;
    Ok(TrivialExtension { base: bq.clone(), bound, n, twist, base_arrows: base_q.arrow_count() })
}

/// Checks that kQ̃/(ρ₂) → Δ is an isomorphism, degree by degree.
fn verify_presentation(
    bound: &BoundQuiver,
    table: &DeltaTable<'_>,
    image_of: &dyn Fn(&Path) -> Sparse,
    n: usize,
) -> Result<()> {
    let presented = AlgebraBasis::compute(bound, n + 2);
    let nv = bound.quiver().vertex_count();
    let alg = table.alg;
    for t in 0..=n + 2 {
        for i in 0..nv {
            for j in 0..nv {
                let mut want = alg.basis_ids(t, i, j).len();
                if t <= n + 1 {
                    want += alg.basis_ids(n + 1 - t, j, i).len();
                }
                let ids = presented.basis_ids(t, i, j);
                if ids.len() != want {
                    return Err(Error::NonQuadratic { degree: t });
                }
                if ids.is_empty() {
                    continue;
                }
                let rows: Vec<Sparse> = ids.iter().map(|&b| image_of(&presented.element(b).path)).collect();
                let dim = 2 * alg.len();
                let dense: Vec<Vec<Rational>> = rows
                    .iter()
                    .map(|v| {
                        let mut row = vec![Rational::zero(); dim];
                        for (k, c) in v {
                            debug_assert_eq!(table.degree(*k), t);
                            row[*k] = c.clone();
                        }
                        row
                    })
                    .collect();
                if rank_of_rows(&dense, dim) != ids.len() {
                    return Err(Error::NonQuadratic { degree: t });
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::{graded_dims, stable_translation_check};
    use crate::io::parse_bound_quiver;

    fn a3(relations: &str) -> BoundQuiver {
        parse_bound_quiver(&format!(
            r#"{{"vertices":["1","2","3"],
               "arrows":[{{"id":"alpha","from":"1","to":"2"}},{{"id":"beta","from":"2","to":"3"}}],
               "relations":{relations}}}"#
        ))
        .unwrap()
    }

    #[test]
    fn a3_with_zero_relation() {
        let te = trivial_extension(&a3(r#"[[{"coeff":"1","path":["beta","alpha"]}]]"#), None).unwrap();
        assert_eq!(te.n, 1);
        assert_eq!(te.bound.quiver().arrow_count(), 4);
        let (gd, _) = graded_dims(&te.bound, 4);
        assert_eq!(gd.total(), 10);
        assert!(stable_translation_check(&gd, 1).is_trivial());
        let q = te.bound.quiver();
        let shown: Vec<String> = te.bound.relations().iter().map(|r| r.display(q)).collect();
        assert_eq!(te.bound.relations().len(), 3, "{shown:?}");
        // the commutation at vertex 2 pairs alpha·(return of alpha) with (return of beta)·beta
        let mixed = te.bound.relations().iter().find(|r| r.terms().len() == 2).unwrap();
        assert_eq!((q.vertex_id(mixed.source()), q.vertex_id(mixed.target())), ("2", "2"));
    }

    #[test]
    fn point_gives_dual_numbers() {
        let bq = parse_bound_quiver(r#"{"vertices":["x"],"arrows":[]}"#).unwrap();
        let te = trivial_extension(&bq, None).unwrap();
        assert_eq!(te.n, 0);
        assert_eq!(te.bound.quiver().arrow_count(), 1);
        assert_eq!(te.bound.relations().len(), 1);
        assert_eq!(te.bound.relations()[0].terms()[0].0.len(), 2);
    }

    #[test]
    fn a2_is_not_quadratic() {
        let bq = parse_bound_quiver(r#"{"vertices":["1","2"],"arrows":[{"id":"a","from":"1","to":"2"}]}"#).unwrap();
        assert_eq!(trivial_extension(&bq, None), Err(Error::NonQuadratic { degree: 3 }));
    }

    #[test]
    fn kronecker_doubles_dimension() {
        for k in 2..=3 {
            let arrows: Vec<String> =
                (0..k).map(|a| format!(r#"{{"id":"x{a}","from":"1","to":"2"}}"#)).collect();
            let bq = parse_bound_quiver(&format!(r#"{{"vertices":["1","2"],"arrows":[{}]}}"#, arrows.join(",")))
                .unwrap();
            let te = trivial_extension(&bq, None).unwrap();
            let (gd, _) = graded_dims(&te.bound, 3);
            assert_eq!(gd.total(), 2 * (2 + k));
            assert!(stable_translation_check(&gd, 1).is_trivial());
        }
    }

    #[test]
    fn twist_signs_are_validated() {
        let bq = a3(r#"[[{"coeff":"1","path":["beta","alpha"]}]]"#);
        assert!(trivial_extension(&bq, Some(1)).is_ok());
        assert!(matches!(trivial_extension(&bq, Some(2)), Err(Error::Validation(_))));
        let free = a3("[]");
        assert!(matches!(trivial_extension(&free, None), Ok(_) | Err(Error::NonQuadratic { .. })));
    }

    #[test]
    fn path_algebra_with_unequal_maximal_paths() {
        let text = r#"{"vertices":["1","2","3","4"],
            "arrows":[{"id":"a","from":"1","to":"2"},{"id":"b","from":"2","to":"3"},{"id":"c","from":"4","to":"2"}],
            "relations":[[{"coeff":"1","path":["b","a"]}]]}"#;
        let bq = parse_bound_quiver(text).unwrap();
        assert!(matches!(trivial_extension(&bq, None), Err(Error::NotProperlyGraded(_))));
    }
}
