//! Graded components of Λ = kQ/(ρ) for homogeneous ρ.
//!
//! Degree t is computed as the quotient of kQ_1 ⊗ Λ_{t-1} by the images
//! r ⋆ b of relations r of length s against basis elements b of Λ_{t-s}.
//! This never enumerates all paths of length t, only arrows times basis
//! elements of the previous degree. Basis elements are standard monomials:
//! each is an arrow written in front of a basis element of one degree lower.

use std::collections::{BTreeMap, HashMap, HashSet};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, rref_rows, RatMatrix, Rational};
use crate::quiver::{BoundQuiver, Path, Quiver, RelationElement};

/// Sparse vector over global basis ids.
pub type Sparse = BTreeMap<usize, Rational>;

pub fn sparse_add(acc: &mut Sparse, id: usize, c: &Rational) {
    if c.is_zero() {
        return;
    }
    let slot = acc.entry(id).or_insert_with(Rational::zero);
    *slot += c;
    if slot.is_zero() {
        acc.remove(&id);
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElement {
    pub degree: usize,
    pub source: usize,
    pub target: usize,
    pub path: Path,
}

#[derive(Clone, Debug)]
struct Component {
    /// (arrow, basis id one degree lower) -> coordinate
    coord_index: HashMap<(usize, usize), usize>,
    basis: Vec<usize>,
    reduce: Vec<Sparse>,
}

/// Graded dimension matrices: `blocks[t][j][i] = dim e_j Λ_t e_i`, the
/// number of independent bound paths of length t from i to j.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedDims {
    pub vertices: usize,
    pub blocks: Vec<Vec<Vec<usize>>>,
}

impl GradedDims {
    pub fn t_max(&self) -> usize {
        self.blocks.len() - 1
    }

    pub fn block(&self, t: usize) -> &Vec<Vec<usize>> {
        &self.blocks[t]
    }

    pub fn is_zero_at(&self, t: usize) -> bool {
        self.blocks.get(t).is_some_and(|b| b.iter().flatten().all(|&x| x == 0))
    }

    /// dim Λ_t e_i for t = 0..=t_max: the Hilbert series of the projective
    /// at vertex i.
    pub fn hilbert(&self, i: usize) -> Vec<usize> {
        self.blocks.iter().map(|b| (0..self.vertices).map(|j| b[j][i]).sum()).collect()
    }

    pub fn total(&self) -> usize {
        self.blocks.iter().flatten().flatten().sum()
    }

    /// Highest degree with a nonzero component.
    pub fn top_degree(&self) -> usize {
        (0..self.blocks.len()).rev().find(|&t| !self.is_zero_at(t)).unwrap_or(0)
    }

    pub fn transpose_block(&self, t: usize) -> Vec<Vec<usize>> {
        let b = &self.blocks[t];
        (0..self.vertices).map(|i| (0..self.vertices).map(|j| b[j][i]).collect()).collect()
    }
}

#[derive(Clone, Debug)]
pub struct AlgebraBasis {
    quiver: Quiver,
    t_max: usize,
    elements: Vec<BasisElement>,
    components: HashMap<(usize, usize, usize), Component>,
}

impl AlgebraBasis {
    pub fn compute(bq: &BoundQuiver, t_max: usize) -> Self {
        let q = bq.quiver().clone();
        let nv = q.vertex_count();
        let mut by_pair: HashMap<(usize, usize), Vec<&RelationElement>> = HashMap::new();
        for r in bq.relations() {
            by_pair.entry((r.source(), r.target())).or_default().push(r);
        }
        let mut alg = AlgebraBasis { quiver: q, t_max, elements: Vec::new(), components: HashMap::new() };
        for i in 0..nv {
            let id = alg.elements.len();
            alg.elements.push(BasisElement { degree: 0, source: i, target: i, path: Path::vertex(i) });
            alg.components.insert(
                (0, i, i),
                Component { coord_index: HashMap::new(), basis: vec![id], reduce: Vec::new() },
            );
        }
        for t in 1..=t_max {
            for i in 0..nv {
                for j in 0..nv {
                    alg.build_component(t, i, j, &by_pair);
                }
            }
        }
        alg
    }

    fn build_component(
        &mut self,
        t: usize,
        i: usize,
        j: usize,
        by_pair: &HashMap<(usize, usize), Vec<&RelationElement>>,
    ) {
        let mut coords = Vec::new();
        for &a in self.quiver.in_arrows(j) {
            let mid = self.quiver.arrow(a).source;
            for &b in self.basis_ids(t - 1, i, mid) {
                coords.push((a, b));
            }
        }
        if coords.is_empty() {
            return;
        }
        let coord_index: HashMap<(usize, usize), usize> =
            coords.iter().enumerate().map(|(k, &c)| (c, k)).collect();
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        for k in 0..self.quiver.vertex_count() {
            let Some(rels) = by_pair.get(&(k, j)) else { continue };
            for r in rels {
                let s = r.length();
                if s > t {
                    continue;
                }
                for &b in self.basis_ids(t - s, i, k) {
                    let mut row = vec![Rational::zero(); coords.len()];
                    for (p, c) in r.terms() {
                        let first = p.arrows()[0];
                        let mut v = Sparse::new();
                        v.insert(b, Rational::one());
                        for &a in p.arrows()[1..].iter().rev() {
                            v = self.left_mul_sparse(a, &v);
                        }
                        for (id, x) in v {
                            row[coord_index[&(first, id)]] += c * x;
                        }
                    }
                    if row.iter().any(|x| !x.is_zero()) {
                        rows.push(row);
                    }
                }
            }
        }
        let pivots = rref_rows(&mut rows, coords.len());
        let mut is_pivot = vec![None; coords.len()];
        for (r, &p) in pivots.iter().enumerate() {
            is_pivot[p] = Some(r);
        }
        let mut basis = Vec::new();
        let mut coord_to_basis = vec![usize::MAX; coords.len()];
        for (k, &(a, b)) in coords.iter().enumerate() {
            if is_pivot[k].is_none() {
                let id = self.elements.len();
                let path = Path::raw(
                    std::iter::once(a).chain(self.elements[b].path.arrows().iter().copied()).collect(),
                    i,
                    j,
                );
                self.elements.push(BasisElement { degree: t, source: i, target: j, path });
                basis.push(id);
                coord_to_basis[k] = id;
            }
        }
        let reduce = (0..coords.len())
            .map(|k| match is_pivot[k] {
                None => Sparse::from([(coord_to_basis[k], Rational::one())]),
                Some(r) => rows[r]
                    .iter()
                    .enumerate()
                    .filter(|(f, x)| is_pivot[*f].is_none() && !x.is_zero())
                    .map(|(f, x)| (coord_to_basis[f], -x.clone()))
                    .collect(),
            })
            .collect();
        self.components.insert((t, i, j), Component { coord_index, basis, reduce });
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn t_max(&self) -> usize {
        self.t_max
    }

    pub fn elements(&self) -> &[BasisElement] {
        &self.elements
    }

    pub fn element(&self, id: usize) -> &BasisElement {
        &self.elements[id]
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Basis ids of e_j Λ_t e_i.
    pub fn basis_ids(&self, t: usize, i: usize, j: usize) -> &[usize] {
        self.components.get(&(t, i, j)).map_or(&[], |c| c.basis.as_slice())
    }

    pub fn vertex_element(&self, i: usize) -> usize {
        self.components[&(0, i, i)].basis[0]
    }

    /// True when Λ_{t_max} = 0, so that every product beyond the computed
    /// range vanishes.
    pub fn is_complete(&self) -> bool {
        self.elements.iter().all(|e| e.degree < self.t_max)
    }

    /// Arrow `a` written in front of basis element `b`.
    pub fn left_mul(&self, a: usize, b: usize) -> Sparse {
        let arrow = self.quiver.arrow(a);
        let e = &self.elements[b];
        if arrow.source != e.target {
            return Sparse::new();
        }
        let t = e.degree + 1;
        if t > self.t_max {
            assert!(self.is_complete(), "product beyond computed degree {}", self.t_max);
            return Sparse::new();
        }
        match self.components.get(&(t, e.source, arrow.target)) {
            Some(c) => c.reduce[c.coord_index[&(a, b)]].clone(),
            None => Sparse::new(),
        }
    }

    pub fn left_mul_sparse(&self, a: usize, v: &Sparse) -> Sparse {
        let mut out = Sparse::new();
        for (&b, c) in v {
            for (id, x) in self.left_mul(a, b) {
                sparse_add(&mut out, id, &(c * x));
            }
        }
        out
    }

    /// Product x·y of basis elements ("y then x").
    pub fn mul(&self, x: usize, y: usize) -> Sparse {
        let (ex, ey) = (&self.elements[x], &self.elements[y]);
        if ex.source != ey.target {
            return Sparse::new();
        }
        let mut v = Sparse::from([(y, Rational::one())]);
        for &a in ex.path.arrows().iter().rev() {
            v = self.left_mul_sparse(a, &v);
            if v.is_empty() {
                break;
            }
        }
        v
    }

    /// Normal form of a path of the quiver.
    pub fn normal_form(&self, p: &Path) -> Sparse {
        let mut v = Sparse::from([(self.vertex_element(p.source()), Rational::one())]);
        for &a in p.arrows().iter().rev() {
            v = self.left_mul_sparse(a, &v);
        }
        v
    }

    pub fn dims(&self) -> GradedDims {
        let n = self.quiver.vertex_count();
        let mut blocks = vec![vec![vec![0; n]; n]; self.t_max + 1];
        for e in &self.elements {
            blocks[e.degree][e.target][e.source] += 1;
        }
        GradedDims { vertices: n, blocks }
    }

    /// Reduced echelon basis of (ρ) ∩ e_j kQ_t e_i over `paths_between`:
    /// the kernel of the normal-form map.
    pub fn ideal_component(&self, t: usize, i: usize, j: usize) -> (Vec<Path>, Vec<Vec<Rational>>) {
        let paths = self.quiver.paths_between(i, j, t);
        let basis = self.basis_ids(t, i, j);
        let pos: HashMap<usize, usize> = basis.iter().enumerate().map(|(k, &b)| (b, k)).collect();
        let mut m = RatMatrix::zeros(basis.len(), paths.len());
        for (col, p) in paths.iter().enumerate() {
            for (id, c) in self.normal_form(p) {
                m.set(pos[&id], col, c);
            }
        }
        let mut rows = kernel_basis(&m);
        rref_rows(&mut rows, paths.len());
        (paths, rows)
    }
}

pub fn graded_dims(bq: &BoundQuiver, t_max: usize) -> (GradedDims, AlgebraBasis) {
    let basis = AlgebraBasis::compute(bq, t_max);
    (basis.dims(), basis)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ProperGrading {
    Yes { n: usize },
    No { shorter: String, longer: String },
}

pub const DEFAULT_CAP_SLACK: usize = 2;

pub fn default_degree_cap(bq: &BoundQuiver) -> usize {
    bq.quiver().arrow_count() + DEFAULT_CAP_SLACK
}

/// Whether all maximal bound paths share one length. Fails when Λ does not
/// vanish at the degree cap.
pub fn is_n_properly_graded(bq: &BoundQuiver, cap: usize) -> Result<ProperGrading> {
    let alg = AlgebraBasis::compute(bq, cap);
    if !alg.is_complete() {
        return Err(Error::DegreeCapExceeded { cap });
    }
    let q = bq.quiver();
    // bound paths by length, with their normal forms
    let mut levels: Vec<Vec<(Path, Sparse)>> = vec![(0..q.vertex_count())
        .map(|i| (Path::vertex(i), Sparse::from([(alg.vertex_element(i), Rational::one())])))
        .collect()];
    loop {
        let mut next = Vec::new();
        for (p, v) in levels.last().expect("nonempty") {
            for &a in q.out_arrows(p.target()) {
                let w = alg.left_mul_sparse(a, v);
                if !w.is_empty() {
                    let arrows = std::iter::once(a).chain(p.arrows().iter().copied()).collect();
                    next.push((Path::raw(arrows, p.source(), q.arrow(a).target), w));
                }
            }
        }
        if next.is_empty() {
            break;
        }
        levels.push(next);
    }
    let mut maximal: Vec<&Path> = Vec::new();
    for t in 0..levels.len() {
        let (mut prefixes, mut suffixes) = (HashSet::new(), HashSet::new());
        if let Some(up) = levels.get(t + 1) {
            for (p, _) in up {
                prefixes.insert(&p.arrows()[..t]);
                suffixes.insert(&p.arrows()[1..]);
            }
        }
        for (p, _) in &levels[t] {
            let extendable = if t == 0 {
                !q.out_arrows(p.source()).is_empty() || !q.in_arrows(p.source()).is_empty()
            } else {
                prefixes.contains(p.arrows()) || suffixes.contains(p.arrows())
            };
            if !extendable {
                maximal.push(p);
            }
        }
    }
    let shortest = maximal.iter().min_by_key(|p| p.len()).expect("some maximal path");
    let longest = maximal.iter().max_by_key(|p| p.len()).expect("some maximal path");
    if shortest.len() == longest.len() {
        Ok(ProperGrading::Yes { n: shortest.len() })
    } else {
        Ok(ProperGrading::No { shorter: shortest.display(q), longer: longest.display(q) })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NiceGrading {
    /// Potential per vertex, zero at the first vertex of each component.
    Yes { grading: Vec<i64> },
    No { arrow: String },
}

pub fn is_nicely_graded(q: &Quiver) -> NiceGrading {
    let mut d: Vec<Option<i64>> = vec![None; q.vertex_count()];
    for comp in q.component_vertex_sets() {
        let root = comp[0];
        d[root] = Some(0);
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            let dv = d[v].expect("visited");
            let out = q.out_arrows(v).iter().map(|&a| (a, q.arrow(a).target, dv + 1));
            let inc = q.in_arrows(v).iter().map(|&a| (a, q.arrow(a).source, dv - 1));
            for (a, w, want) in out.chain(inc).collect::<Vec<_>>() {
                match d[w] {
                    None => {
                        d[w] = Some(want);
                        stack.push(w);
                    }
                    Some(got) if got != want => return NiceGrading::No { arrow: q.arrow(a).id.clone() },
                    Some(_) => {}
                }
            }
        }
    }
    NiceGrading::Yes { grading: d.into_iter().map(|x| x.expect("all visited")).collect() }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Stability {
    /// `nakayama[i]` is the vertex carrying the socle of Λe_i.
    Stable { nakayama: Vec<usize> },
    NotStable { reason: String },
}

impl Stability {
    pub fn is_stable(&self) -> bool {
        matches!(self, Stability::Stable { .. })
    }

    pub fn is_trivial(&self) -> bool {
        matches!(self, Stability::Stable { nakayama } if nakayama.iter().enumerate().all(|(i, &v)| i == v))
    }
}

/// Dimension test for a graded self-injective algebra of Loewy length n+2.
pub fn stable_translation_check(gd: &GradedDims, n: usize) -> Stability {
    let not = |reason: String| Stability::NotStable { reason };
    if gd.t_max() < n + 2 {
        return not(format!("graded dimensions known only to degree {}", gd.t_max()));
    }
    if !gd.is_zero_at(n + 2) {
        return not(format!("degree {} component is nonzero", n + 2));
    }
    let m = gd.vertices;
    let top = gd.block(n + 1);
    let mut nakayama = Vec::with_capacity(m);
    for i in 0..m {
        let column: Vec<usize> = (0..m).map(|j| top[j][i]).collect();
        let ones: Vec<usize> = (0..m).filter(|&j| column[j] == 1).collect();
        if ones.len() != 1 || column.iter().sum::<usize>() != 1 {
            return not(format!("degree {} block is not a permutation at column {i}", n + 1));
        }
        nakayama.push(ones[0]);
    }
    let mut seen = vec![false; m];
    for &v in &nakayama {
        if std::mem::replace(&mut seen[v], true) {
            return not(format!("degree {} block is not a permutation", n + 1));
        }
    }
    for t in 0..=n + 1 {
        for i in 0..m {
            for j in 0..m {
                if gd.block(t)[j][i] != gd.block(n + 1 - t)[nakayama[i]][j] {
                    return not(format!("pairing mismatch in degree {t} between vertices {i} and {j}"));
                }
            }
        }
    }
    Stability::Stable { nakayama }
}
