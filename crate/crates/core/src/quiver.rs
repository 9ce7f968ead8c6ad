//! Quivers, paths, relation elements and bound quivers.
//!
//! Paths are stored in written order: `[a, b]` is the path "b then a", so the
//! source of a path is the source of its last arrow and the target is the
//! target of its first arrow.

use std::collections::{BTreeMap, HashMap, HashSet};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub id: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, Default)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    vertex_index: HashMap<String, usize>,
    arrow_index: HashMap<String, usize>,
    out_arrows: Vec<Vec<usize>>,
    in_arrows: Vec<Vec<usize>>,
}

impl PartialEq for Quiver {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.arrows == other.arrows
    }
}

impl Eq for Quiver {}

impl Quiver {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_vertices<S: Into<String>>(ids: impl IntoIterator<Item = S>) -> Result<Self> {
        let mut q = Quiver::new();
        for id in ids {
            q.add_vertex(id)?;
        }
        Ok(q)
    }

    pub fn add_vertex(&mut self, id: impl Into<String>) -> Result<usize> {
        let id = id.into();
        if self.vertex_index.contains_key(&id) {
            return Err(Error::Validation(format!("duplicate vertex id {id:?}")));
        }
        let k = self.vertices.len();
        self.vertex_index.insert(id.clone(), k);
        self.vertices.push(id);
        self.out_arrows.push(Vec::new());
        self.in_arrows.push(Vec::new());
        Ok(k)
    }

    pub fn add_arrow(&mut self, id: impl Into<String>, source: usize, target: usize) -> Result<usize> {
        let id = id.into();
        if source >= self.vertices.len() || target >= self.vertices.len() {
            return Err(Error::Validation(format!("arrow {id:?} has an endpoint outside the quiver")));
        }
        if self.arrow_index.contains_key(&id) {
            return Err(Error::Validation(format!("duplicate arrow id {id:?}")));
        }
        let k = self.arrows.len();
        self.arrow_index.insert(id.clone(), k);
        self.arrows.push(Arrow { id, source, target });
        self.out_arrows[source].push(k);
        self.in_arrows[target].push(k);
        Ok(k)
    }

    pub fn add_arrow_by_ids(&mut self, id: impl Into<String>, from: &str, to: &str) -> Result<usize> {
        let s = self.vertex(from)?;
        let t = self.vertex(to)?;
        self.add_arrow(id, s, t)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, a: usize) -> &Arrow {
        &self.arrows[a]
    }

    pub fn vertex_id(&self, i: usize) -> &str {
        &self.vertices[i]
    }

    pub fn vertex(&self, id: &str) -> Result<usize> {
        self.vertex_index.get(id).copied().ok_or_else(|| Error::UnknownVertex(id.to_string()))
    }

    pub fn arrow_by_id(&self, id: &str) -> Result<usize> {
        self.arrow_index
            .get(id)
            .copied()
            .ok_or_else(|| Error::Validation(format!("unknown arrow {id:?}")))
    }

    pub fn out_arrows(&self, i: usize) -> &[usize] {
        &self.out_arrows[i]
    }

    pub fn in_arrows(&self, j: usize) -> &[usize] {
        &self.in_arrows[j]
    }

    /// `m[i][j]` = number of arrows i -> j.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut m = vec![vec![0; n]; n];
        for a in &self.arrows {
            m[a.source][a.target] += 1;
        }
        m
    }

    pub fn path(&self, arrows: Vec<usize>) -> Result<Path> {
        Path::from_arrows(self, arrows)
    }

    pub fn path_from_ids<S: AsRef<str>>(&self, ids: &[S]) -> Result<Path> {
        let arrows = ids.iter().map(|s| self.arrow_by_id(s.as_ref())).collect::<Result<Vec<_>>>()?;
        Path::from_arrows(self, arrows)
    }

    /// All paths of length `t` from `i` to `j`, lexicographic in the
    /// written arrow-index sequence.
    pub fn paths_between(&self, i: usize, j: usize, t: usize) -> Vec<Path> {
        if t == 0 {
            return if i == j { vec![Path::vertex(i)] } else { Vec::new() };
        }
        let mut out = Vec::new();
        for &a in &self.in_arrows[j] {
            let mid = self.arrows[a].source;
            for p in self.paths_between(i, mid, t - 1) {
                let mut arrows = Vec::with_capacity(t);
                arrows.push(a);
                arrows.extend_from_slice(&p.arrows);
                out.push(Path { arrows, source: i, target: j });
            }
        }
        out.sort();
        out
    }

    pub fn paths_between_ids(&self, i: &str, j: &str, t: usize) -> Result<Vec<Path>> {
        Ok(self.paths_between(self.vertex(i)?, self.vertex(j)?, t))
    }

    /// Vertex index sets of the connected components of the underlying
    /// graph, each sorted, ordered by smallest member.
    pub fn component_vertex_sets(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        for a in &self.arrows {
            let (x, y) = (find(&mut parent, a.source), find(&mut parent, a.target));
            if x != y {
                parent[x.max(y)] = x.min(y);
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for v in 0..n {
            let r = find(&mut parent, v);
            groups.entry(r).or_default().push(v);
        }
        let mut sets: Vec<Vec<usize>> = groups.into_values().collect();
        sets.sort_by_key(|s| s[0]);
        sets
    }

    /// Full subquiver on the given vertices (kept in original order),
    /// returning the new quiver and the old-to-new arrow map.
    pub fn full_subquiver(&self, keep: &[usize]) -> (Quiver, HashMap<usize, usize>) {
        let mut keep_sorted = keep.to_vec();
        keep_sorted.sort_unstable();
        keep_sorted.dedup();
        let mut q = Quiver::new();
        let mut vmap = HashMap::new();
        for &v in &keep_sorted {
            vmap.insert(v, q.add_vertex(self.vertices[v].clone()).expect("unique ids"));
        }
        let mut amap = HashMap::new();
        for (k, a) in self.arrows.iter().enumerate() {
            if let (Some(&s), Some(&t)) = (vmap.get(&a.source), vmap.get(&a.target)) {
                amap.insert(k, q.add_arrow(a.id.clone(), s, t).expect("unique ids"));
            }
        }
        (q, amap)
    }
}

pub fn connected_components(q: &Quiver) -> Vec<Quiver> {
    q.component_vertex_sets().iter().map(|s| q.full_subquiver(s).0).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    arrows: Vec<usize>,
    source: usize,
    target: usize,
}

impl Path {
    pub fn vertex(i: usize) -> Path {
        Path { arrows: Vec::new(), source: i, target: i }
    }

    pub fn from_arrows(q: &Quiver, arrows: Vec<usize>) -> Result<Path> {
        let Some(&first) = arrows.first() else {
            return Err(Error::Validation("a path needs at least one arrow or an explicit vertex".into()));
        };
        if let Some(&bad) = arrows.iter().find(|&&a| a >= q.arrow_count()) {
            return Err(Error::Validation(format!("arrow index {bad} out of range")));
        }
        for w in arrows.windows(2) {
            if q.arrows[w[0]].source != q.arrows[w[1]].target {
                return Err(Error::Validation(format!(
                    "arrows {:?} and {:?} do not compose",
                    q.arrows[w[0]].id, q.arrows[w[1]].id
                )));
            }
        }
        let last = *arrows.last().expect("nonempty");
        Ok(Path { source: q.arrows[last].source, target: q.arrows[first].target, arrows })
    }

    pub(crate) fn raw(arrows: Vec<usize>, source: usize, target: usize) -> Path {
        Path { arrows, source, target }
    }

    pub fn arrows(&self) -> &[usize] {
        &self.arrows
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    /// `self` after `other`: written concatenation `self ++ other`.
    pub fn after(&self, other: &Path) -> Option<Path> {
        if self.source != other.target {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(Path { arrows, source: other.source, target: self.target })
    }

    /// Visited vertices in traversal order, source first.
    pub fn vertices(&self, q: &Quiver) -> Vec<usize> {
        let mut out = vec![self.source];
        for &a in self.arrows.iter().rev() {
            out.push(q.arrows[a].target);
        }
        out
    }

    pub fn ids<'a>(&self, q: &'a Quiver) -> Vec<&'a str> {
        self.arrows.iter().map(|&a| q.arrows[a].id.as_str()).collect()
    }

    pub fn display(&self, q: &Quiver) -> String {
        if self.arrows.is_empty() {
            format!("e[{}]", q.vertex_id(self.source))
        } else {
            self.ids(q).join("*")
        }
    }

    pub(crate) fn remap(&self, arrow_map: &HashMap<usize, usize>, q: &Quiver) -> Option<Path> {
        let arrows = self.arrows.iter().map(|a| arrow_map.get(a).copied()).collect::<Option<Vec<_>>>()?;
        Path::from_arrows(q, arrows).ok()
    }
}

/// Linear combination of parallel paths of one length.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RelationElement {
    source: usize,
    target: usize,
    length: usize,
    terms: Vec<(Path, Rational)>,
}

impl RelationElement {
    /// Merges repeated paths and drops zero coefficients; `Ok(None)` when
    /// everything cancels.
    pub fn new(terms: Vec<(Rational, Path)>) -> Result<Option<RelationElement>> {
        let Some((_, first)) = terms.first() else {
            return Ok(None);
        };
        let (s, t, len) = (first.source, first.target, first.len());
        let mut merged: BTreeMap<Path, Rational> = BTreeMap::new();
        for (c, p) in terms {
            if p.len() != len {
                return Err(Error::NonHomogeneous { lengths: vec![len, p.len()] });
            }
            if p.source != s || p.target != t {
                return Err(Error::Validation(format!(
                    "relation mixes endpoints: paths {:?} and {:?}",
                    (s, t),
                    (p.source, p.target)
                )));
            }
            *merged.entry(p).or_insert_with(Rational::zero) += c;
        }
        let terms: Vec<(Path, Rational)> = merged.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        if terms.is_empty() {
            return Ok(None);
        }
        Ok(Some(RelationElement { source: s, target: t, length: len, terms }))
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn length(&self) -> usize {
        self.length
    }

    /// (path, coefficient) pairs sorted by path.
    pub fn terms(&self) -> &[(Path, Rational)] {
        &self.terms
    }

    /// Coordinates over an ordered path list (usually `paths_between`).
    pub fn coordinates(&self, basis: &[Path]) -> Vec<Rational> {
        let index: HashMap<&Path, usize> = basis.iter().enumerate().map(|(k, p)| (p, k)).collect();
        let mut v = vec![Rational::zero(); basis.len()];
        for (p, c) in &self.terms {
            v[index[p]] = c.clone();
        }
        v
    }

    pub fn from_coordinates(basis: &[Path], v: &[Rational]) -> Option<RelationElement> {
        let terms = basis.iter().zip(v).filter(|(_, c)| !c.is_zero()).map(|(p, c)| (c.clone(), p.clone())).collect();
        RelationElement::new(terms).expect("basis paths are parallel")
    }

    pub fn display(&self, q: &Quiver) -> String {
        self.terms
            .iter()
            .map(|(p, c)| format!("({c})*{}", p.display(q)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Splits arbitrary homogeneous combinations into endpoint-homogeneous
/// components, dropping components that cancel.
pub fn normalize_relations(raw: Vec<Vec<(Rational, Path)>>) -> Result<Vec<RelationElement>> {
    let mut out = Vec::new();
    for element in raw {
        let lengths: HashSet<usize> = element.iter().map(|(_, p)| p.len()).collect();
        if lengths.len() > 1 {
            let mut lengths: Vec<usize> = lengths.into_iter().collect();
            lengths.sort_unstable();
            return Err(Error::NonHomogeneous { lengths });
        }
        let mut parts: BTreeMap<(usize, usize), Vec<(Rational, Path)>> = BTreeMap::new();
        for (c, p) in element {
            parts.entry((p.source, p.target)).or_default().push((c, p));
        }
        for (_, terms) in parts {
            if let Some(r) = RelationElement::new(terms)? {
                out.push(r);
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundQuiver {
    quiver: Quiver,
    relations: Vec<RelationElement>,
    n: Option<usize>,
}

impl BoundQuiver {
    pub fn new(quiver: Quiver, mut relations: Vec<RelationElement>, n: Option<usize>) -> Result<Self> {
        for r in &relations {
            if r.length < 2 {
                return Err(Error::Validation(format!(
                    "relation {} has length {} (< 2)",
                    r.display(&quiver),
                    r.length
                )));
            }
            for (p, _) in &r.terms {
                if Path::from_arrows(&quiver, p.arrows.clone()).as_ref() != Ok(p) {
                    return Err(Error::Validation("relation path does not belong to the quiver".into()));
                }
            }
        }
        relations.sort();
        Ok(BoundQuiver { quiver, relations, n })
    }

    pub fn free(quiver: Quiver) -> Self {
        BoundQuiver { quiver, relations: Vec::new(), n: None }
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[RelationElement] {
        &self.relations
    }

    pub fn n(&self) -> Option<usize> {
        self.n
    }

    pub fn with_n(mut self, n: Option<usize>) -> Self {
        self.n = n;
        self
    }

    pub fn is_quadratic(&self) -> bool {
        self.relations.iter().all(|r| r.length == 2)
    }

    pub fn max_relation_length(&self) -> usize {
        self.relations.iter().map(|r| r.length).max().unwrap_or(0)
    }

    /// Relations with endpoints (i, j) and the given length, as rows over
    /// `paths_between(i, j, len)`.
    pub fn relation_rows(&self, i: usize, j: usize, len: usize) -> (Vec<Path>, Vec<Vec<Rational>>) {
        let paths = self.quiver.paths_between(i, j, len);
        let rows = self
            .relations
            .iter()
            .filter(|r| r.source == i && r.target == j && r.length == len)
            .map(|r| r.coordinates(&paths))
            .collect();
        (paths, rows)
    }

    /// Full bound subquiver: arrows between kept vertices, and the terms of
    /// each relation whose paths stay inside.
    pub fn full_subquiver(&self, keep: &[usize]) -> BoundQuiver {
        let (q, amap) = self.quiver.full_subquiver(keep);
        let relations = self
            .relations
            .iter()
            .filter_map(|r| {
                let terms: Vec<(Rational, Path)> =
                    r.terms.iter().filter_map(|(p, c)| p.remap(&amap, &q).map(|np| (c.clone(), np))).collect();
                RelationElement::new(terms).expect("restriction keeps parallel terms")
            })
            .collect();
        BoundQuiver::new(q, relations, self.n).expect("restriction of a valid bound quiver")
    }

    pub fn components(&self) -> Vec<BoundQuiver> {
        self.quiver.component_vertex_sets().iter().map(|s| self.full_subquiver(s)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;
    use proptest::prelude::*;

    pub(crate) fn a3() -> Quiver {
        let mut q = Quiver::with_vertices(["1", "2", "3"]).unwrap();
        q.add_arrow_by_ids("alpha", "1", "2").unwrap();
        q.add_arrow_by_ids("beta", "2", "3").unwrap();
        q
    }

    #[test]
    fn composition_convention() {
        let q = a3();
        let p = q.path_from_ids(&["beta", "alpha"]).unwrap();
        assert_eq!((p.source(), p.target(), p.len()), (0, 2, 2));
        assert!(q.path_from_ids(&["alpha", "beta"]).is_err());
        assert_eq!(p.vertices(&q), vec![0, 1, 2]);
    }

    #[test]
    fn paths_in_a3() {
        let q = a3();
        assert_eq!(q.paths_between(0, 0, 0), vec![Path::vertex(0)]);
        assert_eq!(q.paths_between(0, 2, 2).len(), 1);
        assert!(q.paths_between(2, 0, 2).is_empty());
    }

    #[test]
    fn normalization_splits_and_drops() {
        let mut q = Quiver::with_vertices(["1", "2", "3", "4", "5"]).unwrap();
        q.add_arrow_by_ids("a", "1", "2").unwrap();
        q.add_arrow_by_ids("b", "2", "3").unwrap();
        q.add_arrow_by_ids("c", "3", "4").unwrap();
        q.add_arrow_by_ids("d", "4", "5").unwrap();
        let ba = q.path_from_ids(&["b", "a"]).unwrap();
        let dc = q.path_from_ids(&["d", "c"]).unwrap();
        let split = normalize_relations(vec![vec![(rat(1), ba.clone()), (rat(1), dc)]]).unwrap();
        assert_eq!(split.len(), 2);
        let same = normalize_relations(vec![vec![(rat(2), ba.clone())]]).unwrap();
        assert_eq!(same[0].terms(), &[(ba.clone(), rat(2))]);
        let gone = normalize_relations(vec![vec![(rat(1), ba.clone()), (rat(-1), ba.clone())]]).unwrap();
        assert!(gone.is_empty());
        let a = q.path_from_ids(&["a"]).unwrap();
        assert!(matches!(
            normalize_relations(vec![vec![(rat(1), ba), (rat(1), a)]]),
            Err(Error::NonHomogeneous { .. })
        ));
    }

    #[test]
    fn components_of_disjoint_union() {
        let mut q = a3();
        q.add_vertex("x").unwrap();
        let comps = connected_components(&q);
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].vertex_count(), 3);
        assert_eq!(connected_components(&a3()).len(), 1);
    }

    fn arb_quiver() -> impl Strategy<Value = Quiver> {
        (1usize..=5).prop_flat_map(|n| {
            proptest::collection::vec((0..n, 0..n), 0..=9).prop_map(move |edges| {
                let mut q = Quiver::with_vertices((0..n).map(|i| i.to_string())).unwrap();
                for (k, (s, t)) in edges.into_iter().enumerate() {
                    q.add_arrow(format!("x{k}"), s, t).unwrap();
                }
                q
            })
        })
    }

    proptest! {
        #[test]
        fn path_counts_match_adjacency_powers(q in arb_quiver(), t in 0usize..=4) {
            let n = q.vertex_count();
            let m = q.adjacency();
            let mut power: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| usize::from(i == j)).collect()).collect();
            for _ in 0..t {
                power = (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| power[i][k] * m[k][j]).sum()).collect()).collect();
            }
            for i in 0..n {
                for j in 0..n {
                    let paths = q.paths_between(i, j, t);
                    prop_assert_eq!(paths.len(), power[i][j]);
                    let mut sorted = paths.clone();
                    sorted.sort();
                    sorted.dedup();
                    prop_assert_eq!(sorted, paths);
                }
            }
        }
    }
}
