//! Finite windows of ℤ-covers, complete τ-slices and τ-mutation.
//!
//! Window vertices are named "i@t" and window arrows "α@t", where t is
//! the level of the arrow's source.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::graded::{is_nicely_graded, NiceGrading};
use crate::linalg::Rational;
use crate::quiver::{BoundQuiver, Path, Quiver, RelationElement};
use crate::trivext::TrivialExtension;

pub fn level_id(id: &str, t: i64) -> String {
    format!("{id}@{t}")
}

/// A materialized window [m, l] of a cover, with the base vertex and level
/// of every window vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct SliceWindow {
    pub base: BoundQuiver,
    pub m: i64,
    pub l: i64,
    pub bound: BoundQuiver,
    pub base_vertex: Vec<usize>,
    pub level: Vec<i64>,
    /// τ moves (i, t) to (i, t - shift)
    pub shift: i64,
    /// declared translation degree of the base, if any
    pub n: Option<usize>,
    index: HashMap<(usize, i64), usize>,
}

impl SliceWindow {
    fn assemble(base: &BoundQuiver, m: i64, l: i64, bound: BoundQuiver, shift: i64, n: Option<usize>) -> Self {
        let q = bound.quiver();
        let (mut base_vertex, mut level) = (Vec::new(), Vec::new());
        for id in q.vertices() {
            let (v, t) = id.rsplit_once('@').expect("window ids carry a level");
            base_vertex.push(base.quiver().vertex(v).expect("base vertex"));
            level.push(t.parse().expect("integer level"));
        }
        let index = base_vertex.iter().zip(&level).enumerate().map(|(k, (&v, &t))| ((v, t), k)).collect();
        SliceWindow { base: base.clone(), m, l, bound, base_vertex, level, shift, n, index }
    }

    pub fn quiver(&self) -> &Quiver {
        self.bound.quiver()
    }

    pub fn vertex_at(&self, base_vertex: usize, level: i64) -> Option<usize> {
        self.index.get(&(base_vertex, level)).copied()
    }

    /// Window vertices of a sub-bound-quiver whose ids come from this window.
    pub fn vertices_of(&self, slice: &BoundQuiver) -> Result<Vec<usize>> {
        slice.quiver().vertices().iter().map(|id| self.quiver().vertex(id)).collect()
    }

    /// The full bound subquiver on the given window vertices.
    pub fn restrict(&self, keep: &[usize]) -> BoundQuiver {
        self.bound.full_subquiver(keep).with_n(self.n)
    }

    pub fn component_count(&self) -> usize {
        self.quiver().component_vertex_sets().len()
    }
}

/// Window [m, l] of the separated directed quiver ℤᵥQ̃ with the shifted
/// relations ζ[t] whose endpoints lie in the window.
pub fn z_separated(base: &BoundQuiver, m: i64, l: i64) -> SliceWindow {
    let bq = base.quiver();
    let mut q = Quiver::new();
    for t in m..=l {
        for v in bq.vertices() {
            q.add_vertex(level_id(v, t)).expect("fresh vertex");
        }
    }
    let nv = bq.vertex_count() as i64;
    let at = |v: usize, t: i64| ((t - m) * nv) as usize + v;
    for t in m..l {
        for a in bq.arrows() {
            q.add_arrow(level_id(&a.id, t), at(a.source, t), at(a.target, t + 1)).expect("fresh arrow");
        }
    }
    let na = bq.arrow_count() as i64;
    let arrow_at = |a: usize, t: i64| ((t - m) * na) as usize + a;
    let mut relations = Vec::new();
    for r in base.relations() {
        let len = r.length() as i64;
        for t in m..=l - len {
            let terms: Vec<(Rational, Path)> = r
                .terms()
                .iter()
                .map(|(p, c)| {
                    let arrows =
                        p.arrows().iter().enumerate().map(|(k, &a)| arrow_at(a, t + len - 1 - k as i64)).collect();
                    (c.clone(), Path::raw(arrows, at(r.source(), t), at(r.target(), t + len)))
                })
                .collect();
            relations.extend(RelationElement::new(terms).expect("shifted relation stays normalized"));
        }
    }
    let n = base.n();
    let bound = BoundQuiver::new(q, relations, n).expect("valid window");
    let shift = n.map_or(1, |n| n as i64 + 1);
    SliceWindow::assemble(base, m, l, bound, shift, n)
}

fn declared_n(w: &SliceWindow) -> Result<usize> {
    w.n.ok_or_else(|| Error::Validation("the base quiver needs a declared n".into()))
}

/// Levels m..m+n of a window of ℤᵥQ̃.
pub fn complete_tau_slice(w: &SliceWindow, m: i64) -> Result<BoundQuiver> {
    let n = declared_n(w)? as i64;
    if m < w.m || m + n > w.l {
        return Err(Error::WindowTooSmall(format!(
            "levels {m}..{} requested from window [{}, {}]",
            m + n,
            w.m,
            w.l
        )));
    }
    let keep: Vec<usize> = (0..w.level.len()).filter(|&k| (m..=m + n).contains(&w.level[k])).collect();
    Ok(w.restrict(&keep))
}

/// Whether `keep` meets every τ-orbit of the window exactly once and is
/// path-convex in the window.
pub fn is_complete_tau_slice(w: &SliceWindow, keep: &[usize]) -> bool {
    let set: BTreeSet<usize> = keep.iter().copied().collect();
    let mut orbits: HashMap<(usize, i64), usize> = HashMap::new();
    for &k in &set {
        *orbits.entry((w.base_vertex[k], w.level[k].rem_euclid(w.shift))).or_default() += 1;
    }
    let mut expected = BTreeSet::new();
    for k in 0..w.level.len() {
        expected.insert((w.base_vertex[k], w.level[k].rem_euclid(w.shift)));
    }
    if orbits.len() != expected.len() || orbits.values().any(|&c| c != 1) {
        return false;
    }
    let q = w.quiver();
    let reach = |forward: bool| {
        let mut seen = vec![false; q.vertex_count()];
        let mut queue: VecDeque<usize> = set.iter().copied().collect();
        while let Some(v) = queue.pop_front() {
            let next: Vec<usize> = if forward {
                q.out_arrows(v).iter().map(|&a| q.arrow(a).target).collect()
            } else {
                q.in_arrows(v).iter().map(|&a| q.arrow(a).source).collect()
            };
            for u in next {
                if !std::mem::replace(&mut seen[u], true) {
                    queue.push_back(u);
                }
            }
        }
        seen
    };
    let (after, before) = (reach(true), reach(false));
    (0..q.vertex_count()).all(|v| !(after[v] && before[v]) || set.contains(&v))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mutation {
    /// a source (i, t) moves to (i, t + shift)
    Source,
    /// a sink (i, t) moves to (i, t - shift)
    Sink,
}

/// Moves one vertex of a complete τ-slice along its τ-orbit.
pub fn tau_mutation(w: &SliceWindow, slice: &BoundQuiver, vertex: &str, kind: Mutation) -> Result<BoundQuiver> {
    let sq = slice.quiver();
    let sv = sq.vertex(vertex)?;
    let wv = w.quiver().vertex(vertex)?;
    let (base_vertex, level) = (w.base_vertex[wv], w.level[wv]);
    let new_level = match kind {
        Mutation::Source => {
            if !sq.in_arrows(sv).is_empty() {
                return Err(Error::NotASource(vertex.to_string()));
            }
            level + w.shift
        }
        Mutation::Sink => {
            if !sq.out_arrows(sv).is_empty() {
                return Err(Error::NotASink(vertex.to_string()));
            }
            level - w.shift
        }
    };
    let replacement = w.vertex_at(base_vertex, new_level).ok_or_else(|| {
        Error::WindowTooSmall(format!("level {new_level} is outside the window [{}, {}]", w.m, w.l))
    })?;
    let mut keep = w.vertices_of(slice)?;
    keep.retain(|&k| k != wv);
    keep.push(replacement);
    if !is_complete_tau_slice(w, &keep) {
        return Err(Error::Validation(format!("mutating {vertex} does not give a complete τ-slice")));
    }
    Ok(w.restrict(&keep))
}

/// Window [t_min, t_max] of ℤ|ₙ₋₁Q: copies of Q on each level, returning
/// arrows from (t(p), t) to (s(p), t+1), relations of the trivial extension
/// lifted level by level.
pub fn znq_cover(te: &TrivialExtension, t_min: i64, t_max: i64) -> Result<SliceWindow> {
    let tq = te.bound.quiver();
    let mut q = Quiver::new();
    for t in t_min..=t_max {
        for v in tq.vertices() {
            q.add_vertex(level_id(v, t))?;
        }
    }
    let nv = tq.vertex_count() as i64;
    let at = |v: usize, t: i64| ((t - t_min) * nv) as usize + v;
    let mut arrow_index: HashMap<(usize, i64), usize> = HashMap::new();
    for t in t_min..=t_max {
        for (a, arrow) in tq.arrows().iter().enumerate() {
            let up = i64::from(te.is_returning(a));
            if t + up > t_max {
                continue;
            }
            let k = q.add_arrow(level_id(&arrow.id, t), at(arrow.source, t), at(arrow.target, t + up))?;
            arrow_index.insert((a, t), k);
        }
    }
    // lift a path of Q̃ starting at level t; None if it leaves the window
    let lift = |p: &Path, t: i64| -> Option<(Path, i64)> {
        let mut level = t;
        let mut lifted = Vec::with_capacity(p.len());
        for &a in p.arrows().iter().rev() {
            lifted.push(*arrow_index.get(&(a, level))?);
            level += i64::from(te.is_returning(a));
        }
        lifted.reverse();
        Some((Path::raw(lifted, at(p.source(), t), at(p.target(), level)), level))
    };
    let mut relations = Vec::new();
    for r in te.bound.relations() {
        for t in t_min..=t_max {
            let mut by_end: HashMap<i64, Vec<(Rational, Path)>> = HashMap::new();
            for (p, c) in r.terms() {
                if let Some((lp, end)) = lift(p, t) {
                    by_end.entry(end).or_default().push((c.clone(), lp));
                }
            }
            let mut ends: Vec<_> = by_end.into_iter().collect();
            ends.sort_by_key(|(e, _)| *e);
            for (_, terms) in ends {
                relations.extend(RelationElement::new(terms)?);
            }
        }
    }
    let n = te.n;
    let bound = BoundQuiver::new(q, relations, Some(n))?;
    Ok(SliceWindow::assemble(&te.bound, t_min, t_max, bound, 1, Some(n)))
}

/// φ(i, t) = (i, t(n+1) + d(i) - d(i₀)) for a nicely graded Q, as window
/// vertex ids "i@level" of ℤᵥQ̃.
pub fn nicely_graded_embedding(te: &TrivialExtension, t: i64) -> Result<Vec<String>> {
    let q = te.base.quiver();
    let d = match is_nicely_graded(q) {
        NiceGrading::Yes { grading } => grading,
        NiceGrading::No { arrow } => {
            return Err(Error::NotProperlyGraded(format!("arrow {arrow} breaks the potential")))
        }
    };
    let n = te.n as i64;
    Ok((0..q.vertex_count()).map(|i| level_id(q.vertex_id(i), t * (n + 1) + d[i] - d[0])).collect())
}
