//! Isomorphism of small bound quivers: color refinement, then backtracking
//! over color classes, then a relation-span comparison.

use std::collections::{BTreeMap, HashMap};

use crate::linalg::same_span;
use crate::quiver::{BoundQuiver, Path, Quiver};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isomorphism {
    /// vertex of the first quiver ↦ vertex of the second
    pub vertices: Vec<usize>,
    pub arrows: Vec<usize>,
}

const MAX_CANDIDATES: usize = 10_000;

/// Stable colors of the disjoint union of two quivers.
fn refine(a: &Quiver, b: &Quiver) -> (Vec<usize>, Vec<usize>) {
    let qs = [a, b];
    let mut colors: Vec<Vec<usize>> = qs.iter().map(|q| vec![0; q.vertex_count()]).collect();
    loop {
        let mut signatures: Vec<Vec<(usize, Vec<usize>, Vec<usize>, usize)>> = Vec::new();
        for (k, q) in qs.iter().enumerate() {
            let c = &colors[k];
            signatures.push(
                (0..q.vertex_count())
                    .map(|v| {
                        let mut out: Vec<usize> = q.out_arrows(v).iter().map(|&x| c[q.arrow(x).target]).collect();
                        let mut inc: Vec<usize> = q.in_arrows(v).iter().map(|&x| c[q.arrow(x).source]).collect();
                        out.sort_unstable();
                        inc.sort_unstable();
                        let loops = q.out_arrows(v).iter().filter(|&&x| q.arrow(x).target == v).count();
                        (c[v], out, inc, loops)
                    })
                    .collect(),
            );
        }
        let mut palette: BTreeMap<&(usize, Vec<usize>, Vec<usize>, usize), usize> = BTreeMap::new();
        for s in signatures.iter().flatten() {
            let next = palette.len();
            palette.entry(s).or_insert(next);
        }
        let renumbered: BTreeMap<_, usize> = palette.keys().enumerate().map(|(k, s)| (*s, k)).collect();
        let new: Vec<Vec<usize>> = signatures.iter().map(|sig| sig.iter().map(|s| renumbered[s]).collect()).collect();
        let count = |cs: &Vec<Vec<usize>>| {
            let mut all: Vec<usize> = cs.iter().flatten().copied().collect();
            all.sort_unstable();
            all.dedup();
            all.len()
        };
        if count(&new) == count(&colors) {
            return (new[0].clone(), new[1].clone());
        }
        colors = new;
    }
}

struct Search<'a> {
    a: &'a BoundQuiver,
    b: &'a BoundQuiver,
    adj_a: Vec<Vec<usize>>,
    adj_b: Vec<Vec<usize>>,
    color_a: Vec<usize>,
    color_b: Vec<usize>,
    order: Vec<usize>,
    tried: usize,
}

impl Search<'_> {
    fn extend(&mut self, depth: usize, map: &mut Vec<Option<usize>>, used: &mut Vec<bool>) -> Option<Isomorphism> {
        if depth == self.order.len() {
            self.tried += 1;
            let vertices: Vec<usize> = map.iter().map(|x| x.expect("complete")).collect();
            return self.check(&vertices);
        }
        let u = self.order[depth];
        for w in 0..self.adj_b.len() {
            if used[w] || self.color_b[w] != self.color_a[u] || self.tried >= MAX_CANDIDATES {
                continue;
            }
            let consistent = self.order[..depth].iter().all(|&x| {
                let y = map[x].expect("assigned");
                self.adj_a[u][x] == self.adj_b[w][y] && self.adj_a[x][u] == self.adj_b[y][w]
            }) && self.adj_a[u][u] == self.adj_b[w][w];
            if !consistent {
                continue;
            }
            map[u] = Some(w);
            used[w] = true;
            if let Some(found) = self.extend(depth + 1, map, used) {
                return Some(found);
            }
            map[u] = None;
            used[w] = false;
        }
        None
    }

    /// Parallel arrows are matched in id order; relations must span the
    /// same space at every vertex pair.
    fn check(&self, vertices: &[usize]) -> Option<Isomorphism> {
        let (qa, qb) = (self.a.quiver(), self.b.quiver());
        let mut by_pair: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for (k, arrow) in qb.arrows().iter().enumerate() {
            by_pair.entry((arrow.source, arrow.target)).or_default().push(k);
        }
        for list in by_pair.values_mut() {
            list.sort_by(|&x, &y| qb.arrow(x).id.cmp(&qb.arrow(y).id));
        }
        let mut order_a: Vec<usize> = (0..qa.arrow_count()).collect();
        order_a.sort_by(|&x, &y| qa.arrow(x).id.cmp(&qa.arrow(y).id));
        let mut arrows = vec![usize::MAX; qa.arrow_count()];
        let mut next: HashMap<(usize, usize), usize> = HashMap::new();
        for x in order_a {
            let arrow = qa.arrow(x);
            let key = (vertices[arrow.source], vertices[arrow.target]);
            let slot = next.entry(key).or_default();
            arrows[x] = *by_pair.get(&key)?.get(*slot)?;
            *slot += 1;
        }
        let map_path = |p: &Path| {
            Path::from_arrows(qb, p.arrows().iter().map(|&x| arrows[x]).collect()).expect("arrow map preserves paths")
        };
        let mut keys: Vec<(usize, usize, usize)> =
            self.a.relations().iter().map(|r| (r.source(), r.target(), r.length())).collect();
        keys.extend(self.b.relations().iter().filter_map(|r| {
            let inv = |v: usize| vertices.iter().position(|&w| w == v);
            Some((inv(r.source())?, inv(r.target())?, r.length()))
        }));
        keys.sort_unstable();
        keys.dedup();
        for (i, j, len) in keys {
            let (paths, rows_b) = self.b.relation_rows(vertices[i], vertices[j], len);
            let rows_a: Vec<_> = self
                .a
                .relations()
                .iter()
                .filter(|r| r.source() == i && r.target() == j && r.length() == len)
                .map(|r| {
                    let mut row = vec![crate::linalg::Rational::default(); paths.len()];
                    for (p, c) in r.terms() {
                        let k = paths.binary_search(&map_path(p)).ok()?;
                        row[k] = c.clone();
                    }
                    Some(row)
                })
                .collect::<Option<_>>()?;
            if !same_span(&rows_a, &rows_b, paths.len()) {
                return None;
            }
        }
        Some(Isomorphism { vertices: vertices.to_vec(), arrows })
    }
}

/// An isomorphism of bound quivers, if one is found within the search cap.
pub fn find_isomorphism(a: &BoundQuiver, b: &BoundQuiver) -> Option<Isomorphism> {
    let (qa, qb) = (a.quiver(), b.quiver());
    if qa.vertex_count() != qb.vertex_count() || qa.arrow_count() != qb.arrow_count() {
        return None;
    }
    let (color_a, color_b) = refine(qa, qb);
    let mut ca = color_a.clone();
    let mut cb = color_b.clone();
    ca.sort_unstable();
    cb.sort_unstable();
    if ca != cb {
        return None;
    }
    let mut class_size: HashMap<usize, usize> = HashMap::new();
    for &c in &color_a {
        *class_size.entry(c).or_default() += 1;
    }
    // small classes first, then breadth-first so each choice is constrained
    let mut order = Vec::new();
    let mut placed = vec![false; qa.vertex_count()];
    let adj_a = qa.adjacency();
    while order.len() < qa.vertex_count() {
        let start = (0..qa.vertex_count())
            .filter(|&v| !placed[v])
            .min_by_key(|&v| (class_size[&color_a[v]], v))
            .expect("unplaced vertex");
        let mut queue = std::collections::VecDeque::from([start]);
        placed[start] = true;
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for w in 0..qa.vertex_count() {
                if !placed[w] && (adj_a[v][w] > 0 || adj_a[w][v] > 0) {
                    placed[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    let mut search =
        Search { a, b, adj_b: qb.adjacency(), adj_a, color_a, color_b, order, tried: 0 };
    let mut map = vec![None; qa.vertex_count()];
    let mut used = vec![false; qb.vertex_count()];
    search.extend(0, &mut map, &mut used)
}

pub fn is_isomorphic(a: &BoundQuiver, b: &BoundQuiver) -> bool {
    find_isomorphism(a, b).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::parse_bound_quiver;

    fn square(rel_sign: &str, order: [&str; 4]) -> BoundQuiver {
        let v = order;
        parse_bound_quiver(&format!(
            r#"{{"vertices":["{}","{}","{}","{}"],
               "arrows":[{{"id":"a","from":"s","to":"x"}},{{"id":"b","from":"s","to":"y"}},
                         {{"id":"c","from":"x","to":"t"}},{{"id":"d","from":"y","to":"t"}}],
               "relations":[[{{"coeff":"1","path":["c","a"]}},{{"coeff":"{rel_sign}","path":["d","b"]}}]]}}"#,
            v[0], v[1], v[2], v[3]
        ))
        .unwrap()
    }

    #[test]
    fn relabelled_square() {
        let a = square("-1", ["s", "x", "y", "t"]);
        let b = square("-1", ["t", "y", "s", "x"]);
        let iso = find_isomorphism(&a, &b).unwrap();
        for (k, arrow) in a.quiver().arrows().iter().enumerate() {
            let image = b.quiver().arrow(iso.arrows[k]);
            assert_eq!(image.source, iso.vertices[arrow.source]);
            assert_eq!(image.target, iso.vertices[arrow.target]);
        }
    }

    #[test]
    fn relation_spans_are_compared() {
        let commutative = square("-1", ["s", "x", "y", "t"]);
        let zero = parse_bound_quiver(
            r#"{"vertices":["s","x","y","t"],
               "arrows":[{"id":"a","from":"s","to":"x"},{"id":"b","from":"s","to":"y"},
                         {"id":"c","from":"x","to":"t"},{"id":"d","from":"y","to":"t"}],
               "relations":[[{"coeff":"1","path":["c","a"]}]]}"#,
        )
        .unwrap();
        assert!(!is_isomorphic(&commutative, &zero));
        assert!(is_isomorphic(&commutative, &commutative));
    }

    #[test]
    fn different_shapes() {
        let path = parse_bound_quiver(
            r#"{"vertices":["1","2","3"],"arrows":[{"id":"a","from":"1","to":"2"},{"id":"b","from":"2","to":"3"}]}"#,
        )
        .unwrap();
        let fork = parse_bound_quiver(
            r#"{"vertices":["1","2","3"],"arrows":[{"id":"a","from":"1","to":"2"},{"id":"b","from":"1","to":"3"}]}"#,
        )
        .unwrap();
        assert!(!is_isomorphic(&path, &fork));
    }
}
