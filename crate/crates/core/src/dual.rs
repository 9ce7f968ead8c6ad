//! Quadratic duals.

use crate::error::{Error, Result};
use crate::linalg::{canonical_basis, orth_complement, rank_of_rows, same_span, Rational};
use crate::quiver::{BoundQuiver, RelationElement};

fn check_quadratic(bq: &BoundQuiver) -> Result<()> {
    match bq.relations().iter().find(|r| r.length() != 2) {
        Some(r) => Err(Error::NotQuadratic { length: r.length() }),
        None => Ok(()),
    }
}

/// Same quiver; per vertex pair the relations are the reduced echelon basis
/// of the orthogonal complement of the original relation span among
/// length-2 paths, the path basis being self-dual.
pub fn quadratic_dual(bq: &BoundQuiver) -> Result<BoundQuiver> {
    check_quadratic(bq)?;
    let q = bq.quiver();
    let n = q.vertex_count();
    let mut relations = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let (paths, rows) = bq.relation_rows(i, j, 2);
            if paths.is_empty() {
                continue;
            }
            let complement = canonical_basis(&orth_complement(&rows, paths.len()), paths.len());
            relations.extend(complement.iter().filter_map(|v| RelationElement::from_coordinates(&paths, v)));
        }
    }
    BoundQuiver::new(q.clone(), relations, bq.n())
}

/// Rank of the relation span at each vertex pair with length-2 paths, as
/// (i, j, rank, number of paths).
pub fn relation_ranks(bq: &BoundQuiver) -> Vec<(usize, usize, usize, usize)> {
    let n = bq.quiver().vertex_count();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let (paths, rows) = bq.relation_rows(i, j, 2);
            if !paths.is_empty() {
                out.push((i, j, rank_of_rows(&rows, paths.len()), paths.len()));
            }
        }
    }
    out
}

/// True when both bound quivers share a quiver and have the same span of
/// length-2 relations at every vertex pair.
pub fn same_quadratic_span(a: &BoundQuiver, b: &BoundQuiver) -> bool {
    if a.quiver() != b.quiver() {
        return false;
    }
    let n = a.quiver().vertex_count();
    (0..n).all(|i| {
        (0..n).all(|j| {
            let (paths, ra) = a.relation_rows(i, j, 2);
            let (_, rb) = b.relation_rows(i, j, 2);
            same_span(&ra, &rb, paths.len())
        })
    })
}

pub fn dual_involution_check(bq: &BoundQuiver) -> Result<bool> {
    let twice = quadratic_dual(&quadratic_dual(bq)?)?;
    Ok(same_quadratic_span(bq, &twice))
}

/// Pairing of two relation elements under the self-dual path basis.
pub fn pairing(a: &RelationElement, b: &RelationElement) -> Rational {
    let mut acc = Rational::default();
    for (p, c) in a.terms() {
        if let Some((_, d)) = b.terms().iter().find(|(q, _)| q == p) {
            acc += c * d;
        }
    }
    acc
}
