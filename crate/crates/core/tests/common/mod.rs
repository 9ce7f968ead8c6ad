#![allow(dead_code)]

use qlab::io::parse_bound_quiver;
use qlab::linalg::{ratio, Rational};
use qlab::mckay::{relations_sr, relations_xi, AdeFamily, SrParams, XiSpec};
use qlab::quiver::{BoundQuiver, Quiver, RelationElement};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn sr(s: usize, r: usize) -> BoundQuiver {
    relations_sr(s, r, &SrParams::ones(s, r)).unwrap()
}

pub fn xi(family: AdeFamily, l: usize, j: Vec<usize>) -> BoundQuiver {
    relations_xi(&XiSpec::new(family, l).with_j(j)).unwrap()
}

/// kA₃ / (βα)
pub fn a3_zero() -> BoundQuiver {
    parse_bound_quiver(
        r#"{"vertices":["1","2","3"],
            "arrows":[{"id":"a","from":"1","to":"2"},{"id":"b","from":"2","to":"3"}],
            "relations":[[{"coeff":"1","path":["b","a"]}]]}"#,
    )
    .unwrap()
}

pub fn kronecker(k: usize) -> BoundQuiver {
    let mut q = Quiver::with_vertices(["1", "2"]).unwrap();
    for i in 0..k {
        q.add_arrow(format!("x{i}"), 0, 1).unwrap();
    }
    BoundQuiver::free(q)
}

pub fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    ratio(rng.gen_range(-4..=4), rng.gen_range(1..=3))
}

/// Random quiver with up to `max_v` vertices and `max_a` arrows, and at each
/// vertex pair random relations of one to four length-2 paths each.
pub fn random_quadratic(rng: &mut ChaCha8Rng, max_v: usize, max_a: usize) -> BoundQuiver {
    let nv = rng.gen_range(1..=max_v);
    let mut q = Quiver::with_vertices((0..nv).map(|i| i.to_string())).unwrap();
    for a in 0..rng.gen_range(0..=max_a) {
        q.add_arrow(format!("a{a}"), rng.gen_range(0..nv), rng.gen_range(0..nv)).unwrap();
    }
    let mut relations = Vec::new();
    for i in 0..nv {
        for j in 0..nv {
            let paths = q.paths_between(i, j, 2);
            if paths.is_empty() {
                continue;
            }
            for _ in 0..rng.gen_range(0..=paths.len()) {
                let k = rng.gen_range(1..=paths.len().min(4));
                let terms = paths.choose_multiple(rng, k).map(|p| (small_rational(rng), p.clone())).collect();
                if let Some(r) = RelationElement::new(terms).unwrap() {
                    relations.push(r);
                }
            }
        }
    }
    BoundQuiver::new(q, relations, None).unwrap()
}
