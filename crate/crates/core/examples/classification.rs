//! Finite, tame and wild at n = 1, plus Λ̃(4, 4) at n = 2.

use qlab::graded::graded_dims;
use qlab::io::parse_bound_quiver;
use qlab::loewy::{classify, default_h_max, gk_estimate, loewy_matrix};
use qlab::mckay::{relations_sr, SrParams};
use qlab::quiver::BoundQuiver;
use qlab::trivext::trivial_extension;

fn kronecker(k: usize) -> BoundQuiver {
    let arrows: Vec<String> = (0..k).map(|i| format!(r#"{{"id":"x{i}","from":"1","to":"2"}}"#)).collect();
    parse_bound_quiver(&format!(r#"{{"vertices":["1","2"],"arrows":[{}]}}"#, arrows.join(","))).unwrap()
}

fn report(name: &str, bq: &BoundQuiver, n: usize) -> qlab::Result<()> {
    let (gd, _) = graded_dims(bq, n + 2);
    let l = loewy_matrix(&gd, n)?;
    let r = classify(&l, default_h_max(&l))?;
    println!("{name:<12} {:<22} GK {}  char poly {}", r.verdict.to_string(), gk_estimate(&r), r.char_poly);
    Ok(())
}

fn main() -> qlab::Result<()> {
    let a3 = parse_bound_quiver(
        r#"{"vertices":["1","2","3"],
            "arrows":[{"id":"a","from":"1","to":"2"},{"id":"b","from":"2","to":"3"}],
            "relations":[[{"coeff":"1","path":["b","a"]}]]}"#,
    )?;
    report("Δ(A3)", &trivial_extension(&a3, None)?.bound, 1)?;
    report("Δ(K2)", &trivial_extension(&kronecker(2), None)?.bound, 1)?;
    report("Δ(K3)", &trivial_extension(&kronecker(3), None)?.bound, 1)?;
    report("Λ̃(4,4)", &relations_sr(4, 4, &SrParams::ones(4, 4))?, 2)?;
    Ok(())
}
