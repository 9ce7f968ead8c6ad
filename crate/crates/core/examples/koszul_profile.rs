//! Minimal resolutions of the simples: linear for Λ̃(4, 4), finite for Δ(A₃).

use qlab::graded::graded_dims;
use qlab::io::parse_bound_quiver;
use qlab::koszul::koszul_profile;
use qlab::mckay::{relations_sr, SrParams};
use qlab::trivext::trivial_extension;

fn main() -> qlab::Result<()> {
    let bq = relations_sr(4, 4, &SrParams::ones(4, 4))?;
    let (_, alg) = graded_dims(&bq, 4);
    let p = koszul_profile(&alg, 2, 4);
    println!("Λ̃(4,4): {:?}", p.status);
    for (t, degs) in p.generator_degrees.iter().enumerate() {
        println!("  P^{t}: {} generators", degs.len());
    }

    let a3 = parse_bound_quiver(
        r#"{"vertices":["1","2","3"],
            "arrows":[{"id":"a","from":"1","to":"2"},{"id":"b","from":"2","to":"3"}],
            "relations":[[{"coeff":"1","path":["b","a"]}]]}"#,
    )?;
    let te = trivial_extension(&a3, None)?;
    let (_, alg) = graded_dims(&te.bound, te.n + 2);
    println!("Δ(A3): {:?}", koszul_profile(&alg, te.n, 6).status);
    Ok(())
}
