//! Trivial extension of kA₃/(βα) and its returning arrows.

use qlab::graded::{graded_dims, stable_translation_check};
use qlab::io::parse_bound_quiver;
use qlab::trivext::trivial_extension;

fn main() -> qlab::Result<()> {
    let a3 = parse_bound_quiver(
        r#"{"vertices":["1","2","3"],
            "arrows":[{"id":"a","from":"1","to":"2"},{"id":"b","from":"2","to":"3"}],
            "relations":[[{"coeff":"1","path":["b","a"]}]]}"#,
    )?;
    let te = trivial_extension(&a3, None)?;
    println!("n = {}, twist = {}", te.n, te.twist);
    let q = te.bound.quiver();
    for a in te.returning_arrows() {
        let arrow = q.arrow(a);
        println!("returning {}: {} -> {}", arrow.id, q.vertex_id(arrow.source), q.vertex_id(arrow.target));
    }
    for r in te.bound.relations() {
        println!("  {}", r.display(q));
    }
    let (gd, _) = graded_dims(&te.bound, te.n + 2);
    println!("total dimension {}", gd.total());
    println!("{:?}", stable_translation_check(&gd, te.n));
    Ok(())
}
