//! McKay quiver of ℤ/4 × ℤ/4 and the relations of Λ̃(4, 4).

use qlab::graded::{graded_dims, stable_translation_check};
use qlab::mckay::{mckay_abelian, relations_sr, AbelianSpec, SrParams};

fn main() -> qlab::Result<()> {
    let spec = AbelianSpec::new(vec![4, 4])?;
    let q = mckay_abelian(&spec);
    println!("McKay quiver: {} vertices, {} arrows", q.vertex_count(), q.arrow_count());

    let bq = relations_sr(4, 4, &SrParams::ones(4, 4))?;
    println!("{} quadratic relations", bq.relations().len());
    for r in bq.relations().iter().take(3) {
        println!("  {}", r.display(bq.quiver()));
    }

    let (gd, _) = graded_dims(&bq, 4);
    println!("Hilbert series at 0,0: {:?}", gd.hilbert(0));
    println!("stability: {:?}", stable_translation_check(&gd, 2));
    Ok(())
}
