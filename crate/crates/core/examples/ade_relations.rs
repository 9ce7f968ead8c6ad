//! The Ξ family on extended Dynkin diagrams with loops, for J empty and full.

use qlab::graded::{graded_dims, stable_translation_check};
use qlab::mckay::{relations_xi, AdeFamily, XiSpec};

fn main() -> qlab::Result<()> {
    for (family, l) in [(AdeFamily::A, 5), (AdeFamily::D, 4), (AdeFamily::E6, 6)] {
        let labels = XiSpec::new(family, l).vertex_labels()?;
        for j in [vec![], labels.clone()] {
            let spec = XiSpec::new(family, l).with_j(j.clone());
            let bq = relations_xi(&spec)?;
            let (gd, _) = graded_dims(&bq, 4);
            let stable = stable_translation_check(&gd, 2).is_stable();
            println!("{family}{l} |J|={} relations={} stable={stable}", j.len(), bq.relations().len());
            for i in 0..bq.quiver().vertex_count() {
                println!("  {:>3}: {:?}", bq.quiver().vertex_id(i), gd.hilbert(i));
            }
        }
    }
    Ok(())
}
