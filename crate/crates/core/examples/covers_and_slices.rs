//! Separated ℤ-cover of Λ̃(4, 4), a complete τ-slice, and one τ-mutation.

use qlab::cover::{complete_tau_slice, tau_mutation, z_separated, Mutation};
use qlab::graded::{is_n_properly_graded, is_nicely_graded};
use qlab::iso::is_isomorphic;
use qlab::mckay::{relations_sr, SrParams};

fn main() -> qlab::Result<()> {
    let base = relations_sr(4, 4, &SrParams::ones(4, 4))?;
    let w = z_separated(&base, -3, 5);
    println!("window: {} vertices, {} components", w.quiver().vertex_count(), w.component_count());

    let slice = complete_tau_slice(&w, 0)?;
    println!("slice: {} vertices, {} arrows", slice.quiver().vertex_count(), slice.quiver().arrow_count());
    println!("properly graded: {:?}", is_n_properly_graded(&slice, 8)?);
    println!("nicely graded: {:?}", is_nicely_graded(slice.quiver()));

    let sources: Vec<String> = slice
        .quiver()
        .vertices()
        .iter()
        .enumerate()
        .filter(|&(v, _)| slice.quiver().in_arrows(v).is_empty())
        .map(|(_, id)| id.clone())
        .collect();
    let once = tau_mutation(&w, &slice, &sources[0], Mutation::Source)?;
    let image = sources[0].replace("@0", "@3");
    let back = tau_mutation(&w, &once, &image, Mutation::Sink)?;
    println!("mutate {} then {image} back: identity = {}", sources[0], back == slice);

    let mut current = slice.clone();
    for v in &sources {
        current = tau_mutation(&w, &current, v, Mutation::Source)?;
    }
    let next = complete_tau_slice(&w, 1)?;
    println!("all {} sources mutated: isomorphic to the slice at 1 = {}", sources.len(), is_isomorphic(&current, &next));
    Ok(())
}
