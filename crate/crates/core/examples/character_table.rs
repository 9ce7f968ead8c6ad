//! McKay quiver from the character table of ℤ/4 × ℤ/4.

use num_complex::Complex64;
use qlab::iso::is_isomorphic;
use qlab::mckay::{abelian_character_table, mckay_abelian, mckay_from_characters, AbelianSpec, CHARACTER_TOLERANCE};
use qlab::quiver::BoundQuiver;

fn main() -> qlab::Result<()> {
    let spec = AbelianSpec::new(vec![4, 4])?;
    let table = abelian_character_table(&spec);
    table.check_orthonormal(CHARACTER_TOLERANCE)?;
    // V = χ_{(1,0)} ⊕ χ_{(0,1)} ⊕ χ_{(3,3)}
    let rows: Vec<usize> = [[1, 0], [0, 1], [3, 3]].iter().map(|g| spec.index_of(g)).collect();
    let chi: Vec<Complex64> = table.sum_of_rows(&rows);
    let q = mckay_from_characters(&table, &chi)?;
    println!("{} vertices, {} arrows", q.vertex_count(), q.arrow_count());
    let same = is_isomorphic(&BoundQuiver::free(q), &BoundQuiver::free(mckay_abelian(&spec)));
    println!("matches the abelian construction: {same}");
    Ok(())
}
