//! Quadratic duals: the commutative square and the involution check.

use qlab::dual::{dual_involution_check, quadratic_dual, relation_ranks};
use qlab::io::{parse_bound_quiver, to_json};

fn main() -> qlab::Result<()> {
    let square = parse_bound_quiver(
        r#"{"vertices":["s","x","y","t"],
            "arrows":[{"id":"a","from":"s","to":"x"},{"id":"b","from":"s","to":"y"},
                      {"id":"c","from":"x","to":"t"},{"id":"d","from":"y","to":"t"}],
            "relations":[[{"coeff":"1","path":["c","a"]},{"coeff":"-1","path":["d","b"]}]]}"#,
    )?;
    let dual = quadratic_dual(&square)?;
    print!("{}", to_json(&dual));
    // (source, target, paths, relations)
    println!("ranks: {:?}", relation_ranks(&dual));
    println!("dual of dual equals input: {}", dual_involution_check(&square)?);
    Ok(())
}
