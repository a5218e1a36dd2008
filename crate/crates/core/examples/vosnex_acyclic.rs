//! For acyclic quivers without relations all four conditions hold; adding a
//! relation breaks them together.
//!
//! ```text
//! cargo run --example vosnex_acyclic
//! ```

use std::sync::Arc;

use ginzburg_dg::ginzburg::RelationSequence;
use ginzburg_dg::homology::vosnex_equivalence_check;
use ginzburg_dg::{GradedQuiver, PathElement};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let d4 = Arc::new(
        GradedQuiver::builder()
            .vertices(&["1", "2", "3", "4"])
            .arrow("a", "1", "2", 0)
            .arrow("b", "3", "2", 0)
            .arrow("c", "4", "2", 0)
            .build()?,
    );
    let a3 = Arc::new(
        GradedQuiver::builder()
            .vertices(&["1", "2", "3"])
            .arrow("x", "1", "2", 0)
            .arrow("y", "2", "3", 0)
            .build()?,
    );
    let mut zero_path = RelationSequence::new(&a3);
    zero_path.push("r", "1", "3", PathElement::path(&a3, &["x", "y"])?)?;

    let cases = [
        ("D4, no relations", &d4, RelationSequence::new(&d4)),
        ("A3, no relations", &a3, RelationSequence::new(&a3)),
        ("A3, xy = 0", &a3, zero_path),
    ];
    for (name, q, r) in cases {
        for m in [3, 4] {
            let v = vosnex_equivalence_check(q, &r, m, None, 12)?;
            println!(
                "{name}, m = {m}: a={} b={} c={} d={} agree={} dims={:?}",
                v.a,
                v.b,
                v.c,
                v.d,
                v.all_agree(),
                v.homology.dims.values().collect::<Vec<_>>()
            );
        }
    }
    Ok(())
}
