//! `A₂` with `n` zero relations: the same `H⁰` as without relations but
//! `dim H^{2−m}` at least `n`.
//!
//! ```text
//! cargo run --example dynkin_separation
//! ```

use std::sync::Arc;

use ginzburg_dg::ginzburg::{build_gamma, RelationSequence};
use ginzburg_dg::homology::snex_table;
use ginzburg_dg::{GradedQuiver, PathElement};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let q = Arc::new(
        GradedQuiver::builder()
            .vertices(&["1", "2"])
            .arrow("a", "1", "2", 0)
            .build()?,
    );
    let m = 3;
    for n in 0..=4 {
        let mut r = RelationSequence::new(&q);
        for k in 0..n {
            r.push(&format!("z{k}"), "1", "1", PathElement::zero(&q))?;
        }
        let t = snex_table(&build_gamma(&q, &r, m)?, m, 6)?;
        let row: Vec<String> = t.rows.iter().map(|(i, d)| format!("H^-{i}: {d}")).collect();
        println!(
            "n = {n}: {}{}",
            row.join(", "),
            t.caveat.map(|c| format!(" ({c})")).unwrap_or_default()
        );
    }
    Ok(())
}
