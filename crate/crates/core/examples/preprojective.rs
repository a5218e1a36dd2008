//! `m = 1` and `W = 0`: `H⁰` of the Ginzburg algebra is the preprojective
//! algebra. Also shows `B(Q,R)` inside `Γ(Q,R,m)`.
//!
//! ```text
//! cargo run --example preprojective
//! ```

use std::sync::Arc;

use ginzburg_dg::ginzburg::{build_gamma, verify_sub_dg, ArrowRole, RelationSequence};
use ginzburg_dg::homology::m1_preprojective_check;
use ginzburg_dg::{GradedQuiver, PathElement};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let a3 = Arc::new(
        GradedQuiver::builder()
            .vertices(&["1", "2", "3"])
            .arrow("x", "1", "2", 0)
            .arrow("y", "2", "3", 0)
            .build()?,
    );
    let h0 = m1_preprojective_check(&a3)?;
    for (v, rel) in &h0.relations {
        println!("mesh at {v}: {rel}");
    }

    let mut r = RelationSequence::new(&a3);
    r.push("r", "1", "3", PathElement::path(&a3, &["x", "y"])?)?;
    let g = build_gamma(&a3, &r, 3)?;
    let roles = g.roles();
    let mut sub: Vec<&str> = a3.arrows().iter().map(|a| a.id.as_str()).collect();
    for (i, role) in roles.iter().enumerate() {
        if let ArrowRole::Dual(x) = role {
            if matches!(roles[*x], ArrowRole::Eps(_)) {
                sub.push(g.quiver().arrow_id(i));
            }
        }
    }
    println!(
        "sub-dg on {{{}}}: {}",
        sub.join(", "),
        verify_sub_dg(&g, &sub)?
    );
    Ok(())
}
