//! One vertex, no arrows: the relation sequences `{}` and `{0}` give the same
//! algebra `K` but different Ginzburg dg-algebras.
//!
//! ```text
//! cargo run --example nonuniq_homology
//! ```

use std::sync::Arc;

use ginzburg_dg::ginzburg::{build_gamma, RelationSequence};
use ginzburg_dg::homology::{homology_dims, TruncatedComplex};
use ginzburg_dg::{GradedQuiver, PathElement};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let q = Arc::new(GradedQuiver::builder().vertex("v").build()?);
    let empty = RelationSequence::new(&q);
    let mut zero = RelationSequence::new(&q);
    zero.push("z", "v", "v", PathElement::zero(&q))?;

    for m in 3..=6 {
        let l = (m + 2) as usize;
        let a = homology_dims(&build_gamma(&q, &empty, m)?, m, l)?;
        let b = homology_dims(&build_gamma(&q, &zero, m)?, m, l)?;
        println!("m = {m}, L = {l}");
        println!(
            "  R = {{}}   dims {:?}",
            a.dims.values().collect::<Vec<_>>()
        );
        println!(
            "  R = {{0}}  dims {:?}",
            b.dims.values().collect::<Vec<_>>()
        );
    }

    // the graded pieces behind the m = 4 numbers
    let m = 4;
    let g = build_gamma(&q, &zero, m)?;
    for (id, d) in g.differentials() {
        println!("d({id}) = {d}");
    }
    let c = TruncatedComplex::build(&g, 6, -m, 1)?;
    let gq = g.quiver();
    for i in (-(m - 1)..=0).rev() {
        let basis: Vec<String> = c
            .component(i)
            .unwrap()
            .iter()
            .map(|p| gq.format_path(p))
            .collect();
        println!("degree {i}: {}", basis.join(", "));
    }
    Ok(())
}
