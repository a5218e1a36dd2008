//! Moving arrows of degree `1 − m` across to their duals, and the split
//! presentation of `Γ(Q̃, W)` for the relation-extended square.
//!
//! ```text
//! cargo run --example graded_reduction
//! ```

use std::sync::Arc;

use ginzburg_dg::ginzburg::{
    build_ginzburg, build_qw, check_d_squared, check_dg_isomorphism, completion_presentation,
    reduce_degree_window, RelationSequence, SampleOptions,
};
use ginzburg_dg::{GradedQuiver, PathElement, Superpotential};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let m = 4;
    let q = Arc::new(
        GradedQuiver::builder()
            .vertices(&["1", "2", "3"])
            .arrow("a", "1", "2", 0)
            .arrow("b", "2", "3", 0)
            .arrow("c", "3", "1", 2 - m)
            .arrow("s", "2", "1", 1 - m)
            .build()?,
    );
    let w = Superpotential::cyclic_reduce(&PathElement::path(&q, &["a", "b", "c"])?)?;
    println!("W = {}", w.to_element());
    let (qr, wr, f) = reduce_degree_window(&q, &w, m)?;
    for a in qr.arrows() {
        println!(
            "  {} : {} -> {}  degree {}",
            a.id, a.source, a.target, a.degree
        );
    }
    let g = build_ginzburg(&q, &w, m)?;
    let gr = build_ginzburg(&qr, &wr, m)?;
    for (from, sign, to) in f.entries() {
        if from != to || sign != 1 {
            println!("  {from} -> {sign} {to}");
        }
    }
    println!("isomorphism: {}", check_dg_isomorphism(&f, &gr, &g)?);

    let sq = Arc::new(
        GradedQuiver::builder()
            .vertices(&["v1", "v2", "v3", "v4"])
            .arrow("a", "v1", "v2", 0)
            .arrow("b", "v2", "v4", 0)
            .arrow("c", "v1", "v3", 0)
            .arrow("d", "v3", "v4", 0)
            .build()?,
    );
    let rho = PathElement::path(&sq, &["a", "b"])?.sub(&PathElement::path(&sq, &["c", "d"])?)?;
    let r = RelationSequence::from_entries(&sq, [("r", "v1", "v4", rho)])?;
    for m in 2..=5 {
        let (qt, w) = build_qw(&sq, &r, m)?;
        let g = build_ginzburg(&qt, &w, m)?;
        let pres = completion_presentation(&qt, &w, &["a", "b", "c", "d"], m)?;
        println!(
            "m = {m}: Q' = {{{}}}, d^2 {}, phi {}",
            pres.sub_arrows.join(", "),
            check_d_squared(&pres.completion, SampleOptions::default()),
            check_dg_isomorphism(&pres.phi, &pres.completion, &g)?
        );
    }
    Ok(())
}
