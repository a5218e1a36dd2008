//! The commutative square: `H⁰` of `Γ(Q,R,m)` for `m = 2, 3, 4` and the split
//! extension at `m = 2`.
//!
//! ```text
//! cargo run --example square_d4
//! ```

use ginzburg_dg::dsl;
use ginzburg_dg::ginzburg::build_gamma;
use ginzburg_dg::homology::{h0_presentation, homology_dims};
use ginzburg_dg::ideals::{algebra_dim, find_admissibility_bound, split_extension_check};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/fixtures/square_d4.quiver"
    ))?;
    let p = dsl::parse(&text).map_err(|d| format!("{d:?}"))?;
    let (q, r) = (&p.quiver, &p.relations);
    let n = find_admissibility_bound(r, 12)?;
    println!("dim KQ/(R) = {}", algebra_dim(r, n)?);

    for m in [2, 3, 4] {
        let g = build_gamma(q, r, m)?;
        println!("m = {m}");
        for (id, d) in g.differentials() {
            if !d.is_zero() {
                println!("  d({id}) = {d}");
            }
        }
        let h0 = h0_presentation(&g)?;
        let arrows: Vec<&str> = h0.quiver.arrows().iter().map(|a| a.id.as_str()).collect();
        println!("  H0 arrows: {}", arrows.join(" "));
        for x in h0.nonzero() {
            println!("  H0 relation: {x}");
        }
        if m > 2 {
            let h = homology_dims(&g, m, (m + 2) as usize)?;
            println!("  dims {:?} (stabilized: {})", h.dims, h.stabilized);
        }
    }
    println!(
        "split extension at m = 2: {}",
        split_extension_check(r, 12)?
    );
    Ok(())
}
