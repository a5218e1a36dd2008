//! The quaternion-type algebra on two loops: admissibility, dimension, a
//! system of relations, and why dropping `α²β` changes the ideal.
//!
//! ```text
//! cargo run --example quaternion_relations
//! ```

use std::collections::BTreeMap;

use ginzburg_dg::dsl;
use ginzburg_dg::ideals::{
    representation_witness, system_of_relations, AdmissibleIdeal, DEFAULT_MAX_N,
};
use ginzburg_dg::linalg::DenseMatrix;
use ginzburg_dg::PathElement;

const FILE: &str = "\
vertex v
arrow alpha : v -> v
arrow beta : v -> v
relation r1 : v -> v = alpha*alpha - beta*alpha*beta
relation r2 : v -> v = beta*beta - alpha*beta*alpha
relation r3 : v -> v = alpha*alpha*beta
";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = dsl::parse(FILE).map_err(|d| format!("{d:?}"))?;
    let (q, r) = (&p.quiver, &p.relations);

    let ideal = AdmissibleIdeal::new(r, DEFAULT_MAX_N)?;
    println!("r^{} lies in I", ideal.bound());
    println!("dim KQ/I = {}", ideal.algebra_dim());
    let basis: Vec<String> = ideal
        .algebra_basis()
        .iter()
        .map(|p| q.format_path(p))
        .collect();
    println!("basis: {}", basis.join(", "));

    let a2b = PathElement::path(q, &["alpha", "alpha", "beta"])?;
    println!("alpha^2 beta in I: {}", ideal.contains(&a2b)?);
    println!(
        "alpha^2 beta in Ir + rI: {}",
        ideal.boundary_image_is_zero(&a2b)?
    );
    println!("dim I/(Ir + rI) = {}", ideal.boundary_quotient_dim());

    let sys = system_of_relations(r, ideal.bound())?;
    println!("system of relations:");
    for rel in sys.entries() {
        println!("  {}: {}", rel.label, rel.body);
    }

    // alpha = beta = 1 on K kills r1 and r2 but not alpha^2 beta
    let dims = BTreeMap::from([("v".to_string(), 1)]);
    let one = DenseMatrix::identity(1);
    let maps = BTreeMap::from([
        ("alpha".to_string(), one.clone()),
        ("beta".to_string(), one),
    ]);
    for rel in &r.entries()[..2] {
        let x = representation_witness(q, &dims, &maps, &rel.body)?;
        println!("{} acts as {}", rel.label, x.get(0, 0));
    }
    let x = representation_witness(q, &dims, &maps, &a2b)?;
    println!("alpha^2 beta acts as {}", x.get(0, 0));
    let partial = r.select(&[0, 1]);
    match AdmissibleIdeal::new(&partial, DEFAULT_MAX_N) {
        Ok(i) => println!("(r1, r2) admissible with bound {}", i.bound()),
        Err(e) => println!("(r1, r2): {e}"),
    }
    Ok(())
}
