//! Assembling a complex from a CNF formula with the default plan.

use pltopo::reduce::{assemble_k_phi, default_plan, CnfFormula};

pub fn run_example() {
    let phi = CnfFormula::parse_dimacs("p cnf 3 2\n1 -2 3 0\n-1 2 0\n").unwrap();
    let plan = default_plan(&phi);
    println!("plan: {} spheres, {} tori", plan.spheres.len(), plan.tori.len());
    let out = assemble_k_phi(&phi, 2, 4, &plan).unwrap();
    println!(
        "K: dim {}, {} vertices, {} simplices (bound {})",
        out.complex.dim(),
        out.complex.vertex_count(),
        out.provenance.simplex_count,
        out.provenance.size_bound
    );
    for a in &out.provenance.attachments {
        println!("  {}: meridian on {:?}, parallel on {:?}", a.torus, a.meridian_face, a.parallel_face);
    }
    match assemble_k_phi(&phi, 2, 5, &plan) {
        Err(e) => println!("(k, d) = (2, 5): {e}"),
        Ok(_) => unreachable!(),
    }
}

#[allow(dead_code)]
fn main() {
    run_example();
}
