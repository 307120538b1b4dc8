//! Staircase products and the torus gadget with its meridian and parallel.

use pltopo::complex::{boundary_sphere, is_isomorphic, staircase_product, torus_gadget};

pub fn run_example() {
    let circle = boundary_sphere(1);
    let t = staircase_product(&circle, &circle);
    println!("∂Δ² × ∂Δ²: f = {:?}, χ = {}", t.face_vector(), t.euler_characteristic());
    for l in 1..=2 {
        let g = torus_gadget(l);
        let m = g.mark("m").unwrap();
        let p = g.mark("p").unwrap();
        let meet: Vec<_> = m.used_vertices().intersection(&p.used_vertices()).copied().collect();
        println!(
            "l = {l}: dim {}, f = {:?}, m ≅ ∂Δ^{}: {}, m ∩ p = {meet:?}",
            g.dim(),
            g.face_vector(),
            l + 1,
            is_isomorphic(&m.compacted(), &boundary_sphere(l)),
        );
    }
}

#[allow(dead_code)]
fn main() {
    run_example();
}
