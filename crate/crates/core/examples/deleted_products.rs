//! Deleted products and their swap involution.

use pltopo::complex::{boundary_sphere, deleted_product, torus_gadget};

pub fn run_example() {
    for (name, k) in [("∂Δ²", boundary_sphere(1)), ("∂Δ³", boundary_sphere(2)), ("torus", torus_gadget(1))] {
        let dp = deleted_product(&k);
        println!("{name}: {} cells, fixed-point-free {}", dp.cells().len(), dp.is_fixed_point_free());
        for ((i, j), n) in dp.census() {
            println!("  ({i},{j}) x {n}");
        }
    }
}

#[allow(dead_code)]
fn main() {
    run_example();
}
