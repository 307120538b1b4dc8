//! Preimages of cycles under PL maps.

use pltopo::plmap::preimage_cycle_with_report;
use pltopo::random;

pub fn run_example() {
    let mut r = random::rng(11);
    let (f, c) = random::polygon_case(&mut r);
    let rep = preimage_cycle_with_report(&f, &c).unwrap();
    println!("polygon with {} vertices meets the triangle {} times", f.domain().vertex_count(), rep.cycle.len());

    let (f, c) = random::surface_case(&mut r);
    let rep = preimage_cycle_with_report(&f, &c).unwrap();
    println!(
        "surface: {} pieces, preimage 1-cycle with {} edges (cycle: {}), {} wall cells",
        rep.pieces.len(),
        rep.cycle.len(),
        rep.cycle.is_cycle(),
        rep.wall_cells
    );
}

#[allow(dead_code)]
fn main() {
    run_example();
}
