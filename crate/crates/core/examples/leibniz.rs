//! Triple intersection counts of cones over a torus and two spheres.

use pltopo::link::{borromean_check, leibniz_terms};
use pltopo::random;

pub fn run_example() {
    let mut r = random::rng(5);
    for _ in 0..2 {
        let cfg = random::borromean_config(&mut r, 2, 1).unwrap();
        let lk = borromean_check(&cfg).unwrap().bits();
        let rep = leibniz_terms(&cfg).unwrap();
        println!("lk bits {lk:?}; terms {:?} from counts {:?}, sum {}, apexes {:?}", rep.terms, rep.counts, rep.sum, rep.apexes);
    }
}

#[allow(dead_code)]
fn main() {
    run_example();
}
