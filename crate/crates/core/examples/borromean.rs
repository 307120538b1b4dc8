//! The l = 0 configuration of two spheres and a four-point torus.

use pltopo::link::{borromean_check, remark_a_config};

pub fn run_example() {
    for k in 1..=2 {
        let cfg = remark_a_config(k).unwrap();
        let rep = borromean_check(&cfg).unwrap();
        println!("k = {k}: bits {:?}, all properties {}", rep.bits(), rep.all_hold());
        for line in &rep.transcript {
            println!("  {line}");
        }
    }
}

#[allow(dead_code)]
fn main() {
    run_example();
}
