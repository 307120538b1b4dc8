//! Driving the command-line front end in-process.

use pltopo::cli::run;

pub fn run_example() {
    let dir = std::env::temp_dir().join(format!("pltopo-example-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("remark_a.json");
    let cfg_s = cfg.display().to_string();
    let r = run(["pltopo", "gen-remark-a", "--k", "1", "--out", &cfg_s]);
    println!("gen-remark-a: exit {}", r.exit_code());
    let r = run(["pltopo", "borromean-check", "--in", &cfg_s]);
    println!("borromean-check: exit {}, {}", r.exit_code(), r.payload);
    let _ = std::fs::remove_dir_all(&dir);
}

#[allow(dead_code)]
fn main() {
    run_example();
}
