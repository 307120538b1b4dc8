fn main() {
    let result = pltopo::cli::run(std::env::args_os());
    if let Some(help) = result.payload.get("help").and_then(|h| h.as_str()) {
        print!("{help}");
    } else {
        let v = serde_json::to_value(&result).expect("serializable");
        print!("{}", pltopo::io::to_pretty(&v));
    }
    std::process::exit(result.exit_code());
}
