fn main() {
    let args: Vec<String> = std::env::args().collect();
    std::process::exit(moebounds::cli::run(&args));
}
