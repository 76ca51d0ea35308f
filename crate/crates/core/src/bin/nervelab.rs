fn main() {
    let argv: Vec<String> = std::env::args().collect();
    std::process::exit(nervelab::lab::run_cli(&argv));
}
