fn main() {
    std::process::exit(veronese::cli::run(std::env::args_os()));
}
