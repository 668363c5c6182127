fn main() {
    std::process::exit(border3::cli::run(std::env::args_os()));
}
