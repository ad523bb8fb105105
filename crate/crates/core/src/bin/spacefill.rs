fn main() {
    std::process::exit(spacefill::cli::run(std::env::args_os()));
}
