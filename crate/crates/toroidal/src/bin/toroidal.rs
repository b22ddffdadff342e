fn main() {
    std::process::exit(toroidal::cli::run(std::env::args_os()));
}
