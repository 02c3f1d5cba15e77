fn main() {
    std::process::exit(crcode::cli::run(std::env::args_os()));
}
