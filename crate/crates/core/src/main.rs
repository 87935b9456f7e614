fn main() {
    std::process::exit(amenable_dim::cli::run(std::env::args_os()));
}
