fn main() {
    std::process::exit(lfsort_core::cli::run(std::env::args_os()));
}
