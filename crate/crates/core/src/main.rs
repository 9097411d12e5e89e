fn main() {
    std::process::exit(sectionlab::cli::run(std::env::args_os()));
}
