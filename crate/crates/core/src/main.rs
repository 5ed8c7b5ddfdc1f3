fn main() {
    std::process::exit(gkp_squeezing::cli::run(std::env::args_os()));
}
