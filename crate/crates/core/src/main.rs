fn main() {
    std::process::exit(brauer_typec::cli::run(std::env::args_os()));
}
