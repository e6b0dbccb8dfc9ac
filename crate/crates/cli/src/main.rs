fn main() {
    std::process::exit(fdq_cli::run_command(std::env::args_os()));
}
