fn main() {
    std::process::exit(rsclass_cli::run(std::env::args_os()));
}
