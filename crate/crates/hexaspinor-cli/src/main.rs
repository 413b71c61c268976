fn main() {
    std::process::exit(hexaspinor_cli::run(std::env::args_os()));
}
