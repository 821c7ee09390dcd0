fn main() {
    std::process::exit(evolutoids::commands::main_with_args(std::env::args_os()));
}
