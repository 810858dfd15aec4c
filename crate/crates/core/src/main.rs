fn main() {
    std::process::exit(residua::cli::run(std::env::args_os()));
}
