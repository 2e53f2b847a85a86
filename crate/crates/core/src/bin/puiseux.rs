fn main() {
    let code = puiseux::cli::execute(std::env::args_os(), &mut std::io::stdout(), &mut std::io::stderr());
    std::process::exit(code);
}
