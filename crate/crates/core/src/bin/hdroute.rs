fn main() {
    let code = hdroute::cli::run(std::env::args_os(), &mut std::io::stdout().lock());
    std::process::exit(code);
}
