fn main() {
    let code = egn4d::cli::run(std::env::args_os(), &mut std::io::stdout().lock());
    std::process::exit(code);
}
