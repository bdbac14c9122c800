fn main() {
    pia2_cli::scan::init_threads();
    let code = pia2_cli::run(std::env::args_os(), &mut std::io::stdout().lock(), &mut std::io::stderr().lock());
    std::process::exit(code);
}
