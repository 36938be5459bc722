fn main() {
    let (code, out, err) = gkz::cli::run(std::env::args().collect());
    print!("{out}");
    eprint!("{err}");
    std::process::exit(code);
}
