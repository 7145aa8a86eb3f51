fn main() {
    let (code, out) = neron::cli::run(std::env::args_os());
    print!("{out}");
    std::process::exit(code);
}
