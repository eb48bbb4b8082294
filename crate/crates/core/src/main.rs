fn main() {
    let out = hdeform::cli::run(std::env::args_os());
    print!("{}", out.stdout);
    std::process::exit(out.code);
}
