use std::io::Read;

fn main() {
    let argv: Vec<String> = std::env::args().collect();
    // Only proof-check reads standard input, and only when asked to.
    let wants_stdin = argv.iter().any(|a| a == "proof-check") && argv.iter().any(|a| a == "-");
    let mut stdin = String::new();
    if wants_stdin {
        std::io::stdin()
            .read_to_string(&mut stdin)
            .expect("standard input is not valid UTF-8");
    }
    let (code, out, err) = contalg::cli::run(&argv, &stdin);
    print!("{out}");
    eprint!("{err}");
    std::process::exit(code);
}
