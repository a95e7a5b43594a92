use clap::Parser;

use certalg_cli::{run, Cli, ExitCode};

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { ExitCode::Usage.code() } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let out = run(&cli.command);
    if cli.json {
        println!("{}", out.to_json());
    } else if out.code == ExitCode::Ok {
        print!("{}", out.text);
    } else {
        eprint!("{}", out.text);
    }
    std::process::exit(out.code.code());
}
