use std::io;
use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = symtau_cli::run(std::env::args_os(), &mut io::stdin().lock());
    if symtau_cli::write_outcome(&outcome, &mut io::stdout().lock(), &mut io::stderr().lock()).is_err() {
        return ExitCode::from(1);
    }
    ExitCode::from(outcome.code as u8)
}
