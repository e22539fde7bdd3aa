use std::io;
use std::process::ExitCode;

fn main() -> ExitCode {
    let seed = std::env::var(lamkit_cli::SEED_ENV).ok();
    let code = lamkit_cli::run(
        std::env::args_os(),
        &mut io::stdin().lock(),
        &mut io::stdout().lock(),
        &mut io::stderr().lock(),
        seed.as_deref(),
    );
    ExitCode::from(code as u8)
}
