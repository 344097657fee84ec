use std::process::ExitCode;

use env_logger::Env;

fn main() -> ExitCode {
    env_logger::Builder::from_env(Env::new().filter_or("MZETA_LOG", "warn")).init();
    let code = match mzeta_cli::parse_args(std::env::args_os().skip(1)) {
        Ok(config) => mzeta_cli::run(&config),
        Err(e) => {
            match e {
                mzeta_cli::CliError::Info(ref text) => print!("{text}"),
                mzeta_cli::CliError::Usage(ref text) => eprint!("{text}"),
            }
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
