use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(tcorona_cli::run())
}
