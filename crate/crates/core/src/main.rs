use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(concept_nmr::cli::main_entry())
}
