//! Session-file front end for the dual Hilbert-Samuel engine.

pub mod report;
pub mod script;
pub mod session;

pub use report::{render, CommandReport};
pub use script::{parse, FieldChoice, Format, ParseError, Script};
pub use session::{run_session, Emission, Options, Outcome};

/// Parse and run a script in one go.
pub fn run_text(text: &str, opts: &Options) -> Result<Outcome, Vec<ParseError>> {
    parse(text).map(|s| run_session(&s, opts))
}
