pub mod emit;
pub mod error;
pub mod input;
pub mod oracle;
pub mod printed;
pub mod report;
pub mod run;
pub mod verify;

pub use error::CliError;
