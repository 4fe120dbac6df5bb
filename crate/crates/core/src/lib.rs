pub mod basis;
pub mod cli;
pub mod boseck;
pub mod decomp;
pub mod deform;
pub mod digits;
pub mod error;
pub mod extension;
pub mod modrep;
pub mod par;
pub mod sweep;
pub mod verify;

pub use error::{Error, Result};
pub use extension::{
    validate_spec, CyclicPlace, ElabPlace, ExtensionKind, ExtensionSpec, GroupParams, Rule, TamePlace,
    ValidationReport, Violation,
};
pub use par::ExecMode;
