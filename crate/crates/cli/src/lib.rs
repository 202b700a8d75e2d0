//! Module files, diagrams and the verification suite behind the
//! `beilinson` binary.

pub mod diagram;
pub mod modfile;
pub mod verify;
