//! Scenario language, runner and report rendering for `cmlab`.

pub mod ast;
pub mod parse;
pub mod report;
pub mod run;
pub mod scenarios;
