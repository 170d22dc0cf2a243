pub mod catalog;
pub mod classify;
pub mod cli;
pub mod error;
pub mod linalg;
pub mod literal;
pub mod matrix_file;
pub mod presentation;
pub mod report;
pub mod structure;
pub mod suites;
pub mod verify;
