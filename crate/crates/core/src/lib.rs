pub mod error;
pub mod gfp;
pub mod linalg;
pub mod catalog;
pub mod cli;
pub mod classify;
pub mod image;
pub mod liecore;
