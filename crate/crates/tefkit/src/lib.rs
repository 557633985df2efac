//! JSON formats, parallel search and the command-line front end for
//! [`tefkit_core`].

pub mod cli;
pub mod json;
pub mod parallel;
