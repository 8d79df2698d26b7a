//! File formats, number handling and the command-line interface built on
//! `nbg-core`.

pub mod cli;
pub mod io;
pub mod num;
pub mod reproduce;
