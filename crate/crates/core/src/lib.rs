//! Exact search and decision procedures for partition regularity of
//! polynomial and exponential configurations over the positive integers.

pub mod coloring;
pub mod config;
pub mod decide;
pub mod padic;
pub mod poly;
pub mod registry;
pub mod report;
pub mod search;
pub mod verify;
