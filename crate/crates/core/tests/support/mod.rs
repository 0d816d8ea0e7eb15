#![allow(dead_code)]

pub mod backends;
pub mod gen;
pub mod oracle;
