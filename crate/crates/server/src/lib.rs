//! Service layer for the temporal event pipeline: configuration, the HTTP API
//! and curated example sentences. The `tempevent` binary wraps these in a CLI.

pub mod config;
pub mod examples;
pub mod http;

pub use config::Config;
pub use http::{router, AppState};
