#![allow(dead_code)]

use std::net::SocketAddr;
use std::process::Command;

use tempevent_core::BackendRegistry;
use tempevent_server::{router, AppState};

pub const BIN: &str = env!("CARGO_BIN_EXE_tempevent");

/// Starts the service on an ephemeral port for the lifetime of the runtime.
pub async fn spawn_server(max_text_chars: usize) -> SocketAddr {
    spawn_with(BackendRegistry::default(), max_text_chars).await
}

pub async fn spawn_with(registry: BackendRegistry, max_text_chars: usize) -> SocketAddr {
    let listener = tokio::net::TcpListener::bind("127.0.0.1:0").await.unwrap();
    let addr = listener.local_addr().unwrap();
    let app = router(AppState::new(registry, max_text_chars));
    tokio::spawn(async move { axum::serve(listener, app).await.unwrap() });
    addr
}

pub async fn post(client: &reqwest::Client, addr: SocketAddr, body: &serde_json::Value) -> (u16, String) {
    let resp = client
        .post(format!("http://{addr}/annotate"))
        .header("content-type", "application/json")
        .body(body.to_string())
        .send()
        .await
        .unwrap();
    (resp.status().as_u16(), resp.text().await.unwrap())
}

pub async fn get(client: &reqwest::Client, addr: SocketAddr, path: &str) -> (u16, serde_json::Value) {
    let resp = client.get(format!("http://{addr}{path}")).send().await.unwrap();
    let status = resp.status().as_u16();
    (status, serde_json::from_str(&resp.text().await.unwrap()).unwrap())
}

pub struct ParityInput {
    pub domain: String,
    pub text: String,
}

pub fn parity_inputs() -> Vec<ParityInput> {
    let v: Vec<serde_json::Value> =
        serde_json::from_str(include_str!("../fixtures/parity_inputs.json")).unwrap();
    v.into_iter()
        .map(|x| ParityInput {
            domain: x["domain"].as_str().unwrap().into(),
            text: x["text"].as_str().unwrap().into(),
        })
        .collect()
}

/// Runs the CLI and returns (exit code, stdout, stderr).
pub fn cli(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(BIN).args(args).output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}
