mod common;

use common::{get, parity_inputs, post, spawn_server};
use serde_json::{json, Value};
use tempevent_core::format::to_json;
use tempevent_core::{annotate, AnnotateOptions, BackendRegistry, SCHEMA_VERSION};

#[tokio::test]
async fn annotate_matches_library_output() {
    let addr = spawn_server(20_000).await;
    let client = reqwest::Client::new();
    let registry = BackendRegistry::default();
    for input in parity_inputs().iter().take(5) {
        let (status, body) = post(&client, addr, &json!({"text": input.text, "domain": input.domain})).await;
        assert_eq!(status, 200, "{body}");
        let expected = annotate(&input.text, &input.domain, &registry, &AnnotateOptions::default()).unwrap();
        assert_eq!(body, to_json(&expected));
    }
}

#[tokio::test]
async fn domain_defaults_to_news_and_options_apply() {
    let addr = spawn_server(20_000).await;
    let client = reqwest::Client::new();
    let text = "The United States is not considering sending troops to Mozambique.";
    let (_, a) = post(&client, addr, &json!({"text": text})).await;
    let (_, b) = post(&client, addr, &json!({"text": text, "domain": "news"})).await;
    assert_eq!(a, b);
    let v: Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["version"], SCHEMA_VERSION);

    let (status, strict) = post(&client, addr, &json!({"text": text, "options": {"trigger_threshold": 0.99}})).await;
    assert_eq!(status, 200);
    let strict: Value = serde_json::from_str(&strict).unwrap();
    assert!(strict["events"].as_array().unwrap().len() < v["events"].as_array().unwrap().len());
}

#[tokio::test]
async fn malformed_requests_are_400() {
    let addr = spawn_server(20_000).await;
    let client = reqwest::Client::new();
    for body in ["not json", "{}", r#"{"text": 5}"#, r#"{"text": "a", "colour": 1}"#] {
        let resp = client
            .post(format!("http://{addr}/annotate"))
            .body(body)
            .send()
            .await
            .unwrap();
        assert_eq!(resp.status().as_u16(), 400, "{body}");
        let v: Value = serde_json::from_str(&resp.text().await.unwrap()).unwrap();
        assert_eq!(v["error"]["kind"], "bad_request");
        assert_eq!(v["version"], SCHEMA_VERSION);
    }
}

#[tokio::test]
async fn unknown_domain_lists_registered_domains() {
    let addr = spawn_server(20_000).await;
    let (status, body) = post(&reqwest::Client::new(), addr, &json!({"text": "a", "domain": "legal"})).await;
    assert_eq!(status, 400);
    let v: Value = serde_json::from_str(&body).unwrap();
    assert_eq!(v["error"]["kind"], "unknown_domain");
    assert_eq!(v["error"]["domains"], json!(["biomedical", "news"]));
}

#[tokio::test]
async fn invalid_option_is_400() {
    let addr = spawn_server(20_000).await;
    let client = reqwest::Client::new();
    let (status, body) = post(&client, addr, &json!({"text": "a", "options": {"trigger_threshold": 1.5}})).await;
    assert_eq!(status, 400);
    assert!(body.contains("invalid_option"));
    let (status, _) = post(&client, addr, &json!({"text": "a", "options": {"decoding": "beam"}})).await;
    assert_eq!(status, 400);
}

#[tokio::test]
async fn oversized_text_is_413() {
    let addr = spawn_server(10).await;
    let client = reqwest::Client::new();
    // limit counts characters, not bytes
    let (status, _) = post(&client, addr, &json!({"text": "éééééééééé"})).await;
    assert_eq!(status, 200);
    let (status, body) = post(&client, addr, &json!({"text": "eleven char"})).await;
    assert_eq!(status, 413);
    assert!(body.contains("too_large"));
}

#[tokio::test]
async fn domains_and_examples() {
    let addr = spawn_server(20_000).await;
    let client = reqwest::Client::new();
    let (status, v) = get(&client, addr, "/domains").await;
    assert_eq!(status, 200);
    assert_eq!(v, json!({"version": SCHEMA_VERSION, "domains": ["biomedical", "news"]}));

    let (status, v) = get(&client, addr, "/examples?domain=biomedical").await;
    assert_eq!(status, 200);
    assert_eq!(v["domain"], "biomedical");
    assert!(!v["examples"].as_array().unwrap().is_empty());

    let (_, v) = get(&client, addr, "/examples").await;
    assert_eq!(v["domain"], "news");

    let (status, v) = get(&client, addr, "/examples?domain=legal").await;
    assert_eq!(status, 400);
    assert_eq!(v["error"]["kind"], "unknown_domain");
}

#[tokio::test]
async fn every_example_annotates() {
    let addr = spawn_server(20_000).await;
    let client = reqwest::Client::new();
    for domain in ["news", "biomedical"] {
        let (_, v) = get(&client, addr, &format!("/examples?domain={domain}")).await;
        for text in v["examples"].as_array().unwrap() {
            let (status, body) = post(&client, addr, &json!({"text": text, "domain": domain})).await;
            assert_eq!(status, 200, "{body}");
            let r: Value = serde_json::from_str(&body).unwrap();
            assert!(!r["events"].as_array().unwrap().is_empty(), "no events for {text}");
        }
    }
}

struct Broken;

impl tempevent_core::duration::DurationBackend for Broken {
    fn duration_scores(
        &self,
        _: &tempevent_core::Document,
        _: &tempevent_core::Span,
        _: tempevent_core::DurationScale,
    ) -> Result<Vec<f64>, tempevent_core::BackendError> {
        Err(tempevent_core::BackendError::new("broken", "model unavailable"))
    }
}

#[tokio::test]
async fn stage_failure_is_500_naming_the_stage() {
    let mut registry = BackendRegistry::default();
    registry
        .register(
            "flaky",
            tempevent_core::DomainSlots::inheriting("news").duration(std::sync::Arc::new(Broken)),
        )
        .unwrap();
    let addr = common::spawn_with(registry, 20_000).await;
    let client = reqwest::Client::new();
    let (status, body) = post(&client, addr, &json!({"text": "Troops arrived.", "domain": "flaky"})).await;
    assert_eq!(status, 500);
    let v: Value = serde_json::from_str(&body).unwrap();
    assert_eq!(v["error"]["stage"], "duration");
    assert!(v["error"]["message"].as_str().unwrap().contains("model unavailable"));
    // the service keeps serving other domains
    let (status, _) = post(&client, addr, &json!({"text": "Troops arrived."})).await;
    assert_eq!(status, 200);
}
