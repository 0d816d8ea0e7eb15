//! Curated example sentences per domain, served by `GET /examples`.

use std::collections::BTreeMap;
use std::sync::OnceLock;

fn all() -> &'static BTreeMap<String, Vec<String>> {
    static EXAMPLES: OnceLock<BTreeMap<String, Vec<String>>> = OnceLock::new();
    EXAMPLES.get_or_init(|| {
        serde_json::from_str(include_str!("../data/examples.json")).expect("bundled examples are valid JSON")
    })
}

/// Examples for `domain`; registered domains without curated sentences get none.
pub fn for_domain(domain: &str) -> &'static [String] {
    all().get(domain).map(Vec::as_slice).unwrap_or(&[])
}
