//! TOML configuration with environment overrides.
//!
//! ```toml
//! [server]
//! host = "127.0.0.1"
//! port = 8080
//! max_text_chars = 20000
//!
//! [domains.legal]
//! backend = "reference"
//! lexicon = "legal_lexicon.json"
//! inherit = "news"
//! ```
//!
//! `TEMPEVENT_HOST` and `TEMPEVENT_PORT` override the listener;
//! `TEMPEVENT_<DOMAIN>_LEXICON` and `TEMPEVENT_<DOMAIN>_ONTOLOGY` override a
//! domain's resource paths (the domain section is created if missing).

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{anyhow, bail, Context};
use serde::{Deserialize, Serialize};
use tempevent_core::reference::{
    CueLexicon, DomainLexicon, LexiconCueBackend, ReferenceDurationBackend, ReferenceTriggerBackend,
    RightwardScopeBackend,
};
use tempevent_core::registry::{BIOMEDICAL, NEWS};
use tempevent_core::{load_ontology, BackendRegistry, DomainSlots, Ontology, RelationLabelSet};

pub const DEFAULT_MAX_TEXT_CHARS: usize = 20_000;

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub server: ServerConfig,
    pub domains: BTreeMap<String, DomainConfig>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ServerConfig {
    pub host: String,
    pub port: u16,
    pub max_text_chars: usize,
}

impl Default for ServerConfig {
    fn default() -> Self {
        Self {
            host: "127.0.0.1".into(),
            port: 8080,
            max_text_chars: DEFAULT_MAX_TEXT_CHARS,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DomainConfig {
    /// Only `reference` ships with this crate.
    pub backend: String,
    pub lexicon: Option<PathBuf>,
    pub ontology: Option<PathBuf>,
    pub cue_lexicon: Option<PathBuf>,
    /// Domain to take unconfigured slots from.
    pub inherit: Option<String>,
}

impl Default for DomainConfig {
    fn default() -> Self {
        Self {
            backend: "reference".into(),
            lexicon: None,
            ontology: None,
            cue_lexicon: None,
            inherit: None,
        }
    }
}

impl Config {
    pub fn from_toml(source: &str) -> anyhow::Result<Self> {
        Ok(toml::from_str(source)?)
    }

    /// Read `path` (or use defaults) and apply environment overrides.
    pub fn load(path: Option<&Path>) -> anyhow::Result<Self> {
        let mut config = match path {
            Some(p) => {
                let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
                Self::from_toml(&text).with_context(|| format!("parsing {}", p.display()))?
            }
            None => Self::default(),
        };
        config.apply_env(|k| std::env::var(k).ok())?;
        Ok(config)
    }

    pub fn apply_env(&mut self, var: impl Fn(&str) -> Option<String>) -> anyhow::Result<()> {
        if let Some(host) = var("TEMPEVENT_HOST") {
            self.server.host = host;
        }
        if let Some(port) = var("TEMPEVENT_PORT") {
            self.server.port = port.parse().with_context(|| format!("TEMPEVENT_PORT={port}"))?;
        }
        let mut names: Vec<String> = self.domains.keys().cloned().collect();
        for builtin in [NEWS, BIOMEDICAL] {
            if !names.iter().any(|n| n == builtin) {
                names.push(builtin.to_string());
            }
        }
        for name in names {
            let key = name.to_uppercase().replace('-', "_");
            let lexicon = var(&format!("TEMPEVENT_{key}_LEXICON"));
            let ontology = var(&format!("TEMPEVENT_{key}_ONTOLOGY"));
            if lexicon.is_none() && ontology.is_none() {
                continue;
            }
            let d = self.domains.entry(name).or_default();
            if let Some(l) = lexicon {
                d.lexicon = Some(l.into());
            }
            if let Some(o) = ontology {
                d.ontology = Some(o.into());
            }
        }
        Ok(())
    }

    /// The built-in domains with every configured domain registered on top,
    /// parents before the domains inheriting from them.
    pub fn registry(&self) -> anyhow::Result<BackendRegistry> {
        let mut registry = BackendRegistry::default();
        let mut pending: Vec<(&String, &DomainConfig)> = self.domains.iter().collect();
        while !pending.is_empty() {
            let before = pending.len();
            let mut waiting = Vec::new();
            for (name, d) in pending {
                let parent_pending = d.inherit.as_ref().is_some_and(|p| {
                    p != name && self.domains.contains_key(p) && !registry.contains(p)
                });
                if parent_pending {
                    waiting.push((name, d));
                } else {
                    register(&mut registry, name, d).with_context(|| format!("domain `{name}`"))?;
                }
            }
            if waiting.len() == before {
                let names: Vec<&str> = waiting.iter().map(|(n, _)| n.as_str()).collect();
                bail!("inheritance cycle among domains {}", names.join(", "));
            }
            pending = waiting;
        }
        Ok(registry)
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn register(registry: &mut BackendRegistry, name: &str, d: &DomainConfig) -> anyhow::Result<()> {
    if d.backend != "reference" {
        bail!("unknown backend `{}` (available: reference)", d.backend);
    }
    let ontology = match &d.ontology {
        Some(p) => Some(load_ontology(&read(p)?)?),
        None => match name {
            NEWS if d.inherit.is_none() => Some(Ontology::ace()),
            BIOMEDICAL if d.inherit.is_none() => Some(Ontology::genia()),
            _ => None,
        },
    };
    let lexicon = match &d.lexicon {
        Some(p) => Some(DomainLexicon::from_json(&read(p)?)?),
        None => match name {
            NEWS if d.inherit.is_none() => Some(DomainLexicon::news()),
            BIOMEDICAL if d.inherit.is_none() => Some(DomainLexicon::biomedical()),
            _ => None,
        },
    };
    let cues = match &d.cue_lexicon {
        Some(p) => Some(CueLexicon::from_json(&read(p)?)?),
        None if d.inherit.is_none() => Some(CueLexicon::default()),
        None => None,
    };

    let label_set = match (&ontology, &d.inherit) {
        (Some(o), _) => o.relation_label_set(),
        (None, Some(parent)) => registry.get(parent)?.ontology.relation_label_set(),
        (None, None) => RelationLabelSet::default(),
    };
    let mut slots = match &d.inherit {
        Some(parent) => DomainSlots::inheriting(parent.clone()),
        None => DomainSlots::new().scopes(Arc::new(RightwardScopeBackend)),
    };
    if let Some(o) = ontology {
        slots = slots.ontology(o);
    }
    if let Some(lex) = &lexicon {
        slots = slots
            .ace(tempevent_core::reference::ReferenceAceBackend::new(lex))
            .triggers(Arc::new(ReferenceTriggerBackend::new(lex, label_set)))
            .duration(Arc::new(ReferenceDurationBackend::new(lex)));
    }
    if let Some(c) = cues {
        slots = slots.cues(Arc::new(LexiconCueBackend::new(c)));
    }
    registry.register(name, slots).map_err(|e| anyhow!(e))
}
