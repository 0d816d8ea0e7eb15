//! Per-domain backend sets.
//!
//! A domain bundles an ontology with one backend per pipeline slot. New
//! domains may supply every slot or name another domain to inherit the
//! missing ones from; `news` is always present.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::ace::{AceBackend, AceExtractor, EventExtractor};
use crate::backend::{Concurrency, Gated};
use crate::duration::DurationBackend;
use crate::error::{Error, Result};
use crate::negation::{CueBackend, ScopeBackend};
use crate::ontology::Ontology;
use crate::reference::{
    CueLexicon, DomainLexicon, LexiconCueBackend, ReferenceAceBackend, ReferenceDurationBackend,
    ReferenceTriggerBackend, RightwardScopeBackend,
};
use crate::triggers::TriggerRelationBackend;

pub const NEWS: &str = "news";
pub const BIOMEDICAL: &str = "biomedical";

/// A complete slot set, ready for the pipeline.
#[derive(Clone)]
pub struct DomainBackends {
    pub ontology: Arc<Ontology>,
    pub events: Arc<dyn EventExtractor>,
    pub triggers: Arc<dyn TriggerRelationBackend>,
    pub duration: Arc<dyn DurationBackend>,
    pub cues: Arc<dyn CueBackend>,
    pub scopes: Arc<dyn ScopeBackend>,
}

impl fmt::Debug for DomainBackends {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DomainBackends")
            .field("event_subtypes", &self.ontology.event_subtypes().len())
            .finish_non_exhaustive()
    }
}

impl DomainBackends {
    /// Lexicon-driven backends over `ontology`.
    pub fn reference(ontology: Ontology, lexicon: &DomainLexicon, cues: CueLexicon) -> Self {
        let label_set = ontology.relation_label_set();
        Self {
            events: Arc::new(AceExtractor::new(Arc::new(ReferenceAceBackend::new(lexicon)))),
            triggers: Arc::new(ReferenceTriggerBackend::new(lexicon, label_set)),
            duration: Arc::new(ReferenceDurationBackend::new(lexicon)),
            cues: Arc::new(LexiconCueBackend::new(cues)),
            scopes: Arc::new(RightwardScopeBackend),
            ontology: Arc::new(ontology),
        }
    }

    pub fn news() -> Self {
        Self::reference(Ontology::ace(), &DomainLexicon::news(), CueLexicon::default())
    }
}

/// Possibly partial slot set for [`BackendRegistry::register`].
#[derive(Clone, Default)]
pub struct DomainSlots {
    pub ontology: Option<Arc<Ontology>>,
    pub events: Option<Arc<dyn EventExtractor>>,
    pub triggers: Option<Arc<dyn TriggerRelationBackend>>,
    pub duration: Option<Arc<dyn DurationBackend>>,
    pub cues: Option<Arc<dyn CueBackend>>,
    pub scopes: Option<Arc<dyn ScopeBackend>>,
    /// Domain supplying every slot left empty here.
    pub inherit: Option<String>,
}

impl DomainSlots {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn inheriting(domain: impl Into<String>) -> Self {
        Self {
            inherit: Some(domain.into()),
            ..Self::default()
        }
    }

    pub fn ontology(mut self, ontology: Ontology) -> Self {
        self.ontology = Some(Arc::new(ontology));
        self
    }

    pub fn events(mut self, extractor: Arc<dyn EventExtractor>) -> Self {
        self.events = Some(extractor);
        self
    }

    /// Event slot backed by the constrained decoder over `backend`'s scores.
    pub fn ace<B: AceBackend + 'static>(self, backend: B) -> Self {
        let backend: Arc<dyn AceBackend> = gate_ace(Arc::new(backend));
        self.events(Arc::new(AceExtractor::new(backend)))
    }

    pub fn triggers(mut self, backend: Arc<dyn TriggerRelationBackend>) -> Self {
        self.triggers = Some(backend);
        self
    }

    pub fn duration(mut self, backend: Arc<dyn DurationBackend>) -> Self {
        self.duration = Some(backend);
        self
    }

    pub fn cues(mut self, backend: Arc<dyn CueBackend>) -> Self {
        self.cues = Some(backend);
        self
    }

    pub fn scopes(mut self, backend: Arc<dyn ScopeBackend>) -> Self {
        self.scopes = Some(backend);
        self
    }

    fn missing(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.ontology.is_none() {
            out.push("ontology");
        }
        if self.events.is_none() {
            out.push("events");
        }
        if self.triggers.is_none() {
            out.push("triggers");
        }
        if self.duration.is_none() {
            out.push("duration");
        }
        if self.cues.is_none() {
            out.push("cues");
        }
        if self.scopes.is_none() {
            out.push("scopes");
        }
        out
    }
}

impl From<DomainBackends> for DomainSlots {
    fn from(b: DomainBackends) -> Self {
        Self {
            ontology: Some(b.ontology),
            events: Some(b.events),
            triggers: Some(b.triggers),
            duration: Some(b.duration),
            cues: Some(b.cues),
            scopes: Some(b.scopes),
            inherit: None,
        }
    }
}

fn gate_ace(b: Arc<dyn AceBackend>) -> Arc<dyn AceBackend> {
    match b.concurrency() {
        Concurrency::Shared => b,
        Concurrency::Serialized => Arc::new(Gated::new(b)),
    }
}

macro_rules! gate {
    ($name:ident, $trait:ident) => {
        fn $name(b: Arc<dyn $trait>) -> Arc<dyn $trait> {
            match b.concurrency() {
                Concurrency::Shared => b,
                Concurrency::Serialized => Arc::new(Gated::new(b)),
            }
        }
    };
}

gate!(gate_events, EventExtractor);
gate!(gate_triggers, TriggerRelationBackend);
gate!(gate_duration, DurationBackend);
gate!(gate_cues, CueBackend);
gate!(gate_scopes, ScopeBackend);

#[derive(Debug, Clone)]
pub struct BackendRegistry {
    domains: BTreeMap<String, Arc<DomainBackends>>,
}

impl Default for BackendRegistry {
    /// `news` and `biomedical` with the reference backends.
    fn default() -> Self {
        let mut r = Self::new(DomainBackends::news());
        let bio = DomainLexicon::biomedical();
        let genia = Ontology::genia();
        let label_set = genia.relation_label_set();
        let slots = DomainSlots::inheriting(NEWS)
            .ontology(genia)
            .ace(ReferenceAceBackend::new(&bio))
            .triggers(Arc::new(ReferenceTriggerBackend::new(&bio, label_set)))
            .duration(Arc::new(ReferenceDurationBackend::new(&bio)));
        r.register(BIOMEDICAL, slots).expect("biomedical reference slots are complete");
        r
    }
}

impl BackendRegistry {
    pub fn new(news: DomainBackends) -> Self {
        let mut r = Self {
            domains: BTreeMap::new(),
        };
        r.register(NEWS, news.into()).expect("complete slot set");
        r
    }

    /// Add or replace `domain`. Empty slots are filled from `slots.inherit`.
    pub fn register(&mut self, domain: impl Into<String>, slots: DomainSlots) -> Result<()> {
        let domain = domain.into();
        let base = match &slots.inherit {
            Some(parent) => Some(self.get(parent)?),
            None => None,
        };
        let missing = slots.missing();
        if base.is_none() && !missing.is_empty() {
            return Err(Error::IncompleteSlots { domain, missing });
        }
        macro_rules! slot {
            ($field:ident) => {
                match slots.$field {
                    Some(own) => own,
                    None => base.as_ref().expect("checked above").$field.clone(),
                }
            };
        }
        let backends = DomainBackends {
            ontology: slot!(ontology),
            events: gate_events(slot!(events)),
            triggers: gate_triggers(slot!(triggers)),
            duration: gate_duration(slot!(duration)),
            cues: gate_cues(slot!(cues)),
            scopes: gate_scopes(slot!(scopes)),
        };
        let expected = backends.ontology.relation_label_set();
        let got = backends.triggers.label_set();
        if got != expected {
            return Err(Error::Inventory(format!(
                "relation backend uses {got:?} but the {domain} ontology declares {expected:?}"
            )));
        }
        self.domains.insert(domain, Arc::new(backends));
        Ok(())
    }

    pub fn get(&self, domain: &str) -> Result<Arc<DomainBackends>> {
        self.domains.get(domain).cloned().ok_or_else(|| Error::UnknownDomain {
            requested: domain.to_string(),
            available: self.domains(),
        })
    }

    /// Registered names, sorted.
    pub fn domains(&self) -> Vec<String> {
        self.domains.keys().cloned().collect()
    }

    pub fn contains(&self, domain: &str) -> bool {
        self.domains.contains_key(domain)
    }
}

