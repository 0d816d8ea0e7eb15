//! Deterministic lexicon-driven backends.
//!
//! These stand in for trained scorers: every score is a fixed function of the
//! input tokens and an editable JSON lexicon, so output is reproducible and
//! needs no model weights. Swap any of them out by implementing the matching
//! backend trait.

mod ace;
mod cues;
mod duration;
mod lexicon;
mod triggers;

pub use self::ace::ReferenceAceBackend;
pub use self::cues::{CueLexicon, LexiconCueBackend, RightwardScopeBackend};
pub use self::duration::ReferenceDurationBackend;
pub use self::lexicon::{
    AceLexicon, Direction, DomainLexicon, DurationLexicon, EntityEntry, PairRule, RelationLexicon, RoleRule,
};
pub use self::triggers::ReferenceTriggerBackend;

/// Score given to the chosen label of every peaked distribution.
pub(crate) const CONFIDENCE: f64 = 0.7;
