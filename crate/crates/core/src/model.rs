//! Domain records shared by every stage of the pipeline.
//!
//! All offsets in [`Token`] are counted in Unicode scalar values, not bytes.
//! Spans are token based and sentence local; [`Document`] converts between
//! sentence-local and document-global token positions.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::pipeline::graph::TemporalGraph;

/// Version tag written into every serialized annotation.
pub const SCHEMA_VERSION: &str = "1.0";

/// Role name used for the negation/speculation pseudo-argument in serialized events.
pub const PSEUDO_ROLE: &str = "speculation or negation";

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Token {
    pub surface: String,
    pub char_start: usize,
    pub char_end: usize,
}

/// Tokenized text with sentence segmentation.
///
/// Constructed only through [`Document::new`], which checks that tokens are
/// ordered, non-overlapping, match the text, and that sentences partition the
/// token sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawDocument")]
pub struct Document {
    text: String,
    tokens: Vec<Token>,
    sentences: Vec<Range<usize>>,
}

#[derive(Deserialize)]
struct RawDocument {
    text: String,
    tokens: Vec<Token>,
    sentences: Vec<Range<usize>>,
}

impl TryFrom<RawDocument> for Document {
    type Error = Error;

    fn try_from(raw: RawDocument) -> Result<Self> {
        Document::new(raw.text, raw.tokens, raw.sentences)
    }
}

impl Document {
    pub fn new(text: String, tokens: Vec<Token>, sentences: Vec<Range<usize>>) -> Result<Self> {
        let chars: Vec<char> = text.chars().collect();
        let mut prev_end = 0usize;
        for (i, tok) in tokens.iter().enumerate() {
            if tok.char_start >= tok.char_end {
                return Err(Error::InvalidDocument(format!("token {i} is empty")));
            }
            if tok.char_start < prev_end {
                return Err(Error::InvalidDocument(format!(
                    "token {i} overlaps or precedes the previous token"
                )));
            }
            if tok.char_end > chars.len() {
                return Err(Error::InvalidDocument(format!("token {i} exceeds the text")));
            }
            let slice: String = chars[tok.char_start..tok.char_end].iter().collect();
            if slice != tok.surface {
                return Err(Error::InvalidDocument(format!(
                    "token {i} surface `{}` does not match text `{slice}`",
                    tok.surface
                )));
            }
            prev_end = tok.char_end;
        }
        let mut cursor = 0usize;
        for (i, s) in sentences.iter().enumerate() {
            if s.start != cursor || s.start >= s.end {
                return Err(Error::InvalidDocument(format!(
                    "sentence {i} ({}..{}) does not continue the partition at token {cursor}",
                    s.start, s.end
                )));
            }
            cursor = s.end;
        }
        if cursor != tokens.len() {
            return Err(Error::InvalidDocument(format!(
                "sentences cover {cursor} of {} tokens",
                tokens.len()
            )));
        }
        Ok(Self {
            text,
            tokens,
            sentences,
        })
    }

    pub fn empty() -> Self {
        Self {
            text: String::new(),
            tokens: Vec::new(),
            sentences: Vec::new(),
        }
    }

    pub fn text(&self) -> &str {
        &self.text
    }

    pub fn tokens(&self) -> &[Token] {
        &self.tokens
    }

    pub fn sentences(&self) -> &[Range<usize>] {
        &self.sentences
    }

    pub fn sentence_count(&self) -> usize {
        self.sentences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn sentence_tokens(&self, sentence: usize) -> &[Token] {
        self.sentences
            .get(sentence)
            .map(|r| &self.tokens[r.clone()])
            .unwrap_or(&[])
    }

    pub fn sentence_len(&self, sentence: usize) -> usize {
        self.sentences.get(sentence).map_or(0, |r| r.len())
    }

    /// Document-global index of a sentence-local token.
    pub fn global_index(&self, sentence: usize, local: usize) -> usize {
        self.sentences[sentence].start + local
    }

    /// Sentence and sentence-local index of a document-global token.
    pub fn locate(&self, global: usize) -> Option<(usize, usize)> {
        let idx = self.sentences.partition_point(|r| r.end <= global);
        let r = self.sentences.get(idx)?;
        r.contains(&global).then(|| (idx, global - r.start))
    }

    pub fn check_span(&self, span: &Span) -> Result<()> {
        let reason = if span.sentence_index >= self.sentences.len() {
            Some(format!(
                "document has {} sentences",
                self.sentences.len()
            ))
        } else if span.token_start >= span.token_end {
            Some("span is empty".to_string())
        } else if span.token_end > self.sentence_len(span.sentence_index) {
            Some(format!(
                "sentence has {} tokens",
                self.sentence_len(span.sentence_index)
            ))
        } else {
            None
        };
        match reason {
            Some(reason) => Err(Error::SpanOutOfBounds {
                span: span.to_string(),
                reason,
            }),
            None => Ok(()),
        }
    }

    pub fn span_tokens(&self, span: &Span) -> &[Token] {
        let s = &self.sentence_tokens(span.sentence_index);
        &s[span.token_start.min(s.len())..span.token_end.min(s.len())]
    }

    /// Original text covered by the span, including inner whitespace.
    pub fn span_text(&self, span: &Span) -> String {
        let toks = self.span_tokens(span);
        match (toks.first(), toks.last()) {
            (Some(a), Some(b)) => self
                .text
                .chars()
                .skip(a.char_start)
                .take(b.char_end - a.char_start)
                .collect(),
            _ => String::new(),
        }
    }
}

/// Sentence-local, half-open token range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Span {
    pub sentence_index: usize,
    pub token_start: usize,
    pub token_end: usize,
}

impl Span {
    pub fn new(sentence_index: usize, token_start: usize, token_end: usize) -> Self {
        Self {
            sentence_index,
            token_start,
            token_end,
        }
    }

    pub fn single(sentence_index: usize, token: usize) -> Self {
        Self::new(sentence_index, token, token + 1)
    }

    pub fn len(&self) -> usize {
        self.token_end.saturating_sub(self.token_start)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn overlaps(&self, other: &Span) -> bool {
        self.sentence_index == other.sentence_index
            && self.token_start < other.token_end
            && other.token_start < self.token_end
    }

    pub fn contains(&self, sentence_index: usize, token: usize) -> bool {
        self.sentence_index == sentence_index && (self.token_start..self.token_end).contains(&token)
    }

    pub fn tokens(&self) -> Range<usize> {
        self.token_start..self.token_end
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "s{}[{},{})",
            self.sentence_index, self.token_start, self.token_end
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EntityMention {
    pub span: Span,
    pub entity_type: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EventId(pub String);

impl EventId {
    /// Identifier for the event at position `index` of the merged list.
    pub fn ordinal(index: usize) -> Self {
        Self(format!("e{index}"))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for EventId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for EventId {
    fn from(s: &str) -> Self {
        Self(s.to_string())
    }
}

/// Event subtype, or `GENERIC` for trigger-only events.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "String", into = "String")]
pub enum EventType {
    Generic,
    Subtype(String),
}

impl EventType {
    pub const GENERIC: &'static str = "GENERIC";

    pub fn subtype(&self) -> Option<&str> {
        match self {
            EventType::Generic => None,
            EventType::Subtype(s) => Some(s),
        }
    }

    pub fn as_str(&self) -> &str {
        self.subtype().unwrap_or(Self::GENERIC)
    }
}

impl From<String> for EventType {
    fn from(s: String) -> Self {
        if s == Self::GENERIC {
            EventType::Generic
        } else {
            EventType::Subtype(s)
        }
    }
}

impl From<EventType> for String {
    fn from(t: EventType) -> String {
        t.as_str().to_string()
    }
}

impl fmt::Display for EventType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EventSource {
    #[serde(rename = "ACE")]
    Ace,
    #[serde(rename = "TRIGGER_ONLY")]
    TriggerOnly,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Argument {
    pub role: String,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "EventWire", try_from = "EventWire")]
pub struct EventMention {
    pub id: EventId,
    pub trigger: Span,
    pub subtype: EventType,
    pub arguments: Vec<Argument>,
    pub duration: Option<DurationCategory>,
    pub negated: bool,
    pub speculated: bool,
    pub source: EventSource,
}

impl EventMention {
    /// Trigger-only event with no typed structure.
    pub fn generic(id: EventId, trigger: Span) -> Self {
        Self {
            id,
            trigger,
            subtype: EventType::Generic,
            arguments: Vec::new(),
            duration: None,
            negated: false,
            speculated: false,
            source: EventSource::TriggerOnly,
        }
    }

    pub fn ace(id: EventId, trigger: Span, subtype: impl Into<String>, arguments: Vec<Argument>) -> Self {
        Self {
            id,
            trigger,
            subtype: EventType::Subtype(subtype.into()),
            arguments,
            duration: None,
            negated: false,
            speculated: false,
            source: EventSource::Ace,
        }
    }

    /// Ordering key for document position.
    pub fn position(&self) -> (usize, usize, usize) {
        (
            self.trigger.sentence_index,
            self.trigger.token_start,
            self.trigger.token_end,
        )
    }
}

#[derive(Serialize, Deserialize)]
struct EventWire {
    id: EventId,
    trigger: Span,
    subtype: EventType,
    arguments: Vec<ArgumentWire>,
    duration: Option<DurationCategory>,
    negated: bool,
    speculated: bool,
    source: EventSource,
}

#[derive(Serialize, Deserialize)]
struct ArgumentWire {
    role: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    span: Option<Span>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    value: Option<String>,
}

impl From<EventMention> for EventWire {
    fn from(e: EventMention) -> Self {
        let mut arguments: Vec<ArgumentWire> = e
            .arguments
            .into_iter()
            .map(|a| ArgumentWire {
                role: a.role,
                span: Some(a.span),
                value: None,
            })
            .collect();
        for (flag, value) in [(e.negated, "negation"), (e.speculated, "speculation")] {
            if flag {
                arguments.push(ArgumentWire {
                    role: PSEUDO_ROLE.to_string(),
                    span: None,
                    value: Some(value.to_string()),
                });
            }
        }
        Self {
            id: e.id,
            trigger: e.trigger,
            subtype: e.subtype,
            arguments,
            duration: e.duration,
            negated: e.negated,
            speculated: e.speculated,
            source: e.source,
        }
    }
}

impl TryFrom<EventWire> for EventMention {
    type Error = String;

    fn try_from(w: EventWire) -> std::result::Result<Self, String> {
        let mut arguments = Vec::with_capacity(w.arguments.len());
        for a in w.arguments {
            if a.role == PSEUDO_ROLE {
                continue;
            }
            let span = a
                .span
                .ok_or_else(|| format!("argument `{}` of event {} has no span", a.role, w.id))?;
            arguments.push(Argument { role: a.role, span });
        }
        if w.subtype == EventType::Generic && !arguments.is_empty() {
            return Err(format!("GENERIC event {} carries arguments", w.id));
        }
        Ok(Self {
            id: w.id,
            trigger: w.trigger,
            subtype: w.subtype,
            arguments,
            duration: w.duration,
            negated: w.negated,
            speculated: w.speculated,
            source: w.source,
        })
    }
}

/// Ordinal duration bucket, from an instant to forever.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum DurationCategory {
    Instant,
    Seconds,
    Minutes,
    Hours,
    Days,
    Weeks,
    Months,
    Years,
    Decades,
    Centuries,
    Forever,
}

impl DurationCategory {
    pub const ALL: [DurationCategory; 11] = [
        DurationCategory::Instant,
        DurationCategory::Seconds,
        DurationCategory::Minutes,
        DurationCategory::Hours,
        DurationCategory::Days,
        DurationCategory::Weeks,
        DurationCategory::Months,
        DurationCategory::Years,
        DurationCategory::Decades,
        DurationCategory::Centuries,
        DurationCategory::Forever,
    ];

    pub fn rank(self) -> usize {
        self as usize
    }

    pub fn from_rank(rank: usize) -> Option<Self> {
        Self::ALL.get(rank).copied()
    }

    pub fn name(self) -> &'static str {
        match self {
            DurationCategory::Instant => "INSTANT",
            DurationCategory::Seconds => "SECONDS",
            DurationCategory::Minutes => "MINUTES",
            DurationCategory::Hours => "HOURS",
            DurationCategory::Days => "DAYS",
            DurationCategory::Weeks => "WEEKS",
            DurationCategory::Months => "MONTHS",
            DurationCategory::Years => "YEARS",
            DurationCategory::Decades => "DECADES",
            DurationCategory::Centuries => "CENTURIES",
            DurationCategory::Forever => "FOREVER",
        }
    }
}

impl fmt::Display for DurationCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DurationCategory {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let upper = s.trim().to_ascii_uppercase();
        Self::ALL
            .iter()
            .copied()
            .find(|c| c.name() == upper)
            .ok_or_else(|| Error::Metrics(format!("unknown duration category `{s}`")))
    }
}

/// Which duration categories a classifier chooses among.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DurationScale {
    /// SECONDS through YEARS.
    #[default]
    Typical,
    /// INSTANT through FOREVER.
    Extended,
}

impl DurationScale {
    pub fn categories(self) -> &'static [DurationCategory] {
        match self {
            DurationScale::Typical => &DurationCategory::ALL[1..8],
            DurationScale::Extended => &DurationCategory::ALL[..],
        }
    }

    pub fn contains(self, c: DurationCategory) -> bool {
        self.categories().contains(&c)
    }

    /// Nearest in-range category; order preserving.
    pub fn clamp(self, c: DurationCategory) -> DurationCategory {
        let cats = self.categories();
        let lo = cats[0].rank();
        let hi = cats[cats.len() - 1].rank();
        DurationCategory::ALL[c.rank().clamp(lo, hi)]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum RelationLabel {
    Before,
    After,
    Simultaneous,
    Vague,
    Includes,
    IncludedIn,
}

impl RelationLabel {
    pub fn name(self) -> &'static str {
        match self {
            RelationLabel::Before => "BEFORE",
            RelationLabel::After => "AFTER",
            RelationLabel::Simultaneous => "SIMULTANEOUS",
            RelationLabel::Vague => "VAGUE",
            RelationLabel::Includes => "INCLUDES",
            RelationLabel::IncludedIn => "INCLUDED_IN",
        }
    }
}

impl fmt::Display for RelationLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Temporal relation inventory. Label order doubles as the argmax tie-break order.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RelationLabelSet {
    #[default]
    #[serde(rename = "MATRES")]
    Matres,
    #[serde(rename = "TBDENSE")]
    TbDense,
}

impl RelationLabelSet {
    pub fn labels(self) -> &'static [RelationLabel] {
        const ALL: [RelationLabel; 6] = [
            RelationLabel::Before,
            RelationLabel::After,
            RelationLabel::Simultaneous,
            RelationLabel::Vague,
            RelationLabel::Includes,
            RelationLabel::IncludedIn,
        ];
        match self {
            RelationLabelSet::Matres => &ALL[..4],
            RelationLabelSet::TbDense => &ALL[..],
        }
    }

    pub fn contains(self, label: RelationLabel) -> bool {
        self.labels().contains(&label)
    }
}

/// Pairwise label; `label` describes `source` relative to `target`, and
/// `source` is the earlier event in text order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TemporalRelation {
    pub source: EventId,
    pub target: EventId,
    pub label: RelationLabel,
}

/// Everything produced for one input text.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(try_from = "RawAnnotation")]
pub struct AnnotationResult {
    pub document: Document,
    pub entities: Vec<EntityMention>,
    pub events: Vec<EventMention>,
    pub relations: Vec<TemporalRelation>,
    pub graph: TemporalGraph,
}

impl AnnotationResult {
    pub fn new(
        document: Document,
        entities: Vec<EntityMention>,
        events: Vec<EventMention>,
        relations: Vec<TemporalRelation>,
        graph: TemporalGraph,
    ) -> Result<Self> {
        let result = Self {
            document,
            entities,
            events,
            relations,
            graph,
        };
        result.validate()?;
        Ok(result)
    }

    pub fn empty() -> Self {
        Self {
            document: Document::empty(),
            entities: Vec::new(),
            events: Vec::new(),
            relations: Vec::new(),
            graph: TemporalGraph::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        for e in &self.entities {
            self.document.check_span(&e.span)?;
        }
        let mut ids = BTreeSet::new();
        for ev in &self.events {
            self.document.check_span(&ev.trigger)?;
            for a in &ev.arguments {
                self.document.check_span(&a.span)?;
            }
            if !ids.insert(&ev.id) {
                return Err(Error::DuplicateEventId(ev.id.to_string()));
            }
        }
        for r in &self.relations {
            for id in [&r.source, &r.target] {
                if !ids.contains(id) {
                    return Err(Error::DanglingEndpoint(id.to_string()));
                }
            }
        }
        Ok(())
    }

    pub fn event(&self, id: &EventId) -> Option<&EventMention> {
        self.events.iter().find(|e| &e.id == id)
    }
}

impl Serialize for AnnotationResult {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("AnnotationResult", 6)?;
        s.serialize_field("version", SCHEMA_VERSION)?;
        s.serialize_field("document", &self.document)?;
        s.serialize_field("entities", &self.entities)?;
        s.serialize_field("events", &self.events)?;
        s.serialize_field("relations", &self.relations)?;
        s.serialize_field("graph", &self.graph)?;
        s.end()
    }
}

#[derive(Deserialize)]
struct RawAnnotation {
    #[serde(default)]
    #[allow(dead_code)]
    version: Option<String>,
    document: Document,
    entities: Vec<EntityMention>,
    events: Vec<EventMention>,
    relations: Vec<TemporalRelation>,
    graph: TemporalGraph,
}

impl TryFrom<RawAnnotation> for AnnotationResult {
    type Error = Error;

    fn try_from(raw: RawAnnotation) -> Result<Self> {
        AnnotationResult::new(
            raw.document,
            raw.entities,
            raw.events,
            raw.relations,
            raw.graph,
        )
    }
}
