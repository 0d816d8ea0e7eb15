use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::model::{Document, EventId, EventMention, EventSource};

/// Combine typed events with trigger-only ones.
///
/// Every event of `primary` is kept verbatim apart from its id; a `generic`
/// event survives only if its trigger overlaps no `primary` trigger. The result
/// is in document order with ids `e0, e1, ...`. Because the overlap test runs
/// against the whole first list, `merge(merge(a, b), b) == merge(a, b)`.
pub fn merge_events(
    document: &Document,
    primary: &[EventMention],
    generic: &[EventMention],
) -> Result<Vec<EventMention>> {
    for ev in primary.iter().chain(generic) {
        document.check_span(&ev.trigger).map_err(|e| {
            Error::CrossDocument(format!("event {} does not fit this document: {e}", ev.id))
        })?;
    }
    let mut out: Vec<EventMention> = primary.to_vec();
    out.extend(
        generic
            .iter()
            .filter(|g| !primary.iter().any(|p| p.trigger.overlaps(&g.trigger)))
            .cloned(),
    );
    out.sort_by(|a, b| a.position().cmp(&b.position()).then_with(|| source_rank(a, b)));
    for (i, ev) in out.iter_mut().enumerate() {
        ev.id = EventId::ordinal(i);
    }
    Ok(out)
}

fn source_rank(a: &EventMention, b: &EventMention) -> Ordering {
    let rank = |e: &EventMention| match e.source {
        EventSource::Ace => 0,
        EventSource::TriggerOnly => 1,
    };
    rank(a).cmp(&rank(b))
}
