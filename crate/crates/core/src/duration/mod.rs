//! Event duration classification and its evaluation metrics.

mod metrics;

pub use self::metrics::{duration_metrics, spearman, DurationMetrics};

use crate::backend::{argmax, check_distribution, Concurrency, Gated};
use crate::error::{BackendError, Error, Result};
use crate::model::{Document, DurationCategory, DurationScale, EventMention, Span};

pub trait DurationBackend: Send + Sync {
    /// Distribution over `scale.categories()` for the event triggered by `trigger`.
    fn duration_scores(
        &self,
        document: &Document,
        trigger: &Span,
        scale: DurationScale,
    ) -> Result<Vec<f64>, BackendError>;

    fn concurrency(&self) -> Concurrency {
        Concurrency::Shared
    }
}

impl DurationBackend for Gated<dyn DurationBackend> {
    fn duration_scores(
        &self,
        document: &Document,
        trigger: &Span,
        scale: DurationScale,
    ) -> Result<Vec<f64>, BackendError> {
        let (_g, b) = self.enter();
        b.duration_scores(document, trigger, scale)
    }
}

/// Most probable category; ties go to the shorter duration.
pub fn predict_duration(
    document: &Document,
    event: &EventMention,
    backend: &dyn DurationBackend,
    scale: DurationScale,
) -> Result<DurationCategory> {
    document.check_span(&event.trigger)?;
    let dist = backend.duration_scores(document, &event.trigger, scale)?;
    let cats = scale.categories();
    if dist.len() != cats.len() {
        return Err(Error::Contract(format!(
            "duration distribution has {} entries, scale has {}",
            dist.len(),
            cats.len()
        )));
    }
    check_distribution(&dist, 1e-6).map_err(Error::Contract)?;
    Ok(cats[argmax(&dist)])
}
