//! Thread-safety declarations shared by every backend contract.
//!
//! A backend that cannot serve concurrent inference reports
//! [`Concurrency::Serialized`]; the registry then wraps it in a [`Gated`]
//! adapter so at most one call runs at a time.

use std::sync::{Arc, Mutex, MutexGuard};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Concurrency {
    /// Safe for concurrent read-only inference.
    #[default]
    Shared,
    /// Calls must not overlap.
    Serialized,
}

/// Serializes calls into an inner backend.
pub struct Gated<B: ?Sized> {
    inner: Arc<B>,
    gate: Mutex<()>,
}

impl<B: ?Sized> Gated<B> {
    pub fn new(inner: Arc<B>) -> Self {
        Self {
            inner,
            gate: Mutex::new(()),
        }
    }

    pub(crate) fn enter(&self) -> (MutexGuard<'_, ()>, &B) {
        let guard = self.gate.lock().unwrap_or_else(|p| p.into_inner());
        (guard, &self.inner)
    }
}

/// Peaked distribution: `p` on `index`, the rest spread evenly.
pub fn peaked(len: usize, index: usize, p: f64) -> Vec<f64> {
    if len <= 1 {
        return vec![1.0; len];
    }
    let rest = (1.0 - p) / (len - 1) as f64;
    (0..len).map(|i| if i == index { p } else { rest }).collect()
}

/// Check that `dist` is a probability distribution within `tol`.
pub fn check_distribution(dist: &[f64], tol: f64) -> Result<(), String> {
    if dist.iter().any(|p| !p.is_finite() || *p < 0.0) {
        return Err("distribution contains a negative or non-finite value".into());
    }
    let sum: f64 = dist.iter().sum();
    if (sum - 1.0).abs() > tol {
        return Err(format!("distribution sums to {sum}"));
    }
    Ok(())
}

/// Index of the maximum; ties resolve to the lowest index.
pub fn argmax(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, v) in values.iter().enumerate().skip(1) {
        if *v > values[best] {
            best = i;
        }
    }
    best
}
