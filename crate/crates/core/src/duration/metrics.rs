use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::DurationCategory;
use crate::ontology::duration_distance;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DurationMetrics {
    /// Exact-match accuracy.
    pub acc: f64,
    /// Fraction of predictions within rank distance 1 of gold.
    pub acc_c: f64,
    /// Spearman rank correlation with average ranks for ties.
    pub spearman: f64,
}

pub fn duration_metrics(
    predictions: &[DurationCategory],
    golds: &[DurationCategory],
) -> Result<DurationMetrics> {
    if predictions.len() != golds.len() {
        return Err(Error::Metrics(format!(
            "{} predictions for {} gold labels",
            predictions.len(),
            golds.len()
        )));
    }
    if predictions.is_empty() {
        return Err(Error::Metrics("no predictions to score".into()));
    }
    let n = predictions.len() as f64;
    let pairs = predictions.iter().zip(golds);
    let exact = pairs.clone().filter(|(p, g)| p == g).count() as f64;
    let coarse = pairs.filter(|(p, g)| duration_distance(**p, **g) <= 1).count() as f64;
    let x: Vec<f64> = predictions.iter().map(|c| c.rank() as f64).collect();
    let y: Vec<f64> = golds.iter().map(|c| c.rank() as f64).collect();
    Ok(DurationMetrics {
        acc: exact / n,
        acc_c: coarse / n,
        spearman: spearman(&x, &y),
    })
}

/// Spearman correlation of two equal-length samples.
///
/// When either side is constant the coefficient is undefined; this returns
/// 1.0 if the two samples are identical and 0.0 otherwise.
///
/// Average ranks are half-integers, so the moments are accumulated exactly on
/// doubled ranks; identical orderings give exactly 1 and reversed tie-free
/// orderings exactly -1.
pub fn spearman(x: &[f64], y: &[f64]) -> f64 {
    assert_eq!(x.len(), y.len(), "spearman needs equal-length samples");
    let rx = doubled_ranks(x);
    let ry = doubled_ranks(y);
    let n = rx.len() as i128;
    let (sx, sy): (i128, i128) = (rx.iter().sum(), ry.iter().sum());
    let (mut cov, mut vx, mut vy) = (0i128, 0i128, 0i128);
    for (a, b) in rx.iter().zip(&ry) {
        let (da, db) = (n * a - sx, n * b - sy);
        cov += da * db;
        vx += da * da;
        vy += db * db;
    }
    if vx == 0 || vy == 0 {
        return if x == y { 1.0 } else { 0.0 };
    }
    (cov as f64 / ((vx as f64) * (vy as f64)).sqrt()).clamp(-1.0, 1.0)
}

/// Twice the 1-based average rank of each value.
fn doubled_ranks(values: &[f64]) -> Vec<i128> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0; values.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i + 1;
        while j < order.len() && values[order[j]] == values[order[i]] {
            j += 1;
        }
        // positions i..j share rank (i+1 + j) / 2
        for &k in &order[i..j] {
            ranks[k] = (i + 1 + j) as i128;
        }
        i = j;
    }
    ranks
}
