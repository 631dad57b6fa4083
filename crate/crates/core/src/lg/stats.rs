use std::fmt;

use super::records::RecordSet;
use super::state::RotationAngle;
use crate::error::{Error, Result};

/// Empirical two-time correlation `(1/N)·Σ q1·q2`.
///
/// Kept as the integer sum of ±1 products so the parity invariant holds
/// exactly and prefixes can be re-evaluated cheaply.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CorrelationEstimate {
    sum: i64,
    n_shots: usize,
}

impl CorrelationEstimate {
    pub fn from_sum(sum: i64, n_shots: usize) -> Result<Self> {
        if n_shots == 0 {
            return Err(Error::invalid("correlation estimate needs at least one shot"));
        }
        let n = n_shots as i64;
        if sum.abs() > n || (sum - n).rem_euclid(2) != 0 {
            return Err(Error::invalid(format!(
                "sum {sum} is not a sum of {n_shots} terms of ±1"
            )));
        }
        Ok(CorrelationEstimate { sum, n_shots })
    }

    pub fn value(&self) -> f64 {
        self.sum as f64 / self.n_shots as f64
    }

    pub fn sum(&self) -> i64 {
        self.sum
    }

    pub fn n_shots(&self) -> usize {
        self.n_shots
    }
}

/// `P(−1,−1) − P(−1,+1)` over the record set.
pub fn estimate_correlation(records: &RecordSet) -> Result<CorrelationEstimate> {
    let sum = records.shots().iter().map(|s| s.product()).sum();
    CorrelationEstimate::from_sum(sum, records.len())
}

/// Ideal qubit correlation for separation angle `θ`: `cos θ`.
pub fn correlation_theoretical(theta: RotationAngle) -> f64 {
    theta.radians().cos()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Classification {
    Classical,
    ViolatesUpper,
    ViolatesLower,
}

impl Classification {
    pub fn of(k: f64) -> Self {
        if k > 1.0 {
            Classification::ViolatesUpper
        } else if k < -3.0 {
            Classification::ViolatesLower
        } else {
            Classification::Classical
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Classification::Classical => "classical",
            Classification::ViolatesUpper => "violates_upper",
            Classification::ViolatesLower => "violates_lower",
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KStatistic {
    pub c21: f64,
    pub c32: f64,
    pub c31: f64,
    pub k: f64,
    pub classification: Classification,
}

impl KStatistic {
    pub fn from_values(c21: f64, c32: f64, c31: f64) -> Self {
        let k = c21 + c32 - c31;
        KStatistic {
            c21,
            c32,
            c31,
            k,
            classification: Classification::of(k),
        }
    }
}

pub fn k_statistic(
    c21: &CorrelationEstimate,
    c32: &CorrelationEstimate,
    c31: &CorrelationEstimate,
) -> KStatistic {
    KStatistic::from_values(c21.value(), c32.value(), c31.value())
}

/// `2cos θ − cos 2θ`, the ideal K for equal intervals `θ = ΩΔt`.
pub fn k_theoretical(theta: RotationAngle) -> f64 {
    let t = theta.radians();
    2.0 * t.cos() - (2.0 * t).cos()
}

/// K evaluated on the first `m` shots of each set, for `m = 1..=N`.
pub fn cumulative_k(c21: &RecordSet, c32: &RecordSet, c31: &RecordSet) -> Result<Vec<(usize, f64)>> {
    let n = c21.len();
    if c32.len() != n || c31.len() != n {
        return Err(Error::invalid(format!(
            "record sets differ in length: {}, {}, {}",
            c21.len(),
            c32.len(),
            c31.len()
        )));
    }
    let (mut s21, mut s32, mut s31) = (0i64, 0i64, 0i64);
    let mut out = Vec::with_capacity(n);
    for m in 0..n {
        s21 += c21.shots()[m].product();
        s32 += c32.shots()[m].product();
        s31 += c31.shots()[m].product();
        let est = |s| CorrelationEstimate::from_sum(s, m + 1);
        let k = k_statistic(&est(s21)?, &est(s32)?, &est(s31)?).k;
        out.push((m + 1, k));
    }
    Ok(out)
}
