//! Compensated summation in a fixed order.
//!
//! Every O(n^2) kernel reduces its terms row by row: each row is summed with a
//! [`KahanSum`] in increasing column order, then row totals are combined with
//! another [`KahanSum`] in increasing row order. Serial and parallel kernels
//! follow the same recipe, so they agree bit for bit.

use rayon::prelude::*;

/// Neumaier's variant of Kahan summation.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    compensation: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.compensation += (self.sum - t) + value;
        } else {
            self.compensation += (value - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl FromIterator<f64> for KahanSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut k = KahanSum::new();
        for v in iter {
            k.add(v);
        }
        k
    }
}

/// Compensated sum of an iterator in iteration order.
pub fn kahan_sum<I: IntoIterator<Item = f64>>(iter: I) -> f64 {
    iter.into_iter().collect::<KahanSum>().value()
}

/// How the row-wise kernels are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    #[default]
    Serial,
    Parallel,
}

/// Evaluate `row(i)` for every `i in 0..rows` and reduce the results in row order.
///
/// The row closure is responsible for summing its own terms in canonical order;
/// only the per-row evaluation is distributed in parallel mode.
pub fn reduce_rows<F, E>(rows: usize, exec: Execution, row: F) -> Result<f64, E>
where
    F: Fn(usize) -> Result<f64, E> + Sync,
    E: Send,
{
    let totals: Vec<f64> = match exec {
        Execution::Serial => (0..rows).map(&row).collect::<Result<_, E>>()?,
        Execution::Parallel => (0..rows).into_par_iter().map(&row).collect::<Result<_, E>>()?,
    };
    Ok(kahan_sum(totals))
}
