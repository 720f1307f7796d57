//! Compensated (Neumaier) summation.

use crate::scalar::Real;

/// Running sum with a separate compensation term.
///
/// The state is the pair `(sum, compensation)`; two accumulators fed the same
/// sequence end in bitwise-identical states, which the checkpointed tables
/// rely on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompensatedSum<F> {
    sum: F,
    compensation: F,
}

impl<F: Real> Default for CompensatedSum<F> {
    fn default() -> Self {
        Self::new()
    }
}

impl<F: Real> CompensatedSum<F> {
    pub fn new() -> Self {
        Self {
            sum: F::zero(),
            compensation: F::zero(),
        }
    }

    #[inline]
    pub fn add(&mut self, x: F) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation = self.compensation + ((self.sum - t) + x);
        } else {
            self.compensation = self.compensation + ((x - t) + self.sum);
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> F {
        self.sum + self.compensation
    }
}

impl<F: Real> Extend<F> for CompensatedSum<F> {
    fn extend<I: IntoIterator<Item = F>>(&mut self, iter: I) {
        for x in iter {
            self.add(x);
        }
    }
}

/// Compensated sum of an iterator.
pub fn compensated_sum<F: Real, I: IntoIterator<Item = F>>(iter: I) -> F {
    let mut acc = CompensatedSum::new();
    acc.extend(iter);
    acc.value()
}
