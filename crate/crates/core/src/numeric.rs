//! Compensated summation and small statistics helpers.
//!
//! Every aggregate in the crate goes through [`NeumaierSum`] so that results
//! do not depend on accumulated rounding drift and stay reproducible when
//! the same inputs are visited in the same order.

/// Neumaier's variant of Kahan summation.
#[derive(Debug, Clone, Copy, Default)]
pub struct NeumaierSum {
    sum: f64,
    compensation: f64,
}

impl NeumaierSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl FromIterator<f64> for NeumaierSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = NeumaierSum::new();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

/// Compensated sum of a sequence.
pub fn sum<I: IntoIterator<Item = f64>>(iter: I) -> f64 {
    iter.into_iter().collect::<NeumaierSum>().value()
}

/// Arithmetic mean; `None` for an empty sequence.
pub fn mean<I: IntoIterator<Item = f64>>(iter: I) -> Option<f64> {
    let mut acc = NeumaierSum::new();
    let mut n = 0usize;
    for x in iter {
        acc.add(x);
        n += 1;
    }
    (n > 0).then(|| acc.value() / n as f64)
}

/// Sample standard deviation (n - 1 denominator). A single value has spread 0.
pub fn sample_std(values: &[f64]) -> Option<f64> {
    let m = mean(values.iter().copied())?;
    if values.len() < 2 {
        return Some(0.0);
    }
    let ss = sum(values.iter().map(|x| (x - m) * (x - m)));
    Some((ss / (values.len() - 1) as f64).sqrt())
}

/// Population standard deviation.
pub fn population_std(values: &[f64]) -> Option<f64> {
    let m = mean(values.iter().copied())?;
    let ss = sum(values.iter().map(|x| (x - m) * (x - m)));
    Some((ss / values.len() as f64).sqrt())
}

/// Pearson correlation coefficient. `None` if the series are shorter than two
/// points or either has zero variance.
pub fn pearson(xs: &[f64], ys: &[f64]) -> Option<f64> {
    assert_eq!(xs.len(), ys.len(), "pearson: series length mismatch");
    if xs.len() < 2 {
        return None;
    }
    let mx = mean(xs.iter().copied())?;
    let my = mean(ys.iter().copied())?;
    let mut sxy = NeumaierSum::new();
    let mut sxx = NeumaierSum::new();
    let mut syy = NeumaierSum::new();
    for (&x, &y) in xs.iter().zip(ys) {
        let (dx, dy) = (x - mx, y - my);
        sxy.add(dx * dy);
        sxx.add(dx * dx);
        syy.add(dy * dy);
    }
    let (sxx, syy) = (sxx.value(), syy.value());
    if sxx <= 0.0 || syy <= 0.0 {
        return None;
    }
    Some((sxy.value() / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}
