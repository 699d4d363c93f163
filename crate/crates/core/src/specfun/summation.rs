use std::ops::AddAssign;

/// Neumaier's variant of Kahan summation.
///
/// The running compensation picks up the low-order bits lost whenever the
/// next addend is larger in magnitude than the partial sum, which plain
/// Kahan summation misses.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.compensation += (self.sum - t) + value;
        } else {
            self.compensation += (value - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl AddAssign<f64> for CompensatedSum {
    fn add_assign(&mut self, rhs: f64) {
        self.add(rhs);
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = CompensatedSum::new();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_small_addends_lost_by_naive_sum() {
        let values = [1.0, 1e100, 1.0, -1e100];
        let naive: f64 = values.iter().sum();
        let compensated: CompensatedSum = values.iter().copied().collect();
        assert_eq!(naive, 0.0);
        assert_eq!(compensated.value(), 2.0);
    }

    #[test]
    fn harmonic_tail() {
        // sum_{k=1}^{n} 1/(k(k+1)) = 1 - 1/(n+1), telescoping
        let n = 100_000;
        let s: CompensatedSum = (1..=n)
            .map(|k| 1.0 / (k as f64 * (k as f64 + 1.0)))
            .collect();
        let exact = 1.0 - 1.0 / (n as f64 + 1.0);
        assert!((s.value() - exact).abs() <= 2.0 * f64::EPSILON);
    }
}
