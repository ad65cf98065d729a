//! Error-free transformations and compensated accumulation.

/// Knuth's two-sum: `a + b = s + e` exactly in floating point.
#[inline]
pub fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

/// Neumaier-style compensated accumulator. Also tracks the running sum of
/// magnitudes, which bounds the rounding error of the summands themselves.
#[derive(Debug, Clone, Copy, Default)]
pub struct Accumulator {
    sum: f64,
    comp: f64,
    abs_sum: f64,
    compensated: bool,
}

impl Accumulator {
    pub fn new(compensated: bool) -> Self {
        Self {
            compensated,
            ..Self::default()
        }
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        self.abs_sum += x.abs();
        if self.compensated {
            let (s, e) = two_sum(self.sum, x);
            self.sum = s;
            self.comp += e;
        } else {
            self.sum += x;
        }
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }

    /// Sum of |terms| seen so far.
    #[inline]
    pub fn abs_sum(&self) -> f64 {
        self.abs_sum
    }
}

/// Compensated sum of a slice.
pub fn compensated_sum(xs: &[f64]) -> f64 {
    let mut acc = Accumulator::new(true);
    for &x in xs {
        acc.add(x);
    }
    acc.value()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_sum_is_exact() {
        let (s, e) = two_sum(1.0, 1e-17);
        assert_eq!(s, 1.0);
        assert_eq!(e, 1e-17);
    }

    #[test]
    fn compensation_recovers_lost_bits() {
        let xs = [1e16, 1.0, -1e16, 1.0];
        assert_eq!(compensated_sum(&xs), 2.0);
        let naive: f64 = xs.iter().sum();
        assert_ne!(naive, 2.0);
    }
}
