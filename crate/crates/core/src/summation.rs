//! Deterministic, error-bounded reductions.

use num_complex::Complex64;

/// Neumaier compensated sum, accumulated in iteration order.
pub fn compensated<I: IntoIterator<Item = f64>>(terms: I) -> f64 {
    let mut acc = Neumaier::default();
    for t in terms {
        acc.add(t);
    }
    acc.total()
}

/// Compensated sum of complex terms, real and imaginary parts separately.
pub fn compensated_complex<I: IntoIterator<Item = Complex64>>(terms: I) -> Complex64 {
    let mut re = Neumaier::default();
    let mut im = Neumaier::default();
    for t in terms {
        re.add(t.re);
        im.add(t.im);
    }
    Complex64::new(re.total(), im.total())
}

#[derive(Default, Clone, Copy)]
struct Neumaier {
    sum: f64,
    carry: f64,
}

impl Neumaier {
    fn add(&mut self, t: f64) {
        let next = self.sum + t;
        if self.sum.abs() >= t.abs() {
            self.carry += (self.sum - next) + t;
        } else {
            self.carry += (t - next) + self.sum;
        }
        self.sum = next;
    }

    fn total(self) -> f64 {
        self.sum + self.carry
    }
}

const PAIRWISE_BLOCK: usize = 8;

/// Pairwise (tree) summation. The tree shape depends only on the length, so the result is
/// reproducible bit for bit.
pub fn pairwise(values: &[f64]) -> f64 {
    if values.len() <= PAIRWISE_BLOCK {
        return values.iter().fold(0.0, |acc, v| acc + v);
    }
    let mid = values.len() / 2;
    pairwise(&values[..mid]) + pairwise(&values[mid..])
}
