//! Compensated (Neumaier) summation with a fixed left-to-right order.

use num_complex::Complex;

use crate::scalar::Real;

/// Running Neumaier sum. Order of `add` calls fully determines the result.
#[derive(Debug, Clone, Copy, Default)]
pub struct NeumaierSum<T> {
    sum: T,
    comp: T,
}

impl<T: Real> NeumaierSum<T> {
    pub fn new() -> Self {
        Self {
            sum: T::zero(),
            comp: T::zero(),
        }
    }

    #[inline]
    pub fn add(&mut self, x: T) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> T {
        self.sum + self.comp
    }
}

impl<T: Real> FromIterator<T> for NeumaierSum<T> {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        let mut acc = Self::new();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

/// Compensated sum of a real sequence.
pub fn neumaier_sum<T: Real, I: IntoIterator<Item = T>>(iter: I) -> T {
    iter.into_iter().collect::<NeumaierSum<T>>().value()
}

/// Compensated sum of a complex sequence, real and imaginary parts separately.
pub fn neumaier_sum_complex<T: Real, I: IntoIterator<Item = Complex<T>>>(iter: I) -> Complex<T> {
    let mut re = NeumaierSum::new();
    let mut im = NeumaierSum::new();
    for z in iter {
        re.add(z.re);
        im.add(z.im);
    }
    Complex::new(re.value(), im.value())
}
