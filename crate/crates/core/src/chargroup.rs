//! The group of Dirichlet characters modulo an odd prime.
//!
//! Characters are indexed by an exponent `j ∈ [0, q-2]` against a fixed
//! primitive root `g`: `χ_j(g^k) = e^{2πi jk/(q-1)}`. With this layout the sum
//! `Σ_a f(a) χ_j(a)` over all `j` is a single length-`(q-1)` DFT of `f`
//! reindexed along powers of `g`.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};
use crate::numth::{is_prime, primitive_root};
use crate::scalar::Real;
use crate::sum::neumaier_sum;

pub const MAX_MODULUS: u64 = 1 << 31;

#[derive(Clone)]
pub struct CharacterGroup<T: Real> {
    q: u64,
    g: u64,
    dlog: Vec<u32>,
    powers: Vec<u32>,
    roots: Vec<Complex<T>>,
    fft: Arc<dyn Fft<T>>,
}

impl<T: Real> fmt::Debug for CharacterGroup<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CharacterGroup")
            .field("q", &self.q)
            .field("g", &self.g)
            .finish_non_exhaustive()
    }
}

impl<T: Real> CharacterGroup<T> {
    /// Builds the character group mod `q` for an odd prime `q < 2^31`.
    pub fn new(q: u64) -> Result<Self> {
        if q >= MAX_MODULUS {
            return Err(Error::ModulusTooLarge(q));
        }
        if q == 2 || !is_prime(q) {
            return Err(Error::NotOddPrime(q));
        }
        let g = primitive_root(q)?;
        let phi = (q - 1) as usize;
        let mut dlog = vec![u32::MAX; q as usize];
        let mut powers = Vec::with_capacity(phi);
        let mut x = 1u64;
        for k in 0..phi {
            if dlog[x as usize] != u32::MAX {
                return Err(Error::NotOddPrime(q));
            }
            dlog[x as usize] = k as u32;
            powers.push(x as u32);
            x = x * g % q;
        }
        debug_assert_eq!(x, 1);
        let n = T::from_count(phi as u64);
        let roots = (0..phi)
            .map(|m| {
                let theta = T::TAU() * T::from_count(m as u64) / n;
                Complex::new(theta.cos(), theta.sin())
            })
            .collect();
        let fft = FftPlanner::new().plan_fft_inverse(phi);
        Ok(Self {
            q,
            g,
            dlog,
            powers,
            roots,
            fft,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    pub fn generator(&self) -> u64 {
        self.g
    }

    /// φ(q) = q - 1, also the number of characters.
    pub fn order(&self) -> usize {
        (self.q - 1) as usize
    }

    /// Discrete log of `a` to base `g`; `None` when `q | a`.
    pub fn dlog(&self, a: u64) -> Option<u32> {
        let r = (a % self.q) as usize;
        (r != 0).then(|| self.dlog[r])
    }

    /// `g^k mod q`.
    pub fn power(&self, k: usize) -> u64 {
        self.powers[k % self.order()] as u64
    }

    pub fn character(&self, index: usize) -> Character<'_, T> {
        assert!(index < self.order(), "character index out of range");
        Character { group: self, index }
    }

    pub fn principal(&self) -> Character<'_, T> {
        self.character(0)
    }

    pub fn characters(&self) -> impl Iterator<Item = Character<'_, T>> {
        (0..self.order()).map(move |j| self.character(j))
    }

    pub fn non_principal(&self) -> impl Iterator<Item = Character<'_, T>> {
        (1..self.order()).map(move |j| self.character(j))
    }

    /// χ_j(n).
    #[inline]
    pub fn value(&self, index: usize, n: u64) -> Complex<T> {
        match self.dlog(n) {
            None => Complex::new(T::zero(), T::zero()),
            Some(k) => {
                let phi = self.q - 1;
                self.roots[((index as u64 * k as u64) % phi) as usize]
            }
        }
    }

    /// `Σ_χ χ(m) conj(χ(n))`, summed directly over all characters.
    pub fn orthogonality_sum(&self, m: u64, n: u64) -> Result<T> {
        if m.is_multiple_of(self.q) || n.is_multiple_of(self.q) {
            return Err(Error::NotCoprime(self.q));
        }
        Ok(neumaier_sum(
            self.characters()
                .map(|chi| (chi.value(m) * chi.value(n).conj()).re),
        ))
    }

    /// `out[j] = Σ_{a=1}^{q-1} f[a-1] χ_j(a)` for every character index `j`.
    pub fn dft(&self, f: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
        if f.len() != self.order() {
            return Err(Error::LengthMismatch {
                expected: self.order(),
                got: f.len(),
            });
        }
        let mut buf: Vec<Complex<T>> = self.powers.iter().map(|&a| f[a as usize - 1]).collect();
        self.fft.process(&mut buf);
        Ok(buf)
    }

    /// Same as [`dft`](Self::dft) for real input.
    pub fn dft_real(&self, f: &[T]) -> Result<Vec<Complex<T>>> {
        let f: Vec<Complex<T>> = f.iter().map(|&x| Complex::new(x, T::zero())).collect();
        self.dft(&f)
    }
}

/// A single character χ_j mod q.
#[derive(Clone, Copy)]
pub struct Character<'g, T: Real> {
    group: &'g CharacterGroup<T>,
    index: usize,
}

impl<T: Real> fmt::Debug for Character<'_, T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "χ_{} mod {}", self.index, self.group.q)
    }
}

impl<'g, T: Real> Character<'g, T> {
    pub fn group(&self) -> &'g CharacterGroup<T> {
        self.group
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn modulus(&self) -> u64 {
        self.group.q
    }

    pub fn is_principal(&self) -> bool {
        self.index == 0
    }

    #[inline]
    pub fn value(&self, n: u64) -> Complex<T> {
        self.group.value(self.index, n)
    }

    pub fn conj(&self) -> Self {
        let phi = self.group.order();
        self.group.character((phi - self.index) % phi)
    }

    /// χ(-1) ∈ {1, -1}; `dlog(q-1) = (q-1)/2` so this is `(-1)^j`.
    pub fn parity(&self) -> i8 {
        if self.index.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Multiplicative order of χ in the character group.
    pub fn order(&self) -> usize {
        let phi = self.group.order();
        phi / crate::numth::gcd(self.index as u64, phi as u64) as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type G = CharacterGroup<f64>;

    #[test]
    fn build_mod_5() {
        let g = G::new(5).unwrap();
        assert_eq!(g.generator(), 2);
        assert_eq!(g.dlog(1), Some(0));
        assert_eq!(g.dlog(2), Some(1));
        assert_eq!(g.dlog(4), Some(2));
        assert_eq!(g.dlog(3), Some(3));
        assert_eq!(g.dlog(10), None);
    }

    #[test]
    fn build_rejects_composite_and_even() {
        assert_eq!(G::new(9).unwrap_err(), Error::NotOddPrime(9));
        assert_eq!(G::new(2).unwrap_err(), Error::NotOddPrime(2));
        assert_eq!(G::new(1).unwrap_err(), Error::NotOddPrime(1));
        assert_eq!(
            G::new(2_147_483_659).unwrap_err(),
            Error::ModulusTooLarge(2_147_483_659)
        );
        assert_eq!(G::new(101).unwrap().order(), 100);
    }

    #[test]
    fn dlog_is_bijection() {
        let g = G::new(1009).unwrap();
        let mut seen = vec![false; 1008];
        for a in 1..1009u64 {
            let k = g.dlog(a).unwrap() as usize;
            assert!(!seen[k]);
            seen[k] = true;
            assert_eq!(crate::numth::pow_mod(g.generator(), k as u64, 1009), a);
        }
    }

    #[test]
    fn char_value_examples() {
        let g7 = G::new(7).unwrap();
        assert_eq!(g7.principal().value(10), Complex::new(1.0, 0.0));
        let g5 = G::new(5).unwrap();
        for chi in g5.characters() {
            assert_eq!(chi.value(10), Complex::new(0.0, 0.0));
        }
        let z = g5.character(1).value(2);
        assert!((z - Complex::new(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn orthogonality_examples() {
        let g5 = G::new(5).unwrap();
        assert!(g5.orthogonality_sum(2, 3).unwrap().abs() < 1e-12);
        assert!((g5.orthogonality_sum(3, 3).unwrap() - 4.0).abs() < 1e-12);
        let g7 = G::new(7).unwrap();
        assert!((g7.orthogonality_sum(1, 8).unwrap() - 6.0).abs() < 1e-12);
        assert_eq!(g7.orthogonality_sum(7, 1), Err(Error::NotCoprime(7)));
    }

    #[test]
    fn parity_matches_value_at_minus_one() {
        let g = G::new(101).unwrap();
        for chi in g.characters() {
            let v = chi.value(100);
            assert!((v.re - chi.parity() as f64).abs() < 1e-12);
            assert_eq!(chi.conj().conj().index(), chi.index());
        }
        assert_eq!(g.character(25).order(), 4);
    }

    #[test]
    fn dft_examples() {
        let g5 = G::new(5).unwrap();
        let out = g5.dft_real(&[1.0, 1.0, 1.0, 1.0]).unwrap();
        assert!((out[0] - Complex::new(4.0, 0.0)).norm() < 1e-12);
        assert!(out[1..].iter().all(|z| z.norm() < 1e-12));
        let delta = g5.dft_real(&[1.0, 0.0, 0.0, 0.0]).unwrap();
        assert!(delta
            .iter()
            .all(|z| (z - Complex::new(1.0, 0.0)).norm() < 1e-12));
        assert_eq!(
            g5.dft_real(&[1.0; 3]).unwrap_err(),
            Error::LengthMismatch {
                expected: 4,
                got: 3
            }
        );
    }

    #[test]
    fn single_precision_group_works() {
        let g = CharacterGroup::<f32>::new(101).unwrap();
        let s = g.orthogonality_sum(3, 104).unwrap();
        assert!((s - 100.0).abs() < 1e-3);
    }
}
