//! Exact ∧² of a free ℤ-module on opaque symbols.
//!
//! The identity checks for ν, ν̂ and μ all live in the second exterior power
//! of a module freely generated by symbols: either formal edge symbols
//! e_{ij} or exact complex values keyed by their bit patterns. Only the
//! free-module structure is modeled — a∧b = −(b∧a), a∧a = 0, integer
//! coefficients — so `is_zero` means *syntactic* cancellation, never a
//! value-level relation in ∧²ℂ.

use std::collections::BTreeMap;

/// A normalized integer combination of wedges a∧b with a < b in the symbol
/// order. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WedgeSum<S: Ord + Clone> {
    terms: BTreeMap<(S, S), i64>,
}

impl<S: Ord + Clone> Default for WedgeSum<S> {
    fn default() -> Self {
        WedgeSum {
            terms: BTreeMap::new(),
        }
    }
}

impl<S: Ord + Clone> WedgeSum<S> {
    pub fn zero() -> Self {
        Self::default()
    }

    /// a ∧ b, normalized: a∧a = 0 and a∧b = −(b∧a).
    pub fn wedge(a: S, b: S) -> Self {
        let mut w = Self::zero();
        w.push(a, b, 1);
        w
    }

    /// Add n·(a∧b) in place.
    pub fn push(&mut self, a: S, b: S, n: i64) {
        if n == 0 {
            return;
        }
        use std::cmp::Ordering::*;
        let (key, signed) = match a.cmp(&b) {
            Equal => return,
            Less => ((a, b), n),
            Greater => ((b, a), -n),
        };
        let entry = self.terms.entry(key.clone()).or_insert(0);
        *entry += signed;
        if *entry == 0 {
            self.terms.remove(&key);
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(mut self, other: Self) -> Self {
        for ((a, b), n) in other.terms {
            self.push(a, b, n);
        }
        self
    }

    pub fn scale(mut self, n: i64) -> Self {
        if n == 0 {
            return Self::zero();
        }
        for v in self.terms.values_mut() {
            *v *= n;
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Bilinear expansion (Σ mᵢ aᵢ) ∧ (Σ nⱼ bⱼ) = ΣΣ mᵢnⱼ aᵢ∧bⱼ.
    pub fn wedge_combinations(left: &[(S, i64)], right: &[(S, i64)]) -> Self {
        let mut w = Self::zero();
        for (a, m) in left {
            for (b, n) in right {
                w.push(a.clone(), b.clone(), m * n);
            }
        }
        w
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(S, S), i64)> {
        self.terms.iter().map(|(k, &v)| (k, v))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<S: Ord + Clone> std::ops::Add for WedgeSum<S> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        WedgeSum::add(self, rhs)
    }
}

impl<S: Ord + Clone> std::ops::Sub for WedgeSum<S> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        WedgeSum::add(self, rhs.scale(-1))
    }
}

/// A complex value as an exact, totally ordered wedge symbol: the raw IEEE
/// bit patterns of (re, im), with both zeros identified. Two symbols are
/// equal exactly when the underlying values are bit-identical — deliberately
/// strict, so cancellation certifies algebraically equal provenance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ExactC(u64, u64);

impl ExactC {
    pub fn new(z: num_complex::Complex64) -> Self {
        fn bits(x: f64) -> u64 {
            if x == 0.0 {
                0.0f64.to_bits() // fold −0.0 into +0.0
            } else {
                x.to_bits()
            }
        }
        ExactC(bits(z.re), bits(z.im))
    }

    pub fn value(&self) -> num_complex::Complex64 {
        num_complex::Complex64::new(f64::from_bits(self.0), f64::from_bits(self.1))
    }

    pub fn is_zero(&self) -> bool {
        self.value() == num_complex::Complex64::new(0.0, 0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wedge_of_equal_symbols_is_zero() {
        assert!(WedgeSum::wedge("s", "s").is_zero());
    }

    #[test]
    fn antisymmetry() {
        let w = WedgeSum::wedge("a", "b") + WedgeSum::wedge("b", "a");
        assert!(w.is_zero());
    }

    #[test]
    fn scaling_cancels() {
        let w = WedgeSum::wedge("a", "b").scale(2) + WedgeSum::wedge("a", "b").scale(-2);
        assert!(w.is_zero());
    }

    #[test]
    fn add_commutes_and_associates() {
        let x = WedgeSum::wedge(1, 2);
        let y = WedgeSum::wedge(2, 3).scale(5);
        let z = WedgeSum::wedge(1, 3).scale(-2);
        let a = x.clone().add(y.clone()).add(z.clone());
        let b = z.clone().add(x.clone()).add(y.clone());
        assert_eq!(a, b);
        let c = x.add(y.add(z));
        assert_eq!(a, c);
    }

    #[test]
    fn bilinear_expansion() {
        // (a + b) ∧ (a − b) = −2 a∧b … = a∧a − a∧b + b∧a − b∧b = −2 a∧b.
        let w = WedgeSum::wedge_combinations(&[("a", 1), ("b", 1)], &[("a", 1), ("b", -1)]);
        let expect = WedgeSum::wedge("a", "b").scale(-2);
        assert_eq!(w, expect);
    }

    #[test]
    fn exact_keys_identify_zeros() {
        let plus = ExactC::new(num_complex::Complex64::new(0.0, 1.0));
        let minus = ExactC::new(num_complex::Complex64::new(-0.0, 1.0));
        assert_eq!(plus, minus);
        assert!(!plus.is_zero());
        assert!(ExactC::new(num_complex::Complex64::new(0.0, -0.0)).is_zero());
    }
}
