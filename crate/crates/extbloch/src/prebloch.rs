//! The pre-Bloch group: formal ℤ-linear sums of cross-ratio symbols [z].
//!
//! A [`PreBlochSum`] is an integer-weighted multiset of complex numbers.
//! The degenerate symbols [0], [1], [∞] are identically zero and are dropped
//! on insertion, which is also what makes the five-term combination total:
//! at the excluded parameter values its degenerate entries simply vanish.
//!
//! Two evaluation homomorphisms consume these sums: the Bloch–Wigner
//! regulator [`PreBlochSum::evaluate_volume`] (which kills the five-term
//! relation analytically) and the wedge regulator [`nu`] (which kills it
//! syntactically after exact rewriting — see the tests).

use crate::kernel::bloch_wigner_d;
use crate::wedge::{ExactC, WedgeSum};
use num_complex::Complex64;
use std::collections::BTreeMap;

type C = Complex64;

/// Symbols within this distance of 0 or 1 (or non-finite, read as ∞) are
/// degenerate and dropped.
const DEGENERATE_TOL: f64 = 1e-12;

/// Merge grid for symbol equality: two shapes agreeing to well below this
/// are the same generator.
const SYMBOL_GRID: f64 = 1e-12;

fn is_degenerate(z: C) -> bool {
    !z.is_finite() || z.norm() <= DEGENERATE_TOL || (z - C::new(1.0, 0.0)).norm() <= DEGENERATE_TOL
}

/// One generator with its integer weight.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PreBlochTerm {
    pub z: C,
    pub weight: i64,
}

/// An element of the free part of the pre-Bloch group: Σ nᵢ[zᵢ].
///
/// Equality is multiset equality of grid-rounded generators; deciding
/// equality modulo the five-term relation is out of scope (the invariants
/// downstream are consumed through evaluation homomorphisms, which is all
/// the geometry needs).
#[derive(Clone, Debug, Default)]
pub struct PreBlochSum {
    terms: BTreeMap<(i64, i64), PreBlochTerm>,
}

impl PreBlochSum {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The single generator [z] (empty if z is degenerate).
    pub fn generator(z: C) -> Self {
        let mut s = Self::zero();
        s.push(z, 1);
        s
    }

    /// Adds n·[z], dropping degenerate symbols and cancelling weights.
    pub fn push(&mut self, z: C, n: i64) {
        if n == 0 || is_degenerate(z) {
            return;
        }
        let key = crate::spaces::complex_key(z, SYMBOL_GRID);
        let entry = self.terms.entry(key).or_insert(PreBlochTerm { z, weight: 0 });
        entry.weight += n;
        if entry.weight == 0 {
            self.terms.remove(&key);
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(mut self, other: &PreBlochSum) -> Self {
        for t in other.terms() {
            self.push(t.z, t.weight);
        }
        self
    }

    pub fn scale(mut self, n: i64) -> Self {
        if n == 0 {
            return Self::zero();
        }
        for entry in self.terms.values_mut() {
            entry.weight *= n;
        }
        self
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(self) -> Self {
        self.scale(-1)
    }

    pub fn terms(&self) -> impl Iterator<Item = &PreBlochTerm> {
        self.terms.values()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Multiset equality of rounded generators.
    pub fn same_terms(&self, other: &PreBlochSum) -> bool {
        self.terms.len() == other.terms.len()
            && self
                .terms
                .iter()
                .zip(other.terms.iter())
                .all(|((k1, t1), (k2, t2))| k1 == k2 && t1.weight == t2.weight)
    }

    /// The Bloch–Wigner regulator Σ nᵢ·D(zᵢ): the hyperbolic volume when the
    /// sum is the Bloch class of a triangulated manifold.
    pub fn evaluate_volume(&self) -> f64 {
        self.terms().map(|t| t.weight as f64 * bloch_wigner_d(t.z)).sum()
    }
}

impl std::fmt::Display for PreBlochSum {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms().enumerate() {
            write_signed_weight(f, t.weight, i == 0)?;
            write!(f, "[{}]", t.z)?;
        }
        Ok(())
    }
}

/// Shared rendering for `± n·` prefixes in formal sums.
pub(crate) fn write_signed_weight(
    f: &mut std::fmt::Formatter<'_>,
    w: i64,
    first: bool,
) -> std::fmt::Result {
    if !first {
        write!(f, " ")?;
    }
    if w < 0 {
        write!(f, "- ")?;
    } else if !first {
        write!(f, "+ ")?;
    }
    let a = w.abs();
    if a != 1 {
        write!(f, "{a}·")?;
    }
    Ok(())
}

/// The five-term combination
/// [x] − [y] + [y/x] − [(1−x⁻¹)/(1−y⁻¹)] + [(1−x)/(1−y)].
///
/// Total: at parameter values where an argument degenerates to 0, 1, or ∞
/// the corresponding symbol is zero and is dropped, so e.g. x = y collapses
/// the whole sum to 0.
pub fn five_term_terms(x: C, y: C) -> PreBlochSum {
    let one = C::new(1.0, 0.0);
    let mut s = PreBlochSum::zero();
    s.push(x, 1);
    s.push(y, -1);
    s.push(y / x, 1);
    s.push((one - x.inv()) / (one - y.inv()), -1);
    s.push((one - x) / (one - y), 1);
    s
}

/// The six cross-ratio parameter forms of one symbol with their signs:
/// [z] = [1/(1−z)] = [1−1/z] = −[1/z] = −[z/(z−1)] = −[1−z].
pub fn six_symmetries(z: C) -> crate::Result<Vec<(C, i64)>> {
    if is_degenerate(z) {
        return Err(crate::Error::domain(
            "six_symmetries",
            format!("symbol [{z}] is degenerate"),
        ));
    }
    let one = C::new(1.0, 0.0);
    Ok(vec![
        (z, 1),
        ((one - z).inv(), 1),
        (one - z.inv(), 1),
        (z.inv(), -1),
        (z / (z - one), -1),
        (one - z, -1),
    ])
}

/// The regulator ν: [z] ↦ z ∧ (1−z) into the formal wedge over ℂ^×.
///
/// Symbols are keyed by their exact floating-point values, so the only
/// cancellation this sees is syntactic (equal bit patterns); that is enough
/// for the antisymmetry and exact-rational checks, and deliberately nothing
/// more.
pub fn nu(s: &PreBlochSum) -> WedgeSum<ExactC> {
    let one = C::new(1.0, 0.0);
    let mut w = WedgeSum::zero();
    for t in s.terms() {
        w.push(ExactC::new(t.z), ExactC::new(one - t.z), t.weight);
    }
    w
}
