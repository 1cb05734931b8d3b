//! Flattened ideal simplices and the extended pre-Bloch group.
//!
//! A [`Flattening`] is a triple of log parameters (w₀, w₁, w₂) summing to
//! zero with exp(w₀) = ±z and exp(−w₁) = ±(1−z) for a recoverable shape z —
//! equivalently a choice [z; p, q] of logarithm branches. The map
//! [`sigma_tilde_p`] (and its ℂ²∖{0} / symmetric-matrix variants) produces
//! one from a decorated simplex by signed sums of the dH pairing over the
//! six edges; that is the combinatorial heart of the crate:
//!
//! ```text
//!   w̃₀ = dH(03) + dH(12) − dH(02) − dH(13)
//!   w̃₁ = dH(02) + dH(13) − dH(01) − dH(23)
//!   w̃₂ = dH(01) + dH(23) − dH(03) − dH(12)
//! ```
//!
//! Around a five-vertex configuration the face flattenings satisfy the
//! ten-equation [`flattening_condition`], which is exactly what makes the
//! lifted five-term relation (and hence [`lhat_sum`]) well defined.
//!
//! The wedge maps ν̂ and μ come in two modes. Numeric mode keys the wedge by
//! exact floating values and is for inspection only. Symbolic mode treats
//! the dH values e_{ij} as opaque symbols indexed by vertex pairs, which
//! turns the commuting-square identity ν̂ ∘ σ̃ = μ ∘ ∂ into an exact
//! statement in a free module — see [`nu_hat_symbolic`] / [`mu_boundary_symbolic`].

use crate::error::{Error, Result};
use crate::kernel::{lhat, principal_log, ModPiSq};
use crate::spaces::{complex_key, dh, dh_sym, dh_u, PointP, SymMat, VecU};
use crate::wedge::{ExactC, WedgeSum};
use num_complex::Complex64;
use std::collections::BTreeMap;
use std::f64::consts::PI;

type C = Complex64;

fn degenerate_shape(z: C) -> bool {
    !z.is_finite() || z.norm() <= 1e-12 || (z - C::new(1.0, 0.0)).norm() <= 1e-12
}

// ---------------------------------------------------------------------------
// Flattenings
// ---------------------------------------------------------------------------

/// Log parameters (w₀, w₁, w₂) of a flattened ideal simplex.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Flattening {
    w0: C,
    w1: C,
    w2: C,
}

impl Flattening {
    /// Validates the triple: components must sum to zero (1e−9) and must
    /// recover a nondegenerate shape with integer branch offsets.
    pub fn new(w0: C, w1: C, w2: C) -> Result<Self> {
        let f = Flattening { w0, w1, w2 };
        recover_zpq(&f)?;
        Ok(f)
    }

    /// For tests that assemble triples whose invariants hold algebraically.
    #[cfg(test)]
    pub(crate) fn from_parts_unchecked(w0: C, w1: C, w2: C) -> Self {
        Flattening { w0, w1, w2 }
    }

    pub fn w0(&self) -> C {
        self.w0
    }

    pub fn w1(&self) -> C {
        self.w1
    }

    pub fn w2(&self) -> C {
        self.w2
    }

    pub fn w(&self, j: usize) -> C {
        match j {
            0 => self.w0,
            1 => self.w1,
            2 => self.w2,
            _ => panic!("log parameter index {j} out of range"),
        }
    }

    /// The [z; p, q] presentation; see [`zpq_from_flattening`].
    pub fn zpq(&self) -> Result<(C, i64, i64)> {
        recover_zpq(self)
    }

    pub fn approx_eq(&self, o: &Flattening, tol: f64) -> bool {
        (self.w0 - o.w0).norm() <= tol
            && (self.w1 - o.w1).norm() <= tol
            && (self.w2 - o.w2).norm() <= tol
    }
}

impl std::fmt::Display for Flattening {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {})", self.w0, self.w1, self.w2)
    }
}

/// The flattening [z; p, q] = (Log z + pπi, −Log(1−z) + qπi, −w₀ − w₁).
pub fn flattening_from_zpq(z: C, p: i64, q: i64) -> Result<Flattening> {
    if degenerate_shape(z) {
        return Err(Error::domain(
            "flattening_from_zpq",
            format!("shape {z} is degenerate"),
        ));
    }
    let one = C::new(1.0, 0.0);
    let ipi = C::new(0.0, PI);
    let w0 = principal_log(z) + (p as f64) * ipi;
    let w1 = -principal_log(one - z) + (q as f64) * ipi;
    Ok(Flattening { w0, w1, w2: -w0 - w1 })
}

/// Recovers (z, p, q) from the log parameters: z is the unique shape with
/// exp(w₀) = ±z and exp(−w₁) = ±(1−z), after which p and q are the integer
/// branch offsets (Log z + pπi = w₀, −Log(1−z) + qπi = w₁). Errors when the
/// triple does not sum to zero, the sign bookkeeping is inconsistent, or an
/// offset misses an integer by more than 1e−6.
pub fn zpq_from_flattening(f: &Flattening) -> Result<(C, i64, i64)> {
    recover_zpq(f)
}

fn recover_zpq(f: &Flattening) -> Result<(C, i64, i64)> {
    let sum = f.w0 + f.w1 + f.w2;
    if sum.norm() > 1e-9 {
        return Err(Error::BadFlattening(format!(
            "log parameters {f} sum to {sum}, not 0"
        )));
    }
    let one = C::new(1.0, 0.0);
    let e0 = f.w0.exp();
    let e1 = (-f.w1).exp();
    if !e0.is_finite() || !e1.is_finite() {
        return Err(Error::BadFlattening(format!("log parameters {f} overflow")));
    }

    // z = ±e0 and 1−z = ±e1: pick the sign pair with the smallest mismatch.
    let mut best: Option<(C, f64)> = None;
    for s0 in [1.0, -1.0] {
        let z = s0 * e0;
        for s1 in [1.0, -1.0] {
            let residual = ((one - z) - s1 * e1).norm();
            if best.is_none_or(|(_, r)| residual < r) {
                best = Some((z, residual));
            }
        }
    }
    let (z, residual) = best.expect("four candidates were examined");
    if residual > 1e-6 * e1.norm().max(1.0) {
        return Err(Error::BadFlattening(format!(
            "exp(w0), exp(−w1) are not ±z, ±(1−z) of a common shape for {f} (residual {residual:.3e})"
        )));
    }
    if degenerate_shape(z) {
        return Err(Error::BadFlattening(format!(
            "recovered shape {z} of {f} is degenerate"
        )));
    }

    let ipi_inv = C::new(0.0, -1.0 / PI); // 1/(iπ)
    let p_t = (f.w0 - principal_log(z)) * ipi_inv;
    let p = p_t.re.round();
    if (p_t - C::new(p, 0.0)).norm() > 1e-6 {
        return Err(Error::BadFlattening(format!(
            "w0 offset {p_t} is not an integer multiple of πi in {f}"
        )));
    }
    let q_t = (f.w1 + principal_log(one - z)) * ipi_inv;
    let q = q_t.re.round();
    if (q_t - C::new(q, 0.0)).norm() > 1e-6 {
        return Err(Error::BadFlattening(format!(
            "w1 offset {q_t} is not an integer multiple of πi in {f}"
        )));
    }
    Ok((z, p as i64, q as i64))
}

// ---------------------------------------------------------------------------
// σ̃: decorated simplices → flattenings
// ---------------------------------------------------------------------------

fn assemble_sigma(d: [[C; 4]; 4]) -> Flattening {
    Flattening {
        w0: d[0][3] + d[1][2] - d[0][2] - d[1][3],
        w1: d[0][2] + d[1][3] - d[0][1] - d[2][3],
        w2: d[0][1] + d[2][3] - d[0][3] - d[1][2],
    }
}

/// σ̃ on a 4-tuple of vectors: the flattening whose log parameters are the
/// signed sums of dH = ½ Log det² over opposite edge pairs. Errors when two
/// of the vectors are projectively equal (a flat simplex).
pub fn sigma_tilde_u(t: &[VecU; 4]) -> Result<Flattening> {
    let mut d = [[C::new(0.0, 0.0); 4]; 4];
    for i in 0..4 {
        for j in (i + 1)..4 {
            d[i][j] = dh_u(&t[i], &t[j]).map_err(|_| {
                Error::Degenerate(format!(
                    "σ̃ undefined: vertices {i} and {j} of the simplex are projectively equal"
                ))
            })?;
        }
    }
    Ok(assemble_sigma(d))
}

/// σ̃ on a 4-tuple of ±vectors; equal to [`sigma_tilde_u`] on any choice of
/// lifts because dH is sign-insensitive.
pub fn sigma_tilde_p(t: &[PointP; 4]) -> Result<Flattening> {
    let mut d = [[C::new(0.0, 0.0); 4]; 4];
    for i in 0..4 {
        for j in (i + 1)..4 {
            d[i][j] = dh(&t[i], &t[j])?;
        }
    }
    Ok(assemble_sigma(d))
}

/// σ̃ on a 4-tuple of rank-one symmetric matrices, via dH = ½ Log DS.
pub fn sigma_tilde_sym(t: &[SymMat; 4]) -> Result<Flattening> {
    let mut d = [[C::new(0.0, 0.0); 4]; 4];
    for i in 0..4 {
        for j in (i + 1)..4 {
            d[i][j] = dh_sym(&t[i], &t[j])?;
        }
    }
    Ok(assemble_sigma(d))
}

// ---------------------------------------------------------------------------
// The flattening condition
// ---------------------------------------------------------------------------

/// The ten edges [zᵢzⱼ] of a five-point configuration, in the order the
/// residuals are reported.
pub const FLATTENING_EDGES: [&str; 10] = [
    "[z0z1]", "[z0z2]", "[z1z2]", "[z1z3]", "[z2z3]", "[z2z4]", "[z3z4]", "[z3z0]", "[z4z0]",
    "[z4z1]",
];

/// Each equation is a signed sum of three log parameters; entries are
/// (simplex index i, parameter index j, sign) meaning sign·wⱼ of the i-th
/// face simplex (the one omitting vertex i).
const FLATTENING_EQUATIONS: [[(usize, usize, i64); 3]; 10] = [
    [(2, 0, 1), (3, 0, -1), (4, 0, 1)],  // [z0z1]
    [(1, 0, -1), (3, 2, -1), (4, 2, 1)], // [z0z2]
    [(0, 0, 1), (3, 1, -1), (4, 1, 1)],  // [z1z2]
    [(0, 2, 1), (2, 1, 1), (4, 2, 1)],   // [z1z3]
    [(0, 1, 1), (1, 1, -1), (4, 0, 1)],  // [z2z3]
    [(0, 2, 1), (1, 2, -1), (3, 0, -1)], // [z2z4]
    [(0, 0, 1), (1, 0, -1), (2, 0, 1)],  // [z3z4]
    [(1, 2, -1), (2, 2, 1), (4, 1, 1)],  // [z3z0]
    [(1, 1, -1), (2, 1, 1), (3, 1, -1)], // [z4z0]
    [(0, 1, 1), (2, 2, 1), (3, 2, -1)],  // [z4z1]
];

/// Left-hand sides of the ten flattening-condition equations for the five
/// face flattenings of a five-vertex configuration (fs[i] belongs to the
/// simplex omitting vertex i). All ten vanish exactly when the flattenings
/// are compatible along the edges.
pub fn flattening_condition(fs: &[Flattening; 5]) -> [C; 10] {
    let mut out = [C::new(0.0, 0.0); 10];
    for (k, eq) in FLATTENING_EQUATIONS.iter().enumerate() {
        for &(i, j, sign) in eq {
            out[k] += sign as f64 * fs[i].w(j);
        }
    }
    out
}

// ---------------------------------------------------------------------------
// ν̂ and μ, numeric mode
// ---------------------------------------------------------------------------

/// ν̂: (w₀, w₁, w₂) ↦ w₀ ∧ w₁ over exact floating symbols. Terms with a zero
/// entry are the zero of the module and are dropped. Numeric mode is for
/// inspection; equality statements live in the symbolic variants.
pub fn nu_hat(f: &Flattening) -> WedgeSum<ExactC> {
    let a = ExactC::new(f.w0);
    let b = ExactC::new(f.w1);
    if a.is_zero() || b.is_zero() {
        return WedgeSum::zero();
    }
    WedgeSum::wedge(a, b)
}

/// μ on a decorated triple:
/// dH(01) ∧ dH(02) − dH(01) ∧ dH(12) + dH(02) ∧ dH(12).
pub fn mu(t: &[PointP; 3]) -> Result<WedgeSum<ExactC>> {
    let d01 = dh(&t[0], &t[1])?;
    let d02 = dh(&t[0], &t[2])?;
    let d12 = dh(&t[1], &t[2])?;
    let mut w = WedgeSum::zero();
    let mut push = |a: C, b: C, n: i64| {
        let (sa, sb) = (ExactC::new(a), ExactC::new(b));
        if !sa.is_zero() && !sb.is_zero() {
            w.push(sa, sb, n);
        }
    };
    push(d01, d02, 1);
    push(d01, d12, -1);
    push(d02, d12, 1);
    Ok(w)
}

// ---------------------------------------------------------------------------
// ν̂ and μ, symbolic mode
// ---------------------------------------------------------------------------

/// The symbol e_{ij}: the dH value of the edge between vertices i < j of an
/// ambient configuration, treated as an opaque generator.
pub type EdgeSym = (u8, u8);

/// Orders the pair; the dH pairing is symmetric so this loses nothing.
pub fn edge_sym(i: u8, j: u8) -> EdgeSym {
    assert!(i != j, "an edge needs two distinct vertices");
    if i < j {
        (i, j)
    } else {
        (j, i)
    }
}

/// A flattening with symbolic log parameters: each wⱼ is a signed sum of
/// edge symbols, exactly as σ̃ builds it.
#[derive(Clone, Debug)]
pub struct SymbolicFlattening {
    pub w: [Vec<(EdgeSym, i64)>; 3],
}

/// σ̃ on the simplex with (global) vertex labels v = (v₀, v₁, v₂, v₃),
/// keeping the dH values as symbols.
pub fn sigma_tilde_symbolic(v: [u8; 4]) -> SymbolicFlattening {
    let e = |i: usize, j: usize| edge_sym(v[i], v[j]);
    SymbolicFlattening {
        w: [
            vec![(e(0, 3), 1), (e(1, 2), 1), (e(0, 2), -1), (e(1, 3), -1)],
            vec![(e(0, 2), 1), (e(1, 3), 1), (e(0, 1), -1), (e(2, 3), -1)],
            vec![(e(0, 1), 1), (e(2, 3), 1), (e(0, 3), -1), (e(1, 2), -1)],
        ],
    }
}

/// Symbolic ν̂ ∘ σ̃: expands w̃₀ ∧ w̃₁ bilinearly in the free wedge on edge
/// symbols.
pub fn nu_hat_symbolic(v: [u8; 4]) -> WedgeSum<EdgeSym> {
    let sf = sigma_tilde_symbolic(v);
    WedgeSum::wedge_combinations(&sf.w[0], &sf.w[1])
}

/// Symbolic μ on a labeled triple (v₀, v₁, v₂):
/// e₀₁∧e₀₂ − e₀₁∧e₁₂ + e₀₂∧e₁₂.
pub fn mu_symbolic(v: [u8; 3]) -> WedgeSum<EdgeSym> {
    let e01 = edge_sym(v[0], v[1]);
    let e02 = edge_sym(v[0], v[2]);
    let e12 = edge_sym(v[1], v[2]);
    let mut w = WedgeSum::wedge(e01, e02);
    w.push(e01, e12, -1);
    w.push(e02, e12, 1);
    w
}

/// Symbolic μ ∘ ∂: the alternating sum of μ over the four faces of the
/// labeled simplex. Equal — exactly, as free-module elements — to
/// [`nu_hat_symbolic`] of the same simplex: the commuting square.
pub fn mu_boundary_symbolic(v: [u8; 4]) -> WedgeSum<EdgeSym> {
    let mut total = WedgeSum::zero();
    for omit in 0..4 {
        let mut tri = [0u8; 3];
        let mut k = 0;
        for (idx, &label) in v.iter().enumerate() {
            if idx != omit {
                tri[k] = label;
                k += 1;
            }
        }
        let sign = if omit % 2 == 0 { 1 } else { -1 };
        total = total.add(mu_symbolic(tri).scale(sign));
    }
    total
}

// ---------------------------------------------------------------------------
// Extended sums and L̂ evaluation
// ---------------------------------------------------------------------------

/// One flattened-simplex generator with its weight.
#[derive(Clone, Copy, Debug)]
pub struct ExtendedTerm {
    pub f: Flattening,
    pub weight: i64,
}

/// An integer combination of flattened ideal simplices — the data of a class
/// in the extended pre-Bloch group. As with pre-Bloch sums, equality is of
/// normalized term lists; the group relations are consumed through the
/// evaluation homomorphism [`lhat_sum`].
type TermKey = ((i64, i64), (i64, i64));

#[derive(Clone, Debug, Default)]
pub struct ExtendedSum {
    terms: BTreeMap<TermKey, ExtendedTerm>,
}

impl ExtendedSum {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn generator(f: Flattening) -> Self {
        let mut s = Self::zero();
        s.push(f, 1);
        s
    }

    pub fn push(&mut self, f: Flattening, n: i64) {
        if n == 0 {
            return;
        }
        // w₂ = −w₀ − w₁, so two log parameters determine the key.
        let key = (complex_key(f.w0, 1e-12), complex_key(f.w1, 1e-12));
        let entry = self.terms.entry(key).or_insert(ExtendedTerm { f, weight: 0 });
        entry.weight += n;
        if entry.weight == 0 {
            self.terms.remove(&key);
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(mut self, other: &ExtendedSum) -> Self {
        for t in other.terms() {
            self.push(t.f, t.weight);
        }
        self
    }

    pub fn scale(mut self, n: i64) -> Self {
        if n == 0 {
            return Self::zero();
        }
        for t in self.terms.values_mut() {
            t.weight *= n;
        }
        self
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(self) -> Self {
        self.scale(-1)
    }

    pub fn terms(&self) -> impl Iterator<Item = &ExtendedTerm> {
        self.terms.values()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Σ weight · L̂(z, p, q) in ℂ/π²ℤ.
    pub fn evaluate_lhat(&self) -> Result<ModPiSq> {
        lhat_sum(self)
    }

    /// Σ weight · D(z): the Bloch–Wigner volume of the underlying pre-Bloch
    /// class. Termwise this differs from Im L̂ by logarithmic corrections;
    /// the two agree on cycle classes (manifold fundamental classes), which
    /// is the cross-check the pipeline asserts.
    pub fn evaluate_volume(&self) -> Result<f64> {
        let mut v = 0.0;
        for t in self.terms() {
            let (z, _, _) = t.f.zpq()?;
            v += t.weight as f64 * crate::kernel::bloch_wigner_d(z);
        }
        Ok(v)
    }

    /// Forgets the flattenings: the underlying pre-Bloch sum Σ weight·[z].
    pub fn bloch_part(&self) -> Result<crate::prebloch::PreBlochSum> {
        let mut s = crate::prebloch::PreBlochSum::zero();
        for t in self.terms() {
            let (z, _, _) = t.f.zpq()?;
            s.push(z, t.weight);
        }
        Ok(s)
    }
}

impl std::fmt::Display for ExtendedSum {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms().enumerate() {
            crate::prebloch::write_signed_weight(f, t.weight, i == 0)?;
            match t.f.zpq() {
                Ok((z, p, q)) => write!(f, "[{z}; {p}, {q}]")?,
                Err(_) => write!(f, "{}", t.f)?,
            }
        }
        Ok(())
    }
}

/// Σ weight · L̂[zᵢ; pᵢ, qᵢ] ∈ ℂ/π²ℤ — the complex-volume evaluation of an
/// extended pre-Bloch class.
pub fn lhat_sum(s: &ExtendedSum) -> Result<ModPiSq> {
    let mut total = ModPiSq::zero();
    for t in s.terms() {
        let (z, p, q) = t.f.zpq()?;
        let v = lhat(z, p, q)?;
        total += ModPiSq::new(t.weight as f64 * v.value());
    }
    Ok(total)
}
