//! Chains of decorated ideal simplices and the end-to-end invariants:
//! the Bloch invariant, the canonical decorated class, the flattened
//! fundamental class, and the complex volume.
//!
//! A [`DecoratedChain`] is a signed list of decorated ideal 3-simplices —
//! the image of a (relative) fundamental cycle under a developing map with
//! an equivariant decoration. Its ideal points are the projective images of
//! the decorations; no separate position data is carried. The chain lives in
//! the complex that is free on *ordered* tuples modulo the diagonal G-action,
//! so the boundary operator cancels two faces only when they agree as ordered
//! decorated triples up to G; there is no alternation rule. Reorderings of a
//! simplex are therefore not interchangeable, and a triangulation enters as a
//! cycle only with vertex orders compatible with its face identifications.
//!
//! A [`ShapeChain`] bypasses the decoration data and feeds flattened shape
//! parameters [z; p, q] directly into the evaluation homomorphisms; without
//! face data none of the cycle-level checks apply to it.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::extended::{lhat_sum, sigma_tilde_p, ExtendedSum, Flattening};
use crate::kernel::{complex_volume_from_modpisq, lhat, ModPiSq, PI_SQ};
use crate::prebloch::PreBlochSum;
use crate::spaces::{
    canonical_decorated_simplex, canonical_triple, decorated_simplex_key, decorated_triple_key,
    det_pair, shape_of, PointP, DEGENERACY_RTOL,
};
use crate::truncated::{c_squared_check, edge_labeling_from_tuple, CosetTuple};

type C = Complex64;

/// How close a cross-ratio must come to the real axis to be flagged as flat.
const FLAT_RTOL: f64 = 1e-9;

/// Fixed tolerance of the two-formulas volume consistency check
/// (Im of the L̂ sum against the Bloch–Wigner sum).
pub const VOLUME_CONSISTENCY_TOL: f64 = 1e-8;

/// One signed decorated simplex of a chain. The optional cusp tags are
/// diagnostic labels for the ideal points; they play no role in any
/// computation.
#[derive(Clone, Debug)]
pub struct DecoratedTerm {
    pub sign: i64,
    pub simplex: [PointP; 4],
    pub cusps: [Option<String>; 4],
}

/// A signed formal sum of decorated ideal simplices, validated on
/// construction: signs are ±1 and every simplex is nondegenerate (pairwise
/// nonvanishing determinants of the decorations).
#[derive(Clone, Debug, Default)]
pub struct DecoratedChain {
    terms: Vec<DecoratedTerm>,
}

impl DecoratedChain {
    pub fn new(terms: Vec<DecoratedTerm>) -> Result<Self> {
        for (index, term) in terms.iter().enumerate() {
            if term.sign != 1 && term.sign != -1 {
                return Err(Error::Parse(format!(
                    "tetrahedron {index}: sign must be 1 or -1, got {}",
                    term.sign
                )));
            }
            for i in 0..4 {
                for j in (i + 1)..4 {
                    let d = det_pair(&term.simplex[i].rep(), &term.simplex[j].rep());
                    let scale = term.simplex[i].max_norm() * term.simplex[j].max_norm();
                    if d.norm() <= DEGENERACY_RTOL * scale {
                        return Err(Error::Degenerate(format!(
                            "tetrahedron {index}: decorations {i} and {j} have vanishing \
                             determinant"
                        )));
                    }
                }
            }
        }
        Ok(DecoratedChain { terms })
    }

    pub fn terms(&self) -> &[DecoratedTerm] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The same chain with every simplex moved to the canonical
    /// representative of its G-orbit. All invariants are unchanged.
    pub fn canonicalized(&self) -> Result<DecoratedChain> {
        let terms = self
            .terms
            .iter()
            .map(|t| {
                Ok(DecoratedTerm {
                    sign: t.sign,
                    simplex: canonical_decorated_simplex(&t.simplex)?,
                    cusps: t.cusps.clone(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        DecoratedChain::new(terms)
    }

    /// The chain with all signs flipped — the orientation reversal.
    pub fn reversed(&self) -> DecoratedChain {
        DecoratedChain {
            terms: self
                .terms
                .iter()
                .map(|t| DecoratedTerm {
                    sign: -t.sign,
                    simplex: t.simplex,
                    cusps: t.cusps.clone(),
                })
                .collect(),
        }
    }
}

/// One flattened shape parameter [z; p, q] with a sign.
#[derive(Clone, Debug)]
pub struct ShapeTerm {
    pub sign: i64,
    pub z: C,
    pub p: i64,
    pub q: i64,
}

/// A signed formal sum of flattened shapes, validated on construction:
/// signs are ±1 and every z stays away from 0 and 1.
#[derive(Clone, Debug, Default)]
pub struct ShapeChain {
    terms: Vec<ShapeTerm>,
}

impl ShapeChain {
    pub fn new(terms: Vec<ShapeTerm>) -> Result<Self> {
        for (index, term) in terms.iter().enumerate() {
            if term.sign != 1 && term.sign != -1 {
                return Err(Error::Parse(format!(
                    "tetrahedron {index}: sign must be 1 or -1, got {}",
                    term.sign
                )));
            }
            let z = term.z;
            if !z.is_finite()
                || z.norm() <= DEGENERACY_RTOL
                || (z - C::new(1.0, 0.0)).norm() <= DEGENERACY_RTOL
            {
                return Err(Error::Degenerate(format!(
                    "tetrahedron {index}: shape {z} is degenerate"
                )));
            }
        }
        Ok(ShapeChain { terms })
    }

    pub fn terms(&self) -> &[ShapeTerm] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The flattenings [z; p, q] of the terms, with signs.
    pub fn flattenings(&self) -> Result<Vec<(i64, Flattening)>> {
        self.terms
            .iter()
            .map(|t| Ok((t.sign, crate::extended::flattening_from_zpq(t.z, t.p, t.q)?)))
            .collect()
    }
}

/// The boundary of a decorated chain: each term contributes its four ordered
/// faces with alternating signs, every face is moved to the canonical
/// representative of its G-orbit, and faces with equal canonical forms merge.
/// The survivors (nonzero total weight) come back with a canonical
/// representative triple each; an empty result says the chain is a cycle
/// (relative to the ideal points).
///
/// Matching is as *ordered* triples: the underlying complex imposes no
/// alternation, so a face and a reordering of it are different generators.
/// `grid` is the resolution at which canonical coordinates are compared.
pub fn boundary(c: &DecoratedChain, grid: f64) -> Result<Vec<(i64, [PointP; 3])>> {
    type Acc = BTreeMap<[(i64, i64); 6], (i64, [PointP; 3])>;
    let mut acc = Acc::new();
    for term in c.terms() {
        for omit in 0..4 {
            let mut face: Vec<PointP> = Vec::with_capacity(3);
            for (k, v) in term.simplex.iter().enumerate() {
                if k != omit {
                    face.push(*v);
                }
            }
            let face: [PointP; 3] = [face[0], face[1], face[2]];
            let weight = term.sign * if omit % 2 == 0 { 1 } else { -1 };
            let key = decorated_triple_key(&face, grid)?;
            let entry = acc
                .entry(key)
                .or_insert_with(|| (0, canonical_triple(&face).expect("key existed")));
            entry.0 += weight;
        }
    }
    Ok(acc.into_values().filter(|(w, _)| *w != 0).collect())
}

/// Total absolute weight of the boundary survivors; zero exactly when the
/// chain is a cycle.
pub fn cycle_residual(c: &DecoratedChain, grid: f64) -> Result<i64> {
    Ok(boundary(c, grid)?.iter().map(|(w, _)| w.abs()).sum())
}

/// The Bloch invariant of the chain: the signed sum of cross-ratio symbols
/// of the ideal vertices. Returns the pre-Bloch sum together with the
/// indices of flat simplices (real cross-ratio), which are kept but worth a
/// warning. A numerically degenerate cross-ratio is a hard error naming the
/// simplex.
pub fn beta_b(c: &DecoratedChain) -> Result<(PreBlochSum, Vec<usize>)> {
    let mut sum = PreBlochSum::zero();
    let mut flat = Vec::new();
    for (index, term) in c.terms().iter().enumerate() {
        let z = shape_of(&term.simplex);
        if !z.is_finite()
            || z.norm() <= DEGENERACY_RTOL
            || (z - C::new(1.0, 0.0)).norm() <= DEGENERACY_RTOL
        {
            return Err(Error::Degenerate(format!(
                "tetrahedron {index}: cross-ratio {z} is degenerate"
            )));
        }
        if z.im.abs() <= FLAT_RTOL * (1.0 + z.norm()) {
            flat.push(index);
        }
        sum.push(z, term.sign);
    }
    Ok((sum, flat))
}

/// The decorated class of the chain: every term moved to the canonical
/// representative of its G-orbit, merged as a signed multiset. Two chains
/// related by a global G element (or by sign flips of decorations) produce
/// identical output.
pub fn beta_p(c: &DecoratedChain, grid: f64) -> Result<Vec<(i64, [PointP; 4])>> {
    type Acc = BTreeMap<[(i64, i64); 8], (i64, [PointP; 4])>;
    let mut acc = Acc::new();
    for term in c.terms() {
        let key = decorated_simplex_key(&term.simplex, grid)?;
        let entry = acc.entry(key).or_insert_with(|| {
            (
                0,
                canonical_decorated_simplex(&term.simplex).expect("key existed"),
            )
        });
        entry.0 += term.sign;
    }
    Ok(acc
        .into_values()
        .filter(|(w, _)| *w != 0)
        .collect())
}

/// The flattened fundamental class: the signed sum of σ̃ over the terms.
/// G-invariant because σ̃ is.
pub fn psl_fundamental_class(c: &DecoratedChain) -> Result<ExtendedSum> {
    let mut sum = ExtendedSum::zero();
    for (index, term) in c.terms().iter().enumerate() {
        let f = sigma_tilde_p(&term.simplex).map_err(|e| {
            Error::Degenerate(format!("tetrahedron {index}: {e}"))
        })?;
        sum.push(f, term.sign);
    }
    Ok(sum)
}

/// The complex volume i(Vol + i CS) of a decorated chain, via the L̂ sum of
/// its flattened fundamental class: returns (Vol, CS) with CS ∈ [0, π²).
///
/// Also evaluates the Bloch–Wigner sum of the cross-ratios and demands that
/// the two volume formulas agree within [`VOLUME_CONSISTENCY_TOL`]. That
/// agreement is a theorem for cycles; for a chain that is not a cycle the
/// L̂-correction terms need not cancel and the check typically fails, which
/// is reported as an inconsistency error.
pub fn complex_volume(c: &DecoratedChain) -> Result<(f64, f64)> {
    let class = psl_fundamental_class(c)?;
    let total = lhat_sum(&class)?;
    let (vol, cs) = complex_volume_from_modpisq(total);
    let (bloch, _) = beta_b(c)?;
    let bw = bloch.evaluate_volume();
    if (vol - bw).abs() > VOLUME_CONSISTENCY_TOL {
        return Err(Error::Inconsistent(format!(
            "volume {vol} from the L̂ sum disagrees with the Bloch–Wigner sum {bw}; \
             the chain is probably not a cycle"
        )));
    }
    Ok((vol, cs))
}

/// The complex volume of a shape chain: the L̂ sum of the given flattened
/// parameters, split as i(Vol + i CS). No cross-check is possible without
/// face data.
pub fn complex_volume_of_shapes(s: &ShapeChain) -> Result<(f64, f64)> {
    let mut total = ModPiSq::zero();
    for (index, term) in s.terms().iter().enumerate() {
        let v = lhat(term.z, term.p, term.q).map_err(|e| {
            Error::Degenerate(format!("tetrahedron {index}: {e}"))
        })?;
        let weighted = ModPiSq::new(C::new(term.sign as f64, 0.0) * v.value());
        total += weighted;
    }
    Ok(complex_volume_from_modpisq(total))
}

// ---------------------------------------------------------------------------
// Verification report
// ---------------------------------------------------------------------------

/// Outcome of one verification step.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub status: CheckStatus,
    pub detail: String,
}

impl Check {
    fn pass(name: &str, detail: String) -> Self {
        Check {
            name: name.into(),
            status: CheckStatus::Pass,
            detail,
        }
    }

    fn fail(name: &str, detail: String) -> Self {
        Check {
            name: name.into(),
            status: CheckStatus::Fail,
            detail,
        }
    }

    fn skipped(name: &str, detail: String) -> Self {
        Check {
            name: name.into(),
            status: CheckStatus::Skipped,
            detail,
        }
    }
}

fn cx(z: C) -> [f64; 2] {
    [z.re, z.im]
}

/// One cross-ratio symbol with its weight.
#[derive(Clone, Debug, Serialize)]
pub struct BlochTermOut {
    pub z: [f64; 2],
    pub weight: i64,
}

/// One canonical decorated simplex with its weight.
#[derive(Clone, Debug, Serialize)]
pub struct CanonicalSimplexOut {
    pub weight: i64,
    pub vertices: [[[f64; 2]; 2]; 4],
}

/// One flattening with its weight, both as log-parameters and as [z; p, q].
#[derive(Clone, Debug, Serialize)]
pub struct FlatteningOut {
    pub weight: i64,
    pub w: [[f64; 2]; 3],
    pub z: [f64; 2],
    pub p: i64,
    pub q: i64,
}

/// Everything the pipeline knows about one input chain: the invariants and
/// the verification checklist. Failures are entries, not errors.
#[derive(Clone, Debug, Serialize)]
pub struct InvariantReport {
    pub bloch_terms: Vec<BlochTermOut>,
    pub beta_p_canonical: Vec<CanonicalSimplexOut>,
    pub flattenings: Vec<FlatteningOut>,
    pub volume: f64,
    pub cs: f64,
    pub cycle_residual: i64,
    pub flat_simplices: Vec<usize>,
    pub checks: Vec<Check>,
    pub passed: bool,
}

impl InvariantReport {
    fn finish(mut self) -> Self {
        self.passed = self.checks.iter().all(|c| c.status != CheckStatus::Fail);
        self
    }

    /// Plain-text rendering, one line per fact.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("volume         {:.15}\n", self.volume));
        // The representative lives in [0, π²); when the balanced one is
        // small, show it too — "just under π²" means "≡ 0".
        if self.cs > PI_SQ / 2.0 && PI_SQ - self.cs < 1e-3 {
            out.push_str(&format!(
                "cs (mod π²)    {:.15} (≡ {:+.3e})\n",
                self.cs,
                self.cs - PI_SQ
            ));
        } else {
            out.push_str(&format!("cs (mod π²)    {:.15}\n", self.cs));
        }
        out.push_str(&format!("cycle residual {}\n", self.cycle_residual));
        if !self.flat_simplices.is_empty() {
            out.push_str(&format!(
                "flat simplices {:?} (real cross-ratio, kept)\n",
                self.flat_simplices
            ));
        }
        out.push_str("bloch terms    ");
        if self.bloch_terms.is_empty() {
            out.push_str("(none)");
        }
        for (i, t) in self.bloch_terms.iter().enumerate() {
            if i > 0 {
                out.push_str(" + ");
            }
            out.push_str(&format!("{}·[{:.12}{:+.12}i]", t.weight, t.z[0], t.z[1]));
        }
        out.push('\n');
        out.push_str("flattenings    ");
        if self.flattenings.is_empty() {
            out.push_str("(none)");
        }
        for (i, f) in self.flattenings.iter().enumerate() {
            if i > 0 {
                out.push_str(" + ");
            }
            out.push_str(&format!(
                "{}·[{:.12}{:+.12}i; {}, {}]",
                f.weight, f.z[0], f.z[1], f.p, f.q
            ));
        }
        out.push('\n');
        out.push_str(&format!(
            "beta_P terms   {}\n",
            self.beta_p_canonical.len()
        ));
        for c in &self.checks {
            let mark = match c.status {
                CheckStatus::Pass => "PASS",
                CheckStatus::Fail => "FAIL",
                CheckStatus::Skipped => "SKIP",
            };
            out.push_str(&format!("{mark} {:<24} {}\n", c.name, c.detail));
        }
        out.push_str(&format!(
            "overall        {}\n",
            if self.passed { "PASS" } else { "FAIL" }
        ));
        out
    }
}

fn flattening_out(weight: i64, f: &Flattening) -> FlatteningOut {
    let (z, p, q) = f.zpq().expect("constructed flattenings recover their shape");
    FlatteningOut {
        weight,
        w: [cx(f.w(0)), cx(f.w(1)), cx(f.w(2))],
        z: cx(z),
        p,
        q,
    }
}

/// Runs the whole verification suite on a decorated chain and aggregates
/// the invariants into a report. `tol` controls the numerical checks
/// (default 1e-9 from the command line); `symbolic` additionally runs the
/// exact wedge-identity suite. Never errors: every failure, including an
/// unexpected degeneracy in a sub-computation, becomes a failed check.
pub fn verify(c: &DecoratedChain, tol: f64, symbolic: bool) -> InvariantReport {
    let mut checks = Vec::new();

    // Nondegeneracy is a constructor invariant of DecoratedChain, so this
    // re-check is informational.
    checks.push(Check::pass(
        "nondegenerate",
        format!("{} simplices, pairwise determinants nonzero", c.len()),
    ));

    // Cycle check.
    let cycle_residual = match boundary(c, tol) {
        Ok(faces) => {
            let residual: i64 = faces.iter().map(|(w, _)| w.abs()).sum();
            if residual == 0 {
                checks.push(Check::pass(
                    "cycle",
                    "all canonical faces cancel".into(),
                ));
            } else {
                checks.push(Check::fail(
                    "cycle",
                    format!("{residual} uncancelled canonical faces"),
                ));
            }
            residual
        }
        Err(e) => {
            checks.push(Check::fail("cycle", format!("boundary failed: {e}")));
            -1
        }
    };

    // Bloch terms (and flat-simplex warnings).
    let (bloch, flat_simplices) = match beta_b(c) {
        Ok(v) => v,
        Err(e) => {
            checks.push(Check::fail("bloch_terms", format!("{e}")));
            (PreBlochSum::zero(), Vec::new())
        }
    };

    // Flattenings, per simplex.
    let mut flattenings = Vec::new();
    let mut flattening_failures = Vec::new();
    for (index, term) in c.terms().iter().enumerate() {
        match sigma_tilde_p(&term.simplex) {
            Ok(f) => flattenings.push((term.sign, f)),
            Err(e) => flattening_failures.push(format!("tetrahedron {index}: {e}")),
        }
    }
    if flattening_failures.is_empty() {
        checks.push(Check::pass(
            "flattenings",
            format!(
                "{} log-parameter triples validated (sum zero, shapes recovered)",
                flattenings.len()
            ),
        ));
    } else {
        checks.push(Check::fail("flattenings", flattening_failures.join("; ")));
    }

    // Truncated-simplex edge labelings, per simplex.
    let mut labeling_failures = Vec::new();
    for (index, term) in c.terms().iter().enumerate() {
        let result = CosetTuple::new(term.simplex.to_vec())
            .and_then(|t| edge_labeling_from_tuple(&t))
            .and_then(|e| e.validate(tol));
        if let Err(e) = result {
            labeling_failures.push(format!("tetrahedron {index}: {e}"));
        }
    }
    if labeling_failures.is_empty() {
        checks.push(Check::pass(
            "edge_labelings",
            format!("{} labelings validated (memberships, face products)", c.len()),
        ));
    } else {
        checks.push(Check::fail("edge_labelings", labeling_failures.join("; ")));
    }

    // Determinant identities, per simplex.
    let mut csq_failures = Vec::new();
    for (index, term) in c.terms().iter().enumerate() {
        let result = CosetTuple::new(term.simplex.to_vec()).and_then(|t| c_squared_check(&t));
        match result {
            Ok(res) => {
                let worst = res.iter().map(|r| r.norm()).fold(0.0, f64::max);
                if worst > tol {
                    csq_failures.push(format!("tetrahedron {index}: residual {worst:.3e}"));
                }
            }
            Err(e) => csq_failures.push(format!("tetrahedron {index}: {e}")),
        }
    }
    if csq_failures.is_empty() {
        checks.push(Check::pass(
            "c_squared",
            "c² = det² and squared cross-ratio identities".into(),
        ));
    } else {
        checks.push(Check::fail("c_squared", csq_failures.join("; ")));
    }

    // Complex volume and the two-formulas consistency.
    let mut volume = 0.0;
    let mut cs = 0.0;
    let mut lhat_total = ModPiSq::zero();
    let mut lhat_failures = Vec::new();
    for (sign, f) in &flattenings {
        let (z, p, q) = f.zpq().expect("constructed flattenings recover their shape");
        match lhat(z, p, q) {
            Ok(v) => {
                lhat_total += ModPiSq::new(C::new(*sign as f64, 0.0) * v.value());
            }
            Err(e) => lhat_failures.push(format!("{e}")),
        }
    }
    if lhat_failures.is_empty() {
        let (v, c_) = complex_volume_from_modpisq(lhat_total);
        volume = v;
        cs = c_;
        let bw = bloch.evaluate_volume();
        if (volume - bw).abs() <= VOLUME_CONSISTENCY_TOL {
            checks.push(Check::pass(
                "volume_consistency",
                format!("Im L̂ = {volume:.12}, Bloch–Wigner = {bw:.12}"),
            ));
        } else {
            checks.push(Check::fail(
                "volume_consistency",
                format!(
                    "Im L̂ = {volume:.12} but Bloch–Wigner = {bw:.12} \
                     (expected for non-cycles)"
                ),
            ));
        }
    } else {
        checks.push(Check::fail("volume_consistency", lhat_failures.join("; ")));
    }

    // Symbolic wedge-identity suite (exact integer arithmetic), on request.
    if symbolic {
        let lhs = crate::extended::nu_hat_symbolic([0, 1, 2, 3]);
        let rhs = crate::extended::mu_boundary_symbolic([0, 1, 2, 3]);
        if (lhs - rhs).is_zero() {
            checks.push(Check::pass(
                "symbolic_wedge",
                "ν̂∘σ̃ = μ∘∂ cancels exactly".into(),
            ));
        } else {
            checks.push(Check::fail(
                "symbolic_wedge",
                "ν̂∘σ̃ − μ∘∂ has surviving terms".into(),
            ));
        }
    }

    let beta_p_canonical = beta_p(c, tol)
        .map(|v| {
            v.into_iter()
                .map(|(weight, t)| CanonicalSimplexOut {
                    weight,
                    vertices: [
                        [cx(t[0].x()), cx(t[0].y())],
                        [cx(t[1].x()), cx(t[1].y())],
                        [cx(t[2].x()), cx(t[2].y())],
                        [cx(t[3].x()), cx(t[3].y())],
                    ],
                })
                .collect()
        })
        .unwrap_or_default();

    InvariantReport {
        bloch_terms: bloch
            .terms()
            .map(|t| BlochTermOut {
                z: cx(t.z),
                weight: t.weight,
            })
            .collect(),
        beta_p_canonical,
        flattenings: flattenings
            .iter()
            .map(|(s, f)| flattening_out(*s, f))
            .collect(),
        volume,
        cs,
        cycle_residual,
        flat_simplices,
        checks,
        passed: false,
    }
    .finish()
}

/// The report for a shape chain: the L̂ sum and the per-term flattenings.
/// Cycle-level checks need face data, so they are reported as skipped.
pub fn verify_shapes(s: &ShapeChain, symbolic: bool) -> InvariantReport {
    let mut checks = Vec::new();
    let mut flattenings = Vec::new();
    let mut bloch = PreBlochSum::zero();
    let mut failures = Vec::new();
    for (index, term) in s.terms().iter().enumerate() {
        match crate::extended::flattening_from_zpq(term.z, term.p, term.q) {
            Ok(f) => {
                flattenings.push((term.sign, f));
                bloch.push(term.z, term.sign);
            }
            Err(e) => failures.push(format!("tetrahedron {index}: {e}")),
        }
    }
    if failures.is_empty() {
        checks.push(Check::pass(
            "flattenings",
            format!("{} shape parameters flattened", flattenings.len()),
        ));
    } else {
        checks.push(Check::fail("flattenings", failures.join("; ")));
    }
    checks.push(Check::skipped(
        "cycle",
        "shape input carries no face data".into(),
    ));
    checks.push(Check::skipped(
        "volume_consistency",
        "Im L̂ = Bloch–Wigner holds on cycle classes only; shape input \
         carries no cycle structure"
            .into(),
    ));

    let mut total = ModPiSq::zero();
    for (sign, f) in &flattenings {
        let (z, p, q) = f.zpq().expect("constructed flattenings recover their shape");
        if let Ok(v) = lhat(z, p, q) {
            total += ModPiSq::new(C::new(*sign as f64, 0.0) * v.value());
        }
    }
    let (volume, cs) = complex_volume_from_modpisq(total);

    if symbolic {
        let lhs = crate::extended::nu_hat_symbolic([0, 1, 2, 3]);
        let rhs = crate::extended::mu_boundary_symbolic([0, 1, 2, 3]);
        if (lhs - rhs).is_zero() {
            checks.push(Check::pass(
                "symbolic_wedge",
                "ν̂∘σ̃ = μ∘∂ cancels exactly".into(),
            ));
        } else {
            checks.push(Check::fail(
                "symbolic_wedge",
                "ν̂∘σ̃ − μ∘∂ has surviving terms".into(),
            ));
        }
    }

    InvariantReport {
        bloch_terms: bloch
            .terms()
            .map(|t| BlochTermOut {
                z: cx(t.z),
                weight: t.weight,
            })
            .collect(),
        beta_p_canonical: Vec::new(),
        flattenings: flattenings
            .iter()
            .map(|(s, f)| flattening_out(*s, f))
            .collect(),
        volume,
        cs,
        cycle_residual: 0,
        flat_simplices: Vec::new(),
        checks,
        passed: false,
    }
    .finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling;
    use crate::spaces::GAct;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn term(sign: i64, simplex: [PointP; 4]) -> DecoratedTerm {
        DecoratedTerm {
            sign,
            simplex,
            cusps: [None, None, None, None],
        }
    }

    fn random_simplex(rng: &mut ChaCha8Rng) -> [PointP; 4] {
        sampling::generic_point_tuple::<_, 4>(rng)
    }

    #[test]
    fn empty_chain_is_trivial() {
        let c = DecoratedChain::new(Vec::new()).unwrap();
        assert_eq!(cycle_residual(&c, 1e-9).unwrap(), 0);
        let (b, flat) = beta_b(&c).unwrap();
        assert!(b.is_empty() && flat.is_empty());
        assert!(beta_p(&c, 1e-9).unwrap().is_empty());
        assert_eq!(complex_volume(&c).unwrap(), (0.0, 0.0));
    }

    #[test]
    fn degenerate_simplex_is_rejected_with_index() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x8801);
        let good = random_simplex(&mut rng);
        let mut bad = good;
        bad[2] = bad[1];
        let err = DecoratedChain::new(vec![term(1, good), term(-1, bad)]).unwrap_err();
        assert!(err.to_string().contains("tetrahedron 1"), "{err}");
    }

    #[test]
    fn single_simplex_has_four_faces() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x8802);
        let c = DecoratedChain::new(vec![term(1, random_simplex(&mut rng))]).unwrap();
        let b = boundary(&c, 1e-9).unwrap();
        assert_eq!(b.len(), 4);
        assert_eq!(cycle_residual(&c, 1e-9).unwrap(), 4);
    }

    #[test]
    fn chain_minus_itself_cancels() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x8803);
        let t = random_simplex(&mut rng);
        // T − T, with the subtracted copy moved by a group element: the
        // canonical faces still cancel exactly.
        let g = sampling::unit_scale_sl2(&mut rng);
        let moved = [t[0].act(&g), t[1].act(&g), t[2].act(&g), t[3].act(&g)];
        let c = DecoratedChain::new(vec![term(1, t), term(-1, moved)]).unwrap();
        assert_eq!(cycle_residual(&c, 1e-9).unwrap(), 0);
        let (vol, cs) = complex_volume(&c).unwrap();
        assert!(vol.abs() <= 1e-12);
        assert!(cs.min(crate::kernel::PI_SQ - cs) <= 1e-12);
    }

    #[test]
    fn reordered_face_does_not_cancel() {
        // The complex is free on ordered tuples: transposing two vertices of
        // the subtracted copy breaks the cancellation.
        let mut rng = ChaCha8Rng::seed_from_u64(0x8804);
        let t = random_simplex(&mut rng);
        let swapped = [t[0], t[1], t[3], t[2]];
        let c = DecoratedChain::new(vec![term(1, t), term(-1, swapped)]).unwrap();
        assert!(cycle_residual(&c, 1e-9).unwrap() > 0);
    }

    #[test]
    fn beta_b_collects_cross_ratios() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x8805);
        let t = random_simplex(&mut rng);
        let z = shape_of(&t);
        let c = DecoratedChain::new(vec![term(1, t)]).unwrap();
        let (b, flat) = beta_b(&c).unwrap();
        assert_eq!(b.len(), 1);
        assert!(flat.is_empty());
        let got = b.terms().next().unwrap();
        assert!((got.z - z).norm() <= 1e-12);
        assert_eq!(got.weight, 1);
    }

    #[test]
    fn flat_simplex_is_flagged_not_dropped() {
        // Decorations with real coordinates give a real cross-ratio.
        let p = |x: f64, y: f64| PointP::new(C::new(x, 0.0), C::new(y, 0.0)).unwrap();
        let t = [p(1.0, 0.0), p(0.0, 1.0), p(1.0, 1.0), p(2.0, 1.0)];
        let c = DecoratedChain::new(vec![term(1, t)]).unwrap();
        let (b, flat) = beta_b(&c).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(flat, vec![0]);
    }

    #[test]
    fn beta_p_is_g_invariant_and_deterministic() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x8806);
        for _ in 0..10 {
            let t0 = random_simplex(&mut rng);
            let t1 = random_simplex(&mut rng);
            let g = sampling::unit_scale_sl2(&mut rng);
            let c = DecoratedChain::new(vec![term(1, t0), term(-1, t1)]).unwrap();
            let moved = DecoratedChain::new(
                c.terms()
                    .iter()
                    .map(|t| {
                        term(
                            t.sign,
                            [
                                t.simplex[0].act(&g),
                                t.simplex[1].act(&g),
                                t.simplex[2].act(&g),
                                t.simplex[3].act(&g),
                            ],
                        )
                    })
                    .collect(),
            )
            .unwrap();
            let a = beta_p(&c, 1e-9).unwrap();
            let b = beta_p(&moved, 1e-9).unwrap();
            assert_eq!(a.len(), b.len());
            for ((wa, ta), (wb, tb)) in a.iter().zip(&b) {
                assert_eq!(wa, wb);
                for (p, q) in ta.iter().zip(tb) {
                    assert!(p.dist(q) <= 1e-8 * (1.0 + q.max_norm()));
                }
            }
        }
    }

    #[test]
    fn beta_p_keeps_canonical_simplices_fixed() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x8807);
        let t = canonical_decorated_simplex(&random_simplex(&mut rng)).unwrap();
        let c = DecoratedChain::new(vec![term(1, t)]).unwrap();
        let out = beta_p(&c, 1e-9).unwrap();
        assert_eq!(out.len(), 1);
        for (p, q) in out[0].1.iter().zip(&t) {
            assert!(p.dist(q) <= 1e-10 * (1.0 + q.max_norm()));
        }
    }

    #[test]
    fn fundamental_class_is_g_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x8808);
        for _ in 0..10 {
            let t = random_simplex(&mut rng);
            let g = sampling::unit_scale_sl2(&mut rng);
            let moved = [t[0].act(&g), t[1].act(&g), t[2].act(&g), t[3].act(&g)];
            let a = psl_fundamental_class(&DecoratedChain::new(vec![term(1, t)]).unwrap())
                .unwrap();
            let b = psl_fundamental_class(&DecoratedChain::new(vec![term(1, moved)]).unwrap())
                .unwrap();
            assert_eq!(a.len(), 1);
            let fa = a.terms().next().unwrap();
            let fb = b.terms().next().unwrap();
            assert!(fa.f.approx_eq(&fb.f, 1e-9));
            assert_eq!(fa.weight, fb.weight);
        }
    }

    #[test]
    fn orientation_reversal_negates_both_invariants() {
        // A cycle plus its reversal: everything cancels to (0, 0).
        let chain = crate::figure_eight::figure_eight_chain(C::new(1.0, 0.0)).unwrap();
        let mut doubled = chain.terms().to_vec();
        doubled.extend(chain.reversed().terms().iter().cloned());
        let c = DecoratedChain::new(doubled).unwrap();
        assert_eq!(cycle_residual(&c, 1e-9).unwrap(), 0);
        let (vol, cs) = complex_volume(&c).unwrap();
        assert!(vol.abs() <= 1e-10, "vol {vol}");
        assert!(cs.min(crate::kernel::PI_SQ - cs) <= 1e-10, "cs {cs}");
    }

    #[test]
    fn shape_chain_rejects_degenerate_z() {
        let bad = ShapeChain::new(vec![ShapeTerm {
            sign: 1,
            z: C::new(1.0, 0.0),
            p: 0,
            q: 0,
        }]);
        assert!(bad.is_err());
        let bad_sign = ShapeChain::new(vec![ShapeTerm {
            sign: 2,
            z: C::new(0.5, 0.5),
            p: 0,
            q: 0,
        }]);
        assert!(bad_sign.is_err());
    }

    #[test]
    fn shape_volume_matches_direct_lhat() {
        let z = C::new(0.5, 3.0f64.sqrt() / 2.0);
        let s = ShapeChain::new(vec![
            ShapeTerm { sign: 1, z, p: -1, q: 1 },
            ShapeTerm { sign: -1, z: z.conj(), p: 1, q: -1 },
        ])
        .unwrap();
        let (vol, cs) = complex_volume_of_shapes(&s).unwrap();
        let direct = {
            let a = lhat(z, -1, 1).unwrap();
            let b = lhat(z.conj(), 1, -1).unwrap();
            a - b
        };
        let (dv, dc) = complex_volume_from_modpisq(direct);
        assert!((vol - dv).abs() <= 1e-12);
        assert!((cs - dc).abs() <= 1e-12);
    }

    #[test]
    fn verify_reports_failures_for_non_cycles() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x8809);
        let c = DecoratedChain::new(vec![term(1, random_simplex(&mut rng))]).unwrap();
        let report = verify(&c, 1e-9, true);
        assert!(!report.passed);
        assert!(report
            .checks
            .iter()
            .any(|ch| ch.name == "cycle" && ch.status == CheckStatus::Fail));
        // The per-simplex structural checks still pass.
        for name in ["flattenings", "edge_labelings", "c_squared", "symbolic_wedge"] {
            assert!(
                report
                    .checks
                    .iter()
                    .any(|ch| ch.name == name && ch.status == CheckStatus::Pass),
                "{name}"
            );
        }
    }

    #[test]
    fn report_serializes_to_json() {
        let c = DecoratedChain::new(Vec::new()).unwrap();
        let report = verify(&c, 1e-9, false);
        let text = serde_json::to_string(&report).unwrap();
        assert!(text.contains("\"cycle_residual\":0"));
    }
}
