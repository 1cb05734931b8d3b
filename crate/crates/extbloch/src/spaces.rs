//! Configuration spaces for decorated simplices and the maps between them.
//!
//! Four models, each a left G-set for G = SL₂(ℂ):
//!
//! * [`VecU`] — ℂ² ∖ {0}, decorations by unipotent cosets;
//! * [`PointP`] — (ℂ² ∖ {0})/±, decorations by ±unipotent cosets, stored in
//!   a deterministic sign normal form;
//! * [`SymMat`] — nonzero singular symmetric 2×2 matrices, action g·S = gSgᵀ;
//! * [`PointB`] — the projective line ℂP¹, kept as projective pairs so that
//!   ∞ needs no special cases.
//!
//! The equivariant maps connecting them ([`rho_iso`], [`proj_u_to_p`],
//! [`hopf_u_to_b`], …) and their invariant pairings ([`det_pair`], [`dh`],
//! [`ds`]) are what every higher layer is built from: shapes are cross-ratios
//! of [`PointB`] images, flattenings are signed combinations of [`dh`] values.

use crate::error::{Error, Result};
use crate::kernel::half_log_square;
use crate::sl2::{keeps_sign, leading_coordinate, PSL2, SL2};
use num_complex::Complex64;

type C = Complex64;

/// Relative threshold below which a determinant counts as a coincidence.
pub(crate) const DEGENERACY_RTOL: f64 = 1e-12;

fn czero() -> C {
    C::new(0.0, 0.0)
}

// ---------------------------------------------------------------------------
// The four G-sets
// ---------------------------------------------------------------------------

/// A nonzero column vector in ℂ².
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VecU {
    pub x: C,
    pub y: C,
}

impl VecU {
    pub fn new(x: C, y: C) -> Result<Self> {
        if x == czero() && y == czero() {
            return Err(Error::Degenerate("zero vector is not a decoration".into()));
        }
        Ok(VecU { x, y })
    }

    pub fn max_norm(&self) -> f64 {
        self.x.norm().max(self.y.norm())
    }
}

impl std::fmt::Display for VecU {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// A nonzero vector up to sign.
///
/// Normal form: the leading coordinate — the first one that is nonzero
/// relative to the vector's scale — has Arg ∈ (−π/2, π/2], so two lifts of
/// the same point always store identical coordinates and the raw fields are
/// directly comparable and hashable (after grid rounding). Reading "nonzero"
/// relatively keeps the form stable when an exact zero comes back from a
/// matrix action as 1e−18-sized noise.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PointP {
    x: C,
    y: C,
}

impl PointP {
    pub fn new(x: C, y: C) -> Result<Self> {
        let lead = leading_coordinate(&[x, y]).ok_or_else(|| {
            Error::Degenerate("zero vector is not a decoration".into())
        })?;
        if keeps_sign(lead) {
            Ok(PointP { x, y })
        } else {
            Ok(PointP { x: -x, y: -y })
        }
    }

    pub fn x(&self) -> C {
        self.x
    }

    pub fn y(&self) -> C {
        self.y
    }

    /// The sign-normalized lift.
    pub fn rep(&self) -> VecU {
        VecU { x: self.x, y: self.y }
    }

    pub fn max_norm(&self) -> f64 {
        self.x.norm().max(self.y.norm())
    }

    /// Distance in the quotient: the smaller of the two lift distances.
    pub fn dist(&self, o: &PointP) -> f64 {
        let direct = (self.x - o.x).norm() + (self.y - o.y).norm();
        let flipped = (self.x + o.x).norm() + (self.y + o.y).norm();
        direct.min(flipped)
    }

    pub fn approx_eq(&self, o: &PointP, tol: f64) -> bool {
        self.dist(o) <= tol
    }
}

impl std::fmt::Display for PointP {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "±({}, {})", self.x, self.y)
    }
}

/// A nonzero symmetric 2×2 matrix ((r, t), (t, s)) with determinant 0,
/// i.e. rs = t².
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SymMat {
    r: C,
    t: C,
    s: C,
}

impl SymMat {
    /// Validates rank one: rs − t² must vanish to 1e−9 relative accuracy.
    pub fn new(r: C, t: C, s: C) -> Result<Self> {
        let scale = r.norm().max(t.norm()).max(s.norm());
        if scale == 0.0 {
            return Err(Error::Degenerate("zero symmetric matrix".into()));
        }
        let det = r * s - t * t;
        if det.norm() > 1e-9 * scale * scale {
            return Err(Error::InvalidMatrix(format!(
                "symmetric matrix ((r, t), (t, s)) = (({r}, {t}), ({t}, {s})) has det {det} ≠ 0"
            )));
        }
        Ok(SymMat { r, t, s })
    }

    pub fn r(&self) -> C {
        self.r
    }

    pub fn t(&self) -> C {
        self.t
    }

    pub fn s(&self) -> C {
        self.s
    }

    pub fn max_norm(&self) -> f64 {
        self.r.norm().max(self.t.norm()).max(self.s.norm())
    }
}

impl std::fmt::Display for SymMat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(({}, {}), ({}, {}))", self.r, self.t, self.t, self.s)
    }
}

/// A point of ℂP¹ as a projective pair [n : d]; d = 0 is the point at
/// infinity. All arithmetic on these stays in determinant form, so no map in
/// the crate ever branches on finiteness.
#[derive(Clone, Copy, Debug)]
pub struct PointB {
    pub n: C,
    pub d: C,
}

impl PointB {
    pub fn new(n: C, d: C) -> Result<Self> {
        if n == czero() && d == czero() {
            return Err(Error::Degenerate("[0 : 0] is not a projective point".into()));
        }
        Ok(PointB { n, d })
    }

    pub fn infinity() -> Self {
        PointB { n: C::new(1.0, 0.0), d: czero() }
    }

    pub fn from_complex(z: C) -> Self {
        PointB { n: z, d: C::new(1.0, 0.0) }
    }

    /// The affine coordinate, or `None` at infinity.
    pub fn affine(&self) -> Option<C> {
        if self.d == czero() {
            None
        } else {
            Some(self.n / self.d)
        }
    }

    pub fn max_norm(&self) -> f64 {
        self.n.norm().max(self.d.norm())
    }

    /// Projective coincidence, relative to the coordinate scales.
    pub fn same_point(&self, o: &PointB, rtol: f64) -> bool {
        det_b(self, o).norm() <= rtol * self.max_norm() * o.max_norm()
    }
}

impl std::fmt::Display for PointB {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.affine() {
            Some(z) => write!(f, "{z}"),
            None => write!(f, "∞"),
        }
    }
}

// ---------------------------------------------------------------------------
// Group actions
// ---------------------------------------------------------------------------

/// Left action of SL₂(ℂ). Every configuration model implements this; the
/// ±-quotient models also descend to PSL₂ (act through [`PSL2::rep`]).
pub trait GAct {
    fn act(&self, g: &SL2) -> Self;
}

impl GAct for VecU {
    fn act(&self, g: &SL2) -> Self {
        VecU {
            x: g.a * self.x + g.b * self.y,
            y: g.c * self.x + g.d * self.y,
        }
    }
}

impl GAct for PointP {
    fn act(&self, g: &SL2) -> Self {
        let v = self.rep().act(g);
        PointP::new(v.x, v.y).expect("action of an invertible matrix keeps vectors nonzero")
    }
}

impl GAct for SymMat {
    /// g·S = g S gᵀ, written out entrywise.
    fn act(&self, g: &SL2) -> Self {
        let (a, b, c, d) = (g.a, g.b, g.c, g.d);
        let (r, t, s) = (self.r, self.t, self.s);
        SymMat {
            r: a * a * r + 2.0 * a * b * t + b * b * s,
            t: a * c * r + (a * d + b * c) * t + b * d * s,
            s: c * c * r + 2.0 * c * d * t + d * d * s,
        }
    }
}

impl GAct for PointB {
    fn act(&self, g: &SL2) -> Self {
        PointB {
            n: g.a * self.n + g.b * self.d,
            d: g.c * self.n + g.d * self.d,
        }
    }
}

// ---------------------------------------------------------------------------
// Equivariant maps between the models
// ---------------------------------------------------------------------------

/// ℂ² ∖ {0} → (ℂ² ∖ {0})/±.
pub fn proj_u_to_p(v: &VecU) -> PointP {
    PointP::new(v.x, v.y).expect("input vector is nonzero")
}

/// The Hopf-style map ℂ² ∖ {0} → ℂP¹, (x, y) ↦ [x : y] (affinely x/y).
pub fn hopf_u_to_b(v: &VecU) -> PointB {
    PointB { n: v.x, d: v.y }
}

/// (ℂ² ∖ {0})/± → ℂP¹.
pub fn h_p_to_b(p: &PointP) -> PointB {
    PointB { n: p.x, d: p.y }
}

/// The isomorphism (ℂ² ∖ {0})/± → rank-one symmetric matrices:
/// ±(x, y) ↦ ((x², xy), (xy, y²)).
pub fn rho_iso(p: &PointP) -> SymMat {
    SymMat {
        r: p.x * p.x,
        t: p.x * p.y,
        s: p.y * p.y,
    }
}

/// Inverse of [`rho_iso`]: read the vector back off a rank-one matrix via a
/// principal square root of the better-conditioned diagonal entry.
pub fn rho_inv(a: &SymMat) -> PointP {
    let (x, y) = if a.r.norm() >= a.s.norm() {
        let x = a.r.sqrt();
        (x, a.t / x)
    } else {
        let y = a.s.sqrt();
        (a.t / y, y)
    };
    PointP::new(x, y).expect("rank-one matrix is nonzero")
}

/// Rank-one symmetric matrices → ℂP¹; the point is r/t = t/s, read from the
/// better-conditioned side so exact zeros in r or s cost nothing.
pub fn hbar_sym_to_b(a: &SymMat) -> PointB {
    if a.r.norm() >= a.s.norm() {
        PointB { n: a.r, d: a.t }
    } else {
        PointB { n: a.t, d: a.s }
    }
}

// ---------------------------------------------------------------------------
// Invariant pairings
// ---------------------------------------------------------------------------

/// det(v, w) = v¹w² − v²w¹, the SL₂(ℂ)-invariant pairing on ℂ².
pub fn det_pair(v: &VecU, w: &VecU) -> C {
    v.x * w.y - v.y * w.x
}

fn det_b(z: &PointB, w: &PointB) -> C {
    z.n * w.d - z.d * w.n
}

/// det² on the ±-quotient, where the sign ambiguity cancels.
pub fn det2_point_p(p: &PointP, q: &PointP) -> C {
    let d = det_pair(&p.rep(), &q.rep());
    d * d
}

/// dH(p, q) = ½ Log det(p, q)²; the additive weight every flattening is
/// built from. Errors when the two points span no area (projectively equal).
pub fn dh(p: &PointP, q: &PointP) -> Result<C> {
    dh_u(&p.rep(), &q.rep())
}

/// dH on vectors; sign-insensitive because it sees only det², so it is the
/// same function on either side of the ± quotient.
pub fn dh_u(v: &VecU, w: &VecU) -> Result<C> {
    let d = det_pair(v, w);
    if d.norm() <= DEGENERACY_RTOL * v.max_norm() * w.max_norm() {
        return Err(Error::Degenerate(format!(
            "dH({v}, {w}) undefined: vectors are projectively equal"
        )));
    }
    Ok(half_log_square(d))
}

/// The symmetric-matrix pairing DS(A, B) = r_A s_B − 2 t_A t_B + r_B s_A,
/// which pulls back along [`rho_iso`] to det².
pub fn ds(a: &SymMat, b: &SymMat) -> C {
    a.r * b.s - 2.0 * a.t * b.t + b.r * a.s
}

/// dH on the symmetric-matrix model: ½ Log DS(A, B).
pub fn dh_sym(a: &SymMat, b: &SymMat) -> Result<C> {
    let v = ds(a, b);
    if v.norm() <= DEGENERACY_RTOL * a.max_norm() * b.max_norm() {
        return Err(Error::Degenerate(format!(
            "dH({a}, {b}) undefined: matrices project to the same point"
        )));
    }
    Ok(0.5 * crate::kernel::principal_log(v))
}

// ---------------------------------------------------------------------------
// Cross-ratio and normalization
// ---------------------------------------------------------------------------

/// Cross-ratio in determinant form,
///
/// ```text
///            det(z0, z3) · det(z1, z2)
///   cr = ---------------------------------
///            det(z0, z2) · det(z1, z3)
/// ```
///
/// normalized so that cr(0, ∞, 1, w) = w. Returns 0 when any two of the four
/// points coincide — the caller-visible marker for a flat simplex.
pub fn cross_ratio(z0: &PointB, z1: &PointB, z2: &PointB, z3: &PointB) -> C {
    let pts = [z0, z1, z2, z3];
    for i in 0..4 {
        for j in (i + 1)..4 {
            if pts[i].same_point(pts[j], DEGENERACY_RTOL) {
                return czero();
            }
        }
    }
    (det_b(z0, z3) * det_b(z1, z2)) / (det_b(z0, z2) * det_b(z1, z3))
}

/// Cross-ratio of the ℂP¹ images of four decorated points: the shape
/// parameter of the simplex they span.
pub fn shape_of(p: &[PointP; 4]) -> C {
    cross_ratio(
        &h_p_to_b(&p[0]),
        &h_p_to_b(&p[1]),
        &h_p_to_b(&p[2]),
        &h_p_to_b(&p[3]),
    )
}

/// The unique Möbius transformation with a ↦ ∞, b ↦ 0, c ↦ 1, as an element
/// of PSL₂(ℂ). Errors when the three points are not pairwise distinct.
pub fn mobius_normalizer(a: &PointB, b: &PointB, c: &PointB) -> Result<PSL2> {
    let pairs = [(a, b), (a, c), (b, c)];
    for (u, v) in pairs {
        if u.same_point(v, DEGENERACY_RTOL) {
            return Err(Error::Degenerate(format!(
                "normalizer needs three distinct points, got {u} = {v}"
            )));
        }
    }
    // Row one kills b (so b ↦ 0), row two kills a (so a ↦ ∞); the det(c, ·)
    // prefactors balance the rows so that c lands on 1 exactly.
    let ca = det_b(c, a);
    let cb = det_b(c, b);
    let m = SL2::from_unnormalized(ca * b.d, -ca * b.n, cb * a.d, -cb * a.n)?;
    Ok(PSL2::new(m))
}

/// Moves a decorated simplex to the canonical representative of its G-orbit:
/// the ℂP¹ images of the first three vertices become (∞, 0, 1). Constant on
/// orbits, idempotent, and the PSL₂ sign ambiguity is absorbed by the
/// [`PointP`] normal form. Errors when the first three vertices are not in
/// general position.
pub fn canonical_decorated_simplex(t: &[PointP; 4]) -> Result<[PointP; 4]> {
    let n = mobius_normalizer(&h_p_to_b(&t[0]), &h_p_to_b(&t[1]), &h_p_to_b(&t[2]))?;
    let g = *n.rep();
    Ok([t[0].act(&g), t[1].act(&g), t[2].act(&g), t[3].act(&g)])
}

/// Canonical representative for a decorated triple (a face), same convention.
pub fn canonical_triple(t: &[PointP; 3]) -> Result<[PointP; 3]> {
    let n = mobius_normalizer(&h_p_to_b(&t[0]), &h_p_to_b(&t[1]), &h_p_to_b(&t[2]))?;
    let g = *n.rep();
    Ok([t[0].act(&g), t[1].act(&g), t[2].act(&g)])
}

// ---------------------------------------------------------------------------
// Hashable keys
// ---------------------------------------------------------------------------

/// Rounds to the nearest multiple of `grid` and returns the integer index;
/// values agreeing to well within `grid` map to the same key.
pub fn grid_key(x: f64, grid: f64) -> i64 {
    let k = (x / grid).round();
    // Fold −0.0 and clamp silently; coordinates in canonical position are
    // O(1) so saturation is unreachable in practice.
    if k == 0.0 {
        0
    } else {
        k as i64
    }
}

pub fn complex_key(z: C, grid: f64) -> (i64, i64) {
    (grid_key(z.re, grid), grid_key(z.im, grid))
}

/// Sign-invariant quantized key for a point of ℂ²∖{0} modulo ±1.
///
/// Both sign choices are quantized and the lexicographically smaller pair
/// wins. Normalizing the sign *before* rounding would be unstable whenever
/// the leading coordinate sits on the boundary of the sign rule (purely
/// imaginary leads do occur in arithmetic examples); minimizing after
/// rounding keeps the key stable under perturbations far below `grid`.
pub fn point_p_key(p: &PointP, grid: f64) -> [(i64, i64); 2] {
    let plus = [complex_key(p.x, grid), complex_key(p.y, grid)];
    let minus = [complex_key(-p.x, grid), complex_key(-p.y, grid)];
    plus.min(minus)
}

/// Canonicalize, then grid-round: equal keys ⇔ same G-orbit of decorated
/// simplices (up to the grid resolution).
pub fn decorated_simplex_key(t: &[PointP; 4], grid: f64) -> Result<[(i64, i64); 8]> {
    let c = canonical_decorated_simplex(t)?;
    let mut out = [(0i64, 0i64); 8];
    for (i, p) in c.iter().enumerate() {
        let [kx, ky] = point_p_key(p, grid);
        out[2 * i] = kx;
        out[2 * i + 1] = ky;
    }
    Ok(out)
}

/// Orbit key for a decorated ordered triple.
pub fn decorated_triple_key(t: &[PointP; 3], grid: f64) -> Result<[(i64, i64); 6]> {
    let c = canonical_triple(t)?;
    let mut out = [(0i64, 0i64); 6];
    for (i, p) in c.iter().enumerate() {
        let [kx, ky] = point_p_key(p, grid);
        out[2 * i] = kx;
        out[2 * i + 1] = ky;
    }
    Ok(out)
}
