//! Truncated simplices: coset tuples, edge labelings, and the explicit
//! dictionary between them.
//!
//! Cutting the corners off an ideal n-simplex leaves a small triangle at each
//! ideal vertex and shortens each original edge. The resulting polytope has
//! two kinds of edges: the *long* edges (what remains of the original edges)
//! and the *short* edges (the sides of the corner triangles). A tuple of
//! decorated vertices (v₀, …, vₙ) in X_(P), pairwise in general position,
//! labels all of these edges with group elements, as follows.
//!
//! For each ordered pair (i, j) the corner of the truncated simplex at vertex
//! i facing vertex j carries the unique matrix whose first column is vᵢ and
//! whose second column is a multiple of vⱼ:
//!
//! ```text
//!   Gᵢⱼ = ((aᵢ, aⱼ/δᵢⱼ), (cᵢ, cⱼ/δᵢⱼ)),   δᵢⱼ = aᵢcⱼ − aⱼcᵢ,
//! ```
//!
//! with vᵢ = (aᵢ, cᵢ). The edge label between two corners is
//! (start corner)⁻¹ · (end corner), so every label is determined by the
//! corner matrices and every face product telescopes to the identity:
//!
//! * long edge (i, j): g_ij = Gᵢⱼ⁻¹Gⱼᵢ = ((0, −1/δᵢⱼ), (δᵢⱼ, 0)),
//!   a counterdiagonal matrix;
//! * short edge at vertex i from the corner facing j to the corner facing k:
//!   α^i_jk = Gᵢⱼ⁻¹Gᵢₖ = ((1, δₖⱼ/(δᵢⱼδᵢₖ)), (0, 1)), upper unitriangular.
//!
//! Everything is taken up to sign (the vᵢ live in a ±-quotient and the
//! matrices act projectively), so labels are [`PSL2`] values. The labeling
//! determines the tuple up to the diagonal G-action, and
//! [`tuple_from_edge_labeling`] makes that inverse direction explicit by
//! reconstructing a canonical representative.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::sl2::{PSL2, SL2};
use crate::spaces::{
    det2_point_p, det_pair, h_p_to_b, mobius_normalizer, shape_of, GAct, PointP, DEGENERACY_RTOL,
};

type C = Complex64;

fn cone() -> C {
    C::new(1.0, 0.0)
}

fn czero() -> C {
    C::new(0.0, 0.0)
}

/// A tuple (v₀, …, vₙ) of decorated vertices in X_(P), pairwise in general
/// position: det(vᵢ, vⱼ) ≠ 0 for all i ≠ j, equivalently the projective
/// images are pairwise distinct. This is exactly the condition under which
/// the corner matrices Gᵢⱼ exist.
#[derive(Clone, Debug)]
pub struct CosetTuple {
    points: Vec<PointP>,
}

impl CosetTuple {
    /// Validates pairwise general position (relative to the coordinate
    /// scales) and wraps the tuple. At least two points are required.
    pub fn new(points: Vec<PointP>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::domain(
                "CosetTuple::new",
                "a coset tuple needs at least two points",
            ));
        }
        for i in 0..points.len() {
            for j in (i + 1)..points.len() {
                let d = det_pair(&points[i].rep(), &points[j].rep());
                let scale = points[i].max_norm() * points[j].max_norm();
                if d.norm() <= DEGENERACY_RTOL * scale {
                    return Err(Error::Degenerate(format!(
                        "coset tuple entries {i} and {j} have vanishing determinant"
                    )));
                }
            }
        }
        Ok(CosetTuple { points })
    }

    pub fn points(&self) -> &[PointP] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// The canonical representative of the G-orbit of this tuple: the MÖbius
    /// transformation sending the first three projective images to (∞, 0, 1)
    /// is applied to every entry. For a two-point tuple (no third point to
    /// pin down the torus freedom) the representative is ((1,0), (0,δ₀₁)),
    /// which classifies the orbit because δ₀₁ is a G-invariant of the pair.
    /// Constant on orbits and idempotent.
    pub fn canonicalize(&self) -> Result<CosetTuple> {
        if self.points.len() == 2 {
            let d = det_pair(&self.points[0].rep(), &self.points[1].rep());
            return CosetTuple::new(vec![
                PointP::new(cone(), czero())?,
                PointP::new(czero(), d)?,
            ]);
        }
        let n = mobius_normalizer(
            &h_p_to_b(&self.points[0]),
            &h_p_to_b(&self.points[1]),
            &h_p_to_b(&self.points[2]),
        )?;
        let g = *n.rep();
        CosetTuple::new(self.points.iter().map(|p| p.act(&g)).collect())
    }
}

/// The edge labeling of a truncated simplex: one [`PSL2`] label per directed
/// long edge (i, j) and per directed short edge (i; j, k). Reversing a
/// directed edge inverts its label, and the product of the labels along any
/// two-face of the truncated simplex — the corner triangles and the hexagons
/// left over from the original faces — is the identity. [`validate`]
/// (EdgeLabeling::validate) checks all of this; the struct itself is plain
/// data so that defective labelings can be built and rejected.
#[derive(Clone, Debug)]
pub struct EdgeLabeling {
    vertices: usize,
    long: BTreeMap<(usize, usize), PSL2>,
    short: BTreeMap<(usize, usize, usize), PSL2>,
}

impl EdgeLabeling {
    /// Wraps raw labeling data; call [`EdgeLabeling::validate`] to check the
    /// membership and face-product invariants.
    pub fn new(
        vertices: usize,
        long: BTreeMap<(usize, usize), PSL2>,
        short: BTreeMap<(usize, usize, usize), PSL2>,
    ) -> Self {
        EdgeLabeling {
            vertices,
            long,
            short,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    /// Label of the long edge from vertex i to vertex j.
    pub fn long_edge(&self, i: usize, j: usize) -> Option<&PSL2> {
        self.long.get(&(i, j))
    }

    /// Label of the short edge at vertex i, from the corner facing j to the
    /// corner facing k.
    pub fn short_edge(&self, i: usize, j: usize, k: usize) -> Option<&PSL2> {
        self.short.get(&(i, j, k))
    }

    pub fn long_edges(&self) -> impl Iterator<Item = (&(usize, usize), &PSL2)> {
        self.long.iter()
    }

    pub fn short_edges(&self) -> impl Iterator<Item = (&(usize, usize, usize), &PSL2)> {
        self.short.iter()
    }

    /// Checks the three defining invariants, with tolerances scaled by the
    /// entry sizes so that large determinants do not get penalized:
    ///
    /// 1. every short edge lies in P̄ (±upper unitriangular) and every long
    ///    edge is counterdiagonal;
    /// 2. opposite directions of the same edge carry mutually inverse labels;
    /// 3. the product of the labels along every two-face is the identity —
    ///    the corner triangle at vertex i with neighbors {j, k, l} gives
    ///    α^i_jk · α^i_kl · α^i_lj = 1, and the hexagonal face over {i, j, k}
    ///    gives g_ij · α^j_ik · g_jk · α^k_ji · g_ki · α^i_kj = 1.
    ///
    /// Also checks completeness: every directed edge of the truncated
    /// simplex must carry a label.
    pub fn validate(&self, tol: f64) -> Result<()> {
        let n = self.vertices;
        if n < 2 {
            return Err(Error::InvalidLabeling(
                "an edge labeling needs at least two vertices".into(),
            ));
        }

        // Completeness and subgroup membership.
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let g = self.long_edge(i, j).ok_or_else(|| {
                    Error::InvalidLabeling(format!("missing long edge ({i}, {j})"))
                })?;
                let slack = tol * (1.0 + g.rep().max_entry_norm());
                if !g.rep().is_counterdiagonal(slack) {
                    return Err(Error::InvalidLabeling(format!(
                        "long edge ({i}, {j}) is not counterdiagonal: {}",
                        g.rep()
                    )));
                }
                for k in 0..n {
                    if k == i || k == j {
                        continue;
                    }
                    let a = self.short_edge(i, j, k).ok_or_else(|| {
                        Error::InvalidLabeling(format!("missing short edge ({i}; {j}, {k})"))
                    })?;
                    let slack = tol * (1.0 + a.rep().max_entry_norm());
                    if !a.rep().in_p(slack) {
                        return Err(Error::InvalidLabeling(format!(
                            "short edge ({i}; {j}, {k}) is not ±unitriangular: {}",
                            a.rep()
                        )));
                    }
                }
            }
        }

        // Opposite directions are mutual inverses.
        for i in 0..n {
            for j in (i + 1)..n {
                let fwd = self.long_edge(i, j).expect("checked above");
                let bwd = self.long_edge(j, i).expect("checked above");
                if !close_to_identity(&fwd.mul(bwd), tol) {
                    return Err(Error::InvalidLabeling(format!(
                        "long edges ({i}, {j}) and ({j}, {i}) are not inverse"
                    )));
                }
                for k in 0..n {
                    if k == i || k == j {
                        continue;
                    }
                    let fwd = self.short_edge(k, i, j).expect("checked above");
                    let bwd = self.short_edge(k, j, i).expect("checked above");
                    if !close_to_identity(&fwd.mul(bwd), tol) {
                        return Err(Error::InvalidLabeling(format!(
                            "short edges ({k}; {i}, {j}) and ({k}; {j}, {i}) are not inverse"
                        )));
                    }
                }
            }
        }

        // Corner triangles: at vertex i, every triple of distinct neighbors.
        for i in 0..n {
            let others: Vec<usize> = (0..n).filter(|&v| v != i).collect();
            for a in 0..others.len() {
                for b in (a + 1)..others.len() {
                    for c in (b + 1)..others.len() {
                        let (j, k, l) = (others[a], others[b], others[c]);
                        let prod = self
                            .short_edge(i, j, k)
                            .expect("checked above")
                            .mul(self.short_edge(i, k, l).expect("checked above"))
                            .mul(self.short_edge(i, l, j).expect("checked above"));
                        if !close_to_identity(&prod, tol) {
                            return Err(Error::InvalidLabeling(format!(
                                "corner triangle at vertex {i} over {{{j}, {k}, {l}}} does not close up"
                            )));
                        }
                    }
                }
            }
        }

        // Hexagons: one per two-dimensional face {i, j, k} of the original
        // simplex, walking corner to corner.
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    let prod = self
                        .long_edge(i, j)
                        .expect("checked above")
                        .mul(self.short_edge(j, i, k).expect("checked above"))
                        .mul(self.long_edge(j, k).expect("checked above"))
                        .mul(self.short_edge(k, j, i).expect("checked above"))
                        .mul(self.long_edge(k, i).expect("checked above"))
                        .mul(self.short_edge(i, k, j).expect("checked above"));
                    if !close_to_identity(&prod, tol) {
                        return Err(Error::InvalidLabeling(format!(
                            "hexagon over face {{{i}, {j}, {k}}} does not close up"
                        )));
                    }
                }
            }
        }

        Ok(())
    }

    /// Entrywise comparison of two labelings on the same vertex set, with
    /// entry-scaled tolerance.
    pub fn approx_eq(&self, other: &EdgeLabeling, tol: f64) -> bool {
        if self.vertices != other.vertices
            || self.long.len() != other.long.len()
            || self.short.len() != other.short.len()
        {
            return false;
        }
        let pair_close = |x: &PSL2, y: &PSL2| {
            let slack = tol * (1.0 + x.rep().max_entry_norm().max(y.rep().max_entry_norm()));
            x.approx_eq(y, slack)
        };
        self.long
            .iter()
            .all(|(key, g)| other.long.get(key).is_some_and(|h| pair_close(g, h)))
            && self
                .short
                .iter()
                .all(|(key, a)| other.short.get(key).is_some_and(|b| pair_close(a, b)))
    }
}

fn close_to_identity(m: &PSL2, tol: f64) -> bool {
    m.rep().dist_to_pm_identity() <= tol * (1.0 + m.rep().max_entry_norm())
}

/// The two corner matrices (Gᵢⱼ, Gⱼᵢ) attached to an ordered pair of
/// decorated vertices: Gᵢⱼ has first column p and second column the multiple
/// of q that makes the determinant one. Both are well defined up to sign,
/// hence [`PSL2`] values, and (Gᵢⱼ)⁻¹Gⱼᵢ is the counterdiagonal long-edge
/// label. Errors when det(p, q) vanishes.
pub fn decorate_pair(p: &PointP, q: &PointP) -> Result<(PSL2, PSL2)> {
    let vp = p.rep();
    let vq = q.rep();
    let delta = det_pair(&vp, &vq);
    if delta.norm() <= DEGENERACY_RTOL * p.max_norm() * q.max_norm() {
        return Err(Error::Degenerate(
            "decorate_pair needs points with nonvanishing determinant".into(),
        ));
    }
    let first = SL2::new(vp.x, vq.x / delta, vp.y, vq.y / delta)?;
    let second = SL2::new(vq.x, vp.x / (-delta), vq.y, vp.y / (-delta))?;
    Ok((PSL2::new(first), PSL2::new(second)))
}

/// The edge labeling induced by a coset tuple, in closed form:
/// g_ij = ((0, −1/δᵢⱼ), (δᵢⱼ, 0)) and α^i_jk = ((1, δₖⱼ/(δᵢⱼδᵢₖ)), (0, 1))
/// with δᵢⱼ = det(vᵢ, vⱼ). The result is invariant under the diagonal
/// G-action on the tuple and under sign flips of individual entries.
pub fn edge_labeling_from_tuple(t: &CosetTuple) -> Result<EdgeLabeling> {
    let n = t.len();
    let reps: Vec<_> = t.points().iter().map(|p| p.rep()).collect();
    let det = |i: usize, j: usize| det_pair(&reps[i], &reps[j]);

    let mut long = BTreeMap::new();
    let mut short = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let dij = det(i, j);
            long.insert(
                (i, j),
                PSL2::new(SL2::new(czero(), -cone() / dij, dij, czero())?),
            );
            for k in 0..n {
                if k == i || k == j {
                    continue;
                }
                let b = det(k, j) / (dij * det(i, k));
                short.insert((i, j, k), PSL2::new(SL2::new(cone(), b, czero(), cone())?));
            }
        }
    }
    Ok(EdgeLabeling::new(n, long, short))
}

/// Reconstructs a coset tuple from a valid edge labeling — the inverse of
/// [`edge_labeling_from_tuple`] up to the diagonal G-action. The entries come
/// back in canonical position (see [`CosetTuple::canonicalize`]), so the
/// composition with [`edge_labeling_from_tuple`] is the identity on
/// labelings, and the other composition is the canonical-form projection.
///
/// The reconstruction reads δ₀ᵢ off the counterdiagonal entries of g_0i and
/// the remaining column data off the short edges at vertex 0: in the gauge
/// v₀ = (1, 0), a₁ = 0 one has cᵢ = δ₀ᵢ and aᵢ = b(α⁰_1i)·cᵢ. A final
/// re-labeling pass confirms that the input actually arises from a tuple;
/// otherwise the labeling is rejected as inconsistent.
pub fn tuple_from_edge_labeling(e: &EdgeLabeling) -> Result<CosetTuple> {
    e.validate(1e-9)?;
    let n = e.vertex_count();

    // cᵢ = δ₀ᵢ, read from the (2,1) entry of the long edge out of vertex 0.
    // The sign ambiguity of the PSL2 representative only flips vᵢ.
    let mut cs = vec![czero(); n];
    for (i, c) in cs.iter_mut().enumerate().skip(1) {
        *c = e.long_edge(0, i).expect("validated").rep().c;
    }

    let mut columns: Vec<(C, C)> = Vec::with_capacity(n);
    columns.push((cone(), czero()));
    columns.push((czero(), cs[1]));
    for (i, &ci) in cs.iter().enumerate().skip(2) {
        let rep = e.short_edge(0, 1, i).expect("validated").rep();
        // Normalize the ±unitriangular representative to diagonal (1, 1).
        let b = if (rep.a - cone()).norm() <= (rep.a + cone()).norm() {
            rep.b
        } else {
            -rep.b
        };
        columns.push((b * ci, ci));
    }

    let points = columns
        .into_iter()
        .map(|(a, c)| PointP::new(a, c))
        .collect::<Result<Vec<_>>>()?;
    let tuple = CosetTuple::new(points).map_err(|_| {
        Error::Inconsistent("labeling reconstructs to a degenerate tuple".into())
    })?;

    let relabeled = edge_labeling_from_tuple(&tuple)?;
    if !relabeled.approx_eq(e, 1e-8) {
        return Err(Error::Inconsistent(
            "labeling does not arise from any coset tuple".into(),
        ));
    }
    tuple.canonicalize()
}

/// Residuals of the determinant identities satisfied by a four-point tuple:
///
/// * entries 0–5: c(g_ij)² − det(vᵢ, vⱼ)² for the six edges in lexicographic
///   order, where c(g_ij) is the (2,1) entry of the long-edge label — the
///   square is well defined even though c itself is only defined up to sign;
/// * entries 6–8: the squared cross-ratio parameters recovered from those c²
///   values against (z², (1/(1−z))², ((1−z)/z)²), with z the cross-ratio of
///   the four projective images.
///
/// All nine vanish identically; the residuals measure floating-point error
/// only. Errors when the tuple does not have exactly four entries.
pub fn c_squared_check(t: &CosetTuple) -> Result<[C; 9]> {
    if t.len() != 4 {
        return Err(Error::domain(
            "c_squared_check",
            "the determinant identities are stated for four-point tuples",
        ));
    }
    let e = edge_labeling_from_tuple(t)?;
    let csq = |i: usize, j: usize| {
        let c = e.long_edge(i, j).expect("complete by construction").rep().c;
        c * c
    };

    let mut out = [czero(); 9];
    let edges = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    for (slot, (i, j)) in edges.iter().enumerate() {
        out[slot] = csq(*i, *j) - det2_point_p(&t.points()[*i], &t.points()[*j]);
    }

    let pts = [t.points()[0], t.points()[1], t.points()[2], t.points()[3]];
    let z = shape_of(&pts);
    let one = cone();
    out[6] = csq(0, 3) * csq(1, 2) / (csq(0, 2) * csq(1, 3)) - z * z;
    let zp = one / (one - z);
    out[7] = csq(0, 2) * csq(1, 3) / (csq(0, 1) * csq(2, 3)) - zp * zp;
    let zpp = (one - z) / z;
    out[8] = csq(0, 1) * csq(2, 3) / (csq(0, 3) * csq(1, 2)) - zpp * zpp;
    Ok(out)
}
