//! SL₂(ℂ) and PSL₂(ℂ) as concrete 2×2 matrices.
//!
//! The group side of the configuration spaces: matrices with determinant 1,
//! their sign quotient with a deterministic normal form, membership
//! predicates for the subgroups that index the decoration models
//! (U unipotent, P = ±U, B upper triangular, T diagonal), and the explicit
//! transporter matrices witnessing transitivity of the action on ℂ²∖{0}.

use crate::error::{Error, Result};
use crate::spaces::VecU;
use num_complex::Complex64;

type C = Complex64;

fn czero() -> C {
    C::new(0.0, 0.0)
}

/// Sign rule shared by every ±-quotient in the crate: keep the
/// representative whose leading coordinate has Arg ∈ (−π/2, π/2],
/// with the Arg = ±π/2 tie resolving to +π/2.
pub(crate) fn keeps_sign(lead: C) -> bool {
    lead.re > 0.0 || (lead.re == 0.0 && lead.im > 0.0)
}

/// The leading coordinate for sign normalization: the first one that is
/// nonzero *relative to the vector's scale*. Reading "nonzero" relatively
/// keeps the normal form stable when a coordinate that is exactly zero in
/// exact arithmetic comes back from a matrix action as rounding noise.
/// `None` when all coordinates vanish.
pub(crate) fn leading_coordinate(coords: &[C]) -> Option<C> {
    let scale = coords.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return None;
    }
    coords.iter().copied().find(|c| c.norm() > 1e-12 * scale)
}

/// An element of SL₂(ℂ): ((a, b), (c, d)) with ad − bc = 1.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SL2 {
    pub a: C,
    pub b: C,
    pub c: C,
    pub d: C,
}

impl SL2 {
    /// Validates the determinant to 1e−9 relative accuracy.
    pub fn new(a: C, b: C, c: C, d: C) -> Result<Self> {
        let g = SL2 { a, b, c, d };
        let scale = (a.norm() * d.norm() + b.norm() * c.norm()).max(1.0);
        if (g.det() - C::new(1.0, 0.0)).norm() > 1e-9 * scale {
            return Err(Error::InvalidMatrix(format!(
                "det = {} is not 1 (entries {a}, {b}, {c}, {d})",
                g.det()
            )));
        }
        Ok(g)
    }

    /// Scales a nonsingular matrix by 1/√det to land in SL₂.
    pub fn from_unnormalized(a: C, b: C, c: C, d: C) -> Result<Self> {
        let det = a * d - b * c;
        let scale = (a.norm() * d.norm() + b.norm() * c.norm()).max(f64::MIN_POSITIVE);
        if det.norm() <= 1e-12 * scale {
            return Err(Error::InvalidMatrix(format!(
                "matrix ({a}, {b}; {c}, {d}) is singular"
            )));
        }
        let s = det.sqrt();
        Ok(SL2 {
            a: a / s,
            b: b / s,
            c: c / s,
            d: d / s,
        })
    }

    pub fn identity() -> Self {
        SL2 {
            a: C::new(1.0, 0.0),
            b: czero(),
            c: czero(),
            d: C::new(1.0, 0.0),
        }
    }

    pub fn det(&self) -> C {
        self.a * self.d - self.b * self.c
    }

    pub fn mul(&self, o: &SL2) -> SL2 {
        SL2 {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    /// Exact inverse by the adjugate; no division by the determinant, so the
    /// inverse of a slightly-off-unit matrix stays slightly off rather than
    /// drifting.
    pub fn inverse(&self) -> SL2 {
        SL2 {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    pub fn neg(&self) -> SL2 {
        SL2 {
            a: -self.a,
            b: -self.b,
            c: -self.c,
            d: -self.d,
        }
    }

    pub fn entries(&self) -> [C; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn max_entry_norm(&self) -> f64 {
        self.entries().iter().map(|e| e.norm()).fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, o: &SL2, tol: f64) -> bool {
        self.entries()
            .iter()
            .zip(o.entries())
            .all(|(x, y)| (x - y).norm() <= tol)
    }

    /// Distance to ±I (the kernel of SL₂ → PSL₂).
    pub fn dist_to_pm_identity(&self) -> f64 {
        let i = SL2::identity();
        let direct: f64 = self
            .entries()
            .iter()
            .zip(i.entries())
            .map(|(x, y)| (x - y).norm())
            .sum();
        let negated: f64 = self
            .entries()
            .iter()
            .zip(i.neg().entries())
            .map(|(x, y)| (x - y).norm())
            .sum();
        direct.min(negated)
    }

    // ----- subgroup membership, absolute tolerance on offending entries ---

    /// U: upper unitriangular, ((1, *), (0, 1)).
    pub fn in_u(&self, tol: f64) -> bool {
        self.c.norm() <= tol
            && (self.a - C::new(1.0, 0.0)).norm() <= tol
            && (self.d - C::new(1.0, 0.0)).norm() <= tol
    }

    /// P = ±U: upper triangular with diagonal (1,1) or (−1,−1).
    pub fn in_p(&self, tol: f64) -> bool {
        self.in_u(tol) || self.neg().in_u(tol)
    }

    /// B: upper triangular.
    pub fn in_b(&self, tol: f64) -> bool {
        self.c.norm() <= tol
    }

    /// T: diagonal.
    pub fn in_t(&self, tol: f64) -> bool {
        self.b.norm() <= tol && self.c.norm() <= tol
    }

    /// Counterdiagonal: ((0, *), (*, 0)).
    pub fn is_counterdiagonal(&self, tol: f64) -> bool {
        self.a.norm() <= tol && self.d.norm() <= tol
    }
}

impl std::fmt::Display for SL2 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(({}, {}), ({}, {}))", self.a, self.b, self.c, self.d)
    }
}

/// An element of PSL₂(ℂ) = SL₂(ℂ)/±I, stored as the sign-normalized SL₂
/// representative (same normal-form rule as PointP, applied to the entry
/// vector (a, b, c, d)).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PSL2 {
    rep: SL2,
}

impl PSL2 {
    pub fn new(g: SL2) -> Self {
        match leading_coordinate(&g.entries()) {
            Some(l) if !keeps_sign(l) => PSL2 { rep: g.neg() },
            _ => PSL2 { rep: g },
        }
    }

    pub fn identity() -> Self {
        PSL2::new(SL2::identity())
    }

    /// The sign-normalized SL₂ lift.
    pub fn rep(&self) -> &SL2 {
        &self.rep
    }

    pub fn mul(&self, o: &PSL2) -> PSL2 {
        PSL2::new(self.rep.mul(&o.rep))
    }

    pub fn inverse(&self) -> PSL2 {
        PSL2::new(self.rep.inverse())
    }

    /// Sign-insensitive entrywise comparison (robust even when one side's
    /// normal form sits on the Arg = ±π/2 boundary).
    pub fn approx_eq(&self, o: &PSL2, tol: f64) -> bool {
        self.rep.approx_eq(&o.rep, tol) || self.rep.approx_eq(&o.rep.neg(), tol)
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        self.rep.dist_to_pm_identity() <= tol
    }
}

impl std::fmt::Display for PSL2 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "±{}", self.rep)
    }
}

/// A determinant-one matrix g with g·p = q, by the explicit case formulas
/// from the transitivity proof for the action on ℂ²∖{0}. Total on valid
/// inputs; when p = q the witness need not be the identity, only a
/// stabilizer-coset representative.
pub fn find_transporter(p: &VecU, q: &VecU) -> SL2 {
    let (x, y) = (p.x, p.y);
    let (z, w) = (q.x, q.y);
    let zero = czero();
    if x != zero {
        if w != zero {
            SL2 {
                a: (z * w + x * y) / (x * w),
                b: -x / w,
                c: w / x,
                d: zero,
            }
        } else {
            // w = 0 forces z ≠ 0.
            SL2 {
                a: z / x,
                b: zero,
                c: -y / z,
                d: x / z,
            }
        }
    } else if z != zero {
        // x = 0 forces y ≠ 0.
        SL2 {
            a: zero,
            b: z / y,
            c: -y / z,
            d: w / y,
        }
    } else {
        // x = 0 and z = 0 force y ≠ 0 and w ≠ 0.
        SL2 {
            a: y / w,
            b: z / y,
            c: zero,
            d: w / y,
        }
    }
}
