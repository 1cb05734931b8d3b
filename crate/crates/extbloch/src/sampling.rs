//! Random generators for configuration data, shared by the self-test battery
//! and the test suites.
//!
//! Everything here is deterministic given the caller's RNG; the self-test and
//! the test suites seed ChaCha explicitly so failures replay exactly.

use crate::sl2::SL2;
use crate::spaces::{det_pair, proj_u_to_p, PointP, VecU};
use num_complex::Complex64;
use rand::Rng;

type C = Complex64;

/// Uniform in the square [−half, half)².
pub fn complex_box<R: Rng>(rng: &mut R, half: f64) -> C {
    C::new(
        (rng.gen::<f64>() * 2.0 - 1.0) * half,
        (rng.gen::<f64>() * 2.0 - 1.0) * half,
    )
}

/// Uniform argument, area-uniform radius in [rmin, rmax].
pub fn complex_annulus<R: Rng>(rng: &mut R, rmin: f64, rmax: f64) -> C {
    let theta = rng.gen::<f64>() * std::f64::consts::TAU;
    let r = (rmin * rmin + rng.gen::<f64>() * (rmax * rmax - rmin * rmin)).sqrt();
    C::new(r * theta.cos(), r * theta.sin())
}

/// A shape parameter in general position: away from the degenerate real
/// points 0, 1, ∞ and from the real axis itself.
pub fn generic_shape<R: Rng>(rng: &mut R) -> C {
    loop {
        let z = complex_box(rng, 2.0);
        if z.im.abs() < 0.05 {
            continue;
        }
        if z.norm() < 0.05 || (z - C::new(1.0, 0.0)).norm() < 0.05 {
            continue;
        }
        return z;
    }
}

/// A nonzero vector with entries O(1) and norm bounded away from 0.
pub fn vecu<R: Rng>(rng: &mut R) -> VecU {
    loop {
        let v = VecU {
            x: complex_box(rng, 1.0),
            y: complex_box(rng, 1.0),
        };
        if v.max_norm() >= 0.1 {
            return v;
        }
    }
}

pub fn point_p<R: Rng>(rng: &mut R) -> PointP {
    proj_u_to_p(&vecu(rng))
}

/// A tuple of points in general position: every pair spans a parallelogram
/// of area at least `0.05` relative to the coordinate scales.
pub fn generic_point_tuple<R: Rng, const N: usize>(rng: &mut R) -> [PointP; N] {
    'outer: loop {
        let pts: [PointP; N] = std::array::from_fn(|_| point_p(rng));
        for i in 0..N {
            for j in (i + 1)..N {
                let d = det_pair(&pts[i].rep(), &pts[j].rep()).norm();
                if d < 0.05 * pts[i].max_norm() * pts[j].max_norm() {
                    continue 'outer;
                }
            }
        }
        return pts;
    }
}

/// A well-conditioned element of SL₂(ℂ): entries O(1), determinant exactly
/// renormalized to 1 through the closed form d = (1 + bc)/a.
pub fn unit_scale_sl2<R: Rng>(rng: &mut R) -> SL2 {
    loop {
        let a = complex_box(rng, 1.0);
        if a.norm() < 0.3 {
            continue;
        }
        let b = complex_box(rng, 1.0);
        let c = complex_box(rng, 1.0);
        let d = (C::new(1.0, 0.0) + b * c) / a;
        if d.norm() > 10.0 {
            continue;
        }
        return SL2 { a, b, c, d };
    }
}

/// An SL₂(ℂ) element kept away from the upper-triangular subgroup:
/// |c| ≥ cmin.
pub fn sl2_off_borel<R: Rng>(rng: &mut R, cmin: f64) -> SL2 {
    loop {
        let g = unit_scale_sl2(rng);
        if g.c.norm() >= cmin {
            return g;
        }
    }
}

/// Flattening integer parameters in a small window.
pub fn small_int<R: Rng>(rng: &mut R, bound: i64) -> i64 {
    rng.gen_range(-bound..=bound)
}
