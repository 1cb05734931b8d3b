//! Branch-fixed logarithms and the dilogarithm family.
//!
//! Everything downstream of this module leans on one convention: `Arg`
//! always means the principal argument in (−π, π], with ties on the negative
//! real axis resolving to +π. On top of that branch we build
//!
//! * `half_log_square` — ½ Log w², the "even logarithm" that only sees w up
//!   to sign,
//! * `rogers_L` — the Rogers dilogarithm L(z) = Li₂(z) + ½ Log z Log(1−z),
//! * `bloch_wigner_D` — the single-valued regulator D(z) = Im Li₂(z) +
//!   Arg(1−z) ln|z|,
//! * `lhat` — L̂(z; p, q) = L(z) + (πi/2)(q Log z + p Log(1−z)) − π²/6,
//!   valued in ℂ/π²ℤ.
//!
//! The [`ModPiSq`] type is the mod-π² accumulator: sums of L̂ terms live
//! there, and `complex_volume_from_modpisq` splits such a sum as
//! i(Vol + i CS), i.e. Vol = Im, CS = −Re mod π².

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;
use std::sync::OnceLock;

/// π², the modulus of the Chern–Simons quotient.
pub const PI_SQ: f64 = PI * PI;

/// Principal argument in (−π, π]. `atan2` returns −π for inputs with a
/// negative-zero imaginary part; we fold that tie to +π so the branch
/// convention is a function of the complex *value*, not its bit pattern.
pub fn principal_arg(w: Complex64) -> f64 {
    let a = w.im.atan2(w.re);
    if a == -PI {
        PI
    } else {
        a
    }
}

/// Log w = ln|w| + i Arg w with Arg ∈ (−π, π].
pub fn principal_log(w: Complex64) -> Complex64 {
    Complex64::new(w.norm().ln(), principal_arg(w))
}

/// ½ Log(w²), computed by branch casework so it is exactly sign-insensitive:
///
/// ```text
///        ⎧ Log w + iπ   Arg w ∈ (−π, −π/2]
/// ½Log w² = ⎨ Log w        Arg w ∈ (−π/2, π/2]
///        ⎩ Log w − iπ   Arg w ∈ (π/2, π]
/// ```
pub fn half_log_square(w: Complex64) -> Complex64 {
    let lw = principal_log(w);
    let a = principal_arg(w);
    if a <= -PI / 2.0 {
        lw + Complex64::new(0.0, PI)
    } else if a <= PI / 2.0 {
        lw
    } else {
        lw - Complex64::new(0.0, PI)
    }
}

/// ζ(s) for real s ≥ 2 by direct summation plus an Euler–Maclaurin tail.
/// Absolute error well below 1e−16 with N = 1000 for every s ≥ 2.
fn zeta_real(s: f64) -> f64 {
    const N: usize = 1000;
    let mut sum = 0.0;
    // Sum small terms first to limit rounding.
    for j in (1..=N).rev() {
        sum += (j as f64).powf(-s);
    }
    let n = N as f64;
    sum += n.powf(1.0 - s) / (s - 1.0);
    sum -= 0.5 * n.powf(-s);
    sum += s * n.powf(-s - 1.0) / 12.0;
    sum -= s * (s + 1.0) * (s + 2.0) * n.powf(-s - 3.0) / 720.0;
    sum
}

/// Coefficients c_{2k} = B_{2k}/(2k+1)! of the logarithmic dilogarithm
/// series, through the ζ-representation of Bernoulli numbers (stable,
/// unlike the defining recurrence):
/// B_{2k} = (−1)^{k+1} · 2 · (2k)! · ζ(2k) / (2π)^{2k}.
fn log_series_coeffs() -> &'static [f64] {
    static COEFFS: OnceLock<Vec<f64>> = OnceLock::new();
    COEFFS.get_or_init(|| {
        (1..=44)
            .map(|k| {
                let two_k = 2.0 * k as f64;
                let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
                sign * 2.0 * zeta_real(two_k) / ((two_k + 1.0) * (2.0 * PI).powf(two_k))
            })
            .collect()
    })
}

/// Li₂ by its defining power series; use only for |z| ≤ 0.6 or so.
fn li2_taylor(z: Complex64) -> Complex64 {
    let mut term = z;
    let mut sum = z;
    for n in 2..200u32 {
        term *= z;
        let t = term / ((n * n) as f64);
        sum += t;
        if t.norm_sqr() < 1e-40 * (1.0 + sum.norm_sqr()) {
            break;
        }
    }
    sum
}

/// Li₂ through the expansion in u = −Log(1−z):
/// Li₂(z) = u − u²/4 + Σ_{k≥1} c_{2k} u^{2k+1},
/// convergent for |u| < 2π. This is the workhorse for the annulus where
/// neither z, 1/z, nor 1−z is small — in particular near the hexagonal
/// points e^{±iπ/3} where |z| = |1−z| = 1 and every Möbius rewrite stalls.
fn li2_log_series(z: Complex64) -> Complex64 {
    let u = -principal_log(Complex64::new(1.0, 0.0) - z);
    let u2 = u * u;
    let mut sum = u - u2 / 4.0;
    let mut upow = u * u2; // u^{2k+1}, starting at k = 1
    for &c in log_series_coeffs() {
        let t = c * upow;
        sum += t;
        if t.norm_sqr() < 1e-40 * (1.0 + sum.norm_sqr()) {
            break;
        }
        upow *= u2;
    }
    sum
}

/// Principal-branch dilogarithm, absolute error ≲ 1e−14 on |z| ≤ 10.
/// Values on the cut [1, ∞) follow the tie convention (continuous from the
/// lower half-plane, where Arg(1−z) → +π).
pub(crate) fn dilog(z: Complex64) -> Complex64 {
    let norm = z.norm();
    if norm <= 0.6 {
        li2_taylor(z)
    } else if norm >= 2.0 {
        // Li₂(z) = −Li₂(1/z) − π²/6 − ½ Log²(−z)
        let lw = principal_log(-z);
        -dilog(1.0 / z) - PI_SQ / 6.0 - 0.5 * lw * lw
    } else if (Complex64::new(1.0, 0.0) - z).norm() <= 0.6 {
        // Li₂(z) = π²/6 − Log z Log(1−z) − Li₂(1−z)
        let w = Complex64::new(1.0, 0.0) - z;
        PI_SQ / 6.0 - principal_log(z) * principal_log(w) - li2_taylor(w)
    } else {
        li2_log_series(z)
    }
}

fn check_not_zero_one(op: &'static str, z: Complex64) -> Result<()> {
    if z == Complex64::new(0.0, 0.0) || z == Complex64::new(1.0, 0.0) {
        return Err(Error::domain(op, format!("z = {z} is a degenerate shape")));
    }
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::domain(op, format!("z = {z} is not finite")));
    }
    Ok(())
}

/// Rogers dilogarithm L(z) = Li₂(z) + ½ Log z Log(1−z)
/// (equivalently −∫₀^z Log(1−t)/t dt + ½ Log z Log(1−z) on the principal
/// branch). Absolute error ≤ 1e−12 on |z| ≤ 10.
pub fn rogers_l(z: Complex64) -> Result<Complex64> {
    check_not_zero_one("rogers_l", z)?;
    let one_minus = Complex64::new(1.0, 0.0) - z;
    Ok(dilog(z) + 0.5 * principal_log(z) * principal_log(one_minus))
}

/// Bloch–Wigner function D(z) = Im Li₂(z) + Arg(1−z) ln|z|.
///
/// Total: D ≡ 0 on the real line (including 0, 1 and the point at infinity,
/// which callers encode as a non-finite float). Satisfies the five-term
/// relation and D(z̄) = −D(z).
pub fn bloch_wigner_d(z: Complex64) -> f64 {
    if !z.re.is_finite() || !z.im.is_finite() || z.im == 0.0 {
        return 0.0;
    }
    let one_minus = Complex64::new(1.0, 0.0) - z;
    dilog(z).im + principal_arg(one_minus) * z.norm().ln()
}

/// A complex number modulo real multiples of π²: the codomain of L̂ sums.
/// The real part is stored normalized to [0, π²); the imaginary part is an
/// honest real number (it carries the volume).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModPiSq {
    re: f64,
    im: f64,
}

impl ModPiSq {
    pub fn new(v: Complex64) -> Self {
        let mut re = v.re.rem_euclid(PI_SQ);
        // rem_euclid can return the modulus itself when v.re is a tiny
        // negative number; fold that back to 0.
        if re >= PI_SQ {
            re -= PI_SQ;
        }
        ModPiSq { re, im: v.im }
    }

    pub fn zero() -> Self {
        ModPiSq { re: 0.0, im: 0.0 }
    }

    /// The representative with Re ∈ [0, π²).
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    pub fn im(&self) -> f64 {
        self.im
    }

    /// Distance in ℂ/π²ℤ: circular distance of real parts plus |ΔIm|.
    pub fn dist(&self, other: &ModPiSq) -> f64 {
        let dre = (self.re - other.re).rem_euclid(PI_SQ);
        dre.min(PI_SQ - dre) + (self.im - other.im).abs()
    }

    pub fn approx_eq(&self, other: &ModPiSq, tol: f64) -> bool {
        self.dist(other) <= tol
    }
}

impl std::ops::Add for ModPiSq {
    type Output = ModPiSq;
    fn add(self, rhs: ModPiSq) -> ModPiSq {
        ModPiSq::new(Complex64::new(self.re + rhs.re, self.im + rhs.im))
    }
}

impl std::ops::AddAssign for ModPiSq {
    fn add_assign(&mut self, rhs: ModPiSq) {
        *self = *self + rhs;
    }
}

impl std::ops::Sub for ModPiSq {
    type Output = ModPiSq;
    fn sub(self, rhs: ModPiSq) -> ModPiSq {
        ModPiSq::new(Complex64::new(self.re - rhs.re, self.im - rhs.im))
    }
}

impl std::fmt::Display for ModPiSq {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} + {}i (mod π²)", self.re, self.im)
    }
}

/// L̂(z; p, q) = L(z) + (πi/2)(q Log z + p Log(1−z)) − π²/6 ∈ ℂ/π²ℤ,
/// the extended Rogers dilogarithm on flattened shape parameters.
pub fn lhat(z: Complex64, p: i64, q: i64) -> Result<ModPiSq> {
    check_not_zero_one("lhat", z)?;
    let one_minus = Complex64::new(1.0, 0.0) - z;
    let correction = Complex64::new(0.0, PI / 2.0)
        * (q as f64 * principal_log(z) + p as f64 * principal_log(one_minus));
    Ok(ModPiSq::new(
        rogers_l(z)? + correction - Complex64::new(PI_SQ / 6.0, 0.0),
    ))
}

/// Split an L̂ sum as i(Vol + i CS): Vol = Im, CS = −Re normalized to [0, π²).
pub fn complex_volume_from_modpisq(v: ModPiSq) -> (f64, f64) {
    let mut cs = (-v.re).rem_euclid(PI_SQ);
    if cs >= PI_SQ {
        cs -= PI_SQ;
    }
    // rem_euclid(−0.0) is −0.0; fold to +0.0 so reports never print "-0.000…".
    (v.im, cs + 0.0)
}
