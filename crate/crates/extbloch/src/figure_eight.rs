//! A decorated fundamental cycle for the figure-eight knot complement.
//!
//! The complement decomposes into two ideal tetrahedra, both regular, with
//! shape parameters ω = e^{iπ/3} and ω̄. The holonomy of the complete
//! structure is generated by
//!
//! ```text
//! A = ( 1  1 )        B = (  1  0 )
//!     ( 0  1 ),           ( −ω  1 ).
//! ```
//!
//! Both meridians are parabolic, so the stabilizer of each ideal point acts
//! on ℂ² by ±unitriangular matrices and the following recipe gives a
//! well-defined equivariant decoration: fix v_∞ = λ·(1, 0) at ∞ and
//! transport it with group words, v_{W·∞} = W·v_∞. One vertex ordering per
//! tetrahedron makes the ordered faces cancel in pairs:
//!
//! ```text
//! +1 · ( ∞,  0,  ω,  1 )
//! −1 · ( 1,  κ,  ω,  0 ),        κ = (1 + ω)/3,
//! ```
//!
//! a cycle in the complex that is free on ordered tuples. The scale λ ∈ ℂ^×
//! is the full freedom of the decoration (one cusp), so two different λ
//! give honestly different decorated chains with the same invariants.

use num_complex::Complex64;

use crate::error::Result;
use crate::pipeline::{DecoratedChain, DecoratedTerm, ShapeChain, ShapeTerm};
use crate::sl2::SL2;
use crate::spaces::PointP;

type C = Complex64;

/// e^{iπ/3}, the shape of both tetrahedra (up to conjugation).
pub fn omega() -> C {
    C::new(0.5, 0.75f64.sqrt())
}

fn generators() -> (SL2, SL2) {
    let one = C::new(1.0, 0.0);
    let zero = C::new(0.0, 0.0);
    let a = SL2::new(one, one, zero, one).expect("unit determinant");
    let b = SL2::new(one, zero, -omega(), one).expect("unit determinant");
    (a, b)
}

/// Evaluates a word over A, B (lower case = inverse), left to right.
fn word(letters: &str) -> SL2 {
    let (a, b) = generators();
    let mut m = SL2::identity();
    for ch in letters.chars() {
        let g = match ch {
            'A' => a,
            'a' => a.inverse(),
            'B' => b,
            'b' => b.inverse(),
            _ => unreachable!("alphabet is A, a, B, b"),
        };
        m = m.mul(&g);
    }
    m
}

/// W·v_∞ for v_∞ = λ·(1,0): λ times the first column of the word matrix.
fn transported(letters: &str, lambda: C) -> Result<PointP> {
    let m = word(letters);
    PointP::new(lambda * m.a, lambda * m.c)
}

/// Words carrying ∞ to the other four ideal points of the developed pair of
/// tetrahedra. Any other word with the same endpoint gives the same
/// decoration, because the point stabilizers are ±unitriangular.
const WORD_ZERO: &str = "ABab";
const WORD_OMEGA: &str = "AB";
const WORD_ONE: &str = "bAB";
const WORD_KAPPA: &str = "ABBab";

/// The decorated two-tetrahedron cycle, at decoration scale `lambda`.
///
/// The single cusp is tagged `"c0"` on every vertex. λ = 1 is the obvious
/// choice; any other nonzero λ is a second genuinely different decoration
/// of the same triangulation.
pub fn figure_eight_chain(lambda: C) -> Result<DecoratedChain> {
    let v_inf = PointP::new(lambda, C::new(0.0, 0.0))?;
    let v_zero = transported(WORD_ZERO, lambda)?;
    let v_omega = transported(WORD_OMEGA, lambda)?;
    let v_one = transported(WORD_ONE, lambda)?;
    let v_kappa = transported(WORD_KAPPA, lambda)?;
    let tag = || Some("c0".to_string());
    DecoratedChain::new(vec![
        DecoratedTerm {
            sign: 1,
            simplex: [v_inf, v_zero, v_omega, v_one],
            cusps: [tag(), tag(), tag(), tag()],
        },
        DecoratedTerm {
            sign: -1,
            simplex: [v_one, v_kappa, v_omega, v_zero],
            cusps: [tag(), tag(), tag(), tag()],
        },
    ])
}

/// The flattened shape parameters of the λ = 1 chain, as a bare shape chain
/// (the face data forgotten): [ω; −1, 1] − [ω̄; 1, −1].
pub fn figure_eight_shapes() -> Result<ShapeChain> {
    let chain = figure_eight_chain(C::new(1.0, 0.0))?;
    let terms = chain
        .terms()
        .iter()
        .map(|t| {
            let f = crate::extended::sigma_tilde_p(&t.simplex)?;
            let (z, p, q) = f.zpq()?;
            Ok(ShapeTerm {
                sign: t.sign,
                z,
                p,
                q,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    ShapeChain::new(terms)
}
