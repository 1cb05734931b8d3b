//! Everything is G-equivariant. Moving all decorations by one element of
//! SL₂(ℂ) changes none of the derived quantities: pairwise determinant
//! halves dH, cross-ratios, the flattening σ̃, canonical forms, edge
//! labelings, and the invariants of a whole chain.
//!
//!     cargo run --example invariance

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use extbloch::extended::sigma_tilde_p;
use extbloch::figure_eight::figure_eight_chain;
use extbloch::pipeline::{self, DecoratedChain, DecoratedTerm};
use extbloch::sampling;
use extbloch::spaces::{canonical_decorated_simplex, dh, shape_of, GAct};

fn main() -> extbloch::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let t = sampling::generic_point_tuple::<_, 4>(&mut rng);
    let g = sampling::unit_scale_sl2(&mut rng);
    let moved = [t[0].act(&g), t[1].act(&g), t[2].act(&g), t[3].act(&g)];

    println!("one random move g applied to a random decorated simplex:");
    let a = dh(&t[0], &t[1])?;
    let b = dh(&moved[0], &moved[1])?;
    println!("  dH(v0, v1)        drift {:.3e}", (a - b).norm());

    let za = shape_of(&t);
    let zb = shape_of(&moved);
    println!("  cross-ratio       drift {:.3e}", (za - zb).norm());

    let fa = sigma_tilde_p(&t)?;
    let fb = sigma_tilde_p(&moved)?;
    let drift = (0..3)
        .map(|j| (fa.w(j) - fb.w(j)).norm())
        .fold(0.0, f64::max);
    println!("  σ̃ log-parameters  drift {drift:.3e}");

    let ca = canonical_decorated_simplex(&t)?;
    let cb = canonical_decorated_simplex(&moved)?;
    let drift = ca
        .iter()
        .zip(&cb)
        .map(|(p, q)| p.dist(q))
        .fold(0.0, f64::max);
    println!("  canonical form    drift {drift:.3e}");

    // Whole-chain invariance: move the figure-eight cycle and compare the
    // reports.
    let chain = figure_eight_chain(Complex64::new(1.0, 0.0))?;
    let g = sampling::unit_scale_sl2(&mut rng);
    let moved = DecoratedChain::new(
        chain
            .terms()
            .iter()
            .map(|term| DecoratedTerm {
                sign: term.sign,
                simplex: [
                    term.simplex[0].act(&g),
                    term.simplex[1].act(&g),
                    term.simplex[2].act(&g),
                    term.simplex[3].act(&g),
                ],
                cusps: term.cusps.clone(),
            })
            .collect(),
    )?;

    let (v1, c1) = pipeline::complex_volume(&chain)?;
    let (v2, c2) = pipeline::complex_volume(&moved)?;
    println!("\nfigure-eight cycle moved by a random g:");
    println!("  volume   {v1:.15} vs {v2:.15}");
    println!("  cs       {c1:.15} vs {c2:.15}");
    println!(
        "  cycle residual after the move: {}",
        pipeline::cycle_residual(&moved, 1e-9)?
    );

    // β_P matches termwise because canonical forms forget the move.
    let bp1 = pipeline::beta_p(&chain, 1e-9)?;
    let bp2 = pipeline::beta_p(&moved, 1e-9)?;
    let drift = bp1
        .iter()
        .zip(&bp2)
        .flat_map(|((_, s1), (_, s2))| s1.iter().zip(s2).map(|(p, q)| p.dist(q)))
        .fold(0.0, f64::max);
    println!("  β_P canonical representatives drift {drift:.3e}");
    Ok(())
}
