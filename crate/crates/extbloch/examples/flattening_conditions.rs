//! The ten flattening conditions. σ̃ assigns each decorated simplex a
//! triple of log-parameters; across the five faces of a 4-simplex those
//! triples satisfy ten linear equations (one per edge of the 4-simplex).
//! This is the integrality that makes the alternating sum of flattenings a
//! relation in the extended pre-Bloch group.
//!
//!     cargo run --example flattening_conditions

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use extbloch::extended::{flattening_condition, sigma_tilde_p, FLATTENING_EDGES};
use extbloch::sampling;

fn main() -> extbloch::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let points = sampling::generic_point_tuple::<_, 5>(&mut rng);

    let mut flattenings = Vec::new();
    for omit in 0..5 {
        let mut face = Vec::new();
        for (i, p) in points.iter().enumerate() {
            if i != omit {
                face.push(*p);
            }
        }
        let face = [face[0], face[1], face[2], face[3]];
        let f = sigma_tilde_p(&face)?;
        let (z, p, q) = f.zpq()?;
        println!(
            "face {omit}:  w = ({:+.4}{:+.4}i, {:+.4}{:+.4}i, {:+.4}{:+.4}i)   [z; p, q] = [{:.4}{:+.4}i; {p}, {q}]",
            f.w(0).re, f.w(0).im, f.w(1).re, f.w(1).im, f.w(2).re, f.w(2).im, z.re, z.im,
        );
        flattenings.push(f);
    }
    let fs = [
        flattenings[0],
        flattenings[1],
        flattenings[2],
        flattenings[3],
        flattenings[4],
    ];

    println!("\nten equations (signed sums of log-parameters, one per edge):");
    let residuals = flattening_condition(&fs);
    for (edge, r) in FLATTENING_EDGES.iter().zip(residuals.iter()) {
        println!("  edge {edge:<6} residual {:.3e}", r.norm());
    }
    let worst = residuals.iter().map(|r| r.norm()).fold(0.0, f64::max);
    println!("\nworst residual: {worst:.3e}");
    Ok(())
}
