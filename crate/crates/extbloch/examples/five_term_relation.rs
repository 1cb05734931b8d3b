//! The five-term relation, three ways. Five points in general position
//! span five 3-simplices (omit one point each); the alternating sum of
//! their cross-ratio symbols dies in the pre-Bloch group, and its lifts die
//! too: the Bloch–Wigner sum vanishes on the nose and the L̂ sum vanishes
//! mod π².
//!
//!     cargo run --example five_term_relation

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use extbloch::extended::sigma_tilde_p;
use extbloch::kernel::{bloch_wigner_d, lhat, ModPiSq};
use extbloch::prebloch::five_term_terms;
use extbloch::sampling;
use extbloch::spaces::shape_of;

fn main() -> extbloch::Result<()> {
    // Direct form on shape parameters: [x] − [y] + [y/x] − [(1−x⁻¹)/(1−y⁻¹)]
    // + [(1−x)/(1−y)] with the arguments of five_term_terms.
    let x = Complex64::new(0.3, 0.4);
    let y = Complex64::new(-0.2, 0.9);
    let sum = five_term_terms(x, y);
    println!("five-term D-sum at (x, y):     {:.3e}", sum.evaluate_volume());

    // Geometric form: the five faces of a 4-simplex on random decorations.
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let points = sampling::generic_point_tuple::<_, 5>(&mut rng);
    let mut d_total = 0.0;
    let mut lhat_total = ModPiSq::zero();
    println!("\nfaces of a random 4-simplex:");
    for omit in 0..5 {
        let mut face = Vec::new();
        for (i, p) in points.iter().enumerate() {
            if i != omit {
                face.push(*p);
            }
        }
        let face = [face[0], face[1], face[2], face[3]];
        let sign = if omit % 2 == 0 { 1.0 } else { -1.0 };
        let z = shape_of(&face);
        d_total += sign * bloch_wigner_d(z);

        let f = sigma_tilde_p(&face)?;
        let (z, p, q) = f.zpq()?;
        let v = lhat(z, p, q)?;
        lhat_total += ModPiSq::new(Complex64::new(sign, 0.0) * v.value());
        println!(
            "  {} [{:.6} {:+.6}i; {p}, {q}]",
            if sign > 0.0 { "+" } else { "−" },
            z.re,
            z.im
        );
    }
    println!("\nΣ (−1)^i D(z_i)                 {d_total:.3e}");
    println!(
        "Σ (−1)^i L̂[z_i; p_i, q_i] mod π²  {:.3e}",
        lhat_total.dist(&ModPiSq::zero())
    );
    Ok(())
}
