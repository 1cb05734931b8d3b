//! The truncated-simplex picture. A decorated simplex determines one
//! matrix per edge of its truncation: counterdiagonal "long" matrices
//! along the original edges and upper-unitriangular "short" matrices along
//! the boundary triangles of the cut corners. Face products close up
//! exactly, the labeling reconstructs the decoration, and the squares of
//! the long-edge c-entries recover the determinants and cross-ratios.
//!
//!     cargo run --example truncated_simplices

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use extbloch::sampling;
use extbloch::sl2::SL2;
use extbloch::truncated::{
    c_squared_check, edge_labeling_from_tuple, tuple_from_edge_labeling, CosetTuple,
};

fn show(name: &str, m: &SL2) {
    println!(
        "  {name} = ({:+.4}{:+.4}i  {:+.4}{:+.4}i / {:+.4}{:+.4}i  {:+.4}{:+.4}i)",
        m.a.re, m.a.im, m.b.re, m.b.im, m.c.re, m.c.im, m.d.re, m.d.im
    );
}

fn main() -> extbloch::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let points = sampling::generic_point_tuple::<_, 4>(&mut rng);
    let tuple = CosetTuple::new(points.to_vec())?.canonicalize()?;

    let labeling = edge_labeling_from_tuple(&tuple)?;
    println!("long edges (counterdiagonal, one per ordered pair):");
    for (&(i, j), g) in labeling.long_edges().take(3) {
        show(&format!("g_{i}{j}"), g.rep());
    }
    println!("short edges (upper unitriangular, one per corner arrow):");
    for (&(i, j, k), a) in labeling.short_edges().take(3) {
        show(&format!("α^{i}_{j}{k}"), a.rep());
    }

    labeling.validate(1e-9)?;
    println!("\nvalidation: memberships, inverses, corner triangles, hexagons all close");

    let back = tuple_from_edge_labeling(&labeling)?;
    let worst = back
        .points()
        .iter()
        .zip(tuple.points())
        .map(|(p, q)| p.dist(q) / (1.0 + q.max_norm()))
        .fold(0.0, f64::max);
    println!("reconstruction from the labeling alone: worst drift {worst:.3e}");

    let residuals = c_squared_check(&tuple)?;
    let worst = residuals.iter().map(|r| r.norm()).fold(0.0, f64::max);
    println!("c² = det² and squared cross-ratio identities: worst residual {worst:.3e}");
    Ok(())
}
