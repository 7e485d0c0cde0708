// Where the Choi state of the two-vertex interaction stops being
// entangled, and the time after which a whole lattice is separable.

use entlife::graph_core::separability_bound;
use entlife::oracle::{choi_min_pt, choi_pt_crossing};

pub fn run_example() -> entlife::Result<()> {
    for p_z in [0.2, 0.4, 0.42, 0.6] {
        println!("p_z = {p_z:<4}  min PT eigenvalue {:+.6}", choi_min_pt(p_z)?);
    }
    let grid: Vec<f64> = (1..1000).map(|i| i as f64 * 1e-3).collect();
    let c = choi_pt_crossing(&grid)?;
    println!("crossing between {} and {} (sqrt 2 - 1 = {:.5})", c.ppt_side, c.npt_side, 2f64.sqrt() - 1.0);
    for m in [2, 4, 6] {
        println!("degree {m}: fully separable for kappa t > {:.4}", separability_bound(m)?);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> entlife::Result<()> {
    run_example()
}
