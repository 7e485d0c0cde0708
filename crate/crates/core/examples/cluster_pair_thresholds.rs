// Noise thresholds below which an interior pair of a noisy cluster state
// can still be distilled, with the degree and separability bounds that
// bracket them.

use entlife::graph_core::{degree_bound, make_lattice, pair_threshold, separability_bound, Lattice};

pub fn run_example() -> entlife::Result<()> {
    let cases =
        [("linear", Lattice::Linear(10), 2), ("2d", Lattice::Grid2d(5, 6), 4), ("3d", Lattice::Grid3d(5, 5, 6), 6)];
    for (name, lattice, degree) in cases {
        let g = make_lattice(&lattice)?;
        let (k, l) = lattice.interior_pair().expect("large enough lattice");
        let lt = pair_threshold(&g, k, l)?;
        println!(
            "{name:<6} pair ({k}, {l}): p_< = {:.4}  kappa t_< = {:.4}  degree bound {:.4}  separable beyond {:.4}",
            lt.p,
            lt.kappa_t,
            degree_bound(degree, degree)?,
            separability_bound(degree)?,
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> entlife::Result<()> {
    run_example()
}
