// Brute-force density matrices reproducing the closed-form results on a
// few qubits.

use entlife::ghz_analysis::{ghz_spectrum, ppt_positive};
use entlife::graph_core::{make_lattice, reduced_pair_state, Lattice};
use entlife::noise_model::noise_from_p;
use entlife::oracle::{
    apply_depolarizing, build_ghz_state, build_graph_state, ghz_coefficients, measure_and_reduce, min_pt_eigenvalue,
    pair_frame_coefficients, BipartitionCut,
};

pub fn run_example() -> entlife::Result<()> {
    let np = noise_from_p(0.7)?;
    let rho = apply_depolarizing(&build_ghz_state(4)?, np)?;
    let dense = ghz_coefficients(&rho)?;
    let s = ghz_spectrum(4, np)?;
    println!("GHZ N = 4, p = 0.7");
    println!("  lambda_0+ dense {:.12} closed form {:.12}", dense.lambda0_plus(), s.lambda0_plus());
    println!("  lambda_1  dense {:.12} closed form {:.12}", dense.by_weight(1)[0], s.lambda(1));
    for k in 1..=2 {
        let min = min_pt_eigenvalue(&rho, &BipartitionCut::new(4, 0..k)?)?;
        println!("  cut of {k}: min PT eigenvalue {min:+.6}, PPT predicted {}", ppt_positive(4, np, k)?);
    }

    let g = make_lattice(&Lattice::Linear(5))?;
    let rho = apply_depolarizing(&build_graph_state(&g)?, np)?;
    let (q, _) = pair_frame_coefficients(&measure_and_reduce(&rho, &g, 1, 2)?)?;
    println!("chain of 5, pair (1, 2)");
    println!("  dense      {q:.12?}");
    println!("  z patterns {:.12?}", reduced_pair_state(&g, np, 1, 2)?.as_array());
    Ok(())
}

#[allow(dead_code)]
fn main() -> entlife::Result<()> {
    run_example()
}
