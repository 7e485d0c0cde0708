// Pauli noise on a graph state rewritten as σ_z patterns, and the reduced
// state of a pair once everything else has been measured.

use entlife::graph_core::{
    depolarizing_zmap, disjoint_pair_coefficient, make_lattice, pauli_to_zpattern, reduced_pair_state, Graph, Lattice,
};
use entlife::noise_model::{dephasing_decomposition, noise_from_p, Pauli, PauliDiagonalChannel};

pub fn run_example() -> entlife::Result<()> {
    let chain = make_lattice(&Lattice::Linear(5))?;
    for letter in Pauli::ALL {
        let pat = pauli_to_zpattern(&chain, 2, letter);
        println!("{} on vertex 2 acts as Z on {:?}", letter.as_char(), pat.support());
    }

    let np = noise_from_p(0.9)?;
    let map = depolarizing_zmap(&chain, 2, np)?;
    println!("depolarizing vertex 2 at p = 0.9 gives {} patterns", map.len());

    let d = dephasing_decomposition(np);
    println!("dephasing strengths x/y/z: {:.4} {:.4} {:.4}", d.p_x, d.p_y, d.p_z);
    let chan = PauliDiagonalChannel::depolarizing(1, 0, np)?;
    println!("channel as JSON: {}", chan.to_json());

    let q = reduced_pair_state(&chain, np, 2, 3)?;
    println!(
        "chain pair (2, 3): q = {:?}, disjoint-neighbor formula gives {:.6}",
        q.as_array(),
        disjoint_pair_coefficient(1, 1, np)
    );
    let triangle = Graph::new(3, [(0, 1), (1, 2), (0, 2)])?;
    let q = reduced_pair_state(&triangle, np, 0, 1)?;
    println!("triangle pair (0, 1): q = {:?}", q.as_array());
    Ok(())
}

#[allow(dead_code)]
fn main() -> entlife::Result<()> {
    run_example()
}
