// Spectrum of a depolarized GHZ state and the lifetime of entanglement
// across groups of particles.

use entlife::ghz_analysis::{ghz_spectrum, group_lifetime};
use entlife::noise_model::noise_from_p;

pub fn run_example() -> entlife::Result<()> {
    let np = noise_from_p(0.8)?;
    let s = ghz_spectrum(4, np)?;
    println!("N = 4, p = 0.8");
    println!("  lambda_0+ = {:.6}  lambda_0- = {:.6}", s.lambda0_plus(), s.lambda0_minus());
    for k in 1..=2 {
        println!("  lambda_{k}  = {:.6}", s.lambda(k));
    }

    println!("lifetime of N-party entanglement (smallest group of one):");
    for n in [2, 3, 4, 8, 16, 32, 64] {
        let lt = group_lifetime(n, 1)?;
        println!("  N = {n:>2}  p = {:.6}  kappa t = {:.6}", lt.p, lt.kappa_t);
    }

    println!("N = 10, larger groups survive longer:");
    for m in 1..=5 {
        println!("  m = {m}  kappa t = {:.6}", group_lifetime(10, m)?.kappa_t);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> entlife::Result<()> {
    run_example()
}
