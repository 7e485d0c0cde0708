// How many equal-size groups of a large GHZ state can still share
// distillable entanglement after a given time.

use entlife::ghz_analysis::{asymptotic_m, lower_bound_m, upper_bound_lifetimes, upper_bound_m};
use entlife::noise_model::noise_from_time;

pub fn run_example() -> entlife::Result<()> {
    println!("kappa t     M_lower  M_upper");
    for kt in [1e-3, 1e-2, 0.05, 0.1, 0.3, 0.6] {
        let np = noise_from_time(kt)?;
        let lower = lower_bound_m(np)?;
        let lower = if lower.guaranteed { lower.m.to_string() } else { "-".into() };
        println!("{kt:<10}  {lower:>7}  {:>7}", upper_bound_m(np));
    }

    let ms = [2u64, 3, 10, 100, 1000, 10_000];
    println!("M       kappa tau_M    -2 ln(kt)/kt at that time");
    for (m, kt) in ms.iter().zip(upper_bound_lifetimes(&ms)) {
        let kt = kt?;
        println!("{m:<6}  {kt:.8}   {:.2}", asymptotic_m(kt).unwrap_or(f64::NAN));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> entlife::Result<()> {
    run_example()
}
