//! Largest intersecting families inside random subfamilies of P(n), and
//! the explicit lower construction in a sparse sample.

use graph_containers::katona::{monte_carlo_katona, random_lower_construction, Probability};
use graph_containers::oracles::EnumBudget;
use num_rational::BigRational;

fn main() -> graph_containers::Result<()> {
    let p: Probability = "1/2".parse()?;
    let report = monte_carlo_katona(6, 1, p, 5, 42, &EnumBudget::default(), 1)?;
    println!("K(6,1) = {}, p 2^n = {}", report.k, report.p2n);
    for t in &report.per_trial {
        println!("trial {}: {} sampled, largest intersecting {}", t.trial, t.sample_size, t.max);
    }

    let a = BigRational::from_integer(1.into());
    let (c, _) = random_lower_construction(20, 1, &a, Probability::new(1, 32)?, 7)?;
    println!(
        "n=20, p=1/32: {} upper + {} lower of {} candidates, verified {}",
        c.upper_part, c.lower_part, c.lower_candidates, c.verified
    );
    Ok(())
}
