//! Sparsest families just above the extremal size.

use graph_containers::oracles::EnumBudget;
use graph_containers::supersat::{check_claim_cd, check_hamming, check_kleitman, check_tilt, SearchMode};

fn main() -> graph_containers::Result<()> {
    let budget = EnumBudget::default();
    for x in 1..=5 {
        let c = check_kleitman(3, x, SearchMode::Exhaustive, &budget)?;
        println!("P(3), {} sets: at least {} comparable pairs, minimum {}", c.size, c.required, c.observed_min);
    }
    let c = check_hamming(5, 1, 2, SearchMode::Random { trials: 16, seed: 1 }, &budget)?;
    println!("{}: {} sets need {} close pairs, best found {}", c.graph, c.size, c.required, c.observed_min);

    let c = check_tilt(3, 1, 2, 2, SearchMode::Exhaustive, &budget)?;
    println!("tilt(3,1,2), {} sets: minimum {} vs {} claimed, pass {}", c.size, c.observed_min, c.required, c.pass);

    for c in check_claim_cd(4, SearchMode::Exhaustive, &budget)? {
        println!("{} size {}: {} disjoint pairs", c.lemma, c.size, c.observed_min);
    }
    Ok(())
}
