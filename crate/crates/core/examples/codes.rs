//! Packing bounds and perfect codes.

use graph_containers::codes::{hamming_7_4, hamming_bound, is_perfect, transport_bound, w_brute};
use graph_containers::graphs::{build_graph, GraphKind};
use graph_containers::oracles::{max_independent_set, EnumBudget};

fn main() -> graph_containers::Result<()> {
    let budget = EnumBudget::default();
    for n in 3..=6 {
        let (best, _) = max_independent_set(&build_graph(n, GraphKind::Hamming { t: 1 })?, &budget)?;
        println!("n={n}: largest 1-error-correcting code {best}, bound {}", hamming_bound(n, 1));
    }
    println!("[7,4] Hamming code perfect: {}", is_perfect(&hamming_7_4(), 1));
    println!("W(2,1) in P(6) = {}", w_brute(6, 2, 1)?);
    for n in 4..=7 {
        println!("H({n},2,3) = {}", transport_bound(n, 2, 3)?);
    }
    Ok(())
}
