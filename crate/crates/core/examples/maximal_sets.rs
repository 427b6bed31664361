//! Maximal independent sets of the two-layer graph B(n,k).

use graph_containers::constructions::bnk_graph;
use graph_containers::oracles::{enumerate_maximal_independent_sets, EnumBudget};

fn main() -> graph_containers::Result<()> {
    let budget = EnumBudget::default();
    for (n, k) in [(2, 0), (3, 1), (4, 1), (4, 2), (5, 2)] {
        let g = bnk_graph(n, k)?;
        let (count, _) = enumerate_maximal_independent_sets(&g, &budget, false)?;
        println!("mis(B({n},{k})) = {count}");
    }
    let g = bnk_graph(3, 1)?;
    let (_, sets) = enumerate_maximal_independent_sets(&g, &budget, true)?;
    for set in sets.unwrap_or_default() {
        println!("  {}", set.iter().map(|&v| g.vertex(v).to_string()).collect::<Vec<_>>().join(" "));
    }
    Ok(())
}
