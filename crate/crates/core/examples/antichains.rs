//! Counts antichains of P(n) as independent sets of the comparability graph.

use graph_containers::graphs::{build_graph, GraphKind};
use graph_containers::oracles::{count_independent_sets, max_independent_set, EnumBudget};

fn main() -> graph_containers::Result<()> {
    let budget = EnumBudget::default();
    for n in 0..=5 {
        let g = build_graph(n, GraphKind::Comparability)?;
        let count = count_independent_sets(&g, &budget)?;
        let (width, _) = max_independent_set(&g, &budget)?;
        println!("n={n}: {count} antichains, largest has {width} sets");
    }
    Ok(())
}
