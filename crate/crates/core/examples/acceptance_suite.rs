//! Runs a few acceptance criteria from library code.

use graph_containers::oracles::EnumBudget;
use graph_containers::verify::run_criterion;

fn main() {
    let budget = EnumBudget::default().unlimited_nodes();
    for id in [1, 4, 6, 9, 11] {
        let r = run_criterion(id, &budget, 1, true);
        println!("{:>2} {:<36} {} ({:.2}s)", r.id, r.title, if r.pass { "pass" } else { "FAIL" }, r.seconds.unwrap_or(0.0));
    }
}
