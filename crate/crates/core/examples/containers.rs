//! One container run with its trace, then every container of small
//! fingerprint for the same graph.

use graph_containers::containers::{container_multiplicities, enumerate_containers, run_kw, Schedule};
use graph_containers::graphs::AuxGraph;
use graph_containers::lattice::Family;

fn main() -> graph_containers::Result<()> {
    let g = AuxGraph::parse("comparability:n=4")?;
    let schedule = Schedule::two_stage(3, 8, 1)?;

    // the middle layer of P(4)
    let layer = Family::layer(4, 2)?;
    let run = run_kw(&g, &g.indices_of(&layer)?, &schedule)?;
    for step in &run.trace {
        println!(
            "step {:>2}: {} (degree {}, stage {}) {:?}, removed {}",
            step.step,
            g.vertex(step.vertex),
            step.degree,
            step.stage,
            step.branch,
            step.removed
        );
    }
    println!("fingerprint {}", g.family_of(&run.fingerprint)?.len());
    println!("container   {} of {} vertices", run.container.len(), g.order());

    let all = enumerate_containers(&g, &schedule, 3, 1 << 20, 1)?;
    let distinct = container_multiplicities(&all);
    println!("{} realizable fingerprints of size <= 3, {} distinct containers", all.len(), distinct.len());
    Ok(())
}
