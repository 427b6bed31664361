//! Graph specs as accepted on the command line.

use graph_containers::graphs::AuxGraph;

fn main() -> graph_containers::Result<()> {
    let specs = [
        "comparability:n=4",
        "tilt:n=5,p=1,q=2",
        "hamming:n=6,t=1",
        "intersection:n=4,t=2",
        "transport:n=6,k=2,t=1",
        "mono_diff:n=4,R=0x3",
        "bnk:n=5,k=2",
    ];
    for s in specs {
        let g = AuxGraph::parse(s)?;
        let max_deg = (0..g.order()).map(|v| g.degree(v)).max().unwrap_or(0);
        println!("{:<24} {:>4} vertices {:>6} edges, max degree {max_deg}", g.spec().to_string(), g.order(), g.edge_count());
    }
    Ok(())
}
