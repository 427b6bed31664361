//! Symmetric chain decompositions and their permuted copies.

use graph_containers::lattice::{build_scd, sample_permutation};

fn main() -> graph_containers::Result<()> {
    let scd = build_scd(4)?;
    for chain in scd.chains() {
        println!("{}", chain.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(" < "));
    }
    let pi = sample_permutation(4, 9);
    let moved = scd.permuted(&pi)?;
    println!("permuted by {:?}: valid {}", pi.images(), moved.validate().is_ok());
    for n in [8, 12, 16] {
        println!("n={n}: {} chains", build_scd(n)?.chains().len());
    }
    Ok(())
}
