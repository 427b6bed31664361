//! The skew set-pair construction and the good-triple independent sets.

use graph_containers::constructions::{
    construction_78, good_triple_pipeline, good_triples, is_skew, separated_triples,
};
use graph_containers::oracles::EnumBudget;

fn main() -> graph_containers::Result<()> {
    for n in [2, 4, 6] {
        let c = construction_78(n)?;
        let last: u64 = (c.count() - 1u32).try_into().expect("small count");
        let sample = c.family_at(last);
        println!(
            "n={n}: {} families, the last has {} pairs, skew {}",
            c.count(),
            sample.len(),
            is_skew(&sample, n / 2, n / 2)
        );
    }
    print!("{}", construction_78(2)?.full_family().to_text());

    for t in good_triples(4, 2)? {
        println!("{t} pairs with {}", t.partner());
    }
    let r = good_triple_pipeline(4, 2, &EnumBudget::default())?;
    println!(
        "{} distinct maximal sets from triples, {} transversal bound, mis {}",
        r.distinct_maximal, r.transversal_lower_bound, r.mis
    );

    let far = separated_triples(9, 4, 4, 4)?;
    println!("{} non-interfering triples at (9,4)", far.len());
    Ok(())
}
