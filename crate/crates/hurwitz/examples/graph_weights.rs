//! The leveled graphs behind one Hurwitz number, class by class.
//!
//! Enumerates every monodromy graph for H_4^1((4), (2,2)), groups the
//! graphs into isomorphism classes, and prints both weight rules next to
//! each other: the per-vertex factor form and the closed form
//! (interior edge product) / |Aut|. The two rules agree graph by graph and
//! the class subtotals sum to the Hurwitz number.
//!
//! ```sh
//! cargo run --example graph_weights
//! ```

use hurwitz::monodromy::{enumerate_monodromy_graphs, GraphWeighting, MonodromyGraph};
use hurwitz::{rational_string, HurwitzInput, Partition, Rational};
use num::Zero;
use std::collections::BTreeMap;

fn main() -> hurwitz::Result<()> {
    let input = HurwitzInput::new(1, Partition::new(vec![4])?, Partition::new(vec![2, 2])?)?;
    let graphs = enumerate_monodromy_graphs(&input);
    println!(
        "{} leveled graphs for H_{}^{}(({}), ({})) over {} levels\n",
        graphs.len(),
        input.degree(),
        input.genus,
        input.eta,
        input.nu,
        input.s
    );

    let mut classes: BTreeMap<String, Vec<&MonodromyGraph>> = BTreeMap::new();
    for g in &graphs {
        classes.entry(g.class_key()).or_default().push(g);
    }

    let mut total = Rational::zero();
    for (idx, (_, members)) in classes.iter().enumerate() {
        let rep = members[0];
        let subtotal: Rational = members
            .iter()
            .map(|g| g.weight(GraphWeighting::VertexFactors))
            .sum();
        // Same subtotal under the closed form; the assert keeps the two
        // rules honest against each other.
        let closed: Rational = members
            .iter()
            .map(|g| g.weight(GraphWeighting::EdgeProduct))
            .sum();
        assert_eq!(subtotal, closed);
        println!(
            "class {}: {} level orders, forks {}, wieners {}, interior edge product {}, |Aut| {}, subtotal {}",
            idx + 1,
            members.len(),
            rep.balanced_fork_count(),
            rep.wiener_count(),
            rep.interior_edge_product(),
            rep.automorphism_size(),
            rational_string(&subtotal)
        );
        total += subtotal;
    }
    println!("\ntotal: {}", rational_string(&total));
    Ok(())
}
