//! Tropical covers: combinatorial types, their linear algebra, and the
//! branch map degree.
//!
//! First part: the degree-4 genus-1 types with ends (-4, 2, 2), one per
//! unlabeled isomorphism class, with cycle matrix, position determinant,
//! lattice index, vertex orderings and automorphisms, and the contribution
//! n * (product of bounded weights) / |Aut| each class adds to the degree.
//!
//! Second part: a concrete genus-0 cover with chosen edge lengths, its
//! branch point images, and the number of vertex labelings compatible with
//! a generic target configuration.
//!
//! ```sh
//! cargo run --example tropical_types
//! ```

use hurwitz::monodromy::enumerate_monodromy_graphs;
use hurwitz::tropical::{
    automorphism_count, branch_image, build_cycle_matrix, class_contribution,
    cycle_lattice_index, fiber_over_point, group_into_classes, linear_extension_count,
    position_system_determinant, tropical_degree, TropicalCurveInstance,
};
use hurwitz::{rat, ratio, rational_string, HurwitzInput, Partition, Rational};
use num::Zero;

fn main() -> hurwitz::Result<()> {
    let delta = [-4i64, 2, 2];
    println!("combinatorial types for genus 1, ends {delta:?}\n");
    let input = HurwitzInput::new(1, Partition::new(vec![4])?, Partition::new(vec![2, 2])?)?;
    let classes = group_into_classes(&enumerate_monodromy_graphs(&input));

    let mut degree = Rational::zero();
    for (i, class) in classes.iter().enumerate() {
        let t = &class.representative;
        let edges: Vec<String> = t
            .edges()
            .iter()
            .map(|e| format!("{}->{} w{}", e.from, e.to, e.weight))
            .collect();
        let contribution = class_contribution(class)?;
        println!("class {}: edges [{}]", i + 1, edges.join(", "));
        for row in build_cycle_matrix(t) {
            let entries: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            println!("  cycle row ({})", entries.join(", "));
        }
        println!(
            "  position det {}, lattice index {}, orderings {}, |Aut| {}, contribution {}",
            position_system_determinant(t),
            cycle_lattice_index(t)?,
            linear_extension_count(t)?,
            automorphism_count(t),
            rational_string(&contribution)
        );
        degree += contribution;
    }
    println!("\nbranch map degree: {}", rational_string(&degree));
    assert_eq!(degree, tropical_degree(1, &delta)?);

    // A concrete genus-0 cover: trees have no loop conditions, so any
    // positive lengths give a point of the cell.
    println!("\na concrete cover with ends (-3, -1, 2, 2), genus 0");
    let input = HurwitzInput::new(0, Partition::new(vec![3, 1])?, Partition::new(vec![2, 2])?)?;
    let classes = group_into_classes(&enumerate_monodromy_graphs(&input));
    let class = &classes[0];
    let t = class.representative.clone();
    let lengths: Vec<Rational> = (0..t.edges().len()).map(|i| ratio(i as i64 + 1, 2)).collect();
    let curve = TropicalCurveInstance::new(t, rat(0), lengths)?;
    let images = branch_image(&curve);
    let shown: Vec<String> = images.iter().map(rational_string).collect();
    println!("  branch point images: ({})", shown.join(", "));

    // Fibers over any generic point have the same cardinality: one cover
    // per compatible vertex ordering.
    let generic: Vec<Rational> = (0..images.len()).map(|i| rat(3 * i as i64 + 1)).collect();
    let fiber = fiber_over_point(class, &generic)?;
    println!(
        "  labelings over a generic point: {} (= orderings of the class: {})",
        fiber,
        linear_extension_count(&class.representative)?
    );
    Ok(())
}
