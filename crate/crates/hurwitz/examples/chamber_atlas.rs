//! The genus-0 wall-and-chamber structure for fixed profile lengths.
//!
//! With k parts over 0 and l parts over infinity, the double Hurwitz number
//! is a polynomial in the parts on each chamber of a hyperplane arrangement
//! inside the balance hyperplane. This example builds the full atlas for
//! (k, l) = (2, 2): the walls, every chamber with a witness point and its
//! polynomial, and a spot check of each polynomial against the cut-and-join
//! value at the witness denominator-cleared to a lattice point.
//!
//! ```sh
//! cargo run --example chamber_atlas
//! ```

use hurwitz::chambers::ChamberAtlas;
use hurwitz::cutjoin::hurwitz_cutjoin;
use hurwitz::{rational_string, HurwitzInput, Partition};

fn main() -> hurwitz::Result<()> {
    let atlas = ChamberAtlas::new(2, 2)?;
    println!(
        "(k, l) = ({}, {}): {} directed trees, {} walls, {} chambers\n",
        atlas.k(),
        atlas.l(),
        atlas.trees().len(),
        atlas.walls().len(),
        atlas.chambers().len()
    );
    for (i, w) in atlas.walls().iter().enumerate() {
        println!("wall {}: {}", i + 1, w);
    }
    println!();

    for chamber in atlas.chambers() {
        let signs: String = chamber
            .signs()
            .iter()
            .map(|&s| if s { '+' } else { '-' })
            .collect();
        let poly = atlas.chamber_polynomial(chamber);
        let (wmu, wnu) = chamber.witness();
        let wmu: Vec<String> = wmu.iter().map(rational_string).collect();
        let wnu: Vec<String> = wnu.iter().map(rational_string).collect();
        println!(
            "chamber [{}]: H = {},  witness mu = ({}), nu = ({})",
            signs,
            poly,
            wmu.join(", "),
            wnu.join(", ")
        );
    }

    // Polynomial vs direct computation at interior lattice points.
    println!();
    for (mu, nu) in [([3, 1], [2, 2]), ([4, 2], [5, 1]), ([1, 3], [2, 2]), ([9, 1], [4, 6])] {
        let chamber = atlas.chamber_of(&mu, &nu)?;
        let value = atlas.chamber_polynomial(&chamber).evaluate_ints(&mu, &nu);
        let direct = hurwitz_cutjoin(&HurwitzInput::new(
            0,
            Partition::new(mu.to_vec())?,
            Partition::new(nu.to_vec())?,
        )?)?;
        // The polynomial counts covers with marked preimages; the plain
        // count divides by both profile automorphism groups.
        let marked = atlas.marked_h0(&mu, &nu)?;
        assert_eq!(value, marked);
        let aut = Partition::new(mu.to_vec())?.aut_count() * Partition::new(nu.to_vec())?.aut_count();
        assert_eq!(value, direct * hurwitz::rat(aut));
        println!(
            "mu = {:?}, nu = {:?}: marked count {} from the chamber polynomial",
            mu,
            nu,
            rational_string(&marked)
        );
    }
    Ok(())
}
