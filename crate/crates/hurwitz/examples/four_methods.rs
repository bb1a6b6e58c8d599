//! One double Hurwitz number, computed four independent ways.
//!
//! The target is the count of degree-4 genus-1 covers of the sphere, fully
//! ramified over 0, with two double points over infinity, and simple
//! branching over s = 2g - 2 + 1 + 2 = 3 further fixed points. Each cover
//! counts with weight 1/|Aut|.
//!
//! ```sh
//! cargo run --example four_methods
//! ```

use hurwitz::cutjoin::hurwitz_cutjoin;
use hurwitz::monodromy::{hurwitz_graphsum, GraphWeighting};
use hurwitz::oracle::{hurwitz_bruteforce, OracleConfig};
use hurwitz::tropical::tropical_degree;
use hurwitz::{rational_string, HurwitzInput, Partition};

fn main() -> hurwitz::Result<()> {
    let eta = Partition::new(vec![4])?;
    let nu = Partition::new(vec![2, 2])?;
    let input = HurwitzInput::new(1, eta, nu)?;
    println!(
        "H_{}^{}(({}), ({})), s = {} simple branch points",
        input.degree(),
        input.genus,
        input.eta,
        input.nu,
        input.s
    );

    let brute = hurwitz_bruteforce(&input, &OracleConfig::default())?;
    println!("  symmetric group enumeration   {}", rational_string(&brute));

    let cj = hurwitz_cutjoin(&input)?;
    println!("  cut-and-join recursion        {}", rational_string(&cj));

    let vf = hurwitz_graphsum(&input, GraphWeighting::VertexFactors)?;
    println!("  graph sum, vertex factors     {}", rational_string(&vf));
    let ep = hurwitz_graphsum(&input, GraphWeighting::EdgeProduct)?;
    println!("  graph sum, edge products      {}", rational_string(&ep));

    // The tropical route takes one signed degree multiset: negative entries
    // are the profile over 0, positive entries the profile over infinity.
    let delta: Vec<i64> = input
        .eta
        .parts()
        .iter()
        .map(|&p| -(p as i64))
        .chain(input.nu.parts().iter().map(|&p| p as i64))
        .collect();
    let trop = tropical_degree(input.genus, &delta)?;
    println!("  tropical branch map degree    {}", rational_string(&trop));

    assert!(brute == cj && cj == vf && vf == ep && ep == trop);
    println!("all four methods agree");
    Ok(())
}
