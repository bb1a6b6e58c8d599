//! Cross-method verification over a whole range of inputs.
//!
//! Runs all four computation methods for every profile pair at degree
//! d <= 4 and genus g <= 2 and reports agreement. The same sweep is
//! available from the command line as `hurwitz verify --dmax 4 --gmax 2`.
//!
//! ```sh
//! cargo run --release --example cross_check
//! ```

use hurwitz::cli::verification_matrix;
use std::time::Instant;

fn main() -> hurwitz::Result<()> {
    let start = Instant::now();
    let rows = verification_matrix(4, 2, 10)?;
    let mut ok = 0;
    for row in &rows {
        if row.ok {
            ok += 1;
        } else {
            println!(
                "MISMATCH d = {}, g = {}, eta = {:?}, nu = {:?}: {:?}",
                row.d, row.genus, row.eta, row.nu, row.values
            );
        }
    }
    println!(
        "{}/{} inputs agree across all four methods ({:.2?})",
        ok,
        rows.len(),
        start.elapsed()
    );
    // A few sample values for the record.
    let joined = |p: &[u32]| {
        p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
    };
    for row in rows.iter().filter(|r| r.d == 4 && r.genus == 1).take(5) {
        println!(
            "  H_4^1(({}), ({})) = {}",
            joined(&row.eta),
            joined(&row.nu),
            row.values[0]
        );
    }
    assert!(rows.iter().all(|r| r.ok));
    Ok(())
}
