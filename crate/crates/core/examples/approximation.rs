//! Semivaluations of a plane branch along its truncations.

use toric_degen::approximation::{order_growth_report, stabilization, BranchSystem};
use toric_degen::parser::parse_poly;
use toric_degen::problem::load_path;

fn main() -> toric_degen::Result<()> {
    let problem = load_path(concat!(env!("CARGO_MANIFEST_DIR"), "/problems/branch.json"))?;
    let branch = BranchSystem::new(problem.branch.expect("branch block"))?;
    let ring = branch.ring();
    for text in ["y^2 - x^3", "(y^2 - x^3)^2 - x^5*y", "x*u2 + y^3", "u3"] {
        let f = parse_poly(text, ring)?;
        let s = stabilization(&f, branch.levels())?;
        let values: Vec<String> = s.values.iter().map(|v| v.to_string()).collect();
        println!("{text:<24} {}", values.join("  "));
    }
    let sets: Vec<_> = branch.levels().iter().map(|t| t.set().clone()).collect();
    for row in order_growth_report(branch.system(), &sets)?.rows {
        println!("B = {:?}  ord K_B = {:?}", row.set.to_vec(), row.order);
    }
    Ok(())
}
