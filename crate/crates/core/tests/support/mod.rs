#![allow(dead_code)]

pub mod gen;
pub mod puiseux;

use std::path::PathBuf;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use toric_degen::approximation::BranchSystem;
use toric_degen::parser::parse_poly;
use toric_degen::poly::{random_polynomial, RandomShape};
use toric_degen::problem::{load_path, Problem};
use toric_degen::Polynomial;

pub fn problems_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("problems")
}

pub fn problem(name: &str) -> Problem {
    load_path(problems_dir().join(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

/// Every bundled problem file, by name.
pub fn bundled() -> Vec<(String, Problem)> {
    let mut names: Vec<String> = std::fs::read_dir(problems_dir())
        .expect("problems directory")
        .filter_map(|e| e.ok())
        .map(|e| e.file_name().to_string_lossy().into_owned())
        .filter(|n| n.ends_with(".json"))
        .collect();
    names.sort();
    names.into_iter().map(|n| (n.clone(), problem(&n))).collect()
}

/// Thirty elements of the bundled branch: structured ones, the key
/// polynomials and random ones in `x, y, u2`.
pub fn branch_panel(b: &BranchSystem) -> Vec<Polynomial> {
    let ring = b.ring();
    let mut out: Vec<Polynomial> = [
        "x", "y", "y^2 - x^3", "(y^2 - x^3)^2 - x^5*y", "x*y + y^2", "y^3 - x^4*y", "u2", "u3", "u2 - x^5",
        "y^2 - x^3 - u2", "u2^2 - x^5*y", "u2^2 - x^5*y - u3", "x*u2 + y^3", "y*u2 - x^6",
    ]
    .iter()
    .map(|s| parse_poly(s, ring).unwrap())
    .collect();
    out.extend(b.key_polynomials().iter().cloned());
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let shape = RandomShape {
        max_degree: 4,
        max_terms: 4,
        coeff_bound: 5,
        vars: Some(vec![0, 1, 2]),
    };
    while out.len() < 30 {
        let f = random_polynomial(ring, &mut rng, &shape);
        if !f.is_zero() {
            out.push(f);
        }
    }
    out
}
