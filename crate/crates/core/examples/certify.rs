//! Certify y^2 = x^3 + u, u^2 = x^6 y as an overweight deformation.

use toric_degen::deformation::{DeformationSystem, EquationKind};
use toric_degen::parser::parse_poly;
use toric_degen::{Field, Value, WeightedRing};

fn main() -> toric_degen::Result<()> {
    let ring = WeightedRing::with_weights(
        Field::Rational,
        &[("x", Value::int(4)), ("y", Value::int(6)), ("u", Value::int(15))],
    )?;
    let system = DeformationSystem::from_polynomials(
        &ring,
        vec![
            (parse_poly("y^2 - x^3 - u", &ring)?, EquationKind::Fi { trailing: Some(2) }),
            (parse_poly("u^2 - x^6*y", &ring)?, EquationKind::Fq),
        ],
    )?
    .certify()?;
    let cert = system.certificate()?;
    for eq in system.equations() {
        println!("{}  head {}  tail {}", eq.poly(), eq.head_poly(), eq.tail());
    }
    println!("dimension {}", cert.dimension());
    println!("relation lattice rank {}", cert.lattice_rank());
    println!("heads: {:?}", system.heads().vectors());
    println!("standard basis:");
    for g in cert.standard_basis() {
        println!("  {g}");
    }
    Ok(())
}
