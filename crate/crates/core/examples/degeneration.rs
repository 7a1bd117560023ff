use num_rational::BigRational;
use toric_degen::degeneration::{degenerate, specialize, SpecializeAt, Specialization};
use toric_degen::problem::{build, cusp_family};

fn main() -> toric_degen::Result<()> {
    for s in [6, 7, 9] {
        let system = build(cusp_family(s)?)?.system.certify()?;
        let family = degenerate(&system)?;
        println!("s = {s}:\n{family}");
        if let Specialization::Toric(ideal) = specialize(&family, &SpecializeAt::Zero)? {
            println!("  v = 0: {:?}", ideal.polynomials().iter().map(|p| p.to_string()).collect::<Vec<_>>());
        }
        let two = BigRational::from_integer(2.into());
        if let Specialization::System(fiber) = specialize(&family, &SpecializeAt::Value(two))? {
            let certified = fiber.clone().certify().is_ok();
            println!("  v = 2: {:?} certified {certified}", fiber.polynomials().iter().map(|p| p.to_string()).collect::<Vec<_>>());
        }
    }
    Ok(())
}
