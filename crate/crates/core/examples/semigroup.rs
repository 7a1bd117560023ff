use toric_degen::semigroup::{elements_up_to, euler_identity_check, membership, partition_count, SemigroupPresentation};
use toric_degen::Value;

fn main() -> toric_degen::Result<()> {
    let sg = SemigroupPresentation::from_ints(&[4, 6, 15])?;
    println!("relations: {:?}", sg.lattice().vectors());
    let elems: Vec<String> = elements_up_to(&sg, &Value::int(30), None)?.iter().map(|v| v.to_string()).collect();
    println!("elements up to 30: {}", elems.join(" "));
    for g in [13, 19, 21, 27] {
        match membership(&Value::int(g), &sg, None)? {
            Some(a) => println!("{g} = {a:?} . (4, 6, 15), {} ways", partition_count(&Value::int(g), &sg, None)?),
            None => println!("{g} is a gap"),
        }
    }
    let report = euler_identity_check(&sg, &Value::int(60))?;
    println!("generating function identity up to 60: {}", report.holds);
    Ok(())
}
