use toric_degen::problem::load_path;
use toric_degen::valuation::{graded_algebra, value_of};
use toric_degen::Value;

fn main() -> toric_degen::Result<()> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/problems/s7.json");
    let problem = load_path(path)?;
    let system = problem.system.clone().certify()?;
    for f in &problem.elements {
        let r = value_of(f, &system)?;
        println!("v({f}) = {}  via {}", r.value, r.witness);
    }
    println!("graded pieces up to 20:");
    for slice in graded_algebra(&system, &Value::int(20), None)? {
        println!("  {:>3}  dim {}  {}", slice.degree.to_string(), slice.dimension(), system.ring().format_monomial(slice.representative()));
    }
    Ok(())
}
