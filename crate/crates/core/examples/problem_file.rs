use toric_degen::problem::{cusp_family, dump, load_str, to_json};

fn main() -> toric_degen::Result<()> {
    let text = to_json(&cusp_family(8)?);
    println!("{text}");
    let problem = load_str(&text)?;
    let system = problem.system.clone().certify()?;
    println!("dimension {}", system.certificate()?.dimension());
    let again = load_str(&to_json(&dump(&problem.system, &problem.base)))?;
    assert_eq!(again.system.polynomials(), problem.system.polynomials());
    match load_str(r#"{"field": "rational", "variables": [{"name": "x", "weight": ["0"]}]}"#) {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
