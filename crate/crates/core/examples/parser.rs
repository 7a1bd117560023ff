use toric_degen::parser::{parse_expr, parse_poly};
use toric_degen::{Field, Value, WeightedRing};

fn main() {
    let ring = WeightedRing::with_weights(
        Field::Rational,
        &[("x", Value::int(1)), ("y", Value::ratio(3, 2)), ("u2", Value::ratio(13, 4))],
    )
    .unwrap();
    for text in ["(y^2 - x^3)^2 - x^5*y", "-x^2 + 1/3*u2", "2*(x + y)^3", "x^-1", "2x", "x + w"] {
        match parse_poly(text, &ring) {
            Ok(p) => println!("{text:<24} => {p}  (weight {})", p.weight()),
            Err(e) => println!("{text:<24} => {e}"),
        }
    }
    println!("{:?}", parse_expr("-x^2").unwrap());
}
