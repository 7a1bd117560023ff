use toric_degen::groebner::{groebner_basis, leading_monomial, reduce, standard_basis, MonomialOrder};
use toric_degen::parser::parse_poly;
use toric_degen::{Field, Value, WeightedRing};

fn main() {
    let ring = WeightedRing::with_weights(Field::Rational, &[("x", Value::int(2)), ("y", Value::int(3))]).unwrap();
    let f = parse_poly("y^2 - x^3 - x^2*y", &ring).unwrap();
    let g = parse_poly("x*y^2 - x^4", &ring).unwrap();
    let order = MonomialOrder::WeightLex;
    let gb = groebner_basis(&[f.clone(), g.clone()], &order);
    for p in &gb {
        let lead = leading_monomial(p, &order).unwrap();
        println!("{p}  lead {}", ring.format_monomial(&lead));
    }
    println!("x^5 mod GB = {}", reduce(&parse_poly("x^5", &ring).unwrap(), &gb, &order));
    for p in standard_basis(&[f, g]) {
        println!("local: {p}");
    }
}
