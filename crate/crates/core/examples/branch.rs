use num_rational::BigRational;
use toric_degen::approximation::{BranchData, BranchSystem, Precision};
use toric_degen::parser::parse_poly;
use toric_degen::Field;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn main() -> toric_degen::Result<()> {
    let data = BranchData {
        field: Field::Rational,
        gammas: vec![q(1, 1), q(3, 2), q(13, 4), q(55, 8)],
        n: vec![2, 2, 2],
        digits: vec![vec![3], vec![5, 1], vec![9, 1, 1]],
        tails: vec![String::new(), "x^2*y*u2".into(), String::new()],
    };
    let branch = BranchSystem::new(data)?;
    for eq in branch.system().equations() {
        println!("{}", eq.poly());
    }
    for (i, p) in branch.key_polynomials().iter().enumerate() {
        println!("p{} = {p}", i + 1);
    }
    println!("orders {:?}", branch.betas());
    let p2 = &branch.key_polynomials()[1];
    let h = &(p2 * p2) * &parse_poly("x + y", branch.ring())?;
    for level in 1..=branch.genus() {
        let c = branch.composed_value(&h, level, Precision::Auto)?;
        println!("level {level}: p{level}^{} times a unit of value {} (T = {})", c.n, c.gamma, c.precision);
    }
    Ok(())
}
