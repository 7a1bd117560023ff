use toric_degen::lattice::{integer_kernel, integer_weight_matrix, is_saturated_basis, smith_diagonal};
use toric_degen::Value;

fn main() {
    let weights = [Value::int(8), Value::int(12), Value::int(26), Value::int(55)];
    let a = integer_weight_matrix(&weights);
    let kernel = integer_kernel(&a, weights.len());
    println!("kernel of {a:?}:");
    for v in &kernel {
        println!("  {v:?}");
    }
    println!("saturated: {}", is_saturated_basis(&kernel));
    let doubled: Vec<Vec<i64>> = kernel.iter().map(|v| v.iter().map(|x| 2 * x).collect()).collect();
    println!("smith diagonal of twice the kernel: {:?}", smith_diagonal(&doubled));
}
