// Smith normal form with transforms, and homology of a small chain complex.

use gridfloer::snf::{invariant_factors, mat_mul, smith_normal_form, IntegerMatrix};
use num_bigint::BigInt;

pub fn run_example() -> Vec<BigInt> {
    let a = IntegerMatrix::from_dense(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
    let s = smith_normal_form(&a);
    let d = mat_mul(&mat_mul(&s.left, &a.to_dense()), &s.right);
    println!("invariant factors {:?}", s.diagonal);
    for row in &d {
        println!("{row:?}");
    }
    // boundary of a triangle in Z^3 -> Z^3, edges to vertices
    let boundary = IntegerMatrix::from_dense(&[vec![-1, 0, 1], vec![1, -1, 0], vec![0, 1, -1]]);
    let f = invariant_factors(&boundary);
    println!(
        "triangle boundary rank {}, H0 free rank {}",
        f.len(),
        3 - f.len()
    );
    s.diagonal
}

#[allow(dead_code)]
fn main() {
    run_example();
}
