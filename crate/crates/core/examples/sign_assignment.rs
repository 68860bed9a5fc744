// Signs from the cocycle: the axioms and both argument orders.

use gridfloer::complex::sign_formula;
use gridfloer::{CocycleOrder, GridComplex, GridDiagram, Permutation, SpinElement};

pub fn run_example() -> Vec<(CocycleOrder, usize, bool)> {
    let g = GridDiagram::new(vec![2, 3, 0, 1], vec![0, 1, 2, 3]).unwrap();
    let c = GridComplex::new(g);
    let mut out = Vec::new();
    for order in [CocycleOrder::BaseThenTrans, CocycleOrder::TransThenBase] {
        let rep = c.check_sign_axioms(|x, l| sign_formula(x, l, order));
        let same = Permutation::all(4).iter().all(|x| {
            c.differential_signed(x, order) == c.differential_minus(&SpinElement::section(x))
        });
        println!(
            "{order:?}: {} squares, {} vertical, {} horizontal annuli, {} violations, equals spin differential {same}",
            rep.square_checked,
            rep.vertical_checked,
            rep.horizontal_checked,
            rep.violations.len()
        );
        out.push((order, rep.violations.len(), same));
    }
    let x = Permutation::identity(4);
    println!(
        "d(id) = {}",
        c.differential_signed(&x, CocycleOrder::BaseThenTrans)
    );
    out
}

#[allow(dead_code)]
fn main() {
    run_example();
}
