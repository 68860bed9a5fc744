// The explicit chain isomorphisms for the four cyclic permutations.

use gridfloer::moves::{
    apply_move, cyclic_column_map, cyclic_grading_shift, o_variable_map, phi_cyclic_chain,
    Direction, MoveSpec,
};
use gridfloer::{ChainElement, Flavor, GridComplex, GridDiagram, Permutation, SpinElement};

pub fn run_example() -> bool {
    let g = GridDiagram::new(vec![2, 0, 3, 1], vec![0, 2, 1, 3]).unwrap();
    let before = GridComplex::new(g.clone());
    let mut all = true;
    for d in Direction::ALL {
        let moved = apply_move(&g, &MoveSpec::Cyclic(d)).unwrap();
        let after = GridComplex::new(moved.clone());
        let vars = o_variable_map(&before, &after, &cyclic_column_map(d, 4));
        let commutes = Permutation::all(4).iter().all(|x| {
            let s = SpinElement::section(x);
            let lhs = phi_cyclic_chain(d, &before.spin_differential(&s, Flavor::Minus))
                .rename_variables(&vars);
            let rhs = after.apply(
                &phi_cyclic_chain(d, &ChainElement::generator(&s, 4)),
                Flavor::Minus,
            );
            lhs == rhs
        });
        let shift = cyclic_grading_shift(&before, &after, d);
        println!(
            "{d:?}: O={:?} X={:?} commutes {commutes}, shift {shift:?}",
            moved.o_rows(),
            moved.x_rows()
        );
        all &= commutes && shift.is_some();
    }
    all
}

#[allow(dead_code)]
fn main() {
    run_example();
}
