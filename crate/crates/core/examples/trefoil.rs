// The 5x5 trefoil: integer homology, hat reduction, Alexander polynomial.

use gridfloer::{alexander_polynomial, bigraded_homology, hat_reduction, GridComplex, GridDiagram};

pub fn run_example() -> (usize, usize, String) {
    let g = GridDiagram::new(vec![2, 3, 4, 0, 1], vec![0, 1, 2, 3, 4]).unwrap();
    let c = GridComplex::new(g.clone());
    let tilde = bigraded_homology(&c);
    println!(
        "tilde: rank {}, torsion-free {}",
        tilde.total_rank(),
        tilde.is_torsion_free()
    );
    println!("tilde poincare {}", tilde.poincare);
    let hat = hat_reduction(&tilde, &c.comps).unwrap();
    for (k, p) in &hat.pieces {
        println!(
            "hat M={} A={} rank {}",
            k.maslov,
            k.alexander2[0] / 2,
            p.free_rank
        );
    }
    let delta = alexander_polynomial(&g).unwrap().to_string();
    println!("alexander {delta}");
    (tilde.total_rank(), hat.total_rank(), delta)
}

#[allow(dead_code)]
fn main() {
    run_example();
}
