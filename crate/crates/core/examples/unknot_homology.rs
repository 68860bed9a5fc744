// Tilde and hat homology of the 2x2 unknot.

use gridfloer::{alexander_polynomial, bigraded_homology, hat_reduction, GridComplex, GridDiagram};

pub fn run_example() -> (usize, usize, String) {
    let g = GridDiagram::new(vec![1, 0], vec![0, 1]).unwrap();
    let c = GridComplex::new(g.clone());
    let tilde = bigraded_homology(&c);
    for (k, p) in &tilde.pieces {
        println!(
            "tilde M={} A2={:?} rank {}",
            k.maslov, k.alexander2, p.free_rank
        );
    }
    let hat = hat_reduction(&tilde, &c.comps).unwrap();
    println!("hat poincare {}", hat.poincare);
    let delta = alexander_polynomial(&g).unwrap().to_string();
    println!("alexander {delta}");
    (tilde.total_rank(), hat.total_rank(), delta)
}

#[allow(dead_code)]
fn main() {
    run_example();
}
