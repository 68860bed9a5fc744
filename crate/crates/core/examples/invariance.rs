// Random grid moves leave the hat Poincaré polynomial unchanged.

use gridfloer::moves::{apply_move, invariance_report, random_grid, random_move};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn run_example() -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let start = random_grid(4, &mut rng);
    let mut g = start.clone();
    let mut failures = 0;
    for _ in 0..5 {
        let m = random_move(&g, &mut rng);
        let h = apply_move(&g, &m).unwrap();
        let rep = invariance_report(&start, &h).unwrap();
        println!(
            "{m:<24} n={} hat {} same {}",
            h.size(),
            rep.hat_second.poincare,
            rep.passed()
        );
        failures += usize::from(!rep.passed());
        g = h;
    }
    failures
}

#[allow(dead_code)]
fn main() {
    run_example();
}
