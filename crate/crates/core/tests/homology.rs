mod common;

use std::collections::BTreeMap;

use gridfloer::homology::bigraded_homology_with_order;
use gridfloer::moves::{
    apply_move, invariance_report, random_grid, Axis, Corner, MarkerKind, MoveSpec,
};
use gridfloer::{
    alexander_polynomial, bigraded_homology, hat_homology, Bigrading, GridComplex, GridDiagram,
    Permutation,
};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn free_by_maslov(g: &GridDiagram) -> (BTreeMap<i64, usize>, bool) {
    let h = bigraded_homology(&GridComplex::new(g.clone()));
    let mut out = BTreeMap::new();
    for (k, p) in &h.pieces {
        if p.free_rank > 0 {
            *out.entry(k.maslov).or_insert(0) += p.free_rank;
        }
    }
    (out, h.is_torsion_free())
}

#[test]
fn generator_order_does_not_matter() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut grids = GridDiagram::all(3);
    grids.extend((0..10).map(|_| random_grid(4, &mut rng)));
    for g in grids {
        let c = GridComplex::new(g);
        let base = bigraded_homology(&c);
        let mut order = Permutation::all(c.size());
        order.shuffle(&mut rng);
        assert_eq!(bigraded_homology_with_order(&c, order), base);
    }
}

#[test]
fn unknot_pieces() {
    let h = bigraded_homology(&GridComplex::new(common::unknot2()));
    assert!(h.is_torsion_free());
    let got: Vec<(i64, Vec<i64>, usize)> = h
        .pieces
        .iter()
        .map(|(k, p)| (k.maslov, k.alexander2.clone(), p.free_rank))
        .collect();
    assert_eq!(got, vec![(-1, vec![-2], 1), (0, vec![0], 1)]);
    let hat = hat_homology(&GridComplex::new(common::unknot2())).unwrap();
    assert_eq!(hat.total_rank(), 1);
    assert!(hat.pieces.contains_key(&Bigrading {
        maslov: 0,
        alexander2: vec![0]
    }));
    let delta = alexander_polynomial(&common::unknot2()).unwrap();
    assert_eq!(
        delta
            .terms()
            .map(|(e, c)| (e.clone(), c))
            .collect::<Vec<_>>(),
        vec![(vec![0], 1)]
    );
}

#[test]
fn trefoil_matches_mod2_oracle() {
    let g = common::trefoil();
    let (free, torsion_free) = free_by_maslov(&g);
    assert!(torsion_free);
    assert_eq!(free, common::mod2_tilde_ranks(&g));
    // rank of the hat group times 2^(n-1)
    assert_eq!(free.values().sum::<usize>(), 3 * 16);

    let hat = hat_homology(&GridComplex::new(g.clone())).unwrap();
    assert_eq!(hat.total_rank(), 3);
    let alex: Vec<i64> = hat.pieces.keys().map(|k| k.alexander2[0]).collect();
    assert_eq!(alex, vec![-2, 0, 2]);

    let delta = alexander_polynomial(&g).unwrap();
    let terms: Vec<(Vec<i64>, i64)> = delta.terms().map(|(e, c)| (e.clone(), c)).collect();
    assert_eq!(terms, vec![(vec![-2], 1), (vec![0], -1), (vec![2], 1)]);
}

#[test]
fn hopf_link() {
    let g = common::hopf();
    let c = GridComplex::new(g.clone());
    assert_eq!(c.comps.count, 2);
    let (free, torsion_free) = free_by_maslov(&g);
    assert!(torsion_free);
    assert_eq!(free, common::mod2_tilde_ranks(&g));
    let hat = hat_homology(&c).unwrap();
    assert_eq!(hat.total_rank(), 4);
}

#[test]
fn stabilized_unknot_gains_one_factor() {
    let g = common::unknot2();
    for empty in Corner::ALL {
        let s = MoveSpec::Stabilize {
            kind: MarkerKind::X,
            axis: Axis::Row,
            position: 0,
            empty,
        };
        let g2 = apply_move(&g, &s).unwrap();
        let rep = invariance_report(&g, &g2).unwrap();
        assert!(rep.passed(), "{s}");
        assert_eq!(rep.tilde_factor_component, Some(0), "{s}");
        assert_eq!(
            rep.tilde_second.total_rank(),
            2 * rep.tilde_first.total_rank()
        );
    }
}

#[test]
fn mod2_rank_bounds_free_rank() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..15 {
        let g = random_grid(4, &mut rng);
        let (free, torsion_free) = free_by_maslov(&g);
        let mod2 = common::mod2_tilde_ranks(&g);
        for (m, r) in &free {
            assert!(mod2.get(m).copied().unwrap_or(0) >= *r);
        }
        if torsion_free {
            assert_eq!(free, mod2);
        }
    }
}

#[test]
fn random_move_sequences_keep_hat_polynomial() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..8 {
        let n = rand::Rng::gen_range(&mut rng, 2..=4);
        let start = random_grid(n, &mut rng);
        let mut g = start.clone();
        let mut script = Vec::new();
        for _ in 0..6 {
            // keep the complexes small enough to be quick
            let m = loop {
                let m = gridfloer::moves::random_move(&g, &mut rng);
                if g.size() < 6 || !matches!(m, MoveSpec::Stabilize { .. }) {
                    break m;
                }
            };
            g = apply_move(&g, &m).unwrap();
            script.push(m);
        }
        let rep = invariance_report(&start, &g).unwrap();
        assert!(rep.passed(), "{script:?}");
        assert!(rep.alexander_shift.iter().all(|&s| s == 0));
    }
}
