//! Bigraded integer homology of the associated graded (tilde) complex, the
//! hat reduction, and the Alexander polynomial.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;
use serde_json::{json, Value};
use thiserror::Error;

use crate::complex::GridComplex;
use crate::grid::{Bigrading, ComponentData, GridDiagram};
use crate::laurent::LaurentPoly;
use crate::snf::{invariant_factors, IntegerMatrix};
use crate::spin::{Permutation, SpinElement};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error("Poincaré polynomial is not divisible by (1 + q^-1 t{component}^-1)^{power}")]
    NotDivisible { component: usize, power: usize },
    #[error("hat reduction expects a tilde summary")]
    WrongFlavor,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HomologyFlavor {
    Tilde,
    Hat,
}

impl HomologyFlavor {
    pub fn name(self) -> &'static str {
        match self {
            HomologyFlavor::Tilde => "tilde",
            HomologyFlavor::Hat => "hat",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyPiece {
    pub free_rank: usize,
    /// Invariant factors greater than one.
    pub torsion: Vec<BigInt>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologySummary {
    pub flavor: HomologyFlavor,
    pub components: usize,
    /// Only bigradings with nonzero homology are listed.
    pub pieces: BTreeMap<Bigrading, HomologyPiece>,
    /// In `q` (Maslov) and `t_1 … t_l` (Alexander).
    pub poincare: LaurentPoly,
    /// `poincare` at `q = −1`.
    pub euler: LaurentPoly,
}

fn alexander_names(l: usize) -> Vec<String> {
    if l == 1 {
        vec!["t".to_string()]
    } else {
        (1..=l).map(|i| format!("t{i}")).collect()
    }
}

/// Empty Poincaré polynomial in `q, t_1 … t_l` (Alexander exponents halved).
pub fn poincare_zero(l: usize) -> LaurentPoly {
    let mut names = vec!["q".to_string()];
    names.extend(alexander_names(l));
    let mut dens = vec![1];
    dens.extend(std::iter::repeat_n(2, l));
    LaurentPoly::zero(names, dens)
}

impl HomologySummary {
    fn from_pieces(
        flavor: HomologyFlavor,
        components: usize,
        pieces: BTreeMap<Bigrading, HomologyPiece>,
    ) -> Self {
        let mut poincare = poincare_zero(components);
        for (g, p) in &pieces {
            let mut e = vec![g.maslov];
            e.extend_from_slice(&g.alexander2);
            poincare.add_term(e, p.free_rank as i64);
        }
        let euler = poincare.eval_first_at_minus_one();
        Self {
            flavor,
            components,
            pieces,
            poincare,
            euler,
        }
    }

    /// Pieces read off a Poincaré polynomial, with no torsion.
    fn from_poincare(flavor: HomologyFlavor, components: usize, poincare: LaurentPoly) -> Self {
        let pieces = poincare
            .terms()
            .map(|(e, c)| {
                (
                    Bigrading {
                        maslov: e[0],
                        alexander2: e[1..].to_vec(),
                    },
                    HomologyPiece {
                        free_rank: c as usize,
                        torsion: Vec::new(),
                    },
                )
            })
            .collect();
        let euler = poincare.eval_first_at_minus_one();
        Self {
            flavor,
            components,
            pieces,
            poincare,
            euler,
        }
    }

    pub fn total_rank(&self) -> usize {
        self.pieces.values().map(|p| p.free_rank).sum()
    }

    pub fn is_torsion_free(&self) -> bool {
        self.pieces.values().all(|p| p.torsion.is_empty())
    }

    /// The JSON report; keys are emitted in sorted order.
    pub fn to_json(&self) -> Value {
        let pieces: Vec<Value> = self
            .pieces
            .iter()
            .map(|(g, p)| {
                let torsion: Vec<Value> = p
                    .torsion
                    .iter()
                    .map(|t| match i64::try_from(t) {
                        Ok(v) => json!(v),
                        Err(_) => json!(t.to_string()),
                    })
                    .collect();
                json!({
                    "alexander2": g.alexander2,
                    "free_rank": p.free_rank,
                    "maslov": g.maslov,
                    "torsion": torsion,
                })
            })
            .collect();
        json!({
            "euler": self.euler.to_string(),
            "flavor": self.flavor.name(),
            "pieces": pieces,
            "poincare": self.poincare.to_string(),
        })
    }
}

/// Generators grouped by bigrading, in a fixed order within each group.
pub struct GradedGenerators {
    pub by_grading: BTreeMap<Bigrading, Vec<Permutation>>,
}

impl GradedGenerators {
    pub fn new(complex: &GridComplex, generators: Vec<Permutation>) -> Self {
        let mut by_grading: BTreeMap<Bigrading, Vec<Permutation>> = BTreeMap::new();
        for x in generators {
            by_grading
                .entry(complex.grid.bigrading(&x, &complex.comps))
                .or_default()
                .push(x);
        }
        Self { by_grading }
    }
}

/// Matrix of the graded differential from the piece at `source` to the piece
/// one Maslov degree lower.
fn graded_matrix(
    complex: &GridComplex,
    source: &[Permutation],
    target: &[Permutation],
) -> IntegerMatrix {
    let index: HashMap<&Permutation, usize> =
        target.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let mut triplets = Vec::new();
    for (col, x) in source.iter().enumerate() {
        let d = complex.graded_differential(&SpinElement::section(x));
        for (y, p) in d.terms() {
            let row = *index
                .get(y)
                .expect("graded differential lowers Maslov by one");
            triplets.push((row, col, p.terms().map(|(_, c)| c).sum()));
        }
    }
    IntegerMatrix::from_triplets(target.len(), source.len(), triplets)
}

/// Homology of the tilde complex with generators enumerated in `order`.
pub fn bigraded_homology_with_order(
    complex: &GridComplex,
    order: Vec<Permutation>,
) -> HomologySummary {
    let graded = GradedGenerators::new(complex, order);
    let empty = Vec::new();
    // invariant factors of d: C_(m,A) → C_(m-1,A), keyed by the source grading
    let factors: HashMap<Bigrading, Vec<BigInt>> = graded
        .by_grading
        .par_iter()
        .map(|(g, gens)| {
            let target_key = Bigrading {
                maslov: g.maslov - 1,
                alexander2: g.alexander2.clone(),
            };
            let target = graded.by_grading.get(&target_key).unwrap_or(&empty);
            let m = graded_matrix(complex, gens, target);
            (g.clone(), invariant_factors(&m))
        })
        .collect();
    let mut pieces = BTreeMap::new();
    for (g, gens) in &graded.by_grading {
        let out_rank = factors[g].len();
        let above = Bigrading {
            maslov: g.maslov + 1,
            alexander2: g.alexander2.clone(),
        };
        let incoming = factors.get(&above).cloned().unwrap_or_default();
        let free_rank = gens.len() - out_rank - incoming.len();
        let torsion: Vec<BigInt> = incoming.into_iter().filter(|d| !d.is_one()).collect();
        if free_rank > 0 || !torsion.is_empty() {
            pieces.insert(g.clone(), HomologyPiece { free_rank, torsion });
        }
    }
    HomologySummary::from_pieces(HomologyFlavor::Tilde, complex.comps.count, pieces)
}

/// Homology of the associated graded complex, split by bigrading.
pub fn bigraded_homology(complex: &GridComplex) -> HomologySummary {
    bigraded_homology_with_order(complex, Permutation::all(complex.size()))
}

/// Divides the tilde Poincaré polynomial by `∏_i (1 + q⁻¹ t_i⁻¹)^{n_i − 1}`.
pub fn hat_reduction(
    h: &HomologySummary,
    comps: &ComponentData,
) -> Result<HomologySummary, HomologyError> {
    if h.flavor != HomologyFlavor::Tilde {
        return Err(HomologyError::WrongFlavor);
    }
    let mut p = h.poincare.clone();
    for (i, &rows) in comps.rows_per_component.iter().enumerate() {
        let mut m = vec![0; comps.count + 1];
        m[0] = -1;
        m[i + 1] = -2;
        for _ in 1..rows {
            p = p.divide_one_plus(&m).ok_or(HomologyError::NotDivisible {
                component: i + 1,
                power: rows - 1,
            })?;
        }
    }
    if p.terms().any(|(_, c)| c < 0) {
        return Err(HomologyError::NotDivisible {
            component: 0,
            power: 0,
        });
    }
    Ok(HomologySummary::from_poincare(
        HomologyFlavor::Hat,
        comps.count,
        p,
    ))
}

/// Convenience: tilde homology followed by the hat reduction.
pub fn hat_homology(complex: &GridComplex) -> Result<HomologySummary, HomologyError> {
    hat_reduction(&bigraded_homology(complex), &complex.comps)
}

/// The Euler characteristic of hat homology. For knots it is normalized to
/// be symmetric under `t ↦ t⁻¹` with `Δ(1) = 1`; for links it is returned as
/// computed, with the sign fixed so the leading coefficient is positive.
pub fn alexander_polynomial(grid: &GridDiagram) -> Result<LaurentPoly, HomologyError> {
    let complex = GridComplex::new(grid.clone());
    let hat = hat_homology(&complex)?;
    Ok(normalize_alexander(&hat.euler))
}

pub fn normalize_alexander(euler: &LaurentPoly) -> LaurentPoly {
    if euler.is_zero() {
        return euler.clone();
    }
    if euler.nvars() == 1 {
        let lo = euler.min_exponent(0).unwrap();
        let hi = euler.max_exponent(0).unwrap();
        // the centre (lo + hi)/2 in stored units
        let centred = euler.shift(&[-(lo + hi) / 2]);
        let sign = if centred.sum_of_coefficients() < 0 {
            -1
        } else {
            1
        };
        return centred.scale(sign);
    }
    let lead = euler.terms().next_back().map(|(_, c)| c).unwrap();
    euler.scale(lead.signum())
}
