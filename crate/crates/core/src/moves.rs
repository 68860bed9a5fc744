//! Grid moves, the cyclic-permutation chain isomorphisms, and invariance
//! reports comparing homology across moves.

use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use thiserror::Error;

use crate::complex::{ChainElement, GridComplex};
use crate::grid::{GridDiagram, GridError};
use crate::homology::{bigraded_homology, hat_reduction, HomologyError, HomologySummary};
use crate::laurent::LaurentPoly;
use crate::spin::{sigma, Permutation, SpinElement};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("columns/rows {0} and {1} have interleaved segments")]
    IllegalCommutation(usize, usize),
    #[error("bad position: {0}")]
    BadPosition(String),
    #[error(transparent)]
    Grid(#[from] GridError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Up,
    Down,
    Left,
    Right,
}

impl Direction {
    pub const ALL: [Direction; 4] = [
        Direction::Up,
        Direction::Down,
        Direction::Left,
        Direction::Right,
    ];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MarkerKind {
    O,
    X,
}

/// How a stabilized marker is located: by its row or by its column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    Row,
    Column,
}

/// A cell of the 2×2 block created by a stabilization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Corner {
    NW,
    NE,
    SW,
    SE,
}

impl Corner {
    pub const ALL: [Corner; 4] = [Corner::NW, Corner::NE, Corner::SW, Corner::SE];

    fn opposite(self) -> Corner {
        match self {
            Corner::NW => Corner::SE,
            Corner::NE => Corner::SW,
            Corner::SW => Corner::NE,
            Corner::SE => Corner::NW,
        }
    }

    /// (column offset, row offset) inside the block.
    fn offset(self) -> (usize, usize) {
        match self {
            Corner::SW => (0, 0),
            Corner::SE => (1, 0),
            Corner::NW => (0, 1),
            Corner::NE => (1, 1),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MoveSpec {
    /// Shift every marker one step, wrapping around the torus.
    Cyclic(Direction),
    /// Exchange columns `i` and `i+1 (mod n)`.
    CommuteColumns(usize),
    /// Exchange rows `j` and `j+1 (mod n)`.
    CommuteRows(usize),
    /// Split the `kind` marker found in the given row or column into a 2×2
    /// block. `empty` is the block cell left without a marker; the opposite
    /// cell receives a new marker of the other kind and the two remaining
    /// cells carry `kind`.
    Stabilize {
        kind: MarkerKind,
        axis: Axis,
        position: usize,
        empty: Corner,
    },
    /// Collapse the 2×2 block whose lower-left cell is `(col, row)`.
    Destabilize { col: usize, row: usize },
}

impl fmt::Display for MoveSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            MoveSpec::Cyclic(d) => {
                let s = match d {
                    Direction::Up => "up",
                    Direction::Down => "down",
                    Direction::Left => "left",
                    Direction::Right => "right",
                };
                write!(f, "cyclic {s}")
            }
            MoveSpec::CommuteColumns(i) => write!(f, "commute cols {i}"),
            MoveSpec::CommuteRows(j) => write!(f, "commute rows {j}"),
            MoveSpec::Stabilize {
                kind,
                axis,
                position,
                empty,
            } => {
                let axis = if axis == Axis::Row { "row" } else { "col" };
                let kind = if kind == MarkerKind::O { "O" } else { "X" };
                write!(f, "stabilize {axis} {position} {kind}{empty:?}")
            }
            MoveSpec::Destabilize { col, row } => write!(f, "destabilize {col} {row}"),
        }
    }
}

fn interleaved(a: (usize, usize), b: (usize, usize)) -> bool {
    let (a0, a1) = (a.0.min(a.1), a.0.max(a.1));
    let (b0, b1) = (b.0.min(b.1), b.0.max(b.1));
    (a0 < b0 && b0 < a1 && a1 < b1) || (b0 < a0 && a0 < b1 && b1 < a1)
}

pub fn apply_move(g: &GridDiagram, m: &MoveSpec) -> Result<GridDiagram, MoveError> {
    let n = g.size();
    let (o, x) = (g.o_rows(), g.x_rows());
    match *m {
        MoveSpec::Cyclic(d) => {
            let (o, x) = match d {
                Direction::Up => (
                    o.iter().map(|r| (r + 1) % n).collect(),
                    x.iter().map(|r| (r + 1) % n).collect(),
                ),
                Direction::Down => (
                    o.iter().map(|r| (r + n - 1) % n).collect(),
                    x.iter().map(|r| (r + n - 1) % n).collect(),
                ),
                Direction::Right => {
                    let mut o = o.to_vec();
                    let mut x = x.to_vec();
                    o.rotate_right(1);
                    x.rotate_right(1);
                    (o, x)
                }
                Direction::Left => {
                    let mut o = o.to_vec();
                    let mut x = x.to_vec();
                    o.rotate_left(1);
                    x.rotate_left(1);
                    (o, x)
                }
            };
            Ok(GridDiagram::new(o, x)?)
        }
        MoveSpec::CommuteColumns(i) => {
            if i >= n {
                return Err(MoveError::BadPosition(format!(
                    "column {i} outside grid of size {n}"
                )));
            }
            let j = (i + 1) % n;
            if interleaved((o[i], x[i]), (o[j], x[j])) {
                return Err(MoveError::IllegalCommutation(i, j));
            }
            let mut o = o.to_vec();
            let mut x = x.to_vec();
            o.swap(i, j);
            x.swap(i, j);
            Ok(GridDiagram::new(o, x)?)
        }
        MoveSpec::CommuteRows(i) => {
            if i >= n {
                return Err(MoveError::BadPosition(format!(
                    "row {i} outside grid of size {n}"
                )));
            }
            let j = (i + 1) % n;
            let (oc, xc) = (g.o_cols(), g.x_cols());
            if interleaved((oc[i], xc[i]), (oc[j], xc[j])) {
                return Err(MoveError::IllegalCommutation(i, j));
            }
            let swap = |r: &usize| {
                if *r == i {
                    j
                } else if *r == j {
                    i
                } else {
                    *r
                }
            };
            Ok(GridDiagram::new(
                o.iter().map(swap).collect(),
                x.iter().map(swap).collect(),
            )?)
        }
        MoveSpec::Stabilize {
            kind,
            axis,
            position,
            empty,
        } => stabilize(g, kind, axis, position, empty),
        MoveSpec::Destabilize { col, row } => destabilize(g, col, row),
    }
}

fn stabilize(
    g: &GridDiagram,
    kind: MarkerKind,
    axis: Axis,
    position: usize,
    empty: Corner,
) -> Result<GridDiagram, MoveError> {
    let n = g.size();
    if position >= n {
        return Err(MoveError::BadPosition(format!(
            "{axis:?} {position} outside grid of size {n}"
        )));
    }
    let (k_rows, other_rows) = match kind {
        MarkerKind::O => (g.o_rows().to_vec(), g.x_rows().to_vec()),
        MarkerKind::X => (g.x_rows().to_vec(), g.o_rows().to_vec()),
    };
    let (c, r) = match axis {
        Axis::Column => (position, k_rows[position]),
        Axis::Row => (
            k_rows.iter().position(|&v| v == position).unwrap(),
            position,
        ),
    };
    let other_col_of_row = other_rows.iter().position(|&v| v == r).unwrap();
    let col_map = |k: usize| if k <= c { k } else { k + 1 };
    let row_map = |k: usize| if k <= r { k } else { k + 1 };
    let mut new_k = vec![usize::MAX; n + 1];
    let mut new_other = vec![usize::MAX; n + 1];
    for k in 0..n {
        if k != c {
            new_k[col_map(k)] = row_map(k_rows[k]);
            if k != other_col_of_row {
                new_other[col_map(k)] = row_map(other_rows[k]);
            }
        }
    }
    let placed = empty.opposite().offset();
    let (k1, k2) = match empty {
        Corner::SW | Corner::NE => (Corner::SE.offset(), Corner::NW.offset()),
        Corner::SE | Corner::NW => (Corner::SW.offset(), Corner::NE.offset()),
    };
    new_k[c + k1.0] = r + k1.1;
    new_k[c + k2.0] = r + k2.1;
    new_other[c + placed.0] = r + placed.1;
    // the block column without the new marker keeps column c's old one
    new_other[c + 1 - placed.0] = row_map(other_rows[c]);
    // the block row without the new marker keeps row r's old one
    new_other[col_map(other_col_of_row)] = r + 1 - placed.1;
    let (o, x) = match kind {
        MarkerKind::O => (new_k, new_other),
        MarkerKind::X => (new_other, new_k),
    };
    Ok(GridDiagram::new(o, x)?)
}

fn destabilize(g: &GridDiagram, c: usize, r: usize) -> Result<GridDiagram, MoveError> {
    let n = g.size();
    if n < 3 || c + 1 >= n || r + 1 >= n {
        return Err(MoveError::BadPosition(format!(
            "no 2x2 block at ({c},{r}) in grid of size {n}"
        )));
    }
    let (o, x) = (g.o_rows(), g.x_rows());
    let cell = |dc: usize, dr: usize| -> Option<MarkerKind> {
        if o[c + dc] == r + dr {
            Some(MarkerKind::O)
        } else if x[c + dc] == r + dr {
            Some(MarkerKind::X)
        } else {
            None
        }
    };
    let sw = cell(0, 0);
    let se = cell(1, 0);
    let nw = cell(0, 1);
    let ne = cell(1, 1);
    let kind = match (sw, ne, se, nw) {
        (Some(a), Some(b), _, _) if a == b => a,
        (_, _, Some(a), Some(b)) if a == b => a,
        _ => {
            return Err(MoveError::BadPosition(format!(
                "block at ({c},{r}) has no diagonal pair"
            )))
        }
    };
    let filled = [sw, se, nw, ne].iter().filter(|m| m.is_some()).count();
    if filled != 3 {
        return Err(MoveError::BadPosition(format!(
            "block at ({c},{r}) does not hold three markers"
        )));
    }
    let (k_rows, other_rows) = match kind {
        MarkerKind::O => (o, x),
        MarkerKind::X => (x, o),
    };
    // block column whose other-kind marker lies outside the block
    let keep_col = if other_rows[c] == r || other_rows[c] == r + 1 {
        c + 1
    } else {
        c
    };
    let col_map = |k: usize| if k <= c { k } else { k - 1 };
    let row_map = |k: usize| if k <= r { k } else { k - 1 };
    let mut new_k = vec![0; n - 1];
    let mut new_other = vec![0; n - 1];
    for k in 0..n {
        if k == c || k == c + 1 {
            continue;
        }
        new_k[col_map(k)] = row_map(k_rows[k]);
        new_other[col_map(k)] = row_map(other_rows[k]);
    }
    new_k[c] = r;
    new_other[c] = row_map(other_rows[keep_col]);
    let (o, x) = match kind {
        MarkerKind::O => (new_k, new_other),
        MarkerKind::X => (new_other, new_k),
    };
    Ok(GridDiagram::new(o, x)?)
}

/// Where each column of `G` lands after a cyclic move.
pub fn cyclic_column_map(d: Direction, n: usize) -> Vec<usize> {
    match d {
        Direction::Up | Direction::Down => (0..n).collect(),
        Direction::Right => (0..n).map(|c| (c + 1) % n).collect(),
        Direction::Left => (0..n).map(|c| (c + n - 1) % n).collect(),
    }
}

/// Maps `O` variable numbers of `before` to those of `after`, given where
/// each column went.
pub fn o_variable_map(before: &GridComplex, after: &GridComplex, col_map: &[usize]) -> Vec<usize> {
    let mut map = vec![0; before.size()];
    for (c, &v) in before.comps.o_index.iter().enumerate() {
        map[v] = after.comps.o_index[col_map[c]];
    }
    map
}

/// `Φ(x̃) = σ̃ · x̃` for the grid moved one step up.
pub fn phi_cyclic_vertical(x: &SpinElement) -> SpinElement {
    sigma(x.len()).multiply(x).expect("equal sizes")
}

/// `Φ(x̃) = (−1)^{ε(σ)ε(x)} · x̃ · σ̃⁻¹` for the grid moved one column to the
/// right (column `k` becomes column `k+1`).
pub fn phi_cyclic_horizontal(x: &SpinElement) -> (i8, SpinElement) {
    let s = sigma(x.len());
    let sign = if s.perm.signature() & x.perm.signature() == 1 {
        -1
    } else {
        1
    };
    (sign, x.multiply(&s.inverse()).expect("equal sizes"))
}

/// The chain isomorphism for any of the four cyclic moves.
pub fn phi_cyclic(d: Direction, x: &SpinElement) -> (i8, SpinElement) {
    let n = x.len();
    let s = sigma(n);
    let eps = s.perm.signature() & x.perm.signature();
    let sign = if eps == 1 { -1 } else { 1 };
    match d {
        Direction::Up => (1, phi_cyclic_vertical(x)),
        Direction::Down => (1, s.inverse().multiply(x).expect("equal sizes")),
        Direction::Right => phi_cyclic_horizontal(x),
        Direction::Left => (sign, x.multiply(&s).expect("equal sizes")),
    }
}

/// Extends [`phi_cyclic`] linearly to chains (coefficients unchanged).
pub fn phi_cyclic_chain(d: Direction, chain: &ChainElement) -> ChainElement {
    let mut out = ChainElement::zero();
    for (x, p) in chain.terms() {
        let (sign, g) = phi_cyclic(d, &SpinElement::section(x));
        let s = if g.bit == 1 {
            -i64::from(sign)
        } else {
            i64::from(sign)
        };
        let zero = vec![0; x.len()];
        out.add(&g.perm, p, &zero, s);
    }
    out
}

/// Constant grading change `grading_after(Φ(x)) − grading_before(x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradingShift {
    pub maslov: i64,
    /// Doubled, indexed by the components of the source grid.
    pub alexander2: Vec<i64>,
}

/// Computes the grading shift of a cyclic chain map over every generator;
/// `None` if it is not constant.
pub fn cyclic_grading_shift(
    before: &GridComplex,
    after: &GridComplex,
    d: Direction,
) -> Option<GradingShift> {
    let n = before.size();
    let col_map = cyclic_column_map(d, n);
    // component of `after` that each component of `before` became
    let comp_map: Vec<usize> = (0..before.comps.count)
        .map(|k| {
            let c = before
                .comps
                .comp_of_col
                .iter()
                .position(|&v| v == k)
                .unwrap();
            after.comps.comp_of_col[col_map[c]]
        })
        .collect();
    let mut shift: Option<GradingShift> = None;
    for x in Permutation::all(n) {
        let (_, y) = phi_cyclic(d, &SpinElement::section(&x));
        let gx = before.grid.bigrading(&x, &before.comps);
        let gy = after.grid.bigrading(&y.perm, &after.comps);
        let s = GradingShift {
            maslov: gy.maslov - gx.maslov,
            alexander2: (0..comp_map.len())
                .map(|k| gy.alexander2[comp_map[k]] - gx.alexander2[k])
                .collect(),
        };
        match &shift {
            None => shift = Some(s),
            Some(prev) if *prev != s => return None,
            _ => {}
        }
    }
    shift
}

/// Outcome of comparing two grids through their homology.
#[derive(Debug, Clone)]
pub struct InvarianceReport {
    pub tilde_first: HomologySummary,
    pub tilde_second: HomologySummary,
    pub hat_first: HomologySummary,
    pub hat_second: HomologySummary,
    /// Component `i` of the first grid matched to component
    /// `component_matching[i]` of the second.
    pub component_matching: Option<Vec<usize>>,
    /// Doubled Alexander shift per component under the matching.
    pub alexander_shift: Vec<i64>,
    pub hat_equal: bool,
    /// When sizes differ by one: the component (of the larger grid, 1-based
    /// output uses 0-based index here) whose `(1 + q⁻¹t⁻¹)` factor relates the
    /// two tilde polynomials exactly.
    pub tilde_factor_component: Option<usize>,
}

impl InvarianceReport {
    pub fn passed(&self) -> bool {
        self.hat_equal
    }
}

fn permutations_of(k: usize) -> Vec<Vec<usize>> {
    Permutation::all(k)
        .into_iter()
        .map(|p| p.images().to_vec())
        .collect()
}

/// Reorders the Alexander variables of `p` so that variable `i` of the
/// result is variable `matching[i]` of `p`.
fn reorder_alexander(p: &LaurentPoly, matching: &[usize]) -> LaurentPoly {
    let mut order = vec![0];
    order.extend(matching.iter().map(|&m| m + 1));
    p.permute_vars(&order)
}

/// Per-component shift aligning `b` onto `a`, if one exists.
fn align(a: &LaurentPoly, b: &LaurentPoly) -> Option<Vec<i64>> {
    let l = a.nvars() - 1;
    if a.is_zero() || b.is_zero() {
        return (a.is_zero() && b.is_zero()).then(|| vec![0; l]);
    }
    let mut shift = vec![0];
    for v in 1..=l {
        shift.push(a.min_exponent(v)? - b.min_exponent(v)?);
    }
    (b.shift(&shift) == *a).then(|| shift[1..].iter().map(|s| -s).collect())
}

pub fn invariance_report(
    g1: &GridDiagram,
    g2: &GridDiagram,
) -> Result<InvarianceReport, HomologyError> {
    let c1 = GridComplex::new(g1.clone());
    let c2 = GridComplex::new(g2.clone());
    let (tilde_first, tilde_second) =
        rayon::join(|| bigraded_homology(&c1), || bigraded_homology(&c2));
    let hat_first = hat_reduction(&tilde_first, &c1.comps)?;
    let hat_second = hat_reduction(&tilde_second, &c2.comps)?;
    let mut component_matching = None;
    let mut alexander_shift = Vec::new();
    if c1.comps.count == c2.comps.count {
        for matching in permutations_of(c1.comps.count) {
            let reordered = reorder_alexander(&hat_second.poincare, &matching);
            if let Some(shift) = align(&hat_first.poincare, &reordered) {
                component_matching = Some(matching);
                alexander_shift = shift;
                break;
            }
        }
    }
    let hat_equal = component_matching.is_some();
    let mut tilde_factor_component = None;
    if let Some(matching) = &component_matching {
        let (small, large, flip) = if g1.size() + 1 == g2.size() {
            (
                &tilde_first.poincare,
                reorder_alexander(&tilde_second.poincare, matching),
                false,
            )
        } else if g2.size() + 1 == g1.size() {
            (
                &reorder_alexander(&tilde_second.poincare, matching),
                tilde_first.poincare.clone(),
                true,
            )
        } else {
            (&tilde_first.poincare, tilde_first.poincare.clone(), false)
        };
        if g1.size().abs_diff(g2.size()) == 1 {
            let l = c1.comps.count;
            let shift: Vec<i64> = std::iter::once(0)
                .chain(alexander_shift.iter().map(|s| if flip { -s } else { *s }))
                .collect();
            for i in 0..l {
                let mut factor = small.one_like();
                let mut m = vec![0; l + 1];
                m[0] = -1;
                m[i + 1] = -2;
                factor.add_term(m, 1);
                let predicted = small.mul(&factor);
                if predicted == large.shift(&shift.iter().map(|s| -s).collect::<Vec<_>>())
                    || predicted == large
                {
                    tilde_factor_component = Some(i);
                    break;
                }
            }
        }
    }
    Ok(InvarianceReport {
        tilde_first,
        tilde_second,
        hat_first,
        hat_second,
        component_matching,
        alexander_shift,
        hat_equal,
        tilde_factor_component,
    })
}

/// A uniformly random valid grid of size `n`.
pub fn random_grid<R: Rng + ?Sized>(n: usize, rng: &mut R) -> GridDiagram {
    loop {
        let mut o: Vec<usize> = (0..n).collect();
        let mut x: Vec<usize> = (0..n).collect();
        o.shuffle(rng);
        x.shuffle(rng);
        if let Ok(g) = GridDiagram::new(o, x) {
            return g;
        }
    }
}

/// Every legal commutation of `g`.
pub fn legal_commutations(g: &GridDiagram) -> Vec<MoveSpec> {
    let n = g.size();
    (0..n)
        .flat_map(|i| [MoveSpec::CommuteColumns(i), MoveSpec::CommuteRows(i)])
        .filter(|m| apply_move(g, m).is_ok())
        .collect()
}

pub fn random_commutation<R: Rng + ?Sized>(g: &GridDiagram, rng: &mut R) -> Option<MoveSpec> {
    legal_commutations(g).choose(rng).copied()
}

pub fn random_stabilization<R: Rng + ?Sized>(g: &GridDiagram, rng: &mut R) -> MoveSpec {
    MoveSpec::Stabilize {
        kind: if rng.gen_bool(0.5) {
            MarkerKind::O
        } else {
            MarkerKind::X
        },
        axis: if rng.gen_bool(0.5) {
            Axis::Row
        } else {
            Axis::Column
        },
        position: rng.gen_range(0..g.size()),
        empty: *Corner::ALL.choose(rng).unwrap(),
    }
}

/// Any legal move: cyclic, commutation or stabilization.
pub fn random_move<R: Rng + ?Sized>(g: &GridDiagram, rng: &mut R) -> MoveSpec {
    match rng.gen_range(0..3) {
        0 => MoveSpec::Cyclic(*Direction::ALL.choose(rng).unwrap()),
        1 => random_commutation(g, rng).unwrap_or(MoveSpec::Cyclic(Direction::Up)),
        _ => random_stabilization(g, rng),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::Flavor;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn unknot() -> GridDiagram {
        GridDiagram::new(vec![1, 0], vec![0, 1]).unwrap()
    }

    #[test]
    fn cyclic_up_shifts_rows() {
        let g = GridDiagram::new(vec![1, 2, 3, 0], vec![3, 0, 1, 2]).unwrap();
        let h = apply_move(&g, &MoveSpec::Cyclic(Direction::Up)).unwrap();
        assert_eq!(h.o_rows(), &[2, 3, 0, 1]);
        assert_eq!(h.x_rows(), &[0, 1, 2, 3]);
        let back = apply_move(&h, &MoveSpec::Cyclic(Direction::Down)).unwrap();
        assert_eq!(back, g);
        let r = apply_move(&g, &MoveSpec::Cyclic(Direction::Right)).unwrap();
        assert_eq!(r.o_rows(), &[0, 1, 2, 3]);
        assert_eq!(
            apply_move(&r, &MoveSpec::Cyclic(Direction::Left)).unwrap(),
            g
        );
    }

    #[test]
    fn commutation_legality() {
        // columns 0 and 1 span rows {0..2} and {1..3}: interleaved
        let g = GridDiagram::new(vec![0, 1, 3, 2], vec![2, 3, 1, 0]).unwrap();
        assert_eq!(
            apply_move(&g, &MoveSpec::CommuteColumns(0)),
            Err(MoveError::IllegalCommutation(0, 1))
        );
        // columns 2 and 3 span {1..3} and {0..2}: interleaved
        assert!(apply_move(&g, &MoveSpec::CommuteColumns(2)).is_err());
        let legal = legal_commutations(&g);
        for m in &legal {
            let h = apply_move(&g, m).unwrap();
            assert_eq!(h.trace_components().count, g.trace_components().count);
        }
        assert!(matches!(
            apply_move(&g, &MoveSpec::CommuteRows(9)),
            Err(MoveError::BadPosition(_))
        ));
    }

    #[test]
    fn stabilize_unknot() {
        let g = unknot();
        for kind in [MarkerKind::O, MarkerKind::X] {
            for empty in Corner::ALL {
                for position in 0..2 {
                    for axis in [Axis::Row, Axis::Column] {
                        let m = MoveSpec::Stabilize {
                            kind,
                            axis,
                            position,
                            empty,
                        };
                        let h = apply_move(&g, &m).unwrap();
                        assert_eq!(h.size(), 3);
                        assert_eq!(h.trace_components().count, 1);
                    }
                }
            }
        }
    }

    #[test]
    fn destabilize_inverts_stabilize() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let n = rng.gen_range(2..6);
            let g = random_grid(n, &mut rng);
            let m = random_stabilization(&g, &mut rng);
            let h = apply_move(&g, &m).unwrap();
            assert_eq!(h.size(), n + 1);
            let MoveSpec::Stabilize {
                kind,
                axis,
                position,
                ..
            } = m
            else {
                unreachable!()
            };
            let rows = if kind == MarkerKind::O {
                g.o_rows()
            } else {
                g.x_rows()
            };
            let (c, r) = match axis {
                Axis::Column => (position, rows[position]),
                Axis::Row => (rows.iter().position(|&v| v == position).unwrap(), position),
            };
            let back = apply_move(&h, &MoveSpec::Destabilize { col: c, row: r }).unwrap();
            assert_eq!(back, g, "{m}");
        }
    }

    #[test]
    fn stabilization_adds_one_row_to_one_component() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let g = random_grid(rng.gen_range(2..6), &mut rng);
            let h = apply_move(&g, &random_stabilization(&g, &mut rng)).unwrap();
            let mut a = g.trace_components().rows_per_component;
            let mut b = h.trace_components().rows_per_component;
            assert_eq!(a.len(), b.len());
            a.sort_unstable();
            b.sort_unstable();
            let diff: usize = b.iter().sum::<usize>() - a.iter().sum::<usize>();
            assert_eq!(diff, 1);
        }
    }

    #[test]
    fn phi_on_size_two() {
        let id = SpinElement::identity(2);
        let up = phi_cyclic_vertical(&id);
        assert_eq!(up, SpinElement::generator(2, 0).unwrap());
        let (sign, right) = phi_cyclic_horizontal(&id);
        assert_eq!(sign, 1);
        assert_eq!(right, SpinElement::generator(2, 0).unwrap().with_z());
    }

    #[test]
    fn phi_sign_trivial_for_odd_n() {
        for x in Permutation::all(5).iter().step_by(13) {
            assert_eq!(phi_cyclic_horizontal(&SpinElement::section(x)).0, 1);
        }
    }

    #[test]
    fn phi_commutes_with_differential_small() {
        let g = GridDiagram::new(vec![2, 3, 0, 1], vec![0, 1, 2, 3]).unwrap();
        let before = GridComplex::new(g.clone());
        for d in Direction::ALL {
            let after = GridComplex::new(apply_move(&g, &MoveSpec::Cyclic(d)).unwrap());
            let vars = o_variable_map(&before, &after, &cyclic_column_map(d, 4));
            for x in Permutation::all(4) {
                let dx = before.spin_differential(&SpinElement::section(&x), Flavor::Minus);
                let lhs = phi_cyclic_chain(d, &dx).rename_variables(&vars);
                let start = ChainElement::generator(&SpinElement::section(&x), 4);
                let rhs = after.apply(&phi_cyclic_chain(d, &start), Flavor::Minus);
                assert_eq!(lhs, rhs, "{d:?} at {x}");
            }
            assert!(cyclic_grading_shift(&before, &after, d).is_some());
        }
    }

    #[test]
    fn unknot_stabilization_report() {
        let g = unknot();
        let h = apply_move(
            &g,
            &MoveSpec::Stabilize {
                kind: MarkerKind::X,
                axis: Axis::Column,
                position: 0,
                empty: Corner::NW,
            },
        )
        .unwrap();
        let rep = invariance_report(&g, &h).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.hat_first.poincare.to_string(), "1");
        assert_eq!(rep.hat_second.poincare.to_string(), "1");
        assert_eq!(rep.tilde_factor_component, Some(0));
    }
}
