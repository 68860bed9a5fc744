//! Grid diagrams: validation, component tracing, the `I`/`J` pair counts,
//! Maslov and Alexander gradings, and rectangles on the torus.
//!
//! Coordinates are 0-indexed with the origin at the bottom-left corner.
//! Generator points sit on lattice points `(k, x(k))`; markers sit at cell
//! centres `(col + ½, row + ½)`. Internally every coordinate is doubled so
//! that all comparisons are between integers.

use thiserror::Error;

use crate::spin::{Label, Permutation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GridError {
    #[error("grid size must be at least 2, got {0}")]
    TooSmall(usize),
    #[error("{which} markers do not form a permutation: {rows:?}")]
    NotAPermutation {
        which: &'static str,
        rows: Vec<usize>,
    },
    #[error("cell (column {col}, row {row}) holds both an O and an X")]
    SharedCell { col: usize, row: usize },
    #[error("marker arrays have different lengths ({o} vs {x})")]
    LengthMismatch { o: usize, x: usize },
}

/// An `n × n` grid with one `O` and one `X` per row and column.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GridDiagram {
    n: usize,
    o_rows: Vec<usize>,
    x_rows: Vec<usize>,
}

fn is_permutation(v: &[usize]) -> bool {
    let mut seen = vec![false; v.len()];
    v.iter()
        .all(|&r| r < v.len() && !std::mem::replace(&mut seen[r], true))
}

pub fn validate(o_rows: &[usize], x_rows: &[usize]) -> Result<(), GridError> {
    if o_rows.len() != x_rows.len() {
        return Err(GridError::LengthMismatch {
            o: o_rows.len(),
            x: x_rows.len(),
        });
    }
    if o_rows.len() < 2 {
        return Err(GridError::TooSmall(o_rows.len()));
    }
    if !is_permutation(o_rows) {
        return Err(GridError::NotAPermutation {
            which: "O",
            rows: o_rows.to_vec(),
        });
    }
    if !is_permutation(x_rows) {
        return Err(GridError::NotAPermutation {
            which: "X",
            rows: x_rows.to_vec(),
        });
    }
    if let Some(col) = (0..o_rows.len()).find(|&c| o_rows[c] == x_rows[c]) {
        return Err(GridError::SharedCell {
            col,
            row: o_rows[col],
        });
    }
    Ok(())
}

impl GridDiagram {
    pub fn new(o_rows: Vec<usize>, x_rows: Vec<usize>) -> Result<Self, GridError> {
        validate(&o_rows, &x_rows)?;
        Ok(Self {
            n: o_rows.len(),
            o_rows,
            x_rows,
        })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// Row of the `O` in each column.
    pub fn o_rows(&self) -> &[usize] {
        &self.o_rows
    }

    /// Row of the `X` in each column.
    pub fn x_rows(&self) -> &[usize] {
        &self.x_rows
    }

    /// Column of the `O` in each row.
    pub fn o_cols(&self) -> Vec<usize> {
        invert(&self.o_rows)
    }

    /// Column of the `X` in each row.
    pub fn x_cols(&self) -> Vec<usize> {
        invert(&self.x_rows)
    }

    /// Every valid grid of size `n`, ordered by `(O, X)` lexicographically.
    pub fn all(n: usize) -> Vec<GridDiagram> {
        let perms = Permutation::all(n);
        let mut out = Vec::new();
        for o in &perms {
            for x in &perms {
                if let Ok(g) = GridDiagram::new(o.images().to_vec(), x.images().to_vec()) {
                    out.push(g);
                }
            }
        }
        out
    }

    /// Orbits of the tracing `O → X` along rows and `X → O` along columns.
    pub fn trace_components(&self) -> ComponentData {
        let n = self.n;
        let x_cols = self.x_cols();
        // column c → column of the X in the row of O_c
        let next = |c: usize| x_cols[self.o_rows[c]];
        let mut comp_of_col = vec![usize::MAX; n];
        let mut rows_per_component = Vec::new();
        for start in 0..n {
            if comp_of_col[start] != usize::MAX {
                continue;
            }
            let id = rows_per_component.len();
            let mut c = start;
            let mut len = 0;
            while comp_of_col[c] == usize::MAX {
                comp_of_col[c] = id;
                len += 1;
                c = next(c);
            }
            rows_per_component.push(len);
        }
        // Components are numbered by their smallest column, so the first O of
        // each component (in column order) receives variables 0..l.
        let l = rows_per_component.len();
        let mut o_index = vec![usize::MAX; n];
        let mut first_seen = vec![false; l];
        let mut next_var = 0;
        for c in 0..n {
            let k = comp_of_col[c];
            if !first_seen[k] {
                first_seen[k] = true;
                o_index[c] = next_var;
                next_var += 1;
            }
        }
        for idx in o_index.iter_mut() {
            if *idx == usize::MAX {
                *idx = next_var;
                next_var += 1;
            }
        }
        ComponentData {
            count: l,
            comp_of_col,
            rows_per_component,
            o_index,
        }
    }

    pub fn o_points(&self) -> PointSet {
        PointSet::markers(&self.o_rows)
    }

    pub fn x_points(&self) -> PointSet {
        PointSet::markers(&self.x_rows)
    }

    /// `M_S(x)` with `S` the `O` markers (`use_x = false`) or the `X` markers.
    pub fn maslov_with(&self, x: &Permutation, use_x: bool) -> i64 {
        let gens = PointSet::generator(x);
        let markers = if use_x {
            self.x_points()
        } else {
            self.o_points()
        };
        let k = k_pairs(&gens, &gens) - 2 * k_pairs(&gens, &markers) + k_pairs(&markers, &markers);
        debug_assert!(k % 2 == 0);
        k / 2 + 1
    }

    /// Maslov grading `M(x) = J(x − O, x − O) + 1`.
    pub fn maslov(&self, x: &Permutation) -> i64 {
        self.maslov_with(x, false)
    }

    /// Twice the Alexander grading of `x`, one entry per component.
    pub fn alexander2(&self, x: &Permutation, comps: &ComponentData) -> Vec<i64> {
        let gens = PointSet::generator(x);
        let all_markers = self.o_points().plus(&self.x_points());
        (0..comps.count)
            .map(|j| {
                let cols: Vec<usize> = (0..self.n).filter(|&c| comps.comp_of_col[c] == j).collect();
                let xs = PointSet::markers_at(&cols, &self.x_rows);
                let os = PointSet::markers_at(&cols, &self.o_rows);
                let diff = xs.minus(&os);
                // 4A = 2K(x, X_j − O_j) − K(X + O, X_j − O_j) − 2(n_j − 1)
                let four_a = 2 * k_pairs(&gens, &diff)
                    - k_pairs(&all_markers, &diff)
                    - 2 * (comps.rows_per_component[j] as i64 - 1);
                debug_assert!(four_a % 2 == 0);
                four_a / 2
            })
            .collect()
    }

    pub fn bigrading(&self, x: &Permutation, comps: &ComponentData) -> Bigrading {
        Bigrading {
            maslov: self.maslov(x),
            alexander2: self.alexander2(x, comps),
        }
    }

    /// Both rectangles for every column pair: `n(n-1)` entries, each with
    /// target `x · τ_{a,b}`.
    pub fn rectangles_from(&self, x: &Permutation) -> Vec<(Label, Permutation)> {
        let n = self.n;
        let mut out = Vec::with_capacity(n * (n - 1));
        for a in 0..n {
            for b in (a + 1)..n {
                let y = x.swap_positions(a, b);
                out.push((Label::new(a, b), y.clone()));
                out.push((Label::new(b, a), y));
            }
        }
        out
    }

    /// The rectangle whose bottom-left corner lies on column `label.a`.
    pub fn realize_rectangle(&self, x: &Permutation, label: Label) -> Rectangle {
        let n = self.n;
        let (a, b) = (label.a, label.b);
        Rectangle {
            base: x.clone(),
            label,
            col_start: a,
            width: (b + n - a) % n,
            row_start: x.apply(a),
            height: (x.apply(b) + n - x.apply(a)) % n,
            n,
        }
    }

    /// No point of `x` lies strictly inside the rectangle.
    pub fn is_empty(&self, rect: &Rectangle) -> bool {
        let x = &rect.base;
        (1..rect.width).all(|dc| {
            let k = (rect.col_start + dc) % self.n;
            !rect.row_interior(x.apply(k))
        })
    }

    /// Per-marker counts inside the rectangle: `O` counts indexed by variable
    /// number (see [`ComponentData::o_index`]) and `X` counts indexed by
    /// column.
    pub fn marker_counts(&self, rect: &Rectangle, comps: &ComponentData) -> MarkerCounts {
        let mut o = vec![0u32; self.n];
        let mut x = vec![0u32; self.n];
        for dc in 0..rect.width {
            let c = (rect.col_start + dc) % self.n;
            if rect.row_cell(self.o_rows[c]) {
                o[comps.o_index[c]] += 1;
            }
            if rect.row_cell(self.x_rows[c]) {
                x[c] += 1;
            }
        }
        MarkerCounts { o, x }
    }

    /// Empty rectangles out of `x`, with their targets.
    pub fn empty_rectangles_from(&self, x: &Permutation) -> Vec<(Rectangle, Permutation)> {
        self.rectangles_from(x)
            .into_iter()
            .map(|(label, y)| (self.realize_rectangle(x, label), y))
            .filter(|(r, _)| self.is_empty(r))
            .collect()
    }
}

fn invert(v: &[usize]) -> Vec<usize> {
    let mut out = vec![0; v.len()];
    for (i, &r) in v.iter().enumerate() {
        out[r] = i;
    }
    out
}

/// Link components traced from a grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentData {
    /// Number of components `l`.
    pub count: usize,
    /// Component (0-based) of the `O` and `X` in each column; both markers of
    /// a column lie on the same vertical segment.
    pub comp_of_col: Vec<usize>,
    /// `n_i`: horizontal segments per component.
    pub rows_per_component: Vec<usize>,
    /// Variable number of the `O` in each column. Variables `0..l` are the
    /// first `O` of each component; the rest follow in column order.
    pub o_index: Vec<usize>,
}

impl ComponentData {
    /// Component of the `O` carrying variable `v`.
    pub fn component_of_variable(&self, v: usize) -> usize {
        let col = self
            .o_index
            .iter()
            .position(|&i| i == v)
            .expect("variable in range");
        self.comp_of_col[col]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bigrading {
    pub maslov: i64,
    /// `2·A_i` per component.
    pub alexander2: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkerCounts {
    pub o: Vec<u32>,
    pub x: Vec<u32>,
}

impl MarkerCounts {
    pub fn o_total(&self) -> u32 {
        self.o.iter().sum()
    }

    pub fn x_total(&self) -> u32 {
        self.x.iter().sum()
    }

    pub fn is_marker_free(&self) -> bool {
        self.o_total() == 0 && self.x_total() == 0
    }
}

/// A rectangle on the torus from `base` to `base · τ_{a,b}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rectangle {
    pub base: Permutation,
    pub label: Label,
    /// First column of the span `[a → b)`.
    pub col_start: usize,
    pub width: usize,
    /// First row of the span `[x(a) → x(b))`.
    pub row_start: usize,
    pub height: usize,
    n: usize,
}

impl Rectangle {
    /// Cell columns, in order from the left edge.
    pub fn columns(&self) -> Vec<usize> {
        (0..self.width)
            .map(|d| (self.col_start + d) % self.n)
            .collect()
    }

    pub fn rows(&self) -> Vec<usize> {
        (0..self.height)
            .map(|d| (self.row_start + d) % self.n)
            .collect()
    }

    /// Cells covered, as `(column, row)`.
    pub fn cells(&self) -> Vec<(usize, usize)> {
        let rows = self.rows();
        self.columns()
            .into_iter()
            .flat_map(|c| rows.iter().map(move |&r| (c, r)))
            .collect()
    }

    fn row_cell(&self, row: usize) -> bool {
        (row + self.n - self.row_start) % self.n < self.height
    }

    fn row_interior(&self, row: usize) -> bool {
        let d = (row + self.n - self.row_start) % self.n;
        d > 0 && d < self.height
    }

    /// The column span wraps through the right edge of the square.
    pub fn is_horizontally_torn(&self) -> bool {
        self.label.a > self.label.b
    }
}

/// A formal integer combination of points with doubled coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PointSet {
    points: Vec<((i64, i64), i64)>,
}

impl PointSet {
    /// Points given in doubled coordinates with unit weight.
    pub fn from_doubled(points: &[(i64, i64)]) -> Self {
        Self {
            points: points.iter().map(|&p| (p, 1)).collect(),
        }
    }

    /// The lattice points `(k, x(k))`.
    pub fn generator(x: &Permutation) -> Self {
        Self {
            points: (0..x.len())
                .map(|k| ((2 * k as i64, 2 * x.apply(k) as i64), 1))
                .collect(),
        }
    }

    /// Cell centres `(c + ½, rows[c] + ½)`.
    pub fn markers(rows: &[usize]) -> Self {
        let cols: Vec<usize> = (0..rows.len()).collect();
        Self::markers_at(&cols, rows)
    }

    fn markers_at(cols: &[usize], rows: &[usize]) -> Self {
        Self {
            points: cols
                .iter()
                .map(|&c| ((2 * c as i64 + 1, 2 * rows[c] as i64 + 1), 1))
                .collect(),
        }
    }

    pub fn plus(&self, other: &PointSet) -> PointSet {
        let mut points = self.points.clone();
        points.extend_from_slice(&other.points);
        PointSet { points }
    }

    pub fn minus(&self, other: &PointSet) -> PointSet {
        let mut points = self.points.clone();
        points.extend(other.points.iter().map(|&(p, w)| (p, -w)));
        PointSet { points }
    }
}

/// `I(A, B)`: weighted count of pairs `a ∈ A`, `b ∈ B` with `a < b` in both
/// coordinates.
pub fn count_pairs_i(a: &PointSet, b: &PointSet) -> i64 {
    let mut total = 0;
    for &((a1, a2), wa) in &a.points {
        for &((b1, b2), wb) in &b.points {
            if a1 < b1 && a2 < b2 {
                total += wa * wb;
            }
        }
    }
    total
}

/// `2·J(A, B) = I(A, B) + I(B, A)`.
pub fn count_pairs_j2(a: &PointSet, b: &PointSet) -> i64 {
    k_pairs(a, b)
}

fn k_pairs(a: &PointSet, b: &PointSet) -> i64 {
    count_pairs_i(a, b) + count_pairs_i(b, a)
}
