//! Smith normal form over the integers.
//!
//! Elimination alternates row and column Hermite normal forms on dense
//! big-integer matrices until the matrix is diagonal, then repairs
//! divisibility. Entries above each Hermite pivot are kept reduced, which
//! keeps coefficient growth polynomial even on dense input.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A sparse integer matrix; no stored zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, i64)>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: Vec::new(),
        }
    }

    /// Builds from triplets; duplicates are summed and zeros dropped.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, i64)>,
    ) -> Self {
        let mut map = std::collections::BTreeMap::new();
        for (r, c, v) in triplets {
            assert!(
                r < rows && c < cols,
                "entry ({r},{c}) out of range {rows}x{cols}"
            );
            *map.entry((r, c)).or_insert(0i64) += v;
        }
        Self {
            rows,
            cols,
            entries: map
                .into_iter()
                .filter(|&(_, v)| v != 0)
                .map(|((r, c), v)| (r, c, v))
                .collect(),
        }
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let nr = rows.len();
        let nc = rows.first().map_or(0, Vec::len);
        Self::from_triplets(
            nr,
            nc,
            rows.iter()
                .enumerate()
                .flat_map(|(r, row)| row.iter().enumerate().map(move |(c, &v)| (r, c, v))),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[(usize, usize, i64)] {
        &self.entries
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut m = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for &(r, c, v) in &self.entries {
            m[r][c] = BigInt::from(v);
        }
        m
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    /// Nonzero diagonal entries `d_1 | d_2 | …`, all positive.
    pub diagonal: Vec<BigInt>,
    /// `left · A · right = D`, both unimodular.
    pub left: Vec<Vec<BigInt>>,
    pub right: Vec<Vec<BigInt>>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect()
}

fn transpose(m: &[Vec<BigInt>], cols: usize) -> Vec<Vec<BigInt>> {
    (0..cols)
        .map(|j| m.iter().map(|row| row[j].clone()).collect())
        .collect()
}

/// `x -= q · y`
fn sub_mul(x: &mut [BigInt], q: &BigInt, y: &[BigInt]) {
    if q.is_zero() {
        return;
    }
    for (a, b) in x.iter_mut().zip(y) {
        if !b.is_zero() {
            *a -= q * b;
        }
    }
}

/// `(g, s, u)` with `s·a + u·b = g = gcd(a, b) > 0`.
fn xgcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// Row-style Hermite normal form by inserting one row at a time into an
/// echelon basis and reducing entries above each pivot. Only the first `w`
/// entries of a row steer the elimination; anything after them (a transform
/// block) is carried along. Returns the basis rows in pivot order followed by
/// the zero rows.
fn row_hnf(rows: Vec<Vec<BigInt>>, w: usize) -> Vec<Vec<BigInt>> {
    let mut basis: Vec<(usize, Vec<BigInt>)> = Vec::new();
    let mut zero = Vec::new();
    for mut row in rows {
        for k in 0..basis.len() {
            let c = basis[k].0;
            match row[..w].iter().position(|v| !v.is_zero()) {
                Some(lead) if lead == c => {}
                Some(lead) if lead > c => continue,
                _ => break,
            }
            let p = basis[k].1[c].clone();
            let (q, r) = row[c].div_mod_floor(&p);
            if r.is_zero() {
                sub_mul(&mut row, &q, &basis[k].1);
                continue;
            }
            let v = row[c].clone();
            let (g, s, u) = xgcd(&p, &v);
            let (pg, vg) = (&p / &g, &v / &g);
            let b = &basis[k].1;
            let mut nb: Vec<BigInt> = b.iter().zip(&row).map(|(y, x)| &s * y + &u * x).collect();
            row = row.iter().zip(b).map(|(x, y)| &pg * x - &vg * y).collect();
            for (c2, b2) in &basis[k + 1..] {
                let q = nb[*c2].div_floor(&b2[*c2]);
                sub_mul(&mut nb, &q, b2);
            }
            for (_, b0) in &mut basis[..k] {
                let q = b0[c].div_floor(&g);
                sub_mul(b0, &q, &nb);
            }
            basis[k].1 = nb;
        }
        let Some(lead) = row[..w].iter().position(|v| !v.is_zero()) else {
            zero.push(row);
            continue;
        };
        if row[lead].is_negative() {
            for v in &mut row {
                *v = -std::mem::take(v);
            }
        }
        let pos = basis.iter().take_while(|(c, _)| *c < lead).count();
        for (c2, b2) in &basis[pos..] {
            let q = row[*c2].div_floor(&b2[*c2]);
            sub_mul(&mut row, &q, b2);
        }
        for (_, b0) in &mut basis[..pos] {
            let q = b0[lead].div_floor(&row[lead]);
            sub_mul(b0, &q, &row);
        }
        basis.insert(pos, (lead, row));
    }
    basis.into_iter().map(|(_, r)| r).chain(zero).collect()
}

/// Runs [`row_hnf`] on `m` (width `w`) with an optional transform block
/// appended to each row, and splits the result back apart.
fn hnf_with(m: Dense, t: Option<Dense>, w: usize) -> (Dense, Option<Dense>) {
    match t {
        None => (row_hnf(m, w), None),
        Some(t) => {
            let joined = m.into_iter().zip(t).map(|(mut a, b)| {
                a.extend(b);
                a
            });
            let out = row_hnf(joined.collect(), w);
            let (mut mm, mut tt) = (Vec::new(), Vec::new());
            for mut row in out {
                tt.push(row.split_off(w));
                mm.push(row);
            }
            (mm, Some(tt))
        }
    }
}

fn rows_are_monomial(m: &[Vec<BigInt>]) -> bool {
    m.iter()
        .all(|row| row.iter().filter(|v| !v.is_zero()).count() <= 1)
}

/// Diagonal and (optionally) transforms with `left · A · right = D`.
type Dense = Vec<Vec<BigInt>>;

fn smith(
    a: Dense,
    rows: usize,
    cols: usize,
    track: bool,
) -> (Vec<BigInt>, Option<Dense>, Option<Dense>) {
    let mut cur = a;
    let mut left = track.then(|| identity(rows));
    // the right transform is kept transposed so column operations act on rows
    let mut right_t = track.then(|| identity(cols));
    loop {
        let (m, l) = hnf_with(cur, left, cols);
        cur = m;
        left = l;
        if rows_are_monomial(&cur) {
            break;
        }
        let (mt, r) = hnf_with(transpose(&cur, cols), right_t, rows);
        right_t = r;
        let done = rows_are_monomial(&mt);
        cur = transpose(&mt, rows);
        if done {
            break;
        }
    }
    // move the surviving entries onto the diagonal
    let mut entries: Vec<(usize, usize)> = Vec::new();
    for (i, row) in cur.iter().enumerate() {
        if let Some(j) = row.iter().position(|v| !v.is_zero()) {
            entries.push((i, j));
        }
    }
    let mut diag: Vec<BigInt> = entries.iter().map(|&(i, j)| cur[i][j].clone()).collect();
    if let Some(l) = &mut left {
        let mut order: Vec<usize> = entries.iter().map(|&(i, _)| i).collect();
        order.extend((0..rows).filter(|i| !entries.iter().any(|&(r, _)| r == *i)));
        let mut permuted: Vec<Vec<BigInt>> =
            order.iter().map(|&i| std::mem::take(&mut l[i])).collect();
        for (k, d) in diag.iter_mut().enumerate() {
            if d.is_negative() {
                *d = -std::mem::take(d);
                for v in &mut permuted[k] {
                    *v = -std::mem::take(v);
                }
            }
        }
        *l = permuted;
    } else {
        for d in &mut diag {
            if d.is_negative() {
                *d = -std::mem::take(d);
            }
        }
    }
    if let Some(r) = &mut right_t {
        let mut order: Vec<usize> = entries.iter().map(|&(_, j)| j).collect();
        order.extend((0..cols).filter(|j| !entries.iter().any(|&(_, c)| c == *j)));
        *r = order.iter().map(|&j| std::mem::take(&mut r[j])).collect();
    }
    // diag(a, b) → diag(gcd, lcm) until each entry divides the next
    let r = diag.len();
    for i in 0..r {
        for j in i + 1..r {
            if diag[j].is_multiple_of(&diag[i]) {
                continue;
            }
            let (a, b) = (diag[i].clone(), diag[j].clone());
            let (g, s, u) = xgcd(&a, &b);
            if let (Some(l), Some(rt)) = (&mut left, &mut right_t) {
                let row_j = rt[j].clone();
                sub_mul(&mut rt[i], &-BigInt::one(), &row_j);
                let (li, lj) = (l[i].clone(), l[j].clone());
                let (bg, ag) = (&b / &g, &a / &g);
                l[i] = li.iter().zip(&lj).map(|(x, y)| &s * x + &u * y).collect();
                l[j] = li.iter().zip(&lj).map(|(x, y)| &ag * y - &bg * x).collect();
                let q = &u * &bg;
                let row_i = rt[i].clone();
                sub_mul(&mut rt[j], &q, &row_i);
            }
            diag[j] = &a / &g * &b;
            diag[i] = g;
        }
    }
    (diag, left, right_t.map(|rt| transpose(&rt, cols)))
}

/// Smith normal form with unimodular transforms.
pub fn smith_normal_form(m: &IntegerMatrix) -> SmithForm {
    let (diagonal, left, right) = smith(m.to_dense(), m.rows, m.cols, true);
    SmithForm {
        diagonal,
        left: left.expect("tracked"),
        right: right.expect("tracked"),
    }
}

/// The nonzero invariant factors only; no transforms are tracked.
pub fn invariant_factors(m: &IntegerMatrix) -> Vec<BigInt> {
    if m.entries.is_empty() {
        return Vec::new();
    }
    smith(m.to_dense(), m.rows, m.cols, false).0
}

/// Dense product of big-integer matrices.
pub fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            let mut out = vec![BigInt::zero(); cols];
            for k in 0..inner {
                if row[k].is_zero() {
                    continue;
                }
                for (j, o) in out.iter_mut().enumerate() {
                    if !b[k][j].is_zero() {
                        *o += &row[k] * &b[k][j];
                    }
                }
            }
            out
        })
        .collect()
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    let mut a = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        BigInt::one()
    } else {
        sign * &a[n - 1][n - 1]
    }
}
