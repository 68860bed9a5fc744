//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use gridfloer::{GridDiagram, Label, Permutation};
use rand::Rng;

/// Integer multivectors over `e_0..e_{n-1}` with `e_k² = −1`; blades are
/// bitmasks.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Multivector(pub BTreeMap<u32, i64>);

fn blade_sign(a: u32, b: u32) -> i64 {
    let mut swaps = 0;
    for j in 0..32 {
        if b >> j & 1 == 1 {
            swaps += (a >> (j + 1)).count_ones();
        }
    }
    swaps += (a & b).count_ones();
    if swaps % 2 == 0 {
        1
    } else {
        -1
    }
}

impl Multivector {
    pub fn scalar(c: i64) -> Self {
        Multivector(BTreeMap::from([(0, c)]))
    }

    /// `e_a − e_b`.
    pub fn label(t: Label) -> Self {
        Multivector(BTreeMap::from([(1 << t.a, 1), (1 << t.b, -1)]))
    }

    pub fn mul(&self, other: &Multivector) -> Multivector {
        let mut out: BTreeMap<u32, i64> = BTreeMap::new();
        for (&a, &ca) in &self.0 {
            for (&b, &cb) in &other.0 {
                *out.entry(a ^ b).or_insert(0) += blade_sign(a, b) * ca * cb;
            }
        }
        out.retain(|_, c| *c != 0);
        Multivector(out)
    }
}

/// Permutation of a word of labels, with `x·τ_{a,b}` swapping positions.
fn word_perm(n: usize, word: &[Label]) -> Vec<usize> {
    let mut v: Vec<usize> = (0..n).collect();
    for t in word {
        v.swap(t.a, t.b);
    }
    v
}

/// The factorization `x = τ_{i_0,0} ⋯ τ_{i_{n-1},n-1}` with `i_k < k`,
/// identity factors dropped.
fn canonical_labels(x: &[usize]) -> Vec<Label> {
    let mut v = x.to_vec();
    let mut factors = Vec::new();
    for m in (0..v.len()).rev() {
        let i = v.iter().position(|&w| w == m).unwrap();
        if i != m {
            v.swap(i, m);
            factors.push(Label::new(i, m));
        }
    }
    factors.reverse();
    factors
}

fn product(n: usize, word: &[Label]) -> Multivector {
    let _ = n;
    word.iter().fold(Multivector::scalar(1), |acc, &t| {
        acc.mul(&Multivector::label(t))
    })
}

/// The central bit of the product of `word` in normal form, computed in
/// the Clifford model.
pub fn clifford_oracle_bit(n: usize, word: &[Label]) -> u8 {
    let perm = word_perm(n, word);
    let w = product(n, word);
    let c = product(n, &canonical_labels(&perm));
    let (&blade, &cc) = c.0.iter().next().expect("nonzero product");
    let cw = w.0[&blade];
    u8::from((cw > 0) != (cc > 0))
}

pub fn random_word<R: Rng>(n: usize, len: usize, rng: &mut R) -> Vec<Label> {
    (0..len)
        .map(|_| {
            let a = rng.gen_range(0..n);
            let mut b = rng.gen_range(0..n - 1);
            if b >= a {
                b += 1;
            }
            Label::new(a, b)
        })
        .collect()
}

pub fn random_perm<R: Rng>(n: usize, rng: &mut R) -> Permutation {
    let mut v: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        v.swap(i, rng.gen_range(0..=i));
    }
    Permutation::new(v).unwrap()
}

/// Straightforward grid bookkeeping written independently of the library.
pub struct OracleGrid {
    pub n: usize,
    pub o: Vec<usize>,
    pub x: Vec<usize>,
}

impl OracleGrid {
    pub fn from(g: &GridDiagram) -> Self {
        OracleGrid {
            n: g.size(),
            o: g.o_rows().to_vec(),
            x: g.x_rows().to_vec(),
        }
    }

    fn in_cyclic(&self, start: usize, end: usize, v: usize) -> bool {
        // v in [start, end) going upward mod n
        (v + self.n - start) % self.n < (end + self.n - start) % self.n
    }

    /// Targets of marker-free empty rectangles out of `gen`.
    pub fn graded_targets(&self, gen: &[usize]) -> Vec<Vec<usize>> {
        let n = self.n;
        let mut out = Vec::new();
        for left in 0..n {
            for right in 0..n {
                if left == right {
                    continue;
                }
                let (r0, r1) = (gen[left], gen[right]);
                let mut ok = true;
                let mut c = (left + 1) % n;
                while c != right {
                    if self.in_cyclic(r0, r1, gen[c]) && gen[c] != r0 {
                        ok = false;
                    }
                    c = (c + 1) % n;
                }
                let mut c = left;
                while ok && c != right {
                    if self.in_cyclic(r0, r1, self.o[c]) || self.in_cyclic(r0, r1, self.x[c]) {
                        ok = false;
                    }
                    c = (c + 1) % n;
                }
                if ok {
                    let mut y = gen.to_vec();
                    y.swap(left, right);
                    out.push(y);
                }
            }
        }
        out
    }

    /// Maslov grading from lattice-point counting with doubled coordinates.
    pub fn maslov(&self, gen: &[usize]) -> i64 {
        let pts = |v: &[usize], off: i64| -> Vec<(i64, i64)> {
            v.iter()
                .enumerate()
                .map(|(c, &r)| (2 * c as i64 + off, 2 * r as i64 + off))
                .collect()
        };
        let i = |a: &[(i64, i64)], b: &[(i64, i64)]| -> i64 {
            let mut k = 0;
            for p in a {
                for q in b {
                    if p.0 < q.0 && p.1 < q.1 {
                        k += 1;
                    }
                }
            }
            k
        };
        let j = |a: &[(i64, i64)], b: &[(i64, i64)]| i(a, b) + i(b, a);
        let g = pts(gen, 0);
        let o = pts(&self.o, 1);
        (j(&g, &g) - 2 * j(&g, &o) + j(&o, &o)) / 2 + 1
    }
}

fn gf2_rank(mut rows: Vec<Vec<u64>>) -> usize {
    let mut rank = 0;
    let width = rows.first().map_or(0, |r| r.len() * 64);
    for col in 0..width {
        let (w, b) = (col / 64, col % 64);
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][w] >> b & 1 == 1) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[w] >> b & 1 == 1 {
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn perms(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in perms(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Tilde homology over `Z/2`, by Maslov grading.
pub fn mod2_tilde_ranks(g: &GridDiagram) -> BTreeMap<i64, usize> {
    let og = OracleGrid::from(g);
    let gens = perms(og.n);
    let index: HashMap<Vec<usize>, usize> = gens
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, p)| (p, i))
        .collect();
    let words = gens.len().div_ceil(64);
    let mut matrix = vec![vec![0u64; words]; gens.len()];
    for (i, x) in gens.iter().enumerate() {
        for y in og.graded_targets(x) {
            let j = index[&y];
            matrix[i][j / 64] ^= 1 << (j % 64);
        }
    }
    let gradings: Vec<i64> = gens.iter().map(|x| og.maslov(x)).collect();
    let mut dims: BTreeMap<i64, usize> = BTreeMap::new();
    for &m in &gradings {
        *dims.entry(m).or_insert(0) += 1;
    }
    // rank of the differential out of each Maslov grading
    let mut ranks: BTreeMap<i64, usize> = BTreeMap::new();
    for &m in dims.keys() {
        let rows: Vec<Vec<u64>> = (0..gens.len())
            .filter(|&i| gradings[i] == m)
            .map(|i| matrix[i].clone())
            .collect();
        ranks.insert(m, gf2_rank(rows));
    }
    dims.iter()
        .map(|(&m, &d)| (m, d - ranks[&m] - ranks.get(&(m + 1)).copied().unwrap_or(0)))
        .filter(|(_, r)| *r > 0)
        .collect()
}

pub fn trefoil() -> GridDiagram {
    GridDiagram::new(vec![2, 3, 4, 0, 1], vec![0, 1, 2, 3, 4]).unwrap()
}

pub fn unknot2() -> GridDiagram {
    GridDiagram::new(vec![1, 0], vec![0, 1]).unwrap()
}

pub fn hopf() -> GridDiagram {
    GridDiagram::new(vec![2, 3, 0, 1], vec![0, 1, 2, 3]).unwrap()
}
