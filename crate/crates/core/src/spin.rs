//! Arithmetic in the spin extension of the symmetric group.
//!
//! Every element is kept in normal form `z^u · s(x)`, where `s` is the
//! canonical section built from the factorization
//! `x = τ_{i_0,0} · τ_{i_1,1} · … · τ_{i_{n-1},n-1}` and `z` is the central
//! element of order two. Lifted transpositions satisfy
//!
//! * `τ̃_{a,b}² = z` and `τ̃_{b,a} = z · τ̃_{a,b}`,
//! * `τ̃_{a,b} · τ̃_{c,d} = z · τ̃_{c,d} · τ̃_{a,b}` when `{a,b} ∩ {c,d} = ∅`,
//! * `τ̃_{a,b} · τ̃_{b,c} · τ̃_{a,b} = τ̃_{a,c}`.
//!
//! Permutations compose as functions: `(p·q)(k) = p(q(k))`, so `x · τ_{a,b}`
//! swaps the values of `x` at positions `a` and `b`.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpinError {
    #[error("not a permutation: {0:?}")]
    NotAPermutation(Vec<usize>),
    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("invalid transposition label ({a},{b}) for size {n}")]
    InvalidLabel { a: usize, b: usize, n: usize },
}

/// A bijection of `{0, …, n-1}`; `images[k]` is the image of `k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self, SpinError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v >= n || seen[v] {
                return Err(SpinError::NotAPermutation(images));
            }
            seen[v] = true;
        }
        Ok(Self { images })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            images: (0..n).collect(),
        }
    }

    /// The transposition exchanging `a` and `b`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Result<Self, SpinError> {
        if a >= n || b >= n || a == b {
            return Err(SpinError::InvalidLabel { a, b, n });
        }
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(a, b);
        Ok(Self { images })
    }

    /// The cycle `k ↦ k+1 mod n`.
    pub fn cycle(n: usize) -> Self {
        Self {
            images: (0..n).map(|k| (k + 1) % n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, k: usize) -> usize {
        self.images[k]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &v)| k == v)
    }

    /// `(self · other)(k) = self(other(k))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, SpinError> {
        if self.len() != other.len() {
            return Err(SpinError::SizeMismatch(self.len(), other.len()));
        }
        Ok(Permutation {
            images: other.images.iter().map(|&k| self.images[k]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.len()];
        for (k, &v) in self.images.iter().enumerate() {
            images[v] = k;
        }
        Permutation { images }
    }

    /// `self · τ_{a,b}`: the values at positions `a` and `b` exchanged.
    pub fn swap_positions(&self, a: usize, b: usize) -> Permutation {
        let mut images = self.images.clone();
        images.swap(a, b);
        Permutation { images }
    }

    /// Parity of the permutation, as an element of `{0, 1}`.
    pub fn signature(&self) -> u8 {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut parity = 0usize;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut k = start;
            while !seen[k] {
                seen[k] = true;
                k = self.images[k];
                len += 1;
            }
            parity += len - 1;
        }
        (parity % 2) as u8
    }

    /// For each level `k` the index `i_k ≤ k` of the canonical factor
    /// `τ_{i_k,k}`; `i_k == k` marks an omitted identity factor.
    pub fn canonical_levels(&self) -> Vec<usize> {
        let n = self.len();
        let mut work = self.images.clone();
        let mut pos = self.inverse().images;
        let mut levels = vec![0; n];
        for k in (0..n).rev() {
            let i = pos[k];
            levels[k] = i;
            if i != k {
                // work · τ_{i,k}
                let vk = work[k];
                work.swap(i, k);
                pos[vk] = i;
                pos[k] = k;
            }
        }
        levels
    }

    /// The factorization `x = τ_{i_0,0} · … · τ_{i_{n-1},n-1}` with identity
    /// factors dropped.
    pub fn canonical_word(&self) -> GeneratorWord {
        let factors = self
            .canonical_levels()
            .into_iter()
            .enumerate()
            .filter(|&(k, i)| i != k)
            .map(|(k, i)| Label::new(i, k))
            .collect();
        GeneratorWord { factors, zexp: 0 }
    }

    /// All permutations of size `n` in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..n).collect();
        loop {
            out.push(Permutation {
                images: cur.clone(),
            });
            // next lexicographic permutation
            let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
                break;
            };
            let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(|v| v.to_string()).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

/// An ordered column pair naming the lift `τ̃_{a,b}`; `(a,b)` and `(b,a)`
/// name lifts differing by `z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label {
    pub a: usize,
    pub b: usize,
}

impl Label {
    pub const fn new(a: usize, b: usize) -> Self {
        Self { a, b }
    }

    pub fn reversed(self) -> Self {
        Self::new(self.b, self.a)
    }

    pub fn check(self, n: usize) -> Result<(), SpinError> {
        if self.a >= n || self.b >= n || self.a == self.b {
            return Err(SpinError::InvalidLabel {
                a: self.a,
                b: self.b,
                n,
            });
        }
        Ok(())
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

/// A word `z^zexp · τ̃_{f_1} · … · τ̃_{f_k}` in lifted transpositions.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GeneratorWord {
    pub factors: Vec<Label>,
    pub zexp: u8,
}

impl GeneratorWord {
    pub fn new(factors: Vec<Label>) -> Self {
        Self { factors, zexp: 0 }
    }

    /// Evaluates the word left to right in `S̃_n`.
    pub fn evaluate(&self, n: usize) -> Result<SpinElement, SpinError> {
        let mut g = SpinElement::identity(n);
        g.bit ^= self.zexp & 1;
        for &t in &self.factors {
            g = g.right_mul_transposition(t)?;
        }
        Ok(g)
    }
}

/// An element `z^bit · s(perm)` of the spin extension.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpinElement {
    pub perm: Permutation,
    pub bit: u8,
}

impl SpinElement {
    pub fn identity(n: usize) -> Self {
        Self {
            perm: Permutation::identity(n),
            bit: 0,
        }
    }

    /// The central element `z`.
    pub fn z(n: usize) -> Self {
        Self {
            perm: Permutation::identity(n),
            bit: 1,
        }
    }

    /// The canonical lift `s(p)`.
    pub fn section(p: &Permutation) -> Self {
        Self {
            perm: p.clone(),
            bit: 0,
        }
    }

    /// `τ̃_{a,b}` in normal form.
    pub fn lift(n: usize, t: Label) -> Result<Self, SpinError> {
        t.check(n)?;
        Ok(Self {
            perm: Permutation::transposition(n, t.a, t.b)?,
            bit: u8::from(t.a > t.b),
        })
    }

    /// The adjacent generator `τ̃_i = τ̃_{i,i+1}`.
    pub fn generator(n: usize, i: usize) -> Result<Self, SpinError> {
        Self::lift(n, Label::new(i, i + 1))
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn with_z(mut self) -> Self {
        self.bit ^= 1;
        self
    }

    /// Normal form of `self · τ̃_{a,b}`.
    pub fn right_mul_transposition(&self, t: Label) -> Result<SpinElement, SpinError> {
        let n = self.len();
        t.check(n)?;
        let flip = push_through_section(&self.perm.canonical_levels(), t);
        Ok(SpinElement {
            perm: self.perm.swap_positions(t.a, t.b),
            bit: self.bit ^ flip,
        })
    }

    pub fn multiply(&self, other: &SpinElement) -> Result<SpinElement, SpinError> {
        if self.len() != other.len() {
            return Err(SpinError::SizeMismatch(self.len(), other.len()));
        }
        let mut g = self.clone();
        for t in other.perm.canonical_word().factors {
            g = g.right_mul_transposition(t)?;
        }
        g.bit ^= other.bit;
        Ok(g)
    }

    /// `(z^u · τ̃_{f_1} ⋯ τ̃_{f_k})⁻¹ = z^{u + k} · τ̃_{f_k} ⋯ τ̃_{f_1}`.
    pub fn inverse(&self) -> SpinElement {
        let word = self.perm.canonical_word();
        let mut g = SpinElement::identity(self.len());
        g.bit = self.bit ^ (word.factors.len() % 2) as u8;
        for &t in word.factors.iter().rev() {
            g = g
                .right_mul_transposition(t)
                .expect("canonical factors are valid labels");
        }
        g
    }

    /// `g · τ̃_{i,j} · g⁻¹ = z^{ε(x)} · τ̃_{x(i),x(j)}`: returns the exponent
    /// of `z` and the conjugated label.
    pub fn conjugate_transposition(&self, t: Label) -> Result<(u8, Label), SpinError> {
        t.check(self.len())?;
        Ok((
            self.perm.signature(),
            Label::new(self.perm.apply(t.a), self.perm.apply(t.b)),
        ))
    }
}

impl fmt::Display for SpinElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.bit == 1 {
            write!(f, "z·s{}", self.perm)
        } else {
            write!(f, "s{}", self.perm)
        }
    }
}

/// Bit `u` such that `s(x) · τ̃_t = z^u · s(x · τ_t)`, where `levels` are the
/// canonical levels of `x`.
///
/// The lifted transposition is pushed leftwards through the canonical
/// factors, top level first. At level `m` with factor `τ̃_{i,m}`:
/// `τ̃_{i,m}τ̃_{a,b}` equals `z` when `(a,b) = (i,m)`, and otherwise
/// `z·τ̃_{c,d}·τ̃_{j,m}` with `c,d < m`, where only `b = m` changes the label
/// (to `(a,i)`).
fn push_through_section(levels: &[usize], t: Label) -> u8 {
    let (mut a, mut b) = (t.a, t.b);
    let mut bit = 0u8;
    let mut m = levels.len() - 1;
    loop {
        if a > b {
            std::mem::swap(&mut a, &mut b);
            bit ^= 1;
        }
        let i = levels[m];
        if i == m {
            if b == m {
                return bit;
            }
        } else if a == i && b == m {
            return bit ^ 1;
        } else {
            bit ^= 1;
            if b == m {
                b = i;
            }
        }
        m -= 1;
    }
}

/// `c(p, q) ∈ {±1}` defined by `s(p) · s(q) = c(p,q) · s(p·q)`.
pub fn cocycle(p: &Permutation, q: &Permutation) -> Result<i8, SpinError> {
    let prod = SpinElement::section(p).multiply(&SpinElement::section(q))?;
    Ok(if prod.bit == 1 { -1 } else { 1 })
}

/// The distinguished lift `σ̃ = τ̃_0 · τ̃_1 ⋯ τ̃_{n-2}` of the cycle `k ↦ k+1`.
pub fn sigma(n: usize) -> SpinElement {
    GeneratorWord::new(
        (0..n.saturating_sub(1))
            .map(|i| Label::new(i, i + 1))
            .collect(),
    )
    .evaluate(n)
    .expect("adjacent labels are valid")
}

/// `δc(p,q,r) = 1`, i.e. `c(p,q)·c(pq,r) = c(q,r)·c(p,qr)`.
pub fn cocycle_identity_holds(
    p: &Permutation,
    q: &Permutation,
    r: &Permutation,
) -> Result<bool, SpinError> {
    let pq = p.compose(q)?;
    let qr = q.compose(r)?;
    Ok(cocycle(p, q)? * cocycle(&pq, r)? == cocycle(q, r)? * cocycle(p, &qr)?)
}

/// Checks every defining relation of both presentations in `S̃_n` and
/// returns a description of each one that fails.
pub fn relation_failures(n: usize) -> Vec<String> {
    let mut bad = Vec::new();
    let one = SpinElement::identity(n);
    let z = SpinElement::z(n);
    let mul = |a: &SpinElement, b: &SpinElement| a.multiply(b).expect("equal sizes");
    let mut check = |ok: bool, what: String| {
        if !ok {
            bad.push(what);
        }
    };
    check(mul(&z, &z) == one, "z^2 = 1".into());
    let labels: Vec<Label> = (0..n)
        .flat_map(|a| {
            (0..n)
                .filter(move |&b| b != a)
                .map(move |b| Label::new(a, b))
        })
        .collect();
    let lift = |t: Label| SpinElement::lift(n, t).expect("valid label");
    for &t in &labels {
        let lt = lift(t);
        check(
            mul(&z, &lt) == mul(&lt, &z),
            format!("z central with {t:?}"),
        );
        check(
            lt == mul(&z, &lift(t.reversed())),
            format!("reversal of {t:?}"),
        );
        check(mul(&lt, &lt) == z, format!("square of {t:?}"));
        for &u in &labels {
            let lu = lift(u);
            if t.a != u.a && t.a != u.b && t.b != u.a && t.b != u.b {
                check(
                    mul(&lt, &lu) == mul(&z, &mul(&lu, &lt)),
                    format!("anticommutation {t:?} {u:?}"),
                );
            }
            if t.b == u.a && t.a != u.b {
                let ik = lift(Label::new(t.a, u.b));
                check(
                    mul(&mul(&lt, &lu), &lt) == ik,
                    format!("conjugation {t:?} {u:?}"),
                );
                check(
                    mul(&mul(&lu, &lt), &lu) == ik,
                    format!("conjugation {u:?} {t:?}"),
                );
            }
        }
    }
    for i in 0..n.saturating_sub(1) {
        let ti = lift(Label::new(i, i + 1));
        for j in 0..n.saturating_sub(1) {
            let tj = lift(Label::new(j, j + 1));
            if i.abs_diff(j) > 1 {
                check(
                    mul(&ti, &tj) == mul(&z, &mul(&tj, &ti)),
                    format!("far generators {i} {j}"),
                );
            }
            if j == i + 1 {
                check(
                    mul(&mul(&ti, &tj), &ti) == mul(&mul(&tj, &ti), &tj),
                    format!("braid {i}"),
                );
            }
        }
    }
    bad
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    #[test]
    fn compose_examples() {
        let id = Permutation::identity(3);
        let t01 = Permutation::transposition(3, 0, 1).unwrap();
        let t12 = Permutation::transposition(3, 1, 2).unwrap();
        assert_eq!(id.compose(&t12).unwrap(), t12);
        assert_eq!(t01.compose(&t01).unwrap(), id);
        assert_eq!(t01.compose(&t12).unwrap(), p(&[1, 2, 0]));
        assert_eq!(
            id.compose(&Permutation::identity(4)),
            Err(SpinError::SizeMismatch(3, 4))
        );
    }

    #[test]
    fn rejects_non_permutations() {
        assert!(Permutation::new(vec![0, 0]).is_err());
        assert!(Permutation::new(vec![0, 2]).is_err());
    }

    #[test]
    fn signature_examples() {
        assert_eq!(Permutation::identity(4).signature(), 0);
        assert_eq!(Permutation::transposition(2, 0, 1).unwrap().signature(), 1);
        assert_eq!(p(&[1, 2, 0]).signature(), 0);
    }

    #[test]
    fn canonical_word_examples() {
        assert!(Permutation::identity(3).canonical_word().factors.is_empty());
        assert_eq!(
            Permutation::transposition(2, 0, 1)
                .unwrap()
                .canonical_word()
                .factors,
            vec![Label::new(0, 1)]
        );
        assert_eq!(
            p(&[1, 2, 0]).canonical_word().factors,
            vec![Label::new(0, 1), Label::new(1, 2)]
        );
    }

    #[test]
    fn canonical_word_reproduces_permutation() {
        for n in 1..=5 {
            for x in Permutation::all(n) {
                let mut acc = Permutation::identity(n);
                for t in x.canonical_word().factors {
                    assert!(t.a < t.b);
                    acc = acc.swap_positions(t.a, t.b);
                }
                assert_eq!(acc, x);
            }
        }
    }

    #[test]
    fn section_examples() {
        let t13 = Permutation::transposition(4, 1, 3).unwrap();
        let s = SpinElement::section(&t13);
        assert_eq!((s.perm.clone(), s.bit), (t13.clone(), 0));
        assert_eq!(SpinElement::lift(4, Label::new(1, 3)).unwrap(), s);
    }

    #[test]
    fn right_multiplication_examples() {
        let id = SpinElement::identity(2);
        let t = Label::new(0, 1);
        let swap = SpinElement::section(&Permutation::transposition(2, 0, 1).unwrap());
        assert_eq!(id.right_mul_transposition(t).unwrap(), swap);
        assert_eq!(swap.right_mul_transposition(t).unwrap(), SpinElement::z(2));
        assert_eq!(
            swap.right_mul_transposition(t.reversed()).unwrap(),
            SpinElement::identity(2)
        );
        assert!(id.right_mul_transposition(Label::new(0, 2)).is_err());
        assert!(id.right_mul_transposition(Label::new(1, 1)).is_err());
    }

    #[test]
    fn multiply_examples() {
        let n = 4;
        let t0 = SpinElement::generator(n, 0).unwrap();
        let g = SpinElement::section(&p(&[2, 0, 3, 1]));
        assert_eq!(g.multiply(&SpinElement::identity(n)).unwrap(), g);
        assert_eq!(t0.multiply(&t0).unwrap(), SpinElement::z(n));
        let a = SpinElement::lift(n, Label::new(0, 1)).unwrap();
        let b = SpinElement::lift(n, Label::new(2, 3)).unwrap();
        let ab = a.multiply(&b).unwrap();
        let ba = b.multiply(&a).unwrap();
        assert_eq!(ab.perm, ba.perm);
        assert_eq!(ab.bit ^ ba.bit, 1);
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(SpinElement::identity(3).inverse(), SpinElement::identity(3));
        let t = SpinElement::lift(2, Label::new(0, 1)).unwrap();
        assert_eq!(t.inverse(), t.clone().with_z());
    }

    #[test]
    fn cocycle_examples() {
        let id = Permutation::identity(4);
        let t01 = Permutation::transposition(4, 0, 1).unwrap();
        let t23 = Permutation::transposition(4, 2, 3).unwrap();
        let t13 = Permutation::transposition(4, 1, 3).unwrap();
        assert_eq!(cocycle(&t13, &id).unwrap(), 1);
        assert_eq!(cocycle(&id, &t13).unwrap(), 1);
        assert_eq!(cocycle(&t13, &t13).unwrap(), -1);
        assert_eq!(cocycle(&t01, &t23).unwrap(), 1);
        assert_eq!(cocycle(&t23, &t01).unwrap(), -1);
    }

    #[test]
    fn conjugation_examples() {
        let t = Label::new(1, 2);
        assert_eq!(
            SpinElement::identity(3).conjugate_transposition(t).unwrap(),
            (0, t)
        );
        let t0 = SpinElement::generator(4, 0).unwrap();
        assert_eq!(
            t0.conjugate_transposition(Label::new(2, 3)).unwrap(),
            (1, Label::new(2, 3))
        );
        let g = SpinElement::section(&p(&[1, 2, 0]));
        assert_eq!(
            g.conjugate_transposition(Label::new(0, 2)).unwrap(),
            (0, Label::new(1, 0))
        );
    }

    #[test]
    fn sigma_projects_to_cycle() {
        for n in 2..=6 {
            assert_eq!(sigma(n).perm, Permutation::cycle(n));
        }
        assert_eq!(sigma(2), SpinElement::generator(2, 0).unwrap());
    }

    #[test]
    fn enumerates_all_permutations() {
        assert_eq!(Permutation::all(4).len(), 24);
        assert_eq!(Permutation::all(1).len(), 1);
        let all = Permutation::all(3);
        assert_eq!(all[0], p(&[0, 1, 2]));
        assert_eq!(all[5], p(&[2, 1, 0]));
    }

    #[test]
    fn relations_hold_small() {
        for n in 2..=5 {
            assert!(relation_failures(n).is_empty(), "n = {n}");
        }
    }
}
