//! Multivariate Laurent polynomials with integer coefficients, used for
//! Poincaré series and Euler characteristics.

use std::collections::BTreeMap;
use std::fmt;

/// Exponent vectors map to nonzero coefficients. Each variable carries a
/// denominator: exponents are stored as multiples of `1/denominator` so that
/// half-integral Alexander gradings stay exact.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    names: Vec<String>,
    denominators: Vec<i64>,
    terms: BTreeMap<Vec<i64>, i64>,
}

impl LaurentPoly {
    pub fn zero(names: Vec<String>, denominators: Vec<i64>) -> Self {
        assert_eq!(names.len(), denominators.len());
        Self {
            names,
            denominators,
            terms: BTreeMap::new(),
        }
    }

    /// Same variables, no terms.
    pub fn zero_like(&self) -> Self {
        Self::zero(self.names.clone(), self.denominators.clone())
    }

    pub fn one_like(&self) -> Self {
        let mut p = self.zero_like();
        p.add_term(vec![0; self.names.len()], 1);
        p
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn denominators(&self) -> &[i64] {
        &self.denominators
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Vec<i64>, i64)> {
        self.terms.iter().map(|(e, &c)| (e, c))
    }

    pub fn coefficient(&self, e: &[i64]) -> i64 {
        self.terms.get(e).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, e: Vec<i64>, c: i64) {
        assert_eq!(e.len(), self.names.len());
        if c == 0 {
            return;
        }
        let v = self.terms.entry(e.clone()).or_insert(0);
        *v += c;
        if *v == 0 {
            self.terms.remove(&e);
        }
    }

    pub fn total_coefficient_abs(&self) -> i64 {
        self.terms.values().map(|c| c.abs()).sum()
    }

    pub fn sum_of_coefficients(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.denominators, other.denominators);
        let mut out = self.zero_like();
        for (e1, &c1) in &self.terms {
            for (e2, &c2) in &other.terms {
                out.add_term(e1.iter().zip(e2).map(|(a, b)| a + b).collect(), c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: i64) -> LaurentPoly {
        let mut out = self.zero_like();
        for (e, &v) in &self.terms {
            out.add_term(e.clone(), v * c);
        }
        out
    }

    /// Multiplies by the monomial with exponent vector `shift`.
    pub fn shift(&self, shift: &[i64]) -> LaurentPoly {
        let mut out = self.zero_like();
        for (e, &c) in &self.terms {
            out.add_term(e.iter().zip(shift).map(|(a, b)| a + b).collect(), c);
        }
        out
    }

    /// Exact division by `1 + m` where `m` is the monomial with exponent
    /// vector `m` and `m[0] < 0`. Returns `None` when not divisible.
    pub fn divide_one_plus(&self, m: &[i64]) -> Option<LaurentPoly> {
        assert!(
            m[0] < 0,
            "division needs a monomial lowering the first exponent"
        );
        let mut rem = self.clone();
        let mut quot = self.zero_like();
        let floor = self.terms.keys().map(|e| e[0]).min().unwrap_or(0);
        // peel off the term with the largest first exponent each round
        while let Some((e, c)) = rem.terms.iter().next_back().map(|(e, &c)| (e.clone(), c)) {
            let lowered: Vec<i64> = e.iter().zip(m).map(|(a, b)| a + b).collect();
            if lowered[0] < floor {
                return None;
            }
            quot.add_term(e.clone(), c);
            rem.add_term(e, -c);
            rem.add_term(lowered, -c);
        }
        Some(quot)
    }

    /// Substitutes `-1` for the first variable and drops it.
    pub fn eval_first_at_minus_one(&self) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.names[1..].to_vec(), self.denominators[1..].to_vec());
        for (e, &c) in &self.terms {
            let sign = if e[0].rem_euclid(2) == 1 { -1 } else { 1 };
            out.add_term(e[1..].to_vec(), sign * c);
        }
        out
    }

    pub fn min_exponent(&self, var: usize) -> Option<i64> {
        self.terms.keys().map(|e| e[var]).min()
    }

    pub fn max_exponent(&self, var: usize) -> Option<i64> {
        self.terms.keys().map(|e| e[var]).max()
    }

    /// Reorders variables: new variable `i` is old variable `order[i]`.
    pub fn permute_vars(&self, order: &[usize]) -> LaurentPoly {
        let mut out = LaurentPoly::zero(
            order.iter().map(|&i| self.names[i].clone()).collect(),
            order.iter().map(|&i| self.denominators[i]).collect(),
        );
        for (e, &c) in &self.terms {
            out.add_term(order.iter().map(|&i| e[i]).collect(), c);
        }
        out
    }

    fn fmt_exponent(&self, var: usize, e: i64) -> Option<String> {
        if e == 0 {
            return None;
        }
        let d = self.denominators[var];
        let name = &self.names[var];
        let g = num_integer::gcd(e, d);
        let (num, den) = (e / g, d / g);
        Some(match (num, den) {
            (1, 1) => name.clone(),
            (_, 1) => format!("{name}^{num}"),
            _ => format!("{name}^({num}/{den})"),
        })
    }
}

impl fmt::Display for LaurentPoly {
    /// Canonical form: terms in decreasing exponent order (lexicographic over
    /// the variable list), ` + ` / ` - ` separators.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (e, &c)) in self.terms.iter().rev().enumerate() {
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter_map(|(v, &x)| self.fmt_exponent(v, x))
                .collect();
            let mag = c.abs();
            let body = match (vars.is_empty(), mag) {
                (true, _) => mag.to_string(),
                (false, 1) => vars.join("*"),
                (false, _) => format!("{mag}*{}", vars.join("*")),
            };
            match (idx, c < 0) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}
