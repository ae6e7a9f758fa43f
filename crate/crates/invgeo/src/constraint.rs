//! Sets of polynomial constraints.
//!
//! A `ConstraintSet` records polynomials whose simultaneous vanishing encodes
//! a geometric predicate. Members are normalized before insertion: content
//! (the gcd of the coefficients) is removed and the leading coefficient is
//! made positive, so a set compares equal regardless of how its members were
//! derived or signed. The empty set means the predicate holds identically in
//! the parameters.

use std::collections::BTreeSet;
use std::fmt;

use crate::poly::Polynomial;
use crate::rational::Rational;

/// Scales out content and flips sign so the leading coefficient is positive.
/// Returns `None` for the zero polynomial.
pub fn normalize_constraint(p: &Polynomial) -> Option<Polynomial> {
    if p.is_zero() {
        return None;
    }
    let content = p.content();
    let mut q = p.scale(&content.recip());
    if q.leading().map(|(_, c)| c.is_negative()).unwrap_or(false) {
        q = q.negate();
    }
    Some(q)
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ConstraintSet {
    items: BTreeSet<Polynomial>,
}

impl ConstraintSet {
    pub fn new() -> Self {
        ConstraintSet::default()
    }

    pub fn insert(&mut self, p: &Polynomial) {
        if let Some(q) = normalize_constraint(p) {
            self.items.insert(q);
        }
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Polynomial> {
        self.items.iter()
    }

    /// True when the normalization of `p` is a member.
    pub fn contains(&self, p: &Polynomial) -> bool {
        match normalize_constraint(p) {
            Some(q) => self.items.contains(&q),
            None => false,
        }
    }

    pub fn union(&self, other: &ConstraintSet) -> ConstraintSet {
        let mut out = self.clone();
        for p in &other.items {
            out.items.insert(p.clone());
        }
        out
    }

    /// Row-reduces the set, valid only when every member is homogeneous
    /// linear in the parameters. Returns the reduced normalized basis with
    /// the same vanishing locus, or `None` if some member is nonlinear.
    pub fn reduced_linear_basis(&self) -> Option<ConstraintSet> {
        let table = match self.items.iter().next() {
            Some(p) => p.table().clone(),
            None => return Some(ConstraintSet::new()),
        };
        let n = table.len();
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        for p in &self.items {
            let mut row = vec![Rational::zero(); n];
            for (mono, coeff) in p.terms() {
                if mono.degree() != 1 {
                    return None;
                }
                let (idx, _) = mono.exponents().next().expect("degree-one monomial");
                row[idx] = coeff.clone();
            }
            rows.push(row);
        }
        // Gauss-Jordan over the rationals.
        let mut pivot_row = 0;
        for col in 0..n {
            let Some(found) = (pivot_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
                continue;
            };
            rows.swap(pivot_row, found);
            let inv = rows[pivot_row][col].recip();
            for v in rows[pivot_row].iter_mut() {
                *v = &*v * &inv;
            }
            for r in 0..rows.len() {
                if r != pivot_row && !rows[r][col].is_zero() {
                    let factor = rows[r][col].clone();
                    for c in 0..n {
                        let delta = &rows[pivot_row][c] * &factor;
                        rows[r][c] = &rows[r][c] - &delta;
                    }
                }
            }
            pivot_row += 1;
            if pivot_row == rows.len() {
                break;
            }
        }
        let mut out = ConstraintSet::new();
        for row in rows.iter().take(pivot_row) {
            let mut p = Polynomial::zero(&table);
            for (idx, coeff) in row.iter().enumerate() {
                if !coeff.is_zero() {
                    p = &p + &Polynomial::param(&table, idx).scale(coeff);
                }
            }
            out.insert(&p);
        }
        Some(out)
    }
}

impl FromIterator<Polynomial> for ConstraintSet {
    fn from_iter<I: IntoIterator<Item = Polynomial>>(iter: I) -> Self {
        let mut set = ConstraintSet::new();
        for p in iter {
            set.insert(&p);
        }
        set
    }
}

impl fmt::Display for ConstraintSet {
    /// Renders `{p1, p2, ...}` with members in descending canonical order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.items.iter().rev().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}
