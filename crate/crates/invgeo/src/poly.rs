//! Canonical-form multivariate polynomials over the rationals.
//!
//! A `Polynomial` is a map from monomials to nonzero rational coefficients,
//! tied to a fixed `ParameterTable`. Two polynomials are equal exactly when
//! their term maps agree, so structural equality decides identities.
//!
//! Monomials are ordered graded-lexicographically with parameters in
//! declaration order (earlier parameters rank higher), which fixes a
//! deterministic rendering for golden tests.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::GeometryError;
use crate::rational::Rational;

/// Returns true when `s` is a valid identifier: `[A-Za-z_][A-Za-z0-9_]*`.
pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// The ordered list of scalar parameters a polynomial may mention.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParameterTable {
    names: Vec<String>,
}

impl ParameterTable {
    /// Validates and builds a shared table. Names must be distinct identifiers.
    pub fn new<I, S>(names: I) -> Result<Arc<Self>, GeometryError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for name in &names {
            if !is_identifier(name) {
                return Err(GeometryError::InvalidIdentifier(name.clone()));
            }
        }
        for (i, name) in names.iter().enumerate() {
            if names[..i].contains(name) {
                return Err(GeometryError::DuplicateName(name.clone()));
            }
        }
        Ok(Arc::new(ParameterTable { names }))
    }

    pub fn empty() -> Arc<Self> {
        Arc::new(ParameterTable { names: Vec::new() })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, idx: usize) -> &str {
        &self.names[idx]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

pub(crate) fn tables_match(a: &Arc<ParameterTable>, b: &Arc<ParameterTable>) -> bool {
    Arc::ptr_eq(a, b) || a.names == b.names
}

/// A product of parameters with positive integer exponents.
///
/// The empty exponent map is the constant monomial 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monomial {
    exps: BTreeMap<usize, u32>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial {
            exps: BTreeMap::new(),
        }
    }

    pub fn var(idx: usize) -> Self {
        let mut exps = BTreeMap::new();
        exps.insert(idx, 1);
        Monomial { exps }
    }

    pub fn from_exponents<I: IntoIterator<Item = (usize, u32)>>(iter: I) -> Self {
        let mut exps = BTreeMap::new();
        for (idx, e) in iter {
            if e > 0 {
                *exps.entry(idx).or_insert(0) += e;
            }
        }
        Monomial { exps }
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.exps.values().sum()
    }

    pub fn exponent(&self, idx: usize) -> u32 {
        self.exps.get(&idx).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.exps.iter().map(|(&i, &e)| (i, e))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = self.exps.clone();
        for (&idx, &e) in &other.exps {
            *exps.entry(idx).or_insert(0) += e;
        }
        Monomial { exps }
    }

    /// Removes `idx` entirely, returning its exponent.
    fn without(&self, idx: usize) -> (Monomial, u32) {
        let mut exps = self.exps.clone();
        let e = exps.remove(&idx).unwrap_or(0);
        (Monomial { exps }, e)
    }
}

impl Ord for Monomial {
    /// Graded-lex: higher total degree wins; ties break lexicographically with
    /// earlier-declared parameters ranking higher.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let mut a = self.exps.iter();
        let mut b = other.exps.iter();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                // equal degrees: whoever exhausts first spent its degree on
                // earlier (greater) parameters
                (None, Some(_)) => return Ordering::Greater,
                (Some(_), None) => return Ordering::Less,
                (Some((&ia, &ea)), Some((&ib, &eb))) => {
                    // a nonzero exponent at an earlier parameter index wins
                    match ia.cmp(&ib) {
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                        Ordering::Equal => match ea.cmp(&eb) {
                            Ordering::Equal => continue,
                            ord => return ord,
                        },
                    }
                }
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical-form polynomial over a shared parameter table.
#[derive(Debug, Clone)]
pub struct Polynomial {
    table: Arc<ParameterTable>,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(table: &Arc<ParameterTable>) -> Self {
        Polynomial {
            table: Arc::clone(table),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(table: &Arc<ParameterTable>, value: Rational) -> Self {
        let mut p = Polynomial::zero(table);
        if !value.is_zero() {
            p.terms.insert(Monomial::one(), value);
        }
        p
    }

    pub fn int(table: &Arc<ParameterTable>, value: i64) -> Self {
        Polynomial::constant(table, Rational::from_int(value))
    }

    /// The polynomial for a named parameter.
    pub fn parameter(table: &Arc<ParameterTable>, name: &str) -> Result<Self, GeometryError> {
        let idx = table
            .index_of(name)
            .ok_or_else(|| GeometryError::UnknownParameter(name.to_string()))?;
        Ok(Polynomial::param(table, idx))
    }

    pub fn param(table: &Arc<ParameterTable>, idx: usize) -> Self {
        assert!(idx < table.len(), "parameter index out of range");
        let mut p = Polynomial::zero(table);
        p.terms.insert(Monomial::var(idx), Rational::one());
        p
    }

    /// Builds a polynomial from raw terms, merging and dropping zeros.
    pub fn from_terms<I>(table: &Arc<ParameterTable>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Polynomial::zero(table);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn table(&self) -> &Arc<ParameterTable> {
        &self.table
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// The graded-lex greatest term, if any.
    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// True when the polynomial is a single term.
    pub fn is_single_term(&self) -> bool {
        self.terms.len() == 1
    }

    fn add_term(&mut self, mono: Monomial, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&mono) {
            Some(c) => {
                *c += &coeff;
                if c.is_zero() {
                    self.terms.remove(&mono);
                }
            }
            None => {
                self.terms.insert(mono, coeff);
            }
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial, GeometryError> {
        if !tables_match(&self.table, &other.table) {
            return Err(GeometryError::TableMismatch);
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial, GeometryError> {
        self.checked_add(&other.negate())
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial, GeometryError> {
        if !tables_match(&self.table, &other.table) {
            return Err(GeometryError::TableMismatch);
        }
        let mut out = Polynomial::zero(&self.table);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn negate(&self) -> Polynomial {
        Polynomial {
            table: Arc::clone(&self.table),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, factor: &Rational) -> Polynomial {
        if factor.is_zero() {
            return Polynomial::zero(&self.table);
        }
        Polynomial {
            table: Arc::clone(&self.table),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c * factor))
                .collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Polynomial {
        let mut out = Polynomial::constant(&self.table, Rational::one());
        for _ in 0..exp {
            out = &out * self;
        }
        out
    }

    /// Substitutes `replacement` for the parameter at `idx`.
    pub fn substitute(
        &self,
        idx: usize,
        replacement: &Polynomial,
    ) -> Result<Polynomial, GeometryError> {
        if !tables_match(&self.table, replacement.table()) {
            return Err(GeometryError::TableMismatch);
        }
        let mut out = Polynomial::zero(&self.table);
        for (m, c) in &self.terms {
            let (rest, e) = m.without(idx);
            let mut piece = Polynomial::from_terms(&self.table, [(rest, c.clone())]);
            if e > 0 {
                piece = &piece * &replacement.pow(e);
            }
            out = &out + &piece;
        }
        Ok(out)
    }

    pub fn substitute_named(
        &self,
        name: &str,
        replacement: &Polynomial,
    ) -> Result<Polynomial, GeometryError> {
        let idx = self
            .table
            .index_of(name)
            .ok_or_else(|| GeometryError::UnknownParameter(name.to_string()))?;
        self.substitute(idx, replacement)
    }

    /// Evaluates at a by-name assignment that must cover every parameter
    /// actually appearing in the polynomial.
    pub fn eval(&self, assignment: &BTreeMap<String, Rational>) -> Result<Rational, GeometryError> {
        let mut resolved: Vec<Option<&Rational>> = vec![None; self.table.len()];
        for (name, value) in assignment {
            if let Some(idx) = self.table.index_of(name) {
                resolved[idx] = Some(value);
            }
        }
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (idx, e) in m.exponents() {
                let value = resolved[idx].ok_or_else(|| {
                    GeometryError::MissingParameter(self.table.name(idx).to_string())
                })?;
                term *= &value.pow(e);
            }
            total += &term;
        }
        Ok(total)
    }

    /// Evaluates at a full positional assignment (`values[i]` for parameter `i`).
    pub fn eval_indexed(&self, values: &[Rational]) -> Rational {
        debug_assert_eq!(values.len(), self.table.len());
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (idx, e) in m.exponents() {
                term *= &values[idx].pow(e);
            }
            total += &term;
        }
        total
    }

    /// Positive rational `c` such that `self / c` has coprime integer
    /// coefficients. Returns 1 for the zero polynomial.
    pub fn content(&self) -> Rational {
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(&c.numer().abs());
            den_lcm = den_lcm.lcm(c.denom());
        }
        if num_gcd.is_zero() {
            return Rational::one();
        }
        Rational::from_big(num_gcd, den_lcm).expect("nonzero denominator")
    }

    fn render_monomial(&self, m: &Monomial) -> String {
        m.exponents()
            .map(|(idx, e)| {
                if e == 1 {
                    self.table.name(idx).to_string()
                } else {
                    format!("{}^{}", self.table.name(idx), e)
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        tables_match(&self.table, &other.table) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Ord for Polynomial {
    /// Total order for deterministic sets: compares term sequences from the
    /// leading term down, then table names.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        let mut a = self.terms.iter().rev();
        let mut b = other.terms.iter().rev();
        loop {
            match (a.next(), b.next()) {
                (None, None) => break,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some((ma, ca)), Some((mb, cb))) => match ma.cmp(mb).then(ca.cmp(cb)) {
                    Ordering::Equal => continue,
                    ord => return ord,
                },
            }
        }
        self.table.names().cmp(other.table.names())
    }
}

impl PartialOrd for Polynomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Polynomial {
    /// Deterministic canonical rendering: terms in descending graded-lex
    /// order, e.g. `-1/2*theta1^2 - 1/2*theta2^2 - 6*z2^2`; zero is `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let mag = c.abs();
            let body = if m.is_one() {
                mag.to_string()
            } else if mag.is_one() {
                self.render_monomial(m)
            } else {
                format!("{}*{}", mag, self.render_monomial(m))
            };
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            write!(f, "{body}")?;
        }
        Ok(())
    }
}

macro_rules! poly_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs).expect("parameter tables do not match")
            }
        }
    };
}

poly_binop!(Add, add, checked_add);
poly_binop!(Sub, sub, checked_sub);
poly_binop!(Mul, mul, checked_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.negate()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> Arc<ParameterTable> {
        ParameterTable::new(["theta1", "theta2", "z2"]).unwrap()
    }

    fn p(table: &Arc<ParameterTable>, name: &str) -> Polynomial {
        Polynomial::parameter(table, name).unwrap()
    }

    #[test]
    fn table_validation() {
        assert!(ParameterTable::new(["a", "b"]).is_ok());
        assert!(matches!(
            ParameterTable::new(["a", "a"]),
            Err(GeometryError::DuplicateName(_))
        ));
        assert!(matches!(
            ParameterTable::new(["2bad"]),
            Err(GeometryError::InvalidIdentifier(_))
        ));
        assert!(matches!(
            ParameterTable::new([""]),
            Err(GeometryError::InvalidIdentifier(_))
        ));
    }

    #[test]
    fn add_cancellation() {
        let t = table();
        let z2 = p(&t, "z2");
        let theta1 = p(&t, "theta1");
        // (z2 + theta1) + (z2 - theta1) = 2*z2
        let lhs = &(&z2 + &theta1) + &(&z2 - &theta1);
        assert_eq!(lhs, z2.scale(&Rational::from_int(2)));
    }

    #[test]
    fn additive_identity() {
        let t = table();
        let q = &p(&t, "theta2") * &p(&t, "z2");
        assert_eq!(&q + &Polynomial::zero(&t), q);
        assert_eq!(&q + &q.negate(), Polynomial::zero(&t));
    }

    #[test]
    fn ricci_difference() {
        // (-1/2 theta1^2 - 1/2 theta2^2 - 6 z2^2) + (1/2 theta1^2)
        //   = -1/2 theta2^2 - 6 z2^2
        let t = table();
        let theta1 = p(&t, "theta1");
        let theta2 = p(&t, "theta2");
        let z2 = p(&t, "z2");
        let half = Rational::new(1, 2);
        let a = &(&theta1 * &theta1).scale(&-&half)
            + &(&(&theta2 * &theta2).scale(&-&half) - &(&z2 * &z2).scale(&Rational::from_int(6)));
        let sum = &a + &(&theta1 * &theta1).scale(&half);
        let expected =
            &(&theta2 * &theta2).scale(&-&half) - &(&z2 * &z2).scale(&Rational::from_int(6));
        assert_eq!(sum, expected);
    }

    #[test]
    fn mul_examples() {
        let t = ParameterTable::new(["z1", "z4"]).unwrap();
        let z1 = p(&t, "z1");
        let z4 = p(&t, "z4");
        let lin = &z1.scale(&Rational::from_int(2)) - &z4;
        let sq = &lin * &lin;
        // 4 z1^2 - 4 z1 z4 + z4^2
        let expected = Polynomial::from_terms(
            &t,
            [
                (Monomial::from_exponents([(0, 2)]), Rational::from_int(4)),
                (
                    Monomial::from_exponents([(0, 1), (1, 1)]),
                    Rational::from_int(-4),
                ),
                (Monomial::from_exponents([(1, 2)]), Rational::from_int(1)),
            ],
        );
        assert_eq!(sq, expected);
        assert_eq!(&sq * &Polynomial::zero(&t), Polynomial::zero(&t));
    }

    #[test]
    fn eval_examples() {
        let t = table();
        let z2 = p(&t, "z2");
        let doubled = z2.scale(&Rational::from_int(2));
        let mut assignment = BTreeMap::new();
        assignment.insert("z2".to_string(), Rational::from_int(3));
        assert_eq!(doubled.eval(&assignment).unwrap(), Rational::from_int(6));
        assert_eq!(
            Polynomial::zero(&t).eval(&BTreeMap::new()).unwrap(),
            Rational::zero()
        );

        // -1/2 (theta1^2 + theta2^2) - 6 z2^2 at all-ones is -7
        let theta1 = p(&t, "theta1");
        let theta2 = p(&t, "theta2");
        let ric = &(&(&theta1 * &theta1) + &(&theta2 * &theta2)).scale(&Rational::new(-1, 2))
            - &(&z2 * &z2).scale(&Rational::from_int(6));
        let ones: BTreeMap<String, Rational> = ["theta1", "theta2", "z2"]
            .iter()
            .map(|n| (n.to_string(), Rational::one()))
            .collect();
        assert_eq!(ric.eval(&ones).unwrap(), Rational::from_int(-7));
    }

    #[test]
    fn eval_missing_parameter() {
        let t = table();
        let q = p(&t, "theta1");
        let err = q.eval(&BTreeMap::new()).unwrap_err();
        assert_eq!(err, GeometryError::MissingParameter("theta1".into()));
    }

    #[test]
    fn table_mismatch() {
        let a = ParameterTable::new(["x"]).unwrap();
        let b = ParameterTable::new(["y"]).unwrap();
        let pa = p(&a, "x");
        let pb = p(&b, "y");
        assert_eq!(pa.checked_add(&pb), Err(GeometryError::TableMismatch));
    }

    #[test]
    fn rendering() {
        let t = table();
        assert_eq!(Polynomial::zero(&t).to_string(), "0");
        let theta1 = p(&t, "theta1");
        let sq = (&theta1 * &theta1).scale(&Rational::new(-1, 2));
        assert_eq!(sq.to_string(), "-1/2*theta1^2");

        let theta2 = p(&t, "theta2");
        let z2 = p(&t, "z2");
        let ric = &(&(&theta1 * &theta1) + &(&theta2 * &theta2)).scale(&Rational::new(-1, 2))
            - &(&z2 * &z2).scale(&Rational::from_int(6));
        assert_eq!(ric.to_string(), "-1/2*theta1^2 - 1/2*theta2^2 - 6*z2^2");
    }

    #[test]
    fn grlex_order() {
        // degree dominates; within a degree earlier parameters rank higher
        let x2 = Monomial::from_exponents([(0, 2)]);
        let xy = Monomial::from_exponents([(0, 1), (1, 1)]);
        let y2 = Monomial::from_exponents([(1, 2)]);
        let x = Monomial::var(0);
        assert!(x2 > xy);
        assert!(xy > y2);
        assert!(y2 > x);
        assert!(Monomial::var(0) > Monomial::var(2));
    }

    #[test]
    fn substitution() {
        let t = ParameterTable::new(["alpha", "beta", "theta2"]).unwrap();
        let alpha = p(&t, "alpha");
        let theta2 = p(&t, "theta2");
        // (2 alpha + theta2)[theta2 := -2 alpha] = 0
        let c = &alpha.scale(&Rational::from_int(2)) + &theta2;
        let sub = c
            .substitute_named("theta2", &alpha.scale(&Rational::from_int(-2)))
            .unwrap();
        assert!(sub.is_zero());
        // theta2^2[theta2 := -2 alpha] = 4 alpha^2
        let sq = (&theta2 * &theta2)
            .substitute_named("theta2", &alpha.scale(&Rational::from_int(-2)))
            .unwrap();
        assert_eq!(sq, (&alpha * &alpha).scale(&Rational::from_int(4)));
    }

    #[test]
    fn content() {
        let t = table();
        let theta1 = p(&t, "theta1");
        let theta2 = p(&t, "theta2");
        let q = &theta1.scale(&Rational::new(-1, 2)) - &theta2.scale(&Rational::new(-3, 2));
        assert_eq!(q.content(), Rational::new(1, 2));
        let r = &theta1.scale(&Rational::from_int(4)) + &theta2.scale(&Rational::from_int(6));
        assert_eq!(r.content(), Rational::from_int(2));
        assert_eq!(Polynomial::zero(&t).content(), Rational::one());
    }
}
