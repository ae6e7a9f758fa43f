//! Lie algebra values: structure constants, brackets, Jacobi verification.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::constraint::ConstraintSet;
use crate::error::GeometryError;
use crate::poly::{tables_match, ParameterTable, Polynomial};
use crate::rational::Rational;

/// An element of the algebra with polynomial coordinates in the fixed basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vector {
    components: Vec<Polynomial>,
}

impl Vector {
    pub fn new(components: Vec<Polynomial>) -> Self {
        Vector { components }
    }

    pub fn zero(table: &Arc<ParameterTable>, dim: usize) -> Self {
        Vector {
            components: vec![Polynomial::zero(table); dim],
        }
    }

    pub fn basis(table: &Arc<ParameterTable>, dim: usize, idx: usize) -> Self {
        let mut v = Vector::zero(table, dim);
        v.components[idx] = Polynomial::constant(table, Rational::one());
        v
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn component(&self, idx: usize) -> &Polynomial {
        &self.components[idx]
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Polynomial::is_zero)
    }

    pub fn add(&self, other: &Vector) -> Vector {
        assert_eq!(self.dim(), other.dim());
        Vector {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        self.add(&other.negate())
    }

    pub fn negate(&self) -> Vector {
        Vector {
            components: self.components.iter().map(Polynomial::negate).collect(),
        }
    }

    pub fn scale(&self, factor: &Polynomial) -> Vector {
        Vector {
            components: self.components.iter().map(|c| c * factor).collect(),
        }
    }

    pub fn scale_rational(&self, factor: &Rational) -> Vector {
        Vector {
            components: self.components.iter().map(|c| c.scale(factor)).collect(),
        }
    }

    /// Keeps the listed component indices, zeroing the rest.
    pub fn project(&self, keep: &BTreeSet<usize>) -> Vector {
        Vector {
            components: self
                .components
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    if keep.contains(&i) {
                        c.clone()
                    } else {
                        Polynomial::zero(c.table())
                    }
                })
                .collect(),
        }
    }

    /// Renders in bracket-value syntax, e.g. `-2*z2*X - 1/2*theta1*Z`.
    ///
    /// Multi-term coefficients are parenthesized: `(2*z1 - z4)*W`. The zero
    /// vector renders as `0`. The output parses back via the bracket-value
    /// grammar.
    pub fn render(&self, basis: &[String]) -> String {
        let mut out = String::new();
        let mut first = true;
        for (idx, p) in self.components.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let name = &basis[idx];
            let (negative, body) = if p.is_single_term() {
                let (mono, coeff) = p.leading().expect("single term");
                let mag = coeff.abs();
                let body = if mono.is_one() {
                    if mag.is_one() {
                        name.clone()
                    } else {
                        format!("{mag}*{name}")
                    }
                } else {
                    let mono_poly =
                        Polynomial::from_terms(p.table(), [(mono.clone(), mag.clone())]);
                    format!("{mono_poly}*{name}")
                };
                (coeff.is_negative(), body)
            } else {
                (false, format!("({p})*{name}"))
            };
            if first {
                if negative {
                    out.push('-');
                }
                first = false;
            } else if negative {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            out.push_str(&body);
        }
        if first {
            out.push('0');
        }
        out
    }
}

/// A finite-dimensional algebra given by an antisymmetric structure tensor
/// over an orthonormal basis, with an optional marked vertical distribution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebraSpec {
    basis: Vec<String>,
    params: Arc<ParameterTable>,
    c: Vec<Vec<Vec<Polynomial>>>,
    vertical: Option<Vec<usize>>,
}

impl LieAlgebraSpec {
    /// Validates antisymmetry (`C[i][j][k] = -C[j][i][k]`, zero diagonal) and
    /// name hygiene.
    pub fn new(
        basis: Vec<String>,
        params: Arc<ParameterTable>,
        c: Vec<Vec<Vec<Polynomial>>>,
        vertical: Option<Vec<usize>>,
    ) -> Result<Self, GeometryError> {
        let dim = basis.len();
        if dim == 0 {
            return Err(GeometryError::DimensionMismatch {
                expected: 1,
                got: 0,
            });
        }
        for name in &basis {
            if !crate::poly::is_identifier(name) {
                return Err(GeometryError::InvalidIdentifier(name.clone()));
            }
            if params.index_of(name).is_some() {
                return Err(GeometryError::DuplicateName(name.clone()));
            }
        }
        for (i, name) in basis.iter().enumerate() {
            if basis[..i].contains(name) {
                return Err(GeometryError::DuplicateName(name.clone()));
            }
        }
        if c.len() != dim
            || c.iter()
                .any(|m| m.len() != dim || m.iter().any(|r| r.len() != dim))
        {
            return Err(GeometryError::DimensionMismatch {
                expected: dim,
                got: c.len(),
            });
        }
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    if !tables_match(c[i][j][k].table(), &params) {
                        return Err(GeometryError::TableMismatch);
                    }
                    if !(&c[i][j][k] + &c[j][i][k]).is_zero() {
                        return Err(GeometryError::NotAntisymmetric);
                    }
                }
            }
        }
        let vertical = match vertical {
            Some(mut v) => {
                v.sort_unstable();
                v.dedup();
                if v.iter().any(|&i| i >= dim) {
                    return Err(GeometryError::InvalidSplit("index out of range".into()));
                }
                Some(v)
            }
            None => None,
        };
        Ok(LieAlgebraSpec {
            basis,
            params,
            c,
            vertical,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn basis_name(&self, idx: usize) -> &str {
        &self.basis[idx]
    }

    pub fn basis_index(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|n| n == name)
    }

    pub fn params(&self) -> &Arc<ParameterTable> {
        &self.params
    }

    /// Structure constant `⟨[e_i, e_j], e_k⟩`.
    pub fn c(&self, i: usize, j: usize, k: usize) -> &Polynomial {
        &self.c[i][j][k]
    }

    pub fn vertical(&self) -> Option<&[usize]> {
        self.vertical.as_deref()
    }

    pub fn with_vertical(mut self, vertical: Option<Vec<usize>>) -> Result<Self, GeometryError> {
        let checked = LieAlgebraSpec::new(
            self.basis.clone(),
            Arc::clone(&self.params),
            self.c.clone(),
            vertical,
        )?;
        self.vertical = checked.vertical;
        Ok(self)
    }

    /// `[e_i, e_j]` as a vector.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vector {
        Vector::new(self.c[i][j].clone())
    }

    /// Bilinear extension of the structure constants to arbitrary vectors.
    pub fn bracket(&self, v: &Vector, w: &Vector) -> Result<Vector, GeometryError> {
        let dim = self.dim();
        if v.dim() != dim || w.dim() != dim {
            return Err(GeometryError::DimensionMismatch {
                expected: dim,
                got: v.dim().max(w.dim()),
            });
        }
        let mut out = Vector::zero(&self.params, dim);
        for i in 0..dim {
            if v.component(i).is_zero() {
                continue;
            }
            for j in 0..dim {
                if w.component(j).is_zero() {
                    continue;
                }
                let scale = v.component(i) * w.component(j);
                for k in 0..dim {
                    if !self.c[i][j][k].is_zero() {
                        out.components[k] = &out.components[k] + &(&scale * &self.c[i][j][k]);
                    }
                }
            }
        }
        Ok(out)
    }

    /// `[[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j]`.
    pub fn jacobiator(&self, i: usize, j: usize, k: usize) -> Vector {
        let dim = self.dim();
        let mut out = Vector::zero(&self.params, dim);
        for &(a, b, c) in &[(i, j, k), (j, k, i), (k, i, j)] {
            // [[e_a, e_b], e_c]
            for m in 0..dim {
                if self.c[a][b][m].is_zero() {
                    continue;
                }
                for l in 0..dim {
                    if !self.c[m][c][l].is_zero() {
                        out.components[l] =
                            &out.components[l] + &(&self.c[a][b][m] * &self.c[m][c][l]);
                    }
                }
            }
        }
        out
    }

    /// Nonzero Jacobi residuals over all ordered triples `i < j < k`. Empty
    /// exactly when the Jacobi identity holds identically in the parameters.
    pub fn jacobi_residual(&self) -> Vec<((usize, usize, usize), Vector)> {
        let dim = self.dim();
        let mut out = Vec::new();
        for i in 0..dim {
            for j in (i + 1)..dim {
                for k in (j + 1)..dim {
                    let r = self.jacobiator(i, j, k);
                    if !r.is_zero() {
                        out.push(((i, j, k), r));
                    }
                }
            }
        }
        out
    }

    /// Constraints for the span of `indices` to be closed under the bracket:
    /// the complementary components of all pairwise brackets.
    pub fn is_involutive(&self, indices: &BTreeSet<usize>) -> ConstraintSet {
        let mut set = ConstraintSet::new();
        let inside: Vec<usize> = indices.iter().copied().collect();
        for (a, &i) in inside.iter().enumerate() {
            for &j in &inside[a + 1..] {
                for k in 0..self.dim() {
                    if !indices.contains(&k) {
                        set.insert(&self.c[i][j][k]);
                    }
                }
            }
        }
        set
    }

    /// Substitutes a polynomial for a named parameter throughout the
    /// structure tensor. The parameter stays declared; every occurrence is
    /// replaced.
    pub fn substitute(&self, name: &str, replacement: &Polynomial) -> Result<Self, GeometryError> {
        let idx = self
            .params
            .index_of(name)
            .ok_or_else(|| GeometryError::UnknownParameter(name.to_string()))?;
        let mut c = self.c.clone();
        for plane in &mut c {
            for row in plane {
                for entry in row {
                    *entry = entry.substitute(idx, replacement)?;
                }
            }
        }
        Ok(LieAlgebraSpec {
            basis: self.basis.clone(),
            params: Arc::clone(&self.params),
            c,
            vertical: self.vertical.clone(),
        })
    }

    /// Substitutes exact rational values for named parameters.
    pub fn substitute_values(&self, values: &[(String, Rational)]) -> Result<Self, GeometryError> {
        let mut spec = self.clone();
        for (name, value) in values {
            let constant = Polynomial::constant(&self.params, value.clone());
            spec = spec.substitute(name, &constant)?;
        }
        Ok(spec)
    }
}

/// Convenience constructor: brackets are declared one ordered pair at a time
/// and antisymmetry fills in the rest.
pub struct SpecBuilder {
    basis: Vec<String>,
    params: Arc<ParameterTable>,
    c: Vec<Vec<Vec<Polynomial>>>,
    vertical: Option<Vec<usize>>,
}

impl SpecBuilder {
    pub fn new(basis: &[&str], params: &Arc<ParameterTable>) -> Self {
        let dim = basis.len();
        let zero = Polynomial::zero(params);
        SpecBuilder {
            basis: basis.iter().map(|s| s.to_string()).collect(),
            params: Arc::clone(params),
            c: vec![vec![vec![zero; dim]; dim]; dim],
            vertical: None,
        }
    }

    /// Sets `[a, b]` to the given combination of basis vectors; `[b, a]`
    /// becomes its negation.
    pub fn bracket(mut self, a: &str, b: &str, value: &[(Polynomial, &str)]) -> Self {
        let i = self.index(a);
        let j = self.index(b);
        assert_ne!(i, j, "diagonal bracket");
        for (coeff, name) in value {
            let k = self.index(name);
            self.c[i][j][k] = &self.c[i][j][k] + coeff;
            self.c[j][i][k] = &self.c[j][i][k] - coeff;
        }
        self
    }

    pub fn vertical(mut self, names: &[&str]) -> Self {
        let indices = names.iter().map(|n| self.index(n)).collect();
        self.vertical = Some(indices);
        self
    }

    pub fn build(self) -> LieAlgebraSpec {
        LieAlgebraSpec::new(self.basis, self.params, self.c, self.vertical)
            .expect("builder produces a valid spec")
    }

    fn index(&self, name: &str) -> usize {
        self.basis
            .iter()
            .position(|n| n == name)
            .unwrap_or_else(|| panic!("unknown basis vector `{name}`"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build, FamilyId};

    #[test]
    fn bracket_examples() {
        let g7 = build(FamilyId::G7);
        let z = g7.basis_index("Z").unwrap();
        let x = g7.basis_index("X").unwrap();
        let w = g7.basis_index("W").unwrap();
        let zx = g7.bracket_basis(z, x);
        assert_eq!(zx.render(g7.basis()), "-2*z2*W");
        assert!(zx.component(w).to_string() == "-2*z2");

        let g3 = build(FamilyId::G3);
        let wz = g3.bracket_basis(g3.basis_index("W").unwrap(), g3.basis_index("Z").unwrap());
        assert_eq!(wz.render(g3.basis()), "-2*alpha*W");
    }

    #[test]
    fn bracket_is_alternating() {
        let g7 = build(FamilyId::G7);
        let table = g7.params();
        let z2 = Polynomial::parameter(table, "z2").unwrap();
        let mut v = Vector::basis(table, 4, 0);
        v = v.add(&Vector::basis(table, 4, 2).scale(&z2));
        let vv = g7.bracket(&v, &v).unwrap();
        assert!(vv.is_zero());
    }

    #[test]
    fn jacobi_abelian_and_g7() {
        let abelian = crate::families::abelian(4);
        assert!(abelian.jacobi_residual().is_empty());
        let g7 = build(FamilyId::G7);
        assert!(g7.jacobi_residual().is_empty());
    }

    #[test]
    fn g7_jacobi_triple_by_hand() {
        // expanding the (X, Y, Z) triple term by term:
        //   [[X,Y],Z] = -2 z2 [X,Z] = -4 z2^2 W
        //   [[Y,Z],X] = -z2 [Z,X]   =  2 z2^2 W
        //   [[Z,X],Y] = -2 z2 [W,Y] =  2 z2^2 W
        let g7 = build(FamilyId::G7);
        let basis = g7.basis().to_vec();
        let (x, y, z) = (0, 1, 2);
        let xy = g7.bracket_basis(x, y);
        let piece1 = g7.bracket(&xy, &Vector::basis(g7.params(), 4, z)).unwrap();
        assert_eq!(piece1.render(&basis), "-4*z2^2*W");
        let yz = g7.bracket_basis(y, z);
        let piece2 = g7.bracket(&yz, &Vector::basis(g7.params(), 4, x)).unwrap();
        assert_eq!(piece2.render(&basis), "2*z2^2*W");
        let zx = g7.bracket_basis(z, x);
        let piece3 = g7.bracket(&zx, &Vector::basis(g7.params(), 4, y)).unwrap();
        assert_eq!(piece3.render(&basis), "2*z2^2*W");
        assert!(piece1.add(&piece2).add(&piece3).is_zero());
        assert!(g7.jacobiator(x, y, z).is_zero());
    }

    #[test]
    fn jacobi_counterexample() {
        // [X,Y] = Z, [Y,Z] = X, [Z,X] = X: only the (X,Y,Z) residual survives
        // and equals [[Z,X],Y] = [X,Y] = Z.
        let params = ParameterTable::empty();
        let one = Polynomial::constant(&params, Rational::one());
        let spec = SpecBuilder::new(&["X", "Y", "Z"], &params)
            .bracket("X", "Y", &[(one.clone(), "Z")])
            .bracket("Y", "Z", &[(one.clone(), "X")])
            .bracket("Z", "X", &[(one.clone(), "X")])
            .build();
        let residuals = spec.jacobi_residual();
        assert_eq!(residuals.len(), 1);
        let ((i, j, k), v) = &residuals[0];
        assert_eq!((*i, *j, *k), (0, 1, 2));
        assert_eq!(v.render(spec.basis()), "Z");
    }

    #[test]
    fn involutivity() {
        let g7 = build(FamilyId::G7);
        let vertical: BTreeSet<usize> = [2, 3].into_iter().collect();
        assert!(g7.is_involutive(&vertical).is_empty());

        let general = build(FamilyId::GeneralS3);
        let horizontal: BTreeSet<usize> = [0, 1].into_iter().collect();
        let set = general.is_involutive(&horizontal);
        assert_eq!(set.to_string(), "{theta1, theta2}");

        let abelian = crate::families::abelian(4);
        assert!(abelian.is_involutive(&horizontal).is_empty());
    }

    #[test]
    fn rejects_non_antisymmetric() {
        let params = ParameterTable::empty();
        let one = Polynomial::constant(&params, Rational::one());
        let zero = Polynomial::zero(&params);
        let mut c = vec![vec![vec![zero.clone(); 2]; 2]; 2];
        c[0][1][0] = one.clone();
        // missing the compensating -1 in c[1][0][0]
        let err = LieAlgebraSpec::new(vec!["X".into(), "Y".into()], params, c, None).unwrap_err();
        assert_eq!(err, GeometryError::NotAntisymmetric);
    }

    #[test]
    fn vector_rendering_round_trip() {
        let g7 = build(FamilyId::G7);
        let basis = g7.basis().to_vec();
        let table = g7.params();
        let theta1 = Polynomial::parameter(table, "theta1").unwrap();
        let z2 = Polynomial::parameter(table, "z2").unwrap();
        let mut v = Vector::zero(table, 4);
        v.components[0] = (&theta1 + &z2).negate();
        v.components[3] = z2.scale(&Rational::new(-1, 2));
        let rendered = v.render(&basis);
        assert_eq!(rendered, "(-theta1 - z2)*X - 1/2*z2*W");
        let parsed = crate::expr::parse_bracket_value(&rendered, &basis, table).unwrap();
        assert_eq!(Vector::new(parsed), v);
    }
}
