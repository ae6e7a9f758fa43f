//! Adapted almost Hermitian structures, the Nijenhuis tensor and the
//! Kähler defect.
//!
//! Only constant (frame-invariant) structures are supported. The Nijenhuis
//! convention is `N(v,w) = [Jv,Jw] - J[Jv,w] - J[v,Jw] - [v,w]` with no
//! overall scaling; constraint-set normalization absorbs the harmless
//! factor ambiguity.

use std::collections::BTreeMap;

use crate::constraint::ConstraintSet;
use crate::error::GeometryError;
use crate::lie::{LieAlgebraSpec, Vector};
use crate::rational::Rational;
use crate::riemannian::ConnectionTable;

/// A constant metric-compatible complex structure on the frame:
/// a rational matrix with `J² = -I` and `Jᵀ J = I`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlmostComplexStructure {
    m: Vec<Vec<Rational>>,
}

impl AlmostComplexStructure {
    pub fn new(m: Vec<Vec<Rational>>) -> Result<Self, GeometryError> {
        let dim = m.len();
        if m.iter().any(|row| row.len() != dim) {
            return Err(GeometryError::InvalidStructure(
                "matrix is not square".into(),
            ));
        }
        // J^2 = -I
        for i in 0..dim {
            for j in 0..dim {
                let mut acc = Rational::zero();
                for k in 0..dim {
                    acc += &(&m[i][k] * &m[k][j]);
                }
                let expected = if i == j {
                    Rational::from_int(-1)
                } else {
                    Rational::zero()
                };
                if acc != expected {
                    return Err(GeometryError::InvalidStructure("J^2 != -I".into()));
                }
            }
        }
        // J^T J = I
        for i in 0..dim {
            for j in 0..dim {
                let mut acc = Rational::zero();
                for k in 0..dim {
                    acc += &(&m[k][i] * &m[k][j]);
                }
                let expected = if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                };
                if acc != expected {
                    return Err(GeometryError::InvalidStructure(
                        "J is not orthogonal".into(),
                    ));
                }
            }
        }
        Ok(AlmostComplexStructure { m })
    }

    pub fn dim(&self) -> usize {
        self.m.len()
    }

    /// Matrix entry `⟨J e_j, e_i⟩` (column `j` is the image of `e_j`).
    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        &self.m[i][j]
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        let dim = self.dim();
        assert_eq!(v.dim(), dim);
        let table = v.component(0).table().clone();
        let mut components = vec![crate::poly::Polynomial::zero(&table); dim];
        for (j, comp) in v.components().iter().enumerate() {
            if comp.is_zero() {
                continue;
            }
            for i in 0..dim {
                if !self.m[i][j].is_zero() {
                    components[i] = &components[i] + &comp.scale(&self.m[i][j]);
                }
            }
        }
        Vector::new(components)
    }
}

/// The two adapted structures on a 4-dimensional algebra with a (2,2)
/// vertical split. With horizontal pair `(h₀, h₁)` and vertical pair
/// `(v₀, v₁)` in index order:
///
/// * `J₁`: `h₀ ↦ h₁`, `v₀ ↦ v₁`
/// * `J₂`: `h₀ ↦ h₁`, `v₁ ↦ v₀`
///
/// both closed up by `J² = -I`.
pub fn canonical_structures(
    g: &LieAlgebraSpec,
) -> Result<(AlmostComplexStructure, AlmostComplexStructure), GeometryError> {
    let dim = g.dim();
    if dim != 4 {
        return Err(GeometryError::InvalidSplit(format!(
            "adapted structures need dimension 4, got {dim}"
        )));
    }
    let vertical: Vec<usize> = g
        .vertical()
        .ok_or_else(|| GeometryError::InvalidSplit("no vertical distribution declared".into()))?
        .to_vec();
    if vertical.len() != 2 {
        return Err(GeometryError::InvalidSplit(format!(
            "adapted structures need a (2,2) split, vertical has {} vectors",
            vertical.len()
        )));
    }
    let horizontal: Vec<usize> = (0..dim).filter(|i| !vertical.contains(i)).collect();

    let mut base = vec![vec![Rational::zero(); dim]; dim];
    // horizontal rotation h0 -> h1, h1 -> -h0
    base[horizontal[1]][horizontal[0]] = Rational::one();
    base[horizontal[0]][horizontal[1]] = Rational::from_int(-1);

    let mut j1 = base.clone();
    j1[vertical[1]][vertical[0]] = Rational::one();
    j1[vertical[0]][vertical[1]] = Rational::from_int(-1);

    let mut j2 = base;
    j2[vertical[0]][vertical[1]] = Rational::one();
    j2[vertical[1]][vertical[0]] = Rational::from_int(-1);

    Ok((
        AlmostComplexStructure::new(j1)?,
        AlmostComplexStructure::new(j2)?,
    ))
}

/// Nijenhuis components `N(e_i, e_j)` for `i < j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NijenhuisTensor {
    n: BTreeMap<(usize, usize), Vector>,
    dim: usize,
}

impl NijenhuisTensor {
    /// `N(e_i, e_j)`; antisymmetry fills in `i > j` and `N(v,v) = 0`.
    pub fn entry(&self, g: &LieAlgebraSpec, i: usize, j: usize) -> Vector {
        if i == j {
            return Vector::zero(g.params(), self.dim);
        }
        if i < j {
            self.n[&(i, j)].clone()
        } else {
            self.n[&(j, i)].negate()
        }
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&(usize, usize), &Vector)> {
        self.n.iter()
    }
}

pub fn nijenhuis(g: &LieAlgebraSpec, j: &AlmostComplexStructure) -> NijenhuisTensor {
    nijenhuis_with(g, j, false)
}

/// As [`nijenhuis`], optionally flipping the sign of the final `[v,w]` term
/// for convention-sensitivity testing.
pub fn nijenhuis_with(
    g: &LieAlgebraSpec,
    j: &AlmostComplexStructure,
    flip_last_term: bool,
) -> NijenhuisTensor {
    let dim = g.dim();
    let mut n = BTreeMap::new();
    for a in 0..dim {
        for b in (a + 1)..dim {
            let ea = Vector::basis(g.params(), dim, a);
            let eb = Vector::basis(g.params(), dim, b);
            let ja = j.apply(&ea);
            let jb = j.apply(&eb);
            let mut value = g.bracket(&ja, &jb).expect("dimensions agree");
            value = value.sub(&j.apply(&g.bracket(&ja, &eb).expect("dimensions agree")));
            value = value.sub(&j.apply(&g.bracket(&ea, &jb).expect("dimensions agree")));
            let last = g.bracket(&ea, &eb).expect("dimensions agree");
            value = if flip_last_term {
                value.add(&last)
            } else {
                value.sub(&last)
            };
            n.insert((a, b), value);
        }
    }
    NijenhuisTensor { n, dim }
}

/// Normalized set of nonzero Nijenhuis components. Empty exactly when `J`
/// is integrable for all parameter values.
pub fn integrability_constraints(g: &LieAlgebraSpec, j: &AlmostComplexStructure) -> ConstraintSet {
    integrability_constraints_with(g, j, false)
}

pub fn integrability_constraints_with(
    g: &LieAlgebraSpec,
    j: &AlmostComplexStructure,
    flip_last_term: bool,
) -> ConstraintSet {
    let n = nijenhuis_with(g, j, flip_last_term);
    let mut set = ConstraintSet::new();
    for (_, v) in n.pairs() {
        for comp in v.components() {
            set.insert(comp);
        }
    }
    set
}

/// The covariant derivative of `J` and the constraint set for `∇J = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KahlerDefect {
    pub components: ConstraintSet,
    vectors: BTreeMap<(usize, usize), Vector>,
}

impl KahlerDefect {
    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// `(∇_{e_i} J)(e_j)` for report printing.
    pub fn nabla_j(&self, i: usize, j: usize) -> &Vector {
        &self.vectors[&(i, j)]
    }
}

/// `(∇_{e_i} J)(e_j) = ∇_{e_i}(J e_j) - J(∇_{e_i} e_j)` over all basis pairs.
pub fn covariant_j(
    g: &LieAlgebraSpec,
    conn: &ConnectionTable,
    j: &AlmostComplexStructure,
) -> KahlerDefect {
    let dim = g.dim();
    let mut components = ConstraintSet::new();
    let mut vectors = BTreeMap::new();
    for a in 0..dim {
        for b in 0..dim {
            let eb = Vector::basis(g.params(), dim, b);
            let jb = j.apply(&eb);
            let value = conn
                .derive_vector(a, &jb)
                .sub(&j.apply(&conn.derivative(a, b)));
            for comp in value.components() {
                components.insert(comp);
            }
            vectors.insert((a, b), value);
        }
    }
    KahlerDefect {
        components,
        vectors,
    }
}

/// True when the defect vanishes identically in the parameters.
pub fn is_kahler(defect: &KahlerDefect) -> bool {
    defect.is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{abelian, build, FamilyId};
    use crate::poly::Polynomial;
    use crate::riemannian::levi_civita;

    #[test]
    fn canonical_structure_shapes() {
        let g7 = build(FamilyId::G7);
        let (j1, j2) = canonical_structures(&g7).unwrap();
        // J1: X -> Y, Z -> W
        assert_eq!(*j1.entry(1, 0), Rational::one());
        assert_eq!(*j1.entry(0, 1), Rational::from_int(-1));
        assert_eq!(*j1.entry(3, 2), Rational::one());
        // J2: W -> Z, Z -> -W
        assert_eq!(*j2.entry(2, 3), Rational::one());
        assert_eq!(*j2.entry(3, 2), Rational::from_int(-1));
    }

    #[test]
    fn canonical_structure_errors() {
        let abelian3 = abelian(3);
        assert!(canonical_structures(&abelian3).is_err());
        let no_split = build(FamilyId::G7).with_vertical(None).unwrap();
        assert!(canonical_structures(&no_split).is_err());
        let bad_split = build(FamilyId::G7).with_vertical(Some(vec![3])).unwrap();
        assert!(canonical_structures(&bad_split).is_err());
    }

    #[test]
    fn rejects_non_structures() {
        let bad = vec![
            vec![Rational::one(), Rational::zero()],
            vec![Rational::zero(), Rational::one()],
        ];
        assert!(AlmostComplexStructure::new(bad).is_err());
    }

    #[test]
    fn abelian_nijenhuis_vanishes() {
        let g = abelian(4);
        let (j1, j2) = canonical_structures(&g).unwrap();
        for j in [j1, j2] {
            assert!(integrability_constraints(&g, &j).is_empty());
        }
    }

    #[test]
    fn general_family_integrability() {
        let g = build(FamilyId::GeneralS3);
        let (j1, j2) = canonical_structures(&g).unwrap();
        assert_eq!(
            integrability_constraints(&g, &j1).to_string(),
            "{2*z1 - z4 - w2, 2*z2 + z3 + w1}"
        );
        assert_eq!(
            integrability_constraints(&g, &j2).to_string(),
            "{2*z1 + z4 + w2, 2*z2 - z3 - w1}"
        );
    }

    #[test]
    fn g7_j1_is_integrable() {
        let g7 = build(FamilyId::G7);
        let (j1, _) = canonical_structures(&g7).unwrap();
        assert!(integrability_constraints(&g7, &j1).is_empty());
    }

    #[test]
    fn nijenhuis_antisymmetry() {
        let g = build(FamilyId::GeneralS3);
        let (j1, _) = canonical_structures(&g).unwrap();
        let n = nijenhuis(&g, &j1);
        for i in 0..4 {
            for j in 0..4 {
                let a = n.entry(&g, i, j);
                let b = n.entry(&g, j, i);
                assert!(a.add(&b).is_zero());
            }
        }
    }

    #[test]
    fn g7_covariant_j() {
        let g7 = build(FamilyId::G7);
        let conn = levi_civita(&g7);
        let (j1, _) = canonical_structures(&g7).unwrap();
        let defect = covariant_j(&g7, &conn, &j1);
        assert_eq!(
            defect.nabla_j(0, 0).render(g7.basis()),
            "-1/2*theta1*Z - 1/2*theta2*W"
        );
        assert!(!is_kahler(&defect));
    }

    #[test]
    fn abelian_is_kahler() {
        let g = abelian(4);
        let conn = levi_civita(&g);
        let (j1, _) = canonical_structures(&g).unwrap();
        assert!(is_kahler(&covariant_j(&g, &conn, &j1)));
    }

    #[test]
    fn g3_kahler_loci() {
        let g3 = build(FamilyId::G3);
        let alpha = Polynomial::parameter(g3.params(), "alpha").unwrap();
        let (j1, j2) = canonical_structures(&g3).unwrap();

        let minus = g3
            .substitute("theta2", &alpha.scale(&Rational::from_int(-2)))
            .unwrap();
        let conn = levi_civita(&minus);
        assert!(is_kahler(&covariant_j(&minus, &conn, &j1)));
        assert!(!is_kahler(&covariant_j(&minus, &conn, &j2)));

        let plus = g3
            .substitute("theta2", &alpha.scale(&Rational::from_int(2)))
            .unwrap();
        let conn = levi_civita(&plus);
        assert!(is_kahler(&covariant_j(&plus, &conn, &j2)));
        assert!(!is_kahler(&covariant_j(&plus, &conn, &j1)));
    }
}
