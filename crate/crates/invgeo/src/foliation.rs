//! Second fundamental forms of the vertical/horizontal splitting and the
//! foliation predicates: conformal, Riemannian, minimal, totally geodesic,
//! horizontal integrability.
//!
//! `B^V(U,V) = ½ H(∇_U V + ∇_V U)` on vertical pairs and
//! `B^H(X,Y) = ½ V(∇_X Y + ∇_Y X)` on horizontal pairs. All predicates come
//! back as constraint sets: empty means the predicate holds identically,
//! otherwise the set cuts out the parameter locus where it holds.

use std::collections::BTreeMap;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::constraint::ConstraintSet;
use crate::error::GeometryError;
use crate::lie::{LieAlgebraSpec, Vector};
use crate::rational::Rational;
use crate::riemannian::ConnectionTable;

/// A splitting of the basis into a vertical distribution and its orthogonal
/// complement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistributionSplit {
    vertical: Vec<usize>,
    horizontal: Vec<usize>,
}

impl DistributionSplit {
    pub fn new(dim: usize, vertical: &[usize]) -> Result<Self, GeometryError> {
        let set: BTreeSet<usize> = vertical.iter().copied().collect();
        if set.len() != vertical.len() {
            return Err(GeometryError::InvalidSplit(
                "repeated vertical index".into(),
            ));
        }
        if set.iter().any(|&i| i >= dim) {
            return Err(GeometryError::InvalidSplit("index out of range".into()));
        }
        if set.is_empty() || set.len() == dim {
            return Err(GeometryError::InvalidSplit(
                "vertical distribution must be nonempty and proper".into(),
            ));
        }
        let horizontal = (0..dim).filter(|i| !set.contains(i)).collect();
        Ok(DistributionSplit {
            vertical: set.into_iter().collect(),
            horizontal,
        })
    }

    /// Uses the vertical distribution declared on the algebra.
    pub fn from_spec(g: &LieAlgebraSpec) -> Result<Self, GeometryError> {
        let vertical = g.vertical().ok_or_else(|| {
            GeometryError::InvalidSplit("no vertical distribution declared".into())
        })?;
        DistributionSplit::new(g.dim(), vertical)
    }

    pub fn vertical(&self) -> &[usize] {
        &self.vertical
    }

    pub fn horizontal(&self) -> &[usize] {
        &self.horizontal
    }

    pub fn vertical_set(&self) -> BTreeSet<usize> {
        self.vertical.iter().copied().collect()
    }

    pub fn horizontal_set(&self) -> BTreeSet<usize> {
        self.horizontal.iter().copied().collect()
    }
}

/// Which distribution a second fundamental form belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Which {
    Vertical,
    Horizontal,
}

/// Symmetric form on one distribution with values in the complement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SecondFundamentalForm {
    which: Which,
    values: BTreeMap<(usize, usize), Vector>,
}

impl SecondFundamentalForm {
    pub fn which(&self) -> Which {
        self.which
    }

    /// `B(e_a, e_b)`; symmetric lookup, both indices must lie in the form's
    /// distribution.
    pub fn value(&self, a: usize, b: usize) -> &Vector {
        let key = if a <= b { (a, b) } else { (b, a) };
        &self.values[&key]
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&(usize, usize), &Vector)> {
        self.values.iter()
    }
}

/// The projected symmetrized covariant derivative on pairs inside the chosen
/// distribution.
pub fn second_fundamental_form(
    g: &LieAlgebraSpec,
    conn: &ConnectionTable,
    split: &DistributionSplit,
    which: Which,
) -> SecondFundamentalForm {
    let (inside, outside) = match which {
        Which::Vertical => (split.vertical(), split.horizontal_set()),
        Which::Horizontal => (split.horizontal(), split.vertical_set()),
    };
    let half = Rational::new(1, 2);
    let mut values = BTreeMap::new();
    for (pos, &a) in inside.iter().enumerate() {
        for &b in &inside[pos..] {
            let sym = conn.derivative(a, b).add(&conn.derivative(b, a));
            let value = sym.project(&outside).scale_rational(&half);
            values.insert((a.min(b), a.max(b)), value);
        }
    }
    let _ = g;
    SecondFundamentalForm { which, values }
}

/// Conformality of the horizontal form: all off-diagonal values vanish and
/// the diagonal values agree with a common vertical vector `V`.
///
/// Returns the constraint set together with `V` when the constraints are
/// empty (the foliation is conformal for every parameter value).
pub fn conformality(
    g: &LieAlgebraSpec,
    conn: &ConnectionTable,
    split: &DistributionSplit,
) -> (ConstraintSet, Option<Vector>) {
    let bh = second_fundamental_form(g, conn, split, Which::Horizontal);
    let h = split.horizontal();
    let mut set = ConstraintSet::new();
    for (pos, &a) in h.iter().enumerate() {
        for &b in &h[pos + 1..] {
            for comp in bh.value(a, b).components() {
                set.insert(comp);
            }
        }
    }
    let first = bh.value(h[0], h[0]).clone();
    for &a in &h[1..] {
        for comp in bh.value(a, a).sub(&first).components() {
            set.insert(comp);
        }
    }
    if set.is_empty() {
        (set, Some(first))
    } else {
        (set, None)
    }
}

/// The named foliation predicates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FoliationPredicate {
    Riemannian,
    Minimal,
    TotallyGeodesic,
    HorizontalIntegrable,
}

impl FoliationPredicate {
    pub const ALL: [FoliationPredicate; 4] = [
        FoliationPredicate::Riemannian,
        FoliationPredicate::Minimal,
        FoliationPredicate::TotallyGeodesic,
        FoliationPredicate::HorizontalIntegrable,
    ];
}

impl fmt::Display for FoliationPredicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            FoliationPredicate::Riemannian => "riemannian",
            FoliationPredicate::Minimal => "minimal",
            FoliationPredicate::TotallyGeodesic => "totally_geodesic",
            FoliationPredicate::HorizontalIntegrable => "horizontal_integrable",
        };
        write!(f, "{name}")
    }
}

impl FromStr for FoliationPredicate {
    type Err = GeometryError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "riemannian" => Ok(FoliationPredicate::Riemannian),
            "minimal" => Ok(FoliationPredicate::Minimal),
            "totally_geodesic" => Ok(FoliationPredicate::TotallyGeodesic),
            "horizontal_integrable" => Ok(FoliationPredicate::HorizontalIntegrable),
            other => Err(GeometryError::UnknownPredicate(other.to_string())),
        }
    }
}

/// Constraint set whose vanishing is equivalent to the predicate:
///
/// * `riemannian`: conformality constraints plus the common vector `V = 0`,
/// * `minimal`: the components of `trace B^V`,
/// * `totally_geodesic`: all components of `B^V`,
/// * `horizontal_integrable`: bracket closure of the horizontal span.
pub fn predicate(
    g: &LieAlgebraSpec,
    conn: &ConnectionTable,
    split: &DistributionSplit,
    which: FoliationPredicate,
) -> ConstraintSet {
    match which {
        FoliationPredicate::Riemannian => {
            let (mut set, _) = conformality(g, conn, split);
            let bh = second_fundamental_form(g, conn, split, Which::Horizontal);
            let h0 = split.horizontal()[0];
            for comp in bh.value(h0, h0).components() {
                set.insert(comp);
            }
            set
        }
        FoliationPredicate::Minimal => {
            let bv = second_fundamental_form(g, conn, split, Which::Vertical);
            let mut trace = Vector::zero(g.params(), g.dim());
            for &a in split.vertical() {
                trace = trace.add(bv.value(a, a));
            }
            trace.components().iter().cloned().collect()
        }
        FoliationPredicate::TotallyGeodesic => {
            let bv = second_fundamental_form(g, conn, split, Which::Vertical);
            let mut set = ConstraintSet::new();
            for (_, v) in bv.pairs() {
                for comp in v.components() {
                    set.insert(comp);
                }
            }
            set
        }
        FoliationPredicate::HorizontalIntegrable => g.is_involutive(&split.horizontal_set()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{abelian, build, FamilyId};
    use crate::riemannian::levi_civita;

    fn setup(id: FamilyId) -> (LieAlgebraSpec, ConnectionTable, DistributionSplit) {
        let g = build(id);
        let conn = levi_civita(&g);
        let split = DistributionSplit::from_spec(&g).unwrap();
        (g, conn, split)
    }

    #[test]
    fn split_validation() {
        assert!(DistributionSplit::new(4, &[2, 3]).is_ok());
        assert!(DistributionSplit::new(4, &[]).is_err());
        assert!(DistributionSplit::new(4, &[0, 1, 2, 3]).is_err());
        assert!(DistributionSplit::new(4, &[4]).is_err());
        assert!(DistributionSplit::new(4, &[2, 2]).is_err());
    }

    #[test]
    fn g7_vertical_form() {
        let (g, conn, split) = setup(FamilyId::G7);
        let bv = second_fundamental_form(&g, &conn, &split, Which::Vertical);
        assert_eq!(bv.value(2, 2).render(g.basis()), "-z2*Y");
        assert_eq!(bv.value(3, 3).render(g.basis()), "z2*Y");
        assert_eq!(bv.value(2, 3).render(g.basis()), "z2*X");
    }

    #[test]
    fn abelian_forms_vanish() {
        let g = abelian(4);
        let conn = levi_civita(&g);
        let split = DistributionSplit::from_spec(&g).unwrap();
        for which in [Which::Vertical, Which::Horizontal] {
            let form = second_fundamental_form(&g, &conn, &split, which);
            assert!(form.pairs().all(|(_, v)| v.is_zero()));
        }
        let (set, mean) = conformality(&g, &conn, &split);
        assert!(set.is_empty());
        assert!(mean.unwrap().is_zero());
    }

    #[test]
    fn g3_horizontal_form() {
        let (g, conn, split) = setup(FamilyId::G3);
        let bh = second_fundamental_form(&g, &conn, &split, Which::Horizontal);
        assert_eq!(bh.value(0, 0).render(g.basis()), "alpha*Z");
        assert!(bh.value(0, 1).is_zero());

        let (set, mean) = conformality(&g, &conn, &split);
        assert!(set.is_empty());
        assert_eq!(mean.unwrap().render(g.basis()), "alpha*Z");
    }

    #[test]
    fn general_family_conformal_with_mean_vector() {
        let (g, conn, split) = setup(FamilyId::GeneralS3);
        let (set, mean) = conformality(&g, &conn, &split);
        assert!(set.is_empty());
        assert_eq!(mean.unwrap().render(g.basis()), "alpha*Z + a*W");
    }

    #[test]
    fn general_family_predicates() {
        let (g, conn, split) = setup(FamilyId::GeneralS3);
        assert_eq!(
            predicate(&g, &conn, &split, FoliationPredicate::TotallyGeodesic).to_string(),
            "{z1, z2, z3 + w1, z4 + w2}"
        );
        assert_eq!(
            predicate(&g, &conn, &split, FoliationPredicate::Riemannian).to_string(),
            "{alpha, a}"
        );
        assert_eq!(
            predicate(&g, &conn, &split, FoliationPredicate::HorizontalIntegrable).to_string(),
            "{theta1, theta2}"
        );
        assert!(predicate(&g, &conn, &split, FoliationPredicate::Minimal).is_empty());
    }

    #[test]
    fn g7_minimal_not_totally_geodesic() {
        let (g, conn, split) = setup(FamilyId::G7);
        assert!(predicate(&g, &conn, &split, FoliationPredicate::Minimal).is_empty());
        let tg = predicate(&g, &conn, &split, FoliationPredicate::TotallyGeodesic);
        assert_eq!(tg.to_string(), "{z2}");
    }

    #[test]
    fn predicate_names() {
        assert_eq!(
            "totally_geodesic".parse::<FoliationPredicate>().unwrap(),
            FoliationPredicate::TotallyGeodesic
        );
        assert!(matches!(
            "geodesic".parse::<FoliationPredicate>(),
            Err(GeometryError::UnknownPredicate(_))
        ));
    }

    #[test]
    fn both_integrable_family_is_totally_geodesic() {
        let (g, conn, split) = setup(FamilyId::BothIntegrable);
        assert!(predicate(&g, &conn, &split, FoliationPredicate::TotallyGeodesic).is_empty());
    }
}
