//! Levi-Civita connection, curvature, Ricci and Einstein data in the
//! orthonormal frame.
//!
//! Sign conventions: `R(X,Y) = ∇_X ∇_Y - ∇_Y ∇_X - ∇_[X,Y]`, sectional
//! curvature `⟨R(X,Y)Y, X⟩`, and `Ric(X,Y) = Σ_k ⟨R(X,e_k)e_k, Y⟩`. The
//! golden tables pin these down; flipping any of them breaks them.

use crate::constraint::ConstraintSet;
use crate::error::GeometryError;
use crate::lie::{LieAlgebraSpec, Vector};
use crate::poly::Polynomial;
use crate::rational::Rational;

/// Connection coefficients `Γ[i][j][k] = ⟨∇_{e_i} e_j, e_k⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectionTable {
    gamma: Vec<Vec<Vec<Polynomial>>>,
}

impl ConnectionTable {
    pub fn dim(&self) -> usize {
        self.gamma.len()
    }

    pub fn entry(&self, i: usize, j: usize, k: usize) -> &Polynomial {
        &self.gamma[i][j][k]
    }

    /// `∇_{e_i} e_j` as a vector.
    pub fn derivative(&self, i: usize, j: usize) -> Vector {
        Vector::new(self.gamma[i][j].clone())
    }

    /// `∇_{e_i} v` for a constant-coefficient `v` is componentwise.
    pub fn derive_vector(&self, i: usize, v: &Vector) -> Vector {
        let dim = self.dim();
        let table = self.gamma[0][0][0].table();
        let mut out = Vector::zero(table, dim);
        for a in 0..dim {
            if v.component(a).is_zero() {
                continue;
            }
            let deriv = self.derivative(i, a);
            out = out.add(&deriv.scale(v.component(a)));
        }
        out
    }
}

/// Levi-Civita connection from the Koszul formula,
/// `2⟨∇_X Y, Z⟩ = ⟨[Z,X],Y⟩ + ⟨[Z,Y],X⟩ + ⟨Z,[X,Y]⟩`,
/// so `Γ[i][j][k] = ½(C[k][i][j] + C[k][j][i] + C[i][j][k])`.
pub fn levi_civita(g: &LieAlgebraSpec) -> ConnectionTable {
    levi_civita_with(g, false)
}

/// As [`levi_civita`], with an optional sign flip on the third Koszul term
/// for convention-sensitivity testing.
pub fn levi_civita_with(g: &LieAlgebraSpec, flip_third_term: bool) -> ConnectionTable {
    let dim = g.dim();
    let half = Rational::new(1, 2);
    let sign = if flip_third_term {
        Rational::from_int(-1)
    } else {
        Rational::one()
    };
    let mut gamma = vec![vec![Vec::with_capacity(dim); dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            for k in 0..dim {
                let sum = &(g.c(k, i, j) + g.c(k, j, i)) + &g.c(i, j, k).scale(&sign);
                gamma[i][j].push(sum.scale(&half));
            }
        }
    }
    ConnectionTable { gamma }
}

/// Curvature components `⟨R(e_i,e_j)e_k, e_l⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurvatureTensor {
    r: Vec<Vec<Vec<Vec<Polynomial>>>>,
}

impl CurvatureTensor {
    pub fn dim(&self) -> usize {
        self.r.len()
    }

    pub fn entry(&self, i: usize, j: usize, k: usize, l: usize) -> &Polynomial {
        &self.r[i][j][k][l]
    }
}

/// Frame curvature of a left-invariant connection:
/// `R[i][j][k][l] = Σ_m (Γ[j][k][m]Γ[i][m][l] - Γ[i][k][m]Γ[j][m][l] - C[i][j][m]Γ[m][k][l])`.
pub fn curvature(g: &LieAlgebraSpec, conn: &ConnectionTable) -> CurvatureTensor {
    curvature_with(g, conn, false)
}

/// As [`curvature`], optionally negating the whole tensor (the opposite
/// curvature sign convention) for convention-sensitivity testing.
pub fn curvature_with(
    g: &LieAlgebraSpec,
    conn: &ConnectionTable,
    flip_sign: bool,
) -> CurvatureTensor {
    let dim = g.dim();
    let zero = Polynomial::zero(g.params());
    let mut r = vec![vec![vec![vec![zero; dim]; dim]; dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            for k in 0..dim {
                for l in 0..dim {
                    let mut acc = Polynomial::zero(g.params());
                    for m in 0..dim {
                        acc = &acc + &(conn.entry(j, k, m) * conn.entry(i, m, l));
                        acc = &acc - &(conn.entry(i, k, m) * conn.entry(j, m, l));
                        acc = &acc - &(g.c(i, j, m) * conn.entry(m, k, l));
                    }
                    r[i][j][k][l] = if flip_sign { acc.negate() } else { acc };
                }
            }
        }
    }
    CurvatureTensor { r }
}

/// Sectional curvature `⟨R(e_i,e_j)e_j, e_i⟩` of the coordinate 2-plane.
/// The frame is orthonormal, so no normalization is needed.
pub fn sectional(r: &CurvatureTensor, i: usize, j: usize) -> Result<Polynomial, GeometryError> {
    if i == j {
        return Err(GeometryError::DegeneratePlane);
    }
    Ok(r.entry(i, j, j, i).clone())
}

/// The Ricci matrix `Ric(e_i, e_j) = Σ_k ⟨R(e_i,e_k)e_k, e_j⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RicciTensor {
    ric: Vec<Vec<Polynomial>>,
}

impl RicciTensor {
    pub fn dim(&self) -> usize {
        self.ric.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial {
        &self.ric[i][j]
    }

    /// True when `Ric(i,j) = Ric(j,i)` identically. Holds whenever the
    /// Jacobi identity does; can fail for raw antisymmetric tensors.
    pub fn is_symmetric(&self) -> bool {
        let dim = self.dim();
        for i in 0..dim {
            for j in (i + 1)..dim {
                if self.ric[i][j] != self.ric[j][i] {
                    return false;
                }
            }
        }
        true
    }
}

pub fn ricci(g: &LieAlgebraSpec, r: &CurvatureTensor) -> RicciTensor {
    let dim = g.dim();
    let mut ric = vec![vec![Polynomial::zero(g.params()); dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            let mut acc = Polynomial::zero(g.params());
            for k in 0..dim {
                acc = &acc + r.entry(i, k, k, j);
            }
            ric[i][j] = acc;
        }
    }
    RicciTensor { ric }
}

/// Trace of the Ricci tensor.
pub fn scalar_curvature(ric: &RicciTensor) -> Polynomial {
    let dim = ric.dim();
    let mut acc = ric.entry(0, 0).clone();
    for i in 1..dim {
        acc = &acc + ric.entry(i, i);
    }
    acc
}

/// Obstruction to `Ric = c·g`: all off-diagonal entries plus the gaps
/// between the first diagonal entry and the others. Empty exactly when the
/// metric is Einstein identically in the parameters, with `c = Ric(e_1,e_1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EinsteinDefect {
    pub off_diagonal: ConstraintSet,
    pub diagonal_gaps: ConstraintSet,
}

impl EinsteinDefect {
    pub fn is_empty(&self) -> bool {
        self.off_diagonal.is_empty() && self.diagonal_gaps.is_empty()
    }
}

pub fn einstein_defect(ric: &RicciTensor) -> EinsteinDefect {
    let dim = ric.dim();
    let mut off_diagonal = ConstraintSet::new();
    let mut diagonal_gaps = ConstraintSet::new();
    for i in 0..dim {
        for j in (i + 1)..dim {
            off_diagonal.insert(ric.entry(i, j));
        }
    }
    for i in 1..dim {
        diagonal_gaps.insert(&(ric.entry(0, 0) - ric.entry(i, i)));
    }
    EinsteinDefect {
        off_diagonal,
        diagonal_gaps,
    }
}

/// Exact checks of the two defining connection invariants:
/// metric compatibility `Γ[i][j][k] = -Γ[i][k][j]` and torsion-freeness
/// `Γ[i][j][k] - Γ[j][i][k] = C[i][j][k]`.
pub fn connection_invariants_hold(g: &LieAlgebraSpec, conn: &ConnectionTable) -> bool {
    let dim = g.dim();
    for i in 0..dim {
        for j in 0..dim {
            for k in 0..dim {
                if !(conn.entry(i, j, k) + conn.entry(i, k, j)).is_zero() {
                    return false;
                }
                if (conn.entry(i, j, k) - conn.entry(j, i, k)) != *g.c(i, j, k) {
                    return false;
                }
            }
        }
    }
    true
}

/// Antisymmetry of the curvature in both index pairs. Holds for every
/// antisymmetric structure tensor.
pub fn curvature_antisymmetries_hold(r: &CurvatureTensor) -> bool {
    let dim = r.dim();
    for i in 0..dim {
        for j in 0..dim {
            for k in 0..dim {
                for l in 0..dim {
                    if !(r.entry(i, j, k, l) + r.entry(j, i, k, l)).is_zero() {
                        return false;
                    }
                    if !(r.entry(i, j, k, l) + r.entry(i, j, l, k)).is_zero() {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Pair symmetry `⟨R(e_i,e_j)e_k,e_l⟩ = ⟨R(e_k,e_l)e_i,e_j⟩`. Requires the
/// Jacobi identity; call only for tensors with an empty residual.
pub fn pair_symmetry_holds(r: &CurvatureTensor) -> bool {
    let dim = r.dim();
    for i in 0..dim {
        for j in 0..dim {
            for k in 0..dim {
                for l in 0..dim {
                    if r.entry(i, j, k, l) != r.entry(k, l, i, j) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// The cyclic sum `R(e_i,e_j)e_k + R(e_j,e_k)e_i + R(e_k,e_i)e_j`.
///
/// For the torsion-free frame connection this equals minus the Jacobiator of
/// `(e_i, e_j, e_k)`, so it vanishes exactly on Lie algebras (first Bianchi).
pub fn bianchi_defect(r: &CurvatureTensor, i: usize, j: usize, k: usize) -> Vector {
    let dim = r.dim();
    Vector::new(
        (0..dim)
            .map(|l| &(r.entry(i, j, k, l) + r.entry(j, k, i, l)) + r.entry(k, i, j, l))
            .collect(),
    )
}

/// First Bianchi identity over all triples. Requires Jacobi, as with
/// [`pair_symmetry_holds`].
pub fn first_bianchi_holds(r: &CurvatureTensor) -> bool {
    let dim = r.dim();
    for i in 0..dim {
        for j in (i + 1)..dim {
            for k in (j + 1)..dim {
                if !bianchi_defect(r, i, j, k).is_zero() {
                    return false;
                }
            }
        }
    }
    true
}
