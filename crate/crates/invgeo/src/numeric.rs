//! Independent numeric oracle.
//!
//! Re-runs the whole geometry pipeline on plain rational tensors obtained by
//! evaluating the structure constants at a sample point, with none of the
//! polynomial machinery involved. Comparing against evaluated symbolic
//! results catches convention or arithmetic drift in either path.
//!
//! Sampling across many points is embarrassingly parallel; with the
//! `parallel` feature the batch runs under rayon, otherwise sequentially.

use std::collections::BTreeSet;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::foliation::{second_fundamental_form, DistributionSplit, Which};
use crate::hermitian::{canonical_structures, covariant_j, nijenhuis, AlmostComplexStructure};
use crate::lie::LieAlgebraSpec;
use crate::rational::Rational;
use crate::riemannian::{curvature, levi_civita};

pub type NumVector = Vec<Rational>;
pub type NumMatrix = Vec<Vec<Rational>>;
pub type NumTensor3 = Vec<Vec<Vec<Rational>>>;
pub type NumTensor4 = Vec<Vec<Vec<Vec<Rational>>>>;

/// Evaluates the structure tensor at a full parameter assignment.
pub fn eval_structure(g: &LieAlgebraSpec, values: &[Rational]) -> NumTensor3 {
    let dim = g.dim();
    (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| {
                    (0..dim)
                        .map(|k| g.c(i, j, k).eval_indexed(values))
                        .collect()
                })
                .collect()
        })
        .collect()
}

/// Koszul formula on plain rationals:
/// `Γ[i][j][k] = ½ (C[k][i][j] + C[k][j][i] + C[i][j][k])`.
pub fn koszul(c: &NumTensor3) -> NumTensor3 {
    let dim = c.len();
    let half = Rational::new(1, 2);
    (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| {
                    (0..dim)
                        .map(|k| {
                            let mut acc = c[k][i][j].clone();
                            acc += &c[k][j][i];
                            acc += &c[i][j][k];
                            &acc * &half
                        })
                        .collect()
                })
                .collect()
        })
        .collect()
}

/// Frame curvature on plain rationals.
pub fn curvature_num(c: &NumTensor3, gamma: &NumTensor3) -> NumTensor4 {
    let dim = c.len();
    let mut r = vec![vec![vec![vec![Rational::zero(); dim]; dim]; dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            for k in 0..dim {
                for l in 0..dim {
                    let mut acc = Rational::zero();
                    for m in 0..dim {
                        acc += &(&gamma[j][k][m] * &gamma[i][m][l]);
                        acc -= &(&gamma[i][k][m] * &gamma[j][m][l]);
                        acc -= &(&c[i][j][m] * &gamma[m][k][l]);
                    }
                    r[i][j][k][l] = acc;
                }
            }
        }
    }
    r
}

pub fn ricci_num(r: &NumTensor4) -> NumMatrix {
    let dim = r.len();
    (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| {
                    let mut acc = Rational::zero();
                    for k in 0..dim {
                        acc += &r[i][k][k][j];
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub fn bracket_num(c: &NumTensor3, v: &[Rational], w: &[Rational]) -> NumVector {
    let dim = c.len();
    let mut out = vec![Rational::zero(); dim];
    for i in 0..dim {
        if v[i].is_zero() {
            continue;
        }
        for j in 0..dim {
            if w[j].is_zero() {
                continue;
            }
            let scale = &v[i] * &w[j];
            for k in 0..dim {
                out[k] += &(&scale * &c[i][j][k]);
            }
        }
    }
    out
}

pub fn apply_num(j: &AlmostComplexStructure, v: &[Rational]) -> NumVector {
    let dim = v.len();
    (0..dim)
        .map(|i| {
            let mut acc = Rational::zero();
            for (k, comp) in v.iter().enumerate() {
                acc += &(j.entry(i, k) * comp);
            }
            acc
        })
        .collect()
}

pub fn jacobiator_num(c: &NumTensor3, i: usize, j: usize, k: usize) -> NumVector {
    let dim = c.len();
    let mut out = vec![Rational::zero(); dim];
    for &(a, b, d) in &[(i, j, k), (j, k, i), (k, i, j)] {
        for m in 0..dim {
            if c[a][b][m].is_zero() {
                continue;
            }
            for l in 0..dim {
                out[l] += &(&c[a][b][m] * &c[m][d][l]);
            }
        }
    }
    out
}

pub fn nijenhuis_num(c: &NumTensor3, j: &AlmostComplexStructure, a: usize, b: usize) -> NumVector {
    let dim = c.len();
    let mut ea = vec![Rational::zero(); dim];
    ea[a] = Rational::one();
    let mut eb = vec![Rational::zero(); dim];
    eb[b] = Rational::one();
    let ja = apply_num(j, &ea);
    let jb = apply_num(j, &eb);
    let mut out = bracket_num(c, &ja, &jb);
    let t2 = apply_num(j, &bracket_num(c, &ja, &eb));
    let t3 = apply_num(j, &bracket_num(c, &ea, &jb));
    let t4 = bracket_num(c, &ea, &eb);
    for i in 0..dim {
        out[i] -= &t2[i];
        out[i] -= &t3[i];
        out[i] -= &t4[i];
    }
    out
}

pub fn covariant_j_num(
    gamma: &NumTensor3,
    j: &AlmostComplexStructure,
    a: usize,
    b: usize,
) -> NumVector {
    let dim = gamma.len();
    let mut out = vec![Rational::zero(); dim];
    // ∇_a (J e_b)
    for m in 0..dim {
        if j.entry(m, b).is_zero() {
            continue;
        }
        for k in 0..dim {
            out[k] += &(j.entry(m, b) * &gamma[a][m][k]);
        }
    }
    // - J (∇_a e_b)
    let jd = apply_num(j, &gamma[a][b]);
    for k in 0..dim {
        out[k] -= &jd[k];
    }
    out
}

pub fn second_fundamental_num(
    gamma: &NumTensor3,
    outside: &BTreeSet<usize>,
    a: usize,
    b: usize,
) -> NumVector {
    let dim = gamma.len();
    let half = Rational::new(1, 2);
    (0..dim)
        .map(|k| {
            if outside.contains(&k) {
                let mut acc = gamma[a][b][k].clone();
                acc += &gamma[b][a][k];
                &acc * &half
            } else {
                Rational::zero()
            }
        })
        .collect()
}

/// Deterministic small-rational sample points from a splitmix64 stream.
pub fn sample_assignments(n_params: usize, count: usize, seed: u64) -> Vec<Vec<Rational>> {
    let mut state = seed;
    let mut next = move || {
        state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    };
    (0..count)
        .map(|_| {
            (0..n_params)
                .map(|_| {
                    let num = (next() % 19) as i64 - 9;
                    let den = (next() % 4) as i64 + 1;
                    Rational::new(num, den)
                })
                .collect()
        })
        .collect()
}

/// One disagreement between the evaluated symbolic pipeline and the direct
/// numeric recomputation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub sample: usize,
    pub quantity: String,
}

/// Compares every reported quantity at each sample point. Empty output means
/// the two computation paths agree exactly.
pub fn agreement_mismatches(g: &LieAlgebraSpec, samples: &[Vec<Rational>]) -> Vec<Mismatch> {
    #[cfg(feature = "parallel")]
    {
        agreement_mismatches_par(g, samples)
    }
    #[cfg(not(feature = "parallel"))]
    {
        agreement_mismatches_seq(g, samples)
    }
}

pub fn agreement_mismatches_seq(g: &LieAlgebraSpec, samples: &[Vec<Rational>]) -> Vec<Mismatch> {
    let ctx = SymbolicContext::build(g);
    samples
        .iter()
        .enumerate()
        .flat_map(|(idx, vals)| ctx.mismatches_at(g, idx, vals))
        .collect()
}

#[cfg(feature = "parallel")]
pub fn agreement_mismatches_par(g: &LieAlgebraSpec, samples: &[Vec<Rational>]) -> Vec<Mismatch> {
    let ctx = SymbolicContext::build(g);
    samples
        .par_iter()
        .enumerate()
        .flat_map_iter(|(idx, vals)| ctx.mismatches_at(g, idx, vals))
        .collect()
}

/// Precomputed symbolic quantities shared across sample points.
struct SymbolicContext {
    conn: crate::riemannian::ConnectionTable,
    curv: crate::riemannian::CurvatureTensor,
    ric: crate::riemannian::RicciTensor,
    structures: Option<(AlmostComplexStructure, AlmostComplexStructure)>,
    nij: Vec<crate::hermitian::NijenhuisTensor>,
    cov: Vec<crate::hermitian::KahlerDefect>,
    split: Option<DistributionSplit>,
    forms: Vec<crate::foliation::SecondFundamentalForm>,
}

impl SymbolicContext {
    fn build(g: &LieAlgebraSpec) -> Self {
        let conn = levi_civita(g);
        let curv = curvature(g, &conn);
        let ric = crate::riemannian::ricci(g, &curv);
        let structures = canonical_structures(g).ok();
        let (nij, cov) = match &structures {
            Some((j1, j2)) => (
                vec![nijenhuis(g, j1), nijenhuis(g, j2)],
                vec![covariant_j(g, &conn, j1), covariant_j(g, &conn, j2)],
            ),
            None => (Vec::new(), Vec::new()),
        };
        let split = DistributionSplit::from_spec(g).ok();
        let forms = match &split {
            Some(split) => vec![
                second_fundamental_form(g, &conn, split, Which::Vertical),
                second_fundamental_form(g, &conn, split, Which::Horizontal),
            ],
            None => Vec::new(),
        };
        SymbolicContext {
            conn,
            curv,
            ric,
            structures,
            nij,
            cov,
            split,
            forms,
        }
    }

    fn mismatches_at(&self, g: &LieAlgebraSpec, sample: usize, vals: &[Rational]) -> Vec<Mismatch> {
        let dim = g.dim();
        let mut out = Vec::new();
        let mut record = |quantity: String| out.push(Mismatch { sample, quantity });

        let c = eval_structure(g, vals);
        let gamma = koszul(&c);
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    if self.conn.entry(i, j, k).eval_indexed(vals) != gamma[i][j][k] {
                        record(format!("connection[{i}][{j}][{k}]"));
                    }
                }
            }
        }

        let r = curvature_num(&c, &gamma);
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    for l in 0..dim {
                        if self.curv.entry(i, j, k, l).eval_indexed(vals) != r[i][j][k][l] {
                            record(format!("curvature[{i}][{j}][{k}][{l}]"));
                        }
                    }
                }
            }
        }

        let ric = ricci_num(&r);
        for i in 0..dim {
            for j in 0..dim {
                if self.ric.entry(i, j).eval_indexed(vals) != ric[i][j] {
                    record(format!("ricci[{i}][{j}]"));
                }
            }
        }

        for i in 0..dim {
            for j in (i + 1)..dim {
                for k in (j + 1)..dim {
                    let sym = g.jacobiator(i, j, k);
                    let num = jacobiator_num(&c, i, j, k);
                    for l in 0..dim {
                        if sym.component(l).eval_indexed(vals) != num[l] {
                            record(format!("jacobiator[{i}][{j}][{k}][{l}]"));
                        }
                    }
                }
            }
        }

        if let Some((j1, j2)) = &self.structures {
            for (s, j) in [j1, j2].into_iter().enumerate() {
                for a in 0..dim {
                    for b in (a + 1)..dim {
                        let sym = self.nij[s].entry(g, a, b);
                        let num = nijenhuis_num(&c, j, a, b);
                        for l in 0..dim {
                            if sym.component(l).eval_indexed(vals) != num[l] {
                                record(format!("nijenhuis.J{}[{a}][{b}][{l}]", s + 1));
                            }
                        }
                    }
                }
                for a in 0..dim {
                    for b in 0..dim {
                        let sym = self.cov[s].nabla_j(a, b);
                        let num = covariant_j_num(&gamma, j, a, b);
                        for l in 0..dim {
                            if sym.component(l).eval_indexed(vals) != num[l] {
                                record(format!("covariant_j.J{}[{a}][{b}][{l}]", s + 1));
                            }
                        }
                    }
                }
            }
        }

        if let Some(split) = &self.split {
            for (form, inside, outside) in [
                (&self.forms[0], split.vertical(), split.horizontal_set()),
                (&self.forms[1], split.horizontal(), split.vertical_set()),
            ] {
                for (pos, &a) in inside.iter().enumerate() {
                    for &b in &inside[pos..] {
                        let sym = form.value(a, b);
                        let num = second_fundamental_num(&gamma, &outside, a, b);
                        for l in 0..dim {
                            if sym.component(l).eval_indexed(vals) != num[l] {
                                record(format!("second_fundamental[{a}][{b}][{l}]"));
                            }
                        }
                    }
                }
            }
        }

        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build, FamilyId};

    #[test]
    fn sampling_is_deterministic() {
        let a = sample_assignments(3, 5, 42);
        let b = sample_assignments(3, 5, 42);
        assert_eq!(a, b);
        let c = sample_assignments(3, 5, 43);
        assert_ne!(a, c);
    }

    #[test]
    fn families_agree_with_oracle() {
        for id in [FamilyId::G7, FamilyId::G3, FamilyId::GeneralS3] {
            let g = build(id);
            let samples = sample_assignments(g.params().len(), 5, 0xA5A5);
            let mismatches = agreement_mismatches_seq(&g, &samples);
            assert!(mismatches.is_empty(), "{id:?}: {mismatches:?}");
        }
    }

    #[cfg(feature = "parallel")]
    #[test]
    fn parallel_matches_sequential() {
        let g = build(FamilyId::G7);
        let samples = sample_assignments(g.params().len(), 8, 7);
        let seq = agreement_mismatches_seq(&g, &samples);
        let par = agreement_mismatches_par(&g, &samples);
        assert_eq!(seq, par);
    }
}
