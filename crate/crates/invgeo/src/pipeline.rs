//! Assembles report sections from a Lie algebra.

use crate::error::GeometryError;
use crate::foliation::{
    conformality, predicate, second_fundamental_form, DistributionSplit, FoliationPredicate, Which,
};
use crate::hermitian::{canonical_structures, covariant_j, integrability_constraints, nijenhuis};
use crate::lie::LieAlgebraSpec;
use crate::report::{Report, Section};
use crate::riemannian::{
    curvature, curvature_antisymmetries_hold, einstein_defect, first_bianchi_holds, levi_civita,
    pair_symmetry_holds, ricci, scalar_curvature, sectional, ConnectionTable,
};

/// Which adapted structures a hermitian report should cover.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StructureChoice {
    J1,
    J2,
    Both,
}

impl StructureChoice {
    fn wants(self, which: usize) -> bool {
        matches!(
            (self, which),
            (StructureChoice::Both, _) | (StructureChoice::J1, 0) | (StructureChoice::J2, 1)
        )
    }
}

pub fn checks_section(g: &LieAlgebraSpec) -> Section {
    let mut section = Section::new("checks");
    // re-verified against the raw tensor, not just the constructor contract
    let dim = g.dim();
    let mut antisym = true;
    for i in 0..dim {
        for j in 0..dim {
            for k in 0..dim {
                if !(g.c(i, j, k) + g.c(j, i, k)).is_zero() {
                    antisym = false;
                }
            }
        }
    }
    section.push("antisymmetry", if antisym { "ok" } else { "fail" });

    let residuals = g.jacobi_residual();
    if residuals.is_empty() {
        section.push("jacobi", "ok");
    } else {
        section.push(
            "jacobi",
            format!("{} nonzero residual triples", residuals.len()),
        );
    }

    let conn = levi_civita(g);
    let curv = curvature(g, &conn);
    if residuals.is_empty() {
        let ok = curvature_antisymmetries_hold(&curv)
            && pair_symmetry_holds(&curv)
            && first_bianchi_holds(&curv);
        section.push("curvature_symmetries", if ok { "ok" } else { "fail" });
    } else {
        section.push("curvature_symmetries", "skipped (jacobi residual nonzero)");
    }
    let ric = ricci(g, &curv);
    section.push(
        "ricci_symmetric",
        if ric.is_symmetric() {
            "ok"
        } else {
            "no (requires jacobi)"
        },
    );
    section
}

pub fn connection_section(g: &LieAlgebraSpec, conn: &ConnectionTable) -> Section {
    let mut section = Section::new("connection");
    for i in 0..g.dim() {
        for j in 0..g.dim() {
            section.push(
                format!("{}.{}", g.basis_name(i), g.basis_name(j)),
                conn.derivative(i, j).render(g.basis()),
            );
        }
    }
    section
}

pub fn sectional_section(g: &LieAlgebraSpec, conn: &ConnectionTable) -> Section {
    let curv = curvature(g, conn);
    let mut section = Section::new("sectional");
    for i in 0..g.dim() {
        for j in (i + 1)..g.dim() {
            let value = sectional(&curv, i, j).expect("distinct indices");
            section.push(
                format!("{}^{}", g.basis_name(i), g.basis_name(j)),
                value.to_string(),
            );
        }
    }
    section
}

pub fn ricci_section(g: &LieAlgebraSpec, conn: &ConnectionTable) -> Section {
    let curv = curvature(g, conn);
    let ric = ricci(g, &curv);
    let mut section = Section::new("ricci");
    for i in 0..g.dim() {
        for j in i..g.dim() {
            section.push(
                format!("{}{}", g.basis_name(i), g.basis_name(j)),
                ric.entry(i, j).to_string(),
            );
        }
    }
    section.push("scalar", scalar_curvature(&ric).to_string());
    section
}

pub fn einstein_section(g: &LieAlgebraSpec, conn: &ConnectionTable) -> Section {
    let curv = curvature(g, conn);
    let ric = ricci(g, &curv);
    let defect = einstein_defect(&ric);
    let mut section = Section::new("einstein_defect");
    section.push("off_diagonal", defect.off_diagonal.to_string());
    section.push("diagonal_gaps", defect.diagonal_gaps.to_string());
    section.push("einstein", if defect.is_empty() { "yes" } else { "no" });
    section
}

pub fn hermitian_sections(
    g: &LieAlgebraSpec,
    conn: &ConnectionTable,
    choice: StructureChoice,
) -> Result<Vec<Section>, GeometryError> {
    let (j1, j2) = canonical_structures(g)?;
    let mut out = Vec::new();
    for (idx, j) in [j1, j2].iter().enumerate() {
        if !choice.wants(idx) {
            continue;
        }
        let label = format!("J{}", idx + 1);

        let mut nij_section = Section::new(format!("nijenhuis.{label}"));
        let tensor = nijenhuis(g, j);
        for (&(a, b), value) in tensor.pairs() {
            nij_section.push(
                format!("{}.{}", g.basis_name(a), g.basis_name(b)),
                value.render(g.basis()),
            );
        }
        let constraints = integrability_constraints(g, j);
        nij_section.push("constraints", constraints.to_string());
        nij_section.push(
            "integrable",
            if constraints.is_empty() { "yes" } else { "no" },
        );
        out.push(nij_section);

        let mut kahler_section = Section::new(format!("kahler_defect.{label}"));
        let defect = covariant_j(g, conn, j);
        for a in 0..g.dim() {
            for b in 0..g.dim() {
                kahler_section.push(
                    format!("{}.{}", g.basis_name(a), g.basis_name(b)),
                    defect.nabla_j(a, b).render(g.basis()),
                );
            }
        }
        kahler_section.push("constraints", defect.components.to_string());
        kahler_section.push("kahler", if defect.is_empty() { "yes" } else { "no" });
        out.push(kahler_section);
    }
    Ok(out)
}

pub fn foliation_section(
    g: &LieAlgebraSpec,
    conn: &ConnectionTable,
    split: &DistributionSplit,
) -> Section {
    let mut section = Section::new("foliation");
    let bv = second_fundamental_form(g, conn, split, Which::Vertical);
    for (&(a, b), value) in bv.pairs() {
        section.push(
            format!("BV.{}.{}", g.basis_name(a), g.basis_name(b)),
            value.render(g.basis()),
        );
    }
    let bh = second_fundamental_form(g, conn, split, Which::Horizontal);
    for (&(a, b), value) in bh.pairs() {
        section.push(
            format!("BH.{}.{}", g.basis_name(a), g.basis_name(b)),
            value.render(g.basis()),
        );
    }
    let (constraints, mean) = conformality(g, conn, split);
    section.push("conformal", constraints.to_string());
    section.push(
        "mean_vector",
        match mean {
            Some(v) => v.render(g.basis()),
            None => "-".to_string(),
        },
    );
    for which in FoliationPredicate::ALL {
        section.push(
            which.to_string(),
            predicate(g, conn, split, which).to_string(),
        );
    }
    section
}

/// The whole pipeline: checks, connection, curvature data, Einstein defect,
/// both Hermitian structures when the split allows them, and the foliation
/// data when a split is declared.
pub fn full_report(g: &LieAlgebraSpec) -> Report {
    let conn = levi_civita(g);
    let mut report = Report::new();
    report.push(checks_section(g));
    report.push(connection_section(g, &conn));
    report.push(sectional_section(g, &conn));
    report.push(ricci_section(g, &conn));
    report.push(einstein_section(g, &conn));
    if let Ok(sections) = hermitian_sections(g, &conn, StructureChoice::Both) {
        for section in sections {
            report.push(section);
        }
    }
    if let Ok(split) = DistributionSplit::from_spec(g) {
        report.push(foliation_section(g, &conn, &split));
    }
    report
}
