//! Built-in algebra families and the golden-report generator.
//!
//! Every family comes with vertical distribution `{Z, W}` and the basis
//! `(X, Y, Z, W)`. The golden report recomputes each identity the attached
//! tables promise and records mismatches instead of failing, so a single
//! flipped convention shows up as a named failure.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::constraint::ConstraintSet;
use crate::error::GeometryError;
use crate::expr::{parse_bracket_value, parse_expression};
use crate::foliation::{conformality, predicate, DistributionSplit, FoliationPredicate};
use crate::hermitian::{
    canonical_structures, covariant_j, integrability_constraints_with, is_kahler,
};
use crate::lie::{LieAlgebraSpec, SpecBuilder, Vector};
use crate::numeric::{agreement_mismatches, sample_assignments};
use crate::poly::{ParameterTable, Polynomial};
use crate::rational::Rational;
use crate::report::{Report, Section};
use crate::riemannian::{curvature_with, levi_civita_with, ricci, sectional};

/// The built-in bracket families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyId {
    /// The general conformal-with-minimal-leaves bracket form on
    /// `(X, Y, Z, W)` with fourteen free structure constants.
    GeneralS3,
    /// The general form restricted to the locus where `J1` is integrable.
    J1Integrable,
    /// The general form restricted to the locus where both structures are
    /// integrable; the vertical foliation becomes totally geodesic.
    BothIntegrable,
    /// Three-parameter family `(theta1, theta2, z2)` whose horizontal
    /// distribution is non-integrable.
    G7,
    /// Three-parameter family `(alpha, beta, theta2)` with totally geodesic
    /// vertical leaves.
    G3,
}

impl FamilyId {
    pub const ALL: [FamilyId; 5] = [
        FamilyId::GeneralS3,
        FamilyId::J1Integrable,
        FamilyId::BothIntegrable,
        FamilyId::G7,
        FamilyId::G3,
    ];
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            FamilyId::GeneralS3 => "general_s3",
            FamilyId::J1Integrable => "j1_integrable",
            FamilyId::BothIntegrable => "both_integrable",
            FamilyId::G7 => "g7",
            FamilyId::G3 => "g3",
        };
        write!(f, "{name}")
    }
}

impl FromStr for FamilyId {
    type Err = GeometryError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "general_s3" => Ok(FamilyId::GeneralS3),
            "j1_integrable" => Ok(FamilyId::J1Integrable),
            "both_integrable" => Ok(FamilyId::BothIntegrable),
            "g7" => Ok(FamilyId::G7),
            "g3" => Ok(FamilyId::G3),
            other => Err(GeometryError::UnknownFamily(other.to_string())),
        }
    }
}

const BASIS: [&str; 4] = ["X", "Y", "Z", "W"];

fn p(t: &Arc<ParameterTable>, name: &str) -> Polynomial {
    Polynomial::parameter(t, name).expect("declared parameter")
}

fn np(t: &Arc<ParameterTable>, name: &str) -> Polynomial {
    p(t, name).negate()
}

/// Builds the family with its parameters declared in rendering order and the
/// vertical distribution `{Z, W}`.
pub fn build(family: FamilyId) -> LieAlgebraSpec {
    match family {
        FamilyId::GeneralS3 => {
            let t = ParameterTable::new([
                "lambda", "alpha", "beta", "a", "b", "r", "z1", "z2", "z3", "z4", "w1", "w2",
                "theta1", "theta2",
            ])
            .expect("valid table");
            SpecBuilder::new(&BASIS, &t)
                .bracket("W", "Z", &[(p(&t, "lambda"), "W")])
                .bracket(
                    "Z",
                    "X",
                    &[
                        (p(&t, "alpha"), "X"),
                        (p(&t, "beta"), "Y"),
                        (p(&t, "z1"), "Z"),
                        (p(&t, "w1"), "W"),
                    ],
                )
                .bracket(
                    "Z",
                    "Y",
                    &[
                        (np(&t, "beta"), "X"),
                        (p(&t, "alpha"), "Y"),
                        (p(&t, "z2"), "Z"),
                        (p(&t, "w2"), "W"),
                    ],
                )
                .bracket(
                    "W",
                    "X",
                    &[
                        (p(&t, "a"), "X"),
                        (p(&t, "b"), "Y"),
                        (p(&t, "z3"), "Z"),
                        (np(&t, "z1"), "W"),
                    ],
                )
                .bracket(
                    "W",
                    "Y",
                    &[
                        (np(&t, "b"), "X"),
                        (p(&t, "a"), "Y"),
                        (p(&t, "z4"), "Z"),
                        (np(&t, "z2"), "W"),
                    ],
                )
                .bracket(
                    "Y",
                    "X",
                    &[
                        (p(&t, "r"), "X"),
                        (p(&t, "theta1"), "Z"),
                        (p(&t, "theta2"), "W"),
                    ],
                )
                .vertical(&["Z", "W"])
                .build()
        }
        FamilyId::J1Integrable => {
            let t = ParameterTable::new([
                "lambda", "alpha", "beta", "a", "b", "r", "z1", "z2", "z3", "z4", "theta1",
                "theta2",
            ])
            .expect("valid table");
            let two = Rational::from_int(2);
            // w1 = -(2 z2 + z3), w2 = 2 z1 - z4
            let w1 = (&p(&t, "z2").scale(&two) + &p(&t, "z3")).negate();
            let w2 = &p(&t, "z1").scale(&two) - &p(&t, "z4");
            SpecBuilder::new(&BASIS, &t)
                .bracket("W", "Z", &[(p(&t, "lambda"), "W")])
                .bracket(
                    "Z",
                    "X",
                    &[
                        (p(&t, "alpha"), "X"),
                        (p(&t, "beta"), "Y"),
                        (p(&t, "z1"), "Z"),
                        (w1, "W"),
                    ],
                )
                .bracket(
                    "Z",
                    "Y",
                    &[
                        (np(&t, "beta"), "X"),
                        (p(&t, "alpha"), "Y"),
                        (p(&t, "z2"), "Z"),
                        (w2, "W"),
                    ],
                )
                .bracket(
                    "W",
                    "X",
                    &[
                        (p(&t, "a"), "X"),
                        (p(&t, "b"), "Y"),
                        (p(&t, "z3"), "Z"),
                        (np(&t, "z1"), "W"),
                    ],
                )
                .bracket(
                    "W",
                    "Y",
                    &[
                        (np(&t, "b"), "X"),
                        (p(&t, "a"), "Y"),
                        (p(&t, "z4"), "Z"),
                        (np(&t, "z2"), "W"),
                    ],
                )
                .bracket(
                    "Y",
                    "X",
                    &[
                        (p(&t, "r"), "X"),
                        (p(&t, "theta1"), "Z"),
                        (p(&t, "theta2"), "W"),
                    ],
                )
                .vertical(&["Z", "W"])
                .build()
        }
        FamilyId::BothIntegrable => {
            let t = ParameterTable::new([
                "lambda", "alpha", "beta", "a", "b", "r", "z3", "z4", "theta1", "theta2",
            ])
            .expect("valid table");
            SpecBuilder::new(&BASIS, &t)
                .bracket("W", "Z", &[(p(&t, "lambda"), "W")])
                .bracket(
                    "Z",
                    "X",
                    &[
                        (p(&t, "alpha"), "X"),
                        (p(&t, "beta"), "Y"),
                        (np(&t, "z3"), "W"),
                    ],
                )
                .bracket(
                    "Z",
                    "Y",
                    &[
                        (np(&t, "beta"), "X"),
                        (p(&t, "alpha"), "Y"),
                        (np(&t, "z4"), "W"),
                    ],
                )
                .bracket(
                    "W",
                    "X",
                    &[(p(&t, "a"), "X"), (p(&t, "b"), "Y"), (p(&t, "z3"), "Z")],
                )
                .bracket(
                    "W",
                    "Y",
                    &[(np(&t, "b"), "X"), (p(&t, "a"), "Y"), (p(&t, "z4"), "Z")],
                )
                .bracket(
                    "Y",
                    "X",
                    &[
                        (p(&t, "r"), "X"),
                        (p(&t, "theta1"), "Z"),
                        (p(&t, "theta2"), "W"),
                    ],
                )
                .vertical(&["Z", "W"])
                .build()
        }
        FamilyId::G7 => {
            let t = ParameterTable::new(["theta1", "theta2", "z2"]).expect("valid table");
            let two = Rational::from_int(2);
            SpecBuilder::new(&BASIS, &t)
                .bracket("Z", "X", &[(p(&t, "z2").scale(&two).negate(), "W")])
                .bracket("Z", "Y", &[(p(&t, "z2"), "Z")])
                .bracket("W", "Y", &[(np(&t, "z2"), "W")])
                .bracket(
                    "Y",
                    "X",
                    &[
                        (p(&t, "z2").scale(&two), "X"),
                        (p(&t, "theta1"), "Z"),
                        (p(&t, "theta2"), "W"),
                    ],
                )
                .vertical(&["Z", "W"])
                .build()
        }
        FamilyId::G3 => {
            let t = ParameterTable::new(["alpha", "beta", "theta2"]).expect("valid table");
            let two = Rational::from_int(2);
            SpecBuilder::new(&BASIS, &t)
                .bracket("W", "Z", &[(p(&t, "alpha").scale(&two).negate(), "W")])
                .bracket("Z", "X", &[(p(&t, "alpha"), "X"), (p(&t, "beta"), "Y")])
                .bracket("Z", "Y", &[(np(&t, "beta"), "X"), (p(&t, "alpha"), "Y")])
                .bracket("Y", "X", &[(p(&t, "theta2"), "W")])
                .vertical(&["Z", "W"])
                .build()
        }
    }
}

/// The abelian algebra in the given dimension; dimension 4 gets the standard
/// basis and vertical split.
pub fn abelian(dim: usize) -> LieAlgebraSpec {
    let (basis, vertical): (Vec<String>, Option<Vec<usize>>) = if dim == 4 {
        (
            BASIS.iter().map(|s| s.to_string()).collect(),
            Some(vec![2, 3]),
        )
    } else {
        ((1..=dim).map(|i| format!("e{i}")).collect(), None)
    };
    let params = ParameterTable::empty();
    let zero = Polynomial::zero(&params);
    let c = vec![vec![vec![zero; dim]; dim]; dim];
    LieAlgebraSpec::new(basis, params, c, vertical).expect("abelian spec is valid")
}

/// Convention flips injectable into the golden-report pipeline, used to
/// demonstrate that every sign choice is pinned by at least one identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Flip {
    #[default]
    None,
    /// Negate the curvature tensor (the opposite curvature sign convention).
    Curvature,
    /// Flip the sign of the third Koszul term.
    Koszul,
    /// Flip the sign of the final `[v,w]` term of the Nijenhuis tensor.
    Nijenhuis,
}

impl FromStr for Flip {
    type Err = GeometryError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "none" => Ok(Flip::None),
            "curvature" => Ok(Flip::Curvature),
            "koszul" => Ok(Flip::Koszul),
            "nijenhuis" => Ok(Flip::Nijenhuis),
            other => Err(GeometryError::UnknownFamily(format!("flip `{other}`"))),
        }
    }
}

/// One verified identity: the expected and computed canonical strings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

/// The golden report: every identity from the attached tables, recomputed
/// and compared exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PaperReport {
    pub checks: Vec<IdentityCheck>,
}

impl PaperReport {
    pub fn failures(&self) -> impl Iterator<Item = &IdentityCheck> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn is_clean(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for check in &self.checks {
            if check.pass {
                out.push_str(&format!("ok   {}\n", check.name));
            } else {
                out.push_str(&format!(
                    "FAIL {}: expected {}, actual {}\n",
                    check.name, check.expected, check.actual
                ));
            }
        }
        let failures = self.failures().count();
        out.push_str(&format!(
            "paper-report: {} identities, {} failures\n",
            self.checks.len(),
            failures
        ));
        out
    }

    pub fn to_report(&self) -> Report {
        let mut report = Report::new();
        let mut section = Section::new("paper_report");
        for check in &self.checks {
            let value = if check.pass {
                "ok".to_string()
            } else {
                format!("FAIL expected={}; actual={}", check.expected, check.actual)
            };
            section.push(check.name.clone(), value);
        }
        report.push(section);
        let mut summary = Section::new("summary");
        summary.push("identities", self.checks.len().to_string());
        summary.push("failures", self.failures().count().to_string());
        report.push(summary);
        report
    }
}

struct Collector {
    checks: Vec<IdentityCheck>,
}

impl Collector {
    fn new() -> Self {
        Collector { checks: Vec::new() }
    }

    fn vector(&mut self, name: &str, g: &LieAlgebraSpec, actual: &Vector, expected: &str) {
        let parsed = parse_bracket_value(expected, g.basis(), g.params())
            .map(Vector::new)
            .expect("golden vector parses");
        self.checks.push(IdentityCheck {
            name: name.to_string(),
            expected: parsed.render(g.basis()),
            actual: actual.render(g.basis()),
            pass: parsed == *actual,
        });
    }

    fn poly(&mut self, name: &str, g: &LieAlgebraSpec, actual: &Polynomial, expected: &str) {
        let parsed = parse_expression(expected, g.params()).expect("golden polynomial parses");
        self.checks.push(IdentityCheck {
            name: name.to_string(),
            expected: parsed.to_string(),
            actual: actual.to_string(),
            pass: parsed == *actual,
        });
    }

    fn set(&mut self, name: &str, g: &LieAlgebraSpec, actual: &ConstraintSet, expected: &[&str]) {
        let parsed: ConstraintSet = expected
            .iter()
            .map(|e| parse_expression(e, g.params()).expect("golden constraint parses"))
            .collect();
        self.checks.push(IdentityCheck {
            name: name.to_string(),
            expected: parsed.to_string(),
            actual: actual.to_string(),
            pass: parsed == *actual,
        });
    }

    fn flag(&mut self, name: &str, actual: &str, expected: &str) {
        self.checks.push(IdentityCheck {
            name: name.to_string(),
            expected: expected.to_string(),
            actual: actual.to_string(),
            pass: expected == actual,
        });
    }
}

const G7_CONNECTION: [(&str, &str); 16] = [
    ("X.X", "2*z2*Y"),
    ("X.Y", "-2*z2*X - 1/2*theta1*Z - 1/2*theta2*W"),
    ("X.Z", "1/2*theta1*Y + z2*W"),
    ("X.W", "1/2*theta2*Y - z2*Z"),
    ("Y.X", "1/2*theta1*Z + 1/2*theta2*W"),
    ("Y.Y", "0"),
    ("Y.Z", "-1/2*theta1*X"),
    ("Y.W", "-1/2*theta2*X"),
    ("Z.X", "1/2*theta1*Y - z2*W"),
    ("Z.Y", "-1/2*theta1*X + z2*Z"),
    ("Z.Z", "-z2*Y"),
    ("Z.W", "z2*X"),
    ("W.X", "1/2*theta2*Y - z2*Z"),
    ("W.Y", "-1/2*theta2*X - z2*W"),
    ("W.Z", "z2*X"),
    ("W.W", "z2*Y"),
];

const G7_SECTIONAL: [(&str, &str); 6] = [
    ("X^Y", "-3/4*(theta1^2 + theta2^2) - 4*z2^2"),
    ("X^Z", "1/4*theta1^2 - z2^2"),
    ("X^W", "1/4*theta2^2 - z2^2"),
    ("Y^Z", "1/4*theta1^2 - z2^2"),
    ("Y^W", "1/4*theta2^2 - z2^2"),
    ("Z^W", "2*z2^2"),
];

const G3_CONNECTION: [(&str, &str); 16] = [
    ("X.X", "alpha*Z"),
    ("X.Y", "-1/2*theta2*W"),
    ("X.Z", "-alpha*X"),
    ("X.W", "1/2*theta2*Y"),
    ("Y.X", "1/2*theta2*W"),
    ("Y.Y", "alpha*Z"),
    ("Y.Z", "-alpha*Y"),
    ("Y.W", "-1/2*theta2*X"),
    ("Z.X", "beta*Y"),
    ("Z.Y", "-beta*X"),
    ("Z.Z", "0"),
    ("Z.W", "0"),
    ("W.X", "1/2*theta2*Y"),
    ("W.Y", "-1/2*theta2*X"),
    ("W.Z", "-2*alpha*W"),
    ("W.W", "2*alpha*Z"),
];

const G3_SECTIONAL: [(&str, &str); 6] = [
    ("X^Y", "-alpha^2 - 3/4*theta2^2"),
    ("X^Z", "-alpha^2"),
    ("X^W", "1/4*theta2^2 - 2*alpha^2"),
    ("Y^Z", "-alpha^2"),
    ("Y^W", "1/4*theta2^2 - 2*alpha^2"),
    ("Z^W", "-4*alpha^2"),
];

const ORACLE_SAMPLES: usize = 20;
const ORACLE_SEED: u64 = 0x1EE7_0FF5;

pub fn paper_report() -> PaperReport {
    paper_report_with(Flip::None)
}

/// Builds the golden report with an optionally flipped convention injected
/// into the pipeline under test. The oracle comparisons always use the
/// straight conventions.
pub fn paper_report_with(flip: Flip) -> PaperReport {
    let koszul_flip = flip == Flip::Koszul;
    let curvature_flip = flip == Flip::Curvature;
    let nijenhuis_flip = flip == Flip::Nijenhuis;
    let mut col = Collector::new();

    // three-parameter family with non-integrable horizontal distribution
    {
        let g = build(FamilyId::G7);
        let conn = levi_civita_with(&g, koszul_flip);
        let curv = curvature_with(&g, &conn, curvature_flip);
        let ric = ricci(&g, &curv);
        let split = DistributionSplit::from_spec(&g).expect("declared split");
        let (j1, _) = canonical_structures(&g).expect("adapted structures");

        for (key, expected) in G7_CONNECTION {
            let (a, b) = key.split_once('.').expect("key");
            let i = g.basis_index(a).unwrap();
            let j = g.basis_index(b).unwrap();
            col.vector(
                &format!("g7.connection.{key}"),
                &g,
                &conn.derivative(i, j),
                expected,
            );
        }
        for (key, expected) in G7_SECTIONAL {
            let (a, b) = key.split_once('^').expect("key");
            let i = g.basis_index(a).unwrap();
            let j = g.basis_index(b).unwrap();
            let value = sectional(&curv, i, j).expect("distinct");
            col.poly(&format!("g7.sectional.{key}"), &g, &value, expected);
        }
        col.poly(
            "g7.ricci.XX",
            &g,
            ric.entry(0, 0),
            "-1/2*(theta1^2 + theta2^2) - 6*z2^2",
        );
        col.poly("g7.ricci.ZZ", &g, ric.entry(2, 2), "1/2*theta1^2");

        let defect = crate::riemannian::einstein_defect(&ric);
        col.flag(
            "g7.einstein",
            if defect.is_empty() { "yes" } else { "no" },
            "no",
        );

        let kahler = covariant_j(&g, &conn, &j1);
        col.vector(
            "g7.nablaJ1.X.X",
            &g,
            kahler.nabla_j(0, 0),
            "-1/2*theta1*Z - 1/2*theta2*W",
        );
        col.flag(
            "g7.kahler.J1",
            if is_kahler(&kahler) { "yes" } else { "no" },
            "no",
        );
        col.set(
            "g7.integrability.J1",
            &g,
            &integrability_constraints_with(&g, &j1, nijenhuis_flip),
            &[],
        );

        col.set(
            "g7.foliation.minimal",
            &g,
            &predicate(&g, &conn, &split, FoliationPredicate::Minimal),
            &[],
        );
        col.set(
            "g7.foliation.totally_geodesic",
            &g,
            &predicate(&g, &conn, &split, FoliationPredicate::TotallyGeodesic),
            &["z2"],
        );
        col.set(
            "g7.foliation.horizontal_integrable",
            &g,
            &predicate(&g, &conn, &split, FoliationPredicate::HorizontalIntegrable),
            &["theta1", "theta2"],
        );
        let (conformal, mean) = conformality(&g, &conn, &split);
        col.set("g7.foliation.conformal", &g, &conformal, &[]);
        col.vector(
            "g7.foliation.mean_vector",
            &g,
            &mean.unwrap_or_else(|| Vector::zero(g.params(), 4)),
            "0",
        );

        col.flag(
            "g7.jacobi",
            if g.jacobi_residual().is_empty() {
                "ok"
            } else {
                "fail"
            },
            "ok",
        );
        let samples = sample_assignments(g.params().len(), ORACLE_SAMPLES, ORACLE_SEED);
        col.flag(
            "g7.oracle",
            if agreement_mismatches(&g, &samples).is_empty() {
                "agree"
            } else {
                "disagree"
            },
            "agree",
        );
    }

    // three-parameter family with totally geodesic leaves
    {
        let g = build(FamilyId::G3);
        let conn = levi_civita_with(&g, koszul_flip);
        let curv = curvature_with(&g, &conn, curvature_flip);
        let ric = ricci(&g, &curv);
        let split = DistributionSplit::from_spec(&g).expect("declared split");
        let (j1, j2) = canonical_structures(&g).expect("adapted structures");

        for (key, expected) in G3_CONNECTION {
            let (a, b) = key.split_once('.').expect("key");
            let i = g.basis_index(a).unwrap();
            let j = g.basis_index(b).unwrap();
            col.vector(
                &format!("g3.connection.{key}"),
                &g,
                &conn.derivative(i, j),
                expected,
            );
        }
        for (key, expected) in G3_SECTIONAL {
            let (a, b) = key.split_once('^').expect("key");
            let i = g.basis_index(a).unwrap();
            let j = g.basis_index(b).unwrap();
            let value = sectional(&curv, i, j).expect("distinct");
            col.poly(&format!("g3.sectional.{key}"), &g, &value, expected);
        }
        col.poly(
            "g3.ricci.XX",
            &g,
            ric.entry(0, 0),
            "-1/2*theta2^2 - 4*alpha^2",
        );
        col.poly("g3.ricci.ZZ", &g, ric.entry(2, 2), "-6*alpha^2");
        col.poly(
            "g3.ricci.WW",
            &g,
            ric.entry(3, 3),
            "1/2*theta2^2 - 8*alpha^2",
        );

        let alpha = p(g.params(), "alpha");
        let two = Rational::from_int(2);
        let plus = g
            .substitute("theta2", &alpha.scale(&two))
            .expect("theta2 declared");
        let minus = g
            .substitute("theta2", &alpha.scale(&two).negate())
            .expect("theta2 declared");

        col.flag(
            "g3.kahler.J1",
            if is_kahler(&covariant_j(&g, &conn, &j1)) {
                "yes"
            } else {
                "no"
            },
            "no",
        );
        col.flag(
            "g3.kahler.J2",
            if is_kahler(&covariant_j(&g, &conn, &j2)) {
                "yes"
            } else {
                "no"
            },
            "no",
        );
        let conn_minus = levi_civita_with(&minus, koszul_flip);
        let conn_plus = levi_civita_with(&plus, koszul_flip);
        col.set(
            "g3.kahler.J1.theta2=-2alpha",
            &minus,
            &covariant_j(&minus, &conn_minus, &j1).components,
            &[],
        );
        col.flag(
            "g3.kahler.J2.theta2=-2alpha",
            if is_kahler(&covariant_j(&minus, &conn_minus, &j2)) {
                "yes"
            } else {
                "no"
            },
            "no",
        );
        col.set(
            "g3.kahler.J2.theta2=+2alpha",
            &plus,
            &covariant_j(&plus, &conn_plus, &j2).components,
            &[],
        );
        col.flag(
            "g3.kahler.J1.theta2=+2alpha",
            if is_kahler(&covariant_j(&plus, &conn_plus, &j1)) {
                "yes"
            } else {
                "no"
            },
            "no",
        );

        let einstein = |spec: &LieAlgebraSpec| {
            let conn = levi_civita_with(spec, koszul_flip);
            let curv = curvature_with(spec, &conn, curvature_flip);
            let ric = ricci(spec, &curv);
            crate::riemannian::einstein_defect(&ric).is_empty()
        };
        col.flag("g3.einstein", if einstein(&g) { "yes" } else { "no" }, "no");
        col.flag(
            "g3.einstein.theta2=+2alpha",
            if einstein(&plus) { "yes" } else { "no" },
            "yes",
        );
        col.flag(
            "g3.einstein.theta2=-2alpha",
            if einstein(&minus) { "yes" } else { "no" },
            "yes",
        );

        col.set(
            "g3.foliation.totally_geodesic",
            &g,
            &predicate(&g, &conn, &split, FoliationPredicate::TotallyGeodesic),
            &[],
        );
        col.set(
            "g3.foliation.minimal",
            &g,
            &predicate(&g, &conn, &split, FoliationPredicate::Minimal),
            &[],
        );
        let (conformal, mean) = conformality(&g, &conn, &split);
        col.set("g3.foliation.conformal", &g, &conformal, &[]);
        col.vector(
            "g3.foliation.mean_vector",
            &g,
            &mean.unwrap_or_else(|| Vector::zero(g.params(), 4)),
            "alpha*Z",
        );

        col.flag(
            "g3.jacobi",
            if g.jacobi_residual().is_empty() {
                "ok"
            } else {
                "fail"
            },
            "ok",
        );
        let samples = sample_assignments(g.params().len(), ORACLE_SAMPLES, ORACLE_SEED);
        col.flag(
            "g3.oracle",
            if agreement_mismatches(&g, &samples).is_empty() {
                "agree"
            } else {
                "disagree"
            },
            "agree",
        );
    }

    // the general bracket form: integrability loci and the geometry
    // predicates over all fourteen structure constants
    {
        let g = build(FamilyId::GeneralS3);
        let conn = levi_civita_with(&g, koszul_flip);
        let split = DistributionSplit::from_spec(&g).expect("declared split");
        let (j1, j2) = canonical_structures(&g).expect("adapted structures");

        let set1 = integrability_constraints_with(&g, &j1, nijenhuis_flip);
        let set2 = integrability_constraints_with(&g, &j2, nijenhuis_flip);
        col.set(
            "general_s3.integrability.J1",
            &g,
            &set1,
            &["2*z1 - z4 - w2", "2*z2 + z3 + w1"],
        );
        col.set(
            "general_s3.integrability.J2",
            &g,
            &set2,
            &["2*z1 + z4 + w2", "2*z2 - z3 - w1"],
        );
        let union = set1.union(&set2);
        match union.reduced_linear_basis() {
            Some(reduced) => col.set(
                "general_s3.integrability.both_reduced",
                &g,
                &reduced,
                &["z1", "z2", "z3 + w1", "z4 + w2"],
            ),
            None => col.flag(
                "general_s3.integrability.both_reduced",
                "nonlinear",
                "linear",
            ),
        }

        col.set(
            "general_s3.foliation.totally_geodesic",
            &g,
            &predicate(&g, &conn, &split, FoliationPredicate::TotallyGeodesic),
            &["z1", "z2", "z3 + w1", "z4 + w2"],
        );
        col.set(
            "general_s3.foliation.riemannian",
            &g,
            &predicate(&g, &conn, &split, FoliationPredicate::Riemannian),
            &["alpha", "a"],
        );
        col.set(
            "general_s3.foliation.horizontal_integrable",
            &g,
            &predicate(&g, &conn, &split, FoliationPredicate::HorizontalIntegrable),
            &["theta1", "theta2"],
        );
        col.set(
            "general_s3.foliation.minimal",
            &g,
            &predicate(&g, &conn, &split, FoliationPredicate::Minimal),
            &[],
        );
        let (conformal, mean) = conformality(&g, &conn, &split);
        col.set("general_s3.foliation.conformal", &g, &conformal, &[]);
        col.vector(
            "general_s3.foliation.mean_vector",
            &g,
            &mean.unwrap_or_else(|| Vector::zero(g.params(), 4)),
            "alpha*Z + a*W",
        );

        let samples = sample_assignments(g.params().len(), ORACLE_SAMPLES, ORACLE_SEED);
        col.flag(
            "general_s3.oracle",
            if agreement_mismatches(&g, &samples).is_empty() {
                "agree"
            } else {
                "disagree"
            },
            "agree",
        );
    }

    // the doubly-integrable restriction
    {
        let g = build(FamilyId::BothIntegrable);
        let conn = levi_civita_with(&g, koszul_flip);
        let split = DistributionSplit::from_spec(&g).expect("declared split");
        let (j1, j2) = canonical_structures(&g).expect("adapted structures");
        col.set(
            "both_integrable.integrability.J1",
            &g,
            &integrability_constraints_with(&g, &j1, nijenhuis_flip),
            &[],
        );
        col.set(
            "both_integrable.integrability.J2",
            &g,
            &integrability_constraints_with(&g, &j2, nijenhuis_flip),
            &[],
        );
        col.set(
            "both_integrable.foliation.totally_geodesic",
            &g,
            &predicate(&g, &conn, &split, FoliationPredicate::TotallyGeodesic),
            &[],
        );
    }

    PaperReport { checks: col.checks }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_ids_round_trip() {
        for id in FamilyId::ALL {
            assert_eq!(id.to_string().parse::<FamilyId>().unwrap(), id);
        }
        assert!(matches!(
            "g9".parse::<FamilyId>(),
            Err(GeometryError::UnknownFamily(_))
        ));
    }

    #[test]
    fn build_examples() {
        let g7 = build(FamilyId::G7);
        let zy = g7.bracket_basis(2, 1);
        assert_eq!(zy.render(g7.basis()), "z2*Z");

        let g3 = build(FamilyId::G3);
        let zx = g3.bracket_basis(2, 0);
        assert_eq!(zx.render(g3.basis()), "alpha*X + beta*Y");

        let j1 = build(FamilyId::J1Integrable);
        let zx = j1.bracket_basis(2, 0);
        let w = 3;
        assert_eq!(zx.component(w).to_string(), "-2*z2 - z3");
    }

    #[test]
    fn j1_integrable_is_integrable_by_construction() {
        let g = build(FamilyId::J1Integrable);
        let (j1, _) = canonical_structures(&g).unwrap();
        assert!(integrability_constraints_with(&g, &j1, false).is_empty());
    }

    #[test]
    fn clean_report() {
        let report = paper_report();
        let failures: Vec<_> = report.failures().collect();
        assert!(failures.is_empty(), "failures: {failures:#?}");
    }

    #[test]
    fn flips_break_named_identities() {
        let curvature = paper_report_with(Flip::Curvature);
        assert!(curvature
            .failures()
            .any(|c| c.name == "g7.sectional.Z^W" && c.actual == "-2*z2^2"));

        let koszul = paper_report_with(Flip::Koszul);
        assert!(koszul
            .failures()
            .any(|c| c.name.starts_with("g7.connection.")));

        let nijenhuis = paper_report_with(Flip::Nijenhuis);
        assert!(nijenhuis
            .failures()
            .any(|c| c.name.starts_with("general_s3.integrability.")));
    }

    #[test]
    fn report_is_deterministic() {
        let a = paper_report().to_text();
        let b = paper_report().to_text();
        assert_eq!(a, b);
        assert!(a.contains("paper-report:"));
    }
}
