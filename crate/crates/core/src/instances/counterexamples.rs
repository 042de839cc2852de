//! The two pointed-set counterexamples, replayed from the bundled fixtures.

use serde::{Deserialize, Serialize};

use super::pointed::{FinPointedSet, PointedMap};
use crate::category::{
    audit_checks, classify_strictness, Audit, AuditBounds, AuditReport, Axiom, Category,
    CategoryError, CheckResult, Expectation, Strictness, Verdict, Witness,
};
use crate::exec::Exec;

pub const PULLBACK_NONSTRICT: &str = include_str!("../../fixtures/pullback_nonstrict.json");
pub const RIGHT_OBSCURE: &str = include_str!("../../fixtures/right_obscure.json");

/// `f: X → Y` and `g` as stored in a fixture file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Fixture {
    pub name: String,
    pub description: String,
    pub f: PointedMap,
    pub g: PointedMap,
}

impl Fixture {
    pub fn parse(text: &str) -> Result<Fixture, CategoryError> {
        serde_json::from_str(text).map_err(|e| CategoryError::Invalid(e.to_string()))
    }
}

/// How one map of a counterexample classifies.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CaseDetail {
    pub case: String,
    pub role: String,
    pub map: PointedMap,
    pub surjective: bool,
    /// From the closed-form predicate.
    pub closed_form: Strictness,
    /// From kernels, cokernels and the iso test.
    pub from_kernels: Strictness,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CounterexampleReport {
    pub report: AuditReport,
    pub cases: Vec<CaseDetail>,
}

impl CounterexampleReport {
    /// Every check met its recorded expectation, and the two strictness
    /// computations agree on every map.
    pub fn as_expected(&self) -> bool {
        self.report.expectations_met() && self.cases.iter().all(|c| c.closed_form == c.from_kernels)
    }
}

fn detail(
    c: &FinPointedSet,
    case: &str,
    role: &str,
    f: &PointedMap,
) -> Result<CaseDetail, CategoryError> {
    Ok(CaseDetail {
        case: case.into(),
        role: role.into(),
        map: f.clone(),
        surjective: f.is_surjective(),
        closed_form: super::pointed::pointed_strictness(f),
        from_kernels: classify_strictness(&FinPointedSet::generic(c.max_size), f)?,
    })
}

/// Replays both fixtures and audits the left obscure axiom exhaustively on
/// pointed sets with at most `max_size` non-base elements.
pub fn counterexample_suite(
    max_size: usize,
    exec: &Exec,
) -> Result<CounterexampleReport, CategoryError> {
    let c = FinPointedSet::new(max_size);
    let mut checks = Vec::new();
    let mut cases = Vec::new();

    // Pulling back one strict epi along another.
    let fx = Fixture::parse(PULLBACK_NONSTRICT)?;
    let (_, f_prime) = c.pullback(&fx.f, &fx.g)?;
    let premise = c.is_admissible_epi(&fx.f)? && c.is_admissible_epi(&fx.g)?;
    let violated = premise && !c.is_admissible_epi(&f_prime)?;
    checks.push(CheckResult {
        axiom: Axiom::EpiPullbackTotal,
        verdict: if violated {
            Verdict::Fail {
                witness: Witness::new(
                    Axiom::EpiPullbackTotal,
                    &[("e", &fx.f), ("g", &fx.g), ("e_prime", &f_prime)],
                ),
            }
        } else {
            Verdict::Pass
        },
        diagrams_checked: 1,
        expectation: Some(Expectation::Fail),
    });
    cases.push(detail(&c, &fx.name, "f", &fx.f)?);
    cases.push(detail(&c, &fx.name, "g", &fx.g)?);
    cases.push(detail(&c, &fx.name, "f_prime", &f_prime)?);

    // A retraction that is not a strict epi.
    let fx = Fixture::parse(RIGHT_OBSCURE)?;
    let gf = c.compose(&fx.g, &fx.f)?;
    let violated = gf == c.identity(&fx.f.source()) && !c.is_admissible_epi(&fx.g)?;
    for axiom in [Axiom::RightObscure, Axiom::StrongRightObscure] {
        checks.push(CheckResult {
            axiom,
            verdict: if violated {
                Verdict::Fail {
                    witness: Witness::new(axiom, &[("j", &fx.f), ("e", &fx.g)]),
                }
            } else {
                Verdict::Pass
            },
            diagrams_checked: 1,
            expectation: Some(Expectation::Fail),
        });
    }
    cases.push(detail(&c, &fx.name, "f", &fx.f)?);
    cases.push(detail(&c, &fx.name, "g", &fx.g)?);

    let audit = Audit {
        category: &c,
        bounds: AuditBounds::default(),
        exec: exec.clone(),
    };
    let mut left = audit_checks(&audit, None, &[Axiom::LeftObscure])?;
    left.expect(&[(Axiom::LeftObscure, Expectation::Pass)]);
    checks.extend(left.checks);

    let report = AuditReport {
        instance: c.name(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        mode: "replay".into(),
        bounds: c.describe_bounds(),
        checks,
    };
    Ok(CounterexampleReport { report, cases })
}
