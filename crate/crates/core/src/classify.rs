//! Breadth, breadth types, the breadth classification cross-check and the
//! prediction of whether `w(L) = L'` from measured invariants.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gfp::Fp;
use crate::image::{commuting_generating_quad, noncentral_representatives, word_image, Budgets, QuadSearch};
use crate::liecore::LieAlgebra;
use crate::linalg::projective_points;

/// `rank(ad x)`.
pub fn breadth(l: &LieAlgebra, x: &[Fp]) -> Result<usize> {
    Ok(l.ad_matrix(x)?.rank(&l.field()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BreadthProfile {
    pub b_max: usize,
    /// Sorted breadths that occur; always contains 0.
    pub type_set: Vec<usize>,
    /// Projective classes of `L / Z(L)` per breadth; the central class is
    /// counted once under 0.
    pub counts: BTreeMap<usize, u64>,
}

impl BreadthProfile {
    pub fn has_type(&self, t: &[usize]) -> bool {
        self.type_set == t
    }
}

/// Exact breadth type from the projective points of a complement of `Z(L)`.
pub fn breadth_profile(l: &LieAlgebra, budget: u64) -> Result<BreadthProfile> {
    let reps = noncentral_representatives(l, budget)?;
    let f = l.field();
    let counts = reps
        .par_iter()
        .map(|x| {
            let mut m = BTreeMap::new();
            m.insert(l.ad_matrix(x).expect("length dim").rank(&f), 1u64);
            m
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        });
    let mut counts = counts;
    counts.insert(0, 1);
    let type_set: Vec<usize> = counts.keys().copied().collect();
    Ok(BreadthProfile {
        b_max: *type_set.last().expect("contains 0"),
        type_set,
        counts,
    })
}

/// Which clauses of the breadth 1/2/3 characterizations the invariants
/// satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BreadthClause {
    /// `dim L' = 1`, breadth 1.
    DerivedOne,
    /// `dim L' = 2`, breadth 2.
    DerivedTwo,
    /// `dim L' = 3` and `dim L/Z(L) = 3`, breadth 2.
    DerivedThreeCentralQuotientThree,
    /// `dim L' = 3` and `[L : Z(L)] >= 4`, breadth 3.
    DerivedThreeCentralQuotientFourPlus,
    /// `dim L' >= 4` and `[L : Z(L)] = 4`, breadth 3.
    DerivedFourPlusCentralQuotientFour,
    /// `dim L' = 4` and a central line `I` with `[L/I : Z(L/I)] = 3`, breadth 3.
    DerivedFourCentralLine,
}

impl BreadthClause {
    pub fn breadth(self) -> usize {
        match self {
            BreadthClause::DerivedOne => 1,
            BreadthClause::DerivedTwo | BreadthClause::DerivedThreeCentralQuotientThree => 2,
            _ => 3,
        }
    }
}

/// What the characterizations say about `b(L)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum ImpliedBreadth {
    Exact(usize),
    /// No clause fires, so `b(L)` is at least this.
    AtLeast(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BreadthClassification {
    pub measured: usize,
    pub derived_dim: usize,
    /// `[L : Z(L)]`.
    pub central_codim: usize,
    pub clauses: Vec<BreadthClause>,
    /// Central lines `I` with `[L/I : Z(L/I)] = 3` (searched only when
    /// `dim L' = 4`).
    pub central_lines: Vec<Vec<Fp>>,
    pub implied: ImpliedBreadth,
    pub consistent: bool,
}

/// Evaluates the clauses and checks them against the measured breadth.
pub fn classify_breadth(l: &LieAlgebra, budget: u64) -> Result<BreadthClassification> {
    l.nilpotency_class()?;
    let measured = breadth_profile(l, budget)?.b_max;
    let d = l.derived_subalgebra().dim();
    let center = l.center();
    let codim = l.dim() - center.dim();

    let mut clauses = Vec::new();
    match d {
        1 => clauses.push(BreadthClause::DerivedOne),
        2 => clauses.push(BreadthClause::DerivedTwo),
        3 if codim == 3 => clauses.push(BreadthClause::DerivedThreeCentralQuotientThree),
        3 if codim >= 4 => clauses.push(BreadthClause::DerivedThreeCentralQuotientFourPlus),
        _ => {}
    }
    if d >= 4 && codim == 4 {
        clauses.push(BreadthClause::DerivedFourPlusCentralQuotientFour);
    }
    let mut central_lines = Vec::new();
    if d == 4 {
        for c in projective_points(l.field(), center.dim()) {
            let z = center.combine(&c)?;
            let q = l.quotient(&l.span(std::slice::from_ref(&z))?)?.algebra;
            if q.dim() - q.center().dim() == 3 {
                central_lines.push(z);
            }
        }
        if !central_lines.is_empty() {
            clauses.push(BreadthClause::DerivedFourCentralLine);
        }
    }

    let implied = match (d, clauses.first()) {
        (0, _) => ImpliedBreadth::Exact(0),
        (_, Some(c)) => ImpliedBreadth::Exact(c.breadth()),
        // b(L) <= dim L' and no clause for 1, 2 or 3 fires
        (4, None) => ImpliedBreadth::Exact(4),
        (_, None) => ImpliedBreadth::AtLeast(4),
    };
    let consistent = match implied {
        ImpliedBreadth::Exact(b) => b == measured,
        ImpliedBreadth::AtLeast(b) => measured >= b,
    };
    Ok(BreadthClassification {
        measured,
        derived_dim: d,
        central_codim: codim,
        clauses,
        central_lines,
        implied,
        consistent,
    })
}

/// Which rule produced the prediction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    /// `dim L' <= 3`: always `w(L) = L'`.
    SmallDerived,
    /// `dim L' = 4`, see the branch.
    DerivedFour,
    /// `dim L' >= 5`: no prediction.
    OutOfScope,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// Some `ad x` is onto `L'`.
    BreadthFour,
    /// Class 5 without breadth 4; should never happen.
    FiveStep,
    FourStepDimSixCenterTwo,
    ThreeStepDimSevenCenterThree,
    /// Class 2, dim 8, breadth type (0,1,3) or (0,1,2,3).
    TwoStepDimEightWithBreadthOne,
    /// Class 2, dim 8, breadth type (0,2,3); decided by the quad search.
    TwoStepDimEightQuad,
    /// Any other shape with `dim L' = 4`.
    Other,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Prediction {
    Equal,
    NotEqual,
    NoPrediction,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BranchEvidence {
    pub class: usize,
    pub dim: usize,
    pub center_dim: usize,
    pub derived_dim: usize,
    pub stem_dim: usize,
    pub stem_center_dim: usize,
    pub abelian_dim: usize,
    pub breadth_type: Vec<usize>,
    pub quad: Option<QuadSearch>,
    /// The dimension branch that fires if breadth 4 is ignored; it must not
    /// predict `w != L'` when breadth is 4.
    pub shape_branch: Option<Branch>,
    pub inconsistencies: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremVerdict {
    pub rule: Rule,
    pub branch: Option<Branch>,
    pub predicted: Prediction,
    /// `None` only out of scope when the image exceeds the budget.
    pub computed_w_neq: Option<bool>,
    pub agree: bool,
    pub evidence: BranchEvidence,
}

impl TheoremVerdict {
    /// Agreement with no internal inconsistency.
    pub fn sound(&self) -> bool {
        self.agree && self.evidence.inconsistencies.is_empty()
    }
}

fn shape_branch(class: usize, dim: usize, center_dim: usize, breadth_type: &[usize]) -> Branch {
    match (class, dim, center_dim) {
        (5, _, _) => Branch::FiveStep,
        (4, 6, 2) => Branch::FourStepDimSixCenterTwo,
        (3, 7, 3) => Branch::ThreeStepDimSevenCenterThree,
        (2, 8, _) if breadth_type == [0, 1, 3] || breadth_type == [0, 1, 2, 3] => {
            Branch::TwoStepDimEightWithBreadthOne
        }
        (2, 8, _) if breadth_type == [0, 2, 3] => Branch::TwoStepDimEightQuad,
        _ => Branch::Other,
    }
}

/// Predicts `w(L) = L'` from the invariants of the stem part, then compares
/// with the computed image of `L`.
pub fn theorem_verdict(l: &LieAlgebra, budgets: &Budgets) -> Result<TheoremVerdict> {
    let class = l.nilpotency_class()?;
    let stem = l.stem_reduce()?;
    let s = &stem.stem;
    let derived_dim = l.derived_subalgebra().dim();
    let profile = breadth_profile(s, budgets.image)?;
    let stem_class = s.nilpotency_class()?;
    let stem_center_dim = s.center().dim();
    let mut evidence = BranchEvidence {
        class,
        dim: l.dim(),
        center_dim: l.center().dim(),
        derived_dim,
        stem_dim: s.dim(),
        stem_center_dim,
        abelian_dim: stem.abelian_dim,
        breadth_type: profile.type_set.clone(),
        quad: None,
        shape_branch: None,
        inconsistencies: Vec::new(),
    };

    let (rule, branch, predicted) = match derived_dim {
        0..=3 => (Rule::SmallDerived, None, Prediction::Equal),
        4 => {
            if profile.b_max < 3 {
                evidence
                    .inconsistencies
                    .push(format!("dim L' = 4 but b(L) = {}", profile.b_max));
            }
            let shape = shape_branch(stem_class, s.dim(), stem_center_dim, &profile.type_set);
            evidence.shape_branch = Some(shape);
            if shape == Branch::TwoStepDimEightQuad {
                evidence.quad = Some(commuting_generating_quad(s)?);
            }
            if profile.b_max == 4 {
                if !matches!(shape, Branch::Other | Branch::FiveStep) {
                    evidence
                        .inconsistencies
                        .push(format!("breadth 4 together with shape branch {shape:?}"));
                }
                (Rule::DerivedFour, Some(Branch::BreadthFour), Prediction::Equal)
            } else {
                let predicted = match shape {
                    Branch::FiveStep => {
                        evidence
                            .inconsistencies
                            .push("class 5 with dim L' = 4 but b(L) != 4".into());
                        Prediction::Equal
                    }
                    Branch::FourStepDimSixCenterTwo
                    | Branch::ThreeStepDimSevenCenterThree
                    | Branch::TwoStepDimEightWithBreadthOne => Prediction::NotEqual,
                    Branch::TwoStepDimEightQuad => match evidence.quad {
                        Some(QuadSearch::Found { .. }) => Prediction::Equal,
                        _ => Prediction::NotEqual,
                    },
                    _ => Prediction::Equal,
                };
                (Rule::DerivedFour, Some(shape), predicted)
            }
        }
        _ => (Rule::OutOfScope, None, Prediction::NoPrediction),
    };

    let computed_w_neq = match word_image(l, budgets) {
        Ok(img) => Some(!img.is_full()),
        Err(Error::EnumerationTooLarge { .. }) if rule == Rule::OutOfScope => None,
        Err(e) => return Err(e),
    };
    let agree = match predicted {
        Prediction::NoPrediction => true,
        Prediction::Equal => computed_w_neq == Some(false),
        Prediction::NotEqual => computed_w_neq == Some(true),
    };
    Ok(TheoremVerdict {
        rule,
        branch,
        predicted,
        computed_w_neq,
        agree,
        evidence,
    })
}
