//! Certifying that a presentation defines a given transformation monoid.
//!
//! If the assigned generators satisfy every relation, the words-to-maps
//! evaluation factors through `X*/~R` and maps it onto the target. A finite
//! quotient of exactly the target's size is then isomorphic to it.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{standard_generators, EndoClass};
use crate::monoid::{is_generating_set, Assignment, TransformationMonoid};
use crate::transform::Transformation;

use super::todd_coxeter::{enumerate_quotient_with, QuotientOptions, QuotientOutcome};
use super::Presentation;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationCheck {
    pub satisfied: bool,
    /// Indices of the relations that fail under the assignment.
    pub failing: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Verified,
    RefutedRelations,
    RefutedSize,
    InconclusiveBudget,
}

impl Verdict {
    pub fn label(self) -> &'static str {
        match self {
            Verdict::Verified => "verified",
            Verdict::RefutedRelations => "refuted-relations",
            Verdict::RefutedSize => "refuted-size",
            Verdict::InconclusiveBudget => "inconclusive-budget",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum QuotientSize {
    Exact { size: usize },
    /// Enumeration stopped before completing.
    Exceeded { classes_reached: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub presentation_id: String,
    pub target_id: String,
    pub relations_satisfied: bool,
    pub failing_relations: Vec<String>,
    pub quotient_size: QuotientSize,
    pub target_size: usize,
    pub verdict: Verdict,
    /// For a verified report: evaluating class representatives gives a
    /// bijection onto the target that commutes with every generator.
    pub isomorphism_checked: bool,
    pub soundness: String,
}

/// The standard generators of the star graph monoid as a letter assignment.
pub fn standard_assignment(n: usize, class: EndoClass) -> Result<Assignment> {
    Ok(standard_generators(n, class)?.into_iter().collect())
}

fn check_letters(assignment: &Assignment, presentation: &Presentation) -> Result<()> {
    for letter in presentation.alphabet() {
        if !assignment.contains_key(letter) {
            return Err(Error::UnassignedLetter(letter.clone()));
        }
    }
    Ok(())
}

fn evaluate(assignment: &Assignment, presentation: &Presentation, word: &[usize], degree: usize) -> Result<Transformation> {
    let mut acc = Transformation::identity(degree)?;
    for &x in word {
        acc = acc.compose(&assignment[&presentation.alphabet()[x]])?;
    }
    Ok(acc)
}

fn degree_of(assignment: &Assignment) -> Option<usize> {
    assignment.values().next().map(Transformation::degree)
}

/// Evaluates both sides of every relation under the assignment.
pub fn satisfies_relations(assignment: &Assignment, presentation: &Presentation) -> Result<RelationCheck> {
    check_letters(assignment, presentation)?;
    let Some(degree) = degree_of(assignment) else {
        // only possible with an empty alphabet: every relation is 1 = 1
        return Ok(RelationCheck {
            satisfied: true,
            failing: Vec::new(),
        });
    };
    let mut failing = Vec::new();
    for (i, (u, v)) in presentation.relations().iter().enumerate() {
        if evaluate(assignment, presentation, u, degree)? != evaluate(assignment, presentation, v, degree)? {
            failing.push(i);
        }
    }
    Ok(RelationCheck {
        satisfied: failing.is_empty(),
        failing,
    })
}

pub fn verify_presentation(
    presentation: &Presentation,
    target: &TransformationMonoid,
    assignment: &Assignment,
) -> Result<VerificationReport> {
    verify_presentation_with(
        presentation,
        target,
        assignment,
        &QuotientOptions::new(target.len()),
        ("presentation", "target"),
    )
}

/// Full check of `presentation` against `target`. `ids` name the
/// presentation and the target in the report.
pub fn verify_presentation_with(
    presentation: &Presentation,
    target: &TransformationMonoid,
    assignment: &Assignment,
    options: &QuotientOptions,
    ids: (&str, &str),
) -> Result<VerificationReport> {
    check_letters(assignment, presentation)?;
    let images: Vec<Transformation> = presentation
        .alphabet()
        .iter()
        .map(|l| assignment[l].clone())
        .collect();
    if !is_generating_set(target, &images)? {
        return Err(Error::NotGenerating);
    }

    let relations = satisfies_relations(assignment, presentation)?;
    let options = QuotientOptions {
        bound: target.len(),
        ..*options
    };
    let outcome = enumerate_quotient_with(presentation, &options);
    let quotient_size = match &outcome {
        QuotientOutcome::Complete(t) => QuotientSize::Exact { size: t.size() },
        QuotientOutcome::Exceeded(e) if e.complete => QuotientSize::Exact {
            size: e.classes_reached,
        },
        QuotientOutcome::Exceeded(e) => QuotientSize::Exceeded {
            classes_reached: e.classes_reached,
        },
    };

    let verdict = if !relations.satisfied {
        Verdict::RefutedRelations
    } else {
        match quotient_size {
            QuotientSize::Exact { size } if size == target.len() => Verdict::Verified,
            QuotientSize::Exact { .. } => Verdict::RefutedSize,
            QuotientSize::Exceeded { .. } => Verdict::InconclusiveBudget,
        }
    };

    let isomorphism_checked = match (&outcome, verdict) {
        (QuotientOutcome::Complete(table), Verdict::Verified) => {
            let degree = target.degree();
            let values = table
                .representatives()
                .iter()
                .map(|w| evaluate(assignment, presentation, w, degree))
                .collect::<Result<Vec<_>>>()?;
            let bijective = {
                let mut seen = std::collections::HashSet::new();
                values.iter().all(|v| target.contains(v) && seen.insert(v))
            };
            let commutes = (0..table.size()).all(|q| {
                images
                    .iter()
                    .enumerate()
                    .all(|(x, g)| values[table.multiply(q, x)] == values[q].then(g))
            });
            bijective && commutes
        }
        _ => false,
    };

    let soundness = match verdict {
        Verdict::Verified => format!(
            "generators satisfy all {} relations, so X*/~R maps onto the target; both have {} elements, so the map is an isomorphism",
            presentation.relations().len(),
            target.len()
        ),
        Verdict::RefutedRelations => format!(
            "{} relation(s) fail under the assignment",
            relations.failing.len()
        ),
        Verdict::RefutedSize => "the quotient is finite and its size differs from the target's".to_string(),
        Verdict::InconclusiveBudget => {
            "quotient enumeration ran out of working space before completing".to_string()
        }
    };

    Ok(VerificationReport {
        presentation_id: ids.0.to_string(),
        target_id: ids.1.to_string(),
        relations_satisfied: relations.satisfied,
        failing_relations: relations
            .failing
            .iter()
            .map(|&i| presentation.spell_relation(i))
            .collect(),
        quotient_size,
        target_size: target.len(),
        verdict,
        isomorphism_checked,
        soundness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::enumerate_class;
    use crate::presentation::{end_star_presentation, swend_star_presentation, sym_presentation};

    #[test]
    fn standard_assignment_satisfies_end_relations() {
        let a = standard_assignment(4, EndoClass::End).unwrap();
        let check = satisfies_relations(&a, &end_star_presentation(4).unwrap()).unwrap();
        assert!(check.satisfied, "{:?}", check.failing);
    }

    #[test]
    fn swapping_z_and_z0_breaks_relations() {
        let mut a = standard_assignment(4, EndoClass::StrongWeakEnd).unwrap();
        let z = a["z"].clone();
        let z0 = a["z0"].clone();
        a.insert("z".into(), z0);
        a.insert("z0".into(), z);
        let p = swend_star_presentation(4).unwrap();
        let check = satisfies_relations(&a, &p).unwrap();
        assert!(!check.satisfied);
        let failing: Vec<String> = check.failing.iter().map(|&i| p.spell_relation(i)).collect();
        assert!(failing.contains(&"z z = e0 b0 e0".to_string()), "{failing:?}");
    }

    #[test]
    fn empty_relation_list_is_always_satisfied() {
        let p = Presentation::new(["x"]).unwrap();
        let a: Assignment = [("x".to_string(), Transformation::new(vec![1, 0]).unwrap())].into();
        assert!(satisfies_relations(&a, &p).unwrap().satisfied);
        assert_eq!(
            satisfies_relations(&Assignment::new(), &p).unwrap_err(),
            Error::UnassignedLetter("x".into())
        );
    }

    #[test]
    fn verifies_end_s4() {
        let target = enumerate_class(4, EndoClass::End).unwrap();
        let report = verify_presentation(
            &end_star_presentation(4).unwrap(),
            &target,
            &standard_assignment(4, EndoClass::End).unwrap(),
        )
        .unwrap();
        assert_eq!(report.verdict, Verdict::Verified);
        assert_eq!(report.quotient_size, QuotientSize::Exact { size: 30 });
        assert!(report.isomorphism_checked);
    }

    #[test]
    fn automorphism_group_as_symmetric_group() {
        let aut = enumerate_class(4, EndoClass::Aut).unwrap();
        let p = sym_presentation(3).unwrap().relabel(&[("a", "a0"), ("b", "b0")]).unwrap();
        let a: Assignment = [
            ("a0".to_string(), crate::graph::generators::a0(4).unwrap()),
            ("b0".to_string(), crate::graph::generators::b0(4).unwrap()),
        ]
        .into();
        let report = verify_presentation(&p, &aut, &a).unwrap();
        assert_eq!(report.verdict, Verdict::Verified);
    }

    #[test]
    fn missing_generators_are_a_precondition_error() {
        let target = enumerate_class(4, EndoClass::WeakEnd).unwrap();
        let err = verify_presentation(
            &end_star_presentation(4).unwrap(),
            &target,
            &standard_assignment(4, EndoClass::End).unwrap(),
        )
        .unwrap_err();
        assert_eq!(err, Error::NotGenerating);
    }

    #[test]
    fn weaker_presentation_of_a_finite_group_is_refuted_by_size() {
        // (2,3,4) triangle group: Sym(4), which maps onto Sym(3)
        let aut = enumerate_class(4, EndoClass::Aut).unwrap();
        let mut p = Presentation::new(["a0", "b0"]).unwrap();
        p.relate("a0^2", "1").unwrap();
        p.relate("b0^3", "1").unwrap();
        p.relate("(b0 a0)^4", "1").unwrap();
        let a: Assignment = [
            ("a0".to_string(), crate::graph::generators::a0(4).unwrap()),
            ("b0".to_string(), crate::graph::generators::b0(4).unwrap()),
        ]
        .into();
        let report = verify_presentation(&p, &aut, &a).unwrap();
        assert_eq!(report.verdict, Verdict::RefutedSize);
        assert_eq!(report.quotient_size, QuotientSize::Exact { size: 24 });
    }
}
