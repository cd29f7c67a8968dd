//! Soundness classification: which extraction algorithm is exact for
//! which task on a given semiring.
//!
//! The matrix has four rows. Single-solution and partial-set extraction
//! are guaranteed on every commutative selective semiring. Complete
//! extraction by subtree extension is guaranteed exactly when the
//! semiring is weakly multiplicatively cancellative. Complete extraction
//! from global projections is guaranteed when the semiring is
//! square-multiplicatively-cancellative on the image of `mul`, and is
//! known unsound when the square-order condition fails; between those
//! two conditions the verdict is inconclusive.

use std::fmt;

use super::props::{
    check_selective, check_semiring_axioms, check_square_mult_cancellative_on_image,
    check_square_ordered, check_weakly_mult_cancellative, CheckOptions, PropertyName, Verdict,
    Witness,
};
use super::{Semiring, SemiringError};

#[derive(Debug, Clone)]
pub enum ClassifyError {
    /// The semiring is not selective; solution extraction is undefined.
    NotSelective {
        witness: Option<Witness>,
    },
    /// Epsilon-equality carriers are excluded from classification.
    EpsilonExcluded,
    /// A semiring axiom fails; classification would be meaningless.
    InvalidSemiring {
        property: PropertyName,
        witness: Option<Witness>,
    },
    Semiring(SemiringError),
}

impl fmt::Display for ClassifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassifyError::NotSelective { .. } => {
                write!(
                    f,
                    "semiring is not selective; solution tasks are undefined on it"
                )
            }
            ClassifyError::EpsilonExcluded => {
                write!(
                    f,
                    "epsilon-equality semirings are excluded from soundness classification"
                )
            }
            ClassifyError::InvalidSemiring { property, .. } => {
                write!(f, "semiring axiom {property} fails")
            }
            ClassifyError::Semiring(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for ClassifyError {}

impl From<SemiringError> for ClassifyError {
    fn from(e: SemiringError) -> Self {
        ClassifyError::Semiring(e)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    /// Completion against global projections, node by node.
    ExtendToGlobalProjection,
    /// Completion against updated subtree potentials.
    ExtendToSubtree,
    /// Single completion against updated subtree potentials.
    SingleExtendToSubtree,
}

impl Algorithm {
    pub fn short(&self) -> &'static str {
        match self {
            Algorithm::ExtendToGlobalProjection => "egp",
            Algorithm::ExtendToSubtree => "ets",
            Algorithm::SingleExtendToSubtree => "sets",
        }
    }
}

/// The task a matrix row speaks about.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TaskKind {
    Single,
    Partial,
    Complete,
}

impl TaskKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            TaskKind::Single => "single",
            TaskKind::Partial => "partial",
            TaskKind::Complete => "complete",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Soundness {
    Guaranteed,
    NotGuaranteed,
    /// The deciding property was only sampled, never proven.
    UnknownSampled,
    /// The sufficient condition fails but the necessary one holds.
    UnknownGap,
}

impl Soundness {
    pub fn as_str(&self) -> &'static str {
        match self {
            Soundness::Guaranteed => "guaranteed",
            Soundness::NotGuaranteed => "not-guaranteed",
            Soundness::UnknownSampled => "unknown (not falsified by sampling)",
            Soundness::UnknownGap => "unknown (between necessary and sufficient conditions)",
        }
    }

    /// Whether an algorithm with this verdict may be dispatched as if
    /// sound, with the sampled caveat carried in the annotation.
    pub fn usable(&self) -> bool {
        matches!(self, Soundness::Guaranteed | Soundness::UnknownSampled)
    }
}

#[derive(Debug, Clone)]
pub struct MatrixEntry {
    pub algorithm: Algorithm,
    pub task: TaskKind,
    pub verdict: Soundness,
    /// The property verdicts the row was derived from.
    pub evidence: Vec<(PropertyName, Verdict)>,
}

impl MatrixEntry {
    pub fn format(&self, s: &Semiring) -> String {
        let evidence = self
            .evidence
            .iter()
            .map(|(p, v)| match v {
                Verdict::Holds => format!("{p}: holds"),
                Verdict::NotFalsified => format!("{p}: not falsified"),
                Verdict::Fails(w) => format!("{p}: fails witness {}", w.format(s)),
            })
            .collect::<Vec<_>>()
            .join("; ");
        format!(
            "{}/{}: {} [{}]",
            self.task.as_str(),
            self.algorithm.short(),
            self.verdict.as_str(),
            evidence
        )
    }
}

/// Per-algorithm, per-task soundness verdicts for one semiring.
#[derive(Debug, Clone)]
pub struct SoundnessMatrix {
    pub semiring_name: String,
    pub entries: Vec<MatrixEntry>,
}

impl SoundnessMatrix {
    pub fn entry(&self, algorithm: Algorithm, task: TaskKind) -> &MatrixEntry {
        self.entries
            .iter()
            .find(|e| e.algorithm == algorithm && e.task == task)
            .expect("matrix has all four rows")
    }

    pub fn format(&self, s: &Semiring) -> String {
        let mut out = String::new();
        for e in &self.entries {
            out.push_str(&e.format(s));
            out.push('\n');
        }
        out
    }
}

/// Builds the soundness matrix for a semiring. Refuses carriers that are
/// not selective, fail an axiom, or use epsilon equality.
pub fn classify(s: &Semiring, opts: &CheckOptions) -> Result<SoundnessMatrix, ClassifyError> {
    if s.uses_epsilon_eq() {
        return Err(ClassifyError::EpsilonExcluded);
    }
    let axioms = check_semiring_axioms(s, opts)?;
    if let Some(bad) = axioms.first_failure() {
        return Err(ClassifyError::InvalidSemiring {
            property: bad.property,
            witness: bad.verdict.witness().cloned(),
        });
    }

    // The built-in additions return one of their operands structurally;
    // only table semirings need the scan.
    let selective = if s.table_data().is_some() {
        check_selective(s, opts)?.checks[0].verdict.clone()
    } else {
        Verdict::Holds
    };
    if let Verdict::Fails(w) = &selective {
        return Err(ClassifyError::NotSelective {
            witness: Some(w.clone()),
        });
    }

    let weakly = check_weakly_mult_cancellative(s, opts)?.checks[0]
        .verdict
        .clone();
    let sqc = check_square_mult_cancellative_on_image(s, opts)?.checks[0]
        .verdict
        .clone();
    let sqord = check_square_ordered(s, opts)?.checks[0].verdict.clone();

    let ets_complete = match &weakly {
        Verdict::Holds => Soundness::Guaranteed,
        Verdict::NotFalsified => Soundness::UnknownSampled,
        Verdict::Fails(_) => Soundness::NotGuaranteed,
    };
    let (egp_verdict, egp_evidence) = match (&sqc, &sqord) {
        (Verdict::Holds, _) => (
            Soundness::Guaranteed,
            vec![(PropertyName::SquareMultCancellativeOnImage, sqc.clone())],
        ),
        (Verdict::NotFalsified, _) => (
            Soundness::UnknownSampled,
            vec![(PropertyName::SquareMultCancellativeOnImage, sqc.clone())],
        ),
        (Verdict::Fails(_), Verdict::Fails(_)) => (
            Soundness::NotGuaranteed,
            vec![
                (PropertyName::SquareMultCancellativeOnImage, sqc.clone()),
                (PropertyName::SquareOrdered, sqord.clone()),
            ],
        ),
        (Verdict::Fails(_), _) => (
            Soundness::UnknownGap,
            vec![
                (PropertyName::SquareMultCancellativeOnImage, sqc.clone()),
                (PropertyName::SquareOrdered, sqord.clone()),
            ],
        ),
    };

    let entries = vec![
        MatrixEntry {
            algorithm: Algorithm::SingleExtendToSubtree,
            task: TaskKind::Single,
            verdict: Soundness::Guaranteed,
            evidence: vec![(PropertyName::Selective, selective.clone())],
        },
        MatrixEntry {
            algorithm: Algorithm::ExtendToSubtree,
            task: TaskKind::Partial,
            verdict: Soundness::Guaranteed,
            evidence: vec![(PropertyName::Selective, selective.clone())],
        },
        MatrixEntry {
            algorithm: Algorithm::ExtendToSubtree,
            task: TaskKind::Complete,
            verdict: ets_complete,
            evidence: vec![(PropertyName::WeaklyMultCancellative, weakly)],
        },
        MatrixEntry {
            algorithm: Algorithm::ExtendToGlobalProjection,
            task: TaskKind::Complete,
            verdict: egp_verdict,
            evidence: egp_evidence,
        },
    ];
    Ok(SoundnessMatrix {
        semiring_name: s.name(),
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semiring::TableData;

    fn opts() -> CheckOptions {
        CheckOptions::default()
    }

    #[test]
    fn counter3_matrix() {
        let s = Semiring::counter3();
        let m = classify(&s, &opts()).unwrap();
        assert_eq!(
            m.entry(Algorithm::SingleExtendToSubtree, TaskKind::Single)
                .verdict,
            Soundness::Guaranteed
        );
        assert_eq!(
            m.entry(Algorithm::ExtendToSubtree, TaskKind::Partial)
                .verdict,
            Soundness::Guaranteed
        );
        assert_eq!(
            m.entry(Algorithm::ExtendToSubtree, TaskKind::Complete)
                .verdict,
            Soundness::NotGuaranteed
        );
        assert_eq!(
            m.entry(Algorithm::ExtendToGlobalProjection, TaskKind::Complete)
                .verdict,
            Soundness::NotGuaranteed
        );
    }

    #[test]
    fn boolean_matrix_all_guaranteed() {
        let m = classify(&Semiring::boolean(), &opts()).unwrap();
        assert!(m.entries.iter().all(|e| e.verdict == Soundness::Guaranteed));
    }

    #[test]
    fn maxplus_matrix_guaranteed_or_sampled() {
        let m = classify(&Semiring::maxplus(), &opts()).unwrap();
        for e in &m.entries {
            assert!(
                matches!(e.verdict, Soundness::Guaranteed | Soundness::UnknownSampled),
                "{:?}",
                e
            );
        }
    }

    #[test]
    fn maxmin_complete_rows() {
        let m = classify(&Semiring::maxmin(3).unwrap(), &opts()).unwrap();
        assert_eq!(
            m.entry(Algorithm::ExtendToSubtree, TaskKind::Complete)
                .verdict,
            Soundness::NotGuaranteed
        );
        assert_eq!(
            m.entry(Algorithm::ExtendToGlobalProjection, TaskKind::Complete)
                .verdict,
            Soundness::UnknownGap
        );
    }

    #[test]
    fn non_selective_semiring_refused() {
        let z3 = Semiring::table(TableData {
            name: Some("z3".into()),
            elements: vec!["0".into(), "1".into(), "2".into()],
            zero: 0,
            one: 1,
            add: vec![0, 1, 2, 1, 2, 0, 2, 0, 1],
            mul: vec![0, 0, 0, 0, 1, 2, 0, 2, 1],
        })
        .unwrap();
        assert!(matches!(
            classify(&z3, &opts()),
            Err(ClassifyError::NotSelective { witness: Some(_) })
        ));
    }

    #[test]
    fn epsilon_semiring_refused() {
        let s = Semiring::maxplus_real(1e-9).unwrap();
        assert!(matches!(
            classify(&s, &opts()),
            Err(ClassifyError::EpsilonExcluded)
        ));
    }

    #[test]
    fn invalid_table_refused() {
        let mut data = Semiring::counter3().table_data().unwrap().clone();
        data.mul[2 * 4 + 3] = 2;
        let s = Semiring::table_unchecked(data);
        assert!(matches!(
            classify(&s, &opts()),
            Err(ClassifyError::InvalidSemiring { .. })
        ));
    }
}
