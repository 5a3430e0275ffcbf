use super::Diagram;
use crate::link::{is_trivial_unlink, resolve, Label, TrivialityBudget, TrivialityVerdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Validity {
    ValidMarkedGraph,
    NotValid,
    Unknown,
}

impl Validity {
    pub fn name(self) -> &'static str {
        match self {
            Validity::ValidMarkedGraph => "valid",
            Validity::NotValid => "not-valid",
            Validity::Unknown => "unknown",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ValidationReport {
    pub structural_ok: bool,
    pub a: TrivialityVerdict,
    pub b: TrivialityVerdict,
    pub overall: Validity,
}

impl ValidationReport {
    pub fn verdict(&self, label: Label) -> &TrivialityVerdict {
        match label {
            Label::A => &self.a,
            Label::B => &self.b,
        }
    }
}

/// Runs the unlink oracle on both resolutions. A built [`Diagram`] has
/// already passed the structural checks.
pub fn validate(d: &Diagram, budget: &TrivialityBudget) -> ValidationReport {
    let a = is_trivial_unlink(&resolve(d, Label::A), budget);
    let b = is_trivial_unlink(&resolve(d, Label::B), budget);
    let overall = if a.is_nontrivial() || b.is_nontrivial() {
        Validity::NotValid
    } else if a.is_trivial() && b.is_trivial() {
        Validity::ValidMarkedGraph
    } else {
        Validity::Unknown
    };
    ValidationReport {
        structural_ok: true,
        a,
        b,
        overall,
    }
}
