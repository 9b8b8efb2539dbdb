//! Closed-form constructions for the Backelin, Bresinsky and Arslan curve
//! families.

pub mod arslan;
pub mod assembly;
pub mod backelin;
pub mod bresinsky;

use serde::{Serialize, Serializer};

use crate::error::Result;
use crate::poly::Polynomial;
use crate::resolution::{FreeComplex, MatrixJson, MinorSpec, PolynomialMatrix};

pub use arslan::{arslan_system, ArslanInstance};
pub use assembly::{Diagnostic, DiagnosticKind, MatrixAssembler};
pub use backelin::{backelin_hilbert_formula, backelin_hilbert_statement, backelin_system, BackelinInstance};
pub use bresinsky::{bresinsky_system, BresinskyInstance};

/// A polynomial with its conventional name, e.g. `f2,1` or `p4,3`.
#[derive(Clone, Debug, PartialEq)]
pub struct Labeled {
    pub label: String,
    pub poly: Polynomial,
}

impl Labeled {
    pub fn new(label: impl Into<String>, poly: Polynomial) -> Self {
        Labeled { label: label.into(), poly }
    }
}

impl Serialize for Labeled {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Labeled", 2)?;
        st.serialize_field("label", &self.label)?;
        st.serialize_field("poly", &self.poly.to_string())?;
        st.end()
    }
}

pub fn polys(items: &[Labeled]) -> Vec<Polynomial> {
    items.iter().map(|l| l.poly.clone()).collect()
}

/// A family's stated resolution: differentials as assembled from the entry
/// rules, grade certificates per level, and assembly diagnostics.
#[derive(Clone, Debug)]
pub struct FamilyComplex {
    pub complex: FreeComplex,
    pub certificates: Vec<Vec<MinorSpec>>,
    pub diagnostics: Vec<Diagnostic>,
}

/// How a displayed minor compares with the computed one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MinorAgreement {
    Equal,
    Negated,
    Differs,
}

#[derive(Clone, Debug, Serialize)]
pub struct MinorComparison {
    pub label: String,
    pub stated: String,
    pub computed: String,
    pub agreement: MinorAgreement,
}

/// Compares displayed minor values against direct determinants of `m`.
pub fn compare_minors(
    levels: &[(&PolynomialMatrix, &[MinorSpec])],
    stated: &[(String, Polynomial)],
) -> Result<Vec<MinorComparison>> {
    let mut out = Vec::new();
    for (label, value) in stated {
        let Some((m, spec)) = levels
            .iter()
            .find_map(|(m, specs)| specs.iter().find(|s| &s.label == label).map(|s| (*m, s)))
        else {
            continue;
        };
        let computed = spec.evaluate(m)?;
        let agreement = if &computed == value {
            MinorAgreement::Equal
        } else if computed == value.neg() {
            MinorAgreement::Negated
        } else {
            MinorAgreement::Differs
        };
        out.push(MinorComparison {
            label: label.clone(),
            stated: value.to_string(),
            computed: computed.to_string(),
            agreement,
        });
    }
    Ok(out)
}

/// Serialized family instance.
#[derive(Clone, Debug, Serialize)]
pub struct InstanceJson {
    pub family: String,
    pub exponents: Vec<u64>,
    pub generators: Vec<Labeled>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub groebner_basis: Vec<Labeled>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub matrices: Vec<MatrixJson>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub diagnostics: Vec<Diagnostic>,
}
