//! A complete case: algebra, class automorphism, grading and invariant data.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::autgrade::{
    grading, invariant_cartan_basis, invariant_subalgebra, lambda_from_xi, AutError, ClassSelector,
    DiagramAutomorphism, Grading, InvariantCartan, InvariantSubalgebra, LieAutomorphism,
};
use crate::chevalley::LieAlgebra;
use crate::rootsys::{RootDatum, RootType};

/// Identifier of a case: type, rank and class selector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseId {
    /// Type letter `A`, `B`, `C`, `D`, `E6`, `E7`.
    #[serde(rename = "type")]
    pub kind: String,
    /// Rank.
    pub rank: usize,
    /// Class selector (`trivial`, `wn`, `w1`, `p2`, …).
    pub class: String,
}

impl CaseId {
    /// Convenience constructor.
    pub fn new(kind: &str, rank: usize, class: &str) -> Self {
        Self {
            kind: kind.to_string(),
            rank,
            class: class.to_string(),
        }
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.kind.as_str() {
            "E6" | "E7" => self.kind.clone(),
            k => format!("{k}{}", self.rank),
        };
        write!(f, "{name}/{}", self.class)
    }
}

/// Everything derived from a [`CaseId`].
#[derive(Debug, Clone)]
pub struct Case {
    /// Identifier.
    pub id: CaseId,
    /// Chevalley basis.
    pub algebra: LieAlgebra,
    /// Class selector.
    pub selector: ClassSelector,
    /// Diagram automorphism `λ` (identity for the trivial class).
    pub lambda: DiagramAutomorphism,
    /// Lift `σ` of `λ` to the algebra.
    pub sigma: LieAutomorphism,
    /// Grading by `σ`.
    pub grading: Grading,
    /// Invariant subalgebra `g̃₀`.
    pub invariant: InvariantSubalgebra,
    /// Invariant Cartan subalgebra.
    pub cartan: InvariantCartan,
}

/// The cases covered by the Lax/Hamiltonian suite.
pub fn lax_cases() -> Vec<CaseId> {
    let mut v = vec![
        CaseId::new("A", 2, "trivial"),
        CaseId::new("A", 3, "p2"),
        CaseId::new("A", 5, "p3"),
        CaseId::new("A", 5, "p2"),
    ];
    for n in [2, 3] {
        v.push(CaseId::new("B", n, "trivial"));
        v.push(CaseId::new("B", n, "w1"));
    }
    for n in [4, 5] {
        v.push(CaseId::new("C", n, "trivial"));
        v.push(CaseId::new("C", n, "wn"));
    }
    for n in [4, 5] {
        v.push(CaseId::new("D", n, "wn"));
        v.push(CaseId::new("D", n, "w1"));
    }
    v.push(CaseId::new("E6", 6, "trivial"));
    v.push(CaseId::new("E6", 6, "w1"));
    v.push(CaseId::new("E7", 7, "trivial"));
    v.push(CaseId::new("E7", 7, "w7"));
    v
}

/// Errors while assembling a case.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CaseError {
    /// Automorphism/selector failure.
    #[error(transparent)]
    Aut(#[from] AutError),
    /// Root data failure.
    #[error(transparent)]
    Root(#[from] crate::rootsys::RootError),
}

impl Case {
    /// Build a case from its identifier.
    pub fn new(id: &CaseId) -> Result<Self, CaseError> {
        let kind: RootType = id.kind.parse()?;
        let datum = RootDatum::new(kind, id.rank)?;
        let selector: ClassSelector = id.class.parse()?;
        let lambda = lambda_from_xi(&datum, &selector)?;
        let algebra = LieAlgebra::new(datum);
        let sigma = if lambda.order == 1 {
            LieAutomorphism::identity(&algebra)
        } else {
            LieAutomorphism::standard(&algebra, &lambda)
        };
        let grading = grading(&algebra, &lambda, &sigma);
        let invariant = invariant_subalgebra(&algebra, &lambda, &grading);
        let cartan = invariant_cartan_basis(&algebra.datum, &lambda);
        Ok(Self {
            id: id.clone(),
            algebra,
            selector,
            lambda,
            sigma,
            grading,
            invariant,
            cartan,
        })
    }

    /// Convenience constructor from parts.
    pub fn from_parts(kind: &str, rank: usize, class: &str) -> Result<Self, CaseError> {
        Self::new(&CaseId::new(kind, rank, class))
    }

    /// Order `l` of the class.
    pub fn order(&self) -> usize {
        self.lambda.order
    }

    /// Whether the class is trivial.
    pub fn is_trivial(&self) -> bool {
        self.lambda.order == 1
    }

    /// Root type.
    pub fn kind(&self) -> RootType {
        self.algebra.datum.kind
    }
}
