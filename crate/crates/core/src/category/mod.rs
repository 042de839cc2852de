//! The pointed-category contract and generic machinery on top of it.

mod audit;
mod lifting;
mod strictness;

use std::fmt::Debug;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

pub use audit::{
    audit_axioms, audit_checks, audit_obscure, replay_witness, Audit, AuditBounds, AuditReport,
    Axiom, CheckResult, DiagramSampler, Expectation, Verdict, Witness, DEFAULT_SEED,
};
pub(crate) use lifting::{admissible_monos, lifting_squares};
pub use lifting::{has_rlp, is_injective_object, LiftingSquare, RlpVerdict};
pub use strictness::{
    classify_strictness, validate_ses, SesFailure, SesVerdict, ShortExactSequence,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CategoryError {
    #[error("morphisms are not composable")]
    NotComposable,
    #[error("no solver available for this query")]
    SolverUnavailable,
    #[error("instance cannot enumerate {0}")]
    NotEnumerable(&'static str),
    #[error("budget exceeded: {needed} diagrams needed, budget is {budget}")]
    BudgetExceeded { needed: u64, budget: u64 },
    #[error("invalid input: {0}")]
    Invalid(String),
}

/// Strictness verdict for a single morphism.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strictness {
    Both,
    StrictMono,
    StrictEpi,
    Neither,
}

impl Strictness {
    pub fn from_flags(strict_mono: bool, strict_epi: bool) -> Strictness {
        match (strict_mono, strict_epi) {
            (true, true) => Strictness::Both,
            (true, false) => Strictness::StrictMono,
            (false, true) => Strictness::StrictEpi,
            (false, false) => Strictness::Neither,
        }
    }

    pub fn is_strict_mono(self) -> bool {
        matches!(self, Strictness::Both | Strictness::StrictMono)
    }

    pub fn is_strict_epi(self) -> bool {
        matches!(self, Strictness::Both | Strictness::StrictEpi)
    }
}

/// A pointed category with kernels, cokernels, pullbacks and pushouts.
///
/// The proto-exact structure used throughout is the class of all strict
/// pairs, so the admissible monos and epis are the strict ones.
/// Implementations must be safe for concurrent read-only use.
pub trait Category: Sync + Send {
    type Obj: Clone + PartialEq + Debug + Send + Sync + Serialize + DeserializeOwned;
    type Mor: Clone + PartialEq + Debug + Send + Sync + Serialize + DeserializeOwned;

    fn name(&self) -> String;

    fn zero_object(&self) -> Self::Obj;

    fn source(&self, f: &Self::Mor) -> Self::Obj;

    fn target(&self, f: &Self::Mor) -> Self::Obj;

    fn identity(&self, x: &Self::Obj) -> Self::Mor;

    fn zero_morphism(&self, x: &Self::Obj, y: &Self::Obj) -> Self::Mor;

    /// `g ∘ f`.
    fn compose(&self, g: &Self::Mor, f: &Self::Mor) -> Result<Self::Mor, CategoryError>;

    /// The structure map `Ker(f) → X`.
    fn kernel(&self, f: &Self::Mor) -> Self::Mor;

    /// The structure map `Y → Coker(f)`.
    fn cokernel(&self, f: &Self::Mor) -> Self::Mor;

    /// For `f: X → Y` and `g: Z → Y`, the projections `P → X` and `P → Z`.
    fn pullback(
        &self,
        f: &Self::Mor,
        g: &Self::Mor,
    ) -> Result<(Self::Mor, Self::Mor), CategoryError>;

    /// For `i: K → X` and `g: K → Z`, the maps `X → P` and `Z → P`.
    fn pushout(
        &self,
        i: &Self::Mor,
        g: &Self::Mor,
    ) -> Result<(Self::Mor, Self::Mor), CategoryError>;

    /// For a cone `a: X → T`, `b: Z → T` under `(i, g)`, the map `P → T`
    /// out of [`Category::pushout`]. `None` when `a ∘ i ≠ b ∘ g`.
    fn pushout_mediator(
        &self,
        i: &Self::Mor,
        g: &Self::Mor,
        a: &Self::Mor,
        b: &Self::Mor,
    ) -> Result<Option<Self::Mor>, CategoryError> {
        if self.compose(a, i)? != self.compose(b, g)? {
            return Ok(None);
        }
        let (px, pz) = self.pushout(i, g)?;
        let candidates = self
            .hom(&self.target(&px), &self.target(a))
            .map_err(|_| CategoryError::SolverUnavailable)?;
        for m in candidates {
            if &self.compose(&m, &px)? == a && &self.compose(&m, &pz)? == b {
                return Ok(Some(m));
            }
        }
        Ok(None)
    }

    fn has_kernel(&self, _f: &Self::Mor) -> bool {
        true
    }

    fn has_cokernel(&self, _f: &Self::Mor) -> bool {
        true
    }

    /// Every object within the instance's bounds, without isomorphic duplicates.
    fn objects(&self) -> Result<Vec<Self::Obj>, CategoryError> {
        Err(CategoryError::NotEnumerable("objects"))
    }

    /// Every morphism `x → y`, duplicate-free.
    fn hom(&self, _x: &Self::Obj, _y: &Self::Obj) -> Result<Vec<Self::Mor>, CategoryError> {
        Err(CategoryError::NotEnumerable("morphisms"))
    }

    /// Some `u` with `u ∘ q = f`, if one exists.
    fn factor_through_epi(
        &self,
        q: &Self::Mor,
        f: &Self::Mor,
    ) -> Result<Option<Self::Mor>, CategoryError> {
        let candidates = self
            .hom(&self.target(q), &self.target(f))
            .map_err(|_| CategoryError::SolverUnavailable)?;
        for u in candidates {
            if &self.compose(&u, q)? == f {
                return Ok(Some(u));
            }
        }
        Ok(None)
    }

    /// Some `v` with `k ∘ v = f`, if one exists.
    fn factor_through_mono(
        &self,
        k: &Self::Mor,
        f: &Self::Mor,
    ) -> Result<Option<Self::Mor>, CategoryError> {
        let candidates = self
            .hom(&self.source(f), &self.source(k))
            .map_err(|_| CategoryError::SolverUnavailable)?;
        for v in candidates {
            if &self.compose(k, &v)? == f {
                return Ok(Some(v));
            }
        }
        Ok(None)
    }

    /// Default: search for a two-sided inverse.
    fn is_iso(&self, f: &Self::Mor) -> Result<bool, CategoryError> {
        let (x, y) = (self.source(f), self.target(f));
        let candidates = self
            .hom(&y, &x)
            .map_err(|_| CategoryError::SolverUnavailable)?;
        let (idx, idy) = (self.identity(&x), self.identity(&y));
        for g in candidates {
            if self.compose(&g, f)? == idx && self.compose(f, &g)? == idy {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// A closed-form strictness test, when the instance has one.
    fn native_strictness(&self, _f: &Self::Mor) -> Option<Strictness> {
        None
    }

    /// Native verdict if available, else the generic kernel/cokernel test.
    fn strictness(&self, f: &Self::Mor) -> Result<Strictness, CategoryError> {
        match self.native_strictness(f) {
            Some(s) => Ok(s),
            None => classify_strictness(self, f),
        }
    }

    fn is_admissible_mono(&self, f: &Self::Mor) -> Result<bool, CategoryError> {
        Ok(self.strictness(f)?.is_strict_mono())
    }

    fn is_admissible_epi(&self, f: &Self::Mor) -> Result<bool, CategoryError> {
        Ok(self.strictness(f)?.is_strict_epi())
    }

    fn is_zero_morphism(&self, f: &Self::Mor) -> bool {
        f == &self.zero_morphism(&self.source(f), &self.target(f))
    }

    /// The enumeration bounds of the instance, for reports.
    fn describe_bounds(&self) -> serde_json::Value {
        serde_json::Value::Null
    }
}
