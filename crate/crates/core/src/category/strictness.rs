use serde::{Deserialize, Serialize};

use super::{Category, CategoryError, Strictness};

/// Decides strictness from kernels and cokernels alone.
///
/// `f: X → Y` is a strict epi iff the map `u` with `f = u ∘ q`, where
/// `q: X → Coker(Ker f → X)`, is an isomorphism; dually `f` is a strict mono
/// iff the map `v` with `f = k ∘ v`, where `k: Ker(Y → Coker f) → Y`, is an
/// isomorphism.
pub fn classify_strictness<C: Category + ?Sized>(
    c: &C,
    f: &C::Mor,
) -> Result<Strictness, CategoryError> {
    let q = c.cokernel(&c.kernel(f));
    let strict_epi = match c.factor_through_epi(&q, f)? {
        Some(u) => c.is_iso(&u)?,
        None => false,
    };
    let k = c.kernel(&c.cokernel(f));
    let strict_mono = match c.factor_through_mono(&k, f)? {
        Some(v) => c.is_iso(&v)?,
        None => false,
    };
    Ok(Strictness::from_flags(strict_mono, strict_epi))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShortExactSequence<M> {
    pub f: M,
    pub g: M,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SesFailure {
    ComposeNonzero,
    NotKernel,
    NotCokernel,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SesVerdict {
    Pass,
    Fail(SesFailure),
}

impl SesVerdict {
    pub fn is_pass(self) -> bool {
        self == SesVerdict::Pass
    }
}

/// Checks `g ∘ f = 0`, `f ≅ Ker g` and `g ≅ Coker f`, in that order.
pub fn validate_ses<C: Category + ?Sized>(
    c: &C,
    s: &ShortExactSequence<C::Mor>,
) -> Result<SesVerdict, CategoryError> {
    if c.target(&s.f) != c.source(&s.g) {
        return Err(CategoryError::NotComposable);
    }
    let gf = c.compose(&s.g, &s.f)?;
    if !c.is_zero_morphism(&gf) {
        return Ok(SesVerdict::Fail(SesFailure::ComposeNonzero));
    }
    let k = c.kernel(&s.g);
    let is_kernel = match c.factor_through_mono(&k, &s.f)? {
        Some(v) => c.is_iso(&v)?,
        None => false,
    };
    if !is_kernel {
        return Ok(SesVerdict::Fail(SesFailure::NotKernel));
    }
    let q = c.cokernel(&s.f);
    let is_cokernel = match c.factor_through_epi(&q, &s.g)? {
        Some(u) => c.is_iso(&u)?,
        None => false,
    };
    if !is_cokernel {
        return Ok(SesVerdict::Fail(SesFailure::NotCokernel));
    }
    Ok(SesVerdict::Pass)
}
