//! Finite-dimensional weighted (semi-)normed modules over a valued field.

mod classify;
mod constructions;
mod map;
mod ortho;
mod space;

pub use classify::{classify_morphism, retraction, section, Classification};
pub use constructions::{
    biproduct, chain_colimit, cokernel, free_cover, image, image_factorization, isosio_replacement,
    kernel, pullback, pushout, rescale_map, separation, Biproduct, ChainColimit, IsosioReplacement,
    PullbackSquare, PushoutSquare,
};
pub use map::{map_from_text, operator_norm_raw, BoundedMap};
pub use ortho::{orthogonalize, quotient_norm, OrthoBasis};
pub(crate) use space::all_tuples;
pub use space::WeightedSpace;

use crate::scalars::{Magnitude, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WeightedError {
    #[error("spaces live over different fields")]
    FieldMismatch,
    #[error("{what}: expected {expected}, found {found}")]
    Shape {
        what: String,
        expected: usize,
        found: usize,
    },
    #[error("entry {index} is not an element of the base field")]
    ForeignElement { index: usize },
    #[error("basis vector {index} has weight 0 but a non-null image")]
    Unbounded { index: usize },
    #[error("operator norm {norm} exceeds g^0")]
    NotNonExpanding { norm: Magnitude },
    #[error("maps are not composable")]
    NotComposable,
    #[error("vectors do not span the space")]
    NotSpanning,
    #[error("cannot rescale by 0")]
    ZeroRescale,
    #[error("maps do not form a commutative cone")]
    NotACone,
    #[error("the pair is not exact")]
    NotExact,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}
