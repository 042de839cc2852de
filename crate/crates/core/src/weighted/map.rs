use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{WeightedError, WeightedSpace};
use crate::linalg::Matrix;
use crate::scalars::{Elem, Magnitude};

/// A linear map between weighted spaces over the same field, stored as a
/// `codomain.dim × domain.dim` matrix.
///
/// Construction rejects maps that send a null direction of the domain to a
/// vector of nonzero norm, so every `BoundedMap` has a finite operator norm.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundedMap {
    domain: WeightedSpace,
    codomain: WeightedSpace,
    matrix: Matrix,
}

impl BoundedMap {
    pub fn new(
        domain: WeightedSpace,
        codomain: WeightedSpace,
        matrix: Matrix,
    ) -> Result<BoundedMap, WeightedError> {
        if domain.field() != codomain.field() || matrix.field() != domain.field() {
            return Err(WeightedError::FieldMismatch);
        }
        if matrix.nrows() != codomain.dim() {
            return Err(WeightedError::Shape {
                what: "matrix rows".into(),
                expected: codomain.dim(),
                found: matrix.nrows(),
            });
        }
        if matrix.ncols() != domain.dim() {
            return Err(WeightedError::Shape {
                what: "matrix columns".into(),
                expected: domain.dim(),
                found: matrix.ncols(),
            });
        }
        if let Some(i) = matrix
            .entries()
            .iter()
            .position(|x| !domain.field().contains(x))
        {
            return Err(WeightedError::ForeignElement { index: i });
        }
        operator_norm_raw(&domain, &codomain, &matrix)?;
        Ok(BoundedMap {
            domain,
            codomain,
            matrix,
        })
    }

    /// Skips validation; callers guarantee the invariants.
    pub(crate) fn from_parts(
        domain: WeightedSpace,
        codomain: WeightedSpace,
        matrix: Matrix,
    ) -> BoundedMap {
        debug_assert_eq!(matrix.nrows(), codomain.dim());
        debug_assert_eq!(matrix.ncols(), domain.dim());
        BoundedMap {
            domain,
            codomain,
            matrix,
        }
    }

    pub fn identity(space: &WeightedSpace) -> BoundedMap {
        let m = Matrix::identity(space.field(), space.dim());
        BoundedMap::from_parts(space.clone(), space.clone(), m)
    }

    pub fn zero(domain: &WeightedSpace, codomain: &WeightedSpace) -> BoundedMap {
        let m = Matrix::zeros(domain.field(), codomain.dim(), domain.dim());
        BoundedMap::from_parts(domain.clone(), codomain.clone(), m)
    }

    pub fn domain(&self) -> &WeightedSpace {
        &self.domain
    }

    pub fn codomain(&self) -> &WeightedSpace {
        &self.codomain
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[Elem]) -> Vec<Elem> {
        self.matrix.apply(v)
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.domain.dim()
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.codomain.dim()
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &BoundedMap) -> Result<BoundedMap, WeightedError> {
        if first.codomain != self.domain {
            return Err(WeightedError::NotComposable);
        }
        Ok(BoundedMap::from_parts(
            first.domain.clone(),
            self.codomain.clone(),
            self.matrix.mul(&first.matrix),
        ))
    }

    pub(crate) fn after(&self, first: &BoundedMap) -> BoundedMap {
        self.compose(first).expect("composable by construction")
    }

    /// `sup_{x≠0} ρ(f x)/ρ(x)`, read off the standard basis.
    pub fn operator_norm(&self) -> Magnitude {
        operator_norm_raw(&self.domain, &self.codomain, &self.matrix)
            .expect("null-direction invariant checked at construction")
    }

    pub fn is_non_expanding(&self) -> bool {
        self.operator_norm() <= Magnitude::ONE
    }

    /// The same matrix between other presentations of the underlying modules.
    pub fn reinterpret(
        &self,
        domain: WeightedSpace,
        codomain: WeightedSpace,
    ) -> Result<BoundedMap, WeightedError> {
        BoundedMap::new(domain, codomain, self.matrix.clone())
    }

    /// Two-sided inverse as a bounded map, if the matrix is invertible and the
    /// inverse respects null directions.
    pub fn inverse(&self) -> Option<BoundedMap> {
        let inv = self.matrix.inverse()?;
        BoundedMap::new(self.codomain.clone(), self.domain.clone(), inv).ok()
    }
}

/// Operator norm of a raw matrix: `max_i ρ(A e_i)/w_i` over non-null columns.
///
/// A null column (`w_i = Zero`) with a non-null image makes the map unbounded.
pub fn operator_norm_raw(
    domain: &WeightedSpace,
    codomain: &WeightedSpace,
    matrix: &Matrix,
) -> Result<Magnitude, WeightedError> {
    let mut best = Magnitude::Zero;
    for i in 0..domain.dim() {
        let image_norm = codomain.norm(&matrix.column(i));
        match image_norm.checked_div(domain.weight(i)) {
            Some(r) => best = best.max(r),
            None if image_norm.is_zero() => {}
            None => return Err(WeightedError::Unbounded { index: i }),
        }
    }
    Ok(best)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MapRepr {
    domain: WeightedSpace,
    codomain: WeightedSpace,
    matrix: Vec<Vec<String>>,
}

impl Serialize for BoundedMap {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let field = self.domain.field();
        let matrix = (0..self.matrix.nrows())
            .map(|i| {
                self.matrix
                    .row(i)
                    .iter()
                    .map(|x| field.format_elem(x))
                    .collect()
            })
            .collect();
        MapRepr {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            matrix,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for BoundedMap {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let repr = MapRepr::deserialize(deserializer)?;
        map_from_text(repr.domain, repr.codomain, &repr.matrix).map_err(D::Error::custom)
    }
}

/// Builds a map from a matrix of element strings, validating shape first so the
/// error names the offending field.
pub fn map_from_text(
    domain: WeightedSpace,
    codomain: WeightedSpace,
    rows: &[Vec<String>],
) -> Result<BoundedMap, WeightedError> {
    let field = domain.field();
    if rows.len() != codomain.dim() {
        return Err(WeightedError::Shape {
            what: "matrix rows".into(),
            expected: codomain.dim(),
            found: rows.len(),
        });
    }
    let mut parsed = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        if row.len() != domain.dim() {
            return Err(WeightedError::Shape {
                what: format!("matrix[{i}] columns"),
                expected: domain.dim(),
                found: row.len(),
            });
        }
        let r = row
            .iter()
            .map(|t| field.parse_elem(t))
            .collect::<Result<Vec<_>, _>>()
            .map_err(WeightedError::Scalar)?;
        parsed.push(r);
    }
    let m = Matrix::from_rows(field, domain.dim(), parsed);
    BoundedMap::new(domain, codomain, m)
}
