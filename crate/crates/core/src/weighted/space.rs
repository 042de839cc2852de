use serde::{Deserialize, Serialize};

use super::WeightedError;
use crate::scalars::{Elem, Magnitude, ValuedField};

/// A free module `F^n` with the norm `ρ(x) = max_i |x_i|·w_i`.
///
/// `Zero` weights are allowed and mark null directions of a semi-norm.
/// The label is descriptive only and does not take part in equality.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightedSpace {
    field: ValuedField,
    weights: Vec<Magnitude>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
}

impl PartialEq for WeightedSpace {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.weights == other.weights
    }
}

impl Eq for WeightedSpace {}

impl WeightedSpace {
    pub fn new(field: ValuedField, weights: Vec<Magnitude>) -> WeightedSpace {
        WeightedSpace {
            field,
            weights,
            label: None,
        }
    }

    pub fn zero(field: ValuedField) -> WeightedSpace {
        WeightedSpace::new(field, Vec::new())
    }

    /// `n` basis vectors of weight `γ^0`.
    pub fn standard(field: ValuedField, n: usize) -> WeightedSpace {
        WeightedSpace::new(field, vec![Magnitude::ONE; n])
    }

    /// The rank-one space `R_δ`.
    pub fn r_delta(field: ValuedField, delta: Magnitude) -> WeightedSpace {
        WeightedSpace::new(field, vec![delta])
    }

    pub fn with_label(mut self, label: impl Into<String>) -> WeightedSpace {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn field(&self) -> ValuedField {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[Magnitude] {
        &self.weights
    }

    pub fn weight(&self, i: usize) -> Magnitude {
        self.weights[i]
    }

    pub fn is_separated(&self) -> bool {
        self.weights.iter().all(|w| !w.is_zero())
    }

    pub fn zero_vector(&self) -> Vec<Elem> {
        vec![self.field.zero(); self.dim()]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Elem> {
        let mut v = self.zero_vector();
        v[i] = self.field.one();
        v
    }

    pub fn check_vector(&self, v: &[Elem]) -> Result<(), WeightedError> {
        if v.len() != self.dim() {
            return Err(WeightedError::Shape {
                what: "vector length".into(),
                expected: self.dim(),
                found: v.len(),
            });
        }
        if let Some(i) = v.iter().position(|x| !self.field.contains(x)) {
            return Err(WeightedError::ForeignElement { index: i });
        }
        Ok(())
    }

    /// `max_i |v_i|·w_i`, and `Zero` for the zero vector.
    pub fn norm(&self, v: &[Elem]) -> Magnitude {
        debug_assert_eq!(v.len(), self.dim());
        v.iter()
            .zip(&self.weights)
            .map(|(x, w)| self.field.abs(x) * *w)
            .max()
            .unwrap_or(Magnitude::Zero)
    }

    /// Same module, every weight multiplied by `delta`.
    pub fn rescale(&self, delta: Magnitude) -> Result<WeightedSpace, WeightedError> {
        if delta.is_zero() {
            return Err(WeightedError::ZeroRescale);
        }
        Ok(WeightedSpace::new(
            self.field,
            self.weights.iter().map(|w| *w * delta).collect(),
        ))
    }

    /// Every vector of the space, in lexicographic digit order. Finite fields only.
    pub fn vectors(&self) -> Option<Vec<Vec<Elem>>> {
        let elems = self.field.elements()?;
        Some(all_tuples(&elems, self.dim()))
    }

    /// `{x : ρ(x) ≤ radius}`. Finite fields only.
    pub fn closed_ball(&self, radius: Magnitude) -> Option<Vec<Vec<Elem>>> {
        Some(
            self.vectors()?
                .into_iter()
                .filter(|v| self.norm(v) <= radius)
                .collect(),
        )
    }
}

pub(crate) fn all_tuples(elems: &[Elem], n: usize) -> Vec<Vec<Elem>> {
    let mut out: Vec<Vec<Elem>> = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                elems.iter().map(move |e| {
                    let mut p = prefix.clone();
                    p.push(e.clone());
                    p
                })
            })
            .collect();
    }
    out
}
