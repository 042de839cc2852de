//! Weighted modules with non-expanding maps as a [`Category`].

use serde::Serialize;

use crate::category::{Category, CategoryError, Strictness};
use crate::linalg::Matrix;
use crate::scalars::{Elem, Magnitude, ValuedField};
use crate::weighted::{
    all_tuples, classify_morphism, cokernel, kernel, orthogonalize, pullback, pushout, BoundedMap,
    WeightedError, WeightedSpace,
};

/// The enumerable part of a finite-field instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightUniverse {
    /// Allowed weights, sorted ascending.
    pub weights: Vec<Magnitude>,
    pub max_dim: usize,
    /// Hom-sets with more candidate matrices than this are refused.
    pub max_candidates: u64,
}

/// Weighted spaces over one field, with non-expanding maps.
///
/// Over a finite field with a [`WeightUniverse`] this is `FinWeightedVec`:
/// objects are the spaces of dimension at most `max_dim` whose weights come
/// from the allowed set, listed once per isomorphism class (weights sorted),
/// and hom-sets are enumerated by brute force.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedCat {
    field: ValuedField,
    universe: Option<WeightUniverse>,
}

impl WeightedCat {
    /// All weighted spaces over `field`; not enumerable.
    pub fn new(field: ValuedField) -> WeightedCat {
        WeightedCat {
            field,
            universe: None,
        }
    }

    /// `FinWeightedVec(F_p, weights, dim ≤ max_dim)`.
    pub fn finite(
        field: ValuedField,
        weights: &[Magnitude],
        max_dim: usize,
    ) -> Result<WeightedCat, CategoryError> {
        if field.order().is_none() {
            return Err(CategoryError::Invalid(format!(
                "{field} is not a finite field"
            )));
        }
        let mut w = weights.to_vec();
        w.sort();
        w.dedup();
        Ok(WeightedCat {
            field,
            universe: Some(WeightUniverse {
                weights: w,
                max_dim,
                max_candidates: 1 << 20,
            }),
        })
    }

    /// The instance used throughout the test suite: `F_2`, weights
    /// `{γ^0, γ^1, γ^2}`, dimension at most 2.
    pub fn standard_f2() -> WeightedCat {
        let w = [Magnitude::ONE, Magnitude::pow(1), Magnitude::pow(2)];
        WeightedCat::finite(ValuedField::PrimeField(2), &w, 2).expect("F2 is finite")
    }

    pub fn field(&self) -> ValuedField {
        self.field
    }

    pub fn universe(&self) -> Option<&WeightUniverse> {
        self.universe.as_ref()
    }

    fn check_field(&self, f: &BoundedMap) -> Result<(), CategoryError> {
        if f.domain().field() != self.field {
            return Err(CategoryError::Invalid(format!(
                "map over {} in a category over {}",
                f.domain().field(),
                self.field
            )));
        }
        Ok(())
    }

    /// All non-expanding maps `x → y`, by filtering every matrix.
    pub fn enumerate_morphisms(
        &self,
        x: &WeightedSpace,
        y: &WeightedSpace,
    ) -> Result<Vec<BoundedMap>, CategoryError> {
        let elems = self.field.elements().ok_or(CategoryError::NotEnumerable(
            "morphisms over an infinite field",
        ))?;
        let entries = x.dim() * y.dim();
        let budget = self.universe.as_ref().map_or(1 << 20, |u| u.max_candidates);
        let needed = (elems.len() as u64)
            .checked_pow(entries as u32)
            .unwrap_or(u64::MAX);
        if needed > budget {
            return Err(CategoryError::BudgetExceeded { needed, budget });
        }
        let mut out = Vec::new();
        for entries in all_tuples(&elems, entries) {
            let rows: Vec<Vec<Elem>> = entries
                .chunks(x.dim().max(1))
                .take(y.dim())
                .map(|r| r.to_vec())
                .collect();
            let m = if x.dim() == 0 {
                Matrix::zeros(self.field, y.dim(), 0)
            } else {
                Matrix::from_rows(self.field, x.dim(), rows)
            };
            if let Ok(f) = BoundedMap::new(x.clone(), y.clone(), m) {
                if f.is_non_expanding() {
                    out.push(f);
                }
            }
        }
        Ok(out)
    }
}

/// `min_{s ∈ span(sub)} ρ(m + s)`, by listing the whole coset. Finite fields only.
pub fn brute_quotient_norm(
    space: &WeightedSpace,
    sub: &[Vec<Elem>],
    m: &[Elem],
) -> Option<Magnitude> {
    let elems = space.field().elements()?;
    let mut best: Option<Magnitude> = None;
    for coeffs in all_tuples(&elems, sub.len()) {
        let mut v = m.to_vec();
        for (a, s) in coeffs.iter().zip(sub) {
            for (x, y) in v.iter_mut().zip(s) {
                *x = &*x + &(a * y);
            }
        }
        let n = space.norm(&v);
        best = Some(best.map_or(n, |b| b.min(n)));
    }
    best
}

impl Category for WeightedCat {
    type Obj = WeightedSpace;
    type Mor = BoundedMap;

    fn name(&self) -> String {
        match &self.universe {
            Some(u) => {
                let w: Vec<String> = u.weights.iter().map(|m| m.to_string()).collect();
                format!(
                    "FinWeightedVec({}, weights {{{}}}, dim <= {})",
                    self.field,
                    w.join(", "),
                    u.max_dim
                )
            }
            None => format!("WeightedVec({}, non-expanding)", self.field),
        }
    }

    fn zero_object(&self) -> WeightedSpace {
        WeightedSpace::zero(self.field)
    }

    fn source(&self, f: &BoundedMap) -> WeightedSpace {
        f.domain().clone()
    }

    fn target(&self, f: &BoundedMap) -> WeightedSpace {
        f.codomain().clone()
    }

    fn identity(&self, x: &WeightedSpace) -> BoundedMap {
        BoundedMap::identity(x)
    }

    fn zero_morphism(&self, x: &WeightedSpace, y: &WeightedSpace) -> BoundedMap {
        BoundedMap::zero(x, y)
    }

    fn compose(&self, g: &BoundedMap, f: &BoundedMap) -> Result<BoundedMap, CategoryError> {
        g.compose(f).map_err(|_| CategoryError::NotComposable)
    }

    fn kernel(&self, f: &BoundedMap) -> BoundedMap {
        kernel(f)
    }

    fn cokernel(&self, f: &BoundedMap) -> BoundedMap {
        cokernel(f)
    }

    fn pullback(
        &self,
        f: &BoundedMap,
        g: &BoundedMap,
    ) -> Result<(BoundedMap, BoundedMap), CategoryError> {
        self.check_field(f)?;
        let sq = pullback(f, g).map_err(|_| CategoryError::NotComposable)?;
        Ok((sq.to_x, sq.to_z))
    }

    fn pushout(
        &self,
        i: &BoundedMap,
        g: &BoundedMap,
    ) -> Result<(BoundedMap, BoundedMap), CategoryError> {
        self.check_field(i)?;
        let sq = pushout(i, g).map_err(|_| CategoryError::NotComposable)?;
        Ok((sq.from_x, sq.from_z))
    }

    fn pushout_mediator(
        &self,
        i: &BoundedMap,
        g: &BoundedMap,
        a: &BoundedMap,
        b: &BoundedMap,
    ) -> Result<Option<BoundedMap>, CategoryError> {
        self.check_field(i)?;
        let sq = pushout(i, g).map_err(|_| CategoryError::NotComposable)?;
        match sq.mediate(a, b) {
            Ok(m) => Ok(Some(m)),
            Err(WeightedError::NotACone) => Ok(None),
            Err(_) => Err(CategoryError::NotComposable),
        }
    }

    fn objects(&self) -> Result<Vec<WeightedSpace>, CategoryError> {
        let u = self
            .universe
            .as_ref()
            .ok_or(CategoryError::NotEnumerable("objects"))?;
        let mut out = Vec::new();
        for d in 0..=u.max_dim {
            multisets(&u.weights, d, 0, &mut Vec::new(), &mut |w| {
                out.push(WeightedSpace::new(self.field, w.to_vec()))
            });
        }
        Ok(out)
    }

    fn hom(&self, x: &WeightedSpace, y: &WeightedSpace) -> Result<Vec<BoundedMap>, CategoryError> {
        if self.universe.is_none() {
            return Err(CategoryError::NotEnumerable("morphisms"));
        }
        self.enumerate_morphisms(x, y)
    }

    /// Linear solve when `q` is surjective, where the factor is unique;
    /// enumeration otherwise.
    fn factor_through_epi(
        &self,
        q: &BoundedMap,
        f: &BoundedMap,
    ) -> Result<Option<BoundedMap>, CategoryError> {
        if q.domain() != f.domain() {
            return Err(CategoryError::NotComposable);
        }
        if !q.is_surjective() {
            return default_factor_epi(self, q, f);
        }
        let Some(u) = q.matrix().solve_left(f.matrix()) else {
            return Ok(None);
        };
        Ok(
            BoundedMap::new(q.codomain().clone(), f.codomain().clone(), u)
                .ok()
                .filter(|u| u.is_non_expanding()),
        )
    }

    /// Linear solve when `k` is injective, where the factor is unique;
    /// enumeration otherwise.
    fn factor_through_mono(
        &self,
        k: &BoundedMap,
        f: &BoundedMap,
    ) -> Result<Option<BoundedMap>, CategoryError> {
        if k.codomain() != f.codomain() {
            return Err(CategoryError::NotComposable);
        }
        if !k.is_injective() {
            return default_factor_mono(self, k, f);
        }
        let Some(v) = k.matrix().solve_right(f.matrix()) else {
            return Ok(None);
        };
        Ok(BoundedMap::new(f.domain().clone(), k.domain().clone(), v)
            .ok()
            .filter(|v| v.is_non_expanding()))
    }

    fn is_iso(&self, f: &BoundedMap) -> Result<bool, CategoryError> {
        Ok(f.is_non_expanding() && f.inverse().is_some_and(|g| g.is_non_expanding()))
    }

    fn native_strictness(&self, f: &BoundedMap) -> Option<Strictness> {
        let c = classify_morphism(f).ok()?;
        Some(Strictness::from_flags(c.strict_mono, c.strict_epi))
    }

    fn describe_bounds(&self) -> serde_json::Value {
        serde_json::json!({
            "field": self.field,
            "universe": self.universe,
        })
    }
}

fn default_factor_epi(
    c: &WeightedCat,
    q: &BoundedMap,
    f: &BoundedMap,
) -> Result<Option<BoundedMap>, CategoryError> {
    for u in c
        .hom(q.codomain(), f.codomain())
        .map_err(|_| CategoryError::SolverUnavailable)?
    {
        if &u.after(q) == f {
            return Ok(Some(u));
        }
    }
    Ok(None)
}

fn default_factor_mono(
    c: &WeightedCat,
    k: &BoundedMap,
    f: &BoundedMap,
) -> Result<Option<BoundedMap>, CategoryError> {
    for v in c
        .hom(f.domain(), k.domain())
        .map_err(|_| CategoryError::SolverUnavailable)?
    {
        if &k.after(&v) == f {
            return Ok(Some(v));
        }
    }
    Ok(None)
}

fn multisets(
    items: &[Magnitude],
    k: usize,
    start: usize,
    cur: &mut Vec<Magnitude>,
    out: &mut dyn FnMut(&[Magnitude]),
) {
    if cur.len() == k {
        out(cur);
        return;
    }
    for i in start..items.len() {
        cur.push(items[i]);
        multisets(items, k, i, cur, out);
        cur.pop();
    }
}

/// Every subspace of a finite-field space, each once, as an orthogonal basis.
pub fn all_subspaces(space: &WeightedSpace) -> Option<Vec<Vec<Vec<Elem>>>> {
    let vectors = space.vectors()?;
    let mut seen: Vec<Vec<Vec<Elem>>> = Vec::new();
    let mut out = Vec::new();
    let mut frontier: Vec<Vec<Vec<Elem>>> = vec![Vec::new()];
    while let Some(gens) = frontier.pop() {
        let basis = orthogonalize(space, &gens);
        let mut members: Vec<Vec<Elem>> = vectors
            .iter()
            .filter(|v| basis.contains(v))
            .cloned()
            .collect();
        members.sort_by_key(|v| format!("{v:?}"));
        if seen.contains(&members) {
            continue;
        }
        seen.push(members);
        out.push(gens.clone());
        for v in &vectors {
            if !basis.contains(v) {
                let mut next = gens.clone();
                next.push(v.clone());
                frontier.push(next);
            }
        }
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_universe_has_ten_objects() {
        let c = WeightedCat::standard_f2();
        let objs = c.objects().unwrap();
        assert_eq!(objs.len(), 10);
        assert!(objs
            .iter()
            .all(|x| x.weights().windows(2).all(|w| w[0] <= w[1])));
    }

    #[test]
    fn enumerate_examples() {
        let c = WeightedCat::standard_f2();
        let f = c.field();
        let a = WeightedSpace::r_delta(f, Magnitude::ONE);
        let b = WeightedSpace::r_delta(f, Magnitude::pow(1));
        assert_eq!(c.hom(&a, &b).unwrap(), vec![BoundedMap::zero(&a, &b)]);
        assert_eq!(c.hom(&b, &a).unwrap().len(), 2);
        let z = c.zero_object();
        assert_eq!(c.hom(&z, &z).unwrap().len(), 1);
    }

    #[test]
    fn brute_quotient_examples() {
        let f = ValuedField::PrimeField(2);
        let x = WeightedSpace::standard(f, 2);
        let m = vec![f.one(), f.zero()];
        assert_eq!(brute_quotient_norm(&x, &[], &m), Some(Magnitude::ONE));
        assert_eq!(
            brute_quotient_norm(&x, std::slice::from_ref(&m), &m),
            Some(Magnitude::Zero)
        );
        assert_eq!(
            brute_quotient_norm(&x, &[vec![f.one(), f.one()]], &m),
            Some(Magnitude::ONE)
        );
    }

    #[test]
    fn subspace_counts() {
        // F2^3 has 1 + 7 + 7 + 1 subspaces
        let x = WeightedSpace::standard(ValuedField::PrimeField(2), 3);
        assert_eq!(all_subspaces(&x).unwrap().len(), 16);
    }
}
