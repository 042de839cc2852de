use serde::{Deserialize, Serialize};

use super::{cokernel, image_factorization, kernel, orthogonalize, BoundedMap, WeightedError};
use crate::linalg::Matrix;
use crate::scalars::Magnitude;

/// Verdicts for a non-expanding map.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub mono: bool,
    pub epi: bool,
    pub strict_mono: bool,
    pub strict_epi: bool,
    pub iso: bool,
    pub split_mono: bool,
    pub split_epi: bool,
}

/// Classifies `f` in the category of non-expanding maps.
///
/// Monos are the injective maps and epis the surjective ones. A strict mono is
/// an injective isometry; a strict epi is a surjection whose induced map from
/// the quotient by the kernel is an isometric isomorphism. The split flags are
/// decided by a canonical candidate: the pivot projection onto the image for
/// retractions, minimal-norm preimages for sections. Either candidate is
/// non-expanding as soon as any one-sided inverse is.
pub fn classify_morphism(f: &BoundedMap) -> Result<Classification, WeightedError> {
    let norm = f.operator_norm();
    if norm > Magnitude::ONE {
        return Err(WeightedError::NotNonExpanding { norm });
    }
    let mono = f.is_injective();
    let epi = f.is_surjective();
    let strict_mono = mono && {
        let (core, _) = image_factorization(f);
        is_isometric_iso(&core)
    };
    let strict_epi = epi && {
        let q = cokernel(&kernel(f));
        let u = q
            .matrix()
            .solve_left(f.matrix())
            .expect("f factors through its coimage");
        BoundedMap::new(q.codomain().clone(), f.codomain().clone(), u)
            .is_ok_and(|u| is_isometric_iso(&u))
    };
    let iso = f.inverse().is_some_and(|g| g.is_non_expanding());
    let split_mono = mono && retraction(f).is_some();
    let split_epi = epi && section(f).is_some();
    Ok(Classification {
        mono,
        epi,
        strict_mono,
        strict_epi,
        iso,
        split_mono,
        split_epi,
    })
}

fn is_isometric_iso(u: &BoundedMap) -> bool {
    u.is_non_expanding() && u.inverse().is_some_and(|v| v.is_non_expanding())
}

/// A non-expanding `r` with `r ∘ f = id`, if one exists.
pub fn retraction(f: &BoundedMap) -> Option<BoundedMap> {
    if !f.is_injective() {
        return None;
    }
    let (core, incl) = image_factorization(f);
    let basis = orthogonalize(f.codomain(), &f.matrix().columns());
    let y = f.codomain();
    // Coordinates of y minus its residual, which lies in the image.
    let cols: Vec<_> = (0..y.dim())
        .map(|j| {
            let e = y.basis_vector(j);
            let r = basis.residual(&e);
            let part: Vec<_> = e.iter().zip(&r).map(|(a, b)| a - b).collect();
            basis
                .coordinates(&part)
                .expect("difference lies in the image")
        })
        .collect();
    let proj = Matrix::from_columns(y.field(), incl.domain().dim(), &cols);
    let inv = core.inverse()?;
    let r = BoundedMap::new(y.clone(), incl.domain().clone(), proj).ok()?;
    let r = inv.compose(&r).ok()?;
    (r.is_non_expanding() && r.after(f) == BoundedMap::identity(f.domain())).then_some(r)
}

/// A non-expanding `s` with `f ∘ s = id`, if one exists.
pub fn section(f: &BoundedMap) -> Option<BoundedMap> {
    if !f.is_surjective() {
        return None;
    }
    let y = f.codomain();
    let pre = f
        .matrix()
        .solve_right(&Matrix::identity(y.field(), y.dim()))?;
    let ker = orthogonalize(f.domain(), &f.matrix().nullspace());
    let cols: Vec<_> = pre.columns().iter().map(|c| ker.residual(c)).collect();
    let s = Matrix::from_columns(y.field(), f.domain().dim(), &cols);
    let s = BoundedMap::new(y.clone(), f.domain().clone(), s).ok()?;
    (s.is_non_expanding() && f.after(&s) == BoundedMap::identity(y)).then_some(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::ValuedField;
    use crate::weighted::{rescale_map, WeightedSpace};

    #[test]
    fn identity_is_everything() {
        let f = ValuedField::PAdic(2);
        let x = WeightedSpace::new(f, vec![Magnitude::ONE, Magnitude::Zero, Magnitude::pow(2)]);
        let c = classify_morphism(&BoundedMap::identity(&x)).unwrap();
        assert!(
            c.mono
                && c.epi
                && c.strict_mono
                && c.strict_epi
                && c.iso
                && c.split_mono
                && c.split_epi
        );
    }

    #[test]
    fn rescale_down_is_bimorphism_only() {
        let f = ValuedField::PAdic(2);
        let x = WeightedSpace::new(f, vec![Magnitude::ONE, Magnitude::pow(1)]);
        let down = rescale_map(&x, Magnitude::pow(-1)).unwrap();
        let c = classify_morphism(&down).unwrap();
        assert!(c.mono && c.epi);
        assert!(!c.strict_mono && !c.strict_epi && !c.iso && !c.split_mono && !c.split_epi);
        let up = rescale_map(&x, Magnitude::pow(1)).unwrap();
        assert!(matches!(
            classify_morphism(&up),
            Err(WeightedError::NotNonExpanding { .. })
        ));
    }

    #[test]
    fn quotient_projection_is_strict_epi() {
        let f2 = ValuedField::PrimeField(2);
        let x = WeightedSpace::standard(f2, 2);
        let y = WeightedSpace::standard(f2, 1);
        let diag = BoundedMap::new(y, x, Matrix::from_i64(f2, &[&[1], &[1]])).unwrap();
        let q = cokernel(&diag);
        let c = classify_morphism(&q).unwrap();
        assert!(c.strict_epi && c.split_epi && !c.mono);
        let d = classify_morphism(&diag).unwrap();
        assert!(d.strict_mono && d.split_mono && !d.epi);
    }
}
