//! One randomized instance per call for each structural statement about
//! weighted modules. A check returns `Ok(true)` when its hypothesis held and
//! the conclusion was verified, `Ok(false)` when the sampled instance did not
//! meet the hypothesis, and `Err` with a description on a violation.

use protoexact::category::{
    classify_strictness, validate_ses, Category, SesVerdict, ShortExactSequence,
};
use protoexact::instances::WeightedCat;
use protoexact::linalg::Matrix;
use protoexact::random::RandomWeighted;
use protoexact::scalars::{Elem, Magnitude, ValuedField};
use protoexact::weighted::{
    biproduct, chain_colimit, classify_morphism, cokernel, free_cover, kernel, orthogonalize,
    pullback, pushout, quotient_norm, BoundedMap, Classification, WeightedSpace,
};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::padic_norm_oracle;

pub type Check = fn(&RandomWeighted, &mut ChaCha8Rng) -> Result<bool, String>;

fn prime(field: ValuedField) -> i64 {
    match field {
        ValuedField::PAdic(p) => p as i64,
        other => panic!("randomized checks run over p-adic fields, got {other:?}"),
    }
}

fn compose(g: &BoundedMap, f: &BoundedMap) -> BoundedMap {
    g.compose(f).expect("composable by construction")
}

/// Native classification, cross-checked against the kernel/cokernel
/// construction and, for strict monos, against oracle norms on sample vectors.
fn classify(
    r: &RandomWeighted,
    rng: &mut ChaCha8Rng,
    f: &BoundedMap,
) -> Result<Classification, String> {
    let c = classify_morphism(f).map_err(|e| format!("classify: {e}"))?;
    let generic =
        classify_strictness(&WeightedCat::new(r.field), f).map_err(|e| format!("generic: {e}"))?;
    if generic.is_strict_mono() != c.strict_mono || generic.is_strict_epi() != c.strict_epi {
        return Err(format!(
            "native {c:?} and generic {generic:?} disagree on {f:?}"
        ));
    }
    if c.strict_mono {
        let p = prime(r.field);
        for _ in 0..4 {
            let v = r.vector(rng, f.domain());
            if padic_norm_oracle(f.codomain(), &f.apply(&v), p)
                != padic_norm_oracle(f.domain(), &v, p)
            {
                return Err(format!("strict mono {f:?} is not isometric at {v:?}"));
            }
        }
    }
    Ok(c)
}

fn require(ok: bool, what: impl FnOnce() -> String) -> Result<bool, String> {
    if ok {
        Ok(true)
    } else {
        Err(what())
    }
}

pub fn pullback_of_strict_epi(r: &RandomWeighted, rng: &mut ChaCha8Rng) -> Result<bool, String> {
    let x = r.space(rng);
    let e = r.strict_epi_from(rng, &x);
    let g = r.map_into(rng, e.codomain());
    let sq = pullback(&e, &g).map_err(|e| e.to_string())?;
    let c = classify(r, rng, &sq.to_z)?;
    require(c.strict_epi, || {
        format!("pullback of {e:?} along {g:?} is not a strict epi")
    })
}

pub fn pushout_of_strict_mono(r: &RandomWeighted, rng: &mut ChaCha8Rng) -> Result<bool, String> {
    let x = r.space(rng);
    let m = r.strict_mono_from(rng, &x);
    let g = r.map_from(rng, &x);
    let sq = pushout(&m, &g).map_err(|e| e.to_string())?;
    let c = classify(r, rng, &sq.from_z)?;
    require(c.strict_mono, || {
        format!("pushout of {m:?} along {g:?} is not a strict mono")
    })
}

pub fn strict_epis_compose(r: &RandomWeighted, rng: &mut ChaCha8Rng) -> Result<bool, String> {
    let x = r.space(rng);
    let e1 = r.strict_epi_from(rng, &x);
    let e2 = r.strict_epi_from(rng, e1.codomain());
    let c = classify(r, rng, &compose(&e2, &e1))?;
    require(c.strict_epi, || {
        format!("{e2:?} after {e1:?} is not a strict epi")
    })
}

pub fn strict_monos_compose(r: &RandomWeighted, rng: &mut ChaCha8Rng) -> Result<bool, String> {
    let x = r.space(rng);
    let m1 = r.strict_mono_from(rng, &x);
    let m2 = r.strict_mono_from(rng, m1.codomain());
    let c = classify(r, rng, &compose(&m2, &m1))?;
    require(c.strict_mono, || {
        format!("{m2:?} after {m1:?} is not a strict mono")
    })
}

pub fn second_factor_of_strict_epi(
    r: &RandomWeighted,
    rng: &mut ChaCha8Rng,
) -> Result<bool, String> {
    let (f, g) = r.strict_epi_factorization(rng);
    if !classify(r, rng, &compose(&g, &f))?.strict_epi {
        return Err(format!(
            "sampled composite {g:?} after {f:?} is not a strict epi"
        ));
    }
    let c = classify(r, rng, &g)?;
    require(c.strict_epi, || {
        format!("{g:?} is not a strict epi though g∘f is")
    })
}

pub fn first_factor_of_strict_mono(
    r: &RandomWeighted,
    rng: &mut ChaCha8Rng,
) -> Result<bool, String> {
    let (f, g) = r.strict_mono_factorization(rng);
    if !classify(r, rng, &compose(&g, &f))?.strict_mono {
        return Err(format!(
            "sampled composite {g:?} after {f:?} is not a strict mono"
        ));
    }
    let c = classify(r, rng, &f)?;
    require(c.strict_mono, || {
        format!("{f:?} is not a strict mono though g∘f is")
    })
}

/// For a pullback `f'` of `f` along `g`, `Ker(f') → Ker(f)` is an isomorphism.
pub fn pullback_kernels(r: &RandomWeighted, rng: &mut ChaCha8Rng) -> Result<bool, String> {
    let cat = WeightedCat::new(r.field);
    let x = r.space(rng);
    let f = r.map_from(rng, &x);
    let g = r.map_into(rng, f.codomain());
    let sq = pullback(&f, &g).map_err(|e| e.to_string())?;
    let kf = kernel(&f);
    let kf2 = kernel(&sq.to_z);
    let along = compose(&sq.to_x, &kf2);
    let u = cat
        .factor_through_mono(&kf, &along)
        .map_err(|e| e.to_string())?
        .ok_or_else(|| format!("Ker(f') does not map into Ker(f) for f = {f:?}"))?;
    let c = classify(r, rng, &u)?;
    require(c.iso, || {
        format!("Ker(f') → Ker(f) is {c:?} for f = {f:?}, g = {g:?}")
    })
}

/// The pullback of an admissible mono along an admissible epi is also a
/// pushout: the mediator from the pushout of the pulled-back span is an iso.
pub fn pullback_is_bicartesian(r: &RandomWeighted, rng: &mut ChaCha8Rng) -> Result<bool, String> {
    let y = r.space(rng);
    let p = r.strict_epi_from(rng, &y);
    let i = r.strict_mono_into(rng, p.codomain());
    let sq = pullback(&i, &p).map_err(|e| e.to_string())?;
    let po = pushout(&sq.to_z, &sq.to_x).map_err(|e| e.to_string())?;
    let u = po.mediate(&p, &i).map_err(|e| format!("mediator: {e}"))?;
    let c = classify(r, rng, &u)?;
    require(c.iso, || {
        format!("square over {i:?} and {p:?} is not a pushout: mediator {c:?}")
    })
}

/// For admissible monos `f: X → Y`, `g: Y → Z`, the induced
/// `Coker(f) → Coker(g∘f) → Coker(g)` is a short exact sequence.
pub fn cokernel_sequence(r: &RandomWeighted, rng: &mut ChaCha8Rng) -> Result<bool, String> {
    let cat = WeightedCat::new(r.field);
    let x = r.space(rng);
    let f = r.strict_mono_from(rng, &x);
    let g = r.strict_mono_from(rng, f.codomain());
    let gf = compose(&g, &f);
    let (cf, cg, cgf) = (cokernel(&f), cokernel(&g), cokernel(&gf));
    let a = cat
        .factor_through_epi(&cf, &compose(&cgf, &g))
        .map_err(|e| e.to_string())?
        .ok_or("Coker(f) → Coker(gf) does not exist")?;
    let b = cat
        .factor_through_epi(&cgf, &cg)
        .map_err(|e| e.to_string())?
        .ok_or("Coker(gf) → Coker(g) does not exist")?;
    let verdict =
        validate_ses(&cat, &ShortExactSequence { f: a, g: b }).map_err(|e| e.to_string())?;
    require(verdict == SesVerdict::Pass, || {
        format!("cokernel sequence for {f:?}, {g:?}: {verdict:?}")
    })
}

/// A candidate endomorphism or permutation-like map between spaces with the
/// same weights, often both a strict mono and a strict epi.
fn square_candidate(r: &RandomWeighted, rng: &mut ChaCha8Rng) -> BoundedMap {
    let x = r.space(rng);
    match rng.gen_range(0..3) {
        0 => r.automorphism(rng, &x),
        1 => r.map(rng, &x, &x),
        _ => {
            let e = r.strict_epi_from(rng, &x);
            compose(&r.strict_mono_from(rng, e.codomain()), &e)
        }
    }
}

/// A map that is both an admissible mono and an admissible epi is an iso.
pub fn admissible_mono_and_epi_is_iso(
    r: &RandomWeighted,
    rng: &mut ChaCha8Rng,
) -> Result<bool, String> {
    let f = square_candidate(r, rng);
    let c = classify(r, rng, &f)?;
    if !(c.strict_mono && c.strict_epi) {
        return Ok(false);
    }
    let inv = f
        .inverse()
        .ok_or_else(|| format!("{f:?} is not invertible"))?;
    require(c.iso && inv.is_non_expanding(), || {
        format!("{f:?} is strict both ways but not an iso")
    })
}

/// An admissible epi with zero kernel is an iso.
pub fn admissible_epi_with_zero_kernel(
    r: &RandomWeighted,
    rng: &mut ChaCha8Rng,
) -> Result<bool, String> {
    let e = if rng.gen_bool(0.5) {
        square_candidate(r, rng)
    } else {
        let x = r.space(rng);
        r.strict_epi_from(rng, &x)
    };
    if kernel(&e).domain().dim() != 0
        || !classify_morphism(&e).map_err(|e| e.to_string())?.strict_epi
    {
        return Ok(false);
    }
    let c = classify(r, rng, &e)?;
    let inv = e
        .inverse()
        .ok_or_else(|| format!("{e:?} is not invertible"))?;
    require(c.strict_epi && c.iso && inv.is_non_expanding(), || {
        format!("{e:?} has zero kernel but is {c:?}")
    })
}

/// A spanning family of a (possibly semi-normed) space: the columns of a
/// random automorphism, some random vectors, shuffled.
fn spanning_family(r: &RandomWeighted, rng: &mut ChaCha8Rng, x: &WeightedSpace) -> Vec<Vec<Elem>> {
    let a = r.automorphism(rng, x);
    let mut vs = a.matrix().columns();
    for _ in 0..rng.gen_range(0..3) {
        vs.push(r.vector(rng, x));
    }
    for i in (1..vs.len()).rev() {
        vs.swap(i, rng.gen_range(0..=i));
    }
    vs
}

/// The free cover of a spanning family is a strict epi.
pub fn free_cover_is_strict_epi(r: &RandomWeighted, rng: &mut ChaCha8Rng) -> Result<bool, String> {
    let x = r.space(rng);
    let family = spanning_family(r, rng, &x);
    let pi = free_cover(&x, &family).map_err(|e| format!("free cover of {x:?}: {e}"))?;
    let c = classify(r, rng, &pi)?;
    require(c.strict_epi, || {
        format!("free cover {pi:?} is not a strict epi")
    })
}

/// On a finite chain the infimum over later stages equals the norm in the
/// last stage, computed with oracle norms.
pub fn chain_colimit_norm(r: &RandomWeighted, rng: &mut ChaCha8Rng) -> Result<bool, String> {
    let p = prime(r.field);
    let len = rng.gen_range(1..=4);
    let (first, maps) = r.chain(rng, len);
    let col = chain_colimit(&first, &maps).map_err(|e| e.to_string())?;
    for stage in 0..col.stages.len() {
        for _ in 0..3 {
            let x = r.vector(rng, &col.stages[stage]);
            let mut v = x.clone();
            let mut inf = padic_norm_oracle(&col.stages[stage], &v, p);
            for f in &maps[stage..] {
                v = f.apply(&v);
                inf = inf.min(padic_norm_oracle(f.codomain(), &v, p));
            }
            let last = padic_norm_oracle(col.colimit(), &v, p);
            if inf != last
                || col.colimit_norm(stage, &x) != inf
                || col.image_norm(stage, &x) != last
            {
                return Err(format!("stage {stage}, x = {x:?}: inf {inf}, last {last}"));
            }
        }
    }
    Ok(true)
}

/// The coproduct-to-product comparison of a finite biproduct is the identity.
pub fn biproduct_comparison(r: &RandomWeighted, rng: &mut ChaCha8Rng) -> Result<bool, String> {
    let spaces: Vec<WeightedSpace> = (0..rng.gen_range(1..=4)).map(|_| r.space(rng)).collect();
    let b = biproduct(&spaces).map_err(|e| e.to_string())?;
    let c = b.comparison();
    require(
        c == BoundedMap::identity(&b.space)
            && *c.matrix() == Matrix::identity(b.space.field(), b.space.dim()),
        || format!("comparison for {spaces:?} is {c:?}"),
    )
}

/// Reversing the generators of a subspace changes neither its quotient norms
/// nor the validity of the certificate.
pub fn quotient_norm_reversal(r: &RandomWeighted, rng: &mut ChaCha8Rng) -> Result<bool, String> {
    let x = r.space(rng);
    let gens: Vec<Vec<Elem>> = (0..rng.gen_range(0..=x.dim() + 1))
        .map(|_| r.vector(rng, &x))
        .collect();
    let rev: Vec<Vec<Elem>> = gens.iter().rev().cloned().collect();
    let (a, b) = (orthogonalize(&x, &gens), orthogonalize(&x, &rev));
    a.check_certificate()?;
    b.check_certificate()?;
    for _ in 0..4 {
        let m = r.vector(rng, &x);
        let (qa, qb) = (quotient_norm(&a, &m), quotient_norm(&b, &m));
        if qa != qb {
            return Err(format!(
                "generators {gens:?}, m = {m:?}: {qa} vs {qb} after reversal"
            ));
        }
    }
    Ok(true)
}

/// `ρ(Σ a_j v_j) = max_j |a_j| ρ(v_j)` on `tuples` random coefficient
/// tuples, with every norm taken from the oracle.
pub fn max_formula(
    r: &RandomWeighted,
    rng: &mut ChaCha8Rng,
    tuples: usize,
) -> Result<bool, String> {
    let p = prime(r.field);
    let x = r.space(rng);
    let gens: Vec<Vec<Elem>> = (0..rng.gen_range(1..=x.dim() + 1))
        .map(|_| r.vector(rng, &x))
        .collect();
    let basis = orthogonalize(&x, &gens);
    basis.check_certificate()?;
    let members = basis.members();
    for _ in 0..tuples {
        let coeffs: Vec<Elem> = members.iter().map(|_| r.elem(rng)).collect();
        let mut sum = x.zero_vector();
        let mut expected = Magnitude::Zero;
        for (a, (_, v, _)) in coeffs.iter().zip(&members) {
            for (s, e) in sum.iter_mut().zip(v) {
                *s = &*s + &(a * e);
            }
            let scalar = super::padic_abs_oracle(x.field(), a, p);
            expected = expected.max(scalar * padic_norm_oracle(&x, v, p));
        }
        if padic_norm_oracle(&x, &sum, p) != expected || !basis.max_formula_holds(&coeffs) {
            return Err(format!("max formula fails for {gens:?} at {coeffs:?}"));
        }
    }
    Ok(true)
}

/// A random `f` and scale `δ`: `f` is non-expanding out of `M_δ` exactly
/// when its oracle operator norm is at most `δ`.
pub fn rescaling_adjunction(r: &RandomWeighted, rng: &mut ChaCha8Rng) -> Result<bool, String> {
    let p = prime(r.field);
    let x = r.space(rng);
    let y = r.space(rng);
    let f = r.map(rng, &x, &y);
    let f = BoundedMap::new(
        x.clone(),
        y.clone(),
        f.matrix()
            .scale(&r.elem(rng).inv().unwrap_or_else(|| r.field.one())),
    )
    .map_err(|e| e.to_string())?;
    let delta = Magnitude::pow(rng.gen_range(-3..=3));
    let norm =
        super::padic_operator_norm_oracle(&f, p).ok_or("bounded map with live null column")?;
    let scaled = x.rescale(delta).map_err(|e| e.to_string())?;
    let g = BoundedMap::new(scaled, y, f.matrix().clone()).map_err(|e| e.to_string())?;
    require(
        f.operator_norm() == norm && g.is_non_expanding() == (norm <= delta),
        || {
            format!(
                "{f:?} has oracle norm {norm}, δ = {delta}, non-expanding from M_δ: {}",
                g.is_non_expanding()
            )
        },
    )
}
