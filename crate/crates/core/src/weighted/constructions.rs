use serde::Serialize;

use super::{orthogonalize, BoundedMap, OrthoBasis, WeightedError, WeightedSpace};
use crate::linalg::Matrix;
use crate::scalars::{Elem, Magnitude};

/// Inclusion of the nullspace, weighted by an orthogonal basis of it. The
/// inclusion is an isometry.
pub fn kernel(f: &BoundedMap) -> BoundedMap {
    let x = f.domain();
    let basis = orthogonalize(x, &f.matrix().nullspace());
    inclusion_of(&basis)
}

/// The isometric inclusion of an orthogonal basis' span into its ambient space.
fn inclusion_of(basis: &OrthoBasis) -> BoundedMap {
    let x = basis.ambient();
    let members = basis.members();
    let cols: Vec<Vec<Elem>> = members.into_iter().map(|(_, v, _)| v).collect();
    let m = Matrix::from_columns(x.field(), x.dim(), &cols);
    BoundedMap::from_parts(basis.as_space(), x.clone(), m)
}

/// Projection onto the quotient by the image, presented on the columns that are
/// not pivots of the image basis.
pub fn cokernel(f: &BoundedMap) -> BoundedMap {
    projection_mod(&image(f))
}

fn projection_mod(sub: &OrthoBasis) -> BoundedMap {
    let y = sub.ambient();
    let field = y.field();
    let taken: Vec<usize> = sub
        .pivots()
        .iter()
        .chain(sub.null_pivots())
        .copied()
        .collect();
    let keep: Vec<usize> = (0..y.dim()).filter(|c| !taken.contains(c)).collect();
    // A vector supported on `keep` is its own residual, so the quotient norm
    // on these coordinates is the ambient weight.
    let q = WeightedSpace::new(field, keep.iter().map(|&c| y.weight(c)).collect());
    let cols: Vec<Vec<Elem>> = (0..y.dim())
        .map(|j| {
            let r = sub.residual(&y.basis_vector(j));
            keep.iter().map(|&c| r[c].clone()).collect()
        })
        .collect();
    let m = Matrix::from_columns(field, keep.len(), &cols);
    BoundedMap::from_parts(y.clone(), q, m)
}

pub fn image(f: &BoundedMap) -> OrthoBasis {
    orthogonalize(f.codomain(), &f.matrix().columns())
}

/// `f = inclusion ∘ corestriction`, with the image carrying the subspace norm.
pub fn image_factorization(f: &BoundedMap) -> (BoundedMap, BoundedMap) {
    let basis = image(f);
    let incl = inclusion_of(&basis);
    let cols: Vec<Vec<Elem>> = f
        .matrix()
        .columns()
        .iter()
        .map(|c| basis.coordinates(c).expect("column lies in the image"))
        .collect();
    let m = Matrix::from_columns(f.domain().field(), basis.rank(), &cols);
    let core = BoundedMap::new(f.domain().clone(), incl.domain().clone(), m)
        .expect("corestriction of a bounded map is bounded");
    (core, incl)
}

#[derive(Clone, Debug, Serialize)]
pub struct Biproduct {
    pub space: WeightedSpace,
    pub injections: Vec<BoundedMap>,
    pub projections: Vec<BoundedMap>,
}

/// Direct sum with the max norm; it is both the product and the coproduct.
pub fn biproduct(spaces: &[WeightedSpace]) -> Result<Biproduct, WeightedError> {
    let Some(first) = spaces.first() else {
        return Err(WeightedError::Shape {
            what: "biproduct factors".into(),
            expected: 1,
            found: 0,
        });
    };
    let field = first.field();
    if spaces.iter().any(|s| s.field() != field) {
        return Err(WeightedError::FieldMismatch);
    }
    let weights: Vec<Magnitude> = spaces
        .iter()
        .flat_map(|s| s.weights().iter().copied())
        .collect();
    let total = WeightedSpace::new(field, weights);
    let n = total.dim();
    let mut injections = Vec::new();
    let mut projections = Vec::new();
    let mut offset = 0;
    for s in spaces {
        let mut inj = Matrix::zeros(field, n, s.dim());
        for i in 0..s.dim() {
            inj.set(offset + i, i, field.one());
        }
        projections.push(BoundedMap::from_parts(
            total.clone(),
            s.clone(),
            inj.transpose(),
        ));
        injections.push(BoundedMap::from_parts(s.clone(), total.clone(), inj));
        offset += s.dim();
    }
    Ok(Biproduct {
        space: total,
        injections,
        projections,
    })
}

impl Biproduct {
    /// The map from the coproduct to the product whose `(i, j)` block is
    /// `p_i ∘ ι_j` when `i = j` and zero otherwise, assembled from the
    /// structure maps rather than assumed.
    pub fn comparison(&self) -> BoundedMap {
        let field = self.space.field();
        let n = self.space.dim();
        let mut m = Matrix::zeros(field, n, n);
        let mut row = 0;
        for (i, p) in self.projections.iter().enumerate() {
            let mut col = 0;
            for (j, inj) in self.injections.iter().enumerate() {
                let block = if i == j {
                    p.after(inj)
                } else {
                    BoundedMap::zero(inj.domain(), p.codomain())
                };
                for a in 0..block.codomain().dim() {
                    for b in 0..block.domain().dim() {
                        m.set(row + a, col + b, block.matrix().get(a, b).clone());
                    }
                }
                col += inj.domain().dim();
            }
            row += p.codomain().dim();
        }
        BoundedMap::from_parts(self.space.clone(), self.space.clone(), m)
    }

    /// `[f_1 … f_k]: ⊕ X_i → Y`.
    pub fn copair(&self, maps: &[BoundedMap]) -> Result<BoundedMap, WeightedError> {
        let Some(first) = maps.first() else {
            return Err(WeightedError::NotACone);
        };
        let mut m = first.matrix().clone();
        for g in &maps[1..] {
            m = m.hstack(g.matrix());
        }
        BoundedMap::new(self.space.clone(), first.codomain().clone(), m)
    }

    /// `(f_1, …, f_k): X → ⊕ Y_i`.
    pub fn pair(&self, maps: &[BoundedMap]) -> Result<BoundedMap, WeightedError> {
        let Some(first) = maps.first() else {
            return Err(WeightedError::NotACone);
        };
        let mut m = first.matrix().clone();
        for g in &maps[1..] {
            m = m.vstack(g.matrix());
        }
        BoundedMap::new(first.domain().clone(), self.space.clone(), m)
    }
}

/// `P = {(x, z) : f x = g z}` with projections to `X` and `Z`.
#[derive(Clone, Debug, Serialize)]
pub struct PullbackSquare {
    pub f: BoundedMap,
    pub g: BoundedMap,
    pub to_x: BoundedMap,
    pub to_z: BoundedMap,
    inclusion: BoundedMap,
}

pub fn pullback(f: &BoundedMap, g: &BoundedMap) -> Result<PullbackSquare, WeightedError> {
    if f.codomain() != g.codomain() {
        return Err(WeightedError::NotComposable);
    }
    let sum = biproduct(&[f.domain().clone(), g.domain().clone()])?;
    let diff = sum.copair(&[f.clone(), neg(g)])?;
    let k = kernel(&diff);
    Ok(PullbackSquare {
        f: f.clone(),
        g: g.clone(),
        to_x: sum.projections[0].after(&k),
        to_z: sum.projections[1].after(&k),
        inclusion: k,
    })
}

impl PullbackSquare {
    pub fn apex(&self) -> &WeightedSpace {
        self.to_x.domain()
    }

    /// The unique `u: T → P` with `to_x ∘ u = a` and `to_z ∘ u = b`.
    pub fn mediate(&self, a: &BoundedMap, b: &BoundedMap) -> Result<BoundedMap, WeightedError> {
        if a.domain() != b.domain()
            || a.codomain() != self.f.domain()
            || b.codomain() != self.g.domain()
        {
            return Err(WeightedError::NotComposable);
        }
        if self.f.after(a) != self.g.after(b) {
            return Err(WeightedError::NotACone);
        }
        let rhs = a.matrix().vstack(b.matrix());
        let u = self
            .inclusion
            .matrix()
            .solve_right(&rhs)
            .ok_or(WeightedError::NotACone)?;
        BoundedMap::new(a.domain().clone(), self.apex().clone(), u)
    }
}

/// `P = (X ⊕ Z) / {(i k, −g k)}` with the two induced maps into it.
#[derive(Clone, Debug, Serialize)]
pub struct PushoutSquare {
    pub i: BoundedMap,
    pub g: BoundedMap,
    pub from_x: BoundedMap,
    pub from_z: BoundedMap,
    projection: BoundedMap,
}

pub fn pushout(i: &BoundedMap, g: &BoundedMap) -> Result<PushoutSquare, WeightedError> {
    if i.domain() != g.domain() {
        return Err(WeightedError::NotComposable);
    }
    let sum = biproduct(&[i.codomain().clone(), g.codomain().clone()])?;
    let d = sum.pair(&[i.clone(), neg(g)])?;
    let q = cokernel(&d);
    Ok(PushoutSquare {
        i: i.clone(),
        g: g.clone(),
        from_x: q.after(&sum.injections[0]),
        from_z: q.after(&sum.injections[1]),
        projection: q,
    })
}

impl PushoutSquare {
    pub fn apex(&self) -> &WeightedSpace {
        self.from_x.codomain()
    }

    /// The unique `u: P → T` with `u ∘ from_x = a` and `u ∘ from_z = b`.
    pub fn mediate(&self, a: &BoundedMap, b: &BoundedMap) -> Result<BoundedMap, WeightedError> {
        if a.codomain() != b.codomain()
            || a.domain() != self.i.codomain()
            || b.domain() != self.g.codomain()
        {
            return Err(WeightedError::NotComposable);
        }
        if a.after(&self.i) != b.after(&self.g) {
            return Err(WeightedError::NotACone);
        }
        let rhs = a.matrix().hstack(b.matrix());
        let u = self
            .projection
            .matrix()
            .solve_left(&rhs)
            .ok_or(WeightedError::NotACone)?;
        BoundedMap::new(self.apex().clone(), a.codomain().clone(), u)
    }
}

fn neg(f: &BoundedMap) -> BoundedMap {
    BoundedMap::from_parts(f.domain().clone(), f.codomain().clone(), f.matrix().neg())
}

/// The identity of the underlying module, `M → M_δ`. Its operator norm is `δ`.
pub fn rescale_map(space: &WeightedSpace, delta: Magnitude) -> Result<BoundedMap, WeightedError> {
    let target = space.rescale(delta)?;
    Ok(BoundedMap::from_parts(
        space.clone(),
        target,
        Matrix::identity(space.field(), space.dim()),
    ))
}

/// Projection `M → M/{ρ = 0}`, presented by dropping the zero-weight coordinates.
pub fn separation(space: &WeightedSpace) -> BoundedMap {
    let field = space.field();
    let keep: Vec<usize> = (0..space.dim())
        .filter(|&i| !space.weight(i).is_zero())
        .collect();
    let target = WeightedSpace::new(field, keep.iter().map(|&i| space.weight(i)).collect());
    let m = Matrix::identity(field, space.dim()).select_rows(&keep);
    BoundedMap::from_parts(space.clone(), target, m)
}

/// `π: ⊕ R_{ρ(x)} → M` sending the unit of the `x`-th summand to `x`.
///
/// The summands are the given vectors, followed by those members of an
/// orthogonal basis of `M` that were not already listed. Without the extra
/// members the map can be surjective yet fail to be strict: on weights
/// `(1, γ)` the set `{e₁+e₂, e₂}` spans, but `e₁` then has no preimage of norm 1.
///
/// The vectors must span `M` modulo its null directions; null directions
/// that are missing are added as zero-weight summands.
pub fn free_cover(
    space: &WeightedSpace,
    spanning: &[Vec<Elem>],
) -> Result<BoundedMap, WeightedError> {
    for v in spanning {
        space.check_vector(v)?;
    }
    let sep = separation(space);
    let sep_image = orthogonalize(
        sep.codomain(),
        &spanning.iter().map(|v| sep.apply(v)).collect::<Vec<_>>(),
    );
    if sep_image.rank() != sep.codomain().dim() {
        return Err(WeightedError::NotSpanning);
    }
    let mut gens: Vec<Vec<Elem>> = spanning.to_vec();
    gens.extend(
        (0..space.dim())
            .filter(|&i| space.weight(i).is_zero())
            .map(|i| space.basis_vector(i)),
    );
    let basis = orthogonalize(space, &gens);
    let mut summands: Vec<Vec<Elem>> = spanning.to_vec();
    for (_, v, _) in basis.members() {
        if !summands.contains(&v) {
            summands.push(v);
        }
    }
    let domain = WeightedSpace::new(
        space.field(),
        summands.iter().map(|v| space.norm(v)).collect(),
    );
    let m = Matrix::from_columns(space.field(), space.dim(), &summands);
    BoundedMap::new(domain, space.clone(), m)
}

/// A finite chain `X_0 → X_1 → … → X_n` and its colimit, which is `X_n`.
#[derive(Clone, Debug, Serialize)]
pub struct ChainColimit {
    pub stages: Vec<WeightedSpace>,
    pub maps: Vec<BoundedMap>,
    /// `cocone[i]: X_i → X_n`.
    pub cocone: Vec<BoundedMap>,
}

/// Checks composability and non-expansion of every link.
pub fn chain_colimit(
    first: &WeightedSpace,
    maps: &[BoundedMap],
) -> Result<ChainColimit, WeightedError> {
    let mut stages = vec![first.clone()];
    for f in maps {
        if f.domain() != stages.last().expect("nonempty") {
            return Err(WeightedError::NotComposable);
        }
        if !f.is_non_expanding() {
            return Err(WeightedError::NotNonExpanding {
                norm: f.operator_norm(),
            });
        }
        stages.push(f.codomain().clone());
    }
    let last = stages.last().expect("nonempty").clone();
    let mut cocone = vec![BoundedMap::identity(&last)];
    for f in maps.iter().rev() {
        let next = cocone.last().expect("nonempty").after(f);
        cocone.push(next);
    }
    cocone.reverse();
    Ok(ChainColimit {
        stages,
        maps: maps.to_vec(),
        cocone,
    })
}

impl ChainColimit {
    pub fn colimit(&self) -> &WeightedSpace {
        self.stages.last().expect("nonempty")
    }

    /// `inf_{j ≥ i} ρ_j(f_{ji}(x))` over the later stages of the chain.
    pub fn colimit_norm(&self, stage: usize, x: &[Elem]) -> Magnitude {
        let mut v = x.to_vec();
        let mut best = self.stages[stage].norm(&v);
        for f in &self.maps[stage..] {
            v = f.apply(&v);
            best = best.min(f.codomain().norm(&v));
        }
        best
    }

    /// Norm of the image of `x` in the colimit.
    pub fn image_norm(&self, stage: usize, x: &[Elem]) -> Magnitude {
        self.colimit().norm(&self.cocone[stage].apply(x))
    }
}

/// Replacement of an algebraically exact pair `X → Y → Z` of bounded maps by
/// `Im f ↪ Y ↠ Y/Im f` with the subspace and quotient norms.
#[derive(Clone, Debug, Serialize)]
pub struct IsosioReplacement {
    pub inclusion: BoundedMap,
    pub projection: BoundedMap,
    /// `X → Im f`, bounded with bounded inverse.
    pub alpha: BoundedMap,
    /// `Y/Im f → Z`, bounded with bounded inverse.
    pub gamma: BoundedMap,
}

pub fn isosio_replacement(
    f: &BoundedMap,
    g: &BoundedMap,
) -> Result<IsosioReplacement, WeightedError> {
    if f.codomain() != g.domain() {
        return Err(WeightedError::NotComposable);
    }
    let exact = g.after(f).is_zero()
        && f.is_injective()
        && g.is_surjective()
        && f.rank() + g.rank() == f.codomain().dim();
    if !exact {
        return Err(WeightedError::NotExact);
    }
    let (alpha, inclusion) = image_factorization(f);
    let projection = cokernel(&inclusion);
    let gm = projection
        .matrix()
        .solve_left(g.matrix())
        .ok_or(WeightedError::NotExact)?;
    let gamma = BoundedMap::new(projection.codomain().clone(), g.codomain().clone(), gm)?;
    Ok(IsosioReplacement {
        inclusion,
        projection,
        alpha,
        gamma,
    })
}
