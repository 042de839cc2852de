//! Seeded generators of weighted spaces and non-expanding maps over a valued
//! field, for randomized property checks and sampled audits.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::category::DiagramSampler;
use crate::instances::WeightedCat;
use crate::linalg::Matrix;
use crate::scalars::{ceil_exponent, Elem, Magnitude, ValuedField};
use crate::weighted::{biproduct, cokernel, kernel, operator_norm_raw, BoundedMap, WeightedSpace};

/// Shape of the random instances.
#[derive(Clone, Debug, PartialEq)]
pub struct RandomWeighted {
    pub field: ValuedField,
    /// Spaces have dimension in `1..=max_dim` unless stated otherwise.
    pub max_dim: usize,
    /// Weights are `γ^k` with `|k| ≤ weight_range`.
    pub weight_range: i64,
    /// Probability of a null (`Zero`) weight, per coordinate.
    pub null_weight_rate: f64,
}

impl RandomWeighted {
    /// Spaces of dimension up to 3 over the `p`-adic rationals, weights
    /// `γ^{-2} … γ^2`, no null directions.
    pub fn padic(p: u32) -> RandomWeighted {
        RandomWeighted {
            field: ValuedField::padic(p).expect("caller passes a prime"),
            max_dim: 3,
            weight_range: 2,
            null_weight_rate: 0.0,
        }
    }

    pub fn with_null_weights(mut self, rate: f64) -> RandomWeighted {
        self.null_weight_rate = rate;
        self
    }

    pub fn weight(&self, rng: &mut ChaCha8Rng) -> Magnitude {
        if self.null_weight_rate > 0.0 && rng.gen_bool(self.null_weight_rate) {
            Magnitude::Zero
        } else {
            Magnitude::pow(rng.gen_range(-self.weight_range..=self.weight_range))
        }
    }

    pub fn space_of_dim(&self, rng: &mut ChaCha8Rng, dim: usize) -> WeightedSpace {
        WeightedSpace::new(self.field, (0..dim).map(|_| self.weight(rng)).collect())
    }

    pub fn space(&self, rng: &mut ChaCha8Rng) -> WeightedSpace {
        let d = rng.gen_range(1..=self.max_dim);
        self.space_of_dim(rng, d)
    }

    /// A small element; zero about a quarter of the time. Over `ℚ` the
    /// numerator and denominator may carry powers of `p`.
    pub fn elem(&self, rng: &mut ChaCha8Rng) -> Elem {
        match self.field {
            ValuedField::PrimeField(p) => self.field.from_i64(rng.gen_range(0..p as i64)),
            _ => {
                if rng.gen_bool(0.25) {
                    return self.field.zero();
                }
                let n = rng.gen_range(-9..=9i64);
                let d = [1, 1, 2, 3, 4, 9][rng.gen_range(0..6)];
                self.field.from_ratio(n, d)
            }
        }
    }

    pub fn vector(&self, rng: &mut ChaCha8Rng, space: &WeightedSpace) -> Vec<Elem> {
        (0..space.dim()).map(|_| self.elem(rng)).collect()
    }

    /// A random matrix pushed into the unit ball of `Hom(x, y)`. Null columns
    /// only hit null rows. Over a `p`-adic field the whole matrix is then
    /// multiplied by the smallest power of `p` that makes it non-expanding;
    /// over a trivially valued field, entries that would expand are dropped.
    pub fn map(&self, rng: &mut ChaCha8Rng, x: &WeightedSpace, y: &WeightedSpace) -> BoundedMap {
        let trivial = !matches!(self.field, ValuedField::PAdic(_));
        let mut m = Matrix::zeros(self.field, y.dim(), x.dim());
        for j in 0..x.dim() {
            for i in 0..y.dim() {
                let (wi, wj) = (y.weight(i), x.weight(j));
                if (wj.is_zero() && !wi.is_zero()) || (trivial && wi > wj) {
                    continue;
                }
                m.set(i, j, self.elem(rng));
            }
        }
        if !trivial {
            let norm = operator_norm_raw(x, y, &m).expect("null columns hit only null rows");
            if let Some(k) = ceil_exponent(norm).filter(|&k| k > 0) {
                m = m.scale(&self.field.scalar_of_valuation(k).expect("p-adic"));
            }
        }
        BoundedMap::new(x.clone(), y.clone(), m).expect("valid by construction")
    }

    pub fn map_from(&self, rng: &mut ChaCha8Rng, x: &WeightedSpace) -> BoundedMap {
        let y = self.space(rng);
        self.map(rng, x, &y)
    }

    pub fn map_into(&self, rng: &mut ChaCha8Rng, y: &WeightedSpace) -> BoundedMap {
        let x = self.space(rng);
        self.map(rng, &x, y)
    }

    /// `1 + N` with `N` strictly upper triangular and non-expanding, which is
    /// an isometric automorphism.
    pub fn automorphism(&self, rng: &mut ChaCha8Rng, x: &WeightedSpace) -> BoundedMap {
        let n = self.map(rng, x, x);
        let mut m = Matrix::identity(self.field, x.dim());
        for j in 0..x.dim() {
            for i in 0..j {
                m.set(i, j, n.matrix().get(i, j).clone());
            }
        }
        BoundedMap::new(x.clone(), x.clone(), m).expect("unipotent part of a bounded map")
    }

    /// `Coker(h)` for a random `h` into `x`, twisted by an automorphism.
    pub fn strict_epi_from(&self, rng: &mut ChaCha8Rng, x: &WeightedSpace) -> BoundedMap {
        let h = self.map_into(rng, x);
        let q = cokernel(&h);
        let a = self.automorphism(rng, q.codomain());
        compose(&a, &q)
    }

    /// `(y, w) ↦ y + h(w)` out of `y ⊕ W`, twisted by an automorphism.
    pub fn strict_epi_into(&self, rng: &mut ChaCha8Rng, y: &WeightedSpace) -> BoundedMap {
        let w = self.space(rng);
        let h = self.map(rng, &w, y);
        let sum = biproduct(&[y.clone(), w]).expect("same field");
        let e = sum
            .copair(&[BoundedMap::identity(y), h])
            .expect("shapes agree");
        let a = self.automorphism(rng, &sum.space);
        compose(&e, &a)
    }

    /// `x ↦ (x, h(x))` into `x ⊕ W`, twisted by an automorphism.
    pub fn strict_mono_from(&self, rng: &mut ChaCha8Rng, x: &WeightedSpace) -> BoundedMap {
        let w = self.space(rng);
        let h = self.map(rng, x, &w);
        let sum = biproduct(&[x.clone(), w]).expect("same field");
        let m = sum
            .pair(&[BoundedMap::identity(x), h])
            .expect("shapes agree");
        let a = self.automorphism(rng, &sum.space);
        compose(&a, &m)
    }

    /// `Ker(h)` for a random `h` out of `y`, twisted by an automorphism.
    pub fn strict_mono_into(&self, rng: &mut ChaCha8Rng, y: &WeightedSpace) -> BoundedMap {
        let h = self.map_from(rng, y);
        let k = kernel(&h);
        let a = self.automorphism(rng, k.domain());
        compose(&k, &a)
    }

    /// `(f, g)` with `g ∘ f` a strict mono: `f = (m, h'm)` into `Z ⊕ W` and
    /// `g(z, w) = z + k(w − h'z)`, for a strict mono `m: X → Z`.
    pub fn strict_mono_factorization(&self, rng: &mut ChaCha8Rng) -> (BoundedMap, BoundedMap) {
        let x = self.space(rng);
        let m = self.strict_mono_from(rng, &x);
        let z = m.codomain().clone();
        let w = self.space(rng);
        let hp = self.map(rng, &z, &w);
        let k = self.map(rng, &w, &z);
        let sum = biproduct(&[z.clone(), w]).expect("same field");
        let f = sum
            .pair(&[m.clone(), compose(&hp, &m)])
            .expect("shapes agree");
        let khp = compose(&k, &hp);
        let first = add(&BoundedMap::identity(&z), &negate(&khp));
        let g = sum.copair(&[first, k]).expect("shapes agree");
        (f, g)
    }

    /// `(f, g)` with `g ∘ f` a strict epi: `f = (1, h)` out of `X` into
    /// `X ⊕ W` and `g(x, w) = e(x) + k(w − h x)`, for a strict epi `e: X → Z`.
    pub fn strict_epi_factorization(&self, rng: &mut ChaCha8Rng) -> (BoundedMap, BoundedMap) {
        let x = self.space(rng);
        let e = self.strict_epi_from(rng, &x);
        let z = e.codomain().clone();
        let w = self.space(rng);
        let h = self.map(rng, &x, &w);
        let k = self.map(rng, &w, &z);
        let sum = biproduct(&[x.clone(), w]).expect("same field");
        let f = sum
            .pair(&[BoundedMap::identity(&x), h.clone()])
            .expect("shapes agree");
        let first = add(&e, &negate(&compose(&k, &h)));
        let g = sum.copair(&[first, k]).expect("shapes agree");
        (f, g)
    }

    /// A chain `X_0 → X_1 → … → X_n` of non-expanding maps.
    pub fn chain(&self, rng: &mut ChaCha8Rng, len: usize) -> (WeightedSpace, Vec<BoundedMap>) {
        let first = self.space(rng);
        let mut maps = Vec::new();
        let mut cur = first.clone();
        for _ in 0..len {
            let f = self.map_from(rng, &cur);
            cur = f.codomain().clone();
            maps.push(f);
        }
        (first, maps)
    }
}

fn compose(g: &BoundedMap, f: &BoundedMap) -> BoundedMap {
    g.compose(f).expect("composable by construction")
}

fn add(a: &BoundedMap, b: &BoundedMap) -> BoundedMap {
    BoundedMap::new(
        a.domain().clone(),
        a.codomain().clone(),
        a.matrix().add(b.matrix()),
    )
    .expect("sum of bounded maps is bounded")
}

fn negate(a: &BoundedMap) -> BoundedMap {
    BoundedMap::new(a.domain().clone(), a.codomain().clone(), a.matrix().neg())
        .expect("negation preserves bounds")
}

impl DiagramSampler<WeightedCat> for RandomWeighted {
    fn object(&self, rng: &mut ChaCha8Rng) -> WeightedSpace {
        self.space(rng)
    }

    fn morphism_from(&self, rng: &mut ChaCha8Rng, x: &WeightedSpace) -> BoundedMap {
        self.map_from(rng, x)
    }

    fn morphism_into(&self, rng: &mut ChaCha8Rng, y: &WeightedSpace) -> BoundedMap {
        self.map_into(rng, y)
    }

    fn admissible_mono_from(&self, rng: &mut ChaCha8Rng, x: &WeightedSpace) -> BoundedMap {
        self.strict_mono_from(rng, x)
    }

    fn admissible_mono_into(&self, rng: &mut ChaCha8Rng, y: &WeightedSpace) -> BoundedMap {
        self.strict_mono_into(rng, y)
    }

    fn admissible_epi_from(&self, rng: &mut ChaCha8Rng, x: &WeightedSpace) -> BoundedMap {
        self.strict_epi_from(rng, x)
    }

    fn admissible_epi_into(&self, rng: &mut ChaCha8Rng, y: &WeightedSpace) -> BoundedMap {
        self.strict_epi_into(rng, y)
    }

    fn left_obscure_pair(&self, rng: &mut ChaCha8Rng) -> (BoundedMap, BoundedMap) {
        self.strict_mono_factorization(rng)
    }

    fn right_obscure_pair(&self, rng: &mut ChaCha8Rng) -> (BoundedMap, BoundedMap) {
        self.strict_epi_factorization(rng)
    }
}
