//! Brute-force oracles written independently of the library: weighted spaces
//! over F2 as bitmasks, and p-adic valuations by trial division.

#![allow(dead_code)]

pub mod theorems;

use num_bigint::BigInt;
use num_traits::Zero;
use protoexact::scalars::{Elem, Magnitude, ValuedField};
use protoexact::weighted::{BoundedMap, WeightedSpace};

/// A weight exponent; `None` is the zero weight and sorts below every `Some`.
pub type W = Option<i64>;

pub fn weight_of(m: Magnitude) -> W {
    m.exponent().map(|q| {
        assert_eq!(*q.denom(), 1, "oracles only handle integer exponents");
        *q.numer()
    })
}

pub fn weights_of(s: &WeightedSpace) -> Vec<W> {
    s.weights().iter().map(|&m| weight_of(m)).collect()
}

pub fn magnitude_of(w: W) -> Magnitude {
    w.map_or(Magnitude::Zero, Magnitude::pow)
}

/// Weighted F2 spaces with vectors as bitmasks (bit `i` = coordinate `i`).
pub mod f2 {
    use super::W;

    /// `max` of the weights on the support; the zero vector gets the zero weight.
    pub fn rho(weights: &[W], v: u32) -> W {
        (0..weights.len())
            .filter(|i| v >> i & 1 == 1)
            .map(|i| weights[i])
            .max()
            .flatten()
    }

    pub fn span(gens: &[u32]) -> Vec<u32> {
        let mut out = vec![0u32];
        for &g in gens {
            if !out.contains(&g) {
                let more: Vec<u32> = out.iter().map(|&s| s ^ g).collect();
                out.extend(more);
            }
        }
        out.sort();
        out.dedup();
        out
    }

    pub fn quotient_norm(weights: &[W], sub: &[u32], m: u32) -> W {
        span(sub)
            .iter()
            .map(|&s| rho(weights, m ^ s))
            .min()
            .expect("span is non-empty")
    }

    /// Image of `x` under the map with the given columns.
    pub fn apply(cols: &[u32], x: u32) -> u32 {
        (0..cols.len())
            .filter(|j| x >> j & 1 == 1)
            .fold(0, |acc, j| acc ^ cols[j])
    }

    pub fn vectors(dim: usize) -> impl Iterator<Item = u32> {
        0..(1u32 << dim)
    }

    /// `ρ(f x) ≤ ρ(x)` for every `x`.
    pub fn non_expanding(wx: &[W], wy: &[W], cols: &[u32]) -> bool {
        vectors(wx.len()).all(|x| rho(wy, apply(cols, x)) <= rho(wx, x))
    }

    /// Every non-expanding map, as column lists, in no particular order.
    pub fn hom(wx: &[W], wy: &[W]) -> Vec<Vec<u32>> {
        let mut out = vec![vec![]];
        for _ in 0..wx.len() {
            out = out
                .into_iter()
                .flat_map(|c: Vec<u32>| {
                    vectors(wy.len()).map(move |v| {
                        let mut c = c.clone();
                        c.push(v);
                        c
                    })
                })
                .collect();
        }
        out.retain(|c| non_expanding(wx, wy, c));
        out
    }

    pub fn injective(dim_x: usize, cols: &[u32]) -> bool {
        vectors(dim_x)
            .filter(|&x| x != 0)
            .all(|x| apply(cols, x) != 0)
    }

    pub fn surjective(dim_x: usize, dim_y: usize, cols: &[u32]) -> bool {
        let image: Vec<u32> = vectors(dim_x).map(|x| apply(cols, x)).collect();
        vectors(dim_y).all(|y| image.contains(&y))
    }

    /// Injective and isometric: the subspace norm on the image is the
    /// domain norm.
    pub fn strict_mono(wx: &[W], wy: &[W], cols: &[u32]) -> bool {
        injective(wx.len(), cols)
            && vectors(wx.len()).all(|x| rho(wy, apply(cols, x)) == rho(wx, x))
    }

    /// Surjective, and every `y` has a preimage of norm exactly `ρ(y)`.
    pub fn strict_epi(wx: &[W], wy: &[W], cols: &[u32]) -> bool {
        if !surjective(wx.len(), wy.len(), cols) {
            return false;
        }
        vectors(wy.len()).all(|y| {
            let best = vectors(wx.len())
                .filter(|&x| apply(cols, x) == y)
                .map(|x| rho(wx, x))
                .min();
            best == Some(rho(wy, y))
        })
    }

    pub fn compose(g: &[u32], f: &[u32]) -> Vec<u32> {
        f.iter().map(|&c| apply(g, c)).collect()
    }

    /// `B → 0` lifts against every strict mono between the given spaces.
    pub fn injective_object(wb: &[W], spaces: &[Vec<W>]) -> bool {
        for a in spaces {
            for a2 in spaces {
                for m in hom(a, a2).into_iter().filter(|m| strict_mono(a, a2, m)) {
                    let extensions = hom(a2, wb);
                    for u in hom(a, wb) {
                        if !extensions.iter().any(|d| compose(d, &m) == u) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

/// Pointed sets `{0, 1, …, n}` with maps as image lists.
pub mod pointed {
    use protoexact::instances::{FinPointedSet, PointedMap};

    pub fn every_map(max: usize) -> Vec<PointedMap> {
        let mut out = Vec::new();
        for n in 0..=max {
            for m in 0..=max {
                out.extend(FinPointedSet::all_maps(n, m));
            }
        }
        out
    }

    /// Strict epi: surjective, and distinct points outside the zero fiber stay
    /// distinct. Written out here without the library's helpers.
    pub fn strict_epi_oracle(f: &PointedMap) -> bool {
        let pts: Vec<usize> = (0..=f.source()).map(|x| f.apply(x)).collect();
        let onto = (0..=f.target()).all(|y| pts.contains(&y));
        let mut seen = vec![false; f.target() + 1];
        for &y in &pts[1..] {
            if y != 0 {
                if seen[y] {
                    return false;
                }
                seen[y] = true;
            }
        }
        onto
    }

    pub fn strict_mono_oracle(f: &PointedMap) -> bool {
        let mut seen = vec![false; f.target() + 1];
        seen[0] = true;
        (1..=f.source()).all(|x| !std::mem::replace(&mut seen[f.apply(x)], true))
    }
}

pub fn f2_bits(v: &[Elem], field: ValuedField) -> u32 {
    v.iter()
        .enumerate()
        .filter(|(_, x)| field.format_elem(x) == "1")
        .fold(0, |acc, (i, _)| acc | 1 << i)
}

pub fn f2_vector(bits: u32, dim: usize) -> Vec<Elem> {
    let f = ValuedField::PrimeField(2);
    (0..dim)
        .map(|i| f.from_i64((bits >> i & 1) as i64))
        .collect()
}

pub fn f2_columns(f: &BoundedMap) -> Vec<u32> {
    let field = f.domain().field();
    f.matrix()
        .columns()
        .iter()
        .map(|c| f2_bits(c, field))
        .collect()
}

/// Exponent of `p` in `n ≠ 0`, read off a full factorization by trial division.
pub fn valuation_by_factoring(n: i64, p: i64) -> i64 {
    let mut n = n.unsigned_abs();
    let mut count = 0;
    let mut d = 2;
    while d * d <= n {
        while n.is_multiple_of(d) {
            if d == p as u64 {
                count += 1;
            }
            n /= d;
        }
        d += 1;
    }
    if n == p as u64 {
        count += 1;
    }
    count
}

/// Largest `k` with `p^k | n`, by repeated division.
pub fn valuation_by_division(n: &BigInt, p: i64) -> i64 {
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut count = 0;
    while (&n % &p).is_zero() {
        n /= &p;
        count += 1;
    }
    count
}

/// `|a/b|_p` from the printed form of an element.
pub fn padic_abs_oracle(field: ValuedField, x: &Elem, p: i64) -> Magnitude {
    let text = field.format_elem(x);
    let (a, b) = text.split_once('/').unwrap_or((&text, "1"));
    let (a, b): (BigInt, BigInt) = (a.parse().unwrap(), b.parse().unwrap());
    if a.is_zero() {
        return Magnitude::Zero;
    }
    Magnitude::pow(valuation_by_division(&b, p) - valuation_by_division(&a, p))
}

/// The weighted norm computed from the oracle absolute value.
pub fn padic_norm_oracle(space: &WeightedSpace, v: &[Elem], p: i64) -> Magnitude {
    v.iter()
        .zip(space.weights())
        .map(|(x, &w)| padic_abs_oracle(space.field(), x, p) * w)
        .max()
        .unwrap_or(Magnitude::Zero)
}

/// `max_j ρ(f e_j) / w_j` with oracle norms; `None` if a null column has a
/// non-null image.
pub fn padic_operator_norm_oracle(f: &BoundedMap, p: i64) -> Option<Magnitude> {
    let mut best = Magnitude::Zero;
    for (j, col) in f.matrix().columns().iter().enumerate() {
        let n = padic_norm_oracle(f.codomain(), col, p);
        let w = f.domain().weight(j);
        match n.checked_div(w) {
            Some(r) => best = best.max(r),
            None if n.is_zero() => {}
            None => return None,
        }
    }
    Some(best)
}

/// Every weight tuple of length `dim` drawn from `weights`, sorted tuples only.
pub fn sorted_weight_tuples(weights: &[W], dim: usize) -> Vec<Vec<W>> {
    let mut out = vec![vec![]];
    for _ in 0..dim {
        out = out
            .into_iter()
            .flat_map(|t: Vec<W>| {
                let last = t.last().copied();
                weights
                    .iter()
                    .filter(move |&&w| last.is_none_or(|l| l <= w))
                    .map(move |&w| {
                        let mut t = t.clone();
                        t.push(w);
                        t
                    })
            })
            .collect();
    }
    out
}

pub fn space_of(field: ValuedField, weights: &[W]) -> WeightedSpace {
    WeightedSpace::new(field, weights.iter().map(|&w| magnitude_of(w)).collect())
}
