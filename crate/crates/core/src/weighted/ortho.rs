use serde::{Serialize, Serializer};

use super::WeightedSpace;
use crate::scalars::{Elem, Magnitude};

/// An ultrametric-orthogonal presentation of a subspace.
///
/// Every vector owns a pivot column where all other vectors (including the null
/// ones) vanish, and its norm is attained at that pivot. Null vectors have norm
/// zero and their own exclusive pivots, chosen among zero-weight columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthoBasis {
    ambient: WeightedSpace,
    vectors: Vec<Vec<Elem>>,
    pivots: Vec<usize>,
    null_vectors: Vec<Vec<Elem>>,
    null_pivots: Vec<usize>,
}

/// Global-max scaled-pivot elimination.
///
/// Each round picks, among unprocessed rows and non-pivot columns, the entry
/// maximizing `|x|·w` (ties: lowest column, then lowest row), and clears that
/// column in every other row. Because the chosen maximum never increases from
/// one round to the next, each processed row keeps its norm at its pivot.
pub fn orthogonalize(space: &WeightedSpace, generators: &[Vec<Elem>]) -> OrthoBasis {
    let field = space.field();
    let n = space.dim();
    let mut rows: Vec<Vec<Elem>> = generators.to_vec();
    for r in &rows {
        assert_eq!(r.len(), n, "generator length does not match the space");
    }
    let mut processed = vec![false; rows.len()];
    let mut is_pivot = vec![false; n];
    let mut chosen: Vec<(usize, usize)> = Vec::new();

    loop {
        let mut best: Option<(Magnitude, usize, usize)> = None;
        for c in (0..n).filter(|&c| !is_pivot[c] && !space.weight(c).is_zero()) {
            for (r, row) in rows.iter().enumerate() {
                if processed[r] || row[c].is_zero() {
                    continue;
                }
                let key = field.abs(&row[c]) * space.weight(c);
                if best.as_ref().is_none_or(|(k, _, _)| key > *k) {
                    best = Some((key, r, c));
                }
            }
        }
        let Some((_, r, c)) = best else { break };
        processed[r] = true;
        is_pivot[c] = true;
        chosen.push((r, c));
        eliminate(&mut rows, r, c);
    }

    // Leftover rows are supported on zero-weight, non-pivot columns only.
    let mut null_chosen: Vec<(usize, usize)> = Vec::new();
    for c in 0..n {
        if is_pivot[c] {
            continue;
        }
        let Some(r) = (0..rows.len()).find(|&r| !processed[r] && !rows[r][c].is_zero()) else {
            continue;
        };
        processed[r] = true;
        is_pivot[c] = true;
        null_chosen.push((r, c));
        eliminate(&mut rows, r, c);
    }

    let mut vecs: Vec<(usize, Vec<Elem>)> =
        chosen.iter().map(|&(r, c)| (c, rows[r].clone())).collect();
    vecs.sort_by_key(|(c, _)| *c);
    let mut nulls: Vec<(usize, Vec<Elem>)> = null_chosen
        .iter()
        .map(|&(r, c)| (c, rows[r].clone()))
        .collect();
    nulls.sort_by_key(|(c, _)| *c);

    let basis = OrthoBasis {
        ambient: space.clone(),
        pivots: vecs.iter().map(|(c, _)| *c).collect(),
        vectors: vecs.into_iter().map(|(_, v)| v).collect(),
        null_pivots: nulls.iter().map(|(c, _)| *c).collect(),
        null_vectors: nulls.into_iter().map(|(_, v)| v).collect(),
    };
    debug_assert_eq!(basis.check_certificate(), Ok(()));
    basis
}

/// Clears column `c` from every row other than `r`.
fn eliminate(rows: &mut [Vec<Elem>], r: usize, c: usize) {
    let pivot_row = rows[r].clone();
    let inv = pivot_row[c].inv().expect("pivot entry is nonzero");
    for (i, row) in rows.iter_mut().enumerate() {
        if i == r || row[c].is_zero() {
            continue;
        }
        let t = &row[c] * &inv;
        for (x, p) in row.iter_mut().zip(&pivot_row) {
            if !p.is_zero() {
                *x = &*x - &(&t * p);
            }
        }
    }
}

/// `inf_{n ∈ sub} ρ(m + n)`, attained by the residual of `m`.
pub fn quotient_norm(sub: &OrthoBasis, m: &[Elem]) -> Magnitude {
    sub.ambient.norm(&sub.residual(m))
}

impl OrthoBasis {
    pub fn ambient(&self) -> &WeightedSpace {
        &self.ambient
    }

    pub fn vectors(&self) -> &[Vec<Elem>] {
        &self.vectors
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn null_vectors(&self) -> &[Vec<Elem>] {
        &self.null_vectors
    }

    pub fn null_pivots(&self) -> &[usize] {
        &self.null_pivots
    }

    /// Dimension of the spanned subspace.
    pub fn rank(&self) -> usize {
        self.vectors.len() + self.null_vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rank() == 0
    }

    pub fn norms(&self) -> Vec<Magnitude> {
        self.vectors.iter().map(|v| self.ambient.norm(v)).collect()
    }

    /// All basis members with their pivots and norms, sorted by pivot column.
    pub fn members(&self) -> Vec<(usize, Vec<Elem>, Magnitude)> {
        let mut all: Vec<(usize, Vec<Elem>, Magnitude)> = self
            .pivots
            .iter()
            .zip(&self.vectors)
            .map(|(&p, v)| (p, v.clone(), self.ambient.norm(v)))
            .chain(
                self.null_pivots
                    .iter()
                    .zip(&self.null_vectors)
                    .map(|(&p, v)| (p, v.clone(), Magnitude::Zero)),
            )
            .collect();
        all.sort_by_key(|(p, _, _)| *p);
        all
    }

    /// The subspace as a weighted space: one coordinate per member, weighted by
    /// its norm, in pivot order.
    pub fn as_space(&self) -> WeightedSpace {
        WeightedSpace::new(
            self.ambient.field(),
            self.members().into_iter().map(|(_, _, n)| n).collect(),
        )
    }

    /// `m` with all vector pivots cleared. Its norm is the quotient norm.
    pub fn reduce(&self, m: &[Elem]) -> Vec<Elem> {
        let mut out = m.to_vec();
        for (&p, v) in self.pivots.iter().zip(&self.vectors) {
            clear(&mut out, v, p);
        }
        out
    }

    /// `m` with every pivot cleared: the canonical representative of `m + span`.
    pub fn residual(&self, m: &[Elem]) -> Vec<Elem> {
        let mut out = self.reduce(m);
        for (&p, v) in self.null_pivots.iter().zip(&self.null_vectors) {
            clear(&mut out, v, p);
        }
        out
    }

    pub fn contains(&self, m: &[Elem]) -> bool {
        self.residual(m).iter().all(Elem::is_zero)
    }

    /// Coefficients of `m` along [`members`](Self::members), or `None` when `m`
    /// is not in the span.
    pub fn coordinates(&self, m: &[Elem]) -> Option<Vec<Elem>> {
        let mut rest = m.to_vec();
        let mut coeffs: Vec<(usize, Elem)> = Vec::with_capacity(self.rank());
        for (&p, v) in self
            .pivots
            .iter()
            .zip(&self.vectors)
            .chain(self.null_pivots.iter().zip(&self.null_vectors))
        {
            let a = &rest[p] * &v[p].inv().expect("pivot entry is nonzero");
            clear(&mut rest, v, p);
            coeffs.push((p, a));
        }
        if !rest.iter().all(Elem::is_zero) {
            return None;
        }
        coeffs.sort_by_key(|(p, _)| *p);
        Some(coeffs.into_iter().map(|(_, a)| a).collect())
    }

    /// Structural certificate: exclusive pivots, norm attained at each pivot,
    /// nonzero vector norms, and null vectors of norm zero.
    pub fn check_certificate(&self) -> Result<(), String> {
        let space = &self.ambient;
        let field = space.field();
        let all_pivots: Vec<usize> = self
            .pivots
            .iter()
            .chain(&self.null_pivots)
            .copied()
            .collect();
        let all_vectors: Vec<&Vec<Elem>> = self.vectors.iter().chain(&self.null_vectors).collect();
        for (j, &p) in all_pivots.iter().enumerate() {
            if all_vectors[j][p].is_zero() {
                return Err(format!("member {j} vanishes at its pivot {p}"));
            }
            for (k, v) in all_vectors.iter().enumerate() {
                if k != j && !v[p].is_zero() {
                    return Err(format!("member {k} is nonzero at pivot {p} of member {j}"));
                }
            }
        }
        for (j, (&p, v)) in self.pivots.iter().zip(&self.vectors).enumerate() {
            let at_pivot = field.abs(&v[p]) * space.weight(p);
            if at_pivot.is_zero() {
                return Err(format!("vector {j} has norm zero"));
            }
            if space.norm(v) != at_pivot {
                return Err(format!("vector {j} does not attain its norm at pivot {p}"));
            }
        }
        for (j, v) in self.null_vectors.iter().enumerate() {
            if !space.norm(v).is_zero() {
                return Err(format!("null vector {j} has nonzero norm"));
            }
        }
        Ok(())
    }

    /// Checks `ρ(Σ a_j v_j) = max_j |a_j|·ρ(v_j)` for one coefficient tuple over
    /// the members in pivot order.
    pub fn max_formula_holds(&self, coeffs: &[Elem]) -> bool {
        let members = self.members();
        assert_eq!(coeffs.len(), members.len());
        let field = self.ambient.field();
        let mut sum = self.ambient.zero_vector();
        let mut expected = Magnitude::Zero;
        for (a, (_, v, n)) in coeffs.iter().zip(&members) {
            for (s, x) in sum.iter_mut().zip(v) {
                *s = &*s + &(a * x);
            }
            expected = expected.max(field.abs(a) * *n);
        }
        self.ambient.norm(&sum) == expected
    }
}

fn clear(out: &mut [Elem], v: &[Elem], p: usize) {
    if out[p].is_zero() {
        return;
    }
    let t = &out[p] * &v[p].inv().expect("pivot entry is nonzero");
    for (x, y) in out.iter_mut().zip(v) {
        if !y.is_zero() {
            *x = &*x - &(&t * y);
        }
    }
}

#[derive(Serialize)]
struct BasisRepr {
    ambient: WeightedSpace,
    vectors: Vec<Vec<String>>,
    pivots: Vec<usize>,
    norms: Vec<Magnitude>,
    null_vectors: Vec<Vec<String>>,
    null_pivots: Vec<usize>,
}

impl Serialize for OrthoBasis {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let field = self.ambient.field();
        let fmt = |vs: &[Vec<Elem>]| -> Vec<Vec<String>> {
            vs.iter()
                .map(|v| v.iter().map(|x| field.format_elem(x)).collect())
                .collect()
        };
        BasisRepr {
            ambient: self.ambient.clone(),
            vectors: fmt(&self.vectors),
            pivots: self.pivots.clone(),
            norms: self.norms(),
            null_vectors: fmt(&self.null_vectors),
            null_pivots: self.null_pivots.clone(),
        }
        .serialize(serializer)
    }
}
