//! Finite pointed sets. The object `n` is `{0, 1, …, n}` with basepoint `0`.

use serde::{Deserialize, Serialize};

use crate::category::{Category, CategoryError, Strictness};

/// A basepoint-preserving map, stored as the images of `0..=source`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "MapRepr", into = "MapRepr")]
pub struct PointedMap {
    source: usize,
    target: usize,
    images: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MapRepr {
    source: usize,
    target: usize,
    /// Images of the non-base elements `1..=source`.
    map: Vec<usize>,
}

impl TryFrom<MapRepr> for PointedMap {
    type Error = String;

    fn try_from(r: MapRepr) -> Result<Self, Self::Error> {
        PointedMap::new(r.source, r.target, r.map)
    }
}

impl From<PointedMap> for MapRepr {
    fn from(f: PointedMap) -> Self {
        MapRepr {
            source: f.source,
            target: f.target,
            map: f.images[1..].to_vec(),
        }
    }
}

impl PointedMap {
    /// `map[i]` is the image of the element `i + 1`.
    pub fn new(source: usize, target: usize, map: Vec<usize>) -> Result<PointedMap, String> {
        if map.len() != source {
            return Err(format!(
                "map has {} entries, source has {} non-base elements",
                map.len(),
                source
            ));
        }
        if let Some(bad) = map.iter().find(|&&y| y > target) {
            return Err(format!(
                "image {bad} is outside the target {{0..={target}}}"
            ));
        }
        let mut images = Vec::with_capacity(source + 1);
        images.push(0);
        images.extend(map);
        Ok(PointedMap {
            source,
            target,
            images,
        })
    }

    pub fn identity(n: usize) -> PointedMap {
        PointedMap {
            source: n,
            target: n,
            images: (0..=n).collect(),
        }
    }

    pub fn zero(source: usize, target: usize) -> PointedMap {
        PointedMap {
            source,
            target,
            images: vec![0; source + 1],
        }
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    /// `self ∘ f`.
    pub fn after(&self, f: &PointedMap) -> Option<PointedMap> {
        (f.target == self.source).then(|| PointedMap {
            source: f.source,
            target: self.target,
            images: f.images.iter().map(|&y| self.images[y]).collect(),
        })
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target + 1];
        self.images
            .iter()
            .all(|&y| !std::mem::replace(&mut seen[y], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target + 1];
        for &y in &self.images {
            hit[y] = true;
        }
        hit.into_iter().all(|h| h)
    }

    /// Injective on the elements not sent to the basepoint.
    pub fn is_injective_off_zero_fiber(&self) -> bool {
        let mut seen = vec![false; self.target + 1];
        self.images
            .iter()
            .filter(|&&y| y != 0)
            .all(|&y| !std::mem::replace(&mut seen[y], true))
    }

    pub fn is_bijective(&self) -> bool {
        self.source == self.target && self.is_injective()
    }
}

/// Closed-form strictness: strict monos are the injections, strict epis the
/// surjections that are injective away from the fiber over the basepoint.
pub fn pointed_strictness(f: &PointedMap) -> Strictness {
    Strictness::from_flags(
        f.is_injective(),
        f.is_surjective() && f.is_injective_off_zero_fiber(),
    )
}

/// All finite pointed sets with at most `max_size` non-base elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FinPointedSet {
    pub max_size: usize,
    /// When false, strictness is always computed from kernels and cokernels.
    pub native: bool,
}

impl FinPointedSet {
    pub fn new(max_size: usize) -> FinPointedSet {
        FinPointedSet {
            max_size,
            native: true,
        }
    }

    /// The same category, but with the closed-form strictness test switched off.
    pub fn generic(max_size: usize) -> FinPointedSet {
        FinPointedSet {
            max_size,
            native: false,
        }
    }

    /// All maps `{0..=n} → {0..=m}`, in lexicographic order of images.
    pub fn all_maps(n: usize, m: usize) -> Vec<PointedMap> {
        let mut out = Vec::new();
        let mut digits = vec![0usize; n];
        loop {
            out.push(PointedMap::new(n, m, digits.clone()).expect("digits are in range"));
            // increment the last position first so the output is lexicographic
            let mut k = n;
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                if digits[k] < m {
                    digits[k] += 1;
                    digits[k + 1..].iter_mut().for_each(|d| *d = 0);
                    break;
                }
            }
        }
    }
}

impl Category for FinPointedSet {
    type Obj = usize;
    type Mor = PointedMap;

    fn name(&self) -> String {
        format!("FinPointedSet(<= {} non-base elements)", self.max_size)
    }

    fn zero_object(&self) -> usize {
        0
    }

    fn source(&self, f: &PointedMap) -> usize {
        f.source
    }

    fn target(&self, f: &PointedMap) -> usize {
        f.target
    }

    fn identity(&self, x: &usize) -> PointedMap {
        PointedMap::identity(*x)
    }

    fn zero_morphism(&self, x: &usize, y: &usize) -> PointedMap {
        PointedMap::zero(*x, *y)
    }

    fn compose(&self, g: &PointedMap, f: &PointedMap) -> Result<PointedMap, CategoryError> {
        g.after(f).ok_or(CategoryError::NotComposable)
    }

    /// The fiber over the basepoint, listed in increasing order.
    fn kernel(&self, f: &PointedMap) -> PointedMap {
        let fiber: Vec<usize> = (1..=f.source).filter(|&x| f.apply(x) == 0).collect();
        PointedMap::new(fiber.len(), f.source, fiber).expect("fiber elements lie in the source")
    }

    /// The target with the image collapsed to the basepoint.
    fn cokernel(&self, f: &PointedMap) -> PointedMap {
        let mut in_image = vec![false; f.target + 1];
        for &y in &f.images {
            in_image[y] = true;
        }
        let mut next = 0;
        let map: Vec<usize> = (1..=f.target)
            .map(|y| {
                if in_image[y] {
                    0
                } else {
                    next += 1;
                    next
                }
            })
            .collect();
        PointedMap::new(f.target, next, map).expect("classes are numbered in range")
    }

    /// Pairs `(x, z)` with `f x = g z`, in lexicographic order after `(0, 0)`.
    fn pullback(
        &self,
        f: &PointedMap,
        g: &PointedMap,
    ) -> Result<(PointedMap, PointedMap), CategoryError> {
        if f.target != g.target {
            return Err(CategoryError::NotComposable);
        }
        let pairs: Vec<(usize, usize)> = (0..=f.source)
            .flat_map(|x| (0..=g.source).map(move |z| (x, z)))
            .filter(|&(x, z)| (x, z) != (0, 0) && f.apply(x) == g.apply(z))
            .collect();
        let n = pairs.len();
        let to_x =
            PointedMap::new(n, f.source, pairs.iter().map(|p| p.0).collect()).expect("in range");
        let to_z =
            PointedMap::new(n, g.source, pairs.iter().map(|p| p.1).collect()).expect("in range");
        Ok((to_x, to_z))
    }

    /// `X ∨ Z` modulo `i(k) ~ g(k)`, classes numbered by first appearance
    /// (elements of `X` before elements of `Z`).
    fn pushout(
        &self,
        i: &PointedMap,
        g: &PointedMap,
    ) -> Result<(PointedMap, PointedMap), CategoryError> {
        if i.source != g.source {
            return Err(CategoryError::NotComposable);
        }
        // X occupies 0..=|X|, Z occupies |X|+1..; both basepoints join the class of 0.
        let off = i.target + 1;
        let mut uf = UnionFind::new(off + g.target + 1);
        uf.union(0, off);
        for k in 0..=i.source {
            uf.union(i.apply(k), off + g.apply(k));
        }
        let mut label = vec![usize::MAX; off + g.target + 1];
        let root0 = uf.find(0);
        label[root0] = 0;
        let mut next = 0;
        let mut class_of = |e: usize, uf: &mut UnionFind| -> usize {
            let r = uf.find(e);
            if label[r] == usize::MAX {
                next += 1;
                label[r] = next;
            }
            label[r]
        };
        let xs: Vec<usize> = (1..=i.target).map(|x| class_of(x, &mut uf)).collect();
        let zs: Vec<usize> = (1..=g.target).map(|z| class_of(off + z, &mut uf)).collect();
        let from_x = PointedMap::new(i.target, next, xs).expect("in range");
        let from_z = PointedMap::new(g.target, next, zs).expect("in range");
        Ok((from_x, from_z))
    }

    /// Each class of the pushout is sent where any of its representatives goes.
    fn pushout_mediator(
        &self,
        i: &PointedMap,
        g: &PointedMap,
        a: &PointedMap,
        b: &PointedMap,
    ) -> Result<Option<PointedMap>, CategoryError> {
        if a.target != b.target || a.source != i.target || b.source != g.target {
            return Err(CategoryError::NotComposable);
        }
        if a.after(i) != b.after(g) {
            return Ok(None);
        }
        let (px, pz) = self.pushout(i, g)?;
        let mut images = vec![0; px.target + 1];
        for x in 1..=px.source {
            images[px.apply(x)] = a.apply(x);
        }
        for z in 1..=pz.source {
            images[pz.apply(z)] = b.apply(z);
        }
        let m = PointedMap::new(px.target, a.target, images[1..].to_vec())
            .map_err(CategoryError::Invalid)?;
        Ok(Some(m))
    }

    fn objects(&self) -> Result<Vec<usize>, CategoryError> {
        Ok((0..=self.max_size).collect())
    }

    fn hom(&self, x: &usize, y: &usize) -> Result<Vec<PointedMap>, CategoryError> {
        Ok(FinPointedSet::all_maps(*x, *y))
    }

    /// `u(q(x)) = f(x)`; elements outside the image of `q` go to the basepoint.
    fn factor_through_epi(
        &self,
        q: &PointedMap,
        f: &PointedMap,
    ) -> Result<Option<PointedMap>, CategoryError> {
        if q.source != f.source {
            return Err(CategoryError::NotComposable);
        }
        let mut u = vec![None; q.target + 1];
        for x in 0..=q.source {
            match u[q.apply(x)] {
                None => u[q.apply(x)] = Some(f.apply(x)),
                Some(v) if v != f.apply(x) => return Ok(None),
                Some(_) => {}
            }
        }
        let map = (1..=q.target).map(|y| u[y].unwrap_or(0)).collect();
        Ok(Some(
            PointedMap::new(q.target, f.target, map).expect("in range"),
        ))
    }

    /// `k(v(t)) = f(t)`, choosing the least preimage.
    fn factor_through_mono(
        &self,
        k: &PointedMap,
        f: &PointedMap,
    ) -> Result<Option<PointedMap>, CategoryError> {
        if k.target != f.target {
            return Err(CategoryError::NotComposable);
        }
        let mut map = Vec::with_capacity(f.source);
        for t in 1..=f.source {
            let y = f.apply(t);
            match (0..=k.source).find(|&a| k.apply(a) == y) {
                Some(a) => map.push(a),
                None => return Ok(None),
            }
        }
        Ok(Some(
            PointedMap::new(f.source, k.source, map).expect("in range"),
        ))
    }

    fn is_iso(&self, f: &PointedMap) -> Result<bool, CategoryError> {
        Ok(f.is_bijective())
    }

    fn native_strictness(&self, f: &PointedMap) -> Option<Strictness> {
        self.native.then(|| pointed_strictness(f))
    }

    fn describe_bounds(&self) -> serde_json::Value {
        serde_json::json!({ "max_non_base_elements": self.max_size })
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}
