use serde::{Deserialize, Serialize};

use super::{Category, CategoryError};
use crate::exec::Exec;

/// A commutative square `f ∘ u = v ∘ i` posed against the generator `i`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LiftingSquare<M> {
    pub generator: usize,
    pub u: M,
    pub v: M,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RlpVerdict<M> {
    pub holds: bool,
    pub squares_checked: u64,
    pub witness: Option<LiftingSquare<M>>,
}

/// A lifting square with a flag telling whether it has a diagonal filler.
pub(crate) type DecidedSquare<M> = (LiftingSquare<M>, bool);

/// Every commutative square from a member of `against` to `f`, each with a
/// flag telling whether a diagonal filler exists.
pub(crate) fn lifting_squares<C: Category + ?Sized>(
    c: &C,
    f: &C::Mor,
    against: &[C::Mor],
    budget: u64,
    exec: &Exec,
) -> Result<Vec<DecidedSquare<C::Mor>>, CategoryError> {
    let (x, y) = (c.source(f), c.target(f));
    let mut tasks = Vec::new();
    let mut needed: u64 = 0;
    for (gi, i) in against.iter().enumerate() {
        let (a, b) = (c.source(i), c.target(i));
        let us = c.hom(&a, &x)?;
        let vs = c.hom(&b, &y)?;
        let fillers = c.hom(&b, &x)?;
        needed = needed.saturating_add((us.len() as u64).saturating_mul(vs.len() as u64));
        if needed > budget {
            return Err(CategoryError::BudgetExceeded { needed, budget });
        }
        tasks.push((gi, i, us, vs, fillers));
    }
    let per_generator = exec.map(
        &tasks,
        |(gi, i, us, vs, fillers)| -> Result<Vec<_>, CategoryError> {
            let mut out = Vec::new();
            for u in us {
                let fu = c.compose(f, u)?;
                for v in vs {
                    if c.compose(v, i)? != fu {
                        continue;
                    }
                    let mut filled = false;
                    for d in fillers {
                        if &c.compose(d, i)? == u && &c.compose(f, d)? == v {
                            filled = true;
                            break;
                        }
                    }
                    out.push((
                        LiftingSquare {
                            generator: *gi,
                            u: u.clone(),
                            v: v.clone(),
                        },
                        filled,
                    ));
                }
            }
            Ok(out)
        },
    );
    let mut all = Vec::new();
    for r in per_generator {
        all.extend(r?);
    }
    Ok(all)
}

/// Whether every square from `against` to `f` has a filler. On failure the
/// witness is the first unfillable square in generator order.
pub fn has_rlp<C: Category + ?Sized>(
    c: &C,
    f: &C::Mor,
    against: &[C::Mor],
    budget: u64,
    exec: &Exec,
) -> Result<RlpVerdict<C::Mor>, CategoryError> {
    let squares = lifting_squares(c, f, against, budget, exec)?;
    let checked = squares.len() as u64;
    let witness = squares
        .into_iter()
        .find(|(_, filled)| !filled)
        .map(|(s, _)| s);
    Ok(RlpVerdict {
        holds: witness.is_none(),
        squares_checked: checked,
        witness,
    })
}

/// All admissible monos between objects of the instance's universe.
pub(crate) fn admissible_monos<C: Category + ?Sized>(
    c: &C,
    exec: &Exec,
) -> Result<Vec<C::Mor>, CategoryError> {
    let objects = c.objects()?;
    let pairs: Vec<(usize, usize)> = (0..objects.len())
        .flat_map(|a| (0..objects.len()).map(move |b| (a, b)))
        .collect();
    let per_pair = exec.map(&pairs, |&(a, b)| -> Result<Vec<C::Mor>, CategoryError> {
        let mut out = Vec::new();
        for m in c.hom(&objects[a], &objects[b])? {
            if c.is_admissible_mono(&m)? {
                out.push(m);
            }
        }
        Ok(out)
    });
    let mut all = Vec::new();
    for r in per_pair {
        all.extend(r?);
    }
    Ok(all)
}

/// `I → 0` has the right lifting property against every admissible mono of the
/// instance's universe. A bounded check, not a proof beyond those bounds.
pub fn is_injective_object<C: Category + ?Sized>(
    c: &C,
    object: &C::Obj,
    budget: u64,
    exec: &Exec,
) -> Result<RlpVerdict<C::Mor>, CategoryError> {
    let to_zero = c.zero_morphism(object, &c.zero_object());
    let monos = admissible_monos(c, exec)?;
    has_rlp(c, &to_zero, &monos, budget, exec)
}
