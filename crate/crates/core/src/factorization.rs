//! Finite-fuel small object argument: factor `f = r ∘ ℓ` with `ℓ` a composite
//! of pushouts of generators and `r` having the right lifting property
//! against them.

use serde::{Deserialize, Serialize};

use crate::category::{lifting_squares, Category, CategoryError, LiftingSquare};
use crate::exec::Exec;

/// A finite family of admissible monos.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratingSet<M> {
    /// Name of the class the generators' cokernels span.
    pub label: String,
    pub generators: Vec<M>,
}

impl<M: Clone + PartialEq> GeneratingSet<M> {
    /// Rejects any generator that is not an admissible mono of `c`.
    pub fn new<C: Category<Mor = M> + ?Sized>(
        c: &C,
        label: impl Into<String>,
        generators: Vec<M>,
    ) -> Result<GeneratingSet<M>, CategoryError> {
        for (k, g) in generators.iter().enumerate() {
            if !c.is_admissible_mono(g)? {
                return Err(CategoryError::Invalid(format!(
                    "generator {k} is not an admissible mono"
                )));
            }
        }
        Ok(GeneratingSet {
            label: label.into(),
            generators,
        })
    }

    /// Every admissible mono of an enumerable instance.
    pub fn admissible_monos<C: Category<Mor = M> + ?Sized>(
        c: &C,
        exec: &Exec,
    ) -> Result<GeneratingSet<M>, CategoryError> {
        let generators = crate::category::admissible_monos(c, exec)?;
        Ok(GeneratingSet {
            label: "all admissible monos".into(),
            generators,
        })
    }

    /// Admissible monos out of objects of dimension or size one, the
    /// enumerable instance's rank-one generators.
    pub fn rank_one<C: Category<Mor = M> + ?Sized>(
        c: &C,
        exec: &Exec,
        is_rank_one: impl Fn(&C::Obj) -> bool,
    ) -> Result<GeneratingSet<M>, CategoryError> {
        let generators = crate::category::admissible_monos(c, exec)?
            .into_iter()
            .filter(|m| is_rank_one(&c.source(m)))
            .collect();
        Ok(GeneratingSet {
            label: "rank-one admissible monos".into(),
            generators,
        })
    }

    /// `0 → Coker(g)` for each generator, one per distinct cokernel object.
    pub fn cokernel_objects<C: Category<Mor = M> + ?Sized>(&self, c: &C) -> GeneratingSet<M> {
        let zero = c.zero_object();
        let mut objects: Vec<C::Obj> = Vec::new();
        for g in &self.generators {
            let q = c.target(&c.cokernel(g));
            if !objects.contains(&q) {
                objects.push(q);
            }
        }
        GeneratingSet {
            label: format!("cokernels of {}", self.label),
            generators: objects.iter().map(|a| c.zero_morphism(&zero, a)).collect(),
        }
    }
}

/// One cell attachment: the pushout of `generator` along `square.u`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Step<O, M> {
    pub generator: M,
    pub square: LiftingSquare<M>,
    /// The current middle object `X_k`, mapped into the pushout.
    pub to_pushout: M,
    /// The generator's codomain, mapped into the pushout.
    pub from_generator: M,
    pub pushout_object: O,
    /// The right leg after this step, `P → Y`.
    pub right: M,
}

/// A replayable record of a factorization `morphism = right ∘ left`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FactorizationCertificate<O, M> {
    pub instance: String,
    pub version: String,
    pub morphism: M,
    pub generators: GeneratingSet<M>,
    pub fuel: usize,
    pub steps: Vec<Step<O, M>>,
    pub left: M,
    pub right: M,
    /// Whether `right` was verified to lift against every generator.
    pub complete: bool,
    /// Squares examined in the final lifting check.
    pub squares_checked: u64,
}

pub type Certificate<C> = FactorizationCertificate<<C as Category>::Obj, <C as Category>::Mor>;

#[derive(Debug, thiserror::Error)]
pub enum FactorError<O, M> {
    #[error("fuel exhausted after {} steps with unfilled lifting problems", .partial.steps.len())]
    FuelExhausted {
        partial: Box<FactorizationCertificate<O, M>>,
    },
    #[error(transparent)]
    Category(#[from] CategoryError),
}

pub type FactorResult<C, T> = Result<T, FactorError<<C as Category>::Obj, <C as Category>::Mor>>;

/// Bounds for a factorization run.
#[derive(Clone, Debug)]
pub struct FactorOptions {
    pub fuel: usize,
    /// Cap on lifting squares examined per round.
    pub budget: u64,
    pub exec: Exec,
}

impl FactorOptions {
    pub fn new(fuel: usize) -> FactorOptions {
        FactorOptions {
            fuel,
            budget: 50_000_000,
            exec: Exec::default(),
        }
    }
}

/// The first square without a filler, if any, and the number of squares examined.
type Unfilled<M> = (Option<LiftingSquare<M>>, u64);

fn first_unfilled<C: Category + ?Sized>(
    c: &C,
    right: &C::Mor,
    g: &GeneratingSet<C::Mor>,
    opts: &FactorOptions,
) -> Result<Unfilled<C::Mor>, CategoryError> {
    let squares = lifting_squares(c, right, &g.generators, opts.budget, &opts.exec)?;
    let checked = squares.len() as u64;
    let first = squares
        .into_iter()
        .filter(|(_, filled)| !filled)
        .map(|(s, _)| {
            let key = serde_json::to_string(&s).expect("squares serialize");
            (s.generator, key, s)
        })
        .min_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)))
        .map(|(_, _, s)| s);
    Ok((first, checked))
}

/// Attaches the cell for `square`, returning the step record.
fn attach<C: Category + ?Sized>(
    c: &C,
    right: &C::Mor,
    generator: &C::Mor,
    square: LiftingSquare<C::Mor>,
) -> Result<Step<C::Obj, C::Mor>, CategoryError> {
    let (from_generator, to_pushout) = c.pushout(generator, &square.u)?;
    let new_right = c
        .pushout_mediator(generator, &square.u, &square.v, right)?
        .ok_or_else(|| CategoryError::Invalid("lifting square does not commute".into()))?;
    Ok(Step {
        generator: generator.clone(),
        pushout_object: c.target(&to_pushout),
        square,
        to_pushout,
        from_generator,
        right: new_right,
    })
}

/// Factors `f` by repeatedly pushing out a generator along the first unfilled
/// lifting square, in order of generator index and then serialized square.
pub fn factor_map<C: Category + ?Sized>(
    c: &C,
    f: &C::Mor,
    g: &GeneratingSet<C::Mor>,
    opts: &FactorOptions,
) -> FactorResult<C, Certificate<C>> {
    let mut left = c.identity(&c.source(f));
    let mut right = f.clone();
    let mut steps = Vec::new();
    loop {
        let (square, checked) = first_unfilled(c, &right, g, opts)?;
        let done = square.is_none();
        if done || steps.len() >= opts.fuel {
            let cert = FactorizationCertificate {
                instance: c.name(),
                version: env!("CARGO_PKG_VERSION").to_string(),
                morphism: f.clone(),
                generators: g.clone(),
                fuel: opts.fuel,
                steps,
                left,
                right,
                complete: done,
                squares_checked: checked,
            };
            return if done {
                Ok(cert)
            } else {
                Err(FactorError::FuelExhausted {
                    partial: Box::new(cert),
                })
            };
        }
        let square = square.expect("checked above");
        let generator = &g.generators[square.generator];
        let step = attach(c, &right, generator, square)?;
        left = c.compose(&step.to_pushout, &left)?;
        right = step.right.clone();
        steps.push(step);
    }
}

/// Where a replay first disagreed with the certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ReplayOutcome {
    Exact,
    StepMismatch { step: usize },
    LegMismatch,
    NotAFactorization,
    Incomplete,
}

/// Recomputes every step from the recorded squares and compares the result
/// with the certificate as serialized JSON, so agreement is bit-exact. A
/// complete certificate also has its final lifting check re-run.
pub fn replay_certificate<C: Category + ?Sized>(
    c: &C,
    cert: &Certificate<C>,
    opts: &FactorOptions,
) -> Result<ReplayOutcome, CategoryError> {
    let mut left = c.identity(&c.source(&cert.morphism));
    let mut right = cert.morphism.clone();
    for (k, recorded) in cert.steps.iter().enumerate() {
        let gi = recorded.square.generator;
        if cert.generators.generators.get(gi) != Some(&recorded.generator) {
            return Ok(ReplayOutcome::StepMismatch { step: k });
        }
        let step = match attach(c, &right, &recorded.generator, recorded.square.clone()) {
            Ok(s) => s,
            Err(CategoryError::Invalid(_)) => return Ok(ReplayOutcome::StepMismatch { step: k }),
            Err(e) => return Err(e),
        };
        if json(&step) != json(recorded) {
            return Ok(ReplayOutcome::StepMismatch { step: k });
        }
        left = c.compose(&step.to_pushout, &left)?;
        right = step.right;
    }
    if json(&left) != json(&cert.left) || json(&right) != json(&cert.right) {
        return Ok(ReplayOutcome::LegMismatch);
    }
    if c.compose(&right, &left)? != cert.morphism {
        return Ok(ReplayOutcome::NotAFactorization);
    }
    if cert.complete {
        let (square, checked) = first_unfilled(c, &right, &cert.generators, opts)?;
        if square.is_some() || checked != cert.squares_checked {
            return Ok(ReplayOutcome::Incomplete);
        }
    }
    Ok(ReplayOutcome::Exact)
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("values serialize")
}

/// Factors `X → 0`; the left leg is an admissible mono into an object whose
/// map to zero lifts against every generator.
pub fn special_preenvelope<C: Category + ?Sized>(
    c: &C,
    x: &C::Obj,
    g: &GeneratingSet<C::Mor>,
    opts: &FactorOptions,
) -> FactorResult<C, (C::Mor, Certificate<C>)> {
    let f = c.zero_morphism(x, &c.zero_object());
    let cert = factor_map(c, &f, g, opts)?;
    Ok((cert.left.clone(), cert))
}

/// Factors `0 → X` against `0 → A'` for every generator cokernel `A'`; the
/// right leg `A → X` makes `Hom(A', A) → Hom(A', X)` surjective.
pub fn precover<C: Category + ?Sized>(
    c: &C,
    x: &C::Obj,
    g: &GeneratingSet<C::Mor>,
    opts: &FactorOptions,
) -> FactorResult<C, (C::Mor, Certificate<C>)> {
    let f = c.zero_morphism(&c.zero_object(), x);
    let cert = factor_map(c, &f, &g.cokernel_objects(c), opts)?;
    Ok((cert.right.clone(), cert))
}
