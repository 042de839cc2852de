use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{Category, CategoryError};
use crate::exec::Exec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    IdentitiesAdmissible,
    MonosCompose,
    EpisCompose,
    EpiPullbackAlongMono,
    MonoPushoutAlongEpi,
    EpiPullbackTotal,
    MonoPushoutTotal,
    Associativity,
    KernelUniversal,
    CokernelUniversal,
    LeftObscure,
    RightObscure,
    StrongLeftObscure,
    StrongRightObscure,
    SplitAdmissible,
}

impl Axiom {
    pub const PROTO_EXACT: [Axiom; 10] = [
        Axiom::IdentitiesAdmissible,
        Axiom::MonosCompose,
        Axiom::EpisCompose,
        Axiom::EpiPullbackAlongMono,
        Axiom::MonoPushoutAlongEpi,
        Axiom::EpiPullbackTotal,
        Axiom::MonoPushoutTotal,
        Axiom::Associativity,
        Axiom::KernelUniversal,
        Axiom::CokernelUniversal,
    ];

    pub const OBSCURE: [Axiom; 5] = [
        Axiom::LeftObscure,
        Axiom::RightObscure,
        Axiom::StrongLeftObscure,
        Axiom::StrongRightObscure,
        Axiom::SplitAdmissible,
    ];

    fn index(self) -> u64 {
        self as u64
    }
}

/// A concrete diagram violating an axiom: the named morphisms, serialized.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub axiom: Axiom,
    pub maps: BTreeMap<String, Value>,
}

impl Witness {
    pub fn new<M: Serialize>(axiom: Axiom, maps: &[(&str, &M)]) -> Witness {
        let maps = maps
            .iter()
            .map(|(k, m)| {
                (
                    k.to_string(),
                    serde_json::to_value(m).expect("morphisms serialize"),
                )
            })
            .collect();
        Witness { axiom, maps }
    }

    fn get<M: serde::de::DeserializeOwned>(&self, key: &str) -> Result<M, CategoryError> {
        let v = self
            .maps
            .get(key)
            .ok_or_else(|| CategoryError::Invalid(format!("witness lacks `{key}`")))?;
        serde_json::from_value(v.clone())
            .map_err(|e| CategoryError::Invalid(format!("witness `{key}`: {e}")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    PassSampled,
    Fail { witness: Witness },
    Skipped { reason: String },
}

impl Verdict {
    pub fn passed(&self) -> bool {
        matches!(self, Verdict::Pass | Verdict::PassSampled)
    }

    pub fn failed(&self) -> bool {
        matches!(self, Verdict::Fail { .. })
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Fail { witness } => Some(witness),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Expectation {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub axiom: Axiom,
    pub verdict: Verdict,
    pub diagrams_checked: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expectation: Option<Expectation>,
}

impl CheckResult {
    /// `None` when no expectation was recorded.
    pub fn meets_expectation(&self) -> Option<bool> {
        self.expectation.map(|e| match e {
            Expectation::Pass => self.verdict.passed(),
            Expectation::Fail => self.verdict.failed(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AuditReport {
    pub instance: String,
    pub version: String,
    pub mode: String,
    pub bounds: Value,
    pub checks: Vec<CheckResult>,
}

impl AuditReport {
    pub fn check(&self, axiom: Axiom) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.axiom == axiom)
    }

    pub fn all_pass(&self) -> bool {
        self.checks
            .iter()
            .all(|c| c.verdict.passed() || matches!(c.verdict, Verdict::Skipped { .. }))
    }

    /// Records what each listed axiom is expected to do.
    pub fn expect(&mut self, expected: &[(Axiom, Expectation)]) {
        for (axiom, e) in expected {
            if let Some(c) = self.checks.iter_mut().find(|c| c.axiom == *axiom) {
                c.expectation = Some(*e);
            }
        }
    }

    pub fn expectations_met(&self) -> bool {
        self.checks
            .iter()
            .all(|c| c.meets_expectation().unwrap_or(true))
    }

    pub fn summary(&self) -> String {
        let mut out = format!("{} ({}, v{})\n", self.instance, self.mode, self.version);
        for c in &self.checks {
            let v = match &c.verdict {
                Verdict::Pass => "pass".to_string(),
                Verdict::PassSampled => "pass (sampled)".to_string(),
                Verdict::Fail { .. } => "FAIL".to_string(),
                Verdict::Skipped { reason } => format!("skipped: {reason}"),
            };
            let axiom = serde_json::to_value(c.axiom).expect("axiom serializes");
            let e = match c.meets_expectation() {
                Some(true) => " [as expected]",
                Some(false) => " [UNEXPECTED]",
                None => "",
            };
            out.push_str(&format!(
                "  {:<26} {:<16} {:>10} diagrams{}\n",
                axiom.as_str().unwrap_or("?"),
                v,
                c.diagrams_checked,
                e
            ));
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditBounds {
    /// Enumerations needing more diagrams than this abort with `BudgetExceeded`.
    pub max_diagrams: u64,
    /// Diagrams per sampled check.
    pub samples: usize,
    pub seed: u64,
}

pub const DEFAULT_SEED: u64 = 0x005E_ED0F_2A11;

impl Default for AuditBounds {
    fn default() -> Self {
        AuditBounds {
            max_diagrams: 50_000_000,
            samples: 1000,
            seed: DEFAULT_SEED,
        }
    }
}

/// Random diagrams for instances too large to enumerate.
///
/// Methods receive a per-diagram generator; implementations must draw only
/// from it so audits stay reproducible.
pub trait DiagramSampler<C: Category + ?Sized>: Sync {
    fn object(&self, rng: &mut ChaCha8Rng) -> C::Obj;
    fn morphism_from(&self, rng: &mut ChaCha8Rng, x: &C::Obj) -> C::Mor;
    fn morphism_into(&self, rng: &mut ChaCha8Rng, y: &C::Obj) -> C::Mor;
    fn admissible_mono_from(&self, rng: &mut ChaCha8Rng, x: &C::Obj) -> C::Mor;
    fn admissible_mono_into(&self, rng: &mut ChaCha8Rng, y: &C::Obj) -> C::Mor;
    fn admissible_epi_from(&self, rng: &mut ChaCha8Rng, x: &C::Obj) -> C::Mor;
    fn admissible_epi_into(&self, rng: &mut ChaCha8Rng, y: &C::Obj) -> C::Mor;
    /// `(i, j)` with `j ∘ i` an admissible mono.
    fn left_obscure_pair(&self, rng: &mut ChaCha8Rng) -> (C::Mor, C::Mor);
    /// `(j, e)` with `e ∘ j` an admissible epi.
    fn right_obscure_pair(&self, rng: &mut ChaCha8Rng) -> (C::Mor, C::Mor);
}

/// An audit run: instance, bounds, and execution mode.
pub struct Audit<'a, C: Category + ?Sized> {
    pub category: &'a C,
    pub bounds: AuditBounds,
    pub exec: Exec,
}

type Outcome = Result<Option<Witness>, CategoryError>;

/// Proto-exact axioms (identities, composition, pullback/pushout stability and
/// their total variants) plus spot checks of associativity and of the kernel
/// and cokernel universal properties. Exhaustive when the instance enumerates,
/// sampled when a sampler is given, `NotEnumerable` otherwise.
pub fn audit_axioms<C: Category + ?Sized>(
    audit: &Audit<'_, C>,
    sampler: Option<&dyn DiagramSampler<C>>,
) -> Result<AuditReport, CategoryError> {
    audit_checks(audit, sampler, &Axiom::PROTO_EXACT)
}

/// Left, right, strong-left and strong-right obscure axioms, and admissibility
/// of split morphisms.
pub fn audit_obscure<C: Category + ?Sized>(
    audit: &Audit<'_, C>,
    sampler: Option<&dyn DiagramSampler<C>>,
) -> Result<AuditReport, CategoryError> {
    audit_checks(audit, sampler, &Axiom::OBSCURE)
}

pub fn audit_checks<C: Category + ?Sized>(
    audit: &Audit<'_, C>,
    sampler: Option<&dyn DiagramSampler<C>>,
    axioms: &[Axiom],
) -> Result<AuditReport, CategoryError> {
    let c = audit.category;
    let (mode, checks) = match c.objects() {
        Ok(objects) => {
            let u = Universe::build(c, objects, &audit.exec)?;
            let checks = axioms
                .iter()
                .map(|&a| u.check(audit, a))
                .collect::<Result<Vec<_>, _>>()?;
            ("exhaustive", checks)
        }
        Err(CategoryError::NotEnumerable(_)) => {
            let Some(s) = sampler else {
                return Err(CategoryError::NotEnumerable(
                    "objects, and no sampler was supplied",
                ));
            };
            let checks = axioms
                .iter()
                .map(|&a| sampled_check(audit, s, a))
                .collect::<Result<Vec<_>, _>>()?;
            ("sampled", checks)
        }
        Err(e) => return Err(e),
    };
    Ok(AuditReport {
        instance: c.name(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        mode: mode.to_string(),
        bounds: serde_json::json!({
            "instance": c.describe_bounds(),
            "max_diagrams": audit.bounds.max_diagrams,
            "samples": audit.bounds.samples,
            "seed": audit.bounds.seed,
        }),
        checks,
    })
}

/// Every object and hom-set of the instance, with admissibility precomputed.
struct Universe<'a, C: Category + ?Sized> {
    c: &'a C,
    objects: Vec<C::Obj>,
    homs: Vec<Vec<Vec<C::Mor>>>,
    mono: Vec<Vec<Vec<bool>>>,
    epi: Vec<Vec<Vec<bool>>>,
}

impl<'a, C: Category + ?Sized> Universe<'a, C> {
    fn build(c: &'a C, objects: Vec<C::Obj>, exec: &Exec) -> Result<Self, CategoryError> {
        let n = objects.len();
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();
        let cells = exec.map(&pairs, |&(a, b)| -> Result<_, CategoryError> {
            let hom = c.hom(&objects[a], &objects[b])?;
            let mut mono = Vec::with_capacity(hom.len());
            let mut epi = Vec::with_capacity(hom.len());
            for f in &hom {
                let s = c.strictness(f)?;
                mono.push(s.is_strict_mono());
                epi.push(s.is_strict_epi());
            }
            Ok((hom, mono, epi))
        });
        let mut homs = vec![Vec::new(); n];
        let mut mono = vec![Vec::new(); n];
        let mut epi = vec![Vec::new(); n];
        for (&(a, _), cell) in pairs.iter().zip(cells) {
            let (h, m, e) = cell?;
            homs[a].push(h);
            mono[a].push(m);
            epi[a].push(e);
        }
        Ok(Universe {
            c,
            objects,
            homs,
            mono,
            epi,
        })
    }

    fn n(&self) -> usize {
        self.objects.len()
    }

    fn triples(&self) -> Vec<(usize, usize, usize)> {
        let n = self.n();
        (0..n)
            .flat_map(|a| (0..n).flat_map(move |b| (0..n).map(move |c| (a, b, c))))
            .collect()
    }

    fn hom(&self, a: usize, b: usize) -> &[C::Mor] {
        &self.homs[a][b]
    }

    fn count_mono(&self, a: usize, b: usize) -> u64 {
        self.mono[a][b].iter().filter(|&&m| m).count() as u64
    }

    fn count_epi(&self, a: usize, b: usize) -> u64 {
        self.epi[a][b].iter().filter(|&&m| m).count() as u64
    }

    fn size(&self, a: usize, b: usize) -> u64 {
        self.homs[a][b].len() as u64
    }

    fn check(&self, audit: &Audit<'_, C>, axiom: Axiom) -> Result<CheckResult, CategoryError> {
        let c = self.c;
        let t = self.triples();
        let budget = audit.bounds.max_diagrams;
        let count = |f: &dyn Fn(&(usize, usize, usize)) -> u64| -> Result<u64, CategoryError> {
            let needed: u64 = t.iter().map(f).sum();
            if needed > budget {
                return Err(CategoryError::BudgetExceeded { needed, budget });
            }
            Ok(needed)
        };
        let (needed, witness) = match axiom {
            Axiom::IdentitiesAdmissible => {
                let n = self.n() as u64;
                let w = first(audit.exec.map_range(self.n(), |i| -> Outcome {
                    let id = c.identity(&self.objects[i]);
                    let s = c.strictness(&id)?;
                    Ok((!(s.is_strict_mono() && s.is_strict_epi()))
                        .then(|| Witness::new(axiom, &[("id", &id)])))
                }))?;
                (n, w)
            }
            Axiom::MonosCompose | Axiom::EpisCompose => {
                let monos = axiom == Axiom::MonosCompose;
                let class = if monos { &self.mono } else { &self.epi };
                let needed = count(&|&(a, b, d)| {
                    if monos {
                        self.count_mono(a, b) * self.count_mono(b, d)
                    } else {
                        self.count_epi(a, b) * self.count_epi(b, d)
                    }
                })?;
                let w = first(audit.exec.map(&t, |&(a, b, d)| -> Outcome {
                    for (f, _) in self.hom(a, b).iter().zip(&class[a][b]).filter(|(_, &m)| m) {
                        for (g, _) in self.hom(b, d).iter().zip(&class[b][d]).filter(|(_, &m)| m) {
                            let gf = c.compose(g, f)?;
                            let ok = if monos {
                                c.is_admissible_mono(&gf)?
                            } else {
                                c.is_admissible_epi(&gf)?
                            };
                            if !ok {
                                return Ok(Some(Witness::new(
                                    axiom,
                                    &[("f", f), ("g", g), ("composite", &gf)],
                                )));
                            }
                        }
                    }
                    Ok(None)
                }))?;
                (needed, w)
            }
            Axiom::EpiPullbackAlongMono | Axiom::EpiPullbackTotal => {
                let total = axiom == Axiom::EpiPullbackTotal;
                // e: x → y admissible epi, g: z → y (admissible mono unless total)
                let needed = count(&|&(x, y, z)| {
                    self.count_epi(x, y)
                        * if total {
                            self.size(z, y)
                        } else {
                            self.count_mono(z, y)
                        }
                })?;
                let w = first(audit.exec.map(&t, |&(x, y, z)| -> Outcome {
                    for (e, _) in self
                        .hom(x, y)
                        .iter()
                        .zip(&self.epi[x][y])
                        .filter(|(_, &m)| m)
                    {
                        for (g, &gm) in self.hom(z, y).iter().zip(&self.mono[z][y]) {
                            if !total && !gm {
                                continue;
                            }
                            if let Some(w) = check_pullback(c, axiom, e, g)? {
                                return Ok(Some(w));
                            }
                        }
                    }
                    Ok(None)
                }))?;
                (needed, w)
            }
            Axiom::MonoPushoutAlongEpi | Axiom::MonoPushoutTotal => {
                let total = axiom == Axiom::MonoPushoutTotal;
                // m: k → x admissible mono, g: k → z (admissible epi unless total)
                let needed = count(&|&(k, x, z)| {
                    self.count_mono(k, x)
                        * if total {
                            self.size(k, z)
                        } else {
                            self.count_epi(k, z)
                        }
                })?;
                let w = first(audit.exec.map(&t, |&(k, x, z)| -> Outcome {
                    for (m, _) in self
                        .hom(k, x)
                        .iter()
                        .zip(&self.mono[k][x])
                        .filter(|(_, &m)| m)
                    {
                        for (g, &ge) in self.hom(k, z).iter().zip(&self.epi[k][z]) {
                            if !total && !ge {
                                continue;
                            }
                            if let Some(w) = check_pushout(c, axiom, m, g)? {
                                return Ok(Some(w));
                            }
                        }
                    }
                    Ok(None)
                }))?;
                (needed, w)
            }
            Axiom::Associativity | Axiom::KernelUniversal | Axiom::CokernelUniversal => {
                return self.spot_check(audit, axiom);
            }
            Axiom::LeftObscure | Axiom::StrongLeftObscure => {
                let strong = axiom == Axiom::StrongLeftObscure;
                let needed = count(&|&(a, b, d)| self.size(a, b) * self.size(b, d))?;
                let w = first(audit.exec.map(&t, |&(a, b, d)| -> Outcome {
                    for (i, &im) in self.hom(a, b).iter().zip(&self.mono[a][b]) {
                        if im || !(strong || c.has_cokernel(i)) {
                            continue;
                        }
                        for j in self.hom(b, d) {
                            if c.is_admissible_mono(&c.compose(j, i)?)? {
                                return Ok(Some(Witness::new(axiom, &[("i", i), ("j", j)])));
                            }
                        }
                    }
                    Ok(None)
                }))?;
                (needed, w)
            }
            Axiom::RightObscure | Axiom::StrongRightObscure => {
                let strong = axiom == Axiom::StrongRightObscure;
                let needed = count(&|&(a, b, d)| self.size(a, b) * self.size(b, d))?;
                let w = first(audit.exec.map(&t, |&(a, b, d)| -> Outcome {
                    for (e, &ee) in self.hom(b, d).iter().zip(&self.epi[b][d]) {
                        if ee || !(strong || c.has_kernel(e)) {
                            continue;
                        }
                        for j in self.hom(a, b) {
                            if c.is_admissible_epi(&c.compose(e, j)?)? {
                                return Ok(Some(Witness::new(axiom, &[("j", j), ("e", e)])));
                            }
                        }
                    }
                    Ok(None)
                }))?;
                (needed, w)
            }
            Axiom::SplitAdmissible => {
                let n = self.n();
                let pairs: Vec<(usize, usize)> =
                    (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();
                let needed: u64 = pairs
                    .iter()
                    .map(|&(a, b)| self.size(a, b) * self.size(b, a))
                    .sum();
                if needed > budget {
                    return Err(CategoryError::BudgetExceeded { needed, budget });
                }
                let w = first(audit.exec.map(&pairs, |&(x, y)| -> Outcome {
                    let (idx, idy) = (c.identity(&self.objects[x]), c.identity(&self.objects[y]));
                    for (k, f) in self.hom(x, y).iter().enumerate() {
                        for r in self.hom(y, x) {
                            if !self.mono[x][y][k] && c.compose(r, f)? == idx {
                                return Ok(Some(Witness::new(
                                    axiom,
                                    &[("split_mono", f), ("retraction", r)],
                                )));
                            }
                            if !self.epi[x][y][k] && c.compose(f, r)? == idy {
                                return Ok(Some(Witness::new(
                                    axiom,
                                    &[("split_epi", f), ("section", r)],
                                )));
                            }
                        }
                    }
                    Ok(None)
                }))?;
                (needed, w)
            }
        };
        Ok(CheckResult {
            axiom,
            verdict: witness.map_or(Verdict::Pass, |witness| Verdict::Fail { witness }),
            diagrams_checked: needed,
            expectation: None,
        })
    }

    /// Seeded random diagrams drawn from the universe.
    fn spot_check(&self, audit: &Audit<'_, C>, axiom: Axiom) -> Result<CheckResult, CategoryError> {
        let c = self.c;
        let n = self.n();
        let samples = audit.bounds.samples;
        let base = audit.bounds.seed ^ (axiom.index() << 40);
        let pick = |rng: &mut ChaCha8Rng, a: usize| -> Option<(usize, C::Mor)> {
            let b = rng.gen_range(0..n);
            let h = self.hom(a, b);
            (!h.is_empty()).then(|| (b, h[rng.gen_range(0..h.len())].clone()))
        };
        let results = audit.exec.map_range(
            samples,
            |s| -> Result<(u64, Option<Witness>), CategoryError> {
                let mut rng = ChaCha8Rng::seed_from_u64(base.wrapping_add(s as u64));
                let a = rng.gen_range(0..n);
                match axiom {
                    Axiom::Associativity => {
                        let Some((b, f)) = pick(&mut rng, a) else {
                            return Ok((0, None));
                        };
                        let Some((d, g)) = pick(&mut rng, b) else {
                            return Ok((0, None));
                        };
                        let Some((_, h)) = pick(&mut rng, d) else {
                            return Ok((0, None));
                        };
                        let left = c.compose(&c.compose(&h, &g)?, &f)?;
                        let right = c.compose(&h, &c.compose(&g, &f)?)?;
                        let w = (left != right)
                            .then(|| Witness::new(axiom, &[("f", &f), ("g", &g), ("h", &h)]));
                        Ok((1, w))
                    }
                    Axiom::KernelUniversal => {
                        // f: a → b, and every t: w → a with f ∘ t = 0
                        let Some((_, f)) = pick(&mut rng, a) else {
                            return Ok((0, None));
                        };
                        let w_obj = rng.gen_range(0..n);
                        let mut checked = 0;
                        for t in self.hom(w_obj, a) {
                            checked += 1;
                            if let Some(w) = check_kernel_universal(c, &f, t)? {
                                return Ok((checked, Some(w)));
                            }
                        }
                        Ok((checked, None))
                    }
                    Axiom::CokernelUniversal => {
                        let Some((b, f)) = pick(&mut rng, a) else {
                            return Ok((0, None));
                        };
                        let t_obj = rng.gen_range(0..n);
                        let mut checked = 0;
                        for s in self.hom(b, t_obj) {
                            checked += 1;
                            if let Some(w) = check_cokernel_universal(c, &f, s)? {
                                return Ok((checked, Some(w)));
                            }
                        }
                        Ok((checked, None))
                    }
                    _ => unreachable!("not a spot check"),
                }
            },
        );
        let mut checked = 0;
        let mut witness = None;
        for r in results {
            let (k, w) = r?;
            checked += k;
            if witness.is_none() {
                witness = w;
            }
        }
        Ok(CheckResult {
            axiom,
            verdict: witness.map_or(Verdict::PassSampled, |witness| Verdict::Fail { witness }),
            diagrams_checked: checked,
            expectation: None,
        })
    }
}

fn first(results: Vec<Outcome>) -> Outcome {
    for r in results {
        if let Some(w) = r? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// Pull `e: X → Y` back along `g: Z → Y`; the projection onto `Z` must be an
/// admissible epi.
fn check_pullback<C: Category + ?Sized>(c: &C, axiom: Axiom, e: &C::Mor, g: &C::Mor) -> Outcome {
    let (_, e_prime) = c.pullback(e, g)?;
    Ok((!c.is_admissible_epi(&e_prime)?)
        .then(|| Witness::new(axiom, &[("e", e), ("g", g), ("e_prime", &e_prime)])))
}

/// Push `m: K → X` out along `g: K → Z`; the map out of `Z` must be an
/// admissible mono.
fn check_pushout<C: Category + ?Sized>(c: &C, axiom: Axiom, m: &C::Mor, g: &C::Mor) -> Outcome {
    let (_, m_prime) = c.pushout(m, g)?;
    Ok((!c.is_admissible_mono(&m_prime)?)
        .then(|| Witness::new(axiom, &[("m", m), ("g", g), ("m_prime", &m_prime)])))
}

/// `f ∘ ker f = 0`, and any `t` with `f ∘ t = 0` factors through `ker f`.
fn check_kernel_universal<C: Category + ?Sized>(c: &C, f: &C::Mor, t: &C::Mor) -> Outcome {
    let k = c.kernel(f);
    let fail = || Some(Witness::new(Axiom::KernelUniversal, &[("f", f), ("t", t)]));
    if !c.is_zero_morphism(&c.compose(f, &k)?) {
        return Ok(fail());
    }
    if !c.is_zero_morphism(&c.compose(f, t)?) {
        return Ok(None);
    }
    Ok(match c.factor_through_mono(&k, t)? {
        Some(u) if &c.compose(&k, &u)? == t => None,
        _ => fail(),
    })
}

/// `coker f ∘ f = 0`, and any `s` with `s ∘ f = 0` factors through `coker f`.
fn check_cokernel_universal<C: Category + ?Sized>(c: &C, f: &C::Mor, s: &C::Mor) -> Outcome {
    let q = c.cokernel(f);
    let fail = || {
        Some(Witness::new(
            Axiom::CokernelUniversal,
            &[("f", f), ("s", s)],
        ))
    };
    if !c.is_zero_morphism(&c.compose(&q, f)?) {
        return Ok(fail());
    }
    if !c.is_zero_morphism(&c.compose(s, f)?) {
        return Ok(None);
    }
    Ok(match c.factor_through_epi(&q, s)? {
        Some(u) if &c.compose(&u, &q)? == s => None,
        _ => fail(),
    })
}

fn sampled_check<C: Category + ?Sized>(
    audit: &Audit<'_, C>,
    s: &dyn DiagramSampler<C>,
    axiom: Axiom,
) -> Result<CheckResult, CategoryError> {
    let c = audit.category;
    if axiom == Axiom::SplitAdmissible {
        return Ok(CheckResult {
            axiom,
            verdict: Verdict::Skipped {
                reason: "requires hom-set enumeration".into(),
            },
            diagrams_checked: 0,
            expectation: None,
        });
    }
    let base = audit.bounds.seed ^ (axiom.index() << 40);
    let results =
        audit.exec.map_range(audit.bounds.samples, |i| -> Outcome {
            let mut rng = ChaCha8Rng::seed_from_u64(base.wrapping_add(i as u64));
            let rng = &mut rng;
            match axiom {
                Axiom::IdentitiesAdmissible => {
                    let id = c.identity(&s.object(rng));
                    let st = c.strictness(&id)?;
                    Ok((!(st.is_strict_mono() && st.is_strict_epi()))
                        .then(|| Witness::new(axiom, &[("id", &id)])))
                }
                Axiom::MonosCompose => {
                    let o = s.object(rng);
                    let f = s.admissible_mono_from(rng, &o);
                    let g = s.admissible_mono_from(rng, &c.target(&f));
                    let gf = c.compose(&g, &f)?;
                    Ok((!c.is_admissible_mono(&gf)?)
                        .then(|| Witness::new(axiom, &[("f", &f), ("g", &g)])))
                }
                Axiom::EpisCompose => {
                    let o = s.object(rng);
                    let f = s.admissible_epi_from(rng, &o);
                    let g = s.admissible_epi_from(rng, &c.target(&f));
                    let gf = c.compose(&g, &f)?;
                    Ok((!c.is_admissible_epi(&gf)?)
                        .then(|| Witness::new(axiom, &[("f", &f), ("g", &g)])))
                }
                Axiom::EpiPullbackAlongMono | Axiom::EpiPullbackTotal => {
                    let y = s.object(rng);
                    let e = s.admissible_epi_into(rng, &y);
                    let g = if axiom == Axiom::EpiPullbackTotal {
                        s.morphism_into(rng, &y)
                    } else {
                        s.admissible_mono_into(rng, &y)
                    };
                    check_pullback(c, axiom, &e, &g)
                }
                Axiom::MonoPushoutAlongEpi | Axiom::MonoPushoutTotal => {
                    let k = s.object(rng);
                    let m = s.admissible_mono_from(rng, &k);
                    let g = if axiom == Axiom::MonoPushoutTotal {
                        s.morphism_from(rng, &k)
                    } else {
                        s.admissible_epi_from(rng, &k)
                    };
                    check_pushout(c, axiom, &m, &g)
                }
                Axiom::Associativity => {
                    let o = s.object(rng);
                    let f = s.morphism_from(rng, &o);
                    let g = s.morphism_from(rng, &c.target(&f));
                    let h = s.morphism_from(rng, &c.target(&g));
                    let left = c.compose(&c.compose(&h, &g)?, &f)?;
                    let right = c.compose(&h, &c.compose(&g, &f)?)?;
                    Ok((left != right)
                        .then(|| Witness::new(axiom, &[("f", &f), ("g", &g), ("h", &h)])))
                }
                Axiom::KernelUniversal => {
                    // f = h ∘ coker(t), so f ∘ t = 0 by construction
                    let o = s.object(rng);
                    let t = s.morphism_into(rng, &o);
                    let q = c.cokernel(&t);
                    let h = s.morphism_from(rng, &c.target(&q));
                    let f = c.compose(&h, &q)?;
                    check_kernel_universal(c, &f, &t)
                }
                Axiom::CokernelUniversal => {
                    // f = ker(s) ∘ h, so s ∘ f = 0 by construction
                    let o = s.object(rng);
                    let sm = s.morphism_from(rng, &o);
                    let k = c.kernel(&sm);
                    let h = s.morphism_into(rng, &c.source(&k));
                    let f = c.compose(&k, &h)?;
                    check_cokernel_universal(c, &f, &sm)
                }
                Axiom::LeftObscure | Axiom::StrongLeftObscure => {
                    let (i, j) = s.left_obscure_pair(rng);
                    let applies = axiom == Axiom::StrongLeftObscure || c.has_cokernel(&i);
                    Ok((applies && !c.is_admissible_mono(&i)?)
                        .then(|| Witness::new(axiom, &[("i", &i), ("j", &j)])))
                }
                Axiom::RightObscure | Axiom::StrongRightObscure => {
                    let (j, e) = s.right_obscure_pair(rng);
                    let applies = axiom == Axiom::StrongRightObscure || c.has_kernel(&e);
                    Ok((applies && !c.is_admissible_epi(&e)?)
                        .then(|| Witness::new(axiom, &[("j", &j), ("e", &e)])))
                }
                Axiom::SplitAdmissible => unreachable!("handled above"),
            }
        });
    let witness = first(results)?;
    Ok(CheckResult {
        axiom,
        verdict: witness.map_or(Verdict::PassSampled, |witness| Verdict::Fail { witness }),
        diagrams_checked: audit.bounds.samples as u64,
        expectation: None,
    })
}

/// Re-runs the check recorded in a witness. `Ok(true)` means the violation
/// reproduces.
pub fn replay_witness<C: Category + ?Sized>(c: &C, w: &Witness) -> Result<bool, CategoryError> {
    let ax = w.axiom;
    let reproduced = match ax {
        Axiom::IdentitiesAdmissible => {
            let id: C::Mor = w.get("id")?;
            let s = c.strictness(&id)?;
            !(s.is_strict_mono() && s.is_strict_epi())
        }
        Axiom::MonosCompose | Axiom::EpisCompose => {
            let (f, g): (C::Mor, C::Mor) = (w.get("f")?, w.get("g")?);
            let gf = c.compose(&g, &f)?;
            if ax == Axiom::MonosCompose {
                c.is_admissible_mono(&f)?
                    && c.is_admissible_mono(&g)?
                    && !c.is_admissible_mono(&gf)?
            } else {
                c.is_admissible_epi(&f)? && c.is_admissible_epi(&g)? && !c.is_admissible_epi(&gf)?
            }
        }
        Axiom::EpiPullbackAlongMono | Axiom::EpiPullbackTotal => {
            let (e, g): (C::Mor, C::Mor) = (w.get("e")?, w.get("g")?);
            let pre = c.is_admissible_epi(&e)?
                && (ax == Axiom::EpiPullbackTotal || c.is_admissible_mono(&g)?);
            pre && check_pullback(c, ax, &e, &g)?.is_some()
        }
        Axiom::MonoPushoutAlongEpi | Axiom::MonoPushoutTotal => {
            let (m, g): (C::Mor, C::Mor) = (w.get("m")?, w.get("g")?);
            let pre = c.is_admissible_mono(&m)?
                && (ax == Axiom::MonoPushoutTotal || c.is_admissible_epi(&g)?);
            pre && check_pushout(c, ax, &m, &g)?.is_some()
        }
        Axiom::Associativity => {
            let (f, g, h): (C::Mor, C::Mor, C::Mor) = (w.get("f")?, w.get("g")?, w.get("h")?);
            c.compose(&c.compose(&h, &g)?, &f)? != c.compose(&h, &c.compose(&g, &f)?)?
        }
        Axiom::KernelUniversal => check_kernel_universal(c, &w.get("f")?, &w.get("t")?)?.is_some(),
        Axiom::CokernelUniversal => {
            check_cokernel_universal(c, &w.get("f")?, &w.get("s")?)?.is_some()
        }
        Axiom::LeftObscure | Axiom::StrongLeftObscure => {
            let (i, j): (C::Mor, C::Mor) = (w.get("i")?, w.get("j")?);
            let applies = ax == Axiom::StrongLeftObscure || c.has_cokernel(&i);
            applies && c.is_admissible_mono(&c.compose(&j, &i)?)? && !c.is_admissible_mono(&i)?
        }
        Axiom::RightObscure | Axiom::StrongRightObscure => {
            let (j, e): (C::Mor, C::Mor) = (w.get("j")?, w.get("e")?);
            let applies = ax == Axiom::StrongRightObscure || c.has_kernel(&e);
            applies && c.is_admissible_epi(&c.compose(&e, &j)?)? && !c.is_admissible_epi(&e)?
        }
        Axiom::SplitAdmissible => {
            if w.maps.contains_key("split_mono") {
                let (f, r): (C::Mor, C::Mor) = (w.get("split_mono")?, w.get("retraction")?);
                c.compose(&r, &f)? == c.identity(&c.source(&f)) && !c.is_admissible_mono(&f)?
            } else {
                let (f, s): (C::Mor, C::Mor) = (w.get("split_epi")?, w.get("section")?);
                c.compose(&f, &s)? == c.identity(&c.target(&f)) && !c.is_admissible_epi(&f)?
            }
        }
    };
    Ok(reproduced)
}
