use protoexact::category::{
    classify_strictness, has_rlp, is_injective_object, Category, CategoryError,
};
use protoexact::exec::Exec;
use protoexact::factorization::{
    factor_map, precover, replay_certificate, special_preenvelope, Certificate, FactorError,
    FactorOptions, GeneratingSet, ReplayOutcome,
};
use protoexact::instances::{FinPointedSet, PointedMap, WeightedCat};
use protoexact::scalars::Magnitude;
use protoexact::weighted::WeightedSpace;

fn opts(fuel: usize) -> FactorOptions {
    FactorOptions::new(fuel)
}

fn round_trip<C: Category>(c: &C, cert: &Certificate<C>) {
    let json = serde_json::to_string(cert).unwrap();
    let back: Certificate<C> = serde_json::from_str(&json).unwrap();
    assert_eq!(serde_json::to_string(&back).unwrap(), json);
    assert_eq!(
        replay_certificate(c, &back, &opts(cert.fuel)).unwrap(),
        ReplayOutcome::Exact
    );
}

#[test]
fn weighted_envelopes_are_identities_into_injectives() {
    let c = WeightedCat::standard_f2();
    let exec = Exec::default();
    let g = GeneratingSet::admissible_monos(&c, &exec).unwrap();
    for x in c.objects().unwrap() {
        let (mono, cert) = special_preenvelope(&c, &x, &g, &opts(100)).unwrap();
        assert!(cert.complete);
        assert!(c.is_admissible_mono(&mono).unwrap());
        assert!(classify_strictness(&c, &mono).unwrap().is_strict_mono());
        assert!(
            is_injective_object(&c, &c.target(&mono), 10_000_000, &exec)
                .unwrap()
                .holds
        );
        // every object is injective here, so nothing is attached
        assert!(cert.steps.is_empty());
        assert!(c.is_iso(&mono).unwrap());
        round_trip(&c, &cert);
    }
}

#[test]
fn envelope_of_zero_is_the_identity() {
    let c = WeightedCat::standard_f2();
    let g = GeneratingSet::admissible_monos(&c, &Exec::default()).unwrap();
    let (mono, _) = special_preenvelope(&c, &c.zero_object(), &g, &opts(0)).unwrap();
    assert_eq!(mono, c.identity(&c.zero_object()));
}

#[test]
fn weighted_precovers_are_hom_surjective() {
    let c = WeightedCat::standard_f2();
    let exec = Exec::default();
    let g = GeneratingSet::rank_one(&c, &exec, |o: &WeightedSpace| o.dim() == 1).unwrap();
    let cokernels: Vec<WeightedSpace> = g
        .cokernel_objects(&c)
        .generators
        .iter()
        .map(|m| c.target(m))
        .collect();
    assert!(!cokernels.is_empty());
    for x in c.objects().unwrap() {
        let (r, cert) = precover(&c, &x, &g, &opts(100)).unwrap();
        assert!(cert.complete);
        assert_eq!(c.target(&r), x);
        let a = c.source(&r);
        for a2 in &cokernels {
            let into_x = c.hom(a2, &x).unwrap();
            let through: Vec<_> = c
                .hom(a2, &a)
                .unwrap()
                .iter()
                .map(|h| c.compose(&r, h).unwrap())
                .collect();
            for h in &into_x {
                assert!(
                    through.contains(h),
                    "{h:?} does not factor through the precover of {x:?}"
                );
            }
        }
        round_trip(&c, &cert);
    }
}

#[test]
fn precover_of_a_generator_cokernel_and_of_zero() {
    let c = WeightedCat::standard_f2();
    let exec = Exec::default();
    let g = GeneratingSet::rank_one(&c, &exec, |o: &WeightedSpace| o.dim() == 1).unwrap();
    let (r, _) = precover(&c, &c.zero_object(), &g, &opts(0)).unwrap();
    assert!(c.is_zero_morphism(&r));
    let x = WeightedSpace::new(c.field(), vec![Magnitude::pow(1)]);
    let (r, cert) = precover(&c, &x, &g, &opts(10)).unwrap();
    assert_eq!(cert.steps.len(), 1);
    assert!(c.is_iso(&r).unwrap());
}

#[test]
fn pointed_factorization_attaches_cells_and_replays() {
    let c = FinPointedSet::new(3);
    let exec = Exec::default();
    let gens =
        GeneratingSet::new(&c, "points", vec![PointedMap::new(0, 1, vec![]).unwrap()]).unwrap();
    let f = c.zero_morphism(&0, &3);
    let cert = factor_map(&c, &f, &gens, &opts(10)).unwrap();
    assert!(cert.complete);
    assert_eq!(cert.steps.len(), 3);
    assert_eq!(c.compose(&cert.right, &cert.left).unwrap(), f);
    assert!(c.is_iso(&cert.right).unwrap());
    for s in &cert.steps {
        assert!(c.is_admissible_mono(&s.to_pushout).unwrap());
    }
    assert!(
        has_rlp(&c, &cert.right, &gens.generators, 1 << 20, &exec)
            .unwrap()
            .holds
    );
    round_trip(&c, &cert);
}

#[test]
fn enough_fuel_terminates_with_a_genuine_lift() {
    let c = FinPointedSet::new(2);
    let exec = Exec::default();
    let gens = GeneratingSet::admissible_monos(&c, &exec).unwrap();
    for x in 0..=2 {
        for y in 0..=2 {
            for f in FinPointedSet::all_maps(x, y) {
                let problems = has_rlp(&c, &f, &gens.generators, 1 << 20, &exec)
                    .unwrap()
                    .squares_checked as usize;
                let cert = factor_map(&c, &f, &gens, &opts(problems)).unwrap();
                assert!(
                    has_rlp(&c, &cert.right, &gens.generators, 1 << 20, &exec)
                        .unwrap()
                        .holds
                );
                assert!(c.is_admissible_mono(&cert.left).unwrap());
            }
        }
    }
}

#[test]
fn zero_fuel_reports_partial_progress() {
    let c = FinPointedSet::new(2);
    let gens =
        GeneratingSet::new(&c, "points", vec![PointedMap::new(0, 1, vec![]).unwrap()]).unwrap();
    let f = c.zero_morphism(&0, &2);
    match factor_map(&c, &f, &gens, &opts(1)) {
        Err(FactorError::FuelExhausted { partial }) => {
            assert_eq!(partial.steps.len(), 1);
            assert!(!partial.complete);
            assert_eq!(
                replay_certificate(&c, &partial, &opts(1)).unwrap(),
                ReplayOutcome::Exact
            );
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn tampering_is_detected() {
    let c = FinPointedSet::new(2);
    let gens =
        GeneratingSet::new(&c, "points", vec![PointedMap::new(0, 1, vec![]).unwrap()]).unwrap();
    let f = c.zero_morphism(&0, &2);
    let cert = factor_map(&c, &f, &gens, &opts(5)).unwrap();
    let mut bad = cert.clone();
    bad.right = c.zero_morphism(&c.source(&bad.right), &2);
    assert_eq!(
        replay_certificate(&c, &bad, &opts(5)).unwrap(),
        ReplayOutcome::LegMismatch
    );
    let mut bad = cert.clone();
    bad.steps.pop();
    assert_ne!(
        replay_certificate(&c, &bad, &opts(5)).unwrap(),
        ReplayOutcome::Exact
    );
}

#[test]
fn non_admissible_generators_are_rejected() {
    let c = FinPointedSet::new(2);
    let collapse = PointedMap::new(2, 1, vec![1, 1]).unwrap();
    assert!(matches!(
        GeneratingSet::new(&c, "bad", vec![collapse]),
        Err(CategoryError::Invalid(_))
    ));
}
