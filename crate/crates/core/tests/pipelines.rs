use std::sync::Arc;

use cosheaf::cosheaf::{hat_eval, hat_hom, is_flasque, skyscraper, CellularCosheaf};
use cosheaf::group::{cokernel, homology_at, AbGroup, IsoClass};
use cosheaf::homology::{
    bm_homology, cech_homology_checked, crosscheck, delta_cosheaf, derived_complex, derived_homology,
    derived_homology_with, homology, projective_resolution, subdivision_homology, ChainComplex, ResolutionOptions,
};
use cosheaf::poset::{validate_poset, Cover, FinPoset, OpenSet, DEFAULT_OPEN_CAP};
use cosheaf::random::{corpus_instance, random_cosheaf, random_group, random_poset, CorpusConfig};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_instance(seed: u64, max_elements: usize) -> (ChaCha8Rng, Arc<FinPoset>, CellularCosheaf) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = Arc::new(random_poset(&mut rng, max_elements));
    let f = random_cosheaf(&mut rng, &p, 3).unwrap();
    (rng, p, f)
}

#[test]
fn all_pipelines_agree_on_a_second_corpus() {
    let cfg = CorpusConfig::default();
    for i in 0..40 {
        let inst = corpus_instance(7, i, &cfg).unwrap();
        let v = crosscheck(&inst.complex, &inst.cosheaf).unwrap();
        assert!(v.agree(), "instance {i}: {:?}", v.mismatch);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn subdivision_computes_derived_colimits(seed in any::<u64>()) {
        let (_, p, f) = random_instance(seed, 6);
        let depth = p.height() + 2;
        let derived = derived_homology(&f, depth).unwrap();
        prop_assert!(derived.agrees_with(&subdivision_homology(&f).unwrap()));
    }

    #[test]
    fn derived_colimits_vanish_above_height(seed in any::<u64>()) {
        let (_, p, f) = random_instance(seed, 6);
        let h = derived_homology(&f, p.height() + 4).unwrap();
        for n in p.height() + 1..h.groups.len() {
            prop_assert!(h.groups[n].is_trivial(), "degree {n}");
        }
    }

    #[test]
    fn resolution_choice_does_not_matter(seed in any::<u64>(), shuffle in any::<u64>()) {
        let (_, p, f) = random_instance(seed, 6);
        let depth = p.height() + 2;
        let a = derived_homology(&f, depth).unwrap();
        let b = derived_homology_with(&f, depth, ResolutionOptions { stage0_shuffle: Some(shuffle) }).unwrap();
        prop_assert_eq!(a.groups, b.groups);
    }

    #[test]
    fn resolutions_are_pointwise_exact(seed in any::<u64>()) {
        let (_, p, f) = random_instance(seed, 6);
        let res = projective_resolution(&f, p.height() + 2, ResolutionOptions::default()).unwrap();
        for x in 0..p.len() {
            prop_assert!(cokernel(res.stages[0].map.component(x)).unwrap().0.is_trivial());
            for n in 1..res.stages.len() {
                let h = homology_at(res.stages[n].map.component(x), res.stages[n - 1].map.component(x)).unwrap();
                prop_assert!(h.is_trivial(), "x {x}, stage {n}");
            }
        }
        prop_assert!(res.complete);
    }

    #[test]
    fn derived_complex_matches_hat_of_resolution(seed in any::<u64>()) {
        let (_, p, f) = random_instance(seed, 5);
        let res = projective_resolution(&f, p.height() + 2, ResolutionOptions::default()).unwrap();
        let x = p.full_open();
        let groups: Vec<AbGroup> = res.stages.iter().map(|s| hat_eval(&s.cosheaf, &x).unwrap()).collect();
        let boundaries = res.stages[1..].iter().map(|s| hat_hom(&s.map, &x).unwrap()).collect();
        let generic = homology(&ChainComplex::new(groups, boundaries).unwrap()).unwrap();
        prop_assert_eq!(generic, homology(&derived_complex(&res).unwrap()).unwrap());
    }

    #[test]
    fn cech_agrees_when_cover_is_acyclic(seed in any::<u64>()) {
        let (mut rng, p, f) = random_instance(seed, 5);
        let opens: Vec<OpenSet> = p
            .enumerate_opens(DEFAULT_OPEN_CAP)
            .unwrap()
            .into_iter()
            .filter(|u| !u.is_empty())
            .collect();
        let mut members: Vec<OpenSet> = opens.choose_multiple(&mut rng, 3).cloned().collect();
        members.extend(p.minimal_elements().into_iter().map(|m| p.principal_open(m)));
        let cover = Cover::new(members, p.full_open()).unwrap();
        let out = cech_homology_checked(&cover, &f).unwrap();
        if out.hypothesis_holds() {
            let derived = derived_homology(&f, p.height() + 2).unwrap();
            prop_assert!(out.report.agrees_with(&derived), "{} vs {}", out.report, derived);
        }
    }
}

#[test]
fn flasque_cosheaves_have_no_higher_derived_colimits() {
    let mut flasque = 0;
    for seed in 0..200u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = Arc::new(random_poset(&mut rng, 5));
        // sums of skyscrapers with free values are flasque
        let mut parts = Vec::new();
        for x in 0..p.len() {
            if rng.gen_bool(0.6) {
                parts.push(skyscraper(&p, x, &AbGroup::free(rng.gen_range(1..=2))).unwrap());
            }
        }
        let f = if parts.is_empty() || seed % 2 == 0 {
            random_cosheaf(&mut rng, &p, 3).unwrap()
        } else {
            CellularCosheaf::direct_sum(&parts).unwrap()
        };
        if !is_flasque(&f, DEFAULT_OPEN_CAP).unwrap() {
            continue;
        }
        flasque += 1;
        let h = derived_homology(&f, p.height() + 2).unwrap();
        assert!(h.groups[1..].iter().all(IsoClass::is_trivial), "seed {seed}: {h}");
    }
    assert!(flasque >= 50, "only {flasque} flasque samples");
}

#[test]
fn cech_hypothesis_holds_for_vertex_stars() {
    let cfg = CorpusConfig::default();
    for i in 0..20 {
        let inst = corpus_instance(3, i, &cfg).unwrap();
        let p = inst.cosheaf.base();
        let out = cech_homology_checked(&Cover::minimal_stars(p), &inst.cosheaf).unwrap();
        assert!(out.hypothesis_holds(), "instance {i}");
        assert!(out.report.agrees_with(&bm_homology(&inst.complex, &inst.cosheaf).unwrap()));
    }
}

#[test]
fn subdivision_of_a_chain() {
    // c < b < a with a constant value: the order complex is a 2-simplex.
    let p = Arc::new(validate_poset(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let g = random_group(&mut rng, 3);
    let f = CellularCosheaf::constant(&p, &g);
    let (oc, d) = delta_cosheaf(&f).unwrap();
    assert_eq!(oc.len(), 7);
    assert_eq!(oc.dim(), 2);
    for s in 0..oc.len() {
        assert_eq!(d.group(s).iso_class(), g.iso_class());
    }
    let h = subdivision_homology(&f).unwrap();
    assert_eq!(h.degree(0), g.iso_class());
    assert!(h.trimmed().len() <= 1);
}
