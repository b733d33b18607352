//! Canonical keys and bounded mutation-equivalence searches.

use clusterlab_core::builders::{build, nu, square_product, Spec};
use clusterlab_core::dynkin::Dynkin;
use clusterlab_core::mutclass::*;
use clusterlab_core::quiver::{Quiver, VertexMeta, VertexPermutation};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_quiver(rng: &mut ChaCha8Rng, n: usize) -> Quiver {
    let meta = (0..n).map(|i| VertexMeta::plain(i + 1, 1)).collect();
    let mut q = Quiver::empty(meta);
    for i in 0..n {
        for j in i + 1..n {
            match rng.gen_range(0..5) {
                0 => q.add_arrow(i, j).unwrap(),
                1 => q.add_arrow(j, i).unwrap(),
                _ => {}
            }
        }
    }
    q
}

fn random_perm(rng: &mut ChaCha8Rng, n: usize) -> VertexPermutation {
    let mut images: Vec<usize> = (0..n).collect();
    images.shuffle(rng);
    VertexPermutation::from_images(images).unwrap()
}

#[test]
fn key_is_invariant_under_relabelling() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for trial in 0..1000 {
        let n = 2 + trial % 11;
        let q = random_quiver(&mut rng, n);
        let p = random_perm(&mut rng, n);
        assert_eq!(canonical_key(&q).unwrap(), canonical_key(&q.apply_perm(&p)).unwrap());
    }
}

#[test]
fn key_of_family_quivers_is_invariant_under_relabelling() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for spec in [Spec::c(3, 3).unwrap(), Spec::f4(2).unwrap(), Spec::g2(3).unwrap()] {
        let q = build(&spec);
        let key = canonical_key(&q).unwrap();
        for _ in 0..50 {
            let p = random_perm(&mut rng, q.n());
            assert_eq!(canonical_key(&q.apply_perm(&p)).unwrap(), key);
        }
    }
}

#[test]
fn key_distinguishes_an_oriented_triangle_with_tail_from_its_opposite() {
    let meta = (0..4).map(|i| VertexMeta::plain(i + 1, 1)).collect();
    let q = Quiver::from_arrows(meta, &[(0, 1), (1, 2), (2, 0), (0, 3)]).unwrap();
    assert_ne!(canonical_key(&q).unwrap(), canonical_key(&q.opposite()).unwrap());
    assert!(q.find_isomorphism(&q.opposite()).is_none());
}

#[test]
fn key_of_g2_quiver_matches_its_circle_rotation() {
    let spec = Spec::g2(2).unwrap();
    let q = build(&spec);
    let rotated = q.apply_perm(&nu(&spec, [2, 3, 1]).unwrap());
    assert_eq!(canonical_key(&q).unwrap(), canonical_key(&rotated).unwrap());
}

#[test]
fn key_equality_agrees_with_isomorphism_on_neighbourhoods() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut sample: Vec<Quiver> = Vec::new();
    for spec in [Spec::c(2, 2).unwrap(), Spec::g2(2).unwrap()] {
        sample.extend(neighbourhood(&build(&spec), 2).unwrap().into_iter().map(|(_, q)| q));
    }
    for _ in 0..40 {
        sample.push(random_quiver(&mut rng, 5));
    }
    // Relabelled copies make sure the equal-key branch is exercised.
    let copies: Vec<Quiver> = sample.iter().take(40).map(|q| q.apply_perm(&random_perm(&mut rng, q.n()))).collect();
    sample.extend(copies);
    let keys: Vec<_> = sample.iter().map(|q| canonical_key(q).unwrap()).collect();
    let mut equal_pairs = 0;
    for i in 0..sample.len() {
        for j in i + 1..sample.len() {
            let iso = sample[i].find_isomorphism(&sample[j]).is_some();
            assert_eq!(keys[i] == keys[j], iso, "pair {i} {j}");
            equal_pairs += usize::from(iso);
        }
    }
    assert!(equal_pairs >= 40);
}

fn expect_path(left: &Quiver, right: &Quiver) -> MutationPath {
    match search_equivalence(left, right, SearchConfig::default()).unwrap() {
        SearchOutcome::Found(p) => {
            assert!(p.verify(right).unwrap());
            assert!(p.moves.len() <= 24);
            p
        }
        other => panic!("no path found: {other:?}"),
    }
}

#[test]
fn c3_level_two_is_equivalent_to_d4_level_three() {
    expect_path(&build(&Spec::c(3, 2).unwrap()), &square_product(&Dynkin::d(4).unwrap(), 3).unwrap());
}

#[test]
fn f4_level_two_is_equivalent_to_d5_level_three() {
    expect_path(&build(&Spec::f4(2).unwrap()), &square_product(&Dynkin::d(5).unwrap(), 3).unwrap());
}

#[test]
fn c2_level_three_is_equivalent_to_a3_level_four() {
    expect_path(&build(&Spec::c(2, 3).unwrap()), &square_product(&Dynkin::a(3).unwrap(), 4).unwrap());
}

#[test]
fn g2_is_equivalent_to_c3_at_levels_two_and_three() {
    for l in [2, 3] {
        expect_path(&build(&Spec::g2(l).unwrap()), &build(&Spec::c(3, l).unwrap()));
    }
}

#[test]
fn identical_inputs_give_the_empty_path() {
    let q = build(&Spec::f4(2).unwrap());
    assert!(expect_path(&q, &q).moves.is_empty());
    let p = VertexPermutation::from_images((0..q.n()).rev().collect()).unwrap();
    assert!(expect_path(&q, &q.apply_perm(&p)).moves.is_empty());
}

#[test]
fn exhausted_caps_are_inconclusive() {
    // A zero depth cap forbids every move; a tiny node cap stops early.
    let a = build(&Spec::c(3, 2).unwrap());
    let b = square_product(&Dynkin::d(4).unwrap(), 3).unwrap();
    let config = SearchConfig { depth_cap: 0, node_cap: 10 };
    assert!(matches!(search_equivalence(&a, &b, config).unwrap(), SearchOutcome::Exhausted { .. }));
    let tiny = SearchConfig { depth_cap: 12, node_cap: 2 };
    let f = build(&Spec::f4(2).unwrap());
    let d = square_product(&Dynkin::d(5).unwrap(), 3).unwrap();
    assert!(matches!(search_equivalence(&f, &d, tiny).unwrap(), SearchOutcome::Exhausted { .. }));
}

#[test]
fn mismatched_sizes_are_rejected() {
    let a = build(&Spec::c(2, 2).unwrap());
    let b = build(&Spec::c(3, 2).unwrap());
    assert!(search_equivalence(&a, &b, SearchConfig::default()).is_err());
}
