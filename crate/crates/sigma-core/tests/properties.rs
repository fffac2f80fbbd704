mod common;

use common::*;
use num_traits::Zero;
use proptest::prelude::*;
use sigma_core::bounds::{big_psi_point_test, psi_point_test};
use sigma_core::brown::{brown_full_circle, brown_point_test};
use sigma_core::characters::{
    band_order_is_valid, cyclic_min_stats, reorder_within_band, track, Character, Direction,
};
use sigma_core::combinators::{product_complement, ComplementData};
use sigma_core::linalg::{q, Q};
use sigma_core::oracle::{
    certificate_search, verify_certificate, Free, FreeAbelian, Gpq, ModelSpec, Raag,
};
use sigma_core::raag::{self, raag_point_test, SimpleGraph};
use sigma_core::regions::{Arc, SphereRegion};
use sigma_core::words::{Letter, Word};

fn word_strategy(n_gens: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..n_gens, any::<bool>()), 0..=max_len).prop_map(|v| {
        Word::new(
            v.into_iter()
                .map(|(g, s)| if s { Letter::pos(g) } else { Letter::neg(g) })
                .collect(),
        )
    })
}

fn rank2_relator() -> impl Strategy<Value = Word> {
    any::<u64>().prop_map(|seed| random_rank2_relator(&mut rng(seed), 16))
}

fn direction2() -> impl Strategy<Value = Direction> {
    (-20i64..=20, -20i64..=20)
        .prop_filter("nonzero", |(x, y)| *x != 0 || *y != 0)
        .prop_map(|(x, y)| Direction::new(vec![x, y]).unwrap())
}

fn circle_region() -> impl Strategy<Value = SphereRegion> {
    let arc =
        (direction2(), direction2(), any::<bool>(), any::<bool>()).prop_map(|(a, b, fc, tc)| Arc {
            from: a,
            to: b,
            from_closed: fc,
            to_closed: tc,
        });
    (
        prop::collection::vec(arc, 0..4),
        prop::collection::vec(direction2(), 0..3),
    )
        .prop_map(|(arcs, pts)| SphereRegion::arc_union(arcs, pts).unwrap())
}

fn living_criterion(g: &SimpleGraph, chi: &Character) -> bool {
    let n = g.n_vertices();
    let living: Vec<usize> = (0..n).filter(|&v| !chi.gen_value(v).is_zero()).collect();
    if living.is_empty() {
        return false;
    }
    let dominating =
        (0..n).all(|v| living.contains(&v) || living.iter().any(|&u| g.adjacent(u, v)));
    let mut seen = vec![living[0]];
    let mut i = 0;
    while i < seen.len() {
        let u = seen[i];
        for &v in &living {
            if !seen.contains(&v) && g.adjacent(u, v) {
                seen.push(v);
            }
        }
        i += 1;
    }
    dominating && seen.len() == living.len()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn min_and_max_multiplicities_swap_under_negation(r in rank2_relator(), d in direction2()) {
        let chi = d.to_character();
        let t = track(&r, &chi).unwrap();
        let neg: Vec<Q> = track(&r, &chi.negated()).unwrap().values().to_vec();
        let max = neg.iter().max().unwrap();
        let max_mult = neg.iter().filter(|x| *x == max).count();
        prop_assert_eq!(cyclic_min_stats(&t).unwrap().multiplicity, max_mult);
    }

    #[test]
    fn cyclic_min_stats_rotate(r in rank2_relator(), d in direction2(), k in 0usize..16) {
        let chi = d.to_character();
        let a = cyclic_min_stats(&track(&r, &chi).unwrap()).unwrap();
        let b = cyclic_min_stats(&track(&r.cyclic_permutation(k % r.len()), &chi).unwrap()).unwrap();
        prop_assert_eq!(a.min_value - chi.eval(&Word::new(r.letters()[..k % r.len()].to_vec())), b.min_value);
        prop_assert_eq!(a.multiplicity, b.multiplicity);
        prop_assert_eq!(a.consecutive, b.consecutive);
    }

    #[test]
    fn band_reordering_matches_exhaustive_search(
        f in prop::collection::vec(-3i64..=3, 0..=7),
        c in 0i64..=6,
    ) {
        let f: Vec<Q> = f.into_iter().map(q).collect();
        let (c, b) = (q(c), q(6));
        let total: Q = &c + f.iter().sum::<Q>();
        prop_assume!(total >= Q::zero() && total <= b);
        let exists = all_permutations(f.len()).iter().any(|p| band_order_is_valid(&f, &c, &b, p));
        prop_assert!(exists);
        let order = reorder_within_band(&f, &c, &b).unwrap();
        prop_assert!(band_order_is_valid(&f, &c, &b, &order));
    }

    #[test]
    fn region_algebra(a in circle_region(), b in circle_region(), probes in prop::collection::vec(direction2(), 8)) {
        let ca = a.complement().unwrap();
        prop_assert!(ca.complement().unwrap().same_set(&a));
        prop_assert!(a.antipode().antipode().same_set(&a));
        let u = a.union(&b).unwrap();
        let i = a.intersection(&b).unwrap();
        let de_morgan = ca.intersection(&b.complement().unwrap()).unwrap().complement().unwrap();
        prop_assert!(de_morgan.same_set(&u));
        for d in &probes {
            let (x, y) = (a.contains(d).unwrap(), b.contains(d).unwrap());
            prop_assert_eq!(u.contains(d).unwrap(), x || y);
            prop_assert_eq!(i.contains(d).unwrap(), x && y);
            prop_assert_eq!(ca.contains(d).unwrap(), !x);
            prop_assert_eq!(a.antipode().contains(&d.antipode()).unwrap(), x);
            prop_assert_eq!(a.normalized().contains(d).unwrap(), x);
        }
    }

    #[test]
    fn psi_inside_big_psi_inside_brown(r in rank2_relator(), d in direction2()) {
        let chi = d.to_character();
        let rels = std::slice::from_ref(&r);
        let psi = psi_point_test(rels, &chi, true).unwrap().member;
        let big = big_psi_point_test(rels, &chi, true).unwrap().member;
        let brown = brown_point_test(&r, &chi).unwrap();
        prop_assert!(!psi || big);
        prop_assert!(!big || brown);
    }

    #[test]
    fn brown_circle_agrees_pointwise(r in rank2_relator(), probes in prop::collection::vec(direction2(), 5)) {
        let region = brown_full_circle(&r).unwrap();
        for d in &probes {
            prop_assert_eq!(region.contains(d).unwrap(), brown_point_test(&r, &d.to_character()).unwrap());
        }
    }

    #[test]
    fn raag_characterization(seed in any::<u64>(), pick in 0usize..4) {
        let g = match pick {
            0 => raag::path(5),
            1 => raag::cycle(6).unwrap(),
            2 => raag::star(4).unwrap(),
            _ => raag::bundle(2).unwrap(),
        };
        let mut rng = rng(seed);
        let chi = random_character(&mut rng, g.n_vertices(), 0.5);
        let expected = living_criterion(&g, &chi);
        prop_assert_eq!(raag_point_test(&g, &chi).unwrap(), expected);
        let ints: Vec<i64> = chi
            .values()
            .iter()
            .map(|x| (x * q(60)).to_integer().try_into().unwrap())
            .collect();
        let d = Direction::new(ints).unwrap();
        prop_assert_eq!(raag::raag_complement(&g).unwrap().contains(&d).unwrap(), expected);
    }

    #[test]
    fn products_pointwise(i in 0usize..4, j in 0usize..4, seed in any::<u64>()) {
        let factors = factor_table();
        let (c1, r1) = &factors[i];
        let (c2, r2) = &factors[j];
        let prod = product_complement(c1, c2).unwrap().to_region().unwrap();
        let mut rng = rng(seed);
        for _ in 0..10 {
            let mut v1: Vec<i64> = (0..c1.n).map(|_| rand::Rng::gen_range(&mut rng, -3..=3)).collect();
            let mut v2: Vec<i64> = (0..c2.n).map(|_| rand::Rng::gen_range(&mut rng, -3..=3)).collect();
            match rand::Rng::gen_range(&mut rng, 0..3) {
                0 => v1.iter_mut().for_each(|x| *x = 0),
                1 => v2.iter_mut().for_each(|x| *x = 0),
                _ => {}
            }
            let z1 = v1.iter().all(|&x| x == 0);
            let z2 = v2.iter().all(|&x| x == 0);
            if z1 && z2 {
                continue;
            }
            let outside1 = z2 && !r1.contains(&Direction::new(v1.clone()).unwrap()).unwrap();
            let outside2 = z1 && !r2.contains(&Direction::new(v2.clone()).unwrap()).unwrap();
            let mut v = v1.clone();
            v.extend(&v2);
            let d = Direction::new(v).unwrap();
            prop_assert_eq!(prod.contains(&d).unwrap(), !(outside1 || outside2));
        }
    }
}

/// Complement data and Sigma^1 of Z, F2, BS(1,2) and Z^2.
fn factor_table() -> Vec<(ComplementData, SphereRegion)> {
    let z = SphereRegion::all(0);
    let f2 = SphereRegion::empty(1);
    let bs = SphereRegion::point_set(0, vec![Direction::new(vec![-1]).unwrap()]).unwrap();
    let z2 = SphereRegion::all(1);
    [z, f2, bs, z2]
        .into_iter()
        .map(|r| (ComplementData::from_region(&r).unwrap(), r))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn certificates_are_sound(pick in 0usize..6, seed in any::<u64>(), radius in 1usize..=5) {
        let mut rng = rng(seed);
        let spec = ["abelian:2", "free:2", "gpq:2,1", "gpq:1,2", "gpq:2,3", "raag:path:3"][pick];
        let model = ModelSpec::parse(spec).unwrap();
        let chi = if spec.starts_with("gpq") {
            let v = random_rational(&mut rng, 3, 2);
            if v.is_zero() { Character::from_ints(&[0, 1]) } else { Character::new(vec![Q::zero(), v]) }
        } else {
            random_character(&mut rng, model.n_gens(), 0.3)
        };
        let out = model.search(&chi, radius).unwrap();
        if let Some(cert) = &out.certificate {
            let ok = match &model {
                ModelSpec::FreeAbelian(m) => verify_certificate(m, &chi, cert).unwrap(),
                ModelSpec::Free(m) => verify_certificate(m, &chi, cert).unwrap(),
                ModelSpec::Raag(m) => verify_certificate(m, &chi, cert).unwrap(),
                ModelSpec::Gpq(m) => verify_certificate(m, &chi, cert).unwrap(),
            };
            prop_assert!(ok);
            prop_assert!(model.ground_truth(&chi).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn raag_normal_form_is_a_normal_form(w in word_strategy(4, 8), pick in 0usize..3) {
        let g = [raag::path(4), raag::cycle(4).unwrap(), raag::star(3).unwrap()][pick].clone();
        let m = Raag { label: "g".into(), graph: g.clone() };
        let nf = sigma_core::oracle::GroupModel::normal_form(&m, &w);
        prop_assert_eq!(&slow_raag_normal_form(&g, &w), &nf);
        let inv = sigma_core::oracle::GroupModel::normal_form(&m, &w.invert());
        let prod = sigma_core::oracle::GroupModel::mul(&m, &nf, &inv);
        prop_assert!(prod.is_empty());
    }

    #[test]
    fn gpq_is_associative(p in prop::sample::select(vec![(1i64, 2i64), (2, 1), (2, 3), (-3, 2)]),
                          a in word_strategy(2, 6), b in word_strategy(2, 6), c in word_strategy(2, 6)) {
        use sigma_core::oracle::GroupModel;
        let g = Gpq::new(p.0, p.1).unwrap();
        let (x, y, z) = (g.normal_form(&a), g.normal_form(&b), g.normal_form(&c));
        prop_assert_eq!(g.mul(&g.mul(&x, &y), &z), g.mul(&x, &g.mul(&y, &z)));
        prop_assert_eq!(g.mul(&x, &g.inv(&x)), g.identity());
        prop_assert_eq!(g.normal_form(&a.concat(&b)), g.mul(&x, &y));
    }
}

#[test]
fn free_and_abelian_models_agree_with_words() {
    use sigma_core::oracle::GroupModel;
    let f = Free { n: 2 };
    let z = FreeAbelian { n: 2 };
    let mut rng = rng(5);
    for _ in 0..200 {
        let w = random_word(&mut rng, 2, 10);
        assert_eq!(f.normal_form(&w), w.reduce());
        assert_eq!(z.normal_form(&w), w.exponent_vector(2));
    }
    let out = certificate_search(&z, &Character::from_ints(&[1, 0]), 2).unwrap();
    let cert = out.certificate.unwrap();
    assert!(verify_certificate(&z, &Character::from_ints(&[1, 0]), &cert).unwrap());
}
