use std::collections::HashSet;

use gclink_core::montesinos::{
    classify, is_spherical_by_euler_char, is_spherical_by_list, orbifold_euler_char, verdict as montesinos_verdict, Geometry,
    MontesinosLink, OrbifoldBase, Tangle,
};
use gclink_core::twobridge::{
    equivalence_class, find_pm2_expansion, schubert_equivalent, search_exact, verdict, ExpansionSearch, TwoBridgeFraction,
};
use gclink_core::verdict::VerdictStatus;
use num_rational::Ratio;
use proptest::prelude::*;

fn fractions(q: i64) -> Vec<TwoBridgeFraction> {
    (1..q).filter_map(|p| TwoBridgeFraction::new(p, q).ok().filter(|f| f.p() == p)).collect()
}

/// Every value `1/(2s₁ + 1/(⋯))` with at most `depth` terms, built from the
/// outside in without any pruning.
fn blind_values(depth: usize) -> HashSet<Ratio<i64>> {
    fn value(signs: &[i8]) -> Ratio<i64> {
        match signs.split_first() {
            None => Ratio::from_integer(0),
            Some((s, rest)) => {
                let tail = value(rest);
                (Ratio::from_integer(2 * i64::from(*s)) + tail).recip()
            }
        }
    }
    let mut out = HashSet::new();
    for n in 1..=depth {
        for bits in 0u32..(1 << n) {
            let signs: Vec<i8> = (0..n).map(|i| if bits >> i & 1 == 1 { -1 } else { 1 }).collect();
            out.insert(value(&signs));
        }
    }
    out
}

#[test]
fn schubert_is_an_equivalence_and_classes_partition() {
    for q in 2..=60 {
        let fs = fractions(q);
        for &a in &fs {
            assert!(schubert_equivalent(a, a));
            for &b in &fs {
                assert_eq!(schubert_equivalent(a, b), schubert_equivalent(b, a));
                if schubert_equivalent(a, b) {
                    for &c in &fs {
                        if schubert_equivalent(b, c) {
                            assert!(schubert_equivalent(a, c), "{a} {b} {c}");
                        }
                    }
                }
            }
            let class = equivalence_class(a);
            for &b in &fs {
                assert_eq!(class.contains(&b), schubert_equivalent(a, b), "{a} {b}");
            }
        }
    }
}

#[test]
fn pruned_search_matches_blind_enumeration() {
    // A value with denominator q needs fewer than q terms.
    let oracle = blind_values(20);
    for q in 2..=20 {
        for f in fractions(q) {
            let expected = oracle.contains(&Ratio::new(f.p(), q));
            let found = matches!(search_exact(f.p(), q, 2 * q as usize), ExpansionSearch::Found(_));
            assert_eq!(found, expected, "{f}");
            let class_hit = equivalence_class(f).iter().any(|g| oracle.contains(&Ratio::new(g.p(), q)));
            match find_pm2_expansion(f, 2 * q as usize) {
                Some(e) => {
                    assert!(class_hit);
                    let v = e.evaluate().unwrap();
                    assert!(equivalence_class(f).iter().any(|g| Ratio::new(g.p(), q) == v));
                }
                None => assert!(!class_hit, "{f}"),
            }
        }
    }
    assert!(!["3/7", "4/7", "5/7", "2/7"].iter().any(|s| oracle.contains(&s.parse::<Ratio<i64>>().unwrap())));
}

#[test]
fn torus_knots_are_fibered() {
    for q in (3..=21).step_by(2) {
        let v = verdict(TwoBridgeFraction::new(1, q).unwrap()).unwrap();
        assert_eq!(v.status, VerdictStatus::Fibered, "1/{q}");
    }
}

#[test]
fn spherical_triples_agree() {
    for a in 2..=100 {
        for b in a..=100 {
            for c in b..=100 {
                let base = OrbifoldBase::new(vec![a, b, c]).unwrap();
                assert_eq!(is_spherical_by_list(&base), is_spherical_by_euler_char(&base), "{base}");
            }
        }
    }
}

#[test]
fn single_tangles_agree_with_two_bridge() {
    for alpha in 2..=30 {
        for beta in 1..alpha {
            let Ok(t) = Tangle::new(beta, alpha) else { continue };
            let m = MontesinosLink::new(0, vec![t]).unwrap();
            assert_eq!(classify(&m).unwrap().geometry, Geometry::Spherical);
            let mv = montesinos_verdict(&m).unwrap();
            let tv = verdict(m.two_bridge_candidate().unwrap()).unwrap();
            let fibred = [VerdictStatus::Fibered, VerdictStatus::VirtuallyFibered];
            assert!(fibred.contains(&mv.status) && fibred.contains(&tv.status));
        }
    }
}

proptest! {
    #[test]
    fn four_or_more_cones_never_spherical(cones in prop::collection::vec(2i64..200, 4..9)) {
        let base = OrbifoldBase::new(cones).unwrap();
        prop_assert!(orbifold_euler_char(&base) <= Ratio::from_integer(0));
        prop_assert!(!is_spherical_by_list(&base));
        prop_assert!(!is_spherical_by_euler_char(&base));
    }

    #[test]
    fn witnesses_reevaluate(q in 2i64..200, p in 1i64..200) {
        prop_assume!(p < q && num_integer::gcd(p, q) == 1);
        let f = TwoBridgeFraction::new(p, q).unwrap();
        if let Some(e) = find_pm2_expansion(f, 2 * q as usize) {
            let v = e.evaluate().unwrap();
            prop_assert!(equivalence_class(f).iter().any(|g| Ratio::new(g.p(), q) == v));
        }
    }
}
