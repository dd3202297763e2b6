use defdyn::defsets::{is_left_generic, verify_cover, DefinableSet, Genericity, PresburgerSet};
use defdyn::ellis::{star, star_via_schema};
use defdyn::group::{catalog, GroupContext, GroupElement};
use defdyn::json;
use defdyn::typespace::{apply_group, contains, restrict, Level, Sign, TypePoint};
use proptest::prelude::*;

fn z() -> GroupContext {
    GroupContext::Integers
}

fn int(x: i64) -> GroupElement {
    GroupElement::Int(x)
}

prop_compose! {
    fn presburger()(
        modulus in 1u64..=6,
        up_seed in any::<u8>(),
        down_seed in any::<u8>(),
        lo in -40i64..=40,
        width in 0usize..=30,
        bits_seed in any::<u32>(),
    ) -> DefinableSet {
        let mask = |seed: u8| (0..modulus).map(|r| seed >> r & 1 == 1).collect::<Vec<_>>();
        let bits: Vec<bool> = (0..width).map(|i| bits_seed >> i & 1 == 1).collect();
        let hi = lo + width as i64 - 1;
        PresburgerSet::new(modulus, mask(up_seed), mask(down_seed), lo, hi, bits).unwrap().into()
    }
}

fn sample_points() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-1000i64..=1000, 16)
}

fn member(s: &DefinableSet, x: i64) -> bool {
    s.contains_element(&int(x)).unwrap()
}

fn type_at(level: u64) -> impl Strategy<Value = TypePoint> {
    prop_oneof![
        (-60i64..=60).prop_map(|x| TypePoint::Realized(int(x))),
        (any::<bool>(), 0..level).prop_map(move |(up, r)| TypePoint::Limit {
            sign: if up { Sign::Plus } else { Sign::Minus },
            residue: r,
            modulus: level,
        }),
    ]
}

fn level_and_triple() -> impl Strategy<Value = (u64, TypePoint, TypePoint, TypePoint)> {
    (1u64..=12).prop_flat_map(|n| (Just(n), type_at(n), type_at(n), type_at(n)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn boolean_ops_match_pointwise_logic(a in presburger(), b in presburger(), xs in sample_points()) {
        let u = a.union(&b).unwrap();
        let i = a.intersection(&b).unwrap();
        let c = a.complement().unwrap();
        for &x in &xs {
            prop_assert_eq!(member(&u, x), member(&a, x) || member(&b, x));
            prop_assert_eq!(member(&i, x), member(&a, x) && member(&b, x));
            prop_assert_eq!(member(&c, x), !member(&a, x));
        }
    }

    #[test]
    fn boolean_laws_hold_structurally(a in presburger(), b in presburger(), c in presburger()) {
        prop_assert_eq!(a.union(&b).unwrap(), b.union(&a).unwrap());
        prop_assert_eq!(a.intersection(&b).unwrap(), b.intersection(&a).unwrap());
        let lhs = a.intersection(&b.union(&c).unwrap()).unwrap();
        let rhs = a.intersection(&b).unwrap().union(&a.intersection(&c).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        let dm = a.union(&b).unwrap().complement().unwrap();
        prop_assert_eq!(dm, a.complement().unwrap().intersection(&b.complement().unwrap()).unwrap());
        prop_assert_eq!(a.complement().unwrap().complement().unwrap(), a.clone());
    }

    #[test]
    fn canonical_form_is_unique(a in presburger(), shift in -50i64..=50) {
        // the same set reached by two different routes has one representation
        let there_and_back = a.translate(&z(), &int(shift)).unwrap().translate(&z(), &int(-shift)).unwrap();
        prop_assert_eq!(&there_and_back, &a);
        let padded = a.union(&DefinableSet::empty(&z())).unwrap();
        prop_assert_eq!(&padded, &a);
        prop_assert_eq!(json::parse_set(&z(), &json::set_to_json(&a)).unwrap(), a);
    }

    #[test]
    fn generic_certificates_cover(a in presburger()) {
        match is_left_generic(&z(), &a).unwrap() {
            Genericity::Generic { translates } => {
                prop_assert!(verify_cover(&z(), &a, &translates).unwrap());
                // a generic set's differences contain a full subgroup dZ
                let d = a.difference_set(&z()).unwrap();
                let m = a.period() as i64;
                for k in -50..=50 {
                    prop_assert!(member(&d, m * k), "{} missing from the difference set", m * k);
                }
            }
            Genericity::NotGeneric { .. } => {
                let p = a.as_presburger().unwrap();
                prop_assert!(!p.up().iter().any(|&b| b) || !p.down().iter().any(|&b| b));
            }
        }
    }

    #[test]
    fn star_is_associative((n, p, q, r) in level_and_triple()) {
        let z = z();
        let left = star(&z, &star(&z, &p, &q).unwrap(), &r).unwrap();
        let right = star(&z, &p, &star(&z, &q, &r).unwrap()).unwrap();
        prop_assert_eq!(&left, &right, "level {}", n);
    }

    #[test]
    fn star_agrees_with_schema((_n, p, q, _r) in level_and_triple()) {
        prop_assert_eq!(star(&z(), &p, &q).unwrap(), star_via_schema(&z(), &p, &q).unwrap());
    }

    #[test]
    fn restriction_commutes_with_star((n, p, q, _r) in level_and_triple()) {
        let z = z();
        let pq = star(&z, &p, &q).unwrap();
        for m in Level::new(n).unwrap().divisors() {
            let lhs = restrict(&pq, m).unwrap();
            let rhs = star(&z, &restrict(&p, m).unwrap(), &restrict(&q, m).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn star_extends_the_action((_n, p, _q, _r) in level_and_triple(), g in -100i64..=100) {
        let z = z();
        let via_star = star(&z, &TypePoint::Realized(int(g)), &p).unwrap();
        prop_assert_eq!(via_star, apply_group(&z, &int(g), &p).unwrap());
    }

    #[test]
    fn types_are_ultrafilters(a in presburger(), b in presburger(), up in any::<bool>(), r in 0u64..60) {
        // level 60 is divisible by every modulus the strategy produces
        let sign = if up { Sign::Plus } else { Sign::Minus };
        let p = TypePoint::Limit { sign, residue: r, modulus: 60 };
        let u = a.union(&b).unwrap();
        prop_assert_eq!(contains(&p, &u).unwrap(), contains(&p, &a).unwrap() || contains(&p, &b).unwrap());
        prop_assert_eq!(contains(&p, &a.complement().unwrap()).unwrap(), !contains(&p, &a).unwrap());
    }

    #[test]
    fn action_commutes_with_restriction((n, p, _q, _r) in level_and_triple(), g in -100i64..=100) {
        let z = z();
        let gp = apply_group(&z, &int(g), &p).unwrap();
        prop_assert_eq!(gp.level(), p.level());
        prop_assert_eq!(apply_group(&z, &int(-g), &gp).unwrap(), p.clone());
        for m in Level::new(n).unwrap().divisors() {
            prop_assert_eq!(restrict(&gp, m).unwrap(), apply_group(&z, &int(g), &restrict(&p, m).unwrap()).unwrap());
        }
    }
}

#[test]
fn bundled_groups_are_associative() {
    for (name, g) in catalog::bundled() {
        let n = g.order();
        for a in 0..n {
            assert_eq!(g.inv(g.inv(a)), a, "{name}");
            for b in 0..n {
                for c in 0..n {
                    assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)), "{name}");
                }
            }
        }
    }
    let c12 = catalog::cyclic(12).unwrap();
    let ctx = GroupContext::Finite(c12);
    for a in 0..12 {
        let e = GroupElement::Index(a);
        assert_eq!(ctx.invert(&ctx.invert(&e).unwrap()).unwrap(), e);
    }
}
