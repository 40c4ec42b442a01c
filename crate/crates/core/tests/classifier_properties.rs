use std::collections::BTreeSet;

use num_bigint::BigInt;
use onesided::cf::{cf_expand, convergents, semiconvergents, AlphaSource, CfExpansion};
use onesided::classify::{classify, Query, Side};
use onesided::numeric::{BigRational, QuadraticSurd};
use proptest::prelude::*;

const Q_MAX: u64 = 400;

fn alpha() -> impl Strategy<Value = QuadraticSurd> {
    prop_oneof![
        (-300i64..300, 1i64..60)
            .prop_map(|(p, q)| QuadraticSurd::from_rational(&BigRational::new(p.into(), q.into()))),
        (-40i64..40, -6i64..6, 2i64..50, 1i64..15)
            .prop_filter_map("valid", |(p, q, d, r)| QuadraticSurd::new(p, q, d, r).ok()),
    ]
}

fn set(cf: &CfExpansion, kind: u32, side: Side) -> BTreeSet<(BigInt, BigInt)> {
    classify(&Query::new(cf, kind, side, Q_MAX).unwrap())
        .unwrap()
        .fractions()
        .into_iter()
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(80))]

    #[test]
    fn higher_kinds_are_subsets(a in alpha()) {
        let cf = cf_expand(AlphaSource::Surd(a)).unwrap();
        for side in [Side::Lower, Side::Upper] {
            let sets: Vec<_> = (1..=6).map(|k| set(&cf, k, side)).collect();
            prop_assert_eq!(&sets[0], &sets[1]);
            for k in 1..sets.len() {
                prop_assert!(sets[k].is_subset(&sets[k - 1]), "kind {} side {}", k + 1, side);
            }
        }
    }

    #[test]
    fn numerators_are_floor_or_ceil(a in alpha(), kind in 1u32..6) {
        let cf = cf_expand(AlphaSource::Surd(a.clone())).unwrap();
        for (p, q) in set(&cf, kind, Side::Lower) {
            prop_assert_eq!(p, a.mul_integer(&q).floor());
        }
        for (p, q) in set(&cf, kind, Side::Upper) {
            prop_assert_eq!(p, a.mul_integer(&q).ceil());
        }
    }

    #[test]
    fn mirror_symmetry(a in alpha(), kind in 1u32..6) {
        let cf = cf_expand(AlphaSource::Surd(a.clone())).unwrap();
        let neg = cf_expand(AlphaSource::Surd(-a)).unwrap();
        let lower: BTreeSet<_> = set(&cf, kind, Side::Lower);
        let mirrored: BTreeSet<_> = set(&neg, kind, Side::Upper)
            .into_iter()
            .map(|(p, q)| (-p, q))
            .collect();
        prop_assert_eq!(lower, mirrored);
    }

    #[test]
    fn convergents_and_semiconvergents_are_covered(a in alpha()) {
        let cf = cf_expand(AlphaSource::Surd(a)).unwrap();
        let union: BTreeSet<_> = set(&cf, 1, Side::Lower).union(&set(&cf, 1, Side::Upper)).cloned().collect();
        let limit = BigInt::from(Q_MAX);
        let table = convergents(&cf, 60);
        for row in &table.rows()[1..] {
            if row.q <= limit {
                prop_assert!(union.contains(&(row.p.clone(), row.q.clone())), "convergent {}/{}", row.p, row.q);
            }
            let n = row.n as usize;
            for s in semiconvergents(&cf, n).unwrap_or_default() {
                if s.q <= limit {
                    prop_assert!(union.contains(&(s.p.clone(), s.q.clone())), "semiconvergent {}", s);
                }
            }
        }
    }
}
