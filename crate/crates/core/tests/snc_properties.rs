mod common;

use std::collections::BTreeMap;

use common::{backend_strategy, config_strategy, configuration, multiplicities};
use lazard_core::chern::ChernPolynomial;
use lazard_core::coeff::{CoefficientBackend, GradedPolynomial};
use lazard_core::fgl::FormalGroupLaw;
use lazard_core::snc::{
    check_operator_agreement, check_reduction, check_symmetry, divisor_class, product_class,
    FaceClassVector, SncConfiguration,
};
use lazard_core::{GradedDegree, Subset};
use num_traits::Zero;
use proptest::prelude::*;

fn law(backend: CoefficientBackend, c: &SncConfiguration) -> FormalGroupLaw {
    let order = c.ambient_dim.max(1);
    FormalGroupLaw::new(backend.with_order(order), order).unwrap()
}

fn config_with(
    max_ambient: u32,
    max_r: usize,
    values: &'static [i64],
) -> impl Strategy<Value = (SncConfiguration, Vec<i64>, Vec<i64>)> {
    config_strategy(max_ambient, max_r).prop_flat_map(move |c| {
        let r = c.num_components();
        (
            Just(c),
            multiplicities(r, values),
            multiplicities(r, values),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn product_is_symmetric((c, d, e) in config_with(3, 3, &[-2, -1, 0, 1, 2]), backend in backend_strategy()) {
        prop_assert!(check_symmetry(&c, &d, &e, &law(backend, &c)).unwrap());
    }

    #[test]
    fn operator_agrees_after_normal_form((c, d, e) in config_with(3, 3, &[0, 1, 2]), backend in backend_strategy()) {
        prop_assert!(check_operator_agreement(&c, &d, &e, &law(backend, &c)).unwrap());
    }

    #[test]
    fn reduced_component_reduces_to_restriction(
        (c, _, e) in config_with(3, 3, &[-1, 0, 1, 2]),
        i in 0usize..3,
        backend in backend_strategy(),
    ) {
        let r = c.num_components();
        let i = i % r;
        let mut e = e;
        e[i] = 0;
        prop_assume!(e.iter().any(|&p| p != 0));
        let mut d = vec![0; r];
        d[i] = 1;
        prop_assert_eq!(check_reduction(&c, &d, &e, &law(backend, &c)).unwrap(), Some(true));
    }

    #[test]
    fn classes_have_expected_dimension((c, d, e) in config_with(4, 3, &[-2, -1, 0, 1, 2])) {
        let f = law(CoefficientBackend::Free, &c);
        let ambient = i64::from(c.ambient_dim);
        prop_assert!(divisor_class(&c, &d, &f).unwrap().class_dimension().is_compatible_with(ambient - 1));
        prop_assert!(product_class(&c, &d, &e, &f).unwrap().class_dimension().is_compatible_with(ambient - 2));
    }

    #[test]
    fn normal_form_matches_stepwise_rewriting(c in config_strategy(3, 3), seed in any::<u64>()) {
        let v = random_vector(&c, seed);
        prop_assert_eq!(v.normal_form(), stepwise_normal_form(&v));
    }
}

/// Deterministic pseudo-random face vector with symbols inside and outside
/// each face.
fn random_vector(c: &SncConfiguration, seed: u64) -> FaceClassVector {
    let r = c.num_components();
    let mut state = seed | 1;
    let mut next = |m: u64| {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state % m
    };
    let entries: Vec<(Subset, ChernPolynomial)> = c
        .faces
        .iter()
        .map(|face| {
            let dim = c.face_dim(face);
            let terms: Vec<(Vec<u32>, GradedPolynomial)> = (0..4)
                .map(|_| {
                    let e = (0..r).map(|_| next(3) as u32).collect();
                    (e, GradedPolynomial::from_int(next(7) as i64 - 3))
                })
                .collect();
            (face.clone(), ChernPolynomial::from_terms(r, dim, terms))
        })
        .collect();
    FaceClassVector::from_entries(c, entries).unwrap()
}

/// Applies the section rewrite one symbol at a time until nothing moves.
fn stepwise_normal_form(v: &FaceClassVector) -> FaceClassVector {
    let c = v.config();
    let r = c.num_components();
    let mut work: BTreeMap<(Subset, Vec<u32>), GradedPolynomial> = BTreeMap::new();
    for (face, p) in v.entries() {
        for (e, coeff) in p.terms() {
            work.insert((face.clone(), e.as_slice().to_vec()), coeff.clone());
        }
    }
    while let Some(((face, e), coeff)) = work
        .iter()
        .find(|((face, e), _)| {
            e.iter()
                .enumerate()
                .any(|(j, &k)| k > 0 && !face.contains(j))
        })
        .map(|(k, v)| (k.clone(), v.clone()))
    {
        work.remove(&(face.clone(), e.clone()));
        let j = (0..r).find(|&j| e[j] > 0 && !face.contains(j)).unwrap();
        let target = face.with(j);
        if !c.has_face(&target) {
            continue;
        }
        let mut moved = e.clone();
        moved[j] -= 1;
        if moved.iter().sum::<u32>() > c.face_dim(&target) {
            continue;
        }
        let slot = work
            .entry((target, moved))
            .or_insert_with(GradedPolynomial::zero);
        *slot = &*slot + &coeff;
        if slot.is_zero() {
            work.retain(|_, x| !x.is_zero());
        }
    }
    let mut grouped: BTreeMap<Subset, Vec<(Vec<u32>, GradedPolynomial)>> = BTreeMap::new();
    for ((face, e), coeff) in work {
        grouped.entry(face).or_default().push((e, coeff));
    }
    let entries = grouped.into_iter().map(|(face, terms)| {
        let dim = c.face_dim(&face);
        (face, ChernPolynomial::from_terms(r, dim, terms))
    });
    FaceClassVector::from_entries(c, entries).unwrap()
}

/// Splitting `D_2` into disjoint pieces `D_2, D_3` of the same multiplicity:
/// each piece's entry, with `c_3` read as `c_2`, is the merged entry.
#[test]
fn split_component_matches_merged_component() {
    let merged = SncConfiguration::generic(3, 2);
    let split = {
        let faces = SncConfiguration::generic(3, 3)
            .faces
            .into_iter()
            .filter(|f| !(f.contains(1) && f.contains(2)));
        SncConfiguration::new(3, configuration(3, 3, 0).components, faces)
    };
    split.validate().unwrap();
    let f = FormalGroupLaw::new(CoefficientBackend::Free, 4).unwrap();
    for n1 in [-1, 1, 2] {
        for n in [1, 2, 3] {
            let whole = divisor_class(&merged, &[n1, n], &f).unwrap();
            let pieces = divisor_class(&split, &[n1, n, n], &f).unwrap();
            let mut seen = std::collections::BTreeSet::new();
            for (face, p) in pieces.entries() {
                let merged_face = Subset::new(face.indices().iter().map(|&i| i.min(1)));
                let renamed = ChernPolynomial::from_terms(
                    2,
                    p.dim_bound(),
                    p.terms().map(|(e, c)| {
                        let e = e.as_slice();
                        (vec![e[0], e[1] + e[2]], c.clone())
                    }),
                );
                assert_eq!(
                    whole.get(&merged_face),
                    Some(&renamed),
                    "n=({n1},{n}) face {face:?}"
                );
                seen.insert(merged_face);
            }
            assert_eq!(seen.len(), whole.entries().len());
        }
    }
}

#[test]
fn homogeneous_divisor_class_on_generic_configurations() {
    for d in 1..=3 {
        for r in 1..=3 {
            let c = SncConfiguration::generic(d, r);
            let f = law(CoefficientBackend::Log { order: 3 }, &c);
            let ns: Vec<i64> = (1..=r as i64).collect();
            assert_eq!(
                divisor_class(&c, &ns, &f).unwrap().class_dimension(),
                GradedDegree::Exact(i64::from(d) - 1)
            );
        }
    }
}
