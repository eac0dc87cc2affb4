#![allow(dead_code)]

use lazard_core::coeff::{CoefficientBackend, Generator, GradedPolynomial};
use lazard_core::snc::{Component, SncConfiguration};
use lazard_core::Subset;
use proptest::prelude::*;

/// All subsets of `0..r` of size at least two, smallest first.
fn higher_subsets(r: usize) -> Vec<Subset> {
    let mut out: Vec<Subset> = (1u32..(1 << r))
        .map(|mask| Subset::new((0..r).filter(|i| mask & (1 << i) != 0)))
        .filter(|s| s.len() >= 2)
        .collect();
    out.sort();
    out
}

/// A valid configuration: every singleton is a face, and a higher subset
/// is a face when its bit in `mask` is set, all its facets are faces and
/// it fits in the ambient dimension.
pub fn configuration(ambient_dim: u32, r: usize, mask: u32) -> SncConfiguration {
    let mut faces: Vec<Subset> = (0..r).map(Subset::singleton).collect();
    for (k, s) in higher_subsets(r).into_iter().enumerate() {
        let wanted = mask & (1 << k) != 0 && s.len() as u32 <= ambient_dim;
        if wanted && s.facets().all(|f| faces.contains(&f)) {
            faces.push(s);
        }
    }
    let components = (1..=r).map(|i| Component::new(format!("D{i}"))).collect();
    SncConfiguration::new(ambient_dim, components, faces)
}

pub fn config_strategy(max_ambient: u32, max_r: usize) -> impl Strategy<Value = SncConfiguration> {
    (1..=max_ambient, 1..=max_r, any::<u32>()).prop_map(|(d, r, mask)| configuration(d, r, mask))
}

/// Multiplicity vectors over `values`, forced nonzero.
pub fn multiplicities(r: usize, values: &'static [i64]) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(prop::sample::select(values), r).prop_map(|mut v| {
        if v.iter().all(|&n| n == 0) {
            v[0] = 1;
        }
        v
    })
}

pub fn backend_strategy() -> impl Strategy<Value = CoefficientBackend> {
    prop::sample::select(vec![
        CoefficientBackend::Log { order: 3 },
        CoefficientBackend::Additive,
        CoefficientBackend::Multiplicative,
    ])
}

pub fn a(i: u32, j: u32) -> GradedPolynomial {
    Generator::lazard(i, j).unwrap().into()
}

pub fn int(n: i64) -> GradedPolynomial {
    GradedPolynomial::from_int(n)
}

/// Small coefficients over the free Lazard generators.
pub fn coefficient_strategy() -> impl Strategy<Value = GradedPolynomial> {
    (-3i64..=3, 0u32..3, 1u32..3).prop_map(
        |(k, i, j)| {
            if i == 0 {
                int(k)
            } else {
                &int(k) * &a(i, j)
            }
        },
    )
}
