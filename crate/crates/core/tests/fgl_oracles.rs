mod common;

use std::collections::BTreeMap;

use common::{a, int};
use lazard_core::chern::fgl_tensor_identity_check;
use lazard_core::coeff::{CoefficientBackend, Generator, GradedPolynomial};
use lazard_core::fgl::FormalGroupLaw;
use lazard_core::series::TruncatedSeries;
use num_traits::Zero;

type Dense = BTreeMap<(u32, u32), GradedPolynomial>;

fn dense_mul(x: &Dense, y: &Dense, order: u32) -> Dense {
    let mut out = Dense::new();
    for (&(i, j), c) in x {
        for (&(k, l), d) in y {
            if i + j + k + l <= order {
                let e = out
                    .entry((i + k, j + l))
                    .or_insert_with(GradedPolynomial::zero);
                *e = &*e + &(c * d);
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn m(i: u32) -> GradedPolynomial {
    Generator::log(i).unwrap().into()
}

/// Solves `l(F) = l(u) + l(v)` degree by degree, with
/// `l(x) = x + Σ m_i x^{i+1}`, directly on dense bivariate coefficients.
fn log_law_by_hand(order: u32) -> Dense {
    let mut f = Dense::new();
    f.insert((1, 0), int(1));
    f.insert((0, 1), int(1));
    for k in 2..=order {
        let mut rhs = Dense::new();
        rhs.insert((k, 0), m(k - 1));
        rhs.insert((0, k), m(k - 1));
        let mut power = f.clone();
        for i in 1..k {
            power = dense_mul(&power, &f, order);
            for (&(p, q), c) in &power {
                if p + q == k {
                    let e = rhs.entry((p, q)).or_insert_with(GradedPolynomial::zero);
                    *e = &*e - &(&m(i) * c);
                }
            }
        }
        for ((p, q), c) in rhs {
            if p + q == k && !c.is_zero() {
                f.insert((p, q), c);
            }
        }
    }
    f
}

#[test]
fn log_coefficients_match_dense_solution() {
    let order = 6;
    let expected = log_law_by_hand(order);
    let law = FormalGroupLaw::new(CoefficientBackend::Log { order: order - 1 }, order).unwrap();
    for i in 1..order {
        for j in i..=(order - i) {
            let want = expected
                .get(&(i, j))
                .cloned()
                .unwrap_or_else(GradedPolynomial::zero);
            assert_eq!(law.coefficient(i, j), want, "a({i},{j})");
        }
    }
}

#[test]
fn log_low_coefficients_by_hand() {
    let law = FormalGroupLaw::new(CoefficientBackend::Log { order: 2 }, 3).unwrap();
    assert_eq!(law.coefficient(1, 1), &int(-2) * &m(1));
    assert_eq!(
        law.coefficient(1, 2),
        &(&int(4) * &m(1).pow(2)) - &(&int(3) * &m(2))
    );
}

#[test]
fn n_series_additive_on_log() {
    let law = FormalGroupLaw::new(CoefficientBackend::Log { order: 5 }, 6).unwrap();
    for n in -3..=3 {
        for k in -3..=3 {
            let lhs = law.n_series(n + k);
            let rhs = law.sum(&law.n_series(n), &law.n_series(k)).unwrap();
            assert_eq!(lhs, rhs, "[{n}+{k}]u");
        }
    }
}

#[test]
fn free_two_series_by_hand() {
    // F(u,u) = 2u + a11 u^2 + 2 a12 u^3 + (2 a13 + a22) u^4.
    let law = FormalGroupLaw::new(CoefficientBackend::Free, 4).unwrap();
    let u = vec!["u".to_string()];
    let expected = TruncatedSeries::from_terms(
        u,
        4,
        [
            (vec![1], int(2)),
            (vec![2], a(1, 1)),
            (vec![3], &int(2) * &a(1, 2)),
            (vec![4], &(&int(2) * &a(1, 3)) + &a(2, 2)),
        ],
    );
    assert_eq!(law.n_series(2), expected);
}

#[test]
fn inverse_cancels_on_every_backend() {
    for backend in [
        CoefficientBackend::Free,
        CoefficientBackend::Log { order: 5 },
        CoefficientBackend::Additive,
        CoefficientBackend::Multiplicative,
    ] {
        let law = FormalGroupLaw::new(backend, 6).unwrap();
        let u = TruncatedSeries::variable(vec!["u".into()], 6, 0);
        assert!(law.sum(&u, &law.inverse()).unwrap().is_zero(), "{backend}");
    }
}

#[test]
fn multiplicative_inverse_is_geometric() {
    let law = FormalGroupLaw::new(CoefficientBackend::Multiplicative, 6).unwrap();
    let b: GradedPolynomial = Generator::mult().into();
    let chi = law.inverse();
    for k in 1..=6u32 {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        assert_eq!(chi.coefficient(&[k]), &int(sign) * &b.pow(k - 1), "u^{k}");
    }
}

#[test]
fn law_is_not_additive_except_additive() {
    for backend in [
        CoefficientBackend::Free,
        CoefficientBackend::Log { order: 3 },
        CoefficientBackend::Multiplicative,
    ] {
        let law = FormalGroupLaw::new(backend, 4).unwrap();
        assert!(!law
            .multi_linear(&[1, 1])
            .unwrap()
            .coefficient(&[1, 1])
            .is_zero());
    }
    let law = FormalGroupLaw::new(CoefficientBackend::Additive, 4).unwrap();
    assert_eq!(law.multi_linear(&[1, 1]).unwrap().len(), 2);
}

#[test]
fn tensor_operator_is_law_of_operators() {
    for backend in [
        CoefficientBackend::Free,
        CoefficientBackend::Log { order: 4 },
        CoefficientBackend::Additive,
        CoefficientBackend::Multiplicative,
    ] {
        for d in 0..=4 {
            assert!(
                fgl_tensor_identity_check(d, backend).unwrap(),
                "{backend} d={d}"
            );
        }
    }
}

#[test]
fn log_law_is_associative() {
    let law = FormalGroupLaw::new(CoefficientBackend::Log { order: 5 }, 6).unwrap();
    let vars: Vec<String> = ["u", "v", "w"].map(String::from).into();
    let x = |i| TruncatedSeries::variable(vars.clone(), 6, i);
    let left = law.sum(&law.sum(&x(0), &x(1)).unwrap(), &x(2)).unwrap();
    let right = law.sum(&x(0), &law.sum(&x(1), &x(2)).unwrap()).unwrap();
    assert_eq!(left, right);
}
