//! Formula-level checks of the product class: symmetry, the reduction to a
//! restricted divisor class, agreement with the divisor operator after
//! normal form, and homogeneity.

use serde::Serialize;

use super::classes::{divisor_class, lift_chern, product_class, FaceClassVector};
use super::config::{restrict_to_component, SncConfiguration};
use crate::error::Result;
use crate::fgl::FormalGroupLaw;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
}

impl From<bool> for Status {
    fn from(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyResult {
    pub property: &'static str,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub all_passed: bool,
    pub results: Vec<PropertyResult>,
}

/// `[D•E] = [E•D]`.
pub fn check_symmetry(
    c: &SncConfiguration,
    ns: &[i64],
    ps: &[i64],
    law: &FormalGroupLaw,
) -> Result<bool> {
    Ok(product_class(c, ns, ps, law)? == product_class(c, ps, ns, law)?)
}

/// For a reduced single component `D = D_i` not contained in `E`, the
/// product class equals the divisor class of `E` restricted to `D_i`,
/// moved back along `J ↦ J ∪ {i}`. `None` when `D` is not of that shape.
pub fn check_reduction(
    c: &SncConfiguration,
    ns: &[i64],
    ps: &[i64],
    law: &FormalGroupLaw,
) -> Result<Option<bool>> {
    let Some(i) = reduced_component(ns) else {
        return Ok(None);
    };
    if ps.get(i).copied().unwrap_or(0) != 0 {
        return Ok(None);
    }
    let product = product_class(c, ns, ps, law)?;
    Ok(Some(product == transported_restriction(c, i, ps, law)?))
}

/// `divisor_class(E|_{D_i})` re-expressed on the parent configuration.
pub fn transported_restriction(
    c: &SncConfiguration,
    i: usize,
    ps: &[i64],
    law: &FormalGroupLaw,
) -> Result<FaceClassVector> {
    let restriction = restrict_to_component(c, i, ps);
    if restriction.multiplicities.iter().all(|&p| p == 0) {
        return Ok(FaceClassVector::zero(c));
    }
    let inner = divisor_class(&restriction.config, &restriction.multiplicities, law)?;
    let r = c.num_components();
    let entries = inner.entries().iter().map(|(face, p)| {
        (
            restriction.lift_face(face),
            lift_chern(p, r, &restriction.original_index),
        )
    });
    FaceClassVector::from_entries(c, entries)
}

fn reduced_component(ns: &[i64]) -> Option<usize> {
    let mut nonzero = ns.iter().enumerate().filter(|(_, &n)| n != 0);
    match (nonzero.next(), nonzero.next()) {
        (Some((i, 1)), None) => Some(i),
        _ => None,
    }
}

/// Normal forms of `[D•E]` and of `ch(O(D))` applied to `[E → |E|]` agree.
pub fn check_operator_agreement(
    c: &SncConfiguration,
    ns: &[i64],
    ps: &[i64],
    law: &FormalGroupLaw,
) -> Result<bool> {
    let product = product_class(c, ns, ps, law)?;
    let operated = divisor_class(c, ps, law)?.apply_divisor_operator(ns, law)?;
    Ok(product.normal_form() == operated.normal_form())
}

/// Runs every applicable check on one configuration and pair of divisors.
pub fn check_properties(
    c: &SncConfiguration,
    ns: &[i64],
    ps: &[i64],
    law: &FormalGroupLaw,
) -> Result<PropertyReport> {
    let ambient = i64::from(c.ambient_dim);
    let mut results = vec![PropertyResult {
        property: "symmetry",
        status: check_symmetry(c, ns, ps, law)?.into(),
        detail: None,
    }];
    results.push(match check_reduction(c, ns, ps, law)? {
        Some(ok) => PropertyResult {
            property: "reduction_to_restriction",
            status: ok.into(),
            detail: None,
        },
        None => PropertyResult {
            property: "reduction_to_restriction",
            status: Status::NotApplicable,
            detail: Some("D is not a single reduced component outside E".into()),
        },
    });
    results.push(PropertyResult {
        property: "operator_normal_form",
        status: check_operator_agreement(c, ns, ps, law)?.into(),
        detail: None,
    });
    for (name, class, expected) in [
        (
            "divisor_dimension_D",
            divisor_class(c, ns, law)?,
            ambient - 1,
        ),
        (
            "divisor_dimension_E",
            divisor_class(c, ps, law)?,
            ambient - 1,
        ),
        (
            "product_dimension",
            product_class(c, ns, ps, law)?,
            ambient - 2,
        ),
    ] {
        let dim = class.class_dimension();
        results.push(PropertyResult {
            property: name,
            status: dim.is_compatible_with(expected).into(),
            detail: Some(format!("dimension {dim}, expected {expected}")),
        });
    }
    Ok(PropertyReport {
        all_passed: results.iter().all(|r| r.status != Status::Fail),
        results,
    })
}
