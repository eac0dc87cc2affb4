use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::generator::{Family, Generator};
use super::polynomial::GradedPolynomial;
use crate::error::{Error, Result};
use crate::series::TruncatedSeries;

/// Where the formal group law coefficients `a(i,j)` come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CoefficientBackend {
    /// `a(i,j) = A(i,j)`: free symbols, symmetric but without the
    /// associativity relations.
    Free,
    /// `F(u,v) = l⁻¹(l(u) + l(v))` for `l(u) = u + Σ m(i) u^(i+1)`, with
    /// generators `m(1)..m(order)`. Associative by construction.
    Log { order: u32 },
    /// `F(u,v) = u + v`.
    Additive,
    /// `F(u,v) = u + v + b·uv`.
    Multiplicative,
}

impl CoefficientBackend {
    pub fn family(&self) -> Option<Family> {
        match self {
            CoefficientBackend::Free => Some(Family::Free),
            CoefficientBackend::Log { .. } => Some(Family::Log),
            CoefficientBackend::Additive => None,
            CoefficientBackend::Multiplicative => Some(Family::Multiplicative),
        }
    }

    /// The coefficient `a(i,j)` of `u^i v^j`.
    pub fn lazard_coefficient(&self, i: u32, j: u32) -> Result<GradedPolynomial> {
        if i == 0 || j == 0 {
            return Err(Error::InvalidIndex(i, j));
        }
        match self {
            CoefficientBackend::Free => Ok(Generator::lazard(i, j)?.into()),
            CoefficientBackend::Additive => Ok(GradedPolynomial::zero()),
            CoefficientBackend::Multiplicative => Ok(if (i, j) == (1, 1) {
                Generator::mult().into()
            } else {
                GradedPolynomial::zero()
            }),
            CoefficientBackend::Log { order } => {
                if i + j - 1 > *order {
                    return Err(Error::OutOfTruncation {
                        i,
                        j,
                        order: *order,
                    });
                }
                let table = self.coefficient_table(i + j)?;
                Ok(table
                    .get(&(i.min(j), i.max(j)))
                    .cloned()
                    .unwrap_or_default())
            }
        }
    }

    /// All coefficients `a(i,j)` with `i <= j` and `i + j <= max_total`,
    /// zero entries omitted.
    pub fn coefficient_table(
        &self,
        max_total: u32,
    ) -> Result<BTreeMap<(u32, u32), GradedPolynomial>> {
        if let CoefficientBackend::Log { order } = *self {
            return log_coefficients(order, max_total);
        }
        let mut out = BTreeMap::new();
        for total in 2..=max_total {
            for i in 1..=total / 2 {
                let c = self.lazard_coefficient(i, total - i)?;
                if !c.is_zero() {
                    out.insert((i, total - i), c);
                }
            }
        }
        Ok(out)
    }
}

fn log_coefficients(order: u32, max_total: u32) -> Result<BTreeMap<(u32, u32), GradedPolynomial>> {
    if max_total >= 2 && max_total - 1 > order {
        let i = 1;
        return Err(Error::OutOfTruncation {
            i,
            j: max_total - i,
            order,
        });
    }
    let n = max_total.max(1);
    let x = vec!["x".to_string()];
    let mut log = TruncatedSeries::variable(x.clone(), n, 0);
    for k in 1..n {
        log.add_term(
            crate::series::Exponents::new(vec![k + 1]),
            Generator::log(k)?.into(),
        );
    }
    let exp = log.reversion()?;
    let uv = vec!["u".to_string(), "v".to_string()];
    let lu = log.substitute(&[("x", &TruncatedSeries::variable(uv.clone(), n, 0))])?;
    let lv = log.substitute(&[("x", &TruncatedSeries::variable(uv.clone(), n, 1))])?;
    let sum = exp.substitute(&[("x", &lu.plus(&lv))])?;
    let mut out = BTreeMap::new();
    for (e, c) in sum.terms() {
        let (i, j) = (e.as_slice()[0], e.as_slice()[1]);
        if i >= 1 && j >= i {
            out.insert((i, j), c.clone());
        }
    }
    Ok(out)
}

impl fmt::Display for CoefficientBackend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientBackend::Free => f.write_str("free"),
            CoefficientBackend::Log { order } => write!(f, "log({order})"),
            CoefficientBackend::Additive => f.write_str("additive"),
            CoefficientBackend::Multiplicative => f.write_str("mult"),
        }
    }
}

/// Parses `free`, `additive`, `mult` and `log` / `log(N)`; a bare `log`
/// gets order 0 and must be widened with [`CoefficientBackend::with_order`].
impl FromStr for CoefficientBackend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "free" => Ok(CoefficientBackend::Free),
            "additive" => Ok(CoefficientBackend::Additive),
            "mult" | "multiplicative" => Ok(CoefficientBackend::Multiplicative),
            "log" => Ok(CoefficientBackend::Log { order: 0 }),
            _ => s
                .strip_prefix("log(")
                .and_then(|r| r.strip_suffix(')'))
                .and_then(|n| n.parse().ok())
                .map(|order| CoefficientBackend::Log { order })
                .ok_or_else(|| Error::Parse(format!("unknown backend `{s}`"))),
        }
    }
}

impl CoefficientBackend {
    /// For the log backend, ensures enough `m` generators for a formal
    /// group law truncated at `series_order`. Other backends are unchanged.
    pub fn with_order(self, series_order: u32) -> Self {
        match self {
            CoefficientBackend::Log { order } => CoefficientBackend::Log {
                order: order.max(series_order.saturating_sub(1)),
            },
            other => other,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::GradedDegree;

    const BACKENDS: [CoefficientBackend; 4] = [
        CoefficientBackend::Free,
        CoefficientBackend::Log { order: 5 },
        CoefficientBackend::Additive,
        CoefficientBackend::Multiplicative,
    ];

    #[test]
    fn free_coefficients_are_symmetric_symbols() {
        let c = CoefficientBackend::Free.lazard_coefficient(2, 1).unwrap();
        assert_eq!(c.to_string(), "A(1,2)");
    }

    #[test]
    fn additive_is_zero() {
        assert!(CoefficientBackend::Additive
            .lazard_coefficient(1, 1)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn log_a11() {
        let c = CoefficientBackend::Log { order: 3 }
            .lazard_coefficient(1, 1)
            .unwrap();
        assert_eq!(c.to_string(), "-2*m(1)");
    }

    #[test]
    fn log_out_of_truncation() {
        let b = CoefficientBackend::Log { order: 2 };
        assert!(b.lazard_coefficient(1, 2).is_ok());
        assert!(matches!(
            b.lazard_coefficient(2, 2),
            Err(Error::OutOfTruncation { .. })
        ));
    }

    #[test]
    fn symmetric_and_homogeneous() {
        for b in BACKENDS {
            for i in 1..=3 {
                for j in 1..=3 {
                    let a = b.lazard_coefficient(i, j).unwrap();
                    assert_eq!(a, b.lazard_coefficient(j, i).unwrap(), "{b} a({i},{j})");
                    assert!(
                        a.degree().is_compatible_with(i64::from(i + j) - 1),
                        "{b} a({i},{j}) = {a}"
                    );
                }
            }
        }
    }

    #[test]
    fn log_at_zero_is_additive() {
        let table = CoefficientBackend::Log { order: 5 }
            .coefficient_table(6)
            .unwrap();
        for c in table.values() {
            let at_zero = c.evaluate(|_| Some(GradedPolynomial::zero()));
            assert!(at_zero.is_zero());
            assert!(matches!(c.degree(), GradedDegree::Exact(_)));
        }
    }

    #[test]
    fn parse_backend() {
        assert_eq!(
            "mult".parse::<CoefficientBackend>().unwrap(),
            CoefficientBackend::Multiplicative
        );
        assert_eq!(
            "log(4)".parse::<CoefficientBackend>().unwrap(),
            CoefficientBackend::Log { order: 4 }
        );
        assert_eq!(
            "log".parse::<CoefficientBackend>().unwrap().with_order(8),
            CoefficientBackend::Log { order: 7 }
        );
        assert!("tropical".parse::<CoefficientBackend>().is_err());
    }
}
