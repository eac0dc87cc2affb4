//! Formal group laws as truncated series, and the operations built from
//! formal addition: inverse, n-series and multi-linear combinations.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::coeff::{CoefficientBackend, GradedPolynomial};
use crate::error::{Error, Result};
use crate::series::{indexed_vars, TruncatedSeries};

pub const DEFAULT_ORDER: u32 = 8;

/// Parenthesisation of an iterated formal sum. The two agree whenever the
/// law is associative; on the free backend they generally differ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FoldOrder {
    #[default]
    Left,
    Right,
}

/// `F(u,v) = u + v + Σ a(i,j) u^i v^j`, truncated at total degree `order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalGroupLaw {
    backend: CoefficientBackend,
    order: u32,
    coefficients: BTreeMap<(u32, u32), GradedPolynomial>,
    series: TruncatedSeries,
}

fn uv() -> Vec<String> {
    vec!["u".to_string(), "v".to_string()]
}

fn u_only() -> Vec<String> {
    vec!["u".to_string()]
}

impl FormalGroupLaw {
    pub fn new(backend: CoefficientBackend, order: u32) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidArgument(
                "truncation order must be positive".into(),
            ));
        }
        let coefficients = backend.coefficient_table(order)?;
        let mut terms = vec![
            (vec![1, 0], GradedPolynomial::from_int(1)),
            (vec![0, 1], GradedPolynomial::from_int(1)),
        ];
        for (&(i, j), c) in &coefficients {
            terms.push((vec![i, j], c.clone()));
            if i != j {
                terms.push((vec![j, i], c.clone()));
            }
        }
        let series = TruncatedSeries::from_terms(uv(), order, terms);
        Ok(FormalGroupLaw {
            backend,
            order,
            coefficients,
            series,
        })
    }

    pub fn backend(&self) -> CoefficientBackend {
        self.backend
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// `F(u,v)` as a series in `u, v`.
    pub fn series(&self) -> &TruncatedSeries {
        &self.series
    }

    /// `a(i,j)`, zero outside the truncation.
    pub fn coefficient(&self, i: u32, j: u32) -> GradedPolynomial {
        self.coefficients
            .get(&(i.min(j), i.max(j)))
            .cloned()
            .unwrap_or_else(GradedPolynomial::zero)
    }

    /// Nonzero `a(i,j)` with `i <= j`.
    pub fn coefficients(&self) -> &BTreeMap<(u32, u32), GradedPolynomial> {
        &self.coefficients
    }

    /// The formal sum `F(s, t)`.
    pub fn sum(&self, s: &TruncatedSeries, t: &TruncatedSeries) -> Result<TruncatedSeries> {
        if s.vars() != t.vars() {
            return Err(Error::VariableMismatch(
                s.vars().to_vec(),
                t.vars().to_vec(),
            ));
        }
        self.series.substitute(&[("u", s), ("v", t)])
    }

    /// The formal inverse `χ(u)` with `F(u, χ(u)) = 0`, solved degree by
    /// degree: the degree-`k` coefficient of `F(u, χ_{<k}(u))` fixes `χ_k`.
    pub fn inverse(&self) -> TruncatedSeries {
        let u = TruncatedSeries::variable(u_only(), self.order, 0);
        let mut chi = u.neg();
        for k in 2..=self.order {
            let residual = self.sum(&u, &chi).expect("same variable space");
            let c = residual.coefficient(&[k]);
            if !c.is_zero() {
                let correction = TruncatedSeries::from_terms(u_only(), self.order, [(vec![k], -c)]);
                chi = chi.plus(&correction);
            }
        }
        chi
    }

    /// `[n](u)`: the `n`-fold formal sum of `u` (of `χ(u)` when `n < 0`).
    pub fn n_series(&self, n: i64) -> TruncatedSeries {
        let u = TruncatedSeries::variable(u_only(), self.order, 0);
        if n == 0 {
            return TruncatedSeries::zero(u_only(), self.order);
        }
        let step = if n > 0 { u } else { self.inverse() };
        let mut acc = step.clone();
        for _ in 1..n.unsigned_abs() {
            acc = self.sum(&acc, &step).expect("same variable space");
        }
        acc
    }

    /// `[n₁]u₁ +_F [n₂]u₂ +_F ... +_F [n_r]u_r` in variables `u1..ur`,
    /// folded left to right.
    pub fn multi_linear(&self, ns: &[i64]) -> Result<TruncatedSeries> {
        self.multi_linear_with(ns, FoldOrder::Left)
    }

    pub fn multi_linear_with(&self, ns: &[i64], fold: FoldOrder) -> Result<TruncatedSeries> {
        if ns.is_empty() {
            return Err(Error::InvalidArgument(
                "multiplicity vector is empty".into(),
            ));
        }
        let vars = indexed_vars("u", ns.len());
        let mut cache: BTreeMap<i64, TruncatedSeries> = BTreeMap::new();
        let mut parts = Vec::with_capacity(ns.len());
        for (i, &n) in ns.iter().enumerate() {
            let univariate = cache.entry(n).or_insert_with(|| self.n_series(n));
            parts.push(univariate.lift(vars.clone(), &[i]));
        }
        let combined = match fold {
            FoldOrder::Left => {
                let mut it = parts.into_iter();
                let first = it.next().expect("nonempty");
                it.try_fold(first, |acc, p| self.combine(acc, p))?
            }
            FoldOrder::Right => {
                let mut it = parts.into_iter().rev();
                let last = it.next().expect("nonempty");
                it.try_fold(last, |acc, p| self.combine(p, acc))?
            }
        };
        Ok(combined)
    }

    // F(x, 0) = x and F(0, y) = y hold exactly, so skip the composition.
    fn combine(&self, x: TruncatedSeries, y: TruncatedSeries) -> Result<TruncatedSeries> {
        if y.is_zero() {
            Ok(x)
        } else if x.is_zero() {
            Ok(y)
        } else {
            self.sum(&x, &y)
        }
    }
}
