//! Truncated multivariate power series over [`GradedPolynomial`] coefficients.
//!
//! A series carries its ordered variable names and a truncation order `N`;
//! every stored term has total degree at most `N`. Binary operations demand
//! identical variables and orders and never re-truncate silently.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::coeff::GradedPolynomial;
use crate::error::{Error, Result};
use crate::{GradedDegree, Rational, Subset};

/// Exponent vector of a series monomial.
///
/// Ordered by total degree, then lexicographically with larger leading
/// exponents first (`u^2` before `u*v` before `v^2`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Exponents(Vec<u32>);

impl Exponents {
    pub fn new(e: Vec<u32>) -> Self {
        Exponents(e)
    }

    pub fn zero(n: usize) -> Self {
        Exponents(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Exponents(e)
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Indices of the variables that actually occur.
    pub fn support(&self) -> Subset {
        Subset::new(
            self.0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, _)| i),
        )
    }

    pub fn add(&self, other: &Exponents) -> Exponents {
        Exponents(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Subtracts one from each exponent indexed by `s`; `None` if any is zero.
    pub fn divide_by(&self, s: &Subset) -> Option<Exponents> {
        let mut e = self.0.clone();
        for &i in s.indices() {
            e[i] = e[i].checked_sub(1)?;
        }
        Some(Exponents(e))
    }
}

impl Ord for Exponents {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total()
            .cmp(&other.total())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Exponents {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    vars: Vec<String>,
    order: u32,
    terms: BTreeMap<Exponents, GradedPolynomial>,
}

/// Standard variable names `u1..ur`.
pub fn indexed_vars(prefix: &str, r: usize) -> Vec<String> {
    (1..=r).map(|i| format!("{prefix}{i}")).collect()
}

impl TruncatedSeries {
    pub fn zero(vars: Vec<String>, order: u32) -> Self {
        TruncatedSeries {
            vars,
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: Vec<String>, order: u32, c: GradedPolynomial) -> Self {
        let n = vars.len();
        let mut s = TruncatedSeries::zero(vars, order);
        s.add_term(Exponents::zero(n), c);
        s
    }

    /// The series consisting of the single variable at position `i`.
    pub fn variable(vars: Vec<String>, order: u32, i: usize) -> Self {
        let n = vars.len();
        assert!(i < n, "variable index {i} out of range");
        let mut s = TruncatedSeries::zero(vars, order);
        s.add_term(Exponents::unit(n, i), GradedPolynomial::one());
        s
    }

    /// Builds a series from raw terms; terms above the order are dropped.
    pub fn from_terms<I>(vars: Vec<String>, order: u32, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, GradedPolynomial)>,
    {
        let n = vars.len();
        let mut s = TruncatedSeries::zero(vars, order);
        for (e, c) in terms {
            assert_eq!(
                e.len(),
                n,
                "exponent vector length must match variable count"
            );
            s.add_term(Exponents(e), c);
        }
        s
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &GradedPolynomial)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, e: &[u32]) -> GradedPolynomial {
        self.terms
            .get(&Exponents(e.to_vec()))
            .cloned()
            .unwrap_or_else(GradedPolynomial::zero)
    }

    pub fn constant_term(&self) -> GradedPolynomial {
        self.coefficient(&vec![0; self.vars.len()])
    }

    pub(crate) fn add_term(&mut self, e: Exponents, c: GradedPolynomial) {
        if c.is_zero() || e.total() > self.order {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(x) => {
                *x += &c;
                if x.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    fn check_same_space(&self, other: &Self) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::VariableMismatch(
                self.vars.clone(),
                other.vars.clone(),
            ));
        }
        if self.order != other.order {
            return Err(Error::OrderMismatch(self.order, other.order));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same_space(other)?;
        Ok(self.plus(other))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_same_space(other)?;
        Ok(self.plus(&other.neg()))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_same_space(other)?;
        Ok(self.times(other))
    }

    pub(crate) fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub(crate) fn times(&self, other: &Self) -> Self {
        let mut out = TruncatedSeries::zero(self.vars.clone(), self.order);
        for (e1, c1) in &self.terms {
            let d1 = e1.total();
            for (e2, c2) in &other.terms {
                // terms iterate in increasing total degree
                if d1 + e2.total() > self.order {
                    break;
                }
                out.add_term(e1.add(e2), c1 * c2);
            }
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&GradedPolynomial::from_int(-1))
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &GradedPolynomial) -> Self {
        let mut out = TruncatedSeries::zero(self.vars.clone(), self.order);
        if c.is_zero() {
            return out;
        }
        for (e, a) in &self.terms {
            out.add_term(e.clone(), a * c);
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out =
            TruncatedSeries::constant(self.vars.clone(), self.order, GradedPolynomial::one());
        for _ in 0..k {
            out = out.times(self);
        }
        out
    }

    /// Drops all terms of total degree above `order` and lowers the order.
    pub fn truncate(&self, order: u32) -> Self {
        let order = order.min(self.order);
        TruncatedSeries {
            vars: self.vars.clone(),
            order,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.total() <= order)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Re-expresses the series in a larger variable list; old variable `k`
    /// becomes new variable `positions[k]`.
    pub fn lift(&self, vars: Vec<String>, positions: &[usize]) -> Self {
        assert_eq!(positions.len(), self.vars.len());
        let n = vars.len();
        let mut out = TruncatedSeries::zero(vars, self.order);
        for (e, c) in &self.terms {
            let mut f = vec![0; n];
            for (k, &p) in positions.iter().enumerate() {
                f[p] += e.0[k];
            }
            out.add_term(Exponents(f), c.clone());
        }
        out
    }

    /// Composition: replaces each variable of `self` by the series assigned
    /// to it. All assigned series must share one variable list and have the
    /// same truncation order as `self`, and have zero constant term.
    pub fn substitute(&self, assignment: &[(&str, &TruncatedSeries)]) -> Result<TruncatedSeries> {
        let mut images: Vec<&TruncatedSeries> = Vec::with_capacity(self.vars.len());
        for v in &self.vars {
            let (_, s) = assignment
                .iter()
                .find(|(name, _)| *name == v.as_str())
                .ok_or_else(|| Error::UnassignedVariable(v.clone()))?;
            images.push(s);
        }
        let Some(first) = images.first() else {
            // no variables: the series is a constant
            return Ok(self.clone());
        };
        for (v, s) in self.vars.iter().zip(&images) {
            first.check_same_space(s)?;
            if !s.constant_term().is_zero() {
                return Err(Error::NonzeroConstantTerm(v.clone()));
            }
        }
        if first.order != self.order {
            return Err(Error::OrderMismatch(self.order, first.order));
        }
        let terms: Vec<(&Exponents, &GradedPolynomial)> = self.terms.iter().collect();
        let mut powers: Vec<Vec<TruncatedSeries>> = images
            .iter()
            .map(|s| {
                vec![TruncatedSeries::constant(
                    s.vars.clone(),
                    s.order,
                    GradedPolynomial::one(),
                )]
            })
            .collect();
        Ok(horner(&terms, 0, &images, &mut powers, first))
    }

    /// Order-by-order compositional inverse of a univariate series whose
    /// linear coefficient is a nonzero rational constant.
    pub fn reversion(&self) -> Result<TruncatedSeries> {
        if self.vars.len() != 1 {
            return Err(Error::NotReversible("series is not univariate".into()));
        }
        if !self.constant_term().is_zero() {
            return Err(Error::NotReversible("nonzero constant term".into()));
        }
        let lin = self.coefficient(&[1]);
        let lin_c = lin.constant_term();
        if lin_c.is_zero() || lin.len() != 1 {
            return Err(Error::NotReversible(
                "linear coefficient is not an invertible constant".into(),
            ));
        }
        let inv_lin = GradedPolynomial::constant(Rational::one() / lin_c);
        let n = self.order;
        let powers: Vec<TruncatedSeries> = (0..=n).map(|k| self.pow(k)).collect();
        let mut g: Vec<GradedPolynomial> = vec![GradedPolynomial::zero(); n as usize + 1];
        if n >= 1 {
            g[1] = inv_lin.clone();
        }
        for k in 2..=n as usize {
            let mut c = GradedPolynomial::zero();
            for (j, gj) in g.iter().enumerate().take(k).skip(1) {
                c += &(gj * &powers[j].coefficient(&[k as u32]));
            }
            g[k] = -(&c * &inv_lin.pow(k as u32));
        }
        Ok(TruncatedSeries::from_terms(
            self.vars.clone(),
            n,
            g.into_iter().enumerate().map(|(k, c)| (vec![k as u32], c)),
        ))
    }

    /// Homogeneity when each variable carries degree `var_degree`.
    pub fn degree(&self, var_degree: i64) -> GradedDegree {
        self.terms
            .iter()
            .fold(GradedDegree::Any, |acc, (e, c)| match c.degree() {
                GradedDegree::Exact(g) => acc.with_term(g + var_degree * i64::from(e.total())),
                GradedDegree::Any => acc,
                GradedDegree::Inhomogeneous => GradedDegree::Inhomogeneous,
            })
    }

    /// Splits the series by variable support: `self = Σ_J F_J · Π_{i∈J} u_i`
    /// with every term of `F_J` supported inside `J`. Each `F_J` has order
    /// `N - |J|`.
    pub fn support_decompose(&self) -> Result<BTreeMap<Subset, TruncatedSeries>> {
        if !self.constant_term().is_zero() {
            return Err(Error::NonzeroConstantTerm("support decomposition".into()));
        }
        let mut out: BTreeMap<Subset, TruncatedSeries> = BTreeMap::new();
        for (e, c) in &self.terms {
            let support = e.support();
            let quotient = e.divide_by(&support).expect("support divides the monomial");
            let order = self.order - support.len() as u32;
            out.entry(support)
                .or_insert_with(|| TruncatedSeries::zero(self.vars.clone(), order))
                .add_term(quotient, c.clone());
        }
        Ok(out)
    }
}

fn horner(
    terms: &[(&Exponents, &GradedPolynomial)],
    var: usize,
    images: &[&TruncatedSeries],
    powers: &mut [Vec<TruncatedSeries>],
    space: &TruncatedSeries,
) -> TruncatedSeries {
    if var == images.len() {
        let mut c = GradedPolynomial::zero();
        for (_, a) in terms {
            c += *a;
        }
        return TruncatedSeries::constant(space.vars.clone(), space.order, c);
    }
    let mut groups: BTreeMap<u32, Vec<(&Exponents, &GradedPolynomial)>> = BTreeMap::new();
    for t in terms {
        groups.entry(t.0 .0[var]).or_default().push(*t);
    }
    let mut out = TruncatedSeries::zero(space.vars.clone(), space.order);
    for (e, group) in groups {
        let inner = horner(&group, var + 1, images, powers, space);
        if inner.is_zero() {
            continue;
        }
        while powers[var].len() <= e as usize {
            let next = powers[var].last().unwrap().times(images[var]);
            powers[var].push(next);
        }
        let p = &powers[var][e as usize];
        let term = if inner.terms.len() == 1 && !inner.constant_term().is_empty() {
            p.scale(&inner.constant_term())
        } else {
            inner.times(p)
        };
        out = out.plus(&term);
    }
    out
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0 + O({})", self.order + 1);
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            let mono: Vec<String> =
                e.0.iter()
                    .zip(&self.vars)
                    .filter(|(&p, _)| p > 0)
                    .map(|(&p, v)| {
                        if p == 1 {
                            v.clone()
                        } else {
                            format!("{v}^{p}")
                        }
                    })
                    .collect();
            if mono.is_empty() {
                write!(f, "({c})")?;
            } else if c.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "({c})*{}", mono.join("*"))?;
            }
        }
        write!(f, " + O({})", self.order + 1)
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesTermJson {
    exponents: Vec<u32>,
    coeff: GradedPolynomial,
}

#[derive(Serialize, Deserialize)]
struct SeriesJson {
    variables: Vec<String>,
    order: u32,
    terms: Vec<SeriesTermJson>,
}

impl Serialize for TruncatedSeries {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SeriesJson {
            variables: self.vars.clone(),
            order: self.order,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| SeriesTermJson {
                    exponents: e.0.clone(),
                    coeff: c.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TruncatedSeries {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = SeriesJson::deserialize(d)?;
        let n = raw.variables.len();
        if let Some(bad) = raw.terms.iter().find(|t| t.exponents.len() != n) {
            return Err(D::Error::custom(format!(
                "exponent vector {:?} does not match {} variables",
                bad.exponents, n
            )));
        }
        let mut s = TruncatedSeries::zero(raw.variables, raw.order);
        for t in raw.terms {
            let e = Exponents(t.exponents);
            if e.total() > s.order {
                return Err(D::Error::custom(format!(
                    "term of degree {} exceeds order {}",
                    e.total(),
                    s.order
                )));
            }
            s.add_term(e, t.coeff);
        }
        Ok(s)
    }
}
