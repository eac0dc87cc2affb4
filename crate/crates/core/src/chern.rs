//! Polynomials in commuting first Chern class operators `c1..cr` acting on
//! the fundamental class of a smooth base of dimension `d`.
//!
//! Any product of more than `d` operators kills the fundamental class, so a
//! [`ChernPolynomial`] only keeps monomials of total degree at most its
//! `dim_bound`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::coeff::{CoefficientBackend, GradedPolynomial};
use crate::error::{Error, Result};
use crate::fgl::FormalGroupLaw;
use crate::series::{Exponents, TruncatedSeries};
use crate::GradedDegree;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChernPolynomial {
    num_vars: usize,
    dim_bound: u32,
    terms: BTreeMap<Exponents, GradedPolynomial>,
}

impl ChernPolynomial {
    pub fn zero(num_vars: usize, dim_bound: u32) -> Self {
        ChernPolynomial {
            num_vars,
            dim_bound,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(num_vars: usize, dim_bound: u32, c: GradedPolynomial) -> Self {
        let mut p = ChernPolynomial::zero(num_vars, dim_bound);
        p.add_term(Exponents::zero(num_vars), c);
        p
    }

    pub fn one(num_vars: usize, dim_bound: u32) -> Self {
        ChernPolynomial::constant(num_vars, dim_bound, GradedPolynomial::one())
    }

    /// The operator `c_i`; zero when `dim_bound` is 0.
    pub fn symbol(num_vars: usize, dim_bound: u32, i: usize) -> Self {
        let mut p = ChernPolynomial::zero(num_vars, dim_bound);
        p.add_term(Exponents::unit(num_vars, i), GradedPolynomial::one());
        p
    }

    pub fn from_terms<I>(num_vars: usize, dim_bound: u32, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, GradedPolynomial)>,
    {
        let mut p = ChernPolynomial::zero(num_vars, dim_bound);
        for (e, c) in terms {
            assert_eq!(e.len(), num_vars);
            p.add_term(Exponents::new(e), c);
        }
        p
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn dim_bound(&self) -> u32 {
        self.dim_bound
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &GradedPolynomial)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &[u32]) -> GradedPolynomial {
        self.terms
            .get(&Exponents::new(e.to_vec()))
            .cloned()
            .unwrap_or_else(GradedPolynomial::zero)
    }

    /// Adds a term, silently dropping it if it exceeds the dimension bound.
    pub fn add_term(&mut self, e: Exponents, c: GradedPolynomial) {
        if c.is_zero() || e.total() > self.dim_bound {
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

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.dim_bound != other.dim_bound {
            return Err(Error::DimBoundMismatch(self.dim_bound, other.dim_bound));
        }
        if self.num_vars != other.num_vars {
            return Err(Error::InvalidArgument(format!(
                "Chern polynomials in {} and {} symbols",
                self.num_vars, other.num_vars
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.plus(other))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
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
        let mut out = ChernPolynomial::zero(self.num_vars, self.dim_bound);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                if e1.total() + e2.total() > self.dim_bound {
                    break;
                }
                out.add_term(e1.add(e2), c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &GradedPolynomial) -> Self {
        let mut out = ChernPolynomial::zero(self.num_vars, self.dim_bound);
        for (e, a) in &self.terms {
            out.add_term(e.clone(), a * c);
        }
        out
    }

    /// Multiplies by the operator `c_i`.
    pub fn mul_symbol(&self, i: usize) -> Self {
        let unit = Exponents::unit(self.num_vars, i);
        let mut out = ChernPolynomial::zero(self.num_vars, self.dim_bound);
        for (e, a) in &self.terms {
            out.add_term(e.add(&unit), a.clone());
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = ChernPolynomial::one(self.num_vars, self.dim_bound);
        for _ in 0..k {
            out = out.times(self);
        }
        out
    }

    /// Restriction to a smaller base: same symbols, lower bound.
    pub fn restrict(&self, dim_bound: u32) -> Self {
        let mut out = ChernPolynomial::zero(self.num_vars, dim_bound.min(self.dim_bound));
        for (e, a) in &self.terms {
            out.add_term(e.clone(), a.clone());
        }
        out
    }

    /// Homogeneity with each operator lowering dimension by one.
    pub fn degree(&self) -> GradedDegree {
        self.terms
            .iter()
            .fold(GradedDegree::Any, |acc, (e, c)| match c.degree() {
                GradedDegree::Exact(g) => acc.with_term(g - i64::from(e.total())),
                GradedDegree::Any => acc,
                GradedDegree::Inhomogeneous => GradedDegree::Inhomogeneous,
            })
    }

    pub(crate) fn with_num_vars(mut self, n: usize) -> Self {
        if self.terms.is_empty() {
            self.num_vars = n;
        }
        self
    }
}

/// Substitutes `u_i ↦ c_i` and drops monomials of degree above `dim_bound`.
pub fn evaluate_at_chern(s: &TruncatedSeries, dim_bound: u32) -> Result<ChernPolynomial> {
    if s.order() < dim_bound {
        return Err(Error::InsufficientOrder {
            order: s.order(),
            dim_bound,
        });
    }
    let mut out = ChernPolynomial::zero(s.num_vars(), dim_bound);
    for (e, c) in s.terms() {
        out.add_term(e.clone(), c.clone());
    }
    Ok(out)
}

/// Both sides of `ch(L ⊗ M) = F(ch L, ch M)` on a base of dimension `d`:
/// the law evaluated at `c1, c2`, and the same combination assembled from
/// `c1`, `c2` inside the Chern algebra.
pub fn fgl_tensor_sides(
    law: &FormalGroupLaw,
    dim_bound: u32,
) -> Result<(ChernPolynomial, ChernPolynomial)> {
    let lhs = evaluate_at_chern(law.series(), dim_bound)?;
    let c1 = ChernPolynomial::symbol(2, dim_bound, 0);
    let c2 = ChernPolynomial::symbol(2, dim_bound, 1);
    let mut rhs = c1.plus(&c2);
    for (&(i, j), a) in law.coefficients() {
        rhs = rhs.plus(&c1.pow(i).times(&c2.pow(j)).scale(a));
        if i != j {
            rhs = rhs.plus(&c1.pow(j).times(&c2.pow(i)).scale(a));
        }
    }
    Ok((lhs, rhs))
}

/// Checks that evaluation at Chern operators commutes with the formal sum.
pub fn fgl_tensor_identity_check(dim_bound: u32, backend: CoefficientBackend) -> Result<bool> {
    let order = dim_bound.max(1);
    let law = FormalGroupLaw::new(backend.with_order(order), order)?;
    let (lhs, rhs) = fgl_tensor_sides(&law, dim_bound)?;
    Ok(lhs == rhs)
}

#[derive(Serialize, Deserialize)]
struct ChernTermJson {
    c_exponents: Vec<u32>,
    coeff: GradedPolynomial,
}

#[derive(Serialize, Deserialize)]
struct ChernJson {
    dim_bound: u32,
    terms: Vec<ChernTermJson>,
}

impl Serialize for ChernPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ChernJson {
            dim_bound: self.dim_bound,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| ChernTermJson {
                    c_exponents: e.as_slice().to_vec(),
                    coeff: c.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ChernPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = ChernJson::deserialize(d)?;
        let n = raw.terms.first().map_or(0, |t| t.c_exponents.len());
        let mut p = ChernPolynomial::zero(n, raw.dim_bound);
        for t in raw.terms {
            if t.c_exponents.len() != n {
                return Err(D::Error::custom("inconsistent c_exponents lengths"));
            }
            let e = Exponents::new(t.c_exponents);
            if e.total() > raw.dim_bound {
                return Err(D::Error::custom(format!(
                    "monomial of degree {} exceeds dim_bound {}",
                    e.total(),
                    raw.dim_bound
                )));
            }
            p.add_term(e, t.coeff);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::Generator;
    use crate::series::indexed_vars;
    use proptest::prelude::*;

    #[test]
    fn truncation_by_dimension() {
        let vars = indexed_vars("u", 2);
        let u1 = TruncatedSeries::variable(vars.clone(), 4, 0);
        let u2 = TruncatedSeries::variable(vars.clone(), 4, 1);
        assert!(evaluate_at_chern(&u1.times(&u2), 1).unwrap().is_zero());
        assert_eq!(
            evaluate_at_chern(&u1, 3).unwrap(),
            ChernPolynomial::symbol(2, 3, 0)
        );
        assert!(matches!(
            evaluate_at_chern(&u1.truncate(2), 3),
            Err(Error::InsufficientOrder {
                order: 2,
                dim_bound: 3
            })
        ));
    }

    #[test]
    fn two_series_at_bound_zero() {
        let law = FormalGroupLaw::new(CoefficientBackend::Free, 4).unwrap();
        let two = law.n_series(2).lift(indexed_vars("u", 2), &[0]);
        let parts = two.support_decompose().unwrap();
        let f1 = &parts[&crate::Subset::singleton(0)];
        assert_eq!(
            evaluate_at_chern(f1, 0).unwrap(),
            ChernPolynomial::constant(2, 0, GradedPolynomial::from_int(2))
        );
    }

    #[test]
    fn tensor_identity() {
        for backend in [
            CoefficientBackend::Free,
            CoefficientBackend::Log { order: 0 },
            CoefficientBackend::Additive,
            CoefficientBackend::Multiplicative,
        ] {
            for d in 0..=5 {
                assert!(
                    fgl_tensor_identity_check(d, backend).unwrap(),
                    "{backend} d={d}"
                );
            }
        }
        let law = FormalGroupLaw::new(CoefficientBackend::Free, 2).unwrap();
        let (lhs, _) = fgl_tensor_sides(&law, 2).unwrap();
        let a11: GradedPolynomial = Generator::lazard(1, 1).unwrap().into();
        let expected = ChernPolynomial::from_terms(
            2,
            2,
            [
                (vec![1, 0], GradedPolynomial::one()),
                (vec![0, 1], GradedPolynomial::one()),
                (vec![1, 1], a11),
            ],
        );
        assert_eq!(lhs, expected);
        let (lhs0, rhs0) = fgl_tensor_sides(&law, 0).unwrap();
        assert!(lhs0.is_zero() && rhs0.is_zero());
    }

    #[test]
    fn json_shape() {
        let p = ChernPolynomial::symbol(2, 1, 1);
        let js = serde_json::to_string(&p).unwrap();
        assert_eq!(
            js,
            r#"{"dim_bound":1,"terms":[{"c_exponents":[0,1],"coeff":[{"coeff":"1","monomial":{}}]}]}"#
        );
        assert_eq!(serde_json::from_str::<ChernPolynomial>(&js).unwrap(), p);
    }

    fn arb_chern(n: usize, d: u32) -> impl Strategy<Value = ChernPolynomial> {
        proptest::collection::vec((proptest::collection::vec(0u32..3, n), -3i64..4), 0..6).prop_map(
            move |terms| {
                ChernPolynomial::from_terms(
                    n,
                    d,
                    terms
                        .into_iter()
                        .map(|(e, c)| (e, GradedPolynomial::from_int(c))),
                )
            },
        )
    }

    proptest! {
        #[test]
        fn nilpotent(p in arb_chern(3, 3), i in 0usize..3) {
            let mut q = p.clone();
            for _ in 0..4 {
                q = q.mul_symbol(i);
            }
            prop_assert!(q.is_zero());
        }

        #[test]
        fn evaluation_is_a_ring_morphism(
            a in proptest::collection::vec((proptest::collection::vec(0u32..3, 2), -3i64..4), 0..5),
            b in proptest::collection::vec((proptest::collection::vec(0u32..3, 2), -3i64..4), 0..5),
            d in 0u32..4,
        ) {
            let vars = indexed_vars("u", 2);
            let mk = |t: &Vec<(Vec<u32>, i64)>| TruncatedSeries::from_terms(
                vars.clone(), 4, t.iter().map(|(e, c)| (e.clone(), GradedPolynomial::from_int(*c))));
            let (s, t) = (mk(&a), mk(&b));
            let es = evaluate_at_chern(&s, d).unwrap();
            let et = evaluate_at_chern(&t, d).unwrap();
            prop_assert_eq!(evaluate_at_chern(&s.plus(&t), d).unwrap(), es.plus(&et));
            prop_assert_eq!(evaluate_at_chern(&s.times(&t), d).unwrap(), es.times(&et));
        }
    }

    #[test]
    fn homogeneous_series_give_homogeneous_classes() {
        let law = FormalGroupLaw::new(CoefficientBackend::Free, 5).unwrap();
        let s = law.multi_linear(&[2, 1, -1]).unwrap();
        for d in 0..=5 {
            let p = evaluate_at_chern(&s, d).unwrap();
            assert!(p.degree().is_compatible_with(-1));
        }
    }
}
