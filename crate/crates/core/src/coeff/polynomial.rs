use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::generator::{Family, Generator, Monomial};
use crate::error::{Error, Result};
use crate::{GradedDegree, Rational};

/// A polynomial in graded generators with exact rational coefficients.
///
/// Terms are kept in a map ordered by [`Monomial`]'s graded order and zero
/// coefficients are never stored, so structural equality is ring equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GradedPolynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl GradedPolynomial {
    pub fn constant(c: Rational) -> Self {
        let mut p = GradedPolynomial::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn from_int(n: i64) -> Self {
        GradedPolynomial::constant(Rational::from_integer(BigInt::from(n)))
    }

    pub fn generator(g: Generator) -> Self {
        GradedPolynomial::term(Monomial::generator(g), Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut p = GradedPolynomial::zero();
        p.add_term(m, c);
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::one())
    }

    /// Adds `c * m` in place, removing the term if it cancels.
    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return GradedPolynomial::zero();
        }
        GradedPolynomial {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = GradedPolynomial::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Common degree of all monomials; `Any` for the zero polynomial.
    pub fn degree(&self) -> GradedDegree {
        self.terms.keys().map(Monomial::degree).collect()
    }

    /// The single generator family used by this polynomial, if any.
    pub fn family(&self) -> Result<Option<Family>> {
        let mut found: Option<Family> = None;
        for f in self.terms.keys().flat_map(|m| m.families()) {
            match found {
                None => found = Some(f),
                Some(g) if g != f => return Err(Error::MixedBackend(g.to_string(), f.to_string())),
                _ => {}
            }
        }
        Ok(found)
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        match (self.family()?, other.family()?) {
            (Some(a), Some(b)) if a != b => Err(Error::MixedBackend(a.to_string(), b.to_string())),
            _ => Ok(()),
        }
    }

    /// Sum that rejects operands drawn from different coefficient backends.
    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self + other)
    }

    /// Product that rejects operands drawn from different coefficient backends.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self * other)
    }

    /// Replaces every generator through `f`; generators mapped to `None` are
    /// kept as they are.
    pub fn evaluate<F>(&self, mut f: F) -> Self
    where
        F: FnMut(&Generator) -> Option<GradedPolynomial>,
    {
        let mut out = GradedPolynomial::zero();
        for (m, c) in &self.terms {
            let mut acc = GradedPolynomial::constant(c.clone());
            for (g, e) in m.powers() {
                let factor = f(g).unwrap_or_else(|| GradedPolynomial::generator(*g));
                acc = &acc * &factor.pow(*e);
            }
            out += &acc;
        }
        out
    }
}

impl Zero for GradedPolynomial {
    fn zero() -> Self {
        GradedPolynomial {
            terms: BTreeMap::new(),
        }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for GradedPolynomial {
    fn one() -> Self {
        GradedPolynomial::constant(Rational::one())
    }
}

impl AddAssign<&GradedPolynomial> for GradedPolynomial {
    fn add_assign(&mut self, rhs: &GradedPolynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&GradedPolynomial> for GradedPolynomial {
    fn sub_assign(&mut self, rhs: &GradedPolynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl Add<&GradedPolynomial> for &GradedPolynomial {
    type Output = GradedPolynomial;
    fn add(self, rhs: &GradedPolynomial) -> GradedPolynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for GradedPolynomial {
    type Output = GradedPolynomial;
    fn add(mut self, rhs: GradedPolynomial) -> GradedPolynomial {
        self += &rhs;
        self
    }
}

impl Sub<&GradedPolynomial> for &GradedPolynomial {
    type Output = GradedPolynomial;
    fn sub(self, rhs: &GradedPolynomial) -> GradedPolynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for GradedPolynomial {
    type Output = GradedPolynomial;
    fn sub(mut self, rhs: GradedPolynomial) -> GradedPolynomial {
        self -= &rhs;
        self
    }
}

impl Neg for &GradedPolynomial {
    type Output = GradedPolynomial;
    fn neg(self) -> GradedPolynomial {
        GradedPolynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for GradedPolynomial {
    type Output = GradedPolynomial;
    fn neg(self) -> GradedPolynomial {
        -&self
    }
}

impl Mul<&GradedPolynomial> for &GradedPolynomial {
    type Output = GradedPolynomial;
    fn mul(self, rhs: &GradedPolynomial) -> GradedPolynomial {
        let mut out = GradedPolynomial::zero();
        if self.is_zero() || rhs.is_zero() {
            return out;
        }
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Mul for GradedPolynomial {
    type Output = GradedPolynomial;
    fn mul(self, rhs: GradedPolynomial) -> GradedPolynomial {
        &self * &rhs
    }
}

impl From<Generator> for GradedPolynomial {
    fn from(g: Generator) -> Self {
        GradedPolynomial::generator(g)
    }
}

impl From<i64> for GradedPolynomial {
    fn from(n: i64) -> Self {
        GradedPolynomial::from_int(n)
    }
}

// JSON: [{"coeff":"p/q","monomial":{"A(1,1)":2}}], terms and generators in
// canonical order.

struct MonomialJson<'a>(&'a Monomial);

impl Serialize for MonomialJson<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = s.serialize_map(Some(self.0.powers().len()))?;
        for (g, e) in self.0.powers() {
            map.serialize_entry(&g.to_string(), e)?;
        }
        map.end()
    }
}

#[derive(Serialize)]
struct TermJson<'a> {
    coeff: String,
    monomial: MonomialJson<'a>,
}

#[derive(Deserialize)]
struct TermJsonOwned {
    coeff: String,
    monomial: BTreeMap<String, u32>,
}

impl Serialize for GradedPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (m, c) in &self.terms {
            seq.serialize_element(&TermJson {
                coeff: c.to_string(),
                monomial: MonomialJson(m),
            })?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for GradedPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<TermJsonOwned>::deserialize(d)?;
        let mut p = GradedPolynomial::zero();
        for t in raw {
            let c: Rational = super::text::parse_rational(&t.coeff).map_err(D::Error::custom)?;
            let mut powers = Vec::with_capacity(t.monomial.len());
            for (name, e) in t.monomial {
                powers.push((name.parse::<Generator>().map_err(D::Error::custom)?, e));
            }
            p.add_term(Monomial::from_powers(powers), c);
        }
        Ok(p)
    }
}
