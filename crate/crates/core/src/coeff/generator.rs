use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Which coefficient model a generator belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    Free,
    Log,
    Multiplicative,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Free => "free",
            Family::Log => "log",
            Family::Multiplicative => "mult",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Kind {
    /// Stored with `i <= j`.
    A(u32, u32),
    M(u32),
    B,
}

/// A named polynomial generator.
///
/// Generators are totally ordered: `A(i,j)` by `(i+j, i)`, then `m(i)` by
/// `i`, then `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Generator(Kind);

impl Generator {
    /// The free Lazard symbol `A(i,j)`; the indices are normalised so that
    /// `A(i,j)` and `A(j,i)` are the same generator.
    pub fn lazard(i: u32, j: u32) -> Result<Self> {
        if i == 0 || j == 0 {
            return Err(Error::InvalidIndex(i, j));
        }
        Ok(Generator(Kind::A(i.min(j), i.max(j))))
    }

    /// The logarithm coefficient `m(i)`, `i >= 1`.
    pub fn log(i: u32) -> Result<Self> {
        if i == 0 {
            return Err(Error::InvalidIndex(i, 0));
        }
        Ok(Generator(Kind::M(i)))
    }

    pub fn mult() -> Self {
        Generator(Kind::B)
    }

    pub fn degree(&self) -> i64 {
        match self.0 {
            Kind::A(i, j) => i64::from(i + j) - 1,
            Kind::M(i) => i64::from(i),
            Kind::B => 1,
        }
    }

    pub fn family(&self) -> Family {
        match self.0 {
            Kind::A(..) => Family::Free,
            Kind::M(_) => Family::Log,
            Kind::B => Family::Multiplicative,
        }
    }

    fn sort_key(&self) -> (u8, u32, u32) {
        match self.0 {
            Kind::A(i, j) => (0, i + j, i),
            Kind::M(i) => (1, i, 0),
            Kind::B => (2, 0, 0),
        }
    }
}

impl Ord for Generator {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for Generator {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Kind::A(i, j) => write!(f, "A({i},{j})"),
            Kind::M(i) => write!(f, "m({i})"),
            Kind::B => f.write_str("b"),
        }
    }
}

impl FromStr for Generator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("unknown generator `{s}`"));
        let s = s.trim();
        if s == "b" {
            return Ok(Generator::mult());
        }
        let args = |prefix: &str| -> Option<Vec<u32>> {
            let inner = s.strip_prefix(prefix)?.strip_suffix(')')?;
            inner.split(',').map(|t| t.trim().parse().ok()).collect()
        };
        if let Some(ix) = args("A(") {
            return match ix.as_slice() {
                [i, j] => Generator::lazard(*i, *j),
                _ => Err(bad()),
            };
        }
        if let Some(ix) = args("m(") {
            return match ix.as_slice() {
                [i] => Generator::log(*i),
                _ => Err(bad()),
            };
        }
        Err(bad())
    }
}

/// A product of generators with positive exponents, kept sorted by generator.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Generator, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn generator(g: Generator) -> Self {
        Monomial(vec![(g, 1)])
    }

    /// Builds a monomial from arbitrary `(generator, exponent)` pairs,
    /// merging repeats and dropping zero exponents.
    pub fn from_powers<I: IntoIterator<Item = (Generator, u32)>>(powers: I) -> Self {
        let mut v: Vec<(Generator, u32)> = powers.into_iter().filter(|&(_, e)| e > 0).collect();
        v.sort_by_key(|p| p.0);
        let mut out: Vec<(Generator, u32)> = Vec::with_capacity(v.len());
        for (g, e) in v {
            match out.last_mut() {
                Some((h, f)) if *h == g => *f += e,
                _ => out.push((g, e)),
            }
        }
        Monomial(out)
    }

    pub fn powers(&self) -> &[(Generator, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|(g, e)| g.degree() * i64::from(*e)).sum()
    }

    pub fn exponent_of(&self, g: &Generator) -> u32 {
        self.0
            .binary_search_by(|(h, _)| h.cmp(g))
            .map(|k| self.0[k].1)
            .unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    pub fn families(&self) -> impl Iterator<Item = Family> + '_ {
        self.0.iter().map(|(g, _)| g.family())
    }
}

/// Graded lexicographic order: total degree first, then the exponent of the
/// smallest generator decides (larger exponent sorts later).
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let (a, b) = (&self.0, &other.0);
            for k in 0..a.len().min(b.len()) {
                let ord = match a[k].0.cmp(&b[k].0) {
                    // `a` carries a generator that `b` lacks at this position
                    Ordering::Less => Ordering::Greater,
                    Ordering::Greater => Ordering::Less,
                    Ordering::Equal => a[k].1.cmp(&b[k].1),
                };
                if ord != Ordering::Equal {
                    return ord;
                }
            }
            a.len().cmp(&b.len())
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, (g, e)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{g}")?;
            } else {
                write!(f, "{g}^{e}")?;
            }
        }
        Ok(())
    }
}
