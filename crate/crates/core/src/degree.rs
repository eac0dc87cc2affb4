use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// The degree of a graded element: a single integer when homogeneous.
///
/// The zero element is compatible with every degree and reports `Any`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GradedDegree {
    Any,
    Exact(i64),
    Inhomogeneous,
}

impl GradedDegree {
    /// Folds one more term of degree `d` into the running degree.
    pub fn with_term(self, d: i64) -> Self {
        self.merge(GradedDegree::Exact(d))
    }

    pub fn merge(self, other: GradedDegree) -> Self {
        use GradedDegree::*;
        match (self, other) {
            (Inhomogeneous, _) | (_, Inhomogeneous) => Inhomogeneous,
            (Any, x) | (x, Any) => x,
            (Exact(a), Exact(b)) if a == b => Exact(a),
            _ => Inhomogeneous,
        }
    }

    /// True for `Any` and for `Exact(d)`.
    pub fn is_compatible_with(self, d: i64) -> bool {
        matches!(self, GradedDegree::Any) || self == GradedDegree::Exact(d)
    }

    pub fn exact(self) -> Option<i64> {
        match self {
            GradedDegree::Exact(d) => Some(d),
            _ => None,
        }
    }
}

impl FromIterator<i64> for GradedDegree {
    fn from_iter<I: IntoIterator<Item = i64>>(iter: I) -> Self {
        iter.into_iter()
            .fold(GradedDegree::Any, GradedDegree::with_term)
    }
}

impl fmt::Display for GradedDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GradedDegree::Any => f.write_str("any"),
            GradedDegree::Exact(d) => write!(f, "{d}"),
            GradedDegree::Inhomogeneous => f.write_str("inhomogeneous"),
        }
    }
}

impl Serialize for GradedDegree {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            GradedDegree::Exact(d) => s.serialize_i64(*d),
            GradedDegree::Any => s.serialize_str("any"),
            GradedDegree::Inhomogeneous => s.serialize_str("inhomogeneous"),
        }
    }
}

impl<'de> Deserialize<'de> for GradedDegree {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(n) => Ok(GradedDegree::Exact(n)),
            Raw::Str(s) if s == "any" => Ok(GradedDegree::Any),
            Raw::Str(s) if s == "inhomogeneous" => Ok(GradedDegree::Inhomogeneous),
            Raw::Str(s) => Err(serde::de::Error::custom(format!("unknown degree `{s}`"))),
        }
    }
}
