use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::Subset;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Component {
    pub name: String,
    #[serde(default = "yes")]
    pub quasiprojective: bool,
}

fn yes() -> bool {
    true
}

impl Component {
    pub fn new(name: impl Into<String>) -> Self {
        Component {
            name: name.into(),
            quasiprojective: true,
        }
    }
}

/// Combinatorial model of a strict normal crossing divisor: the components
/// `D_1..D_r`, the nonempty intersections `D^J`, and the dimension of the
/// smooth ambient space. The face `D^J` has dimension `ambient_dim - |J|`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SncConfiguration {
    pub ambient_dim: u32,
    pub components: Vec<Component>,
    pub faces: BTreeSet<Subset>,
}

/// One broken invariant of a configuration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum Violation {
    EmptyFace,
    IndexOutOfRange { face: Subset, components: usize },
    MissingSingleton { component: usize },
    NotDownwardClosed { face: Subset, missing: Subset },
    NegativeFaceDimension { face: Subset, ambient_dim: u32 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EmptyFace => f.write_str("the empty set is not a face"),
            Violation::IndexOutOfRange { face, components } => {
                write!(f, "face {face} refers to a component beyond {components}")
            }
            Violation::MissingSingleton { component } => {
                write!(f, "singleton face {{{component}}} is missing")
            }
            Violation::NotDownwardClosed { face, missing } => {
                write!(f, "face {face} is present but its subface {missing} is not")
            }
            Violation::NegativeFaceDimension { face, ambient_dim } => write!(
                f,
                "face {face} would have negative dimension in ambient dimension {ambient_dim}"
            ),
        }
    }
}

impl SncConfiguration {
    pub fn new<I>(ambient_dim: u32, components: Vec<Component>, faces: I) -> Self
    where
        I: IntoIterator<Item = Subset>,
    {
        SncConfiguration {
            ambient_dim,
            components,
            faces: faces.into_iter().collect(),
        }
    }

    /// The configuration whose faces are all subsets of size at most
    /// `min(r, ambient_dim)`: every collection of components meets.
    pub fn generic(ambient_dim: u32, r: usize) -> Self {
        let components = (1..=r).map(|i| Component::new(format!("D{i}"))).collect();
        let faces = (1u32..(1 << r))
            .map(|mask| Subset::new((0..r).filter(|i| mask & (1 << i) != 0)))
            .filter(|s| s.len() as u32 <= ambient_dim);
        SncConfiguration::new(ambient_dim, components, faces)
    }

    pub fn num_components(&self) -> usize {
        self.components.len()
    }

    pub fn has_face(&self, face: &Subset) -> bool {
        self.faces.contains(face)
    }

    /// Dimension `ambient_dim - |J|` of a face.
    pub fn face_dim(&self, face: &Subset) -> u32 {
        self.ambient_dim - face.len() as u32
    }

    /// All invariant violations, in a deterministic order.
    pub fn violations(&self) -> Vec<Violation> {
        let r = self.components.len();
        let mut out = Vec::new();
        for face in &self.faces {
            if face.is_empty() {
                out.push(Violation::EmptyFace);
                continue;
            }
            if face.indices().iter().any(|&i| i >= r) {
                out.push(Violation::IndexOutOfRange {
                    face: face.clone(),
                    components: r,
                });
                continue;
            }
            if face.len() as u32 > self.ambient_dim {
                out.push(Violation::NegativeFaceDimension {
                    face: face.clone(),
                    ambient_dim: self.ambient_dim,
                });
            }
            for sub in face.facets() {
                if !self.faces.contains(&sub) {
                    out.push(Violation::NotDownwardClosed {
                        face: face.clone(),
                        missing: sub,
                    });
                }
            }
        }
        for i in 0..r {
            if !self.faces.contains(&Subset::singleton(i)) {
                out.push(Violation::MissingSingleton { component: i + 1 });
            }
        }
        out
    }

    pub fn validate(&self) -> Result<(), Vec<Violation>> {
        let v = self.violations();
        if v.is_empty() {
            Ok(())
        } else {
            Err(v)
        }
    }
}

/// Checks downward closure, singleton coverage and nonnegative face
/// dimensions.
pub fn validate_config(c: &SncConfiguration) -> Result<(), Vec<Violation>> {
    c.validate()
}

/// The configuration induced on a component `D_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Restriction {
    pub config: SncConfiguration,
    pub multiplicities: Vec<i64>,
    /// `original_index[k]` is the index in the parent configuration of the
    /// restricted component `k`.
    pub original_index: Vec<usize>,
    pub component: usize,
}

impl Restriction {
    /// The parent face `J ∪ {i}` of a restricted face `J`.
    pub fn lift_face(&self, face: &Subset) -> Subset {
        Subset::new(face.indices().iter().map(|&k| self.original_index[k])).with(self.component)
    }
}

/// Restricts a configuration and multiplicities to the component `i`: the
/// components meeting `D_i`, faces `{J : J ∪ {i} is a face}`, and one less
/// ambient dimension.
pub fn restrict_to_component(c: &SncConfiguration, i: usize, m: &[i64]) -> Restriction {
    assert!(i < c.num_components(), "component {i} out of range");
    let original_index: Vec<usize> = (0..c.num_components())
        .filter(|&j| j != i && c.has_face(&Subset::new([i, j])))
        .collect();
    let new_index = |j: usize| original_index.iter().position(|&k| k == j);
    let faces = c
        .faces
        .iter()
        .filter(|f| f.contains(i) && f.len() > 1)
        .map(|f| {
            Subset::new(
                f.without(i)
                    .indices()
                    .iter()
                    .map(|&j| new_index(j).expect("joint face implies pairwise face")),
            )
        });
    let config = SncConfiguration::new(
        c.ambient_dim.saturating_sub(1),
        original_index
            .iter()
            .map(|&j| c.components[j].clone())
            .collect(),
        faces,
    );
    let multiplicities = original_index
        .iter()
        .map(|&j| m.get(j).copied().unwrap_or(0))
        .collect();
    Restriction {
        config,
        multiplicities,
        original_index,
        component: i,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_curves() -> SncConfiguration {
        SncConfiguration::new(
            2,
            vec![Component::new("D1"), Component::new("D2")],
            [
                Subset::singleton(0),
                Subset::singleton(1),
                Subset::new([0, 1]),
            ],
        )
    }

    #[test]
    fn valid_surface() {
        assert!(validate_config(&two_curves()).is_ok());
    }

    #[test]
    fn missing_subface() {
        let mut c = two_curves();
        c.faces.remove(&Subset::singleton(1));
        let v = validate_config(&c).unwrap_err();
        assert!(v.contains(&Violation::NotDownwardClosed {
            face: Subset::new([0, 1]),
            missing: Subset::singleton(1),
        }));
        assert!(v.contains(&Violation::MissingSingleton { component: 2 }));
    }

    #[test]
    fn negative_dimension() {
        let mut c = two_curves();
        c.ambient_dim = 1;
        assert_eq!(
            validate_config(&c).unwrap_err(),
            vec![Violation::NegativeFaceDimension {
                face: Subset::new([0, 1]),
                ambient_dim: 1
            }]
        );
    }

    #[test]
    fn out_of_range_index() {
        let mut c = two_curves();
        c.faces.insert(Subset::new([0, 5]));
        assert!(matches!(
            validate_config(&c).unwrap_err()[0],
            Violation::IndexOutOfRange { .. }
        ));
    }

    #[test]
    fn report_json() {
        let v = Violation::NotDownwardClosed {
            face: Subset::new([0, 1]),
            missing: Subset::singleton(1),
        };
        assert_eq!(
            serde_json::to_string(&v).unwrap(),
            r#"{"violation":"not_downward_closed","face":[1,2],"missing":[2]}"#
        );
    }

    #[test]
    fn restriction_to_a_curve() {
        let r = restrict_to_component(&two_curves(), 0, &[0, 3]);
        assert_eq!(r.config.ambient_dim, 1);
        assert_eq!(r.config.components, vec![Component::new("D2")]);
        assert_eq!(r.config.faces, BTreeSet::from([Subset::singleton(0)]));
        assert_eq!(r.multiplicities, vec![3]);
        assert_eq!(r.lift_face(&Subset::singleton(0)), Subset::new([0, 1]));
        assert!(r.config.validate().is_ok());
    }

    #[test]
    fn restriction_drops_disjoint_components() {
        let c = SncConfiguration::new(
            2,
            vec![
                Component::new("D1"),
                Component::new("D2"),
                Component::new("D3"),
            ],
            [
                Subset::singleton(0),
                Subset::singleton(1),
                Subset::singleton(2),
                Subset::new([0, 1]),
            ],
        );
        let r = restrict_to_component(&c, 0, &[1, 1, 1]);
        assert_eq!(r.original_index, vec![1]);
        let r = restrict_to_component(&c, 2, &[1, 1, 1]);
        assert!(r.config.components.is_empty());
        assert!(r.config.faces.is_empty());
    }

    #[test]
    fn generic_configuration_is_valid() {
        for d in 0..4 {
            for r in 1..4 {
                assert!(SncConfiguration::generic(d, r).validate().is_ok() || d == 0);
            }
        }
    }
}
