//! Free graded abelian groups of cobordism cycles `[f: Y → X, L_1, ..., L_r]`
//! over opaque space labels, and constructors for the relation generators.
//!
//! Labels are never checked for geometric realisability; only dimensions
//! and flags are enforced.

use std::collections::BTreeMap;
use std::fmt::Debug;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::coeff::GradedPolynomial;
use crate::error::{Error, Result};
use crate::fgl::FormalGroupLaw;
use crate::GradedDegree;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawLabel")]
pub struct SpaceLabel {
    pub name: String,
    pub dim: u32,
    pub smooth: bool,
    pub quasiprojective: bool,
    pub complete: bool,
    /// Minimum dimension of a target of a projective morphism from this
    /// space; 0 exactly for projective varieties.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nu: Option<u32>,
}

#[derive(Deserialize)]
struct RawLabel {
    name: String,
    dim: u32,
    #[serde(default = "yes")]
    smooth: bool,
    #[serde(default = "yes")]
    quasiprojective: bool,
    #[serde(default)]
    complete: bool,
    #[serde(default)]
    nu: Option<u32>,
}

fn yes() -> bool {
    true
}

impl TryFrom<RawLabel> for SpaceLabel {
    type Error = Error;

    fn try_from(r: RawLabel) -> Result<Self> {
        let label = SpaceLabel {
            name: r.name,
            dim: r.dim,
            smooth: r.smooth,
            quasiprojective: r.quasiprojective,
            complete: r.complete,
            nu: None,
        };
        match r.nu {
            Some(nu) => label.with_nu(nu),
            None => Ok(label),
        }
    }
}

impl SpaceLabel {
    /// A smooth quasiprojective space.
    pub fn new(name: impl Into<String>, dim: u32) -> Self {
        SpaceLabel {
            name: name.into(),
            dim,
            smooth: true,
            quasiprojective: true,
            complete: false,
            nu: None,
        }
    }

    pub fn with_nu(mut self, nu: u32) -> Result<Self> {
        if nu > self.dim {
            return Err(Error::InvalidCycle(format!(
                "nu-invariant {nu} of {} exceeds its dimension {}",
                self.name, self.dim
            )));
        }
        self.nu = Some(nu);
        Ok(self)
    }

    pub fn product(a: &SpaceLabel, b: &SpaceLabel) -> SpaceLabel {
        SpaceLabel {
            name: format!("{}×{}", a.name, b.name),
            dim: a.dim + b.dim,
            smooth: a.smooth && b.smooth,
            quasiprojective: a.quasiprojective && b.quasiprojective,
            complete: a.complete && b.complete,
            nu: None,
        }
    }
}

/// `[f: Y → X, L_1, ..., L_r]`, with the bundles kept as a sorted multiset.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DecoratedCycle {
    pub source: SpaceLabel,
    pub target: SpaceLabel,
    #[serde(default)]
    bundles: Vec<String>,
}

impl DecoratedCycle {
    pub fn plain(source: SpaceLabel, target: SpaceLabel) -> Self {
        DecoratedCycle {
            source,
            target,
            bundles: Vec::new(),
        }
    }

    pub fn new<I, S>(source: SpaceLabel, target: SpaceLabel, bundles: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut bundles: Vec<String> = bundles.into_iter().map(Into::into).collect();
        bundles.sort();
        DecoratedCycle {
            source,
            target,
            bundles,
        }
    }

    pub fn bundles(&self) -> &[String] {
        &self.bundles
    }

    pub fn is_plain(&self) -> bool {
        self.bundles.is_empty()
    }

    /// `dim Y - r`.
    pub fn degree(&self) -> i64 {
        i64::from(self.source.dim) - self.bundles.len() as i64
    }
}

/// Appends the pull-back of `bundle` to the decorations; degree drops by one.
pub fn chern_decorate(z: &DecoratedCycle, bundle: &str) -> DecoratedCycle {
    DecoratedCycle::new(
        z.source.clone(),
        z.target.clone(),
        z.bundles
            .iter()
            .cloned()
            .chain(std::iter::once(bundle.to_string())),
    )
}

/// Coefficients a cycle sum may carry: integers for the cycle groups
/// themselves, Lazard polynomials for the coefficient extension.
pub trait CycleCoefficient: Clone + PartialEq + Debug + Zero + One {
    fn degree(&self) -> GradedDegree;
    fn add_to(&mut self, other: &Self);
    fn negated(&self) -> Self;
    fn times(&self, other: &Self) -> Self;
}

impl CycleCoefficient for i64 {
    fn degree(&self) -> GradedDegree {
        GradedDegree::Exact(0)
    }
    fn add_to(&mut self, other: &Self) {
        *self += other;
    }
    fn negated(&self) -> Self {
        -self
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
}

impl CycleCoefficient for GradedPolynomial {
    fn degree(&self) -> GradedDegree {
        GradedPolynomial::degree(self)
    }
    fn add_to(&mut self, other: &Self) {
        *self += other;
    }
    fn negated(&self) -> Self {
        -self
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
}

/// An element of the free abelian group (or free module) on cycles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleSum<C: CycleCoefficient = i64> {
    terms: BTreeMap<DecoratedCycle, C>,
}

pub type LazardCycleSum = CycleSum<GradedPolynomial>;

impl<C: CycleCoefficient> Default for CycleSum<C> {
    fn default() -> Self {
        CycleSum {
            terms: BTreeMap::new(),
        }
    }
}

impl<C: CycleCoefficient> CycleSum<C> {
    pub fn zero() -> Self {
        CycleSum::default()
    }

    pub fn cycle(z: DecoratedCycle) -> Self {
        let mut s = CycleSum::zero();
        s.add_term(z, C::one());
        s
    }

    pub fn from_terms<I: IntoIterator<Item = (DecoratedCycle, C)>>(terms: I) -> Self {
        let mut s = CycleSum::zero();
        for (z, c) in terms {
            s.add_term(z, c);
        }
        s
    }

    /// `[Y → X]` for a possibly reducible `Y`: the sum over its components.
    pub fn from_components(components: &[SpaceLabel], target: &SpaceLabel) -> Self {
        CycleSum::from_terms(
            components
                .iter()
                .map(|y| (DecoratedCycle::plain(y.clone(), target.clone()), C::one())),
        )
    }

    pub fn add_term(&mut self, z: DecoratedCycle, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&z) {
            Some(x) => {
                x.add_to(&c);
                if x.is_zero() {
                    self.terms.remove(&z);
                }
            }
            None => {
                self.terms.insert(z, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&DecoratedCycle, &C)> {
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

    pub fn coefficient(&self, z: &DecoratedCycle) -> C {
        self.terms.get(z).cloned().unwrap_or_else(C::zero)
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (z, c) in &other.terms {
            out.add_term(z.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        CycleSum {
            terms: self
                .terms
                .iter()
                .map(|(z, c)| (z.clone(), c.negated()))
                .collect(),
        }
    }

    pub fn minus(&self, other: &Self) -> Self {
        self.plus(&other.neg())
    }

    pub fn scale(&self, k: &C) -> Self {
        CycleSum::from_terms(self.terms.iter().map(|(z, c)| (z.clone(), c.times(k))))
    }

    /// Degree of each term is `dim Y - r` plus the degree of its coefficient.
    pub fn cycle_degree(&self) -> GradedDegree {
        self.terms
            .iter()
            .fold(GradedDegree::Any, |acc, (z, c)| match c.degree() {
                GradedDegree::Exact(g) => acc.with_term(z.degree() + g),
                GradedDegree::Any => acc,
                GradedDegree::Inhomogeneous => GradedDegree::Inhomogeneous,
            })
    }

    /// The homogeneous piece of degree `d`.
    pub fn graded_part(&self, d: i64) -> Self {
        CycleSum::from_terms(
            self.terms
                .iter()
                .filter(|(z, c)| c.degree().is_compatible_with(d - z.degree()))
                .map(|(z, c)| (z.clone(), c.clone())),
        )
    }

    /// Applies `ch(L)` to every cycle.
    pub fn chern_operator(&self, bundle: &str) -> Self {
        CycleSum::from_terms(
            self.terms
                .iter()
                .map(|(z, c)| (chern_decorate(z, bundle), c.clone())),
        )
    }

    /// Relabels targets along a proper morphism `g: X → Z`.
    pub fn pushforward(&self, g: &LabelMorphism) -> Result<Self> {
        if !g.proper {
            return Err(Error::InvalidCycle(format!(
                "push-forward along non-proper {}",
                g.name
            )));
        }
        let mut out = CycleSum::zero();
        for (z, c) in &self.terms {
            if z.target != g.source {
                return Err(Error::InvalidCycle(format!(
                    "cycle over {} cannot be pushed along {}: {} → {}",
                    z.target.name, g.name, g.source.name, g.target.name
                )));
            }
            let mut moved = z.clone();
            moved.target = g.target.clone();
            out.add_term(moved, c.clone());
        }
        Ok(out)
    }
}

/// A recorded morphism between labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelMorphism {
    pub name: String,
    pub source: SpaceLabel,
    pub target: SpaceLabel,
    #[serde(default = "yes")]
    pub proper: bool,
}

impl LabelMorphism {
    pub fn identity(x: &SpaceLabel) -> Self {
        LabelMorphism {
            name: format!("id_{}", x.name),
            source: x.clone(),
            target: x.clone(),
            proper: true,
        }
    }

    /// `self ∘ g`.
    pub fn after(&self, g: &LabelMorphism) -> Result<LabelMorphism> {
        if g.target != self.source {
            return Err(Error::InvalidCycle(format!(
                "cannot compose {} after {}",
                self.name, g.name
            )));
        }
        Ok(LabelMorphism {
            name: format!("{}∘{}", self.name, g.name),
            source: g.source.clone(),
            target: self.target.clone(),
            proper: self.proper && g.proper,
        })
    }
}

pub fn pushforward<C: CycleCoefficient>(z: &CycleSum<C>, g: &LabelMorphism) -> Result<CycleSum<C>> {
    z.pushforward(g)
}

pub fn cycle_degree<C: CycleCoefficient>(z: &CycleSum<C>) -> GradedDegree {
    z.cycle_degree()
}

/// `[Y × Z → X × W]`, extended bilinearly. Only plain cycles multiply.
pub fn exterior_product(z: &CycleSum, w: &CycleSum) -> Result<CycleSum> {
    let mut out = CycleSum::zero();
    for (a, c) in z.terms() {
        for (b, d) in w.terms() {
            if !a.is_plain() || !b.is_plain() {
                return Err(Error::InvalidCycle(
                    "exterior products are defined on undecorated cycles".into(),
                ));
            }
            out.add_term(
                DecoratedCycle::plain(
                    SpaceLabel::product(&a.source, &b.source),
                    SpaceLabel::product(&a.target, &b.target),
                ),
                c * d,
            );
        }
    }
    Ok(out)
}

fn check_dim(label: &SpaceLabel, dim: u32, role: &str) -> Result<()> {
    if label.dim != dim {
        return Err(Error::InvalidCycle(format!(
            "label {} ({role}) has dimension {}, expected {dim}",
            label.name, label.dim
        )));
    }
    Ok(())
}

/// A double point degeneration over `X`, given by its fibre labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoublePointDatum {
    pub y_infinity: SpaceLabel,
    pub a: SpaceLabel,
    pub b: SpaceLabel,
    /// `A ∩ B`.
    pub d: SpaceLabel,
    /// `P(O_Y(A)|_D ⊕ O_D)`.
    pub p_d: SpaceLabel,
    pub target: SpaceLabel,
    /// Dimension of the fibres.
    pub n: u32,
}

impl DoublePointDatum {
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidCycle(
                "fibres of a double point degeneration have positive dimension".into(),
            ));
        }
        check_dim(&self.y_infinity, self.n, "Y_∞")?;
        check_dim(&self.a, self.n, "A")?;
        check_dim(&self.b, self.n, "B")?;
        check_dim(&self.p_d, self.n, "P_D")?;
        check_dim(&self.d, self.n - 1, "D")
    }
}

/// `[Y_∞ → X] - [A → X] - [B → X] + [P_D → X]`.
pub fn double_point_relation(d: &DoublePointDatum) -> Result<CycleSum> {
    d.validate()?;
    let x = &d.target;
    Ok(CycleSum::from_terms([
        (DecoratedCycle::plain(d.y_infinity.clone(), x.clone()), 1),
        (DecoratedCycle::plain(d.a.clone(), x.clone()), -1),
        (DecoratedCycle::plain(d.b.clone(), x.clone()), -1),
        (DecoratedCycle::plain(d.p_d.clone(), x.clone()), 1),
    ]))
}

/// One blowup `Y_{i+1} → Y_i` with exceptional divisor `E_i` meeting the
/// strict transform along `D_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlowupStep {
    pub y: SpaceLabel,
    pub y_next: SpaceLabel,
    pub exceptional: SpaceLabel,
    pub projective_bundle: SpaceLabel,
}

/// `[Y_i → X] - [Y_{i+1} → X] - [E_i → X] + [P_{D_i} → X]`.
pub fn blowup_relation(step: &BlowupStep, x: &SpaceLabel) -> Result<CycleSum> {
    let n = step.y.dim;
    check_dim(&step.y_next, n, "Y_{i+1}")?;
    check_dim(&step.exceptional, n, "E_i")?;
    check_dim(&step.projective_bundle, n, "P_{D_i}")?;
    Ok(CycleSum::from_terms([
        (DecoratedCycle::plain(step.y.clone(), x.clone()), 1),
        (DecoratedCycle::plain(step.y_next.clone(), x.clone()), -1),
        (
            DecoratedCycle::plain(step.exceptional.clone(), x.clone()),
            -1,
        ),
        (
            DecoratedCycle::plain(step.projective_bundle.clone(), x.clone()),
            1,
        ),
    ]))
}

/// Sums the relations of a chained tower and returns the closed form
/// `[Y_0] - [Y_n] - Σ_i ([E_i] - [P_{D_i}])`, after checking it equals the
/// direct sum.
pub fn blowup_tower_telescope(steps: &[BlowupStep], x: &SpaceLabel) -> Result<CycleSum> {
    for (k, pair) in steps.windows(2).enumerate() {
        if pair[0].y_next != pair[1].y {
            return Err(Error::InvalidCycle(format!(
                "blowup tower broken between steps {k} and {}",
                k + 1
            )));
        }
    }
    let mut direct = CycleSum::zero();
    for step in steps {
        direct = direct.plus(&blowup_relation(step, x)?);
    }
    let (Some(first), Some(last)) = (steps.first(), steps.last()) else {
        return Ok(CycleSum::zero());
    };
    let mut closed = CycleSum::from_terms([
        (DecoratedCycle::plain(first.y.clone(), x.clone()), 1),
        (DecoratedCycle::plain(last.y_next.clone(), x.clone()), -1),
    ]);
    for step in steps {
        closed.add_term(
            DecoratedCycle::plain(step.exceptional.clone(), x.clone()),
            -1,
        );
        closed.add_term(
            DecoratedCycle::plain(step.projective_bundle.clone(), x.clone()),
            1,
        );
    }
    if closed != direct {
        return Err(Error::InvalidCycle("telescoping identity failed".into()));
    }
    Ok(closed)
}

/// `[f: Y → X, π^*L_1, ..., π^*L_r, M_1, ..., M_s]` for a smooth
/// `π: Y → Z` with `r > dim Z`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimWitness {
    pub source: SpaceLabel,
    pub target: SpaceLabel,
    pub base: SpaceLabel,
    pub base_bundles: Vec<String>,
    #[serde(default)]
    pub extra_bundles: Vec<String>,
}

/// `[Y → X, L_1, ..., L_r] - [Z → X, i^*L_1, ..., i^*L_{r-1}]` where `Z` is
/// the zero locus of a transverse section of `L_r`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectWitness {
    pub source: SpaceLabel,
    pub target: SpaceLabel,
    pub bundles: Vec<String>,
    pub zero_locus: SpaceLabel,
}

/// `[Y → X, L⃗, L ⊗ M] - Σ a_{ij} [Y → X, L⃗, L^{×i}, M^{×j}]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FglWitness {
    pub source: SpaceLabel,
    pub target: SpaceLabel,
    #[serde(default)]
    pub bundles: Vec<String>,
    pub l: String,
    pub m: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum RelationWitness {
    Dim(DimWitness),
    Sect(SectWitness),
    Fgl(FglWitness),
}

pub fn dim_relation(w: &DimWitness) -> Result<CycleSum> {
    if w.base_bundles.len() as u32 <= w.base.dim {
        return Err(Error::InvalidCycle(format!(
            "{} bundles pulled back from {} of dimension {}; need more than the dimension",
            w.base_bundles.len(),
            w.base.name,
            w.base.dim
        )));
    }
    if !w.source.smooth || !w.base.smooth || w.source.dim < w.base.dim {
        return Err(Error::InvalidCycle(format!(
            "{} → {} is not a smooth morphism of smooth spaces",
            w.source.name, w.base.name
        )));
    }
    let bundles = w
        .base_bundles
        .iter()
        .map(|l| format!("pi^*({l})"))
        .chain(w.extra_bundles.iter().cloned());
    Ok(CycleSum::cycle(DecoratedCycle::new(
        w.source.clone(),
        w.target.clone(),
        bundles,
    )))
}

pub fn sect_relation(w: &SectWitness) -> Result<CycleSum> {
    let Some((_, rest)) = w.bundles.split_last() else {
        return Err(Error::InvalidCycle(
            "the section relation needs at least one bundle".into(),
        ));
    };
    if w.zero_locus.dim + 1 != w.source.dim {
        return Err(Error::InvalidCycle(format!(
            "zero locus {} has dimension {}, expected {}",
            w.zero_locus.name,
            w.zero_locus.dim,
            i64::from(w.source.dim) - 1
        )));
    }
    let whole = DecoratedCycle::new(
        w.source.clone(),
        w.target.clone(),
        w.bundles.iter().cloned(),
    );
    let restricted = DecoratedCycle::new(
        w.zero_locus.clone(),
        w.target.clone(),
        rest.iter().map(|l| format!("i^*({l})")),
    );
    Ok(CycleSum::from_terms([(whole, 1), (restricted, -1)]))
}

/// Terms with more than `dim Y` bundles vanish and are omitted.
pub fn fgl_relation(w: &FglWitness, law: &FormalGroupLaw) -> Result<LazardCycleSum> {
    let r = w.bundles.len() as u32;
    let room = w.source.dim.saturating_sub(r);
    if law.order() < room {
        return Err(Error::InsufficientOrder {
            order: law.order(),
            dim_bound: room,
        });
    }
    let with = |extra: Vec<String>| {
        DecoratedCycle::new(
            w.source.clone(),
            w.target.clone(),
            w.bundles.iter().cloned().chain(extra),
        )
    };
    let mut out = LazardCycleSum::zero();
    out.add_term(
        with(vec![format!("{}⊗{}", w.l, w.m)]),
        GradedPolynomial::one(),
    );
    for i in 0..=room {
        for j in 0..=(room - i) {
            let a = match (i, j) {
                (0, 0) => continue,
                (1, 0) | (0, 1) => GradedPolynomial::one(),
                (0, _) | (_, 0) => continue,
                _ => law.coefficient(i, j),
            };
            let extra = std::iter::repeat_n(w.l.clone(), i as usize)
                .chain(std::iter::repeat_n(w.m.clone(), j as usize))
                .collect();
            out.add_term(with(extra), -a);
        }
    }
    Ok(out)
}

/// A relation generator; the FGL kind lives over the Lazard coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RelationElement {
    Integral(CycleSum),
    Lazard(LazardCycleSum),
}

impl RelationElement {
    pub fn degree(&self) -> GradedDegree {
        match self {
            RelationElement::Integral(z) => z.cycle_degree(),
            RelationElement::Lazard(z) => z.cycle_degree(),
        }
    }
}

pub fn omega_relation_generator(
    w: &RelationWitness,
    law: &FormalGroupLaw,
) -> Result<RelationElement> {
    Ok(match w {
        RelationWitness::Dim(w) => RelationElement::Integral(dim_relation(w)?),
        RelationWitness::Sect(w) => RelationElement::Integral(sect_relation(w)?),
        RelationWitness::Fgl(w) => RelationElement::Lazard(fgl_relation(w, law)?),
    })
}

#[derive(Serialize)]
struct TermRef<'a, C> {
    coeff: &'a C,
    cycle: &'a DecoratedCycle,
}

impl<C: CycleCoefficient + Serialize> Serialize for CycleSum<C> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (cycle, coeff) in &self.terms {
            seq.serialize_element(&TermRef { coeff, cycle })?;
        }
        seq.end()
    }
}

#[derive(Deserialize)]
struct TermOwned<C> {
    coeff: C,
    cycle: DecoratedCycle,
}

impl<'de, C: CycleCoefficient + Deserialize<'de>> Deserialize<'de> for CycleSum<C> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<TermOwned<C>>::deserialize(d)?;
        Ok(CycleSum::from_terms(raw.into_iter().map(|t| {
            let cycle = DecoratedCycle::new(t.cycle.source, t.cycle.target, t.cycle.bundles);
            (cycle, t.coeff)
        })))
    }
}

impl Serialize for RelationElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            RelationElement::Integral(z) => z.serialize(s),
            RelationElement::Lazard(z) => z.serialize(s),
        }
    }
}
