use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::config::SncConfiguration;
use crate::chern::{evaluate_at_chern, ChernPolynomial};
use crate::error::{Error, Result};
use crate::fgl::FormalGroupLaw;
use crate::series::{Exponents, TruncatedSeries};
use crate::{GradedDegree, Subset};

/// `Σ_J i^J_*(entry_J · 1_{D^J})`: one Chern polynomial per face, each
/// truncated at the dimension of its face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceClassVector {
    config: SncConfiguration,
    entries: BTreeMap<Subset, ChernPolynomial>,
}

impl FaceClassVector {
    pub fn zero(config: &SncConfiguration) -> Self {
        FaceClassVector {
            config: config.clone(),
            entries: BTreeMap::new(),
        }
    }

    /// Builds a vector from explicit entries, checking faces and bounds.
    pub fn from_entries<I>(config: &SncConfiguration, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Subset, ChernPolynomial)>,
    {
        let mut v = FaceClassVector::zero(config);
        for (face, p) in entries {
            if !config.has_face(&face) {
                return Err(Error::InvalidConfiguration(format!("{face} is not a face")));
            }
            let d = config.face_dim(&face);
            if p.dim_bound() != d {
                return Err(Error::DimBoundMismatch(p.dim_bound(), d));
            }
            let p = p.with_num_vars(config.num_components());
            if p.num_vars() != config.num_components() {
                return Err(Error::InvalidArgument(format!(
                    "entry at {face} uses {} Chern symbols for {} components",
                    p.num_vars(),
                    config.num_components()
                )));
            }
            v.accumulate(face, p);
        }
        Ok(v)
    }

    pub fn config(&self) -> &SncConfiguration {
        &self.config
    }

    pub fn entries(&self) -> &BTreeMap<Subset, ChernPolynomial> {
        &self.entries
    }

    pub fn get(&self, face: &Subset) -> Option<&ChernPolynomial> {
        self.entries.get(face)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Adds `p` at `face`; callers guarantee the face exists and the bound
    /// matches its dimension.
    fn accumulate(&mut self, face: Subset, p: ChernPolynomial) {
        if p.is_zero() {
            return;
        }
        let sum = match self.entries.remove(&face) {
            Some(q) => q.plus(&p),
            None => p,
        };
        if !sum.is_zero() {
            self.entries.insert(face, sum);
        }
    }

    pub fn plus(&self, other: &FaceClassVector) -> Result<FaceClassVector> {
        if self.config != other.config {
            return Err(Error::InvalidArgument(
                "face vectors over different configurations".into(),
            ));
        }
        let mut out = self.clone();
        for (f, p) in &other.entries {
            out.accumulate(f.clone(), p.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> FaceClassVector {
        FaceClassVector {
            config: self.config.clone(),
            entries: self
                .entries
                .iter()
                .map(|(f, p)| {
                    (
                        f.clone(),
                        p.scale(&crate::coeff::GradedPolynomial::from_int(-1)),
                    )
                })
                .collect(),
        }
    }

    /// Dimension of the class: a monomial of `c`-degree `e` with a
    /// coefficient of degree `g` on the face `J` has dimension
    /// `ambient_dim - |J| - e + g`.
    pub fn class_dimension(&self) -> GradedDegree {
        let mut out = GradedDegree::Any;
        for (face, p) in &self.entries {
            let base = i64::from(self.config.face_dim(face));
            out = match p.degree() {
                GradedDegree::Exact(d) => out.with_term(base + d),
                GradedDegree::Any => out,
                GradedDegree::Inhomogeneous => GradedDegree::Inhomogeneous,
            };
        }
        out
    }

    /// Rewrites `c_j · 1_{D^J}` with `j ∉ J` to `1_{D^{J∪{j}}}` (zero when
    /// that face is absent) until every symbol's index lies in its face.
    pub fn normal_form(&self) -> FaceClassVector {
        let mut out = FaceClassVector::zero(&self.config);
        let r = self.config.num_components();
        for (face, p) in &self.entries {
            for (e, c) in p.terms() {
                let outside = Subset::new(
                    e.as_slice()
                        .iter()
                        .enumerate()
                        .filter(|&(j, &k)| k > 0 && !face.contains(j))
                        .map(|(j, _)| j),
                );
                let target = face.union(&outside);
                if !self.config.has_face(&target) {
                    continue;
                }
                let reduced = e.divide_by(&outside).expect("outside symbols occur");
                let mut q = ChernPolynomial::zero(r, self.config.face_dim(&target));
                q.add_term(reduced, c.clone());
                out.accumulate(target, q);
            }
        }
        out
    }

    /// Multiplies each entry by the operator of the line bundle
    /// `O(Σ n_i D_i)`: the series `F^{n}` evaluated at the Chern symbols of
    /// that face.
    pub fn apply_divisor_operator(
        &self,
        ns: &[i64],
        law: &FormalGroupLaw,
    ) -> Result<FaceClassVector> {
        check_multiplicities(&self.config, ns, law, false)?;
        let series = law.multi_linear(ns)?;
        self.multiply_by_series(&series)
    }

    /// Multiplies each face entry by `s` evaluated at that face.
    pub fn multiply_by_series(&self, s: &TruncatedSeries) -> Result<FaceClassVector> {
        let mut out = FaceClassVector::zero(&self.config);
        for (face, p) in &self.entries {
            let op = evaluate_at_chern(s, p.dim_bound())?;
            out.accumulate(face.clone(), p.times(&op));
        }
        Ok(out)
    }
}

fn check_multiplicities(
    c: &SncConfiguration,
    ns: &[i64],
    law: &FormalGroupLaw,
    need_nonzero: bool,
) -> Result<()> {
    if let Err(v) = c.validate() {
        let msgs: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        return Err(Error::InvalidConfiguration(msgs.join("; ")));
    }
    if ns.len() != c.num_components() {
        return Err(Error::InvalidArgument(format!(
            "{} multiplicities for {} components",
            ns.len(),
            c.num_components()
        )));
    }
    if need_nonzero && ns.iter().all(|&n| n == 0) {
        return Err(Error::InvalidArgument("the divisor is zero".into()));
    }
    if law.order() < c.ambient_dim {
        return Err(Error::InsufficientOrder {
            order: law.order(),
            dim_bound: c.ambient_dim,
        });
    }
    Ok(())
}

fn check_quasiprojective(c: &SncConfiguration, ns: &[i64]) -> Result<()> {
    for (comp, &n) in c.components.iter().zip(ns) {
        if n != 0 && !comp.quasiprojective {
            return Err(Error::InvalidConfiguration(format!(
                "component {} of the divisor is not quasiprojective",
                comp.name
            )));
        }
    }
    Ok(())
}

/// The class `[D → |D|]` of `D = Σ n_i D_i`: at each face `J`, the part
/// `F_J` of `F^{n}` evaluated at the Chern symbols with bound `dim D^J`.
pub fn divisor_class(
    c: &SncConfiguration,
    ns: &[i64],
    law: &FormalGroupLaw,
) -> Result<FaceClassVector> {
    check_multiplicities(c, ns, law, true)?;
    check_quasiprojective(c, ns)?;
    let parts = law.multi_linear(ns)?.support_decompose()?;
    let mut out = FaceClassVector::zero(c);
    for (face, part) in parts {
        if !c.has_face(&face) {
            continue;
        }
        let p = evaluate_at_chern(&part, c.face_dim(&face))?;
        out.accumulate(face, p);
    }
    Ok(out)
}

/// The product class `[D • E → |D| ∩ |E|]` for `D = Σ n_i D_i` and
/// `E = Σ p_i D_i`: over pairs `(I, J)` with `n` nonzero on `J` and `p`
/// nonzero on `I`, the face `I ∪ J` receives
/// `F_J^{n} · F_I^{p} · Π_{i∈I∩J} c_i`.
pub fn product_class(
    c: &SncConfiguration,
    ns: &[i64],
    ps: &[i64],
    law: &FormalGroupLaw,
) -> Result<FaceClassVector> {
    check_multiplicities(c, ns, law, true)?;
    check_multiplicities(c, ps, law, true)?;
    check_quasiprojective(c, ps)?;
    let d_parts = law.multi_linear(ns)?.support_decompose()?;
    let e_parts = law.multi_linear(ps)?.support_decompose()?;
    let r = c.num_components();
    let mut out = FaceClassVector::zero(c);
    for (j_face, fj) in &d_parts {
        if j_face.indices().iter().any(|&j| ns[j] == 0) {
            continue;
        }
        for (i_face, fi) in &e_parts {
            if i_face.indices().iter().any(|&i| ps[i] == 0) {
                continue;
            }
            let k = i_face.union(j_face);
            if !c.has_face(&k) {
                continue;
            }
            let d = c.face_dim(&k);
            let mut term = evaluate_at_chern(fj, d)?.times(&evaluate_at_chern(fi, d)?);
            for &i in i_face.intersection(j_face).indices() {
                term = term.mul_symbol(i);
            }
            debug_assert_eq!(term.num_vars(), r);
            out.accumulate(k, term);
        }
    }
    Ok(out)
}

/// Re-indexes a Chern polynomial: symbol `k` becomes symbol `positions[k]`
/// among `num_vars`.
pub(crate) fn lift_chern(
    p: &ChernPolynomial,
    num_vars: usize,
    positions: &[usize],
) -> ChernPolynomial {
    let mut out = ChernPolynomial::zero(num_vars, p.dim_bound());
    for (e, c) in p.terms() {
        let mut f = vec![0; num_vars];
        for (k, &pos) in positions.iter().enumerate() {
            f[pos] += e.as_slice()[k];
        }
        out.add_term(Exponents::new(f), c.clone());
    }
    out
}

#[derive(Serialize, Deserialize)]
pub(crate) struct FaceEntryJson {
    pub face: Subset,
    pub class: ChernPolynomial,
}

#[derive(Serialize)]
struct FaceClassVectorJson<'a> {
    ambient_dim: u32,
    entries: Vec<FaceEntryRef<'a>>,
}

#[derive(Serialize)]
struct FaceEntryRef<'a> {
    face: &'a Subset,
    class: &'a ChernPolynomial,
}

impl Serialize for FaceClassVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FaceClassVectorJson {
            ambient_dim: self.config.ambient_dim,
            entries: self
                .entries
                .iter()
                .map(|(face, class)| FaceEntryRef { face, class })
                .collect(),
        }
        .serialize(s)
    }
}

impl FaceClassVector {
    /// Parses the `entries` array of the JSON form against a configuration.
    pub fn from_json_entries(
        config: &SncConfiguration,
        entries: serde_json::Value,
    ) -> Result<Self> {
        let raw: Vec<FaceEntryJson> =
            serde_json::from_value(entries).map_err(|e| Error::Parse(e.to_string()))?;
        FaceClassVector::from_entries(config, raw.into_iter().map(|e| (e.face, e.class)))
    }
}
