//! Structure documents: JSON text with a `kind` tag and a `version`.
//!
//! See `docs/document-schema.md` for the field reference. Partial maps are
//! explicit entry lists; coefficients of linear structures are `"num/den"`
//! strings.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use qgpd::linalg::{parse_scalar, LinearMap, Scalar, SparseVec};
use qgpd::matched_pair::{LeftAction, MatchedPair, RightAction};
use qgpd::quasigroup::FiniteQuasigroup;
use qgpd::quasigroupoid::{Quasigroupoid, RawQuasigroupoid};
use qgpd::whq::MagmaCoalgebra;
use qgpd::StructureReport;

use crate::canonical;
use crate::CliError;

pub const VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Document {
    Quasigroup(QuasigroupDoc),
    Quasigroupoid(QuasigroupoidDoc),
    Action(ActionDoc),
    MatchedPair(MatchedPairDoc),
    Factorization(FactorizationDoc),
    Whq(WhqDoc),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Quasigroup(_) => "quasigroup",
            Document::Quasigroupoid(_) => "quasigroupoid",
            Document::Action(_) => "action",
            Document::MatchedPair(_) => "matched-pair",
            Document::Factorization(_) => "factorization",
            Document::Whq(_) => "whq",
        }
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct QuasigroupDoc {
    pub kind: String,
    pub version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
    pub identity: usize,
    pub table: Vec<Vec<usize>>,
}

/// Quasigroupoid fields, shared by the top-level document and nested uses.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct QuasigroupoidBody {
    pub objects: usize,
    pub source: Vec<usize>,
    pub target: Vec<usize>,
    pub identity: Vec<usize>,
    pub inverse: Vec<usize>,
    /// Entries `[a, b, a•b]`, one per composable pair.
    pub product: Vec<[usize; 3]>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct QuasigroupoidDoc {
    pub kind: String,
    pub version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
    pub objects: usize,
    pub source: Vec<usize>,
    pub target: Vec<usize>,
    pub identity: Vec<usize>,
    pub inverse: Vec<usize>,
    pub product: Vec<[usize; 3]>,
}

#[derive(Serialize, Deserialize, Debug, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ActionDoc {
    pub kind: String,
    pub version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
    /// `left`: H acts on A with values in A. `right`: A acts on H with
    /// values in H.
    pub side: Side,
    pub a: QuasigroupoidBody,
    pub h: QuasigroupoidBody,
    /// Entries `[h, a, value]` on the pairs with `s_H(h) = t_A(a)`.
    pub entries: Vec<[usize; 3]>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct MatchedPairDoc {
    pub kind: String,
    pub version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
    pub a: QuasigroupoidBody,
    pub h: QuasigroupoidBody,
    pub phi_a: Vec<[usize; 3]>,
    pub phi_h: Vec<[usize; 3]>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct FactorizationDoc {
    pub kind: String,
    pub version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
    pub b: QuasigroupoidBody,
    pub a_arrows: Vec<usize>,
    pub h_arrows: Vec<usize>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct WhqDoc {
    pub kind: String,
    pub version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
    pub dim: usize,
    /// `[i, c]`: coefficient of `e_i` in the unit.
    pub unit: Vec<(usize, String)>,
    /// `[i, j, k, c]`: coefficient of `e_k` in `e_i e_j`.
    pub product: Vec<(usize, usize, usize, String)>,
    /// `[i, c]`: `ε(e_i)`.
    pub counit: Vec<(usize, String)>,
    /// `[i, j, k, c]`: coefficient of `e_j ⊗ e_k` in `δ(e_i)`.
    pub coproduct: Vec<(usize, usize, usize, String)>,
    /// `[i, j, c]`: coefficient of `e_j` in `λ(e_i)`.
    pub antipode: Vec<(usize, usize, String)>,
}

fn schema(e: serde_json::Error) -> CliError {
    CliError::Schema(e.to_string())
}

pub fn parse(text: &str) -> Result<Document, CliError> {
    #[derive(Deserialize)]
    struct Head {
        kind: String,
        version: u32,
    }
    let head: Head = serde_json::from_str(text).map_err(schema)?;
    if head.version != VERSION {
        return Err(CliError::Schema(format!(
            "field `version`: unsupported version {} (expected {VERSION})",
            head.version
        )));
    }
    let doc = match head.kind.as_str() {
        "quasigroup" => Document::Quasigroup(serde_json::from_str(text).map_err(schema)?),
        "quasigroupoid" => Document::Quasigroupoid(serde_json::from_str(text).map_err(schema)?),
        "action" => Document::Action(serde_json::from_str(text).map_err(schema)?),
        "matched-pair" => Document::MatchedPair(serde_json::from_str(text).map_err(schema)?),
        "factorization" => Document::Factorization(serde_json::from_str(text).map_err(schema)?),
        "whq" => Document::Whq(serde_json::from_str(text).map_err(schema)?),
        other => return Err(CliError::Schema(format!("field `kind`: unknown kind {other:?}"))),
    };
    Ok(doc)
}

pub fn emit(doc: &Document) -> String {
    let value = match doc {
        Document::Quasigroup(d) => serde_json::to_value(d),
        Document::Quasigroupoid(d) => serde_json::to_value(d),
        Document::Action(d) => serde_json::to_value(d),
        Document::MatchedPair(d) => serde_json::to_value(d),
        Document::Factorization(d) => serde_json::to_value(d),
        Document::Whq(d) => serde_json::to_value(d),
    }
    .expect("documents serialize");
    canonical::emit(&value)
}

/// Prefixes every tag of a component report.
fn prefixed(prefix: &str, r: StructureReport) -> StructureReport {
    let mut out = StructureReport::new(r.subject.clone());
    out.absorb(prefix, r);
    out
}

impl QuasigroupoidBody {
    pub fn of(q: &Quasigroupoid) -> Self {
        let raw = q.to_raw();
        let mut product: Vec<[usize; 3]> = raw.product.iter().map(|&(a, b, c)| [a, b, c]).collect();
        product.sort_unstable();
        QuasigroupoidBody {
            objects: raw.objects,
            source: raw.source,
            target: raw.target,
            identity: raw.identity,
            inverse: raw.inverse,
            product,
        }
    }

    pub fn raw(&self) -> RawQuasigroupoid {
        RawQuasigroupoid {
            objects: self.objects,
            source: self.source.clone(),
            target: self.target.clone(),
            identity: self.identity.clone(),
            inverse: self.inverse.clone(),
            product: self.product.iter().map(|&[a, b, c]| (a, b, c)).collect(),
        }
    }

    /// Validated structure; axiom failures come back with tags under `prefix`.
    pub fn build(&self, prefix: &str) -> Result<Arc<Quasigroupoid>, CliError> {
        match Quasigroupoid::new(self.raw()) {
            Ok(q) => Ok(Arc::new(q)),
            Err(qgpd::Error::Invalid(r)) => Err(CliError::Violations(prefixed(prefix, r))),
            Err(e) => Err(e.into()),
        }
    }
}

impl QuasigroupDoc {
    pub fn of(g: &FiniteQuasigroup) -> Self {
        QuasigroupDoc {
            kind: "quasigroup".into(),
            version: VERSION,
            names: None,
            identity: g.identity(),
            table: g.rows(),
        }
    }
}

impl QuasigroupoidDoc {
    pub fn of(q: &Quasigroupoid) -> Self {
        Self::from_body(QuasigroupoidBody::of(q))
    }

    pub fn from_body(b: QuasigroupoidBody) -> Self {
        QuasigroupoidDoc {
            kind: "quasigroupoid".into(),
            version: VERSION,
            names: None,
            objects: b.objects,
            source: b.source,
            target: b.target,
            identity: b.identity,
            inverse: b.inverse,
            product: b.product,
        }
    }

    pub fn body(&self) -> QuasigroupoidBody {
        QuasigroupoidBody {
            objects: self.objects,
            source: self.source.clone(),
            target: self.target.clone(),
            identity: self.identity.clone(),
            inverse: self.inverse.clone(),
            product: self.product.clone(),
        }
    }
}

fn triples(v: &[(usize, usize, usize)]) -> Vec<[usize; 3]> {
    v.iter().map(|&(x, y, z)| [x, y, z]).collect()
}

fn tuples(v: &[[usize; 3]]) -> Vec<(usize, usize, usize)> {
    v.iter().map(|&[x, y, z]| (x, y, z)).collect()
}

impl ActionDoc {
    pub fn left(l: &LeftAction) -> Self {
        ActionDoc {
            kind: "action".into(),
            version: VERSION,
            names: None,
            side: Side::Left,
            a: QuasigroupoidBody::of(l.acted()),
            h: QuasigroupoidBody::of(l.actor()),
            entries: triples(&l.entries()),
        }
    }

    pub fn right(r: &RightAction) -> Self {
        ActionDoc {
            kind: "action".into(),
            version: VERSION,
            names: None,
            side: Side::Right,
            a: QuasigroupoidBody::of(r.actor()),
            h: QuasigroupoidBody::of(r.acted()),
            entries: triples(&r.entries()),
        }
    }
}

impl MatchedPairDoc {
    pub fn of(mp: &MatchedPair) -> Self {
        MatchedPairDoc {
            kind: "matched-pair".into(),
            version: VERSION,
            names: None,
            a: QuasigroupoidBody::of(mp.a()),
            h: QuasigroupoidBody::of(mp.h()),
            phi_a: triples(&mp.left().entries()),
            phi_h: triples(&mp.right().entries()),
        }
    }

    /// The matched pair, unvalidated beyond its domains.
    pub fn build(&self) -> Result<MatchedPair, CliError> {
        let a = self.a.build("a/")?;
        let h = self.h.build("h/")?;
        let left = LeftAction::from_entries(h.clone(), a.clone(), &tuples(&self.phi_a))?;
        let right = RightAction::from_entries(h, a, &tuples(&self.phi_h))?;
        Ok(MatchedPair::new(left, right)?)
    }
}

fn scalar<F: Scalar>(text: &str, field: &str) -> Result<F, CliError> {
    parse_scalar(text).ok_or_else(|| CliError::Schema(format!("field `{field}`: bad coefficient {text:?}")))
}

fn check_index(i: usize, size: usize, field: &str) -> Result<usize, CliError> {
    if i < size {
        Ok(i)
    } else {
        Err(CliError::Range(format!("field `{field}`: index {i} out of range (size {size})")))
    }
}

fn duplicate(field: &str, at: String) -> CliError {
    CliError::Schema(format!("field `{field}`: duplicate entry at {at}"))
}

impl WhqDoc {
    pub fn of<F: Scalar>(d: &MagmaCoalgebra<F>) -> Self {
        let n = d.dim();
        let s = |c: &F| c.to_ratio_string();
        let mut product = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for (k, c) in d.mul_basis(i, j).iter() {
                    product.push((i, j, k, s(c)));
                }
            }
        }
        let mut coproduct = Vec::new();
        let mut antipode = Vec::new();
        let mut counit = Vec::new();
        for i in 0..n {
            for (jk, c) in d.delta().col(i).iter() {
                coproduct.push((i, jk / n, jk % n, s(c)));
            }
            for (j, c) in d.lambda().col(i).iter() {
                antipode.push((i, j, s(c)));
            }
            let e = d.eps().entry(0, i);
            if !num::Zero::is_zero(&e) {
                counit.push((i, s(&e)));
            }
        }
        WhqDoc {
            kind: "whq".into(),
            version: VERSION,
            names: None,
            dim: n,
            unit: d.unit().iter().map(|(i, c)| (i, s(c))).collect(),
            product,
            counit,
            coproduct,
            antipode,
        }
    }

    pub fn build<F: Scalar>(&self) -> Result<MagmaCoalgebra<F>, CliError> {
        let n = self.dim;
        let mut unit = SparseVec::zero(n);
        let mut seen = std::collections::BTreeSet::new();
        for (i, c) in &self.unit {
            check_index(*i, n, "unit")?;
            if !seen.insert(*i) {
                return Err(duplicate("unit", format!("{i}")));
            }
            unit.add_at(*i, scalar(c, "unit")?);
        }
        let mut mu = vec![SparseVec::zero(n); n * n];
        let mut seen = std::collections::BTreeSet::new();
        for (i, j, k, c) in &self.product {
            for x in [i, j, k] {
                check_index(*x, n, "product")?;
            }
            if !seen.insert((*i, *j, *k)) {
                return Err(duplicate("product", format!("({i},{j},{k})")));
            }
            mu[i * n + j].add_at(*k, scalar(c, "product")?);
        }
        let mut eps = vec![SparseVec::zero(1); n];
        for (i, c) in &self.counit {
            check_index(*i, n, "counit")?;
            if !eps[*i].is_zero() {
                return Err(duplicate("counit", format!("{i}")));
            }
            eps[*i].add_at(0, scalar(c, "counit")?);
        }
        let mut delta = vec![SparseVec::zero(n * n); n];
        let mut seen = std::collections::BTreeSet::new();
        for (i, j, k, c) in &self.coproduct {
            for x in [i, j, k] {
                check_index(*x, n, "coproduct")?;
            }
            if !seen.insert((*i, *j, *k)) {
                return Err(duplicate("coproduct", format!("({i},{j},{k})")));
            }
            delta[*i].add_at(j * n + k, scalar(c, "coproduct")?);
        }
        let mut lambda = vec![SparseVec::zero(n); n];
        let mut seen = std::collections::BTreeSet::new();
        for (i, j, c) in &self.antipode {
            for x in [i, j] {
                check_index(*x, n, "antipode")?;
            }
            if !seen.insert((*i, *j)) {
                return Err(duplicate("antipode", format!("({i},{j})")));
            }
            lambda[*i].add_at(*j, scalar(c, "antipode")?);
        }
        Ok(MagmaCoalgebra::new(
            unit,
            LinearMap::from_columns(n, mu)?,
            LinearMap::from_columns(1, eps)?,
            LinearMap::from_columns(n * n, delta)?,
            LinearMap::from_columns(n, lambda)?,
        )?)
    }
}
