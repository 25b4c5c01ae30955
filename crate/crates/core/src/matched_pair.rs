//! Actions between quasigroupoids on a common base, matched pairs and the
//! double cross product `A ⋈ H`.
//!
//! Both actions are keyed by pairs `(h, a)` with `s_H(h) = t_A(a)`.

use std::sync::{Arc, OnceLock};

use crate::quasigroup::FiniteQuasigroup;
use crate::quasigroupoid::{
    discrete_groupoid, from_quasigroup_action, QgpdMorphism, Quasigroupoid, RawQuasigroupoid, SetAction,
};
use crate::report::{Recorder, StructureReport};
use crate::{Error, Result};

/// A map on `{(h,a) : s_H(h) = t_A(a)}` stored densely as `h*|A1| + a`.
#[derive(Debug, Clone, PartialEq, Eq)]
struct PairMap {
    a_arrows: usize,
    values: Vec<Option<usize>>,
}

impl PairMap {
    fn from_fn(h: &Quasigroupoid, a: &Quasigroupoid, range: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self> {
        base_check(h, a)?;
        let mut values = vec![None; h.arrows() * a.arrows()];
        for hh in 0..h.arrows() {
            for &aa in a.arrows_into(h.src(hh)) {
                let v = f(hh, aa);
                if v >= range {
                    return Err(Error::range(format!("action value at ({hh},{aa})"), v, range));
                }
                values[hh * a.arrows() + aa] = Some(v);
            }
        }
        Ok(PairMap {
            a_arrows: a.arrows(),
            values,
        })
    }

    fn from_entries(h: &Quasigroupoid, a: &Quasigroupoid, range: usize, entries: &[(usize, usize, usize)]) -> Result<Self> {
        base_check(h, a)?;
        let mut values = vec![None; h.arrows() * a.arrows()];
        for &(hh, aa, v) in entries {
            if hh >= h.arrows() {
                return Err(Error::range("action entry h", hh, h.arrows()));
            }
            if aa >= a.arrows() {
                return Err(Error::range("action entry a", aa, a.arrows()));
            }
            if v >= range {
                return Err(Error::range(format!("action value at ({hh},{aa})"), v, range));
            }
            if h.src(hh) != a.tgt(aa) {
                return Err(Error::DomainMismatch {
                    h: hh,
                    a: aa,
                    reason: "defined on a non-composable pair".into(),
                });
            }
            if values[hh * a.arrows() + aa].replace(v).is_some() {
                return Err(Error::DomainMismatch {
                    h: hh,
                    a: aa,
                    reason: "defined twice".into(),
                });
            }
        }
        for hh in 0..h.arrows() {
            for &aa in a.arrows_into(h.src(hh)) {
                if values[hh * a.arrows() + aa].is_none() {
                    return Err(Error::DomainMismatch {
                        h: hh,
                        a: aa,
                        reason: "missing on a composable pair".into(),
                    });
                }
            }
        }
        Ok(PairMap {
            a_arrows: a.arrows(),
            values,
        })
    }

    fn get(&self, h: usize, a: usize) -> Option<usize> {
        self.values[h * self.a_arrows + a]
    }

    fn entries(&self) -> Vec<(usize, usize, usize)> {
        self.values
            .iter()
            .enumerate()
            .filter_map(|(i, v)| v.map(|v| (i / self.a_arrows, i % self.a_arrows, v)))
            .collect()
    }
}

fn base_check(h: &Quasigroupoid, a: &Quasigroupoid) -> Result<()> {
    if h.objects() != a.objects() {
        return Err(Error::BaseMismatch(format!(
            "{} objects against {}",
            h.objects(),
            a.objects()
        )));
    }
    Ok(())
}

/// `φ_A`: a left action of `H` on `A`, valued in `A1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeftAction {
    h: Arc<Quasigroupoid>,
    a: Arc<Quasigroupoid>,
    map: PairMap,
}

/// `φ_H`: a right action of `A` on `H`, valued in `H1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RightAction {
    h: Arc<Quasigroupoid>,
    a: Arc<Quasigroupoid>,
    map: PairMap,
}

impl LeftAction {
    pub fn from_fn(h: Arc<Quasigroupoid>, a: Arc<Quasigroupoid>, f: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let map = PairMap::from_fn(&h, &a, a.arrows(), f)?;
        Ok(LeftAction { h, a, map })
    }

    /// From explicit `(h, a, φ_A(h,a))` entries covering the composable set exactly.
    pub fn from_entries(h: Arc<Quasigroupoid>, a: Arc<Quasigroupoid>, entries: &[(usize, usize, usize)]) -> Result<Self> {
        let map = PairMap::from_entries(&h, &a, a.arrows(), entries)?;
        Ok(LeftAction { h, a, map })
    }

    pub fn get(&self, h: usize, a: usize) -> Option<usize> {
        self.map.get(h, a)
    }

    pub fn entries(&self) -> Vec<(usize, usize, usize)> {
        self.map.entries()
    }

    pub fn actor(&self) -> &Arc<Quasigroupoid> {
        &self.h
    }

    pub fn acted(&self) -> &Arc<Quasigroupoid> {
        &self.a
    }
}

impl RightAction {
    pub fn from_fn(h: Arc<Quasigroupoid>, a: Arc<Quasigroupoid>, f: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let map = PairMap::from_fn(&h, &a, h.arrows(), f)?;
        Ok(RightAction { h, a, map })
    }

    /// From explicit `(h, a, φ_H(h,a))` entries covering the composable set exactly.
    pub fn from_entries(h: Arc<Quasigroupoid>, a: Arc<Quasigroupoid>, entries: &[(usize, usize, usize)]) -> Result<Self> {
        let map = PairMap::from_entries(&h, &a, h.arrows(), entries)?;
        Ok(RightAction { h, a, map })
    }

    pub fn get(&self, h: usize, a: usize) -> Option<usize> {
        self.map.get(h, a)
    }

    pub fn entries(&self) -> Vec<(usize, usize, usize)> {
        self.map.entries()
    }

    pub fn actor(&self) -> &Arc<Quasigroupoid> {
        &self.a
    }

    pub fn acted(&self) -> &Arc<Quasigroupoid> {
        &self.h
    }
}

/// Pairs `(h, a)` with `s_H(h) = t_A(a)`, in lexicographic order.
fn mixed_pairs<'a>(h: &'a Quasigroupoid, a: &'a Quasigroupoid) -> impl Iterator<Item = (usize, usize)> + 'a {
    (0..h.arrows()).flat_map(move |hh| a.arrows_into(h.src(hh)).iter().map(move |&aa| (hh, aa)))
}

fn opt2(f: impl Fn(usize, usize) -> Option<usize>) -> impl Fn(Option<usize>, Option<usize>) -> Option<usize> {
    move |x, y| f(x?, y?)
}

/// Checks (c1), (c2), (c3).
pub fn check_left_action(l: &LeftAction) -> StructureReport {
    let (h, a) = (&*l.h, &*l.a);
    let phi = opt2(|x, y| l.get(x, y));
    let mut report = StructureReport::new("left action");
    let mut c = report.check("c1");
    for (hh, aa) in mixed_pairs(h, a) {
        let v = l.get(hh, aa).unwrap();
        c.eq(a.tgt(v), h.tgt(hh), &[hh, aa]);
    }
    let mut c = report.check("c2");
    for (g, hh) in h.composable_pairs() {
        for &aa in a.arrows_into(h.src(hh)) {
            let lhs = phi(h.prod(g, hh), Some(aa));
            let rhs = phi(Some(g), l.get(hh, aa));
            c.eq_idx(lhs, rhs, &[g, hh, aa]);
        }
    }
    let mut c = report.check("c3");
    for aa in 0..a.arrows() {
        c.eq_idx(l.get(h.id(a.tgt(aa)), aa), Some(aa), &[aa]);
    }
    report
}

/// Checks (d1), (d2), (d3).
pub fn check_right_action(r: &RightAction) -> StructureReport {
    let (h, a) = (&*r.h, &*r.a);
    let phi = opt2(|x, y| r.get(x, y));
    let mut report = StructureReport::new("right action");
    let mut c = report.check("d1");
    for (hh, aa) in mixed_pairs(h, a) {
        let v = r.get(hh, aa).unwrap();
        c.eq(h.src(v), a.src(aa), &[hh, aa]);
    }
    let mut c = report.check("d2");
    for hh in 0..h.arrows() {
        for &aa in a.arrows_into(h.src(hh)) {
            for &bb in a.arrows_into(a.src(aa)) {
                let lhs = phi(Some(hh), a.prod(aa, bb));
                let rhs = phi(r.get(hh, aa), Some(bb));
                c.eq_idx(lhs, rhs, &[hh, aa, bb]);
            }
        }
    }
    let mut c = report.check("d3");
    for hh in 0..h.arrows() {
        c.eq_idx(r.get(hh, a.id(h.src(hh))), Some(hh), &[hh]);
    }
    report
}

/// Two quasigroupoids on one base with a left and a right action.
///
/// Construction only checks shapes; the axioms are checked on demand.
#[derive(Debug, Clone)]
pub struct MatchedPair {
    left: LeftAction,
    right: RightAction,
    validity: OnceLock<StructureReport>,
}

impl PartialEq for MatchedPair {
    fn eq(&self, other: &Self) -> bool {
        self.left == other.left && self.right == other.right
    }
}

impl MatchedPair {
    pub fn new(left: LeftAction, right: RightAction) -> Result<Self> {
        if left.a != right.a || left.h != right.h {
            return Err(Error::BaseMismatch(
                "the actions are defined on different quasigroupoids".into(),
            ));
        }
        Ok(MatchedPair {
            left,
            right,
            validity: OnceLock::new(),
        })
    }

    pub fn from_fns(
        a: Arc<Quasigroupoid>,
        h: Arc<Quasigroupoid>,
        phi_a: impl Fn(usize, usize) -> usize,
        phi_h: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        let left = LeftAction::from_fn(h.clone(), a.clone(), phi_a)?;
        let right = RightAction::from_fn(h, a, phi_h)?;
        Self::new(left, right)
    }

    pub fn a(&self) -> &Arc<Quasigroupoid> {
        &self.left.a
    }

    pub fn h(&self) -> &Arc<Quasigroupoid> {
        &self.left.h
    }

    pub fn left(&self) -> &LeftAction {
        &self.left
    }

    pub fn right(&self) -> &RightAction {
        &self.right
    }

    /// `φ_A(h, a)`.
    pub fn phi_a(&self, h: usize, a: usize) -> Option<usize> {
        self.left.get(h, a)
    }

    /// `φ_H(h, a)`.
    pub fn phi_h(&self, h: usize, a: usize) -> Option<usize> {
        self.right.get(h, a)
    }

    /// Action checks followed by (e1)-(e3), all in one report.
    pub fn validate(&self) -> &StructureReport {
        self.validity.get_or_init(|| {
            let mut report = StructureReport::new("matched pair");
            report.absorb("", check_left_action(&self.left));
            report.absorb("", check_right_action(&self.right));
            report.absorb("", compatibility(self));
            report
        })
    }

    /// Fails with [`Error::InvalidMatchedPair`] unless every axiom holds.
    pub fn ensure_valid(&self) -> Result<()> {
        let r = self.validate();
        if r.is_pass() {
            Ok(())
        } else {
            Err(Error::InvalidMatchedPair(r.clone()))
        }
    }
}

/// Checks (e1)-(e3); the actions must already be valid.
pub fn check_matched_pair(mp: &MatchedPair) -> Result<StructureReport> {
    let mut actions = StructureReport::new("actions");
    actions.absorb("", check_left_action(&mp.left));
    actions.absorb("", check_right_action(&mp.right));
    if !actions.is_pass() {
        return Err(Error::ActionInvalid(actions));
    }
    Ok(compatibility(mp))
}

fn compatibility(mp: &MatchedPair) -> StructureReport {
    let (a, h) = (&**mp.a(), &**mp.h());
    let pa = opt2(|x, y| mp.phi_a(x, y));
    let ph = opt2(|x, y| mp.phi_h(x, y));
    let ap = opt2(|x, y| a.prod(x, y));
    let hp = opt2(|x, y| h.prod(x, y));
    let mut report = StructureReport::new("matched pair");
    let mut c = report.check("e1");
    for (hh, aa) in mixed_pairs(h, a) {
        let l = mp.phi_a(hh, aa).map(|v| a.src(v));
        let r = mp.phi_h(hh, aa).map(|v| h.tgt(v));
        c.eq_idx(l, r, &[hh, aa]);
    }
    let mut c = report.check("e2");
    for (hh, aa) in mixed_pairs(h, a) {
        for &bb in a.arrows_into(a.src(aa)) {
            let lhs = pa(Some(hh), a.prod(aa, bb));
            let rhs = ap(mp.phi_a(hh, aa), pa(mp.phi_h(hh, aa), Some(bb)));
            c.eq_idx(lhs, rhs, &[hh, aa, bb]);
        }
    }
    let mut c = report.check("e3");
    for (g, hh) in h.composable_pairs() {
        for &aa in a.arrows_into(h.src(hh)) {
            let lhs = ph(h.prod(g, hh), Some(aa));
            let rhs = hp(ph(Some(g), mp.phi_a(hh, aa)), mp.phi_h(hh, aa));
            c.eq_idx(lhs, rhs, &[g, hh, aa]);
        }
    }
    report
}

/// Checks (P-1) through (P-10) on every configuration where they apply.
pub fn matched_pair_identity_suite(mp: &MatchedPair) -> StructureReport {
    let (a, h) = (&**mp.a(), &**mp.h());
    let pa = opt2(|x, y| mp.phi_a(x, y));
    let ph = opt2(|x, y| mp.phi_h(x, y));
    let ap = opt2(|x, y| a.prod(x, y));
    let hp = opt2(|x, y| h.prod(x, y));
    let la = |x: Option<usize>| x.map(|x| a.inv(x));
    let lh = |x: Option<usize>| x.map(|x| h.inv(x));
    let pairs: Vec<(usize, usize)> = mixed_pairs(h, a).collect();
    let mut report = StructureReport::new("matched pair identities");

    let mut c = report.check("P-1");
    for hh in 0..h.arrows() {
        c.eq_idx(mp.phi_a(hh, a.id(h.src(hh))), Some(a.id(h.tgt(hh))), &[hh]);
    }
    let mut c = report.check("P-2");
    for aa in 0..a.arrows() {
        c.eq_idx(mp.phi_h(h.id(a.tgt(aa)), aa), Some(h.id(a.src(aa))), &[aa]);
    }
    let mut c = report.check("P-3");
    for &(hh, aa) in &pairs {
        let lhs = la(mp.phi_a(hh, aa));
        let rhs = pa(mp.phi_h(hh, aa), Some(a.inv(aa)));
        c.eq_idx(lhs, rhs, &[hh, aa]);
    }
    let mut c = report.check("P-4");
    for &(hh, aa) in &pairs {
        let lhs = lh(mp.phi_h(hh, aa));
        let rhs = ph(Some(h.inv(hh)), mp.phi_a(hh, aa));
        c.eq_idx(lhs, rhs, &[hh, aa]);
    }
    let mut c = report.check("P-5");
    for &(hh, aa) in &pairs {
        for b in (0..a.arrows()).filter(|&b| a.src(b) == h.tgt(hh)) {
            let lhs = ap(ap(Some(b), mp.phi_a(hh, aa)), pa(mp.phi_h(hh, aa), Some(a.inv(aa))));
            c.eq_idx(lhs, Some(b), &[hh, aa, b]);
        }
    }
    let mut c = report.check("P-6");
    for &(hh, aa) in &pairs {
        for &g in h.arrows_into(a.src(aa)) {
            let lhs = hp(ph(Some(h.inv(hh)), mp.phi_a(hh, aa)), hp(mp.phi_h(hh, aa), Some(g)));
            c.eq_idx(lhs, Some(g), &[hh, aa, g]);
        }
    }
    let mut c = report.check("P-7");
    for &(hh, aa) in &pairs {
        let lhs = pa(lh(mp.phi_h(hh, aa)), la(mp.phi_a(hh, aa)));
        c.eq_idx(lhs, Some(a.inv(aa)), &[hh, aa]);
    }
    let mut c = report.check("P-8");
    for &(hh, aa) in &pairs {
        let lhs = ph(lh(mp.phi_h(hh, aa)), la(mp.phi_a(hh, aa)));
        c.eq_idx(lhs, Some(h.inv(hh)), &[hh, aa]);
    }
    let mut c = report.check("P-9");
    for &(hh, aa) in &pairs {
        for &b in a.arrows_into(h.tgt(hh)) {
            let lhs = ap(Some(a.inv(aa)), mp.phi_a(h.inv(hh), b));
            let rhs = pa(lh(mp.phi_h(hh, aa)), ap(la(mp.phi_a(hh, aa)), Some(b)));
            c.eq_idx(lhs, rhs, &[hh, aa, b]);
        }
    }
    let mut c = report.check("P-10");
    for &(hh, aa) in &pairs {
        for g in (0..h.arrows()).filter(|&g| h.src(g) == a.src(aa)) {
            let lhs = hp(mp.phi_h(g, a.inv(aa)), Some(h.inv(hh)));
            let rhs = ph(hp(Some(g), lh(mp.phi_h(hh, aa))), la(mp.phi_a(hh, aa)));
            c.eq_idx(lhs, rhs, &[hh, aa, g]);
        }
    }
    report
}

/// `A ⋈ H` together with its `(a, h)` enumeration.
#[derive(Debug, Clone)]
pub struct DoubleCrossProduct {
    mp: MatchedPair,
    qgpd: Arc<Quasigroupoid>,
    pairs: Vec<(usize, usize)>,
    index: Vec<Option<usize>>,
}

/// Enumerates `{(a,h) : s_A(a) = t_H(h)}` lexicographically.
pub fn dcp_pairs(a: &Quasigroupoid, h: &Quasigroupoid) -> Vec<(usize, usize)> {
    (0..a.arrows())
        .flat_map(|aa| h.arrows_into(a.src(aa)).iter().map(move |&hh| (aa, hh)))
        .collect()
}

pub fn double_cross_product(mp: &MatchedPair) -> Result<DoubleCrossProduct> {
    mp.ensure_valid()?;
    let (a, h) = (&**mp.a(), &**mp.h());
    let pairs = dcp_pairs(a, h);
    let mut index = vec![None; a.arrows() * h.arrows()];
    for (i, &(aa, hh)) in pairs.iter().enumerate() {
        index[aa * h.arrows() + hh] = Some(i);
    }
    let look = |aa: Option<usize>, hh: Option<usize>| -> Result<usize> {
        aa.zip(hh)
            .and_then(|(aa, hh)| index[aa * h.arrows() + hh])
            .ok_or_else(|| Error::InternalInconsistency("double cross product leaves its carrier".into()))
    };
    let mut product = Vec::new();
    for (i, &(aa, g)) in pairs.iter().enumerate() {
        for (j, &(b, hh)) in pairs.iter().enumerate() {
            if h.src(g) != a.tgt(b) {
                continue;
            }
            let left = mp.phi_a(g, b).and_then(|x| a.prod(aa, x));
            let right = mp.phi_h(g, b).and_then(|y| h.prod(y, hh));
            product.push((i, j, look(left, right)?));
        }
    }
    let mut inverse = Vec::with_capacity(pairs.len());
    for &(aa, hh) in &pairs {
        let (la, lh) = (a.inv(aa), h.inv(hh));
        inverse.push(look(mp.phi_a(lh, la), mp.phi_h(lh, la))?);
    }
    let identity = (0..a.objects())
        .map(|x| look(Some(a.id(x)), Some(h.id(x))))
        .collect::<Result<_>>()?;
    let qgpd = Quasigroupoid::new(RawQuasigroupoid {
        objects: a.objects(),
        source: pairs.iter().map(|&(_, hh)| h.src(hh)).collect(),
        target: pairs.iter().map(|&(aa, _)| a.tgt(aa)).collect(),
        identity,
        inverse,
        product,
    })?;
    Ok(DoubleCrossProduct {
        mp: mp.clone(),
        qgpd: Arc::new(qgpd),
        pairs,
        index,
    })
}

impl DoubleCrossProduct {
    pub fn quasigroupoid(&self) -> &Arc<Quasigroupoid> {
        &self.qgpd
    }

    pub fn matched_pair(&self) -> &MatchedPair {
        &self.mp
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn pair_of(&self, arrow: usize) -> (usize, usize) {
        self.pairs[arrow]
    }

    pub fn arrow_of(&self, a: usize, h: usize) -> Option<usize> {
        self.index[a * self.mp.h().arrows() + h]
    }

    /// `i^A`: `a ↦ (a, id_H(s_A a))`.
    pub fn inclusion_a(&self) -> QgpdMorphism {
        let (a, h) = (self.mp.a(), self.mp.h());
        let arrows = (0..a.arrows())
            .map(|x| self.arrow_of(x, h.id(a.src(x))).expect("composable"))
            .collect();
        QgpdMorphism::new(a.clone(), self.qgpd.clone(), (0..a.objects()).collect(), arrows).expect("ranges")
    }

    /// `i^H`: `g ↦ (id_A(t_H g), g)`.
    pub fn inclusion_h(&self) -> QgpdMorphism {
        let (a, h) = (self.mp.a(), self.mp.h());
        let arrows = (0..h.arrows())
            .map(|g| self.arrow_of(a.id(h.tgt(g)), g).expect("composable"))
            .collect();
        QgpdMorphism::new(h.clone(), self.qgpd.clone(), (0..h.objects()).collect(), arrows).expect("ranges")
    }
}

/// `θ(a,h) = i^A(a) · i^H(h)` on every arrow, with a check that it is the identity.
pub fn theta(d: &DoubleCrossProduct) -> (Vec<Option<usize>>, StructureReport) {
    let (ia, ih) = (d.inclusion_a(), d.inclusion_h());
    let map: Vec<Option<usize>> = d
        .pairs
        .iter()
        .map(|&(a, h)| d.qgpd.prod(ia.arrow_map()[a], ih.arrow_map()[h]))
        .collect();
    let mut report = StructureReport::new("theta");
    let mut c = report.check("theta-identity");
    for (i, &v) in map.iter().enumerate() {
        c.eq_idx(v, Some(i), &[i]);
    }
    (map, report)
}

/// The six mixed-associativity laws for subquasigroupoids `A`, `H` of `B`.
pub(crate) struct MixedSetting<'a> {
    pub b: &'a Quasigroupoid,
    pub a: &'a Quasigroupoid,
    pub h: &'a Quasigroupoid,
    pub ia: &'a [usize],
    pub ih: &'a [usize],
}

/// Both sides must be defined and equal; configurations where neither side
/// is defined are skipped.
fn assoc_case(c: &mut Recorder<'_>, lhs: Option<usize>, rhs: Option<usize>, witness: &[usize]) {
    if lhs.is_none() && rhs.is_none() {
        return;
    }
    c.eq_idx(lhs, rhs, witness);
}

impl MixedSetting<'_> {
    /// Tags in the order HAA, HHA, HAH, AHA, AAH, AHH; `printed` receives the
    /// AHH reading with `g` and `h` swapped on the right.
    pub fn check(&self, report: &mut StructureReport, tags: [&str; 6], printed: &str) {
        let (b, a, h) = (self.b, self.a, self.h);
        let m = opt2(|x, y| b.prod(x, y));
        let ia = |x: usize| Some(self.ia[x]);
        let ih = |x: usize| Some(self.ih[x]);
        let ha: Vec<(usize, usize)> = mixed_pairs(h, a).collect();

        let mut c = report.check(tags[0]);
        for &(g, x) in &ha {
            for &y in a.arrows_into(a.src(x)) {
                assoc_case(&mut c, m(ih(g), m(ia(x), ia(y))), m(m(ih(g), ia(x)), ia(y)), &[g, x, y]);
            }
        }
        let mut c = report.check(tags[1]);
        for (g, hh) in h.composable_pairs() {
            for &x in a.arrows_into(h.src(hh)) {
                assoc_case(&mut c, m(ih(g), m(ih(hh), ia(x))), m(m(ih(g), ih(hh)), ia(x)), &[g, hh, x]);
            }
        }
        let mut c = report.check(tags[2]);
        for &(hh, x) in &ha {
            for &f in h.arrows_into(a.src(x)) {
                assoc_case(&mut c, m(ih(hh), m(ia(x), ih(f))), m(m(ih(hh), ia(x)), ih(f)), &[hh, x, f]);
            }
        }
        let mut c = report.check(tags[3]);
        for cc in 0..a.arrows() {
            for &hh in h.arrows_into(a.src(cc)) {
                for &x in a.arrows_into(h.src(hh)) {
                    assoc_case(&mut c, m(ia(cc), m(ih(hh), ia(x))), m(m(ia(cc), ih(hh)), ia(x)), &[cc, hh, x]);
                }
            }
        }
        let mut c = report.check(tags[4]);
        for (x, y) in a.composable_pairs() {
            for &g in h.arrows_into(a.src(y)) {
                assoc_case(&mut c, m(ia(x), m(ia(y), ih(g))), m(m(ia(x), ia(y)), ih(g)), &[x, y, g]);
            }
        }
        let mut c = report.check(tags[5]);
        for x in 0..a.arrows() {
            for &g in h.arrows_into(a.src(x)) {
                for &hh in h.arrows_into(h.src(g)) {
                    assoc_case(&mut c, m(ia(x), m(ih(g), ih(hh))), m(m(ia(x), ih(g)), ih(hh)), &[x, g, hh]);
                }
            }
        }
        let mut c = report.record(printed);
        for x in 0..a.arrows() {
            for &g in h.arrows_into(a.src(x)) {
                for &hh in h.arrows_into(h.src(g)) {
                    assoc_case(&mut c, m(ia(x), m(ih(g), ih(hh))), m(m(ia(x), ih(hh)), ih(g)), &[x, g, hh]);
                }
            }
        }
    }
}

/// Mixed associativity inside `A ⋈ H`. `AHH` is the reading with matching
/// order; `AHH-printed` (swapped order on the right) is recorded only.
pub fn mixed_associativity_suite(d: &DoubleCrossProduct) -> StructureReport {
    let (ia, ih) = (d.inclusion_a(), d.inclusion_h());
    let setting = MixedSetting {
        b: &d.qgpd,
        a: d.mp.a(),
        h: d.mp.h(),
        ia: ia.arrow_map(),
        ih: ih.arrow_map(),
    };
    let mut report = StructureReport::new("mixed associativity");
    setting.check(&mut report, ["HAA", "HHA", "HAH", "AHA", "AAH", "AHH"], "AHH-printed");
    report
}

/// `(A, X^d)` with `φ_A(x,a) = a` and `φ_H(x,a) = s_A(a)`.
pub fn mp_discrete_right(a: Arc<Quasigroupoid>) -> Result<MatchedPair> {
    let h = Arc::new(discrete_groupoid(a.objects())?);
    let src: Vec<usize> = (0..a.arrows()).map(|x| a.src(x)).collect();
    MatchedPair::from_fns(a, h, |_, x| x, |_, x| src[x])
}

/// `(X^d, B)` where `B` is the action quasigroupoid of `psi`:
/// `φ_A((a,x), x) = psi(a,x)` and `φ_B((a,x), x) = (a,x)`.
pub fn mp_action_left(q: &FiniteQuasigroup, act: &SetAction) -> Result<MatchedPair> {
    let b = Arc::new(from_quasigroup_action(q, act)?);
    let x = Arc::new(discrete_groupoid(act.points())?);
    let tgt: Vec<usize> = (0..b.arrows()).map(|i| b.tgt(i)).collect();
    MatchedPair::from_fns(x, b, |h, _| tgt[h], |h, _| h)
}

/// `φ_A(h,a) = a`, `φ_H(h,a) = h`; valid when both structures have one object.
pub fn mp_trivial(a: Arc<Quasigroupoid>, h: Arc<Quasigroupoid>) -> Result<MatchedPair> {
    MatchedPair::from_fns(a, h, |_, x| x, |g, _| g)
}

/// A morphism `(Γ, Ω)` of matched pairs.
#[derive(Debug, Clone)]
pub struct MpMorphism {
    source: MatchedPair,
    target: MatchedPair,
    gamma: QgpdMorphism,
    omega: QgpdMorphism,
}

impl MpMorphism {
    pub fn new(source: MatchedPair, target: MatchedPair, gamma: QgpdMorphism, omega: QgpdMorphism) -> Result<Self> {
        let fits = gamma.source() == source.a()
            && gamma.target() == target.a()
            && omega.source() == source.h()
            && omega.target() == target.h();
        if !fits {
            return Err(Error::BaseMismatch(
                "component morphisms do not connect the matched pairs".into(),
            ));
        }
        Ok(MpMorphism {
            source,
            target,
            gamma,
            omega,
        })
    }

    pub fn identity(mp: &MatchedPair) -> Self {
        MpMorphism {
            source: mp.clone(),
            target: mp.clone(),
            gamma: QgpdMorphism::identity(mp.a()),
            omega: QgpdMorphism::identity(mp.h()),
        }
    }

    pub fn gamma(&self) -> &QgpdMorphism {
        &self.gamma
    }

    pub fn omega(&self) -> &QgpdMorphism {
        &self.omega
    }

    /// The two intertwining laws on every composable `(h, a)`.
    pub fn check(&self) -> StructureReport {
        let (s, t) = (&self.source, &self.target);
        let g1 = self.gamma.arrow_map();
        let o1 = self.omega.arrow_map();
        let mut report = StructureReport::new("matched pair morphism");
        let pairs: Vec<(usize, usize)> = mixed_pairs(s.h(), s.a()).collect();
        let mut c = report.check("mp-left");
        for &(h, a) in &pairs {
            c.eq_idx(s.phi_a(h, a).map(|v| g1[v]), t.phi_a(o1[h], g1[a]), &[h, a]);
        }
        let mut c = report.check("mp-right");
        for &(h, a) in &pairs {
            c.eq_idx(s.phi_h(h, a).map(|v| o1[v]), t.phi_h(o1[h], g1[a]), &[h, a]);
        }
        report
    }

    /// `next ∘ self`.
    pub fn compose(&self, next: &MpMorphism) -> Result<MpMorphism> {
        Ok(MpMorphism {
            source: self.source.clone(),
            target: next.target.clone(),
            gamma: self.gamma.compose(&next.gamma)?,
            omega: self.omega.compose(&next.omega)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quasigroup::stock;
    use crate::quasigroupoid::{coarse_groupoid, pair_quasigroupoid, quasigroup_as_quasigroupoid};

    fn z3_translation() -> MatchedPair {
        let z3 = stock::cyclic(3);
        let act = SetAction::from_fn(&z3, 3, |a, x| (a + x) % 3).unwrap();
        mp_action_left(&z3, &act).unwrap()
    }

    #[test]
    fn canonical_families_are_valid() {
        let c = Arc::new(coarse_groupoid(2).unwrap());
        assert!(mp_discrete_right(c).unwrap().validate().is_pass());
        let p = Arc::new(pair_quasigroupoid(&stock::cyclic(2), 2).unwrap());
        let mp = mp_discrete_right(p).unwrap();
        assert!(check_matched_pair(&mp).unwrap().is_pass());
        assert!(check_matched_pair(&z3_translation()).unwrap().is_pass());
    }

    #[test]
    fn trivial_left_action_of_coarse_fails_c1() {
        let c = Arc::new(coarse_groupoid(2).unwrap());
        let l = LeftAction::from_fn(c.clone(), c.clone(), |_, a| a).unwrap();
        let r = check_left_action(&l);
        // h = (0,1) acting on a = (1,0): t(a) = 1 but t(h) = 0.
        assert!(r.violations_of("c1").iter().any(|v| v.witness == vec![1, 2]));
    }

    #[test]
    fn domain_errors() {
        let c = Arc::new(coarse_groupoid(2).unwrap());
        let d = Arc::new(discrete_groupoid(2).unwrap());
        // (h=0, a=(1,0)=2) is not composable: s_H(0) = 0, t_A(2) = 1.
        let err = LeftAction::from_entries(d.clone(), c.clone(), &[(0, 2, 2)]).unwrap_err();
        assert!(matches!(err, Error::DomainMismatch { h: 0, a: 2, .. }));
        let err = LeftAction::from_entries(d.clone(), c.clone(), &[(0, 0, 0)]).unwrap_err();
        assert!(matches!(err, Error::DomainMismatch { .. }));
        let three = Arc::new(discrete_groupoid(3).unwrap());
        assert!(matches!(LeftAction::from_fn(three, c, |_, a| a), Err(Error::BaseMismatch(_))));
    }

    #[test]
    fn ex_mp1_products() {
        let mp = z3_translation();
        let d = double_cross_product(&mp).unwrap();
        let b = mp.h();
        // Arrow (y, (a,x)) with y = a + x; B arrow (a,x) = 3a + x.
        for a in 0..3 {
            for x in 0..3 {
                let y = (a + x) % 3;
                let i = d.arrow_of(y, 3 * a + x).unwrap();
                let inv = d.pair_of(d.quasigroupoid().inv(i));
                let ainv = (3 - a) % 3;
                assert_eq!(inv, ((ainv + y) % 3, 3 * ainv + y));
                for bb in 0..3 {
                    for t in 0..3 {
                        if (bb + t) % 3 != x {
                            continue;
                        }
                        let j = d.arrow_of(x, 3 * bb + t).unwrap();
                        let p = d.quasigroupoid().prod(i, j).unwrap();
                        assert_eq!(d.pair_of(p), (y, 3 * ((a + bb) % 3) + t));
                    }
                }
            }
        }
        assert_eq!(d.quasigroupoid().arrows(), b.arrows());
    }

    #[test]
    fn discrete_right_dcp() {
        let a = Arc::new(quasigroup_as_quasigroupoid(&stock::m_s3_2()));
        let mp = mp_discrete_right(a.clone()).unwrap();
        let d = double_cross_product(&mp).unwrap();
        assert_eq!(d.quasigroupoid().arrows(), a.arrows());
        for (i, j) in d.quasigroupoid().composable_pairs() {
            let (x, _) = d.pair_of(i);
            let (y, z) = d.pair_of(j);
            assert_eq!(d.pair_of(d.quasigroupoid().prod(i, j).unwrap()), (a.prod(x, y).unwrap(), z));
        }
        assert!(theta(&d).1.is_pass());
        let r = mixed_associativity_suite(&d);
        assert!(r.is_pass(), "{r}");
        assert!(matched_pair_identity_suite(&mp).is_pass());
    }

    #[test]
    fn invalid_pairs_are_rejected() {
        let c = Arc::new(coarse_groupoid(2).unwrap());
        // Both actions valid, (e1) fails.
        let cc = c.clone();
        let prod = move |h: usize, a: usize| cc.prod(h, a).unwrap();
        let mp = MatchedPair::from_fns(c.clone(), c.clone(), prod.clone(), prod).unwrap();
        let r = check_matched_pair(&mp).unwrap();
        assert!(!r.violations_of("e1").is_empty());
        assert!(matches!(double_cross_product(&mp), Err(Error::InvalidMatchedPair(_))));
        let l = LeftAction::from_fn(c.clone(), c.clone(), |_, a| a).unwrap();
        let rr = RightAction::from_fn(c.clone(), c.clone(), |h, _| h).unwrap();
        let bad = MatchedPair::new(l, rr).unwrap();
        assert!(matches!(check_matched_pair(&bad), Err(Error::ActionInvalid(_))));
    }

    #[test]
    fn mp_morphisms() {
        let c = Arc::new(coarse_groupoid(2).unwrap());
        let mp = mp_discrete_right(c.clone()).unwrap();
        let id = MpMorphism::identity(&mp);
        assert!(id.check().is_pass());
        assert!(id.compose(&id).unwrap().check().is_pass());
        let swap = QgpdMorphism::new(mp.h().clone(), mp.h().clone(), vec![1, 0], vec![1, 0]).unwrap();
        assert!(swap.check().is_pass());
        let m = MpMorphism::new(mp.clone(), mp.clone(), QgpdMorphism::identity(&c), swap).unwrap();
        let r = m.check();
        assert!(!r.is_pass());
        assert!(r.violations_of("mp-left").iter().any(|v| v.witness == vec![0, 0]));
        let other = mp_discrete_right(Arc::new(discrete_groupoid(2).unwrap())).unwrap();
        assert!(matches!(
            MpMorphism::new(mp.clone(), other, QgpdMorphism::identity(&c), QgpdMorphism::identity(mp.h())),
            Err(Error::BaseMismatch(_))
        ));
    }
}
