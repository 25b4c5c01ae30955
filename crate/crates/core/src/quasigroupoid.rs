//! Finite quasigroupoids, their builders and morphisms.
//!
//! Arrows and objects are dense indices. A pair `(a,b)` is composable when
//! `src(a) == tgt(b)`; the product is only defined there.

use std::sync::Arc;

use crate::quasigroup::FiniteQuasigroup;
use crate::report::{show_idx, StructureReport};
use crate::{Error, Result};

/// Unvalidated quasigroupoid data, as read from a document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawQuasigroupoid {
    pub objects: usize,
    pub source: Vec<usize>,
    pub target: Vec<usize>,
    pub identity: Vec<usize>,
    pub inverse: Vec<usize>,
    /// Entries `(a, b, a•b)`.
    pub product: Vec<(usize, usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quasigroupoid {
    objects: usize,
    source: Vec<usize>,
    target: Vec<usize>,
    identity: Vec<usize>,
    inverse: Vec<usize>,
    product: Vec<Option<usize>>,
    by_target: Vec<Vec<usize>>,
}

/// Dense product table indexed `a*k + b`, after domain validation.
fn product_table(raw: &RawQuasigroupoid) -> Result<Vec<Option<usize>>> {
    let m = raw.objects;
    if m == 0 {
        return Err(Error::EmptyBase);
    }
    let k = raw.source.len();
    for (what, len) in [("target", raw.target.len()), ("inverse", raw.inverse.len())] {
        if len != k {
            return Err(Error::range(format!("{what} length"), len, k));
        }
    }
    if raw.identity.len() != m {
        return Err(Error::range("identity length", raw.identity.len(), m));
    }
    for (what, v, size) in [
        ("source", &raw.source, m),
        ("target", &raw.target, m),
        ("identity", &raw.identity, k),
        ("inverse", &raw.inverse, k),
    ] {
        if let Some(&bad) = v.iter().find(|&&x| x >= size) {
            return Err(Error::range(what, bad, size));
        }
    }
    let mut table = vec![None; k * k];
    for &(a, b, c) in &raw.product {
        for x in [a, b, c] {
            if x >= k {
                return Err(Error::range("product entry", x, k));
            }
        }
        if raw.source[a] != raw.target[b] {
            return Err(Error::ProductDomainMismatch {
                a,
                b,
                reason: "defined on a non-composable pair".into(),
            });
        }
        if table[a * k + b].replace(c).is_some() {
            return Err(Error::ProductDomainMismatch {
                a,
                b,
                reason: "defined twice".into(),
            });
        }
    }
    for a in 0..k {
        for b in 0..k {
            if raw.source[a] == raw.target[b] && table[a * k + b].is_none() {
                return Err(Error::ProductDomainMismatch {
                    a,
                    b,
                    reason: "missing on a composable pair".into(),
                });
            }
        }
    }
    Ok(table)
}

/// Checks (a1), (a2-1), (a2-2) and (a2-3).
pub fn check_quasigroupoid(raw: &RawQuasigroupoid) -> Result<StructureReport> {
    let table = product_table(raw)?;
    let k = raw.source.len();
    let (src, tgt, id, inv) = (&raw.source, &raw.target, &raw.identity, &raw.inverse);
    let prod = |a: usize, b: usize| table[a * k + b];
    let prod_opt = |a: Option<usize>, b: Option<usize>| prod(a?, b?);
    let mut report = StructureReport::new("quasigroupoid");

    let mut c = report.check("a1");
    for (x, &i) in id.iter().enumerate() {
        c.case(src[i] == x && tgt[i] == x, &[x], || {
            format!("s(id)={} t(id)={}", src[i], tgt[i])
        });
    }

    let mut c = report.check("a2-1");
    for a in 0..k {
        let left = prod(id[tgt[a]], a);
        let right = prod(a, id[src[a]]);
        c.case(left == Some(a) && right == Some(a), &[a], || {
            format!("id(t a)*a={} a*id(s a)={}", show_idx(left), show_idx(right))
        });
    }

    let mut c = report.check("a2-2");
    for a in 0..k {
        for b in (0..k).filter(|&b| src[a] == tgt[b]) {
            let ab = prod(a, b).unwrap();
            c.case(src[ab] == src[b] && tgt[ab] == tgt[a], &[a, b], || {
                format!("s(ab)={} s(b)={} t(ab)={} t(a)={}", src[ab], src[b], tgt[ab], tgt[a])
            });
        }
    }

    let mut c = report.check("a2-3");
    for a in 0..k {
        for b in (0..k).filter(|&b| src[a] == tgt[b]) {
            let ab = prod(a, b);
            let left = prod_opt(Some(inv[a]), ab);
            let right = prod_opt(ab, Some(inv[b]));
            c.case(left == Some(b) && right == Some(a), &[a, b], || {
                format!("inv(a)*(ab)={} (ab)*inv(b)={}", show_idx(left), show_idx(right))
            });
        }
    }
    Ok(report)
}

impl Quasigroupoid {
    /// Validates raw data; fails with the report if any axiom is violated.
    pub fn new(raw: RawQuasigroupoid) -> Result<Self> {
        let report = check_quasigroupoid(&raw)?;
        if !report.is_pass() {
            return Err(Error::Invalid(report));
        }
        let product = product_table(&raw)?;
        let mut by_target = vec![Vec::new(); raw.objects];
        for (a, &t) in raw.target.iter().enumerate() {
            by_target[t].push(a);
        }
        Ok(Quasigroupoid {
            objects: raw.objects,
            source: raw.source,
            target: raw.target,
            identity: raw.identity,
            inverse: raw.inverse,
            product,
            by_target,
        })
    }

    /// Builds from closures over arrow indices; `prod` is only called on
    /// composable pairs.
    pub fn from_fns(
        objects: usize,
        arrows: usize,
        src: impl Fn(usize) -> usize,
        tgt: impl Fn(usize) -> usize,
        id: impl Fn(usize) -> usize,
        inv: impl Fn(usize) -> usize,
        prod: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        let source: Vec<usize> = (0..arrows).map(&src).collect();
        let target: Vec<usize> = (0..arrows).map(&tgt).collect();
        let mut product = Vec::new();
        for a in 0..arrows {
            for b in 0..arrows {
                if source[a] == target[b] {
                    product.push((a, b, prod(a, b)));
                }
            }
        }
        Self::new(RawQuasigroupoid {
            objects,
            source,
            target,
            identity: (0..objects).map(id).collect(),
            inverse: (0..arrows).map(inv).collect(),
            product,
        })
    }

    pub fn objects(&self) -> usize {
        self.objects
    }

    pub fn arrows(&self) -> usize {
        self.source.len()
    }

    pub fn src(&self, a: usize) -> usize {
        self.source[a]
    }

    pub fn tgt(&self, a: usize) -> usize {
        self.target[a]
    }

    pub fn id(&self, x: usize) -> usize {
        self.identity[x]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn composable(&self, a: usize, b: usize) -> bool {
        self.source[a] == self.target[b]
    }

    /// `a•b`, or `None` when the pair is not composable.
    pub fn prod(&self, a: usize, b: usize) -> Option<usize> {
        self.product[a * self.arrows() + b]
    }

    /// Arrows with the given target, in increasing order.
    pub fn arrows_into(&self, x: usize) -> &[usize] {
        &self.by_target[x]
    }

    pub fn is_identity(&self, a: usize) -> bool {
        self.identity[self.source[a]] == a
    }

    /// All composable pairs in lexicographic order.
    pub fn composable_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.arrows()).flat_map(move |a| self.arrows_into(self.src(a)).iter().map(move |&b| (a, b)))
    }

    pub fn to_raw(&self) -> RawQuasigroupoid {
        RawQuasigroupoid {
            objects: self.objects,
            source: self.source.clone(),
            target: self.target.clone(),
            identity: self.identity.clone(),
            inverse: self.inverse.clone(),
            product: self
                .composable_pairs()
                .map(|(a, b)| (a, b, self.prod(a, b).unwrap()))
                .collect(),
        }
    }

    /// Smallest composable triple with `(ab)c != a(bc)`.
    pub fn associativity_witness(&self) -> Option<(usize, usize, usize)> {
        for (a, b) in self.composable_pairs() {
            for &c in self.arrows_into(self.src(b)) {
                let l = self.prod(self.prod(a, b).unwrap(), c);
                let r = self.prod(a, self.prod(b, c).unwrap());
                if l != r {
                    return Some((a, b, c));
                }
            }
        }
        None
    }

    pub fn is_groupoid(&self) -> bool {
        self.associativity_witness().is_none()
    }

    /// The sub-structure on a subset of arrows containing every identity and
    /// closed under products and inverses. Arrows keep their relative order.
    pub fn restrict(&self, arrows: &[usize]) -> Result<Quasigroupoid> {
        let mut pos = vec![None; self.arrows()];
        for (i, &a) in arrows.iter().enumerate() {
            if a >= self.arrows() {
                return Err(Error::range("arrow subset", a, self.arrows()));
            }
            pos[a] = Some(i);
        }
        let look = |a: usize| {
            pos[a].ok_or_else(|| Error::InternalInconsistency(format!("subset not closed at arrow {a}")))
        };
        let identity = (0..self.objects).map(|x| look(self.id(x))).collect::<Result<_>>()?;
        let inverse = arrows.iter().map(|&a| look(self.inv(a))).collect::<Result<_>>()?;
        let mut product = Vec::new();
        for (i, &a) in arrows.iter().enumerate() {
            for (j, &b) in arrows.iter().enumerate() {
                if let Some(c) = self.prod(a, b) {
                    product.push((i, j, look(c)?));
                }
            }
        }
        Quasigroupoid::new(RawQuasigroupoid {
            objects: self.objects,
            source: arrows.iter().map(|&a| self.src(a)).collect(),
            target: arrows.iter().map(|&a| self.tgt(a)).collect(),
            identity,
            inverse,
            product,
        })
    }
}

/// Checks (E-1) through (E-6) on a validated structure.
pub fn derived_identity_suite(q: &Quasigroupoid) -> StructureReport {
    let mut report = StructureReport::new("quasigroupoid derived identities");
    let k = q.arrows();
    let mut c = report.check("E-1");
    for a in 0..k {
        c.eq(q.src(q.inv(a)), q.tgt(a), &[a]);
    }
    let mut c = report.check("E-2");
    for a in 0..k {
        c.eq(q.tgt(q.inv(a)), q.src(a), &[a]);
    }
    let mut c = report.check("E-3");
    for a in 0..k {
        c.eq_idx(q.prod(q.inv(a), a), Some(q.id(q.src(a))), &[a]);
    }
    let mut c = report.check("E-4");
    for a in 0..k {
        c.eq_idx(q.prod(a, q.inv(a)), Some(q.id(q.tgt(a))), &[a]);
    }
    let mut c = report.check("E-5");
    for a in 0..k {
        c.eq(q.inv(q.inv(a)), a, &[a]);
    }
    let mut c = report.check("E-6");
    for (a, b) in q.composable_pairs() {
        let l = q.prod(a, b).map(|ab| q.inv(ab));
        c.eq_idx(l, q.prod(q.inv(b), q.inv(a)), &[a, b]);
    }
    report
}

/// Records associativity on every composable triple.
pub fn groupoid_associativity(q: &Quasigroupoid) -> StructureReport {
    let mut report = StructureReport::new("groupoid associativity");
    let mut c = report.check("assoc");
    for (a, b) in q.composable_pairs() {
        for &d in q.arrows_into(q.src(b)) {
            let l = q.prod(q.prod(a, b).unwrap(), d);
            let r = q.prod(a, q.prod(b, d).unwrap());
            c.eq_idx(l, r, &[a, b, d]);
        }
    }
    report
}

/// One object, arrows the elements of `q`.
pub fn quasigroup_as_quasigroupoid(q: &FiniteQuasigroup) -> Quasigroupoid {
    Quasigroupoid::from_fns(
        1,
        q.order(),
        |_| 0,
        |_| 0,
        |_| q.identity(),
        |a| q.inv(a),
        |a, b| q.mul(a, b),
    )
    .expect("a quasigroup is a one-object quasigroupoid")
}

/// An action `psi(a, x)` of a quasigroup on `0..points`, stored as `map[a*points + x]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetAction {
    points: usize,
    map: Vec<usize>,
}

impl SetAction {
    pub fn from_fn(q: &FiniteQuasigroup, points: usize, psi: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let rows = (0..q.order())
            .map(|a| (0..points).map(|x| psi(a, x)).collect())
            .collect();
        Self::from_rows(points, rows)
    }

    /// `rows[a][x] = psi(a, x)`.
    pub fn from_rows(points: usize, rows: Vec<Vec<usize>>) -> Result<Self> {
        if points == 0 {
            return Err(Error::EmptyBase);
        }
        let mut map = Vec::new();
        for (a, row) in rows.into_iter().enumerate() {
            if row.len() != points {
                return Err(Error::range(format!("action row {a} length"), row.len(), points));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= points) {
                return Err(Error::range(format!("action row {a}"), bad, points));
            }
            map.extend(row);
        }
        Ok(SetAction { points, map })
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn elements(&self) -> usize {
        self.map.len() / self.points
    }

    pub fn apply(&self, a: usize, x: usize) -> usize {
        self.map[a * self.points + x]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.map.chunks(self.points).map(|r| r.to_vec()).collect()
    }
}

/// Checks `psi(e,x) = x` and `psi(ab,x) = psi(a, psi(b,x))`.
pub fn check_action_on_set(q: &FiniteQuasigroup, act: &SetAction) -> Result<StructureReport> {
    if act.elements() != q.order() {
        return Err(Error::range("action rows", act.elements(), q.order()));
    }
    let mut report = StructureReport::new("set action");
    let mut c = report.check("action-identity");
    for x in 0..act.points() {
        c.eq(act.apply(q.identity(), x), x, &[x]);
    }
    let mut c = report.check("action-compat");
    for a in 0..q.order() {
        for b in 0..q.order() {
            for x in 0..act.points() {
                c.eq(act.apply(q.mul(a, b), x), act.apply(a, act.apply(b, x)), &[a, b, x]);
            }
        }
    }
    Ok(report)
}

/// The action quasigroupoid: arrows `(a,x)` at index `a*points + x`.
pub fn from_quasigroup_action(q: &FiniteQuasigroup, act: &SetAction) -> Result<Quasigroupoid> {
    let report = check_action_on_set(q, act)?;
    if !report.is_pass() {
        return Err(Error::InvalidAction(report));
    }
    let p = act.points();
    Quasigroupoid::from_fns(
        p,
        q.order() * p,
        |i| i % p,
        |i| act.apply(i / p, i % p),
        |x| q.identity() * p + x,
        |i| q.inv(i / p) * p + act.apply(i / p, i % p),
        |i, j| q.mul(i / p, j / p) * p + j % p,
    )
}

/// The pair quasigroupoid: arrows `(a,x,y)` at index `a*m*m + x*m + y`,
/// object `x` standing for `(e,x,x)`.
pub fn pair_quasigroupoid(q: &FiniteQuasigroup, points: usize) -> Result<Quasigroupoid> {
    if points == 0 {
        return Err(Error::EmptyBase);
    }
    let m = points;
    let split = |i: usize| (i / (m * m), (i / m) % m, i % m);
    Quasigroupoid::from_fns(
        m,
        q.order() * m * m,
        |i| split(i).2,
        |i| split(i).1,
        |x| q.identity() * m * m + x * m + x,
        |i| {
            let (a, x, y) = split(i);
            q.inv(a) * m * m + y * m + x
        },
        |i, j| {
            let (a, x, _) = split(i);
            let (b, _, r) = split(j);
            q.mul(a, b) * m * m + x * m + r
        },
    )
}

/// Arrows of the pullback along `pi`, as `(p, arrow, q)` in lexicographic order.
pub fn pullback_arrows(a: &Quasigroupoid, pi: &[usize]) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for p in 0..pi.len() {
        for arrow in 0..a.arrows() {
            if pi[p] != a.tgt(arrow) {
                continue;
            }
            for (q, &pq) in pi.iter().enumerate() {
                if pq == a.src(arrow) {
                    out.push((p, arrow, q));
                }
            }
        }
    }
    out
}

/// Pullback of `a` along a surjection `pi` from `0..pi.len()` onto its objects.
pub fn pullback_quasigroupoid(a: &Quasigroupoid, pi: &[usize]) -> Result<Quasigroupoid> {
    if pi.is_empty() {
        return Err(Error::EmptyBase);
    }
    if let Some(&bad) = pi.iter().find(|&&x| x >= a.objects()) {
        return Err(Error::range("projection", bad, a.objects()));
    }
    if let Some(x) = (0..a.objects()).find(|x| !pi.contains(x)) {
        return Err(Error::NotSurjective(x));
    }
    let arrows = pullback_arrows(a, pi);
    let index = |t: (usize, usize, usize)| arrows.binary_search(&t).expect("pullback arrow");
    Quasigroupoid::from_fns(
        pi.len(),
        arrows.len(),
        |i| arrows[i].2,
        |i| arrows[i].0,
        |p| index((p, a.id(pi[p]), p)),
        |i| {
            let (p, x, q) = arrows[i];
            index((q, a.inv(x), p))
        },
        |i, j| {
            let (p, x, _) = arrows[i];
            let (_, y, n) = arrows[j];
            index((p, a.prod(x, y).expect("fibers match"), n))
        },
    )
}

/// Arrows `(x,y)` at index `x*m + y`, with source `y` and target `x`.
pub fn coarse_groupoid(points: usize) -> Result<Quasigroupoid> {
    if points == 0 {
        return Err(Error::EmptyBase);
    }
    let m = points;
    Quasigroupoid::from_fns(
        m,
        m * m,
        |i| i % m,
        |i| i / m,
        |x| x * m + x,
        |i| (i % m) * m + i / m,
        |i, j| (i / m) * m + j % m,
    )
}

/// Arrows are the objects; `x•x = x`.
pub fn discrete_groupoid(points: usize) -> Result<Quasigroupoid> {
    if points == 0 {
        return Err(Error::EmptyBase);
    }
    Quasigroupoid::from_fns(points, points, |x| x, |x| x, |x| x, |x| x, |x, _| x)
}

/// A pair of maps between quasigroupoids.
#[derive(Debug, Clone)]
pub struct QgpdMorphism {
    source: Arc<Quasigroupoid>,
    target: Arc<Quasigroupoid>,
    objects: Vec<usize>,
    arrows: Vec<usize>,
}

impl QgpdMorphism {
    /// Checks only shapes and ranges; see [`QgpdMorphism::check`].
    pub fn new(
        source: Arc<Quasigroupoid>,
        target: Arc<Quasigroupoid>,
        objects: Vec<usize>,
        arrows: Vec<usize>,
    ) -> Result<Self> {
        if objects.len() != source.objects() {
            return Err(Error::range("object map length", objects.len(), source.objects()));
        }
        if arrows.len() != source.arrows() {
            return Err(Error::range("arrow map length", arrows.len(), source.arrows()));
        }
        if let Some(&bad) = objects.iter().find(|&&x| x >= target.objects()) {
            return Err(Error::range("object map", bad, target.objects()));
        }
        if let Some(&bad) = arrows.iter().find(|&&x| x >= target.arrows()) {
            return Err(Error::range("arrow map", bad, target.arrows()));
        }
        Ok(QgpdMorphism {
            source,
            target,
            objects,
            arrows,
        })
    }

    pub fn identity(q: &Arc<Quasigroupoid>) -> Self {
        QgpdMorphism {
            source: q.clone(),
            target: q.clone(),
            objects: (0..q.objects()).collect(),
            arrows: (0..q.arrows()).collect(),
        }
    }

    pub fn source(&self) -> &Arc<Quasigroupoid> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Quasigroupoid> {
        &self.target
    }

    pub fn object_map(&self) -> &[usize] {
        &self.objects
    }

    pub fn arrow_map(&self) -> &[usize] {
        &self.arrows
    }

    /// Checks (b1) through (b4).
    pub fn check(&self) -> StructureReport {
        let (d, t) = (&*self.source, &*self.target);
        let (g0, g1) = (&self.objects, &self.arrows);
        let mut report = StructureReport::new("quasigroupoid morphism");
        let mut c = report.check("b1");
        for a in 0..d.arrows() {
            c.eq(g0[d.src(a)], t.src(g1[a]), &[a]);
        }
        let mut c = report.check("b2");
        for a in 0..d.arrows() {
            c.eq(g0[d.tgt(a)], t.tgt(g1[a]), &[a]);
        }
        let mut c = report.check("b3");
        for x in 0..d.objects() {
            c.eq(g1[d.id(x)], t.id(g0[x]), &[x]);
        }
        let mut c = report.check("b4");
        for (a, b) in d.composable_pairs() {
            let l = d.prod(a, b).map(|ab| g1[ab]);
            c.eq_idx(l, t.prod(g1[a], g1[b]), &[a, b]);
        }
        report
    }

    /// `next ∘ self`.
    pub fn compose(&self, next: &QgpdMorphism) -> Result<QgpdMorphism> {
        if self.target != next.source {
            return Err(Error::CompositionMismatch(
                "target of the first map is not the source of the second".into(),
            ));
        }
        Ok(QgpdMorphism {
            source: self.source.clone(),
            target: next.target.clone(),
            objects: self.objects.iter().map(|&x| next.objects[x]).collect(),
            arrows: self.arrows.iter().map(|&a| next.arrows[a]).collect(),
        })
    }

    pub fn is_monomorphism(&self) -> bool {
        injective(&self.objects, self.target.objects()) && injective(&self.arrows, self.target.arrows())
    }

    pub fn is_epimorphism(&self) -> bool {
        surjective(&self.objects, self.target.objects()) && surjective(&self.arrows, self.target.arrows())
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_monomorphism() && self.is_epimorphism()
    }

    pub fn arrows_injective(&self) -> bool {
        injective(&self.arrows, self.target.arrows())
    }
}

pub(crate) fn injective(map: &[usize], size: usize) -> bool {
    let mut seen = vec![false; size];
    map.iter().all(|&x| !std::mem::replace(&mut seen[x], true))
}

pub(crate) fn surjective(map: &[usize], size: usize) -> bool {
    let mut seen = vec![false; size];
    for &x in map {
        seen[x] = true;
    }
    seen.into_iter().all(|s| s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quasigroup::stock;

    #[test]
    fn discrete_three() {
        let d = discrete_groupoid(3).unwrap();
        assert_eq!(d.arrows(), 3);
        assert!((0..3).all(|x| d.prod(x, x) == Some(x)));
        assert!(d.is_groupoid());
    }

    #[test]
    fn coarse_inverse() {
        let c = coarse_groupoid(2).unwrap();
        assert_eq!(c.arrows(), 4);
        assert_eq!(c.inv(1), 2); // (0,1) -> (1,0)
        let c3 = coarse_groupoid(3).unwrap();
        for x in 0..3 {
            for y in 0..3 {
                assert_eq!(c3.inv(x * 3 + y), y * 3 + x);
            }
        }
        assert_eq!(coarse_groupoid(1).unwrap(), discrete_groupoid(1).unwrap());
    }

    #[test]
    fn corrupted_coarse_inverse() {
        let mut raw = coarse_groupoid(2).unwrap().to_raw();
        raw.inverse[1] = 1;
        let r = check_quasigroupoid(&raw).unwrap();
        assert!(!r.is_pass());
        assert!(r.violations_of("a2-3").iter().any(|v| v.witness[0] == 1));
        assert!(matches!(Quasigroupoid::new(raw), Err(Error::Invalid(_))));
    }

    #[test]
    fn product_domain_errors() {
        let mut raw = discrete_groupoid(2).unwrap().to_raw();
        raw.product.push((0, 1, 0));
        assert!(matches!(check_quasigroupoid(&raw), Err(Error::ProductDomainMismatch { a: 0, b: 1, .. })));
        let mut raw = discrete_groupoid(2).unwrap().to_raw();
        raw.product.pop();
        assert!(matches!(check_quasigroupoid(&raw), Err(Error::ProductDomainMismatch { .. })));
    }

    #[test]
    fn builder_sizes() {
        let z2 = stock::cyclic(2);
        assert_eq!(pair_quasigroupoid(&z2, 2).unwrap().arrows(), 8);
        assert_eq!(
            pair_quasigroupoid(&z2, 1).unwrap(),
            quasigroup_as_quasigroupoid(&z2)
        );
        let z3 = stock::cyclic(3);
        let tr = SetAction::from_fn(&z3, 3, |a, x| (a + x) % 3).unwrap();
        let b = from_quasigroup_action(&z3, &tr).unwrap();
        assert_eq!(b.arrows(), 9);
        assert!((0..9).all(|i| b.tgt(i) == (i / 3 + i % 3) % 3));
        let triv = SetAction::from_fn(&z2, 1, |_, x| x).unwrap();
        assert_eq!(from_quasigroup_action(&z2, &triv).unwrap(), quasigroup_as_quasigroupoid(&z2));
        assert_eq!(quasigroup_as_quasigroupoid(&stock::trivial()).arrows(), 1);
    }

    #[test]
    fn left_translation_of_m_s3_2_is_not_an_action() {
        let m = stock::m_s3_2();
        let act = SetAction::from_fn(&m, 12, |a, x| m.mul(a, x)).unwrap();
        let r = check_action_on_set(&m, &act).unwrap();
        assert!(!r.violations_of("action-compat").is_empty());
        assert!(matches!(from_quasigroup_action(&m, &act), Err(Error::InvalidAction(_))));
    }

    #[test]
    fn pullbacks() {
        let c = coarse_groupoid(2).unwrap();
        let same = pullback_quasigroupoid(&c, &[0, 1]).unwrap();
        assert_eq!(same.arrows(), c.arrows());
        let doubled = pullback_quasigroupoid(&c, &[0, 0, 1]).unwrap();
        assert_eq!(doubled.arrows(), 9);
        let d = discrete_groupoid(1).unwrap();
        let p = pullback_quasigroupoid(&d, &[0, 0]).unwrap();
        // Relabel (p,0,q) as the coarse arrow (p,q).
        let coarse = coarse_groupoid(2).unwrap();
        assert_eq!(p.to_raw(), coarse.to_raw());
        assert!(matches!(pullback_quasigroupoid(&c, &[0, 0]), Err(Error::NotSurjective(1))));
    }

    #[test]
    fn empty_bases() {
        assert!(matches!(coarse_groupoid(0), Err(Error::EmptyBase)));
        assert!(matches!(discrete_groupoid(0), Err(Error::EmptyBase)));
    }

    #[test]
    fn morphisms() {
        let c = Arc::new(coarse_groupoid(2).unwrap());
        let id = QgpdMorphism::identity(&c);
        assert!(id.check().is_pass());
        assert!(id.is_isomorphism());
        // Swap (0,1) and (1,0) while fixing objects.
        let bad = QgpdMorphism::new(c.clone(), c.clone(), vec![0, 1], vec![0, 2, 1, 3]).unwrap();
        let r = bad.check();
        assert!(r.violations_of("b1").iter().any(|v| v.witness == vec![1]));
        let d = Arc::new(discrete_groupoid(2).unwrap());
        let other = QgpdMorphism::identity(&d);
        assert!(matches!(id.compose(&other), Err(Error::CompositionMismatch(_))));
    }
}
