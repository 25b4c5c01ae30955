//! Exact factorizations `[A, H]` of a quasigroupoid `B`, reconstruction of
//! the matched pair they carry, and a brute-force enumerator.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::matched_pair::{dcp_pairs, double_cross_product, LeftAction, MatchedPair, MixedSetting, RightAction};
use crate::quasigroupoid::{QgpdMorphism, Quasigroupoid};
use crate::report::{join, StructureReport};
use crate::{Error, Result};

/// Two subquasigroupoids of `B` given by their inclusions.
#[derive(Debug, Clone)]
pub struct FactorizationCandidate {
    b: Arc<Quasigroupoid>,
    ia: QgpdMorphism,
    ih: QgpdMorphism,
}

impl FactorizationCandidate {
    /// Both inclusions must land in `b`, pass the morphism laws and be
    /// injective on arrows. Object maps are checked by
    /// [`check_exact_factorization`].
    pub fn new(b: Arc<Quasigroupoid>, ia: QgpdMorphism, ih: QgpdMorphism) -> Result<Self> {
        if ia.target() != &b || ih.target() != &b {
            return Err(Error::BaseMismatch("inclusions do not land in B".into()));
        }
        for (name, m) in [("iA", &ia), ("iH", &ih)] {
            let mut r = m.check();
            r.subject = format!("inclusion {name}");
            r.check("arrow-injective").case(m.arrows_injective(), &[], || "arrow map is not injective".into());
            if !r.is_pass() {
                return Err(Error::InvalidMorphism(r));
            }
        }
        Ok(FactorizationCandidate { b, ia, ih })
    }

    /// The canonical `[A, H]` inside `A ⋈ H`.
    pub fn canonical(mp: &MatchedPair) -> Result<Self> {
        let d = double_cross_product(mp)?;
        Self::new(d.quasigroupoid().clone(), d.inclusion_a(), d.inclusion_h())
    }

    /// Inclusions of two arrow subsets of `b`, each listed in increasing order.
    pub fn from_subsets(b: &Arc<Quasigroupoid>, a_arrows: &[usize], h_arrows: &[usize]) -> Result<Self> {
        let inc = |arrows: &[usize]| -> Result<QgpdMorphism> {
            let sub = Arc::new(b.restrict(arrows)?);
            QgpdMorphism::new(sub, b.clone(), (0..b.objects()).collect(), arrows.to_vec())
        };
        Self::new(b.clone(), inc(a_arrows)?, inc(h_arrows)?)
    }

    pub fn b(&self) -> &Arc<Quasigroupoid> {
        &self.b
    }

    pub fn a(&self) -> &Arc<Quasigroupoid> {
        self.ia.source()
    }

    pub fn h(&self) -> &Arc<Quasigroupoid> {
        self.ih.source()
    }

    pub fn inclusion_a(&self) -> &QgpdMorphism {
        &self.ia
    }

    pub fn inclusion_h(&self) -> &QgpdMorphism {
        &self.ih
    }

    /// Images of `A1` and `H1` in `B1`.
    pub fn subsets(&self) -> (Vec<usize>, Vec<usize>) {
        (self.ia.arrow_map().to_vec(), self.ih.arrow_map().to_vec())
    }

    /// `θ_B(a,h) = iA(a) ⋄ iH(h)` over the lexicographic `(a,h)` enumeration.
    pub fn theta(&self) -> Vec<usize> {
        let (ia, ih) = (self.ia.arrow_map(), self.ih.arrow_map());
        dcp_pairs(self.a(), self.h())
            .into_iter()
            .map(|(a, h)| self.b.prod(ia[a], ih[h]).expect("s_A(a) = t_H(h)"))
            .collect()
    }
}

fn identity_objects(m: &QgpdMorphism) -> bool {
    m.source().objects() == m.target().objects() && m.object_map().iter().enumerate().all(|(i, &x)| i == x)
}

/// Checks (i)-(vi) with `⋄` the product of `B`, then bijectivity of `θ_B` (vii).
///
/// (vi) uses matching order on both sides; the swapped reading is reported
/// under `vi-printed` without deciding the outcome. `A1 ∩ H1 = identities`
/// is recorded as `intersection`.
pub fn check_exact_factorization(c: &FactorizationCandidate) -> Result<StructureReport> {
    if !identity_objects(&c.ia) {
        return Err(Error::ObjectMapNotIdentity("iA"));
    }
    if !identity_objects(&c.ih) {
        return Err(Error::ObjectMapNotIdentity("iH"));
    }
    let mut report = StructureReport::new("exact factorization");
    let setting = MixedSetting {
        b: &c.b,
        a: c.a(),
        h: c.h(),
        ia: c.ia.arrow_map(),
        ih: c.ih.arrow_map(),
    };
    setting.check(&mut report, ["i", "ii", "iii", "iv", "v", "vi"], "vi-printed");

    let pairs = dcp_pairs(c.a(), c.h());
    let theta = c.theta();
    let mut fibers = vec![Vec::new(); c.b.arrows()];
    for (i, &t) in theta.iter().enumerate() {
        fibers[t].push(i);
    }
    let mut r = report.check("vii");
    for (x, fiber) in fibers.iter().enumerate() {
        r.case(fiber.len() == 1, &[x], || {
            let shown: Vec<String> = fiber
                .iter()
                .map(|&i| format!("({},{})", pairs[i].0, pairs[i].1))
                .collect();
            format!("fiber of size {} [{}]", fiber.len(), shown.join(" "))
        });
    }

    let mut r = report.record("intersection");
    let in_h: BTreeSet<usize> = c.ih.arrow_map().iter().copied().collect();
    for (a, &x) in c.ia.arrow_map().iter().enumerate() {
        let ok = !in_h.contains(&x) || c.b.is_identity(x);
        r.case(ok, &[a], || format!("arrow {x} of B lies in both images"));
    }
    Ok(report)
}

/// Recovers `(φ_A, φ_H)` from `iH(h) ⋄ iA(a) = iA(a^h) ⋄ iH(h^a)` and returns
/// `Γ = (id, θ_B)` from `A ⋈ H` to `B`.
pub fn reconstruct_matched_pair(c: &FactorizationCandidate) -> Result<(MatchedPair, QgpdMorphism)> {
    let report = check_exact_factorization(c)?;
    if !report.is_pass() {
        return Err(Error::NotExact(report));
    }
    let (a, h, b) = (c.a().clone(), c.h().clone(), &c.b);
    let pairs = dcp_pairs(&a, &h);
    let theta = c.theta();
    let mut inverse: Vec<Option<usize>> = vec![None; b.arrows()];
    for (i, &t) in theta.iter().enumerate() {
        if inverse[t].replace(i).is_some() {
            return Err(Error::InternalInconsistency(format!("fiber of θ_B over {t} is not a singleton")));
        }
    }
    let (ia, ih) = (c.ia.arrow_map(), c.ih.arrow_map());
    let mut left = Vec::new();
    let mut right = Vec::new();
    for hh in 0..h.arrows() {
        for &aa in a.arrows_into(h.src(hh)) {
            let x = b.prod(ih[hh], ia[aa]).expect("s_H(h) = t_A(a)");
            let i = inverse[x]
                .ok_or_else(|| Error::InternalInconsistency(format!("fiber of θ_B over {x} is empty")))?;
            let (ah, ha) = pairs[i];
            left.push((hh, aa, ah));
            right.push((hh, aa, ha));
        }
    }
    let mp = MatchedPair::new(
        LeftAction::from_entries(h.clone(), a.clone(), &left)?,
        RightAction::from_entries(h, a, &right)?,
    )?;
    let d = double_cross_product(&mp)?;
    // The dcp enumerates pairs in the same order as θ_B's domain.
    let gamma = QgpdMorphism::new(d.quasigroupoid().clone(), b.clone(), (0..b.objects()).collect(), theta)?;
    Ok((mp, gamma))
}

/// Arrow sets of subquasigroupoids of `b`: all identities, closed under
/// products and inverses. Returned as bitmasks in increasing order.
fn closed_subsets(b: &Quasigroupoid) -> Vec<u128> {
    let close = |mut m: u128| -> u128 {
        loop {
            let before = m;
            for x in 0..b.arrows() {
                if m >> x & 1 == 1 {
                    m |= 1 << b.inv(x);
                }
            }
            for (x, y) in b.composable_pairs() {
                if m >> x & 1 == 1 && m >> y & 1 == 1 {
                    m |= 1 << b.prod(x, y).unwrap();
                }
            }
            if m == before {
                return m;
            }
        }
    };
    let base = close((0..b.objects()).fold(0u128, |m, x| m | 1 << b.id(x)));
    let mut seen = BTreeSet::from([base]);
    let mut frontier = vec![base];
    while let Some(s) = frontier.pop() {
        for x in 0..b.arrows() {
            if s >> x & 1 == 0 {
                let t = close(s | 1 << x);
                if seen.insert(t) {
                    frontier.push(t);
                }
            }
        }
    }
    seen.into_iter().collect()
}

fn members(mask: u128, n: usize) -> Vec<usize> {
    (0..n).filter(|&x| mask >> x & 1 == 1).collect()
}

/// Every exact factorization of `b` with identity object maps, ordered by
/// the arrow sets of `A` then `H` (as bitmasks).
pub fn enumerate_factorizations(b: &Arc<Quasigroupoid>, max_arrows: usize) -> Result<Vec<FactorizationCandidate>> {
    let limit = max_arrows.min(128);
    if b.arrows() > limit {
        return Err(Error::BoundExceeded(format!(
            "{} arrows exceeds the bound {limit}",
            b.arrows()
        )));
    }
    let subsets = closed_subsets(b);
    let sizes: Vec<Vec<usize>> = subsets.iter().map(|&m| members(m, b.arrows())).collect();
    let mut found = Vec::new();
    for sa in &sizes {
        for sh in &sizes {
            // θ_B's domain has one pair per arrow of A and identity-compatible
            // arrow of H; it must match |B1| before anything else is worth checking.
            let domain: usize = sa
                .iter()
                .map(|&x| sh.iter().filter(|&&g| b.tgt(g) == b.src(x)).count())
                .sum();
            if domain != b.arrows() {
                continue;
            }
            let c = FactorizationCandidate::from_subsets(b, sa, sh)?;
            if check_exact_factorization(&c)?.is_pass() {
                found.push(c);
            }
        }
    }
    Ok(found)
}

impl std::fmt::Display for FactorizationCandidate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let (a, h) = self.subsets();
        write!(f, "A=[{}] H=[{}]", join(&a), join(&h))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matched_pair::mp_discrete_right;
    use crate::quasigroupoid::{coarse_groupoid, discrete_groupoid};

    #[test]
    fn coarse_identity_pair_fails_vii() {
        let b = Arc::new(coarse_groupoid(2).unwrap());
        let all = [0, 1, 2, 3];
        let c = FactorizationCandidate::from_subsets(&b, &all, &all).unwrap();
        assert_eq!(c.theta().len(), 8);
        let r = check_exact_factorization(&c).unwrap();
        assert_eq!(r.failed_axioms(), vec!["vii"]);
        assert!(r.violations_of("vii").iter().all(|v| v.detail.starts_with("fiber of size 2")));
    }

    #[test]
    fn discrete_part_and_whole() {
        let b = Arc::new(coarse_groupoid(2).unwrap());
        let c = FactorizationCandidate::from_subsets(&b, &[0, 3], &[0, 1, 2, 3]).unwrap();
        assert!(check_exact_factorization(&c).unwrap().is_pass());
        assert_eq!(c.theta(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn enumeration_examples() {
        let d = Arc::new(discrete_groupoid(2).unwrap());
        let found = enumerate_factorizations(&d, 16).unwrap();
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].subsets(), (vec![0, 1], vec![0, 1]));

        let b = Arc::new(coarse_groupoid(2).unwrap());
        let found: Vec<_> = enumerate_factorizations(&b, 16)
            .unwrap()
            .iter()
            .map(|c| c.subsets())
            .collect();
        assert_eq!(found, vec![(vec![0, 3], vec![0, 1, 2, 3]), (vec![0, 1, 2, 3], vec![0, 3])]);
        assert!(matches!(enumerate_factorizations(&b, 3), Err(Error::BoundExceeded(_))));
    }

    #[test]
    fn round_trip_discrete_right() {
        let a = Arc::new(coarse_groupoid(3).unwrap());
        let mp = mp_discrete_right(a).unwrap();
        let c = FactorizationCandidate::canonical(&mp).unwrap();
        let (back, gamma) = reconstruct_matched_pair(&c).unwrap();
        assert_eq!(back.left().entries(), mp.left().entries());
        assert_eq!(back.right().entries(), mp.right().entries());
        assert!(gamma.check().is_pass());
        assert!(gamma.is_isomorphism());
    }

    #[test]
    fn object_maps_must_be_identity() {
        let b = Arc::new(discrete_groupoid(2).unwrap());
        let swap = QgpdMorphism::new(b.clone(), b.clone(), vec![1, 0], vec![1, 0]).unwrap();
        let c = FactorizationCandidate::new(b.clone(), swap, QgpdMorphism::identity(&b)).unwrap();
        assert!(matches!(check_exact_factorization(&c), Err(Error::ObjectMapNotIdentity("iA"))));
    }
}
