//! Cross-checks the basis-sweep checker against whole-map compositions built
//! from tensor products of linear maps.

mod common;

use common::*;
use num::One;
use proptest::prelude::*;
use qgpd::linalg::{twist, LinearMap, SparseVec};
use qgpd::quasigroupoid::{coarse_groupoid, discrete_groupoid, quasigroup_as_quasigroupoid};
use qgpd::quasigroup::stock;
use qgpd::whq::{check_whq, magma_of_quasigroupoid, MagmaCoalgebra};
use qgpd::Error;

type M = LinearMap<Q>;

fn t(a: &M, b: &M) -> M {
    a.tensor(b)
}

fn c(a: &M, b: &M) -> M {
    a.compose(b).unwrap()
}

fn t3(a: &M, b: &M, d: &M) -> M {
    a.tensor(b).tensor(d)
}

/// Pass/fail of every axiom, evaluated as map equalities.
struct Oracle {
    verdicts: Vec<(&'static str, bool, M, M)>,
}

fn oracle(d: &MagmaCoalgebra<Q>) -> Oracle {
    let n = d.dim();
    let id = M::identity(n);
    let mu = d.mu().clone();
    let delta = d.delta().clone();
    let eps = d.eps().clone();
    let lam = d.lambda().clone();
    let eta = M::from_vector(d.unit());
    let tw = twist::<Q>(n, n).unwrap();

    let mut verdicts = Vec::new();
    let mut push = |tag: &'static str, l: M, r: M| {
        let ok = l == r;
        verdicts.push((tag, ok, l, r));
    };

    let delta_dd = c(&t3(&id, &tw, &id), &t(&delta, &delta));
    push("d1", c(&delta, &mu), c(&t(&mu, &mu), &delta_dd));

    let em = c(&eps, &mu);
    let f1 = c(&em, &t(&mu, &id));
    let f2 = c(&em, &t(&id, &mu));
    let f3 = c(&t(&em, &em), &t3(&id, &delta, &id));
    let f4 = c(&t(&em, &em), &t3(&id, &c(&tw, &delta), &id));
    // Multi-way equalities are pushed as one comparison against the first
    // form that differs.
    let odd = [&f2, &f3, &f4].into_iter().find(|f| **f != f1).cloned();
    push("d2", f1.clone(), odd.unwrap_or(f1));

    let de = c(&delta, &eta);
    let lhs = c(&t(&delta, &id), &de);
    let m1 = c(&t3(&id, &mu, &id), &t(&de, &de));
    let m2 = c(&t3(&id, &c(&mu, &tw), &id), &t(&de, &de));
    let odd = [m1, m2].into_iter().find(|m| *m != lhs);
    push("d3", lhs.clone(), odd.unwrap_or(lhs));

    let conv = |f: &M, g: &M| c(&mu, &c(&t(f, g), &delta));
    let pil = conv(&id, &lam);
    let pir = conv(&lam, &id);
    push("d4-1", pil.clone(), c(&t(&em, &id), &c(&t(&id, &tw), &t(&de, &id))));
    push("d4-2", pir.clone(), c(&t(&id, &em), &c(&t(&tw, &id), &t(&id, &de))));
    let odd = [conv(&lam, &pil), conv(&pir, &lam)].into_iter().find(|m| *m != lam);
    push("d4-3", lam.clone(), odd.unwrap_or_else(|| lam.clone()));
    push("d4-4", c(&mu, &c(&t(&lam, &mu), &t(&delta, &id))), c(&mu, &t(&pir, &id)));
    push(
        "d4-5",
        c(&mu, &c(&t(&id, &mu), &c(&t3(&id, &lam, &id), &t(&delta, &id)))),
        c(&mu, &t(&pil, &id)),
    );
    push("d4-6", c(&mu, &c(&t(&mu, &lam), &t(&id, &delta))), c(&mu, &t(&id, &pil)));
    push(
        "d4-7",
        c(&mu, &c(&t(&mu, &id), &c(&t3(&id, &lam, &id), &t(&id, &delta)))),
        c(&mu, &t(&id, &pir)),
    );
    Oracle { verdicts }
}

fn preconditions_hold(d: &MagmaCoalgebra<Q>) -> bool {
    let n = d.dim();
    let id = M::identity(n);
    let eta = M::from_vector(d.unit());
    let unit_l = c(d.mu(), &t(&eta, &id)) == id;
    let unit_r = c(d.mu(), &t(&id, &eta)) == id;
    let coassoc = c(&t(d.delta(), &id), d.delta()) == c(&t(&id, d.delta()), d.delta());
    let counit = c(&t(d.eps(), &id), d.delta()) == id && c(&t(&id, d.eps()), d.delta()) == id;
    unit_l && unit_r && coassoc && counit
}

/// Checker and oracle must agree tag by tag, and each reported witness must
/// point at a column where the oracle sees the two sides differ.
fn agree(d: &MagmaCoalgebra<Q>) {
    let n = d.dim();
    match check_whq(d) {
        Err(Error::PreconditionFailed(_)) => assert!(!preconditions_hold(d)),
        Err(e) => panic!("{e}"),
        Ok(r) => {
            assert!(preconditions_hold(d));
            for (tag, ok, l, rr) in oracle(d).verdicts {
                let check = r.report.find(tag).unwrap();
                assert_eq!(check.passed(), ok, "tag {tag}\n{}", r.report);
                for v in &check.violations {
                    let col = match (tag, v.witness.as_slice()) {
                        ("d1" | "d4-4" | "d4-5" | "d4-6" | "d4-7", [h, k]) => h * n + k,
                        ("d2", [h, k, l]) => (h * n + k) * n + l,
                        ("d4-1" | "d4-2", [h]) => *h,
                        _ => continue,
                    };
                    if tag != "d2" {
                        assert_ne!(l.col(col), rr.col(col), "tag {tag} witness {:?}", v.witness);
                    }
                }
            }
        }
    }
}

#[test]
fn magmas_agree_with_oracle() {
    for (name, b) in zoo().into_iter().filter(|(_, b)| b.arrows() <= 9) {
        let d = magma_of_quasigroupoid::<Q>(&b);
        for (tag, ok, _, _) in oracle(&d).verdicts {
            assert!(ok, "{name}: {tag}");
        }
        agree(&d);
    }
}

#[test]
fn d2_witnesses_reevaluate() {
    // Zeroing e_1 e_2 in Z/3 breaks (d2) exactly where the product is used.
    let d = magma_of_quasigroupoid::<Q>(&quasigroup_as_quasigroupoid(&stock::cyclic(3)));
    let bad = with_product_entry(&d, 1, 2, SparseVec::zero(3));
    let r = check_whq(&bad).unwrap();
    let n = 3;
    let e = |v: &SparseVec<Q>| bad.counit(v);
    for v in r.report.violations_of("d2") {
        let [h, k, l] = v.witness[..] else { panic!() };
        let hk = bad.mul_basis(h, k).clone();
        let kl = bad.mul_basis(k, l).clone();
        let v1 = e(&bad.mul(&hk, &SparseVec::basis(n, l)));
        let v2 = e(&bad.mul(&SparseVec::basis(n, h), &kl));
        let v3 = e(&hk) * e(&kl);
        assert!(v1 != v2 || v1 != v3, "{:?}", v.witness);
    }
    assert!(!r.report.violations_of("d2").is_empty());
}

#[test]
fn antipode_is_unique_among_permutations() {
    use perms::permutations;
    for b in [
        coarse_groupoid(2).unwrap(),
        discrete_groupoid(3).unwrap(),
        quasigroup_as_quasigroupoid(&stock::cyclic(3)),
        quasigroup_as_quasigroupoid(&stock::cyclic(2)),
        quasigroup_as_quasigroupoid(&stock::symmetric(3)),
    ] {
        let d = magma_of_quasigroupoid::<Q>(&b);
        let n = d.dim();
        for p in permutations(n) {
            let lam = M::basis_map(n, n, |j| Some(p[j])).unwrap();
            let cand = d.with_antipode(lam.clone()).unwrap();
            let r = check_whq(&cand).unwrap();
            let d4 = ["d4-1", "d4-2", "d4-3", "d4-4", "d4-5", "d4-6", "d4-7"];
            if d4.iter().all(|t| r.report.find(t).unwrap().passed()) {
                assert_eq!(&lam, d.lambda());
            }
        }
    }
}

mod perms {
    /// All permutations of `0..n` in lexicographic order.
    pub fn permutations(n: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut p: Vec<usize> = (0..n).collect();
        loop {
            out.push(p.clone());
            let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
                return out;
            };
            let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).unwrap();
            p.swap(i - 1, j);
            p[i..].reverse();
        }
    }
}

fn small_magma() -> impl Strategy<Value = MagmaCoalgebra<Q>> {
    let bases: Vec<_> = zoo().into_iter().map(|(_, b)| b).filter(|b| b.arrows() <= 6).collect();
    (0..bases.len()).prop_map(move |i| magma_of_quasigroupoid::<Q>(&bases[i]))
}

#[derive(Debug, Clone)]
enum Mutation {
    Product(usize, usize, usize, i64),
    Antipode(usize, usize),
    Unit(usize),
    Counit(usize, i64),
}

fn mutation() -> impl Strategy<Value = Mutation> {
    prop_oneof![
        (0..64usize, 0..64usize, 0..64usize, -1i64..3).prop_map(|(a, b, c, s)| Mutation::Product(a, b, c, s)),
        (0..64usize, 0..64usize).prop_map(|(a, b)| Mutation::Antipode(a, b)),
        (0..64usize).prop_map(Mutation::Unit),
        (0..64usize, -1i64..3).prop_map(|(a, s)| Mutation::Counit(a, s)),
    ]
}

fn apply(d: &MagmaCoalgebra<Q>, m: &Mutation) -> MagmaCoalgebra<Q> {
    let n = d.dim();
    match *m {
        Mutation::Product(i, j, k, s) => with_product_entry(d, i % n, j % n, SparseVec::basis(n, k % n).scaled(&q(s))),
        Mutation::Antipode(i, k) => d.with_antipode(with_column(d.lambda(), i % n, SparseVec::basis(n, k % n))).unwrap(),
        Mutation::Unit(k) => d.with_unit(d.unit().plus(&SparseVec::basis(n, k % n))).unwrap(),
        Mutation::Counit(k, s) => {
            let eps = with_column(d.eps(), k % n, SparseVec::from_entries(1, [(0, q(s))]));
            d.with_coalgebra(eps, d.delta().clone()).unwrap()
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn mutated_magmas_agree_with_oracle(d in small_magma(), m in mutation()) {
        agree(&apply(&d, &m));
    }
}

#[test]
fn group_algebra_is_hopf() {
    let d = magma_of_quasigroupoid::<Q>(&quasigroup_as_quasigroupoid(&stock::cyclic(2)));
    assert!(qgpd::whq::is_hopf_quasigroup(&d).unwrap());
    assert_eq!(d.unit(), &SparseVec::from_entries(2, [(0, Q::one())]));
}
