#![allow(dead_code)]

use qgpd::linalg::{LinearMap, Rational, SparseVec};
use qgpd::quasigroup::{stock, FiniteQuasigroup};
use qgpd::quasigroupoid::{
    coarse_groupoid, discrete_groupoid, from_quasigroup_action, pair_quasigroupoid, pullback_quasigroupoid,
    quasigroup_as_quasigroupoid, Quasigroupoid, SetAction,
};
use qgpd::whq::MagmaCoalgebra;

pub type Q = Rational;

pub fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

/// Small quasigroupoids covering every builder.
pub fn zoo() -> Vec<(String, Quasigroupoid)> {
    let z2 = stock::cyclic(2);
    let z3 = stock::cyclic(3);
    let ms = stock::m_s3_2();
    let flip = SetAction::from_fn(&z2, 2, |a, x| a ^ x).unwrap();
    let shift = SetAction::from_fn(&z3, 3, |a, x| (a + x) % 3).unwrap();
    let parity = SetAction::from_fn(&ms, 2, |a, x| x ^ usize::from(a >= 6)).unwrap();
    vec![
        ("discrete(1)".into(), discrete_groupoid(1).unwrap()),
        ("discrete(3)".into(), discrete_groupoid(3).unwrap()),
        ("coarse(2)".into(), coarse_groupoid(2).unwrap()),
        ("coarse(3)".into(), coarse_groupoid(3).unwrap()),
        ("Z3".into(), quasigroup_as_quasigroupoid(&z3)),
        ("M(S3,2)".into(), quasigroup_as_quasigroupoid(&ms)),
        ("action Z2 flip".into(), from_quasigroup_action(&z2, &flip).unwrap()),
        ("action Z3 shift".into(), from_quasigroup_action(&z3, &shift).unwrap()),
        ("action M(S3,2) parity".into(), from_quasigroup_action(&ms, &parity).unwrap()),
        ("pair Z2 x2".into(), pair_quasigroupoid(&z2, 2).unwrap()),
        (
            "pullback Z2 along 3->1".into(),
            pullback_quasigroupoid(&quasigroup_as_quasigroupoid(&z2), &[0, 0, 0]).unwrap(),
        ),
    ]
}

pub fn loops() -> Vec<(String, FiniteQuasigroup)> {
    let mut v: Vec<(String, FiniteQuasigroup)> =
        stock::groups_up_to_8().into_iter().map(|(n, g)| (n.to_string(), g)).collect();
    v.push(("M(S3,2)".into(), stock::m_s3_2()));
    v.push(("M(Z3,2)".into(), qgpd::quasigroup::chein_double(&stock::cyclic(3)).unwrap()));
    v
}

/// Replaces column `k` of a map.
pub fn with_column(m: &LinearMap<Q>, k: usize, v: SparseVec<Q>) -> LinearMap<Q> {
    LinearMap::from_fn(m.dom(), m.cod(), |j| if j == k { v.clone() } else { m.col(j).clone() }).unwrap()
}

/// Product with `e_i e_j` replaced by `v`.
pub fn with_product_entry(d: &MagmaCoalgebra<Q>, i: usize, j: usize, v: SparseVec<Q>) -> MagmaCoalgebra<Q> {
    let n = d.dim();
    d.with_product(with_column(d.mu(), i * n + j, v)).unwrap()
}
