//! Finite IP loops stored as Cayley tables.

use crate::report::StructureReport;
use crate::{Error, Result};

/// An IP loop on elements `0..order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteQuasigroup {
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
}

/// Result of [`check_quasigroup`]; `inverse` is present iff the report passes.
#[derive(Debug, Clone)]
pub struct QuasigroupCheck {
    pub report: StructureReport,
    pub inverse: Option<Vec<usize>>,
}

/// Checks the identity law and the inverse property of a Cayley table.
pub fn check_quasigroup(table: &[Vec<usize>], identity: usize) -> Result<QuasigroupCheck> {
    let n = table.len();
    if identity >= n {
        return Err(Error::range("identity", identity, n));
    }
    for (u, row) in table.iter().enumerate() {
        if row.len() != n {
            return Err(Error::range(format!("row {u} length"), row.len(), n));
        }
        if let Some(&bad) = row.iter().find(|&&x| x >= n) {
            return Err(Error::range(format!("table row {u}"), bad, n));
        }
    }
    let mul = |u: usize, v: usize| table[u][v];
    let mut report = StructureReport::new("quasigroup");
    let e = identity;

    let mut c = report.check("identity-law");
    for u in 0..n {
        c.case(mul(e, u) == u && mul(u, e) == u, &[u], || {
            format!("e*u={} u*e={}", mul(e, u), mul(u, e))
        });
    }

    let mut inverse = Vec::with_capacity(n);
    let mut c = report.check("inverse-property");
    for u in 0..n {
        let w = inverse_candidates(n, &mul, u).next();
        c.case(w.is_some(), &[u], || "no inverse-property inverse".into());
        inverse.push(w.unwrap_or(0));
    }

    let inverse = report.is_pass().then_some(inverse);
    Ok(QuasigroupCheck { report, inverse })
}

fn inverse_candidates<'a>(
    n: usize,
    mul: &'a impl Fn(usize, usize) -> usize,
    u: usize,
) -> impl Iterator<Item = usize> + 'a {
    (0..n).filter(move |&w| (0..n).all(|v| mul(w, mul(u, v)) == v && mul(mul(v, u), w) == v))
}

impl FiniteQuasigroup {
    /// Validates a table and caches the inverses.
    pub fn new(table: Vec<Vec<usize>>, identity: usize) -> Result<Self> {
        let check = check_quasigroup(&table, identity)?;
        let inverse = check.inverse.ok_or(Error::Invalid(check.report))?;
        Ok(FiniteQuasigroup {
            order: table.len(),
            table: table.into_iter().flatten().collect(),
            identity,
            inverse,
        })
    }

    pub fn from_fn(order: usize, identity: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let table = (0..order)
            .map(|u| (0..order).map(|v| f(u, v)).collect())
            .collect();
        Self::new(table, identity)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, u: usize, v: usize) -> usize {
        self.table[u * self.order + v]
    }

    pub fn inv(&self, u: usize) -> usize {
        self.inverse[u]
    }

    pub fn inverses(&self) -> &[usize] {
        &self.inverse
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    /// Lexicographically smallest `(u,v,w)` with `(uv)w != u(vw)`.
    pub fn associativity_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.order;
        for u in 0..n {
            for v in 0..n {
                for w in 0..n {
                    if self.mul(self.mul(u, v), w) != self.mul(u, self.mul(v, w)) {
                        return Some((u, v, w));
                    }
                }
            }
        }
        None
    }

    pub fn is_associative(&self) -> bool {
        self.associativity_witness().is_none()
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.order;
        (0..n).all(|u| (0..n).all(|v| self.mul(u, v) == self.mul(v, u)))
    }

    /// Uniqueness of inverses, `(u^-1)^-1 = u` and `(uv)^-1 = v^-1 u^-1`.
    pub fn derived_identity_suite(&self) -> StructureReport {
        let n = self.order;
        let mut report = StructureReport::new("quasigroup derived identities");
        let mul = |u, v| self.mul(u, v);
        let mut c = report.check("inverse-unique");
        for u in 0..n {
            let count = inverse_candidates(n, &mul, u).count();
            c.case(count == 1, &[u], || format!("{count} candidates"));
        }
        let mut c = report.check("inverse-involution");
        for u in 0..n {
            c.eq(self.inv(self.inv(u)), u, &[u]);
        }
        let mut c = report.check("inverse-antimultiplicative");
        for u in 0..n {
            for v in 0..n {
                c.eq(self.inv(self.mul(u, v)), self.mul(self.inv(v), self.inv(u)), &[u, v]);
            }
        }
        report
    }
}

/// Chein's doubling `M(G,2)`: elements `g` at index `g` and `gu` at `n+g`.
///
/// `g*h = gh`, `g*(hu) = (hg)u`, `(gu)*h = (gh^-1)u`, `(gu)*(hu) = h^-1 g`.
pub fn chein_double(g: &FiniteQuasigroup) -> Result<FiniteQuasigroup> {
    if let Some((u, v, w)) = g.associativity_witness() {
        return Err(Error::NotAGroup(u, v, w));
    }
    let n = g.order();
    FiniteQuasigroup::from_fn(2 * n, g.identity(), |x, y| {
        let (a, i) = (x % n, x / n);
        let (b, j) = (y % n, y / n);
        match (i, j) {
            (0, 0) => g.mul(a, b),
            (0, _) => n + g.mul(b, a),
            (_, 0) => n + g.mul(a, g.inv(b)),
            _ => g.mul(g.inv(b), a),
        }
    })
}

/// Small groups and loops used as test stock.
pub mod stock {
    use super::{chein_double, FiniteQuasigroup};

    fn build(order: usize, f: impl Fn(usize, usize) -> usize) -> FiniteQuasigroup {
        FiniteQuasigroup::from_fn(order, 0, f).expect("stock table is a valid loop")
    }

    pub fn trivial() -> FiniteQuasigroup {
        cyclic(1)
    }

    pub fn cyclic(n: usize) -> FiniteQuasigroup {
        build(n, |u, v| (u + v) % n)
    }

    /// Dihedral group of order `2n`; `r^k s^j` sits at index `j*n + k`.
    pub fn dihedral(n: usize) -> FiniteQuasigroup {
        build(2 * n, |x, y| {
            let (a, b) = (x % n, x / n);
            let (c, d) = (y % n, y / n);
            let k = if b == 0 { (a + c) % n } else { (a + n - c) % n };
            ((b + d) % 2) * n + k
        })
    }

    /// Quaternion group; index `4*sign + unit` with units `1, i, j, k`.
    pub fn quaternion() -> FiniteQuasigroup {
        // (sign, unit) of unit products, rows/cols in order 1, i, j, k.
        const T: [[(usize, usize); 4]; 4] = [
            [(0, 0), (0, 1), (0, 2), (0, 3)],
            [(0, 1), (1, 0), (0, 3), (1, 2)],
            [(0, 2), (1, 3), (1, 0), (0, 1)],
            [(0, 3), (0, 2), (1, 1), (1, 0)],
        ];
        build(8, |x, y| {
            let (s, t) = T[x % 4][y % 4];
            ((x / 4 + y / 4 + s) % 2) * 4 + t
        })
    }

    /// Symmetric group on `n` points; permutations in lexicographic order,
    /// product `(p*q)(i) = p(q(i))`.
    pub fn symmetric(n: usize) -> FiniteQuasigroup {
        let perms = permutations(n);
        build(perms.len(), |x, y| {
            let composed: Vec<usize> = (0..n).map(|i| perms[x][perms[y][i]]).collect();
            perms.iter().position(|p| *p == composed).unwrap()
        })
    }

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for first in 0..n {
            for rest in permutations(n - 1) {
                let mut p = vec![first];
                p.extend(rest.into_iter().map(|r| if r >= first { r + 1 } else { r }));
                out.push(p);
            }
        }
        out
    }

    /// Direct product; `(a,b)` sits at index `a*|h| + b`.
    pub fn direct_product(g: &FiniteQuasigroup, h: &FiniteQuasigroup) -> FiniteQuasigroup {
        let m = h.order();
        FiniteQuasigroup::from_fn(g.order() * m, g.identity() * m + h.identity(), |x, y| {
            g.mul(x / m, y / m) * m + h.mul(x % m, y % m)
        })
        .expect("product of loops is a loop")
    }

    /// `M(S3,2)`, the smallest nonassociative Moufang loop.
    pub fn m_s3_2() -> FiniteQuasigroup {
        chein_double(&symmetric(3)).expect("S3 is a group")
    }

    /// All groups of order at most 8, up to isomorphism.
    pub fn groups_up_to_8() -> Vec<(&'static str, FiniteQuasigroup)> {
        let z2 = cyclic(2);
        vec![
            ("Z1", trivial()),
            ("Z2", cyclic(2)),
            ("Z3", cyclic(3)),
            ("Z4", cyclic(4)),
            ("Z2xZ2", direct_product(&z2, &z2)),
            ("Z5", cyclic(5)),
            ("Z6", cyclic(6)),
            ("S3", symmetric(3)),
            ("Z7", cyclic(7)),
            ("Z8", cyclic(8)),
            ("Z2xZ4", direct_product(&z2, &cyclic(4))),
            ("Z2^3", direct_product(&z2, &direct_product(&z2, &z2))),
            ("D4", dihedral(4)),
            ("Q8", quaternion()),
        ]
    }
}
