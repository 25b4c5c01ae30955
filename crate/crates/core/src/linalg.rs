//! Exact linear algebra on basis-indexed spaces.
//!
//! Tensor bases are row-major: `e_i ⊗ e_j` of `K^m ⊗ K^n` is basis index
//! `i*n + j` (see [`tensor_index`]). Longer tensor products nest the same way.

use std::collections::BTreeMap;
use std::fmt::{self, Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

pub type Rational = BigRational;

/// Exact field arithmetic.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + Eq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    fn inv(&self) -> Option<Self>;

    /// The image of `num/den`, or `None` if `den` vanishes in the field.
    fn from_ratio(num: &BigInt, den: &BigInt) -> Option<Self>;

    /// Canonical `num/den` text.
    fn to_ratio_string(&self) -> String;

    fn from_i64(v: i64) -> Self {
        Self::from_ratio(&BigInt::from(v), &BigInt::one()).expect("denominator 1")
    }
}

impl Scalar for BigRational {
    fn inv(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }

    fn from_ratio(num: &BigInt, den: &BigInt) -> Option<Self> {
        (!den.is_zero()).then(|| BigRational::new(num.clone(), den.clone()))
    }

    fn to_ratio_string(&self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }
}

/// The prime field `Z/P`. `P` must be prime.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Gf<const P: u64>(u64);

impl<const P: u64> Gf<P> {
    pub fn new(v: u64) -> Self {
        Gf(v % P)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    fn pow(self, mut e: u64) -> Self {
        let (mut base, mut acc) = (self, Gf(1 % P));
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl<const P: u64> Display for Gf<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Add for Gf<P> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Gf(((self.0 as u128 + o.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Sub for Gf<P> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl<const P: u64> Neg for Gf<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Gf((P - self.0) % P)
    }
}

impl<const P: u64> Mul for Gf<P> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Gf(((self.0 as u128 * o.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Zero for Gf<P> {
    fn zero() -> Self {
        Gf(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Gf<P> {
    fn one() -> Self {
        Gf(1 % P)
    }
}

impl<const P: u64> Scalar for Gf<P> {
    fn inv(&self) -> Option<Self> {
        (self.0 != 0).then(|| self.pow(P - 2))
    }

    fn from_ratio(num: &BigInt, den: &BigInt) -> Option<Self> {
        let reduce = |x: &BigInt| {
            let p = BigInt::from(P);
            let r = ((x % &p) + &p) % &p;
            Gf(r.to_u64().expect("reduced below P"))
        };
        Some(reduce(num) * reduce(den).inv()?)
    }

    fn to_ratio_string(&self) -> String {
        format!("{}/1", self.0)
    }
}

/// Parses `"num/den"` or `"num"`.
pub fn parse_scalar<F: Scalar>(text: &str) -> Option<F> {
    let (n, d) = match text.split_once('/') {
        Some((n, d)) => (n.trim().parse::<BigInt>().ok()?, d.trim().parse::<BigInt>().ok()?),
        None => (text.trim().parse::<BigInt>().ok()?, BigInt::one()),
    };
    if d.is_negative() {
        return F::from_ratio(&-n, &-d);
    }
    F::from_ratio(&n, &d)
}

/// A vector in `K^dim` storing only nonzero coordinates.
#[derive(Clone, PartialEq, Eq)]
pub struct SparseVec<F> {
    dim: usize,
    entries: BTreeMap<usize, F>,
}

impl<F: Scalar> Debug for SparseVec<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<F: Scalar> Display for SparseVec<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .entries
            .iter()
            .map(|(i, c)| if c.is_one() { format!("e{i}") } else { format!("({c})e{i}") })
            .collect();
        write!(f, "{}", terms.join("+"))
    }
}

impl<F: Scalar> SparseVec<F> {
    pub fn zero(dim: usize) -> Self {
        SparseVec {
            dim,
            entries: BTreeMap::new(),
        }
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        let mut v = Self::zero(dim);
        v.add_at(i, F::one());
        v
    }

    pub fn from_entries(dim: usize, entries: impl IntoIterator<Item = (usize, F)>) -> Self {
        let mut v = Self::zero(dim);
        for (i, c) in entries {
            v.add_at(i, c);
        }
        v
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize) -> F {
        self.entries.get(&i).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// Nonzero coordinates in increasing index order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &F)> {
        self.entries.iter().map(|(&i, c)| (i, c))
    }

    pub fn add_at(&mut self, i: usize, c: F) {
        assert!(i < self.dim, "coordinate {i} outside dimension {}", self.dim);
        if c.is_zero() {
            return;
        }
        match self.entries.entry(i) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().clone() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    /// `self += c * other`.
    pub fn axpy(&mut self, c: &F, other: &SparseVec<F>) {
        for (i, x) in other.iter() {
            self.add_at(i, c.clone() * x.clone());
        }
    }

    pub fn scaled(&self, c: &F) -> Self {
        let mut v = Self::zero(self.dim);
        v.axpy(c, self);
        v
    }

    pub fn plus(&self, other: &SparseVec<F>) -> Self {
        let mut v = self.clone();
        v.axpy(&F::one(), other);
        v
    }

    pub fn minus(&self, other: &SparseVec<F>) -> Self {
        let mut v = self.clone();
        v.axpy(&-F::one(), other);
        v
    }

    /// `self ⊗ other` in the row-major tensor basis.
    pub fn tensor(&self, other: &SparseVec<F>) -> Self {
        let mut v = Self::zero(self.dim * other.dim);
        for (i, a) in self.iter() {
            for (j, b) in other.iter() {
                v.add_at(tensor_index(i, j, other.dim), a.clone() * b.clone());
            }
        }
        v
    }

    /// Sum of all coordinates, i.e. the pairing with the all-ones functional.
    pub fn coefficient_sum(&self) -> F {
        self.entries.values().fold(F::zero(), |acc, c| acc + c.clone())
    }
}

/// Row-major index of `e_i ⊗ e_j` where `j < n`.
pub fn tensor_index(i: usize, j: usize, n: usize) -> usize {
    i * n + j
}

/// A linear map stored column by column.
#[derive(Clone, PartialEq, Eq)]
pub struct LinearMap<F> {
    dom: usize,
    cod: usize,
    cols: Vec<SparseVec<F>>,
}

impl<F: Scalar> Debug for LinearMap<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearMap({}->{})", self.dom, self.cod)?;
        f.debug_list().entries(&self.cols).finish()
    }
}

fn dims_check(ok: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::DimensionMismatch(msg()))
    }
}

impl<F: Scalar> LinearMap<F> {
    pub fn from_columns(cod: usize, cols: Vec<SparseVec<F>>) -> Result<Self> {
        for (j, c) in cols.iter().enumerate() {
            dims_check(c.dim() == cod, || format!("column {j} has dimension {} not {cod}", c.dim()))?;
        }
        Ok(LinearMap {
            dom: cols.len(),
            cod,
            cols,
        })
    }

    pub fn from_fn(dom: usize, cod: usize, f: impl Fn(usize) -> SparseVec<F>) -> Result<Self> {
        Self::from_columns(cod, (0..dom).map(f).collect())
    }

    /// Sends `e_j` to `e_{f(j)}`, or to zero when `f(j)` is `None`.
    pub fn basis_map(dom: usize, cod: usize, f: impl Fn(usize) -> Option<usize>) -> Result<Self> {
        let mut cols = Vec::with_capacity(dom);
        for j in 0..dom {
            let col = match f(j) {
                Some(i) => {
                    dims_check(i < cod, || format!("basis image {i} outside dimension {cod}"))?;
                    SparseVec::basis(cod, i)
                }
                None => SparseVec::zero(cod),
            };
            cols.push(col);
        }
        Ok(LinearMap { dom, cod, cols })
    }

    pub fn identity(n: usize) -> Self {
        Self::basis_map(n, n, Some).expect("square")
    }

    pub fn zero(dom: usize, cod: usize) -> Self {
        LinearMap {
            dom,
            cod,
            cols: vec![SparseVec::zero(cod); dom],
        }
    }

    /// The map `K -> K^n` picking out `v`.
    pub fn from_vector(v: &SparseVec<F>) -> Self {
        LinearMap {
            dom: 1,
            cod: v.dim(),
            cols: vec![v.clone()],
        }
    }

    pub fn dom(&self) -> usize {
        self.dom
    }

    pub fn cod(&self) -> usize {
        self.cod
    }

    pub fn col(&self, j: usize) -> &SparseVec<F> {
        &self.cols[j]
    }

    pub fn entry(&self, i: usize, j: usize) -> F {
        self.cols[j].get(i)
    }

    pub fn apply(&self, v: &SparseVec<F>) -> Result<SparseVec<F>> {
        dims_check(v.dim() == self.dom, || format!("vector of dimension {} into map from {}", v.dim(), self.dom))?;
        let mut out = SparseVec::zero(self.cod);
        for (j, c) in v.iter() {
            out.axpy(c, &self.cols[j]);
        }
        Ok(out)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &LinearMap<F>) -> Result<Self> {
        dims_check(inner.cod == self.dom, || format!("compose {}->{} after {}->{}", self.dom, self.cod, inner.dom, inner.cod))?;
        let cols = inner.cols.iter().map(|c| self.apply(c)).collect::<Result<_>>()?;
        Ok(LinearMap {
            dom: inner.dom,
            cod: self.cod,
            cols,
        })
    }

    pub fn add(&self, other: &LinearMap<F>) -> Result<Self> {
        dims_check(self.dom == other.dom && self.cod == other.cod, || "add with different shapes".into())?;
        Ok(LinearMap {
            dom: self.dom,
            cod: self.cod,
            cols: self.cols.iter().zip(&other.cols).map(|(a, b)| a.plus(b)).collect(),
        })
    }

    pub fn scale(&self, c: &F) -> Self {
        LinearMap {
            dom: self.dom,
            cod: self.cod,
            cols: self.cols.iter().map(|v| v.scaled(c)).collect(),
        }
    }

    /// `self ⊗ other`.
    pub fn tensor(&self, other: &LinearMap<F>) -> Self {
        let mut cols = Vec::with_capacity(self.dom * other.dom);
        for a in &self.cols {
            for b in &other.cols {
                cols.push(a.tensor(b));
            }
        }
        LinearMap {
            dom: self.dom * other.dom,
            cod: self.cod * other.cod,
            cols,
        }
    }

    /// Exact equality; a shape mismatch is an error rather than `false`.
    pub fn map_equal(&self, other: &LinearMap<F>) -> Result<bool> {
        dims_check(self.dom == other.dom && self.cod == other.cod, || "compare maps of different shapes".into())?;
        Ok(self.cols == other.cols)
    }

    /// First column on which the maps differ.
    pub fn first_difference(&self, other: &LinearMap<F>) -> Option<usize> {
        (0..self.dom.min(other.dom)).find(|&j| self.cols[j] != other.cols[j])
    }

    /// Basis image of each column if the map sends basis vectors to basis
    /// vectors or zero.
    pub fn as_basis_map(&self) -> Option<Vec<Option<usize>>> {
        self.cols
            .iter()
            .map(|c| match c.nnz() {
                0 => Some(None),
                1 => {
                    let (i, x) = c.iter().next().unwrap();
                    x.is_one().then_some(Some(i))
                }
                _ => None,
            })
            .collect()
    }

    pub fn is_permutation(&self) -> bool {
        if self.dom != self.cod {
            return false;
        }
        match self.as_basis_map() {
            Some(images) => {
                let mut seen = vec![false; self.cod];
                images
                    .into_iter()
                    .all(|i| matches!(i, Some(i) if !std::mem::replace(&mut seen[i], true)))
            }
            None => false,
        }
    }

    /// Inverse of a permutation matrix.
    pub fn permutation_inverse(&self) -> Option<Self> {
        if !self.is_permutation() {
            return None;
        }
        let images = self.as_basis_map()?;
        let mut inv = vec![0; self.dom];
        for (j, i) in images.into_iter().enumerate() {
            inv[i?] = j;
        }
        Self::basis_map(self.cod, self.dom, |i| Some(inv[i])).ok()
    }

    pub fn rank(&self) -> usize {
        rank(&self.cols, self.cod)
    }
}

/// Rank of a list of vectors in `K^dim` by Gaussian elimination.
pub fn rank<F: Scalar>(vectors: &[SparseVec<F>], dim: usize) -> usize {
    pivot_columns(vectors, dim).len()
}

/// Indices of a maximal linearly independent prefix-greedy subset.
pub fn pivot_columns<F: Scalar>(vectors: &[SparseVec<F>], dim: usize) -> Vec<usize> {
    // Reduced rows keyed by pivot coordinate.
    let mut basis: BTreeMap<usize, SparseVec<F>> = BTreeMap::new();
    let mut pivots = Vec::new();
    for (j, v) in vectors.iter().enumerate() {
        let mut w = v.clone();
        debug_assert_eq!(w.dim(), dim);
        loop {
            let Some((p, c)) = w.iter().find(|(i, _)| basis.contains_key(i)).map(|(i, c)| (i, c.clone())) else {
                break;
            };
            let b = &basis[&p];
            w.axpy(&-c, b);
        }
        let lead = w.iter().next().map(|(i, c)| (i, c.clone()));
        if let Some((p, c)) = lead {
            let w = w.scaled(&c.inv().expect("nonzero pivot"));
            // Keep stored vectors reduced against the new pivot.
            for other in basis.values_mut() {
                let f = other.get(p);
                if !f.is_zero() {
                    other.axpy(&-f, &w);
                }
            }
            basis.insert(p, w);
            pivots.push(j);
        }
    }
    pivots
}

/// Whether two families of vectors span the same subspace.
pub fn same_span<F: Scalar>(a: &[SparseVec<F>], b: &[SparseVec<F>], dim: usize) -> bool {
    let ra = rank(a, dim);
    let rb = rank(b, dim);
    let both: Vec<SparseVec<F>> = a.iter().chain(b).cloned().collect();
    ra == rb && rank(&both, dim) == ra
}

/// `e_(i,j) -> e_(j,i)` from `K^m ⊗ K^n` to `K^n ⊗ K^m`.
pub fn twist<F: Scalar>(m: usize, n: usize) -> Result<LinearMap<F>> {
    dims_check(m > 0 && n > 0, || "twist of a zero-dimensional space".into())?;
    LinearMap::basis_map(m * n, n * m, |k| Some(tensor_index(k % n, k / n, m)))
}

/// Applies `f_1 ⊗ ... ⊗ f_r` to a vector of the domain tensor product without
/// materializing the tensor map.
pub fn apply_tensor<F: Scalar>(factors: &[&LinearMap<F>], v: &SparseVec<F>) -> Result<SparseVec<F>> {
    let dom: usize = factors.iter().map(|f| f.dom()).product();
    let cod: usize = factors.iter().map(|f| f.cod()).product();
    dims_check(v.dim() == dom, || format!("vector of dimension {} into tensor map from {dom}", v.dim()))?;
    let mut out = SparseVec::zero(cod);
    let mut digits = vec![0; factors.len()];
    for (idx, c) in v.iter() {
        let mut rem = idx;
        for (d, f) in digits.iter_mut().zip(factors).rev() {
            *d = rem % f.dom();
            rem /= f.dom();
        }
        let mut acc: Vec<(usize, F)> = vec![(0, c.clone())];
        for (f, &d) in factors.iter().zip(&digits) {
            let col = f.col(d);
            let mut next = Vec::with_capacity(acc.len() * col.nnz());
            for (pos, x) in &acc {
                for (i, y) in col.iter() {
                    next.push((pos * f.cod() + i, x.clone() * y.clone()));
                }
            }
            acc = next;
        }
        for (pos, x) in acc {
            out.add_at(pos, x);
        }
    }
    Ok(out)
}

/// The group-like coalgebra on `K^n`: `δ(e_s) = e_s ⊗ e_s`, `ε(e_s) = 1`.
pub fn free_coalgebra<F: Scalar>(n: usize) -> (LinearMap<F>, LinearMap<F>) {
    let delta = LinearMap::basis_map(n, n * n, |s| Some(tensor_index(s, s, n))).expect("square");
    let eps = LinearMap::basis_map(n, 1, |_| Some(0)).expect("scalar");
    (delta, eps)
}

/// `μ ∘ (f ⊗ g) ∘ δ`.
pub fn convolution<F: Scalar>(
    f: &LinearMap<F>,
    g: &LinearMap<F>,
    delta: &LinearMap<F>,
    mu: &LinearMap<F>,
) -> Result<LinearMap<F>> {
    dims_check(
        f.dom() == g.dom() && f.cod() == g.cod() && delta.dom() == f.dom() && delta.cod() == f.dom() * g.dom(),
        || "convolution factors do not match the coalgebra".into(),
    )?;
    dims_check(mu.dom() == f.cod() * g.cod(), || "convolution product has the wrong domain".into())?;
    LinearMap::from_fn(f.dom(), mu.cod(), |c| {
        let fg = apply_tensor(&[f, g], delta.col(c)).expect("checked dims");
        mu.apply(&fg).expect("checked dims")
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    type Q = Rational;

    fn q(n: i64, d: i64) -> Q {
        Q::new(n.into(), d.into())
    }

    #[test]
    fn rational_strings() {
        assert_eq!(q(6, -4).to_ratio_string(), "-3/2");
        assert_eq!(parse_scalar::<Q>("6/-4"), Some(q(-3, 2)));
        assert_eq!(parse_scalar::<Q>("7"), Some(q(7, 1)));
        assert_eq!(parse_scalar::<Q>("1/0"), None);
        assert_eq!(parse_scalar::<Q>("x"), None);
    }

    #[test]
    fn prime_field() {
        type G = Gf<7>;
        assert_eq!(G::new(3) * G::new(5), G::new(1));
        assert_eq!(G::new(3).inv(), Some(G::new(5)));
        assert_eq!(parse_scalar::<G>("1/2"), Some(G::new(4)));
        assert_eq!(parse_scalar::<G>("-1/1"), Some(G::new(6)));
        assert_eq!(parse_scalar::<G>("1/7"), None);
    }

    #[test]
    fn twist_examples() {
        let t: LinearMap<Q> = twist(2, 2).unwrap();
        assert_eq!(t.as_basis_map().unwrap(), vec![Some(0), Some(2), Some(1), Some(3)]);
        let a: LinearMap<Q> = twist(2, 3).unwrap();
        let b: LinearMap<Q> = twist(3, 2).unwrap();
        assert_eq!(a.compose(&b).unwrap(), LinearMap::identity(6));
        let one: LinearMap<Q> = twist(1, 4).unwrap();
        assert_eq!(one, LinearMap::identity(4));
        assert!(twist::<Q>(0, 2).is_err());
    }

    #[test]
    fn map_algebra() {
        let f = LinearMap::from_fn(2, 3, |j| SparseVec::from_entries(3, [(j, q(2, 3)), (2, q(1, 1))])).unwrap();
        assert_eq!(LinearMap::identity(3).compose(&f).unwrap(), f);
        assert_eq!(f.add(&f.scale(&q(-1, 1))).unwrap(), LinearMap::zero(2, 3));
        assert_eq!(
            LinearMap::<Q>::identity(2).tensor(&LinearMap::identity(3)),
            LinearMap::identity(6)
        );
        assert!(f.compose(&f).is_err());
        assert!(f.map_equal(&LinearMap::identity(2)).is_err());
    }

    #[test]
    fn apply_tensor_matches_materialized() {
        let f = LinearMap::from_fn(2, 2, |j| SparseVec::from_entries(2, [(0, q(1, 1)), (1, q(j as i64 + 1, 2))])).unwrap();
        let g: LinearMap<Q> = twist(2, 2).unwrap();
        let h = LinearMap::<Q>::identity(3);
        let full = f.tensor(&g).tensor(&h);
        for i in 0..full.dom() {
            let v = SparseVec::basis(full.dom(), i);
            assert_eq!(apply_tensor(&[&f, &g, &h], &v).unwrap(), full.apply(&v).unwrap());
        }
    }

    #[test]
    fn free_coalgebra_laws() {
        for n in [1, 4] {
            let (d, e) = free_coalgebra::<Q>(n);
            let id = LinearMap::identity(n);
            let lhs = e.tensor(&id).compose(&d).unwrap();
            let rhs = id.tensor(&e).compose(&d).unwrap();
            assert_eq!(lhs, id);
            assert_eq!(rhs, id);
            let a = d.tensor(&id).compose(&d).unwrap();
            let b = id.tensor(&d).compose(&d).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn rank_and_span() {
        let v = |e: &[(usize, i64)]| SparseVec::from_entries(3, e.iter().map(|&(i, c)| (i, q(c, 1))));
        let a = vec![v(&[(0, 1), (1, 1)]), v(&[(1, 1)]), v(&[(0, 2)])];
        assert_eq!(rank(&a, 3), 2);
        assert_eq!(pivot_columns(&a, 3), vec![0, 1]);
        let b = vec![v(&[(0, 1)]), v(&[(1, -3)])];
        assert!(same_span(&a, &b, 3));
        assert!(!same_span(&a, &[v(&[(2, 1)])], 3));
    }

    #[test]
    fn permutation_inverse() {
        let p: LinearMap<Q> = twist(2, 3).unwrap();
        let inv = p.permutation_inverse().unwrap();
        assert_eq!(inv.compose(&p).unwrap(), LinearMap::identity(6));
        assert!(LinearMap::<Q>::zero(2, 2).permutation_inverse().is_none());
    }
}
