//! Weak Hopf quasigroups given by structure constants.
//!
//! A [`MagmaCoalgebra`] is a unital magma and a coalgebra on `K^n` with a
//! candidate antipode. [`check_whq`] verifies the weak Hopf quasigroup
//! axioms on basis elements, which is complete by linearity.

use std::fmt;
use std::sync::OnceLock;

use crate::linalg::{convolution, pivot_columns, same_span, tensor_index, twist, LinearMap, Scalar, SparseVec};
use crate::quasigroupoid::{QgpdMorphism, Quasigroupoid};
use crate::report::{Recorder, StructureReport};
use crate::{Error, Result};

/// Unit, product, counit, coproduct and antipode on `K^n`.
#[derive(Clone)]
pub struct MagmaCoalgebra<F: Scalar> {
    dim: usize,
    unit: SparseVec<F>,
    mu: LinearMap<F>,
    eps: LinearMap<F>,
    delta: LinearMap<F>,
    lambda: LinearMap<F>,
    projections: OnceLock<Projections<F>>,
    validity: OnceLock<Result<WhqReport<F>>>,
}

impl<F: Scalar> fmt::Debug for MagmaCoalgebra<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MagmaCoalgebra")
            .field("dim", &self.dim)
            .field("unit", &self.unit)
            .field("mu", &self.mu)
            .field("eps", &self.eps)
            .field("delta", &self.delta)
            .field("lambda", &self.lambda)
            .finish()
    }
}

impl<F: Scalar> PartialEq for MagmaCoalgebra<F> {
    fn eq(&self, o: &Self) -> bool {
        self.unit == o.unit && self.mu == o.mu && self.eps == o.eps && self.delta == o.delta && self.lambda == o.lambda
    }
}

fn dims(ok: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::DimensionMismatch(msg()))
    }
}

impl<F: Scalar> MagmaCoalgebra<F> {
    /// Checks shapes only; the magma and coalgebra laws are checked by
    /// [`check_whq`].
    pub fn new(
        unit: SparseVec<F>,
        mu: LinearMap<F>,
        eps: LinearMap<F>,
        delta: LinearMap<F>,
        lambda: LinearMap<F>,
    ) -> Result<Self> {
        let n = unit.dim();
        dims(n > 0, || "zero-dimensional space".into())?;
        dims(mu.dom() == n * n && mu.cod() == n, || format!("product must map {} to {n}", n * n))?;
        dims(eps.dom() == n && eps.cod() == 1, || format!("counit must map {n} to 1"))?;
        dims(delta.dom() == n && delta.cod() == n * n, || format!("coproduct must map {n} to {}", n * n))?;
        dims(lambda.dom() == n && lambda.cod() == n, || format!("antipode must map {n} to {n}"))?;
        Ok(MagmaCoalgebra {
            dim: n,
            unit,
            mu,
            eps,
            delta,
            lambda,
            projections: OnceLock::new(),
            validity: OnceLock::new(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &SparseVec<F> {
        &self.unit
    }

    pub fn mu(&self) -> &LinearMap<F> {
        &self.mu
    }

    pub fn eps(&self) -> &LinearMap<F> {
        &self.eps
    }

    pub fn delta(&self) -> &LinearMap<F> {
        &self.delta
    }

    pub fn lambda(&self) -> &LinearMap<F> {
        &self.lambda
    }

    /// Same data with the product replaced.
    pub fn with_product(&self, mu: LinearMap<F>) -> Result<Self> {
        Self::new(self.unit.clone(), mu, self.eps.clone(), self.delta.clone(), self.lambda.clone())
    }

    /// Same data with the antipode replaced.
    pub fn with_antipode(&self, lambda: LinearMap<F>) -> Result<Self> {
        Self::new(self.unit.clone(), self.mu.clone(), self.eps.clone(), self.delta.clone(), lambda)
    }

    pub fn with_unit(&self, unit: SparseVec<F>) -> Result<Self> {
        Self::new(unit, self.mu.clone(), self.eps.clone(), self.delta.clone(), self.lambda.clone())
    }

    pub fn with_coalgebra(&self, eps: LinearMap<F>, delta: LinearMap<F>) -> Result<Self> {
        Self::new(self.unit.clone(), self.mu.clone(), eps, delta, self.lambda.clone())
    }

    /// `e_i e_j`.
    pub fn mul_basis(&self, i: usize, j: usize) -> &SparseVec<F> {
        self.mu.col(tensor_index(i, j, self.dim))
    }

    /// Bilinear extension of the product.
    pub fn mul(&self, u: &SparseVec<F>, v: &SparseVec<F>) -> SparseVec<F> {
        let mut out = SparseVec::zero(self.dim);
        for (i, a) in u.iter() {
            for (j, b) in v.iter() {
                out.axpy(&(a.clone() * b.clone()), self.mul_basis(i, j));
            }
        }
        out
    }

    pub fn counit(&self, v: &SparseVec<F>) -> F {
        v.iter()
            .fold(F::zero(), |acc, (i, c)| acc + c.clone() * self.eps.entry(0, i))
    }

    /// `δ(e_i)` as `(p, q, c)` triples meaning `c e_p ⊗ e_q`.
    pub fn coproduct_terms(&self, i: usize) -> Vec<(usize, usize, F)> {
        split(self.delta.col(i), self.dim)
    }

    /// `δ(1)` as `(p, q, c)` triples.
    pub fn unit_coproduct(&self) -> Vec<(usize, usize, F)> {
        split(&self.delta.apply(&self.unit).expect("shape checked"), self.dim)
    }

    /// `ε(e_i e_j)` for all basis pairs, row-major.
    fn counit_table(&self) -> Vec<F> {
        (0..self.dim * self.dim).map(|k| self.counit(self.mu.col(k))).collect()
    }

    fn basis(&self, i: usize) -> SparseVec<F> {
        SparseVec::basis(self.dim, i)
    }

    /// Target, source and barred projections, computed without validation.
    pub fn projections_unchecked(&self) -> &Projections<F> {
        self.projections.get_or_init(|| compute_projections(self))
    }
}

fn split<F: Scalar>(v: &SparseVec<F>, n: usize) -> Vec<(usize, usize, F)> {
    v.iter().map(|(k, c)| (k / n, k % n, c.clone())).collect()
}

/// `Π^L = id∗λ`, `Π^R = λ∗id` and the barred maps from the unit coproduct.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Projections<F: Scalar> {
    pub pi_l: LinearMap<F>,
    pub pi_r: LinearMap<F>,
    pub pibar_l: LinearMap<F>,
    pub pibar_r: LinearMap<F>,
    /// `ε(1_(1) h) 1_(2)`, to be compared with `pi_l`.
    pub pi_l_unit_form: LinearMap<F>,
    /// `ε(h 1_(2)) 1_(1)`, to be compared with `pi_r`.
    pub pi_r_unit_form: LinearMap<F>,
}

fn compute_projections<F: Scalar>(d: &MagmaCoalgebra<F>) -> Projections<F> {
    let n = d.dim;
    let id = LinearMap::identity(n);
    let pi_l = convolution(&id, &d.lambda, &d.delta, &d.mu).expect("shape checked");
    let pi_r = convolution(&d.lambda, &id, &d.delta, &d.mu).expect("shape checked");
    let e = d.counit_table();
    let one = d.unit_coproduct();
    // `coef(i, j, h)` weighs the term `c e_i ⊗ e_j` of δ(1); `keep_first`
    // picks the tensor leg that survives.
    let form = |coef: &dyn Fn(usize, usize, usize) -> F, keep_first: bool| {
        LinearMap::from_fn(n, n, |h| {
            let mut v = SparseVec::zero(n);
            for (i, j, c) in &one {
                let k = if keep_first { *i } else { *j };
                v.add_at(k, c.clone() * coef(*i, *j, h));
            }
            v
        })
        .expect("square")
    };
    let em = |a: usize, b: usize| e[a * n + b].clone();
    Projections {
        pi_l_unit_form: form(&|i, _, h| em(i, h), false),
        pi_r_unit_form: form(&|_, j, h| em(h, j), true),
        pibar_l: form(&|_, j, h| em(j, h), true),
        pibar_r: form(&|i, _, h| em(h, i), false),
        pi_l,
        pi_r,
    }
}

/// Outcome of [`check_whq`] with the projections it used.
#[derive(Clone, Debug, PartialEq)]
pub struct WhqReport<F: Scalar> {
    pub report: StructureReport,
    pub projections: Projections<F>,
}

impl<F: Scalar> WhqReport<F> {
    pub fn is_pass(&self) -> bool {
        self.report.is_pass()
    }
}

fn vec_case<F: Scalar>(c: &mut Recorder<'_>, lhs: &SparseVec<F>, rhs: &SparseVec<F>, witness: &[usize]) {
    c.case(lhs == rhs, witness, || format!("lhs={lhs} rhs={rhs}"));
}

fn map_cols<F: Scalar>(c: &mut Recorder<'_>, lhs: &LinearMap<F>, rhs: &LinearMap<F>) {
    for j in 0..lhs.dom() {
        vec_case(c, lhs.col(j), rhs.col(j), &[j]);
    }
}

/// Unit laws, coassociativity and counit laws.
pub fn check_preconditions<F: Scalar>(d: &MagmaCoalgebra<F>) -> StructureReport {
    let n = d.dim;
    let mut report = StructureReport::new("magma coalgebra");
    let mut c = report.check("unit-left");
    for k in 0..n {
        vec_case(&mut c, &d.mul(&d.unit, &d.basis(k)), &d.basis(k), &[k]);
    }
    let mut c = report.check("unit-right");
    for k in 0..n {
        vec_case(&mut c, &d.mul(&d.basis(k), &d.unit), &d.basis(k), &[k]);
    }
    let id = LinearMap::identity(n);
    let mut c = report.check("coalg1");
    for k in 0..n {
        let dk = d.delta.col(k);
        let l = crate::linalg::apply_tensor(&[&d.delta, &id], dk).expect("shape");
        let r = crate::linalg::apply_tensor(&[&id, &d.delta], dk).expect("shape");
        vec_case(&mut c, &l, &r, &[k]);
    }
    let mut c = report.check("coalg2");
    for k in 0..n {
        let dk = d.delta.col(k);
        let l = crate::linalg::apply_tensor(&[&d.eps, &id], dk).expect("shape");
        let r = crate::linalg::apply_tensor(&[&id, &d.eps], dk).expect("shape");
        vec_case(&mut c, &l, &d.basis(k), &[k]);
        vec_case(&mut c, &r, &d.basis(k), &[k]);
    }
    report
}

/// Verifies (d1)-(d3) and (d4-1)-(d4-7) in that order, always running all of
/// them. Fails with [`Error::PreconditionFailed`] if the unit or coalgebra
/// laws do not hold.
pub fn check_whq<F: Scalar>(d: &MagmaCoalgebra<F>) -> Result<WhqReport<F>> {
    d.validity.get_or_init(|| run_check_whq(d)).clone()
}

fn run_check_whq<F: Scalar>(d: &MagmaCoalgebra<F>) -> Result<WhqReport<F>> {
    let pre = check_preconditions(d);
    if !pre.is_pass() {
        return Err(Error::PreconditionFailed(pre));
    }
    let n = d.dim;
    let p = d.projections_unchecked().clone();
    let mut report = StructureReport::new("weak Hopf quasigroup");

    let deltas: Vec<Vec<(usize, usize, F)>> = (0..n).map(|i| d.coproduct_terms(i)).collect();

    let mut c = report.check("d1");
    for h in 0..n {
        for k in 0..n {
            let lhs = d.delta.apply(d.mul_basis(h, k)).expect("shape");
            let mut rhs = SparseVec::zero(n * n);
            for (p1, q1, c1) in &deltas[h] {
                for (p2, q2, c2) in &deltas[k] {
                    let t = d.mul_basis(*p1, *p2).tensor(d.mul_basis(*q1, *q2));
                    rhs.axpy(&(c1.clone() * c2.clone()), &t);
                }
            }
            vec_case(&mut c, &lhs, &rhs, &[h, k]);
        }
    }

    let e = d.counit_table();
    let em = |a: usize, b: usize| &e[a * n + b];
    let mut c = report.check("d2");
    for h in 0..n {
        for k in 0..n {
            let hk = d.mul_basis(h, k);
            for l in 0..n {
                let v1 = hk.iter().fold(F::zero(), |acc, (i, x)| acc + x.clone() * em(i, l).clone());
                let v2 = d
                    .mul_basis(k, l)
                    .iter()
                    .fold(F::zero(), |acc, (j, x)| acc + x.clone() * em(h, j).clone());
                let mut v3 = F::zero();
                let mut v4 = F::zero();
                for (a, b, x) in &deltas[k] {
                    v3 = v3 + x.clone() * em(h, *a).clone() * em(*b, l).clone();
                    v4 = v4 + x.clone() * em(h, *b).clone() * em(*a, l).clone();
                }
                let ok = v1 == v2 && v1 == v3 && v1 == v4;
                c.case(ok, &[h, k, l], || format!("values {v1}, {v2}, {v3}, {v4}"));
            }
        }
    }

    let one = d.unit_coproduct();
    let mut c = report.check("d3");
    {
        let mut lhs = SparseVec::zero(n * n * n);
        for (i, j, x) in &one {
            lhs.axpy(x, &d.delta.col(*i).tensor(&d.basis(*j)));
        }
        let mut mid = SparseVec::zero(n * n * n);
        let mut swapped = SparseVec::zero(n * n * n);
        for (i, j, x) in &one {
            for (k, l, y) in &one {
                let xy = x.clone() * y.clone();
                let ei = d.basis(*i);
                let el = d.basis(*l);
                mid.axpy(&xy, &ei.tensor(d.mul_basis(*j, *k)).tensor(&el));
                swapped.axpy(&xy, &ei.tensor(d.mul_basis(*k, *j)).tensor(&el));
            }
        }
        for (form, rhs) in [("product form", &mid), ("twisted form", &swapped)] {
            let diff = lhs.minus(rhs);
            let w = diff.iter().next().map(|(k, _)| vec![k / (n * n), k / n % n, k % n]);
            let w = w.unwrap_or_default();
            c.case(diff.is_zero(), &w, || {
                let k = tensor_index(tensor_index(w[0], w[1], n), w[2], n);
                format!("{form}: coefficient {} against {}", lhs.get(k), rhs.get(k))
            });
        }
    }

    let mut c = report.check("d4-1");
    map_cols(&mut c, &p.pi_l, &p.pi_l_unit_form);
    let mut c = report.check("d4-2");
    map_cols(&mut c, &p.pi_r, &p.pi_r_unit_form);

    let lam_pil = convolution(&d.lambda, &p.pi_l, &d.delta, &d.mu).expect("shape");
    let pir_lam = convolution(&p.pi_r, &d.lambda, &d.delta, &d.mu).expect("shape");
    let mut c = report.check("d4-3");
    for h in 0..n {
        for (form, rhs) in [("lambda*PiL", lam_pil.col(h)), ("PiR*lambda", pir_lam.col(h))] {
            let lhs = d.lambda.col(h);
            c.case(lhs == rhs, &[h], || format!("{form}: lhs={lhs} rhs={rhs}"));
        }
    }

    let lam = |i: usize| d.lambda.col(i);
    let sum = |terms: &[(usize, usize, F)], f: &dyn Fn(usize, usize) -> SparseVec<F>| {
        let mut v = SparseVec::zero(n);
        for (a, b, x) in terms {
            v.axpy(x, &f(*a, *b));
        }
        v
    };
    let mut c = report.check("d4-4");
    for h in 0..n {
        for k in 0..n {
            let lhs = sum(&deltas[h], &|a, b| d.mul(lam(a), d.mul_basis(b, k)));
            let rhs = d.mul(p.pi_r.col(h), &d.basis(k));
            vec_case(&mut c, &lhs, &rhs, &[h, k]);
        }
    }
    let mut c = report.check("d4-5");
    for h in 0..n {
        for k in 0..n {
            let lhs = sum(&deltas[h], &|a, b| d.mul(&d.basis(a), &d.mul(lam(b), &d.basis(k))));
            let rhs = d.mul(p.pi_l.col(h), &d.basis(k));
            vec_case(&mut c, &lhs, &rhs, &[h, k]);
        }
    }
    let mut c = report.check("d4-6");
    for h in 0..n {
        for k in 0..n {
            let lhs = sum(&deltas[k], &|a, b| d.mul(d.mul_basis(h, a), lam(b)));
            let rhs = d.mul(&d.basis(h), p.pi_l.col(k));
            vec_case(&mut c, &lhs, &rhs, &[h, k]);
        }
    }
    let mut c = report.check("d4-7");
    for h in 0..n {
        for k in 0..n {
            let lhs = sum(&deltas[k], &|a, b| d.mul(&d.mul(&d.basis(h), lam(a)), &d.basis(b)));
            let rhs = d.mul(&d.basis(h), p.pi_r.col(k));
            vec_case(&mut c, &lhs, &rhs, &[h, k]);
        }
    }

    Ok(WhqReport {
        report,
        projections: p,
    })
}

fn require_whq<F: Scalar>(d: &MagmaCoalgebra<F>) -> Result<()> {
    match check_whq(d) {
        Ok(r) if r.is_pass() => Ok(()),
        Ok(r) => Err(Error::NotWhq(r.report)),
        Err(Error::PreconditionFailed(r)) => Err(Error::NotWhq(r)),
        Err(e) => Err(e),
    }
}

/// The four projections of a valid weak Hopf quasigroup.
pub fn projections<F: Scalar>(d: &MagmaCoalgebra<F>) -> Result<Projections<F>> {
    require_whq(d)?;
    Ok(d.projections_unchecked().clone())
}

/// The identities every weak Hopf quasigroup satisfies, checked on basis
/// elements. Meant to pass for valid input; a failure points at a bug.
pub fn derived_property_suite<F: Scalar>(d: &MagmaCoalgebra<F>) -> StructureReport {
    let n = d.dim;
    let p = d.projections_unchecked();
    let id = LinearMap::identity(n);
    let conv = |f: &LinearMap<F>, g: &LinearMap<F>| convolution(f, g, &d.delta, &d.mu).expect("shape");
    let mut report = StructureReport::new("weak Hopf quasigroup properties");

    let mut c = report.check("PiL*id=id");
    map_cols(&mut c, &conv(&p.pi_l, &id), &id);
    let mut c = report.check("id*PiR=id");
    map_cols(&mut c, &conv(&id, &p.pi_r), &id);

    let projs = [("PiL", &p.pi_l), ("PiR", &p.pi_r), ("PiBarL", &p.pibar_l), ("PiBarR", &p.pibar_r)];
    for (name, m) in projs {
        let mut c = report.check(format!("{name}(1)=1"));
        vec_case(&mut c, &m.apply(&d.unit).expect("shape"), &d.unit, &[]);
    }
    for (name, m) in projs {
        let mut c = report.check(format!("eps.{name}=eps"));
        for j in 0..n {
            c.eq(d.counit(m.col(j)), d.eps.entry(0, j), &[j]);
        }
    }
    let mut c = report.check("lambda(1)=1");
    vec_case(&mut c, &d.lambda.apply(&d.unit).expect("shape"), &d.unit, &[]);
    let mut c = report.check("eps.lambda=eps");
    for j in 0..n {
        c.eq(d.counit(d.lambda.col(j)), d.eps.entry(0, j), &[j]);
    }

    let mut c = report.check("antimultiplicative");
    for h in 0..n {
        for g in 0..n {
            let lhs = d.lambda.apply(d.mul_basis(h, g)).expect("shape");
            let rhs = d.mul(d.lambda.col(g), d.lambda.col(h));
            vec_case(&mut c, &lhs, &rhs, &[h, g]);
        }
    }
    let tw = twist::<F>(n, n).expect("positive");
    let mut c = report.check("anticomultiplicative");
    for h in 0..n {
        let lhs = d.delta.apply(d.lambda.col(h)).expect("shape");
        let swapped = tw.apply(d.delta.col(h)).expect("shape");
        let rhs = crate::linalg::apply_tensor(&[&d.lambda, &d.lambda], &swapped).expect("shape");
        vec_case(&mut c, &lhs, &rhs, &[h]);
    }

    let mut c = report.check("PiL*PiL=PiL");
    map_cols(&mut c, &conv(&p.pi_l, &p.pi_l), &p.pi_l);
    let mut c = report.check("PiR*PiR=PiR");
    map_cols(&mut c, &conv(&p.pi_r, &p.pi_r), &p.pi_r);
    for (name, m) in projs {
        let mut c = report.check(format!("{name}-idempotent"));
        map_cols(&mut c, &m.compose(m).expect("square"), m);
    }

    let cols = |m: &LinearMap<F>| (0..n).map(|j| m.col(j).clone()).collect::<Vec<_>>();
    let mut c = report.check("image(PiBarL)=image(PiR)");
    c.case(same_span(&cols(&p.pibar_l), &cols(&p.pi_r), n), &[], || "column spaces differ".into());
    let mut c = report.check("image(PiBarR)=image(PiL)");
    c.case(same_span(&cols(&p.pibar_r), &cols(&p.pi_l), n), &[], || "column spaces differ".into());

    for (name, m) in [("DL", &p.pi_l), ("DR", &p.pi_r)] {
        let span = cols(m);
        let pivots = pivot_columns(&span, n);
        let laws: [(&str, fn(&MagmaCoalgebra<F>, &SparseVec<F>, &SparseVec<F>, &SparseVec<F>) -> bool); 3] = [
            ("(hk)l=h(kl)", |d, h, k, l| d.mul(&d.mul(h, k), l) == d.mul(h, &d.mul(k, l))),
            ("k(hl)=(kh)l", |d, h, k, l| d.mul(k, &d.mul(h, l)) == d.mul(&d.mul(k, h), l)),
            ("k(lh)=(kl)h", |d, h, k, l| d.mul(k, &d.mul(l, h)) == d.mul(&d.mul(k, l), h)),
        ];
        for (law, holds) in laws {
            let mut c = report.check(format!("{name}:{law}"));
            for &j in &pivots {
                for k in 0..n {
                    for l in 0..n {
                        let ok = holds(d, &span[j], &d.basis(k), &d.basis(l));
                        c.case(ok, &[j, k, l], || format!("fails for h = {}", span[j]));
                    }
                }
            }
        }
    }

    if cocommutative(d) {
        let mut c = report.check("cocommutative:PiBarL=PiL");
        map_cols(&mut c, &p.pibar_l, &p.pi_l);
        let mut c = report.check("cocommutative:PiBarR=PiR");
        map_cols(&mut c, &p.pibar_r, &p.pi_r);
    }
    report
}

fn cocommutative<F: Scalar>(d: &MagmaCoalgebra<F>) -> bool {
    let tw = twist::<F>(d.dim, d.dim).expect("positive");
    tw.compose(&d.delta).expect("shape") == d.delta
}

/// `K[B]`: basis the arrows, `μ(a⊗b) = a•b` or zero, `1 = Σ id(x)`,
/// group-like coalgebra, `λ(b) = λ_B(b)`.
pub fn magma_of_quasigroupoid<F: Scalar>(b: &Quasigroupoid) -> MagmaCoalgebra<F> {
    let n = b.arrows();
    let unit = SparseVec::from_entries(n, (0..b.objects()).map(|x| (b.id(x), F::one())));
    let mu = LinearMap::basis_map(n * n, n, |k| b.prod(k / n, k % n)).expect("ranges");
    let (delta, eps) = crate::linalg::free_coalgebra(n);
    let lambda = LinearMap::basis_map(n, n, |a| Some(b.inv(a))).expect("ranges");
    MagmaCoalgebra::new(unit, mu, eps, delta, lambda).expect("shapes")
}

fn nabla_unchecked<F: Scalar>(d: &MagmaCoalgebra<F>) -> LinearMap<F> {
    let n = d.dim;
    let pi_r = &d.projections_unchecked().pi_r;
    LinearMap::from_fn(n * n, n * n, |idx| {
        let (h, k) = (idx / n, idx % n);
        let mut v = SparseVec::zero(n * n);
        for (a, b, x) in d.coproduct_terms(h) {
            let right = d.mul(pi_r.col(b), &d.basis(k));
            v.axpy(&x, &d.basis(a).tensor(&right));
        }
        v
    })
    .expect("square")
}

/// `∇(h⊗k) = h_(1) ⊗ Π^R(h_(2)) k`.
pub fn nabla<F: Scalar>(d: &MagmaCoalgebra<F>) -> Result<LinearMap<F>> {
    require_whq(d)?;
    Ok(nabla_unchecked(d))
}

/// Coalgebra-morphism laws and (mkl1)-(mkl4) for `f: D → D'`.
///
/// Also records, without deciding the outcome, whether `f` is multiplicative
/// without `∇` (tag `multiplicative`).
pub fn check_whq_morphism<F: Scalar>(
    f: &LinearMap<F>,
    d: &MagmaCoalgebra<F>,
    d2: &MagmaCoalgebra<F>,
) -> Result<StructureReport> {
    dims(f.dom() == d.dim && f.cod() == d2.dim, || {
        format!("map {}→{} between spaces {} and {}", f.dom(), f.cod(), d.dim, d2.dim)
    })?;
    let (n, m) = (d.dim, d2.dim);
    let (p, q) = (d.projections_unchecked(), d2.projections_unchecked());
    let after = |g: &LinearMap<F>| g.compose(f).expect("shape");
    let before = |g: &LinearMap<F>| f.compose(g).expect("shape");
    let mut report = StructureReport::new("weak Hopf quasigroup morphism");

    let mut c = report.check("coalg-counit");
    for j in 0..n {
        c.eq(d2.counit(f.col(j)), d.eps.entry(0, j), &[j]);
    }
    let mut c = report.check("coalg-comul");
    for j in 0..n {
        let lhs = d2.delta.apply(f.col(j)).expect("shape");
        let rhs = crate::linalg::apply_tensor(&[f, f], d.delta.col(j)).expect("shape");
        vec_case(&mut c, &lhs, &rhs, &[j]);
    }
    let mut c = report.check("mkl1");
    map_cols(&mut c, &after(&q.pi_r), &before(&p.pi_r));
    let mut c = report.check("mkl2");
    map_cols(&mut c, &after(&q.pibar_l), &before(&p.pibar_l));
    let mut c = report.check("mkl3");
    let lhs = q.pi_r.compose(&q.pi_l).expect("shape");
    let rhs = p.pi_r.compose(&p.pi_l).expect("shape");
    map_cols(&mut c, &after(&lhs), &before(&rhs));

    let nab = nabla_unchecked(d);
    let mut c = report.check("mkl4");
    for i in 0..n {
        for j in 0..n {
            let k = tensor_index(i, j, n);
            let lhs = f.apply(d.mu.col(k)).expect("shape");
            let ff = crate::linalg::apply_tensor(&[f, f], nab.col(k)).expect("shape");
            let rhs = d2.mu.apply(&ff).expect("shape");
            vec_case(&mut c, &lhs, &rhs, &[i, j]);
        }
    }
    let mut c = report.record("multiplicative");
    for i in 0..n {
        for j in 0..n {
            let lhs = f.apply(d.mul_basis(i, j)).expect("shape");
            let rhs = d2.mul(f.col(i), f.col(j));
            vec_case(&mut c, &lhs, &rhs, &[i, j]);
        }
    }
    debug_assert_eq!(m, f.cod());
    Ok(report)
}

/// `K[Γ]`, the linear extension of the arrow map of a valid morphism.
pub fn magma_functor<F: Scalar>(g: &QgpdMorphism) -> Result<LinearMap<F>> {
    let r = g.check();
    if !r.is_pass() {
        return Err(Error::InvalidMorphism(r));
    }
    let map = g.arrow_map();
    LinearMap::basis_map(map.len(), g.target().arrows(), |a| Some(map[a]))
}

/// Whether the counit and coproduct are morphisms of unital magmas.
pub fn hopf_report<F: Scalar>(d: &MagmaCoalgebra<F>) -> StructureReport {
    let n = d.dim;
    let e = d.counit_table();
    let mut report = StructureReport::new("Hopf quasigroup");
    let mut c = report.check("counit-multiplicative");
    for h in 0..n {
        for k in 0..n {
            let rhs = d.eps.entry(0, h) * d.eps.entry(0, k);
            c.eq(e[h * n + k].clone(), rhs, &[h, k]);
        }
    }
    let mut c = report.check("counit-unit");
    c.eq(d.counit(&d.unit), F::one(), &[]);
    let mut c = report.check("coproduct-multiplicative");
    for h in 0..n {
        for k in 0..n {
            let lhs = d.delta.apply(d.mul_basis(h, k)).expect("shape");
            let mut rhs = SparseVec::zero(n * n);
            for (a, b, x) in d.coproduct_terms(h) {
                for (p, q, y) in d.coproduct_terms(k) {
                    rhs.axpy(&(x.clone() * y), &d.mul_basis(a, p).tensor(d.mul_basis(b, q)));
                }
            }
            vec_case(&mut c, &lhs, &rhs, &[h, k]);
        }
    }
    let mut c = report.check("coproduct-unit");
    let lhs = d.delta.apply(&d.unit).expect("shape");
    vec_case(&mut c, &lhs, &d.unit.tensor(&d.unit), &[]);
    report
}

/// Morphism of Hopf quasigroups: a coalgebra morphism preserving unit,
/// product and antipode.
pub fn check_hopf_morphism<F: Scalar>(
    f: &LinearMap<F>,
    d: &MagmaCoalgebra<F>,
    d2: &MagmaCoalgebra<F>,
) -> Result<StructureReport> {
    dims(f.dom() == d.dim && f.cod() == d2.dim, || {
        format!("map {}→{} between spaces {} and {}", f.dom(), f.cod(), d.dim, d2.dim)
    })?;
    let n = d.dim;
    let mut report = StructureReport::new("Hopf quasigroup morphism");
    let mut c = report.check("coalg-counit");
    for j in 0..n {
        c.eq(d2.counit(f.col(j)), d.eps.entry(0, j), &[j]);
    }
    let mut c = report.check("coalg-comul");
    for j in 0..n {
        let lhs = d2.delta.apply(f.col(j)).expect("shape");
        let rhs = crate::linalg::apply_tensor(&[f, f], d.delta.col(j)).expect("shape");
        vec_case(&mut c, &lhs, &rhs, &[j]);
    }
    let mut c = report.check("unit");
    vec_case(&mut c, &f.apply(&d.unit).expect("shape"), &d2.unit, &[]);
    let mut c = report.check("multiplicative");
    for i in 0..n {
        for j in 0..n {
            let lhs = f.apply(d.mul_basis(i, j)).expect("shape");
            vec_case(&mut c, &lhs, &d2.mul(f.col(i), f.col(j)), &[i, j]);
        }
    }
    let mut c = report.check("antipode");
    map_cols(&mut c, &f.compose(&d.lambda).expect("shape"), &d2.lambda.compose(f).expect("shape"));
    Ok(report)
}

pub fn is_hopf_quasigroup<F: Scalar>(d: &MagmaCoalgebra<F>) -> Result<bool> {
    require_whq(d)?;
    Ok(hopf_report(d).is_pass())
}

/// `c ∘ δ = δ`.
pub fn is_cocommutative<F: Scalar>(d: &MagmaCoalgebra<F>) -> Result<bool> {
    require_whq(d)?;
    Ok(cocommutative(d))
}

/// First basis pair with `e_h e_k != e_k e_h`.
pub fn commutativity_witness<F: Scalar>(d: &MagmaCoalgebra<F>) -> Option<(usize, usize)> {
    let n = d.dim;
    (0..n)
        .flat_map(|h| (h + 1..n).map(move |k| (h, k)))
        .find(|&(h, k)| d.mul_basis(h, k) != d.mul_basis(k, h))
}

/// `μ ∘ c = μ`.
pub fn is_commutative<F: Scalar>(d: &MagmaCoalgebra<F>) -> Result<bool> {
    require_whq(d)?;
    Ok(commutativity_witness(d).is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Rational;
    use crate::quasigroup::stock;
    use crate::quasigroupoid::{coarse_groupoid, discrete_groupoid, quasigroup_as_quasigroupoid};
    use num::One;

    type Q = Rational;

    fn magma(b: &Quasigroupoid) -> MagmaCoalgebra<Q> {
        magma_of_quasigroupoid(b)
    }

    #[test]
    fn magmas_pass() {
        for b in [
            discrete_groupoid(2).unwrap(),
            coarse_groupoid(2).unwrap(),
            coarse_groupoid(3).unwrap(),
            quasigroup_as_quasigroupoid(&stock::m_s3_2()),
        ] {
            let d = magma(&b);
            let r = check_whq(&d).unwrap();
            assert!(r.is_pass(), "{}", r.report);
            let s = derived_property_suite(&d);
            assert!(s.is_pass(), "{s}");
            assert!(is_cocommutative(&d).unwrap());
            let p = projections(&d).unwrap();
            for a in 0..b.arrows() {
                assert_eq!(p.pi_l.col(a), &SparseVec::basis(b.arrows(), b.id(b.tgt(a))));
                assert_eq!(p.pi_r.col(a), &SparseVec::basis(b.arrows(), b.id(b.src(a))));
            }
        }
    }

    #[test]
    fn discrete_two_example() {
        let d = magma(&discrete_groupoid(2).unwrap());
        assert_eq!(d.unit(), &SparseVec::from_entries(2, [(0, Q::one()), (1, Q::one())]));
        assert_eq!(projections(&d).unwrap().pi_l, LinearMap::identity(2));
        assert!(!is_hopf_quasigroup(&d).unwrap());
    }

    #[test]
    fn hopf_and_commutativity() {
        let ms = magma(&quasigroup_as_quasigroupoid(&stock::m_s3_2()));
        assert!(is_hopf_quasigroup(&ms).unwrap());
        assert!(!is_commutative(&ms).unwrap());
        assert!(commutativity_witness(&ms).is_some());
        let z2 = magma(&quasigroup_as_quasigroupoid(&stock::cyclic(2)));
        assert!(is_hopf_quasigroup(&z2).unwrap());
        assert!(is_commutative(&z2).unwrap());
        assert_eq!(nabla(&z2).unwrap(), LinearMap::identity(4));
    }

    #[test]
    fn nabla_on_coarse() {
        let b = coarse_groupoid(2).unwrap();
        let d = magma(&b);
        let nab = nabla(&d).unwrap();
        assert_eq!(nab.compose(&nab).unwrap(), nab);
        for x in 0..4 {
            for y in 0..4 {
                let expect = if b.composable(x, y) {
                    SparseVec::basis(16, tensor_index(x, y, 4))
                } else {
                    SparseVec::zero(16)
                };
                assert_eq!(nab.col(tensor_index(x, y, 4)), &expect);
            }
        }
    }

    #[test]
    fn corrupted_antipode_fails() {
        let d = magma(&coarse_groupoid(2).unwrap());
        let bad = d.with_antipode(LinearMap::basis_map(4, 4, |a| Some([0, 1, 2, 3][a])).unwrap()).unwrap();
        let r = check_whq(&bad).unwrap();
        assert!(!r.is_pass());
        assert!(!r.report.violations_of("d4-4").is_empty() || !r.report.violations_of("d4-3").is_empty());
    }

    #[test]
    fn preconditions_short_circuit() {
        let d = magma(&discrete_groupoid(2).unwrap());
        let bad = d.with_unit(SparseVec::basis(2, 0)).unwrap();
        match check_whq(&bad) {
            Err(Error::PreconditionFailed(r)) => assert!(!r.violations_of("unit-left").is_empty()),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn identity_and_functor_morphisms() {
        let b = std::sync::Arc::new(coarse_groupoid(2).unwrap());
        let d = magma(&b);
        let id = magma_functor::<Q>(&QgpdMorphism::identity(&b)).unwrap();
        assert_eq!(id, LinearMap::identity(4));
        assert!(check_whq_morphism(&id, &d, &d).unwrap().is_pass());
        let wrong = LinearMap::<Q>::identity(3);
        assert!(matches!(check_whq_morphism(&wrong, &d, &d), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn collapse_needs_nabla() {
        let two = std::sync::Arc::new(discrete_groupoid(2).unwrap());
        let one = std::sync::Arc::new(discrete_groupoid(1).unwrap());
        let g = QgpdMorphism::new(two.clone(), one.clone(), vec![0, 0], vec![0, 0]).unwrap();
        let f = magma_functor::<Q>(&g).unwrap();
        let r = check_whq_morphism(&f, &magma(&two), &magma(&one)).unwrap();
        assert!(r.is_pass(), "{r}");
        // e_0 e_1 = 0 but f(e_0) f(e_1) = e_0.
        assert!(r.violations_of("multiplicative").iter().any(|v| v.witness == vec![0, 1]));
    }
}
