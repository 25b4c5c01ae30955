//! `K[A] ⋈ K[H]`: the weak Hopf quasigroup built from a matched pair by
//! linearizing the actions, and its canonical isomorphism with `K[A ⋈ H]`.
//!
//! Vectors of `K[A] ⊗ K[H]` use the row-major index `a*|H| + h`. The bowtie
//! basis is the `(a, h)` enumeration of the double cross product.

use crate::linalg::{apply_tensor, free_coalgebra, tensor_index, twist, LinearMap, Scalar, SparseVec};
use crate::matched_pair::{dcp_pairs, double_cross_product, MatchedPair};
use crate::report::StructureReport;
use crate::whq::{check_whq, check_whq_morphism, magma_of_quasigroupoid, MagmaCoalgebra};
use crate::{Error, Result};

/// `φ_K[A]: K[H]⊗K[A] → K[A]` and `φ_K[H]: K[H]⊗K[A] → K[H]`, zero off the
/// composable pairs.
pub fn linearized_actions<F: Scalar>(mp: &MatchedPair) -> Result<(LinearMap<F>, LinearMap<F>)> {
    mp.ensure_valid()?;
    let (na, nh) = (mp.a().arrows(), mp.h().arrows());
    let left = LinearMap::basis_map(nh * na, na, |k| mp.phi_a(k / na, k % na))?;
    let right = LinearMap::basis_map(nh * na, nh, |k| mp.phi_h(k / na, k % na))?;
    Ok((left, right))
}

/// Unit and module laws of the linearized actions on basis tensors.
pub fn check_module_laws<F: Scalar>(mp: &MatchedPair) -> Result<StructureReport> {
    let (left, right) = linearized_actions::<F>(mp)?;
    let ka = magma_of_quasigroupoid::<F>(mp.a());
    let kh = magma_of_quasigroupoid::<F>(mp.h());
    let (na, nh) = (ka.dim(), kh.dim());
    let mut report = StructureReport::new("linearized actions");

    let mut c = report.check("left-unit");
    for a in 0..na {
        let v = left.apply(&kh.unit().tensor(&SparseVec::basis(na, a))).expect("shape");
        c.eq(v, SparseVec::basis(na, a), &[a]);
    }
    let mut c = report.check("left-module");
    for g in 0..nh {
        for h in 0..nh {
            for a in 0..na {
                let inner = left.col(tensor_index(h, a, na));
                let lhs = left.apply(&SparseVec::basis(nh, g).tensor(inner)).expect("shape");
                let gh = kh.mul_basis(g, h);
                let rhs = left.apply(&gh.tensor(&SparseVec::basis(na, a))).expect("shape");
                c.eq(lhs, rhs, &[g, h, a]);
            }
        }
    }
    let mut c = report.check("right-unit");
    for h in 0..nh {
        let v = right.apply(&SparseVec::basis(nh, h).tensor(ka.unit())).expect("shape");
        c.eq(v, SparseVec::basis(nh, h), &[h]);
    }
    let mut c = report.check("right-module");
    for h in 0..nh {
        for a in 0..na {
            for b in 0..na {
                let inner = right.col(tensor_index(h, a, na));
                let lhs = right.apply(&inner.tensor(&SparseVec::basis(na, b))).expect("shape");
                let ab = ka.mul_basis(a, b);
                let rhs = right.apply(&SparseVec::basis(nh, h).tensor(ab)).expect("shape");
                c.eq(lhs, rhs, &[h, a, b]);
            }
        }
    }
    Ok(report)
}

/// `Φ = (φ_K[A] ⊗ φ_K[H]) ∘ (id ⊗ c ⊗ id) ∘ (δ_H ⊗ δ_A)`.
pub fn phi_map<F: Scalar>(mp: &MatchedPair) -> Result<LinearMap<F>> {
    let (left, right) = linearized_actions::<F>(mp)?;
    let (na, nh) = (mp.a().arrows(), mp.h().arrows());
    let (dh, _) = free_coalgebra::<F>(nh);
    let (da, _) = free_coalgebra::<F>(na);
    let idh = LinearMap::identity(nh);
    let ida = LinearMap::identity(na);
    let c = twist::<F>(nh, na)?;
    LinearMap::from_fn(nh * na, na * nh, |k| {
        let v = apply_tensor(&[&dh, &da], &SparseVec::basis(nh * na, k)).expect("shape");
        let v = apply_tensor(&[&idh, &c, &ida], &v).expect("shape");
        apply_tensor(&[&left, &right], &v).expect("shape")
    })
}

/// `∇_Φ = (μ_A ⊗ id) ∘ (id ⊗ (Φ ∘ (id ⊗ 1_A)))` on `K[A]⊗K[H]`.
pub fn nabla_phi<F: Scalar>(mp: &MatchedPair) -> Result<LinearMap<F>> {
    let phi = phi_map::<F>(mp)?;
    let ka = magma_of_quasigroupoid::<F>(mp.a());
    let (na, nh) = (mp.a().arrows(), mp.h().arrows());
    let ida = LinearMap::identity(na);
    let idh = LinearMap::identity(nh);
    let unit_a = LinearMap::from_vector(ka.unit());
    LinearMap::from_fn(na * nh, na * nh, |k| {
        let v = apply_tensor(&[&ida, &idh, &unit_a], &SparseVec::basis(na * nh, k)).expect("shape");
        let v = apply_tensor(&[&ida, &phi], &v).expect("shape");
        apply_tensor(&[ka.mu(), &idh], &v).expect("shape")
    })
}

/// `K[A] ⋈ K[H]` on the composable pairs `(a, h)`.
#[derive(Debug, Clone)]
pub struct BowtieMagma<F: Scalar> {
    mp: MatchedPair,
    pairs: Vec<(usize, usize)>,
    /// Bowtie basis index of each ambient index `a*|H| + h`.
    index: Vec<Option<usize>>,
    magma: MagmaCoalgebra<F>,
}

impl<F: Scalar> BowtieMagma<F> {
    pub fn magma(&self) -> &MagmaCoalgebra<F> {
        &self.magma
    }

    pub fn matched_pair(&self) -> &MatchedPair {
        &self.mp
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn basis_of(&self, a: usize, h: usize) -> Option<usize> {
        self.index[a * self.mp.h().arrows() + h]
    }

    /// Embedding of the bowtie space in `K[A] ⊗ K[H]`.
    pub fn embedding(&self) -> LinearMap<F> {
        let nh = self.mp.h().arrows();
        let pairs = &self.pairs;
        LinearMap::basis_map(pairs.len(), self.index.len(), |i| Some(pairs[i].0 * nh + pairs[i].1)).expect("ranges")
    }
}

/// Rewrites an ambient vector in the bowtie basis; any coefficient off the
/// composable pairs is an internal error.
fn restrict<F: Scalar>(v: &SparseVec<F>, index: &[Option<usize>], n: usize, what: &str) -> Result<SparseVec<F>> {
    let mut out = SparseVec::zero(n);
    for (k, c) in v.iter() {
        match index[k] {
            Some(i) => out.add_at(i, c.clone()),
            None => {
                return Err(Error::InternalInconsistency(format!(
                    "{what} leaves the composable pairs at ambient index {k}"
                )))
            }
        }
    }
    Ok(out)
}

/// Product `(μ_A ⊗ μ_H) ∘ (id ⊗ Φ ⊗ id)`, unit `Σ id_A(x) ⊗ id_H(x)`,
/// group-like coalgebra and antipode `Φ ∘ c ∘ (λ_A ⊗ λ_H)`.
pub fn bowtie_whq<F: Scalar>(mp: &MatchedPair) -> Result<BowtieMagma<F>> {
    let phi = phi_map::<F>(mp)?;
    let (a, h) = (mp.a(), mp.h());
    let ka = magma_of_quasigroupoid::<F>(a);
    let kh = magma_of_quasigroupoid::<F>(h);
    let (na, nh) = (a.arrows(), h.arrows());
    let pairs = dcp_pairs(a, h);
    let n = pairs.len();
    let mut index = vec![None; na * nh];
    for (i, &(x, g)) in pairs.iter().enumerate() {
        index[x * nh + g] = Some(i);
    }
    let ambient = |i: usize| SparseVec::basis(na * nh, pairs[i].0 * nh + pairs[i].1);

    let ida = LinearMap::identity(na);
    let idh = LinearMap::identity(nh);
    let mut cols = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let v = ambient(i).tensor(&ambient(j));
            let v = apply_tensor(&[&ida, &phi, &idh], &v)?;
            let v = apply_tensor(&[ka.mu(), kh.mu()], &v)?;
            cols.push(restrict(&v, &index, n, "product")?);
        }
    }
    let mu = LinearMap::from_columns(n, cols)?;

    let mut unit = SparseVec::zero(na * nh);
    for x in 0..a.objects() {
        unit.add_at(a.id(x) * nh + h.id(x), F::one());
    }
    let unit = restrict(&unit, &index, n, "unit")?;

    let c = twist::<F>(na, nh)?;
    let mut cols = Vec::with_capacity(n);
    for i in 0..n {
        let v = apply_tensor(&[ka.lambda(), kh.lambda()], &ambient(i))?;
        let v = phi.apply(&c.apply(&v)?)?;
        cols.push(restrict(&v, &index, n, "antipode")?);
    }
    let lambda = LinearMap::from_columns(n, cols)?;
    let (delta, eps) = free_coalgebra(n);
    let magma = MagmaCoalgebra::new(unit, mu, eps, delta, lambda)?;
    Ok(BowtieMagma {
        mp: mp.clone(),
        pairs,
        index,
        magma,
    })
}

/// `f: K[A ⋈ H] → K[A] ⋈ K[H]`, `(a, g) ↦ a ⊗ g` on basis elements.
pub fn canonical_iso<F: Scalar>(mp: &MatchedPair) -> Result<LinearMap<F>> {
    let d = double_cross_product(mp)?;
    let bt = bowtie_whq::<F>(mp)?;
    canonical_iso_between(d.pairs(), &bt)
}

fn canonical_iso_between<F: Scalar>(pairs: &[(usize, usize)], bt: &BowtieMagma<F>) -> Result<LinearMap<F>> {
    LinearMap::basis_map(pairs.len(), bt.pairs.len(), |i| bt.basis_of(pairs[i].0, pairs[i].1))
}

/// Everything needed to accept `f` as an isomorphism of weak Hopf
/// quasigroups, plus transport of every structure map along `f`.
///
/// Tags: `iso-bijective`, the morphism laws for `f` and (prefixed `inv/`)
/// for `f⁻¹`, `transport-*` comparisons, and the direct check of the bowtie
/// structure prefixed `bowtie/`.
pub fn verify_canonical_iso<F: Scalar>(mp: &MatchedPair) -> Result<StructureReport> {
    let d = double_cross_product(mp)?;
    let bt = bowtie_whq::<F>(mp)?;
    let kd = magma_of_quasigroupoid::<F>(d.quasigroupoid());
    let kb = bt.magma();
    let f = canonical_iso_between(d.pairs(), &bt)?;
    let mut report = StructureReport::new("canonical isomorphism");

    let mut c = report.check("iso-bijective");
    c.case(f.is_permutation(), &[], || "not a bijection of bases".into());
    let Some(finv) = f.permutation_inverse() else {
        return Ok(report);
    };
    report.absorb("", check_whq_morphism(&f, &kd, kb)?);
    report.absorb("inv/", check_whq_morphism(&finv, kb, &kd)?);

    let n = kd.dim();
    let mut c = report.check("transport-unit");
    c.eq(finv.apply(kb.unit())?, kd.unit().clone(), &[]);
    let mut c = report.check("transport-product");
    for i in 0..n {
        for j in 0..n {
            let fij = apply_tensor(&[&f, &f], &SparseVec::basis(n * n, tensor_index(i, j, n)))?;
            let lhs = finv.apply(&kb.mu().apply(&fij)?)?;
            c.eq(lhs, kd.mul_basis(i, j).clone(), &[i, j]);
        }
    }
    let mut c = report.check("transport-counit");
    for i in 0..n {
        c.eq(kb.counit(f.col(i)), kd.eps().entry(0, i), &[i]);
    }
    let mut c = report.check("transport-coproduct");
    for i in 0..n {
        let v = kb.delta().apply(f.col(i))?;
        c.eq(apply_tensor(&[&finv, &finv], &v)?, kd.delta().col(i).clone(), &[i]);
    }
    let mut c = report.check("transport-antipode");
    for i in 0..n {
        let v = finv.apply(&kb.lambda().apply(f.col(i))?)?;
        c.eq(v, kd.lambda().col(i).clone(), &[i]);
    }

    match check_whq(kb) {
        Ok(r) => report.absorb("bowtie/", r.report),
        Err(Error::PreconditionFailed(r)) => report.absorb("bowtie/", r),
        Err(e) => return Err(e),
    }
    Ok(report)
}
