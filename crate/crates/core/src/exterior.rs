//! Graded-commutative algebra of invariant forms and the Chevalley-Eilenberg
//! differential `d = ∂ + ∂̄` determined by the structure equations.

use num_traits::One;
use serde::Serialize;

use crate::algebra::AlgebraSpec;
use crate::error::{Error, Result};
use crate::form::{BasisForm, Bidegree, Form};
use crate::linalg::{self, Matrix};
use crate::scalar::GaussianRational;

fn check_dims(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::DimensionMismatch { left: a, right: b });
    }
    Ok(())
}

/// `x ∧ y`.
pub fn wedge(x: &Form, y: &Form) -> Result<Form> {
    check_dims(x.dim(), y.dim())?;
    Ok(wedge_unchecked(x, y))
}

pub(crate) fn wedge_unchecked(x: &Form, y: &Form) -> Form {
    let mut out = Form::zero(x.dim());
    for (bx, cx) in x.terms() {
        for (by, cy) in y.terms() {
            if let Some((neg, b)) = bx.wedge(by) {
                let c = cx * cy;
                out.add_term(b, if neg { -c } else { c });
            }
        }
    }
    out
}

/// Monomial times form: `b ∧ y`.
fn wedge_monomial_left(b: &BasisForm, y: &Form, scale: &GaussianRational, out: &mut Form) {
    for (by, cy) in y.terms() {
        if let Some((neg, m)) = b.wedge(by) {
            let c = scale * cy;
            out.add_term(m, if neg { -c } else { c });
        }
    }
}

/// Complex conjugation; maps bidegree (p,q) to (q,p).
pub fn conjugate(x: &Form) -> Form {
    Form::from_terms(
        x.dim(),
        x.terms().map(|(b, c)| {
            let (neg, cb) = b.conjugate();
            let c = c.conj();
            (cb, if neg { -c } else { c })
        }),
    )
}

/// The anti-derivation extending `α_i ↦ dα_i`, `ᾱ_i ↦ conj(dα_i)`.
#[derive(Clone, Debug)]
pub struct Differential {
    n: usize,
    holo: Vec<Form>,
    anti: Vec<Form>,
}

impl Differential {
    pub fn new(spec: &AlgebraSpec) -> Self {
        let holo = spec.d_generators().to_vec();
        let anti = holo.iter().map(conjugate).collect();
        Differential { n: spec.n(), holo, anti }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// `d` of a single monomial, expanded by the Leibniz rule over its
    /// factors in canonical order.
    pub fn apply_monomial(&self, b: &BasisForm) -> Form {
        let mut out = Form::zero(self.n);
        let factors: Vec<(bool, usize)> =
            b.holo().into_iter().map(|i| (false, i)).chain(b.anti().into_iter().map(|i| (true, i))).collect();
        for (pos, &(bar, i)) in factors.iter().enumerate() {
            let dfi = if bar { &self.anti[i - 1] } else { &self.holo[i - 1] };
            if dfi.is_zero() {
                continue;
            }
            let (prefix, suffix) = split_monomial(&factors, pos);
            // prefix ∧ dfi ∧ suffix
            let mut middle = Form::zero(self.n);
            let sign = if pos % 2 == 1 { -GaussianRational::one() } else { GaussianRational::one() };
            wedge_monomial_left(&prefix, dfi, &sign, &mut middle);
            for (bm, cm) in middle.terms() {
                if let Some((neg, m)) = bm.wedge(&suffix) {
                    out.add_term(m, if neg { -cm } else { cm.clone() });
                }
            }
        }
        out
    }

    pub fn apply(&self, x: &Form) -> Form {
        let mut out = Form::zero(self.n);
        for (b, c) in x.terms() {
            out.add_assign(&self.apply_monomial(b).scale(c));
        }
        out
    }

    /// `∂` of a monomial: the (p+1,q) part of `d`.
    pub fn del_monomial(&self, b: &BasisForm) -> Form {
        let bd = b.bidegree();
        self.apply_monomial(b).component(Bidegree::new(bd.p + 1, bd.q))
    }

    /// `∂̄` of a monomial: the (p,q+1) part of `d`.
    pub fn delbar_monomial(&self, b: &BasisForm) -> Form {
        let bd = b.bidegree();
        self.apply_monomial(b).component(Bidegree::new(bd.p, bd.q + 1))
    }

    pub fn del(&self, x: &Form) -> Form {
        let mut out = Form::zero(self.n);
        for (b, c) in x.terms() {
            out.add_assign(&self.del_monomial(b).scale(c));
        }
        out
    }

    pub fn delbar(&self, x: &Form) -> Form {
        let mut out = Form::zero(self.n);
        for (b, c) in x.terms() {
            out.add_assign(&self.delbar_monomial(b).scale(c));
        }
        out
    }

    /// `∂∂̄ x`.
    pub fn del_delbar(&self, x: &Form) -> Form {
        self.del(&self.delbar(x))
    }
}

fn split_monomial(factors: &[(bool, usize)], pos: usize) -> (BasisForm, BasisForm) {
    let build = |fs: &[(bool, usize)]| {
        let holo: Vec<usize> = fs.iter().filter(|f| !f.0).map(|f| f.1).collect();
        let anti: Vec<usize> = fs.iter().filter(|f| f.0).map(|f| f.1).collect();
        BasisForm::new(&holo, &anti).expect("sub-monomial of a canonical monomial")
    };
    (build(&factors[..pos]), build(&factors[pos + 1..]))
}

/// `dx` for the structure equations of `spec`.
pub fn differential(spec: &AlgebraSpec, x: &Form) -> Result<Form> {
    check_dims(spec.n(), x.dim())?;
    Ok(Differential::new(spec).apply(x))
}

pub fn del(spec: &AlgebraSpec, x: &Form) -> Result<Form> {
    check_dims(spec.n(), x.dim())?;
    Ok(Differential::new(spec).del(x))
}

pub fn delbar(spec: &AlgebraSpec, x: &Form) -> Result<Form> {
    check_dims(spec.n(), x.dim())?;
    Ok(Differential::new(spec).delbar(x))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratorFailure {
    pub generator: usize,
    pub d_squared: Form,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub jacobi_ok: bool,
    pub failures: Vec<GeneratorFailure>,
    #[serde(rename = "nilpotent_J")]
    pub nilpotent_j: bool,
    pub filtration: Vec<usize>,
}

impl ValidationReport {
    pub fn failing_generators(&self) -> Vec<usize> {
        self.failures.iter().map(|f| f.generator).collect()
    }
}

/// Checks `d²α_i = 0` for every generator (enough, since `d` is an
/// anti-derivation) and computes the nilpotency filtration.
pub fn validate(spec: &AlgebraSpec) -> ValidationReport {
    let d = Differential::new(spec);
    let failures: Vec<GeneratorFailure> = (1..=spec.n())
        .filter_map(|i| {
            let dd = d.apply(spec.d_generator(i));
            (!dd.is_zero()).then_some(GeneratorFailure { generator: i, d_squared: dd })
        })
        .collect();
    let (nilpotent_j, filtration) = nilpotency_filtration(spec);
    ValidationReport { jacobi_ok: failures.is_empty(), failures, nilpotent_j, filtration }
}

/// Returns `Err(InvalidSpec)` unless `d² = 0` on generators.
pub fn ensure_valid(spec: &AlgebraSpec) -> Result<()> {
    let d = Differential::new(spec);
    let failing: Vec<usize> = (1..=spec.n()).filter(|&i| !d.apply(spec.d_generator(i)).is_zero()).collect();
    if failing.is_empty() {
        Ok(())
    } else {
        Err(Error::InvalidSpec { failing })
    }
}

/// Degree-one basis `α_1, …, α_n, ᾱ_1, …, ᾱ_n`.
fn degree_one_basis(n: usize) -> Vec<BasisForm> {
    let mut b: Vec<BasisForm> = (1..=n).map(|i| BasisForm::new(&[i], &[]).unwrap()).collect();
    b.extend((1..=n).map(|i| BasisForm::new(&[], &[i]).unwrap()));
    b
}

/// Dual ascending series `S_0 = 0`, `S_l = {φ of degree one : dφ ∈ Λ²S_{l−1}}`.
///
/// Returns whether the series exhausts all `2n` degree-one forms, and the
/// dimensions of `S_1, S_2, …` up to stabilization (the stable value is
/// repeated once when it falls short of `2n`).
pub fn nilpotency_filtration(spec: &AlgebraSpec) -> (bool, Vec<usize>) {
    let n = spec.n();
    let d = Differential::new(spec);
    let v_basis = degree_one_basis(n);
    let l2_basis = BasisForm::basis_total(n, 2);
    let d_cols: Vec<Vec<GaussianRational>> = v_basis.iter().map(|b| d.apply_monomial(b).coords(&l2_basis)).collect();

    let mut current: Vec<Vec<GaussianRational>> = Vec::new();
    let mut dims = Vec::new();
    loop {
        let span: Vec<Form> = current.iter().map(|c| Form::from_coords(n, &v_basis, c)).collect();
        let mut cols = d_cols.clone();
        for a in 0..span.len() {
            for b in a + 1..span.len() {
                let w = wedge_unchecked(&span[a], &span[b]);
                cols.push(w.coords(&l2_basis).into_iter().map(|z| -z).collect());
            }
        }
        let system = Matrix::from_columns(l2_basis.len(), &cols);
        let solutions: Vec<Vec<GaussianRational>> =
            linalg::kernel_basis(&system).into_iter().map(|v| v[..2 * n].to_vec()).collect();
        let proj = Matrix::from_columns(2 * n, &solutions);
        let next: Vec<Vec<GaussianRational>> =
            linalg::independent_columns(&proj).into_iter().map(|j| proj.column(j)).collect();
        let dim = next.len();
        let stalled = dims.last() == Some(&dim);
        dims.push(dim);
        if dim == 2 * n || stalled {
            return (dim == 2 * n, dims);
        }
        current = next;
    }
}

/// `a ⊕ b` with the generators of `b` shifted past those of `a`.
pub fn direct_sum(a: &AlgebraSpec, b: &AlgebraSpec) -> Result<AlgebraSpec> {
    let n = a.n() + b.n();
    let mut gens: Vec<Form> = a.d_generators().iter().map(|f| f.embed(n)).collect();
    gens.extend(b.d_generators().iter().map(|f| f.shifted(a.n(), n)));
    AlgebraSpec::new(format!("{}_x_{}", a.name(), b.name()), n, gens)
}

/// `ω^k` style repeated wedge; `x^0 = 1`.
pub fn wedge_power(x: &Form, k: usize) -> Form {
    let mut acc = Form::one(x.dim());
    for _ in 0..k {
        acc = wedge_unchecked(&acc, x);
    }
    acc
}
