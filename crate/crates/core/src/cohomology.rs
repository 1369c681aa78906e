//! Dolbeault, Bott-Chern, Aeppli and de Rham numbers of the
//! Chevalley-Eilenberg bicomplex `(Λ^{•,•}, ∂, ∂̄)`.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::AlgebraSpec;
use crate::error::Result;
use crate::exterior::{ensure_valid, nilpotency_filtration, Differential};
use crate::form::{BasisForm, Bidegree, Form};
use crate::linalg::{self, IndexedMatrix, Matrix};
use crate::scalar::GaussianRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Theory {
    Dolbeault,
    ConjDolbeault,
    BottChern,
    Aeppli,
}

impl Theory {
    pub const ALL: [Theory; 4] = [Theory::Dolbeault, Theory::ConjDolbeault, Theory::BottChern, Theory::Aeppli];

    pub fn key(&self) -> &'static str {
        match self {
            Theory::Dolbeault => "dolbeault",
            Theory::ConjDolbeault => "conj_dolbeault",
            Theory::BottChern => "bc",
            Theory::Aeppli => "aeppli",
        }
    }
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

impl FromStr for Theory {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "dolbeault" => Ok(Theory::Dolbeault),
            "conj_dolbeault" => Ok(Theory::ConjDolbeault),
            "bc" | "bott_chern" => Ok(Theory::BottChern),
            "aeppli" | "a" => Ok(Theory::Aeppli),
            other => Err(format!("unknown theory `{other}`")),
        }
    }
}

/// Whether CE-level numbers are known to equal those of the nilmanifold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Validity {
    #[serde(rename = "nilpotent_J")]
    NilpotentJ,
    #[serde(rename = "ce_only")]
    CeOnly,
}

impl Validity {
    pub fn of(spec: &AlgebraSpec) -> Validity {
        if nilpotency_filtration(spec).0 {
            Validity::NilpotentJ
        } else {
            Validity::CeOnly
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HodgeTable {
    pub theory: Theory,
    pub n: usize,
    /// `entries[p][q]`.
    pub entries: Vec<Vec<usize>>,
    pub validity: Validity,
}

impl HodgeTable {
    pub fn get(&self, p: usize, q: usize) -> usize {
        self.entries[p][q]
    }
}

/// The bicomplex of a validated spec, with operator matrices between
/// bidegree components.
#[derive(Clone, Debug)]
pub struct Bicomplex {
    spec: AlgebraSpec,
    d: Differential,
}

impl Bicomplex {
    pub fn new(spec: &AlgebraSpec) -> Result<Self> {
        ensure_valid(spec)?;
        Ok(Bicomplex { spec: spec.clone(), d: Differential::new(spec) })
    }

    pub fn spec(&self) -> &AlgebraSpec {
        &self.spec
    }

    pub fn n(&self) -> usize {
        self.spec.n()
    }

    pub fn differential(&self) -> &Differential {
        &self.d
    }

    /// Basis of `Λ^{p,q}`; empty when either index is out of `0..=n`.
    pub fn basis(&self, p: isize, q: isize) -> Vec<BasisForm> {
        let n = self.n() as isize;
        if p < 0 || q < 0 || p > n || q > n {
            return Vec::new();
        }
        BasisForm::basis(self.n(), Bidegree::new(p as usize, q as usize))
    }

    /// `∂ : Λ^{p,q} → Λ^{p+1,q}`.
    pub fn del_matrix(&self, p: isize, q: isize) -> IndexedMatrix {
        IndexedMatrix::from_operator(self.basis(p + 1, q), self.basis(p, q), |b| self.d.del_monomial(b))
    }

    /// `∂̄ : Λ^{p,q} → Λ^{p,q+1}`.
    pub fn delbar_matrix(&self, p: isize, q: isize) -> IndexedMatrix {
        IndexedMatrix::from_operator(self.basis(p, q + 1), self.basis(p, q), |b| self.d.delbar_monomial(b))
    }

    /// `∂∂̄ : Λ^{p,q} → Λ^{p+1,q+1}`.
    pub fn ddbar_matrix(&self, p: isize, q: isize) -> IndexedMatrix {
        IndexedMatrix::from_operator(self.basis(p + 1, q + 1), self.basis(p, q), |b| {
            self.d.del(&self.d.delbar_monomial(b))
        })
    }

    /// `[∂; ∂̄]` on `Λ^{p,q}`: its kernel is the space of d-closed (p,q)-forms.
    pub fn closed_matrix(&self, p: isize, q: isize) -> IndexedMatrix {
        self.del_matrix(p, q).stack(&self.delbar_matrix(p, q))
    }

    /// `[∂ | ∂̄]` from `Λ^{p−1,q} ⊕ Λ^{p,q−1}` into `Λ^{p,q}`.
    pub fn del_plus_delbar_image(&self, p: isize, q: isize) -> IndexedMatrix {
        self.del_matrix(p - 1, q).join(&self.delbar_matrix(p, q - 1))
    }

    pub fn total_basis(&self, k: isize) -> Vec<BasisForm> {
        if k < 0 || k > 2 * self.n() as isize {
            return Vec::new();
        }
        BasisForm::basis_total(self.n(), k as usize)
    }

    /// `d : Λ^k → Λ^{k+1}` on total degree.
    pub fn d_matrix(&self, k: isize) -> IndexedMatrix {
        IndexedMatrix::from_operator(self.total_basis(k + 1), self.total_basis(k), |b| self.d.apply_monomial(b))
    }

    /// Closure operator and image operators whose subquotient is `H^{p,q}`.
    fn defining_maps(&self, theory: Theory, p: isize, q: isize) -> (IndexedMatrix, Vec<IndexedMatrix>) {
        match theory {
            Theory::Dolbeault => (self.delbar_matrix(p, q), vec![self.delbar_matrix(p, q - 1)]),
            Theory::ConjDolbeault => (self.del_matrix(p, q), vec![self.del_matrix(p - 1, q)]),
            Theory::BottChern => (self.closed_matrix(p, q), vec![self.ddbar_matrix(p - 1, q - 1)]),
            Theory::Aeppli => (self.ddbar_matrix(p, q), vec![self.del_matrix(p - 1, q), self.delbar_matrix(p, q - 1)]),
        }
    }

    pub fn hodge_number(&self, theory: Theory, p: usize, q: usize) -> Result<usize> {
        let (kernel_of, images) = self.defining_maps(theory, p as isize, q as isize);
        linalg::subquotient_dim(&kernel_of, &images)
    }

    pub fn hodge_table(&self, theory: Theory) -> Result<HodgeTable> {
        let n = self.n();
        let cells: Vec<(usize, usize)> = (0..=n).flat_map(|p| (0..=n).map(move |q| (p, q))).collect();
        let values: Vec<usize> =
            cells.par_iter().map(|&(p, q)| self.hodge_number(theory, p, q)).collect::<Result<Vec<_>>>()?;
        let entries = values.chunks(n + 1).map(<[usize]>::to_vec).collect();
        Ok(HodgeTable { theory, n, entries, validity: Validity::of(&self.spec) })
    }

    pub fn derham_betti(&self, k: usize) -> Result<usize> {
        let k = k as isize;
        linalg::subquotient_dim(&self.d_matrix(k), &[self.d_matrix(k - 1)])
    }

    pub fn derham_table(&self) -> Result<Vec<usize>> {
        (0..=2 * self.n()).into_par_iter().map(|k| self.derham_betti(k)).collect()
    }

    /// Forms whose classes form a basis of `H^{p,q}` for `theory`.
    pub fn class_representatives(&self, theory: Theory, p: usize, q: usize) -> Result<Vec<Form>> {
        let (kernel_of, images) = self.defining_maps(theory, p as isize, q as isize);
        // validates containment as a side effect
        linalg::subquotient_dim(&kernel_of, &images)?;
        let domain = kernel_of.cols.clone();
        let mut cols: Vec<Vec<GaussianRational>> = Vec::new();
        for img in &images {
            cols.extend((0..img.matrix.cols()).map(|j| img.matrix.column(j)));
        }
        let offset = cols.len();
        let kernel = linalg::kernel_basis(&kernel_of.matrix);
        cols.extend(kernel.iter().cloned());
        let picked = linalg::independent_columns(&Matrix::from_columns(domain.len(), &cols));
        Ok(picked
            .into_iter()
            .filter(|&j| j >= offset)
            .map(|j| Form::from_coords(self.n(), &domain, &kernel[j - offset]))
            .collect())
    }

    /// `dim (ker d ∩ (im ∂ + im ∂̄))` inside `Λ^{p,q}`, by solving the joint
    /// membership system.
    pub fn closed_and_exact_dim(&self, p: usize, q: usize) -> usize {
        let (p, q) = (p as isize, q as isize);
        let images = self.del_plus_delbar_image(p, q);
        if images.matrix.cols() == 0 {
            return 0;
        }
        let closed = self.closed_matrix(p, q);
        let composite = closed.matrix.mul(&images.matrix);
        let solutions = linalg::kernel_basis(&composite);
        if solutions.is_empty() {
            return 0;
        }
        let coeffs = Matrix::from_columns(images.matrix.cols(), &solutions);
        linalg::rank(&images.matrix.mul(&coeffs))
    }

    /// Rank of the identity-induced map `H^{p,q}_{BC} → H^{p,q}_A`.
    pub fn natural_map_rank(&self, p: usize, q: usize) -> Result<usize> {
        let bc = self.hodge_number(Theory::BottChern, p, q)?;
        let ddbar_exact = linalg::rank(&self.ddbar_matrix(p as isize - 1, q as isize - 1).matrix);
        Ok(bc - (self.closed_and_exact_dim(p, q) - ddbar_exact))
    }
}

pub fn hodge_number(spec: &AlgebraSpec, theory: Theory, p: usize, q: usize) -> Result<usize> {
    Bicomplex::new(spec)?.hodge_number(theory, p, q)
}

pub fn hodge_table(spec: &AlgebraSpec, theory: Theory) -> Result<HodgeTable> {
    Bicomplex::new(spec)?.hodge_table(theory)
}

pub fn derham_betti(spec: &AlgebraSpec, k: usize) -> Result<usize> {
    Bicomplex::new(spec)?.derham_betti(k)
}

pub fn class_representatives(spec: &AlgebraSpec, theory: Theory, p: usize, q: usize) -> Result<Vec<Form>> {
    Bicomplex::new(spec)?.class_representatives(theory, p, q)
}

pub fn natural_map_rank(spec: &AlgebraSpec, p: usize, q: usize) -> Result<usize> {
    Bicomplex::new(spec)?.natural_map_rank(p, q)
}
