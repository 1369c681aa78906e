//! Decision procedures for astheno-Kähler obstructions at the level of the
//! Chevalley-Eilenberg bicomplex.

use serde::Serialize;

use crate::algebra::AlgebraSpec;
use crate::cohomology::{Bicomplex, Theory, Validity};
use crate::error::{Error, Result};
use crate::exterior::{direct_sum, wedge_unchecked};
use crate::form::{BasisForm, Form};
use crate::linalg;
use crate::metrics::{check_condition, wedge_power, Condition, MetricForm};
use crate::scalar::GaussianRational;

/// Basis of the holomorphic 1-forms `{φ ∈ Λ^{1,0} : ∂̄φ = 0}`.
pub fn holomorphic_one_forms(spec: &AlgebraSpec) -> Result<Vec<Form>> {
    let bc = Bicomplex::new(spec)?;
    Ok(holomorphic_in(&bc))
}

fn holomorphic_in(bc: &Bicomplex) -> Vec<Form> {
    let m = bc.delbar_matrix(1, 0);
    linalg::kernel_basis(&m.matrix).iter().map(|v| Form::from_coords(bc.n(), &m.cols, v)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum JostYau {
    Pass,
    /// A holomorphic 1-form that is not closed.
    Fail {
        witness: Form,
    },
}

impl JostYau {
    pub fn passed(&self) -> bool {
        matches!(self, JostYau::Pass)
    }
}

pub fn jost_yau(spec: &AlgebraSpec) -> Result<JostYau> {
    let bc = Bicomplex::new(spec)?;
    Ok(jost_yau_in(&bc))
}

fn jost_yau_in(bc: &Bicomplex) -> JostYau {
    let d = bc.differential();
    match holomorphic_in(bc).into_iter().find(|phi| !d.apply(phi).is_zero()) {
        Some(witness) => JostYau::Fail { witness },
        None => JostYau::Pass,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GapVerdict {
    CompatibleGap0,
    CompatibleGap1,
    Excluded,
}

impl GapVerdict {
    pub fn of_gap(gap: i64) -> GapVerdict {
        match gap {
            0 => GapVerdict::CompatibleGap0,
            1 => GapVerdict::CompatibleGap1,
            _ => GapVerdict::Excluded,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GapReport {
    pub h01_bc: usize,
    pub h01_a: usize,
    pub gap: i64,
    pub gap_verdict: GapVerdict,
    pub validity: Validity,
}

pub fn gap_verdict(spec: &AlgebraSpec) -> Result<GapReport> {
    let bc = Bicomplex::new(spec)?;
    gap_in(&bc)
}

fn gap_in(bc: &Bicomplex) -> Result<GapReport> {
    let h01_bc = bc.hodge_number(Theory::BottChern, 0, 1)?;
    let h01_a = bc.hodge_number(Theory::Aeppli, 0, 1)?;
    let gap = h01_a as i64 - h01_bc as i64;
    Ok(GapReport { h01_bc, h01_a, gap, gap_verdict: GapVerdict::of_gap(gap), validity: Validity::of(bc.spec()) })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LFunctional {
    pub rank: u8,
    /// One value per Aeppli (0,1) representative, in representative order.
    pub values: Vec<GaussianRational>,
}

fn volume_monomial(n: usize) -> BasisForm {
    let all: Vec<usize> = (1..=n).collect();
    BasisForm::new(&all, &all).expect("n within range")
}

/// Evaluates `α ↦ coefficient of ∂α∧ω^{n−1}` on the volume monomial for each
/// of `forms`, which should be (0,1)-forms. The Gauduchon property is not
/// checked here.
pub fn l_values(spec: &AlgebraSpec, m: &MetricForm, forms: &[Form]) -> Result<Vec<GaussianRational>> {
    let n = spec.n();
    if m.n() != n {
        return Err(Error::DimensionMismatch { left: n, right: m.n() });
    }
    let bc = Bicomplex::new(spec)?;
    let power = wedge_power(m, n - 1)?;
    let vol = volume_monomial(n);
    Ok(forms.iter().map(|alpha| wedge_unchecked(&bc.differential().del(alpha), &power).coefficient(&vol)).collect())
}

/// The functional on Aeppli (0,1)-classes. Requires `m` to be Gauduchon.
pub fn l_functional(spec: &AlgebraSpec, m: &MetricForm) -> Result<LFunctional> {
    let gauduchon = check_condition(spec, m, Condition::Gauduchon)?;
    if !gauduchon.holds {
        return Err(Error::NotGauduchon { witness: gauduchon.witness });
    }
    let reps = Bicomplex::new(spec)?.class_representatives(Theory::Aeppli, 0, 1)?;
    let values = l_values(spec, m, &reps)?;
    let rank = u8::from(values.iter().any(|v| !num_traits::Zero::is_zero(v)));
    Ok(LFunctional { rank, values })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Torality {
    NotApplicable,
    Consistent,
    Violation,
}

/// For nilpotent `J`, equal `h^{0,1}` numbers must force an abelian algebra.
pub fn torality_check(spec: &AlgebraSpec) -> Result<Torality> {
    let bc = Bicomplex::new(spec)?;
    let gap = gap_in(&bc)?;
    Ok(torality_from(spec, &gap))
}

fn torality_from(spec: &AlgebraSpec, gap: &GapReport) -> Torality {
    if gap.validity != Validity::NilpotentJ {
        Torality::NotApplicable
    } else if gap.gap == 0 && !spec.is_abelian() {
        Torality::Violation
    } else {
        Torality::Consistent
    }
}

/// What a verified positive astheno metric forces on the `h^{0,1}` numbers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AsthenoConsequences {
    pub gap: i64,
    pub gap_in_range: bool,
    /// `Some` only for non-abelian nilpotent-J specs, where the gap must be 1.
    pub gap_is_one: Option<bool>,
    pub l_rank: u8,
    /// `h01_a = h01_bc + l_rank`.
    pub exact: bool,
}

impl AsthenoConsequences {
    pub fn holds(&self) -> bool {
        self.gap_in_range && self.gap_is_one.unwrap_or(true) && self.exact
    }
}

/// `Ok(None)` unless `m` is positive and astheno on `spec`.
pub fn astheno_consequences(spec: &AlgebraSpec, m: &MetricForm) -> Result<Option<AsthenoConsequences>> {
    if !m.positive || !check_condition(spec, m, Condition::Astheno)?.holds {
        return Ok(None);
    }
    let gap = gap_verdict(spec)?;
    let l_rank = l_functional(spec, m)?.rank;
    let gap_is_one = (gap.validity == Validity::NilpotentJ && !spec.is_abelian()).then_some(gap.gap == 1);
    Ok(Some(AsthenoConsequences {
        gap: gap.gap,
        gap_in_range: gap.gap == 0 || gap.gap == 1,
        gap_is_one,
        l_rank,
        exact: gap.gap == i64::from(l_rank),
    }))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KunnethReport {
    pub bc: [usize; 3],
    pub aeppli: [usize; 3],
    pub bc_additive: bool,
    pub aeppli_superadditive: bool,
}

impl KunnethReport {
    pub fn passed(&self) -> bool {
        self.bc_additive && self.aeppli_superadditive
    }
}

/// Compares `h^{0,1}` of `a`, `b` and `a ⊕ b`; arrays are `[a, b, sum]`.
pub fn kunneth_check(a: &AlgebraSpec, b: &AlgebraSpec) -> Result<KunnethReport> {
    let ga = gap_verdict(a)?;
    let gb = gap_verdict(b)?;
    let gs = gap_verdict(&direct_sum(a, b)?)?;
    Ok(KunnethReport {
        bc: [ga.h01_bc, gb.h01_bc, gs.h01_bc],
        aeppli: [ga.h01_a, gb.h01_a, gs.h01_a],
        bc_additive: gs.h01_bc == ga.h01_bc + gb.h01_bc,
        aeppli_superadditive: gs.h01_a >= ga.h01_a + gb.h01_a,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObstructionReport {
    pub h01_bc: usize,
    pub h01_a: usize,
    pub gap: i64,
    pub gap_verdict: GapVerdict,
    pub jost_yau: JostYau,
    pub torality: Torality,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l_rank: Option<u8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub astheno: Option<bool>,
    pub validity: Validity,
}

impl ObstructionReport {
    /// True when some test rules out an astheno-Kähler metric.
    pub fn obstructed(&self) -> bool {
        !self.jost_yau.passed() || self.gap_verdict == GapVerdict::Excluded
    }
}

/// Runs every test. With a metric, also reports whether it is astheno and,
/// if it is Gauduchon, the rank of the functional.
pub fn obstruct(spec: &AlgebraSpec, metric: Option<&MetricForm>) -> Result<ObstructionReport> {
    let bc = Bicomplex::new(spec)?;
    let gap = gap_in(&bc)?;
    let (l_rank, astheno) = match metric {
        Some(m) => {
            let l_rank = match l_functional(spec, m) {
                Ok(l) => Some(l.rank),
                Err(Error::NotGauduchon { .. }) => None,
                Err(e) => return Err(e),
            };
            let astheno = m.positive && check_condition(spec, m, Condition::Astheno)?.holds;
            (l_rank, Some(astheno))
        }
        None => (None, None),
    };
    Ok(ObstructionReport {
        h01_bc: gap.h01_bc,
        h01_a: gap.h01_a,
        gap: gap.gap,
        gap_verdict: gap.gap_verdict,
        jost_yau: jost_yau_in(&bc),
        torality: torality_from(spec, &gap),
        l_rank,
        astheno,
        validity: gap.validity,
    })
}
