//! Invariant Hermitian metrics and pluriclosedness conditions.
//!
//! A metric is given by a Hermitian matrix `H`; its fundamental form is
//! `ω = i·Σ H_{jk} α_j∧ᾱ_k`. Every condition checked here is the vanishing of
//! some form, so positive rescalings of `ω` never change a verdict.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::algebra::AlgebraSpec;
use crate::error::{Error, Result};
use crate::exterior::{ensure_valid, wedge_power as form_power, wedge_unchecked, Differential};
use crate::form::{BasisForm, Form};
use crate::linalg::{determinant, Matrix};
use crate::scalar::GaussianRational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MetricForm {
    #[serde(rename = "H")]
    pub h: Vec<Vec<GaussianRational>>,
    #[serde(skip)]
    pub omega: Form,
    pub positive: bool,
}

impl MetricForm {
    pub fn n(&self) -> usize {
        self.h.len()
    }
}

fn fundamental_form(h: &[Vec<GaussianRational>]) -> Form {
    let n = h.len();
    let i = GaussianRational::i();
    let mut omega = Form::zero(n);
    for (j, row) in h.iter().enumerate() {
        for (k, c) in row.iter().enumerate() {
            let b = BasisForm::new(&[j + 1], &[k + 1]).expect("index within dimension");
            omega.add_term(b, &i * c);
        }
    }
    omega
}

/// Sylvester's criterion on the leading principal minors.
fn is_positive_definite(h: &[Vec<GaussianRational>]) -> bool {
    (1..=h.len()).all(|k| {
        let minor = Matrix::from_rows(h[..k].iter().map(|row| row[..k].to_vec()).collect());
        let det = determinant(&minor);
        debug_assert!(det.im.is_zero(), "Hermitian minors are real");
        det.re.is_positive()
    })
}

/// Builds the invariant (1,1)-form of `h`. Positivity is recorded, not required.
pub fn build_metric(spec: &AlgebraSpec, h: Vec<Vec<GaussianRational>>) -> Result<MetricForm> {
    let n = spec.n();
    if h.len() != n || h.iter().any(|row| row.len() != n) {
        return Err(Error::MatrixShape { expected: n });
    }
    #[allow(clippy::needless_range_loop)]
    for j in 0..n {
        for k in j..n {
            if h[k][j] != h[j][k].conj() {
                return Err(Error::NotHermitian { row: k + 1, col: j + 1 });
            }
        }
    }
    let omega = fundamental_form(&h);
    let positive = is_positive_definite(&h);
    Ok(MetricForm { h, omega, positive })
}

/// Diagonal metric `diag(t_1, …, t_n)`.
pub fn diagonal_metric(spec: &AlgebraSpec, diag: &[BigRational]) -> Result<MetricForm> {
    let n = spec.n();
    if diag.len() != n {
        return Err(Error::MatrixShape { expected: n });
    }
    let h = (0..n)
        .map(|j| {
            (0..n)
                .map(|k| if j == k { GaussianRational::real(diag[j].clone()) } else { GaussianRational::zero() })
                .collect()
        })
        .collect();
    build_metric(spec, h)
}

pub fn identity_metric(spec: &AlgebraSpec) -> MetricForm {
    diagonal_metric(spec, &vec![BigRational::one(); spec.n()]).expect("identity is Hermitian")
}

/// `ω^k` for `0 ≤ k ≤ n`.
pub fn wedge_power(m: &MetricForm, k: usize) -> Result<Form> {
    if k > m.n() {
        return Err(Error::ExponentOutOfRange { k, n: m.n() });
    }
    Ok(form_power(&m.omega, k))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Condition {
    Kahler,
    /// `∂∂̄ω^{n−1} = 0`.
    Gauduchon,
    /// `∂∂̄ω = 0`.
    Skt,
    /// `∂∂̄ω^{n−2} = 0`.
    Astheno,
    /// `∂∂̄ω^{n−k} = 0`; trivially true when `n − k ≤ 0`.
    Pluriclosed(usize),
    /// `∂∂̄ω = 0` and `∂∂̄ω² = 0`.
    FtPair,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Condition::Kahler => f.write_str("kahler"),
            Condition::Gauduchon => f.write_str("gauduchon"),
            Condition::Skt => f.write_str("skt"),
            Condition::Astheno => f.write_str("astheno"),
            Condition::Pluriclosed(k) => write!(f, "pluriclosed:{k}"),
            Condition::FtPair => f.write_str("ftpair"),
        }
    }
}

impl FromStr for Condition {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "kahler" => Ok(Condition::Kahler),
            "gauduchon" => Ok(Condition::Gauduchon),
            "skt" => Ok(Condition::Skt),
            "astheno" => Ok(Condition::Astheno),
            "ftpair" | "ft_pair" => Ok(Condition::FtPair),
            other => match other.strip_prefix("pluriclosed:") {
                Some(k) => k.parse().map(Condition::Pluriclosed).map_err(|_| format!("bad exponent in `{other}`")),
                None => Err(format!("unknown condition `{other}`")),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionResult {
    pub holds: bool,
    /// The obstruction form; zero when the condition holds.
    pub witness: Form,
}

fn ddbar_power(d: &Differential, omega: &Form, exponent: usize) -> Form {
    d.del_delbar(&form_power(omega, exponent))
}

pub fn check_condition(spec: &AlgebraSpec, m: &MetricForm, cond: Condition) -> Result<ConditionResult> {
    ensure_valid(spec)?;
    if m.n() != spec.n() {
        return Err(Error::DimensionMismatch { left: spec.n(), right: m.n() });
    }
    let n = spec.n();
    let d = Differential::new(spec);
    let pluriclosed = |k: usize| if k >= n { Form::zero(n) } else { ddbar_power(&d, &m.omega, n - k) };
    let witness = match cond {
        Condition::Kahler => d.apply(&m.omega),
        Condition::Gauduchon => pluriclosed(1),
        Condition::Astheno => pluriclosed(2),
        Condition::Pluriclosed(k) => pluriclosed(k),
        Condition::Skt => ddbar_power(&d, &m.omega, 1),
        // different bidegrees, so the sum loses nothing
        Condition::FtPair => ddbar_power(&d, &m.omega, 1).add(&ddbar_power(&d, &m.omega, 2)),
    };
    Ok(ConditionResult { holds: witness.is_zero(), witness })
}

// --- closed-form families ----------------------------------------------------

fn check_square(name: &str, m: &[Vec<GaussianRational>], size: usize) -> Result<()> {
    if m.len() != size || m.iter().any(|row| row.len() != size) {
        return Err(Error::MalformedIndexSet(format!("{name} must be {size}x{size}")));
    }
    Ok(())
}

/// Coefficients of the family `dα_i = 0 (i < n)`,
/// `dα_n = Σ_{i<j<n} A_ij α_i∧α_j + Σ_{k,l<n} B_kl α_k∧ᾱ_l`.
///
/// Both matrices are `(n−1)×(n−1)`; only the strict upper triangle of `A` is
/// meaningful and must carry every nonzero entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExNilpFamily {
    pub n: usize,
    pub a: Vec<Vec<GaussianRational>>,
    pub b: Vec<Vec<GaussianRational>>,
}

impl ExNilpFamily {
    pub fn new(n: usize, a: Vec<Vec<GaussianRational>>, b: Vec<Vec<GaussianRational>>) -> Result<Self> {
        if !(2..=crate::form::MAX_DIM).contains(&n) {
            return Err(Error::MalformedIndexSet(format!("n = {n} must be at least 2")));
        }
        check_square("A", &a, n - 1)?;
        check_square("B", &b, n - 1)?;
        for (i, row) in a.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if j <= i && !v.is_zero() {
                    return Err(Error::MalformedIndexSet(format!("A[{}][{}] is outside i < j", i + 1, j + 1)));
                }
            }
        }
        Ok(ExNilpFamily { n, a, b })
    }

    /// The structure equations of the family.
    pub fn spec(&self) -> AlgebraSpec {
        let n = self.n;
        let mut top = Form::zero(n);
        for i in 0..n - 1 {
            for j in 0..n - 1 {
                if i < j {
                    top.add_term(BasisForm::new(&[i + 1, j + 1], &[]).unwrap(), self.a[i][j].clone());
                }
                top.add_term(BasisForm::new(&[i + 1], &[j + 1]).unwrap(), self.b[i][j].clone());
            }
        }
        let mut gens = vec![Form::zero(n); n - 1];
        gens.push(top);
        AlgebraSpec::new(format!("exnilp{n}"), n, gens).expect("family has (2,0)+(1,1) shape")
    }

    fn moduli(&self) -> BigRational {
        let m = self.n - 1;
        let mut acc = BigRational::zero();
        for i in 0..m {
            for j in 0..m {
                if i < j {
                    acc += self.a[i][j].norm_sqr();
                }
                if i != j {
                    acc += self.b[i][j].norm_sqr();
                }
            }
        }
        acc
    }

    fn diagonal_cross(&self) -> BigRational {
        let m = self.n - 1;
        let mut acc = GaussianRational::zero();
        for i in 0..m {
            for j in i + 1..m {
                acc += &(&self.b[i][i] * &self.b[j][j].conj());
            }
        }
        acc.re * BigRational::from_integer(2.into())
    }

    /// `Σ_{i<j}|A_ij|² + Σ_{i≠j}|B_ij|² − 2·Re Σ_{i<j} B_ii·conj(B_jj)`: the
    /// coefficient of `∂∂̄ω^{n−2}` for the identity metric, up to the nonzero
    /// factor `i^{n−2}(n−2)!` on `α_1∧ᾱ_1∧…∧α_{n−1}∧ᾱ_{n−1}`.
    pub fn lhs(&self) -> BigRational {
        self.moduli() - self.diagonal_cross()
    }

    /// The same sum with `+2·Re(…)`, as the condition is commonly printed.
    /// It disagrees with the direct computation whenever the diagonal cross
    /// term is nonzero.
    pub fn lhs_printed(&self) -> BigRational {
        self.moduli() + self.diagonal_cross()
    }
}

pub fn exnilp_lhs(n: usize, a: &[Vec<GaussianRational>], b: &[Vec<GaussianRational>]) -> Result<BigRational> {
    Ok(ExNilpFamily::new(n, a.to_vec(), b.to_vec())?.lhs())
}

pub fn exnilp_lhs_printed(n: usize, a: &[Vec<GaussianRational>], b: &[Vec<GaussianRational>]) -> Result<BigRational> {
    Ok(ExNilpFamily::new(n, a.to_vec(), b.to_vec())?.lhs_printed())
}

/// Complex dimension 3 family `dα_1 = dα_2 = 0`,
/// `dα_3 = A ᾱ1∧α2 + B ᾱ2∧α2 + C α1∧ᾱ1 + D α1∧ᾱ2 + E α1∧α2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpsFamily {
    pub a: GaussianRational,
    pub b: GaussianRational,
    pub c: GaussianRational,
    pub d: GaussianRational,
    pub e: GaussianRational,
}

impl FpsFamily {
    pub fn spec(&self) -> AlgebraSpec {
        let n = 3;
        let a = |i| Form::holo_generator(n, i);
        let abar = |i| Form::anti_generator(n, i);
        let terms = [
            (&self.a, wedge_unchecked(&abar(1), &a(2))),
            (&self.b, wedge_unchecked(&abar(2), &a(2))),
            (&self.c, wedge_unchecked(&a(1), &abar(1))),
            (&self.d, wedge_unchecked(&a(1), &abar(2))),
            (&self.e, wedge_unchecked(&a(1), &a(2))),
        ];
        let mut top = Form::zero(n);
        for (coeff, f) in terms {
            top.add_assign(&f.scale(coeff));
        }
        AlgebraSpec::new("fps_skt", n, vec![Form::zero(n), Form::zero(n), top]).expect("(2,0)+(1,1) shape")
    }

    pub fn lhs(&self) -> BigRational {
        fps_lhs(&self.a, &self.b, &self.c, &self.d, &self.e)
    }
}

/// `|A|² + |D|² + |E|² + 2·Re(conj(B)·C)`.
pub fn fps_lhs(
    a: &GaussianRational,
    b: &GaussianRational,
    c: &GaussianRational,
    d: &GaussianRational,
    e: &GaussianRational,
) -> BigRational {
    a.norm_sqr() + d.norm_sqr() + e.norm_sqr() + (b.conj() * c).re * BigRational::from_integer(2.into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_structure_file;
    use crate::exterior::conjugate;
    use proptest::prelude::*;

    fn gr(a: i64, b: i64) -> GaussianRational {
        GaussianRational::from_int(a, b)
    }

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(p.into(), q.into())
    }

    fn spec(text: &str) -> AlgebraSpec {
        parse_structure_file(text).unwrap()
    }

    fn kodaira() -> AlgebraSpec {
        spec("algebra kodaira dim 2\nd a2 = (1)*a1^~a1")
    }

    fn iwasawa() -> AlgebraSpec {
        spec("algebra iwasawa dim 3\nd a3 = (-1)*a1^a2")
    }

    #[test]
    fn build_examples() {
        let t = AlgebraSpec::torus(2).unwrap();
        let id = identity_metric(&t);
        assert!(id.positive);
        let expected = Form::from_terms(
            2,
            [(BasisForm::new(&[1], &[1]).unwrap(), gr(0, 1)), (BasisForm::new(&[2], &[2]).unwrap(), gr(0, 1))],
        );
        assert_eq!(id.omega, expected);

        let m = build_metric(&t, vec![vec![gr(1, 0), gr(0, 1)], vec![gr(0, -1), gr(2, 0)]]).unwrap();
        assert!(m.positive);
        assert_eq!(conjugate(&m.omega), m.omega);

        let err = build_metric(&t, vec![vec![gr(1, 0), gr(1, 0)], vec![gr(0, 0), gr(1, 0)]]).unwrap_err();
        assert!(matches!(err, Error::NotHermitian { .. }));
        assert!(matches!(build_metric(&t, vec![vec![gr(1, 0)]]), Err(Error::MatrixShape { expected: 2 })));

        let indefinite = diagonal_metric(&t, &[rat(1, 1), rat(-1, 1)]).unwrap();
        assert!(!indefinite.positive);
    }

    #[test]
    fn power_examples() {
        let t3 = AlgebraSpec::torus(3).unwrap();
        let m = identity_metric(&t3);
        let vol = wedge_power(&m, 3).unwrap();
        // (i)^3 · 3! on α1∧ᾱ1∧α2∧ᾱ2∧α3∧ᾱ3; interleaved → canonical costs (−1)^3
        let top = BasisForm::new(&[1, 2, 3], &[1, 2, 3]).unwrap();
        assert_eq!(vol, Form::monomial(3, top, gr(0, -6) * gr(-1, 0)));
        assert_eq!(wedge_power(&m, 0).unwrap(), Form::one(3));
        assert!(matches!(wedge_power(&m, 4), Err(Error::ExponentOutOfRange { .. })));

        let m2 = identity_metric(&AlgebraSpec::torus(2).unwrap());
        let sq = wedge_power(&m2, 2).unwrap();
        // 2·(iα1ᾱ1)(iα2ᾱ2) = −2 α1ᾱ1α2ᾱ2 = 2 α1α2ᾱ1ᾱ2
        assert_eq!(sq, Form::monomial(2, BasisForm::new(&[1, 2], &[1, 2]).unwrap(), gr(2, 0)));
    }

    #[test]
    fn condition_examples() {
        let t = AlgebraSpec::torus(3).unwrap();
        assert!(check_condition(&t, &identity_metric(&t), Condition::Kahler).unwrap().holds);

        let k = kodaira();
        let r = check_condition(&k, &identity_metric(&k), Condition::Skt).unwrap();
        assert!(r.holds && r.witness.is_zero());
        assert!(!check_condition(&k, &identity_metric(&k), Condition::Kahler).unwrap().holds);
        // n = 2: astheno is ∂∂̄ of a scalar
        assert!(check_condition(&k, &identity_metric(&k), Condition::Astheno).unwrap().holds);

        let iw = iwasawa();
        let r = check_condition(&iw, &identity_metric(&iw), Condition::Astheno).unwrap();
        assert!(!r.holds);
        let top = BasisForm::new(&[1, 2], &[1, 2]).unwrap();
        assert_eq!(r.witness, Form::monomial(3, top, gr(0, -1)));
        assert_eq!(r, check_condition(&iw, &identity_metric(&iw), Condition::Skt).unwrap());
    }

    #[test]
    fn degenerate_pluriclosed_convention() {
        let iw = iwasawa();
        let m = identity_metric(&iw);
        for k in 3..6 {
            assert!(check_condition(&iw, &m, Condition::Pluriclosed(k)).unwrap().holds);
        }
        assert_eq!(
            check_condition(&iw, &m, Condition::Pluriclosed(1)).unwrap(),
            check_condition(&iw, &m, Condition::Gauduchon).unwrap()
        );
        let ft = check_condition(&iw, &m, Condition::FtPair).unwrap();
        assert!(!ft.holds);
    }

    #[test]
    fn condition_parsing() {
        for c in [
            Condition::Kahler,
            Condition::Gauduchon,
            Condition::Skt,
            Condition::Astheno,
            Condition::Pluriclosed(3),
            Condition::FtPair,
        ] {
            assert_eq!(c.to_string().parse::<Condition>().unwrap(), c);
        }
        assert!("pluriclosed:x".parse::<Condition>().is_err());
        assert!("balanced".parse::<Condition>().is_err());
    }

    #[test]
    fn exnilp_values() {
        let z = || vec![vec![gr(0, 0); 2]; 2];
        assert_eq!(exnilp_lhs(3, &z(), &z()).unwrap(), rat(0, 1));

        let b = vec![vec![gr(1, 0), gr(1, 0)], vec![gr(1, 0), gr(-1, 0)]];
        assert_eq!(exnilp_lhs_printed(3, &z(), &b).unwrap(), rat(0, 1));
        assert_eq!(exnilp_lhs(3, &z(), &b).unwrap(), rat(4, 1));

        let a = vec![vec![gr(0, 0), gr(1, 0)], vec![gr(0, 0), gr(0, 0)]];
        let half = GaussianRational::from_ratio(1, 2);
        let b = vec![vec![gr(0, 1), half.clone()], vec![half, gr(0, 1)]];
        assert_eq!(exnilp_lhs_printed(3, &a, &b).unwrap(), rat(7, 2));
        assert_eq!(exnilp_lhs(3, &a, &b).unwrap(), rat(-1, 2));

        let lower = vec![vec![gr(0, 0), gr(0, 0)], vec![gr(1, 0), gr(0, 0)]];
        assert!(matches!(exnilp_lhs(3, &lower, &z()), Err(Error::MalformedIndexSet(_))));
        assert!(matches!(exnilp_lhs(3, &z(), &[vec![gr(0, 0)]]), Err(Error::MalformedIndexSet(_))));
    }

    #[test]
    fn exnilp_vanishing_instance_is_astheno() {
        let a = vec![vec![gr(0, 0), gr(1, 0)], vec![gr(0, 0), gr(0, 0)]];
        let b = vec![vec![gr(1, 0), gr(1, 0)], vec![gr(0, 0), gr(1, 0)]];
        let fam = ExNilpFamily::new(3, a, b).unwrap();
        assert!(fam.lhs().is_zero());
        let s = fam.spec();
        assert!(check_condition(&s, &identity_metric(&s), Condition::Astheno).unwrap().holds);
    }

    #[test]
    fn fps_values() {
        let z = gr(0, 0);
        assert_eq!(fps_lhs(&z, &z, &z, &z, &z), rat(0, 1));
        assert_eq!(fps_lhs(&gr(1, 0), &z, &z, &z, &z), rat(1, 1));
        let fam = FpsFamily { a: z.clone(), b: gr(1, 0), c: gr(-1, 0), d: gr(1, 0), e: gr(1, 0) };
        assert_eq!(fam.lhs(), rat(0, 1));
        let s = fam.spec();
        assert!(crate::exterior::validate(&s).jacobi_ok);
        assert!(check_condition(&s, &identity_metric(&s), Condition::Skt).unwrap().holds);
    }

    fn arb_h(n: usize) -> impl Strategy<Value = Vec<Vec<GaussianRational>>> {
        proptest::collection::vec((-3i64..4, -3i64..4), n * n).prop_map(move |v| {
            let mut h = vec![vec![GaussianRational::zero(); n]; n];
            for j in 0..n {
                for k in j..n {
                    let (a, b) = v[j * n + k];
                    if j == k {
                        h[j][j] = gr(a.abs() + 1, 0);
                    } else {
                        h[j][k] = gr(a, b);
                        h[k][j] = gr(a, -b);
                    }
                }
            }
            h
        })
    }

    proptest! {
        #[test]
        fn powers_are_real(h in arb_h(3)) {
            let s = AlgebraSpec::torus(3).unwrap();
            let m = build_metric(&s, h).unwrap();
            for k in 0..=3 {
                let p = wedge_power(&m, k).unwrap();
                prop_assert_eq!(conjugate(&p), p);
            }
        }

        #[test]
        fn verdicts_invariant_under_positive_scaling(h in arb_h(3), num in 1i64..5, den in 1i64..5) {
            let s = spec("algebra f dim 3\nd a3 = (1)*a1^a2 + (1)*a1^~a1 + (2 - i)*a2^~a1 + (-1)*a2^~a2");
            let c = GaussianRational::from_ratio(num, den);
            let m = build_metric(&s, h.clone()).unwrap();
            let scaled = build_metric(&s, h.iter().map(|r| r.iter().map(|z| z * &c).collect()).collect()).unwrap();
            for cond in [Condition::Kahler, Condition::Skt, Condition::Astheno, Condition::Gauduchon, Condition::FtPair] {
                let a = check_condition(&s, &m, cond).unwrap();
                let b = check_condition(&s, &scaled, cond).unwrap();
                prop_assert_eq!(a.holds, b.holds);
            }
            // the obstruction scales by c^(n-k): here skt on n=3 gives c^1
            let a = check_condition(&s, &m, Condition::Skt).unwrap().witness;
            let b = check_condition(&s, &scaled, Condition::Skt).unwrap().witness;
            prop_assert_eq!(a.scale(&c), b);
        }
    }
}
