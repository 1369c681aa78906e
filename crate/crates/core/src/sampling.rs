//! Seeded random structure equations and coefficient families.
//!
//! Every generator draws from a caller-owned RNG, so runs are reproducible
//! from the seed.

use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;

use crate::algebra::AlgebraSpec;
use crate::form::{BasisForm, Form};
use crate::metrics::{ExNilpFamily, FpsFamily};
use crate::scalar::GaussianRational;

fn small_rational<R: Rng>(rng: &mut R) -> BigRational {
    BigRational::new(rng.random_range(-3i64..=3).into(), rng.random_range(1i64..=2).into())
}

/// Real and imaginary parts in `{k/2 : |k| ≤ 6}`, zero about 1 time in 7 each.
pub fn gaussian<R: Rng>(rng: &mut R) -> GaussianRational {
    GaussianRational::new(small_rational(rng), small_rational(rng))
}

pub fn nonzero_gaussian<R: Rng>(rng: &mut R) -> GaussianRational {
    loop {
        let z = gaussian(rng);
        if !z.is_zero() {
            return z;
        }
    }
}

/// Sparse coefficient: zero with probability 1/2.
fn sparse<R: Rng>(rng: &mut R) -> GaussianRational {
    if rng.random_bool(0.5) {
        nonzero_gaussian(rng)
    } else {
        GaussianRational::zero()
    }
}

/// Two-step nilpotent structure equations: generators `1..=m` are closed for
/// a random `1 ≤ m < n`, and the rest have `dα_i` built from core monomials
/// only, so `d² = 0` and the complex structure is nilpotent by construction.
pub fn two_step_nilpotent<R: Rng>(rng: &mut R, n: usize) -> AlgebraSpec {
    assert!(n >= 1);
    if n == 1 {
        return AlgebraSpec::torus(1).expect("n = 1");
    }
    let m = rng.random_range(1..n);
    let mut core = Vec::new();
    for j in 1..=m {
        for k in j + 1..=m {
            core.push(BasisForm::new(&[j, k], &[]).unwrap());
        }
        for k in 1..=m {
            core.push(BasisForm::new(&[j], &[k]).unwrap());
        }
    }
    let mut gens = vec![Form::zero(n); m];
    for _ in m..n {
        let mut f = Form::zero(n);
        for b in &core {
            f.add_term(*b, sparse(rng));
        }
        gens.push(f);
    }
    AlgebraSpec::new(format!("two_step{n}"), n, gens).expect("core monomials have the allowed shape")
}

fn random_upper<R: Rng>(rng: &mut R, m: usize) -> Vec<Vec<GaussianRational>> {
    (0..m).map(|i| (0..m).map(|j| if i < j { sparse(rng) } else { GaussianRational::zero() }).collect()).collect()
}

/// A draw of the single-top-generator family. With probability 1/2 the
/// diagonal of `B` is solved for so that the closed-form value is zero.
pub fn exnilp_draw<R: Rng>(rng: &mut R, n: usize) -> ExNilpFamily {
    let m = n - 1;
    let a = random_upper(rng, m);
    let mut b: Vec<Vec<GaussianRational>> =
        (0..m).map(|i| (0..m).map(|j| if i == j { gaussian(rng) } else { sparse(rng) }).collect()).collect();
    if m >= 2 && rng.random_bool(0.5) {
        for (i, row) in b.iter_mut().enumerate() {
            row[i] = GaussianRational::zero();
        }
        let s = ExNilpFamily::new(n, a.clone(), b.clone()).expect("shape").lhs();
        // only B_11·conj(B_22) survives in the cross term
        let r = nonzero_rational(rng);
        let t = small_rational(rng);
        b[1][1] = GaussianRational::real(r.clone());
        b[0][0] = GaussianRational::new(s / (r * BigRational::from_integer(2.into())), t);
    }
    ExNilpFamily::new(n, a, b).expect("shape")
}

fn nonzero_rational<R: Rng>(rng: &mut R) -> BigRational {
    loop {
        let r = small_rational(rng);
        if !r.is_zero() {
            return r;
        }
    }
}

/// A draw of the five-parameter n = 3 family; half of the draws have the
/// closed-form value forced to zero by solving for `C`.
pub fn fps_draw<R: Rng>(rng: &mut R) -> FpsFamily {
    let mut f = FpsFamily { a: sparse(rng), b: gaussian(rng), c: gaussian(rng), d: sparse(rng), e: sparse(rng) };
    if rng.random_bool(0.5) {
        f.b = nonzero_gaussian(rng);
        let s = f.a.norm_sqr() + f.d.norm_sqr() + f.e.norm_sqr();
        // conj(B)·C = −s/2 + i·t·|B|²
        let t = GaussianRational::new(BigRational::zero(), small_rational(rng));
        let scale = GaussianRational::real(-s / (f.b.norm_sqr() * BigRational::from_integer(2.into())));
        f.c = &(&scale + &t) * &f.b;
    }
    f
}

/// Two valid nilpotent specs with `n_a + n_b ≤ max_total`.
pub fn random_pair<R: Rng>(rng: &mut R, max_total: usize) -> (AlgebraSpec, AlgebraSpec) {
    assert!(max_total >= 2);
    let na = rng.random_range(1..max_total);
    let nb = rng.random_range(1..=max_total - na);
    (two_step_nilpotent(rng, na), two_step_nilpotent(rng, nb))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::validate;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn two_step_specs_are_valid_and_nilpotent() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..=5 {
            for _ in 0..10 {
                let v = validate(&two_step_nilpotent(&mut rng, n));
                assert!(v.jacobi_ok && v.nilpotent_j);
            }
        }
    }

    #[test]
    fn constructed_draws_hit_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let zeros = (0..100).filter(|_| exnilp_draw(&mut rng, 4).lhs().is_zero()).count();
        assert!((30..=70).contains(&zeros), "{zeros}");
        let zeros = (0..100).filter(|_| fps_draw(&mut rng).lhs().is_zero()).count();
        assert!((30..=70).contains(&zeros), "{zeros}");
    }

    #[test]
    fn seeded_runs_repeat() {
        let a: Vec<_> = {
            let mut rng = ChaCha8Rng::seed_from_u64(3);
            (0..5).map(|_| two_step_nilpotent(&mut rng, 4)).collect()
        };
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let b: Vec<_> = (0..5).map(|_| two_step_nilpotent(&mut rng, 4)).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn pairs_respect_budget() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let (a, b) = random_pair(&mut rng, 5);
            assert!(a.n() + b.n() <= 5);
        }
    }
}
