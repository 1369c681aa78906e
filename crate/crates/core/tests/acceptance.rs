//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails. Runtime bounds are part of each verdict.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use nilcoh_core::catalog::{all_entries, catalog_get};
use nilcoh_core::cohomology::{Bicomplex, Theory, Validity};
use nilcoh_core::exterior::{delbar, differential};
use nilcoh_core::metrics::{build_metric, check_condition, diagonal_metric, identity_metric, Condition, MetricForm};
use nilcoh_core::obstructions::{
    astheno_consequences, gap_verdict, jost_yau, kunneth_check, l_values, obstruct, GapVerdict, JostYau,
};
use nilcoh_core::sampling::{exnilp_draw, fps_draw, random_pair, two_step_nilpotent};
use nilcoh_core::{AlgebraSpec, BasisForm, Form, GaussianRational};

type Outcome = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Diagonal metrics with entries in {1, 2}, plus one with off-diagonal terms.
fn metric_grid(spec: &AlgebraSpec) -> Vec<MetricForm> {
    let n = spec.n();
    let mut out = Vec::new();
    for code in 0..(1usize << n) {
        let diag: Vec<BigRational> =
            (0..n).map(|k| BigRational::from_integer((1 + ((code >> k) & 1) as i64).into())).collect();
        out.push(diagonal_metric(spec, &diag).unwrap());
    }
    if n >= 2 {
        let mut h = vec![vec![GaussianRational::zero(); n]; n];
        for (k, row) in h.iter_mut().enumerate() {
            row[k] = GaussianRational::from_int(2, 0);
        }
        h[0][1] = GaussianRational::from_int(0, 1);
        h[1][0] = GaussianRational::from_int(0, -1);
        out.push(build_metric(spec, h).unwrap());
    }
    out
}

fn c1_iwasawa() -> Outcome {
    let e = catalog_get("iwasawa").map_err(|e| e.to_string())?;
    let bc = Bicomplex::new(&e.spec).map_err(|e| e.to_string())?;
    let b = bc.hodge_number(Theory::BottChern, 0, 1).unwrap();
    let a = bc.hodge_number(Theory::Aeppli, 0, 1).unwrap();
    ensure((b, a) == (2, 3), || format!("got h01_bc={b}, h01_a={a}"))?;
    Ok(format!("h01_bc={b}, h01_a={a}"))
}

fn c2_jost_yau() -> Outcome {
    let spec = catalog_get("iwasawa").unwrap().spec;
    let a3 = Form::holo_generator(3, 3);
    let JostYau::Fail { witness } = jost_yau(&spec).unwrap() else {
        return Err("jost_yau passed".into());
    };
    ensure(witness == a3, || format!("witness {witness}"))?;
    ensure(!differential(&spec, &a3).unwrap().is_zero(), || "d a3 = 0".into())?;
    ensure(delbar(&spec, &a3).unwrap().is_zero(), || "delbar a3 != 0".into())?;
    let r = obstruct(&spec, None).unwrap();
    ensure(r.obstructed(), || "obstruct verdict does not exclude".into())?;
    Ok(format!("witness {witness}, obstructed"))
}

fn c3_surfaces() -> Outcome {
    let k = gap_verdict(&catalog_get("kodaira").unwrap().spec).unwrap();
    let t = gap_verdict(&catalog_get("torus(2)").unwrap().spec).unwrap();
    ensure(k.gap == 1 && t.gap == 0, || format!("kodaira gap {}, torus(2) gap {}", k.gap, t.gap))?;
    Ok("kodaira gap 1, torus(2) gap 0".into())
}

/// `α_1∧ᾱ_1∧…∧α_m∧ᾱ_m` as a form.
fn interleaved(n: usize, m: usize) -> Form {
    let all: Vec<usize> = (1..=m).collect();
    let sign = if (m * (m - 1) / 2).is_multiple_of(2) { 1 } else { -1 };
    Form::monomial(n, BasisForm::new(&all, &all).unwrap(), GaussianRational::from_int(sign, 0))
}

fn c4_exnilp_oracle() -> Outcome {
    let draws: Vec<(usize, u64)> = [3usize, 4, 5].iter().flat_map(|&n| (0..70u64).map(move |s| (n, s))).collect();
    let results: Vec<Result<bool, String>> = draws
        .par_iter()
        .map(|&(n, seed)| {
            let mut rng = ChaCha8Rng::seed_from_u64(1000 * n as u64 + seed);
            let fam = exnilp_draw(&mut rng, n);
            let spec = fam.spec();
            let lhs = fam.lhs();
            let r = check_condition(&spec, &identity_metric(&spec), Condition::Astheno).map_err(|e| e.to_string())?;
            if lhs.is_zero() != r.holds {
                return Err(format!("n={n} seed={seed}: lhs={lhs} but astheno={}", r.holds));
            }
            // c_n = i^{n−2}(n−2)!
            let mut c = GaussianRational::one();
            for k in 1..=n - 2 {
                c = &c * &GaussianRational::from_int(0, k as i64);
            }
            let predicted = interleaved(n, n - 1).scale(&(&c * &GaussianRational::real(lhs.clone())));
            if r.witness != predicted {
                return Err(format!("n={n} seed={seed}: witness {} vs predicted {}", r.witness, predicted));
            }
            Ok(lhs.is_zero())
        })
        .collect();
    let mut zeros = 0;
    for r in results {
        zeros += usize::from(r?);
    }
    ensure(zeros > 0 && zeros < draws.len(), || format!("degenerate sample: {zeros} zeros"))?;
    Ok(format!("{} draws, {zeros} astheno", draws.len()))
}

fn c5_fps_oracle() -> Outcome {
    let total = 220u64;
    let results: Vec<Result<bool, String>> = (0..total)
        .into_par_iter()
        .map(|seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(5000 + seed);
            let fam = fps_draw(&mut rng);
            let spec = fam.spec();
            let holds =
                check_condition(&spec, &identity_metric(&spec), Condition::Skt).map_err(|e| e.to_string())?.holds;
            if fam.lhs().is_zero() != holds {
                return Err(format!("seed={seed}: lhs={} but skt={holds}", fam.lhs()));
            }
            Ok(holds)
        })
        .collect();
    let mut zeros = 0;
    for r in results {
        zeros += usize::from(r?);
    }
    ensure(zeros > 0 && zeros < total as usize, || format!("degenerate sample: {zeros} zeros"))?;
    Ok(format!("{total} draws, {zeros} skt"))
}

fn c6_astheno_gap() -> Outcome {
    let mut specs_with_metric = 0;
    let mut nonabelian = 0;
    for e in all_entries() {
        let mut found = false;
        for m in metric_grid(&e.spec) {
            let Some(c) = astheno_consequences(&e.spec, &m).map_err(|err| format!("{}: {err}", e.key))? else {
                continue;
            };
            found = true;
            ensure(c.holds(), || format!("{}: {c:?}", e.key))?;
            if c.gap_is_one.is_some() {
                ensure(c.l_rank == 1, || format!("{}: l_rank {}", e.key, c.l_rank))?;
            }
        }
        if found {
            specs_with_metric += 1;
            if Validity::of(&e.spec) == Validity::NilpotentJ && !e.spec.is_abelian() {
                nonabelian += 1;
            }
        }
    }
    ensure(nonabelian > 0, || "no non-abelian astheno entry exercised".into())?;
    Ok(format!("{specs_with_metric} entries with astheno metrics, {nonabelian} non-abelian"))
}

fn c7_torality() -> Outcome {
    let total = 120u64;
    let results: Vec<Result<(bool, bool), String>> = (0..total)
        .into_par_iter()
        .map(|seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(7000 + seed);
            let n = 2 + (seed % 4) as usize;
            let spec = two_step_nilpotent(&mut rng, n);
            let g = gap_verdict(&spec).map_err(|e| e.to_string())?;
            if g.validity != Validity::NilpotentJ {
                return Err(format!("seed={seed}: generator produced a non-nilpotent J"));
            }
            if g.gap == 0 && !spec.is_abelian() {
                return Err(format!("seed={seed}: gap 0 on non-abelian spec\n{}", spec.to_dsl()));
            }
            Ok((spec.is_abelian(), g.gap == 0))
        })
        .collect();
    let mut nonabelian = 0;
    for r in results {
        let (abelian, _) = r?;
        nonabelian += usize::from(!abelian);
    }
    Ok(format!("{total} specs, {nonabelian} non-abelian"))
}

fn c8_kunneth() -> Outcome {
    let total = 60u64;
    let results: Vec<Result<(), String>> = (0..total)
        .into_par_iter()
        .map(|seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(8000 + seed);
            let (a, b) = random_pair(&mut rng, 5);
            let r = kunneth_check(&a, &b).map_err(|e| e.to_string())?;
            ensure(r.passed(), || format!("seed={seed}: {r:?}"))
        })
        .collect();
    results.into_iter().collect::<Result<Vec<()>, String>>()?;
    Ok(format!("{total} pairs"))
}

fn c9_symmetries() -> Outcome {
    let entries = all_entries();
    let max_n = entries.iter().map(|e| e.spec.n()).max().unwrap_or(0);
    let results: Vec<Result<(), String>> = entries
        .par_iter()
        .map(|e| {
            let bc = Bicomplex::new(&e.spec).map_err(|err| err.to_string())?;
            let n = e.spec.n();
            let tb = bc.hodge_table(Theory::BottChern).map_err(|err| err.to_string())?;
            let ta = bc.hodge_table(Theory::Aeppli).map_err(|err| err.to_string())?;
            for p in 0..=n {
                for q in 0..=n {
                    ensure(tb.get(p, q) == tb.get(q, p), || format!("{}: bc ({p},{q})", e.key))?;
                    ensure(ta.get(p, q) == ta.get(q, p), || format!("{}: aeppli ({p},{q})", e.key))?;
                    if tb.validity == Validity::NilpotentJ {
                        ensure(tb.get(p, q) == ta.get(n - p, n - q), || format!("{}: duality at ({p},{q})", e.key))?;
                    }
                }
            }
            Ok(())
        })
        .collect();
    results.into_iter().collect::<Result<Vec<()>, String>>()?;
    Ok(format!("{} entries, n <= {max_n}", entries.len()))
}

fn c10_nakamura() -> Outcome {
    let g = gap_verdict(&catalog_get("nakamura_ce").unwrap().spec).unwrap();
    let got = (g.h01_bc, g.h01_a, g.gap, g.gap_verdict, g.validity);
    ensure(got == (1, 3, 2, GapVerdict::Excluded, Validity::CeOnly), || format!("{got:?}"))?;
    Ok("(1,3), gap 2, excluded, ce_only".into())
}

fn c11_l_complex() -> Outcome {
    let mut pairs = 0;
    for e in all_entries() {
        let reps = Bicomplex::new(&e.spec).unwrap().class_representatives(Theory::BottChern, 0, 1).unwrap();
        for m in metric_grid(&e.spec) {
            if !check_condition(&e.spec, &m, Condition::Gauduchon).unwrap().holds {
                continue;
            }
            pairs += 1;
            let values = l_values(&e.spec, &m, &reps).unwrap();
            ensure(values.iter().all(Zero::is_zero), || format!("{}: values {values:?}", e.key))?;
        }
    }
    ensure(pairs > 0, || "no Gauduchon metric exercised".into())?;
    Ok(format!("{pairs} (entry, Gauduchon metric) pairs"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("iwasawa h01 fixture", Duration::from_secs(1), c1_iwasawa),
        ("jost-yau on iwasawa", Duration::from_secs(1), c2_jost_yau),
        ("surface dichotomy", Duration::from_secs(1), c3_surfaces),
        ("astheno closed form vs direct check", Duration::from_secs(60), c4_exnilp_oracle),
        ("skt closed form vs direct check", Duration::from_secs(30), c5_fps_oracle),
        ("astheno metrics force gap and exactness", Duration::from_secs(10), c6_astheno_gap),
        ("torality on random nilpotent specs", Duration::from_secs(60), c7_torality),
        ("kunneth on random pairs", Duration::from_secs(120), c8_kunneth),
        ("conjugation symmetry and duality", Duration::from_secs(30), c9_symmetries),
        ("nakamura gap-2 exclusion", Duration::from_secs(1), c10_nakamura),
        ("L vanishes on bott-chern classes", Duration::from_secs(10), c11_l_complex),
    ];
    let mut failed = 0;
    for (k, (name, bound, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let (status, detail) = match outcome {
            Ok(d) if elapsed <= *bound => ("PASS", d),
            Ok(d) => ("FAIL", format!("{d}; over time bound")),
            Err(d) => ("FAIL", d),
        };
        failed += usize::from(status == "FAIL");
        println!("{status} {:>2} {name}: {detail} ({:.3}s, bound {}s)", k + 1, elapsed.as_secs_f64(), bound.as_secs());
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
