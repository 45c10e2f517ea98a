//! One PASS/FAIL line per acceptance criterion; exits nonzero on any FAIL.

use std::process::ExitCode;
use std::time::Instant;

use borel_core::chops::{n_invariance_check, sample_generic, semi_invariance_check};
use borel_core::dpop::{dp_weight_check, pfaffian_rho, LambdaPoint};
use borel_core::heisenberg::{plancherel_isometry_demo, standard_test_functions};
use borel_core::liestruct::{half, Decomposition};
use borel_core::orbits::{build_cross_section, casimir_vector, kappa_from_casimirs, pukanszky_check, PolarizationData};
use borel_core::poisson::{
    bracket, casimir_suite, coordinates, involutive_family, involutivity_suite, sample_toda_initial, toda_integrate,
    BracketObservable, Observable,
};
use borel_core::random::{self, trial_rng};
use borel_core::Result;

struct Outcome {
    pass: bool,
    detail: String,
}

fn criterion(name: &str, results: &mut Vec<bool>, f: impl FnOnce() -> Result<Outcome>) {
    let start = Instant::now();
    let outcome = f().unwrap_or_else(|e| Outcome {
        pass: false,
        detail: format!("error: {e}"),
    });
    let secs = start.elapsed().as_secs_f64();
    let tag = if outcome.pass { "PASS" } else { "FAIL" };
    println!("{tag} {name} [{secs:.1}s]: {}", outcome.detail);
    results.push(outcome.pass);
}

fn semi_invariance() -> Result<Outcome> {
    let mut checks = 0;
    let mut failures = Vec::new();
    for n in 2..=7 {
        for r in 0..=half(n) {
            for m in 0..=n - 2 * r {
                let rep = semi_invariance_check(n, r, m, 20, 1000 + n as u64)?;
                checks += 1;
                if !rep.passed() {
                    failures.push(format!("n={n} r={r} m={m} trials {:?}", rep.failures));
                }
            }
        }
    }
    Ok(Outcome {
        pass: failures.is_empty(),
        detail: format!("{checks} (n,r,m) checks x 20 trials, failures: {failures:?}"),
    })
}

fn n_invariance() -> Result<Outcome> {
    let mut bad = Vec::new();
    for n in 2..=7 {
        let rep = n_invariance_check(n, 20, 2000 + n as u64)?;
        if !rep.passed() {
            bad.push(n);
        }
    }
    Ok(Outcome {
        pass: bad.is_empty(),
        detail: format!("n = 2..7, 20 trials each, failing n: {bad:?}"),
    })
}

fn involutivity() -> Result<Outcome> {
    let mut pairs = 0;
    let mut bad = Vec::new();
    for n in 2..=5 {
        let rep = involutivity_suite(n, 10, 3000 + n as u64)?;
        pairs += rep.pairs_per_trial * rep.trials;
        if !rep.passed() {
            bad.push(n);
        }
    }
    Ok(Outcome {
        pass: bad.is_empty(),
        detail: format!("{pairs} exact brackets, failing n: {bad:?}"),
    })
}

fn casimirs() -> Result<Outcome> {
    let mut pairs = 0;
    let mut bad = Vec::new();
    for n in 2..=5 {
        let rep = casimir_suite(n, 10, 4000 + n as u64)?;
        pairs += rep.pairs_per_trial * rep.trials;
        if !rep.passed() {
            bad.push(n);
        }
    }
    Ok(Outcome {
        pass: bad.is_empty(),
        detail: format!("{pairs} exact brackets against all coordinates, failing n: {bad:?}"),
    })
}

fn pukanszky() -> Result<Outcome> {
    let mut bad = Vec::new();
    for n in 2..=7 {
        let mut rng = trial_rng(5000, n as u64);
        for t in 0..5 {
            let kappa: Vec<_> = (0..n - half(n)).map(|_| random::rational(&mut rng)).collect();
            if !pukanszky_check(n, &kappa)?.passed() {
                bad.push((n, t));
            }
        }
    }
    let mut dim_bad = Vec::new();
    for n in 2..=12 {
        let dim_h = PolarizationData::new(n)?.dim_h();
        if 2 * dim_h - (n - half(n)) != n * (n + 1) / 2 {
            dim_bad.push(n);
        }
    }
    Ok(Outcome {
        pass: bad.is_empty() && dim_bad.is_empty(),
        detail: format!("conditions (1)-(4) n = 2..7 x 5 κ, failures {bad:?}; dimension identity n = 2..12, failures {dim_bad:?}"),
    })
}

fn kappa_round_trip() -> Result<Outcome> {
    let mut bad = Vec::new();
    for n in 2..=6 {
        for t in 0..10 {
            let x = sample_generic(n, &mut trial_rng(6000 + n as u64, t))?;
            let kappa = kappa_from_casimirs(&x)?;
            let f = build_cross_section(n, &kappa)?;
            if casimir_vector(&f.f)? != casimir_vector(x.matrix())? {
                bad.push(format!("casimirs n={n} t={t}"));
            }
            if kappa_from_casimirs(&f.as_hessenberg())? != kappa {
                bad.push(format!("fixed point n={n} t={t}"));
            }
        }
    }
    Ok(Outcome {
        pass: bad.is_empty(),
        detail: format!("n = 2..6 x 10 generic X, failures: {bad:?}"),
    })
}

fn dp_symbol() -> Result<Outcome> {
    let mut bad = Vec::new();
    for n in 2..=16 {
        let rep = dp_weight_check(n)?;
        let r = half(n) as u64;
        let alpha_ok = rep.alpha.iter().enumerate().all(|(k, &a)| a == if n % 2 == 0 && k as u64 + 1 == r { 1 } else { 2 });
        let deg = if n % 2 == 1 { r * (r + 1) } else { r * r };
        let half_dim = 2 * rep.degree == (n * (n - 1) / 2) as u64 + r;
        if !(rep.passed() && alpha_ok && rep.degree == deg && half_dim) {
            bad.push(n);
        }
    }
    Ok(Outcome {
        pass: bad.is_empty(),
        detail: format!("n = 2..16, failing n: {bad:?}"),
    })
}

fn pfaffian() -> Result<Outcome> {
    let mut bad = Vec::new();
    for n in 3..=6 {
        let d = Decomposition::new(n)?;
        let mut rng = trial_rng(7000, n as u64);
        for t in 0..10 {
            let lambda: Vec<_> = (0..half(n)).map(|_| random::nonzero_rational(&mut rng)).collect();
            let rho = pfaffian_rho(&LambdaPoint::new(n, lambda.clone())?);
            let det = d.b_lambda_gram(&lambda)?.det()?;
            if &rho * &rho != det.abs() {
                bad.push((n, t));
            }
        }
    }
    Ok(Outcome {
        pass: bad.is_empty(),
        detail: format!("ρ² = |det Gram| for n = 3..6 x 10 λ, failures {bad:?}"),
    })
}

fn toda() -> Result<Outcome> {
    let mut pass = true;
    let mut parts = Vec::new();
    for n in [4usize, 5] {
        let x0 = sample_toda_initial(n, &mut trial_rng(8000, n as u64));
        let obs = involutive_family(n);
        let coarse = toda_integrate(&x0, 10.0, 1e-3, &obs)?.max_drift();
        let fine = toda_integrate(&x0, 10.0, 5e-4, &obs)?.max_drift();
        let ratio = coarse / fine;
        pass &= coarse <= 1e-8 && ratio >= 12.0;
        parts.push(format!("n={n} drift {coarse:.2e}, halved {fine:.2e}, ratio {ratio:.1}"));
    }
    Ok(Outcome {
        pass,
        detail: parts.join("; "),
    })
}

fn heisenberg() -> Result<Outcome> {
    let mut pass = true;
    let mut parts = Vec::new();
    for f in standard_test_functions() {
        let base = plancherel_isometry_demo(&f, 256, 10.0, 8.0, 160)?;
        let refined = plancherel_isometry_demo(&f, 512, 10.0, 8.0, 320)?;
        let within = (base.ratio - 1.0).abs() <= 0.01;
        let toward = (refined.ratio - 1.0).abs() < (base.ratio - 1.0).abs();
        pass &= within && toward;
        parts.push(format!(
            "{}: ratio {:.4} -> {:.4} refined (ratio/8π² {:.4} -> {:.4})",
            f.name, base.ratio, refined.ratio, base.normalized_ratio, refined.normalized_ratio
        ));
    }
    Ok(Outcome {
        pass,
        detail: parts.join("; "),
    })
}

fn jacobi() -> Result<Outcome> {
    let mut triples = 0;
    let mut bad = Vec::new();
    for n in 2..=4 {
        let mut obs = coordinates(n);
        obs.push(Observable::TracePower(2));
        obs.push(Observable::TracePower(3));
        obs.push(Observable::Product(
            Box::new(Observable::Coordinate { i: n, j: 1 }),
            Box::new(Observable::Coordinate { i: n, j: n }),
        ));
        if n >= 3 {
            obs.push(Observable::Casimir { m: 1, r: 1 });
        }
        for t in 0..2 {
            let x = sample_generic(n, &mut trial_rng(9000 + n as u64, t))?.into_matrix();
            let k = obs.len();
            for a in 0..k {
                for b in a + 1..k {
                    for c in b + 1..k {
                        let (f, g, h) = (&obs[a], &obs[b], &obs[c]);
                        let total = bracket(f, &BracketObservable(g.clone(), h.clone()), &x)?
                            + bracket(g, &BracketObservable(h.clone(), f.clone()), &x)?
                            + bracket(h, &BracketObservable(f.clone(), g.clone()), &x)?;
                        triples += 1;
                        if !total.is_zero() {
                            bad.push(format!("n={n} {f} {g} {h}"));
                        }
                    }
                }
            }
        }
    }
    Ok(Outcome {
        pass: bad.is_empty(),
        detail: format!("{triples} exact cyclic sums, failures: {bad:?}"),
    })
}

fn main() -> ExitCode {
    let mut results = Vec::new();
    criterion("semi-invariance", &mut results, semi_invariance);
    criterion("n-invariance-homogeneity", &mut results, n_invariance);
    criterion("involutivity", &mut results, involutivity);
    criterion("casimir-property", &mut results, casimirs);
    criterion("pukanszky-suite", &mut results, pukanszky);
    criterion("kappa-round-trip", &mut results, kappa_round_trip);
    criterion("dp-symbol", &mut results, dp_symbol);
    criterion("pfaffian-consistency", &mut results, pfaffian);
    criterion("toda-conservation", &mut results, toda);
    criterion("heisenberg-plancherel", &mut results, heisenberg);
    criterion("jacobi-identity", &mut results, jacobi);
    let failed = results.iter().filter(|p| !**p).count();
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
