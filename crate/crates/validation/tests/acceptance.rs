//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::collections::BTreeMap;
use std::time::Instant;

use cogrowth::cayley::finite_structure;
use cogrowth::cogrowth::{count_vectors, gamma_prime, gamma_rate, CogrowthTable};
use cogrowth::montecarlo::{estimate_coincidence, estimate_local};
use cogrowth::operator::{operator_report, verify_walk_identity, walk_vectors, OperatorOptions};
use cogrowth::{adjoin_identity, power_generators, Family, Form, Semigroup, DEFAULT_ELEMENT_CAP};
use num_bigint::BigUint;

use cogrowth_validation::*;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lambda_root(sg: &mut Semigroup, horizon: usize) -> Vec<BigUint> {
    let root = sg.root();
    let t = CogrowthTable::compute(sg, horizon, &[root], DEFAULT_ELEMENT_CAP).unwrap();
    t.lambda[0].1.clone()
}

fn catalan_identity() -> Outcome {
    let start = Instant::now();
    let mut sg = family("bicyclic", Family::Bicyclic).session();
    let lambda = lambda_root(&mut sg, 24);
    let elapsed = start.elapsed().as_secs_f64();
    for k in 1..=12u64 {
        let got = &lambda[2 * k as usize - 1];
        ensure(*got == catalan(k), || {
            format!("λ_1({}) = {got}, expected {}", 2 * k, catalan(k))
        })?;
    }
    ensure(elapsed < 5.0, || format!("took {elapsed:.2} s"))?;
    Ok(format!(
        "λ_1(2k) = C_k for k = 1..12 (C_12 = {}) in {elapsed:.3} s",
        lambda[23]
    ))
}

fn central_binomial() -> Outcome {
    let lambda = lambda_root(&mut family("Z", z_sym()).session(), 24);
    for k in 1..=12u64 {
        let got = &lambda[2 * k as usize - 1];
        ensure(*got == binomial(2 * k, k), || {
            format!("symmetric λ_0({}) = {got}", 2 * k)
        })?;
    }
    let lambda = lambda_root(&mut family("Z", z_asym()).session(), 20);
    for k in 1..=10u64 {
        let got = &lambda[2 * k as usize - 1];
        let want = binomial(2 * k, k) << k as usize;
        ensure(*got == want, || {
            format!("asymmetric λ_0({}) = {got}, expected {want}", 2 * k)
        })?;
    }
    Ok("symmetric k ≤ 12 and asymmetric k ≤ 10 exact".into())
}

fn free_formula() -> Outcome {
    for rank in [2usize, 3] {
        let mut sg = family("free", Family::Free { rank }).session();
        let t = CogrowthTable::compute(&mut sg, 8, &[], DEFAULT_ELEMENT_CAP).unwrap();
        ensure(t.gamma_limit() >= 16, || {
            format!("γ only known up to {}", t.gamma_limit())
        })?;
        for n in 1..=16usize {
            let want = if n % 2 == 0 {
                BigUint::from(rank).pow(n as u32 / 2)
            } else {
                BigUint::from(0u32)
            };
            ensure(t.gamma[n] == want, || {
                format!("rank {rank}: γ({n}) = {}, expected {want}", t.gamma[n])
            })?;
        }
        let root = (rank as f64).sqrt();
        for horizon in 1..=8 {
            let r = gamma_rate(&t.gamma_prime[..=2 * horizon]).unwrap().value;
            ensure((r - root).abs() / root < 5e-12, || {
                format!("rank {rank}, N = {horizon}: rate {r}")
            })?;
        }
    }
    Ok("γ(n) exact for n ≤ 16, rate √|X| to 12 digits for N = 1..8".into())
}

fn symmetric_group_identity() -> Outcome {
    let mut sg = family("Z", z_sym()).session();
    let root = sg.root();
    let t = CogrowthTable::compute(&mut sg, 20, &[root], DEFAULT_ELEMENT_CAP).unwrap();
    for n in 1..=10usize {
        let (l, g) = (&t.lambda[0].1[2 * n - 1], &t.gamma_prime[2 * n]);
        ensure(l == g, || {
            format!("λ_0({}) = {l} but γ'({}) = {g}", 2 * n, 2 * n)
        })?;
    }
    Ok("λ_0(2n) = γ'(2n) for n ≤ 10".into())
}

fn walk_identity() -> Outcome {
    let mut names = Vec::new();
    for e in built_ins() {
        let mut sg = e.session();
        let gp = gamma_prime(&count_vectors(&mut sg, 10, DEFAULT_ELEMENT_CAP).unwrap());
        let walks = walk_vectors(&mut sg, 10);
        let check = verify_walk_identity(sg.rank(), &gp, &walks);
        ensure(check.passed && check.checked_up_to == 10, || {
            format!("{}: {check:?}", e.name)
        })?;
        names.push(e.name);
    }
    Ok(format!("exact for n ≤ 10 on {} engines", names.len()))
}

fn sampled_quotients(e: &Named) -> (f64, usize) {
    let mut sg = e.session();
    let opts = OperatorOptions {
        horizon: 4,
        radius: 6,
        iterations: 20,
        rayleigh_samples: 1000,
        max_support: 50,
        seed: 2024,
        cap: DEFAULT_ELEMENT_CAP,
    };
    let rep = operator_report(&mut sg, &opts).unwrap();
    let worst = rep
        .norm
        .quotients
        .iter()
        .copied()
        .fold(rep.rayleigh_max, f64::max);
    (worst, rep.norm.quotients.len())
}

fn acbc_norm_bound() -> Outcome {
    let bound = 5f64.sqrt() / 3.0;
    let (worst, iterates) = sampled_quotients(&acbc());
    ensure(iterates == 20, || {
        format!("only {iterates} power-iteration vectors")
    })?;
    ensure(worst <= bound + 1e-9, || {
        format!("quotient {worst} exceeds √5/3 = {bound}")
    })?;
    Ok(format!(
        "max quotient {worst:.6} ≤ √5/3 = {bound:.6} over 1000 random + 20 iterates"
    ))
}

fn cancellative_bound() -> Outcome {
    let engines = [
        family("free rank 2", Family::Free { rank: 2 }),
        family("free rank 3", Family::Free { rank: 3 }),
        family("Z symmetric", z_sym()),
        family("Z asymmetric", z_asym()),
        family(
            "Z^2",
            Family::IntegerLattice {
                dim: 2,
                gens: vec![],
            },
        ),
    ];
    let mut worst = 0.0f64;
    for e in &engines {
        let (w, _) = sampled_quotients(e);
        ensure(w <= 1.0 + 1e-9, || format!("{}: quotient {w}", e.name))?;
        worst = worst.max(w);
    }
    Ok(format!(
        "max quotient {worst:.6} ≤ 1 on {} engines",
        engines.len()
    ))
}

fn maximal_cogrowth_trend() -> Outcome {
    let mut notes = Vec::new();
    let mut failures = Vec::new();
    for (name, f) in [
        (
            "free commutative rank 2",
            Family::FreeCommutative { rank: 2 },
        ),
        ("Z symmetric", z_sym()),
    ] {
        let mut sg = family("", f).session();
        let gp = gamma_prime(&count_vectors(&mut sg, 14, DEFAULT_ELEMENT_CAP).unwrap());
        let rates: Vec<f64> = (1..=14)
            .map(|n| gamma_rate(&gp[..=2 * n]).unwrap().value)
            .collect();
        if !rates.windows(2).all(|w| w[1] >= w[0]) {
            failures.push(format!("{name}: rates decrease: {rates:?}"));
        }
        if rates[9] < 1.83 {
            failures.push(format!("{name}: rate {:.6} < 1.83 at N = 10", rates[9]));
        }
        if rates[13] < 1.87 {
            failures.push(format!("{name}: rate {:.6} < 1.87 at N = 14", rates[13]));
        }
        notes.push(format!("{name} {:.5}/{:.5}", rates[9], rates[13]));
    }
    let mut sg = family("", Family::Free { rank: 2 }).session();
    let gp = gamma_prime(&count_vectors(&mut sg, 14, DEFAULT_ELEMENT_CAP).unwrap());
    for n in 1..=14 {
        let r = gamma_rate(&gp[..=2 * n]).unwrap().value;
        if (r - 2f64.sqrt()).abs() > 1e-12 {
            failures.push(format!("free rank 2: rate {r} at N = {n}"));
        }
    }
    if failures.is_empty() {
        Ok(format!(
            "nondecreasing; N = 10/14: {}; free rank 2 stays √2",
            notes.join(", ")
        ))
    } else {
        Err(failures.join("; "))
    }
}

fn power_and_identity_inequalities() -> Outcome {
    // generator powers, over S¹ with the original generators
    for (name, f) in [
        ("free rank 2", Family::Free { rank: 2 }),
        (
            "free commutative rank 2",
            Family::FreeCommutative { rank: 2 },
        ),
    ] {
        let base = family("", f);
        let (one, _) = adjoin_identity(&base.engine, &base.gens);
        let y = power_generators(&one, &base.gens, 2, DEFAULT_ELEMENT_CAP).unwrap();
        let mut sx = Semigroup::new(one.clone(), base.gens.clone()).unwrap();
        let mut sy = Semigroup::new(one, y).unwrap();
        let gx = gamma_prime(&count_vectors(&mut sx, 8, DEFAULT_ELEMENT_CAP).unwrap());
        let gy = gamma_prime(&count_vectors(&mut sy, 4, DEFAULT_ELEMENT_CAP).unwrap());
        for q in 1..=4 {
            ensure(gy[2 * q] >= gx[4 * q], || {
                format!(
                    "{name}: γ'^Y({}) = {} < γ'^X({}) = {}",
                    2 * q,
                    gy[2 * q],
                    4 * q,
                    gx[4 * q]
                )
            })?;
        }
        if name.starts_with("free commutative") {
            ensure(
                gy[2] == BigUint::from(6u32) && gx[4] == BigUint::from(6u32),
                || format!("expected 6 = 6 at q = 1, got {} and {}", gy[2], gx[4]),
            )?;
        }
    }
    // adjoining an identity generator
    for (name, f) in [
        ("free rank 2", Family::Free { rank: 2 }),
        ("bicyclic", Family::Bicyclic),
    ] {
        let base = family("", f);
        let (one, y) = adjoin_identity(&base.engine, &base.gens);
        let tx = CogrowthTable::compute(&mut base.session(), 8, &[], DEFAULT_ELEMENT_CAP).unwrap();
        let ty = CogrowthTable::compute(
            &mut Semigroup::new(one, y).unwrap(),
            8,
            &[],
            DEFAULT_ELEMENT_CAP,
        )
        .unwrap();
        for n in 2..=8usize {
            let rhs: BigUint = (2..=n)
                .map(|i| binomial(n as u64, i as u64) * &tx.gamma[i])
                .sum();
            ensure(ty.gamma[n] >= rhs, || {
                format!("{name}: γ^Y({n}) = {} < {rhs}", ty.gamma[n])
            })?;
        }
    }
    Ok("generator-power q ≤ 4 (6 = 6 at q = 1) and adjoin-identity n ≤ 8 hold exactly".into())
}

fn structural_predicates() -> Outcome {
    let cases: Vec<(&str, Vec<Vec<usize>>)> = vec![
        ("right zero 2", right_zero(2)),
        ("left zero 2", left_zero(2)),
        ("C3", cyclic(3)),
        ("S3", s3()),
        ("rectangular band 2x3", rectangular_band(2, 3)),
        ("chain 4", chain(4)),
        ("zero semigroup 3", vec![vec![0; 3]; 3]),
        (
            "C2 with zero",
            vec![vec![0, 0, 0], vec![0, 1, 2], vec![0, 2, 1]],
        ),
    ];
    for (name, rows) in &cases {
        let rep = finite_structure(&table("", rows.clone()).engine).unwrap();
        let o = TableOracle { rows: rows.clone() };
        let checks = [
            ("left_reversible", rep.left_reversible, o.left_reversible()),
            ("klawe", rep.klawe, o.klawe()),
            (
                "right_cancellative",
                rep.right_cancellative,
                o.right_cancellative(),
            ),
            ("is_simple", rep.is_simple, o.simple()),
        ];
        for (what, got, want) in checks {
            ensure(got == want, || {
                format!("{name}: {what} = {got}, oracle says {want}")
            })?;
        }
        ensure(rep.minimal_ideal == o.kernel(), || {
            format!("{name}: minimal ideal {:?}", rep.minimal_ideal)
        })?;
        ensure(rep.j_classes.len() == o.j_class_count(), || {
            format!("{name}: J-class count")
        })?;
    }
    let get = |rows: Vec<Vec<usize>>| finite_structure(&table("", rows).engine).unwrap();
    let (rz, lz, c3) = (get(right_zero(2)), get(left_zero(2)), get(cyclic(3)));
    ensure(rz.left_reversible && rz.klawe, || "right zero".into())?;
    ensure(!lz.left_reversible && !lz.klawe, || "left zero".into())?;
    ensure(c3.is_simple && c3.right_cancellative, || "C3".into())?;
    Ok(format!(
        "named examples hold; {} tables agree with the brute-force oracle",
        cases.len()
    ))
}

fn oracle_equivalence() -> Outcome {
    let engines = built_ins();
    for e in &engines {
        let mut sg = e.session();
        let t = CogrowthTable::compute(&mut sg, 8, &[], DEFAULT_ELEMENT_CAP).unwrap();
        for (v, n) in t.vectors.iter().zip(1..) {
            let got: BTreeMap<Form, u64> = v
                .counts
                .iter()
                .map(|(s, c)| (sg.form(*s).unwrap().clone(), u64::try_from(c).unwrap()))
                .collect();
            ensure(got == histogram(&e.engine, &e.gens, n), || {
                format!("{}: histogram differs at n = {n}", e.name)
            })?;
        }
        for n in 1..=8 {
            let want = BigUint::from(pair_count(&e.engine, &e.gens, n));
            ensure(t.gamma[n] == want, || {
                format!("{}: γ({n}) = {}, pairs give {want}", e.name, t.gamma[n])
            })?;
        }
    }
    Ok(format!(
        "count vectors and γ match enumeration for n ≤ 8 on {} engines",
        engines.len()
    ))
}

fn monte_carlo_consistency() -> Outcome {
    let trials = 100_000;
    let mut worst = 0.0f64;
    let engines = built_ins();
    for e in &engines {
        let mut sg = e.session();
        let vectors = count_vectors(&mut sg, 6, DEFAULT_ELEMENT_CAP).unwrap();
        let gp = gamma_prime(&vectors);
        let k = sg.rank() as f64;
        let targets = [sg.root(), sg.step(sg.root(), 0)];
        for n in 1..=6usize {
            for (j, &s) in targets.iter().enumerate() {
                let w = estimate_local(&mut sg, s, n, trials, 1000 + j as u64).unwrap();
                let exact =
                    f64::from(u32::try_from(&vectors[n - 1].get(s)).unwrap()) / k.powi(n as i32);
                let dev = (w.estimate() - exact).abs();
                ensure(dev <= 4.0 * w.stderr(), || {
                    format!(
                        "{}: local n = {n}, estimate {} vs {exact}",
                        e.name,
                        w.estimate()
                    )
                })?;
                if w.stderr() > 0.0 {
                    worst = worst.max(dev / w.stderr());
                }
            }
            let w = estimate_coincidence(&mut sg, n, trials, 77).unwrap();
            let exact = f64::from(u32::try_from(&gp[2 * n]).unwrap()) / k.powi(2 * n as i32);
            let dev = (w.estimate() - exact).abs();
            ensure(dev <= 4.0 * w.stderr(), || {
                format!(
                    "{}: coincidence n = {n}, estimate {} vs {exact}",
                    e.name,
                    w.estimate()
                )
            })?;
            if w.stderr() > 0.0 {
                worst = worst.max(dev / w.stderr());
            }
        }
    }
    Ok(format!(
        "all within 4 standard errors on {} engines (worst {worst:.2})",
        engines.len()
    ))
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("Catalan identity", catalan_identity),
        ("central binomial", central_binomial),
        ("free-semigroup formula", free_formula),
        (
            "symmetric-group local/global identity",
            symmetric_group_identity,
        ),
        ("walk identity", walk_identity),
        ("norm bound on ac=bc", acbc_norm_bound),
        ("cancellative bound", cancellative_bound),
        ("maximal-cogrowth trend", maximal_cogrowth_trend),
        ("finite-scale inequalities", power_and_identity_inequalities),
        ("structural predicates", structural_predicates),
        ("brute-force oracle equivalence", oracle_equivalence),
        ("Monte Carlo consistency", monte_carlo_consistency),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let (verdict, detail) = match check() {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("acceptance {:>2} {verdict} {name}: {detail}", i + 1);
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
