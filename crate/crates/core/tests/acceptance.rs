//! The acceptance suite: nine criteria, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so the report is always printed.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use core_fibres::ehrhart::{
    count_parametric, fibre_quasipolynomial, relative_volume, verify_quasipoly,
};
use core_fibres::fibre::{
    count, count_brute, count_brute_pruned, divisor_count_brute, divisor_quasipoly,
    factor_noncoprime, FibreCensus, DEFAULT_CAP,
};
use core_fibres::multiset::multichoose;
use core_fibres::partition::enumerate_cores;
use core_fibres::polytope::{lattice_points, ParametricSystem};
use core_fibres::{ExactPolynomial, FibreProblem, MarginPair, Partition, TransportationSpec};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn part(s: &str) -> Partition {
    s.parse().expect("partition literal")
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn poly(coeffs: &[i64], denom: i64) -> ExactPolynomial {
    ExactPolynomial::new(coeffs.iter().map(|&c| rat(c, denom)).collect())
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let took = start.elapsed();
    ensure(took < limit, || format!("took {took:?}, limit {limit:?}"))
}

fn core_computation() -> Outcome {
    let lambda = part("5,4,3,1");
    let start = Instant::now();
    let core = lambda.core(6);
    let took = start.elapsed();
    ensure(core == part("1"), || format!("core_6 = {core}"))?;
    ensure(took < Duration::from_millis(1), || format!("took {took:?}"))?;
    Ok(format!("core_6(5,4,3,1) = {core} in {took:?}"))
}

fn core_census() -> Outcome {
    let start = Instant::now();
    for t in 2..=4 {
        for k in 0..=6 {
            let n = enumerate_cores(t, k).map_err(|e| e.to_string())?.len();
            let expected = multichoose(t as u64, k as u64);
            ensure(BigUint::from(n) == expected, || {
                format!("t={t} k={k}: {n} cores, expected {expected}")
            })?;
        }
    }
    within(start, Duration::from_secs(1))?;
    Ok("t in 2..=4, k in 0..=6".into())
}

fn two_three_branches() -> Vec<ExactPolynomial> {
    [[1, 3, 3], [1, 4, 3], [2, 5, 3], [3, 6, 3], [4, 7, 3], [5, 8, 3]]
        .iter()
        .map(|c| poly(c, 1))
        .collect()
}

fn coprime_quasipolynomial() -> Outcome {
    let start = Instant::now();
    let p = FibreProblem::new(2, 3, part("-"), part("-")).map_err(|e| e.to_string())?;
    let q = fibre_quasipolynomial(&p).map_err(|e| e.to_string())?;
    ensure(q.period == 6 && q.anchor == 0, || {
        format!("period {} anchor {}", q.period, q.anchor)
    })?;
    for (r, (got, want)) in q.branches.iter().zip(two_three_branches()).enumerate() {
        ensure(*got == want, || format!("branch n = 6k+{r}: {got}, expected {want}"))?;
    }
    let report = verify_quasipoly(&q, |n| count_brute(&p, n, DEFAULT_CAP), 0..=30)
        .map_err(|e| e.to_string())?;
    if let Some(bad) = report.first_disagreement {
        return Err(format!("brute force differs at n = {}", bad.n));
    }
    within(start, Duration::from_secs(30))?;
    Ok("six branches exact, brute force agrees on [0, 30]".into())
}

fn divisor_closed_form() -> Outcome {
    let sigma = part("4,3,2,1");
    let q = divisor_quasipoly(6, 2, &sigma).map_err(|e| e.to_string())?;
    let even = poly(&[60, 112, 65, 14, 1], 4);
    let odd = poly(&[84, 152, 83, 16, 1], 4);
    ensure(q.branches == [even.clone(), odd.clone()], || {
        format!("branches {} and {}", q.branches[0], q.branches[1])
    })?;
    for k in 0..=10 {
        let brute = divisor_count_brute(6, 2, &sigma, k, DEFAULT_CAP).map_err(|e| e.to_string())?;
        let value = if k < q.threshold {
            // Below the length of σ no 6-core has 2-core σ.
            BigUint::from(0u32)
        } else {
            q.value(k).ok_or_else(|| format!("non-integral value at k = {k}"))?
        };
        ensure(value == brute, || format!("k = {k}: {value}, enumeration {brute}"))?;
    }
    Ok("both quartic branches exact, enumeration agrees for k <= 10".into())
}

fn volume() -> Outcome {
    let spec = TransportationSpec::new(vec![2, 2, 2], vec![3, 3]).map_err(|e| e.to_string())?;
    let v = relative_volume(&spec).map_err(|e| e.to_string())?;
    ensure(v == rat(3, 1), || format!("relative volume {v}"))?;
    for (r, b) in two_three_branches().iter().enumerate() {
        ensure(b.leading_coefficient() == rat(3, 1), || format!("branch {r}: {b}"))?;
    }
    Ok("V = 3, and every (2,3) branch leads with 3".into())
}

fn noncoprime_factorization() -> Outcome {
    let start = Instant::now();
    let p = FibreProblem::new(4, 6, part("3,1,1"), part("3,2")).map_err(|e| e.to_string())?;
    let f = factor_noncoprime(&p, 12).map_err(|e| e.to_string())?;
    let expected = vec![(part("1"), part("1,1"), 7), (part("1"), part("-"), 5)];
    ensure(f.pieces == expected, || format!("pieces {:?}", f.pieces))?;
    let q = fibre_quasipolynomial(&p).map_err(|e| e.to_string())?;
    let (r, _) = q.locate(12);
    let want = &poly(&[7, 10, 3], 1) * &poly(&[5, 8, 3], 1);
    ensure(q.branches[r] == want, || format!("branch {}", q.branches[r]))?;
    ensure(q.degree() == Some(4), || format!("degree {:?}", q.degree()))?;
    ensure(q.leading_coefficient() == Some(rat(9, 1)), || {
        format!("leading coefficient {:?}", q.leading_coefficient())
    })?;
    for (n, want) in [(12, 35u32), (24, 320)] {
        let brute = count_brute_pruned(&p, n, DEFAULT_CAP).map_err(|e| e.to_string())?;
        let value = q.value(n);
        ensure(brute == BigUint::from(want) && value == Some(brute.clone()), || {
            format!("n = {n}: quasipolynomial {value:?}, enumeration {brute}")
        })?;
    }
    within(start, Duration::from_secs(60))?;
    Ok("pieces, branch, degree 4, leading 9, N(12) = 35, N(24) = 320".into())
}

/// Balanced margin pairs with `s, t <= 3` and entries in `1..=3`.
fn margin_slopes() -> Vec<MarginPair> {
    let vectors = |len: usize| -> Vec<Vec<u64>> {
        (0..3usize.pow(len as u32))
            .map(|mut code| {
                (0..len)
                    .map(|_| {
                        let v = code % 3 + 1;
                        code /= 3;
                        v as u64
                    })
                    .collect()
            })
            .collect()
    };
    let mut out = Vec::new();
    for s in 1..=3 {
        for t in 1..=3 {
            for rows in vectors(s) {
                for cols in vectors(t) {
                    if rows.iter().sum::<u64>() == cols.iter().sum::<u64>() {
                        out.push(MarginPair::new(rows.clone(), cols));
                    }
                }
            }
        }
    }
    out
}

fn parametric_suite() -> Outcome {
    let start = Instant::now();
    let zero = |m: &MarginPair| MarginPair::new(vec![0; m.rows.len()], vec![0; m.cols.len()]);
    let mut systems = 0;
    let mut state = 0x2545_f491_u64;
    for slope in margin_slopes() {
        let base = ParametricSystem::transportation(&slope, &zero(&slope)).map_err(|e| e.to_string())?;
        // Two offset vectors per slope, entries in [-2, 2] from a fixed-seed generator.
        for _ in 0..2 {
            let offset: Vec<i64> = base
                .slope
                .iter()
                .map(|_| {
                    state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    (state >> 33) as i64 % 5 - 2
                })
                .collect();
            let ps = ParametricSystem::new(base.a.clone(), base.slope.clone(), offset.clone(), base.n)
                .map_err(|e| e.to_string())?;
            let r = count_parametric(&ps).map_err(|e| e.to_string())?;
            if r.polynomial.is_zero() {
                // Empty for all large k; only feasible families count.
                continue;
            }
            systems += 1;
            for k in r.threshold..r.threshold + 5 {
                let sys = ps.at(k as i64).map_err(|e| e.to_string())?;
                let points = lattice_points(&sys, 1 << 22).map_err(|e| e.to_string())?.len();
                let expected = r.polynomial.eval_int(k as i64);
                ensure(expected == rat(points as i64, 1), || {
                    format!("{slope:?} offset {offset:?} k = {k}: {expected} vs {points} points")
                })?;
            }
        }
    }
    ensure(systems >= 50, || format!("only {systems} feasible systems"))?;
    within(start, Duration::from_secs(300))?;
    Ok(format!("{systems} systems, 5 values each past the threshold"))
}

fn zero_fibres() -> Outcome {
    let mut pairs = Vec::new();
    'search: for (s, t) in [(2, 4), (2, 6), (3, 6)] {
        let cores = |u: usize| -> Vec<Partition> {
            (0..=3)
                .flat_map(|k| enumerate_cores(u, k).unwrap_or_default())
                .filter(|p| p.size() <= 6)
                .collect::<std::collections::BTreeSet<_>>()
                .into_iter()
                .collect()
        };
        for sigma in cores(s) {
            for tau in cores(t) {
                let p = FibreProblem::new(s, t, sigma.clone(), tau.clone()).map_err(|e| e.to_string())?;
                if !p.is_compatible() {
                    pairs.push(p);
                    if pairs.len() == 10 {
                        break 'search;
                    }
                }
            }
        }
    }
    ensure(pairs.len() == 10, || format!("found {} pairs", pairs.len()))?;
    for p in &pairs {
        let d = p.d();
        ensure(p.sigma().core(d) != p.tau().core(d), || format!("{p:?} is compatible"))?;
        for k in 0..=10 {
            let n = count_brute(p, k, DEFAULT_CAP).map_err(|e| e.to_string())?;
            ensure(n == BigUint::from(0u32), || format!("{p:?} k = {k}: {n}"))?;
        }
        let q = fibre_quasipolynomial(p).map_err(|e| e.to_string())?;
        ensure(q.is_zero(), || format!("{p:?}: nonzero quasipolynomial"))?;
    }
    Ok("10 incompatible pairs: no cores for k <= 10, zero quasipolynomial".into())
}

fn partition_of_space() -> Outcome {
    let census = FibreCensus::new(2, 3, 8, DEFAULT_CAP).map_err(|e| e.to_string())?;
    for k in 0..=8 {
        let mut total = BigUint::from(0u32);
        for (sigma, tau) in census.pairs() {
            let p = FibreProblem::new(2, 3, sigma.clone(), tau.clone()).map_err(|e| e.to_string())?;
            total += count(&p, k, DEFAULT_CAP).map_err(|e| e.to_string())?;
        }
        let expected = multichoose(6, k as u64);
        ensure(total == expected, || format!("k = {k}: {total}, expected {expected}"))?;
    }
    Ok(format!("{} pairs, sums equal C(k+5, k) for k <= 8", census.pairs().count()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("core computation", core_computation),
        ("core census", core_census),
        ("coprime quasipolynomial", coprime_quasipolynomial),
        ("divisor closed form", divisor_closed_form),
        ("volume", volume),
        ("non-coprime factorization", noncoprime_factorization),
        ("parametric counting suite", parametric_suite),
        ("zero fibres", zero_fibres),
        ("partition of space", partition_of_space),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        match run() {
            Ok(detail) => println!("PASS {}. {name}: {detail} ({:.2?})", i + 1, start.elapsed()),
            Err(why) => {
                failed += 1;
                println!("FAIL {}. {name}: {why} ({:.2?})", i + 1, start.elapsed());
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
