//! Acceptance gate: one pass/fail line per criterion, non-zero exit on failure.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use drinfeld::closedform::{
    b_decomposition, b_decomposition_large_p, coinvariants_dim, comp_factors_h0, decomposition_dim,
    g_decomposition, implied_factors, ind_sa_factors, n_ab, BDecomposition, BLabel, GDecomposition,
};
use drinfeld::curve::{dim_h0, genus};
use drinfeld::modrep::{
    cartan_check, comp_factors_oracle, decompose_b_oracle, h0_module, induce_to_g, uab_module,
};
use proptest::test_runner::{Config, TestCaseError, TestRunner};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn decomposition_of(p: u32, labels: &[(u32, u32)]) -> BDecomposition {
    let mut d = BDecomposition::new(p, None);
    for &(a, b) in labels {
        d.add(BLabel::new(a, b), 1);
    }
    d
}

fn table_check(p: u32, labels: &[(u32, u32)]) -> Check {
    let expected = decomposition_of(p, labels);
    let closed = b_decomposition(2, p).map_err(|e| e.to_string())?;
    ensure(closed.same_summands(&expected), || {
        format!("closed form {:?}", closed.mult)
    })?;
    let module = h0_module(p, 2).map_err(|e| e.to_string())?;
    let oracle = decompose_b_oracle(&module.restrict_to_b()).map_err(|e| e.to_string())?;
    if let Some((l, x, y)) = oracle.first_difference(&closed) {
        return Err(format!(
            "U_{{{},{}}}: oracle {x}, closed form {y}",
            l.a, l.b
        ));
    }
    Ok(format!("{} summands, dim {}", labels.len(), module.dim()))
}

fn criterion_1() -> Check {
    table_check(3, &[(0, 1), (0, 3), (1, 2)])
}

fn criterion_2() -> Check {
    table_check(
        5,
        &[
            (0, 2),
            (0, 5),
            (1, 1),
            (1, 4),
            (2, 3),
            (2, 5),
            (3, 2),
            (3, 5),
        ],
    )
}

fn criterion_3() -> Check {
    for (p, want) in [(3, 2), (5, 1), (7, 1), (11, 1), (13, 1)] {
        let got = coinvariants_dim(&b_decomposition(2, p).map_err(|e| e.to_string())?);
        ensure(got == want, || format!("p = {p}: got {got}, want {want}"))?;
    }
    Ok("p = 3, 5, 7, 11, 13".into())
}

fn criterion_4() -> Check {
    let mut cells = 0;
    for p in [3u32, 5, 7, 11, 13] {
        for m in 2..=8 {
            for b in 1..p {
                let mut n_b = 0;
                for a in 0..=p - 2 {
                    let n = n_ab(a, b, m, p).map_err(|e| e.to_string())?;
                    ensure(n <= 1, || {
                        format!("n_{{{a},{b}}} = {n} at p = {p}, m = {m}")
                    })?;
                    n_b += n;
                }
                let want = if (2 * m + b - 1) % p == 0 { 2 } else { 1 };
                ensure(n_b == want, || {
                    format!("n_{b} = {n_b}, want {want} at p = {p}, m = {m}")
                })?;
                cells += 1;
            }
        }
    }
    Ok(format!("{cells} (p, m, b) cells"))
}

fn criterion_5() -> Check {
    for (m, p) in [(2, 7), (2, 11), (3, 11), (2, 13), (3, 13), (4, 13)] {
        let fast = b_decomposition_large_p(m, p).map_err(|e| e.to_string())?;
        let full = b_decomposition(m, p).map_err(|e| e.to_string())?;
        ensure(fast.same_summands(&full), || {
            format!("(m, p) = ({m}, {p}) differs")
        })?;
    }
    Ok("6 (m, p) pairs".into())
}

fn criterion_6() -> Check {
    let mut points = 0;
    for p in [3u32, 5, 7, 11, 13] {
        let g = genus(p).map_err(|e| e.to_string())?;
        for m in 2..=8u32 {
            let total = b_decomposition(m, p)
                .map_err(|e| e.to_string())?
                .total_dim();
            let want = (2 * m as u64 - 1) * (g - 1);
            ensure(total == want, || {
                format!("p = {p}, m = {m}: Σ n·b = {total}, want {want}")
            })?;
            let gd = g_decomposition(m, p).map_err(|e| format!("p = {p}, m = {m}: {e}"))?;
            let gdim = decomposition_dim(&gd).map_err(|e| e.to_string())?;
            let h0 = dim_h0(p, m).map_err(|e| e.to_string())?;
            ensure(gdim == h0, || {
                format!("p = {p}, m = {m}: G-dim {gdim}, want {h0}")
            })?;
            points += 1;
        }
    }
    Ok(format!("{points} (p, m) points"))
}

fn criterion_7() -> Check {
    let start = Instant::now();
    for (p, m) in [(3, 2), (3, 3), (3, 4), (5, 2), (5, 3), (7, 2), (7, 3)] {
        let module = h0_module(p, m).map_err(|e| e.to_string())?;
        let oracle = comp_factors_oracle(&module).map_err(|e| e.to_string())?;
        let closed = comp_factors_h0(m, p).map_err(|e| e.to_string())?;
        ensure(oracle == closed, || {
            format!(
                "(p, m) = ({p}, {m}): oracle {:?}, closed form {:?}",
                oracle.as_slice(),
                closed.as_slice()
            )
        })?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(120), || {
        format!("took {elapsed:.1?}")
    })?;
    Ok(format!("7 (p, m) pairs in {elapsed:.1?}"))
}

fn criterion_8() -> Check {
    for p in [3u32, 5, 7] {
        for a in 0..=p - 2 {
            let ind = induce_to_g(&uab_module(a, 1, p).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
            let got = comp_factors_oracle(&ind).map_err(|e| e.to_string())?;
            let (s, t) = ind_sa_factors(a, p).map_err(|e| e.to_string())?;
            let mut want = vec![0u64; p as usize];
            want[s as usize - 1] += 1;
            want[t as usize - 1] += 1;
            ensure(got.as_slice() == want.as_slice(), || {
                format!("p = {p}, a = {a}: got {:?}", got.as_slice())
            })?;
        }
    }
    Ok("every a for p = 3, 5, 7".into())
}

fn criterion_9() -> Check {
    let mut count = 0;
    for p in [3u32, 5, 7] {
        for a in 0..=p - 2 {
            for b in 1..p {
                let cert = cartan_check(a, b, p).map_err(|e| e.to_string())?;
                ensure(cert.passed, || {
                    format!("(a, b, p) = ({a}, {b}, {p}): solution {:?}", cert.solution)
                })?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} certificates"))
}

fn expected_3_2(g: &GDecomposition) -> bool {
    let nonproj: Vec<_> = g
        .nonproj
        .iter()
        .filter(|(_, &n)| n > 0)
        .map(|(l, &n)| (l.a, l.b, n))
        .collect();
    nonproj == [(0, 1, 1), (1, 2, 1)] && g.proj == [0, 0, 1]
}

fn criterion_10() -> Check {
    let mut points = 0;
    for p in [3u32, 5, 7, 11, 13] {
        for m in 2..=8 {
            // Fails on a non-integral or negative n_t.
            g_decomposition(m, p).map_err(|e| format!("p = {p}, m = {m}: {e}"))?;
            points += 1;
        }
    }
    let g = g_decomposition(2, 3).map_err(|e| e.to_string())?;
    ensure(expected_3_2(&g), || format!("(3, 2): {:?}", g.summands()))?;
    let implied = implied_factors(&g).map_err(|e| e.to_string())?;
    let oracle = comp_factors_oracle(&h0_module(3, 2).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    ensure(implied == oracle, || {
        format!(
            "implied {:?}, oracle {:?}",
            implied.as_slice(),
            oracle.as_slice()
        )
    })?;
    Ok(format!(
        "{points} (p, m) points; (3, 2) = V_{{0,1}} + V_{{1,2}} + P_3"
    ))
}

fn run_property<S: proptest::strategy::Strategy>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> bool,
) -> Result<(), String> {
    let mut runner = TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    });
    runner
        .run(&strategy, |v| {
            if test(v) {
                Ok(())
            } else {
                Err(TestCaseError::fail("property violated"))
            }
        })
        .map_err(|e| e.to_string())
}

fn criterion_11() -> Check {
    use proptest::prelude::*;
    let seed = || (any::<u32>(), any::<u32>(), any::<u32>(), any::<u32>());
    run_property(
        200,
        (
            prop::sample::select(vec![3u32, 5, 9]),
            1u32..=3,
            seed(),
            seed(),
        ),
        |(q, m, s1, s2)| common::homomorphism_holds(q, m, s1, s2),
    )
    .map_err(|e| format!("homomorphism: {e}"))?;
    run_property(
        200,
        (prop::sample::select(vec![3u32, 5, 7, 9]), 1u32..=3, seed()),
        |(q, m, s)| common::block_diagonal_holds(q, m, s),
    )
    .map_err(|e| format!("grading: {e}"))?;
    for p in [3, 5, 7, 11] {
        common::uab_round_trip(p).map_err(|e| format!("round trip: {e}"))?;
    }
    run_property(
        500,
        (
            prop::sample::select(vec![3u32, 5, 9]),
            1usize..8,
            1usize..8,
            prop::collection::vec(any::<u32>(), 1..64),
        ),
        |(q, r, c, e)| common::rank_nullity_holds(q, r, c, &e),
    )
    .map_err(|e| format!("rank-nullity: {e}"))?;
    run_property(
        1000,
        (
            prop::sample::select(vec![3u32, 5, 7, 9, 25, 27]),
            any::<u32>(),
            any::<u32>(),
            any::<u32>(),
        ),
        |(q, a, b, c)| common::field_axioms_hold(q, a, b, c),
    )
    .map_err(|e| format!("field axioms: {e}"))?;
    Ok("homomorphism, grading, round trip, rank-nullity, field axioms".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("B-decomposition table, p = 3, m = 2", criterion_1),
        ("B-decomposition table, p = 5, m = 2", criterion_2),
        ("coinvariant dimensions, m = 2", criterion_3),
        ("per-dimension summand counts", criterion_4),
        ("large-p closed form", criterion_5),
        ("dimension identities", criterion_6),
        ("composition factors against the oracle", criterion_7),
        ("factors of induced characters", criterion_8),
        ("Cartan certificates", criterion_9),
        ("projective multiplicities", criterion_10),
        ("property suites", criterion_11),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => println!("[PASS] {:>2} {name}: {detail} ({elapsed:.2?})", k + 1),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] {:>2} {name}: {detail} ({elapsed:.2?})", k + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
