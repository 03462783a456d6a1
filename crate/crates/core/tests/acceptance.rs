//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on failure.

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use taylor_mean::function::{center_of_mass, center_of_mass_quadrature, moment_integrals, moment_integrals_exact};
use taylor_mean::lab;
use taylor_mean::means::{
    self, g_cubic_exact, stolarsky_mean, taylor_diff_exact, unique_real_mean, MeanResult, Tolerances,
};
use taylor_mean::poly::{int, rat};
use taylor_mean::FunctionSpec;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn near(x: f64, y: f64, tol: f64) -> bool {
    (x - y).abs() <= tol
}

fn mean_of(f: &FunctionSpec, r: usize, a: f64, b: f64) -> Result<MeanResult, String> {
    means::mean(f, r, a, b, &Tolerances::default()).map_err(|e| format!("{f} r={r} ({a}, {b}): {e}"))
}

fn real_parts(m: &MeanResult) -> Vec<f64> {
    let mut xs: Vec<f64> = m.pairs.iter().map(|p| p.x).collect();
    xs.sort_by(f64::total_cmp);
    xs
}

fn counterexample() -> Outcome {
    let start = Instant::now();
    let m = mean_of(&FunctionSpec::Power(1.5), 3, 1.0, 36.0)?;
    let elapsed = start.elapsed();
    let x0 = m.x0.ok_or("no real root")?;
    ensure(near(x0, 6.0, 1e-9), || format!("x0 = {x0}"))?;
    ensure(m.pairs.len() == 1, || format!("{} pairs", m.pairs.len()))?;
    let (x1, y1) = (m.pairs[0].x, m.pairs[0].y);
    ensure(near(x1, 33.0 / 43.0, 1e-9), || format!("x1 = {x1}"))?;
    ensure(near(y1, 15.0 * 291f64.sqrt() / 43.0, 1e-9), || format!("y1 = {y1}"))?;
    ensure(m.inside == [false], || "pair flagged inside (1, 36)".into())?;
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!("x0 = {x0}, x1 = {x1} outside (1, 36), {elapsed:.2?}"))
}

fn classical_means() -> Outcome {
    let mut count = 0;
    for r in [1usize, 3, 5] {
        for (a, b) in [(1.0, 2.0), (2.0, 5.0), (1.0, 10.0)] {
            let harmonic = 2.0 * a * b / (a + b);
            let geometric = f64::sqrt(a * b);
            let h = unique_real_mean(&FunctionSpec::Power(-1.0), r, a, b).map_err(|e| e.to_string())?;
            let g = unique_real_mean(&FunctionSpec::Power(r as f64 / 2.0), r, a, b).map_err(|e| e.to_string())?;
            ensure(near(h, harmonic, 1e-9), || {
                format!("r={r} ({a},{b}): {h} vs harmonic {harmonic}")
            })?;
            ensure(near(g, geometric, 1e-9), || {
                format!("r={r} ({a},{b}): {g} vs geometric {geometric}")
            })?;
            count += 2;
        }
    }
    Ok(format!("{count} instances"))
}

fn power_pair_midpoints() -> Outcome {
    let mut pairs = 0;
    for r in 2..=6usize {
        for (a, b) in [(1.0, 2.0), (2.0, 5.0), (1.0, 10.0)] {
            let m = mean_of(&FunctionSpec::Power((r + 1) as f64), r, a, b)?;
            ensure(m.pairs.len() == r / 2, || format!("r={r}: {} pairs", m.pairs.len()))?;
            for p in &m.pairs {
                ensure(near(p.x, (a + b) / 2.0, 1e-9), || {
                    format!("r={r} ({a},{b}): real part {}", p.x)
                })?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} pairs at (a+b)/2"))
}

/// Integer `0 <= p <= r` makes `f^(r+1)` vanish identically.
fn excluded(p: i64, r: usize) -> bool {
    p >= 0 && p <= r as i64
}

fn center_of_mass_identity() -> Outcome {
    let (mut checked, mut skipped) = (0, 0);
    for p in (-3..=8).filter(|p| !(0..=3).contains(p)) {
        for r in 1..=6usize {
            if excluded(p, r) {
                skipped += 3;
                continue;
            }
            for b in [1.5, 2.0, 5.0] {
                let f = FunctionSpec::Power(p as f64);
                let m = mean_of(&f, r, 1.0, b)?;
                let lhs = m.average_real_part();
                let rhs = center_of_mass_quadrature(&f, r, 1.0, b).map_err(|e| e.to_string())?;
                ensure((lhs - rhs).abs() <= 1e-9 * rhs.abs(), || {
                    format!("p={p} r={r} b={b}: {lhs} vs {rhs}")
                })?;
                let closed = center_of_mass(&f, r, 1.0, b).map_err(|e| e.to_string())?;
                ensure((closed - rhs).abs() <= 1e-9 * rhs.abs(), || {
                    format!("p={p} r={r} b={b}: closed form {closed}")
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!(
        "{checked} cases, {skipped} skipped where the derivative vanishes"
    ))
}

fn exact_suite() -> Outcome {
    let start = Instant::now();
    for n in 4..=30 {
        lab::q_factor(n).map_err(|e| format!("Q n={n}: {e}"))?;
    }
    for n in 1..=30 {
        lab::s_factor(n).map_err(|e| format!("S n={n}: {e}"))?;
    }
    for p in (-12..=20).filter(|p| !(0..=3).contains(p)) {
        let pair = lab::vw_build(p).map_err(|e| e.to_string())?;
        ensure(lab::reflection_check(&pair, p), || format!("reflection p={p}"))?;
    }
    let mut sums = 0;
    for n in 4..=40 {
        for j in 0..=n - 4 {
            let (lhs, rhs) = lab::lemma5_sum(n, j).map_err(|e| e.to_string())?;
            ensure(lhs == rhs, || format!("lemma5 n={n} j={j}: {lhs} vs {rhs}"))?;
            sums += 1;
        }
    }
    for n in 13..=40 {
        let count = lab::lemma6_root_count(n).map_err(|e| format!("lemma6 n={n}: {e}"))?;
        ensure(count == 1, || format!("lemma6 n={n}: count {count}"))?;
    }
    for n in 4..=25 {
        ensure(lab::v1_double_sum_check(n), || format!("v1 n={n}"))?;
        ensure(lab::l_poly_check(n), || format!("l-poly n={n}"))?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    Ok(format!(
        "Q, S, reflection, {sums} sums, root counts, V1 and L identities in {elapsed:.2?}"
    ))
}

fn theorem1_instances() -> Outcome {
    let grid = [rat(3, 2), int(2), int(3), int(10)];
    let mut count = 0;
    for p in (-12..=20).filter(|p| !(0..=3).contains(p)) {
        for b in &grid {
            let t = lab::theorem1_verify(p, b).map_err(|e| format!("p={p} b={b}: {e}"))?;
            ensure(t.g_at_1.is_negative() && t.g_at_b.is_positive(), || {
                format!("p={p} b={b}: signs")
            })?;
            let bf = b.to_f64().unwrap();
            ensure(t.x1 > 1.0 && t.x1 < bf, || format!("p={p} b={b}: x1 = {}", t.x1))?;
            ensure(near(t.x1, t.pair_re, 1e-9), || {
                format!("p={p} b={b}: {} vs {}", t.x1, t.pair_re)
            })?;
            if p == -1 {
                // ab(a+b)/(a²+b²) with a = 1
                let exact = b * (b + int(1)) / (b * b + int(1));
                let g = g_cubic_exact(-1, &int(1), b).map_err(|e| e.to_string())?;
                ensure(g.eval(&exact).is_zero(), || format!("g({exact}) != 0"))?;
                ensure(near(t.x1, exact.to_f64().unwrap(), 1e-12), || {
                    format!("x1 = {} vs {exact}", t.x1)
                })?;
            }
            count += 1;
        }
    }
    Ok(format!("{count} instances"))
}

fn reciprocal_and_nonreal_nodes() -> Outcome {
    let f = FunctionSpec::Power(-1.0);
    let m5 = mean_of(&f, 5, 1.0, 2.0)?;
    let xs = real_parts(&m5);
    ensure(
        xs.len() == 2 && near(xs[0], 1.0, 1e-9) && near(xs[1], 9.0 / 7.0, 1e-9),
        || format!("r=5 real parts {xs:?}"),
    )?;
    let flags: Vec<bool> = xs
        .iter()
        .map(|&x| means::strictly_inside(x, 1.0, 2.0, Tolerances::default().identity))
        .collect();
    ensure(flags == [false, true], || format!("r=5 verdicts {flags:?}"))?;

    let m4 = mean_of(&f, 4, 1.0, 4.0)?;
    let xs4 = real_parts(&m4);
    let s5 = 5f64.sqrt();
    let closed = 5.0 * (5.0 - s5) / (19.0 - 2.0 * s5);
    ensure(xs4.len() == 2 && near(xs4[0], closed, 1e-9), || {
        format!("r=4 real parts {xs4:?} vs {closed}")
    })?;
    ensure(near(closed, 0.95125, 1e-5) && xs4[0] < 1.0, || {
        format!("r=4 x2 = {}", xs4[0])
    })?;
    ensure(xs4[1] > 1.0 && xs4[1] < 4.0, || format!("r=4 x1 = {}", xs4[1]))?;

    let demo = lab::nonreal_nodes_demo().map_err(|e| e.to_string())?;
    ensure(demo.factorization_holds, || "factorization".into())?;
    let expected = [
        Complex64::new(2.0, 2.0),
        Complex64::new(3.0, 3.0),
        Complex64::new(4.0, 4.0),
    ];
    ensure(demo.roots.len() == 3, || format!("{} roots", demo.roots.len()))?;
    for (z, e) in demo.roots.iter().zip(expected) {
        ensure((z - e).norm() <= 1e-9, || format!("root {z} vs {e}"))?;
    }
    ensure(demo.node_mean == Complex64::new(3.0, 3.0), || "node mean".into())?;
    Ok(format!(
        "r=5 real parts {xs:?}, r=4 low real part {:.5}, demo roots match",
        xs4[0]
    ))
}

fn property_suites() -> Outcome {
    // Exact agreement of both constructions of P_b - P_a.
    let mut constructions = 0;
    for p in (-3..=8).filter(|p| !(0..=3).contains(p)) {
        for r in (1..=6usize).filter(|&r| !excluded(p, r)) {
            for b in [rat(3, 2), int(2), int(5)] {
                taylor_diff_exact(p, r, &int(1), &b).map_err(|e| format!("p={p} r={r} b={b}: {e}"))?;
                constructions += 1;
            }
        }
    }

    // B² - AC < 0 for r = 3.
    let b_grid = [1.5, 2.0, 5.0, 10.0, 36.0];
    let mut gaps = 0;
    for p in (-12..=20).filter(|p| !(0..=3).contains(p)) {
        for &b in &b_grid {
            let m = moment_integrals_exact(p, 3, &int(1), &BigRational::from_float(b).unwrap())
                .map_err(|e| e.to_string())?;
            let gap = m.cauchy_gap().unwrap();
            ensure(gap.is_negative(), || format!("p={p} b={b}: B²-AC = {gap}"))?;
            gaps += 1;
        }
    }
    for f in [
        FunctionSpec::Power(1.5),
        FunctionSpec::Power(-0.5),
        FunctionSpec::Power(3.5),
        FunctionSpec::Exp,
        FunctionSpec::Log,
    ] {
        for &b in &b_grid {
            let gap = moment_integrals(&f, 3, 1.0, b)
                .map_err(|e| e.to_string())?
                .cauchy_gap()
                .unwrap();
            ensure(gap < 0.0, || format!("{f} b={b}: B²-AC = {gap}"))?;
            gaps += 1;
        }
    }

    // Residuals of every reported root.
    let mut roots = 0;
    let specs = [
        FunctionSpec::Power(-1.0),
        FunctionSpec::Power(1.5),
        FunctionSpec::Power(-3.0),
        FunctionSpec::Power(7.0),
        FunctionSpec::Exp,
        FunctionSpec::Log,
    ];
    for f in &specs {
        for r in 1..=7usize {
            if f.integer_exponent().is_some_and(|p| excluded(p, r)) {
                continue;
            }
            for (a, b) in [(1.0, 2.0), (2.0, 5.0), (1.0, 10.0)] {
                let m = mean_of(f, r, a, b)?;
                ensure(m.residual <= 1e-8, || format!("{f} r={r}: residual {:e}", m.residual))?;
                for z in m
                    .pairs
                    .iter()
                    .map(|p| p.upper())
                    .chain(m.x0.map(|x| Complex64::new(x, 0.0)))
                {
                    let res = means::relative_remainder_residual(f, r, a, b, z).map_err(|e| e.to_string())?;
                    ensure(res <= 1e-8, || format!("{f} r={r} root {z}: residual {res:e}"))?;
                    roots += 1;
                }
            }
        }
    }

    // Parameter monotonicity of the Stolarsky means.
    let params = [-3.0, -1.0, -0.5, 0.0, 0.5, 1.0, 1.5, 2.0, 3.0];
    let points = [(1.1, 1.0), (2.0, 1.0), (10.0, 1.0), (100.0, 1.0), (0.25, 3.0)];
    for &(x, y) in &points {
        for &s in &params {
            for w in params.windows(2) {
                let (lo, hi) = (stolarsky_mean(w[0], s, x, y), stolarsky_mean(w[1], s, x, y));
                ensure(lo <= hi * (1.0 + 1e-12), || {
                    format!("E_({},{s}) > E_({},{s}) at ({x},{y})", w[0], w[1])
                })?;
                let (lo, hi) = (stolarsky_mean(s, w[0], x, y), stolarsky_mean(s, w[1], x, y));
                ensure(lo <= hi * (1.0 + 1e-12), || {
                    format!("E_({s},{}) > E_({s},{}) at ({x},{y})", w[0], w[1])
                })?;
            }
        }
    }

    // The two bounds from the monotonicity: k(x) > 2 for s >= 3/2 and l(x) < 0 for s < 0.
    for x in [1.1, 2.0, 10.0, 100.0] {
        let floor = 3.0 * stolarsky_mean(0.5, 1.5, x, 1.0) - x;
        ensure(near(floor, x.sqrt() + 1.0, 1e-12 * x), || {
            format!("k floor at {x}: {floor}")
        })?;
        for s in [1.5, 2.0, 3.5, 5.0, 10.0] {
            let k = 3.0 * stolarsky_mean(s - 1.0, s, x, 1.0) - x;
            ensure(k > 2.0, || format!("k({x}) = {k} for s = {s}"))?;
        }
        let ceiling = 3.0 * stolarsky_mean(-1.0, 0.0, x, 1.0) - 2.0 * x - 1.0;
        // E_(-1,0)(x, 1) = x ln x / (x - 1)
        let expected = 3.0 * x * x.ln() / (x - 1.0) - 2.0 * x - 1.0;
        ensure(near(ceiling, expected, 1e-12 * x) && ceiling < 0.0, || {
            format!("l ceiling at {x}: {ceiling} vs {expected}")
        })?;
        for s in [-0.25, -1.0, -3.0, -10.0] {
            let l = 3.0 * stolarsky_mean(s - 1.0, s, x, 1.0) - 2.0 * x - 1.0;
            ensure(l < 0.0, || format!("l({x}) = {l} for s = {s}"))?;
        }
    }
    Ok(format!(
        "{constructions} exact constructions, {gaps} moment gaps, {roots} root residuals, Stolarsky grids"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("counterexample z^(3/2), r=3 on (1, 36)", counterexample),
        ("harmonic and geometric means", classical_means),
        ("pairs of z^(r+1) at the midpoint", power_pair_midpoints),
        ("root real parts average to the center of mass", center_of_mass_identity),
        ("exact factor, sum and identity suite", exact_suite),
        ("r=3 theorem instances for z^p", theorem1_instances),
        ("1/z closed forms and nonreal nodes", reciprocal_and_nonreal_nodes),
        ("property suites", property_suites),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("PASS criterion {}: {name} ({detail})", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {detail}", i + 1);
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
