//! Acceptance suite: every exit criterion of the workbench, one test per
//! criterion, each printing a pass line with its measured margin. Run with
//! `cargo test --test acceptance -- --nocapture` to see the lines.

use std::time::Instant;

use num_complex::Complex64;

use hlzeta::franel::{self, franel2_closed_raw, franel2_oracle, paper_table};
use hlzeta::hlseries::{self, eval_f, eval_power_series, PowerSeriesForm, TruncationPolicy};
use hlzeta::lattice;
use hlzeta::sawtooth;
use hlzeta::specfun;
use hlzeta::suite::{self, SuiteConfig};
use hlzeta::summation::{self, GaussianTestFn, MellinKind};

fn pass_line(criterion: &str, detail: String) {
    println!("acceptance {criterion}: PASS - {detail}");
}

/// 1. The printed table rows are reproduced symbolically wherever they are
/// coherent; the two suspect rows are settled by the oracle.
#[test]
fn criterion_01_franel_table_reproduction() {
    let start = Instant::now();
    let mut symbolic_matches = 0;
    let mut errata = Vec::new();
    for ((n, m), printed) in paper_table() {
        let derived = franel2_closed_raw(n, m).unwrap();
        let oracle = franel2_oracle(n, m, 1e-9).unwrap();
        let (dv, _) = derived.to_f64();
        assert!(
            (dv - oracle.value).abs() <= 1e-8,
            "derived I_({n},{m}) disagrees with oracle"
        );
        if derived == printed {
            symbolic_matches += 1;
        } else {
            let (pv, _) = printed.to_f64();
            let margin = (pv - oracle.value).abs();
            assert!(
                margin > 1e-3,
                "row ({n},{m}) differs symbolically but is numerically indistinct"
            );
            errata.push(format!("({n},{m}) printed value off by {margin:.2e}"));
        }
    }
    // ten coherent rows match; the (5,1) duplicate and the misplaced (1,4)
    // value are resolved against the oracle
    assert_eq!(symbolic_matches, 10, "expected ten coherent table rows");
    assert_eq!(errata.len(), 2, "expected exactly two oracle-resolved rows");
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 60, "table run took {elapsed:?}");
    pass_line(
        "01 franel table",
        format!(
            "10 symbolic matches, errata: {}; {elapsed:?}",
            errata.join("; ")
        ),
    );
}

/// 2. |closed - oracle| <= 1e-8 on the full 1..6 x 1..6 grid.
#[test]
fn criterion_02_closed_form_certification() {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for n in 1..=6u64 {
        for m in 1..=6u64 {
            let closed = franel::franel2_closed(n, m).unwrap(); // includes oracle check
            let (v, _) = closed.to_f64();
            let oracle = franel2_oracle(n, m, 1e-9).unwrap();
            worst = worst.max((v - oracle.value).abs());
        }
    }
    assert!(worst <= 1e-8, "worst gap {worst:.2e}");
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 300, "grid took {elapsed:?}");
    pass_line(
        "02 closed-form certification",
        format!("36 cases, worst gap {worst:.2e}, {elapsed:?}"),
    );
}

/// 3. Quadrature at (1,2) separates the gcd and lcm constants by at least
/// a thousand times its own bound.
#[test]
fn criterion_03_mordell_disambiguation() {
    let rep = franel::mordell_disambiguation(1, 2).unwrap();
    assert!(rep.pass, "{rep:?}");
    assert!(rep.notes.contains("winner=gcd^2/(12ab)"), "{}", rep.notes);
    let margin: f64 = rep
        .notes
        .split("margin=")
        .nth(1)
        .and_then(|s| s.trim_end_matches("x_bound").parse().ok())
        .unwrap();
    assert!(margin >= 1e3, "margin only {margin}");
    pass_line("03 mordell disambiguation", rep.notes.clone());
}

/// 4. Fourier coefficient two-path agreement on the full grid.
#[test]
fn criterion_04_fourier_two_paths() {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for &theta in &[0.3, 0.5, 0.9] {
        for n in 1..=20u32 {
            let rep = sawtooth::an_check(theta, n).unwrap();
            assert!(
                rep.pass && rep.abs_diff <= 1e-8,
                "theta={theta} n={n}: {rep:?}"
            );
            worst = worst.max(rep.abs_diff);
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 120, "grid took {elapsed:?}");
    pass_line(
        "04 fourier coefficient",
        format!("60 points, worst gap {worst:.2e}, {elapsed:?}"),
    );
}

/// 5. Mellin integral of the dilated fractional part on the stated grid.
#[test]
fn criterion_05_beurling_mellin() {
    let mut worst = 0.0f64;
    for &theta in &[0.25, 0.5, 1.0] {
        for &s in &[1.5, 2.0, 3.0] {
            let rep = sawtooth::beurling_mellin_check(theta, s).unwrap();
            assert!(rep.abs_diff <= 1e-8, "theta={theta} s={s}: {rep:?}");
            worst = worst.max(rep.abs_diff);
        }
    }
    pass_line("05 beurling mellin", format!("9 points, worst {worst:.2e}"));
}

/// 6. The pi/2 limit of the squared-sine sum, inside the derived envelope.
#[test]
fn criterion_06_pi_half_limit() {
    let start = Instant::now();
    let policy = TruncationPolicy::new(200_000_000, 1e-8);
    let mut detail = String::new();
    for &x in &[1e3, 1e4, 1e5, 1e6] {
        let s = hlseries::eval_sin2_sum(x, &policy).unwrap();
        let ratio = s.value / x;
        let envelope = 2.0 / x.sqrt() + 10.0 / x;
        let gap = (ratio - std::f64::consts::PI / 2.0).abs();
        assert!(
            gap <= envelope,
            "x={x}: gap {gap:.3e} envelope {envelope:.3e}"
        );
        detail.push_str(&format!("x={x:.0e}: gap {gap:.2e} <= {envelope:.2e}; "));
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 30, "took {elapsed:?}");
    pass_line("06 pi/2 limit", format!("{detail}{elapsed:?}"));
}

/// 7. chi(1/2, t) functional equation: accelerated vs direct with the
/// stated term economy.
#[test]
fn criterion_07_chi_functional_equation() {
    let mut detail = String::new();
    for &t in &[1.0, 4.0, 9.0, 16.0] {
        let rep = lattice::chi_half_accel_check(t).unwrap();
        assert!(rep.abs_diff <= 1e-10, "t={t}: {rep:?}");
        let terms_accel: u64 = rep
            .notes
            .split("terms_accel=")
            .nth(1)
            .and_then(|s| s.split_whitespace().next())
            .and_then(|s| s.parse().ok())
            .unwrap();
        let terms_direct: u64 = rep
            .notes
            .split("terms_direct=")
            .nth(1)
            .and_then(|s| s.split_whitespace().next())
            .and_then(|s| s.parse().ok())
            .unwrap();
        assert!(terms_accel < 100, "t={t}: accel used {terms_accel}");
        assert!(terms_direct > 100_000, "t={t}: direct used {terms_direct}");
        detail.push_str(&format!(
            "t={t}: {terms_accel} vs {terms_direct} terms, diff {:.1e}; ",
            rep.abs_diff
        ));
    }
    pass_line("07 chi functional equation", detail);
}

/// 8. The K0-series identity at the three stated points.
#[test]
fn criterion_08_k0_identity() {
    let mut worst = 0.0f64;
    for &(re, im) in &[(1.0, 0.0), (2.0, 1.0), (0.5, 2.0)] {
        let rep = lattice::hl_k0_identity_check(Complex64::new(re, im)).unwrap();
        assert!(rep.abs_diff <= 1e-8, "z={re}+{im}i: {rep:?}");
        worst = worst.max(rep.abs_diff);
    }
    pass_line("08 K0 identity", format!("3 points, worst {worst:.2e}"));
}

/// 9. The J1-series identity across four decades of z.
#[test]
fn criterion_09_j1_identity() {
    let mut worst = 0.0f64;
    for &z in &[1e-3, 0.5, 1.0, 5.0] {
        let rep = lattice::segal_identity_check(z).unwrap();
        assert!(rep.abs_diff <= 1e-6, "z={z}: {rep:?}");
        worst = worst.max(rep.abs_diff);
    }
    pass_line("09 J1 identity", format!("4 points, worst {worst:.2e}"));
}

/// 10. Poisson, Voronoi (with the kernel coefficient resolved), Koshliakov.
#[test]
fn criterion_10_summation_formulas() {
    for &a in &[1.0, std::f64::consts::PI, std::f64::consts::PI / 4.0] {
        let rep = summation::poisson_even_check(&GaussianTestFn::new(a)).unwrap();
        assert!(rep.abs_diff <= 1e-9, "poisson a={a}: {rep:?}");
    }
    let mut resolved = 0;
    for &a in &[1.0, std::f64::consts::PI, 0.6] {
        let (classical, printed) =
            summation::voronoi_kernel_resolution(&GaussianTestFn::new(a)).unwrap();
        assert!(classical.abs_diff <= 1e-6, "voronoi a={a}: {classical:?}");
        assert!(
            printed.abs_diff > 1e-3,
            "printed 4Y0 variant unexpectedly viable at a={a}"
        );
        resolved += 1;
    }
    for &a in &[0.5, 1.0, 1.7, 3.0] {
        let rep = summation::koshliakov_check(a).unwrap();
        assert!(rep.abs_diff <= 1e-10, "koshliakov a={a}: {rep:?}");
    }
    // the Mellin pairs underlying the formulas
    for &s in &[0.25, 0.5, 0.75] {
        for kind in [MellinKind::K0, MellinKind::Y0] {
            let rep = summation::voronoi_mellin_check(s, kind).unwrap();
            assert!(rep.abs_diff <= 1e-7, "{kind:?} s={s}: {rep:?}");
        }
    }
    pass_line(
        "10 summation formulas",
        format!("poisson 3 widths, voronoi kernel resolved {resolved}/3 to 2*pi*Y0, koshliakov 4 points"),
    );
}

/// 11. The ternary-form relation and the double-integral identity.
#[test]
fn criterion_11_ternary_relation() {
    let start = Instant::now();
    let r3 = lattice::crandall_relation_check(3.0).unwrap();
    assert!(r3.abs_diff <= 1e-5, "s=3: {r3:?}");
    let r2 = lattice::crandall_relation_check(2.0).unwrap();
    assert!(r2.abs_diff <= 1e-5, "s=2: {r2:?}");
    let di = lattice::double_integral_check().unwrap();
    assert!(di.abs_diff <= 1e-4, "double integral: {di:?}");
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 600, "took {elapsed:?}");
    pass_line(
        "11 ternary relation",
        format!(
            "s=3 diff {:.1e}, s=2 diff {:.1e}, double integral diff {:.1e}, {elapsed:?}",
            r3.abs_diff, r2.abs_diff, di.abs_diff
        ),
    );
}

/// 12. Theta-cube coefficients equal signed three-square counts, exactly.
#[test]
fn criterion_12_theta_coefficients() {
    let n = 200usize;
    let cube = lattice::theta4_cubed_coefficients(n);
    let andrews = lattice::andrews_coefficients(n);
    let r3 = specfun::r3_table(n);
    for i in 0..=n {
        let want = if i % 2 == 0 {
            r3[i] as i64
        } else {
            -(r3[i] as i64)
        };
        assert_eq!(cube[i], want, "cube coefficient at {i}");
        assert_eq!(andrews[i], want, "double-sum coefficient at {i}");
    }
    pass_line(
        "12 theta coefficients",
        format!("both routes exact for n <= {n}"),
    );
}

/// 13. The zeta-coefficient power series against the direct sums.
#[test]
fn criterion_13_power_series() {
    let policy = TruncationPolicy::new(100_000_000, 1e-12);
    let mut worst = 0.0f64;
    for i in 1..=20 {
        let x = 0.9 * i as f64 / 20.0;
        let f = eval_f(x, &policy).unwrap();
        let ps = eval_power_series(PowerSeriesForm::SinForm, Complex64::new(x, 0.0)).unwrap();
        let gap = (f.value - ps.value.re).abs();
        assert!(gap <= 1e-10, "x={x}: gap {gap:.2e}");
        worst = worst.max(gap);
    }
    pass_line("13 power series", format!("20 points, worst {worst:.2e}"));
}

/// 14. The whole property suite passes with exit-0 semantics.
#[test]
fn criterion_14_full_suite() {
    let start = Instant::now();
    let cfg = SuiteConfig {
        parallelism: 4,
        ..Default::default()
    };
    let results = suite::run_suite("all", &cfg).unwrap();
    let mut failures = Vec::new();
    for (id, rep) in &results {
        match rep {
            Ok(r) if r.pass => {
                assert!(!r.paper_anchor.is_empty(), "{id} lacks an anchor");
            }
            Ok(r) => failures.push(format!("{id} (diff {:.2e})", r.abs_diff)),
            Err(e) => failures.push(format!("{id} (error: {e})")),
        }
    }
    assert!(failures.is_empty(), "failing identities: {failures:?}");
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 1800, "suite took {elapsed:?}");
    pass_line(
        "14 full suite",
        format!("{} identities, all pass, {elapsed:?}", results.len()),
    );
}

/// 15. Scans: the running maximum of |f| strictly grows from 1e3 to 1e6;
/// trend tables are produced (reported, not asserted beyond monotonicity).
#[test]
fn criterion_15_scans() {
    let rows = suite::growth_scan_rows(10.0, 1e6, 40, 0.1).unwrap();
    let running: Vec<f64> = rows[1..]
        .iter()
        .map(|r| r.split(',').nth(2).unwrap().parse().unwrap())
        .collect();
    let xs: Vec<f64> = rows[1..]
        .iter()
        .map(|r| r.split(',').next().unwrap().parse().unwrap())
        .collect();
    // running max is nondecreasing by construction
    for w in running.windows(2) {
        assert!(w[1] >= w[0]);
    }
    // strictly larger at 1e6 than at 1e3
    let at = |target: f64| -> f64 {
        let idx = xs
            .iter()
            .enumerate()
            .min_by(|a, b| {
                (a.1 - target)
                    .abs()
                    .partial_cmp(&(b.1 - target).abs())
                    .unwrap()
            })
            .unwrap()
            .0;
        running[idx]
    };
    let rm3 = at(1e3);
    let rm6 = at(1e6);
    assert!(
        rm6 > rm3,
        "running max did not grow: {rm3} at 1e3 vs {rm6} at 1e6"
    );
    let dav = suite::davenport_scan_rows(0.3, &[100, 1000, 10_000, 100_000]).unwrap();
    assert_eq!(dav.len(), 5);
    let saf = suite::saffari_scan_rows(&[50.0, 200.0, 1000.0]).unwrap();
    assert_eq!(saf.len(), 4);
    pass_line(
        "15 scans",
        format!("running max {rm3:.4} at 1e3 -> {rm6:.4} at 1e6; trend tables emitted"),
    );
}
