//! Acceptance suite: one pass/fail line per criterion, nonzero exit on any
//! failure.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::Instant;

use framekit::analysis::{canonical_dual, cross_operator, frame_bounds, identity_residual};
use framekit::convergence::{
    bessel_growth, default_cuts, example31_partial_sum, harmonic, partial_sum_trajectory,
    rearrangement_search, SearchConfig, Series, Verdict,
};
use framekit::duality::{certify_dual, is_realizable, nonframe_dual_for_zero_padded, realize_dual};
use framekit::family::{example31_dim, materialize};
use framekit::linalg::inner_product;
use framekit::structure::{
    dual_excess_audit, excess, extended_moment_membership, moment_membership, moment_space,
    moment_space_equal,
};
use framekit::{FrameFamily, GallerySpec, Scalar, Tolerances, Vector};
use framekit_cli::{execute, RunConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($fmt)+));
        }
    };
}

fn tol() -> Tolerances {
    Tolerances::default()
}

fn fail<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn scalar(r: &mut ChaCha8Rng) -> Scalar {
    Scalar::new(r.random_range(-1.0..1.0), r.random_range(-1.0..1.0))
}

fn vector(r: &mut ChaCha8Rng, dim: usize) -> Vector {
    Vector::new((0..dim).map(|_| scalar(r)).collect()).unwrap()
}

fn pair(k: usize) -> (FrameFamily, FrameFamily) {
    (
        materialize(GallerySpec::Example31Frame, k).unwrap(),
        materialize(GallerySpec::Example31Dual, k).unwrap(),
    )
}

fn twice() -> FrameFamily {
    FrameFamily::from_real(&[&[1.0], &[1.0]]).unwrap()
}

fn gallery() -> Vec<(String, FrameFamily)> {
    let specs: Vec<(GallerySpec, usize)> = vec![
        (GallerySpec::OrthonormalBasis { dim: 1 }, 0),
        (GallerySpec::OrthonormalBasis { dim: 4 }, 0),
        (GallerySpec::OrthonormalBasis { dim: 16 }, 0),
        (GallerySpec::TightMB, 0),
        (
            GallerySpec::OnbPlusExtras {
                dim: 3,
                extras: 1,
                seed: 1,
            },
            0,
        ),
        (
            GallerySpec::OnbPlusExtras {
                dim: 8,
                extras: 3,
                seed: 2,
            },
            0,
        ),
        (
            GallerySpec::RandomFrame {
                dim: 2,
                count: 3,
                seed: 3,
            },
            0,
        ),
        (
            GallerySpec::RandomFrame {
                dim: 5,
                count: 9,
                seed: 4,
            },
            0,
        ),
        (
            GallerySpec::RandomFrame {
                dim: 16,
                count: 24,
                seed: 5,
            },
            0,
        ),
        (GallerySpec::Example31Frame, 7),
        (GallerySpec::Example31Frame, 32),
        (GallerySpec::Example31Dual, 8),
        (GallerySpec::Example31Dual, 33),
        (GallerySpec::ZeroPadded, 8),
        (GallerySpec::ZeroPadded, 32),
    ];
    specs
        .into_iter()
        .map(|(s, k)| (format!("{}@{k}", s.name()), materialize(s, k).unwrap()))
        .collect()
}

fn is_tight(f: &FrameFamily) -> bool {
    let b = frame_bounds(f, &tol()).unwrap();
    b.is_frame && (b.upper - b.lower) <= 1e-12 * b.upper
}

fn ac1_closed_forms() -> Check {
    let mut worst: f64 = 0.0;
    let mut worst_odd: f64 = 0.0;
    let mut r = rng(1);
    for k in [7usize, 8, 100, 101, 200, 201] {
        let (x, y) = pair(k);
        let dim = x.ambient_dim();
        let mut probes = vec![Vector::basis(dim, 0)];
        probes.push(vector(&mut r, dim));
        for (pi, p) in probes.iter().enumerate() {
            let series = Series::analysis_expansion(&x, &y, p).map_err(fail)?;
            for cut in 4..=k {
                let local = Vector::new(p.coords()[..example31_dim(cut)].to_vec()).unwrap();
                let expected = example31_partial_sum(&local, cut)
                    .and_then(|v| v.padded(dim))
                    .map_err(fail)?;
                let sum = series.partial_sum(cut).map_err(fail)?;
                worst = worst.max(sum.sub(&expected).map_err(fail)?.norm());
            }
            if pi == 0 && k % 2 == 1 {
                let d = series
                    .partial_sum(k)
                    .map_err(fail)?
                    .sub(p)
                    .map_err(fail)?
                    .norm();
                worst_odd = worst_odd.max(d);
            }
        }
    }
    ensure!(worst <= 1e-12, "closed-form error {worst:e} > 1e-12");
    ensure!(worst_odd == 0.0, "odd-K deviation from e1 is {worst_odd:e}");
    Ok(format!(
        "max closed-form error {worst:.1e}, odd-K deviation {worst_odd}"
    ))
}

fn ac2_non_bessel_growth() -> Check {
    let references = [(10usize, 6.8580), (100, 11.3748), (1000, 15.9708)];
    let mut parts = Vec::new();
    for (m, approx) in references {
        let k = 2 * m + 1;
        let y = materialize(GallerySpec::Example31Dual, k).map_err(fail)?;
        let e1 = Vector::basis(y.ambient_dim(), 0);
        let got = bessel_growth(&y, &e1, &[k]).map_err(fail)?[0].value;
        let exact = 1.0 + 2.0 * harmonic(m);
        ensure!(
            (got - exact).abs() <= 1e-9,
            "m={m}: {got} vs 1+2H = {exact}"
        );
        // The quoted four-decimal values are approximate (the last one is
        // 15.97094), so they only get the ±1e-3 of the CLI check.
        ensure!((got - approx).abs() <= 1e-3, "m={m}: {got} vs {approx}");
        let floor = 2.0 * (m as f64).ln();
        ensure!(got > floor, "m={m}: {got} <= 2 ln m = {floor}");
        parts.push(format!("{got:.4}"));
    }
    Ok(format!("1+2H at m=10,100,1000: {}", parts.join(", ")))
}

fn ac3_conditional_witness() -> Check {
    let k = 201;
    let (x, y) = pair(k);
    let e1 = Vector::basis(x.ambient_dim(), 0);
    let series = Series::analysis_expansion(&x, &y, &e1).map_err(fail)?;
    let search = SearchConfig::default();
    let found = rearrangement_search(&series, &e1, &search).map_err(fail)?;
    ensure!(
        found.max_deviation >= 1.8,
        "rearranged deviation {} < 1.8",
        found.max_deviation
    );
    for cut in (5..=k).step_by(2) {
        let d = series
            .partial_sum(cut)
            .map_err(fail)?
            .sub(&e1)
            .map_err(fail)?
            .norm();
        ensure!(d == 0.0, "deviation {d:e} at odd cut {cut}");
    }
    let diag =
        partial_sum_trajectory(&series, &e1, &default_cuts(k), &search, &tol()).map_err(fail)?;
    ensure!(
        diag.verdict == Verdict::ConditionalEvidence,
        "verdict {}",
        diag.verdict.name()
    );
    Ok(format!(
        "rearranged deviation {:.4}, odd cuts exact, verdict {}",
        found.max_deviation,
        diag.verdict.name()
    ))
}

// Direct `‖Σ c_n x_n‖` without going through the library.
fn synthesis_norm(f: &FrameFamily, c: &[Scalar]) -> f64 {
    let mut acc = vec![Scalar::new(0.0, 0.0); f.ambient_dim()];
    for (cn, xn) in c.iter().zip(f.vectors()) {
        for (a, v) in acc.iter_mut().zip(xn.coords()) {
            *a += cn * v;
        }
    }
    acc.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn ac4_realization_roundtrip() -> Check {
    let t = tol();
    let mut r = rng(4);
    let mut zero_sum_cases = 0;
    let mut worst_residual: f64 = 0.0;
    let mut worst_coeff: f64 = 0.0;
    for case in 0..100u64 {
        let dim = r.random_range(1..=8usize);
        let count = r.random_range(dim..=16usize);
        let f = materialize(
            GallerySpec::RandomFrame {
                dim,
                count,
                seed: case,
            },
            0,
        )
        .map_err(fail)?;
        let mut c: Vec<Scalar>;
        loop {
            c = (0..count).map(|_| scalar(&mut r)).collect();
            if synthesis_norm(&f, &c) > 1e-3 {
                break;
            }
        }
        let y = realize_dual(&f, &c, &t).map_err(fail)?;
        let cert = certify_dual(&f, &y, &t).map_err(fail)?;
        ensure!(
            cert.is_alternative_dual && cert.is_synthesis_pseudo_dual,
            "case {case}: certification failed"
        );
        worst_residual = worst_residual
            .max(cert.alt_dual_residual)
            .max(cert.syn_dual_residual);
        let x0 = framekit::duality::synthesize(&f, &c).map_err(fail)?;
        for (cn, yn) in c.iter().zip(y.vectors()) {
            worst_coeff = worst_coeff.max((inner_product(&x0, yn).map_err(fail)? - cn).norm());
        }
        let oracle = synthesis_norm(&f, &c) > t.rank;
        ensure!(
            is_realizable(&f, &c, &t).map_err(fail)? == oracle,
            "case {case}: realizability disagrees with oracle"
        );

        // Project c onto the kernel of synthesis to get a zero-sum sequence.
        let ms = moment_space(&f, &t).map_err(fail)?;
        let cv = Vector::new(c.clone()).unwrap();
        let z = cv.sub(&ms.project(&cv).map_err(fail)?).map_err(fail)?;
        if z.norm() > 1e-6 {
            zero_sum_cases += 1;
            let zc = z.coords().to_vec();
            ensure!(
                realize_dual(&f, &zc, &t).map(|_| ()).map_err(|e| e.name()) == Err("ZeroResultant"),
                "case {case}: zero-sum coefficients did not raise ZeroResultant"
            );
            ensure!(
                !is_realizable(&f, &zc, &t).map_err(fail)?,
                "case {case}: zero-sum sequence reported realizable"
            );
        }
    }
    ensure!(worst_residual <= 1e-8, "dual residual {worst_residual:e}");
    ensure!(worst_coeff <= 1e-9, "coefficient error {worst_coeff:e}");
    let c = [Scalar::new(1.0, 0.0), Scalar::new(-1.0, 0.0)];
    ensure!(
        !is_realizable(&twice(), &c, &tol()).map_err(fail)?,
        "(1,-1) on {{e1,e1}} reported realizable"
    );
    Ok(format!(
        "100 cases, residual {worst_residual:.1e}, coefficient error {worst_coeff:.1e}, {zero_sum_cases} zero-sum rejections"
    ))
}

fn ac5_canonical_reconstruction() -> Check {
    let t = tol();
    let mut worst: f64 = 0.0;
    let mut tight = 0;
    for (name, f) in gallery() {
        let d = canonical_dual(&f, &t).map_err(fail)?;
        for m in [cross_operator(&f, &d), cross_operator(&d, &f)] {
            let res = identity_residual(&m.map_err(fail)?, &t).map_err(fail)?;
            ensure!(res <= 1e-9, "{name}: reconstruction residual {res:e}");
            worst = worst.max(res);
        }
        if is_tight(&f) {
            tight += 1;
            let a = frame_bounds(&f, &t).map_err(fail)?.lower;
            for (xn, dn) in f.vectors().iter().zip(d.vectors()) {
                let err = dn
                    .sub(&xn.scale(Scalar::new(1.0 / a, 0.0)))
                    .map_err(fail)?
                    .norm();
                ensure!(err <= 1e-10, "{name}: tight dual off by {err:e}");
            }
        }
    }
    let mb = materialize(GallerySpec::TightMB, 0).map_err(fail)?;
    let d = canonical_dual(&mb, &t).map_err(fail)?;
    for (xn, dn) in mb.vectors().iter().zip(d.vectors()) {
        let err = dn
            .sub(&xn.scale(Scalar::new(2.0 / 3.0, 0.0)))
            .map_err(fail)?
            .norm();
        ensure!(err <= 1e-10, "TightMB dual is not 2/3 x_n ({err:e})");
    }
    Ok(format!(
        "15 gallery frames, max residual {worst:.1e}, {tight} tight"
    ))
}

fn ac6_excess_equality() -> Check {
    let t = tol();
    let mut r = rng(6);
    for case in 0..50u64 {
        let j = (case % 4) as usize;
        let dim = r.random_range(1..=6usize);
        let spec = if case % 2 == 0 {
            GallerySpec::OnbPlusExtras {
                dim,
                extras: j,
                seed: case,
            }
        } else {
            GallerySpec::RandomFrame {
                dim,
                count: dim + j,
                seed: case,
            }
        };
        let f = materialize(spec, 0).map_err(fail)?;
        let mut c: Vec<Scalar>;
        loop {
            c = (0..f.count()).map(|_| scalar(&mut r)).collect();
            if synthesis_norm(&f, &c) > 1e-3 {
                break;
            }
        }
        let duals = [
            realize_dual(&f, &c, &t).map_err(fail)?,
            canonical_dual(&f, &t).map_err(fail)?,
        ];
        let audit = dual_excess_audit(&f, &duals, &t).map_err(fail)?;
        ensure!(
            audit.frame.excess == j,
            "case {case}: frame excess {} != {j}",
            audit.frame.excess
        );
        for d in &audit.duals {
            ensure!(
                d.excess == j,
                "case {case}: dual excess {} != {j}",
                d.excess
            );
        }
        ensure!(audit.consistent, "case {case}: audit inconsistent");
    }
    let y = FrameFamily::from_real(&[&[2.0], &[-1.0]]).unwrap();
    let audit = dual_excess_audit(&twice(), &[y], &t).map_err(fail)?;
    let got = (audit.frame.excess, audit.duals[0].excess);
    ensure!(got == (1, 1), "{{e1,e1}}/{{2,-1}} reports {got:?}");
    Ok("50 frames with excess 0..=3 match their duals; {e1,e1}/{2,-1} -> (1,1)".to_string())
}

fn ac7_near_riesz() -> Check {
    let t = tol();
    for (dim, j, seed) in [
        (1usize, 1usize, 1u64),
        (3, 2, 2),
        (4, 0, 3),
        (6, 3, 4),
        (8, 5, 5),
        (16, 4, 6),
    ] {
        let f = materialize(
            GallerySpec::OnbPlusExtras {
                dim,
                extras: j,
                seed,
            },
            0,
        )
        .map_err(fail)?;
        let rep = excess(&f, &t).map_err(fail)?;
        ensure!(rep.excess == j, "({dim},{j}): excess {}", rep.excess);
        ensure!(rep.is_near_riesz, "({dim},{j}): not near-Riesz");
        ensure!(
            rep.removable_set.len() == j,
            "({dim},{j}): removable set {:?}",
            rep.removable_set
        );
        ensure!(
            rep.kept_lower_bound > 0.5,
            "({dim},{j}): kept lower bound {}",
            rep.kept_lower_bound
        );
    }
    for dim in [1usize, 2, 5, 16] {
        let f = materialize(GallerySpec::OrthonormalBasis { dim }, 0).map_err(fail)?;
        ensure!(
            excess(&f, &t).map_err(fail)?.is_riesz,
            "ONB({dim}) not Riesz"
        );
    }
    Ok("6 OnbPlusExtras cases and 4 ONBs classified".to_string())
}

fn ac8_moment_spaces() -> Check {
    let t = tol();
    let ms = moment_space(&twice(), &t).map_err(fail)?;
    ensure!(
        (ms.dim(), ms.codim) == (1, 1),
        "m({{e1,e1}}) has dim {} codim {}",
        ms.dim(),
        ms.codim
    );
    let q = ms.basis[0].coords();
    let h = std::f64::consts::FRAC_1_SQRT_2;
    ensure!(
        (q[0].norm() - h).abs() < 1e-12 && (q[0] - q[1]).norm() < 1e-12,
        "basis is not (1,1)/sqrt2 up to phase"
    );

    let mut r = rng(8);
    let mut lemma_checks = 0;
    for (name, f) in gallery() {
        let d = canonical_dual(&f, &t).map_err(fail)?;
        ensure!(
            moment_space_equal(&f, &d, &t).map_err(fail)?,
            "{name}: moment spaces differ"
        );
        let ms = moment_space(&d, &t).map_err(fail)?;
        let upper = frame_bounds(&f, &t).map_err(fail)?.upper;
        for _ in 0..100 {
            let v = loop {
                let v = vector(&mut r, f.ambient_dim());
                if v.norm() > 0.0 {
                    break v;
                }
            };
            let coeffs: Vec<Scalar> = d
                .vectors()
                .iter()
                .map(|yn| inner_product(&v, yn).unwrap())
                .collect();
            let m = moment_membership(&ms, &coeffs, &t).map_err(fail)?;
            let floor = v.norm() / upper.sqrt() * (1.0 - 1e-9);
            ensure!(
                m.projection_norm >= floor,
                "{name}: projection below ‖y‖/√B"
            );
            lemma_checks += 1;
        }
    }

    for dim in 1..=8usize {
        let f = materialize(GallerySpec::OrthonormalBasis { dim }, 0).map_err(fail)?;
        let zero = vec![Scalar::new(0.0, 0.0); dim];
        ensure!(
            extended_moment_membership(&f, &zero, &t).map_err(fail)?,
            "ONB({dim}) rejects 0"
        );
        for _ in 0..20 {
            let c = vector(&mut r, dim);
            ensure!(
                extended_moment_membership(&f, c.coords(), &t).map_err(fail)?,
                "ONB({dim}) rejects a sequence"
            );
        }
    }
    let c = [Scalar::new(1.0, 0.0), Scalar::new(-1.0, 0.0)];
    ensure!(
        !extended_moment_membership(&twice(), &c, &t).map_err(fail)?,
        "(1,-1) accepted on {{e1,e1}}"
    );
    Ok(format!(
        "m({{e1,e1}}) ok, 15 canonical pairs equal, {lemma_checks} projection checks"
    ))
}

fn ac9_zero_padding() -> Check {
    let t = tol();
    let mut bounds = Vec::new();
    for k in [8usize, 16, 32, 64] {
        let f = materialize(GallerySpec::ZeroPadded, k).map_err(fail)?;
        let base = canonical_dual(&f, &t).map_err(fail)?;
        let w = Vector::basis(f.ambient_dim(), 0);
        let y = nonframe_dual_for_zero_padded(&f, &base, &w, &t).map_err(fail)?;
        let cert = certify_dual(&f, &y, &t).map_err(fail)?;
        ensure!(
            cert.is_alternative_dual && cert.alt_dual_residual <= t.dual,
            "K={k}: not certified (residual {:e})",
            cert.alt_dual_residual
        );
        bounds.push(cert.dual_bessel_bound);
    }
    for w in bounds.windows(2) {
        ensure!(
            w[1] / w[0] >= 1.8,
            "Bessel bound ratio {} < 1.8",
            w[1] / w[0]
        );
    }
    Ok(format!("Bessel bounds {bounds:?}"))
}

// Every command once, with a fixed seed, in JSON.
fn cli_suite() -> Vec<Vec<&'static str>> {
    let base: Vec<Vec<&str>> = vec![
        vec!["analyze", "--gallery", "tight-mb"],
        vec!["analyze", "--gallery", "random:4,9"],
        vec!["dual-check", "--gallery", "onb-plus-extras:4,2"],
        vec![
            "dual-check",
            "--gallery",
            "zero-padded",
            "--K",
            "16",
            "--zero-pad-w",
            "1,0,0,0,0,0,0,0",
        ],
        vec!["realize", "--gallery", "onb:2", "--coeffs", "1,1"],
        vec![
            "realize",
            "--gallery",
            "random:3,6",
            "--coeffs",
            "1+2i,-0.5,i,0,2,-1e-1",
        ],
        vec!["realize", "--gallery", "tight-mb", "--coeffs", "1,1,1"],
        vec!["converge", "--gallery", "random:3,40", "--probe", "1,i,-1"],
        vec!["excess", "--gallery", "example31-frame", "--K", "41"],
        vec!["moment", "--gallery", "tight-mb", "--coeffs", "1,-1,0"],
        vec!["gallery", "random:2,5"],
        vec!["reproduce-example31", "--K", "201"],
    ];
    base.into_iter()
        .map(|mut a| {
            a.extend(["--seed", "42", "--format", "json"]);
            a
        })
        .collect()
}

fn ac10_determinism() -> Check {
    let bin = env!("CARGO_BIN_EXE_framekit");
    let suite = cli_suite();
    let mut bytes = 0;
    for args in &suite {
        let runs: Vec<Vec<u8>> = (0..2)
            .map(|_| {
                Command::new(bin)
                    .args(args)
                    .env_remove("FRAMEKIT_SEED")
                    .output()
                    .map(|o| o.stdout)
                    .map_err(fail)
            })
            .collect::<Result<_, _>>()?;
        ensure!(runs[0] == runs[1], "{args:?}: reports differ between runs");
        let mut full = vec!["framekit"];
        full.extend(args.iter().copied());
        let in_process = execute(&RunConfig::parse_from(full, None).map_err(fail)?);
        ensure!(
            in_process.report.as_bytes() == runs[0].as_slice(),
            "{args:?}: binary and library reports differ"
        );
        ensure!(!runs[0].is_empty(), "{args:?}: empty report");
        bytes += runs[0].len();
    }
    Ok(format!(
        "{} commands, {bytes} bytes identical across runs",
        suite.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("AC1 closed-form partial sums", ac1_closed_forms),
        ("AC2 non-Bessel coefficient growth", ac2_non_bessel_growth),
        (
            "AC3 conditional-convergence witness",
            ac3_conditional_witness,
        ),
        ("AC4 dual realization round trip", ac4_realization_roundtrip),
        (
            "AC5 canonical dual reconstruction",
            ac5_canonical_reconstruction,
        ),
        ("AC6 excess equality with duals", ac6_excess_equality),
        ("AC7 near-Riesz classification", ac7_near_riesz),
        ("AC8 moment spaces", ac8_moment_spaces),
        ("AC9 zero-padding non-frame dual", ac9_zero_padding),
        ("AC10 CLI determinism", ac10_determinism),
    ];
    let start = Instant::now();
    let mut failures = 0;
    for (name, check) in criteria {
        let t = Instant::now();
        let outcome =
            catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".to_string()));
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("[PASS] {name} ({secs:.2}s): {detail}"),
            Err(why) => {
                failures += 1;
                println!("[FAIL] {name} ({secs:.2}s): {why}");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failures} failed in {:.2}s",
        10 - failures,
        start.elapsed().as_secs_f64()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
