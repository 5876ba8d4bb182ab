//! Acceptance gate: one PASS/FAIL line per criterion, non-zero exit on failure.

use std::io::Write;
use std::process::{Command, Stdio};
use std::time::{Duration, Instant};

use spectra_diag::gen::{self, GenConfig};
use spectra_diag::verify::{jacobi_eigenvalues, verify_mirsky};
use spectra_diag::{
    check_majorization, hermitian_of, horn_construct, kernel2, mirsky_construct,
    orthostochastic_of, verify_horn, Complex64, ComplexSeq, HornCertificate, RealSeq, TolProfile,
};

const CASES: u64 = 500;

type Outcome = Result<String, String>;

fn horn_suite() -> Vec<(RealSeq, RealSeq)> {
    (0..CASES)
        .map(|i| {
            let n = 1 + (i as usize % 40);
            let cfg = GenConfig::new(i, n, -10.0, 10.0).with_mix(8);
            let lambda = gen::random_spectrum(&cfg).unwrap();
            let d = gen::random_majorized_diag(&lambda, &cfg).unwrap();
            (lambda, d)
        })
        .collect()
}

fn scale(lambda: &RealSeq) -> f64 {
    lambda.max_abs().max(1.0)
}

fn horn_correctness(suite: &[(RealSeq, RealSeq)], certs: &mut Vec<HornCertificate>) -> Outcome {
    let start = Instant::now();
    let (mut worst_orth, mut worst_diag, mut worst_eig) = (0.0_f64, 0.0_f64, 0.0_f64);
    for (i, (lambda, d)) in suite.iter().enumerate() {
        let n = lambda.len();
        let nf = n as f64;
        let cert = horn_construct(lambda, d, 1e-12).map_err(|e| format!("case {i}: {e}"))?;

        let q = cert.q.entries();
        let mut orth = 0.0_f64;
        for a in 0..n {
            for b in 0..n {
                let s: f64 = (0..n).map(|k| q[(k, a)] * q[(k, b)]).sum();
                orth = orth.max((s - if a == b { 1.0 } else { 0.0 }).abs());
            }
        }
        let a = hermitian_of(&cert.q, lambda).unwrap();
        let diag = (0..n)
            .map(|k| (a[(k, k)] - d.values()[k]).abs())
            .fold(0.0, f64::max);
        let ev = jacobi_eigenvalues(&a, 1e-12, 50).map_err(|e| format!("case {i}: {e}"))?;
        let eig = ev
            .values()
            .iter()
            .zip(lambda.values())
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max);

        if orth > 1e-12 * nf {
            return Err(format!("case {i}: orthogonality {orth:e}"));
        }
        if diag > 1e-10 * nf * scale(lambda) {
            return Err(format!("case {i}: diagonal {diag:e}"));
        }
        if eig > 1e-8 * scale(lambda) {
            return Err(format!("case {i}: eigenvalues {eig:e}"));
        }
        worst_orth = worst_orth.max(orth / nf);
        worst_diag = worst_diag.max(diag / (nf * scale(lambda)));
        worst_eig = worst_eig.max(eig / scale(lambda));
        certs.push(cert);
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(10) {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!(
        "{CASES} cases, worst orth/N {worst_orth:.1e}, diag/(N·scale) {worst_diag:.1e}, eig/scale {worst_eig:.1e}, {elapsed:.2?}"
    ))
}

fn schur_relation(suite: &[(RealSeq, RealSeq)], certs: &[HornCertificate]) -> Outcome {
    let mut worst = 0.0_f64;
    for (i, ((lambda, d), cert)) in suite.iter().zip(certs).enumerate() {
        let n = lambda.len();
        let nf = n as f64;
        let s = orthostochastic_of(&cert.q);
        let sd = s.apply(lambda.values());
        let err = sd
            .iter()
            .zip(d.values())
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max);
        // ‖Λ‖∞ = 0 makes the bound 0; D is then exactly 0 as well
        if err > 1e-10 * nf * lambda.max_abs() {
            return Err(format!("case {i}: ‖SΛ − D‖∞ = {err:e}"));
        }
        let m = s.entries();
        for k in 0..n {
            let row: f64 = (0..n).map(|j| m[(k, j)]).sum();
            let col: f64 = (0..n).map(|j| m[(j, k)]).sum();
            if (row - 1.0).abs() > 1e-12 * nf || (col - 1.0).abs() > 1e-12 * nf {
                return Err(format!("case {i}: sums {row} / {col}"));
            }
        }
        worst = worst.max(err / (nf * lambda.max_abs().max(f64::MIN_POSITIVE)));
    }
    Ok(format!(
        "{} cases, worst ‖SΛ − D‖∞/(N‖Λ‖∞) {worst:.1e}",
        certs.len()
    ))
}

fn n2_oracle() -> Outcome {
    const GRID: usize = 1_000_000;
    let half_pi = std::f64::consts::FRAC_PI_2;
    let h = half_pi / GRID as f64;
    let mut rng = gen::SplitMix64::new(0x5EED);
    let (mut worst_grid, mut worst_refined, mut worst_closed) = (0.0_f64, 0.0_f64, 0.0_f64);
    for case in 0..200 {
        let (x, y) = (rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
        let (l1, l2) = (x.max(y), x.min(y));
        let d1 = rng.uniform(l2, l1);
        let diag = |t: f64| {
            let (s, c) = t.sin_cos();
            c * c * l1 + s * s * l2
        };

        let mut best = (f64::INFINITY, 0.0);
        for g in 0..=GRID {
            let t = g as f64 * h;
            let err = (diag(t) - d1).abs();
            if err < best.0 {
                best = (err, t);
            }
        }
        if best.0 > 1e-5 {
            return Err(format!("case {case}: grid diagonal error {:e}", best.0));
        }

        // diag(t) decreases on [0, π/2]; bisect the bracket around the grid optimum
        let (mut lo, mut hi) = ((best.1 - h).max(0.0), (best.1 + h).min(half_pi));
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if diag(mid) > d1 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let refined = 0.5 * (lo + hi);
        let refined_err = (diag(refined) - d1).abs();
        if refined_err > 1e-10 {
            return Err(format!(
                "case {case}: refined diagonal error {refined_err:e}"
            ));
        }

        let k = kernel2(l1, l2, d1, 1e-12).map_err(|e| format!("case {case}: {e}"))?;
        let (a11, _) = k.conjugated_diagonal(l1, l2);
        let closed_err = (a11 - d1).abs();
        let angle = k.v.atan2(k.u);
        if closed_err > 1e-10 {
            return Err(format!(
                "case {case}: closed-form diagonal error {closed_err:e}"
            ));
        }
        if (angle - best.1).abs() > h {
            return Err(format!(
                "case {case}: closed-form angle {angle} vs grid {}",
                best.1
            ));
        }
        worst_grid = worst_grid.max(best.0);
        worst_refined = worst_refined.max(refined_err);
        worst_closed = worst_closed.max(closed_err);
    }
    Ok(format!(
        "200 triples, grid {worst_grid:.1e}, bisection {worst_refined:.1e}, closed form {worst_closed:.1e}"
    ))
}

fn mirsky_correctness() -> Outcome {
    let profile = TolProfile::default();
    let (mut worst_sim, mut worst_cp, mut charpoly_cases) = (0.0_f64, 0.0_f64, 0);
    for i in 0..CASES {
        let n = 1 + (i as usize % 40);
        let complex = i % 2 == 1;
        let cfg = GenConfig::new(i, n, -10.0, 10.0);
        let (lambda, d) = gen::trace_matched_pair(&cfg, complex).unwrap();
        let cert = mirsky_construct(&lambda, &d, 1e-12).map_err(|e| format!("case {i}: {e}"))?;
        let report = verify_mirsky(&cert, &profile);
        if !report.pass {
            return Err(format!("case {i}: {report:?}"));
        }
        // diagonal bound, per entry
        let s = lambda.max_abs().max(d.max_abs()).max(1.0);
        for k in 0..n {
            let e = (cert.a[(k, k)] - d.values()[k]).norm();
            if e > 1e-12 * s {
                return Err(format!("case {i}: diag entry {k} off by {e:e}"));
            }
        }
        if !complex {
            let all_real = cert.a.as_slice().iter().all(|z| z.im.to_bits() == 0)
                && cert
                    .l
                    .entries()
                    .as_slice()
                    .iter()
                    .all(|z| z.im.to_bits() == 0);
            if !all_real {
                return Err(format!("case {i}: imaginary part introduced"));
            }
        }
        if n <= 6 {
            charpoly_cases += 1;
            let cp = report
                .charpoly
                .ok_or(format!("case {i}: no charpoly check"))?;
            worst_cp = worst_cp.max(cp.value);
        }
        let sim = report
            .similarity
            .ok_or(format!("case {i}: no similarity check"))?;
        worst_sim = worst_sim.max(sim.value / sim.threshold);
    }
    Ok(format!(
        "{CASES} cases, worst similarity/bound {worst_sim:.1e}, charpoly rel {worst_cp:.1e} over {charpoly_cases} small cases"
    ))
}

fn degenerate_battery() -> Outcome {
    for n in 1..=40usize {
        let cfg = GenConfig::new(n as u64, n, -10.0, 10.0);
        let mut v = gen::random_spectrum(&cfg).unwrap().into_vec();
        // unsorted with a tie, to exercise the permutation bookkeeping
        gen::SplitMix64::new(7).shuffle(&mut v);
        if n > 2 {
            v[1] = v[0];
        }
        let s = RealSeq::new(v.clone()).unwrap();
        let cert = horn_construct(&s, &s, 1e-12).map_err(|e| format!("horn Λ=D n={n}: {e}"))?;
        let q = cert.q.entries();
        for i in 0..n {
            for j in 0..n {
                let want: f64 = if i == j { 1.0 } else { 0.0 };
                if q[(i, j)].to_bits() != want.to_bits() {
                    return Err(format!("horn Λ=D n={n}: Q[{i}][{j}] = {}", q[(i, j)]));
                }
            }
        }
        let c = ComplexSeq::from_real(&v).unwrap();
        let cert = mirsky_construct(&c, &c, 1e-12).map_err(|e| format!("mirsky Λ=D n={n}: {e}"))?;
        let l = cert.l.entries();
        for i in 0..n {
            for j in 0..n {
                let want = Complex64::new(if i == j { 1.0 } else { 0.0 }, 0.0);
                let got = l[(i, j)];
                if got.re.to_bits() != want.re.to_bits() || got.im.to_bits() != want.im.to_bits() {
                    return Err(format!("mirsky Λ=D n={n}: L[{i}][{j}] = {got}"));
                }
            }
        }
    }

    let equal = RealSeq::new(vec![2.5; 6]).unwrap();
    let cert = horn_construct(&equal, &equal, 1e-12).map_err(|e| e.to_string())?;
    if *cert.q.entries() != spectra_diag::SquareMatrix::identity(6) {
        return Err("all-equal Λ: Q is not I".into());
    }
    let other = RealSeq::new(vec![2.6, 2.5, 2.5, 2.5, 2.5, 2.4]).unwrap();
    if check_majorization(&equal, &other, 1e-12).unwrap().holds {
        return Err("all-equal Λ majorizes a non-constant D".into());
    }
    if horn_construct(&equal, &other, 1e-12).is_ok() {
        return Err("all-equal Λ accepted a non-constant D".into());
    }

    let one = RealSeq::new(vec![-3.25]).unwrap();
    let cert = horn_construct(&one, &one, 1e-12).map_err(|e| e.to_string())?;
    if cert.q.entries()[(0, 0)] != 1.0 || !cert.steps.is_empty() {
        return Err("N=1 horn".into());
    }
    let c1 = ComplexSeq::new(vec![Complex64::new(1.0, 2.0)]).unwrap();
    let cert = mirsky_construct(&c1, &c1, 1e-12).map_err(|e| e.to_string())?;
    if cert.a[(0, 0)] != c1.values()[0] || cert.l.entries()[(0, 0)] != Complex64::new(1.0, 0.0) {
        return Err("N=1 mirsky".into());
    }

    let lambda = RealSeq::new(vec![1.0, 0.0]).unwrap();
    let d = RealSeq::new(vec![1.0 - 1e-15, 1e-15]).unwrap();
    let cert = horn_construct(&lambda, &d, 1e-12).map_err(|e| format!("boundary: {e}"))?;
    if cert.q.entries().as_slice().iter().any(|x| !x.is_finite()) {
        return Err("boundary case produced a non-finite entry".into());
    }
    let k = kernel2(1.0, 0.0, 1.0 + 1e-15, 1e-12).map_err(|e| format!("clamp: {e}"))?;
    if !(k.u.is_finite() && k.v.is_finite()) {
        return Err("clamped radicand produced NaN".into());
    }
    Ok("Λ=D for N=1..40, all-equal Λ, N=1, boundary d₁ = λ₁ − 1e−15".into())
}

fn intermediate_invariant(suite: &[(RealSeq, RealSeq)], certs: &[HornCertificate]) -> Outcome {
    let mut checked = 0usize;
    for (i, ((lambda, d), cert)) in suite.iter().zip(certs).enumerate() {
        let mut lam = lambda.values().to_vec();
        let mut dd = d.values().to_vec();
        lam.sort_by(|a, b| b.partial_cmp(a).unwrap());
        dd.sort_by(|a, b| b.partial_cmp(a).unwrap());
        for (s, step) in cert.steps.iter().enumerate() {
            let k = step.k - 1;
            // d_k is the target after clamping into [λ_{K+1}, λ_K]
            let drift = (dd[k] - step.d_k).abs();
            if lam[k] != step.lambda_k
                || lam[k + 1] != step.lambda_k1
                || drift > 1e-12 * scale(lambda)
            {
                return Err(format!("case {i} step {s}: replay diverged"));
            }
            lam[k] = step.d_k;
            lam[k + 1] = step.lambda_k1_new;
            let report = check_majorization(
                &RealSeq::new(lam.clone()).unwrap(),
                &RealSeq::new(dd.clone()).unwrap(),
                1e-12,
            )
            .unwrap();
            if !report.holds {
                return Err(format!(
                    "case {i} step {s}: Λ' fails at prefix {:?}",
                    report.first_violation()
                ));
            }
            lam.remove(k);
            dd.remove(k);
            checked += 1;
        }
    }
    let mode = if cfg!(debug_assertions) { "on" } else { "off" };
    Ok(format!(
        "{checked} pivot steps replayed, debug assertions {mode}"
    ))
}

fn run_bin(args: &[&str], stdin: &str) -> Result<(i32, Vec<u8>), String> {
    let mut child = Command::new(env!("CARGO_BIN_EXE_spectra-diag"))
        .args(args)
        .env_remove("SPECTRA_DIAG_TOL")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .map_err(|e| e.to_string())?;
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .map_err(|e| e.to_string())?;
    let out = child.wait_with_output().map_err(|e| e.to_string())?;
    Ok((out.status.code().unwrap_or(-1), out.stdout))
}

fn determinism() -> Outcome {
    let mut runs = 0;
    for (seed, kind, solver) in [
        ("1", "horn", "horn"),
        ("2", "mirsky", "mirsky"),
        ("3", "mirsky-complex", "mirsky"),
    ] {
        let gen_args = ["gen", "--seed", seed, "--n", "8", "--kind", kind];
        let (c1, p1) = run_bin(&gen_args, "")?;
        let (c2, p2) = run_bin(&gen_args, "")?;
        if c1 != 0 || c2 != 0 || p1 != p2 {
            return Err(format!("gen {kind} not reproducible"));
        }
        let problem = String::from_utf8(p1).map_err(|e| e.to_string())?;
        let (c1, o1) = run_bin(&[solver], &problem)?;
        let (c2, o2) = run_bin(&[solver], &problem)?;
        if c1 != 0 || c2 != 0 || o1 != o2 {
            return Err(format!(
                "{solver} output differs between runs (exit {c1}/{c2})"
            ));
        }
        let cert = String::from_utf8(o1).map_err(|e| e.to_string())?;
        let (code, _) = run_bin(&["verify"], &cert)?;
        if code != 0 {
            return Err(format!(
                "{solver} certificate re-verification exited {code}"
            ));
        }
        runs += 1;
    }
    Ok(format!(
        "{runs} pipelines byte-identical, round-trip verify exit 0"
    ))
}

fn scale_smoke() -> Outcome {
    let cfg = GenConfig::new(200, 200, -10.0, 10.0);
    let lambda = gen::random_spectrum(&cfg).unwrap();
    let d = gen::random_majorized_diag(&lambda, &cfg).unwrap();
    let start = Instant::now();
    let cert = horn_construct(&lambda, &d, 1e-12).map_err(|e| e.to_string())?;
    let report = verify_horn(&cert, &TolProfile::default());
    let elapsed = start.elapsed();
    if !report.pass {
        return Err(format!("verification failed: {report:?}"));
    }
    if elapsed >= Duration::from_secs(5) {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!("N=200 construct + verify in {elapsed:.2?}"))
}

fn main() {
    let suite = horn_suite();
    let mut certs = Vec::with_capacity(suite.len());
    let c1 = horn_correctness(&suite, &mut certs);
    let complete = certs.len() == suite.len();
    let need_certs = |f: &dyn Fn() -> Outcome| {
        if complete {
            f()
        } else {
            Err("suite 1 did not complete".into())
        }
    };
    let results: Vec<(&str, Outcome)> = vec![
        ("1 horn correctness", c1),
        (
            "2 schur relation",
            need_certs(&|| schur_relation(&suite, &certs)),
        ),
        ("3 n=2 oracle equivalence", n2_oracle()),
        ("4 mirsky correctness", mirsky_correctness()),
        ("5 degenerate battery", degenerate_battery()),
        (
            "6 intermediate invariant",
            need_certs(&|| intermediate_invariant(&suite, &certs)),
        ),
        ("7 determinism", determinism()),
        ("8 scale smoke test", scale_smoke()),
    ];
    let mut failed = 0;
    for (name, outcome) in &results {
        match outcome {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name}: {detail}");
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        results.len() - failed,
        results.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
