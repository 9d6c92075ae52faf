//! Acceptance run: one PASS/FAIL line per criterion, with indented detail lines.
//! Red criteria are reported, not asserted, so the run always completes.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::Instant;

use hybrid_lgt::compactness::{penalty_threshold, PenaltyScanCriteria, PenaltyScanGrid};
use hybrid_lgt::gates::{run_check, standard_checks, CaseKind, DEFAULT_INTERIOR};
use hybrid_lgt::model::lattice::{constraint_count, independent_count, link_count};
use hybrid_lgt::model::plaquette::assemble_parts;
use hybrid_lgt::model::{
    build_plaquette_hamiltonian_in, car_defect, charge_commutator_defect, gap_formula, gauge_covariance_defect,
    gauss_reduce, jw_single_plaquette, normal_mode_frequencies, perturbative_ground_energy, pure_gauge_ed,
    pure_gauge_energy, radius_conservation_defect, Backend, Compactness, Cutoffs, PlaquetteParams, PlaquetteRegister,
    Sector,
};
use hybrid_lgt::numerics::{minimize_scalar, RadialGridSpec};
use hybrid_lgt::solvers::{
    direct_map, exact_ground, ground_summary, qite_ground, qumode_ancilla_map, survival_amplitude, survival_on_circle,
    variational_point, Propagation, QiteMethod, QiteRun, TrotterPlan,
};

struct Outcome {
    pass: bool,
    summary: String,
    details: Vec<String>,
}

type Check = Result<Outcome, String>;

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn report(id: usize, title: &str, run: impl FnOnce() -> Check) -> bool {
    let start = Instant::now();
    let outcome = run();
    let secs = start.elapsed().as_secs_f64();
    match outcome {
        Ok(o) => {
            println!("{} C{id} {title}: {} [{secs:.1}s]", if o.pass { "PASS" } else { "FAIL" }, o.summary);
            for d in o.details {
                println!("      {d}");
            }
            o.pass
        }
        Err(e) => {
            println!("FAIL C{id} {title}: error: {e} [{secs:.1}s]");
            false
        }
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn pure_gauge_spectrum() -> Check {
    let mut worst = 0.0f64;
    let mut details = Vec::new();
    for x in [0.5, 1.0, 2.0, 5.0, 10.0] {
        let g = f64::powf(x, -0.5);
        let ed = pure_gauge_ed(g, 32, 4).map_err(err)?;
        let mut row = 0.0f64;
        for (n, e) in ed.iter().enumerate() {
            row = row.max((e - pure_gauge_energy(n, g).map_err(err)?).abs());
        }
        worst = worst.max(row);
        details.push(format!("g⁻²={x}: max |ΔE| over n=0..3 = {row:.2e}"));
    }
    Ok(Outcome { pass: worst <= 1e-6, summary: format!("max |ΔE| = {worst:.2e} (bound 1e-6)"), details })
}

fn gate_decompositions() -> Check {
    let checks = standard_checks(None, DEFAULT_INTERIOR).map_err(err)?;
    let mut pass = true;
    let mut details = Vec::new();
    for c in &checks {
        pass &= c.passed();
        let relation = if c.case.is_negative_control() { "≥" } else { "≤" };
        details.push(format!(
            "{:<17} n_max={:<2} interior={} residual={:.2e} ({relation} {:.0e}) {}",
            c.case.name(),
            c.n_max,
            c.interior_fraction,
            c.residual,
            c.tolerance,
            if c.passed() { "ok" } else { "MISS" }
        ));
    }
    let tight = run_check(CaseKind::DEntangler, None, 0.25).map_err(err)?;
    details.push(format!("info: D_entangler at interior 0.25 → residual {:.2e}", tight.residual));
    let failed = checks.iter().filter(|c| !c.passed()).count();
    Ok(Outcome { pass, summary: format!("{failed} of {} certificates outside bound", checks.len()), details })
}

fn variational_limits() -> Check {
    let spec = RadialGridSpec::default();
    let mut pass = true;
    let mut details = Vec::new();
    for lambda in [1.0, 2.0, 3.0] {
        let p = variational_point(50.0, lambda, &spec).map_err(err)?;
        let e_target = 1.0 + 1.0 / (8.0 * lambda * lambda);
        let (e_err, gap_err) = (rel(p.e0, e_target), rel(p.gap, 2.0));
        let ok = e_err <= 0.01 && gap_err <= 0.02;
        pass &= ok;
        details.push(format!(
            "g⁻²=50 Λ={lambda}: ε₀={:.5} vs {e_target:.5} ({:.2}%), gap={:.4} vs 2 ({:.2}%) {}",
            p.e0,
            100.0 * e_err,
            p.gap,
            100.0 * gap_err,
            if ok { "ok" } else { "MISS" }
        ));
    }
    for x in [10.0, 20.0, 50.0] {
        for lambda in [1.0, 2.0, 3.0] {
            let p = variational_point(x, lambda, &spec).map_err(err)?;
            let g2 = 1.0 / x;
            let target = 1.0 - g2 / 2.0 + (1.0 - 3.0 * g2) / (16.0 * lambda * lambda);
            let ok = rel(p.wilson, target) <= 0.01;
            pass &= ok;
            details.push(format!(
                "g⁻²={x} Λ={lambda}: W={:.5} vs {target:.5} ({:.2}%) {}",
                p.wilson,
                100.0 * rel(p.wilson, target),
                if ok { "ok" } else { "MISS" }
            ));
        }
    }
    Ok(Outcome { pass, summary: "ε₀ within 1%, gap within 2%, Wilson loop within 1%".into(), details })
}

/// Lowest pure-gauge level on the slice of radius `r`, vacuum fermions.
fn slice_ground(g: f64, r: f64) -> hybrid_lgt::Result<f64> {
    let params = PlaquetteParams::new(g, 0.0)?.with_cutoffs(Cutoffs { j_max: 32, ..Cutoffs::default() })?;
    let vacuum = jw_single_plaquette().vacuum_index();
    let reg = PlaquetteRegister::new(Backend::PolarSlice(r), &params.cutoffs, &Sector::States(vec![vacuum]))?;
    let parts = assemble_parts(&params, &reg)?;
    Ok(parts.h_e.add(&parts.h_b)?.spectrum()?.eigenvalues[0])
}

/// `inf_R` of the slice ground energy: grid search, then a bracketed refinement.
fn radial_infimum(g: f64) -> hybrid_lgt::Result<f64> {
    let radii: Vec<f64> = (1..=120).map(|k| 0.025 * k as f64).collect();
    let energies = radii.iter().map(|&r| slice_ground(g, r)).collect::<hybrid_lgt::Result<Vec<_>>>()?;
    let k = (0..radii.len()).min_by(|&a, &b| energies[a].total_cmp(&energies[b])).unwrap_or(0);
    let (lo, hi) = (radii[k.saturating_sub(1)], radii[(k + 1).min(radii.len() - 1)]);
    let f = |r: f64| slice_ground(g, r).unwrap_or(f64::INFINITY);
    Ok(minimize_scalar(f, lo, hi).map(|m| m.min).unwrap_or(energies[k]).min(energies[k]))
}

fn rayleigh_ritz() -> Check {
    let spec = RadialGridSpec::default();
    let mut pass = true;
    let mut bound_ok = true;
    let mut details = Vec::new();
    for x in [0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 50.0] {
        let g = f64::powf(x, -0.5);
        let ed = pure_gauge_ed(g, 32, 1).map_err(err)?[0];
        let floor = radial_infimum(g).map_err(err)?;
        for lambda in [1.0, 2.0, 3.0] {
            let p = variational_point(x, lambda, &spec).map_err(err)?;
            let ok = p.e0 >= ed - 1e-8;
            pass &= ok;
            bound_ok &= p.e0 >= floor - 1e-8;
            if !ok {
                details.push(format!("g⁻²={x} Λ={lambda}: ε₀={:.6} < E_ED(R=1)={ed:.6}", p.e0));
            }
        }
        details.push(format!("g⁻²={x}: E_ED(R=1)={ed:.6}, inf_R E₀(R)={floor:.6}"));
    }
    details.push(format!(
        "info: ε₀ ≥ inf_R E₀(R) at every point: {}",
        if bound_ok { "yes" } else { "no" }
    ));
    Ok(Outcome { pass, summary: "ε₀ ≥ E_ED(R=1) − 1e-8 on g⁻² ∈ {0.5…50} × Λ ∈ {1,2,3}".into(), details })
}

fn perturbation_theory() -> Check {
    let mut errors = Vec::new();
    let mut details = Vec::new();
    for m0 in [1.0, 2.0, 4.0, 8.0] {
        let params = PlaquetteParams::new(1.0, m0).map_err(err)?;
        let ed = exact_ground(&params, Backend::PolarSlice(1.0)).map_err(err)?.energy;
        let pt = perturbative_ground_energy(1.0, m0).map_err(err)?;
        details.push(format!("m0={m0}: E_PT={pt:.6} E_ED={ed:.6} rel={:.3e}", rel(pt, ed)));
        errors.push((pt - ed).abs());
    }
    let monotone = errors.windows(2).all(|w| w[1] < w[0]);
    let last = errors[3] / exact_ground(&PlaquetteParams::new(1.0, 8.0).map_err(err)?, Backend::PolarSlice(1.0)).map_err(err)?.energy.abs();
    Ok(Outcome {
        pass: monotone && last <= 0.01,
        summary: format!("monotone={monotone}, relative error at m0=8 = {:.2e}", last),
        details,
    })
}

fn penalty_threshold_scan() -> Check {
    let points = [0.5, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 8.0, 10.0];
    let result =
        penalty_threshold(&points, 1.5, &PenaltyScanCriteria::default(), &PenaltyScanGrid::default()).map_err(err)?;
    let mut bound_ok = true;
    let mut weak_ok = true;
    let mut details = Vec::new();
    for p in &result {
        let mu = p.mu_star;
        bound_ok &= mu.is_some_and(|m| m <= 1.7);
        if p.g_inv_sq >= 8.0 {
            weak_ok &= mu == Some(0.0);
        }
        details.push(format!("g⁻²={}: μ*={mu:?} R*={:?} monotone={}", p.g_inv_sq, p.r_star, p.monotone));
    }
    let max_mu = result.iter().filter_map(|p| p.mu_star).fold(0.0, f64::max);
    Ok(Outcome {
        pass: bound_ok && weak_ok,
        summary: format!("max μ* = {max_mu} (bound 1.7), μ* = 0 for g⁻² ≥ 8: {weak_ok}"),
        details,
    })
}

fn method_a(x: f64, m0: f64, lambda: f64) -> hybrid_lgt::Result<PlaquetteParams> {
    PlaquetteParams::from_inverse_g2(x, m0)?.with_compactness(Compactness::MethodA { lambda })
}

fn survival() -> Check {
    let early: Vec<f64> = (0..=16).map(|k| 0.25 * k as f64).collect();
    let full: Vec<f64> = (0..=32).map(|k| 0.25 * k as f64).collect();
    let plan = Propagation::Trotter(TrotterPlan::new(0.05).map_err(err)?);
    let p2 = method_a(10.0, 1.5, 2.0).map_err(err)?;
    let trotter = survival_amplitude(&p2, &early, &plan).map_err(err)?;
    let exact = survival_amplitude(&p2, &early, &Propagation::Exact).map_err(err)?;
    let dev2 = trotter.probabilities.iter().zip(&exact.probabilities).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);

    let p1 = method_a(10.0, 1.5, 1.0).map_err(err)?;
    let hybrid = survival_amplitude(&p1, &full, &plan).map_err(err)?;
    let compact = survival_on_circle(&p1, &full).map_err(err)?;
    let dev = |range: &dyn Fn(f64) -> bool| {
        full.iter()
            .zip(hybrid.probabilities.iter().zip(&compact))
            .filter(|(t, _)| range(**t))
            .map(|(_, (a, b))| (a - b).abs())
            .fold(0.0, f64::max)
    };
    let (before, after) = (dev(&|t| t <= 4.0), dev(&|t| t > 4.0));
    let grows = after > before;
    Ok(Outcome {
        pass: dev2 <= 0.02 && grows,
        summary: format!("Λ=2 max |ΔP| for t ≤ 4 = {dev2:.4} (bound 0.02); Λ=1 deviation grows after t=4: {grows}"),
        details: vec![
            format!("Λ=2: {} radial slices (Trotter), {} (exact)", trotter.slices, exact.slices),
            format!("Λ=1 vs unit-circle exact evolution: max |ΔP| = {before:.4} for t ≤ 4, {after:.4} for t > 4"),
        ],
    })
}

struct QiteData {
    runs: Vec<(f64, QiteRun)>,
}

fn qite(data: &mut QiteData) -> Check {
    let mut pass = true;
    let mut details = Vec::new();
    for (dtau, steps, tol) in [(0.1, 10usize, 0.02), (0.25, 4, 0.05)] {
        for x in [1.0, 2.0, 5.0, 10.0] {
            let params = method_a(x, 1.5, 1.0).map_err(err)?;
            let run = qite_ground(&params, dtau, steps, QiteMethod::Direct).map_err(err)?;
            let ed = ground_summary(&PlaquetteParams::from_inverse_g2(x, 1.5).map_err(err)?, Backend::PolarSlice(1.0))
                .map_err(err)?
                .energy;
            let e = run.final_energy;
            let ok = rel(e, ed) <= tol;
            pass &= ok;
            details.push(format!(
                "Δτ={dtau} S={steps} g⁻²={x}: E={e:.5} vs ED {ed:.5} ({:.2}%, bound {}%) {}; info: ⟨ψ|H|ψ⟩={:.5} ({:.2}%)",
                100.0 * rel(e, ed),
                100.0 * tol,
                if ok { "ok" } else { "MISS" },
                run.trajectory[steps].expectation,
                100.0 * rel(run.trajectory[steps].expectation, ed)
            ));
            if dtau == 0.1 {
                data.runs.push((x, run));
            }
        }
    }

    let params = method_a(1.0, 1.5, 1.0).map_err(err)?;
    let mut errors = Vec::new();
    for dtau in [0.2, 0.1, 0.05] {
        let a = qite_ground(&params, dtau, 1, QiteMethod::A).map_err(err)?.final_energy;
        let d = qite_ground(&params, dtau, 1, QiteMethod::Direct).map_err(err)?.final_energy;
        errors.push((a - d).abs());
    }
    let ratios = [errors[0] / errors[1], errors[1] / errors[2]];
    let ratio_ok = ratios.iter().all(|r| (3.2..=4.8).contains(r));
    pass &= ratio_ok;
    details.push(format!(
        "Method A one-step |E_A − E_D| at Δτ=0.2,0.1,0.05: {:.3e}, {:.3e}, {:.3e}; ratios {:.3}, {:.3} (4 ± 20%) {}",
        errors[0],
        errors[1],
        errors[2],
        ratios[0],
        ratios[1],
        if ratio_ok { "ok" } else { "MISS" }
    ));

    let mut worst_b = 0.0f64;
    for x in [1.0, 10.0] {
        let p = PlaquetteParams::from_inverse_g2(x, 1.5).map_err(err)?;
        let parts = build_plaquette_hamiltonian_in(&p, Backend::PolarSlice(1.0), &Sector::ChargeZero).map_err(err)?;
        let root = parts.electric_root.data();
        for dtau in [0.1, 0.25] {
            let b = qumode_ancilla_map(root, dtau, 40).map_err(err)?;
            let d = direct_map(&(root * root), dtau).map_err(err)?;
            worst_b = worst_b.max((b - d).iter().map(|z| z.norm()).fold(0.0, f64::max));
        }
    }
    let b_ok = worst_b <= 1e-10;
    pass &= b_ok;
    details.push(format!("Method B on 2g²J² vs Direct: max entry deviation {worst_b:.2e} (bound 1e-10)"));
    Ok(Outcome { pass, summary: "Direct energies vs ED, Method A ratio test, Method B exactness".into(), details })
}

fn condensate(data: &QiteData) -> Check {
    let free = -0.25 * (1.0 + 1.5 / (1.0 + 1.5f64 * 1.5).sqrt());
    let weak = data
        .runs
        .iter()
        .find(|(x, _)| *x == 10.0)
        .map(|(_, r)| r.condensate)
        .ok_or_else(|| "no g⁻² = 10 run available".to_string())?;
    let strong = qite_ground(&method_a(0.2, 1.5, 1.0).map_err(err)?, 0.1, 10, QiteMethod::Direct).map_err(err)?.condensate;
    let (w, s) = (rel(weak, free), rel(strong, -0.5));
    Ok(Outcome {
        pass: w <= 0.02 && s <= 0.05,
        summary: format!("g⁻²=10: {weak:.5} vs {free:.5} ({:.2}%); g⁻²=0.2: {strong:.5} vs −0.5 ({:.2}%)", 100.0 * w, 100.0 * s),
        details: vec![],
    })
}

fn structure() -> Check {
    let car = car_defect();
    let p_slice = PlaquetteParams::new(0.8, 1.2)
        .and_then(|p| p.with_cutoffs(Cutoffs { j_max: 4, n_max: 4, ..Cutoffs::default() }))
        .map_err(err)?;
    let charge = charge_commutator_defect(&p_slice, Backend::PolarSlice(1.3))
        .map_err(err)?
        .max(charge_commutator_defect(&p_slice, Backend::Fock).map_err(err)?);
    let covariance = gauge_covariance_defect(16, 0.3).map_err(err)?;
    let p_fock = PlaquetteParams::new(1.0, 1.5)
        .and_then(|p| p.with_cutoffs(Cutoffs { n_max: 8, ..Cutoffs::default() }))
        .map_err(err)?;
    let conservation = radius_conservation_defect(&p_fock).map_err(err)?;
    let modes = normal_mode_frequencies(0);
    let gap_numeric = modes.numeric_values[0];
    let gap_ok = (gap_numeric - 2.0).abs() < 1e-12 && (gap_formula(0) - 2.0).abs() < 1e-12;
    let counting = (0..=3).all(|n| {
        link_count(n) - constraint_count(n) == independent_count(n) && gauss_reduce(n).h2.nrows() == independent_count(n)
    });
    let pass = car == 0.0 && charge <= 1e-12 && covariance <= 1e-8 && conservation <= 1e-8 && gap_ok && counting;
    Ok(Outcome {
        pass,
        summary: "CAR, charge conservation, gauge covariance, q² conservation, N=0 gap, counting".into(),
        details: vec![
            format!("CAR defect {car:e}; ‖[H, Q]‖ = {charge:.2e}"),
            format!("gauge covariance {covariance:.2e}; ‖[H, q²]‖ on interior {conservation:.2e}"),
            format!("N=0 gap: numeric {gap_numeric}, formula {}; counting identity N=0..3: {counting}", gap_formula(0)),
        ],
    })
}

fn run_cli(dir: &Path, args: &[&str]) -> Result<(), String> {
    let status = Command::new(env!("CARGO_BIN_EXE_hlgt"))
        .args(args)
        .arg("--out")
        .arg(dir)
        .stdout(std::process::Stdio::null())
        .status()
        .map_err(err)?;
    if status.success() {
        Ok(())
    } else {
        Err(format!("hlgt {args:?} exited with {status}"))
    }
}

fn files_in(dir: &Path) -> Vec<PathBuf> {
    let mut out = Vec::new();
    let mut stack = vec![dir.to_path_buf()];
    while let Some(d) = stack.pop() {
        for entry in std::fs::read_dir(&d).into_iter().flatten().flatten() {
            let p = entry.path();
            if p.is_dir() {
                stack.push(p);
            } else {
                out.push(p.strip_prefix(dir).unwrap_or(&p).to_path_buf());
            }
        }
    }
    out.sort();
    out
}

fn determinism() -> Check {
    let root = std::env::temp_dir().join(format!("hlgt-acceptance-{}", std::process::id()));
    let commands: [&[&str]; 3] = [
        &["spectrum", "--g-scan", "0.5:10:5"],
        &["gates-verify", "--nmax", "8", "--dump-circuit"],
        &["variational", "--g-scan", "1:10:3", "--lambda", "2"],
    ];
    let mut details = Vec::new();
    let mut pass = true;
    for args in commands {
        let (a, b) = (root.join(format!("{}-a", args[0])), root.join(format!("{}-b", args[0])));
        run_cli(&a, args)?;
        run_cli(&b, args)?;
        let (fa, fb) = (files_in(&a), files_in(&b));
        let same = fa == fb
            && fa.iter().all(|f| std::fs::read(a.join(f)).ok() == std::fs::read(b.join(f)).ok());
        pass &= same;
        details.push(format!("{}: {} files, identical: {same}", args.join(" "), fa.len()));
    }
    let _ = std::fs::remove_dir_all(&root);
    Ok(Outcome { pass, summary: "repeated CLI runs produce byte-identical files".into(), details })
}

fn main() {
    let mut data = QiteData { runs: Vec::new() };
    let results = [
        report(1, "pure-gauge spectrum", pure_gauge_spectrum),
        report(2, "gate decompositions", gate_decompositions),
        report(3, "variational weak-coupling limits", variational_limits),
        report(4, "Rayleigh-Ritz bound", rayleigh_ritz),
        report(5, "perturbation theory", perturbation_theory),
        report(6, "penalty threshold", penalty_threshold_scan),
        report(7, "survival probability", survival),
        report(8, "QITE", || qite(&mut data)),
        report(9, "chiral condensate", || condensate(&data)),
        report(10, "structure properties", structure),
        report(11, "determinism", determinism),
    ];
    let passed = results.iter().filter(|&&p| p).count();
    println!("acceptance: {passed}/{} criteria pass", results.len());
}
