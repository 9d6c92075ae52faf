//! One function per subcommand: resolve settings, compute, tabulate.

use std::path::PathBuf;

use hybrid_lgt::compactness::{ansatz_circuit, penalty_threshold, AnsatzParams, PenaltyScanCriteria, PenaltyScanGrid};
use hybrid_lgt::gates::{standard_checks, CaseKind};
use hybrid_lgt::model::lattice::{constraint_count, independent_count, link_count};
use hybrid_lgt::model::{
    gap_formula, gauss_reduce, normal_mode_frequencies, pure_gauge_ed, pure_gauge_energy, Backend, Compactness, Cutoffs,
    PlaquetteParams,
};
use hybrid_lgt::numerics::RadialGridSpec;
use hybrid_lgt::par;
use hybrid_lgt::solvers::{
    ground_summary, qite_ground, survival_amplitude, variational_point, Propagation, QiteMethod, TrotterPlan,
};
use serde_json::{json, Map, Value};

use crate::config::Settings;
use crate::error::CliError;
use crate::output::{Cell, Outputs, Table};

use Cell::{Count, Flag, Maybe, Real, Text};

fn cutoffs(entries: &[(&str, Value)]) -> Map<String, Value> {
    entries.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn radial_entries(spec: &RadialGridSpec) -> [(&'static str, Value); 3] {
    [
        ("radial_panels", json!(spec.panels)),
        ("radial_order", json!(spec.order)),
        ("radial_max_refinements", json!(spec.max_refinements)),
    ]
}

fn collect<T>(results: Vec<hybrid_lgt::Result<T>>) -> Result<Vec<T>, CliError> {
    Ok(par::collect_results(results)?)
}

/// Pure-gauge levels from the Mathieu formula against angular-basis ED.
pub fn spectrum(s: &mut Settings) -> Result<Outputs, CliError> {
    let points = s.g_inv_sq("0.5:10:20")?;
    let levels = s.usize_or("levels", 4)?;
    let j_max = s.usize_or("jmax", 32)?;
    if levels == 0 {
        return Err(CliError::Config("--levels must be at least 1".into()));
    }
    let rows = collect(par::map(&points, |&x| -> hybrid_lgt::Result<Vec<Vec<Cell>>> {
        let g = x.powf(-0.5);
        let ed = pure_gauge_ed(g, j_max, levels)?;
        let formula = (0..levels).map(|n| pure_gauge_energy(n, g)).collect::<hybrid_lgt::Result<Vec<_>>>()?;
        Ok((0..levels)
            .map(|n| {
                vec![Real(x), Count(n), Real(formula[n]), Real(ed[n]), Real(ed[n] - formula[n]), Real(formula[n] - formula[0])]
            })
            .collect())
    }))?;
    let mut table = Table::new("spectrum", &["g_inv_sq", "n", "e_formula", "e_ed", "diff", "gap_formula"]);
    rows.into_iter().flatten().for_each(|r| table.push(r));
    Ok(Outputs { tables: vec![table], cutoffs: cutoffs(&[("jmax", json!(j_max))]), attachments: vec![] })
}

/// Minimized ansatz energies, gap, Wilson loop and constraint, with the ED ground energy.
pub fn variational(s: &mut Settings) -> Result<Outputs, CliError> {
    let points = s.g_inv_sq("0.5:10:20")?;
    let lambda = s.positive_f64_or("lambda", 1.0)?;
    let j_max = s.usize_or("jmax", 32)?;
    let spec = RadialGridSpec::default();
    let rows = collect(par::map(&points, |&x| -> hybrid_lgt::Result<(Vec<Cell>, f64)> {
        let p = variational_point(x, lambda, &spec)?;
        let ed = pure_gauge_ed(x.powf(-0.5), j_max, 1)?[0];
        let row = vec![
            Real(x),
            Real(lambda),
            Real(p.alpha),
            Real(p.e0),
            Real(p.beta),
            Real(p.e1),
            Real(p.gap),
            Real(p.wilson),
            Real(p.constraint),
            Real(ed),
            Real(p.e0 - ed),
        ];
        Ok((row, p.alpha))
    }))?;
    let mut table = Table::new(
        "variational",
        &["g_inv_sq", "lambda", "alpha", "e0", "beta", "e1", "gap", "wilson", "constraint", "e0_ed", "e0_minus_ed"],
    );
    let mut attachments = Vec::new();
    for ((row, alpha), &x) in rows.into_iter().zip(&points) {
        if s.flag("dump-circuit") {
            let c = ansatz_circuit(&AnsatzParams::new(alpha, lambda, x.powf(-0.5))?, 0.0)?;
            attachments.push((PathBuf::from(format!("circuits/ansatz_g_inv_sq_{x}.txt")), c.to_string()));
        }
        table.push(row);
    }
    let mut cut = vec![("jmax", json!(j_max))];
    cut.extend(radial_entries(&spec));
    Ok(Outputs { tables: vec![table], cutoffs: cutoffs(&cut), attachments })
}

/// Smallest penalty strength confining the radial coordinate, per coupling.
pub fn penalty(s: &mut Settings) -> Result<Outputs, CliError> {
    let points = s.g_inv_sq("0.5:10:20")?;
    let m0 = s.f64_or("m0", 1.5)?;
    let mu_max = s.f64_or("mu", 3.0)?;
    let j_max = s.usize_or("jmax", Cutoffs::default().j_max)?;
    if mu_max < 0.0 {
        return Err(CliError::Config("--mu must be non-negative".into()));
    }
    let grid = PenaltyScanGrid {
        mu: (0..=(mu_max * 10.0).round() as usize).map(|k| k as f64 / 10.0).collect(),
        j_max,
        ..PenaltyScanGrid::default()
    };
    let criteria = PenaltyScanCriteria::default();
    let result = penalty_threshold(&points, m0, &criteria, &grid)?;
    let mut table =
        Table::new("penalty", &["g_inv_sq", "m0", "mu_star", "r_star", "e0_at_mu_star", "e0_physical", "monotone"]);
    for p in result {
        table.push(vec![
            Real(p.g_inv_sq),
            Real(m0),
            Maybe(p.mu_star),
            Maybe(p.r_star),
            Maybe(p.e0_at_mu_star),
            Real(p.e0_physical),
            Flag(p.monotone),
        ]);
    }
    let cut = [
        ("jmax", json!(j_max)),
        ("mu_points", json!(grid.mu.len())),
        ("radius_points", json!(grid.radii.len())),
        ("energy_tol", json!(criteria.energy_tol)),
        ("radius_tol", json!(criteria.radius_tol)),
    ];
    Ok(Outputs { tables: vec![table], cutoffs: cutoffs(&cut), attachments: vec![] })
}

fn method_a_params(x: f64, m0: f64, lambda: f64, j_max: usize) -> hybrid_lgt::Result<PlaquetteParams> {
    PlaquetteParams::from_inverse_g2(x, m0)?
        .with_compactness(Compactness::MethodA { lambda })?
        .with_cutoffs(Cutoffs { j_max, ..Cutoffs::default() })
}

/// Vacuum survival probability, Trotterized and exact.
pub fn evolve(s: &mut Settings) -> Result<Outputs, CliError> {
    let points = s.g_inv_sq("10:10:1")?;
    let m0 = s.f64_or("m0", 1.5)?;
    let lambda = s.positive_f64_or("lambda", 2.0)?;
    let j_max = s.usize_or("jmax", Cutoffs::default().j_max)?;
    let dt = s.positive_f64_or("dt", 0.05)?;
    let t_max = s.positive_f64_or("tmax", 8.0)?;
    let t_step = s.positive_f64_or("tstep", 0.25)?;
    let count = (t_max / t_step).round() as usize;
    let times: Vec<f64> = (0..=count).map(|k| k as f64 * t_step).collect();
    let plan = TrotterPlan::new(dt)?;
    let mut table = Table::new(
        "evolve",
        &["g_inv_sq", "lambda", "t", "p_trotter", "re_trotter", "im_trotter", "p_exact", "re_exact", "im_exact"],
    );
    let mut slices = Vec::new();
    for &x in &points {
        let params = method_a_params(x, m0, lambda, j_max)?;
        let trotter = survival_amplitude(&params, &times, &Propagation::Trotter(plan.clone()))?;
        let exact = survival_amplitude(&params, &times, &Propagation::Exact)?;
        slices.push(json!({"g_inv_sq": x, "trotter_slices": trotter.slices, "exact_slices": exact.slices}));
        for k in 0..times.len() {
            table.push(vec![
                Real(x),
                Real(lambda),
                Real(times[k]),
                Real(trotter.probabilities[k]),
                Real(trotter.amplitudes[k].0),
                Real(trotter.amplitudes[k].1),
                Real(exact.probabilities[k]),
                Real(exact.amplitudes[k].0),
                Real(exact.amplitudes[k].1),
            ]);
        }
    }
    let cut = [("jmax", json!(j_max)), ("radial_slices", Value::Array(slices))];
    Ok(Outputs { tables: vec![table], cutoffs: cutoffs(&cut), attachments: vec![] })
}

fn qite_method(text: &str) -> Result<QiteMethod, CliError> {
    match text {
        "direct" => Ok(QiteMethod::Direct),
        "a" => Ok(QiteMethod::A),
        "b" => Ok(QiteMethod::b()),
        other => Err(CliError::Config(format!("--method must be direct, a or b, got `{other}`"))),
    }
}

struct QiteSetup {
    points: Vec<f64>,
    m0: f64,
    lambda: f64,
    j_max: usize,
    dtau: f64,
    steps: usize,
    method: QiteMethod,
}

fn qite_setup(s: &mut Settings) -> Result<QiteSetup, CliError> {
    let setup = QiteSetup {
        points: s.g_inv_sq("1:10:4")?,
        m0: s.f64_or("m0", 1.5)?,
        lambda: s.positive_f64_or("lambda", 1.0)?,
        j_max: s.usize_or("jmax", Cutoffs::default().j_max)?,
        dtau: s.positive_f64_or("dtau", 0.1)?,
        steps: s.usize_or("steps", 10)?,
        method: qite_method(&s.text_or("method", "direct"))?,
    };
    if setup.steps == 0 {
        return Err(CliError::Config("--steps must be at least 1".into()));
    }
    Ok(setup)
}

/// QITE trajectories and final energies against ED at unit radius.
pub fn qite(s: &mut Settings) -> Result<Outputs, CliError> {
    let q = qite_setup(s)?;
    let mut trajectory =
        Table::new("qite_trajectory", &["g_inv_sq", "step", "tau", "energy", "expectation", "norm", "success"]);
    let mut summary = Table::new(
        "qite_summary",
        &["g_inv_sq", "method", "final_energy", "final_expectation", "e_ed", "rel_diff", "condensate", "slices"],
    );
    for &x in &q.points {
        let params = method_a_params(x, q.m0, q.lambda, q.j_max)?;
        let run = qite_ground(&params, q.dtau, q.steps, q.method)?;
        let ed = ground_summary(&params.with_compactness(Compactness::None)?, Backend::PolarSlice(1.0))?;
        for r in &run.trajectory {
            trajectory.push(vec![
                Real(x),
                Count(r.step),
                Real(r.step as f64 * q.dtau),
                Real(r.energy),
                Real(r.expectation),
                Real(r.norm),
                Real(r.success),
            ]);
        }
        let last = run.trajectory[q.steps];
        summary.push(vec![
            Real(x),
            Text(q.method.name().to_owned()),
            Real(run.final_energy),
            Real(last.expectation),
            Real(ed.energy),
            Real((run.final_energy - ed.energy) / ed.energy.abs()),
            Real(run.condensate),
            Count(run.slices),
        ]);
    }
    let cut = [("jmax", json!(q.j_max)), ("ancilla_nmax", json!(40))];
    Ok(Outputs { tables: vec![trajectory, summary], cutoffs: cutoffs(&cut), attachments: vec![] })
}

/// `−(1/4)(1 + m0/√(1+m0²))`, the free-fermion condensate.
pub fn free_fermion_condensate(m0: f64) -> f64 {
    -0.25 * (1.0 + m0 / (1.0 + m0 * m0).sqrt())
}

/// Chiral condensate on the QITE state against ED and the free-fermion value.
pub fn condensate(s: &mut Settings) -> Result<Outputs, CliError> {
    let q = qite_setup(s)?;
    let mut table =
        Table::new("condensate", &["g_inv_sq", "m0", "qite", "ed", "free_fermion", "strong_coupling_limit"]);
    for &x in &q.points {
        let params = method_a_params(x, q.m0, q.lambda, q.j_max)?;
        let run = qite_ground(&params, q.dtau, q.steps, q.method)?;
        let ed = ground_summary(&params.with_compactness(Compactness::None)?, Backend::PolarSlice(1.0))?;
        table.push(vec![Real(x), Real(q.m0), Real(run.condensate), Real(ed.chiral_condensate), Real(free_fermion_condensate(q.m0)), Real(-0.5)]);
    }
    let cut = [("jmax", json!(q.j_max))];
    Ok(Outputs { tables: vec![table], cutoffs: cutoffs(&cut), attachments: vec![] })
}

/// Interior residuals of every standard decomposition, plus a negative control.
pub fn gates_verify(s: &mut Settings) -> Result<Outputs, CliError> {
    let n_max = s.optional_usize("nmax")?;
    let interior = s.f64_or("interior", hybrid_lgt::gates::DEFAULT_INTERIOR)?;
    let checks = standard_checks(n_max, interior)?;
    let mut table =
        Table::new("gates_verify", &["case", "angle", "n_max", "interior", "residual", "tolerance", "negative_control", "passed"]);
    let mut attachments = Vec::new();
    for c in &checks {
        table.push(vec![
            Text(c.case.name().to_owned()),
            Real(c.angle),
            Count(c.n_max),
            Real(c.interior_fraction),
            Real(c.residual),
            Real(c.tolerance),
            Flag(c.case.is_negative_control()),
            Flag(c.passed()),
        ]);
        if s.flag("dump-circuit") {
            let text = c.case.circuit(c.angle).to_string();
            attachments.push((PathBuf::from(format!("circuits/{}.txt", c.case.name())), text));
        }
    }
    let per_case: Map<String, Value> = CaseKind::ALL
        .iter()
        .zip(&checks)
        .map(|(k, c)| (format!("nmax_{}", k.name()), json!(c.n_max)))
        .collect();
    Ok(Outputs { tables: vec![table], cutoffs: per_case, attachments })
}

/// Normal-mode frequencies of the gauge-fixed lattice for `N = 0..=size`.
pub fn lattice_modes(s: &mut Settings) -> Result<Outputs, CliError> {
    let size = s.usize_or("size", 3)?;
    let sizes: Vec<usize> = (0..=size).collect();
    let mut modes = Table::new("lattice_modes", &["N", "k", "formula", "numeric", "link"]);
    let mut summary = Table::new(
        "lattice_summary",
        &["N", "links", "constraints", "independent", "gap_formula", "lowest_numeric", "h2_dim"],
    );
    let results = par::map(&sizes, |&n| (normal_mode_frequencies(n), gauss_reduce(n).h2.nrows()));
    for (n, (m, h2_dim)) in sizes.iter().zip(results) {
        let len = m.formula_values.len().max(m.numeric_values.len()).max(m.link_values.len());
        for k in 0..len {
            modes.push(vec![
                Count(*n),
                Count(k),
                Maybe(m.formula_values.get(k).copied()),
                Maybe(m.numeric_values.get(k).copied()),
                Maybe(m.link_values.get(k).copied()),
            ]);
        }
        summary.push(vec![
            Count(*n),
            Count(link_count(*n)),
            Count(constraint_count(*n)),
            Count(independent_count(*n)),
            Real(gap_formula(*n)),
            Maybe(m.numeric_values.first().copied()),
            Count(h2_dim),
        ]);
    }
    Ok(Outputs { tables: vec![modes, summary], cutoffs: cutoffs(&[("size", json!(size))]), attachments: vec![] })
}
