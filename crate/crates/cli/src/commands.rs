use std::path::{Path, PathBuf};

use serde::Serialize;
use ulam_lab::convex::{theorem21_equivalence_test, EquivalenceConfig, EquivalenceReport};
use ulam_lab::group::{GroupDescriptor, GroupHandle, LatticePoint, Word};
use ulam_lab::operator::Operator;
use ulam_lab::paradox::{min_invariance_defect, standard_f2_decomposition, tarski_sweep, Classification, DecompositionCheck, DefectSweep, InvarianceReport};
use ulam_lab::rep_maps::{pd_defect, perturb_representation, proximity, regular_representation, AnyOperatorMap};
use ulam_lab::stability::{
    amenable_correction, condition5_sweep, explore_condition4, folner_convergence_experiment, quadratic_phase_map,
    Condition4Exploration, FolnerRow, SweepConfig,
};

use crate::config::{ExperimentConfig, Format};
use crate::report::{Check, Report, Table};
use crate::CliError;

/// Rendered report plus the failed checks.
pub struct Outcome {
    pub bytes: Vec<u8>,
    pub failures: Vec<String>,
    pub out: Option<PathBuf>,
}

fn finish<R: Serialize>(report: Report<R>) -> Result<Outcome, CliError> {
    let format = report.config.format.unwrap_or(Format::Json);
    let bytes = report.render(format)?;
    let failures = report
        .checks
        .iter()
        .filter(|c| !c.holds)
        .map(|c| format!("{} = {} violates {} {}", c.name, c.value, c.relation, c.bound))
        .collect();
    Ok(Outcome { bytes, failures, out: report.config.out.clone() })
}

fn metric_table(rows: &[(&str, String)]) -> Table {
    Table { header: vec!["quantity", "value"], rows: rows.iter().map(|(k, v)| vec![k.to_string(), v.clone()]).collect() }
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

#[derive(Serialize)]
struct StabilityResults {
    group_order: usize,
    dim: usize,
    eps_target: f64,
    eps_measured: f64,
    proximity: f64,
    proximity_over_eps: f64,
    gram_min_eig: f64,
    condition5_trials: usize,
    condition5_witnesses: usize,
    condition5_witness_rate: f64,
    condition5_failures: Vec<usize>,
}

pub fn stability_demo(mut cfg: ExperimentConfig) -> Result<Outcome, CliError> {
    let seed = cfg.require_seed()?;
    let desc = cfg.group.get_or_insert(GroupDescriptor::Cyclic { n: 6 }).clone();
    let GroupHandle::Finite(g) = desc.build()? else {
        return Err(CliError::Usage("stability-demo needs a finite group".into()));
    };
    let order = g.order();
    let dim = *cfg.dim.get_or_insert(order);
    if dim != order {
        return Err(CliError::Usage(format!("dim must equal the group order {order} (regular representation), got {dim}")));
    }
    let eps = *cfg.eps.get_or_insert(0.05);
    let trials = *cfg.trials.get_or_insert(200);

    let pi = regular_representation::<f64>(&g)?;
    let phi = perturb_representation(&pi, eps, seed)?;
    let psi = amenable_correction(&phi.map)?;
    let all: Vec<usize> = (0..order).collect();
    let gram = pd_defect(&psi, &all, cfg.tolerances.psd)?;
    let prox = proximity(&phi.map, &psi)?;
    let ratio = if phi.defect > 0.0 { prox / phi.defect } else { 0.0 };
    let sweep = condition5_sweep(&phi.map, &psi, &all, &all, SweepConfig { trials, ..SweepConfig::default() }, seed)?;

    let results = StabilityResults {
        group_order: order,
        dim,
        eps_target: eps,
        eps_measured: phi.defect,
        proximity: prox,
        proximity_over_eps: ratio,
        gram_min_eig: gram.min_eigenvalue,
        condition5_trials: sweep.trials,
        condition5_witnesses: sweep.witnesses,
        condition5_witness_rate: sweep.witness_rate,
        condition5_failures: sweep.failures,
    };
    let checks = vec![
        Check::at_least("gram_min_eig", results.gram_min_eig, -cfg.tolerances.psd),
        Check::at_most("proximity_over_eps", ratio, 2.0),
        Check::at_least("condition5_witness_rate", results.condition5_witness_rate, 1.0),
    ];
    let table = metric_table(&[
        ("eps_measured", results.eps_measured.to_string()),
        ("proximity", results.proximity.to_string()),
        ("proximity_over_eps", results.proximity_over_eps.to_string()),
        ("gram_min_eig", results.gram_min_eig.to_string()),
        ("condition5_witness_rate", results.condition5_witness_rate.to_string()),
    ]);
    finish(Report { subcommand: "stability-demo", config: cfg, results, checks, table })
}

#[derive(Serialize)]
struct LabelledWeight {
    element: serde_json::Value,
    weight: f64,
}

#[derive(Serialize)]
struct HullResults {
    map: String,
    target: String,
    verdict: &'static str,
    distance: f64,
    weights: Vec<LabelledWeight>,
    report: EquivalenceReport<f64>,
}

pub fn hull_check(mut cfg: ExperimentConfig, map: &Path, target: &Path) -> Result<Outcome, CliError> {
    let seed = cfg.require_seed()?;
    let read = |p: &Path| {
        std::fs::read_to_string(p).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", p.display())))
    };
    let phi = AnyOperatorMap::<f64>::from_json(&read(map)?)
        .map_err(|e| CliError::Usage(format!("invalid map {}: {e}", map.display())))?;
    let t: Operator<f64> = serde_json::from_str(&read(target)?)
        .map_err(|e| CliError::Usage(format!("invalid target {}: {e}", target.display())))?;
    if t.dim() != phi.dim() {
        return Err(CliError::Usage(format!("target has dimension {} but the map has {}", t.dim(), phi.dim())));
    }
    let eq = EquivalenceConfig {
        trials: *cfg.trials.get_or_insert(50),
        n_max: *cfg.n_max.get_or_insert(3),
        tol: cfg.tolerances.membership,
        seed,
    };
    let report = theorem21_equivalence_test(phi.values(), &t, &eq)?;
    let weights: Vec<LabelledWeight> = phi
        .labels()
        .into_iter()
        .zip(report.hull.dense_weights())
        .map(|(element, &weight)| LabelledWeight { element, weight })
        .collect();
    let checks = vec![Check::at_least("verdicts_agree", if report.consistent { 1.0 } else { 0.0 }, 1.0)];
    let mut rows = vec![
        vec!["verdict".into(), String::new(), if report.member { "member" } else { "not member" }.into()],
        vec!["distance".into(), String::new(), report.hull.distance.to_string()],
    ];
    rows.extend(weights.iter().map(|w| vec!["weight".into(), w.element.to_string(), w.weight.to_string()]));
    if let Some(fam) = &report.refuting_family {
        let min = fam.margins.iter().copied().fold(f64::INFINITY, f64::min);
        rows.push(vec!["min_refuting_margin".into(), String::new(), min.to_string()]);
    }
    let results = HullResults {
        map: map.display().to_string(),
        target: target.display().to_string(),
        verdict: if report.member { "member" } else { "not member" },
        distance: report.hull.distance,
        weights,
        report,
    };
    let table = Table { header: vec!["quantity", "element", "value"], rows };
    finish(Report { subcommand: "hull-check", config: cfg, results, checks, table })
}

#[derive(Serialize)]
struct ParadoxRow {
    group: &'static str,
    radius: usize,
    ball_size: usize,
    lp_value: f64,
    certified_value: f64,
    /// `2 / (2r + 1)` for the lattice; absent for the free group.
    box_bound: Option<f64>,
    pivots: usize,
}

#[derive(Serialize)]
struct ParadoxResults {
    rows: Vec<ParadoxRow>,
    lp_measures: Vec<InvarianceReport>,
    defect_sweep: DefectSweep,
    decomposition: String,
    decomposition_check: DecompositionCheck,
    #[serde(skip_serializing_if = "Option::is_none")]
    exploration: Option<Condition4Exploration>,
}

pub fn paradox_demo(mut cfg: ExperimentConfig) -> Result<Outcome, CliError> {
    let seed = cfg.require_seed()?;
    let radii = cfg.radii.get_or_insert_with(|| vec![1, 2, 3, 4]).clone();
    if radii.is_empty() {
        return Err(CliError::Usage("radii must be nonempty".into()));
    }
    let samples = *cfg.samples.get_or_insert(10_000);
    let sweep_radius = *cfg.sweep_radius.get_or_insert(6);
    let check_radius = *cfg.check_radius.get_or_insert(8);
    let tol = cfg.tolerances;

    let f2 = GroupDescriptor::Free { rank: 2 }.build()?;
    let z2 = GroupDescriptor::Lattice { dim: 2 }.build()?;
    let mut rows = Vec::new();
    let mut lp_measures = Vec::new();
    let mut checks = Vec::new();
    for (name, g) in [("F2", &f2), ("Z2", &z2)] {
        for &r in &radii {
            let rep = min_invariance_defect(g, r)?;
            let bound = (name == "Z2").then(|| 2.0 / (2 * r + 1) as f64);
            match bound {
                Some(b) => checks.push(Check::at_most(format!("Z2 r={r} lp_value"), rep.value, b + tol.bound)),
                None => checks.push(Check::at_least(format!("F2 r={r} lp_value"), rep.value, 1.0 - tol.defect)),
            }
            rows.push(ParadoxRow {
                group: name,
                radius: r,
                ball_size: rep.ball_size,
                lp_value: rep.value,
                certified_value: rep.certified_value,
                box_bound: bound,
                pivots: rep.pivots,
            });
            lp_measures.push(rep);
        }
    }
    let dec = standard_f2_decomposition();
    let sweep = tarski_sweep(&dec, sweep_radius, samples, seed)?;
    if samples > 0 {
        checks.push(Check::at_least("tarski_sweep_min", sweep.min_defect, 1.0 - tol.defect));
    }
    let dcheck = dec.check_on_ball(check_radius)?;
    checks.push(Check::at_least("decomposition_axioms_hold", if dcheck.holds() { 1.0 } else { 0.0 }, 1.0));
    let exploration = match cfg.explore {
        Some(e) => Some(explore_condition4(e.radius, e.dim, e.noise, e.trials, seed)?),
        None => None,
    };

    let table = Table {
        header: vec!["group", "radius", "ball_size", "lp_value", "certified_value", "box_bound", "sweep_min"],
        rows: rows
            .iter()
            .map(|r| {
                vec![
                    r.group.to_string(),
                    r.radius.to_string(),
                    r.ball_size.to_string(),
                    r.lp_value.to_string(),
                    r.certified_value.to_string(),
                    opt(r.box_bound),
                    if r.group == "F2" && samples > 0 { sweep.min_defect.to_string() } else { String::new() },
                ]
            })
            .collect(),
    };
    let results = ParadoxResults {
        rows,
        lp_measures,
        defect_sweep: sweep,
        decomposition: dec.summary(),
        decomposition_check: dcheck,
        exploration,
    };
    finish(Report { subcommand: "paradox-demo", config: cfg, results, checks, table })
}

#[derive(Serialize)]
struct FolnerResults {
    alpha: f64,
    map_radius: usize,
    output_domain: Vec<LatticePoint>,
    rows: Vec<FolnerRow<f64>>,
    /// `increment(4) / increment(16)` when both radii are present.
    increment_ratio: Option<f64>,
    final_values: Vec<Operator<f64>>,
    gram_asymmetry: f64,
    gram_min_eig: f64,
}

pub fn folner_demo(mut cfg: ExperimentConfig) -> Result<Outcome, CliError> {
    cfg.require_seed()?;
    let alpha = *cfg.alpha.get_or_insert(1.0);
    if !alpha.is_finite() {
        return Err(CliError::Usage("alpha must be finite".into()));
    }
    let radii = cfg.radii.get_or_insert_with(|| vec![4, 8, 16, 32, 64, 128]).clone();
    let max_r = *radii.iter().max().ok_or_else(|| CliError::Usage("radii must be nonempty".into()))?;
    let f0: Vec<LatticePoint> = (-2..=2).map(LatticePoint::from).collect();
    // room for the output domain and its differences
    let map_radius = max_r + 12;
    let phi = quadratic_phase_map::<f64>(alpha, map_radius)?;
    let rep = folner_convergence_experiment(&phi, &radii, &f0, &f0, cfg.tolerances.psd)?;
    let inc = |r: usize| rep.rows.iter().find(|row| row.radius == r).and_then(|row| row.increment);
    let ratio = match (inc(4), inc(16)) {
        (Some(a), Some(b)) => Some(if b > 0.0 { a / b } else { f64::INFINITY }),
        _ => None,
    };
    let checks = ratio.map(|q| Check::at_least("increment_ratio_4_16", q, 2.0)).into_iter().collect();
    let table = Table {
        header: vec!["radius", "shift_defect", "step", "increment", "translation_bound"],
        rows: rep
            .rows
            .iter()
            .map(|r| {
                vec![
                    r.radius.to_string(),
                    r.shift_defect.to_string(),
                    opt(r.step),
                    opt(r.increment),
                    r.translation_bound.to_string(),
                ]
            })
            .collect(),
    };
    let results = FolnerResults {
        alpha,
        map_radius,
        output_domain: rep.output_domain,
        rows: rep.rows,
        increment_ratio: ratio,
        final_values: rep.final_values,
        gram_asymmetry: rep.gram_asymmetry,
        gram_min_eig: rep.gram_min_eig,
    };
    finish(Report { subcommand: "folner-demo", config: cfg, results, checks, table })
}

#[derive(Serialize)]
struct ClassifyResults {
    decomposition: String,
    classification: Classification,
}

pub fn classify_word(cfg: ExperimentConfig, word: &str) -> Result<Outcome, CliError> {
    let w: Word = word.parse().map_err(|e| CliError::Usage(format!("{e}")))?;
    let dec = standard_f2_decomposition();
    let classification = dec.classify(&w)?;
    let table = Table {
        header: vec!["word", "pieces", "translates"],
        rows: vec![vec![
            classification.word.to_string(),
            classification.pieces.join(" "),
            classification.translates.join(" "),
        ]],
    };
    let results = ClassifyResults { decomposition: dec.summary(), classification };
    finish(Report { subcommand: "classify-word", config: cfg, results, checks: Vec::new(), table })
}
