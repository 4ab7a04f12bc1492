//! Multi-seed experiment suites. Every (condition, seed) job runs on the
//! rayon pool; rows come back in job order, so the files do not depend on
//! scheduling.

use std::fmt::Write as _;
use std::fs;

use anyhow::{Context, Result};
use linkswitch::pipeline::sample_ndl_seeded;
use linkswitch::{
    run_pipeline, DegreeDistribution, DegreeSpec, Error, MetricsReport, PipelineConfig, PipelineOutput, RichClubSpec,
};
use rayon::prelude::*;

use crate::{ExperimentArgs, Suite};

const N: usize = 200;
const DEG_MIN: usize = 3;
const Q_COUNT: usize = 7;

struct Condition {
    label: String,
    dist: DegreeDistribution,
    rich_club: Option<RichClubSpec>,
}

/// Values of one finished run, in column order.
type Row = Result<Vec<f64>, &'static str>;

fn failure_kind(e: &Error) -> &'static str {
    match e {
        Error::ConstructionFailed { .. } => "construction_failed",
        Error::DegreeBudget { .. } => "degree_budget",
        Error::SamplingFailure(_) | Error::NdlViolation { .. } => "sampling_failed",
        _ => "error",
    }
}

fn run_one(cond: &Condition, seed: u64) -> Result<PipelineOutput, Error> {
    let spec = DegreeSpec::new(cond.dist, DEG_MIN, N);
    let ndl = sample_ndl_seeded(&spec, N, seed)?;
    let cfg = PipelineConfig { rich_club: cond.rich_club, ..Default::default() };
    run_pipeline(&ndl, &cfg, seed)
}

fn table2_conditions() -> Vec<Condition> {
    let mut out = vec![Condition {
        label: "normal".into(),
        dist: DegreeDistribution::Normal { mean: 6.0, stddev: 1.1 },
        rich_club: None,
    }];
    for gamma in [4.0, 3.0, 2.6] {
        out.push(Condition {
            label: format!("pl{gamma:.1}"),
            dist: DegreeDistribution::PowerLaw { gamma, xmin: DEG_MIN },
            rich_club: None,
        });
    }
    out
}

fn table2_columns() -> Vec<String> {
    let mut cols = vec!["m".to_string()];
    for stage in ["m0", "m8"] {
        cols.extend((1..=Q_COUNT).map(|i| format!("{stage}_q{i}")));
        cols.push(format!("{stage}_aed"));
        cols.push(format!("{stage}_q2"));
    }
    cols
}

fn table2_row(out: &PipelineOutput) -> Vec<f64> {
    let mut row = vec![out.gm.edge_count() as f64];
    for report in [&out.report_r, &out.report_m] {
        let qs: Vec<f64> = report.q_levels.values.iter().map(|l| l.q).collect();
        row.extend((0..Q_COUNT).map(|i| qs.get(i).copied().unwrap_or(f64::NAN)));
        row.push(report.aed.unwrap_or(f64::NAN));
        row.push(report.q2.map_or(f64::NAN, |q| q.value()));
    }
    row
}

fn appendix_conditions() -> Vec<Condition> {
    let labels = ["none", "top10:0.75", "top10:0.25", "top10:0.00", "random10:0.75", "random10:0.25", "random10:0.00"];
    let mut out = Vec::new();
    for gamma in [2.6, 3.0] {
        for label in labels {
            let rich_club = RichClubSpec::parse(label).expect("fixed labels parse");
            out.push(Condition {
                label: format!("pl{gamma:.1}/{}", if label == "none" { "null" } else { label }),
                dist: DegreeDistribution::PowerLaw { gamma, xmin: DEG_MIN },
                rich_club,
            });
        }
    }
    out
}

fn appendix_columns() -> Vec<String> {
    ["r_a", "q2", "c", "h", "ampl1", "ampl2", "ampl3", "ampl4", "diameter", "apl", "median"].map(String::from).to_vec()
}

fn appendix_row(out: &PipelineOutput) -> Vec<f64> {
    let r: &MetricsReport = &out.report_m;
    let mut row =
        vec![r.assortativity_r.unwrap_or(f64::NAN), out.q2().value(), r.clustering.average, r.h.unwrap_or(f64::NAN)];
    row.extend(r.quartile_ampl.iter().map(|a| a.unwrap_or(f64::NAN)));
    row.extend([r.paths.diameter as f64, r.paths.apl, r.paths.median as f64]);
    row
}

fn mean_sd(values: &[f64]) -> (f64, Option<f64>) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let sd = (values.len() > 1).then(|| (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt());
    (mean, sd)
}

fn fmt_value(v: f64) -> String {
    if v.is_nan() {
        String::new()
    } else {
        v.to_string()
    }
}

pub fn run(args: ExperimentArgs) -> Result<()> {
    let (name, conditions, columns, extract): (&str, _, _, fn(&PipelineOutput) -> Vec<f64>) = match args.suite {
        Suite::Table2 => ("table2", table2_conditions(), table2_columns(), table2_row),
        Suite::AppendixA => ("appendixA", appendix_conditions(), appendix_columns(), appendix_row),
    };
    let seeds: Vec<u64> = (args.first_seed..args.first_seed + args.seeds).collect();
    let jobs: Vec<(usize, u64)> = (0..conditions.len()).flat_map(|c| seeds.iter().map(move |&s| (c, s))).collect();
    let rows: Vec<Row> = jobs
        .par_iter()
        .map(|&(c, seed)| run_one(&conditions[c], seed).map(|o| extract(&o)).map_err(|e| failure_kind(&e)))
        .collect();

    fs::create_dir_all(&args.out).with_context(|| format!("creating {}", args.out.display()))?;
    let header = format!(
        "# linkswitch {} command=experiment suite={name} seeds={}..{} n={N} degmin={DEG_MIN} ts=4 pg=0.8\n",
        env!("CARGO_PKG_VERSION"),
        args.first_seed,
        args.first_seed + args.seeds
    );

    let mut runs = header.clone();
    writeln!(runs, "condition,seed,status,{}", columns.join(",")).unwrap();
    for (&(c, seed), row) in jobs.iter().zip(&rows) {
        let (status, values) = match row {
            Ok(v) => ("ok", v.iter().map(|&x| fmt_value(x)).collect::<Vec<_>>()),
            Err(kind) => (*kind, vec![String::new(); columns.len()]),
        };
        writeln!(runs, "{},{seed},{status},{}", conditions[c].label, values.join(",")).unwrap();
    }

    let mut summary = header;
    writeln!(summary, "condition,stat,runs,{}", columns.join(",")).unwrap();
    for (c, cond) in conditions.iter().enumerate() {
        let ok: Vec<&Vec<f64>> =
            jobs.iter().zip(&rows).filter(|((jc, _), _)| *jc == c).filter_map(|(_, r)| r.as_ref().ok()).collect();
        if ok.is_empty() {
            writeln!(summary, "{},mean,0,{}", cond.label, ",".repeat(columns.len() - 1)).unwrap();
            continue;
        }
        let stats: Vec<(f64, Option<f64>)> = (0..columns.len())
            .map(|i| {
                let vals: Vec<f64> = ok.iter().map(|r| r[i]).filter(|v| !v.is_nan()).collect();
                if vals.is_empty() {
                    (f64::NAN, None)
                } else {
                    mean_sd(&vals)
                }
            })
            .collect();
        let means: Vec<String> = stats.iter().map(|s| fmt_value(s.0)).collect();
        writeln!(summary, "{},mean,{},{}", cond.label, ok.len(), means.join(",")).unwrap();
        if ok.len() > 1 {
            let sds: Vec<String> = stats.iter().map(|s| s.1.map_or(String::new(), fmt_value)).collect();
            writeln!(summary, "{},stddev,{},{}", cond.label, ok.len(), sds.join(",")).unwrap();
        }
    }

    let runs_path = args.out.join(format!("{name}_runs.csv"));
    let summary_path = args.out.join(format!("{name}_summary.csv"));
    fs::write(&runs_path, runs).with_context(|| format!("writing {}", runs_path.display()))?;
    fs::write(&summary_path, summary).with_context(|| format!("writing {}", summary_path.display()))?;
    let failed = rows.iter().filter(|r| r.is_err()).count();
    println!("{} runs, {failed} failed", rows.len());
    println!("wrote {} and {}", runs_path.display(), summary_path.display());
    Ok(())
}
