use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use linkswitch::degree_sequence::{ndl_stats, validate_ndl, NdlStats};
use linkswitch::io::{DegreeListFile, EdgeListFile};
use linkswitch::pipeline::sample_ndl_seeded;
use linkswitch::topology::average_edge_distance;
use linkswitch::{
    run_pipeline, DecompositionTopology, DegreeDistribution, DegreeList, DegreeSpec, Graph, MetricsReport,
    PipelineConfig, RichClubSpec,
};

use crate::{AnalyzeArgs, DistArgs, MetricArgs, NdlArgs, PipelineArgs, TopologyArgs};

/// A flag combination clap cannot reject on its own.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

fn provenance(command: &str) -> String {
    format!("# linkswitch {} command={command}", env!("CARGO_PKG_VERSION"))
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

pub(crate) fn read_graph(path: &Path) -> Result<EdgeListFile> {
    EdgeListFile::parse(&read_file(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

impl DistArgs {
    fn spec(&self) -> Result<(DegreeSpec, usize)> {
        let (Some(dist), Some(n)) = (&self.dist, self.n) else {
            return Err(usage("a degree distribution needs both --dist and --n"));
        };
        let distribution = DegreeDistribution::parse(dist, self.degmin)?;
        let mut spec = DegreeSpec::new(distribution, self.degmin, n);
        if let Some(cap) = self.cap {
            spec.deg_max_cap = cap;
        }
        Ok((spec, n))
    }
}

fn describe_spec(spec: &DegreeSpec, n: usize) -> String {
    format!("dist={} n={n} degmin={} cap={}", spec.distribution, spec.deg_min, spec.deg_max_cap)
}

const STATS_COLUMNS: &str = "min max mean std mode median M";

fn stats_row(s: &NdlStats) -> String {
    format!("{} {} {:.2} {:.2} {} {} {}", s.min, s.max, s.mean, s.stddev, s.mode, s.median, s.edge_count)
}

pub fn ndl(args: NdlArgs) -> Result<()> {
    let (spec, n) = args.dist.spec()?;
    let degrees = sample_ndl_seeded(&spec, n, args.seed)?;
    let stats = ndl_stats(&degrees).expect("n >= 2");
    let file = DegreeListFile {
        degrees,
        dist: spec.distribution.to_string(),
        seed: Some(args.seed),
        comments: vec![
            provenance("ndl"),
            format!("# {}", describe_spec(&spec, n)),
            format!("# {STATS_COLUMNS}"),
            format!("# {}", stats_row(&stats)),
        ],
    };
    match &args.out {
        Some(path) => {
            write_file(path, &file.to_text())?;
            println!("{STATS_COLUMNS}");
            println!("{}", stats_row(&stats));
        }
        None => print!("{}", file.to_text()),
    }
    Ok(())
}

/// The degree list, its `dist=` token, and a description of its source.
fn load_ndl(args: &PipelineArgs) -> Result<(DegreeList, String, String)> {
    match &args.ndl {
        Some(path) => {
            let file =
                DegreeListFile::parse(&read_file(path)?).with_context(|| format!("parsing {}", path.display()))?;
            let n = file.degrees.len();
            // only the structural conditions apply to a given list
            let loose = DegreeSpec {
                distribution: DegreeDistribution::Normal { mean: 1.0, stddev: 1.0 },
                deg_min: 1,
                deg_max_cap: n.saturating_sub(1),
            };
            validate_ndl(&file.degrees, n, &loose)?;
            Ok((file.degrees, file.dist, format!("ndl_file={}", path.display())))
        }
        None => {
            let (spec, n) = args.dist.spec()?;
            let degrees = sample_ndl_seeded(&spec, n, args.seed)?;
            Ok((degrees, spec.distribution.to_string(), describe_spec(&spec, n)))
        }
    }
}

fn metric_params(m: &MetricArgs) -> String {
    format!("q_depth={} monotonicity={:?}", m.q_depth, m.monotonicity).to_lowercase()
}

fn report_text(header: &[String], report: &MetricsReport) -> String {
    let mut out = String::new();
    for h in header {
        writeln!(out, "{h}").unwrap();
    }
    out.push_str(&report.to_text());
    out
}

fn write_report(path: &Path, header: &[String], report: &MetricsReport) -> Result<()> {
    write_file(path, &report_text(header, report))?;
    for (name, csv) in report.csv_tables() {
        write_file(&with_suffix(path, &format!(".{name}.csv")), &format!("{}\n{csv}", header.join("\n")))?;
    }
    Ok(())
}

pub fn pipeline(args: PipelineArgs) -> Result<()> {
    let (degrees, dist, source) = load_ndl(&args)?;
    let rich_club = RichClubSpec::parse(&args.rich_club)?;
    let cfg = PipelineConfig {
        ts: args.ts,
        pg: args.pg,
        randomize_attempts: args.attempts,
        rich_club,
        construction_retries: args.retries,
        metrics: args.metrics.options(),
        trace: args.trace,
        ..Default::default()
    };
    if !(0.0..=1.0).contains(&cfg.pg) {
        return Err(usage(format!("--pg must lie in [0, 1], got {}", cfg.pg)));
    }
    let out = run_pipeline(&degrees, &cfg, args.seed)?;

    let n = degrees.len();
    let attempts = cfg.randomize_attempts.unwrap_or_else(|| linkswitch::construction::default_randomize_attempts(n));
    let params = format!(
        "# {source} ts={} pg={} attempts={attempts} rich_club={} retries={} {}",
        cfg.ts,
        cfg.pg,
        rich_club.map_or("none".to_string(), |r| r.to_string()),
        cfg.construction_retries,
        metric_params(&args.metrics),
    );
    let header =
        |stage: &str| vec![provenance("pipeline"), format!("# seed={} stage={stage}", args.seed), params.clone()];

    let ndl_file = DegreeListFile { degrees: degrees.clone(), dist, seed: Some(args.seed), comments: header("ndl") };
    write_file(&with_suffix(&args.out_prefix, ".ndl"), &ndl_file.to_text())?;
    for (stage, g) in [("g0", &out.g0), ("gr", &out.gr), ("gm", &out.gm)] {
        let mut file = EdgeListFile::new(g.clone(), Some(args.seed));
        for line in header(stage) {
            file = file.with_comment(line);
        }
        write_file(&with_suffix(&args.out_prefix, &format!(".{stage}.edges")), &file.to_text())?;
    }
    write_report(&with_suffix(&args.out_prefix, ".gr.report"), &header("gr"), &out.report_r)?;
    write_report(&with_suffix(&args.out_prefix, ".gm.report"), &header("gm"), &out.report_m)?;
    if args.trace {
        let mut csv = header("trace").join("\n");
        csv.push_str("\niteration,removed,added,ped_before,ped_after\n");
        for ev in &out.trace {
            let pair = |es: &[linkswitch::Edge; 2]| format!("{}-{} {}-{}", es[0].u, es[0].v, es[1].u, es[1].v);
            writeln!(
                csv,
                "{},{},{},{},{}",
                ev.iteration,
                pair(&ev.removed),
                pair(&ev.added),
                ev.ped_before,
                ev.ped_after
            )
            .unwrap();
        }
        write_file(&with_suffix(&args.out_prefix, ".trace.csv"), &csv)?;
    }

    let fmt = |v: Option<f64>| v.map_or("undefined".to_string(), |x| format!("{x:.4}"));
    println!("n={} m={} seed={}", n, degrees.edge_count(), args.seed);
    println!(
        "randomize_applied={} modularize_accepted={}/{}",
        out.randomize_applied, out.modularization.accepted, out.modularization.iterations
    );
    println!("q_top gr={} gm={}", fmt(out.report_r.top_q()), fmt(out.report_m.top_q()));
    println!("aed gr={} gm={} ratio={}", fmt(out.report_r.aed), fmt(out.report_m.aed), fmt(out.aed_ratio()));
    println!("q2={}", out.q2().value());
    Ok(())
}

fn parse_topology(s: &str) -> Result<(usize, usize)> {
    let bad = || usage(format!("--topology expects <n>:<ts>, got {s:?}"));
    let (n, ts) = s.split_once(':').ok_or_else(bad)?;
    Ok((n.trim().parse().map_err(|_| bad())?, ts.trim().parse().map_err(|_| bad())?))
}

pub fn analyze(args: AnalyzeArgs) -> Result<()> {
    let file = read_graph(&args.graph)?;
    let g: &Graph = &file.graph;
    let (n, ts) = match &args.topology {
        Some(s) => parse_topology(s)?,
        None => (g.node_count(), 4),
    };
    if n != g.node_count() {
        return Err(usage(format!("topology has {n} nodes but the graph has {}", g.node_count())));
    }
    let t = DecompositionTopology::build(n, ts)?;
    let mut report = MetricsReport::compute(g, &t, &args.metrics.options())?;
    let mut header = vec![
        provenance("analyze"),
        format!("# graph={} topology={n}:{ts} {}", args.graph.display(), metric_params(&args.metrics)),
    ];
    if let Some(path) = &args.reference {
        let reference = read_graph(path)?;
        if reference.graph.node_count() != n {
            return Err(usage("reference graph has a different node count"));
        }
        report = report.with_reference(average_edge_distance(&reference.graph, &t)?);
        header.push(format!("# reference={}", path.display()));
    }
    match &args.report {
        Some(path) => write_report(path, &header, &report)?,
        None => print!("{}", report_text(&header, &report)),
    }
    Ok(())
}

pub fn topology(args: TopologyArgs) -> Result<()> {
    let t = DecompositionTopology::build(args.n, args.ts)?;
    print!("{}", t.dump());
    Ok(())
}
