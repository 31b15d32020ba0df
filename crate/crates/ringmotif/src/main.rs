use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ringmotif::config::PipelineConfig;
use ringmotif::io::{self, InputFormat};
use ringmotif::pipeline::{self, to_json};
use ringmotif::synth::{self, Plant, SynthSpec};
use ringmotif::{Error, Result};

#[derive(Parser)]
#[command(name = "ringmotif", version, about = "Find noisy cliques, bicliques and stars in a graph and draw them as Ring Motifs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Reorder, decompose, lay out and render a graph.
    Run(RunArgs),
    /// Write a random graph with planted patterns.
    Generate(GenerateArgs),
    /// Lay out and render a stored decomposition.
    Render(RenderArgs),
}

/// Options shared by `run` and `render`. Unset flags fall back to the
/// config file, then to defaults.
#[derive(Args)]
struct Common {
    /// `key = value` file using the long flag names as keys.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Graph file.
    #[arg(long)]
    input: Option<String>,
    /// edges | matrix
    #[arg(long)]
    format: Option<String>,
    /// Output directory, created if missing.
    #[arg(long)]
    out: Option<String>,
    /// Comma-separated: matrix,motif,bar,json,composite,tsplib
    #[arg(long)]
    emit: Option<String>,
    /// Rotational force weight.
    #[arg(long = "c-o")]
    c_o: Option<String>,
    /// Link attraction weight.
    #[arg(long = "c-a")]
    c_a: Option<String>,
    /// Repulsion weight.
    #[arg(long = "c-r")]
    c_r: Option<String>,
    /// Gravity weight toward the matrix position.
    #[arg(long = "c-g")]
    c_g: Option<String>,
    /// Repulsion margin between glyphs.
    #[arg(long)]
    mu: Option<String>,
    #[arg(long = "max-step")]
    max_step: Option<String>,
    #[arg(long = "max-iters")]
    max_iters: Option<String>,
    #[arg(long)]
    eps: Option<String>,
    #[arg(long = "cell-px")]
    cell_px: Option<String>,
    /// Pixels per layout unit in the motif view.
    #[arg(long)]
    scale: Option<String>,
    /// true | false
    #[arg(long)]
    labels: Option<String>,
    #[arg(long = "link-opacity")]
    link_opacity: Option<String>,
}

impl Common {
    fn pairs(&self) -> Vec<(&'static str, &Option<String>)> {
        vec![
            ("input", &self.input),
            ("format", &self.format),
            ("out", &self.out),
            ("emit", &self.emit),
            ("c-o", &self.c_o),
            ("c-a", &self.c_a),
            ("c-r", &self.c_r),
            ("c-g", &self.c_g),
            ("mu", &self.mu),
            ("max-step", &self.max_step),
            ("max-iters", &self.max_iters),
            ("eps", &self.eps),
            ("cell-px", &self.cell_px),
            ("scale", &self.scale),
            ("labels", &self.labels),
            ("link-opacity", &self.link_opacity),
        ]
    }
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    common: Common,
    /// density | morans | global | local
    #[arg(long)]
    model: Option<String>,
    #[arg(long)]
    sigma: Option<String>,
    #[arg(long)]
    tau: Option<String>,
    /// rows | cols: which side a biclique grows first on ties
    #[arg(long)]
    axis: Option<String>,
    /// off | exact | heuristic | auto
    #[arg(long)]
    reorder: Option<String>,
    /// Largest exact solver state count, as a power of two.
    #[arg(long = "exact-cap")]
    exact_cap: Option<String>,
    /// Heuristic solver seed (default 42).
    #[arg(long)]
    seed: Option<String>,
    /// none | abs:N | rel:F
    #[arg(long)]
    filter: Option<String>,
    /// Also write wall-clock stage timings to timings.json.
    #[arg(long)]
    timings: bool,
}

#[derive(Args)]
struct RenderArgs {
    #[command(flatten)]
    common: Common,
    /// decomposition.json from an earlier run on the same input.
    #[arg(long)]
    decomposition: PathBuf,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long)]
    n: usize,
    /// clique:K, biclique:RxC or star:L; repeatable.
    #[arg(long = "plant")]
    plants: Vec<String>,
    /// Probability that a planted edge is dropped.
    #[arg(long, default_value_t = 0.0)]
    flip: f64,
    /// Edge probability outside the plants.
    #[arg(long, default_value_t = 0.0)]
    background: f64,
    /// Keep plants on contiguous vertex ids.
    #[arg(long)]
    no_shuffle: bool,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// edges | matrix; edge lists omit isolated vertices.
    #[arg(long, default_value = "matrix")]
    format: String,
    #[arg(long)]
    out: PathBuf,
    /// Where to write the planted patterns as JSON.
    #[arg(long)]
    truth: Option<PathBuf>,
}

fn configure(common: &Common, extra: &[(&'static str, &Option<String>)]) -> Result<PipelineConfig> {
    let mut cfg = PipelineConfig::default();
    if let Some(path) = &common.config {
        cfg.apply_file(path)?;
    }
    for (key, value) in common.pairs().into_iter().chain(extra.iter().copied()) {
        if let Some(v) = value {
            cfg.set(key, v)?;
        }
    }
    Ok(cfg)
}

fn run(args: RunArgs) -> Result<()> {
    let extra = [
        ("model", &args.model),
        ("sigma", &args.sigma),
        ("tau", &args.tau),
        ("axis", &args.axis),
        ("reorder", &args.reorder),
        ("exact-cap", &args.exact_cap),
        ("seed", &args.seed),
        ("filter", &args.filter),
    ];
    let mut cfg = configure(&args.common, &extra)?;
    cfg.timings |= args.timings;
    let (analysis, manifest) = pipeline::run_pipeline(&cfg)?;
    for w in &analysis.warnings {
        eprintln!("warning: {w}");
    }
    let d = &analysis.decomposition;
    println!(
        "{} patterns, total weight {}, {} of {} edges covered",
        d.patterns.len(),
        d.total_weight,
        d.precision.black_in / 2,
        analysis.graph.m()
    );
    for p in manifest.paths() {
        println!("{}", p.display());
    }
    Ok(())
}

fn render(args: RenderArgs) -> Result<()> {
    let cfg = configure(&args.common, &[])?;
    let manifest = pipeline::render_stored(&cfg, &args.decomposition)?;
    for p in manifest.paths() {
        println!("{}", p.display());
    }
    Ok(())
}

fn generate(args: GenerateArgs) -> Result<()> {
    let plants = args.plants.iter().map(|s| s.parse::<Plant>()).collect::<Result<Vec<_>>>()?;
    let spec = SynthSpec { n: args.n, plants, flip: args.flip, background: args.background, shuffle: !args.no_shuffle };
    let s = synth::generate(&spec, args.seed)?;
    let text = match args.format.parse::<InputFormat>()? {
        InputFormat::Edges => io::format_edge_list(&s.graph),
        InputFormat::Matrix => io::format_matrix(&s.graph)?,
    };
    io::write_text(&args.out, &text)?;
    if let Some(path) = &args.truth {
        io::write_text(path, &to_json(&s.truth)?)?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(a) => run(a),
        Command::Generate(a) => generate(a),
        Command::Render(a) => render(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(Error::exit_code(&e) as u8)
        }
    }
}
