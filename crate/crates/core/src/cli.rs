//! Command-line front end.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::basis::{
    bar_matrix, canonical_basis_with, directed_representatives, first_distinguished_representatives,
    first_representatives, lemma67_experiment, monomial, transition_matrix, LaurentMatrix,
};
use crate::cache::CacheFile;
use crate::context::{Config, Context, PolyMap};
use crate::error::{Error, Result};
use crate::hall::{gamma_word, general_hall, phi_word};
use crate::monoid::{all_directed_words, directed_word, fibre, star, star_simple, wp, DirectedPartition};
use crate::order::{hom_vector, linear_extension, poset_export};
use crate::quiver::parse_quiver;
use crate::roots::{Partition, Word};
use crate::typea::{is_distinguished_type_a, wp_type_a};

#[derive(Debug, Parser)]
#[command(name = "hallbase", version, about = "Hall polynomials and canonical bases for Dynkin quivers")]
pub struct Cli {
    /// Quiver file: {"vertices": n, "arrows": [[t,h], ...]} with 1-based labels.
    #[arg(short = 'q', long = "quiver", global = true)]
    pub quiver: Option<PathBuf>,
    /// Machine-readable output.
    #[arg(long, global = true)]
    pub json: bool,
    /// Layer cache file.
    #[arg(long, env = "HALLBASE_CACHE", global = true)]
    pub cache: Option<PathBuf>,
    /// Number of primes available to interpolation.
    #[arg(long, global = true)]
    pub primes: Option<usize>,
    /// Enumeration cap on candidate words.
    #[arg(long, global = true)]
    pub cap: Option<u64>,
    /// Largest total dimension for general Hall polynomials and star products.
    #[arg(long, global = true)]
    pub max_length: Option<u32>,
    /// Recompute three random cache entries after loading.
    #[arg(long, global = true)]
    pub verify_cache: bool,
    /// Run on one thread.
    #[arg(long, global = true)]
    pub sequential: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct WordArg {
    /// Word, e.g. 1,2,3,4,4 (or 12344 on at most 9 vertices).
    #[arg(short = 'w', long = "word")]
    pub word: String,
}

#[derive(Debug, Args)]
pub struct DimArg {
    /// Dimension vector, e.g. 1,1,1.
    #[arg(short = 'd', long = "dim")]
    pub dim: String,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Choice {
    Directed,
    FirstDistinguished,
    First,
}

#[derive(Debug, Subcommand)]
pub enum CacheAction {
    /// Summarise the cache file.
    Info,
    /// Recompute every entry (or --sample of them) and compare.
    Verify {
        #[arg(long)]
        sample: Option<usize>,
    },
    /// Delete the cache file.
    Clear,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Positive roots in canonical order.
    Roots,
    /// Kostant partitions of a dimension vector, smallest first.
    Partitions {
        #[command(flatten)]
        dim: DimArg,
        /// Export the cover relations of the degeneration order.
        #[arg(long)]
        covers: bool,
    },
    /// The partition ℘(w) of a word.
    Wp {
        #[command(flatten)]
        word: WordArg,
        /// Use the σ-calculus of the linear quiver.
        #[arg(long)]
        type_a: bool,
    },
    /// All words in a fibre of ℘.
    Fibre {
        #[arg(long)]
        lambda: Option<String>,
        #[arg(short = 'w', long = "word")]
        word: Option<String>,
    },
    /// Whether γ_w^{℘(w)} = 1.
    Distinguished {
        #[command(flatten)]
        word: WordArg,
        #[arg(long)]
        type_a: bool,
    },
    /// Directed distinguished words of a partition.
    DirectedWord {
        #[arg(long)]
        lambda: String,
        /// Ordered parts as JSON, e.g. [[0],[2,1]] (root indices).
        #[arg(long)]
        parts: Option<String>,
        /// Vertex order, e.g. 2,1,3,4.
        #[arg(long)]
        vertex_order: Option<String>,
        /// Every directed word instead of the default one.
        #[arg(long)]
        all: bool,
    },
    /// φ^λ_{μν}, or φ_w^λ for a word.
    Hall {
        #[arg(long)]
        lambda: Option<String>,
        #[arg(long)]
        mu: Option<String>,
        #[arg(long)]
        nu: Option<String>,
        #[arg(short = 'w', long = "word")]
        word: Option<String>,
    },
    /// γ_w^λ for every λ.
    Gamma {
        #[command(flatten)]
        word: WordArg,
    },
    /// The generic extension M(μ) ∗ M(ν), or S_i ∗ M(ν) with --vertex.
    Star {
        #[arg(long)]
        mu: Option<String>,
        #[arg(short = 'i', long)]
        vertex: Option<usize>,
        #[arg(long)]
        nu: String,
    },
    /// The divided-power monomial m^{(w)}.
    Monomial {
        #[command(flatten)]
        word: WordArg,
    },
    /// Transition matrix from monomials to the ũ-basis.
    Transition {
        #[command(flatten)]
        dim: DimArg,
        #[arg(long, value_enum, default_value = "directed")]
        choice: Choice,
        /// Also print the bar-involution matrix.
        #[arg(long)]
        bar: bool,
    },
    /// Canonical basis of one dimension vector.
    Canonical {
        #[command(flatten)]
        dim: DimArg,
        #[arg(long, value_enum, default_value = "directed")]
        choice: Choice,
    },
    /// Test δ(w)+ε(w) = −dim M + dim End M on every distinguished word.
    #[command(name = "lemma67-experiment")]
    Lemma67Experiment {
        #[arg(long, default_value_t = 4)]
        max_length: u32,
    },
    /// Inspect or maintain the layer cache.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

/// Parse arguments and run; returns the exit code and standard output.
pub fn execute<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 { (0, text, String::new()) } else { (1, String::new(), text) };
        }
    };
    match run(&cli) {
        Ok(out) => (0, out, String::new()),
        Err(e) => (e.exit_code(), String::new(), format!("error: {e}\n")),
    }
}

fn read_quiver(cli: &Cli) -> Result<Context> {
    let path = cli.quiver.as_ref().ok_or_else(|| Error::invalid("this command needs a quiver file (-q)"))?;
    let text = std::fs::read_to_string(path).map_err(|e| Error::invalid(format!("{}: {e}", path.display())))?;
    let q = parse_quiver(&text)?;
    let mut config = Config::default();
    if let Some(p) = cli.primes {
        config.primes = p;
    }
    if let Some(c) = cli.cap {
        config.word_cap = c;
    }
    if let Some(m) = cli.max_length {
        config.max_length = m;
    }
    Context::new(q, config)
}

fn load_cache(cli: &Cli, ctx: &Context) -> Result<()> {
    let Some(path) = &cli.cache else { return Ok(()) };
    if !path.exists() {
        return Ok(());
    }
    let file = CacheFile::load(path)?;
    file.apply(ctx)?;
    if cli.verify_cache {
        file.verify(ctx, 3, &mut rand::thread_rng())?;
    }
    Ok(())
}

fn save_cache(cli: &Cli, ctx: &Context) -> Result<()> {
    if let Some(path) = &cli.cache {
        CacheFile::from_context(ctx).store(path)?;
    }
    Ok(())
}

pub fn run(cli: &Cli) -> Result<String> {
    crate::parallel::set_enabled(!cli.sequential);
    if let Command::Cache { action } = &cli.command {
        return run_cache(cli, action);
    }
    let ctx = read_quiver(cli)?;
    load_cache(cli, &ctx)?;
    let out = dispatch(cli, &ctx)?;
    save_cache(cli, &ctx)?;
    Ok(out)
}

fn run_cache(cli: &Cli, action: &CacheAction) -> Result<String> {
    let path = cli.cache.as_ref().ok_or_else(|| Error::invalid("no cache path (use --cache or HALLBASE_CACHE)"))?;
    match action {
        CacheAction::Clear => {
            if path.exists() {
                std::fs::remove_file(path)?;
            }
            Ok(emit(cli, json!({"cleared": path.display().to_string()}), format!("removed {}\n", path.display())))
        }
        CacheAction::Info => {
            let file = CacheFile::load(path)?;
            let v = json!({
                "format_version": file.format_version,
                "quiver": file.quiver_fingerprint,
                "entries": file.layers.len(),
            });
            let text = format!(
                "format version {}\nquiver {}\n{} layer entries\n",
                file.format_version,
                file.quiver_fingerprint,
                file.layers.len()
            );
            Ok(emit(cli, v, text))
        }
        CacheAction::Verify { sample } => {
            let ctx = read_quiver(cli)?;
            let file = CacheFile::load(path)?;
            let n = sample.unwrap_or(file.layers.len());
            let checked = file.verify(&ctx, n, &mut rand::thread_rng())?;
            Ok(emit(cli, json!({"verified": checked}), format!("{checked} entries verified\n")))
        }
    }
}

fn emit(cli: &Cli, v: Value, text: String) -> String {
    if cli.json {
        let mut s = serde_json::to_string_pretty(&v).expect("serializable");
        s.push('\n');
        s
    } else {
        text
    }
}

fn parse_dim(ctx: &Context, s: &str) -> Result<Vec<u32>> {
    let d = s
        .split(',')
        .map(|x| x.trim().parse::<u32>().map_err(|_| Error::invalid(format!("bad dimension entry `{x}`"))))
        .collect::<Result<Vec<u32>>>()?;
    ctx.check_dimvec(&d)?;
    Ok(d)
}

fn parse_word(ctx: &Context, s: &str) -> Result<Word> {
    Word::parse(s, ctx.quiver().vertex_count())
}

fn parse_partition(ctx: &Context, s: &str) -> Result<Partition> {
    Partition::parse_json(s, ctx.nroots())
}

fn required<'a>(v: &'a Option<String>, flag: &str) -> Result<&'a str> {
    v.as_deref().ok_or_else(|| Error::invalid(format!("missing {flag}")))
}

fn poly_map_json(map: &PolyMap) -> Value {
    Value::Array(map.iter().map(|(l, p)| json!({"partition": l.to_json_map(), "poly": p})).collect())
}

fn poly_map_text(ctx: &Context, map: &PolyMap) -> String {
    let mut s = String::new();
    for (l, p) in map.iter().rev() {
        let _ = writeln!(s, "{}\t{}", ctx.display(l), p);
    }
    s
}

fn dim_label(d: &[u32]) -> String {
    format!("({})", d.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}

fn matrix_text(ctx: &Context, m: &LaurentMatrix) -> String {
    let mut s = String::new();
    for (i, l) in m.labels.iter().enumerate() {
        let _ = writeln!(s, "[{i}] {}", ctx.display(l));
    }
    for row in &m.entries {
        let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
        let _ = writeln!(s, "{}", cells.join("\t"));
    }
    s
}

fn representatives(ctx: &Context, d: &[u32], choice: Choice) -> Result<crate::basis::Representatives> {
    match choice {
        Choice::Directed => directed_representatives(ctx, d),
        Choice::FirstDistinguished => first_distinguished_representatives(ctx, d),
        Choice::First => first_representatives(ctx, d),
    }
}

fn dispatch(cli: &Cli, ctx: &Context) -> Result<String> {
    match &cli.command {
        Command::Roots => {
            let roots = ctx.roots().roots();
            let v = Value::Array(roots.iter().map(|r| json!({"index": r.index, "dim": r.dim})).collect());
            let mut text = format!("{} positive roots\n", roots.len());
            for r in roots {
                let _ = writeln!(text, "{}\t{}", r.index, dim_label(&r.dim));
            }
            Ok(emit(cli, v, text))
        }
        Command::Partitions { dim, covers } => {
            let d = parse_dim(ctx, &dim.dim)?;
            if *covers {
                let p = poset_export(ctx, &d);
                let mut text = String::new();
                for (a, b) in &p.edges {
                    let _ = writeln!(text, "{a} < {b}");
                }
                return Ok(emit(cli, serde_json::to_value(&p).unwrap(), text));
            }
            let parts = linear_extension(ctx, &ctx.partitions(&d));
            let v = Value::Array(
                parts.iter().map(|l| json!({"partition": l.to_json_map(), "hom_vector": hom_vector(ctx, l)})).collect(),
            );
            let mut text = format!("{} partitions of {}\n", parts.len(), dim_label(&d));
            for l in &parts {
                let _ = writeln!(text, "{}\t{}", l.to_json_string(), ctx.display(l));
            }
            Ok(emit(cli, v, text))
        }
        Command::Wp { word, type_a } => {
            let w = parse_word(ctx, &word.word)?;
            let l = if *type_a { wp_type_a(ctx, &w)? } else { wp(ctx, &w)? };
            Ok(emit(
                cli,
                json!({"word": w.to_label_string(), "partition": l.to_json_map()}),
                format!("{}\n", ctx.display(&l)),
            ))
        }
        Command::Fibre { lambda, word } => {
            let l = match (lambda, word) {
                (Some(s), None) => parse_partition(ctx, s)?,
                (None, Some(w)) => wp(ctx, &parse_word(ctx, w)?)?,
                _ => return Err(Error::invalid("give exactly one of --lambda or -w")),
            };
            let words = fibre(ctx, &l)?;
            let labels: Vec<String> = words.iter().map(|w| w.to_label_string()).collect();
            let text = words.iter().map(|w| format!("{w}\n")).collect();
            Ok(emit(cli, json!(labels), text))
        }
        Command::Distinguished { word, type_a } => {
            let w = parse_word(ctx, &word.word)?;
            if *type_a {
                let d = is_distinguished_type_a(ctx, &w)?;
                return Ok(emit(cli, json!({"word": w.to_label_string(), "distinguished": d}), format!("{d}\n")));
            }
            let l = wp(ctx, &w)?;
            let g = gamma_word(ctx, &w)?.get(&l).cloned().unwrap_or_default();
            let d = g.is_one();
            Ok(emit(
                cli,
                json!({"word": w.to_label_string(), "distinguished": d, "gamma": g}),
                format!("{d}\t(γ = {g})\n"),
            ))
        }
        Command::DirectedWord { lambda, parts, vertex_order, all } => {
            let l = parse_partition(ctx, lambda)?;
            if *all {
                let words = all_directed_words(ctx, &l)?;
                let labels: Vec<String> = words.iter().map(|w| w.to_label_string()).collect();
                return Ok(emit(cli, json!(labels), words.iter().map(|w| format!("{w}\n")).collect()));
            }
            let order = parts
                .as_deref()
                .map(|s| -> Result<DirectedPartition> {
                    let parts: Vec<Vec<usize>> = serde_json::from_str(s)?;
                    Ok(DirectedPartition { parts })
                })
                .transpose()?;
            let vorder =
                vertex_order.as_deref().map(|s| parse_word(ctx, s).map(|w| w.letters().to_vec())).transpose()?;
            let w = directed_word(ctx, &l, order.as_ref(), vorder.as_deref())?;
            Ok(emit(cli, json!(w.to_label_string()), format!("{w}\n")))
        }
        Command::Hall { lambda, mu, nu, word } => {
            if let Some(w) = word {
                let w = parse_word(ctx, w)?;
                let map = phi_word(ctx, &w)?;
                return Ok(emit(cli, poly_map_json(&map), poly_map_text(ctx, &map)));
            }
            let l = parse_partition(ctx, required(lambda, "--lambda")?)?;
            let m = parse_partition(ctx, required(mu, "--mu")?)?;
            let n = parse_partition(ctx, required(nu, "--nu")?)?;
            let p = general_hall(ctx, &l, &m, &n)?;
            Ok(emit(cli, serde_json::to_value(&p).unwrap(), format!("{p}\n")))
        }
        Command::Gamma { word } => {
            let w = parse_word(ctx, &word.word)?;
            let map = gamma_word(ctx, &w)?;
            Ok(emit(cli, poly_map_json(&map), poly_map_text(ctx, &map)))
        }
        Command::Star { mu, vertex, nu } => {
            let n = parse_partition(ctx, nu)?;
            let l = match (mu, vertex) {
                (Some(m), None) => star(ctx, &parse_partition(ctx, m)?, &n)?,
                (None, Some(i)) => {
                    if *i == 0 {
                        return Err(Error::invalid("vertices are labelled from 1"));
                    }
                    star_simple(ctx, i - 1, &n)?
                }
                _ => return Err(Error::invalid("give exactly one of --mu or --vertex")),
            };
            Ok(emit(cli, json!(l.to_json_map()), format!("{}\n", ctx.display(&l))))
        }
        Command::Monomial { word } => {
            let w = parse_word(ctx, &word.word)?;
            let m = monomial(ctx, &w)?;
            let v = json!({"word": w.to_label_string(), "u": m.to_json(ctx, false), "tilde": m.to_json(ctx, true)});
            Ok(emit(cli, v, format!("{}\n{}\n", m.display_tilde(ctx), m.display_u(ctx))))
        }
        Command::Transition { dim, choice, bar } => {
            let d = parse_dim(ctx, &dim.dim)?;
            let reps = representatives(ctx, &d, *choice)?;
            let f = transition_matrix(ctx, &d, &reps)?;
            let words: Vec<String> = f.labels.iter().map(|l| reps[l].to_label_string()).collect();
            let mut v = json!({"words": words, "transition": f.to_json()});
            let mut text = format!("words: {}\n{}", words.join(" "), matrix_text(ctx, &f));
            if *bar {
                let r = bar_matrix(&f)?;
                v["bar"] = r.to_json();
                text.push_str("bar matrix\n");
                text.push_str(&matrix_text(ctx, &r));
            }
            Ok(emit(cli, v, text))
        }
        Command::Canonical { dim, choice } => {
            let d = parse_dim(ctx, &dim.dim)?;
            let reps = representatives(ctx, &d, *choice)?;
            let cb = canonical_basis_with(ctx, &d, &reps)?;
            let order = linear_extension(ctx, &ctx.partitions(&d));
            let v = Value::Array(
                order
                    .iter()
                    .map(|l| json!({"partition": l.to_json_map(), "tilde": cb[l].to_json(ctx, true)}))
                    .collect(),
            );
            let mut text = String::new();
            for l in &order {
                let _ = writeln!(text, "c[{}] = {}", ctx.display(l), cb[l].display_tilde(ctx));
            }
            Ok(emit(cli, v, text))
        }
        Command::Lemma67Experiment { max_length } => {
            let r = lemma67_experiment(ctx, *max_length)?;
            let text = format!(
                "words up to length {}: {}\ndistinguished: {}\ndirected: {}\nviolations: {}\n",
                r.max_length,
                r.words,
                r.distinguished,
                r.directed,
                if r.violations.is_empty() { "none".to_string() } else { r.violations.join(" ") }
            );
            Ok(emit(cli, serde_json::to_value(&r).unwrap(), text))
        }
        Command::Cache { .. } => unreachable!("handled before the quiver is read"),
    }
}
