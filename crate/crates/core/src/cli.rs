//! Command-line front end.
//!
//! Vertex labels in all output are 1-based. Exit codes: 0 success, 1
//! internal failure, 2 usage or input error, 3 failed verification, 4
//! resource cap exceeded.

use std::ffi::OsString;
use std::fs;
use std::io::{self, BufRead, BufReader, Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::aut::{automorphism_group_with, AutOptions, AutResult, DEFAULT_MAX_VERTICES};
use crate::construct::{build_gamma, multiset, GammaInstance, VariantSpec};
use crate::enumerate::{
    search_min_vertices, AutPredicate, CyclicOfOrder, EnumOptions, Enumerator, OfOrder, SearchOptions,
    DEFAULT_MAX_N,
};
use crate::error::{AutError, ConstructError, EnumerateError, PermError};
use crate::graph::Eccentricity;
use crate::graph6;
use crate::perm::PermGroup;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VERIFY_FAILED: i32 = 3;
pub const EXIT_CAP: i32 = 4;

/// Largest exponent `verify --full` accepts without `--allow-large`.
pub const FULL_VERIFY_MAX_EXPONENT: u32 = 8;

#[derive(Parser, Debug)]
#[command(name = "cycgraph", version, about = "Graphs with cyclic automorphism groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Emit Γ_m for m = 2^N_EXP, or a block-complement variant.
    Build {
        n_exp: u32,
        /// Orbit blocks to complement, e.g. "33" or "13,22"; "keep" for none.
        #[arg(long)]
        variant: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Graph6)]
        format: Format,
    },
    /// Check the structure of Γ_m, and with --full its automorphism group.
    Verify {
        n_exp: u32,
        #[arg(long)]
        full: bool,
        /// Permit --full above the default exponent limit.
        #[arg(long)]
        allow_large: bool,
    },
    /// Automorphism group of each graph6 line.
    Aut {
        /// Input file; stdin if absent.
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_MAX_VERTICES)]
        max_vertices: usize,
    },
    /// Canonical graph6 form of each graph6 line.
    Canon {
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_MAX_VERTICES)]
        max_vertices: usize,
    },
    /// Every isomorphism class on N vertices, as canonical graph6.
    Enumerate {
        n: usize,
        /// Print only the number of classes.
        #[arg(long)]
        count: bool,
        /// Print the number of classes per automorphism group order.
        #[arg(long, conflicts_with = "count")]
        by_order: bool,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, default_value_t = DEFAULT_MAX_N)]
        max_n: usize,
    },
    /// Smallest graphs whose automorphism group has the given order.
    Search {
        #[arg(long)]
        order: u64,
        /// Require the group to be cyclic.
        #[arg(long)]
        cyclic: bool,
        #[arg(long)]
        nmax: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Save progress here and resume from it.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Write every hit as a graph6 line.
        #[arg(long)]
        hits_out: Option<PathBuf>,
        /// Generate all classes instead of using complement pairs.
        #[arg(long)]
        no_complement: bool,
        #[arg(long, default_value_t = DEFAULT_MAX_N)]
        max_n: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Graph6,
    Certificate,
    Edgelist,
}

/// Failure carrying an exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Self {
            code: EXIT_INTERNAL,
            message: format!("i/o error: {e}"),
        }
    }
}

impl From<ConstructError> for Failure {
    fn from(e: ConstructError) -> Self {
        let code = match e {
            ConstructError::Fixture(_) => EXIT_INTERNAL,
            _ => EXIT_USAGE,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<AutError> for Failure {
    fn from(e: AutError) -> Self {
        let code = match e {
            AutError::TooLarge { .. } | AutError::Perm(PermError::CapExceeded { .. }) => EXIT_CAP,
            AutError::Perm(_) => EXIT_INTERNAL,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<EnumerateError> for Failure {
    fn from(e: EnumerateError) -> Self {
        match e {
            EnumerateError::CapExceeded { .. } => Self {
                code: EXIT_CAP,
                message: e.to_string(),
            },
            EnumerateError::Aut(a) => a.into(),
            EnumerateError::Checkpoint(_) => Self::usage(e.to_string()),
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn execute(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    match cmd {
        Command::Build { n_exp, variant, format } => cmd_build(n_exp, variant.as_deref(), format, out),
        Command::Verify {
            n_exp,
            full,
            allow_large,
        } => cmd_verify(n_exp, full, allow_large, out),
        Command::Aut { input, max_vertices } => cmd_lines(input, max_vertices, LineMode::Aut, out),
        Command::Canon { input, max_vertices } => cmd_lines(input, max_vertices, LineMode::Canon, out),
        Command::Enumerate {
            n,
            count,
            by_order,
            jobs,
            max_n,
        } => cmd_enumerate(n, count, by_order, jobs, max_n, out),
        Command::Search {
            order,
            cyclic,
            nmax,
            jobs,
            checkpoint,
            hits_out,
            no_complement,
            max_n,
        } => {
            let pred: Box<dyn AutPredicate> = if cyclic {
                Box::new(CyclicOfOrder(order))
            } else {
                Box::new(OfOrder(order))
            };
            let opts = SearchOptions {
                enumeration: EnumOptions {
                    max_n,
                    jobs: jobs.max(1),
                    ..EnumOptions::default()
                },
                use_complements: !no_complement,
                checkpoint,
                stop_after_parents: None,
            };
            cmd_search(pred.as_ref(), nmax, &opts, hits_out, out, err)
        }
    }
}

fn cmd_build(n_exp: u32, variant: Option<&str>, format: Format, out: &mut dyn Write) -> Result<i32, Failure> {
    let inst = build_gamma(n_exp)?;
    let graph = match variant {
        Some(v) => inst.variant(&VariantSpec::parse(v)?),
        None => inst.graph.clone(),
    };
    match format {
        Format::Graph6 => writeln!(out, "{}", graph6::encode_string(&graph))?,
        Format::Certificate => out.write_all(inst.certificate(&graph).as_bytes())?,
        Format::Edgelist => {
            for (u, v) in graph.edges() {
                writeln!(out, "{} {}", u + 1, v + 1)?;
            }
        }
    }
    Ok(EXIT_OK)
}

struct Checks<'a> {
    out: &'a mut dyn Write,
    failed: usize,
}

impl Checks<'_> {
    fn check(&mut self, ok: bool, name: &str, detail: impl std::fmt::Display) -> io::Result<()> {
        if !ok {
            self.failed += 1;
        }
        writeln!(self.out, "{} {name}={detail}", if ok { "PASS" } else { "FAIL" })
    }
}

fn join_labels(vs: &[usize]) -> String {
    vs.iter().map(|v| (v + 1).to_string()).collect::<Vec<_>>().join(",")
}

fn join_sizes(vs: &[usize]) -> String {
    vs.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

/// Vertices of eccentricity exactly 3, ascending.
pub fn eccentricity_three(inst: &GammaInstance) -> Vec<usize> {
    (0..inst.vertex_count())
        .filter(|&v| inst.graph.eccentricity(v) == Ok(Eccentricity::Finite(3)))
        .collect()
}

fn cmd_verify(n_exp: u32, full: bool, allow_large: bool, out: &mut dyn Write) -> Result<i32, Failure> {
    let inst = build_gamma(n_exp)?;
    if full && n_exp > FULL_VERIFY_MAX_EXPONENT && !allow_large {
        return Err(Failure::usage(format!(
            "--full is limited to n <= {FULL_VERIFY_MAX_EXPONENT}; pass --allow-large to override"
        )));
    }
    let m = inst.m;
    let g = &inst.graph;
    let mut c = Checks { out, failed: 0 };
    writeln!(c.out, "n_exp={n_exp} m={m}")?;

    c.check(g.vertex_count() == m + 6, "vertices", g.vertex_count())?;
    c.check(g.edge_count() == 4 * m + 4, "edges", g.edge_count())?;
    let degrees = g.degree_sequence();
    c.check(
        degrees == inst.expected_degree_sequence(),
        "degree_multiset",
        multiset(&degrees),
    )?;
    let ecc3 = eccentricity_three(&inst);
    c.check(ecc3 == [m + 4, m + 5], "eccentricity_3", join_labels(&ecc3))?;
    let report = inst.verify_generator();
    let types = report
        .type_map()
        .iter()
        .map(|(a, b)| format!("{a}>{b}"))
        .collect::<Vec<_>>()
        .join(",");
    c.check(report.passed(), "generator_maps_edges", if report.passed() { types } else { format!("{} edges lost", report.missing.len()) })?;
    let gen_order = inst.generator.order();
    c.check(gen_order == m as u128, "generator_order", gen_order)?;
    let cyclic = PermGroup::generate(g.vertex_count(), std::slice::from_ref(&inst.generator))
        .map_err(AutError::from)?;
    c.check(cyclic.order() == m, "generated_order", cyclic.order())?;
    let expected_orbits: Vec<Vec<usize>> = inst.orbit_sets.to_vec();
    let orbits = cyclic.orbits();
    c.check(orbits == expected_orbits, "generated_orbits", orbit_sizes_text(&orbits))?;

    if full {
        let aut = automorphism_group_with(
            g,
            AutOptions {
                max_vertices: g.vertex_count(),
            },
        )?;
        let order = aut.order();
        c.check(aut.order_u64() == Some(m as u64), "aut_order", &order)?;
        let same = aut.order_u64() == Some(m as u64)
            && aut.group_with_cap(m)?.same_elements(&cyclic);
        c.check(same, "aut_equals_generated", same)?;
        c.check(aut.is_cyclic(), "aut_cyclic", aut.is_cyclic())?;
        c.check(aut.orbits() == expected_orbits.as_slice(), "aut_orbits", orbit_sizes_text(aut.orbits()))?;
    }
    let ok = c.failed == 0;
    writeln!(c.out, "result={}", if ok { "PASS" } else { "FAIL" })?;
    Ok(if ok { EXIT_OK } else { EXIT_VERIFY_FAILED })
}

fn orbit_sizes_text(orbits: &[Vec<usize>]) -> String {
    let mut sizes: Vec<usize> = orbits.iter().map(Vec::len).collect();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    join_sizes(&sizes)
}

#[derive(Clone, Copy)]
enum LineMode {
    Aut,
    Canon,
}

/// One `aut` output line.
pub fn describe(aut: &AutResult) -> String {
    let gens = if aut.generators().is_empty() {
        "()".to_string()
    } else {
        aut.generators()
            .iter()
            .map(|p| p.format_cycles())
            .collect::<Vec<_>>()
            .join(";")
    };
    format!(
        "order={} cyclic={} orbits={} generators={} canon={}",
        aut.order(),
        aut.is_cyclic(),
        join_sizes(&aut.orbit_sizes()),
        gens,
        aut.canonical_form_string()
    )
}

fn cmd_lines(input: Option<PathBuf>, max_vertices: usize, mode: LineMode, out: &mut dyn Write) -> Result<i32, Failure> {
    let reader: Box<dyn Read> = match &input {
        Some(p) => Box::new(
            fs::File::open(p).map_err(|e| Failure::usage(format!("cannot open {}: {e}", p.display())))?,
        ),
        None => Box::new(io::stdin()),
    };
    let opts = AutOptions { max_vertices };
    for (i, line) in BufReader::new(reader).lines().enumerate() {
        let line = line?;
        let text = line.trim();
        if text.is_empty() {
            continue;
        }
        let g = graph6::decode_str(text)
            .map_err(|e| Failure::usage(format!("line {}: invalid graph6 ({e})", i + 1)))?;
        let aut = automorphism_group_with(&g, opts)?;
        match mode {
            LineMode::Aut => writeln!(out, "{}", describe(&aut))?,
            LineMode::Canon => writeln!(out, "{}", aut.canonical_form_string())?,
        }
    }
    Ok(EXIT_OK)
}

fn cmd_enumerate(
    n: usize,
    count: bool,
    by_order: bool,
    jobs: usize,
    max_n: usize,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let e = Enumerator::new(
        n,
        EnumOptions {
            max_n,
            jobs: jobs.max(1),
            ..EnumOptions::default()
        },
    )?;
    let mut total = 0u64;
    let mut table = std::collections::BTreeMap::new();
    let mut io_err = None;
    e.for_each(|g| {
        total += 1;
        if by_order {
            *table.entry(g.aut_order).or_insert(0u64) += 1;
        } else if !count && io_err.is_none() {
            if let Err(x) = writeln!(out, "{}", g.canonical_form()) {
                io_err = Some(x);
            }
        }
    });
    if let Some(x) = io_err {
        return Err(x.into());
    }
    if count {
        writeln!(out, "n={n} count={total}")?;
    }
    for (order, c) in table {
        writeln!(out, "order={order} count={c}")?;
    }
    Ok(EXIT_OK)
}

fn cmd_search(
    pred: &dyn AutPredicate,
    nmax: usize,
    opts: &SearchOptions,
    hits_out: Option<PathBuf>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, Failure> {
    let reports = search_min_vertices(pred, nmax, opts)?;
    for r in &reports {
        writeln!(out, "{}", r.to_line())?;
        writeln!(err, "n={} elapsed={:.3}s", r.n, r.elapsed.as_secs_f64())?;
    }
    if let Some(path) = hits_out {
        let mut f = io::BufWriter::new(fs::File::create(&path)?);
        for h in reports.iter().flat_map(|r| &r.hits) {
            writeln!(f, "{h}")?;
        }
        f.flush()?;
    }
    Ok(EXIT_OK)
}
