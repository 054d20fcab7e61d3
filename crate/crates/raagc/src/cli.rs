//! Command-line front end. Every command reads JSON or word-syntax input,
//! runs the wrapped library operation, and prints a byte-stable report in
//! text or JSON form. Exit codes: 0 success, 1 input or validation
//! problems, 2 a failed internal verification.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{
    connected_components, is_chordal, is_flag, restriction, subsets_at_least,
};
use crate::freegroup;
use crate::generators::{enumerate_descriptors, count_p, CommutatorDescriptor};
use crate::graphproduct::{count_gp, enumerate_gp_descriptors, GpDescriptor};
use crate::input;
use crate::rewriting::{express_in_basis, SignedFactor};
use crate::topology::{build_cube_complex, h1_rank_and_torsion};
use crate::verification;
use crate::{Error, Result};

/// Above this many vertices the per-subset table is skipped instead of
/// enumerating 2^m restrictions.
const SUBSET_TABLE_VERTEX_LIMIT: usize = 16;

/// At most this many table rows are printed in text form.
const SUBSET_TABLE_PRINT_LIMIT: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

/// Parsed invocation: one command plus the shared output knobs.
#[derive(Debug, Parser)]
#[command(
    name = "raagc",
    version,
    about = "Commutator-subgroup calculator for right-angled Artin groups and \
             graph products of cyclic groups"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    /// Print extra diagnostics (for `homology`: boundary matrices as
    /// `row col value` triplets).
    #[arg(long, global = true)]
    pub verbose: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Report flagness, chordality, freeness of the commutator subgroup,
    /// and the disconnected full subcomplexes.
    Analyze {
        /// Complex JSON: {"m":..,"edges":[[i,j],..]} or
        /// {"m":..,"maximal_faces":[[..],..]}.
        #[arg(long)]
        input: PathBuf,
    },
    /// List the commutator-subgroup generators at a bound.
    Enumerate {
        #[arg(long)]
        input: PathBuf,
        /// Exponent bound s >= 1.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        bound: u32,
        /// Vertex-group JSON for a graph product instead of the plain case.
        #[arg(long)]
        groups: Option<PathBuf>,
    },
    /// Print the generator counting report.
    Count {
        #[arg(long)]
        input: PathBuf,
        /// Exponent bound s >= 1.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        bound: u32,
        /// Vertex-group JSON for a graph product instead of the plain case.
        #[arg(long)]
        groups: Option<PathBuf>,
    },
    /// Compute first homology of the finite cube complex.
    Homology {
        #[arg(long)]
        input: PathBuf,
        /// Exponent bound s >= 1.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        bound: u32,
        /// Refuse complexes with m*(s+1)^m above this cap.
        #[arg(long, default_value_t = 100_000)]
        cell_cap: u64,
    },
    /// Run the identity and oracle suite; exits 0 only if every check
    /// passes.
    Verify {
        /// Seed for the randomized checks.
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Factor a commutator-subgroup word into basis commutators.
    Rewrite {
        /// Word in `index^exponent` syntax, e.g. `1^2,2^-1,1^-2,2^1`.
        word: String,
        /// Alphabet size m; inferred from the word when omitted (floor 2).
        #[arg(long, value_parser = clap::value_parser!(usize))]
        generators: Option<usize>,
        /// Cube bound s >= 1; the smallest bound the lifted path fits in
        /// when omitted.
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        bound: Option<u32>,
    },
}

/// Entry point used by both the binary and the integration tests.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(config) => config,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    match execute(&config) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("{e}");
            error_exit_code(&e)
        }
    }
}

/// 1 for rejected input, 2 for a failed internal check. No valid input can
/// produce an internal error, so the 2 branch is asserted here rather than
/// end to end.
fn error_exit_code(e: &Error) -> i32 {
    match e {
        Error::Validation(_) => 1,
        Error::Internal(_) => 2,
    }
}

fn execute(config: &RunConfig) -> Result<()> {
    match &config.command {
        Command::Analyze { input } => cmd_analyze(input, config.format),
        Command::Enumerate {
            input,
            bound,
            groups,
        } => cmd_enumerate(input, *bound, groups.as_deref(), config.format),
        Command::Count {
            input,
            bound,
            groups,
        } => cmd_count(input, *bound, groups.as_deref(), config.format),
        Command::Homology {
            input,
            bound,
            cell_cap,
        } => cmd_homology(input, *bound, *cell_cap, config.format, config.verbose),
        Command::Verify { seed } => cmd_verify(*seed, config.format),
        Command::Rewrite {
            word,
            generators,
            bound,
        } => cmd_rewrite(word, *generators, *bound, config.format),
    }
}

fn read_input(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::validation(format!("cannot read {}: {e}", path.display())))
}

fn emit_json<T: Serialize>(value: &T) -> Result<()> {
    let text = serde_json::to_string(value)
        .map_err(|e| Error::internal(format!("report encoding: {e}")))?;
    println!("{text}");
    Ok(())
}

fn format_vertex_set(vertices: &[usize]) -> String {
    let inner: Vec<String> = vertices.iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

/// A full subcomplex with more than one connected component.
#[derive(Debug, Serialize, Deserialize)]
pub struct DisconnectedSubset {
    pub vertices: Vec<usize>,
    pub components: usize,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct AnalyzeReport {
    pub vertices: usize,
    pub flag: bool,
    pub missing_face: Option<Vec<usize>>,
    pub chordal: bool,
    pub commutator_subgroup_free: bool,
    /// `None` when the 2^m table was skipped for size.
    pub disconnected_subsets: Option<Vec<DisconnectedSubset>>,
    /// `Some(true)` exactly when every full subcomplex is connected, so the
    /// generator count is zero at every bound.
    pub no_generators_at_any_bound: Option<bool>,
}

fn cmd_analyze(path: &Path, format: OutputFormat) -> Result<()> {
    let k = input::parse_complex(&read_input(path)?)?;
    let graph = k.one_skeleton();
    let missing_face = is_flag(&k).err().map(|f| f.into_iter().collect::<Vec<_>>());
    let chordal = is_chordal(&graph);
    let m = k.vertex_count();
    let disconnected = if m <= SUBSET_TABLE_VERTEX_LIMIT {
        let verts: Vec<usize> = k.vertices().iter().cloned().collect();
        let mut rows = Vec::new();
        for subset in subsets_at_least(&verts, 2) {
            let vs = subset.iter().cloned().collect();
            let (cc, _) = connected_components(&restriction(&k, &vs)?);
            if cc > 1 {
                rows.push(DisconnectedSubset {
                    vertices: subset,
                    components: cc,
                });
            }
        }
        Some(rows)
    } else {
        None
    };
    let report = AnalyzeReport {
        vertices: m,
        flag: missing_face.is_none(),
        missing_face,
        chordal,
        commutator_subgroup_free: chordal,
        no_generators_at_any_bound: disconnected.as_ref().map(|rows| rows.is_empty()),
        disconnected_subsets: disconnected,
    };
    match format {
        OutputFormat::Json => emit_json(&report),
        OutputFormat::Text => {
            println!("vertices: {}", report.vertices);
            match &report.missing_face {
                None => println!("flag: true"),
                Some(face) => {
                    println!("flag: false (missing face {})", format_vertex_set(face))
                }
            }
            println!("chordal: {}", report.chordal);
            println!(
                "commutator subgroup free: {}",
                report.commutator_subgroup_free
            );
            match &report.disconnected_subsets {
                None => println!(
                    "disconnected subsets: skipped (more than {SUBSET_TABLE_VERTEX_LIMIT} vertices)"
                ),
                Some(rows) => {
                    println!("disconnected subsets (|J| >= 2): {}", rows.len());
                    for row in rows.iter().take(SUBSET_TABLE_PRINT_LIMIT) {
                        println!(
                            "  {}: components {}",
                            format_vertex_set(&row.vertices),
                            row.components
                        );
                    }
                    if rows.len() > SUBSET_TABLE_PRINT_LIMIT {
                        println!("  (and {} more)", rows.len() - SUBSET_TABLE_PRINT_LIMIT);
                    }
                    if rows.is_empty() {
                        println!("generators at any s: 0");
                    }
                }
            }
            Ok(())
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct EnumerateReport {
    pub m: usize,
    pub s: u32,
    pub count: usize,
    pub descriptors: Vec<CommutatorDescriptor>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct GpEnumerateReport {
    pub m: usize,
    pub s: u32,
    pub count: usize,
    pub descriptors: Vec<GpDescriptor>,
}

fn cmd_enumerate(
    path: &Path,
    s: u32,
    groups: Option<&Path>,
    format: OutputFormat,
) -> Result<()> {
    let k = input::parse_complex(&read_input(path)?)?;
    match groups {
        None => {
            let descriptors = enumerate_descriptors(&k, s)?;
            let report = EnumerateReport {
                m: k.vertex_count(),
                s,
                count: descriptors.len(),
                descriptors,
            };
            match format {
                OutputFormat::Json => emit_json(&report),
                OutputFormat::Text => {
                    println!("m: {}", report.m);
                    println!("s: {}", report.s);
                    println!("count: {}", report.count);
                    for d in &report.descriptors {
                        println!("{d}");
                    }
                    Ok(())
                }
            }
        }
        Some(groups_path) => {
            let spec = input::parse_groups(&read_input(groups_path)?)?;
            let descriptors = enumerate_gp_descriptors(&k, &spec, s)?;
            let report = GpEnumerateReport {
                m: k.vertex_count(),
                s,
                count: descriptors.len(),
                descriptors,
            };
            match format {
                OutputFormat::Json => emit_json(&report),
                OutputFormat::Text => {
                    println!("m: {}", report.m);
                    println!("s: {}", report.s);
                    println!("count: {}", report.count);
                    for d in &report.descriptors {
                        println!("{d}");
                    }
                    Ok(())
                }
            }
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct GpCountReport {
    pub m: usize,
    pub s: u32,
    #[serde(with = "crate::input::serde_bigint")]
    pub count: BigInt,
}

fn cmd_count(path: &Path, s: u32, groups: Option<&Path>, format: OutputFormat) -> Result<()> {
    let k = input::parse_complex(&read_input(path)?)?;
    match groups {
        None => {
            let report = count_p(&k, s)?;
            match format {
                OutputFormat::Json => emit_json(&report),
                OutputFormat::Text => {
                    println!("m: {}", report.m);
                    println!("s: {}", report.s);
                    println!("J: {}", report.j_free);
                    println!("W_closed: {}", report.w_closed);
                    println!("W_recursive: {}", report.w_recursive);
                    println!("P: {}", report.p);
                    let rows: Vec<_> = report
                        .subsets
                        .iter()
                        .filter(|e| !e.contribution.is_zero())
                        .collect();
                    println!("contributing subsets: {}", rows.len());
                    for e in rows.iter().take(SUBSET_TABLE_PRINT_LIMIT) {
                        println!(
                            "  {}: components {}, contribution {}",
                            format_vertex_set(&e.vertices),
                            e.cc,
                            e.contribution
                        );
                    }
                    if rows.len() > SUBSET_TABLE_PRINT_LIMIT {
                        println!("  (and {} more)", rows.len() - SUBSET_TABLE_PRINT_LIMIT);
                    }
                    Ok(())
                }
            }
        }
        Some(groups_path) => {
            let spec = input::parse_groups(&read_input(groups_path)?)?;
            let report = GpCountReport {
                m: k.vertex_count(),
                s,
                count: count_gp(&k, &spec, s)?,
            };
            match format {
                OutputFormat::Json => emit_json(&report),
                OutputFormat::Text => {
                    println!("m: {}", report.m);
                    println!("s: {}", report.s);
                    println!("generators: {}", report.count);
                    Ok(())
                }
            }
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct HomologyReport {
    pub vertices: usize,
    pub edges: usize,
    pub squares: usize,
    pub rank: usize,
    /// Torsion invariants as decimal strings, empty when torsion-free.
    pub torsion: Vec<String>,
}

fn cmd_homology(
    path: &Path,
    s: u32,
    cell_cap: u64,
    format: OutputFormat,
    verbose: bool,
) -> Result<()> {
    let k = input::parse_complex(&read_input(path)?)?;
    let m = k.vertex_count() as u64;
    let weight = (s as u64 + 1)
        .checked_pow(m.try_into().unwrap_or(u32::MAX))
        .and_then(|p| p.checked_mul(m));
    match weight {
        Some(w) if w <= cell_cap => {}
        _ => {
            return Err(Error::validation(format!(
                "refusing the build: m*(s+1)^m exceeds the cell cap {cell_cap} \
                 (raise --cell-cap to proceed)"
            )))
        }
    }
    let complex = build_cube_complex(&k, s)?;
    if verbose && format == OutputFormat::Text {
        println!("boundary 1 (vertices x edges):");
        print!("{}", complex.boundary_1().to_triplet_dump());
        println!("boundary 2 (edges x squares):");
        print!("{}", complex.boundary_2().to_triplet_dump());
    }
    let (rank, torsion) = h1_rank_and_torsion(&complex)?;
    let report = HomologyReport {
        vertices: complex.vertex_count(),
        edges: complex.edge_count(),
        squares: complex.square_count(),
        rank,
        torsion: torsion.iter().map(|t| t.to_string()).collect(),
    };
    match format {
        OutputFormat::Json => emit_json(&report),
        OutputFormat::Text => {
            println!("vertices: {}", report.vertices);
            println!("edges: {}", report.edges);
            println!("squares: {}", report.squares);
            println!("H1 rank: {}", report.rank);
            if report.torsion.is_empty() {
                println!("torsion: none");
            } else {
                println!("torsion: {}", report.torsion.join(","));
            }
            Ok(())
        }
    }
}

fn cmd_verify(seed: u64, format: OutputFormat) -> Result<()> {
    let reports = verification::run_all(seed);
    let failed = reports.iter().filter(|r| !r.passed).count();
    match format {
        OutputFormat::Json => emit_json(&reports)?,
        OutputFormat::Text => {
            for r in &reports {
                println!("{}", r.line());
            }
            println!("{} checks, {} passed", reports.len(), reports.len() - failed);
        }
    }
    if failed > 0 {
        return Err(Error::internal(format!(
            "{failed} of {} verification checks failed",
            reports.len()
        )));
    }
    Ok(())
}

#[derive(Debug, Serialize, Deserialize)]
pub struct RewriteReport {
    pub m: usize,
    pub s: u32,
    /// The reduced input word in `index^exponent` syntax.
    pub word: String,
    pub count: usize,
    pub factors: Vec<SignedFactor>,
}

/// Smallest cube bound the lifted path fits in: the largest coordinate the
/// walk from the origin reaches, with floor 1. Within one syllable the
/// coordinate moves monotonically, so syllable boundaries see the extremes.
fn minimal_bound(w: &freegroup::Word) -> Result<u32> {
    let mut coords = vec![BigInt::from(0); w.m()];
    let mut max_seen = BigInt::from(1);
    for (g, e) in w.syllables() {
        coords[g - 1] += e;
        if coords[g - 1] > max_seen {
            max_seen = coords[g - 1].clone();
        }
    }
    u32::try_from(&max_seen)
        .map_err(|_| Error::validation("the lifted path needs a bound beyond u32".to_string()))
}

fn cmd_rewrite(
    word_text: &str,
    generators: Option<usize>,
    bound: Option<u32>,
    format: OutputFormat,
) -> Result<()> {
    let syllables = input::parse_word_syllables(word_text)?;
    let m = generators.unwrap_or_else(|| input::infer_alphabet(&syllables));
    let w = freegroup::reduce(m, &syllables)?;
    let s = match bound {
        Some(s) => s,
        None => minimal_bound(&w)?,
    };
    let fw = express_in_basis(&w, m, s)?;
    let report = RewriteReport {
        m,
        s,
        word: input::format_word(&w),
        count: fw.len(),
        factors: fw.factors().to_vec(),
    };
    match format {
        OutputFormat::Json => emit_json(&report),
        OutputFormat::Text => {
            println!("m: {}", report.m);
            println!("s: {}", report.s);
            println!("word: {}", report.word);
            println!("factors: {}", report.count);
            for f in &report.factors {
                println!("{}", input::format_factor(f)?);
            }
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_subcommands() {
        let config =
            RunConfig::try_parse_from(["raagc", "count", "--input", "k.json", "--bound", "2"])
                .unwrap();
        match config.command {
            Command::Count { bound, groups, .. } => {
                assert_eq!(bound, 2);
                assert!(groups.is_none());
            }
            other => panic!("parsed {other:?}"),
        }
        assert_eq!(config.format, OutputFormat::Text);
    }

    #[test]
    fn rejects_zero_bound() {
        assert!(RunConfig::try_parse_from([
            "raagc", "count", "--input", "k.json", "--bound", "0"
        ])
        .is_err());
    }

    #[test]
    fn verify_has_seed_default() {
        let config = RunConfig::try_parse_from(["raagc", "verify"]).unwrap();
        match config.command {
            Command::Verify { seed } => assert_eq!(seed, 42),
            other => panic!("parsed {other:?}"),
        }
    }

    #[test]
    fn minimal_bound_tracks_the_walk() {
        let w = freegroup::word_from_i64(2, &[(1, 3), (2, 1), (1, -3), (2, -1)]).unwrap();
        assert_eq!(minimal_bound(&w).unwrap(), 3);
        let w = freegroup::word_from_i64(2, &[(1, 1), (1, -1)]).unwrap();
        assert_eq!(minimal_bound(&w).unwrap(), 1);
    }

    #[test]
    fn exit_codes_separate_error_kinds() {
        assert_eq!(error_exit_code(&Error::validation("rejected")), 1);
        assert_eq!(error_exit_code(&Error::internal("oracle disagreement")), 2);
    }
}
