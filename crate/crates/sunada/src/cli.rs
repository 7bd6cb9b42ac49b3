//! The `sunada` command line.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use sunada_core::catalog;
use sunada_core::character::linear_characters;
use sunada_core::gassmann::weak_conjugacy;
use sunada_core::graph::{VoltageGraph, DEFAULT_OPERATOR_CAP};
use sunada_core::homwide::{
    contains_regular, orbifold_action_character, seifert_weber, surface_action_character, wideness_report,
    ActionCharacter, Search, SearchField, Wideness, DEFAULT_SEARCH_BUDGET,
};
use sunada_core::monomial::MonomialRep;
use sunada_core::wreath::{choose_ell, komatsu_row, table1, IsometryOptions, IsometryVerdict};
use sunada_core::{FiniteGroup, Subgroup};

use crate::acceptance;
use crate::bench::{
    kernel_case, random_identity_checks, random_kernel_cases, regular_check, snt_check, solo_bench, sunada_bench,
    wreath_bench, SoloReport,
};
use crate::error::{Error, Result};
use crate::format::{group_to_text, load_graph, GroupFile, ModuleFile};
use crate::parallel::{isometry_parallel, pool};
use crate::spectrum::DEFAULT_TOLERANCE;

#[derive(Parser, Debug)]
#[command(name = "sunada", version, about = "Weak conjugacy, wreath isometry tests and twisted Laplacians on graph covers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Report format on stdout (or --output).
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    /// Seed for randomized instances.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Relative tolerance for eigenvalue comparisons.
    #[arg(long, global = true, default_value_t = DEFAULT_TOLERANCE)]
    pub tolerance: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Weak conjugacy of two subgroups.
    #[command(subcommand)]
    Gassmann(GassmannCommand),
    /// Decide conjugacy of two subgroups through the wreath-product test.
    Isometry(IsometryArgs),
    /// Homological wideness and condition (*).
    #[command(subcommand)]
    Homwide(HomwideCommand),
    /// Twisted Laplacians on voltage-graph covers.
    #[command(subcommand)]
    Graph(GraphCommand),
    /// Recompute the table of examples.
    Table1 {
        /// List every column that differs from the reference value.
        #[arg(long)]
        diff: bool,
    },
    /// Run the acceptance suite.
    Selftest {
        /// Run only these criteria.
        #[arg(long, value_delimiter = ',')]
        only: Vec<usize>,
    },
    /// List the built-in examples, or print one as a group file.
    Catalog { name: Option<String> },
}

#[derive(Args, Debug, Clone)]
pub struct PairArgs {
    pub group: PathBuf,
    /// First subgroup (default: the first block in the file).
    #[arg(long)]
    pub h1: Option<String>,
    /// Second subgroup (default: the second block).
    #[arg(long)]
    pub h2: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum GassmannCommand {
    Check(PairArgs),
}

#[derive(Args, Debug)]
pub struct IsometryArgs {
    /// `[test] <groupfile>`.
    #[arg(num_args = 1..=2, required = true)]
    pub args: Vec<String>,
    #[arg(long)]
    pub h1: Option<String>,
    #[arg(long)]
    pub h2: Option<String>,
    #[arg(long)]
    pub ell: Option<u64>,
    /// Allow ell = 2 after checking weak conjugacy of the lifted subgroups.
    #[arg(long)]
    pub pintonello: bool,
    /// Accept an explicit ell dividing |G|.
    #[arg(long)]
    pub allow_shared_factor: bool,
}

#[derive(Subcommand, Debug)]
pub enum HomwideCommand {
    /// Wideness of a module, and condition (*) for every subgroup in the
    /// group file.
    Check {
        group: PathBuf,
        module: PathBuf,
        #[arg(long, default_value_t = DEFAULT_SEARCH_BUDGET)]
        budget: usize,
    },
    /// The Seifert-Weber module over F_5.
    SeifertWeber,
    /// Free action on a closed surface of Euler characteristic `euler`.
    Surface {
        group: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        euler: i64,
    },
    /// Branched action with quotient of Euler characteristic `euler`, one
    /// cone point per named cyclic subgroup.
    Orbifold {
        group: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        euler: i64,
        #[arg(long, value_delimiter = ',')]
        branch: Vec<String>,
    },
}

#[derive(Subcommand, Debug)]
pub enum GraphCommand {
    /// Exact and spectral identities for a base graph and a pair of
    /// subgroups.
    Bench {
        #[command(flatten)]
        pair: PairArgs,
        graph: PathBuf,
        /// Compare the four solo operators for every pair of characters.
        #[arg(long)]
        solo: bool,
        /// Realize the wreath cover and compare spectrally.
        #[arg(long)]
        wreath: bool,
        #[arg(long)]
        ell: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_OPERATOR_CAP)]
        cap: usize,
        #[arg(long, default_value_t = DEFAULT_SEARCH_BUDGET)]
        budget: usize,
    },
    /// Randomized kernel-multiplicity instances.
    Random {
        #[arg(long, default_value_t = 200)]
        count: usize,
        #[arg(long, default_value_t = 1024)]
        max_size: usize,
    },
}

/// A finished command: its report, a human summary, and whether every
/// mathematical check passed.
#[derive(Debug)]
pub struct Outcome {
    pub report: Value,
    pub summary: String,
    pub pass: bool,
}

impl Outcome {
    fn new(report: impl Serialize, summary: String, pass: bool) -> Result<Self> {
        Ok(Self { report: serde_json::to_value(report)?, summary, pass })
    }
}

/// Parses `argv`, runs the command and returns the exit code: 0 on
/// success, 1 when a mathematical check fails, 2 on bad input.
pub fn main_with_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_check_failure() {
                1
            } else {
                2
            }
        }
    }
}

fn run(cli: &Cli) -> Result<i32> {
    let outcome = pool(cli.jobs)?.install(|| execute(cli))?;
    let body = match (cli.format, &cli.command) {
        (_, Command::Catalog { name: Some(_) }) => outcome.report.as_str().unwrap_or_default().to_owned(),
        (Format::Json, _) => serde_json::to_string_pretty(&outcome.report)? + "\n",
        (Format::Text, _) => outcome.summary.clone(),
    };
    match &cli.output {
        Some(path) => std::fs::write(path, &body).map_err(|source| Error::Io { path: path.clone(), source })?,
        None => {
            let _ = std::io::stdout().write_all(body.as_bytes());
        }
    }
    if cli.format == Format::Json || cli.output.is_some() {
        eprint!("{}", outcome.summary);
    }
    Ok(if outcome.pass { 0 } else { 1 })
}

pub fn execute(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Gassmann(GassmannCommand::Check(pair)) => gassmann(pair),
        Command::Isometry(args) => isometry(args),
        Command::Homwide(cmd) => homwide(cmd),
        Command::Graph(GraphCommand::Bench { pair, graph, solo, wreath, ell, cap, budget }) => {
            graph_bench(pair, graph, *solo, *wreath, *ell, *cap, *budget, cli.tolerance)
        }
        Command::Graph(GraphCommand::Random { count, max_size }) => graph_random(cli.seed, *count, *max_size, cli.tolerance),
        Command::Table1 { diff } => table(*diff),
        Command::Selftest { only } => selftest(cli.seed, only),
        Command::Catalog { name } => catalog_command(name.as_deref()),
    }
}

fn cycles(g: &FiniteGroup, x: usize) -> String {
    let p = g.element(x);
    if p.is_identity() {
        "()".into()
    } else {
        p.to_cycle_string()
    }
}

fn load_pair(pair: &PairArgs) -> Result<GroupFile> {
    let file = GroupFile::load(&pair.group)?;
    file.pair(pair.h1.as_deref(), pair.h2.as_deref())?;
    Ok(file)
}

fn gassmann(pair: &PairArgs) -> Result<Outcome> {
    let file = load_pair(pair)?;
    let g = &file.group;
    let (h1, h2) = file.pair(pair.h1.as_deref(), pair.h2.as_deref())?;
    let r = weak_conjugacy(g, h1, h2)?;
    let classes: Vec<Value> = r
        .class_profile
        .iter()
        .enumerate()
        .map(|(c, &(a, b))| {
            json!({
                "representative": cycles(g, g.class_representative(c)),
                "size": g.class_size(c),
                "h1": a,
                "h2": b,
            })
        })
        .collect();
    let report = json!({
        "group_order": g.order(),
        "subgroup_orders": [h1.order(), h2.order()],
        "weakly_conjugate": r.weakly_conjugate,
        "conjugate": r.conjugate,
        "conjugator": r.conjugator.map(|x| cycles(g, x)),
        "induced_equal": r.induced_equal,
        "a_matrix": r.a_matrix,
        "class_profile": classes,
    });
    let summary = format!(
        "|G| = {}, |H1| = {}, |H2| = {}: weakly conjugate {}, conjugate {}\n",
        g.order(),
        h1.order(),
        h2.order(),
        r.weakly_conjugate,
        r.conjugate
    );
    Outcome::new(report, summary, true)
}

fn verdict_json(g: &FiniteGroup, v: &IsometryVerdict) -> Value {
    json!({
        "equivalent": v.equivalent,
        "ell": v.ell,
        "pintonello": v.pintonello,
        "n": v.n,
        "witness": v.witness.as_ref().map(|w| json!({
            "index": w.index,
            "scale": w.scale,
            "support": w.support,
            "base_index": w.base_index,
        })),
        "checks_performed": v.checks_performed,
        "budget": v.budget,
        "characters_examined": v.characters_examined,
        "a11": v.a11,
        "lifted_weakly_conjugate": v.lifted_weakly_conjugate,
        "conjugate": v.conjugator.is_some(),
        "conjugator": v.conjugator.map(|x| cycles(g, x)),
    })
}

fn isometry(args: &IsometryArgs) -> Result<Outcome> {
    let path = match args.args.as_slice() {
        [file] => file,
        [word, file] if word == "test" => file,
        _ => return Err(Error::Usage("expected `isometry [test] <groupfile>`".into())),
    };
    let pair = PairArgs { group: path.into(), h1: args.h1.clone(), h2: args.h2.clone() };
    let file = load_pair(&pair)?;
    let (h1, h2) = file.pair(pair.h1.as_deref(), pair.h2.as_deref())?;
    let options = IsometryOptions {
        ell: args.ell,
        pintonello: args.pintonello,
        allow_shared_factor: args.allow_shared_factor,
    };
    let v = isometry_parallel(&file.group, h1, h2, options)?;
    let summary = format!(
        "{}: ell = {}, {} of {} comparisons, {} characters examined\n",
        if v.equivalent { "equivalent" } else { "not equivalent" },
        v.ell,
        v.checks_performed,
        v.budget,
        v.characters_examined
    );
    Outcome::new(verdict_json(&file.group, &v), summary, true)
}

fn search_json<V: Serialize>(s: &Search<V>) -> Value {
    match s {
        Search::Found(v) => json!({ "status": "found", "witness": v }),
        Search::Absent(c) => json!({ "status": "absent", "certificate": format!("{c:?}") }),
        Search::Unknown { candidates } => json!({ "status": "unknown", "candidates": candidates }),
    }
}

fn search_word<V>(s: &Search<V>) -> &'static str {
    match s {
        Search::Found(_) => "yes",
        Search::Absent(_) => "no",
        Search::Unknown { .. } => "unknown",
    }
}

fn rational_search<F: SearchField>(g: &FiniteGroup, m: &sunada_core::homwide::GModule<F>, budget: usize) -> Result<Search<Vec<String>>>
where
    F::Elem: std::fmt::Display,
{
    Ok(match contains_regular(g, m, budget)? {
        Search::Found(v) => Search::Found(v.iter().map(ToString::to_string).collect()),
        Search::Absent(c) => Search::Absent(c),
        Search::Unknown { candidates } => Search::Unknown { candidates },
    })
}

fn homwide(cmd: &HomwideCommand) -> Result<Outcome> {
    match cmd {
        HomwideCommand::Check { group, module, budget } => {
            let file = GroupFile::load(group)?;
            let g = &file.group;
            let m = ModuleFile::load(module, g)?;
            let subgroups: Vec<Subgroup> = file.subgroups.iter().map(|(_, h)| h.clone()).collect();
            let mut summary = String::new();
            let (modular, rational) = match &m {
                ModuleFile::Modular(m) => (Some(m.clone()), None),
                ModuleFile::Rational(q) => {
                    let over_q = rational_search(g, q, *budget)?;
                    let ell = choose_ell(g.order() as u64);
                    let reduced = q.reduce(g, ell).ok();
                    (reduced, Some((over_q, ell)))
                }
            };
            let mut report = json!({ "group_order": g.order(), "dim": m.dim() });
            let mut pass = true;
            if let Some((over_q, ell)) = &rational {
                let _ = writeln!(summary, "over Q: contains the regular module: {}", search_word(over_q));
                report["rational"] = json!({ "homologically_wide": search_json(over_q), "reduced_mod": ell });
            }
            if let Some(mm) = &modular {
                let w = wideness_report(g, mm, &subgroups, *budget)?;
                let _ = writeln!(summary, "over F_{}: contains the regular module: {}", mm.ell(), search_word(&w.homologically_wide));
                let stars: Vec<Value> = file
                    .subgroups
                    .iter()
                    .zip(&w.condition_star)
                    .map(|((name, _), s)| {
                        let _ = writeln!(summary, "  condition (*) for {name}: {}", search_word(s));
                        json!({ "subgroup": name, "result": search_json(s) })
                    })
                    .collect();
                report["field"] = json!(format!("F{}", mm.ell()));
                report["homologically_wide"] = search_json(&w.homologically_wide);
                report["condition_star"] = json!(stars);
                // Wide over Q forces wide over F_ell for ell coprime to |G|.
                if let Some((Search::Found(_), _)) = &rational {
                    if w.homologically_wide.is_absent() {
                        pass = false;
                        let _ = writeln!(summary, "inconsistent: wide over Q but not over F_{}", mm.ell());
                    }
                }
            }
            Outcome::new(report, summary, pass)
        }
        HomwideCommand::SeifertWeber => {
            let sw = seifert_weber()?;
            let report = json!({
                "relations_hold": sw.relations_hold,
                "order": sw.order,
                "class_sizes_match_s5": sw.class_sizes_match_s5,
                "traces": sw.traces,
                "expected_traces": sw.expected_traces,
                "representative_classes": sw.representative_classes,
                "listed_word_order": sw.c_inv_r_c2_r_c_order,
                "r_cyclic": sw.r_cyclic,
                "crcr_cyclic": sw.crcr_cyclic,
                "crcr_order": sw.crcr_order,
                "integral_homology": sw.integral_homology,
                "pass": sw.all_checks_pass(),
            });
            let summary = format!(
                "Seifert-Weber: order {}, traces {:?}, cyclic vectors {} / {}: {}\n",
                sw.order,
                sw.traces,
                sw.r_cyclic,
                sw.crcr_cyclic,
                if sw.all_checks_pass() { "pass" } else { "FAIL" }
            );
            Outcome::new(report, summary, sw.all_checks_pass())
        }
        HomwideCommand::Surface { group, euler } => {
            let file = GroupFile::load(group)?;
            let a = surface_action_character(&file.group, *euler)?;
            let expected = if file.group.order() == 1 || *euler < 0 { Wideness::Wide } else { Wideness::NotWide };
            action_outcome(&a, a.verdict == expected)
        }
        HomwideCommand::Orbifold { group, euler, branch } => {
            let file = GroupFile::load(group)?;
            let cs: Vec<Subgroup> = branch.iter().map(|n| file.subgroup(n).cloned()).collect::<Result<_>>()?;
            let a = orbifold_action_character(&file.group, *euler, &cs)?;
            action_outcome(&a, true)
        }
    }
}

fn action_outcome(a: &ActionCharacter, pass: bool) -> Result<Outcome> {
    let verdict = match a.verdict {
        Wideness::Wide => "wide",
        Wideness::NotWide => "not wide",
        Wideness::Inconclusive => "inconclusive",
    };
    let report = json!({
        "euler_characteristic": a.euler_characteristic,
        "degree": a.character.degree().to_string(),
        "linear_multiplicities": a.linear_multiplicities.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "verdict": verdict,
    });
    Outcome::new(report, format!("chi = {}: {verdict}\n", a.euler_characteristic), pass)
}

#[derive(Serialize)]
struct SoloEntry {
    chi1: usize,
    chi2: usize,
    report: SoloReport,
}

#[allow(clippy::too_many_arguments)]
fn graph_bench(
    pair: &PairArgs,
    graph: &std::path::Path,
    solo: bool,
    wreath: bool,
    ell: Option<u64>,
    cap: usize,
    budget: usize,
    tol: f64,
) -> Result<Outcome> {
    let file = load_pair(pair)?;
    let g = &file.group;
    let (h1, h2) = file.pair(pair.h1.as_deref(), pair.h2.as_deref())?;
    let x: VoltageGraph = load_graph(graph, g)?;
    let mut summary = String::new();
    let mut pass = true;

    let connected = x.cover_is_connected(g, &g.trivial_subgroup())?;
    let mut report = json!({
        "base": {
            "vertices": x.vertex_count(),
            "edges": x.edges().len(),
            "holonomy_order": x.holonomy_group(g)?.order(),
            "g_cover_connected": connected,
        }
    });
    let mut kernels = Vec::new();
    for (name, h) in [("H1", h1), ("H2", h2)] {
        let rho = MonomialRep::permutation(g, h)?;
        if rho.dim() * x.vertex_count() <= cap {
            kernels.push(kernel_case(&x, g, &rho, &format!("Ind_{name} 1"), cap)?);
        }
    }
    if g.order() * x.vertex_count() <= cap {
        kernels.push(kernel_case(&x, g, &MonomialRep::regular(g)?, "regular", cap)?);
        let r = regular_check(&x, g, tol, cap)?;
        pass &= r.pass;
        let _ = writeln!(summary, "regular representation vs G-cover: {}", word(r.pass));
        report["regular"] = serde_json::to_value(r)?;
    }
    pass &= kernels.iter().all(|k| k.pass);
    let _ = writeln!(summary, "kernel multiplicities: {}", word(kernels.iter().all(|k| k.pass)));
    report["kernels"] = serde_json::to_value(&kernels)?;

    let mut snt = Vec::new();
    for h in [h1, h2] {
        if x.cover_is_connected(g, h)? && h.index() * x.vertex_count() <= cap {
            let c = snt_check(&x, g, h, &MonomialRep::trivial(h.as_group()), tol, cap)?;
            pass &= c.pass;
            snt.push(c);
        }
    }
    let _ = writeln!(summary, "induction identities: {}", word(snt.iter().all(|c| c.pass)));
    report["induction"] = serde_json::to_value(&snt)?;

    let s = sunada_bench(&x, g, h1, h2, tol, cap)?;
    pass &= s.pass;
    let _ = writeln!(
        summary,
        "Schreier covers ({} / {} vertices): isospectral {}, conjugate {}, max deviation {:?}: {}",
        s.vertices[0],
        s.vertices[1],
        s.isospectral,
        s.conjugate,
        s.max_deviation,
        word(s.pass)
    );
    report["schreier"] = serde_json::to_value(&s)?;

    if solo {
        let c1 = linear_characters(h1.as_group())?;
        let c2 = linear_characters(h2.as_group())?;
        let mut entries = Vec::new();
        for (i, a) in c1.iter().enumerate() {
            for (j, b) in c2.iter().enumerate() {
                let r = solo_bench(&x, g, h1, a, h2, b, tol, cap)?;
                pass &= r.pass;
                entries.push(SoloEntry { chi1: i, chi2: j, report: r });
            }
        }
        let agree = entries.iter().filter(|e| e.report.kernels_agree).count();
        let _ = writeln!(
            summary,
            "solo operators: {agree} of {} character pairs have equal kernels: {}",
            entries.len(),
            word(entries.iter().all(|e| e.report.pass))
        );
        report["solo"] = serde_json::to_value(&entries)?;
    }
    if wreath {
        let w = wreath_bench(&x, g, h1, h2, ell, budget, tol, cap)?;
        pass &= w.pass;
        let _ = writeln!(
            summary,
            "wreath cover: {} vertices, ell = {}, verdict group {} / spectral {}: {}",
            w.cover_vertices,
            w.ell,
            w.group_verdict,
            w.spectral_verdict,
            word(w.pass)
        );
        report["wreath"] = serde_json::to_value(&w)?;
    }
    report["pass"] = json!(pass);
    Outcome::new(report, summary, pass)
}

fn word(pass: bool) -> &'static str {
    if pass {
        "pass"
    } else {
        "FAIL"
    }
}

fn graph_random(seed: u64, count: usize, max_size: usize, tol: f64) -> Result<Outcome> {
    let cases = random_kernel_cases(seed, count, max_size)?;
    let identities = random_identity_checks(seed, (count / 25).max(1), tol, max_size)?;
    let failures = cases.iter().filter(|c| !c.pass).count() + identities.iter().filter(|c| !c.pass).count();
    let summary = format!(
        "{} kernel instances, {} identities, {failures} failures\n",
        cases.len(),
        identities.len()
    );
    let report = json!({
        "seed": seed,
        "max_size": max_size,
        "kernels": cases,
        "identities": identities,
        "failures": failures,
    });
    Outcome::new(report, summary, failures == 0)
}

const COLUMNS: [&str; 5] = ["|G|", "|H|", "ell", "dim", "checks"];

fn table(diff: bool) -> Result<Outcome> {
    let rows = table1()?;
    let k = komatsu_row(3)?;
    let mut summary = String::from("example            |G|   |H|  ell   dim  checks\n");
    let mut pass = true;
    for r in &rows {
        let c = r.computed();
        let _ = writeln!(summary, "{:<16} {:>5} {:>5} {:>4} {:>5} {:>7}", r.name, c[0], c[1], c[2], c[3], c[4]);
        if diff {
            for (col, (a, b)) in COLUMNS.iter().zip(c.iter().zip(&r.reference)) {
                if a != b {
                    let _ = writeln!(summary, "  {col}: computed {a}, reference {b}");
                }
            }
        }
        pass &= r.matches();
    }
    pass &= k.matches_reference_p3();
    let _ = writeln!(
        summary,
        "{:<16} (p^3)! ~ {}e{} {:>5} {:>4} ~{}e{} {:>7}  (bounds: ell <= {}, checks <= {})",
        "Komatsu p=3",
        k.group_magnitude.0,
        k.group_magnitude.1,
        k.subgroup_order,
        k.ell,
        k.dimension_magnitude.0,
        k.dimension_magnitude.1,
        k.budget,
        k.ell_bound,
        k.budget_bound
    );
    if diff {
        let _ = writeln!(summary, "{}", if pass { "all rows match" } else { "rows differ" });
    }
    let report = json!({
        "rows": rows.iter().map(|r| json!({
            "name": r.name,
            "computed": r.computed(),
            "reference": r.reference,
            "match": r.matches(),
        })).collect::<Vec<_>>(),
        "komatsu": {
            "p": k.p,
            "group_order": k.group_order.to_string(),
            "subgroup_order": k.subgroup_order,
            "subgroup_abelianization": k.subgroup_abelianization,
            "ell": k.ell,
            "ell_bound": k.ell_bound,
            "dimension": k.dimension.to_string(),
            "checks": k.budget,
            "checks_bound": k.budget_bound,
            "matches_reference": k.matches_reference_p3(),
        },
        "pass": pass,
    });
    Outcome::new(report, summary, pass)
}

fn selftest(seed: u64, only: &[usize]) -> Result<Outcome> {
    let ids: Vec<usize> = if only.is_empty() { (1..=acceptance::CRITERIA.len()).collect() } else { only.to_vec() };
    let results: Vec<_> = ids.iter().map(|&id| acceptance::run(id, seed)).collect();
    let mut summary = String::new();
    for r in &results {
        let _ = writeln!(summary, "[{}] {}. {}: {} ({:.1?})", if r.pass { "PASS" } else { "FAIL" }, r.id, r.title, r.detail, r.elapsed);
    }
    let pass = results.iter().all(|r| r.pass);
    Outcome::new(json!({ "seed": seed, "criteria": results, "pass": pass }), summary, pass)
}

fn catalog_command(name: Option<&str>) -> Result<Outcome> {
    match name {
        None => {
            let mut entries = Vec::new();
            let mut summary = String::new();
            for &n in catalog::NAMES {
                let t = catalog::by_name(n)?;
                let _ = writeln!(summary, "{n:<18} |G| = {:<5} |H1| = {:<3} |H2| = {}", t.group.order(), t.h1.order(), t.h2.order());
                entries.push(json!({
                    "name": n,
                    "group_order": t.group.order(),
                    "subgroup_orders": [t.h1.order(), t.h2.order()],
                }));
            }
            Outcome::new(entries, summary, true)
        }
        Some(n) => {
            let t = catalog::by_name(n)?;
            let text = format!("# {}\n{}", t.name, group_to_text(&t.group, &[("H1", &t.h1), ("H2", &t.h2)]));
            Outcome::new(text, format!("{}: |G| = {}\n", t.name, t.group.order()), true)
        }
    }
}
