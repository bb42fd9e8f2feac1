//! Command implementations behind the `ut-lab` binary.
//!
//! Every command produces a [`Report`]. Failing verdicts carry a witness in
//! text form, and the witness is re-checked with an independent library call
//! before the report is returned.

use std::fmt::Write as _;
use std::path::Path;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use utlab::catalog::{self, GroupFile};
use utlab::harness::{self, CheckStatus, HarnessOptions, Suite};
use utlab::num_theory::{agl_criterion, sieve_problem1, subgroup_order};
use utlab::semigroup::{is_regular_in, regular_for_all_rank_k_direct};
use utlab::set_orbits::{is_ij_homogeneous, is_k_homogeneous, orbit_of_set, SetOrbitIndex};
use utlab::ut::{has_kut_with, verify_witness, DeciderChoice, UtOptions, UtStatus, UtWitness};
use utlab::{Error, PermGroup, Result, Transformation};

/// Seed used when `--seed` is not given.
pub const DEFAULT_SEED: u64 = 2024;

#[derive(Parser, Debug)]
#[command(
    name = "ut-lab",
    about = "Homogeneity, universal transversal and regularity deciders for permutation groups",
    version
)]
pub struct Cli {
    /// Print the report as JSON
    #[arg(long, global = true)]
    pub json: bool,

    /// Seed for every randomized step
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,

    /// Number of worker threads for parallel library code (0 = all cores)
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,

    #[command(subcommand)]
    pub command: Commands,
}

#[derive(Subcommand, Debug)]
pub enum Commands {
    /// Decide (i,j)-homogeneity; i = j means k-homogeneity
    Homog {
        /// Group address: catalog:NAME[@DEGREE] or file:PATH
        #[arg(long)]
        group: String,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        j: usize,
    },
    /// Decide the k-universal transversal property
    Ut {
        /// Group address: catalog:NAME[@DEGREE] or file:PATH
        #[arg(long)]
        group: String,
        #[arg(long)]
        k: usize,
        /// Print the witness partition of a failing verdict
        #[arg(long)]
        witness: bool,
        /// Complete decider used after the necessary-condition prunes
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
        /// Skip the necessary-condition prunes
        #[arg(long)]
        no_prunes: bool,
        /// For k = 3, try regular two-graph certificates first
        #[arg(long)]
        two_graph: bool,
        /// Frontier cap for the extension decider
        #[arg(long)]
        frontier_cap: Option<usize>,
    },
    /// Regularity of one map, or of every map of a given rank, in <a, G>
    Regular(RegularArgs),
    /// The AGL(1,p) criterion for one prime, or the sieve over p = 11 mod 12
    Agl(AglArgs),
    /// Run a reproduction suite
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::Small)]
        suite: SuiteArg,
    },
}

#[derive(Args, Debug)]
pub struct RegularArgs {
    /// Group address: catalog:NAME[@DEGREE] or file:PATH
    #[arg(long)]
    pub group: String,
    /// Check every map of this rank
    #[arg(long, required_unless_present = "map", conflicts_with = "map")]
    pub rank: Option<usize>,
    /// Check one map, given by its 1-based images, comma separated
    #[arg(long, value_delimiter = ',')]
    pub map: Option<Vec<usize>>,
    /// With --rank: test every (kernel, image) pair directly instead of via k-ut
    #[arg(long)]
    pub direct: bool,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct AglArgs {
    /// A prime p >= 5
    #[arg(long)]
    pub p: Option<u64>,
    /// Run the criterion for every prime p = 11 mod 12 up to this bound
    #[arg(long)]
    pub sieve_limit: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Auto,
    Naive,
    Extend,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Small,
    Paper,
    Long,
}

/// Verdict of one question.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Holds,
    Fails,
    Undecided,
    Error,
}

impl Outcome {
    /// Process exit code: 0 holds, 1 fails with witness, 2 undecided or error.
    pub fn exit_code(self) -> u8 {
        match self {
            Outcome::Holds => 0,
            Outcome::Fails => 1,
            Outcome::Undecided | Outcome::Error => 2,
        }
    }

    fn label(self) -> &'static str {
        match self {
            Outcome::Holds => "holds",
            Outcome::Fails => "FAILS",
            Outcome::Undecided => "undecided",
            Outcome::Error => "error",
        }
    }
}

/// Which group a report is about.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupInfo {
    pub name: String,
    pub degree: usize,
    /// Decimal; orders can exceed 64 bits.
    pub order: String,
}

/// One answered question.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub question: String,
    pub outcome: Outcome,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
    /// Canonical text of the witness; present on every failing verdict.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub details: Vec<String>,
}

impl Verdict {
    fn new(question: impl Into<String>, outcome: Outcome) -> Self {
        Verdict {
            question: question.into(),
            outcome,
            method: None,
            witness: None,
            details: Vec::new(),
        }
    }
}

/// Everything a command produced.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    /// The command line, as given.
    pub command: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupInfo>,
    pub outcome: Outcome,
    pub verdicts: Vec<Verdict>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub elapsed_ms: u64,
}

impl Report {
    pub fn exit_code(&self) -> u8 {
        self.outcome.exit_code()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Report> {
        serde_json::from_str(text)
    }

    /// Human-readable rendering. Witnesses of failing verdicts are always
    /// shown unless `hide_witnesses` is set.
    pub fn to_text(&self, hide_witnesses: bool) -> String {
        let mut out = String::new();
        if let Some(g) = &self.group {
            let _ = writeln!(out, "group {}  degree {}  order {}", g.name, g.degree, g.order);
        }
        for v in &self.verdicts {
            let _ = write!(out, "{}: {}", v.question, v.outcome.label());
            if let Some(m) = &v.method {
                let _ = write!(out, "  [{m}]");
            }
            out.push('\n');
            if let Some(w) = &v.witness {
                if !hide_witnesses {
                    let _ = writeln!(out, "  witness: {w}");
                }
            }
            for d in &v.details {
                let _ = writeln!(out, "  {d}");
            }
        }
        if let Some(e) = &self.error {
            let _ = writeln!(out, "error: {e}");
        }
        let _ = writeln!(out, "({:.2} s)", self.elapsed_ms as f64 / 1000.0);
        out
    }
}

/// Overall outcome of a list of verdicts: any failure wins, then any
/// undecided, then holds.
fn combine(verdicts: &[Verdict]) -> Outcome {
    let has = |o: Outcome| verdicts.iter().any(|v| v.outcome == o);
    if has(Outcome::Error) {
        Outcome::Error
    } else if has(Outcome::Fails) {
        Outcome::Fails
    } else if has(Outcome::Undecided) || verdicts.is_empty() {
        Outcome::Undecided
    } else {
        Outcome::Holds
    }
}

/// A resolved group address.
pub struct LoadedGroup {
    pub info: GroupInfo,
    pub group: PermGroup,
}

/// Resolves `catalog:NAME[@DEGREE]` or `file:PATH`. A bare name is treated as
/// a catalog query.
pub fn load_group(address: &str) -> Result<LoadedGroup> {
    let (name, group) = if let Some(path) = address.strip_prefix("file:") {
        let gf = GroupFile::load(Path::new(path))?;
        let group = gf.to_group()?;
        (gf.name.clone(), group)
    } else {
        let query = address.strip_prefix("catalog:").unwrap_or(address);
        let spec = catalog::lookup(query)?;
        let group = catalog::build(&spec)?;
        (spec.name.clone(), group)
    };
    Ok(LoadedGroup {
        info: GroupInfo {
            name,
            degree: group.degree(),
            order: group.order().to_string(),
        },
        group,
    })
}

fn internal(msg: impl Into<String>) -> Error {
    Error::Internal(msg.into())
}

/// Runs a parsed command. Library errors become an `error` report.
pub fn run(cli: &Cli, argv: Vec<String>) -> Report {
    let start = Instant::now();
    let mut group_info = None;
    let result = execute(cli, &mut group_info);
    let elapsed_ms = start.elapsed().as_millis() as u64;
    match result {
        Ok(verdicts) => Report {
            command: argv,
            group: group_info,
            outcome: outcome_of(&cli.command, &verdicts),
            verdicts,
            error: None,
            elapsed_ms,
        },
        Err(e) => Report {
            command: argv,
            group: group_info,
            outcome: Outcome::Error,
            verdicts: Vec::new(),
            error: Some(e.to_string()),
            elapsed_ms,
        },
    }
}

fn outcome_of(command: &Commands, verdicts: &[Verdict]) -> Outcome {
    match command {
        // the sieve is a table; it "holds" once every row is computed
        Commands::Agl(AglArgs {
            sieve_limit: Some(_), ..
        }) => Outcome::Holds,
        _ => combine(verdicts),
    }
}

fn execute(cli: &Cli, info: &mut Option<GroupInfo>) -> Result<Vec<Verdict>> {
    let mut with_group = |address: &str| -> Result<PermGroup> {
        let loaded = load_group(address)?;
        *info = Some(loaded.info);
        Ok(loaded.group)
    };
    match &cli.command {
        Commands::Homog { group, i, j } => cmd_homog(&with_group(group)?, *i, *j).map(|v| vec![v]),
        Commands::Ut {
            group,
            k,
            method,
            no_prunes,
            two_graph,
            frontier_cap,
            ..
        } => {
            let mut opts = UtOptions {
                decider: match method {
                    Method::Auto => DeciderChoice::Auto,
                    Method::Naive => DeciderChoice::Naive,
                    Method::Extend => DeciderChoice::Extension,
                },
                prunes: !no_prunes,
                two_graph: *two_graph,
                seed: cli.seed,
                ..UtOptions::default()
            };
            if let Some(cap) = frontier_cap {
                opts.frontier_cap = *cap;
            }
            cmd_ut(&with_group(group)?, *k, &opts).map(|v| vec![v])
        }
        Commands::Regular(args) => {
            let g = with_group(&args.group)?;
            match (&args.rank, &args.map) {
                (Some(k), None) => cmd_regular_rank(&g, *k, args.direct, cli.seed).map(|v| vec![v]),
                (None, Some(images)) => cmd_regular_map(&g, images).map(|v| vec![v]),
                _ => Err(Error::InvalidArgument("give exactly one of --rank and --map".into())),
            }
        }
        Commands::Agl(AglArgs { p: Some(p), .. }) => cmd_agl(*p).map(|v| vec![v]),
        Commands::Agl(AglArgs {
            sieve_limit: Some(limit),
            ..
        }) => Ok(cmd_sieve(*limit)),
        Commands::Agl(_) => Err(Error::InvalidArgument("give exactly one of --p and --sieve-limit".into())),
        Commands::Verify { suite } => {
            let suite = match suite {
                SuiteArg::Small => Suite::Small,
                SuiteArg::Paper => Suite::Paper,
                SuiteArg::Long => Suite::Long,
            };
            Ok(cmd_verify(suite, cli.seed))
        }
    }
}

/// `(i,j)`-homogeneity; `i = j` uses the orbit count on `i`-sets.
pub fn cmd_homog(group: &PermGroup, i: usize, j: usize) -> Result<Verdict> {
    let question = if i == j {
        format!("{i}-homogeneous")
    } else {
        format!("({i},{j})-homogeneous")
    };
    if i == j {
        if i == 0 || i > group.degree() {
            return Err(Error::InvalidArgument(format!(
                "need 1 <= k <= n = {}, got k = {i}",
                group.degree()
            )));
        }
        if is_k_homogeneous(group, i)? {
            return Ok(Verdict::new(question, Outcome::Holds));
        }
        let index = SetOrbitIndex::build(group, i)?;
        let reps = index.representatives();
        let (a, b) = (&reps[0], &reps[1]);
        if orbit_of_set(group, a)?.contains(b) {
            return Err(internal("k-sets in distinct orbits were found in one orbit"));
        }
        let mut v = Verdict::new(question, Outcome::Fails);
        v.method = Some("set_orbits".into());
        v.witness = Some(format!("{a} and {b} lie in different orbits"));
        v.details.push(format!("{} orbits on {i}-sets", index.num_orbits()));
        return Ok(v);
    }
    let verdict = is_ij_homogeneous(group, i, j)?;
    if verdict.holds {
        return Ok(Verdict::new(question, Outcome::Holds));
    }
    let (small, big) = verdict
        .witness
        .ok_or_else(|| internal("failing (i,j) verdict without a witness"))?;
    if orbit_of_set(group, &small)?.members.iter().any(|s| s.is_subset_of(&big)) {
        return Err(internal(format!("witness ({small}, {big}) does not re-validate")));
    }
    let mut v = Verdict::new(question, Outcome::Fails);
    v.method = Some("set_orbits".into());
    v.witness = Some(format!("no image of {small} lies in {big}"));
    Ok(v)
}

fn method_tag<T: Serialize>(value: &T) -> String {
    serde_json::to_value(value)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default()
}

fn witness_text(w: &UtWitness) -> String {
    format!(
        "partition {} has no section in the orbit of {}",
        w.partition, w.orbit_representative
    )
}

/// The `k`-universal transversal property.
pub fn cmd_ut(group: &PermGroup, k: usize, opts: &UtOptions) -> Result<Verdict> {
    ut_verdict(group, k, opts).map(|(v, _)| v)
}

fn ut_verdict(group: &PermGroup, k: usize, opts: &UtOptions) -> Result<(Verdict, Option<UtWitness>)> {
    let verdict = has_kut_with(group, k, opts)?;
    let outcome = match verdict.status {
        UtStatus::Holds => Outcome::Holds,
        UtStatus::Fails => Outcome::Fails,
        UtStatus::Undecided => Outcome::Undecided,
    };
    let mut v = Verdict::new(format!("{k}-ut"), outcome);
    v.method = Some(method_tag(&verdict.method));
    if outcome == Outcome::Fails {
        let w = verdict
            .witness
            .as_ref()
            .ok_or_else(|| internal("failing k-ut verdict without a witness"))?;
        if !verify_witness(group, k, w)? {
            return Err(internal(format!("witness does not re-validate: {}", witness_text(w))));
        }
        v.witness = Some(witness_text(w));
    }
    for run in &verdict.extension_runs {
        v.details.push(format!(
            "extension from {} (seed {}): {}; frontier profile {:?}",
            run.orbit_representative,
            run.seed,
            if run.holds { "every partition met" } else { "bad partition" },
            run.profile
        ));
    }
    v.details.extend(verdict.notes.iter().cloned());
    Ok((v, verdict.witness))
}

/// Is every rank-`k` map regular in `⟨a, G⟩`?
pub fn cmd_regular_rank(group: &PermGroup, k: usize, direct: bool, seed: u64) -> Result<Verdict> {
    let n = group.degree();
    let question = format!("every rank-{k} map is regular");
    if k == 0 || k > n {
        return Err(Error::InvalidArgument(format!("need 1 <= rank <= n = {n}, got {k}")));
    }
    let mut v;
    let bad_map = if direct {
        let d = regular_for_all_rank_k_direct(group, k)?;
        v = Verdict::new(question, if d.regular { Outcome::Holds } else { Outcome::Fails });
        v.method = Some("direct".into());
        v.details.push(format!("{} kernel/image pairs tested", d.maps_checked));
        d.witness
    } else if k == 1 || k == n {
        // constant maps and permutations are always regular
        v = Verdict::new(question, Outcome::Holds);
        v.method = Some("trivial rank".into());
        None
    } else {
        let opts = UtOptions {
            seed,
            ..UtOptions::default()
        };
        let (ut, witness) = ut_verdict(group, k, &opts)?;
        v = Verdict::new(question, ut.outcome);
        v.method = Some(format!("{k}-ut ({})", ut.method.unwrap_or_default()));
        match witness {
            Some(w) if ut.outcome == Outcome::Fails => {
                Some(Transformation::with_kernel_and_image(&w.partition, &w.orbit_representative)?)
            }
            _ => None,
        }
    };
    if v.outcome == Outcome::Fails {
        let a = bad_map.ok_or_else(|| internal("failing regularity verdict without a map"))?;
        if is_regular_in(&a, group)?.regular {
            return Err(internal(format!("map {a} is regular after all")));
        }
        v.witness = Some(format!("map {a} is not regular in <a, G>"));
    }
    Ok(v)
}

/// Is the given map regular in `⟨a, G⟩`?
pub fn cmd_regular_map(group: &PermGroup, images: &[usize]) -> Result<Verdict> {
    let a = Transformation::new(images)?;
    if a.degree() != group.degree() {
        return Err(Error::DegreeMismatch {
            left: group.degree(),
            right: a.degree(),
        });
    }
    let check = is_regular_in(&a, group)?;
    let question = format!("map {a} is regular");
    if check.regular {
        let mut v = Verdict::new(question, Outcome::Holds);
        v.method = Some("section search".into());
        if let Some(g) = check.witness {
            v.details.push(format!("g = {g} gives rank(a g a) = rank(a)"));
        }
        return Ok(v);
    }
    let w = UtWitness {
        orbit_representative: a.image(),
        partition: a.kernel(),
    };
    if !verify_witness(group, a.rank(), &w)? {
        return Err(internal(format!("witness does not re-validate: {}", witness_text(&w))));
    }
    let mut v = Verdict::new(question, Outcome::Fails);
    v.method = Some("section search".into());
    v.witness = Some(format!("kernel {} has no section in the orbit of image {}", w.partition, w.orbit_representative));
    Ok(v)
}

/// The AGL(1,p) criterion with its full order table.
pub fn cmd_agl(p: u64) -> Result<Verdict> {
    let report = agl_criterion(p)?;
    let question = format!("AGL(1,{p}): <-1, c, c-1> = GF({p})* for every c");
    let mut v = Verdict::new(question, if report.verdict { Outcome::Holds } else { Outcome::Fails });
    v.method = Some("subgroup orders".into());
    if let Some(&c) = report.witnesses.first() {
        let order = subgroup_order(p, &[p - 1, c, c - 1])?;
        if order >= p - 1 {
            return Err(internal(format!("c = {c} generates the whole group")));
        }
        v.witness = Some(format!("c = {c}: |<-1, {c}, {}>| = {order} < {}", c - 1, p - 1));
    }
    v.details.push(format!("witnesses: {:?}", report.witnesses));
    v.details.extend(report.orders.iter().map(|(c, o)| format!("c = {c}\torder {o}")));
    Ok(v)
}

/// One row per prime `p ≡ 11 (mod 12)` up to `limit`.
pub fn cmd_sieve(limit: u64) -> Vec<Verdict> {
    sieve_problem1(limit)
        .into_iter()
        .map(|row| {
            let mut v = Verdict::new(
                format!("AGL(1,{}) criterion", row.p),
                if row.verdict { Outcome::Holds } else { Outcome::Fails },
            );
            if let (Some(c), Some(o)) = (row.min_witness, row.witness_order) {
                v.witness = Some(format!("c = {c}: |<-1, {c}, {}>| = {o} < {}", c - 1, row.p - 1));
            }
            v
        })
        .collect()
}

/// Runs a reproduction suite; each check is one verdict.
pub fn cmd_verify(suite: Suite, seed: u64) -> Vec<Verdict> {
    let opts = HarnessOptions { seed };
    suite
        .checks()
        .iter()
        .map(|&id| {
            let r = harness::run_check(id, &opts);
            let outcome = match r.status {
                CheckStatus::Pass => Outcome::Holds,
                CheckStatus::Fail => Outcome::Fails,
                CheckStatus::Undecided => Outcome::Undecided,
            };
            let mut v = Verdict::new(format!("[{:02}] {}", r.id, r.title), outcome);
            if outcome == Outcome::Fails {
                let failed: Vec<&String> = r.details.iter().filter(|d| d.starts_with("FAILED")).collect();
                v.witness = Some(if failed.is_empty() {
                    "see details".to_string()
                } else {
                    failed.iter().map(|s| s.as_str()).collect::<Vec<_>>().join("; ")
                });
            }
            v.details = r.details;
            v.details.push(format!("{:.1} s", r.elapsed_ms as f64 / 1000.0));
            v
        })
        .collect()
}
