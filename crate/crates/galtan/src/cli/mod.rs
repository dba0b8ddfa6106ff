//! Command-line front end. [`run`] parses arguments, executes one
//! subcommand and prints its [`Report`]; the binary only forwards to it.
//!
//! Exit status: 0 when every check passed, 1 when some check failed,
//! 2 for usage errors, 3 for unknown names, 4 for malformed input,
//! 5 when a size or step budget is exceeded.

mod report;

pub use report::{Check, Format, Report};

use crate::comodule::{iso_cmd_rel, ComoduleError};
use crate::elevator::{check_derivation, parse_file, ElevatorError, BUNDLED};
use crate::instance::{bundled_site, load, Instance, InstanceError};
use crate::locale::{free_frame, is_frame, present, LocaleError};
use crate::locgroup::{aut_hopf, permutation_point, ActionMu, DiscreteGroup, LocGroupError};
use crate::lrel::{negative_corpus, verify_proposition, Prop, Space, ValueLattice};
use crate::suplat::random::{closure_lattice, linear_map};
use crate::suplat::{power_product_iso, tensor, Lattice, Limits, SupError};
use crate::tannaka::{check_cone, check_iso, lifting_check, AutF, EndHopf, EndT, Model, Object, Site, TannakaError, MATERIALIZE_GENERATORS};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};
use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_UNKNOWN: i32 = 3;
pub const EXIT_MALFORMED: i32 = 4;
pub const EXIT_BUDGET: i32 = 5;

#[derive(Parser, Debug)]
#[command(name = "galtan", version, about = "Finite lattices, localic groups and Galois-Tannaka checks")]
pub struct Cli {
    #[command(flatten)]
    pub flags: Flags,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Flags {
    /// Seed for random suites; they refuse to run without one.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Size bound for exhaustive enumerations (defaults per command).
    #[arg(long, global = true)]
    pub bound: Option<usize>,
    /// Step budget for closures and enumerations.
    #[arg(long, global = true)]
    pub budget: Option<usize>,
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    /// Include wall times in the report.
    #[arg(long, global = true)]
    pub timings: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Inspect lattices and tensor products.
    #[command(subcommand)]
    Lattice(LatticeCmd),
    /// Build presented frames.
    #[command(subcommand)]
    Frame(FrameCmd),
    /// Run a verification suite or check an instance file.
    Verify(VerifyArgs),
    /// Automorphisms of the point of a group's site.
    #[command(subcommand)]
    Galois(GaloisCmd),
    /// Reconstruction from a site: End^v(T), the comparison with Aut(F), lifting.
    #[command(subcommand)]
    Tannaka(TannakaCmd),
    /// Replay string-diagram derivations.
    #[command(subcommand)]
    Elevator(ElevatorCmd),
}

#[derive(Subcommand, Debug)]
pub enum LatticeCmd {
    /// Size, join-irreducibles and distributivity. SPEC is two, power:N,
    /// chain:N or FILE:NAME for a lattice declared in an instance file.
    Info { spec: String },
    /// The tensor product of two lattices; for two power sets, also the
    /// comparison with the power set of the product.
    Tensor { left: String, right: String },
}

#[derive(Subcommand, Debug)]
pub enum FrameCmd {
    /// The free frame on N generators.
    Free { n: usize },
    /// The frame of automorphisms of {0..N}, with its Hopf structure.
    Aut { n: usize },
    /// A presentation declared in an instance file.
    Present { file: PathBuf, name: String },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub suite: Option<Suite>,
    /// Load an instance file and check everything it declares.
    #[arg(long)]
    pub instance: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// Implications between the diagram conditions on l-relations.
    S2Props,
    /// Planted violations that the diagram checks must catch.
    Negative,
    /// Comodules over l(Z2) against relations of Z2-sets.
    CmdRel,
    /// Seeded random lattices and linear maps.
    Random,
}

#[derive(Subcommand, Debug)]
pub enum GaloisCmd {
    Build {
        /// trivial, Z<n> or S<n>.
        #[arg(long)]
        group: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum TannakaCmd {
    Build {
        /// A bundled site (z2, z3, terminal, arrow, with or without .site) or a path.
        #[arg(long)]
        site: String,
    },
    Iso {
        #[arg(long)]
        site: String,
        /// Largest generator meet compared when the frame is not enumerated.
        #[arg(long, default_value_t = 2)]
        depth: usize,
    },
    Lift {
        #[arg(long)]
        site: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum ElevatorCmd {
    /// Files are paths or names of bundled derivation files.
    Check {
        #[arg(required = true)]
        files: Vec<String>,
    },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("unknown {kind} {name}")]
    Unknown { kind: &'static str, name: String },
    #[error("{0}")]
    Malformed(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Unknown { .. } => EXIT_UNKNOWN,
            CliError::Malformed(_) => EXIT_MALFORMED,
            CliError::Budget(_) => EXIT_BUDGET,
        }
    }
}

impl From<SupError> for CliError {
    fn from(e: SupError) -> CliError {
        match e {
            SupError::Budget(_) | SupError::TooLarge { .. } => CliError::Budget(e.to_string()),
            _ => CliError::Malformed(e.to_string()),
        }
    }
}

impl From<LocaleError> for CliError {
    fn from(e: LocaleError) -> CliError {
        match e {
            LocaleError::Budget(_) | LocaleError::TooLarge { .. } | LocaleError::TooManyGenerators { .. } => CliError::Budget(e.to_string()),
            LocaleError::Lattice(inner) => inner.into(),
            LocaleError::UnknownGenerator(name) => CliError::Unknown { kind: "generator", name },
            _ => CliError::Malformed(e.to_string()),
        }
    }
}

impl From<LocGroupError> for CliError {
    fn from(e: LocGroupError) -> CliError {
        match e {
            LocGroupError::TooLarge { .. } => CliError::Budget(e.to_string()),
            LocGroupError::Locale(inner) => inner.into(),
            _ => CliError::Malformed(e.to_string()),
        }
    }
}

impl From<ComoduleError> for CliError {
    fn from(e: ComoduleError) -> CliError {
        match e {
            ComoduleError::Group(inner) => inner.into(),
            ComoduleError::Lattice(inner) => inner.into(),
            _ => CliError::Budget(e.to_string()),
        }
    }
}

impl From<TannakaError> for CliError {
    fn from(e: TannakaError) -> CliError {
        match e {
            TannakaError::TooLarge { .. } => CliError::Budget(e.to_string()),
            TannakaError::Locale(inner) => inner.into(),
            TannakaError::Group(inner) => inner.into(),
            TannakaError::Lattice(inner) => inner.into(),
            TannakaError::Comodule(inner) => inner.into(),
            _ => CliError::Malformed(e.to_string()),
        }
    }
}

impl From<InstanceError> for CliError {
    fn from(e: InstanceError) -> CliError {
        match e {
            InstanceError::Unknown { .. } => CliError::Unknown { kind: "name", name: e.to_string() },
            _ => CliError::Malformed(e.to_string()),
        }
    }
}

impl From<ElevatorError> for CliError {
    fn from(e: ElevatorError) -> CliError {
        CliError::Malformed(e.to_string())
    }
}

/// Parses `args` (program name first), runs the command and writes the
/// report to `out` and diagnostics to `err`. Returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if code == EXIT_OK { out } else { err };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match execute(&cli) {
        Ok(report) => {
            let _ = out.write_all(report.render(cli.flags.format, cli.flags.timings).as_bytes());
            if report.passed() {
                EXIT_OK
            } else {
                EXIT_FAILED
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(cli: &Cli) -> Result<Report, CliError> {
    let flags = &cli.flags;
    let mut limits = Limits::default();
    if let Some(b) = flags.budget {
        limits.max_steps = b;
    }
    match &cli.command {
        Command::Lattice(LatticeCmd::Info { spec }) => lattice_info(spec, &limits),
        Command::Lattice(LatticeCmd::Tensor { left, right }) => lattice_tensor(left, right, &limits),
        Command::Frame(cmd) => frame(cmd, &limits),
        Command::Verify(VerifyArgs { instance: Some(path), .. }) => verify_instance(path, &limits),
        Command::Verify(VerifyArgs { suite: Some(suite), .. }) => match suite {
            Suite::S2Props => Ok(s2_props(flags.bound.unwrap_or(2))),
            Suite::Negative => Ok(negative()),
            Suite::CmdRel => cmd_rel(flags.bound.unwrap_or(3), &limits),
            Suite::Random => {
                let seed = flags.seed.ok_or_else(|| CliError::Usage("the random suite needs --seed".into()))?;
                random_suite(seed, flags.bound.unwrap_or(3))
            }
        },
        Command::Verify(_) => Err(CliError::Usage("verify needs --suite or --instance".into())),
        Command::Galois(GaloisCmd::Build { group }) => galois(group, &limits),
        Command::Tannaka(TannakaCmd::Build { site }) => tannaka_build(&resolve_site(site, &limits)?, &limits),
        Command::Tannaka(TannakaCmd::Iso { site, depth }) => tannaka_iso(&resolve_site(site, &limits)?, *depth, &limits),
        Command::Tannaka(TannakaCmd::Lift { site }) => {
            tannaka_lift(&resolve_site(site, &limits)?, flags.bound.unwrap_or(3), &limits)
        }
        Command::Elevator(ElevatorCmd::Check { files }) => elevator_check(files),
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let v = f();
    (v, t.elapsed())
}

fn with_witness(detail: String, witness: &Option<String>) -> String {
    match witness {
        Some(w) => format!("{detail}; {w}"),
        None => detail,
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn load_instance(path: &Path, limits: &Limits) -> Result<Instance, CliError> {
    if !path.exists() {
        return Err(CliError::Unknown { kind: "file", name: path.display().to_string() });
    }
    Ok(load(path, limits)?)
}

fn lattice_spec(spec: &str, limits: &Limits) -> Result<Lattice, CliError> {
    let size = |n: &str| n.parse::<usize>().map_err(|_| CliError::Usage(format!("bad size in {spec:?}")));
    match spec.split_once(':') {
        _ if spec == "two" => Ok(Lattice::two()),
        Some(("power", n)) => {
            let n = size(n)?;
            Ok(Lattice::power_set((0..n).map(|i| i.to_string()).collect(), limits)?)
        }
        Some(("chain", n)) => match size(n)? {
            0 => Err(CliError::Usage("a chain has at least one element".into())),
            n => Ok(Lattice::chain(n)),
        },
        _ => {
            let (file, name) = spec
                .rsplit_once(':')
                .ok_or_else(|| CliError::Unknown { kind: "lattice", name: spec.to_string() })?;
            let inst = load_instance(Path::new(file), limits)?;
            inst.lattices.get(name).cloned().ok_or_else(|| CliError::Unknown { kind: "lattice", name: name.to_string() })
        }
    }
}

fn lattice_info(spec: &str, limits: &Limits) -> Result<Report, CliError> {
    let l = lattice_spec(spec, limits)?;
    let frame = is_frame(&l);
    let frame_text = match &frame.witness {
        None => "a frame".to_string(),
        Some((a, b, c)) => format!("not a frame, distributivity fails at {a}, {b}, {c}"),
    };
    let mut r = Report::default();
    r.push(Check::new(
        "lattice",
        true,
        format!("{} elements, {} join-irreducibles, {frame_text}", l.size(), l.join_irreducibles().len()),
    ));
    if l.size() <= 32 {
        r.push(Check::new("elements", true, l.labels().join(" ")));
    }
    Ok(r)
}

fn lattice_tensor(left: &str, right: &str, limits: &Limits) -> Result<Report, CliError> {
    let (s, t) = (lattice_spec(left, limits)?, lattice_spec(right, limits)?);
    let (tl, time) = timed(|| tensor(&s, &t, limits));
    let tl = tl?;
    let mut r = Report::default();
    r.push(Check::new("tensor", true, format!("{} x {} -> {} elements", s.size(), t.size(), tl.lattice().size())).timed(time));
    if let (Some(nx), Some(ny)) = (s.power_base(), t.power_base()) {
        let (iso, time) = timed(|| power_product_iso(nx, ny, limits));
        let iso = iso?;
        let detail = format!("l({nx} x {ny}) has {} elements", iso.expected);
        r.push(Check::new("product iso", iso.holds(), with_witness(detail, &iso.witness)).timed(time));
    }
    Ok(r)
}

fn frame(cmd: &FrameCmd, limits: &Limits) -> Result<Report, CliError> {
    let mut r = Report::default();
    match cmd {
        FrameCmd::Free { n } => {
            let (m, time) = timed(|| free_frame(*n, limits).and_then(|f| f.materialize()));
            r.push(Check::new("free frame", true, format!("{n} generators, {} elements", m?.lattice.size())).timed(time));
        }
        FrameCmd::Aut { n } => {
            let group = DiscreteGroup::symmetric(*n);
            let (h, time) = timed(|| aut_hopf(*n, limits));
            let h = h?;
            let gens = h.frame().generator_count();
            let lazy = gens > MATERIALIZE_GENERATORS;
            let size = if lazy { "not enumerated".to_string() } else { format!("{} elements", h.frame().materialize()?.lattice.size()) };
            r.push(Check::new("aut", true, format!("{gens} generators, {size}")).timed(time));
            let (laws, time) = timed(|| h.hopf_laws());
            let laws = laws?;
            let detail = if laws.pointwise { "coassociativity at points" } else { "" };
            r.push(Check::new("hopf laws", laws.holds(), with_witness(detail.into(), &laws.witness)).timed(time));
            let perm = |g: usize| group.names()[g].chars().map(|c| c.to_digit(10).expect("one-line names") as usize).collect::<Vec<_>>();
            let point = |g: usize| permutation_point(&perm(g));
            if lazy {
                let pts = h.points_to_group(&group, &point)?;
                let detail = format!("{} points, structure maps at points", pts.points);
                r.push(Check::new(format!("points are S{n}"), pts.holds(), with_witness(detail, &pts.witness)));
            } else {
                let iso = h.iso_to_group(&group, &point)?;
                r.push(Check::new(format!("iso to l(S{n})"), iso.holds(), with_witness(format!("{} elements", iso.size), &iso.witness)));
            }
        }
        FrameCmd::Present { file, name } => {
            let inst = load_instance(file, limits)?;
            let p = inst
                .presentations
                .get(name)
                .cloned()
                .ok_or_else(|| CliError::Unknown { kind: "presentation", name: name.clone() })?;
            let (gens, rels) = (p.generators.len(), p.relations.len());
            let (m, time) = timed(|| present(p, limits).and_then(|f| f.materialize()));
            let m = m?;
            let detail = format!("{gens} generators, {rels} relations, {} elements", m.lattice.size());
            r.push(Check::new(format!("presentation {name}"), true, detail).timed(time));
            let frame = is_frame(&m.lattice);
            r.push(Check::new("frame law", frame.holds, ""));
        }
    }
    Ok(r)
}

/// All propositions over both value lattices, one thread per pair;
/// the report keeps declaration order.
pub fn s2_props(bound: usize) -> Report {
    let jobs: Vec<(Prop, Space)> =
        Prop::ALL.into_iter().flat_map(|p| [(p, Space::two(bound)), (p, Space::power_z2(bound))]).collect();
    let results: Vec<_> = std::thread::scope(|scope| {
        let handles: Vec<_> =
            jobs.iter().map(|&(p, s)| scope.spawn(move || timed(|| verify_proposition(p, s)))).collect();
        handles.into_iter().map(|h| h.join().expect("proposition worker")).collect()
    });
    let mut r = Report::default();
    for (rep, time) in results {
        let values = match rep.space.values {
            ValueLattice::Two => "2",
            ValueLattice::PowerZ2 => "l(Z2)",
        };
        let mut detail = format!(
            "{} instances, {} meet the hypotheses, {} counterexamples",
            rep.instances, rep.hypotheses_met, rep.counterexamples
        );
        if let Some(e) = rep.examples.first() {
            detail = format!("{detail}; {e}");
        }
        r.push(Check::new(format!("{} over {values}", rep.prop.name()), rep.passed(), detail).timed(time));
    }
    r
}

fn negative() -> Report {
    let mut r = Report::default();
    for case in negative_corpus() {
        let (detected, time) = timed(|| case.detected());
        r.push(Check::new(format!("planted {}", case.name), detected, if detected { "detected" } else { "missed" }).timed(time));
    }
    r
}

fn cmd_rel(bound: usize, limits: &Limits) -> Result<Report, CliError> {
    let (rep, time) = timed(|| iso_cmd_rel(&DiscreteGroup::cyclic(2), bound, limits));
    let rep = rep?;
    let counts: Vec<String> = rep.objects.iter().map(|(n, c, a)| format!("|X| = {n}: {c} coactions, {a} actions")).collect();
    let mut r = Report::default();
    r.push(Check::new("objects biject", rep.objects_biject, counts.join("; ")).timed(time));
    r.push(Check::new("round trips", rep.round_trips, ""));
    r.push(Check::new("morphisms biject", rep.homs_agree, format!("{} pairs of objects", rep.hom_pairs)));
    r.push(Check::new("identities", rep.identities, ""));
    r.push(Check::new("composition", rep.composition, ""));
    r.push(Check::new("forgetful triangle", rep.triangle_commutes, ""));
    r.push(Check::new("tensor representation", rep.tensor_representation, ""));
    if let Some(w) = &rep.witness {
        r.push(Check::new("witness", false, w.clone()));
    }
    Ok(r)
}

fn random_suite(seed: u64, base: usize) -> Result<Report, CliError> {
    if base > 6 {
        return Err(CliError::Budget(format!("random lattices on {base} points")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut r = Report::default();
    for i in 0..16 {
        let l = closure_lattice(&mut rng, base, 12);
        let f = linear_map(&mut rng, &l, &l);
        let elems: Vec<_> = l.elems().collect();
        let lub = elems.iter().all(|&a| {
            elems.iter().all(|&b| elems.iter().all(|&c| l.leq(l.join(a, b), c) == (l.leq(a, c) && l.leq(b, c))))
        });
        let glb = elems.iter().all(|&a| {
            elems.iter().all(|&b| elems.iter().all(|&c| l.leq(c, l.meet(a, b)) == (l.leq(c, a) && l.leq(c, b))))
        });
        let linear = f.apply(l.bottom()) == l.bottom()
            && elems.iter().all(|&a| elems.iter().all(|&b| f.apply(l.join(a, b)) == l.join(f.apply(a), f.apply(b))));
        let unit = tensor(&Lattice::two(), &l, &Limits::default())?.lattice().size() == l.size();
        let detail = format!(
            "{} elements; joins {}, meets {}, map linear {}, 2 (x) L = L {}",
            l.size(),
            yes_no(lub),
            yes_no(glb),
            yes_no(linear),
            yes_no(unit)
        );
        r.push(Check::new(format!("sample {i}"), lub && glb && linear && unit, detail));
    }
    Ok(r)
}

fn verify_instance(path: &Path, limits: &Limits) -> Result<Report, CliError> {
    let (inst, time) = timed(|| load_instance(path, limits));
    let inst = inst?;
    let mut r = Report::default();
    r.push(Check::new("load", true, format!("{} declarations", inst.decls.len())).timed(time));
    for (name, l) in &inst.lattices {
        let frame = is_frame(l);
        r.push(Check::new(format!("lattice {name}"), true, format!("{} elements, frame {}", l.size(), yes_no(frame.holds))));
    }
    for (name, site) in &inst.sites {
        let detail = format!("{} objects, {} arrows, functorial and full", site.objects.len(), site.arrows.len());
        r.push(Check::new(format!("site {name}"), true, detail));
    }
    for (name, p) in &inst.presentations {
        let (m, time) = timed(|| present(p.clone(), limits).and_then(|f| f.materialize()));
        r.push(Check::new(format!("presentation {name}"), true, format!("{} elements", m?.lattice.size())).timed(time));
    }
    for (name, (site, lattice, parts)) in &inst.cones {
        let l = &inst.lattices[lattice];
        let cone: Vec<_> = parts.iter().map(|p| inst.lrels[p].1.clone()).collect();
        let rep = check_cone(l, &inst.sites[site], &cone);
        let ok = rep.bijections && rep.triangle && rep.diamond1 && rep.diamond2 && rep.diamond;
        r.push(Check::new(format!("cone {name}"), ok, with_witness(format!("over {site} into {lattice}"), &rep.witness)));
    }
    for (name, f) in &inst.derivations {
        elevator_report(&mut r, name, f)?;
    }
    Ok(r)
}

fn group_site(name: &str) -> Result<Site, CliError> {
    let unknown = || CliError::Unknown { kind: "group", name: name.to_string() };
    let order = |s: &str| s.parse::<usize>().map_err(|_| unknown());
    let group = match name {
        "trivial" | "1" => return Ok(Site::terminal()),
        _ if name.starts_with(['Z', 'z']) => match order(&name[1..])? {
            n @ 1..=6 => return Ok(Site::cyclic(n)),
            _ => return Err(unknown()),
        },
        _ if name.starts_with(['S', 's']) => match order(&name[1..])? {
            n @ 1..=3 => DiscreteGroup::symmetric(n),
            _ => return Err(unknown()),
        },
        _ => return Err(unknown()),
    };
    let objects = vec![
        ("1".to_string(), Object::GSet(ActionMu::trivial(&group, 1))),
        (name.to_uppercase(), Object::GSet(ActionMu::regular(&group))),
    ];
    Ok(Site::new(name.to_lowercase(), Model::GSets(group), objects))
}

fn galois(group: &str, limits: &Limits) -> Result<Report, CliError> {
    let site = group_site(group)?;
    let (aut, time) = timed(|| AutF::build(&site, limits));
    let aut = aut?;
    let mut r = Report::default();
    let gens = aut.frame().generator_count();
    match aut.materialized() {
        Some(m) => {
            let iso = aut.iso_to_group()?;
            let order = site.model.group().order();
            let frame = if order == 1 { "2".to_string() } else { format!("l({})", group.to_uppercase()) };
            let size = m.lattice.size();
            r.push(Check::new("aut", true, format!("frame {frame}, {size} elements")).timed(time));
            r.push(Check::new(format!("iso to l({})", group.to_uppercase()), iso.holds(), with_witness(String::new(), &iso.witness)));
        }
        None => r.push(Check::new("aut", true, format!("{gens} generators, not enumerated")).timed(time)),
    }
    let (key, time) = timed(|| aut.key_lemma());
    let detail = format!("{} generators nonzero {}, {} comparable pairs", key.generators, yes_no(key.nonzero), key.comparable);
    r.push(Check::new("key lemma", key.holds(), with_witness(detail, &key.witness)).timed(time));
    Ok(r)
}

/// A bundled site by name or file name, or the first site of an instance file.
pub fn resolve_site(spec: &str, limits: &Limits) -> Result<Site, CliError> {
    let path = Path::new(spec);
    if path.exists() {
        let inst = load(path, limits)?;
        return inst.sites.into_values().next().ok_or_else(|| CliError::Malformed(format!("{spec} declares no site")));
    }
    bundled_site(spec).ok_or_else(|| CliError::Unknown { kind: "site", name: spec.to_string() })
}

fn tannaka_build(site: &Site, limits: &Limits) -> Result<Report, CliError> {
    let mut r = Report::default();
    let (endt, time) = timed(|| -> Result<_, TannakaError> {
        let e = EndT::build(site)?;
        let n = e.coend().elements(limits)?.len();
        Ok((e, n))
    });
    let (endt, size) = endt?;
    r.push(Check::new("End^v(T)", true, format!("{} generators, {size} elements", site.cell_count())).timed(time));
    let compat = endt.compatibility()?;
    r.push(Check::new("compatibility", compat.holds, with_witness(format!("{} equations", compat.checked), &compat.witness)));
    let (hopf, time) = timed(|| EndHopf::new(&endt, limits).and_then(|h| h.check()));
    let hopf = hopf?;
    r.push(Check::new("hopf composites", hopf.holds(), with_witness(String::new(), &hopf.witness)).timed(time));
    for c in tannaka_iso(site, 2, limits)?.checks {
        r.push(c);
    }
    Ok(r)
}

fn tannaka_iso(site: &Site, depth: usize, limits: &Limits) -> Result<Report, CliError> {
    let (iso, time) = timed(|| check_iso(site, depth, limits));
    let iso = iso?;
    let mut r = Report::default();
    let detail = match iso.bijective {
        Some(_) => format!("carrier size {}", iso.endt_size),
        None => format!("carrier size {}, compared on meets of at most {depth} generators", iso.endt_size),
    };
    r.push(Check::new("iso", iso.holds(), with_witness(detail, &iso.witness)).timed(time));
    r.push(Check::new("order", iso.order_agrees, format!("{} meet pairs", iso.meet_pairs)));
    let opt = |o: Option<bool>| o.map_or("not decided", yes_no);
    let detail = format!("w {}, e {}, iota {}", opt(iso.w), opt(iso.e), opt(iso.iota));
    r.push(Check::new("structure maps", [iso.w, iso.e, iso.iota].iter().all(|o| *o != Some(false)), detail));
    Ok(r)
}

fn tannaka_lift(site: &Site, bound: usize, limits: &Limits) -> Result<Report, CliError> {
    let (rep, time) = timed(|| lifting_check(site, bound, limits));
    let rep = rep?;
    let mut r = Report::default();
    r.push(Check::new("objects", true, format!("{} objects with fibers up to {bound}", rep.objects)).timed(time));
    for (side, v) in [("galois", &rep.galois), ("tannaka", &rep.tannaka)] {
        for (what, verdict) in [("faithful", &v.faithful), ("full", &v.full), ("essentially surjective", &v.essentially_surjective)] {
            let detail = with_witness(format!("{} checked", verdict.checked), &verdict.witness);
            r.push(Check::new(format!("{side} {what}"), verdict.holds, detail));
        }
    }
    r.push(Check::new("lifts agree", rep.consistent(), ""));
    Ok(r)
}

fn elevator_report(r: &mut Report, label: &str, f: &crate::elevator::ElevatorFile) -> Result<(), CliError> {
    if let Some(m) = &f.model {
        let ax = m.check_axioms(&f.signature)?;
        r.push(Check::new(format!("{label}: axioms in model"), ax.holds, with_witness(format!("{} axioms", ax.checked), &ax.witness)));
    }
    for d in &f.derivations {
        let (v, time) = timed(|| check_derivation(&f.signature, d));
        let detail = match &v.failure {
            None => format!("{} steps", v.steps),
            Some(fail) => format!("step {} ({}) gives {}, written {}", fail.step, fail.mv, fail.actual, fail.expected),
        };
        r.push(Check::new(format!("{label}: {}", d.name), v.accepted(), detail).timed(time));
        if let Some(m) = &f.model {
            let s = m.check_derivation(&f.signature, d)?;
            r.push(Check::new(
                format!("{label}: {} sound", d.name),
                s.holds,
                with_witness(format!("{} steps compared", s.checked), &s.witness),
            ));
        }
    }
    Ok(())
}

fn elevator_check(files: &[String]) -> Result<Report, CliError> {
    let mut r = Report::default();
    for name in files {
        let path = Path::new(name);
        let text = if path.exists() {
            std::fs::read_to_string(path).map_err(|e| CliError::Malformed(format!("{name}: {e}")))?
        } else {
            let bundled = if name.ends_with(".elv") { name.clone() } else { format!("{name}.elv") };
            BUNDLED
                .iter()
                .find(|(n, _)| *n == bundled)
                .map(|(_, t)| t.to_string())
                .ok_or_else(|| CliError::Unknown { kind: "derivation file", name: name.clone() })?
        };
        let f = parse_file(&text).map_err(|e| CliError::Malformed(format!("{name}: {e}")))?;
        let label = path.file_stem().map_or(name.clone(), |s| s.to_string_lossy().into_owned());
        elevator_report(&mut r, &label, &f)?;
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(std::iter::once("galtan").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn galois_trivial_is_two() {
        let (code, out, _) = call(&["galois", "build", "--group", "trivial"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.starts_with("aut: yes, frame 2, 2 elements\n"), "{out}");
    }

    #[test]
    fn tannaka_iso_on_z2() {
        let (code, out, _) = call(&["tannaka", "iso", "--site", "z2.site"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.starts_with("iso: yes, carrier size 4\n"), "{out}");
    }

    #[test]
    fn exit_codes_are_distinct() {
        assert_eq!(call(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(call(&["galois", "build", "--group", "Q8"]).0, EXIT_UNKNOWN);
        assert_eq!(call(&["verify", "--suite", "random"]).0, EXIT_USAGE);
        assert_eq!(call(&["frame", "aut", "2", "--budget", "10"]).0, EXIT_BUDGET);
        assert_eq!(call(&["lattice", "info", "power:40"]).0, EXIT_BUDGET);
    }

    #[test]
    fn random_suite_is_reproducible() {
        let a = call(&["verify", "--suite", "random", "--seed", "7", "--format", "json-lines"]);
        let b = call(&["verify", "--suite", "random", "--seed", "7", "--format", "json-lines"]);
        assert_eq!(a, b);
        assert_eq!(a.0, EXIT_OK, "{}", a.1);
        assert_eq!(a.1.lines().count(), 16);
    }
}
