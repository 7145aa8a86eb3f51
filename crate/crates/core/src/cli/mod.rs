//! The `neron` command line: subcommands over presentation files, text or JSON reports.

mod commands;
mod emit;
pub mod file;
mod more;

use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::dgal::Connection;
use crate::error::{Error, Result};
use crate::groebner::{Ideal, Limits};
use crate::hopf::{GroupMorphism, HopfPresentation};
use crate::reps::RepMatrix;
use crate::ring::parse_poly_list;

pub use file::PresentationFile;

pub const SCHEMA: &str = "neron-report/v1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "neron", version, about = "Neron blowups of group schemes over a DVR")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Number of blowup steps for sequences, images and constancy checks.
    #[arg(long, global = true, default_value_t = 3)]
    pub depth: u32,
    /// Degree cap for Groebner bases; for the dgal commands, the x-degree of the gauge.
    #[arg(long, global = true)]
    pub degree_bound: Option<u32>,
    /// Cap on S-pairs per Groebner basis.
    #[arg(long, global = true)]
    pub max_pairs: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, clap::Args)]
pub struct GroupArg {
    pub file: PathBuf,
    /// Group block to use (default: the first).
    #[arg(long)]
    pub group: Option<String>,
}

#[derive(Debug, clap::Args)]
pub struct MorphismArg {
    pub file: PathBuf,
    /// Morphism block to use (default: the first).
    #[arg(long)]
    pub morphism: Option<String>,
}

#[derive(Debug, clap::Args)]
pub struct RepArg {
    pub file: PathBuf,
    /// Rep block to use (default: the first).
    #[arg(long)]
    pub rep: Option<String>,
}

#[derive(Debug, clap::Args)]
pub struct ConnectionArg {
    pub file: PathBuf,
    /// Connection block to use (default: the first).
    #[arg(long)]
    pub connection: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Verify the Hopf algebra axioms on generators.
    CheckHopf(GroupArg),
    /// Check that the relation ideal is pi-saturated.
    CheckFlat(GroupArg),
    /// The special fibre, as inherited and with determined generators eliminated.
    Fibre(GroupArg),
    /// Base change to R_n and the triviality verdict.
    ReduceMod {
        #[command(flatten)]
        input: GroupArg,
        #[arg(long)]
        level: u32,
        /// Judge the induced morphism to this block's target instead of the group itself.
        #[arg(long)]
        morphism: Option<String>,
    },
    /// Neron blowup along the closed subgroup of the special fibre cut out by the centre.
    Blowup {
        #[command(flatten)]
        input: GroupArg,
        /// Generators of the centre; must contain pi.
        #[arg(long)]
        centre: String,
        /// Adjoin only the minimized centre, without antipode closure or elimination.
        #[arg(long)]
        plain: bool,
        #[arg(long)]
        name: Option<String>,
    },
    /// Adjoin pi^-(n+1) times the ideal of a flat closed subgroup.
    PartialBlowup {
        #[command(flatten)]
        input: GroupArg,
        #[arg(long)]
        subgroup: String,
        #[arg(long)]
        level: u32,
        #[arg(long)]
        plain: bool,
    },
    /// The automatic blowup truncated at pi^-n times the augmentation ideal.
    AutoTrunc {
        #[command(flatten)]
        input: GroupArg,
        #[arg(long)]
        level: u32,
    },
    /// Whether numerator / pi^power lies in the automatic blowup.
    AutoMember {
        #[command(flatten)]
        input: GroupArg,
        #[arg(long)]
        numerator: String,
        #[arg(long)]
        power: u32,
    },
    /// The standard blowup sequence of a morphism.
    StandardSeq(MorphismArg),
    /// Blow up at the centre, then saturate the subgroup's ideal in the blown ring.
    StrictTransform {
        #[command(flatten)]
        input: GroupArg,
        #[arg(long)]
        centre: String,
        #[arg(long)]
        subgroup: String,
    },
    /// Check that the strict transforms of a flat subgroup give constant centres.
    CheckConstancy {
        #[command(flatten)]
        input: GroupArg,
        #[arg(long)]
        subgroup: String,
    },
    /// Comodule identities, counit and determinant inverse.
    RepValidate(RepArg),
    /// [[V, (V - 1)/pi], [0, 1]] over the blowup of the identity.
    RepBlowupIdentity(RepArg),
    /// The fibre product with the rescaled lattice over the blowup at the first line's stabilizer.
    RepBlowupLine(RepArg),
    /// The lattice v1/pi, v2, ..., vr over the blowup at the first line's stabilizer.
    RepRescale(RepArg),
    /// rho + sigma over the blowup at the kernel of the quotient.
    RepSum {
        #[command(flatten)]
        input: RepArg,
        /// Representation of the quotient group.
        #[arg(long)]
        sigma: String,
        /// Morphism onto the quotient group.
        #[arg(long)]
        quotient: String,
    },
    /// Whether the entries and the inverse determinant generate the coordinate ring.
    RepFaithful {
        #[command(flatten)]
        input: RepArg,
        /// Test the identity blowup representation instead.
        #[arg(long)]
        after_identity_blowup: bool,
    },
    /// The action of a closed subgroup of the special fibre on I/aI.
    Conormal {
        #[command(flatten)]
        input: GroupArg,
        #[arg(long)]
        subgroup: String,
    },
    /// The schematic image of a morphism.
    Image(MorphismArg),
    /// The image and its saturation by blowups.
    Diptych(MorphismArg),
    /// Special fibres of the diptych and the image of the special fibre.
    Triptych {
        #[command(flatten)]
        input: MorphismArg,
        /// Power of the augmentation ideal tried by the unipotence check.
        #[arg(long, default_value_t = 4)]
        bound: u32,
    },
    /// Formal solution of de = -A e at x = 0.
    DgalSolve {
        #[command(flatten)]
        input: ConnectionArg,
        #[arg(long)]
        order: u32,
    },
    /// Search for a gauge trivializing the connection modulo pi^(n+1).
    DgalTrivial {
        #[command(flatten)]
        input: ConnectionArg,
        #[arg(long)]
        level: u32,
    },
    /// Triviality at levels 0..n and the blowup it points to.
    DgalDiagnose {
        #[command(flatten)]
        input: ConnectionArg,
        #[arg(long, default_value_t = 5)]
        level: u32,
    },
}

/// What a subcommand found. `ok` is false for a failed check or a negative certificate.
pub struct Outcome {
    pub ok: bool,
    pub text: String,
    pub result: Value,
}

impl Outcome {
    fn new(ok: bool, text: String, result: Value) -> Self {
        Self { ok, text, result }
    }
}

pub(crate) struct Ctx {
    pub file: PresentationFile,
    pub lim: Limits,
    pub depth: u32,
    pub degree_bound: Option<u32>,
}

fn pick<'a, T>(items: &'a [T], name: &Option<String>, kind: &str, get: impl Fn(&'a T) -> &'a str) -> Result<&'a T> {
    match name {
        Some(n) => items
            .iter()
            .find(|t| get(t) == n)
            .ok_or_else(|| Error::UndefinedName(n.clone())),
        None => items
            .first()
            .ok_or_else(|| Error::UndefinedName(format!("no {kind} block in the file"))),
    }
}

impl Ctx {
    fn load(text: &str, lim: Limits, depth: u32, degree_bound: Option<u32>) -> Result<Ctx> {
        Ok(Ctx {
            file: PresentationFile::parse(text, &lim)?,
            lim,
            depth,
            degree_bound,
        })
    }

    pub fn group(&self, name: &Option<String>) -> Result<Arc<HopfPresentation>> {
        pick(&self.file.groups, name, "group", |g| g.name()).cloned()
    }

    pub fn morphism(&self, name: &Option<String>) -> Result<GroupMorphism> {
        pick(&self.file.morphisms, name, "morphism", |m| m.0.as_str()).map(|m| m.1.clone())
    }

    pub fn rep(&self, name: &Option<String>) -> Result<RepMatrix> {
        pick(&self.file.reps, name, "rep", |r| r.0.as_str()).map(|r| r.1.clone())
    }

    pub fn connection(&self, name: &Option<String>) -> Result<Connection> {
        pick(&self.file.connections, name, "connection", |c| c.0.as_str()).map(|c| c.1.clone())
    }

    pub fn ideal(&self, g: &HopfPresentation, text: &str) -> Result<Ideal> {
        Ideal::new(g.ring(), parse_poly_list(g.ring(), text)?)
    }
}

impl Command {
    fn file(&self) -> &PathBuf {
        use Command::*;
        match self {
            CheckHopf(a) | CheckFlat(a) | Fibre(a) => &a.file,
            ReduceMod { input, .. }
            | Blowup { input, .. }
            | PartialBlowup { input, .. }
            | AutoTrunc { input, .. }
            | AutoMember { input, .. }
            | StrictTransform { input, .. }
            | CheckConstancy { input, .. }
            | Conormal { input, .. } => &input.file,
            StandardSeq(a) | Image(a) | Diptych(a) => &a.file,
            Triptych { input, .. } => &input.file,
            RepValidate(a) | RepBlowupIdentity(a) | RepBlowupLine(a) | RepRescale(a) => &a.file,
            RepSum { input, .. } | RepFaithful { input, .. } => &input.file,
            DgalSolve { input, .. } | DgalTrivial { input, .. } | DgalDiagnose { input, .. } => &input.file,
        }
    }

    fn name(&self) -> String {
        let dbg = format!("{self:?}");
        let head: String = dbg.chars().take_while(|c| c.is_alphanumeric()).collect();
        let mut out = String::new();
        for (i, c) in head.chars().enumerate() {
            if c.is_uppercase() && i > 0 {
                out.push('-');
            }
            out.push(c.to_ascii_lowercase());
        }
        out
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::ResourceLimit(_) => 3,
        Error::Syntax { .. }
        | Error::UndefinedName(_)
        | Error::UnknownVariable(_)
        | Error::RingMismatch(_)
        | Error::OrderMismatch(_) => 2,
        _ => 1,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::NotDivisible { .. } => "NotDivisible",
        Error::UnknownVariable(_) => "UnknownVariable",
        Error::RingMismatch(_) => "RingMismatch",
        Error::OrderMismatch(_) => "OrderMismatch",
        Error::ResourceLimit(_) => "ResourceLimit",
        Error::NotASubgroup(_) => "NotASubgroup",
        Error::DivisionObstruction { .. } => "DivisionObstruction",
        Error::LiftFailure { .. } => "LiftFailure",
        Error::NotGenericIso { .. } => "NotGenericIso",
        Error::ShapeMismatch(_) => "ShapeMismatch",
        Error::Precondition(_) => "Precondition",
        Error::Syntax { .. } => "Syntax",
        Error::UndefinedName(_) => "UndefinedName",
    }
}

/// Runs one invocation; returns the exit code and the report to print.
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.render().to_string());
        }
    };
    let mut lim = Limits::default();
    if let Some(p) = cli.max_pairs {
        lim.max_pairs = p;
    }
    let dgal = matches!(
        cli.command,
        Command::DgalSolve { .. } | Command::DgalTrivial { .. } | Command::DgalDiagnose { .. }
    );
    if let (Some(d), false) = (cli.degree_bound, dgal) {
        lim.max_degree = d;
    }
    let name = cli.command.name();
    let path = cli.command.file();
    let input = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            let message = format!("cannot read {}: {e}", path.display());
            let err = json!({"kind": "Io", "message": message});
            return (2, render(cli.format, &name, 2, "error", format!("error: {message}\n"), Value::Null, err));
        }
    };
    let outcome = Ctx::load(&input, lim, cli.depth, cli.degree_bound).and_then(|ctx| dispatch(&ctx, &cli.command));
    let (code, status, text, result, error) = match outcome {
        Ok(o) => {
            let code = if o.ok { 0 } else { 1 };
            let status = if o.ok { "ok" } else { "failed" };
            (code, status, o.text, o.result, Value::Null)
        }
        Err(e) => {
            let code = exit_code(&e);
            let err = json!({"kind": error_kind(&e), "message": e.to_string()});
            (code, "error", format!("error: {e}\n"), Value::Null, err)
        }
    };
    (code, render(cli.format, &name, code, status, text, result, error))
}

fn render(format: Format, name: &str, code: i32, status: &str, text: String, result: Value, error: Value) -> String {
    match format {
        Format::Text => text,
        Format::Json => {
            let mut v = json!({
                "schema": SCHEMA,
                "command": name,
                "status": status,
                "exit_code": code,
            });
            if !result.is_null() {
                v["result"] = result;
            }
            if !error.is_null() {
                v["error"] = error;
            }
            serde_json::to_string_pretty(&v).expect("json") + "\n"
        }
    }
}

fn dispatch(ctx: &Ctx, cmd: &Command) -> Result<Outcome> {
    use Command::*;
    match cmd {
        CheckHopf(a) => commands::check_hopf(ctx, &a.group),
        CheckFlat(a) => commands::check_flat(ctx, &a.group),
        Fibre(a) => commands::fibre(ctx, &a.group),
        ReduceMod { input, level, morphism } => commands::reduce_mod(ctx, &input.group, *level, morphism),
        Blowup { input, centre, plain, name } => commands::blowup(ctx, &input.group, centre, *plain, name),
        PartialBlowup { input, subgroup, level, plain } => {
            commands::partial(ctx, &input.group, subgroup, *level, *plain)
        }
        AutoTrunc { input, level } => commands::auto_trunc(ctx, &input.group, *level),
        AutoMember { input, numerator, power } => commands::auto_member(ctx, &input.group, numerator, *power),
        StandardSeq(a) => commands::standard_seq(ctx, &a.morphism),
        StrictTransform { input, centre, subgroup } => {
            commands::strict_transform(ctx, &input.group, centre, subgroup)
        }
        CheckConstancy { input, subgroup } => commands::check_constancy(ctx, &input.group, subgroup),
        RepValidate(a) => more::rep_validate(ctx, &a.rep),
        RepBlowupIdentity(a) => more::rep_blowup_identity(ctx, &a.rep),
        RepBlowupLine(a) => more::rep_blowup_line(ctx, &a.rep),
        RepRescale(a) => more::rep_rescale(ctx, &a.rep),
        RepSum { input, sigma, quotient } => more::rep_sum(ctx, &input.rep, sigma, quotient),
        RepFaithful { input, after_identity_blowup } => {
            more::rep_faithful(ctx, &input.rep, *after_identity_blowup)
        }
        Conormal { input, subgroup } => more::conormal(ctx, &input.group, subgroup),
        Image(a) => more::image(ctx, &a.morphism),
        Diptych(a) => more::diptych(ctx, &a.morphism),
        Triptych { input, bound } => more::triptych(ctx, &input.morphism, *bound),
        DgalSolve { input, order } => more::dgal_solve(ctx, &input.connection, *order),
        DgalTrivial { input, level } => more::dgal_trivial(ctx, &input.connection, *level),
        DgalDiagnose { input, level } => more::dgal_diagnose(ctx, &input.connection, *level),
    }
}
