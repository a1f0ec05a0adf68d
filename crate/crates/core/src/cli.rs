//! Command-line front end. `run` takes argv and two sinks and returns the
//! process exit code: 0 on success, 2 on invalid input, 3 when the surface's
//! intersection form has the wrong signature, 1 otherwise.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::arith::{parse_rat, Int, Rat};
use crate::error::{Error, Result};
use crate::lattice::{SurfaceDescriptor, SurfaceSpec};
use crate::mukai::MukaiVector;
use crate::oracle::SearchBox;
use crate::report::{DecomposeResult, FmImages, Payload, Report, SweepRow};
use crate::surfaces;
use crate::verdict::Status;
use crate::walls::TsqWindow;

#[derive(Parser, Debug)]
#[command(
    name = "fmstab",
    version,
    about = "Totally semistable walls, regimes and Fourier-Mukai stability verdicts on abelian surfaces"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct SurfaceArg {
    /// Surface JSON file, or one of the built-in names rank1, product,
    /// self-product, anisotropic.
    #[arg(long)]
    pub surface: String,
    /// Emit the JSON report instead of a table.
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug, Clone)]
pub struct VectorArg {
    /// Mukai vector as `r;c1,...,cρ;a`.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "v_file")]
    pub v: Option<String>,
    /// File holding the vector as JSON {"r":..,"xi":[..],"a":..} or text.
    #[arg(long)]
    pub v_file: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct RadiusArg {
    #[arg(long, default_value_t = 12)]
    pub radius: u64,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Mukai pairing of two vectors.
    Pair {
        #[command(flatten)]
        s: SurfaceArg,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
    },
    /// Cohomological Fourier-Mukai images.
    Fm {
        #[command(flatten)]
        s: SurfaceArg,
        #[command(flatten)]
        v: VectorArg,
    },
    /// Totally semistable walls on the line (0, tH).
    Walls {
        #[command(flatten)]
        s: SurfaceArg,
        #[command(flatten)]
        v: VectorArg,
        #[command(flatten)]
        r: RadiusArg,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        tsq_min: String,
        #[arg(long, default_value = "10")]
        tsq_max: String,
    },
    /// Decomposition v = l u + w for an I1 witness u.
    Decompose {
        #[command(flatten)]
        s: SurfaceArg,
        #[command(flatten)]
        v: VectorArg,
        #[arg(long, allow_hyphen_values = true)]
        u: String,
    },
    /// Crossing classes and regime thresholds.
    Regimes {
        #[command(flatten)]
        s: SurfaceArg,
        #[command(flatten)]
        v: VectorArg,
        #[command(flatten)]
        r: RadiusArg,
        /// Analyse the dual vector instead.
        #[arg(long)]
        dual: bool,
    },
    /// Whether the transform generically preserves Gieseker stability.
    Verdict {
        #[command(flatten)]
        s: SurfaceArg,
        #[command(flatten)]
        v: VectorArg,
        #[command(flatten)]
        r: RadiusArg,
    },
    /// Walls of the ample cone for v.
    AmpWalls {
        #[command(flatten)]
        s: SurfaceArg,
        #[command(flatten)]
        v: VectorArg,
        #[command(flatten)]
        r: RadiusArg,
    },
    /// Inequalities between every adjacent pair of walls.
    AppendixCheck {
        #[command(flatten)]
        s: SurfaceArg,
        #[command(flatten)]
        v: VectorArg,
        #[command(flatten)]
        r: RadiusArg,
    },
    /// Compare the enumerator with a brute-force scan.
    OracleCheck {
        #[command(flatten)]
        s: SurfaceArg,
        #[command(flatten)]
        v: VectorArg,
        #[arg(long = "box", default_value_t = 10)]
        bx: u32,
        #[arg(long, default_value = "10")]
        tsq_max: String,
    },
    /// Verdicts over a family of vectors, e.g. `--template "l;0,k;-1"
    /// --var l=1..4 --var k=2..9`.
    Sweep {
        #[command(flatten)]
        s: SurfaceArg,
        #[command(flatten)]
        r: RadiusArg,
        #[arg(long, allow_hyphen_values = true)]
        template: String,
        /// `name=lo..hi`, inclusive. The first variable varies slowest.
        #[arg(long = "var", allow_hyphen_values = true)]
        vars: Vec<String>,
    },
}

impl Command {
    fn surface_arg(&self) -> &SurfaceArg {
        match self {
            Command::Pair { s, .. }
            | Command::Fm { s, .. }
            | Command::Walls { s, .. }
            | Command::Decompose { s, .. }
            | Command::Regimes { s, .. }
            | Command::Verdict { s, .. }
            | Command::AmpWalls { s, .. }
            | Command::AppendixCheck { s, .. }
            | Command::OracleCheck { s, .. }
            | Command::Sweep { s, .. } => s,
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::UnsupportedSignature { .. } => 3,
        Error::InvalidSurface { .. }
        | Error::DimensionMismatch { .. }
        | Error::Precondition { .. }
        | Error::Parse(_)
        | Error::NotAdjacent { .. } => 2,
        Error::NoValidRole | Error::ContractViolation(_) | Error::Overflow(_) => 1,
    }
}

fn builtin(name: &str) -> Option<SurfaceDescriptor> {
    match name {
        "rank1" | "L1" => Some(surfaces::rank_one()),
        "product" | "L2" => Some(surfaces::product_elliptic()),
        "self-product" => Some(surfaces::self_product()),
        "anisotropic" => Some(surfaces::no_elliptic_rank_two()),
        _ => None,
    }
}

/// Reads a surface file. A missing file whose stem is a built-in name
/// resolves to that surface, so `--surface product.json` works anywhere.
pub fn load_surface(arg: &str) -> Result<SurfaceDescriptor> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read {arg}: {e}")))?;
        return SurfaceDescriptor::from_json(&text);
    }
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or(arg);
    builtin(arg)
        .or_else(|| builtin(stem))
        .ok_or_else(|| Error::Parse(format!("no surface file or built-in surface named `{arg}`")))
}

fn load_vector(s: &SurfaceDescriptor, v: &VectorArg) -> Result<MukaiVector> {
    let vec = match (&v.v, &v.v_file) {
        (Some(text), _) => MukaiVector::parse(text)?,
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
            match serde_json::from_str::<MukaiVector>(&text) {
                Ok(v) => v,
                Err(_) => MukaiVector::parse(&text)?,
            }
        }
        (None, None) => return Err(Error::Parse("one of --v or --v-file is required".into())),
    };
    s.check_vector(&vec)?;
    Ok(vec)
}

fn parse_vec(s: &SurfaceDescriptor, text: &str) -> Result<MukaiVector> {
    let v = MukaiVector::parse(text)?;
    s.check_vector(&v)?;
    Ok(v)
}

/// One slot of a sweep template: a literal, a variable or a negated variable.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Lit(Int),
    Var(String, bool),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Template {
    r: Token,
    xi: Vec<Token>,
    a: Token,
}

fn token(t: &str) -> Result<Token> {
    let t = t.trim();
    if let Ok(n) = t.parse::<Int>() {
        return Ok(Token::Lit(n));
    }
    let (neg, name) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t),
    };
    let ok = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
        && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
    if !ok {
        return Err(Error::Parse(format!("bad template slot `{t}`")));
    }
    Ok(Token::Var(name.to_string(), neg))
}

impl Template {
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(';').collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!("template `{s}`: expected `r;c1,...,cρ;a`")));
        }
        Ok(Template {
            r: token(parts[0])?,
            xi: parts[1].split(',').map(token).collect::<Result<_>>()?,
            a: token(parts[2])?,
        })
    }

    fn names(&self) -> Vec<&str> {
        std::iter::once(&self.r)
            .chain(&self.xi)
            .chain(std::iter::once(&self.a))
            .filter_map(|t| match t {
                Token::Var(n, _) => Some(n.as_str()),
                Token::Lit(_) => None,
            })
            .collect()
    }

    pub fn instantiate(&self, env: &[(String, i64)]) -> Result<MukaiVector> {
        let eval = |t: &Token| -> Result<Int> {
            match t {
                Token::Lit(n) => Ok(n.clone()),
                Token::Var(name, neg) => {
                    let x = env
                        .iter()
                        .find(|(n, _)| n == name)
                        .map(|(_, x)| *x)
                        .ok_or_else(|| Error::Parse(format!("template variable `{name}` has no --var range")))?;
                    Ok(Int::from(if *neg { -x } else { x }))
                }
            }
        };
        Ok(MukaiVector::new(
            eval(&self.r)?,
            crate::lattice::DivisorClass::new(self.xi.iter().map(eval).collect::<Result<_>>()?),
            eval(&self.a)?,
        ))
    }
}

/// Parses `name=lo..hi` (inclusive).
pub fn parse_var(s: &str) -> Result<(String, i64, i64)> {
    let bad = || Error::Parse(format!("variable range `{s}`: expected `name=lo..hi`"));
    let (name, range) = s.split_once('=').ok_or_else(bad)?;
    let (lo, hi) = range.split_once("..").ok_or_else(bad)?;
    let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: i64 = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(Error::Parse(format!("variable range `{s}` is empty")));
    }
    let name = name.trim();
    token(name)?;
    Ok((name.to_string(), lo, hi))
}

/// Every vector of the family, first variable slowest.
pub fn expand_sweep(template: &str, vars: &[String]) -> Result<Vec<MukaiVector>> {
    let t = Template::parse(template)?;
    let ranges = vars.iter().map(|v| parse_var(v)).collect::<Result<Vec<_>>>()?;
    for name in t.names() {
        if !ranges.iter().any(|(n, _, _)| n == name) {
            return Err(Error::Parse(format!("template variable `{name}` has no --var range")));
        }
    }
    let mut out = Vec::new();
    let mut env: Vec<(String, i64)> = ranges.iter().map(|(n, lo, _)| (n.clone(), *lo)).collect();
    loop {
        out.push(t.instantiate(&env)?);
        let mut k = env.len();
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            if env[k].1 < ranges[k].2 {
                env[k].1 += 1;
                break;
            }
            env[k].1 = ranges[k].1;
        }
    }
}

fn sweep_row(s: &SurfaceDescriptor, v: MukaiVector, radius: u64) -> SweepRow {
    match s.decide_preservation(&v, radius) {
        Ok(verdict) => SweepRow {
            status: verdict.status.name().to_string(),
            case: match &verdict.status {
                Status::NotPreservedGenerically { case } => Some(case.name().to_string()),
                _ => None,
            },
            t1sq: verdict.regimes.t1sq.clone(),
            t2sq: verdict.regimes.t2sq.clone(),
            walls: verdict.regimes.walls.len(),
            certified: verdict.certified,
            error: None,
            v,
        },
        Err(e) => SweepRow {
            v,
            status: "Error".into(),
            case: None,
            t1sq: None,
            t2sq: Rat::from_integer(0.into()),
            walls: 0,
            certified: false,
            error: Some(e.to_string()),
        },
    }
}

/// Runs one parsed command and returns its report.
pub fn execute(cmd: &Command) -> Result<Report> {
    let s = load_surface(&cmd.surface_arg().surface)?;
    let spec: SurfaceSpec = s.to_spec();
    let rep = match cmd {
        Command::Pair { x, y, .. } => {
            let (x, y) = (parse_vec(&s, x)?, parse_vec(&s, y)?);
            let value = s.pairing(&x, &y)?;
            Report::new(spec, "pair", Payload::Pair { x, y, value })
        }
        Command::Fm { v, .. } => {
            let v = load_vector(&s, v)?;
            let images = FmImages {
                transform: v.fm_transform(),
                dual: v.fm_dual(),
                shift: v.fm_shift(),
                square: s.square(&v),
                transform_square: s.square(&v.fm_transform()),
            };
            let mut rep = Report::new(spec, "fm", Payload::Fm(images));
            rep.vector = Some(v);
            rep
        }
        Command::Walls {
            v, r, tsq_min, tsq_max, ..
        } => {
            let v = load_vector(&s, v)?;
            let window = TsqWindow::new(parse_rat(tsq_min)?, Some(parse_rat(tsq_max)?))?;
            let en = s.enumerate_tss_walls_line(&v, &window, r.radius)?;
            let mut rep = Report::new(spec, "walls", Payload::Walls(en.clone()));
            rep.vector = Some(v);
            rep.radius = Some(r.radius);
            rep.window = Some(window);
            rep.certified = Some(en.certified);
            rep
        }
        Command::Decompose { v, u, .. } => {
            let v = load_vector(&s, v)?;
            let u = parse_vec(&s, u)?;
            let dec = s.tss_decompose(&v, &u)?;
            let pos = s.wall_position_line(&v, &u)?;
            let mut rep = Report::new(spec, "decompose", Payload::Decompose(DecomposeResult::new(dec, pos)));
            rep.vector = Some(v);
            rep
        }
        Command::Regimes { v, r, dual, .. } => {
            let v = load_vector(&s, v)?;
            let reg = if *dual {
                s.dual_regimes(&v, r.radius)?
            } else {
                s.compute_regimes(&v, r.radius)?
            };
            let certified = reg.certified;
            let mut rep = Report::new(spec, if *dual { "regimes --dual" } else { "regimes" }, Payload::Regimes(reg));
            rep.vector = Some(v);
            rep.radius = Some(r.radius);
            rep.window = Some(TsqWindow::unbounded());
            rep.certified = Some(certified);
            rep
        }
        Command::Verdict { v, r, .. } => {
            let v = load_vector(&s, v)?;
            let verdict = s.decide_preservation(&v, r.radius)?;
            let certified = verdict.certified;
            let mut rep = Report::new(spec, "verdict", Payload::Verdict(Box::new(verdict)));
            rep.vector = Some(v);
            rep.radius = Some(r.radius);
            rep.window = Some(TsqWindow::unbounded());
            rep.certified = Some(certified);
            rep
        }
        Command::AmpWalls { v, r, .. } => {
            let v = load_vector(&s, v)?;
            let amp = s.amp_irreducibility_check(&v, r.radius)?;
            let mut rep = Report::new(spec, "amp-walls", Payload::AmpWalls(amp));
            rep.vector = Some(v);
            rep.radius = Some(r.radius);
            rep
        }
        Command::AppendixCheck { v, r, .. } => {
            let v = load_vector(&s, v)?;
            let reps = s.appendix_verify_all(&v, r.radius)?;
            let certified = reps.iter().all(|c| c.certified);
            let mut rep = Report::new(spec, "appendix-check", Payload::Appendix(reps));
            rep.vector = Some(v);
            rep.radius = Some(r.radius);
            rep.window = Some(TsqWindow::unbounded());
            rep.certified = Some(certified);
            rep
        }
        Command::OracleCheck { v, bx, tsq_max, .. } => {
            let v = load_vector(&s, v)?;
            let window = TsqWindow::new(Rat::from_integer(0.into()), Some(parse_rat(tsq_max)?))?;
            let c = crate::oracle::crosscheck_walls(&s, &v, &window, SearchBox::new(*bx)?)?;
            let mut rep = Report::new(spec, "oracle-check", Payload::Oracle(c));
            rep.vector = Some(v);
            rep.radius = Some(*bx as u64);
            rep.window = Some(window);
            rep
        }
        Command::Sweep {
            r, template, vars, ..
        } => {
            let vs = expand_sweep(template, vars)?;
            for v in &vs {
                s.check_vector(v)?;
            }
            let rows: Vec<SweepRow> = vs.into_iter().map(|v| sweep_row(&s, v, r.radius)).collect();
            let certified = rows.iter().all(|r| r.certified);
            let mut rep = Report::new(spec, "sweep", Payload::Sweep(rows));
            rep.radius = Some(r.radius);
            rep.window = Some(TsqWindow::unbounded());
            rep.certified = Some(certified);
            rep
        }
    };
    Ok(rep)
}

/// Parses argv (including the program name), runs the command and writes
/// the report to `out`, diagnostics to `err`.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    let json = cli.command.surface_arg().json;
    match execute(&cli.command) {
        Ok(rep) => {
            let text = if json { rep.to_json() + "\n" } else { rep.to_text() };
            let _ = out.write_all(text.as_bytes());
            0
        }
        Err(e) => {
            let _ = writeln!(err, "fmstab: {e}");
            exit_code(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("fmstab").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn templates() {
        let vs = expand_sweep("l;0,k;-1", &["l=1..2".into(), "k=2..3".into()]).unwrap();
        let got: Vec<String> = vs.iter().map(|v| v.to_string()).collect();
        assert_eq!(got.len(), 4);
        assert_eq!(vs[0], MukaiVector::from_i64s(1, &[0, 2], -1));
        assert_eq!(vs[1], MukaiVector::from_i64s(1, &[0, 3], -1));
        assert_eq!(vs[3], MukaiVector::from_i64s(2, &[0, 3], -1));
        let vs = expand_sweep("1;0,k;-l", &["k=4..4".into(), "l=3..3".into()]).unwrap();
        assert_eq!(vs, vec![MukaiVector::from_i64s(1, &[0, 4], -3)]);
        assert!(expand_sweep("l;0,k;-1", &["l=1..2".into()]).is_err());
        assert!(expand_sweep("l;0,k;-1", &["l=3..2".into(), "k=1..1".into()]).is_err());
        assert!(parse_var("l=1").is_err());
        assert!(Template::parse("1;2").is_err());
        assert!(Template::parse("1;2x;0").is_err());
    }

    #[test]
    fn pair_and_exit_codes() {
        let (c, out, _) = run_str(&["pair", "--surface", "product.json", "--x", "1;0,0;0", "--y", "0;0,0;1"]);
        assert_eq!(c, 0);
        assert_eq!(out.trim_end().lines().last().unwrap(), "-1");
        let (c, _, err) = run_str(&["pair", "--surface", "product", "--x", "1;0;0", "--y", "0;0,0;1"]);
        assert_eq!(c, 2, "{err}");
        let (c, _, _) = run_str(&["pair", "--surface", "nowhere"]);
        assert_eq!(c, 2);
        let (c, out, _) = run_str(&["--help"]);
        assert_eq!(c, 0);
        assert!(out.contains("verdict"));
    }

    #[test]
    fn signature_exit_code() {
        let dir = std::env::temp_dir().join(format!("fmstab-sig-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let p = dir.join("neg.json");
        std::fs::write(&p, r#"{"name":"neg","gram":[[-2]],"ample":[1]}"#).unwrap();
        let (c, _, err) = run_str(&["walls", "--surface", p.to_str().unwrap(), "--v", "1;1;0"]);
        assert_eq!(c, 3, "{err}");
        let p2 = dir.join("hyp.json");
        std::fs::write(&p2, r#"{"name":"x","gram":[[2,0],[0,2]],"ample":[1,0]}"#).unwrap();
        let (c, _, err) = run_str(&["walls", "--surface", p2.to_str().unwrap(), "--v", "1;1,0;0"]);
        assert_eq!(c, 3, "{err}");
        std::fs::remove_dir_all(&dir).ok();
    }

    #[test]
    fn json_report_round_trips() {
        let (c, out, _) = run_str(&["verdict", "--surface", "product", "--v", "2;0,5;-1", "--json"]);
        assert_eq!(c, 0);
        let rep = Report::from_json(&out).unwrap();
        assert_eq!(rep.to_json() + "\n", out);
        let (_, again, _) = run_str(&["verdict", "--surface", "product", "--v", "2;0,5;-1", "--json"]);
        assert_eq!(out, again);
    }
}
