//! The report envelope written by the command-line tool, and its plain-text
//! rendering.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::amp::AmpIrreducibility;
use crate::appendix::CheckReport;
use crate::arith::{fmt_rat_short as fmt_rat, Int};
use crate::lattice::SurfaceSpec;
use crate::mukai::MukaiVector;
use crate::oracle::Crosscheck;
use crate::regime::RegimeReport;
use crate::serde_util;
use crate::verdict::{PreservationVerdict, Status};
use crate::walls::{Decomposition, LinePosition, TsqWindow, WallEnumeration};

pub const TOOL: &str = "fmstab";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FmImages {
    /// (a, −ξ, r).
    pub transform: MukaiVector,
    /// (a, ξ, r).
    pub dual: MukaiVector,
    /// (−a, ξ, −r).
    pub shift: MukaiVector,
    #[serde(with = "serde_util::int")]
    pub square: Int,
    #[serde(with = "serde_util::int")]
    pub transform_square: Int,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecomposeResult {
    pub decomposition: Decomposition,
    /// `None` when the wall misses the line.
    #[serde(with = "serde_util::opt_rat")]
    pub tsq: Option<crate::arith::Rat>,
    pub degenerate: bool,
}

impl DecomposeResult {
    pub fn new(decomposition: Decomposition, pos: LinePosition) -> Self {
        let degenerate = pos == LinePosition::Degenerate;
        DecomposeResult {
            decomposition,
            tsq: pos.tsq().cloned(),
            degenerate,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    pub v: MukaiVector,
    pub status: String,
    /// The blocking exceptional case, if any.
    pub case: Option<String>,
    #[serde(with = "serde_util::opt_rat")]
    pub t1sq: Option<crate::arith::Rat>,
    #[serde(with = "serde_util::rat")]
    pub t2sq: crate::arith::Rat,
    pub walls: usize,
    pub certified: bool,
    /// Set when the verdict could not be computed for this row.
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", content = "data", rename_all = "kebab-case")]
pub enum Payload {
    Pair {
        x: MukaiVector,
        y: MukaiVector,
        #[serde(with = "serde_util::int")]
        value: Int,
    },
    Fm(FmImages),
    Walls(WallEnumeration),
    Decompose(DecomposeResult),
    Regimes(RegimeReport),
    Verdict(Box<PreservationVerdict>),
    AmpWalls(AmpIrreducibility),
    Appendix(Vec<CheckReport>),
    Oracle(Crosscheck),
    Sweep(Vec<SweepRow>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub surface: SurfaceSpec,
    pub vector: Option<MukaiVector>,
    pub command: String,
    pub radius: Option<u64>,
    pub window: Option<TsqWindow>,
    pub certified: Option<bool>,
    pub payload: Payload,
}

impl Report {
    pub fn new(surface: SurfaceSpec, command: &str, payload: Payload) -> Self {
        Report {
            tool: TOOL.to_string(),
            version: VERSION.to_string(),
            surface,
            vector: None,
            command: command.to_string(),
            radius: None,
            window: None,
            certified: None,
            payload,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    /// Human-readable rendering.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "surface: {}", self.surface.name);
        if let Some(v) = &self.vector {
            let _ = writeln!(s, "v = ({v})");
        }
        if let Some(r) = self.radius {
            let _ = writeln!(s, "radius: {r}");
        }
        if let Some(w) = &self.window {
            let hi = w.hi.as_ref().map_or("inf)".to_string(), |h| format!("{}]", fmt_rat(h)));
            let _ = writeln!(s, "window: ({}, {hi}", fmt_rat(&w.lo));
        }
        if let Some(c) = self.certified {
            let _ = writeln!(s, "certified: {c}");
        }
        match &self.payload {
            Payload::Pair { value, .. } => {
                let _ = writeln!(s, "{value}");
            }
            Payload::Fm(f) => {
                let _ = writeln!(s, "transform: ({})", f.transform);
                let _ = writeln!(s, "dual:      ({})", f.dual);
                let _ = writeln!(s, "shift:     ({})", f.shift);
                let _ = writeln!(s, "<v^2> = {}, <Phi(v)^2> = {}", f.square, f.transform_square);
            }
            Payload::Walls(en) => {
                if en.walls.is_empty() {
                    let _ = writeln!(s, "no walls");
                }
                for w in &en.walls {
                    let ws: Vec<String> = w.witnesses.iter().map(|u| format!("({u})")).collect();
                    let _ = writeln!(
                        s,
                        "t^2 = {:<8} witnesses {}  w = ({})",
                        fmt_rat(&w.tsq),
                        ws.join(" "),
                        w.decomposition.w
                    );
                }
            }
            Payload::Decompose(d) => {
                let dec = &d.decomposition;
                let _ = writeln!(s, "v = {} * ({}) + ({})", dec.ell, dec.u, dec.w);
                match (&d.tsq, d.degenerate) {
                    (Some(t), _) => {
                        let _ = writeln!(s, "wall at t^2 = {}", fmt_rat(t));
                    }
                    (None, true) => {
                        let _ = writeln!(s, "degenerate witness");
                    }
                    (None, false) => {
                        let _ = writeln!(s, "no intersection with the line");
                    }
                }
            }
            Payload::Regimes(r) => render_regimes(&mut s, r),
            Payload::Verdict(v) => {
                let _ = writeln!(s, "status: {}", v.status.name());
                match &v.status {
                    Status::NotPreservedGenerically { case } => {
                        let _ = writeln!(s, "case: {}", case.name());
                    }
                    Status::Inconclusive { reason } => {
                        let _ = writeln!(s, "reason: {reason}");
                    }
                    Status::PreservedWithSomeLL { witness: Some(w) } => {
                        let _ = writeln!(s, "L = ({})", w.l());
                    }
                    _ => {}
                }
                let _ = writeln!(s, "shift: {:?}", v.shift);
                if let Some(b) = v.corollary {
                    let _ = writeln!(s, "corollary branch: {b:?}");
                }
                let _ = writeln!(s, "-- regimes");
                render_regimes(&mut s, &v.regimes);
                let _ = writeln!(s, "-- dual regimes");
                render_regimes(&mut s, &v.dual_regimes);
                if let Some(a) = &v.advisory {
                    let _ = writeln!(
                        s,
                        "advisory {:?}: 1/(n^2 t1'^2) = {} vs t1^2 = {}: {}",
                        a.kind,
                        fmt_rat(&a.mapped),
                        fmt_rat(&a.t1sq),
                        a.holds
                    );
                }
            }
            Payload::AmpWalls(a) => match a {
                AmpIrreducibility::Irreducible => {
                    let _ = writeln!(s, "irreducible (<v^2> >= 2r)");
                }
                AmpIrreducibility::IrreducibleWithinRadius => {
                    let _ = writeln!(s, "no chamber walls within radius");
                }
                AmpIrreducibility::PossiblySeparated(ws) => {
                    for w in ws {
                        let _ = writeln!(
                            s,
                            "v1 = ({})  v2 = ({})  delta = ({})  (delta^2) = {}",
                            w.v1, w.v2, w.delta, w.delta_square
                        );
                    }
                }
            },
            Payload::Appendix(reps) => {
                if reps.is_empty() {
                    let _ = writeln!(s, "fewer than two walls");
                }
                for r in reps {
                    let _ = writeln!(s, "walls {} < {}:", fmt_rat(&r.low_tsq), fmt_rat(&r.high_tsq));
                    for c in &r.checks {
                        let vals: Vec<String> = c.values.iter().map(fmt_rat).collect();
                        let mark = if c.holds { "pass" } else { "FAIL" };
                        let _ = writeln!(s, "  [{mark}] {:<8} {}  ({})", c.id, c.statement, vals.join(", "));
                    }
                }
            }
            Payload::Oracle(c) => match c {
                Crosscheck::Agree { pairs } => {
                    let _ = writeln!(s, "agree on {} (t^2, witness) pairs", pairs.len());
                    for p in pairs {
                        let _ = writeln!(s, "  {}  ({})", fmt_rat(&p.tsq), p.witness);
                    }
                }
                Crosscheck::Disagree {
                    only_oracle,
                    only_enumerator,
                } => {
                    let _ = writeln!(s, "DISAGREE");
                    for p in only_oracle {
                        let _ = writeln!(s, "  oracle only:     {}  ({})", fmt_rat(&p.tsq), p.witness);
                    }
                    for p in only_enumerator {
                        let _ = writeln!(s, "  enumerator only: {}  ({})", fmt_rat(&p.tsq), p.witness);
                    }
                }
            },
            Payload::Sweep(rows) => {
                for r in rows {
                    if let Some(e) = &r.error {
                        let _ = writeln!(s, "({})  error: {e}", r.v);
                        continue;
                    }
                    let t1 = r.t1sq.as_ref().map_or("-".to_string(), fmt_rat);
                    let _ = writeln!(
                        s,
                        "({})  {:<24} {:<12} t1^2={:<6} t2^2={:<6} walls={} certified={}",
                        r.v,
                        r.status,
                        r.case.as_deref().unwrap_or("-"),
                        t1,
                        fmt_rat(&r.t2sq),
                        r.walls,
                        r.certified
                    );
                }
            }
        }
        s
    }
}

fn render_regimes(s: &mut String, r: &RegimeReport) {
    let _ = writeln!(s, "vector ({})", r.vector);
    for w in &r.walls {
        let _ = writeln!(
            s,
            "  t^2 = {:<8} {:<12} below: {}",
            fmt_rat(w.tsq()),
            w.crossing.to_string(),
            w.regime_below
        );
    }
    let t1 = r.t1sq.as_ref().map_or("n/a".to_string(), fmt_rat);
    let _ = writeln!(s, "  t1^2 = {t1}, t2^2 = {}, certified = {}", fmt_rat(&r.t2sq), r.certified);
}
