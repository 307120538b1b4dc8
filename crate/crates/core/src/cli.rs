//! Command-line front end. Every subcommand reads JSON (or DIMACS) files
//! and prints one JSON result object; see [`CommandResult`].
//!
//! Exit codes: 0 when the operation succeeds, 2 when a check ran and the
//! property fails, 1 when the command could not run.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::chain::{lemma_eq_cycle, Chain, LemmaError, PolytopeChain};
use crate::complex::{deleted_product, staircase_product, torus_gadget, AbstractComplex};
use crate::geom::{general_position_witness, strong_general_position_witness, Point, DEFAULT_SGP_CAP};
use crate::io::{self, IoError};
use crate::link::{borromean_check, leibniz_terms, linking_mod2_traced, remark_a_config, unit_sphere};
use crate::plmap::{preimage_cycle_with_report, resimplicialize_capped, PlmapError};
use crate::random;
use crate::reduce::{assemble_k_phi, default_plan, CnfFormula, LinkagePlan};

#[derive(Parser, Debug)]
#[command(name = "pltopo", about = "Exact mod-2 PL topology toolkit")]
struct Cli {
    /// Print the JSON schemas of all file formats and exit.
    #[arg(long)]
    schema: bool,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Args, Debug, Clone, Default)]
struct Common {
    /// Input file; repeat for commands taking several.
    #[arg(long = "in", value_name = "FILE")]
    inputs: Vec<PathBuf>,
    /// Output file for the primary artifact (or the witness of a violation).
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    l: Option<usize>,
    #[arg(long)]
    d: Option<usize>,
    /// Seed for the ChaCha8 generator used by randomized generators.
    #[arg(long)]
    seed: Option<u64>,
    /// Enumeration cap (points for strong general position).
    #[arg(long)]
    cap: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Boundary of a simplex, triangulating the k-sphere.
    GenSphere(Common),
    /// Staircase torus gadget with marked meridian m and parallel p.
    GenTorus(Common),
    /// The l = 0 configuration of two spheres and a four-point torus.
    GenRemarkA(Common),
    DeletedProduct(Common),
    Boundary(Common),
    CheckCycle(Common),
    CheckSimplicial(Common),
    CheckGp(Common),
    CheckSgp(Common),
    /// --in chain --in point-set
    Resimplicialize(Common),
    /// --in map --in chain
    Preimage(Common),
    /// --in chain --in chain
    Linking(Common),
    BorromeanCheck(Common),
    Leibniz(Common),
    LemmaEq(Common),
    /// --in formula.cnf [--in plan.json] --k K --d D
    Reduce(Common),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Violation,
    Error,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CommandResult {
    pub status: Status,
    pub payload: Value,
    pub transcript: Vec<String>,
}

impl CommandResult {
    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Ok => 0,
            Status::Violation => 2,
            Status::Error => 1,
        }
    }

    fn error(message: impl ToString) -> Self {
        CommandResult { status: Status::Error, payload: json!({ "error": message.to_string() }), transcript: vec![] }
    }
}

type Outcome = Result<CommandResult, String>;

struct Ctx {
    common: Common,
    transcript: Vec<String>,
}

impl Ctx {
    fn input(&self, i: usize) -> Result<&PathBuf, String> {
        self.common.inputs.get(i).ok_or_else(|| format!("missing --in argument #{}", i + 1))
    }

    fn json(&self, i: usize) -> Result<Value, String> {
        let p = self.input(i)?;
        io::read_json(&p.to_string_lossy()).map_err(|e| format!("{}: {e}", p.display()))
    }

    fn parse<T>(&self, i: usize, f: impl FnOnce(Value) -> Result<T, IoError>) -> Result<T, String> {
        let v = self.json(i)?;
        f(v).map_err(|e| format!("{}: {e}", self.input(i).map(|p| p.display().to_string()).unwrap_or_default()))
    }

    fn need(&self, name: &str, v: Option<usize>) -> Result<usize, String> {
        v.ok_or_else(|| format!("missing --{name}"))
    }

    fn log(&mut self, line: impl Into<String>) {
        self.transcript.push(line.into());
    }

    fn write(&mut self, artifact: &Value) -> Result<(), String> {
        if let Some(out) = &self.common.out {
            std::fs::write(out, io::to_pretty(artifact)).map_err(|e| format!("{}: {e}", out.display()))?;
            self.transcript.push(format!("wrote {}", out.display()));
        }
        Ok(())
    }

    fn finish(mut self, status: Status, payload: Value, artifact: Option<&Value>) -> Outcome {
        if let Some(a) = artifact {
            self.write(a)?;
        }
        Ok(CommandResult { status, payload, transcript: self.transcript })
    }
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, S>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return CommandResult { status: Status::Ok, payload: json!({ "help": e.to_string() }), transcript: vec![] };
            }
            return CommandResult::error(e.to_string().trim_end());
        }
    };
    if cli.schema {
        return CommandResult { status: Status::Ok, payload: io::schemas(), transcript: vec![] };
    }
    let Some(cmd) = cli.command else {
        return CommandResult::error("no subcommand given; try --help");
    };
    dispatch(cmd).unwrap_or_else(CommandResult::error)
}

fn dispatch(cmd: Command) -> Outcome {
    use Command::*;
    let (f, common): (fn(Ctx) -> Outcome, Common) = match cmd {
        GenSphere(c) => (gen_sphere, c),
        GenTorus(c) => (gen_torus, c),
        GenRemarkA(c) => (gen_remark_a, c),
        DeletedProduct(c) => (deleted_product_cmd, c),
        Boundary(c) => (boundary, c),
        CheckCycle(c) => (check_cycle, c),
        CheckSimplicial(c) => (check_simplicial, c),
        CheckGp(c) => (check_gp, c),
        CheckSgp(c) => (check_sgp, c),
        Resimplicialize(c) => (resimplicialize_cmd, c),
        Preimage(c) => (preimage, c),
        Linking(c) => (linking, c),
        BorromeanCheck(c) => (borromean, c),
        Leibniz(c) => (leibniz, c),
        LemmaEq(c) => (lemma_eq, c),
        Reduce(c) => (reduce, c),
    };
    f(Ctx { common, transcript: Vec::new() })
}

fn complex_summary(c: &AbstractComplex) -> Value {
    json!({
        "vertices": c.vertex_count(),
        "dim": c.dim(),
        "face_vector": c.face_vector(),
        "euler_characteristic": c.euler_characteristic(),
    })
}

fn gen_sphere(mut ctx: Ctx) -> Outcome {
    let k = ctx.need("k", ctx.common.k)?;
    let s = match ctx.common.seed {
        Some(seed) => {
            let d = ctx.common.d.unwrap_or(k + 1);
            ctx.log(format!("random realization in R^{d}, seed {seed}"));
            random::realize(&mut random::rng(seed), crate::complex::boundary_sphere(k), d, -10, 10)
        }
        None => unit_sphere(k),
    };
    let art = io::complex_to_json(&s);
    let payload = json!({ "summary": complex_summary(&s), "complex": art });
    ctx.finish(Status::Ok, payload, Some(&art))
}

fn gen_torus(mut ctx: Ctx) -> Outcome {
    let l = ctx.need("l", ctx.common.l)?;
    let t = torus_gadget(l);
    let t = match ctx.common.seed {
        Some(seed) => {
            let d = ctx.common.d.unwrap_or(2 * l + 2);
            ctx.log(format!("random realization in R^{d}, seed {seed}"));
            random::realize(&mut random::rng(seed), t, d, -10, 10)
        }
        None => {
            let s = unit_sphere(l);
            let pts = staircase_product(&s, &s).realization().expect("realized").to_vec();
            t.with_realization(pts).map_err(|e| e.to_string())?
        }
    };
    let art = io::complex_to_json(&t);
    let payload = json!({ "summary": complex_summary(&t), "complex": art });
    ctx.finish(Status::Ok, payload, Some(&art))
}

fn gen_remark_a(ctx: Ctx) -> Outcome {
    let k = ctx.need("k", ctx.common.k)?;
    let cfg = remark_a_config(k).map_err(|e| e.to_string())?;
    let art = io::borromean_to_json(&cfg);
    ctx.finish(Status::Ok, art.clone(), Some(&art))
}

fn deleted_product_cmd(ctx: Ctx) -> Outcome {
    let k = ctx.parse(0, io::complex_from_json)?;
    let dp = deleted_product(&k);
    let census: Vec<Value> = dp
        .census()
        .into_iter()
        .map(|((i, j), n)| json!({ "bidim": [i, j], "count": n }))
        .collect();
    let art = io::deleted_product_to_json(&dp);
    let payload = json!({
        "cells": dp.cells().len(),
        "census": census,
        "fixed_point_free": dp.is_fixed_point_free(),
        "deleted_product": art,
    });
    ctx.finish(Status::Ok, payload, Some(&art))
}

fn boundary(ctx: Ctx) -> Outcome {
    let c = ctx.parse(0, io::chain_from_json)?;
    let art = io::chain_to_json(&c.boundary());
    ctx.finish(Status::Ok, art.clone(), Some(&art))
}

fn check_cycle(ctx: Ctx) -> Outcome {
    let c = ctx.parse(0, io::chain_from_json)?;
    let b = c.boundary();
    let Some(face) = b.iter().next() else {
        return ctx.finish(Status::Ok, json!({ "cycle": true }), None);
    };
    // the simplices having this face form a smaller chain that still fails
    let around = Chain::from_simplices(
        c.dim(),
        c.ambient(),
        c.iter().filter(|s| s.facets().contains(face)).cloned(),
    )
    .map_err(|e| e.to_string())?;
    let witness = io::chain_to_json(&around);
    let payload = json!({ "cycle": false, "boundary": io::chain_to_json(&b), "witness": witness });
    ctx.finish(Status::Violation, payload, Some(&witness))
}

fn check_simplicial(ctx: Ctx) -> Outcome {
    let c = ctx.parse(0, io::chain_from_json)?;
    match c.simpliciality_witness() {
        None => ctx.finish(Status::Ok, json!({ "simplicial": true }), None),
        Some((a, b)) => {
            let w = Chain::from_simplices(c.dim(), c.ambient(), [a, b]).map_err(|e| e.to_string())?;
            let witness = io::chain_to_json(&w);
            ctx.finish(Status::Violation, json!({ "simplicial": false, "witness": witness }), Some(&witness))
        }
    }
}

fn point_witness(ctx: Ctx, key: &str, d: usize, pts: Vec<Point>) -> Outcome {
    let witness = io::points_to_json(d, &pts);
    ctx.finish(Status::Violation, json!({ key: false, "witness": witness }), Some(&witness))
}

fn check_gp(ctx: Ctx) -> Outcome {
    let (ambient, pts) = ctx.parse(0, io::points_from_json)?;
    let d = ctx.common.d.unwrap_or(ambient);
    match general_position_witness(&pts, d).map_err(|e| e.to_string())? {
        None => ctx.finish(Status::Ok, json!({ "general_position": true }), None),
        Some(idx) => {
            let w = idx.iter().map(|&i| pts[i].clone()).collect();
            point_witness(ctx, "general_position", ambient, w)
        }
    }
}

fn check_sgp(ctx: Ctx) -> Outcome {
    let (ambient, pts) = ctx.parse(0, io::points_from_json)?;
    let d = ctx.common.d.unwrap_or(ambient);
    let cap = ctx.common.cap.unwrap_or(DEFAULT_SGP_CAP);
    match strong_general_position_witness(&pts, d, cap).map_err(|e| e.to_string())? {
        None => ctx.finish(Status::Ok, json!({ "strong_general_position": true }), None),
        Some(blocks) => {
            let w = blocks.iter().flatten().map(|&i| pts[i].clone()).collect();
            point_witness(ctx, "strong_general_position", ambient, w)
        }
    }
}

fn resimplicialize_cmd(ctx: Ctx) -> Outcome {
    let c = ctx.parse(0, io::chain_from_json)?;
    let (_, u) = ctx.parse(1, io::points_from_json)?;
    let cap = ctx.common.cap.unwrap_or(DEFAULT_SGP_CAP);
    match resimplicialize_capped(&c, &u, cap) {
        Ok(out) => {
            let art = io::chain_to_json(&out);
            ctx.finish(Status::Ok, art.clone(), Some(&art))
        }
        Err(PlmapError::Position(r)) => {
            let pts = r.witness.unwrap_or_default();
            let witness = io::points_to_json(c.ambient(), &pts);
            let payload = json!({ "precondition": "strong general position", "holds": false, "witness": witness });
            ctx.finish(Status::Violation, payload, Some(&witness))
        }
        Err(PlmapError::Postcondition { simplex, witness }) => {
            let payload = json!({
                "postcondition": "general position",
                "holds": false,
                "simplex": simplex.vertices(),
                "witness": io::points_to_json(c.ambient(), &witness),
                "chain": io::chain_to_json(&c),
                "points": io::points_to_json(c.ambient(), &u),
            });
            ctx.finish(Status::Violation, payload.clone(), Some(&payload))
        }
        Err(e) => Err(e.to_string()),
    }
}

fn preimage(mut ctx: Ctx) -> Outcome {
    let f = ctx.parse(0, io::plmap_from_json)?;
    let c = ctx.parse(1, io::chain_from_json)?;
    match preimage_cycle_with_report(&f, &c) {
        Ok(rep) => {
            ctx.log(format!("resimplicialized chain has {} simplices", rep.resimplicialized.len()));
            ctx.log(format!("{} pieces of dimension {}", rep.pieces.len(), rep.piece_dim));
            ctx.log(format!("parity audit: {} wall cells, {} interior cells", rep.wall_cells, rep.interior_cells));
            let art = io::chain_to_json(&rep.cycle);
            let payload = json!({ "cycle": rep.cycle.is_cycle(), "simplices": rep.cycle.len(), "chain": art });
            ctx.finish(Status::Ok, payload, Some(&art))
        }
        Err(e @ (PlmapError::Position(_)
        | PlmapError::Postcondition { .. }
        | PlmapError::PieceDim { .. }
        | PlmapError::CaseClaim { .. }
        | PlmapError::Parity { .. }
        | PlmapError::Lemma(_))) => ctx.finish(Status::Violation, json!({ "violation": e.to_string() }), None),
        Err(e) => Err(e.to_string()),
    }
}

fn linking(ctx: Ctx) -> Outcome {
    let x = ctx.parse(0, io::chain_from_json)?;
    let y = ctx.parse(1, io::chain_from_json)?;
    let (bit, t) = linking_mod2_traced(&x, &y).map_err(|e| e.to_string())?;
    ctx.finish(Status::Ok, json!({ "linking_mod2": bit, "apex_index": t }), None)
}

fn borromean(mut ctx: Ctx) -> Outcome {
    let cfg = ctx.parse(0, io::borromean_from_json)?;
    let r = borromean_check(&cfg).map_err(|e| e.to_string())?;
    for line in &r.transcript {
        ctx.log(line.clone());
    }
    let payload = json!({
        "disjoint": r.disjoint,
        "lk_pp": r.lk_pp,
        "lk_pm": r.lk_pm,
        "lk_mm": r.lk_mm,
        "lk_mp": r.lk_mp,
        "property1": r.property1,
        "property2": r.property2,
        "property3": r.property3,
    });
    let status = if r.all_hold() { Status::Ok } else { Status::Violation };
    ctx.finish(status, payload.clone(), Some(&payload))
}

fn leibniz(mut ctx: Ctx) -> Outcome {
    let cfg = ctx.parse(0, io::borromean_from_json)?;
    let r = leibniz_terms(&cfg).map_err(|e| e.to_string())?;
    ctx.log(format!("apexes {:?}", r.apexes));
    let payload = json!({ "terms": r.terms, "counts": r.counts, "sum": r.sum, "alarm": r.alarm });
    let status = if r.alarm { Status::Violation } else { Status::Ok };
    ctx.finish(status, payload.clone(), Some(&payload))
}

fn lemma_eq(ctx: Ctx) -> Outcome {
    let p = ctx.parse(0, io::polytope_chain_from_json)?;
    match lemma_eq_cycle(&p) {
        Ok(c) => {
            let art = io::chain_to_json(&c);
            ctx.finish(Status::Ok, art.clone(), Some(&art))
        }
        Err(LemmaError::Overlap { first, second, intersection }) => {
            let w = PolytopeChain { dim: p.dim, ambient: p.ambient, cells: vec![p.cells[first].clone(), p.cells[second].clone()] };
            let witness = io::polytope_chain_to_json(&w);
            let payload = json!({
                "hypothesis": 1,
                "cells": [first, second],
                "intersection": intersection.vertices(),
                "witness": witness,
            });
            ctx.finish(Status::Violation, payload, Some(&witness))
        }
        Err(LemmaError::OddBoundary { cell, cells }) => {
            let w = PolytopeChain { dim: p.dim, ambient: p.ambient, cells: cells.iter().map(|&i| p.cells[i].clone()).collect() };
            let witness = io::polytope_chain_to_json(&w);
            let payload = json!({
                "hypothesis": 2,
                "cell": cell.vertices(),
                "containing": cells,
                "witness": witness,
            });
            ctx.finish(Status::Violation, payload, Some(&witness))
        }
        Err(LemmaError::NotACycle) => ctx.finish(Status::Violation, json!({ "violation": "not a cycle" }), None),
        Err(e) => Err(e.to_string()),
    }
}

fn reduce(mut ctx: Ctx) -> Outcome {
    let k = ctx.need("k", ctx.common.k)?;
    let d = ctx.need("d", ctx.common.d)?;
    crate::reduce::build_gadget_kit(k, d).map_err(|e| e.to_string())?;
    let path = ctx.input(0)?.clone();
    let text = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    let phi = CnfFormula::parse_dimacs(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    let plan: LinkagePlan = if ctx.common.inputs.len() > 1 {
        let v = ctx.json(1)?;
        serde_json::from_value(v).map_err(|e| format!("plan: {e}"))?
    } else {
        ctx.log("using the default placeholder plan");
        default_plan(&phi)
    };
    let out = assemble_k_phi(&phi, k, d, &plan).map_err(|e| e.to_string())?;
    let art = io::complex_to_json(&out.complex);
    let prov = serde_json::to_value(&out.provenance).expect("serializable");
    if let Some(o) = &ctx.common.out {
        let side = PathBuf::from(format!("{}.provenance.json", o.display()));
        std::fs::write(&side, io::to_pretty(&prov)).map_err(|e| format!("{}: {e}", side.display()))?;
        ctx.log(format!("wrote {}", side.display()));
    }
    let payload = json!({
        "summary": complex_summary(&out.complex),
        "spheres": plan.spheres.len(),
        "tori": plan.tori.len(),
        "simplex_count": out.provenance.simplex_count,
        "size_bound": out.provenance.size_bound,
        "placeholder": out.provenance.placeholder,
    });
    ctx.finish(Status::Ok, payload, Some(&art))
}
