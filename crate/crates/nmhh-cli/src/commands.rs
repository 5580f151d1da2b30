use clap::{Args, Parser, Subcommand};
use nmhh::bimod::{normalizer_dimension, standard_bimodule, tangent_dimension, BimoduleKind};
use nmhh::exactla::CoeffRing;
use nmhh::ghstructure::{cup, gerstenhaber_bracket, n2_theory, parse_class, BracketMethod};
use nmhh::homology::{hochschild, hochschild_data, Model};
use nmhh::qma::{phi, PhiMethod};
use nmhh::specseq::{e1_page, e2_page};
use serde_json::{json, Value};

use crate::output::{group_json, Format, Output, Table};
use crate::verify::{run_suite, Suite};

#[derive(Parser, Debug)]
#[command(name = "nmhh", version, about = "Hochschild cohomology of upper-triangular matrices with constant diagonal")]
pub struct Cli {
    /// Output format: json, csv or latex.
    #[arg(long, global = true, default_value = "json")]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Ranks φ(n) of the quadratic dual.
    Phi(PhiArgs),
    /// HH^n(N_m, target) per degree, optionally split by internal degree.
    Hh(HhArgs),
    /// The E2 page of the J-adic spectral sequence.
    E2(E2Args),
    /// Cup product of two classes.
    Cup(ProductArgs),
    /// Gerstenhaber bracket of two classes.
    Bracket(BracketArgs),
    /// Tangent dimension at N_m.
    Tangent(MArgs),
    /// Groups, products, brackets and BV checks for m = 2.
    N2(N2Args),
    /// Runs a verification suite; exit status 1 if any check fails.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
pub struct MArgs {
    #[arg(long)]
    pub m: usize,
}

#[derive(Args, Debug)]
pub struct PhiArgs {
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub max_n: usize,
    /// enumerate, recursion, series, combinatorial
    #[arg(long, default_value = "recursion")]
    pub method: String,
}

#[derive(Args, Debug)]
pub struct HhArgs {
    #[arg(long)]
    pub m: usize,
    /// N, B, M, M/N, B/N, M/J, R, Gr<p>, J^<p>
    #[arg(long, default_value = "N")]
    pub target: BimoduleKind,
    #[arg(long, default_value = "Q")]
    pub ring: CoeffRing,
    #[arg(long)]
    pub max_n: usize,
    /// koszul or bar
    #[arg(long, default_value = "koszul")]
    pub model: String,
    #[arg(long)]
    pub bigraded: bool,
}

#[derive(Args, Debug)]
pub struct E2Args {
    #[arg(long)]
    pub m: usize,
    #[arg(long, default_value = "N")]
    pub target: BimoduleKind,
    #[arg(long, default_value = "Z")]
    pub ring: CoeffRing,
    /// Largest total degree p + q.
    #[arg(long)]
    pub max_n: usize,
}

#[derive(Args, Debug)]
pub struct ProductArgs {
    #[arg(long)]
    pub m: usize,
    #[arg(long, default_value = "Q")]
    pub ring: CoeffRing,
    #[arg(long)]
    pub x: String,
    #[arg(long)]
    pub y: String,
}

#[derive(Args, Debug)]
pub struct BracketArgs {
    #[command(flatten)]
    pub pair: ProductArgs,
    /// closed_form or cochain
    #[arg(long, default_value = "cochain")]
    pub method: BracketMethod,
}

#[derive(Args, Debug)]
pub struct N2Args {
    #[arg(long, default_value = "Z")]
    pub ring: CoeffRing,
    #[arg(long, default_value_t = 6)]
    pub max_n: usize,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// phi, ranks, bigraded, e2, homotopy, collapse, oracle, products,
    /// bracket, bv, n2, tangent, or all
    #[arg(long)]
    pub suite: String,
    /// Restricts the suite to these m (repeatable); default is the full range.
    #[arg(long)]
    pub m: Vec<usize>,
}

fn phi_method(s: &str) -> Result<PhiMethod, String> {
    match s {
        "enumerate" => Ok(PhiMethod::Enumerate),
        "recursion" => Ok(PhiMethod::Recursion),
        "series" => Ok(PhiMethod::Series),
        "combinatorial" => Ok(PhiMethod::Combinatorial),
        _ => Err(format!("unknown phi method `{s}`")),
    }
}

fn check_m(m: usize, min: usize) -> Result<(), String> {
    if m < min {
        return Err(format!("--m must be at least {min}, got {m}"));
    }
    Ok(())
}

fn run_phi(a: &PhiArgs) -> Result<Output, String> {
    check_m(a.m, 2)?;
    let method = phi_method(&a.method)?;
    let vals: Vec<i64> = (0..=a.max_n as i64).map(|n| phi(a.m, n, method)).collect();
    let mut table = Table::new(["n", "phi"]);
    for (n, v) in vals.iter().enumerate() {
        table.push([n as i64, *v]);
    }
    Ok(Output {
        command: "phi".into(),
        params: json!({ "m": a.m, "max_n": a.max_n, "method": a.method }),
        result: json!(vals),
        table,
        status: 0,
    })
}

fn run_hh(a: &HhArgs) -> Result<Output, String> {
    check_m(a.m, 2)?;
    let model = match a.model.as_str() {
        "koszul" => Model::Koszul,
        "bar" => Model::Bar,
        s => return Err(format!("unknown model `{s}`")),
    };
    let coeff = standard_bimodule(a.m, a.target).map_err(|e| e.to_string())?;
    let table = hochschild_data(&coeff, a.max_n, model).map_err(|e| e.to_string())?.table(a.ring);
    let totals: Vec<_> = (0..=a.max_n).map(|n| table.total(n)).collect();
    let mut result = json!({
        "ranks": totals.iter().map(|g| g.free_rank).collect::<Vec<_>>(),
        "groups": totals.iter().map(group_json).collect::<Vec<_>>(),
    });
    let out_table = if a.bigraded {
        result["bigraded"] = Value::Array(
            table.entries.iter().map(|(&(n, s), g)| json!({ "n": n, "s": s, "group": group_json(g) })).collect(),
        );
        Table::pivot("n\\s", table.entries.iter().map(|(&(n, s), g)| (n, s, g.to_string())))
    } else {
        let mut t = Table::new(["n", "group", "rank"]);
        for (n, g) in totals.iter().enumerate() {
            t.push([n.to_string(), g.to_string(), g.free_rank.to_string()]);
        }
        t
    };
    Ok(Output {
        command: "hh".into(),
        params: json!({
            "m": a.m, "target": a.target.to_string(), "ring": a.ring.to_string(),
            "max_n": a.max_n, "model": a.model, "bigraded": a.bigraded,
        }),
        result,
        table: out_table,
        status: 0,
    })
}

fn run_e2(a: &E2Args) -> Result<Output, String> {
    check_m(a.m, 2)?;
    let page = e1_page(a.m, a.target, a.max_n).map_err(|e| e.to_string())?;
    let e2 = e2_page(&page, a.ring);
    let entries: Vec<_> = e2.groups.iter().filter(|(&(p, q), _)| p + q >= 0 && p + q <= a.max_n as i32).collect();
    Ok(Output {
        command: "e2".into(),
        params: json!({ "m": a.m, "target": a.target.to_string(), "ring": a.ring.to_string(), "max_n": a.max_n }),
        result: json!({
            "entries": entries.iter().map(|(&(p, q), g)| json!({ "p": p, "q": q, "group": group_json(g) })).collect::<Vec<_>>(),
            "integrally_free": e2.integrally_free(),
        }),
        table: Table::pivot("p\\q", entries.iter().map(|(&(p, q), g)| (p, q, g.to_string()))),
        status: 0,
    })
}

fn pair_params(a: &ProductArgs) -> Value {
    json!({ "m": a.m, "ring": a.ring.to_string(), "x": a.x, "y": a.y })
}

fn run_cup(a: &ProductArgs) -> Result<Output, String> {
    check_m(a.m, 2)?;
    let x = parse_class(a.m, &a.x).map_err(|e| e.to_string())?;
    let y = parse_class(a.m, &a.y).map_err(|e| e.to_string())?;
    let z = cup(a.m, &x, &y, a.ring).map_err(|e| e.to_string())?;
    let mut table = Table::new(["x", "y", "cup"]);
    table.push([x.to_string(), y.to_string(), z.to_string()]);
    Ok(Output { command: "cup".into(), params: pair_params(a), result: json!(z.to_string()), table, status: 0 })
}

fn run_bracket(a: &BracketArgs) -> Result<Output, String> {
    let p = &a.pair;
    check_m(p.m, 2)?;
    let x = parse_class(p.m, &p.x).map_err(|e| e.to_string())?;
    let y = parse_class(p.m, &p.y).map_err(|e| e.to_string())?;
    let z = gerstenhaber_bracket(p.m, &x, &y, a.method, p.ring).map_err(|e| e.to_string())?;
    let mut params = pair_params(p);
    params["method"] = json!(a.method.to_string());
    let mut table = Table::new(["x", "y", "bracket"]);
    table.push([x.to_string(), y.to_string(), z.to_string()]);
    Ok(Output { command: "bracket".into(), params, result: json!(z.to_string()), table, status: 0 })
}

fn run_tangent(a: &MArgs) -> Result<Output, String> {
    check_m(a.m, 2)?;
    let q = standard_bimodule(a.m, BimoduleKind::MOverN).map_err(|e| e.to_string())?;
    let hh1 = hochschild(a.m, &q, CoeffRing::Rationals, 1, Model::Koszul).map_err(|e| e.to_string())?.free_rank;
    let norm = normalizer_dimension(a.m, CoeffRing::Rationals).map_err(|e| e.to_string())?;
    let t = tangent_dimension(a.m).map_err(|e| e.to_string())?;
    let mut table = Table::new(["m", "hh1", "normalizer", "tangent"]);
    table.push([a.m, hh1, norm, t]);
    Ok(Output {
        command: "tangent".into(),
        params: json!({ "m": a.m }),
        result: json!({ "hh1": hh1, "m_squared": a.m * a.m, "normalizer": norm, "tangent": t }),
        table,
        status: 0,
    })
}

fn run_n2(a: &N2Args) -> Result<Output, String> {
    let r = n2_theory(a.ring, a.max_n).map_err(|e| e.to_string())?;
    let mut table = Table::new(["n", "group"]);
    for (n, g) in r.koszul.iter().enumerate() {
        table.push([n.to_string(), g.to_string()]);
    }
    Ok(Output {
        command: "n2".into(),
        params: json!({ "ring": a.ring.to_string(), "max_n": a.max_n }),
        result: json!({
            "groups": r.koszul.iter().map(group_json).collect::<Vec<_>>(),
            "groups_agree": r.groups_agree,
            "products_ok": r.products_ok,
            "brackets_ok": r.brackets_ok,
            "bv": r.bv.iter().map(|(f, ok)| json!({ "family": f.to_string(), "holds": ok })).collect::<Vec<_>>(),
            "delta_squared_zero": r.delta_squared_zero,
            "pass": r.pass(),
        }),
        table,
        status: 0,
    })
}

fn run_verify(a: &VerifyArgs) -> Result<Output, String> {
    let suites: Vec<Suite> = if a.suite == "all" { Suite::ALL.to_vec() } else { vec![a.suite.parse()?] };
    let ms = (!a.m.is_empty()).then_some(a.m.as_slice());
    let reports: Vec<_> = suites.iter().map(|&s| run_suite(s, ms)).collect();
    let pass = reports.iter().all(|r| r.pass);
    let mut table = Table::new(["suite", "check", "expected", "computed", "pass"]);
    for r in &reports {
        for c in &r.records {
            table.push([r.suite.name(), &c.name, &c.expected, &c.computed, if c.pass { "true" } else { "false" }]);
        }
    }
    let mut result = json!({
        "pass": pass,
        "reports": reports.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
    });
    result["wall_time_secs"] = reports.iter().map(|r| (r.suite.name().to_string(), json!(r.wall_time_secs))).collect();
    Ok(Output {
        command: "verify".into(),
        params: json!({ "suite": a.suite, "m": a.m }),
        result,
        table,
        status: if pass { 0 } else { 1 },
    })
}

/// Runs one parsed invocation; errors are usage errors.
pub fn run(cmd: &Command) -> Result<Output, String> {
    match cmd {
        Command::Phi(a) => run_phi(a),
        Command::Hh(a) => run_hh(a),
        Command::E2(a) => run_e2(a),
        Command::Cup(a) => run_cup(a),
        Command::Bracket(a) => run_bracket(a),
        Command::Tangent(a) => run_tangent(a),
        Command::N2(a) => run_n2(a),
        Command::Verify(a) => run_verify(a),
    }
}
