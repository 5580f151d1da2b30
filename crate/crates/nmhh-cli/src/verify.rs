//! Verification suites, one per acceptance criterion.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use nmhh::bimod::{standard_bimodule, tangent_dimension, normalizer_dimension, BimoduleKind};
use nmhh::exactla::{CoeffRing, FinAbGroup};
use nmhh::ghstructure::{
    bracket_table, bv_obstruction, cup_vanishing_check, gerstenhaber_bracket, n2_theory, periodic_groups, BracketMethod, CohClass,
    GhContext,
};
use nmhh::homology::{hh_bigraded_formula, hh_rank_formula, hochschild, hochschild_bigraded, hochschild_data, Model, RankTarget};
use nmhh::qma::{phi, phi_of, PhiMethod};
use nmhh::specseq::{
    b_homotopy_defects, collapse_and_extension_check, e1_page, e2_page, mn_edge_identity, mn_homotopy_check, top_corner_count_formula,
    E1_TARGETS,
};
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Phi,
    Ranks,
    Bigraded,
    E2,
    Homotopy,
    Collapse,
    Oracle,
    Products,
    Bracket,
    Bv,
    N2,
    Tangent,
}

impl Suite {
    /// In acceptance-criterion order.
    pub const ALL: [Suite; 12] = [
        Suite::Phi,
        Suite::Ranks,
        Suite::Bigraded,
        Suite::E2,
        Suite::Homotopy,
        Suite::Collapse,
        Suite::Oracle,
        Suite::Products,
        Suite::Bracket,
        Suite::Bv,
        Suite::N2,
        Suite::Tangent,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Phi => "phi",
            Suite::Ranks => "ranks",
            Suite::Bigraded => "bigraded",
            Suite::E2 => "e2",
            Suite::Homotopy => "homotopy",
            Suite::Collapse => "collapse",
            Suite::Oracle => "oracle",
            Suite::Products => "products",
            Suite::Bracket => "bracket",
            Suite::Bv => "bv",
            Suite::N2 => "n2",
            Suite::Tangent => "tangent",
        }
    }

    pub fn criterion(&self) -> usize {
        Suite::ALL.iter().position(|s| s == self).unwrap() + 1
    }

    /// Runtime budget in seconds.
    pub fn budget_secs(&self) -> f64 {
        match self {
            Suite::Phi => 1.0,
            Suite::Ranks => 30.0,
            Suite::Bigraded | Suite::E2 | Suite::Collapse | Suite::Bracket => 60.0,
            Suite::Homotopy => 10.0,
            Suite::Oracle | Suite::Products => 120.0,
            Suite::Bv | Suite::N2 => 30.0,
            Suite::Tangent => 5.0,
        }
    }

    /// Default m values when none is given.
    pub fn default_ms(&self) -> Vec<usize> {
        match self {
            Suite::Phi => (2..=6).collect(),
            Suite::Ranks | Suite::Bigraded | Suite::E2 | Suite::Homotopy | Suite::Bv | Suite::Tangent => vec![3, 4, 5],
            Suite::Collapse | Suite::Products | Suite::Bracket => vec![3, 4],
            Suite::Oracle => vec![2, 3],
            Suite::N2 => vec![2],
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| format!("unknown suite `{s}`"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckRecord {
    pub name: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub suite: Suite,
    pub ms: Vec<usize>,
    pub records: Vec<CheckRecord>,
    pub pass: bool,
    pub wall_time_secs: f64,
}

impl VerifyReport {
    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| !r.pass)
    }

    pub fn within_budget(&self) -> bool {
        self.wall_time_secs < self.suite.budget_secs()
    }

    /// Everything except the wall time, which varies between runs.
    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.suite.name(),
            "criterion": self.suite.criterion(),
            "m": self.ms,
            "pass": self.pass,
            "checks": self.records.iter().map(|r| json!({
                "name": r.name,
                "expected": r.expected,
                "computed": r.computed,
                "pass": r.pass,
            })).collect::<Vec<_>>(),
        })
    }
}

#[derive(Default)]
struct Checks(Vec<CheckRecord>);

impl Checks {
    fn eq<T: PartialEq + fmt::Debug>(&mut self, name: impl Into<String>, expected: T, computed: T) {
        let pass = expected == computed;
        self.0.push(CheckRecord { name: name.into(), expected: format!("{expected:?}"), computed: format!("{computed:?}"), pass });
    }

    fn holds(&mut self, name: impl Into<String>, computed: bool) {
        self.eq(name, true, computed);
    }

    fn error(&mut self, name: impl Into<String>, err: impl fmt::Display) {
        self.0.push(CheckRecord { name: name.into(), expected: "ok".into(), computed: format!("error: {err}"), pass: false });
    }
}

fn group_str(g: &FinAbGroup) -> String {
    g.to_string()
}

const F2: CoeffRing = CoeffRing::PrimeField(2);
const F3: CoeffRing = CoeffRing::PrimeField(3);
const Q: CoeffRing = CoeffRing::Rationals;

fn run_phi(ms: &[usize], c: &mut Checks) {
    for &m in ms {
        for q in 0..=12i64 {
            let vals: Vec<i64> = PhiMethod::ALL.iter().map(|&k| phi(m, q, k)).collect();
            let agree = vals.windows(2).all(|w| w[0] == w[1]);
            c.holds(format!("m={m} q={q} methods agree {vals:?}"), agree);
        }
        if m == 3 {
            let got: Vec<i64> = (0..=12).map(|n| phi_of(3, n)).collect();
            c.eq("m=3 phi(n) = n+1", (1..=13).collect::<Vec<i64>>(), got);
        }
        let mi = m as i64;
        c.eq(format!("m={m} phi(2) = m^2-3m+3"), mi * mi - 3 * mi + 3, phi_of(m, 2));
    }
}

fn run_ranks(ms: &[usize], max_n: usize, c: &mut Checks) {
    for &m in ms {
        let coeff = match standard_bimodule(m, BimoduleKind::MOverN) {
            Ok(b) => b,
            Err(e) => return c.error(format!("m={m}"), e),
        };
        let data = match hochschild_data(&coeff, max_n, Model::Koszul) {
            Ok(d) => d,
            Err(e) => return c.error(format!("m={m}"), e),
        };
        let tq = data.table(Q);
        for n in 0..=max_n {
            let expect = if n == 0 { m as i64 - 1 } else { (m as i64 - 2) * phi_of(m, n as i64) };
            c.eq(format!("m={m} n={n} dim over Q"), expect, tq.total(n).free_rank as i64);
        }
        for ring in [F2, F3] {
            let t = data.table(ring);
            c.eq(format!("m={m} totals over {ring} equal Q"), tq.totals.clone(), t.totals.clone());
        }
        let off: Vec<(usize, i32)> = tq.support().into_iter().filter(|&(n, s)| n as i32 != s).collect();
        c.eq(format!("m={m} support off s=n"), Vec::new(), off);
    }
}

fn run_bigraded(ms: &[usize], max_n: usize, c: &mut Checks) {
    for &m in ms {
        let coeff = match standard_bimodule(m, BimoduleKind::N) {
            Ok(b) => b,
            Err(e) => return c.error(format!("m={m}"), e),
        };
        let t = hochschild_bigraded(m, &coeff, Q, max_n);
        for n in 0..=max_n {
            c.eq(format!("m={m} n={n} total rank"), hh_rank_formula(m, RankTarget::N, n), t.total(n).free_rank as i64);
            let lo = -(m as i32);
            let table: Vec<(i32, i64)> =
                (lo..=n as i32).map(|s| (s, t.rank(n, s) as i64)).filter(|e| e.1 != 0).collect();
            let formula: Vec<(i32, i64)> = (lo..=n as i32)
                .map(|s| (s, hh_bigraded_formula(m, RankTarget::N, n, s)))
                .filter(|e| e.1 != 0)
                .collect();
            c.eq(format!("m={m} n={n} bigraded ranks (s, rank)"), formula, table);
        }
        let stray: Vec<(usize, i32)> = t.support().into_iter().filter(|&(n, s)| s < -(m as i32) || s > n as i32).collect();
        c.eq(format!("m={m} support outside the scanned range"), Vec::new(), stray);
    }
}

fn run_e2(ms: &[usize], max_total: usize, c: &mut Checks) {
    for &m in ms {
        let top = m as i32 - 1;
        let pages = e1_page(m, BimoduleKind::B, max_total).and_then(|b| Ok((b, e1_page(m, BimoduleKind::N, max_total)?)));
        let (b1, n1) = match pages {
            Ok(p) => p,
            Err(e) => return c.error(format!("m={m}"), e),
        };
        let b = e2_page(&b1, CoeffRing::Integers);
        let n = e2_page(&n1, CoeffRing::Integers);
        c.holds(format!("m={m} E2(B) free over Z"), b.integrally_free());
        c.holds(format!("m={m} E2(N) free over Z"), n.integrally_free());
        let mid: Vec<(i32, i32)> = b.support().into_iter().filter(|&(p, _)| p >= 1 && p < top).collect();
        c.eq(format!("m={m} E2(B) nonzero for 1<=p<=m-2"), Vec::new(), mid);
        for q in 0..=max_total as i32 {
            c.eq(format!("m={m} rank E2^(0,{q})(B) = phi"), phi_of(m, q as i64), b.rank(0, q) as i64);
        }
        for tot in 0..=max_total as i32 {
            let q = tot - top;
            c.eq(
                format!("m={m} rank E2^(m-1,{q})(B)"),
                top_corner_count_formula(m, tot as usize),
                b.rank(top, q) as i64,
            );
        }
        let stray: Vec<(i32, i32)> = n.support().into_iter().filter(|&(p, _)| p != 0 && p != 1 && p != top).collect();
        c.eq(format!("m={m} E2(N) outside p in {{0,1,m-1}}"), Vec::new(), stray);
        for (p, q) in n1.bases.keys().copied().filter(|&(p, q)| p + q >= 0 && p + q <= max_total as i32) {
            let tot = (p + q) as usize;
            // E2^{p,q} sits at internal degree s = q
            let expect = hh_bigraded_formula(m, RankTarget::N, tot, q);
            c.eq(format!("m={m} rank E2^({p},{q})(N)"), expect, n.rank(p, q) as i64);
        }
    }
}

fn run_homotopy(ms: &[usize], max_q: i32, c: &mut Checks) {
    for &m in ms {
        for q in 0..=max_q {
            c.holds(format!("m={m} q={q} M/N: ds + sd = id"), mn_homotopy_check(m, q));
            c.holds(format!("m={m} q={q} M/N: edge s d = id"), mn_edge_identity(m, q));
            c.eq(format!("m={m} q={q} B: p where sd + ds != id"), Vec::<i32>::new(), b_homotopy_defects(m, q));
        }
    }
}

fn run_collapse(ms: &[usize], max_n: usize, c: &mut Checks) {
    for &m in ms {
        for t in E1_TARGETS {
            match collapse_and_extension_check(m, t, max_n, Q) {
                Ok(r) => {
                    for row in &r.rows {
                        c.eq(format!("m={m} {t} n={} s={} E2 vs HH", row.n, row.s), group_str(&row.hh), group_str(&row.e2));
                    }
                    for &(n, e2, hh) in &r.totals {
                        c.eq(format!("m={m} {t} n={n} sum of E2 ranks"), hh, e2);
                    }
                    c.holds(format!("m={m} {t} no HH outside E1 support"), r.pass);
                }
                Err(e) => c.error(format!("m={m} {t}"), e),
            }
        }
    }
}

fn run_oracle(ms: &[usize], max_n: usize, c: &mut Checks) {
    for &m in ms {
        for k in [BimoduleKind::N, BimoduleKind::MOverN, BimoduleKind::R] {
            let coeff = match standard_bimodule(m, k) {
                Ok(b) => b,
                Err(e) => return c.error(format!("m={m} {k}"), e),
            };
            let both = hochschild_data(&coeff, max_n, Model::Koszul).and_then(|kz| Ok((kz, hochschild_data(&coeff, max_n, Model::Bar)?)));
            let (kz, bar) = match both {
                Ok(p) => p,
                Err(e) => {
                    c.error(format!("m={m} {k}"), e);
                    continue;
                }
            };
            for ring in [Q, F2, F3] {
                let (a, b) = (kz.table(ring), bar.table(ring));
                for n in 0..=max_n {
                    let row = |t: &nmhh::homology::BigradedTable| -> Vec<(i32, String)> {
                        t.entries.iter().filter(|(&(n2, _), _)| n2 == n).map(|(&(_, s), g)| (s, group_str(g))).collect()
                    };
                    c.eq(format!("m={m} {k} {ring} n={n} bar vs Koszul"), row(&a), row(&b));
                }
            }
        }
    }
}

fn run_products(ms: &[usize], max_total: usize, c: &mut Checks) {
    for &m in ms {
        for ring in [Q, F2] {
            let r = GhContext::new(m, ring, max_total).and_then(|ctx| cup_vanishing_check(&ctx, max_total, true));
            match r {
                Ok(r) => {
                    c.holds(format!("m={m} {ring} pairs checked > 0 ({})", r.pairs_checked), r.pairs_checked > 0);
                    let fails: Vec<String> = r.failures.iter().map(|(x, y)| format!("{x} cup {y}")).collect();
                    c.eq(format!("m={m} {ring} cups that are not coboundaries"), Vec::<String>::new(), fails);
                }
                Err(e) => c.error(format!("m={m} {ring}"), e),
            }
        }
    }
}

fn run_bracket(ms: &[usize], max_words: usize, c: &mut Checks) {
    for &m in ms {
        for ring in [Q, F2] {
            let tables = GhContext::new(m, ring, max_words + 2).and_then(|ctx| {
                Ok((bracket_table(&ctx, max_words, BracketMethod::ClosedForm)?, bracket_table(&ctx, max_words, BracketMethod::Cochain)?))
            });
            match tables {
                Ok((closed, coch)) => {
                    let diffs: Vec<String> = closed
                        .entries
                        .iter()
                        .filter(|(k, v)| coch.entries.get(*k) != Some(*v))
                        .map(|((x, y), v)| format!("[{x}, {y}] = {v}"))
                        .collect();
                    c.eq(format!("m={m} {ring} pairs compared"), closed.entries.len(), coch.entries.len());
                    c.eq(format!("m={m} {ring} closed form vs cochain disagreements"), Vec::<String>::new(), diffs);
                    c.holds(format!("m={m} {ring} graded antisymmetry"), coch.antisymmetry_holds());
                }
                Err(e) => c.error(format!("m={m} {ring}"), e),
            }
        }
        let x = CohClass::a(m, 1, &[1, 1]);
        let y = CohClass::a(m, 1, &[2, 1]);
        let target = CohClass::a(m, 1, &[2, 1, 1, 1]);
        for method in [BracketMethod::ClosedForm, BracketMethod::Cochain] {
            match gerstenhaber_bracket(m, &x, &y, method, Q) {
                Ok(v) => c.eq(format!("m={m} witness [a(1,[1,1]), a(1,[2,1])] by {method}"), target.to_string(), v.to_string()),
                Err(e) => c.error(format!("m={m} witness by {method}"), e),
            }
        }
    }
}

fn run_bv(ms: &[usize], c: &mut Checks) {
    for &m in ms {
        for ring in [Q, F2] {
            match bv_obstruction(m, ring) {
                Ok(r) => {
                    c.holds(format!("m={m} {ring} witness cups vanish"), r.witness_cup_vanishes);
                    c.holds(
                        format!("m={m} {ring} sampled cups vanish ({} pairs)", r.sample.pairs_checked),
                        r.sample.pass(),
                    );
                    c.eq(
                        format!("m={m} {ring} coefficient of {} in the witness bracket", r.witness_target),
                        1,
                        r.witness_bracket.coefficient(&r.witness_target),
                    );
                    c.holds(format!("m={m} {ring} obstruction holds"), r.obstruction_holds);
                }
                Err(e) => c.error(format!("m={m} {ring}"), e),
            }
        }
    }
}

fn run_n2(c: &mut Checks) {
    let z = CoeffRing::Integers;
    let expect: Vec<String> = (0..=8)
        .map(|n| match n {
            0 => FinAbGroup::free(2),
            _ if n % 2 == 0 => FinAbGroup::from_parts(1, vec![2.into()]),
            _ => FinAbGroup::free(1),
        })
        .map(|g| g.to_string())
        .collect();
    c.eq("HH^n(N_2) over Z, n <= 8, periodic complex", expect.clone(), periodic_groups(z, 8).iter().map(group_str).collect());
    match n2_theory(z, 8) {
        Ok(r) => {
            c.eq("HH^n(N_2) over Z, n <= 8, Koszul model", expect, r.koszul.iter().map(group_str).collect());
            c.holds("products f_i f_j = f_(i+j), f_i g_j = g_(i+j), g_i g_j = 0 to degree 8", r.products_ok);
            c.holds("bracket table to degree 8", r.brackets_ok);
        }
        Err(e) => c.error("over Z", e),
    }
    let z4 = CoeffRing::IntegersMod(4);
    let odd: Vec<String> = periodic_groups(z4, 8).iter().skip(1).step_by(2).map(group_str).collect();
    let want = FinAbGroup::from_parts(1, vec![2.into()]).to_string();
    c.eq("HH^odd(N_2) over Z/4", vec![want; 4], odd);
    for ring in [F3, F2] {
        match n2_theory(ring, 6) {
            Ok(r) => {
                c.holds(format!("{ring} groups by both models"), r.groups_agree);
                for (fam, ok) in &r.bv {
                    c.holds(format!("{ring} BV identity for {fam} to degree 6"), *ok);
                }
                c.holds(format!("{ring} families checked"), !r.bv.is_empty());
                c.eq(format!("{ring} delta squared is zero"), Some(true), r.delta_squared_zero);
            }
            Err(e) => c.error(format!("{ring}"), e),
        }
    }
}

fn run_tangent(ms: &[usize], c: &mut Checks) {
    for &m in ms {
        let hh1 = standard_bimodule(m, BimoduleKind::MOverN)
            .map_err(|e| e.to_string())
            .and_then(|b| hochschild(m, &b, Q, 1, Model::Koszul).map_err(|e| e.to_string()));
        let norm = normalizer_dimension(m, Q);
        let (hh1, norm) = match (hh1, norm) {
            (Ok(h), Ok(n)) => (h.free_rank, n),
            (Err(e), _) => return c.error(format!("m={m} HH^1"), e),
            (_, Err(e)) => return c.error(format!("m={m} normalizer"), e),
        };
        let mi = m as i64;
        let formula = (3 * mi * mi - 7 * mi + 4) / 2;
        c.eq(format!("m={m} HH^1 + m^2 - normalizer"), formula, (hh1 + m * m) as i64 - norm as i64);
        match tangent_dimension(m) {
            Ok(t) => c.eq(format!("m={m} tangent dimension"), formula, t as i64),
            Err(e) => c.error(format!("m={m}"), e),
        }
        if m == 3 {
            c.eq("m=3 tangent dimension is 5", 5, formula);
        }
    }
}

/// Runs a suite at the acceptance bounds, restricted to `ms` when given.
pub fn run_suite(suite: Suite, ms: Option<&[usize]>) -> VerifyReport {
    let ms: Vec<usize> = match (suite, ms) {
        (Suite::N2, _) => vec![2],
        (_, Some(ms)) => ms.to_vec(),
        (_, None) => suite.default_ms(),
    };
    let start = Instant::now();
    let mut c = Checks::default();
    match suite {
        Suite::Phi => run_phi(&ms, &mut c),
        Suite::Ranks => run_ranks(&ms, 8, &mut c),
        Suite::Bigraded => run_bigraded(&ms, 8, &mut c),
        Suite::E2 => run_e2(&ms, 8, &mut c),
        Suite::Homotopy => run_homotopy(&ms, 6, &mut c),
        Suite::Collapse => run_collapse(&ms, 6, &mut c),
        Suite::Oracle => run_oracle(&ms, 4, &mut c),
        Suite::Products => run_products(&ms, 5, &mut c),
        Suite::Bracket => run_bracket(&ms, 4, &mut c),
        Suite::Bv => run_bv(&ms, &mut c),
        Suite::N2 => run_n2(&mut c),
        Suite::Tangent => run_tangent(&ms, &mut c),
    }
    let records = c.0;
    let pass = !records.is_empty() && records.iter().all(|r| r.pass);
    VerifyReport { suite, ms, records, pass, wall_time_secs: start.elapsed().as_secs_f64() }
}
