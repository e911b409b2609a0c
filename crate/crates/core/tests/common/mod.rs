#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap};

use chc_core::evaluation::{parse_seconds, Outcome, RunRecord};
use chc_core::model::{Benchmark, Head, Op, Term};
use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

// ---------------------------------------------------------------------------
// Published data

/// (repository, A, B, C, N_r, #Sel) for LIA-nonlin.
pub const LIA_NONLIN_POOLS: [(&str, usize, usize, usize, usize, usize); 10] = [
    ("eldarica-misc", 12, 28, 26, 10, 30),
    ("hcai-bench", 19, 71, 43, 20, 60),
    ("hopv", 26, 38, 3, 10, 23),
    ("jayhorn-benchmarks", 49, 2680, 2355, 30, 90),
    ("kind2-chc-benchmarks", 58, 179, 501, 30, 90),
    ("llreve-bench", 6, 35, 16, 15, 45),
    ("seahorn", 6, 34, 30, 15, 45),
    ("tricera-benchmarks", 1, 3, 0, 1, 2),
    ("sv-comp", 25, 1057, 87, 30, 90),
    ("chc-comp19-benchmarks", 42, 116, 107, 30, 90),
];

pub const LIA_LIN_POOLS: [(&str, usize, usize, usize, usize, usize); 11] = [
    ("eldarica-misc", 26, 91, 17, 15, 45),
    ("extra-small-lia", 3, 24, 28, 10, 30),
    ("hcai-bench", 59, 19, 8, 15, 38),
    ("hopv", 45, 2, 1, 10, 13),
    ("jayhorn-benchmarks", 55, 18, 0, 10, 20),
    ("llreve-bench", 9, 35, 0, 15, 30),
    ("seahorn", 753, 323, 1771, 30, 90),
    ("tricera-benchmarks", 9, 23, 373, 20, 60),
    ("vmt-chc-benchmarks", 33, 252, 518, 30, 90),
    ("sv-comp", 968, 1855, 109, 30, 90),
    ("chc-comp19-benchmarks", 31, 100, 183, 30, 90),
];

pub struct Row {
    pub name: &'static str,
    pub hc: bool,
    pub score: usize,
    pub sat: usize,
    pub unsat: usize,
    pub cpu: &'static str,
    pub wall: &'static str,
    pub speedup: &'static str,
}

pub struct Figure {
    pub track: &'static str,
    /// Benchmarks run, before any exclusion.
    pub benchmarks: usize,
    pub rows: &'static [Row],
    pub any: (usize, usize, usize),
}

const fn row(
    name: &'static str,
    hc: bool,
    score: usize,
    sat: usize,
    unsat: usize,
    cpu: &'static str,
    wall: &'static str,
    speedup: &'static str,
) -> Row {
    Row {
        name,
        hc,
        score,
        sat,
        unsat,
        cpu,
        wall,
        speedup,
    }
}

pub const FIGURES: [Figure; 4] = [
    Figure {
        track: "LIA-nonlin",
        benchmarks: 565,
        rows: &[
            row("Spacer", false, 554, 292, 262, "6.03", "6.11", "0.99"),
            row("Eldarica", true, 513, 265, 248, "43.58", "19.10", "2.28"),
            row("Eldarica-abs", false, 513, 266, 247, "52.07", "35.96", "1.45"),
            row("Ultimate Unihorn", false, 420, 212, 208, "75.73", "49.11", "1.54"),
            row("PCSat", false, 331, 156, 175, "92.10", "29.54", "3.12"),
            row("Ultimate TreeAutomizer", false, 118, 34, 84, "41.17", "30.00", "1.37"),
        ],
        any: (560, 298, 262),
    },
    Figure {
        track: "LIA-lin",
        benchmarks: 596,
        rows: &[
            row("Spacer", false, 518, 330, 188, "11.94", "12.03", "0.99"),
            row("Eldarica-abs", false, 477, 300, 177, "57.26", "39.59", "1.45"),
            row("Eldarica", true, 476, 300, 176, "48.58", "20.00", "2.43"),
            row("Ultimate Unihorn", false, 407, 240, 167, "43.57", "26.21", "1.66"),
            row("IC3IA", false, 400, 260, 140, "46.09", "46.23", "1.00"),
            row("PCSat", false, 329, 191, 138, "37.91", "12.23", "3.10"),
            row("Ultimate TreeAutomizer", false, 307, 166, 141, "50.30", "37.43", "1.34"),
        ],
        any: (558, 356, 202),
    },
    Figure {
        track: "LIA-lin-arrays",
        benchmarks: 501,
        rows: &[
            row("Spacer", false, 295, 203, 92, "0.81", "0.89", "0.91"),
            row("Ultimate Unihorn", false, 217, 144, 73, "39.73", "24.12", "1.65"),
            row("ProphIC3", false, 214, 140, 74, "38.24", "19.17", "1.99"),
            row("IC3IA", false, 147, 92, 55, "9.17", "9.30", "0.99"),
            row("Ultimate TreeAutomizer", false, 147, 100, 47, "31.49", "21.46", "1.47"),
            row("Eldarica", true, 91, 91, 0, "106.80", "68.05", "1.57"),
        ],
        any: (350, 250, 100),
    },
    Figure {
        track: "LRA-TS",
        benchmarks: 499,
        rows: &[
            row("IC3IA", false, 468, 378, 90, "136.94", "137.05", "1.00"),
            row("Sally-parallel", false, 439, 360, 79, "138.81", "47.37", "2.93"),
            row("Sally-decomposing-itp", false, 438, 357, 81, "107.61", "107.68", "1.00"),
            row("Spacer", false, 346, 270, 76, "176.75", "176.86", "1.00"),
            row("Ultimate TreeAutomizer", false, 168, 131, 37, "239.75", "202.11", "1.19"),
            row("Ultimate Unihorn", false, 160, 103, 57, "213.33", "158.57", "1.35"),
        ],
        any: (481, 388, 93),
    },
];

pub fn figure(track: &str) -> &'static Figure {
    FIGURES.iter().find(|f| f.track == track).unwrap()
}

pub fn secs(s: &str) -> BigRational {
    parse_seconds(s).unwrap()
}

/// Run records realizing a figure: the sat and unsat benchmarks of the
/// "Any solver" row are laid out on two circles and every solver solves a
/// window on each, windows placed end to end so that their union covers
/// the circle. Solved records carry the published mean times, so means are
/// exact; unsolved benchmarks become unknown at 1800 s.
/// `extra` lists further benchmarks with the answers claimed on them.
pub fn window_runs(fig: &Figure, extra: &[(&str, &[(&str, Outcome)])]) -> Vec<RunRecord> {
    let (_, any_sat, any_unsat) = fig.any;
    let counted = fig.benchmarks - extra.len();
    let names: Vec<String> = (0..counted).map(|i| format!("{}_{i:03}", fig.track)).collect();
    let (sat_names, rest) = names.split_at(any_sat);
    let (unsat_names, _) = rest.split_at(any_unsat);
    let mut sat_off = 0;
    let mut unsat_off = 0;
    let mut runs = Vec::new();
    for r in fig.rows {
        let mut solved: HashMap<&str, Outcome> = HashMap::new();
        for k in 0..r.sat {
            solved.insert(sat_names[(sat_off + k) % any_sat].as_str(), Outcome::Sat);
        }
        for k in 0..r.unsat {
            solved.insert(unsat_names[(unsat_off + k) % any_unsat].as_str(), Outcome::Unsat);
        }
        sat_off = (sat_off + r.sat) % any_sat;
        unsat_off = (unsat_off + r.unsat) % any_unsat;
        for b in &names {
            runs.push(match solved.get(b.as_str()) {
                Some(o) => RunRecord::new(r.name, b, *o, secs(r.cpu), secs(r.wall)),
                None => RunRecord::new(r.name, b, Outcome::Unknown, secs("1800"), secs("1800")),
            });
        }
        for (bench, claims) in extra {
            let o = claims.iter().find(|(s, _)| *s == r.name).map_or(Outcome::Unknown, |(_, o)| *o);
            let t = if o.is_solved() { "1" } else { "1800" };
            runs.push(RunRecord::new(r.name, bench, o, secs(t), secs(t)));
        }
    }
    runs
}

// ---------------------------------------------------------------------------
// Finite Boolean CHC systems

#[derive(Clone, Debug)]
pub enum Arg {
    Var(usize),
    Const(bool),
}

#[derive(Clone, Debug)]
pub enum Formula {
    True,
    False,
    Var(usize),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Eq(Box<Formula>, Box<Formula>),
}

#[derive(Clone, Debug)]
pub struct BoolClause {
    pub nvars: usize,
    pub body: Vec<(usize, Vec<Arg>)>,
    pub constraint: Formula,
    pub head: Option<(usize, Vec<Arg>)>,
}

#[derive(Clone, Debug)]
pub struct BoolSystem {
    pub arities: Vec<usize>,
    pub clauses: Vec<BoolClause>,
}

fn gen_formula(rng: &mut StdRng, nvars: usize, depth: u32) -> Formula {
    let leaf = |rng: &mut StdRng| {
        if nvars == 0 || rng.random_bool(0.2) {
            if rng.random_bool(0.8) {
                Formula::True
            } else {
                Formula::False
            }
        } else {
            Formula::Var(rng.random_range(0..nvars))
        }
    };
    if depth == 0 || rng.random_bool(0.4) {
        return leaf(rng);
    }
    match rng.random_range(0..4) {
        0 => Formula::Not(Box::new(gen_formula(rng, nvars, depth - 1))),
        1 => Formula::And((0..rng.random_range(2..=3)).map(|_| gen_formula(rng, nvars, depth - 1)).collect()),
        2 => Formula::Or((0..rng.random_range(2..=3)).map(|_| gen_formula(rng, nvars, depth - 1)).collect()),
        _ => Formula::Eq(
            Box::new(gen_formula(rng, nvars, depth - 1)),
            Box::new(gen_formula(rng, nvars, depth - 1)),
        ),
    }
}

fn gen_args(rng: &mut StdRng, arity: usize, nvars: usize) -> Vec<Arg> {
    (0..arity)
        .map(|_| {
            if nvars == 0 || rng.random_bool(0.15) {
                Arg::Const(rng.random_bool(0.5))
            } else {
                Arg::Var(rng.random_range(0..nvars))
            }
        })
        .collect()
}

/// Random system with at most 6 predicates and 12 clauses, at least one of
/// them a query.
pub fn gen_bool_system(seed: u64) -> BoolSystem {
    let mut rng = StdRng::seed_from_u64(seed);
    let npred = rng.random_range(1..=6);
    let arities: Vec<usize> = (0..npred).map(|_| rng.random_range(0..=2)).collect();
    let nclauses = rng.random_range(2..=12);
    let nqueries = rng.random_range(1..=3usize.min(nclauses));
    let mut clauses = Vec::new();
    for i in 0..nclauses {
        let nvars = rng.random_range(0..=3);
        let nbody = match rng.random_range(0..10) {
            0..=2 => 0,
            3..=7 => 1,
            _ => 2,
        };
        let body = (0..nbody)
            .map(|_| {
                let p = rng.random_range(0..npred);
                (p, gen_args(&mut rng, arities[p], nvars))
            })
            .collect();
        let constraint = if rng.random_bool(0.4) { Formula::True } else { gen_formula(&mut rng, nvars, 2) };
        let head = if i < nqueries {
            None
        } else {
            let p = rng.random_range(0..npred);
            Some((p, gen_args(&mut rng, arities[p], nvars)))
        };
        clauses.push(BoolClause {
            nvars,
            body,
            constraint,
            head,
        });
    }
    // Queries are spread over the clause list.
    let n = clauses.len();
    for q in 0..nqueries {
        let to = rng.random_range(0..n);
        clauses.swap(q, to);
    }
    BoolSystem { arities, clauses }
}

fn render_formula(f: &Formula, out: &mut String) {
    match f {
        Formula::True => out.push_str("true"),
        Formula::False => out.push_str("false"),
        Formula::Var(v) => out.push_str(&format!("x{v}")),
        Formula::Not(a) => {
            out.push_str("(not ");
            render_formula(a, out);
            out.push(')');
        }
        Formula::And(xs) | Formula::Or(xs) => {
            out.push_str(if matches!(f, Formula::And(_)) { "(and" } else { "(or" });
            for x in xs {
                out.push(' ');
                render_formula(x, out);
            }
            out.push(')');
        }
        Formula::Eq(a, b) => {
            out.push_str("(= ");
            render_formula(a, out);
            out.push(' ');
            render_formula(b, out);
            out.push(')');
        }
    }
}

fn render_app(p: usize, args: &[Arg]) -> String {
    if args.is_empty() {
        return format!("p{p}");
    }
    let a: Vec<String> = args
        .iter()
        .map(|a| match a {
            Arg::Var(v) => format!("x{v}"),
            Arg::Const(b) => b.to_string(),
        })
        .collect();
    format!("(p{p} {})", a.join(" "))
}

pub fn render_bool_system(sys: &BoolSystem) -> String {
    let mut out = String::from("(set-logic HORN)\n");
    for (p, n) in sys.arities.iter().enumerate() {
        out.push_str(&format!("(declare-fun p{p} ({}) Bool)\n", vec!["Bool"; *n].join(" ")));
    }
    for c in &sys.clauses {
        let mut body = String::from("(and");
        for (p, args) in &c.body {
            body.push(' ');
            body.push_str(&render_app(*p, args));
        }
        body.push(' ');
        render_formula(&c.constraint, &mut body);
        body.push(')');
        let head = c.head.as_ref().map_or("false".to_string(), |(p, a)| render_app(*p, a));
        let imp = format!("(=> {body} {head})");
        if c.nvars == 0 {
            out.push_str(&format!("(assert {imp})\n"));
        } else {
            let binders: Vec<String> = (0..c.nvars).map(|v| format!("(x{v} Bool)")).collect();
            out.push_str(&format!("(assert (forall ({}) {imp}))\n", binders.join(" ")));
        }
    }
    out.push_str("(check-sat)\n");
    out
}

fn eval_formula(f: &Formula, env: &[bool]) -> bool {
    match f {
        Formula::True => true,
        Formula::False => false,
        Formula::Var(v) => env[*v],
        Formula::Not(a) => !eval_formula(a, env),
        Formula::And(xs) => xs.iter().all(|x| eval_formula(x, env)),
        Formula::Or(xs) => xs.iter().any(|x| eval_formula(x, env)),
        Formula::Eq(a, b) => eval_formula(a, env) == eval_formula(b, env),
    }
}

fn arg_value(a: &Arg, env: &[bool]) -> bool {
    match a {
        Arg::Var(v) => env[*v],
        Arg::Const(b) => *b,
    }
}

/// Least-fixpoint derivability of `false` over the generator's own
/// representation.
pub fn bool_system_unsat(sys: &BoolSystem) -> bool {
    let mut facts: Vec<BTreeSet<Vec<bool>>> = vec![BTreeSet::new(); sys.arities.len()];
    loop {
        let mut changed = false;
        for c in &sys.clauses {
            for bits in 0u32..(1 << c.nvars) {
                let env: Vec<bool> = (0..c.nvars).map(|v| bits >> v & 1 == 1).collect();
                let body_holds = c
                    .body
                    .iter()
                    .all(|(p, args)| facts[*p].contains(&args.iter().map(|a| arg_value(a, &env)).collect::<Vec<_>>()));
                if !body_holds || !eval_formula(&c.constraint, &env) {
                    continue;
                }
                match &c.head {
                    None => return true,
                    Some((p, args)) => {
                        changed |= facts[*p].insert(args.iter().map(|a| arg_value(a, &env)).collect());
                    }
                }
            }
        }
        if !changed {
            return false;
        }
    }
}

fn eval_term(t: &Term, env: &HashMap<&str, bool>) -> bool {
    match t {
        Term::Bool(b) => *b,
        Term::Var(v) => env[v.as_str()],
        Term::App(Op::And, xs) => xs.iter().all(|x| eval_term(x, env)),
        Term::App(Op::Or, xs) => xs.iter().any(|x| eval_term(x, env)),
        Term::App(Op::Not, xs) => !eval_term(&xs[0], env),
        Term::App(Op::Implies, xs) => {
            let (last, init) = xs.split_last().unwrap();
            !init.iter().all(|x| eval_term(x, env)) || eval_term(last, env)
        }
        Term::App(Op::Eq, xs) => xs.windows(2).all(|w| eval_term(&w[0], env) == eval_term(&w[1], env)),
        Term::App(Op::Ite, xs) => {
            if eval_term(&xs[0], env) {
                eval_term(&xs[1], env)
            } else {
                eval_term(&xs[2], env)
            }
        }
        other => panic!("not a Boolean term: {other:?}"),
    }
}

/// Least-fixpoint derivability of `false` for a parsed or transformed
/// benchmark whose variables are all Boolean.
pub fn benchmark_unsat(b: &Benchmark) -> bool {
    let mut facts: BTreeMap<&str, BTreeSet<Vec<bool>>> = b.decls.iter().map(|d| (d.name.as_str(), BTreeSet::new())).collect();
    loop {
        let mut changed = false;
        for c in &b.clauses {
            let n = c.vars.len();
            for bits in 0u32..(1 << n) {
                let env: HashMap<&str, bool> = c.vars.iter().enumerate().map(|(i, (v, _))| (v.as_str(), bits >> i & 1 == 1)).collect();
                let body_holds = c.body_atoms.iter().all(|a| {
                    let tuple: Vec<bool> = a.args.iter().map(|t| eval_term(t, &env)).collect();
                    facts[a.pred.as_str()].contains(&tuple)
                });
                if !body_holds || !eval_term(&c.constraint, &env) {
                    continue;
                }
                match &c.head {
                    Head::False => return true,
                    Head::Atom(a) => {
                        let tuple: Vec<bool> = a.args.iter().map(|t| eval_term(t, &env)).collect();
                        changed |= facts.get_mut(a.pred.as_str()).unwrap().insert(tuple);
                    }
                }
            }
        }
        if !changed {
            return false;
        }
    }
}

// ---------------------------------------------------------------------------
// Linear integer systems and source-level mutations

#[derive(Clone, Debug)]
pub struct LiaClause {
    pub nvars: usize,
    pub body: Vec<(usize, Vec<usize>)>,
    /// sum(coef * var) op constant
    pub constraints: Vec<(Vec<(i64, usize)>, &'static str, i64)>,
    pub head: Option<(usize, Vec<usize>)>,
}

#[derive(Clone, Debug)]
pub struct LiaSystem {
    pub preds: Vec<(String, usize)>,
    pub clauses: Vec<LiaClause>,
}

pub fn gen_lia_system(seed: u64) -> LiaSystem {
    let mut rng = StdRng::seed_from_u64(seed);
    let npred = rng.random_range(1..=4);
    let preds: Vec<(String, usize)> = (0..npred).map(|p| (format!("inv{p}"), rng.random_range(1..=3))).collect();
    let nclauses = rng.random_range(2..=6);
    let clauses = (0..nclauses)
        .map(|i| {
            let nvars = rng.random_range(1..=4);
            let pick = |rng: &mut StdRng| {
                let p = rng.random_range(0..npred);
                (p, (0..preds[p].1).map(|_| rng.random_range(0..nvars)).collect::<Vec<_>>())
            };
            let body = (0..rng.random_range(0..=2)).map(|_| pick(&mut rng)).collect();
            let head = (i + 1 < nclauses).then(|| pick(&mut rng));
            let constraints = (0..rng.random_range(1..=3))
                .map(|_| {
                    let terms = (0..rng.random_range(1..=2))
                        .map(|_| (rng.random_range(-9..=9i64), rng.random_range(0..nvars)))
                        .collect();
                    let op = ["<=", "<", "=", ">=", ">"][rng.random_range(0..5)];
                    (terms, op, rng.random_range(-50..=50))
                })
                .collect();
            LiaClause {
                nvars,
                body,
                constraints,
                head,
            }
        })
        .collect();
    LiaSystem { preds, clauses }
}

fn int_lit(n: i64) -> String {
    if n < 0 {
        format!("(- {})", -n)
    } else {
        n.to_string()
    }
}

/// Renders with `names[clause][var]` as bound-variable names.
pub fn render_lia(sys: &LiaSystem, names: &[Vec<String>]) -> String {
    let mut out = String::from("(set-logic HORN)\n");
    for (p, n) in &sys.preds {
        out.push_str(&format!("(declare-fun {p} ({}) Bool)\n", vec!["Int"; *n].join(" ")));
    }
    for (ci, c) in sys.clauses.iter().enumerate() {
        let nm = |v: usize| names[ci][v].clone();
        let app = |(p, args): &(usize, Vec<usize>)| {
            let a: Vec<String> = args.iter().map(|v| nm(*v)).collect();
            format!("({} {})", sys.preds[*p].0, a.join(" "))
        };
        let mut parts: Vec<String> = c.body.iter().map(app).collect();
        for (terms, op, k) in &c.constraints {
            let sum: Vec<String> = terms.iter().map(|(a, v)| format!("(* {} {})", int_lit(*a), nm(*v))).collect();
            let lhs = if sum.len() == 1 { sum[0].clone() } else { format!("(+ {})", sum.join(" ")) };
            parts.push(format!("({op} {lhs} {})", int_lit(*k)));
        }
        let head = c.head.as_ref().map_or("false".to_string(), app);
        let binders: Vec<String> = (0..c.nvars).map(|v| format!("({} Int)", nm(v))).collect();
        out.push_str(&format!(
            "(assert (forall ({}) (=> (and {}) {head})))\n",
            binders.join(" "),
            parts.join(" ")
        ));
    }
    out.push_str("(check-sat)\n");
    out
}

pub fn default_names(sys: &LiaSystem) -> Vec<Vec<String>> {
    sys.clauses.iter().map(|c| (0..c.nvars).map(|v| format!("x{v}")).collect()).collect()
}

/// Fresh, injective bound-variable names per clause; sometimes a
/// permutation of the canonical `v0, v1, ...` names.
pub fn random_names(sys: &LiaSystem, rng: &mut StdRng) -> Vec<Vec<String>> {
    sys.clauses
        .iter()
        .map(|c| {
            if rng.random_bool(0.3) {
                let mut v: Vec<String> = (0..c.nvars).map(|i| format!("v{i}")).collect();
                for i in (1..v.len()).rev() {
                    v.swap(i, rng.random_range(0..=i));
                }
                return v;
            }
            let mut seen = BTreeSet::new();
            (0..c.nvars)
                .map(|_| loop {
                    let len = rng.random_range(1..=6);
                    let s: String = "w_".chars()
                        .chain((0..len).map(|_| (b'a' + rng.random_range(0..26u8)) as char))
                        .collect();
                    if seen.insert(s.clone()) {
                        break s;
                    }
                })
                .collect()
        })
        .collect()
}

fn split_tokens(text: &str) -> Vec<String> {
    let mut toks = Vec::new();
    let mut cur = String::new();
    for ch in text.chars() {
        match ch {
            '(' | ')' => {
                if !cur.is_empty() {
                    toks.push(std::mem::take(&mut cur));
                }
                toks.push(ch.to_string());
            }
            c if c.is_whitespace() => {
                if !cur.is_empty() {
                    toks.push(std::mem::take(&mut cur));
                }
            }
            c => cur.push(c),
        }
    }
    if !cur.is_empty() {
        toks.push(cur);
    }
    toks
}

/// Re-spaces `text` (which must contain no comments or quoted symbols) with
/// random whitespace and, if asked, random comments between tokens.
pub fn perturb_layout(text: &str, rng: &mut StdRng, comments: bool) -> String {
    let toks = split_tokens(text);
    let mut out = String::new();
    for (i, t) in toks.iter().enumerate() {
        if i > 0 {
            let needs_space = toks[i - 1] != "(" && t != ")" && toks[i - 1] != ")" && t != "(";
            let n = if needs_space { rng.random_range(1..=3) } else { rng.random_range(0..=2) };
            for _ in 0..n {
                out.push([' ', '\t', '\n', ' '][rng.random_range(0..4)]);
            }
            if comments && rng.random_bool(0.1) {
                out.push_str(&format!(" ; note {} (x y)\n", rng.random_range(0..1000)));
            }
        }
        out.push_str(t);
    }
    if comments {
        out.insert_str(0, "; generated\n");
        out.push_str("\n; end");
    }
    out
}

/// Modifies one numeral of the system; returns false if it has none.
pub fn bump_numeral(sys: &mut LiaSystem, rng: &mut StdRng) -> bool {
    let total: usize = sys.clauses.iter().map(|c| c.constraints.len()).sum();
    if total == 0 {
        return false;
    }
    let mut k = rng.random_range(0..total);
    for c in &mut sys.clauses {
        if k < c.constraints.len() {
            let con = &mut c.constraints[k];
            if rng.random_bool(0.5) {
                con.2 += 1;
            } else {
                con.0[0].0 += 1;
            }
            return true;
        }
        k -= c.constraints.len();
    }
    unreachable!()
}

pub fn rename_predicate(sys: &mut LiaSystem, rng: &mut StdRng) {
    let p = rng.random_range(0..sys.preds.len());
    sys.preds[p].0 = format!("{}_renamed", sys.preds[p].0);
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}
