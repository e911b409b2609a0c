//! Sorts, terms, clauses and benchmarks of the CHC fragment.
//!
//! Clauses keep their body split into uninterpreted predicate atoms and a
//! single interpreted constraint. The [`Term`] type has no node for predicate
//! applications, so a constraint can never contain one.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Sorts of the supported background theories.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sort {
    Bool,
    Int,
    Real,
    Array(Box<Sort>, Box<Sort>),
}

impl Sort {
    pub fn array(index: Sort, element: Sort) -> Sort {
        Sort::Array(Box::new(index), Box::new(element))
    }

    pub fn is_numeric(&self) -> bool {
        matches!(self, Sort::Int | Sort::Real)
    }

    /// Adds every theory mentioned by this sort to `out`.
    pub fn collect_theories(&self, out: &mut BTreeSet<Theory>) {
        match self {
            Sort::Bool => {}
            Sort::Int => {
                out.insert(Theory::Int);
            }
            Sort::Real => {
                out.insert(Theory::Real);
            }
            Sort::Array(i, e) => {
                out.insert(Theory::Array);
                i.collect_theories(out);
                e.collect_theories(out);
            }
        }
    }
}

impl fmt::Display for Sort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sort::Bool => f.write_str("Bool"),
            Sort::Int => f.write_str("Int"),
            Sort::Real => f.write_str("Real"),
            Sort::Array(i, e) => write!(f, "(Array {i} {e})"),
        }
    }
}

/// Background theories other than Bool.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Theory {
    Int,
    Real,
    Array,
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Theory::Int => "Int",
            Theory::Real => "Real",
            Theory::Array => "Array",
        })
    }
}

/// An exact decimal literal `mantissa * 10^-scale`, kept with trailing zeros
/// stripped so equal values have equal representations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Decimal {
    mantissa: BigInt,
    scale: u32,
}

impl Decimal {
    pub fn new(mantissa: BigInt, scale: u32) -> Self {
        let ten = BigInt::from(10);
        let mut mantissa = mantissa;
        let mut scale = scale;
        while scale > 0 && (&mantissa % &ten).is_zero() {
            mantissa /= &ten;
            scale -= 1;
        }
        Decimal { mantissa, scale }
    }

    /// Parses `digits.digits`.
    pub fn parse(text: &str) -> Option<Self> {
        let (int, frac) = text.split_once('.')?;
        if int.is_empty()
            || frac.is_empty()
            || !int.bytes().all(|b| b.is_ascii_digit())
            || !frac.bytes().all(|b| b.is_ascii_digit())
        {
            return None;
        }
        let mantissa: BigInt = format!("{int}{frac}").parse().ok()?;
        Some(Decimal::new(mantissa, u32::try_from(frac.len()).ok()?))
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.mantissa.clone(), BigInt::from(10).pow(self.scale))
    }
}

impl fmt::Display for Decimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = self.mantissa.magnitude().to_string();
        let scale = self.scale as usize;
        let (int, frac) = if digits.len() > scale {
            let (a, b) = digits.split_at(digits.len() - scale);
            (a.to_string(), b.to_string())
        } else {
            ("0".to_string(), format!("{digits:0>scale$}"))
        };
        let frac = if frac.is_empty() { "0".to_string() } else { frac };
        write!(f, "{int}.{frac}")
    }
}

/// Interpreted operators of the fragment's theory signature.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Op {
    And,
    Or,
    Not,
    Implies,
    Ite,
    Eq,
    Le,
    Lt,
    Ge,
    Gt,
    Add,
    Sub,
    Mul,
    /// Real division `/`.
    RealDiv,
    Div,
    Mod,
    Select,
    Store,
}

impl Op {
    pub const ALL: [Op; 18] = [
        Op::And,
        Op::Or,
        Op::Not,
        Op::Implies,
        Op::Ite,
        Op::Eq,
        Op::Le,
        Op::Lt,
        Op::Ge,
        Op::Gt,
        Op::Add,
        Op::Sub,
        Op::Mul,
        Op::RealDiv,
        Op::Div,
        Op::Mod,
        Op::Select,
        Op::Store,
    ];

    pub fn symbol(self) -> &'static str {
        match self {
            Op::And => "and",
            Op::Or => "or",
            Op::Not => "not",
            Op::Implies => "=>",
            Op::Ite => "ite",
            Op::Eq => "=",
            Op::Le => "<=",
            Op::Lt => "<",
            Op::Ge => ">=",
            Op::Gt => ">",
            Op::Add => "+",
            Op::Sub => "-",
            Op::Mul => "*",
            Op::RealDiv => "/",
            Op::Div => "div",
            Op::Mod => "mod",
            Op::Select => "select",
            Op::Store => "store",
        }
    }

    pub fn from_symbol(s: &str) -> Option<Op> {
        Op::ALL.into_iter().find(|op| op.symbol() == s)
    }
}

/// Interpreted terms. Predicate applications live in [`Atom`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Var(String),
    Bool(bool),
    Int(BigInt),
    Dec(Decimal),
    App(Op, Vec<Term>),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(name.into())
    }

    pub fn int(n: i64) -> Term {
        Term::Int(BigInt::from(n))
    }

    pub fn app(op: Op, args: Vec<Term>) -> Term {
        Term::App(op, args)
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    pub fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
            _ => {}
        }
    }

    /// True if the term mentions no variables.
    pub fn is_ground(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::App(_, args) => args.iter().all(Term::is_ground),
            _ => true,
        }
    }

    /// Top-level conjuncts, with nested `and` flattened and `true` kept.
    pub fn conjuncts(&self) -> Vec<&Term> {
        let mut out = Vec::new();
        fn walk<'a>(t: &'a Term, out: &mut Vec<&'a Term>) {
            match t {
                Term::App(Op::And, args) => args.iter().for_each(|a| walk(a, out)),
                other => out.push(other),
            }
        }
        walk(self, &mut out);
        out
    }

    /// Builds the constraint term for a list of conjuncts.
    pub fn conjunction(mut parts: Vec<Term>) -> Term {
        match parts.len() {
            0 => Term::Bool(true),
            1 => parts.pop().unwrap_or(Term::Bool(true)),
            _ => Term::App(Op::And, parts),
        }
    }

    pub fn is_true(&self) -> bool {
        matches!(self, Term::Bool(true))
    }

    /// Calls `f` on every subterm in pre-order.
    pub fn visit<'a>(&'a self, f: &mut impl FnMut(&'a Term)) {
        f(self);
        if let Term::App(_, args) = self {
            for a in args {
                a.visit(f);
            }
        }
    }

    pub fn rename_vars(&self, map: &HashMap<String, String>) -> Term {
        match self {
            Term::Var(v) => Term::Var(map.get(v).cloned().unwrap_or_else(|| v.clone())),
            Term::App(op, args) => Term::App(*op, args.iter().map(|a| a.rename_vars(map)).collect()),
            other => other.clone(),
        }
    }
}

/// An uninterpreted predicate application.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Atom {
    pub pred: String,
    pub args: Vec<Term>,
}

impl Atom {
    pub fn new(pred: impl Into<String>, args: Vec<Term>) -> Self {
        Atom {
            pred: pred.into(),
            args,
        }
    }

    pub fn nullary(pred: impl Into<String>) -> Self {
        Atom::new(pred, Vec::new())
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.args.iter().for_each(|a| a.collect_vars(&mut out));
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Head {
    Atom(Atom),
    False,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PredicateDecl {
    pub name: String,
    pub arg_sorts: Vec<Sort>,
}

impl PredicateDecl {
    pub fn new(name: impl Into<String>, arg_sorts: Vec<Sort>) -> Self {
        PredicateDecl {
            name: name.into(),
            arg_sorts,
        }
    }
}

/// `forall vars. body_atoms /\ constraint => head`
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Clause {
    pub vars: Vec<(String, Sort)>,
    pub body_atoms: Vec<Atom>,
    pub constraint: Term,
    pub head: Head,
}

impl Clause {
    pub fn new(vars: Vec<(String, Sort)>, body_atoms: Vec<Atom>, constraint: Term, head: Head) -> Self {
        Clause {
            vars,
            body_atoms,
            constraint,
            head,
        }
    }

    /// At most one uninterpreted atom in the body.
    pub fn is_linear(&self) -> bool {
        self.body_atoms.len() <= 1
    }

    pub fn is_query(&self) -> bool {
        matches!(self.head, Head::False)
    }

    pub fn is_fact(&self) -> bool {
        self.body_atoms.is_empty() && !self.is_query()
    }

    pub fn head_atom(&self) -> Option<&Atom> {
        match &self.head {
            Head::Atom(a) => Some(a),
            Head::False => None,
        }
    }

    /// Variables occurring anywhere in the clause (not just the binder list).
    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for a in &self.body_atoms {
            a.args.iter().for_each(|t| t.collect_vars(&mut out));
        }
        self.constraint.collect_vars(&mut out);
        if let Head::Atom(a) = &self.head {
            a.args.iter().for_each(|t| t.collect_vars(&mut out));
        }
        out
    }

    /// Every term of the clause, atoms' arguments included.
    pub fn terms(&self) -> impl Iterator<Item = &Term> {
        self.body_atoms
            .iter()
            .flat_map(|a| a.args.iter())
            .chain(std::iter::once(&self.constraint))
            .chain(self.head_atom().into_iter().flat_map(|a| a.args.iter()))
    }

    /// Renames bound variables to `v0, v1, ...` in order of first occurrence
    /// (body atoms, constraint, head), reordering the binder list to match.
    /// Bound but unused variables follow in their original order.
    pub fn alpha_normalized(&self) -> Clause {
        let mut order: Vec<String> = Vec::new();
        let mut seen = BTreeSet::new();
        for t in self.terms() {
            t.visit(&mut |s| {
                if let Term::Var(v) = s {
                    if seen.insert(v.clone()) {
                        order.push(v.clone());
                    }
                }
            });
        }
        for (v, _) in &self.vars {
            if seen.insert(v.clone()) {
                order.push(v.clone());
            }
        }
        let sorts: HashMap<&str, &Sort> = self.vars.iter().map(|(n, s)| (n.as_str(), s)).collect();
        let map: HashMap<String, String> = order
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), format!("v{i}")))
            .collect();
        let vars = order
            .iter()
            .filter_map(|v| sorts.get(v.as_str()).map(|s| (map[v].clone(), (*s).clone())))
            .collect();
        let rename_atom = |a: &Atom| Atom::new(a.pred.clone(), a.args.iter().map(|t| t.rename_vars(&map)).collect());
        Clause {
            vars,
            body_atoms: self.body_atoms.iter().map(rename_atom).collect(),
            constraint: self.constraint.rename_vars(&map),
            head: match &self.head {
                Head::Atom(a) => Head::Atom(rename_atom(a)),
                Head::False => Head::False,
            },
        }
    }
}

/// A parsed CHC script together with its provenance.
#[derive(Clone, Debug)]
pub struct Benchmark {
    pub logic: String,
    pub decls: Vec<PredicateDecl>,
    pub clauses: Vec<Clause>,
    pub origin: String,
    pub checksum: Option<crate::transform::Digest>,
    /// Source position of each clause's `assert`, when parsed from text.
    pub clause_locations: Vec<crate::smtlib::Location>,
}

/// Structural equality: logic, declarations and clauses. Provenance and
/// source positions are ignored.
impl PartialEq for Benchmark {
    fn eq(&self, other: &Self) -> bool {
        self.logic == other.logic && self.decls == other.decls && self.clauses == other.clauses
    }
}

impl Eq for Benchmark {}

impl Benchmark {
    pub fn new(decls: Vec<PredicateDecl>, clauses: Vec<Clause>) -> Self {
        Benchmark {
            logic: "HORN".to_string(),
            decls,
            clauses,
            origin: String::new(),
            checksum: None,
            clause_locations: Vec::new(),
        }
    }

    pub fn with_origin(mut self, origin: impl Into<String>) -> Self {
        self.origin = origin.into();
        self
    }

    pub fn decl(&self, name: &str) -> Option<&PredicateDecl> {
        self.decls.iter().find(|d| d.name == name)
    }

    pub fn num_queries(&self) -> usize {
        self.clauses.iter().filter(|c| c.is_query()).count()
    }

    pub fn queries(&self) -> impl Iterator<Item = &Clause> {
        self.clauses.iter().filter(|c| c.is_query())
    }

    /// Every clause alpha-normalized; two benchmarks are alpha-equivalent iff
    /// their normalizations are structurally equal.
    pub fn alpha_normalized(&self) -> Benchmark {
        Benchmark {
            clauses: self.clauses.iter().map(Clause::alpha_normalized).collect(),
            ..self.clone()
        }
    }

    pub fn alpha_eq(&self, other: &Benchmark) -> bool {
        self.alpha_normalized() == other.alpha_normalized()
    }

    /// Checks declarations, arities, argument sorts, scoping and constraint
    /// sorts. Returns every violation found; an empty list means well-formed.
    pub fn well_formedness(&self) -> Vec<String> {
        let mut out = Vec::new();
        let mut decls: BTreeMap<&str, &PredicateDecl> = BTreeMap::new();
        for d in &self.decls {
            if decls.insert(d.name.as_str(), d).is_some() {
                out.push(format!("predicate {} declared more than once", d.name));
            }
        }
        for (i, c) in self.clauses.iter().enumerate() {
            let mut scope: HashMap<&str, &Sort> = HashMap::new();
            for (v, s) in &c.vars {
                if scope.insert(v.as_str(), s).is_some() {
                    out.push(format!("clause {i}: variable {v} bound twice"));
                }
            }
            let lookup = |name: &str| scope.get(name).map(|s| (*s).clone());
            let mut atoms: Vec<&Atom> = c.body_atoms.iter().collect();
            atoms.extend(c.head_atom());
            for a in atoms {
                let Some(d) = decls.get(a.pred.as_str()) else {
                    out.push(format!("clause {i}: undeclared predicate {}", a.pred));
                    continue;
                };
                if d.arg_sorts.len() != a.args.len() {
                    out.push(format!(
                        "clause {i}: predicate {} expects {} arguments, got {}",
                        a.pred,
                        d.arg_sorts.len(),
                        a.args.len()
                    ));
                    continue;
                }
                for (k, (arg, want)) in a.args.iter().zip(&d.arg_sorts).enumerate() {
                    match infer_sort(arg, &lookup) {
                        Ok(got) if got.fits(want) => {}
                        Ok(got) => out.push(format!(
                            "clause {i}: argument {k} of {} has sort {}, expected {want}",
                            a.pred, got.sort
                        )),
                        Err(e) => out.push(format!("clause {i}: {e}")),
                    }
                }
            }
            match infer_sort(&c.constraint, &lookup) {
                Ok(t) if t.sort == Sort::Bool => {}
                Ok(t) => out.push(format!("clause {i}: constraint has sort {}, expected Bool", t.sort)),
                Err(e) => out.push(format!("clause {i}: {e}")),
            }
        }
        out
    }
}

/// Competition tracks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TrackCategory {
    LiaNonlin,
    LiaLin,
    LiaLinArrays,
    LraTs,
    Unclassified,
}

impl TrackCategory {
    pub fn name(self) -> &'static str {
        match self {
            TrackCategory::LiaNonlin => "LIA-nonlin",
            TrackCategory::LiaLin => "LIA-lin",
            TrackCategory::LiaLinArrays => "LIA-lin-arrays",
            TrackCategory::LraTs => "LRA-TS",
            TrackCategory::Unclassified => "UNCLASSIFIED",
        }
    }
}

impl fmt::Display for TrackCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Sort of a term. `int_literal` marks ground numeral arithmetic, which is
/// also accepted where a Real is expected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Typed {
    pub sort: Sort,
    pub int_literal: bool,
}

impl Typed {
    fn plain(sort: Sort) -> Self {
        Typed {
            sort,
            int_literal: false,
        }
    }

    pub fn fits(&self, want: &Sort) -> bool {
        self.sort == *want || (self.int_literal && *want == Sort::Real)
    }
}

/// Result sort of applying `op` to arguments of the given sorts.
pub fn apply_sort(op: Op, args: &[Typed]) -> Result<Typed, String> {
    let arity_at_least = |n: usize| {
        if args.len() < n {
            Err(format!("{} expects at least {n} arguments, got {}", op.symbol(), args.len()))
        } else {
            Ok(())
        }
    };
    let arity_exact = |n: usize| {
        if args.len() != n {
            Err(format!("{} expects {n} arguments, got {}", op.symbol(), args.len()))
        } else {
            Ok(())
        }
    };
    let all_bool = || {
        args.iter().enumerate().try_for_each(|(k, a)| {
            if a.sort == Sort::Bool {
                Ok(())
            } else {
                Err(format!("argument {k} of {} has sort {}, expected Bool", op.symbol(), a.sort))
            }
        })
    };
    // Common numeric sort of the arguments; numerals coerce to Real.
    let numeric = || -> Result<Typed, String> {
        let real = args.iter().any(|a| a.sort == Sort::Real);
        let want = if real { Sort::Real } else { Sort::Int };
        for (k, a) in args.iter().enumerate() {
            if !a.fits(&want) {
                return Err(format!(
                    "sort mismatch: argument {k} of {} has sort {}, expected {want}",
                    op.symbol(),
                    a.sort
                ));
            }
        }
        Ok(Typed {
            sort: want,
            int_literal: args.iter().all(|a| a.int_literal),
        })
    };
    match op {
        Op::And | Op::Or => {
            arity_at_least(1)?;
            all_bool()?;
            Ok(Typed::plain(Sort::Bool))
        }
        Op::Not => {
            arity_exact(1)?;
            all_bool()?;
            Ok(Typed::plain(Sort::Bool))
        }
        Op::Implies => {
            arity_at_least(2)?;
            all_bool()?;
            Ok(Typed::plain(Sort::Bool))
        }
        Op::Ite => {
            arity_exact(3)?;
            if args[0].sort != Sort::Bool {
                return Err(format!("ite condition has sort {}, expected Bool", args[0].sort));
            }
            let (a, b) = (&args[1], &args[2]);
            if a.sort == b.sort {
                Ok(Typed {
                    sort: a.sort.clone(),
                    int_literal: a.int_literal && b.int_literal,
                })
            } else if a.fits(&b.sort) || b.fits(&a.sort) {
                Ok(Typed::plain(Sort::Real))
            } else {
                Err(format!("sort mismatch: ite branches have sorts {} and {}", a.sort, b.sort))
            }
        }
        Op::Eq => {
            arity_at_least(2)?;
            if args.iter().all(|a| a.sort.is_numeric()) {
                numeric()?;
            } else if let Some(k) = args.iter().position(|a| a.sort != args[0].sort) {
                return Err(format!(
                    "sort mismatch: argument {k} of = has sort {}, expected {}",
                    args[k].sort, args[0].sort
                ));
            }
            Ok(Typed::plain(Sort::Bool))
        }
        Op::Le | Op::Lt | Op::Ge | Op::Gt => {
            arity_at_least(2)?;
            numeric()?;
            Ok(Typed::plain(Sort::Bool))
        }
        Op::Add | Op::Sub => {
            arity_at_least(1)?;
            numeric()
        }
        Op::Mul => {
            arity_at_least(2)?;
            numeric()
        }
        Op::RealDiv => {
            arity_at_least(2)?;
            for (k, a) in args.iter().enumerate() {
                if !a.fits(&Sort::Real) {
                    return Err(format!("sort mismatch: argument {k} of / has sort {}, expected Real", a.sort));
                }
            }
            Ok(Typed::plain(Sort::Real))
        }
        Op::Div | Op::Mod => {
            arity_exact(2)?;
            for (k, a) in args.iter().enumerate() {
                if a.sort != Sort::Int {
                    return Err(format!(
                        "sort mismatch: argument {k} of {} has sort {}, expected Int",
                        op.symbol(),
                        a.sort
                    ));
                }
            }
            Ok(Typed {
                sort: Sort::Int,
                int_literal: args.iter().all(|a| a.int_literal),
            })
        }
        Op::Select => {
            arity_exact(2)?;
            match &args[0].sort {
                Sort::Array(i, e) if args[1].fits(i) => Ok(Typed::plain((**e).clone())),
                Sort::Array(i, _) => Err(format!("sort mismatch: select index has sort {}, expected {i}", args[1].sort)),
                s => Err(format!("sort mismatch: select on non-array sort {s}")),
            }
        }
        Op::Store => {
            arity_exact(3)?;
            match &args[0].sort {
                Sort::Array(i, e) if args[1].fits(i) && args[2].fits(e) => Ok(Typed::plain(args[0].sort.clone())),
                Sort::Array(i, e) => Err(format!(
                    "sort mismatch: store on {} with index {} and value {}, expected {i} and {e}",
                    args[0].sort, args[1].sort, args[2].sort
                )),
                s => Err(format!("sort mismatch: store on non-array sort {s}")),
            }
        }
    }
}

/// Infers the sort of `term`, resolving variables through `lookup`.
pub fn infer_sort(term: &Term, lookup: &impl Fn(&str) -> Option<Sort>) -> Result<Typed, String> {
    match term {
        Term::Var(v) => lookup(v).map(Typed::plain).ok_or_else(|| format!("unbound variable {v}")),
        Term::Bool(_) => Ok(Typed::plain(Sort::Bool)),
        Term::Int(_) => Ok(Typed {
            sort: Sort::Int,
            int_literal: true,
        }),
        Term::Dec(_) => Ok(Typed::plain(Sort::Real)),
        Term::App(op, args) => {
            let sorts = args.iter().map(|a| infer_sort(a, lookup)).collect::<Result<Vec<_>, _>>()?;
            apply_sort(*op, &sorts)
        }
    }
}

/// Exact value of a ground arithmetic term, if it is one.
pub fn ground_value(term: &Term) -> Option<BigRational> {
    match term {
        Term::Int(n) => Some(BigRational::from_integer(n.clone())),
        Term::Dec(d) => Some(d.to_rational()),
        Term::App(Op::Add, args) => args.iter().map(ground_value).try_fold(BigRational::zero(), |acc, v| Some(acc + v?)),
        Term::App(Op::Mul, args) => args.iter().map(ground_value).try_fold(BigRational::one(), |acc, v| Some(acc * v?)),
        Term::App(Op::RealDiv, args) => {
            let mut vals = args.iter().map(ground_value);
            let first = vals.next()??;
            vals.try_fold(first, |acc, v| {
                let v = v?;
                (!v.is_zero()).then(|| acc / v)
            })
        }
        Term::App(Op::Sub, args) => {
            let mut vals = args.iter().map(ground_value);
            let first = vals.next()??;
            if args.len() == 1 {
                return Some(-first);
            }
            vals.try_fold(first, |acc, v| Some(acc - v?))
        }
        _ => None,
    }
}
