//! Lexer, parser and canonical printer for the CHC fragment of SMT-LIB 2.6.
//!
//! Accepted scripts: an optional `(set-logic HORN)`, predicate declarations
//! with `Bool` result, `assert`s holding one closed Horn clause each, and
//! `(check-sat)`. `set-info`, `set-option`, `get-model` and `exit` are
//! accepted and ignored.

use std::collections::{HashMap, HashSet};
use std::fmt::{self, Write as _};

use num_bigint::{BigInt, Sign};

use crate::model::{
    apply_sort, Atom, Benchmark, Clause, Decimal, Head, Op, PredicateDecl, Sort, Term, Typed,
};

/// Deepest parenthesis nesting accepted, before and after `let` expansion.
pub const MAX_DEPTH: usize = 512;
/// Upper bound on expression nodes produced by `let` expansion.
pub const MAX_EXPANDED_NODES: usize = 2_000_000;

/// 1-based source position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Location {
    pub line: u32,
    pub col: u32,
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub message: String,
    pub location: Option<Location>,
}

impl Diagnostic {
    pub fn error(message: impl Into<String>, location: Location) -> Self {
        Diagnostic {
            severity: Severity::Error,
            message: message.into(),
            location: Some(location),
        }
    }

    pub fn warning(message: impl Into<String>, location: Location) -> Self {
        Diagnostic {
            severity: Severity::Warning,
            message: message.into(),
            location: Some(location),
        }
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sev = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        match self.location {
            Some(loc) => write!(f, "{loc}: {sev}: {}", self.message),
            None => write!(f, "{sev}: {}", self.message),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TokenKind {
    LParen,
    RParen,
    Symbol,
    Keyword,
    Numeral,
    Decimal,
    String,
    Eof,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    /// Symbol text has `|...|` quotes removed.
    pub text: String,
    pub loc: Location,
}

fn is_symbol_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || "~!@$%^&*_-+=<>.?/".contains(c)
}

struct Cursor<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: u32,
    col: u32,
}

impl Cursor<'_> {
    fn loc(&self) -> Location {
        Location {
            line: self.line,
            col: self.col,
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.chars.peek().copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line = self.line.saturating_add(1);
            self.col = 1;
        } else {
            self.col = self.col.saturating_add(1);
        }
        Some(c)
    }

    fn take_while(&mut self, pred: impl Fn(char) -> bool, out: &mut String) {
        while let Some(c) = self.peek() {
            if !pred(c) {
                break;
            }
            out.push(c);
            self.bump();
        }
    }
}

/// Splits `source` into tokens, ending with a single `Eof` token.
pub fn tokenize(source: &str) -> Result<Vec<Token>, Diagnostic> {
    let mut cur = Cursor {
        chars: source.chars().peekable(),
        line: 1,
        col: 1,
    };
    let mut out = Vec::new();
    loop {
        let loc = cur.loc();
        let Some(c) = cur.peek() else {
            out.push(Token {
                kind: TokenKind::Eof,
                text: String::new(),
                loc,
            });
            return Ok(out);
        };
        let tok = |kind, text| Token { kind, text, loc };
        match c {
            c if c.is_whitespace() => {
                cur.bump();
            }
            ';' => {
                while let Some(c) = cur.bump() {
                    if c == '\n' {
                        break;
                    }
                }
            }
            '(' => {
                cur.bump();
                out.push(tok(TokenKind::LParen, "(".into()));
            }
            ')' => {
                cur.bump();
                out.push(tok(TokenKind::RParen, ")".into()));
            }
            '|' => {
                cur.bump();
                let mut text = String::new();
                loop {
                    match cur.bump() {
                        Some('|') => break,
                        Some('\\') => return Err(Diagnostic::error("backslash in quoted symbol", loc)),
                        Some(c) => text.push(c),
                        None => return Err(Diagnostic::error("unterminated quoted symbol", loc)),
                    }
                }
                out.push(tok(TokenKind::Symbol, text));
            }
            '"' => {
                cur.bump();
                let mut text = String::new();
                loop {
                    match cur.bump() {
                        Some('"') if cur.peek() == Some('"') => {
                            cur.bump();
                            text.push('"');
                        }
                        Some('"') => break,
                        Some(c) => text.push(c),
                        None => return Err(Diagnostic::error("unterminated string literal", loc)),
                    }
                }
                out.push(tok(TokenKind::String, text));
            }
            ':' => {
                cur.bump();
                let mut text = ":".to_string();
                cur.take_while(is_symbol_char, &mut text);
                if text.len() == 1 {
                    return Err(Diagnostic::error("empty keyword", loc));
                }
                out.push(tok(TokenKind::Keyword, text));
            }
            '0'..='9' => {
                let mut text = String::new();
                cur.take_while(|c| c.is_ascii_digit(), &mut text);
                let mut kind = TokenKind::Numeral;
                if cur.peek() == Some('.') {
                    cur.bump();
                    text.push('.');
                    let before = text.len();
                    cur.take_while(|c| c.is_ascii_digit(), &mut text);
                    if text.len() == before {
                        return Err(Diagnostic::error(format!("malformed decimal {text}"), loc));
                    }
                    kind = TokenKind::Decimal;
                }
                if cur.peek().is_some_and(is_symbol_char) {
                    return Err(Diagnostic::error(format!("malformed numeral starting with {text}"), loc));
                }
                out.push(tok(kind, text));
            }
            '#' => return Err(Diagnostic::error("hexadecimal and binary literals are not supported", loc)),
            c if is_symbol_char(c) => {
                let mut text = String::new();
                cur.take_while(is_symbol_char, &mut text);
                out.push(tok(TokenKind::Symbol, text));
            }
            other => return Err(Diagnostic::error(format!("unexpected character {other:?}"), loc)),
        }
    }
}

#[derive(Clone, Debug)]
enum SExpr {
    Leaf(Token),
    List(Vec<SExpr>, Location),
}

impl SExpr {
    fn loc(&self) -> Location {
        match self {
            SExpr::Leaf(t) => t.loc,
            SExpr::List(_, l) => *l,
        }
    }

    fn symbol(&self) -> Option<&str> {
        match self {
            SExpr::Leaf(t) if t.kind == TokenKind::Symbol => Some(&t.text),
            _ => None,
        }
    }

    fn list(&self) -> Option<&[SExpr]> {
        match self {
            SExpr::List(items, _) => Some(items),
            SExpr::Leaf(_) => None,
        }
    }

    /// Head symbol for lists like `(forall ...)`.
    fn head(&self) -> Option<&str> {
        self.list().and_then(|l| l.first()).and_then(SExpr::symbol)
    }
}

// Iterative so that pathological nesting cannot exhaust the stack.
fn read_sexprs(tokens: Vec<Token>) -> Result<Vec<SExpr>, Diagnostic> {
    let mut stack: Vec<(Vec<SExpr>, Location)> = Vec::new();
    let mut top = Vec::new();
    for tok in tokens {
        match tok.kind {
            TokenKind::LParen => {
                if stack.len() >= MAX_DEPTH {
                    return Err(Diagnostic::error(format!("nesting deeper than {MAX_DEPTH}"), tok.loc));
                }
                stack.push((Vec::new(), tok.loc));
            }
            TokenKind::RParen => {
                let Some((items, loc)) = stack.pop() else {
                    return Err(Diagnostic::error("unbalanced parentheses: unexpected )", tok.loc));
                };
                let e = SExpr::List(items, loc);
                match stack.last_mut() {
                    Some((parent, _)) => parent.push(e),
                    None => top.push(e),
                }
            }
            TokenKind::Eof => {
                if let Some((_, loc)) = stack.last() {
                    return Err(Diagnostic::error("unbalanced parentheses: unclosed (", *loc));
                }
            }
            _ => match stack.last_mut() {
                Some((parent, _)) => parent.push(SExpr::Leaf(tok)),
                None => return Err(Diagnostic::error(format!("expected a command, found {}", tok.text), tok.loc)),
            },
        }
    }
    Ok(top)
}

/// Strips `!` annotations and expands `let` bindings.
struct Expander {
    nodes: usize,
}

impl Expander {
    fn expand(&mut self, e: &SExpr, env: &HashMap<String, (SExpr, usize)>, depth: usize) -> Result<SExpr, Diagnostic> {
        self.nodes += 1;
        if self.nodes > MAX_EXPANDED_NODES {
            return Err(Diagnostic::error("let expansion too large", e.loc()));
        }
        if depth > MAX_DEPTH {
            return Err(Diagnostic::error(format!("term nesting deeper than {MAX_DEPTH}"), e.loc()));
        }
        match e {
            SExpr::Leaf(t) if t.kind == TokenKind::Symbol => match env.get(&t.text) {
                Some((value, size)) => {
                    self.nodes += size;
                    if self.nodes > MAX_EXPANDED_NODES {
                        return Err(Diagnostic::error("let expansion too large", e.loc()));
                    }
                    Ok(value.clone())
                }
                None => Ok(e.clone()),
            },
            SExpr::Leaf(_) => Ok(e.clone()),
            SExpr::List(items, loc) => match e.head() {
                Some("!") => {
                    let inner = items
                        .get(1)
                        .ok_or_else(|| Diagnostic::error("empty annotation", *loc))?;
                    for attr in &items[2..] {
                        if let SExpr::Leaf(t) = attr {
                            if t.kind == TokenKind::Keyword && t.text != ":named" {
                                return Err(Diagnostic::error(format!("unsupported attribute {}", t.text), t.loc));
                            }
                        }
                    }
                    self.expand(inner, env, depth)
                }
                Some("let") => {
                    let (bindings, body) = match items.as_slice() {
                        [_, SExpr::List(b, _), body] => (b, body),
                        _ => return Err(Diagnostic::error("malformed let", *loc)),
                    };
                    let mut inner = env.clone();
                    let mut fresh = HashSet::new();
                    for b in bindings {
                        match b.list() {
                            Some([name, value]) if name.symbol().is_some() => {
                                let n = name.symbol().unwrap_or_default().to_string();
                                if !fresh.insert(n.clone()) {
                                    return Err(Diagnostic::error(format!("duplicate let binding {n}"), name.loc()));
                                }
                                let v = self.expand(value, env, depth + 1)?;
                                let size = node_count(&v);
                                inner.insert(n, (v, size));
                            }
                            _ => return Err(Diagnostic::error("malformed let binding", b.loc())),
                        }
                    }
                    self.expand(body, &inner, depth + 1)
                }
                Some(q @ ("forall" | "exists")) => {
                    let [_, SExpr::List(binders, _), _] = items.as_slice() else {
                        return Err(Diagnostic::error(format!("malformed {q}"), *loc));
                    };
                    let mut inner = env.clone();
                    for b in binders {
                        if let Some(n) = b.list().and_then(|l| l.first()).and_then(SExpr::symbol) {
                            inner.remove(n);
                        }
                    }
                    let body = self.expand(&items[2], &inner, depth + 1)?;
                    Ok(SExpr::List(vec![items[0].clone(), items[1].clone(), body], *loc))
                }
                _ => {
                    let mut out = Vec::with_capacity(items.len());
                    for it in items {
                        out.push(self.expand(it, env, depth + 1)?);
                    }
                    Ok(SExpr::List(out, *loc))
                }
            },
        }
    }
}

fn node_count(e: &SExpr) -> usize {
    match e {
        SExpr::Leaf(_) => 1,
        SExpr::List(items, _) => 1 + items.iter().map(node_count).sum::<usize>(),
    }
}

fn depth_of(e: &SExpr) -> usize {
    match e {
        SExpr::Leaf(_) => 0,
        SExpr::List(items, _) => 1 + items.iter().map(depth_of).max().unwrap_or(0),
    }
}

fn parse_sort(e: &SExpr) -> Result<Sort, Diagnostic> {
    match (e.symbol(), e.list()) {
        (Some("Bool"), _) => Ok(Sort::Bool),
        (Some("Int"), _) => Ok(Sort::Int),
        (Some("Real"), _) => Ok(Sort::Real),
        (_, Some([head, i, el])) if head.symbol() == Some("Array") => Ok(Sort::array(parse_sort(i)?, parse_sort(el)?)),
        _ => Err(Diagnostic::error(format!("unknown sort {}", render_sexpr(e)), e.loc())),
    }
}

fn render_sexpr(e: &SExpr) -> String {
    match e {
        SExpr::Leaf(t) => t.text.clone(),
        SExpr::List(items, _) => {
            let inner: Vec<String> = items.iter().map(render_sexpr).collect();
            format!("({})", inner.join(" "))
        }
    }
}

struct ClauseBuilder<'a> {
    decls: &'a HashMap<String, PredicateDecl>,
    scope: HashMap<String, Sort>,
}

impl ClauseBuilder<'_> {
    fn is_pred_app(&self, e: &SExpr) -> bool {
        let sym = e.symbol().or_else(|| e.head());
        sym.is_some_and(|s| self.decls.contains_key(s) && !self.scope.contains_key(s))
    }

    fn atom(&self, e: &SExpr) -> Result<Atom, Diagnostic> {
        let (name, args) = match e {
            SExpr::Leaf(t) => (t.text.as_str(), &[][..]),
            SExpr::List(items, loc) => {
                let name = items
                    .first()
                    .and_then(SExpr::symbol)
                    .ok_or_else(|| Diagnostic::error("expected predicate application", *loc))?;
                (name, &items[1..])
            }
        };
        let decl = self
            .decls
            .get(name)
            .ok_or_else(|| Diagnostic::error(format!("undeclared predicate {name}"), e.loc()))?;
        if decl.arg_sorts.len() != args.len() {
            return Err(Diagnostic::error(
                format!(
                    "sort mismatch: predicate {name} expects {} arguments, got {}",
                    decl.arg_sorts.len(),
                    args.len()
                ),
                e.loc(),
            ));
        }
        let mut terms = Vec::with_capacity(args.len());
        for (a, want) in args.iter().zip(&decl.arg_sorts) {
            let (t, ty) = self.term(a)?;
            if !ty.fits(want) {
                return Err(Diagnostic::error(
                    format!("sort mismatch: argument of {name} has sort {}, expected {want}", ty.sort),
                    a.loc(),
                ));
            }
            terms.push(t);
        }
        Ok(Atom::new(name, terms))
    }

    fn term(&self, e: &SExpr) -> Result<(Term, Typed), Diagnostic> {
        let loc = e.loc();
        match e {
            SExpr::Leaf(t) => match t.kind {
                TokenKind::Numeral => {
                    let n: BigInt = t
                        .text
                        .parse()
                        .map_err(|_| Diagnostic::error(format!("malformed numeral {}", t.text), loc))?;
                    Ok((Term::Int(n), Typed { sort: Sort::Int, int_literal: true }))
                }
                TokenKind::Decimal => {
                    let d = Decimal::parse(&t.text)
                        .ok_or_else(|| Diagnostic::error(format!("malformed decimal {}", t.text), loc))?;
                    Ok((Term::Dec(d), Typed { sort: Sort::Real, int_literal: false }))
                }
                TokenKind::Symbol => {
                    if let Some(s) = self.scope.get(&t.text) {
                        return Ok((Term::Var(t.text.clone()), Typed { sort: s.clone(), int_literal: false }));
                    }
                    match t.text.as_str() {
                        "true" => Ok((Term::Bool(true), Typed { sort: Sort::Bool, int_literal: false })),
                        "false" => Ok((Term::Bool(false), Typed { sort: Sort::Bool, int_literal: false })),
                        s if self.decls.contains_key(s) => Err(Diagnostic::error(
                            format!("uninterpreted predicate {s} in constraint position"),
                            loc,
                        )),
                        s => Err(Diagnostic::error(format!("unbound variable {s}"), loc)),
                    }
                }
                _ => Err(Diagnostic::error(format!("unexpected token {}", t.text), loc)),
            },
            SExpr::List(items, _) => {
                let Some(head) = items.first().and_then(SExpr::symbol) else {
                    return Err(Diagnostic::error(format!("unsupported expression {}", render_sexpr(e)), loc));
                };
                if head == "exists" {
                    return Err(Diagnostic::error("existential quantification is not supported", loc));
                }
                if head == "forall" {
                    return Err(Diagnostic::error("nested universal quantification is not supported", loc));
                }
                if self.decls.contains_key(head) && !self.scope.contains_key(head) {
                    return Err(Diagnostic::error(
                        format!("uninterpreted predicate {head} in constraint position"),
                        loc,
                    ));
                }
                let Some(op) = Op::from_symbol(head) else {
                    return Err(Diagnostic::error(format!("unknown function symbol {head}"), loc));
                };
                let mut args = Vec::with_capacity(items.len() - 1);
                let mut sorts = Vec::with_capacity(items.len() - 1);
                for a in &items[1..] {
                    let (t, s) = self.term(a)?;
                    args.push(t);
                    sorts.push(s);
                }
                let ty = apply_sort(op, &sorts).map_err(|m| Diagnostic::error(m, loc))?;
                Ok((Term::App(op, args), ty))
            }
        }
    }

    fn body(&self, e: &SExpr, atoms: &mut Vec<Atom>, constraints: &mut Vec<Term>) -> Result<(), Diagnostic> {
        if e.head() == Some("and") && !self.scope.contains_key("and") {
            for c in &e.list().unwrap_or(&[])[1..] {
                self.body(c, atoms, constraints)?;
            }
            return Ok(());
        }
        if self.is_pred_app(e) {
            atoms.push(self.atom(e)?);
            return Ok(());
        }
        let (t, ty) = self.term(e)?;
        if ty.sort != Sort::Bool {
            return Err(Diagnostic::error(format!("sort mismatch: body conjunct has sort {}, expected Bool", ty.sort), e.loc()));
        }
        constraints.push(t);
        Ok(())
    }

    fn head(&self, e: &SExpr) -> Result<Head, Diagnostic> {
        if e.symbol() == Some("false") && !self.scope.contains_key("false") {
            return Ok(Head::False);
        }
        if self.is_pred_app(e) {
            return Ok(Head::Atom(self.atom(e)?));
        }
        if let Some(name) = e.head().or_else(|| e.symbol()) {
            if Op::from_symbol(name).is_none() && !self.scope.contains_key(name) && !matches!(name, "true" | "false") {
                return Err(Diagnostic::error(format!("undeclared predicate {name}"), e.loc()));
            }
        }
        Err(Diagnostic::error(
            format!("head must be a predicate atom or false, found {}", render_sexpr(e)),
            e.loc(),
        ))
    }
}

fn contains_exists(e: &SExpr) -> Option<Location> {
    match e {
        SExpr::Leaf(_) => None,
        SExpr::List(items, loc) => {
            if e.head() == Some("exists") {
                return Some(*loc);
            }
            items.iter().find_map(contains_exists)
        }
    }
}

fn build_clause(assertion: &SExpr, decls: &HashMap<String, PredicateDecl>) -> Result<Clause, Diagnostic> {
    let mut b = ClauseBuilder {
        decls,
        scope: HashMap::new(),
    };
    let mut vars = Vec::new();
    let mut body = assertion;
    while body.head() == Some("forall") {
        let Some([_, SExpr::List(binders, _), inner]) = body.list() else {
            return Err(Diagnostic::error("malformed forall", body.loc()));
        };
        if binders.is_empty() {
            return Err(Diagnostic::error("forall without variables", body.loc()));
        }
        for bind in binders {
            let Some([name, sort]) = bind.list() else {
                return Err(Diagnostic::error("malformed variable binding", bind.loc()));
            };
            let Some(n) = name.symbol() else {
                return Err(Diagnostic::error("variable name must be a symbol", name.loc()));
            };
            if decls.contains_key(n) {
                return Err(Diagnostic::error(format!("variable {n} shadows a predicate"), name.loc()));
            }
            if Op::from_symbol(n).is_some() || n == "true" || n == "false" {
                return Err(Diagnostic::error(format!("variable {n} shadows a theory symbol"), name.loc()));
            }
            let s = parse_sort(sort)?;
            if b.scope.insert(n.to_string(), s.clone()).is_some() {
                return Err(Diagnostic::error(format!("variable {n} bound twice"), name.loc()));
            }
            vars.push((n.to_string(), s));
        }
        body = inner;
    }
    if let Some(loc) = contains_exists(body) {
        return Err(Diagnostic::error("existential quantification is not supported", loc));
    }
    if body.head() == Some("not") {
        return Err(Diagnostic::error(
            "clause encoded with not; run normalizer first to obtain (=> body head)",
            body.loc(),
        ));
    }
    let mut atoms = Vec::new();
    let mut constraints = Vec::new();
    // (=> a (=> b h)) is read as (=> a b h).
    let mut head_expr = body;
    while let Some(items) = head_expr.list().filter(|_| head_expr.head() == Some("=>")) {
        if items.len() < 3 {
            return Err(Diagnostic::error("=> expects at least 2 arguments", head_expr.loc()));
        }
        for antecedent in &items[1..items.len() - 1] {
            b.body(antecedent, &mut atoms, &mut constraints)?;
        }
        head_expr = &items[items.len() - 1];
    }
    let head = b.head(head_expr)?;
    Ok(Clause::new(vars, atoms, Term::conjunction(constraints), head))
}

/// Result of parsing: the benchmark when no error occurred, plus every
/// diagnostic (warnings included).
#[derive(Debug)]
pub struct ParseOutcome {
    pub benchmark: Option<Benchmark>,
    pub diagnostics: Vec<Diagnostic>,
}

/// Parses a CHC script. Errors in one command do not stop the parser from
/// reporting errors in later commands.
pub fn parse_with_diagnostics(source: &str, origin: &str) -> ParseOutcome {
    let fail = |d: Diagnostic| ParseOutcome {
        benchmark: None,
        diagnostics: vec![d],
    };
    let tokens = match tokenize(source) {
        Ok(t) => t,
        Err(d) => return fail(d),
    };
    let commands = match read_sexprs(tokens) {
        Ok(c) => c,
        Err(d) => return fail(d),
    };

    let mut diags = Vec::new();
    let mut logic: Option<String> = None;
    let mut decls: Vec<PredicateDecl> = Vec::new();
    let mut decl_map: HashMap<String, PredicateDecl> = HashMap::new();
    let mut clauses = Vec::new();
    let mut locations = Vec::new();
    let mut seen_check_sat = false;

    for cmd in &commands {
        let loc = cmd.loc();
        let Some(items) = cmd.list() else { continue };
        let Some(name) = cmd.head() else {
            diags.push(Diagnostic::error("expected a command", loc));
            continue;
        };
        if seen_check_sat && matches!(name, "declare-fun" | "assert" | "set-logic") {
            diags.push(Diagnostic::error(format!("{name} after check-sat"), loc));
            continue;
        }
        match name {
            "set-logic" => match items {
                [_, l] if l.symbol().is_some() => {
                    let l = l.symbol().unwrap_or_default();
                    if logic.is_some() {
                        diags.push(Diagnostic::error("set-logic given twice", loc));
                    } else if l != "HORN" {
                        diags.push(Diagnostic::error(format!("unsupported logic {l}, expected HORN"), loc));
                    }
                    logic = Some(l.to_string());
                }
                _ => diags.push(Diagnostic::error("malformed set-logic", loc)),
            },
            "set-info" | "set-option" | "get-model" | "get-info" | "exit" => {}
            "check-sat" => seen_check_sat = true,
            "declare-fun" => {
                let [_, n, SExpr::List(args, _), result] = items else {
                    diags.push(Diagnostic::error("malformed declare-fun", loc));
                    continue;
                };
                let Some(n) = n.symbol() else {
                    diags.push(Diagnostic::error("predicate name must be a symbol", n.loc()));
                    continue;
                };
                if Op::from_symbol(n).is_some() || matches!(n, "true" | "false") {
                    diags.push(Diagnostic::error(format!("cannot redeclare theory symbol {n}"), loc));
                    continue;
                }
                let sorts: Result<Vec<Sort>, Diagnostic> = args.iter().map(parse_sort).collect();
                let sorts = match sorts {
                    Ok(s) => s,
                    Err(d) => {
                        diags.push(d);
                        continue;
                    }
                };
                match parse_sort(result) {
                    Ok(Sort::Bool) => {}
                    Ok(s) => {
                        diags.push(Diagnostic::error(
                            format!("sort mismatch: predicate {n} must have result sort Bool, not {s}"),
                            result.loc(),
                        ));
                        continue;
                    }
                    Err(d) => {
                        diags.push(d);
                        continue;
                    }
                }
                if decl_map.contains_key(n) {
                    diags.push(Diagnostic::error(format!("predicate {n} declared twice"), loc));
                    continue;
                }
                let d = PredicateDecl::new(n, sorts);
                decl_map.insert(n.to_string(), d.clone());
                decls.push(d);
            }
            "assert" => {
                let [_, body] = items else {
                    diags.push(Diagnostic::error("assert expects one term", loc));
                    continue;
                };
                let mut ex = Expander { nodes: 0 };
                let expanded = ex.expand(body, &HashMap::new(), 1).and_then(|e| {
                    if depth_of(&e) > MAX_DEPTH {
                        Err(Diagnostic::error(format!("term nesting deeper than {MAX_DEPTH}"), loc))
                    } else {
                        Ok(e)
                    }
                });
                match expanded.and_then(|e| build_clause(&e, &decl_map)) {
                    Ok(c) => {
                        clauses.push(c);
                        locations.push(loc);
                    }
                    Err(d) => diags.push(d),
                }
            }
            other => diags.push(Diagnostic::error(format!("unknown command {other}"), loc)),
        }
    }
    let eof = commands.last().map(SExpr::loc).unwrap_or(Location { line: 1, col: 1 });
    if !seen_check_sat {
        diags.push(Diagnostic::warning("missing (check-sat)", eof));
    }
    let ok = !diags.iter().any(Diagnostic::is_error);
    ParseOutcome {
        benchmark: ok.then(|| Benchmark {
            logic: logic.unwrap_or_else(|| "HORN".to_string()),
            decls,
            clauses,
            origin: origin.to_string(),
            checksum: None,
            clause_locations: locations,
        }),
        diagnostics: diags,
    }
}

/// Parses a CHC script, returning the error diagnostics on failure.
pub fn parse_benchmark(source: &str, origin: &str) -> Result<Benchmark, Vec<Diagnostic>> {
    let out = parse_with_diagnostics(source, origin);
    match out.benchmark {
        Some(b) => Ok(b),
        None => Err(out.diagnostics.into_iter().filter(Diagnostic::is_error).collect()),
    }
}

/// Like [`parse_benchmark`] for raw bytes; invalid UTF-8 is a diagnostic.
pub fn parse_benchmark_bytes(bytes: &[u8], origin: &str) -> Result<Benchmark, Vec<Diagnostic>> {
    match std::str::from_utf8(bytes) {
        Ok(s) => parse_benchmark(s, origin),
        Err(e) => {
            let valid = &bytes[..e.valid_up_to()];
            let text = String::from_utf8_lossy(valid);
            let line = text.matches('\n').count() as u32 + 1;
            let col = text.rsplit('\n').next().map_or(0, |l| l.chars().count()) as u32 + 1;
            Err(vec![Diagnostic::error("invalid UTF-8", Location { line, col })])
        }
    }
}

fn write_symbol(out: &mut String, s: &str) {
    let simple = !s.is_empty()
        && s.chars().all(is_symbol_char)
        && !s.starts_with(|c: char| c.is_ascii_digit());
    if simple {
        out.push_str(s);
    } else {
        let _ = write!(out, "|{s}|");
    }
}

fn write_term(out: &mut String, t: &Term) {
    match t {
        Term::Var(v) => write_symbol(out, v),
        Term::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Term::Int(n) if n.sign() == Sign::Minus => {
            let _ = write!(out, "(- {})", n.magnitude());
        }
        Term::Int(n) => {
            let _ = write!(out, "{n}");
        }
        Term::Dec(d) => {
            let _ = write!(out, "{d}");
        }
        Term::App(op, args) => {
            out.push('(');
            out.push_str(op.symbol());
            for a in args {
                out.push(' ');
                write_term(out, a);
            }
            out.push(')');
        }
    }
}

fn write_atom(out: &mut String, a: &Atom) {
    if a.args.is_empty() {
        write_symbol(out, &a.pred);
        return;
    }
    out.push('(');
    write_symbol(out, &a.pred);
    for t in &a.args {
        out.push(' ');
        write_term(out, t);
    }
    out.push(')');
}

fn write_clause(out: &mut String, c: &Clause) {
    let close = if c.vars.is_empty() {
        ""
    } else {
        out.push_str("(forall (");
        for (i, (v, s)) in c.vars.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            out.push('(');
            write_symbol(out, v);
            let _ = write!(out, " {s})");
        }
        out.push_str(") ");
        ")"
    };
    let mut parts: Vec<String> = Vec::new();
    for a in &c.body_atoms {
        let mut s = String::new();
        write_atom(&mut s, a);
        parts.push(s);
    }
    let conj = c.constraint.conjuncts();
    if !(conj.len() == 1 && conj[0].is_true()) {
        for t in conj {
            let mut s = String::new();
            write_term(&mut s, t);
            parts.push(s);
        }
    }
    let mut head = String::new();
    match &c.head {
        Head::False => head.push_str("false"),
        Head::Atom(a) => write_atom(&mut head, a),
    }
    match parts.len() {
        0 => out.push_str(&head),
        1 => {
            let _ = write!(out, "(=> {} {head})", parts[0]);
        }
        _ => {
            let _ = write!(out, "(=> (and {}) {head})", parts.join(" "));
        }
    }
    out.push_str(close);
}

/// Deterministic serialization with bound variables renamed to `v0, v1, ...`.
pub fn print_canonical(benchmark: &Benchmark) -> String {
    let b = benchmark.alpha_normalized();
    let mut out = String::new();
    out.push_str("(set-logic ");
    write_symbol(&mut out, &b.logic);
    out.push_str(")\n");
    for d in &b.decls {
        out.push_str("(declare-fun ");
        write_symbol(&mut out, &d.name);
        out.push_str(" (");
        let sorts: Vec<String> = d.arg_sorts.iter().map(Sort::to_string).collect();
        out.push_str(&sorts.join(" "));
        out.push_str(") Bool)\n");
    }
    for c in &b.clauses {
        out.push_str("(assert ");
        write_clause(&mut out, c);
        out.push_str(")\n");
    }
    out.push_str("(check-sat)\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(src: &str) -> Benchmark {
        parse_benchmark(src, "test").unwrap_or_else(|d| panic!("{d:?}"))
    }

    fn errors(src: &str) -> Vec<Diagnostic> {
        parse_benchmark(src, "test").expect_err("expected parse failure")
    }

    #[test]
    fn tokens_and_comments() {
        let toks = tokenize("(assert ; comment\n 12 3.50 |a b| :named \"s\"\"t\")").unwrap();
        let kinds: Vec<TokenKind> = toks.iter().map(|t| t.kind).collect();
        assert_eq!(
            kinds,
            vec![
                TokenKind::LParen,
                TokenKind::Symbol,
                TokenKind::Numeral,
                TokenKind::Decimal,
                TokenKind::Symbol,
                TokenKind::Keyword,
                TokenKind::String,
                TokenKind::RParen,
                TokenKind::Eof
            ]
        );
        assert_eq!(toks[2].loc, Location { line: 2, col: 2 });
        assert_eq!(toks[4].text, "a b");
        assert_eq!(toks[6].text, "s\"t");
    }

    #[test]
    fn lexical_errors_have_locations() {
        let d = tokenize("(a\n  #x0F)").unwrap_err();
        assert_eq!(d.location, Some(Location { line: 2, col: 3 }));
        assert!(tokenize("12abc").is_err());
        assert!(tokenize("1.").is_err());
        assert!(tokenize("\"open").is_err());
    }

    #[test]
    fn nullary_predicate_script() {
        let b = parse(
            "(set-logic HORN)\n(declare-fun Inv () Bool)\n(assert Inv)\n(assert (=> Inv false))\n(check-sat)\n",
        );
        assert_eq!(b.decls.len(), 1);
        assert_eq!(b.clauses.len(), 2);
        assert!(!b.clauses[0].is_query());
        assert!(b.clauses[1].is_query());
        assert_eq!(b.clauses[1].body_atoms, vec![Atom::nullary("Inv")]);
    }

    #[test]
    fn body_is_partitioned_into_atoms_and_constraint() {
        let b = parse(
            "(declare-fun P (Int) Bool)(declare-fun Q (Int) Bool)(declare-fun R (Int) Bool)
             (assert (forall ((x Int)) (=> (and (P x) (Q x) (> x 0)) (R x))))(check-sat)",
        );
        let c = &b.clauses[0];
        let x = || Term::var("x");
        assert_eq!(c.body_atoms, vec![Atom::new("P", vec![x()]), Atom::new("Q", vec![x()])]);
        assert_eq!(c.constraint, Term::app(Op::Gt, vec![x(), Term::int(0)]));
        assert_eq!(c.head, Head::Atom(Atom::new("R", vec![x()])));
    }

    #[test]
    fn unbound_variable_is_reported() {
        let d = errors(
            "(declare-fun P (Int) Bool)(declare-fun Q (Int) Bool)
             (assert (forall ((x Int)) (=> (P x) (Q y))))(check-sat)",
        );
        assert_eq!(d.len(), 1);
        assert!(d[0].message.contains("unbound variable y"), "{}", d[0]);
        assert_eq!(d[0].location, Some(Location { line: 2, col: 53 }));
    }

    #[test]
    fn error_kinds() {
        let cases = [
            ("(assert (P 1))(check-sat)", "undeclared predicate P"),
            ("(declare-fun P (Int) Bool)(assert (P true))(check-sat)", "sort mismatch"),
            ("(declare-fun P (Int) Int)(check-sat)", "result sort Bool"),
            ("(push 1)", "unknown command push"),
            ("(declare-fun P (Int) Bool)(assert (forall ((x Int)) (> x 0)))", "head must be"),
            ("(declare-fun P () Bool)(assert (not (and P (not false))))", "run normalizer first"),
            (
                "(declare-fun P (Int) Bool)(assert (forall ((x Int)) (=> (exists ((y Int)) (P y)) (P x))))",
                "existential",
            ),
            ("(declare-fun P (Int) Bool)(assert (forall ((x Int)) (=> (or (P x) true) (P x))))", "constraint position"),
            ("(assert (forall ((x Int)) (P x))", "unbalanced"),
            ("(declare-fun P (Real) Bool)(assert (forall ((x Int)) (P x)))", "sort mismatch"),
            ("(set-logic QF_LIA)", "unsupported logic"),
            ("(declare-fun P (Int) Bool)(assert (forall ((x Int)) (=> (> (f x) 0) (P x))))", "unknown function symbol f"),
        ];
        for (src, want) in cases {
            let d = errors(src);
            assert!(d.iter().any(|d| d.message.contains(want)), "{src}: {d:?}");
            assert!(d.iter().all(|d| d.location.is_some()));
        }
    }

    #[test]
    fn let_and_named_are_expanded() {
        let b = parse(
            "(declare-fun P (Int Int) Bool)
             (assert (forall ((x Int) (y Int))
                (let ((a (+ x 1)) (x y)) (! (=> (and (P a x) (> a 0)) (P x a)) :named c1))))
             (check-sat)",
        );
        let c = &b.clauses[0];
        let plus = Term::app(Op::Add, vec![Term::var("x"), Term::int(1)]);
        assert_eq!(c.body_atoms[0].args, vec![plus.clone(), Term::var("y")]);
        assert_eq!(c.head, Head::Atom(Atom::new("P", vec![Term::var("y"), plus])));
    }

    #[test]
    fn decimals_are_exact() {
        let b = parse("(declare-fun P (Real) Bool)(assert (P 0.10))(assert (=> (P 1) false))(check-sat)");
        let Term::Dec(d) = &b.clauses[0].head_atom().unwrap().args[0] else {
            panic!()
        };
        assert_eq!(d.to_string(), "0.1");
        assert_eq!(b.clauses[1].body_atoms[0].args[0], Term::int(1));
    }

    #[test]
    fn canonical_print_renames_variables() {
        let b = parse(
            "(declare-fun P (Int Int) Bool)
             (assert (forall ((a Int)(b Int)) (=> (and (P a b) (< a b)) (P b a))))
             (check-sat)",
        );
        let text = print_canonical(&b);
        assert_eq!(
            text,
            "(set-logic HORN)\n(declare-fun P (Int Int) Bool)\n\
             (assert (forall ((v0 Int) (v1 Int)) (=> (and (P v0 v1) (< v0 v1)) (P v1 v0))))\n(check-sat)\n"
        );
        let again = parse(&text);
        assert!(again.alpha_eq(&b));
        assert_eq!(print_canonical(&again), text);
    }

    #[test]
    fn formatting_and_comments_do_not_affect_canonical_form() {
        let a = parse("(declare-fun P (Int) Bool)\n(assert (forall ((x Int)) (=> (> x 0) (P x))))\n(check-sat)");
        let b = parse(
            "; header\n(declare-fun   P ( Int )  Bool);x\n\n(assert\n (forall ((y Int))\n\t(=> (> y 0) ; c\n (P y))))\n(check-sat)\n",
        );
        assert_eq!(print_canonical(&a), print_canonical(&b));
    }

    #[test]
    fn deep_nesting_is_rejected_not_fatal() {
        let src = "(".repeat(100_000);
        let d = errors(&src);
        assert!(d[0].message.contains("nesting"));
        let mut src = String::from("(declare-fun P (Int) Bool)(assert (forall ((x Int)) (=> (> ");
        src.push_str(&"(+ ".repeat(600));
        src.push('x');
        src.push_str(&")".repeat(600));
        src.push_str(" 0) (P x))))");
        assert!(errors(&src)[0].message.contains("deeper"));
    }

    #[test]
    fn let_blowup_is_bounded() {
        let mut src = String::from("(declare-fun P (Int) Bool)(assert (forall ((x Int)) ");
        let n = 40;
        for i in 0..n {
            let prev = if i == 0 { "x".to_string() } else { format!("a{}", i - 1) };
            src.push_str(&format!("(let ((a{i} (+ {prev} {prev}))) "));
        }
        src.push_str(&format!("(=> (> a{} 0) (P x))", n - 1));
        src.push_str(&")".repeat(n + 2));
        let d = errors(&src);
        assert!(d[0].message.contains("too large") || d[0].message.contains("deeper"), "{d:?}");
    }

    #[test]
    fn invalid_utf8_is_a_diagnostic() {
        let d = parse_benchmark_bytes(b"(assert\n  \xff)", "t").unwrap_err();
        assert_eq!(d[0].location, Some(Location { line: 2, col: 3 }));
    }

    #[test]
    fn missing_check_sat_is_only_a_warning() {
        let out = parse_with_diagnostics("(declare-fun P () Bool)(assert P)", "t");
        assert!(out.benchmark.is_some());
        assert_eq!(out.diagnostics.len(), 1);
        assert_eq!(out.diagnostics[0].severity, Severity::Warning);
    }

    #[test]
    fn quoted_symbols_round_trip() {
        let b = parse("(declare-fun |inv@1 x| (Int) Bool)(assert (|inv@1 x| 0))(check-sat)");
        assert_eq!(b.decls[0].name, "inv@1 x");
        let text = print_canonical(&b);
        assert!(text.contains("(|inv@1 x| 0)"));
        assert_eq!(parse(&text), b);
    }
}
