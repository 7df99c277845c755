//! Line-oriented scenario files. See the README for the grammar.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use hhsmash::algebra::{CqExtension, EquivariantBimodule, FinAlgebra, FinGroup, GroupAction};
use hhsmash::constructions::{build_dual_smash, build_smash, smash_as_module, DualSmashAlgebra};
use hhsmash::exactla::sparse::{normalize_svec, SVec};
use hhsmash::exactla::{Field, SparseMat};
use hhsmash::{Error, Result};

/// 1-based line and column.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl std::fmt::Display for Pos {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

fn err(p: Pos, msg: impl Into<String>) -> Error {
    Error::Parse { line: p.line, col: p.col, msg: msg.into() }
}

/// A word of the input with its position.
#[derive(Clone, Debug)]
pub struct Tok {
    pub text: String,
    pub pos: Pos,
}

fn tokenize(line: &str, lno: usize) -> Vec<Tok> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut start = 0;
    for (i, c) in line.chars().enumerate() {
        if c.is_whitespace() {
            if !cur.is_empty() {
                out.push(Tok { text: std::mem::take(&mut cur), pos: Pos { line: lno, col: start + 1 } });
            }
        } else {
            if cur.is_empty() {
                start = i;
            }
            cur.push(c);
        }
    }
    if !cur.is_empty() {
        out.push(Tok { text: cur, pos: Pos { line: lno, col: start + 1 } });
    }
    out
}

/// A rational coefficient times a word in basis labels. An empty word is
/// only produced for the literal `0`.
#[derive(Clone, Debug, PartialEq)]
pub struct Term {
    pub num: BigInt,
    pub den: BigInt,
    pub word: Vec<(String, Pos)>,
}

pub type Expr = Vec<Term>;

/// Parses `[±] term (± term)*` where `term = [c[/d] [*]] f (* f)*`,
/// `f = label[^k]`, or the literal `0`.
fn parse_expr(s: &str, at: Pos) -> Result<Expr> {
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    let pos = |i: usize| Pos { line: at.line, col: at.col + i };
    let skip = |i: &mut usize| {
        while *i < chars.len() && chars[*i].is_whitespace() {
            *i += 1;
        }
    };
    let number = |i: &mut usize| -> Option<BigInt> {
        let st = *i;
        while *i < chars.len() && chars[*i].is_ascii_digit() {
            *i += 1;
        }
        (st < *i).then(|| chars[st..*i].iter().collect::<String>().parse().unwrap())
    };
    let ident = |i: &mut usize| -> Option<String> {
        let st = *i;
        if *i < chars.len() && (chars[*i].is_alphabetic() || chars[*i] == '_') {
            *i += 1;
            while *i < chars.len() && (chars[*i].is_alphanumeric() || chars[*i] == '_' || chars[*i] == '\'') {
                *i += 1;
            }
        }
        (st < *i).then(|| chars[st..*i].iter().collect())
    };
    let mut out = Vec::new();
    skip(&mut i);
    if i == chars.len() {
        return Err(err(at, "empty expression"));
    }
    let mut first = true;
    loop {
        skip(&mut i);
        let mut negative = false;
        if i < chars.len() && (chars[i] == '+' || chars[i] == '-') {
            negative = chars[i] == '-';
            i += 1;
            skip(&mut i);
        } else if !first {
            return Err(err(pos(i), "expected `+` or `-`"));
        }
        first = false;
        let tstart = i;
        let mut num = BigInt::from(1);
        let mut den = BigInt::from(1);
        let mut had_coef = false;
        if let Some(n) = number(&mut i) {
            had_coef = true;
            num = n;
            skip(&mut i);
            if i < chars.len() && chars[i] == '/' {
                i += 1;
                skip(&mut i);
                den = number(&mut i).ok_or_else(|| err(pos(i), "expected a denominator"))?;
                if den == BigInt::from(0) {
                    return Err(err(pos(tstart), "zero denominator"));
                }
            }
            skip(&mut i);
            if i < chars.len() && chars[i] == '*' {
                i += 1;
                skip(&mut i);
            }
        }
        let mut word = Vec::new();
        loop {
            let p = pos(i);
            let Some(name) = ident(&mut i) else { break };
            let mut k = 1u32;
            skip(&mut i);
            if i < chars.len() && chars[i] == '^' {
                i += 1;
                skip(&mut i);
                let e = number(&mut i).ok_or_else(|| err(pos(i), "expected an exponent"))?;
                k = u32::try_from(e).ok().filter(|&k| k >= 1).ok_or_else(|| err(p, "exponent must be a positive integer"))?;
            }
            for _ in 0..k {
                word.push((name.clone(), p));
            }
            skip(&mut i);
            if i < chars.len() && chars[i] == '*' {
                i += 1;
                skip(&mut i);
            } else {
                break;
            }
        }
        if word.is_empty() {
            if !(had_coef && num == BigInt::from(0)) {
                return Err(err(pos(tstart), "expected a basis label"));
            }
        } else if negative {
            num = -num;
        }
        if !word.is_empty() {
            out.push(Term { num, den, word });
        }
        skip(&mut i);
        if i == chars.len() {
            break;
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub enum GroupSpec {
    /// Direct product of cyclic and dihedral factors.
    Factors(Vec<(String, usize)>),
    Table {
        elements: Vec<(String, Pos)>,
        rows: Vec<(String, Vec<Tok>, Pos)>,
    },
}

#[derive(Clone, Debug)]
pub enum ModuleSpec {
    Regular,
    Smash,
    Bimodule {
        basis: Vec<(String, Pos)>,
        /// `(a, m, expr)` for `a · m` and `m · a`.
        left: Vec<(Tok, Tok, Expr)>,
        right: Vec<(Tok, Tok, Expr)>,
        /// `(g, m, expr)` for `ᵍm`.
        action: Vec<(Tok, Tok, Expr)>,
    },
}

#[derive(Clone, Debug, Default)]
pub struct WindowSpec {
    pub up_to: Option<usize>,
    pub i_max: Option<usize>,
    pub j_max: Option<usize>,
    pub page: Option<usize>,
}

/// A scenario before any field arithmetic.
#[derive(Clone, Debug)]
pub struct RawScenario {
    pub name: Option<String>,
    pub characteristic: u64,
    pub basis: Vec<(String, Pos)>,
    pub unit: Option<(Expr, Pos)>,
    pub products: Vec<(Tok, Tok, Expr)>,
    pub grading: Option<Vec<(Tok, Tok)>>,
    pub group: Option<(GroupSpec, Pos)>,
    pub action: Option<Vec<(Tok, Tok, Expr)>>,
    pub module: ModuleSpec,
    pub extension: Option<(Vec<Tok>, Tok)>,
    pub window: WindowSpec,
    pub tr: Option<(usize, Pos)>,
}

const BLOCKS: [&str; 10] = ["name", "field", "algebra", "grading", "group", "action", "module", "extension", "window", "tr"];

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("")
}

fn parse_usize(t: &Tok) -> Result<usize> {
    t.text.parse().map_err(|_| err(t.pos, format!("expected a non-negative integer, found `{}`", t.text)))
}

/// Splits `lhs = rhs`; returns the lhs tokens and the rhs text with its
/// position.
fn split_eq(line: &str, lno: usize) -> Option<(Vec<Tok>, String, Pos)> {
    let idx = line.find('=')?;
    let lhs = tokenize(&line[..idx], lno);
    let col = line[..idx + 1].chars().count() + 1;
    Some((lhs, line[idx + 1..].to_string(), Pos { line: lno, col }))
}

fn unique_labels(labels: &[(String, Pos)], what: &str) -> Result<()> {
    let mut seen: BTreeMap<&str, Pos> = BTreeMap::new();
    for (l, p) in labels {
        if let Some(first) = seen.insert(l, *p) {
            return Err(err(*p, format!("duplicate {what} `{l}` at {p} (first defined at {first})")));
        }
        if !l.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_')
            || !l.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
        {
            return Err(err(*p, format!("invalid {what} `{l}`: labels are identifiers")));
        }
    }
    Ok(())
}

/// Parses scenario text.
pub fn parse_scenario(text: &str) -> Result<RawScenario> {
    let lines: Vec<&str> = text.lines().collect();
    let mut seen: BTreeMap<&str, Pos> = BTreeMap::new();
    let mut name = None;
    let mut characteristic = None;
    let mut basis: Option<Vec<(String, Pos)>> = None;
    let mut unit = None;
    let mut products = Vec::new();
    let mut grading = None;
    let mut group = None;
    let mut action = None;
    let mut module = None;
    let mut extension = None;
    let mut window = WindowSpec::default();
    let mut tr = None;
    let mut algebra_pos = None;
    let mut i = 0;
    // Body lines up to the matching `end`.
    let body = |i: &mut usize, head: Pos| -> Result<Vec<(usize, &str)>> {
        let mut out = Vec::new();
        loop {
            *i += 1;
            if *i >= lines.len() {
                return Err(err(head, "block is not closed by `end`"));
            }
            let l = strip_comment(lines[*i]);
            if l.trim() == "end" {
                return Ok(out);
            }
            if !l.trim().is_empty() {
                out.push((*i + 1, l));
            }
        }
    };
    while i < lines.len() {
        let lno = i + 1;
        let toks = tokenize(strip_comment(lines[i]), lno);
        if toks.is_empty() {
            i += 1;
            continue;
        }
        let head = &toks[0];
        let kw = head.text.as_str();
        if !BLOCKS.contains(&kw) {
            return Err(err(head.pos, format!("unknown block `{kw}`")));
        }
        let key = BLOCKS.iter().find(|b| **b == kw).unwrap();
        if let Some(first) = seen.insert(key, head.pos) {
            return Err(err(head.pos, format!("duplicate `{kw}` block at {} (first at {first})", head.pos)));
        }
        let args = &toks[1..];
        let want_args = |n: usize| -> Result<()> {
            if args.len() != n {
                let p = args.get(n).map_or(head.pos, |t| t.pos);
                return Err(err(p, format!("`{kw}` takes {n} argument(s)")));
            }
            Ok(())
        };
        match kw {
            "name" => {
                want_args(1)?;
                name = Some(args[0].text.clone());
            }
            "field" => {
                want_args(1)?;
                let t = &args[0];
                let p = if t.text == "Q" {
                    0
                } else {
                    t.text
                        .strip_prefix('F')
                        .and_then(|s| s.parse::<u64>().ok())
                        .ok_or_else(|| err(t.pos, format!("expected `Q` or `F<p>`, found `{}`", t.text)))?
                };
                hhsmash::exactla::FieldSpec::new(p).map_err(|e| err(t.pos, e.to_string()))?;
                characteristic = Some(p);
            }
            "algebra" => {
                want_args(0)?;
                algebra_pos = Some(head.pos);
                for (ln, l) in body(&mut i, head.pos)? {
                    let t = tokenize(l, ln);
                    match t[0].text.as_str() {
                        "basis" => {
                            if let Some(b) = &basis {
                                let first: &Vec<(String, Pos)> = b;
                                return Err(err(
                                    t[0].pos,
                                    format!("duplicate `basis` line (first at {})", first.first().map_or(t[0].pos, |x| x.1)),
                                ));
                            }
                            let labels: Vec<(String, Pos)> = t[1..].iter().map(|x| (x.text.clone(), x.pos)).collect();
                            if labels.is_empty() {
                                return Err(err(t[0].pos, "empty basis"));
                            }
                            unique_labels(&labels, "basis label")?;
                            basis = Some(labels);
                        }
                        "unit" => {
                            if unit.is_some() {
                                return Err(err(t[0].pos, "duplicate `unit` line"));
                            }
                            let off = l.find("unit").unwrap() + 4;
                            let col = l[..off].chars().count() + 1;
                            let p = Pos { line: ln, col };
                            unit = Some((parse_expr(&l[off..], p)?, t[0].pos));
                        }
                        _ => {
                            let (lhs, rhs, p) = split_eq(l, ln).ok_or_else(|| err(t[0].pos, "expected `a*b = expression`"))?;
                            let lt: Vec<&str> = lhs.iter().map(|x| x.text.as_str()).collect();
                            let joined = lt.join("");
                            let parts: Vec<&str> = joined.split('*').collect();
                            let is_ident = |s: &str| {
                                s.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_')
                                    && s.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
                            };
                            if parts.len() != 2 || !parts.iter().all(|s| is_ident(s)) {
                                return Err(err(
                                    lhs.first().map_or(p, |x| x.pos),
                                    "the left side must be a product `a*b` of two basis labels",
                                ));
                            }
                            let lp = lhs[0].pos;
                            let a = Tok { text: parts[0].into(), pos: lp };
                            let b = Tok { text: parts[1].into(), pos: Pos { line: ln, col: lp.col + parts[0].chars().count() + 1 } };
                            products.push((a, b, parse_expr(&rhs, p)?));
                        }
                    }
                }
            }
            "grading" => {
                want_args(0)?;
                let mut out = Vec::new();
                for (ln, l) in body(&mut i, head.pos)? {
                    let t = tokenize(l, ln);
                    if t.len() != 2 {
                        return Err(err(t[0].pos, "expected `<basis label> <group element>`"));
                    }
                    out.push((t[0].clone(), t[1].clone()));
                }
                grading = Some(out);
            }
            "group" => {
                if args.is_empty() {
                    return Err(err(head.pos, "expected `cyclic n`, `dihedral n`, products joined by `x`, or `table`"));
                }
                if args[0].text == "table" {
                    want_args(1)?;
                    let mut elements = None;
                    let mut rows = Vec::new();
                    for (ln, l) in body(&mut i, head.pos)? {
                        let t = tokenize(l, ln);
                        if t[0].text == "elements" {
                            let e: Vec<(String, Pos)> = t[1..].iter().map(|x| (x.text.clone(), x.pos)).collect();
                            let mut s: BTreeMap<&str, Pos> = BTreeMap::new();
                            for (l, p) in &e {
                                if let Some(f) = s.insert(l, *p) {
                                    return Err(err(*p, format!("duplicate group element `{l}` at {p} (first at {f})")));
                                }
                            }
                            elements = Some(e);
                        } else {
                            let lbl = t[0].text.strip_suffix(':').ok_or_else(|| err(t[0].pos, "expected `<element>: <row>`"))?;
                            rows.push((lbl.to_string(), t[1..].to_vec(), t[0].pos));
                        }
                    }
                    let elements = elements.ok_or_else(|| err(head.pos, "group table needs an `elements` line"))?;
                    group = Some((GroupSpec::Table { elements, rows }, head.pos));
                } else {
                    let mut factors = Vec::new();
                    let mut k = 0;
                    while k < args.len() {
                        let kind = &args[k];
                        if !["cyclic", "dihedral"].contains(&kind.text.as_str()) {
                            return Err(err(kind.pos, format!("unknown group `{}`", kind.text)));
                        }
                        let n = args.get(k + 1).ok_or_else(|| err(kind.pos, "missing order"))?;
                        factors.push((kind.text.clone(), parse_usize(n)?));
                        k += 2;
                        if k < args.len() {
                            if args[k].text != "x" {
                                return Err(err(args[k].pos, "factors are joined by `x`"));
                            }
                            k += 1;
                        }
                    }
                    group = Some((GroupSpec::Factors(factors), head.pos));
                }
            }
            "action" => {
                want_args(0)?;
                action = Some(parse_assignments(&body(&mut i, head.pos)?, "<group element> <basis label> = expression")?);
            }
            "module" => {
                want_args(1)?;
                module = Some(match args[0].text.as_str() {
                    "regular" => ModuleSpec::Regular,
                    "smash" => ModuleSpec::Smash,
                    "bimodule" => {
                        let mut mbasis = None;
                        let (mut left, mut right, mut act) = (Vec::new(), Vec::new(), Vec::new());
                        for (ln, l) in body(&mut i, head.pos)? {
                            let t = tokenize(l, ln);
                            if t[0].text == "basis" {
                                let labels: Vec<(String, Pos)> = t[1..].iter().map(|x| (x.text.clone(), x.pos)).collect();
                                if labels.is_empty() {
                                    return Err(err(t[0].pos, "empty module basis"));
                                }
                                unique_labels(&labels, "module label")?;
                                mbasis = Some(labels);
                                continue;
                            }
                            let (lhs, rhs, p) = split_eq(l, ln).ok_or_else(|| err(t[0].pos, "expected an assignment"))?;
                            let e = parse_expr(&rhs, p)?;
                            match lhs.as_slice() {
                                [a, dot, m] if dot.text == "." => {
                                    // Which side is the module label is decided at build time.
                                    left.push((a.clone(), m.clone(), e));
                                }
                                [g, m] => act.push((g.clone(), m.clone(), e)),
                                _ => return Err(err(lhs.first().map_or(p, |x| x.pos), "expected `a . m`, `m . a` or `g m`")),
                            }
                        }
                        let basis = mbasis.ok_or_else(|| err(head.pos, "bimodule needs a `basis` line"))?;
                        // Split the dotted lines into left and right actions.
                        let is_m = |s: &str| basis.iter().any(|(l, _)| l == s);
                        let mut l2 = Vec::new();
                        for (a, m, e) in left {
                            if is_m(&m.text) && !is_m(&a.text) {
                                l2.push((a, m, e));
                            } else if is_m(&a.text) && !is_m(&m.text) {
                                right.push((m, a, e));
                            } else {
                                return Err(err(a.pos, "exactly one side of `.` must be a module label"));
                            }
                        }
                        ModuleSpec::Bimodule { basis, left: l2, right, action: act }
                    }
                    other => return Err(err(args[0].pos, format!("unknown module kind `{other}`"))),
                });
            }
            "extension" => {
                want_args(0)?;
                let (mut h, mut rho) = (None, None);
                for (ln, l) in body(&mut i, head.pos)? {
                    let t = tokenize(l, ln);
                    match t[0].text.as_str() {
                        "h" => h = Some(t[1..].to_vec()),
                        "rho" if t.len() == 2 => rho = Some(t[1].clone()),
                        _ => return Err(err(t[0].pos, "expected `h <elements>` or `rho <element>`")),
                    }
                }
                let h = h.ok_or_else(|| err(head.pos, "extension needs an `h` line"))?;
                let rho = rho.ok_or_else(|| err(head.pos, "extension needs a `rho` line"))?;
                extension = Some((h, rho));
            }
            "window" => {
                want_args(0)?;
                for (ln, l) in body(&mut i, head.pos)? {
                    let t = tokenize(l, ln);
                    if t.len() != 2 {
                        return Err(err(t[0].pos, "expected `<key> <value>`"));
                    }
                    let v = Some(parse_usize(&t[1])?);
                    match t[0].text.as_str() {
                        "up_to" => window.up_to = v,
                        "i_max" => window.i_max = v,
                        "j_max" => window.j_max = v,
                        "page" => window.page = v,
                        other => return Err(err(t[0].pos, format!("unknown window key `{other}`"))),
                    }
                }
            }
            "tr" => {
                want_args(1)?;
                tr = Some((parse_usize(&args[0])?, args[0].pos));
            }
            _ => unreachable!(),
        }
        i += 1;
    }
    let top = Pos { line: 1, col: 1 };
    let characteristic = characteristic.ok_or_else(|| err(top, "missing `field` line"))?;
    let basis = basis.ok_or_else(|| err(algebra_pos.unwrap_or(top), "missing algebra basis"))?;
    if grading.is_some() && action.is_some() {
        let p = seen["action"];
        return Err(err(p, "a graded scenario carries the natural action of its covering; drop the `action` block"));
    }
    Ok(RawScenario {
        name,
        characteristic,
        basis,
        unit,
        products,
        grading,
        group,
        action,
        module: module.unwrap_or(ModuleSpec::Regular),
        extension,
        window,
        tr,
    })
}

fn parse_assignments(lines: &[(usize, &str)], shape: &str) -> Result<Vec<(Tok, Tok, Expr)>> {
    let mut out = Vec::new();
    for &(ln, l) in lines {
        let (lhs, rhs, p) = split_eq(l, ln).ok_or_else(|| err(Pos { line: ln, col: 1 }, format!("expected `{shape}`")))?;
        if lhs.len() != 2 {
            return Err(err(lhs.first().map_or(p, |t| t.pos), format!("expected `{shape}`")));
        }
        out.push((lhs[0].clone(), lhs[1].clone(), parse_expr(&rhs, p)?));
    }
    Ok(out)
}

/// A scenario compiled over a concrete field.
#[derive(Clone, Debug)]
pub struct Scenario<F: Field> {
    pub name: String,
    pub field: F,
    /// The algebra as written; equals `algebra` unless a grading is given.
    pub base: FinAlgebra<F>,
    pub algebra: FinAlgebra<F>,
    pub group: FinGroup,
    pub action: GroupAction<F>,
    pub module: EquivariantBimodule<F>,
    /// `M = AG` with the conjugation action.
    pub module_is_smash: bool,
    pub ext: Option<CqExtension>,
    pub covering: Option<DualSmashAlgebra<F>>,
    pub window: WindowSpec,
    pub tr: Option<usize>,
}

fn label_index(labels: &[(String, Pos)], t: &Tok, what: &str) -> Result<usize> {
    labels.iter().position(|(l, _)| *l == t.text).ok_or_else(|| err(t.pos, format!("unknown {what} `{}`", t.text)))
}

fn group_index(g: &FinGroup, t: &Tok) -> Result<usize> {
    g.index_of(&t.text).ok_or_else(|| err(t.pos, format!("unknown group element `{}`; elements are {}", t.text, g.labels.join(" "))))
}

fn coefficient<F: Field>(f: &F, t: &Term) -> Result<F::E> {
    f.from_ratio(&t.num, &t.den)
        .map_err(|_| err(t.word.first().map_or(Pos { line: 0, col: 0 }, |w| w.1), "denominator vanishes in the field"))
}

/// A linear combination of single labels.
fn linear<F: Field>(f: &F, labels: &[(String, Pos)], e: &Expr, what: &str) -> Result<SVec<F::E>> {
    let mut v = Vec::new();
    for t in e {
        if t.word.len() != 1 {
            return Err(err(t.word[1].1, format!("expected a linear combination of {what}s")));
        }
        let (w, p) = &t.word[0];
        let k = label_index(labels, &Tok { text: w.clone(), pos: *p }, what)?;
        v.push((k, coefficient(f, t)?));
    }
    Ok(normalize_svec(f, v))
}

/// Evaluates product definitions whose right sides may contain words.
struct ProductTable<'a, F: Field> {
    f: &'a F,
    labels: &'a [(String, Pos)],
    defs: BTreeMap<(usize, usize), (&'a Expr, Pos)>,
    done: BTreeMap<(usize, usize), SVec<F::E>>,
    active: Vec<(usize, usize)>,
}

impl<F: Field> ProductTable<'_, F> {
    fn product(&mut self, i: usize, j: usize) -> Result<SVec<F::E>> {
        if let Some(v) = self.done.get(&(i, j)) {
            return Ok(v.clone());
        }
        let Some(&(e, p)) = self.defs.get(&(i, j)) else { return Ok(Vec::new()) };
        if self.active.contains(&(i, j)) {
            return Err(err(p, format!("product `{}*{}` is defined in terms of itself", self.labels[i].0, self.labels[j].0)));
        }
        self.active.push((i, j));
        let v = self.expr(e)?;
        self.active.pop();
        self.done.insert((i, j), v.clone());
        Ok(v)
    }

    fn expr(&mut self, e: &Expr) -> Result<SVec<F::E>> {
        let f = self.f;
        let mut acc = Vec::new();
        for t in e {
            let c = coefficient(f, t)?;
            let idx = t
                .word
                .iter()
                .map(|(w, p)| label_index(self.labels, &Tok { text: w.clone(), pos: *p }, "basis label"))
                .collect::<Result<Vec<_>>>()?;
            let mut v: SVec<F::E> = vec![(idx[0], f.one())];
            for &j in &idx[1..] {
                let mut next = Vec::new();
                for (k, x) in &v {
                    for (r, y) in self.product(*k, j)? {
                        next.push((r, f.mul(x, &y)));
                    }
                }
                v = normalize_svec(f, next);
            }
            acc.extend(v.into_iter().map(|(k, x)| (k, f.mul(&c, &x))));
        }
        Ok(normalize_svec(f, acc))
    }
}

fn build_group(spec: &GroupSpec, at: Pos) -> Result<FinGroup> {
    let wrap = |e: Error| err(at, e.to_string());
    match spec {
        GroupSpec::Factors(fs) => {
            let mut g: Option<FinGroup> = None;
            for (kind, n) in fs {
                let h = if kind == "cyclic" { FinGroup::cyclic(*n) } else { FinGroup::dihedral(*n) }.map_err(wrap)?;
                g = Some(match g {
                    None => h,
                    Some(g) => g.product(&h).map_err(wrap)?,
                });
            }
            Ok(g.unwrap())
        }
        GroupSpec::Table { elements, rows } => {
            let n = elements.len();
            let mut table = vec![None; n];
            for (lbl, row, p) in rows {
                let i = label_index(elements, &Tok { text: lbl.clone(), pos: *p }, "group element")?;
                if table[i].is_some() {
                    return Err(err(*p, format!("duplicate row for `{lbl}`")));
                }
                if row.len() != n {
                    return Err(err(*p, format!("row `{lbl}` must list {n} products")));
                }
                table[i] = Some(row.iter().map(|t| label_index(elements, t, "group element")).collect::<Result<Vec<_>>>()?);
            }
            let table: Vec<Vec<usize>> = table
                .into_iter()
                .enumerate()
                .map(|(i, r)| r.ok_or_else(|| err(at, format!("missing row for `{}`", elements[i].0))))
                .collect::<Result<_>>()?;
            FinGroup::from_table(elements.iter().map(|e| e.0.clone()).collect(), table).map_err(wrap)
        }
    }
}

/// For a cyclic group of order `n = p^a·s`: `H` of order `s`, `ρ = r`.
fn default_extension(g: &FinGroup, p: u64) -> Option<CqExtension> {
    if p == 0 || !(g.order() as u64).is_multiple_of(p) {
        return CqExtension::coprime(g, p).ok();
    }
    let r = g.index_of("r")?;
    if g.element_order(r) != g.order() {
        return None;
    }
    let mut q = 1;
    while g.order().is_multiple_of(q * p as usize) {
        q *= p as usize;
    }
    let h: Vec<usize> = g.generated(&[g.pow(r, q)]);
    CqExtension::new(g, &h, r, p).ok()
}

impl RawScenario {
    pub fn build<F: Field>(&self, f: &F) -> Result<Scenario<F>> {
        let n = self.basis.len();
        let defs_vec: Vec<((usize, usize), (&Expr, Pos))> = self
            .products
            .iter()
            .map(|(a, b, e)| Ok(((label_index(&self.basis, a, "basis label")?, label_index(&self.basis, b, "basis label")?), (e, a.pos))))
            .collect::<Result<_>>()?;
        let mut defs = BTreeMap::new();
        for (k, v) in defs_vec {
            if let Some(first) = defs.insert(k, v) {
                return Err(err(
                    v.1,
                    format!("duplicate product `{}*{}` at {} (first at {})", self.basis[k.0].0, self.basis[k.1].0, v.1, first.1),
                ));
            }
        }
        let mut pt = ProductTable { f, labels: &self.basis, defs, done: BTreeMap::new(), active: Vec::new() };
        let mut prods = vec![vec![Vec::new(); n]; n];
        for (i, row) in prods.iter_mut().enumerate() {
            for (j, c) in row.iter_mut().enumerate() {
                *c = pt.product(i, j)?;
            }
        }
        let (uexpr, upos) = self.unit.as_ref().ok_or_else(|| err(self.basis[0].1, "algebra needs a `unit` line"))?;
        let unit = linear(f, &self.basis, uexpr, "basis label")?;
        let labels: Vec<String> = self.basis.iter().map(|b| b.0.clone()).collect();
        let base = FinAlgebra::new(f, labels, prods, unit).map_err(|e| err(*upos, e.to_string()))?;
        let rep = base.validate();
        if !rep.passed() {
            return Err(Error::Validation(format!("algebra: {}", rep.failures.join("; "))));
        }
        let (group, gpos) = match &self.group {
            Some((spec, p)) => (build_group(spec, *p)?, *p),
            None => (FinGroup::trivial(), Pos { line: 1, col: 1 }),
        };
        let mut covering = None;
        let (algebra, action) = if let Some(gr) = &self.grading {
            let mut deg = vec![group.identity; n];
            let mut at: BTreeMap<usize, Pos> = BTreeMap::new();
            for (l, g) in gr {
                let k = label_index(&self.basis, l, "basis label")?;
                if let Some(first) = at.insert(k, l.pos) {
                    return Err(err(l.pos, format!("duplicate degree for `{}` at {} (first at {first})", l.text, l.pos)));
                }
                deg[k] = group_index(&group, g)?;
            }
            let graded = base.clone().with_grading(&group, deg)?;
            let ds = build_dual_smash(&graded, &group)?;
            let out = (ds.algebra.clone(), ds.action.clone());
            covering = Some(ds);
            out
        } else {
            let mut imgs: BTreeMap<usize, (Vec<SVec<F::E>>, BTreeMap<usize, Pos>)> = BTreeMap::new();
            for (g, b, e) in self.action.iter().flatten() {
                let gi = group_index(&group, g)?;
                let bi = label_index(&self.basis, b, "basis label")?;
                let entry = imgs.entry(gi).or_insert_with(|| ((0..n).map(|k| vec![(k, f.one())]).collect(), BTreeMap::new()));
                if let Some(first) = entry.1.insert(bi, b.pos) {
                    return Err(err(g.pos, format!("duplicate image of `{}` under `{}` (first at {first})", b.text, g.text)));
                }
                entry.0[bi] = linear(f, &self.basis, e, "basis label")?;
            }
            let gens: Vec<(usize, SparseMat<F::E>)> =
                imgs.into_iter().map(|(g, (cols, _))| (g, SparseMat::from_columns(n, cols))).collect();
            let action = if gens.is_empty() {
                GroupAction::trivial(f, &group, n)
            } else {
                let mut gens = gens;
                // Elements without images act trivially only if they are not needed.
                let generated = group.generated(&gens.iter().map(|g| g.0).collect::<Vec<_>>());
                if generated.len() != group.order() {
                    for x in group.generators() {
                        if !generated.contains(&x) {
                            gens.push((x, SparseMat::identity(f, n)));
                        }
                    }
                }
                GroupAction::from_generators(f, &group, n, &gens).map_err(|e| err(gpos, e.to_string()))?
            };
            let rep = action.validate_on_algebra(f, &group, &base);
            if !rep.passed() {
                return Err(Error::Validation(format!("action: {}", rep.failures.join("; "))));
            }
            (base.clone(), action)
        };
        let (module, module_is_smash) = match &self.module {
            ModuleSpec::Regular => (EquivariantBimodule::regular(&algebra, action.clone())?, false),
            ModuleSpec::Smash => (smash_as_module(&build_smash(&algebra, &group, &action)?)?, true),
            ModuleSpec::Bimodule { basis, left, right, action: gact } => {
                (self.build_bimodule(f, &algebra, &group, &action, basis, left, right, gact)?, false)
            }
        };
        let ext = match &self.extension {
            Some((h, rho)) => {
                let h = h.iter().map(|t| group_index(&group, t)).collect::<Result<Vec<_>>>()?;
                let r = group_index(&group, rho)?;
                Some(CqExtension::new(&group, &h, r, f.characteristic()).map_err(|e| err(rho.pos, e.to_string()))?)
            }
            None => default_extension(&group, f.characteristic()),
        };
        if let Some(ext) = &ext {
            let rep = ext.validate_lift_independence(f, &group, &module.action);
            if !rep.passed() {
                return Err(Error::Validation(format!("extension: {}", rep.failures.join("; "))));
            }
        }
        Ok(Scenario {
            name: self.name.clone().unwrap_or_else(|| "scenario".into()),
            field: f.clone(),
            base,
            algebra,
            group,
            action,
            module,
            module_is_smash,
            ext,
            covering,
            window: self.window.clone(),
            tr: self.tr.map(|t| t.0),
        })
    }

    #[allow(clippy::too_many_arguments)]
    fn build_bimodule<F: Field>(
        &self,
        f: &F,
        algebra: &FinAlgebra<F>,
        group: &FinGroup,
        action: &GroupAction<F>,
        basis: &[(String, Pos)],
        left: &[(Tok, Tok, Expr)],
        right: &[(Tok, Tok, Expr)],
        gact: &[(Tok, Tok, Expr)],
    ) -> Result<EquivariantBimodule<F>> {
        let (da, dm) = (algebra.dim(), basis.len());
        let alabels: Vec<(String, Pos)> = algebra.labels.iter().map(|l| (l.clone(), Pos { line: 0, col: 0 })).collect();
        let unit_index = algebra.unit_index();
        let ident = |a: usize, x: usize| if Some(a) == unit_index { vec![(x, f.one())] } else { Vec::new() };
        let mut l: Vec<Vec<SVec<F::E>>> = (0..da).map(|a| (0..dm).map(|x| ident(a, x)).collect()).collect();
        let mut r: Vec<Vec<SVec<F::E>>> = (0..dm).map(|x| (0..da).map(|a| ident(a, x)).collect()).collect();
        for (a, m, e) in left {
            let (ai, mi) = (label_index(&alabels, a, "algebra label")?, label_index(basis, m, "module label")?);
            l[ai][mi] = linear(f, basis, e, "module label")?;
        }
        for (a, m, e) in right {
            let (ai, mi) = (label_index(&alabels, a, "algebra label")?, label_index(basis, m, "module label")?);
            r[mi][ai] = linear(f, basis, e, "module label")?;
        }
        let mut imgs: BTreeMap<usize, Vec<SVec<F::E>>> = BTreeMap::new();
        for (g, m, e) in gact {
            let gi = group_index(group, g)?;
            let mi = label_index(basis, m, "module label")?;
            imgs.entry(gi).or_insert_with(|| (0..dm).map(|k| vec![(k, f.one())]).collect())[mi] = linear(f, basis, e, "module label")?;
        }
        let mut gens: Vec<(usize, SparseMat<F::E>)> = imgs.into_iter().map(|(g, c)| (g, SparseMat::from_columns(dm, c))).collect();
        let covered = group.generated(&gens.iter().map(|g| g.0).collect::<Vec<_>>());
        for x in group.generators() {
            if !covered.contains(&x) {
                gens.push((x, SparseMat::identity(f, dm)));
            }
        }
        let mact = GroupAction::from_generators(f, group, dm, &gens)?;
        let labels = basis.iter().map(|b| b.0.clone()).collect();
        let m = EquivariantBimodule::new(f, labels, da, l, r, mact)?;
        let rep = m.validate(f, algebra, group, action);
        if !rep.passed() {
            return Err(Error::Validation(format!("module: {}", rep.failures.join("; "))));
        }
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use hhsmash::exactla::Fp;

    fn pos_of(e: Error) -> (usize, usize, String) {
        match e {
            Error::Parse { line, col, msg } => (line, col, msg),
            other => panic!("expected a parse error, got {other}"),
        }
    }

    #[test]
    fn expressions() {
        let p = Pos { line: 1, col: 1 };
        let e = parse_expr(" 2*x - 1/3 y*z + w^2", p).unwrap();
        assert_eq!(e.len(), 3);
        assert_eq!((e[1].num.clone(), e[1].den.clone()), (BigInt::from(-1), BigInt::from(3)));
        assert_eq!(e[2].word.len(), 2);
        assert!(parse_expr("0", p).unwrap().is_empty());
        assert_eq!(pos_of(parse_expr("x +", p).unwrap_err()).1, 4);
        assert!(parse_expr("x y", p).is_err());
        assert!(parse_expr("1/0 x", p).is_err());
    }

    const DUAL: &str = "field F3\nalgebra\n  basis one x\n  unit one\n  one*one = one\n  one*x = x\n  x*one = x\nend\n";

    #[test]
    fn minimal_scenario() {
        let raw = parse_scenario(DUAL).unwrap();
        let s = raw.build(&Fp::new(3).unwrap()).unwrap();
        assert_eq!(s.algebra.dim(), 2);
        assert_eq!(s.group.order(), 1);
    }

    #[test]
    fn empty_basis_is_rejected() {
        let (line, _, msg) = pos_of(parse_scenario("field F2\nalgebra\n  basis\nend\n").unwrap_err());
        assert_eq!(line, 3);
        assert!(msg.contains("empty"));
    }

    #[test]
    fn duplicate_label_reports_both_positions() {
        let (line, col, msg) = pos_of(parse_scenario("field F2\nalgebra\n  basis a b a\nend\n").unwrap_err());
        assert_eq!((line, col), (3, 13));
        assert!(msg.contains("3:13") && msg.contains("3:9"), "{msg}");
    }

    #[test]
    fn duplicate_block_reports_both_positions() {
        let (line, _, msg) = pos_of(parse_scenario("field F2\nfield F3\n").unwrap_err());
        assert_eq!(line, 2);
        assert!(msg.contains("1:1"), "{msg}");
    }

    #[test]
    fn unknown_label_has_position() {
        let text = DUAL.replace("x*one = x", "x*one = y");
        let raw = parse_scenario(&text).unwrap();
        let (line, col, _) = pos_of(raw.build(&Fp::new(3).unwrap()).unwrap_err());
        assert_eq!((line, col), (7, 11));
    }

    #[test]
    fn bad_field_and_unclosed_block() {
        assert!(parse_scenario("field F4\n").is_err());
        assert!(parse_scenario("field F2\nalgebra\n basis a\n").is_err());
        assert!(parse_scenario("field F2\nbogus\n").is_err());
    }

    #[test]
    fn products_may_use_words() {
        let text = "field F2\nalgebra\n  basis e x y\n  unit e\n  e*e = e\n  e*x = x\n  x*e = x\n  e*y = y\n  y*e = y\n  x*x = y\n  x^2*x = 0\nend\n";
        // `x^2*x` is not a product of two labels.
        assert!(parse_scenario(text).is_err());
        let text = text.replace("  x^2*x = 0\n", "");
        let s = parse_scenario(&text).unwrap().build(&Fp::new(2).unwrap()).unwrap();
        assert_eq!(s.algebra.product(1, 1), &vec![(2, 1)]);
        let cyc = "field F2\nalgebra\n  basis e x\n  unit e\n  e*e = e\n  x*x = x^2\nend\n";
        assert!(parse_scenario(cyc).unwrap().build(&Fp::new(2).unwrap()).is_err());
    }
}
