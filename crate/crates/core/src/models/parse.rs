use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use crate::complexes::{
    conjugate_name, from_structure_equations, Bicomplex, Bidegree, BigradedSpace, DifferentialDecl, GeneratorDecl,
    GradedOperator, Parity, Shift, StructureError, StructureSpec, Term,
};
use crate::exactmath::{ExactMatrix, GaussianRational};
use crate::vaisman::{BasicCohomology, Normalization, LEFSCHETZ};

use super::{ContractionDecl, ModelError, ModelKind, ModelSpec, Payload, LEE};

fn err(line: usize, message: impl Into<String>) -> ModelError {
    ModelError::Parse {
        line,
        message: message.into(),
    }
}

fn valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && s != "i"
}

fn valid_label(s: &str) -> bool {
    !s.is_empty() && !s.contains('#') && !s.chars().any(char::is_whitespace)
}

/// Splits a leading `(p,q)` off `s`.
fn take_bidegree(s: &str) -> Option<(Bidegree, &str)> {
    let s = s.trim_start().strip_prefix('(')?;
    let close = s.find(')')?;
    let (p, q) = s[..close].split_once(',')?;
    let bd = Bidegree::new(p.trim().parse().ok()?, q.trim().parse().ok()?);
    Some((bd, &s[close + 1..]))
}

fn parse_scalar(tok: &str, line: usize) -> Result<GaussianRational, ModelError> {
    tok.parse()
        .map_err(|_| err(line, format!("malformed coefficient `{tok}`")))
}

/// Parses `r r …; r r …` into a `rows × cols` matrix.
fn parse_matrix(text: &str, rows: usize, cols: usize, line: usize) -> Result<ExactMatrix, ModelError> {
    if rows == 0 || cols == 0 {
        return Err(err(line, format!("block has empty shape {rows}x{cols}")));
    }
    let parsed: Vec<Vec<GaussianRational>> = text
        .split(';')
        .map(|r| r.split_whitespace().map(|t| parse_scalar(t, line)).collect())
        .collect::<Result<_, _>>()?;
    if parsed.len() != rows || parsed.iter().any(|r| r.len() != cols) {
        let found: Vec<usize> = parsed.iter().map(Vec::len).collect();
        return Err(err(
            line,
            format!("expected a {rows}x{cols} matrix, found row lengths {found:?}"),
        ));
    }
    Ok(ExactMatrix::from_fn(rows, cols, |r, c| parsed[r][c].clone()))
}

fn format_matrix(m: &ExactMatrix) -> String {
    (0..m.rows())
        .map(|r| m.row(r).iter().map(ToString::to_string).collect::<Vec<_>>().join(" "))
        .collect::<Vec<_>>()
        .join("; ")
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Plus,
    Minus,
    Star,
    Paren(String),
    Word(String),
}

fn tokenize(s: &str, line: usize) -> Result<Vec<Token>, ModelError> {
    let mut out = Vec::new();
    let mut chars = s.char_indices().peekable();
    while let Some(&(k, c)) = chars.peek() {
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            '+' => {
                chars.next();
                out.push(Token::Plus);
            }
            '-' => {
                chars.next();
                out.push(Token::Minus);
            }
            '*' => {
                chars.next();
                out.push(Token::Star);
            }
            '(' => {
                let close = s[k..].find(')').ok_or_else(|| err(line, "unbalanced parenthesis"))?;
                out.push(Token::Paren(s[k..=k + close].to_string()));
                while chars.peek().is_some_and(|&(j, _)| j <= k + close) {
                    chars.next();
                }
            }
            c if c.is_ascii_alphanumeric() || matches!(c, '_' | '~' | '^' | '/') => {
                let mut end = k;
                while let Some(&(j, c)) = chars.peek() {
                    if c.is_ascii_alphanumeric() || matches!(c, '_' | '~' | '^' | '/') {
                        end = j + c.len_utf8();
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Token::Word(s[k..end].to_string()));
            }
            other => return Err(err(line, format!("unexpected character `{other}`"))),
        }
    }
    Ok(out)
}

fn is_coefficient(t: &Token) -> bool {
    match t {
        Token::Paren(_) => true,
        Token::Word(w) => !w.contains(['^', '~']) && w.parse::<GaussianRational>().is_ok(),
        _ => false,
    }
}

/// `[±] [coeff [*]] f^g ± …`, or `0`.
fn parse_expression(s: &str, line: usize) -> Result<Vec<Term>, ModelError> {
    let tokens = tokenize(s, line)?;
    if tokens == [Token::Word("0".into())] {
        return Ok(Vec::new());
    }
    if tokens.is_empty() {
        return Err(err(line, "empty right-hand side"));
    }
    let mut terms = Vec::new();
    let mut k = 0;
    while k < tokens.len() {
        let mut coeff = GaussianRational::one();
        let mut signed = false;
        while let Some(t @ (Token::Plus | Token::Minus)) = tokens.get(k) {
            if *t == Token::Minus {
                coeff = -coeff;
            }
            signed = true;
            k += 1;
        }
        if !signed && k > 0 {
            return Err(err(line, "expected `+` or `-` between terms"));
        }
        if tokens.get(k).is_some_and(is_coefficient) && k + 1 < tokens.len() {
            let text = match &tokens[k] {
                Token::Paren(t) | Token::Word(t) => t,
                _ => unreachable!(),
            };
            coeff = &coeff * &parse_scalar(text, line)?;
            k += 1;
            if tokens.get(k) == Some(&Token::Star) {
                k += 1;
            }
        }
        let Some(Token::Word(mono)) = tokens.get(k) else {
            return Err(err(line, "expected a wedge monomial such as `f1^f2`"));
        };
        let factors: Vec<String> = mono.split('^').map(str::to_string).collect();
        for f in &factors {
            if !valid_name(f.strip_prefix('~').unwrap_or(f)) {
                return Err(err(line, format!("malformed factor `{f}` in `{mono}`")));
            }
        }
        terms.push(Term { coeff, factors });
        k += 1;
    }
    Ok(terms)
}

fn format_expression(terms: &[Term]) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    terms
        .iter()
        .map(|t| format!("{} {}", t.coeff, t.factors.join("^")))
        .collect::<Vec<_>>()
        .join(" + ")
}

#[derive(Default)]
struct LieState {
    generators: Vec<GeneratorDecl>,
    bidegrees: HashMap<String, Bidegree>,
    differentials: Vec<DifferentialDecl>,
    d_lines: HashMap<String, usize>,
}

#[derive(Default)]
struct MatrixState {
    dolbeault_only: bool,
    slots: Vec<(usize, Bidegree, usize, Vec<String>)>,
    del: Vec<(usize, Bidegree, String)>,
    delbar: Vec<(usize, Bidegree, String)>,
}

#[derive(Default)]
struct VaismanState {
    normalization: Normalization,
    basic: Vec<(usize, Bidegree, usize, Vec<String>)>,
    lefschetz: Vec<(usize, Bidegree, String)>,
}

struct Header {
    vaisman: bool,
    name: String,
    line: usize,
}

#[derive(Default)]
struct Parser {
    header: Option<Header>,
    dim: Option<(usize, usize)>,
    kind: Option<ModelKind>,
    lie: LieState,
    matrix: MatrixState,
    vaisman: VaismanState,
    contractions: Vec<ContractionDecl>,
    contraction_keys: HashMap<(String, String), usize>,
}

impl Parser {
    fn require_kind(&mut self, kind: ModelKind, keyword: &str, line: usize) -> Result<(), ModelError> {
        let header = self
            .header
            .as_ref()
            .ok_or_else(|| err(line, format!("`{keyword}` before the `model` or `vaisman` header")))?;
        if header.vaisman != (kind == ModelKind::Vaisman) {
            return Err(err(
                line,
                format!(
                    "`{keyword}` is not allowed in a {} file",
                    if header.vaisman { "vaisman" } else { "model" }
                ),
            ));
        }
        match self.kind {
            Some(k) if k != kind => Err(err(line, format!("`{keyword}` mixes {kind} and {k} directives"))),
            _ => {
                self.kind = Some(kind);
                Ok(())
            }
        }
    }

    fn directive(&mut self, line: usize, text: &str) -> Result<(), ModelError> {
        let (keyword, rest) = text.split_once(char::is_whitespace).unwrap_or((text, ""));
        let rest = rest.trim();
        match keyword {
            "model" | "vaisman" => {
                if self.header.is_some() {
                    return Err(err(line, "duplicate header"));
                }
                if rest.is_empty() || rest.chars().any(char::is_whitespace) || rest.contains('#') {
                    return Err(err(line, "expected a single model name"));
                }
                self.header = Some(Header {
                    vaisman: keyword == "vaisman",
                    name: rest.to_string(),
                    line,
                });
                if keyword == "vaisman" {
                    self.kind = Some(ModelKind::Vaisman);
                }
            }
            "dim" => {
                if self.header.is_none() {
                    return Err(err(line, "`dim` before the header"));
                }
                if self.dim.is_some() {
                    return Err(err(line, "duplicate `dim`"));
                }
                let n: usize = rest
                    .parse()
                    .map_err(|_| err(line, format!("malformed dimension `{rest}`")))?;
                self.dim = Some((n, line));
            }
            "generator" => {
                self.require_kind(ModelKind::Lie, keyword, line)?;
                let (name, bd) = rest
                    .split_once(char::is_whitespace)
                    .and_then(|(name, r)| Some((name, take_bidegree(r)?)))
                    .filter(|(_, (_, tail))| tail.trim().is_empty())
                    .map(|(name, (bd, _))| (name, bd))
                    .ok_or_else(|| err(line, "expected `generator <name> (p,q)`"))?;
                if !valid_name(name) {
                    return Err(err(line, format!("invalid generator name `{name}`")));
                }
                if bd != Bidegree::new(1, 0) && bd != Bidegree::new(0, 1) {
                    return Err(err(
                        line,
                        format!("generator `{name}` has bidegree {bd}; expected (1,0) or (0,1)"),
                    ));
                }
                if self.lie.bidegrees.contains_key(name) {
                    return Err(err(line, format!("duplicate declaration of generator `{name}`")));
                }
                self.lie.bidegrees.insert(name.to_string(), bd);
                self.lie.bidegrees.insert(conjugate_name(name), bd.conjugate());
                self.lie.generators.push(GeneratorDecl {
                    name: name.to_string(),
                    bidegree: bd,
                });
            }
            "d" => {
                self.require_kind(ModelKind::Lie, keyword, line)?;
                let (lhs, rhs) = rest
                    .split_once('=')
                    .ok_or_else(|| err(line, "expected `d <name> = <expression>`"))?;
                let name = lhs.trim();
                let Some(&gen_bd) = self.lie.bidegrees.get(name) else {
                    return Err(err(line, format!("unknown generator `{name}`")));
                };
                if name.starts_with('~') {
                    return Err(err(line, format!("d {name} is implied by d {}", conjugate_name(name))));
                }
                if self.lie.d_lines.contains_key(name) {
                    return Err(err(line, format!("duplicate declaration of d {name}")));
                }
                let terms = parse_expression(rhs, line)?;
                for t in &terms {
                    let mut bd = Bidegree::new(0, 0);
                    for f in &t.factors {
                        let b = self
                            .lie
                            .bidegrees
                            .get(f)
                            .ok_or_else(|| err(line, format!("unknown generator `{f}`")))?;
                        bd = Bidegree::new(bd.p + b.p, bd.q + b.q);
                    }
                    if t.factors.len() != 2 {
                        return Err(err(
                            line,
                            format!(
                                "d {name}: term `{}` has degree {}, expected 2",
                                t.factors.join("^"),
                                t.factors.len()
                            ),
                        ));
                    }
                    let del = Bidegree::new(gen_bd.p + 1, gen_bd.q);
                    let delbar = Bidegree::new(gen_bd.p, gen_bd.q + 1);
                    if bd != del && bd != delbar {
                        return Err(err(
                            line,
                            format!(
                                "d {name}: term `{}` has bidegree {bd}; expected {del} or {delbar}",
                                t.factors.join("^")
                            ),
                        ));
                    }
                }
                self.lie.d_lines.insert(name.to_string(), line);
                self.lie.differentials.push(DifferentialDecl {
                    generator: name.to_string(),
                    terms,
                });
            }
            "contract" => self.contract(line, rest)?,
            "dolbeault-only" => {
                self.require_kind(ModelKind::Matrix, keyword, line)?;
                if !rest.is_empty() || self.matrix.dolbeault_only {
                    return Err(err(line, "`dolbeault-only` takes no arguments and appears once"));
                }
                self.matrix.dolbeault_only = true;
            }
            "slot" | "basic" => {
                let kind = if keyword == "slot" {
                    ModelKind::Matrix
                } else {
                    ModelKind::Vaisman
                };
                self.require_kind(kind, keyword, line)?;
                let (bd, tail) = take_bidegree(rest)
                    .ok_or_else(|| err(line, format!("expected `{keyword} (p,q) <dim> [labels]`")))?;
                let mut words = tail.split_whitespace();
                let k: usize = words
                    .next()
                    .and_then(|w| w.parse().ok())
                    .ok_or_else(|| err(line, "missing or malformed slot dimension"))?;
                let labels: Vec<String> = words.map(str::to_string).collect();
                if !labels.is_empty() && labels.len() != k {
                    return Err(err(line, format!("{} labels given for dimension {k}", labels.len())));
                }
                let entry = (line, bd, k, labels);
                if keyword == "slot" {
                    self.matrix.slots.push(entry);
                } else {
                    self.vaisman.basic.push(entry);
                }
            }
            "del" | "delbar" | "lefschetz" => {
                let kind = if keyword == "lefschetz" {
                    ModelKind::Vaisman
                } else {
                    ModelKind::Matrix
                };
                self.require_kind(kind, keyword, line)?;
                let (bd, tail) =
                    take_bidegree(rest).ok_or_else(|| err(line, format!("expected `{keyword} (p,q): rows`")))?;
                let rows = tail
                    .trim_start()
                    .strip_prefix(':')
                    .ok_or_else(|| err(line, "expected `:` after the bidegree"))?;
                let entry = (line, bd, rows.to_string());
                match keyword {
                    "del" => self.matrix.del.push(entry),
                    "delbar" => self.matrix.delbar.push(entry),
                    _ => self.vaisman.lefschetz.push(entry),
                }
            }
            "normalization" => {
                self.require_kind(ModelKind::Vaisman, keyword, line)?;
                self.vaisman.normalization = match rest {
                    "i" => Normalization::Imaginary,
                    "1" => Normalization::One,
                    _ => return Err(err(line, "expected `normalization i` or `normalization 1`")),
                };
            }
            other => return Err(err(line, format!("unknown directive `{other}`"))),
        }
        Ok(())
    }

    fn contract(&mut self, line: usize, rest: &str) -> Result<(), ModelError> {
        let vaisman = self.header.as_ref().is_some_and(|h| h.vaisman);
        if vaisman {
            if rest != LEE {
                return Err(err(line, "vaisman files support only `contract lee`"));
            }
            if self.contractions.iter().any(|c| c.name == LEE) {
                return Err(err(line, "duplicate declaration of contraction `lee`"));
            }
            self.contractions.push(ContractionDecl {
                name: LEE.into(),
                values: Vec::new(),
            });
            return Ok(());
        }
        self.require_kind(ModelKind::Lie, "contract", line)?;
        let (lhs, value) = rest
            .split_once('=')
            .ok_or_else(|| err(line, "expected `contract <field> <generator> = <coefficient>`"))?;
        let words: Vec<&str> = lhs.split_whitespace().collect();
        let [field, gen] = words[..] else {
            return Err(err(line, "expected `contract <field> <generator> = <coefficient>`"));
        };
        if field.contains('#') {
            return Err(err(line, "invalid field name"));
        }
        if !self.lie.bidegrees.contains_key(gen) {
            return Err(err(line, format!("unknown generator `{gen}`")));
        }
        let value = parse_scalar(value.trim(), line)?;
        let key = (field.to_string(), gen.to_string());
        if self.contraction_keys.contains_key(&key) {
            return Err(err(line, format!("duplicate value of `{field}` on `{gen}`")));
        }
        self.contraction_keys.insert(key, line);
        match self.contractions.iter_mut().find(|c| c.name == field) {
            Some(c) => c.values.push((gen.to_string(), value)),
            None => self.contractions.push(ContractionDecl {
                name: field.to_string(),
                values: vec![(gen.to_string(), value)],
            }),
        }
        Ok(())
    }

    fn finish(self) -> Result<ModelSpec, ModelError> {
        let header = self
            .header
            .as_ref()
            .ok_or_else(|| err(1, "missing `model` or `vaisman` header"))?;
        let (n, dim_line) = self.dim.ok_or_else(|| err(header.line, "missing `dim`"))?;
        let name = header.name.clone();
        let payload = match self.kind.unwrap_or(ModelKind::Lie) {
            ModelKind::Lie => self.finish_lie(n, dim_line, &name)?,
            ModelKind::Matrix => self.finish_matrix(n, header.line)?,
            ModelKind::Vaisman => self.finish_vaisman(n, dim_line)?,
        };
        Ok(ModelSpec {
            name,
            payload,
            contractions: self.contractions,
        })
    }

    fn finish_lie(&self, n: usize, dim_line: usize, name: &str) -> Result<Payload, ModelError> {
        let spec = StructureSpec {
            name: name.to_string(),
            n,
            generators: self.lie.generators.clone(),
            differentials: self.lie.differentials.clone(),
        };
        match from_structure_equations(&spec) {
            Ok(_) => Ok(Payload::Lie(spec)),
            Err(e) => {
                let line = match &e {
                    StructureError::DSquaredNonzero { generator, .. } => {
                        let base = generator.strip_prefix('~').unwrap_or(generator);
                        self.lie.d_lines.get(base).copied().unwrap_or(dim_line)
                    }
                    _ => dim_line,
                };
                Err(err(line, e.to_string()))
            }
        }
    }

    fn finish_matrix(&self, n: usize, header_line: usize) -> Result<Payload, ModelError> {
        let mut space = BigradedSpace::new(n);
        for (line, bd, k, labels) in &self.matrix.slots {
            if bd.p > n || bd.q > n {
                return Err(err(*line, format!("slot {bd} outside the grid of size {n}")));
            }
            if space.dim(*bd) > 0 {
                return Err(err(*line, format!("duplicate declaration of slot {bd}")));
            }
            let labels = if labels.is_empty() {
                (0..*k).map(|j| format!("e{}_{}_{j}", bd.p, bd.q)).collect()
            } else {
                labels.clone()
            };
            space.add_slot(*bd, labels).map_err(|e| err(*line, e.to_string()))?;
        }
        let operator = |blocks: &[(usize, Bidegree, String)], shift: Shift| -> Result<GradedOperator, ModelError> {
            let mut op = GradedOperator::zero(shift, Parity::Odd);
            for (line, bd, rows) in blocks {
                let target = bd
                    .shifted(shift)
                    .filter(|t| space.in_grid(*t) && space.in_grid(*bd))
                    .ok_or_else(|| err(*line, format!("block at {bd} leaves the grid")))?;
                if op.block(*bd).is_some() {
                    return Err(err(*line, format!("duplicate block at {bd}")));
                }
                let m = parse_matrix(rows, space.dim(target), space.dim(*bd), *line)?;
                op.set_block(*bd, m);
            }
            Ok(op)
        };
        let del = operator(&self.matrix.del, Shift::DEL)?;
        let delbar = operator(&self.matrix.delbar, Shift::DELBAR)?;
        if self.matrix.dolbeault_only && !self.matrix.del.is_empty() {
            return Err(err(self.matrix.del[0].0, "`del` block in a dolbeault-only model"));
        }
        let b = Bicomplex::new(space, (!self.matrix.dolbeault_only).then_some(del), delbar)
            .map_err(|e| err(header_line, e.to_string()))?;
        let report = b.validate();
        if let Some(f) = report.first_failure() {
            let line = self
                .matrix
                .del
                .iter()
                .chain(&self.matrix.delbar)
                .find(|(_, bd, _)| *bd == f.slot)
                .map_or(header_line, |(l, _, _)| *l);
            return Err(err(line, report.to_string()));
        }
        Ok(Payload::Matrix(b))
    }

    fn finish_vaisman(&self, n: usize, dim_line: usize) -> Result<Payload, ModelError> {
        if n < 2 {
            return Err(err(dim_line, "vaisman models need dim ≥ 2"));
        }
        let top = n - 1;
        let mut space = BigradedSpace::new(top);
        for (line, bd, k, labels) in &self.vaisman.basic {
            if bd.p > top || bd.q > top {
                return Err(err(*line, format!("basic class at {bd} outside 0 ≤ p,q ≤ {top}")));
            }
            if space.dim(*bd) > 0 {
                return Err(err(*line, format!("duplicate declaration of basic slot {bd}")));
            }
            let labels = if labels.is_empty() {
                (0..*k).map(|j| format!("h{}_{}_{j}", bd.p, bd.q)).collect()
            } else {
                labels.clone()
            };
            space.add_slot(*bd, labels).map_err(|e| err(*line, e.to_string()))?;
        }
        let mut lefschetz = GradedOperator::zero(LEFSCHETZ, Parity::Even);
        for (line, bd, rows) in &self.vaisman.lefschetz {
            let target = bd
                .shifted(LEFSCHETZ)
                .filter(|t| space.in_grid(*t))
                .ok_or_else(|| err(*line, format!("lefschetz block at {bd} leaves the grid")))?;
            if lefschetz.block(*bd).is_some() {
                return Err(err(*line, format!("duplicate lefschetz block at {bd}")));
            }
            lefschetz.set_block(*bd, parse_matrix(rows, space.dim(target), space.dim(*bd), *line)?);
        }
        let basic = BasicCohomology::new(n, space, lefschetz).map_err(|e| err(dim_line, e.to_string()))?;
        Ok(Payload::Vaisman {
            basic,
            normalization: self.vaisman.normalization,
        })
    }
}

/// Parses a `.cplx` (lie or matrix) or `.vsm` (vaisman) model file.
pub fn parse_model_file(text: &str) -> Result<ModelSpec, ModelError> {
    let mut parser = Parser::default();
    for (k, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("").trim();
        if !body.is_empty() {
            parser.directive(k + 1, body)?;
        }
    }
    parser.finish()
}

fn slot_line(out: &mut String, keyword: &str, bd: Bidegree, labels: &[String]) {
    if labels.iter().all(|l| valid_label(l)) {
        let _ = writeln!(out, "{keyword} {bd} {} {}", labels.len(), labels.join(" "));
    } else {
        let _ = writeln!(out, "{keyword} {bd} {}", labels.len());
    }
}

fn block_lines(out: &mut String, keyword: &str, op: &GradedOperator) {
    for (bd, m) in op.blocks() {
        let _ = writeln!(out, "{keyword} {bd}: {}", format_matrix(m));
    }
}

/// Canonical text form; `parse_model_file` inverts it.
pub fn serialize_model(spec: &ModelSpec) -> String {
    let mut out = String::new();
    match &spec.payload {
        Payload::Lie(s) => {
            let _ = writeln!(out, "model {}\ndim {}", spec.name, s.n);
            for g in &s.generators {
                let _ = writeln!(out, "generator {} {}", g.name, g.bidegree);
            }
            for d in &s.differentials {
                let _ = writeln!(out, "d {} = {}", d.generator, format_expression(&d.terms));
            }
            for c in &spec.contractions {
                for (g, v) in &c.values {
                    let _ = writeln!(out, "contract {} {g} = {v}", c.name);
                }
            }
        }
        Payload::Matrix(b) => {
            let _ = writeln!(out, "model {}\ndim {}", spec.name, b.n());
            if !b.has_del() {
                out.push_str("dolbeault-only\n");
            }
            let slots: BTreeMap<Bidegree, usize> = b.space().slots().collect();
            for bd in slots.keys() {
                slot_line(&mut out, "slot", *bd, b.space().labels(*bd));
            }
            if let Ok(del) = b.del() {
                block_lines(&mut out, "del", del);
            }
            block_lines(&mut out, "delbar", b.delbar());
        }
        Payload::Vaisman { basic, normalization } => {
            let _ = writeln!(out, "vaisman {}\ndim {}", spec.name, basic.n());
            if *normalization == Normalization::One {
                out.push_str("normalization 1\n");
            }
            for (bd, _) in basic.space().slots() {
                slot_line(&mut out, "basic", bd, basic.space().labels(bd));
            }
            block_lines(&mut out, "lefschetz", basic.lefschetz());
            for c in &spec.contractions {
                let _ = writeln!(out, "contract {}", c.name);
            }
        }
    }
    out
}
