//! Surface syntax: a reader producing delimited token trees, and a parser
//! turning them into expressions, patterns, and top-level forms.
//!
//! Case of the head decides angle groups: `<Cons x>` is data in expression
//! position, `<cons $x _>` is a pattern constructor in pattern position.
//! `name_idx` atoms denote indexed variables; the index may be a literal,
//! a name, or a parenthesized expression glued on (`a_(+ i 1)`).

use crate::error::{ParseError, Pos};
use num_bigint::BigInt;
use std::fmt;
use std::rc::Rc;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Delim {
    Paren,
    Bracket,
    Brace,
    Angle,
}

impl Delim {
    fn open(self) -> char {
        match self {
            Delim::Paren => '(',
            Delim::Bracket => '[',
            Delim::Brace => '{',
            Delim::Angle => '<',
        }
    }

    fn close(self) -> char {
        match self {
            Delim::Paren => ')',
            Delim::Bracket => ']',
            Delim::Brace => '}',
            Delim::Angle => '>',
        }
    }
}

/// Raw token tree: atoms, `name_idx` indexed atoms, delimited groups, and
/// `,`-marked forms.
#[derive(Debug, Clone, PartialEq)]
pub enum SourceForm {
    Atom(String),
    Indexed(String, Vec<SourceForm>),
    Group(Delim, Vec<SourceForm>),
    Comma(Box<SourceForm>),
}

impl fmt::Display for SourceForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SourceForm::Atom(s) => write!(f, "{s}"),
            SourceForm::Indexed(name, idxs) => {
                write!(f, "{name}")?;
                for i in idxs {
                    match i {
                        SourceForm::Group(_, _) => write!(f, "_{i}")?,
                        _ => write!(f, "_{i}")?,
                    }
                }
                Ok(())
            }
            SourceForm::Group(d, items) => {
                write!(f, "{}", d.open())?;
                for (k, item) in items.iter().enumerate() {
                    if k > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{item}")?;
                }
                write!(f, "{}", d.close())
            }
            SourceForm::Comma(inner) => write!(f, ",{inner}"),
        }
    }
}

struct Reader<'a> {
    src: &'a str,
    at: usize,
    line: u32,
    col: u32,
}

impl<'a> Reader<'a> {
    fn new(src: &'a str) -> Self {
        Reader {
            src,
            at: 0,
            line: 1,
            col: 1,
        }
    }

    fn pos(&self) -> Pos {
        Pos {
            line: self.line,
            col: self.col,
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.at..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.at += c.len_utf8();
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn skip_trivia(&mut self) {
        loop {
            match self.peek() {
                Some(c) if c.is_whitespace() => {
                    self.bump();
                }
                Some(';') => {
                    while let Some(c) = self.bump() {
                        if c == '\n' {
                            break;
                        }
                    }
                }
                _ => break,
            }
        }
    }

    fn open_delim(c: char) -> Option<Delim> {
        match c {
            '(' => Some(Delim::Paren),
            '[' => Some(Delim::Bracket),
            '{' => Some(Delim::Brace),
            '<' => Some(Delim::Angle),
            _ => None,
        }
    }

    fn is_closer(c: char) -> bool {
        matches!(c, ')' | ']' | '}' | '>')
    }

    fn is_atom_char(c: char) -> bool {
        !c.is_whitespace() && !matches!(c, '(' | ')' | '[' | ']' | '{' | '}' | '<' | '>' | ';' | ',')
    }

    fn read_form(&mut self) -> Result<SourceForm, ParseError> {
        let pos = self.pos();
        let c = self.peek().expect("caller checked non-empty");
        if let Some(d) = Self::open_delim(c) {
            self.bump();
            return self.read_group(d, pos);
        }
        if Self::is_closer(c) {
            return Err(ParseError::UnbalancedDelimiter(pos));
        }
        if c == ',' {
            self.bump();
            self.skip_trivia();
            if self.peek().is_none() {
                return Err(ParseError::StrayToken {
                    pos,
                    token: ",".into(),
                });
            }
            let inner = self.read_form()?;
            return Ok(SourceForm::Comma(Box::new(inner)));
        }
        self.read_atom(pos)
    }

    fn read_group(&mut self, d: Delim, open_pos: Pos) -> Result<SourceForm, ParseError> {
        let mut items = Vec::new();
        loop {
            self.skip_trivia();
            match self.peek() {
                None => return Err(ParseError::UnbalancedDelimiter(open_pos)),
                Some(c) if c == d.close() => {
                    self.bump();
                    return Ok(SourceForm::Group(d, items));
                }
                Some(c) if Self::is_closer(c) => {
                    return Err(ParseError::UnbalancedDelimiter(self.pos()));
                }
                Some(_) => items.push(self.read_form()?),
            }
        }
    }

    fn scan_atom_text(&mut self) -> String {
        let start = self.at;
        while let Some(c) = self.peek() {
            if Self::is_atom_char(c) {
                self.bump();
            } else {
                break;
            }
        }
        self.src[start..self.at].to_string()
    }

    /// Atoms may carry index suffixes: `a_1`, `a_i_j`, `a_(+ i 1)`, in any
    /// mix. A trailing `_` glues the following paren group on as an index.
    fn read_atom(&mut self, pos: Pos) -> Result<SourceForm, ParseError> {
        let mut text = self.scan_atom_text();
        debug_assert!(!text.is_empty());
        if text == "_" || text == "..." || !text[1..].contains('_') {
            // May still end in `_` with a paren index following.
            if !(text.len() > 1 && text.ends_with('_') && self.peek() == Some('(')) {
                return Ok(SourceForm::Atom(text));
            }
        }
        // Split off the base name at the first interior underscore.
        let split = match text[1..].find('_') {
            Some(i) => i + 1,
            None => text.len() - 1, // trailing `_`, paren index follows
        };
        let name = text[..split].to_string();
        let mut rest = text[split..].to_string(); // starts with '_'
        let mut indexes = Vec::new();
        loop {
            debug_assert!(rest.starts_with('_'));
            for seg in rest[1..].split('_') {
                if seg.is_empty() {
                    if self.peek() == Some('(') {
                        let gpos = self.pos();
                        self.bump();
                        indexes.push(self.read_group(Delim::Paren, gpos)?);
                    } else {
                        return Err(ParseError::StrayToken {
                            pos,
                            token: format!("{text}_"),
                        });
                    }
                } else {
                    indexes.push(SourceForm::Atom(seg.to_string()));
                }
            }
            // `a_(+ i 1)_j`: after a glued group, more index text may follow.
            match self.peek() {
                Some('_') => {
                    rest = self.scan_atom_text();
                    text.push_str(&rest);
                }
                _ => break,
            }
        }
        Ok(SourceForm::Indexed(name, indexes))
    }
}

/// Reads a whole source text into top-level forms.
pub fn read_forms(src: &str) -> Result<Vec<SourceForm>, ParseError> {
    let mut r = Reader::new(src);
    let mut out = Vec::new();
    loop {
        r.skip_trivia();
        let pos = r.pos();
        match r.peek() {
            None => return Ok(out),
            Some(c) if Reader::is_closer(c) => {
                return Err(ParseError::UnbalancedDelimiter(pos));
            }
            Some(',') => {
                return Err(ParseError::StrayToken {
                    pos,
                    token: ",".into(),
                });
            }
            Some(_) => {
                let form = r.read_form()?;
                if matches!(&form, SourceForm::Atom(a) if a == "...") {
                    return Err(ParseError::StrayToken {
                        pos,
                        token: "...".into(),
                    });
                }
                out.push(form);
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Int(BigInt),
    Var(String),
    IndexedVar(String, Vec<Rc<Expr>>),
    Data(String, Vec<Rc<Expr>>),
    Tuple(Vec<Rc<Expr>>),
    Collection(Vec<Rc<Expr>>),
    Lambda(Rc<Lambda>),
    Apply(Rc<Expr>, Vec<Rc<Expr>>),
    MatchAll(Rc<MatchExpr>),
    Match(Rc<MatchExpr>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Lambda {
    pub params: Vec<String>,
    pub body: Rc<Expr>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MatchExpr {
    pub target: Rc<Expr>,
    pub matcher: Rc<Expr>,
    pub clauses: Vec<Clause>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Clause {
    pub pattern: Rc<Pattern>,
    pub body: Rc<Expr>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Pattern {
    Wildcard,
    Var(String),
    IndexedVar(String, Vec<Rc<Expr>>),
    Value(Rc<Expr>),
    Inductive(String, Vec<Rc<Pattern>>),
    Loop(Rc<LoopPat>),
    Placeholder,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LoopPat {
    pub var: String,
    pub start: Rc<Expr>,
    pub end: Rc<Expr>,
    pub rep: Rc<Pattern>,
    pub tail: Rc<Pattern>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MatcherDecl {
    pub name: String,
    /// Pattern-constructor name (lowercase) and field matcher expressions.
    pub ctors: Vec<(String, Vec<Rc<Expr>>)>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum TopForm {
    Define(String, Rc<Expr>),
    DefineMatcher(Rc<MatcherDecl>),
    Expr(Rc<Expr>),
}

fn is_integer_text(s: &str) -> bool {
    let t = s.strip_prefix('-').or_else(|| s.strip_prefix('+')).unwrap_or(s);
    !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit())
}

fn head_atom(items: &[SourceForm]) -> Option<&str> {
    match items.first() {
        Some(SourceForm::Atom(s)) => Some(s.as_str()),
        _ => None,
    }
}

fn pat_var_name(form: &SourceForm) -> Result<String, ParseError> {
    match form {
        SourceForm::Atom(s) if s.starts_with('$') && s.len() > 1 => Ok(s[1..].to_string()),
        _ => Err(ParseError::syntax(form, "expected a $-prefixed name")),
    }
}

pub fn parse_expr(form: &SourceForm) -> Result<Rc<Expr>, ParseError> {
    match form {
        SourceForm::Atom(s) => {
            if is_integer_text(s) {
                let n: BigInt = s.parse().map_err(|_| ParseError::syntax(form, "bad integer"))?;
                return Ok(Rc::new(Expr::Int(n)));
            }
            match s.as_str() {
                "_" => Err(ParseError::syntax(form, "wildcard outside a pattern")),
                "..." => Err(ParseError::MisplacedEllipsis("in expression position".into())),
                _ if s.starts_with('$') => {
                    Err(ParseError::syntax(form, "pattern variable in expression position"))
                }
                _ => Ok(Rc::new(Expr::Var(s.clone()))),
            }
        }
        SourceForm::Indexed(name, idxs) => {
            if name.starts_with('$') {
                return Err(ParseError::syntax(form, "pattern variable in expression position"));
            }
            let parsed = idxs.iter().map(parse_expr).collect::<Result<Vec<_>, _>>()?;
            Ok(Rc::new(Expr::IndexedVar(name.clone(), parsed)))
        }
        SourceForm::Comma(_) => Err(ParseError::syntax(form, "value pattern in expression position")),
        SourceForm::Group(Delim::Bracket, items) => {
            let elems = items.iter().map(parse_expr).collect::<Result<Vec<_>, _>>()?;
            Ok(Rc::new(Expr::Tuple(elems)))
        }
        SourceForm::Group(Delim::Brace, items) => {
            let elems = items.iter().map(parse_expr).collect::<Result<Vec<_>, _>>()?;
            Ok(Rc::new(Expr::Collection(elems)))
        }
        SourceForm::Group(Delim::Angle, items) => {
            let head = head_atom(items)
                .ok_or_else(|| ParseError::syntax(form, "constructor name expected"))?;
            let first = head.chars().next().unwrap();
            if !first.is_uppercase() {
                return Err(ParseError::syntax(
                    form,
                    "lowercase constructor in expression position",
                ));
            }
            let args = items[1..].iter().map(parse_expr).collect::<Result<Vec<_>, _>>()?;
            Ok(Rc::new(Expr::Data(head.to_string(), args)))
        }
        SourceForm::Group(Delim::Paren, items) => parse_paren_expr(form, items),
    }
}

fn parse_paren_expr(form: &SourceForm, items: &[SourceForm]) -> Result<Rc<Expr>, ParseError> {
    if items.is_empty() {
        return Err(ParseError::syntax(form, "empty application"));
    }
    match head_atom(items) {
        Some("lambda") => {
            if items.len() != 3 {
                return Err(ParseError::syntax(form, "lambda takes a parameter list and a body"));
            }
            let params = match &items[1] {
                SourceForm::Group(Delim::Bracket, ps) => {
                    ps.iter().map(pat_var_name).collect::<Result<Vec<_>, _>>()?
                }
                other => return Err(ParseError::syntax(other, "expected [$x ...] parameter list")),
            };
            for (i, p) in params.iter().enumerate() {
                if params[..i].contains(p) {
                    return Err(ParseError::syntax(form, format!("duplicate parameter ${p}")));
                }
            }
            let body = parse_expr(&items[2])?;
            Ok(Rc::new(Expr::Lambda(Rc::new(Lambda { params, body }))))
        }
        Some("match-all") => {
            if items.len() != 4 {
                return Err(ParseError::syntax(
                    form,
                    "match-all takes a target, a matcher, and one clause",
                ));
            }
            let target = parse_expr(&items[1])?;
            let matcher = parse_expr(&items[2])?;
            let clause = parse_clause(&items[3])?;
            Ok(Rc::new(Expr::MatchAll(Rc::new(MatchExpr {
                target,
                matcher,
                clauses: vec![clause],
            }))))
        }
        Some("match") => {
            if items.len() != 4 {
                return Err(ParseError::syntax(
                    form,
                    "match takes a target, a matcher, and a clause block",
                ));
            }
            let target = parse_expr(&items[1])?;
            let matcher = parse_expr(&items[2])?;
            let clauses = match &items[3] {
                SourceForm::Group(Delim::Brace, cs) => {
                    cs.iter().map(parse_clause).collect::<Result<Vec<_>, _>>()?
                }
                other => return Err(ParseError::syntax(other, "expected {[pattern body] ...}")),
            };
            Ok(Rc::new(Expr::Match(Rc::new(MatchExpr {
                target,
                matcher,
                clauses,
            }))))
        }
        Some("define") | Some("define-matcher") => {
            Err(ParseError::syntax(form, "definition below top level"))
        }
        Some("loop") => Err(ParseError::syntax(form, "loop pattern in expression position")),
        _ => {
            let f = parse_expr(&items[0])?;
            let args = items[1..].iter().map(parse_expr).collect::<Result<Vec<_>, _>>()?;
            Ok(Rc::new(Expr::Apply(f, args)))
        }
    }
}

fn parse_clause(form: &SourceForm) -> Result<Clause, ParseError> {
    match form {
        SourceForm::Group(Delim::Bracket, items) if items.len() == 2 => {
            let pattern = parse_pattern(&items[0])?;
            reject_placeholders(&pattern)?;
            let body = parse_expr(&items[1])?;
            Ok(Clause { pattern, body })
        }
        _ => Err(ParseError::syntax(form, "expected a [pattern body] clause")),
    }
}

pub fn parse_pattern(form: &SourceForm) -> Result<Rc<Pattern>, ParseError> {
    match form {
        SourceForm::Atom(s) => match s.as_str() {
            "_" => Ok(Rc::new(Pattern::Wildcard)),
            "..." => Ok(Rc::new(Pattern::Placeholder)),
            _ if s.starts_with('$') && s.len() > 1 => Ok(Rc::new(Pattern::Var(s[1..].to_string()))),
            _ => Err(ParseError::syntax(
                form,
                "expected a pattern (constants match via ,expr)",
            )),
        },
        SourceForm::Indexed(name, idxs) => {
            if !name.starts_with('$') || name.len() < 2 {
                return Err(ParseError::syntax(form, "expected a pattern"));
            }
            let parsed = idxs.iter().map(parse_expr).collect::<Result<Vec<_>, _>>()?;
            Ok(Rc::new(Pattern::IndexedVar(name[1..].to_string(), parsed)))
        }
        SourceForm::Comma(inner) => Ok(Rc::new(Pattern::Value(parse_expr(inner)?))),
        SourceForm::Group(Delim::Angle, items) => {
            let head = head_atom(items)
                .ok_or_else(|| ParseError::syntax(form, "constructor name expected"))?;
            let first = head.chars().next().unwrap();
            if first.is_uppercase() {
                return Err(ParseError::syntax(
                    form,
                    "uppercase constructor in pattern position",
                ));
            }
            let args = items[1..]
                .iter()
                .map(parse_pattern)
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Rc::new(Pattern::Inductive(head.to_string(), args)))
        }
        SourceForm::Group(Delim::Paren, items) if head_atom(items) == Some("loop") => {
            if items.len() != 5 {
                return Err(ParseError::syntax(
                    form,
                    "loop takes a variable, [start end], a repeat pattern, and a tail",
                ));
            }
            let var = pat_var_name(&items[1])?;
            let (start, end) = match &items[2] {
                SourceForm::Group(Delim::Bracket, b) if b.len() == 2 => {
                    (parse_expr(&b[0])?, parse_expr(&b[1])?)
                }
                other => return Err(ParseError::syntax(other, "expected [start end] bounds")),
            };
            let rep = parse_pattern(&items[3])?;
            let tail = parse_pattern(&items[4])?;
            check_rep_placeholder(&rep)?;
            Ok(Rc::new(Pattern::Loop(Rc::new(LoopPat {
                var,
                start,
                end,
                rep,
                tail,
            }))))
        }
        _ => Err(ParseError::syntax(form, "expected a pattern")),
    }
}

/// The repeat part of a loop owns exactly one `...`, and it must sit on the
/// chain of last arguments (`<cons ... <nil>>` is rejected). The chain passes
/// through the tail of a nested loop, so an inner loop's tail may carry the
/// outer loop's `...`; an inner repeat part owns its placeholder separately
/// and was checked when the inner loop was parsed.
fn check_rep_placeholder(rep: &Pattern) -> Result<(), ParseError> {
    fn walk(p: &Pattern, rep: &Pattern, on_chain: bool, found: &mut u32) -> Result<(), ParseError> {
        match p {
            Pattern::Placeholder => {
                if on_chain {
                    *found += 1;
                    if *found > 1 {
                        return Err(ParseError::MisplacedEllipsis(format!(
                            "the repeat part `{rep}` takes a single ..."
                        )));
                    }
                    Ok(())
                } else {
                    Err(ParseError::MisplacedEllipsis(format!(
                        "only the last argument position continues the loop in `{rep}`"
                    )))
                }
            }
            Pattern::Inductive(_, args) => {
                if let Some((last, init)) = args.split_last() {
                    for a in init {
                        walk(a, rep, false, found)?;
                    }
                    walk(last, rep, on_chain, found)?;
                }
                Ok(())
            }
            Pattern::Loop(lp) => walk(&lp.tail, rep, on_chain, found),
            _ => Ok(()),
        }
    }
    let mut found = 0;
    walk(rep, rep, true, &mut found)?;
    if found == 0 {
        return Err(ParseError::MisplacedEllipsis(format!(
            "the repeat part `{rep}` of a loop needs a ..."
        )));
    }
    Ok(())
}

/// Outside a loop's repeat part no placeholder may appear. Repeat parts own
/// their placeholders and were checked when parsed; loop tails belong to the
/// surrounding context and are walked.
fn reject_placeholders(root: &Pattern) -> Result<(), ParseError> {
    fn walk(p: &Pattern, root: &Pattern) -> Result<(), ParseError> {
        match p {
            Pattern::Placeholder => Err(ParseError::MisplacedEllipsis(format!(
                "no loop owns the ... in `{root}`"
            ))),
            Pattern::Inductive(_, args) => {
                for a in args {
                    walk(a, root)?;
                }
                Ok(())
            }
            Pattern::Loop(lp) => walk(&lp.tail, root),
            _ => Ok(()),
        }
    }
    walk(root, root)
}

pub fn parse_top(form: &SourceForm) -> Result<TopForm, ParseError> {
    if let SourceForm::Group(Delim::Paren, items) = form {
        match head_atom(items) {
            Some("define") => {
                if items.len() != 3 {
                    return Err(ParseError::syntax(form, "define takes a name and a value"));
                }
                let name = pat_var_name(&items[1])?;
                let body = parse_expr(&items[2])?;
                return Ok(TopForm::Define(name, body));
            }
            Some("define-matcher") => {
                if items.len() != 3 {
                    return Err(ParseError::syntax(
                        form,
                        "define-matcher takes a name and a constructor block",
                    ));
                }
                let name = pat_var_name(&items[1])?;
                let decls = match &items[2] {
                    SourceForm::Group(Delim::Brace, cs) => cs,
                    other => {
                        return Err(ParseError::syntax(other, "expected {[<ctor matchers...>] ...}"))
                    }
                };
                let mut ctors = Vec::new();
                for c in decls {
                    let inner = match c {
                        SourceForm::Group(Delim::Bracket, inner) if inner.len() == 1 => &inner[0],
                        other => {
                            return Err(ParseError::syntax(other, "expected [<ctor matchers...>]"))
                        }
                    };
                    match inner {
                        SourceForm::Group(Delim::Angle, items) => {
                            let head = head_atom(items).ok_or_else(|| {
                                ParseError::syntax(inner, "constructor name expected")
                            })?;
                            if head.chars().next().unwrap().is_uppercase() {
                                return Err(ParseError::syntax(
                                    inner,
                                    "constructor declarations use the lowercase name",
                                ));
                            }
                            let fields = items[1..]
                                .iter()
                                .map(parse_expr)
                                .collect::<Result<Vec<_>, _>>()?;
                            ctors.push((head.to_string(), fields));
                        }
                        other => {
                            return Err(ParseError::syntax(other, "expected <ctor matchers...>"))
                        }
                    }
                }
                return Ok(TopForm::DefineMatcher(Rc::new(MatcherDecl { name, ctors })));
            }
            _ => {}
        }
    }
    Ok(TopForm::Expr(parse_expr(form)?))
}

/// Reads and parses a whole program.
pub fn parse_program(src: &str) -> Result<Vec<TopForm>, ParseError> {
    read_forms(src)?.iter().map(parse_top).collect()
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Int(n) => write!(f, "{n}"),
            Expr::Var(v) => write!(f, "{v}"),
            Expr::IndexedVar(v, idxs) => {
                write!(f, "{v}")?;
                for i in idxs {
                    match &**i {
                        // Parenthesized forms print their own delimiters.
                        Expr::IndexedVar(..) => write!(f, "_({i})")?,
                        _ => write!(f, "_{i}")?,
                    }
                }
                Ok(())
            }
            Expr::Data(name, args) => {
                write!(f, "<{name}")?;
                for a in args {
                    write!(f, " {a}")?;
                }
                write!(f, ">")
            }
            Expr::Tuple(xs) => write_seq(f, "[", xs, "]"),
            Expr::Collection(xs) => write_seq(f, "{", xs, "}"),
            Expr::Lambda(l) => {
                write!(f, "(lambda [")?;
                for (i, p) in l.params.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "${p}")?;
                }
                write!(f, "] {})", l.body)
            }
            Expr::Apply(func, args) => {
                write!(f, "({func}")?;
                for a in args {
                    write!(f, " {a}")?;
                }
                write!(f, ")")
            }
            Expr::MatchAll(m) => {
                let c = &m.clauses[0];
                write!(
                    f,
                    "(match-all {} {} [{} {}])",
                    m.target, m.matcher, c.pattern, c.body
                )
            }
            Expr::Match(m) => {
                write!(f, "(match {} {} {{", m.target, m.matcher)?;
                for (i, c) in m.clauses.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "[{} {}]", c.pattern, c.body)?;
                }
                write!(f, "}})")
            }
        }
    }
}

fn write_seq(f: &mut fmt::Formatter<'_>, open: &str, xs: &[Rc<Expr>], close: &str) -> fmt::Result {
    write!(f, "{open}")?;
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            write!(f, " ")?;
        }
        write!(f, "{x}")?;
    }
    write!(f, "{close}")
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pattern::Wildcard => write!(f, "_"),
            Pattern::Var(v) => write!(f, "${v}"),
            Pattern::IndexedVar(v, idxs) => {
                write!(f, "${v}")?;
                for i in idxs {
                    match &**i {
                        Expr::IndexedVar(..) => write!(f, "_({i})")?,
                        _ => write!(f, "_{i}")?,
                    }
                }
                Ok(())
            }
            Pattern::Value(e) => write!(f, ",{e}"),
            Pattern::Inductive(name, args) => {
                write!(f, "<{name}")?;
                for a in args {
                    write!(f, " {a}")?;
                }
                write!(f, ">")
            }
            Pattern::Loop(l) => {
                write!(
                    f,
                    "(loop ${} [{} {}] {} {})",
                    l.var, l.start, l.end, l.rep, l.tail
                )
            }
            Pattern::Placeholder => write!(f, "..."),
        }
    }
}

impl fmt::Display for TopForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TopForm::Define(name, e) => write!(f, "(define ${name} {e})"),
            TopForm::DefineMatcher(d) => {
                write!(f, "(define-matcher ${} {{", d.name)?;
                for (i, (ctor, fields)) in d.ctors.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "[<{ctor}")?;
                    for fe in fields {
                        write!(f, " {fe}")?;
                    }
                    write!(f, ">]")?;
                }
                write!(f, "}})")
            }
            TopForm::Expr(e) => write!(f, "{e}"),
        }
    }
}
