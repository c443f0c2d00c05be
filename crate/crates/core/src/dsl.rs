//! The text format for theories and workspaces.
//!
//! A workspace file is a sequence of blocks. A block starts with a keyword
//! in the first column (`theory`, `morphism`, `algebra`, `ring`, `module`,
//! `bimodule`, `calgebra`, `bialgebra`, `coalgebra`) and runs until the next
//! one; continuation lines are indented. `#` starts a comment. Names are
//! resolved against earlier blocks and a few built-ins: the rings `Z<n>`,
//! `F2t2` (dual numbers) and `UT2F2`, and the backends `Set`, `Pointed`,
//! `Mon`, `cMon`, `cSem`, `Grp`, `Ab`, `cRing`, `Mod(R)`, `cAlg(R)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::FiniteAlgebra;
use crate::backend::{Elem, Gen, Obj, VarietyBackend};
use crate::coalgebra::{constant_coalgebra, n_phi, v_phi, Coalgebra};
use crate::error::{Error, ParseError, Result};
use crate::ew::bimodule_coalgebra;
use crate::hopf::{
    cyclic_group, group_algebra, truncated_polynomial, BialgebraData, FiniteBialgebra, FiniteCommAlgebra,
};
use crate::ring::{Bimodule, FiniteModule, FiniteRing};
use crate::theory::{Equation, Signature, Term, TheoryMorphism, TheoryPresentation};

const KEYWORDS: [&str; 9] =
    ["theory", "morphism", "algebra", "ring", "module", "bimodule", "calgebra", "bialgebra", "coalgebra"];

/// Largest carrier a block may declare; a binary table then has 2^24 entries.
const MAX_DECLARED_SIZE: usize = 1 << 12;

/// Largest `n` accepted for the built-in ring `Z<n>`.
const MAX_BUILTIN_MODULUS: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(u64),
    Sym(&'static str),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> std::result::Result<Vec<Token>, ParseError> {
    const SYMS: [&str; 14] = ["->", "(", ")", ",", ";", "=", "/", "[", "]", "{", "}", ":", "+", "*"];
    let mut out = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let (line, column) = (ln + 1, i + 1);
            if c == '#' {
                break;
            }
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            if c.is_ascii_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || matches!(chars[i], '_' | '@' | '\'')) {
                    i += 1;
                }
                out.push(Token { tok: Tok::Ident(chars[start..i].iter().collect()), line, column });
                continue;
            }
            if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                let n = digits.parse().map_err(|_| ParseError {
                    line,
                    column,
                    message: format!("integer `{digits}` is too large"),
                })?;
                out.push(Token { tok: Tok::Int(n), line, column });
                continue;
            }
            let rest: String = chars[i..chars.len().min(i + 2)].iter().collect();
            match SYMS.iter().find(|s| rest.starts_with(**s)) {
                Some(s) => {
                    out.push(Token { tok: Tok::Sym(s), line, column });
                    i += s.chars().count();
                }
                None => return Err(ParseError { line, column, message: format!("unexpected character `{c}`") }),
            }
        }
    }
    Ok(out)
}

struct Cursor<'a> {
    toks: &'a [Token],
    pos: usize,
    /// Where to report running off the end.
    end: (usize, usize),
}

impl<'a> Cursor<'a> {
    fn new(toks: &'a [Token], end: (usize, usize)) -> Self {
        Cursor { toks, pos: 0, end }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn here(&self) -> (usize, usize) {
        self.toks.get(self.pos).map_or(self.end, |t| (t.line, t.column))
    }

    fn error<T>(&self, message: impl Into<String>) -> std::result::Result<T, ParseError> {
        let (line, column) = self.here();
        Err(ParseError { line, column, message: message.into() })
    }

    fn describe(&self) -> String {
        match self.peek() {
            None => "end of input".into(),
            Some(Tok::Ident(s)) => format!("`{s}`"),
            Some(Tok::Int(n)) => format!("`{n}`"),
            Some(Tok::Sym(s)) => format!("`{s}`"),
        }
    }

    fn ident(&mut self, what: &str) -> std::result::Result<String, ParseError> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => self.error(format!("expected {what}, found {}", self.describe())),
        }
    }

    fn int(&mut self, what: &str) -> std::result::Result<usize, ParseError> {
        match self.peek() {
            Some(&Tok::Int(n)) => {
                self.pos += 1;
                usize::try_from(n).or_else(|_| self.error("integer out of range"))
            }
            _ => self.error(format!("expected {what}, found {}", self.describe())),
        }
    }

    fn sym(&mut self, s: &'static str) -> std::result::Result<(), ParseError> {
        if self.peek() == Some(&Tok::Sym(s)) {
            self.pos += 1;
            Ok(())
        } else {
            self.error(format!("expected `{s}`, found {}", self.describe()))
        }
    }

    fn eat_sym(&mut self, s: &'static str) -> bool {
        let hit = self.peek() == Some(&Tok::Sym(s));
        if hit {
            self.pos += 1;
        }
        hit
    }

    fn keyword(&mut self, k: &str) -> std::result::Result<(), ParseError> {
        if self.eat_keyword(k) {
            Ok(())
        } else {
            self.error(format!("expected `{k}`, found {}", self.describe()))
        }
    }

    fn eat_keyword(&mut self, k: &str) -> bool {
        let hit = matches!(self.peek(), Some(Tok::Ident(s)) if s == k);
        if hit {
            self.pos += 1;
        }
        hit
    }

    fn finish(&self) -> std::result::Result<(), ParseError> {
        if self.at_end() {
            Ok(())
        } else {
            self.error(format!("unexpected {}", self.describe()))
        }
    }

    fn int_list(&mut self) -> std::result::Result<Vec<usize>, ParseError> {
        self.sym("[")?;
        let mut out = Vec::new();
        if self.eat_sym("]") {
            return Ok(out);
        }
        loop {
            out.push(self.int("an integer")?);
            if self.eat_sym("]") {
                return Ok(out);
            }
            self.sym(",")?;
        }
    }

    fn raw_term(&mut self) -> std::result::Result<Raw, ParseError> {
        let (line, column) = self.here();
        let head = match self.peek() {
            Some(Tok::Int(n)) => {
                let n = *n;
                self.pos += 1;
                return Ok(Raw { head: Head::Int(n as usize), args: None, line, column });
            }
            _ => self.ident("a term")?,
        };
        if !self.eat_sym("(") {
            return Ok(Raw { head: Head::Name(head), args: None, line, column });
        }
        let mut args = Vec::new();
        if !self.eat_sym(")") {
            loop {
                args.push(self.raw_term()?);
                if self.eat_sym(")") {
                    break;
                }
                self.sym(",")?;
            }
        }
        Ok(Raw { head: Head::Name(head), args: Some(args), line, column })
    }
}

#[derive(Clone, Debug)]
enum Head {
    Name(String),
    Int(usize),
}

/// A term before names are resolved: `args` is `None` for a bare leaf.
#[derive(Clone, Debug)]
struct Raw {
    head: Head,
    args: Option<Vec<Raw>>,
    line: usize,
    column: usize,
}

impl Raw {
    fn fail<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(ParseError { line: self.line, column: self.column, message: message.into() }.into())
    }

    /// Variables are `x1, x2, ..`; every other leaf is a constant.
    fn to_term(&self) -> Result<Term> {
        match (&self.head, &self.args) {
            (Head::Int(n), _) => self.fail(format!("unexpected integer `{n}` in a term")),
            (Head::Name(v), None) if is_var(v) => Ok(Term::Var(v[1..].parse().expect("digits"))),
            (Head::Name(op), None) => Ok(Term::constant(op.clone())),
            (Head::Name(op), Some(args)) => {
                Ok(Term::app(op.clone(), args.iter().map(Raw::to_term).collect::<Result<Vec<_>>>()?))
            }
        }
    }

    /// Leaves naming a generator become variables for `eval_term`.
    fn to_element_term(&self, sig: &Signature, gens: &[Gen]) -> Result<Term> {
        match (&self.head, &self.args) {
            (Head::Int(n), _) => self.fail(format!("unexpected integer `{n}` in an element of a free algebra")),
            (Head::Name(v), None) => match gens.iter().position(|g| g.to_string() == *v) {
                Some(i) => Ok(Term::Var(i + 1)),
                None if sig.arity(v) == Some(0) => Ok(Term::constant(v.clone())),
                None => {
                    let names: Vec<String> = gens.iter().map(Gen::to_string).collect();
                    self.fail(format!("`{v}` is neither a constant nor one of the generators {{{}}}", names.join(", ")))
                }
            },
            (Head::Name(op), Some(args)) => Ok(Term::app(
                op.clone(),
                args.iter().map(|a| a.to_element_term(sig, gens)).collect::<Result<Vec<_>>>()?,
            )),
        }
    }
}

fn is_var(s: &str) -> bool {
    s.len() > 1 && s.starts_with('x') && s[1..].bytes().all(|b| b.is_ascii_digit()) && !s[1..].starts_with('0')
}

fn theory_body(c: &mut Cursor<'_>) -> Result<TheoryPresentation> {
    c.keyword("theory")?;
    let name = c.ident("a theory name")?;
    c.keyword("ops")?;
    let mut ops = Vec::new();
    while !c.eat_keyword("eqs") {
        let op = c.ident("an op declaration or `eqs`")?;
        if is_var(&op) {
            return c.error(format!("`{op}` is reserved for variables")).map_err(Error::from);
        }
        c.sym("/")?;
        ops.push((op, c.int("an arity")?));
    }
    let signature = Signature::new(ops)?;
    let mut equations = Vec::new();
    while !c.at_end() {
        let lhs = c.raw_term()?.to_term()?;
        c.sym("=")?;
        let rhs = c.raw_term()?.to_term()?;
        equations.push(Equation::new(lhs, rhs));
        if !c.eat_sym(";") {
            break;
        }
    }
    c.finish()?;
    TheoryPresentation::new(name, signature, equations)
}

/// Parses `theory <name> ops <id>/<arity> .. eqs <term>=<term>; ..`.
pub fn parse_theory(text: &str) -> Result<TheoryPresentation> {
    let toks = lex(text)?;
    let end = end_of(text);
    theory_body(&mut Cursor::new(&toks, end))
}

fn end_of(text: &str) -> (usize, usize) {
    let lines: Vec<&str> = text.lines().collect();
    (lines.len().max(1), lines.last().map_or(0, |l| l.chars().count()) + 1)
}

/// A finite algebra together with the theory it was declared against.
#[derive(Clone, Debug)]
pub struct LoadedAlgebra {
    pub theory: Arc<TheoryPresentation>,
    pub backend: Option<VarietyBackend>,
    pub algebra: Arc<FiniteAlgebra>,
}

/// Everything loaded from workspace files, by name and kind.
#[derive(Clone, Debug, Default)]
pub struct Workspace {
    pub theories: BTreeMap<String, Arc<TheoryPresentation>>,
    pub morphisms: BTreeMap<String, TheoryMorphism>,
    pub algebras: BTreeMap<String, LoadedAlgebra>,
    pub rings: BTreeMap<String, Arc<FiniteRing>>,
    pub modules: BTreeMap<String, FiniteModule>,
    pub bimodules: BTreeMap<String, Bimodule>,
    pub calgebras: BTreeMap<String, FiniteCommAlgebra>,
    pub bialgebras: BTreeMap<String, FiniteBialgebra>,
    pub coalgebras: BTreeMap<String, Coalgebra>,
    pub sources: Vec<String>,
}

/// Parses one workspace file.
pub fn parse_workspace(text: &str) -> Result<Workspace> {
    let mut ws = Workspace::default();
    ws.load(text)?;
    Ok(ws)
}

fn insert<T>(map: &mut BTreeMap<String, T>, kind: &str, name: String, value: T) -> Result<()> {
    if map.contains_key(&name) {
        return Err(Error::DuplicateName(format!("{kind} `{name}`")));
    }
    map.insert(name, value);
    Ok(())
}

fn lookup<'a, T>(map: &'a BTreeMap<String, T>, kind: &str, name: &str) -> Result<&'a T> {
    map.get(name).ok_or_else(|| Error::UnknownName(format!("{kind} `{name}`")))
}

impl Workspace {
    /// Adds the blocks of another file; names may refer to earlier files.
    pub fn load(&mut self, text: &str) -> Result<()> {
        let toks = lex(text)?;
        let mut starts = Vec::new();
        for (i, t) in toks.iter().enumerate() {
            if t.column == 1 {
                match &t.tok {
                    Tok::Ident(k) if KEYWORDS.contains(&k.as_str()) => starts.push(i),
                    _ => {
                        return Err(
                            ParseError { line: t.line, column: 1, message: "expected a block keyword".into() }.into()
                        )
                    }
                }
            }
        }
        if let Some(t) = toks.first() {
            if t.column != 1 {
                return Err(ParseError {
                    line: t.line,
                    column: t.column,
                    message: "blocks start in the first column".into(),
                }
                .into());
            }
        }
        starts.push(toks.len());
        let file_end = end_of(text);
        for w in starts.windows(2) {
            let block = &toks[w[0]..w[1]];
            let end = toks.get(w[1]).map_or(file_end, |t| (t.line, t.column));
            self.block(&mut Cursor::new(block, end))?;
        }
        Ok(())
    }

    fn block(&mut self, c: &mut Cursor<'_>) -> Result<()> {
        let Some(Tok::Ident(kw)) = c.peek().cloned() else { unreachable!("blocks start with a keyword") };
        match kw.as_str() {
            "theory" => {
                let th = theory_body(c)?;
                insert(&mut self.theories, "theory", th.name.clone(), Arc::new(th))
            }
            "morphism" => self.morphism(c),
            "algebra" => self.algebra(c),
            "ring" => self.ring(c),
            "module" => self.module(c),
            "bimodule" => self.bimodule(c),
            "calgebra" => self.calgebra(c),
            "bialgebra" => self.bialgebra(c),
            _ => self.coalgebra(c),
        }
    }

    pub fn ring_named(&self, name: &str) -> Result<Arc<FiniteRing>> {
        if let Some(r) = self.rings.get(name) {
            return Ok(r.clone());
        }
        match name {
            "F2t2" => Ok(Arc::new(FiniteRing::f2_dual())),
            "UT2F2" => Ok(Arc::new(FiniteRing::upper_triangular_f2())),
            _ => match name.strip_prefix('Z').and_then(|n| n.parse::<usize>().ok()) {
                Some(n) if (1..=MAX_BUILTIN_MODULUS).contains(&n) && !name[1..].starts_with('0') => {
                    Ok(Arc::new(FiniteRing::zmod(n)))
                }
                _ => Err(Error::UnknownName(format!("ring `{name}`"))),
            },
        }
    }

    /// A backend spec such as `Grp` or `Mod(Z4)`; `None` if `name` is not
    /// a backend.
    fn backend_spec(&self, c: &mut Cursor<'_>) -> Result<Option<VarietyBackend>> {
        let save = c.pos;
        let name = c.ident("a theory or backend")?;
        let plain = match name.as_str() {
            "Set" => Some(VarietyBackend::set()),
            "Pointed" => Some(VarietyBackend::pointed()),
            "Mon" => Some(VarietyBackend::mon()),
            "cMon" => Some(VarietyBackend::cmon()),
            "cSem" => Some(VarietyBackend::csem()),
            "Grp" => Some(VarietyBackend::grp()),
            "Ab" => Some(VarietyBackend::ab()),
            "cRing" => Some(VarietyBackend::cring()),
            _ => None,
        };
        if plain.is_some() && !self.theories.contains_key(&name) {
            return Ok(plain);
        }
        if matches!(name.as_str(), "Mod" | "cAlg") && c.peek() == Some(&Tok::Sym("(")) {
            c.sym("(")?;
            let ring = self.ring_named(&c.ident("a ring")?)?;
            c.sym(")")?;
            return Ok(Some(if name == "Mod" { VarietyBackend::module(ring) } else { VarietyBackend::calg(ring)? }));
        }
        c.pos = save;
        Ok(None)
    }

    /// A workspace theory or a backend's theory.
    fn theory_ref(&self, c: &mut Cursor<'_>) -> Result<(Arc<TheoryPresentation>, Option<VarietyBackend>)> {
        if let Some(b) = self.backend_spec(c)? {
            return Ok((b.theory().clone(), Some(b)));
        }
        let name = c.ident("a theory")?;
        Ok((lookup(&self.theories, "theory", &name)?.clone(), None))
    }

    fn backend_ref(&self, c: &mut Cursor<'_>) -> Result<VarietyBackend> {
        match self.backend_spec(c)? {
            Some(b) => Ok(b),
            None => Err(c.error::<()>(format!("expected a backend, found {}", c.describe())).unwrap_err().into()),
        }
    }

    fn morphism(&mut self, c: &mut Cursor<'_>) -> Result<()> {
        c.keyword("morphism")?;
        let name = c.ident("a morphism name")?;
        if c.eat_sym("=") {
            c.keyword("id")?;
            let b = self.backend_ref(c)?;
            c.finish()?;
            let mut phi = TheoryMorphism::identity(&b);
            phi.name = name.clone();
            return insert(&mut self.morphisms, "morphism", name, phi);
        }
        c.sym(":")?;
        let (source, _) = self.theory_ref(c)?;
        c.sym("->")?;
        let (target, backend) = self.theory_ref(c)?;
        let mut assignment = BTreeMap::new();
        while !c.at_end() {
            let op = c.ident("a source op")?;
            c.sym("->")?;
            let t = c.raw_term()?.to_term()?;
            if assignment.insert(op.clone(), t).is_some() {
                return Err(Error::DuplicateOp(op));
            }
            if !c.eat_sym(";") {
                break;
            }
        }
        c.finish()?;
        let phi = TheoryMorphism::new(name.clone(), source, target, backend, assignment)?;
        insert(&mut self.morphisms, "morphism", name, phi)
    }

    /// `table <op> = [..]` repeated; returns the tables by op name.
    fn tables(c: &mut Cursor<'_>) -> Result<BTreeMap<String, Vec<usize>>> {
        let mut out = BTreeMap::new();
        while c.eat_keyword("table") {
            let op = c.ident("an op name")?;
            c.sym("=")?;
            let t = c.int_list()?;
            if out.insert(op.clone(), t).is_some() {
                return Err(Error::InvalidTable(format!("table `{op}` given twice")));
            }
        }
        Ok(out)
    }

    fn ordered_tables(
        sig: &Signature,
        mut tables: BTreeMap<String, Vec<usize>>,
        what: &str,
    ) -> Result<Vec<Vec<usize>>> {
        let out = sig
            .ops()
            .iter()
            .map(|op| {
                tables
                    .remove(&op.name)
                    .ok_or_else(|| Error::InvalidTable(format!("{what}: no table for `{}`", op.name)))
            })
            .collect::<Result<Vec<_>>>()?;
        if let Some(extra) = tables.keys().next() {
            return Err(Error::UnknownOp(extra.clone()));
        }
        Ok(out)
    }

    fn algebra(&mut self, c: &mut Cursor<'_>) -> Result<()> {
        c.keyword("algebra")?;
        let name = c.ident("an algebra name")?;
        c.sym(":")?;
        let (theory, backend) = self.theory_ref(c)?;
        c.keyword("size")?;
        let size = declared_size(c)?;
        let tables = Self::tables(c)?;
        c.finish()?;
        let tables = Self::ordered_tables(&theory.signature, tables, &name)?;
        let algebra = Arc::new(FiniteAlgebra::new(name.clone(), theory.signature.clone(), size, tables)?);
        insert(&mut self.algebras, "algebra", name, LoadedAlgebra { theory, backend, algebra })
    }

    fn ring(&mut self, c: &mut Cursor<'_>) -> Result<()> {
        c.keyword("ring")?;
        let name = c.ident("a ring name")?;
        c.keyword("size")?;
        let size = declared_size(c)?;
        let mut tables = Self::tables(c)?;
        c.finish()?;
        let mut take = |op: &str| {
            tables.remove(op).ok_or_else(|| Error::InvalidTable(format!("ring {name}: no table for `{op}`")))
        };
        let (add, mul) = (take("plus")?, take("times")?);
        if let Some(extra) = tables.keys().next() {
            return Err(Error::UnknownOp(extra.clone()));
        }
        if size == 0 || add.len() != size * size || mul.len() != size * size {
            return Err(Error::InvalidTable(format!("ring {name}: tables must have {} entries", size * size)));
        }
        let zero = (0..size)
            .find(|&z| (0..size).all(|x| add[z * size + x] == x))
            .ok_or_else(|| Error::AxiomViolation(format!("ring {name}: no additive unit")))?;
        let one = (0..size)
            .find(|&u| (0..size).all(|x| mul[u * size + x] == x && mul[x * size + u] == x))
            .ok_or_else(|| Error::AxiomViolation(format!("ring {name}: no multiplicative unit")))?;
        let ring = FiniteRing::new(name.clone(), size, add, mul, zero, one)?;
        insert(&mut self.rings, "ring", name, Arc::new(ring))
    }

    fn module(&mut self, c: &mut Cursor<'_>) -> Result<()> {
        c.keyword("module")?;
        let name = c.ident("a module name")?;
        c.keyword("over")?;
        let ring = self.ring_named(&c.ident("a ring")?)?;
        let m = if c.eat_sym("=") {
            let kind = c.ident("`cyclic`, `regular`, `zero` or `sum`")?;
            let m = match kind.as_str() {
                "cyclic" => FiniteModule::cyclic(ring.clone(), c.int("a modulus")?)?,
                "regular" => FiniteModule::regular(ring.clone()),
                "zero" => FiniteModule::zero_module(ring.clone()),
                "sum" => {
                    let a = lookup(&self.modules, "module", &c.ident("a module")?)?.clone();
                    let b = lookup(&self.modules, "module", &c.ident("a module")?)?.clone();
                    FiniteModule::direct_sum(&a, &b)?
                }
                other => return Err(Error::UnknownName(format!("module constructor `{other}`"))),
            };
            c.finish()?;
            if m.ring() != &ring {
                return Err(Error::RingMismatch);
            }
            m.renamed(name.clone())
        } else {
            c.keyword("size")?;
            let size = declared_size(c)?;
            let tables = Self::tables(c)?;
            c.finish()?;
            let sig = crate::ring::module_signature(&ring);
            let mut tables = Self::ordered_tables(&sig, tables, &name)?.into_iter();
            let add = tables.next().expect("plus");
            let act: Vec<usize> = tables.skip(2).flatten().collect();
            FiniteModule::new(name.clone(), ring, size, add, act)?
        };
        insert(&mut self.modules, "module", name, m)
    }

    fn bimodule(&mut self, c: &mut Cursor<'_>) -> Result<()> {
        c.keyword("bimodule")?;
        let name = c.ident("a bimodule name")?;
        c.keyword("over")?;
        c.sym("(")?;
        let s = self.ring_named(&c.ident("a ring")?)?;
        c.sym(",")?;
        let r = self.ring_named(&c.ident("a ring")?)?;
        c.sym(")")?;
        let b = if c.eat_sym("=") {
            let kind = c.ident("`regular`, `symmetric` or `zero`")?;
            let b = match kind.as_str() {
                "regular" if s == r => Bimodule::regular(s.clone()),
                "regular" => return Err(Error::RingMismatch),
                "zero" => Bimodule::zero(s.clone(), r.clone()),
                "symmetric" => {
                    let m = lookup(&self.modules, "module", &c.ident("a module")?)?;
                    if m.ring() != &s || s != r {
                        return Err(Error::RingMismatch);
                    }
                    Bimodule::symmetric(m)?
                }
                other => return Err(Error::UnknownName(format!("bimodule constructor `{other}`"))),
            };
            c.finish()?;
            let mut b = b;
            b.name = name.clone();
            b
        } else {
            c.keyword("size")?;
            let size = declared_size(c)?;
            let mut tables = Self::tables(c)?;
            c.finish()?;
            let mut take = |op: String| {
                tables.remove(&op).ok_or_else(|| Error::InvalidTable(format!("bimodule {name}: no table for `{op}`")))
            };
            let add = take("plus".into())?;
            let mut left = Vec::new();
            for k in 0..s.size() {
                left.extend(take(format!("l{k}"))?);
            }
            let mut right = vec![0; size * r.size()];
            for k in 0..r.size() {
                let t = take(format!("r{k}"))?;
                if t.len() != size {
                    return Err(Error::InvalidTable(format!("bimodule {name}: table `r{k}` needs {size} entries")));
                }
                for (m, v) in t.into_iter().enumerate() {
                    right[m * r.size() + k] = v;
                }
            }
            if let Some(extra) = tables.keys().next() {
                return Err(Error::UnknownOp(extra.clone()));
            }
            Bimodule::new(name.clone(), s, r, size, add, left, right)?
        };
        insert(&mut self.bimodules, "bimodule", name, b)
    }

    fn calgebra(&mut self, c: &mut Cursor<'_>) -> Result<()> {
        c.keyword("calgebra")?;
        let name = c.ident("an algebra name")?;
        c.keyword("over")?;
        let ring = self.ring_named(&c.ident("a ring")?)?;
        let a = if c.eat_sym("=") {
            let kind = c.ident("`group` or `truncated`")?;
            let h = builtin_bialgebra(c, &kind, ring)?;
            c.finish()?;
            h.algebra
        } else {
            c.keyword("size")?;
            let size = declared_size(c)?;
            let mut tables = Self::tables(c)?;
            c.finish()?;
            let mut take = |op: String| {
                tables.remove(&op).ok_or_else(|| Error::InvalidTable(format!("{name}: no table for `{op}`")))
            };
            let add = take("plus".into())?;
            let mul = take("times".into())?;
            let act = (0..ring.size()).map(|r| take(format!("sc{r}"))).collect::<Result<Vec<_>>>()?;
            if let Some(extra) = tables.keys().next() {
                return Err(Error::UnknownOp(extra.clone()));
            }
            if add.len() != size * size || mul.len() != size * size || act.iter().any(|t| t.len() != size) {
                return Err(Error::InvalidTable(format!("{name}: malformed tables")));
            }
            if add.iter().chain(&mul).chain(act.iter().flatten()).any(|&v| v >= size) {
                return Err(Error::InvalidTable(format!("{name}: entry outside carrier")));
            }
            let one = (0..size)
                .find(|&u| (0..size).all(|x| mul[u * size + x] == x))
                .ok_or_else(|| Error::AxiomViolation(format!("{name}: no multiplicative unit")))?;
            let labels = (0..size).map(|x| x.to_string()).collect();
            FiniteCommAlgebra::from_fn(
                name.clone(),
                ring,
                size,
                |x, y| add[x * size + y],
                |x, y| mul[x * size + y],
                |r, x| act[r][x],
                one,
                labels,
            )?
        };
        insert(&mut self.calgebras, "calgebra", name, a)
    }

    fn bialgebra(&mut self, c: &mut Cursor<'_>) -> Result<()> {
        c.keyword("bialgebra")?;
        let name = c.ident("a bialgebra name")?;
        c.sym("=")?;
        let first = c.ident("a commutative algebra, `group` or `truncated`")?;
        let h = if matches!(first.as_str(), "group" | "truncated") {
            let ring = self.ring_named(&c.ident("a ring")?)?;
            let mut h = builtin_bialgebra(c, &first, ring)?;
            c.finish()?;
            h.name = name.clone();
            h
        } else {
            let a = lookup(&self.calgebras, "calgebra", &first)?.clone();
            let mut data = BialgebraData::default();
            let mut antipode = Vec::new();
            let mut has_antipode = false;
            while !c.at_end() {
                let what = c.ident("`delta`, `counit` or `antipode`")?;
                let x = c.int("an element")?;
                c.sym("=")?;
                match what.as_str() {
                    "delta" => {
                        let mut terms = Vec::new();
                        loop {
                            let l = c.int("an element")?;
                            c.sym("*")?;
                            let r = c.int("an element")?;
                            terms.push((l, r));
                            if !c.eat_sym("+") {
                                break;
                            }
                        }
                        data.delta.push((x, terms));
                    }
                    "counit" => data.counit.push((x, c.int("a ring element")?)),
                    "antipode" => {
                        has_antipode = true;
                        antipode.push((x, c.int("an element")?));
                    }
                    other => return Err(Error::UnknownName(format!("bialgebra clause `{other}`"))),
                }
                if !c.eat_sym(";") {
                    break;
                }
            }
            c.finish()?;
            let size = a.size();
            let ring_size = a.ring().size();
            let out_of_range =
                data.delta.iter().any(|(x, t)| *x >= size || t.iter().any(|&(l, r)| l >= size || r >= size))
                    || data.counit.iter().any(|&(x, r)| x >= size || r >= ring_size)
                    || antipode.iter().any(|&(x, y)| x >= size || y >= size);
            if out_of_range {
                return Err(Error::InvalidTable(format!("bialgebra {name}: element out of range")));
            }
            data.antipode = has_antipode.then_some(antipode);
            FiniteBialgebra::new(name.clone(), a, &data)?
        };
        insert(&mut self.bialgebras, "bialgebra", name, h)
    }

    fn coalgebra(&mut self, c: &mut Cursor<'_>) -> Result<()> {
        c.keyword("coalgebra")?;
        let name = c.ident("a coalgebra name")?;
        let mut co = if c.eat_sym("=") { self.derived_coalgebra(c)? } else { self.explicit_coalgebra(c)? };
        c.finish()?;
        co.name = name.clone();
        insert(&mut self.coalgebras, "coalgebra", name, co)
    }

    /// `V(phi, {x, ..})`, `N(phi, alg)`, `E(phi, alg, e)`, `bimodule M` or
    /// `bialgebra H`.
    fn derived_coalgebra(&self, c: &mut Cursor<'_>) -> Result<Coalgebra> {
        let kind = c.ident("`V`, `N`, `E`, `bimodule` or `bialgebra`")?;
        match kind.as_str() {
            "bimodule" => bimodule_coalgebra(lookup(&self.bimodules, "bimodule", &c.ident("a bimodule")?)?),
            "bialgebra" => lookup(&self.bialgebras, "bialgebra", &c.ident("a bialgebra")?)?.as_coalgebra(),
            "V" | "N" | "E" => {
                c.sym("(")?;
                let phi = lookup(&self.morphisms, "morphism", &c.ident("a morphism")?)?;
                c.sym(",")?;
                let out = if kind == "V" {
                    v_phi(phi, self.generators(c)?)?
                } else {
                    let a = self.carrier_algebra(c, phi)?;
                    if kind == "N" {
                        n_phi(phi, &a)?
                    } else {
                        c.sym(",")?;
                        constant_coalgebra(phi, &a, c.int("an element")?)?
                    }
                };
                c.sym(")")?;
                Ok(out)
            }
            other => Err(Error::UnknownName(format!("coalgebra constructor `{other}`"))),
        }
    }

    fn generators(&self, c: &mut Cursor<'_>) -> Result<Vec<Gen>> {
        c.sym("{")?;
        let mut gens: Vec<Gen> = Vec::new();
        if !c.eat_sym("}") {
            loop {
                let g = c.ident("a generator name")?;
                if g.contains('@') {
                    return Err(c.error::<()>("generator names may not contain `@`").unwrap_err().into());
                }
                let g = Gen::named(g);
                if gens.contains(&g) {
                    return Err(Error::DuplicateName(format!("generator `{g}`")));
                }
                gens.push(g);
                if c.eat_sym("}") {
                    break;
                }
                c.sym(",")?;
            }
        }
        Ok(gens)
    }

    fn carrier_algebra(&self, c: &mut Cursor<'_>, phi: &TheoryMorphism) -> Result<Obj> {
        let a = lookup(&self.algebras, "algebra", &c.ident("an algebra")?)?;
        if a.algebra.signature() != &phi.target.signature {
            return Err(Error::SignatureMismatch(format!(
                "{} is not an algebra for {}",
                a.algebra.name, phi.target.name
            )));
        }
        Ok(Obj::Finite(a.algebra.clone()))
    }

    /// `: <cotheory> in <backend> carrier (free {..} | finite <alg>)` then
    /// `coop <op> = [..]` per op, listing generator images for a free
    /// carrier and the full table for a finite one.
    fn explicit_coalgebra(&self, c: &mut Cursor<'_>) -> Result<Coalgebra> {
        c.sym(":")?;
        let (cotheory, _) = self.theory_ref(c)?;
        c.keyword("in")?;
        let backend = self.backend_ref(c)?;
        c.keyword("carrier")?;
        let carrier = match c.ident("`free` or `finite`")?.as_str() {
            "free" => backend.free(self.generators(c)?).0,
            "finite" => {
                let a = lookup(&self.algebras, "algebra", &c.ident("an algebra")?)?;
                if a.algebra.signature() != &backend.theory().signature {
                    return Err(Error::SignatureMismatch(format!(
                        "{} is not an algebra in {}",
                        a.algebra.name,
                        backend.name()
                    )));
                }
                Obj::Finite(a.algebra.clone())
            }
            other => return Err(Error::UnknownName(format!("carrier kind `{other}`"))),
        };
        let mut images: BTreeMap<String, Vec<Raw>> = BTreeMap::new();
        while c.eat_keyword("coop") {
            let op = c.ident("a cotheory op")?;
            c.sym("=")?;
            c.sym("[")?;
            let mut list = Vec::new();
            if !c.eat_sym("]") {
                loop {
                    list.push(c.raw_term()?);
                    if c.eat_sym("]") {
                        break;
                    }
                    c.sym(",")?;
                }
            }
            if images.insert(op.clone(), list).is_some() {
                return Err(Error::DuplicateOp(op));
            }
        }
        let mut coops = Vec::new();
        for op in cotheory.signature.ops() {
            let raw = images.remove(&op.name).ok_or_else(|| Error::MissingAssignment(op.name.clone()))?;
            let target = backend.copower(&carrier, op.arity)?.obj;
            let elems = raw.iter().map(|r| element(&backend, &target, r)).collect::<Result<Vec<_>>>()?;
            coops.push(match &carrier {
                Obj::Free(_) => backend.hom_from_gens(&carrier, &target, elems)?,
                Obj::Finite(_) => backend.hom_from_table(&carrier, &target, elems)?,
            });
        }
        if let Some(extra) = images.keys().next() {
            return Err(Error::UnknownOp(extra.clone()));
        }
        Coalgebra::new("coalgebra", cotheory, backend, carrier, coops)
    }
}

fn declared_size(c: &mut Cursor<'_>) -> Result<usize> {
    let size = c.int("a size")?;
    if size > MAX_DECLARED_SIZE {
        return Err(Error::CapExceeded(format!("declared size {size} (at most {MAX_DECLARED_SIZE})")));
    }
    Ok(size)
}

/// `group C<n>` or `truncated <n>` over `ring`, after the keyword.
fn builtin_bialgebra(c: &mut Cursor<'_>, kind: &str, ring: Arc<FiniteRing>) -> Result<FiniteBialgebra> {
    match kind {
        "group" => {
            let g = c.ident("a cyclic group `C<n>`")?;
            let n = g
                .strip_prefix('C')
                .and_then(|n| n.parse::<usize>().ok())
                .filter(|&n| (1..=MAX_BUILTIN_MODULUS).contains(&n))
                .ok_or_else(|| Error::UnknownName(format!("group `{g}`")))?;
            let (g, names) = cyclic_group(n);
            group_algebra(ring, &g, &names)
        }
        "truncated" => truncated_polynomial(ring, c.int("a truncation degree")?),
        other => Err(Error::UnknownName(format!("bialgebra constructor `{other}`"))),
    }
}

/// An element of `obj`: an index for finite objects, a term over the
/// backend ops and the generator names otherwise.
fn element(b: &VarietyBackend, obj: &Obj, raw: &Raw) -> Result<Elem> {
    match (obj, &raw.head, &raw.args) {
        (Obj::Finite(a), Head::Int(n), None) if *n < a.size() => Ok(Elem::Fin(*n)),
        (Obj::Finite(a), _, _) => raw.fail(format!("expected an element index below {}", a.size())),
        (Obj::Free(gens), _, _) => {
            let t = raw.to_element_term(&b.theory().signature, gens)?;
            t.check(&b.theory().signature, gens.len())?;
            let env: Vec<Elem> = (0..gens.len()).map(|i| b.free_gen(gens.len(), i)).collect();
            b.eval_term(obj, &t, &env)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monoid_theory() {
        let t =
            parse_theory("theory Mon ops m/2 e/0 eqs m(m(x1,x2),x3)=m(x1,m(x2,x3)); m(e,x1)=x1; m(x1,e)=x1").unwrap();
        assert_eq!((t.signature.len(), t.equations.len()), (2, 3));
        assert_eq!(t.equations[0].context, 3);
    }

    #[test]
    fn empty_theory() {
        let t = parse_theory("theory Triv ops eqs").unwrap();
        assert!(t.signature.is_empty() && t.equations.is_empty());
        assert_eq!(t.to_string(), "theory Triv ops eqs");
    }

    #[test]
    fn arity_mismatch() {
        assert!(matches!(parse_theory("theory Bad ops m/2 eqs m(x1)=x1"), Err(Error::ArityMismatch { .. })));
    }

    #[test]
    fn duplicate_op() {
        assert!(matches!(parse_theory("theory D ops m/2 m/1 eqs"), Err(Error::DuplicateOp(_))));
    }

    #[test]
    fn syntax_error_position() {
        let err = parse_theory("theory T ops m/2 eqs\n  m(x1,x2=x1").unwrap_err();
        match err {
            Error::Parse(p) => assert_eq!((p.line, p.column), (2, 10)),
            e => panic!("{e:?}"),
        }
    }
}
