//! Words in the crossed-monoidal operations, structural morphisms between their values,
//! and a bounded coherence checker.
//!
//! Grammar: `1` | `_i` | `(w * w)` | `g<w>`, where `g` names an element of G.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use rayon::prelude::*;
use serde_json::{json, Value};
use thiserror::Error;

use crate::category::PointedCrossedCategory;
use crate::group::FiniteGroup;
use crate::report::VerificationReport;
use crate::scalar::{add, neg, sub, UnitScalar};

/// Surface syntax tree; element names are resolved against a group later.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Word {
    Unit,
    Hole(usize),
    Tensor(Box<Word>, Box<Word>),
    Act(String, Box<Word>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at column {column}: {message}")]
pub struct SyntaxError {
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("word has arity {word}, got {objects} objects")]
    ArityMismatch { word: usize, objects: usize },
    #[error("holes must be numbered 1..n from left to right, found {0:?}")]
    HoleOrder(Vec<usize>),
    #[error("unknown group element {0:?}")]
    UnknownElement(String),
    #[error("label {0} out of range")]
    BadLabel(usize),
    #[error("endpoint mismatch: {expected} vs {got}")]
    EndpointMismatch { expected: String, got: String },
    #[error("J^{g} needs ∂y ▷₂ g on the left factor")]
    Untyped { g: usize },
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Word::Unit => write!(f, "1"),
            Word::Hole(i) => write!(f, "_{i}"),
            Word::Tensor(a, b) => write!(f, "({a} * {b})"),
            Word::Act(g, w) => write!(f, "{g}<{w}>"),
        }
    }
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    _src: &'a str,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, SyntaxError> {
        Err(SyntaxError { column: self.pos + 1, message: message.into() })
    }

    fn expect(&mut self, c: char) -> Result<(), SyntaxError> {
        self.skip_ws();
        if self.chars.get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            match self.chars.get(self.pos) {
                Some(found) => self.err(format!("expected '{c}', found '{found}'")),
                None => self.err(format!("expected '{c}', found end of input")),
            }
        }
    }

    fn word(&mut self) -> Result<Word, SyntaxError> {
        self.skip_ws();
        let Some(&c) = self.chars.get(self.pos) else {
            return self.err("unexpected end of input");
        };
        match c {
            '1' => {
                self.pos += 1;
                Ok(Word::Unit)
            }
            '_' => {
                self.pos += 1;
                let start = self.pos;
                while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                if start == self.pos {
                    return self.err("expected hole number after '_'");
                }
                let digits: String = self.chars[start..self.pos].iter().collect();
                match digits.parse() {
                    Ok(i) => Ok(Word::Hole(i)),
                    Err(_) => Err(SyntaxError { column: start + 1, message: "hole number too large".into() }),
                }
            }
            '(' => {
                self.pos += 1;
                let a = self.word()?;
                self.expect('*')?;
                let b = self.word()?;
                self.expect(')')?;
                Ok(Word::Tensor(Box::new(a), Box::new(b)))
            }
            c if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.chars.len() && (self.chars[self.pos].is_ascii_alphanumeric() || self.chars[self.pos] == '_') {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                self.expect('<')?;
                let w = self.word()?;
                self.expect('>')?;
                Ok(Word::Act(name, Box::new(w)))
            }
            other => self.err(format!("unexpected '{other}'")),
        }
    }
}

pub fn parse_word(text: &str) -> Result<Word, SyntaxError> {
    let mut p = Parser { chars: text.chars().collect(), pos: 0, _src: text };
    let w = p.word()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return p.err("trailing input");
    }
    Ok(w)
}

impl Word {
    pub fn nodes(&self) -> usize {
        match self {
            Word::Unit | Word::Hole(_) => 1,
            Word::Tensor(a, b) => 1 + a.nodes() + b.nodes(),
            Word::Act(_, w) => 1 + w.nodes(),
        }
    }

    fn holes_into(&self, out: &mut Vec<usize>) {
        match self {
            Word::Unit => {}
            Word::Hole(i) => out.push(*i),
            Word::Tensor(a, b) => {
                a.holes_into(out);
                b.holes_into(out);
            }
            Word::Act(_, w) => w.holes_into(out),
        }
    }

    pub fn holes(&self) -> Vec<usize> {
        let mut v = Vec::new();
        self.holes_into(&mut v);
        v
    }

    /// Number of holes, provided they read 1..n from left to right.
    pub fn arity(&self) -> Result<usize, WordError> {
        let h = self.holes();
        if h.iter().enumerate().all(|(i, &x)| x == i + 1) {
            Ok(h.len())
        } else {
            Err(WordError::HoleOrder(h))
        }
    }

    pub fn resolve(&self, g: &FiniteGroup) -> Result<Term, WordError> {
        Ok(match self {
            Word::Unit => Term::Unit,
            Word::Hole(i) => Term::Hole(*i),
            Word::Tensor(a, b) => Term::Tensor(Box::new(a.resolve(g)?), Box::new(b.resolve(g)?)),
            Word::Act(name, w) => {
                let x = g.element_by_name(name).ok_or_else(|| WordError::UnknownElement(name.clone()))?;
                Term::Act(x, Box::new(w.resolve(g)?))
            }
        })
    }
}

/// A word with group elements resolved to indices. Holes are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Unit,
    Hole(usize),
    Tensor(Box<Term>, Box<Term>),
    Act(usize, Box<Term>),
}

impl Term {
    pub fn tensor(a: Term, b: Term) -> Term {
        Term::Tensor(Box::new(a), Box::new(b))
    }

    pub fn act(g: usize, w: Term) -> Term {
        Term::Act(g, Box::new(w))
    }

    pub fn nodes(&self) -> usize {
        match self {
            Term::Unit | Term::Hole(_) => 1,
            Term::Tensor(a, b) => 1 + a.nodes() + b.nodes(),
            Term::Act(_, w) => 1 + w.nodes(),
        }
    }

    pub fn max_hole(&self) -> usize {
        match self {
            Term::Unit => 0,
            Term::Hole(i) => *i,
            Term::Tensor(a, b) => a.max_hole().max(b.max_hole()),
            Term::Act(_, w) => w.max_hole(),
        }
    }

    pub fn shift(&self, k: usize) -> Term {
        match self {
            Term::Unit => Term::Unit,
            Term::Hole(i) => Term::Hole(i + k),
            Term::Tensor(a, b) => Term::tensor(a.shift(k), b.shift(k)),
            Term::Act(g, w) => Term::act(*g, w.shift(k)),
        }
    }

    /// Replaces hole i by `args[i-1]`.
    pub fn substitute(&self, args: &[Term]) -> Term {
        match self {
            Term::Unit => Term::Unit,
            Term::Hole(i) => args[i - 1].clone(),
            Term::Tensor(a, b) => Term::tensor(a.substitute(args), b.substitute(args)),
            Term::Act(g, w) => Term::act(*g, w.substitute(args)),
        }
    }

    pub fn to_word(&self, g: &FiniteGroup) -> Word {
        match self {
            Term::Unit => Word::Unit,
            Term::Hole(i) => Word::Hole(*i),
            Term::Tensor(a, b) => Word::Tensor(Box::new(a.to_word(g)), Box::new(b.to_word(g))),
            Term::Act(x, w) => Word::Act(g.element_name(*x), Box::new(w.to_word(g))),
        }
    }

    pub fn render(&self, g: &FiniteGroup) -> String {
        self.to_word(g).to_string()
    }

    /// Label of the value; holes index `objects` from 1.
    pub fn eval(&self, objects: &[usize], cat: &PointedCrossedCategory) -> usize {
        match self {
            Term::Unit => cat.lambda.identity(),
            Term::Hole(i) => objects[i - 1],
            Term::Tensor(a, b) => cat.lmul(a.eval(objects, cat), b.eval(objects, cat)),
            Term::Act(g, w) => cat.act(*g, w.eval(objects, cat)),
        }
    }
}

fn check_objects(objects: &[usize], cat: &PointedCrossedCategory) -> Result<(), WordError> {
    match objects.iter().find(|&&l| l >= cat.n_l()) {
        Some(&l) => Err(WordError::BadLabel(l)),
        None => Ok(()),
    }
}

pub fn eval_word(w: &Word, objects: &[usize], cat: &PointedCrossedCategory) -> Result<usize, WordError> {
    let n = w.arity()?;
    if n != objects.len() {
        return Err(WordError::ArityMismatch { word: n, objects: objects.len() });
    }
    check_objects(objects, cat)?;
    Ok(w.resolve(cat.g())?.eval(objects, cat))
}

// ---------------------------------------------------------------------------

/// Structural morphisms. Words inside use the holes of the ambient object tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Morph {
    Id(Term),
    /// ((x*y)*z) → (x*(y*z))
    A(Term, Term, Term),
    /// (1*x) → x
    L(Term),
    /// (x*1) → x
    R(Term),
    /// ((∂y▷₂g)<x> * g<y>) → g<(x*y)>
    J { g: usize, x: Term, y: Term },
    /// 1 → g<1>
    Phi(usize),
    /// g<h<x>> → (gh)<x>
    Chi { g: usize, h: usize, x: Term },
    /// x → e<x>
    Iota(Term),
    Inv(Box<Morph>),
    /// `Compose(f, g)` is f∘g.
    Compose(Box<Morph>, Box<Morph>),
    /// A context word with holes 1..k applied to k morphisms.
    Apply(Term, Vec<Morph>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Evaluated {
    pub source: Term,
    pub target: Term,
    pub source_label: usize,
    pub target_label: usize,
    pub coefficient: UnitScalar,
}

impl Morph {
    pub fn render(&self, g: &FiniteGroup) -> String {
        let w = |t: &Term| t.render(g);
        let n = |x: usize| g.element_name(x);
        match self {
            Morph::Id(t) => format!("id[{}]", w(t)),
            Morph::A(x, y, z) => format!("a[{}, {}, {}]", w(x), w(y), w(z)),
            Morph::L(x) => format!("l[{}]", w(x)),
            Morph::R(x) => format!("r[{}]", w(x)),
            Morph::J { g: a, x, y } => format!("J[{}; {}, {}]", n(*a), w(x), w(y)),
            Morph::Phi(a) => format!("phi[{}]", n(*a)),
            Morph::Chi { g: a, h, x } => format!("chi[{}, {}; {}]", n(*a), n(*h), w(x)),
            Morph::Iota(x) => format!("iota[{}]", w(x)),
            Morph::Inv(f) => format!("inv({})", f.render(g)),
            Morph::Compose(f, h) => format!("({} . {})", f.render(g), h.render(g)),
            Morph::Apply(ctx, fs) => format!(
                "{}{{{}}}",
                w(ctx),
                fs.iter().map(|f| f.render(g)).collect::<Vec<_>>().join(", ")
            ),
        }
    }

    /// Endpoints as words, and the scalar exponent.
    fn eval_raw(&self, objects: &[usize], cat: &PointedCrossedCategory) -> Result<(Term, Term, u32), WordError> {
        let m = cat.m;
        let e = cat.g().identity();
        Ok(match self {
            Morph::Id(t) => (t.clone(), t.clone(), 0),
            Morph::A(x, y, z) => (
                Term::tensor(Term::tensor(x.clone(), y.clone()), z.clone()),
                Term::tensor(x.clone(), Term::tensor(y.clone(), z.clone())),
                0,
            ),
            Morph::L(x) => (Term::tensor(Term::Unit, x.clone()), x.clone(), 0),
            Morph::R(x) => (Term::tensor(x.clone(), Term::Unit), x.clone(), 0),
            Morph::J { g, x, y } => {
                let (lx, ly) = (x.eval(objects, cat), y.eval(objects, cat));
                let k = cat.twist(ly, *g);
                (
                    Term::tensor(Term::act(k, x.clone()), Term::act(*g, y.clone())),
                    Term::act(*g, Term::tensor(x.clone(), y.clone())),
                    cat.j_at(*g, lx, ly),
                )
            }
            Morph::Phi(g) => (Term::Unit, Term::act(*g, Term::Unit), cat.phi_at(*g)),
            Morph::Chi { g, h, x } => (
                Term::act(*g, Term::act(*h, x.clone())),
                Term::act(cat.g().mul(*g, *h), x.clone()),
                cat.chi_at(*g, *h, x.eval(objects, cat)),
            ),
            Morph::Iota(x) => (x.clone(), Term::act(e, x.clone()), cat.iota_at(x.eval(objects, cat))),
            Morph::Inv(f) => {
                let (s, t, c) = f.eval_raw(objects, cat)?;
                (t, s, neg(c, m))
            }
            Morph::Compose(f, h) => {
                let (s1, t1, c1) = h.eval_raw(objects, cat)?;
                let (s2, t2, c2) = f.eval_raw(objects, cat)?;
                if t1 != s2 {
                    return Err(WordError::EndpointMismatch { expected: t1.render(cat.g()), got: s2.render(cat.g()) });
                }
                (s1, t2, add(c1, c2, m))
            }
            Morph::Apply(ctx, fs) => {
                let k = ctx.max_hole();
                let holes = ctx.to_word(cat.g()).arity()?;
                if holes != fs.len() || k != fs.len() {
                    return Err(WordError::ArityMismatch { word: holes, objects: fs.len() });
                }
                let mut srcs = Vec::with_capacity(k);
                let mut tgts = Vec::with_capacity(k);
                let mut c = 0;
                for f in fs {
                    let (s, t, x) = f.eval_raw(objects, cat)?;
                    srcs.push(s);
                    tgts.push(t);
                    c = add(c, x, m);
                }
                (ctx.substitute(&srcs), ctx.substitute(&tgts), c)
            }
        })
    }
}

pub fn eval_structural(f: &Morph, objects: &[usize], cat: &PointedCrossedCategory) -> Result<Evaluated, WordError> {
    check_objects(objects, cat)?;
    let (source, target, c) = f.eval_raw(objects, cat)?;
    for t in [&source, &target] {
        if t.max_hole() > objects.len() {
            return Err(WordError::ArityMismatch { word: t.max_hole(), objects: objects.len() });
        }
    }
    let (source_label, target_label) = (source.eval(objects, cat), target.eval(objects, cat));
    if source_label != target_label {
        return Err(WordError::EndpointMismatch {
            expected: format!("label {source_label}"),
            got: format!("label {target_label}"),
        });
    }
    Ok(Evaluated { source, target, source_label, target_label, coefficient: UnitScalar::Root(c) })
}

// ---------------------------------------------------------------------------
// Normal forms: a word's value flattened to ^{g_1}λ_1 ⊗ … ⊗ ^{g_n}λ_n.

/// Flat form of a word and the exponent of the canonical map word → flat form.
pub fn normal_form(t: &Term, objects: &[usize], cat: &PointedCrossedCategory) -> (Vec<(usize, usize)>, u32) {
    let m = cat.m;
    match t {
        Term::Unit => (Vec::new(), 0),
        Term::Hole(i) => {
            let l = objects[i - 1];
            (vec![(cat.g().identity(), l)], cat.iota_at(l))
        }
        Term::Tensor(a, b) => {
            let (mut x, c1) = normal_form(a, objects, cat);
            let (y, c2) = normal_form(b, objects, cat);
            x.extend(y);
            (x, add(c1, c2, m))
        }
        Term::Act(g, w) => {
            let (mut flat, c) = normal_form(w, objects, cat);
            let split = act_on_flat(*g, &mut flat, cat);
            (flat, add(c, split, m))
        }
    }
}

/// Rewrites ^g(⊗ ^{g_i}λ_i) into ⊗ ^{g'_i g_i}λ_i in place, peeling factors off the right.
fn act_on_flat(g: usize, flat: &mut [(usize, usize)], cat: &PointedCrossedCategory) -> u32 {
    let m = cat.m;
    if flat.is_empty() {
        return neg(cat.phi_at(g), m);
    }
    let mut c = 0;
    let mut k = g;
    let mut rest_label;
    for i in (0..flat.len()).rev() {
        let (gi, li) = flat[i];
        let y = cat.act(gi, li);
        if i > 0 {
            rest_label = flat[..i].iter().fold(cat.lambda.identity(), |acc, &(a, b)| cat.lmul(acc, cat.act(a, b)));
            // ^k(A ⊗ Y) → ^{∂Y▷₂k}A ⊗ ^kY
            c = sub(c, cat.j_at(k, rest_label, y), m);
        }
        c = add(c, cat.chi_at(k, gi, li), m);
        flat[i] = (cat.g().mul(k, gi), li);
        k = cat.twist(y, k);
    }
    c
}

/// Exponent of the structural map w → w' predicted by normal forms, if they agree.
pub fn predicted_coefficient(w: &Term, w2: &Term, objects: &[usize], cat: &PointedCrossedCategory) -> Option<u32> {
    let (f1, c1) = normal_form(w, objects, cat);
    let (f2, c2) = normal_form(w2, objects, cat);
    (f1 == f2).then(|| sub(c1, c2, cat.m))
}

// ---------------------------------------------------------------------------
// Bounded coherence search.

/// All words with `holes` holes numbered 1..holes in order and at most `max_nodes` nodes.
pub fn enumerate_words(n_g: usize, holes: usize, max_nodes: usize) -> Vec<Term> {
    let mut memo: HashMap<(usize, usize), Vec<Term>> = HashMap::new();
    fn gen(nodes: usize, holes: usize, n_g: usize, memo: &mut HashMap<(usize, usize), Vec<Term>>) -> Vec<Term> {
        if let Some(v) = memo.get(&(nodes, holes)) {
            return v.clone();
        }
        let mut out = Vec::new();
        if nodes == 1 {
            match holes {
                0 => out.push(Term::Unit),
                1 => out.push(Term::Hole(1)),
                _ => {}
            }
        } else if nodes > 1 && nodes >= 2 * holes {
            for inner in gen(nodes - 1, holes, n_g, memo) {
                for g in 0..n_g {
                    out.push(Term::act(g, inner.clone()));
                }
            }
            for na in 1..nodes - 1 {
                let nb = nodes - 1 - na;
                for ha in 0..=holes {
                    let left = gen(na, ha, n_g, memo);
                    if left.is_empty() {
                        continue;
                    }
                    let right = gen(nb, holes - ha, n_g, memo);
                    for a in &left {
                        for b in &right {
                            out.push(Term::tensor(a.clone(), b.shift(ha)));
                        }
                    }
                }
            }
        }
        memo.insert((nodes, holes), out.clone());
        out
    }
    let mut all = Vec::new();
    for nodes in 1..=max_nodes {
        all.extend(gen(nodes, holes, n_g, &mut memo));
    }
    all
}

/// One rewriting step at the root of a subterm, before whiskering.
fn root_steps(t: &Term, objects: &[usize], cat: &PointedCrossedCategory, grow: bool, out: &mut Vec<(Term, u32, Morph)>) {
    let e = cat.g().identity();
    if let Term::Tensor(a, b) = t {
        if let Term::Tensor(x, y) = a.as_ref() {
            out.push((
                Term::tensor((**x).clone(), Term::tensor((**y).clone(), (**b).clone())),
                0,
                Morph::A((**x).clone(), (**y).clone(), (**b).clone()),
            ));
        }
        if **a == Term::Unit {
            out.push(((**b).clone(), 0, Morph::L((**b).clone())));
        }
        if **b == Term::Unit {
            out.push(((**a).clone(), 0, Morph::R((**a).clone())));
        }
        if let (Term::Act(k, x), Term::Act(g, y)) = (a.as_ref(), b.as_ref()) {
            let ly = y.eval(objects, cat);
            if cat.twist(ly, *g) == *k {
                let lx = x.eval(objects, cat);
                out.push((
                    Term::act(*g, Term::tensor((**x).clone(), (**y).clone())),
                    cat.j_at(*g, lx, ly),
                    Morph::J { g: *g, x: (**x).clone(), y: (**y).clone() },
                ));
            }
        }
    }
    if let Term::Act(g, inner) = t {
        if let Term::Act(h, x) = inner.as_ref() {
            out.push((
                Term::act(cat.g().mul(*g, *h), (**x).clone()),
                cat.chi_at(*g, *h, x.eval(objects, cat)),
                Morph::Chi { g: *g, h: *h, x: (**x).clone() },
            ));
        }
    }
    if grow {
        if *t == Term::Unit {
            for g in cat.g().elements() {
                out.push((Term::act(g, Term::Unit), cat.phi_at(g), Morph::Phi(g)));
            }
        }
        out.push((Term::act(e, t.clone()), cat.iota_at(t.eval(objects, cat)), Morph::Iota(t.clone())));
    }
}

/// Context for whiskering: `t` with the subterm at `path` replaced by a marker hole, other
/// holes kept, then renumbered left to right. Returns the context and the marker's slot.
fn whisker(t: &Term, path: &[u8], f: Morph) -> Morph {
    fn build(t: &Term, path: &[u8], slots: &mut Vec<Option<Term>>, marker: &mut Option<usize>) -> Term {
        if path.is_empty() {
            slots.push(None);
            *marker = Some(slots.len());
            return Term::Hole(slots.len());
        }
        match t {
            Term::Tensor(a, b) => {
                if path[0] == 0 {
                    let l = build(a, &path[1..], slots, marker);
                    let r = keep(b, slots);
                    Term::tensor(l, r)
                } else {
                    let l = keep(a, slots);
                    let r = build(b, &path[1..], slots, marker);
                    Term::tensor(l, r)
                }
            }
            Term::Act(g, w) => Term::act(*g, build(w, &path[1..], slots, marker)),
            _ => unreachable!("path leads into a leaf"),
        }
    }
    fn keep(t: &Term, slots: &mut Vec<Option<Term>>) -> Term {
        match t {
            Term::Unit => Term::Unit,
            Term::Hole(_) => {
                slots.push(Some(t.clone()));
                Term::Hole(slots.len())
            }
            Term::Tensor(a, b) => {
                let l = keep(a, slots);
                let r = keep(b, slots);
                Term::tensor(l, r)
            }
            Term::Act(g, w) => Term::act(*g, keep(w, slots)),
        }
    }
    if path.is_empty() {
        return f;
    }
    let mut slots = Vec::new();
    let mut marker = None;
    let ctx = build(t, path, &mut slots, &mut marker);
    let mut f = Some(f);
    let args = slots
        .into_iter()
        .map(|s| match s {
            Some(h) => Morph::Id(h),
            None => f.take().expect("one marker"),
        })
        .collect();
    Morph::Apply(ctx, args)
}

/// Every single generator step out of `t`, whiskered into place.
pub fn steps(t: &Term, objects: &[usize], cat: &PointedCrossedCategory, max_nodes: usize) -> Vec<(Term, u32, Morph)> {
    let grow = t.nodes() < max_nodes;
    let mut out = Vec::new();
    fn rec(
        sub: &Term,
        path: &mut Vec<u8>,
        objects: &[usize],
        cat: &PointedCrossedCategory,
        grow: bool,
        out: &mut Vec<(Term, u32, Morph, Vec<u8>)>,
    ) {
        let mut here = Vec::new();
        root_steps(sub, objects, cat, grow, &mut here);
        out.extend(here.into_iter().map(|(t, c, f)| (t, c, f, path.clone())));
        match sub {
            Term::Tensor(a, b) => {
                path.push(0);
                rec(a, path, objects, cat, grow, out);
                path.pop();
                path.push(1);
                rec(b, path, objects, cat, grow, out);
                path.pop();
            }
            Term::Act(_, w) => {
                path.push(0);
                rec(w, path, objects, cat, grow, out);
                path.pop();
            }
            _ => {}
        }
    }
    let mut raw = Vec::new();
    rec(t, &mut Vec::new(), objects, cat, grow, &mut raw);
    for (new_sub, c, f, path) in raw {
        let whole = replace_at(t, &path, new_sub);
        out.push((whole, c, whisker(t, &path, f)));
    }
    out
}

fn replace_at(t: &Term, path: &[u8], new: Term) -> Term {
    if path.is_empty() {
        return new;
    }
    match t {
        Term::Tensor(a, b) if path[0] == 0 => Term::tensor(replace_at(a, &path[1..], new), (**b).clone()),
        Term::Tensor(a, b) => Term::tensor((**a).clone(), replace_at(b, &path[1..], new)),
        Term::Act(g, w) => Term::act(*g, replace_at(w, &path[1..], new)),
        _ => unreachable!(),
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TupleStats {
    pub vertices: usize,
    pub edges: usize,
    pub components: usize,
    /// Ordered pairs of distinct words with a structural morphism between them.
    pub parallel_pairs: u64,
}

/// Weighted union-find over ℤ/M: `pot[x]` is the exponent of the map x → root.
struct Potentials {
    parent: Vec<usize>,
    pot: Vec<u32>,
    m: u32,
}

impl Potentials {
    fn new(n: usize, m: u32) -> Self {
        Potentials { parent: (0..n).collect(), pot: vec![0; n], m }
    }

    fn find(&mut self, x: usize) -> (usize, u32) {
        let p = self.parent[x];
        if p == x {
            return (x, 0);
        }
        let (root, pp) = self.find(p);
        self.pot[x] = add(self.pot[x], pp, self.m);
        self.parent[x] = root;
        (root, self.pot[x])
    }

    /// Records a morphism u → v with exponent c. `false` when it contradicts earlier ones.
    fn relate(&mut self, u: usize, v: usize, c: u32) -> bool {
        let (ru, pu) = self.find(u);
        let (rv, pv) = self.find(v);
        // u → root via pu; u → v → rv via c + pv.
        if ru == rv {
            return pu == add(c, pv, self.m);
        }
        self.parent[ru] = rv;
        // ru → u → v → rv
        self.pot[ru] = add(sub(c, pu, self.m), pv, self.m);
        true
    }
}

/// Checks that parallel structural composites agree for one object tuple.
pub fn check_tuple(
    cat: &PointedCrossedCategory,
    words: &[Term],
    index: &HashMap<Term, usize>,
    objects: &[usize],
    max_nodes: usize,
) -> (TupleStats, Option<Value>) {
    let n = words.len();
    let mut uf = Potentials::new(n, cat.m);
    let mut edges: Vec<(usize, usize, u32)> = Vec::new();
    let mut bad = None;
    for (u, w) in words.iter().enumerate() {
        for (t, c, _) in steps(w, objects, cat, max_nodes) {
            if let Some(&v) = index.get(&t) {
                edges.push((u, v, c));
                if !uf.relate(u, v, c) && bad.is_none() {
                    bad = Some(edges.len() - 1);
                }
            }
        }
    }
    let mut sizes: HashMap<usize, u64> = HashMap::new();
    for x in 0..n {
        *sizes.entry(uf.find(x).0).or_default() += 1;
    }
    let stats = TupleStats {
        vertices: n,
        edges: edges.len(),
        components: sizes.len(),
        parallel_pairs: sizes.values().map(|s| s * (s - 1)).sum(),
    };
    let witness = bad.map(|k| witness_for(cat, words, &edges, k, objects, max_nodes));
    (stats, witness)
}

/// Two parallel composites with different coefficients, around the offending edge.
fn witness_for(
    cat: &PointedCrossedCategory,
    words: &[Term],
    edges: &[(usize, usize, u32)],
    bad: usize,
    objects: &[usize],
    max_nodes: usize,
) -> Value {
    let (u, v, c) = edges[bad];
    let m = cat.m;
    // Path u ⇝ v through the edges recorded before `bad`, in both directions.
    let mut adj: HashMap<usize, Vec<(usize, usize, bool)>> = HashMap::new();
    for (k, &(a, b, _)) in edges[..bad].iter().enumerate() {
        adj.entry(a).or_default().push((b, k, true));
        adj.entry(b).or_default().push((a, k, false));
    }
    let mut prev: HashMap<usize, (usize, usize, bool)> = HashMap::new();
    let mut queue = VecDeque::from([u]);
    prev.insert(u, (u, usize::MAX, true));
    while let Some(x) = queue.pop_front() {
        if x == v {
            break;
        }
        for &(y, k, fwd) in adj.get(&x).map(|v| v.as_slice()).unwrap_or(&[]) {
            if let std::collections::hash_map::Entry::Vacant(e) = prev.entry(y) {
                e.insert((x, k, fwd));
                queue.push_back(y);
            }
        }
    }
    let describe = |k: usize| -> Morph {
        let (a, b, _) = edges[k];
        steps(&words[a], objects, cat, max_nodes)
            .into_iter()
            .find(|(t, _, _)| *t == words[b])
            .map(|(_, _, f)| f)
            .expect("edge regenerates")
    };
    let mut path_morph: Option<Morph> = None;
    let mut path_coef = 0;
    let mut x = v;
    let mut chain = Vec::new();
    while x != u {
        let (p, k, fwd) = prev[&x];
        chain.push((k, fwd));
        x = p;
    }
    chain.reverse();
    for (k, fwd) in chain {
        let step = describe(k);
        let (step, sc) = if fwd { (step, edges[k].2) } else { (Morph::Inv(Box::new(step)), neg(edges[k].2, m)) };
        path_coef = add(path_coef, sc, m);
        path_morph = Some(match path_morph {
            None => step,
            Some(f) => Morph::Compose(Box::new(step), Box::new(f)),
        });
    }
    let lhs = path_morph.unwrap_or_else(|| Morph::Id(words[u].clone()));
    let rhs = describe(bad);
    let g = cat.g();
    json!({
        "objects": objects,
        "source": words[u].render(g),
        "target": words[v].render(g),
        "lhs": lhs.render(g),
        "lhs_exponent": path_coef,
        "rhs": rhs.render(g),
        "rhs_exponent": c,
    })
}

/// Coherence for one object tuple: all words of that arity up to `max_nodes` nodes.
pub fn check_coherence(cat: &PointedCrossedCategory, max_nodes: usize, objects: &[usize]) -> VerificationReport {
    let words = enumerate_words(cat.n_g(), objects.len(), max_nodes);
    let index: HashMap<Term, usize> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
    let (stats, witness) = check_tuple(cat, &words, &index, objects, max_nodes);
    let mut r = VerificationReport::new();
    r.check(format!("coherence.arity{}", objects.len()), witness);
    r.stats = Some(json!({
        "vertices": stats.vertices,
        "edges": stats.edges,
        "components": stats.components,
        "parallel_pairs": stats.parallel_pairs,
    }));
    r
}

/// Coherence for every object tuple of every arity up to `max_arity`.
pub fn check_coherence_all(cat: &PointedCrossedCategory, max_nodes: usize, max_arity: usize) -> VerificationReport {
    let mut r = VerificationReport::new();
    let mut stats = serde_json::Map::new();
    let nl = cat.n_l();
    for arity in 0..=max_arity {
        let words = enumerate_words(cat.n_g(), arity, max_nodes);
        let index: HashMap<Term, usize> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let tuples = nl.pow(arity as u32);
        let results: Vec<(TupleStats, Option<Value>)> = (0..tuples)
            .into_par_iter()
            .map(|code| {
                let mut objects = vec![0; arity];
                let mut rem = code;
                for slot in objects.iter_mut().rev() {
                    *slot = rem % nl;
                    rem /= nl;
                }
                check_tuple(cat, &words, &index, &objects, max_nodes)
            })
            .collect();
        let witness = results.iter().find_map(|(_, w)| w.clone());
        r.check(format!("coherence.arity{arity}"), witness);
        let pairs: u64 = results.iter().map(|(s, _)| s.parallel_pairs).sum();
        let comps: usize = results.iter().map(|(s, _)| s.components).sum();
        let edges: usize = results.iter().map(|(s, _)| s.edges).sum();
        stats.insert(
            format!("arity{arity}"),
            json!({"words": words.len(), "tuples": tuples, "edges": edges, "components": comps, "parallel_pairs": pairs}),
        );
    }
    stats.insert("max_nodes".into(), json!(max_nodes));
    r.stats = Some(Value::Object(stats));
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::vec_gamma;
    use crate::group::{cyclic, trivial, GroupHom};
    use crate::matched::MatchedPair;
    use proptest::prelude::*;

    fn cocycle_category() -> PointedCrossedCategory {
        let mp = MatchedPair::trivial(cyclic(2), trivial());
        let lam = cyclic(2);
        let grading = GroupHom::trivial(lam.clone(), trivial());
        let mut cat = PointedCrossedCategory::with_trivial_scalars(lam, mp, grading, vec![vec![0, 1]; 2], 4);
        cat.j[(2 + 1) * 2 + 1] = 2;
        cat
    }

    fn z2_z3() -> PointedCrossedCategory {
        vec_gamma(&MatchedPair::new(cyclic(2), cyclic(3), vec![vec![0, 1, 2], vec![0, 2, 1]], vec![vec![0, 1]; 3]), 2)
    }

    #[test]
    fn parse_examples() {
        assert_eq!(
            parse_word("(_1 * g<_2>)").unwrap(),
            Word::Tensor(Box::new(Word::Hole(1)), Box::new(Word::Act("g".into(), Box::new(Word::Hole(2)))))
        );
        assert_eq!(parse_word("1").unwrap(), Word::Unit);
        assert_eq!(parse_word("(* _1)").unwrap_err().column, 2);
        assert!(parse_word("(_1 * _2").is_err());
        assert!(parse_word("_").is_err());
    }

    #[test]
    fn eval_examples() {
        let cat = z2_z3();
        assert_eq!(eval_word(&Word::Unit, &[], &cat).unwrap(), 0);
        let w = parse_word("(_1 * _2)").unwrap();
        assert_eq!(eval_word(&w, &[1, 1], &cat).unwrap(), 2);
        assert!(matches!(eval_word(&w, &[1], &cat), Err(WordError::ArityMismatch { .. })));
        // g<(_1 * _2)> against (k<_1> * g<_2>) with k = ∂_2 ▷₂ g.
        for g in 0..2 {
            for a in 0..3 {
                for b in 0..3 {
                    let k = cat.twist(b, g);
                    let lhs = Term::act(g, Term::tensor(Term::Hole(1), Term::Hole(2))).eval(&[a, b], &cat);
                    let rhs = Term::tensor(Term::act(k, Term::Hole(1)), Term::act(g, Term::Hole(2))).eval(&[a, b], &cat);
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn structural_inverse_and_compose() {
        let cat = cocycle_category();
        let j = Morph::J { g: 1, x: Term::Hole(1), y: Term::Hole(2) };
        let e = eval_structural(&j, &[1, 1], &cat).unwrap();
        assert_eq!(e.coefficient, UnitScalar::Root(2));
        let round = Morph::Compose(Box::new(Morph::Inv(Box::new(j.clone()))), Box::new(j.clone()));
        assert_eq!(eval_structural(&round, &[1, 1], &cat).unwrap().coefficient, UnitScalar::ONE);
        let bad = Morph::Compose(Box::new(j.clone()), Box::new(j));
        assert!(matches!(eval_structural(&bad, &[1, 1], &cat), Err(WordError::EndpointMismatch { .. })));
        let id = Morph::Id(Term::Hole(1));
        assert_eq!(eval_structural(&id, &[1], &cat).unwrap().coefficient, UnitScalar::ONE);
    }

    /// Both sides of the χ/J compatibility equation, built as explicit composites.
    #[test]
    fn axiom3_composites_agree() {
        let mut cat = cocycle_category();
        // χ_{1,1} the nontrivial character λ ↦ 2λ is allowed here.
        cat.chi[(2 + 1) * 2 + 1] = 2;
        assert!(crate::category::verify_crossed_category(&cat).passed());
        let (x, y) = (Term::Hole(1), Term::Hole(2));
        for g in 0..2 {
            for h in 0..2 {
                for objs in [[0, 0], [0, 1], [1, 0], [1, 1]] {
                    // χ_{g,h}(xy) ∘ g⟨J^h_{x,y}⟩ ∘ J^g_{h<x>, h<y>}
                    let lhs = Morph::Compose(
                        Box::new(Morph::Chi { g, h, x: Term::tensor(x.clone(), y.clone()) }),
                        Box::new(Morph::Compose(
                            Box::new(Morph::Apply(Term::act(g, Term::Hole(1)), vec![Morph::J { g: h, x: x.clone(), y: y.clone() }])),
                            Box::new(Morph::J { g, x: Term::act(h, x.clone()), y: Term::act(h, y.clone()) }),
                        )),
                    );
                    // J^{gh}_{x,y} ∘ (χ_{g,h}(x) ⊗ χ_{g,h}(y))
                    let rhs = Morph::Compose(
                        Box::new(Morph::J { g: g ^ h, x: x.clone(), y: y.clone() }),
                        Box::new(Morph::Apply(
                            Term::tensor(Term::Hole(1), Term::Hole(2)),
                            vec![Morph::Chi { g, h, x: x.clone() }, Morph::Chi { g, h, x: y.clone() }],
                        )),
                    );
                    let l = eval_structural(&lhs, &objs, &cat).unwrap();
                    let r = eval_structural(&rhs, &objs, &cat).unwrap();
                    assert_eq!((l.source.clone(), l.target.clone()), (r.source.clone(), r.target.clone()));
                    assert_eq!(l.coefficient, r.coefficient);
                    assert_eq!(
                        predicted_coefficient(&l.source, &l.target, &objs, &cat).map(UnitScalar::Root),
                        Some(l.coefficient)
                    );
                }
            }
        }
    }

    #[test]
    fn word_counts() {
        // Arity 0 with one G element and ≤ 3 nodes: 1, e<1>, e<e<1>>, (1 * 1).
        assert_eq!(enumerate_words(1, 0, 3).len(), 4);
        let w = enumerate_words(2, 2, 4);
        assert!(w.iter().all(|t| t.to_word(&cyclic(2)).arity() == Ok(2)));
    }

    #[test]
    fn coherence_passes_on_verified_fixtures() {
        for cat in [cocycle_category(), z2_z3()] {
            let r = check_coherence_all(&cat, 5, 2);
            assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
        }
    }

    /// Oracle: on every edge the step exponent equals the normal-form prediction.
    #[test]
    fn edges_match_normal_forms() {
        let cat = cocycle_category();
        for arity in 0..=2 {
            let words = enumerate_words(cat.n_g(), arity, 5);
            for objs in [vec![], vec![1], vec![1, 1], vec![0, 1]] {
                if objs.len() != arity {
                    continue;
                }
                for w in &words {
                    for (t, c, f) in steps(w, &objs, &cat, 5) {
                        assert_eq!(predicted_coefficient(w, &t, &objs, &cat), Some(c));
                        let ev = eval_structural(&f, &objs, &cat).unwrap();
                        assert_eq!((&ev.source, &ev.target, ev.coefficient), (w, &t, UnitScalar::Root(c)));
                    }
                }
            }
        }
    }

    #[test]
    fn chi_mutation_is_caught_with_witness() {
        let mut cat = cocycle_category();
        // χ_{e,g}(1): seen by e<g<_1>> → g<_1> against ι.
        cat.chi[3] = 1;
        let r = check_coherence_all(&cat, 4, 1);
        let w = r.failures().next().and_then(|c| c.witness.clone()).expect("failure");
        assert_ne!(w["lhs_exponent"], w["rhs_exponent"]);
    }

    #[test]
    fn trivial_category_passes() {
        let cat = vec_gamma(&MatchedPair::trivial(trivial(), trivial()), 1);
        assert!(check_coherence_all(&cat, 6, 3).passed());
    }

    fn arb_word() -> impl Strategy<Value = Word> {
        let leaf = prop_oneof![Just(Word::Unit), (1usize..5).prop_map(Word::Hole)];
        leaf.prop_recursive(5, 32, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Word::Tensor(Box::new(a), Box::new(b))),
                (prop::sample::select(vec!["e", "g1", "s", "rot2"]), inner)
                    .prop_map(|(g, w)| Word::Act(g.to_string(), Box::new(w))),
            ]
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn print_parse_round_trip(w in arb_word()) {
            prop_assert_eq!(parse_word(&w.to_string()).unwrap(), w);
        }
    }
}
