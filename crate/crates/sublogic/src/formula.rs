//! Hash-consed formulas over the linear language.
//!
//! Every structurally distinct formula is allocated once, so equality and
//! hashing are pointer operations and shared subterms cost nothing. Traversals
//! that can meet the same node many times memoize on [`Formula::id`].

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};
use std::sync::{Arc, LazyLock, Weak};

use parking_lot::Mutex;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Const {
    Zero,
    One,
    Top,
    Bot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BinOp {
    And,
    Or,
    Star,
    Imp,
}

impl BinOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinOp::And => "/\\",
            BinOp::Or => "\\/",
            BinOp::Star => "*",
            BinOp::Imp => "->",
        }
    }
}

pub enum Kind {
    Atom(Arc<str>),
    Const(Const),
    Bang(Formula),
    Bin(BinOp, Formula, Formula),
}

pub struct Node {
    kind: Kind,
    id: u64,
    size: u64,
}

/// An immutable, interned formula.
#[derive(Clone)]
pub struct Formula(Arc<Node>);

#[derive(PartialEq, Eq, Hash)]
enum Key {
    Atom(Arc<str>),
    Const(Const),
    Bang(u64),
    Bin(BinOp, u64, u64),
}

struct Interner {
    map: HashMap<Key, Weak<Node>>,
    purge_at: usize,
}

static INTERNER: LazyLock<Mutex<Interner>> =
    LazyLock::new(|| Mutex::new(Interner { map: HashMap::new(), purge_at: 1 << 16 }));

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

fn intern(key: Key, kind: impl FnOnce() -> Kind, size: u64) -> Formula {
    let mut guard = INTERNER.lock();
    if let Some(node) = guard.map.get(&key).and_then(Weak::upgrade) {
        return Formula(node);
    }
    let node = Arc::new(Node { kind: kind(), id: NEXT_ID.fetch_add(1, AtomicOrdering::Relaxed), size });
    guard.map.insert(key, Arc::downgrade(&node));
    if guard.map.len() >= guard.purge_at {
        guard.map.retain(|_, w| w.strong_count() > 0);
        guard.purge_at = (guard.map.len() * 2).max(1 << 16);
    }
    Formula(node)
}

impl Drop for Node {
    // Deep formulas would overflow the stack with the default recursive drop.
    fn drop(&mut self) {
        let mut stack = Vec::new();
        detach(&mut self.kind, &mut stack);
        while let Some(f) = stack.pop() {
            if let Some(mut node) = Arc::into_inner(f.0) {
                detach(&mut node.kind, &mut stack);
            }
        }
    }
}

fn detach(kind: &mut Kind, stack: &mut Vec<Formula>) {
    match std::mem::replace(kind, Kind::Const(Const::Zero)) {
        Kind::Bang(a) => stack.push(a),
        Kind::Bin(_, a, b) => {
            stack.push(a);
            stack.push(b);
        }
        _ => {}
    }
}

impl Formula {
    pub fn atom(name: &str) -> Formula {
        let name: Arc<str> = Arc::from(name);
        let n2 = name.clone();
        intern(Key::Atom(name), move || Kind::Atom(n2), 1)
    }

    pub fn constant(c: Const) -> Formula {
        intern(Key::Const(c), || Kind::Const(c), 1)
    }

    pub fn zero() -> Formula {
        Formula::constant(Const::Zero)
    }

    pub fn one() -> Formula {
        Formula::constant(Const::One)
    }

    pub fn top() -> Formula {
        Formula::constant(Const::Top)
    }

    pub fn bot() -> Formula {
        Formula::constant(Const::Bot)
    }

    pub fn bang(a: Formula) -> Formula {
        let size = a.size().saturating_add(1);
        intern(Key::Bang(a.id()), move || Kind::Bang(a), size)
    }

    pub fn bin(op: BinOp, a: Formula, b: Formula) -> Formula {
        let size = a.size().saturating_add(b.size()).saturating_add(1);
        intern(Key::Bin(op, a.id(), b.id()), move || Kind::Bin(op, a, b), size)
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::bin(BinOp::And, a, b)
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::bin(BinOp::Or, a, b)
    }

    pub fn star(a: Formula, b: Formula) -> Formula {
        Formula::bin(BinOp::Star, a, b)
    }

    pub fn imp(a: Formula, b: Formula) -> Formula {
        Formula::bin(BinOp::Imp, a, b)
    }

    /// `a -> 0`
    #[allow(clippy::should_implement_trait)]
    pub fn neg(a: Formula) -> Formula {
        Formula::imp(a, Formula::zero())
    }

    /// `((!(a -> 0)) -> 0)`
    pub fn quest(a: Formula) -> Formula {
        Formula::neg(Formula::bang(Formula::neg(a)))
    }

    /// `((a -> 0) * (b -> 0)) -> 0`
    pub fn par(a: Formula, b: Formula) -> Formula {
        Formula::neg(Formula::star(Formula::neg(a), Formula::neg(b)))
    }

    pub fn kind(&self) -> &Kind {
        &self.0.kind
    }

    /// Unique while the formula is alive; stable for the life of the process.
    pub fn id(&self) -> u64 {
        self.0.id
    }

    /// Number of AST nodes, counted with sharing expanded (saturating).
    pub fn size(&self) -> u64 {
        self.0.size
    }

    pub fn is_atom(&self) -> bool {
        matches!(self.kind(), Kind::Atom(_))
    }

    pub fn atom_name(&self) -> Option<&str> {
        match self.kind() {
            Kind::Atom(n) => Some(n),
            _ => None,
        }
    }

    pub fn as_const(&self) -> Option<Const> {
        match self.kind() {
            Kind::Const(c) => Some(*c),
            _ => None,
        }
    }

    pub fn is_const(&self, c: Const) -> bool {
        self.as_const() == Some(c)
    }

    pub fn as_bang(&self) -> Option<&Formula> {
        match self.kind() {
            Kind::Bang(a) => Some(a),
            _ => None,
        }
    }

    pub fn as_bin(&self) -> Option<(BinOp, &Formula, &Formula)> {
        match self.kind() {
            Kind::Bin(op, a, b) => Some((*op, a, b)),
            _ => None,
        }
    }

    pub fn as_op(&self, op: BinOp) -> Option<(&Formula, &Formula)> {
        match self.kind() {
            Kind::Bin(o, a, b) if *o == op => Some((a, b)),
            _ => None,
        }
    }

    /// `Some(a)` when the formula is literally `a -> 0`.
    pub fn as_neg(&self) -> Option<&Formula> {
        match self.as_op(BinOp::Imp) {
            Some((a, z)) if z.is_const(Const::Zero) => Some(a),
            _ => None,
        }
    }

    pub fn children(&self) -> Vec<&Formula> {
        match self.kind() {
            Kind::Bang(a) => vec![a],
            Kind::Bin(_, a, b) => vec![a, b],
            _ => vec![],
        }
    }

    pub fn ptr_eq(&self, other: &Formula) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    /// Number of distinct nodes in the DAG.
    pub fn dag_size(&self) -> usize {
        let mut seen = std::collections::HashSet::new();
        let mut stack = vec![self];
        while let Some(f) = stack.pop() {
            if seen.insert(f.id()) {
                stack.extend(f.children());
            }
        }
        seen.len()
    }

    pub fn vars(&self) -> BTreeSet<String> {
        let mut seen = std::collections::HashSet::new();
        let mut out = BTreeSet::new();
        let mut stack = vec![self];
        while let Some(f) = stack.pop() {
            if !seen.insert(f.id()) {
                continue;
            }
            match f.kind() {
                Kind::Atom(n) => {
                    out.insert(n.to_string());
                }
                Kind::Const(_) => {}
                _ => stack.extend(f.children()),
            }
        }
        out
    }

    pub fn is_single_variable(&self) -> bool {
        self.vars().len() <= 1
    }

    /// Maps 0 to bot, 1 to top, `*` to `/\` and drops `!`.
    pub fn forgetful(&self) -> Formula {
        let mut memo = HashMap::new();
        self.map_bottom_up(&mut memo, &mut |f, kids| match f.kind() {
            Kind::Atom(_) => f.clone(),
            Kind::Const(Const::Zero) | Kind::Const(Const::Bot) => Formula::bot(),
            Kind::Const(Const::One) | Kind::Const(Const::Top) => Formula::top(),
            Kind::Bang(_) => kids[0].clone(),
            Kind::Bin(op, _, _) => {
                let op = if *op == BinOp::Star { BinOp::And } else { *op };
                Formula::bin(op, kids[0].clone(), kids[1].clone())
            }
        })
    }

    /// Replaces atoms by formulas; unmapped atoms are kept.
    pub fn substitute(&self, map: &HashMap<String, Formula>) -> Formula {
        let mut memo = HashMap::new();
        self.map_bottom_up(&mut memo, &mut |f, kids| match f.kind() {
            Kind::Atom(n) => map.get(&**n).cloned().unwrap_or_else(|| f.clone()),
            Kind::Const(_) => f.clone(),
            Kind::Bang(_) => Formula::bang(kids[0].clone()),
            Kind::Bin(op, _, _) => Formula::bin(*op, kids[0].clone(), kids[1].clone()),
        })
    }

    /// Memoized bottom-up rebuild. `step` receives the node and the already
    /// mapped children.
    pub fn map_bottom_up(
        &self,
        memo: &mut HashMap<u64, Formula>,
        step: &mut dyn FnMut(&Formula, &[Formula]) -> Formula,
    ) -> Formula {
        if let Some(r) = memo.get(&self.id()) {
            return r.clone();
        }
        let mut stack: Vec<(Formula, bool)> = vec![(self.clone(), false)];
        while let Some((f, expanded)) = stack.pop() {
            if memo.contains_key(&f.id()) {
                continue;
            }
            if !expanded {
                stack.push((f.clone(), true));
                for c in f.children() {
                    if !memo.contains_key(&c.id()) {
                        stack.push((c.clone(), false));
                    }
                }
            } else {
                let kids: Vec<Formula> = f.children().iter().map(|c| memo[&c.id()].clone()).collect();
                let r = step(&f, &kids);
                memo.insert(f.id(), r);
            }
        }
        memo[&self.id()].clone()
    }

    pub fn in_language(&self, lang: LanguageId) -> bool {
        let mut memo = HashMap::new();
        self.in_language_memo(lang, &mut memo)
    }

    fn in_language_memo(&self, lang: LanguageId, memo: &mut HashMap<u64, bool>) -> bool {
        if let Some(&r) = memo.get(&self.id()) {
            return r;
        }
        let r = match lang {
            LanguageId::Nn | LanguageId::StarNn => match self.kind() {
                Kind::Atom(_) => true,
                Kind::Bin(BinOp::Imp, a, z) => a.is_atom() && z.is_const(Const::Zero),
                Kind::Bin(BinOp::And | BinOp::Or, a, b) => {
                    a.in_language_memo(lang, memo) && b.in_language_memo(lang, memo)
                }
                Kind::Bin(BinOp::Star, a, b) => {
                    lang == LanguageId::StarNn && a.in_language_memo(lang, memo) && b.in_language_memo(lang, memo)
                }
                _ => false,
            },
            _ => {
                let local = match self.kind() {
                    Kind::Atom(_) => true,
                    Kind::Const(c) => lang.has_const(*c),
                    Kind::Bang(_) => lang == LanguageId::Bang,
                    Kind::Bin(op, _, _) => lang.has_op(*op),
                };
                local && self.children().into_iter().all(|c| c.in_language_memo(lang, memo))
            }
        };
        memo.insert(self.id(), r);
        r
    }
}

impl PartialEq for Formula {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }
}

impl Eq for Formula {}

impl Hash for Formula {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.id.hash(state);
    }
}

fn kind_rank(k: &Kind) -> u8 {
    match k {
        Kind::Atom(_) => 0,
        Kind::Const(_) => 1,
        Kind::Bang(_) => 2,
        Kind::Bin(..) => 3,
    }
}

/// Canonical structural order: size, node kind, then contents left to right.
impl Ord for Formula {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.ptr_eq(other) {
            return Ordering::Equal;
        }
        self.size().cmp(&other.size()).then_with(|| kind_rank(self.kind()).cmp(&kind_rank(other.kind()))).then_with(
            || match (self.kind(), other.kind()) {
                (Kind::Atom(x), Kind::Atom(y)) => x.cmp(y),
                (Kind::Const(x), Kind::Const(y)) => x.cmp(y),
                (Kind::Bang(x), Kind::Bang(y)) => x.cmp(y),
                (Kind::Bin(o1, l1, r1), Kind::Bin(o2, l2, r2)) => {
                    o1.cmp(o2).then_with(|| l1.cmp(l2)).then_with(|| r1.cmp(r2))
                }
                _ => Ordering::Equal,
            },
        )
    }
}

impl PartialOrd for Formula {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LanguageId {
    /// 0, 1, /\, \/, *, ->
    U,
    /// U plus top and bot
    B,
    /// B plus !
    Bang,
    /// top, bot, /\, \/, ->
    P,
    /// negation normal form over /\ and \/
    Nn,
    /// negation normal form over /\, \/ and *
    StarNn,
}

impl LanguageId {
    fn has_const(self, c: Const) -> bool {
        match self {
            LanguageId::U => matches!(c, Const::Zero | Const::One),
            LanguageId::B | LanguageId::Bang => true,
            LanguageId::P => matches!(c, Const::Top | Const::Bot),
            LanguageId::Nn | LanguageId::StarNn => false,
        }
    }

    fn has_op(self, op: BinOp) -> bool {
        match self {
            LanguageId::P => op != BinOp::Star,
            _ => true,
        }
    }

    pub fn parse(s: &str) -> Option<LanguageId> {
        Some(match s {
            "u" | "Lu" | "L_u" => LanguageId::U,
            "b" | "Lb" | "L_b" => LanguageId::B,
            "!" | "bang" | "L!" | "L_!" => LanguageId::Bang,
            "p" | "Lp" | "L_p" => LanguageId::P,
            "nn" | "Lnn" | "L_nn" => LanguageId::Nn,
            "*nn" | "starnn" | "L*nn" | "L_*nn" => LanguageId::StarNn,
            _ => return None,
        })
    }
}

/// Left fold of `op` over `items` in the given order; `unit` when empty.
pub fn fold_left(op: BinOp, items: &[Formula], unit: Formula) -> Formula {
    let mut it = items.iter();
    match it.next() {
        None => unit,
        Some(first) => it.fold(first.clone(), |acc, x| Formula::bin(op, acc, x.clone())),
    }
}

/// Multiplicative conjunction of a multiset in canonical order; `1` when empty.
pub fn bigstar(ms: &Multiset) -> Formula {
    fold_left(BinOp::Star, ms.as_slice(), Formula::one())
}

/// Multiplicative disjunction of a multiset in canonical order; `0` when empty.
pub fn bigplus(ms: &Multiset) -> Formula {
    let items = ms.as_slice();
    let mut it = items.iter();
    match it.next() {
        None => Formula::zero(),
        Some(first) => it.fold(first.clone(), |acc, x| Formula::par(acc, x.clone())),
    }
}

/// Additive conjunction of a multiset in canonical order; `top` when empty.
pub fn bigwedge(ms: &Multiset) -> Formula {
    fold_left(BinOp::And, ms.as_slice(), Formula::top())
}

// ---------------------------------------------------------------------------
// Multisets

/// A finite multiset of formulas, kept sorted in canonical order.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Multiset(Vec<Formula>);

impl Multiset {
    pub fn new() -> Multiset {
        Multiset(Vec::new())
    }

    pub fn from_vec(mut v: Vec<Formula>) -> Multiset {
        v.sort();
        Multiset(v)
    }

    pub fn singleton(f: Formula) -> Multiset {
        Multiset(vec![f])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Formula> {
        self.0.iter()
    }

    pub fn as_slice(&self) -> &[Formula] {
        &self.0
    }

    pub fn contains(&self, f: &Formula) -> bool {
        self.0.binary_search(f).is_ok()
    }

    pub fn count(&self, f: &Formula) -> usize {
        self.0.iter().filter(|g| *g == f).count()
    }

    pub fn insert(&mut self, f: Formula) {
        let pos = self.0.partition_point(|g| g <= &f);
        self.0.insert(pos, f);
    }

    pub fn with(&self, f: Formula) -> Multiset {
        let mut m = self.clone();
        m.insert(f);
        m
    }

    pub fn remove_one(&mut self, f: &Formula) -> bool {
        match self.0.binary_search(f) {
            Ok(i) => {
                self.0.remove(i);
                true
            }
            Err(_) => false,
        }
    }

    pub fn without(&self, f: &Formula) -> Option<Multiset> {
        let mut m = self.clone();
        m.remove_one(f).then_some(m)
    }

    pub fn union(&self, other: &Multiset) -> Multiset {
        let mut out = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            if self.0[i] <= other.0[j] {
                out.push(self.0[i].clone());
                i += 1;
            } else {
                out.push(other.0[j].clone());
                j += 1;
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Multiset(out)
    }

    /// `self - other`, or `None` when `other` is not contained in `self`.
    pub fn difference(&self, other: &Multiset) -> Option<Multiset> {
        let mut out = Vec::with_capacity(self.len());
        let (mut i, mut j) = (0, 0);
        while j < other.0.len() {
            if i >= self.0.len() {
                return None;
            }
            match self.0[i].cmp(&other.0[j]) {
                Ordering::Less => {
                    out.push(self.0[i].clone());
                    i += 1;
                }
                Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
                Ordering::Greater => return None,
            }
        }
        out.extend_from_slice(&self.0[i..]);
        Some(Multiset(out))
    }

    pub fn is_subset(&self, other: &Multiset) -> bool {
        other.difference(self).is_some()
    }

    pub fn distinct(&self) -> Vec<Formula> {
        let mut v = self.0.clone();
        v.dedup();
        v
    }

    pub fn total_size(&self) -> u64 {
        self.0.iter().fold(0u64, |a, f| a.saturating_add(f.size()))
    }

    pub fn into_vec(self) -> Vec<Formula> {
        self.0
    }
}

impl FromIterator<Formula> for Multiset {
    fn from_iter<I: IntoIterator<Item = Formula>>(iter: I) -> Self {
        Multiset::from_vec(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a Multiset {
    type Item = &'a Formula;
    type IntoIter = std::slice::Iter<'a, Formula>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Debug for Multiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

// ---------------------------------------------------------------------------
// Printing

fn prec(f: &Formula) -> u8 {
    match f.kind() {
        Kind::Bin(BinOp::Imp, ..) => 1,
        Kind::Bin(BinOp::And | BinOp::Or, ..) => 2,
        Kind::Bin(BinOp::Star, ..) => 3,
        Kind::Bang(_) => 4,
        _ => 5,
    }
}

fn write_formula(out: &mut String, f: &Formula) {
    match f.kind() {
        Kind::Atom(n) => out.push_str(n),
        Kind::Const(c) => out.push_str(match c {
            Const::Zero => "0",
            Const::One => "1",
            Const::Top => "top",
            Const::Bot => "bot",
        }),
        Kind::Bang(a) => {
            out.push('!');
            write_wrapped(out, a, prec(a) < 4);
        }
        Kind::Bin(op, a, b) => {
            let p = prec(f);
            let (left_paren, right_paren) = match op {
                BinOp::Imp => (prec(a) <= 1, prec(b) < 1),
                _ => {
                    // mixed /\ and \/ are always bracketed for readability
                    let mixed = |x: &Formula| prec(x) == 2 && x.as_op(*op).is_none();
                    (prec(a) < p || mixed(a), prec(b) <= p)
                }
            };
            write_wrapped(out, a, left_paren);
            out.push(' ');
            out.push_str(op.symbol());
            out.push(' ');
            write_wrapped(out, b, right_paren);
        }
    }
}

fn write_wrapped(out: &mut String, f: &Formula, paren: bool) {
    if paren {
        out.push('(');
        write_formula(out, f);
        out.push(')');
    } else {
        write_formula(out, f);
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        write_formula(&mut s, self);
        f.write_str(&s)
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

// ---------------------------------------------------------------------------
// Parsing

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("syntax error at {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Zero,
    One,
    And,
    Or,
    Star,
    Imp,
    Bang,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut i = 0;
    let mut out = Vec::new();
    let err = |pos: usize, msg: &str| ParseError { pos, msg: msg.to_string() };
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'(' => out.push((Tok::LParen, start)),
            b')' => out.push((Tok::RParen, start)),
            b'*' => out.push((Tok::Star, start)),
            b'!' => out.push((Tok::Bang, start)),
            b'0' => out.push((Tok::Zero, start)),
            b'1' => out.push((Tok::One, start)),
            b'/' if bytes.get(i + 1) == Some(&b'\\') => {
                out.push((Tok::And, start));
                i += 1;
            }
            b'\\' if bytes.get(i + 1) == Some(&b'/') => {
                out.push((Tok::Or, start));
                i += 1;
            }
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                out.push((Tok::Imp, start));
                i += 1;
            }
            b'a'..=b'z' => {
                while i + 1 < bytes.len() && (bytes[i + 1].is_ascii_alphanumeric() || bytes[i + 1] == b'_') {
                    i += 1;
                }
                out.push((Tok::Ident(text[start..=i].to_string()), start));
            }
            _ => return Err(err(start, &format!("unexpected character '{}'", text[start..].chars().next().unwrap()))),
        }
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.1).unwrap_or(self.end)
    }

    fn fail<T>(&self, msg: &str) -> Result<T, ParseError> {
        Err(ParseError { pos: self.here(), msg: msg.to_string() })
    }

    fn imp(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.andor()?;
        if self.peek() == Some(&Tok::Imp) {
            self.pos += 1;
            let rhs = self.imp()?;
            return Ok(Formula::imp(lhs, rhs));
        }
        Ok(lhs)
    }

    fn andor(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.star()?;
        loop {
            let op = match self.peek() {
                Some(Tok::And) => BinOp::And,
                Some(Tok::Or) => BinOp::Or,
                _ => return Ok(lhs),
            };
            self.pos += 1;
            let rhs = self.star()?;
            lhs = Formula::bin(op, lhs, rhs);
        }
    }

    fn star(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = Formula::star(lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        let tok = match self.peek() {
            Some(t) => t.clone(),
            None => return self.fail("unexpected end of input"),
        };
        self.pos += 1;
        match tok {
            Tok::Bang => Ok(Formula::bang(self.unary()?)),
            Tok::Zero => Ok(Formula::zero()),
            Tok::One => Ok(Formula::one()),
            Tok::Ident(name) => Ok(match name.as_str() {
                "top" => Formula::top(),
                "bot" => Formula::bot(),
                _ => Formula::atom(&name),
            }),
            Tok::LParen => {
                let f = self.imp()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.fail("expected ')'");
                }
                self.pos += 1;
                Ok(f)
            }
            _ => {
                self.pos -= 1;
                self.fail("expected a formula")
            }
        }
    }
}

pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, end: text.len() };
    let f = p.imp()?;
    if p.pos != p.toks.len() {
        return p.fail("trailing input");
    }
    Ok(f)
}

impl std::str::FromStr for Formula {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_formula(s)
    }
}

impl Serialize for Formula {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Formula {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_formula(&s).map_err(serde::de::Error::custom)
    }
}

/// Shorthand used throughout the crate and its tests. Panics on bad input.
pub fn f(text: &str) -> Formula {
    parse_formula(text).unwrap_or_else(|e| panic!("{e}: {text}"))
}
