//! Brute-force oracles: backward proof search, Boolean validity and a
//! case-splitting prover for negation normal form sequents.

use std::collections::{BTreeSet, HashMap, HashSet};

use crate::builder::ProofBuilder;
use crate::calculus::{Calculus, Rule, Template};
use crate::formula::{BinOp, Const, Formula, Kind, Multiset};
use crate::proof::{check_template, Proof};
use crate::sequent::Sequent;

/// Limits for a search. Weight is the sum of formula sizes in a sequent.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_weight: u64,
    pub contractions: usize,
    pub max_visits: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_weight: u64::MAX, contractions: 0, max_visits: 2_000_000 }
    }
}

#[derive(Clone, Debug)]
pub enum Verdict {
    Proved(Proof),
    NotProvable,
    Exhausted { visited: usize },
}

impl Verdict {
    pub fn proof(&self) -> Option<&Proof> {
        match self {
            Verdict::Proved(p) => Some(p),
            _ => None,
        }
    }

    pub fn is_proved(&self) -> bool {
        matches!(self, Verdict::Proved(_))
    }
}

/// A lemma `ant => goal` that backward search may cut in, replacing `ant`
/// by `goal` in an antecedent. It is recorded as a hypothesis leaf.
#[derive(Clone, Debug)]
pub struct Lemma {
    pub ant: Multiset,
    pub goal: Formula,
}

impl Lemma {
    pub fn sequent(&self) -> Sequent {
        Sequent::new(self.ant.clone(), Multiset::singleton(self.goal.clone()))
    }
}

#[derive(Clone)]
enum Step {
    Rule { rule: Rule, principal: Option<Formula>, premises: Vec<(Sequent, usize)> },
    Lemma { index: usize, premise: (Sequent, usize) },
}

/// An invertible rule with its principal formula and premises.
type Inversion = (Rule, Formula, Vec<(Sequent, usize)>);

fn weight(s: &Sequent) -> u64 {
    s.ant.total_size().saturating_add(s.suc.total_size())
}

/// All ways to split a multiset in two, up to multiplicity.
fn splits(m: &Multiset) -> Vec<(Multiset, Multiset)> {
    let distinct = m.distinct();
    let counts: Vec<usize> = distinct.iter().map(|f| m.count(f)).collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; distinct.len()];
    loop {
        let mut left = Vec::new();
        let mut right = Vec::new();
        for (i, f) in distinct.iter().enumerate() {
            for _ in 0..choice[i] {
                left.push(f.clone());
            }
            for _ in choice[i]..counts[i] {
                right.push(f.clone());
            }
        }
        out.push((Multiset::from_vec(left), Multiset::from_vec(right)));
        let mut i = 0;
        loop {
            if i == distinct.len() {
                return out;
            }
            if choice[i] < counts[i] {
                choice[i] += 1;
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

pub struct Searcher {
    calc: Calculus,
    lemmas: Vec<Lemma>,
    hyps: HashSet<Sequent>,
    eager: bool,
    budget: SearchBudget,
    memo: HashMap<(Sequent, usize), Option<Step>>,
    visited: usize,
    exhausted: bool,
}

impl Searcher {
    pub fn new(calc: Calculus, budget: SearchBudget) -> Searcher {
        Searcher {
            calc: calc.without_cut(),
            lemmas: Vec::new(),
            hyps: HashSet::new(),
            eager: true,
            budget,
            memo: HashMap::new(),
            visited: 0,
            exhausted: false,
        }
    }

    pub fn with_lemmas(mut self, lemmas: Vec<Lemma>) -> Searcher {
        self.lemmas = lemmas;
        self
    }

    pub fn with_hypotheses(mut self, hyps: &[Sequent]) -> Searcher {
        self.hyps = hyps.iter().cloned().collect();
        self
    }

    /// Whether invertible rules are applied without backtracking. Sound and
    /// complete for the cut-free calculi without extra initial sequents.
    pub fn eager(mut self, eager: bool) -> Searcher {
        self.eager = eager;
        self
    }

    pub fn visited(&self) -> usize {
        self.visited
    }

    /// Searches with the contraction allowance raised step by step up to the
    /// budget.
    pub fn run(&mut self, goal: &Sequent) -> Verdict {
        for c in 0..=self.budget.contractions {
            if self.prove(goal, c) {
                let mut b = ProofBuilder::new();
                let mut built = HashMap::new();
                let root = self.build(&mut b, goal, c, &mut built);
                return Verdict::Proved(b.into_proof(root));
            }
            if self.exhausted {
                return Verdict::Exhausted { visited: self.visited };
            }
        }
        let contracts = self.calc.allows(Rule::Lc) || self.calc.allows(Rule::Rc) || self.calc.allows(Rule::BangC);
        if contracts || self.budget.max_weight != u64::MAX {
            Verdict::Exhausted { visited: self.visited }
        } else {
            Verdict::NotProvable
        }
    }

    fn build(
        &self,
        b: &mut ProofBuilder,
        s: &Sequent,
        c: usize,
        built: &mut HashMap<(Sequent, usize), usize>,
    ) -> usize {
        if let Some(&i) = built.get(&(s.clone(), c)) {
            return i;
        }
        let step = self.memo[&(s.clone(), c)].clone().expect("built sequents are proved");
        let idx = match step {
            Step::Rule { rule, principal, premises } => {
                let ps = premises.iter().map(|(ps, pc)| self.build(b, ps, *pc, built)).collect();
                b.push(rule, s.clone(), ps, principal)
            }
            Step::Lemma { index, premise } => {
                let lemma = &self.lemmas[index];
                let h = b.hyp(lemma.sequent());
                let rest = self.build(b, &premise.0, premise.1, built);
                let node = b.cut_on(h, rest, lemma.goal.clone());
                debug_assert_eq!(b.seq(node), s);
                node
            }
        };
        built.insert((s.clone(), c), idx);
        idx
    }

    fn prove(&mut self, s: &Sequent, c: usize) -> bool {
        let key = (s.clone(), c);
        if let Some(r) = self.memo.get(&key) {
            return r.is_some();
        }
        if self.exhausted {
            return false;
        }
        self.visited += 1;
        if self.visited > self.budget.max_visits {
            self.exhausted = true;
            return false;
        }
        // Provisional failure guards against revisiting on the same path.
        self.memo.insert(key.clone(), None);
        let found = self.expand(s, c);
        if found.is_none() && self.exhausted {
            self.memo.remove(&key);
            return false;
        }
        let ok = found.is_some();
        self.memo.insert(key, found);
        ok
    }

    fn try_step(&mut self, rule: Rule, principal: Option<Formula>, premises: Vec<(Sequent, usize)>) -> Option<Step> {
        if premises.iter().any(|(p, _)| weight(p) > self.budget.max_weight) {
            return None;
        }
        if self.calc.single_conclusion() && premises.iter().any(|(p, _)| p.suc.len() > 1) {
            return None;
        }
        for (p, pc) in &premises {
            if !self.prove(p, *pc) {
                return None;
            }
        }
        Some(Step::Rule { rule, principal, premises })
    }

    fn leaf(&self, s: &Sequent) -> Option<Step> {
        let calc = &self.calc;
        let leaf = |rule| Some(Step::Rule { rule, principal: None, premises: vec![] });
        if self.hyps.contains(s) {
            return leaf(Rule::Hyp);
        }
        if calc.allows(Rule::Id) && s.ant.len() == 1 && s.ant == s.suc {
            return leaf(Rule::Id);
        }
        if calc.allows(Rule::OneR) && s.ant.is_empty() && s.suc.as_slice() == [Formula::one()] {
            return leaf(Rule::OneR);
        }
        if calc.allows(Rule::ZeroL) && s.suc.is_empty() && s.ant.as_slice() == [Formula::zero()] {
            return leaf(Rule::ZeroL);
        }
        if calc.allows(Rule::TopR) && s.suc.contains(&Formula::top()) {
            return leaf(Rule::TopR);
        }
        if calc.allows(Rule::BotL) && s.ant.contains(&Formula::bot()) {
            return leaf(Rule::BotL);
        }
        for t in calc.templates() {
            if check_template(t, s, calc).is_ok() {
                return leaf(Rule::Initial(t));
            }
        }
        None
    }

    fn invertible(&self, s: &Sequent, c: usize) -> Option<Inversion> {
        let calc = &self.calc;
        for g in s.suc.distinct() {
            if let Some((a, b)) = g.as_op(BinOp::Imp) {
                if calc.allows(Rule::ImpR) {
                    let p = Sequent::new(s.ant.with(a.clone()), s.suc.without(&g)?.with(b.clone()));
                    return Some((Rule::ImpR, g.clone(), vec![(p, c)]));
                }
            }
            if let Some((a, b)) = g.as_op(BinOp::And) {
                let rest = s.suc.without(&g)?;
                let p1 = Sequent::new(s.ant.clone(), rest.with(a.clone()));
                let p2 = Sequent::new(s.ant.clone(), rest.with(b.clone()));
                return Some((Rule::AndR, g.clone(), vec![(p1, c), (p2, c)]));
            }
            if g.is_const(Const::Zero) && calc.allows(Rule::ZeroW) {
                // recorded with principal for uniformity; the kernel ignores it
                let p = Sequent::new(s.ant.clone(), s.suc.without(&g)?);
                return Some((Rule::ZeroW, g.clone(), vec![(p, c)]));
            }
        }
        for f in s.ant.distinct() {
            if let Some((a, b)) = f.as_op(BinOp::Star) {
                if calc.allows(Rule::StarL) {
                    let p = Sequent::new(s.ant.without(&f)?.with(a.clone()).with(b.clone()), s.suc.clone());
                    return Some((Rule::StarL, f.clone(), vec![(p, c)]));
                }
            }
            if let Some((a, b)) = f.as_op(BinOp::Or) {
                let rest = s.ant.without(&f)?;
                let p1 = Sequent::new(rest.with(a.clone()), s.suc.clone());
                let p2 = Sequent::new(rest.with(b.clone()), s.suc.clone());
                return Some((Rule::OrL, f.clone(), vec![(p1, c), (p2, c)]));
            }
            if f.is_const(Const::One) && calc.allows(Rule::OneW) {
                let p = Sequent::new(s.ant.without(&f)?, s.suc.clone());
                return Some((Rule::OneW, f.clone(), vec![(p, c)]));
            }
        }
        None
    }

    fn expand(&mut self, s: &Sequent, c: usize) -> Option<Step> {
        if let Some(step) = self.leaf(s) {
            return Some(step);
        }
        if self.eager {
            if let Some((rule, principal, premises)) = self.invertible(s, c) {
                let principal = match rule {
                    Rule::OneW | Rule::ZeroW => None,
                    _ => Some(principal),
                };
                return self.try_step(rule, principal, premises);
            }
        }
        let calc = self.calc.clone();
        let single = calc.single_conclusion();
        let ant = s.ant.distinct();
        let suc = s.suc.distinct();

        // Lemma cuts.
        for i in 0..self.lemmas.len() {
            let lemma = self.lemmas[i].clone();
            if lemma.goal.size() >= lemma.ant.total_size() {
                continue;
            }
            if let Some(rest) = s.ant.difference(&lemma.ant) {
                let p = Sequent::new(rest.with(lemma.goal.clone()), s.suc.clone());
                if weight(&p) <= self.budget.max_weight && self.prove(&p, c) {
                    return Some(Step::Lemma { index: i, premise: (p, c) });
                }
            }
        }

        // Unary and binary rules on the succedent.
        for g in &suc {
            let rest = s.suc.without(g).unwrap();
            match g.kind() {
                Kind::Bin(BinOp::Imp, a, b) if !self.eager && calc.allows(Rule::ImpR) => {
                    let p = Sequent::new(s.ant.with(a.clone()), rest.with(b.clone()));
                    if let Some(st) = self.try_step(Rule::ImpR, Some(g.clone()), vec![(p, c)]) {
                        return Some(st);
                    }
                }
                Kind::Bin(BinOp::And, a, b) if !self.eager => {
                    let p1 = Sequent::new(s.ant.clone(), rest.with(a.clone()));
                    let p2 = Sequent::new(s.ant.clone(), rest.with(b.clone()));
                    if let Some(st) = self.try_step(Rule::AndR, Some(g.clone()), vec![(p1, c), (p2, c)]) {
                        return Some(st);
                    }
                }
                Kind::Bin(BinOp::Or, a, b) => {
                    for (rule, x) in [(Rule::OrR1, a), (Rule::OrR2, b)] {
                        let p = Sequent::new(s.ant.clone(), rest.with(x.clone()));
                        if let Some(st) = self.try_step(rule, Some(g.clone()), vec![(p, c)]) {
                            return Some(st);
                        }
                    }
                }
                Kind::Bin(BinOp::Star, a, b) if calc.allows(Rule::StarR) => {
                    for (g1, g2) in splits(&s.ant) {
                        for (d1, d2) in self.succedent_splits(&rest) {
                            let p1 = Sequent::new(g1.clone(), d1.with(a.clone()));
                            let p2 = Sequent::new(g2.clone(), d2.with(b.clone()));
                            if let Some(st) = self.try_step(Rule::StarR, Some(g.clone()), vec![(p1, c), (p2, c)]) {
                                return Some(st);
                            }
                        }
                    }
                }
                Kind::Bang(a) if calc.allows(Rule::BangR) && rest.is_empty() => {
                    if s.ant.iter().all(|x| x.as_bang().is_some()) {
                        let p = Sequent::new(s.ant.clone(), Multiset::singleton(a.clone()));
                        if let Some(st) = self.try_step(Rule::BangR, Some(g.clone()), vec![(p, c)]) {
                            return Some(st);
                        }
                    }
                }
                Kind::Const(Const::Zero) if !self.eager && calc.allows(Rule::ZeroW) => {
                    let p = Sequent::new(s.ant.clone(), rest.clone());
                    if let Some(st) = self.try_step(Rule::ZeroW, None, vec![(p, c)]) {
                        return Some(st);
                    }
                }
                _ => {}
            }
        }

        // Rules on the antecedent.
        for f in &ant {
            let rest = s.ant.without(f).unwrap();
            match f.kind() {
                Kind::Bin(BinOp::And, a, b) => {
                    for (rule, x) in [(Rule::AndL1, a), (Rule::AndL2, b)] {
                        let p = Sequent::new(rest.with(x.clone()), s.suc.clone());
                        if let Some(st) = self.try_step(rule, Some(f.clone()), vec![(p, c)]) {
                            return Some(st);
                        }
                    }
                }
                Kind::Bin(BinOp::Or, a, b) if !self.eager => {
                    let p1 = Sequent::new(rest.with(a.clone()), s.suc.clone());
                    let p2 = Sequent::new(rest.with(b.clone()), s.suc.clone());
                    if let Some(st) = self.try_step(Rule::OrL, Some(f.clone()), vec![(p1, c), (p2, c)]) {
                        return Some(st);
                    }
                }
                Kind::Bin(BinOp::Star, a, b) if !self.eager && calc.allows(Rule::StarL) => {
                    let p = Sequent::new(rest.with(a.clone()).with(b.clone()), s.suc.clone());
                    if let Some(st) = self.try_step(Rule::StarL, Some(f.clone()), vec![(p, c)]) {
                        return Some(st);
                    }
                }
                Kind::Bin(BinOp::Imp, a, b) if calc.allows(Rule::ImpL) => {
                    for (g1, g2) in splits(&rest) {
                        for (d1, d2) in self.succedent_splits(&s.suc) {
                            let p1 = Sequent::new(g1.clone(), d1.with(a.clone()));
                            let p2 = Sequent::new(g2.with(b.clone()), d2);
                            if let Some(st) = self.try_step(Rule::ImpL, Some(f.clone()), vec![(p1, c), (p2, c)]) {
                                return Some(st);
                            }
                        }
                    }
                }
                Kind::Bang(a) if calc.allows(Rule::BangL) => {
                    let p = Sequent::new(rest.with(a.clone()), s.suc.clone());
                    if let Some(st) = self.try_step(Rule::BangL, Some(f.clone()), vec![(p, c)]) {
                        return Some(st);
                    }
                    let p = Sequent::new(rest.clone(), s.suc.clone());
                    if let Some(st) = self.try_step(Rule::BangW, Some(f.clone()), vec![(p, c)]) {
                        return Some(st);
                    }
                }
                Kind::Const(Const::One) if !self.eager && calc.allows(Rule::OneW) => {
                    let p = Sequent::new(rest.clone(), s.suc.clone());
                    if let Some(st) = self.try_step(Rule::OneW, None, vec![(p, c)]) {
                        return Some(st);
                    }
                }
                _ => {}
            }
        }

        // Weakening.
        if calc.allows(Rule::Lw) {
            for f in &ant {
                let p = Sequent::new(s.ant.without(f).unwrap(), s.suc.clone());
                if let Some(st) = self.try_step(Rule::Lw, Some(f.clone()), vec![(p, c)]) {
                    return Some(st);
                }
            }
        }
        if calc.allows(Rule::Rw) {
            for g in &suc {
                let p = Sequent::new(s.ant.clone(), s.suc.without(g).unwrap());
                if let Some(st) = self.try_step(Rule::Rw, Some(g.clone()), vec![(p, c)]) {
                    return Some(st);
                }
            }
        }

        // Contraction, paid from the allowance.
        if c > 0 {
            for f in &ant {
                let rule = if calc.allows(Rule::Lc) {
                    Rule::Lc
                } else if f.as_bang().is_some() && calc.allows(Rule::BangC) {
                    Rule::BangC
                } else {
                    continue;
                };
                let p = Sequent::new(s.ant.with(f.clone()), s.suc.clone());
                if let Some(st) = self.try_step(rule, Some(f.clone()), vec![(p, c - 1)]) {
                    return Some(st);
                }
            }
            if calc.allows(Rule::Rc) && !single {
                for g in &suc {
                    let p = Sequent::new(s.ant.clone(), s.suc.with(g.clone()));
                    if let Some(st) = self.try_step(Rule::Rc, Some(g.clone()), vec![(p, c - 1)]) {
                        return Some(st);
                    }
                }
            }
        }
        None
    }

    fn succedent_splits(&self, rest: &Multiset) -> Vec<(Multiset, Multiset)> {
        if self.calc.single_conclusion() {
            vec![(Multiset::new(), rest.clone())]
        } else {
            splits(rest)
        }
    }
}

/// Complete search in a calculus without contraction. The verdict is
/// definitive unless the visit cap is hit.
pub fn decide_contraction_free(calc: &Calculus, s: &Sequent) -> Verdict {
    decide_with_cap(calc, s, SearchBudget::default().max_visits)
}

pub fn decide_with_cap(calc: &Calculus, s: &Sequent, max_visits: usize) -> Verdict {
    let budget = SearchBudget { max_visits, ..SearchBudget::default() };
    Searcher::new(calc.clone(), budget).run(s)
}

/// Cut-free search bounded by sequent weight and a contraction allowance.
/// Never reports non-provability for calculi with contraction.
pub fn bounded_search(calc: &Calculus, s: &Sequent, budget: SearchBudget) -> Verdict {
    Searcher::new(calc.clone(), budget).run(s)
}

// ---------------------------------------------------------------------------
// Boolean validity

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{0} atoms exceed the cap of {MAX_ATOMS}")]
pub struct TooManyAtoms(pub usize);

pub const MAX_ATOMS: usize = 24;

enum Op {
    Var(usize),
    Lit(bool),
    Not(usize),
    And(usize, usize),
    Or(usize, usize),
    Imp(usize, usize),
}

/// Straight-line program evaluating the forgetful image, 64 valuations per
/// word.
struct Circuit {
    ops: Vec<Op>,
    atoms: Vec<String>,
}

fn compile(f: &Formula) -> Circuit {
    let atoms: Vec<String> = f.vars().into_iter().collect();
    let index: HashMap<&str, usize> = atoms.iter().enumerate().map(|(i, a)| (a.as_str(), i)).collect();
    let mut ops = Vec::new();
    let mut slot: HashMap<u64, usize> = HashMap::new();
    let mut stack = vec![(f.clone(), false)];
    while let Some((g, done)) = stack.pop() {
        if slot.contains_key(&g.id()) {
            continue;
        }
        if !done {
            stack.push((g.clone(), true));
            for c in g.children() {
                stack.push((c.clone(), false));
            }
            continue;
        }
        let op = match g.kind() {
            Kind::Atom(n) => Op::Var(index[&**n]),
            Kind::Const(Const::Zero | Const::Bot) => Op::Lit(false),
            Kind::Const(Const::One | Const::Top) => Op::Lit(true),
            Kind::Bang(a) => {
                let i = slot[&a.id()];
                slot.insert(g.id(), i);
                continue;
            }
            Kind::Bin(op, a, b) => {
                let (x, y) = (slot[&a.id()], slot[&b.id()]);
                match op {
                    BinOp::And | BinOp::Star => Op::And(x, y),
                    BinOp::Or => Op::Or(x, y),
                    BinOp::Imp => {
                        if b.is_const(Const::Zero) || b.is_const(Const::Bot) {
                            Op::Not(x)
                        } else {
                            Op::Imp(x, y)
                        }
                    }
                }
            }
        };
        ops.push(op);
        slot.insert(g.id(), ops.len() - 1);
    }
    Circuit { ops, atoms }
}

impl Circuit {
    fn eval_block(&self, base: u64, buf: &mut Vec<u64>) -> u64 {
        buf.clear();
        for op in &self.ops {
            let v = match *op {
                Op::Var(i) => {
                    if i < 6 {
                        const PATTERNS: [u64; 6] = [
                            0xAAAA_AAAA_AAAA_AAAA,
                            0xCCCC_CCCC_CCCC_CCCC,
                            0xF0F0_F0F0_F0F0_F0F0,
                            0xFF00_FF00_FF00_FF00,
                            0xFFFF_0000_FFFF_0000,
                            0xFFFF_FFFF_0000_0000,
                        ];
                        PATTERNS[i]
                    } else if (base >> i) & 1 == 1 {
                        u64::MAX
                    } else {
                        0
                    }
                }
                Op::Lit(b) => {
                    if b {
                        u64::MAX
                    } else {
                        0
                    }
                }
                Op::Not(x) => !buf[x],
                Op::And(x, y) => buf[x] & buf[y],
                Op::Or(x, y) => buf[x] | buf[y],
                Op::Imp(x, y) => !buf[x] | buf[y],
            };
            buf.push(v);
        }
        *buf.last().unwrap()
    }
}

/// Whether the forgetful image of `f` is a classical tautology.
pub fn boolean_valid(f: &Formula) -> Result<bool, TooManyAtoms> {
    Ok(falsifying_valuation(f)?.is_none())
}

/// A valuation (atom names set true) falsifying the forgetful image, if any.
pub fn falsifying_valuation(f: &Formula) -> Result<Option<BTreeSet<String>>, TooManyAtoms> {
    let circuit = compile(f);
    let n = circuit.atoms.len();
    if n > MAX_ATOMS {
        return Err(TooManyAtoms(n));
    }
    let valid_bits: u64 = if n >= 6 { u64::MAX } else { (1u64 << (1 << n)) - 1 };
    let blocks: u64 = if n > 6 { 1 << (n - 6) } else { 1 };
    let mut buf = Vec::with_capacity(circuit.ops.len());
    for blk in 0..blocks {
        let base = blk << 6;
        let v = circuit.eval_block(base, &mut buf) & valid_bits;
        if v != valid_bits {
            let bit = (!v & valid_bits).trailing_zeros() as u64;
            let assignment = base | bit;
            let set = circuit
                .atoms
                .iter()
                .enumerate()
                .filter(|(i, _)| (assignment >> i) & 1 == 1)
                .map(|(_, a)| a.clone())
                .collect();
            return Ok(Some(set));
        }
    }
    Ok(None)
}

/// Classical evaluation of the forgetful image under `truth`.
pub fn eval_bool(f: &Formula, truth: &dyn Fn(&str) -> bool) -> bool {
    let mut memo: HashMap<u64, bool> = HashMap::new();
    eval_memo(f, truth, &mut memo)
}

fn eval_memo(f: &Formula, truth: &dyn Fn(&str) -> bool, memo: &mut HashMap<u64, bool>) -> bool {
    if let Some(&v) = memo.get(&f.id()) {
        return v;
    }
    let v = match f.kind() {
        Kind::Atom(n) => truth(n),
        Kind::Const(c) => matches!(c, Const::One | Const::Top),
        Kind::Bang(a) => eval_memo(a, truth, memo),
        Kind::Bin(op, a, b) => {
            let x = eval_memo(a, truth, memo);
            let y = eval_memo(b, truth, memo);
            match op {
                BinOp::And | BinOp::Star => x && y,
                BinOp::Or => x || y,
                BinOp::Imp => !x || y,
            }
        }
    };
    memo.insert(f.id(), v);
    v
}

// ---------------------------------------------------------------------------
// Case-splitting prover for negation normal form

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NnfError {
    #[error("{0} is not in negation normal form")]
    NotNnf(String),
    #[error("sequent is not classically valid")]
    Invalid,
}

fn literal(f: &Formula) -> Option<(&str, bool)> {
    if let Some(n) = f.atom_name() {
        return Some((n, true));
    }
    f.as_neg().and_then(|a| a.atom_name()).map(|n| (n, false))
}

struct NnfProver {
    b: ProofBuilder,
}

impl NnfProver {
    /// Adds the antecedent formulas `extra` by left weakening.
    fn weaken_left(&mut self, mut node: usize, extra: &Multiset) -> usize {
        for f in extra {
            node = self.b.lw(node, f.clone());
        }
        node
    }

    /// `ant => goal`, or `ant =>` when `goal` is `None`.
    fn prove(&mut self, ant: &Multiset, goal: Option<&Formula>) -> Result<usize, NnfError> {
        // Conjunctions first, so each is contracted once.
        if let Some(f) = ant.iter().find(|f| f.as_op(BinOp::And).is_some()).cloned() {
            let (a, b) = f.as_op(BinOp::And).unwrap();
            let rest = ant.without(&f).unwrap();
            let inner = self.prove(&rest.with(a.clone()).with(b.clone()), goal)?;
            let x = self.b.and_l1(inner, f.clone());
            let y = self.b.and_l2(x, f.clone());
            return Ok(self.b.lc(y, f));
        }
        if let Some(f) = ant.iter().find(|f| literal(f).is_none() && f.as_op(BinOp::Or).is_none()) {
            return Err(NnfError::NotNnf(f.to_string()));
        }
        let mut pos: HashMap<&str, Formula> = HashMap::new();
        let mut negs: HashMap<&str, Formula> = HashMap::new();
        for f in ant {
            if let Some((n, sign)) = literal(f) {
                if sign {
                    pos.insert(n, f.clone());
                } else {
                    negs.insert(n, f.clone());
                }
            }
        }
        if let Some((n, p)) = pos.iter().find(|(n, _)| negs.contains_key(*n)) {
            let np = negs[n].clone();
            let ax = self.b.initial(Template::Contradiction, Sequent::from_vecs(vec![p.clone(), np.clone()], vec![]));
            let rest = ant.without(p).unwrap().without(&np).unwrap();
            let mut node = self.weaken_left(ax, &rest);
            if let Some(g) = goal {
                node = self.b.rw(node, g.clone());
            }
            return Ok(node);
        }
        let value = |name: &str| -> Option<bool> {
            if pos.contains_key(name) {
                Some(true)
            } else if negs.contains_key(name) {
                Some(false)
            } else {
                None
            }
        };
        if let Some(g) = goal {
            if partial_eval(g, &value) == Some(true) {
                return self.prove_true(ant, g, &value);
            }
        }
        // Unit propagation: split a disjunction with at most one open disjunct.
        let open = |f: &Formula| -> usize {
            let mut parts = Vec::new();
            flatten_or(f, &mut parts);
            parts.iter().filter(|d| partial_eval(d, &value) != Some(false)).count()
        };
        let clauses: Vec<(usize, Formula)> = ant
            .iter()
            .filter(|f| f.as_op(BinOp::Or).is_some() && partial_eval(f, &value) != Some(true))
            .map(|f| (open(f), f.clone()))
            .collect();
        if let Some((_, f)) = clauses.iter().filter(|(k, _)| *k <= 1).min_by_key(|(k, _)| *k) {
            return self.split_or(ant, f, goal);
        }
        // Otherwise branch on an atom: undecided goal atoms first, then the
        // atoms of the smallest open disjunction.
        let atom = goal
            .filter(|g| partial_eval(g, &value).is_none())
            .and_then(|g| g.vars().into_iter().find(|v| value(v).is_none()))
            .or_else(|| {
                let (_, f) = clauses.iter().min_by_key(|(k, _)| *k)?;
                f.vars().into_iter().find(|v| value(v).is_none())
            });
        let Some(atom) = atom else {
            return Err(NnfError::Invalid);
        };
        let p = Formula::atom(&atom);
        let np = Formula::neg(p.clone());
        let em = Formula::or(p.clone(), np.clone());
        let l = self.prove(&ant.with(p.clone()), goal)?;
        let r = self.prove(&ant.with(np.clone()), goal)?;
        let split = self.b.or_l(l, r, em.clone());
        let ax = self.b.initial(Template::ExcludedMiddle, Sequent::goal(vec![], em));
        Ok(self.b.cut(ax, split))
    }

    fn split_or(&mut self, ant: &Multiset, f: &Formula, goal: Option<&Formula>) -> Result<usize, NnfError> {
        let (a, b) = f.as_op(BinOp::Or).unwrap();
        let rest = ant.without(f).unwrap();
        let l = self.prove(&rest.with(a.clone()), goal)?;
        let r = self.prove(&rest.with(b.clone()), goal)?;
        Ok(self.b.or_l(l, r, f.clone()))
    }

    /// `ant => goal` where the literals of `ant` make `goal` true.
    fn prove_true(
        &mut self,
        ant: &Multiset,
        goal: &Formula,
        value: &dyn Fn(&str) -> Option<bool>,
    ) -> Result<usize, NnfError> {
        if let Some((a, b)) = goal.as_op(BinOp::And) {
            let l = self.prove_true(ant, a, value)?;
            let r = self.prove_true(ant, b, value)?;
            return Ok(self.b.and_r(l, r));
        }
        if let Some((a, b)) = goal.as_op(BinOp::Or) {
            if partial_eval(a, value) == Some(true) {
                let l = self.prove_true(ant, a, value)?;
                return Ok(self.b.or_r1(l, b.clone()));
            }
            let r = self.prove_true(ant, b, value)?;
            return Ok(self.b.or_r2(r, a.clone()));
        }
        if literal(goal).is_some() {
            let ax = self.b.initial(Template::LiteralId, Sequent::goal(vec![goal.clone()], goal.clone()));
            let rest = ant.without(goal).ok_or(NnfError::Invalid)?;
            return Ok(self.weaken_left(ax, &rest));
        }
        Err(NnfError::NotNnf(goal.to_string()))
    }
}

fn flatten_or(f: &Formula, out: &mut Vec<Formula>) {
    match f.as_op(BinOp::Or) {
        Some((a, b)) => {
            flatten_or(a, out);
            flatten_or(b, out);
        }
        None => out.push(f.clone()),
    }
}

/// Three-valued evaluation under a partial assignment of atoms.
fn partial_eval(f: &Formula, value: &dyn Fn(&str) -> Option<bool>) -> Option<bool> {
    if let Some((n, sign)) = literal(f) {
        return value(n).map(|v| v == sign);
    }
    let (op, a, b) = f.as_bin()?;
    let x = partial_eval(a, value);
    let y = partial_eval(b, value);
    match op {
        BinOp::And => match (x, y) {
            (Some(false), _) | (_, Some(false)) => Some(false),
            (Some(true), Some(true)) => Some(true),
            _ => None,
        },
        BinOp::Or => match (x, y) {
            (Some(true), _) | (_, Some(true)) => Some(true),
            (Some(false), Some(false)) => Some(false),
            _ => None,
        },
        _ => None,
    }
}

/// A tree-like proof of a classically valid single-conclusion sequent of
/// negation normal form formulas, by case splits on excluded middle.
pub fn lknn_prove(s: &Sequent) -> Result<Proof, NnfError> {
    for f in s.formulas() {
        if !f.in_language(crate::formula::LanguageId::Nn) {
            return Err(NnfError::NotNnf(f.to_string()));
        }
    }
    if s.suc.len() > 1 {
        return Err(NnfError::Invalid);
    }
    let mut p = NnfProver { b: ProofBuilder::new() };
    let root = p.prove(&s.ant, s.suc.as_slice().first())?;
    Ok(p.b.into_proof(root))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::System;
    use crate::formula::f;
    use crate::proof::check_proof;
    use crate::sequent::parse_sequent;

    fn decide(sys: System, s: &str) -> Verdict {
        decide_contraction_free(&Calculus::new(sys), &parse_sequent(s).unwrap())
    }

    #[test]
    fn decides_small_sequents() {
        let v = decide(System::FLe, "p => p");
        let c = Calculus::new(System::FLe);
        check_proof(&c, v.proof().unwrap(), &[]).unwrap();
        assert!(matches!(decide(System::FLe, "p => p * p"), Verdict::NotProvable));
        assert!(decide(System::MALL, "p, q -> r => top").is_proved());
        assert!(decide(System::FLe, "p -> q, q -> r => p -> r").is_proved());
        assert!(matches!(decide(System::FLe, "p, q => p"), Verdict::NotProvable));
        assert!(decide(System::FLew, "p, q => p").is_proved());
    }

    #[test]
    fn contraction_needs_budget() {
        let s = parse_sequent("p, p -> p -> q => q").unwrap();
        let c = Calculus::new(System::FLec);
        let b = SearchBudget { max_weight: 30, contractions: 2, max_visits: 100_000 };
        let v = bounded_search(&c, &s, b);
        check_proof(&c, v.proof().unwrap(), &[]).unwrap();
    }

    #[test]
    fn tautologies() {
        assert!(boolean_valid(&f("p \\/ (p -> 0)")).unwrap());
        assert!(!boolean_valid(&f("p -> q")).unwrap());
        let wide = (0..10).map(|i| f(&format!("x{i} \\/ (x{i} -> 0)"))).reduce(Formula::and).unwrap();
        assert!(boolean_valid(&wide).unwrap());
        let bad = Formula::and(wide, f("x3"));
        assert!(!falsifying_valuation(&bad).unwrap().unwrap().contains("x3"));
    }

    #[test]
    fn nnf_prover() {
        let s = parse_sequent("p \\/ q, p -> 0 => q").unwrap();
        let pr = lknn_prove(&s).unwrap();
        let m = check_proof(&Calculus::new(System::LKnn), &pr, &[]).unwrap();
        assert!(m.tree_like);
        let s = parse_sequent("=> (p /\\ q) \\/ ((p -> 0) \\/ (q -> 0))").unwrap();
        check_proof(&Calculus::new(System::LKnn), &lknn_prove(&s).unwrap(), &[]).unwrap();
        assert!(lknn_prove(&parse_sequent("p => q").unwrap()).is_err());
    }
}
