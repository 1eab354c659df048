//! Vector addition systems with states, contractive runs and their
//! encoding as sequents.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use rand::Rng;

use crate::builder::ProofBuilder;
use crate::calculus::{Calculus, System};
use crate::formula::{fold_left, BinOp, Formula};
use crate::proof::{check_proof, Proof};
use crate::sequent::Sequent;

/// Largest dimension accepted by [`cover_reduce`].
pub const MAX_REDUCE_DIM: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VassError {
    #[error("unknown state {0}")]
    UnknownState(String),
    #[error("vector has length {got}, expected {want}")]
    Dimension { got: usize, want: usize },
    #[error("step {step}: {reason}")]
    Step { step: usize, reason: String },
    #[error("machine is not ordinary")]
    NotOrdinary,
    #[error("dimension {0} exceeds the reduction cap")]
    TooManyDimensions(usize),
    #[error("state name {0} clashes with a counter atom")]
    NameClash(String),
    #[error("contraction at step {0} has no counterpart in the logic")]
    Contraction(usize),
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transition {
    pub src: String,
    pub delta: Vec<i64>,
    pub dst: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vass {
    pub d: usize,
    pub states: Vec<String>,
    pub rules: Vec<Transition>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Config {
    pub state: String,
    pub vector: Vec<u64>,
}

impl Config {
    pub fn new(state: &str, vector: Vec<u64>) -> Config {
        Config { state: state.to_string(), vector }
    }

    pub fn zero(state: &str, d: usize) -> Config {
        Config::new(state, vec![0; d])
    }
}

impl fmt::Display for Config {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.vector.iter().map(|x| x.to_string()).collect();
        write!(f, "({}, ({}))", self.state, v.join(","))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Step {
    /// Index into the machine's rules.
    Rule(usize),
    /// `w + 2e_i -> w + e_i`, zero-based `i`.
    Contract(usize),
    /// `w + e_i -> w + 2e_i`, zero-based `i`.
    Expand(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Run {
    pub start: Config,
    pub steps: Vec<Step>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Plain,
    Contractive,
    Expansive,
}

impl Mode {
    fn allows(self, s: Step) -> bool {
        match s {
            Step::Rule(_) => true,
            Step::Contract(_) => self == Mode::Contractive,
            Step::Expand(_) => self == Mode::Expansive,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    pub component_cap: u64,
    pub max_configs: usize,
}

impl Default for Bounds {
    fn default() -> Bounds {
        Bounds { component_cap: 8, max_configs: 50_000 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Reach {
    Found(Run),
    /// No run exists among the explored configurations; `complete` is false
    /// when a bound cut the search short.
    Absent {
        complete: bool,
    },
}

impl Reach {
    pub fn found(&self) -> bool {
        matches!(self, Reach::Found(_))
    }

    pub fn run(&self) -> Option<&Run> {
        match self {
            Reach::Found(r) => Some(r),
            Reach::Absent { .. } => None,
        }
    }
}

impl Vass {
    pub fn new(d: usize) -> Vass {
        Vass { d, states: Vec::new(), rules: Vec::new() }
    }

    pub fn add_state(&mut self, name: &str) {
        if !self.states.iter().any(|s| s == name) {
            self.states.push(name.to_string());
        }
    }

    pub fn add_rule(&mut self, src: &str, delta: Vec<i64>, dst: &str) -> Result<usize, VassError> {
        if delta.len() != self.d {
            return Err(VassError::Dimension { got: delta.len(), want: self.d });
        }
        self.add_state(src);
        self.add_state(dst);
        self.rules.push(Transition { src: src.into(), delta, dst: dst.into() });
        Ok(self.rules.len() - 1)
    }

    pub fn has_state(&self, s: &str) -> bool {
        self.states.iter().any(|x| x == s)
    }

    pub fn is_ordinary(&self) -> bool {
        self.rules
            .iter()
            .all(|r| r.delta.iter().filter(|x| **x != 0).count() == 1 && r.delta.iter().all(|x| x.abs() <= 1))
    }

    /// The counter touched by an ordinary rule and whether it increments.
    fn unit_delta(&self, rule: usize) -> Option<(usize, bool)> {
        let d = &self.rules[rule].delta;
        let mut nz = d.iter().enumerate().filter(|(_, x)| **x != 0);
        match (nz.next(), nz.next()) {
            (Some((i, &x)), None) if x.abs() == 1 => Some((i, x > 0)),
            _ => None,
        }
    }

    fn check_config(&self, c: &Config) -> Result<(), VassError> {
        if !self.has_state(&c.state) {
            return Err(VassError::UnknownState(c.state.clone()));
        }
        if c.vector.len() != self.d {
            return Err(VassError::Dimension { got: c.vector.len(), want: self.d });
        }
        Ok(())
    }

    pub fn step(&self, c: &Config, rule: usize) -> Result<Config, String> {
        let t = self.rules.get(rule).ok_or_else(|| format!("no rule {rule}"))?;
        if t.src != c.state {
            return Err(format!("rule {rule} leaves {} but the configuration is in {}", t.src, c.state));
        }
        let mut v = c.vector.clone();
        for (x, a) in v.iter_mut().zip(&t.delta) {
            let y = *x as i64 + a;
            if y < 0 {
                return Err(format!("rule {rule} drives a counter below zero"));
            }
            *x = y as u64;
        }
        Ok(Config { state: t.dst.clone(), vector: v })
    }

    pub fn apply(&self, c: &Config, s: Step) -> Result<Config, String> {
        match s {
            Step::Rule(r) => self.step(c, r),
            Step::Contract(i) => contract(c, i),
            Step::Expand(i) => expand(c, i),
        }
    }

    /// All configurations of a run, starting with its start.
    pub fn replay(&self, run: &Run, mode: Mode) -> Result<Vec<Config>, VassError> {
        self.check_config(&run.start)?;
        let mut out = vec![run.start.clone()];
        for (k, s) in run.steps.iter().enumerate() {
            if !mode.allows(*s) {
                return Err(VassError::Step { step: k, reason: format!("{s:?} not allowed in {mode:?} mode") });
            }
            let next = self.apply(out.last().unwrap(), *s).map_err(|reason| VassError::Step { step: k, reason })?;
            out.push(next);
        }
        Ok(out)
    }

    pub fn run_end(&self, run: &Run, mode: Mode) -> Result<Config, VassError> {
        Ok(self.replay(run, mode)?.pop().unwrap())
    }
}

pub fn contract(c: &Config, i: usize) -> Result<Config, String> {
    match c.vector.get(i) {
        Some(&x) if x >= 2 => {
            let mut v = c.vector.clone();
            v[i] -= 1;
            Ok(Config { state: c.state.clone(), vector: v })
        }
        Some(_) => Err(format!("contraction on component {} below 2", i + 1)),
        None => Err(format!("no component {}", i + 1)),
    }
}

pub fn expand(c: &Config, i: usize) -> Result<Config, String> {
    match c.vector.get(i) {
        Some(&x) if x >= 1 => {
            let mut v = c.vector.clone();
            v[i] += 1;
            Ok(Config { state: c.state.clone(), vector: v })
        }
        Some(_) => Err(format!("expansion on empty component {}", i + 1)),
        None => Err(format!("no component {}", i + 1)),
    }
}

fn successors(v: &Vass, c: &Config, mode: Mode) -> Vec<(Step, Config)> {
    let mut out = Vec::new();
    for (k, t) in v.rules.iter().enumerate() {
        if t.src == c.state {
            if let Ok(n) = v.step(c, k) {
                out.push((Step::Rule(k), n));
            }
        }
    }
    for i in 0..v.d {
        let s = match mode {
            Mode::Plain => continue,
            Mode::Contractive => Step::Contract(i),
            Mode::Expansive => Step::Expand(i),
        };
        if let Ok(n) = v.apply(c, s) {
            out.push((s, n));
        }
    }
    out
}

/// Breadth-first search for a configuration satisfying `target`.
fn bfs(v: &Vass, from: &Config, mode: Mode, bounds: Bounds, target: &dyn Fn(&Config) -> bool) -> Reach {
    let mut parent: HashMap<Config, Option<(Config, Step)>> = HashMap::new();
    let mut queue = VecDeque::new();
    parent.insert(from.clone(), None);
    queue.push_back(from.clone());
    let mut complete = true;
    while let Some(c) = queue.pop_front() {
        if target(&c) {
            let mut steps = Vec::new();
            let mut cur = c;
            while let Some(Some((p, s))) = parent.get(&cur) {
                steps.push(*s);
                cur = p.clone();
            }
            steps.reverse();
            return Reach::Found(Run { start: from.clone(), steps });
        }
        for (s, n) in successors(v, &c, mode) {
            if parent.contains_key(&n) {
                continue;
            }
            if n.vector.iter().any(|x| *x > bounds.component_cap) || parent.len() >= bounds.max_configs {
                complete = false;
                continue;
            }
            parent.insert(n.clone(), Some((c.clone(), s)));
            queue.push_back(n);
        }
    }
    Reach::Absent { complete }
}

pub fn reach_bfs(v: &Vass, from: &Config, to: &Config, mode: Mode, bounds: Bounds) -> Result<Reach, VassError> {
    v.check_config(from)?;
    v.check_config(to)?;
    Ok(bfs(v, from, mode, bounds, &|c| c == to))
}

/// Plain search for a configuration in `to.state` with vector `>= to.vector`.
pub fn cover_bfs(v: &Vass, from: &Config, to: &Config, bounds: Bounds) -> Result<Reach, VassError> {
    v.check_config(from)?;
    v.check_config(to)?;
    Ok(bfs(v, from, Mode::Plain, bounds, &|c| {
        c.state == to.state && c.vector.iter().zip(&to.vector).all(|(a, b)| a >= b)
    }))
}

/// Name of the fresh target state added by [`cover_reduce`].
pub fn fresh_state(v: &Vass) -> String {
    let mut name = "q_new".to_string();
    while v.has_state(&name) {
        name.push('\'');
    }
    name
}

/// Adds a fresh state reachable from `r` by every rule `-(b_1 e_1 + ... + b_d e_d)`
/// with `b_i` in `{0, 1}`. Returns the machine and the fresh state.
pub fn cover_reduce(v: &Vass, r: &str) -> Result<(Vass, String), VassError> {
    if !v.has_state(r) {
        return Err(VassError::UnknownState(r.into()));
    }
    if v.d > MAX_REDUCE_DIM {
        return Err(VassError::TooManyDimensions(v.d));
    }
    let q_new = fresh_state(v);
    let mut out = v.clone();
    out.add_state(&q_new);
    for mask in 0u32..(1 << v.d) {
        let delta = (0..v.d).map(|i| -(((mask >> i) & 1) as i64)).collect();
        out.add_rule(r, delta, &q_new)?;
    }
    Ok((out, q_new))
}

/// Drops the contraction steps of a contractive run, carrying the slack
/// forward. Returns the plain run and the slack vector.
pub fn decontract_run(v: &Vass, run: &Run) -> Result<(Run, Vec<u64>), VassError> {
    v.replay(run, Mode::Contractive)?;
    let mut slack = vec![0u64; v.d];
    let mut steps = Vec::new();
    for (k, s) in run.steps.iter().enumerate() {
        match s {
            Step::Rule(_) => steps.push(*s),
            Step::Contract(i) => slack[*i] += 1,
            Step::Expand(_) => unreachable!("rejected by replay at step {k}"),
        }
    }
    Ok((Run { start: run.start.clone(), steps }, slack))
}

// ---------------------------------------------------------------------------
// Logic encoding

pub fn counter_atom(i: usize) -> Formula {
    Formula::atom(&format!("p{}", i + 1))
}

pub fn state_atom(s: &str) -> Formula {
    Formula::atom(s)
}

fn check_names(v: &Vass) -> Result<(), VassError> {
    for s in &v.states {
        if (0..v.d).any(|i| counter_atom(i).to_string() == *s)
            || crate::formula::parse_formula(s).ok() != Some(state_atom(s))
        {
            return Err(VassError::NameClash(s.clone()));
        }
    }
    Ok(())
}

/// `{q, p1^u1, ..., pd^ud}` as a list: state first, then counters in order.
pub fn theta_encode(c: &Config) -> Vec<Formula> {
    let mut out = vec![state_atom(&c.state)];
    for (i, &n) in c.vector.iter().enumerate() {
        out.extend(std::iter::repeat_n(counter_atom(i), n as usize));
    }
    out
}

/// The product of [`theta_encode`], folded to the left.
pub fn theta_product(c: &Config) -> Formula {
    fold_left(BinOp::Star, &theta_encode(c), Formula::one())
}

fn rule_formula(v: &Vass, k: usize) -> Result<Formula, VassError> {
    let (i, up) = v.unit_delta(k).ok_or(VassError::NotOrdinary)?;
    let t = &v.rules[k];
    let (q, r, p) = (state_atom(&t.src), state_atom(&t.dst), counter_atom(i));
    Ok(if up { Formula::imp(q, Formula::star(r, p)) } else { Formula::imp(Formula::star(q, p), r) })
}

/// One formula per rule, in rule order (duplicates kept).
pub fn theory_formulas(v: &Vass) -> Result<Vec<Formula>, VassError> {
    check_names(v)?;
    (0..v.rules.len()).map(|k| rule_formula(v, k)).collect()
}

/// `(/\ Th) /\ 1`.
pub fn guarded_theory(v: &Vass) -> Result<Formula, VassError> {
    let th = theory_formulas(v)?;
    Ok(Formula::and(fold_left(BinOp::And, &th, Formula::one()), Formula::one()))
}

/// `(/\ Th) /\ 1, q => r`.
pub fn encode_sequent(v: &Vass, q: &str, r: &str) -> Result<Sequent, VassError> {
    for s in [q, r] {
        if !v.has_state(s) {
            return Err(VassError::UnknownState(s.into()));
        }
    }
    Ok(Sequent::goal(vec![guarded_theory(v)?, state_atom(q)], state_atom(r)))
}

/// `(/\ Th) /\ 1, *theta(start) => *theta(end)` for a run using rule and
/// expansion steps.
pub fn config_sequent(v: &Vass, from: &Config, to: &Config) -> Result<Sequent, VassError> {
    Ok(Sequent::goal(vec![guarded_theory(v)?, theta_product(from)], theta_product(to)))
}

struct RunProver<'a> {
    b: ProofBuilder,
    th: Vec<Formula>,
    guard: Formula,
    v: &'a Vass,
}

impl RunProver<'_> {
    /// Turns a proof with one copy of the theory formula `th[k]` in its
    /// antecedent into one with an extra copy of the guarded theory.
    fn extract(&mut self, p: usize, k: usize) -> usize {
        // th = ((t0 /\ t1) /\ t2) /\ ... ; peel from t_k outwards
        let mut prefix = fold_left(BinOp::And, &self.th[..=k], Formula::one());
        let mut p = if k > 0 { self.b.and_l2(p, prefix.clone()) } else { p };
        for t in &self.th[k + 1..] {
            prefix = Formula::and(prefix, t.clone());
            p = self.b.and_l1(p, prefix.clone());
        }
        self.b.and_l1(p, self.guard.clone())
    }

    /// Adds the guarded theory to the antecedent by (1w) and (L/\).
    fn absorb(&mut self, p: usize) -> usize {
        let p = self.b.one_w(p);
        self.b.and_l2(p, self.guard.clone())
    }

    fn fuse_left(&mut self, p: usize, items: &[Formula]) -> usize {
        let mut acc = items[0].clone();
        let mut p = p;
        for x in &items[1..] {
            acc = Formula::star(acc, x.clone());
            p = self.b.star_l(p, acc.clone());
        }
        p
    }

    fn fuse_right(&mut self, items: &[Formula]) -> usize {
        let mut p = self.b.id(items[0].clone());
        for x in &items[1..] {
            let q = self.b.id(x.clone());
            p = self.b.star_r(p, q);
        }
        p
    }

    fn rule_step(&mut self, p: usize, k: usize) -> usize {
        let (i, up) = self.v.unit_delta(k).expect("ordinary");
        let t = &self.v.rules[k];
        let (q, r, c) = (state_atom(&t.src), state_atom(&t.dst), counter_atom(i));
        let p = if up {
            // G, rest, r, p_i => goal  ~>  G, rest, q, q -> r*p_i => goal
            let s = self.b.star_l(p, Formula::star(r.clone(), c.clone()));
            let idq = self.b.id(q.clone());
            self.b.imp_l(idq, s, self.th[k].clone())
        } else {
            let idq = self.b.id(q.clone());
            let idc = self.b.id(c.clone());
            let m = self.b.star_r(idq, idc);
            self.b.imp_l(m, p, self.th[k].clone())
        };
        let p = self.extract(p, k);
        self.b.lc(p, self.guard.clone())
    }
}

/// An `FL_ec` proof of [`config_sequent`] for the run's endpoints. The run
/// may use rule and expansion steps; a contraction step is an error since
/// `p, p => p` is not derivable without weakening.
pub fn run_to_proof(v: &Vass, run: &Run) -> Result<Proof, VassError> {
    if !v.is_ordinary() {
        return Err(VassError::NotOrdinary);
    }
    if let Some(k) = run.steps.iter().position(|s| matches!(s, Step::Contract(_))) {
        v.replay(run, Mode::Contractive)?;
        return Err(VassError::Contraction(k));
    }
    let configs = v.replay(run, Mode::Expansive)?;
    let th = theory_formulas(v)?;
    let guard = guarded_theory(v)?;
    let mut pr = RunProver { b: ProofBuilder::new(), th, guard, v };
    let last = configs.last().unwrap();
    let mut p = pr.fuse_right(&theta_encode(last));
    p = pr.absorb(p);
    for (k, s) in run.steps.iter().enumerate().rev() {
        p = match *s {
            Step::Rule(r) => pr.rule_step(p, r),
            Step::Expand(i) => pr.b.lc(p, counter_atom(i)),
            Step::Contract(_) => unreachable!(),
        };
        debug_assert_eq!(
            {
                let mut a = theta_encode(&configs[k]);
                a.push(pr.guard.clone());
                crate::formula::Multiset::from_vec(a)
            },
            pr.b.seq(p).ant
        );
    }
    let start = theta_encode(&run.start);
    p = pr.fuse_left(p, &start);
    Ok(pr.b.into_proof(p))
}

/// Checks a proof from [`run_to_proof`] against its intended conclusion.
pub fn check_run_proof(v: &Vass, run: &Run, proof: &Proof) -> Result<(), String> {
    let end = v.run_end(run, Mode::Expansive).map_err(|e| e.to_string())?;
    let want = config_sequent(v, &run.start, &end).map_err(|e| e.to_string())?;
    if proof.conclusion() != &want {
        return Err(format!("conclusion {} differs from {}", proof.conclusion(), want));
    }
    check_proof(&Calculus::new(System::FLec), proof, &[]).map(|_| ()).map_err(|e| e.to_string())
}

// ---------------------------------------------------------------------------
// Text format

impl fmt::Display for Vass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "vass d={}", self.d)?;
        for s in &self.states {
            writeln!(f, "state {s}")?;
        }
        for t in &self.rules {
            let v: Vec<String> = t.delta.iter().map(|x| format!("{x:+}")).collect();
            writeln!(f, "rule {} {} {}", t.src, v.join(" "), t.dst)?;
        }
        Ok(())
    }
}

pub fn parse_vass(text: &str) -> Result<Vass, VassError> {
    let mut v: Option<Vass> = None;
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let err = |reason: String| VassError::Parse { line: n + 1, reason };
        let words: Vec<&str> = line.split_whitespace().collect();
        match (words[0], v.as_mut()) {
            ("vass", None) => {
                let d = words
                    .get(1)
                    .and_then(|w| w.strip_prefix("d="))
                    .and_then(|w| w.parse::<usize>().ok())
                    .filter(|d| *d >= 1)
                    .ok_or_else(|| err("expected `vass d=<dimension>`".into()))?;
                v = Some(Vass::new(d));
            }
            ("state", Some(m)) if words.len() == 2 => m.add_state(words[1]),
            ("rule", Some(m)) => {
                if words.len() != m.d + 3 {
                    return Err(err(format!("expected `rule <src> <{} ints> <dst>`", m.d)));
                }
                let delta = words[2..2 + m.d]
                    .iter()
                    .map(|w| w.parse::<i64>().map_err(|_| err(format!("bad integer {w}"))))
                    .collect::<Result<Vec<_>, _>>()?;
                m.add_rule(words[1], delta, words[m.d + 2]).map_err(|e| err(e.to_string()))?;
            }
            (_, None) => return Err(err("missing `vass d=<dimension>` header".into())),
            _ => return Err(err(format!("unrecognised line `{line}`"))),
        }
    }
    v.ok_or(VassError::Parse { line: 0, reason: "empty input".into() })
}

pub fn parse_config(text: &str, d: usize) -> Result<Config, VassError> {
    let err = |reason: &str| VassError::Parse { line: 0, reason: format!("{reason}: `{text}`") };
    let (state, rest) = match text.split_once(':') {
        Some((s, r)) => (s.trim(), r.trim()),
        None => (text.trim(), ""),
    };
    if state.is_empty() {
        return Err(err("missing state"));
    }
    let vector = if rest.is_empty() {
        vec![0; d]
    } else {
        rest.split(',')
            .map(|x| x.trim().parse::<u64>().map_err(|_| err("bad vector")))
            .collect::<Result<Vec<_>, _>>()?
    };
    if vector.len() != d {
        return Err(VassError::Dimension { got: vector.len(), want: d });
    }
    Ok(Config::new(state, vector))
}

// ---------------------------------------------------------------------------
// Random machines

#[derive(Debug, Clone, Copy)]
pub struct RandomVass {
    pub max_dim: usize,
    pub max_states: usize,
    pub max_rules: usize,
    pub ordinary: bool,
}

pub fn random_vass<R: Rng>(rng: &mut R, p: RandomVass) -> Vass {
    let d = rng.gen_range(1..=p.max_dim);
    let nq = rng.gen_range(1..=p.max_states);
    let mut v = Vass::new(d);
    for i in 0..nq {
        v.add_state(&format!("q{i}"));
    }
    let nt = rng.gen_range(1..=p.max_rules);
    for _ in 0..nt {
        let src = format!("q{}", rng.gen_range(0..nq));
        let dst = format!("q{}", rng.gen_range(0..nq));
        let delta = if p.ordinary {
            let mut a = vec![0; d];
            a[rng.gen_range(0..d)] = if rng.gen_bool(0.5) { 1 } else { -1 };
            a
        } else {
            (0..d).map(|_| rng.gen_range(-1..=1)).collect()
        };
        v.add_rule(&src, delta, &dst).expect("dimension matches");
    }
    v
}

/// A random walk of at most `len` steps from `start`, taking a contraction
/// with probability `p_contract` whenever one is enabled and always when it
/// is the only move. With `p_contract` zero the walk never contracts.
pub fn random_contractive_run<R: Rng>(rng: &mut R, v: &Vass, start: &Config, len: usize, p_contract: f64) -> Run {
    let mut c = start.clone();
    let mut steps = Vec::new();
    for _ in 0..len {
        let succ = successors(v, &c, Mode::Contractive);
        if succ.is_empty() {
            break;
        }
        let (contr, rules): (Vec<_>, Vec<_>) = succ.into_iter().partition(|(s, _)| matches!(s, Step::Contract(_)));
        let contract = !contr.is_empty() && p_contract > 0.0 && (rules.is_empty() || rng.gen_bool(p_contract));
        let pick = if contract {
            &contr[rng.gen_range(0..contr.len())]
        } else if !rules.is_empty() {
            &rules[rng.gen_range(0..rules.len())]
        } else {
            break;
        };
        steps.push(pick.0);
        c = pick.1.clone();
    }
    Run { start: start.clone(), steps }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::proof::subcalculus_embed;

    fn hand() -> Vass {
        let mut v = Vass::new(1);
        v.add_rule("a", vec![1], "a").unwrap();
        v.add_rule("a", vec![-1], "b").unwrap();
        v
    }

    #[test]
    fn steps() {
        let v = hand();
        assert_eq!(v.step(&Config::new("a", vec![0]), 0).unwrap(), Config::new("a", vec![1]));
        assert!(v.step(&Config::new("a", vec![0]), 1).is_err());
        assert_eq!(contract(&Config::new("q", vec![3]), 0).unwrap(), Config::new("q", vec![2]));
        assert!(contract(&Config::new("q", vec![1]), 0).is_err());
    }

    #[test]
    fn reachability() {
        let v = hand();
        let b = Bounds::default();
        let r = reach_bfs(&v, &Config::zero("a", 1), &Config::zero("b", 1), Mode::Plain, b).unwrap();
        assert_eq!(r.run().unwrap().steps.len(), 2);
        let r = reach_bfs(&v, &Config::zero("b", 1), &Config::zero("a", 1), Mode::Plain, b).unwrap();
        assert_eq!(r, Reach::Absent { complete: true });
        let mut w = Vass::new(1);
        w.add_state("q");
        let r = reach_bfs(&w, &Config::new("q", vec![2]), &Config::new("q", vec![1]), Mode::Contractive, b).unwrap();
        assert_eq!(r.run().unwrap().steps, vec![Step::Contract(0)]);
    }

    #[test]
    fn reduction_and_decontraction() {
        let v = hand();
        let (w, q_new) = cover_reduce(&v, "b").unwrap();
        assert_eq!(w.rules.len(), 4);
        assert_eq!(w.rules[2].delta, vec![0]);
        assert_eq!(w.rules[3].delta, vec![-1]);
        let b = Bounds::default();
        let r = reach_bfs(&w, &Config::zero("a", 1), &Config::zero(&q_new, 1), Mode::Contractive, b).unwrap();
        assert!(r.found());
        let run = Run {
            start: Config::zero("a", 1),
            steps: vec![Step::Rule(0), Step::Rule(0), Step::Contract(0), Step::Rule(1)],
        };
        let (plain, slack) = decontract_run(&v, &run).unwrap();
        assert_eq!(slack, vec![1]);
        assert_eq!(v.run_end(&plain, Mode::Plain).unwrap(), Config::new("b", vec![1]));
    }

    #[test]
    fn encoding() {
        assert_eq!(
            theta_encode(&Config::new("q", vec![2, 0])),
            vec![Formula::atom("q"), Formula::atom("p1"), Formula::atom("p1")]
        );
        let mut v = Vass::new(2);
        v.add_rule("q", vec![0, 1], "r").unwrap();
        v.add_rule("q", vec![-1, 0], "r").unwrap();
        let th = theory_formulas(&v).unwrap();
        assert_eq!(th[0].to_string(), "q -> r * p2");
        assert_eq!(th[1].to_string(), "q * p1 -> r");
    }

    #[test]
    fn runs_become_proofs() {
        let v = hand();
        let fl = Calculus::new(System::FLec);
        let empty = Run { start: Config::zero("a", 1), steps: vec![] };
        let up_down = Run {
            start: Config::zero("a", 1),
            steps: vec![Step::Rule(0), Step::Rule(0), Step::Expand(0), Step::Rule(1)],
        };
        for run in [empty, up_down] {
            let p = run_to_proof(&v, &run).unwrap();
            check_run_proof(&v, &run, &p).unwrap();
            subcalculus_embed(&p, &fl, &Calculus::new(System::RLL)).unwrap();
        }
        let contracted =
            Run { start: Config::zero("a", 1), steps: vec![Step::Rule(0), Step::Rule(0), Step::Contract(0)] };
        assert_eq!(run_to_proof(&v, &contracted), Err(VassError::Contraction(2)));
    }

    #[test]
    fn text_round_trip() {
        let v = hand();
        assert_eq!(parse_vass(&v.to_string()).unwrap(), v);
        assert_eq!(parse_config("a:1", 1).unwrap(), Config::new("a", vec![1]));
    }
}
