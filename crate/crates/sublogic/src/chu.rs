//! Chu's translation into intuitionistic calculi: formula maps, duality
//! proofs, translation of Hilbert-style proofs, and the conservativity
//! pipeline for conservative formulas.

use std::collections::HashMap;
use std::sync::{Arc, LazyLock};

use parking_lot::Mutex;

use crate::builder::ProofBuilder;
use crate::calculus::{Calculus, Rule, System, Template};
use crate::formula::{BinOp, Const, Formula, Kind};
use crate::frege::{check_frege_proof, FregeAxiom, FregeProof, FregeSystem, Justification, Substitution, METAVARS};
use crate::proof::{check_proof, Proof, ProofNode};
use crate::search::{Lemma, SearchBudget, Searcher, Verdict};
use crate::sequent::Sequent;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChuParams {
    pub d: Formula,
    pub n: Formula,
}

impl ChuParams {
    pub fn new(d: Formula, n: Formula) -> ChuParams {
        ChuParams { d, n }
    }

    /// `D = N = bot`.
    pub fn bot() -> ChuParams {
        ChuParams { d: Formula::bot(), n: Formula::bot() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ChuError {
    #[error("axiom {0} is not part of {1}")]
    AxiomNotInSystem(FregeAxiom, FregeSystem),
    #[error("the weakening axiom needs D = bot, got D = {0}")]
    WeakeningNeedsBot(Formula),
    #[error("{0} is outside the language of the target calculus")]
    Language(Formula),
    #[error("hypothesis at line {0}: only hypothesis-free proofs translate")]
    Hypothesis(usize),
    #[error("input proof does not check: {0}")]
    Input(String),
    #[error("{0} is not {1}")]
    Class(Formula, &'static str),
    #[error("the pipeline runs over MALL_F, AMALL_F, CLL_F or ALL_F, not {0}")]
    System(FregeSystem),
    #[error("target must be IMALL or ILL")]
    Target,
    #[error("no skeleton derivation found for axiom {0}")]
    Skeleton(FregeAxiom),
}

/// The two translations, with atoms optionally mapped to fixed pairs.
pub struct Translator {
    params: ChuParams,
    leaves: HashMap<String, (Formula, Formula)>,
    memo: HashMap<u64, (Formula, Formula)>,
}

impl Translator {
    pub fn new(params: ChuParams) -> Translator {
        Translator { params, leaves: HashMap::new(), memo: HashMap::new() }
    }

    /// Translates the atom `name` to `(t, s)` instead of `(name, N)`.
    pub fn with_leaf(mut self, name: &str, t: Formula, s: Formula) -> Translator {
        self.leaves.insert(name.to_string(), (t, s));
        self
    }

    pub fn t(&mut self, f: &Formula) -> Formula {
        self.pair(f).0
    }

    pub fn s(&mut self, f: &Formula) -> Formula {
        self.pair(f).1
    }

    pub fn pair(&mut self, f: &Formula) -> (Formula, Formula) {
        if let Some(p) = self.memo.get(&f.id()) {
            return p.clone();
        }
        let (d, n) = (self.params.d.clone(), self.params.n.clone());
        let p = match f.kind() {
            Kind::Atom(name) => match self.leaves.get(&**name) {
                Some(p) => p.clone(),
                None => (f.clone(), n),
            },
            Kind::Const(c) => match c {
                Const::One => (Formula::one(), d),
                Const::Zero => (d, Formula::one()),
                Const::Top => (Formula::top(), Formula::bot()),
                Const::Bot => (Formula::bot(), Formula::top()),
            },
            Kind::Bang(a) => {
                let at = self.t(a);
                let ba = Formula::bang(at);
                (ba.clone(), Formula::imp(ba, d))
            }
            Kind::Bin(op, a, b) => {
                let (at, as_) = self.pair(a);
                let (bt, bs) = self.pair(b);
                match op {
                    BinOp::And => (Formula::and(at, bt), Formula::or(as_, bs)),
                    BinOp::Or => (Formula::or(at, bt), Formula::and(as_, bs)),
                    BinOp::Star => (
                        Formula::star(at.clone(), bt.clone()),
                        Formula::and(Formula::imp(at, bs), Formula::imp(bt, as_)),
                    ),
                    BinOp::Imp => (
                        Formula::and(Formula::imp(at.clone(), bt), Formula::imp(bs.clone(), as_)),
                        Formula::star(at, bs),
                    ),
                }
            }
        };
        self.memo.insert(f.id(), p.clone());
        p
    }
}

pub fn chu_t(f: &Formula, params: &ChuParams) -> Formula {
    Translator::new(params.clone()).t(f)
}

pub fn chu_s(f: &Formula, params: &ChuParams) -> Formula {
    Translator::new(params.clone()).s(f)
}

/// Size of the translation as a tree, without building it.
pub fn translated_tree_size(f: &Formula, params: &ChuParams) -> (u64, u64) {
    let mut memo: HashMap<u64, (u64, u64)> = HashMap::new();
    fn go(f: &Formula, p: &ChuParams, memo: &mut HashMap<u64, (u64, u64)>) -> (u64, u64) {
        if let Some(&v) = memo.get(&f.id()) {
            return v;
        }
        let (d, n) = (p.d.size(), p.n.size());
        let v = match f.kind() {
            Kind::Atom(_) => (1, n),
            Kind::Const(Const::One) => (1, d),
            Kind::Const(Const::Zero) => (d, 1),
            Kind::Const(_) => (1, 1),
            Kind::Bang(a) => {
                let t = go(a, p, memo).0;
                (t + 1, t + 2 + d)
            }
            Kind::Bin(op, a, b) => {
                let (at, as_) = go(a, p, memo);
                let (bt, bs) = go(b, p, memo);
                let sum = |x: u64, y: u64| x.saturating_add(y).saturating_add(1);
                match op {
                    BinOp::And | BinOp::Or => (sum(at, bt), sum(as_, bs)),
                    BinOp::Star => (sum(at, bt), sum(sum(at, bs), sum(bt, as_))),
                    BinOp::Imp => (sum(sum(at, bt), sum(bs, as_)), sum(at, bs)),
                }
            }
        };
        memo.insert(f.id(), v);
        v
    }
    go(f, params, &mut memo)
}

// ---------------------------------------------------------------------------
// Duality

/// The intuitionistic Chu calculus for a classical system.
pub fn chu_calculus(system: System, params: &ChuParams) -> Calculus {
    Calculus::chu(system, params.d.clone(), params.n.clone())
}

/// Builds `A^t, A^s => D` into a shared builder, one subproof per
/// subformula.
pub struct DualityBuilder<'a> {
    pub b: &'a mut ProofBuilder,
    pub tr: Translator,
    memo: HashMap<u64, usize>,
}

impl<'a> DualityBuilder<'a> {
    pub fn new(b: &'a mut ProofBuilder, params: ChuParams) -> DualityBuilder<'a> {
        DualityBuilder { b, tr: Translator::new(params), memo: HashMap::new() }
    }

    fn d(&self) -> Formula {
        self.tr.params.d.clone()
    }

    pub fn dual(&mut self, a: &Formula) -> usize {
        if let Some(&i) = self.memo.get(&a.id()) {
            return i;
        }
        let (at, as_) = self.tr.pair(a);
        let d = self.d();
        let node = match a.kind() {
            Kind::Atom(_) => self.b.initial(Template::ChuAtom, Sequent::goal(vec![at, as_], d)),
            Kind::Const(Const::One | Const::Zero) => {
                let i = self.b.id(d);
                self.b.one_w(i)
            }
            Kind::Const(Const::Top | Const::Bot) => self.b.bot_l(vec![Formula::top()], vec![d]),
            Kind::Bang(_) => {
                let l = self.b.id(at);
                let r = self.b.id(d);
                self.b.imp_l(l, r, as_)
            }
            Kind::Bin(op, x, y) => {
                let (xt, xs) = self.tr.pair(x);
                let (_, ys) = self.tr.pair(y);
                let dx = self.dual(x);
                let dy = self.dual(y);
                match op {
                    BinOp::And => {
                        let l = self.b.and_l1(dx, at.clone());
                        let r = self.b.and_l2(dy, at);
                        self.b.or_l(l, r, as_)
                    }
                    BinOp::Or => {
                        let l = self.b.and_l1(dx, as_.clone());
                        let r = self.b.and_l2(dy, as_);
                        self.b.or_l(l, r, at)
                    }
                    BinOp::Star => {
                        let i = self.b.id(xt.clone());
                        let m = self.b.imp_l(i, dy, Formula::imp(xt, ys));
                        let m = self.b.and_l1(m, as_);
                        self.b.star_l(m, at)
                    }
                    BinOp::Imp => {
                        let i = self.b.id(ys.clone());
                        let m = self.b.imp_l(i, dx, Formula::imp(ys, xs));
                        let m = self.b.and_l2(m, at);
                        self.b.star_l(m, as_)
                    }
                }
            }
        };
        self.memo.insert(a.id(), node);
        node
    }
}

/// The proofs of `A^t, A^s => D`, `(~A)^t <=> A^s` and `(~A)^s <=> A^t`,
/// each equivalence as a pair of one-directional proofs.
#[derive(Clone, Debug)]
pub struct DualityProofs {
    pub dual: Proof,
    pub neg_t: (Proof, Proof),
    pub neg_s: (Proof, Proof),
}

impl DualityProofs {
    pub fn all(&self) -> [&Proof; 5] {
        [&self.dual, &self.neg_t.0, &self.neg_t.1, &self.neg_s.0, &self.neg_s.1]
    }
}

pub fn prove_duality(a: &Formula, params: &ChuParams, target: System) -> Result<DualityProofs, ChuError> {
    let calc = chu_calculus(target, params);
    if !a.in_language(calc.language()) {
        return Err(ChuError::Language(a.clone()));
    }
    let mut b = ProofBuilder::new();
    let mut db = DualityBuilder::new(&mut b, params.clone());
    let dual = db.dual(a);
    let (at, as_) = db.tr.pair(a);
    let neg = Formula::neg(a.clone());
    let (nt, ns) = db.tr.pair(&neg);
    let d = params.d.clone();
    let one_to_s = Formula::imp(Formula::one(), as_.clone());

    // (~A)^t => A^s
    let one = b.one_r();
    let i = b.id(as_.clone());
    let m = b.imp_l(one, i, one_to_s.clone());
    let nt_to_s = b.and_l2(m, nt.clone());

    // A^s => (~A)^t
    let l = b.imp_r(dual, Formula::imp(at.clone(), d));
    let i = b.id(as_.clone());
    let i = b.one_w(i);
    let r = b.imp_r(i, one_to_s);
    let s_to_nt = b.and_r(l, r);

    // (~A)^s => A^t and back
    let i = b.id(at.clone());
    let i = b.one_w(i);
    let ns_to_t = b.star_l(i, ns.clone());
    let i = b.id(at);
    let one = b.one_r();
    let t_to_ns = b.star_r(i, one);

    Ok(DualityProofs {
        dual: b.extract(dual),
        neg_t: (b.extract(nt_to_s), b.extract(s_to_nt)),
        neg_s: (b.extract(ns_to_t), b.extract(t_to_ns)),
    })
}

// ---------------------------------------------------------------------------
// Axioms and rules

/// The classical sequent system matching a Hilbert-style system.
pub fn sequent_system(sys: FregeSystem) -> System {
    match sys {
        FregeSystem::FLe => System::FLe,
        FregeSystem::CFLe => System::CFLe,
        FregeSystem::CFLew => System::CFLew,
        FregeSystem::MALL => System::MALL,
        FregeSystem::AMALL => System::AMALL,
        FregeSystem::CLL => System::CLL,
        FregeSystem::ALL => System::ALL,
    }
}

fn t_atom(x: &str) -> Formula {
    Formula::atom(&format!("{x}t"))
}

fn s_atom(x: &str) -> Formula {
    Formula::atom(&format!("{x}s"))
}

const SKELETON_D: &str = "D";

/// A derivation of the translated schema with each metavariable kept
/// opaque: `X^t` and `X^s` are atoms and the duality `X^t, X^s => D` is a
/// hypothesis. Instances are obtained by substitution and grafting.
#[derive(Clone, Debug)]
struct Skeleton {
    proof: Proof,
    d: Formula,
}

type SkeletonCache = Mutex<HashMap<(FregeAxiom, FregeSystem), Arc<Skeleton>>>;

static SKELETONS: LazyLock<SkeletonCache> = LazyLock::new(Default::default);

fn skeleton(ax: FregeAxiom, sys: FregeSystem) -> Result<Arc<Skeleton>, ChuError> {
    if let Some(s) = SKELETONS.lock().get(&(ax, sys)) {
        return Ok(s.clone());
    }
    let d = if ax == FregeAxiom::W { Formula::bot() } else { Formula::atom(SKELETON_D) };
    // N never occurs in a translated schema, so the atom template cannot fire.
    let params = ChuParams::new(d.clone(), Formula::atom("N"));
    let mut tr = Translator::new(params.clone());
    for x in METAVARS {
        tr = tr.with_leaf(x, t_atom(x), s_atom(x));
    }
    let goal = Sequent::goal(vec![], tr.t(&ax.schema()));
    let lemmas = METAVARS
        .iter()
        .map(|x| Lemma { ant: vec![t_atom(x), s_atom(x)].into_iter().collect(), goal: d.clone() })
        .collect();
    let calc = chu_calculus(sequent_system(sys), &params);
    let budget = SearchBudget { max_weight: u64::MAX, contractions: 2, max_visits: 2_000_000 };
    let verdict = Searcher::new(calc, budget).with_lemmas(lemmas).run(&goal);
    let proof = match verdict {
        Verdict::Proved(p) => p,
        _ => return Err(ChuError::Skeleton(ax)),
    };
    let sk = Arc::new(Skeleton { proof, d });
    SKELETONS.lock().insert((ax, sys), sk.clone());
    Ok(sk)
}

/// Builds translated axiom instances and rule applications into a shared
/// builder.
pub struct AxiomTranslator<'a> {
    db: DualityBuilder<'a>,
    sys: FregeSystem,
}

impl<'a> AxiomTranslator<'a> {
    pub fn new(b: &'a mut ProofBuilder, params: ChuParams, sys: FregeSystem) -> AxiomTranslator<'a> {
        AxiomTranslator { db: DualityBuilder::new(b, params), sys }
    }

    pub fn builder(&mut self) -> &mut ProofBuilder {
        self.db.b
    }

    pub fn translator(&mut self) -> &mut Translator {
        &mut self.db.tr
    }

    /// `=> alpha^t` for the instance of `ax` under `subst`.
    pub fn axiom(&mut self, ax: FregeAxiom, subst: &Substitution) -> Result<usize, ChuError> {
        if !self.sys.has_axiom(ax) {
            return Err(ChuError::AxiomNotInSystem(ax, self.sys));
        }
        let d = self.db.tr.params.d.clone();
        if ax == FregeAxiom::W && d != Formula::bot() {
            return Err(ChuError::WeakeningNeedsBot(d));
        }
        let sk = skeleton(ax, self.sys)?;
        let mut map: HashMap<String, Formula> = HashMap::new();
        let mut duals: HashMap<String, usize> = HashMap::new();
        for x in METAVARS {
            let a = subst.get(x).cloned().unwrap_or_else(|| Formula::atom(x));
            let (at, as_) = self.db.tr.pair(&a);
            map.insert(format!("{x}t"), at);
            map.insert(format!("{x}s"), as_);
            duals.insert(format!("{x}t"), usize::MAX);
            if sk.proof.nodes.iter().any(|n| n.rule == Rule::Hyp && n.conclusion.ant.contains(&t_atom(x))) {
                let node = self.db.dual(&a);
                duals.insert(format!("{x}t"), node);
            }
        }
        if sk.d != Formula::bot() {
            map.insert(SKELETON_D.to_string(), d);
        }
        let order = sk.proof.topological().expect("skeletons are acyclic");
        let mut placed: HashMap<usize, usize> = HashMap::new();
        for i in order {
            let n = &sk.proof.nodes[i];
            let idx = if n.rule == Rule::Hyp {
                let key = n
                    .conclusion
                    .ant
                    .iter()
                    .filter_map(|f| f.atom_name())
                    .find(|name| name.ends_with('t'))
                    .expect("skeleton hypotheses mention a metavariable")
                    .to_string();
                duals[&key]
            } else {
                let sub = |f: &Formula| f.substitute(&map);
                let conclusion = Sequent::new(
                    n.conclusion.ant.iter().map(sub).collect(),
                    n.conclusion.suc.iter().map(sub).collect(),
                );
                let premises = n.premises.iter().map(|p| placed[p]).collect();
                self.db.b.push(n.rule, conclusion, premises, n.principal.as_ref().map(sub))
            };
            placed.insert(i, idx);
        }
        Ok(placed[&sk.proof.root])
    }

    /// `=> B^t` from `=> A^t` and `=> (A -> B)^t`.
    pub fn mp(&mut self, minor: usize, major: usize) -> usize {
        let at = self.db.b.goal(minor);
        let imp_t = self.db.b.goal(major);
        let (fwd, _) = imp_t.as_op(BinOp::And).expect("translated implication is a conjunction");
        let (_, bt) = fwd.as_op(BinOp::Imp).expect("first conjunct is an implication");
        let (fwd, bt) = (fwd.clone(), bt.clone());
        let i = self.db.b.id(bt);
        let x = self.db.b.imp_l(minor, i, fwd);
        let _ = at;
        let y = self.db.b.and_l1(x, imp_t);
        self.db.b.cut(major, y)
    }

    /// `=> A^t /\ 1` from `=> A^t`.
    pub fn adj(&mut self, p: usize) -> usize {
        let one = self.db.b.one_r();
        self.db.b.and_r(p, one)
    }

    /// `=> !A^t` from `=> A^t`.
    pub fn nec(&mut self, p: usize) -> usize {
        self.db.b.bang_r(p)
    }
}

/// `=> alpha^t` for an axiom instance.
pub fn translate_axiom(
    ax: FregeAxiom,
    subst: &Substitution,
    params: &ChuParams,
    sys: FregeSystem,
) -> Result<Proof, ChuError> {
    let mut b = ProofBuilder::new();
    let root = AxiomTranslator::new(&mut b, params.clone(), sys).axiom(ax, subst)?;
    Ok(b.into_proof(root))
}

/// `=> A^t` for the conclusion `A` of a hypothesis-free proof.
pub fn translate_frege_proof(fp: &FregeProof, params: &ChuParams, sys: FregeSystem) -> Result<Proof, ChuError> {
    if let Some(k) = fp.lines.iter().position(|l| l.just == Justification::Hyp) {
        return Err(ChuError::Hypothesis(k + 1));
    }
    check_frege_proof(sys, fp, &[]).map_err(|e| ChuError::Input(e.to_string()))?;
    let mut b = ProofBuilder::new();
    let mut at = AxiomTranslator::new(&mut b, params.clone(), sys);
    let mut nodes = Vec::with_capacity(fp.lines.len());
    for line in &fp.lines {
        let node = match &line.just {
            Justification::Axiom(ax, subst) => {
                let subst = if subst.is_empty() {
                    crate::frege::match_axiom(*ax, &line.formula).expect("checked line matches")
                } else {
                    subst.clone()
                };
                at.axiom(*ax, &subst)?
            }
            Justification::Mp(i, j) => at.mp(nodes[*i], nodes[*j]),
            Justification::Adj(i) => at.adj(nodes[*i]),
            Justification::Nec(i) => at.nec(nodes[*i]),
            Justification::Hyp => unreachable!(),
        };
        nodes.push(node);
    }
    let root = *nodes.last().expect("checked proofs are non-empty");
    Ok(b.into_proof(root))
}

// ---------------------------------------------------------------------------
// Conservative formulas

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
pub enum ConservativityClass {
    Neither,
    Conservative,
    FullyConservative,
}

impl ConservativityClass {
    pub fn name(self) -> &'static str {
        match self {
            ConservativityClass::Neither => "neither",
            ConservativityClass::Conservative => "conservative",
            ConservativityClass::FullyConservative => "fully_conservative",
        }
    }
}

fn classes(f: &Formula, memo: &mut HashMap<u64, (bool, bool)>) -> (bool, bool) {
    if let Some(&v) = memo.get(&f.id()) {
        return v;
    }
    // (fully conservative, conservative)
    let v = match f.kind() {
        Kind::Atom(_) | Kind::Const(Const::One | Const::Top) => (true, true),
        Kind::Const(Const::Bot) => (false, true),
        Kind::Const(Const::Zero) => (false, false),
        Kind::Bang(a) => (false, classes(a, memo).1),
        Kind::Bin(op, a, b) => {
            let (fa, ca) = classes(a, memo);
            let (fb, cb) = classes(b, memo);
            let full = match op {
                BinOp::And | BinOp::Or => fa && fb,
                BinOp::Imp => ca && fb,
                BinOp::Star => false,
            };
            let cons = full
                || match op {
                    BinOp::And | BinOp::Or | BinOp::Star => ca && cb,
                    BinOp::Imp => false,
                };
            (full, cons)
        }
    };
    memo.insert(f.id(), v);
    v
}

pub fn classify_conservative(f: &Formula) -> ConservativityClass {
    match classes(f, &mut HashMap::new()) {
        (true, _) => ConservativityClass::FullyConservative,
        (false, true) => ConservativityClass::Conservative,
        _ => ConservativityClass::Neither,
    }
}

/// Proofs of `X^t => X`, `X => X^t` and, for fully conservative `X`,
/// `X^s => bot`, all with `D = N = bot`.
#[derive(Clone, Copy, Debug)]
struct Equiv {
    to: usize,
    from: usize,
    s_bot: Option<usize>,
}

struct EquivBuilder<'a> {
    b: &'a mut ProofBuilder,
    tr: Translator,
    memo: HashMap<u64, Equiv>,
}

impl EquivBuilder<'_> {
    fn equiv(&mut self, f: &Formula) -> Equiv {
        if let Some(&e) = self.memo.get(&f.id()) {
            return e;
        }
        let (ft, fs) = self.tr.pair(f);
        let bot = Formula::bot();
        let (full, _) = classes(f, &mut HashMap::new());
        let e = match f.kind() {
            Kind::Atom(_) | Kind::Const(_) => {
                let i = self.b.id(f.clone());
                let s_bot = full.then(|| self.b.id(bot));
                Equiv { to: i, from: i, s_bot }
            }
            Kind::Bang(a) => {
                let ea = self.equiv(a);
                let to = self.b.bang_l(ea.to, self.b.seq(ea.to).ant.as_slice()[0].clone());
                let to = self.b.bang_r(to);
                let from = self.b.bang_l(ea.from, a.clone());
                let from = self.b.bang_r(from);
                Equiv { to, from, s_bot: None }
            }
            Kind::Bin(BinOp::Imp, c, a) => {
                let ec = self.equiv(c);
                let ea = self.equiv(a);
                let a_s_bot = ea.s_bot.expect("implication conclusions are fully conservative");
                let (ct, cs) = self.tr.pair(c);
                let (_, as_) = self.tr.pair(a);
                // (C -> A)^t => C -> A
                let m = self.b.congruence(BinOp::Imp, ec.from, ea.to);
                let to = self.b.and_l1(m, ft.clone());
                // C -> A => (C -> A)^t
                let l = self.b.congruence(BinOp::Imp, ec.to, ea.from);
                let x = self.b.bot_l(vec![f.clone()], vec![cs.clone()]);
                let x = self.b.cut(a_s_bot, x);
                let r = self.b.imp_r(x, Formula::imp(as_.clone(), cs));
                let from = self.b.and_r(l, r);
                // (C -> A)^s = C^t * A^s => bot
                let x = self.b.bot_l(vec![ct], vec![bot]);
                let x = self.b.cut(a_s_bot, x);
                let s_bot = self.b.star_l(x, fs);
                Equiv { to, from, s_bot: Some(s_bot) }
            }
            Kind::Bin(op, x, y) => {
                let ex = self.equiv(x);
                let ey = self.equiv(y);
                let to = self.b.congruence(*op, ex.to, ey.to);
                let from = self.b.congruence(*op, ex.from, ey.from);
                let s_bot = if full {
                    let (sx, sy) = (ex.s_bot.unwrap(), ey.s_bot.unwrap());
                    Some(match op {
                        BinOp::And => self.b.or_l(sx, sy, fs),
                        _ => self.b.and_l1(sx, fs),
                    })
                } else {
                    None
                };
                Equiv { to, from, s_bot }
            }
        };
        self.memo.insert(f.id(), e);
        e
    }
}

/// Equivalence proofs for a conservative formula under `D = N = bot`.
#[derive(Clone, Debug)]
pub struct ConservativeEquiv {
    /// `X^t => X`
    pub to: Proof,
    /// `X => X^t`
    pub from: Proof,
    /// `X^s => bot` and `bot => X^s`, for fully conservative `X`.
    pub s_bot: Option<(Proof, Proof)>,
}

pub fn prove_conservative_equiv(
    f: &Formula,
    class: ConservativityClass,
    target: System,
) -> Result<ConservativeEquiv, ChuError> {
    if !matches!(target, System::IMALL | System::ILL) {
        return Err(ChuError::Target);
    }
    let actual = classify_conservative(f);
    if class == ConservativityClass::Neither || actual < class {
        return Err(ChuError::Class(f.clone(), class.name()));
    }
    if !f.in_language(target.language()) {
        return Err(ChuError::Language(f.clone()));
    }
    let mut b = ProofBuilder::new();
    let mut eb = EquivBuilder { b: &mut b, tr: Translator::new(ChuParams::bot()), memo: HashMap::new() };
    let e = eb.equiv(f);
    let fs = eb.tr.s(f);
    let s_bot = match (class, e.s_bot) {
        (ConservativityClass::FullyConservative, Some(s)) => {
            let back = b.bot_l(vec![], vec![fs]);
            Some((b.extract(s), b.extract(back)))
        }
        _ => None,
    };
    Ok(ConservativeEquiv { to: b.extract(e.to), from: b.extract(e.from), s_bot })
}

/// A single-conclusion proof of `=> A` in the intuitionistic counterpart,
/// from a Hilbert-style proof of a conservative `A`.
pub fn conservativity_pipeline(fp: &FregeProof, sys: FregeSystem) -> Result<Proof, ChuError> {
    if !matches!(sys, FregeSystem::MALL | FregeSystem::AMALL | FregeSystem::CLL | FregeSystem::ALL) {
        return Err(ChuError::System(sys));
    }
    let a = fp.conclusion().ok_or_else(|| ChuError::Input("empty proof".into()))?.clone();
    if classify_conservative(&a) == ConservativityClass::Neither {
        return Err(ChuError::Class(a, "conservative"));
    }
    let params = ChuParams::bot();
    let sigma = translate_frege_proof(fp, &params, sys)?;
    let mut b = ProofBuilder::new();
    // The atom templates p, bot => bot are instances of the bot axiom.
    let mut nodes = sigma.nodes.clone();
    for n in &mut nodes {
        if n.rule == Rule::Initial(Template::ChuAtom) {
            *n = ProofNode { rule: Rule::BotL, premises: vec![], principal: None, conclusion: n.conclusion.clone() };
        }
    }
    let root = b.graft(&Proof { nodes, root: sigma.root });
    let target = sequent_system(sys).intuitionistic();
    let equiv_target = if a.in_language(crate::formula::LanguageId::B) { System::IMALL } else { System::ILL };
    let tau = prove_conservative_equiv(&a, ConservativityClass::Conservative, equiv_target)?;
    let t = b.graft(&tau.to);
    let root = b.cut(root, t);
    let proof = b.into_proof(root);
    check_proof(&Calculus::new(target), &proof, &[]).map_err(|v| ChuError::Input(v.to_string()))?;
    Ok(proof)
}
