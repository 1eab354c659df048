//! Forward proof construction.
//!
//! Each method computes the conclusion of a rule application from its
//! premises and returns the new node's index. Misuse is a bug in the calling
//! construction and panics; the checker validates the result independently.

use crate::calculus::{Rule, Template};
use crate::formula::{BinOp, Formula, Multiset};
use crate::proof::{Proof, ProofNode};
use crate::sequent::Sequent;

#[derive(Default, Clone)]
pub struct ProofBuilder {
    nodes: Vec<ProofNode>,
}

fn sole(m: &Multiset, what: &str) -> Formula {
    match m.as_slice() {
        [f] => f.clone(),
        _ => panic!("{what}: expected exactly one succedent formula, found {m:?}"),
    }
}

fn remove(m: &Multiset, f: &Formula, what: &str) -> Multiset {
    m.without(f).unwrap_or_else(|| panic!("{what}: {f} not found in {m:?}"))
}

impl ProofBuilder {
    pub fn new() -> ProofBuilder {
        ProofBuilder { nodes: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn seq(&self, i: usize) -> &Sequent {
        &self.nodes[i].conclusion
    }

    pub fn goal(&self, i: usize) -> Formula {
        sole(&self.nodes[i].conclusion.suc, "goal")
    }

    pub fn push(&mut self, rule: Rule, conclusion: Sequent, premises: Vec<usize>, principal: Option<Formula>) -> usize {
        self.nodes.push(ProofNode { rule, conclusion, premises, principal });
        self.nodes.len() - 1
    }

    /// Appends all nodes of `proof`, returning the index of its root.
    pub fn graft(&mut self, proof: &Proof) -> usize {
        let offset = self.nodes.len();
        for n in &proof.nodes {
            self.nodes.push(ProofNode { premises: n.premises.iter().map(|p| p + offset).collect(), ..n.clone() });
        }
        proof.root + offset
    }

    /// The reachable part below `root`, renumbered premises-first.
    pub fn extract(&self, root: usize) -> Proof {
        Proof { nodes: self.nodes.clone(), root }.compact().expect("builder proofs are acyclic")
    }

    pub fn into_proof(self, root: usize) -> Proof {
        Proof { nodes: self.nodes, root }.compact().expect("builder proofs are acyclic")
    }

    pub fn id(&mut self, a: Formula) -> usize {
        let s = Sequent::goal(vec![a.clone()], a);
        self.push(Rule::Id, s, vec![], None)
    }

    pub fn one_r(&mut self) -> usize {
        self.push(Rule::OneR, Sequent::goal(vec![], Formula::one()), vec![], None)
    }

    pub fn zero_l(&mut self) -> usize {
        self.push(Rule::ZeroL, Sequent::from_vecs(vec![Formula::zero()], vec![]), vec![], None)
    }

    pub fn top_r(&mut self, ant: Vec<Formula>, rest: Vec<Formula>) -> usize {
        let mut suc = rest;
        suc.push(Formula::top());
        self.push(Rule::TopR, Sequent::from_vecs(ant, suc), vec![], None)
    }

    pub fn bot_l(&mut self, rest: Vec<Formula>, suc: Vec<Formula>) -> usize {
        let mut ant = rest;
        ant.push(Formula::bot());
        self.push(Rule::BotL, Sequent::from_vecs(ant, suc), vec![], None)
    }

    pub fn initial(&mut self, t: Template, s: Sequent) -> usize {
        self.push(Rule::Initial(t), s, vec![], None)
    }

    pub fn hyp(&mut self, s: Sequent) -> usize {
        self.push(Rule::Hyp, s, vec![], None)
    }

    pub fn one_w(&mut self, p: usize) -> usize {
        let s = self.seq(p);
        let c = Sequent::new(s.ant.with(Formula::one()), s.suc.clone());
        self.push(Rule::OneW, c, vec![p], None)
    }

    pub fn zero_w(&mut self, p: usize) -> usize {
        let s = self.seq(p);
        let c = Sequent::new(s.ant.clone(), s.suc.with(Formula::zero()));
        self.push(Rule::ZeroW, c, vec![p], None)
    }

    /// Left conjunction rule on `principal = A /\ B`, keeping `A` when
    /// `keep_left`, else `B`.
    pub fn and_l(&mut self, p: usize, principal: Formula, keep_left: bool) -> usize {
        let (a, b) = principal.as_op(BinOp::And).expect("and_l: principal must be a conjunction");
        let aux = if keep_left { a } else { b };
        let s = self.seq(p);
        let c = Sequent::new(remove(&s.ant, aux, "and_l").with(principal.clone()), s.suc.clone());
        let rule = if keep_left { Rule::AndL1 } else { Rule::AndL2 };
        self.push(rule, c, vec![p], Some(principal))
    }

    pub fn and_l1(&mut self, p: usize, principal: Formula) -> usize {
        self.and_l(p, principal, true)
    }

    pub fn and_l2(&mut self, p: usize, principal: Formula) -> usize {
        self.and_l(p, principal, false)
    }

    /// Right conjunction from two single-conclusion premises.
    pub fn and_r(&mut self, p1: usize, p2: usize) -> usize {
        let a = sole(&self.seq(p1).suc, "and_r");
        let b = sole(&self.seq(p2).suc, "and_r");
        self.and_r_on(p1, p2, Formula::and(a, b))
    }

    pub fn and_r_on(&mut self, p1: usize, p2: usize, principal: Formula) -> usize {
        let (a, _) = principal.as_op(BinOp::And).expect("and_r: principal must be a conjunction");
        let s = self.seq(p1);
        assert_eq!(s.ant, self.seq(p2).ant, "and_r: antecedents differ");
        let c = Sequent::new(s.ant.clone(), remove(&s.suc, a, "and_r").with(principal.clone()));
        self.push(Rule::AndR, c, vec![p1, p2], Some(principal))
    }

    pub fn or_l(&mut self, p1: usize, p2: usize, principal: Formula) -> usize {
        let (a, _) = principal.as_op(BinOp::Or).expect("or_l: principal must be a disjunction");
        let s = self.seq(p1);
        let c = Sequent::new(remove(&s.ant, a, "or_l").with(principal.clone()), s.suc.clone());
        self.push(Rule::OrL, c, vec![p1, p2], Some(principal))
    }

    /// Right disjunction on `principal`, whose left (or right) disjunct is in
    /// the premise succedent.
    pub fn or_r(&mut self, p: usize, principal: Formula, from_left: bool) -> usize {
        let (a, b) = principal.as_op(BinOp::Or).expect("or_r: principal must be a disjunction");
        let aux = if from_left { a } else { b };
        let s = self.seq(p);
        let c = Sequent::new(s.ant.clone(), remove(&s.suc, aux, "or_r").with(principal.clone()));
        let rule = if from_left { Rule::OrR1 } else { Rule::OrR2 };
        self.push(rule, c, vec![p], Some(principal))
    }

    /// `A \/ other` from a proof of `A`.
    pub fn or_r1(&mut self, p: usize, other: Formula) -> usize {
        let a = sole(&self.seq(p).suc, "or_r1");
        self.or_r(p, Formula::or(a, other), true)
    }

    /// `other \/ B` from a proof of `B`.
    pub fn or_r2(&mut self, p: usize, other: Formula) -> usize {
        let b = sole(&self.seq(p).suc, "or_r2");
        self.or_r(p, Formula::or(other, b), false)
    }

    pub fn star_l(&mut self, p: usize, principal: Formula) -> usize {
        let (a, b) = principal.as_op(BinOp::Star).expect("star_l: principal must be a product");
        let s = self.seq(p);
        let rest = remove(&remove(&s.ant, a, "star_l"), b, "star_l");
        let c = Sequent::new(rest.with(principal.clone()), s.suc.clone());
        self.push(Rule::StarL, c, vec![p], Some(principal))
    }

    pub fn star_r(&mut self, p1: usize, p2: usize) -> usize {
        let a = sole(&self.seq(p1).suc, "star_r");
        let b = sole(&self.seq(p2).suc, "star_r");
        self.star_r_on(p1, p2, Formula::star(a, b))
    }

    pub fn star_r_on(&mut self, p1: usize, p2: usize, principal: Formula) -> usize {
        let (a, b) = principal.as_op(BinOp::Star).expect("star_r: principal must be a product");
        let (s1, s2) = (self.seq(p1), self.seq(p2));
        let d = remove(&s1.suc, a, "star_r").union(&remove(&s2.suc, b, "star_r"));
        let c = Sequent::new(s1.ant.union(&s2.ant), d.with(principal.clone()));
        self.push(Rule::StarR, c, vec![p1, p2], Some(principal))
    }

    /// Left implication: `p1 = G => A, D`, `p2 = S, B => L`.
    pub fn imp_l(&mut self, p1: usize, p2: usize, principal: Formula) -> usize {
        let (a, b) = principal.as_op(BinOp::Imp).expect("imp_l: principal must be an implication");
        let (s1, s2) = (self.seq(p1), self.seq(p2));
        let ant = s1.ant.union(&remove(&s2.ant, b, "imp_l")).with(principal.clone());
        let suc = remove(&s1.suc, a, "imp_l").union(&s2.suc);
        self.push(Rule::ImpL, Sequent::new(ant, suc), vec![p1, p2], Some(principal))
    }

    /// Left implication where `p1` proves the antecedent of the implication.
    pub fn imp_l_auto(&mut self, p1: usize, p2: usize, b: Formula) -> usize {
        let a = sole(&self.seq(p1).suc, "imp_l_auto");
        self.imp_l(p1, p2, Formula::imp(a, b))
    }

    pub fn imp_r(&mut self, p: usize, principal: Formula) -> usize {
        let (a, b) = principal.as_op(BinOp::Imp).expect("imp_r: principal must be an implication");
        let s = self.seq(p);
        let c = Sequent::new(remove(&s.ant, a, "imp_r"), remove(&s.suc, b, "imp_r").with(principal.clone()));
        self.push(Rule::ImpR, c, vec![p], Some(principal))
    }

    /// Right implication discharging `a` into the sole succedent formula.
    pub fn imp_r_on(&mut self, p: usize, a: Formula) -> usize {
        let b = sole(&self.seq(p).suc, "imp_r_on");
        self.imp_r(p, Formula::imp(a, b))
    }

    /// Cut on the sole succedent formula of `p1`.
    pub fn cut(&mut self, p1: usize, p2: usize) -> usize {
        let a = sole(&self.seq(p1).suc, "cut");
        self.cut_on(p1, p2, a)
    }

    pub fn cut_on(&mut self, p1: usize, p2: usize, a: Formula) -> usize {
        let (s1, s2) = (self.seq(p1), self.seq(p2));
        let ant = s1.ant.union(&remove(&s2.ant, &a, "cut (right premise)"));
        let suc = remove(&s1.suc, &a, "cut (left premise)").union(&s2.suc);
        self.push(Rule::Cut, Sequent::new(ant, suc), vec![p1, p2], Some(a))
    }

    pub fn lw(&mut self, p: usize, a: Formula) -> usize {
        let s = self.seq(p);
        let c = Sequent::new(s.ant.with(a.clone()), s.suc.clone());
        self.push(Rule::Lw, c, vec![p], Some(a))
    }

    pub fn rw(&mut self, p: usize, a: Formula) -> usize {
        let s = self.seq(p);
        let c = Sequent::new(s.ant.clone(), s.suc.with(a.clone()));
        self.push(Rule::Rw, c, vec![p], Some(a))
    }

    pub fn lc(&mut self, p: usize, a: Formula) -> usize {
        let s = self.seq(p);
        assert!(s.ant.count(&a) >= 2, "lc: {a} does not occur twice");
        let c = Sequent::new(remove(&s.ant, &a, "lc"), s.suc.clone());
        self.push(Rule::Lc, c, vec![p], Some(a))
    }

    pub fn rc(&mut self, p: usize, a: Formula) -> usize {
        let s = self.seq(p);
        assert!(s.suc.count(&a) >= 2, "rc: {a} does not occur twice");
        let c = Sequent::new(s.ant.clone(), remove(&s.suc, &a, "rc"));
        self.push(Rule::Rc, c, vec![p], Some(a))
    }

    pub fn bang_r(&mut self, p: usize) -> usize {
        let s = self.seq(p);
        let a = sole(&s.suc, "bang_r");
        let ba = Formula::bang(a);
        let c = Sequent::new(s.ant.clone(), Multiset::singleton(ba.clone()));
        self.push(Rule::BangR, c, vec![p], Some(ba))
    }

    /// Dereliction: replaces `A` in the antecedent with `!A`.
    pub fn bang_l(&mut self, p: usize, a: Formula) -> usize {
        let s = self.seq(p);
        let ba = Formula::bang(a.clone());
        let c = Sequent::new(remove(&s.ant, &a, "bang_l").with(ba.clone()), s.suc.clone());
        self.push(Rule::BangL, c, vec![p], Some(ba))
    }

    pub fn bang_w(&mut self, p: usize, ba: Formula) -> usize {
        let s = self.seq(p);
        let c = Sequent::new(s.ant.with(ba.clone()), s.suc.clone());
        self.push(Rule::BangW, c, vec![p], Some(ba))
    }

    pub fn bang_c(&mut self, p: usize, ba: Formula) -> usize {
        let s = self.seq(p);
        assert!(s.ant.count(&ba) >= 2, "bang_c: {ba} does not occur twice");
        let c = Sequent::new(remove(&s.ant, &ba, "bang_c"), s.suc.clone());
        self.push(Rule::BangC, c, vec![p], Some(ba))
    }

    /// `a o b => a' o b'` from `a => a'` and `b => b'`. For implication
    /// `left` runs the other way, `a' => a`.
    pub fn congruence(&mut self, op: BinOp, left: usize, right: usize) -> usize {
        let b = self;
        let (la, lb) = (b.seq(left).ant.as_slice()[0].clone(), b.goal(left));
        let (ra, rb) = (b.seq(right).ant.as_slice()[0].clone(), b.goal(right));
        match op {
            BinOp::And => {
                let src = Formula::and(la, ra);
                let l = b.and_l1(left, src.clone());
                let r = b.and_l2(right, src);
                b.and_r(l, r)
            }
            BinOp::Or => {
                let l = b.or_r1(left, rb);
                let r = b.or_r2(right, lb);
                b.or_l(l, r, Formula::or(la, ra))
            }
            BinOp::Star => {
                let m = b.star_r(left, right);
                b.star_l(m, Formula::star(la, ra))
            }
            // `left` proves the new antecedent from the old one: a' => a.
            BinOp::Imp => {
                let m = b.imp_l(left, right, Formula::imp(lb, ra));
                b.imp_r_on(m, la)
            }
        }
    }

    /// Applies `one_w` and cuts against a proof of `A => 1` to drop `A`.
    pub fn drop_with_unit(&mut self, p: usize, unit_proof: usize) -> usize {
        let w = self.one_w(p);
        self.cut(unit_proof, w)
    }
}
