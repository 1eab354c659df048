//! Implicational Horn sequents: validity by least models and short
//! classical proofs by unit propagation.

use std::collections::BTreeSet;

use rand::Rng;

use crate::builder::ProofBuilder;
use crate::formula::{fold_left, BinOp, Const, Formula, Kind};
use crate::proof::Proof;
use crate::sequent::{interpretation, Sequent};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HornError {
    #[error("not an implicational Horn sequent: {0}")]
    Grammar(String),
    #[error("sequent is not valid; least model {model:?} omits {goal}")]
    Invalid { goal: String, model: BTreeSet<String> },
    #[error("proof concludes {got}, expected => {want}")]
    Conclusion { got: String, want: String },
    #[error("lifting needs at most one succedent formula")]
    Succedents,
}

/// Atoms of `q1 * ... * qn`, or `None` when `f` is not such a product.
fn product_atoms(f: &Formula) -> Option<Vec<Formula>> {
    match f.kind() {
        Kind::Atom(_) => Some(vec![f.clone()]),
        Kind::Bin(BinOp::Star, a, b) => {
            let mut v = product_atoms(a)?;
            v.extend(product_atoms(b)?);
            Some(v)
        }
        _ => None,
    }
}

fn is_atom(f: &Formula) -> bool {
    matches!(f.kind(), Kind::Atom(_))
}

pub fn is_horn_formula(f: &Formula) -> bool {
    match f.kind() {
        Kind::Atom(_) => true,
        Kind::Const(Const::One) => true,
        Kind::Bin(BinOp::And, a, b) => is_horn_formula(a) && is_horn_formula(b),
        Kind::Bin(BinOp::Imp, a, b) => {
            (is_atom(b) && product_atoms(a).is_some()) || (is_atom(a) && product_atoms(b).is_some())
        }
        _ => false,
    }
}

pub fn is_implicational_horn(s: &Sequent) -> bool {
    s.suc.len() == 1 && is_atom(&s.suc.as_slice()[0]) && s.ant.iter().all(is_horn_formula)
}

fn require(s: &Sequent) -> Result<Formula, HornError> {
    if is_implicational_horn(s) {
        Ok(s.suc.as_slice()[0].clone())
    } else {
        Err(HornError::Grammar(s.to_string()))
    }
}

fn clauses(f: &Formula, out: &mut Vec<(Vec<String>, String)>, facts: &mut Vec<String>) {
    match f.kind() {
        Kind::Atom(p) => facts.push(p.to_string()),
        Kind::Bin(BinOp::And, a, b) => {
            clauses(a, out, facts);
            clauses(b, out, facts);
        }
        Kind::Bin(BinOp::Imp, a, b) => {
            let body: Vec<String> = product_atoms(a).unwrap().iter().map(|x| x.to_string()).collect();
            let heads = product_atoms(b).unwrap();
            if heads.len() == 1 {
                out.push((body, heads[0].to_string()));
            } else {
                for h in heads {
                    out.push((body.clone(), h.to_string()));
                }
            }
        }
        _ => {}
    }
}

/// The least model of the antecedent, reading `*` as conjunction.
pub fn least_model(s: &Sequent) -> Result<BTreeSet<String>, HornError> {
    require(s)?;
    let (mut rules, mut facts) = (Vec::new(), Vec::new());
    for f in s.ant.iter() {
        clauses(f, &mut rules, &mut facts);
    }
    // counter-based propagation, linear in the number of clause literals
    let mut watch: std::collections::HashMap<&str, Vec<usize>> = Default::default();
    let mut missing: Vec<usize> = Vec::with_capacity(rules.len());
    for (k, (body, _)) in rules.iter().enumerate() {
        missing.push(body.len());
        for q in body {
            watch.entry(q.as_str()).or_default().push(k);
        }
    }
    let mut model = BTreeSet::new();
    let mut queue = facts;
    while let Some(p) = queue.pop() {
        if !model.insert(p.clone()) {
            continue;
        }
        for &k in watch.get(p.as_str()).map(|v| v.as_slice()).unwrap_or(&[]) {
            // each occurrence of p in a body counts once
            missing[k] -= 1;
            if missing[k] == 0 {
                queue.push(rules[k].1.clone());
            }
        }
    }
    Ok(model)
}

pub fn horn_valid(s: &Sequent) -> Result<bool, HornError> {
    let goal = require(s)?;
    Ok(least_model(s)?.contains(&goal.to_string()))
}

// ---------------------------------------------------------------------------
// Unit propagation

/// A normalized antecedent formula: an atom or `q1 * ... * qn -> r`.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Item {
    Fact(Formula),
    Rule { body: Vec<Formula>, head: Formula, formula: Formula },
}

impl Item {
    fn formula(&self) -> Formula {
        match self {
            Item::Fact(f) => f.clone(),
            Item::Rule { formula, .. } => formula.clone(),
        }
    }

    fn rule(body: Vec<Formula>, head: Formula) -> Item {
        let formula = Formula::imp(fold_left(BinOp::Star, &body, Formula::one()), head.clone());
        Item::Rule { body, head, formula }
    }
}

/// How one antecedent was turned into the next, replayed in reverse to
/// build the proof.
enum Move {
    /// Split `A /\ B` into `A, B`.
    And(Formula),
    /// Erase `1`.
    One,
    /// Split `p -> q1 * ... * qn` into `p -> qi`.
    Fan(Formula, Vec<Formula>),
    /// Drop a rule whose head is already a fact.
    SelfLoop(Formula),
    /// Remove the fact `q` from the body of `rule`, giving `shorter`.
    Shrink { q: Formula, rule: Formula, body: Vec<Formula>, pos: usize, shorter: Formula },
    /// Replace `q -> r` by `r`.
    Fire { q: Formula, rule: Formula, head: Formula },
}

/// Proof of `p1 * ... * pn => pi` by (L*) and weakening.
fn project(b: &mut ProofBuilder, atoms: &[Formula], i: usize) -> usize {
    let mut p = b.id(atoms[i].clone());
    for (j, a) in atoms.iter().enumerate() {
        if j != i {
            p = b.lw(p, a.clone());
        }
    }
    fuse_left(b, p, atoms)
}

/// Replaces `atoms` in the antecedent by their left-folded product.
fn fuse_left(b: &mut ProofBuilder, p: usize, atoms: &[Formula]) -> usize {
    let mut acc = atoms[0].clone();
    let mut p = p;
    for x in &atoms[1..] {
        acc = Formula::star(acc, x.clone());
        p = b.star_l(p, acc.clone());
    }
    p
}

/// `atoms => ` their left-folded product.
fn fuse_right(b: &mut ProofBuilder, atoms: &[Formula]) -> usize {
    let mut p = b.id(atoms[0].clone());
    for x in &atoms[1..] {
        let q = b.id(x.clone());
        p = b.star_r(p, q);
    }
    p
}

fn normalize(ant: &[Formula], items: &mut Vec<Item>, moves: &mut Vec<Move>) {
    let mut stack: Vec<Formula> = ant.iter().rev().cloned().collect();
    while let Some(f) = stack.pop() {
        match f.kind() {
            Kind::Atom(_) => items.push(Item::Fact(f.clone())),
            Kind::Const(_) => moves.push(Move::One),
            Kind::Bin(BinOp::And, a, c) => {
                moves.push(Move::And(f.clone()));
                stack.push(c.clone());
                stack.push(a.clone());
            }
            Kind::Bin(BinOp::Imp, a, c) => {
                let body = product_atoms(a).unwrap();
                let heads = product_atoms(c).unwrap();
                if heads.len() == 1 {
                    items.push(Item::rule(body, heads[0].clone()));
                } else {
                    moves.push(Move::Fan(f.clone(), heads.clone()));
                    for h in heads {
                        items.push(Item::rule(body.clone(), h));
                    }
                }
            }
            _ => unreachable!("grammar checked"),
        }
    }
}

/// An `LK_u` proof of a valid implicational Horn sequent, of size
/// quadratic in the sequent.
pub fn unit_prop_prove(s: &Sequent) -> Result<Proof, HornError> {
    let goal = require(s)?;
    if !horn_valid(s)? {
        return Err(HornError::Invalid { goal: goal.to_string(), model: least_model(s)? });
    }
    let mut items = Vec::new();
    let mut moves = Vec::new();
    normalize(s.ant.as_slice(), &mut items, &mut moves);

    // propagate until the goal is a fact
    let mut facts: BTreeSet<Formula> =
        items.iter().filter_map(|i| if let Item::Fact(f) = i { Some(f.clone()) } else { None }).collect();
    while !facts.contains(&goal) {
        let (k, q) = items
            .iter()
            .enumerate()
            .filter_map(|(k, it)| match it {
                Item::Rule { body, head, .. } => {
                    let q = body.iter().chain(std::iter::once(head)).filter(|a| facts.contains(*a)).min()?;
                    Some((k, q.clone()))
                }
                Item::Fact(_) => None,
            })
            .min_by(|a, b| a.1.cmp(&b.1).then(a.0.cmp(&b.0)))
            .expect("a valid sequent always has a fact inside some rule");
        let Item::Rule { body, head, formula } = items[k].clone() else { unreachable!() };
        if head == q {
            items.remove(k);
            moves.push(Move::SelfLoop(formula));
        } else if body.len() > 1 {
            let pos = body.iter().position(|a| *a == q).unwrap();
            let mut rest = body.clone();
            rest.remove(pos);
            let shorter = Item::rule(rest, head);
            moves.push(Move::Shrink { q, rule: formula, body, pos, shorter: shorter.formula() });
            items[k] = shorter;
        } else {
            items[k] = Item::Fact(head.clone());
            facts.insert(head.clone());
            moves.push(Move::Fire { q, rule: formula, head });
        }
    }

    // base: goal => goal, weakened by everything else
    let mut b = ProofBuilder::new();
    let mut p = b.id(goal.clone());
    let mut skipped = false;
    for it in &items {
        let f = it.formula();
        if !skipped && f == goal {
            skipped = true;
            continue;
        }
        p = b.lw(p, f);
    }
    for m in moves.iter().rev() {
        p = match m {
            Move::SelfLoop(rule) => b.lw(p, rule.clone()),
            Move::Fire { q, rule, head } => {
                let (iq, ir) = (b.id(q.clone()), b.id(head.clone()));
                let lemma = b.imp_l(iq, ir, rule.clone());
                let c = b.cut_on(lemma, p, head.clone());
                b.lc(c, q.clone())
            }
            Move::Shrink { q, rule, body, pos, shorter } => {
                // q, rule => shorter
                let mut rest = body.clone();
                rest.remove(*pos);
                let head = rule.as_op(BinOp::Imp).unwrap().1.clone();
                let m = fuse_right(&mut b, body);
                let m = fuse_left(&mut b, m, &rest);
                let ir = b.id(head);
                let m = b.imp_l(m, ir, rule.clone());
                let lemma = b.imp_r_on(m, fold_left(BinOp::Star, &rest, Formula::one()));
                debug_assert_eq!(&b.goal(lemma), shorter);
                let c = b.cut_on(lemma, p, shorter.clone());
                b.lc(c, q.clone())
            }
            Move::And(f) => {
                let p = b.and_l1(p, f.clone());
                let p = b.and_l2(p, f.clone());
                b.lc(p, f.clone())
            }
            Move::One => b.one_w(p),
            Move::Fan(f, heads) => {
                let src = f.as_op(BinOp::Imp).unwrap().0;
                let mut p = p;
                for i in 0..heads.len() {
                    // f => src -> q_i
                    let proj = project(&mut b, heads, i);
                    let is = b.id(src.clone());
                    let m = b.imp_l(is, proj, f.clone());
                    let lemma = b.imp_r_on(m, src.clone());
                    p = b.cut(lemma, p);
                    if i > 0 {
                        p = b.lc(p, f.clone());
                    }
                }
                p
            }
        };
    }
    let proof = b.into_proof(p);
    debug_assert_eq!(proof.conclusion(), s);
    Ok(proof)
}

// ---------------------------------------------------------------------------
// Sequent and formula

/// `*ant -> suc` (see [`interpretation`]).
pub fn sequent_to_formula_goal(t: &Sequent) -> Formula {
    interpretation(t)
}

/// Turns a proof of `=> I(t)` into a proof of `t` by one cut.
pub fn lift_formula_proof(p: &Proof, t: &Sequent) -> Result<Proof, HornError> {
    if t.suc.len() > 1 {
        return Err(HornError::Succedents);
    }
    let i = interpretation(t);
    let want = Sequent::goal(vec![], i.clone());
    if p.conclusion() != &want {
        return Err(HornError::Conclusion { got: p.conclusion().to_string(), want: i.to_string() });
    }
    let mut b = ProofBuilder::new();
    let root = b.graft(p);
    let ant = t.ant.as_slice();
    let left = if ant.is_empty() { b.one_r() } else { fuse_right(&mut b, ant) };
    let right = match t.suc.as_slice() {
        [g] => b.id(g.clone()),
        _ => b.zero_l(),
    };
    let lemma = b.imp_l(left, right, i.clone());
    let out = b.cut_on(root, lemma, i);
    Ok(b.into_proof(out))
}

// ---------------------------------------------------------------------------
// Random instances

/// A random implicational Horn sequent of roughly `size` symbols. About
/// half the instances are valid. Products have at most `max_arity` atoms.
pub fn random_horn<R: Rng>(rng: &mut R, size: usize, max_arity: usize) -> Sequent {
    let n_atoms = (size / 6).clamp(2, 400);
    let atom = |i: usize| Formula::atom(&format!("h{i}"));
    let mut ant: Vec<Formula> = Vec::new();
    let mut used = 0usize;
    let n_facts = rng.gen_range(1..=3.min(n_atoms));
    for _ in 0..n_facts {
        let f = atom(rng.gen_range(0..n_atoms));
        used += 1;
        ant.push(f);
    }
    while used < size {
        let k = rng.gen_range(1..=max_arity);
        let prod: Vec<Formula> = (0..k).map(|_| atom(rng.gen_range(0..n_atoms))).collect();
        let one = atom(rng.gen_range(0..n_atoms));
        let pf = fold_left(BinOp::Star, &prod, Formula::one());
        let f = match rng.gen_range(0..10) {
            0 => one.clone(),
            1 => Formula::imp(one, pf),
            2 if !ant.is_empty() => {
                let j = rng.gen_range(0..ant.len());
                let g = ant.swap_remove(j);
                Formula::and(g, Formula::imp(pf, one))
            }
            3 => Formula::and(Formula::imp(pf, one), Formula::one()),
            _ => Formula::imp(pf, one),
        };
        used += f.size() as usize + 1;
        ant.push(f);
    }
    let probe = Sequent::goal(ant.clone(), atom(0));
    let model = least_model(&probe).expect("generated in grammar");
    let goal = if rng.gen_bool(0.5) && !model.is_empty() {
        let v: Vec<&String> = model.iter().collect();
        Formula::atom(v[rng.gen_range(0..v.len())])
    } else {
        atom(rng.gen_range(0..n_atoms))
    };
    Sequent::goal(ant, goal)
}
