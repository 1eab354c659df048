//! Proof objects, the checker and metrics.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::calculus::{parse_calculus, Calculus, Rule, Template};
use crate::formula::{parse_formula, BinOp, Const, Formula, Multiset};
use crate::sequent::Sequent;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofNode {
    pub rule: Rule,
    pub conclusion: Sequent,
    pub premises: Vec<usize>,
    /// The main formula of the rule, or the cut formula.
    pub principal: Option<Formula>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Proof {
    pub nodes: Vec<ProofNode>,
    pub root: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofMetrics {
    pub size: u64,
    pub lines: u64,
    pub node_count: u64,
    pub tree_like: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("node {node} ({rule}): {reason}")]
pub struct Violation {
    pub node: usize,
    pub rule: String,
    pub reason: String,
}

impl Proof {
    pub fn conclusion(&self) -> &Sequent {
        &self.nodes[self.root].conclusion
    }

    /// Reachable node indices, premises before conclusions.
    pub fn topological(&self) -> Result<Vec<usize>, Violation> {
        let n = self.nodes.len();
        if self.root >= n {
            return Err(Violation { node: self.root, rule: "-".into(), reason: "root index out of range".into() });
        }
        // 0 = unseen, 1 = on stack, 2 = done
        let mut state = vec![0u8; n];
        let mut order = Vec::new();
        let mut stack = vec![(self.root, 0usize)];
        state[self.root] = 1;
        while let Some(&mut (v, ref mut next)) = stack.last_mut() {
            let node = &self.nodes[v];
            if *next < node.premises.len() {
                let p = node.premises[*next];
                *next += 1;
                if p >= n {
                    return Err(Violation {
                        node: v,
                        rule: node.rule.name(),
                        reason: format!("premise index {p} out of range"),
                    });
                }
                match state[p] {
                    0 => {
                        state[p] = 1;
                        stack.push((p, 0));
                    }
                    1 => {
                        return Err(Violation {
                            node: v,
                            rule: node.rule.name(),
                            reason: "proof graph has a cycle".into(),
                        })
                    }
                    _ => {}
                }
            } else {
                state[v] = 2;
                order.push(v);
                stack.pop();
            }
        }
        Ok(order)
    }

    /// Metrics over the nodes reachable from the root, each counted once.
    pub fn metrics(&self) -> Result<ProofMetrics, Violation> {
        let order = self.topological()?;
        let mut parents: HashMap<usize, usize> = HashMap::new();
        let mut m = ProofMetrics { size: 0, lines: 0, node_count: order.len() as u64, tree_like: true };
        for &v in &order {
            let node = &self.nodes[v];
            m.size = m.size.saturating_add(node.conclusion.size());
            m.lines = m.lines.saturating_add(node.conclusion.lines());
            for &p in &node.premises {
                *parents.entry(p).or_default() += 1;
            }
        }
        m.tree_like = parents.values().all(|&c| c == 1);
        Ok(m)
    }

    pub fn rules_used(&self) -> Result<Vec<Rule>, Violation> {
        let mut v: Vec<Rule> = self.topological()?.iter().map(|&i| self.nodes[i].rule).collect();
        v.sort();
        v.dedup();
        Ok(v)
    }

    /// Keeps only reachable nodes, renumbered premises-first.
    pub fn compact(&self) -> Result<Proof, Violation> {
        let order = self.topological()?;
        let index: HashMap<usize, usize> = order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let nodes = order
            .iter()
            .map(|&v| {
                let n = &self.nodes[v];
                ProofNode { premises: n.premises.iter().map(|p| index[p]).collect(), ..n.clone() }
            })
            .collect::<Vec<_>>();
        let root = nodes.len() - 1;
        Ok(Proof { nodes, root })
    }
}

// ---------------------------------------------------------------------------
// Checking

fn need<T>(x: Option<T>, msg: &str) -> Result<T, String> {
    x.ok_or_else(|| msg.to_string())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn bin_parts(f: &Formula, op: BinOp) -> Result<(Formula, Formula), String> {
    match f.as_op(op) {
        Some((a, b)) => Ok((a.clone(), b.clone())),
        None => Err(format!("principal {f} is not a {} formula", op.symbol())),
    }
}

fn expect_conclusion(actual: &Sequent, ant: Multiset, suc: Multiset) -> Result<(), String> {
    let want = Sequent { ant, suc };
    ensure(*actual == want, || format!("conclusion should be {want} but is {actual}"))
}

fn take(m: &Multiset, f: &Formula, side: &str) -> Result<Multiset, String> {
    m.without(f).ok_or_else(|| format!("{f} missing from premise {side}"))
}

fn is_literal_atom(f: &Formula) -> bool {
    f.is_atom()
}

fn neg_atom(f: &Formula) -> Option<&Formula> {
    f.as_neg().filter(|a| a.is_atom())
}

pub(crate) fn check_template(t: Template, s: &Sequent, calc: &Calculus) -> Result<(), String> {
    let ant = s.ant.as_slice();
    let suc = s.suc.as_slice();
    let bad = || Err(format!("{s} is not an instance of template {} (template requires atom)", t.name()));
    match t {
        Template::ExcludedMiddle => match (ant, suc) {
            ([], [g]) => match g.as_op(BinOp::Or) {
                Some((p, np)) if p.is_atom() && neg_atom(np) == Some(p) => Ok(()),
                _ => bad(),
            },
            _ => bad(),
        },
        Template::AtomUnit => match (ant, suc) {
            ([p], [one]) if is_literal_atom(p) && one.is_const(Const::One) => Ok(()),
            _ => bad(),
        },
        Template::NegAtomUnit => match (ant, suc) {
            ([np], [one]) if neg_atom(np).is_some() && one.is_const(Const::One) => Ok(()),
            _ => bad(),
        },
        Template::ZeroAtom => match (ant, suc) {
            ([z], [p]) if z.is_const(Const::Zero) && p.is_atom() => Ok(()),
            _ => bad(),
        },
        Template::ZeroNegAtom => match (ant, suc) {
            ([z], [np]) if z.is_const(Const::Zero) && neg_atom(np).is_some() => Ok(()),
            _ => bad(),
        },
        Template::ZeroStar => {
            let zz = Formula::star(Formula::zero(), Formula::zero());
            match (ant, suc) {
                ([z], [g]) if z.is_const(Const::Zero) && *g == zz => Ok(()),
                _ => bad(),
            }
        }
        Template::ChuAtom => {
            let (d, n) = calc.chu.as_ref().ok_or("calculus has no Chu parameters")?;
            ensure(suc.len() == 1 && suc[0] == *d, || format!("{s}: succedent must be D = {d}"))?;
            ensure(ant.len() == 2, || format!("{s}: antecedent must be p, N"))?;
            let rest = s.ant.without(n).ok_or_else(|| format!("{s}: N = {n} missing"))?;
            ensure(rest.as_slice()[0].is_atom(), || format!("{s}: template requires atom"))
        }
        Template::LiteralId => match (ant, suc) {
            ([a], [b]) if a == b && (a.is_atom() || neg_atom(a).is_some()) => Ok(()),
            _ => bad(),
        },
        Template::Contradiction => match (ant, suc) {
            ([p, np], []) | ([np, p], []) if p.is_atom() && neg_atom(np) == Some(p) => Ok(()),
            _ => bad(),
        },
    }
}

fn check_node(calc: &Calculus, proof: &Proof, idx: usize, hyps: &HashSet<Sequent>) -> Result<(), String> {
    let node = &proof.nodes[idx];
    let c = &node.conclusion;
    let lang = calc.language();
    for f in c.formulas() {
        if !f.in_language(lang) {
            return Err(format!("{f} not in language {lang:?}"));
        }
    }
    if calc.single_conclusion() && c.suc.len() > 1 {
        return Err(format!("{c} has more than one succedent formula"));
    }
    if !calc.allows(node.rule) {
        return Err(format!("rule {} not in calculus {calc}", node.rule));
    }
    ensure(node.premises.len() == node.rule.arity(), || {
        format!("expected {} premises, found {}", node.rule.arity(), node.premises.len())
    })?;
    let prem: Vec<&Sequent> = node.premises.iter().map(|&p| &proof.nodes[p].conclusion).collect();
    let principal = || need(node.principal.clone(), "missing principal formula");
    match node.rule {
        Rule::Id => match (c.ant.as_slice(), c.suc.as_slice()) {
            ([a], [b]) if a == b => Ok(()),
            _ => Err(format!("{c} is not an identity")),
        },
        Rule::OneR => expect_conclusion(c, Multiset::new(), Multiset::singleton(Formula::one())),
        Rule::ZeroL => expect_conclusion(c, Multiset::singleton(Formula::zero()), Multiset::new()),
        Rule::OneW => expect_conclusion(c, prem[0].ant.with(Formula::one()), prem[0].suc.clone()),
        Rule::ZeroW => expect_conclusion(c, prem[0].ant.clone(), prem[0].suc.with(Formula::zero())),
        Rule::AndL1 | Rule::AndL2 => {
            let p = principal()?;
            let (a, b) = bin_parts(&p, BinOp::And)?;
            let aux = if node.rule == Rule::AndL1 { a } else { b };
            let rest = take(&prem[0].ant, &aux, "antecedent")?;
            expect_conclusion(c, rest.with(p), prem[0].suc.clone())
        }
        Rule::AndR => {
            let p = principal()?;
            let (a, b) = bin_parts(&p, BinOp::And)?;
            let d1 = take(&prem[0].suc, &a, "succedent")?;
            let d2 = take(&prem[1].suc, &b, "succedent")?;
            ensure(prem[0].ant == prem[1].ant, || "premise antecedents differ".into())?;
            ensure(d1 == d2, || "premise succedent contexts differ".into())?;
            expect_conclusion(c, prem[0].ant.clone(), d1.with(p))
        }
        Rule::OrL => {
            let p = principal()?;
            let (a, b) = bin_parts(&p, BinOp::Or)?;
            let g1 = take(&prem[0].ant, &a, "antecedent")?;
            let g2 = take(&prem[1].ant, &b, "antecedent")?;
            ensure(g1 == g2, || "premise antecedent contexts differ".into())?;
            ensure(prem[0].suc == prem[1].suc, || "premise succedents differ".into())?;
            expect_conclusion(c, g1.with(p), prem[0].suc.clone())
        }
        Rule::OrR1 | Rule::OrR2 => {
            let p = principal()?;
            let (a, b) = bin_parts(&p, BinOp::Or)?;
            let aux = if node.rule == Rule::OrR1 { a } else { b };
            let rest = take(&prem[0].suc, &aux, "succedent")?;
            expect_conclusion(c, prem[0].ant.clone(), rest.with(p))
        }
        Rule::StarL => {
            let p = principal()?;
            let (a, b) = bin_parts(&p, BinOp::Star)?;
            let rest = take(&prem[0].ant, &a, "antecedent")?;
            let rest = take(&rest, &b, "antecedent")?;
            expect_conclusion(c, rest.with(p), prem[0].suc.clone())
        }
        Rule::StarR => {
            let p = principal()?;
            let (a, b) = bin_parts(&p, BinOp::Star)?;
            let d = take(&prem[0].suc, &a, "succedent")?;
            let l = take(&prem[1].suc, &b, "succedent")?;
            expect_conclusion(c, prem[0].ant.union(&prem[1].ant), d.union(&l).with(p))
        }
        Rule::ImpL => {
            let p = principal()?;
            let (a, b) = bin_parts(&p, BinOp::Imp)?;
            let d = take(&prem[0].suc, &a, "succedent")?;
            let s = take(&prem[1].ant, &b, "antecedent")?;
            expect_conclusion(c, prem[0].ant.union(&s).with(p), d.union(&prem[1].suc))
        }
        Rule::ImpR => {
            let p = principal()?;
            let (a, b) = bin_parts(&p, BinOp::Imp)?;
            let g = take(&prem[0].ant, &a, "antecedent")?;
            let d = take(&prem[0].suc, &b, "succedent")?;
            expect_conclusion(c, g, d.with(p))
        }
        Rule::Cut => {
            let a = principal()?;
            let d = take(&prem[0].suc, &a, "succedent")?;
            let s = take(&prem[1].ant, &a, "antecedent")?;
            expect_conclusion(c, prem[0].ant.union(&s), d.union(&prem[1].suc))
        }
        Rule::TopR => ensure(c.suc.contains(&Formula::top()), || format!("{c} has no top in succedent")),
        Rule::BotL => ensure(c.ant.contains(&Formula::bot()), || format!("{c} has no bot in antecedent")),
        Rule::Lw => expect_conclusion(c, prem[0].ant.with(principal()?), prem[0].suc.clone()),
        Rule::Rw => expect_conclusion(c, prem[0].ant.clone(), prem[0].suc.with(principal()?)),
        Rule::Lc => {
            let a = principal()?;
            ensure(prem[0].ant.count(&a) >= 2, || format!("{a} does not occur twice"))?;
            expect_conclusion(c, take(&prem[0].ant, &a, "antecedent")?, prem[0].suc.clone())
        }
        Rule::Rc => {
            let a = principal()?;
            ensure(prem[0].suc.count(&a) >= 2, || format!("{a} does not occur twice"))?;
            expect_conclusion(c, prem[0].ant.clone(), take(&prem[0].suc, &a, "succedent")?)
        }
        Rule::BangR => {
            let p = principal()?;
            let a = need(p.as_bang().cloned(), "principal is not a ! formula")?;
            ensure(prem[0].suc.as_slice() == [a.clone()], || "premise succedent must be exactly A".into())?;
            ensure(prem[0].ant.iter().all(|g| g.as_bang().is_some()), || "context must be all ! formulas".into())?;
            expect_conclusion(c, prem[0].ant.clone(), Multiset::singleton(p))
        }
        Rule::BangL => {
            let p = principal()?;
            let a = need(p.as_bang().cloned(), "principal is not a ! formula")?;
            expect_conclusion(c, take(&prem[0].ant, &a, "antecedent")?.with(p), prem[0].suc.clone())
        }
        Rule::BangW => {
            let p = principal()?;
            need(p.as_bang(), "principal is not a ! formula")?;
            expect_conclusion(c, prem[0].ant.with(p), prem[0].suc.clone())
        }
        Rule::BangC => {
            let p = principal()?;
            need(p.as_bang(), "principal is not a ! formula")?;
            ensure(prem[0].ant.count(&p) >= 2, || format!("{p} does not occur twice"))?;
            expect_conclusion(c, take(&prem[0].ant, &p, "antecedent")?, prem[0].suc.clone())
        }
        Rule::Initial(t) => check_template(t, c, calc),
        Rule::Hyp => ensure(hyps.contains(c), || format!("{c} is not a hypothesis")),
    }
}

/// Checks every reachable node and returns the metrics. Nodes are visited
/// premises-first from the root, so the first violation is deterministic.
pub fn check_proof(calc: &Calculus, proof: &Proof, hyps: &[Sequent]) -> Result<ProofMetrics, Violation> {
    let order = proof.topological()?;
    let hyps: HashSet<Sequent> = hyps.iter().cloned().collect();
    for &v in &order {
        check_node(calc, proof, v, &hyps).map_err(|reason| Violation {
            node: v,
            rule: proof.nodes[v].rule.name(),
            reason,
        })?;
    }
    proof.metrics()
}

/// Checks a single node in isolation (its premises must be valid indices).
pub fn check_rule_instance(calc: &Calculus, proof: &Proof, idx: usize) -> Result<(), Violation> {
    let node = proof.nodes.get(idx).ok_or_else(|| Violation {
        node: idx,
        rule: "-".into(),
        reason: "node index out of range".into(),
    })?;
    if let Some(&p) = node.premises.iter().find(|&&p| p >= proof.nodes.len()) {
        return Err(Violation { node: idx, rule: node.rule.name(), reason: format!("premise index {p} out of range") });
    }
    check_node(calc, proof, idx, &HashSet::new()).map_err(|reason| Violation {
        node: idx,
        rule: node.rule.name(),
        reason,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum EmbedError {
    #[error("rules not available in target: {0:?}")]
    Rules(Vec<String>),
    #[error("target rejects proof: {0}")]
    Check(Violation),
}

/// Re-checks a proof of `from` under the larger calculus `to`.
pub fn subcalculus_embed(proof: &Proof, from: &Calculus, to: &Calculus) -> Result<Proof, EmbedError> {
    check_proof(from, proof, &[]).map_err(EmbedError::Check)?;
    let missing: Vec<String> = proof
        .rules_used()
        .map_err(EmbedError::Check)?
        .into_iter()
        .filter(|r| !to.allows(*r))
        .map(|r| r.name())
        .collect();
    if !missing.is_empty() {
        return Err(EmbedError::Rules(missing));
    }
    check_proof(to, proof, &[]).map_err(EmbedError::Check)?;
    Ok(proof.clone())
}

// ---------------------------------------------------------------------------
// Exchange format

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct SequentDoc {
    pub antecedent: Vec<String>,
    pub succedent: Vec<String>,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct NodeDoc {
    pub id: usize,
    pub rule: String,
    pub conclusion: SequentDoc,
    pub premises: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub principal: Option<String>,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct ProofDoc {
    pub calculus: String,
    pub nodes: Vec<NodeDoc>,
    pub root: usize,
}

#[derive(Debug, thiserror::Error)]
pub enum ExchangeError {
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Format(String),
}

fn seq_doc(s: &Sequent) -> SequentDoc {
    SequentDoc {
        antecedent: s.ant.iter().map(|f| f.to_string()).collect(),
        succedent: s.suc.iter().map(|f| f.to_string()).collect(),
    }
}

pub fn proof_to_doc(calc: &Calculus, proof: &Proof) -> ProofDoc {
    ProofDoc {
        calculus: calc.to_string(),
        nodes: proof
            .nodes
            .iter()
            .enumerate()
            .map(|(i, n)| NodeDoc {
                id: i,
                rule: n.rule.name(),
                conclusion: seq_doc(&n.conclusion),
                premises: n.premises.clone(),
                principal: n.principal.as_ref().map(|f| f.to_string()),
            })
            .collect(),
        root: proof.root,
    }
}

pub fn proof_to_json(calc: &Calculus, proof: &Proof) -> String {
    serde_json::to_string_pretty(&proof_to_doc(calc, proof)).expect("proof serializes")
}

fn parse_list(v: &[String]) -> Result<Multiset, ExchangeError> {
    v.iter().map(|s| parse_formula(s).map_err(|e| ExchangeError::Format(format!("{e} in '{s}'")))).collect()
}

pub fn proof_from_doc(doc: &ProofDoc) -> Result<(Calculus, Proof), ExchangeError> {
    let calc = parse_calculus(&doc.calculus).map_err(|e| ExchangeError::Format(e.to_string()))?;
    let index: HashMap<usize, usize> = doc.nodes.iter().enumerate().map(|(i, n)| (n.id, i)).collect();
    if index.len() != doc.nodes.len() {
        return Err(ExchangeError::Format("duplicate node id".into()));
    }
    let lookup =
        |id: usize| index.get(&id).copied().ok_or_else(|| ExchangeError::Format(format!("unknown node id {id}")));
    let mut nodes = Vec::with_capacity(doc.nodes.len());
    for n in &doc.nodes {
        let rule =
            Rule::from_name(&n.rule).ok_or_else(|| ExchangeError::Format(format!("unknown rule '{}'", n.rule)))?;
        let conclusion =
            Sequent { ant: parse_list(&n.conclusion.antecedent)?, suc: parse_list(&n.conclusion.succedent)? };
        let premises = n.premises.iter().map(|&p| lookup(p)).collect::<Result<Vec<_>, _>>()?;
        let principal = match &n.principal {
            Some(s) => Some(parse_formula(s).map_err(|e| ExchangeError::Format(e.to_string()))?),
            None => None,
        };
        nodes.push(ProofNode { rule, conclusion, premises, principal });
    }
    Ok((calc, Proof { nodes, root: lookup(doc.root)? }))
}

pub fn proof_from_json(text: &str) -> Result<(Calculus, Proof), ExchangeError> {
    let doc: ProofDoc = serde_json::from_str(text)?;
    proof_from_doc(&doc)
}
