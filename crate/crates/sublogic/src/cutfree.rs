//! Classical reasoning inside `G`, the translation from `LK_nn`, and the
//! deduction step that trades initial sequents for antecedent formulas.

use std::collections::BTreeSet;

use crate::builder::ProofBuilder;
use crate::calculus::{Calculus, Rule, System, Template};
use crate::formula::{fold_left, BinOp, Formula, Kind, LanguageId, Multiset};
use crate::hard::{self, FamilyError};
use crate::proof::{check_proof, Proof};
use crate::search::{boolean_valid, eval_bool};
use crate::sequent::Sequent;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CutfreeError {
    #[error("{0} is not in *-negation normal form")]
    Language(Formula),
    #[error("proof is not tree-like")]
    NotTreeLike,
    #[error("input proof rejected: {0}")]
    Check(String),
    #[error("rule {0} cannot be translated")]
    Rule(String),
    #[error("conclusion {got} does not match {want}")]
    Shape { got: String, want: String },
    #[error(transparent)]
    Family(#[from] FamilyError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Goal {
    /// `A => 1`
    Unit,
    /// `0 => A`
    Zero,
    /// `=> A \/ ~A`
    Em,
    /// `A => A * A`
    Dup,
}

impl Goal {
    pub const ALL: [Goal; 4] = [Goal::Unit, Goal::Zero, Goal::Em, Goal::Dup];

    pub fn name(self) -> &'static str {
        match self {
            Goal::Unit => "unit",
            Goal::Zero => "zero",
            Goal::Em => "em",
            Goal::Dup => "dup",
        }
    }

    pub fn from_name(s: &str) -> Option<Goal> {
        Goal::ALL.iter().copied().find(|g| g.name() == s)
    }

    pub fn sequent(self, a: &Formula) -> Sequent {
        match self {
            Goal::Unit => Sequent::goal(vec![a.clone()], Formula::one()),
            Goal::Zero => Sequent::goal(vec![Formula::zero()], a.clone()),
            Goal::Em => Sequent::goal(vec![], Formula::or(a.clone(), Formula::neg(a.clone()))),
            Goal::Dup => Sequent::goal(vec![a.clone()], Formula::star(a.clone(), a.clone())),
        }
    }
}

fn is_literal(a: &Formula) -> bool {
    a.is_atom() || a.as_neg().is_some_and(|p| p.is_atom())
}

/// `~A /\ 1`, the droppable form of a negation.
fn guarded_neg(a: &Formula) -> Formula {
    Formula::and(Formula::neg(a.clone()), Formula::one())
}

/// Builds the structural lemmas inside a shared builder. Every call emits
/// fresh nodes so the result stays tree-like.
pub struct Structural<'a> {
    pub b: &'a mut ProofBuilder,
}

impl Structural<'_> {
    fn template(&mut self, t: Template, ant: Vec<Formula>, goal: Formula) -> usize {
        self.b.initial(t, Sequent::goal(ant, goal))
    }

    /// `A => 1`
    pub fn unit(&mut self, a: &Formula) -> usize {
        if a.is_atom() {
            return self.template(Template::AtomUnit, vec![a.clone()], Formula::one());
        }
        if is_literal(a) {
            return self.template(Template::NegAtomUnit, vec![a.clone()], Formula::one());
        }
        let Kind::Bin(op, x, y) = a.kind() else { unreachable!("checked *-nnf") };
        match op {
            BinOp::And => {
                let p = self.unit(x);
                self.b.and_l1(p, a.clone())
            }
            BinOp::Or => {
                let l = self.unit(x);
                let r = self.unit(y);
                self.b.or_l(l, r, a.clone())
            }
            BinOp::Star => {
                let l = self.unit(x);
                let r = self.unit(y);
                let r = self.b.one_w(r);
                let c = self.b.cut(l, r);
                self.b.star_l(c, a.clone())
            }
            BinOp::Imp => unreachable!("checked *-nnf"),
        }
    }

    /// `0 => A`
    pub fn zero(&mut self, a: &Formula) -> usize {
        if a.is_atom() {
            return self.template(Template::ZeroAtom, vec![Formula::zero()], a.clone());
        }
        if is_literal(a) {
            return self.template(Template::ZeroNegAtom, vec![Formula::zero()], a.clone());
        }
        let Kind::Bin(op, x, y) = a.kind() else { unreachable!("checked *-nnf") };
        match op {
            BinOp::And => {
                let l = self.zero(x);
                let r = self.zero(y);
                self.b.and_r(l, r)
            }
            BinOp::Or => {
                let l = self.zero(x);
                self.b.or_r1(l, y.clone())
            }
            BinOp::Star => {
                let zz = Formula::star(Formula::zero(), Formula::zero());
                let split = self.template(Template::ZeroStar, vec![Formula::zero()], zz.clone());
                let l = self.zero(x);
                let r = self.zero(y);
                let m = self.b.star_r(l, r);
                let m = self.b.star_l(m, zz);
                self.b.cut(split, m)
            }
            BinOp::Imp => unreachable!("checked *-nnf"),
        }
    }

    /// Adds `A` to the antecedent using `A => 1`.
    fn drop_pos(&mut self, p: usize, a: &Formula) -> usize {
        let u = self.unit(a);
        self.b.drop_with_unit(p, u)
    }

    /// Adds `~A /\ 1` to the antecedent by (1w) and (L/\).
    fn drop_guarded(&mut self, p: usize, a: &Formula) -> usize {
        let p = self.b.one_w(p);
        self.b.and_l2(p, guarded_neg(a))
    }

    /// `A, ~A => 0`
    fn clash(&mut self, a: &Formula) -> usize {
        let ia = self.b.id(a.clone());
        let z = self.b.id(Formula::zero());
        self.b.imp_l(ia, z, Formula::neg(a.clone()))
    }

    /// `A, ~A /\ 1 => 0`
    fn clash_guarded(&mut self, a: &Formula) -> usize {
        let c = self.clash(a);
        self.b.and_l1(c, guarded_neg(a))
    }

    /// `G => ~A /\ 1` from a proof of `G, A => 0` and the droppable context `G`.
    fn close_neg(&mut self, p: usize, a: &Formula, pos: &[&Formula], guarded: &[&Formula]) -> usize {
        let neg = self.b.imp_r(p, Formula::neg(a.clone()));
        let mut one = self.b.one_r();
        for x in pos {
            one = self.drop_pos(one, x);
        }
        for x in guarded {
            one = self.drop_guarded(one, x);
        }
        self.b.and_r(neg, one)
    }

    /// `=> A \/ (~A /\ 1)`
    fn em_guarded(&mut self, a: &Formula) -> usize {
        let na = guarded_neg(a);
        let target = Formula::or(a.clone(), na.clone());
        if a.is_atom() {
            let em = self.template(Template::ExcludedMiddle, vec![], Formula::or(a.clone(), Formula::neg(a.clone())));
            let l = self.b.id(a.clone());
            let l = self.b.or_r1(l, na.clone());
            let r = self.b.id(Formula::neg(a.clone()));
            let u = self.unit(&Formula::neg(a.clone()));
            let r = self.b.and_r(r, u);
            let r = self.b.or_r2(r, a.clone());
            let split = self.b.or_l(l, r, Formula::or(a.clone(), Formula::neg(a.clone())));
            return self.b.cut(em, split);
        }
        if let Some(p) = a.as_neg().filter(|p| p.is_atom()) {
            // => p \/ ~p, then p => ~~p /\ 1 and ~p => ~p
            let em = self.template(Template::ExcludedMiddle, vec![], Formula::or(p.clone(), a.clone()));
            let c = self.clash(p);
            let nn = self.b.imp_r(c, Formula::neg(a.clone()));
            let u = self.unit(p);
            let l = self.b.and_r(nn, u);
            let l = self.b.or_r2(l, a.clone());
            let r = self.b.id(a.clone());
            let r = self.b.or_r1(r, na.clone());
            let split = self.b.or_l(l, r, Formula::or(p.clone(), a.clone()));
            return self.b.cut(em, split);
        }
        let Kind::Bin(op, x, y) = a.kind() else { unreachable!("checked *-nnf") };
        let (x, y) = (x.clone(), y.clone());
        let (nx, ny) = (guarded_neg(&x), guarded_neg(&y));
        // one proof of X, Y => target for each X in {x, nx}, Y in {y, ny}
        let pp = self.case_pos_pos(*op, a, &x, &y);
        let pn = self.case_pos_neg(*op, a, &x, &y);
        let np = self.case_neg_pos(*op, a, &x, &y);
        let nn = self.case_neg_neg(*op, a, &x, &y);
        let on_y_pos = self.b.or_l(pp, np, Formula::or(x.clone(), nx.clone()));
        let on_y_neg = self.b.or_l(pn, nn, Formula::or(x.clone(), nx.clone()));
        let both = self.b.or_l(on_y_pos, on_y_neg, Formula::or(y.clone(), ny.clone()));
        let ex = self.em_guarded(&x);
        let c = self.b.cut(ex, both);
        let ey = self.em_guarded(&y);
        let out = self.b.cut(ey, c);
        debug_assert_eq!(self.b.goal(out), target);
        out
    }

    /// `x, y => A \/ (~A /\ 1)`
    fn case_pos_pos(&mut self, op: BinOp, a: &Formula, x: &Formula, y: &Formula) -> usize {
        let na = guarded_neg(a);
        let p = match op {
            BinOp::And => {
                let l = self.b.id(x.clone());
                let l = self.drop_pos(l, y);
                let r = self.b.id(y.clone());
                let r = self.drop_pos(r, x);
                self.b.and_r(l, r)
            }
            BinOp::Or => {
                let l = self.b.id(x.clone());
                let l = self.drop_pos(l, y);
                self.b.or_r1(l, y.clone())
            }
            BinOp::Star => {
                let l = self.b.id(x.clone());
                let r = self.b.id(y.clone());
                self.b.star_r(l, r)
            }
            BinOp::Imp => unreachable!(),
        };
        self.b.or_r1(p, na)
    }

    /// `x, ~y /\ 1 => A \/ (~A /\ 1)`
    fn case_pos_neg(&mut self, op: BinOp, a: &Formula, x: &Formula, y: &Formula) -> usize {
        match op {
            BinOp::Or => {
                let l = self.b.id(x.clone());
                let l = self.drop_guarded(l, y);
                let l = self.b.or_r1(l, y.clone());
                self.b.or_r1(l, guarded_neg(a))
            }
            _ => {
                // x, ~y /\ 1, A => 0 via y, ~y /\ 1 => 0
                let c = self.clash_guarded(y);
                let c = match op {
                    BinOp::And => {
                        let c = self.drop_pos(c, x);
                        self.b.and_l2(c, a.clone())
                    }
                    _ => {
                        let c = self.drop_pos(c, x);
                        let c = self.drop_pos(c, x);
                        self.b.star_l(c, a.clone())
                    }
                };
                let n = self.close_neg(c, a, &[x], &[y]);
                self.b.or_r2(n, a.clone())
            }
        }
    }

    /// `~x /\ 1, y => A \/ (~A /\ 1)`
    fn case_neg_pos(&mut self, op: BinOp, a: &Formula, x: &Formula, y: &Formula) -> usize {
        match op {
            BinOp::Or => {
                let r = self.b.id(y.clone());
                let r = self.drop_guarded(r, x);
                let r = self.b.or_r2(r, x.clone());
                self.b.or_r1(r, guarded_neg(a))
            }
            _ => {
                let c = self.clash_guarded(x);
                let c = match op {
                    BinOp::And => {
                        let c = self.drop_pos(c, y);
                        self.b.and_l1(c, a.clone())
                    }
                    _ => {
                        let c = self.drop_pos(c, y);
                        let c = self.drop_pos(c, y);
                        self.b.star_l(c, a.clone())
                    }
                };
                let n = self.close_neg(c, a, &[y], &[x]);
                self.b.or_r2(n, a.clone())
            }
        }
    }

    /// `~x /\ 1, ~y /\ 1 => A \/ (~A /\ 1)`
    fn case_neg_neg(&mut self, op: BinOp, a: &Formula, x: &Formula, y: &Formula) -> usize {
        let c = match op {
            BinOp::And => {
                let c = self.clash_guarded(x);
                let c = self.drop_guarded(c, y);
                self.b.and_l1(c, a.clone())
            }
            BinOp::Or => {
                let l = self.clash_guarded(x);
                let l = self.drop_guarded(l, y);
                let r = self.clash_guarded(y);
                let r = self.drop_guarded(r, x);
                self.b.or_l(l, r, a.clone())
            }
            _ => {
                let c = self.clash_guarded(x);
                let c = self.drop_guarded(c, y);
                let c = self.drop_pos(c, y);
                self.b.star_l(c, a.clone())
            }
        };
        let n = self.close_neg(c, a, &[], &[x, y]);
        self.b.or_r2(n, a.clone())
    }

    /// `=> A \/ ~A`
    pub fn em(&mut self, a: &Formula) -> usize {
        let na = Formula::neg(a.clone());
        let target = Formula::or(a.clone(), na.clone());
        if a.is_atom() {
            return self.template(Template::ExcludedMiddle, vec![], target);
        }
        if let Some(p) = a.as_neg().filter(|p| p.is_atom()) {
            // the direct tree: split on p \/ ~p
            let em = self.template(Template::ExcludedMiddle, vec![], Formula::or(p.clone(), a.clone()));
            let c = self.clash(p);
            let l = self.b.imp_r(c, na.clone());
            let l = self.b.or_r2(l, a.clone());
            let r = self.b.id(a.clone());
            let r = self.b.or_r1(r, na.clone());
            let split = self.b.or_l(l, r, Formula::or(p.clone(), a.clone()));
            return self.b.cut(em, split);
        }
        let g = self.em_guarded(a);
        let l = self.b.id(a.clone());
        let l = self.b.or_r1(l, na.clone());
        let r = self.b.id(na.clone());
        let r = self.b.and_l1(r, guarded_neg(a));
        let r = self.b.or_r2(r, a.clone());
        let unguard = self.b.or_l(l, r, Formula::or(a.clone(), guarded_neg(a)));
        self.b.cut(g, unguard)
    }

    /// `A => A * A`
    pub fn dup(&mut self, a: &Formula) -> usize {
        let aa = Formula::star(a.clone(), a.clone());
        let (l1, l2) = (self.b.id(a.clone()), self.b.id(a.clone()));
        let same = self.b.star_r(l1, l2);
        let ia = self.b.id(a.clone());
        let z = self.zero(&aa);
        let other = self.b.imp_l(ia, z, Formula::neg(a.clone()));
        let split = self.b.or_l(same, other, Formula::or(a.clone(), Formula::neg(a.clone())));
        let em = self.em(a);
        self.b.cut(em, split)
    }

    pub fn prove(&mut self, a: &Formula, goal: Goal) -> usize {
        match goal {
            Goal::Unit => self.unit(a),
            Goal::Zero => self.zero(a),
            Goal::Em => self.em(a),
            Goal::Dup => self.dup(a),
        }
    }
}

/// A tree-like `G` proof of the structural lemma `goal` for a *-nnf formula.
pub fn lemma33_prove(a: &Formula, goal: Goal) -> Result<Proof, CutfreeError> {
    if !a.in_language(LanguageId::StarNn) {
        return Err(CutfreeError::Language(a.clone()));
    }
    let mut b = ProofBuilder::new();
    let root = Structural { b: &mut b }.prove(a, goal);
    Ok(b.into_proof(root))
}

fn require_tree(calc: &Calculus, p: &Proof) -> Result<(), CutfreeError> {
    let m = check_proof(calc, p, &[]).map_err(|v| CutfreeError::Check(v.to_string()))?;
    if !m.tree_like {
        return Err(CutfreeError::NotTreeLike);
    }
    Ok(())
}

fn sole_principal(p: &Proof, v: usize) -> Formula {
    p.nodes[v].principal.clone().expect("structural rules record their principal formula")
}

/// Translates a tree-like `LK_nn` proof into a tree-like `G` proof of the
/// same sequent. Structural rules become cuts with the lemmas of
/// [`lemma33_prove`].
pub fn translate_lknn_to_g(p: &Proof) -> Result<Proof, CutfreeError> {
    require_tree(&Calculus::new(System::LKnn), p)?;
    let order = p.topological().map_err(|v| CutfreeError::Check(v.to_string()))?;
    let mut b = ProofBuilder::new();
    let mut out = vec![usize::MAX; p.nodes.len()];
    for v in order {
        let node = &p.nodes[v];
        let prem: Vec<usize> = node.premises.iter().map(|&q| out[q]).collect();
        let mut st = Structural { b: &mut b };
        out[v] = match node.rule {
            Rule::Initial(Template::LiteralId) => st.b.id(node.conclusion.ant.as_slice()[0].clone()),
            Rule::Initial(Template::Contradiction) => {
                let np = node.conclusion.ant.iter().find(|f| f.as_neg().is_some()).unwrap().clone();
                let pa = np.as_neg().unwrap().clone();
                let ia = st.b.id(pa);
                let z = st.b.zero_l();
                st.b.imp_l(ia, z, np)
            }
            Rule::Initial(Template::ExcludedMiddle) => st.b.initial(Template::ExcludedMiddle, node.conclusion.clone()),
            Rule::Lw => {
                let a = sole_principal(p, v);
                let w = st.b.one_w(prem[0]);
                let u = st.unit(&a);
                st.b.cut(u, w)
            }
            Rule::Rw => {
                let a = sole_principal(p, v);
                let w = st.b.zero_w(prem[0]);
                let z = st.zero(&a);
                st.b.cut_on(w, z, Formula::zero())
            }
            Rule::Lc => {
                let a = sole_principal(p, v);
                let m = st.b.star_l(prem[0], Formula::star(a.clone(), a.clone()));
                let d = st.dup(&a);
                st.b.cut(d, m)
            }
            Rule::AndL1 | Rule::AndL2 | Rule::AndR | Rule::OrL | Rule::OrR1 | Rule::OrR2 | Rule::Cut => {
                st.b.push(node.rule, node.conclusion.clone(), prem, node.principal.clone())
            }
            r => return Err(CutfreeError::Rule(r.name())),
        };
        debug_assert_eq!(b.seq(out[v]), &node.conclusion);
    }
    Ok(b.into_proof(out[p.root]))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeductionResult {
    pub sigma: Multiset,
    pub proof: Proof,
}

/// `(C -> B) /\ 1` for an initial sequent `C => B`, `B /\ 1` for `=> B`.
fn guard_initial(s: &Sequent) -> Formula {
    let b = s.suc.as_slice()[0].clone();
    match s.ant.as_slice() {
        [] => Formula::and(b, Formula::one()),
        [a] => Formula::and(Formula::imp(a.clone(), b), Formula::one()),
        _ => unreachable!("initial sequents have at most one antecedent formula"),
    }
}

/// Replaces every initial sequent of a tree-like `G` proof by a guarded
/// antecedent formula, giving an `FL_e` proof of `sigma, Gamma => Delta`.
pub fn feasible_deduction(p: &Proof) -> Result<DeductionResult, CutfreeError> {
    require_tree(&Calculus::new(System::G), p)?;
    let order = p.topological().map_err(|v| CutfreeError::Check(v.to_string()))?;
    let mut b = ProofBuilder::new();
    let mut out: Vec<(usize, Multiset)> = vec![(usize::MAX, Multiset::new()); p.nodes.len()];
    for v in order {
        let node = &p.nodes[v];
        let done = match node.rule {
            Rule::Initial(_) => {
                let s = &node.conclusion;
                let g = guard_initial(s);
                let goal = s.suc.as_slice()[0].clone();
                let q = match s.ant.as_slice() {
                    [] => b.id(goal.clone()),
                    [a] => {
                        let ia = b.id(a.clone());
                        let ib = b.id(goal.clone());
                        b.imp_l(ia, ib, g.as_op(BinOp::And).unwrap().0.clone())
                    }
                    _ => unreachable!(),
                };
                (b.and_l1(q, g.clone()), Multiset::from_vec(vec![g]))
            }
            Rule::Hyp => return Err(CutfreeError::Rule("hyp".into())),
            Rule::AndR | Rule::OrL => {
                let (l, sl) = out[node.premises[0]].clone();
                let (r, sr) = out[node.premises[1]].clone();
                let l = weaken_guarded(&mut b, l, &sr);
                let r = weaken_guarded(&mut b, r, &sl);
                let sigma = sl.union(&sr);
                let c = Sequent::new(node.conclusion.ant.union(&sigma), node.conclusion.suc.clone());
                (b.push(node.rule, c, vec![l, r], node.principal.clone()), sigma)
            }
            _ => {
                let mut sigma = Multiset::new();
                let mut prem = Vec::new();
                for &q in &node.premises {
                    sigma = sigma.union(&out[q].1);
                    prem.push(out[q].0);
                }
                let c = Sequent::new(node.conclusion.ant.union(&sigma), node.conclusion.suc.clone());
                (b.push(node.rule, c, prem, node.principal.clone()), sigma)
            }
        };
        out[v] = done;
    }
    let (root, sigma) = out[p.root].clone();
    let proof = b.into_proof(root);
    check_proof(&Calculus::new(System::FLe), &proof, &[]).map_err(|v| CutfreeError::Check(v.to_string()))?;
    Ok(DeductionResult { sigma, proof })
}

/// Adds each `C /\ 1` of `extra` by (1w) then (L/\).
fn weaken_guarded(b: &mut ProofBuilder, p: usize, extra: &Multiset) -> usize {
    let mut p = p;
    for g in extra.iter().rev() {
        p = b.one_w(p);
        p = b.and_l2(p, g.clone());
    }
    p
}

/// Whether `f` has the shape `C /\ 1` and at most one variable.
pub fn is_guarded_single_variable(f: &Formula) -> bool {
    f.as_op(BinOp::And).is_some_and(|(_, one)| one.is_const(crate::formula::Const::One)) && f.vars().len() <= 1
}

/// Classical validity of the forgetful image of a single-variable formula,
/// by its at most two valuations.
pub fn single_variable_valid(f: &Formula) -> bool {
    let g = f.forgetful();
    let v: Vec<String> = g.vars().into_iter().collect();
    match v.as_slice() {
        [] => eval_bool(&g, &|_| false),
        [x] => [false, true].iter().all(|&val| eval_bool(&g, &|a| a == x && val)),
        _ => false,
    }
}

fn in_p_or_s(name: &str) -> bool {
    name.starts_with("p_") || name.starts_with("s_")
}

/// Whether every occurrence of an atom selected by `pred` is positive.
pub fn monotone_in(f: &Formula, pred: &dyn Fn(&str) -> bool) -> bool {
    fn go(f: &Formula, positive: bool, pred: &dyn Fn(&str) -> bool) -> bool {
        match f.kind() {
            Kind::Atom(a) => positive || !pred(a),
            Kind::Const(_) => true,
            Kind::Bin(BinOp::Imp, a, b) => go(a, !positive, pred) && go(b, positive, pred),
            Kind::Bin(_, a, b) => go(a, positive, pred) && go(b, positive, pred),
            Kind::Bang(a) => go(a, positive, pred),
        }
    }
    go(f, true, pred)
}

#[derive(Debug, Clone)]
pub struct Assembled {
    pub sequent: Sequent,
    pub proof: Proof,
    /// Members of sigma over `p`- and `s`-atoms only.
    pub sigma_ps: Multiset,
    pub pi: Multiset,
}

/// `Clique_n => nnf(~Color_n)` with the clique of size `isqrt(n) + 1`.
pub fn clique_color_goal(n: usize) -> Result<Sequent, CutfreeError> {
    let k = hard::isqrt(n).max(1);
    Ok(hard::clique_color_sequent(n, k)?)
}

/// `Clique_n, Pi_n => *Sigma^{p,s} -> nnf(~Color_n)` with its `FL_e` proof,
/// from an `LK_nn` proof of [`clique_color_goal`].
pub fn assemble_sn(n: usize, p: &Proof) -> Result<Assembled, CutfreeError> {
    let want = clique_color_goal(n)?;
    if p.conclusion() != &want {
        return Err(CutfreeError::Shape { got: p.conclusion().to_string(), want: want.to_string() });
    }
    let g = translate_lknn_to_g(p)?;
    let ded = feasible_deduction(&g)?;
    let (ps, pi): (Vec<Formula>, Vec<Formula>) =
        ded.sigma.iter().cloned().partition(|f| f.vars().iter().all(|v| in_p_or_s(v)));
    let mut b = ProofBuilder::new();
    let mut root = b.graft(&ded.proof);
    let product = if ps.is_empty() {
        root = b.one_w(root);
        Formula::one()
    } else {
        let mut acc = ps[0].clone();
        for x in &ps[1..] {
            acc = Formula::star(acc, x.clone());
            root = b.star_l(root, acc.clone());
        }
        acc
    };
    debug_assert_eq!(product, fold_left(BinOp::Star, &ps, Formula::one()));
    root = b.imp_r_on(root, product);
    let proof = b.into_proof(root);
    check_proof(&Calculus::new(System::FLe), &proof, &[]).map_err(|v| CutfreeError::Check(v.to_string()))?;
    Ok(Assembled {
        sequent: proof.conclusion().clone(),
        proof,
        sigma_ps: Multiset::from_vec(ps),
        pi: Multiset::from_vec(pi),
    })
}

/// The properties an assembled `S_n` must have: antecedent monotone in the
/// `p` atoms, `Pi` free of `p` and `s` atoms, and a classically valid
/// forgetful image. Returns the failed property, if any.
pub fn audit_sn(a: &Assembled) -> Result<(), String> {
    let is_p = |v: &str| v.starts_with("p_");
    for f in a.sequent.ant.iter() {
        if !monotone_in(f, &is_p) {
            return Err(format!("antecedent formula {f} is not monotone in p"));
        }
    }
    let touched: BTreeSet<String> = a.pi.iter().flat_map(|f| f.vars()).filter(|v| in_p_or_s(v)).collect();
    if !touched.is_empty() {
        return Err(format!("Pi mentions {touched:?}"));
    }
    let interp = crate::sequent::interpretation(&a.sequent).forgetful();
    match boolean_valid(&interp) {
        Ok(true) => Ok(()),
        Ok(false) => Err("forgetful image is not a tautology".into()),
        Err(e) => Err(e.to_string()),
    }
}
