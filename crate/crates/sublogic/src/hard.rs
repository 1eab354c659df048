//! Clique and coloring formulas and their negation-free and linear variants.
//!
//! Atom names: `p_i_j` (edge, `i <= j`), `q_i_j`, `r_u_i`, `rp_i_l`,
//! `s_i_a`, `sp_i_l`. All indices are zero-based.

use crate::builder::ProofBuilder;
use crate::formula::{fold_left, BinOp, Const, Formula, Kind, LanguageId};
use crate::proof::Proof;
use crate::sequent::Sequent;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FamilyError {
    #[error("parameters out of range: {0}")]
    Params(String),
    #[error("{0} is not in the required language")]
    Language(Formula),
}

fn check(cond: bool, msg: impl Fn() -> String) -> Result<(), FamilyError> {
    if cond {
        Ok(())
    } else {
        Err(FamilyError::Params(msg()))
    }
}

pub fn isqrt(n: usize) -> usize {
    let mut k = (n as f64).sqrt() as usize;
    while k * k > n {
        k -= 1;
    }
    while (k + 1) * (k + 1) <= n {
        k += 1;
    }
    k
}

fn atom2(prefix: &str, i: usize, j: usize) -> Formula {
    Formula::atom(&format!("{prefix}_{i}_{j}"))
}

/// Edge atom for the unordered pair `{i, j}`.
pub fn edge(prefix: &str, i: usize, j: usize) -> Formula {
    atom2(prefix, i.min(j), i.max(j))
}

fn disj(items: Vec<Formula>) -> Formula {
    fold_left(BinOp::Or, &items, Formula::zero())
}

fn conj(items: Vec<Formula>) -> Formula {
    fold_left(BinOp::And, &items, Formula::one())
}

fn fuse(items: Vec<Formula>) -> Formula {
    fold_left(BinOp::Star, &items, Formula::one())
}

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

/// The clauses stating that `r` picks `k` distinct vertices forming a
/// clique of the graph `edge(i, j)`.
pub fn clique_clauses_with(n: usize, k: usize, edge_lit: &dyn Fn(usize, usize) -> Formula) -> Vec<Formula> {
    let r = |u: usize, i: usize| atom2("r", u, i);
    let nr = |u: usize, i: usize| Formula::neg(r(u, i));
    let mut out = Vec::new();
    for u in 0..k {
        out.push(disj((0..n).map(|i| r(u, i)).collect()));
    }
    for u in 0..k {
        for (i, j) in pairs(n) {
            out.push(Formula::or(nr(u, i), nr(u, j)));
        }
    }
    for (u, v) in pairs(k) {
        for i in 0..n {
            out.push(Formula::or(nr(u, i), nr(v, i)));
        }
    }
    for u in 0..k {
        for v in (0..k).filter(|v| *v != u) {
            for (i, j) in pairs(n) {
                out.push(disj(vec![nr(u, i), nr(v, j), edge_lit(i, j)]));
            }
        }
    }
    out
}

pub fn clique_clauses(n: usize, k: usize) -> Vec<Formula> {
    clique_clauses_with(n, k, &|i, j| edge("p", i, j))
}

pub fn color_clauses(n: usize, m: usize) -> Vec<Formula> {
    let s = |i: usize, a: usize| atom2("s", i, a);
    let ns = |i: usize, a: usize| Formula::neg(s(i, a));
    let mut out = Vec::new();
    for i in 0..n {
        out.push(disj((0..m).map(|a| s(i, a)).collect()));
    }
    for i in 0..n {
        for (a, b) in pairs(m) {
            out.push(Formula::or(ns(i, a), ns(i, b)));
        }
    }
    for a in 0..m {
        for (i, j) in pairs(n) {
            out.push(disj(vec![ns(i, a), ns(j, a), Formula::neg(edge("p", i, j))]));
        }
    }
    out
}

pub fn clique_formula(n: usize, k: usize) -> Result<Formula, FamilyError> {
    check(k >= 1 && k <= n, || format!("need 1 <= k <= n, got n={n}, k={k}"))?;
    Ok(conj(clique_clauses(n, k)))
}

pub fn color_formula(n: usize, m: usize) -> Result<Formula, FamilyError> {
    check(n >= 1 && m >= 1, || format!("need n, m >= 1, got n={n}, m={m}"))?;
    Ok(conj(color_clauses(n, m)))
}

/// `Clique^{k+1}_n -> ~Color^k_n`.
pub fn clique_color_implication(n: usize, k: usize) -> Result<Formula, FamilyError> {
    check(k >= 1 && k < n, || format!("need 1 <= k < n, got n={n}, k={k}"))?;
    Ok(Formula::imp(clique_formula(n, k + 1)?, Formula::neg(color_formula(n, k)?)))
}

fn alpha_with(n: usize, k: usize, p: &str, s: &str, sp: &str) -> Formula {
    let mut parts = Vec::new();
    for i in 0..n {
        parts.push(conj((0..k).map(|l| atom2(sp, i, l)).collect()));
    }
    for i in 0..n {
        for j in 0..n {
            for l in 0..k {
                parts.push(conj(vec![atom2(s, i, l), atom2(s, j, l), edge(p, i, j)]));
            }
        }
    }
    disj(parts)
}

fn beta_with(n: usize, k: usize, q: &str, r: &str, rp: &str) -> Formula {
    let mut parts = Vec::new();
    for l in 0..k {
        parts.push(conj((0..n).map(|i| atom2(rp, i, l)).collect()));
    }
    for i in 0..n {
        for j in 0..n {
            for l in 0..k {
                for m in l + 1..k {
                    parts.push(conj(vec![atom2(r, i, l), atom2(r, j, m), edge(q, i, j)]));
                }
            }
        }
    }
    disj(parts)
}

pub fn alpha(n: usize, k: usize) -> Result<Formula, FamilyError> {
    check(k >= 1 && k <= n, || format!("need 1 <= k <= n, got n={n}, k={k}"))?;
    Ok(alpha_with(n, k, "p", "s", "sp"))
}

pub fn beta(n: usize, k: usize) -> Result<Formula, FamilyError> {
    check(k >= 1, || format!("need k >= 1, got k={k}"))?;
    Ok(beta_with(n, k, "q", "r", "rp"))
}

/// All pairs `i <= j < n`, the index set of the edge atoms in the
/// negation-free families.
fn edge_index(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect()
}

/// Shared shape of the negation-free families: `guard` wraps each
/// disjunct of the hypotheses and `join` folds them.
fn theta_shape(
    n: usize,
    k: usize,
    guard: &dyn Fn(Formula) -> Formula,
    join: &dyn Fn(Vec<Formula>) -> Formula,
) -> Formula {
    let pq = join(
        edge_index(n).iter().map(|&(i, j)| Formula::or(guard(atom2("p", i, j)), guard(atom2("q", i, j)))).collect(),
    );
    let ss = join(
        (0..n)
            .flat_map(|i| (0..k).map(move |l| (i, l)))
            .map(|(i, l)| Formula::or(guard(atom2("s", i, l)), guard(atom2("sp", i, l))))
            .collect(),
    );
    let rr = join(
        (0..n)
            .flat_map(|i| (0..k + 1).map(move |l| (i, l)))
            .map(|(i, l)| Formula::or(guard(atom2("r", i, l)), guard(atom2("rp", i, l))))
            .collect(),
    );
    let left = Formula::imp(ss, alpha_with(n, k, "p", "s", "sp"));
    let right = Formula::imp(rr, beta_with(n, k + 1, "q", "r", "rp"));
    Formula::imp(pq, Formula::or(left, right))
}

pub fn theta(n: usize, k: usize) -> Result<Formula, FamilyError> {
    check(k >= 1 && k <= n, || format!("need 1 <= k <= n, got n={n}, k={k}"))?;
    Ok(theta_shape(n, k, &|x| x, &conj))
}

pub fn theta_star(n: usize, k: usize) -> Result<Formula, FamilyError> {
    check(k >= 1 && k <= n, || format!("need 1 <= k <= n, got n={n}, k={k}"))?;
    Ok(theta_shape(n, k, &|x| Formula::and(x, Formula::one()), &fuse))
}

/// `/\_{i<j} (p_i_j \/ q_i_j) -> ~Color^k_n(p, s) \/ ~Clique^{k+1}_n(~q, r)`
/// with `k = isqrt(n)`.
pub fn theta_bot(n: usize) -> Result<Formula, FamilyError> {
    check(n >= 2, || format!("need n >= 2, got n={n}"))?;
    let k = isqrt(n);
    let hyp = conj(pairs(n).into_iter().map(|(i, j)| Formula::or(edge("p", i, j), edge("q", i, j))).collect());
    let color = conj(color_clauses(n, k));
    let clique = conj(clique_clauses_with(n, k + 1, &|i, j| Formula::neg(edge("q", i, j))));
    Ok(Formula::imp(hyp, Formula::or(Formula::neg(color), Formula::neg(clique))))
}

/// De Morgan dual of a negation normal form formula.
pub fn nnf_negate(f: &Formula) -> Result<Formula, FamilyError> {
    if !f.in_language(LanguageId::Nn) {
        return Err(FamilyError::Language(f.clone()));
    }
    Ok(f.map_bottom_up(&mut Default::default(), &mut |g, kids| match g.kind() {
        Kind::Atom(_) => Formula::neg(g.clone()),
        Kind::Bin(BinOp::Imp, a, _) => a.clone(),
        Kind::Bin(BinOp::And, ..) => Formula::or(kids[0].clone(), kids[1].clone()),
        Kind::Bin(BinOp::Or, ..) => Formula::and(kids[0].clone(), kids[1].clone()),
        // constants below a negated atom
        _ => g.clone(),
    }))
}

/// The classical collapse: `*` to `/\`, `1` to `top`, `0` to `bot`.
pub fn collapse(f: &Formula) -> Result<Formula, FamilyError> {
    if !f.in_language(LanguageId::U) {
        return Err(FamilyError::Language(f.clone()));
    }
    Ok(f.forgetful())
}

/// The collapse read back into the unit language: `*` becomes `/\` and the
/// guards `A /\ 1`, `1 /\ A` become `A`.
pub fn collapse_read_back(f: &Formula) -> Result<Formula, FamilyError> {
    if !f.in_language(LanguageId::U) {
        return Err(FamilyError::Language(f.clone()));
    }
    Ok(f.map_bottom_up(&mut Default::default(), &mut |g, kids| match g.kind() {
        Kind::Bin(op, ..) => {
            let (a, b) = (kids[0].clone(), kids[1].clone());
            match op {
                BinOp::And if b.is_const(Const::One) && a_is_guarded(g) => a,
                BinOp::And if a.is_const(Const::One) && b_is_guarded(g) => b,
                BinOp::Star | BinOp::And => Formula::and(a, b),
                _ => Formula::bin(*op, a, b),
            }
        }
        _ => g.clone(),
    }))
}

fn a_is_guarded(g: &Formula) -> bool {
    g.as_op(BinOp::And).is_some_and(|(_, b)| b.is_const(Const::One))
}

fn b_is_guarded(g: &Formula) -> bool {
    g.as_op(BinOp::And).is_some_and(|(a, _)| a.is_const(Const::One))
}

struct Collapser<'a> {
    b: &'a mut ProofBuilder,
    memo: std::collections::HashMap<u64, (usize, usize)>,
}

impl Collapser<'_> {
    /// Proofs of `f => g` and `g => f` for `g` the read-back of `f`.
    fn equiv(&mut self, f: &Formula) -> (usize, usize) {
        if let Some(&e) = self.memo.get(&f.id()) {
            return e;
        }
        let e = match f.kind() {
            Kind::Bin(op, x, y) => {
                let (x_to, x_from) = self.equiv(x);
                let (y_to, y_from) = self.equiv(y);
                let b = &mut *self.b;
                let one = Formula::one();
                match op {
                    BinOp::And if y.is_const(Const::One) => {
                        // x /\ 1 <=> x'
                        let xg = b.goal(x_to);
                        let to = b.and_l1(x_to, f.clone());
                        let u = b.one_r();
                        let u = b.lw(u, xg);
                        let from = b.and_r(x_from, u);
                        (to, from)
                    }
                    BinOp::And if x.is_const(Const::One) => {
                        let yg = b.goal(y_to);
                        let to = b.and_l2(y_to, f.clone());
                        let u = b.one_r();
                        let u = b.lw(u, yg);
                        let from = b.and_r(u, y_from);
                        (to, from)
                    }
                    BinOp::Star => {
                        let (xg, yg) = (b.goal(x_to), b.goal(y_to));
                        let l = b.lw(x_to, y.clone());
                        let r = b.lw(y_to, x.clone());
                        let m = b.and_r(l, r);
                        let to = b.star_l(m, f.clone());
                        let g = Formula::and(xg, yg);
                        let m = b.star_r(x_from, y_from);
                        let m = b.and_l1(m, g.clone());
                        let m = b.and_l2(m, g.clone());
                        let from = b.lc(m, g);
                        let _ = one;
                        (to, from)
                    }
                    BinOp::Imp => {
                        let to = b.congruence(BinOp::Imp, x_from, y_to);
                        let from = b.congruence(BinOp::Imp, x_to, y_from);
                        (to, from)
                    }
                    _ => {
                        let to = b.congruence(*op, x_to, y_to);
                        let from = b.congruence(*op, x_from, y_from);
                        (to, from)
                    }
                }
            }
            _ => {
                let i = self.b.id(f.clone());
                (i, i)
            }
        };
        self.memo.insert(f.id(), e);
        e
    }
}

/// An `LK_u` proof of `=> (f -> g) /\ (g -> f)` for `g` the read-back of `f`.
pub fn prove_collapse_equiv(f: &Formula) -> Result<Proof, FamilyError> {
    collapse_read_back(f)?;
    let mut b = ProofBuilder::new();
    let (to, from) = Collapser { b: &mut b, memo: Default::default() }.equiv(f);
    let l = b.imp_r_on(to, f.clone());
    let g = b.seq(from).ant.as_slice()[0].clone();
    let r = b.imp_r_on(from, g);
    let root = b.and_r(l, r);
    Ok(b.into_proof(root))
}

/// `Clique^{k+1}_n => nnf(~Color^k_n)` for the cut-free pipeline.
pub fn clique_color_sequent(n: usize, k: usize) -> Result<Sequent, FamilyError> {
    let clique = clique_formula(n, k + 1)?;
    let color = color_formula(n, k)?;
    Ok(Sequent::goal(vec![clique], nnf_negate(&color)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::{Calculus, System};
    use crate::formula::f;
    use crate::proof::check_proof;

    #[test]
    fn clause_counts() {
        assert_eq!(clique_clauses(3, 2).len(), 17);
        // two "has a color" clauses and one edge clause
        assert_eq!(color_clauses(2, 1).len(), 3);
    }

    #[test]
    fn alpha_small() {
        assert_eq!(alpha(1, 1).unwrap(), f("sp_0_0 \\/ (s_0_0 /\\ s_0_0 /\\ p_0_0)"));
    }

    #[test]
    fn negation_normal_form() {
        assert_eq!(nnf_negate(&f("p")).unwrap(), f("p -> 0"));
        assert_eq!(nnf_negate(&f("p /\\ (q -> 0)")).unwrap(), f("(p -> 0) \\/ q"));
        let g = color_formula(3, 2).unwrap();
        assert_eq!(nnf_negate(&nnf_negate(&g).unwrap()).unwrap(), g);
    }

    #[test]
    fn collapse_equiv_checks() {
        let g = f("p * (q /\\ 1) -> (1 /\\ r) * s \\/ 0");
        assert_eq!(collapse(&f("p * (q /\\ 1)")).unwrap(), f("p /\\ (q /\\ top)"));
        assert_eq!(collapse_read_back(&f("p * (q /\\ 1)")).unwrap(), f("p /\\ q"));
        let pr = prove_collapse_equiv(&g).unwrap();
        check_proof(&Calculus::new(System::LKu), &pr, &[]).unwrap();
    }
}
