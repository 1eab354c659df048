//! Seeded random instances: formulas per language, conservative formulas,
//! axiom substitutions and small sequents.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::formula::{BinOp, Const, Formula, LanguageId};
use crate::frege::{FregeAxiom, Substitution, METAVARS};
use crate::search::boolean_valid;
use crate::sequent::{interpretation, Sequent};

pub fn atom(i: usize) -> Formula {
    Formula::atom(&format!("p{i}"))
}

fn pick_atom<R: Rng>(rng: &mut R, atoms: usize) -> Formula {
    atom(rng.gen_range(0..atoms.max(1)))
}

fn consts(lang: LanguageId) -> &'static [Const] {
    match lang {
        LanguageId::U => &[Const::Zero, Const::One],
        LanguageId::B | LanguageId::Bang => &[Const::Zero, Const::One, Const::Top, Const::Bot],
        LanguageId::P => &[Const::Top, Const::Bot],
        LanguageId::Nn | LanguageId::StarNn => &[],
    }
}

fn ops(lang: LanguageId) -> &'static [BinOp] {
    match lang {
        LanguageId::P => &[BinOp::And, BinOp::Or, BinOp::Imp],
        LanguageId::Nn => &[BinOp::And, BinOp::Or],
        LanguageId::StarNn => &[BinOp::And, BinOp::Or, BinOp::Star],
        _ => &[BinOp::And, BinOp::Or, BinOp::Star, BinOp::Imp],
    }
}

fn is_nnf(lang: LanguageId) -> bool {
    matches!(lang, LanguageId::Nn | LanguageId::StarNn)
}

/// A uniformly shaped random formula of `lang` with close to `size` nodes
/// over atoms `p0..`. Negation normal form literals count as three nodes.
pub fn random_formula<R: Rng>(rng: &mut R, lang: LanguageId, size: usize, atoms: usize) -> Formula {
    let size = size.max(1);
    if is_nnf(lang) {
        return random_nnf(rng, lang, size, atoms);
    }
    if size == 1 {
        let cs = consts(lang);
        if cs.is_empty() || rng.gen_bool(0.75) {
            return pick_atom(rng, atoms);
        }
        return Formula::constant(*cs.choose(rng).expect("non-empty"));
    }
    if lang == LanguageId::Bang && (size == 2 || rng.gen_bool(0.15)) {
        return Formula::bang(random_formula(rng, lang, size - 1, atoms));
    }
    if size == 2 {
        return random_formula(rng, lang, 1, atoms);
    }
    let op = *ops(lang).choose(rng).expect("non-empty");
    let left = split(rng, size, lang == LanguageId::Bang);
    let a = random_formula(rng, lang, left, atoms);
    let b = random_formula(rng, lang, size - 1 - left, atoms);
    Formula::bin(op, a, b)
}

/// Size of the left child of a binary node of `size`. Without unary
/// connectives both children get odd sizes so the total is met exactly.
fn split<R: Rng>(rng: &mut R, size: usize, unary: bool) -> usize {
    if unary || size < 5 {
        return rng.gen_range(1..size - 1);
    }
    let halves = (size - 1) / 2;
    2 * rng.gen_range(0..halves) + 1
}

fn random_nnf<R: Rng>(rng: &mut R, lang: LanguageId, size: usize, atoms: usize) -> Formula {
    let literal = |rng: &mut R, neg: bool| {
        let p = pick_atom(rng, atoms);
        if neg {
            Formula::neg(p)
        } else {
            p
        }
    };
    match size {
        0..=2 => literal(rng, false),
        3 if rng.gen_bool(0.5) => literal(rng, true),
        4 => literal(rng, true),
        _ => {
            let op = *ops(lang).choose(rng).expect("non-empty");
            let left = split(rng, size, false);
            let a = random_nnf(rng, lang, left, atoms);
            let b = random_nnf(rng, lang, size - 1 - left, atoms);
            Formula::bin(op, a, b)
        }
    }
}

// ---------------------------------------------------------------------------
// Conservative formulas

/// A random formula of the fully conservative grammar, in `L_b` or `L_!`.
pub fn random_fully_conservative<R: Rng>(rng: &mut R, lang: LanguageId, size: usize, atoms: usize) -> Formula {
    if size <= 2 {
        return match rng.gen_range(0..6) {
            0 => Formula::one(),
            1 => Formula::top(),
            _ => pick_atom(rng, atoms),
        };
    }
    let left = rng.gen_range(1..size - 1);
    let right = size - 1 - left;
    match rng.gen_range(0..3) {
        0 => Formula::and(
            random_fully_conservative(rng, lang, left, atoms),
            random_fully_conservative(rng, lang, right, atoms),
        ),
        1 => Formula::or(
            random_fully_conservative(rng, lang, left, atoms),
            random_fully_conservative(rng, lang, right, atoms),
        ),
        _ => Formula::imp(
            random_conservative(rng, lang, left, atoms),
            random_fully_conservative(rng, lang, right, atoms),
        ),
    }
}

/// A random formula of the conservative grammar, in `L_b` or `L_!`.
pub fn random_conservative<R: Rng>(rng: &mut R, lang: LanguageId, size: usize, atoms: usize) -> Formula {
    let bang = lang == LanguageId::Bang;
    if size == 1 {
        return if rng.gen_bool(0.25) { Formula::bot() } else { random_fully_conservative(rng, lang, 1, atoms) };
    }
    if bang && (size == 2 || rng.gen_bool(0.1)) {
        return Formula::bang(random_conservative(rng, lang, size - 1, atoms));
    }
    if size == 2 || rng.gen_bool(0.3) {
        return random_fully_conservative(rng, lang, size, atoms);
    }
    let op = *[BinOp::And, BinOp::Or, BinOp::Star].choose(rng).expect("non-empty");
    let left = rng.gen_range(1..size - 1);
    Formula::bin(
        op,
        random_conservative(rng, lang, left, atoms),
        random_conservative(rng, lang, size - 1 - left, atoms),
    )
}

// ---------------------------------------------------------------------------
// Axiom instances

/// A substitution for the metavariables of `ax` making the instance close
/// to `size` nodes.
pub fn random_substitution<R: Rng>(
    rng: &mut R,
    ax: FregeAxiom,
    lang: LanguageId,
    size: usize,
    atoms: usize,
) -> Substitution {
    let schema = ax.schema();
    let occurrences: Vec<usize> = METAVARS.iter().map(|m| count_atom(&schema, m)).collect();
    let total: usize = occurrences.iter().sum();
    let spare = size.saturating_sub(schema.size() as usize);
    let mut subst = Substitution::new();
    for (m, &occ) in METAVARS.iter().zip(&occurrences) {
        if occ == 0 {
            continue;
        }
        let each = (spare / total.max(1)).max(1);
        let s = rng.gen_range(each.div_ceil(2)..=each).max(1) + 1;
        subst.insert((*m).to_string(), random_formula(rng, lang, s, atoms));
    }
    subst
}

fn count_atom(f: &Formula, name: &str) -> usize {
    if f.atom_name() == Some(name) {
        return 1;
    }
    f.children().into_iter().map(|c| count_atom(c, name)).sum()
}

// ---------------------------------------------------------------------------
// Sequents

/// A small single-conclusion sequent of `L_u` with at most three
/// antecedent formulas and total weight near `weight`.
pub fn random_micro_sequent<R: Rng>(rng: &mut R, atoms: usize, weight: usize) -> Sequent {
    let n = rng.gen_range(0..=3);
    let mut parts = Vec::with_capacity(n + 1);
    let mut left = weight.max(n + 1);
    for _ in 0..n {
        let s = rng.gen_range(1..=(left / 2).clamp(1, 4));
        left -= s;
        parts.push(random_formula(rng, LanguageId::U, s, atoms));
    }
    let goal = random_formula(rng, LanguageId::U, left.clamp(1, 5), atoms);
    Sequent::goal(parts, goal)
}

/// A classically valid sequent `Gamma => A` of negation normal form
/// formulas: clauses on the left and a disjunction of literals or a small
/// formula on the right. Gives up after `tries` rejected samples.
pub fn random_valid_nnf_sequent<R: Rng>(rng: &mut R, atoms: usize, clauses: usize, tries: usize) -> Option<Sequent> {
    for _ in 0..tries {
        let ant: Vec<Formula> = (0..clauses)
            .map(|_| {
                let k = rng.gen_range(1..=3);
                let lits: Vec<Formula> = (0..k)
                    .map(|_| {
                        let p = pick_atom(rng, atoms);
                        if rng.gen_bool(0.5) {
                            Formula::neg(p)
                        } else {
                            p
                        }
                    })
                    .collect();
                crate::formula::fold_left(BinOp::Or, &lits, Formula::zero())
            })
            .collect();
        let gs = rng.gen_range(1..=7);
        let goal = random_formula(rng, LanguageId::Nn, gs, atoms);
        let s = Sequent::goal(ant, goal);
        if boolean_valid(&interpretation(&s).forgetful()) == Ok(true) {
            return Some(s);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chu::{classify_conservative, ConservativityClass};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn languages_respected() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for lang in [LanguageId::U, LanguageId::B, LanguageId::Bang, LanguageId::P, LanguageId::Nn, LanguageId::StarNn]
        {
            for size in [1, 2, 5, 20, 60] {
                let f = random_formula(&mut rng, lang, size, 3);
                assert!(f.in_language(lang), "{lang:?} {f}");
                assert!((f.size() as usize).abs_diff(size) <= 2, "{lang:?} {size} {f}");
            }
        }
    }

    #[test]
    fn grammar_classes() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for size in 1..30 {
            let b = random_fully_conservative(&mut rng, LanguageId::Bang, size, 3);
            assert_eq!(classify_conservative(&b), ConservativityClass::FullyConservative);
            let c = random_conservative(&mut rng, LanguageId::B, size, 3);
            assert!(classify_conservative(&c) >= ConservativityClass::Conservative);
        }
    }

    #[test]
    fn seeded_reproducible() {
        let a = random_formula(&mut ChaCha8Rng::seed_from_u64(9), LanguageId::Bang, 40, 4);
        let b = random_formula(&mut ChaCha8Rng::seed_from_u64(9), LanguageId::Bang, 40, 4);
        assert_eq!(a, b);
    }
}
