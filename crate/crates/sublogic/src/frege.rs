//! Hilbert-style systems: axiom schemas, schema matching and a line checker.

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::formula::{parse_formula, Formula, Kind, ParseError};

pub type Substitution = HashMap<String, Formula>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FregeAxiom {
    Id,
    Pf,
    Per,
    StarAnd,
    AndTo1,
    AndTo2,
    ToAnd,
    ToOr1,
    ToOr2,
    OrTo,
    ToStar,
    StarTo,
    One,
    OneTo,
    Top,
    Bot,
    Dn,
    W,
    C,
    BangW,
    BangC,
    BangK,
    BangT,
    Bang4,
}

/// Schema metavariables are atoms with these names; they cannot clash with
/// parsed atoms, which start with a lowercase letter.
pub const METAVARS: [&str; 3] = ["A", "B", "C"];

fn mv(i: usize) -> Formula {
    Formula::atom(METAVARS[i])
}

impl FregeAxiom {
    pub const ALL: [FregeAxiom; 24] = [
        FregeAxiom::Id,
        FregeAxiom::Pf,
        FregeAxiom::Per,
        FregeAxiom::StarAnd,
        FregeAxiom::AndTo1,
        FregeAxiom::AndTo2,
        FregeAxiom::ToAnd,
        FregeAxiom::ToOr1,
        FregeAxiom::ToOr2,
        FregeAxiom::OrTo,
        FregeAxiom::ToStar,
        FregeAxiom::StarTo,
        FregeAxiom::One,
        FregeAxiom::OneTo,
        FregeAxiom::Top,
        FregeAxiom::Bot,
        FregeAxiom::Dn,
        FregeAxiom::W,
        FregeAxiom::C,
        FregeAxiom::BangW,
        FregeAxiom::BangC,
        FregeAxiom::BangK,
        FregeAxiom::BangT,
        FregeAxiom::Bang4,
    ];

    pub fn name(self) -> &'static str {
        use FregeAxiom::*;
        match self {
            Id => "id",
            Pf => "pf",
            Per => "per",
            StarAnd => "star_and",
            AndTo1 => "and_to_1",
            AndTo2 => "and_to_2",
            ToAnd => "to_and",
            ToOr1 => "to_or_1",
            ToOr2 => "to_or_2",
            OrTo => "or_to",
            ToStar => "to_star",
            StarTo => "star_to",
            One => "one",
            OneTo => "one_to",
            Top => "top",
            Bot => "bot",
            Dn => "dn",
            W => "w",
            C => "c",
            BangW => "bang_w",
            BangC => "bang_c",
            BangK => "bang_K",
            BangT => "bang_T",
            Bang4 => "bang_4",
        }
    }

    pub fn from_name(s: &str) -> Option<FregeAxiom> {
        FregeAxiom::ALL.iter().copied().find(|a| a.name() == s)
    }

    /// Number of metavariables in the schema.
    pub fn arity(self) -> usize {
        let s = self.schema();
        METAVARS.iter().filter(|m| s.vars().contains(**m)).count()
    }

    /// The schema as a formula over the metavariable atoms.
    pub fn schema(self) -> Formula {
        use FregeAxiom::*;
        let (a, b, c) = (mv(0), mv(1), mv(2));
        let imp = Formula::imp;
        let and = Formula::and;
        let or = Formula::or;
        let star = Formula::star;
        let bang = Formula::bang;
        match self {
            Id => imp(a.clone(), a),
            Pf => imp(imp(a.clone(), b.clone()), imp(imp(c.clone(), a), imp(c, b))),
            Per => imp(imp(a.clone(), imp(b.clone(), c.clone())), imp(b, imp(a, c))),
            StarAnd => imp(star(and(a.clone(), Formula::one()), and(b.clone(), Formula::one())), and(a, b)),
            AndTo1 => imp(and(a.clone(), b), a),
            AndTo2 => imp(and(a, b.clone()), b),
            ToAnd => imp(and(imp(a.clone(), b.clone()), imp(a.clone(), c.clone())), imp(a, and(b, c))),
            ToOr1 => imp(a.clone(), or(a, b)),
            ToOr2 => imp(b.clone(), or(a, b)),
            OrTo => imp(and(imp(a.clone(), c.clone()), imp(b.clone(), c.clone())), imp(or(a, b), c)),
            ToStar => imp(b.clone(), imp(a.clone(), star(a, b))),
            StarTo => imp(imp(b.clone(), imp(a.clone(), c.clone())), imp(star(a, b), c)),
            One => Formula::one(),
            OneTo => imp(Formula::one(), imp(a.clone(), a)),
            Top => imp(a, Formula::top()),
            Bot => imp(Formula::bot(), a),
            Dn => imp(Formula::neg(Formula::neg(a.clone())), a),
            W => imp(a.clone(), imp(b, a)),
            C => imp(imp(a.clone(), imp(a.clone(), b.clone())), imp(a, b)),
            BangW => imp(a.clone(), imp(bang(b), a)),
            BangC => {
                let ba = bang(a);
                imp(imp(ba.clone(), imp(ba.clone(), b.clone())), imp(ba, b))
            }
            BangK => imp(bang(imp(a.clone(), b.clone())), imp(bang(a), bang(b))),
            BangT => imp(bang(a.clone()), a),
            Bang4 => imp(bang(a.clone()), bang(bang(a))),
        }
    }

    /// The schema instance under `subst`; missing metavariables default to
    /// themselves.
    pub fn instantiate(self, subst: &Substitution) -> Formula {
        self.schema().substitute(subst)
    }
}

impl fmt::Display for FregeAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn bind(pattern: &Formula, f: &Formula, subst: &mut Substitution) -> bool {
    match (pattern.kind(), f.kind()) {
        (Kind::Atom(n), _) if METAVARS.contains(&&**n) => match subst.get(&**n) {
            Some(g) => g == f,
            None => {
                subst.insert(n.to_string(), f.clone());
                true
            }
        },
        (Kind::Atom(n), Kind::Atom(m)) => n == m,
        (Kind::Const(c), Kind::Const(d)) => c == d,
        (Kind::Bang(a), Kind::Bang(b)) => bind(a, b, subst),
        (Kind::Bin(o1, a1, b1), Kind::Bin(o2, a2, b2)) => o1 == o2 && bind(a1, a2, subst) && bind(b1, b2, subst),
        _ => false,
    }
}

/// The substitution making the schema of `ax` equal to `f`.
pub fn match_axiom(ax: FregeAxiom, f: &Formula) -> Option<Substitution> {
    let mut subst = Substitution::new();
    bind(&ax.schema(), f, &mut subst).then_some(subst)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FregeSystem {
    FLe,
    CFLe,
    CFLew,
    MALL,
    AMALL,
    CLL,
    ALL,
}

impl FregeSystem {
    pub const EVERY: [FregeSystem; 7] = [
        FregeSystem::FLe,
        FregeSystem::CFLe,
        FregeSystem::CFLew,
        FregeSystem::MALL,
        FregeSystem::AMALL,
        FregeSystem::CLL,
        FregeSystem::ALL,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FregeSystem::FLe => "FLe_F",
            FregeSystem::CFLe => "CFLe_F",
            FregeSystem::CFLew => "CFLew_F",
            FregeSystem::MALL => "MALL_F",
            FregeSystem::AMALL => "AMALL_F",
            FregeSystem::CLL => "CLL_F",
            FregeSystem::ALL => "ALL_F",
        }
    }

    pub fn from_name(s: &str) -> Option<FregeSystem> {
        let s = s.replace('-', "_");
        FregeSystem::EVERY.iter().copied().find(|x| x.name() == s || x.name().replace('_', "") == s)
    }

    pub fn has_axiom(self, ax: FregeAxiom) -> bool {
        use FregeAxiom::*;
        use FregeSystem as S;
        match ax {
            Id | Pf | Per | StarAnd | AndTo1 | AndTo2 | ToAnd | ToOr1 | ToOr2 | OrTo | ToStar | StarTo | One
            | OneTo => true,
            Dn => self != S::FLe,
            W => matches!(self, S::CFLew | S::AMALL | S::ALL),
            Top | Bot => matches!(self, S::MALL | S::AMALL | S::CLL | S::ALL),
            C => false,
            BangW | BangC | BangK | BangT | Bang4 => self.has_nec(),
        }
    }

    pub fn has_nec(self) -> bool {
        matches!(self, FregeSystem::CLL | FregeSystem::ALL)
    }

    pub fn axioms(self) -> Vec<FregeAxiom> {
        FregeAxiom::ALL.iter().copied().filter(|a| self.has_axiom(*a)).collect()
    }
}

impl fmt::Display for FregeSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Justification {
    /// The substitution may be empty, in which case it is recovered by matching.
    Axiom(FregeAxiom, Substitution),
    /// `Mp(i, j)`: line `j` is `line i -> this`.
    Mp(usize, usize),
    Adj(usize),
    Nec(usize),
    Hyp,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FregeLine {
    pub formula: Formula,
    pub just: Justification,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FregeProof {
    pub lines: Vec<FregeLine>,
}

impl FregeProof {
    pub fn new() -> FregeProof {
        FregeProof::default()
    }

    pub fn push(&mut self, formula: Formula, just: Justification) -> usize {
        self.lines.push(FregeLine { formula, just });
        self.lines.len() - 1
    }

    /// Appends an axiom instance and returns its index.
    pub fn axiom(&mut self, ax: FregeAxiom, subst: Substitution) -> usize {
        let f = ax.instantiate(&subst);
        self.push(f, Justification::Axiom(ax, subst))
    }

    /// Appends `B` from `A` (line `i`) and `A -> B` (line `j`).
    pub fn mp(&mut self, i: usize, j: usize) -> usize {
        let b = self.lines[j].formula.as_op(crate::formula::BinOp::Imp).expect("mp: not an implication").1.clone();
        self.push(b, Justification::Mp(i, j))
    }

    pub fn adj(&mut self, i: usize) -> usize {
        let f = Formula::and(self.lines[i].formula.clone(), Formula::one());
        self.push(f, Justification::Adj(i))
    }

    pub fn nec(&mut self, i: usize) -> usize {
        let f = Formula::bang(self.lines[i].formula.clone());
        self.push(f, Justification::Nec(i))
    }

    pub fn conclusion(&self) -> Option<&Formula> {
        self.lines.last().map(|l| &l.formula)
    }

    pub fn size(&self) -> u64 {
        self.lines.iter().map(|l| l.formula.size()).sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct FregeMetrics {
    pub lines: usize,
    pub size: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {reason}")]
pub struct FregeViolation {
    pub line: usize,
    pub reason: String,
}

fn check_line(sys: FregeSystem, proof: &FregeProof, k: usize, hyps: &HashSet<Formula>) -> Result<(), String> {
    let line = &proof.lines[k];
    let earlier = |i: usize| -> Result<&Formula, String> {
        if i < k {
            Ok(&proof.lines[i].formula)
        } else {
            Err(format!("reference to line {i} is not earlier"))
        }
    };
    match &line.just {
        Justification::Axiom(ax, subst) => {
            if !sys.has_axiom(*ax) {
                return Err(format!("axiom {ax} is not in {sys}"));
            }
            if subst.is_empty() {
                match_axiom(*ax, &line.formula).map(|_| ()).ok_or_else(|| format!("not an instance of {ax}"))
            } else if let Some(bad) = subst.keys().find(|k| !METAVARS.contains(&k.as_str())) {
                Err(format!("unknown metavariable {bad}"))
            } else if ax.instantiate(subst) == line.formula {
                Ok(())
            } else {
                Err(format!("substitution does not produce this instance of {ax}"))
            }
        }
        Justification::Mp(i, j) => {
            let a = earlier(*i)?;
            let ab = earlier(*j)?;
            if *ab == Formula::imp(a.clone(), line.formula.clone()) {
                Ok(())
            } else {
                Err(format!("line {j} is not line {i} -> this line"))
            }
        }
        Justification::Adj(i) => {
            if line.formula == Formula::and(earlier(*i)?.clone(), Formula::one()) {
                Ok(())
            } else {
                Err(format!("not line {i} /\\ 1"))
            }
        }
        Justification::Nec(i) => {
            if !sys.has_nec() {
                return Err(format!("nec is not a rule of {sys}"));
            }
            if line.formula == Formula::bang(earlier(*i)?.clone()) {
                Ok(())
            } else {
                Err(format!("not !(line {i})"))
            }
        }
        Justification::Hyp => {
            if hyps.contains(&line.formula) {
                Ok(())
            } else {
                Err("not a hypothesis".into())
            }
        }
    }
}

/// Checks every line of `proof` in `sys` with the given hypotheses.
pub fn check_frege_proof(
    sys: FregeSystem,
    proof: &FregeProof,
    hyps: &[Formula],
) -> Result<FregeMetrics, FregeViolation> {
    let hyps: HashSet<Formula> = hyps.iter().cloned().collect();
    if proof.lines.is_empty() {
        return Err(FregeViolation { line: 0, reason: "empty proof".into() });
    }
    for k in 0..proof.lines.len() {
        check_line(sys, proof, k, &hyps).map_err(|reason| FregeViolation { line: k + 1, reason })?;
    }
    Ok(FregeMetrics { lines: proof.lines.len(), size: proof.size() })
}

// ---------------------------------------------------------------------------
// Text format: `index. formula ; justification`, indices one-based.

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FregeParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: {err}")]
    Formula { line: usize, err: ParseError },
}

fn parse_subst(text: &str, line: usize) -> Result<Substitution, FregeParseError> {
    let syntax = |msg: String| FregeParseError::Syntax { line, msg };
    let inner = text
        .trim()
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| syntax("substitution must be bracketed".into()))?;
    let mut subst = Substitution::new();
    for part in inner.split(',').filter(|p| !p.trim().is_empty()) {
        let (name, f) = part.split_once(":=").ok_or_else(|| syntax(format!("expected ':=' in '{part}'")))?;
        let name = name.trim();
        if !METAVARS.contains(&name) {
            return Err(syntax(format!("unknown metavariable {name}")));
        }
        let f = parse_formula(f).map_err(|err| FregeParseError::Formula { line, err })?;
        subst.insert(name.to_string(), f);
    }
    Ok(subst)
}

fn parse_index(s: &str, line: usize) -> Result<usize, FregeParseError> {
    let i: usize = s.parse().map_err(|_| FregeParseError::Syntax { line, msg: format!("bad line reference '{s}'") })?;
    if i == 0 {
        return Err(FregeParseError::Syntax { line, msg: "line references are one-based".into() });
    }
    Ok(i - 1)
}

pub fn parse_frege_proof(text: &str) -> Result<FregeProof, FregeParseError> {
    let mut proof = FregeProof::new();
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let raw = raw.trim();
        if raw.is_empty() || raw.starts_with('#') {
            continue;
        }
        let syntax = |msg: &str| FregeParseError::Syntax { line, msg: msg.to_string() };
        let (head, rest) = raw.split_once('.').ok_or_else(|| syntax("expected 'index.'"))?;
        let index: usize = head.trim().parse().map_err(|_| syntax("bad index"))?;
        if index != proof.lines.len() + 1 {
            return Err(syntax("indices must be consecutive from 1"));
        }
        let (formula, just) = rest.split_once(';').ok_or_else(|| syntax("expected ';' before justification"))?;
        let formula = parse_formula(formula).map_err(|err| FregeParseError::Formula { line, err })?;
        let words: Vec<&str> = just.split_whitespace().collect();
        let just = match words.as_slice() {
            ["ax", name, ..] => {
                let ax = FregeAxiom::from_name(name).ok_or_else(|| syntax(&format!("unknown axiom {name}")))?;
                let after = just.trim().strip_prefix("ax").unwrap().trim().strip_prefix(name).unwrap().trim();
                let subst = if after.is_empty() { Substitution::new() } else { parse_subst(after, line)? };
                Justification::Axiom(ax, subst)
            }
            ["mp", i, j] => Justification::Mp(parse_index(i, line)?, parse_index(j, line)?),
            ["adj", i] => Justification::Adj(parse_index(i, line)?),
            ["nec", i] => Justification::Nec(parse_index(i, line)?),
            ["hyp"] => Justification::Hyp,
            _ => return Err(syntax("unknown justification")),
        };
        proof.push(formula, just);
    }
    Ok(proof)
}

impl fmt::Display for FregeProof {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, line) in self.lines.iter().enumerate() {
            write!(f, "{}. {} ; ", k + 1, line.formula)?;
            match &line.just {
                Justification::Axiom(ax, subst) => {
                    write!(f, "ax {ax}")?;
                    if !subst.is_empty() {
                        let mut keys: Vec<_> = subst.keys().collect();
                        keys.sort();
                        let parts: Vec<String> = keys.iter().map(|k| format!("{k} := {}", subst[*k])).collect();
                        write!(f, " [{}]", parts.join(", "))?;
                    }
                }
                Justification::Mp(i, j) => write!(f, "mp {} {}", i + 1, j + 1)?,
                Justification::Adj(i) => write!(f, "adj {}", i + 1)?,
                Justification::Nec(i) => write!(f, "nec {}", i + 1)?,
                Justification::Hyp => f.write_str("hyp")?,
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::f;

    fn subst(pairs: &[(&str, &str)]) -> Substitution {
        pairs.iter().map(|(k, v)| (k.to_string(), f(v))).collect()
    }

    #[test]
    fn matching() {
        assert_eq!(match_axiom(FregeAxiom::Id, &f("p * q -> p * q")), Some(subst(&[("A", "p * q")])));
        assert_eq!(
            match_axiom(FregeAxiom::StarAnd, &f("(p /\\ 1) * (q /\\ 1) -> p /\\ q")),
            Some(subst(&[("A", "p"), ("B", "q")]))
        );
        assert_eq!(match_axiom(FregeAxiom::Dn, &f("p -> p")), None);
        assert_eq!(match_axiom(FregeAxiom::Id, &f("p -> q")), None);
    }

    #[test]
    fn checking() {
        let mut p = FregeProof::new();
        p.axiom(FregeAxiom::Id, subst(&[("A", "p")]));
        assert_eq!(check_frege_proof(FregeSystem::FLe, &p, &[]).unwrap().lines, 1);

        let mut p = FregeProof::new();
        p.axiom(FregeAxiom::W, subst(&[("A", "p"), ("B", "q")]));
        assert!(check_frege_proof(FregeSystem::FLe, &p, &[]).is_err());
        assert!(check_frege_proof(FregeSystem::CFLew, &p, &[]).is_ok());

        let mut p = FregeProof::new();
        let h = p.push(f("p"), Justification::Hyp);
        p.adj(h);
        assert!(check_frege_proof(FregeSystem::FLe, &p, &[f("p")]).is_ok());
        assert!(check_frege_proof(FregeSystem::FLe, &p, &[]).is_err());
    }

    #[test]
    fn text_round_trip() {
        let text = "1. p ; hyp\n2. p -> p \\/ q ; ax to_or_1 [A := p, B := q]\n3. p \\/ q ; mp 1 2\n4. (p \\/ q) /\\ 1 ; adj 3\n";
        let p = parse_frege_proof(text).unwrap();
        assert_eq!(p.to_string(), text);
        assert!(check_frege_proof(FregeSystem::FLe, &p, &[f("p")]).is_ok());
        assert!(parse_frege_proof("1. p ; mp 1").is_err());
    }
}
