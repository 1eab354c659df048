//! Rule tables for the supported sequent calculi.

use std::fmt;

use crate::formula::{parse_formula, Const, Formula, LanguageId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Template {
    /// `=> p \/ (p -> 0)`
    ExcludedMiddle,
    /// `p => 1`
    AtomUnit,
    /// `p -> 0 => 1`
    NegAtomUnit,
    /// `0 => p`
    ZeroAtom,
    /// `0 => p -> 0`
    ZeroNegAtom,
    /// `0 => 0 * 0`
    ZeroStar,
    /// `p, N => D` for the parameters of a Chu calculus
    ChuAtom,
    /// `p => p` and `p -> 0 => p -> 0`
    LiteralId,
    /// `p, p -> 0 =>`
    Contradiction,
}

impl Template {
    pub const ALL: [Template; 9] = [
        Template::ExcludedMiddle,
        Template::AtomUnit,
        Template::NegAtomUnit,
        Template::ZeroAtom,
        Template::ZeroNegAtom,
        Template::ZeroStar,
        Template::ChuAtom,
        Template::LiteralId,
        Template::Contradiction,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Template::ExcludedMiddle => "em",
            Template::AtomUnit => "atom_unit",
            Template::NegAtomUnit => "neg_atom_unit",
            Template::ZeroAtom => "zero_atom",
            Template::ZeroNegAtom => "zero_neg_atom",
            Template::ZeroStar => "zero_star",
            Template::ChuAtom => "chu_atom",
            Template::LiteralId => "literal_id",
            Template::Contradiction => "contradiction",
        }
    }

    pub fn from_name(s: &str) -> Option<Template> {
        Template::ALL.iter().copied().find(|t| t.name() == s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    Id,
    OneR,
    ZeroL,
    OneW,
    ZeroW,
    AndL1,
    AndL2,
    AndR,
    OrL,
    OrR1,
    OrR2,
    StarL,
    StarR,
    ImpL,
    ImpR,
    Cut,
    TopR,
    BotL,
    Lw,
    Rw,
    Lc,
    Rc,
    BangR,
    BangL,
    BangW,
    BangC,
    Initial(Template),
    Hyp,
}

impl Rule {
    pub const PLAIN: [Rule; 26] = [
        Rule::Id,
        Rule::OneR,
        Rule::ZeroL,
        Rule::OneW,
        Rule::ZeroW,
        Rule::AndL1,
        Rule::AndL2,
        Rule::AndR,
        Rule::OrL,
        Rule::OrR1,
        Rule::OrR2,
        Rule::StarL,
        Rule::StarR,
        Rule::ImpL,
        Rule::ImpR,
        Rule::Cut,
        Rule::TopR,
        Rule::BotL,
        Rule::Lw,
        Rule::Rw,
        Rule::Lc,
        Rule::Rc,
        Rule::BangR,
        Rule::BangL,
        Rule::BangW,
        Rule::BangC,
    ];

    pub fn name(self) -> String {
        let s = match self {
            Rule::Id => "id",
            Rule::OneR => "oneR",
            Rule::ZeroL => "zeroL",
            Rule::OneW => "oneW",
            Rule::ZeroW => "zeroW",
            Rule::AndL1 => "LandL",
            Rule::AndL2 => "LandR",
            Rule::AndR => "Rand",
            Rule::OrL => "Lor",
            Rule::OrR1 => "RorL",
            Rule::OrR2 => "RorR",
            Rule::StarL => "Lstar",
            Rule::StarR => "Rstar",
            Rule::ImpL => "Limp",
            Rule::ImpR => "Rimp",
            Rule::Cut => "cut",
            Rule::TopR => "topR",
            Rule::BotL => "botL",
            Rule::Lw => "Lw",
            Rule::Rw => "Rw",
            Rule::Lc => "Lc",
            Rule::Rc => "Rc",
            Rule::BangR => "Rbang",
            Rule::BangL => "Lbang",
            Rule::BangW => "Wbang",
            Rule::BangC => "Cbang",
            Rule::Initial(t) => return format!("initial:{}", t.name()),
            Rule::Hyp => "hyp",
        };
        s.to_string()
    }

    pub fn from_name(s: &str) -> Option<Rule> {
        if let Some(t) = s.strip_prefix("initial:") {
            return Template::from_name(t).map(Rule::Initial);
        }
        if s == "hyp" {
            return Some(Rule::Hyp);
        }
        Rule::PLAIN.iter().copied().find(|r| r.name() == s)
    }

    pub fn arity(self) -> usize {
        match self {
            Rule::Id | Rule::OneR | Rule::ZeroL | Rule::TopR | Rule::BotL | Rule::Initial(_) | Rule::Hyp => 0,
            Rule::AndR | Rule::OrL | Rule::StarR | Rule::ImpL | Rule::Cut => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum System {
    FLe,
    FLew,
    FLec,
    LJu,
    CFLe,
    CFLew,
    CFLec,
    LKu,
    MALL,
    AMALL,
    RMALL,
    LKb,
    IMALL,
    AIMALL,
    RIMALL,
    LJb,
    CLL,
    ALL,
    RLL,
    LKbang,
    ILL,
    AILL,
    RILL,
    LJbang,
    LK,
    LJ,
    LKnn,
    G,
}

use System::*;

impl System {
    pub const EVERY: [System; 28] = [
        FLe, FLew, FLec, LJu, CFLe, CFLew, CFLec, LKu, MALL, AMALL, RMALL, LKb, IMALL, AIMALL, RIMALL, LJb, CLL, ALL,
        RLL, LKbang, ILL, AILL, RILL, LJbang, LK, LJ, LKnn, G,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FLe => "FL_e",
            FLew => "FL_ew",
            FLec => "FL_ec",
            LJu => "LJ_u",
            CFLe => "CFL_e",
            CFLew => "CFL_ew",
            CFLec => "CFL_ec",
            LKu => "LK_u",
            MALL => "MALL",
            AMALL => "AMALL",
            RMALL => "RMALL",
            LKb => "LK_b",
            IMALL => "IMALL",
            AIMALL => "AIMALL",
            RIMALL => "RIMALL",
            LJb => "LJ_b",
            CLL => "CLL",
            ALL => "ALL",
            RLL => "RLL",
            LKbang => "LK_!",
            ILL => "ILL",
            AILL => "AILL",
            RILL => "RILL",
            LJbang => "LJ_!",
            LK => "LK",
            LJ => "LJ",
            LKnn => "LK_nn",
            G => "G",
        }
    }

    pub fn from_name(s: &str) -> Option<System> {
        System::EVERY.iter().copied().find(|c| c.name() == s || c.name().replace('_', "") == s)
    }

    pub fn language(self) -> LanguageId {
        match self {
            FLe | FLew | FLec | LJu | CFLe | CFLew | CFLec | LKu | G => LanguageId::U,
            MALL | AMALL | RMALL | LKb | IMALL | AIMALL | RIMALL | LJb => LanguageId::B,
            CLL | ALL | RLL | LKbang | ILL | AILL | RILL | LJbang => LanguageId::Bang,
            LK | LJ => LanguageId::P,
            LKnn => LanguageId::Nn,
        }
    }

    pub fn single_conclusion(self) -> bool {
        matches!(
            self,
            FLe | FLew | FLec | LJu | IMALL | AIMALL | RIMALL | LJb | ILL | AILL | RILL | LJbang | LJ | LKnn | G
        )
    }

    pub fn weakening(self) -> bool {
        matches!(
            self,
            FLew | CFLew | LKu | LJu | AMALL | LKb | AIMALL | LJb | ALL | LKbang | AILL | LJbang | LK | LJ | LKnn
        )
    }

    pub fn contraction(self) -> bool {
        matches!(
            self,
            FLec | CFLec | LKu | LJu | RMALL | LKb | RIMALL | LJb | RLL | LKbang | RILL | LJbang | LK | LJ | LKnn
        )
    }

    fn top_bot(self) -> bool {
        matches!(self.language(), LanguageId::B | LanguageId::Bang | LanguageId::P)
    }

    fn exponentials(self) -> bool {
        self.language() == LanguageId::Bang
    }

    fn units(self) -> bool {
        !matches!(self, LK | LJ | LKnn)
    }

    /// The single-conclusion counterpart.
    pub fn intuitionistic(self) -> System {
        match self {
            CFLe => FLe,
            CFLew => FLew,
            CFLec => FLec,
            LKu => LJu,
            MALL => IMALL,
            AMALL => AIMALL,
            RMALL => RIMALL,
            LKb => LJb,
            CLL => ILL,
            ALL => AILL,
            RLL => RILL,
            LKbang => LJbang,
            LK => LJ,
            other => other,
        }
    }
}

/// A calculus: a base system, optionally without cut, optionally extended
/// with the Chu initial sequents `p, N => D`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Calculus {
    pub system: System,
    pub cut_free: bool,
    pub chu: Option<(Formula, Formula)>,
}

fn lang_rank(l: LanguageId) -> u8 {
    match l {
        LanguageId::U => 0,
        LanguageId::B => 1,
        _ => 2,
    }
}

fn smallest_language(f: &Formula) -> LanguageId {
    if f.in_language(LanguageId::U) {
        LanguageId::U
    } else if f.in_language(LanguageId::B) {
        LanguageId::B
    } else {
        LanguageId::Bang
    }
}

impl Calculus {
    pub fn new(system: System) -> Calculus {
        Calculus { system, cut_free: false, chu: None }
    }

    pub fn cut_free(system: System) -> Calculus {
        Calculus { system, cut_free: true, chu: None }
    }

    /// The Chu calculus over a single-conclusion base. The language grows to
    /// the smallest of the three linear languages containing the base, `D`
    /// and `N`; when that adds `top`/`bot`, their axioms come with them.
    pub fn chu(system: System, d: Formula, n: Formula) -> Calculus {
        Calculus { system: system.intuitionistic(), cut_free: false, chu: Some((d, n)) }
    }

    pub fn without_cut(&self) -> Calculus {
        Calculus { cut_free: true, ..self.clone() }
    }

    pub fn language(&self) -> LanguageId {
        let base = self.system.language();
        match &self.chu {
            None => base,
            Some((d, n)) => {
                [base, smallest_language(d), smallest_language(n)].into_iter().max_by_key(|l| lang_rank(*l)).unwrap()
            }
        }
    }

    pub fn single_conclusion(&self) -> bool {
        self.system.single_conclusion() || self.chu.is_some()
    }

    pub fn allows(&self, rule: Rule) -> bool {
        let s = self.system;
        let lang = self.language();
        match rule {
            Rule::Id => s != LKnn,
            Rule::OneR | Rule::ZeroL | Rule::OneW | Rule::ZeroW | Rule::StarL | Rule::StarR => s.units(),
            Rule::AndL1 | Rule::AndL2 | Rule::AndR | Rule::OrL | Rule::OrR1 | Rule::OrR2 | Rule::Hyp => true,
            Rule::ImpL | Rule::ImpR => s != LKnn,
            Rule::Cut => !self.cut_free,
            Rule::TopR | Rule::BotL => s.top_bot() || matches!(lang, LanguageId::B | LanguageId::Bang),
            Rule::Lw | Rule::Rw => s.weakening(),
            Rule::Lc | Rule::Rc => s.contraction(),
            Rule::BangR | Rule::BangL | Rule::BangW | Rule::BangC => s.exponentials(),
            Rule::Initial(t) => match t {
                Template::ExcludedMiddle => matches!(s, G | LKnn),
                Template::AtomUnit
                | Template::NegAtomUnit
                | Template::ZeroAtom
                | Template::ZeroNegAtom
                | Template::ZeroStar => s == G,
                Template::LiteralId | Template::Contradiction => s == LKnn,
                Template::ChuAtom => self.chu.is_some(),
            },
        }
    }

    pub fn rules(&self) -> Vec<Rule> {
        Rule::PLAIN
            .iter()
            .copied()
            .chain(Template::ALL.iter().map(|t| Rule::Initial(*t)))
            .filter(|r| self.allows(*r))
            .collect()
    }

    pub fn templates(&self) -> Vec<Template> {
        Template::ALL.iter().copied().filter(|t| self.allows(Rule::Initial(*t))).collect()
    }

    /// Whether every rule of `self` is a rule of `other` over a language
    /// contained in `other`'s.
    pub fn is_subcalculus_of(&self, other: &Calculus) -> bool {
        self.rules().iter().all(|r| other.allows(*r))
            && language_subset(self.language(), other.language())
            && (other.single_conclusion() <= self.single_conclusion())
            && (self.chu.is_none() || self.chu == other.chu)
    }
}

fn language_subset(a: LanguageId, b: LanguageId) -> bool {
    use LanguageId::*;
    a == b
        || matches!(
            (a, b),
            (U, B)
                | (U, Bang)
                | (B, Bang)
                | (Nn, StarNn)
                | (Nn, U)
                | (Nn, B)
                | (Nn, Bang)
                | (StarNn, U)
                | (StarNn, B)
                | (StarNn, Bang)
        )
}

impl fmt::Display for Calculus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.chu {
            Some((d, n)) => write!(f, "iG_D({}; D={}; N={})", self.system.name(), d, n)?,
            None => f.write_str(self.system.name())?,
        }
        if self.cut_free {
            f.write_str("-")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Calculus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown calculus '{0}'")]
pub struct UnknownCalculus(pub String);

/// Parses names like `FL_e`, `G-`, `iG_D(IMALL; D=bot; N=bot)`.
pub fn parse_calculus(text: &str) -> Result<Calculus, UnknownCalculus> {
    let text = text.trim();
    let err = || UnknownCalculus(text.to_string());
    let (body, cut_free) = match text.strip_suffix('-') {
        Some(b) => (b.trim(), true),
        None => (text, false),
    };
    if let Some(inner) = body.strip_prefix("iG_D(").and_then(|r| r.strip_suffix(')')) {
        let parts: Vec<&str> = inner.split(';').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(err());
        }
        let system = System::from_name(parts[0]).ok_or_else(err)?;
        let d = parts[1].strip_prefix("D=").ok_or_else(err)?;
        let n = parts[2].strip_prefix("N=").ok_or_else(err)?;
        let d = parse_formula(d).map_err(|_| err())?;
        let n = parse_formula(n).map_err(|_| err())?;
        let mut c = Calculus::chu(system, d, n);
        c.cut_free = cut_free;
        return Ok(c);
    }
    let system = System::from_name(body).ok_or_else(err)?;
    Ok(Calculus { system, cut_free, chu: None })
}

impl std::str::FromStr for Calculus {
    type Err = UnknownCalculus;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_calculus(s)
    }
}

/// `bot`, handy for the common Chu parameters.
pub fn bot() -> Formula {
    Formula::constant(Const::Bot)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compositions() {
        let fle = Calculus::new(FLe);
        for r in [Rule::Lw, Rule::Rw, Rule::Lc, Rule::Rc] {
            assert!(!fle.allows(r));
        }
        let rll = Calculus::new(RLL);
        for r in [Rule::Lc, Rule::Rc, Rule::BangR, Rule::BangL, Rule::BangW, Rule::BangC, Rule::Cut] {
            assert!(rll.allows(r));
        }
        let g = Calculus::new(G);
        let mut minus = g.rules();
        minus.retain(|r| *r != Rule::Cut);
        assert_eq!(Calculus::cut_free(G).rules(), minus);
    }

    #[test]
    fn names_round_trip() {
        for s in System::EVERY {
            assert_eq!(parse_calculus(s.name()).unwrap(), Calculus::new(s));
        }
        let c = Calculus::chu(IMALL, bot(), bot());
        assert_eq!(parse_calculus(&c.to_string()).unwrap(), c);
        assert_eq!(parse_calculus("G-").unwrap(), Calculus::cut_free(G));
    }

    #[test]
    fn chu_language_grows() {
        let c = Calculus::chu(FLe, bot(), bot());
        assert_eq!(c.language(), LanguageId::B);
        assert!(c.allows(Rule::BotL));
        assert!(!Calculus::chu(FLe, Formula::one(), Formula::zero()).allows(Rule::BotL));
    }
}
