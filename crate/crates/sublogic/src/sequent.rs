use std::fmt;

use crate::formula::{bigplus, bigstar, parse_formula, Formula, Multiset, ParseError};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Sequent {
    pub ant: Multiset,
    pub suc: Multiset,
}

impl Sequent {
    pub fn new(ant: Multiset, suc: Multiset) -> Sequent {
        Sequent { ant, suc }
    }

    pub fn from_vecs(ant: Vec<Formula>, suc: Vec<Formula>) -> Sequent {
        Sequent { ant: Multiset::from_vec(ant), suc: Multiset::from_vec(suc) }
    }

    /// `ant => goal`
    pub fn goal(ant: Vec<Formula>, goal: Formula) -> Sequent {
        Sequent::from_vecs(ant, vec![goal])
    }

    pub fn lines(&self) -> u64 {
        (self.ant.len() + self.suc.len()) as u64
    }

    /// Formula sizes plus one for the arrow.
    pub fn size(&self) -> u64 {
        self.ant.total_size().saturating_add(self.suc.total_size()).saturating_add(1)
    }

    /// The single succedent formula, if there is exactly one.
    pub fn conclusion(&self) -> Option<&Formula> {
        match self.suc.as_slice() {
            [f] => Some(f),
            _ => None,
        }
    }

    pub fn formulas(&self) -> impl Iterator<Item = &Formula> {
        self.ant.iter().chain(self.suc.iter())
    }
}

/// `*ant -> (+suc)` with `1` and `0` for empty sides.
pub fn interpretation(s: &Sequent) -> Formula {
    Formula::imp(bigstar(&s.ant), bigplus(&s.suc))
}

fn write_side(f: &mut fmt::Formatter<'_>, m: &Multiset) -> fmt::Result {
    for (i, x) in m.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_side(f, &self.ant)?;
        if self.ant.is_empty() {
            f.write_str("=>")?;
        } else {
            f.write_str(" =>")?;
        }
        if !self.suc.is_empty() {
            f.write_str(" ")?;
            write_side(f, &self.suc)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Splits on commas that are not nested inside parentheses.
fn split_top_level(s: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push((start, &s[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push((start, &s[start..]));
    out.into_iter().filter(|(_, p)| !p.trim().is_empty()).collect()
}

fn parse_side(s: &str, offset: usize) -> Result<Multiset, ParseError> {
    let mut v = Vec::new();
    for (start, part) in split_top_level(s) {
        v.push(parse_formula(part).map_err(|e| ParseError { pos: e.pos + offset + start, msg: e.msg })?);
    }
    Ok(Multiset::from_vec(v))
}

/// Parses `a, b => c`.
pub fn parse_sequent(text: &str) -> Result<Sequent, ParseError> {
    let arrow = text.find("=>").ok_or_else(|| ParseError { pos: text.len(), msg: "expected '=>'".into() })?;
    let ant = parse_side(&text[..arrow], 0)?;
    let suc = parse_side(&text[arrow + 2..], arrow + 2)?;
    Ok(Sequent { ant, suc })
}

impl std::str::FromStr for Sequent {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_sequent(s)
    }
}
