use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use super::LogicError;

/// A modal formula over propositional variables `p0, p1, ...`.
///
/// The surface syntax keeps the derived connectives so that printing
/// round-trips; [`Formula::core`] rewrites into `{⊥, p, ¬, ∧, □}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Bottom,
    Top,
    Var(u32),
    Not(Arc<Formula>),
    And(Arc<Formula>, Arc<Formula>),
    Or(Arc<Formula>, Arc<Formula>),
    Implies(Arc<Formula>, Arc<Formula>),
    Box(Arc<Formula>),
    Diamond(Arc<Formula>),
}

impl Formula {
    pub fn var(i: u32) -> Self {
        Formula::Var(i)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(a: Formula) -> Self {
        Formula::Not(Arc::new(a))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Arc::new(a), Arc::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Arc::new(a), Arc::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::Implies(Arc::new(a), Arc::new(b))
    }

    pub fn boxed(a: Formula) -> Self {
        Formula::Box(Arc::new(a))
    }

    pub fn diamond(a: Formula) -> Self {
        Formula::Diamond(Arc::new(a))
    }

    /// `◇ⁿ φ`.
    pub fn diamond_pow(n: usize, a: Formula) -> Self {
        (0..n).fold(a, |acc, _| Formula::diamond(acc))
    }

    /// `□ⁿ φ`.
    pub fn box_pow(n: usize, a: Formula) -> Self {
        (0..n).fold(a, |acc, _| Formula::boxed(acc))
    }

    /// Negation that strips an existing outer `¬` instead of stacking one.
    pub fn neg(&self) -> Formula {
        match self {
            Formula::Not(a) => (**a).clone(),
            other => Formula::not(other.clone()),
        }
    }

    /// Rewrites into the core connectives `{⊥, p, ¬, ∧, □}` with double
    /// negations collapsed.
    pub fn core(&self) -> Formula {
        match self {
            Formula::Bottom => Formula::Bottom,
            Formula::Top => Formula::not(Formula::Bottom),
            Formula::Var(i) => Formula::Var(*i),
            Formula::Not(a) => a.core().neg(),
            Formula::And(a, b) => Formula::and(a.core(), b.core()),
            Formula::Or(a, b) => Formula::and(a.core().neg(), b.core().neg()).neg(),
            Formula::Implies(a, b) => Formula::and(a.core(), b.core().neg()).neg(),
            Formula::Box(a) => Formula::boxed(a.core()),
            Formula::Diamond(a) => Formula::boxed(a.core().neg()).neg(),
        }
    }

    pub fn is_core(&self) -> bool {
        match self {
            Formula::Bottom | Formula::Var(_) => true,
            Formula::Not(a) => !matches!(**a, Formula::Not(_)) && a.is_core(),
            Formula::And(a, b) => a.is_core() && b.is_core(),
            Formula::Box(a) => a.is_core(),
            _ => false,
        }
    }

    pub fn modal_depth(&self) -> usize {
        match self {
            Formula::Bottom | Formula::Top | Formula::Var(_) => 0,
            Formula::Not(a) => a.modal_depth(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.modal_depth().max(b.modal_depth())
            }
            Formula::Box(a) | Formula::Diamond(a) => 1 + a.modal_depth(),
        }
    }

    pub fn vars(&self) -> BTreeSet<u32> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<u32>) {
        match self {
            Formula::Bottom | Formula::Top => {}
            Formula::Var(i) => {
                out.insert(*i);
            }
            Formula::Not(a) | Formula::Box(a) | Formula::Diamond(a) => a.collect_vars(out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    fn subformulas_into(&self, out: &mut BTreeSet<Formula>) {
        if !out.insert(self.clone()) {
            return;
        }
        match self {
            Formula::Bottom | Formula::Top | Formula::Var(_) => {}
            Formula::Not(a) | Formula::Box(a) | Formula::Diamond(a) => a.subformulas_into(out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.subformulas_into(out);
                b.subformulas_into(out);
            }
        }
    }

    fn prec(&self) -> u8 {
        match self {
            Formula::Implies(..) => 1,
            Formula::Or(..) => 2,
            Formula::And(..) => 3,
            _ => 4,
        }
    }

    fn write_prec(&self, f: &mut fmt::Formatter<'_>, ctx: u8) -> fmt::Result {
        let paren = self.prec() < ctx;
        if paren {
            f.write_str("(")?;
        }
        match self {
            Formula::Bottom => f.write_str("False")?,
            Formula::Top => f.write_str("True")?,
            Formula::Var(i) => write!(f, "p{i}")?,
            Formula::Not(a) => {
                f.write_str("~")?;
                a.write_prec(f, 4)?;
            }
            Formula::Box(a) => {
                f.write_str("[]")?;
                a.write_prec(f, 4)?;
            }
            Formula::Diamond(a) => {
                f.write_str("<>")?;
                a.write_prec(f, 4)?;
            }
            Formula::And(a, b) => {
                a.write_prec(f, 3)?;
                f.write_str(" & ")?;
                b.write_prec(f, 4)?;
            }
            Formula::Or(a, b) => {
                a.write_prec(f, 2)?;
                f.write_str(" | ")?;
                b.write_prec(f, 3)?;
            }
            Formula::Implies(a, b) => {
                a.write_prec(f, 2)?;
                f.write_str(" -> ")?;
                b.write_prec(f, 1)?;
            }
        }
        if paren {
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_prec(f, 0)
    }
}

impl std::str::FromStr for Formula {
    type Err = LogicError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_formula(s)
    }
}

impl serde::Serialize for Formula {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Formula {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_formula(&s).map_err(serde::de::Error::custom)
    }
}

pub fn format_formula(phi: &Formula) -> String {
    phi.to_string()
}

/// Parses the formula grammar: variables `p<digits>`, `True`, `False`,
/// `~`, `[]`, `<>` (binding tightest), then `&`, `|`, and right-associative
/// `->`.
pub fn parse_formula(text: &str) -> Result<Formula, LogicError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let f = p.implication()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(f)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> LogicError {
        LogicError::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(tok.as_bytes()) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn implication(&mut self) -> Result<Formula, LogicError> {
        let lhs = self.disjunction()?;
        if self.eat("->") {
            let rhs = self.implication()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula, LogicError> {
        let mut acc = self.conjunction()?;
        while self.eat("|") {
            acc = Formula::or(acc, self.conjunction()?);
        }
        Ok(acc)
    }

    fn conjunction(&mut self) -> Result<Formula, LogicError> {
        let mut acc = self.unary()?;
        while self.eat("&") {
            acc = Formula::and(acc, self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Formula, LogicError> {
        if self.eat("~") {
            return Ok(Formula::not(self.unary()?));
        }
        if self.eat("[]") {
            return Ok(Formula::boxed(self.unary()?));
        }
        if self.eat("<>") {
            return Ok(Formula::diamond(self.unary()?));
        }
        if self.eat("(") {
            let f = self.implication()?;
            if !self.eat(")") {
                return Err(self.err("expected ')'"));
            }
            return Ok(f);
        }
        if self.eat("True") {
            return Ok(Formula::Top);
        }
        if self.eat("False") {
            return Ok(Formula::Bottom);
        }
        self.skip_ws();
        if self.src.get(self.pos) == Some(&b'p') {
            let start = self.pos;
            self.pos += 1;
            let digits_start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if digits_start == self.pos {
                return Err(self.err("expected digits after 'p'"));
            }
            let digits = std::str::from_utf8(&self.src[digits_start..self.pos]).unwrap();
            let idx = digits.parse::<u32>().map_err(|_| LogicError::Syntax {
                pos: start,
                msg: "variable index out of range".into(),
            })?;
            return Ok(Formula::Var(idx));
        }
        if self.pos >= self.src.len() {
            return Err(self.err("unexpected end of input"));
        }
        Err(self.err("expected a formula"))
    }
}

/// A finite set of formulas in canonical (derived `Ord`) order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FormulaSet(BTreeSet<Formula>);

impl FormulaSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(f: Formula) -> Self {
        Self(BTreeSet::from([f]))
    }

    pub fn insert(&mut self, f: Formula) -> bool {
        self.0.insert(f)
    }

    pub fn with(&self, f: Formula) -> Self {
        let mut out = self.clone();
        out.insert(f);
        out
    }

    pub fn union(&self, other: &FormulaSet) -> Self {
        Self(self.0.union(&other.0).cloned().collect())
    }

    pub fn contains(&self, f: &Formula) -> bool {
        self.0.contains(f)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Formula> {
        self.0.iter()
    }

    pub fn as_set(&self) -> &BTreeSet<Formula> {
        &self.0
    }

    /// Parses a comma-separated list of formulas.
    pub fn parse_list(text: &str) -> Result<Self, LogicError> {
        if text.trim().is_empty() {
            return Ok(Self::new());
        }
        text.split(',').map(parse_formula).collect()
    }
}

impl FromIterator<Formula> for FormulaSet {
    fn from_iter<I: IntoIterator<Item = Formula>>(iter: I) -> Self {
        Self(iter.into_iter().collect())
    }
}

impl IntoIterator for FormulaSet {
    type Item = Formula;
    type IntoIter = std::collections::btree_set::IntoIter<Formula>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

impl<'a> IntoIterator for &'a FormulaSet {
    type Item = &'a Formula;
    type IntoIter = std::collections::btree_set::Iter<'a, Formula>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Display for FormulaSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("}")
    }
}

/// Subformula closure of the core forms of `gamma`, closed under single
/// negation.
pub fn closure(gamma: &FormulaSet) -> FormulaSet {
    let mut subs = BTreeSet::new();
    for f in gamma {
        f.core().subformulas_into(&mut subs);
    }
    let negs: Vec<Formula> = subs.iter().map(Formula::neg).collect();
    subs.extend(negs);
    FormulaSet(subs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(i: u32) -> Formula {
        Formula::var(i)
    }

    #[test]
    fn parse_examples() {
        assert_eq!(
            parse_formula("[](p0 -> <>p1)").unwrap(),
            Formula::boxed(Formula::implies(p(0), Formula::diamond(p(1))))
        );
        let nf = parse_formula("~False").unwrap();
        assert_eq!(nf, Formula::not(Formula::Bottom));
        assert_eq!(nf.to_string(), "~False");
        assert_eq!(
            parse_formula("<> <> True").unwrap(),
            Formula::diamond(Formula::diamond(Formula::Top))
        );
    }

    #[test]
    fn precedence_and_associativity() {
        let f = parse_formula("p0 & p1 | p2 -> p3 -> p4").unwrap();
        let expected = Formula::implies(
            Formula::or(Formula::and(p(0), p(1)), p(2)),
            Formula::implies(p(3), p(4)),
        );
        assert_eq!(f, expected);
        assert_eq!(f.to_string(), "p0 & p1 | p2 -> p3 -> p4");
        let g = parse_formula("(p0 -> p1) -> p2").unwrap();
        assert_eq!(g.to_string(), "(p0 -> p1) -> p2");
        let h = parse_formula("~[]p0 & <>(p1 | p2)").unwrap();
        assert_eq!(h.to_string(), "~[]p0 & <>(p1 | p2)");
        assert_eq!(
            parse_formula("p0 & (p1 & p2)").unwrap().to_string(),
            "p0 & (p1 & p2)"
        );
        assert_eq!(
            parse_formula("p0 & p1 & p2").unwrap().to_string(),
            "p0 & p1 & p2"
        );
    }

    #[test]
    fn syntax_errors() {
        for (src, pos) in [("p0 &", 4), ("(p0", 3), ("p", 1), ("p0 p1", 3), ("q", 0)] {
            match parse_formula(src) {
                Err(LogicError::Syntax { pos: got, .. }) => assert_eq!(got, pos, "{src}"),
                other => panic!("{src}: {other:?}"),
            }
        }
    }

    #[test]
    fn core_form() {
        let f = parse_formula("<>True").unwrap().core();
        assert_eq!(f, Formula::not(Formula::boxed(Formula::Bottom)));
        assert!(f.is_core());
        let g = parse_formula("~~p0 -> p1").unwrap().core();
        assert_eq!(g, Formula::not(Formula::and(p(0), Formula::not(p(1)))));
    }

    #[test]
    fn closure_examples() {
        let c = closure(&FormulaSet::singleton(Formula::boxed(p(0))));
        let expected: FormulaSet = [
            Formula::boxed(p(0)),
            p(0),
            Formula::not(Formula::boxed(p(0))),
            Formula::not(p(0)),
        ]
        .into_iter()
        .collect();
        assert_eq!(c, expected);
        assert!(closure(&FormulaSet::new()).is_empty());
        let d = closure(&FormulaSet::singleton(Formula::diamond(Formula::Top)));
        assert!(d.contains(&Formula::Top.core()));
        assert!(d.contains(&Formula::boxed(Formula::Bottom)));
        assert!(d.contains(&Formula::not(Formula::diamond(Formula::Top)).core()));
    }

    #[test]
    fn set_parsing() {
        let s = FormulaSet::parse_list("<>p0, []~p0").unwrap();
        assert_eq!(s.len(), 2);
        assert!(FormulaSet::parse_list("  ").unwrap().is_empty());
    }
}
