//! Ordinals below ε₀ in Cantor normal form.
//!
//! An [`Ordinal`] is a strictly decreasing sequence of terms `ω^e·c` with
//! `c ≥ 1`, where every exponent `e` is itself an [`Ordinal`]. The empty
//! sequence is `0`. Values are immutable and all operations are pure.

mod hyper;
mod parse;

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use thiserror::Error;

pub use hyper::{
    classify, end_log, fundamental_seq, hyper_exp, hyper_exp_with_limit, hyper_log, hyper_log_n,
    Cofinality,
};
pub use parse::{parse_ordinal, parse_ordinal_with_limit};

/// Default bound on exponent nesting accepted by the parser and by [`hyper_exp`].
pub const DEFAULT_NESTING_LIMIT: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrdinalError {
    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("exponent nesting exceeds limit {limit}")]
    NestingTooDeep { limit: usize },
    #[error("left subtraction underflow: {lhs} > {rhs}")]
    Underflow { lhs: String, rhs: String },
    #[error("hyperexponential index {0} is not finite; e^w(1) = epsilon_0 is not representable")]
    IndexOutOfRange(String),
    #[error("result exceeds the representation (nesting limit {limit})")]
    RepresentationOverflow { limit: usize },
    #[error("{0} is not a limit ordinal")]
    NotLimit(String),
    #[error("coefficient overflow")]
    CoefficientOverflow,
    #[error("invalid normal form: {0}")]
    InvalidForm(String),
}

/// One term `ω^exp · coeff` of a Cantor normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term {
    pub exp: Ordinal,
    pub coeff: u64,
}

/// An ordinal below ε₀.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Ordinal {
    terms: Vec<Term>,
}

impl Ordinal {
    pub fn zero() -> Self {
        Ordinal { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::nat(1)
    }

    pub fn nat(n: u64) -> Self {
        if n == 0 {
            Self::zero()
        } else {
            Ordinal {
                terms: vec![Term {
                    exp: Self::zero(),
                    coeff: n,
                }],
            }
        }
    }

    pub fn omega() -> Self {
        Self::omega_pow(Self::one())
    }

    /// `ω^exp`.
    pub fn omega_pow(exp: Ordinal) -> Self {
        Self::omega_pow_mul(exp, 1)
    }

    /// `ω^exp · coeff`; `coeff = 0` gives zero.
    pub fn omega_pow_mul(exp: Ordinal, coeff: u64) -> Self {
        if coeff == 0 {
            return Self::zero();
        }
        Ordinal {
            terms: vec![Term { exp, coeff }],
        }
    }

    /// Builds an ordinal from `(exponent, coefficient)` pairs that are already
    /// in normal form.
    pub fn from_terms(terms: Vec<(Ordinal, u64)>) -> Result<Self, OrdinalError> {
        for w in terms.windows(2) {
            if w[0].0 <= w[1].0 {
                return Err(OrdinalError::InvalidForm(
                    "exponents must be strictly decreasing".into(),
                ));
            }
        }
        if terms.iter().any(|(_, c)| *c == 0) {
            return Err(OrdinalError::InvalidForm("zero coefficient".into()));
        }
        Ok(Ordinal {
            terms: terms
                .into_iter()
                .map(|(exp, coeff)| Term { exp, coeff })
                .collect(),
        })
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_successor(&self) -> bool {
        self.terms.last().is_some_and(|t| t.exp.is_zero())
    }

    pub fn is_limit(&self) -> bool {
        self.terms.last().is_some_and(|t| !t.exp.is_zero())
    }

    /// The value as a natural number, if finite.
    pub fn as_nat(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [t] if t.exp.is_zero() => Some(t.coeff),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.as_nat().is_some()
    }

    pub fn leading_exp(&self) -> Option<&Ordinal> {
        self.terms.first().map(|t| &t.exp)
    }

    pub fn last_term(&self) -> Option<&Term> {
        self.terms.last()
    }

    /// Exponent nesting height: finite ordinals have height 0, `ω^e·c` has
    /// height `1 + height(e)` when `e > 0`.
    pub fn height(&self) -> usize {
        self.terms
            .iter()
            .filter(|t| !t.exp.is_zero())
            .map(|t| 1 + t.exp.height())
            .max()
            .unwrap_or(0)
    }

    pub fn succ(&self) -> Ordinal {
        self.add(&Ordinal::one())
    }

    /// Predecessor of a successor ordinal.
    pub fn pred(&self) -> Option<Ordinal> {
        if !self.is_successor() {
            return None;
        }
        let mut terms = self.terms.clone();
        let last = terms.last_mut().expect("successor has a term");
        if last.coeff == 1 {
            terms.pop();
        } else {
            last.coeff -= 1;
        }
        Some(Ordinal { terms })
    }

    /// Coefficient of `ω^exp` in the normal form (0 if absent).
    pub fn coeff_of(&self, exp: &Ordinal) -> u64 {
        self.terms
            .iter()
            .find(|t| &t.exp == exp)
            .map_or(0, |t| t.coeff)
    }

    /// Ordinal sum `self + rhs`.
    ///
    /// Panics on `u64` coefficient overflow; use [`Ordinal::checked_add`] for
    /// untrusted input.
    pub fn add(&self, rhs: &Ordinal) -> Ordinal {
        self.checked_add(rhs).expect("ordinal coefficient overflow")
    }

    pub fn checked_add(&self, rhs: &Ordinal) -> Result<Ordinal, OrdinalError> {
        let Some(head) = rhs.terms.first() else {
            return Ok(self.clone());
        };
        let mut terms: Vec<Term> = self
            .terms
            .iter()
            .take_while(|t| t.exp >= head.exp)
            .cloned()
            .collect();
        let mut rest = rhs.terms.iter();
        if let Some(last) = terms.last_mut() {
            if last.exp == head.exp {
                last.coeff = last
                    .coeff
                    .checked_add(head.coeff)
                    .ok_or(OrdinalError::CoefficientOverflow)?;
                rest.next();
            }
        }
        terms.extend(rest.cloned());
        Ok(Ordinal { terms })
    }

    /// Left subtraction `−self + rhs`: the unique `γ` with `self + γ = rhs`.
    pub fn left_sub(&self, rhs: &Ordinal) -> Result<Ordinal, OrdinalError> {
        let underflow = || OrdinalError::Underflow {
            lhs: self.to_string(),
            rhs: rhs.to_string(),
        };
        for (i, b) in rhs.terms.iter().enumerate() {
            let Some(a) = self.terms.get(i) else {
                // self is a proper prefix of rhs
                return Ok(Ordinal {
                    terms: rhs.terms[i..].to_vec(),
                });
            };
            if a == b {
                continue;
            }
            return match a.exp.cmp(&b.exp) {
                Ordering::Less => Ok(Ordinal {
                    terms: rhs.terms[i..].to_vec(),
                }),
                Ordering::Greater => Err(underflow()),
                Ordering::Equal if a.coeff < b.coeff => {
                    let mut terms = vec![Term {
                        exp: b.exp.clone(),
                        coeff: b.coeff - a.coeff,
                    }];
                    terms.extend(rhs.terms[i + 1..].iter().cloned());
                    Ok(Ordinal { terms })
                }
                Ordering::Equal => Err(underflow()),
            };
        }
        if self.terms.len() == rhs.terms.len() {
            Ok(Ordinal::zero())
        } else {
            Err(underflow())
        }
    }

    /// The ordinal with the last unit of its final term removed, i.e. the
    /// unique `q` with `q + ω^e = self` where `e` is the last exponent.
    pub(crate) fn drop_last_unit(&self) -> Option<(Ordinal, Ordinal)> {
        let last = self.terms.last()?;
        let mut terms = self.terms.clone();
        let l = terms.last_mut().unwrap();
        if l.coeff == 1 {
            terms.pop();
        } else {
            l.coeff -= 1;
        }
        Some((Ordinal { terms }, last.exp.clone()))
    }

    /// All terms with exponent strictly greater than `exp`.
    pub(crate) fn prefix_above(&self, exp: &Ordinal) -> Ordinal {
        Ordinal {
            terms: self
                .terms
                .iter()
                .take_while(|t| &t.exp > exp)
                .cloned()
                .collect(),
        }
    }

    /// The ordinal without its final term (all copies of it).
    pub(crate) fn without_last_term(&self) -> Ordinal {
        let mut terms = self.terms.clone();
        terms.pop();
        Ordinal { terms }
    }
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Self) -> Ordering {
        // Lexicographic on (exponent, coefficient) pairs; a proper prefix is smaller.
        for (a, b) in self.terms.iter().zip(&other.terms) {
            let ord = a.exp.cmp(&b.exp).then(a.coeff.cmp(&b.coeff));
            if ord != Ordering::Equal {
                return ord;
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &Ordinal {
    type Output = Ordinal;
    fn add(self, rhs: &Ordinal) -> Ordinal {
        Ordinal::add(self, rhs)
    }
}

impl Add for Ordinal {
    type Output = Ordinal;
    fn add(self, rhs: Ordinal) -> Ordinal {
        Ordinal::add(&self, &rhs)
    }
}

impl From<u64> for Ordinal {
    fn from(n: u64) -> Self {
        Ordinal::nat(n)
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if t.exp.is_zero() {
                write!(f, "{}", t.coeff)?;
                continue;
            }
            f.write_str("w")?;
            if t.exp != Ordinal::one() {
                if let Some(n) = t.exp.as_nat() {
                    write!(f, "^{n}")?;
                } else if t.exp == Ordinal::omega() {
                    f.write_str("^w")?;
                } else {
                    write!(f, "^({})", t.exp)?;
                }
            }
            if t.coeff != 1 {
                write!(f, "*{}", t.coeff)?;
            }
        }
        Ok(())
    }
}

impl std::str::FromStr for Ordinal {
    type Err = OrdinalError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_ordinal(s)
    }
}

impl serde::Serialize for Ordinal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Ordinal {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_ordinal(&s).map_err(serde::de::Error::custom)
    }
}

/// `compare(α, β)`.
pub fn compare(a: &Ordinal, b: &Ordinal) -> Ordering {
    a.cmp(b)
}

/// `−α + β`.
pub fn left_sub(alpha: &Ordinal, beta: &Ordinal) -> Result<Ordinal, OrdinalError> {
    alpha.left_sub(beta)
}
