//! End logarithms, hyperlogarithms, hyperexponentials, cofinality and
//! fundamental sequences.

use serde::{Deserialize, Serialize};

use super::{Ordinal, OrdinalError, DEFAULT_NESTING_LIMIT};

/// Cofinality of an ordinal below ε₀: every limit has cofinality ω.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Cofinality {
    Zero,
    One,
    Omega,
}

impl std::fmt::Display for Cofinality {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Cofinality::Zero => "0",
            Cofinality::One => "1",
            Cofinality::Omega => "w",
        })
    }
}

pub fn classify(alpha: &Ordinal) -> Cofinality {
    match alpha.last_term() {
        None => Cofinality::Zero,
        Some(t) if t.exp.is_zero() => Cofinality::One,
        Some(_) => Cofinality::Omega,
    }
}

/// The exponent `β` of the last term in `ξ = α + ω^β`. By convention
/// `end_log(0) = 0`.
pub fn end_log(alpha: &Ordinal) -> Ordinal {
    alpha
        .last_term()
        .map_or_else(Ordinal::zero, |t| t.exp.clone())
}

/// `ℓ^n α`: the `n`-fold iterate of [`end_log`].
pub fn hyper_log_n(n: u64, alpha: &Ordinal) -> Ordinal {
    let mut cur = alpha.clone();
    for _ in 0..n {
        if cur.is_zero() {
            break;
        }
        cur = end_log(&cur);
    }
    cur
}

/// `ℓ^ξ α` for an arbitrary index. Infinite indices yield 0: every `α < ε₀`
/// lies below `e^ω(1)`, so `ℓ^ω α < 1`, and every further iterate fixes 0.
pub fn hyper_log(xi: &Ordinal, alpha: &Ordinal) -> Ordinal {
    match xi.as_nat() {
        Some(n) => hyper_log_n(n, alpha),
        None => Ordinal::zero(),
    }
}

/// `e^n α` where `e(ξ) = −1 + ω^ξ`, with the default nesting limit.
pub fn hyper_exp(n: &Ordinal, alpha: &Ordinal) -> Result<Ordinal, OrdinalError> {
    hyper_exp_with_limit(n, alpha, DEFAULT_NESTING_LIMIT)
}

pub fn hyper_exp_with_limit(
    n: &Ordinal,
    alpha: &Ordinal,
    limit: usize,
) -> Result<Ordinal, OrdinalError> {
    let n = n
        .as_nat()
        .ok_or_else(|| OrdinalError::IndexOutOfRange(n.to_string()))?;
    let mut cur = alpha.clone();
    for _ in 0..n {
        // −1 + ω^0 = 0, and −1 + ω^ξ = ω^ξ for ξ ≥ 1.
        if cur.is_zero() {
            break;
        }
        if cur.height() + 1 > limit {
            return Err(OrdinalError::RepresentationOverflow { limit });
        }
        cur = Ordinal::omega_pow(cur);
    }
    Ok(cur)
}

/// Canonical fundamental sequence `α[n]` of a limit ordinal.
///
/// `ω^{β+1}[n] = ω^β·n`, `ω^λ[n] = ω^{λ[n]}` for limit `λ`, and
/// `(γ + ω^β)[n] = γ + ω^β[n]`.
pub fn fundamental_seq(alpha: &Ordinal, n: u64) -> Result<Ordinal, OrdinalError> {
    if !alpha.is_limit() {
        return Err(OrdinalError::NotLimit(alpha.to_string()));
    }
    let (gamma, beta) = alpha.drop_last_unit().expect("limit is non-zero");
    let tail = match beta.pred() {
        Some(delta) => Ordinal::omega_pow_mul(delta, n),
        None => Ordinal::omega_pow(fundamental_seq(&beta, n)?),
    };
    Ok(gamma.add(&tail))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(s: &str) -> Ordinal {
        s.parse().unwrap()
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(&o("w^w")), Cofinality::Omega);
        assert_eq!(classify(&o("w+3")), Cofinality::One);
        assert_eq!(classify(&o("0")), Cofinality::Zero);
        // cf(w^2 + w) = cf(w)
        assert_eq!(classify(&(o("w^2") + o("w"))), classify(&o("w")));
    }

    #[test]
    fn end_log_examples() {
        assert_eq!(end_log(&o("w^w")), o("w"));
        assert_eq!(end_log(&o("w^2*3 + w")), o("1"));
        assert_eq!(end_log(&o("7")), o("0"));
        assert_eq!(end_log(&o("0")), o("0"));
    }

    #[test]
    fn hyper_log_examples() {
        let a = o("w^(w^3)");
        assert_eq!(hyper_log_n(2, &a), o("3"));
        assert_eq!(hyper_log_n(2, &a), end_log(&end_log(&a)));
        assert_eq!(hyper_log(&o("0"), &a), a);
        assert_eq!(hyper_log(&o("w"), &o("w^(w^w)")), o("0"));
        assert_eq!(hyper_log(&o("w*2 + 3"), &o("w^(w^w)")), o("0"));
        assert_eq!(hyper_log_n(5, &o("0")), o("0"));
    }

    #[test]
    fn hyper_exp_examples() {
        assert_eq!(hyper_exp(&o("1"), &o("1")).unwrap(), o("w"));
        assert_eq!(hyper_exp(&o("1"), &o("0")).unwrap(), o("0"));
        // e(e(1)) = e(w) = -1 + w^w
        let e1 = hyper_exp(&o("1"), &o("1")).unwrap();
        assert_eq!(hyper_exp(&o("1"), &e1).unwrap(), o("w^w"));
        assert_eq!(hyper_exp(&o("2"), &o("1")).unwrap(), o("w^w"));
        assert_eq!(hyper_exp(&o("0"), &o("w+1")).unwrap(), o("w+1"));
    }

    #[test]
    fn hyper_exp_errors() {
        assert!(matches!(
            hyper_exp(&o("w"), &o("1")),
            Err(OrdinalError::IndexOutOfRange(_))
        ));
        assert_eq!(
            hyper_exp_with_limit(&o("5"), &o("1"), 3),
            Err(OrdinalError::RepresentationOverflow { limit: 3 })
        );
        assert!(hyper_exp_with_limit(&o("3"), &o("1"), 3).is_ok());
    }

    #[test]
    fn fundamental_seq_examples() {
        assert_eq!(fundamental_seq(&o("w"), 3).unwrap(), o("3"));
        assert_eq!(fundamental_seq(&o("w^2"), 3).unwrap(), o("w*3"));
        assert_eq!(fundamental_seq(&o("w^w"), 2).unwrap(), o("w^2"));
        assert_eq!(fundamental_seq(&o("w^2*2 + w"), 4).unwrap(), o("w^2*2 + 4"));
        assert_eq!(fundamental_seq(&o("w^2"), 0).unwrap(), o("0"));
        assert!(matches!(
            fundamental_seq(&o("w+1"), 1),
            Err(OrdinalError::NotLimit(_))
        ));
        assert!(fundamental_seq(&o("0"), 1).is_err());
    }

    #[test]
    fn fundamental_seq_is_increasing_and_bounded() {
        for s in ["w^2", "w^w", "w^(w^w)", "w^3*2 + w^w", "w^(w+1)"] {
            let a = o(s);
            let seq: Vec<_> = (0..12).map(|n| fundamental_seq(&a, n).unwrap()).collect();
            assert!(seq.windows(2).all(|w| w[0] < w[1]), "{s}");
            assert!(seq.iter().all(|x| x < &a), "{s}");
        }
    }
}
