use std::collections::BTreeSet;

use super::SpaceSpec;
use crate::ordinal::Ordinal;

fn exponent_pool() -> Vec<Ordinal> {
    let w = Ordinal::omega();
    let mut pool: Vec<Ordinal> = (0..=4).map(Ordinal::nat).collect();
    pool.extend([
        w.clone(),
        w.succ(),
        Ordinal::omega_pow_mul(Ordinal::one(), 2),
        Ordinal::omega_pow(Ordinal::nat(2)),
        Ordinal::omega_pow(w.clone()),
        Ordinal::omega_pow(w).succ(),
    ]);
    pool
}

/// A deterministic, well-spread set of at most `count` points of `[0, Θ)`.
///
/// Candidates are sums of up to three terms `ω^e·c` with `c ≤ 3` and `e` from
/// a fixed pool. Landmarks (`0`, pure powers `ω^e`, the partial sums of `Θ`
/// and the predecessor of a successor `Θ`) come first; the rest is filled
/// with evenly spaced candidates.
pub fn canonical_samples(space: &SpaceSpec, count: usize) -> Vec<Ordinal> {
    let theta = &space.theta;
    let pool: Vec<Ordinal> = exponent_pool()
        .into_iter()
        .filter(|e| &Ordinal::omega_pow(e.clone()) < theta || theta.leading_exp() == Some(e))
        .collect();
    let term = |e: &Ordinal, c: u64| Ordinal::omega_pow_mul(e.clone(), c);
    let mut all: BTreeSet<Ordinal> = BTreeSet::new();
    all.insert(Ordinal::zero());
    for (i, e1) in pool.iter().enumerate() {
        for c1 in 1..=3 {
            let a = term(e1, c1);
            all.insert(a.clone());
            for (j, e2) in pool.iter().enumerate().take(i) {
                for c2 in 1..=3 {
                    let b = a.add(&term(e2, c2));
                    all.insert(b.clone());
                    for e3 in pool.iter().take(j) {
                        for c3 in 1..=3 {
                            all.insert(b.add(&term(e3, c3)));
                        }
                    }
                }
            }
        }
    }
    let ordered: Vec<Ordinal> = all.into_iter().filter(|x| x < theta).collect();

    let mut landmarks: BTreeSet<Ordinal> = BTreeSet::new();
    landmarks.insert(Ordinal::zero());
    for e in &pool {
        landmarks.insert(Ordinal::omega_pow(e.clone()));
    }
    let mut partial = Ordinal::zero();
    for t in theta.terms() {
        for c in 1..=t.coeff.min(3) {
            landmarks.insert(partial.add(&Ordinal::omega_pow_mul(t.exp.clone(), c)));
        }
        partial = partial.add(&Ordinal::omega_pow_mul(t.exp.clone(), t.coeff));
    }
    if let Some(p) = theta.pred() {
        landmarks.insert(p);
    }
    let landmarks: Vec<Ordinal> = landmarks.into_iter().filter(|x| x < theta).collect();

    let mut out: BTreeSet<Ordinal> = landmarks.into_iter().take(count).collect();
    let rest: Vec<Ordinal> = ordered.into_iter().filter(|x| !out.contains(x)).collect();
    let need = count.saturating_sub(out.len());
    if need > 0 && !rest.is_empty() {
        if rest.len() <= need {
            out.extend(rest);
        } else {
            for i in 0..need {
                let idx = if need == 1 {
                    0
                } else {
                    i * (rest.len() - 1) / (need - 1)
                };
                out.insert(rest[idx].clone());
            }
        }
    }
    out.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn samples_are_in_space_and_include_landmarks() {
        let s = SpaceSpec::new("w^3 + 1".parse().unwrap(), Ordinal::one()).unwrap();
        let pts = canonical_samples(&s, 50);
        assert_eq!(pts.len(), 50);
        assert!(pts.iter().all(|p| s.contains(p)));
        for l in ["0", "1", "w", "w^2", "w^3"] {
            assert!(pts.contains(&l.parse().unwrap()), "{l}");
        }
        assert!(pts.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(canonical_samples(&s, 50), pts);
    }

    #[test]
    fn small_spaces() {
        let s = SpaceSpec::new(Ordinal::nat(3), Ordinal::one()).unwrap();
        assert_eq!(
            canonical_samples(&s, 50),
            vec![Ordinal::zero(), Ordinal::one(), Ordinal::nat(2)]
        );
    }
}
