//! Small number theory: prime sets, gcd/lcm, trial-division factorization.

use std::fmt;

use serde::Serialize;

use crate::error::AnalysisError;

pub fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: u128, b: u128) -> u128 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

/// A sorted set of distinct primes.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct PrimeSet(Vec<u64>);

impl PrimeSet {
    pub fn new() -> Self {
        PrimeSet(Vec::new())
    }

    pub fn from_primes<I: IntoIterator<Item = u64>>(primes: I) -> Self {
        let mut v: Vec<u64> = primes.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        PrimeSet(v)
    }

    /// π̃: number of distinct primes.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, p: u64) -> bool {
        self.0.binary_search(&p).is_ok()
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = u64> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn union(&self, other: &PrimeSet) -> PrimeSet {
        PrimeSet::from_primes(self.iter().chain(other.iter()))
    }

    /// Size of the union without allocating.
    pub fn union_len(&self, other: &PrimeSet) -> usize {
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j, mut n) = (0, 0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
            n += 1;
        }
        n + (a.len() - i) + (b.len() - j)
    }

    pub fn is_subset(&self, other: &PrimeSet) -> bool {
        self.iter().all(|p| other.contains(p))
    }

    pub fn product(&self) -> u128 {
        self.iter().map(u128::from).product()
    }
}

impl fmt::Debug for PrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.iter()).finish()
    }
}

impl fmt::Display for PrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

/// Distinct prime divisors of `n` by trial division.
pub fn prime_factors(n: u128) -> Result<PrimeSet, AnalysisError> {
    if n == 0 {
        return Err(AnalysisError::Zero);
    }
    Ok(prime_factors_nonzero(n))
}

pub(crate) fn prime_factors_nonzero(mut n: u128) -> PrimeSet {
    debug_assert!(n > 0);
    let mut out = Vec::new();
    let mut d: u128 = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d as u64);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n as u64);
    }
    PrimeSet(out)
}

pub fn is_squarefree(n: u128) -> bool {
    if n == 0 {
        return false;
    }
    prime_factors_nonzero(n).as_slice().iter().all(|&p| !n.is_multiple_of(u128::from(p) * u128::from(p)))
}

pub fn is_prime(n: u128) -> bool {
    n >= 2 && prime_factors_nonzero(n).as_slice() == [n as u64]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_examples() {
        assert!(prime_factors(1).unwrap().is_empty());
        assert_eq!(prime_factors(30).unwrap().as_slice(), &[2, 3, 5]);
        assert_eq!(prime_factors(1512).unwrap().as_slice(), &[2, 3, 7]);
        assert_eq!(prime_factors(0), Err(AnalysisError::Zero));
        assert_eq!(prime_factors(1_000_000_007).unwrap().as_slice(), &[1_000_000_007]);
        assert_eq!(prime_factors(1 << 40).unwrap().as_slice(), &[2]);
    }

    #[test]
    fn factor_matches_sieve() {
        for n in 1u128..2000 {
            let brute: Vec<u64> =
                (2..=n as u64).filter(|&p| n % p as u128 == 0 && (2..p).all(|d| p % d != 0)).collect();
            assert_eq!(prime_factors(n).unwrap().as_slice(), brute.as_slice(), "n = {n}");
        }
    }

    #[test]
    fn union_len_agrees_with_union() {
        let a = PrimeSet::from_primes([2, 3, 7]);
        let b = PrimeSet::from_primes([3, 5]);
        assert_eq!(a.union_len(&b), 4);
        assert_eq!(a.union(&b).as_slice(), &[2, 3, 5, 7]);
        assert_eq!(a.union_len(&PrimeSet::new()), 3);
    }

    #[test]
    fn squarefree() {
        assert!(is_squarefree(1));
        assert!(is_squarefree(30));
        assert!(!is_squarefree(12));
        assert!(!is_squarefree(0));
    }
}
