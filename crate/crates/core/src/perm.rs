//! Dense permutations of `{0, .., n-1}` and the cycle-notation text format.
//!
//! Composition acts left to right: `p.then(&q)` (also written `&p * &q`)
//! first applies `p`, then `q`, so it maps `i` to `q(p(i))`. Conjugation
//! follows the same convention, `x^h = h⁻¹ x h`.
//!
//! Points are 0-based in memory and 1-based in every textual form.

use std::fmt;
use std::ops::Mul;

use crate::error::PermError;
use crate::primes::lcm;

/// Largest degree accepted by the text parser and constructors.
pub const MAX_DEGREE: usize = 1024;

/// A bijection on `{0, .., degree-1}` stored as its image table.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Box<[u16]>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        assert!(degree <= MAX_DEGREE, "degree {degree} exceeds {MAX_DEGREE}");
        Permutation { images: (0..degree as u16).collect() }
    }

    /// Builds a permutation from its image table, checking bijectivity.
    pub fn from_images(images: &[usize]) -> Result<Self, PermError> {
        let n = images.len();
        if n > MAX_DEGREE {
            return Err(PermError::DegreeTooLarge(n));
        }
        let mut seen = vec![false; n];
        for &img in images {
            if img >= n {
                return Err(PermError::PointOutOfRange { point: img + 1, degree: n });
            }
            if std::mem::replace(&mut seen[img], true) {
                return Err(PermError::NotBijective);
            }
        }
        Ok(Permutation { images: images.iter().map(|&i| i as u16).collect() })
    }

    /// Builds a permutation from 0-based cycles. Points not mentioned are fixed.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self, PermError> {
        if degree > MAX_DEGREE {
            return Err(PermError::DegreeTooLarge(degree));
        }
        let mut images: Vec<u16> = (0..degree as u16).collect();
        let mut seen = vec![false; degree];
        for cycle in cycles {
            for &pt in cycle {
                if pt >= degree {
                    return Err(PermError::PointOutOfRange { point: pt + 1, degree });
                }
                if std::mem::replace(&mut seen[pt], true) {
                    return Err(PermError::RepeatedPoint(pt + 1));
                }
            }
            for (i, &pt) in cycle.iter().enumerate() {
                images[pt] = cycle[(i + 1) % cycle.len()] as u16;
            }
        }
        Ok(Permutation { images: images.into() })
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of `point`.
    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> impl ExactSizeIterator<Item = usize> + '_ {
        self.images.iter().map(|&i| i as usize)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &img)| i == img as usize)
    }

    /// Smallest point moved by `self`, if any.
    pub fn first_moved_point(&self) -> Option<usize> {
        self.images.iter().enumerate().find(|&(i, &img)| i != img as usize).map(|(i, _)| i)
    }

    /// `self` followed by `other`; fails when the degrees differ.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(self.then(other))
    }

    /// Unchecked composition: maps `i` to `other(self(i))`.
    ///
    /// Panics if the degrees differ.
    #[inline]
    pub fn then(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch in composition");
        Permutation { images: self.images.iter().map(|&i| other.images[i as usize]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u16; self.degree()];
        for (i, &img) in self.images.iter().enumerate() {
            inv[img as usize] = i as u16;
        }
        Permutation { images: inv.into() }
    }

    /// `h⁻¹ · self · h`.
    pub fn conjugate_by(&self, h: &Permutation) -> Permutation {
        assert_eq!(self.degree(), h.degree(), "degree mismatch in conjugation");
        // (h⁻¹ x h)(h(i)) = h(x(i))
        let mut out = vec![0u16; self.degree()];
        for (i, &img) in self.images.iter().enumerate() {
            out[h.images[i] as usize] = h.images[img as usize];
        }
        Permutation { images: out.into() }
    }

    /// Commutator `[self, other] = self⁻¹ other⁻¹ self other`.
    pub fn commutator(&self, other: &Permutation) -> Permutation {
        self.inverse().then(&other.inverse()).then(self).then(other)
    }

    pub fn pow(&self, mut exp: u64) -> Permutation {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.then(&base);
            }
            base = base.then(&base);
            exp >>= 1;
        }
        acc
    }

    /// Disjoint cycles of length ≥ 2, each starting at its minimal point,
    /// sorted by first point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut cycle = vec![start];
            let mut pt = self.apply(start);
            while pt != start {
                seen[pt] = true;
                cycle.push(pt);
                pt = self.apply(pt);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Lengths of all cycles, fixed points included.
    pub fn cycle_lengths(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut lens = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut pt = start;
            while !seen[pt] {
                seen[pt] = true;
                len += 1;
                pt = self.apply(pt);
            }
            lens.push(len);
        }
        lens
    }

    /// Order of the permutation: the lcm of its cycle lengths.
    pub fn order(&self) -> u128 {
        self.cycle_lengths().into_iter().fold(1u128, |acc, len| lcm(acc, len as u128))
    }

    /// Parses 1-based cycle notation such as `"(1,2,3)(4,5)"`.
    ///
    /// Grammar: `"()"` or one or more `"(" int ("," int)+ ")"`; whitespace
    /// between tokens is ignored.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Permutation, PermError> {
        if degree > MAX_DEGREE {
            return Err(PermError::DegreeTooLarge(degree));
        }
        let tokens = tokenize(text)?;
        if tokens.is_empty() {
            return Err(PermError::Malformed("empty input".into()));
        }
        if tokens == [Token::Open, Token::Close] {
            return Ok(Permutation::identity(degree));
        }

        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut iter = tokens.into_iter().peekable();
        while let Some(tok) = iter.next() {
            if tok != Token::Open {
                return Err(PermError::Malformed("expected '('".into()));
            }
            let mut cycle = Vec::new();
            loop {
                match iter.next() {
                    Some(Token::Int(v)) => {
                        if v == 0 || v > degree {
                            return Err(PermError::PointOutOfRange { point: v, degree });
                        }
                        cycle.push(v - 1);
                    }
                    _ => return Err(PermError::Malformed("expected a point".into())),
                }
                match iter.next() {
                    Some(Token::Comma) => continue,
                    Some(Token::Close) => break,
                    _ => return Err(PermError::Malformed("expected ',' or ')'".into())),
                }
            }
            if cycle.len() < 2 {
                return Err(PermError::Malformed("a cycle needs at least two points".into()));
            }
            cycles.push(cycle);
        }
        Permutation::from_cycles(degree, &cycles)
    }

    /// Canonical 1-based cycle notation; `"()"` for the identity.
    pub fn format_cycles(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        let mut out = String::new();
        for cycle in cycles {
            out.push('(');
            for (i, pt) in cycle.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push_str(&(pt + 1).to_string());
            }
            out.push(')');
        }
        out
    }
}

impl Mul for &Permutation {
    type Output = Permutation;

    fn mul(self, rhs: &Permutation) -> Permutation {
        self.then(rhs)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_cycles())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}; {}]", self.degree(), self.format_cycles())
    }
}

#[derive(Debug, PartialEq, Eq)]
enum Token {
    Open,
    Close,
    Comma,
    Int(usize),
}

fn tokenize(text: &str) -> Result<Vec<Token>, PermError> {
    let mut tokens = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            '(' => {
                tokens.push(Token::Open);
                chars.next();
            }
            ')' => {
                tokens.push(Token::Close);
                chars.next();
            }
            ',' => {
                tokens.push(Token::Comma);
                chars.next();
            }
            c if c.is_whitespace() => {
                chars.next();
            }
            c if c.is_ascii_digit() => {
                let mut value: usize = 0;
                while let Some(&d) = chars.peek() {
                    let Some(digit) = d.to_digit(10) else { break };
                    value = value
                        .checked_mul(10)
                        .and_then(|v| v.checked_add(digit as usize))
                        .ok_or_else(|| PermError::Malformed("integer too large".into()))?;
                    chars.next();
                }
                tokens.push(Token::Int(value));
            }
            other => return Err(PermError::Malformed(format!("unexpected character {other:?}"))),
        }
    }
    Ok(tokens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(images: &[usize]) -> Permutation {
        Permutation::from_images(images).unwrap()
    }

    fn cyc(text: &str, degree: usize) -> Permutation {
        Permutation::parse_cycles(text, degree).unwrap()
    }

    #[test]
    fn compose_examples() {
        let t = cyc("(1,2)", 3);
        assert!(t.compose(&t).unwrap().is_identity());
        let x = cyc("(1,3)(2,4)", 5);
        assert_eq!(x.compose(&Permutation::identity(5)).unwrap(), x);
        let c = cyc("(1,2,3)", 3);
        assert_eq!(c.compose(&c).unwrap(), cyc("(1,3,2)", 3));
    }

    #[test]
    fn compose_is_left_to_right() {
        // (1,2) then (2,3): 1 -> 2 -> 3
        let a = cyc("(1,2)", 3);
        let b = cyc("(2,3)", 3);
        assert_eq!(a.then(&b).apply(0), 2);
        assert_eq!(&a * &b, cyc("(1,3,2)", 3));
    }

    #[test]
    fn compose_degree_mismatch() {
        let err = Permutation::identity(3).compose(&Permutation::identity(4));
        assert_eq!(err, Err(PermError::DegreeMismatch(3, 4)));
    }

    #[test]
    fn inverse_examples() {
        assert!(Permutation::identity(4).inverse().is_identity());
        assert_eq!(cyc("(1,2,3)", 3).inverse(), cyc("(1,3,2)", 3));
    }

    #[test]
    fn order_examples() {
        assert_eq!(Permutation::identity(6).order(), 1);
        assert_eq!(cyc("(1,2,3)(4,5)", 5).order(), 6);
        let fifteen: Vec<usize> = (0..15).map(|i| (i + 1) % 15).collect();
        assert_eq!(p(&fifteen).order(), 15);
    }

    #[test]
    fn cycle_examples() {
        assert!(Permutation::identity(3).cycles().is_empty());
        assert_eq!(p(&[1, 0, 2]).cycles(), vec![vec![0, 1]]);
        assert_eq!(p(&[1, 2, 0, 4, 3]).cycles(), vec![vec![0, 1, 2], vec![3, 4]]);
    }

    #[test]
    fn parse_examples() {
        assert!(cyc("()", 5).is_identity());
        assert_eq!(cyc("(1,2,3)(4,5)", 5), p(&[1, 2, 0, 4, 3]));
        assert_eq!(cyc(" ( 1 , 2 ,3 ) ( 4,5 ) ", 5), p(&[1, 2, 0, 4, 3]));
        assert_eq!(Permutation::parse_cycles("(1,1,2)", 3), Err(PermError::RepeatedPoint(1)));
        assert_eq!(Permutation::parse_cycles("(1,2)(2,3)", 3), Err(PermError::RepeatedPoint(2)));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(Permutation::parse_cycles("(1,6)", 5), Err(PermError::PointOutOfRange { point: 6, .. })));
        assert!(matches!(Permutation::parse_cycles("(0,1)", 5), Err(PermError::PointOutOfRange { point: 0, .. })));
        for bad in ["", "(1)", "(1,2", "1,2)", "(1,,2)", "(1 2)", "(a,b)", "()(1,2)", "(1,2)x"] {
            assert!(
                matches!(Permutation::parse_cycles(bad, 5), Err(PermError::Malformed(_))),
                "{bad:?} should be malformed"
            );
        }
    }

    #[test]
    fn format_examples() {
        assert_eq!(Permutation::identity(4).format_cycles(), "()");
        assert_eq!(p(&[1, 2, 0, 4, 3]).format_cycles(), "(1,2,3)(4,5)");
    }

    /// Every permutation of degree `n` in lexicographic order of image tables.
    fn all_perms(n: usize) -> Vec<Permutation> {
        fn rec(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Permutation>) {
            let n = used.len();
            if prefix.len() == n {
                out.push(Permutation::from_images(prefix).unwrap());
                return;
            }
            for v in 0..n {
                if !used[v] {
                    used[v] = true;
                    prefix.push(v);
                    rec(prefix, used, out);
                    prefix.pop();
                    used[v] = false;
                }
            }
        }
        let mut out = Vec::new();
        rec(&mut Vec::new(), &mut vec![false; n], &mut out);
        out
    }

    #[test]
    fn format_parse_exhaustive_small_degrees() {
        for n in 1..=6 {
            for perm in all_perms(n) {
                assert_eq!(Permutation::parse_cycles(&perm.format_cycles(), n).unwrap(), perm);
            }
        }
    }

    fn brute_force_order(perm: &Permutation) -> u128 {
        let mut acc = perm.clone();
        let mut m = 1;
        while !acc.is_identity() {
            acc = acc.then(perm);
            m += 1;
        }
        m
    }

    fn arb_perm(max_degree: usize) -> impl Strategy<Value = Permutation> {
        (1..=max_degree)
            .prop_flat_map(|n| Just((0..n).collect::<Vec<usize>>()).prop_shuffle())
            .prop_map(|v| Permutation::from_images(&v).unwrap())
    }

    fn arb_triple(max_degree: usize) -> impl Strategy<Value = (Permutation, Permutation, Permutation)> {
        (1..=max_degree).prop_flat_map(|n| {
            let one = Just((0..n).collect::<Vec<usize>>()).prop_shuffle();
            (one.clone(), one.clone(), one).prop_map(|(a, b, c)| {
                (
                    Permutation::from_images(&a).unwrap(),
                    Permutation::from_images(&b).unwrap(),
                    Permutation::from_images(&c).unwrap(),
                )
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn order_is_lcm_of_cycle_lengths(perm in arb_perm(12)) {
            prop_assert_eq!(perm.order(), brute_force_order(&perm));
            let from_cycles = perm.cycles().iter().fold(1u128, |acc, c| lcm(acc, c.len() as u128));
            prop_assert_eq!(perm.order(), from_cycles);
        }

        #[test]
        fn format_parse_round_trip(perm in arb_perm(64)) {
            let text = perm.format_cycles();
            prop_assert_eq!(Permutation::parse_cycles(&text, perm.degree()).unwrap(), perm);
        }

        #[test]
        fn group_axioms((a, b, c) in arb_triple(10)) {
            prop_assert_eq!(a.then(&b).then(&c), a.then(&b.then(&c)));
            prop_assert!(a.then(&a.inverse()).is_identity());
            prop_assert!(a.inverse().then(&a).is_identity());
            prop_assert_eq!(a.conjugate_by(&b), b.inverse().then(&a).then(&b));
            prop_assert_eq!(a.pow(5), a.then(&a).then(&a).then(&a).then(&a));
        }
    }
}
