//! Named permutation groups.
//!
//! Groups can be built directly or from an expression such as
//! `dihedral(30)` or `direct_product(frobenius(21),cyclic(2))`.

use crate::error::GroupError;
use crate::group::PermutationGroup;
use crate::perm::{Permutation, MAX_DEGREE};
use crate::primes::prime_factors_nonzero;

/// Names accepted by [`parse`] and [`by_name`].
pub const NAMES: &[&str] =
    &["cyclic", "dihedral", "symmetric", "alternating", "frobenius", "direct_product", "psl27", "sl23", "sl23_example"];

/// Groups swept by `verify --catalog-all`, smallest first within each family.
pub const SWEEP: &[&str] = &[
    "cyclic(1)",
    "cyclic(6)",
    "cyclic(30)",
    "cyclic(105)",
    "cyclic(210)",
    "dihedral(6)",
    "dihedral(30)",
    "dihedral(42)",
    "dihedral(60)",
    "dihedral(210)",
    "dihedral(330)",
    "symmetric(3)",
    "symmetric(4)",
    "symmetric(5)",
    "symmetric(6)",
    "alternating(4)",
    "alternating(5)",
    "alternating(6)",
    "alternating(7)",
    "frobenius(20)",
    "frobenius(21)",
    "frobenius(42)",
    "frobenius(55)",
    "psl27",
    "sl23",
    "sl23_example",
    "direct_product(symmetric(3),cyclic(5))",
    "direct_product(frobenius(21),cyclic(2))",
    "direct_product(alternating(4),cyclic(5))",
    "direct_product(frobenius(20),cyclic(3))",
    "direct_product(dihedral(10),dihedral(6))",
    "direct_product(frobenius(21),cyclic(5))",
    "direct_product(sl23,cyclic(5))",
    "direct_product(symmetric(4),cyclic(5))",
    "direct_product(dihedral(30),cyclic(7))",
    "direct_product(frobenius(42),cyclic(5))",
    "direct_product(alternating(5),cyclic(7))",
    "direct_product(frobenius(20),frobenius(21))",
    "direct_product(frobenius(21),symmetric(4))",
    "direct_product(symmetric(5),cyclic(7))",
    "direct_product(psl27,cyclic(5))",
    "direct_product(sl23_example,cyclic(2))",
    "direct_product(alternating(5),alternating(5))",
];

fn invalid(msg: impl Into<String>) -> GroupError {
    GroupError::InvalidParameters(msg.into())
}

fn check_degree(n: usize) -> Result<(), GroupError> {
    if n == 0 || n > MAX_DEGREE {
        return Err(invalid(format!("degree {n} outside 1..={MAX_DEGREE}")));
    }
    Ok(())
}

fn perm(images: Vec<usize>) -> Permutation {
    Permutation::from_images(&images).expect("constructor builds a bijection")
}

fn n_cycle(n: usize) -> Permutation {
    perm((0..n).map(|i| (i + 1) % n).collect())
}

/// Cyclic group of order `n`, generated by an `n`-cycle.
pub fn cyclic(n: usize) -> Result<PermutationGroup, GroupError> {
    check_degree(n)?;
    PermutationGroup::new(n, vec![n_cycle(n)])
}

/// Dihedral group of the given `order`, acting on `order / 2` points.
/// The first generator is the rotation `a`, the second the reflection
/// `b: i ↦ -i`.
pub fn dihedral(order: usize) -> Result<PermutationGroup, GroupError> {
    if !order.is_multiple_of(2) || order < 6 {
        return Err(invalid(format!("dihedral order must be even and at least 6, got {order}")));
    }
    let n = order / 2;
    check_degree(n)?;
    let reflection = perm((0..n).map(|i| (n - i) % n).collect());
    PermutationGroup::new(n, vec![n_cycle(n), reflection])
}

pub fn symmetric(n: usize) -> Result<PermutationGroup, GroupError> {
    check_degree(n)?;
    let gens = match n {
        1 => vec![Permutation::identity(1)],
        2 => vec![n_cycle(2)],
        _ => vec![Permutation::from_cycles(n, &[vec![0, 1]]).expect("valid transposition"), n_cycle(n)],
    };
    PermutationGroup::new(n, gens)
}

/// Alternating group, generated by the 3-cycles `(1,2,i)`.
pub fn alternating(n: usize) -> Result<PermutationGroup, GroupError> {
    check_degree(n)?;
    if n < 3 {
        return Ok(PermutationGroup::trivial(n));
    }
    let gens = (2..n).map(|i| Permutation::from_cycles(n, &[vec![0, 1, i]]).expect("valid 3-cycle")).collect();
    PermutationGroup::new(n, gens)
}

/// `C_p ⋊ C_d` acting affinely on `F_p`, where `order = p·d`, `p` is the
/// largest prime factor and `d` divides `p - 1`.
pub fn frobenius(order: usize) -> Result<PermutationGroup, GroupError> {
    let bad = || invalid(format!("frobenius order must be p·d with p prime and d | p-1, got {order}"));
    if order < 2 {
        return Err(bad());
    }
    let p = *prime_factors_nonzero(order as u128).as_slice().last().ok_or_else(bad)? as usize;
    let d = order / p;
    if !(p - 1).is_multiple_of(d) {
        return Err(bad());
    }
    check_degree(p)?;
    let w = primitive_root(p).pow_mod((p as u64 - 1) / d as u64, p as u64) as usize;
    let scale = perm((0..p).map(|z| z * w % p).collect());
    PermutationGroup::new(p, vec![n_cycle(p), scale])
}

struct Residue(u64);

impl Residue {
    fn pow_mod(&self, mut e: u64, m: u64) -> u64 {
        let (mut base, mut acc) = (self.0 % m, 1 % m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % m;
            }
            base = base * base % m;
            e >>= 1;
        }
        acc
    }
}

fn primitive_root(p: usize) -> Residue {
    if p == 2 {
        return Residue(1);
    }
    let phi = p as u64 - 1;
    let factors = prime_factors_nonzero(phi as u128);
    (2..p as u64)
        .map(Residue)
        .find(|g| factors.iter().all(|q| g.pow_mod(phi / q, p as u64) != 1))
        .expect("every prime has a primitive root")
}

/// Direct product acting on disjoint point sets: `g` on the first
/// `g.degree()` points, `h` on the rest.
pub fn direct_product(g: &PermutationGroup, h: &PermutationGroup) -> Result<PermutationGroup, GroupError> {
    let (m, n) = (g.degree(), h.degree());
    check_degree(m + n)?;
    let mut gens = Vec::new();
    for x in g.generators() {
        gens.push(perm(x.images().chain(m..m + n).collect()));
    }
    for y in h.generators() {
        gens.push(perm((0..m).chain(y.images().map(|i| i + m)).collect()));
    }
    PermutationGroup::new(m + n, gens)
}

/// PSL(2,7) ≅ GL(3,2) acting on the seven points of the Fano plane.
pub fn psl27() -> PermutationGroup {
    let gens = vec![n_cycle(7), Permutation::from_cycles(7, &[vec![0, 1], vec![2, 5]]).expect("valid involution")];
    PermutationGroup::new(7, gens).expect("uniform degree")
}

type Mat = [[u8; 2]; 2];

/// The standard generators of SL(2,3).
const SL23_GENS: [Mat; 2] = [[[1, 1], [0, 1]], [[1, 0], [1, 1]]];

fn mat_apply(m: &Mat, v: (u8, u8)) -> (u8, u8) {
    ((m[0][0] * v.0 + m[0][1] * v.1) % 3, (m[1][0] * v.0 + m[1][1] * v.1) % 3)
}

/// Point `3x + y` of `F_3²`.
fn vec_index(v: (u8, u8)) -> usize {
    3 * v.0 as usize + v.1 as usize
}

fn vec_of(i: usize) -> (u8, u8) {
    ((i / 3) as u8, (i % 3) as u8)
}

/// SL(2,3) acting on the eight nonzero vectors of `F_3²`.
pub fn sl23() -> PermutationGroup {
    // nonzero vector 3x + y sits at point 3x + y - 1
    let gens =
        SL23_GENS.iter().map(|m| perm((1..9).map(|i| vec_index(mat_apply(m, vec_of(i))) - 1).collect())).collect();
    PermutationGroup::new(8, gens).expect("uniform degree")
}

/// `(C_3² × C_7) ⋊ SL(2,3)` of order 1512 on 16 points.
///
/// Points 0–8 are `F_3²` with the affine action of `C_3² ⋊ SL(2,3)`.
/// Points 9–15 are `F_7` with the affine action of `C_7 ⋊ C_3`, where
/// SL(2,3) acts through its abelianization: `[[1,1],[0,1]]` acts as
/// `z ↦ 2z` and `[[1,0],[1,1]]`, which is conjugate to its inverse, as
/// `z ↦ 4z`.
pub fn sl23_example() -> PermutationGroup {
    const SCALE: [usize; 2] = [2, 4];
    let mut gens = Vec::new();
    // translation of F_3² by (1, 0)
    gens.push(perm(
        (0..9)
            .map(|i| {
                let (x, y) = vec_of(i);
                vec_index(((x + 1) % 3, y))
            })
            .chain(9..16)
            .collect(),
    ));
    // translation of F_7 by 1
    gens.push(perm((0..9).chain((0..7).map(|z| 9 + (z + 1) % 7)).collect()));
    for (m, scale) in SL23_GENS.iter().zip(SCALE) {
        gens.push(perm(
            (0..9).map(|i| vec_index(mat_apply(m, vec_of(i)))).chain((0..7).map(|z| 9 + z * scale % 7)).collect(),
        ));
    }
    PermutationGroup::new(16, gens).expect("uniform degree")
}

/// Builds a catalog group from a name and optional integer parameter, as the
/// CLI's `--catalog NAME --n INT` does.
pub fn by_name(name: &str, n: Option<usize>) -> Result<PermutationGroup, GroupError> {
    let need = || n.ok_or_else(|| invalid(format!("{name} needs a parameter")));
    let none = || match n {
        Some(_) => Err(invalid(format!("{name} takes no parameter"))),
        None => Ok(()),
    };
    match name {
        "cyclic" => cyclic(need()?),
        "dihedral" => dihedral(need()?),
        "symmetric" => symmetric(need()?),
        "alternating" => alternating(need()?),
        "frobenius" => frobenius(need()?),
        "psl27" => none().map(|_| psl27()),
        "sl23" => none().map(|_| sl23()),
        "sl23_example" => none().map(|_| sl23_example()),
        "direct_product" => Err(invalid("direct_product takes two groups; use an expression")),
        _ if name.contains('(') => parse(name),
        _ => Err(GroupError::UnknownCatalog(name.to_string())),
    }
}

/// Parses a catalog expression: `name`, `name(int)` or
/// `direct_product(expr, expr)`.
pub fn parse(expr: &str) -> Result<PermutationGroup, GroupError> {
    let compact: String = expr.chars().filter(|c| !c.is_whitespace()).collect();
    let mut parser = ExprParser { src: &compact, pos: 0 };
    let group = parser.group()?;
    if parser.pos != compact.len() {
        return Err(invalid(format!("trailing input in {expr:?}")));
    }
    Ok(group)
}

struct ExprParser<'a> {
    src: &'a str,
    pos: usize,
}

impl ExprParser<'_> {
    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn eat(&mut self, c: char) -> bool {
        if self.rest().starts_with(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), GroupError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(invalid(format!("expected {c:?} at offset {} of {:?}", self.pos, self.src)))
        }
    }

    fn ident(&mut self) -> &str {
        let start = self.pos;
        let len = self.rest().find(|c: char| !(c.is_ascii_alphanumeric() || c == '_')).unwrap_or(self.rest().len());
        self.pos += len;
        &self.src[start..start + len]
    }

    fn int(&mut self) -> Result<usize, GroupError> {
        let len = self.rest().find(|c: char| !c.is_ascii_digit()).unwrap_or(self.rest().len());
        let digits = &self.src[self.pos..self.pos + len];
        self.pos += len;
        digits.parse().map_err(|_| invalid(format!("expected an integer in {:?}", self.src)))
    }

    fn group(&mut self) -> Result<PermutationGroup, GroupError> {
        let name = self.ident().to_string();
        if name.is_empty() {
            return Err(invalid(format!("expected a group name in {:?}", self.src)));
        }
        if name == "direct_product" {
            self.expect('(')?;
            let g = self.group()?;
            self.expect(',')?;
            let h = self.group()?;
            self.expect(')')?;
            return direct_product(&g, &h);
        }
        if !NAMES.contains(&name.as_str()) {
            return Err(GroupError::UnknownCatalog(name));
        }
        let n = if self.eat('(') {
            let n = self.int()?;
            self.expect(')')?;
            Some(n)
        } else {
            None
        };
        by_name(&name, n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    /// Closure of the generators under multiplication, without a chain.
    fn closure_order(g: &PermutationGroup) -> usize {
        let mut seen: HashSet<Permutation> = HashSet::new();
        let id = Permutation::identity(g.degree());
        seen.insert(id.clone());
        let mut queue = vec![id];
        while let Some(x) = queue.pop() {
            for s in g.generators() {
                let y = x.then(s);
                if seen.insert(y.clone()) {
                    queue.push(y);
                }
            }
        }
        seen.len()
    }

    #[test]
    fn chain_agrees_with_closure_on_sweep() {
        for expr in SWEEP {
            let g = parse(expr).unwrap();
            let order = g.order();
            if order <= 5000 {
                assert_eq!(order as usize, closure_order(&g), "{expr}");
            }
        }
    }

    #[test]
    fn expected_orders() {
        let cases = [
            ("cyclic(30)", 30),
            ("dihedral(30)", 30),
            ("symmetric(5)", 120),
            ("alternating(5)", 60),
            ("frobenius(21)", 21),
            ("frobenius(20)", 20),
            ("psl27", 168),
            ("sl23", 24),
            ("sl23_example", 1512),
            ("direct_product(cyclic(3),cyclic(5))", 15),
        ];
        for (expr, order) in cases {
            assert_eq!(parse(expr).unwrap().order(), order, "{expr}");
        }
    }

    #[test]
    fn dihedral_thirty_has_fifteen_cycle() {
        let g = dihedral(30).unwrap();
        assert_eq!(g.generators()[0].order(), 15);
        assert_eq!(g.generators()[1].order(), 2);
    }

    #[test]
    fn sl23_example_structure() {
        let g = sl23_example();
        assert_eq!(g.order(), 1512);
        assert_eq!(g.primes().as_slice(), &[2, 3, 7]);
        // the F_7 block: translations and scalings form C_7 ⋊ C_3
        let t = g.enumerate_elements(2000).unwrap();
        let orders: HashSet<u64> = t.order_histogram().into_keys().collect();
        for o in [6, 7, 14, 21] {
            assert!(orders.contains(&o), "missing order {o}");
        }
    }

    #[test]
    fn direct_product_of_coprime_cyclics_is_cyclic() {
        let g = parse("direct_product(cyclic(3),cyclic(5))").unwrap();
        let t = g.enumerate_elements(100).unwrap();
        assert_eq!(t.order_histogram().get(&15), Some(&8));
    }

    #[test]
    fn parse_errors() {
        assert_eq!(parse("nosuch(3)").unwrap_err(), GroupError::UnknownCatalog("nosuch".into()));
        assert!(matches!(parse("dihedral(31)"), Err(GroupError::InvalidParameters(_))));
        assert!(matches!(parse("frobenius(15)"), Err(GroupError::InvalidParameters(_))));
        assert!(matches!(parse("cyclic"), Err(GroupError::InvalidParameters(_))));
        assert!(matches!(parse("psl27(3)"), Err(GroupError::InvalidParameters(_))));
        assert!(matches!(parse("cyclic(3"), Err(GroupError::InvalidParameters(_))));
        assert!(matches!(parse("cyclic(3))"), Err(GroupError::InvalidParameters(_))));
        assert!(matches!(parse("cyclic(2000)"), Err(GroupError::InvalidParameters(_))));
        assert!(by_name("dihedral", None).is_err());
        assert_eq!(by_name("dihedral", Some(30)).unwrap().order(), 30);
    }
}
