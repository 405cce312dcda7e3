//! Finite-support permutations of the positive integers, partitions, and the
//! inversion combinatorics behind weak and Bruhat order.
//!
//! A [`Permutation`] is stored in one-line notation over its minimal window
//! `1..=n`; every index outside the window is a fixed point. All indices are
//! 1-based.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use crate::error::{Error, Result};

/// A pair of positive integers. Used both for grid positions `(row, column)`
/// in matrix coordinates and for index pairs in inversion sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pos {
    pub i: usize,
    pub j: usize,
}

impl Pos {
    pub const fn new(i: usize, j: usize) -> Self {
        Pos { i, j }
    }
}

impl From<(usize, usize)> for Pos {
    fn from((i, j): (usize, usize)) -> Self {
        Pos { i, j }
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

impl FromStr for Pos {
    type Err = Error;

    /// Parses `"i,j"`, optionally wrapped in parentheses or brackets.
    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::Parse {
            what: "position",
            input: s.to_string(),
        };
        let inner = s
            .trim()
            .trim_start_matches(['(', '['])
            .trim_end_matches([')', ']']);
        let (a, b) = inner.split_once(',').ok_or_else(err)?;
        let i = a.trim().parse().map_err(|_| err())?;
        let j = b.trim().parse().map_err(|_| err())?;
        if i == 0 || j == 0 {
            return Err(Error::InvalidPosition(Pos::new(i, j)));
        }
        Ok(Pos::new(i, j))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    // Canonical: empty, or the last entry is not a fixed point.
    window: Vec<usize>,
}

impl Permutation {
    pub fn identity() -> Self {
        Permutation::default()
    }

    /// Builds a permutation from one-line notation `w(1), ..., w(n)`, which
    /// must be a bijection of `1..=n`.
    pub fn from_one_line(window: Vec<usize>) -> Result<Self> {
        let n = window.len();
        let mut seen = vec![false; n + 1];
        for &v in &window {
            if v == 0 || v > n || seen[v] {
                return Err(Error::NotAPermutation { window, n });
            }
            seen[v] = true;
        }
        Ok(Self::from_window_unchecked(window))
    }

    fn from_window_unchecked(mut window: Vec<usize>) -> Self {
        while window.last().is_some_and(|&v| v == window.len()) {
            window.pop();
        }
        Permutation { window }
    }

    /// Builds the permutation with Lehmer code `code`.
    pub fn from_code(code: &[usize]) -> Self {
        let n = code
            .iter()
            .enumerate()
            .map(|(idx, &c)| idx + 1 + c)
            .max()
            .unwrap_or(0);
        let mut remaining: Vec<usize> = (1..=n).collect();
        let mut window = Vec::with_capacity(n);
        for idx in 0..n {
            let c = code.get(idx).copied().unwrap_or(0);
            window.push(remaining.remove(c));
        }
        Self::from_window_unchecked(window)
    }

    /// The minimal one-line window; empty for the identity.
    pub fn window(&self) -> &[usize] {
        &self.window
    }

    /// Size of the minimal window, i.e. the smallest `n` with `w` in `S_n`.
    pub fn n(&self) -> usize {
        self.window.len()
    }

    pub fn is_identity(&self) -> bool {
        self.window.is_empty()
    }

    /// One-line notation padded with fixed points to length `len`.
    pub fn one_line(&self, len: usize) -> Vec<usize> {
        (1..=len.max(self.n())).map(|k| self.apply(k)).collect()
    }

    pub fn apply(&self, k: usize) -> usize {
        match self.window.get(k.wrapping_sub(1)) {
            Some(&v) => v,
            None => k,
        }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.n()];
        for (idx, &v) in self.window.iter().enumerate() {
            inv[v - 1] = idx + 1;
        }
        Permutation { window: inv }
    }

    /// Position of the value `k`, i.e. `w^{-1}(k)`.
    pub fn position_of(&self, k: usize) -> usize {
        match self.window.iter().position(|&v| v == k) {
            Some(idx) => idx + 1,
            None => k,
        }
    }

    /// `(i, j)` is in `Inv(w)`: `i < j` and `w(i) > w(j)`.
    pub fn is_inversion(&self, i: usize, j: usize) -> bool {
        i < j && self.apply(i) > self.apply(j)
    }

    /// `(i, j)` is in `coInv(w)`: `i < j` and `w(i) < w(j)`.
    pub fn is_coinversion(&self, i: usize, j: usize) -> bool {
        i < j && self.apply(i) < self.apply(j)
    }

    pub fn length(&self) -> usize {
        let n = self.n();
        (1..=n)
            .tuple_combinations()
            .filter(|&(i, j)| self.is_inversion(i, j))
            .count()
    }

    /// `Inv(w)` in lexicographic order.
    pub fn inversions(&self) -> Vec<Pos> {
        (1..=self.n())
            .tuple_combinations()
            .filter(|&(i, j)| self.is_inversion(i, j))
            .map(Pos::from)
            .collect()
    }

    /// `coInv(w)` restricted to pairs `i < j <= bound`.
    pub fn coinversions(&self, bound: usize) -> Result<Vec<Pos>> {
        if bound < 1 {
            return Err(Error::InvalidBound);
        }
        Ok((1..=bound)
            .tuple_combinations()
            .filter(|&(i, j)| self.is_coinversion(i, j))
            .map(Pos::from)
            .collect())
    }

    /// The Rothe diagram `D(w) = {(i, w(j)) : (i, j) in Inv(w)}`, sorted.
    pub fn diagram(&self) -> Vec<Pos> {
        let mut from_inversions: Vec<Pos> = self
            .inversions()
            .into_iter()
            .map(|p| Pos::new(p.i, self.apply(p.j)))
            .collect();
        from_inversions.sort();
        debug_assert_eq!(from_inversions, self.diagram_by_rank_condition());
        from_inversions
    }

    /// `{(i, j) : i < w^{-1}(j) and j < w(i)}`.
    fn diagram_by_rank_condition(&self) -> Vec<Pos> {
        let n = self.n();
        (1..=n)
            .cartesian_product(1..=n)
            .filter(|&(i, j)| i < self.position_of(j) && j < self.apply(i))
            .map(Pos::from)
            .collect()
    }

    /// Lehmer code `c_i = #{j > i : w(j) < w(i)}`, with trailing zeros
    /// trimmed.
    pub fn code(&self) -> Vec<usize> {
        let n = self.n();
        let mut code: Vec<usize> = (1..=n)
            .map(|i| ((i + 1)..=n).filter(|&j| self.apply(j) < self.apply(i)).count())
            .collect();
        while code.last() == Some(&0) {
            code.pop();
        }
        code
    }

    /// 132-avoidance; cross-checked against "the code is a partition".
    pub fn is_dominant(&self) -> bool {
        let avoids = !self.has_132_pattern();
        debug_assert_eq!(
            avoids,
            self.code().windows(2).all(|c| c[0] >= c[1]),
            "dominance characterizations disagree for {self}"
        );
        avoids
    }

    fn has_132_pattern(&self) -> bool {
        let w = &self.window;
        let n = w.len();
        // For each middle index b, look for a < b with w(a) < w(b) and
        // c > b with w(a) < w(c) < w(b).
        (0..n).any(|b| {
            let min_left = w[..b].iter().copied().min();
            match min_left {
                Some(lo) if lo < w[b] => w[b + 1..].iter().any(|&v| lo < v && v < w[b]),
                _ => false,
            }
        })
    }

    /// Left weak order: `Inv(self)` is contained in `Inv(upper)`.
    pub fn leq_weak(&self, upper: &Permutation) -> bool {
        let by_inversions = self
            .inversions()
            .iter()
            .all(|p| upper.is_inversion(p.i, p.j));
        debug_assert_eq!(
            by_inversions,
            self.leq_weak_by_inverse_criterion(upper),
            "weak order criteria disagree for {self} <= {upper}"
        );
        by_inversions
    }

    /// `Inv(w^{-1})` contained in `coInv(u w^{-1})`.
    pub(crate) fn leq_weak_by_inverse_criterion(&self, upper: &Permutation) -> bool {
        let n = self.n().max(upper.n());
        let w_inv = self.inverse();
        let u_w_inv = compose(upper, &w_inv);
        (1..=n)
            .tuple_combinations()
            .filter(|&(i, j)| w_inv.is_inversion(i, j))
            .all(|(i, j)| u_w_inv.is_coinversion(i, j))
    }

    /// Transpositions `t` with `a < b <= bound` and `l(t*w) = l(w) + 1`.
    pub fn bruhat_covers_up(&self, bound: usize) -> Vec<Transposition> {
        let len = self.length();
        (1..=bound)
            .tuple_combinations()
            .map(|(a, b)| Transposition { a, b })
            .filter(|t| t.left_mul(self).length() == len + 1)
            .collect()
    }

    /// The covers `w -> t*w` that stay weakly below the dominant `pi`.
    pub fn covers_below(&self, pi: &Permutation) -> Result<Vec<Transposition>> {
        check_dominant_above(self, pi)?;
        let bound = self.n().max(pi.n());
        let covers: Vec<Transposition> = self
            .bruhat_covers_up(bound)
            .into_iter()
            .filter(|t| pi.is_inversion(self.position_of(t.a), self.position_of(t.b)))
            .collect();
        debug_assert!(
            self.bruhat_covers_up(bound)
                .iter()
                .all(|t| covers.contains(t) == t.left_mul(self).leq_weak(pi)),
            "cover criterion fails for {self} under {pi}"
        );
        Ok(covers)
    }

    /// Simple transpositions `s_k` with `s_k w` covered by `w` in left weak
    /// order, returned as the indices `k`.
    pub fn weak_descents(&self) -> Vec<usize> {
        (1..self.n())
            .filter(|&k| self.position_of(k) > self.position_of(k + 1))
            .collect()
    }

    /// All of `S_n` in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        (1..=n)
            .permutations(n)
            .map(Self::from_window_unchecked)
            .collect()
    }

    /// Dominant permutations of `S_n`, in lexicographic order.
    pub fn dominant_in(n: usize) -> Vec<Permutation> {
        Self::all(n).into_iter().filter(|p| p.is_dominant()).collect()
    }

    /// The lower interval `[e, pi]` in left weak order.
    pub fn weak_interval_below(&self) -> Vec<Permutation> {
        Self::all(self.n())
            .into_iter()
            .filter(|w| w.leq_weak(self))
            .collect()
    }
}

pub(crate) fn check_dominant_above(w: &Permutation, pi: &Permutation) -> Result<()> {
    if !pi.is_dominant() {
        return Err(Error::NotDominant(pi.clone()));
    }
    if !w.leq_weak(pi) {
        return Err(Error::NotBelowInWeakOrder {
            w: w.clone(),
            pi: pi.clone(),
        });
    }
    Ok(())
}

/// `u * w`: apply `w` first, then `u`.
pub fn compose(u: &Permutation, w: &Permutation) -> Permutation {
    let n = u.n().max(w.n());
    Permutation::from_window_unchecked((1..=n).map(|k| u.apply(w.apply(k))).collect())
}

impl fmt::Display for Permutation {
    /// Comma-separated one-line notation; the identity prints as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.window.is_empty() {
            return f.write_str("1");
        }
        write!(f, "{}", self.window.iter().join(","))
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let window = parse_list(s, "permutation")?;
        Permutation::from_one_line(window)
    }
}

fn parse_list(s: &str, what: &'static str) -> Result<Vec<usize>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|part| {
            part.trim().parse::<usize>().map_err(|_| Error::Parse {
                what,
                input: s.to_string(),
            })
        })
        .collect()
}

/// The transposition `t_ab` exchanging `a < b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transposition {
    pub a: usize,
    pub b: usize,
}

impl Transposition {
    pub fn new(a: usize, b: usize) -> Result<Self> {
        if a == 0 || a >= b {
            return Err(Error::InvalidTransposition { a, b });
        }
        Ok(Transposition { a, b })
    }

    /// `s_k = t_{k,k+1}`.
    pub fn simple(k: usize) -> Self {
        assert!(k >= 1, "simple transpositions are indexed from 1");
        Transposition { a: k, b: k + 1 }
    }

    pub fn to_permutation(self) -> Permutation {
        let mut window: Vec<usize> = (1..=self.b).collect();
        window.swap(self.a - 1, self.b - 1);
        Permutation::from_window_unchecked(window)
    }

    /// `t * w`, exchanging the values `a` and `b` in one-line notation.
    pub fn left_mul(self, w: &Permutation) -> Permutation {
        compose(&self.to_permutation(), w)
    }

    /// Recovers `t` from `u = t * w`, if `u w^{-1}` is a transposition.
    pub fn between(w: &Permutation, u: &Permutation) -> Option<Self> {
        let quotient = compose(u, &w.inverse());
        let moved: Vec<usize> = (1..=quotient.n())
            .filter(|&k| quotient.apply(k) != k)
            .collect();
        match moved[..] {
            [a, b] => Some(Transposition { a, b }),
            _ => None,
        }
    }
}

impl fmt::Display for Transposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t({},{})", self.a, self.b)
    }
}

/// A weakly decreasing sequence of nonnegative integers, trailing zeros
/// trimmed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.windows(2).any(|p| p[0] < p[1]) {
            return Err(Error::InvalidPartition(parts));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// `lambda_i`, 1-based, zero past the last part.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i.wrapping_sub(1)).copied().unwrap_or(0)
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `|lambda|`.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn conjugate(&self) -> Partition {
        let first = self.part(1);
        Partition {
            parts: (1..=first)
                .map(|j| self.parts.iter().filter(|&&p| p >= j).count())
                .collect(),
        }
    }

    /// The dominant permutation with Lehmer code `lambda`.
    pub fn dominant_permutation(&self) -> Permutation {
        let pi = Permutation::from_code(&self.parts);
        debug_assert!(pi.is_dominant());
        pi
    }

    /// All partitions of `n`, parts in decreasing order, listed in reverse
    /// lexicographic order.
    pub fn all_of(n: usize) -> Vec<Partition> {
        fn go(rest: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition {
                    parts: prefix.clone(),
                });
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                prefix.push(p);
                go(rest - p, p, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        go(n, n, &mut Vec::new(), &mut out);
        out
    }

    /// All partitions with `|lambda| <= n`.
    pub fn all_up_to(n: usize) -> Vec<Partition> {
        (0..=n).flat_map(Self::all_of).collect()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.parts.iter().join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Partition::new(parse_list(s, "partition")?)
    }
}

/// The dominant permutation `dom(lambda)`.
pub fn dom(lambda: &Partition) -> Permutation {
    lambda.dominant_permutation()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn digits(s: &str) -> Permutation {
        Permutation::from_one_line(s.bytes().map(|b| (b - b'0') as usize).collect()).unwrap()
    }

    #[test]
    fn canonical_window_trims_fixed_points() {
        assert_eq!(p("2,1,3,4").window(), &[2, 1]);
        assert!(p("1,2,3").is_identity());
        assert_eq!(Permutation::identity().to_string(), "1");
        assert_eq!(p("1").to_string(), "1");
    }

    #[test]
    fn rejects_non_bijections() {
        assert!("1,1".parse::<Permutation>().is_err());
        assert!("0,1".parse::<Permutation>().is_err());
        assert!("2,3".parse::<Permutation>().is_err());
        assert!("a,b".parse::<Permutation>().is_err());
    }

    #[test]
    fn compose_with_transpositions() {
        let w = digits("2136754");
        assert_eq!(compose(&Permutation::identity(), &w), w);
        assert_eq!(Transposition::simple(3).left_mul(&w), digits("2146753"));
        let t14 = Transposition::new(1, 4).unwrap();
        assert_eq!(t14.left_mul(&digits("2165743")), digits("2465713"));
    }

    #[test]
    fn inverse_by_position_lookup() {
        assert!(Permutation::identity().inverse().is_identity());
        assert_eq!(digits("31524").inverse(), digits("24153"));
        let w = digits("2136754");
        let brute: Vec<usize> = (1..=7)
            .map(|k| w.window().iter().position(|&v| v == k).unwrap() + 1)
            .collect();
        assert_eq!(w.inverse().window(), &brute[..]);
        assert_eq!(w.inverse(), digits("2137645"));
    }

    #[test]
    fn lengths_and_inversions() {
        assert_eq!(Permutation::identity().length(), 0);
        assert_eq!(digits("1432").length(), 3);
        assert_eq!(digits("2165743").length(), 9);
        assert_eq!(
            digits("1432").inversions(),
            vec![Pos::new(2, 3), Pos::new(2, 4), Pos::new(3, 4)]
        );
    }

    #[test]
    fn coinversions_with_bound() {
        assert_eq!(
            Permutation::identity().coinversions(3).unwrap(),
            vec![Pos::new(1, 2), Pos::new(1, 3), Pos::new(2, 3)]
        );
        assert_eq!(
            digits("1432").coinversions(4).unwrap(),
            vec![Pos::new(1, 2), Pos::new(1, 3), Pos::new(1, 4)]
        );
        assert_eq!(Permutation::identity().coinversions(0), Err(Error::InvalidBound));
    }

    #[test]
    fn diagram_and_code_of_3421() {
        let pi = digits("3421");
        assert!(Permutation::identity().diagram().is_empty());
        assert_eq!(
            pi.diagram(),
            vec![
                Pos::new(1, 1),
                Pos::new(1, 2),
                Pos::new(2, 1),
                Pos::new(2, 2),
                Pos::new(3, 1)
            ]
        );
        assert_eq!(pi.code(), vec![2, 2, 1]);
        assert_eq!(digits("1432").code(), vec![0, 2, 1]);
        assert!(Permutation::identity().code().is_empty());
    }

    #[test]
    fn dominance() {
        assert!(Permutation::identity().is_dominant());
        assert!(digits("3421").is_dominant());
        assert!(!digits("1432").is_dominant());
        assert_eq!(dom(&Partition::empty()), Permutation::identity());
        assert_eq!(dom(&"2,2,1".parse().unwrap()), digits("3421"));
        assert_eq!(dom(&"4,3,2,1".parse().unwrap()), digits("54321"));
        assert_eq!(dom(&"5,4,4,2,2,1".parse().unwrap()), digits("6573421"));
    }

    #[test]
    fn conjugates() {
        let c = |s: &str| s.parse::<Partition>().unwrap().conjugate().to_string();
        assert_eq!(c(""), "");
        assert_eq!(c("2,2,1"), "3,2");
        assert_eq!(c("5,4,4,2,2,1"), "6,5,3,3,1");
        assert!("1,2".parse::<Partition>().is_err());
        assert_eq!("3,1,0,0".parse::<Partition>().unwrap().parts(), &[3, 1]);
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..=8).map(|n| Partition::all_of(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22]);
    }

    #[test]
    fn weak_order_examples() {
        let pi = digits("3421");
        assert!(Permutation::identity().leq_weak(&pi));
        assert!(digits("1432").leq_weak(&pi));
        assert!(!pi.leq_weak(&digits("1432")));
    }

    #[test]
    fn covers() {
        assert_eq!(
            Permutation::identity().bruhat_covers_up(3),
            vec![Transposition::simple(1), Transposition::simple(2)]
        );
        // Oracle: filter all six transpositions of S_4 by the length rule.
        let w = digits("1432");
        let brute: Vec<Transposition> = (1..=4)
            .tuple_combinations()
            .map(|(a, b)| Transposition { a, b })
            .filter(|t| t.left_mul(&w).length() == 4)
            .collect();
        assert_eq!(w.bruhat_covers_up(4), brute);
        assert!(brute.iter().any(|t| t.left_mul(&w) == digits("4132")));

        let pi = digits("3421");
        assert!(pi.covers_below(&pi).unwrap().is_empty());
        let w0 = digits("7654321");
        assert!(digits("2136754")
            .covers_below(&w0)
            .unwrap()
            .contains(&Transposition::simple(3)));
        assert!(digits("2165743")
            .covers_below(&digits("6573421"))
            .unwrap()
            .contains(&Transposition::new(1, 4).unwrap()));
        assert!(matches!(
            digits("21").covers_below(&digits("1432")),
            Err(Error::NotDominant(_))
        ));
    }

    #[test]
    fn transposition_recovery() {
        let w = digits("2136754");
        let u = digits("2146753");
        assert_eq!(Transposition::between(&w, &u), Some(Transposition::simple(3)));
        assert_eq!(Transposition::between(&w, &w), None);
    }

    #[test]
    fn positions_parse() {
        assert_eq!("3,4".parse::<Pos>().unwrap(), Pos::new(3, 4));
        assert_eq!("(3, 4)".parse::<Pos>().unwrap(), Pos::new(3, 4));
        assert!("0,4".parse::<Pos>().is_err());
        assert!("3".parse::<Pos>().is_err());
    }
}
