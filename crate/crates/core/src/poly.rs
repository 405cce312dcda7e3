//! Exact sparse polynomials in the variables `x_1, x_2, ...` and
//! `y_1, y_2, ...`, Schubert and padded Schubert polynomials, and the
//! operators `Delta`, `Nabla` and `H = [Delta, Nabla]`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{check_dominant_above, Partition, Permutation, Pos};
use crate::pipedream::{dominated_positions, enumerate, PipeDream};

/// `x^alpha y^beta`, storing only positive exponents.
///
/// Ordered lexicographically on the sorted `x` exponents, then the sorted
/// `y` exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    x: BTreeMap<usize, u32>,
    y: BTreeMap<usize, u32>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn x(i: usize) -> Self {
        Monomial::one().times_x(i, 1)
    }

    pub fn y(i: usize) -> Self {
        Monomial::one().times_y(i, 1)
    }

    /// `x^S = prod_{(i,j) in S} x_i`.
    pub fn x_of<'a>(cells: impl IntoIterator<Item = &'a Pos>) -> Self {
        cells.into_iter().fold(Monomial::one(), |m, p| m.times_x(p.i, 1))
    }

    /// `y^S = prod_{(i,j) in S} y_i`.
    pub fn y_of<'a>(cells: impl IntoIterator<Item = &'a Pos>) -> Self {
        cells.into_iter().fold(Monomial::one(), |m, p| m.times_y(p.i, 1))
    }

    pub fn times_x(mut self, i: usize, e: u32) -> Self {
        if e > 0 {
            *self.x.entry(i).or_insert(0) += e;
        }
        self
    }

    pub fn times_y(mut self, i: usize, e: u32) -> Self {
        if e > 0 {
            *self.y.entry(i).or_insert(0) += e;
        }
        self
    }

    pub fn x_exp(&self, i: usize) -> u32 {
        self.x.get(&i).copied().unwrap_or(0)
    }

    pub fn y_exp(&self, i: usize) -> u32 {
        self.y.get(&i).copied().unwrap_or(0)
    }

    pub fn x_exponents(&self) -> &BTreeMap<usize, u32> {
        &self.x
    }

    pub fn y_exponents(&self) -> &BTreeMap<usize, u32> {
        &self.y
    }

    pub fn x_degree(&self) -> u32 {
        self.x.values().sum()
    }

    pub fn y_degree(&self) -> u32 {
        self.y.values().sum()
    }

    /// Largest variable index that occurs.
    pub fn max_index(&self) -> usize {
        self.x.keys().chain(self.y.keys()).copied().max().unwrap_or(0)
    }

    fn lower(map: &mut BTreeMap<usize, u32>, i: usize) {
        match map.get_mut(&i) {
            Some(e) if *e > 1 => *e -= 1,
            Some(_) => {
                map.remove(&i);
            }
            None => panic!("lowering a zero exponent"),
        }
    }

    /// Replace one factor `y_i` by `x_i`.
    fn y_to_x(&self, i: usize) -> Monomial {
        let mut m = self.clone();
        Self::lower(&mut m.y, i);
        m.times_x(i, 1)
    }

    /// Replace one factor `x_i` by `y_i`.
    fn x_to_y(&self, i: usize) -> Monomial {
        let mut m = self.clone();
        Self::lower(&mut m.x, i);
        m.times_y(i, 1)
    }

    /// `x_i^{a_i} y_i^{b_i}` with `a_i + b_i = lambda_i` for every `i`.
    pub fn in_v_lambda(&self, lambda: &Partition) -> bool {
        let top = self.max_index().max(lambda.len());
        (1..=top).all(|i| (self.x_exp(i) + self.y_exp(i)) as usize == lambda.part(i))
    }
}

impl Mul for &Monomial {
    type Output = Monomial;

    fn mul(self, rhs: &Monomial) -> Monomial {
        let mut m = self.clone();
        for (&i, &e) in &rhs.x {
            m = m.times_x(i, e);
        }
        for (&i, &e) in &rhs.y {
            m = m.times_y(i, e);
        }
        m
    }
}

impl fmt::Display for Monomial {
    /// `x1^2*x2*y3`; the empty monomial prints as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.x.is_empty() && self.y.is_empty() {
            return f.write_str("1");
        }
        let factors = self
            .x
            .iter()
            .map(|(i, e)| ('x', i, e))
            .chain(self.y.iter().map(|(i, e)| ('y', i, e)));
        for (n, (var, i, &e)) in factors.enumerate() {
            if n > 0 {
                f.write_str("*")?;
            }
            write!(f, "{var}{i}")?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// A finite `Z`-linear combination of monomials with nonzero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, BigInt>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn one() -> Self {
        Polynomial::from(Monomial::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: Monomial, c: impl Into<BigInt>) {
        let c = c.into();
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn scale(&self, c: impl Into<BigInt>) -> Polynomial {
        let c = c.into();
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * &c)).collect(),
        }
    }

    /// `Delta = sum_i x_i d/dy_i`.
    pub fn delta(&self) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            for (&i, &e) in &m.y {
                out.add_term(m.y_to_x(i), c * BigInt::from(e));
            }
        }
        out
    }

    /// `Nabla = sum_i y_i d/dx_i`.
    pub fn nabla(&self) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            for (&i, &e) in &m.x {
                out.add_term(m.x_to_y(i), c * BigInt::from(e));
            }
        }
        out
    }

    /// `H`: multiplies each monomial by its `x`-degree minus its `y`-degree.
    pub fn h(&self) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let weight = i64::from(m.x_degree()) - i64::from(m.y_degree());
            out.add_term(m.clone(), c * BigInt::from(weight));
        }
        out
    }

    /// `[Delta, Nabla] = Delta Nabla - Nabla Delta`.
    pub fn delta_nabla_commutator(&self) -> Polynomial {
        &self.nabla().delta() - &self.delta().nabla()
    }

    pub fn in_v_lambda(&self, lambda: &Partition) -> bool {
        self.terms.keys().all(|m| m.in_v_lambda(lambda))
    }

    /// Substitute `y_i = 1` for every `i`.
    pub fn with_y_one(&self) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let stripped = Monomial {
                x: m.x.clone(),
                y: BTreeMap::new(),
            };
            out.add_term(stripped, c.clone());
        }
        out
    }

    /// Value with every variable set to 1.
    pub fn sum_of_coefficients(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Monomials whose coefficients differ, with `(self, other)`
    /// coefficients.
    pub fn differences(&self, other: &Polynomial) -> Vec<(Monomial, BigInt, BigInt)> {
        let diff = self - other;
        diff.terms
            .keys()
            .map(|m| (m.clone(), self.coefficient(m), other.coefficient(m)))
            .collect()
    }
}

impl From<Monomial> for Polynomial {
    fn from(m: Monomial) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(m, 1);
        p
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        self.scale(-1)
    }
}

impl std::iter::Sum for Polynomial {
    fn sum<I: Iterator<Item = Polynomial>>(iter: I) -> Self {
        iter.fold(Polynomial::zero(), |acc, p| &acc + &p)
    }
}

impl fmt::Display for Polynomial {
    /// Canonical text: terms in canonical order joined by ` + ` (or ` - `),
    /// unit coefficients omitted, `0` for the zero polynomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (n, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let magnitude = c.abs();
            let is_constant = m.x.is_empty() && m.y.is_empty();
            if magnitude.is_one() {
                write!(f, "{m}")?;
            } else if is_constant {
                write!(f, "{magnitude}")?;
            } else {
                write!(f, "{magnitude}*{m}")?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum CoeffRepr {
    Small(i64),
    Big(String),
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    coeff: CoeffRepr,
    x: BTreeMap<String, u32>,
    y: BTreeMap<String, u32>,
}

fn index_map(map: &BTreeMap<usize, u32>) -> BTreeMap<String, u32> {
    map.iter().map(|(i, e)| (i.to_string(), *e)).collect()
}

impl Serialize for Polynomial {
    /// A list of `{"coeff", "x", "y"}` objects in canonical term order.
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<TermRepr> = self
            .terms
            .iter()
            .map(|(m, c)| TermRepr {
                coeff: match c.to_i64() {
                    Some(v) => CoeffRepr::Small(v),
                    None => CoeffRepr::Big(c.to_string()),
                },
                x: index_map(&m.x),
                y: index_map(&m.y),
            })
            .collect();
        terms.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let terms = Vec::<TermRepr>::deserialize(deserializer)?;
        let mut out = Polynomial::zero();
        for t in terms {
            let mut m = Monomial::one();
            for (i, e) in t.x {
                m = m.times_x(i.parse().map_err(D::Error::custom)?, e);
            }
            for (i, e) in t.y {
                m = m.times_y(i.parse().map_err(D::Error::custom)?, e);
            }
            let c = match t.coeff {
                CoeffRepr::Small(v) => BigInt::from(v),
                CoeffRepr::Big(s) => s.parse().map_err(D::Error::custom)?,
            };
            out.add_term(m, c);
        }
        Ok(out)
    }
}

/// `S_w(x) = sum over PD(w) of x^{crosses}`.
pub fn schubert(w: &Permutation) -> Polynomial {
    schubert_of(&enumerate(w))
}

pub(crate) fn schubert_of(pds: &[PipeDream]) -> Polynomial {
    pds.iter()
        .map(|pd| Polynomial::from(Monomial::x_of(pd.crosses())))
        .sum()
}

/// The weight `x^{P(+)} y^{P(bump) cap P(pi)}` of one pipe dream.
pub fn padded_weight(pd: &PipeDream, pi: &Permutation) -> Result<Monomial> {
    let dominated = dominated_positions(pd, pi)?;
    let bumps = dominated.positions.iter().filter(|p| !pd.is_cross(**p));
    Ok(&Monomial::x_of(pd.crosses()) * &Monomial::y_of(bumps))
}

/// The `pi`-padded Schubert polynomial via dominated positions.
pub fn padded_schubert(w: &Permutation, pi: &Permutation) -> Result<Polynomial> {
    check_dominant_above(w, pi)?;
    padded_schubert_of(&enumerate(w), pi)
}

pub(crate) fn padded_schubert_of(pds: &[PipeDream], pi: &Permutation) -> Result<Polynomial> {
    let mut out = Polynomial::zero();
    for pd in pds {
        out.add_term(padded_weight(pd, pi)?, 1);
    }
    Ok(out)
}

/// The `pi`-padded Schubert polynomial as `y^lambda S_w(x_1/y_1, ...)`.
pub fn padded_schubert_by_homogenization(w: &Permutation, pi: &Permutation) -> Result<Polynomial> {
    check_dominant_above(w, pi)?;
    let lambda = Partition::new(pi.code()).expect("dominant code is a partition");
    homogenize(&schubert(w), &lambda)
}

/// `x^alpha -> x^alpha y^{lambda - alpha}`, termwise.
pub fn homogenize(f: &Polynomial, lambda: &Partition) -> Result<Polynomial> {
    let mut out = Polynomial::zero();
    for (m, c) in f.terms() {
        if !m.y.is_empty() {
            return Err(Error::Invariant("homogenizing a polynomial with y variables".into()));
        }
        let top = m.max_index().max(lambda.len());
        let mut padded = m.clone();
        for i in 1..=top {
            let a = m.x_exp(i) as usize;
            let l = lambda.part(i);
            if a > l {
                return Err(Error::ExceedsPadding(i));
            }
            padded = padded.times_y(i, (l - a) as u32);
        }
        out.add_term(padded, c.clone());
    }
    Ok(out)
}

/// The monomial basis of `V_lambda`.
pub fn v_lambda_basis(lambda: &Partition) -> Vec<Monomial> {
    let mut basis = vec![Monomial::one()];
    for (idx, &l) in lambda.parts().iter().enumerate() {
        let i = idx + 1;
        basis = basis
            .into_iter()
            .flat_map(|m| {
                (0..=l as u32).map(move |a| m.clone().times_x(i, a).times_y(i, l as u32 - a))
            })
            .collect();
    }
    basis.sort();
    basis
}
