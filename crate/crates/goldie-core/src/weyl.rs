//! Normal ordering in the localized extended Weyl algebra.
//!
//! The algebra on `n` variables with the first `r` non-inverted is generated
//! by `x_1..x_r`, `x_{r+1}^(+-1)..x_n^(+-1)` and `d_1..d_n` subject to
//! `[d_i, x_j] = delta_ij`, everything else commuting. Elements are kept as
//! finite sums of normal-ordered monomials `c * x^a * d^b` with all `x`
//! factors to the left of all `d` factors.
//!
//! The rewriter works on words of unit generators and applies the leftmost
//! swap of a `d` unit standing directly before an `x` unit:
//!   `d x   -> x d + 1`          (same index)
//!   `d x~  -> x~ d - x~ x~`     (same index, `x~` an inverse unit)
//! and a free swap for distinct indices. Every step strictly reduces the
//! number of (d, x) inversions, so rewriting terminates; confluence is not
//! assumed but checked by the idempotence property tests.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::rat::{fmt_rat, int, Rat};

/// The ambient algebra: `n` variables, the first `r` non-invertible.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WeylAlgebra {
    pub n: usize,
    pub r: usize,
}

/// Exponents of a normal-ordered monomial `x^a * d^b`.
///
/// Invariants: `a[i] >= 0` for `i < r`, `b[i] >= 0` for all `i`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ExponentPair {
    pub x: Vec<i64>,
    pub d: Vec<i64>,
}

/// A single normal-ordered monomial with coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylMonomial {
    pub coeff: Rat,
    pub exps: ExponentPair,
}

/// A finite sum of normal-ordered monomials; zero coefficients are never
/// stored and keys are unique.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct WeylElement {
    terms: BTreeMap<ExponentPair, Rat>,
}

/// One generator power in an input word.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenPower {
    /// `x_index^power`; negative powers only for invertible indices.
    X { index: usize, power: i64 },
    /// `d_index^power`; power must be nonnegative.
    D { index: usize, power: i64 },
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Unit {
    X(usize),
    Xinv(usize),
    D(usize),
}

impl WeylElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentPair, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn from_monomial(m: WeylMonomial) -> Self {
        let mut e = Self::zero();
        e.accumulate(m.exps, m.coeff);
        e
    }

    fn accumulate(&mut self, key: ExponentPair, coeff: Rat) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(key);
        match entry {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &WeylElement) -> WeylElement {
        let mut out = self.clone();
        for (k, c) in other.terms() {
            out.accumulate(k.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &WeylElement) -> WeylElement {
        let mut out = self.clone();
        for (k, c) in other.terms() {
            out.accumulate(k.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, by: &Rat) -> WeylElement {
        let mut out = WeylElement::zero();
        for (k, c) in self.terms() {
            out.accumulate(k.clone(), c * by);
        }
        out
    }
}

/// The t-weight of a normal-ordered monomial: x-exponents minus d-exponents.
pub fn weight_of(m: &WeylMonomial) -> Vec<i64> {
    m.exps.x.iter().zip(&m.exps.d).map(|(a, b)| a - b).collect()
}

impl WeylAlgebra {
    pub fn new(n: usize, r: usize) -> Result<Self, Error> {
        if r > n {
            return Err(Error::BadInput("r must not exceed n"));
        }
        Ok(WeylAlgebra { n, r })
    }

    fn invertible(&self, index: usize) -> bool {
        index >= self.r
    }

    /// Validates exponent constraints and builds a monomial.
    pub fn monomial(&self, coeff: Rat, x: Vec<i64>, d: Vec<i64>) -> Result<WeylMonomial, Error> {
        if x.len() != self.n || d.len() != self.n {
            return Err(Error::DimensionMismatch {
                context: "monomial exponents",
                expected: self.n,
                found: if x.len() != self.n { x.len() } else { d.len() },
            });
        }
        for (i, &e) in x.iter().enumerate() {
            if e < 0 && !self.invertible(i) {
                return Err(Error::InvalidExponent { index: i });
            }
        }
        if let Some(i) = d.iter().position(|&e| e < 0) {
            return Err(Error::InvalidExponent { index: i });
        }
        Ok(WeylMonomial {
            coeff,
            exps: ExponentPair { x, d },
        })
    }

    pub fn one(&self) -> WeylElement {
        WeylElement::from_monomial(
            self.monomial(int(1), vec![0; self.n], vec![0; self.n])
                .expect("unit monomial"),
        )
    }

    /// The diagonal element `pi_i = x_i d_i`.
    pub fn pi(&self, i: usize) -> WeylElement {
        let mut x = vec![0i64; self.n];
        let mut d = vec![0i64; self.n];
        x[i] = 1;
        d[i] = 1;
        WeylElement::from_monomial(self.monomial(int(1), x, d).expect("pi monomial"))
    }

    /// The weight-alpha monomial: product over i of `x_i^(alpha_i)`, which is
    /// `x_i^alpha_i` for invertible i or nonnegative alpha_i, and
    /// `d_i^(-alpha_i)` for non-invertible i with negative alpha_i.
    pub fn weight_monomial(&self, alpha: &[i64]) -> Result<WeylMonomial, Error> {
        if alpha.len() != self.n {
            return Err(Error::DimensionMismatch {
                context: "weight vector",
                expected: self.n,
                found: alpha.len(),
            });
        }
        let mut x = vec![0i64; self.n];
        let mut d = vec![0i64; self.n];
        for (i, &a) in alpha.iter().enumerate() {
            if self.invertible(i) || a >= 0 {
                x[i] = a;
            } else {
                d[i] = -a;
            }
        }
        self.monomial(int(1), x, d)
    }

    fn explode(&self, word: &[GenPower]) -> Result<Vec<Unit>, Error> {
        let mut units = Vec::new();
        for gp in word {
            match *gp {
                GenPower::X { index, power } => {
                    if index >= self.n {
                        return Err(Error::BadInput("generator index out of range"));
                    }
                    if power >= 0 {
                        units.extend(core::iter::repeat(Unit::X(index)).take(power as usize));
                    } else {
                        if !self.invertible(index) {
                            return Err(Error::InvalidExponent { index });
                        }
                        units.extend(core::iter::repeat(Unit::Xinv(index)).take((-power) as usize));
                    }
                }
                GenPower::D { index, power } => {
                    if index >= self.n {
                        return Err(Error::BadInput("generator index out of range"));
                    }
                    if power < 0 {
                        return Err(Error::InvalidExponent { index });
                    }
                    units.extend(core::iter::repeat(Unit::D(index)).take(power as usize));
                }
            }
        }
        Ok(units)
    }

    /// Rewrites one unit word to normal order, accumulating into `out`.
    fn reduce_units(&self, coeff: Rat, units: Vec<Unit>, out: &mut WeylElement) {
        let mut agenda: Vec<(Rat, Vec<Unit>)> = vec![(coeff, units)];
        while let Some((c, w)) = agenda.pop() {
            // leftmost d-before-x position
            let pos = w
                .windows(2)
                .position(|pair| matches!((pair[0], pair[1]), (Unit::D(_), Unit::X(_) | Unit::Xinv(_))));
            let Some(p) = pos else {
                // canonical form: sum exponents per index
                let mut x = vec![0i64; self.n];
                let mut d = vec![0i64; self.n];
                for u in &w {
                    match *u {
                        Unit::X(i) => x[i] += 1,
                        Unit::Xinv(i) => x[i] -= 1,
                        Unit::D(i) => d[i] += 1,
                    }
                }
                out.accumulate(ExponentPair { x, d }, c);
                continue;
            };
            let (Unit::D(i), right) = (w[p], w[p + 1]) else {
                unreachable!()
            };
            match right {
                Unit::X(j) if j == i => {
                    // d x = x d + 1
                    let mut swapped = w.clone();
                    swapped.swap(p, p + 1);
                    let mut dropped = w.clone();
                    dropped.drain(p..=p + 1);
                    agenda.push((c.clone(), swapped));
                    agenda.push((c, dropped));
                }
                Unit::Xinv(j) if j == i => {
                    // d x~ = x~ d - x~ x~
                    let mut swapped = w.clone();
                    swapped.swap(p, p + 1);
                    let mut squared = w.clone();
                    squared[p] = Unit::Xinv(i);
                    squared[p + 1] = Unit::Xinv(i);
                    agenda.push((c.clone(), swapped));
                    agenda.push((-c, squared));
                }
                _ => {
                    let mut swapped = w;
                    swapped.swap(p, p + 1);
                    agenda.push((c, swapped));
                }
            }
        }
    }

    /// Normal-orders a product of generator powers with the given coefficient.
    pub fn normalize(&self, coeff: Rat, word: &[GenPower]) -> Result<WeylElement, Error> {
        let units = self.explode(word)?;
        let mut out = WeylElement::zero();
        self.reduce_units(coeff, units, &mut out);
        Ok(out)
    }

    /// Normal-orders a sum of coefficient-word terms.
    pub fn normalize_sum(&self, terms: &[(Rat, Vec<GenPower>)]) -> Result<WeylElement, Error> {
        let mut out = WeylElement::zero();
        for (c, w) in terms {
            let units = self.explode(w)?;
            self.reduce_units(c.clone(), units, &mut out);
        }
        Ok(out)
    }

    fn key_units(&self, key: &ExponentPair) -> Vec<Unit> {
        let mut units = Vec::new();
        for (i, &a) in key.x.iter().enumerate() {
            if a >= 0 {
                units.extend(core::iter::repeat(Unit::X(i)).take(a as usize));
            } else {
                units.extend(core::iter::repeat(Unit::Xinv(i)).take((-a) as usize));
            }
        }
        for (i, &b) in key.d.iter().enumerate() {
            units.extend(core::iter::repeat(Unit::D(i)).take(b as usize));
        }
        units
    }

    pub fn mul(&self, s: &WeylElement, t: &WeylElement) -> WeylElement {
        let mut out = WeylElement::zero();
        for (k1, c1) in s.terms() {
            let left = self.key_units(k1);
            for (k2, c2) in t.terms() {
                let mut units = left.clone();
                units.extend(self.key_units(k2));
                self.reduce_units(c1 * c2, units, &mut out);
            }
        }
        out
    }

    /// `[s, t] = s t - t s`.
    pub fn commutator(&self, s: &WeylElement, t: &WeylElement) -> WeylElement {
        self.mul(s, t).sub(&self.mul(t, s))
    }
}

/// Renders an element in the textual monomial syntax (`x1^2 d3`, terms joined
/// with signs, coefficients in front).
pub fn format_element(e: &WeylElement) -> String {
    if e.is_zero() {
        return String::from("0");
    }
    let mut out = String::new();
    for (idx, (key, coeff)) in e.terms().enumerate() {
        let mut atoms: Vec<String> = Vec::new();
        for (i, &a) in key.x.iter().enumerate() {
            if a == 1 {
                atoms.push(alloc::format!("x{}", i + 1));
            } else if a != 0 {
                atoms.push(alloc::format!("x{}^{}", i + 1, a));
            }
        }
        for (i, &b) in key.d.iter().enumerate() {
            if b == 1 {
                atoms.push(alloc::format!("d{}", i + 1));
            } else if b != 0 {
                atoms.push(alloc::format!("d{}^{}", i + 1, b));
            }
        }
        let abs = coeff.abs();
        let sign = coeff.is_negative();
        if idx == 0 {
            if sign {
                out.push('-');
            }
        } else {
            out.push_str(if sign { " - " } else { " + " });
        }
        if atoms.is_empty() {
            out.push_str(&fmt_rat(&abs));
        } else {
            if !abs.is_one() {
                out.push_str(&fmt_rat(&abs));
                out.push(' ');
            }
            out.push_str(&atoms.join(" "));
        }
    }
    out
}

/// Parses the textual monomial syntax: tokens `x1^3`, `d2`, `x3^-6`,
/// juxtaposition for products, `+`/`-` between terms, optional integer (or
/// `p/q`) coefficients. Returns the raw coefficient-word terms.
pub fn parse_expression(input: &str) -> Result<Vec<(Rat, Vec<GenPower>)>, Error> {
    #[derive(Debug, PartialEq)]
    enum Tok {
        Plus,
        Minus,
        Number(Rat),
        Gen(GenPower),
    }
    let bytes: Vec<char> = input.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0usize;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_whitespace() || c == '*' {
            i += 1;
            continue;
        }
        if c == '+' {
            toks.push(Tok::Plus);
            i += 1;
            continue;
        }
        if c == '-' {
            toks.push(Tok::Minus);
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == '/') {
                i += 1;
            }
            let lit: String = bytes[start..i].iter().collect();
            toks.push(Tok::Number(crate::rat::parse_rat(&lit)?));
            continue;
        }
        if c == 'x' || c == 'd' {
            i += 1;
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            if start == i {
                return Err(Error::Parse(alloc::format!("missing index after '{c}'")));
            }
            let index: usize = bytes[start..i]
                .iter()
                .collect::<String>()
                .parse()
                .map_err(|_| Error::Parse(String::from("bad generator index")))?;
            if index == 0 {
                return Err(Error::Parse(String::from("generator indices start at 1")));
            }
            let mut power = 1i64;
            if i < bytes.len() && bytes[i] == '^' {
                i += 1;
                let sgn = if i < bytes.len() && bytes[i] == '-' {
                    i += 1;
                    -1
                } else {
                    1
                };
                let ps = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if ps == i {
                    return Err(Error::Parse(String::from("missing exponent after '^'")));
                }
                let mag: i64 = bytes[ps..i]
                    .iter()
                    .collect::<String>()
                    .parse()
                    .map_err(|_| Error::Parse(String::from("bad exponent")))?;
                power = sgn * mag;
            }
            let gp = if c == 'x' {
                GenPower::X {
                    index: index - 1,
                    power,
                }
            } else {
                GenPower::D {
                    index: index - 1,
                    power,
                }
            };
            toks.push(Tok::Gen(gp));
            continue;
        }
        return Err(Error::Parse(alloc::format!("unexpected character '{c}'")));
    }

    let mut terms: Vec<(Rat, Vec<GenPower>)> = Vec::new();
    let mut sign = int(1);
    let mut coeff: Option<Rat> = None;
    let mut word: Vec<GenPower> = Vec::new();
    let mut started = false;
    let flush = |terms: &mut Vec<(Rat, Vec<GenPower>)>,
                 sign: &Rat,
                 coeff: &Option<Rat>,
                 word: &mut Vec<GenPower>,
                 started: bool|
     -> Result<(), Error> {
        if !started {
            return Err(Error::Parse(String::from("empty term")));
        }
        let c = sign.clone() * coeff.clone().unwrap_or_else(|| int(1));
        terms.push((c, core::mem::take(word)));
        Ok(())
    };
    for tok in toks {
        match tok {
            Tok::Plus | Tok::Minus => {
                if started {
                    flush(&mut terms, &sign, &coeff, &mut word, started)?;
                    started = false;
                    coeff = None;
                    sign = int(1);
                }
                if tok == Tok::Minus {
                    sign = -sign;
                }
            }
            Tok::Number(v) => {
                if coeff.is_some() || !word.is_empty() {
                    return Err(Error::Parse(String::from(
                        "coefficient must come first in a term",
                    )));
                }
                coeff = Some(v);
                started = true;
            }
            Tok::Gen(gp) => {
                word.push(gp);
                started = true;
            }
        }
    }
    flush(&mut terms, &sign, &coeff, &mut word, started)?;
    Ok(terms)
}
