//! Laurent polynomials in one variable `A`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg};

use num_traits::{One, Signed, Zero};

/// Sparse Laurent polynomial; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly<T> {
    terms: BTreeMap<i32, T>,
}

/// Integer-coefficient polynomial used for the Kauffman bracket.
pub type BracketPolynomial = LaurentPoly<i64>;

impl<T> Default for LaurentPoly<T> {
    fn default() -> Self {
        LaurentPoly {
            terms: BTreeMap::new(),
        }
    }
}

impl<T> LaurentPoly<T>
where
    T: Clone + Zero + One + PartialEq + Neg<Output = T>,
{
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(T::one(), 0)
    }

    pub fn monomial(coeff: T, exp: i32) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff);
        p
    }

    /// Builds from `(exponent, coefficient)` pairs, summing repeats.
    pub fn from_terms(terms: impl IntoIterator<Item = (i32, T)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exp: i32, coeff: T) {
        let sum = match self.terms.remove(&exp) {
            Some(c) => c + coeff,
            None => coeff,
        };
        if !sum.is_zero() {
            self.terms.insert(exp, sum);
        }
    }

    /// `-A^2 - A^-2`, the value of a closed loop.
    pub fn loop_value() -> Self {
        Self::from_terms([(2, -T::one()), (-2, -T::one())])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &T)> + '_ {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn coeff(&self, exp: i32) -> T {
        self.terms.get(&exp).cloned().unwrap_or_else(T::zero)
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// Multiplies by `A^k`.
    pub fn shift(&self, k: i32) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// `(-A^3)^k` for any integer `k`.
    pub fn framing(k: i32) -> Self {
        let c = if k % 2 == 0 { T::one() } else { -T::one() };
        Self::monomial(c, 3 * k)
    }

    /// Multiplies by the power of `-A^3` that puts the lowest exponent in
    /// `0..3`; returns the normalized polynomial and that power.
    pub fn normalize_framing(&self) -> (Self, i32) {
        match self.min_exp() {
            None => (self.clone(), 0),
            Some(m) => {
                let k = -m.div_euclid(3);
                (self * &Self::framing(k), k)
            }
        }
    }

    /// `Some(k)` when `self = other * (-A^3)^k`.
    pub fn framing_ratio(&self, other: &Self) -> Option<i32> {
        let (a, ka) = self.normalize_framing();
        let (b, kb) = other.normalize_framing();
        (a == b && !a.is_zero()).then_some(kb - ka)
    }
}

impl<T> Mul for &LaurentPoly<T>
where
    T: Clone + Zero + One + PartialEq + Neg<Output = T>,
{
    type Output = LaurentPoly<T>;

    fn mul(self, rhs: Self) -> LaurentPoly<T> {
        let mut out = LaurentPoly::zero();
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1.clone() * c2.clone());
            }
        }
        out
    }
}

impl<T> Add for &LaurentPoly<T>
where
    T: Clone + Zero + One + PartialEq + Neg<Output = T>,
{
    type Output = LaurentPoly<T>;

    fn add(self, rhs: Self) -> LaurentPoly<T> {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl<T> Neg for LaurentPoly<T>
where
    T: Clone + Zero + One + PartialEq + Neg<Output = T>,
{
    type Output = LaurentPoly<T>;

    fn neg(self) -> LaurentPoly<T> {
        LaurentPoly {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl<T> fmt::Display for LaurentPoly<T>
where
    T: Clone + Zero + One + PartialEq + Signed + fmt::Display,
{
    /// Highest exponent first, e.g. `A^7 + A^3 + A^-1 - A^-9`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (&e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let unit = mag.is_one();
            match (unit, e) {
                (_, 0) => write!(f, "{mag}")?,
                (true, 1) => write!(f, "A")?,
                (true, _) => write!(f, "A^{e}")?,
                (false, 1) => write!(f, "{mag}A")?,
                (false, _) => write!(f, "{mag}A^{e}")?,
            }
        }
        Ok(())
    }
}
