//! Polynomials in the twisting parameter `d`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use super::{AlgebraError, Coefficient};

/// A polynomial `Σ c_k d^k`. The coefficient vector never ends in zero, so
/// the zero polynomial is the empty vector and equality is structural.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DeltaPoly<R> {
    coeffs: Vec<R>,
}

impl<R: Coefficient> DeltaPoly<R> {
    pub fn from_coeffs(mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(R::is_zero) {
            coeffs.pop();
        }
        DeltaPoly { coeffs }
    }

    pub fn zero() -> Self {
        DeltaPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(R::one())
    }

    pub fn constant(c: R) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c · d^k`.
    pub fn monomial(c: R, k: usize) -> Self {
        let mut coeffs = vec![R::zero(); k];
        coeffs.push(c);
        Self::from_coeffs(coeffs)
    }

    /// `d^k`.
    pub fn delta_pow(k: usize) -> Self {
        Self::monomial(R::one(), k)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> R {
        self.coeffs.get(k).cloned().unwrap_or_else(R::zero)
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    /// Horner evaluation at `d = x`.
    pub fn eval(&self, x: &R) -> R {
        self.coeffs
            .iter()
            .rev()
            .fold(R::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// Multiplies by `d^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![R::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        DeltaPoly { coeffs }
    }

    pub fn map<S: Coefficient>(&self, f: impl Fn(&R) -> S) -> DeltaPoly<S> {
        DeltaPoly::from_coeffs(self.coeffs.iter().map(f).collect())
    }

    /// More than one nonzero term.
    pub(crate) fn is_compound(&self) -> bool {
        self.coeffs.iter().filter(|c| !c.is_zero()).count() > 1
    }
}

impl<R: Coefficient> Default for DeltaPoly<R> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<R: Coefficient> Add for &DeltaPoly<R> {
    type Output = DeltaPoly<R>;
    fn add(self, rhs: &DeltaPoly<R>) -> DeltaPoly<R> {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        DeltaPoly::from_coeffs((0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<R: Coefficient> Sub for &DeltaPoly<R> {
    type Output = DeltaPoly<R>;
    fn sub(self, rhs: &DeltaPoly<R>) -> DeltaPoly<R> {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        DeltaPoly::from_coeffs((0..len).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<R: Coefficient> Mul for &DeltaPoly<R> {
    type Output = DeltaPoly<R>;
    fn mul(self, rhs: &DeltaPoly<R>) -> DeltaPoly<R> {
        if self.is_zero() || rhs.is_zero() {
            return DeltaPoly::zero();
        }
        let mut out = vec![R::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        DeltaPoly::from_coeffs(out)
    }
}

impl<R: Coefficient> Neg for &DeltaPoly<R> {
    type Output = DeltaPoly<R>;
    fn neg(self) -> DeltaPoly<R> {
        DeltaPoly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl<R: Coefficient> $tr for DeltaPoly<R> {
            type Output = DeltaPoly<R>;
            fn $f(self, rhs: DeltaPoly<R>) -> DeltaPoly<R> {
                (&self).$f(&rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl<R: Coefficient> Neg for DeltaPoly<R> {
    type Output = DeltaPoly<R>;
    fn neg(self) -> DeltaPoly<R> {
        -&self
    }
}

/// Highest power first, e.g. `3d^2-1`, `-d+2`, `0`.
impl<R: Coefficient> fmt::Display for DeltaPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = *c < R::zero();
            let magnitude = if negative { -c.clone() } else { c.clone() };
            match (negative, first) {
                (true, _) => write!(f, "-")?,
                (false, false) => write!(f, "+")?,
                (false, true) => {}
            }
            first = false;
            let unit = magnitude.is_one();
            match k {
                0 => write!(f, "{magnitude}")?,
                _ if unit => write!(f, "d")?,
                _ => write!(f, "{magnitude}d")?,
            }
            if k > 1 {
                write!(f, "^{k}")?;
            }
        }
        Ok(())
    }
}

/// Accepts sums of terms `c`, `d`, `cd`, `c*d`, `d^k`, `cd^k` with optional
/// signs and whitespace; repeated powers are collected.
impl<R: Coefficient> FromStr for DeltaPoly<R> {
    type Err = AlgebraError;

    fn from_str(text: &str) -> Result<Self, AlgebraError> {
        let bad = |why: &str| AlgebraError::Parse(format!("polynomial {text:?}: {why}"));
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let compact = compact
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .unwrap_or(&compact);
        if compact.is_empty() {
            return Err(bad("empty"));
        }
        // split before every sign that is not the leading one
        let mut terms = Vec::new();
        let mut start = 0;
        for (i, ch) in compact.char_indices() {
            if (ch == '+' || ch == '-') && i > start {
                terms.push(&compact[start..i]);
                start = i;
            }
        }
        terms.push(&compact[start..]);
        let mut acc = DeltaPoly::zero();
        for term in terms {
            let (negative, body) = match term.as_bytes().first() {
                Some(b'-') => (true, &term[1..]),
                Some(b'+') => (false, &term[1..]),
                _ => (false, term),
            };
            let (coef_text, power) = match body.find('d') {
                None => (body, 0),
                Some(at) => {
                    let rest = &body[at + 1..];
                    let power = match rest.strip_prefix('^') {
                        Some(p) => p.parse::<usize>().map_err(|_| bad("bad exponent"))?,
                        None if rest.is_empty() => 1,
                        None => return Err(bad("unexpected text after d")),
                    };
                    (body[..at].strip_suffix('*').unwrap_or(&body[..at]), power)
                }
            };
            let coef = if coef_text.is_empty() {
                if power == 0 {
                    return Err(bad("missing coefficient"));
                }
                R::one()
            } else {
                R::from_str_radix(coef_text, 10).map_err(|_| bad("bad coefficient"))?
            };
            let coef = if negative { -coef } else { coef };
            acc = &acc + &DeltaPoly::monomial(coef, power);
        }
        Ok(acc)
    }
}
