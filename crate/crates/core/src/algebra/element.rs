use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use super::{AlgebraError, Coefficient, DeltaPoly};
use crate::diagram::RookPartition;

/// A finite combination `Σ p_α · α` of degree-`n` rook partitions with
/// polynomial coefficients. Zero coefficients are never stored, and terms
/// iterate in the canonical diagram order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlgebraElement<R> {
    degree: usize,
    terms: BTreeMap<RookPartition, DeltaPoly<R>>,
}

impl<R: Coefficient> AlgebraElement<R> {
    pub fn zero(n: usize) -> Self {
        AlgebraElement {
            degree: n,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(d: RookPartition) -> Self {
        Self::term(DeltaPoly::one(), d)
    }

    pub fn term(coefficient: DeltaPoly<R>, d: RookPartition) -> Self {
        let mut out = Self::zero(d.degree());
        out.add_term(d, coefficient);
        out
    }

    /// The identity diagram with coefficient 1.
    pub fn identity(n: usize) -> Self {
        Self::basis(RookPartition::identity(n))
    }

    pub fn degree(&self) -> usize {
        self.degree
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

    pub fn terms(&self) -> impl Iterator<Item = (&RookPartition, &DeltaPoly<R>)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, d: &RookPartition) -> DeltaPoly<R> {
        self.terms.get(d).cloned().unwrap_or_default()
    }

    fn add_term(&mut self, d: RookPartition, p: DeltaPoly<R>) {
        if p.is_zero() {
            return;
        }
        match self.terms.get_mut(&d) {
            Some(existing) => {
                let sum = &*existing + &p;
                if sum.is_zero() {
                    self.terms.remove(&d);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(d, p);
            }
        }
    }

    fn check_degree(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.degree == other.degree {
            Ok(())
        } else {
            Err(AlgebraError::DegreeMismatch {
                left: self.degree,
                right: other.degree,
            })
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_degree(other)?;
        let mut out = self.clone();
        for (d, p) in &other.terms {
            out.add_term(d.clone(), p.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&DeltaPoly::constant(-R::one()))
    }

    pub fn scale(&self, p: &DeltaPoly<R>) -> Self {
        let mut out = Self::zero(self.degree);
        for (d, q) in &self.terms {
            out.add_term(d.clone(), q * p);
        }
        out
    }

    /// `a ⋆ b`: each pair of diagrams contributes `p·q·d^m` to their
    /// product, where `m` counts the floating components of the product.
    pub fn star(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_degree(other)?;
        let partials: Vec<Self> = self
            .terms
            .par_iter()
            .map(|(a, p)| {
                let mut part = Self::zero(self.degree);
                for (b, q) in &other.terms {
                    let (ab, m) = a.compose_unchecked(b);
                    part.add_term(ab, (p * q).shift(m));
                }
                part
            })
            .collect();
        // merge in left-term order; addition is exact so the result is deterministic
        let mut out = Self::zero(self.degree);
        for part in partials {
            for (d, p) in part.terms {
                out.add_term(d, p);
            }
        }
        Ok(out)
    }

    /// Substitutes a value for `d`, leaving a combination with scalar coefficients.
    pub fn eval_delta(&self, x: &R) -> BTreeMap<RookPartition, R> {
        self.terms
            .iter()
            .map(|(d, p)| (d.clone(), p.eval(x)))
            .filter(|(_, c)| !c.is_zero())
            .collect()
    }

    /// Parses `<poly> * (<diagram>) + ...`. A bare `0` is the zero element
    /// and needs `default_n`; otherwise every diagram must share one degree.
    pub fn parse(text: &str, default_n: Option<usize>) -> Result<Self, AlgebraError> {
        let trimmed = text.trim();
        if trimmed == "0" {
            let n = default_n.ok_or_else(|| AlgebraError::Parse("degree of 0 is unknown".into()))?;
            return Ok(Self::zero(n));
        }
        let mut rest = trimmed;
        let mut out: Option<Self> = None;
        while !rest.is_empty() {
            if out.is_some() {
                rest = rest.strip_prefix('+').unwrap_or(rest).trim_start();
            }
            let star = rest
                .find('*')
                .ok_or_else(|| AlgebraError::Parse(format!("expected `<poly> * (diagram)` in {rest:?}")))?;
            let open = rest[star..]
                .find('(')
                .map(|i| star + i)
                .ok_or_else(|| AlgebraError::Parse("missing `(` before diagram".into()))?;
            // coefficients like `2*d` put the separating `*` after the first one
            let (poly_text, open) = match rest[star + 1..open].trim() {
                "" => (&rest[..star], open),
                _ => {
                    let sep = rest[..open].rfind('*').expect("a star precedes");
                    (&rest[..sep], open)
                }
            };
            let close = rest[open..]
                .find(')')
                .map(|i| open + i)
                .ok_or_else(|| AlgebraError::Parse("unclosed `(`".into()))?;
            let poly: DeltaPoly<R> = poly_text.parse()?;
            let diagram: RookPartition = rest[open + 1..close].trim().parse()?;
            let term = Self::term(poly, diagram);
            out = Some(match out {
                None => term,
                Some(acc) => acc.add(&term)?,
            });
            rest = rest[close + 1..].trim_start();
        }
        let out = out.ok_or_else(|| AlgebraError::Parse("empty algebra element".into()))?;
        match default_n {
            Some(n) if n != out.degree => Err(AlgebraError::DegreeMismatch {
                left: n,
                right: out.degree,
            }),
            _ => Ok(out),
        }
    }
}

impl<R: Coefficient> fmt::Display for AlgebraElement<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (d, p)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if p.is_compound() {
                write!(f, "({p}) * ({d})")?;
            } else {
                write!(f, "{p} * ({d})")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type E = AlgebraElement<i64>;

    fn el(s: &str) -> E {
        E::parse(s, None).unwrap()
    }

    fn d(s: &str) -> RookPartition {
        s.parse().unwrap()
    }

    #[test]
    fn projection_squares_pick_up_a_delta() {
        let e1 = E::basis(d("n=2; 1; 1'; 2,2'"));
        assert_eq!(
            e1.star(&e1).unwrap(),
            E::term("d".parse().unwrap(), d("n=2; 1; 1'; 2,2'"))
        );
        let o1 = E::basis(d("n=2; 2,2'"));
        assert_eq!(o1.star(&o1).unwrap(), o1);
        let id = E::identity(2);
        assert_eq!(id.star(&e1).unwrap(), e1);
        assert_eq!(e1.star(&id).unwrap(), e1);
    }

    #[test]
    fn literal_round_trip() {
        let x = el("3d^2-1 * (n=2; 1; 1'; 2,2') + 2*d * (n=2; 2,2') - 1 * (n=2; 1,1'; 2,2')");
        assert_eq!(x.len(), 3);
        assert_eq!(x.coefficient(&d("n=2; 2,2'")).to_string(), "2d");
        assert_eq!(x.coefficient(&RookPartition::identity(2)).to_string(), "-1");
        assert_eq!(el(&x.to_string()), x);
        assert_eq!(el("d+1 * (n=1; 1,1')").to_string(), "(d+1) * (n=1; 1,1')");
        assert_eq!(E::parse("0", Some(3)).unwrap(), E::zero(3));
        assert!(E::parse("0", None).is_err());
        assert!(E::parse("1 * (n=2; 1,1') + 1 * (n=3; 1,1')", None).is_err());
        assert!(E::parse("1 * (n=2; 1,1')", Some(3)).is_err());
        assert!(E::parse("1 (n=2; 1,1')", None).is_err());
    }

    #[test]
    fn cancellation_removes_terms() {
        let x = el("d * (n=1; 1,1')");
        assert!(x.sub(&x).unwrap().is_zero());
        assert!(x.star(&E::zero(1)).unwrap().is_zero());
        assert!(matches!(
            x.star(&E::identity(2)),
            Err(AlgebraError::DegreeMismatch { .. })
        ));
    }
}
