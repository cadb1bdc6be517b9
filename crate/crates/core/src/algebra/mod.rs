//! The twisted semigroup algebra of `RP_n` over polynomials in `d`.
//!
//! Products of basis diagrams are weighted by `d^m`, where `m` counts the
//! floating components removed by composition. Associativity of that
//! product rests on the cocycle identity checked by [`check_cocycle`].

mod element;
mod poly;

use std::fmt::{Debug, Display};

use num_rational::Rational64;
use num_traits::{Num, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

pub use element::AlgebraElement;
pub use poly::DeltaPoly;

use crate::diagram::{DiagramError, RookPartition};
use crate::enumeration::all_rook_partitions;
use crate::presentation::{instantiate, PresentationError, Preset};
use crate::words::{atomic, Word, WordError};

/// Scalars usable as polynomial coefficients: any ordered, signed numeric ring.
pub trait Coefficient: Num + Signed + Clone + PartialOrd + Display + Debug + Send + Sync + 'static {}

impl<T> Coefficient for T where T: Num + Signed + Clone + PartialOrd + Display + Debug + Send + Sync + 'static {}

pub type DeltaPolyZ = DeltaPoly<i64>;
pub type DeltaPolyQ = DeltaPoly<Rational64>;
pub type AlgebraElementZ = AlgebraElement<i64>;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CocycleMode {
    Exhaustive,
    Sampled { count: u64, seed: u64 },
}

/// One triple where `m(a,b) + m(ab,c) ≠ m(a,bc) + m(b,c)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CocycleFailure {
    pub triple: [String; 3],
    pub left: usize,
    pub right: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CocycleReport {
    pub n: usize,
    pub mode: String,
    pub triples: u64,
    pub failure_count: u64,
    /// At most [`MAX_REPORTED`] counterexamples.
    pub failures: Vec<CocycleFailure>,
}

impl CocycleReport {
    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }
}

pub const MAX_REPORTED: usize = 10;

/// Product and twist tables for all of `RP_n`, indexed `a * size + b`.
struct Tables {
    elements: Vec<RookPartition>,
    product: Vec<u32>,
    twist: Vec<u32>,
}

impl Tables {
    fn build(n: usize) -> Self {
        let mut elements = all_rook_partitions(n);
        elements.sort();
        let size = elements.len();
        let rows: Vec<(Vec<u32>, Vec<u32>)> = elements
            .par_iter()
            .map(|a| {
                elements
                    .iter()
                    .map(|b| {
                        let (ab, m) = a.compose_unchecked(b);
                        let idx = elements.binary_search(&ab).expect("closed under products");
                        (idx as u32, m as u32)
                    })
                    .unzip()
            })
            .collect();
        let mut product = Vec::with_capacity(size * size);
        let mut twist = Vec::with_capacity(size * size);
        for (p, t) in rows {
            product.extend(p);
            twist.extend(t);
        }
        Tables {
            elements,
            product,
            twist,
        }
    }

    fn check(&self, a: usize, b: usize, c: usize) -> Option<CocycleFailure> {
        let size = self.elements.len();
        let at = |x: usize, y: usize| x * size + y;
        let ab = self.product[at(a, b)] as usize;
        let bc = self.product[at(b, c)] as usize;
        let left = (self.twist[at(a, b)] + self.twist[at(ab, c)]) as usize;
        let right = (self.twist[at(a, bc)] + self.twist[at(b, c)]) as usize;
        (left != right).then(|| CocycleFailure {
            triple: [a, b, c].map(|i| self.elements[i].to_string()),
            left,
            right,
        })
    }
}

fn collect_failures(found: impl Iterator<Item = CocycleFailure>) -> (u64, Vec<CocycleFailure>) {
    let mut count = 0;
    let mut kept = Vec::new();
    for f in found {
        count += 1;
        if kept.len() < MAX_REPORTED {
            kept.push(f);
        }
    }
    (count, kept)
}

/// Checks `m(a,b) + m(ab,c) = m(a,bc) + m(b,c)` over all triples of `RP_n`
/// or over `count` triples drawn with a seeded ChaCha8 stream.
pub fn check_cocycle(n: usize, mode: CocycleMode) -> CocycleReport {
    let tables = Tables::build(n);
    let size = tables.elements.len();
    let (triples, found, label) = match mode {
        CocycleMode::Exhaustive => {
            let found: Vec<CocycleFailure> = (0..size)
                .into_par_iter()
                .flat_map_iter(|a| {
                    let t = &tables;
                    (0..size).flat_map(move |b| (0..size).filter_map(move |c| t.check(a, b, c)))
                })
                .collect();
            ((size as u64).pow(3), found, "exhaustive".to_string())
        }
        CocycleMode::Sampled { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let found = (0..count)
                .filter_map(|_| {
                    let [a, b, c] = [(); 3].map(|_| rng.gen_range(0..size));
                    tables.check(a, b, c)
                })
                .collect();
            (count, found, format!("sampled(seed={seed})"))
        }
    };
    let (failure_count, failures) = collect_failures(found.into_iter());
    CocycleReport {
        n,
        mode: label,
        triples,
        failure_count,
        failures,
    }
}

/// The `⋆`-product of the generator images spelled by a word.
pub fn evaluate_in_algebra<R: Coefficient>(n: usize, word: &Word) -> Result<AlgebraElement<R>, AlgebraError> {
    word.tokens().iter().try_fold(AlgebraElement::identity(n), |acc, &tok| {
        acc.star(&AlgebraElement::basis(atomic(n, tok)?))
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwistedFailure {
    pub relation: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwistedReport {
    pub preset: String,
    pub n: usize,
    pub checked: usize,
    pub failures: Vec<TwistedFailure>,
}

impl TwistedReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks every relation `d^a·u = d^b·v` of the twisted form of a preset as
/// an identity of algebra elements with integer polynomial coefficients.
pub fn verify_twisted_relations(preset: Preset, n: usize) -> Result<TwistedReport, AlgebraError> {
    let twisted = Preset {
        twisted: true,
        ..preset
    };
    let p = instantiate(twisted, n)?;
    let failures = p
        .relations
        .par_iter()
        .map(|r| -> Result<Option<TwistedFailure>, AlgebraError> {
            let lhs = evaluate_in_algebra::<i64>(n, &r.lhs)?.scale(&DeltaPoly::delta_pow(r.twist.0));
            let rhs = evaluate_in_algebra::<i64>(n, &r.rhs)?.scale(&DeltaPoly::delta_pow(r.twist.1));
            Ok((lhs != rhs).then(|| TwistedFailure {
                relation: r.to_string(),
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            }))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(TwistedReport {
        preset: twisted.to_string(),
        n,
        checked: p.relations.len(),
        failures: failures.into_iter().flatten().collect(),
    })
}
