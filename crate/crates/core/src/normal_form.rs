//! Constructive factorizations and generator words for arbitrary elements.
//!
//! Every element of the partition monoid factors as `left · middle · right`
//! with `left`, `right` in `J_n` and `middle` a partial injection; every
//! rook partition factors as `ō_P · core · ō_Q` with `core` rook-free.
//! These combine into words over `E ∪ T ∪ O` for singular elements and
//! over the adjacent transpositions for units.

use thiserror::Error;

use crate::diagram::{RookPartition, Vertex};
use crate::words::{e_ij, evaluate, o_set, t_set, Alphabet, Token, Word};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum NormalFormError {
    #[error("{0} has rook dots, so it is not in the partition monoid")]
    NotInPn(RookPartition),
    #[error("{0} is not a product of t_A words (blocks must have the form A ∪ A')")]
    NotSymmetricJn(RookPartition),
    #[error("{0} is not a singular partial injection")]
    NotSingularIn(RookPartition),
}

/// `α = left · middle · right` for `α` in the partition monoid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionFactors {
    /// Blocks `A_i ∪ A_i'` for the upper parts of transversals and `C ∪ C'`
    /// for upper non-transversal blocks.
    pub left: RookPartition,
    /// Transversals `{min A_i, min B_i'}`, everything else a singleton.
    pub middle: RookPartition,
    /// Blocks `B_i ∪ B_i'` and `D ∪ D'` from the lower row.
    pub right: RookPartition,
}

/// `α = ō_P · core · ō_Q`, where `P` and `Q'` are (possibly empty) blocks of `core`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RookFactors {
    pub upper_rooks: Vec<usize>,
    pub core: RookPartition,
    pub lower_rooks: Vec<usize>,
}

/// The diagram with rook dots on `A ∪ A'` and lines `{j, j'}` elsewhere.
pub fn rook_projection(n: usize, set: &[usize]) -> RookPartition {
    RookPartition::from_blocks(
        n,
        (1..=n)
            .filter(|j| !set.contains(j))
            .map(|j| [Vertex::Upper(j), Vertex::Lower(j)]),
    )
    .expect("projection blocks are disjoint")
}

/// Splits each block into its upper and lower points.
fn block_rows(alpha: &RookPartition) -> Vec<(Vec<usize>, Vec<usize>)> {
    alpha
        .blocks()
        .into_iter()
        .map(|b| {
            let up = b.iter().filter(|v| v.is_upper()).map(|v| v.point()).collect();
            let down = b.iter().filter(|v| !v.is_upper()).map(|v| v.point()).collect();
            (up, down)
        })
        .collect()
}

fn doubled(n: usize, sets: impl IntoIterator<Item = Vec<usize>>) -> RookPartition {
    RookPartition::from_blocks(
        n,
        sets.into_iter().map(|s| {
            s.iter()
                .map(|&i| Vertex::Upper(i))
                .chain(s.iter().map(|&i| Vertex::Lower(i)))
                .collect::<Vec<_>>()
        }),
    )
    .expect("doubled blocks are disjoint")
}

/// Factors an element of the partition monoid, choosing minimum representatives.
pub fn factor_bgd(alpha: &RookPartition) -> Result<PartitionFactors, NormalFormError> {
    if !alpha.rook_dots().is_empty() {
        return Err(NormalFormError::NotInPn(alpha.clone()));
    }
    let n = alpha.degree();
    let rows = block_rows(alpha);
    let uppers = rows.iter().map(|(u, _)| u.clone()).filter(|u| !u.is_empty());
    let lowers = rows.iter().map(|(_, d)| d.clone()).filter(|d| !d.is_empty());
    let pairs: Vec<(usize, usize)> = rows
        .iter()
        .filter(|(u, d)| !u.is_empty() && !d.is_empty())
        .map(|(u, d)| (u[0], d[0]))
        .collect();
    Ok(PartitionFactors {
        left: doubled(n, uppers),
        middle: RookPartition::partial_injection(n, &pairs).expect("representatives are distinct"),
        right: doubled(n, lowers),
    })
}

/// Splits off the rook dots of `α`.
pub fn factor_rook(alpha: &RookPartition) -> RookFactors {
    let n = alpha.degree();
    let upper_rooks = alpha.rook_points(true);
    let lower_rooks = alpha.rook_points(false);
    let mut blocks = alpha.blocks();
    if !upper_rooks.is_empty() {
        blocks.push(upper_rooks.iter().map(|&i| Vertex::Upper(i)).collect());
    }
    if !lower_rooks.is_empty() {
        blocks.push(lower_rooks.iter().map(|&i| Vertex::Lower(i)).collect());
    }
    RookFactors {
        core: RookPartition::from_blocks(n, blocks).expect("rook dots are unused vertices"),
        upper_rooks,
        lower_rooks,
    }
}

/// `t_{A_1} ⋯ t_{A_r}` for `α` whose blocks are all of the form `A ∪ A'`.
pub fn word_for_jn(alpha: &RookPartition) -> Result<Word, NormalFormError> {
    let rows = block_rows(alpha);
    let symmetric = alpha.rook_dots().is_empty() && rows.iter().all(|(u, d)| u == d);
    if !symmetric {
        return Err(NormalFormError::NotSymmetricJn(alpha.clone()));
    }
    Ok(rows.iter().fold(Word::empty(Alphabet::Eto), |w, (u, _)| {
        w.concat(&t_set(u)).expect("same alphabet")
    }))
}

/// The `(i, j)` sequence of `ē_ij` factors produced by [`word_for_in_singular`].
///
/// Reading left to right, `ē_ij` moves the point at position `j` to
/// position `i` and discards whatever sat at `i`. Positions start holding
/// their own labels; the moves kill every label outside the domain and
/// route the rest to their images, using an emptied position to break cycles.
pub fn in_singular_moves(gamma: &RookPartition) -> Result<Vec<(usize, usize)>, NormalFormError> {
    let n = gamma.degree();
    let m = gamma.classify();
    let stats = gamma.stats();
    if !m.symmetric_inverse || stats.rank == n || n < 2 {
        return Err(NormalFormError::NotSingularIn(gamma.clone()));
    }
    // image[p] = Some(q) when p ↦ q'
    let mut image = vec![None; n + 1];
    for b in block_rows(gamma) {
        if let ([p], [q]) = (b.0.as_slice(), b.1.as_slice()) {
            image[*p] = Some(*q);
        }
    }
    // slot[x] = label currently at position x
    let mut slot: Vec<Option<usize>> = (0..=n).map(Some).collect();
    slot[0] = None;
    let mut moves = Vec::new();
    let mut apply = |slot: &mut Vec<Option<usize>>, i: usize, j: usize| {
        slot[i] = slot[j].take();
        moves.push((i, j));
    };
    let first_free = (1..=n).find(|&p| image[p].is_none()).expect("singular");
    let source = (1..=n)
        .find(|&j| j != first_free && image[j] == Some(first_free))
        .unwrap_or_else(|| (1..=n).find(|&j| j != first_free).expect("n >= 2"));
    apply(&mut slot, first_free, source);
    let empty_slot = |slot: &[Option<usize>]| (1..=n).find(|&x| slot[x].is_none());
    for x in 1..=n {
        if let Some(label) = slot[x] {
            if image[label].is_none() {
                let h = empty_slot(&slot).expect("an emptied position exists");
                apply(&mut slot, x, h);
            }
        }
    }
    loop {
        let misplaced: Vec<usize> = (1..=n)
            .filter(|&x| matches!(slot[x], Some(l) if image[l] != Some(x)))
            .collect();
        if misplaced.is_empty() {
            break;
        }
        let direct = misplaced.iter().find_map(|&x| {
            let target = image[slot[x].unwrap()].unwrap();
            slot[target].is_none().then_some((target, x))
        });
        match direct {
            Some((target, x)) => apply(&mut slot, target, x),
            None => {
                let x = misplaced[0];
                let h = empty_slot(&slot).expect("an emptied position exists");
                apply(&mut slot, h, x);
            }
        }
    }
    Ok(moves)
}

/// A word of `e_ij` macros (expanded over `ETO`) evaluating to the singular
/// partial injection `γ`. In degree 1 the only such element is `ē_1`.
pub fn word_for_in_singular(gamma: &RookPartition) -> Result<Word, NormalFormError> {
    if gamma.degree() == 1 && gamma.classify().symmetric_inverse && gamma.rank() == 0 {
        return Ok(Word::new(Alphabet::Eto, vec![Token::E(1)]).expect("e1 is in ETO"));
    }
    let moves = in_singular_moves(gamma)?;
    Ok(moves.iter().fold(Word::empty(Alphabet::Eto), |w, &(i, j)| {
        w.concat(&e_ij(i, j)).expect("same alphabet")
    }))
}

/// Adjacent transpositions `s_{a1} ⋯ s_{ak}` for a permutation, by bubble sort.
pub fn word_for_unit(images: &[usize]) -> Word {
    let mut img = images.to_vec();
    let mut tokens = Vec::new();
    let mut swapped = true;
    while swapped {
        swapped = false;
        for i in 0..img.len().saturating_sub(1) {
            if img[i] > img[i + 1] {
                img.swap(i, i + 1);
                tokens.push(Token::S(i + 1));
                swapped = true;
            }
        }
    }
    Word::new(Alphabet::Seqo, tokens).expect("s tokens are in SEQO")
}

/// A word evaluating to `α`: over the adjacent transpositions for units,
/// and over `E ∪ T ∪ O` otherwise. The singular word starts as
/// `o_P · t-words · e_ij-words · t-words · o_Q` and is then shortened by
/// dropping every letter whose removal leaves the value unchanged.
pub fn decompose(alpha: &RookPartition) -> Word {
    if let Some(images) = alpha.as_permutation() {
        return word_for_unit(&images);
    }
    let n = alpha.degree();
    let rook = factor_rook(alpha);
    let parts = factor_bgd(&rook.core).expect("core is rook-free");
    let raw = [
        o_set(&rook.upper_rooks),
        word_for_jn(&parts.left).expect("left factor is symmetric"),
        word_for_in_singular(&parts.middle).expect("middle factor is singular"),
        word_for_jn(&parts.right).expect("right factor is symmetric"),
        o_set(&rook.lower_rooks),
    ]
    .iter()
    .fold(Word::empty(Alphabet::Eto), |w, x| w.concat(x).expect("same alphabet"));
    shorten(n, alpha, raw)
}

fn shorten(n: usize, target: &RookPartition, word: Word) -> Word {
    let mut tokens = word.tokens().to_vec();
    // repeat passes until no single deletion preserves the value
    let mut changed = true;
    while changed {
        changed = false;
        let mut i = 0;
        while i < tokens.len() {
            let mut trial = tokens.clone();
            trial.remove(i);
            let candidate = Word::new(Alphabet::Eto, trial).expect("subword of an ETO word");
            if !candidate.is_empty() && evaluate(n, &candidate).ok().as_ref() == Some(target) {
                tokens = candidate.tokens().to_vec();
                changed = true;
            } else {
                i += 1;
            }
        }
    }
    Word::new(Alphabet::Eto, tokens).expect("subword of an ETO word")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lit(s: &str) -> RookPartition {
        s.parse().unwrap()
    }

    fn eval(n: usize, w: &Word) -> RookPartition {
        evaluate(n, w).unwrap()
    }

    #[test]
    fn partition_factorization_of_the_ten_point_example() {
        let alpha = lit("n=10; 1,2,4,3'; 5,6,4',5'; 7,8,8'; 3; 9,10; 1'; 2',6',7'; 9',10'");
        let f = factor_bgd(&alpha).unwrap();
        assert_eq!(
            f.left,
            lit("n=10; 1,2,4,1',2',4'; 3,3'; 5,6,5',6'; 7,8,7',8'; 9,10,9',10'")
        );
        assert_eq!(
            f.right,
            lit("n=10; 1,1'; 2,6,7,2',6',7'; 3,3'; 4,5,4',5'; 8,8'; 9,10,9',10'")
        );
        assert_eq!(
            f.middle,
            RookPartition::partial_injection(10, &[(1, 3), (5, 4), (7, 8)]).unwrap()
        );
        assert_eq!(f.left.product(&f.middle).product(&f.right), alpha);
    }

    #[test]
    fn partition_factorization_small_cases() {
        let id = RookPartition::identity(3);
        let f = factor_bgd(&id).unwrap();
        assert_eq!((f.left, f.middle, f.right), (id.clone(), id.clone(), id));
        let e1 = lit("n=2; 1; 1'; 2,2'");
        let f = factor_bgd(&e1).unwrap();
        assert_eq!(f.left, RookPartition::identity(2));
        assert_eq!(f.middle, e1);
        assert_eq!(f.right, RookPartition::identity(2));
        assert!(matches!(
            factor_bgd(&lit("n=2; 2,2'")),
            Err(NormalFormError::NotInPn(_))
        ));
    }

    #[test]
    fn rook_factorization_of_the_ten_point_example() {
        let alpha = lit("n=10; 1,2,4,3'; 5,6,4',5'; 7,8,8'; 2',6',7'; 9',10'");
        let f = factor_rook(&alpha);
        assert_eq!(f.upper_rooks, vec![3, 9, 10]);
        assert_eq!(f.lower_rooks, vec![1]);
        assert_eq!(
            f.core,
            lit("n=10; 1,2,4,3'; 5,6,4',5'; 7,8,8'; 3,9,10; 1'; 2',6',7'; 9',10'")
        );
        let recomposed = rook_projection(10, &f.upper_rooks)
            .product(&f.core)
            .product(&rook_projection(10, &f.lower_rooks));
        assert_eq!(recomposed, alpha);
        assert_eq!(factor_rook(&f.core).core, f.core);
    }

    #[test]
    fn rook_factorization_small_cases() {
        let o1 = lit("n=2; 2,2'");
        let f = factor_rook(&o1);
        assert_eq!((f.upper_rooks.clone(), f.lower_rooks.clone()), (vec![1], vec![1]));
        assert_eq!(f.core, lit("n=2; 1; 1'; 2,2'"));
        let p = lit("n=3; 1,2; 3,1'; 2',3'");
        let f = factor_rook(&p);
        assert!(f.upper_rooks.is_empty() && f.lower_rooks.is_empty());
        assert_eq!(f.core, p);
    }

    #[test]
    fn jn_words() {
        assert!(word_for_jn(&RookPartition::identity(3)).unwrap().is_empty());
        let a = lit("n=3; 1,2,1',2'; 3,3'");
        assert_eq!(word_for_jn(&a).unwrap().to_string(), "t1,2");
        let b = lit("n=3; 1,2,3,1',2',3'");
        let w = word_for_jn(&b).unwrap();
        assert_eq!(w.to_string(), "t1,2 t2,3");
        assert_eq!(eval(3, &w), b);
        assert!(word_for_jn(&lit("n=2; 1,2'; 2,1'")).is_err());
    }

    #[test]
    fn in_singular_words() {
        let e12 = lit("n=2; 1; 2,1'; 2'");
        assert_eq!(in_singular_moves(&e12).unwrap(), vec![(1, 2)]);
        let partial_identity = RookPartition::partial_injection(2, &[(1, 1)]).unwrap();
        assert_eq!(in_singular_moves(&partial_identity).unwrap(), vec![(2, 1), (1, 2)]);
        let empty = RookPartition::partial_injection(2, &[]).unwrap();
        assert_eq!(eval(2, &word_for_in_singular(&empty).unwrap()), empty);
        let cycle = RookPartition::partial_injection(4, &[(1, 2), (2, 3), (3, 1)]).unwrap();
        assert_eq!(eval(4, &word_for_in_singular(&cycle).unwrap()), cycle);
        assert!(matches!(
            word_for_in_singular(&RookPartition::identity(3)),
            Err(NormalFormError::NotSingularIn(_))
        ));
    }

    #[test]
    fn decompose_examples() {
        let o1 = lit("n=2; 2,2'");
        assert_eq!(decompose(&o1).to_string(), "o1");
        let e1 = lit("n=3; 1; 1'; 2,2'; 3,3'");
        assert_eq!(decompose(&e1).to_string(), "e1");
        assert_eq!(eval(2, &decompose(&o1)), o1);
        let s1 = lit("n=3; 1,2'; 2,1'; 3,3'");
        assert_eq!(decompose(&s1).to_string(), "s1");
        let p = RookPartition::permutation(&[3, 1, 4, 2]).unwrap();
        assert_eq!(eval(4, &decompose(&p)), p);
        assert!(decompose(&RookPartition::identity(3)).is_empty());
    }
}
