//! Rook partitions: canonical storage, composition with twist count,
//! the upside-down involution, and the usual statistics.
//!
//! A rook partition of degree `n` is a set partition of a subset of the
//! `2n` vertices `1..n` (upper row) and `1'..n'` (lower row). Vertices left
//! out of every block are rook dots.
//!
//! Internally vertex `i` sits at index `i-1` and vertex `i'` at `n+i-1`.
//! Every vertex carries a block label or the rook marker, and labels are
//! numbered in order of the least vertex of each block, so two values are
//! equal exactly when they describe the same rook partition.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::dsu::UnionFind;

/// Largest supported degree (labels are stored in a byte).
pub const MAX_DEGREE: usize = 127;

const ROOK: u8 = u8::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Vertex {
    Upper(usize),
    Lower(usize),
}

impl Vertex {
    fn index(self, n: usize) -> usize {
        match self {
            Vertex::Upper(i) => i - 1,
            Vertex::Lower(i) => n + i - 1,
        }
    }

    fn from_index(idx: usize, n: usize) -> Vertex {
        if idx < n {
            Vertex::Upper(idx + 1)
        } else {
            Vertex::Lower(idx - n + 1)
        }
    }

    pub fn point(self) -> usize {
        match self {
            Vertex::Upper(i) | Vertex::Lower(i) => i,
        }
    }

    pub fn is_upper(self) -> bool {
        matches!(self, Vertex::Upper(_))
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vertex::Upper(i) => write!(f, "{i}"),
            Vertex::Lower(i) => write!(f, "{i}'"),
        }
    }
}

impl FromStr for Vertex {
    type Err = DiagramError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (digits, lower) = match s.strip_suffix('\'') {
            Some(rest) => (rest.trim_end(), true),
            None => (s, false),
        };
        let i: usize = digits
            .parse()
            .map_err(|_| DiagramError::Parse(format!("bad vertex token `{s}`")))?;
        Ok(if lower { Vertex::Lower(i) } else { Vertex::Upper(i) })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("vertex {0} appears in more than one block")]
    OverlappingBlocks(Vertex),
    #[error("vertex {vertex} is out of range for degree {degree}")]
    VertexOutOfRange { vertex: Vertex, degree: usize },
    #[error("blocks must be non-empty")]
    EmptyBlock,
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("degree {0} exceeds the supported maximum {MAX_DEGREE}")]
    DegreeTooLarge(usize),
    #[error("cannot parse diagram literal: {0}")]
    Parse(String),
}

/// An element of the rook partition monoid `RP_n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RookPartition {
    degree: u8,
    labels: Box<[u8]>,
}

impl RookPartition {
    /// Builds a value from arbitrary per-vertex tags (`None` = rook dot),
    /// relabelling blocks canonically.
    fn canonical<I>(n: usize, tags: I) -> Self
    where
        I: IntoIterator<Item = Option<usize>>,
    {
        let mut seen: Vec<(usize, u8)> = Vec::new();
        let labels: Box<[u8]> = tags
            .into_iter()
            .map(|tag| match tag {
                None => ROOK,
                Some(t) => match seen.iter().find(|(k, _)| *k == t) {
                    Some(&(_, l)) => l,
                    None => {
                        let l = seen.len() as u8;
                        seen.push((t, l));
                        l
                    }
                },
            })
            .collect();
        debug_assert_eq!(labels.len(), 2 * n);
        RookPartition {
            degree: n as u8,
            labels,
        }
    }

    pub fn identity(n: usize) -> Self {
        assert!(n <= MAX_DEGREE, "degree {n} too large");
        Self::canonical(n, (0..2 * n).map(|v| Some(v % n.max(1))))
    }

    /// The diagram whose every vertex is a rook dot.
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_DEGREE, "degree {n} too large");
        Self::canonical(n, std::iter::repeat_n(None, 2 * n))
    }

    /// Builds a rook partition from its blocks; unlisted vertices become rook dots.
    pub fn from_blocks<B, V>(n: usize, blocks: B) -> Result<Self, DiagramError>
    where
        B: IntoIterator<Item = V>,
        V: IntoIterator<Item = Vertex>,
    {
        if n > MAX_DEGREE {
            return Err(DiagramError::DegreeTooLarge(n));
        }
        let mut tags: Vec<Option<usize>> = vec![None; 2 * n];
        for (b, block) in blocks.into_iter().enumerate() {
            let mut empty = true;
            for v in block {
                empty = false;
                let i = v.point();
                if i == 0 || i > n {
                    return Err(DiagramError::VertexOutOfRange { vertex: v, degree: n });
                }
                let slot = &mut tags[v.index(n)];
                if slot.is_some() {
                    return Err(DiagramError::OverlappingBlocks(v));
                }
                *slot = Some(b);
            }
            if empty {
                return Err(DiagramError::EmptyBlock);
            }
        }
        Ok(Self::canonical(n, tags))
    }

    /// The permutation diagram with blocks `{i, images[i-1]'}`.
    pub fn permutation(images: &[usize]) -> Result<Self, DiagramError> {
        let n = images.len();
        Self::from_blocks(
            n,
            images
                .iter()
                .enumerate()
                .map(|(i, &j)| [Vertex::Upper(i + 1), Vertex::Lower(j)]),
        )
    }

    /// The element of `I_n` with transversals `{i, j'}` for each pair and
    /// singleton blocks elsewhere.
    pub fn partial_injection(n: usize, pairs: &[(usize, usize)]) -> Result<Self, DiagramError> {
        let mut blocks: Vec<Vec<Vertex>> = pairs
            .iter()
            .map(|&(i, j)| vec![Vertex::Upper(i), Vertex::Lower(j)])
            .collect();
        for i in 1..=n {
            if !pairs.iter().any(|&(a, _)| a == i) {
                blocks.push(vec![Vertex::Upper(i)]);
            }
            if !pairs.iter().any(|&(_, b)| b == i) {
                blocks.push(vec![Vertex::Lower(i)]);
            }
        }
        Self::from_blocks(n, blocks)
    }

    pub fn degree(&self) -> usize {
        self.degree as usize
    }

    fn n(&self) -> usize {
        self.degree as usize
    }

    pub fn is_rook_dot(&self, v: Vertex) -> bool {
        self.labels[v.index(self.n())] == ROOK
    }

    /// Block label of `v`, or `None` for a rook dot.
    pub fn label(&self, v: Vertex) -> Option<usize> {
        match self.labels[v.index(self.n())] {
            ROOK => None,
            l => Some(l as usize),
        }
    }

    pub fn block_count(&self) -> usize {
        self.labels
            .iter()
            .filter(|&&l| l != ROOK)
            .map(|&l| l as usize + 1)
            .max()
            .unwrap_or(0)
    }

    /// Blocks in canonical order, each listing upper vertices before lower ones.
    pub fn blocks(&self) -> Vec<Vec<Vertex>> {
        let n = self.n();
        let mut out = vec![Vec::new(); self.block_count()];
        for (idx, &l) in self.labels.iter().enumerate() {
            if l != ROOK {
                out[l as usize].push(Vertex::from_index(idx, n));
            }
        }
        out
    }

    pub fn rook_dots(&self) -> Vec<Vertex> {
        let n = self.n();
        self.labels
            .iter()
            .enumerate()
            .filter(|(_, &l)| l == ROOK)
            .map(|(idx, _)| Vertex::from_index(idx, n))
            .collect()
    }

    /// Upper (`upper = true`) or lower rook dots, as points of `[n]`.
    pub fn rook_points(&self, upper: bool) -> Vec<usize> {
        let n = self.n();
        let range = if upper { 0..n } else { n..2 * n };
        range
            .filter(|&idx| self.labels[idx] == ROOK)
            .map(|idx| idx % n + 1)
            .collect()
    }

    fn upper_labels(&self) -> &[u8] {
        &self.labels[..self.n()]
    }

    fn lower_labels(&self) -> &[u8] {
        &self.labels[self.n()..]
    }

    fn transversal_mask(&self) -> Vec<bool> {
        let k = self.block_count();
        let mut up = vec![false; k];
        let mut down = vec![false; k];
        for &l in self.upper_labels().iter().filter(|&&l| l != ROOK) {
            up[l as usize] = true;
        }
        for &l in self.lower_labels().iter().filter(|&&l| l != ROOK) {
            down[l as usize] = true;
        }
        up.iter().zip(down).map(|(&u, d)| u && d).collect()
    }

    pub fn rank(&self) -> usize {
        self.transversal_mask().into_iter().filter(|&t| t).count()
    }

    /// Composes `self` then `other`, returning the product and the number of
    /// product-graph components made only of black middle vertices.
    pub fn compose(&self, other: &RookPartition) -> Result<(RookPartition, usize), DiagramError> {
        if self.degree != other.degree {
            return Err(DiagramError::DegreeMismatch {
                left: self.n(),
                right: other.n(),
            });
        }
        Ok(self.compose_unchecked(other))
    }

    /// Product in `RP_n`, ignoring the twist count.
    ///
    /// Panics on a degree mismatch.
    pub fn product(&self, other: &RookPartition) -> RookPartition {
        self.compose(other).expect("degree mismatch").0
    }

    pub(crate) fn compose_unchecked(&self, other: &RookPartition) -> (RookPartition, usize) {
        let n = self.n();
        // Nodes 0..n upper, n..2n middle, 2n..3n lower. Vertex index v of
        // `self` is node v, vertex index v of `other` is node v + n.
        let mut uf = UnionFind::new(3 * n);
        let mut white = vec![false; 3 * n];
        let mut first = [u16::MAX; 256];
        for (v, &l) in self.labels.iter().enumerate() {
            if l == ROOK {
                white[v] = true;
            } else if first[l as usize] == u16::MAX {
                first[l as usize] = v as u16;
            } else {
                uf.union(first[l as usize] as usize, v);
            }
        }
        let mut first = [u16::MAX; 256];
        for (v, &l) in other.labels.iter().enumerate() {
            let node = v + n;
            if l == ROOK {
                white[node] = true;
            } else if first[l as usize] == u16::MAX {
                first[l as usize] = node as u16;
            } else {
                uf.union(first[l as usize] as usize, node);
            }
        }
        let mut root_white = vec![false; 3 * n];
        let mut root_outer = vec![false; 3 * n];
        for (node, &is_white) in white.iter().enumerate() {
            let r = uf.find(node);
            root_white[r] |= is_white;
            root_outer[r] |= node < n || node >= 2 * n;
        }
        let mut counted = vec![false; 3 * n];
        let mut floating = 0;
        for node in n..2 * n {
            let r = uf.find(node);
            if !counted[r] && !root_outer[r] && !root_white[r] {
                floating += 1;
            }
            counted[r] = true;
        }
        let mut relabel = vec![ROOK; 3 * n];
        let mut next = 0u8;
        let labels: Box<[u8]> = (0..2 * n)
            .map(|v| {
                let node = if v < n { v } else { v + n };
                let r = uf.find(node);
                if root_white[r] {
                    ROOK
                } else {
                    if relabel[r] == ROOK {
                        relabel[r] = next;
                        next += 1;
                    }
                    relabel[r]
                }
            })
            .collect();
        (
            RookPartition {
                degree: self.degree,
                labels,
            },
            floating,
        )
    }

    /// The upside-down reflection `α*`.
    pub fn involute(&self) -> RookPartition {
        let n = self.n();
        let tags = self
            .lower_labels()
            .iter()
            .chain(self.upper_labels())
            .map(|&l| (l != ROOK).then_some(l as usize));
        Self::canonical(n, tags)
    }

    pub fn stats(&self) -> DiagramStats {
        let n = self.n();
        let trans = self.transversal_mask();
        let dom = (1..=n)
            .filter(|&i| {
                let l = self.upper_labels()[i - 1];
                l != ROOK && trans[l as usize]
            })
            .collect();
        let codom = (1..=n)
            .filter(|&i| {
                let l = self.lower_labels()[i - 1];
                l != ROOK && trans[l as usize]
            })
            .collect();
        DiagramStats {
            rank: trans.iter().filter(|&&t| t).count(),
            dom,
            codom,
            ker: Equivalence::from_labels(self.upper_labels()),
            coker: Equivalence::from_labels(self.lower_labels()),
            supp: self
                .labels
                .iter()
                .enumerate()
                .filter(|(_, &l)| l != ROOK)
                .map(|(idx, _)| Vertex::from_index(idx, n))
                .collect(),
        }
    }

    pub fn classify(&self) -> Membership {
        let n = self.n();
        let stats = self.stats();
        let no_rooks = self.labels.iter().all(|&l| l != ROOK);
        let trivial = stats.ker.is_trivial() && stats.coker.is_trivial();
        let full = |s: &[usize]| s.len() == n;
        // supp = dom ∪ codom' means every non-rook vertex lies on a transversal
        let rook_support = stats.supp.len() == stats.dom.len() + stats.codom.len();
        Membership {
            partition: no_rooks,
            symmetric_inverse: no_rooks && trivial,
            dual_symmetric_inverse: no_rooks && full(&stats.dom) && full(&stats.codom),
            symmetric: stats.rank == n,
            rook: trivial && rook_support,
            singular: stats.rank < n,
        }
    }

    /// For a unit, the images `i ↦ j` of each point.
    pub fn as_permutation(&self) -> Option<Vec<usize>> {
        let n = self.n();
        if self.rank() != n {
            return None;
        }
        Some(
            (0..n)
                .map(|i| {
                    let l = self.labels[i];
                    self.lower_labels().iter().position(|&m| m == l).unwrap() + 1
                })
                .collect(),
        )
    }
}

impl fmt::Display for RookPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={}", self.degree)?;
        for block in self.blocks() {
            write!(f, "; ")?;
            for (k, v) in block.iter().enumerate() {
                if k > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{v}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for RookPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RookPartition({self})")
    }
}

impl FromStr for RookPartition {
    type Err = DiagramError;

    /// Parses `n=<int>; <block>; <block>...`, where a block is a
    /// comma-separated list of `i` (upper) and `i'` (lower) tokens.
    /// `n=<int>` alone denotes the all-rook-dot diagram.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut parts = s.trim().split(';');
        let head = parts.next().unwrap_or_default().trim();
        let n: usize = head
            .strip_prefix("n")
            .map(str::trim_start)
            .and_then(|h| h.strip_prefix('='))
            .ok_or_else(|| DiagramError::Parse(format!("expected `n=<int>`, found `{head}`")))?
            .trim()
            .parse()
            .map_err(|_| DiagramError::Parse(format!("bad degree in `{head}`")))?;
        let mut blocks = Vec::new();
        for part in parts {
            let part = part.trim();
            if part.is_empty() {
                return Err(DiagramError::EmptyBlock);
            }
            let block = part
                .split(',')
                .map(str::parse::<Vertex>)
                .collect::<Result<Vec<_>, _>>()?;
            blocks.push(block);
        }
        RookPartition::from_blocks(n, blocks)
    }
}

/// An equivalence on `[n]`, stored as sorted classes ordered by least element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Equivalence(pub Vec<Vec<usize>>);

impl Equivalence {
    fn from_labels(labels: &[u8]) -> Self {
        let mut classes: Vec<(u8, Vec<usize>)> = Vec::new();
        for (i, &l) in labels.iter().enumerate() {
            match classes.iter_mut().find(|(k, _)| l != ROOK && *k == l) {
                Some((_, c)) => c.push(i + 1),
                None => classes.push((l, vec![i + 1])),
            }
        }
        Equivalence(classes.into_iter().map(|(_, c)| c).collect())
    }

    /// The trivial relation Δ on `[n]`.
    pub fn trivial(n: usize) -> Self {
        Equivalence((1..=n).map(|i| vec![i]).collect())
    }

    /// The equivalence whose only non-trivial class is `{i, j}`.
    pub fn pair(n: usize, i: usize, j: usize) -> Self {
        let (i, j) = (i.min(j), i.max(j));
        Equivalence(
            (1..=n)
                .filter(|&k| k != j)
                .map(|k| if k == i { vec![i, j] } else { vec![k] })
                .collect(),
        )
    }

    pub fn is_trivial(&self) -> bool {
        self.0.iter().all(|c| c.len() == 1)
    }

    /// Whether `self ⊆ other` as relations.
    pub fn refines(&self, other: &Equivalence) -> bool {
        self.0
            .iter()
            .all(|c| other.0.iter().any(|d| c.iter().all(|x| d.contains(x))))
    }
}

impl fmt::Display for Equivalence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self
            .0
            .iter()
            .map(|c| c.iter().map(usize::to_string).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "({})", body.join("|"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramStats {
    pub rank: usize,
    pub dom: Vec<usize>,
    pub codom: Vec<usize>,
    pub ker: Equivalence,
    pub coker: Equivalence,
    pub supp: Vec<Vertex>,
}

/// Membership in the distinguished submonoids of `RP_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Membership {
    /// `P_n`: no rook dots.
    pub partition: bool,
    /// `I_n`: partial permutations.
    pub symmetric_inverse: bool,
    /// `J_n`: every block transversal.
    pub dual_symmetric_inverse: bool,
    /// `S_n`: the group of units.
    pub symmetric: bool,
    /// `R_n`: partial permutations with rook dots.
    pub rook: bool,
    pub singular: bool,
}

impl fmt::Display for Membership {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let yn = |b: bool| if b { "yes" } else { "no" };
        write!(
            f,
            "P_n={} I_n={} J_n={} S_n={} R_n={} singular={}",
            yn(self.partition),
            yn(self.symmetric_inverse),
            yn(self.dual_symmetric_inverse),
            yn(self.symmetric),
            yn(self.rook),
            yn(self.singular)
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lit(s: &str) -> RookPartition {
        s.parse().unwrap()
    }

    fn ten_point_alpha() -> RookPartition {
        lit("n=10; 1,2,4,3'; 5,6,4',5'; 7,8,8'; 2',6',7'; 9',10'")
    }

    fn ten_point_beta() -> RookPartition {
        // upper white 1,8,10; lower white 3'
        lit("n=10; 2,3; 4,4',5'; 5,6; 7,6',7',10'; 9,8',9'; 1',2'")
    }

    #[test]
    fn ten_point_example_rook_dots() {
        let a = ten_point_alpha();
        assert_eq!(
            a.rook_dots(),
            vec![Vertex::Upper(3), Vertex::Upper(9), Vertex::Upper(10), Vertex::Lower(1)]
        );
        assert_eq!(a.block_count(), 5);
    }

    #[test]
    fn ten_point_product() {
        let (ab, _) = ten_point_alpha().compose(&ten_point_beta()).unwrap();
        let expected = lit("n=10; 1,2,4,5,6,4',5',6',7',10'; 1',2'");
        assert_eq!(ab, expected);
        assert_eq!(
            ab.rook_dots().into_iter().map(|v| v.to_string()).collect::<Vec<_>>(),
            ["3", "7", "8", "9", "10", "3'", "8'", "9'"]
        );
    }

    #[test]
    fn literal_round_trip_and_order_insensitivity() {
        let a = ten_point_alpha();
        assert_eq!(a.to_string(), "n=10; 1,2,4,3'; 5,6,4',5'; 7,8,8'; 2',6',7'; 9',10'");
        let shuffled = lit("n=10; 10',9'; 8',7,8; 7',6',2'; 3',4,1,2; 5',4',6,5");
        assert_eq!(a, shuffled);
        assert_eq!(lit("n=2").to_string(), "n=2");
        assert_eq!(RookPartition::empty(2), lit("n=2"));
    }

    #[test]
    fn from_blocks_errors() {
        use Vertex::*;
        assert_eq!(
            RookPartition::from_blocks(2, vec![vec![Upper(1), Upper(2)], vec![Upper(1), Lower(1)]]),
            Err(DiagramError::OverlappingBlocks(Upper(1)))
        );
        assert_eq!(
            RookPartition::from_blocks(2, vec![vec![Upper(3)]]),
            Err(DiagramError::VertexOutOfRange {
                vertex: Upper(3),
                degree: 2
            })
        );
        assert_eq!(
            RookPartition::from_blocks(2, vec![Vec::<Vertex>::new()]),
            Err(DiagramError::EmptyBlock)
        );
        assert!("n=2; 1,0".parse::<RookPartition>().is_err());
        assert!("m=2; 1".parse::<RookPartition>().is_err());
        assert!("n=2; 1;; 2".parse::<RookPartition>().is_err());
    }

    #[test]
    fn identity_literal() {
        assert_eq!(RookPartition::identity(3), lit("n=3; 1,1'; 2,2'; 3,3'"));
        assert_eq!(RookPartition::identity(0).to_string(), "n=0");
    }

    #[test]
    fn twist_counts_only_black_floating_components() {
        let e1 = lit("n=2; 1; 1'; 2,2'");
        let o1 = lit("n=2; 2,2'");
        assert_eq!(e1.compose(&e1).unwrap(), (e1.clone(), 1));
        assert_eq!(o1.compose(&o1).unwrap(), (o1.clone(), 0));
        assert!(e1.compose(&RookPartition::identity(3)).is_err());
    }

    #[test]
    fn involution_examples() {
        let e12 = lit("n=2; 1; 2,1'; 2'");
        let e21 = lit("n=2; 1,2'; 2; 1'");
        assert_eq!(e12.involute(), e21);
        let flipped = lit("n=10; 3,1',2',4'; 4,5,5',6'; 8,7',8'; 2,6,7; 9,10");
        assert_eq!(ten_point_alpha().involute(), flipped);
        assert_eq!(flipped.rook_points(true), vec![1]);
        assert_eq!(flipped.rook_points(false), vec![3, 9, 10]);
    }

    #[test]
    fn ten_point_statistics() {
        let s = ten_point_alpha().stats();
        assert_eq!(s.rank, 3);
        assert_eq!(s.dom, vec![1, 2, 4, 5, 6, 7, 8]);
        assert_eq!(s.codom, vec![3, 4, 5, 8]);
        assert_eq!(s.ker.to_string(), "(1,2,4|3|5,6|7,8|9|10)");
        assert_eq!(s.coker.to_string(), "(1|2,6,7|3|4,5|8|9,10)");
        assert_eq!(s.supp.len(), 16);
    }

    #[test]
    fn statistics_of_small_generators() {
        let id = RookPartition::identity(4).stats();
        assert_eq!(id.rank, 4);
        assert!(id.ker.is_trivial() && id.coker.is_trivial());
        let o1 = lit("n=2; 2,2'").stats();
        assert_eq!((o1.rank, o1.dom.clone(), o1.codom.clone()), (1, vec![2], vec![2]));
        assert_eq!(o1.ker, Equivalence::trivial(2));
        assert_eq!(Equivalence::pair(3, 2, 1).to_string(), "(1,2|3)");
    }

    #[test]
    fn seven_point_memberships() {
        let rp = lit("n=7; 1,2,3,3',4',5'; 4,5; 1',7'; 6'");
        let p = lit("n=7; 1,2,3,3',4',5'; 4,5; 6; 7; 1',7'; 2'; 6'");
        let j = lit("n=7; 1,2,3,3',4',5'; 4,5,6,6'; 7,1',2',7'");
        let i = lit("n=7; 1,2'; 2; 3,3'; 4,7'; 5; 6,5'; 7; 1'; 4'; 6'");
        let r = lit("n=7; 1,2'; 3,3'; 4,7'; 6,5'");
        let s = RookPartition::permutation(&[2, 1, 3, 7, 4, 5, 6]).unwrap();
        let flags = |m: Membership| {
            [
                m.partition,
                m.symmetric_inverse,
                m.dual_symmetric_inverse,
                m.symmetric,
                m.rook,
            ]
        };
        assert_eq!(flags(rp.classify()), [false; 5]);
        assert_eq!(flags(p.classify()), [true, false, false, false, false]);
        assert_eq!(flags(j.classify()), [true, false, true, false, false]);
        assert_eq!(flags(i.classify()), [true, true, false, false, false]);
        assert_eq!(flags(r.classify()), [false, false, false, false, true]);
        assert_eq!(flags(s.classify()), [true; 5]);
        assert!(!s.classify().singular && rp.classify().singular);
    }

    #[test]
    fn o1_classification() {
        let m = lit("n=2; 2,2'").classify();
        assert!(m.rook && m.singular);
        assert!(!m.partition && !m.symmetric_inverse && !m.dual_symmetric_inverse && !m.symmetric);
        let id = RookPartition::identity(3).classify();
        assert!(id.partition && id.symmetric_inverse && id.dual_symmetric_inverse && id.symmetric && id.rook);
        assert!(!id.singular);
    }

    #[test]
    fn permutation_round_trip() {
        let p = RookPartition::permutation(&[3, 1, 2]).unwrap();
        assert_eq!(p.as_permutation(), Some(vec![3, 1, 2]));
        assert_eq!(lit("n=2; 2,2'").as_permutation(), None);
    }
}
