//! Concrete closures of diagram generating sets, independent cardinality
//! oracles, and exhaustive generating-set searches.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use itertools::Itertools;
use thiserror::Error;

use crate::diagram::RookPartition;
use crate::words::{atomic, Token, WordError};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error("closure exceeded the cap of {cap} elements")]
    CapExceeded { cap: usize },
    #[error("generators have mixed degrees {0} and {1}")]
    DegreeMismatch(usize, usize),
    #[error("at least one generator is required")]
    NoGenerators,
    #[error("oracle input {0} is too large (at most 12 vertices)")]
    TooLarge(usize),
    #[error("search would test {combinations} subsets, above the limit {limit}")]
    SearchTooLarge { combinations: u128, limit: u128 },
    #[error(transparent)]
    Word(#[from] WordError),
}

const ROOT: u32 = u32::MAX;

/// A closed set of diagrams with its right Cayley graph.
#[derive(Clone, Debug)]
pub struct MonoidTable {
    degree: usize,
    elements: Vec<RookPartition>,
    generators: Vec<RookPartition>,
    generator_names: Vec<String>,
    /// `right_action[i * k + g]` is the index of `elements[i] * generators[g]`.
    right_action: Vec<u32>,
    /// BFS tree: the element and generator this element was first reached by.
    parent: Vec<(u32, u32)>,
    index: HashMap<RookPartition, u32>,
    has_identity: bool,
}

/// Breadth-first closure of `gens` under right multiplication.
///
/// With `include_identity` the identity is element 0 and the result is the
/// generated monoid; otherwise it is the generated semigroup and the
/// generators (deduplicated) come first.
pub fn closure(
    n: usize,
    gens: &[RookPartition],
    include_identity: bool,
    cap: usize,
) -> Result<MonoidTable, EnumerationError> {
    let names = (0..gens.len()).map(|g| format!("g{g}")).collect();
    closure_named(n, gens, names, include_identity, cap)
}

/// Closure of the images of generator tokens, with witnesses spelled in those tokens.
pub fn closure_of_tokens(
    n: usize,
    tokens: &[Token],
    include_identity: bool,
    cap: usize,
) -> Result<MonoidTable, EnumerationError> {
    let gens = tokens.iter().map(|&t| atomic(n, t)).collect::<Result<Vec<_>, _>>()?;
    let names = tokens.iter().map(Token::to_string).collect();
    closure_named(n, &gens, names, include_identity, cap)
}

fn closure_named(
    n: usize,
    gens: &[RookPartition],
    generator_names: Vec<String>,
    include_identity: bool,
    cap: usize,
) -> Result<MonoidTable, EnumerationError> {
    if gens.is_empty() {
        return Err(EnumerationError::NoGenerators);
    }
    if let Some(g) = gens.iter().find(|g| g.degree() != n) {
        return Err(EnumerationError::DegreeMismatch(n, g.degree()));
    }
    let k = gens.len();
    let mut t = MonoidTable {
        degree: n,
        elements: Vec::new(),
        generators: gens.to_vec(),
        generator_names,
        right_action: Vec::new(),
        parent: Vec::new(),
        index: HashMap::new(),
        has_identity: include_identity,
    };
    let push = |t: &mut MonoidTable, d: RookPartition, parent: (u32, u32)| -> Result<u32, EnumerationError> {
        if let Some(&i) = t.index.get(&d) {
            return Ok(i);
        }
        if t.elements.len() >= cap {
            return Err(EnumerationError::CapExceeded { cap });
        }
        let i = t.elements.len() as u32;
        t.index.insert(d.clone(), i);
        t.elements.push(d);
        t.parent.push(parent);
        Ok(i)
    };
    if include_identity {
        push(&mut t, RookPartition::identity(n), (ROOT, ROOT))?;
    } else {
        for (g, d) in gens.iter().enumerate() {
            push(&mut t, d.clone(), (ROOT, g as u32))?;
        }
    }
    let mut next = 0;
    while next < t.elements.len() {
        for g in 0..k {
            let product = t.elements[next].product(&t.generators[g]);
            let j = push(&mut t, product, (next as u32, g as u32))?;
            t.right_action.push(j);
        }
        next += 1;
    }
    debug_assert_eq!(t.right_action.len(), t.elements.len() * k);
    Ok(t)
}

impl MonoidTable {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[RookPartition] {
        &self.elements
    }

    pub fn generators(&self) -> &[RookPartition] {
        &self.generators
    }

    pub fn has_identity(&self) -> bool {
        self.has_identity
    }

    pub fn position(&self, d: &RookPartition) -> Option<usize> {
        self.index.get(d).map(|&i| i as usize)
    }

    pub fn right_action(&self, element: usize, generator: usize) -> usize {
        self.right_action[element * self.generators.len() + generator] as usize
    }

    /// Generator positions of a shortest-found word for `element`.
    pub fn word_witness(&self, element: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut cur = element;
        loop {
            let (p, g) = self.parent[cur];
            if g != ROOT {
                out.push(g as usize);
            }
            if p == ROOT {
                break;
            }
            cur = p as usize;
        }
        out.reverse();
        out
    }

    /// The witness spelled with generator names; the empty word is `1`.
    pub fn witness_string(&self, element: usize) -> String {
        let w = self.word_witness(element);
        if w.is_empty() {
            return "1".to_string();
        }
        w.iter().map(|&g| self.generator_names[g].as_str()).join(" ")
    }

    /// Lines `idx<TAB>diagram<TAB>witness`.
    pub fn export_elements(&self) -> String {
        let mut out = String::new();
        for (i, d) in self.elements.iter().enumerate() {
            let _ = writeln!(out, "{i}\t{d}\t{}", self.witness_string(i));
        }
        out
    }

    /// Lines `src<TAB>gen<TAB>dst` for the right Cayley graph.
    pub fn export_cayley(&self) -> String {
        let mut out = String::new();
        for i in 0..self.len() {
            for (g, name) in self.generator_names.iter().enumerate() {
                let _ = writeln!(out, "{i}\t{name}\t{}", self.right_action(i, g));
            }
        }
        out
    }

    /// Full multiplication table over element indices.
    pub fn multiplication_table(&self) -> Vec<u32> {
        let n = self.len();
        let mut mul = Vec::with_capacity(n * n);
        for a in &self.elements {
            for b in &self.elements {
                let p = a.product(b);
                mul.push(*self.index.get(&p).expect("table is closed under products"));
            }
        }
        mul
    }
}

/// Number of set partitions of an `m`-set, by enumerating restricted growth strings.
pub fn bell_number(m: usize) -> Result<u64, EnumerationError> {
    if m > 12 {
        return Err(EnumerationError::TooLarge(m));
    }
    fn grow(pos: usize, m: usize, max: usize) -> u64 {
        if pos == m {
            return 1;
        }
        (0..=max + 1).map(|b| grow(pos + 1, m, max.max(b))).sum()
    }
    Ok(if m == 0 { 1 } else { grow(1, m, 0) })
}

/// `|RP_n|`, counted by explicitly enumerating, for every subset of the
/// `2n` vertices, every set partition of that subset.
pub fn rook_partition_count(n: usize) -> Result<u64, EnumerationError> {
    let m = 2 * n;
    if m > 12 {
        return Err(EnumerationError::TooLarge(m));
    }
    let mut total = 0;
    for mask in 0u32..(1 << m) {
        total += bell_number(mask.count_ones() as usize)?;
    }
    Ok(total)
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Every rook partition of degree `n`, generated vertex by vertex
/// (each vertex is a rook dot, joins an open block, or opens a new one).
pub fn all_rook_partitions(n: usize) -> Vec<RookPartition> {
    fn go(pos: usize, n: usize, blocks: &mut Vec<Vec<usize>>, out: &mut Vec<RookPartition>) {
        if pos == 2 * n {
            let as_vertices = blocks.iter().map(|b| {
                b.iter()
                    .map(|&v| {
                        if v < n {
                            crate::diagram::Vertex::Upper(v + 1)
                        } else {
                            crate::diagram::Vertex::Lower(v - n + 1)
                        }
                    })
                    .collect::<Vec<_>>()
            });
            out.push(RookPartition::from_blocks(n, as_vertices).expect("valid blocks"));
            return;
        }
        go(pos + 1, n, blocks, out);
        for b in 0..blocks.len() {
            blocks[b].push(pos);
            go(pos + 1, n, blocks, out);
            blocks[b].pop();
        }
        blocks.push(vec![pos]);
        go(pos + 1, n, blocks, out);
        blocks.pop();
    }
    let mut out = Vec::new();
    go(0, n, &mut Vec::new(), &mut out);
    out
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i as u128 + 1))
}

/// Default bound on the number of subsets a search may test.
pub const SEARCH_LIMIT: u128 = 1_000_000;

/// Semigroup closure over a precomputed multiplication table.
fn closure_size(mul: &[u32], size: usize, gens: &[usize], seen: &mut [bool], queue: &mut Vec<usize>) -> usize {
    seen.iter_mut().for_each(|s| *s = false);
    queue.clear();
    for &g in gens {
        if !seen[g] {
            seen[g] = true;
            queue.push(g);
        }
    }
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for &g in gens {
            let y = mul[x * size + g] as usize;
            if !seen[y] {
                seen[y] = true;
                queue.push(y);
            }
        }
    }
    queue.len()
}

/// Tests `k`-subsets of the table in lexicographic order and returns the
/// first one generating the whole table as a semigroup.
///
/// Subsets whose units do not already generate the group of units are
/// skipped: products involving a non-unit are never units.
pub fn search_generating_sets(
    table: &MonoidTable,
    k: usize,
    limit: u128,
) -> Result<Option<Vec<RookPartition>>, EnumerationError> {
    let size = table.len();
    let combinations = binomial(size, k);
    if combinations > limit {
        return Err(EnumerationError::SearchTooLarge { combinations, limit });
    }
    let mul = table.multiplication_table();
    let n = table.degree();
    let units: Vec<usize> = (0..size).filter(|&i| table.elements()[i].rank() == n).collect();
    let mut seen = vec![false; size];
    let mut queue = Vec::with_capacity(size);
    for subset in (0..size).combinations(k) {
        if !units.is_empty() {
            let subset_units: Vec<usize> = subset.iter().copied().filter(|i| units.contains(i)).collect();
            if subset_units.is_empty() || closure_size(&mul, size, &subset_units, &mut seen, &mut queue) != units.len()
            {
                continue;
            }
        }
        if closure_size(&mul, size, &subset, &mut seen, &mut queue) == size {
            return Ok(Some(subset.iter().map(|&i| table.elements()[i].clone()).collect()));
        }
    }
    Ok(None)
}

/// True when the semigroup generated by the table elements failing
/// `property` misses `target`, so every generating set of the table must
/// contain an element satisfying `property`.
pub fn necessity_check<F>(table: &MonoidTable, property: F, target: &RookPartition) -> bool
where
    F: Fn(&RookPartition) -> bool,
{
    let others: Vec<&RookPartition> = table.elements().iter().filter(|x| !property(x)).collect();
    let mut seen: HashSet<RookPartition> = others.iter().map(|&x| x.clone()).collect();
    let mut queue: Vec<RookPartition> = seen.iter().cloned().collect();
    while let Some(x) = queue.pop() {
        for &g in &others {
            let y = x.product(g);
            if !seen.contains(&y) {
                seen.insert(y.clone());
                queue.push(y);
            }
        }
    }
    !seen.contains(target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::Alphabet;

    #[test]
    fn oracles() {
        assert_eq!(rook_partition_count(0).unwrap(), 1);
        assert_eq!(rook_partition_count(1).unwrap(), 5);
        assert_eq!(rook_partition_count(2).unwrap(), 52);
        assert_eq!(rook_partition_count(3).unwrap(), 877);
        assert_eq!(bell_number(6).unwrap(), 203);
        assert!(bell_number(13).is_err());
        assert_eq!(all_rook_partitions(2).len(), 52);
        assert_eq!(all_rook_partitions(0), vec![RookPartition::identity(0)]);
    }

    #[test]
    fn small_closures() {
        let t = closure_of_tokens(2, &Alphabet::Seqo.generators(2), true, 1000).unwrap();
        assert_eq!(t.len(), 52);
        let t = closure_of_tokens(2, &Alphabet::Eto.generators(2), false, 1000).unwrap();
        assert_eq!(t.len(), 50);
        let t = closure(3, &[RookPartition::identity(3)], false, 10).unwrap();
        assert_eq!(t.len(), 1);
        assert!(matches!(
            closure_of_tokens(2, &Alphabet::Seqo.generators(2), true, 10),
            Err(EnumerationError::CapExceeded { cap: 10 })
        ));
        assert!(matches!(
            closure(2, &[RookPartition::identity(3)], true, 10),
            Err(EnumerationError::DegreeMismatch(2, 3))
        ));
    }

    #[test]
    fn witnesses_and_exports() {
        let t = closure_of_tokens(2, &Alphabet::Seqo.generators(2), true, 1000).unwrap();
        assert_eq!(t.witness_string(0), "1");
        for i in 0..t.len() {
            let mut d = RookPartition::identity(2);
            for g in t.word_witness(i) {
                d = d.product(&t.generators()[g]);
            }
            assert_eq!(&d, &t.elements()[i]);
            for g in 0..t.generators().len() {
                assert_eq!(
                    t.elements()[t.right_action(i, g)],
                    t.elements()[i].product(&t.generators()[g])
                );
            }
        }
        let lines = t.export_elements();
        assert!(lines.starts_with("0\tn=2; 1,1'; 2,2'\t1\n"));
        assert_eq!(t.export_cayley().lines().count(), 52 * 6);
    }

    #[test]
    fn trivial_search() {
        let t = closure(2, &[RookPartition::identity(2)], false, 10).unwrap();
        let w = search_generating_sets(&t, 1, SEARCH_LIMIT).unwrap();
        assert_eq!(w, Some(vec![RookPartition::identity(2)]));
        let big = closure_of_tokens(2, &Alphabet::Seqo.generators(2), true, 100).unwrap();
        assert!(matches!(
            search_generating_sets(&big, 6, 1000),
            Err(EnumerationError::SearchTooLarge { .. })
        ));
    }
}
