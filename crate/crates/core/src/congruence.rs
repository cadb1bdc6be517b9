//! Todd–Coxeter enumeration of finitely presented monoids.
//!
//! Classes are nodes of a partial right-action table over the letters.
//! Class 0 is the empty word. Every relation is imposed at every class,
//! so a complete table on which all relations hold is the quotient of the
//! free monoid by the two-sided congruence the relations generate.
//!
//! Coincidences merge the larger id into the smaller. Incoming edges are
//! redirected eagerly through doubly linked preimage lists, so table
//! entries only ever point at live classes. Ids are never reused.
//!
//! Semigroup presentations are enumerated as monoids; since every relation
//! side is non-empty the empty word stays a singleton class, and the count
//! includes that adjoined identity.

use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use crate::enumeration::{closure, EnumerationError};
use crate::presentation::{check_soundness, Kind, LetterRelation, Presentation, PresentationError};
use crate::words::WordError;

const UNDEF: u32 = u32::MAX;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CongruenceError {
    #[error("enumeration exceeded the cap of {cap} live classes ({live} live, peak {peak})")]
    CapExceeded { cap: usize, live: usize, peak: usize },
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
    #[error(transparent)]
    Word(#[from] WordError),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Strategy {
    /// Deduction-driven: define edges in breadth-first order and propagate
    /// each new edge through every relation occurrence of its letter.
    #[default]
    Felsch,
    /// Scan every relation at each class in turn, defining classes as needed.
    Hlt,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    pub strategy: Strategy,
    /// Maximum number of simultaneously live classes.
    pub cap: usize,
    /// Run lookahead passes when the HLT table grows large.
    pub lookahead: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            strategy: Strategy::Felsch,
            cap: 1_000_000,
            lookahead: true,
        }
    }
}

/// A complete, standardized right-multiplication table of the quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbstractTable {
    letters: usize,
    table: Vec<u32>,
    parent: Vec<(u32, u32)>,
    /// Largest number of simultaneously live classes during enumeration.
    pub peak: usize,
}

impl AbstractTable {
    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn letters(&self) -> usize {
        self.letters
    }

    pub fn act(&self, class: usize, letter: usize) -> usize {
        self.table[class * self.letters + letter] as usize
    }

    /// Class reached from the identity class by reading `word`.
    pub fn trace(&self, word: &[u32]) -> usize {
        word.iter().fold(0, |c, &g| self.act(c, g as usize))
    }

    /// The breadth-first spanning-tree word of a class.
    pub fn class_word(&self, class: usize) -> Vec<u32> {
        let mut out = Vec::new();
        let mut c = class;
        while c != 0 {
            let (p, g) = self.parent[c];
            out.push(g);
            c = p as usize;
        }
        out.reverse();
        out
    }
}

/// One node of a trie over reversed relation prefixes. Walking down the
/// trie from an edge `c·g` walks back through preimages to every class at
/// which some relation reads that edge.
#[derive(Default)]
struct TrieNode {
    children: Vec<(u32, usize)>,
    relations: Vec<usize>,
}

struct Enumerator<'a> {
    k: usize,
    rels: &'a [(Vec<u32>, Vec<u32>)],
    table: Vec<u32>,
    pre_head: Vec<u32>,
    pre_next: Vec<u32>,
    pre_prev: Vec<u32>,
    forward: Vec<u32>,
    live: usize,
    peak: usize,
    cap: usize,
    record: bool,
    deductions: Vec<(u32, u32)>,
    pending: Vec<(u32, u32)>,
}

impl<'a> Enumerator<'a> {
    fn new(k: usize, rels: &'a [(Vec<u32>, Vec<u32>)], cap: usize, record: bool) -> Self {
        let mut e = Enumerator {
            k,
            rels,
            table: Vec::new(),
            pre_head: Vec::new(),
            pre_next: Vec::new(),
            pre_prev: Vec::new(),
            forward: Vec::new(),
            live: 0,
            peak: 0,
            cap,
            record,
            deductions: Vec::new(),
            pending: Vec::new(),
        };
        e.push_class();
        e
    }

    fn push_class(&mut self) -> u32 {
        let id = self.forward.len() as u32;
        for v in [
            &mut self.table,
            &mut self.pre_head,
            &mut self.pre_next,
            &mut self.pre_prev,
        ] {
            v.extend(std::iter::repeat_n(UNDEF, self.k));
        }
        self.forward.push(id);
        self.live += 1;
        self.peak = self.peak.max(self.live);
        id
    }

    fn new_class(&mut self) -> Result<u32, CongruenceError> {
        if self.live >= self.cap {
            return Err(CongruenceError::CapExceeded {
                cap: self.cap,
                live: self.live,
                peak: self.peak,
            });
        }
        Ok(self.push_class())
    }

    fn is_live(&self, c: u32) -> bool {
        self.forward[c as usize] == c
    }

    fn get(&self, c: u32, g: u32) -> u32 {
        self.table[c as usize * self.k + g as usize]
    }

    fn find(&mut self, mut c: u32) -> u32 {
        let mut root = c;
        while self.forward[root as usize] != root {
            root = self.forward[root as usize];
        }
        while self.forward[c as usize] != root {
            let next = self.forward[c as usize];
            self.forward[c as usize] = root;
            c = next;
        }
        root
    }

    fn link(&mut self, c: u32, g: u32, d: u32) {
        let k = self.k;
        let slot = c as usize * k + g as usize;
        let head_slot = d as usize * k + g as usize;
        debug_assert_eq!(self.table[slot], UNDEF);
        self.table[slot] = d;
        let head = self.pre_head[head_slot];
        self.pre_next[slot] = head;
        self.pre_prev[slot] = UNDEF;
        if head != UNDEF {
            self.pre_prev[head as usize * k + g as usize] = c;
        }
        self.pre_head[head_slot] = c;
    }

    fn unlink(&mut self, c: u32, g: u32) {
        let k = self.k;
        let slot = c as usize * k + g as usize;
        let d = self.table[slot];
        let (prev, next) = (self.pre_prev[slot], self.pre_next[slot]);
        if prev == UNDEF {
            self.pre_head[d as usize * k + g as usize] = next;
        } else {
            self.pre_next[prev as usize * k + g as usize] = next;
        }
        if next != UNDEF {
            self.pre_prev[next as usize * k + g as usize] = prev;
        }
        self.table[slot] = UNDEF;
    }

    fn define(&mut self, c: u32, g: u32, d: u32) {
        self.link(c, g, d);
        if self.record {
            self.deductions.push((c, g));
        }
    }

    /// Merges all queued pairs of classes and their consequences.
    fn process_coincidences(&mut self) {
        while let Some((a, b)) = self.pending.pop() {
            let (a, b) = (self.find(a), self.find(b));
            if a == b {
                continue;
            }
            let (keep, lose) = (a.min(b), a.max(b));
            self.forward[lose as usize] = keep;
            self.live -= 1;
            for g in 0..self.k as u32 {
                loop {
                    let c = self.pre_head[lose as usize * self.k + g as usize];
                    if c == UNDEF {
                        break;
                    }
                    self.unlink(c, g);
                    self.define(c, g, keep);
                }
            }
            for g in 0..self.k as u32 {
                let t = self.get(lose, g);
                if t == UNDEF {
                    continue;
                }
                self.unlink(lose, g);
                let u = self.get(keep, g);
                if u == UNDEF {
                    self.define(keep, g, t);
                } else if u != t {
                    self.pending.push((u, t));
                }
            }
        }
    }

    /// Follows `word` from `c` until an undefined edge; returns the class
    /// reached and how many letters were read.
    fn trace(&self, mut c: u32, word: &[u32]) -> (u32, usize) {
        for (i, &g) in word.iter().enumerate() {
            let d = self.get(c, g);
            if d == UNDEF {
                return (c, i);
            }
            c = d;
        }
        (c, word.len())
    }

    /// Imposes relation `r` at class `c` without creating classes: merges
    /// complete sides, or fills the single missing last edge of one side.
    fn check_relation(&mut self, c: u32, r: usize) {
        let (u, v) = (&self.rels[r].0, &self.rels[r].1);
        let (xu, pu) = self.trace(c, u);
        let (xv, pv) = self.trace(c, v);
        let (lu, lv) = (u.len(), v.len());
        if pu == lu && pv == lv {
            if xu != xv {
                self.pending.push((xu, xv));
            }
        } else if pu == lu && pv + 1 == lv {
            self.define(xv, v[lv - 1], xu);
        } else if pv == lv && pu + 1 == lu {
            self.define(xu, u[lu - 1], xv);
        }
    }

    /// Walks `word` from `c`, creating classes for missing edges.
    fn walk_defining(&mut self, mut c: u32, word: &[u32]) -> Result<u32, CongruenceError> {
        for &g in word {
            let d = self.get(c, g);
            c = if d == UNDEF {
                let nc = self.new_class()?;
                self.define(c, g, nc);
                nc
            } else {
                d
            };
        }
        Ok(c)
    }

    /// Imposes relation `r` at `c`, creating classes as needed.
    fn scan_and_fill(&mut self, c: u32, r: usize) -> Result<(), CongruenceError> {
        let (u, v) = (&self.rels[r].0, &self.rels[r].1);
        let (ul, vl) = (
            u.split_last().map(|(&g, p)| (g, p)),
            v.split_last().map(|(&g, p)| (g, p)),
        );
        let a = self.walk_defining(c, ul.map_or(&[][..], |x| x.1))?;
        let b = self.walk_defining(c, vl.map_or(&[][..], |x| x.1))?;
        let end = |e: &Self, x: u32, last: Option<u32>| match last {
            None => x,
            Some(g) => e.get(x, g),
        };
        let (ga, gb) = (ul.map(|x| x.0), vl.map(|x| x.0));
        let (ea, eb) = (end(self, a, ga), end(self, b, gb));
        match (ea == UNDEF, eb == UNDEF) {
            (false, false) => {
                if ea != eb {
                    self.pending.push((ea, eb));
                }
            }
            (false, true) => self.define(b, gb.unwrap(), ea),
            (true, false) => self.define(a, ga.unwrap(), eb),
            (true, true) => {
                let nc = self.new_class()?;
                self.define(a, ga.unwrap(), nc);
                if (a, ga) != (b, gb) {
                    self.define(b, gb.unwrap(), nc);
                }
            }
        }
        Ok(())
    }

    /// One pass imposing every relation at every live class without
    /// creating classes. Returns whether anything changed.
    fn lookahead(&mut self) -> bool {
        let before = (self.live, self.edges_defined());
        let mut c = 0;
        while (c as usize) < self.forward.len() {
            for r in 0..self.rels.len() {
                if !self.is_live(c) {
                    break;
                }
                self.check_relation(c, r);
                self.process_coincidences();
            }
            c += 1;
        }
        self.deductions.clear();
        before != (self.live, self.edges_defined())
    }

    fn edges_defined(&self) -> usize {
        self.table.iter().filter(|&&d| d != UNDEF).count()
    }

    fn build_trie(&self) -> Vec<Vec<TrieNode>> {
        let mut tries: Vec<Vec<TrieNode>> = (0..self.k).map(|_| vec![TrieNode::default()]).collect();
        for (r, (u, v)) in self.rels.iter().enumerate() {
            for side in [u, v] {
                for (pos, &g) in side.iter().enumerate() {
                    let trie = &mut tries[g as usize];
                    let mut node = 0;
                    for &h in side[..pos].iter().rev() {
                        node = match trie[node].children.iter().find(|(l, _)| *l == h) {
                            Some(&(_, child)) => child,
                            None => {
                                trie.push(TrieNode::default());
                                let child = trie.len() - 1;
                                trie[node].children.push((h, child));
                                child
                            }
                        };
                    }
                    if !trie[node].relations.contains(&r) {
                        trie[node].relations.push(r);
                    }
                }
            }
        }
        tries
    }

    fn propagate(&mut self, trie: &[TrieNode], node: usize, c: u32) {
        for i in 0..trie[node].relations.len() {
            self.check_relation(c, trie[node].relations[i]);
        }
        for &(h, child) in &trie[node].children {
            let mut x = self.pre_head[c as usize * self.k + h as usize];
            while x != UNDEF {
                let next = self.pre_next[x as usize * self.k + h as usize];
                self.propagate(trie, child, x);
                x = next;
            }
        }
    }

    fn process_deductions(&mut self, tries: &[Vec<TrieNode>]) {
        loop {
            while let Some((c, g)) = self.deductions.pop() {
                if !self.is_live(c) || self.get(c, g) == UNDEF {
                    continue;
                }
                self.propagate(&tries[g as usize], 0, c);
            }
            if self.pending.is_empty() {
                break;
            }
            self.process_coincidences();
        }
    }

    fn run_felsch(&mut self) -> Result<(), CongruenceError> {
        let tries = self.build_trie();
        // Relations with an empty side impose a condition at every class
        // before any edge is read; check them at the root class up front.
        for r in 0..self.rels.len() {
            self.check_relation(0, r);
        }
        self.process_coincidences();
        let mut cursor = 0usize;
        loop {
            self.process_deductions(&tries);
            while cursor < self.table.len() {
                let c = (cursor / self.k) as u32;
                if self.is_live(c) && self.table[cursor] == UNDEF {
                    break;
                }
                cursor += 1;
            }
            if cursor == self.table.len() {
                return Ok(());
            }
            let (c, g) = ((cursor / self.k) as u32, (cursor % self.k) as u32);
            let nc = self.new_class()?;
            self.define(c, g, nc);
            if self.rels.iter().any(|(u, v)| u.is_empty() || v.is_empty()) {
                for r in 0..self.rels.len() {
                    self.check_relation(nc, r);
                }
            }
        }
    }

    fn run_hlt(&mut self, lookahead: bool) -> Result<(), CongruenceError> {
        let mut next_lookahead = (self.cap / 2).max(1024);
        let mut current = 0u32;
        while (current as usize) < self.forward.len() {
            if lookahead && self.live >= next_lookahead {
                while self.lookahead() {}
                next_lookahead = self.live + (self.cap.saturating_sub(self.live)) / 2;
            }
            if self.is_live(current) {
                for r in 0..self.rels.len() {
                    if !self.is_live(current) {
                        break;
                    }
                    self.scan_and_fill(current, r)?;
                    self.process_coincidences();
                }
                for g in 0..self.k as u32 {
                    if self.is_live(current) && self.get(current, g) == UNDEF {
                        let nc = self.new_class()?;
                        self.define(current, g, nc);
                    }
                }
            }
            current += 1;
        }
        Ok(())
    }

    /// Fills any remaining gaps and re-imposes every relation at every
    /// class until nothing changes.
    fn finish(&mut self) -> Result<(), CongruenceError> {
        loop {
            let mut changed = false;
            let mut c = 0u32;
            while (c as usize) < self.forward.len() {
                if self.is_live(c) {
                    for g in 0..self.k as u32 {
                        if self.get(c, g) == UNDEF {
                            let nc = self.new_class()?;
                            self.define(c, g, nc);
                            changed = true;
                        }
                    }
                    for r in 0..self.rels.len() {
                        if !self.is_live(c) {
                            break;
                        }
                        let before = self.live;
                        self.scan_and_fill(c, r)?;
                        self.process_coincidences();
                        changed |= before != self.live;
                    }
                }
                c += 1;
            }
            self.deductions.clear();
            if !changed {
                return Ok(());
            }
        }
    }

    fn standardize(&self) -> AbstractTable {
        let k = self.k;
        let mut new_id = vec![UNDEF; self.forward.len()];
        let mut order = vec![0u32];
        let mut parent = vec![(UNDEF, UNDEF)];
        new_id[0] = 0;
        let mut head = 0;
        while head < order.len() {
            let c = order[head];
            for g in 0..k as u32 {
                let d = self.get(c, g);
                if new_id[d as usize] == UNDEF {
                    new_id[d as usize] = order.len() as u32;
                    order.push(d);
                    parent.push((head as u32, g));
                }
            }
            head += 1;
        }
        let table = order
            .iter()
            .flat_map(|&c| (0..k as u32).map(move |g| (c, g)))
            .map(|(c, g)| new_id[self.get(c, g) as usize])
            .collect();
        AbstractTable {
            letters: k,
            table,
            parent,
            peak: self.peak,
        }
    }
}

/// Enumerates the monoid `⟨k letters | rels⟩`.
pub fn enumerate_letters(
    k: usize,
    rels: &[LetterRelation],
    options: &Options,
) -> Result<AbstractTable, CongruenceError> {
    let felsch = options.strategy == Strategy::Felsch;
    let mut e = Enumerator::new(k, rels, options.cap.max(1), felsch);
    if k == 0 {
        return Ok(e.standardize());
    }
    if felsch {
        e.run_felsch()?;
    } else {
        e.run_hlt(options.lookahead)?;
    }
    e.record = false;
    e.finish()?;
    let t = e.standardize();
    debug_assert_eq!(t.len(), e.live);
    Ok(t)
}

/// Enumerates the quotient presented by `p`. For semigroup presentations
/// the count includes the adjoined identity.
pub fn enumerate_quotient(p: &Presentation, options: &Options) -> Result<AbstractTable, CongruenceError> {
    let rels = p.letter_relations()?;
    enumerate_letters(p.generators.len(), &rels, options)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub preset: String,
    pub n: usize,
    pub kind: String,
    pub sound: bool,
    pub relation_failures: Vec<String>,
    pub abstract_size: usize,
    pub concrete_size: usize,
    pub complete: bool,
    pub classes_peak: usize,
    pub wall_time: Option<f64>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.sound && self.complete
    }
}

/// Options for [`verify_presentation`]; `cap: None` means 50 times the
/// concrete size.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct VerifyOptions {
    pub strategy: Strategy,
    pub cap: Option<usize>,
    /// Check relations with their δ-twists.
    pub twisted: bool,
}

/// Upper bound on concrete closures built during verification.
pub const CONCRETE_CAP: usize = 5_000_000;

/// Soundness by evaluation plus completeness by comparing the abstract
/// class count with the size of the concretely generated monoid or semigroup.
pub fn verify_presentation(p: &Presentation, options: &VerifyOptions) -> Result<VerificationReport, CongruenceError> {
    let start = Instant::now();
    let soundness = check_soundness(p, options.twisted)?;
    let images = p.generator_images()?;
    let concrete_size = if images.is_empty() {
        1
    } else {
        closure(p.n, &images, p.kind == Kind::Monoid, CONCRETE_CAP)?.len()
    };
    let adjoined = usize::from(p.kind == Kind::Semigroup);
    let cap = options.cap.unwrap_or(50 * (concrete_size + adjoined));
    let table = enumerate_quotient(
        p,
        &Options {
            strategy: options.strategy,
            cap,
            lookahead: true,
        },
    )?;
    Ok(VerificationReport {
        preset: p.id.clone(),
        n: p.n,
        kind: p.kind.to_string(),
        sound: soundness.sound(),
        relation_failures: soundness.failures.iter().map(ToString::to_string).collect(),
        abstract_size: table.len(),
        concrete_size,
        complete: table.len() == concrete_size + adjoined,
        classes_peak: table.peak,
        wall_time: Some(start.elapsed().as_secs_f64()),
    })
}
