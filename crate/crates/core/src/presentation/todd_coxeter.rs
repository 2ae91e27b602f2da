//! Todd-Coxeter enumeration of the monoid presented by `<X | R>`.
//!
//! Classes are rows of a right-multiplication table; class 0 is the class of
//! the empty word. Every relation `u = v` is enforced at every class `q`
//! (`q u = q v`), which makes the resulting right congruence two-sided. The
//! strategy is HLT (scan each class in order, defining classes as needed)
//! with periodic lookahead and compaction. Coincidences are processed with a
//! queue; dead classes forward to their survivor and table entries are
//! resolved through the forwarding chain when read.

use std::collections::VecDeque;

use serde::Serialize;

use crate::monoid::Word;

use super::Presentation;

/// Default cap on live classes in the working table.
pub const DEFAULT_MAX_CLASSES: usize = 1_000_000;

const UNDEF: u32 = u32::MAX;
const INITIAL_LOOKAHEAD: usize = 1 << 14;

#[derive(Clone, Copy, Debug)]
pub struct QuotientOptions {
    /// Largest quotient size accepted as a result.
    pub bound: usize,
    /// Largest number of live classes the working table may hold.
    pub max_classes: usize,
}

impl QuotientOptions {
    pub fn new(bound: usize) -> Self {
        Self {
            bound,
            max_classes: DEFAULT_MAX_CLASSES.max(bound),
        }
    }
}

/// Budget signal from quotient enumeration. Never a proof of infiniteness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Exceeded {
    /// Number of classes reached when enumeration stopped.
    pub classes_reached: usize,
    /// True when enumeration finished and `classes_reached` is the exact
    /// quotient size (which is larger than the bound).
    pub complete: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuotientOutcome {
    Complete(CongruenceTable),
    Exceeded(Exceeded),
}

impl QuotientOutcome {
    pub fn size(&self) -> Option<usize> {
        match self {
            QuotientOutcome::Complete(t) => Some(t.size()),
            QuotientOutcome::Exceeded(_) => None,
        }
    }

    pub fn table(&self) -> Option<&CongruenceTable> {
        match self {
            QuotientOutcome::Complete(t) => Some(t),
            QuotientOutcome::Exceeded(_) => None,
        }
    }
}

/// Multiplication table of a finite quotient `X*/~R`.
///
/// Classes are numbered in shortlex order of their minimal representatives,
/// so class 0 is the identity and the table is canonical: two engines that
/// find the same congruence produce equal tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceTable {
    letters: usize,
    right_mult: Vec<usize>,
    representatives: Vec<Word>,
}

impl CongruenceTable {
    /// Canonical table from any complete right-multiplication table, reading
    /// only the classes reachable from `start`.
    pub(crate) fn canonical(letters: usize, start: usize, next: impl Fn(usize, usize) -> usize) -> Self {
        let mut renumber = std::collections::HashMap::new();
        let mut order = vec![start];
        let mut representatives: Vec<Word> = vec![Vec::new()];
        renumber.insert(start, 0usize);
        let mut right_mult = Vec::new();
        let mut head = 0;
        while head < order.len() {
            let class = order[head];
            for x in 0..letters {
                let target = next(class, x);
                let id = *renumber.entry(target).or_insert_with(|| {
                    order.push(target);
                    let mut w = representatives[head].clone();
                    w.push(x);
                    representatives.push(w);
                    order.len() - 1
                });
                right_mult.push(id);
            }
            head += 1;
        }
        Self {
            letters,
            right_mult,
            representatives,
        }
    }

    pub fn size(&self) -> usize {
        self.representatives.len()
    }

    pub fn letters(&self) -> usize {
        self.letters
    }

    pub fn multiply(&self, class: usize, letter: usize) -> usize {
        self.right_mult[class * self.letters + letter]
    }

    pub fn trace(&self, class: usize, word: &[usize]) -> usize {
        word.iter().fold(class, |q, &x| self.multiply(q, x))
    }

    /// Shortlex-minimal representative of `class`.
    pub fn representative(&self, class: usize) -> &[usize] {
        &self.representatives[class]
    }

    pub fn representatives(&self) -> &[Word] {
        &self.representatives
    }

    /// Checks the table is a model of the presentation: every relation holds
    /// from every class, and each representative leads from class 0 to its
    /// own class. Together these make the table's size a lower bound on the
    /// quotient size.
    pub fn is_model_of(&self, presentation: &Presentation) -> bool {
        if presentation.alphabet().len() != self.letters {
            return false;
        }
        let relations_hold = (0..self.size()).all(|q| {
            presentation
                .relations()
                .iter()
                .all(|(u, v)| self.trace(q, u) == self.trace(q, v))
        });
        relations_hold
            && self
                .representatives
                .iter()
                .enumerate()
                .all(|(q, w)| self.trace(0, w) == q)
    }
}

pub fn enumerate_quotient(presentation: &Presentation, bound: usize) -> QuotientOutcome {
    enumerate_quotient_with(presentation, &QuotientOptions::new(bound))
}

pub fn enumerate_quotient_with(presentation: &Presentation, options: &QuotientOptions) -> QuotientOutcome {
    let mut engine = Enumerator::new(presentation.alphabet().len(), presentation.relations());
    match engine.run(options.max_classes) {
        Err(reached) => QuotientOutcome::Exceeded(Exceeded {
            classes_reached: reached,
            complete: false,
        }),
        Ok(()) => {
            let table = engine.into_table();
            if table.size() > options.bound {
                QuotientOutcome::Exceeded(Exceeded {
                    classes_reached: table.size(),
                    complete: true,
                })
            } else {
                QuotientOutcome::Complete(table)
            }
        }
    }
}

enum Side {
    Class(u32),
    Edge(u32, usize),
}

struct Enumerator<'r> {
    letters: usize,
    relations: &'r [(Word, Word)],
    table: Vec<u32>,
    forward: Vec<u32>,
    live: usize,
    pending: VecDeque<(u32, u32)>,
}

impl<'r> Enumerator<'r> {
    fn new(letters: usize, relations: &'r [(Word, Word)]) -> Self {
        let mut e = Self {
            letters,
            relations,
            table: Vec::new(),
            forward: Vec::new(),
            live: 0,
            pending: VecDeque::new(),
        };
        e.new_class();
        e
    }

    fn rows(&self) -> usize {
        self.forward.len()
    }

    fn is_live(&self, c: u32) -> bool {
        self.forward[c as usize] == c
    }

    fn find(&mut self, mut c: u32) -> u32 {
        while self.forward[c as usize] != c {
            let up = self.forward[c as usize];
            self.forward[c as usize] = self.forward[up as usize];
            c = up;
        }
        c
    }

    fn new_class(&mut self) -> u32 {
        let id = self.rows() as u32;
        self.table.extend(std::iter::repeat_n(UNDEF, self.letters));
        self.forward.push(id);
        self.live += 1;
        id
    }

    fn get(&mut self, c: u32, x: usize) -> Option<u32> {
        match self.table[c as usize * self.letters + x] {
            UNDEF => None,
            t => Some(self.find(t)),
        }
    }

    fn set(&mut self, c: u32, x: usize, target: u32) {
        self.table[c as usize * self.letters + x] = target;
    }

    fn trace_defining(&mut self, mut c: u32, word: &[usize]) -> u32 {
        for &x in word {
            c = match self.get(c, x) {
                Some(t) => t,
                None => {
                    let t = self.new_class();
                    self.set(c, x, t);
                    t
                }
            };
        }
        c
    }

    fn trace(&mut self, mut c: u32, word: &[usize]) -> Option<u32> {
        for &x in word {
            c = self.get(c, x)?;
        }
        Some(c)
    }

    fn side(&mut self, c: u32, word: &[usize], define: bool) -> Option<Side> {
        let Some((&last, prefix)) = word.split_last() else {
            return Some(Side::Class(c));
        };
        let p = if define {
            self.trace_defining(c, prefix)
        } else {
            self.trace(c, prefix)?
        };
        Some(Side::Edge(p, last))
    }

    fn resolve(&mut self, side: &Side) -> Option<u32> {
        match *side {
            Side::Class(c) => Some(c),
            Side::Edge(p, x) => self.get(p, x),
        }
    }

    /// Enforces `c u = c v`, defining new classes only when `define` is set.
    fn apply_relation(&mut self, c: u32, relation: usize, define: bool) {
        let (u, v) = &self.relations[relation];
        let Some(left) = self.side(c, u, define) else { return };
        let Some(right) = self.side(c, v, define) else { return };
        match (self.resolve(&left), self.resolve(&right)) {
            (Some(a), Some(b)) => {
                if a != b {
                    self.coincide(a, b);
                }
            }
            (Some(a), None) => {
                if let Side::Edge(q, y) = right {
                    self.set(q, y, a);
                }
            }
            (None, Some(b)) => {
                if let Side::Edge(p, x) = left {
                    self.set(p, x, b);
                }
            }
            (None, None) => {
                if define {
                    let t = self.new_class();
                    for side in [&left, &right] {
                        if let Side::Edge(p, x) = *side {
                            self.set(p, x, t);
                        }
                    }
                }
            }
        }
    }

    fn coincide(&mut self, a: u32, b: u32) {
        self.pending.push_back((a, b));
        while let Some((a, b)) = self.pending.pop_front() {
            let (a, b) = (self.find(a), self.find(b));
            if a == b {
                continue;
            }
            let (keep, drop) = (a.min(b), a.max(b));
            self.forward[drop as usize] = keep;
            self.live -= 1;
            for x in 0..self.letters {
                let moved = self.table[drop as usize * self.letters + x];
                if moved == UNDEF {
                    continue;
                }
                match self.table[keep as usize * self.letters + x] {
                    UNDEF => self.set(keep, x, moved),
                    existing => self.pending.push_back((existing, moved)),
                }
            }
        }
    }

    /// Applies every relation at every live class without defining anything.
    fn lookahead(&mut self) {
        for c in 0..self.rows() as u32 {
            for r in 0..self.relations.len() {
                if !self.is_live(c) {
                    break;
                }
                self.apply_relation(c, r, false);
            }
        }
    }

    /// Drops dead rows, keeping live rows in order. Returns the new index of
    /// the first live row at or after `position`.
    fn compact(&mut self, position: usize) -> usize {
        let rows = self.rows();
        let mut new_index = vec![UNDEF; rows];
        let mut count = 0u32;
        let mut new_position = None;
        for (c, slot) in new_index.iter_mut().enumerate() {
            if c >= position && new_position.is_none() {
                new_position = Some(count as usize);
            }
            if self.is_live(c as u32) {
                *slot = count;
                count += 1;
            }
        }
        let mut table = Vec::with_capacity(count as usize * self.letters);
        for c in 0..rows as u32 {
            if !self.is_live(c) {
                continue;
            }
            for x in 0..self.letters {
                let entry = match self.get(c, x) {
                    Some(t) => new_index[t as usize],
                    None => UNDEF,
                };
                table.push(entry);
            }
        }
        self.table = table;
        self.forward = (0..count).collect();
        self.live = count as usize;
        new_position.unwrap_or(count as usize)
    }

    /// HLT enumeration. `Err` carries the live class count when the working
    /// table outgrows `max_classes`.
    fn run(&mut self, max_classes: usize) -> Result<(), usize> {
        let mut threshold = INITIAL_LOOKAHEAD.min(max_classes.max(1));
        let mut current = 0usize;
        while current < self.rows() {
            let c = current as u32;
            if self.is_live(c) {
                for r in 0..self.relations.len() {
                    if !self.is_live(c) {
                        break;
                    }
                    self.apply_relation(c, r, true);
                }
                if self.is_live(c) {
                    for x in 0..self.letters {
                        if self.get(c, x).is_none() {
                            let t = self.new_class();
                            self.set(c, x, t);
                        }
                    }
                }
            }
            current += 1;
            if self.rows() > threshold {
                self.lookahead();
                current = self.compact(current);
                if self.live > max_classes {
                    return Err(self.live);
                }
                threshold = (2 * self.live).max(INITIAL_LOOKAHEAD).min(max_classes.max(1) * 2);
            }
        }
        // The scan leaves a complete table; one more sweep confirms every
        // relation holds everywhere.
        loop {
            let before = self.live;
            let mut consistent = true;
            for c in 0..self.rows() as u32 {
                for r in 0..self.relations.len() {
                    if !self.is_live(c) {
                        break;
                    }
                    let (u, v) = &self.relations[r];
                    let a = self.trace(c, u).expect("table is complete");
                    let b = self.trace(c, v).expect("table is complete");
                    if a != b {
                        consistent = false;
                        self.coincide(a, b);
                    }
                }
            }
            if consistent && before == self.live {
                break;
            }
        }
        Ok(())
    }

    fn into_table(mut self) -> CongruenceTable {
        let letters = self.letters;
        let start = self.find(0);
        let rows = self.rows();
        let resolved: Vec<u32> = (0..rows as u32)
            .flat_map(|c| (0..letters).map(move |x| (c, x)))
            .map(|(c, x)| {
                if self.is_live(c) {
                    self.get(c, x).expect("table is complete")
                } else {
                    UNDEF
                }
            })
            .collect();
        CongruenceTable::canonical(letters, start as usize, |c, x| {
            resolved[c * letters + x] as usize
        })
    }
}
