//! Independent quotient enumerator used to cross-check Todd-Coxeter.
//!
//! Nodes are explicit words stored as a trie (parent node + last letter).
//! A union-find structure over nodes records which words are known to be
//! `~R`-equivalent. Words are visited breadth first; at each visited class
//! every relation `u = v` is applied by building the words `w u` and `w v`
//! and merging their classes, and every one-letter extension is created.
//! Merging two classes merges their letter successors (congruence closure).
//! When no unvisited node remains, the class graph is extracted and checked
//! to be a model of the presentation before being returned.

use super::todd_coxeter::{CongruenceTable, Exceeded, QuotientOutcome};
use super::Presentation;

const NONE: usize = usize::MAX;

struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    fn push(&mut self) -> usize {
        let id = self.parent.len();
        self.parent.push(id);
        self.size.push(1);
        id
    }

    fn find(&mut self, mut x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[x] != root {
            let next = self.parent[x];
            self.parent[x] = root;
            x = next;
        }
        root
    }
}

struct WordGraph<'p> {
    presentation: &'p Presentation,
    letters: usize,
    /// `(parent, letter)` of each node; the root (empty word) has no parent.
    nodes: Vec<(usize, usize)>,
    classes: UnionFind,
    /// Successor node per letter, maintained on class roots.
    successor: Vec<usize>,
    visited: Vec<bool>,
    max_nodes: usize,
}

#[derive(Debug)]
struct OutOfNodes;

impl<'p> WordGraph<'p> {
    fn new(presentation: &'p Presentation, max_nodes: usize) -> Self {
        let mut g = Self {
            presentation,
            letters: presentation.alphabet().len(),
            nodes: Vec::new(),
            classes: UnionFind {
                parent: Vec::new(),
                size: Vec::new(),
            },
            successor: Vec::new(),
            visited: Vec::new(),
            max_nodes,
        };
        g.add_node(NONE, NONE);
        g
    }

    fn add_node(&mut self, parent: usize, letter: usize) -> usize {
        self.nodes.push((parent, letter));
        self.successor.extend(std::iter::repeat_n(NONE, self.letters));
        self.visited.push(false);
        self.classes.push()
    }

    /// Class of `node . letter`, creating the word if the class has no successor yet.
    fn step(&mut self, node: usize, letter: usize) -> Result<usize, OutOfNodes> {
        let root = self.classes.find(node);
        let slot = root * self.letters + letter;
        if self.successor[slot] == NONE {
            if self.nodes.len() >= self.max_nodes {
                return Err(OutOfNodes);
            }
            let child = self.add_node(node, letter);
            self.successor[slot] = child;
        }
        Ok(self.classes.find(self.successor[slot]))
    }

    fn walk(&mut self, node: usize, word: &[usize]) -> Result<usize, OutOfNodes> {
        let mut current = self.classes.find(node);
        for &x in word {
            current = self.step(current, x)?;
        }
        Ok(current)
    }

    fn merge(&mut self, a: usize, b: usize) {
        let mut pairs = vec![(a, b)];
        while let Some((a, b)) = pairs.pop() {
            let (a, b) = (self.classes.find(a), self.classes.find(b));
            if a == b {
                continue;
            }
            let (big, small) = if self.classes.size[a] >= self.classes.size[b] {
                (a, b)
            } else {
                (b, a)
            };
            self.classes.parent[small] = big;
            self.classes.size[big] += self.classes.size[small];
            self.visited[big] |= self.visited[small];
            for x in 0..self.letters {
                let theirs = self.successor[small * self.letters + x];
                if theirs == NONE {
                    continue;
                }
                let ours = self.successor[big * self.letters + x];
                if ours == NONE {
                    self.successor[big * self.letters + x] = theirs;
                } else {
                    pairs.push((ours, theirs));
                }
            }
        }
    }

    fn visit(&mut self, node: usize) -> Result<(), OutOfNodes> {
        let root = self.classes.find(node);
        if self.visited[root] {
            return Ok(());
        }
        self.visited[root] = true;
        let presentation = self.presentation;
        for (u, v) in presentation.relations() {
            let start = self.classes.find(node);
            let left = self.walk(start, u)?;
            let right = self.walk(start, v)?;
            self.merge(left, right);
        }
        for x in 0..self.letters {
            let current = self.classes.find(node);
            self.step(current, x)?;
        }
        Ok(())
    }

    #[cfg(test)]
    fn word_of(&self, mut node: usize) -> Vec<usize> {
        let mut word = Vec::new();
        while self.nodes[node].0 != NONE {
            word.push(self.nodes[node].1);
            node = self.nodes[node].0;
        }
        word.reverse();
        word
    }

    fn live_classes(&mut self) -> usize {
        (0..self.nodes.len()).filter(|&i| self.classes.find(i) == i).count()
    }
}

/// Enumerates `X*/~R`, working with at most `max_nodes` words.
pub fn enumerate(presentation: &Presentation, bound: usize, max_nodes: usize) -> QuotientOutcome {
    let mut graph = WordGraph::new(presentation, max_nodes);
    let mut next = 0;
    while next < graph.nodes.len() {
        if graph.visit(next).is_err() {
            let reached = graph.live_classes();
            return QuotientOutcome::Exceeded(Exceeded {
                classes_reached: reached,
                complete: false,
            });
        }
        next += 1;
    }

    let letters = graph.letters;
    let nodes = graph.nodes.len();
    let mut successor_class = vec![NONE; nodes * letters];
    for node in 0..nodes {
        if graph.classes.find(node) != node {
            continue;
        }
        for x in 0..letters {
            let s = graph.successor[node * letters + x];
            successor_class[node * letters + x] = graph.classes.find(s);
        }
    }
    let start = graph.classes.find(0);
    let table = CongruenceTable::canonical(letters, start, |c, x| successor_class[c * letters + x]);
    assert!(
        table.is_model_of(presentation),
        "word closure produced a table that violates the presentation"
    );
    if table.size() > bound {
        return QuotientOutcome::Exceeded(Exceeded {
            classes_reached: table.size(),
            complete: true,
        });
    }
    QuotientOutcome::Complete(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{enumerate_quotient, sym_presentation};

    #[test]
    fn agrees_with_todd_coxeter_on_small_groups() {
        for n in 3..=5 {
            let p = sym_presentation(n).unwrap();
            let ours = enumerate(&p, 10_000, 1_000_000);
            let theirs = enumerate_quotient(&p, 10_000);
            assert_eq!(ours, theirs);
        }
    }

    #[test]
    fn free_monoid_runs_out_of_nodes() {
        let p = Presentation::new(["a", "b"]).unwrap();
        assert!(matches!(
            enumerate(&p, 10, 1000),
            QuotientOutcome::Exceeded(Exceeded { complete: false, .. })
        ));
    }

    #[test]
    fn reconstructs_words_from_the_trie() {
        let mut p = Presentation::new(["a"]).unwrap();
        p.relate("a^3", "a").unwrap();
        let mut g = WordGraph::new(&p, 100);
        let n = g.walk(0, &[0, 0]).unwrap();
        assert_eq!(g.word_of(n), vec![0, 0]);
    }
}
