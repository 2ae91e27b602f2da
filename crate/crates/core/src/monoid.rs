//! Monoids of transformations: breadth-first enumeration from generators,
//! witness words, membership and regularity.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::transform::Transformation;

/// Default cap on the number of elements [`generate`] will enumerate.
pub const DEFAULT_ELEMENT_BUDGET: usize = 1_000_000;

/// A word over generator (or alphabet) indices.
pub type Word = Vec<usize>;

/// Letter name to transformation.
pub type Assignment = BTreeMap<String, Transformation>;

/// A finite monoid of transformations of a fixed degree.
///
/// Monoids built by [`generate`] carry their generators, a shortlex witness
/// word per element and the right Cayley graph. Monoids built from an
/// explicit element list ([`TransformationMonoid::from_elements`]) carry
/// none of these.
#[derive(Clone, Debug)]
pub struct TransformationMonoid {
    degree: usize,
    elements: Vec<Transformation>,
    lookup: HashMap<Transformation, usize>,
    generators: Vec<(String, Transformation)>,
    words: Vec<Word>,
    /// `right_cayley[i * generators.len() + g]` is the index of `elements[i] * g`.
    right_cayley: Vec<usize>,
}

impl TransformationMonoid {
    /// Wraps an explicit element list, keeping its order. The list must be
    /// duplicate-free, of uniform degree and contain the identity.
    pub fn from_elements(degree: usize, elements: Vec<Transformation>) -> Result<Self> {
        let mut lookup = HashMap::with_capacity(elements.len());
        for (i, e) in elements.iter().enumerate() {
            if e.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: e.degree(),
                });
            }
            if lookup.insert(e.clone(), i).is_some() {
                return Err(Error::NotAMonoid(format!("duplicate element {e}")));
            }
        }
        if !lookup.contains_key(&Transformation::identity(degree)?) {
            return Err(Error::NotAMonoid("identity is missing".into()));
        }
        Ok(Self {
            degree,
            elements,
            lookup,
            generators: Vec::new(),
            words: Vec::new(),
            right_cayley: Vec::new(),
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Transformation] {
        &self.elements
    }

    pub fn generators(&self) -> &[(String, Transformation)] {
        &self.generators
    }

    pub fn generator_names(&self) -> impl Iterator<Item = &str> {
        self.generators.iter().map(|(n, _)| n.as_str())
    }

    pub fn has_witness_words(&self) -> bool {
        !self.words.is_empty()
    }

    pub fn index_of(&self, f: &Transformation) -> Option<usize> {
        self.lookup.get(f).copied()
    }

    pub fn contains(&self, f: &Transformation) -> bool {
        self.lookup.contains_key(f)
    }

    /// The stored shortlex witness word of `f`, if `f` is a member and the
    /// monoid was built from generators.
    pub fn word_for(&self, f: &Transformation) -> Option<&[usize]> {
        let i = self.index_of(f)?;
        self.words.get(i).map(Vec::as_slice)
    }

    pub fn word(&self, index: usize) -> Option<&[usize]> {
        self.words.get(index).map(Vec::as_slice)
    }

    /// Right Cayley graph lookup: index of `elements[index] * generators[generator]`.
    pub fn right_multiply(&self, index: usize, generator: usize) -> Option<usize> {
        if self.generators.is_empty() || generator >= self.generators.len() {
            return None;
        }
        self.right_cayley
            .get(index * self.generators.len() + generator)
            .copied()
    }

    /// Evaluates a word over this monoid's generators left to right.
    pub fn evaluate(&self, word: &[usize]) -> Result<Transformation> {
        let mut acc = Transformation::identity(self.degree)?;
        for &g in word {
            let (_, t) = self
                .generators
                .get(g)
                .ok_or_else(|| Error::UnassignedLetter(format!("#{g}")))?;
            acc = acc.then(t);
        }
        Ok(acc)
    }

    /// Spells a word using generator names, separated by spaces.
    pub fn spell(&self, word: &[usize]) -> String {
        word.iter()
            .map(|&g| self.generators[g].0.as_str())
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Indices of the invertible elements.
    pub fn unit_indices(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.elements[i].is_permutation())
            .collect()
    }

    /// Pairwise closure check. Quadratic in the size; meant for small monoids.
    pub fn is_closed(&self) -> bool {
        self.elements.par_iter().all(|f| {
            self.elements
                .iter()
                .all(|g| self.lookup.contains_key(&f.then(g)))
        })
    }

    /// Element-set equality, ignoring order and generator data.
    pub fn same_elements(&self, other: &Self) -> bool {
        self.degree == other.degree
            && self.len() == other.len()
            && self.elements.iter().all(|e| other.contains(e))
    }

    /// Line-based dump: a header `degree n size m`, then one line
    /// `index: images : witness-word` per element.
    pub fn dump(&self) -> String {
        let mut out = format!("degree {} size {}\n", self.degree, self.len());
        for (i, e) in self.elements.iter().enumerate() {
            let _ = write!(out, "{i}: {e} :");
            if let Some(word) = self.words.get(i) {
                if !word.is_empty() {
                    out.push(' ');
                    out.push_str(&self.spell(word));
                }
            }
            out.push('\n');
        }
        out
    }
}

/// Enumerates the monoid generated by `generators` breadth first.
///
/// Elements appear in shortlex order of their witness words, with the order
/// of `generators` as the letter order; the identity is element 0 with the
/// empty word.
pub fn generate(generators: &[(String, Transformation)]) -> Result<TransformationMonoid> {
    generate_with_budget(generators, DEFAULT_ELEMENT_BUDGET)
}

pub fn generate_with_budget(
    generators: &[(String, Transformation)],
    budget: usize,
) -> Result<TransformationMonoid> {
    let degree = generators.first().ok_or(Error::NoGenerators)?.1.degree();
    closure(degree, generators, budget)
}

pub(crate) fn closure(
    degree: usize,
    generators: &[(String, Transformation)],
    budget: usize,
) -> Result<TransformationMonoid> {
    for (_, g) in generators {
        if g.degree() != degree {
            return Err(Error::DegreeMismatch {
                left: degree,
                right: g.degree(),
            });
        }
    }
    let identity = Transformation::identity(degree)?;
    let mut elements = vec![identity.clone()];
    let mut words: Vec<Word> = vec![Vec::new()];
    let mut lookup = HashMap::from([(identity, 0usize)]);
    let mut right_cayley = Vec::new();

    let mut current = 0;
    while current < elements.len() {
        for (g, (_, generator)) in generators.iter().enumerate() {
            let product = elements[current].then(generator);
            let index = match lookup.get(&product) {
                Some(&i) => i,
                None => {
                    if elements.len() >= budget {
                        return Err(Error::Budget {
                            what: "monoid size",
                            requested: elements.len() + 1,
                            limit: budget,
                        });
                    }
                    let i = elements.len();
                    let mut word = words[current].clone();
                    word.push(g);
                    lookup.insert(product.clone(), i);
                    elements.push(product);
                    words.push(word);
                    i
                }
            };
            right_cayley.push(index);
        }
        current += 1;
    }

    Ok(TransformationMonoid {
        degree,
        elements,
        lookup,
        generators: generators.to_vec(),
        words,
        right_cayley,
    })
}

/// Whether the transformations in `candidates` generate exactly `target`.
pub fn is_generating_set(target: &TransformationMonoid, candidates: &[Transformation]) -> Result<bool> {
    if candidates.iter().any(|c| !target.contains(c)) {
        return Ok(false);
    }
    let named: Vec<(String, Transformation)> = candidates
        .iter()
        .enumerate()
        .map(|(i, c)| (format!("x{i}"), c.clone()))
        .collect();
    let generated = closure(target.degree(), &named, target.len() + 1)?;
    Ok(generated.len() == target.len())
}

/// Evaluates a word of letter names left to right; the empty word is `None`
/// (the identity of whatever degree the caller has in mind).
fn evaluate_letters<S: AsRef<str>>(
    assignment: &Assignment,
    word: &[S],
) -> Result<Option<Transformation>> {
    let mut acc: Option<Transformation> = None;
    for letter in word {
        let t = assignment
            .get(letter.as_ref())
            .ok_or_else(|| Error::UnassignedLetter(letter.as_ref().to_string()))?;
        acc = Some(match acc {
            None => t.clone(),
            Some(a) => a.compose(t)?,
        });
    }
    Ok(acc)
}

/// Whether `lhs = rhs` holds when each letter is replaced by its assigned
/// transformation and words are multiplied left to right.
pub fn check_relation<S: AsRef<str>>(assignment: &Assignment, lhs: &[S], rhs: &[S]) -> Result<bool> {
    let mut degrees = assignment.values().map(Transformation::degree);
    if let Some(d) = degrees.next() {
        if let Some(other) = degrees.find(|&e| e != d) {
            return Err(Error::DegreeMismatch { left: d, right: other });
        }
    }
    let left = evaluate_letters(assignment, lhs)?;
    let right = evaluate_letters(assignment, rhs)?;
    Ok(match (left, right) {
        (None, None) => true,
        (Some(f), None) | (None, Some(f)) => f.is_identity(),
        (Some(f), Some(g)) => f == g,
    })
}

/// Whether some `b` in `monoid` satisfies `f b f = f`.
pub fn is_regular_element(f: &Transformation, monoid: &TransformationMonoid) -> Result<bool> {
    if !monoid.contains(f) {
        return Err(Error::NotAMember);
    }
    Ok(monoid.elements().iter().any(|b| f.then(b).then(f) == *f))
}

/// Whether every element of `monoid` is regular.
pub fn is_regular_monoid(monoid: &TransformationMonoid) -> bool {
    monoid.elements().par_iter().all(|f| {
        monoid
            .elements()
            .iter()
            .any(|b| f.then(b).then(f) == *f)
    })
}
