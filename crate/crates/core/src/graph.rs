//! Simple graphs, star graphs and their endomorphism-type monoids.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monoid::TransformationMonoid;
use crate::transform::Transformation;

/// Default cap on the degree for brute-force enumeration (8^8 maps).
pub const DEFAULT_MAX_ENUMERATION_DEGREE: usize = 8;

/// Undirected graph without loops or multiple edges on `{0, ..., n-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    vertex_count: usize,
    edges: BTreeSet<(usize, usize)>,
    adjacent: Vec<bool>,
}

impl SimpleGraph {
    pub fn new(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::InvalidGraph("graph needs at least one vertex".into()));
        }
        let mut set = BTreeSet::new();
        let mut adjacent = vec![false; vertex_count * vertex_count];
        for &(u, v) in edges {
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::InvalidGraph(format!(
                    "edge {{{u},{v}}} has an endpoint outside 0..{vertex_count}"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("loop at vertex {u}")));
            }
            if !set.insert((u.min(v), u.max(v))) {
                return Err(Error::InvalidGraph(format!("duplicate edge {{{u},{v}}}")));
            }
            adjacent[u * vertex_count + v] = true;
            adjacent[v * vertex_count + u] = true;
        }
        Ok(Self {
            vertex_count,
            edges: set,
            adjacent,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Edges as `(min, max)` pairs in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_edge(&self, u: usize, v: usize) -> bool {
        self.adjacent[u * self.vertex_count + v]
    }
}

/// The star graph on `n` vertices: centre 0 joined to each of `1..n`.
pub fn star_graph(n: usize) -> Result<SimpleGraph> {
    if n == 0 {
        return Err(Error::InvalidDegree(0));
    }
    let edges: Vec<_> = (1..n).map(|i| (0, i)).collect();
    SimpleGraph::new(n, &edges)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EndoClass {
    #[serde(rename = "end")]
    End,
    #[serde(rename = "wend")]
    WeakEnd,
    #[serde(rename = "send")]
    StrongEnd,
    #[serde(rename = "swend")]
    StrongWeakEnd,
    #[serde(rename = "aut")]
    Aut,
}

impl EndoClass {
    pub const ALL: [EndoClass; 5] = [
        EndoClass::End,
        EndoClass::WeakEnd,
        EndoClass::StrongEnd,
        EndoClass::StrongWeakEnd,
        EndoClass::Aut,
    ];

    pub fn label(self) -> &'static str {
        match self {
            EndoClass::End => "end",
            EndoClass::WeakEnd => "wend",
            EndoClass::StrongEnd => "send",
            EndoClass::StrongWeakEnd => "swend",
            EndoClass::Aut => "aut",
        }
    }
}

impl fmt::Display for EndoClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for EndoClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        EndoClass::ALL
            .into_iter()
            .find(|c| c.label().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Unsupported(format!("unknown class {s:?}")))
    }
}

fn check_degree(f: &Transformation, graph: &SimpleGraph) -> Result<()> {
    if f.degree() != graph.vertex_count() {
        return Err(Error::DegreeMismatch {
            left: f.degree(),
            right: graph.vertex_count(),
        });
    }
    Ok(())
}

/// Tests one class definition literally over all ordered vertex pairs.
pub fn is_member(f: &Transformation, graph: &SimpleGraph, class: EndoClass) -> Result<bool> {
    check_degree(f, graph)?;
    Ok(member_unchecked(f.bytes(), graph, class))
}

fn member_unchecked(images: &[u8], graph: &SimpleGraph, class: EndoClass) -> bool {
    let n = images.len();
    if class == EndoClass::Aut {
        let mut seen = vec![false; n];
        for &i in images {
            if std::mem::replace(&mut seen[i as usize], true) {
                return false;
            }
        }
        return member_unchecked(images, graph, EndoClass::StrongEnd);
    }
    for u in 0..n {
        for v in 0..n {
            let (fu, fv) = (images[u] as usize, images[v] as usize);
            let edge = graph.is_edge(u, v);
            let image_edge = graph.is_edge(fu, fv);
            let ok = match class {
                EndoClass::End => !edge || image_edge,
                EndoClass::WeakEnd => !(edge && fu != fv) || image_edge,
                EndoClass::StrongEnd => edge == image_edge,
                EndoClass::StrongWeakEnd => (edge && fu != fv) == image_edge,
                EndoClass::Aut => unreachable!(),
            };
            if !ok {
                return false;
            }
        }
    }
    true
}

/// Every class `f` belongs to.
pub fn classify(f: &Transformation, graph: &SimpleGraph) -> Result<BTreeSet<EndoClass>> {
    check_degree(f, graph)?;
    Ok(EndoClass::ALL
        .into_iter()
        .filter(|&c| member_unchecked(f.bytes(), graph, c))
        .collect())
}

/// All members of `class` for the star graph on `n` vertices, in
/// lexicographic order, found by scanning all `n^n` maps.
pub fn enumerate_class(n: usize, class: EndoClass) -> Result<TransformationMonoid> {
    enumerate_class_with_limit(n, class, DEFAULT_MAX_ENUMERATION_DEGREE)
}

pub fn enumerate_class_with_limit(
    n: usize,
    class: EndoClass,
    max_degree: usize,
) -> Result<TransformationMonoid> {
    let graph = star_graph(n)?;
    if n > max_degree {
        return Err(Error::Budget {
            what: "enumeration degree",
            requested: n,
            limit: max_degree,
        });
    }
    let elements = enumerate_members(&graph, class)?;
    TransformationMonoid::from_elements(n, elements)
}

/// Brute-force scan of all maps on the vertices of `graph`.
pub fn enumerate_members(graph: &SimpleGraph, class: EndoClass) -> Result<Vec<Transformation>> {
    let n = graph.vertex_count();
    let total = (n as u64)
        .checked_pow(n as u32)
        .filter(|&t| t <= usize::MAX as u64)
        .ok_or(Error::Budget {
            what: "map count degree",
            requested: n,
            limit: 15,
        })?;
    const CHUNK: u64 = 1 << 14;
    let chunks = total.div_ceil(CHUNK);
    // Chunks are collected in index order, so the output stays lexicographic.
    let found: Vec<Vec<Transformation>> = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let start = chunk * CHUNK;
            let end = (start + CHUNK).min(total);
            let mut images = decode(start, n);
            let mut out = Vec::new();
            for _ in start..end {
                if member_unchecked(&images, graph, class) {
                    out.push(Transformation::from_bytes_unchecked(images.clone()));
                }
                increment(&mut images, n);
            }
            out
        })
        .collect();
    Ok(found.into_iter().flatten().collect())
}

fn decode(mut code: u64, n: usize) -> Vec<u8> {
    let mut images = vec![0u8; n];
    for slot in images.iter_mut().rev() {
        *slot = (code % n as u64) as u8;
        code /= n as u64;
    }
    images
}

fn increment(images: &mut [u8], n: usize) {
    for slot in images.iter_mut().rev() {
        if (*slot as usize) + 1 < n {
            *slot += 1;
            return;
        }
        *slot = 0;
    }
}

/// Membership in the closed-form descriptions of the star graph monoids:
///
/// * End = sEnd = maps fixing 0 and sending every leaf to a leaf, together
///   with the maps `[i, 0, ..., 0]` for a leaf `i`;
/// * swEnd = End together with all constant maps;
/// * wEnd = maps with `f(0) != 0` implying `im f` inside `{0, f(0)}`;
/// * Aut = permutations fixing 0 (only for `n >= 3`).
pub fn in_closed_form(f: &Transformation, class: EndoClass) -> Result<bool> {
    let n = f.degree();
    let centre = f.apply(0);
    let zero_fixing_full = centre == 0 && (1..n).all(|i| f.apply(i) != 0);
    let folded_onto_centre = centre != 0 && (1..n).all(|i| f.apply(i) == 0);
    let end = zero_fixing_full || folded_onto_centre;
    Ok(match class {
        EndoClass::End | EndoClass::StrongEnd => end,
        EndoClass::StrongWeakEnd => end || f.images().all(|i| i == centre),
        EndoClass::WeakEnd => centre == 0 || f.images().all(|i| i == 0 || i == centre),
        EndoClass::Aut => {
            if n < 3 {
                return Err(Error::Unsupported(
                    "the closed form for Aut holds for n >= 3".into(),
                ));
            }
            zero_fixing_full && f.is_permutation()
        }
    })
}

/// Closed-form cardinality of the class for the star graph on `n` vertices.
///
/// Valid ranges: End/sEnd and wEnd for `n >= 1`, swEnd for `n >= 2`,
/// Aut for `n >= 3`.
pub fn cardinality_formula(n: usize, class: EndoClass) -> Result<BigUint> {
    let min = match class {
        EndoClass::End | EndoClass::StrongEnd | EndoClass::WeakEnd => 1,
        EndoClass::StrongWeakEnd => 2,
        EndoClass::Aut => 3,
    };
    if n < min {
        return Err(Error::Unsupported(format!(
            "cardinality formula for {class} needs n >= {min}, got {n}"
        )));
    }
    let big = |k: usize| BigUint::from(k);
    let m = n - 1;
    Ok(match class {
        EndoClass::End | EndoClass::StrongEnd => big(m).pow(m as u32) + big(m),
        EndoClass::StrongWeakEnd => big(m).pow(m as u32) + big(2 * n - 1),
        EndoClass::WeakEnd => big(n).pow(m as u32) + big(m) * big(2).pow(m as u32),
        EndoClass::Aut => (1..=m).map(big).product(),
    })
}

/// Named transformations used as standard generators (degree `n >= 3`).
pub mod generators {
    use super::*;

    fn checked(n: usize) -> Result<()> {
        if n < 3 {
            return Err(Error::Unsupported(format!(
                "standard generators need n >= 3, got {n}"
            )));
        }
        Ok(())
    }

    /// Swaps 1 and 2.
    pub fn a0(n: usize) -> Result<Transformation> {
        checked(n)?;
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(1, 2);
        Transformation::new(images)
    }

    /// The cycle 1 -> 2 -> ... -> n-1 -> 1.
    pub fn b0(n: usize) -> Result<Transformation> {
        checked(n)?;
        let images = (0..n)
            .map(|i| match i {
                0 => 0,
                i if i == n - 1 => 1,
                i => i + 1,
            })
            .collect();
        Transformation::new(images)
    }

    /// Sends 2 to 1, fixes everything else.
    pub fn e0(n: usize) -> Result<Transformation> {
        checked(n)?;
        let mut images: Vec<usize> = (0..n).collect();
        images[2] = 1;
        Transformation::new(images)
    }

    /// Sends 1 to the centre, fixes everything else.
    pub fn c0(n: usize) -> Result<Transformation> {
        checked(n)?;
        let mut images: Vec<usize> = (0..n).collect();
        images[1] = 0;
        Transformation::new(images)
    }

    /// `[1, 0, ..., 0]`.
    pub fn z(n: usize) -> Result<Transformation> {
        checked(n)?;
        let mut images = vec![0; n];
        images[0] = 1;
        Transformation::new(images)
    }

    /// The constant map onto the centre.
    pub fn z0(n: usize) -> Result<Transformation> {
        checked(n)?;
        Transformation::constant(n, 0)
    }
}

/// Standard named generating sets of End, swEnd and wEnd of the star graph.
///
/// For `n >= 4`: `{a0, b0, e0, z}`, `{a0, b0, e0, z, z0}`, `{a0, b0, e0, c0, z}`.
/// For `n = 3` (where `b0 = a0` and `e0 = z^2`): `{a0, z}`, `{a0, z, z0}`,
/// `{a0, c0, z}`.
pub fn standard_generators(n: usize, class: EndoClass) -> Result<Vec<(String, Transformation)>> {
    use generators::*;
    if n < 3 {
        return Err(Error::Unsupported(format!(
            "standard generators need n >= 3, got {n}"
        )));
    }
    let names: &[&str] = match (class, n) {
        (EndoClass::End, 3) => &["a0", "z"],
        (EndoClass::StrongWeakEnd, 3) => &["a0", "z", "z0"],
        (EndoClass::WeakEnd, 3) => &["a0", "c0", "z"],
        (EndoClass::End, _) => &["a0", "b0", "e0", "z"],
        (EndoClass::StrongWeakEnd, _) => &["a0", "b0", "e0", "z", "z0"],
        (EndoClass::WeakEnd, _) => &["a0", "b0", "e0", "c0", "z"],
        _ => {
            return Err(Error::Unsupported(format!(
                "no standard generating set for class {class}"
            )))
        }
    };
    names
        .iter()
        .map(|&name| {
            let t = match name {
                "a0" => a0(n),
                "b0" => b0(n),
                "e0" => e0(n),
                "c0" => c0(n),
                "z" => z(n),
                "z0" => z0(n),
                _ => unreachable!(),
            }?;
            Ok((name.to_string(), t))
        })
        .collect()
}
