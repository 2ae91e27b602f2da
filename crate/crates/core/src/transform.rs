//! Full transformations of `{0, ..., n-1}`.
//!
//! Transformations act on the right: `compose(f, g)` applies `f` first and
//! then `g`, so `compose(f, g).apply(i) == g.apply(f.apply(i))`. Products of
//! words are read left to right in the same way. Every relation of the star
//! graph presentations is checked against this convention.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported degree; images are stored as bytes.
pub const MAX_DEGREE: usize = u8::MAX as usize;

/// A full map on `{0, ..., n-1}` stored as its image sequence.
///
/// Ordering is lexicographic on the image sequence.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Transformation {
    images: Vec<u8>,
}

impl Transformation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let degree = images.len();
        check_degree(degree)?;
        let mut bytes = Vec::with_capacity(degree);
        for (position, &image) in images.iter().enumerate() {
            if image >= degree {
                return Err(Error::ImageOutOfRange {
                    position,
                    image,
                    degree,
                });
            }
            bytes.push(image as u8);
        }
        Ok(Self { images: bytes })
    }

    pub(crate) fn from_bytes_unchecked(images: Vec<u8>) -> Self {
        debug_assert!(images.iter().all(|&i| (i as usize) < images.len()));
        Self { images }
    }

    pub fn identity(degree: usize) -> Result<Self> {
        check_degree(degree)?;
        Ok(Self {
            images: (0..degree as u8).collect(),
        })
    }

    /// The constant map with value `value`.
    pub fn constant(degree: usize, value: usize) -> Result<Self> {
        check_degree(degree)?;
        Self::new(vec![value; degree])
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> impl ExactSizeIterator<Item = usize> + '_ {
        self.images.iter().map(|&i| i as usize)
    }

    pub(crate) fn bytes(&self) -> &[u8] {
        &self.images
    }

    /// `self` followed by `other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.then(other))
    }

    /// Unchecked composition for callers that already know the degrees agree.
    pub(crate) fn then(&self, other: &Self) -> Self {
        Self {
            images: self
                .images
                .iter()
                .map(|&i| other.images[i as usize])
                .collect(),
        }
    }

    pub fn power(&self, exponent: usize) -> Self {
        let mut result = Self {
            images: (0..self.degree() as u8).collect(),
        };
        let mut base = self.clone();
        let mut k = exponent;
        // Powers of a single map commute, so square-and-multiply is safe.
        while k > 0 {
            if k & 1 == 1 {
                result = result.then(&base);
            }
            base = base.then(&base);
            k >>= 1;
        }
        result
    }

    pub fn image(&self) -> BTreeSet<usize> {
        self.images().collect()
    }

    pub fn rank(&self) -> usize {
        self.image().len()
    }

    /// Kernel blocks, ordered by their smallest point.
    pub fn kernel(&self) -> Vec<Vec<usize>> {
        let mut block_of = vec![usize::MAX; self.degree()];
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for (point, image) in self.images().enumerate() {
            if block_of[image] == usize::MAX {
                block_of[image] = blocks.len();
                blocks.push(Vec::new());
            }
            blocks[block_of[image]].push(point);
        }
        blocks
    }

    pub fn is_permutation(&self) -> bool {
        self.rank() == self.degree()
    }

    pub fn is_idempotent(&self) -> bool {
        self.then(self) == *self
    }

    pub fn is_identity(&self) -> bool {
        self.images().enumerate().all(|(i, j)| i == j)
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_permutation() {
            return None;
        }
        let mut images = vec![0u8; self.degree()];
        for (i, j) in self.images().enumerate() {
            images[j] = i as u8;
        }
        Some(Self { images })
    }
}

fn check_degree(degree: usize) -> Result<()> {
    if degree == 0 || degree > MAX_DEGREE {
        return Err(Error::InvalidDegree(degree));
    }
    Ok(())
}

impl TryFrom<Vec<usize>> for Transformation {
    type Error = Error;

    fn try_from(images: Vec<usize>) -> Result<Self> {
        Self::new(images)
    }
}

impl From<Transformation> for Vec<usize> {
    fn from(t: Transformation) -> Self {
        t.images().collect()
    }
}

impl fmt::Display for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, image) in self.images.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{image}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

/// Parses the comma-separated image list, e.g. `"0,2,1,3"`.
impl FromStr for Transformation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parse_error = |reason: String| Error::Parse {
            input: s.to_string(),
            reason,
        };
        let trimmed = s.trim();
        if trimmed.is_empty() {
            return Err(parse_error("empty image list".into()));
        }
        let images = trimmed
            .split(',')
            .map(|token| {
                token
                    .trim()
                    .parse::<usize>()
                    .map_err(|e| parse_error(format!("{token:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(images)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn t(images: &[usize]) -> Transformation {
        Transformation::new(images.to_vec()).unwrap()
    }

    // Pointwise oracle, independent of `then`.
    fn compose_oracle(f: &[usize], g: &[usize]) -> Vec<usize> {
        let mut out = Vec::new();
        for i in 0..f.len() {
            out.push(g[f[i]]);
        }
        out
    }

    #[test]
    fn identity_examples() {
        assert_eq!(Transformation::identity(4).unwrap(), t(&[0, 1, 2, 3]));
        assert_eq!(Transformation::identity(1).unwrap(), t(&[0]));
        assert_eq!(
            Transformation::identity(0),
            Err(Error::InvalidDegree(0))
        );
        let f = t(&[0, 2, 1, 3]);
        assert_eq!(f.compose(&Transformation::identity(4).unwrap()).unwrap(), f);
    }

    #[test]
    fn compose_examples() {
        assert_eq!(
            compose_oracle(&[0, 2, 1, 3], &[0, 2, 3, 1]),
            vec![0, 3, 2, 1]
        );
        assert_eq!(
            t(&[0, 2, 1, 3]).compose(&t(&[0, 2, 3, 1])).unwrap(),
            t(&[0, 3, 2, 1])
        );
        let z = t(&[1, 0, 0, 0]);
        assert_eq!(compose_oracle(&[1, 0, 0, 0], &[1, 0, 0, 0]), vec![0, 1, 1, 1]);
        assert_eq!(z.compose(&z).unwrap(), t(&[0, 1, 1, 1]));
    }

    #[test]
    fn compose_rejects_mixed_degree() {
        let err = t(&[0, 1]).compose(&t(&[0, 1, 2])).unwrap_err();
        assert_eq!(err, Error::DegreeMismatch { left: 2, right: 3 });
    }

    #[test]
    fn power_examples() {
        let z = t(&[1, 0, 0, 0]);
        assert_eq!(z.power(3), z);
        assert_eq!(z.power(0), Transformation::identity(4).unwrap());
        assert_eq!(t(&[0, 2, 1, 3]).power(2), Transformation::identity(4).unwrap());
    }

    #[test]
    fn image_and_kernel() {
        assert_eq!(t(&[1, 0, 0, 0]).image(), [0, 1].into_iter().collect());
        assert_eq!(
            Transformation::identity(4).unwrap().image(),
            (0..4).collect()
        );
        assert_eq!(t(&[0, 0, 0, 0]).image(), [0].into_iter().collect());

        assert_eq!(t(&[0, 1, 1, 3]).kernel(), vec![vec![0], vec![1, 2], vec![3]]);
        assert_eq!(
            Transformation::identity(4).unwrap().kernel(),
            vec![vec![0], vec![1], vec![2], vec![3]]
        );
        assert_eq!(t(&[0, 0, 0, 0]).kernel(), vec![vec![0, 1, 2, 3]]);
    }

    #[test]
    fn predicates() {
        assert!(t(&[0, 2, 1, 3]).is_permutation());
        assert!(!t(&[0, 1, 1, 3]).is_permutation());
        assert!(t(&[0, 1, 1, 3]).is_idempotent());
        assert!(!t(&[1, 0, 0, 0]).is_idempotent());
    }

    #[test]
    fn text_format() {
        let f: Transformation = "0,2,1,3".parse().unwrap();
        assert_eq!(f, t(&[0, 2, 1, 3]));
        assert_eq!(f.to_string(), "0,2,1,3");
        assert!(" 1 , 0 ".parse::<Transformation>().is_ok());
        assert!(matches!("0,4".parse::<Transformation>(), Err(Error::ImageOutOfRange { .. })));
        assert!(matches!("0,x".parse::<Transformation>(), Err(Error::Parse { .. })));
        assert!(matches!("".parse::<Transformation>(), Err(Error::Parse { .. })));
    }

    #[test]
    fn associativity_exhaustive_small_degrees() {
        for n in 1..=3usize {
            let all: Vec<Transformation> = all_maps(n);
            for f in &all {
                for g in &all {
                    let fg = f.then(g);
                    for h in &all {
                        assert_eq!(fg.then(h), f.then(&g.then(h)));
                    }
                }
            }
        }
    }

    fn all_maps(n: usize) -> Vec<Transformation> {
        let total = n.pow(n as u32);
        (0..total)
            .map(|mut code| {
                let mut images = vec![0; n];
                for slot in images.iter_mut().rev() {
                    *slot = code % n;
                    code /= n;
                }
                t(&images)
            })
            .collect()
    }

    fn arb_triple() -> impl Strategy<Value = (Vec<usize>, Vec<usize>, Vec<usize>)> {
        (1usize..=9).prop_flat_map(|n| {
            let v = || proptest::collection::vec(0..n, n);
            (v(), v(), v())
        })
    }

    proptest! {
        #[test]
        fn compose_matches_pointwise_oracle((f, g, _h) in arb_triple()) {
            prop_assert_eq!(
                t(&f).compose(&t(&g)).unwrap(),
                t(&compose_oracle(&f, &g))
            );
        }

        #[test]
        fn compose_is_associative((f, g, h) in arb_triple()) {
            let (f, g, h) = (t(&f), t(&g), t(&h));
            prop_assert_eq!(f.then(&g).then(&h), f.then(&g.then(&h)));
        }

        #[test]
        fn identity_is_two_sided_neutral((f, _g, _h) in arb_triple()) {
            let f = t(&f);
            let id = Transformation::identity(f.degree()).unwrap();
            prop_assert_eq!(f.then(&id), f.clone());
            prop_assert_eq!(id.then(&f), f);
        }

        #[test]
        fn powers_eventually_cycle((f, _g, _h) in arb_triple()) {
            let f = t(&f);
            let n = f.degree();
            let powers: Vec<_> = (0..=n + 1).map(|k| f.power(k)).collect();
            // the rank sequence stabilises by the n-th power
            prop_assert_eq!(powers[n].image(), powers[n + 1].image());
            // square-and-multiply agrees with repeated composition
            let mut acc = Transformation::identity(n).unwrap();
            for p in &powers {
                prop_assert_eq!(&acc, p);
                acc = acc.then(&f);
            }
        }

        #[test]
        fn kernel_blocks_match_image_size((f, _g, _h) in arb_triple()) {
            let f = t(&f);
            prop_assert_eq!(f.kernel().len(), f.image().len());
        }

        #[test]
        fn text_round_trip((f, _g, _h) in arb_triple()) {
            let f = t(&f);
            prop_assert_eq!(f.to_string().parse::<Transformation>().unwrap(), f);
        }
    }
}
