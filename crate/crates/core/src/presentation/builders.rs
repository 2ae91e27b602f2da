//! The classical presentations of the symmetric group, the full and the
//! partial transformation monoids, and the star graph presentations built on
//! top of them.
//!
//! Chains `t_1 = ... = t_k` are stored as the pairs `t_i = t_k`; `1` is the
//! empty word.

use crate::error::{Error, Result};
use crate::graph::EndoClass;

use super::Presentation;

fn at_least_three(n: usize, what: &str) -> Result<()> {
    if n < 3 {
        return Err(Error::Unsupported(format!("{what} needs n >= 3, got {n}")));
    }
    Ok(())
}

fn add_symmetric_relations(p: &mut Presentation, n: usize) -> Result<()> {
    let mut terms = vec![
        "a^2".to_string(),
        format!("b^{n}"),
        format!("(b a)^{}", n - 1),
        format!("(a b^{} a b)^3", n - 1),
    ];
    for j in 2..=n.saturating_sub(2) {
        terms.push(format!("(a b^{} a b^{j})^2", n - j));
    }
    terms.push("1".into());
    p.relate_chain(&terms.iter().map(String::as_str).collect::<Vec<_>>())
}

/// Relations on `a, b, e` shared by the full and partial transformation monoids.
fn add_idempotent_relations(p: &mut Presentation, n: usize) -> Result<()> {
    let m1 = n - 1;
    if n == 3 {
        p.relate_chain(&["a e", "b a b^2 a b e b^2 a b a b^2", "(e b a b^2)^2", "e"])?;
        p.relate_chain(&["(b^2 a b e)^2", "e b^2 a b e", "(e b^2 a b)^2"])?;
        return Ok(());
    }
    let m2 = n - 2;
    p.relate_chain(&[
        "a e",
        &format!("b^{m2} a b^2 e b^{m2} a b^2"),
        &format!("b a b^{m1} a b e b^{m1} a b a b^{m1}"),
        &format!("(e b a b^{m1})^2"),
        "e",
    ])?;
    p.relate_chain(&[
        &format!("(b^{m1} a b e)^2"),
        &format!("e b^{m1} a b e"),
        &format!("(e b^{m1} a b)^2"),
    ])?;
    p.relate(
        &format!("(e b a b^{m2} a b)^2"),
        &format!("(b a b^{m2} a b e)^2"),
    )
}

/// Moore's presentation of the symmetric group of degree `n` on the
/// transposition `a = (1 2)` and the cycle `b = (1 2 ... n)`.
pub fn sym_presentation(n: usize) -> Result<Presentation> {
    at_least_three(n, "symmetric group presentation")?;
    let mut p = Presentation::new(["a", "b"])?;
    add_symmetric_relations(&mut p, n)?;
    Ok(p)
}

/// Aizenstat's presentation of the full transformation monoid of degree `n`
/// on `a`, `b` and the idempotent `e` sending 2 to 1.
pub fn full_transf_presentation(n: usize) -> Result<Presentation> {
    at_least_three(n, "full transformation monoid presentation")?;
    let mut p = Presentation::new(["a", "b", "e"])?;
    add_symmetric_relations(&mut p, n)?;
    add_idempotent_relations(&mut p, n)?;
    Ok(p)
}

/// Popova's presentation of the partial transformation monoid of degree `n`
/// on `a`, `b`, the partial identity `c` undefined at 1, and `e`.
pub fn partial_transf_presentation(n: usize) -> Result<Presentation> {
    at_least_three(n, "partial transformation monoid presentation")?;
    let m1 = n - 1;
    let mut p = Presentation::new(["a", "b", "c", "e"])?;
    add_symmetric_relations(&mut p, n)?;
    p.relate_chain(&[
        &format!("b^{m1} a b c b^{m1} a b"),
        &format!("b a c a b^{m1}"),
        "c^2",
        "c",
    ])?;
    p.relate_chain(&["(c a)^2", "(a c)^2", "c a c"])?;
    add_idempotent_relations(&mut p, n)?;
    p.relate("e c", "c a c")?;
    p.relate("c e", "c a")?;
    p.relate("e a c", "e a")?;
    let w = format!("a b^{m1} a b a");
    p.relate(&format!("e {w} c"), &format!("{w} c {w} e {w}"))?;
    Ok(p)
}

fn add_fold_relations(p: &mut Presentation, n: usize) -> Result<()> {
    p.relate_chain(&["a0 z", "b0 z", "e0 z", "z"])?;
    p.relate("z^2", &format!("(e0 b0)^{} e0", n - 3))
}

/// Presentation of End of the star graph on `n` vertices.
///
/// Alphabet `a0, b0, e0, z` for `n >= 4` (the zero-fixing full transformation
/// monoid on the `n - 1` leaves, plus the fold relations), `a0, z` for `n = 3`.
pub fn end_star_presentation(n: usize) -> Result<Presentation> {
    at_least_three(n, "End presentation")?;
    if n == 3 {
        let mut p = Presentation::new(["a0", "z"])?;
        p.relate("a0^2", "1")?;
        p.relate("a0 z", "z")?;
        p.relate("z^3", "z")?;
        return Ok(p);
    }
    let mut p = full_transf_presentation(n - 1)?
        .relabel(&[("a", "a0"), ("b", "b0"), ("e", "e0")])?
        .embed_into(&["a0", "b0", "e0", "z"])?;
    add_fold_relations(&mut p, n)?;
    Ok(p)
}

/// Presentation of swEnd of the star graph on `n` vertices
/// (alphabet `a0, b0, e0, z, z0`; `a0, z, z0` for `n = 3`).
pub fn swend_star_presentation(n: usize) -> Result<Presentation> {
    at_least_three(n, "swEnd presentation")?;
    if n == 3 {
        let mut p = end_star_presentation(3)?.embed_into(&["a0", "z", "z0"])?;
        p.relate_chain(&["a0 z0", "z z0", "z0^2", "z0 a0", "z0 z^2", "z0"])?;
        return Ok(p);
    }
    let mut p = end_star_presentation(n)?.embed_into(&["a0", "b0", "e0", "z", "z0"])?;
    p.relate_chain(&[
        "a0 z0", "b0 z0", "e0 z0", "z z0", "z0^2", "z0 a0", "z0 b0", "z0 e0", "z0",
    ])?;
    Ok(p)
}

/// Presentation of wEnd of the star graph on `n` vertices
/// (alphabet `a0, b0, e0, c0, z`; `a0, c0, z` for `n = 3`).
pub fn wend_star_presentation(n: usize) -> Result<Presentation> {
    at_least_three(n, "wEnd presentation")?;
    if n == 3 {
        let mut p = Presentation::new(["a0", "c0", "z"])?;
        p.relate("a0^2", "1")?;
        p.relate("a0 z", "z")?;
        p.relate("z^3", "z")?;
        p.relate("c0^2", "c0")?;
        p.relate_chain(&["(c0 a0)^2", "(a0 c0)^2", "c0 a0 c0"])?;
        p.relate("z^2 c0", "c0 a0 c0")?;
        p.relate("c0 z^2", "c0 a0")?;
        p.relate("z^2 a0 c0", "z^2 a0")?;
        p.relate("z^2 c0", "z c0")?;
        return Ok(p);
    }
    let mut p = partial_transf_presentation(n - 1)?
        .relabel(&[("a", "a0"), ("b", "b0"), ("c", "c0"), ("e", "e0")])?
        .embed_into(&["a0", "b0", "e0", "c0", "z"])?;
    add_fold_relations(&mut p, n)?;
    p.relate("z^2 c0", "z c0")?;
    Ok(p)
}

/// The star graph presentation for `class` (End, swEnd or wEnd).
pub fn star_presentation(n: usize, class: EndoClass) -> Result<Presentation> {
    match class {
        EndoClass::End => end_star_presentation(n),
        EndoClass::StrongWeakEnd => swend_star_presentation(n),
        EndoClass::WeakEnd => wend_star_presentation(n),
        other => Err(Error::Unsupported(format!(
            "no presentation is available for class {other}"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn has(p: &Presentation, lhs: &str, rhs: &str) -> bool {
        p.find_relation(lhs, rhs).unwrap().is_some()
    }

    #[test]
    fn symmetric_presentation_relations() {
        let p = sym_presentation(3).unwrap();
        assert_eq!(p.relations().len(), 4);
        for lhs in ["a^2", "b^3", "(b a)^2", "(a b^2 a b)^3"] {
            assert!(has(&p, lhs, "1"), "{lhs}");
        }
        for n in 3..=7 {
            assert_eq!(sym_presentation(n).unwrap().relations().len(), 4 + (n - 3));
        }
        assert!(has(&sym_presentation(5).unwrap(), "(a b^3 a b^2)^2", "1"));
        assert!(sym_presentation(2).is_err());
    }

    #[test]
    fn full_transformation_relations() {
        let p = full_transf_presentation(4).unwrap();
        assert!(has(&p, "(e b a b^3)^2", "e"));
        assert!(has(&p, "a e", "e"));
        assert!(has(&p, "(e b a b^2 a b)^2", "(b a b^2 a b e)^2"));
        let p3 = full_transf_presentation(3).unwrap();
        assert!(has(&p3, "b a b^2 a b e b^2 a b a b^2", "e"));
        assert_eq!(p3.relations().len(), 4 + 3 + 2);
        assert!(full_transf_presentation(1).is_err());
    }

    #[test]
    fn partial_transformation_relations() {
        let p = partial_transf_presentation(4).unwrap();
        assert!(has(&p, "(c a)^2", "c a c"));
        assert!(has(&p, "c^2", "c"));
        assert!(has(&p, "e a c", "e a"));
        assert_eq!(p.alphabet(), &["a", "b", "c", "e"]);
    }

    #[test]
    fn end_presentation_shape() {
        let p5 = end_star_presentation(5).unwrap();
        assert!(has(&p5, "z^2", "e0 b0 e0 b0 e0"));
        assert!(has(&p5, "b0 z", "z"));
        let p4 = end_star_presentation(4).unwrap();
        assert!(has(&p4, "z^2", "e0 b0 e0"));
        // the degree-3 full transformation presentation is the base at n = 4
        assert!(has(&p4, "b0 a0 b0^2 a0 b0 e0 b0^2 a0 b0 a0 b0^2", "e0"));
        let p3 = end_star_presentation(3).unwrap();
        assert_eq!(p3.alphabet(), &["a0", "z"]);
        assert_eq!(p3.relations().len(), 3);
    }

    #[test]
    fn swend_presentation_shape() {
        let end = end_star_presentation(4).unwrap();
        let sw = swend_star_presentation(4).unwrap();
        assert_eq!(sw.relations().len(), end.relations().len() + 8);
        assert!(has(&sw, "z0 e0", "z0"));
        let sw3 = swend_star_presentation(3).unwrap();
        assert!(has(&sw3, "z0 z^2", "z0"));
        assert_eq!(sw3.relations().len(), 3 + 5);
    }

    #[test]
    fn wend_presentation_shape() {
        for n in 4..=6 {
            assert!(has(&wend_star_presentation(n).unwrap(), "z^2 c0", "z c0"));
        }
        let w3 = wend_star_presentation(3).unwrap();
        assert!(has(&w3, "c0 z^2", "c0 a0"));
        assert!(has(&w3, "z^2 c0", "c0 a0 c0"));
        assert_eq!(w3.alphabet(), &["a0", "c0", "z"]);
    }

    #[test]
    fn dispatch_by_class() {
        assert!(star_presentation(4, EndoClass::Aut).is_err());
        assert!(star_presentation(2, EndoClass::End).is_err());
        assert_eq!(
            star_presentation(4, EndoClass::WeakEnd).unwrap(),
            wend_star_presentation(4).unwrap()
        );
    }
}
