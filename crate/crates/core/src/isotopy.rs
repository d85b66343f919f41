//! Principal isotopes, autotopism triples and pseudo-automorphisms.
//!
//! Permutations compose left to right: `p.then(q)` is `y ↦ (yP)Q`, so an
//! operator string like `𝕉_v R_b 𝕃_u L_x` is read as "apply 𝕉_v first".
//! `𝕉_a = R_a⁻¹` and `𝕃_a = L_a⁻¹`.

use std::fmt;

use serde::Serialize;

use crate::error::PropertyError;
use crate::loops::FiniteLoop;
use crate::perm::Perm;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum IsotopeSpec {
    /// `x△y = (x/v)·(u\y)`, identity `u·v`.
    Full { u: usize, v: usize },
    /// `x△y = (x/v)·y`, identity `v`.
    Left { v: usize },
    /// `x△y = x·(u\y)`, identity `u`.
    Right { u: usize },
}

impl fmt::Display for IsotopeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IsotopeSpec::Full { u, v } => write!(f, "full(u={u}, v={v})"),
            IsotopeSpec::Left { v } => write!(f, "left(v={v})"),
            IsotopeSpec::Right { u } => write!(f, "right(u={u})"),
        }
    }
}

/// Builds the isotope table. Labels are kept, so the identity of a full
/// isotope is `u·v` rather than `0`.
///
/// Panics if a spec element is out of range.
pub fn principal_isotope(l: &FiniteLoop, spec: IsotopeSpec) -> FiniteLoop {
    let n = l.order();
    let e = l.identity();
    let (u, v) = match spec {
        IsotopeSpec::Full { u, v } => (u, v),
        IsotopeSpec::Left { v } => (e, v),
        IsotopeSpec::Right { u } => (u, e),
    };
    assert!(u < n && v < n, "isotope parameters out of range");
    let mut table = Vec::with_capacity(n * n);
    for x in 0..n {
        let xv = l.rdiv(x, v);
        for y in 0..n {
            table.push(l.mul(xv, l.ldiv(u, y)) as u8);
        }
    }
    FiniteLoop::from_flat(n, table, Some(l.mul(u, v)))
        .expect("principal isotopes of loops are loops")
}

/// All `n²` full principal isotopes, ordered by `(u, v)`.
pub fn all_principal_isotopes(l: &FiniteLoop) -> impl Iterator<Item = (IsotopeSpec, FiniteLoop)> + '_ {
    let n = l.order();
    (0..n * n).map(move |k| {
        let spec = IsotopeSpec::Full { u: k / n, v: k % n };
        (spec, principal_isotope(l, spec))
    })
}

pub fn left_principal_isotopes(l: &FiniteLoop) -> impl Iterator<Item = (IsotopeSpec, FiniteLoop)> + '_ {
    (0..l.order()).map(move |v| {
        let spec = IsotopeSpec::Left { v };
        (spec, principal_isotope(l, spec))
    })
}

pub fn right_principal_isotopes(l: &FiniteLoop) -> impl Iterator<Item = (IsotopeSpec, FiniteLoop)> + '_ {
    (0..l.order()).map(move |u| {
        let spec = IsotopeSpec::Right { u };
        (spec, principal_isotope(l, spec))
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutotopismTriple {
    pub a: Perm,
    pub b: Perm,
    pub c: Perm,
}

impl AutotopismTriple {
    pub fn new(a: Perm, b: Perm, c: Perm) -> Self {
        assert!(
            a.order() == b.order() && b.order() == c.order(),
            "triple components must act on the same set"
        );
        AutotopismTriple { a, b, c }
    }

    pub fn identity(n: usize) -> Self {
        Self::new(Perm::identity(n), Perm::identity(n), Perm::identity(n))
    }

    /// Componentwise `self` then `other`.
    pub fn then(&self, other: &AutotopismTriple) -> AutotopismTriple {
        AutotopismTriple::new(self.a.then(&other.a), self.b.then(&other.b), self.c.then(&other.c))
    }

    pub fn is_trivial(&self) -> bool {
        self.a.is_identity() && self.b.is_identity() && self.c.is_identity()
    }
}

/// First `(x, y)` in row-major order with `xA·yB ≠ (x·y)C`.
pub fn autotopism_failure(l: &FiniteLoop, t: &AutotopismTriple) -> Option<(usize, usize)> {
    let n = l.order();
    assert_eq!(t.a.order(), n, "triple order does not match the loop");
    (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .find(|&(x, y)| l.mul(t.a.apply(x), t.b.apply(y)) != t.c.apply(l.mul(x, y)))
}

pub fn is_autotopism(l: &FiniteLoop, t: &AutotopismTriple) -> bool {
    autotopism_failure(l, t).is_none()
}

struct Maps<'a>(&'a FiniteLoop);

impl Maps<'_> {
    fn r(&self, a: usize) -> Perm {
        self.0.right_translation(a)
    }
    fn l(&self, a: usize) -> Perm {
        self.0.left_translation(a)
    }
    fn ri(&self, a: usize) -> Perm {
        self.r(a).inverse()
    }
    fn li(&self, a: usize) -> Perm {
        self.l(a).inverse()
    }
}

fn chain(perms: &[Perm]) -> Perm {
    let (first, rest) = perms.split_first().expect("nonempty chain");
    rest.iter().fold(first.clone(), |acc, p| acc.then(p))
}

/// The three autotopisms attached to `(x, u, v)` in a universal Osborn loop:
/// `(α, β, γ)`, the variant with a modified first component, and
/// `(γ 𝕉_{u\[(u/v)b]}, β, γ)` where `b = u\(xv)`.
pub fn osborn_triples(l: &FiniteLoop, x: usize, u: usize, v: usize) -> [AutotopismTriple; 3] {
    let m = Maps(l);
    let b = l.ldiv(u, l.mul(x, v));
    let a = l.ldiv(u, l.mul(l.rdiv(l.mul(u, v), b), v));
    let gamma = chain(&[m.ri(v), m.r(b), m.li(u), m.l(x)]);
    let beta = chain(&[m.l(u), m.ri(v), m.r(b), m.li(u)]);
    let alpha = chain(&[m.r(a), m.ri(v), m.r(b), m.li(u), m.l(x), m.ri(v)]);
    let alpha2 = chain(&[
        m.r(b),
        m.ri(v),
        m.r(l.ldiv(x, l.mul(u, v))),
        m.ri(b),
        m.r(v),
        gamma.clone(),
        m.ri(v),
    ]);
    let alpha3 = gamma.then(&m.ri(l.ldiv(u, l.mul(l.rdiv(u, v), b))));
    [
        AutotopismTriple::new(alpha, beta.clone(), gamma.clone()),
        AutotopismTriple::new(alpha2, beta.clone(), gamma.clone()),
        AutotopismTriple::new(alpha3, beta, gamma),
    ]
}

/// Left analogue, parameters `(x, v)`.
pub fn left_osborn_triples(l: &FiniteLoop, x: usize, v: usize) -> [AutotopismTriple; 3] {
    let m = Maps(l);
    let xv = l.mul(x, v);
    let gamma = chain(&[m.ri(v), m.r(xv), m.l(x)]);
    let beta = m.ri(v).then(&m.r(xv));
    let alpha = chain(&[
        m.r(l.mul(l.rdiv(v, xv), v)),
        m.ri(v),
        m.r(xv),
        m.l(x),
        m.ri(v),
    ]);
    let alpha2 = chain(&[
        m.r(xv),
        m.ri(v),
        m.r(l.ldiv(x, v)),
        m.ri(xv),
        m.r(v),
        gamma.clone(),
        m.ri(v),
    ]);
    let alpha3 = gamma.then(&m.ri(l.mul(l.lin(v), xv)));
    [
        AutotopismTriple::new(alpha, beta.clone(), gamma.clone()),
        AutotopismTriple::new(alpha2, beta.clone(), gamma.clone()),
        AutotopismTriple::new(alpha3, beta, gamma),
    ]
}

/// Right analogue, parameters `(x, u)`.
pub fn right_osborn_triples(l: &FiniteLoop, x: usize, u: usize) -> [AutotopismTriple; 3] {
    let m = Maps(l);
    let ux = l.ldiv(u, x);
    let gamma = chain(&[m.r(ux), m.li(u), m.l(x)]);
    let beta = chain(&[m.l(u), m.r(ux), m.li(u)]);
    let alpha = chain(&[m.r(l.ldiv(u, l.rdiv(u, ux))), m.r(ux), m.li(u), m.l(x)]);
    let alpha2 = chain(&[m.r(ux), m.r(l.ldiv(x, u)), m.ri(ux), gamma.clone()]);
    let alpha3 = gamma.then(&m.ri(ux));
    [
        AutotopismTriple::new(alpha, beta.clone(), gamma.clone()),
        AutotopismTriple::new(alpha2, beta.clone(), gamma.clone()),
        AutotopismTriple::new(alpha3, beta, gamma),
    ]
}

/// Which autotopism shape counts as a left/right pseudo-automorphism.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PseudoConvention {
    /// Left: `(c·xA)(yA) = c·(xy)A`. Right: `(xA)(yA·c) = (xy)A·c`.
    #[default]
    Standard,
    /// The two sides exchanged.
    Swapped,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Side {
    Left,
    Right,
}

fn pseudo_triple(l: &FiniteLoop, a: &Perm, c: usize, side: Side) -> AutotopismTriple {
    match side {
        Side::Left => {
            let alc = a.then(&l.left_translation(c));
            AutotopismTriple::new(alc.clone(), a.clone(), alc)
        }
        Side::Right => {
            let arc = a.then(&l.right_translation(c));
            AutotopismTriple::new(a.clone(), arc.clone(), arc)
        }
    }
}

fn is_pseudo(
    l: &FiniteLoop,
    a: &Perm,
    c: usize,
    side: Side,
    conv: PseudoConvention,
) -> Result<bool, PropertyError> {
    let image = a.apply(l.identity());
    if image != l.identity() {
        return Err(PropertyError::NotUnital { image });
    }
    let side = match (conv, side) {
        (PseudoConvention::Standard, s) => s,
        (PseudoConvention::Swapped, Side::Left) => Side::Right,
        (PseudoConvention::Swapped, Side::Right) => Side::Left,
    };
    Ok(is_autotopism(l, &pseudo_triple(l, a, c, side)))
}

pub fn is_left_pseudo_automorphism(l: &FiniteLoop, a: &Perm, c: usize) -> Result<bool, PropertyError> {
    is_pseudo(l, a, c, Side::Left, PseudoConvention::Standard)
}

pub fn is_right_pseudo_automorphism(l: &FiniteLoop, a: &Perm, c: usize) -> Result<bool, PropertyError> {
    is_pseudo(l, a, c, Side::Right, PseudoConvention::Standard)
}

pub fn is_vd_loop(l: &FiniteLoop) -> bool {
    vd_failure(l, PseudoConvention::Standard).is_none()
}

/// First `x` for which `R_x⁻¹L_x` or `L_x⁻¹R_x` is not a pseudo-automorphism
/// with companion `x`. A non-unital map counts as a failure.
pub fn vd_failure(l: &FiniteLoop, conv: PseudoConvention) -> Option<usize> {
    (0..l.order()).find(|&x| {
        let rl = l.right_translation(x).inverse().then(&l.left_translation(x));
        let lr = l.left_translation(x).inverse().then(&l.right_translation(x));
        let left = is_pseudo(l, &rl, x, Side::Left, conv).unwrap_or(false);
        let right = is_pseudo(l, &lr, x, Side::Right, conv).unwrap_or(false);
        !(left && right)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::loops::tests::{l5, z};
    use proptest::prelude::*;

    #[test]
    fn isotope_examples() {
        let z4 = z(4);
        let iso = principal_isotope(&z4, IsotopeSpec::Full { u: 2, v: 1 });
        assert_eq!(iso.identity(), 3);
        for x in 0..4 {
            for y in 0..4 {
                assert_eq!(iso.mul(x, y), (x + y + 4 - 3) % 4);
            }
        }
        let l = l5();
        assert_eq!(principal_isotope(&l, IsotopeSpec::Full { u: 0, v: 0 }), l);
        let left = principal_isotope(&l, IsotopeSpec::Left { v: 2 });
        assert_eq!(left.identity(), 2);
        for x in 0..5 {
            for y in 0..5 {
                assert_eq!(left.mul(x, y), l.mul(l.rdiv(x, 2), y));
            }
        }
        let right = principal_isotope(&l, IsotopeSpec::Right { u: 3 });
        assert_eq!(right.identity(), 3);
    }

    #[test]
    fn isotope_enumeration() {
        let z4 = z(4);
        let all: Vec<_> = all_principal_isotopes(&z4).collect();
        assert_eq!(all.len(), 16);
        assert!(all.iter().all(|(_, g)| g.is_associative()));
        assert_eq!(all[5].0, IsotopeSpec::Full { u: 1, v: 1 });
        assert_eq!(all_principal_isotopes(&l5()).count(), 25);
    }

    #[test]
    fn isotope_of_isotope_is_principal() {
        // left(u·v) applied to right(u) gives full(u, v)
        for l in [l5(), z(5), corpus::symmetric3()] {
            let n = l.order();
            for u in 0..n {
                let right = principal_isotope(&l, IsotopeSpec::Right { u });
                for v in 0..n {
                    let twice = principal_isotope(&right, IsotopeSpec::Left { v: l.mul(u, v) });
                    let full = principal_isotope(&l, IsotopeSpec::Full { u, v });
                    assert_eq!(twice, full);
                }
            }
        }
    }

    #[test]
    fn autotopism_examples() {
        let z4 = z(4);
        let t = AutotopismTriple::new(z4.right_translation(1), z4.right_translation(3), Perm::identity(4));
        assert!(is_autotopism(&z4, &t));
        assert!(is_autotopism(&l5(), &AutotopismTriple::identity(5)));
        let l = l5();
        let r1 = l.right_translation(1);
        assert!(!is_autotopism(&l, &AutotopismTriple::new(r1.clone(), r1.clone(), r1)));
    }

    #[test]
    fn triples_in_groups() {
        let z4 = z(4);
        for t in osborn_triples(&z4, 0, 0, 0) {
            assert!(t.is_trivial());
        }
        for t in left_osborn_triples(&z4, 0, 0).iter().chain(&right_osborn_triples(&z4, 0, 0)) {
            assert!(t.is_trivial());
        }
        for g in [z4, corpus::symmetric3(), corpus::dihedral(4), corpus::quaternion8()] {
            let n = g.order();
            for x in 0..n {
                for u in 0..n {
                    for t in right_osborn_triples(&g, x, u).iter().chain(&left_osborn_triples(&g, x, u)) {
                        assert!(is_autotopism(&g, t));
                    }
                    for v in 0..n {
                        for t in osborn_triples(&g, x, u, v) {
                            assert!(is_autotopism(&g, &t), "x={x} u={u} v={v}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn pseudo_automorphism_examples() {
        let l = l5();
        assert_eq!(is_left_pseudo_automorphism(&l, &Perm::identity(5), 0), Ok(true));
        assert_eq!(is_right_pseudo_automorphism(&l, &Perm::identity(5), 0), Ok(true));
        let z4 = z(4);
        let a = z4.right_translation(1).inverse().then(&z4.left_translation(1));
        assert!(a.is_identity());
        assert_eq!(is_left_pseudo_automorphism(&z4, &a, 1), Ok(true));
        // negation is an automorphism of Z4
        let neg = Perm::from_images(&[0, 3, 2, 1]).unwrap();
        assert_eq!(is_left_pseudo_automorphism(&z4, &neg, 0), Ok(true));
        assert_eq!(
            is_left_pseudo_automorphism(&z4, &z4.left_translation(1), 0),
            Err(PropertyError::NotUnital { image: 1 })
        );
        assert!(is_vd_loop(&z4));
        assert!(is_vd_loop(&corpus::symmetric3()));
        assert!(is_vd_loop(&corpus::quaternion8()));
        assert!(vd_failure(&corpus::symmetric3(), PseudoConvention::Swapped).is_none());
    }

    proptest! {
        #[test]
        fn autotopisms_compose(x1 in 0usize..6, u1 in 0usize..6, v1 in 0usize..6,
                               x2 in 0usize..6, u2 in 0usize..6, v2 in 0usize..6) {
            let g = corpus::symmetric3();
            let s = osborn_triples(&g, x1, u1, v1);
            let t = osborn_triples(&g, x2, u2, v2);
            for a in &s {
                for b in &t {
                    prop_assert!(is_autotopism(&g, &a.then(b)));
                }
            }
        }

        #[test]
        fn isotopes_validate(u in 0usize..5, v in 0usize..5) {
            let l = l5();
            let iso = principal_isotope(&l, IsotopeSpec::Full { u, v });
            prop_assert_eq!(iso.identity(), l.mul(u, v));
        }
    }
}
