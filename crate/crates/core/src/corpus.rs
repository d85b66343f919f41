//! Built-in loops: every group of order at most 16 and a nonassociative
//! Moufang loop of order 12.
//!
//! All constructions put the identity at label `0`.

use crate::loops::FiniteLoop;

pub fn cyclic(n: usize) -> FiniteLoop {
    FiniteLoop::from_fn(n, |x, y| (x + y) % n).expect("cyclic group")
}

/// `⟨a, b | a^m = 1, b^k = a^t, b a b⁻¹ = a^r⟩`, element `a^i b^j` stored at
/// label `j·m + i`. Requires `r^k ≡ 1` and `r·t ≡ t (mod m)`.
pub fn metacyclic(m: usize, k: usize, r: usize, t: usize) -> FiniteLoop {
    let rpow: Vec<usize> = (0..k)
        .scan(1usize, |acc, _| {
            let cur = *acc;
            *acc = *acc * r % m;
            Some(cur)
        })
        .collect();
    FiniteLoop::from_fn(m * k, |x, y| {
        let (i, j) = (x % m, x / m);
        let (p, q) = (y % m, y / m);
        let mut a = (i + p * rpow[j]) % m;
        let mut b = j + q;
        if b >= k {
            b -= k;
            a = (a + t) % m;
        }
        b * m + a
    })
    .expect("metacyclic parameters must define a group")
}

/// Dihedral group of order `2n`.
pub fn dihedral(n: usize) -> FiniteLoop {
    metacyclic(n, 2, n - 1, 0)
}

pub fn symmetric3() -> FiniteLoop {
    dihedral(3)
}

pub fn quaternion8() -> FiniteLoop {
    metacyclic(4, 2, 3, 2)
}

/// Dicyclic group of order `4n`.
pub fn dicyclic(n: usize) -> FiniteLoop {
    metacyclic(2 * n, 2, 2 * n - 1, n)
}

pub fn klein4() -> FiniteLoop {
    direct_product(&cyclic(2), &cyclic(2))
}

/// Pairs `(a, b)` stored at label `a·|B| + b`.
pub fn direct_product(a: &FiniteLoop, b: &FiniteLoop) -> FiniteLoop {
    let nb = b.order();
    FiniteLoop::from_fn(a.order() * nb, |x, y| {
        a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb)
    })
    .expect("direct product of loops")
}

/// `A4 = V ⋊ Z3` with `Z3` rotating the three involutions of `V`.
pub fn alternating4() -> FiniteLoop {
    // v in Z2² encoded as 2 bits; phi(x, y) = (y, x ^ y)
    let phi = |v: usize| ((v & 1) << 1) | (((v >> 1) ^ v) & 1);
    let phi_pow = |v: usize, s: usize| (0..s).fold(v, |acc, _| phi(acc));
    FiniteLoop::from_fn(12, |x, y| {
        let (v1, s1) = (x % 4, x / 4);
        let (v2, s2) = (y % 4, y / 4);
        ((s1 + s2) % 3) * 4 + (v1 ^ phi_pow(v2, s1))
    })
    .expect("A4")
}

/// `i^k X^a Z^b` with `Z X = -X Z`; the central product of `Z4` and `D4`.
pub fn pauli() -> FiniteLoop {
    FiniteLoop::from_fn(16, |x, y| {
        let (k1, a1, b1) = (x / 4, (x >> 1) & 1, x & 1);
        let (k2, a2, b2) = (y / 4, (y >> 1) & 1, y & 1);
        let k = (k1 + k2 + 2 * (b1 & a2)) % 4;
        k * 4 + ((a1 ^ a2) << 1) + (b1 ^ b2)
    })
    .expect("Pauli group")
}

/// `(Z4 × Z2) ⋊ Z2` where the involution sends `a ↦ ab`, `b ↦ b`.
pub fn z4z2_semidirect_z2() -> FiniteLoop {
    let phi = |i: usize, j: usize| (i, (j + i) % 2);
    FiniteLoop::from_fn(16, |x, y| {
        let (i1, j1, s1) = (x % 4, (x / 4) % 2, x / 8);
        let (i2, j2, s2) = (y % 4, (y / 4) % 2, y / 8);
        let (pi, pj) = if s1 == 1 { phi(i2, j2) } else { (i2, j2) };
        let (i, j, s) = ((i1 + pi) % 4, (j1 + pj) % 2, (s1 + s2) % 2);
        s * 8 + j * 4 + i
    })
    .expect("(Z4 x Z2) x| Z2")
}

/// Chein's doubling `M(G, 2)`: `(g,0)(h,0) = (gh,0)`, `(g,0)(h,1) = (hg,1)`,
/// `(g,1)(h,0) = (gh⁻¹,1)`, `(g,1)(h,1) = (h⁻¹g,0)`. Moufang for every group
/// `G`, nonassociative when `G` is nonabelian.
pub fn chein_double(g: &FiniteLoop) -> FiniteLoop {
    let n = g.order();
    FiniteLoop::from_fn(2 * n, |x, y| {
        let (a, s) = (x % n, x / n);
        let (b, t) = (y % n, y / n);
        match (s, t) {
            (0, 0) => g.mul(a, b),
            (0, _) => n + g.mul(b, a),
            (_, 0) => n + g.mul(a, g.rin(b)),
            _ => g.mul(g.rin(b), a),
        }
    })
    .expect("Chein double of a group")
}

pub fn moufang12() -> FiniteLoop {
    chein_double(&symmetric3())
}

/// Every group of order 1 to 16 up to isomorphism, one representative each.
pub fn groups() -> Vec<(String, FiniteLoop)> {
    let z = cyclic;
    let p = |a: FiniteLoop, b: FiniteLoop| direct_product(&a, &b);
    let mut out: Vec<(String, FiniteLoop)> = Vec::new();
    for n in 1..=16 {
        out.push((format!("Z{n}"), z(n)));
        let extra: Vec<(&str, FiniteLoop)> = match n {
            4 => vec![("Klein4", klein4())],
            6 => vec![("S3", symmetric3())],
            8 => vec![
                ("Z4xZ2", p(z(4), z(2))),
                ("Z2xZ2xZ2", p(klein4(), z(2))),
                ("D4", dihedral(4)),
                ("Q8", quaternion8()),
            ],
            9 => vec![("Z3xZ3", p(z(3), z(3)))],
            10 => vec![("D5", dihedral(5))],
            12 => vec![
                ("Z6xZ2", p(z(6), z(2))),
                ("D6", dihedral(6)),
                ("A4", alternating4()),
                ("Dic3", dicyclic(3)),
            ],
            14 => vec![("D7", dihedral(7))],
            16 => vec![
                ("Z8xZ2", p(z(8), z(2))),
                ("Z4xZ4", p(z(4), z(4))),
                ("Z4xZ2xZ2", p(z(4), klein4())),
                ("Z2^4", p(klein4(), klein4())),
                ("D8", dihedral(8)),
                ("Q16", dicyclic(4)),
                ("SD16", metacyclic(8, 2, 3, 0)),
                ("M16", metacyclic(8, 2, 5, 0)),
                ("Z4:Z4", metacyclic(4, 4, 3, 0)),
                ("Z2xD4", p(z(2), dihedral(4))),
                ("Z2xQ8", p(z(2), quaternion8())),
                ("Pauli", pauli()),
                ("(Z4xZ2):Z2", z4z2_semidirect_z2()),
            ],
            _ => vec![],
        };
        out.extend(extra.into_iter().map(|(name, g)| (name.to_string(), g)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::properties::closure;

    fn element_orders(g: &FiniteLoop) -> Vec<usize> {
        let mut orders: Vec<usize> = (0..g.order()).map(|x| closure(g, &[x]).len()).collect();
        orders.sort_unstable();
        orders
    }

    fn is_abelian(g: &FiniteLoop) -> bool {
        (0..g.order()).all(|x| (0..g.order()).all(|y| g.mul(x, y) == g.mul(y, x)))
    }

    fn center_size(g: &FiniteLoop) -> usize {
        (0..g.order())
            .filter(|&x| (0..g.order()).all(|y| g.mul(x, y) == g.mul(y, x)))
            .count()
    }

    #[test]
    fn all_groups_are_groups_with_identity_zero() {
        let groups = groups();
        let mut per_order = [0usize; 17];
        for (name, g) in &groups {
            assert!(g.is_associative(), "{name}");
            assert_eq!(g.identity(), 0, "{name}");
            per_order[g.order()] += 1;
        }
        // number of groups of each order
        assert_eq!(per_order[1..], [1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14]);
    }

    fn square_count(g: &FiniteLoop) -> usize {
        let mut squares: Vec<usize> = (0..g.order()).map(|x| g.mul(x, x)).collect();
        squares.sort_unstable();
        squares.dedup();
        squares.len()
    }

    #[test]
    fn groups_are_pairwise_non_isomorphic() {
        let groups = groups();
        let keys: Vec<_> = groups
            .iter()
            .map(|(_, g)| {
                (g.order(), is_abelian(g), center_size(g), square_count(g), element_orders(g))
            })
            .collect();
        for i in 0..keys.len() {
            for j in i + 1..keys.len() {
                assert_ne!(keys[i], keys[j], "{} vs {}", groups[i].0, groups[j].0);
            }
        }
    }

    #[test]
    fn moufang12_is_nonassociative() {
        let m = moufang12();
        assert_eq!(m.order(), 12);
        assert_eq!(m.identity(), 0);
        assert!(!m.is_associative());
    }
}
