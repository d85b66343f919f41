//! Bijections on `{0..n-1}`.
//!
//! Composition is written left to right: `p.then(&q)` maps `y` to `(yP)Q`,
//! so an operator string such as `R_a 𝕃_u L_x` is built as
//! `r_a.then(&l_u_inv).then(&l_x)`.

use std::fmt;

use crate::error::LoopError;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Perm {
    map: Vec<u8>,
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm {
            map: (0..n as u8).collect(),
        }
    }

    /// Builds a permutation from its image list, rejecting non-bijections.
    pub fn from_images(images: &[usize]) -> Result<Self, LoopError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in images {
            if v >= n {
                return Err(LoopError::OutOfRange { value: v, order: n });
            }
            if seen[v] {
                return Err(LoopError::NotBijection { value: v });
            }
            seen[v] = true;
        }
        Ok(Perm {
            map: images.iter().map(|&v| v as u8).collect(),
        })
    }

    /// Caller guarantees `map` is a bijection.
    pub(crate) fn from_raw(map: Vec<u8>) -> Self {
        debug_assert!({
            let mut s = map.clone();
            s.sort_unstable();
            s.iter().enumerate().all(|(i, &v)| i == v as usize)
        });
        Perm { map }
    }

    pub fn order(&self) -> usize {
        self.map.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.map.iter().map(|&v| v as usize).collect()
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        assert_eq!(self.order(), other.order(), "permutation orders differ");
        Perm {
            map: self.map.iter().map(|&v| other.map[v as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u8; self.map.len()];
        for (i, &v) in self.map.iter().enumerate() {
            inv[v as usize] = i as u8;
        }
        Perm { map: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &v)| i == v as usize)
    }

    pub fn pow(&self, k: usize) -> Perm {
        let mut acc = Perm::identity(self.order());
        for _ in 0..k {
            acc = acc.then(self);
        }
        acc
    }

    /// Disjoint cycles, each starting at its smallest point, fixed points included.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        out
    }

    /// Order of the permutation in the symmetric group.
    pub fn cycle_order(&self) -> usize {
        self.cycles()
            .iter()
            .map(Vec::len)
            .fold(1, lcm)
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.map)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .map
            .iter()
            .enumerate()
            .map(|(i, v)| format!("{i}->{v}"))
            .collect();
        write!(f, "({})", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_perm() -> impl Strategy<Value = Perm> {
        (1usize..12).prop_flat_map(|n| {
            Just((0..n).collect::<Vec<_>>())
                .prop_shuffle()
                .prop_map(|v| Perm::from_images(&v).unwrap())
        })
    }

    #[test]
    fn rejects_non_bijection() {
        assert!(matches!(
            Perm::from_images(&[0, 0, 1]),
            Err(LoopError::NotBijection { value: 0 })
        ));
        assert!(Perm::from_images(&[0, 3]).is_err());
    }

    #[test]
    fn composition_is_left_to_right() {
        let p = Perm::from_images(&[1, 2, 0]).unwrap();
        let q = Perm::from_images(&[0, 2, 1]).unwrap();
        // 0 -p-> 1 -q-> 2
        assert_eq!(p.then(&q).apply(0), 2);
        // 0 -q-> 0 -p-> 1
        assert_eq!(q.then(&p).apply(0), 1);
    }

    #[test]
    fn cycle_order_examples() {
        assert_eq!(Perm::identity(4).cycle_order(), 1);
        let p = Perm::from_images(&[1, 0, 3, 4, 2]).unwrap();
        assert_eq!(p.cycle_order(), 6);
        assert!(p.pow(6).is_identity());
    }

    proptest! {
        #[test]
        fn inverse_cancels(p in arb_perm()) {
            prop_assert!(p.then(&p.inverse()).is_identity());
            prop_assert!(p.inverse().then(&p).is_identity());
        }

        #[test]
        fn cycle_order_is_minimal(p in arb_perm()) {
            let k = p.cycle_order();
            prop_assert!(p.pow(k).is_identity());
            for j in 1..k {
                prop_assert!(!p.pow(j).is_identity());
            }
        }
    }
}
