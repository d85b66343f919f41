//! Finite loops stored as Cayley tables.
//!
//! A [`FiniteLoop`] is immutable once validated. Both division tables and the
//! two inverse maps are precomputed, so every primitive operation is a single
//! table lookup.

use std::fmt;

use crate::error::{Line, LoopError};
use crate::perm::Perm;

pub const MAX_ORDER: usize = 64;

/// Which composite the `E` map stands for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EConvention {
    /// `E_y = L_y L_{y^λ}`, i.e. `z ↦ y^λ·(y·z)`.
    Osborn,
    /// `E_x = R_x R_{x^ρ}`, i.e. `z ↦ (z·x)·x^ρ`.
    Basarab,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteLoop {
    n: usize,
    identity: u8,
    table: Vec<u8>,
    ldiv: Vec<u8>,
    rdiv: Vec<u8>,
    lin: Vec<u8>,
    rin: Vec<u8>,
}

impl FiniteLoop {
    /// Validates a square table as a loop. The identity is detected when not
    /// claimed; labels are kept as given.
    pub fn validate(rows: &[Vec<usize>], claimed_identity: Option<usize>) -> Result<Self, LoopError> {
        let n = rows.len();
        if n == 0 {
            return Err(LoopError::Empty);
        }
        if n > MAX_ORDER {
            return Err(LoopError::OrderTooLarge { order: n, max: MAX_ORDER });
        }
        let mut table = Vec::with_capacity(n * n);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(LoopError::NotSquare { row: r, len: row.len(), order: n });
            }
            for &v in row {
                if v >= n {
                    return Err(LoopError::OutOfRange { value: v, order: n });
                }
                table.push(v as u8);
            }
        }
        Self::from_flat(n, table, claimed_identity)
    }

    /// Builds and validates the table `f(x, y)` for `x, y < n`.
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self, LoopError> {
        let rows: Vec<Vec<usize>> = (0..n).map(|x| (0..n).map(|y| f(x, y)).collect()).collect();
        Self::validate(&rows, None)
    }

    pub(crate) fn from_flat(
        n: usize,
        table: Vec<u8>,
        claimed_identity: Option<usize>,
    ) -> Result<Self, LoopError> {
        debug_assert_eq!(table.len(), n * n);
        let full: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        for r in 0..n {
            let mut seen = 0u64;
            for c in 0..n {
                let bit = 1u64 << table[r * n + c];
                if seen & bit != 0 {
                    return Err(LoopError::NotLatin {
                        line: Line::Row(r),
                        duplicate: table[r * n + c] as usize,
                    });
                }
                seen |= bit;
            }
            debug_assert_eq!(seen, full);
        }
        for c in 0..n {
            let mut seen = 0u64;
            for r in 0..n {
                let bit = 1u64 << table[r * n + c];
                if seen & bit != 0 {
                    return Err(LoopError::NotLatin {
                        line: Line::Col(c),
                        duplicate: table[r * n + c] as usize,
                    });
                }
                seen |= bit;
            }
        }

        let is_identity = |e: usize| {
            (0..n).all(|x| table[e * n + x] as usize == x && table[x * n + e] as usize == x)
        };
        let detected = (0..n).find(|&e| is_identity(e));
        let identity = match claimed_identity {
            Some(c) if c >= n => return Err(LoopError::OutOfRange { value: c, order: n }),
            Some(c) if Some(c) != detected => {
                return Err(LoopError::WrongIdentity { claimed: c, actual: detected })
            }
            _ => detected.ok_or(LoopError::NoIdentity)?,
        };

        let mut ldiv = vec![0u8; n * n];
        let mut rdiv = vec![0u8; n * n];
        for x in 0..n {
            for z in 0..n {
                let y = table[x * n + z] as usize;
                // x·z = y  =>  x\y = z  and  y/z = x
                ldiv[x * n + y] = z as u8;
                rdiv[y * n + z] = x as u8;
            }
        }
        let mut lin = vec![0u8; n];
        let mut rin = vec![0u8; n];
        for x in 0..n {
            lin[x] = rdiv[identity * n + x];
            rin[x] = ldiv[x * n + identity];
        }
        Ok(FiniteLoop {
            n,
            identity: identity as u8,
            table,
            ldiv,
            rdiv,
            lin,
            rin,
        })
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn identity(&self) -> usize {
        self.identity as usize
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x * self.n + y] as usize
    }

    /// `x\y`: the unique `z` with `x·z = y`.
    #[inline]
    pub fn ldiv(&self, x: usize, y: usize) -> usize {
        self.ldiv[x * self.n + y] as usize
    }

    /// `x/y`: the unique `z` with `z·y = x`.
    #[inline]
    pub fn rdiv(&self, x: usize, y: usize) -> usize {
        self.rdiv[x * self.n + y] as usize
    }

    /// Left inverse `x^λ`: `x^λ·x = e`.
    #[inline]
    pub fn lin(&self, x: usize) -> usize {
        self.lin[x] as usize
    }

    /// Right inverse `x^ρ`: `x·x^ρ = e`.
    #[inline]
    pub fn rin(&self, x: usize) -> usize {
        self.rin[x] as usize
    }

    pub(crate) fn raw_table(&self) -> &[u8] {
        &self.table
    }

    pub(crate) fn raw_ldiv(&self) -> &[u8] {
        &self.ldiv
    }

    pub(crate) fn raw_rdiv(&self) -> &[u8] {
        &self.rdiv
    }

    pub(crate) fn raw_lin(&self) -> &[u8] {
        &self.lin
    }

    pub(crate) fn raw_rin(&self) -> &[u8] {
        &self.rin
    }

    pub fn row(&self, x: usize) -> Vec<usize> {
        (0..self.n).map(|y| self.mul(x, y)).collect()
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.n).map(|x| self.row(x)).collect()
    }

    /// `L_x : y ↦ x·y`.
    pub fn left_translation(&self, x: usize) -> Perm {
        Perm::from_raw(self.table[x * self.n..(x + 1) * self.n].to_vec())
    }

    /// `R_x : y ↦ y·x`.
    pub fn right_translation(&self, x: usize) -> Perm {
        Perm::from_raw((0..self.n).map(|y| self.table[y * self.n + x]).collect())
    }

    /// `J_λ : x ↦ x^λ`.
    pub fn lambda_map(&self) -> Perm {
        Perm::from_raw(self.lin.clone())
    }

    /// `J_ρ : x ↦ x^ρ`.
    pub fn rho_map(&self) -> Perm {
        Perm::from_raw(self.rin.clone())
    }

    pub fn e_map(&self, x: usize, convention: EConvention) -> Perm {
        match convention {
            EConvention::Osborn => self
                .left_translation(x)
                .then(&self.left_translation(self.lin(x))),
            EConvention::Basarab => self
                .right_translation(x)
                .then(&self.right_translation(self.rin(x))),
        }
    }

    /// Reduced means the identity is `0` and the border row and column read
    /// `0, 1, …, n-1`.
    pub fn is_reduced(&self) -> bool {
        self.identity == 0
    }

    /// Relabels elements through `map` (old label `i` becomes `map[i]`).
    pub fn relabel(&self, map: &Perm) -> FiniteLoop {
        let n = self.n;
        let inv = map.inverse();
        let mut table = vec![0u8; n * n];
        for x in 0..n {
            for y in 0..n {
                let v = self.mul(inv.apply(x), inv.apply(y));
                table[x * n + y] = map.apply(v) as u8;
            }
        }
        FiniteLoop::from_flat(n, table, Some(map.apply(self.identity())))
            .expect("relabeling preserves the loop axioms")
    }

    /// The same loop with its identity moved to label `0` by swapping labels
    /// `0` and `e`.
    pub fn normalized(&self) -> FiniteLoop {
        if self.identity == 0 {
            return self.clone();
        }
        let mut images: Vec<usize> = (0..self.n).collect();
        images.swap(0, self.identity());
        self.relabel(&Perm::from_raw(images.iter().map(|&v| v as u8).collect()))
    }

    pub fn is_associative(&self) -> bool {
        let n = self.n;
        (0..n).all(|x| {
            (0..n).all(|y| {
                let xy = self.mul(x, y);
                (0..n).all(|z| self.mul(xy, z) == self.mul(x, self.mul(y, z)))
            })
        })
    }
}

impl fmt::Debug for FiniteLoop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FiniteLoop(order {}, identity {})", self.n, self.identity)?;
        for x in 0..self.n {
            let row: Vec<String> = self.row(x).iter().map(|v| v.to_string()).collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use proptest::prelude::*;

    pub(crate) fn z(n: usize) -> FiniteLoop {
        FiniteLoop::from_fn(n, |x, y| (x + y) % n).unwrap()
    }

    pub(crate) fn l5() -> FiniteLoop {
        FiniteLoop::validate(
            &[
                vec![0, 1, 2, 3, 4],
                vec![1, 0, 3, 4, 2],
                vec![2, 3, 4, 0, 1],
                vec![3, 4, 1, 2, 0],
                vec![4, 2, 0, 1, 3],
            ],
            None,
        )
        .unwrap()
    }

    #[test]
    fn validate_examples() {
        let z4 = z(4);
        assert_eq!((z4.order(), z4.identity()), (4, 0));
        let err = FiniteLoop::validate(&[vec![0, 1], vec![1, 1]], None).unwrap_err();
        assert_eq!(err, LoopError::NotLatin { line: Line::Row(1), duplicate: 1 });
        let l = l5();
        assert_eq!((l.order(), l.identity()), (5, 0));
    }

    #[test]
    fn validate_errors() {
        assert_eq!(FiniteLoop::validate(&[], None), Err(LoopError::Empty));
        assert!(matches!(
            FiniteLoop::validate(&[vec![0, 1], vec![1]], None),
            Err(LoopError::NotSquare { row: 1, .. })
        ));
        assert!(matches!(
            FiniteLoop::validate(&[vec![0, 2], vec![1, 0]], None),
            Err(LoopError::OutOfRange { value: 2, .. })
        ));
        // Latin but no identity
        assert_eq!(
            FiniteLoop::validate(&[vec![1, 0, 2], vec![0, 2, 1], vec![2, 1, 0]], None),
            Err(LoopError::NoIdentity)
        );
        assert_eq!(
            FiniteLoop::validate(&[vec![0, 1], vec![1, 0]], Some(1)),
            Err(LoopError::WrongIdentity { claimed: 1, actual: Some(0) })
        );
        // column repeat with rows fine
        assert!(matches!(
            FiniteLoop::validate(&[vec![0, 1, 2], vec![1, 2, 0], vec![1, 0, 2]], None),
            Err(LoopError::NotLatin { line: Line::Col(0), duplicate: 1 })
        ));
    }

    #[test]
    fn primitive_examples() {
        let z4 = z(4);
        assert_eq!(z4.mul(2, 3), 1);
        assert_eq!(z4.ldiv(1, 0), 3);
        assert_eq!(z4.rin(1), 3);
        assert_eq!(z4.right_translation(1).images(), vec![1, 2, 3, 0]);

        let l = l5();
        assert_eq!(l.mul(2, 2), 4);
        assert_eq!(l.ldiv(2, 0), 3);
        assert_eq!(l.rin(3), 4);
        assert_eq!(l.left_translation(3).images(), vec![3, 4, 1, 2, 0]);
        for x in 0..5 {
            assert_eq!(l.mul(0, x), x);
            assert_eq!(l.rdiv(x, x), 0);
        }
        assert_eq!(l.lin(0), 0);
        assert!(l.left_translation(0).is_identity());
    }

    #[test]
    fn e_map_examples() {
        let z4 = z(4);
        for x in 0..4 {
            assert!(z4.e_map(x, EConvention::Basarab).is_identity());
            assert!(z4.e_map(x, EConvention::Osborn).is_identity());
        }
        let l = l5();
        let expected = l.right_translation(2).then(&l.right_translation(l.rin(2)));
        assert_eq!(l.e_map(2, EConvention::Basarab), expected);
        // z·2 then ·2^ρ; 2^ρ = 3 in L5
        assert_eq!(l.rin(2), 3);
        let images: Vec<usize> = (0..5).map(|z| l.mul(l.mul(z, 2), 3)).collect();
        assert_eq!(l.e_map(2, EConvention::Basarab).images(), images);
    }

    #[test]
    fn normalization_moves_identity_to_zero() {
        let shifted = FiniteLoop::from_fn(4, |x, y| (x + y + 1) % 4).unwrap();
        assert_eq!(shifted.identity(), 3);
        let norm = shifted.normalized();
        assert_eq!(norm.identity(), 0);
        assert!(norm.is_associative());
        assert_eq!(norm.row(0), vec![0, 1, 2, 3]);
    }

    fn arb_loop() -> impl Strategy<Value = FiniteLoop> {
        // relabelings and isotopes of a few seeds give a varied pool
        (0usize..3, any::<prop::sample::Index>(), any::<prop::sample::Index>()).prop_map(
            |(which, u, v)| {
                let base = match which {
                    0 => l5(),
                    1 => z(6),
                    _ => crate::corpus::symmetric3(),
                };
                let n = base.order();
                crate::isotopy::principal_isotope(
                    &base,
                    crate::isotopy::IsotopeSpec::Full { u: u.index(n), v: v.index(n) },
                )
            },
        )
    }

    proptest! {
        #[test]
        fn division_laws(l in arb_loop()) {
            let n = l.order();
            let e = l.identity();
            for x in 0..n {
                prop_assert_eq!(l.ldiv(x, x), e);
                prop_assert_eq!(l.rdiv(x, x), e);
                prop_assert_eq!(l.mul(l.lin(x), x), e);
                prop_assert_eq!(l.mul(x, l.rin(x)), e);
                prop_assert_eq!(l.rin(l.lin(x)), x);
                prop_assert_eq!(l.lin(l.rin(x)), x);
                let linv = l.left_translation(x).inverse();
                for y in 0..n {
                    prop_assert_eq!(l.mul(x, l.ldiv(x, y)), y);
                    prop_assert_eq!(l.mul(l.rdiv(y, x), x), y);
                    prop_assert_eq!(l.ldiv(x, l.mul(x, y)), y);
                    prop_assert_eq!(l.rdiv(l.mul(y, x), x), y);
                    prop_assert_eq!(linv.apply(y), l.ldiv(x, y));
                }
            }
        }
    }
}
