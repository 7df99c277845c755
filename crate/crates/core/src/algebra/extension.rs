//! Groups presented as an extension of a cyclic `p`-group by a normal
//! subgroup of order prime to `p`.

use serde::Serialize;

use crate::algebra::{FinGroup, GroupAction, ValidationReport};
use crate::error::{Error, Result};
use crate::exactla::Field;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CqExtension {
    /// Elements of the normal subgroup, sorted.
    pub h: Vec<usize>,
    pub q: usize,
    /// Element whose image generates the cyclic quotient.
    pub rho: usize,
    /// `coset[α] = k` when `α ∈ ρ^k H`.
    pub coset: Vec<usize>,
}

impl CqExtension {
    pub fn new(group: &FinGroup, h: &[usize], rho: usize, characteristic: u64) -> Result<Self> {
        let mut h = h.to_vec();
        h.sort_unstable();
        h.dedup();
        if h.iter().any(|&x| x >= group.order()) || rho >= group.order() {
            return Err(Error::Structural("extension data names elements outside the group".into()));
        }
        if !group.is_normal(&h) {
            return Err(Error::Validation("H is not a normal subgroup".into()));
        }
        if characteristic != 0 && (h.len() as u64).is_multiple_of(characteristic) {
            return Err(Error::Validation(format!("e_H undefined: |H| = {} is divisible by the characteristic {characteristic}", h.len())));
        }
        let q = group.order() / h.len();
        let qok = if characteristic == 0 { q == 1 } else { is_power_of(q as u64, characteristic) };
        if !qok {
            return Err(Error::Validation(format!("index q = {q} is not a power of the characteristic")));
        }
        let mut coset = vec![usize::MAX; group.order()];
        let mut r = group.identity;
        for k in 0..q {
            for &x in &h {
                let y = group.mul(r, x);
                if coset[y] != usize::MAX {
                    return Err(Error::Validation("the lift of ρ does not generate G/H".into()));
                }
                coset[y] = k;
            }
            r = group.mul(r, rho);
        }
        if !h.contains(&r) {
            return Err(Error::Validation("ρ^q does not lie in H".into()));
        }
        Ok(CqExtension { h, q, rho, coset })
    }

    /// `H = G`, `q = 1`; valid whenever the characteristic does not divide `|G|`.
    pub fn coprime(group: &FinGroup, characteristic: u64) -> Result<Self> {
        let all: Vec<usize> = (0..group.order()).collect();
        Self::new(group, &all, group.identity, characteristic)
    }

    /// The `H`-invariant subspace of `action` is acted on identically by
    /// every lift `ρh` of the generator.
    pub fn validate_lift_independence<F: Field>(&self, f: &F, group: &FinGroup, action: &GroupAction<F>) -> ValidationReport {
        let mut rep = ValidationReport::default();
        let inv = action.invariants(f, &self.h);
        for &x in &self.h {
            let other = group.mul(self.rho, x);
            for v in &inv {
                if action.apply(f, self.rho, v) != action.apply(f, other, v) {
                    rep.fail(format!("lifts {} and {} differ on the H-invariants", group.labels[self.rho], group.labels[other]));
                    break;
                }
            }
        }
        rep
    }
}

fn is_power_of(mut n: u64, p: u64) -> bool {
    while n > 1 && n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_group_in_char_two() {
        let s3 = FinGroup::dihedral(3).unwrap();
        let rot = s3.generated(&[1]);
        let ext = CqExtension::new(&s3, &rot, 3, 2).unwrap();
        assert_eq!(ext.q, 2);
        assert_eq!(ext.coset[4], 1);
        // The rotation subgroup has order divisible by 3.
        assert!(CqExtension::new(&s3, &rot, 3, 3).is_err());
    }

    #[test]
    fn cyclic_six_in_char_three() {
        let c6 = FinGroup::cyclic(6).unwrap();
        let h = c6.generated(&[3]);
        let ext = CqExtension::new(&c6, &h, 1, 3).unwrap();
        assert_eq!(ext.q, 3);
        assert!(CqExtension::new(&c6, &h, 1, 2).is_err());
        assert!(CqExtension::coprime(&c6, 5).is_ok());
        assert!(CqExtension::coprime(&c6, 2).is_err());
    }
}
