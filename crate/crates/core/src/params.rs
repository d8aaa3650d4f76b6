use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamError {
    #[error("p and q must both be at least 2 (got p = {p}, q = {q})")]
    TooSmall { p: u32, q: u32 },
    #[error("p and q must be coprime (gcd({p}, {q}) = {gcd})")]
    NotCoprime { p: u32, q: u32, gcd: u32 },
    #[error("expected a spun knot (k = 0), got k = {0}")]
    NotSpun(u32),
    #[error("expected a twist-spun knot (k >= 1), got k = 0")]
    NotTwistSpun,
}

/// Parameters of a (p,q) torus knot together with the twist count of the
/// 2-knot built from it. `k = 0` is the spun knot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TorusKnotParams {
    pub p: u32,
    pub q: u32,
    #[serde(default)]
    pub k: u32,
}

impl TorusKnotParams {
    pub fn new(p: u32, q: u32) -> Result<Self, ParamError> {
        Self::twisted(p, q, 0)
    }

    pub fn twisted(p: u32, q: u32, k: u32) -> Result<Self, ParamError> {
        let params = TorusKnotParams { p, q, k };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<(), ParamError> {
        let TorusKnotParams { p, q, .. } = *self;
        if p < 2 || q < 2 {
            return Err(ParamError::TooSmall { p, q });
        }
        let gcd = p.gcd(&q);
        if gcd != 1 {
            return Err(ParamError::NotCoprime { p, q, gcd });
        }
        Ok(())
    }

    pub fn is_spun(&self) -> bool {
        self.k == 0
    }

    /// Number of 1-handles of the fiber surface, `pq`.
    pub fn bands(&self) -> usize {
        self.p as usize * self.q as usize
    }

    /// `(p-1)(q-1)`, the first Betti number of the fiber surface.
    pub fn betti_one(&self) -> usize {
        (self.p as usize - 1) * (self.q as usize - 1)
    }

    pub fn genus(&self) -> usize {
        self.betti_one() / 2
    }

    /// `(p+q) - pq`.
    pub fn euler_characteristic(&self) -> i64 {
        (self.p as i64 + self.q as i64) - self.p as i64 * self.q as i64
    }

    /// `pq`, the order of the handle permutation.
    pub fn period(&self) -> u64 {
        self.p as u64 * self.q as u64
    }
}

impl std::fmt::Display for TorusKnotParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.k {
            0 => write!(f, "spun T({},{})", self.p, self.q),
            k => write!(f, "{}-twist-spun T({},{})", k, self.p, self.q),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_coprime_pairs() {
        let t = TorusKnotParams::new(2, 3).unwrap();
        assert_eq!(t.betti_one(), 2);
        assert_eq!(t.genus(), 1);
        assert_eq!(t.euler_characteristic(), -1);
        assert_eq!(TorusKnotParams::new(3, 4).unwrap().genus(), 3);
    }

    #[test]
    fn rejects_bad_pairs() {
        assert_eq!(
            TorusKnotParams::new(2, 2),
            Err(ParamError::NotCoprime { p: 2, q: 2, gcd: 2 })
        );
        assert!(matches!(TorusKnotParams::new(4, 6), Err(ParamError::NotCoprime { gcd: 2, .. })));
        assert!(matches!(TorusKnotParams::new(1, 3), Err(ParamError::TooSmall { .. })));
        assert!(matches!(TorusKnotParams::new(3, 0), Err(ParamError::TooSmall { .. })));
    }
}
