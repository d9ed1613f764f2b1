//! Propagating a single containment `I^(hm − h) ⊆ I^m` to all `k ≥ hm`.

use crate::error::{Error, Result};

/// Threshold `k₀ = hm` for a verified base containment at `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StableSchedule {
    pub h: u32,
    pub m: u32,
    pub k0: u32,
}

/// `I^(hn + Σa) ⊆ Π I^(a_i + 1)` instance used for one `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JohnsonDecomposition {
    pub k: u32,
    pub n: u32,
    pub a: Vec<u32>,
    /// `hn + Σa`, equal to `hk − h`.
    pub symbolic_exponent: u32,
}

pub fn stable_propagation(h: u32, m: u32) -> Result<StableSchedule> {
    if h == 0 {
        return Err(Error::InvalidArgument("big height must be positive".into()));
    }
    if m < 2 {
        return Err(Error::InvalidArgument(format!("base exponent m = {m} must be at least 2")));
    }
    let k0 = h
        .checked_mul(m)
        .ok_or_else(|| Error::InvalidArgument("h*m overflows".into()))?;
    Ok(StableSchedule { h, m, k0 })
}

impl StableSchedule {
    pub fn certifies(&self, k: u32) -> bool {
        k >= self.k0
    }

    /// Decomposition for `k = hm + t`: `n = t + h`, `h` entries `hm − h − 1`
    /// followed by `t` zeros.
    pub fn decomposition(&self, k: u32) -> Result<JohnsonDecomposition> {
        if !self.certifies(k) {
            return Err(Error::InvalidArgument(format!("k = {k} is below k0 = {}", self.k0)));
        }
        let (h, m) = (self.h, self.m);
        let t = k - self.k0;
        let n = t + h;
        let mut a = vec![h * m - h - 1; h as usize];
        a.extend(std::iter::repeat_n(0, t as usize));
        let symbolic_exponent = h * n + a.iter().sum::<u32>();
        if symbolic_exponent != h * k - h {
            return Err(Error::Internal(format!(
                "decomposition for k = {k} gives {symbolic_exponent}, expected {}",
                h * k - h
            )));
        }
        Ok(JohnsonDecomposition { k, n, a, symbolic_exponent })
    }

    pub fn schedule(&self, k_max: u32) -> Result<Vec<JohnsonDecomposition>> {
        (self.k0..=k_max).map(|k| self.decomposition(k)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thresholds() {
        assert_eq!(stable_propagation(2, 3).unwrap().k0, 6);
        let s = stable_propagation(2, 2).unwrap();
        let d = s.decomposition(4).unwrap();
        assert_eq!((d.n, d.a.clone()), (2, vec![1, 1]));
        assert_eq!(s.decomposition(6).unwrap().a, vec![1, 1, 0, 0]);
        let s = stable_propagation(3, 2).unwrap();
        assert_eq!(s.k0, 6);
        assert_eq!(s.schedule(10).unwrap().len(), 5);
        assert!(stable_propagation(2, 1).is_err());
        assert!(s.decomposition(5).is_err());
    }
}
