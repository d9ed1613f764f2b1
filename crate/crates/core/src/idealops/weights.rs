//! Positive gradings making every generator homogeneous.

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use num_bigint::BigInt;
use num_integer::Integer;

use crate::groebner::Ideal;
use crate::polyring::Field;

/// Upper bound on each weight in the search.
pub const WEIGHT_BOUND: u32 = 512;

/// Reduced row echelon form; returns the pivot columns.
#[allow(clippy::needless_range_loop)]
fn rref(m: &mut [Vec<BigRational>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let d = &f * &m[r][j];
                    m[i][j] = &m[i][j] - d;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

/// Smallest positive integer weight vector (by sum, then lexicographically)
/// with entries at most [`WEIGHT_BOUND`] under which every generator is
/// homogeneous.
pub fn quasi_homogeneous_weights<F: Field>(ideal: &Ideal<F>) -> Option<Vec<u32>> {
    let n = ideal.ring().nvars();
    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    for g in ideal.gens() {
        let Some(first) = g.terms().first() else { continue };
        for t in &g.terms()[1..] {
            rows.push(
                t.mono
                    .exps()
                    .iter()
                    .zip(first.mono.exps())
                    .map(|(&a, &b)| BigRational::from_integer(BigInt::from(a as i64 - b as i64)))
                    .collect(),
            );
        }
    }
    let ones = vec![1u32; n];
    let homogeneous = |w: &[u32]| ideal.gens().iter().all(|g| g.is_homogeneous(w));
    if homogeneous(&ones) {
        return Some(ones);
    }
    let pivots = rref(&mut rows);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    match free.len() {
        0 => None,
        1 => {
            // kernel spanned by e_f - Σ r_{i,f} e_{p_i}
            let f = free[0];
            let mut v = vec![BigRational::zero(); n];
            v[f] = BigRational::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -rows[i][f].clone();
            }
            let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            let ints: Vec<BigInt> = v.iter().map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer()).collect();
            let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
            if g.is_zero() {
                return None;
            }
            let sign_pos = ints.iter().all(|x| x.is_positive());
            let sign_neg = ints.iter().all(|x| x.is_negative());
            if !(sign_pos || sign_neg) {
                return None;
            }
            let w: Option<Vec<u32>> = ints.iter().map(|x| (x / &g).abs().to_u32()).collect();
            w.filter(|w| w.iter().all(|&x| (1..=WEIGHT_BOUND).contains(&x)))
        }
        2 => {
            let mut best: Option<Vec<u32>> = None;
            for a in 1..=WEIGHT_BOUND {
                for b in 1..=WEIGHT_BOUND {
                    if let Some(bst) = &best {
                        if a + b >= bst.iter().sum::<u32>() {
                            break;
                        }
                    }
                    let mut w = vec![0u32; n];
                    w[free[0]] = a;
                    w[free[1]] = b;
                    let mut ok = true;
                    for (i, &p) in pivots.iter().enumerate() {
                        let val = -(&rows[i][free[0]] * BigRational::from_integer(a.into())
                            + &rows[i][free[1]] * BigRational::from_integer(b.into()));
                        match (val.is_integer(), val.to_integer().to_u32()) {
                            (true, Some(x)) if (1..=WEIGHT_BOUND).contains(&x) => w[p] = x,
                            _ => {
                                ok = false;
                                break;
                            }
                        }
                    }
                    if ok && homogeneous(&w) {
                        let better = match &best {
                            None => true,
                            Some(bst) => {
                                let (s, t) = (w.iter().sum::<u32>(), bst.iter().sum::<u32>());
                                s < t || (s == t && w < *bst)
                            }
                        };
                        if better {
                            best = Some(w);
                        }
                    }
                }
            }
            best
        }
        _ => None,
    }
}
