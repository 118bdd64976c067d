//! Even-index Bernoulli numbers `B_2, B_4, ..` as exact rationals, computed
//! from the tangent numbers and cached process-wide.

use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

static CACHE: OnceLock<RwLock<Arc<Vec<BigRational>>>> = OnceLock::new();

/// Tangent numbers `T_1..T_count` (`tan x = Σ T_k x^(2k-1)/(2k-1)!`).
fn tangent_numbers(count: usize) -> Vec<BigInt> {
    let mut t = vec![BigInt::from(0); count + 1];
    if count == 0 {
        return Vec::new();
    }
    t[1] = BigInt::one();
    for k in 2..=count {
        t[k] = &t[k - 1] * BigInt::from(k - 1);
    }
    for k in 2..=count {
        for j in k..=count {
            t[j] = &t[j - 1] * BigInt::from(j - k) + &t[j] * BigInt::from(j - k + 2);
        }
    }
    t.remove(0);
    t
}

fn compute(count: usize) -> Vec<BigRational> {
    tangent_numbers(count)
        .into_iter()
        .enumerate()
        .map(|(i, t)| {
            // B_{2k} = (-1)^(k-1) 2k T_k / (4^k (4^k - 1))
            let k = i + 1;
            let four_k = BigInt::one() << (2 * k);
            let num = BigInt::from(2 * k) * t;
            let den = &four_k * (&four_k - BigInt::one());
            let b = BigRational::new(num, den);
            if k % 2 == 1 {
                b
            } else {
                -b
            }
        })
        .collect()
}

/// At least `count` values, `result[j-1] = B_{2j}`.
pub fn even_bernoulli(count: usize) -> Arc<Vec<BigRational>> {
    let lock = CACHE.get_or_init(|| RwLock::new(Arc::new(Vec::new())));
    {
        let current = lock.read().unwrap();
        if current.len() >= count {
            return Arc::clone(&current);
        }
    }
    let mut w = lock.write().unwrap();
    if w.len() < count {
        let target = count.max(2 * w.len()).max(32);
        *w = Arc::new(compute(target));
    }
    Arc::clone(&w)
}
