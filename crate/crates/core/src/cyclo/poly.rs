//! Cyclotomic polynomials and small integer helpers.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_integer::Integer;

pub fn divisors(n: u32) -> Vec<u32> {
    let mut divs = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n % i == 0 {
            divs.push(i);
            if i != n / i {
                divs.push(n / i);
            }
        }
        i += 1;
    }
    divs.sort_unstable();
    divs
}

pub fn totient(n: u32) -> usize {
    (1..=n).filter(|k| k.gcd(&n) == 1).count()
}

pub fn lcm(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}

/// Exact division of integer polynomials (low degree first) by a monic divisor.
fn div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![0i64; num.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        if c != 0 {
            for (j, &d) in den.iter().enumerate() {
                rem[i + j] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0), "inexact cyclotomic division");
    quot
}

fn compute(n: u32) -> Vec<i64> {
    if n == 1 {
        return vec![-1, 1];
    }
    let mut p = vec![0i64; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in divisors(n) {
        if d != n {
            p = div_monic(&p, &cyclotomic_poly(d));
        }
    }
    p
}

/// The `n`-th cyclotomic polynomial, coefficients from the constant term up.
///
/// Computed by dividing `x^n - 1` by `Phi_d` for every proper divisor `d`,
/// and memoized for the life of the process.
pub fn cyclotomic_poly(n: u32) -> Arc<Vec<i64>> {
    assert!(n > 0, "cyclotomic_poly: n must be positive");
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.read().unwrap().get(&n) {
        return p.clone();
    }
    let p = Arc::new(compute(n));
    cache.write().unwrap().insert(n, p.clone());
    p
}
