//! Just enough factoring to split an integer into square and squarefree
//! parts: trial division by small primes, then Miller–Rabin and Pollard's
//! rho (Brent's variant) on what is left.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::isqrt;

const TRIAL_LIMIT: u32 = 1 << 14;
const WITNESSES: [u32; 20] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
];

/// Splits `d >= 0` as `s² · core` with `core` squarefree; `0` gives `(1, 0)`.
pub(crate) fn squarefree_split(d: &BigInt) -> (BigInt, BigInt) {
    if d.is_zero() {
        return (BigInt::one(), BigInt::zero());
    }
    let mut square = BigInt::one();
    let mut core = BigInt::one();
    for (p, e) in factorize(&d.abs()) {
        for _ in 0..e / 2 {
            square *= &p;
        }
        if e % 2 == 1 {
            core *= &p;
        }
    }
    (square, core)
}

fn factorize(n: &BigInt) -> BTreeMap<BigInt, u32> {
    let mut out = BTreeMap::new();
    let mut rest = n.clone();
    let mut i = 2u32;
    while i < TRIAL_LIMIT && BigInt::from(i) * i <= rest {
        let big = BigInt::from(i);
        while (&rest % &big).is_zero() {
            rest /= &big;
            *out.entry(big.clone()).or_insert(0) += 1;
        }
        i += if i == 2 { 1 } else { 2 };
    }
    if !rest.is_one() {
        split_large(rest, 1, &mut out);
    }
    out
}

/// Adds the factorization of `n^mult` for `n` free of small factors.
fn split_large(n: BigInt, mult: u32, out: &mut BTreeMap<BigInt, u32>) {
    if n.is_one() {
        return;
    }
    let root = isqrt(&n);
    if &root * &root == n {
        split_large(root, 2 * mult, out);
        return;
    }
    if n < BigInt::from(TRIAL_LIMIT) * TRIAL_LIMIT || is_probable_prime(&n) {
        *out.entry(n).or_insert(0) += mult;
        return;
    }
    let f = pollard_brent(&n);
    let g = &n / &f;
    split_large(f, mult, out);
    split_large(g, mult, out);
}

fn is_probable_prime(n: &BigInt) -> bool {
    let one = BigInt::one();
    let n_minus_1 = n - &one;
    let mut d = n_minus_1.clone();
    let mut s = 0u32;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'witness: for &a in &WITNESSES {
        let a = BigInt::from(a);
        if &a >= n {
            continue;
        }
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = &x * &x % n;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A nontrivial factor of the odd composite `n`.
fn pollard_brent(n: &BigInt) -> BigInt {
    let one = BigInt::one();
    let mut c = BigInt::one();
    loop {
        let f = |x: &BigInt| (x * x + &c) % n;
        let (mut y, mut r, mut q) = (BigInt::from(2), 1u64, BigInt::one());
        let mut g = one.clone();
        let (mut x, mut ys) = (y.clone(), y.clone());
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..r.saturating_sub(k).min(128) {
                    y = f(&y);
                    q = q * (&x - &y).abs() % n;
                }
                g = q.gcd(n);
                k += 128;
            }
            r *= 2;
        }
        if &g == n {
            loop {
                ys = f(&ys);
                g = (&x - &ys).abs().gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if &g != n {
            return g;
        }
        c += 1;
    }
}
