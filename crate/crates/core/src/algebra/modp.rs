//! Word-size prime fields, used by the interpolation-based eliminator.
//!
//! Primes are taken `≡ 1 (mod 4)` so that `-1` has a square root and Q(i)
//! embeds in `F_p` in two ways (`i ↦ r` and `i ↦ -r`).

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::GaussianRational;

#[inline]
pub fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

#[inline]
pub fn addmod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn submod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

pub fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    acc
}

/// Inverse by Fermat; `a` must be nonzero mod `p`.
pub fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(sp) {
            return n == sp;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes `≡ 1 (mod 4)` below `2^62`, in decreasing order.
pub fn primes_1mod4() -> impl Iterator<Item = u64> {
    let start = (1u64 << 62) - 3; // ≡ 1 mod 4
    (0u64..)
        .map(move |k| start - 4 * k)
        .filter(|&n| is_prime(n))
}

/// A square root of `-1` modulo a prime `p ≡ 1 (mod 4)`.
pub fn sqrt_minus_one(p: u64) -> u64 {
    for c in 2u64.. {
        let r = powmod(c, (p - 1) / 4, p);
        if mulmod(r, r, p) == p - 1 {
            return r;
        }
    }
    unreachable!()
}

fn bigint_mod(a: &BigInt, p: u64) -> u64 {
    let r = a.mod_floor(&BigInt::from(p));
    r.to_u64().expect("reduced residue")
}

/// Image of a rational in `F_p`, or `None` if the denominator vanishes.
pub fn ratio_mod(r: &BigRational, p: u64) -> Option<u64> {
    let d = bigint_mod(r.denom(), p);
    if d == 0 {
        return None;
    }
    Some(mulmod(bigint_mod(r.numer(), p), invmod(d, p), p))
}

/// Image of `re + im*i` under the embedding sending `i` to `root`.
pub fn gaussian_mod(g: &GaussianRational, p: u64, root: u64) -> Option<u64> {
    let a = ratio_mod(&g.re, p)?;
    let b = ratio_mod(&g.im, p)?;
    Some(addmod(a, mulmod(b, root, p), p))
}

/// Chinese remaindering of `(a mod m)` with `(b mod p)`, result in `[0, m*p)`.
pub fn crt(a: &BigInt, m: &BigInt, b: u64, p: u64) -> BigInt {
    let am = bigint_mod(a, p);
    let minv = invmod(bigint_mod(m, p), p);
    let k = mulmod(submod(b, am, p), minv, p);
    a + m * BigInt::from(k)
}

/// Rational reconstruction of `a mod m` with `|num|, den <= sqrt(m/2)`.
pub fn rational_reconstruct(a: &BigInt, m: &BigInt) -> Option<BigRational> {
    let a = a.mod_floor(m);
    if a.is_zero() {
        return Some(BigRational::zero());
    }
    let bound = (m >> 1usize).sqrt();
    let (mut r0, mut r1) = (m.clone(), a);
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    if !r1.gcd(&t1).is_one() {
        return None;
    }
    let (n, d) = if t1.sign() == Sign::Minus {
        (-r1, -t1)
    } else {
        (r1, t1)
    };
    Some(BigRational::new(n, d))
}

/// Basis of the right kernel of `mat` (rows of length `cols`) over `F_p`,
/// by reduced row echelon form. Each basis vector has a 1 in a distinct free
/// column; vectors are ordered by that column.
pub fn kernel(mut mat: Vec<Vec<u64>>, cols: usize, p: u64) -> Vec<Vec<u64>> {
    let mut pivots: Vec<usize> = Vec::new();
    let mut row = 0;
    for c in 0..cols {
        if row == mat.len() {
            break;
        }
        let Some(pr) = (row..mat.len()).find(|&r| mat[r][c] != 0) else {
            continue;
        };
        mat.swap(row, pr);
        let inv = invmod(mat[row][c], p);
        for x in mat[row].iter_mut() {
            *x = mulmod(*x, inv, p);
        }
        let pivot_row = mat[row].clone();
        for (r, other) in mat.iter_mut().enumerate() {
            if r == row || other[c] == 0 {
                continue;
            }
            let f = other[c];
            for (x, &y) in other.iter_mut().zip(&pivot_row).skip(c) {
                *x = submod(*x, mulmod(f, y, p), p);
            }
        }
        pivots.push(c);
        row += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u64; cols];
            v[fc] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = submod(0, mat[r][fc], p);
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_are_prime_and_1mod4() {
        let ps: Vec<u64> = primes_1mod4().take(3).collect();
        for &p in &ps {
            assert_eq!(p % 4, 1);
            assert!(is_prime(p));
            let r = sqrt_minus_one(p);
            assert_eq!(mulmod(r, r, p), p - 1);
        }
        assert!(ps[0] > ps[1]);
        assert!(!is_prime(3215031751)); // strong pseudoprime to bases 2,3,5,7
    }

    #[test]
    fn reconstruct_rationals() {
        let p1 = primes_1mod4().next().unwrap();
        let p2 = primes_1mod4().nth(1).unwrap();
        let m = BigInt::from(p1) * BigInt::from(p2);
        let q = BigRational::new(BigInt::from(-123456789i64), BigInt::from(987654321i64));
        let a1 = ratio_mod(&q, p1).unwrap();
        let a2 = ratio_mod(&q, p2).unwrap();
        let a = crt(&BigInt::from(a1), &BigInt::from(p1), a2, p2);
        assert_eq!(rational_reconstruct(&a, &m), Some(q));
    }

    #[test]
    fn kernel_of_rank_one() {
        let p = 101;
        let k = kernel(vec![vec![1, 2, 3], vec![2, 4, 6]], 3, p);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert_eq!((v[0] + 2 * v[1] + 3 * v[2]) % p, 0);
        }
    }
}
