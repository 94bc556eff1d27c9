//! Integer factorization for desk-scale inputs: trial division by
//! candidates below 10⁶, Miller–Rabin, then Pollard's rho (Brent variant).

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

const TRIAL_BOUND: u64 = 1_000_000;
const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Prime factorization of `n ≥ 1` as sorted `(prime, multiplicity)` pairs.
pub fn factorize(n: &BigUint) -> Vec<(BigUint, u32)> {
    assert!(!n.is_zero(), "cannot factor zero");
    let mut primes: Vec<BigUint> = Vec::new();
    let mut rest = n.clone();
    for p in std::iter::once(2u64).chain((3..TRIAL_BOUND).step_by(2)) {
        let pb = BigUint::from(p);
        if &pb * &pb > rest {
            break;
        }
        while (&rest % &pb).is_zero() {
            rest /= &pb;
            primes.push(pb.clone());
        }
    }
    if !rest.is_one() {
        split_large(rest, &mut primes);
    }
    primes.sort();
    let mut out: Vec<(BigUint, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

fn split_large(n: BigUint, out: &mut Vec<BigUint>) {
    if n.is_one() {
        return;
    }
    let bound = BigUint::from(TRIAL_BOUND);
    if n < &bound * &bound || is_probable_prime(&n) {
        out.push(n);
        return;
    }
    let mut c = 1u64;
    let d = loop {
        if let Some(d) = pollard_brent(&n, c) {
            break d;
        }
        c += 1;
    };
    split_large(d.clone(), out);
    split_large(n / d, out);
}

fn pollard_brent(n: &BigUint, c: u64) -> Option<BigUint> {
    let c = BigUint::from(c);
    let f = |x: &BigUint| (x * x + &c) % n;
    let mut y = BigUint::from(2u32);
    let mut r: u64 = 1;
    let mut q = BigUint::one();
    let m: u64 = 64;
    let mut g = BigUint::one();
    let mut x = y.clone();
    let mut ys = y.clone();
    while g.is_one() {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g.is_one() {
            ys = y.clone();
            for _ in 0..m.min(r - k) {
                y = f(&y);
                let diff = if x > y { &x - &y } else { &y - &x };
                q = (q * diff) % n;
            }
            g = q.gcd(n);
            k += m;
        }
        r *= 2;
        if r > 1 << 24 {
            return None;
        }
    }
    if &g == n {
        loop {
            ys = f(&ys);
            let diff = if x > ys { &x - &ys } else { &ys - &x };
            g = diff.gcd(n);
            if !g.is_one() {
                break;
            }
        }
    }
    if &g == n {
        None
    } else {
        Some(g)
    }
}

pub fn is_probable_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if n < &two {
        return false;
    }
    for &p in &MR_BASES {
        let pb = BigUint::from(p);
        if *n == pb {
            return true;
        }
        if (n % &pb).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    'witness: for &a in &MR_BASES {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// All positive divisors of `n ≥ 1`, ascending.
pub fn divisors(n: &BigUint) -> Vec<BigUint> {
    let mut divs = vec![BigUint::one()];
    for (p, e) in factorize(n) {
        let current = divs.clone();
        let mut pk = BigUint::one();
        for _ in 0..e {
            pk *= &p;
            divs.extend(current.iter().map(|d| d * &pk));
        }
    }
    divs.sort();
    divs
}

/// Multiplicity of the prime `p` in `n ≠ 0`.
pub fn valuation(n: &BigUint, p: &BigUint) -> u32 {
    let mut n = n.clone();
    let mut v = 0;
    while (&n % p).is_zero() {
        n /= p;
        v += 1;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn f(n: u64) -> Vec<(u64, u32)> {
        factorize(&BigUint::from(n))
            .into_iter()
            .map(|(p, e)| (p.to_u64().unwrap(), e))
            .collect()
    }

    #[test]
    fn small_factorizations() {
        assert_eq!(f(1), vec![]);
        assert_eq!(f(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(f(97), vec![(97, 1)]);
    }

    #[test]
    fn rho_splits_product_of_large_primes() {
        // 1000003 * 1000033, both above the trial bound
        let n = BigUint::from(1_000_003u64) * BigUint::from(1_000_033u64);
        let got = factorize(&n);
        assert_eq!(
            got,
            vec![(BigUint::from(1_000_003u64), 1), (BigUint::from(1_000_033u64), 1)]
        );
    }

    #[test]
    fn divisors_of_twelve() {
        let d: Vec<u64> = divisors(&BigUint::from(12u32)).iter().map(|x| x.to_u64().unwrap()).collect();
        assert_eq!(d, vec![1, 2, 3, 4, 6, 12]);
    }

    #[test]
    fn primality() {
        assert!(is_probable_prime(&BigUint::from(1_000_000_007u64)));
        assert!(!is_probable_prime(&BigUint::from(561u32)));
    }
}
