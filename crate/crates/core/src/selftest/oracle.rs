//! Independent checks used by the self-test: small direct computations
//! that do not go through the library routines they are checking.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exact::{big, Rational};
use crate::heights::VectorQ;
use crate::polynomial::MultiPoly;

fn lcm_of_denominators(v: &[Rational]) -> BigInt {
    v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// `H(v)`: sup-norm of the primitive integer multiple.
pub fn sup_height(v: &[Rational]) -> Rational {
    let l = lcm_of_denominators(v);
    let ints: Vec<BigInt> = v.iter().map(|x| (x * big(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let sup = ints.iter().map(|x| x.abs()).max().unwrap_or_default();
    big(sup / g)
}

/// `h(v) = H(1, v)`.
pub fn affine_height(v: &[Rational]) -> Rational {
    let mut w = vec![Rational::one()];
    w.extend_from_slice(v);
    sup_height(&w)
}

/// `Σ pᵢ²` for the primitive integer multiple.
pub fn euclidean_height_sq(v: &[Rational]) -> Rational {
    let h = sup_height(v);
    let l = lcm_of_denominators(v);
    let ints: Vec<BigInt> = v.iter().map(|x| (x * big(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    debug_assert!(!h.is_zero());
    big(ints.iter().map(|x| (x / &g) * (x / &g)).sum::<BigInt>())
}

/// First point of `[-r, r]ⁿ` (ordered by sup-norm, then lexicographically)
/// where `p` does not vanish, found by sorting the whole box.
pub fn first_nonvanishing_by_sorting(p: &MultiPoly, r: i64) -> Option<Vec<i64>> {
    let n = p.nvars();
    let side = (2 * r + 1) as usize;
    let total = side.pow(n as u32);
    let mut pts: Vec<Vec<i64>> = (0..total)
        .map(|mut k| {
            (0..n)
                .map(|_| {
                    let d = (k % side) as i64 - r;
                    k /= side;
                    d
                })
                .collect::<Vec<i64>>()
                .into_iter()
                .rev()
                .collect()
        })
        .collect();
    pts.sort_by(|a, b| {
        let sa = a.iter().map(|x| x.abs()).max().unwrap_or(0);
        let sb = b.iter().map(|x| x.abs()).max().unwrap_or(0);
        sa.cmp(&sb).then_with(|| a.cmp(b))
    });
    pts.into_iter().find(|z| !p.evaluate_ints(z).is_zero())
}

/// Integer form of `F` homogenized by an extra variable `q`, evaluated at
/// `(q, p)` in `i128`; `None` on overflow.
struct Homogenized {
    degree: u32,
    terms: Vec<(Vec<u32>, i128)>,
}

impl Homogenized {
    fn new(f: &MultiPoly) -> Option<Self> {
        let coeffs: Vec<Rational> = f.terms().map(|(_, c)| c.clone()).collect();
        let l = lcm_of_denominators(&coeffs);
        let terms = f
            .terms()
            .map(|(e, c)| Some((e.to_vec(), (c * big(l.clone())).to_integer().to_i128()?)))
            .collect::<Option<Vec<_>>>()?;
        Some(Homogenized { degree: f.degree(), terms })
    }

    fn is_zero_at(&self, q: i64, p: &[i64]) -> Option<bool> {
        let mut acc: i128 = 0;
        for (e, c) in &self.terms {
            let mut t = *c;
            for (&x, &k) in p.iter().zip(e) {
                t = t.checked_mul((x as i128).checked_pow(k)?)?;
            }
            let rest = self.degree - e.iter().sum::<u32>();
            t = t.checked_mul((q as i128).checked_pow(rest)?)?;
            acc = acc.checked_add(t)?;
        }
        Some(acc == 0)
    }
}

/// What a valid witness must satisfy.
pub struct ZeroQuery<'a> {
    pub vanish: &'a [MultiPoly],
    pub avoid: Option<&'a MultiPoly>,
    /// Projective problems need `z ≠ 0` and use `H`; affine ones use `h`.
    pub projective: bool,
}

impl ZeroQuery<'_> {
    pub fn accepts(&self, z: &VectorQ) -> bool {
        if self.projective && z.is_zero() {
            return false;
        }
        self.vanish.iter().all(|f| f.evaluate(z).map(|v| v.is_zero()).unwrap_or(false))
            && self.avoid.is_none_or(|p| p.evaluate(z).map(|v| !v.is_zero()).unwrap_or(false))
    }

    pub fn height(&self, z: &VectorQ) -> Rational {
        if self.projective {
            sup_height(&z.0)
        } else {
            affine_height(&z.0)
        }
    }
}

pub struct BruteForce {
    pub found: Option<VectorQ>,
    pub scanned: u64,
}

/// Scans points of height `≤ limit` by increasing height and stops at the
/// first one accepted by `query`. Affine problems enumerate coprime
/// `(q, p₁, …, pₙ)` with `max(q, |pᵢ|) = s`, which are exactly the points
/// `p/q` of height `s`; projective ones enumerate nonzero integer vectors.
pub fn brute_force(query: &ZeroQuery<'_>, n: usize, limit: u64) -> BruteForce {
    let hom: Option<Vec<Homogenized>> = query.vanish.iter().map(Homogenized::new).collect();
    let mut scanned = 0u64;
    let limit = limit as i64;
    for s in 1..=limit {
        let qs: Vec<i64> = if query.projective { vec![1] } else { (1..=s).collect() };
        for &q in &qs {
            let mut p = vec![-s; n];
            loop {
                let sup = p.iter().map(|x| x.abs()).max().unwrap_or(0).max(if query.projective { 0 } else { q });
                let coprime = if query.projective {
                    p.iter().fold(0i64, |g, &x| g.gcd(&x)) == 1
                } else {
                    p.iter().fold(q, |g, &x| g.gcd(&x)) == 1
                };
                if sup == s && coprime {
                    scanned += 1;
                    let fast_reject = hom
                        .as_ref()
                        .map(|hs| hs.iter().any(|h| h.is_zero_at(q, &p) == Some(false)))
                        .unwrap_or(false);
                    if !fast_reject {
                        let z = VectorQ(p.iter().map(|&x| Rational::new(x.into(), q.into())).collect());
                        if query.accepts(&z) {
                            return BruteForce { found: Some(z), scanned };
                        }
                    }
                }
                if !next_in_box(&mut p, s) {
                    break;
                }
            }
        }
    }
    BruteForce { found: None, scanned }
}

fn next_in_box(p: &mut [i64], s: i64) -> bool {
    for i in (0..p.len()).rev() {
        if p[i] < s {
            p[i] += 1;
            for x in p[i + 1..].iter_mut() {
                *x = -s;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use crate::polynomial::parse_poly;

    #[test]
    fn heights_by_hand() {
        assert_eq!(sup_height(&[rat(1, 2), rat(-3, 4)]), int(3));
        assert_eq!(affine_height(&[rat(1, 2)]), int(2));
        assert_eq!(euclidean_height_sq(&[int(3), int(4)]), int(25));
    }

    #[test]
    fn brute_force_finds_rational_zero() {
        let f = parse_poly("2*x1 - 1", 1).unwrap();
        let q = ZeroQuery { vanish: std::slice::from_ref(&f), avoid: None, projective: false };
        let r = brute_force(&q, 1, 3);
        assert_eq!(r.found, Some(VectorQ(vec![rat(1, 2)])));
    }

    #[test]
    fn brute_force_projective_skips_zero() {
        let f = parse_poly("x1 - x2", 2).unwrap();
        let q = ZeroQuery { vanish: std::slice::from_ref(&f), avoid: None, projective: true };
        assert_eq!(brute_force(&q, 2, 2).found, Some(VectorQ::from_ints(&[-1, -1])));
    }

    #[test]
    fn sorting_oracle_matches_shell_order() {
        let p = parse_poly("x1*x2 - x1", 2).unwrap();
        assert_eq!(first_nonvanishing_by_sorting(&p, 2), Some(vec![-1, -1]));
    }
}
