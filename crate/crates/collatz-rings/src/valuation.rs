//! Base-p digit machinery: p-adic valuations, digit sums, Kummer's theorem
//! for binomial valuations, and the divisor-threshold constant
//! K(n) = prod p_i^(alpha_i + floor(log_{p_i} n)) that governs every period
//! formula in the crate.
//!
//! Everything here is exact integer arithmetic; floor logarithms are
//! computed by repeated division, never through floats.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ring::CharFactorization;

/// floor(log_base(n)) for n >= 1, by repeated division.
pub fn floor_log(base: u64, n: &BigUint) -> Result<u64> {
    if n.is_zero() {
        return Err(Error::Precondition("log of zero is undefined".into()));
    }
    let base = BigUint::from(base);
    let mut m = n.clone();
    let mut log = 0u64;
    while m >= base {
        m /= &base;
        log += 1;
    }
    Ok(log)
}

/// The p-adic valuation v_p(n): the largest e with p^e dividing n.
pub fn vp(p: u64, n: &BigUint) -> Result<u64> {
    if n.is_zero() {
        return Err(Error::InfiniteValuation);
    }
    let p = BigUint::from(p);
    let mut m = n.clone();
    let mut e = 0u64;
    loop {
        let (q, r) = m.div_rem(&p);
        if !r.is_zero() {
            return Ok(e);
        }
        m = q;
        e += 1;
    }
}

/// Sum of the base-p digits of n.
pub fn digit_sum(p: u64, n: &BigUint) -> u64 {
    let p = BigUint::from(p);
    let mut m = n.clone();
    let mut s = 0u64;
    while !m.is_zero() {
        let (q, r) = m.div_rem(&p);
        s += u64::try_from(&r).expect("digit fits in u64");
        m = q;
    }
    s
}

/// v_p(C(n, m)) via Kummer's theorem:
/// (S_p(m) + S_p(n-m) - S_p(n)) / (p - 1).
pub fn binom_valuation(p: u64, n: &BigUint, m: &BigUint) -> Result<u64> {
    if m > n {
        return Err(Error::Precondition(format!("m = {m} exceeds n = {n}")));
    }
    let carry_sum = digit_sum(p, m) + digit_sum(p, &(n - m)) - digit_sum(p, n);
    debug_assert_eq!(carry_sum % (p - 1), 0);
    Ok(carry_sum / (p - 1))
}

/// v_p(C(a, n)) computed as v_p(a) - v_p(n), valid under the hypothesis
/// a >= n >= 1 and v_p(a) >= floor(log_p(n)) + 1.
pub fn binom_valuation_by_difference(p: u64, a: &BigUint, n: &BigUint) -> Result<u64> {
    if n.is_zero() || a < n {
        return Err(Error::Precondition(format!(
            "need a >= n >= 1, got a = {a}, n = {n}"
        )));
    }
    let va = vp(p, a)?;
    let vn = vp(p, n)?;
    if va < floor_log(p, n)? + 1 {
        return Err(Error::Precondition(format!(
            "hypothesis not met: v_{p}({a}) = {va} < floor(log_{p}({n})) + 1"
        )));
    }
    Ok(va - vn)
}

/// K(n) = prod p_i^(alpha_i + floor(log_{p_i} n)) for n >= 1.
pub fn threshold_constant(cf: &CharFactorization, n: u64) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::Precondition(
            "threshold constant undefined for n = 0".into(),
        ));
    }
    let big_n = BigUint::from(n);
    let mut out = BigUint::one();
    for &(p, alpha) in cf.factors() {
        let exp = alpha as u64 + floor_log(p, &big_n)?;
        out *= BigUint::from(p).pow(u32::try_from(exp).expect("exponent fits u32"));
    }
    Ok(out)
}

/// Both sides of the divisibility equivalence for k >= n >= 1:
/// (K(n) | k, prod p_i^alpha_i | C(k, j) for all 1 <= j <= n).
/// The two booleans are provably always equal; returning the pair lets
/// callers check rather than trust.
pub fn divisibility_equivalence_check(
    cf: &CharFactorization,
    n: u64,
    k: &BigUint,
) -> Result<(bool, bool)> {
    if n == 0 || k < &BigUint::from(n) {
        return Err(Error::Precondition(format!("need k >= n >= 1, got k = {k}, n = {n}")));
    }
    let side1 = (k % threshold_constant(cf, n)?).is_zero();
    let mut side2 = true;
    'outer: for j in 1..=n {
        let j = BigUint::from(j);
        for &(p, alpha) in cf.factors() {
            if binom_valuation(p, k, &j)? < alpha as u64 {
                side2 = false;
                break 'outer;
            }
        }
    }
    Ok((side1, side2))
}

/// C(n, m) mod p for prime p, by Lucas's theorem (digit-wise products).
pub fn binom_mod_p(p: u64, n: &BigUint, m: &BigUint) -> u64 {
    let big_p = BigUint::from(p);
    let mut n = n.clone();
    let mut m = m.clone();
    let mut acc = 1u64;
    while !m.is_zero() || !n.is_zero() {
        let (nq, nr) = n.div_rem(&big_p);
        let (mq, mr) = m.div_rem(&big_p);
        let nd = u64::try_from(&nr).unwrap();
        let md = u64::try_from(&mr).unwrap();
        acc = acc * small_binom_mod_p(nd, md, p) % p;
        if acc == 0 {
            return 0;
        }
        n = nq;
        m = mq;
    }
    acc
}

/// C(a, b) mod p for 0 <= a, b < p.
fn small_binom_mod_p(a: u64, b: u64, p: u64) -> u64 {
    if b > a {
        return 0;
    }
    let b = b.min(a - b);
    let mulmod = |x: u64, y: u64| (x as u128 * y as u128 % p as u128) as u64;
    let mut num = 1u64;
    let mut den = 1u64;
    for i in 0..b {
        num = mulmod(num, a - i);
        den = mulmod(den, i + 1);
    }
    // Fermat inverse; p is prime and den != 0 mod p
    let mut inv = 1u64;
    let mut base = den;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            inv = mulmod(inv, base);
        }
        base = mulmod(base, base);
        e >>= 1;
    }
    mulmod(num, inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::factorize;

    fn b(n: u64) -> BigUint {
        BigUint::from(n)
    }

    /// Independent oracle: exact big-integer binomial coefficient.
    fn binom_exact(n: u64, m: u64) -> BigUint {
        let mut acc = BigUint::one();
        for i in 0..m {
            acc = acc * b(n - i) / b(i + 1);
        }
        acc
    }

    #[test]
    fn vp_and_digit_sum_basics() {
        assert_eq!(vp(2, &b(12)).unwrap(), 2);
        assert_eq!(vp(3, &b(7)).unwrap(), 0);
        assert_eq!(vp(5, &b(250)).unwrap(), 3);
        assert!(matches!(vp(2, &b(0)), Err(Error::InfiniteValuation)));

        assert_eq!(digit_sum(2, &b(5)), 2);
        assert_eq!(digit_sum(3, &b(8)), 4);
        assert_eq!(digit_sum(7, &b(0)), 0);
    }

    #[test]
    fn kummer_matches_direct_factorization() {
        // frozen from the big-integer oracle
        assert_eq!(binom_valuation(2, &b(4), &b(2)).unwrap(), 1); // C(4,2)=6
        assert_eq!(binom_valuation(3, &b(9), &b(1)).unwrap(), 2); // C(9,1)=9
        assert_eq!(binom_valuation(2, &b(7), &b(3)).unwrap(), 0); // C(7,3)=35
        for (p, n, m) in [(2u64, 40u64, 17u64), (3, 81, 27), (5, 126, 25), (7, 343, 49)] {
            let direct = vp(p, &binom_exact(n, m)).unwrap();
            assert_eq!(binom_valuation(p, &b(n), &b(m)).unwrap(), direct);
        }
        assert!(binom_valuation(2, &b(3), &b(4)).is_err());
    }

    #[test]
    fn valuation_difference_shortcut() {
        assert_eq!(binom_valuation_by_difference(2, &b(8), &b(2)).unwrap(), 2);
        assert_eq!(binom_valuation_by_difference(3, &b(27), &b(9)).unwrap(), 1);
        // v2(6) = 1 < floor(log2 4) + 1 = 3
        assert!(binom_valuation_by_difference(2, &b(6), &b(4)).is_err());
    }

    #[test]
    fn threshold_constant_examples() {
        let k = |nn: u64, n: u64| threshold_constant(&factorize(nn), n).unwrap();
        assert_eq!(k(4, 1), b(4));
        assert_eq!(k(12, 3), b(72)); // 2^(2+1) * 3^(1+1)
        assert_eq!(k(3, 2), b(3));
        assert!(threshold_constant(&factorize(4), 0).is_err());
    }

    #[test]
    fn divisibility_equivalence_examples() {
        let chk = |nn: u64, n: u64, k: u64| {
            divisibility_equivalence_check(&factorize(nn), n, &b(k)).unwrap()
        };
        assert_eq!(chk(4, 1, 4), (true, true));
        assert_eq!(chk(4, 1, 2), (false, false));
        assert_eq!(chk(2, 2, 4), (true, true));
        assert!(divisibility_equivalence_check(&factorize(4), 3, &b(2)).is_err());
    }

    #[test]
    fn lucas_digit_products() {
        // C(10, 3) = 120
        assert_eq!(binom_mod_p(7, &b(10), &b(3)), 120 % 7);
        assert_eq!(binom_mod_p(2, &b(10), &b(3)), 0);
        assert_eq!(binom_mod_p(3, &b(10), &b(3)), 0);
        for n in 0u64..30 {
            for m in 0..=n {
                let exact = binom_exact(n, m);
                for p in [2u64, 3, 5] {
                    assert_eq!(binom_mod_p(p, &b(n), &b(m)), u64::try_from(&(exact.clone() % b(p))).unwrap());
                }
            }
        }
    }

    #[test]
    fn floor_log_by_division() {
        assert_eq!(floor_log(2, &b(1)).unwrap(), 0);
        assert_eq!(floor_log(2, &b(7)).unwrap(), 2);
        assert_eq!(floor_log(3, &b(27)).unwrap(), 3);
        assert_eq!(floor_log(10, &b(999)).unwrap(), 2);
    }
}
