//! Parity-vector combinatorics shared by the series and 2-adic dynamics.
//!
//! A parity vector records the constant terms along an orbit. Under the
//! full map a nonzero entry is always followed by a zero, so full-map
//! traces are *zero dense* (no two consecutive nonzero entries -- the
//! golden-mean pattern); traces of periodic points are *cyclically* zero
//! dense. Condensing removes the forced zero after each nonzero entry,
//! expanding reinserts it.
//!
//! Counting zero-dense vectors only depends on the alphabet size q, so this
//! module works with abstract symbols 0..q, where "nonzero" means symbol
//! != 0. All closed forms are evaluated through exact integer recurrences:
//!
//!   L_0 = 2, L_1 = 1, L_n = L_{n-1} + (q-1) L_{n-2}
//!   V_1 = V_2 = 1,    V_m = V_{m-1} + (q-1) V_{m-2}
//!
//! L_n counts cyclically zero-dense vectors of length n, V_{n+2} the
//! zero-dense ones. Irrational arithmetic appears only in
//! `asymptotic_ratio`, which uses 128 fractional bits of fixed-point.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

fn require_nonempty(v: &[u64]) -> Result<()> {
    if v.is_empty() {
        return Err(Error::Precondition("empty parity vector".into()));
    }
    Ok(())
}

/// No two consecutive nonzero entries.
pub fn is_zero_dense(v: &[u64]) -> Result<bool> {
    require_nonempty(v)?;
    Ok(v.windows(2).all(|w| w[0] == 0 || w[1] == 0))
}

/// Zero dense, and additionally the infinite concatenation of the vector
/// with itself stays zero dense. A length-1 vector (a) with a != 0 fails:
/// its concatenation repeats a forever.
pub fn is_cyclically_zero_dense(v: &[u64]) -> Result<bool> {
    if !is_zero_dense(v)? {
        return Ok(false);
    }
    Ok(v[v.len() - 1] == 0 || v[0] == 0 && v.len() > 1)
}

/// All cyclically zero-dense vectors over {0, ..., q-1}^n, lexicographic.
/// Generated by backtracking rather than filtering q^n candidates.
pub fn enumerate_cyclically_zero_dense(q: u64, n: usize) -> Result<Vec<Vec<u64>>> {
    enumerate_dense(q, n, true)
}

/// All zero-dense vectors over {0, ..., q-1}^n, lexicographic.
pub fn enumerate_zero_dense(q: u64, n: usize) -> Result<Vec<Vec<u64>>> {
    enumerate_dense(q, n, false)
}

fn enumerate_dense(q: u64, n: usize, cyclic: bool) -> Result<Vec<Vec<u64>>> {
    if q < 2 || n == 0 {
        return Err(Error::Precondition("need q >= 2 and n >= 1".into()));
    }
    let mut out = Vec::new();
    let mut buf = vec![0u64; n];
    fn rec(q: u64, n: usize, cyclic: bool, i: usize, buf: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if i == n {
            if !cyclic || n == 1 || buf[n - 1] == 0 || buf[0] == 0 {
                out.push(buf.clone());
            }
            return;
        }
        let prev_nonzero = i > 0 && buf[i - 1] != 0;
        let symbols = if prev_nonzero { 1 } else { q };
        for s in 0..symbols {
            buf[i] = s;
            rec(q, n, cyclic, i + 1, buf, out);
        }
        buf[i] = 0;
    }
    rec(q, n, cyclic, 0, &mut buf, &mut out);
    if cyclic && n == 1 {
        out.retain(|v| v[0] == 0);
    }
    Ok(out)
}

/// Remove the zero that follows each nonzero entry. Rejects inputs that are
/// not zero dense, and inputs ending in a nonzero entry (the zero to remove
/// would lie outside the window).
pub fn condense(v: &[u64]) -> Result<Vec<u64>> {
    if !is_zero_dense(v)? {
        return Err(Error::Precondition("vector is not zero dense".into()));
    }
    if v[v.len() - 1] != 0 {
        return Err(Error::Precondition(
            "vector ends in a nonzero entry; the forced zero lies outside the window".into(),
        ));
    }
    let mut out = Vec::with_capacity(v.len());
    let mut skip = false;
    for &s in v {
        if skip {
            debug_assert_eq!(s, 0);
            skip = false;
            continue;
        }
        out.push(s);
        skip = s != 0;
    }
    Ok(out)
}

/// Insert a zero after each nonzero entry. Inverse of `condense`.
pub fn expand(v: &[u64]) -> Vec<u64> {
    let mut out = Vec::with_capacity(2 * v.len());
    for &s in v {
        out.push(s);
        if s != 0 {
            out.push(0);
        }
    }
    out
}

/// L_n = alpha^n + beta^n as an exact integer, where alpha and beta are the
/// roots of X^2 - X - (q-1). Counts cyclically zero-dense vectors.
pub fn lucas_like(q: u64, n: u64) -> BigUint {
    let mut prev = BigUint::from(2u32); // L_0
    let mut cur = BigUint::one(); // L_1
    if n == 0 {
        return prev;
    }
    let w = BigUint::from(q - 1);
    for _ in 1..n {
        let next = &cur + &w * &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// V_m = (alpha^m - beta^m)/(alpha - beta) as an exact integer, m >= 1.
/// The zero-dense count of length n is V_{n+2}.
pub fn fib_like(q: u64, m: u64) -> Result<BigUint> {
    if m == 0 {
        return Err(Error::Precondition("fib_like needs m >= 1".into()));
    }
    let mut prev = BigUint::one(); // V_1
    let mut cur = BigUint::one(); // V_2
    if m == 1 {
        return Ok(prev);
    }
    let w = BigUint::from(q - 1);
    for _ in 2..m {
        let next = &cur + &w * &prev;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Number of zero-dense vectors of length n >= 0 (the empty vector counts
/// once).
pub fn zero_dense_count(q: u64, n: u64) -> BigUint {
    fib_like(q, n + 2).expect("n + 2 >= 2")
}

/// Number of cyclically zero-dense vectors of length n >= 1, through the
/// boundary recurrence j_1 = 1, j_2 = 2q-1,
/// j_n = e_{n-1} + (q-1) e_{n-3}. Always equals `lucas_like(q, n)`; the
/// two routes are kept separate so they can be checked against each other.
pub fn j_count(q: u64, n: u64) -> Result<BigUint> {
    if q < 2 || n == 0 {
        return Err(Error::Precondition("need q >= 2 and n >= 1".into()));
    }
    Ok(match n {
        1 => BigUint::one(),
        2 => BigUint::from(2 * q - 1),
        _ => zero_dense_count(q, n - 1) + BigUint::from(q - 1) * zero_dense_count(q, n - 3),
    })
}

/// Number of vectors whose rotation class has primitive period exactly n:
/// i_n = sum_{d|n} mu(d) j_{n/d}.
pub fn i_count(q: u64, n: u64) -> Result<BigUint> {
    if q < 2 || n == 0 {
        return Err(Error::Precondition("need q >= 2 and n >= 1".into()));
    }
    let mut acc = BigInt::zero();
    for d in divisors(n) {
        let j = BigInt::from_biguint(Sign::Plus, j_count(q, n / d)?);
        acc += j * mobius(d);
    }
    let (sign, mag) = acc.into_parts();
    if sign == Sign::Minus {
        return Err(Error::Internal(format!("i_{n} came out negative")));
    }
    Ok(mag)
}

/// Number of cycles of exact length n: Z_n = i_n / n. The division is
/// always exact; a remainder is reported as an internal failure rather
/// than rounded away.
pub fn z_count(q: u64, n: u64) -> Result<BigUint> {
    let i = i_count(q, n)?;
    let (z, rem) = i.div_rem(&BigUint::from(n));
    if !rem.is_zero() {
        return Err(Error::Internal(format!("i_{n} = {i} is not divisible by {n}")));
    }
    Ok(z)
}

/// Standard Moebius function by trial factorization.
pub fn mobius(n: u64) -> i64 {
    assert!(n >= 1, "mobius needs n >= 1");
    let mut m = n;
    let mut k = 0;
    let mut p = 2u64;
    while p * p <= m {
        if m.is_multiple_of(p) {
            m /= p;
            if m.is_multiple_of(p) {
                return 0;
            }
            k += 1;
        }
        p += 1;
    }
    if m > 1 {
        k += 1;
    }
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Positive divisors of n, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// One rotation class of same-length vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotationClass {
    /// Lexicographically minimal rotation.
    pub representative: Vec<u64>,
    /// Smallest d dividing the length with rotate(v, d) = v.
    pub primitive_period: usize,
    /// How many of the input vectors fell into this class.
    pub members: usize,
}

/// Smallest d | n with the d-rotation fixing v.
pub fn primitive_period(v: &[u64]) -> usize {
    let n = v.len();
    for d in divisors(n as u64) {
        let d = d as usize;
        if (0..n).all(|i| v[i] == v[(i + d) % n]) {
            return d;
        }
    }
    n
}

/// Lexicographically minimal rotation of v.
pub fn minimal_rotation(v: &[u64]) -> Vec<u64> {
    let n = v.len();
    let mut best: Option<Vec<u64>> = None;
    for r in 0..n {
        let cand: Vec<u64> = (0..n).map(|i| v[(i + r) % n]).collect();
        if best.as_ref().is_none_or(|b| cand < *b) {
            best = Some(cand);
        }
    }
    best.unwrap_or_default()
}

/// Partition same-length vectors into rotation classes. The number of
/// classes with primitive period exactly n must match `z_count`.
pub fn rotation_orbits(vectors: &[Vec<u64>]) -> Result<Vec<RotationClass>> {
    let Some(first) = vectors.first() else {
        return Ok(Vec::new());
    };
    let n = first.len();
    if vectors.iter().any(|v| v.len() != n) {
        return Err(Error::Precondition("mixed vector lengths".into()));
    }
    let mut classes: std::collections::BTreeMap<Vec<u64>, usize> = Default::default();
    for v in vectors {
        *classes.entry(minimal_rotation(v)).or_insert(0) += 1;
    }
    Ok(classes
        .into_iter()
        .map(|(representative, members)| {
            let primitive_period = primitive_period(&representative);
            RotationClass {
                representative,
                primitive_period,
                members,
            }
        })
        .collect())
}

/// Row of the exact count ledger for one n.
#[derive(Debug, Clone)]
pub struct LedgerRow {
    pub n: u64,
    /// zero-dense vectors of length n
    pub e: BigUint,
    /// cyclically zero-dense vectors of length n (= periodic points of
    /// period dividing n)
    pub j: BigUint,
    /// vectors of primitive rotation period exactly n
    pub i: BigUint,
    /// cycles of exact length n
    pub z: BigUint,
}

/// The e/j/i/Z ledger for n = 1..=n_max at alphabet size q.
#[derive(Debug, Clone)]
pub struct CountLedger {
    pub q: u64,
    pub rows: Vec<LedgerRow>,
}

impl CountLedger {
    pub fn compute(q: u64, n_max: u64) -> Result<CountLedger> {
        let mut rows = Vec::with_capacity(n_max as usize);
        for n in 1..=n_max {
            rows.push(LedgerRow {
                n,
                e: zero_dense_count(q, n),
                j: j_count(q, n)?,
                i: i_count(q, n)?,
                z: z_count(q, n)?,
            });
        }
        Ok(CountLedger { q, rows })
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,e,j,i,Z\n");
        for r in &self.rows {
            out.push_str(&format!("{},{},{},{},{}\n", r.n, r.e, r.j, r.i, r.z));
        }
        out
    }
}

const FRAC_BITS: u32 = 128;

/// alpha^n in fixed point with `FRAC_BITS` fractional bits, where
/// alpha = (1 + sqrt(4q-3))/2.
fn alpha_power_fixed(q: u64, n: u64) -> BigUint {
    let b = BigUint::from(4 * q - 3);
    let sqrt_b = (b << (2 * FRAC_BITS)).sqrt();
    let alpha = ((BigUint::one() << FRAC_BITS) + sqrt_b) >> 1;
    let mut acc = BigUint::one() << FRAC_BITS;
    for _ in 0..n {
        acc = (acc * &alpha) >> FRAC_BITS;
    }
    acc
}

/// Z_n * n / alpha^n, for eyeballing the growth law Z_n ~ alpha^n / n.
/// Computed with 128 fractional bits and rounded once to f64 at the end.
pub fn asymptotic_ratio(q: u64, n: u64) -> Result<f64> {
    if n < 2 {
        return Err(Error::Precondition("asymptotic ratio needs n >= 2".into()));
    }
    let i = i_count(q, n)?; // = Z_n * n
    let ratio_fixed = (i << (2 * FRAC_BITS)) / alpha_power_fixed(q, n);
    Ok(ratio_fixed.to_f64().unwrap_or(f64::INFINITY) / 2f64.powi(FRAC_BITS as i32))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn density_checks() {
        assert!(is_cyclically_zero_dense(&[1, 0, 0]).unwrap());
        assert!(is_zero_dense(&[1, 0, 1]).unwrap());
        assert!(!is_cyclically_zero_dense(&[1, 0, 1]).unwrap());
        assert!(is_cyclically_zero_dense(&[0, 0]).unwrap());
        assert!(is_zero_dense(&[5]).unwrap());
        assert!(!is_cyclically_zero_dense(&[5]).unwrap());
        assert!(is_cyclically_zero_dense(&[0]).unwrap());
        assert!(is_zero_dense(&[]).is_err());
    }

    #[test]
    fn enumeration_counts() {
        let v = enumerate_cyclically_zero_dense(2, 3).unwrap();
        assert_eq!(
            v,
            vec![vec![0, 0, 0], vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]
        );
        assert_eq!(enumerate_cyclically_zero_dense(4, 3).unwrap().len(), 10);
        let v = enumerate_cyclically_zero_dense(2, 2).unwrap();
        assert_eq!(v, vec![vec![0, 0], vec![0, 1], vec![1, 0]]);
        assert_eq!(enumerate_cyclically_zero_dense(2, 1).unwrap(), vec![vec![0]]);
    }

    #[test]
    fn condense_expand_pairs() {
        assert_eq!(expand(&[1, 0]), vec![1, 0, 0]);
        assert_eq!(condense(&[1, 0, 0]).unwrap(), vec![1, 0]);
        assert_eq!(expand(&[0, 0]), vec![0, 0]);
        assert_eq!(condense(&[1, 0]).unwrap(), vec![1]);
        assert!(condense(&[1, 1, 0]).is_err());
        assert!(condense(&[0, 1]).is_err());
    }

    #[test]
    fn lucas_values_at_q2() {
        let got: Vec<u64> = (1..=7)
            .map(|n| u64::try_from(&lucas_like(2, n)).unwrap())
            .collect();
        assert_eq!(got, vec![1, 3, 4, 7, 11, 18, 29]);
    }

    #[test]
    fn small_counts_match_spectrum() {
        // e_1 = q, e_2 = 2q - 1
        for q in [2u64, 3, 4, 5] {
            assert_eq!(zero_dense_count(q, 1), BigUint::from(q));
            assert_eq!(zero_dense_count(q, 2), BigUint::from(2 * q - 1));
            for n in 1..=12 {
                assert_eq!(j_count(q, n).unwrap(), lucas_like(q, n), "q={q} n={n}");
            }
        }
        // q=2: Z_5 = (11 - 1)/5 = 2; Z_1 = 1
        assert_eq!(z_count(2, 5).unwrap(), BigUint::from(2u32));
        assert_eq!(z_count(2, 1).unwrap(), BigUint::from(1u32));
        // q=4: j_3 = 10, i_3 = 9, Z_3 = 3
        assert_eq!(j_count(4, 3).unwrap(), BigUint::from(10u32));
        assert_eq!(i_count(4, 3).unwrap(), BigUint::from(9u32));
        assert_eq!(z_count(4, 3).unwrap(), BigUint::from(3u32));
    }

    #[test]
    fn mobius_values() {
        assert_eq!(mobius(1), 1);
        assert_eq!(mobius(4), 0);
        assert_eq!(mobius(6), 1);
        assert_eq!(mobius(30), -1);
        assert_eq!(mobius(12), 0);
    }

    #[test]
    fn rotation_classes() {
        let mut vectors = vec![vec![0, 0, 0, 0], vec![1, 0, 1, 0], vec![0, 1, 0, 1]];
        for r in 0..4 {
            vectors.push((0..4).map(|i| [1, 0, 0, 0][(i + r) % 4]).collect());
        }
        let classes = rotation_orbits(&vectors).unwrap();
        assert_eq!(classes.len(), 3);
        let prim4: Vec<_> = classes.iter().filter(|c| c.primitive_period == 4).collect();
        assert_eq!(prim4.len(), 1);
        assert_eq!(prim4[0].representative, vec![0, 0, 0, 1]);
        assert_eq!(prim4[0].members, 4);

        let single = rotation_orbits(&[vec![0]]).unwrap();
        assert_eq!(single[0].primitive_period, 1);

        assert!(rotation_orbits(&[vec![0], vec![0, 1]]).is_err());
    }

    #[test]
    fn enumerated_counts_equal_formulas() {
        for q in [2u64, 3, 4] {
            for n in 1..=9usize {
                let cyc = enumerate_cyclically_zero_dense(q, n).unwrap();
                assert_eq!(BigUint::from(cyc.len()), j_count(q, n as u64).unwrap());
                let dense = enumerate_zero_dense(q, n).unwrap();
                assert_eq!(BigUint::from(dense.len()), zero_dense_count(q, n as u64));
                let classes = rotation_orbits(&cyc).unwrap();
                let exact = classes
                    .iter()
                    .filter(|c| c.primitive_period == n)
                    .count();
                assert_eq!(BigUint::from(exact), z_count(q, n as u64).unwrap());
            }
        }
    }

    #[test]
    fn ledger_rows_are_consistent() {
        let ledger = CountLedger::compute(4, 6).unwrap();
        assert_eq!(ledger.rows.len(), 6);
        let r3 = &ledger.rows[2];
        assert_eq!(r3.j, BigUint::from(10u32));
        assert_eq!(r3.i, BigUint::from(9u32));
        assert_eq!(r3.z, BigUint::from(3u32));
        for r in &ledger.rows {
            assert_eq!(&r.i % BigUint::from(r.n), BigUint::zero());
            assert_eq!(r.z.clone() * BigUint::from(r.n), r.i);
        }
        let csv = ledger.to_csv();
        assert!(csv.starts_with("n,e,j,i,Z\n1,4,1,1,1\n"));
    }

    #[test]
    fn asymptotic_ratio_settles() {
        let r = asymptotic_ratio(2, 40).unwrap();
        assert!((r - 1.0).abs() <= 0.01, "ratio {r}");
        let r = asymptotic_ratio(5, 40).unwrap();
        assert!((r - 1.0).abs() <= 0.01, "ratio {r}");
    }
}
