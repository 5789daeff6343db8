//! Coefficient rings: Z/N, Galois fields F_q, the infinite ring F_p[t], and Z.
//!
//! Every supported ring is finite or has positive characteristic except Z,
//! which is kept around as the characteristic-zero contrast case. Elements
//! are always stored in canonical reduced form, so `==` is ring equality.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// A supported coefficient ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Ring {
    /// Z/N for N >= 2.
    ZmodN { n: u64 },
    /// F_{p^k} = F_p[y]/(modulus), modulus monic irreducible, little-endian.
    GaloisField { p: u64, modulus: Vec<u64> },
    /// The polynomial ring F_p[t]: infinite, characteristic p.
    PolyOverPrime { p: u64 },
    /// The integers.
    Integers,
}

/// An element of one of the supported rings, in canonical reduced form:
/// residues lie in [0, N), field elements and t-polynomials carry no
/// trailing zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RingElem {
    Residue(u64),
    FieldElem(Vec<u64>),
    PolyT(Vec<u64>),
    Int(BigInt),
}

/// Prime factorization of a positive characteristic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharFactorization {
    factors: Vec<(u64, u32)>,
}

impl CharFactorization {
    /// Factor pairs (p_i, alpha_i), p_i strictly increasing.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// The factored characteristic itself.
    pub fn characteristic(&self) -> u64 {
        self.factors
            .iter()
            .map(|&(p, a)| p.pow(a))
            .product::<u64>()
    }

    /// The product of p_i^alpha_i as a big integer (same as `characteristic`).
    pub fn product(&self) -> BigUint {
        BigUint::from(self.characteristic())
    }
}

/// Factor a positive integer by trial division.
pub fn factorize(n: u64) -> CharFactorization {
    assert!(n > 0, "factorize: n must be positive");
    let mut factors = Vec::new();
    let mut m = n;
    let mut p = 2u64;
    while p * p <= m {
        if m.is_multiple_of(p) {
            let mut a = 0u32;
            while m.is_multiple_of(p) {
                m /= p;
                a += 1;
            }
            factors.push((p, a));
        }
        p += 1;
    }
    if m > 1 {
        factors.push((m, 1));
    }
    CharFactorization { factors }
}

/// Deterministic Miller-Rabin for u64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut r = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        r += 1;
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let pow = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        b %= n;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, b);
            }
            b = mul(b, b);
            e >>= 1;
        }
        acc
    };
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..r - 1 {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

// Polynomial helpers over F_p, little-endian coefficient vectors with no
// trailing zeros.

fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn poly_add_p(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len().max(b.len())];
    for (i, slot) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *slot = (x + y) % p;
    }
    trim(out)
}

fn poly_neg_p(a: &[u64], p: u64) -> Vec<u64> {
    trim(a.iter().map(|&c| (p - c) % p).collect())
}

fn poly_mul_p(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + (x as u128 * y as u128 % p as u128) as u64) % p;
        }
    }
    trim(out)
}

/// Remainder of `a` modulo the monic polynomial `m`, coefficients mod p.
fn poly_rem_p(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    debug_assert_eq!(*m.last().unwrap(), 1, "modulus must be monic");
    let k = m.len() - 1;
    let mut r: Vec<u64> = a.to_vec();
    while r.len() > k {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - k;
        if lead != 0 {
            for (i, &mc) in m.iter().enumerate() {
                let idx = i + shift;
                let sub = (lead as u128 * mc as u128 % p as u128) as u64;
                r[idx] = (r[idx] + p - sub) % p;
            }
        }
        r.pop();
        while r.last() == Some(&0) && r.len() > k {
            r.pop();
        }
    }
    trim(r)
}

/// Is `m` (monic, degree >= 1, mod p) irreducible? Trial division by all
/// monic polynomials of degree up to deg(m)/2 -- moduli are desk-scale.
fn is_irreducible(m: &[u64], p: u64) -> bool {
    let k = m.len() - 1;
    if k == 1 {
        return true;
    }
    for d in 1..=k / 2 {
        // candidates: monic degree-d polys, low coefficients counted in base p
        let count = p.pow(d as u32);
        for idx in 0..count {
            let mut cand = Vec::with_capacity(d + 1);
            let mut rem = idx;
            for _ in 0..d {
                cand.push(rem % p);
                rem /= p;
            }
            cand.push(1);
            if poly_rem_p(m, &cand, p).is_empty() {
                return false;
            }
        }
    }
    true
}

impl Ring {
    pub fn zmod(n: u64) -> Result<Ring> {
        if n < 2 {
            return Err(Error::ModulusTooSmall(n));
        }
        Ok(Ring::ZmodN { n })
    }

    /// Build F_{p^k} from a monic modulus (little-endian over F_p).
    pub fn galois(p: u64, modulus: Vec<u64>) -> Result<Ring> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let modulus: Vec<u64> = modulus.iter().map(|&c| c % p).collect();
        let k = match modulus.len() {
            0 | 1 => return Err(Error::RingSpec("modulus must have degree >= 1".into())),
            len => len - 1,
        };
        if k > 8 {
            return Err(Error::Precondition(format!(
                "field extension degree {k} exceeds cap 8"
            )));
        }
        if *modulus.last().unwrap() != 1 {
            return Err(Error::RingSpec("modulus must be monic".into()));
        }
        if !is_irreducible(&modulus, p) {
            return Err(Error::ReducibleModulus(p));
        }
        Ok(Ring::GaloisField { p, modulus })
    }

    /// Build F_{p^k} with the lexicographically smallest irreducible monic
    /// modulus of degree k.
    pub fn galois_auto(p: u64, k: u32) -> Result<Ring> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 || k > 8 {
            return Err(Error::Precondition(format!(
                "field extension degree {k} out of range 1..=8"
            )));
        }
        if k == 1 {
            return Ring::galois(p, vec![0, 1]);
        }
        let count = p.pow(k);
        for idx in 0..count {
            let mut cand = Vec::with_capacity(k as usize + 1);
            let mut rem = idx;
            for _ in 0..k {
                cand.push(rem % p);
                rem /= p;
            }
            cand.push(1);
            if is_irreducible(&cand, p) {
                return Ring::galois(p, cand);
            }
        }
        unreachable!("irreducible polynomials of every degree exist over F_p")
    }

    pub fn poly_over_prime(p: u64) -> Result<Ring> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Ring::PolyOverPrime { p })
    }

    pub fn integers() -> Ring {
        Ring::Integers
    }

    /// Least positive m with m * 1 = 0, or 0 for Z.
    pub fn characteristic(&self) -> u64 {
        match self {
            Ring::ZmodN { n } => *n,
            Ring::GaloisField { p, .. } | Ring::PolyOverPrime { p } => *p,
            Ring::Integers => 0,
        }
    }

    pub fn char_factorization(&self) -> Result<CharFactorization> {
        match self.characteristic() {
            0 => Err(Error::CharZero),
            n => Ok(factorize(n)),
        }
    }

    /// Number of elements, when finite.
    pub fn cardinality(&self) -> Option<BigUint> {
        match self {
            Ring::ZmodN { n } => Some(BigUint::from(*n)),
            Ring::GaloisField { p, modulus } => {
                Some(BigUint::from(*p).pow(modulus.len() as u32 - 1))
            }
            Ring::PolyOverPrime { .. } | Ring::Integers => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.cardinality().is_some()
    }

    /// (p, k) when this ring is a field of size p^k. Z/p for prime p counts.
    pub fn field_params(&self) -> Option<(u64, u32)> {
        match self {
            Ring::ZmodN { n } if is_prime(*n) => Some((*n, 1)),
            Ring::GaloisField { p, modulus } => Some((*p, modulus.len() as u32 - 1)),
            _ => None,
        }
    }

    pub fn zero(&self) -> RingElem {
        match self {
            Ring::ZmodN { .. } => RingElem::Residue(0),
            Ring::GaloisField { .. } => RingElem::FieldElem(Vec::new()),
            Ring::PolyOverPrime { .. } => RingElem::PolyT(Vec::new()),
            Ring::Integers => RingElem::Int(BigInt::zero()),
        }
    }

    pub fn one(&self) -> RingElem {
        match self {
            Ring::ZmodN { .. } => RingElem::Residue(1),
            Ring::GaloisField { .. } => RingElem::FieldElem(vec![1]),
            Ring::PolyOverPrime { .. } => RingElem::PolyT(vec![1]),
            Ring::Integers => RingElem::Int(BigInt::one()),
        }
    }

    /// The image of the integer c under Z -> R (c times 1).
    pub fn int_image(&self, c: u64) -> RingElem {
        match self {
            Ring::ZmodN { n } => RingElem::Residue(c % n),
            Ring::GaloisField { p, .. } => RingElem::FieldElem(trim(vec![c % p])),
            Ring::PolyOverPrime { p } => RingElem::PolyT(trim(vec![c % p])),
            Ring::Integers => RingElem::Int(BigInt::from(c)),
        }
    }

    pub fn is_zero(&self, a: &RingElem) -> bool {
        match a {
            RingElem::Residue(r) => *r == 0,
            RingElem::FieldElem(v) | RingElem::PolyT(v) => v.is_empty(),
            RingElem::Int(i) => i.is_zero(),
        }
    }

    pub fn add(&self, a: &RingElem, b: &RingElem) -> RingElem {
        match (self, a, b) {
            (Ring::ZmodN { n }, RingElem::Residue(x), RingElem::Residue(y)) => {
                RingElem::Residue(((*x as u128 + *y as u128) % *n as u128) as u64)
            }
            (Ring::GaloisField { p, .. }, RingElem::FieldElem(x), RingElem::FieldElem(y)) => {
                RingElem::FieldElem(poly_add_p(x, y, *p))
            }
            (Ring::PolyOverPrime { p }, RingElem::PolyT(x), RingElem::PolyT(y)) => {
                RingElem::PolyT(poly_add_p(x, y, *p))
            }
            (Ring::Integers, RingElem::Int(x), RingElem::Int(y)) => RingElem::Int(x + y),
            _ => panic!("ring/element mismatch in add"),
        }
    }

    pub fn neg(&self, a: &RingElem) -> RingElem {
        match (self, a) {
            (Ring::ZmodN { n }, RingElem::Residue(x)) => RingElem::Residue((n - x) % n),
            (Ring::GaloisField { p, .. }, RingElem::FieldElem(x)) => {
                RingElem::FieldElem(poly_neg_p(x, *p))
            }
            (Ring::PolyOverPrime { p }, RingElem::PolyT(x)) => RingElem::PolyT(poly_neg_p(x, *p)),
            (Ring::Integers, RingElem::Int(x)) => RingElem::Int(-x),
            _ => panic!("ring/element mismatch in neg"),
        }
    }

    pub fn sub(&self, a: &RingElem, b: &RingElem) -> RingElem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &RingElem, b: &RingElem) -> RingElem {
        match (self, a, b) {
            (Ring::ZmodN { n }, RingElem::Residue(x), RingElem::Residue(y)) => {
                RingElem::Residue((*x as u128 * *y as u128 % *n as u128) as u64)
            }
            (Ring::GaloisField { p, modulus }, RingElem::FieldElem(x), RingElem::FieldElem(y)) => {
                RingElem::FieldElem(poly_rem_p(&poly_mul_p(x, y, *p), modulus, *p))
            }
            (Ring::PolyOverPrime { p }, RingElem::PolyT(x), RingElem::PolyT(y)) => {
                RingElem::PolyT(poly_mul_p(x, y, *p))
            }
            (Ring::Integers, RingElem::Int(x), RingElem::Int(y)) => RingElem::Int(x * y),
            _ => panic!("ring/element mismatch in mul"),
        }
    }

    /// c * a for an integer scalar c.
    pub fn scalar_mul(&self, c: u64, a: &RingElem) -> RingElem {
        self.mul(&self.int_image(c), a)
    }

    /// Invertibility test: gcd for Z/N, nonzero for fields, nonzero
    /// constants for F_p[t], units of Z are +-1.
    pub fn is_unit(&self, a: &RingElem) -> bool {
        match (self, a) {
            (Ring::ZmodN { n }, RingElem::Residue(x)) => num_integer::gcd(*x, *n) == 1,
            (Ring::GaloisField { .. }, RingElem::FieldElem(v)) => !v.is_empty(),
            (Ring::PolyOverPrime { .. }, RingElem::PolyT(v)) => v.len() == 1,
            (Ring::Integers, RingElem::Int(x)) => x.magnitude().is_one(),
            _ => panic!("ring/element mismatch in is_unit"),
        }
    }

    /// All elements of a finite ring in a fixed order: residues ascending,
    /// field elements by coefficient vector (c0, ..., c_{k-1}) in
    /// lexicographic order. The zero element always comes first.
    pub fn enumerate_elements(&self) -> Result<Vec<RingElem>> {
        match self {
            Ring::ZmodN { n } => Ok((0..*n).map(RingElem::Residue).collect()),
            Ring::GaloisField { p, modulus } => {
                let k = modulus.len() - 1;
                let q = p.pow(k as u32);
                let mut out = Vec::with_capacity(q as usize);
                for idx in 0..q {
                    // lexicographic on (c0, ..., c_{k-1}): c0 is the most
                    // significant digit of idx
                    let mut coeffs = vec![0u64; k];
                    let mut rem = idx;
                    for i in (0..k).rev() {
                        coeffs[i] = rem % p;
                        rem /= p;
                    }
                    out.push(RingElem::FieldElem(trim(coeffs)));
                }
                Ok(out)
            }
            Ring::PolyOverPrime { .. } | Ring::Integers => Err(Error::InfiniteRing),
        }
    }

    /// Inverse of the `enumerate_elements` order.
    pub fn elem_index(&self, a: &RingElem) -> Result<u64> {
        match (self, a) {
            (Ring::ZmodN { .. }, RingElem::Residue(x)) => Ok(*x),
            (Ring::GaloisField { p, modulus }, RingElem::FieldElem(v)) => {
                let k = modulus.len() - 1;
                let mut idx = 0u64;
                for i in 0..k {
                    idx = idx * p + v.get(i).copied().unwrap_or(0);
                }
                Ok(idx)
            }
            _ => Err(Error::InfiniteRing),
        }
    }

    pub fn elem_at_index(&self, idx: u64) -> Result<RingElem> {
        match self {
            Ring::ZmodN { n } => {
                if idx < *n {
                    Ok(RingElem::Residue(idx))
                } else {
                    Err(Error::Precondition(format!("index {idx} out of range")))
                }
            }
            Ring::GaloisField { p, modulus } => {
                let k = modulus.len() - 1;
                let q = p.pow(k as u32);
                if idx >= q {
                    return Err(Error::Precondition(format!("index {idx} out of range")));
                }
                let mut coeffs = vec![0u64; k];
                let mut rem = idx;
                for i in (0..k).rev() {
                    coeffs[i] = rem % p;
                    rem /= p;
                }
                Ok(RingElem::FieldElem(trim(coeffs)))
            }
            _ => Err(Error::InfiniteRing),
        }
    }

    /// Canonical spec string, re-parseable by `make_ring`.
    pub fn spec_string(&self) -> String {
        match self {
            Ring::ZmodN { n } => format!("Z/{n}"),
            Ring::GaloisField { p, modulus } => {
                let k = modulus.len() - 1;
                if k == 1 && modulus[0] == 0 {
                    format!("F{p}")
                } else {
                    let q = p.pow(k as u32);
                    format!("F{q}=F{p}[y]/({})", format_y_poly(modulus))
                }
            }
            Ring::PolyOverPrime { p } => format!("F{p}[t]"),
            Ring::Integers => "Z".to_string(),
        }
    }

    /// Parse one element in this ring's textual syntax.
    pub fn parse_elem(&self, s: &str) -> Result<RingElem> {
        let s = s.trim();
        let bad = || Error::Parse {
            what: "ring element",
            text: s.to_string(),
        };
        match self {
            Ring::ZmodN { n } => {
                let v: i128 = s.parse().map_err(|_| bad())?;
                Ok(RingElem::Residue(v.rem_euclid(*n as i128) as u64))
            }
            Ring::GaloisField { p, modulus } => {
                let k = modulus.len() - 1;
                let coeffs = if s.starts_with('[') {
                    parse_u64_list(s).ok_or_else(bad)?
                } else {
                    // integer literal: base-p digits, little-endian
                    let mut v: u64 = s.parse().map_err(|_| bad())?;
                    let mut digits = Vec::new();
                    while v > 0 {
                        digits.push(v % p);
                        v /= p;
                    }
                    digits
                };
                let reduced: Vec<u64> = coeffs.iter().map(|&c| c % p).collect();
                let reduced = if reduced.len() > k {
                    poly_rem_p(&reduced, modulus, *p)
                } else {
                    trim(reduced)
                };
                Ok(RingElem::FieldElem(reduced))
            }
            Ring::PolyOverPrime { p } => {
                let coeffs = if s.starts_with('[') {
                    parse_u64_list(s).ok_or_else(bad)?
                } else {
                    let v: u64 = s.parse().map_err(|_| bad())?;
                    vec![v]
                };
                Ok(RingElem::PolyT(trim(
                    coeffs.iter().map(|&c| c % p).collect(),
                )))
            }
            Ring::Integers => {
                let v: BigInt = s.parse().map_err(|_| bad())?;
                Ok(RingElem::Int(v))
            }
        }
    }

    pub fn format_elem(&self, a: &RingElem) -> String {
        match a {
            RingElem::Residue(x) => x.to_string(),
            RingElem::FieldElem(v) => {
                let k = match self {
                    Ring::GaloisField { modulus, .. } => modulus.len() - 1,
                    _ => 1,
                };
                if k == 1 {
                    v.first().copied().unwrap_or(0).to_string()
                } else {
                    format_u64_list(v)
                }
            }
            RingElem::PolyT(v) => format_u64_list(v),
            RingElem::Int(x) => x.to_string(),
        }
    }
}

fn format_u64_list(v: &[u64]) -> String {
    if v.is_empty() {
        return "[0]".to_string();
    }
    let inner: Vec<String> = v.iter().map(u64::to_string).collect();
    format!("[{}]", inner.join(","))
}

fn parse_u64_list(s: &str) -> Option<Vec<u64>> {
    let inner = s.strip_prefix('[')?.strip_suffix(']')?.trim();
    if inner.is_empty() {
        return Some(Vec::new());
    }
    inner
        .split(',')
        .map(|t| t.trim().parse::<u64>().ok())
        .collect()
}

fn format_y_poly(modulus: &[u64]) -> String {
    let mut terms = Vec::new();
    for (i, &c) in modulus.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let t = match i {
            0 => c.to_string(),
            1 if c == 1 => "y".to_string(),
            1 => format!("{c}y"),
            _ if c == 1 => format!("y^{i}"),
            _ => format!("{c}y^{i}"),
        };
        terms.push(t);
    }
    terms.join("+")
}

/// Parse a ring spec: `Z` | `Z/<N>` | `F<q>` | `F<q>=F<p>[y]/(<poly>)` |
/// `F<p>[t]`. Case-insensitive and whitespace-tolerant. A bare `F<q>` with
/// q = p^k composite picks the lexicographically smallest irreducible
/// modulus.
pub fn make_ring(spec: &str) -> Result<Ring> {
    let compact: String = spec.chars().filter(|c| !c.is_whitespace()).collect();
    let lower = compact.to_ascii_lowercase();
    let err = || Error::RingSpec(spec.to_string());

    if lower == "z" {
        return Ok(Ring::Integers);
    }
    if let Some(rest) = lower.strip_prefix("z/") {
        let n: u64 = rest.parse().map_err(|_| err())?;
        return Ring::zmod(n);
    }
    if let Some(rest) = lower.strip_prefix('f') {
        if let Some(p_txt) = rest.strip_suffix("[t]") {
            let p: u64 = p_txt.parse().map_err(|_| err())?;
            return Ring::poly_over_prime(p);
        }
        if let Some(eq_pos) = rest.find('=') {
            // F<q>=F<p>[y]/(<poly>)
            let q: u64 = rest[..eq_pos].parse().map_err(|_| err())?;
            let tail = &rest[eq_pos + 1..];
            let tail = tail.strip_prefix('f').ok_or_else(err)?;
            let bracket = tail.find("[y]/(").ok_or_else(err)?;
            let p: u64 = tail[..bracket].parse().map_err(|_| err())?;
            let poly_txt = tail[bracket + 5..].strip_suffix(')').ok_or_else(err)?;
            let modulus = parse_y_poly(poly_txt, p).ok_or_else(err)?;
            let ring = Ring::galois(p, modulus)?;
            if ring.cardinality() != Some(BigUint::from(q)) {
                return Err(Error::RingSpec(format!(
                    "{spec}: modulus degree does not match field size {q}"
                )));
            }
            return Ok(ring);
        }
        let q: u64 = rest.parse().map_err(|_| err())?;
        if is_prime(q) {
            return Ring::galois(q, vec![0, 1]);
        }
        let f = factorize(q);
        if f.factors().len() != 1 {
            return Err(Error::RingSpec(format!("{spec}: {q} is not a prime power")));
        }
        let (p, k) = f.factors()[0];
        return Ring::galois_auto(p, k);
    }
    Err(err())
}

/// Parse `y^2+2y+1`-style text into little-endian coefficients mod p.
fn parse_y_poly(s: &str, p: u64) -> Option<Vec<u64>> {
    // split into signed terms
    let mut coeffs: Vec<u64> = Vec::new();
    let mut add_term = |coeff: i128, deg: usize| {
        if coeffs.len() <= deg {
            coeffs.resize(deg + 1, 0);
        }
        let c = coeff.rem_euclid(p as i128) as u64;
        coeffs[deg] = (coeffs[deg] + c) % p;
    };
    let mut rest = s;
    let mut sign = 1i128;
    while !rest.is_empty() {
        let end = rest[1..]
            .find(['+', '-'])
            .map(|i| i + 1)
            .unwrap_or(rest.len());
        let term = &rest[..end];
        let term = match term.strip_prefix('+') {
            Some(t) => t,
            None => term,
        };
        let (neg, term) = match term.strip_prefix('-') {
            Some(t) => (true, t),
            None => (false, term),
        };
        let s = if neg { -sign } else { sign };
        if let Some(y_pos) = term.find('y') {
            let coeff: i128 = if y_pos == 0 {
                1
            } else {
                term[..y_pos].parse().ok()?
            };
            let deg_txt = &term[y_pos + 1..];
            let deg: usize = if deg_txt.is_empty() {
                1
            } else {
                deg_txt.strip_prefix('^')?.parse().ok()?
            };
            add_term(s * coeff, deg);
        } else {
            let coeff: i128 = term.parse().ok()?;
            add_term(s * coeff, 0);
        }
        sign = 1;
        rest = &rest[end..];
        if let Some(r) = rest.strip_prefix('+') {
            rest = r;
        } else if let Some(r) = rest.strip_prefix('-') {
            rest = r;
            sign = -1;
        }
    }
    if coeffs.is_empty() {
        return None;
    }
    Some(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn make_ring_parses_spec_grammar() {
        assert_eq!(make_ring("Z/4").unwrap(), Ring::ZmodN { n: 4 });
        assert_eq!(make_ring(" z / 12 ").unwrap(), Ring::ZmodN { n: 12 });
        assert_eq!(make_ring("Z").unwrap(), Ring::Integers);
        assert_eq!(make_ring("F5[t]").unwrap(), Ring::PolyOverPrime { p: 5 });

        let f9 = make_ring("F9 = F3[y]/(y^2+1)").unwrap();
        assert_eq!(
            f9,
            Ring::GaloisField {
                p: 3,
                modulus: vec![1, 0, 1]
            }
        );
        assert_eq!(f9.characteristic(), 3);
        assert_eq!(f9.cardinality(), Some(BigUint::from(9u32)));
    }

    #[test]
    fn reducible_modulus_rejected() {
        // y^2 + y = y(y+1)
        assert!(matches!(
            make_ring("F4=F2[y]/(y^2+y)"),
            Err(Error::ReducibleModulus(2))
        ));
        // y^2 + 1 = (y+1)^2 over F2
        assert!(matches!(
            make_ring("F4=F2[y]/(y^2+1)"),
            Err(Error::ReducibleModulus(2))
        ));
    }

    #[test]
    fn bad_specs_rejected() {
        assert!(make_ring("Z/1").is_err());
        assert!(make_ring("F6").is_err());
        assert!(make_ring("F4[t]").is_err());
        assert!(make_ring("Q").is_err());
    }

    #[test]
    fn galois_auto_picks_first_irreducible() {
        let f4 = make_ring("F4").unwrap();
        // y^2+y+1 is the only irreducible quadratic over F2
        assert_eq!(
            f4,
            Ring::GaloisField {
                p: 2,
                modulus: vec![1, 1, 1]
            }
        );
    }

    #[test]
    fn characteristic_factorization() {
        let cf = make_ring("Z/12").unwrap().char_factorization().unwrap();
        assert_eq!(cf.factors(), &[(2, 2), (3, 1)]);
        let cf = make_ring("F9=F3[y]/(y^2+1)")
            .unwrap()
            .char_factorization()
            .unwrap();
        assert_eq!(cf.factors(), &[(3, 1)]);
        assert!(matches!(
            Ring::integers().char_factorization(),
            Err(Error::CharZero)
        ));
    }

    #[test]
    fn unit_tests_match_definitions() {
        let z4 = Ring::zmod(4).unwrap();
        assert!(z4.is_unit(&RingElem::Residue(3)));
        assert!(!z4.is_unit(&RingElem::Residue(2)));

        let f2t = Ring::poly_over_prime(2).unwrap();
        assert!(!f2t.is_unit(&RingElem::PolyT(vec![0, 1]))); // t
        assert!(f2t.is_unit(&RingElem::PolyT(vec![1])));

        let z = Ring::integers();
        assert!(z.is_unit(&RingElem::Int(BigInt::from(-1))));
        assert!(!z.is_unit(&RingElem::Int(BigInt::from(2))));
    }

    #[test]
    fn enumeration_order_is_fixed() {
        let z3 = Ring::zmod(3).unwrap();
        assert_eq!(
            z3.enumerate_elements().unwrap(),
            vec![
                RingElem::Residue(0),
                RingElem::Residue(1),
                RingElem::Residue(2)
            ]
        );
        let f4 = make_ring("F4").unwrap();
        let elems = f4.enumerate_elements().unwrap();
        assert_eq!(elems.len(), 4);
        assert_eq!(elems[0], f4.zero());
        for (i, e) in elems.iter().enumerate() {
            assert_eq!(f4.elem_index(e).unwrap(), i as u64);
        }
        assert!(matches!(
            Ring::poly_over_prime(2).unwrap().enumerate_elements(),
            Err(Error::InfiniteRing)
        ));
    }

    #[test]
    fn field_arithmetic_is_modular() {
        let f9 = make_ring("F9=F3[y]/(y^2+1)").unwrap();
        let y = RingElem::FieldElem(vec![0, 1]);
        // y^2 = -1 = 2
        assert_eq!(f9.mul(&y, &y), RingElem::FieldElem(vec![2]));
        let sum = f9.add(&f9.one(), &f9.int_image(2));
        assert!(f9.is_zero(&sum));
    }

    #[test]
    fn elem_text_roundtrip() {
        let f4 = make_ring("F4").unwrap();
        let y = f4.parse_elem("2").unwrap();
        assert_eq!(y, RingElem::FieldElem(vec![0, 1]));
        assert_eq!(f4.format_elem(&y), "[0,1]");
        assert_eq!(f4.parse_elem("[0,1]").unwrap(), y);

        let z = Ring::integers();
        let m = z.parse_elem("-17").unwrap();
        assert_eq!(z.format_elem(&m), "-17");
    }

    #[test]
    fn spec_string_roundtrips() {
        for spec in ["Z/6", "F7", "F9=F3[y]/(y^2+1)", "F3[t]", "Z", "F4"] {
            let ring = make_ring(spec).unwrap();
            assert_eq!(make_ring(&ring.spec_string()).unwrap(), ring);
        }
    }
}
