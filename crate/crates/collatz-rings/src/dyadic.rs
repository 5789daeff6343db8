//! The classical Collatz map on the rationals lying inside the 2-adic
//! integers: reduced fractions with odd denominator.
//!
//! The full map sends even f to f/2 and odd f to 3f+1; the condensed map
//! folds the forced halving into the odd branch, (3f+1)/2. Parity of a
//! dyadic rational is the parity of its numerator. All arithmetic is exact;
//! truncated 2-adic digit expansions exist only as a display format.
//!
//! Prescribing the n parity bits of a condensed orbit determines a unique
//! periodic point
//!
//!   f = [ sum_j v_j 2^j 3^{s_j} ] / ( 2^n - 3^s ),
//!
//! whose denominator is automatically odd. Full-map cycles correspond to
//! cyclically zero-dense bit vectors, counted by the Lucas-sequence
//! necklace formula (alphabet size q = 2); the condensed map has the plain
//! binary necklace count (1/n) sum mu(d) 2^{n/d}.
//!
//! Every eventually periodic 2-adic integer under the condensed map is
//! known to be rational; Lagarias's periodicity conjecture asks whether
//! every rational with odd denominator is eventually periodic. Nothing
//! here resolves that: an orbit that exhausts its budget is reported as
//! inconclusive, never as divergent.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::detect;
use crate::error::{Error, Result};
use crate::parity;

/// A reduced fraction with odd (positive) denominator -- exactly the
/// rational numbers that are 2-adic integers.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DyadicRational {
    value: BigRational,
}

/// Which map drives an orbit or parity trace.
pub use crate::series::ParityMap;

impl DyadicRational {
    pub fn new(num: BigInt, den: BigInt) -> Result<DyadicRational> {
        if den.is_zero() {
            return Err(Error::Precondition("zero denominator".into()));
        }
        let value = BigRational::new(num, den);
        if value.denom().is_even() {
            return Err(Error::Precondition(format!(
                "{value} has even reduced denominator; not a 2-adic integer"
            )));
        }
        Ok(DyadicRational { value })
    }

    pub fn from_integer(n: i64) -> DyadicRational {
        DyadicRational {
            value: BigRational::from_integer(BigInt::from(n)),
        }
    }

    pub fn zero() -> DyadicRational {
        DyadicRational::from_integer(0)
    }

    pub fn numer(&self) -> &BigInt {
        self.value.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.value.denom()
    }

    /// Parity of the numerator; the denominator is odd, so this is the
    /// 2-adic parity.
    pub fn is_odd(&self) -> bool {
        self.value.numer().is_odd()
    }

    pub fn is_even(&self) -> bool {
        !self.is_odd()
    }

    pub fn parity_bit(&self) -> u64 {
        self.is_odd() as u64
    }

    /// Parse `num/den` or a plain integer.
    pub fn parse(s: &str) -> Result<DyadicRational> {
        let s = s.trim();
        let bad = || Error::Parse {
            what: "dyadic rational",
            text: s.to_string(),
        };
        match s.split_once('/') {
            Some((n, d)) => {
                let num: BigInt = n.trim().parse().map_err(|_| bad())?;
                let den: BigInt = d.trim().parse().map_err(|_| bad())?;
                DyadicRational::new(num, den)
            }
            None => {
                let num: BigInt = s.parse().map_err(|_| bad())?;
                Ok(DyadicRational {
                    value: BigRational::from_integer(num),
                })
            }
        }
    }

    /// First m digits of the 2-adic expansion, little-endian: the bits of
    /// num * den^{-1} mod 2^m.
    pub fn digits(&self, m: usize) -> Vec<u64> {
        let modulus = BigInt::one() << m;
        let egcd = self.denom().extended_gcd(&modulus);
        debug_assert!(egcd.gcd.is_one());
        let inv = egcd.x.mod_floor(&modulus);
        let residue = (self.numer().mod_floor(&modulus) * inv).mod_floor(&modulus);
        let mag = residue.magnitude();
        (0..m).map(|i| mag.bit(i as u64) as u64).collect()
    }
}

impl std::fmt::Display for DyadicRational {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.value.denom().is_one() {
            write!(f, "{}", self.value.numer())
        } else {
            write!(f, "{}/{}", self.value.numer(), self.value.denom())
        }
    }
}

fn from_ratio(value: BigRational) -> DyadicRational {
    debug_assert!(value.denom().is_odd());
    DyadicRational { value }
}

/// Full map: f/2 when even, 3f+1 when odd.
pub fn dyadic_t(f: &DyadicRational) -> DyadicRational {
    let v = &f.value;
    let out = if f.is_even() {
        v / BigRational::from_integer(BigInt::from(2))
    } else {
        v * BigRational::from_integer(BigInt::from(3)) + BigRational::one()
    };
    from_ratio(out)
}

/// Condensed map: f/2 when even, (3f+1)/2 when odd.
pub fn dyadic_t_condensed(f: &DyadicRational) -> DyadicRational {
    let two = BigRational::from_integer(BigInt::from(2));
    let v = &f.value;
    let out = if f.is_even() {
        v / &two
    } else {
        (v * BigRational::from_integer(BigInt::from(3)) + BigRational::one()) / &two
    };
    from_ratio(out)
}

/// Parity bits of the first n iterates under the chosen map.
pub fn parity_vector_z2(f: &DyadicRational, n: usize, which: ParityMap) -> Vec<u64> {
    let mut out = Vec::with_capacity(n);
    let mut g = f.clone();
    for i in 0..n {
        out.push(g.parity_bit());
        if i + 1 < n {
            g = match which {
                ParityMap::Full => dyadic_t(&g),
                ParityMap::Condensed => dyadic_t_condensed(&g),
            };
        }
    }
    out
}

/// The unique point of condensed-map period dividing n with parity bits v:
/// f = [sum_j v_j 2^j 3^{s_j}] / (2^n - 3^s), s_j the count of ones after
/// position j. The denominator 2^n - 3^s is odd, so f lands in the 2-adic
/// integers.
pub fn periodic_from_parity_z2(bits: &[u64]) -> Result<DyadicRational> {
    if bits.is_empty() {
        return Err(Error::Precondition("empty parity vector".into()));
    }
    if bits.iter().any(|&b| b > 1) {
        return Err(Error::Precondition("parity entries must be bits".into()));
    }
    let n = bits.len();
    let mut numerator = BigInt::zero();
    let mut pow3 = BigInt::one(); // 3^{s_j}, built from the tail
    for j in (0..n).rev() {
        if bits[j] == 1 {
            numerator += (BigInt::one() << j) * &pow3;
            pow3 *= 3;
        }
    }
    let denominator = (BigInt::one() << n) - pow3;
    DyadicRational::new(numerator, denominator)
}

/// The unique point of full-map period dividing n whose full parity vector
/// is the cyclically zero-dense `bits`: rotate to end in 0, condense,
/// construct, and walk back around the cycle.
pub fn periodic_from_cyclic_parity_z2(bits: &[u64]) -> Result<DyadicRational> {
    if !parity::is_cyclically_zero_dense(bits)? {
        return Err(Error::Precondition(
            "parity vector is not cyclically zero dense".into(),
        ));
    }
    let n = bits.len();
    let r = if bits[n - 1] == 0 {
        0
    } else {
        1 + bits.iter().position(|&b| b == 0).expect("has a zero")
    };
    let rotated: Vec<u64> = (0..n).map(|i| bits[(i + r) % n]).collect();
    let condensed = parity::condense(&rotated)?;
    let mut f = periodic_from_parity_z2(&condensed)?;
    if r > 0 {
        for _ in 0..n - r {
            f = dyadic_t(&f);
        }
    }
    Ok(f)
}

/// All full-map cycles of exact length n, one per primitive rotation class
/// of cyclically zero-dense bit vectors. Each cycle starts at its
/// numerically smallest member; cycles are ordered by that member.
pub fn enumerate_z2_cycles(n: usize) -> Result<Vec<Vec<DyadicRational>>> {
    if n == 0 {
        return Err(Error::Precondition("cycle length must be >= 1".into()));
    }
    if n == 1 {
        return Ok(vec![vec![DyadicRational::zero()]]);
    }
    let vectors = parity::enumerate_cyclically_zero_dense(2, n)?;
    let classes = parity::rotation_orbits(&vectors)?;
    let mut cycles = Vec::new();
    for class in classes.iter().filter(|c| c.primitive_period == n) {
        let f = periodic_from_cyclic_parity_z2(&class.representative)?;
        let mut members = Vec::with_capacity(n);
        let mut g = f;
        for _ in 0..n {
            members.push(g.clone());
            g = dyadic_t(&g);
        }
        // canonical start: the numerically smallest member
        let min_pos = members
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.cmp(b.1))
            .map(|(i, _)| i)
            .unwrap();
        members.rotate_left(min_pos);
        cycles.push(members);
    }
    cycles.sort_by(|a, b| a[0].cmp(&b[0]));
    Ok(cycles)
}

/// Number of full-map cycles of exact length n, by the q = 2 necklace
/// formula over the Lucas sequence. One source of truth with the series
/// counts.
pub fn z2_cycle_count(n: u64) -> Result<BigUint> {
    parity::z_count(2, n)
}

/// Number of condensed-map cycles of exact length n: the binary necklace
/// count (1/n) sum_{d|n} mu(d) 2^{n/d}.
pub fn condensed_cycle_count(n: u64) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::Precondition("cycle length must be >= 1".into()));
    }
    let mut acc = BigInt::zero();
    for d in parity::divisors(n) {
        acc += BigInt::from(parity::mobius(d)) * (BigInt::one() << (n / d));
    }
    if acc.is_negative() {
        return Err(Error::Internal(format!("necklace sum for n={n} negative")));
    }
    let (q, r) = acc.magnitude().div_rem(&BigUint::from(n));
    if !r.is_zero() {
        return Err(Error::Internal(format!(
            "necklace sum for n={n} not divisible by n"
        )));
    }
    Ok(q)
}

/// Orbit report for the dyadic maps.
#[derive(Debug, Clone)]
pub struct DyadicOrbitReport {
    pub preperiod: u64,
    /// Empty when the budget ran out; that outcome makes no divergence
    /// claim, it only reports that no cycle was seen within the budget.
    pub cycle: Vec<DyadicRational>,
    pub steps_taken: u64,
}

impl DyadicOrbitReport {
    pub fn cycle_found(&self) -> bool {
        !self.cycle.is_empty()
    }
}

/// Iterate the chosen map with Brent detection under a step budget.
pub fn dyadic_orbit(f: &DyadicRational, budget: u64, which: ParityMap) -> DyadicOrbitReport {
    let step = |g: &DyadicRational| match which {
        ParityMap::Full => dyadic_t(g),
        ParityMap::Condensed => dyadic_t_condensed(g),
    };
    match detect::brent(f, step, budget) {
        detect::Outcome::Found(d) => DyadicOrbitReport {
            preperiod: d.preperiod,
            cycle: d.cycle,
            steps_taken: d.steps,
        },
        detect::Outcome::Exhausted { steps } => DyadicOrbitReport {
            preperiod: 0,
            cycle: Vec::new(),
            steps_taken: steps,
        },
    }
}
