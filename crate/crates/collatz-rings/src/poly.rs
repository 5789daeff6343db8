//! Polynomials over a coefficient ring R and the Collatz map
//!
//!   T(f) = (x+1)f - f(0)   if f(0) != 0,
//!   T(f) = f/x             otherwise,
//!
//! together with the auxiliary map P(f) = ((x+1)f - f(0))/x, orbit iteration
//! with Brent cycle detection, the binomial-sum periodicity criterion, and
//! the period divisor bound 2*K(deg f).
//!
//! A polynomial with nonzero constant term is called odd, otherwise even;
//! the map branches on this parity. On every nonzero cycle parities
//! alternate, so cycle lengths are even.

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::detect;
use crate::error::{Error, Result};
use crate::ring::{Ring, RingElem};
use crate::valuation::threshold_constant;

/// Dense little-endian polynomial over `ring`; no trailing zero
/// coefficients, so the zero polynomial has an empty coefficient vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    ring: Ring,
    coeffs: Vec<RingElem>,
}

/// Cap on Pascal-row streaming in the periodicity criterion; exceeding it is
/// an explicit error, never silent truncation.
pub const DEFAULT_CRITERION_CAP: u64 = 1_000_000;

impl Poly {
    pub fn new(ring: Ring, mut coeffs: Vec<RingElem>) -> Poly {
        while coeffs.last().is_some_and(|c| ring.is_zero(c)) {
            coeffs.pop();
        }
        Poly { ring, coeffs }
    }

    pub fn zero(ring: Ring) -> Poly {
        Poly {
            ring,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(ring: Ring, c: RingElem) -> Poly {
        Poly::new(ring, vec![c])
    }

    /// Parse `[c0,c1,...]` using the ring's element syntax; nested brackets
    /// are honored for F_p[t] and extension-field coefficients.
    pub fn parse(ring: &Ring, text: &str) -> Result<Poly> {
        let bad = || Error::Parse {
            what: "polynomial",
            text: text.to_string(),
        };
        let inner = text
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(bad)?;
        let mut coeffs = Vec::new();
        let mut depth = 0usize;
        let mut start = 0usize;
        let push = |coeffs: &mut Vec<RingElem>, token: &str| -> Result<()> {
            let token = token.trim();
            if !token.is_empty() {
                coeffs.push(ring.parse_elem(token)?);
            }
            Ok(())
        };
        for (i, ch) in inner.char_indices() {
            match ch {
                '[' => depth += 1,
                ']' => depth = depth.checked_sub(1).ok_or_else(bad)?,
                ',' if depth == 0 => {
                    push(&mut coeffs, &inner[start..i])?;
                    start = i + 1;
                }
                _ => {}
            }
        }
        if depth != 0 {
            return Err(bad());
        }
        push(&mut coeffs, &inner[start..])?;
        if coeffs.is_empty() && !inner.trim().is_empty() {
            return Err(bad());
        }
        Ok(Poly::new(ring.clone(), coeffs))
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn coeffs(&self) -> &[RingElem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial (its degree is taken as -infinity).
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn constant_term(&self) -> RingElem {
        self.coeffs.first().cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn leading_coeff(&self) -> Option<&RingElem> {
        self.coeffs.last()
    }

    /// Odd means nonzero constant term; the zero polynomial is even.
    pub fn is_odd(&self) -> bool {
        self.coeffs
            .first()
            .is_some_and(|c| !self.ring.is_zero(c))
    }

    pub fn is_even(&self) -> bool {
        !self.is_odd()
    }

    pub fn add(&self, other: &Poly) -> Poly {
        debug_assert_eq!(self.ring, other.ring);
        let len = self.coeffs.len().max(other.coeffs.len());
        let zero = self.ring.zero();
        let coeffs = (0..len)
            .map(|i| {
                let a = self.coeffs.get(i).unwrap_or(&zero);
                let b = other.coeffs.get(i).unwrap_or(&zero);
                self.ring.add(a, b)
            })
            .collect();
        Poly::new(self.ring.clone(), coeffs)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        debug_assert_eq!(self.ring, other.ring);
        let len = self.coeffs.len().max(other.coeffs.len());
        let zero = self.ring.zero();
        let coeffs = (0..len)
            .map(|i| {
                let a = self.coeffs.get(i).unwrap_or(&zero);
                let b = other.coeffs.get(i).unwrap_or(&zero);
                self.ring.sub(a, b)
            })
            .collect();
        Poly::new(self.ring.clone(), coeffs)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        debug_assert_eq!(self.ring, other.ring);
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.ring.clone());
        }
        let mut coeffs = vec![self.ring.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if self.ring.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = self.ring.add(&coeffs[i + j], &self.ring.mul(a, b));
            }
        }
        Poly::new(self.ring.clone(), coeffs)
    }

    pub fn scale(&self, c: &RingElem) -> Poly {
        let coeffs = self.coeffs.iter().map(|a| self.ring.mul(c, a)).collect();
        Poly::new(self.ring.clone(), coeffs)
    }

    /// x^k * self.
    pub fn shift_up(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.ring.zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly::new(self.ring.clone(), coeffs)
    }
}

impl std::fmt::Display for Poly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|c| self.ring.format_elem(c))
            .collect();
        write!(f, "[{}]", parts.join(","))
    }
}

// Total order used for canonical cycle representatives: degree-major, then
// coefficients compared from the constant term up. Both operands must live
// in the same ring.
impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Poly {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

/// Maximum t-degree appearing among F_p[t] coefficients; None when the
/// measure does not apply.
fn max_t_degree(f: &Poly) -> Option<usize> {
    match f.ring() {
        Ring::PolyOverPrime { .. } => f
            .coeffs
            .iter()
            .map(|c| match c {
                RingElem::PolyT(v) => v.len(),
                _ => 0,
            })
            .max(),
        _ => None,
    }
}

/// (x+1) * f.
fn mul_x_plus_1(f: &Poly) -> Poly {
    if f.is_zero() {
        return f.clone();
    }
    let ring = f.ring.clone();
    let n = f.coeffs.len();
    let mut out = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let below = if i > 0 { Some(&f.coeffs[i - 1]) } else { None };
        let here = f.coeffs.get(i);
        let c = match (here, below) {
            (Some(a), Some(b)) => ring.add(a, b),
            (Some(a), None) => a.clone(),
            (None, Some(b)) => b.clone(),
            (None, None) => unreachable!(),
        };
        out.push(c);
    }
    Poly::new(ring, out)
}

/// f / x, valid when the constant term is zero.
fn shift_down(f: &Poly) -> Poly {
    debug_assert!(f.is_even());
    if f.is_zero() {
        return f.clone();
    }
    Poly::new(f.ring.clone(), f.coeffs[1..].to_vec())
}

/// One step of the Collatz map T.
pub fn collatz_step(f: &Poly) -> Poly {
    let out = if f.is_odd() {
        let mut g = mul_x_plus_1(f);
        g.coeffs[0] = f.ring.zero();
        Poly::new(f.ring.clone(), g.coeffs)
    } else {
        shift_down(f)
    };
    // multiplication by x+1 adds coefficients pairwise, so the t-degree of
    // F_p[t] coefficients never grows along an orbit
    if let (Some(before), Some(after)) = (max_t_degree(f), max_t_degree(&out)) {
        assert!(after <= before.max(1), "t-degree grew under T");
    }
    out
}

/// One step of the auxiliary map P(f) = ((x+1)f - f(0))/x. The numerator
/// always has zero constant term, so the division is exact. For odd f this
/// equals T^2(f) whenever T(f) is even.
pub fn pi_step(f: &Poly) -> Poly {
    let mut g = mul_x_plus_1(f);
    if g.is_zero() {
        return g;
    }
    g.coeffs[0] = f.ring.zero();
    shift_down(&Poly::new(f.ring.clone(), g.coeffs))
}

/// The linear shift L(f) = (f - f(0))/x, restricted to any R[x]_{<=n}.
/// P = Id + L; iterates of P expand through binomial coefficients, which
/// the tests use as an independent oracle.
pub fn shift_map(f: &Poly) -> Poly {
    if f.is_zero() {
        return f.clone();
    }
    Poly::new(f.ring.clone(), f.coeffs[1..].to_vec())
}

/// Result of iterating T with cycle detection.
#[derive(Debug, Clone)]
pub struct OrbitReport {
    /// Minimal m with T^m(start) on the cycle; meaningful when a cycle was
    /// found.
    pub preperiod: u64,
    /// The cycle starting at T^preperiod(start); empty when the budget ran
    /// out before detection.
    pub cycle: Vec<Poly>,
    /// T applications spent in the detection phase.
    pub steps_taken: u64,
    /// The orbit prefix through one full cycle, when requested.
    pub trace: Option<Vec<Poly>>,
}

impl OrbitReport {
    pub fn cycle_found(&self) -> bool {
        !self.cycle.is_empty()
    }
}

/// Iterate T from `f` using Brent's algorithm. `max_steps` bounds the T
/// applications of the detection phase; preperiod recovery re-walks the
/// already-explored prefix and is not charged against the budget. When the
/// budget runs out the report carries an empty cycle -- for characteristic
/// zero that is an inconclusive outcome, not a divergence claim.
pub fn orbit(f: &Poly, max_steps: u64, keep_trace: bool) -> OrbitReport {
    let make_trace = |len: u64| {
        let mut t = vec![f.clone()];
        for _ in 1..len {
            t.push(collatz_step(t.last().unwrap()));
        }
        t
    };
    match detect::brent(f, collatz_step, max_steps) {
        detect::Outcome::Found(d) => OrbitReport {
            trace: keep_trace.then(|| make_trace(d.preperiod + d.cycle.len() as u64)),
            preperiod: d.preperiod,
            cycle: d.cycle,
            steps_taken: d.steps,
        },
        detect::Outcome::Exhausted { steps } => OrbitReport {
            preperiod: 0,
            cycle: Vec::new(),
            steps_taken: steps,
            trace: keep_trace.then(|| make_trace(steps + 1)),
        },
    }
}

fn big_to_u64(v: BigUint) -> Result<u64> {
    v.to_u64()
        .ok_or(Error::BudgetExceeded(u64::MAX))
}

/// 2 * K(deg f + 1) * (deg f + 2): a safe overshoot of the finite-field
/// pre-period bound plus the maximal cycle length, used as the default
/// orbit budget in positive characteristic.
pub fn default_orbit_budget(f: &Poly) -> Result<u64> {
    let cf = f.ring().char_factorization()?;
    let d = f.degree().unwrap_or(0) as u64;
    let k = threshold_constant(&cf, d + 1)?;
    big_to_u64(BigUint::from(2u32) * k * BigUint::from(d + 2))
}

/// 2 * K(max(deg f, 1)): every cycle through f has length dividing this.
fn period_iteration_bound(f: &Poly) -> Result<u64> {
    let cf = f.ring().char_factorization()?;
    let d = (f.degree().unwrap_or(0) as u64).max(1);
    big_to_u64(BigUint::from(2u32) * threshold_constant(&cf, d)?)
}

/// Decide T-periodicity over a positive-characteristic ring. Odd f of
/// degree n >= 1 is decided by the binomial-sum criterion: f is periodic
/// iff sum_j C(l, j) b_j != 0 for every 0 <= l <= K(n). Even and constant
/// polynomials are decided by bounded iteration, since any cycle through
/// them is driven by an odd member of no larger degree.
pub fn is_periodic(f: &Poly) -> Result<bool> {
    is_periodic_with_cap(f, DEFAULT_CRITERION_CAP)
}

/// `is_periodic` with an explicit cap on the criterion range K(n).
pub fn is_periodic_with_cap(f: &Poly, cap: u64) -> Result<bool> {
    let cf = f.ring().char_factorization()?;
    if f.is_zero() {
        return Ok(true);
    }
    let n = f.degree().unwrap();
    if n == 0 {
        // nonzero constants sit on the two-cycle (a, ax)
        return Ok(true);
    }
    if f.is_odd() {
        let k_bound = threshold_constant(&cf, n as u64)?;
        let k_bound = k_bound
            .to_u64()
            .filter(|&k| k <= cap)
            .ok_or(Error::BudgetExceeded(cap))?;
        let ring = f.ring();
        let modulus = ring.characteristic();
        // Pascal row mod the characteristic, truncated to degree n
        let mut row = vec![0u64; n + 1];
        row[0] = 1 % modulus;
        for _l in 0..=k_bound {
            let mut sum = ring.zero();
            for (j, &c) in row.iter().enumerate().take(n + 1) {
                if c != 0 {
                    sum = ring.add(&sum, &ring.scalar_mul(c, &f.coeffs()[j]));
                }
            }
            if ring.is_zero(&sum) {
                return Ok(false);
            }
            for j in (1..=n).rev() {
                row[j] = (row[j] + row[j - 1]) % modulus;
            }
        }
        Ok(true)
    } else {
        let bound = period_iteration_bound(f)?;
        let mut g = collatz_step(f);
        for _ in 1..=bound {
            if g == *f {
                return Ok(true);
            }
            g = collatz_step(&g);
        }
        Ok(false)
    }
}

/// The universal period divisor 2 * K(deg f) for odd f of degree >= 1 over
/// a positive-characteristic ring; the exact period of periodic f divides
/// it, with equality when the leading coefficient is a unit.
pub fn period_divisor_bound(f: &Poly) -> Result<BigUint> {
    let cf = f.ring().char_factorization()?;
    if f.is_even() {
        return Err(Error::Precondition(
            "period divisor bound needs an odd polynomial".into(),
        ));
    }
    let n = f.degree().unwrap();
    if n == 0 {
        return Err(Error::Precondition(
            "period divisor bound needs degree >= 1".into(),
        ));
    }
    Ok(BigUint::from(2u32) * threshold_constant(&cf, n as u64)?)
}

/// Minimal n >= 1 with T^n(f) = f, by iteration bounded by 2*K(max(deg,1)).
pub fn exact_period(f: &Poly) -> Result<u64> {
    if f.ring().characteristic() == 0 {
        return match char_zero_classify(f)? {
            CharZeroClass::OnZeroCycle => Ok(1),
            CharZeroClass::OnConstantCycle => Ok(2),
            CharZeroClass::NotPeriodic => Err(Error::NotPeriodic),
        };
    }
    if f.is_zero() {
        return Ok(1);
    }
    let bound = period_iteration_bound(f)?;
    let mut g = collatz_step(f);
    for n in 1..=bound {
        if g == *f {
            return Ok(n);
        }
        g = collatz_step(&g);
    }
    Err(Error::NotPeriodic)
}

/// Where a polynomial over Z sits relative to the only characteristic-zero
/// cycles (0) and (a, ax).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CharZeroClass {
    OnZeroCycle,
    OnConstantCycle,
    /// Not on any cycle. Whether the orbit eventually reaches one is not
    /// decided here; no procedure for that is known.
    NotPeriodic,
}

/// Classify f over Z: the only cycles are (0) and (a, ax) for a != 0.
pub fn char_zero_classify(f: &Poly) -> Result<CharZeroClass> {
    if f.ring().characteristic() != 0 {
        return Err(Error::PositiveChar);
    }
    if f.is_zero() {
        return Ok(CharZeroClass::OnZeroCycle);
    }
    let ring = f.ring();
    let on_constant = match f.degree().unwrap() {
        0 => true,
        1 => ring.is_zero(&f.constant_term()),
        _ => false,
    };
    Ok(if on_constant {
        CharZeroClass::OnConstantCycle
    } else {
        CharZeroClass::NotPeriodic
    })
}

/// Over a finite field of size p^k: apply T exactly p*d*(d+1) - d times
/// (d = deg f) and report whether the result is periodic. The bound is
/// sharp enough that this always holds; the checker recomputes rather than
/// trusts.
pub fn preperiod_bound_check(f: &Poly) -> Result<bool> {
    let (p, _) = f
        .ring()
        .field_params()
        .ok_or_else(|| Error::Precondition("pre-period bound check needs a field".into()))?;
    if f.is_zero() {
        return Err(Error::Precondition(
            "pre-period bound check needs f != 0".into(),
        ));
    }
    let d = f.degree().unwrap() as u64;
    let steps = p * d * (d + 1) - d;
    let mut g = f.clone();
    for _ in 0..steps {
        g = collatz_step(&g);
    }
    is_periodic(&g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::make_ring;

    fn poly(ring: &Ring, text: &str) -> Poly {
        Poly::parse(ring, text).unwrap()
    }

    #[test]
    fn collatz_step_cases() {
        let z5 = make_ring("Z/5").unwrap();
        let f = poly(&z5, "[3]");
        assert_eq!(collatz_step(&f), poly(&z5, "[0,3]")); // a -> ax
        assert_eq!(collatz_step(&Poly::zero(z5.clone())), Poly::zero(z5));

        let f3 = make_ring("F3").unwrap();
        let f = poly(&f3, "[1,0,1]"); // x^2 + 1
        assert_eq!(collatz_step(&f), poly(&f3, "[0,1,1,1]")); // x^3+x^2+x
    }

    #[test]
    fn pi_step_cases() {
        let f2 = make_ring("F2").unwrap();
        assert_eq!(pi_step(&poly(&f2, "[1,1]")), poly(&f2, "[0,1]")); // x+1 -> x
        let z6 = make_ring("Z/6").unwrap();
        assert_eq!(pi_step(&poly(&z6, "[1,2]")), poly(&z6, "[3,2]")); // 2x+1 -> 2x+3
        assert_eq!(pi_step(&Poly::zero(z6.clone())), Poly::zero(z6));
    }

    #[test]
    fn orbit_of_x_plus_1_over_f2() {
        let f2 = make_ring("F2").unwrap();
        let report = orbit(&poly(&f2, "[1,1]"), 100, true);
        assert_eq!(report.preperiod, 2);
        assert_eq!(report.cycle, vec![poly(&f2, "[0,1]"), poly(&f2, "[1]")]);
        let trace = report.trace.unwrap();
        assert_eq!(trace[0], poly(&f2, "[1,1]"));
        assert_eq!(trace[1], poly(&f2, "[0,0,1]")); // x^2
    }

    #[test]
    fn orbit_budget_exhaustion_over_z() {
        let z = Ring::integers();
        let report = orbit(&Poly::parse(&z, "[1,1]").unwrap(), 100, false);
        assert!(!report.cycle_found());
        assert_eq!(report.steps_taken, 100);
    }

    #[test]
    fn orbit_constant_two_cycle_over_z4() {
        let z4 = make_ring("Z/4").unwrap();
        let report = orbit(&poly(&z4, "[2]"), 50, false);
        assert_eq!(report.preperiod, 0);
        assert_eq!(report.cycle, vec![poly(&z4, "[2]"), poly(&z4, "[0,2]")]);
    }

    #[test]
    fn periodicity_criterion_examples() {
        let f3 = make_ring("F3").unwrap();
        assert!(is_periodic(&poly(&f3, "[1,0,1]")).unwrap());
        assert!(!is_periodic(&poly(&f3, "[1,1]")).unwrap());
        let z6 = make_ring("Z/6").unwrap();
        assert!(is_periodic(&poly(&z6, "[1,2]")).unwrap());
        assert!(is_periodic(&Poly::zero(z6)).unwrap());
        assert!(is_periodic(&poly(&f3, "[2]")).unwrap());
    }

    #[test]
    fn period_divisor_bound_examples() {
        let z4 = make_ring("Z/4").unwrap();
        assert_eq!(
            period_divisor_bound(&poly(&z4, "[1,2]")).unwrap(),
            BigUint::from(8u32)
        );
        let z6 = make_ring("Z/6").unwrap();
        assert_eq!(
            period_divisor_bound(&poly(&z6, "[1,2]")).unwrap(),
            BigUint::from(12u32)
        );
        let f3 = make_ring("F3").unwrap();
        assert_eq!(
            period_divisor_bound(&poly(&f3, "[1,0,1]")).unwrap(),
            BigUint::from(6u32)
        );
        assert!(period_divisor_bound(&poly(&f3, "[2]")).is_err());
        assert!(period_divisor_bound(&poly(&f3, "[0,1]")).is_err());
    }

    #[test]
    fn exact_periods() {
        let f3 = make_ring("F3").unwrap();
        assert_eq!(exact_period(&poly(&f3, "[1,0,1]")).unwrap(), 6);
        let z6 = make_ring("Z/6").unwrap();
        assert_eq!(exact_period(&poly(&z6, "[1,2]")).unwrap(), 6);
        let f2t = make_ring("F2[t]").unwrap();
        // t*x + (t+1)
        let f = poly(&f2t, "[[1,1],[0,1]]");
        assert_eq!(exact_period(&f).unwrap(), 4);
        assert!(exact_period(&poly(&f3, "[1,1]")).is_err());
    }

    #[test]
    fn char_zero_classification() {
        let z = Ring::integers();
        let p = |t: &str| Poly::parse(&z, t).unwrap();
        assert_eq!(
            char_zero_classify(&p("[5]")).unwrap(),
            CharZeroClass::OnConstantCycle
        );
        assert_eq!(
            char_zero_classify(&p("[0,5]")).unwrap(),
            CharZeroClass::OnConstantCycle
        );
        assert_eq!(
            char_zero_classify(&p("[]")).unwrap(),
            CharZeroClass::OnZeroCycle
        );
        assert_eq!(
            char_zero_classify(&p("[1,1]")).unwrap(),
            CharZeroClass::NotPeriodic
        );
        let f2 = make_ring("F2").unwrap();
        assert!(char_zero_classify(&Poly::zero(f2)).is_err());
    }

    #[test]
    fn preperiod_bound_check_examples() {
        let f2 = make_ring("F2").unwrap();
        assert!(preperiod_bound_check(&poly(&f2, "[1,1]")).unwrap());
        assert!(preperiod_bound_check(&poly(&f2, "[1]")).unwrap());
        let f3 = make_ring("F3").unwrap();
        assert!(preperiod_bound_check(&poly(&f3, "[0,1,1]")).unwrap());
        let z4 = make_ring("Z/4").unwrap();
        assert!(preperiod_bound_check(&poly(&z4, "[1]")).is_err());
    }

    #[test]
    fn poly_text_roundtrip() {
        let f2t = make_ring("F2[t]").unwrap();
        let f = poly(&f2t, "[[1,1],[0,1]]");
        assert_eq!(Poly::parse(&f2t, &f.to_string()).unwrap(), f);
        let z = Ring::integers();
        let g = Poly::parse(&z, "[-3,0,7]").unwrap();
        assert_eq!(Poly::parse(&z, &g.to_string()).unwrap(), g);
        assert_eq!(Poly::parse(&z, "[]").unwrap(), Poly::zero(z.clone()));
        assert_eq!(Poly::parse(&z, "[0]").unwrap(), Poly::zero(z));
    }
}
