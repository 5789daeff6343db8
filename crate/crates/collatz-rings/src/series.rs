//! Collatz dynamics on the eventually periodic part of R[[x]] for finite R.
//!
//! The eventually periodic power series are exactly the rational forms
//! u(1+xv)^{-1} with u, v polynomials, and every value here is kept in that
//! exact shape -- no truncation enters the computation. A T step fixes the
//! v part and rewrites only the numerator:
//!
//!   odd  (u(0) != 0):  u <- (x+1)u - u(0)(1+xv)
//!   even (u(0) == 0):  u <- u/x
//!
//! so equality along an orbit is plain numerator equality and numerator
//! degrees stay bounded. The condensed map divides the odd branch by x as
//! well. Periodic points are reconstructed from their parity vectors:
//! prescribing the n constant terms of a condensed orbit determines a
//! unique point of period dividing n, with closed-form numerator and
//! denominator built from powers of (x+1).

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::detect;
use crate::error::{Error, Result};
use crate::parity;
use crate::poly::Poly;
use crate::ring::{Ring, RingElem};

/// Exact representative u * (1 + x v)^{-1} of an eventually periodic power
/// series over a finite ring. The denominator has constant term 1, hence is
/// a unit of R[[x]].
#[derive(Debug, Clone)]
pub struct RationalSeries {
    ring: Ring,
    u: Poly,
    v: Poly,
}

/// Which of the two maps drives an orbit or parity trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParityMap {
    Full,
    Condensed,
}

impl RationalSeries {
    pub fn new(ring: Ring, u: Poly, v: Poly) -> Result<RationalSeries> {
        if !ring.is_finite() {
            return Err(Error::InfiniteRing);
        }
        debug_assert_eq!(u.ring(), &ring);
        debug_assert_eq!(v.ring(), &ring);
        Ok(RationalSeries { ring, u, v })
    }

    pub fn zero(ring: Ring) -> Result<RationalSeries> {
        let u = Poly::zero(ring.clone());
        let v = Poly::zero(ring.clone());
        RationalSeries::new(ring, u, v)
    }

    /// Embed a polynomial (v = 0).
    pub fn from_poly(f: Poly) -> Result<RationalSeries> {
        let ring = f.ring().clone();
        let v = Poly::zero(ring.clone());
        RationalSeries::new(ring, f, v)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn numerator(&self) -> &Poly {
        &self.u
    }

    pub fn v_part(&self) -> &Poly {
        &self.v
    }

    /// 1 + x v.
    pub fn denominator(&self) -> Poly {
        Poly::constant(self.ring.clone(), self.ring.one()).add(&self.v.shift_up(1))
    }

    /// Constant term of the series, u(0).
    pub fn constant_term(&self) -> RingElem {
        self.u.constant_term()
    }

    pub fn is_odd(&self) -> bool {
        self.u.is_odd()
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero()
    }

    /// First m coefficients of the series, by the division recurrence
    /// s = u - (x v) s.
    pub fn truncate(&self, m: usize) -> Vec<RingElem> {
        let zero = self.ring.zero();
        let mut out: Vec<RingElem> = Vec::with_capacity(m);
        for i in 0..m {
            let mut s = self.u.coeffs().get(i).cloned().unwrap_or_else(|| zero.clone());
            for (j, vc) in self.v.coeffs().iter().enumerate() {
                // (x v)_{j+1} = v_j
                if j + 1 > i {
                    break;
                }
                s = self.ring.sub(&s, &self.ring.mul(vc, &out[i - j - 1]));
            }
            out.push(s);
        }
        out
    }
}

/// Equality of the represented series. With equal v parts this is
/// numerator equality; in general the cross-multiplied polynomial identity
/// u1 (1 + x v2) = u2 (1 + x v1) decides, because both denominators are
/// units of R[[x]].
impl PartialEq for RationalSeries {
    fn eq(&self, other: &Self) -> bool {
        if self.v == other.v {
            return self.u == other.u;
        }
        self.u.mul(&other.denominator()) == other.u.mul(&self.denominator())
    }
}

impl Eq for RationalSeries {}

/// One step of the full map on rational forms; the v part never changes.
pub fn series_t(f: &RationalSeries) -> RationalSeries {
    let ring = f.ring.clone();
    let u = if f.is_odd() {
        let c = f.constant_term();
        let x_plus_1 = Poly::parse(&ring, "[1,1]").expect("x+1 parses in every ring");
        x_plus_1.mul(&f.u).sub(&f.denominator().scale(&c))
    } else if f.u.is_zero() {
        f.u.clone()
    } else {
        // u(0) = 0, so x divides u exactly
        Poly::new(ring.clone(), f.u.coeffs()[1..].to_vec())
    };
    RationalSeries {
        ring,
        u,
        v: f.v.clone(),
    }
}

/// One step of the condensed map: the odd branch additionally divides by x.
pub fn series_t_condensed(f: &RationalSeries) -> RationalSeries {
    if f.is_odd() {
        let g = series_t(f);
        debug_assert!(g.u.is_even());
        let u = if g.u.is_zero() {
            g.u
        } else {
            Poly::new(g.ring.clone(), g.u.coeffs()[1..].to_vec())
        };
        RationalSeries { ring: f.ring.clone(), u, v: f.v.clone() }
    } else {
        series_t(f)
    }
}

/// Constant terms of the first n iterates under the chosen map. Full-map
/// traces are always zero dense.
pub fn parity_vector(f: &RationalSeries, n: usize, which: ParityMap) -> Vec<RingElem> {
    let mut out = Vec::with_capacity(n);
    let mut g = f.clone();
    for i in 0..n {
        out.push(g.constant_term());
        if i + 1 < n {
            g = match which {
                ParityMap::Full => series_t(&g),
                ParityMap::Condensed => series_t_condensed(&g),
            };
        }
    }
    out
}

fn count_nonzero(ring: &Ring, v: &[RingElem]) -> usize {
    v.iter().filter(|c| !ring.is_zero(c)).count()
}

/// The unique point of condensed-map period dividing n whose condensed
/// parity vector is v:
///
///   f = [ sum_j v_j x^j (x+1)^{s_j} ] / [ (x+1)^s - x^n ],
///
/// where s_j counts nonzero entries after position j and s = s_0 + p(v_0).
/// The denominator has constant term 1, so the result is a valid rational
/// form.
pub fn periodic_from_parity(ring: &Ring, v: &[RingElem]) -> Result<RationalSeries> {
    if v.is_empty() {
        return Err(Error::Precondition("empty parity vector".into()));
    }
    let n = v.len();
    let x_plus_1 = Poly::parse(ring, "[1,1]").expect("x+1 parses in every ring");
    // powers of (x+1) up to the total nonzero count
    let s_total = count_nonzero(ring, v);
    let mut powers = Vec::with_capacity(s_total + 1);
    powers.push(Poly::constant(ring.clone(), ring.one()));
    for e in 1..=s_total {
        let next = powers[e - 1].mul(&x_plus_1);
        powers.push(next);
    }
    let mut numerator = Poly::zero(ring.clone());
    let mut suffix = 0usize; // nonzero entries strictly after position j
    for (j, c) in v.iter().enumerate().rev() {
        let term = powers[suffix].scale(c).shift_up(j);
        numerator = numerator.add(&term);
        if !ring.is_zero(c) {
            suffix += 1;
        }
    }
    let x_n = Poly::constant(ring.clone(), ring.one()).shift_up(n);
    let denominator = powers[s_total].sub(&x_n);
    debug_assert_eq!(denominator.constant_term(), ring.one());
    let v_part = Poly::new(
        ring.clone(),
        denominator
            .sub(&Poly::constant(ring.clone(), ring.one()))
            .coeffs()
            .get(1..)
            .unwrap_or(&[])
            .to_vec(),
    );
    RationalSeries::new(ring.clone(), numerator, v_part)
}

fn symbols_of(ring: &Ring, v: &[RingElem]) -> Result<Vec<u64>> {
    v.iter().map(|c| ring.elem_index(c)).collect()
}

/// The unique point of full-map period dividing n whose full parity vector
/// is the cyclically zero-dense v. Built by rotating v so it ends in a
/// zero, condensing, constructing the condensed periodic point, and
/// stepping back around the cycle.
pub fn periodic_from_cyclic_parity(ring: &Ring, v: &[RingElem]) -> Result<RationalSeries> {
    let symbols = symbols_of(ring, v)?;
    if !parity::is_cyclically_zero_dense(&symbols)? {
        return Err(Error::Precondition(
            "parity vector is not cyclically zero dense".into(),
        ));
    }
    let n = v.len();
    // rotate left by r so the last entry is zero
    let r = if symbols[n - 1] == 0 {
        0
    } else {
        1 + symbols
            .iter()
            .position(|&s| s == 0)
            .expect("a cyclically zero-dense vector of length >= 2 has a zero")
    };
    let rotated: Vec<RingElem> = (0..n).map(|i| v[(i + r) % n].clone()).collect();
    let mut condensed = Vec::with_capacity(n);
    let mut skip = false;
    for c in &rotated {
        if skip {
            skip = false;
            continue;
        }
        skip = !ring.is_zero(c);
        condensed.push(c.clone());
    }
    let anchor = periodic_from_parity(ring, &condensed)?;
    // anchor has full-map period dividing n; walk n - r steps to undo the
    // rotation
    let mut f = anchor;
    if r > 0 {
        for _ in 0..n - r {
            f = series_t(&f);
        }
    }
    Ok(f)
}

/// Orbit report for the series map.
#[derive(Debug, Clone)]
pub struct SeriesOrbitReport {
    pub preperiod: u64,
    pub cycle: Vec<RationalSeries>,
    /// Constant terms of the orbit prefix through one full cycle.
    pub parity_trace: Vec<RingElem>,
    pub steps_taken: u64,
}

/// Iterate the full map with Brent detection. Budget exhaustion is an
/// error here: over a finite ring every rational form is eventually
/// periodic, so running out of budget means the budget was mis-sized.
pub fn series_orbit(f: &RationalSeries, budget: u64) -> Result<SeriesOrbitReport> {
    match detect::brent(f, series_t, budget) {
        detect::Outcome::Found(d) => {
            let len = d.preperiod + d.cycle.len() as u64;
            let parity_trace = parity_vector(f, len as usize, ParityMap::Full);
            Ok(SeriesOrbitReport {
                preperiod: d.preperiod,
                cycle: d.cycle,
                parity_trace,
                steps_taken: d.steps,
            })
        }
        detect::Outcome::Exhausted { .. } => Err(Error::BudgetExceeded(budget)),
    }
}

/// The period-n census: all points with T^n(f) = f, identified with the
/// cyclically zero-dense parity vectors of length n, plus the cycles of
/// exact length n assembled from rotation classes of those vectors.
/// Returns (|Omega_n|, cycles).
pub fn omega_census(ring: &Ring, n: usize) -> Result<(BigUint, Vec<Vec<RationalSeries>>)> {
    omega_census_budgeted(ring, n, crate::census::DEFAULT_WORK_BUDGET)
}

pub fn omega_census_budgeted(
    ring: &Ring,
    n: usize,
    work_budget: u64,
) -> Result<(BigUint, Vec<Vec<RationalSeries>>)> {
    let q = ring
        .cardinality()
        .ok_or(Error::InfiniteRing)?
        .to_u64()
        .ok_or(Error::BudgetExceeded(work_budget))?;
    if n == 0 {
        return Err(Error::Precondition("census needs n >= 1".into()));
    }
    if n == 1 {
        // a length-1 cyclically zero-dense vector must be (0)
        return Ok((BigUint::from(1u32), vec![vec![RationalSeries::zero(ring.clone())?]]));
    }
    let expected = parity::j_count(q, n as u64)?;
    if expected > BigUint::from(work_budget) {
        return Err(Error::BudgetExceeded(work_budget));
    }
    let vectors = parity::enumerate_cyclically_zero_dense(q, n)?;
    let count = BigUint::from(vectors.len());
    let classes = parity::rotation_orbits(&vectors)?;
    let mut cycles = Vec::new();
    for class in classes.iter().filter(|c| c.primitive_period == n) {
        let elems: Result<Vec<RingElem>> = class
            .representative
            .iter()
            .map(|&s| ring.elem_at_index(s))
            .collect();
        let f = periodic_from_cyclic_parity(ring, &elems?)?;
        let mut cycle = Vec::with_capacity(n);
        let mut g = f;
        for _ in 0..n {
            cycle.push(g.clone());
            g = series_t(&g);
        }
        cycles.push(cycle);
    }
    Ok((count, cycles))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::make_ring;

    fn series(ring: &Ring, u: &str, v: &str) -> RationalSeries {
        RationalSeries::new(
            ring.clone(),
            Poly::parse(ring, u).unwrap(),
            Poly::parse(ring, v).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn geometric_series_collapses_to_zero() {
        let f2 = make_ring("F2").unwrap();
        // 1/(1+x) = sum x^i; T of it: (x+1)*1 - 1*(1+x) = 0
        let f = series(&f2, "[1]", "[1]");
        assert!(series_t(&f).is_zero());
    }

    #[test]
    fn constant_one_maps_to_x() {
        let f2 = make_ring("F2").unwrap();
        let f = series(&f2, "[1]", "[]");
        let g = series_t(&f);
        assert_eq!(g.numerator(), &Poly::parse(&f2, "[0,1]").unwrap());
    }

    #[test]
    fn three_cycle_through_rational_form() {
        let f2 = make_ring("F2").unwrap();
        // 1/(1 + x(1+x)): T gives x^2/(...), T^2 gives x/(...), T^3 = f
        let f = series(&f2, "[1]", "[1,1]");
        let t1 = series_t(&f);
        assert_eq!(t1.numerator(), &Poly::parse(&f2, "[0,0,1]").unwrap());
        let t2 = series_t(&t1);
        let t3 = series_t(&t2);
        assert_eq!(t3, f);
    }

    #[test]
    fn condensed_fixed_points() {
        let f2 = make_ring("F2").unwrap();
        let one = series(&f2, "[1]", "[]");
        assert_eq!(series_t_condensed(&one), one);
        let zero = RationalSeries::zero(f2).unwrap();
        assert_eq!(series_t_condensed(&zero), zero);
        let f3 = make_ring("F3").unwrap();
        let two = series(&f3, "[2]", "[]");
        assert_eq!(series_t_condensed(&two), two);
    }

    #[test]
    fn parity_vectors() {
        let f2 = make_ring("F2").unwrap();
        let one = series(&f2, "[1]", "[]");
        let full = parity_vector(&one, 4, ParityMap::Full);
        let e = |c: u64| f2.int_image(c);
        assert_eq!(full, vec![e(1), e(0), e(1), e(0)]);
        let condensed = parity_vector(&one, 3, ParityMap::Condensed);
        assert_eq!(condensed, vec![e(1), e(1), e(1)]);
        let zero = RationalSeries::zero(f2.clone()).unwrap();
        assert_eq!(parity_vector(&zero, 3, ParityMap::Full), vec![e(0), e(0), e(0)]);
    }

    #[test]
    fn condensed_construction_examples() {
        let f2 = make_ring("F2").unwrap();
        let e = |c: u64| f2.int_image(c);
        // v = (1): the fixed point 1
        let f = periodic_from_parity(&f2, &[e(1)]).unwrap();
        assert_eq!(f, series(&f2, "[1]", "[]"));
        // v = (0): zero
        let z = periodic_from_parity(&f2, &[e(0)]).unwrap();
        assert!(z.is_zero());
        // v = (1,0): 1/(1+x+x^2), condensed period 2
        let f = periodic_from_parity(&f2, &[e(1), e(0)]).unwrap();
        assert_eq!(f.numerator(), &Poly::parse(&f2, "[1]").unwrap());
        assert_eq!(f.v_part(), &Poly::parse(&f2, "[1,1]").unwrap());
        let g = series_t_condensed(&series_t_condensed(&f));
        assert_eq!(g, f);
        assert_eq!(
            parity_vector(&f, 2, ParityMap::Condensed),
            vec![e(1), e(0)]
        );
    }

    #[test]
    fn cyclic_construction_examples() {
        let f2 = make_ring("F2").unwrap();
        let e = |c: u64| f2.int_image(c);
        let f = periodic_from_cyclic_parity(&f2, &[e(1), e(0), e(0)]).unwrap();
        let mut g = f.clone();
        for _ in 0..3 {
            g = series_t(&g);
        }
        assert_eq!(g, f);
        assert_eq!(
            parity_vector(&f, 3, ParityMap::Full),
            vec![e(1), e(0), e(0)]
        );

        let z = periodic_from_cyclic_parity(&f2, &[e(0), e(0)]).unwrap();
        assert!(z.is_zero());

        let f3 = make_ring("F3").unwrap();
        let t = |c: u64| f3.int_image(c);
        let f = periodic_from_cyclic_parity(&f3, &[t(2), t(0)]).unwrap();
        let g = series_t(&series_t(&f));
        assert_eq!(g, f);
        assert_eq!(f.constant_term(), t(2));

        assert!(periodic_from_cyclic_parity(&f2, &[e(1), e(1), e(0)]).is_err());
    }

    #[test]
    fn orbit_reports() {
        let f2 = make_ring("F2").unwrap();
        let one = series(&f2, "[1]", "[]");
        let report = series_orbit(&one, 100).unwrap();
        assert_eq!(report.preperiod, 0);
        assert_eq!(report.cycle.len(), 2);

        let geo = series(&f2, "[1]", "[1]");
        let report = series_orbit(&geo, 100).unwrap();
        assert_eq!(report.preperiod, 1);
        assert_eq!(report.cycle.len(), 1);
        assert!(report.cycle[0].is_zero());

        assert!(matches!(
            series_orbit(&geo, 1),
            Err(Error::BudgetExceeded(1))
        ));
    }

    #[test]
    fn census_small_cases() {
        let f2 = make_ring("F2").unwrap();
        let (count, cycles) = omega_census(&f2, 3).unwrap();
        assert_eq!(count, BigUint::from(4u32));
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0].len(), 3);

        let z4 = make_ring("Z/4").unwrap();
        let (count, cycles) = omega_census(&z4, 3).unwrap();
        assert_eq!(count, BigUint::from(10u32));
        assert_eq!(cycles.len(), 3);

        let (count, cycles) = omega_census(&f2, 1).unwrap();
        assert_eq!(count, BigUint::from(1u32));
        assert_eq!(cycles.len(), 1);
        assert!(cycles[0][0].is_zero());
    }

    #[test]
    fn equality_across_representations() {
        let f2 = make_ring("F2").unwrap();
        // x/(1+x) vs (x + x^2 + x^3 ...) represented with v = (1+x): cross
        // multiply u1 (1+x v2) = u2 (1+x v1)
        let a = series(&f2, "[0,1]", "[1]");
        let b = series(&f2, "[0,1,1]", "[1,1]");
        // a = x/(1+x), b = (x+x^2)/(1+x+x^2)? check via truncation instead
        let ta = a.truncate(8);
        let tb = b.truncate(8);
        assert_eq!(a == b, ta == tb);
    }

    #[test]
    fn truncation_matches_series_division() {
        let f3 = make_ring("F3").unwrap();
        let f = series(&f3, "[1,2]", "[1]");
        // (1+2x)/(1+x): coefficients 1, then (2-1)=1, then alternating -1, 1...
        let got = f.truncate(5);
        let e = |c: u64| f3.int_image(c);
        assert_eq!(got, vec![e(1), e(1), e(2), e(1), e(2)]);
    }
}
