//! Cycle censuses over finite rings.
//!
//! Over a field F_q of characteristic p, the odd periodic polynomials of
//! degree < p^k are exactly the coefficient vectors B_k v where v runs over
//! vectors with all entries nonzero, B_k is the signed Pascal matrix
//! B[i][j] = (-1)^(i+j) C(i-1, j-1) (1-based, lower triangular), and its
//! inverse A_k is the plain Pascal matrix. That gives (q-1)^(p^k) periodic
//! odd polynomials and the closed-form cycle count
//!
//!   ((q-1)^(p^k) - (q-1)^(p^(k-1))) / p^k        cycles of length 2 p^k,
//!
//! plus q-1 cycles of length 2. The brute-force census over all
//! polynomials up to a degree cap is the oracle the formulas are checked
//! against; the matrix-based census scales to sizes the full scan cannot
//! reach, and the two must agree where both run.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::{collatz_step, default_orbit_budget, orbit, Poly};
use crate::ring::{Ring, RingElem};
use crate::valuation::binom_mod_p;

/// Default cap on the matrix size p^k.
pub const DEFAULT_MATRIX_CAP: u64 = 81;

/// Default cap on enumeration work (number of polynomials visited).
pub const DEFAULT_WORK_BUDGET: u64 = 10_000_000;

/// Lower-triangular matrix over a finite field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangularMatrix {
    ring: Ring,
    size: usize,
    /// Row-major; entries[i][j] = 0 for j > i.
    entries: Vec<Vec<RingElem>>,
}

impl TriangularMatrix {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn entry(&self, i: usize, j: usize) -> &RingElem {
        &self.entries[i][j]
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[RingElem]) -> Vec<RingElem> {
        assert_eq!(v.len(), self.size);
        self.entries
            .iter()
            .map(|row| {
                let mut acc = self.ring.zero();
                for (a, x) in row.iter().zip(v) {
                    acc = self.ring.add(&acc, &self.ring.mul(a, x));
                }
                acc
            })
            .collect()
    }

    fn mul(&self, other: &TriangularMatrix) -> TriangularMatrix {
        let n = self.size;
        let entries = self
            .entries
            .iter()
            .map(|row| {
                (0..n)
                    .map(|j| {
                        let mut acc = self.ring.zero();
                        for (a, other_row) in row.iter().zip(&other.entries) {
                            acc = self.ring.add(&acc, &self.ring.mul(a, &other_row[j]));
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        TriangularMatrix {
            ring: self.ring.clone(),
            size: n,
            entries,
        }
    }

    fn is_identity(&self) -> bool {
        (0..self.size).all(|i| {
            (0..self.size).all(|j| {
                let e = &self.entries[i][j];
                if i == j {
                    *e == self.ring.one()
                } else {
                    self.ring.is_zero(e)
                }
            })
        })
    }
}

/// The signed/unsigned Pascal matrix pair (B, A) of size p^k over the
/// field; B * A = A * B = I is verified on construction. Binomials are
/// reduced mod p through Lucas digit products.
pub fn build_matrices(field: &Ring, k: u32) -> Result<(TriangularMatrix, TriangularMatrix)> {
    build_matrices_capped(field, k, DEFAULT_MATRIX_CAP)
}

pub fn build_matrices_capped(
    field: &Ring,
    k: u32,
    cap: u64,
) -> Result<(TriangularMatrix, TriangularMatrix)> {
    let (p, _) = field
        .field_params()
        .ok_or_else(|| Error::Precondition("matrices are defined over a field".into()))?;
    if k == 0 {
        return Err(Error::Precondition("need k >= 1".into()));
    }
    let size_big = BigUint::from(p).pow(k);
    let size = size_big
        .to_u64()
        .filter(|&s| s <= cap)
        .ok_or(Error::BudgetExceeded(cap))? as usize;

    let binom = |i: usize, j: usize| binom_mod_p(p, &BigUint::from(i), &BigUint::from(j));
    let mut b_entries = vec![vec![field.zero(); size]; size];
    let mut a_entries = vec![vec![field.zero(); size]; size];
    for i in 1..=size {
        for j in 1..=i {
            let c = binom(i - 1, j - 1);
            a_entries[i - 1][j - 1] = field.int_image(c);
            let signed = if (i + j) % 2 == 0 { c } else { (p - c) % p };
            b_entries[i - 1][j - 1] = field.int_image(signed);
        }
    }
    let b = TriangularMatrix {
        ring: field.clone(),
        size,
        entries: b_entries,
    };
    let a = TriangularMatrix {
        ring: field.clone(),
        size,
        entries: a_entries,
    };
    if !b.mul(&a).is_identity() || !a.mul(&b).is_identity() {
        return Err(Error::Internal("B and A are not inverse to each other".into()));
    }
    Ok((b, a))
}

/// All odd T-periodic polynomials of degree < p^k over the field: the image
/// of the all-nonzero vectors under B_k. Exactly (q-1)^(p^k) polynomials.
pub fn periodic_odd_polys(field: &Ring, k: u32) -> Result<Vec<Poly>> {
    periodic_odd_polys_capped(field, k, DEFAULT_MATRIX_CAP, DEFAULT_WORK_BUDGET)
}

pub fn periodic_odd_polys_capped(
    field: &Ring,
    k: u32,
    matrix_cap: u64,
    work_budget: u64,
) -> Result<Vec<Poly>> {
    let (b, _) = build_matrices_capped(field, k, matrix_cap)?;
    let size = b.size();
    let q = field
        .cardinality()
        .and_then(|c| c.to_u64())
        .expect("field is finite");
    let total = BigUint::from(q - 1).pow(size as u32);
    if total > BigUint::from(work_budget) {
        return Err(Error::BudgetExceeded(work_budget));
    }
    let nonzero: Vec<RingElem> = field.enumerate_elements()?.into_iter().skip(1).collect();
    let mut out = Vec::with_capacity(total.to_usize().unwrap());
    let mut idx = vec![0usize; size];
    loop {
        let v: Vec<RingElem> = idx.iter().map(|&i| nonzero[i].clone()).collect();
        out.push(Poly::new(field.clone(), b.apply(&v)));
        // odometer over (F_q^*)^size
        let mut pos = size;
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < nonzero.len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// Closed-form cycle count over F_q (characteristic p): q-1 cycles of
/// length 2 for k = 0, and ((q-1)^(p^k) - (q-1)^(p^(k-1))) / p^k cycles of
/// length 2p^k for k >= 1. The division must be exact; a remainder is
/// flagged, never rounded.
pub fn count_cycles_formula(q: u64, p: u64, k: u32) -> Result<BigUint> {
    let mut m = q;
    while m > 1 && m.is_multiple_of(p) {
        m /= p;
    }
    if m != 1 || q < 2 {
        return Err(Error::Precondition(format!("{q} is not a power of {p}")));
    }
    if k == 0 {
        return Ok(BigUint::from(q - 1));
    }
    let w = BigUint::from(q - 1);
    let pk = BigUint::from(p).pow(k);
    let pk1 = BigUint::from(p).pow(k - 1);
    let numerator = w.clone().pow(pk.to_u32().ok_or(Error::BudgetExceeded(u32::MAX as u64))?)
        - w.pow(pk1.to_u32().unwrap());
    let (count, rem) = numerator.div_rem(&pk);
    if !rem.is_zero() {
        return Err(Error::Internal(format!(
            "cycle count for q={q}, k={k} is not an integer"
        )));
    }
    Ok(count)
}

/// Tabulated census: cycle length -> number of distinct cycles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusTable {
    pub ring_spec: String,
    pub degree_cap: usize,
    pub counts: std::collections::BTreeMap<u64, u64>,
}

impl CensusTable {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("length,count\n");
        for (len, count) in &self.counts {
            out.push_str(&format!("{len},{count}\n"));
        }
        out
    }
}

/// Canonical form of a cycle: the rotation whose member sequence is
/// lexicographically minimal under the degree-major polynomial order.
fn canonical_cycle(cycle: &[Poly]) -> Vec<Poly> {
    let n = cycle.len();
    let mut best: Option<Vec<Poly>> = None;
    for r in 0..n {
        let cand: Vec<Poly> = (0..n).map(|i| cycle[(i + r) % n].clone()).collect();
        if best.as_ref().is_none_or(|b| cand < *b) {
            best = Some(cand);
        }
    }
    best.unwrap_or_default()
}

/// Exhaustive census: run the orbit of every polynomial of degree <= cap
/// over a finite ring, canonicalize the reached cycles, and tabulate them
/// by length. The zero cycle shows up with length 1.
pub fn brute_force_census(ring: &Ring, degree_cap: usize) -> Result<CensusTable> {
    brute_force_census_budgeted(ring, degree_cap, DEFAULT_WORK_BUDGET)
}

pub fn brute_force_census_budgeted(
    ring: &Ring,
    degree_cap: usize,
    work_budget: u64,
) -> Result<CensusTable> {
    let q = ring.cardinality().ok_or(Error::InfiniteRing)?;
    let total = q.pow(degree_cap as u32 + 1);
    if total > BigUint::from(work_budget) {
        return Err(Error::BudgetExceeded(work_budget));
    }
    let elems = ring.enumerate_elements()?;
    let mut cycles: BTreeSet<Vec<Poly>> = BTreeSet::new();
    let mut idx = vec![0usize; degree_cap + 1];
    loop {
        let coeffs: Vec<RingElem> = idx.iter().map(|&i| elems[i].clone()).collect();
        let f = Poly::new(ring.clone(), coeffs);
        // double the default budget: Brent's power-of-two overshoot can pass
        // the worst-case pre-period before locking on
        let budget = 2 * default_orbit_budget(&f)?.max(4) + 64;
        let report = orbit(&f, budget, false);
        if !report.cycle_found() {
            return Err(Error::BudgetExceeded(budget));
        }
        cycles.insert(canonical_cycle(&report.cycle));
        let mut pos = degree_cap + 1;
        loop {
            if pos == 0 {
                let mut counts = std::collections::BTreeMap::new();
                for c in &cycles {
                    *counts.entry(c.len() as u64).or_insert(0u64) += 1;
                }
                return Ok(CensusTable {
                    ring_spec: ring.spec_string(),
                    degree_cap,
                    counts,
                });
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < elems.len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// Census restricted to the odd periodic polynomials of degree < p^k,
/// enumerated through the matrix characterization instead of a full scan.
/// Every cycle with an odd member of degree < p^k is counted exactly once;
/// the zero cycle is not part of this table.
pub fn matrix_census(field: &Ring, k: u32) -> Result<CensusTable> {
    matrix_census_capped(field, k, DEFAULT_MATRIX_CAP, DEFAULT_WORK_BUDGET)
}

pub fn matrix_census_capped(
    field: &Ring,
    k: u32,
    matrix_cap: u64,
    work_budget: u64,
) -> Result<CensusTable> {
    let polys = periodic_odd_polys_capped(field, k, matrix_cap, work_budget)?;
    let mut remaining: BTreeSet<Poly> = polys.into_iter().collect();
    let mut counts = std::collections::BTreeMap::new();
    while let Some(start) = remaining.iter().next().cloned() {
        // walk the cycle, striking out its odd members
        let mut len = 0u64;
        let mut g = start.clone();
        loop {
            if g.is_odd() {
                remaining.remove(&g);
            }
            g = collatz_step(&g);
            len += 1;
            if g == start {
                break;
            }
        }
        *counts.entry(len).or_insert(0u64) += 1;
    }
    let (p, _) = field.field_params().expect("checked in build_matrices");
    Ok(CensusTable {
        ring_spec: field.spec_string(),
        degree_cap: BigUint::from(p).pow(k).to_usize().unwrap() - 1,
        counts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::exact_period;
    use crate::ring::make_ring;

    #[test]
    fn b_matrix_small_cases() {
        let f2 = make_ring("F2").unwrap();
        let (b, _) = build_matrices(&f2, 1).unwrap();
        assert_eq!(b.size(), 2);
        let one = f2.one();
        let zero = f2.zero();
        assert_eq!(*b.entry(0, 0), one);
        assert_eq!(*b.entry(0, 1), zero);
        assert_eq!(*b.entry(1, 0), one); // (-1)^3 C(1,0) = -1 = 1 mod 2
        assert_eq!(*b.entry(1, 1), one);

        let f3 = make_ring("F3").unwrap();
        let (b, _) = build_matrices(&f3, 1).unwrap();
        let e = |c: u64| f3.int_image(c);
        let expect = [[1, 0, 0], [2, 1, 0], [1, 1, 1]];
        for (i, row) in expect.iter().enumerate() {
            for (j, &c) in row.iter().enumerate() {
                assert_eq!(*b.entry(i, j), e(c), "entry ({i},{j})");
            }
        }
    }

    #[test]
    fn matrix_cap_is_enforced() {
        let f3 = make_ring("F3").unwrap();
        assert!(matches!(
            build_matrices_capped(&f3, 5, 81),
            Err(Error::BudgetExceeded(81))
        ));
    }

    #[test]
    fn periodic_odd_polys_f2_k1() {
        let f2 = make_ring("F2").unwrap();
        let polys = periodic_odd_polys(&f2, 1).unwrap();
        // only v = (1,1), giving B v = (1,0): the constant 1
        assert_eq!(polys.len(), 1);
        assert_eq!(polys[0], Poly::parse(&f2, "[1]").unwrap());
    }

    #[test]
    fn periodic_odd_polys_f3_k1() {
        let f3 = make_ring("F3").unwrap();
        let polys = periodic_odd_polys(&f3, 1).unwrap();
        assert_eq!(polys.len(), 8); // (q-1)^(p^k) = 2^3
        let x2_plus_1 = Poly::parse(&f3, "[1,0,1]").unwrap();
        let one = Poly::parse(&f3, "[1]").unwrap();
        assert!(polys.contains(&x2_plus_1));
        assert!(polys.contains(&one));
        // every member is odd, of degree < 3, and actually periodic
        for f in &polys {
            assert!(f.is_odd());
            assert!(f.degree().unwrap() < 3);
            assert!(crate::poly::is_periodic(f).unwrap());
        }
    }

    #[test]
    fn count_formula_values() {
        assert_eq!(count_cycles_formula(3, 3, 1).unwrap(), BigUint::from(2u32));
        assert_eq!(count_cycles_formula(2, 2, 1).unwrap(), BigUint::from(0u32));
        assert_eq!(count_cycles_formula(2, 2, 3).unwrap(), BigUint::from(0u32));
        assert_eq!(count_cycles_formula(3, 3, 0).unwrap(), BigUint::from(2u32));
        assert_eq!(count_cycles_formula(4, 2, 2).unwrap(), BigUint::from(18u32));
        assert!(count_cycles_formula(6, 2, 1).is_err());
    }

    #[test]
    fn brute_census_f2() {
        let f2 = make_ring("F2").unwrap();
        let table = brute_force_census(&f2, 4).unwrap();
        let mut expect = std::collections::BTreeMap::new();
        expect.insert(1u64, 1u64); // the zero cycle
        expect.insert(2u64, 1u64); // (1, x)
        assert_eq!(table.counts, expect);
    }

    #[test]
    fn brute_census_f3() {
        let f3 = make_ring("F3").unwrap();
        let table = brute_force_census(&f3, 3).unwrap();
        let mut expect = std::collections::BTreeMap::new();
        expect.insert(1u64, 1u64);
        expect.insert(2u64, 2u64);
        expect.insert(6u64, 2u64);
        assert_eq!(table.counts, expect);
    }

    #[test]
    fn brute_census_z4_length_two() {
        let z4 = make_ring("Z/4").unwrap();
        let table = brute_force_census(&z4, 1).unwrap();
        assert_eq!(table.counts.get(&2), Some(&3)); // (a, ax) for a in {1,2,3}
    }

    #[test]
    fn matrix_census_agrees_with_brute_force() {
        let f3 = make_ring("F3").unwrap();
        let brute = brute_force_census(&f3, 2).unwrap();
        let matrix = matrix_census(&f3, 1).unwrap();
        // matrix census covers lengths 2 and 2p over degrees < 3, no zero cycle
        assert_eq!(matrix.counts.get(&2), brute.counts.get(&2));
        assert_eq!(matrix.counts.get(&6), brute.counts.get(&6));
    }

    #[test]
    fn enumerated_periods_match_closed_form() {
        let f3 = make_ring("F3").unwrap();
        for f in periodic_odd_polys(&f3, 1).unwrap() {
            let d = f.degree().unwrap() as u64;
            if d >= 1 {
                let k = 1 + d.ilog(3);
                assert_eq!(exact_period(&f).unwrap(), 2 * 3u64.pow(k));
            } else {
                assert_eq!(exact_period(&f).unwrap(), 2);
            }
        }
    }

    #[test]
    fn csv_rendering() {
        let f2 = make_ring("F2").unwrap();
        let table = brute_force_census(&f2, 2).unwrap();
        assert_eq!(table.to_csv(), "length,count\n1,1\n2,1\n");
    }
}
