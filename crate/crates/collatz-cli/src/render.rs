//! JSON renderings of core values. Polynomials mirror their text format:
//! little-endian arrays, with elements as numbers (residues, prime-field
//! values), arrays (extension fields, F_p[t]), or strings (Z).

use collatz_rings::ring::{Ring, RingElem};
use collatz_rings::series::RationalSeries;
use collatz_rings::Poly;
use serde_json::Value;

pub fn elem_json(ring: &Ring, e: &RingElem) -> Value {
    match e {
        RingElem::Residue(x) => serde_json::json!(x),
        RingElem::FieldElem(v) => {
            let k = match ring {
                Ring::GaloisField { modulus, .. } => modulus.len() - 1,
                _ => 1,
            };
            if k == 1 {
                serde_json::json!(v.first().copied().unwrap_or(0))
            } else {
                serde_json::json!(v)
            }
        }
        RingElem::PolyT(v) => serde_json::json!(v),
        RingElem::Int(i) => serde_json::json!(i.to_string()),
    }
}

pub fn elem_vec_json(ring: &Ring, elems: &[RingElem]) -> Value {
    Value::Array(elems.iter().map(|e| elem_json(ring, e)).collect())
}

pub fn poly_json(f: &Poly) -> Value {
    elem_vec_json(f.ring(), f.coeffs())
}

pub fn series_json(f: &RationalSeries) -> Value {
    serde_json::json!({
        "ring": f.ring().spec_string(),
        "u": poly_json(f.numerator()),
        "v": poly_json(f.v_part()),
    })
}
