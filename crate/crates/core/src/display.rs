//! Human-readable forms of ring elements and polynomials.
//!
//! Field elements print as integers when they lie in the prime field (odd
//! characteristic uses residues in `(-p/2, p/2]`), otherwise as powers or
//! polynomials of the modulus root `b`.

use crate::gf::{Field, FieldElement};
use crate::ring::{BivPoly, Ring, RingElement};
use crate::skewpoly::SkewPoly;

fn monomial(var: &str, d: usize) -> String {
    match d {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{d}"),
    }
}

/// `coef` times `mono`, where `coef` is already formatted.
fn term(coef: String, mono: &str) -> String {
    if mono.is_empty() {
        return coef;
    }
    match coef.as_str() {
        "1" => mono.to_string(),
        "-1" => format!("-{mono}"),
        c if c.chars().all(|ch| ch.is_ascii_digit() || ch == '-') => format!("{c}{mono}"),
        c => format!("{c}*{mono}"),
    }
}

fn join_compact(terms: &[String]) -> String {
    let mut out = String::new();
    for (k, t) in terms.iter().enumerate() {
        if k > 0 && !t.starts_with('-') {
            out.push('+');
        }
        out.push_str(t);
    }
    out
}

/// A polynomial in `u`, `v`, terms ordered by `u` degree then `v` degree.
pub fn format_biv(field: &Field, poly: &BivPoly) -> String {
    let terms: Vec<String> = poly
        .terms()
        .into_iter()
        .map(|(a, b, c)| {
            let mono = format!("{}{}", monomial("u", a), monomial("v", b));
            term(field.format(c), &mono)
        })
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        join_compact(&terms)
    }
}

pub fn format_ring_element(ring: &Ring, a: &RingElement) -> String {
    format_biv(ring.field(), &ring.to_uv_poly(a))
}

fn is_compound(s: &str) -> bool {
    s.char_indices().any(|(k, ch)| k > 0 && (ch == '+' || ch == '-')) && !s.starts_with('(')
}

/// Descending `x` notation from already formatted coefficients.
fn format_x_poly(coeffs: &[String]) -> String {
    let mut terms = Vec::new();
    for (d, c) in coeffs.iter().enumerate().rev() {
        if c == "0" {
            continue;
        }
        let mono = monomial("x", d);
        let t = if mono.is_empty() {
            if is_compound(c) {
                format!("({c})")
            } else {
                c.clone()
            }
        } else if c == "1" {
            mono
        } else if c == "-1" {
            format!("-{mono}")
        } else if is_compound(c) {
            format!("({c}){mono}")
        } else {
            format!("{c}{mono}")
        };
        terms.push(t);
    }
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = terms[0].clone();
    for t in &terms[1..] {
        match t.strip_prefix('-') {
            Some(rest) => {
                out.push_str(" - ");
                out.push_str(rest);
            }
            None => {
                out.push_str(" + ");
                out.push_str(t);
            }
        }
    }
    out
}

pub fn format_field_poly(field: &Field, f: &SkewPoly<FieldElement>) -> String {
    let coeffs: Vec<String> = f.coeffs().iter().map(|&c| field.format(c)).collect();
    format_x_poly(&coeffs)
}

pub fn format_ring_poly(ring: &Ring, f: &SkewPoly<RingElement>) -> String {
    let coeffs: Vec<String> = f.coeffs().iter().map(|c| format_ring_element(ring, c)).collect();
    format_x_poly(&coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::autom::Autom;
    use crate::gf::FieldSpec;
    use crate::ring::RingSpec;
    use crate::skewpoly::SkewRing;

    #[test]
    fn sign_unit_over_f25() {
        let r =
            Ring::new(&RingSpec::from_roots(FieldSpec { p: 5, s: 2, modulus: Some(vec![2, 4, 1]) }, vec![0, 1, 4], vec![0, 1]))
                .unwrap();
        let a = r.element(&[1, 1, 4, 1, 4, 1]).unwrap();
        assert_eq!(format_ring_element(&r, &a), "1-2u^2+2u^2v");
        let sr = SkewRing::new(r.clone(), Autom::Theta(1)).unwrap();
        let g = sr.poly(vec![a.clone(), r.neg(&r.sub(&a, &r.from_scalar(r.field().from_int(2)))), r.one()]);
        assert_eq!(format_ring_poly(&r, &g), "x^2 + (1+2u^2-2u^2v)x + (1-2u^2+2u^2v)");
    }

    #[test]
    fn f4_polys() {
        let f = Field::new(&FieldSpec { p: 2, s: 2, modulus: Some(vec![1, 1, 1]) }).unwrap();
        let sr = SkewRing::new(f.clone(), Autom::Theta(1)).unwrap();
        let g = sr.poly([2, 3, 3, 1].iter().map(|&i| f.element(i).unwrap()).collect());
        assert_eq!(format_field_poly(&f, &g), "x^3 + b^2x^2 + b^2x + b");
        assert_eq!(format_field_poly(&f, &sr.zero()), "0");
    }

    #[test]
    fn psi_generator() {
        let r =
            Ring::new(&RingSpec::from_roots(FieldSpec { p: 2, s: 2, modulus: Some(vec![1, 1, 1]) }, vec![0, 1, 2], vec![0, 1]))
                .unwrap();
        let sr = SkewRing::new(r.clone(), Autom::Psi).unwrap();
        let g = sr.poly(vec![r.one(), r.sub(&r.one(), &r.v()), r.v()]);
        assert_eq!(format_ring_poly(&r, &g), "vx^2 + (1+v)x + 1");
    }
}
