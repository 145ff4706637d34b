//! Gray maps `R^n -> F_q^(kln)`, Gray weights, the shift operators on vectors,
//! and the commutation checks between them.
//!
//! `phi` writes the CRT coordinates of each symbol in turn
//! (`a_11^(0) .. a_kl^(0), a_11^(1) ..`); `phi_pi` groups by coordinate
//! (`a_11^(0) .. a_11^(n-1), a_12^(0) ..`).

use rand::Rng;
use serde::Serialize;

use crate::autom::Autom;
use crate::codes::Code;
use crate::error::{Error, Result};
use crate::gf::FieldElement;
use crate::oracle::{self, Metric, OracleCode};
use crate::ring::{Ring, RingElement};
use crate::skewpoly::Coefficients;

pub fn phi(v: &[RingElement]) -> Vec<FieldElement> {
    v.iter().flat_map(|r| r.crt.iter().copied()).collect()
}

pub fn phi_inverse(flat: &[FieldElement], width: usize) -> Vec<RingElement> {
    flat.chunks(width).map(|c| RingElement { crt: c.to_vec() }).collect()
}

pub fn phi_pi(v: &[RingElement]) -> Vec<FieldElement> {
    let width = v.first().map_or(0, |r| r.crt.len());
    (0..width).flat_map(|c| v.iter().map(move |r| r.crt[c])).collect()
}

pub fn phi_pi_inverse(flat: &[FieldElement], width: usize) -> Vec<RingElement> {
    let n = flat.len() / width;
    (0..n).map(|t| RingElement { crt: (0..width).map(|c| flat[c * n + t]).collect() }).collect()
}

/// Positions with `phi_pi(v)[k] = phi(v)[perm[k]]`.
pub fn pi_permutation(n: usize, width: usize) -> Vec<usize> {
    (0..width).flat_map(|c| (0..n).map(move |t| t * width + c)).collect()
}

pub fn hamming_weight(flat: &[FieldElement]) -> usize {
    flat.iter().filter(|x| !x.is_zero()).count()
}

/// Number of nonzero symbols of a vector over `R`.
pub fn ring_hamming_weight(v: &[RingElement]) -> usize {
    v.iter().filter(|r| !r.is_zero()).count()
}

/// Hamming weight of the Gray image.
pub fn gray_weight(v: &[RingElement]) -> usize {
    v.iter().map(|r| hamming_weight(&r.crt)).sum()
}

pub fn gray_distance(ring: &Ring, a: &[RingElement], b: &[RingElement]) -> usize {
    a.iter().zip(b).map(|(x, y)| hamming_weight(&ring.sub(x, y).crt)).sum()
}

/// Shift operators on vectors over `F_q` or `R`.
#[derive(Clone, Debug)]
pub enum Shift<E> {
    /// `(autom(c_{n-1}), autom(c_0), .., autom(c_{n-2}))`.
    Skew { autom: Autom },
    /// The `m` blocks rotate by one, each twisted by `autom`.
    SkewBlock { autom: Autom, blocks: usize },
    /// `(alpha autom(c_{n-1}), autom(c_0), .., autom(c_{n-2}))`.
    Constacyclic { autom: Autom, alpha: E },
    /// The `m` blocks rotate by one and the wrapped block is scaled by `alpha`.
    TwistedBlock { autom: Autom, alpha: E, blocks: usize },
    /// A constacyclic shift inside each of the `m` blocks. `alphas` has one
    /// entry per block, or a single entry shared by all blocks.
    BlockwiseConstacyclic { autom: Autom, alphas: Vec<E>, blocks: usize },
}

impl<E> Shift<E> {
    pub fn autom(&self) -> Autom {
        match self {
            Shift::Skew { autom }
            | Shift::SkewBlock { autom, .. }
            | Shift::Constacyclic { autom, .. }
            | Shift::TwistedBlock { autom, .. }
            | Shift::BlockwiseConstacyclic { autom, .. } => *autom,
        }
    }
}

fn constacyclic<C: Coefficients>(base: &C, autom: Autom, alpha: Option<&C::Elem>, v: &[C::Elem]) -> Vec<C::Elem> {
    let n = v.len();
    let mut out = Vec::with_capacity(n);
    if n == 0 {
        return out;
    }
    let last = base.twist(autom, &v[n - 1], 1);
    out.push(match alpha {
        Some(a) => base.mul(a, &last),
        None => last,
    });
    out.extend(v[..n - 1].iter().map(|c| base.twist(autom, c, 1)));
    out
}

fn block_size(len: usize, blocks: usize) -> Result<usize> {
    if blocks == 0 || !len.is_multiple_of(blocks) {
        return Err(Error::Precondition(format!("{blocks} blocks do not divide length {len}")));
    }
    Ok(len / blocks)
}

pub fn apply_shift<C: Coefficients>(base: &C, shift: &Shift<C::Elem>, v: &[C::Elem]) -> Result<Vec<C::Elem>> {
    base.validate_autom(shift.autom())?;
    Ok(match shift {
        Shift::Skew { autom } => constacyclic(base, *autom, None, v),
        Shift::Constacyclic { autom, alpha } => constacyclic(base, *autom, Some(alpha), v),
        Shift::SkewBlock { autom, blocks } | Shift::TwistedBlock { autom, blocks, .. } => {
            let r = block_size(v.len(), *blocks)?;
            let mut out: Vec<C::Elem> = Vec::with_capacity(v.len());
            let tail = &v[v.len() - r..];
            match shift {
                Shift::TwistedBlock { alpha, .. } => out.extend(tail.iter().map(|c| base.mul(alpha, &base.twist(*autom, c, 1)))),
                _ => out.extend(tail.iter().map(|c| base.twist(*autom, c, 1))),
            }
            out.extend(v[..v.len() - r].iter().map(|c| base.twist(*autom, c, 1)));
            out
        }
        Shift::BlockwiseConstacyclic { autom, alphas, blocks } => {
            let r = block_size(v.len(), *blocks)?;
            if alphas.len() != 1 && alphas.len() != *blocks {
                return Err(Error::Precondition(format!("{} units given for {blocks} blocks", alphas.len())));
            }
            let mut out = Vec::with_capacity(v.len());
            for (b, chunk) in v.chunks(r.max(1)).enumerate() {
                let a = &alphas[if alphas.len() == 1 { 0 } else { b }];
                out.extend(constacyclic(base, *autom, Some(a), chunk));
            }
            out
        }
    })
}

/// `phi_pi(vartheta_alpha(v)) == rho_{alpha,kl}(phi_pi(v))`, where block `(i,j)`
/// of `rho` uses the coordinate `alpha_ij`.
pub fn pi_image_commutes(ring: &Ring, autom: Autom, alpha: &RingElement, v: &[RingElement]) -> Result<bool> {
    if autom == Autom::Psi {
        return Err(Error::Inapplicable("psi permutes CRT coordinates, so the Gray blocks do not shift independently".into()));
    }
    let left = phi_pi(&apply_shift(ring, &Shift::Constacyclic { autom, alpha: alpha.clone() }, v)?);
    let rho = Shift::BlockwiseConstacyclic { autom, alphas: alpha.crt.clone(), blocks: ring.width() };
    let right = apply_shift(ring.field(), &rho, &phi_pi(v))?;
    Ok(left == right)
}

/// `phi(sigma(v)) == sigma^(kl)(phi(v))`. Needs `kl = 1 (mod |autom|)`.
pub fn phi_skew_commutes(ring: &Ring, autom: Autom, v: &[RingElement]) -> Result<bool> {
    if autom == Autom::Psi {
        return Err(Error::Inapplicable("this identity is stated for Frobenius automorphisms".into()));
    }
    ring.validate_autom(autom)?;
    let order = ring.autom_order(autom) as usize;
    let width = ring.width();
    if width % order != 1 % order {
        return Err(Error::Precondition(format!("kl = {width} is not 1 modulo the automorphism order {order}")));
    }
    let left = phi(&apply_shift(ring, &Shift::Skew { autom }, v)?);
    let sigma = Shift::Skew { autom };
    let mut right = phi(v);
    for _ in 0..width {
        right = apply_shift(ring.field(), &sigma, &right)?;
    }
    Ok(left == right)
}

/// Parameters `[length, dimension, minimum distance]` of the Gray image.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrayParams {
    pub n: usize,
    pub k_dim: usize,
    /// `None` for the zero code.
    pub d: Option<usize>,
    /// Whether sampled codewords stayed in the code under the blockwise
    /// constacyclic shift of the permuted image; `None` when not applicable.
    pub quasi_twisted: Option<bool>,
}

/// Gray image parameters. The minimum distance of a decomposable code is the
/// least Hamming distance of its nonzero components, each found by enumeration;
/// `psi`-codes are enumerated whole.
pub fn gray_image_params<R: Rng + ?Sized>(code: &Code, rng: &mut R, samples: usize) -> Result<GrayParams> {
    let ring = code.ring();
    let n = ring.width() * code.n();
    let k_dim = code.dimension();
    let (d, quasi_twisted) = match code.decompose() {
        Ok(components) => {
            let mut best: Option<usize> = None;
            for c in components {
                if c.dim(code.n()) == 0 {
                    continue;
                }
                let oc = OracleCode::over_field(ring.field(), code.autom(), code.n(), c.alpha, c.gen.coeffs());
                let set = oracle::enumerate_code(&oc)?;
                let dc = oracle::brute_min_distance(&set, Metric::Hamming);
                best = match (best, dc) {
                    (Some(a), Some(b)) => Some(a.min(b)),
                    (a, b) => a.or(b),
                };
            }
            let mut ok = true;
            for _ in 0..samples {
                let word = code.random_codeword(rng);
                let shifted =
                    apply_shift(ring, &Shift::Constacyclic { autom: code.autom(), alpha: code.alpha().clone() }, &word)?;
                ok &= code.contains(&shifted)? && pi_image_commutes(ring, code.autom(), code.alpha(), &word)?;
            }
            (best, Some(ok))
        }
        Err(_) => {
            let set = oracle::enumerate_code(&OracleCode::from_code(code))?;
            (oracle::brute_min_distance(&set, Metric::Gray), None)
        }
    };
    Ok(GrayParams { n, k_dim, d, quasi_twisted })
}
