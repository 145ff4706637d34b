//! The ring `R = F_q[u,v]/<f(u), g(v), uv - vu>` with `f`, `g` split over `F_q`
//! into distinct linear factors.
//!
//! Elements are stored in CRT coordinates `a_ij = r(alpha_i, beta_j)`, flattened
//! with `i` outer and `j` inner. The polynomial form in `u`, `v` is a view computed
//! through the idempotents `eta_ij = eps_i(u) gam_j(v)`.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::autom::Autom;
use crate::error::{Error, Result};
use crate::gf::{trim, Field, FieldElement, FieldSpec};

/// JSON description of a ring. Each of `f` and `g` is given either by its roots
/// (`f_roots`) or by its ascending coefficient list (`f`), which must split into
/// distinct linear factors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingSpec {
    pub field: FieldSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f_roots: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g_roots: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<Vec<u32>>,
}

impl RingSpec {
    pub fn from_roots(field: FieldSpec, f_roots: Vec<u32>, g_roots: Vec<u32>) -> RingSpec {
        RingSpec { field, f_roots: Some(f_roots), f: None, g_roots: Some(g_roots), g: None }
    }
}

/// Element of `R` in CRT coordinates. Serializes as a flat integer array.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RingElement {
    pub crt: Vec<FieldElement>,
}

impl RingElement {
    pub fn is_zero(&self) -> bool {
        self.crt.iter().all(|c| c.is_zero())
    }

    pub fn indices(&self) -> Vec<u32> {
        self.crt.iter().map(|c| c.index()).collect()
    }
}

/// Polynomial in `u`, `v` over `F_q`; `coeffs[a][b]` is the coefficient of `u^a v^b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivPoly {
    pub coeffs: Vec<Vec<FieldElement>>,
}

impl BivPoly {
    pub fn zero(du: usize, dv: usize) -> BivPoly {
        BivPoly { coeffs: vec![vec![FieldElement::ZERO; dv]; du] }
    }

    pub fn get(&self, a: usize, b: usize) -> FieldElement {
        self.coeffs.get(a).and_then(|row| row.get(b)).copied().unwrap_or(FieldElement::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().flatten().all(|c| c.is_zero())
    }

    /// Nonzero terms as `(u degree, v degree, coefficient)`, sorted by degrees.
    pub fn terms(&self) -> Vec<(usize, usize, FieldElement)> {
        let mut out = Vec::new();
        for (a, row) in self.coeffs.iter().enumerate() {
            for (b, &c) in row.iter().enumerate() {
                if !c.is_zero() {
                    out.push((a, b, c));
                }
            }
        }
        out
    }
}

/// The Lagrange idempotents of a ring.
#[derive(Clone, Debug)]
pub struct Idempotents {
    /// `eps_i(u)` as ascending coefficient lists of length `k`.
    pub eps: Vec<Vec<FieldElement>>,
    /// `gam_j(v)` as ascending coefficient lists of length `l`.
    pub gam: Vec<Vec<FieldElement>>,
    /// `eta_ij`, flattened with `i` outer.
    pub eta: Vec<BivPoly>,
}

#[derive(Clone)]
pub struct Ring(Arc<RingData>);

struct RingData {
    field: Field,
    alphas: Vec<FieldElement>,
    betas: Vec<FieldElement>,
    f: Vec<FieldElement>,
    g: Vec<FieldElement>,
    idem: Idempotents,
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.field == other.0.field && self.0.alphas == other.0.alphas && self.0.betas == other.0.betas)
    }
}

impl Eq for Ring {}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring({:?}, f_roots={:?}, g_roots={:?})", self.0.field, self.0.alphas, self.0.betas)
    }
}

/// `prod (x - r)` over the given roots, ascending.
pub(crate) fn poly_from_roots(field: &Field, roots: &[FieldElement]) -> Vec<FieldElement> {
    let mut poly = vec![FieldElement::ONE];
    for &r in roots {
        let mut next = vec![FieldElement::ZERO; poly.len() + 1];
        for (i, &c) in poly.iter().enumerate() {
            next[i + 1] = field.add(next[i + 1], c);
            next[i] = field.sub(next[i], field.mul(c, r));
        }
        poly = next;
    }
    poly
}

/// Lagrange basis polynomials for the given nodes; a single node gives `[1]`.
fn lagrange_basis(field: &Field, nodes: &[FieldElement]) -> Vec<Vec<FieldElement>> {
    let n = nodes.len();
    (0..n)
        .map(|i| {
            let others: Vec<_> = nodes.iter().enumerate().filter(|&(r, _)| r != i).map(|(_, &x)| x).collect();
            let num = poly_from_roots(field, &others);
            let denom = others.iter().fold(FieldElement::ONE, |acc, &x| field.mul(acc, field.sub(nodes[i], x)));
            let scale = field.inv(denom).expect("nodes are distinct");
            num.into_iter().map(|c| field.mul(c, scale)).collect()
        })
        .collect()
}

fn resolve_roots(
    field: &Field,
    which: &'static str,
    roots: &Option<Vec<u32>>,
    coeffs: &Option<Vec<u32>>,
) -> Result<Vec<FieldElement>> {
    let roots = match (roots, coeffs) {
        (Some(_), Some(_)) => {
            return Err(Error::Config(format!("give either {which}_roots or {which}, not both")));
        }
        (None, None) => return Err(Error::Config(format!("missing {which}_roots"))),
        (Some(r), None) => r.iter().map(|&x| field.element(x)).collect::<Result<Vec<_>>>()?,
        (None, Some(c)) => {
            let poly = c.iter().map(|&x| field.element(x)).collect::<Result<Vec<_>>>()?;
            field.distinct_split_roots(&poly)?.ok_or(Error::NotSplit { which })?
        }
    };
    if roots.is_empty() {
        return Err(Error::Config(format!("{which} must have at least one root")));
    }
    let mut seen = HashSet::new();
    for r in &roots {
        if !seen.insert(*r) {
            return Err(Error::DuplicateRoot { which, root: r.index() });
        }
    }
    Ok(roots)
}

impl Ring {
    pub fn new(spec: &RingSpec) -> Result<Ring> {
        let field = Field::new(&spec.field)?;
        let alphas = resolve_roots(&field, "f", &spec.f_roots, &spec.f)?;
        let betas = resolve_roots(&field, "g", &spec.g_roots, &spec.g)?;
        Ok(Ring::from_parts(field, alphas, betas))
    }

    pub fn from_parts(field: Field, alphas: Vec<FieldElement>, betas: Vec<FieldElement>) -> Ring {
        let eps = lagrange_basis(&field, &alphas);
        let gam = lagrange_basis(&field, &betas);
        let mut eta = Vec::with_capacity(alphas.len() * betas.len());
        for e in &eps {
            for g in &gam {
                let coeffs = e.iter().map(|&a| g.iter().map(|&b| field.mul(a, b)).collect()).collect();
                eta.push(BivPoly { coeffs });
            }
        }
        let f = poly_from_roots(&field, &alphas);
        let g = poly_from_roots(&field, &betas);
        Ring(Arc::new(RingData { field, alphas, betas, f, g, idem: Idempotents { eps, gam, eta } }))
    }

    pub fn field(&self) -> &Field {
        &self.0.field
    }

    /// Number of roots of `f`.
    pub fn k(&self) -> usize {
        self.0.alphas.len()
    }

    /// Number of roots of `g`.
    pub fn l(&self) -> usize {
        self.0.betas.len()
    }

    /// Number of CRT coordinates, `k * l`.
    pub fn width(&self) -> usize {
        self.k() * self.l()
    }

    /// True when `k = l = 1`, in which case `R` is just `F_q`.
    pub fn is_degenerate(&self) -> bool {
        self.width() == 1
    }

    pub fn f_roots(&self) -> &[FieldElement] {
        &self.0.alphas
    }

    pub fn g_roots(&self) -> &[FieldElement] {
        &self.0.betas
    }

    pub fn f_poly(&self) -> &[FieldElement] {
        &self.0.f
    }

    pub fn g_poly(&self) -> &[FieldElement] {
        &self.0.g
    }

    pub fn idempotents(&self) -> &Idempotents {
        &self.0.idem
    }

    pub fn spec(&self) -> RingSpec {
        RingSpec::from_roots(
            self.0.field.spec(),
            self.0.alphas.iter().map(|a| a.index()).collect(),
            self.0.betas.iter().map(|b| b.index()).collect(),
        )
    }

    /// Flat index of coordinate `(i, j)` (zero based).
    pub fn coord(&self, i: usize, j: usize) -> usize {
        i * self.l() + j
    }

    pub fn zero(&self) -> RingElement {
        self.from_scalar(FieldElement::ZERO)
    }

    pub fn one(&self) -> RingElement {
        self.from_scalar(FieldElement::ONE)
    }

    pub fn from_scalar(&self, c: FieldElement) -> RingElement {
        RingElement { crt: vec![c; self.width()] }
    }

    /// The idempotent `eta_ij` (zero-based indices).
    pub fn eta(&self, i: usize, j: usize) -> RingElement {
        let mut crt = vec![FieldElement::ZERO; self.width()];
        crt[self.coord(i, j)] = FieldElement::ONE;
        RingElement { crt }
    }

    /// `eps_i` as a ring element: 1 on every coordinate of block `i`.
    pub fn eps(&self, i: usize) -> RingElement {
        let mut crt = vec![FieldElement::ZERO; self.width()];
        for j in 0..self.l() {
            crt[self.coord(i, j)] = FieldElement::ONE;
        }
        RingElement { crt }
    }

    /// `gam_j` as a ring element: 1 on coordinate `j` of every block.
    pub fn gam(&self, j: usize) -> RingElement {
        let mut crt = vec![FieldElement::ZERO; self.width()];
        for i in 0..self.k() {
            crt[self.coord(i, j)] = FieldElement::ONE;
        }
        RingElement { crt }
    }

    /// Element `u`, whose coordinates are `a_ij = alpha_i`.
    pub fn u(&self) -> RingElement {
        let crt = (0..self.width()).map(|c| self.0.alphas[c / self.l()]).collect();
        RingElement { crt }
    }

    /// Element `v`, whose coordinates are `a_ij = beta_j`.
    pub fn v(&self) -> RingElement {
        let crt = (0..self.width()).map(|c| self.0.betas[c % self.l()]).collect();
        RingElement { crt }
    }

    pub fn element(&self, indices: &[u32]) -> Result<RingElement> {
        if indices.len() != self.width() {
            return Err(Error::RingMismatch { expected: self.width(), got: indices.len() });
        }
        let crt = indices.iter().map(|&x| self.0.field.element(x)).collect::<Result<Vec<_>>>()?;
        Ok(RingElement { crt })
    }

    pub fn check(&self, a: &RingElement) -> Result<()> {
        if a.crt.len() != self.width() {
            return Err(Error::RingMismatch { expected: self.width(), got: a.crt.len() });
        }
        a.crt.iter().try_for_each(|&c| self.0.field.check(c))
    }

    fn zip(&self, a: &RingElement, b: &RingElement, op: impl Fn(FieldElement, FieldElement) -> FieldElement) -> RingElement {
        RingElement { crt: a.crt.iter().zip(&b.crt).map(|(&x, &y)| op(x, y)).collect() }
    }

    pub fn add(&self, a: &RingElement, b: &RingElement) -> RingElement {
        self.zip(a, b, |x, y| self.0.field.add(x, y))
    }

    pub fn sub(&self, a: &RingElement, b: &RingElement) -> RingElement {
        self.zip(a, b, |x, y| self.0.field.sub(x, y))
    }

    pub fn mul(&self, a: &RingElement, b: &RingElement) -> RingElement {
        self.zip(a, b, |x, y| self.0.field.mul(x, y))
    }

    pub fn neg(&self, a: &RingElement) -> RingElement {
        RingElement { crt: a.crt.iter().map(|&x| self.0.field.neg(x)).collect() }
    }

    pub fn scale(&self, c: FieldElement, a: &RingElement) -> RingElement {
        RingElement { crt: a.crt.iter().map(|&x| self.0.field.mul(c, x)).collect() }
    }

    pub fn try_add(&self, a: &RingElement, b: &RingElement) -> Result<RingElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add(a, b))
    }

    pub fn try_mul(&self, a: &RingElement, b: &RingElement) -> Result<RingElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul(a, b))
    }

    pub fn is_unit(&self, a: &RingElement) -> bool {
        a.crt.iter().all(|c| !c.is_zero())
    }

    pub fn inverse(&self, a: &RingElement) -> Option<RingElement> {
        let crt = a.crt.iter().map(|&x| self.0.field.inv(x).ok()).collect::<Option<Vec<_>>>()?;
        Some(RingElement { crt })
    }

    /// `psi`: moves the coefficient of `eta_{i,j-1}` to `eta_{i,j}`.
    pub fn psi(&self, a: &RingElement) -> RingElement {
        self.psi_pow(a, 1)
    }

    pub fn psi_pow(&self, a: &RingElement, times: u64) -> RingElement {
        let l = self.l();
        let shift = (times % l as u64) as usize;
        let mut crt = a.crt.clone();
        for block in crt.chunks_mut(l) {
            block.rotate_right(shift);
        }
        RingElement { crt }
    }

    /// `theta_t`: the Frobenius power `x -> x^(p^t)` on every coordinate.
    pub fn theta(&self, a: &RingElement, t: u32) -> Result<RingElement> {
        self.validate_autom(Autom::Theta(t))?;
        Ok(self.theta_pow(a, t as u64))
    }

    fn theta_pow(&self, a: &RingElement, e: u64) -> RingElement {
        RingElement { crt: a.crt.iter().map(|&x| self.0.field.frobenius_pow(x, e)).collect() }
    }

    /// Checks that `autom` is defined on this ring (`theta_t` needs `t | s`).
    pub fn validate_autom(&self, autom: Autom) -> Result<()> {
        match autom {
            Autom::Identity | Autom::Psi => Ok(()),
            Autom::Theta(t) => {
                let s = self.0.field.s();
                if t == 0 || t > s || !s.is_multiple_of(t) {
                    Err(Error::FrobeniusRange { t, s })
                } else {
                    Ok(())
                }
            }
        }
    }

    /// `autom` applied `times` times. Assumes `autom` was validated.
    pub fn apply_autom(&self, autom: Autom, a: &RingElement, times: u64) -> RingElement {
        match autom {
            Autom::Identity => a.clone(),
            Autom::Psi => self.psi_pow(a, times),
            Autom::Theta(t) => self.theta_pow(a, t as u64 * times),
        }
    }

    /// Order of `autom` as a ring automorphism: `l` for `psi`, `s/t` for `theta_t`.
    pub fn autom_order(&self, autom: Autom) -> u64 {
        match autom {
            Autom::Identity => 1,
            Autom::Psi => self.l() as u64,
            Autom::Theta(t) => (self.0.field.s() / t) as u64,
        }
    }

    /// Ring element from a polynomial in `u`, `v`, by evaluation at every `(alpha_i, beta_j)`.
    pub fn from_uv_poly(&self, poly: &BivPoly) -> RingElement {
        let field = &self.0.field;
        let mut crt = Vec::with_capacity(self.width());
        for &a in &self.0.alphas {
            // evaluate in u first, leaving a polynomial in v
            let dv = poly.coeffs.iter().map(|r| r.len()).max().unwrap_or(0);
            let mut in_v = vec![FieldElement::ZERO; dv];
            let mut apow = FieldElement::ONE;
            for row in &poly.coeffs {
                for (b, &c) in row.iter().enumerate() {
                    in_v[b] = field.add(in_v[b], field.mul(c, apow));
                }
                apow = field.mul(apow, a);
            }
            for &b in &self.0.betas {
                crt.push(field.eval(&in_v, b));
            }
        }
        RingElement { crt }
    }

    /// The reduced polynomial `sum eta_ij a_ij`, of degree `< k` in `u` and `< l` in `v`.
    pub fn to_uv_poly(&self, a: &RingElement) -> BivPoly {
        let field = &self.0.field;
        let mut out = BivPoly::zero(self.k(), self.l());
        for (eta, &c) in self.0.idem.eta.iter().zip(&a.crt) {
            if c.is_zero() {
                continue;
            }
            for (x, row) in eta.coeffs.iter().enumerate() {
                for (y, &e) in row.iter().enumerate() {
                    out.coeffs[x][y] = field.add(out.coeffs[x][y], field.mul(e, c));
                }
            }
        }
        out
    }

    /// Product of two polynomials in `u`, `v`, reduced modulo `f(u)` and `g(v)`.
    pub fn biv_mul(&self, a: &BivPoly, b: &BivPoly) -> BivPoly {
        let field = &self.0.field;
        let du = a.coeffs.len() + b.coeffs.len();
        let dv = a.coeffs.iter().map(|r| r.len()).max().unwrap_or(0) + b.coeffs.iter().map(|r| r.len()).max().unwrap_or(0);
        let mut prod = BivPoly::zero(du.max(1), dv.max(1));
        for (x1, r1) in a.coeffs.iter().enumerate() {
            for (y1, &c1) in r1.iter().enumerate() {
                if c1.is_zero() {
                    continue;
                }
                for (x2, r2) in b.coeffs.iter().enumerate() {
                    for (y2, &c2) in r2.iter().enumerate() {
                        let t = &mut prod.coeffs[x1 + x2][y1 + y2];
                        *t = field.add(*t, field.mul(c1, c2));
                    }
                }
            }
        }
        self.biv_reduce(&prod)
    }

    pub fn biv_add(&self, a: &BivPoly, b: &BivPoly) -> BivPoly {
        let field = &self.0.field;
        let du = a.coeffs.len().max(b.coeffs.len());
        let dv = a.coeffs.iter().chain(&b.coeffs).map(|r| r.len()).max().unwrap_or(0);
        let mut out = BivPoly::zero(du, dv);
        for x in 0..du {
            for y in 0..dv {
                out.coeffs[x][y] = field.add(a.get(x, y), b.get(x, y));
            }
        }
        out
    }

    /// Reduction modulo `f(u)` and `g(v)` to a `k` by `l` table.
    pub fn biv_reduce(&self, poly: &BivPoly) -> BivPoly {
        let field = &self.0.field;
        let (k, l) = (self.k(), self.l());
        let dv = poly.coeffs.iter().map(|r| r.len()).max().unwrap_or(0);
        // reduce each column (fixed v power) in u
        let mut cols: Vec<Vec<FieldElement>> = (0..dv)
            .map(|y| {
                let col: Vec<_> = poly.coeffs.iter().map(|r| r.get(y).copied().unwrap_or(FieldElement::ZERO)).collect();
                poly_rem_monic(field, &col, &self.0.f)
            })
            .collect();
        cols.resize(dv.max(1), Vec::new());
        let mut out = BivPoly::zero(k, l);
        for x in 0..k {
            let row: Vec<_> = cols.iter().map(|c| c.get(x).copied().unwrap_or(FieldElement::ZERO)).collect();
            let red = poly_rem_monic(field, &row, &self.0.g);
            for (y, c) in red.into_iter().enumerate() {
                out.coeffs[x][y] = c;
            }
        }
        out
    }

    /// Checks `eta_ij^2 = eta_ij`, `eta_ij eta_rs = 0` and `sum eta_ij = 1` on the
    /// polynomial representatives. Returns a description of the first failure.
    pub fn check_idempotent_identities(&self) -> std::result::Result<(), String> {
        let eta = &self.0.idem.eta;
        let zero = BivPoly::zero(self.k(), self.l());
        let mut sum = zero.clone();
        for (a, ea) in eta.iter().enumerate() {
            sum = self.biv_add(&sum, ea);
            for (b, eb) in eta.iter().enumerate() {
                let prod = self.biv_mul(ea, eb);
                let want = if a == b { self.biv_reduce(ea) } else { zero.clone() };
                if prod != want {
                    return Err(format!("eta[{a}] * eta[{b}] has the wrong value"));
                }
            }
        }
        let mut one = zero;
        one.coeffs[0][0] = FieldElement::ONE;
        if self.biv_reduce(&sum) != one {
            return Err("sum of idempotents is not 1".into());
        }
        Ok(())
    }

    /// All units `sum (+-1) eta_ij`; a single candidate in characteristic 2.
    pub fn selfdual_unit_candidates(&self) -> Vec<RingElement> {
        let field = &self.0.field;
        if field.p() == 2 {
            return vec![self.one()];
        }
        let w = self.width();
        let minus = field.from_int(-1);
        (0..1u64 << w)
            .map(|mask| RingElement { crt: (0..w).map(|c| if mask >> c & 1 == 1 { minus } else { FieldElement::ONE }).collect() })
            .collect()
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> RingElement {
        RingElement { crt: (0..self.width()).map(|_| self.0.field.random(rng)).collect() }
    }

    pub fn random_unit<R: Rng + ?Sized>(&self, rng: &mut R) -> RingElement {
        RingElement { crt: (0..self.width()).map(|_| self.0.field.random_nonzero(rng)).collect() }
    }
}

/// Remainder of `a` by a monic polynomial over the field.
pub(crate) fn poly_rem_monic(field: &Field, a: &[FieldElement], m: &[FieldElement]) -> Vec<FieldElement> {
    let dm = m.len() - 1;
    let mut r = a.to_vec();
    while r.len() > dm {
        let c = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        if !c.is_zero() {
            for (k, &mk) in m.iter().enumerate() {
                r[shift + k] = field.sub(r[shift + k], field.mul(c, mk));
            }
        }
        r.pop();
    }
    let n = trim(&r).len();
    r.truncate(n);
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn fs(p: u32, s: u32, modulus: Option<Vec<u32>>) -> FieldSpec {
        FieldSpec { p, s, modulus }
    }

    fn f5_ring() -> Ring {
        Ring::new(&RingSpec::from_roots(fs(5, 1, None), vec![0, 1], vec![0, 1])).unwrap()
    }

    // F_9 with b^2 + b - 1 = 0, f = u^3 - u, g = v^2 - 1
    fn f9_ring() -> Ring {
        Ring::new(&RingSpec::from_roots(fs(3, 2, Some(vec![2, 1, 1])), vec![0, 1, 2], vec![1, 2])).unwrap()
    }

    fn ints(field: &Field, rows: &[&[i64]]) -> BivPoly {
        BivPoly { coeffs: rows.iter().map(|r| r.iter().map(|&x| field.from_int(x)).collect()).collect() }
    }

    #[test]
    fn f5_idempotents_are_lagrange_products() {
        let r = f5_ring();
        let f = r.field().clone();
        let eta = &r.idempotents().eta;
        // (1-u)(1-v), (1-u)v, u(1-v), uv
        assert_eq!(eta[0], ints(&f, &[&[1, -1], &[-1, 1]]));
        assert_eq!(eta[1], ints(&f, &[&[0, 1], &[0, -1]]));
        assert_eq!(eta[2], ints(&f, &[&[0, 0], &[1, -1]]));
        assert_eq!(eta[3], ints(&f, &[&[0, 0], &[0, 1]]));
        assert_eq!(r.to_uv_poly(&r.eta(0, 0)), eta[0]);
        r.check_idempotent_identities().unwrap();
    }

    #[test]
    fn f4_eps_one() {
        let r = Ring::new(&RingSpec::from_roots(fs(2, 2, Some(vec![1, 1, 1])), vec![0, 1, 2], vec![0, 1])).unwrap();
        let f = r.field();
        let b = f.generator();
        let idem = r.idempotents();
        // (u-1)(u-b)/b = (u^2 + (1+b)u + b) / b
        let inv_b = f.inv(b).unwrap();
        let want: Vec<_> = [b, f.add(FieldElement::ONE, b), FieldElement::ONE].iter().map(|&c| f.mul(c, inv_b)).collect();
        assert_eq!(idem.eps[0], want);
        assert_eq!(idem.gam[0], vec![FieldElement::ONE, FieldElement::ONE]);
        assert_eq!(idem.gam[1], vec![FieldElement::ZERO, FieldElement::ONE]);
        r.check_idempotent_identities().unwrap();
    }

    #[test]
    fn f8_eps() {
        let r = Ring::new(&RingSpec::from_roots(fs(2, 3, Some(vec![1, 1, 0, 1])), vec![0, 1], vec![0, 1, 2, 4])).unwrap();
        let idem = r.idempotents();
        assert_eq!(idem.eps[0], vec![FieldElement::ONE, FieldElement::ONE]);
        assert_eq!(idem.eps[1], vec![FieldElement::ZERO, FieldElement::ONE]);
        r.check_idempotent_identities().unwrap();
    }

    #[test]
    fn from_uv_evaluates() {
        let r = f9_ring();
        let f = r.field().clone();
        // 1 - u^2 - u^2 v
        let poly = ints(&f, &[&[1], &[0], &[-1, -1]]);
        let a = r.from_uv_poly(&poly);
        let want: Vec<_> = [1, 1, -1, 1, -1, 1].iter().map(|&x| f.from_int(x)).collect();
        assert_eq!(a.crt, want);
        assert!(r.is_unit(&a));
        assert_eq!(r.from_uv_poly(&ints(&f, &[&[0], &[1]])), r.u());
        assert_eq!(r.from_uv_poly(&ints(&f, &[&[1]])), r.one());
    }

    #[test]
    fn to_uv_of_sign_unit() {
        // F_25 with f roots {0,1,-1} and g roots {0,1}
        let r = Ring::new(&RingSpec::from_roots(fs(5, 2, Some(vec![2, 4, 1])), vec![0, 1, 4], vec![0, 1])).unwrap();
        let f = r.field().clone();
        let a = r.element(&[1, 1, 4, 1, 4, 1]).unwrap();
        // 1 - 2u^2 + 2u^2 v
        assert_eq!(r.to_uv_poly(&a), ints(&f, &[&[1, 0], &[0, 0], &[-2, 2]]));
        assert_eq!(r.to_uv_poly(&r.one()), ints(&f, &[&[1, 0], &[0, 0], &[0, 0]]));
    }

    #[test]
    fn psi_moves_gammas_forward() {
        let r = Ring::new(&RingSpec::from_roots(fs(2, 2, Some(vec![1, 1, 1])), vec![0, 1, 2], vec![0, 1])).unwrap();
        let one_minus_v = r.sub(&r.one(), &r.v());
        assert_eq!(r.psi(&one_minus_v), r.v());
        assert_eq!(r.psi(&r.v()), one_minus_v);

        let r = Ring::new(&RingSpec::from_roots(fs(2, 3, Some(vec![1, 1, 0, 1])), vec![0, 1], vec![0, 1, 2, 4])).unwrap();
        for j in 0..4 {
            assert_eq!(r.psi(&r.gam(j)), r.gam((j + 1) % 4));
        }
        for i in 0..2 {
            assert_eq!(r.psi(&r.eps(i)), r.eps(i));
        }
    }

    #[test]
    fn theta_on_f4() {
        let r = Ring::new(&RingSpec::from_roots(fs(2, 2, Some(vec![1, 1, 1])), vec![0, 1], vec![0, 1, 2])).unwrap();
        let b = r.field().generator();
        let a = r.from_scalar(b);
        assert_eq!(r.theta(&a, 1).unwrap(), r.from_scalar(r.field().mul(b, b)));
        assert_eq!(r.theta(&a, 2).unwrap(), a);
        assert!(r.theta(&a, 3).is_err());
        assert_eq!(r.theta(&r.one(), 1).unwrap(), r.one());
    }

    #[test]
    fn units_and_candidates() {
        let r = f5_ring();
        assert!(r.is_unit(&r.one()));
        assert!(!r.is_unit(&r.eta(0, 0)));
        assert_eq!(r.selfdual_unit_candidates().len(), 16);
        assert_eq!(f9_ring().selfdual_unit_candidates().len(), 64);
        let r2 = Ring::new(&RingSpec::from_roots(fs(2, 2, None), vec![0, 1], vec![0, 1])).unwrap();
        assert_eq!(r2.selfdual_unit_candidates(), vec![r2.one()]);
        for a in r.selfdual_unit_candidates() {
            assert_eq!(r.mul(&a, &a), r.one());
        }
    }

    #[test]
    fn rejects_bad_specs() {
        let dup = RingSpec::from_roots(fs(5, 1, None), vec![0, 0], vec![1]);
        assert!(matches!(Ring::new(&dup), Err(Error::DuplicateRoot { which: "f", root: 0 })));
        let not_split =
            RingSpec { f_roots: None, f: Some(vec![1, 0, 1]), ..RingSpec::from_roots(fs(3, 1, None), vec![], vec![0]) };
        assert!(matches!(Ring::new(&not_split), Err(Error::NotSplit { which: "f" })));
        let r = f5_ring();
        assert!(r.element(&[1, 2, 3]).is_err());
        assert!(r.element(&[1, 2, 3, 7]).is_err());
    }

    #[test]
    fn coefficient_form_matches_roots() {
        // u^3 - u over F_9 and v^2 - 1
        let spec = RingSpec {
            field: fs(3, 2, Some(vec![2, 1, 1])),
            f_roots: None,
            f: Some(vec![0, 2, 0, 1]),
            g_roots: None,
            g: Some(vec![2, 0, 1]),
        };
        assert_eq!(Ring::new(&spec).unwrap(), f9_ring());
    }

    #[test]
    fn serde_round_trip() {
        let r = f9_ring();
        let json = serde_json::to_string(&r.spec()).unwrap();
        let back: RingSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(Ring::new(&back).unwrap(), r);
        let a = r.u();
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, "[0,0,1,1,2,2]");
    }

    proptest! {
        #[test]
        fn uv_round_trip(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for r in [f5_ring(), f9_ring()] {
                let a = r.random(&mut rng);
                let poly = r.to_uv_poly(&a);
                prop_assert_eq!(r.from_uv_poly(&poly), a);
                prop_assert_eq!(r.to_uv_poly(&r.from_uv_poly(&poly)), poly);
            }
        }

        #[test]
        fn uv_product_matches_crt_product(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let r = f9_ring();
            let (a, b) = (r.random(&mut rng), r.random(&mut rng));
            let prod = r.biv_mul(&r.to_uv_poly(&a), &r.to_uv_poly(&b));
            prop_assert_eq!(r.from_uv_poly(&prod), r.mul(&a, &b));
        }

        #[test]
        fn automorphism_laws(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let r = f9_ring();
            let (a, b) = (r.random(&mut rng), r.random(&mut rng));
            for autom in [Autom::Psi, Autom::Theta(1), Autom::Theta(2)] {
                let m = |x: &RingElement| r.apply_autom(autom, x, 1);
                prop_assert_eq!(m(&r.mul(&a, &b)), r.mul(&m(&a), &m(&b)));
                prop_assert_eq!(m(&r.add(&a, &b)), r.add(&m(&a), &m(&b)));
                prop_assert_eq!(r.apply_autom(autom, &a, r.autom_order(autom)), a.clone());
            }
            let c = r.from_scalar(r.field().random(&mut rng));
            prop_assert_eq!(r.psi(&c), c);
        }

        #[test]
        fn unit_iff_invertible(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let r = f5_ring();
            let a = r.random(&mut rng);
            let has_inverse = r.inverse(&a).map(|b| r.mul(&a, &b) == r.one()).unwrap_or(false);
            prop_assert_eq!(r.is_unit(&a), has_inverse);
        }
    }
}
