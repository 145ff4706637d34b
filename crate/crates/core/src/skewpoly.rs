//! Skew polynomials `sum c_i x^i` with product `a x^i * b x^j = a autom^i(b) x^(i+j)`.
//!
//! Coefficients live either in `F_q` or in `R`; both implement [`Coefficients`].
//! A [`SkewRing`] pairs a coefficient ring with an automorphism and performs all
//! arithmetic. Every [`SkewPoly`] carries its automorphism tag, and operations
//! reject operands whose tag differs from the ring's.

use std::fmt::Debug;
use std::hash::Hash;

use crate::autom::Autom;
use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};
use crate::ring::{Ring, RingElement};

/// Coefficient ring of a skew polynomial ring.
pub trait Coefficients: Clone + Debug {
    type Elem: Clone + Debug + PartialEq + Eq + Hash;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inverse(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn check_elem(&self, a: &Self::Elem) -> Result<()>;
    fn validate_autom(&self, autom: Autom) -> Result<()>;
    /// `autom` applied `times` times; `autom` must already be validated.
    fn twist(&self, autom: Autom, a: &Self::Elem, times: u64) -> Self::Elem;
    fn autom_order(&self, autom: Autom) -> u64;
    fn random<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;
}

impl Coefficients for Field {
    type Elem = FieldElement;

    fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }
    fn one(&self) -> FieldElement {
        FieldElement::ONE
    }
    fn is_zero(&self, a: &FieldElement) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        Field::add(self, *a, *b)
    }
    fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        Field::sub(self, *a, *b)
    }
    fn neg(&self, a: &FieldElement) -> FieldElement {
        Field::neg(self, *a)
    }
    fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        Field::mul(self, *a, *b)
    }
    fn inverse(&self, a: &FieldElement) -> Option<FieldElement> {
        self.inv(*a).ok()
    }
    fn check_elem(&self, a: &FieldElement) -> Result<()> {
        self.check(*a)
    }
    fn validate_autom(&self, autom: Autom) -> Result<()> {
        match autom {
            Autom::Identity => Ok(()),
            Autom::Psi => Err(Error::UnsupportedAutom(autom)),
            Autom::Theta(t) => {
                if t == 0 || t > self.s() || !self.s().is_multiple_of(t) {
                    Err(Error::FrobeniusRange { t, s: self.s() })
                } else {
                    Ok(())
                }
            }
        }
    }
    fn twist(&self, autom: Autom, a: &FieldElement, times: u64) -> FieldElement {
        match autom {
            Autom::Theta(t) => self.frobenius_pow(*a, t as u64 * times),
            _ => *a,
        }
    }
    fn autom_order(&self, autom: Autom) -> u64 {
        match autom {
            Autom::Theta(t) => (self.s() / t) as u64,
            _ => 1,
        }
    }
    fn random<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        Field::random(self, rng)
    }
}

impl Coefficients for Ring {
    type Elem = RingElement;

    fn zero(&self) -> RingElement {
        Ring::zero(self)
    }
    fn one(&self) -> RingElement {
        Ring::one(self)
    }
    fn is_zero(&self, a: &RingElement) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &RingElement, b: &RingElement) -> RingElement {
        Ring::add(self, a, b)
    }
    fn sub(&self, a: &RingElement, b: &RingElement) -> RingElement {
        Ring::sub(self, a, b)
    }
    fn neg(&self, a: &RingElement) -> RingElement {
        Ring::neg(self, a)
    }
    fn mul(&self, a: &RingElement, b: &RingElement) -> RingElement {
        Ring::mul(self, a, b)
    }
    fn inverse(&self, a: &RingElement) -> Option<RingElement> {
        Ring::inverse(self, a)
    }
    fn check_elem(&self, a: &RingElement) -> Result<()> {
        self.check(a)
    }
    fn validate_autom(&self, autom: Autom) -> Result<()> {
        Ring::validate_autom(self, autom)
    }
    fn twist(&self, autom: Autom, a: &RingElement, times: u64) -> RingElement {
        self.apply_autom(autom, a, times)
    }
    fn autom_order(&self, autom: Autom) -> u64 {
        Ring::autom_order(self, autom)
    }
    fn random<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> RingElement {
        Ring::random(self, rng)
    }
}

/// Skew polynomial with ascending coefficients; trailing zeros are trimmed, so the
/// zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SkewPoly<E> {
    coeffs: Vec<E>,
    autom: Autom,
}

impl<E> SkewPoly<E> {
    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }

    pub fn autom(&self) -> Autom {
        self.autom
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&E> {
        self.coeffs.last()
    }

    pub fn coeff(&self, d: usize) -> Option<&E> {
        self.coeffs.get(d)
    }
}

/// Quotient and remainder.
pub type DivRem<E> = (SkewPoly<E>, SkewPoly<E>);

/// `C[x; autom]` for a coefficient ring `C`.
#[derive(Clone, Debug)]
pub struct SkewRing<C: Coefficients> {
    base: C,
    autom: Autom,
}

impl<C: Coefficients> SkewRing<C> {
    pub fn new(base: C, autom: Autom) -> Result<Self> {
        base.validate_autom(autom)?;
        Ok(SkewRing { base, autom })
    }

    pub fn base(&self) -> &C {
        &self.base
    }

    pub fn autom(&self) -> Autom {
        self.autom
    }

    /// Order of the automorphism.
    pub fn autom_order(&self) -> u64 {
        self.base.autom_order(self.autom)
    }

    pub fn twist(&self, a: &C::Elem, times: u64) -> C::Elem {
        self.base.twist(self.autom, a, times)
    }

    pub fn poly(&self, mut coeffs: Vec<C::Elem>) -> SkewPoly<C::Elem> {
        while coeffs.last().is_some_and(|c| self.base.is_zero(c)) {
            coeffs.pop();
        }
        SkewPoly { coeffs, autom: self.autom }
    }

    /// Like [`SkewRing::poly`] but validates every coefficient.
    pub fn try_poly(&self, coeffs: Vec<C::Elem>) -> Result<SkewPoly<C::Elem>> {
        coeffs.iter().try_for_each(|c| self.base.check_elem(c))?;
        Ok(self.poly(coeffs))
    }

    pub fn zero(&self) -> SkewPoly<C::Elem> {
        self.poly(Vec::new())
    }

    pub fn one(&self) -> SkewPoly<C::Elem> {
        self.poly(vec![self.base.one()])
    }

    pub fn constant(&self, c: C::Elem) -> SkewPoly<C::Elem> {
        self.poly(vec![c])
    }

    /// `c x^d`.
    pub fn monomial(&self, c: C::Elem, d: usize) -> SkewPoly<C::Elem> {
        let mut coeffs = vec![self.base.zero(); d];
        coeffs.push(c);
        self.poly(coeffs)
    }

    /// `x^n - alpha`.
    pub fn x_n_minus(&self, n: usize, alpha: &C::Elem) -> SkewPoly<C::Elem> {
        let mut coeffs = vec![self.base.zero(); n + 1];
        coeffs[0] = self.base.neg(alpha);
        coeffs[n] = self.base.add(&coeffs[n], &self.base.one());
        self.poly(coeffs)
    }

    /// Rejects a polynomial built for a different automorphism.
    pub fn check(&self, f: &SkewPoly<C::Elem>) -> Result<()> {
        if f.autom != self.autom {
            return Err(Error::AutomMismatch { left: self.autom, right: f.autom });
        }
        f.coeffs.iter().try_for_each(|c| self.base.check_elem(c))
    }

    fn same_tag(&self, a: &SkewPoly<C::Elem>, b: &SkewPoly<C::Elem>) -> Result<()> {
        for f in [a, b] {
            if f.autom != self.autom {
                return Err(Error::AutomMismatch { left: self.autom, right: f.autom });
            }
        }
        Ok(())
    }

    pub fn add(&self, a: &SkewPoly<C::Elem>, b: &SkewPoly<C::Elem>) -> Result<SkewPoly<C::Elem>> {
        self.same_tag(a, b)?;
        let n = a.coeffs.len().max(b.coeffs.len());
        let zero = self.base.zero();
        let coeffs = (0..n).map(|i| self.base.add(a.coeffs.get(i).unwrap_or(&zero), b.coeffs.get(i).unwrap_or(&zero))).collect();
        Ok(self.poly(coeffs))
    }

    pub fn sub(&self, a: &SkewPoly<C::Elem>, b: &SkewPoly<C::Elem>) -> Result<SkewPoly<C::Elem>> {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &SkewPoly<C::Elem>) -> SkewPoly<C::Elem> {
        SkewPoly { coeffs: a.coeffs.iter().map(|c| self.base.neg(c)).collect(), autom: a.autom }
    }

    /// The skew product `a * b`.
    pub fn mul(&self, a: &SkewPoly<C::Elem>, b: &SkewPoly<C::Elem>) -> Result<SkewPoly<C::Elem>> {
        self.same_tag(a, b)?;
        if a.is_zero() || b.is_zero() {
            return Ok(self.zero());
        }
        let mut out = vec![self.base.zero(); a.coeffs.len() + b.coeffs.len() - 1];
        let order = self.autom_order();
        // twisted copies of b, one per residue of i modulo the automorphism order
        let mut twisted: Vec<Option<Vec<C::Elem>>> = vec![None; order.min(a.coeffs.len() as u64) as usize];
        for (i, ai) in a.coeffs.iter().enumerate() {
            if self.base.is_zero(ai) {
                continue;
            }
            let slot = (i as u64 % order) as usize;
            let tb = twisted[slot].get_or_insert_with(|| b.coeffs.iter().map(|c| self.twist(c, i as u64)).collect());
            for (j, bj) in tb.iter().enumerate() {
                out[i + j] = self.base.add(&out[i + j], &self.base.mul(ai, bj));
            }
        }
        Ok(self.poly(out))
    }

    /// `c * f` (left scalar multiplication).
    pub fn left_scale(&self, c: &C::Elem, f: &SkewPoly<C::Elem>) -> SkewPoly<C::Elem> {
        self.poly(f.coeffs.iter().map(|x| self.base.mul(c, x)).collect())
    }

    /// Right division: `f = q * g + r` with `deg r < deg g`. The leading coefficient
    /// of `g` must be a unit.
    pub fn right_divrem(&self, f: &SkewPoly<C::Elem>, g: &SkewPoly<C::Elem>) -> Result<DivRem<C::Elem>> {
        self.same_tag(f, g)?;
        let dg = g.degree().ok_or(Error::ZeroPolynomial)?;
        let lead = g.leading().unwrap();
        let lead_inv = self.base.inverse(lead).ok_or(Error::NonUnitLeading)?;
        let order = self.autom_order();
        // theta^d(lc g)^-1 depends only on d modulo the order
        let inv_twists: Vec<C::Elem> = (0..order).map(|d| self.twist(&lead_inv, d)).collect();

        let mut r = f.coeffs.clone();
        let len_q = r.len().saturating_sub(dg);
        let mut q = vec![self.base.zero(); len_q];
        while r.len() > dg {
            let top = r.len() - 1;
            let c = r[top].clone();
            if !self.base.is_zero(&c) {
                let d = top - dg;
                let factor = self.base.mul(&c, &inv_twists[(d as u64 % order) as usize]);
                for (k, gk) in g.coeffs.iter().enumerate() {
                    let term = self.base.mul(&factor, &self.twist(gk, d as u64));
                    r[d + k] = self.base.sub(&r[d + k], &term);
                }
                q[d] = factor;
            }
            r.pop();
        }
        Ok((self.poly(q), self.poly(r)))
    }

    pub fn rem(&self, f: &SkewPoly<C::Elem>, g: &SkewPoly<C::Elem>) -> Result<SkewPoly<C::Elem>> {
        Ok(self.right_divrem(f, g)?.1)
    }

    /// Whether `g` is a right divisor of `f`.
    pub fn is_right_divisor(&self, g: &SkewPoly<C::Elem>, f: &SkewPoly<C::Elem>) -> Result<bool> {
        Ok(self.rem(f, g)?.is_zero())
    }

    /// Makes the leading coefficient 1 by left multiplication with its inverse.
    pub fn monic(&self, f: &SkewPoly<C::Elem>) -> Result<SkewPoly<C::Elem>> {
        let lead = f.leading().ok_or(Error::ZeroPolynomial)?;
        let inv = self.base.inverse(lead).ok_or(Error::NonUnitLeading)?;
        Ok(self.left_scale(&inv, f))
    }

    /// `f(alpha x)`: coefficient `c_d` becomes `c_d alpha autom(alpha) ... autom^(d-1)(alpha)`.
    /// Requires `alpha` to be a unit with `alpha^2 = 1` fixed by the automorphism.
    pub fn eval_twist(&self, f: &SkewPoly<C::Elem>, alpha: &C::Elem) -> Result<SkewPoly<C::Elem>> {
        self.check(f)?;
        let b = &self.base;
        if b.inverse(alpha).is_none() {
            return Err(Error::BadUnit("alpha is not a unit".into()));
        }
        if b.mul(alpha, alpha) != b.one() {
            return Err(Error::Precondition("alpha^2 must equal 1".into()));
        }
        if &self.twist(alpha, 1) != alpha {
            return Err(Error::Precondition("alpha must be fixed by the automorphism".into()));
        }
        let mut norm = b.one();
        let mut out = Vec::with_capacity(f.coeffs.len());
        for (d, c) in f.coeffs.iter().enumerate() {
            out.push(b.mul(c, &norm));
            norm = b.mul(&norm, &self.twist(alpha, d as u64));
        }
        Ok(self.poly(out))
    }

    pub fn random<R: rand::Rng + ?Sized>(&self, rng: &mut R, len: usize) -> SkewPoly<C::Elem> {
        self.poly((0..len).map(|_| self.base.random(rng)).collect())
    }
}

/// Membership in the center `F_q[x^l]` of `R[x; psi]`: every coefficient is a
/// constant of `F_q` and nonzero terms sit only in degrees divisible by `l`.
pub fn is_central(ring: &Ring, f: &SkewPoly<RingElement>) -> bool {
    if f.autom() != Autom::Psi {
        return false;
    }
    let l = ring.l();
    f.coeffs().iter().enumerate().all(|(d, c)| {
        if c.is_zero() {
            return true;
        }
        let constant = c.crt.iter().all(|&x| x == c.crt[0]);
        constant && d % l == 0
    })
}
