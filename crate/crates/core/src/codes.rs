//! Skew alpha-constacyclic codes of length `n` over `R`.
//!
//! A code is the left `R[x; autom]`-submodule of `R[x; autom]/<x^n - alpha>`
//! generated by one polynomial. For `theta_t` and the identity the code splits
//! into `kl` component codes over `F_q`, one per CRT coordinate; these are the
//! canonical description used for equality, duals and idempotents. `psi` mixes
//! coordinates, so `psi`-codes keep only their generator over `R`.

use std::fmt;

use rand::Rng;
use serde::Serialize;

use crate::autom::Autom;
use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};
use crate::ring::{Ring, RingElement};
use crate::skewpoly::{Coefficients, SkewPoly, SkewRing};

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Component code `C_ij` over `F_q`, with `i`, `j` zero based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentCode {
    pub i: usize,
    pub j: usize,
    pub alpha: FieldElement,
    /// Monic right divisor of `x^n - alpha`.
    pub gen: SkewPoly<FieldElement>,
}

impl ComponentCode {
    pub fn dim(&self, n: usize) -> usize {
        n - self.gen.degree().unwrap_or(n)
    }
}

/// Shift structure of a code as reported by [`Code::classify_shift`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ShiftKind {
    Cyclic,
    Constacyclic,
    QuasiCyclic { index: usize },
    QuasiTwisted { index: usize },
}

impl fmt::Display for ShiftKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ShiftKind::Cyclic => write!(f, "cyclic"),
            ShiftKind::Constacyclic => write!(f, "constacyclic"),
            ShiftKind::QuasiCyclic { index } => write!(f, "quasi-cyclic of index {index}"),
            ShiftKind::QuasiTwisted { index } => write!(f, "quasi-twisted of index {index}"),
        }
    }
}

/// Shift structure of a length-`n` code whose automorphism has the given order;
/// `r = gcd(n, order)` decides between the plain and the block variants.
pub fn classify(n: usize, order: u64, cyclic: bool) -> ShiftKind {
    let r = gcd(n as u64, order) as usize;
    match (r, cyclic) {
        (1, true) => ShiftKind::Cyclic,
        (1, false) => ShiftKind::Constacyclic,
        (_, true) => ShiftKind::QuasiCyclic { index: n / r },
        (_, false) => ShiftKind::QuasiTwisted { index: n / r },
    }
}

/// Outcome of testing whether a generator right-divides `x^n - alpha`.
#[derive(Clone, Debug)]
pub struct DivisorCheck {
    pub divides: bool,
    pub remainder: SkewPoly<RingElement>,
}

#[derive(Clone, Debug)]
pub struct Code {
    ring: Ring,
    n: usize,
    autom: Autom,
    alpha: RingElement,
    gen: SkewPoly<RingElement>,
    components: Option<Vec<ComponentCode>>,
}

/// `alpha` must have nonzero coordinates and be fixed by the automorphism.
pub fn validate_alpha(ring: &Ring, autom: Autom, alpha: &RingElement) -> Result<()> {
    ring.check(alpha)?;
    ring.validate_autom(autom)?;
    if let Some(c) = alpha.crt.iter().position(|x| x.is_zero()) {
        let (i, j) = (c / ring.l() + 1, c % ring.l() + 1);
        return Err(Error::BadUnit(format!("alpha has a zero coordinate at ({i},{j})")));
    }
    if ring.apply_autom(autom, alpha, 1) != *alpha {
        return Err(Error::BadUnit(format!("alpha is not fixed by {autom}")));
    }
    Ok(())
}

fn component_ring(ring: &Ring, autom: Autom) -> Result<SkewRing<Field>> {
    if autom == Autom::Psi {
        return Err(Error::Inapplicable("psi mixes CRT coordinates, so the code has no component decomposition".into()));
    }
    SkewRing::new(ring.field().clone(), autom)
}

/// Coordinate `c` of every coefficient of `f`.
pub fn project(fr: &SkewRing<Field>, f: &SkewPoly<RingElement>, c: usize) -> SkewPoly<FieldElement> {
    fr.poly(f.coeffs().iter().map(|x| x.crt[c]).collect())
}

/// `sum eta_ij g_ij`, with the component polynomials in CRT order.
pub fn combine(ring: &Ring, autom: Autom, parts: &[SkewPoly<FieldElement>]) -> Result<SkewPoly<RingElement>> {
    let sr = SkewRing::new(ring.clone(), autom)?;
    let len = parts.iter().map(|g| g.coeffs().len()).max().unwrap_or(0);
    let coeffs = (0..len)
        .map(|d| RingElement { crt: parts.iter().map(|g| g.coeff(d).copied().unwrap_or(FieldElement::ZERO)).collect() })
        .collect();
    Ok(sr.poly(coeffs))
}

/// Dual generator of a component code: with `x^n - alpha = h * gen`, the
/// reversed and twisted `h`, made monic. Generates the dual as a skew
/// `alpha^-1`-constacyclic code. Needs the automorphism order to divide `n`.
pub fn dual_component(
    fr: &SkewRing<Field>,
    n: usize,
    alpha: FieldElement,
    gen: &SkewPoly<FieldElement>,
) -> Result<SkewPoly<FieldElement>> {
    let order = fr.autom_order();
    if !(n as u64).is_multiple_of(order) {
        return Err(Error::Precondition(format!("dual generator needs the automorphism order {order} to divide n = {n}")));
    }
    let modulus = fr.x_n_minus(n, &alpha);
    let (h, r) = fr.right_divrem(&modulus, gen)?;
    if !r.is_zero() {
        return Err(Error::Precondition("generator does not right-divide x^n - alpha".into()));
    }
    let dh = h.degree().expect("quotient of x^n - alpha is nonzero");
    let coeffs = (0..=dh).map(|i| fr.twist(&h.coeffs()[dh - i], i as u64)).collect();
    fr.monic(&fr.poly(coeffs))
}

/// Extended Euclid in `F_q[x]`: monic `d = gcd(a, b)` with `d = s a + t b`.
fn ext_gcd(
    fr: &SkewRing<Field>,
    a: &SkewPoly<FieldElement>,
    b: &SkewPoly<FieldElement>,
) -> Result<(SkewPoly<FieldElement>, SkewPoly<FieldElement>, SkewPoly<FieldElement>)> {
    // invariant: r0 = s0 a + t0 b, r1 = s1 a + t1 b
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (fr.one(), fr.zero());
    let (mut t0, mut t1) = (fr.zero(), fr.one());
    while !r1.is_zero() {
        let (q, r) = fr.right_divrem(&r0, &r1)?;
        let s = fr.sub(&s0, &fr.mul(&q, &s1)?)?;
        let t = fr.sub(&t0, &fr.mul(&q, &t1)?)?;
        (r0, r1) = (r1, r);
        (s0, s1) = (s1, s);
        (t0, t1) = (t1, t);
    }
    let lead = *r0.leading().ok_or(Error::ZeroPolynomial)?;
    let inv = fr.base().inv(lead)?;
    Ok((fr.left_scale(&inv, &r0), fr.left_scale(&inv, &s0), fr.left_scale(&inv, &t0)))
}

/// Idempotent generator of one component code through the commutative
/// constacyclic ring: `e = a g mod (x^n - alpha)` where `a g + b h = 1`.
fn component_idempotent(
    n: usize,
    alpha: FieldElement,
    gen: &SkewPoly<FieldElement>,
    field: &Field,
) -> Result<SkewPoly<FieldElement>> {
    let cr = SkewRing::new(field.clone(), Autom::Identity)?;
    let g = cr.poly(gen.coeffs().to_vec());
    let modulus = cr.x_n_minus(n, &alpha);
    let (h, r) = cr.right_divrem(&modulus, &g)?;
    if !r.is_zero() {
        return Err(Error::Precondition("component generator does not divide x^n - alpha as a commutative polynomial".into()));
    }
    let (d, a, _) = ext_gcd(&cr, &g, &h)?;
    if d.degree() != Some(0) {
        return Err(Error::Precondition("x^n - alpha has repeated factors".into()));
    }
    let e = cr.rem(&cr.mul(&a, &g)?, &modulus)?;
    Ok(SkewRing::new(field.clone(), gen.autom())?.poly(e.into_coeffs()))
}

impl Code {
    /// Code `sum eta_ij C_ij` where `C_ij = <gens[c]>` is skew `alphas[c]`-constacyclic,
    /// `c` running over CRT coordinates. Each generator is made monic and must
    /// right-divide `x^n - alpha_ij`.
    pub fn from_components(
        ring: &Ring,
        n: usize,
        autom: Autom,
        alphas: &[FieldElement],
        gens: &[SkewPoly<FieldElement>],
    ) -> Result<Code> {
        let fr = component_ring(ring, autom)?;
        let w = ring.width();
        if alphas.len() != w || gens.len() != w {
            return Err(Error::RingMismatch { expected: w, got: alphas.len().min(gens.len()) });
        }
        if n == 0 {
            return Err(Error::Config("code length n must be positive".into()));
        }
        let alpha = RingElement { crt: alphas.to_vec() };
        validate_alpha(ring, autom, &alpha)?;
        let mut components = Vec::with_capacity(w);
        for (c, (g, &a)) in gens.iter().zip(alphas).enumerate() {
            let (i, j) = (c / ring.l(), c % ring.l());
            let fail = |reason: String| Error::Component { i: i + 1, j: j + 1, reason };
            fr.check(g).map_err(|e| fail(e.to_string()))?;
            let g = fr.monic(g).map_err(|e| fail(e.to_string()))?;
            if g.degree().unwrap() > n {
                return Err(fail(format!("generator degree exceeds n = {n}")));
            }
            let modulus = fr.x_n_minus(n, &a);
            if !fr.is_right_divisor(&g, &modulus)? {
                return Err(fail("generator is not a right divisor of x^n - alpha_ij".into()));
            }
            components.push(ComponentCode { i, j, alpha: a, gen: g });
        }
        let parts: Vec<_> = components.iter().map(|c| c.gen.clone()).collect();
        let gen = combine(ring, autom, &parts)?;
        Ok(Code { ring: ring.clone(), n, autom, alpha, gen, components: Some(components) })
    }

    /// Code generated by `gen`. For `theta_t` and the identity, `gen` is split
    /// into CRT coordinates; a zero coordinate stands for the zero component
    /// code. For `psi`, `gen` needs a unit leading coefficient.
    pub fn from_generator(ring: &Ring, n: usize, autom: Autom, alpha: &RingElement, gen: &SkewPoly<RingElement>) -> Result<Code> {
        validate_alpha(ring, autom, alpha)?;
        let sr = SkewRing::new(ring.clone(), autom)?;
        sr.check(gen)?;
        if n == 0 {
            return Err(Error::Config("code length n must be positive".into()));
        }
        if autom == Autom::Psi {
            let g = sr.monic(gen)?;
            if g.degree().unwrap() > n || !sr.is_right_divisor(&g, &sr.x_n_minus(n, alpha))? {
                return Err(Error::Precondition("generator is not a right divisor of x^n - alpha".into()));
            }
            return Ok(Code { ring: ring.clone(), n, autom, alpha: alpha.clone(), gen: g, components: None });
        }
        let fr = component_ring(ring, autom)?;
        let parts: Vec<_> = (0..ring.width())
            .map(|c| {
                let g = project(&fr, gen, c);
                if g.is_zero() {
                    fr.x_n_minus(n, &alpha.crt[c])
                } else {
                    g
                }
            })
            .collect();
        Code::from_components(ring, n, autom, &alpha.crt, &parts)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn autom(&self) -> Autom {
        self.autom
    }

    pub fn alpha(&self) -> &RingElement {
        &self.alpha
    }

    pub fn gen(&self) -> &SkewPoly<RingElement> {
        &self.gen
    }

    pub fn skew_ring(&self) -> SkewRing<Ring> {
        SkewRing::new(self.ring.clone(), self.autom).expect("validated at construction")
    }

    pub fn component_ring(&self) -> Result<SkewRing<Field>> {
        component_ring(&self.ring, self.autom)
    }

    /// `x^n - alpha` over `R`.
    pub fn modulus(&self) -> SkewPoly<RingElement> {
        self.skew_ring().x_n_minus(self.n, &self.alpha)
    }

    /// Component codes in CRT order. Not available for `psi`-codes.
    pub fn decompose(&self) -> Result<&[ComponentCode]> {
        self.components
            .as_deref()
            .ok_or_else(|| Error::Inapplicable("psi mixes CRT coordinates, so the code has no component decomposition".into()))
    }

    /// Exponent `e` with `|C| = q^e`.
    pub fn size_exponent(&self) -> usize {
        match &self.components {
            Some(cs) => cs.iter().map(|c| c.dim(self.n)).sum(),
            None => self.ring.width() * (self.n - self.gen.degree().unwrap()),
        }
    }

    /// Dimension of the Gray image over `F_q` (equal to the size exponent).
    pub fn dimension(&self) -> usize {
        self.size_exponent()
    }

    pub fn classify_shift(&self) -> ShiftKind {
        classify(self.n, self.ring.autom_order(self.autom), self.alpha == self.ring.one())
    }

    /// Dual code, generated by `sum eta_ij h_ij^perp` with unit `alpha^-1`.
    pub fn dual(&self) -> Result<Code> {
        let fr = self.component_ring()?;
        let cs = self.decompose()?;
        let mut alphas = Vec::with_capacity(cs.len());
        let mut gens = Vec::with_capacity(cs.len());
        for c in cs {
            gens.push(dual_component(&fr, self.n, c.alpha, &c.gen)?);
            alphas.push(fr.base().inv(c.alpha)?);
        }
        Code::from_components(&self.ring, self.n, self.autom, &alphas, &gens)
    }

    /// Idempotent generator `e` with `e * e = e` modulo `x^n - alpha` and `<e> = C`.
    /// Needs `gcd(n, q) = 1` and `gcd(n, |autom|) = 1`.
    pub fn idempotent_generator(&self) -> Result<SkewPoly<RingElement>> {
        let cs = self.decompose()?;
        let q = self.ring.field().order() as u64;
        let order = self.ring.autom_order(self.autom);
        let n = self.n as u64;
        if gcd(n, q) != 1 || gcd(n, order) != 1 {
            return Err(Error::Precondition(format!(
                "idempotent generator needs gcd(n, q) = 1 and gcd(n, |autom|) = 1 (n = {n}, q = {q}, |autom| = {order})"
            )));
        }
        let parts =
            cs.iter().map(|c| component_idempotent(self.n, c.alpha, &c.gen, self.ring.field())).collect::<Result<Vec<_>>>()?;
        let e = combine(&self.ring, self.autom, &parts)?;
        if !self.is_idempotent(&e)? {
            return Err(Error::Precondition("commutative idempotent is not idempotent in the skew ring".into()));
        }
        Ok(e)
    }

    /// Whether `e * e = e` modulo `x^n - alpha`.
    pub fn is_idempotent(&self, e: &SkewPoly<RingElement>) -> Result<bool> {
        let sr = self.skew_ring();
        let m = self.modulus();
        let sq = sr.rem(&sr.mul(e, e)?, &m)?;
        Ok(sq == sr.rem(e, &m)?)
    }

    /// Self-duality. Units with some `alpha_ij^2 != 1` are rejected without
    /// computing the dual.
    pub fn is_selfdual(&self) -> Result<bool> {
        let field = self.ring.field();
        if self.alpha.crt.iter().any(|&a| field.mul(a, a) != FieldElement::ONE) {
            return Ok(false);
        }
        let dual = self.dual()?;
        Ok(dual.components == self.components)
    }

    /// Membership of a length-`n` word over `R`.
    pub fn contains(&self, word: &[RingElement]) -> Result<bool> {
        if word.len() != self.n {
            return Err(Error::Config(format!("word has length {}, expected {}", word.len(), self.n)));
        }
        match &self.components {
            Some(cs) => {
                let fr = self.component_ring()?;
                for (c, comp) in cs.iter().enumerate() {
                    let w = fr.poly(word.iter().map(|x| x.crt[c]).collect());
                    if !fr.rem(&w, &comp.gen)?.is_zero() {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            None => {
                let sr = self.skew_ring();
                let w = sr.poly(word.to_vec());
                Ok(sr.rem(&w, &self.gen)?.is_zero())
            }
        }
    }

    /// Codeword `m * gen` reduced modulo `x^n - alpha`, as a length-`n` vector.
    pub fn encode(&self, message: &SkewPoly<RingElement>) -> Result<Vec<RingElement>> {
        let sr = self.skew_ring();
        let c = sr.rem(&sr.mul(message, &self.gen)?, &self.modulus())?;
        Ok(self.to_word(&c))
    }

    pub fn to_word(&self, c: &SkewPoly<RingElement>) -> Vec<RingElement> {
        let mut w = c.coeffs().to_vec();
        w.resize(self.n, self.ring.zero());
        w
    }

    pub fn random_codeword<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<RingElement> {
        let m = self.skew_ring().random(rng, self.n);
        self.encode(&m).expect("tags agree")
    }

    /// Checks that `gen` right-divides `x^n - alpha`. Without a unit leading
    /// coefficient the test runs per CRT coordinate (`theta_t` and identity only).
    pub fn verify_generator(
        ring: &Ring,
        n: usize,
        autom: Autom,
        alpha: &RingElement,
        gen: &SkewPoly<RingElement>,
    ) -> Result<DivisorCheck> {
        validate_alpha(ring, autom, alpha)?;
        let sr = SkewRing::new(ring.clone(), autom)?;
        sr.check(gen)?;
        let modulus = sr.x_n_minus(n, alpha);
        if gen.leading().is_some_and(|c| ring.is_unit(c)) {
            let r = sr.rem(&modulus, gen)?;
            return Ok(DivisorCheck { divides: r.is_zero(), remainder: r });
        }
        if autom == Autom::Psi || gen.is_zero() {
            return Err(Error::NonUnitLeading);
        }
        let fr = component_ring(ring, autom)?;
        let mut rems = Vec::with_capacity(ring.width());
        for c in 0..ring.width() {
            let g = project(&fr, gen, c);
            let r = if g.is_zero() {
                fr.zero()
            } else {
                let m = fr.x_n_minus(n, &alpha.crt[c]);
                fr.rem(&m, &fr.monic(&g)?)?
            };
            rems.push(r);
        }
        let remainder = combine(ring, autom, &rems)?;
        Ok(DivisorCheck { divides: remainder.is_zero(), remainder })
    }

    /// Image of a cyclic code under `f(x) -> f(alpha x)`: the skew
    /// `alpha`-constacyclic code generated by `gen(alpha x)`.
    pub fn eval_twist(&self, alpha: &RingElement) -> Result<Code> {
        if self.alpha != self.ring.one() {
            return Err(Error::Precondition("eval_twist maps cyclic codes (alpha = 1)".into()));
        }
        let sr = self.skew_ring();
        let g = sr.eval_twist(&self.gen, alpha)?;
        Code::from_generator(&self.ring, self.n, self.autom, alpha, &g)
    }
}

/// Monic polynomial of least degree among nonzero words whose leading coefficient
/// is a unit. Words are coefficient vectors of length `n`.
pub fn minimal_degree_generator<'a, C, I>(sr: &SkewRing<C>, words: I) -> Result<SkewPoly<C::Elem>>
where
    C: Coefficients,
    C::Elem: 'a,
    I: IntoIterator<Item = &'a [C::Elem]>,
{
    let mut best: Option<(usize, Option<SkewPoly<C::Elem>>)> = None;
    for w in words {
        let p = sr.poly(w.to_vec());
        let Some(d) = p.degree() else { continue };
        let unit = sr.base().inverse(p.leading().unwrap()).is_some();
        match &mut best {
            Some((bd, cand)) if d == *bd => {
                if cand.is_none() && unit {
                    *cand = Some(p);
                }
            }
            Some((bd, _)) if d > *bd => {}
            _ => best = Some((d, unit.then_some(p))),
        }
    }
    match best {
        None => Err(Error::Precondition("code has no nonzero codeword".into())),
        Some((_, None)) => Err(Error::Precondition("no codeword of minimal degree has a unit leading coefficient".into())),
        Some((_, Some(p))) => sr.monic(&p),
    }
}
