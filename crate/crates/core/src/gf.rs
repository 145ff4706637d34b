//! Arithmetic in GF(p^s).
//!
//! An element is stored as its index `sum c_i p^i`, where `c_0 + c_1 b + ...`
//! is its representation over the root `b` of the modulus. Multiplication goes
//! through discrete log tables built once per field.

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u32 = 1 << 16;

/// Element of a [`Field`], identified by its index in `[0, q)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldElement(u16);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn index(self) -> u32 {
        self.0 as u32
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// JSON description of a field: `{"p": 3, "s": 2, "modulus": [2, 1, 1]}`.
///
/// `modulus` is ascending and monic of degree `s`. When it is omitted the
/// lexicographically smallest monic irreducible (comparing the constant
/// coefficient first) is used.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub s: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u32>>,
}

/// A root found by [`Field::roots_of`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Root {
    pub value: FieldElement,
    pub multiplicity: usize,
}

/// Handle to a finite field. Cheap to clone; immutable after construction.
#[derive(Clone)]
pub struct Field(Arc<FieldData>);

struct FieldData {
    p: u32,
    s: u32,
    q: u32,
    modulus: Vec<u32>,
    // exp has length 2(q-1) so that log a + log b never needs a reduction
    exp: Vec<u16>,
    log: Vec<u32>,
    add: Option<Vec<u16>>,
    neg: Vec<u16>,
    x_primitive: bool,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}) mod {:?}", self.0.p, self.0.s, self.0.modulus)
    }
}

pub(crate) fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Remainder of `a` modulo the monic `m` over F_p (ascending coefficients).
fn fp_rem(p: u32, a: &[u32], m: &[u32]) -> Vec<u32> {
    let dm = m.len() - 1;
    let mut r = a.to_vec();
    while r.len() > dm {
        let c = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        if c != 0 {
            for (k, &mk) in m.iter().enumerate() {
                r[shift + k] = (r[shift + k] + p - (c * mk) % p) % p;
            }
        }
        r.pop();
    }
    r
}

/// Trial division by every monic polynomial of degree `1..=s/2`.
fn is_irreducible(p: u32, poly: &[u32]) -> bool {
    let s = poly.len() - 1;
    for d in 1..=s / 2 {
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let mut cand = Vec::with_capacity(d + 1);
            let mut x = idx;
            for _ in 0..d {
                cand.push((x % p as u64) as u32);
                x /= p as u64;
            }
            cand.push(1);
            if fp_rem(p, poly, &cand).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn default_modulus(p: u32, s: u32) -> Vec<u32> {
    if s == 1 {
        return vec![0, 1];
    }
    let total = (p as u64).pow(s);
    for idx in 0..total {
        // c_0 is the most significant digit so the scan is lexicographic low-degree first
        let mut coeffs = vec![0u32; s as usize + 1];
        let mut x = idx;
        for i in (0..s as usize).rev() {
            coeffs[i] = (x % p as u64) as u32;
            x /= p as u64;
        }
        coeffs[s as usize] = 1;
        if is_irreducible(p, &coeffs) {
            return coeffs;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists")
}

impl Field {
    pub fn new(spec: &FieldSpec) -> Result<Field> {
        let FieldSpec { p, s, .. } = *spec;
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if s == 0 {
            return Err(Error::Config("field degree s must be at least 1".into()));
        }
        let q = (p as u64).checked_pow(s).filter(|&q| q <= MAX_ORDER as u64);
        let Some(q) = q else {
            return Err(Error::FieldTooLarge { p, s });
        };
        let q = q as u32;
        let modulus = match &spec.modulus {
            Some(m) => {
                let ok = m.len() == s as usize + 1 && m.last() == Some(&1) && m.iter().all(|&c| c < p) && is_irreducible(p, m);
                if !ok {
                    return Err(Error::BadModulus(m.clone()));
                }
                m.clone()
            }
            None => default_modulus(p, s),
        };

        let mut data =
            FieldData { p, s, q, modulus, exp: Vec::new(), log: Vec::new(), add: None, neg: Vec::new(), x_primitive: false };
        data.neg = (0..q).map(|a| data.neg_slow(a) as u16).collect();
        data.build_logs();
        if q <= 256 {
            let mut table = vec![0u16; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    table[(a * q + b) as usize] = data.add_slow(a, b) as u16;
                }
            }
            data.add = Some(table);
        }
        Ok(Field(Arc::new(data)))
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn s(&self) -> u32 {
        self.0.s
    }

    /// Number of elements q = p^s.
    pub fn order(&self) -> u32 {
        self.0.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    /// Description this field was built from, with the modulus filled in.
    pub fn spec(&self) -> FieldSpec {
        FieldSpec { p: self.0.p, s: self.0.s, modulus: Some(self.0.modulus.clone()) }
    }

    pub fn element(&self, index: u32) -> Result<FieldElement> {
        if index < self.0.q {
            Ok(FieldElement(index as u16))
        } else {
            Err(Error::ForeignElement { index, order: self.0.q })
        }
    }

    pub fn check(&self, a: FieldElement) -> Result<()> {
        self.element(a.index()).map(|_| ())
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> FieldElement {
        FieldElement(n.rem_euclid(self.0.p as i64) as u16)
    }

    /// The root `b` of the modulus (equal to 0 for a prime field built on `x`).
    pub fn generator(&self) -> FieldElement {
        if self.0.s == 1 {
            self.from_int(-(self.0.modulus[0] as i64))
        } else {
            FieldElement(self.0.p as u16)
        }
    }

    pub fn digits(&self, a: FieldElement) -> Vec<u32> {
        self.0.digits(a.index())
    }

    pub fn from_digits(&self, digits: &[u32]) -> FieldElement {
        FieldElement(self.0.undigits(digits) as u16)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.0.q).map(|i| FieldElement(i as u16))
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        FieldElement(rng.gen_range(0..self.0.q) as u16)
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        FieldElement(rng.gen_range(1..self.0.q) as u16)
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let d = &*self.0;
        if d.p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        match &d.add {
            Some(t) => FieldElement(t[a.0 as usize * d.q as usize + b.0 as usize]),
            None => FieldElement(d.add_slow(a.index(), b.index()) as u16),
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.0.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        let d = &*self.0;
        FieldElement(d.exp[(d.log[a.0 as usize] + d.log[b.0 as usize]) as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let d = &*self.0;
        let l = d.log[a.0 as usize];
        Ok(FieldElement(d.exp[((d.q - 1 - l) % (d.q - 1)) as usize]))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return FieldElement::ONE;
        }
        if a.is_zero() {
            return FieldElement::ZERO;
        }
        let d = &*self.0;
        let l = (d.log[a.0 as usize] as u64 * (e % (d.q as u64 - 1))) % (d.q as u64 - 1);
        FieldElement(d.exp[l as usize])
    }

    /// Checked multiplication for operands of unknown provenance.
    pub fn try_mul(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul(a, b))
    }

    pub fn try_add(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add(a, b))
    }

    /// `a^(p^t)`, the `t`-th power of the Frobenius map, for `1 <= t <= s`.
    pub fn frobenius(&self, a: FieldElement, t: u32) -> Result<FieldElement> {
        if t == 0 || t > self.0.s {
            return Err(Error::FrobeniusRange { t, s: self.0.s });
        }
        Ok(self.frobenius_pow(a, t as u64))
    }

    /// `a^(p^e)` for any `e >= 0`.
    #[inline]
    pub fn frobenius_pow(&self, a: FieldElement, e: u64) -> FieldElement {
        let d = &*self.0;
        let e = e % d.s as u64;
        if e == 0 || a.is_zero() {
            return a;
        }
        let m = d.q as u64 - 1;
        let mut pe = 1u64;
        for _ in 0..e {
            pe = pe * d.p as u64 % m;
        }
        let l = d.log[a.0 as usize] as u64 * pe % m;
        FieldElement(d.exp[l as usize])
    }

    pub fn in_prime_field(&self, a: FieldElement) -> bool {
        a.index() < self.0.p
    }

    /// Membership in the subfield F_{p^t}.
    pub fn in_subfield(&self, a: FieldElement, t: u32) -> bool {
        self.frobenius_pow(a, t as u64) == a
    }

    /// Horner evaluation of an ascending coefficient list.
    pub fn eval(&self, poly: &[FieldElement], x: FieldElement) -> FieldElement {
        poly.iter().rev().fold(FieldElement::ZERO, |acc, &c| self.add(self.mul(acc, x), c))
    }

    /// Quotient of `poly` by `(x - root)`, assuming `root` is a root.
    fn synthetic_div(&self, poly: &[FieldElement], root: FieldElement) -> Vec<FieldElement> {
        let n = poly.len();
        let mut out = vec![FieldElement::ZERO; n - 1];
        let mut carry = FieldElement::ZERO;
        for i in (1..n).rev() {
            carry = self.add(poly[i], self.mul(carry, root));
            out[i - 1] = carry;
        }
        out
    }

    /// All roots in the field, with multiplicities, in index order.
    pub fn roots_of(&self, poly: &[FieldElement]) -> Result<Vec<Root>> {
        let trimmed = trim(poly);
        if trimmed.is_empty() {
            return Err(Error::ZeroPolynomial);
        }
        let mut roots = Vec::new();
        for a in self.elements() {
            let mut cur = trimmed.to_vec();
            let mut multiplicity = 0;
            while cur.len() > 1 && self.eval(&cur, a).is_zero() {
                cur = self.synthetic_div(&cur, a);
                multiplicity += 1;
            }
            if multiplicity > 0 {
                roots.push(Root { value: a, multiplicity });
            }
        }
        Ok(roots)
    }

    /// Roots of `poly` if it splits into distinct linear factors.
    pub fn distinct_split_roots(&self, poly: &[FieldElement]) -> Result<Option<Vec<FieldElement>>> {
        let degree = trim(poly).len().saturating_sub(1);
        let roots = self.roots_of(poly)?;
        if roots.len() == degree && roots.iter().all(|r| r.multiplicity == 1) {
            Ok(Some(roots.into_iter().map(|r| r.value).collect()))
        } else {
            Ok(None)
        }
    }

    /// Short human-readable form: integers (symmetric residues) for the prime
    /// subfield, `b^k` when the modulus is primitive, otherwise a polynomial in `b`.
    pub fn format(&self, a: FieldElement) -> String {
        let d = &*self.0;
        if self.in_prime_field(a) {
            return format_residue(a.index(), d.p);
        }
        if d.x_primitive {
            let k = d.log[a.0 as usize];
            return if k == 1 { "b".to_string() } else { format!("b^{k}") };
        }
        let mut terms = Vec::new();
        for (i, c) in d.digits(a.index()).into_iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "b".to_string(),
                _ => format!("b^{i}"),
            };
            let coef = format_residue(c, d.p);
            let term = match (coef.as_str(), mono.is_empty()) {
                (_, true) => coef,
                ("1", false) => mono,
                ("-1", false) => format!("-{mono}"),
                _ => format!("{coef}{mono}"),
            };
            terms.push(term);
        }
        let mut out = String::from("(");
        for (i, t) in terms.iter().enumerate() {
            if i > 0 && !t.starts_with('-') {
                out.push('+');
            }
            out.push_str(t);
        }
        out.push(')');
        out
    }
}

/// Residue in symmetric form for odd p (4 mod 5 prints as -1).
pub(crate) fn format_residue(c: u32, p: u32) -> String {
    if p > 2 && c > p / 2 {
        format!("-{}", p - c)
    } else {
        c.to_string()
    }
}

pub(crate) fn trim(poly: &[FieldElement]) -> &[FieldElement] {
    let mut n = poly.len();
    while n > 0 && poly[n - 1].is_zero() {
        n -= 1;
    }
    &poly[..n]
}

impl FieldData {
    fn digits(&self, mut idx: u32) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.s as usize);
        for _ in 0..self.s {
            out.push(idx % self.p);
            idx /= self.p;
        }
        out
    }

    fn undigits(&self, digits: &[u32]) -> u32 {
        digits.iter().rev().fold(0, |acc, &d| acc * self.p + d % self.p)
    }

    fn add_slow(&self, a: u32, b: u32) -> u32 {
        let (da, db) = (self.digits(a), self.digits(b));
        let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        self.undigits(&sum)
    }

    fn neg_slow(&self, a: u32) -> u32 {
        let neg: Vec<u32> = self.digits(a).iter().map(|&x| (self.p - x) % self.p).collect();
        self.undigits(&neg)
    }

    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        let (da, db) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u32; 2 * self.s as usize];
        for (i, x) in da.iter().enumerate() {
            for (j, y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        let r = fp_rem(self.p, &prod, &self.modulus);
        self.undigits(&r)
    }

    fn build_logs(&mut self) {
        let q = self.q;
        if q == 2 {
            self.exp = vec![1, 1];
            self.log = vec![0, 0];
            self.x_primitive = false;
            return;
        }
        let mut powers = Vec::with_capacity(q as usize - 1);
        let generator = (2..q)
            .find(|&g| {
                powers.clear();
                let mut cur = 1u32;
                loop {
                    powers.push(cur as u16);
                    cur = self.mul_slow(cur, g);
                    if cur == 1 {
                        break;
                    }
                    if powers.len() >= q as usize - 1 {
                        break;
                    }
                }
                cur == 1 && powers.len() == q as usize - 1
            })
            .expect("multiplicative group of a finite field is cyclic");
        let mut log = vec![0u32; q as usize];
        for (k, &e) in powers.iter().enumerate() {
            log[e as usize] = k as u32;
        }
        let mut exp = powers.clone();
        exp.extend_from_slice(&powers);
        self.exp = exp;
        self.log = log;
        self.x_primitive = self.s > 1 && {
            let x = self.p;
            let mut cur = x;
            let mut ord = 1u32;
            while cur != 1 {
                cur = self.mul_slow(cur, x);
                ord += 1;
            }
            ord == q - 1
        };
        let _ = generator;
    }
}
