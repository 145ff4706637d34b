//! Brute-force reference computations for small codes.
//!
//! Everything here works on flat words over `F_q` (symbol `t`, CRT coordinate
//! `c` at position `t * width + c`) and reimplements the shift and the
//! automorphisms directly, so it can cross-check the algebraic code paths.
//! Only field arithmetic is shared with the rest of the crate.

use std::collections::HashSet;

use crate::autom::Autom;
use crate::codes::Code;
use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};

/// Largest number of words any enumeration may materialize.
pub const ENUMERATION_CAP: usize = 1 << 20;

pub type Word = Box<[FieldElement]>;

/// Raw description of a code: ring shape, automorphism, unit and generator.
#[derive(Clone, Debug)]
pub struct OracleCode {
    pub field: Field,
    pub k: usize,
    pub l: usize,
    pub autom: Autom,
    pub n: usize,
    /// CRT coordinates of the unit.
    pub alpha: Vec<FieldElement>,
    /// CRT coordinates of each generator coefficient, ascending.
    pub gen: Vec<Vec<FieldElement>>,
}

impl OracleCode {
    pub fn from_code(code: &Code) -> OracleCode {
        let ring = code.ring();
        OracleCode {
            field: ring.field().clone(),
            k: ring.k(),
            l: ring.l(),
            autom: code.autom(),
            n: code.n(),
            alpha: code.alpha().crt.clone(),
            gen: code.gen().coeffs().iter().map(|c| c.crt.clone()).collect(),
        }
    }

    /// A code over `F_q` itself (one CRT coordinate).
    pub fn over_field(field: &Field, autom: Autom, n: usize, alpha: FieldElement, gen: &[FieldElement]) -> OracleCode {
        OracleCode { field: field.clone(), k: 1, l: 1, autom, n, alpha: vec![alpha], gen: gen.iter().map(|&c| vec![c]).collect() }
    }

    pub fn width(&self) -> usize {
        self.k * self.l
    }

    /// The automorphism applied `times` times to one symbol.
    fn twist(&self, sym: &[FieldElement], times: usize) -> Vec<FieldElement> {
        match self.autom {
            Autom::Identity => sym.to_vec(),
            Autom::Theta(t) => sym.iter().map(|&a| self.field.frobenius_pow(a, t as u64 * times as u64)).collect(),
            Autom::Psi => {
                let mut out = vec![FieldElement::ZERO; sym.len()];
                for i in 0..self.k {
                    for j in 0..self.l {
                        out[i * self.l + (j + times) % self.l] = sym[i * self.l + j];
                    }
                }
                out
            }
        }
    }

    fn mul_sym(&self, a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
        a.iter().zip(b).map(|(&x, &y)| self.field.mul(x, y)).collect()
    }

    /// Generator as a length-`n` word, folding `a x^(n+i)` into `a autom^i(alpha) x^i`.
    fn gen_word(&self) -> Vec<FieldElement> {
        let w = self.width();
        let mut word = vec![FieldElement::ZERO; self.n * w];
        for (d, coeff) in self.gen.iter().enumerate() {
            let mut c = coeff.clone();
            let mut pos = d;
            while pos >= self.n {
                pos -= self.n;
                c = self.mul_sym(&c, &self.twist(&self.alpha, pos));
            }
            for (slot, x) in word[pos * w..(pos + 1) * w].iter_mut().zip(c) {
                *slot = self.field.add(*slot, x);
            }
        }
        word
    }

    /// Skew constacyclic shift: `(c_0..c_{n-1}) -> (alpha autom(c_{n-1}), autom(c_0), ..)`.
    pub fn shift(&self, word: &[FieldElement]) -> Vec<FieldElement> {
        let w = self.width();
        let mut out = vec![FieldElement::ZERO; word.len()];
        for t in 0..self.n {
            let sym = self.twist(&word[t * w..(t + 1) * w], 1);
            if t + 1 == self.n {
                out[..w].copy_from_slice(&self.mul_sym(&self.alpha, &sym));
            } else {
                out[(t + 1) * w..(t + 2) * w].copy_from_slice(&sym);
            }
        }
        out
    }
}

/// Explicit set of codewords together with an `F_q`-basis.
#[derive(Clone, Debug)]
pub struct CodewordSet {
    pub field: Field,
    pub width: usize,
    pub n: usize,
    pub words: HashSet<Word>,
    pub basis: Vec<Word>,
}

impl PartialEq for CodewordSet {
    fn eq(&self, other: &Self) -> bool {
        self.width == other.width && self.n == other.n && self.words == other.words
    }
}

impl CodewordSet {
    pub fn zero(field: &Field, width: usize, n: usize) -> CodewordSet {
        let mut words = HashSet::new();
        words.insert(vec![FieldElement::ZERO; width * n].into_boxed_slice());
        CodewordSet { field: field.clone(), width, n, words, basis: Vec::new() }
    }

    /// `F_q`-span of the given vectors.
    pub fn span<I: IntoIterator<Item = Vec<FieldElement>>>(
        field: &Field,
        width: usize,
        n: usize,
        gens: I,
    ) -> Result<CodewordSet> {
        let mut set = CodewordSet::zero(field, width, n);
        for g in gens {
            set.absorb(g)?;
        }
        Ok(set)
    }

    /// Wraps a set of words known to be closed under `F_q`-linear combinations,
    /// extracting a basis greedily.
    pub fn from_linear_words(field: &Field, width: usize, n: usize, words: HashSet<Word>) -> Result<CodewordSet> {
        let mut set = CodewordSet::zero(field, width, n);
        for w in &words {
            if !set.contains(w) {
                set.absorb(w.to_vec())?;
            }
        }
        debug_assert_eq!(set.len(), words.len());
        Ok(set)
    }

    /// Adds `v` and closes under `F_q`-linear combinations.
    fn absorb(&mut self, v: Vec<FieldElement>) -> Result<()> {
        if self.words.contains(v.as_slice()) {
            return Ok(());
        }
        let q = self.field.order() as usize;
        let needed = self.words.len().saturating_mul(q);
        if needed > ENUMERATION_CAP {
            return Err(Error::OracleBound { what: "code".into(), needed: needed as f64, cap: ENUMERATION_CAP });
        }
        let old: Vec<Word> = self.words.iter().cloned().collect();
        let mut new = HashSet::with_capacity(needed);
        for a in self.field.elements() {
            let av: Vec<_> = v.iter().map(|&x| self.field.mul(a, x)).collect();
            for w in &old {
                let sum: Word = w.iter().zip(&av).map(|(&x, &y)| self.field.add(x, y)).collect();
                new.insert(sum);
            }
        }
        self.words = new;
        self.basis.push(v.into_boxed_slice());
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, w: &[FieldElement]) -> bool {
        self.words.contains(w)
    }

    /// `log_q` of the size.
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn map(&self, f: impl Fn(&[FieldElement]) -> Vec<FieldElement>, width: usize, n: usize) -> CodewordSet {
        CodewordSet {
            field: self.field.clone(),
            width,
            n,
            words: self.words.iter().map(|w| f(w).into_boxed_slice()).collect(),
            basis: self.basis.iter().map(|w| f(w).into_boxed_slice()).collect(),
        }
    }
}

/// All left multiples of the generator modulo `x^n - alpha`, as the `F_q`-span of
/// `eta_c x^i * gen` over coordinates `c` and shifts `i`.
pub fn enumerate_code(code: &OracleCode) -> Result<CodewordSet> {
    let w = code.width();
    let mut set = CodewordSet::zero(&code.field, w, code.n);
    let mut shifted = code.gen_word();
    for _ in 0..code.n {
        for c in 0..w {
            let mut v = vec![FieldElement::ZERO; shifted.len()];
            for t in 0..code.n {
                v[t * w + c] = shifted[t * w + c];
            }
            set.absorb(v)?;
        }
        shifted = code.shift(&shifted);
    }
    Ok(set)
}

/// Inner product used by [`brute_dual`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InnerProduct {
    /// Euclidean product over `R`: every CRT coordinate of `sum a_t b_t` vanishes.
    Ring,
    /// Euclidean product over `F_q` of the flat vectors.
    Flat,
}

fn orthogonal(field: &Field, width: usize, ip: InnerProduct, a: &[FieldElement], b: &[FieldElement]) -> bool {
    match ip {
        InnerProduct::Flat => a.iter().zip(b).fold(FieldElement::ZERO, |acc, (&x, &y)| field.add(acc, field.mul(x, y))).is_zero(),
        InnerProduct::Ring => (0..width).all(|c| {
            a.iter()
                .zip(b)
                .skip(c)
                .step_by(width)
                .fold(FieldElement::ZERO, |acc, (&x, &y)| field.add(acc, field.mul(x, y)))
                .is_zero()
        }),
    }
}

/// Every ambient vector orthogonal to all of `cs`, by exhaustive search.
pub fn brute_dual(cs: &CodewordSet, ip: InnerProduct) -> Result<CodewordSet> {
    let q = cs.field.order() as usize;
    let len = cs.width * cs.n;
    let needed = (q as f64).powi(len as i32);
    if needed > ENUMERATION_CAP as f64 {
        return Err(Error::OracleBound { what: "ambient space".into(), needed, cap: ENUMERATION_CAP });
    }
    let mut words = HashSet::new();
    let mut v = vec![0u32; len];
    let mut elems = vec![FieldElement::ZERO; len];
    loop {
        if cs.basis.iter().all(|b| orthogonal(&cs.field, cs.width, ip, &elems, b)) {
            words.insert(elems.clone().into_boxed_slice());
        }
        // odometer increment
        let mut pos = 0;
        loop {
            if pos == len {
                return CodewordSet::from_linear_words(&cs.field, cs.width, cs.n, words);
            }
            v[pos] += 1;
            if v[pos] == q as u32 {
                v[pos] = 0;
                elems[pos] = FieldElement::ZERO;
                pos += 1;
            } else {
                elems[pos] = cs.field.element(v[pos]).expect("in range");
                break;
            }
        }
    }
}

/// Distance used by [`brute_min_distance`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Metric {
    /// Number of nonzero symbols of `R`.
    Hamming,
    /// Number of nonzero `F_q` coordinates of the flat word.
    Gray,
}

/// Smallest weight of a nonzero codeword; `None` for the zero code.
pub fn brute_min_distance(cs: &CodewordSet, metric: Metric) -> Option<usize> {
    cs.words
        .iter()
        .map(|w| match metric {
            Metric::Gray => w.iter().filter(|x| !x.is_zero()).count(),
            Metric::Hamming => w.chunks(cs.width).filter(|s| s.iter().any(|x| !x.is_zero())).count(),
        })
        .filter(|&d| d > 0)
        .min()
}

/// Whether `op` maps every codeword back into the set.
pub fn closure_check(cs: &CodewordSet, op: impl Fn(&[FieldElement]) -> Vec<FieldElement>) -> bool {
    cs.words.iter().all(|w| cs.words.contains(op(w).as_slice()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldSpec;

    fn field(p: u32, s: u32, m: Option<Vec<u32>>) -> Field {
        Field::new(&FieldSpec { p, s, modulus: m }).unwrap()
    }

    fn elems(f: &Field, idx: &[u32]) -> Vec<FieldElement> {
        idx.iter().map(|&i| f.element(i).unwrap()).collect()
    }

    #[test]
    fn full_and_zero_codes() {
        let f = field(2, 1, None);
        let full = enumerate_code(&OracleCode::over_field(&f, Autom::Identity, 2, FieldElement::ONE, &elems(&f, &[1]))).unwrap();
        assert_eq!(full.len(), 4);
        let zero =
            enumerate_code(&OracleCode::over_field(&f, Autom::Identity, 2, FieldElement::ONE, &elems(&f, &[1, 0, 1]))).unwrap();
        assert_eq!(zero.len(), 1);
        assert_eq!(brute_dual(&zero, InnerProduct::Flat).unwrap().len(), 4);
        assert_eq!(brute_dual(&full, InnerProduct::Flat).unwrap().len(), 1);
        assert_eq!(brute_min_distance(&zero, Metric::Hamming), None);
    }

    #[test]
    fn f4_component_codes() {
        let f = field(2, 2, Some(vec![1, 1, 1]));
        let theta = Autom::Theta(1);
        let cs = enumerate_code(&OracleCode::over_field(&f, theta, 6, FieldElement::ONE, &elems(&f, &[2, 3, 3, 1]))).unwrap();
        assert_eq!(cs.len(), 64);
        assert_eq!(brute_min_distance(&cs, Metric::Hamming), Some(4));
        for g in [&[1, 0, 1, 0, 1][..], &[3, 0, 2, 0, 1], &[2, 0, 3, 0, 1]] {
            let cs = enumerate_code(&OracleCode::over_field(&f, theta, 6, FieldElement::ONE, &elems(&f, g))).unwrap();
            assert_eq!(cs.len(), 16);
            assert_eq!(brute_min_distance(&cs, Metric::Hamming), Some(3));
        }
    }

    #[test]
    fn repetition_code() {
        let f = field(2, 1, None);
        let cs =
            enumerate_code(&OracleCode::over_field(&f, Autom::Identity, 3, FieldElement::ONE, &elems(&f, &[1, 1, 1]))).unwrap();
        assert_eq!(cs.len(), 2);
        assert_eq!(brute_min_distance(&cs, Metric::Gray), Some(3));
    }

    #[test]
    fn dual_sizes_multiply_to_ambient() {
        let f = field(3, 1, None);
        for g in [&[2, 1][..], &[1, 1], &[1], &[1, 1, 1], &[2, 0, 1]] {
            let code = OracleCode::over_field(&f, Autom::Identity, 4, FieldElement::ONE, &elems(&f, g));
            let cs = enumerate_code(&code).unwrap();
            let dual = brute_dual(&cs, InnerProduct::Ring).unwrap();
            assert_eq!(cs.len() * dual.len(), 81);
        }
    }

    #[test]
    fn closure_negative_control() {
        let f = field(2, 1, None);
        let code = OracleCode::over_field(&f, Autom::Identity, 3, FieldElement::ONE, &elems(&f, &[1, 1]));
        let mut cs = enumerate_code(&code).unwrap();
        assert!(closure_check(&cs, |w| code.shift(w)));
        assert!(closure_check(&cs, |w| vec![FieldElement::ZERO; w.len()]));
        let victim = cs.words.iter().find(|w| !w.iter().all(|x| x.is_zero())).unwrap().clone();
        cs.words.remove(&victim);
        cs.words.insert(elems(&f, &[1, 0, 0]).into_boxed_slice());
        assert!(!closure_check(&cs, |w| code.shift(w)));
    }

    #[test]
    fn bound_is_reported() {
        let f = field(2, 1, None);
        let code = OracleCode::over_field(&f, Autom::Identity, 21, FieldElement::ONE, &elems(&f, &[1]));
        assert!(matches!(enumerate_code(&code), Err(Error::OracleBound { .. })));
    }
}
