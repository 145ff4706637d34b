//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use skewcode::bundled::{self, uv};
use skewcode::codes::{gcd, Code, ShiftKind};
use skewcode::gray::{gray_image_params, phi_skew_commutes, pi_image_commutes};
use skewcode::oracle::{brute_dual, enumerate_code, CodewordSet, InnerProduct, OracleCode, ENUMERATION_CAP};
use skewcode::{Autom, FieldElement, Ring, RingElement, SkewPoly, SkewRing};

type Verdict = Result<String, String>;

/// Name, check and time limit.
type Criterion = (&'static str, fn() -> Verdict, Option<Duration>);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn e<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|x| x.to_string())
}

fn divides(code_name: &str) -> Result<(), String> {
    let job = e(bundled::job(code_name))?;
    let g = e(job.generator())?;
    let check = e(Code::verify_generator(&job.ring, job.n, job.autom, &job.alpha, &g))?;
    ensure(check.divides && check.remainder.is_zero(), format!("{code_name}: nonzero remainder"))
}

fn ac1() -> Verdict {
    let job = e(bundled::job("example-1"))?;
    let r = &job.ring;
    let f = r.field();
    ensure(r.f_roots() == [FieldElement::ZERO, FieldElement::ONE, e(f.element(2))?], "f = u(u-1)(u-b)")?;
    let sr = e(SkewRing::new(r.clone(), Autom::Psi))?;
    let (one, v) = (r.one(), r.v());
    let want = sr.poly(vec![one.clone(), r.sub(&one, &v), one.clone(), one.clone(), one.clone(), v, one]);
    ensure(job.gen.as_ref() == Some(&want), "generator differs from x^6+vx^5+x^4+x^3+x^2+(1-v)x+1")?;
    divides("example-1")?;
    let c = e(job.code())?.classify_shift();
    ensure(c == ShiftKind::QuasiCyclic { index: 6 }, format!("classified as {c}"))?;
    Ok("divides x^12-1, quasi-cyclic of index 6".into())
}

fn ac2() -> Verdict {
    let job = e(bundled::job("example-2"))?;
    let r = &job.ring;
    let sr = e(SkewRing::new(r.clone(), Autom::Psi))?;
    let w = r.mul(&r.u(), &r.add(&r.gam(0), &r.gam(2)));
    let want = sr.poly(vec![r.one(), w.clone(), r.zero(), w, r.one()]);
    ensure(job.gen.as_ref() == Some(&want), "generator differs from x^4+u(g1+g3)x^3+u(g1+g3)x+1")?;
    divides("example-2")?;
    let c = e(job.code())?.classify_shift();
    ensure(c == ShiftKind::QuasiCyclic { index: 2 }, format!("classified as {c}"))?;
    Ok("divides x^8-1, quasi-cyclic of index 2".into())
}

fn ac3() -> Verdict {
    let job = e(bundled::job("example-5"))?;
    let r = &job.ring;
    let f = r.field();
    let alpha = uv(r, &[(f.from_int(1), 0, 0), (f.from_int(-1), 2, 0), (f.from_int(-1), 2, 1)]);
    ensure(job.alpha == alpha, "alpha differs from 1-u^2-u^2v")?;
    let sr = e(SkewRing::new(r.clone(), Autom::Theta(1)))?;
    let one = r.one();
    let want = sr.poly(vec![one.clone(), alpha.clone(), one.clone(), alpha.clone(), one.clone(), alpha, one]);
    ensure(job.gen.as_ref() == Some(&want), "generator differs")?;
    divides("example-5")?;
    ensure(gcd(7, r.autom_order(Autom::Theta(1))) == 1, "gcd(7, |theta|) != 1")?;
    let c = e(job.code())?.classify_shift();
    ensure(c == ShiftKind::Constacyclic, format!("classified as {c}"))?;
    Ok("divides x^7-alpha, constacyclic".into())
}

fn ac4() -> Verdict {
    let code = e(bundled::code("example-6"))?;
    let r = code.ring();
    let f = r.field();
    let c = |x| f.from_int(x);
    let sr = e(SkewRing::new(r.clone(), Autom::Theta(1)))?;
    let want = sr.poly(vec![
        uv(r, &[(c(1), 0, 0), (c(-2), 2, 0), (c(2), 2, 1)]),
        uv(r, &[(c(1), 0, 0), (c(2), 2, 0), (c(-2), 2, 1)]),
        r.one(),
    ]);
    ensure(code.gen() == &want, "generator differs from x^2+(1+2u^2-2u^2v)x+(1-2u^2+2u^2v)")?;
    let check = e(Code::verify_generator(r, 6, code.autom(), code.alpha(), code.gen()))?;
    ensure(check.divides, "generator does not divide x^6-alpha")?;
    let k = code.classify_shift();
    ensure(k == ShiftKind::QuasiTwisted { index: 3 }, format!("classified as {k}"))?;
    Ok("gen from components exact, quasi-twisted of index 3".into())
}

fn ac5() -> Verdict {
    let a = e(bundled::code("example-7a"))?;
    let b = e(bundled::code("example-7b"))?;
    let f = a.ring().field().clone();
    let fr = e(SkewRing::new(f.clone(), Autom::Theta(1)))?;
    let p = |idx: &[u32]| fr.poly(idx.iter().map(|&i| f.element(i).unwrap()).collect());
    let target = fr.x_n_minus(6, &FieldElement::ONE);
    for (l, r) in [
        (&[1u32, 0, 1][..], &[1u32, 0, 1, 0, 1][..]),
        (&[2, 0, 1], &[3, 0, 2, 0, 1]),
        (&[3, 0, 1], &[2, 0, 3, 0, 1]),
        (&[3, 3, 2, 1], &[2, 3, 3, 1]),
    ] {
        ensure(e(fr.mul(&p(l), &p(r)))? == target, format!("{l:?} * {r:?} != x^6-1"))?;
    }
    for (code, words) in [(&a, 64usize), (&b, 16)] {
        for part in e(code.decompose())? {
            let set = e(enumerate_code(&OracleCode::over_field(&f, Autom::Theta(1), 6, part.alpha, part.gen.coeffs())))?;
            ensure(set.len() == words, format!("component enumerates to {} words", set.len()))?;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let pa = e(gray_image_params(&a, &mut rng, 0))?;
    let pb = e(gray_image_params(&b, &mut rng, 0))?;
    ensure((pa.n, pa.k_dim, pa.d) == (36, 18, Some(4)), format!("first code {pa:?}"))?;
    ensure((pb.n, pb.k_dim, pb.d) == (36, 12, Some(3)), format!("second code {pb:?}"))?;
    Ok("factorizations exact, [36,18,4] and [36,12,3]".into())
}

fn random_vec(ring: &Ring, n: usize, rng: &mut ChaCha8Rng) -> Vec<RingElement> {
    (0..n).map(|_| ring.random(rng)).collect()
}

fn ac6() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (mut configs, mut skipped) = (0, Vec::new());
    for (name, _) in bundled::CONFIGS {
        let job = e(bundled::job(name))?;
        if job.autom == Autom::Psi {
            skipped.push(*name);
            continue;
        }
        for _ in 0..1000 {
            let v = random_vec(&job.ring, job.n, &mut rng);
            ensure(e(pi_image_commutes(&job.ring, job.autom, &job.alpha, &v))?, format!("{name}: identity fails"))?;
        }
        configs += 1;
    }
    Ok(format!("1000 vectors x {configs} configs, 0 failures (psi configs not covered: {})", skipped.join(", ")))
}

fn ac7() -> Verdict {
    let job = e(bundled::job("f9-theta-n4"))?;
    let r = &job.ring;
    ensure(r.field().order() == 9 && r.width() == 3, "expected F_9 with kl = 3")?;
    let order = r.autom_order(Autom::Theta(1)) as usize;
    ensure(r.width() % order == 1, "kl != 1 mod |theta|")?;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut count = 0;
    for n in [1usize, 2, 3, 4, 5, 7] {
        for _ in 0..200 {
            let v = random_vec(r, n, &mut rng);
            ensure(e(phi_skew_commutes(r, Autom::Theta(1), &v))?, format!("identity fails at length {n}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} vectors, 0 failures"))
}

fn ambient_ok(q: u32, len: usize) -> bool {
    (q as f64).powi(len as i32) <= ENUMERATION_CAP as f64
}

fn ac8() -> Verdict {
    let mut whole = Vec::new();
    let mut componentwise = Vec::new();
    let mut skipped = Vec::new();
    for (name, _) in bundled::CONFIGS {
        let code = e(bundled::code(name))?;
        if code.autom() == Autom::Psi {
            continue;
        }
        let r = code.ring();
        let q = r.field().order();
        let order = r.autom_order(code.autom()) as usize;
        if code.n() % order != 0 || code.n() > 8 {
            continue;
        }
        let dual = e(code.dual())?;
        ensure(code.size_exponent() + dual.size_exponent() == r.width() * code.n(), format!("{name}: |C||C^perp| != q^(kl n)"))?;
        if ambient_ok(q, r.width() * code.n()) {
            let set = e(enumerate_code(&OracleCode::from_code(&code)))?;
            let brute = e(brute_dual(&set, InnerProduct::Ring))?;
            let formula = e(enumerate_code(&OracleCode::from_code(&dual)))?;
            ensure(brute == formula, format!("{name}: dual sets differ"))?;
            whole.push(*name);
        } else if ambient_ok(q, code.n()) {
            let parts = e(code.decompose())?;
            let dparts = e(dual.decompose())?;
            for (p, d) in parts.iter().zip(dparts) {
                let f = r.field();
                let set = e(enumerate_code(&OracleCode::over_field(f, code.autom(), code.n(), p.alpha, p.gen.coeffs())))?;
                let brute = e(brute_dual(&set, InnerProduct::Flat))?;
                let formula = e(enumerate_code(&OracleCode::over_field(f, code.autom(), code.n(), d.alpha, d.gen.coeffs())))?;
                ensure(brute == formula, format!("{name}: component ({},{}) dual sets differ", p.i + 1, p.j + 1))?;
            }
            componentwise.push(*name);
        } else {
            skipped.push(*name);
        }
    }
    ensure(whole.len() + componentwise.len() >= 3, "too few enumerable configurations")?;
    Ok(format!(
        "whole: {}; per component: {}; not enumerable: {}",
        whole.join(", "),
        componentwise.join(", "),
        skipped.join(", ")
    ))
}

fn ac9() -> Verdict {
    let mut done = Vec::new();
    for (name, _) in bundled::CONFIGS {
        let code = e(bundled::code(name))?;
        if code.autom() == Autom::Psi {
            continue;
        }
        let r = code.ring();
        let n = code.n() as u64;
        if gcd(n, r.field().order() as u64) != 1 || gcd(n, r.autom_order(code.autom())) != 1 {
            continue;
        }
        let idem = e(code.idempotent_generator())?;
        ensure(e(code.is_idempotent(&idem))?, format!("{name}: e*e != e"))?;
        ensure(
            (r.field().order() as f64).powi(code.size_exponent() as i32) <= ENUMERATION_CAP as f64,
            format!("{name}: not enumerable"),
        )?;
        let from_e = OracleCode { gen: idem.coeffs().iter().map(|c| c.crt.clone()).collect(), ..OracleCode::from_code(&code) };
        let set_e = e(enumerate_code(&from_e))?;
        let set_g = e(enumerate_code(&OracleCode::from_code(&code)))?;
        ensure(set_e == set_g, format!("{name}: <e> != <gen>"))?;
        done.push(*name);
    }
    ensure(done.len() >= 3, "too few configurations")?;
    Ok(format!("e*e = e and <e> = <gen> for {}", done.join(", ")))
}

/// Random polynomial of length `len` with a unit leading coefficient.
fn random_divisor(sr: &SkewRing<Ring>, rng: &mut ChaCha8Rng, len: usize) -> SkewPoly<RingElement> {
    let r = sr.base();
    let mut cs: Vec<RingElement> = (0..len - 1).map(|_| r.random(rng)).collect();
    cs.push(r.random_unit(rng));
    sr.poly(cs)
}

fn ac10() -> Verdict {
    let mut rings: BTreeMap<String, Ring> = BTreeMap::new();
    for (name, _) in bundled::CONFIGS {
        let job = e(bundled::job(name))?;
        rings.insert(e(serde_json::to_string(&job.ring.spec()))?, job.ring);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for r in rings.values() {
        let tag = format!("F_{} k={} l={}", r.field().order(), r.k(), r.l());
        r.check_idempotent_identities().map_err(|m| format!("{tag}: {m}"))?;
        let s = r.field().s();
        let mut automs = vec![Autom::Identity, Autom::Psi];
        automs.extend((1..=s).filter(|t| s % t == 0).map(Autom::Theta));
        for k in 0..1000 {
            let (a, b) = (r.random(&mut rng), r.random(&mut rng));
            // idempotent decomposition in u,v form
            let c = rng.gen_range(0..r.width());
            let (i, j) = (c / r.l(), c % r.l());
            let eta = r.eta(i, j);
            let lhs = r.biv_reduce(&r.biv_mul(&r.to_uv_poly(&a), &r.to_uv_poly(&eta)));
            ensure(lhs == r.to_uv_poly(&r.scale(a.crt[c], &eta)), format!("{tag}: a eta_ij != a_ij eta_ij"))?;
            let prod = r.biv_reduce(&r.biv_mul(&r.to_uv_poly(&a), &r.to_uv_poly(&b)));
            ensure(prod == r.to_uv_poly(&r.mul(&a, &b)), format!("{tag}: CRT product differs from u,v product"))?;

            // automorphism laws
            for &au in &automs[1..] {
                let ord = r.autom_order(au);
                let ap = |x: &RingElement| r.apply_autom(au, x, 1);
                ensure(ap(&r.add(&a, &b)) == r.add(&ap(&a), &ap(&b)), format!("{tag}: {au} not additive"))?;
                ensure(ap(&r.mul(&a, &b)) == r.mul(&ap(&a), &ap(&b)), format!("{tag}: {au} not multiplicative"))?;
                ensure(r.apply_autom(au, &a, ord) == a, format!("{tag}: {au}^{ord} != id"))?;
            }
            ensure(r.autom_order(Autom::Psi) == r.l() as u64, format!("{tag}: |psi| != l"))?;

            // skew multiplication and right division
            let au = automs[k % automs.len()];
            let sr = e(SkewRing::new(r.clone(), au))?;
            let (len_a, len_b, len_c) = (rng.gen_range(1..5), rng.gen_range(1..5), rng.gen_range(1..5));
            let (x, y, z) = (sr.random(&mut rng, len_a), sr.random(&mut rng, len_b), sr.random(&mut rng, len_c));
            let xy_z = e(sr.mul(&e(sr.mul(&x, &y))?, &z))?;
            let x_yz = e(sr.mul(&x, &e(sr.mul(&y, &z))?))?;
            ensure(xy_z == x_yz, format!("{tag}: {au} product not associative"))?;
            let left = e(sr.mul(&x, &e(sr.add(&y, &z))?))?;
            ensure(left == e(sr.add(&e(sr.mul(&x, &y))?, &e(sr.mul(&x, &z))?))?, format!("{tag}: {au} left distributivity"))?;
            let right = e(sr.mul(&e(sr.add(&x, &y))?, &z))?;
            ensure(right == e(sr.add(&e(sr.mul(&x, &z))?, &e(sr.mul(&y, &z))?))?, format!("{tag}: {au} right distributivity"))?;
            let (len_f, len_g) = (rng.gen_range(1..9), rng.gen_range(1..5));
            let f = sr.random(&mut rng, len_f);
            let g = random_divisor(&sr, &mut rng, len_g);
            let (q, rem) = e(sr.right_divrem(&f, &g))?;
            ensure(rem.degree().is_none_or(|d| Some(d) < g.degree()), format!("{tag}: remainder too large"))?;
            ensure(e(sr.add(&e(sr.mul(&q, &g))?, &rem))? == f, format!("{tag}: f != q*g + r"))?;
        }
    }
    Ok(format!("{} rings x 1000 instances, 0 failures", rings.len()))
}

fn ac11() -> Verdict {
    let mut done = Vec::new();
    for name in ["f4-theta-n4", "f9-theta-n2", "f4-id-n3", "f3-psi-n2"] {
        let code = e(bundled::code(name))?;
        let set = e(enumerate_code(&OracleCode::from_code(&code)))?;
        // flat words are already Gray images: position t*kl + c
        let flat_dual = e(brute_dual(&set, InnerProduct::Flat))?;
        let ring_dual: CodewordSet = if code.autom() == Autom::Psi {
            e(brute_dual(&set, InnerProduct::Ring))?
        } else {
            e(enumerate_code(&OracleCode::from_code(&e(code.dual())?)))?
        };
        ensure(flat_dual == ring_dual, format!("{name}: Phi(C^perp) != Phi(C)^perp"))?;
        done.push(name);
    }
    Ok(format!("Phi(C^perp) = Phi(C)^perp for {}", done.join(", ")))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("AC1", ac1, Some(Duration::from_secs(1))),
        ("AC2", ac2, Some(Duration::from_secs(1))),
        ("AC3", ac3, Some(Duration::from_secs(1))),
        ("AC4", ac4, Some(Duration::from_secs(1))),
        ("AC5", ac5, Some(Duration::from_secs(5))),
        ("AC6", ac6, None),
        ("AC7", ac7, None),
        ("AC8", ac8, None),
        ("AC9", ac9, None),
        ("AC10", ac10, Some(Duration::from_secs(60))),
        ("AC11", ac11, None),
    ];
    let mut failed = 0;
    for (id, run, limit) in criteria {
        let start = Instant::now();
        let verdict = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let verdict = match (verdict, limit) {
            (Ok(_), Some(l)) if elapsed > l => Err(format!("took {elapsed:.2?}, limit {l:?}")),
            (v, _) => v,
        };
        match verdict {
            Ok(msg) => println!("[PASS] {id} {msg} ({elapsed:.2?})"),
            Err(msg) => {
                failed += 1;
                println!("[FAIL] {id} {msg} ({elapsed:.2?})");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 11 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
