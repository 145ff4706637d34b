//! Bundled worked examples and the regression checks run against them.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::autom::Autom;
use crate::codes::{Code, ShiftKind};
use crate::config::{Job, JobConfig};
use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};
use crate::gray::gray_image_params;
use crate::oracle::{closure_check, enumerate_code, CodewordSet, OracleCode};
use crate::ring::{BivPoly, Ring, RingElement};
use crate::skewpoly::SkewRing;

/// `(name, json)` for every bundled configuration.
pub const CONFIGS: &[(&str, &str)] = &[
    ("example-1", include_str!("../data/example-1.json")),
    ("example-2", include_str!("../data/example-2.json")),
    ("example-3", include_str!("../data/example-3.json")),
    ("example-4", include_str!("../data/example-4.json")),
    ("example-5", include_str!("../data/example-5.json")),
    ("example-6", include_str!("../data/example-6.json")),
    ("example-7a", include_str!("../data/example-7a.json")),
    ("example-7b", include_str!("../data/example-7b.json")),
    ("f4-theta-n4", include_str!("../data/f4-theta-n4.json")),
    ("f9-theta-n2", include_str!("../data/f9-theta-n2.json")),
    ("f4-theta-n3", include_str!("../data/f4-theta-n3.json")),
    ("f4-id-n3", include_str!("../data/f4-id-n3.json")),
    ("f3-psi-n2", include_str!("../data/f3-psi-n2.json")),
    ("f9-theta-n4", include_str!("../data/f9-theta-n4.json")),
];

/// Names of the seven worked examples replayed by [`run_all`].
pub const EXAMPLES: &[&str] = &["example-1", "example-2", "example-3", "example-4", "example-5", "example-6", "example-7"];

pub fn config(name: &str) -> Result<JobConfig> {
    let text = CONFIGS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, t)| *t)
        .ok_or_else(|| Error::Config(format!("no bundled config named {name:?}")))?;
    JobConfig::from_json(text)
}

pub fn job(name: &str) -> Result<Job> {
    config(name)?.resolve()
}

pub fn code(name: &str) -> Result<Code> {
    job(name)?.code()
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Outcome {
    pub example: String,
    pub pass: bool,
    pub checks: Vec<Check>,
}

#[derive(Default)]
struct Checks(Vec<Check>);

impl Checks {
    fn check(&mut self, name: &str, pass: bool, detail: impl Into<String>) {
        self.0.push(Check { name: name.into(), pass, detail: detail.into() });
    }

    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, name: &str, got: T, want: T) {
        let pass = got == want;
        let detail = if pass { String::new() } else { format!("got {got:?}, expected {want:?}") };
        self.check(name, pass, detail);
    }

    /// Records `r` as a failed check when it is an error.
    fn attempt<T>(&mut self, name: &str, r: Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.check(name, false, e.to_string());
                None
            }
        }
    }
}

/// Ring element from `(coefficient, u degree, v degree)` terms.
pub fn uv(ring: &Ring, terms: &[(FieldElement, usize, usize)]) -> RingElement {
    let du = terms.iter().map(|t| t.1).max().unwrap_or(0) + 1;
    let dv = terms.iter().map(|t| t.2).max().unwrap_or(0) + 1;
    let mut poly = BivPoly::zero(du, dv);
    let field = ring.field();
    for &(c, a, b) in terms {
        poly.coeffs[a][b] = field.add(poly.coeffs[a][b], c);
    }
    ring.from_uv_poly(&poly)
}

fn divides(c: &mut Checks, job: &Job) {
    let Some(g) = c.attempt("generator", job.generator()) else { return };
    if let Some(r) = c.attempt("divides", Code::verify_generator(&job.ring, job.n, job.autom, &job.alpha, &g)) {
        c.check("divides", r.divides, if r.divides { String::new() } else { "nonzero remainder".into() });
    }
}

fn example_1(c: &mut Checks) -> Result<()> {
    let job = job("example-1")?;
    divides(c, &job);
    c.eq("classification", job.code()?.classify_shift(), ShiftKind::QuasiCyclic { index: 6 });
    let r = &job.ring;
    c.eq("psi(1-v) = v", r.psi(&r.sub(&r.one(), &r.v())), r.v());
    Ok(())
}

fn example_2(c: &mut Checks) -> Result<()> {
    let job = job("example-2")?;
    divides(c, &job);
    c.eq("classification", job.code()?.classify_shift(), ShiftKind::QuasiCyclic { index: 2 });
    let r = &job.ring;
    let ok = (0..r.l()).all(|j| r.psi(&r.gam(j)) == r.gam((j + 1) % r.l()));
    c.check("psi(gamma_j) = gamma_(j+1)", ok, "");
    Ok(())
}

fn example_3(c: &mut Checks) -> Result<()> {
    let job = job("example-3")?;
    divides(c, &job);
    c.eq("classification", job.code()?.classify_shift(), ShiftKind::Cyclic);
    Ok(())
}

fn example_4(c: &mut Checks) -> Result<()> {
    let job = job("example-4")?;
    let r = &job.ring;
    let f = r.field();
    c.eq("alpha = 1-2u^3", job.alpha.clone(), uv(r, &[(f.from_int(1), 0, 0), (f.from_int(-2), 3, 0)]));
    let code = job.code()?;
    c.eq("classification", code.classify_shift(), ShiftKind::Constacyclic);
    let oc = OracleCode::from_code(&code);
    let set = enumerate_code(&oc)?;
    c.check("code closed under the alpha-constacyclic shift", closure_check(&set, |w| oc.shift(w)), "");

    // C_21 replaced by the span of (1,1,1), which is not negacyclic
    let w = r.width();
    let slot = r.coord(1, 0);
    let mut gens: Vec<Vec<FieldElement>> = set
        .basis
        .iter()
        .map(|b| b.iter().enumerate().map(|(p, &x)| if p % w == slot { FieldElement::ZERO } else { x }).collect())
        .collect();
    gens.push((0..w * job.n).map(|p| if p % w == slot { FieldElement::ONE } else { FieldElement::ZERO }).collect());
    let bad = CodewordSet::span(f, w, job.n, gens)?;
    c.check("non-negacyclic component breaks closure", !closure_check(&bad, |w| oc.shift(w)), "");
    Ok(())
}

fn example_5(c: &mut Checks) -> Result<()> {
    let job = job("example-5")?;
    let r = &job.ring;
    let f = r.field();
    let one = f.from_int(1);
    let minus = f.from_int(-1);
    c.eq("alpha = 1-u^2-u^2v", job.alpha.clone(), uv(r, &[(one, 0, 0), (minus, 2, 0), (minus, 2, 1)]));
    divides(c, &job);
    let code = job.code()?;
    c.eq("classification", code.classify_shift(), ShiftKind::Constacyclic);
    if let Some(e) = c.attempt("idempotent generator", code.idempotent_generator()) {
        let idem = code.is_idempotent(&e)?;
        let same = Code::from_generator(r, job.n, job.autom, &job.alpha, &e)?;
        c.check("e*e = e", idem, "");
        c.check("<e> = <gen>", same.decompose()? == code.decompose()?, "");
    }
    Ok(())
}

fn example_6(c: &mut Checks) -> Result<()> {
    let job = job("example-6")?;
    let r = &job.ring;
    let f = r.field();
    let e = |x: i64| f.from_int(x);
    let code = job.code()?;
    let sr = SkewRing::new(r.clone(), job.autom)?;
    let want = sr.poly(vec![
        uv(r, &[(e(1), 0, 0), (e(-2), 2, 0), (e(2), 2, 1)]),
        uv(r, &[(e(1), 0, 0), (e(2), 2, 0), (e(-2), 2, 1)]),
        r.one(),
    ]);
    c.eq("gen = x^2+(1+2u^2-2u^2v)x+(1-2u^2+2u^2v)", code.gen().clone(), want);
    divides(c, &job);
    c.eq("classification", code.classify_shift(), ShiftKind::QuasiTwisted { index: 3 });
    if let Some(d) = c.attempt("dual", code.dual()) {
        if let Some(dd) = c.attempt("double dual", d.dual()) {
            c.check("double dual reproduces the code", dd.gen() == code.gen() && dd.alpha() == code.alpha(), "");
        }
    }
    Ok(())
}

fn example_7(c: &mut Checks, rng: &mut ChaCha8Rng) -> Result<()> {
    let a = code("example-7a")?;
    let b = code("example-7b")?;
    let r = a.ring();
    let f: &Field = r.field();
    let fr = SkewRing::new(f.clone(), Autom::Theta(1))?;
    let p = |idx: &[u32]| -> Result<_> { Ok(fr.poly(idx.iter().map(|&i| f.element(i)).collect::<Result<Vec<_>>>()?)) };
    let target = fr.x_n_minus(6, &FieldElement::ONE);
    // left factor, right factor, ascending indices (beta = 2, beta^2 = 3)
    let factorizations: [(&[u32], &[u32]); 4] = [
        (&[1, 0, 1], &[1, 0, 1, 0, 1]),
        (&[2, 0, 1], &[3, 0, 2, 0, 1]),
        (&[3, 0, 1], &[2, 0, 3, 0, 1]),
        (&[3, 3, 2, 1], &[2, 3, 3, 1]),
    ];
    for (k, (lf, rf)) in factorizations.iter().enumerate() {
        let prod = fr.mul(&p(lf)?, &p(rf)?)?;
        c.eq(&format!("factorization {} of x^6-1", k + 1), prod, target.clone());
    }
    if let Some(ga) = c.attempt("gray params A", gray_image_params(&a, rng, 20)) {
        c.eq("gray params A", (ga.n, ga.k_dim, ga.d), (36, 18, Some(4)));
    }
    if let Some(gb) = c.attempt("gray params B", gray_image_params(&b, rng, 20)) {
        c.eq("gray params B", (gb.n, gb.k_dim, gb.d), (36, 12, Some(3)));
    }
    let (one, beta, beta2) = (FieldElement::ONE, f.element(2)?, f.element(3)?);
    let sr = SkewRing::new(r.clone(), Autom::Theta(1))?;
    let want = sr.poly(vec![
        uv(r, &[(beta2, 1, 1), (beta2, 0, 2), (one, 0, 1), (beta, 1, 0), (one, 0, 0)]),
        r.zero(),
        uv(r, &[(beta, 1, 2), (one, 0, 2), (beta, 0, 1), (beta2, 1, 0), (one, 0, 0)]),
        r.zero(),
        r.one(),
    ]);
    c.eq("uv form of code B generator", b.gen().clone(), want);
    Ok(())
}

/// Runs the regression checks of one worked example (`example-1` .. `example-7`).
pub fn run(name: &str, seed: u64) -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut c = Checks::default();
    let r = match name {
        "example-1" => example_1(&mut c),
        "example-2" => example_2(&mut c),
        "example-3" => example_3(&mut c),
        "example-4" => example_4(&mut c),
        "example-5" => example_5(&mut c),
        "example-6" => example_6(&mut c),
        "example-7" => example_7(&mut c, &mut rng),
        other => return Err(Error::Config(format!("no bundled example named {other:?}"))),
    };
    if let Err(e) = r {
        c.check("run", false, e.to_string());
    }
    let pass = c.0.iter().all(|k| k.pass);
    Ok(Outcome { example: name.to_string(), pass, checks: c.0 })
}

pub fn run_all(seed: u64) -> Vec<Outcome> {
    EXAMPLES.iter().map(|n| run(n, seed).expect("bundled name")).collect()
}
