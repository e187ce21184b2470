//! Named property suites. Each suite is a case generator plus a per-case
//! check; a failure carries the case payload so it can be replayed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::decomp::{decompose_with, is_isomorphic, DecomposeOptions, IdTag, IsoVerdict};
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVec};
use crate::klein::{klein_decompose, signature_of, KleinDecomposition, KleinSummand, Signature};
use crate::module::{
    band_module, cyclic_decomposition, heller, omega, regular_module, string_module, trivial,
    KleinRep, Rep, SubgroupId,
};
use crate::quiver::{
    coordinate_module, induced_omega_seed, induced_trivial_seed, sweep_component, Coordinate,
    Pattern, SweepReport,
};
use crate::word::{omega2_word, Letter, QParam, Sym, Word};

/// Optional overrides; unset fields take the suite's defaults.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Bounds {
    pub max_len: Option<usize>,
    pub radius: Option<i64>,
    pub seeds: Vec<Word>,
    pub samples: Option<usize>,
}

/// Bounds after defaults are applied.
#[derive(Clone, Debug, Serialize)]
pub struct Resolved {
    pub max_len: usize,
    pub radius: i64,
    pub seeds: Vec<Word>,
    pub samples: usize,
}

pub struct Ctx {
    pub q: QParam,
    pub seed: u64,
    pub bounds: Resolved,
}

#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub case: Value,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub q: usize,
    pub seed: u64,
    pub bounds: Resolved,
    pub cases: usize,
    pub failures: Vec<Failure>,
    pub passed: bool,
}

type Check = std::result::Result<(), String>;

pub struct SuiteDef {
    pub name: &'static str,
    pub about: &'static str,
    default_len: usize,
    default_samples: usize,
    cases: fn(&Ctx) -> Result<Vec<Value>>,
    check: fn(&Ctx, &Value) -> Check,
}

static SUITES: &[SuiteDef] = &[
    SuiteDef {
        name: "omega2",
        about: "word Ω² agrees with homological Ω²",
        default_len: 7,
        default_samples: 0,
        cases: omega2_cases,
        check: omega2_check,
    },
    SuiteDef {
        name: "restrictions",
        about: "restrictions to <x> and <y> of strings and bands",
        default_len: 8,
        default_samples: 10,
        cases: restriction_cases,
        check: restriction_check,
    },
    SuiteDef {
        name: "evenstring",
        about: "string summands of products of even-dimensional strings",
        default_len: 5,
        default_samples: 0,
        cases: evenstring_cases,
        check: evenstring_check,
    },
    SuiteDef {
        name: "bensoncarlson",
        about: "trivial summands of tensor products",
        default_len: 5,
        default_samples: 0,
        cases: benson_carlson_cases,
        check: benson_carlson_check,
    },
    SuiteDef {
        name: "fixedpoints",
        about: "fixed points of Ω^{-n}K for the Klein four group",
        default_len: 8,
        default_samples: 0,
        cases: fixed_point_cases,
        check: fixed_point_check,
    },
    SuiteDef {
        name: "signaturezero",
        about: "a zero entry in non-positive signatures",
        default_len: 9,
        default_samples: 0,
        cases: signature_zero_cases,
        check: signature_zero_check,
    },
    SuiteDef {
        name: "diamond",
        about: "diamond rule on restriction to the active Klein subgroup",
        default_len: 0,
        default_samples: 0,
        cases: seed_cases,
        check: diamond_check,
    },
    SuiteDef {
        name: "trichotomy",
        about: "signature grid follows pattern (i)",
        default_len: 0,
        default_samples: 0,
        cases: seed_cases,
        check: trichotomy_check,
    },
    SuiteDef {
        name: "uniqueness",
        about: "at most one [0,0] vertex per component",
        default_len: 0,
        default_samples: 0,
        cases: seed_cases,
        check: uniqueness_check,
    },
    SuiteDef {
        name: "duality",
        about: "duals of neighbours and negated signatures",
        default_len: 7,
        default_samples: 0,
        cases: duality_cases,
        check: duality_check,
    },
    SuiteDef {
        name: "vertexy-odd",
        about: "odd signatures around Ω of the induced trivial module",
        default_len: 0,
        default_samples: 0,
        cases: vertex_y_odd_cases,
        check: vertex_y_odd_check,
    },
    SuiteDef {
        name: "klein",
        about: "Klein decomposition orientation, dimension, duality and Ω-shift",
        default_len: 7,
        default_samples: 10_000,
        cases: klein_cases,
        check: klein_check,
    },
];

pub fn suites() -> &'static [SuiteDef] {
    SUITES
}

pub fn suite_names() -> Vec<&'static str> {
    SUITES.iter().map(|s| s.name).collect()
}

fn lookup(name: &str) -> Result<&'static SuiteDef> {
    SUITES
        .iter()
        .find(|s| s.name == name)
        .ok_or_else(|| Error::UnknownSuite(name.to_string()))
}

fn context(def: &SuiteDef, q: QParam, bounds: &Bounds, seed: u64) -> Ctx {
    Ctx {
        q,
        seed,
        bounds: Resolved {
            max_len: bounds.max_len.unwrap_or(def.default_len),
            radius: bounds.radius.unwrap_or(2),
            seeds: bounds.seeds.clone(),
            samples: bounds.samples.unwrap_or(def.default_samples),
        },
    }
}

/// Runs every case of suite `name` in parallel.
pub fn run_suite(name: &str, q: QParam, bounds: &Bounds, seed: u64) -> Result<SuiteReport> {
    let def = lookup(name)?;
    let ctx = context(def, q, bounds, seed);
    let cases = (def.cases)(&ctx)?;
    let failures: Vec<Failure> = cases
        .par_iter()
        .filter_map(|c| {
            (def.check)(&ctx, c).err().map(|detail| Failure { case: c.clone(), detail })
        })
        .collect();
    Ok(SuiteReport {
        suite: name.to_string(),
        q: q.get(),
        seed,
        passed: failures.is_empty(),
        cases: cases.len(),
        bounds: ctx.bounds,
        failures,
    })
}

/// Re-runs one case from a failure payload.
pub fn replay(name: &str, q: QParam, bounds: &Bounds, seed: u64, case: &Value) -> Result<Check> {
    let def = lookup(name)?;
    Ok((def.check)(&context(def, q, bounds, seed), case))
}

fn word_field(v: &Value, key: &str) -> std::result::Result<Word, String> {
    serde_json::from_value(v.get(key).cloned().ok_or(format!("missing {key}"))?)
        .map_err(|e| e.to_string())
}

fn words_up_to(max_len: usize, q: QParam) -> Vec<Word> {
    (0..=max_len).flat_map(|n| Word::enumerate(n, q)).collect()
}

fn err<E: ToString>(e: E) -> String {
    e.to_string()
}

// ---- omega2

fn omega2_cases(ctx: &Ctx) -> Result<Vec<Value>> {
    Ok(words_up_to(ctx.bounds.max_len, ctx.q)
        .into_iter()
        .filter(|w| omega2_word(w, ctx.q).is_ok())
        .map(|w| json!({ "word": w }))
        .collect())
}

fn omega2_check(ctx: &Ctx, case: &Value) -> Check {
    let w = word_field(case, "word")?;
    let u = omega2_word(&w, ctx.q).map_err(err)?;
    let by_word = string_module(&u, ctx.q).map_err(err)?;
    let by_heller = heller(&string_module(&w, ctx.q).map_err(err)?, -2);
    if crate::decomp::indecomposables_isomorphic(&by_word, &by_heller).map_err(err)? {
        Ok(())
    } else {
        Err(format!("M({u}) is not Ω²M({w})"))
    }
}

// ---- restrictions

fn band_words(q: QParam) -> Vec<Word> {
    (2..=6)
        .step_by(2)
        .flat_map(|n| Word::enumerate(n, q))
        .filter(|w| band_module(w, &BitMatrix::identity(1), q).is_ok())
        .collect()
}

fn restriction_cases(ctx: &Ctx) -> Result<Vec<Value>> {
    let mut out: Vec<Value> =
        words_up_to(ctx.bounds.max_len, ctx.q).into_iter().map(|w| json!({ "word": w })).collect();
    let bands = band_words(ctx.q);
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    for _ in 0..ctx.bounds.samples {
        if bands.is_empty() {
            break;
        }
        let w = &bands[rng.gen_range(0..bands.len())];
        let phi = BitMatrix::random_invertible(rng.gen_range(1..=3), &mut rng);
        out.push(json!({ "band": w, "phi": phi }));
    }
    Ok(out)
}

fn restriction_check(ctx: &Ctx, case: &Value) -> Check {
    if case.get("band").is_some() {
        let w = word_field(case, "band")?;
        let phi: BitMatrix = serde_json::from_value(case["phi"].clone()).map_err(err)?;
        let m = band_module(&w, &phi, ctx.q).map_err(err)?;
        let (tx, ty) = (cyclic_decomposition(m.x()).1, cyclic_decomposition(m.y()).1);
        return if tx == 0 && ty == 0 {
            Ok(())
        } else {
            Err(format!("band restrictions have {tx} and {ty} trivial summands"))
        };
    }
    let w = word_field(case, "word")?;
    let m = string_module(&w, ctx.q).map_err(err)?;
    let (tx, ty) = (cyclic_decomposition(m.x()).1, cyclic_decomposition(m.y()).1);
    if m.dim() % 2 == 1 {
        return if tx == 1 && ty == 1 {
            Ok(())
        } else {
            Err(format!("odd dimension but {tx} and {ty} trivial summands"))
        };
    }
    let (first, last) = (w.first().expect("nonempty"), w.last().expect("nonempty"));
    if first.sym != last.sym {
        return Err("first and last letters differ in type".into());
    }
    let expect = if first.sym == Sym::A { (0, 2) } else { (2, 0) };
    if (tx, ty) == expect {
        Ok(())
    } else {
        Err(format!("trivial summands ({tx}, {ty}), expected {expect:?}"))
    }
}

// ---- tensor products

fn decompose(
    m: &Rep,
    seed: u64,
    identify: bool,
) -> std::result::Result<crate::decomp::DecompositionReport, String> {
    let mut opts = DecomposeOptions { seed, ..DecomposeOptions::default() };
    if !identify {
        opts.id_budget = 0;
    }
    let rep = decompose_with(m, opts);
    if !rep.all_certified() || !rep.reassembled {
        return Err("decomposition not certified".into());
    }
    Ok(rep)
}

fn pair_cases(words: &[Word]) -> Vec<Value> {
    let mut out = Vec::new();
    for (i, a) in words.iter().enumerate() {
        for b in &words[i..] {
            out.push(json!({ "left": a, "right": b }));
        }
    }
    out
}

fn pair_modules(ctx: &Ctx, case: &Value) -> std::result::Result<(Rep, Rep), String> {
    let a = string_module(&word_field(case, "left")?, ctx.q).map_err(err)?;
    let b = string_module(&word_field(case, "right")?, ctx.q).map_err(err)?;
    Ok((a, b))
}

fn evenstring_cases(ctx: &Ctx) -> Result<Vec<Value>> {
    let odd: Vec<Word> = Word::enumerate_canonical(ctx.bounds.max_len, ctx.q)
        .into_iter()
        .filter(|w| w.len() % 2 == 1)
        .collect();
    Ok(pair_cases(&odd))
}

fn evenstring_check(ctx: &Ctx, case: &Value) -> Check {
    let (wa, wb) = (word_field(case, "left")?, word_field(case, "right")?);
    let (a, b) = pair_modules(ctx, case)?;
    let rep = decompose(&a.tensor(&b).map_err(err)?, ctx.seed, true)?;
    if rep.count_where(|s| s.tag == IdTag::Unidentified) > 0 {
        return Err("unidentified summand".into());
    }
    let strings = rep.count_where(|s| matches!(s.tag, IdTag::StringWord(_)));
    let even_strings = rep.count_where(|s| matches!(s.tag, IdTag::StringWord(_)) && s.dim % 2 == 0);
    let same = wa.starts_with_sym(Sym::A) == wb.starts_with_sym(Sym::A);
    match (same, strings, even_strings) {
        (false, 0, _) | (true, 2, 2) => Ok(()),
        _ => Err(format!("{strings} string summands, {even_strings} even-dimensional")),
    }
}

fn benson_carlson_cases(ctx: &Ctx) -> Result<Vec<Value>> {
    Ok(pair_cases(&Word::enumerate_canonical(ctx.bounds.max_len, ctx.q)))
}

fn benson_carlson_check(ctx: &Ctx, case: &Value) -> Check {
    let (m, n) = pair_modules(ctx, case)?;
    let rep = decompose(&m.tensor(&n).map_err(err)?, ctx.seed, false)?;
    let trivial_count = rep.count_where(|s| s.dim == 1);
    let dual_iso = match is_isomorphic(&m, &n.dual(), ctx.seed).map_err(err)? {
        IsoVerdict::Isomorphic => true,
        IsoVerdict::NotIsomorphic => false,
        IsoVerdict::NotDecided => return Err("M ≅ N* undecided".into()),
    };
    let expect = usize::from(m.dim() % 2 == 1 && dual_iso);
    if trivial_count != expect {
        return Err(format!("K appears {trivial_count} times, expected {expect}"));
    }
    if (m.dim() % 2 == 0 || n.dim() % 2 == 0) && rep.summands.iter().any(|s| s.dim % 2 == 1) {
        return Err(format!("odd summand in a product with an even factor: {:?}", rep.dims()));
    }
    Ok(())
}

// ---- Klein-four lemmas

fn fixed_point_cases(ctx: &Ctx) -> Result<Vec<Value>> {
    Ok((0..=ctx.bounds.max_len).map(|n| json!({ "n": n })).collect())
}

fn fixed_dim(g: &BitMatrix) -> usize {
    g.rows() - g.plus_identity().rank()
}

fn fixed_point_check(_: &Ctx, case: &Value) -> Check {
    let n = case["n"].as_i64().ok_or("missing n")?;
    let m = heller(&trivial(QParam::KLEIN), n);
    let expect_decomp = {
        let mut d = KleinDecomposition::new();
        d.add(KleinSummand::Omega(-n), 1);
        d
    };
    if klein_decompose(&KleinRep::from_rep(&m)) != expect_decomp {
        return Err(format!("Ω^{}K decomposes wrongly", -n));
    }
    let joint = m.radical_socle().1.rows();
    let (fx, fy) = (fixed_dim(m.x()), fixed_dim(m.y()));
    let want = n as usize + 1;
    if joint == fx && joint == fy && joint == want {
        Ok(())
    } else {
        Err(format!("fixed points: joint {joint}, g1 {fx}, g2 {fy}, expected {want}"))
    }
}

fn signature_zero_cases(ctx: &Ctx) -> Result<Vec<Value>> {
    Ok(words_up_to(ctx.bounds.max_len, ctx.q)
        .into_iter()
        .filter(|w| w.len() % 2 == 1)
        .map(|w| json!({ "word": w }))
        .collect())
}

fn signature_zero_check(ctx: &Ctx, case: &Value) -> Check {
    let w = word_field(case, "word")?;
    let m = string_module(&w, ctx.q).map_err(err)?;
    let idx = klein_decompose(&m.restrict_klein(SubgroupId::KleinY)).omega_indices();
    let [i, j] = idx[..] else { return Ok(()) };
    let (first, last) = (w.first().expect("odd length"), w.last().expect("odd length"));
    let stated = first == Letter::A_INV || last == Letter::A;
    let dual = first == Letter::A || last == Letter::A_INV;
    if stated && i <= 0 && j <= 0 && i != 0 && j != 0 {
        return Err(format!("non-positive indices [{i},{j}] without a zero"));
    }
    if dual && i >= 0 && j >= 0 && i != 0 && j != 0 {
        return Err(format!("non-negative indices [{i},{j}] without a zero (dual form)"));
    }
    Ok(())
}

// ---- quiver sweeps

fn default_seeds(ctx: &Ctx) -> Result<Vec<Word>> {
    if !ctx.bounds.seeds.is_empty() {
        return Ok(ctx.bounds.seeds.clone());
    }
    Ok(vec![induced_trivial_seed(ctx.q)?, "a b- a".parse()?])
}

fn seed_cases(ctx: &Ctx) -> Result<Vec<Value>> {
    Ok(default_seeds(ctx)?.into_iter().map(|w| json!({ "seed_word": w })).collect())
}

fn sweep(ctx: &Ctx, case: &Value) -> std::result::Result<SweepReport, String> {
    let w = word_field(case, "seed_word")?;
    sweep_component(&w, ctx.bounds.radius, ctx.q).map_err(err)
}

/// Every candidate pattern satisfies the diamond rule as a statement about
/// multisets of integers.
fn patterns_obey_rule(radius: i64, base: Signature) -> bool {
    let pats = [Pattern::I, Pattern::II, Pattern::III];
    (-radius..radius).all(|i| {
        (-radius..radius).all(|j| {
            pats.iter().all(|&p| {
                [false, true].iter().all(|&swap| {
                    let at = |di, dj| p.predict(base, Coordinate::new(i + di, j + dj), swap).0;
                    let mut l: Vec<i64> = at(0, 0).into_iter().chain(at(1, 1)).collect();
                    let mut r: Vec<i64> = at(1, 0).into_iter().chain(at(0, 1)).collect();
                    l.sort_unstable();
                    r.sort_unstable();
                    l == r
                })
            })
        })
    })
}

fn diamond_check(ctx: &Ctx, case: &Value) -> Check {
    let r = sweep(ctx, case)?;
    let base = r.signature(Coordinate::new(0, 0)).ok_or("no base signature")?;
    if !patterns_obey_rule(r.radius, base) {
        return Err("a candidate pattern violates the diamond rule".into());
    }
    let failed: Vec<Coordinate> = r
        .diamonds
        .iter()
        .filter(|d| d.verdict == crate::quiver::DiamondVerdict::Fail)
        .map(|d| d.end)
        .collect();
    if !failed.is_empty() {
        return Err(format!("diamonds ending at {failed:?} fail"));
    }
    if let Some(c) = r.alperin_evens_violations.first() {
        return Err(format!("vertex {c:?} has non-periodic restrictions to both or neither Klein subgroup"));
    }
    Ok(())
}

fn grid_mismatches(r: &SweepReport, p: Pattern, base: Signature) -> Vec<String> {
    let fit = |swap| {
        r.vertices
            .iter()
            .filter_map(|v| {
                let s = v.signature?;
                let want = p.predict(base, v.coord, swap);
                (s != want).then(|| format!("({},{}) {s} not {want}", v.coord.i, v.coord.j))
            })
            .collect::<Vec<_>>()
    };
    let (a, b) = (fit(false), fit(true));
    if a.len() <= b.len() {
        a
    } else {
        b
    }
}

fn trichotomy_check(ctx: &Ctx, case: &Value) -> Check {
    let r = sweep(ctx, case)?;
    let base = r.signature(Coordinate::new(0, 0)).ok_or("no base signature")?;
    for k in -r.radius..=r.radius {
        let want = base.shifted(2 * k);
        match r.signature(Coordinate::new(k, k)) {
            Some(s) if s == want => {}
            other => return Err(format!("diagonal ({k},{k}): {other:?}, expected {want}")),
        }
    }
    if let Some(bad) = r.omega2_checks.iter().find(|c| !c.consistent) {
        return Err(format!("word and Heller paths disagree at {:?}", bad.coord));
    }
    if r.pattern == Some(Pattern::I) {
        return Ok(());
    }
    let miss = grid_mismatches(&r, Pattern::I, base);
    Err(format!(
        "pattern {:?}; {} vertices off pattern (i), e.g. {}",
        r.pattern,
        miss.len(),
        miss.iter().take(4).cloned().collect::<Vec<_>>().join(", ")
    ))
}

fn uniqueness_check(ctx: &Ctx, case: &Value) -> Check {
    let r = sweep(ctx, case)?;
    if r.zero_signatures <= 1 {
        Ok(())
    } else {
        Err(format!("{} vertices with signature [0,0]", r.zero_signatures))
    }
}

fn duality_cases(ctx: &Ctx) -> Result<Vec<Value>> {
    let mut out = seed_cases(ctx)?;
    out.extend(
        words_up_to(ctx.bounds.max_len, ctx.q)
            .into_iter()
            .filter(|w| w.len() % 2 == 1 && w.is_canonical())
            .map(|w| json!({ "word": w })),
    );
    Ok(out)
}

fn duality_check(ctx: &Ctx, case: &Value) -> Check {
    if case.get("word").is_some() {
        let m = string_module(&word_field(case, "word")?, ctx.q).map_err(err)?;
        let Ok((s, h)) = signature_of(&m) else { return Ok(()) };
        let (sd, hd) = signature_of(&m.dual()).map_err(err)?;
        let neg = Signature::new(-s.0[0], -s.0[1]);
        return if sd == neg && hd == h {
            Ok(())
        } else {
            Err(format!("dual signature {sd} on {hd:?}, expected {neg} on {h:?}"))
        };
    }
    let w = word_field(case, "seed_word")?;
    let get = |i, j| coordinate_module(&w, Coordinate::new(i, j), ctx.q).map(|p| p.0).map_err(err);
    let m = get(0, 0)?;
    let iso = |a: &Rep, b: &Rep| -> std::result::Result<bool, String> {
        match is_isomorphic(a, b, ctx.seed).map_err(err)? {
            IsoVerdict::Isomorphic => Ok(true),
            IsoVerdict::NotIsomorphic => Ok(false),
            IsoVerdict::NotDecided => Err("undecided isomorphism".into()),
        }
    };
    if !iso(&m, &m.dual())? {
        return Ok(());
    }
    // The dual of the sequence ending at a self-dual M starts at M.
    let (up, right) = (get(0, 1)?.dual(), get(1, 0)?.dual());
    let (down, left) = (get(0, -1)?, get(-1, 0)?);
    let straight = iso(&up, &down)? && iso(&right, &left)?;
    let crossed = iso(&up, &left)? && iso(&right, &down)?;
    if straight || crossed {
        Ok(())
    } else {
        Err("duals of the middle terms do not match the neighbours below".into())
    }
}

fn vertex_y_odd_cases(ctx: &Ctx) -> Result<Vec<Value>> {
    let seeds = if ctx.bounds.seeds.is_empty() {
        vec![induced_omega_seed(ctx.q)?]
    } else {
        ctx.bounds.seeds.clone()
    };
    Ok(seeds.into_iter().map(|w| json!({ "seed_word": w })).collect())
}

fn vertex_y_odd_check(ctx: &Ctx, case: &Value) -> Check {
    let r = sweep(ctx, case)?;
    let even: Vec<String> = r
        .vertices
        .iter()
        .filter_map(|v| {
            let s = v.signature?;
            (!s.0.iter().all(|x| x.rem_euclid(2) == 1))
                .then(|| format!("({},{}) {s}", v.coord.i, v.coord.j))
        })
        .collect();
    if even.is_empty() && r.zero_signatures == 0 {
        Ok(())
    } else {
        Err(format!(
            "{} vertices with an even entry ({} at [0,0]), e.g. {}",
            even.len(),
            r.zero_signatures,
            even.iter().take(4).cloned().collect::<Vec<_>>().join(", ")
        ))
    }
}

// ---- Klein self-tests

fn klein_cases(ctx: &Ctx) -> Result<Vec<Value>> {
    let mut out: Vec<Value> = (-4..=4).map(|n: i64| json!({ "orientation": n })).collect();
    out.extend((0..ctx.bounds.samples).map(|k| json!({ "random": k })));
    for w in Word::enumerate_canonical(ctx.bounds.max_len, ctx.q) {
        out.push(json!({ "shift": w }));
    }
    Ok(out)
}

/// A random Klein-four module of dimension at most 12: a quotient of a
/// submodule of `KV₄³`, dualised half the time.
pub fn random_klein_module<R: Rng + ?Sized>(rng: &mut R) -> KleinRep {
    let v4 = regular_module(QParam::KLEIN);
    let free = Rep::direct_sum(&[&v4, &v4, &v4]).expect("same group");
    let n = free.dim();
    let pick = |rng: &mut R, len: usize, k: usize| -> Vec<BitVec> {
        (0..k)
            .map(|_| {
                let mut v = BitVec::zeros(len);
                for i in 0..len {
                    v.set(i, rng.gen());
                }
                v
            })
            .collect()
    };
    let k = rng.gen_range(1..=4);
    let gens = pick(rng, n, k);
    let (sub, _) = free.submodule(&free.generated_subspace(&gens));
    let k = rng.gen_range(0..=2);
    let rels = pick(rng, sub.dim(), k);
    let m = if sub.dim() == 0 { sub } else { sub.quotient(&sub.generated_subspace(&rels)) };
    let m = if rng.gen() { m.dual() } else { m };
    KleinRep::from_rep(&m)
}

fn klein_invariants(m: &KleinRep) -> Check {
    let d = klein_decompose(m);
    if d.dim() != m.dim() {
        return Err(format!("summand dimensions add to {} not {}", d.dim(), m.dim()));
    }
    let dd = klein_decompose(&m.dual());
    if dd != d.negated() {
        return Err(format!("dual decomposes as {dd}, expected {}", d.negated()));
    }
    let od = klein_decompose(&KleinRep::from_rep(&omega(&m.as_rep())));
    if od.without_free() != d.without_free().shifted(1) {
        return Err(format!("Ω decomposes as {od}, expected shift of {d}"));
    }
    Ok(())
}

fn klein_check(ctx: &Ctx, case: &Value) -> Check {
    if let Some(n) = case.get("orientation").and_then(Value::as_i64) {
        let m = heller(&trivial(QParam::KLEIN), -n);
        let d = klein_decompose(&KleinRep::from_rep(&m));
        let mut want = KleinDecomposition::new();
        want.add(KleinSummand::Omega(n), 1);
        return if d == want { Ok(()) } else { Err(format!("Ω^{n}K decomposes as {d}")) };
    }
    if let Some(k) = case.get("random").and_then(Value::as_u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed ^ k.wrapping_mul(0x9e37_79b9_7f4a_7c15));
        return klein_invariants(&random_klein_module(&mut rng));
    }
    let w = word_field(case, "shift")?;
    let m = string_module(&w, ctx.q).map_err(err)?;
    for s in [SubgroupId::KleinX, SubgroupId::KleinY] {
        klein_invariants(&m.restrict_klein(s)).map_err(|e| format!("{s:?}: {e}"))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q2() -> QParam {
        QParam::new(2).unwrap()
    }

    #[test]
    fn unknown_suite() {
        assert!(matches!(
            run_suite("nope", q2(), &Bounds::default(), 0),
            Err(Error::UnknownSuite(_))
        ));
    }

    #[test]
    fn small_suites_pass() {
        for name in ["fixedpoints", "signaturezero", "restrictions", "uniqueness"] {
            let r = run_suite(name, q2(), &Bounds::default(), 1).unwrap();
            assert!(r.passed, "{name}: {:?}", r.failures.first());
            assert!(r.cases > 0);
        }
    }

    #[test]
    fn failures_replay() {
        let b = Bounds::default();
        assert_eq!(replay("omega2", q2(), &b, 0, &json!({ "word": ["a"] })).unwrap(), Ok(()));
        assert!(replay("omega2", q2(), &b, 0, &json!({ "word": 7 })).unwrap().is_err());
    }

    #[test]
    fn patterns_satisfy_rule_symbolically() {
        assert!(patterns_obey_rule(3, Signature::new(0, 0)));
        assert!(patterns_obey_rule(2, Signature::new(1, 3)));
    }
}
