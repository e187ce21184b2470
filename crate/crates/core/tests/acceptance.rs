//! Acceptance criteria. Each test prints one PASS/FAIL line; run with
//! `cargo test --release --test acceptance -- --nocapture --test-threads=1`.

use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use dihedral::algebraic::{tensor_closure_probe, ProbeOptions, Verdict};
use dihedral::decomp::{is_isomorphic, IsoVerdict};
use dihedral::gf2::Echelon;
use dihedral::group::Element;
use dihedral::klein::{klein_decompose, KleinDecomposition, KleinSummand, Signature};
use dihedral::module::{band_module, heller, induce, regular_module, string_module, trivial};
use dihedral::quiver::{induced_omega_seed, induced_trivial_seed, sweep_component, Coordinate, Pattern};
use dihedral::suite::{run_suite, Bounds};
use dihedral::word::omega2_word;
use dihedral::{BitMatrix, BitVec, KleinRep, QParam, Rep, SubgroupId, Word};

fn q(n: usize) -> QParam {
    QParam::new(n).unwrap()
}

fn report(n: u32, name: &str, ok: bool, elapsed: Duration, detail: &str) {
    println!(
        "criterion {n:>2} [{}] {name} ({:.1}s){}{detail}",
        if ok { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        if detail.is_empty() { "" } else { ": " }
    );
    assert!(ok, "criterion {n} ({name}) failed: {detail}");
}

// ---- oracles

/// `Ω(m)` as the kernel of the projective cover `KG^t → m`, built from a
/// complement of `rad m`. For indecomposable non-projective `m` the kernel
/// has no projective summand.
fn oracle_omega(m: &Rep) -> Rep {
    let (qq, n) = (m.q(), m.dim());
    let rad = m.x().plus_identity().vstack(&m.y().plus_identity());
    let mut e = Echelon::from_vectors(n, rad.row_vecs().iter());
    let tops: Vec<BitVec> =
        (0..n).map(|i| BitVec::unit(n, i)).filter(|u| e.insert(u.clone()).is_some()).collect();
    let order = qq.order();
    let mut cover = BitMatrix::zeros(tops.len() * order, n);
    for (k, g) in tops.iter().enumerate() {
        for el in Element::all(qq) {
            let img = g.mul_mat(&m.element_matrix(el));
            for c in img.ones() {
                cover.set(k * order + el.index(qq), c, true);
            }
        }
    }
    let kg = regular_module(qq);
    let free = Rep::direct_sum(&vec![&kg; tops.len()]).unwrap();
    free.submodule(&cover.left_kernel().row_vecs()).0
}

fn hstack(a: &BitMatrix, b: &BitMatrix) -> BitMatrix {
    let mut out = BitMatrix::zeros(a.rows(), a.cols() + b.cols());
    out.paste(0, 0, a);
    out.paste(0, a.cols(), b);
    out
}

/// Multiplicity of `K` as a summand: rank of the pairing between
/// `Hom(K, m)` (fixed vectors) and `Hom(m, K)` (functionals killing `rad m`).
fn trivial_multiplicity(m: &Rep) -> usize {
    let (u, v) = (m.x().plus_identity(), m.y().plus_identity());
    let fixed = hstack(&u, &v).left_kernel();
    let functionals = hstack(&u.transpose(), &v.transpose()).left_kernel();
    if fixed.rows() == 0 || functionals.rows() == 0 {
        return 0;
    }
    fixed.mul(&functionals.transpose()).rank()
}

fn iso(a: &Rep, b: &Rep) -> bool {
    is_isomorphic(a, b, 0).unwrap() == IsoVerdict::Isomorphic
}

fn words_up_to(max_len: usize, qq: QParam) -> Vec<Word> {
    (0..=max_len).flat_map(|n| Word::enumerate(n, qq)).collect()
}

fn suite(name: &str, qq: QParam, bounds: Bounds) -> (bool, String) {
    let r = run_suite(name, qq, &bounds, 0).unwrap();
    let detail = match r.failures.first() {
        Some(f) => format!("{} cases, {} failures, first {} :: {}", r.cases, r.failures.len(), f.case, f.detail),
        None => format!("{} cases", r.cases),
    };
    (r.passed, detail)
}

// ---- criteria

const ALPHA: [&str; 6] = ["100000", "110000", "001000", "001100", "000011", "000001"];
const BETA: [&str; 6] = ["100000", "011000", "001000", "000100", "000110", "000001"];

fn fixture_holds(qq: usize) -> (bool, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_dihedral"))
        .args(["module", "build-string", "--q", &qq.to_string(), "--word", "a b- a b a-", "--format", "json"])
        .output()
        .unwrap();
    if !out.status.success() {
        return (false, String::from_utf8_lossy(&out.stderr).into_owned());
    }
    let rep: Rep = serde_json::from_slice(&out.stdout).unwrap();
    let alpha = BitMatrix::from_row_strings(&ALPHA).unwrap();
    let beta = BitMatrix::from_row_strings(&BETA).unwrap();
    let ok = rep.x() == &alpha && rep.y() == &beta;
    (ok, if ok { String::new() } else { format!("got x {:?} y {:?}", rep.x().row_strings(), rep.y().row_strings()) })
}

#[test]
fn c01_string_module_fixture() {
    let t = Instant::now();
    let (ok, detail) = fixture_holds(2);
    report(1, "string module matrices for a b⁻¹ a b a⁻¹", ok, t.elapsed(), &detail);
}

fn omega2_oracle(qq: QParam, max_len: usize) -> (bool, String) {
    let words: Vec<Word> =
        words_up_to(max_len, qq).into_iter().filter(|w| omega2_word(w, qq).is_ok()).collect();
    let bad: Vec<String> = words
        .par_iter()
        .filter_map(|w| {
            let m = string_module(w, qq).unwrap();
            let expected = string_module(&omega2_word(w, qq).unwrap(), qq).unwrap();
            let got = oracle_omega(&oracle_omega(&m));
            (!iso(&expected, &got)).then(|| w.to_string())
        })
        .collect();
    (bad.is_empty(), format!("{} words, {} mismatches {:?}", words.len(), bad.len(), bad.iter().take(3).collect::<Vec<_>>()))
}

#[test]
fn c02_omega2_oracle() {
    let t = Instant::now();
    let (ok, detail) = omega2_oracle(q(2), 7);
    let (lib_ok, lib_detail) = suite("omega2", q(2), Bounds::default());
    report(2, "M(wLR) ≅ Ω²M(w), ℓ ≤ 7", ok && lib_ok, t.elapsed(), &format!("{detail}; library {lib_detail}"));
}

fn trivial_count(g: &BitMatrix) -> usize {
    g.rows() - 2 * g.plus_identity().rank()
}

fn restrictions_hold(qq: QParam, max_len: usize, bands: usize) -> (bool, String) {
    let mut bad = Vec::new();
    let words = words_up_to(max_len, qq);
    for w in &words {
        let m = string_module(w, qq).unwrap();
        let t = (trivial_count(m.x()), trivial_count(m.y()));
        let ok = if m.dim() % 2 == 1 {
            t == (1, 1)
        } else {
            t == (0, 2) || t == (2, 0)
        };
        if !ok {
            bad.push(format!("{w} {t:?}"));
        }
    }
    let band_words: Vec<Word> = [2, 4, 6]
        .iter()
        .flat_map(|&n| Word::enumerate(n, qq))
        .filter(|w| band_module(w, &BitMatrix::identity(1), qq).is_ok())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..bands {
        let w = &band_words[rng.gen_range(0..band_words.len())];
        let phi = BitMatrix::random_invertible(rng.gen_range(1..=3), &mut rng);
        let m = band_module(w, &phi, qq).unwrap();
        if (trivial_count(m.x()), trivial_count(m.y())) != (0, 0) {
            bad.push(format!("band {w}"));
        }
    }
    (bad.is_empty(), format!("{} words + {bands} bands, failures {:?}", words.len(), bad.iter().take(3).collect::<Vec<_>>()))
}

#[test]
fn c03_restriction_lemma() {
    let t = Instant::now();
    let (ok, detail) = restrictions_hold(q(2), 8, 10);
    let (lib_ok, lib_detail) = suite("restrictions", q(2), Bounds::default());
    report(3, "restrictions to <x>, <y>", ok && lib_ok, t.elapsed(), &format!("{detail}; library {lib_detail}"));
}

#[test]
fn c04_even_string_tensors() {
    let t = Instant::now();
    let (ok, detail) = suite("evenstring", q(2), Bounds { max_len: Some(5), ..Bounds::default() });
    report(4, "string summands of even-string products", ok, t.elapsed(), &detail);
}

#[test]
fn c05_benson_carlson() {
    let t = Instant::now();
    let qq = q(2);
    let words = Word::enumerate_canonical(5, qq);
    let mods: Vec<Rep> = words.iter().map(|w| string_module(w, qq).unwrap()).collect();
    let pairs: Vec<(usize, usize)> =
        (0..mods.len()).flat_map(|i| (i..mods.len()).map(move |j| (i, j))).collect();
    let bad: Vec<String> = pairs
        .par_iter()
        .filter_map(|&(i, j)| {
            let (m, n) = (&mods[i], &mods[j]);
            let k = trivial_multiplicity(&m.tensor(n).unwrap());
            let expect = usize::from(m.dim() % 2 == 1 && iso(m, &n.dual()));
            (k != expect).then(|| format!("{} ⊗ {}: K×{k}", words[i], words[j]))
        })
        .collect();
    let (lib_ok, lib_detail) = suite("bensoncarlson", qq, Bounds::default());
    report(
        5,
        "K | M⊗N iff dim M odd and M ≅ N*",
        bad.is_empty() && lib_ok,
        t.elapsed(),
        &format!("{} pairs, oracle mismatches {:?}; library {lib_detail}", pairs.len(), bad.iter().take(3).collect::<Vec<_>>()),
    );
}

#[test]
fn c06_signature_zero() {
    let t = Instant::now();
    let (ok, detail) = suite("signaturezero", q(2), Bounds { max_len: Some(9), ..Bounds::default() });
    report(6, "zero entry in one-signed signatures, ℓ odd ≤ 9", ok, t.elapsed(), &detail);
}

/// Conditions of the sweep criterion for one seed; returns the failures.
fn sweep_failures(w: &Word, radius: i64, qq: QParam) -> Vec<String> {
    let r = sweep_component(w, radius, qq).unwrap();
    let mut bad = Vec::new();
    if !r.diamonds_pass() {
        bad.push("diamond rule fails".to_string());
    }
    if r.pattern != Some(Pattern::I) {
        let off: Vec<String> = r
            .vertices
            .iter()
            .filter_map(|v| {
                let s = v.signature?;
                let c = v.coord;
                let want = Signature::new(2 * c.i, 2 * c.j);
                (s != want).then(|| format!("({},{})={s}", c.i, c.j))
            })
            .collect();
        bad.push(format!("pattern {:?}, off (i): {}", r.pattern, off.join(" ")));
    }
    if r.zero_signatures != 1 {
        bad.push(format!("{} [0,0] vertices", r.zero_signatures));
    }
    for k in -radius..=radius {
        if r.signature(Coordinate::new(k, k)) != Some(Signature::new(2 * k, 2 * k)) {
            bad.push(format!("diagonal ({k},{k})"));
        }
    }
    bad
}

fn sweeps(qq: QParam, radius: i64) -> (bool, String) {
    let seeds = [induced_trivial_seed(qq).unwrap(), "a b- a".parse().unwrap()];
    let mut detail = Vec::new();
    for w in &seeds {
        let bad = sweep_failures(w, radius, qq);
        detail.push(format!("seed {w}: {}", if bad.is_empty() { "ok".into() } else { bad.join("; ") }));
    }
    (detail.iter().all(|d| d.ends_with(": ok")), detail.join(" | "))
}

#[test]
fn c07_quiver_sweeps() {
    let t = Instant::now();
    let (ok, detail) = sweeps(q(2), 2);
    report(7, "sweeps of K_Y↑G and a b⁻¹ a components, radius 2", ok, t.elapsed(), &detail);
}

#[test]
fn c08_vertex_y_odd_component() {
    let t = Instant::now();
    let qq = q(2);
    let w = induced_omega_seed(qq).unwrap();
    let r = sweep_component(&w, 2, qq).unwrap();
    let even: Vec<String> = r
        .vertices
        .iter()
        .filter_map(|v| {
            let s = v.signature?;
            (s.0[0].rem_euclid(2) == 0 || s.0[1].rem_euclid(2) == 0).then(|| format!("({},{})={s}", v.coord.i, v.coord.j))
        })
        .collect();
    let ok = even.is_empty() && r.zero_signatures == 0;
    report(
        8,
        "odd signatures around Ω(K_Y)↑G, radius 2",
        ok,
        t.elapsed(),
        &format!("seed {w}; {} [0,0] vertices; even entries at {}", r.zero_signatures, even.join(" ")),
    );
}

#[test]
fn c09_algebraicity_probes() {
    let t = Instant::now();
    let qq = q(2);
    let ky = induce(&KleinRep::trivial(), SubgroupId::KleinY, qq).unwrap();
    let k = tensor_closure_probe(&trivial(qq), ProbeOptions::default());
    let a = tensor_closure_probe(&ky, ProbeOptions::default());
    let a_rev = tensor_closure_probe(&ky, ProbeOptions { reverse: true, ..Default::default() });
    let o = tensor_closure_probe(&heller(&ky, -1), ProbeOptions::default());
    let mut bad = Vec::new();
    if !(k.is_closed() && k.classes.len() == 1 && k.verified == Some(true)) {
        bad.push(format!("K: {:?}", k.verdict));
    }
    if !(a.is_closed() && a.classes.len() <= 8 && a.verified == Some(true)) {
        bad.push(format!("K_Y↑G: {:?} with {} classes", a.verdict, a.classes.len()));
    }
    if a_rev.verdict != a.verdict || a_rev.classes.len() != a.classes.len() {
        bad.push("K_Y↑G verdict depends on order".into());
    }
    if !(matches!(o.verdict, Verdict::BudgetExceeded { .. }) && o.signatures_grow(3)) {
        bad.push(format!("Ω(K_Y)↑G: {:?}", o.verdict));
    }
    let growth: Vec<i64> = o.trace.iter().filter_map(|r| r.max_signature).collect();
    report(
        9,
        "closure probes",
        bad.is_empty(),
        t.elapsed(),
        &format!("K_Y↑G closes with {} classes; Ω(K_Y)↑G trace {growth:?}; {}", a.classes.len(), bad.join("; ")),
    );
}

#[test]
fn c10_klein_self_tests() {
    let t = Instant::now();
    let k = KleinRep::trivial().as_rep();
    let mut pinned = Vec::new();
    let mut cur = k.clone();
    for n in 1..=2i64 {
        cur = oracle_omega(&cur);
        for (sign, m) in [(1, cur.clone()), (-1, cur.dual())] {
            let mut want = KleinDecomposition::new();
            want.add(KleinSummand::Omega(sign * n), 1);
            let got = klein_decompose(&KleinRep::from_rep(&m));
            if got != want || m.dim() as i64 != 2 * n + 1 {
                pinned.push(format!("Ω^{}K decomposes as {got}", sign * n));
            }
        }
    }
    let (ok, detail) = suite("klein", q(2), Bounds { samples: Some(10_000), max_len: Some(7), ..Bounds::default() });
    report(
        10,
        "Klein decomposition orientation, ledger, duality, Ω-shift",
        pinned.is_empty() && ok,
        t.elapsed(),
        &format!("orientation {pinned:?}; orientation, random samples and Ω-shift of restrictions: {detail}"),
    );
}

#[test]
fn c11_q4_smoke() {
    let t = Instant::now();
    let qq = q(4);
    let mut parts = Vec::new();
    let (f, fd) = fixture_holds(4);
    parts.push((f, format!("fixture {}", if f { "ok" } else { &fd })));
    let (o, od) = omega2_oracle(qq, 9);
    parts.push((o, format!("Ω² {od}")));
    let (r, rd) = restrictions_hold(qq, 9, 10);
    parts.push((r, format!("restrictions {rd}")));
    let (s, sd) = sweeps(qq, 1);
    parts.push((s, format!("sweeps {sd}")));
    let ok = parts.iter().all(|p| p.0);
    let detail: Vec<String> = parts.into_iter().map(|p| p.1).collect();
    report(11, "q = 4 reruns of criteria 1-3 and 7", ok, t.elapsed(), &detail.join(" | "));
}
