//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit status if any fails.

use std::time::Instant;

use chl_core::barwords::*;
use chl_core::exactalg::{pochhammer, Polynomial, Rational};
use chl_core::mzv::*;
use chl_core::pairing::*;
use chl_core::pathcalc::*;
use chl_core::periods::*;
use chl_core::Config;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

const PI: f64 = std::f64::consts::PI;
const I: Complex64 = Complex64::new(0.0, 1.0);

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn main() {
    let criteria: Vec<(&str, fn() -> Outcome)> = vec![
        ("MZV agreement", criterion_1),
        ("theta-word series", criterion_2),
        ("Gauss-Manin derivation and transport", criterion_3),
        ("monodromy", criterion_4),
        ("reflection identity", criterion_5),
        ("iterated-integral axioms", criterion_6),
        ("Hopf axioms and bar differential", criterion_7),
        ("augmentation vanishing", criterion_8),
        ("regularization", criterion_9),
        ("dual-relation report", criterion_10),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        let secs = start.elapsed().as_secs_f64();
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {} ({name}): {verdict} [{secs:.1} s] {}", k + 1, o.detail);
        if !o.pass {
            failed += 1;
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

// ---------------------------------------------------------------------------------------
// 1. multiple zeta values

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let cfg = Config::default();
    let mut worst: f64 = 0.0;
    let mut count = 0;
    let mut errors = Vec::new();
    for w in 2..=5 {
        for k in MzvIndex::convergent_of_weight(w) {
            match (mzv_iterint(&k, &cfg), mzv_series(&k, 1e-10)) {
                (Ok(a), Ok(b)) => worst = worst.max((a - b).abs()),
                (a, b) => errors.push(format!("ζ({k}): {a:?} / {b:?}")),
            }
            count += 1;
        }
    }
    let z2 = mzv_series(&MzvIndex::new(vec![2]).unwrap(), 1e-10).unwrap();
    let z2_err = (z2 - PI * PI / 6.0).abs();
    let secs = start.elapsed().as_secs_f64();
    outcome(
        errors.is_empty() && worst < 1e-7 && z2_err < 1e-8 && secs < 20.0,
        format!("{count} indices, max |iterint − series| = {worst:.2e}, |ζ(2) − π²/6| = {z2_err:.2e}, {secs:.1} s {errors:?}"),
    )
}

// ---------------------------------------------------------------------------------------
// 2. theta words on dch against their series

/// `π·Σ_{0≤n₁<n₂} c_{n₁}/n₂^r` with `c_{n+1}/c_n = ratio(n)` and `c_n ~ a/n`.
fn theta_series(r: i32, ratio: impl Fn(f64) -> f64, a: f64) -> f64 {
    let n_max = 1_000_000usize;
    let nf = n_max as f64;
    let rf = r as f64;
    let mut tails = vec![0.0; n_max + 1];
    tails[n_max] = nf.powf(1.0 - rf) / (rf - 1.0) - 0.5 * nf.powf(-rf) + rf / 12.0 * nf.powf(-rf - 1.0);
    for n in (0..n_max).rev() {
        tails[n] = tails[n + 1] + ((n + 1) as f64).powf(-rf);
    }
    let mut coeff = 1.0;
    let mut sum = 0.0;
    for (n, t) in tails.iter().enumerate() {
        sum += coeff * t;
        coeff *= ratio(n as f64);
    }
    sum += a * nf.powf(1.0 - rf) / (rf - 1.0).powi(2);
    PI * sum
}

fn theta_word(e: FiberFormMonomial, r: usize) -> BarWord {
    let mut slots = vec![Slot::new(e, BaseForm::Chi1)];
    slots.extend((1..r).map(|_| Slot::plain(BaseForm::Chi0)));
    BarWord::from_slots(slots)
}

fn alpha_then_empty(r: usize) -> CycleWord {
    let mut slots = vec![vec![HomologyClass::alpha()]];
    slots.extend((1..r).map(|_| Vec::new()));
    CycleWord::new(slots)
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let cfg = Config::default();
    let mut worst: f64 = 0.0;
    let mut notes = Vec::new();
    for r in [2usize, 3] {
        let cases: [(FiberFormMonomial, f64); 2] = [
            (FiberFormMonomial::THETA0, theta_series(r as i32, |n| ((n + 0.5) / (n + 1.0)).powi(2), 1.0 / PI)),
            (
                FiberFormMonomial::THETA1,
                theta_series(r as i32, |n| (n + 0.5) * (n + 1.5) / ((n + 1.0) * (n + 2.0)), 2.0 / PI),
            ),
        ];
        for (e, oracle) in cases {
            match pair(&theta_word(e, r), &[alpha_then_empty(r)], &Path::dch(), &cfg) {
                Ok(v) => {
                    worst = worst.max((v - oracle).norm());
                    notes.push(format!("{e} r={r}: {:.10}", v.re));
                }
                Err(err) => {
                    worst = f64::INFINITY;
                    notes.push(format!("{e} r={r}: {err}"));
                }
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(worst < 1e-6 && secs < 10.0, format!("max error {worst:.2e}, {secs:.1} s; {}", notes.join(", ")))
}

// ---------------------------------------------------------------------------------------
// 3. Gauss–Manin matrix

const GM_ORDER: usize = 40;

fn hyper_series(a: Rational, b: Rational, cc: Rational) -> Vec<Rational> {
    (0..=GM_ORDER as u32)
        .map(|n| {
            let num = &pochhammer(&a, n) * &pochhammer(&b, n);
            let den = &pochhammer(&cc, n) * &pochhammer(&Rational::one(), n);
            num.checked_div(&den).unwrap()
        })
        .collect()
}

fn criterion_3() -> Outcome {
    let q = |p, d| Rational::new(p, d).unwrap();
    let f = [hyper_series(q(1, 2), q(1, 2), q(1, 1)), hyper_series(q(1, 2), q(3, 2), q(2, 1))];
    let m = GaussManinMatrix::legendre().period_ode_matrix();
    let den = Polynomial::from_ints(&[0, 1, -1]);
    let mut exact = true;
    for i in 0..2 {
        // λ(1−λ)·f_i′ − Σ_j λ(1−λ)M_ij·f_j through λ^40
        let mut residual = &den * &Polynomial::from_rationals(f[i].clone()).derivative();
        for j in 0..2 {
            let scaled = m[i][j].numerator() * &Polynomial::from_rationals(f[j].clone());
            let (quo, rem) = (&scaled * &den).div_rem(m[i][j].denominator()).unwrap();
            exact &= rem.is_zero();
            residual = &residual - &quo;
        }
        exact &= (0..=GM_ORDER).all(|k| residual.coeff(k).is_zero());
    }
    let p0 = period_values(c(0.1, 0.0), 1e-16).unwrap();
    let path = Path::line(c(0.1, 0.0), c(0.3, 0.0)).unwrap();
    let transport_err = match gm_transport(&path, &p0, 1e-13) {
        Ok(p1) => mat_dist(&p1.matrix, &period_values(c(0.3, 0.0), 1e-16).unwrap().matrix),
        Err(_) => f64::INFINITY,
    };
    outcome(
        exact && transport_err < 1e-10,
        format!("series identity exact to λ^{GM_ORDER}: {exact}, transport 0.1→0.3 error {transport_err:.2e}"),
    )
}

// ---------------------------------------------------------------------------------------
// 4. monodromy

type QMat = [[Rational; 2]; 2];

fn qmul(a: &QMat, b: &QMat) -> QMat {
    let e = |i: usize, j: usize| &(&a[i][0] * &b[0][j]) + &(&a[i][1] * &b[1][j]);
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

fn qidentity() -> QMat {
    [[Rational::one(), Rational::zero()], [Rational::zero(), Rational::one()]]
}

/// Clockwise circle of radius 2 about ½, reached from ½ along the upward spoke: the loop
/// around ∞ with ℓ₀ℓ₁ℓ∞ = 1. (With the downward spoke it would close up with ℓ₁ℓ₀ instead.)
fn loop_around_infinity() -> Path {
    let base = c(0.5, 0.0);
    let foot = c(0.5, 2.0);
    let start = PI / 2.0;
    Path::new(
        vec![
            Segment::Line { from: base, to: foot },
            Segment::Arc { center: base, radius: 2.0, from_angle: start, to_angle: start - 2.0 * PI },
            Segment::Line { from: foot, to: base },
        ],
        None,
        None,
    )
    .unwrap()
}

fn criterion_4() -> Outcome {
    let tol = 1e-12;
    let (l0, l1) = (loop_around_zero(), loop_around_one());
    let both = l0.concat(&l1).unwrap();
    let (v0, v1, vinf) = match (monodromy(&l0, tol), monodromy(&l1, tol), monodromy(&loop_around_infinity(), tol)) {
        (Ok(a), Ok(b), Ok(d)) => (a, b, d),
        (a, b, d) => return outcome(false, format!("{:?} {:?} {:?}", a.err(), b.err(), d.err())),
    };
    let integral = [&v0, &v1].iter().all(|v| v.residual < 1e-6 && v.matrix.iter().flatten().all(Rational::is_integer));
    let unimodular = v0.det() == Rational::one() && v1.det() == Rational::one();
    let trace_two = v0.trace() == Rational::from_int(2) && v1.trace() == Rational::from_int(2);
    let distinct = v0.matrix != v1.matrix;
    // the frame returns as P·V₁V₀ after ℓ₀ then ℓ₁
    let product = qmul(&v1.matrix, &v0.matrix);
    let infinity_ok = qmul(&vinf.matrix, &product) == qidentity();
    let (t0, t1, t) = (transport_matrix(&l0, tol).unwrap(), transport_matrix(&l1, tol).unwrap(), transport_matrix(&both, tol).unwrap());
    let functorial = mat_dist(&t, &mat_mul(&t1, &t0));
    outcome(
        integral && unimodular && trace_two && distinct && infinity_ok && functorial < 1e-8,
        format!(
            "V₀ = {:?}, V₁ = {:?}, V∞·V₁V₀ = 1: {infinity_ok}, residuals {:.1e}/{:.1e}, transport functoriality {functorial:.2e}",
            ints(&v0.matrix),
            ints(&v1.matrix),
            v0.residual,
            v1.residual
        ),
    )
}

fn ints(m: &QMat) -> [[f64; 2]; 2] {
    [[m[0][0].to_f64(), m[0][1].to_f64()], [m[1][0].to_f64(), m[1][1].to_f64()]]
}

// ---------------------------------------------------------------------------------------
// 5. g_i(1−λ) = √−1·f_i(λ)

fn lens_point(rng: &mut ChaCha8Rng) -> Complex64 {
    loop {
        let z = c(rng.gen_range(0.0..1.0), rng.gen_range(-0.85..0.85));
        if z.norm() < 0.95 && (1.0 - z).norm() < 0.95 {
            return z;
        }
    }
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let z = lens_point(&mut rng);
        let here = legendre_period_functions(z, 1e-16).unwrap();
        let there = legendre_period_functions(1.0 - z, 1e-16).unwrap();
        for i in 0..2 {
            worst = worst.max((there[2 + i] - I * here[i]).norm());
        }
    }
    outcome(worst < 1e-10, format!("20 points, max error {worst:.2e}"))
}

// ---------------------------------------------------------------------------------------
// 6. shuffle, composition, reversal, homotopy

/// A point of the lens `|λ| < 1, |1−λ| < 1` away from the punctures; the lens is convex, so
/// polylines through such points stay in it and the reference frame is their transport.
fn inner_lens_point(rng: &mut ChaCha8Rng) -> Complex64 {
    loop {
        let z = c(rng.gen_range(0.0..1.0), rng.gen_range(-0.8..0.8));
        if z.norm() < 0.9 && (1.0 - z).norm() < 0.9 && z.norm() > 0.15 && (1.0 - z).norm() > 0.15 {
            return z;
        }
    }
}

fn lens_path(rng: &mut ChaCha8Rng, from: Complex64, segments: usize) -> Path {
    loop {
        let mut pts = vec![from];
        pts.extend((0..segments).map(|_| inner_lens_point(rng)));
        if let Ok(p) = Path::polyline(&pts) {
            return p;
        }
    }
}

fn random_forms(rng: &mut ChaCha8Rng, len: usize) -> Vec<WeightedForm> {
    (0..len)
        .map(|_| {
            let omega = if rng.gen_bool(0.5) { BaseForm::Chi0 } else { BaseForm::Chi1 };
            match rng.gen_range(0..3) {
                0 => WeightedForm::plain(omega),
                1 => {
                    let (a, b) = (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                    WeightedForm::function(omega, move |_, l| a + b * l * l)
                }
                _ => {
                    let deg = rng.gen_range(1..=2);
                    let factors = (0..deg)
                        .map(|_| {
                            let class = if rng.gen_bool(0.5) { HomologyClass::alpha() } else { HomologyClass::beta() };
                            (rng.gen_range(0..2), class)
                        })
                        .collect();
                    WeightedForm::periods(omega, factors)
                }
            }
        })
        .collect()
}

/// All ways of interleaving `u` and `v` keeping their internal orders.
fn shuffles(u: &[WeightedForm], v: &[WeightedForm]) -> Vec<Vec<WeightedForm>> {
    if u.is_empty() || v.is_empty() {
        return vec![u.iter().chain(v).cloned().collect()];
    }
    let mut out = Vec::new();
    for mut rest in shuffles(&u[1..], v) {
        rest.insert(0, u[0].clone());
        out.push(rest);
    }
    for mut rest in shuffles(u, &v[1..]) {
        rest.insert(0, v[0].clone());
        out.push(rest);
    }
    out
}

fn relative(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / a.norm().max(1.0)
}

fn criterion_6() -> Outcome {
    let cfg = Config::default();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (mut shuffle, mut compose, mut reverse) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..10 {
        let (from, n) = (inner_lens_point(&mut rng), rng.gen_range(1..=3));
        let path = lens_path(&mut rng, from, n);
        let r = rng.gen_range(1..=2);
        let s = rng.gen_range(1..=3 - r);
        let (u, v) = (random_forms(&mut rng, r), random_forms(&mut rng, s));
        let lhs = iterint(&path, &u, &cfg).unwrap() * iterint(&path, &v, &cfg).unwrap();
        let rhs: Complex64 = shuffles(&u, &v).iter().map(|w| iterint(&path, w, &cfg).unwrap()).sum();
        shuffle = shuffle.max(relative(lhs, rhs));
    }
    for _ in 0..10 {
        let (from, n0, n1) = (inner_lens_point(&mut rng), rng.gen_range(1..=2), rng.gen_range(1..=2));
        let g0 = lens_path(&mut rng, from, n0);
        let g1 = lens_path(&mut rng, g0.end(), n1);
        let g = g0.concat(&g1).unwrap();
        let len = rng.gen_range(1..=3);
        let w = random_forms(&mut rng, len);
        let lhs = iterint(&g, &w, &cfg).unwrap();
        let rhs: Complex64 =
            (0..=w.len()).map(|i| iterint(&g0, &w[..i], &cfg).unwrap() * iterint(&g1, &w[i..], &cfg).unwrap()).sum();
        compose = compose.max(relative(lhs, rhs));
    }
    for _ in 0..10 {
        let (from, n) = (inner_lens_point(&mut rng), rng.gen_range(1..=3));
        let g = lens_path(&mut rng, from, n);
        let len = rng.gen_range(1..=3);
        let w = random_forms(&mut rng, len);
        let rev: Vec<WeightedForm> = w.iter().rev().cloned().collect();
        let sign = if w.len().is_multiple_of(2) { 1.0 } else { -1.0 };
        let lhs = iterint(&g.inverse(), &w, &cfg).unwrap();
        reverse = reverse.max(relative(lhs, sign * iterint(&g, &rev, &cfg).unwrap()));
    }
    // homotopy: bend a segment of the lens around inner points
    let (a, b) = (c(0.25, 0.1), c(0.7, -0.15));
    let w = vec![
        WeightedForm::periods(BaseForm::Chi1, vec![(0, HomologyClass::alpha()), (1, HomologyClass::beta())]),
        WeightedForm::plain(BaseForm::Chi0),
        WeightedForm::periods(BaseForm::Chi0, vec![(1, HomologyClass::alpha())]),
    ];
    let base = iterint(&Path::line(a, b).unwrap(), &w, &cfg).unwrap();
    let mut homotopy: f64 = 0.0;
    for mid in [c(0.5, 0.4), c(0.45, -0.45), c(0.3, -0.3)] {
        let bent = iterint(&Path::polyline(&[a, mid, b]).unwrap(), &w, &cfg).unwrap();
        homotopy = homotopy.max((bent - base).norm());
    }
    outcome(
        shuffle < 1e-9 && compose < 1e-9 && reverse < 1e-9 && homotopy < 1e-8,
        format!("shuffle {shuffle:.2e}, composition {compose:.2e}, reversal {reverse:.2e}, homotopy {homotopy:.2e}"),
    )
}

// ---------------------------------------------------------------------------------------
// 7. Hopf axioms

fn slot_alphabet() -> Vec<Slot> {
    vec![
        Slot::plain(BaseForm::Chi0),
        Slot::plain(BaseForm::Chi1),
        Slot::new(FiberFormMonomial::THETA0, BaseForm::Chi1),
        Slot::new(FiberFormMonomial::new(1, 1), BaseForm::Chi0),
    ]
}

fn all_words(letters: &[Slot], max_len: usize) -> Vec<Vec<Slot>> {
    let mut out = vec![vec![]];
    let mut layer: Vec<Vec<Slot>> = vec![vec![]];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| {
                letters.iter().map(move |s| {
                    let mut v = w.clone();
                    v.push(*s);
                    v
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

fn criterion_7() -> Outcome {
    let words = all_words(&slot_alphabet(), 3);
    let mut compat_fail = 0;
    let mut antipode_fail = 0;
    for u in &words {
        let wu = BarWord::from_slots(u.clone());
        let expected = BarWord::unit().scale(&wu.counit());
        if wu.coproduct().map_left(BarWord::antipode).multiply() != expected {
            antipode_fail += 1;
        }
        for v in words.iter().filter(|v| u.len() + v.len() <= 3) {
            let wv = BarWord::from_slots(v.clone());
            if wu.shuffle(&wv, 3).unwrap().coproduct() != wu.coproduct().shuffle(&wv.coproduct()) {
                compat_fail += 1;
            }
        }
    }
    let gm = GaussManinMatrix::legendre();
    let mut stored = words.clone();
    // every Sym degree ≤ 2 slot in words of length ≤ 2
    let mut letters = Vec::new();
    for e0 in 0..=2 {
        for e1 in 0..=2 - e0 {
            for omega in [BaseForm::Chi0, BaseForm::Chi1] {
                letters.push(Slot::new(FiberFormMonomial::new(e0, e1), omega));
            }
        }
    }
    stored.extend(all_words(&letters, 2));
    let nonzero = stored.iter().filter(|w| !bar_differential(&BarWord::from_slots((*w).clone()), &gm).is_zero()).count();
    outcome(
        compat_fail == 0 && antipode_fail == 0 && nonzero == 0,
        format!(
            "{} words: compatibility failures {compat_fail}, antipode failures {antipode_fail}; nonzero differentials {nonzero} of {}",
            words.len(),
            stored.len()
        ),
    )
}

// ---------------------------------------------------------------------------------------
// 8. augmentation

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let cfg = Config::default();
    let (l0, l1) = (loop_around_zero(), loop_around_one());
    let j2 = FormalPathCombination::augmentation_power(&[l0.clone(), l1.clone()]).unwrap();
    let (mut total, mut failing, mut worst) = (0, 0, 0.0f64);
    let mut failing_with_alpha_only = 0;
    for (w, cyc) in suite::words_up_to_length_one(2) {
        let r = verify_augmentation_vanishing(&w, std::slice::from_ref(&cyc), &j2, 1e-7, &cfg);
        total += 1;
        let err = r.map(|r| r.abs_err).unwrap_or(f64::INFINITY);
        worst = worst.max(err);
        if err >= 1e-7 {
            failing += 1;
            if cyc.slots.iter().flatten().all(|h| *h == HomologyClass::alpha()) {
                failing_with_alpha_only += 1;
            }
        }
    }
    // N = 2: a length-two word against a product of three factors
    let (spot_word, spot_cycle, j3) = suite::augmentation_spot_case().unwrap();
    let spot = verify_augmentation_vanishing(&spot_word, &[spot_cycle], &j3, 1e-6, &cfg);
    let spot_err = spot.as_ref().map(|r| r.abs_err).unwrap_or(f64::INFINITY);
    let secs = start.elapsed().as_secs_f64();
    outcome(
        failing == 0 && spot_err < 1e-6 && secs < 60.0,
        format!(
            "N=1: {failing} of {total} pairings ≥ 1e-7 (max {worst:.2e}; {failing_with_alpha_only} with α-only cycles); N=2 spot |value| {spot_err:.2e}; {secs:.1} s"
        ),
    )
}

// ---------------------------------------------------------------------------------------
// 9. regularization

fn criterion_9() -> Outcome {
    let cfg = Config::default();
    let mut single: f64 = 0.0;
    let mut residual: f64 = 0.0;
    for f in [BaseForm::Chi0, BaseForm::Chi1] {
        match reg_iterint_detailed(&Path::dch(), &[WeightedForm::plain(f)], &cfg) {
            Ok(r) => {
                single = single.max(r.value.norm());
                residual = residual.max(r.residual);
            }
            Err(_) => single = f64::INFINITY,
        }
    }
    // direct evaluation on dch shrunk to [ε, 1−ε]: the convergent words differ from their
    // limit by O(ε·log^{w−1} ε)
    let eps = 2f64.powi(-46);
    let shrunk = shrink(&Path::dch(), eps).unwrap();
    let (mut count, mut worst) = (0, 0.0f64);
    for w in 2..=4 {
        for k in MzvIndex::convergent_of_weight(w) {
            let forms: Vec<WeightedForm> = mzv_forms(&k).into_iter().map(WeightedForm::plain).collect();
            let reg = reg_iterint(&Path::dch(), &forms, &cfg);
            let direct = iterint(&shrunk, &forms, &cfg);
            worst = worst.max(match (reg, direct) {
                (Ok(a), Ok(b)) => (a - b).norm(),
                _ => f64::INFINITY,
            });
            count += 1;
        }
    }
    outcome(
        single < 1e-9 && residual < 1e-8 && worst < 1e-8,
        format!("|reg ∫χ| max {single:.2e}, fit residual {residual:.2e}; {count} words, max |reg − direct| {worst:.2e}"),
    )
}

// ---------------------------------------------------------------------------------------
// 10. dual relation

fn criterion_10() -> Outcome {
    let cfg = Config::default();
    let first = serde_json::to_string_pretty(&suite::dual_report(1e-6, &cfg)).unwrap();
    let second = serde_json::to_string_pretty(&suite::dual_report(1e-6, &cfg)).unwrap();
    let deterministic = first == second;
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/dual_rel.json");
    let golden = match std::fs::read_to_string(&path) {
        Ok(text) => text.trim_end() == first,
        Err(_) => {
            std::fs::create_dir_all(path.parent().unwrap()).unwrap();
            std::fs::write(&path, format!("{first}\n")).unwrap();
            true
        }
    };
    let report: Value = serde_json::from_str(&first).unwrap();
    let summary: Vec<String> = report["cases"]
        .as_array()
        .unwrap()
        .iter()
        .enumerate()
        .map(|(k, case)| format!("case {}: {}", k + 1, case["balancing_variants"]))
        .collect();
    outcome(deterministic && golden, format!("deterministic {deterministic}, matches golden {golden}; {}", summary.join(", ")))
}
