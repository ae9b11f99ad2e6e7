//! Acceptance suite: every shipping criterion at its stated tolerance.
//!
//! The criteria run sequentially inside one test (timing measurements must
//! not compete with sibling test threads) and one PASS/FAIL line is printed
//! per criterion; run with `--nocapture` to see the lines on success.

mod common;

use std::time::Instant;

use common::{phi_series_oracle, phi_series_tail, random_weights};
use polylat::{
    construct_fast, construct_reference, dual_indicator, h_direct, h_quantity, phi_alpha,
    primitive_poly_f2, t_measure, trunc_gap_bound, walsh_exponent, wce_product,
    ConstructionState, GeneratingVector, Poly, PolyLatticeRule, ProductWeights,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn rel_err(got: f64, want: f64) -> f64 {
    ((got - want) / want).abs()
}

/// Figure-series reproduction with gamma_j = j^-2, d = 100, modulus x^m,
/// construction weights eta = gamma, evaluation weights gamma^alpha.
/// Also returns the alpha = 1.5 error series for the slope criterion.
fn criterion_1(series_out: &mut Vec<(f64, f64)>) -> Outcome {
    let d = 100;
    let gamma = ProductWeights::polynomial_decay(2.0, d).unwrap();
    let targets = [
        (6u32, 1.5, 3.90712472682382e-2),
        (10, 1.5, 1.15975507813964e-3),
        (16, 1.5, 5.46684649549108e-6),
        (6, 2.0, 1.73189414099363e-3),
        (16, 2.0, 1.16138439342712e-8),
        (6, 3.0, 1.28697975158607e-5),
    ];
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for m in 6..=16u32 {
        let g = construct_fast(m, d, &gamma).map_err(|e| e.to_string())?;
        let rule = g.power_rule().map_err(|e| e.to_string())?;
        for alpha in [1.5, 2.0, 3.0] {
            let e = wce_product(&rule, alpha, &gamma.powered(alpha)).map_err(|e| e.to_string())?;
            if alpha == 1.5 {
                series_out.push(((1u64 << m) as f64, e));
            }
            for (tm, ta, want) in targets {
                if tm == m && ta == alpha {
                    let rel = rel_err(e, want);
                    worst = worst.max(rel);
                    if rel >= 1e-3 {
                        return Err(format!("m={m} alpha={alpha}: error {e:e} vs {want:e} (rel {rel:.2e})"));
                    }
                }
            }
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    if elapsed >= 30.0 {
        return Err(format!("m=6..16 sweep took {elapsed:.1} s (budget 30 s)"));
    }
    Ok(format!("worst rel {worst:.2e}, sweep {elapsed:.2} s"))
}

fn criterion_2() -> Outcome {
    let d = 100;
    let gamma = ProductWeights::geometric(0.95, d).unwrap();
    let g = construct_fast(6, d, &gamma).map_err(|e| e.to_string())?;
    let e = wce_product(&g.power_rule().unwrap(), 1.5, &gamma.powered(1.5)).unwrap();
    let want = 7243051451.11146;
    let rel = rel_err(e, want);
    if rel < 1e-3 {
        Ok(format!("error {e:.6e}, rel {rel:.2e}"))
    } else {
        Err(format!("error {e:e} vs {want:e} (rel {rel:.2e})"))
    }
}

fn criterion_3() -> Outcome {
    let d = 100;
    let gamma = ProductWeights::geometric(0.7, d).unwrap();
    let g = construct_fast(6, d, &gamma).map_err(|e| e.to_string())?;
    let e = wce_product(&g.power_rule().unwrap(), 2.0, &gamma.powered(2.0)).unwrap();
    let want = 1.11700804239152e-2;
    let rel = rel_err(e, want);
    if rel < 1e-3 {
        Ok(format!("error {e:.6e}, rel {rel:.2e}"))
    } else {
        Err(format!("error {e:e} vs {want:e} (rel {rel:.2e})"))
    }
}

/// Least-squares slope of log error versus log N over m = 6..16 at
/// alpha = 1.5 must sit in the pre-asymptotic band [-1.45, -1.15].
fn criterion_4(series: &[(f64, f64)]) -> Outcome {
    if series.len() != 11 {
        return Err(format!("expected 11 sweep points, got {}", series.len()));
    }
    let xs: Vec<f64> = series.iter().map(|(n, _)| n.ln()).collect();
    let ys: Vec<f64> = series.iter().map(|(_, e)| e.ln()).collect();
    let xm = xs.iter().sum::<f64>() / xs.len() as f64;
    let ym = ys.iter().sum::<f64>() / ys.len() as f64;
    let num: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - xm) * (y - ym)).sum();
    let den: f64 = xs.iter().map(|x| (x - xm) * (x - xm)).sum();
    let slope = num / den;
    if (-1.45..=-1.15).contains(&slope) {
        Ok(format!("slope {slope:.4}"))
    } else {
        Err(format!("slope {slope:.4} outside [-1.45, -1.15]"))
    }
}

/// Exact analytic value at m = 1, d = 1, g = (1), alpha = 2, gamma = 1,
/// cross-checked by the geometric dual-sum oracle (the dual frequencies are
/// the even integers).
fn criterion_5() -> Outcome {
    let alpha = 2.0;
    // oracle: sum 2^(-alpha floor(log2 k)) over even k, plus tail bound
    let blocks = 20u32;
    let mut partial = 0.0;
    let mut k = 2u64;
    while k < 1 << blocks {
        partial += 2f64.powf(-alpha * k.ilog2() as f64);
        k += 2;
    }
    let tail = phi_series_tail(alpha, blocks);
    if (partial - 0.5).abs() > tail {
        return Err(format!("dual-sum oracle {partial} not within {tail} of 0.5"));
    }
    let rule = PolyLatticeRule::with_power_modulus(2, 1, vec![Poly::one(2).unwrap()]).unwrap();
    let e = wce_product(&rule, alpha, &ProductWeights::new(vec![1.0]).unwrap()).unwrap();
    if (e - 0.5).abs() <= 1e-12 {
        Ok(format!("wce {e}, oracle partial {partial:.12}"))
    } else {
        Err(format!("wce {e} differs from 0.5 by {:.2e}", (e - 0.5).abs()))
    }
}

fn units(b: u8, m: u32) -> Vec<u64> {
    (0..(b as u64).pow(m)).filter(|g| g % b as u64 != 0).collect()
}

/// Character sums versus the dual-net indicator, exhaustive over the stated
/// box: b in {2, 3}, m <= 3, d <= 2, all valid g, all k < b^(2m).
fn char_property_full() -> Result<usize, String> {
    let mut checked = 0usize;
    for b in [2u8, 3] {
        let roots: Vec<(f64, f64)> = (0..b)
            .map(|s| {
                let a = 2.0 * std::f64::consts::PI * s as f64 / b as f64;
                (a.cos(), a.sin())
            })
            .collect();
        let modsum: Vec<usize> = (0..2 * b as usize).map(|s| s % b as usize).collect();
        for m in 1..=3u32 {
            let bm = (b as u64).pow(m);
            let kmax = (b as u64).pow(2 * m);
            let gs = units(b, m);
            // per component: coordinates and Walsh exponents for every k
            let mut coords: Vec<Vec<u64>> = Vec::new();
            let mut expo: Vec<Vec<u8>> = Vec::new(); // [g][k * bm + n]
            let mut dual_rem: Vec<Vec<u64>> = Vec::new(); // remainder index of tr(k) g mod x^m
            for &g in &gs {
                let rule = PolyLatticeRule::with_power_modulus(
                    b,
                    m,
                    vec![Poly::from_index(g, b).unwrap()],
                )
                .unwrap();
                let col: Vec<u64> = (0..bm).map(|n| rule.coordinate(n, 0).unwrap()).collect();
                let mut e = vec![0u8; (kmax * bm) as usize];
                for k in 0..kmax {
                    for n in 0..bm {
                        e[(k * bm + n) as usize] = walsh_exponent(k, col[n as usize], m, b);
                    }
                }
                let rem: Vec<u64> = (0..kmax)
                    .map(|k| {
                        let tr = Poly::from_index(k % bm, b).unwrap();
                        let gp = Poly::from_index(g, b).unwrap();
                        let prod = tr.mul(&gp).unwrap();
                        prod.rem(rule.modulus()).unwrap().to_index()
                    })
                    .collect();
                coords.push(col);
                expo.push(e);
                dual_rem.push(rem);
            }
            // digit-wise sum table for remainder indices (no carries)
            let idx_count = bm as usize;
            let mut addmod = vec![0u64; idx_count * idx_count];
            for i in 0..idx_count {
                let pi = Poly::from_index(i as u64, b).unwrap();
                for j in 0..idx_count {
                    let pj = Poly::from_index(j as u64, b).unwrap();
                    addmod[i * idx_count + j] = pi.add(&pj).unwrap().to_index();
                }
            }

            // d = 1
            for (gi, _) in gs.iter().enumerate() {
                for k in 0..kmax {
                    let mut re = 0.0;
                    let mut im = 0.0;
                    for n in 0..bm {
                        let (r, i) = roots[expo[gi][(k * bm + n) as usize] as usize];
                        re += r;
                        im += i;
                    }
                    let c = re / bm as f64;
                    let delta = f64::from(dual_rem[gi][k as usize] == 0);
                    if (c - delta).abs() >= 1e-9 || (im / bm as f64).abs() >= 1e-9 {
                        return Err(format!("b={b} m={m} d=1 g={} k={k}", gs[gi]));
                    }
                    checked += 1;
                }
            }
            // d = 2
            let mut cnt = vec![0u32; b as usize];
            for (gi, _) in gs.iter().enumerate() {
                for (gj, _) in gs.iter().enumerate() {
                    for k1 in 0..kmax {
                        let e1 = &expo[gi][(k1 * bm) as usize..((k1 + 1) * bm) as usize];
                        let r1 = dual_rem[gi][k1 as usize];
                        for k2 in 0..kmax {
                            let e2 = &expo[gj][(k2 * bm) as usize..((k2 + 1) * bm) as usize];
                            cnt.iter_mut().for_each(|c| *c = 0);
                            for n in 0..bm as usize {
                                cnt[modsum[(e1[n] + e2[n]) as usize]] += 1;
                            }
                            let mut re = 0.0;
                            let mut im = 0.0;
                            for s in 0..b as usize {
                                re += cnt[s] as f64 * roots[s].0;
                                im += cnt[s] as f64 * roots[s].1;
                            }
                            let c = re / bm as f64;
                            let delta = f64::from(
                                addmod[r1 as usize * idx_count + dual_rem[gj][k2 as usize] as usize]
                                    == 0,
                            );
                            if (c - delta).abs() >= 1e-9 || (im / bm as f64).abs() >= 1e-9 {
                                return Err(format!(
                                    "b={b} m={m} d=2 g=({},{}) k=({k1},{k2})",
                                    gs[gi], gs[gj]
                                ));
                            }
                            checked += 1;
                        }
                    }
                }
            }
        }
    }
    Ok(checked)
}

/// Oracle equivalences: cached vs literal quality function, reference vs
/// fast construction, character property, and the phi kernel against its
/// truncated Walsh series.
fn criterion_6() -> Outcome {
    // (a) h_fast vs h_direct at m = 10, d = 8
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let (m, d) = (10u32, 8usize);
    let weights = random_weights(&mut rng, d, 0.01, 2.0);
    let mut state = ConstructionState::new(m, d, &weights).unwrap();
    for r in 2..=d {
        state.begin_component().map_err(|e| e.to_string())?;
        let g_prev: Vec<Poly> = state
            .fixed_components()
            .iter()
            .map(|&g| Poly::from_index(g, 2).unwrap())
            .collect();
        for w in 2..=m {
            let q0 = state.current_prefix();
            for q in [q0, q0 | 1 << (w - 1)] {
                let fast = state.h_fast(w, q).unwrap();
                let direct =
                    h_direct(2, m, r, w, &weights, &g_prev, &Poly::from_index(q, 2).unwrap())
                        .unwrap();
                if (fast - direct).abs() > 1e-12 * direct.abs() {
                    return Err(format!("h mismatch r={r} w={w}: {fast} vs {direct}"));
                }
            }
            let h0 = state.h_fast(w, q0).unwrap();
            let h1 = state.h_fast(w, q0 | 1 << (w - 1)).unwrap();
            state.apply_digit(w, u8::from(h1 < h0)).unwrap();
        }
    }

    // (b) reference(b=2) equals fast exactly up to m = 8, d = 5
    for (mm, dd) in [(1u32, 2usize), (2, 3), (4, 5), (6, 4), (8, 5)] {
        let eta = random_weights(&mut rng, dd, 0.05, 1.5);
        let fast = construct_fast(mm, dd, &eta).unwrap();
        let reference = construct_reference(2, mm, dd, &eta).unwrap();
        if fast.indices() != reference.indices() {
            return Err(format!(
                "construction mismatch m={mm} d={dd}: {:?} vs {:?}",
                fast.indices(),
                reference.indices()
            ));
        }
    }

    // (c) character property, full stated box
    let checked = char_property_full()?;

    // (d) phi kernel vs truncated Walsh series, m <= 10, 2^20 terms
    let alphas = [1.5, 2.0, 3.0];
    let blocks = 20u32;
    for m in 1..=10u32 {
        for u in 0..1u64 << m {
            let series = phi_series_oracle(u, m, &alphas, blocks);
            for (&alpha, &s) in alphas.iter().zip(&series) {
                let tol = phi_series_tail(alpha, blocks) + 1e-9;
                let diff = (phi_alpha(u, m, alpha) - s).abs();
                if diff > tol {
                    return Err(format!("phi m={m} u={u} alpha={alpha}: diff {diff:.3e} > {tol:.3e}"));
                }
            }
        }
    }
    Ok(format!("character sums checked: {checked}"))
}

/// Theorem-bound suites; zero violations permitted.
fn criterion_7() -> Outcome {
    // sandwich T <= e <= T + gap, m <= 3, d <= 2, both modulus families
    let weights2 = ProductWeights::new(vec![1.0, 0.5]).unwrap();
    for m in 1u32..=3 {
        let xm = Poly::x_pow(2, m as usize).unwrap();
        for modulus in [xm.clone(), primitive_poly_f2(m).unwrap()] {
            let cand: Vec<u64> = (1..1u64 << m)
                .filter(|g| modulus != xm || g % 2 == 1)
                .collect();
            for d in 1..=2usize {
                let mut sel = vec![0usize; d];
                loop {
                    let gen: Vec<Poly> = sel
                        .iter()
                        .map(|&i| Poly::from_index(cand[i], 2).unwrap())
                        .collect();
                    let rule = PolyLatticeRule::new(2, m, modulus.clone(), gen).unwrap();
                    for alpha in [1.5, 2.0, 3.0] {
                        let t = t_measure(&rule, &weights2, alpha).unwrap();
                        let e = wce_product(&rule, alpha, &weights2).unwrap();
                        let gap =
                            trunc_gap_bound(alpha, &weights2, d, rule.n_points(), 2).unwrap();
                        let slack = 1e-12 * (1.0 + t.abs() + e.abs());
                        if t > e + slack || e > t + gap + slack {
                            return Err(format!(
                                "sandwich violated m={m} d={d} alpha={alpha} g={sel:?}"
                            ));
                        }
                    }
                    // odometer over candidate selections
                    let mut i = 0;
                    while i < d {
                        sel[i] += 1;
                        if sel[i] < cand.len() {
                            break;
                        }
                        sel[i] = 0;
                        i += 1;
                    }
                    if i == d {
                        break;
                    }
                }
            }
        }
    }

    // H-bound on constructed vectors, m <= 12, d <= 20
    for m in 1u32..=12 {
        for weights in [
            ProductWeights::polynomial_decay(2.0, 20).unwrap(),
            ProductWeights::geometric(0.95, 20).unwrap(),
            ProductWeights::new(vec![0.25; 20]).unwrap(),
        ] {
            let g = construct_fast(m, 20, &weights).unwrap();
            let h = h_quantity(&g, &weights).unwrap();
            let bound = (1u64 << m) as f64
                * (-1.0 + (0..20).map(|j| 1.0 + weights.get(j)).product::<f64>());
            if h > bound * (1.0 + 1e-10) + 1e-10 {
                return Err(format!("H-bound violated at m={m}: {h} > {bound}"));
            }
        }
    }

    // T-bound on constructed vectors, m in 4..8, d <= 3
    for m in 4u32..=8 {
        for d in 1usize..=3 {
            let weights = ProductWeights::polynomial_decay(2.0, d).unwrap();
            let g = construct_fast(m, d, &weights).unwrap();
            let t = t_measure(&g.power_rule().unwrap(), &weights, 1.0).unwrap();
            let mf = m as f64;
            let p1: f64 = (0..d).map(|j| 1.0 + weights.get(j) * (mf + 1.0)).product();
            let p2: f64 = (0..d).map(|j| 1.0 + weights.get(j) * (2.0 * mf + 4.0)).product();
            let bound = (p1 + 2.0 * mf * p2) / (1u64 << m) as f64;
            if t > bound * (1.0 + 1e-12) {
                return Err(format!("T-bound violated at m={m} d={d}: {t} > {bound}"));
            }
        }
    }

    // truncated log-series remainder, strict, all dyadic u / 2^10
    let prec = 10u32;
    for u in 1..1u64 << prec {
        let x = u as f64 / (1u64 << prec) as f64;
        let target = -(x.log2().floor() + 1.0);
        for mp in 1..=10u32 {
            let n = 1u64 << mp;
            let partial = polylat::log_series_partial(u, prec, n).unwrap();
            if (partial - target).abs() >= 2.0 / (n as f64 * x) {
                return Err(format!("log-series remainder not strict at u={u} N={n}"));
            }
        }
    }

    // full-grid projections, exhaustive m <= 6
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for b in [2u8, 3] {
        for m in 1u32..=6 {
            for _ in 0..3 {
                let bm = (b as u64).pow(m);
                let gen: Vec<Poly> = (0..2)
                    .map(|_| loop {
                        let g = rng.gen_range(1..bm);
                        if g % b as u64 != 0 {
                            break Poly::from_index(g, b).unwrap();
                        }
                    })
                    .collect();
                let rule = PolyLatticeRule::with_power_modulus(b, m, gen).unwrap();
                let pm = rule.generate_points().unwrap();
                for j in 0..rule.dim() {
                    let mut col = pm.column(j);
                    col.sort_unstable();
                    if col != (0..rule.n_points()).collect::<Vec<u64>>() {
                        return Err(format!("full-grid violated b={b} m={m} j={j}"));
                    }
                }
            }
        }
    }
    Ok("sandwich, H-bound, T-bound, log-series remainder, full grid".into())
}

fn best_of_three<F: FnMut()>(mut f: F) -> f64 {
    (0..3)
        .map(|_| {
            let t = Instant::now();
            f();
            t.elapsed().as_secs_f64()
        })
        .fold(f64::INFINITY, f64::min)
}

/// Construction-cost scaling: doubling m by 4 scales like m 2^m, dimension
/// scales linearly, and the large instance finishes inside the absolute
/// budget.
fn criterion_8() -> Outcome {
    let weights = ProductWeights::polynomial_decay(2.0, 2000).unwrap();

    let t12 = best_of_three(|| {
        construct_fast(12, 200, &weights).unwrap();
    });
    let t16 = best_of_three(|| {
        construct_fast(16, 200, &weights).unwrap();
    });
    let ratio_m = t16 / t12;
    if !(7.0..=60.0).contains(&ratio_m) {
        return Err(format!("time(m=16)/time(m=12) = {ratio_m:.1} outside [7, 60]"));
    }

    let t_d50 = best_of_three(|| {
        construct_fast(16, 50, &weights).unwrap();
    });
    let t_d2000 = best_of_three(|| {
        construct_fast(16, 2000, &weights).unwrap();
    });
    let ratio_d = t_d2000 / t_d50;
    if !(13.0..=120.0).contains(&ratio_d) {
        return Err(format!("time(d=2000)/time(d=50) = {ratio_d:.1} outside [13, 120]"));
    }

    let t = Instant::now();
    let g = construct_fast(20, 2000, &weights).map_err(|e| e.to_string())?;
    let big = t.elapsed().as_secs_f64();
    if g.dim() != 2000 {
        return Err("m=20 construction returned the wrong dimension".into());
    }
    if big >= 600.0 {
        return Err(format!("(m=20, d=2000) took {big:.0} s (budget 600 s)"));
    }
    Ok(format!(
        "m-ratio {ratio_m:.1}, d-ratio {ratio_d:.1}, (m=20,d=2000) in {big:.1} s"
    ))
}

#[test]
fn acceptance_criteria() {
    let mut series = Vec::new();
    let mut failures = Vec::new();
    let criteria: Vec<(&str, Outcome)> = vec![
        ("1 convergence targets, gamma_j = j^-2", criterion_1(&mut series)),
        ("2 convergence target, gamma_j = 0.95^j", criterion_2()),
        ("3 convergence target, gamma_j = 0.7^j", criterion_3()),
        ("4 pre-asymptotic slope", criterion_4(&series)),
        ("5 exact analytic value at m = d = 1", criterion_5()),
        ("6 oracle equivalences", criterion_6()),
        ("7 theorem-bound suites", criterion_7()),
        ("8 complexity scaling", criterion_8()),
    ];
    for (name, outcome) in criteria {
        match outcome {
            Ok(detail) => println!("acceptance {name}: PASS ({detail})"),
            Err(why) => {
                println!("acceptance {name}: FAIL ({why})");
                failures.push(format!("{name}: {why}"));
            }
        }
    }
    assert!(failures.is_empty(), "failed criteria:\n{}", failures.join("\n"));
}
