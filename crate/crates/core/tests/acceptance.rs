//! Acceptance criteria 1-12. Each criterion prints one PASS/FAIL line; the
//! process exits non-zero when any of them fails.

use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rsir_core::cases::{
    builtin_case, builtin_case_with, case_names, compare, l1_distance, run_case, CaseRun, Manifest, Physics, Reference,
    SnapshotTable,
};
use rsir_core::euler::{hll_flux, EulerPrim, EulerSolver};
use rsir_core::exact::solve_exact;
use rsir_core::relax::{clift_gauvin_cd, drag_force, pressure_relax_stiff};
use rsir_core::twophase::{
    hll_tp_flux, rsir_tp_flux, tp_cons_from_prim, tp_prim_from_cons, TwoPhaseCons, TwoPhaseEos, TwoPhasePrim,
};
use rsir_core::EosParams;

type Outcome = Result<String, String>;
type Criterion = Box<dyn FnOnce(&mut Vec<Manifest>) -> Outcome>;

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn run(name: &str, overrides: &[(&str, &str)]) -> CaseRun {
    let case = builtin_case_with(name, overrides).unwrap_or_else(|e| panic!("{name}: {e}"));
    run_case(&case).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn col<'a>(t: &'a SnapshotTable, name: &str) -> &'a [f64] {
    t.column(name).unwrap_or_else(|| panic!("no column {name}"))
}

fn max_abs_dev(v: &[f64], reference: f64) -> f64 {
    v.iter().fold(0.0, |m, x| m.max((x - reference).abs()))
}

fn range(v: &[f64]) -> f64 {
    let (lo, hi) = v.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), x| {
        (lo.min(*x), hi.max(*x))
    });
    hi - lo
}

fn euler_data(run: &CaseRun) -> (EosParams, EulerPrim, EulerPrim) {
    match run.case.physics {
        Physics::Euler { eos, left, right, .. } => (eos, left, right),
        Physics::TwoPhase { .. } => panic!("{} is not an Euler case", run.manifest.case),
    }
}

/// Index range of the cells whose exact value of `field` sits on the star
/// plateau, shrunk by `margin` cells at both ends.
fn plateau(run: &CaseRun, field: fn(&EulerPrim) -> f64, star: f64, margin: usize) -> std::ops::Range<usize> {
    let (eos, left, right) = euler_data(run);
    let sol = solve_exact(&left, &right, &eos).expect("exact solution");
    let t = run.last();
    let on: Vec<usize> = col(t, "x")
        .iter()
        .enumerate()
        .filter(|(_, x)| (field(&sol.sample((*x - run.case.x0) / t.time)) - star).abs() <= 1e-12 * star.abs().max(1.0))
        .map(|(i, _)| i)
        .collect();
    let (first, last) = (on[0], on[on.len() - 1]);
    first + margin..(last + 1).saturating_sub(margin)
}

fn criterion_1() -> Outcome {
    let r = run("euler-contact-rest", &[]);
    let (eos, left, right) = euler_data(&r);
    let c_bar = 0.5 * (left.sound_speed(&eos).unwrap() + right.sound_speed(&eos).unwrap());
    let t = r.last();
    let u = max_abs_dev(col(t, "u"), 0.0) / c_bar;
    let p = max_abs_dev(col(t, "p"), left.p) / left.p;
    let x0 = r.case.x0;
    let rho = col(t, "rho")
        .iter()
        .zip(col(t, "x"))
        .map(|(r, x)| {
            let r0 = if *x < x0 { left.rho } else { right.rho };
            (r - r0).abs() / r0
        })
        .fold(0.0, f64::max);
    check(
        u <= 1e-10 && p <= 1e-12 && rho <= 1e-12,
        format!("max|u|/c = {u:.2e}, p drift {p:.2e}, rho drift {rho:.2e}"),
    )
}

fn random_euler_pair(rng: &mut ChaCha8Rng) -> (EosParams, EulerPrim, EulerPrim) {
    let eos = match rng.random_range(0..3) {
        0 => EosParams::ideal(rng.random_range(1.1..3.0)),
        1 => EosParams::stiffened(rng.random_range(1.5..7.0), rng.random_range(0.0..1.0e9)),
        _ => EosParams::nasg(
            rng.random_range(1.1..2.0),
            rng.random_range(0.0..1.0e9),
            rng.random_range(1.0e-4..1.0e-3),
        ),
    };
    let state = |rng: &mut ChaCha8Rng| {
        let rho = if eos.b > 0.0 {
            rng.random_range(0.05..0.5) / eos.b
        } else {
            rng.random_range(0.05..1200.0)
        };
        EulerPrim::new(rho, rng.random_range(-500.0..500.0), rng.random_range(1.0e3..1.0e8))
    };
    (eos, state(rng), state(rng))
}

fn random_tp_pair(rng: &mut ChaCha8Rng) -> (TwoPhaseEos, TwoPhasePrim, TwoPhasePrim) {
    let eos = TwoPhaseEos::new(
        EosParams::stiffened(rng.random_range(1.5..7.0), rng.random_range(0.0..1.0e9)),
        EosParams::ideal(rng.random_range(1.1..1.7)),
    );
    let state = |rng: &mut ChaCha8Rng| TwoPhasePrim {
        alpha1: rng.random_range(1.0e-3..0.999),
        rho1: rng.random_range(500.0..1500.0),
        u1: rng.random_range(-200.0..200.0),
        p1: rng.random_range(1.0e4..1.0e7),
        rho2: rng.random_range(0.1..50.0),
        u2: rng.random_range(-200.0..200.0),
        p2: rng.random_range(1.0e4..1.0e7),
    };
    (eos, state(rng), state(rng))
}

fn criterion_2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_611);
    let mut euler_mismatch = 0;
    for _ in 0..10_000 {
        let (eos, wl, wr) = random_euler_pair(&mut rng);
        let a = EulerSolver::Rsir { beta: 0.0 }
            .flux(&wl, &wr, &eos)
            .map(|f| f.to_array().map(f64::to_bits));
        let b = hll_flux(&wl, &wr, &eos).map(|f| f.to_array().map(f64::to_bits));
        match (a, b) {
            (Ok(a), Ok(b)) if a == b => {}
            _ => euler_mismatch += 1,
        }
    }
    let mut tp_mismatch = 0;
    for _ in 0..10_000 {
        let (eos, wl, wr) = random_tp_pair(&mut rng);
        let a = rsir_tp_flux(&wl, &wr, &eos, 0.0).map(|f| f.face.flux.map(f64::to_bits));
        let b = hll_tp_flux(&wl, &wr, &eos).map(|f| f.flux.map(f64::to_bits));
        match (a, b) {
            (Ok(a), Ok(b)) if a == b => {}
            _ => tp_mismatch += 1,
        }
    }
    check(
        euler_mismatch == 0 && tp_mismatch == 0,
        format!("mismatches or failures: Euler {euler_mismatch}/10000, two-phase {tp_mismatch}/10000"),
    )
}

fn rho_l1_exact(r: &CaseRun) -> f64 {
    let table = compare(std::slice::from_ref(r), Reference::Exact).expect("exact comparison");
    table.rows.iter().find(|row| row.field == "rho").expect("rho row").l1
}

fn criterion_3() -> Outcome {
    let coarse = run("euler-shock-tube", &[("cells", "100")]);
    let fine = run("euler-shock-tube", &[("cells", "400")]);
    let ratio = rho_l1_exact(&coarse) / rho_l1_exact(&fine);
    let (eos, left, right) = euler_data(&fine);
    let p_star = solve_exact(&left, &right, &eos).unwrap().p_star;
    let mut p: Vec<f64> = col(fine.last(), "p")[plateau(&fine, |w| w.p, p_star, 3)].to_vec();
    p.sort_by(f64::total_cmp);
    let median = p[p.len() / 2];
    let dev = (median - p_star).abs() / p_star;
    check(
        ratio >= 1.5 && dev <= 0.01,
        format!("L1(rho) ratio 100->400 = {ratio:.3}, plateau p {median:.6e} vs p* {p_star:.6e} ({dev:.2e})"),
    )
}

fn criterion_4() -> Outcome {
    let mut worst = (0.0f64, String::new());
    for name in [
        "euler-shock-tube",
        "euler-double-expansion",
        "euler-double-shock",
        "water-nasg-shock-tube",
    ] {
        let rsir = run(name, &[("solver.kind", "rsir"), ("solver.beta", "1")]);
        let hllc = run(name, &[("solver.kind", "hllc")]);
        // no exact oracle for NASG: a fine HLLC run stands in
        let reference = if name.starts_with("water") {
            Some(run(name, &[("solver.kind", "hllc"), ("cells", "2000")]))
        } else {
            None
        };
        let which = reference.as_ref().map_or(Reference::Exact, Reference::Run);
        let table = compare(&[rsir, hllc], which).expect("comparison");
        for field in ["rho", "u", "p", "e"] {
            let get = |solver: &str| {
                table
                    .rows
                    .iter()
                    .find(|r| r.solver == solver && r.field == field)
                    .unwrap()
                    .l1
            };
            let ratio = get("rsir") / get("hllc");
            if ratio > worst.0 {
                worst = (ratio, format!("{name}/{field}"));
            }
        }
    }
    check(
        worst.0 <= 1.2,
        format!("max L1(RSIR)/L1(HLLC) = {:.4} ({})", worst.0, worst.1),
    )
}

fn overshoot(r: &CaseRun) -> f64 {
    let (eos, left, right) = euler_data(r);
    let u_star = solve_exact(&left, &right, &eos).unwrap().u_star;
    // central half of the plateau: the smeared rarefaction tails are not overshoot
    let full = plateau(r, |w| w.u, u_star, 0);
    let quarter = full.len() / 4;
    let u = &col(r.last(), "u")[full.start + quarter..full.end - quarter];
    max_abs_dev(u, u_star) / (right.u - left.u).abs()
}

fn criterion_5() -> Outcome {
    let linde = overshoot(&run(
        "euler-double-expansion",
        &[("solver.kind", "linde"), ("solver.beta", "1")],
    ));
    let rsir = overshoot(&run(
        "euler-double-expansion",
        &[("solver.kind", "rsir"), ("solver.beta", "1")],
    ));
    check(
        linde > 0.02 && rsir <= 0.01,
        format!("plateau velocity overshoot / jump: Linde {linde:.3e}, RSIR {rsir:.3e}"),
    )
}

fn criterion_6(manifests: &mut Vec<Manifest>) -> Outcome {
    let mut worst_p = 0.0f64;
    let mut worst_u = 0.0f64;
    let mut worst_front = 0.0f64;
    for name in ["tp-alpha-rest", "tp-alpha-transport"] {
        let r = run(name, &[]);
        let Physics::TwoPhase { eos, left, right, .. } = r.case.physics else {
            unreachable!()
        };
        let t = r.last();
        let (p0, u0) = (left.p2, left.u2);
        let c2 = left.c2(&eos).unwrap().max(right.c2(&eos).unwrap());
        worst_p = worst_p.max(max_abs_dev(col(t, "p1"), p0).max(max_abs_dev(col(t, "p2"), p0)) / p0);
        worst_u = worst_u.max(max_abs_dev(col(t, "u1"), u0).max(max_abs_dev(col(t, "u2"), u0)) / (u0.abs() + c2));
        let (x, a) = (col(t, "x"), col(t, "alpha1"));
        let mid = 0.5 * (left.alpha1 + right.alpha1);
        let i = a.iter().position(|v| *v < mid).expect("front inside the domain");
        let front = x[i - 1] + (mid - a[i - 1]) / (a[i] - a[i - 1]) * (x[i] - x[i - 1]);
        worst_front = worst_front.max((front - (r.case.x0 + u0 * t.time)).abs() / r.case.mesh.dx);
        manifests.push(r.manifest);
    }
    check(
        worst_p <= 1e-9 && worst_u <= 1e-9 && worst_front <= 1.0,
        format!("p deviation {worst_p:.2e}, u deviation {worst_u:.2e}, front offset {worst_front:.3} cells"),
    )
}

fn criterion_7(manifests: &mut Vec<Manifest>) -> Outcome {
    let basic = run("tp-shock-tube", &[("solver.kind", "rusanov-basic")]);
    let local = run("tp-shock-tube", &[("solver.kind", "rusanov-local")]);
    let Physics::TwoPhase { left, right, .. } = local.case.physics else {
        unreachable!()
    };
    let (tb, tl) = (basic.last(), local.last());
    let mesh = &local.case.mesh;
    let mut worst = (0.0f64, "");
    for (k, field) in tl.headers.iter().enumerate().skip(1) {
        let initial = if *field == "rho_mix" {
            (left.mixture_density() - right.mixture_density()).abs()
        } else {
            (left.to_array()[k - 1] - right.to_array()[k - 1]).abs()
        };
        let jump = initial.max(range(&tl.columns[k]));
        let frac = l1_distance(&tb.columns[k], &tl.columns[k], mesh.dx) / mesh.length() / jump;
        if frac > worst.0 {
            worst = (frac, field);
        }
    }
    manifests.push(basic.manifest);
    manifests.push(local.manifest);
    check(
        worst.0 <= 0.01,
        format!("max mean |basic - local| / jump = {:.2e} ({})", worst.0, worst.1),
    )
}

fn criterion_8(manifests: &mut Vec<Manifest>) -> Outcome {
    let fine = run("tp-shock-tube", &[("solver.kind", "rusanov-local"), ("cells", "2000")]);
    let r100 = run("tp-shock-tube", &[("solver.kind", "rusanov-local"), ("cells", "100")]);
    let r500 = run("tp-shock-tube", &[("solver.kind", "rusanov-local"), ("cells", "500")]);
    let rsir = run(
        "tp-shock-tube",
        &[("solver.kind", "rsir"), ("solver.beta", "1"), ("cells", "100")],
    );
    let (local, reconstructed) = (r100.manifest.solver.clone(), rsir.manifest.solver.clone());
    let table = compare(&[r100, r500, rsir], Reference::Run(&fine)).expect("comparison");
    let mut ok = true;
    let mut detail = Vec::new();
    for field in ["alpha1", "rho1"] {
        let get = |solver: &str, cells: usize| {
            table
                .rows
                .iter()
                .find(|r| r.solver == solver && r.cells == cells && r.field == field)
                .unwrap()
                .l1
        };
        let (coarse, mid, fine_l1) = (get(&local, 100), get(&reconstructed, 100), get(&local, 500));
        ok &= fine_l1 < mid && mid < coarse;
        detail.push(format!("{field}: {fine_l1:.3e} < {mid:.3e} < {coarse:.3e}"));
    }
    manifests.push(fine.manifest);
    check(ok, detail.join("; "))
}

fn criterion_9(manifests: &mut Vec<Manifest>) -> Outcome {
    for name in case_names().into_iter().filter(|n| n.starts_with("tp-")) {
        let case = builtin_case(&name).unwrap();
        for solver in ["rsir", "hll", "rusanov-basic", "rusanov-local"] {
            let r = run(
                &name,
                &[
                    ("solver.kind", solver),
                    ("cells", &case.mesh.n_cells.min(200).to_string()),
                ],
            );
            manifests.push(r.manifest);
        }
    }
    let worst = manifests
        .iter()
        .flat_map(|m| {
            m.conservation
                .iter()
                .map(move |d| (d.max_relative, format!("{}/{}/{}", m.case, m.solver, d.quantity)))
        })
        .fold((0.0f64, String::new()), |a, b| if b.0 > a.0 { b } else { a });
    check(
        worst.0 <= 1e-12,
        format!(
            "{} two-phase runs, max per-step defect {:.2e} {}",
            manifests.len(),
            worst.0,
            worst.1
        ),
    )
}

/// Saturation residual of the stiff relaxation, bisected in the common
/// pressure. Each phase follows `de = -p dv` from its initial state.
fn bisection_p_eq(w: &TwoPhasePrim, eos: &TwoPhaseEos) -> f64 {
    let volume = |alpha: f64, pk: f64, e: &EosParams, p: f64| {
        let (g, pi) = (e.gamma, e.p_inf);
        alpha * ((pk + g * pi) / (g - 1.0) + p) / ((p + g * pi) / (g - 1.0) + p)
    };
    let f = |p: f64| volume(w.alpha1, w.p1, &eos.phase1, p) + volume(w.alpha2(), w.p2, &eos.phase2, p) - 1.0;
    let mut lo = -eos.phase1.p_inf.min(eos.phase2.p_inf) + 1e-9;
    let mut hi = 1.0e13;
    for _ in 0..500 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn criterion_10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7_031_985);
    let (mut residual, mut oracle, mut energy) = (0.0f64, 0.0f64, 0.0f64);
    let mut touched = 0;
    for _ in 0..1000 {
        let ideal = |rng: &mut ChaCha8Rng| EosParams::ideal(rng.random_range(1.1..1.8));
        let sg =
            |rng: &mut ChaCha8Rng| EosParams::stiffened(rng.random_range(1.5..7.0), rng.random_range(1.0e5..1.0e9));
        let phase1 = if rng.random_bool(0.75) {
            sg(&mut rng)
        } else {
            ideal(&mut rng)
        };
        let phase2 = if rng.random_bool(0.75) {
            ideal(&mut rng)
        } else {
            sg(&mut rng)
        };
        let eos = TwoPhaseEos::new(phase1, phase2);
        let w = TwoPhasePrim {
            alpha1: rng.random_range(0.01..0.99),
            rho1: rng.random_range(1.0..1500.0),
            u1: rng.random_range(-100.0..100.0),
            p1: rng.random_range(1.0e4..1.0e7),
            rho2: rng.random_range(0.1..1500.0),
            u2: rng.random_range(-100.0..100.0),
            p2: rng.random_range(1.0e4..1.0e7),
        };
        let state = tp_cons_from_prim(&w, &eos).expect("admissible state");
        let (out, report) = pressure_relax_stiff(&state, &eos).expect("relaxation");
        let (after, _) = tp_prim_from_cons(&out, &eos).expect("relaxed state");
        residual = residual.max((after.p1 - after.p2).abs() / after.p1.abs().max(after.p2.abs()));
        let p_ref = bisection_p_eq(&w, &eos);
        oracle = oracle.max((report.p_eq - p_ref).abs() / p_ref.abs());
        energy = energy.max((out.mixture_energy() - state.mixture_energy()).abs() / state.mixture_energy().abs());
        let TwoPhaseCons(a) = state;
        let TwoPhaseCons(b) = out;
        if [1, 2, 4, 5].iter().any(|&k| a[k].to_bits() != b[k].to_bits()) {
            touched += 1;
        }
    }
    check(
        residual <= 1e-8 && oracle <= 1e-10 && energy <= 1e-12 && touched == 0,
        format!("residual {residual:.2e}, vs bisection {oracle:.2e}, energy drift {energy:.2e}, masses/momenta changed in {touched} states"),
    )
}

fn lerp(x: &[f64], y: &[f64], at: f64) -> f64 {
    let s = ((at - x[0]) / (x[1] - x[0])).clamp(0.0, (x.len() - 1) as f64);
    let i = (s.floor() as usize).min(x.len() - 2);
    let f = s - i as f64;
    y[i] * (1.0 - f) + y[i + 1] * f
}

fn criterion_11(manifests: &mut Vec<Manifest>) -> Outcome {
    let r = run("tp-shock-tube-long", &[]);
    let Physics::TwoPhase { left, right, .. } = r.case.physics else {
        unreachable!()
    };
    let peaks: Vec<f64> = r
        .snapshots
        .iter()
        .map(|s| col(s, "alpha1").iter().copied().fold(0.0, f64::max))
        .collect();
    let growing = peaks.len() == 3 && peaks.windows(2).all(|w| w[1] > w[0]);

    let x0 = r.case.x0;
    let t_last = r.last().time;
    let (lo, hi) = ((r.case.mesh.x_min - x0) / t_last, (r.case.mesh.x_max - x0) / t_last);
    let xi: Vec<f64> = (0..2000).map(|j| lo + (hi - lo) * (j as f64 + 0.5) / 2000.0).collect();
    let rescaled = |field: &str| -> Vec<Vec<f64>> {
        r.snapshots
            .iter()
            .map(|s| {
                xi.iter()
                    .map(|z| lerp(col(s, "x"), col(s, field), x0 + z * s.time))
                    .collect()
            })
            .collect()
    };
    let pairs = [(0, 1), (0, 2), (1, 2)];

    let alpha = rescaled("alpha1");
    let alpha_range = range(&alpha.concat());
    let alpha_dev = pairs
        .iter()
        .flat_map(|&(a, b)| alpha[a].iter().zip(&alpha[b]).map(|(p, q)| (p - q).abs()))
        .fold(0.0, f64::max)
        / alpha_range;

    // carrier collapse is judged on the mean over the disturbed fan, where
    // smeared shocks at different times do not dominate the comparison
    let p2 = rescaled("p2");
    let band = 0.01 * (left.p2 - right.p2).abs();
    let fan: Vec<bool> = (0..xi.len())
        .map(|j| {
            p2.iter()
                .any(|p| (p[j] - left.p2).abs() > band && (p[j] - right.p2).abs() > band)
        })
        .collect();
    let n_fan = fan.iter().filter(|m| **m).count() as f64;
    let carrier_dev = |profiles: &[Vec<f64>]| {
        let span = range(&profiles.concat());
        pairs
            .iter()
            .map(|&(a, b)| {
                profiles[a]
                    .iter()
                    .zip(&profiles[b])
                    .zip(&fan)
                    .filter(|(_, m)| **m)
                    .map(|((p, q), _)| (p - q).abs())
                    .sum::<f64>()
                    / n_fan
            })
            .fold(0.0, f64::max)
            / span
    };
    let p_dev = carrier_dev(&p2);
    let u_dev = carrier_dev(&rescaled("u2"));
    manifests.push(r.manifest);
    check(
        growing && alpha_dev > 0.05 && p_dev <= 0.02 && u_dev <= 0.02,
        format!(
            "peak alpha1 {:.4}/{:.4}/{:.4}, alpha1 xi-deviation {:.1}% of range, carrier p {:.2}%, u {:.2}%",
            peaks[0],
            peaks[1],
            peaks[2],
            100.0 * alpha_dev,
            100.0 * p_dev,
            100.0 * u_dev
        ),
    )
}

fn criterion_12() -> Outcome {
    let at_one = clift_gauvin_cd(1.0);
    let upper: Vec<f64> = [800.0, 1.0e3, 1.0e5].iter().map(|&re| clift_gauvin_cd(re)).collect();
    let eos = TwoPhaseEos::water_air();
    let w = TwoPhasePrim {
        alpha1: 0.01,
        rho1: 1000.0,
        u1: 25.0,
        p1: 1.0e5,
        rho2: 1.2,
        u2: 25.0,
        p2: 1.0e5,
    };
    let force = drag_force(&tp_cons_from_prim(&w, &eos).unwrap(), 5.0e-4, 1.8e-5);
    check(
        at_one == 27.6 && upper.iter().all(|&c| c == 0.438) && force == 0.0,
        format!("Cd(1) = {at_one}, Cd(800, 1e3, 1e5) = {upper:?}, F_D at equal velocities = {force}"),
    )
}

fn main() -> ExitCode {
    let mut manifests = Vec::new();
    let criteria: Vec<(&str, Criterion)> = vec![
        ("contact exactness", Box::new(|_| criterion_1())),
        ("beta = 0 reproduces HLL", Box::new(|_| criterion_2())),
        ("convergence to the exact solution", Box::new(|_| criterion_3())),
        ("HLLC parity", Box::new(|_| criterion_4())),
        ("Linde oscillations", Box::new(|_| criterion_5())),
        ("two-phase equilibrium preservation", Box::new(criterion_6)),
        ("Rusanov variants agree", Box::new(criterion_7)),
        ("RSIR accuracy ordering", Box::new(criterion_8)),
        ("two-phase conservation audit", Box::new(criterion_9)),
        ("pressure relaxation", Box::new(|_| criterion_10())),
        ("non-self-similarity", Box::new(criterion_11)),
        ("drag correlation", Box::new(|_| criterion_12())),
    ];
    // the audit covers every two-phase run, so it goes last
    let mut order: Vec<usize> = (0..criteria.len()).filter(|&n| n != 8).collect();
    order.push(8);
    let mut slots: Vec<Option<(&str, Criterion)>> = criteria.into_iter().map(Some).collect();
    let mut results = vec![None; slots.len()];
    for n in order {
        let (title, f) = slots[n].take().expect("each criterion runs once");
        let clock = Instant::now();
        let outcome = f(&mut manifests);
        results[n] = Some((title, outcome, clock.elapsed().as_secs_f64()));
    }
    let mut failures = 0;
    for (n, result) in results.into_iter().enumerate() {
        let (title, outcome, secs) = result.expect("every criterion ran");
        let (verdict, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failures += 1;
                ("FAIL", d)
            }
        };
        println!("criterion {:>2} {title}: {verdict} ({detail}) [{secs:.1}s]", n + 1);
    }
    println!("{} of 12 criteria passed", 12 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
