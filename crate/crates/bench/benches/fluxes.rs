use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use rsir_bench::{euler_pair, nasg_pair, two_phase_pair};
use rsir_core::euler::{hll_flux, hllc_flux, linde_flux, rsir_flux, rsir_flux_general, rusanov_flux};
use rsir_core::relax::pressure_relax_stiff;
use rsir_core::twophase::{hll_tp_flux, rsir_tp_flux, rusanov_basic_flux, rusanov_local_flux, tp_cons_from_prim};

fn euler_fluxes(c: &mut Criterion) {
    let (eos, wl, wr) = euler_pair();
    let mut g = c.benchmark_group("euler-flux");
    g.bench_function("rusanov", |b| {
        b.iter(|| rusanov_flux(black_box(&wl), black_box(&wr), &eos))
    });
    g.bench_function("hll", |b| b.iter(|| hll_flux(black_box(&wl), black_box(&wr), &eos)));
    g.bench_function("hllc", |b| b.iter(|| hllc_flux(black_box(&wl), black_box(&wr), &eos)));
    g.bench_function("linde", |b| {
        b.iter(|| linde_flux(black_box(&wl), black_box(&wr), &eos, 1.0))
    });
    g.bench_function("rsir", |b| {
        b.iter(|| rsir_flux(black_box(&wl), black_box(&wr), &eos, 1.0))
    });
    let (nasg, nl, nr) = nasg_pair();
    g.bench_function("rsir-nasg", |b| {
        b.iter(|| rsir_flux_general(black_box(&nl), black_box(&nr), &nasg, 1.0))
    });
    g.finish();
}

fn two_phase_fluxes(c: &mut Criterion) {
    let (eos, wl, wr) = two_phase_pair();
    let mut g = c.benchmark_group("two-phase-flux");
    g.bench_function("rusanov-basic", |b| {
        b.iter(|| rusanov_basic_flux(black_box(&wl), black_box(&wr), &eos))
    });
    g.bench_function("rusanov-local", |b| {
        b.iter(|| rusanov_local_flux(black_box(&wl), black_box(&wr), &eos))
    });
    g.bench_function("hll", |b| b.iter(|| hll_tp_flux(black_box(&wl), black_box(&wr), &eos)));
    g.bench_function("rsir", |b| {
        b.iter(|| rsir_tp_flux(black_box(&wl), black_box(&wr), &eos, 1.0))
    });
    g.finish();
}

fn relaxation(c: &mut Criterion) {
    let (eos, wl, _) = two_phase_pair();
    let state = tp_cons_from_prim(&rsir_core::twophase::TwoPhasePrim { p2: 2.0e5, ..wl }, &eos).unwrap();
    c.bench_function("pressure-relax", |b| {
        b.iter(|| pressure_relax_stiff(black_box(&state), &eos))
    });
}

criterion_group!(benches, euler_fluxes, two_phase_fluxes, relaxation);
criterion_main!(benches);
