use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use geomeans::forward::{default_tgrid, forward_means};
use geomeans::fractional::{ErdelyiKober, FractionalSpec, RiemannLiouville};
use geomeans::inversion::chart_grid;
use geomeans::numerics::{log_kernel_integral, GaussRule, LogKernel, LogKernelMatrix, SampledProfile, TGrid};
use geomeans::spaces::boundary_grid;
use geomeans::special::{g_alpha_continued, gauss_2f1, DEFAULT_TOL};
use geomeans::{Method, Phantom, Reconstructor, SpaceSpec};
use std::hint::black_box;

fn special(c: &mut Criterion) {
    c.bench_function("gauss_2f1", |b| {
        b.iter(|| gauss_2f1(black_box(1.5), black_box(-0.5), black_box(2.25), black_box(0.9), DEFAULT_TOL))
    });
    let mut g = c.benchmark_group("g_alpha_continued");
    for n in [3usize, 4] {
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| g_alpha_continued(n, black_box(3.0 - n as f64), black_box(0.4)))
        });
    }
    g.finish();
    c.bench_function("gauss_legendre_64", |b| b.iter(|| GaussRule::new(black_box(64))));
}

fn one_dimensional(c: &mut Criterion) {
    let grid = TGrid::new(1e-3, 2.0 - 1e-3, 800).unwrap();
    let p = SampledProfile::from_fn(grid, |t| (t * (2.0 - t)).powi(3));
    c.bench_function("log_kernel_integral", |b| {
        b.iter(|| log_kernel_integral(&p, black_box(0.7), LogKernel::SquareDifference))
    });
    c.bench_function("log_kernel_matrix_800", |b| {
        b.iter(|| LogKernelMatrix::new(grid, LogKernel::SquareDifference, grid.start, grid.end))
    });
    let ek = ErdelyiKober::new(grid, FractionalSpec::new(0.5, 1.0)).unwrap();
    c.bench_function("erdelyi_kober_apply_800", |b| b.iter(|| ek.apply(black_box(&p.samples))));
    let rl_grid = TGrid::new(-0.999, 0.999, 600).unwrap();
    let rl = RiemannLiouville::new(rl_grid, -1.0).unwrap();
    let q = SampledProfile::from_fn(rl_grid, |t| (1.0 - t * t).powi(3));
    c.bench_function("riemann_liouville_apply_600", |b| b.iter(|| rl.apply(black_box(&q.samples))));
}

fn pipeline(c: &mut Criterion) {
    let mut g = c.benchmark_group("pipeline");
    g.sample_size(10);
    for space in [SpaceSpec::euclidean(2, 1.0).unwrap(), SpaceSpec::sphere(2, 1.0).unwrap()] {
        let phantom = Phantom::single(space, &[0.2, 0.1], 0.4 * space.radius, 1.0).unwrap();
        let boundary = boundary_grid(&space, 64).unwrap();
        let tgrid = default_tgrid(&space);
        let name = space.kind.name();
        g.bench_function(BenchmarkId::new("forward", name), |b| {
            b.iter(|| forward_means(&phantom, &boundary, &tgrid, 48).unwrap())
        });
        let data = forward_means(&phantom, &boundary, &tgrid, 48).unwrap();
        g.bench_function(BenchmarkId::new("prepare", name), |b| {
            b.iter(|| Reconstructor::new(&data, Method::Direct).unwrap())
        });
        let rec = Reconstructor::new(&data, Method::Direct).unwrap();
        let pts = chart_grid(&space, 11, 0.5).unwrap();
        g.bench_function(BenchmarkId::new("reconstruct", name), |b| {
            b.iter(|| rec.reconstruct(black_box(&pts)).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, special, one_dimensional, pipeline);
criterion_main!(benches);
