use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use weylwalk::hopf::basis::quadratic_map;
use weylwalk::hopf::fuzz::random_quadratic_coefficients;
use weylwalk::hopf::{walk_basis_map, CoproductModel, Duality};
use weylwalk::lorentz::{check_symmetry, sample_beta, sample_on_shell_point, DeformationConfig};
use weylwalk::walk::{dispersion, dispersion_grid};
use weylwalk::{Chirality, LatticeState, WaveVector};

fn walk(c: &mut Criterion) {
    let mut g = c.benchmark_group("walk");
    g.bench_function("dispersion_point", |b| {
        let k = WaveVector::new(0.4, -1.1, 0.7);
        b.iter(|| dispersion(black_box(k), Chirality::Plus))
    });
    g.bench_function("dispersion_grid_16", |b| b.iter(|| dispersion_grid(black_box(16), Chirality::Plus)));
    for n in [16, 32] {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let psi = LatticeState::random(n, &mut rng).unwrap();
        g.bench_with_input(BenchmarkId::new("fft_step", n), &psi, |b, psi| {
            b.iter(|| psi.step(Chirality::Plus, 1).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("fft_step_x100", n), &psi, |b, psi| {
            b.iter(|| psi.step(Chirality::Plus, 100).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("shift_step", n), &psi, |b, psi| {
            b.iter(|| psi.step_position_space(Chirality::Plus).unwrap())
        });
    }
    g.finish();
}

fn lorentz(c: &mut Criterion) {
    let cfg = DeformationConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let pt = sample_on_shell_point(&mut rng, 0, Chirality::Plus, &cfg, 0.5).unwrap();
    let beta = sample_beta(&mut rng, 0.5);
    c.bench_function("lorentz/check_symmetry", |b| {
        b.iter(|| check_symmetry(black_box(&pt), beta, [0.0; 3], &cfg).unwrap())
    });
}

fn hopf(c: &mut Criterion) {
    let mut g = c.benchmark_group("hopf");
    let kappa = CoproductModel::kappa();
    let walk = walk_basis_map();
    g.bench_function("mapped_model", |b| b.iter(|| kappa.mapped(black_box(&walk))));
    let d = Duality::with_default_pairing(&kappa, &walk).unwrap();
    g.bench_function("spacetime_table", |b| b.iter(|| d.spacetime_commutators().unwrap()));
    g.bench_function("phase_space_table", |b| b.iter(|| d.phase_space_commutators().unwrap()));
    g.bench_function("random_map_trial", |b| {
        let m = random_quadratic_coefficients(6, 0);
        b.iter(|| {
            let map = quadratic_map(&m).unwrap();
            Duality::with_default_pairing(&kappa, &map).unwrap().spacetime_commutators().unwrap()
        })
    });
    g.finish();
}

criterion_group!(benches, walk, lorentz, hopf);
criterion_main!(benches);
