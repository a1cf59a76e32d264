use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use lbm_poly::Sym;
use lbm_sim::{Exec, Lattice, MacroFields, SimConfig};

fn step(c: &mut Criterion) {
    let mut g = c.benchmark_group("step");
    g.sample_size(10);
    for (name, grid) in [("d2q9-iso", vec![128, 128]), ("d3q19-iso", vec![32, 32, 32])] {
        let mut lat = Lattice::new(&SimConfig::new(name, &grid).with_sigma(Sym::SigmaX, 0.25)).unwrap();
        let fields = MacroFields::uniform(lat.cells(), 1.0, [0.01, 0.0, 0.0], None);
        let init = lat.init(&fields).unwrap();
        for exec in [Exec::Sequential, Exec::Parallel] {
            lat.set_exec(exec);
            let mut s = init.clone();
            g.bench_with_input(BenchmarkId::new(format!("{exec:?}").to_lowercase(), name), &(), |b, _| {
                b.iter(|| lat.step(&mut s).unwrap())
            });
        }
    }
    g.finish();
}

criterion_group!(benches, step);
criterion_main!(benches);
