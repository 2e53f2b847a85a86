use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use puiseux::cli::parse_problem;
use puiseux::{expand, Exec};

const PROBLEMS: &[(&str, &str)] = &[
    ("node", include_str!("../problems/node.txt")),
    ("binomial", include_str!("../problems/binomial.txt")),
    ("ramified", include_str!("../problems/ramified.txt")),
    ("example_corrected", include_str!("../problems/example_corrected.txt")),
    ("reducible", include_str!("../problems/reducible.txt")),
];

fn bench_expand(c: &mut Criterion) {
    let mut group = c.benchmark_group("expand");
    group.sample_size(10);
    for (name, text) in PROBLEMS {
        let spec = parse_problem(text).expect("bench problem parses");
        for exec in [Exec::Sequential, Exec::Parallel] {
            let mut opts = spec.options.clone();
            opts.exec = exec;
            group.bench_with_input(BenchmarkId::new(format!("{exec:?}"), name), &opts, |b, opts| {
                b.iter(|| expand(&spec.gens, &spec.weight, opts).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, bench_expand);
criterion_main!(benches);
