use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BatchSize, Criterion, Throughput};
use csd_bench::{generate_inputs, BenchConfig};
use csd_core::{convert, ConverterId};

fn converters(c: &mut Criterion) {
    let config = BenchConfig::default();
    let inputs = generate_inputs(&config);

    let mut group = c.benchmark_group("csd_32bit");
    group.throughput(Throughput::Elements(inputs.len() as u64));
    for id in ConverterId::ALL {
        let f = id.function();
        group.bench_function(id.name(), |b| {
            b.iter_batched(
                || inputs.clone(),
                |xs| {
                    let mut acc = 0u64;
                    for x in xs {
                        let rep = f(black_box(x));
                        acc ^= rep.plus_mask().wrapping_add(rep.minus_mask());
                    }
                    acc
                },
                BatchSize::LargeInput,
            )
        });
    }
    group.finish();
}

fn dispatch(c: &mut Criterion) {
    let inputs = generate_inputs(&BenchConfig::default());
    c.bench_function("convert_dispatch_bin2naf", |b| {
        b.iter(|| {
            inputs.iter().fold(0u64, |acc, &x| {
                acc ^ convert(ConverterId::Bin2naf, black_box(x)).plus_mask()
            })
        })
    });
}

criterion_group!(benches, converters, dispatch);
criterion_main!(benches);
