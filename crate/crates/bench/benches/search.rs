use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use egal_core::{check_axiom, check_rule_in, Axiom, Domain, ExtensionKind, RuleProperty, RuleSpec, SearchSpace};

fn bench_axioms(c: &mut Criterion) {
    let d = Domain::free(3, 20).unwrap();
    let mut group = c.benchmark_group("axiom_scan");
    group.sample_size(10);
    for axiom in [Axiom::Maximin, Axiom::SenHammond, Axiom::PigouDalton] {
        group.bench_with_input(BenchmarkId::new(axiom.name(), 3), &axiom, |b, &a| {
            b.iter(|| check_axiom(a, &RuleSpec::MaxEq, &d, &SearchSpace::new(3)).unwrap())
        });
    }
    group.finish();
}

fn bench_manipulation(c: &mut Criterion) {
    let d = Domain::free(3, 20).unwrap();
    let mut group = c.benchmark_group("manipulation_scan");
    group.sample_size(10);
    for n in [2usize, 3] {
        group.bench_with_input(BenchmarkId::new("strategyproofness", n), &n, |b, &n| {
            b.iter(|| {
                check_rule_in(
                    RuleProperty::Strategyproofness,
                    &RuleSpec::MaxHam,
                    ExtensionKind::Pessimistic,
                    &d,
                    &SearchSpace::new(n),
                )
                .unwrap()
            })
        });
    }
    group.finish();
}

criterion_group!(benches, bench_axioms, bench_manipulation);
criterion_main!(benches);
