use criterion::{black_box, criterion_group, criterion_main, Criterion};
use tanglekit::brunner::{abelianization_order, brunner_presentation};
use tanglekit::corpus::{corpus, CorpusSpec};
use tanglekit::diagram::{closure, synthesize, Closure};
use tanglekit::expr::parse_expr;
use tanglekit::invariants::determinant;
use tanglekit::quasialt::certify_family;

fn bench_determinants(c: &mut Criterion) {
    let tangles: Vec<_> = corpus(&CorpusSpec::type2(6))
        .unwrap()
        .into_iter()
        .take(24)
        .map(|e| synthesize(&e).unwrap())
        .collect();
    c.bench_function("determinant/corpus-closures", |b| {
        b.iter(|| {
            for t in &tangles {
                let d = closure(t, Closure::Numerator);
                black_box(determinant(&d).unwrap());
            }
        })
    });
}

fn bench_certify(c: &mut Criterion) {
    let t = parse_expr("[0,-2] + [0,-3]").unwrap();
    c.bench_function("qa/certify-family-2-3", |b| {
        b.iter(|| black_box(certify_family(&t, 2, 3).unwrap()))
    });
}

fn bench_presentation(c: &mut Criterion) {
    let d = closure(&synthesize(&parse_expr("[0,-2] + [0,-1,-2]").unwrap()).unwrap(), Closure::Numerator);
    c.bench_function("brunner/present-and-abelianize", |b| {
        b.iter(|| {
            let pres = brunner_presentation(&d).unwrap();
            black_box(abelianization_order(&pres).unwrap())
        })
    });
}

criterion_group!(benches, bench_determinants, bench_certify, bench_presentation);
criterion_main!(benches);
