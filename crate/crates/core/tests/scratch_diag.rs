//! Temporary diagnostics for generator calibration. Run with
//! `cargo test -p stripid-core --test scratch_diag -- --ignored --nocapture`

use stripid_core::cgpf::{binarize, gradient_energy_map, otsu_threshold, region_props, CgpfConfig};
use stripid_core::imaging::{median_filter, to_gray};
use stripid_core::synth::{gen_class_specs, render_sample, AugmentSpec};

#[test]
#[ignore]
fn diag_energy_and_regions() {
    let cfg = CgpfConfig::default();
    for (i, spec) in gen_class_specs(6, 42).unwrap().iter().enumerate() {
        let img = render_sample(spec, &AugmentSpec::default(), 1000 + i as u64);
        let gray = to_gray(&img);
        let energy = gradient_energy_map(&gray, cfg.hog.cell_size);
        let filtered = median_filter(&energy, cfg.median_kernel).unwrap();
        let t = otsu_threshold(&filtered);
        let mask = binarize(&filtered, t);
        let regions = region_props(&mask, 1);
        let big: Vec<usize> = regions
            .iter()
            .map(|r| r.pixel_count)
            .filter(|&n| n >= cfg.min_region_area)
            .collect();
        let all: Vec<usize> = regions.iter().map(|r| r.pixel_count).take(20).collect();
        println!(
            "class {i}: grid {:?} axes ({:.1},{:.1}) base {:?} pill {:?}",
            spec.pill_grid, spec.pill_axes.0, spec.pill_axes.1, spec.base_color, spec.pill_color
        );
        println!(
            "  otsu T={t:.1} ones={} regions(all)={:?} regions(>=min)={:?}",
            mask.count_ones(),
            all,
            big
        );
        let mut vals: Vec<f64> = filtered.data().to_vec();
        vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
        println!(
            "  energy percentiles p10={:.0} p50={:.0} p90={:.0} p99={:.0}",
            vals[vals.len() / 10],
            vals[vals.len() / 2],
            vals[vals.len() * 9 / 10],
            vals[vals.len() * 99 / 100]
        );
    }
}

use stripid_core::cepstrum::{cepstral_features, CepstrumConfig};
use stripid_core::cgpf::cgpf_features;
use stripid_core::classify::{Dataset, Method, TrainConfig, LinearKind};
use stripid_core::evalx::{evaluate, separation_ratio, size_sweep, stratified_split, ClassifierSpec};
use stripid_core::synth::hue_twin;

fn bench_features(method: Method, n_classes: usize, per_class: usize, seed: u64) -> Dataset {
    let specs = gen_class_specs(n_classes, seed).unwrap();
    let aug = AugmentSpec::default();
    let mut samples = Vec::new();
    for (class, spec) in specs.iter().enumerate() {
        for i in 0..per_class {
            let sample_seed = {
                // mirror synth::write_dataset seeding via public API: regenerate dataset? For diagnostics, use distinct seeds.
                (seed.wrapping_mul(0x9E3779B97F4A7C15) ^ ((class as u64) << 32) ^ i as u64).wrapping_mul(0xBF58476D1CE4E5B9)
            };
            let img = render_sample(spec, &aug, sample_seed);
            let f = match method {
                Method::Cepstrum => cepstral_features(&img, &CepstrumConfig::default()).unwrap(),
                Method::Cgpf => cgpf_features(&img, &CgpfConfig::default()).unwrap(),
            };
            samples.push((f, class));
        }
    }
    let labels = (0..n_classes).map(stripid_core::synth::class_label).collect();
    Dataset::new(samples, labels).unwrap()
}

#[test]
#[ignore]
fn diag_benchmark_accuracies() {
    for method in [Method::Cepstrum, Method::Cgpf] {
        let t0 = std::time::Instant::now();
        let full = bench_features(method, 12, 50, 42);
        let (train, test) = stratified_split(&full, 0.8, 7).unwrap();
        print!("{method}:");
        for spec in [
            ClassifierSpec::Knn { k: 1 },
            ClassifierSpec::Linear { kind: LinearKind::Svm, cfg: TrainConfig::default() },
            ClassifierSpec::Linear { kind: LinearKind::Lr, cfg: TrainConfig::default() },
        ] {
            let model = spec.train(&train, 0).unwrap();
            let report = evaluate(&model, &test).unwrap();
            print!("  {}={:.4}", spec.tag(), report.accuracy);
        }
        println!("  ({:.1?})", t0.elapsed());

        let classifiers = vec![
            ClassifierSpec::Knn { k: 1 },
            ClassifierSpec::Linear { kind: LinearKind::Svm, cfg: TrainConfig::default() },
            ClassifierSpec::Linear { kind: LinearKind::Lr, cfg: TrainConfig::default() },
        ];
        let curve = size_sweep(&full, &[2, 5, 10, 20, 40], &classifiers, 7).unwrap();
        for p in &curve.points {
            println!("  sweep s={} total={} accs={:?}", p.per_class, p.total, p.accuracies);
        }
    }

    // Hue twin separation, cepstral features.
    let spec0 = &gen_class_specs(12, 42).unwrap()[0];
    let twin = hue_twin(spec0, 20.0);
    let aug = AugmentSpec::default();
    let cfg = CepstrumConfig::default();
    let fa: Vec<Vec<f64>> = (0..20).map(|i| cepstral_features(&render_sample(spec0, &aug, 9000 + i), &cfg).unwrap().values).collect();
    let fb: Vec<Vec<f64>> = (0..20).map(|i| cepstral_features(&render_sample(&twin, &aug, 9100 + i), &cfg).unwrap().values).collect();
    println!("hue twin separation ratio: {:.3}", separation_ratio(&fa, &fb).unwrap());
}

#[test]
#[ignore]
fn diag_svm_ceiling_and_geometry() {
    let full = bench_features(Method::Cepstrum, 12, 50, 42);
    let (train, test) = stratified_split(&full, 0.8, 7).unwrap();

    for (tag, iters, eta) in [("T=500 e=.1", 500, 0.1), ("T=2000 e=.1", 2000, 0.1), ("T=5000 e=.3", 5000, 0.3), ("T=500 e=1", 500, 1.0)] {
        let cfg = TrainConfig { iterations: iters, learning_rate: eta, ..TrainConfig::default() };
        let m = ClassifierSpec::Linear { kind: LinearKind::Svm, cfg }.train(&train, 0).unwrap();
        let r = evaluate(&m, &test).unwrap();
        println!("svm {tag}: acc={:.4}", r.accuracy);
    }

    // Class geometry: mean within-class distance vs between-class centroid distances.
    let dims = train.dims();
    let mut centroids = vec![vec![0.0; dims]; 12];
    let mut counts = vec![0usize; 12];
    for (fv, l) in &train.samples {
        for (c, v) in centroids[*l].iter_mut().zip(&fv.values) { *c += v; }
        counts[*l] += 1;
    }
    for (c, n) in centroids.iter_mut().zip(&counts) {
        for v in c.iter_mut() { *v /= *n as f64; }
    }
    let mut within = vec![0.0; 12];
    for (fv, l) in &train.samples {
        within[*l] += stripid_core::classify::euclidean(&fv.values, &centroids[*l]).unwrap();
    }
    for (w, n) in within.iter_mut().zip(&counts) { *w /= *n as f64; }
    let mut min_between = f64::INFINITY;
    let mut sum_between = 0.0;
    let mut n_pairs = 0;
    for i in 0..12 {
        for j in i+1..12 {
            let d = stripid_core::classify::euclidean(&centroids[i], &centroids[j]).unwrap();
            min_between = min_between.min(d);
            sum_between += d;
            n_pairs += 1;
        }
    }
    let avg_within = within.iter().sum::<f64>() / 12.0;
    println!("avg within={:.4} min between={:.4} avg between={:.4} ratio(min/within)={:.2}",
        avg_within, min_between, sum_between / n_pairs as f64, min_between / avg_within);
}

#[test]
#[ignore]
fn diag_bin_vectors() {
    use stripid_core::cepstrum::{bin_values, fft2d, log_magnitude};
    use stripid_core::imaging::split_planes;
    let specs = gen_class_specs(12, 42).unwrap();
    let aug = AugmentSpec::default();
    for (i, spec) in specs.iter().enumerate().take(6) {
        let img = render_sample(spec, &aug, 777 + i as u64);
        let (r, g, b) = split_planes(&img);
        let lr = log_magnitude(&fft2d(&r).unwrap());
        let lg = log_magnitude(&fft2d(&g).unwrap());
        let lb = log_magnitude(&fft2d(&b).unwrap());
        let bins = bin_values(&lr, &lg, &lb, 128).unwrap();
        let c = bins.counts();
        let head: Vec<String> = c[..14].iter().map(|v| format!("{:.4}", v)).collect();
        let tail_mass: f64 = c[14..].iter().sum();
        println!("class {i}: edges=(0,{:.2}) head={:?} tail14+={:.4}", bins.edges().1, head, tail_mass);
    }
}

#[test]
#[ignore]
fn diag_collisions() {
    use stripid_core::cepstrum::{bin_values, fft2d, log_magnitude};
    use stripid_core::imaging::split_planes;

    let full = bench_features(Method::Cepstrum, 12, 20, 42);
    let dims = full.dims();
    let mut centroids = vec![vec![0.0; dims]; 12];
    let mut counts = vec![0usize; 12];
    for (fv, l) in &full.samples {
        for (c, v) in centroids[*l].iter_mut().zip(&fv.values) { *c += v; }
        counts[*l] += 1;
    }
    for (c, n) in centroids.iter_mut().zip(&counts) {
        for v in c.iter_mut() { *v /= *n as f64; }
    }
    let mut within = vec![0.0; 12];
    for (fv, l) in &full.samples {
        within[*l] += stripid_core::classify::euclidean(&fv.values, &centroids[*l]).unwrap();
    }
    for (w, n) in within.iter_mut().zip(&counts) { *w /= *n as f64; }

    println!("within: {:?}", within.iter().map(|w| format!("{:.5}", w)).collect::<Vec<_>>());
    let mut worst = (0, 0, f64::INFINITY);
    for i in 0..12 {
        for j in i+1..12 {
            let d = stripid_core::classify::euclidean(&centroids[i], &centroids[j]).unwrap();
            let sep = d / (within[i].max(within[j]));
            if sep < 2.0 {
                println!("pair ({i},{j}): between={:.5} sep_ratio={:.2}", d, sep);
            }
            if sep < worst.2 { worst = (i, j, sep); }
        }
    }
    println!("worst pair: {:?}", worst);

    // Dump bins of the worst pair.
    let specs = gen_class_specs(12, 42).unwrap();
    for &cls in &[worst.0, worst.1] {
        let img = render_sample(&specs[cls], &AugmentSpec::default(), 31337);
        let (r, g, b) = split_planes(&img);
        let lr = log_magnitude(&fft2d(&r).unwrap());
        let lg = log_magnitude(&fft2d(&g).unwrap());
        let lb = log_magnitude(&fft2d(&b).unwrap());
        let bins = bin_values(&lr, &lg, &lb, 128).unwrap();
        let c = bins.counts();
        let head: Vec<String> = c[..12].iter().map(|v| format!("{:.4}", v)).collect();
        let mass_12_40: f64 = c[12..40].iter().sum();
        let mass_40_128: f64 = c[40..].iter().sum();
        println!("class {cls}: max={:.2} head={:?} m[12,40)={:.4} m[40,)={:.4} spec base={:?} grid={:?}",
            bins.edges().1, head, mass_12_40, mass_40_128, specs[cls].base_color, specs[cls].pill_grid);
    }
}

#[test]
#[ignore]
fn diag_svm_heads() {
    use stripid_core::classify::{svm_cost_grad, Standardizer, train_linear};
    let full = bench_features(Method::Cepstrum, 12, 50, 42);
    let (train, test) = stratified_split(&full, 0.8, 7).unwrap();
    let s = Standardizer::fit(&train).unwrap();
    let rows: Vec<Vec<f64>> = train.samples.iter().map(|(fv, _)| s.apply(&fv.values)).collect();

    // Head for class 0: track J and binary train accuracy.
    let y: Vec<f64> = train.samples.iter().map(|(_, l)| if *l == 0 { 1.0 } else { -1.0 }).collect();
    let mut w = vec![0.0; train.dims()];
    let mut b = 0.0;
    for t in 0..=2000usize {
        let (cost, gw, gb) = svm_cost_grad(&w, b, &rows, &y, 1e-3).unwrap();
        if t % 250 == 0 {
            let correct = rows.iter().zip(&y).filter(|(x, &yy)| {
                let m = x.iter().zip(&w).map(|(a, b)| a * b).sum::<f64>() - b;
                (m > 0.0) == (yy > 0.0)
            }).count();
            let wnorm = w.iter().map(|v| v * v).sum::<f64>().sqrt();
            println!("t={t} J={cost:.4} bin_acc={:.3} |w|={wnorm:.3} b={b:.3}", correct as f64 / rows.len() as f64);
        }
        for (wi, gi) in w.iter_mut().zip(&gw) { *wi -= 0.1 * gi; }
        b -= 0.1 * gb;
    }

    // Multiclass accuracy at several T with defaults otherwise.
    for iters in [250, 500, 1000, 2000, 4000] {
        let cfg = TrainConfig { iterations: iters, ..TrainConfig::default() };
        let m = ClassifierSpec::Linear { kind: LinearKind::Svm, cfg }.train(&train, 0).unwrap();
        let r = evaluate(&m, &test).unwrap();
        let train_r = evaluate(&m, &train).unwrap();
        println!("T={iters}: test={:.4} train={:.4}", r.accuracy, train_r.accuracy);
    }
    let _ = train_linear(&train, LinearKind::Svm, &TrainConfig::default());
}

#[test]
#[ignore]
fn diag_confusion_detail() {
    let full = bench_features(Method::Cepstrum, 12, 50, 42);
    let (train, test) = stratified_split(&full, 0.8, 7).unwrap();
    for spec in [
        ClassifierSpec::Knn { k: 1 },
        ClassifierSpec::Linear { kind: LinearKind::Svm, cfg: TrainConfig::default() },
    ] {
        let m = spec.train(&train, 0).unwrap();
        let r = evaluate(&m, &test).unwrap();
        println!("== {} acc={:.4}", spec.tag(), r.accuracy);
        for (true_c, row) in r.confusion.iter().enumerate() {
            for (pred_c, &n) in row.iter().enumerate() {
                if n > 0 && true_c != pred_c {
                    println!("  {true_c} -> {pred_c}: {n}");
                }
            }
        }
    }
    // Lattice cells per class (reach into params via render determinism).
    let specs = gen_class_specs(12, 42).unwrap();
    for (i, s) in specs.iter().enumerate() {
        println!("class {i}: base={:?} grid={:?} seed={}", s.base_color, s.pill_grid, s.texture_seed);
    }
}

#[test]
#[ignore]
fn diag_confuser_bins() {
    use stripid_core::cepstrum::{bin_values, fft2d, log_magnitude};
    use stripid_core::imaging::split_planes;
    let specs = gen_class_specs(12, 42).unwrap();
    for &cls in &[2usize, 3, 5, 8, 9, 6] {
        // Average over 3 samples to suppress sample noise.
        let mut acc = vec![0.0; 128];
        for s in 0..3u64 {
            let img = render_sample(&specs[cls], &AugmentSpec::default(), 500 + s);
            let (r, g, b) = split_planes(&img);
            let lr = log_magnitude(&fft2d(&r).unwrap());
            let lg = log_magnitude(&fft2d(&g).unwrap());
            let lb = log_magnitude(&fft2d(&b).unwrap());
            let bins = bin_values(&lr, &lg, &lb, 128).unwrap();
            for (a, c) in acc.iter_mut().zip(bins.counts()) { *a += c / 3.0; }
        }
        let seg = |lo: usize, hi: usize| -> f64 { acc[lo..hi].iter().sum::<f64>() };
        println!("class {cls}: b0={:.4} b1-3={:.4} b3-6={:.4} b6-10={:.4} b10-16={:.4} b16-24={:.4} b24-40={:.4} b40+={:.5}",
            acc[0], seg(1,3), seg(3,6), seg(6,10), seg(10,16), seg(16,24), seg(24,40), seg(40,128));
    }
}

#[test]
#[ignore]
fn diag_variance_budget() {
    let specs = gen_class_specs(12, 42).unwrap();
    let cfg = CepstrumConfig::default();
    let feat = |spec: &stripid_core::synth::StripSpec, aug: &AugmentSpec, seed: u64| {
        cepstral_features(&render_sample(spec, aug, seed), &cfg).unwrap().values
    };
    let none = AugmentSpec::none();
    let spread = |vs: &[Vec<f64>]| {
        let dims = vs[0].len();
        let mut c = vec![0.0; dims];
        for v in vs { for (ci, vi) in c.iter_mut().zip(v) { *ci += vi; } }
        for ci in c.iter_mut() { *ci /= vs.len() as f64; }
        let mean_d = vs.iter().map(|v| stripid_core::classify::euclidean(v, &c).unwrap()).sum::<f64>() / vs.len() as f64;
        (c, mean_d)
    };

    // Source isolation on class 0: vary only one knob across 12 samples.
    let base = feat(&specs[0], &none, 1);
    let seeds: Vec<u64> = (0..12).collect();

    let tex_only: Vec<Vec<f64>> = seeds.iter().map(|&s| feat(&specs[0], &none, s)).collect();
    let (_, d_tex) = spread(&tex_only);

    let mut aug = AugmentSpec::none(); aug.brightness_jitter = 0.1;
    let bright: Vec<Vec<f64>> = seeds.iter().map(|&s| {
        let mut img = render_sample(&specs[0], &AugmentSpec::none(), 1);
        // apply brightness via full render with same texture seed path: use aug with fixed sample seed but varying... render couples rng; vary seed only for aug draws is not isolatable; approximate: render with aug, same texture realization can't be isolated. Use different seeds with aug-only-bright minus tex_only baseline.
        img = render_sample(&specs[0], &aug, s);
        cepstral_features(&img, &cfg).unwrap().values
    }).collect();
    let (_, d_bright_raw) = spread(&bright);

    let mut aug_n = AugmentSpec::none(); aug_n.noise_sigma = 4.0;
    let noise: Vec<Vec<f64>> = seeds.iter().map(|&s| feat(&specs[0], &aug_n, s)).collect();
    let (_, d_noise) = spread(&noise);

    let mut aug_s = AugmentSpec::none(); aug_s.scale_jitter = 0.1;
    let scale: Vec<Vec<f64>> = seeds.iter().map(|&s| feat(&specs[0], &aug_s, s)).collect();
    let (_, d_scale) = spread(&scale);

    let mut aug_h = AugmentSpec::none(); aug_h.hue_jitter = 5.0;
    let hue: Vec<Vec<f64>> = seeds.iter().map(|&s| feat(&specs[0], &aug_h, s)).collect();
    let (_, d_hue) = spread(&hue);

    let all: Vec<Vec<f64>> = seeds.iter().map(|&s| feat(&specs[0], &AugmentSpec::default(), s)).collect();
    let (_, d_all) = spread(&all);

    println!("class0 within by source: tex_only={d_tex:.5} +bright={d_bright_raw:.5} +noise={d_noise:.5} +scale={d_scale:.5} +hue={d_hue:.5} all={d_all:.5}");
    let _ = base;

    // Between-class centroid distances (no augmentation, 4 samples each).
    let mut cents = Vec::new();
    for spec in &specs {
        let vs: Vec<Vec<f64>> = (0..4).map(|s| feat(spec, &AugmentSpec::default(), 100 + s)).collect();
        cents.push(spread(&vs).0);
    }
    let mut dists: Vec<f64> = Vec::new();
    for i in 0..12 { for j in i+1..12 {
        dists.push(stripid_core::classify::euclidean(&cents[i], &cents[j]).unwrap());
    }}
    dists.sort_by(|a, b| a.partial_cmp(b).unwrap());
    println!("between: min={:.5} p10={:.5} median={:.5}", dists[0], dists[dists.len()/10], dists[dists.len()/2]);
}

#[test]
#[ignore]
fn diag_head_quality() {
    let full = bench_features(Method::Cepstrum, 12, 50, 42);
    let (train, test) = stratified_split(&full, 0.8, 7).unwrap();
    let m = ClassifierSpec::Linear { kind: LinearKind::Svm, cfg: TrainConfig::default() }
        .train(&train, 0).unwrap();
    let lm = match &m.data { stripid_core::classify::ModelData::Linear(l) => l, _ => unreachable!() };

    // Per-head binary test accuracy and score stats.
    for head in 0..12 {
        let mut tp = 0; let mut fp = 0; let mut tn = 0; let mut fneg = 0;
        let mut own_margin = Vec::new();
        for (fv, l) in &test.samples {
            let scores = lm.scores(&fv.values).unwrap();
            let s = scores[head];
            if *l == head { own_margin.push(s); if s > 0.0 { tp += 1 } else { fneg += 1 } }
            else if s > 0.0 { fp += 1 } else { tn += 1 }
        }
        own_margin.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let wnorm = lm.weights[head].iter().map(|v| v*v).sum::<f64>().sqrt();
        println!("head {head}: tp={tp} fn={fneg} fp={fp} tn={tn} |w|={wnorm:.2} own_score_range=({:.2},{:.2})",
            own_margin.first().unwrap(), own_margin.last().unwrap());
    }

    // Argmax failure anatomy for the worst true classes.
    for &cls in &[8usize, 10, 11, 7] {
        let mut lost_to = std::collections::HashMap::new();
        for (fv, l) in &test.samples {
            if *l != cls { continue; }
            let scores = lm.scores(&fv.values).unwrap();
            let mut order: Vec<usize> = (0..12).collect();
            order.sort_by(|&a, &b| scores[b].partial_cmp(&scores[a]).unwrap());
            if order[0] != cls {
                *lost_to.entry(order[0]).or_insert(0usize) += 1;
                let own = scores[cls]; let win = scores[order[0]];
                println!("  class {cls} lost to {} (own {:.3} vs win {:.3})", order[0], own, win);
            }
        }
        let _ = lost_to;
    }
}

#[test]
#[ignore]
fn diag_multi_seed() {
    for gen_seed in [42u64, 43, 44] {
        let full = bench_features(Method::Cepstrum, 12, 40, gen_seed);
        let (train, test) = stratified_split(&full, 0.8, 7).unwrap();
        print!("gen={gen_seed}:");
        for spec in [
            ClassifierSpec::Knn { k: 1 },
            ClassifierSpec::Linear { kind: LinearKind::Svm, cfg: TrainConfig::default() },
            ClassifierSpec::Linear { kind: LinearKind::Lr, cfg: TrainConfig::default() },
        ] {
            let model = spec.train(&train, 0).unwrap();
            let report = evaluate(&model, &test).unwrap();
            print!("  {}={:.4}", spec.tag(), report.accuracy);
        }
        println!();
    }
}

#[test]
#[ignore]
fn diag_cgpf_ablation() {
    let full = bench_features(Method::Cgpf, 12, 40, 42);
    let (train, test) = stratified_split(&full, 0.8, 7).unwrap();
    for (tag, lo, hi) in [("color6", 0usize, 6usize), ("shape25", 6, 31), ("all31", 0, 31)] {
        let strip = |d: &Dataset| {
            Dataset::new(
                d.samples.iter().map(|(fv, l)| {
                    (stripid_core::classify::FeatureVector {
                        method: fv.method,
                        values: fv.values[lo..hi].to_vec(),
                    }, *l)
                }).collect(),
                d.labels.clone(),
            ).unwrap()
        };
        let (tr, te) = (strip(&train), strip(&test));
        let m = ClassifierSpec::Knn { k: 1 }.train(&tr, 0).unwrap();
        let r = evaluate(&m, &te).unwrap();
        println!("cgpf {tag}: knn={:.4}", r.accuracy);
    }
}

#[test]
#[ignore]
fn diag_color_peaks_stability() {
    use stripid_core::cgpf::color_peaks;
    let specs = gen_class_specs(12, 42).unwrap();
    for cls in [0usize, 1] {
        for s in 0..5u64 {
            let img = render_sample(&specs[cls], &AugmentSpec::default(), 700 + s);
            let p = color_peaks(&img);
            println!("class {cls} s={s}: pos=({:.3},{:.3},{:.3}) h=({:.3},{:.3},{:.3}) base={:?}",
                p.r.position, p.g.position, p.b.position, p.r.height, p.g.height, p.b.height, specs[cls].base_color);
        }
    }
}

#[test]
#[ignore]
fn diag_dead_heads() {
    for gen_seed in [42u64, 43, 44] {
        let full = bench_features(Method::Cepstrum, 12, 40, gen_seed);
        let (train, test) = stratified_split(&full, 0.8, 7).unwrap();
        let m = ClassifierSpec::Linear { kind: LinearKind::Svm, cfg: TrainConfig::default() }
            .train(&train, 0).unwrap();
        let lm = match &m.data { stripid_core::classify::ModelData::Linear(l) => l, _ => unreachable!() };
        let mut dead = Vec::new();
        for head in 0..12 {
            let fires = test.samples.iter().any(|(fv, _)| lm.scores(&fv.values).unwrap()[head] > 0.0);
            if !fires { dead.push(head); }
        }
        // Standardized class mean norms.
        let s = stripid_core::classify::Standardizer::fit(&train).unwrap();
        let mut norms = Vec::new();
        for c in 0..12 {
            let rows: Vec<Vec<f64>> = train.samples.iter().filter(|(_, l)| *l == c)
                .map(|(fv, _)| s.apply(&fv.values)).collect();
            let dims = rows[0].len();
            let mut mu = vec![0.0; dims];
            for r in &rows { for (m, v) in mu.iter_mut().zip(r) { *m += v; } }
            for m in mu.iter_mut() { *m /= rows.len() as f64; }
            norms.push(mu.iter().map(|v| v * v).sum::<f64>().sqrt());
        }
        println!("gen={gen_seed} dead={dead:?}");
        println!("  mu norms: {:?}", norms.iter().map(|n| format!("{:.2}", n)).collect::<Vec<_>>());
    }
}

#[test]
#[ignore]
fn diag_optimizer_ceiling() {
    let full = bench_features(Method::Cepstrum, 12, 40, 42);
    let (train, test) = stratified_split(&full, 0.8, 7).unwrap();
    for (tag, kind, iters, eta) in [
        ("lr conv", LinearKind::Lr, 20000usize, 1.0),
        ("svm conv", LinearKind::Svm, 20000, 0.1),
        ("svm e=.3", LinearKind::Svm, 500, 0.3),
        ("svm e=.03", LinearKind::Svm, 500, 0.03),
        ("svm e=1", LinearKind::Svm, 500, 1.0),
    ] {
        let cfg = TrainConfig { iterations: iters, learning_rate: eta, ..TrainConfig::default() };
        let m = ClassifierSpec::Linear { kind, cfg }.train(&train, 0).unwrap();
        let r = evaluate(&m, &test).unwrap();
        println!("{tag}: {:.4}", r.accuracy);
    }
}
