//! Experiment harness: stratified splitting, accuracy and confusion
//! reporting, the data-size sweep, and the near-duplicate separation
//! statistic.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::classify::{
    train_linear, Dataset, FeatureMeta, KnnModel, LinearKind, Method, Model, ModelData,
    TrainConfig,
};
use crate::error::{Error, Result};
use crate::seeds;

/// Accuracy, per-class accuracy and confusion counts for one evaluation.
/// Confusion rows are true labels, columns predicted.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvalReport {
    pub classifier: String,
    pub method: Method,
    pub seed: u64,
    pub train_size: usize,
    pub test_size: usize,
    pub accuracy: f64,
    pub per_class_accuracy: Vec<f64>,
    pub labels: Vec<String>,
    pub confusion: Vec<Vec<usize>>,
}

/// Which classifier a harness cell trains.
#[derive(Debug, Clone, PartialEq)]
pub enum ClassifierSpec {
    Knn { k: usize },
    Linear { kind: LinearKind, cfg: TrainConfig },
}

impl ClassifierSpec {
    pub fn tag(&self) -> &'static str {
        match self {
            ClassifierSpec::Knn { .. } => "knn",
            ClassifierSpec::Linear { kind, .. } => match kind {
                LinearKind::Svm => "svm",
                LinearKind::Lr => "lr",
            },
        }
    }

    /// Train this classifier on the dataset, wrapping it with metadata.
    pub fn train(&self, train: &Dataset, bins: usize) -> Result<Model> {
        let method = train.method().ok_or(Error::EmptyDataset)?;
        let meta = FeatureMeta {
            method,
            dims: train.dims(),
            bins,
        };
        let data = match self {
            ClassifierSpec::Knn { k } => ModelData::Knn(KnnModel::new(*k, train.clone())?),
            ClassifierSpec::Linear { kind, cfg } => {
                ModelData::Linear(train_linear(train, *kind, cfg)?)
            }
        };
        Ok(Model { meta, data })
    }
}

/// Accuracy per classifier at one subsample size.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepPoint {
    pub per_class: usize,
    pub total: usize,
    /// (classifier tag, accuracy) pairs in the requested order.
    pub accuracies: Vec<(String, f64)>,
}

/// Accuracy-vs-data-size curve; sizes strictly increasing.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepCurve {
    pub points: Vec<SweepPoint>,
}

/// Deterministic per-class shuffle and split: ⌈fraction·n_c⌉ samples to
/// train, the rest to test, with every class keeping at least one test
/// sample. The two halves partition the input exactly.
pub fn stratified_split(d: &Dataset, train_fraction: f64, seed: u64) -> Result<(Dataset, Dataset)> {
    if !(train_fraction > 0.0 && train_fraction < 1.0) {
        return Err(Error::InvalidFraction(train_fraction));
    }
    let counts = d.class_counts();
    for (idx, &count) in counts.iter().enumerate() {
        if count < 2 {
            return Err(Error::ClassTooSmall {
                label: d.labels[idx].clone(),
                count,
                need: 2,
            });
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut train_samples = Vec::new();
    let mut test_samples = Vec::new();
    for class in 0..d.labels.len() {
        let mut indices: Vec<usize> = d
            .samples
            .iter()
            .enumerate()
            .filter(|(_, (_, l))| *l == class)
            .map(|(i, _)| i)
            .collect();
        indices.shuffle(&mut rng);
        let n = indices.len();
        let mut n_train = (train_fraction * n as f64).ceil() as usize;
        if n_train >= n {
            n_train = n - 1;
        }
        for (pos, &i) in indices.iter().enumerate() {
            let sample = d.samples[i].clone();
            if pos < n_train {
                train_samples.push(sample);
            } else {
                test_samples.push(sample);
            }
        }
    }
    Ok((
        Dataset::new(train_samples, d.labels.clone())?,
        Dataset::new(test_samples, d.labels.clone())?,
    ))
}

/// Predict every test sample and assemble the report. The report's seed
/// field is left 0 for the caller to fill.
pub fn evaluate(model: &Model, test: &Dataset) -> Result<EvalReport> {
    if test.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let n_classes = test.labels.len();
    let mut confusion = vec![vec![0usize; n_classes]; n_classes];
    for (fv, truth) in &test.samples {
        let (predicted, _) = model.predict(fv)?;
        confusion[*truth][predicted] += 1;
    }
    let trace: usize = (0..n_classes).map(|c| confusion[c][c]).sum();
    let accuracy = trace as f64 / test.len() as f64;
    let per_class_accuracy = (0..n_classes)
        .map(|c| {
            let row: usize = confusion[c].iter().sum();
            if row == 0 {
                0.0
            } else {
                confusion[c][c] as f64 / row as f64
            }
        })
        .collect();
    let train_size = match &model.data {
        ModelData::Knn(m) => m.train_data().len(),
        ModelData::Linear(_) => 0,
    };
    Ok(EvalReport {
        classifier: model.kind_tag().to_string(),
        method: model.meta.method,
        seed: 0,
        train_size,
        test_size: test.len(),
        accuracy,
        per_class_accuracy,
        labels: test.labels.clone(),
        confusion,
    })
}

/// For each size s: subsample s per class (seeded), split 80/20, train
/// every requested classifier, record accuracy. Sizes must be strictly
/// increasing and feasible for the smallest class.
pub fn size_sweep(
    full: &Dataset,
    sizes: &[usize],
    classifiers: &[ClassifierSpec],
    seed: u64,
) -> Result<SweepCurve> {
    let counts = full.class_counts();
    let smallest = counts.iter().copied().min().unwrap_or(0);
    for window in sizes.windows(2) {
        if window[1] <= window[0] {
            return Err(Error::InvalidConfig(format!(
                "sizes must be strictly increasing, got {} then {}",
                window[0], window[1]
            )));
        }
    }
    for &s in sizes {
        if s > smallest {
            return Err(Error::SizeTooLarge {
                size: s,
                available: smallest,
            });
        }
        if s < 2 {
            return Err(Error::ClassTooSmall {
                label: "(subsample)".into(),
                count: s,
                need: 2,
            });
        }
    }

    let n_classes = full.labels.len();
    let mut points = Vec::with_capacity(sizes.len());
    for (size_idx, &s) in sizes.iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(seeds::mix(seed, size_idx as u64, s as u64));
        let mut samples = Vec::with_capacity(s * n_classes);
        for class in 0..n_classes {
            let mut indices: Vec<usize> = full
                .samples
                .iter()
                .enumerate()
                .filter(|(_, (_, l))| *l == class)
                .map(|(i, _)| i)
                .collect();
            indices.shuffle(&mut rng);
            for &i in indices.iter().take(s) {
                samples.push(full.samples[i].clone());
            }
        }
        let subset = Dataset::new(samples, full.labels.clone())?;
        let split_seed = seeds::mix(seed, 0x5011 + size_idx as u64, s as u64);
        let (train, test) = stratified_split(&subset, 0.8, split_seed)?;

        let mut accuracies = Vec::with_capacity(classifiers.len());
        for spec in classifiers {
            let model = spec.train(&train, 0)?;
            let report = evaluate(&model, &test)?;
            accuracies.push((spec.tag().to_string(), report.accuracy));
        }
        points.push(SweepPoint {
            per_class: s,
            total: s * n_classes,
            accuracies,
        });
    }
    Ok(SweepCurve { points })
}

/// Between-class centroid distance over the larger of the two mean
/// within-class distances-to-centroid. 0 when the centroids coincide;
/// capped at 1e9 when the spread is zero.
pub fn separation_ratio(a: &[Vec<f64>], b: &[Vec<f64>]) -> Result<f64> {
    if a.len() < 2 || b.len() < 2 {
        return Err(Error::TooFewSamples {
            need: 2,
            got: a.len().min(b.len()),
        });
    }
    let dims = a[0].len();
    if a.iter().chain(b).any(|v| v.len() != dims) {
        return Err(Error::DimensionMismatch {
            expected: dims,
            got: a.iter().chain(b).find(|v| v.len() != dims).unwrap().len(),
        });
    }
    let centroid = |set: &[Vec<f64>]| -> Vec<f64> {
        let mut c = vec![0.0; dims];
        for v in set {
            for (ci, vi) in c.iter_mut().zip(v) {
                *ci += vi;
            }
        }
        for ci in &mut c {
            *ci /= set.len() as f64;
        }
        c
    };
    let spread = |set: &[Vec<f64>], c: &[f64]| -> f64 {
        set.iter()
            .map(|v| crate::classify::euclidean(v, c).expect("dims checked"))
            .sum::<f64>()
            / set.len() as f64
    };
    let ca = centroid(a);
    let cb = centroid(b);
    let numerator = crate::classify::euclidean(&ca, &cb)?;
    if numerator == 0.0 {
        return Ok(0.0);
    }
    let denominator = spread(a, &ca).max(spread(b, &cb));
    const CAP: f64 = 1e9;
    if denominator == 0.0 {
        return Ok(CAP);
    }
    Ok((numerator / denominator).min(CAP))
}
