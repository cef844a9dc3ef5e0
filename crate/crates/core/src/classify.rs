//! Multiclass classifiers over extracted feature vectors: KNN with
//! Euclidean voting, one-vs-rest linear SVM and logistic regression
//! trained by full-batch gradient descent, plus feature standardization
//! and binary model serialization.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};

const MODEL_MAGIC: &[u8; 4] = b"SIDM";
const MODEL_VERSION: u8 = 1;

/// Which extractor produced a feature vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Cepstrum,
    Cgpf,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Cepstrum => "cepstrum",
            Method::Cgpf => "cgpf",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "cepstrum" => Ok(Method::Cepstrum),
            "cgpf" => Ok(Method::Cgpf),
            other => Err(Error::InvalidConfig(format!(
                "unknown feature method '{other}'"
            ))),
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Fixed-length real feature vector tagged with its extraction method.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureVector {
    pub method: Method,
    pub values: Vec<f64>,
}

/// Labeled feature vectors plus the label-name table.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub samples: Vec<(FeatureVector, usize)>,
    pub labels: Vec<String>,
}

impl Dataset {
    pub fn new(samples: Vec<(FeatureVector, usize)>, labels: Vec<String>) -> Result<Self> {
        if let Some((fv, idx)) = samples.iter().find(|(_, idx)| *idx >= labels.len()) {
            return Err(Error::InvalidConfig(format!(
                "label index {idx} out of range for {} labels (dims {})",
                labels.len(),
                fv.values.len()
            )));
        }
        if let Some(first) = samples.first() {
            let method = first.0.method;
            let dims = first.0.values.len();
            for (fv, _) in &samples {
                if fv.method != method {
                    return Err(Error::MethodMismatch {
                        expected: method.as_str().into(),
                        got: fv.method.as_str().into(),
                    });
                }
                if fv.values.len() != dims {
                    return Err(Error::DimensionMismatch {
                        expected: dims,
                        got: fv.values.len(),
                    });
                }
            }
        }
        Ok(Self { samples, labels })
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn dims(&self) -> usize {
        self.samples.first().map_or(0, |(fv, _)| fv.values.len())
    }

    pub fn method(&self) -> Option<Method> {
        self.samples.first().map(|(fv, _)| fv.method)
    }

    /// Per-class sample counts, indexed by label.
    pub fn class_counts(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.labels.len()];
        for (_, idx) in &self.samples {
            counts[*idx] += 1;
        }
        counts
    }

    /// Number of classes that actually appear in the samples.
    pub fn present_classes(&self) -> usize {
        self.class_counts().iter().filter(|&&c| c > 0).count()
    }
}

/// Standard Euclidean metric √(Σ (xᵢ−yᵢ)²).
pub fn euclidean(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            expected: x.len(),
            got: y.len(),
        });
    }
    Ok(x.iter()
        .zip(y)
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt())
}

/// Instance store for k-nearest-neighbor voting.
#[derive(Debug, Clone, PartialEq)]
pub struct KnnModel {
    k: usize,
    train: Dataset,
}

impl KnnModel {
    pub fn new(k: usize, train: Dataset) -> Result<Self> {
        if train.is_empty() {
            return Err(Error::EmptyDataset);
        }
        if k == 0 || k > train.len() {
            return Err(Error::InvalidK { k, n: train.len() });
        }
        Ok(Self { k, train })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn train_data(&self) -> &Dataset {
        &self.train
    }

    pub fn labels(&self) -> &[String] {
        &self.train.labels
    }

    fn check_query(&self, x: &FeatureVector) -> Result<()> {
        let method = self.train.method().expect("non-empty store");
        if x.method != method {
            return Err(Error::MethodMismatch {
                expected: method.as_str().into(),
                got: x.method.as_str().into(),
            });
        }
        if x.values.len() != self.train.dims() {
            return Err(Error::DimensionMismatch {
                expected: self.train.dims(),
                got: x.values.len(),
            });
        }
        Ok(())
    }

    /// Majority vote among the k nearest stored samples. Vote ties break
    /// by the smallest summed distance among the tied labels, then by the
    /// lowest label index; distance ties in neighbor selection keep
    /// stored order. Returns the winning label and the k neighbor
    /// distances in ascending order.
    pub fn predict(&self, x: &FeatureVector) -> Result<(usize, Vec<f64>)> {
        let tally = self.vote(x)?;
        let winner = Self::winning_label(&tally);
        let distances = self.neighbor_distances(x);
        Ok((winner, distances))
    }

    /// All labels ordered best-first by (votes desc, summed neighbor
    /// distance asc, label index asc), with the vote count as the score.
    pub fn rank_labels(&self, x: &FeatureVector) -> Result<Vec<(usize, f64)>> {
        let tally = self.vote(x)?;
        let mut order: Vec<usize> = (0..self.train.labels.len()).collect();
        order.sort_by(|&a, &b| {
            tally[b]
                .0
                .cmp(&tally[a].0)
                .then(
                    tally[a]
                        .1
                        .partial_cmp(&tally[b].1)
                        .expect("finite distances"),
                )
                .then(a.cmp(&b))
        });
        Ok(order.into_iter().map(|l| (l, tally[l].0 as f64)).collect())
    }

    /// Per-label (votes, summed distance) over the k nearest neighbors.
    fn vote(&self, x: &FeatureVector) -> Result<Vec<(usize, f64)>> {
        self.check_query(x)?;
        let neighbors = self.nearest(x);
        let mut tally = vec![(0usize, f64::INFINITY); self.train.labels.len()];
        for &(dist, idx) in neighbors.iter().take(self.k) {
            let label = self.train.samples[idx].1;
            if tally[label].0 == 0 {
                tally[label].1 = 0.0;
            }
            tally[label].0 += 1;
            tally[label].1 += dist;
        }
        Ok(tally)
    }

    fn winning_label(tally: &[(usize, f64)]) -> usize {
        let mut best = 0usize;
        for label in 1..tally.len() {
            let (bv, bd) = tally[best];
            let (lv, ld) = tally[label];
            if lv > bv || (lv == bv && lv > 0 && ld < bd) {
                best = label;
            }
        }
        best
    }

    fn nearest(&self, x: &FeatureVector) -> Vec<(f64, usize)> {
        let mut dists: Vec<(f64, usize)> = self
            .train
            .samples
            .iter()
            .enumerate()
            .map(|(i, (fv, _))| {
                (
                    euclidean(&x.values, &fv.values).expect("dims checked"),
                    i,
                )
            })
            .collect();
        // Stable sort keeps stored order on exact distance ties.
        dists.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite distances"));
        dists
    }

    fn neighbor_distances(&self, x: &FeatureVector) -> Vec<f64> {
        self.nearest(x)
            .into_iter()
            .take(self.k)
            .map(|(d, _)| d)
            .collect()
    }
}

/// Numerically stable logistic function; sigmoid(0) is exactly 0.5.
pub fn sigmoid(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

/// ln(1 + e^t) without overflow.
fn softplus(t: f64) -> f64 {
    if t > 0.0 {
        t + (-t).exp().ln_1p()
    } else {
        t.exp().ln_1p()
    }
}

/// Hinge cost J = (1/m)·Σ max(0, 1 − yᵢ(w·xᵢ − b)) + λ‖w‖² and its exact
/// subgradients; samples exactly on the hinge kink contribute zero.
/// Labels must be ±1.
pub fn svm_cost_grad(
    w: &[f64],
    b: f64,
    x: &[Vec<f64>],
    y: &[f64],
    lambda: f64,
) -> Result<(f64, Vec<f64>, f64)> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch {
            expected: x.len(),
            got: y.len(),
        });
    }
    if x.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let m = x.len() as f64;
    let mut cost = 0.0;
    let mut grad_w = vec![0.0; w.len()];
    let mut grad_b = 0.0;
    for (xi, &yi) in x.iter().zip(y) {
        if xi.len() != w.len() {
            return Err(Error::DimensionMismatch {
                expected: w.len(),
                got: xi.len(),
            });
        }
        let margin = yi * (dot(w, xi) - b);
        if margin < 1.0 {
            cost += 1.0 - margin;
            for (g, &v) in grad_w.iter_mut().zip(xi) {
                *g -= yi * v;
            }
            grad_b += yi;
        }
    }
    cost /= m;
    grad_b /= m;
    for (g, &wi) in grad_w.iter_mut().zip(w) {
        *g = *g / m + 2.0 * lambda * wi;
    }
    cost += lambda * w.iter().map(|v| v * v).sum::<f64>();
    Ok((cost, grad_w, grad_b))
}

/// Cross-entropy cost J = −(1/m)·Σ [yᵢ ln h + (1−yᵢ) ln(1−h)] with
/// h = sigmoid(w·x), computed in log-sum-exp form, and its gradient
/// (1/m)·Xᵀ(h−y). The sample matrix carries the appended constant-1
/// feature; labels must be 0/1.
pub fn lr_cost_grad(w: &[f64], x: &[Vec<f64>], y: &[f64]) -> Result<(f64, Vec<f64>)> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch {
            expected: x.len(),
            got: y.len(),
        });
    }
    if x.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let m = x.len() as f64;
    let mut cost = 0.0;
    let mut grad = vec![0.0; w.len()];
    for (xi, &yi) in x.iter().zip(y) {
        if xi.len() != w.len() {
            return Err(Error::DimensionMismatch {
                expected: w.len(),
                got: xi.len(),
            });
        }
        let z = dot(w, xi);
        // y·(−ln h) + (1−y)·(−ln(1−h)) = y·softplus(−z) + (1−y)·softplus(z)
        cost += yi * softplus(-z) + (1.0 - yi) * softplus(z);
        let residual = sigmoid(z) - yi;
        for (g, &v) in grad.iter_mut().zip(xi) {
            *g += residual * v;
        }
    }
    cost /= m;
    for g in &mut grad {
        *g /= m;
    }
    Ok((cost, grad))
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Per-dimension (mean, scale) pairs fitted on training data.
#[derive(Debug, Clone, PartialEq)]
pub struct Standardizer {
    params: Vec<(f64, f64)>,
}

impl Standardizer {
    /// Population mean and standard deviation per dimension;
    /// zero-variance dimensions get scale 1 (centering only).
    pub fn fit(train: &Dataset) -> Result<Self> {
        if train.is_empty() {
            return Err(Error::EmptyDataset);
        }
        let dims = train.dims();
        let n = train.len() as f64;
        let mut params = Vec::with_capacity(dims);
        for d in 0..dims {
            let mean = train.samples.iter().map(|(fv, _)| fv.values[d]).sum::<f64>() / n;
            let var = train
                .samples
                .iter()
                .map(|(fv, _)| (fv.values[d] - mean).powi(2))
                .sum::<f64>()
                / n;
            let scale = if var > 0.0 { var.sqrt() } else { 1.0 };
            params.push((mean, scale));
        }
        Ok(Self { params })
    }

    pub fn from_params(params: Vec<(f64, f64)>) -> Self {
        Self { params }
    }

    pub fn params(&self) -> &[(f64, f64)] {
        &self.params
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        x.iter()
            .zip(&self.params)
            .map(|(v, (mean, scale))| (v - mean) / scale)
            .collect()
    }
}

/// Linear model family trained one-vs-rest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LinearKind {
    Svm,
    Lr,
}

/// Gradient-descent hyperparameters.
#[derive(Debug, Clone, PartialEq)]
pub struct TrainConfig {
    pub learning_rate: f64,
    pub iterations: usize,
    pub lambda: f64,
    pub seed: u64,
}

impl Default for TrainConfig {
    fn default() -> Self {
        Self {
            learning_rate: 0.1,
            iterations: 500,
            lambda: 1e-3,
            seed: 0,
        }
    }
}

/// One-vs-rest linear classifier: one weight row and bias per class,
/// plus the standardizer fitted on the training features.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearModel {
    pub kind: LinearKind,
    pub weights: Vec<Vec<f64>>,
    pub bias: Vec<f64>,
    pub lambda: f64,
    pub standardizer: Standardizer,
    pub labels: Vec<String>,
}

impl LinearModel {
    pub fn dims(&self) -> usize {
        self.weights.first().map_or(0, Vec::len)
    }

    /// Per-class scores on a standardized input: raw margins for SVM,
    /// sigmoid probabilities for LR.
    pub fn scores(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.dims() {
            return Err(Error::DimensionMismatch {
                expected: self.dims(),
                got: x.len(),
            });
        }
        let std = self.standardizer.apply(x);
        Ok(self
            .weights
            .iter()
            .zip(&self.bias)
            .map(|(w, &b)| match self.kind {
                LinearKind::Svm => dot(w, &std) - b,
                LinearKind::Lr => sigmoid(dot(w, &std) + b),
            })
            .collect())
    }

    /// Argmax class (ties to the lowest label index) and all scores.
    pub fn predict(&self, x: &[f64]) -> Result<(usize, Vec<f64>)> {
        let scores = self.scores(x)?;
        let mut best = 0usize;
        for (i, &s) in scores.iter().enumerate() {
            if s > scores[best] {
                best = i;
            }
        }
        Ok((best, scores))
    }
}

/// Train a one-vs-rest linear model by full-batch gradient descent with a
/// fixed step from zero initialization. Deterministic for a given
/// (dataset, kind, config).
pub fn train_linear(train: &Dataset, kind: LinearKind, cfg: &TrainConfig) -> Result<LinearModel> {
    if train.is_empty() {
        return Err(Error::EmptyDataset);
    }
    if train.len() < 2 || train.present_classes() < 2 {
        return Err(Error::SingleClass);
    }
    if cfg.learning_rate <= 0.0 || cfg.iterations == 0 || cfg.lambda < 0.0 {
        return Err(Error::InvalidConfig(
            "learning rate must be positive, iterations >= 1, lambda >= 0".into(),
        ));
    }

    let standardizer = Standardizer::fit(train)?;
    let dims = train.dims();
    let n_classes = train.labels.len();
    let std_rows: Vec<Vec<f64>> = train
        .samples
        .iter()
        .map(|(fv, _)| standardizer.apply(&fv.values))
        .collect();

    let mut weights = Vec::with_capacity(n_classes);
    let mut bias = Vec::with_capacity(n_classes);
    match kind {
        LinearKind::Svm => {
            for class in 0..n_classes {
                let y: Vec<f64> = train
                    .samples
                    .iter()
                    .map(|(_, l)| if *l == class { 1.0 } else { -1.0 })
                    .collect();
                let mut w = vec![0.0; dims];
                let mut b = 0.0;
                for _ in 0..cfg.iterations {
                    let (_, gw, gb) = svm_cost_grad(&w, b, &std_rows, &y, cfg.lambda)?;
                    for (wi, gi) in w.iter_mut().zip(&gw) {
                        *wi -= cfg.learning_rate * gi;
                    }
                    b -= cfg.learning_rate * gb;
                }
                weights.push(w);
                bias.push(b);
            }
        }
        LinearKind::Lr => {
            let aug_rows: Vec<Vec<f64>> = std_rows
                .iter()
                .map(|r| {
                    let mut v = r.clone();
                    v.push(1.0);
                    v
                })
                .collect();
            for class in 0..n_classes {
                let y: Vec<f64> = train
                    .samples
                    .iter()
                    .map(|(_, l)| if *l == class { 1.0 } else { 0.0 })
                    .collect();
                let mut w = vec![0.0; dims + 1];
                for _ in 0..cfg.iterations {
                    let (_, g) = lr_cost_grad(&w, &aug_rows, &y)?;
                    for (wi, gi) in w.iter_mut().zip(&g) {
                        *wi -= cfg.learning_rate * gi;
                    }
                }
                bias.push(w.pop().expect("intercept weight"));
                weights.push(w);
            }
        }
    }

    Ok(LinearModel {
        kind,
        weights,
        bias,
        lambda: cfg.lambda,
        standardizer,
        labels: train.labels.clone(),
    })
}

/// Extraction metadata a model carries so prediction can rerun the
/// matching extractor. `bins` is 0 for methods without a bin count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FeatureMeta {
    pub method: Method,
    pub dims: usize,
    pub bins: usize,
}

/// A trained classifier plus the feature-space metadata it expects.
#[derive(Debug, Clone, PartialEq)]
pub struct Model {
    pub meta: FeatureMeta,
    pub data: ModelData,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ModelData {
    Knn(KnnModel),
    Linear(LinearModel),
}

impl Model {
    pub fn labels(&self) -> &[String] {
        match &self.data {
            ModelData::Knn(m) => m.labels(),
            ModelData::Linear(m) => &m.labels,
        }
    }

    /// Short tag used in reports and file names.
    pub fn kind_tag(&self) -> &'static str {
        match &self.data {
            ModelData::Knn(_) => "knn",
            ModelData::Linear(m) => match m.kind {
                LinearKind::Svm => "svm",
                LinearKind::Lr => "lr",
            },
        }
    }

    fn check_query(&self, x: &FeatureVector) -> Result<()> {
        if x.method != self.meta.method {
            return Err(Error::MethodMismatch {
                expected: self.meta.method.as_str().into(),
                got: x.method.as_str().into(),
            });
        }
        if x.values.len() != self.meta.dims {
            return Err(Error::DimensionMismatch {
                expected: self.meta.dims,
                got: x.values.len(),
            });
        }
        Ok(())
    }

    pub fn predict(&self, x: &FeatureVector) -> Result<(usize, Vec<f64>)> {
        self.check_query(x)?;
        match &self.data {
            ModelData::Knn(m) => m.predict(x),
            ModelData::Linear(m) => m.predict(&x.values),
        }
    }

    /// All labels with scores, best first.
    pub fn rank_labels(&self, x: &FeatureVector) -> Result<Vec<(usize, f64)>> {
        self.check_query(x)?;
        match &self.data {
            ModelData::Knn(m) => m.rank_labels(x),
            ModelData::Linear(m) => {
                let scores = m.scores(&x.values)?;
                let mut order: Vec<usize> = (0..scores.len()).collect();
                order.sort_by(|&a, &b| {
                    scores[b]
                        .partial_cmp(&scores[a])
                        .expect("finite scores")
                        .then(a.cmp(&b))
                });
                Ok(order.into_iter().map(|l| (l, scores[l])).collect())
            }
        }
    }

    /// Serialize to the binary model format (magic "SIDM", version byte,
    /// tags, label table, little-endian 64-bit floats).
    pub fn save(&self, path: &Path) -> Result<()> {
        let file = File::create(path)?;
        let mut w = BufWriter::new(file);
        w.write_all(MODEL_MAGIC)?;
        w.write_all(&[MODEL_VERSION])?;
        w.write_all(&[match self.meta.method {
            Method::Cepstrum => 0u8,
            Method::Cgpf => 1u8,
        }])?;
        write_u32(&mut w, self.meta.dims as u32)?;
        write_u32(&mut w, self.meta.bins as u32)?;

        let labels = self.labels().to_vec();
        match &self.data {
            ModelData::Knn(m) => {
                w.write_all(&[0u8])?;
                write_labels(&mut w, &labels)?;
                write_u32(&mut w, m.k() as u32)?;
                write_u32(&mut w, m.train_data().len() as u32)?;
                for (fv, label) in &m.train_data().samples {
                    write_u32(&mut w, *label as u32)?;
                    for &v in &fv.values {
                        w.write_all(&v.to_le_bytes())?;
                    }
                }
            }
            ModelData::Linear(m) => {
                w.write_all(&[match m.kind {
                    LinearKind::Svm => 1u8,
                    LinearKind::Lr => 2u8,
                }])?;
                write_labels(&mut w, &labels)?;
                w.write_all(&m.lambda.to_le_bytes())?;
                for row in &m.weights {
                    for &v in row {
                        w.write_all(&v.to_le_bytes())?;
                    }
                }
                for &v in &m.bias {
                    w.write_all(&v.to_le_bytes())?;
                }
                for &(mean, scale) in m.standardizer.params() {
                    w.write_all(&mean.to_le_bytes())?;
                    w.write_all(&scale.to_le_bytes())?;
                }
            }
        }
        w.flush()?;
        Ok(())
    }

    /// Load a model written by [`Model::save`]. Round-trips bit-exactly.
    pub fn load(path: &Path) -> Result<Model> {
        let file = File::open(path)?;
        let mut r = BufReader::new(file);
        let mut magic = [0u8; 4];
        read_exact(&mut r, &mut magic)?;
        if &magic != MODEL_MAGIC {
            return Err(Error::CorruptModel("bad magic bytes".into()));
        }
        let version = read_u8(&mut r)?;
        if version != MODEL_VERSION {
            return Err(Error::VersionMismatch {
                found: version,
                expected: MODEL_VERSION,
            });
        }
        let method = match read_u8(&mut r)? {
            0 => Method::Cepstrum,
            1 => Method::Cgpf,
            t => return Err(Error::CorruptModel(format!("unknown method tag {t}"))),
        };
        let dims = read_u32(&mut r)? as usize;
        let bins = read_u32(&mut r)? as usize;
        let kind_tag = read_u8(&mut r)?;
        let labels = read_labels(&mut r)?;
        let meta = FeatureMeta { method, dims, bins };

        let data = match kind_tag {
            0 => {
                let k = read_u32(&mut r)? as usize;
                let n = read_u32(&mut r)? as usize;
                let mut samples = Vec::with_capacity(n);
                for _ in 0..n {
                    let label = read_u32(&mut r)? as usize;
                    if label >= labels.len() {
                        return Err(Error::CorruptModel(format!(
                            "label index {label} out of range"
                        )));
                    }
                    let mut values = Vec::with_capacity(dims);
                    for _ in 0..dims {
                        values.push(read_f64(&mut r)?);
                    }
                    samples.push((FeatureVector { method, values }, label));
                }
                let train = Dataset::new(samples, labels)
                    .map_err(|e| Error::CorruptModel(e.to_string()))?;
                let knn =
                    KnnModel::new(k, train).map_err(|e| Error::CorruptModel(e.to_string()))?;
                ModelData::Knn(knn)
            }
            1 | 2 => {
                let kind = if kind_tag == 1 {
                    LinearKind::Svm
                } else {
                    LinearKind::Lr
                };
                let lambda = read_f64(&mut r)?;
                let mut weights = Vec::with_capacity(labels.len());
                for _ in 0..labels.len() {
                    let mut row = Vec::with_capacity(dims);
                    for _ in 0..dims {
                        row.push(read_f64(&mut r)?);
                    }
                    weights.push(row);
                }
                let mut bias = Vec::with_capacity(labels.len());
                for _ in 0..labels.len() {
                    bias.push(read_f64(&mut r)?);
                }
                let mut params = Vec::with_capacity(dims);
                for _ in 0..dims {
                    let mean = read_f64(&mut r)?;
                    let scale = read_f64(&mut r)?;
                    params.push((mean, scale));
                }
                ModelData::Linear(LinearModel {
                    kind,
                    weights,
                    bias,
                    lambda,
                    standardizer: Standardizer::from_params(params),
                    labels,
                })
            }
            t => return Err(Error::CorruptModel(format!("unknown model kind tag {t}"))),
        };
        Ok(Model { meta, data })
    }
}

fn write_u32(w: &mut impl Write, v: u32) -> Result<()> {
    w.write_all(&v.to_le_bytes())?;
    Ok(())
}

fn write_labels(w: &mut impl Write, labels: &[String]) -> Result<()> {
    write_u32(w, labels.len() as u32)?;
    for label in labels {
        let bytes = label.as_bytes();
        w.write_all(&(bytes.len() as u16).to_le_bytes())?;
        w.write_all(bytes)?;
    }
    Ok(())
}

fn read_exact(r: &mut impl Read, buf: &mut [u8]) -> Result<()> {
    r.read_exact(buf).map_err(|e| {
        if e.kind() == std::io::ErrorKind::UnexpectedEof {
            Error::CorruptModel("truncated file".into())
        } else {
            Error::Io(e)
        }
    })
}

fn read_u8(r: &mut impl Read) -> Result<u8> {
    let mut buf = [0u8; 1];
    read_exact(r, &mut buf)?;
    Ok(buf[0])
}

fn read_u32(r: &mut impl Read) -> Result<u32> {
    let mut buf = [0u8; 4];
    read_exact(r, &mut buf)?;
    Ok(u32::from_le_bytes(buf))
}

fn read_f64(r: &mut impl Read) -> Result<f64> {
    let mut buf = [0u8; 8];
    read_exact(r, &mut buf)?;
    Ok(f64::from_le_bytes(buf))
}

fn read_labels(r: &mut impl Read) -> Result<Vec<String>> {
    let count = read_u32(r)? as usize;
    if count > 1_000_000 {
        return Err(Error::CorruptModel(format!("absurd label count {count}")));
    }
    let mut labels = Vec::with_capacity(count);
    for _ in 0..count {
        let mut len_buf = [0u8; 2];
        read_exact(r, &mut len_buf)?;
        let mut bytes = vec![0u8; u16::from_le_bytes(len_buf) as usize];
        read_exact(r, &mut bytes)?;
        labels.push(
            String::from_utf8(bytes)
                .map_err(|_| Error::CorruptModel("label is not utf-8".into()))?,
        );
    }
    Ok(labels)
}
