//! Linear SVM training and prediction.
//!
//! The solver is dual coordinate descent for the L2-regularized L1-loss
//! (hinge) SVM, with per-instance penalty weights so the same code trains
//! both the video-level classifier and single-positive exemplar models.
//! A bias term is handled by augmenting features with a constant 1.
//! Training is deterministic: the per-epoch coordinate permutation comes
//! from a seeded generator.

use std::fs;
use std::io::{Read, Write};
use std::path::Path;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::codebook::BoWVector;
use crate::descriptor::SnippetHistogram;
use crate::media::Label;
use crate::{Error, Result};

/// Labels map to +1 (unusual) and -1 (usual); ties at score 0 predict
/// usual.
pub fn label_sign(label: Label) -> Result<i8> {
    match label {
        Label::Unusual => Ok(1),
        Label::Usual => Ok(-1),
        Label::Unlabeled => Err(Error::InvalidParam(
            "unlabeled clip in supervised training".into(),
        )),
    }
}

/// A trained linear model: score(x) = w . x + b.
#[derive(Debug, Clone)]
pub struct LinearModel {
    pub w: Vec<f32>,
    pub b: f32,
    pub c: f64,
    pub dim: usize,
    /// Primal hinge objective after each epoch (diagnostics; non-increasing
    /// on the problems this crate trains).
    pub objective_history: Vec<f64>,
}

impl LinearModel {
    /// Decision value for a feature vector.
    pub fn score(&self, x: &[f32]) -> Result<f64> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: x.len(),
            });
        }
        let mut acc = 0.0f64;
        for (wi, xi) in self.w.iter().zip(x.iter()) {
            acc += (*wi as f64) * (*xi as f64);
        }
        Ok(acc + self.b as f64)
    }
}

/// Exemplar model: a linear SVM trained from exactly one positive
/// instance against many negatives with asymmetric penalties.
#[derive(Debug, Clone)]
pub struct ExemplarModel {
    pub base: LinearModel,
    /// (clip id, center frame) of the positive snippet.
    pub exemplar_id: (String, u32),
    pub c_pos: f64,
    pub c_neg: f64,
    /// Set when the trained model cannot even retrieve its own exemplar
    /// (score <= 0), e.g. when the exemplar also appears as a negative.
    pub degenerate: bool,
}

pub const DEFAULT_C: f64 = 1.0;
pub const DEFAULT_C_POS: f64 = 0.5;
pub const DEFAULT_C_NEG: f64 = 0.01;
/// Minimum negative count for exemplar training.
pub const MIN_EXEMPLAR_NEGATIVES: usize = 100;

const GAP_TOLERANCE: f64 = 1e-3;
const MAX_EPOCHS: usize = 1000;

/// Dual coordinate descent on the hinge-loss dual with box constraints
/// 0 <= alpha_i <= C_i. Returns the augmented weight vector (bias last)
/// and the per-epoch primal objective.
fn solve_dual_cd(
    xs: &[&[f32]],
    ys: &[i8],
    cost: &[f64],
    dim: usize,
    seed: u64,
) -> (Vec<f64>, Vec<f64>) {
    let n = xs.len();
    let aug = dim + 1;
    let mut w = vec![0.0f64; aug];
    let mut alpha = vec![0.0f64; n];
    // Q_ii = ||x_i||^2 + 1 (the +1 is the bias feature).
    let q: Vec<f64> = xs
        .iter()
        .map(|x| x.iter().map(|&v| (v as f64) * (v as f64)).sum::<f64>() + 1.0)
        .collect();

    let dot = |w: &[f64], x: &[f32]| -> f64 {
        let mut acc = w[dim]; // bias feature is constant 1
        for (wi, xi) in w.iter().zip(x.iter()) {
            acc += wi * *xi as f64;
        }
        acc
    };

    let primal = |w: &[f64]| -> f64 {
        let reg: f64 = 0.5 * w.iter().map(|v| v * v).sum::<f64>();
        let loss: f64 = xs
            .iter()
            .zip(ys.iter())
            .zip(cost.iter())
            .map(|((x, &y), &ci)| ci * (1.0 - y as f64 * dot(w, x)).max(0.0))
            .sum();
        reg + loss
    };

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..n).collect();
    let mut history = vec![primal(&w)];

    for _epoch in 0..MAX_EPOCHS {
        // Fresh permutation per epoch, seeded once.
        for i in (1..n).rev() {
            let j = rng.random_range(0..=i);
            order.swap(i, j);
        }
        for &i in &order {
            let x = xs[i];
            let y = ys[i] as f64;
            let g = y * dot(&w, x) - 1.0;
            let pg = if alpha[i] <= 0.0 {
                g.min(0.0)
            } else if alpha[i] >= cost[i] {
                g.max(0.0)
            } else {
                g
            };
            if pg.abs() < 1e-12 {
                continue;
            }
            let new_alpha = (alpha[i] - g / q[i]).clamp(0.0, cost[i]);
            let delta = new_alpha - alpha[i];
            if delta != 0.0 {
                alpha[i] = new_alpha;
                let step = delta * y;
                for (wk, xk) in w.iter_mut().zip(x.iter()) {
                    *wk += step * *xk as f64;
                }
                w[dim] += step;
            }
        }

        let p = primal(&w);
        history.push(p);
        let dual: f64 =
            alpha.iter().sum::<f64>() - 0.5 * w.iter().map(|v| v * v).sum::<f64>();
        let gap = p - dual;
        if gap <= GAP_TOLERANCE * p.abs().max(1.0) {
            break;
        }
    }
    (w, history)
}

fn train_weighted(
    xs: &[&[f32]],
    ys: &[i8],
    cost: &[f64],
    c: f64,
    seed: u64,
) -> Result<LinearModel> {
    let dim = xs[0].len();
    for x in xs {
        if x.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: x.len(),
            });
        }
        if x.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFiniteInput);
        }
    }
    let (w, objective_history) = solve_dual_cd(xs, ys, cost, dim, seed);
    Ok(LinearModel {
        b: w[dim] as f32,
        w: w[..dim].iter().map(|&v| v as f32).collect(),
        c,
        dim,
        objective_history,
    })
}

/// Train the video-level classifier on labeled bag-of-words vectors.
/// Both classes must be present.
pub fn train_svm(
    features: &[BoWVector],
    labels: &[Label],
    c: f64,
    seed: u64,
) -> Result<LinearModel> {
    if features.is_empty() || features.len() != labels.len() {
        return Err(Error::EmptyInput);
    }
    let ys: Vec<i8> = labels
        .iter()
        .map(|&l| label_sign(l))
        .collect::<Result<_>>()?;
    if ys.iter().all(|&y| y == 1) || ys.iter().all(|&y| y == -1) {
        return Err(Error::SingleClass);
    }
    let xs: Vec<&[f32]> = features.iter().map(|f| &f.normalized[..]).collect();
    let cost = vec![c; xs.len()];
    train_weighted(&xs, &ys, &cost, c, seed)
}

/// Decision value and predicted label; unusual iff the score is strictly
/// positive.
pub fn predict(model: &LinearModel, feature: &[f32]) -> Result<(f64, Label)> {
    let score = model.score(feature)?;
    let label = if score > 0.0 {
        Label::Unusual
    } else {
        Label::Usual
    };
    Ok((score, label))
}

/// Train an exemplar model: one positive snippet against many negatives,
/// penalty `c_pos` on the positive and `c_neg` on each negative.
pub fn train_exemplar(
    positive: &SnippetHistogram,
    negatives: &[SnippetHistogram],
    c_pos: f64,
    c_neg: f64,
    seed: u64,
) -> Result<ExemplarModel> {
    if negatives.len() < MIN_EXEMPLAR_NEGATIVES {
        return Err(Error::TooFewNegatives {
            need: MIN_EXEMPLAR_NEGATIVES,
            got: negatives.len(),
        });
    }
    let mut xs: Vec<&[f32]> = Vec::with_capacity(1 + negatives.len());
    let mut ys: Vec<i8> = Vec::with_capacity(1 + negatives.len());
    let mut cost: Vec<f64> = Vec::with_capacity(1 + negatives.len());
    xs.push(&positive.values);
    ys.push(1);
    cost.push(c_pos);
    for n in negatives {
        xs.push(&n.values);
        ys.push(-1);
        cost.push(c_neg);
    }
    let base = train_weighted(&xs, &ys, &cost, c_pos, seed)?;
    let own_score = base.score(&positive.values)?;
    let degenerate = own_score <= 0.0;
    if degenerate {
        log::warn!(
            "exemplar ({}, {}) is degenerate: own score {own_score:.4}",
            positive.clip_id,
            positive.center_frame
        );
    }
    Ok(ExemplarModel {
        base,
        exemplar_id: (positive.clip_id.clone(), positive.center_frame),
        c_pos,
        c_neg,
        degenerate,
    })
}

/// Candidate penalties explored by cross-validation.
pub const C_GRID: [f64; 5] = [0.01, 0.1, 1.0, 10.0, 100.0];

/// Pick C by 5-fold cross-validation on the training split; ties go to
/// the smaller C.
pub fn select_c(features: &[BoWVector], labels: &[Label], seed: u64) -> Result<f64> {
    let n = features.len();
    if n < 10 {
        return Ok(DEFAULT_C);
    }
    let folds = 5usize;
    let mut indices: Vec<usize> = (0..n).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in (1..n).rev() {
        let j = rng.random_range(0..=i);
        indices.swap(i, j);
    }
    let mut best = (DEFAULT_C, -1.0f64);
    for &c in &C_GRID {
        let mut correct = 0usize;
        let mut total = 0usize;
        for fold in 0..folds {
            let held: Vec<usize> = indices
                .iter()
                .enumerate()
                .filter(|(i, _)| i % folds == fold)
                .map(|(_, &idx)| idx)
                .collect();
            let kept: Vec<usize> = indices
                .iter()
                .enumerate()
                .filter(|(i, _)| i % folds != fold)
                .map(|(_, &idx)| idx)
                .collect();
            let train_x: Vec<BoWVector> = kept.iter().map(|&i| features[i].clone()).collect();
            let train_y: Vec<Label> = kept.iter().map(|&i| labels[i]).collect();
            let model = match train_svm(&train_x, &train_y, c, seed) {
                Ok(m) => m,
                Err(Error::SingleClass) => continue,
                Err(e) => return Err(e),
            };
            for &i in &held {
                let (_, predicted) = predict(&model, &features[i].normalized)?;
                if predicted == labels[i] {
                    correct += 1;
                }
                total += 1;
            }
        }
        if total == 0 {
            continue;
        }
        let acc = correct as f64 / total as f64;
        if acc > best.1 {
            best = (c, acc);
        }
    }
    Ok(best.0)
}

#[derive(Debug, Serialize, Deserialize)]
struct ModelHeader {
    dim: usize,
    c: f64,
    b: f32,
    #[serde(skip_serializing_if = "Option::is_none")]
    exemplar_id: Option<(String, u32)>,
}

const MODEL_MAGIC: &[u8; 8] = b"SNIPSVM1";

/// Write a model: magic, u32 header length, JSON header, then the
/// little-endian f32 weight block.
pub fn write_model(path: &Path, model: &LinearModel, exemplar_id: Option<&(String, u32)>) -> Result<()> {
    let header = serde_json::to_vec(&ModelHeader {
        dim: model.dim,
        c: model.c,
        b: model.b,
        exemplar_id: exemplar_id.cloned(),
    })?;
    let mut buf = Vec::with_capacity(16 + header.len() + 4 * model.w.len());
    buf.extend_from_slice(MODEL_MAGIC);
    buf.extend_from_slice(&(header.len() as u32).to_le_bytes());
    buf.extend_from_slice(&header);
    for v in &model.w {
        buf.extend_from_slice(&v.to_le_bytes());
    }
    let mut file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    file.write_all(&buf).map_err(|e| Error::io(path, e))
}

/// Read a model written by [`write_model`].
pub fn read_model(path: &Path) -> Result<(LinearModel, Option<(String, u32)>)> {
    let mut bytes = Vec::new();
    fs::File::open(path)
        .and_then(|mut f| f.read_to_end(&mut bytes))
        .map_err(|e| Error::io(path, e))?;
    let bad = |reason: &str| Error::BadCacheFile {
        path: path.to_path_buf(),
        reason: reason.to_string(),
    };
    if bytes.len() < 12 || &bytes[0..8] != MODEL_MAGIC {
        return Err(bad("bad magic"));
    }
    let hlen = u32::from_le_bytes(bytes[8..12].try_into().unwrap()) as usize;
    if bytes.len() < 12 + hlen {
        return Err(bad("truncated header"));
    }
    let header: ModelHeader = serde_json::from_slice(&bytes[12..12 + hlen])?;
    let block = &bytes[12 + hlen..];
    if block.len() != 4 * header.dim {
        return Err(bad("weight block size mismatch"));
    }
    let w: Vec<f32> = block
        .chunks_exact(4)
        .map(|c| f32::from_le_bytes(c.try_into().unwrap()))
        .collect();
    Ok((
        LinearModel {
            w,
            b: header.b,
            c: header.c,
            dim: header.dim,
            objective_history: Vec::new(),
        },
        header.exemplar_id,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bow(clip: &str, normalized: Vec<f32>) -> BoWVector {
        BoWVector {
            clip_id: clip.into(),
            counts: normalized.iter().map(|&v| (v * 100.0) as u32).collect(),
            normalized,
        }
    }

    /// Perceptron: an independent separability oracle.
    fn perceptron_separable(xs: &[Vec<f32>], ys: &[i8], epochs: usize) -> bool {
        let dim = xs[0].len();
        let mut w = vec![0.0f64; dim + 1];
        for _ in 0..epochs {
            let mut mistakes = 0;
            for (x, &y) in xs.iter().zip(ys.iter()) {
                let mut act = w[dim];
                for (wi, xi) in w.iter().zip(x.iter()) {
                    act += wi * *xi as f64;
                }
                if act * y as f64 <= 0.0 {
                    mistakes += 1;
                    for (wi, xi) in w.iter_mut().zip(x.iter()) {
                        *wi += y as f64 * *xi as f64;
                    }
                    w[dim] += y as f64;
                }
            }
            if mistakes == 0 {
                return true;
            }
        }
        false
    }

    fn separable_toy_set(seed: u64, n: usize) -> (Vec<BoWVector>, Vec<Label>) {
        use rand::{Rng, SeedableRng};
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut features = Vec::new();
        let mut labels = Vec::new();
        for i in 0..n {
            let unusual = i % 2 == 0;
            let (cx, cy) = if unusual { (2.0, 2.0) } else { (-2.0, -2.0) };
            features.push(bow(
                &format!("c{i}"),
                vec![
                    cx + rng.random_range(-0.8..0.8),
                    cy + rng.random_range(-0.8..0.8),
                ],
            ));
            labels.push(if unusual { Label::Unusual } else { Label::Usual });
        }
        (features, labels)
    }

    #[test]
    fn separable_set_reaches_full_training_accuracy() {
        let (features, labels) = separable_toy_set(1, 60);
        let xs: Vec<Vec<f32>> = features.iter().map(|f| f.normalized.clone()).collect();
        let ys: Vec<i8> = labels.iter().map(|&l| label_sign(l).unwrap()).collect();
        assert!(perceptron_separable(&xs, &ys, 200), "oracle: not separable");

        let model = train_svm(&features, &labels, 10.0, 7).unwrap();
        for (f, &l) in features.iter().zip(labels.iter()) {
            let (_, predicted) = predict(&model, &f.normalized).unwrap();
            assert_eq!(predicted, l);
        }
    }

    #[test]
    fn symmetric_pair_gives_centered_boundary() {
        // x+ = (1, 0), x- = (-1, 0), large C: max margin puts the boundary
        // through the origin with w along +x.
        let features = vec![bow("p", vec![1.0, 0.0]), bow("n", vec![-1.0, 0.0])];
        let labels = vec![Label::Unusual, Label::Usual];
        let model = train_svm(&features, &labels, 1e4, 3).unwrap();
        let at_origin = model.score(&[0.0, 0.0]).unwrap();
        assert!(at_origin.abs() < 1e-6, "origin score {at_origin}");
        assert!(model.w[0] > 0.0);
        assert!(
            model.w[1].abs() < 1e-6 * model.w[0].abs(),
            "w not along x: {:?}",
            model.w
        );
    }

    #[test]
    fn identical_features_mixed_labels_collapse() {
        let features: Vec<BoWVector> = (0..10).map(|i| bow(&format!("c{i}"), vec![0.5, 0.5])).collect();
        let labels: Vec<Label> = (0..10)
            .map(|i| if i < 7 { Label::Usual } else { Label::Unusual })
            .collect();
        let model = train_svm(&features, &labels, 1.0, 0).unwrap();
        let norm: f64 = model.w.iter().map(|&v| (v as f64).powi(2)).sum::<f64>().sqrt();
        assert!(norm < 1e-3, "w norm {norm}");
        // Everything predicts the same label; accuracy equals majority rate.
        let correct = features
            .iter()
            .zip(&labels)
            .filter(|(f, &l)| predict(&model, &f.normalized).unwrap().1 == l)
            .count();
        assert_eq!(correct, 7);
    }

    #[test]
    fn single_class_rejected() {
        let features = vec![bow("a", vec![1.0]), bow("b", vec![2.0])];
        let labels = vec![Label::Usual, Label::Usual];
        assert!(matches!(
            train_svm(&features, &labels, 1.0, 0),
            Err(Error::SingleClass)
        ));
    }

    #[test]
    fn score_zero_predicts_usual() {
        let model = LinearModel {
            w: vec![1.0, 0.0],
            b: 0.0,
            c: 1.0,
            dim: 2,
            objective_history: Vec::new(),
        };
        let (score, label) = predict(&model, &[0.0, 5.0]).unwrap();
        assert_eq!(score, 0.0);
        assert_eq!(label, Label::Usual);
    }

    #[test]
    fn point_past_boundary_scores_positive() {
        let (features, labels) = separable_toy_set(4, 40);
        let model = train_svm(&features, &labels, 10.0, 1).unwrap();
        // One unit past the boundary along w.
        let wn: f64 = model.w.iter().map(|&v| (v as f64).powi(2)).sum::<f64>();
        let along: Vec<f32> = model
            .w
            .iter()
            .map(|&wi| {
                (wi as f64 * (1.0 - model.b as f64) / wn + wi as f64 / wn.sqrt()) as f32
            })
            .collect();
        let (score, _) = predict(&model, &along).unwrap();
        assert!(score > 0.0, "score {score}");
    }

    #[test]
    fn zero_vector_scores_bias() {
        let model = LinearModel {
            w: vec![0.3, -0.2],
            b: -0.5,
            c: 1.0,
            dim: 2,
            objective_history: Vec::new(),
        };
        let (score, label) = predict(&model, &[0.0, 0.0]).unwrap();
        assert_eq!(score, -0.5);
        assert_eq!(label, Label::Usual);
    }

    #[test]
    fn objective_history_non_increasing() {
        let (features, labels) = separable_toy_set(5, 200);
        let model = train_svm(&features, &labels, 1.0, 9).unwrap();
        assert!(model.objective_history.len() >= 2);
        for pair in model.objective_history.windows(2) {
            assert!(
                pair[1] <= pair[0] + 1e-9 * pair[0].abs().max(1.0),
                "objective rose: {} -> {}",
                pair[0],
                pair[1]
            );
        }
    }

    #[test]
    fn deterministic_per_seed() {
        let (features, labels) = separable_toy_set(6, 80);
        let a = train_svm(&features, &labels, 1.0, 42).unwrap();
        let b = train_svm(&features, &labels, 1.0, 42).unwrap();
        assert_eq!(a.w, b.w);
        assert_eq!(a.b, b.b);
    }

    #[test]
    fn feature_scaling_with_inverse_c_keeps_labels() {
        // Scaling x by kappa and C by 1/kappa^2 rescales the objective, so
        // decisions are preserved.
        let (features, labels) = separable_toy_set(7, 60);
        let kappa = 2.0f32;
        let scaled: Vec<BoWVector> = features
            .iter()
            .map(|f| bow(&f.clip_id, f.normalized.iter().map(|&v| v * kappa).collect()))
            .collect();
        let m1 = train_svm(&features, &labels, 4.0, 11).unwrap();
        let m2 = train_svm(&scaled, &labels, 1.0, 11).unwrap();
        for (f, s) in features.iter().zip(scaled.iter()) {
            let l1 = predict(&m1, &f.normalized).unwrap().1;
            let l2 = predict(&m2, &s.normalized).unwrap().1;
            assert_eq!(l1, l2);
        }
    }

    fn snippet(clip: &str, center: u32, values: Vec<f32>) -> SnippetHistogram {
        SnippetHistogram {
            clip_id: clip.into(),
            center_frame: center,
            values,
        }
    }

    #[test]
    fn exemplar_scores_itself_highest() {
        use rand::{Rng, SeedableRng};
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        // Tight negative cluster far from the exemplar.
        let negatives: Vec<SnippetHistogram> = (0..120)
            .map(|i| {
                snippet(
                    "neg",
                    i,
                    vec![
                        rng.random_range(-0.2..0.2),
                        rng.random_range(-0.2..0.2),
                    ],
                )
            })
            .collect();
        let positive = snippet("pos", 0, vec![5.0, 5.0]);
        let model = train_exemplar(&positive, &negatives, 0.5, 0.01, 1).unwrap();
        assert!(!model.degenerate);
        let own = model.base.score(&positive.values).unwrap();
        for n in &negatives {
            assert!(model.base.score(&n.values).unwrap() < own);
        }
    }

    #[test]
    fn exemplar_duplicated_in_negatives_is_degenerate() {
        let positive = snippet("pos", 0, vec![1.0, 1.0]);
        let mut negatives: Vec<SnippetHistogram> =
            (0..110).map(|i| snippet("neg", i, vec![1.0, 1.0])).collect();
        negatives.push(snippet("neg", 999, vec![0.9, 1.1]));
        let model = train_exemplar(&positive, &negatives, 0.5, 0.01, 1).unwrap();
        assert!(model.degenerate);
    }

    #[test]
    fn exemplar_against_zero_negatives_points_at_exemplar() {
        let positive = snippet("pos", 0, vec![3.0, 4.0]);
        let negatives: Vec<SnippetHistogram> =
            (0..150).map(|i| snippet("neg", i, vec![0.0, 0.0])).collect();
        let model = train_exemplar(&positive, &negatives, 0.5, 0.01, 1).unwrap();
        // w proportional to the exemplar direction (3, 4).
        let w = &model.base.w;
        let cross = (w[0] as f64) * 4.0 - (w[1] as f64) * 3.0;
        let norm: f64 = w.iter().map(|&v| (v as f64).powi(2)).sum::<f64>().sqrt();
        assert!(norm > 0.0);
        assert!(cross.abs() < 1e-6 * norm, "w {w:?} not along exemplar");
        assert!(w[0] > 0.0);
    }

    #[test]
    fn exemplar_needs_enough_negatives() {
        let positive = snippet("pos", 0, vec![1.0]);
        let negatives: Vec<SnippetHistogram> =
            (0..99).map(|i| snippet("neg", i, vec![0.0])).collect();
        assert!(matches!(
            train_exemplar(&positive, &negatives, 0.5, 0.01, 1),
            Err(Error::TooFewNegatives { need: 100, got: 99 })
        ));
    }

    #[test]
    fn cv_picks_a_grid_value() {
        let (features, labels) = separable_toy_set(8, 50);
        let c = select_c(&features, &labels, 3).unwrap();
        assert!(C_GRID.contains(&c));
    }

    #[test]
    fn model_file_round_trip() {
        let (features, labels) = separable_toy_set(9, 40);
        let model = train_svm(&features, &labels, 1.0, 2).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("clip.svm");
        write_model(&path, &model, Some(&("clipX".to_string(), 42))).unwrap();
        let (back, exemplar) = read_model(&path).unwrap();
        assert_eq!(back.w, model.w);
        assert_eq!(back.b, model.b);
        assert_eq!(back.dim, model.dim);
        assert_eq!(exemplar, Some(("clipX".to_string(), 42)));
    }
}
