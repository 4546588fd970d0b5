// quick probe: print objective history of the failing configuration
use trajsnip_core::classify::*;
use trajsnip_core::codebook::BoWVector;
use trajsnip_core::media::Label;
use rand::{Rng, SeedableRng};

fn main() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
    let mut features = Vec::new();
    let mut labels = Vec::new();
    for i in 0..200 {
        let unusual = i % 2 == 0;
        let (cx, cy): (f32, f32) = if unusual { (2.0, 2.0) } else { (-2.0, -2.0) };
        features.push(BoWVector {
            clip_id: format!("c{i}"),
            counts: vec![],
            normalized: vec![cx + rng.random_range(-0.8..0.8), cy + rng.random_range(-0.8..0.8)],
        });
        labels.push(if unusual { Label::Unusual } else { Label::Usual });
    }
    let model = train_svm(&features, &labels, 1.0, 9).unwrap();
    for (i, o) in model.objective_history.iter().enumerate() {
        println!("epoch {i}: {o}");
    }
}
