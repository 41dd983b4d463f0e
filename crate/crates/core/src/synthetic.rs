//! Documents drawn from known per-class multinomials, for checking that
//! training recovers a separable signal.

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::corpus::SentimentLabel;
use crate::preprocess::{Document, Token};

#[derive(Debug, Clone)]
pub struct SyntheticSpec {
    pub vocabulary: Vec<Token>,
    /// One weight vector over `vocabulary` per class.
    pub classes: Vec<(SentimentLabel, Vec<f64>)>,
    pub min_len: usize,
    pub max_len: usize,
}

impl SyntheticSpec {
    /// Twenty words; negative puts 0.08 on each of the first ten and 0.02
    /// on each of the last ten, positive mirrors it. Lengths 5..=15.
    pub fn well_separated() -> Self {
        let vocabulary: Vec<Token> = (0..20u8)
            .map(|i| Token::new(format!("kata{}", (b'a' + i) as char)).expect("letters"))
            .collect();
        let negative: Vec<f64> = (0..20).map(|i| if i < 10 { 0.08 } else { 0.02 }).collect();
        let positive: Vec<f64> = negative.iter().rev().copied().collect();
        Self {
            vocabulary,
            classes: vec![(SentimentLabel::Negative, negative), (SentimentLabel::Positive, positive)],
            min_len: 5,
            max_len: 15,
        }
    }

    /// `n` labeled documents; classes are chosen uniformly.
    pub fn generate(&self, n: usize, seed: u64) -> Vec<Document> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let samplers: Vec<_> = self
            .classes
            .iter()
            .map(|(label, w)| (*label, WeightedIndex::new(w).expect("valid class weights")))
            .collect();
        (0..n)
            .map(|i| {
                let (label, sampler) = &samplers[rng.random_range(0..samplers.len())];
                let len = rng.random_range(self.min_len..=self.max_len);
                let tokens = (0..len).map(|_| self.vocabulary[sampler.sample(&mut rng)].clone()).collect();
                Document::new(format!("syn{i:06}"), tokens, Some(*label))
            })
            .collect()
    }
}
